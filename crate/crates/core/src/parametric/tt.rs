//! The 27 fixed-gee codes and their listed `ψ`.

use super::is_pow2;
use super::reference::TABLE_TT;
use crate::certificates::{pair, ProductSpec};
use crate::cohomology::{CohomologyPresentation, DualityFunctional, PsiSpace};
use crate::combinatorics::{GeneticCode, Subset, Validation};
use crate::gf2::Gf2Vector;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TtRow {
    pub index: usize,
    pub gees: Vec<Subset>,
    /// Supports where the listed `ψ` is 1.
    pub psi_ones: Vec<Subset>,
}

impl TtRow {
    pub fn all() -> Vec<TtRow> {
        TABLE_TT
            .iter()
            .enumerate()
            .map(|(index, (gees, ones))| TtRow {
                index,
                gees: gees
                    .iter()
                    .map(|g| Subset::from_elements(g.bytes().map(|b| (b - b'0') as usize)))
                    .collect(),
                psi_ones: ones
                    .iter()
                    .map(|k| Subset::parse_key(k).expect("well-formed key"))
                    .collect(),
            })
            .collect()
    }

    pub fn is_last(&self) -> bool {
        self.index + 1 == TABLE_TT.len()
    }

    pub fn label(&self) -> String {
        self.gees
            .iter()
            .filter_map(|g| g.digits())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn code(&self, n: usize) -> Option<GeneticCode> {
        let top = self.gees.iter().filter_map(|g| Subset::max(*g)).max()?;
        if n <= top || n < 7 {
            return None;
        }
        let code = GeneticCode::from_gees(n, &self.gees).ok()?;
        (code.validate() == Validation::Ok).then_some(code)
    }

    /// `V1^{m-1} V2^2 V3 R^{m-3}`, or `V1^m V2^2 V3 R^{m-4}` when `m - 1` is a
    /// power of 2 (except on the last row).
    pub fn product(&self, m: usize) -> ProductSpec {
        if self.uses_shifted(m) {
            ProductSpec::new(m - 4, &[(1, m), (2, 2), (3, 1)])
        } else {
            ProductSpec::new(m - 3, &[(1, m - 1), (2, 2), (3, 1)])
        }
    }

    fn uses_shifted(&self, m: usize) -> bool {
        is_pow2(m as u64 - 1) && !self.is_last()
    }
}

/// Result of checking one row at one `n`.
#[derive(Clone, Debug)]
pub struct TtCheck {
    pub row: TtRow,
    pub n: usize,
    pub product: ProductSpec,
    /// Listed supports that are not subgees, so their monomials vanish.
    pub ignored: Vec<Subset>,
    /// The listed `ψ` kills every degree-`(m-1)` relation.
    pub admissible: bool,
    /// `ψ_1 = 1` and `ψ` vanishes on `{2,3}` and `{1,2,3}`.
    pub psi_shape: bool,
    /// `φ_{123} = 1` and `φ_{13} = φ_{23} = 0`, or all pairs 1 on the last row.
    pub phi_shape: bool,
    /// The pairing predicted from `φ` and `ψ` values alone.
    pub formula: bool,
    /// The pairing computed by full expansion.
    pub pairing: bool,
}

impl TtCheck {
    pub fn ok(&self) -> bool {
        self.admissible && self.psi_shape && self.phi_shape && self.formula && self.pairing
    }
}

fn s(e: &[usize]) -> Subset {
    Subset::from_elements(e.iter().copied())
}

fn psi_value(space: &PsiSpace, psi: &Gf2Vector, support: Subset) -> bool {
    space
        .basis
        .iter()
        .position(|b| *b == support)
        .is_some_and(|i| psi.get(i))
}

/// The value of `φ ⊗ ψ` on the row's product, read off from a handful of
/// `φ` and `ψ` values.
fn predicted(
    m: usize,
    shifted: bool,
    phi: &DualityFunctional,
    space: &PsiSpace,
    psi: &Gf2Vector,
) -> bool {
    let f = |e: &[usize]| phi.value(s(e));
    let g = |e: &[usize]| psi_value(space, psi, s(e));
    if shifted {
        return (f(&[1]) && (g(&[2, 3]) ^ g(&[1, 2, 3])))
            ^ (f(&[1, 2, 3]) && g(&[1]))
            ^ (f(&[1, 3]) && g(&[1, 2]));
    }
    let mut v = ((f(&[2, 3]) ^ f(&[1, 2, 3])) && g(&[1]))
        ^ (f(&[1, 3]) && (g(&[2]) ^ g(&[1, 2])))
        ^ ((m - 1) % 2 == 1 && f(&[1]) && (g(&[2, 3]) ^ g(&[1, 2, 3])));
    if is_pow2(m as u64) {
        v ^= f(&[1]) && g(&[1, 2, 3]);
    } else if is_pow2(m as u64 - 1) {
        v ^= (f(&[1, 2, 3]) && g(&[1])) ^ (f(&[1, 3]) && g(&[1, 2]));
    }
    v
}

pub fn check_row(row: &TtRow, n: usize) -> Result<Option<TtCheck>> {
    let Some(code) = row.code(n) else {
        return Ok(None);
    };
    let pres = CohomologyPresentation::new(&code)?;
    let m = pres.m();
    let phi = pres.duality_functional()?;
    let space = pres.psi_space()?;
    let (live, ignored): (Vec<Subset>, Vec<Subset>) =
        row.psi_ones.iter().partition(|t| code.is_subgee(**t));
    let psi = space
        .functional(&live)
        .map_err(|e| Error::Verification(format!("row {} n={n}: {e}", row.label())))?;
    let admissible = space.contains(&psi);
    let psi_shape = psi_value(&space, &psi, s(&[1]))
        && !psi_value(&space, &psi, s(&[2, 3]))
        && !psi_value(&space, &psi, s(&[1, 2, 3]));
    let phi_shape = if row.is_last() {
        phi.basis
            .iter()
            .filter(|b| b.len() == 2)
            .all(|b| phi.value(*b))
    } else {
        phi.value(s(&[1, 2, 3])) && !phi.value(s(&[1, 3])) && !phi.value(s(&[2, 3]))
    };
    let formula = predicted(m, row.uses_shifted(m), &phi, &space, &psi);
    let product = row.product(m);
    let pairing = pair(&pres, &phi, &psi, &product)?;
    Ok(Some(TtCheck {
        row: row.clone(),
        n,
        product,
        ignored,
        admissible,
        psi_shape,
        phi_shape,
        formula,
        pairing,
    }))
}

/// Every row at every `n` in `7..=11` where its gees form a valid code.
pub fn verify_table_tt() -> Result<Vec<TtCheck>> {
    use rayon::prelude::*;
    let jobs: Vec<(TtRow, usize)> = TtRow::all()
        .into_iter()
        .flat_map(|r| (7..=11).map(move |n| (r.clone(), n)))
        .collect();
    let results: Vec<Result<Option<TtCheck>>> =
        jobs.par_iter().map(|(r, n)| check_row(r, *n)).collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(c) = r? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Rows in table order with the `ψ` supports and per-`n` verdicts.
pub fn tt_markdown(checks: &[TtCheck]) -> String {
    let mut out = String::from("| gees | psi = 1 on | verified n |\n|---|---|---|\n");
    for row in TtRow::all() {
        let ns: Vec<String> = checks
            .iter()
            .filter(|c| c.row.index == row.index)
            .map(|c| {
                if c.ok() {
                    c.n.to_string()
                } else {
                    format!("{} FAIL", c.n)
                }
            })
            .collect();
        let ones: Vec<String> = row.psi_ones.iter().map(|s| s.key()).collect();
        out.push_str(&format!(
            "| {} | {} | {} |\n",
            row.label(),
            ones.join(" ; "),
            ns.join(" ")
        ));
    }
    out
}

pub fn tt_csv(checks: &[TtCheck]) -> String {
    let mut out =
        String::from("row,gees,n,product,admissible,psi_shape,phi_shape,formula,pairing\n");
    for c in checks {
        out.push_str(&format!(
            "{},\"{}\",{},{},{},{},{},{},{}\n",
            c.row.index + 1,
            c.row.label(),
            c.n,
            c.product,
            c.admissible as u8,
            c.psi_shape as u8,
            c.phi_shape as u8,
            c.formula as u8,
            c.pairing as u8
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_parse() {
        let rows = TtRow::all();
        assert_eq!(rows.len(), 27);
        assert_eq!(rows[0].label(), "321,42");
        assert_eq!(rows[0].psi_ones, vec![s(&[1]), s(&[1, 3]), s(&[1, 4])]);
        assert_eq!(rows[5].psi_ones[0], Subset::EMPTY);
        assert!(rows[26].is_last());
    }

    #[test]
    fn products_have_degree_2m_minus_1() {
        for row in TtRow::all() {
            for m in 4..=8 {
                assert_eq!(row.product(m).degree(), 2 * m - 1);
            }
        }
        assert_eq!(
            TtRow::all()[0].product(5),
            ProductSpec::new(1, &[(1, 5), (2, 2), (3, 1)])
        );
        assert_eq!(
            TtRow::all()[26].product(5),
            ProductSpec::new(2, &[(1, 4), (2, 2), (3, 1)])
        );
    }

    #[test]
    fn every_row_checks_out() {
        let checks = verify_table_tt().unwrap();
        for i in 0..27 {
            assert!(
                checks.iter().any(|c| c.row.index == i),
                "row {i} never instantiated"
            );
        }
        let bad: Vec<_> = checks
            .iter()
            .filter(|c| !c.ok())
            .map(|c| (c.row.label(), c.n))
            .collect();
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn only_one_listed_support_vanishes() {
        let checks = verify_table_tt().unwrap();
        let ignored: Vec<_> = checks
            .iter()
            .filter(|c| !c.ignored.is_empty())
            .map(|c| (c.row.label(), c.ignored.clone()))
            .collect();
        assert!(!ignored.is_empty());
        assert!(
            ignored
                .iter()
                .all(|(l, i)| l == "321,62" && i == &vec![s(&[3, 4])]),
            "{ignored:?}"
        );
    }

    #[test]
    fn zero_psi_pairs_to_zero() {
        let row = &TtRow::all()[9];
        let code = row.code(8).unwrap();
        let pres = CohomologyPresentation::new(&code).unwrap();
        let phi = pres.duality_functional().unwrap();
        let zero = Gf2Vector::zeros(pres.basis(pres.m() - 1).unwrap().len());
        assert!(!pair(&pres, &phi, &zero, &row.product(pres.m())).unwrap());
    }

    #[test]
    fn emitters_list_every_check() {
        let checks = verify_table_tt().unwrap();
        let md = tt_markdown(&checks);
        assert!(md.contains("| 43,52,61 |"));
        assert_eq!(tt_csv(&checks).lines().count(), checks.len() + 1);
    }

    #[test]
    fn formula_agrees_with_expansion() {
        for c in verify_table_tt().unwrap() {
            assert_eq!(c.formula, c.pairing, "{} n={}", c.row.label(), c.n);
        }
    }
}
