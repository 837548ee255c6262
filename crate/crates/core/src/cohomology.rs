//! Mod-2 cohomology of a polygon space from its genetic code.
//!
//! Degree `d` is spanned by `R^{d-|S|} V_S` for subgees `S` with `|S| <= d`.
//! For every subgee `S` with `|S| >= m + 1 - d` there is a relation summing the
//! spanning monomials whose support misses `S`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::Serialize;

use crate::combinatorics::{GeneticCode, Subset};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

/// `R^{degree - |support|} V_support`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub degree: usize,
    pub support: Subset,
}

impl Monomial {
    pub fn r_exponent(&self) -> usize {
        self.degree - self.support.len()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.support.canonical_cmp(other.support))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduces `R^{r_exp} Π V_i^{e_i}` using `V_i^2 = R V_i`. `None` means the class
/// is zero: the support is not a subgee or the degree exceeds `m`.
pub fn normal_form(
    code: &GeneticCode,
    exponents: &[(usize, usize)],
    r_exp: usize,
) -> Option<Monomial> {
    let mut support = Subset::EMPTY;
    let mut degree = r_exp;
    for &(i, e) in exponents {
        if e > 0 {
            support = support.with(i);
            degree += e;
        }
    }
    (degree <= code.m() && code.is_subgee(support)).then_some(Monomial { degree, support })
}

#[derive(Debug)]
struct Level {
    basis: Vec<Subset>,
    index: HashMap<Subset, usize>,
    relation_sets: Vec<Subset>,
    relations: Gf2Matrix,
    rank: usize,
}

/// Spanning sets and relation matrices for every degree `0..=m`, each built on
/// first use.
#[derive(Debug)]
pub struct CohomologyPresentation {
    code: GeneticCode,
    m: usize,
    levels: Vec<OnceLock<Level>>,
}

/// The evaluation `H^m -> GF(2)`, indexed like the degree-`m` spanning set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityFunctional {
    pub basis: Vec<Subset>,
    pub phi: Gf2Vector,
}

impl DualityFunctional {
    /// `φ(R^{m-|S|} V_S)`; zero for non-subgees.
    pub fn value(&self, support: Subset) -> bool {
        self.basis
            .iter()
            .position(|s| *s == support)
            .is_some_and(|i| self.phi.get(i))
    }

    pub fn ones(&self) -> Vec<Subset> {
        self.phi.ones().map(|i| self.basis[i]).collect()
    }
}

/// All functionals on `H^{m-1}` that vanish on the degree-`(m-1)` relations.
#[derive(Clone, Debug)]
pub struct PsiSpace {
    pub basis: Vec<Subset>,
    pub vectors: Vec<Gf2Vector>,
    relations: Gf2Matrix,
}

impl PsiSpace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn contains(&self, psi: &Gf2Vector) -> bool {
        psi.len() == self.basis.len() && self.relations.mul_vec(psi).is_ok_and(|v| v.is_zero())
    }

    /// The functional taking value 1 exactly on the listed supports.
    pub fn functional(&self, ones: &[Subset]) -> Result<Gf2Vector> {
        functional_on(&self.basis, ones)
    }
}

fn functional_on(basis: &[Subset], ones: &[Subset]) -> Result<Gf2Vector> {
    let mut v = Gf2Vector::zeros(basis.len());
    for s in ones {
        let i = basis
            .iter()
            .position(|b| b == s)
            .ok_or_else(|| Error::Verification(format!("{s} is not a spanning support")))?;
        v.set(i, true);
    }
    Ok(v)
}

/// One line of a Betti table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    pub degree: usize,
    pub spanning: usize,
    pub rank: usize,
    pub betti: usize,
}

impl CohomologyPresentation {
    pub fn new(code: &GeneticCode) -> Result<Self> {
        if code.n() < 4 {
            return Err(Error::UnsupportedN {
                n: code.n(),
                min: 4,
                max: crate::combinatorics::MAX_N,
            });
        }
        let m = code.m();
        Ok(CohomologyPresentation {
            code: code.clone(),
            m,
            levels: (0..=m).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn code(&self) -> &GeneticCode {
        &self.code
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn level(&self, d: usize) -> Result<&Level> {
        if d > self.m {
            return Err(Error::DegreeOutOfRange {
                degree: d,
                max: self.m,
            });
        }
        Ok(self.levels[d].get_or_init(|| self.build(d)))
    }

    fn build(&self, d: usize) -> Level {
        let mut basis: Vec<Subset> = self
            .code
            .subgees()
            .iter()
            .copied()
            .filter(|s| s.len() <= d)
            .collect();
        basis.sort_by(|a, b| a.canonical_cmp(*b));
        let index = basis.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let min_rel = (self.m + 1).saturating_sub(d);
        let mut relation_sets: Vec<Subset> = self
            .code
            .subgees()
            .iter()
            .copied()
            .filter(|s| s.len() >= min_rel)
            .collect();
        relation_sets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.canonical_cmp(*b)));
        let rows = relation_sets
            .iter()
            .map(|s| {
                let mut row = Gf2Vector::zeros(basis.len());
                for (j, t) in basis.iter().enumerate() {
                    if t.is_disjoint(*s) {
                        row.set(j, true);
                    }
                }
                row
            })
            .collect();
        let relations = Gf2Matrix::from_rows(basis.len(), rows).expect("row width");
        let rank = relations.rank();
        Level {
            basis,
            index,
            relation_sets,
            relations,
            rank,
        }
    }

    /// Supports of the degree-`d` spanning monomials, in column order.
    pub fn basis(&self, d: usize) -> Result<&[Subset]> {
        Ok(&self.level(d)?.basis)
    }

    pub fn column(&self, d: usize, support: Subset) -> Result<Option<usize>> {
        Ok(self.level(d)?.index.get(&support).copied())
    }

    /// Subgees indexing the degree-`d` relation rows.
    pub fn relation_sets(&self, d: usize) -> Result<&[Subset]> {
        Ok(&self.level(d)?.relation_sets)
    }

    pub fn relations(&self, d: usize) -> Result<&Gf2Matrix> {
        Ok(&self.level(d)?.relations)
    }

    pub fn rank(&self, d: usize) -> Result<usize> {
        Ok(self.level(d)?.rank)
    }

    pub fn betti(&self, d: usize) -> Result<usize> {
        let l = self.level(d)?;
        Ok(l.basis.len() - l.rank)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.m)
            .map(|d| self.betti(d).expect("in range"))
            .collect()
    }

    pub fn betti_table(&self) -> Vec<BettiRow> {
        (0..=self.m)
            .map(|d| {
                let l = self.level(d).expect("in range");
                BettiRow {
                    degree: d,
                    spanning: l.basis.len(),
                    rank: l.rank,
                    betti: l.basis.len() - l.rank,
                }
            })
            .collect()
    }

    /// The unique nonzero functional on degree `m` killing every relation.
    pub fn duality_functional(&self) -> Result<DualityFunctional> {
        let l = self.level(self.m)?;
        let null = l.relations.nullspace();
        if null.len() != 1 {
            return Err(Error::DualityDimension { dim: null.len() });
        }
        Ok(DualityFunctional {
            basis: l.basis.clone(),
            phi: null.into_iter().next().unwrap(),
        })
    }

    pub fn psi_space(&self) -> Result<PsiSpace> {
        if self.m < 2 {
            return Err(Error::DegreeOutOfRange {
                degree: 1,
                max: self.m,
            });
        }
        let l = self.level(self.m - 1)?;
        Ok(PsiSpace {
            basis: l.basis.clone(),
            vectors: l.relations.nullspace(),
            relations: l.relations.clone(),
        })
    }

    /// Functional on degree `d` that is 1 exactly on the listed supports.
    pub fn functional(&self, d: usize, ones: &[Subset]) -> Result<Gf2Vector> {
        functional_on(&self.level(d)?.basis, ones)
    }

    pub fn relations_json(&self, d: usize) -> Result<serde_json::Value> {
        let l = self.level(d)?;
        let rows: Vec<serde_json::Value> = l
            .relation_sets
            .iter()
            .zip(l.relations.row_iter())
            .map(|(s, r)| serde_json::json!({ "subgee": s.key(), "ones": r.ones().collect::<Vec<_>>() }))
            .collect();
        Ok(serde_json::json!({
            "code": self.code.text(),
            "degree": d,
            "columns": l.basis.iter().map(|s| s.key()).collect::<Vec<_>>(),
            "rows": rows,
            "rank": l.rank,
        }))
    }

    pub fn relations_csv(&self, d: usize) -> Result<String> {
        let l = self.level(d)?;
        let mut out = String::from("subgee");
        for s in &l.basis {
            write!(out, ",\"{}\"", s.key()).unwrap();
        }
        out.push('\n');
        for (s, r) in l.relation_sets.iter().zip(l.relations.row_iter()) {
            write!(out, "\"{}\"", s.key()).unwrap();
            for j in 0..r.len() {
                out.push_str(if r.get(j) { ",1" } else { ",0" });
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn betti_csv(&self) -> String {
        let mut out = String::from("degree,spanning,rank,betti\n");
        for r in self.betti_table() {
            writeln!(out, "{},{},{},{}", r.degree, r.spanning, r.rank, r.betti).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_codes;

    fn code(s: &str) -> GeneticCode {
        s.parse().unwrap()
    }

    fn set(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    /// Counts functionals killing every relation by trying all of them.
    fn brute_betti(p: &CohomologyPresentation, d: usize) -> Option<usize> {
        let basis = p.basis(d).unwrap();
        let k = basis.len();
        if k > 16 {
            return None;
        }
        let rel = p.relations(d).unwrap();
        let count = (0u32..1 << k)
            .filter(|x| {
                let v = Gf2Vector::from_bools(&(0..k).map(|i| x >> i & 1 == 1).collect::<Vec<_>>());
                rel.mul_vec(&v).unwrap().is_zero()
            })
            .count();
        Some(count.trailing_zeros() as usize)
    }

    #[test]
    fn normal_form_examples() {
        let c = GeneticCode::from_gees(8, &[set(&[2, 1])]).unwrap();
        assert_eq!(
            normal_form(&c, &[(1, 3), (2, 1)], 0),
            Some(Monomial {
                degree: 4,
                support: set(&[1, 2])
            })
        );
        assert_eq!(
            normal_form(&c, &[], 5),
            Some(Monomial {
                degree: 5,
                support: Subset::EMPTY
            })
        );
        assert_eq!(normal_form(&c, &[], 6), None);
        let t = code("743,752,761");
        assert_eq!(normal_form(&t, &[(1, 1), (2, 1), (3, 1)], 0), None);
        assert!(normal_form(&t, &[(1, 1), (6, 1)], 0).is_some());
    }

    #[test]
    fn small_betti_numbers() {
        let torus = CohomologyPresentation::new(&code("521")).unwrap();
        assert_eq!(torus.betti_numbers(), vec![1, 2, 1]);
        let rp = CohomologyPresentation::new(&code("5")).unwrap();
        assert_eq!(rp.betti_numbers(), vec![1, 1, 1]);
        let t3 = CohomologyPresentation::new(&code("6321")).unwrap();
        assert_eq!(t3.betti_numbers(), vec![1, 3, 3, 1]);
        assert!(matches!(
            torus.betti(3),
            Err(Error::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn betti_palindromic_and_matches_brute_force() {
        for n in 4..=7 {
            for rc in enumerate_codes(n).unwrap().codes {
                let p = CohomologyPresentation::new(&rc.code).unwrap();
                let b = p.betti_numbers();
                assert_eq!(b[0], 1, "{}", rc.code);
                let rev: Vec<usize> = b.iter().rev().copied().collect();
                assert_eq!(b, rev, "{}", rc.code);
                if n <= 6 {
                    for d in 0..=p.m() {
                        if let Some(bb) = brute_betti(&p, d) {
                            assert_eq!(bb, b[d], "{} degree {d}", rc.code);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn duality_functional_is_unique_through_n8() {
        for n in 5..=8 {
            for rc in enumerate_codes(n).unwrap().codes {
                let p = CohomologyPresentation::new(&rc.code).unwrap();
                let phi = p
                    .duality_functional()
                    .unwrap_or_else(|e| panic!("{}: {e}", rc.code));
                assert!(p
                    .relations(p.m())
                    .unwrap()
                    .mul_vec(&phi.phi)
                    .unwrap()
                    .is_zero());
                assert!(!phi.phi.is_zero());
            }
        }
    }

    #[test]
    fn two_term_phi() {
        // gees {a+b, a}, checked against the closed form for small parameters.
        for a in 1..=4usize {
            for b in 1..=4usize {
                for n in (a + b + 1).max(6)..=a + b + 3 {
                    let c = GeneticCode::from_gees(n, &[set(&[a + b, a])]).unwrap();
                    let phi = CohomologyPresentation::new(&c)
                        .unwrap()
                        .duality_functional()
                        .unwrap();
                    let binom2 = |x: usize| x * x.saturating_sub(1) / 2;
                    assert!(phi.value(set(&[1, a + 1])));
                    if a >= 2 {
                        assert!(phi.value(set(&[1, 2])));
                    }
                    assert_eq!(phi.value(set(&[a + 1])), (a - 1) % 2 == 1, "a={a} b={b}");
                    assert_eq!(phi.value(set(&[1])), (a + b) % 2 == 1);
                    assert_eq!(
                        phi.value(Subset::EMPTY),
                        ((a - 1) * b + binom2(a - 1)) % 2 == 1
                    );
                }
            }
        }
    }

    #[test]
    fn three_pairs_phi() {
        let p = CohomologyPresentation::new(&code("743,752,761")).unwrap();
        let phi = p.duality_functional().unwrap();
        for s in p.basis(p.m()).unwrap() {
            if s.len() == 2 {
                assert!(phi.value(*s), "{s}");
            }
        }
        assert!(!phi.value(set(&[1, 2, 3])));
    }

    #[test]
    fn four_term_phi_at_ones() {
        for n in 6..=9 {
            let c = GeneticCode::from_gees(n, &[set(&[3, 2, 1])]).unwrap();
            let phi = CohomologyPresentation::new(&c)
                .unwrap()
                .duality_functional()
                .unwrap();
            assert_eq!(phi.ones(), vec![set(&[1, 2, 3])], "n={n}");
        }
    }

    #[test]
    fn listed_psi_in_space() {
        let p = CohomologyPresentation::new(&code("7321,742")).unwrap();
        let psi = p.psi_space().unwrap();
        let v = psi
            .functional(&[set(&[1]), set(&[1, 3]), set(&[1, 4])])
            .unwrap();
        assert!(psi.contains(&v));
        let p = CohomologyPresentation::new(&code("743,752,761")).unwrap();
        let psi = p.psi_space().unwrap();
        assert!(psi.contains(&psi.functional(&[set(&[1]), set(&[1, 6])]).unwrap()));
        assert!(!psi.contains(&psi.functional(&[set(&[1])]).unwrap()));
    }

    #[test]
    fn torus_psi_space_is_exactly_the_annihilator() {
        let p = CohomologyPresentation::new(&code("521")).unwrap();
        let space = p.psi_space().unwrap();
        let k = space.basis.len();
        let rel = p.relations(1).unwrap();
        for x in 0u32..1 << k {
            let v = Gf2Vector::from_bools(&(0..k).map(|i| x >> i & 1 == 1).collect::<Vec<_>>());
            let kills = rel.mul_vec(&v).unwrap().is_zero();
            assert_eq!(space.contains(&v), kills);
        }
        assert_eq!(space.dim(), 2);
    }

    #[test]
    fn single_gene_top_relations_identify_vi() {
        // ⟨{n,a}⟩: relation({i}) + relation({j}) = R^{m-1}V_i + R^{m-1}V_j.
        for a in 2..=5 {
            let n = a + 3;
            let c = GeneticCode::from_gees(n, &[set(&[a])]).unwrap();
            let p = CohomologyPresentation::new(&c).unwrap();
            let m = p.m();
            let sets = p.relation_sets(m).unwrap();
            let rel = p.relations(m).unwrap();
            for i in 1..a {
                let j = i + 1;
                let ri = sets.iter().position(|s| *s == set(&[i])).unwrap();
                let rj = sets.iter().position(|s| *s == set(&[j])).unwrap();
                let mut sum = rel.row(ri).clone();
                sum.xor_assign(rel.row(rj));
                assert_eq!(sum, p.functional(m, &[set(&[i]), set(&[j])]).unwrap());
            }
        }
    }

    #[test]
    fn emitters() {
        let p = CohomologyPresentation::new(&code("521")).unwrap();
        assert_eq!(
            p.betti_csv(),
            "degree,spanning,rank,betti\n0,1,0,1\n1,3,1,2\n2,4,3,1\n"
        );
        let j = p.relations_json(1).unwrap();
        assert_eq!(j["columns"], serde_json::json!(["0", "1", "2"]));
        assert!(p
            .relations_csv(2)
            .unwrap()
            .starts_with("subgee,\"0\",\"1\",\"1,2\",\"2\"\n"));
    }
}
