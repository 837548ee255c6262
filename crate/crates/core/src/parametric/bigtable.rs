//! Type-counted systems for the single gene `{n, a+b+c, a+b, a}`.
//!
//! A uniform `ψ` is constant on monomials of the same type, so it is a vector
//! indexed by [`PATTERNS`]. Its admissibility conditions and the pairing with
//! `φ` depend only on `a mod 4`, `b mod 4` and `c mod 2`.

use std::fmt;

use super::families::Family;
use super::reference::BIGTABLE;
use super::{choose2, is_pow2, odd, phi_closed_form};
use crate::certificates::{find_psi, pair, ProductSpec};
use crate::cohomology::CohomologyPresentation;
use crate::combinatorics::{GeneticCode, Subset, Validation};
use crate::gf2::{binomial_parity_signed, Gf2Matrix, Gf2Vector};
use crate::Result;

/// Sorted type multiset of a subgee.
pub type TypePattern = &'static [u8];

/// Every type a subgee can have, in unknown order.
pub const PATTERNS: [TypePattern; 14] = [
    &[],
    &[1],
    &[2],
    &[3],
    &[1, 1],
    &[1, 2],
    &[1, 3],
    &[2, 2],
    &[2, 3],
    &[1, 1, 1],
    &[1, 1, 2],
    &[1, 1, 3],
    &[1, 2, 2],
    &[1, 2, 3],
];

/// Types with at least two elements; one admissibility row each.
pub const RELATION_PATTERNS: &[TypePattern] = PATTERNS.split_at(4).1;

const P0: usize = 0;
const P1: usize = 1;
const P2: usize = 2;
const P3: usize = 3;
const P12: usize = 5;
const P13: usize = 6;
const P23: usize = 8;
const P123: usize = 13;

fn counts(p: TypePattern) -> [i64; 3] {
    let mut u = [0; 3];
    for &t in p {
        u[t as usize - 1] += 1;
    }
    u
}

/// Residues `(a mod 4, b mod 4, c mod 2)` written in `1..=4`, `1..=4`, `1..=2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueCase {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl ResidueCase {
    pub fn new(a: u64, b: u64, c: u64) -> Self {
        ResidueCase {
            a: (a + 3) % 4 + 1,
            b: (b + 3) % 4 + 1,
            c: (c + 1) % 2 + 1,
        }
    }

    pub fn all() -> Vec<ResidueCase> {
        let mut out = Vec::with_capacity(32);
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=2 {
                    out.push(ResidueCase { a, b, c });
                }
            }
        }
        out
    }

    /// Representatives large enough that no binomial top goes negative.
    pub fn representatives(&self) -> (i64, i64, i64) {
        (self.a as i64 + 4, self.b as i64 + 4, self.c as i64 + 2)
    }

    /// The two cases handled by explicit products instead of a column.
    pub fn is_exceptional(&self) -> bool {
        matches!((self.a, self.b, self.c), (1, 1, 1) | (2, 4, 1))
    }
}

impl fmt::Display for ResidueCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Which expansion supplies the pairing row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingRow {
    /// Product `w1^α w2^2 w3 R^*`, coefficients `q_0..q_4`.
    SquaredSecond,
    /// Product `w1^α w2 w3 R^*`, coefficients `q_0..q_3`.
    LinearSecond,
}

/// Correction to the pairing row at special `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extra {
    None,
    /// `+ X ψ_{123}`.
    TopTriple,
    /// `+ ψ_1 + (a+b) ψ_{12}`.
    SingleAndPair,
}

/// Range of `m` a column is meant for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MClass {
    /// Neither `m` nor `m - 1` a power of 2.
    Generic,
    PowerOfTwo,
    PowerPlusOne,
}

impl MClass {
    pub fn of(m: u64) -> MClass {
        if is_pow2(m) {
            MClass::PowerOfTwo
        } else if is_pow2(m - 1) {
            MClass::PowerPlusOne
        } else {
            MClass::Generic
        }
    }
}

/// How the binomial coefficients `q_t` are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QRule {
    Fixed(&'static [&'static [u8]]),
    /// `q_t = C(M - t + 2, 2)` for each residue of `M mod 4`.
    ChooseTwoShift,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Column {
    pub label: &'static str,
    pub row: PairingRow,
    pub q: QRule,
    pub extra: Extra,
    pub class: MClass,
    /// Exponent of `w2`.
    pub second: usize,
}

impl Column {
    pub fn q_vectors(&self) -> Vec<Vec<bool>> {
        match self.q {
            QRule::Fixed(vs) => vs
                .iter()
                .map(|v| v.iter().map(|&x| x == 1).collect())
                .collect(),
            QRule::ChooseTwoShift => (0..4)
                .map(|m: i64| (0..5).map(|t| choose2(m - t + 2)).collect())
                .collect(),
        }
    }

    /// `q_t = C(2m - 4 - α, m - t)` (or `C(2m - 3 - α, m - t)` for the linear
    /// row) at a concrete `m`.
    pub fn q_at(&self, m: u64) -> Option<Vec<bool>> {
        let (alpha, _) = self.exponents(m)?;
        let (shift, len) = match self.row {
            PairingRow::SquaredSecond => (4, 5),
            PairingRow::LinearSecond => (3, 4),
        };
        let top = (2 * m as i64) - shift - alpha as i64;
        Some(
            (0..len)
                .map(|t| binomial_parity_signed(top, m as i64 - t))
                .collect(),
        )
    }

    /// `(α, r)` for the product `w1^α w2^second w3 R^r` at this `m`, when the
    /// column applies.
    pub fn exponents(&self, m: u64) -> Option<(usize, usize)> {
        if MClass::of(m) != self.class || m < 4 {
            return None;
        }
        let e = 63 - m.leading_zeros() as u64;
        let pow = 1u64 << e;
        let (alpha, r) = match self.label {
            "1" => (2 * (m - pow) as i64 - 3, 2 * pow as i64 - 1),
            "2" => (2 * (m - pow) as i64 - 2, 2 * pow as i64 - 2),
            "3" => (2 * (m - pow) as i64 - 1, 2 * pow as i64 - 3),
            "4" => (2 * (m - pow) as i64 - 1, 2 * pow as i64 - 2),
            "5(3)" | "5(2)" | "5(1)" => {
                let eps = (self.label.as_bytes()[2] - b'0') as i64;
                (m as i64 - eps, m as i64 + eps - 4)
            }
            "6" => (m as i64 - 1, m as i64 - 2),
            "7(1)" => (m as i64, m as i64 - 4),
            "7(-1)" => (m as i64 - 2, m as i64 - 2),
            _ => return None,
        };
        if self.class == MClass::Generic && !(2..pow).contains(&(m - pow)) {
            return None;
        }
        (alpha >= 1 && r >= 0).then_some((alpha as usize, r as usize))
    }
}

/// The ten columns of the big table, left to right.
pub const COLUMNS: [Column; 10] = [
    Column {
        label: "1",
        row: PairingRow::SquaredSecond,
        q: QRule::Fixed(&[&[1, 1, 1, 1, 1]]),
        extra: Extra::None,
        class: MClass::Generic,
        second: 2,
    },
    Column {
        label: "2",
        row: PairingRow::SquaredSecond,
        q: QRule::Fixed(&[&[1, 0, 1, 0, 1], &[0, 1, 0, 1, 0]]),
        extra: Extra::None,
        class: MClass::Generic,
        second: 2,
    },
    Column {
        label: "3",
        row: PairingRow::SquaredSecond,
        q: QRule::ChooseTwoShift,
        extra: Extra::None,
        class: MClass::Generic,
        second: 2,
    },
    Column {
        label: "4",
        row: PairingRow::LinearSecond,
        q: QRule::Fixed(&[&[0, 1, 0, 1], &[1, 0, 1, 0]]),
        extra: Extra::None,
        class: MClass::Generic,
        second: 1,
    },
    Column {
        label: "5(3)",
        row: PairingRow::SquaredSecond,
        q: QRule::Fixed(&[&[0, 1, 1, 1, 1]]),
        extra: Extra::TopTriple,
        class: MClass::PowerOfTwo,
        second: 2,
    },
    Column {
        label: "5(2)",
        row: PairingRow::SquaredSecond,
        q: QRule::Fixed(&[&[0, 0, 1, 0, 1]]),
        extra: Extra::TopTriple,
        class: MClass::PowerOfTwo,
        second: 2,
    },
    Column {
        label: "5(1)",
        row: PairingRow::SquaredSecond,
        q: QRule::Fixed(&[&[0, 0, 0, 1, 1]]),
        extra: Extra::TopTriple,
        class: MClass::PowerOfTwo,
        second: 2,
    },
    Column {
        label: "6",
        row: PairingRow::LinearSecond,
        q: QRule::Fixed(&[&[0, 0, 1, 0]]),
        extra: Extra::TopTriple,
        class: MClass::PowerOfTwo,
        second: 1,
    },
    Column {
        label: "7(1)",
        row: PairingRow::SquaredSecond,
        q: QRule::Fixed(&[&[0, 0, 0, 0, 1]]),
        extra: Extra::SingleAndPair,
        class: MClass::PowerPlusOne,
        second: 2,
    },
    Column {
        label: "7(-1)",
        row: PairingRow::SquaredSecond,
        q: QRule::Fixed(&[&[0, 0, 1, 1, 1]]),
        extra: Extra::SingleAndPair,
        class: MClass::PowerPlusOne,
        second: 2,
    },
];

/// Column ranges sharing an [`MClass`].
pub const BLOCKS: [(MClass, std::ops::Range<usize>); 3] = [
    (MClass::Generic, 0..4),
    (MClass::PowerOfTwo, 4..8),
    (MClass::PowerPlusOne, 8..10),
];

/// `X`, the common coefficient of `ψ_{23}` and `ψ_{123}`.
fn x_term(a: i64, b: i64, c: i64) -> bool {
    odd((a - 1) * (a + b + c - 1)) ^ choose2(a - 1) ^ choose2(b) ^ odd((b - 1) * (c - 1))
}

fn z_term(a: i64, b: i64, c: i64) -> bool {
    let lead = a - 1 + if choose2(a) { 1 } else { 0 };
    odd(lead * (a + b + c - 1))
        ^ choose2(a - 1)
        ^ (odd(a) && choose2(b))
        ^ odd(a * (b - 1) * (c - 1))
}

/// Pairing coefficients of `ψ` over [`PATTERNS`].
pub fn pairing_coefficients(case: &ResidueCase, col: &Column, q: &[bool]) -> Vec<bool> {
    let (a, b, c) = case.representatives();
    pairing_coefficients_at(a, b, c, col, q)
}

pub fn pairing_coefficients_at(a: i64, b: i64, c: i64, col: &Column, q: &[bool]) -> Vec<bool> {
    let x = x_term(a, b, c);
    let z = z_term(a, b, c);
    let mut row = vec![false; PATTERNS.len()];
    match col.row {
        PairingRow::SquaredSecond => {
            let (q0, q1, q2, q3, q4) = (q[0], q[1], q[2], q[3], q[4]);
            row[P0] = q1;
            row[P1] = q1 ^ (q3 && odd(a));
            row[P2] = q3 && odd(a + b);
            row[P3] = q2 && odd(a + b + c - 1);
            row[P12] = (q1 && (odd(a * b + 1) ^ choose2(a))) ^ (q3 && odd(a + b));
            row[P13] = q2 && (odd((a - 1) * (b + c)) ^ choose2(a));
            row[P23] = q4 && x;
            row[P123] = (q4 && x) ^ (q0 && z);
        }
        PairingRow::LinearSecond => {
            let (q0, q1, q2, q3) = (q[0], q[1], q[2], q[3]);
            row[P0] = q1;
            row[P1] = q1 ^ (q2 && odd(a));
            row[P2] = q2 && odd(a + b);
            row[P3] = q2 && odd(a + b + c - 1);
            row[P12] = (q1 && (odd(a * b + 1) ^ choose2(a))) ^ (q2 && odd(a + b));
            row[P13] = (q1 && (odd(a * (b + c) + a - 1) ^ choose2(a))) ^ (q2 && odd(a + b + c - 1));
            row[P23] = q3 && x;
            row[P123] = (q3 && x) ^ (q0 && z);
        }
    }
    match col.extra {
        Extra::None => {}
        Extra::TopTriple => row[P123] ^= x,
        Extra::SingleAndPair => {
            row[P1] ^= true;
            row[P12] ^= odd(a + b);
        }
    }
    row
}

/// Admissibility rows for a uniform functional on degree `m - 1` (one per
/// [`RELATION_PATTERNS`] entry), or on degree `m` when `all` also adds the
/// singleton rows.
pub fn admissibility_rows(case: &ResidueCase, all: bool) -> Vec<Vec<bool>> {
    let (a, b, c) = case.representatives();
    let rows: &[TypePattern] = if all {
        &PATTERNS[1..]
    } else {
        RELATION_PATTERNS
    };
    rows.iter().map(|u| coefficient_row([a, b, c], u)).collect()
}

fn coefficient_row(params: [i64; 3], u: TypePattern) -> Vec<bool> {
    let u = counts(u);
    PATTERNS
        .iter()
        .map(|v| {
            let v = counts(v);
            (0..3).all(|i| binomial_parity_signed(params[i] - u[i], v[i]))
        })
        .collect()
}

/// Whether a subgee of this type exists when the intervals have the given
/// lengths.
pub fn pattern_present(params: [i64; 3], p: TypePattern) -> bool {
    let u = counts(p);
    (0..3).all(|i| u[i] <= params[i])
}

/// The system at actual (possibly small) parameters: rows and unknowns of
/// absent types are dropped.
pub fn small_parameter_system(
    a: i64,
    b: i64,
    c: i64,
    col: &Column,
    q: &[bool],
) -> (Gf2Matrix, Gf2Vector) {
    let params = [a, b, c];
    let keep: Vec<usize> = (0..PATTERNS.len())
        .filter(|&j| pattern_present(params, PATTERNS[j]))
        .collect();
    let restrict = |row: Vec<bool>| keep.iter().map(|&j| row[j]).collect::<Vec<bool>>();
    let mut rows: Vec<Vec<bool>> = RELATION_PATTERNS
        .iter()
        .filter(|u| pattern_present(params, u))
        .map(|u| restrict(coefficient_row(params, u)))
        .collect();
    rows.push(restrict(pairing_coefficients_at(a, b, c, col, q)));
    let mut target = Gf2Vector::zeros(rows.len());
    target.set(rows.len() - 1, true);
    (Gf2Matrix::from_bools(&rows), target)
}

/// The admissibility rows plus the pairing row, whose target is 1.
pub fn build_type_system(case: &ResidueCase, col: &Column, q: &[bool]) -> (Gf2Matrix, Gf2Vector) {
    let mut rows = admissibility_rows(case, false);
    rows.push(pairing_coefficients(case, col, q));
    let mut target = Gf2Vector::zeros(rows.len());
    target.set(rows.len() - 1, true);
    (Gf2Matrix::from_bools(&rows), target)
}

/// Whether a uniform `ψ` with pairing 1 exists for every `q` vector.
pub fn column_solvable(case: &ResidueCase, col: &Column) -> bool {
    col.q_vectors().iter().all(|q| {
        let (m, t) = build_type_system(case, col, q);
        m.solve(&t).expect("square shapes").is_some()
    })
}

/// Computed marks for all 32 residue cases.
#[derive(Clone, Debug)]
pub struct BigTable {
    pub rows: Vec<(ResidueCase, [bool; 10])>,
}

impl BigTable {
    pub fn marks(&self, case: &ResidueCase) -> Option<[bool; 10]> {
        self.rows.iter().find(|(c, _)| c == case).map(|(_, m)| *m)
    }

    /// Cells that differ from the published table, as `(case, column)`.
    pub fn diff_reference(&self) -> Vec<(ResidueCase, usize)> {
        let mut out = Vec::new();
        for ((a, b, c), want) in BIGTABLE.iter() {
            let case = ResidueCase {
                a: *a,
                b: *b,
                c: *c,
            };
            let got = self.marks(&case).expect("all cases computed");
            out.extend((0..10).filter(|&j| got[j] != want[j]).map(|j| (case, j)));
        }
        out
    }

    /// Non-exceptional cases with no mark in some block.
    pub fn uncovered(&self) -> Vec<(ResidueCase, MClass)> {
        let mut out = Vec::new();
        for (case, marks) in &self.rows {
            if case.is_exceptional() {
                continue;
            }
            for (class, range) in BLOCKS.iter() {
                if !marks[range.clone()].iter().any(|&x| x) {
                    out.push((*case, *class));
                }
            }
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| a | b | c |");
        for col in COLUMNS.iter() {
            s.push_str(&format!(" {} |", col.label));
        }
        s.push_str("\n|---|---|---|");
        s.push_str(&"---|".repeat(COLUMNS.len()));
        s.push('\n');
        for (case, marks) in &self.rows {
            s.push_str(&format!("| {} | {} | {} |", case.a, case.b, case.c));
            for &m in marks {
                s.push_str(if m { " x |" } else { "   |" });
            }
            s.push('\n');
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,b,c");
        for col in COLUMNS.iter() {
            s.push_str(&format!(",{}", col.label));
        }
        s.push('\n');
        for (case, marks) in &self.rows {
            s.push_str(&format!("{},{},{}", case.a, case.b, case.c));
            for &m in marks {
                s.push_str(if m { ",1" } else { ",0" });
            }
            s.push('\n');
        }
        s
    }
}

pub fn reproduce_bigtable() -> BigTable {
    let rows = ResidueCase::all()
        .into_iter()
        .map(|case| {
            let mut marks = [false; 10];
            for (j, col) in COLUMNS.iter().enumerate() {
                marks[j] = column_solvable(&case, col);
            }
            (case, marks)
        })
        .collect();
    BigTable { rows }
}

/// Smallest positive `(a, b, c)` in a residue class.
fn smallest(case: &ResidueCase) -> (usize, usize, usize) {
    (case.a as usize, case.b as usize, case.c as usize)
}

fn single_gene(a: usize, b: usize, c: usize, n: usize) -> Option<GeneticCode> {
    if a + b + c >= n {
        return None;
    }
    let code = GeneticCode::from_gees(n, &[Subset::from_elements([a + b + c, a + b, a])]).ok()?;
    (code.validate() == Validation::Ok).then_some(code)
}

/// Runs the concrete search for `ψ` with the column's product at `m` on the
/// smallest member of the residue class. `None` when the column does not
/// apply at this `m` or the code is too small.
pub fn cross_check_column(case: &ResidueCase, col: &Column, m: u64) -> Result<Option<bool>> {
    let Some((alpha, r)) = col.exponents(m) else {
        return Ok(None);
    };
    let (a, b, c) = smallest(case);
    let Some(code) = single_gene(a, b, c, m as usize + 3) else {
        return Ok(None);
    };
    let p = ProductSpec::new(r, &[(1, alpha), (a + 1, col.second), (a + b + 1, 1)]);
    let pres = CohomologyPresentation::new(&code)?;
    let phi = pres.duality_functional()?;
    Ok(Some(find_psi(&pres, &phi, &p)?.is_some()))
}

fn exceptional_check(
    a: usize,
    b: usize,
    c: usize,
    m: u64,
    product: impl Fn(u64, usize) -> ProductSpec,
) -> Result<Option<bool>> {
    let Some(code) = single_gene(a, b, c, m as usize + 3) else {
        return Ok(None);
    };
    let eps = if is_pow2(m - 2) { 1 } else { 2 };
    let pres = CohomologyPresentation::new(&code)?;
    let phi = pres.duality_functional()?;
    let space = pres.psi_space()?;
    let pairs: Vec<Subset> = space
        .basis
        .iter()
        .copied()
        .filter(|s| s.len() == 2)
        .collect();
    let psi = space.functional(&pairs)?;
    if !space.contains(&psi) {
        return Ok(Some(false));
    }
    Ok(Some(pair(&pres, &phi, &psi, &product(m, eps))?))
}

/// `ψ` = 1 on every pair is admissible and pairs to 1 with
/// `w1^{m-ε} w2^2 w3^3 R^{m-6+ε}`, for `a ≡ b ≡ 1 (mod 4)`, `c` odd, `m > 4`.
pub fn prop111_check(a: usize, b: usize, c: usize, m: u64) -> Result<Option<bool>> {
    if m <= 4 {
        return Ok(None);
    }
    exceptional_check(a, b, c, m, |m, eps| {
        ProductSpec::new(
            m as usize + eps - 6,
            &[(1, m as usize - eps), (a + 1, 2), (a + b + 1, 3)],
        )
    })
}

/// Same `ψ` with `w1^2 w2^2 w3^{m-ε} R^{m-5+ε}`, for `a ≡ 2`, `b ≡ 0 (mod 4)`, `c` odd.
pub fn prop241_check(a: usize, b: usize, c: usize, m: u64) -> Result<Option<bool>> {
    if m < 4 {
        return Ok(None);
    }
    exceptional_check(a, b, c, m, |m, eps| {
        ProductSpec::new(
            m as usize + eps - 5,
            &[(1, 2), (a + 1, 2), (a + b + 1, m as usize - eps)],
        )
    })
}

/// The type-level `φ` for a residue case, from the closed form.
pub fn uniform_phi(case: &ResidueCase) -> Vec<bool> {
    let (a, b, c) = case.representatives();
    let f = Family::ThreeTerm {
        a: a as u64,
        b: b as u64,
        c: c as u64,
    };
    PATTERNS.iter().map(|p| phi_closed_form(&f, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(row: &[bool], v: &[bool]) -> bool {
        row.iter()
            .zip(v)
            .fold(false, |acc, (&x, &y)| acc ^ (x && y))
    }

    #[test]
    fn residue_normalization() {
        assert_eq!(ResidueCase::new(5, 8, 3), ResidueCase { a: 1, b: 4, c: 1 });
        assert_eq!(ResidueCase::new(4, 2, 2), ResidueCase { a: 4, b: 2, c: 2 });
        assert_eq!(ResidueCase::all().len(), 32);
    }

    #[test]
    fn coefficients_depend_only_on_residues() {
        for case in ResidueCase::all() {
            let base = admissibility_rows(&case, true);
            let (a, b, c) = case.representatives();
            for (da, db, dc) in [(4, 0, 0), (0, 4, 0), (0, 0, 2), (8, 4, 2)] {
                let params = [a + da, b + db, c + dc];
                let rows: Vec<Vec<bool>> = PATTERNS[1..]
                    .iter()
                    .map(|u| {
                        let u = counts(u);
                        PATTERNS
                            .iter()
                            .map(|v| {
                                let v = counts(v);
                                (0..3).all(|i| binomial_parity_signed(params[i] - u[i], v[i]))
                            })
                            .collect()
                    })
                    .collect();
                assert_eq!(rows, base, "{case}");
            }
        }
    }

    #[test]
    fn uniform_phi_solves_the_type_relations() {
        for case in ResidueCase::all() {
            let phi = uniform_phi(&case);
            for row in admissibility_rows(&case, true) {
                assert!(!dot(&row, &phi), "{case}");
            }
        }
    }

    #[test]
    fn q_vectors_follow_the_rules() {
        assert_eq!(COLUMNS[2].q_vectors().len(), 4);
        for (m, q) in COLUMNS[2].q_vectors().iter().enumerate() {
            for t in 0..5 {
                let top = m as i64 - t as i64 + 2;
                let direct = (top * (top - 1) / 2).rem_euclid(2) == 1;
                assert_eq!(q[t], direct);
            }
        }
        for m in 10u64..14 {
            let e = 3;
            let mp = m - (1 << e);
            let alpha = 2 * mp - 2;
            let q: Vec<bool> = (0..5)
                .map(|t| super::super::lucas_binomial(2 * m - 4 - alpha, m - t))
                .collect();
            assert!(COLUMNS[1].q_vectors().contains(&q), "m={m}");
            let alpha = 2 * mp - 1;
            let q: Vec<bool> = (0..5)
                .map(|t| super::super::lucas_binomial(2 * m - 4 - alpha, m - t))
                .collect();
            assert!(COLUMNS[2].q_vectors().contains(&q), "m={m}");
            let q: Vec<bool> = (0..4)
                .map(|t| super::super::lucas_binomial(2 * m - 3 - alpha, m - t))
                .collect();
            assert!(COLUMNS[3].q_vectors().contains(&q), "m={m}");
        }
    }

    #[test]
    fn concrete_q_is_a_listed_vector() {
        for col in COLUMNS.iter() {
            let listed = col.q_vectors();
            let mut seen = 0;
            for m in 5u64..200 {
                if let Some(q) = col.q_at(m) {
                    assert!(listed.contains(&q), "{} m={m} q={q:?}", col.label);
                    seen += 1;
                }
            }
            assert!(seen > 0, "{}", col.label);
        }
    }

    #[test]
    fn small_parameters_agree_with_concrete_solver() {
        use rayon::prelude::*;
        let mut jobs = Vec::new();
        for a in 1..=4usize {
            for b in 1..=4usize {
                for c in 1..=2usize {
                    if !(a <= 2 || b == 1) {
                        continue;
                    }
                    for (j, col) in COLUMNS.iter().enumerate() {
                        for m in [9u64, 10, 11, 16] {
                            if col.q_at(m).is_some() {
                                jobs.push((a, b, c, j, m));
                            }
                        }
                    }
                }
            }
        }
        let outcomes: Vec<(bool, Option<bool>)> = jobs
            .par_iter()
            .map(|&(a, b, c, j, m)| {
                let col = &COLUMNS[j];
                let (mat, t) = small_parameter_system(
                    a as i64,
                    b as i64,
                    c as i64,
                    col,
                    &col.q_at(m).unwrap(),
                );
                let symbolic = mat.solve(&t).unwrap().is_some();
                let case = ResidueCase {
                    a: a as u64,
                    b: b as u64,
                    c: c as u64,
                };
                (symbolic, cross_check_column(&case, col, m).unwrap())
            })
            .collect();
        let mut compared = 0;
        for ((a, b, c, j, m), (symbolic, concrete)) in jobs.iter().zip(&outcomes) {
            if let Some(concrete) = concrete {
                compared += 1;
                assert!(
                    !symbolic || *concrete,
                    "({a},{b},{c}) col {} m={m}",
                    COLUMNS[*j].label
                );
            }
        }
        assert!(compared > 100, "{compared}");
    }

    #[test]
    fn exponents_fill_the_degree() {
        for col in COLUMNS.iter() {
            for m in 5u64..40 {
                if let Some((alpha, r)) = col.exponents(m) {
                    assert_eq!(
                        alpha + col.second + 1 + r,
                        2 * m as usize - 1,
                        "{} m={m}",
                        col.label
                    );
                }
            }
        }
        assert_eq!(COLUMNS[0].exponents(10), Some((1, 15)));
        assert_eq!(COLUMNS[0].exponents(16), None);
        assert_eq!(COLUMNS[4].exponents(16), Some((13, 15)));
    }

    #[test]
    fn bigtable_matches_reference() {
        let table = reproduce_bigtable();
        let diff = table.diff_reference();
        assert!(diff.is_empty(), "{} cells differ: {:?}", diff.len(), diff);
        assert!(table.uncovered().is_empty());
        for case in ResidueCase::all().iter().filter(|c| c.is_exceptional()) {
            assert_eq!(table.marks(case), Some([false; 10]), "{case}");
        }
    }

    #[test]
    fn exceptional_functionals_at_type_level() {
        for case in [
            ResidueCase { a: 1, b: 1, c: 1 },
            ResidueCase { a: 2, b: 4, c: 1 },
        ] {
            let pairs: Vec<bool> = PATTERNS.iter().map(|p| p.len() == 2).collect();
            for row in admissibility_rows(&case, false) {
                assert!(!dot(&row, &pairs), "{case}");
            }
        }
        let phi = uniform_phi(&ResidueCase { a: 1, b: 1, c: 1 });
        assert_eq!(
            phi,
            PATTERNS.iter().map(|p| p.len() == 3).collect::<Vec<_>>()
        );
        let phi = uniform_phi(&ResidueCase { a: 2, b: 4, c: 1 });
        let want: Vec<bool> = PATTERNS
            .iter()
            .map(|p| p.len() == 3 || *p == [2, 2] || *p == [2, 3])
            .collect();
        assert_eq!(phi, want);
    }

    #[test]
    fn exceptional_products_concretely() {
        let cases: [(
            fn(usize, usize, usize, u64) -> Result<Option<bool>>,
            &[(usize, usize, usize)],
        ); 2] = [
            (prop111_check, &[(1, 1, 1), (1, 1, 3), (5, 1, 1), (1, 5, 1)]),
            (prop241_check, &[(2, 4, 1), (2, 4, 3), (6, 4, 1)]),
        ];
        for (check, params) in cases {
            for &(a, b, c) in params {
                let results: Vec<bool> = (5..=12)
                    .filter_map(|m| check(a, b, c, m).unwrap())
                    .collect();
                assert!(!results.is_empty(), "({a},{b},{c}) never valid");
                assert!(results.iter().all(|&x| x), "({a},{b},{c}): {results:?}");
            }
        }
        assert_eq!(prop111_check(1, 1, 1, 5).unwrap(), Some(true));
    }

    #[test]
    fn marked_cells_have_concrete_witnesses() {
        use rayon::prelude::*;
        let table = reproduce_bigtable();
        let jobs: Vec<(ResidueCase, usize, u64)> = table
            .rows
            .iter()
            .flat_map(|(case, marks)| {
                (0..10).filter(|&j| marks[j]).flat_map(move |j| {
                    let ms: &[u64] = match COLUMNS[j].class {
                        MClass::Generic => &[10, 11, 12, 13],
                        MClass::PowerOfTwo => &[16],
                        MClass::PowerPlusOne => &[9],
                    };
                    ms.iter().map(move |&m| (*case, j, m))
                })
            })
            .collect();
        let failures: Vec<_> = jobs
            .par_iter()
            .filter(|(case, j, m)| {
                cross_check_column(case, &COLUMNS[*j], *m).unwrap() == Some(false)
            })
            .collect();
        assert!(failures.is_empty(), "{failures:?}");
    }
}
