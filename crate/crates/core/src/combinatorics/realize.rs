use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::simplex::{minimize, GeRow};
use super::{GeneticCode, LengthVector, Subset};
use crate::error::{Error, Result};

/// Largest `n` for which [`realize`] scans the power set.
pub const REALIZE_MAX_N: usize = 16;

/// Long sets all of whose lower covers are short, under the code's induced
/// classification.
pub fn minimal_long_sets(code: &GeneticCode) -> Vec<Subset> {
    let n = code.n();
    (0..1u32 << n)
        .map(Subset::from_mask)
        .filter(|s| !code.is_short(*s) && s.lower_covers().iter().all(|c| code.is_short(*c)))
        .collect()
}

/// Finds integer side lengths whose genetic code is `code`, or `None` when the
/// strict system is infeasible.
///
/// Unknowns are the increments `d_j >= 0` with `ℓ_i = 1 + d_1 + ... + d_i`, which
/// builds in `1 <= ℓ_1 <= ... <= ℓ_n`. Each gene gets `Σ_{∉G} ℓ - Σ_G ℓ >= 1`, each
/// minimal long set `Σ_L ℓ - Σ_{∉L} ℓ >= 1`; the strict system is homogeneous,
/// so a unit margin loses nothing. Among solutions the smallest perimeter is
/// taken, then scaled to coprime integers.
pub fn realize(code: &GeneticCode) -> Result<Option<LengthVector>> {
    let n = code.n();
    if n > REALIZE_MAX_N {
        return Err(Error::UnsupportedN {
            n,
            min: 3,
            max: REALIZE_MAX_N,
        });
    }
    if code.is_empty() {
        // No short set contains n: the polygon space is empty.
        return Ok(None);
    }
    let mut sign_rows: Vec<Vec<i64>> = Vec::new();
    for &g in code.genes() {
        sign_rows.push(
            (1..=n)
                .map(|i| if g.contains(i) { -1 } else { 1 })
                .collect(),
        );
    }
    for l in minimal_long_sets(code) {
        sign_rows.push(
            (1..=n)
                .map(|i| if l.contains(i) { 1 } else { -1 })
                .collect(),
        );
    }
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let rows: Vec<GeRow> = sign_rows
        .iter()
        .map(|w| {
            // Σ_i w_i (1 + Σ_{j<=i} d_j) >= 1
            let coeffs = (0..n).map(|j| q(w[j..].iter().sum())).collect();
            GeRow {
                coeffs,
                rhs: q(1 - w.iter().sum::<i64>()),
            }
        })
        .collect();
    let cost: Vec<BigRational> = (0..n).map(|j| q((n - j) as i64)).collect();
    let Some(d) = minimize(&cost, &rows) else {
        return Ok(None);
    };
    let mut lengths = Vec::with_capacity(n);
    let mut acc = BigRational::one();
    for dj in d {
        acc += dj;
        lengths.push(acc.clone());
    }
    let lcm = lengths.iter().fold(BigInt::one(), |a, l| a.lcm(l.denom()));
    let ints: Vec<BigInt> = lengths
        .iter()
        .map(|l| (l * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    let lv = LengthVector::new(
        ints.into_iter()
            .map(|x| BigRational::from_integer(x / &g))
            .collect(),
    )?;
    // Re-derive the code from the scaled lengths.
    match GeneticCode::of_lengths(&lv) {
        Ok(c) if c == *code => Ok(Some(lv)),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(l: &LengthVector) -> Vec<String> {
        l.integer_lengths().iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn round_trips() {
        for (c, l) in [
            ("765", "1,1,1,1,1,1,1"),
            ("5", "1,1,1,1,3"),
            ("521", "1,1,4,4,4"),
        ] {
            let code: GeneticCode = c.parse().unwrap();
            let lv = realize(&code).unwrap().expect("realizable");
            assert_eq!(GeneticCode::of_lengths(&lv).unwrap(), code);
            let given: LengthVector = l.parse().unwrap();
            assert_eq!(GeneticCode::of_lengths(&given).unwrap(), code);
        }
    }

    #[test]
    fn minimal_perimeter_solutions() {
        let lv = realize(&"765".parse().unwrap()).unwrap().unwrap();
        assert_eq!(ints(&lv), ["1", "1", "1", "1", "1", "1", "1"]);
        let lv = realize(&"5".parse().unwrap()).unwrap().unwrap();
        assert_eq!(ints(&lv), ["1", "1", "1", "1", "3"]);
    }

    #[test]
    fn conflicting_candidate_is_unrealizable() {
        let code: GeneticCode = "7521,763".parse().unwrap();
        assert_eq!(realize(&code).unwrap(), None);
    }

    #[test]
    fn empty_code_has_no_realization() {
        let code = GeneticCode::parse_digits("<>", Some(6)).unwrap();
        assert_eq!(realize(&code).unwrap(), None);
    }
}
