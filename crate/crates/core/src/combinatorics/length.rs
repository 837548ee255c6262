use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Subset;
use crate::error::{Error, Result};

/// Side lengths `ℓ_1 <= ... <= ℓ_n` of a planar polygon, as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthVector {
    lengths: Vec<BigRational>,
    /// The same vector scaled to coprime integers; all sums are done here.
    scaled: Vec<BigInt>,
    total: BigInt,
}

impl LengthVector {
    pub fn new(lengths: Vec<BigRational>) -> Result<Self> {
        if lengths.len() < 3 {
            return Err(Error::TooFewLengths(lengths.len()));
        }
        if lengths.len() > super::MAX_N {
            return Err(Error::UnsupportedN {
                n: lengths.len(),
                min: 3,
                max: super::MAX_N,
            });
        }
        for (i, l) in lengths.iter().enumerate() {
            if !l.is_positive() {
                return Err(Error::NonPositiveLength { index: i + 1 });
            }
            if i > 0 && *l < lengths[i - 1] {
                return Err(Error::NotSorted { index: i + 1 });
            }
        }
        let lcm = lengths
            .iter()
            .fold(BigInt::one(), |acc, l| acc.lcm(l.denom()));
        let mut scaled: Vec<BigInt> = lengths
            .iter()
            .map(|l| (l * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for x in &mut scaled {
            *x /= &g;
        }
        let total = scaled.iter().sum();
        Ok(LengthVector {
            lengths,
            scaled,
            total,
        })
    }

    pub fn from_integers(lengths: &[u64]) -> Result<Self> {
        Self::new(
            lengths
                .iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[BigRational] {
        &self.lengths
    }

    /// Coprime integer multiple of the vector; same genetic code.
    pub fn integer_lengths(&self) -> &[BigInt] {
        &self.scaled
    }

    /// `2 * Σ_{i∈S} ℓ_i - Σ ℓ_i`, in the integer scaling.
    fn excess(&self, s: Subset) -> BigInt {
        let sum: BigInt = s.elements().map(|i| &self.scaled[i - 1]).sum();
        sum * 2 - &self.total
    }

    /// A subset summing to exactly half the total, if any.
    pub fn nongeneric_witness(&self) -> Option<Subset> {
        let n = self.n();
        // complements give the same equation; fix element n outside.
        (0..1u32 << (n - 1))
            .map(Subset::from_mask)
            .find(|s| self.excess(*s).is_zero())
    }

    pub fn is_generic(&self) -> bool {
        self.nongeneric_witness().is_none()
    }

    /// `ℓ_n < ℓ_1 + ... + ℓ_{n-1}`.
    pub fn is_nonempty(&self) -> bool {
        self.excess(Subset::singleton(self.n())).is_negative()
    }

    /// Strict comparison `Σ_S ℓ < ½ Σ ℓ`; rejects non-generic vectors.
    pub fn is_short(&self, s: Subset) -> Result<bool> {
        if let Some(w) = self.nongeneric_witness() {
            return Err(Error::NonGeneric { witness: w });
        }
        Ok(self.is_short_unchecked(s))
    }

    pub(crate) fn is_short_unchecked(&self, s: Subset) -> bool {
        self.excess(s).is_negative()
    }

    /// Multiplies every length by a positive rational.
    pub fn scaled_by(&self, factor: &BigRational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::BadLength(factor.to_string()));
        }
        Self::new(self.lengths.iter().map(|l| l * factor).collect())
    }
}

impl FromStr for LengthVector {
    type Err = Error;

    /// Comma-separated rationals such as `1,1,3/2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let lengths = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<BigRational>()
                    .map_err(|_| Error::BadLength(part.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(lengths)
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(s: &str) -> LengthVector {
        s.parse().unwrap()
    }

    /// Exhaustive subset sums in rational arithmetic, no integer scaling.
    fn generic_oracle(l: &LengthVector) -> bool {
        let n = l.n();
        let total: BigRational = l.lengths().iter().sum();
        let half = total / BigRational::from_integer(2.into());
        (0..1u32 << n).all(|m| {
            let s: BigRational = Subset::from_mask(m)
                .elements()
                .map(|i| l.lengths()[i - 1].clone())
                .sum();
            s != half
        })
    }

    #[test]
    fn genericity() {
        let ones = lv("1,1,1,1,1,1,1");
        assert!(ones.is_generic());
        assert!(generic_oracle(&ones));
        let four = lv("1,1,1,1");
        assert!(!four.is_generic());
        assert_eq!(
            four.nongeneric_witness(),
            Some(Subset::from_elements([1, 2]))
        );
        let v = lv("1,2,2,3,4");
        assert!(!v.is_generic());
        assert!(!generic_oracle(&v));
        let r = lv("1/3,1/2,1/2,2/3,1");
        assert_eq!(r.is_generic(), generic_oracle(&r));
    }

    #[test]
    fn shortness() {
        let ones = lv("1,1,1,1,1,1,1");
        assert!(ones.is_short(Subset::from_elements([7, 6, 5])).unwrap());
        assert!(ones.is_short(Subset::EMPTY).unwrap());
        assert!(!ones.is_short(Subset::full(7)).unwrap());
        assert!(matches!(
            lv("1,1,1,1").is_short(Subset::EMPTY),
            Err(Error::NonGeneric { .. })
        ));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            "1,1".parse::<LengthVector>(),
            Err(Error::TooFewLengths(2))
        ));
        assert!(matches!(
            "1,0,2".parse::<LengthVector>(),
            Err(Error::NonPositiveLength { index: 2 })
        ));
        assert!(matches!(
            "1,3,2".parse::<LengthVector>(),
            Err(Error::NotSorted { index: 3 })
        ));
        assert!(matches!(
            "1,x,2".parse::<LengthVector>(),
            Err(Error::BadLength(_))
        ));
        assert!(lv("1,1,1,1,3").is_nonempty());
        assert!(!lv("1,1,1,4").is_nonempty());
    }

    #[test]
    fn integer_scaling() {
        let v = lv("1/2,1/2,3/4");
        let ints: Vec<String> = v.integer_lengths().iter().map(|x| x.to_string()).collect();
        assert_eq!(ints, ["2", "2", "3"]);
    }
}
