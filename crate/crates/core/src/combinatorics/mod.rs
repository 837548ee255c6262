//! Length vectors, the dominance order on subsets, genetic codes, and their
//! enumeration and realization.

mod code;
mod enumerate;
mod length;
mod realize;
mod simplex;
mod subset;

pub use code::{CodeJson, GeneticCode, Validation};
pub use enumerate::{
    consistent_downsets, enumerate_codes, Enumeration, RealizedCode, ENUM_MAX_N, ENUM_MIN_N,
};
pub use length::LengthVector;
pub use realize::{minimal_long_sets, realize, REALIZE_MAX_N};
pub use subset::{Subset, MAX_N};

/// Anything that classifies subsets of `[n]` as short or long.
pub trait ShortnessOracle {
    fn ground_size(&self) -> usize;
    fn classify(&self, s: Subset) -> bool;
}

impl ShortnessOracle for GeneticCode {
    fn ground_size(&self) -> usize {
        self.n()
    }

    fn classify(&self, s: Subset) -> bool {
        self.is_short(s)
    }
}

/// Only meaningful for generic vectors; see [`LengthVector::is_short`].
impl ShortnessOracle for LengthVector {
    fn ground_size(&self) -> usize {
        self.n()
    }

    fn classify(&self, s: Subset) -> bool {
        self.is_short_unchecked(s)
    }
}

/// `is_short(S) xor is_short(complement S)` and downward closure under `<=`,
/// checked over the whole power set.
pub fn is_consistent<O: ShortnessOracle>(oracle: &O) -> bool {
    let n = oracle.ground_size();
    (0..1u32 << n).map(Subset::from_mask).all(|s| {
        let short = oracle.classify(s);
        short != oracle.classify(s.complement(n))
            && (!short || s.lower_covers().iter().all(|c| oracle.classify(*c)))
    })
}
