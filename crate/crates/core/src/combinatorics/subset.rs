use std::cmp::Ordering;
use std::fmt;

/// Largest ground set supported by the bitmask representation.
pub const MAX_N: usize = 32;

/// A subset of `[n] = {1, ..., n}`. Element `i` is stored in bit `i - 1`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// Panics if an element is 0 or exceeds [`MAX_N`].
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut mask = 0u32;
        for e in elements {
            assert!((1..=MAX_N).contains(&e), "subset element {e} out of range");
            mask |= 1 << (e - 1);
        }
        Subset(mask)
    }

    /// The full ground set `[n]`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_N);
        if n == MAX_N {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        Self::from_elements([e])
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_N).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Self {
        Subset(self.0 | Self::singleton(e).0)
    }

    pub fn without(self, e: usize) -> Self {
        Subset(self.0 & !Self::singleton(e).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Complement inside `[n]`.
    pub fn complement(self, n: usize) -> Self {
        Subset(Self::full(n).0 & !self.0)
    }

    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// True when every element lies in `[n]`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset_of(Self::full(n))
    }

    /// Elements in increasing order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn elements_desc(self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().collect();
        v.reverse();
        v
    }

    /// Dominance order: `self <= other` iff for every threshold `x`,
    /// `|self ∩ [x, n]| <= |other ∩ [x, n]|`.
    pub fn leq(self, other: Self) -> bool {
        let mut s = self.0;
        let mut t = other.0;
        // Walk thresholds from the top; only thresholds at elements of `self` can fail.
        let mut excess: i32 = 0;
        for bit in (0..32).rev() {
            excess += ((t >> bit) & 1) as i32 - ((s >> bit) & 1) as i32;
            if excess < 0 {
                return false;
            }
            s &= !(1 << bit);
            t &= !(1 << bit);
            if s == 0 {
                return true;
            }
        }
        true
    }

    /// Immediate predecessors in the dominance order: drop element 1, or move
    /// some element `i` down to a vacant `i - 1`.
    pub fn lower_covers(self) -> Vec<Subset> {
        let mut out = Vec::new();
        if self.0 & 1 != 0 {
            out.push(Subset(self.0 & !1));
        }
        for i in 1..32 {
            let bit = 1u32 << i;
            if self.0 & bit != 0 && self.0 & (bit >> 1) == 0 {
                out.push(Subset((self.0 & !bit) | (bit >> 1)));
            }
        }
        out
    }

    /// Immediate successors inside `[n]`: add element 1, or move some element
    /// `i < n` up to a vacant `i + 1`.
    pub fn upper_covers(self, n: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        if self.0 & 1 == 0 && n >= 1 {
            out.push(Subset(self.0 | 1));
        }
        for i in 0..n.saturating_sub(1) {
            let bit = 1u32 << i;
            if self.0 & bit != 0 && self.0 & (bit << 1) == 0 {
                out.push(Subset((self.0 & !bit) | (bit << 1)));
            }
        }
        out
    }

    /// Order used for monomial columns: lexicographic on the increasing
    /// element sequence, so `{} < {1} < {1,2} < {1,3} < {2}`.
    pub fn canonical_cmp(self, other: Self) -> Ordering {
        self.elements().cmp(other.elements())
    }

    /// Concatenated digits, largest first (`{7,5,2,1}` -> `"7521"`), when all
    /// elements are single digits.
    pub fn digits(self) -> Option<String> {
        if self.max().is_some_and(|m| m > 9) {
            return None;
        }
        Some(
            self.elements_desc()
                .iter()
                .map(|e| char::from(b'0' + *e as u8))
                .collect(),
        )
    }

    /// Comma-separated increasing elements, `"0"` for the empty set.
    pub fn key(self) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        self.elements()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_key(key: &str) -> Option<Subset> {
        let key = key.trim();
        if key == "0" || key.is_empty() {
            return Some(Subset::EMPTY);
        }
        let mut s = Subset::EMPTY;
        for part in key.split(',') {
            let e: usize = part.trim().parse().ok()?;
            if !(1..=MAX_N).contains(&e) || s.contains(e) {
                return None;
            }
            s = s.with(e);
        }
        Some(s)
    }
}

#[derive(Clone)]
pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as usize + 1)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements_desc().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
