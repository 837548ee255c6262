use rayon::prelude::*;

use super::{realize, GeneticCode, LengthVector, Subset, Validation};
use crate::error::{Error, Result};

pub const ENUM_MIN_N: usize = 4;
pub const ENUM_MAX_N: usize = 9;

/// Every subgee down-set on `[n-1]` whose induced classification is consistent,
/// as gee antichains. Includes the empty code.
///
/// Subsets of `[n-1]` are decided one at a time along a linear extension of the
/// dominance order. A subset may join the down-set only if all its lower covers
/// are in, and never together with a conflict partner: for nonempty `T`, the
/// sets `T \ {max T}` and `[n-1] \ T` cannot both be subgees. Leaving a subset
/// out never breaks consistency, so the search has no dead ends.
pub fn consistent_downsets(n: usize) -> Result<Vec<Vec<Subset>>> {
    if !(ENUM_MIN_N..=ENUM_MAX_N).contains(&n) {
        return Err(Error::UnsupportedN {
            n,
            min: ENUM_MIN_N,
            max: ENUM_MAX_N,
        });
    }
    let k = n - 1;
    let size = 1usize << k;
    let mut order: Vec<u32> = (0..size as u32).collect();
    order.sort_by_key(|&m| {
        (
            m.count_ones(),
            Subset::from_mask(m).elements().sum::<usize>(),
            m,
        )
    });
    let mut pos = vec![0usize; size];
    for (i, &m) in order.iter().enumerate() {
        pos[m as usize] = i;
    }
    let ground = Subset::full(k);
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); size];
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, &m) in order.iter().enumerate() {
        lower[i] = Subset::from_mask(m)
            .lower_covers()
            .iter()
            .map(|c| pos[c.mask() as usize])
            .collect();
    }
    for m in 1..size as u32 {
        let t = Subset::from_mask(m);
        let a = t.without(t.max().unwrap());
        let b = ground.intersection(t.complement(k));
        let (pa, pb) = (pos[a.mask() as usize], pos[b.mask() as usize]);
        // Register on whichever is decided later.
        if pa > pb {
            partners[pa].push(pb);
        } else {
            partners[pb].push(pa);
        }
    }
    // [n-1] itself conflicts with the empty set.
    let top = pos[ground.mask() as usize];
    partners[top].push(pos[0]);

    struct Search<'a> {
        order: &'a [u32],
        pos: &'a [usize],
        lower: &'a [Vec<usize>],
        partners: &'a [Vec<usize>],
        member: Vec<bool>,
        out: Vec<Vec<Subset>>,
    }
    impl Search<'_> {
        fn go(&mut self, i: usize) {
            if i == self.order.len() {
                self.out.push(self.maximal());
                return;
            }
            self.go(i + 1);
            let ok = self.lower[i].iter().all(|&j| self.member[j])
                && self.partners[i].iter().all(|&j| !self.member[j]);
            if ok {
                self.member[i] = true;
                self.go(i + 1);
                self.member[i] = false;
            }
        }

        fn maximal(&self) -> Vec<Subset> {
            let k = self.order.len().trailing_zeros() as usize;
            self.order
                .iter()
                .enumerate()
                .filter(|(i, _)| self.member[*i])
                .map(|(_, &m)| Subset::from_mask(m))
                .filter(|s| {
                    s.upper_covers(k)
                        .iter()
                        .all(|u| !self.member[self.pos[u.mask() as usize]])
                })
                .collect()
        }
    }

    let mut search = Search {
        order: &order,
        pos: &pos,
        lower: &lower,
        partners: &partners,
        member: vec![false; size],
        out: Vec::new(),
    };
    search.go(0);
    Ok(search.out)
}

/// A realized code with its witness lengths.
#[derive(Clone, Debug)]
pub struct RealizedCode {
    pub code: GeneticCode,
    pub lengths: LengthVector,
}

/// Outcome of a full enumeration for one `n`.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub n: usize,
    /// Realizable, nonempty codes in canonical order.
    pub codes: Vec<RealizedCode>,
    /// Consistent candidates for which no length vector exists.
    pub unrealizable: Vec<GeneticCode>,
}

/// All genetic codes of generic `n`-gons with nonempty moduli space, each
/// checked by [`GeneticCode::validate`] and realized by exact linear
/// programming. Work is spread over the current rayon pool; output order is
/// canonical regardless.
pub fn enumerate_codes(n: usize) -> Result<Enumeration> {
    let downsets = consistent_downsets(n)?;
    let candidates: Vec<GeneticCode> = downsets
        .into_iter()
        .filter(|gees| !gees.is_empty())
        .map(|gees| GeneticCode::from_gees(n, &gees))
        .collect::<Result<_>>()?;
    let results: Vec<(GeneticCode, Option<LengthVector>)> = candidates
        .into_par_iter()
        .map(|code| {
            debug_assert_eq!(code.validate(), Validation::Ok);
            let lv = realize(&code)?;
            Ok((code, lv))
        })
        .collect::<Result<_>>()?;
    let mut codes = Vec::new();
    let mut unrealizable = Vec::new();
    for (code, lv) in results {
        match lv {
            Some(lengths) => codes.push(RealizedCode { code, lengths }),
            None => unrealizable.push(code),
        }
    }
    codes.sort_by(|a, b| a.code.cmp(&b.code));
    unrealizable.sort();
    Ok(Enumeration {
        n,
        codes,
        unrealizable,
    })
}
