use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{LengthVector, Subset, MAX_N};
use crate::error::{Error, Result};

/// The antichain of genes of a generic length vector, with its derived gees
/// (genes minus `n`) and the down-set of subgees.
#[derive(Clone, Debug)]
pub struct GeneticCode {
    n: usize,
    genes: Vec<Subset>,
    gees: Vec<Subset>,
    subgees: Vec<Subset>,
    subgee_set: HashSet<Subset>,
}

impl PartialEq for GeneticCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.genes == other.genes
    }
}

impl Eq for GeneticCode {}

impl PartialOrd for GeneticCode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GeneticCode {
    /// Canonical order: `n`, then lexicographic on the sorted gene lists.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.gene_lists().cmp(&other.gene_lists()))
    }
}

impl std::hash::Hash for GeneticCode {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.genes.hash(state);
    }
}

/// Result of checking a candidate code for consistency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validation {
    Ok,
    /// A subset the candidate forces to be both short and long.
    Conflict(Subset),
}

fn gene_key(g: Subset) -> Vec<usize> {
    g.elements_desc()
}

/// Every `T` with `T <= g`, generated by matching elements from the top.
fn down_set_of(g: Subset, out: &mut BTreeSet<Subset>) {
    fn rec(bounds: &[usize], depth: usize, prev: usize, cur: Subset, out: &mut BTreeSet<Subset>) {
        out.insert(cur);
        if depth == bounds.len() {
            return;
        }
        let hi = bounds[depth].min(prev.saturating_sub(1));
        for x in 1..=hi {
            rec(bounds, depth + 1, x, cur.with(x), out);
        }
    }
    let bounds = g.elements_desc();
    rec(&bounds, 0, usize::MAX, Subset::EMPTY, out);
}

impl GeneticCode {
    /// Builds a code from genes (each must contain `n`); genes are put in
    /// canonical order.
    pub fn new(n: usize, genes: Vec<Subset>) -> Result<Self> {
        if !(3..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedN {
                n,
                min: 3,
                max: MAX_N,
            });
        }
        for &g in &genes {
            if !g.within(n) {
                return Err(Error::BadGene {
                    gene: g,
                    n,
                    reason: "element larger than n",
                });
            }
            if !g.contains(n) {
                return Err(Error::BadGene {
                    gene: g,
                    n,
                    reason: "gene does not contain n",
                });
            }
        }
        let mut genes = genes;
        genes.sort_by_key(|g| gene_key(*g));
        genes.dedup();
        for (i, &a) in genes.iter().enumerate() {
            for (j, &b) in genes.iter().enumerate() {
                if i != j && a.leq(b) {
                    return Err(Error::NotAntichain { lower: a, upper: b });
                }
            }
        }
        Ok(Self::from_sorted_antichain(n, genes))
    }

    /// Same as [`new`](Self::new) but starting from gees (genes without `n`).
    pub fn from_gees(n: usize, gees: &[Subset]) -> Result<Self> {
        if !(3..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedN {
                n,
                min: 3,
                max: MAX_N,
            });
        }
        Self::new(n, gees.iter().map(|g| g.with(n)).collect())
    }

    fn from_sorted_antichain(n: usize, genes: Vec<Subset>) -> Self {
        let gees: Vec<Subset> = genes.iter().map(|g| g.without(n)).collect();
        let mut down = BTreeSet::new();
        for &g in &gees {
            down_set_of(g, &mut down);
        }
        let mut subgees: Vec<Subset> = down.into_iter().collect();
        subgees.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.canonical_cmp(*b)));
        let subgee_set = subgees.iter().copied().collect();
        GeneticCode {
            n,
            genes,
            gees,
            subgees,
            subgee_set,
        }
    }

    /// Maximal short subsets containing `n` of a generic, nonempty length vector.
    pub fn of_lengths(lengths: &LengthVector) -> Result<Self> {
        if let Some(w) = lengths.nongeneric_witness() {
            return Err(Error::NonGeneric { witness: w });
        }
        if !lengths.is_nonempty() {
            return Err(Error::EmptySpace);
        }
        let n = lengths.n();
        let top = Subset::singleton(n);
        let mut genes = Vec::new();
        for mask in 0..1u32 << (n - 1) {
            let s = Subset::from_mask(mask).union(top);
            if !lengths.is_short_unchecked(s) {
                continue;
            }
            // Upper covers of a set containing n keep n; maximal iff none is short.
            if s.upper_covers(n)
                .iter()
                .all(|u| !lengths.is_short_unchecked(*u))
            {
                genes.push(s);
            }
        }
        genes.sort_by_key(|g| gene_key(*g));
        Ok(Self::from_sorted_antichain(n, genes))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Manifold dimension `n - 3`.
    pub fn m(&self) -> usize {
        self.n - 3
    }

    pub fn genes(&self) -> &[Subset] {
        &self.genes
    }

    pub fn gees(&self) -> &[Subset] {
        &self.gees
    }

    /// Subgees ordered by size, then canonically.
    pub fn subgees(&self) -> &[Subset] {
        &self.subgees
    }

    pub fn is_subgee(&self, s: Subset) -> bool {
        self.subgee_set.contains(&s)
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }

    /// `⟨{n}⟩`, whose space is `RP^{n-3}`.
    pub fn is_projective(&self) -> bool {
        self.genes.len() == 1 && self.gees[0].is_empty()
    }

    /// `⟨{n, n-3, n-4, ..., 1}⟩`, whose space is the torus `(S^1)^{n-3}`.
    pub fn is_torus(&self) -> bool {
        self.n >= 4 && self.gees.len() == 1 && self.gees[0] == Subset::full(self.n - 3)
    }

    pub fn torus(n: usize) -> Result<Self> {
        Self::from_gees(n, &[Subset::full(n - 3)])
    }

    pub fn gene_lists(&self) -> Vec<Vec<usize>> {
        self.genes.iter().map(|g| gene_key(*g)).collect()
    }

    /// Classification induced by the code: a set containing `n` is short iff it
    /// minus `n` is a subgee; any other set is short iff its complement is long.
    pub fn is_short(&self, s: Subset) -> bool {
        if s.contains(self.n) {
            self.is_subgee(s.without(self.n))
        } else {
            !self.is_short(s.complement(self.n))
        }
    }

    /// Checks that the induced short/long classification is monotone. The only
    /// possible failure is a `T ⊆ [n-1]` lying below some gene while its
    /// complement, with `n` added, is short as well. Among all such `T` the one
    /// with fewest elements, then smallest descending digit string, is reported.
    pub fn validate(&self) -> Validation {
        let n = self.n;
        let ground = Subset::full(n - 1);
        if self.is_empty() {
            return Validation::Ok;
        }
        // T = ∅ lies below every gene; its complement is all of [n-1].
        if self.is_subgee(ground) {
            return Validation::Conflict(Subset::EMPTY);
        }
        // T <= G ∪ {n} iff T minus its largest element is a subgee.
        let mut witnesses: Vec<Subset> = Vec::new();
        for &a in &self.subgees {
            let lo = a.max().unwrap_or(0) + 1;
            for t in lo..n {
                let cand = a.with(t);
                if self.is_subgee(ground.intersection(cand.complement(n - 1))) {
                    witnesses.push(cand);
                }
            }
        }
        witnesses
            .into_iter()
            .min_by(|x, y| {
                x.len()
                    .cmp(&y.len())
                    .then_with(|| gene_key(*x).cmp(&gene_key(*y)))
            })
            .map_or(Validation::Ok, Validation::Conflict)
    }

    /// Comma-separated digit genes, e.g. `7521,762`. `None` when `n > 9`.
    pub fn digits(&self) -> Option<String> {
        if self.n > 9 {
            return None;
        }
        Some(
            self.genes
                .iter()
                .map(|g| g.digits().unwrap())
                .collect::<Vec<_>>()
                .join(","),
        )
    }

    /// Text form: `<7521,762>` for `n <= 9`, JSON gene arrays otherwise.
    pub fn text(&self) -> String {
        match self.digits() {
            Some(d) => format!("<{d}>"),
            None => serde_json::to_string(&self.gene_lists()).unwrap(),
        }
    }

    /// File-name friendly form: digits joined with `_`, or `empty`.
    pub fn slug(&self) -> String {
        if self.genes.is_empty() {
            return "empty".into();
        }
        match self.digits() {
            Some(d) => d.replace(',', "_"),
            None => self
                .gene_lists()
                .iter()
                .map(|g| {
                    g.iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join("-")
                })
                .collect::<Vec<_>>()
                .join("_"),
        }
    }

    /// Parses the digit form (`765`, `7521,762`, `<7521,762>`); `n` is taken
    /// from the genes unless supplied. Genes written with a leading `n` of more
    /// than one digit must use the JSON form instead.
    pub fn parse_digits(text: &str, n: Option<usize>) -> Result<Self> {
        let body = text
            .trim()
            .trim_start_matches('<')
            .trim_end_matches('>')
            .trim();
        let mut genes = Vec::new();
        if !body.is_empty() {
            for part in body.split(',') {
                let part = part.trim();
                if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit() && b != b'0') {
                    return Err(Error::BadCode(text.to_string()));
                }
                let elems: Vec<usize> = part.bytes().map(|b| (b - b'0') as usize).collect();
                let set = Subset::from_elements(elems.iter().copied());
                if set.len() != elems.len() {
                    return Err(Error::BadCode(text.to_string()));
                }
                genes.push(set);
            }
        }
        let inferred = genes.iter().filter_map(|g| Subset::max(*g)).max();
        let n = match (n, inferred) {
            (Some(n), _) => n,
            (None, Some(i)) => i,
            (None, None) => return Err(Error::BadCode(text.to_string())),
        };
        Self::new(n, genes)
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            n: self.n,
            genes: self.gene_lists(),
        }
    }

    pub fn from_json(j: &CodeJson) -> Result<Self> {
        let mut genes = Vec::new();
        for g in &j.genes {
            if g.iter().any(|&e| e == 0 || e > MAX_N) {
                return Err(Error::Malformed(format!("gene {g:?}")));
            }
            let s = Subset::from_elements(g.iter().copied());
            if s.len() != g.len() {
                return Err(Error::Malformed(format!("repeated element in gene {g:?}")));
            }
            genes.push(s);
        }
        Self::new(j.n, genes)
    }
}

impl fmt::Display for GeneticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl FromStr for GeneticCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            let j: CodeJson = serde_json::from_str(t).map_err(|e| Error::BadCode(e.to_string()))?;
            return Self::from_json(&j);
        }
        Self::parse_digits(t, None)
    }
}

/// `{"n": 7, "genes": [[7,5,2,1],[7,6,2]]}`, genes listed largest element first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    pub genes: Vec<Vec<usize>>,
}
