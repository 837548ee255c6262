//! Zero-divisor products in `H^* ⊗ H^*`, their pairing against `φ ⊗ ψ`, and
//! the search for products certifying `TC >= 2n - 6`.
//!
//! A product `Π v̄^{e_v}` with `v̄ = v⊗1 + 1⊗v` is expanded one generator at a
//! time. For `V_i` with exponent `e` the split `j` left, `e - j` right carries
//! `C(e, j)`, and only whether each side got a positive share matters for the
//! supports. So each `V_i` is left-only, right-only, or both, and the number of
//! terms landing in a given pair of supports is a coefficient of a product of
//! small GF(2) polynomials in the left degree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cohomology::{CohomologyPresentation, DualityFunctional, Monomial, PsiSpace};
use crate::combinatorics::{realize, CodeJson, GeneticCode, LengthVector, Subset};
use crate::error::{Error, Result};
use crate::gf2::{binomial_parity, Gf2Vector};

/// Pairing evaluations allowed per code before the search gives up.
pub const DEFAULT_BUDGET: u64 = 1_000_000;
/// Largest number of distinct `V` generators in the fallback search.
pub const MAX_SEARCH_SUPPORT: usize = 4;

/// Exponents of `R̄` and of the `V̄_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ProductSpec {
    pub r: usize,
    pub v: BTreeMap<usize, usize>,
}

impl ProductSpec {
    pub fn new(r: usize, v: &[(usize, usize)]) -> Self {
        let mut map = BTreeMap::new();
        for &(i, e) in v {
            if e > 0 {
                *map.entry(i).or_insert(0) += e;
            }
        }
        ProductSpec { r, v: map }
    }

    pub fn degree(&self) -> usize {
        self.r + self.v.values().sum::<usize>()
    }

    pub fn to_json(&self) -> ProductJson {
        ProductJson {
            r: self.r,
            v: self.v.clone(),
        }
    }

    pub fn from_json(j: &ProductJson) -> Result<Self> {
        if j.v
            .keys()
            .any(|&i| i == 0 || i > crate::combinatorics::MAX_N)
        {
            return Err(Error::Malformed("V index out of range".into()));
        }
        Ok(ProductSpec {
            r: j.r,
            v: j.v
                .iter()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| (*i, *e))
                .collect(),
        })
    }
}

impl fmt::Display for ProductSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .v
            .iter()
            .map(|(i, e)| {
                if *e == 1 {
                    format!("V{i}")
                } else {
                    format!("V{i}^{e}")
                }
            })
            .collect();
        if self.r > 0 {
            parts.push(if self.r == 1 {
                "R".into()
            } else {
                format!("R^{}", self.r)
            });
        }
        if parts.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&parts.join(" "))
    }
}

/// `{"R": k, "V": {"1": e1, ...}}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    #[serde(rename = "R")]
    pub r: usize,
    #[serde(rename = "V")]
    pub v: BTreeMap<usize, usize>,
}

fn clmul(a: u128, b: u128) -> u128 {
    let mut out = 0;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            out ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    out
}

/// `(1 + x)^e` over GF(2).
fn binomial_poly(e: usize) -> u128 {
    (0..=e)
        .filter(|&j| binomial_parity(e as u64, j as u64))
        .fold(0, |acc, j| acc | 1u128 << j)
}

/// Pairs `(left, right)` of spanning monomials, of degrees `left_degree` and
/// `degree - left_degree`, whose coefficient in the expansion is odd.
pub fn tensor_component(
    code: &GeneticCode,
    p: &ProductSpec,
    left_degree: usize,
) -> Result<Vec<(Monomial, Monomial)>> {
    let total = p.degree();
    if total >= 128 {
        return Err(Error::BadParameters(format!(
            "product degree {total} too large"
        )));
    }
    let m = code.m();
    if left_degree > total || left_degree > m || total - left_degree > m {
        return Ok(Vec::new());
    }
    let right_degree = total - left_degree;
    let gens: Vec<(usize, usize)> = p.v.iter().map(|(i, e)| (*i, *e)).collect();
    let mut out: HashMap<(Subset, Subset), bool> = HashMap::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        code: &GeneticCode,
        gens: &[(usize, usize)],
        k: usize,
        left: Subset,
        right: Subset,
        poly: u128,
        target: usize,
        out: &mut HashMap<(Subset, Subset), bool>,
    ) {
        if k == gens.len() {
            if poly >> target & 1 == 1 {
                *out.entry((left, right)).or_insert(false) ^= true;
            }
            return;
        }
        let (i, e) = gens[k];
        let l2 = left.with(i);
        let r2 = right.with(i);
        let l_ok = code.is_subgee(l2);
        let r_ok = code.is_subgee(r2);
        if l_ok {
            rec(
                code,
                gens,
                k + 1,
                l2,
                right,
                clmul(poly, 1u128 << e),
                target,
                out,
            );
        }
        if r_ok {
            rec(code, gens, k + 1, left, r2, poly, target, out);
        }
        if l_ok && r_ok && e >= 2 {
            let both = binomial_poly(e) & !1 & !(1u128 << e);
            if both != 0 {
                rec(code, gens, k + 1, l2, r2, clmul(poly, both), target, out);
            }
        }
    }

    rec(
        code,
        &gens,
        0,
        Subset::EMPTY,
        Subset::EMPTY,
        binomial_poly(p.r),
        left_degree,
        &mut out,
    );
    let mut terms: Vec<(Monomial, Monomial)> = out
        .into_iter()
        .filter(|(_, odd)| *odd)
        .map(|((l, r), _)| {
            (
                Monomial {
                    degree: left_degree,
                    support: l,
                },
                Monomial {
                    degree: right_degree,
                    support: r,
                },
            )
        })
        .collect();
    terms.sort();
    Ok(terms)
}

fn check_degree(code: &GeneticCode, p: &ProductSpec) -> Result<()> {
    let expected = 2 * code.m() - 1;
    if p.degree() != expected {
        return Err(Error::WrongProductDegree {
            expected,
            got: p.degree(),
        });
    }
    Ok(())
}

/// The linear form `ψ ↦ (φ ⊗ ψ)(product)` on degree `m - 1`, as a vector over
/// the degree-`(m-1)` spanning set.
pub fn pairing_row(
    pres: &CohomologyPresentation,
    phi: &DualityFunctional,
    p: &ProductSpec,
) -> Result<Gf2Vector> {
    let code = pres.code();
    check_degree(code, p)?;
    let m = pres.m();
    let basis = pres.basis(m - 1)?;
    let mut row = Gf2Vector::zeros(basis.len());
    for (l, r) in tensor_component(code, p, m)? {
        if phi.value(l.support) {
            let j = pres
                .column(m - 1, r.support)?
                .expect("right support is a subgee");
            row.flip(j);
        }
    }
    Ok(row)
}

/// `(φ ⊗ ψ)` applied to the bidegree-`(m, m-1)` component of the product.
pub fn pair(
    pres: &CohomologyPresentation,
    phi: &DualityFunctional,
    psi: &Gf2Vector,
    p: &ProductSpec,
) -> Result<bool> {
    let row = pairing_row(pres, phi, p)?;
    if psi.len() != row.len() {
        return Err(Error::DimensionMismatch {
            expected: row.len(),
            got: psi.len(),
        });
    }
    Ok(row.dot(psi))
}

/// Some admissible `ψ` with pairing 1, from the degree-`(m-1)` relations
/// augmented by the pairing row.
pub fn find_psi(
    pres: &CohomologyPresentation,
    phi: &DualityFunctional,
    p: &ProductSpec,
) -> Result<Option<Gf2Vector>> {
    let row = pairing_row(pres, phi, p)?;
    let m = pres.m();
    let mut system = pres.relations(m - 1)?.clone();
    let mut target = Gf2Vector::zeros(system.rows() + 1);
    target.set(system.rows(), true);
    system.push_row(row)?;
    system.solve(&target)
}

/// Groups of consecutive indices that can be permuted without changing the
/// subgee set, restricted to indices `i` with `V_i != 0`.
pub fn interchangeable_classes(code: &GeneticCode) -> Vec<Vec<usize>> {
    let n = code.n();
    let live: Vec<usize> = (1..n)
        .filter(|&i| code.is_subgee(Subset::singleton(i)))
        .collect();
    let swaps = |i: usize| {
        code.subgees().iter().all(|s| {
            let (a, b) = (s.contains(i), s.contains(i + 1));
            let t = if a != b {
                s.without(i).without(i + 1).with(if a { i + 1 } else { i })
            } else {
                *s
            };
            code.is_subgee(t)
        })
    };
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &i in &live {
        match classes.last_mut() {
            Some(c) if *c.last().unwrap() == i - 1 && swaps(i - 1) => c.push(i),
            _ => classes.push(vec![i]),
        }
    }
    classes
}

fn is_pow2(x: i64) -> bool {
    x > 0 && x & (x - 1) == 0
}

/// Exponent patterns `(tag, slot exponents, R exponent)` of the standard product
/// families for manifold dimension `m`. Slots are later filled with distinct
/// `V` indices.
pub fn family_patterns(m: usize) -> Vec<(String, Vec<usize>, usize)> {
    let m = m as i64;
    let mut out: Vec<(String, Vec<i64>, i64)> = Vec::new();
    let top = (0..).map(|e| 1i64 << e).find(|&p| p >= m).unwrap();

    out.push(("single".into(), vec![m], m - 1));
    for t in 2..=4 {
        let mut e = vec![m + 1 - t];
        e.extend(std::iter::repeat_n(1, t as usize - 1));
        out.push((format!("spread{t}"), e, m - 1));
    }
    out.push(("pair-a".into(), vec![2 * m - 1 - top, 1], top - 1));
    out.push(("pair-b".into(), vec![m - 1, 2], m - 2));
    out.push(("pair-c".into(), vec![m, m - 1], 0));
    out.push(("triple-n1".into(), vec![m - 1, 2, 1], m - 3));
    out.push(("triple-n2".into(), vec![m, 2, 1], m - 4));
    // m = 2^e + m' for the two largest powers 2^e below m
    let mut low = top / 2;
    for _ in 0..2 {
        if low >= 1 {
            let mp = m - low;
            for (k, alpha) in [(1, 2 * mp - 3), (2, 2 * mp - 2), (3, 2 * mp - 1)] {
                out.push((format!("triple-{k}"), vec![alpha, 2, 1], 2 * m - 4 - alpha));
            }
            out.push((
                "triple-4".into(),
                vec![2 * mp - 1, 1, 1],
                2 * m - 2 - 2 * mp,
            ));
        }
        low /= 2;
    }
    if is_pow2(m) {
        for eps in 1..=3 {
            out.push((format!("triple-5.{eps}"), vec![m - eps, 2, 1], m + eps - 4));
        }
        out.push(("triple-6".into(), vec![m - 1, 1, 1], m - 2));
        out.push(("pair-top".into(), vec![m, 1], m - 2));
    }
    if is_pow2(m - 1) {
        for eps in [1, -1] {
            out.push((
                format!("triple-7.{eps}"),
                vec![m - 1 + eps, 2, 1],
                m - 2 - eps,
            ));
        }
    }
    let eps = if is_pow2(m - 2) { 1 } else { 2 };
    out.push(("triple-odd".into(), vec![m - eps, 2, 3], m - 6 + eps));
    out.push(("triple-even".into(), vec![2, 2, m - eps], m - 5 + eps));
    out.push(("pair-cube".into(), vec![2, 3], 2 * m - 6));

    let mut seen = std::collections::HashSet::new();
    out.into_iter()
        .filter(|(_, e, r)| {
            *r >= 0 && e.iter().all(|x| *x >= 1) && e.iter().sum::<i64>() + r == 2 * m - 1
        })
        .filter(|(_, e, r)| seen.insert((e.clone(), *r)))
        .map(|(t, e, r)| (t, e.into_iter().map(|x| x as usize).collect(), r as usize))
        .collect()
}

/// Why `certify` declined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AbstainReason {
    /// `⟨{n}⟩`, the real projective space.
    Projective,
    /// `⟨{n, n-3, ..., 1}⟩`, the torus.
    Torus,
    /// Every product in the search space failed.
    Exhausted,
    /// The evaluation budget ran out first.
    Budget,
}

impl fmt::Display for AbstainReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AbstainReason::Projective => "projective",
            AbstainReason::Torus => "torus",
            AbstainReason::Exhausted => "exhausted",
            AbstainReason::Budget => "budget",
        })
    }
}

/// A product of `2m - 1` zero-divisors with an admissible `ψ` pairing to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub code: GeneticCode,
    pub lengths: LengthVector,
    pub product: ProductSpec,
    pub psi: Vec<Subset>,
    pub family: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Certified(Box<Certificate>),
    Abstain(AbstainReason),
}

/// Search settings.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub budget: u64,
    pub max_support: usize,
    pub general: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            budget: DEFAULT_BUDGET,
            max_support: MAX_SEARCH_SUPPORT,
            general: true,
        }
    }
}

/// Candidate products in search order: the family patterns over injective
/// slot assignments, then the bounded general search.
pub fn candidate_products(code: &GeneticCode, limits: &SearchLimits) -> Vec<(String, ProductSpec)> {
    let m = code.m();
    let classes = interchangeable_classes(code);
    let reps: Vec<usize> = classes
        .iter()
        .flat_map(|c| c.iter().take(3).copied())
        .collect();
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (tag, exps, r) in family_patterns(m) {
        let mut slots = Vec::new();
        assign(&reps, exps.len(), &mut slots, &mut |choice: &[usize]| {
            let spec = ProductSpec::new(
                r,
                &choice
                    .iter()
                    .copied()
                    .zip(exps.iter().copied())
                    .collect::<Vec<_>>(),
            );
            if seen.insert(spec.clone()) {
                out.push((tag.clone(), spec));
            }
        });
    }
    if limits.general {
        let total = 2 * m - 1;
        for k in 1..=limits.max_support.min(reps.len()) {
            for support in class_supports(&classes, k) {
                let mut exps = vec![0; k];
                general_exponents(
                    &classes,
                    &support,
                    0,
                    total,
                    &mut exps,
                    &mut |e: &[usize]| {
                        let vdeg: usize = e.iter().sum();
                        let spec = ProductSpec::new(
                            total - vdeg,
                            &support
                                .iter()
                                .copied()
                                .zip(e.iter().copied())
                                .collect::<Vec<_>>(),
                        );
                        if seen.insert(spec.clone()) {
                            out.push(("search".to_string(), spec));
                        }
                    },
                );
            }
        }
    }
    out
}

fn assign(reps: &[usize], k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for &x in reps {
        if !cur.contains(&x) {
            cur.push(x);
            assign(reps, k, cur, f);
            cur.pop();
        }
    }
}

/// Supports of size `k` using the first elements of each class, in increasing
/// element order.
fn class_supports(classes: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(
        classes: &[Vec<usize>],
        ci: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if ci == classes.len() {
            return;
        }
        for take in (0..=left.min(classes[ci].len())).rev() {
            cur.extend(&classes[ci][..take]);
            rec(classes, ci + 1, left - take, cur, out);
            cur.truncate(cur.len() - take);
        }
    }
    rec(classes, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Exponent vectors `>= 1` with sum `<= total`, nonincreasing within a class.
fn general_exponents(
    classes: &[Vec<usize>],
    support: &[usize],
    pos: usize,
    left: usize,
    cur: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if pos == support.len() {
        f(cur);
        return;
    }
    let remaining_slots = support.len() - pos - 1;
    let same_class_as_prev = pos > 0
        && classes
            .iter()
            .any(|c| c.contains(&support[pos]) && c.contains(&support[pos - 1]));
    let cap = if same_class_as_prev {
        cur[pos - 1]
    } else {
        usize::MAX
    };
    let hi = left.saturating_sub(remaining_slots).min(cap);
    for e in (1..=hi).rev() {
        cur[pos] = e;
        general_exponents(classes, support, pos + 1, left - e, cur, f);
    }
}

/// Searches for a certificate. `lengths` defaults to a realization of `code`.
pub fn certify_with(
    code: &GeneticCode,
    lengths: Option<LengthVector>,
    limits: &SearchLimits,
) -> Result<Outcome> {
    if code.m() < 2 {
        return Err(Error::UnsupportedN {
            n: code.n(),
            min: 5,
            max: crate::combinatorics::MAX_N,
        });
    }
    if code.is_projective() {
        return Ok(Outcome::Abstain(AbstainReason::Projective));
    }
    if code.is_torus() {
        return Ok(Outcome::Abstain(AbstainReason::Torus));
    }
    let lengths = match lengths {
        Some(l) => l,
        None => {
            realize(code)?.ok_or_else(|| Error::BadCode(format!("{code} is not realizable")))?
        }
    };
    if GeneticCode::of_lengths(&lengths)? != *code {
        return Err(Error::BadCode(format!(
            "lengths {lengths} do not realize {code}"
        )));
    }
    let pres = CohomologyPresentation::new(code)?;
    let phi = pres.duality_functional()?;
    let space = pres.psi_space()?;
    for (spent, (family, product)) in (0u64..).zip(candidate_products(code, limits)) {
        if spent >= limits.budget {
            return Ok(Outcome::Abstain(AbstainReason::Budget));
        }
        let row = pairing_row(&pres, &phi, &product)?;
        if space.vectors.iter().all(|v| !row.dot(v)) {
            continue;
        }
        let psi = find_psi(&pres, &phi, &product)?.expect("row is independent of the relations");
        let basis = pres.basis(pres.m() - 1)?;
        let psi = psi.ones().map(|j| basis[j]).collect();
        return Ok(Outcome::Certified(Box::new(Certificate {
            code: code.clone(),
            lengths,
            product,
            psi,
            family,
        })));
    }
    Ok(Outcome::Abstain(AbstainReason::Exhausted))
}

pub fn certify(code: &GeneticCode) -> Result<Outcome> {
    certify_with(code, None, &SearchLimits::default())
}

/// How a lower bound was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMethod {
    Certificate,
    Torus,
    Projective,
    Abstain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub lower: Option<usize>,
    pub upper: usize,
    pub method: BoundMethod,
}

impl BoundsReport {
    pub fn from_outcome(code: &GeneticCode, outcome: &Outcome) -> Self {
        let n = code.n();
        let upper = 2 * n - 5;
        match outcome {
            Outcome::Certified(_) => BoundsReport {
                lower: Some(2 * n - 6),
                upper,
                method: BoundMethod::Certificate,
            },
            Outcome::Abstain(AbstainReason::Torus) => BoundsReport {
                lower: Some(n - 2),
                upper,
                method: BoundMethod::Torus,
            },
            Outcome::Abstain(AbstainReason::Projective) => BoundsReport {
                lower: None,
                upper,
                method: BoundMethod::Projective,
            },
            Outcome::Abstain(_) => BoundsReport {
                lower: None,
                upper,
                method: BoundMethod::Abstain,
            },
        }
    }
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.method, self.lower) {
            (BoundMethod::Torus, Some(l)) => write!(f, "torus: TC = n-2 = {l}"),
            (BoundMethod::Certificate, Some(l)) => write!(f, "TC >= {l} (upper {})", self.upper),
            (BoundMethod::Projective, _) => {
                write!(f, "projective space: no bound (upper {})", self.upper)
            }
            _ => write!(f, "no certificate found (upper {})", self.upper),
        }
    }
}

pub fn bounds_report(code: &GeneticCode) -> Result<BoundsReport> {
    Ok(BoundsReport::from_outcome(code, &certify(code)?))
}

/// Serialized form of a [`Certificate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub code: CodeJson,
    pub lengths: Vec<u64>,
    pub product: ProductJson,
    pub psi: Vec<String>,
    pub claim: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<String>,
}

pub const CLAIM: &str = "TC>=2n-6";

impl Certificate {
    pub fn to_json(&self) -> Result<CertificateJson> {
        let lengths = self
            .lengths
            .integer_lengths()
            .iter()
            .map(|x| {
                u64::try_from(x).map_err(|_| Error::Malformed(format!("length {x} too large")))
            })
            .collect::<Result<_>>()?;
        Ok(CertificateJson {
            code: self.code.to_json(),
            lengths,
            product: self.product.to_json(),
            psi: self.psi.iter().map(|s| s.key()).collect(),
            claim: CLAIM.to_string(),
            family: Some(self.family.clone()),
            manifest: None,
        })
    }

    pub fn from_json(j: &CertificateJson) -> Result<Self> {
        if j.claim != CLAIM {
            return Err(Error::Malformed(format!("unknown claim {:?}", j.claim)));
        }
        let psi = j
            .psi
            .iter()
            .map(|k| Subset::parse_key(k).ok_or_else(|| Error::Malformed(format!("psi key {k:?}"))))
            .collect::<Result<_>>()?;
        Ok(Certificate {
            code: GeneticCode::from_json(&j.code)?,
            lengths: LengthVector::from_integers(&j.lengths)?,
            product: ProductSpec::from_json(&j.product)?,
            psi,
            family: j.family.clone().unwrap_or_default(),
        })
    }

    /// The lower bound this certificate proves.
    pub fn bound(&self) -> usize {
        2 * self.code.n() - 6
    }

    /// Rechecks everything from scratch: the lengths realize the code, the
    /// product has degree `2m - 1`, `ψ` kills every degree-`(m-1)` relation,
    /// and the pairing is 1.
    pub fn verify(&self) -> Result<()> {
        let code = GeneticCode::of_lengths(&self.lengths)?;
        if code != self.code {
            return Err(Error::Verification(format!(
                "lengths realize {code}, not {}",
                self.code
            )));
        }
        if code.m() < 2 {
            return Err(Error::Verification("m < 2".into()));
        }
        check_degree(&code, &self.product).map_err(|e| Error::Verification(e.to_string()))?;
        let pres = CohomologyPresentation::new(&code)?;
        let phi = pres.duality_functional()?;
        let space: PsiSpace = pres.psi_space()?;
        let psi = space.functional(&self.psi)?;
        if !space.contains(&psi) {
            return Err(Error::Verification(
                "psi does not vanish on the relations".into(),
            ));
        }
        if !pair(&pres, &phi, &psi, &self.product)? {
            return Err(Error::Verification("pairing is 0".into()));
        }
        Ok(())
    }
}

/// Every bidegree component of the expansion, by multiplying out all
/// `2^degree` splittings one factor at a time.
pub fn brute_force_component(
    code: &GeneticCode,
    p: &ProductSpec,
    left_degree: usize,
) -> Vec<(Monomial, Monomial)> {
    let mut factors: Vec<usize> = vec![0; p.r];
    for (i, e) in &p.v {
        factors.extend(std::iter::repeat_n(*i, *e));
    }
    let mut acc: HashMap<(Monomial, Monomial), bool> = HashMap::new();
    for mask in 0u64..1 << factors.len() {
        if mask.count_ones() as usize != left_degree {
            continue;
        }
        let mut le: BTreeMap<usize, usize> = BTreeMap::new();
        let mut re: BTreeMap<usize, usize> = BTreeMap::new();
        let (mut lr, mut rr) = (0, 0);
        for (k, &g) in factors.iter().enumerate() {
            let left = mask >> k & 1 == 1;
            match (g, left) {
                (0, true) => lr += 1,
                (0, false) => rr += 1,
                (_, true) => *le.entry(g).or_insert(0) += 1,
                (_, false) => *re.entry(g).or_insert(0) += 1,
            }
        }
        let lv: Vec<(usize, usize)> = le.into_iter().collect();
        let rv: Vec<(usize, usize)> = re.into_iter().collect();
        if let (Some(l), Some(r)) = (
            crate::cohomology::normal_form(code, &lv, lr),
            crate::cohomology::normal_form(code, &rv, rr),
        ) {
            *acc.entry((l, r)).or_insert(false) ^= true;
        }
    }
    let mut out: Vec<_> = acc
        .into_iter()
        .filter(|(_, b)| *b)
        .map(|(k, _)| k)
        .collect();
    out.sort();
    out
}

/// Certificate search over many codes, results in input order.
pub fn certify_all(
    codes: &[(GeneticCode, Option<LengthVector>)],
    limits: &SearchLimits,
) -> Vec<Result<Outcome>> {
    use rayon::prelude::*;
    codes
        .par_iter()
        .map(|(c, l)| certify_with(c, l.clone(), limits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_codes;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn code(s: &str) -> GeneticCode {
        s.parse().unwrap()
    }

    fn set(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    fn random_product(rng: &mut ChaCha8Rng, n: usize, degree: usize) -> ProductSpec {
        let mut v = Vec::new();
        let mut left = degree;
        let k = rng.gen_range(0..=3.min(n - 1));
        for _ in 0..k {
            if left == 0 {
                break;
            }
            let e = rng.gen_range(1..=left);
            v.push((rng.gen_range(1..n), e));
            left -= e;
        }
        ProductSpec::new(left, &v)
    }

    #[test]
    fn engine_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [5, 6] {
            for rc in enumerate_codes(n).unwrap().codes {
                let m = rc.code.m();
                for _ in 0..20 {
                    let p = random_product(&mut rng, n, 2 * m - 1);
                    for left in [m - 1, m] {
                        assert_eq!(
                            tensor_component(&rc.code, &p, left).unwrap(),
                            brute_force_component(&rc.code, &p, left),
                            "{} {p} left {left}",
                            rc.code
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn swap_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for rc in enumerate_codes(6).unwrap().codes {
            let m = rc.code.m();
            for _ in 0..10 {
                let p = random_product(&mut rng, 6, 2 * m - 1);
                let a = tensor_component(&rc.code, &p, m).unwrap();
                let mut b: Vec<_> = tensor_component(&rc.code, &p, m - 1)
                    .unwrap()
                    .into_iter()
                    .map(|(l, r)| (r, l))
                    .collect();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn pure_r_product() {
        for n in 5..=9 {
            let c = GeneticCode::from_gees(n, &[set(&[1])]).unwrap();
            let m = c.m();
            let p = ProductSpec::new(2 * m - 1, &[]);
            let terms = tensor_component(&c, &p, m).unwrap();
            let odd = binomial_parity((2 * m - 1) as u64, m as u64);
            assert_eq!(terms.len(), usize::from(odd));
        }
    }

    #[test]
    fn single_gee_expansion() {
        // ⟨{n,a}⟩ with V̄_1^m R̄^{m-1}: (C(2m-1,m)+1) R^{m-1}V_1⊗R^{m-2}V_1 + R^{m-1}V_1⊗R^{m-1}.
        for n in 5..=10 {
            let c = GeneticCode::from_gees(n, &[set(&[2])]).unwrap();
            let m = c.m();
            let p = ProductSpec::new(m - 1, &[(1, m)]);
            let terms = tensor_component(&c, &p, m).unwrap();
            let v1 = set(&[1]);
            let mut expected = vec![(
                Monomial {
                    degree: m,
                    support: v1,
                },
                Monomial {
                    degree: m - 1,
                    support: Subset::EMPTY,
                },
            )];
            if !binomial_parity((2 * m - 1) as u64, m as u64) {
                expected.push((
                    Monomial {
                        degree: m,
                        support: v1,
                    },
                    Monomial {
                        degree: m - 1,
                        support: v1,
                    },
                ));
            }
            expected.sort();
            assert_eq!(terms, expected, "n={n}");
        }
    }

    #[test]
    fn pairing_is_linear_and_kills_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for rc in enumerate_codes(7).unwrap().codes.iter().step_by(7) {
            let pres = CohomologyPresentation::new(&rc.code).unwrap();
            let phi = pres.duality_functional().unwrap();
            let m = pres.m();
            let k = pres.basis(m - 1).unwrap().len();
            let rand_vec = |rng: &mut ChaCha8Rng| {
                Gf2Vector::from_bools(&(0..k).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>())
            };
            for _ in 0..5 {
                let p = random_product(&mut rng, 7, 2 * m - 1);
                let (x, y) = (rand_vec(&mut rng), rand_vec(&mut rng));
                let mut s = x.clone();
                s.xor_assign(&y);
                let px = pair(&pres, &phi, &x, &p).unwrap();
                let py = pair(&pres, &phi, &y, &p).unwrap();
                assert_eq!(pair(&pres, &phi, &s, &p).unwrap(), px ^ py);
                // shifting the form by a relation changes nothing on admissible ψ
                let row = pairing_row(&pres, &phi, &p).unwrap();
                let space = pres.psi_space().unwrap();
                for rel in pres.relations(m - 1).unwrap().row_iter() {
                    let mut shifted = row.clone();
                    shifted.xor_assign(rel);
                    for v in &space.vectors {
                        assert_eq!(shifted.dot(v), row.dot(v));
                    }
                }
            }
        }
    }

    #[test]
    fn wrong_degree_rejected() {
        let c = code("765");
        let pres = CohomologyPresentation::new(&c).unwrap();
        let phi = pres.duality_functional().unwrap();
        assert!(matches!(
            find_psi(&pres, &phi, &ProductSpec::default()),
            Err(Error::WrongProductDegree { .. })
        ));
    }

    #[test]
    fn single_gene_size_two_certified_by_first_family() {
        for a in 1..=5 {
            let c = GeneticCode::from_gees(6, &[set(&[a])]).unwrap();
            let Outcome::Certified(cert) = certify(&c).unwrap() else {
                panic!("{c}")
            };
            assert_eq!(cert.product, ProductSpec::new(2, &[(1, 3)]), "{c}");
            cert.verify().unwrap();
        }
    }

    #[test]
    fn abstain_rules() {
        assert_eq!(
            certify(&code("7")).unwrap(),
            Outcome::Abstain(AbstainReason::Projective)
        );
        assert_eq!(
            certify(&code("521")).unwrap(),
            Outcome::Abstain(AbstainReason::Torus)
        );
        assert_eq!(
            certify(&code("6321")).unwrap(),
            Outcome::Abstain(AbstainReason::Torus)
        );
        let r = bounds_report(&code("74321")).unwrap();
        assert_eq!(
            (r.lower, r.upper, r.method),
            (Some(5), 9, BoundMethod::Torus)
        );
        let r = bounds_report(&code("765")).unwrap();
        assert_eq!(
            (r.lower, r.upper, r.method),
            (Some(8), 9, BoundMethod::Certificate)
        );
        let r = bounds_report(&code("7")).unwrap();
        assert_eq!((r.lower, r.method), (None, BoundMethod::Projective));
    }

    #[test]
    fn certificate_round_trip_and_tamper() {
        let Outcome::Certified(cert) = certify(&code("7321,742")).unwrap() else {
            panic!()
        };
        cert.verify().unwrap();
        let j = cert.to_json().unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back = Certificate::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, *cert);
        assert_eq!(
            serde_json::to_string(&back.to_json().unwrap()).unwrap(),
            text
        );
        let mut bad = cert.clone();
        bad.psi.clear();
        assert!(bad.verify().is_err());
        let mut bad = cert.clone();
        bad.product.r += 1;
        assert!(bad.verify().is_err());
    }

    #[test]
    fn classes_of_simple_codes() {
        assert_eq!(
            interchangeable_classes(&code("765")),
            vec![vec![1, 2, 3, 4, 5, 6]]
        );
        assert_eq!(
            interchangeable_classes(&GeneticCode::from_gees(9, &[set(&[5, 2])]).unwrap()),
            vec![vec![1, 2], vec![3, 4, 5]]
        );
    }
}
