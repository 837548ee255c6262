//! Closed forms for `φ` on the parametric families, checked against the
//! row-reduced functional on concrete instances.

use std::fmt;

use super::{choose2, odd};
use crate::cohomology::CohomologyPresentation;
use crate::combinatorics::{GeneticCode, Subset, Validation, MAX_N};
use crate::Result;

/// A family of gees described by interval lengths. Elements of `[n-1]` get a
/// type: the index of the interval containing them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Gee `{a+b, a}`.
    TwoTerm { a: u64, b: u64 },
    /// Gee `{a+b+c, a+b, a}`.
    ThreeTerm { a: u64, b: u64, c: u64 },
    /// Gees `{a+b+c, a+b}` and `{a+b+c+d, a}`.
    TwoGenes { a: u64, b: u64, c: u64, d: u64 },
    /// Gees `{1+b+c, 1+b, 1}` and `{1+b+c+d, 1}`.
    TypeOne { b: u64, c: u64, d: u64 },
}

impl Family {
    /// Interval lengths, in order.
    pub fn intervals(&self) -> Vec<u64> {
        match *self {
            Family::TwoTerm { a, b } => vec![a, b],
            Family::ThreeTerm { a, b, c } => vec![a, b, c],
            Family::TwoGenes { a, b, c, d } => vec![a, b, c, d],
            Family::TypeOne { b, c, d } => vec![1, b, c, d],
        }
    }

    pub fn gees(&self) -> Vec<Subset> {
        let ends: Vec<usize> = self
            .intervals()
            .iter()
            .scan(0u64, |acc, x| {
                *acc += x;
                Some(*acc as usize)
            })
            .collect();
        let set = |idx: &[usize]| Subset::from_elements(idx.iter().map(|&i| ends[i]));
        match self {
            Family::TwoTerm { .. } => vec![set(&[1, 0])],
            Family::ThreeTerm { .. } => vec![set(&[2, 1, 0])],
            Family::TwoGenes { .. } => vec![set(&[2, 1]), set(&[3, 0])],
            Family::TypeOne { .. } => vec![set(&[2, 1, 0]), set(&[3, 0])],
        }
    }

    /// Largest element of any gee.
    pub fn top(&self) -> u64 {
        match *self {
            Family::TwoTerm { a, b } => a + b,
            Family::ThreeTerm { a, b, c } => a + b + c,
            Family::TwoGenes { a, b, c, d } => a + b + c + d,
            Family::TypeOne { b, c, d } => 1 + b + c + d,
        }
    }

    /// Type (1-based interval index) of an element of `[top]`.
    pub fn type_of(&self, e: usize) -> Option<u8> {
        let mut end = 0u64;
        for (t, len) in self.intervals().iter().enumerate() {
            end += len;
            if (e as u64) <= end {
                return Some(t as u8 + 1);
            }
        }
        None
    }

    /// Sorted type multiset of a subset, `None` if some element has no type.
    pub fn types(&self, s: Subset) -> Option<Vec<u8>> {
        s.elements().map(|e| self.type_of(e)).collect()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.intervals().iter().map(|x| x.to_string()).collect();
        let name = match self {
            Family::TwoTerm { .. } => "two-term",
            Family::ThreeTerm { .. } => "three-term",
            Family::TwoGenes { .. } => "two-genes",
            Family::TypeOne { .. } => "type-one",
        };
        write!(f, "{name}({})", parts.join(","))
    }
}

/// `φ(R^k V_S)` for a subgee whose elements have the given sorted types.
pub fn phi_closed_form(family: &Family, types: &[u8]) -> bool {
    match *family {
        Family::TwoTerm { a, b } => {
            let (a, b) = (a as i64, b as i64);
            match types {
                [1, 1] | [1, 2] => true,
                [2] => odd(a - 1),
                [1] => odd(a + b),
                [] => odd((a - 1) * b) ^ choose2(a - 1),
                _ => false,
            }
        }
        Family::ThreeTerm { a, b, c } => {
            let (a, b, c) = (a as i64, b as i64, c as i64);
            match types {
                [1, 1, 1] | [1, 1, 2] | [1, 1, 3] | [1, 2, 2] | [1, 2, 3] => true,
                [2, 2] | [2, 3] => odd(a - 1),
                [1, 3] => odd(a + b),
                [1, 1] | [1, 2] => odd(a + b + c - 1),
                [3] => odd((a - 1) * (b - 1)) ^ choose2(a),
                [2] => odd((a - 1) * (b + c)) ^ choose2(a),
                [1] => {
                    odd((a - 1) * (a + b + c - 1))
                        ^ choose2(a - 1)
                        ^ choose2(b)
                        ^ odd((b - 1) * (c - 1))
                }
                [] => {
                    (choose2(a) && odd(a + b + c - 1))
                        ^ (odd(a - 1) && (choose2(b) ^ odd((b - 1) * (c - 1))))
                }
                _ => false,
            }
        }
        Family::TwoGenes { a, b, c, d } => {
            let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
            match types {
                [_, _] => true,
                [4] => odd(a + 1),
                [3] => odd(a + b + 1),
                [2] => odd(a + b + c),
                [1] => odd(a + b + c + d),
                [] => choose2(a - 1) ^ choose2(b) ^ odd(b * c) ^ odd((a + 1) * (b + c + d)),
                _ => false,
            }
        }
        Family::TypeOne { b, c, d } => {
            let (b, c, d) = (b as i64, c as i64, d as i64);
            match types {
                [1, 4] | [1, 2, 2] | [1, 2, 3] => true,
                [1, 3] => odd(b + 1),
                [1, 2] => odd(b + c),
                [1] => choose2(b) ^ odd((b + 1) * (c + 1)) ^ odd(d),
                _ => false,
            }
        }
    }
}

/// The admissible `ψ` on the two-genes family: 1 on singletons, `a+b+c+d` on
/// the empty support, 0 on pairs.
pub fn two_genes_psi(family: &Family, types: &[u8]) -> bool {
    match (family, types) {
        (Family::TwoGenes { a, b, c, d }, []) => (a + b + c + d) % 2 == 1,
        (Family::TwoGenes { .. }, [_]) => true,
        _ => false,
    }
}

/// A family member at a concrete `n`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub family: Family,
    pub code: GeneticCode,
}

impl Instance {
    /// `None` unless the code is valid, `n > top` and `6 <= n <= MAX_N`.
    pub fn new(family: Family, n: usize) -> Option<Self> {
        if !(6..=MAX_N).contains(&n) || (n as u64) <= family.top() {
            return None;
        }
        let code = GeneticCode::from_gees(n, &family.gees()).ok()?;
        (code.validate() == Validation::Ok).then_some(Instance { family, code })
    }

    /// Closed form evaluated on every degree-`m` spanning support.
    pub fn predicted_phi(&self, basis: &[Subset]) -> Vec<bool> {
        basis
            .iter()
            .map(|s| {
                self.family
                    .types(*s)
                    .is_some_and(|t| phi_closed_form(&self.family, &t))
            })
            .collect()
    }
}

/// Outcome of comparing a closed form to the computed functional.
#[derive(Clone, Debug)]
pub struct FamilyCheck {
    pub family: Family,
    pub n: usize,
    /// Supports where prediction and computation disagree.
    pub mismatches: Vec<Subset>,
}

impl FamilyCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn check_instance(inst: &Instance) -> Result<FamilyCheck> {
    let pres = CohomologyPresentation::new(&inst.code)?;
    let phi = pres.duality_functional()?;
    let predicted = inst.predicted_phi(&phi.basis);
    let mismatches = phi
        .basis
        .iter()
        .enumerate()
        .filter(|(i, _)| phi.phi.get(*i) != predicted[*i])
        .map(|(_, s)| *s)
        .collect();
    Ok(FamilyCheck {
        family: inst.family,
        n: inst.code.n(),
        mismatches,
    })
}

/// Every family member with parameters in `1..=max_param`, at `n = top + 1`
/// and `n = top + 2`.
pub fn family_members(max_param: u64) -> Vec<Instance> {
    let r = 1..=max_param;
    let mut families = Vec::new();
    for a in r.clone() {
        for b in r.clone() {
            families.push(Family::TwoTerm { a, b });
            for c in r.clone() {
                families.push(Family::ThreeTerm { a, b, c });
                families.push(Family::TypeOne { b: a, c: b, d: c });
                for d in r.clone() {
                    families.push(Family::TwoGenes { a, b, c, d });
                }
            }
        }
    }
    families
        .into_iter()
        .flat_map(|f| {
            let top = f.top() as usize;
            [top + 1, top + 2]
                .into_iter()
                .filter_map(move |n| Instance::new(f, n))
        })
        .collect()
}

pub fn cross_validate_phi(max_param: u64) -> Result<Vec<FamilyCheck>> {
    use rayon::prelude::*;
    family_members(max_param)
        .par_iter()
        .map(check_instance)
        .collect()
}
