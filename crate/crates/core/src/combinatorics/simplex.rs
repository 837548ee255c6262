//! Dense two-phase simplex over exact rationals (Bland's rule). Small systems only.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// One constraint `coeffs · x >= rhs`.
#[derive(Clone, Debug)]
pub struct GeRow {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

/// Minimizes `cost · x` subject to the rows and `x >= 0`. Returns `None` if
/// infeasible. The problems handed in here are bounded below.
pub fn minimize(cost: &[BigRational], rows: &[GeRow]) -> Option<Vec<BigRational>> {
    let nvars = cost.len();
    let nrows = rows.len();
    // Columns: x (nvars) | slack per row (nrows) | artificials (as needed) | rhs.
    let mut needs_art = Vec::with_capacity(nrows);
    for r in rows {
        needs_art.push(r.rhs.is_positive());
    }
    let nart = needs_art.iter().filter(|b| **b).count();
    let width = nvars + nrows + nart;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(nrows);
    let mut basis = Vec::with_capacity(nrows);
    let mut art_col = nvars + nrows;
    for (i, r) in rows.iter().enumerate() {
        assert_eq!(r.coeffs.len(), nvars);
        let mut row = vec![BigRational::zero(); width + 1];
        if needs_art[i] {
            // a·x - s + art = b
            for (j, c) in r.coeffs.iter().enumerate() {
                row[j] = c.clone();
            }
            row[nvars + i] = -BigRational::one();
            row[art_col] = BigRational::one();
            row[width] = r.rhs.clone();
            basis.push(art_col);
            art_col += 1;
        } else {
            // -a·x + s = -b >= 0
            for (j, c) in r.coeffs.iter().enumerate() {
                row[j] = -c.clone();
            }
            row[nvars + i] = BigRational::one();
            row[width] = -r.rhs.clone();
            basis.push(nvars + i);
        }
        tab.push(row);
    }

    let first_art = nvars + nrows;
    if nart > 0 {
        let mut phase1 = vec![BigRational::zero(); width];
        for c in phase1.iter_mut().skip(first_art) {
            *c = BigRational::one();
        }
        run(&mut tab, &mut basis, &phase1, width);
        let infeasibility: BigRational = basis
            .iter()
            .zip(&tab)
            .filter(|(b, _)| **b >= first_art)
            .map(|(_, row)| row[width].clone())
            .sum();
        if infeasibility.is_positive() {
            return None;
        }
        // Drive zero-level artificials out of the basis.
        let mut i = 0;
        while i < tab.len() {
            if basis[i] >= first_art {
                if let Some(j) = (0..first_art).find(|&j| !tab[i][j].is_zero()) {
                    pivot(&mut tab, &mut basis, i, j);
                } else {
                    tab.remove(i);
                    basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    let mut phase2 = vec![BigRational::zero(); width];
    phase2[..nvars].clone_from_slice(cost);
    // Artificial columns stay out: give them prohibitive treatment by excluding them.
    run_restricted(&mut tab, &mut basis, &phase2, width, first_art);

    let mut x = vec![BigRational::zero(); nvars];
    for (row, &b) in tab.iter().zip(&basis) {
        if b < nvars {
            x[b] = row[width].clone();
        }
    }
    Some(x)
}

fn pivot(tab: &mut [Vec<BigRational>], basis: &mut [usize], r: usize, c: usize) {
    let p = tab[r][c].clone();
    for v in tab[r].iter_mut() {
        *v /= &p;
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, pv) in row.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    basis[r] = c;
}

fn run(tab: &mut [Vec<BigRational>], basis: &mut [usize], cost: &[BigRational], width: usize) {
    run_restricted(tab, basis, cost, width, width)
}

/// Simplex iterations where only columns `< allowed` may enter.
fn run_restricted(
    tab: &mut [Vec<BigRational>],
    basis: &mut [usize],
    cost: &[BigRational],
    width: usize,
    allowed: usize,
) {
    loop {
        // reduced cost of column j: c_j - Σ_i c_{basis[i]} tab[i][j]
        let entering = (0..allowed).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut rc = cost[j].clone();
            for (row, &b) in tab.iter().zip(basis.iter()) {
                if !cost[b].is_zero() && !row[j].is_zero() {
                    rc -= &cost[b] * &row[j];
                }
            }
            rc.is_negative()
        });
        let Some(c) = entering else { return };
        let mut best: Option<(usize, BigRational)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[c].is_positive() {
                let ratio = &row[width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && basis[i] < basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = best else {
            // Unbounded; callers only pass bounded problems.
            return;
        };
        pivot(tab, basis, r, c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn row(c: &[i64], rhs: i64) -> GeRow {
        GeRow {
            coeffs: c.iter().map(|&v| q(v)).collect(),
            rhs: q(rhs),
        }
    }

    #[test]
    fn simple_min() {
        // min x + y s.t. x + 2y >= 4, 3x + y >= 6
        let x = minimize(&[q(1), q(1)], &[row(&[1, 2], 4), row(&[3, 1], 6)]).unwrap();
        assert_eq!(x, vec!["8/5".parse().unwrap(), "6/5".parse().unwrap()]);
    }

    #[test]
    fn infeasible() {
        // x >= 2 and -x >= -1
        assert!(minimize(&[q(1)], &[row(&[1], 2), row(&[-1], -1)]).is_none());
    }

    #[test]
    fn zero_rhs_rows() {
        // min y s.t. y - x >= 0, x >= 3
        let x = minimize(&[q(0), q(1)], &[row(&[-1, 1], 0), row(&[1, 0], 3)]).unwrap();
        assert_eq!(x, vec![q(3), q(3)]);
    }
}
