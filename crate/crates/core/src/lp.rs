//! Exact rational linear feasibility via a small phase-one simplex with
//! Bland's rule. No floating point anywhere.

use num::{One, Signed, Zero};

use crate::formal::Rational;

/// Decides whether A·x = b admits a solution with x ≥ 0. `columns` is given
/// column-major: columns[j] is the j-th column of A.
pub fn nonneg_combination_exists(columns: &[Vec<Rational>], b: &[Rational]) -> bool {
    let rows = b.len();
    let m = columns.len();
    if m == 0 {
        return b.iter().all(Zero::is_zero);
    }
    debug_assert!(columns.iter().all(|c| c.len() == rows));

    // Tableau with one artificial variable per row; minimize their sum.
    let total = m + rows;
    let mut t = vec![vec![Rational::zero(); total]; rows];
    let mut rhs: Vec<Rational> = b.to_vec();
    for i in 0..rows {
        let flip = rhs[i].is_negative();
        for (j, col) in columns.iter().enumerate() {
            t[i][j] = if flip { -col[i].clone() } else { col[i].clone() };
        }
        if flip {
            rhs[i] = -rhs[i].clone();
        }
        t[i][m + i] = Rational::one();
    }
    let mut basis: Vec<usize> = (m..total).collect();
    let cost = |j: usize| -> Rational {
        if j >= m {
            Rational::one()
        } else {
            Rational::zero()
        }
    };

    loop {
        // Reduced costs from scratch; the tableau is tiny.
        let mut entering = None;
        for j in 0..total {
            if basis.contains(&j) {
                continue;
            }
            let mut z = Rational::zero();
            for i in 0..rows {
                if cost(basis[i]).is_one() {
                    z += t[i][j].clone();
                }
            }
            if cost(j) - z < Rational::zero() {
                entering = Some(j); // Bland: first improving index
                break;
            }
        }
        let Some(enter) = entering else {
            let objective: Rational = (0..rows)
                .filter(|&i| basis[i] >= m)
                .map(|i| rhs[i].clone())
                .fold(Rational::zero(), |a, b| a + b);
            return objective.is_zero();
        };

        // Ratio test; ties broken by smallest basis index (Bland).
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = rhs[i].clone() / t[i][enter].clone();
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        // Phase-one objective is bounded below by zero, so a pivot row
        // always exists.
        let leave = leave.expect("phase-one simplex cannot be unbounded");

        // Pivot.
        let pivot = t[leave][enter].clone();
        for j in 0..total {
            t[leave][j] /= pivot.clone();
        }
        rhs[leave] /= pivot;
        for i in 0..rows {
            if i == leave || t[i][enter].is_zero() {
                continue;
            }
            let factor = t[i][enter].clone();
            for j in 0..total {
                let delta = factor.clone() * t[leave][j].clone();
                t[i][j] -= delta;
            }
            let delta = factor * rhs[leave].clone();
            rhs[i] -= delta;
        }
        basis[leave] = enter;
    }
}

/// Decides whether `target` lies in the convex hull of `points` (exact).
pub fn in_convex_hull(points: &[Vec<Rational>], target: &[Rational]) -> bool {
    if points.is_empty() {
        return false;
    }
    let dim = target.len();
    // Σ λ_u u = target, Σ λ_u = 1, λ ≥ 0: one extra normalization row.
    let columns: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut col = p.clone();
            col.push(Rational::one());
            col
        })
        .collect();
    let mut b = target.to_vec();
    b.push(Rational::one());
    debug_assert!(points.iter().all(|p| p.len() == dim));
    nonneg_combination_exists(&columns, &b)
}
