//! Exact phase-one simplex: find `y >= 0` with `m y = c`.

use num_traits::{Signed, Zero};

use crate::exactlin::{Rat, RatMat, RatVec};

/// A nonnegative solution of `m y = c`, or `None` when there is none.
/// Tableau simplex on the artificial problem `min sum(a)`, `m y + a = c`,
/// with Bland's least-index rule for entering and leaving variables.
pub fn nonnegative_solution(m: &RatMat, c: &RatVec) -> Option<RatVec> {
    let rows = m.rows();
    let k = m.cols();
    let width = k + rows;
    // rows of [m | I | c], sign-normalized so that c >= 0
    let mut t: Vec<Vec<Rat>> = (0..rows)
        .map(|i| {
            let flip = c[i].is_negative();
            let mut r: Vec<Rat> = m
                .row(i)
                .iter()
                .map(|v| if flip { -v.clone() } else { v.clone() })
                .collect();
            r.extend((0..rows).map(|j| {
                if i == j {
                    Rat::from_integer(1.into())
                } else {
                    Rat::zero()
                }
            }));
            r.push(if flip { -c[i].clone() } else { c[i].clone() });
            r
        })
        .collect();
    let mut basis: Vec<usize> = (k..width).collect();
    // reduced costs of min sum(a): -(column sums) on y, 0 on a
    let mut cost: Vec<Rat> = vec![Rat::zero(); width + 1];
    for row in &t {
        for j in 0..k {
            cost[j] -= &row[j];
        }
        cost[width] -= &row[width];
    }
    loop {
        let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) else {
            break;
        };
        // ratio test, ties to the smallest basic variable index
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (r, _) = leave.expect("phase-one objective is bounded below");
        pivot(&mut t, &mut cost, r, enter);
        basis[r] = enter;
    }
    if !cost[width].is_zero() {
        return None;
    }
    let mut y = RatVec::zeros(k);
    for (i, &b) in basis.iter().enumerate() {
        if b < k {
            y[b] = t[i][width].clone();
        }
    }
    Some(y)
}

fn pivot(t: &mut [Vec<Rat>], cost: &mut [Rat], r: usize, c: usize) {
    let p = t[r][c].clone();
    for v in t[r].iter_mut() {
        *v /= &p;
    }
    let prow = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
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
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (v, pv) in cost.iter_mut().zip(&prow) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}
