//! Independent linear-system route to discrepancies and multiplicities.
//!
//! Instead of the path-determinant sums of [`crate::discrepancy`], this
//! module derives the same quantities from the defining linear systems:
//!
//! - discrepancies: writing `K_Y = π*K_X + Σ d_i E_i`, adjunction on each
//!   rational curve gives `K_Y·E_j = m_j − 2` while `π*K_X·E_j = 0`, so
//!   `(−M)·d = (2 − m_j)_j` with `M` the intersection matrix, and
//!   `a_j = d_j + 1`;
//! - multiplicities: `π*C = π⁻¹_*C + Σ x_i E_i` with `π*C·E_j = 0` gives
//!   `(−M)·x = (c_j)_j` and `mult_{E_k} π*C = x_k`.
//!
//! The solver is deliberately self-contained — it shares no code with the
//! determinant calculus — so agreement between the two routes is a real
//! cross-check, not a tautology. Elimination runs fraction-free in `i128`
//! (the negated intersection matrix of a valid graph is positive definite,
//! so no pivoting is needed) and falls back to textbook rational Gaussian
//! elimination on overflow.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::discrepancy::CurveAttachment;
use crate::dualgraph::DualGraph;
use crate::rat::Rat;
use crate::{Error, Result};

/// `a(E_k, Y, 0)` for every vertex, from the adjunction linear system.
pub fn log_discrepancies_oracle(g: &DualGraph) -> Result<Vec<Rat>> {
    Ok(profiles_oracle(g, &[])?.0)
}

/// `mult_{E_k} π*C` for every vertex, from the pull-back linear system.
pub fn mult_pullbacks_oracle(g: &DualGraph, curve: &CurveAttachment) -> Result<Vec<Rat>> {
    Ok(profiles_oracle(g, &[curve])?.1.swap_remove(0))
}

/// Log discrepancies plus multiplicities for several curves, sharing one
/// matrix elimination. Returns `(a, mults)` with `mults[c][k]` indexed by
/// curve then vertex.
pub fn profiles_oracle(
    g: &DualGraph,
    curves: &[&CurveAttachment],
) -> Result<(Vec<Rat>, Vec<Vec<Rat>>)> {
    g.ensure_valid()?;
    let n = g.n();
    for curve in curves {
        if curve.len() != n {
            return Err(Error::CurveLengthMismatch {
                got: curve.len(),
                expected: n,
            });
        }
    }
    // A = -M: diagonal m_i, -1 on edges.
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        a[i * n + i] = g.weight(i);
    }
    for &(i, j) in g.edges() {
        a[i * n + j] = -1;
        a[j * n + i] = -1;
    }
    let mut rhs: Vec<Vec<i64>> = Vec::with_capacity(1 + curves.len());
    rhs.push((0..n).map(|j| 2 - g.weight(j)).collect());
    rhs.extend(curves.iter().map(|c| c.entries().to_vec()));

    let mut solutions = solve_columns(n, &a, &rhs)?;
    let mults = solutions.split_off(1);
    let log_discrepancies = solutions
        .pop()
        .unwrap()
        .into_iter()
        .map(|d| d + Rat::one())
        .collect();
    Ok((log_discrepancies, mults))
}

fn solve_columns(n: usize, a: &[i64], rhs: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    match solve_columns_i128(n, a, rhs) {
        Some(sols) => Ok(sols),
        None => solve_columns_big(n, a, rhs),
    }
}

/// Fraction-free elimination on the augmented matrix, then exact integer
/// back-substitution: by Cramer's rule every solution entry is an integer
/// over `det(A)`, and the numerators satisfy an all-integer recurrence.
/// Returns `None` on `i128` overflow or a non-positive pivot.
fn solve_columns_i128(n: usize, a: &[i64], rhs: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let r = rhs.len();
    let w = n + r;
    let mut m = vec![0i128; n * w];
    for i in 0..n {
        for j in 0..n {
            m[i * w + j] = a[i * n + j] as i128;
        }
        for (c, col) in rhs.iter().enumerate() {
            m[i * w + n + c] = col[i] as i128;
        }
    }
    let mut prev = 1i128;
    for k in 0..n {
        let pivot = m[k * w + k];
        if pivot <= 0 {
            return None;
        }
        for i in k + 1..n {
            let head = m[i * w + k];
            for j in k + 1..w {
                let t = pivot
                    .checked_mul(m[i * w + j])?
                    .checked_sub(head.checked_mul(m[k * w + j])?)?;
                m[i * w + j] = t / prev;
            }
            m[i * w + k] = 0;
        }
        prev = pivot;
    }
    let det = prev; // last pivot = det(A) for a completed elimination
    let mut sols = Vec::with_capacity(r);
    for c in 0..r {
        // numerators num[k] = det(A with column k replaced), so that
        // x_k = num[k]/det; the recurrence below stays in integers.
        let mut num = vec![0i128; n];
        for k in (0..n).rev() {
            let mut acc = det.checked_mul(m[k * w + n + c])?;
            for j in k + 1..n {
                acc = acc.checked_sub(m[k * w + j].checked_mul(num[j])?)?;
            }
            num[k] = acc / m[k * w + k];
        }
        sols.push(
            num.into_iter()
                .map(|x| Rat::new(BigInt::from(x), BigInt::from(det)))
                .collect(),
        );
    }
    Some(sols)
}

/// Reference path: rational Gaussian elimination with partial pivoting.
fn solve_columns_big(n: usize, a: &[i64], rhs: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let r = rhs.len();
    let w = n + r;
    let mut m = vec![Rat::zero(); n * w];
    for i in 0..n {
        for j in 0..n {
            m[i * w + j] = Rat::from_integer(a[i * n + j].into());
        }
        for (c, col) in rhs.iter().enumerate() {
            m[i * w + n + c] = Rat::from_integer(col[i].into());
        }
    }
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&i| !m[i * w + k].is_zero())
            .ok_or(Error::SingularMatrix)?;
        if pivot_row != k {
            for j in 0..w {
                m.swap(k * w + j, pivot_row * w + j);
            }
        }
        let pivot = m[k * w + k].clone();
        for j in k..w {
            m[k * w + j] = &m[k * w + j] / &pivot;
        }
        for i in 0..n {
            if i == k || m[i * w + k].is_zero() {
                continue;
            }
            let factor = m[i * w + k].clone();
            for j in k..w {
                let t = &m[i * w + j] - &factor * &m[k * w + j];
                m[i * w + j] = t;
            }
        }
    }
    Ok((0..r)
        .map(|c| (0..n).map(|k| m[k * w + n + c].clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrepancy;
    use crate::rat::rat;

    #[test]
    fn oracle_values_match_hand_computations() {
        let single = DualGraph::chain(&[4]).unwrap();
        assert_eq!(log_discrepancies_oracle(&single).unwrap(), vec![rat(1, 2)]);

        let g = DualGraph::chain(&[3, 2]).unwrap();
        assert_eq!(
            log_discrepancies_oracle(&g).unwrap(),
            vec![rat(3, 5), rat(4, 5)]
        );

        let g = DualGraph::chain(&[2, 2]).unwrap();
        let c = CurveAttachment::unit(2, 0).unwrap();
        assert_eq!(
            mult_pullbacks_oracle(&g, &c).unwrap(),
            vec![rat(2, 3), rat(1, 3)]
        );
    }

    #[test]
    fn both_routes_agree_on_sample_graphs() {
        let graphs = [
            DualGraph::chain(&[2]).unwrap(),
            DualGraph::chain(&[5, 3, 2, 4]).unwrap(),
            DualGraph::new(vec![2, 2, 3, 2], &[(0, 2), (1, 2), (2, 3)]).unwrap(),
            DualGraph::new(vec![2, 2, 2, 2], &[(0, 3), (1, 3), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            let unit = CurveAttachment::unit(g.n(), 0).unwrap();
            let ones = CurveAttachment::new(vec![1; g.n()]).unwrap();
            let curves = [&unit, &ones];
            let (a, mults) = profiles_oracle(g, &curves).unwrap();
            let p = discrepancy::profile(g, &curves).unwrap();
            assert_eq!(a, p.log_discrepancies);
            assert_eq!(mults, p.mults);
        }
    }

    #[test]
    fn fast_and_fallback_solvers_agree() {
        // 3x3 positive definite system with two right-hand sides.
        let a = [5i64, -1, 0, -1, 4, -1, 0, -1, 3];
        let rhs = vec![vec![1i64, 2, 3], vec![-3, 0, 7]];
        let fast = solve_columns_i128(3, &a, &rhs).unwrap();
        let slow = solve_columns_big(3, &a, &rhs).unwrap();
        assert_eq!(fast, slow);
        // Sanity: plug the first solution back in.
        for i in 0..3 {
            let acc: Rat = (0..3)
                .map(|j| Rat::from_integer(a[i * 3 + j].into()) * &fast[0][j])
                .sum();
            assert_eq!(acc, Rat::from_integer(rhs[0][i].into()));
        }
    }

    #[test]
    fn invalid_graphs_are_rejected() {
        let disconnected = DualGraph::new(vec![2, 2], &[]).unwrap();
        assert!(log_discrepancies_oracle(&disconnected).is_err());
    }
}
