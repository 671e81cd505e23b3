//! Fraction-free integer determinants via Bareiss elimination.
//!
//! Operates on flat row-major `i64` matrices. Every intermediate value in
//! Bareiss elimination is itself a minor of the input, so the computation is
//! exact over the integers: the fast path runs in `i128` with checked
//! arithmetic and transparently redoes the work in `BigInt` on overflow.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Signed determinant of the `n`×`n` row-major matrix `data`.
///
/// The empty matrix has determinant 1 (empty product), which is exactly the
/// convention `Δ(∅) = 1` required by the determinant calculus.
pub fn det(n: usize, data: &[i64]) -> BigInt {
    assert_eq!(data.len(), n * n, "matrix data length mismatch");
    match det_i128(n, data) {
        Some(d) => BigInt::from(d),
        None => det_big(n, data),
    }
}

/// `|det|` of the `n`×`n` row-major matrix `data` — the shape of every
/// Δ-value in this crate.
pub fn abs_det(n: usize, data: &[i64]) -> BigInt {
    det(n, data).abs()
}

/// Sylvester test for symmetric positive definiteness.
///
/// The Bareiss pivot produced after step `k` equals the `(k+1)`-st leading
/// principal minor, so a single elimination pass checks all of them. A zero
/// pivot is a zero minor, which already refutes definiteness, so no row
/// swaps are ever needed. `data` must be symmetric.
pub fn is_positive_definite(n: usize, data: &[i64]) -> bool {
    assert_eq!(data.len(), n * n, "matrix data length mismatch");
    debug_assert!(
        (0..n).all(|i| (0..n).all(|j| data[i * n + j] == data[j * n + i])),
        "positive-definiteness test requires a symmetric matrix"
    );
    match pd_i128(n, data) {
        Some(ans) => ans,
        None => pd_big(n, data),
    }
}

// Matrices up to this size are eliminated in a stack buffer; the enumeration
// sweeps take millions of small determinants and the heap traffic would
// otherwise dominate.
const STACK_DIM: usize = 16;

fn det_i128(n: usize, data: &[i64]) -> Option<i128> {
    if n <= STACK_DIM {
        let mut buf = [0i128; STACK_DIM * STACK_DIM];
        for (slot, &x) in buf.iter_mut().zip(data) {
            *slot = x as i128;
        }
        det_i128_core(n, &mut buf)
    } else {
        let mut buf: Vec<i128> = data.iter().map(|&x| x as i128).collect();
        det_i128_core(n, &mut buf)
    }
}

fn det_i128_core(n: usize, a: &mut [i128]) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return Some(0);
            };
            for j in k..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let head = a[i * n + k];
            for j in k + 1..n {
                let t = pivot
                    .checked_mul(a[i * n + j])?
                    .checked_sub(head.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = t / prev; // exact: Bareiss entries are minors
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    Some(sign * a[n * n - 1])
}

fn det_big(n: usize, data: &[i64]) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<BigInt> = data.iter().map(|&x| BigInt::from(x)).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in k..n {
                a.swap(k * n + j, r * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k * n + k] * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = t / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn pd_i128(n: usize, data: &[i64]) -> Option<bool> {
    if n <= STACK_DIM {
        let mut buf = [0i128; STACK_DIM * STACK_DIM];
        for (slot, &x) in buf.iter_mut().zip(data) {
            *slot = x as i128;
        }
        pd_i128_core(n, &mut buf)
    } else {
        let mut buf: Vec<i128> = data.iter().map(|&x| x as i128).collect();
        pd_i128_core(n, &mut buf)
    }
}

fn pd_i128_core(n: usize, a: &mut [i128]) -> Option<bool> {
    let mut prev = 1i128;
    for k in 0..n {
        let pivot = a[k * n + k];
        if pivot <= 0 {
            return Some(false);
        }
        for i in k + 1..n {
            let head = a[i * n + k];
            for j in k + 1..n {
                let t = pivot
                    .checked_mul(a[i * n + j])?
                    .checked_sub(head.checked_mul(a[k * n + j])?)?;
                a[i * n + j] = t / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    Some(true)
}

fn pd_big(n: usize, data: &[i64]) -> bool {
    let mut a: Vec<BigInt> = data.iter().map(|&x| BigInt::from(x)).collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if !a[k * n + k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k * n + k] * &a[i * n + j] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = t / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    true
}
