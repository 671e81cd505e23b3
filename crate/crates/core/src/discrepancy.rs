//! Log discrepancies and pull-back multiplicities via the determinant
//! calculus.
//!
//! For a valid resolution graph Γ with determinant `Δ(Γ)`, the quantities
//! computed here are finite sums of path-deletion determinants:
//!
//! - log discrepancy: `a(E_k, Y, 0) = Σ_j (2 − deg v_j) · Δ(Γ∖path(k,j)) / Δ(Γ)`
//! - pull-back multiplicity: `mult_{E_k} π*C = Σ_j c_j · Δ(Γ∖path(k,j)) / Δ(Γ)`
//!   where `c_j = (π⁻¹_*C · E_j)`
//! - boundary discrepancy: `a(E_k, Y, (1−δ)C) = a(E_k,Y,0) − (1−δ)·mult_{E_k} π*C`
//!
//! The coefficient `2 − deg v_j` is the simple-edge specialization of
//! `2 − Σ_{i≠j} E_i·E_j`; validation enforces simple edges, so a future
//! generalization to weighted edges must revisit it. An independent
//! linear-system route to the same values lives in [`crate::oracle`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dualgraph::DualGraph;
use crate::rat::Rat;
use crate::{Error, Result};

/// Intersection numbers `c_j = (π⁻¹_*C · E_j)` of a strict-transform curve
/// with each exceptional curve. All zero is allowed (curve missing the
/// singular point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveAttachment {
    c: Vec<i64>,
}

impl CurveAttachment {
    /// Requires every entry ≥ 0.
    pub fn new(c: Vec<i64>) -> Result<Self> {
        if c.iter().any(|&x| x < 0) {
            return Err(Error::NegativeCurveEntry);
        }
        Ok(CurveAttachment { c })
    }

    /// A curve meeting only `E_k`, transversally (`c_k = 1`).
    pub fn unit(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::VertexOutOfRange { index: k, n });
        }
        let mut c = vec![0; n];
        c[k] = 1;
        Ok(CurveAttachment { c })
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.c
    }

    /// True when every `c_j = 0`.
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn check_len(&self, g: &DualGraph) -> Result<()> {
        if self.c.len() != g.n() {
            return Err(Error::CurveLengthMismatch {
                got: self.c.len(),
                expected: g.n(),
            });
        }
        Ok(())
    }
}

/// All per-vertex quantities of one graph computed together, sharing the
/// path-determinant tables (the dominant cost for enumeration sweeps).
#[derive(Debug, Clone)]
pub struct DiscrepancyProfile {
    /// `Δ(Γ)`.
    pub delta_gamma: BigInt,
    /// `a(E_k, Y, 0)` per vertex.
    pub log_discrepancies: Vec<Rat>,
    /// `mult_{E_k} π*C` per requested curve (outer index) and vertex (inner).
    pub mults: Vec<Vec<Rat>>,
}

/// Computes log discrepancies and, for each given curve attachment, pull-back
/// multiplicities, with one path-determinant table per vertex.
pub fn profile(g: &DualGraph, curves: &[&CurveAttachment]) -> Result<DiscrepancyProfile> {
    g.ensure_valid()?;
    for curve in curves {
        curve.check_len(g)?;
    }
    let n = g.n();
    let delta_gamma = g.delta_full();
    let mut log_discrepancies = Vec::with_capacity(n);
    let mut mults = vec![Vec::with_capacity(n); curves.len()];
    for k in 0..n {
        let table = g.path_delta_table(k)?;
        let mut acc = BigInt::zero();
        for (j, d) in table.iter().enumerate() {
            acc += (2 - g.degree(j) as i64) * d;
        }
        log_discrepancies.push(Rat::new(acc, delta_gamma.clone()));
        for (row, curve) in mults.iter_mut().zip(curves) {
            let mut acc = BigInt::zero();
            for (j, d) in table.iter().enumerate() {
                let c = curve.entries()[j];
                if c != 0 {
                    acc += c * d;
                }
            }
            row.push(Rat::new(acc, delta_gamma.clone()));
        }
    }
    Ok(DiscrepancyProfile {
        delta_gamma,
        log_discrepancies,
        mults,
    })
}

/// `a(E_k, Y, 0)` for one vertex.
pub fn log_discrepancy(g: &DualGraph, k: usize) -> Result<Rat> {
    check_vertex(g, k)?;
    Ok(profile(g, &[])?.log_discrepancies.swap_remove(k))
}

/// `a(E_k, Y, 0)` for every vertex.
pub fn log_discrepancies(g: &DualGraph) -> Result<Vec<Rat>> {
    Ok(profile(g, &[])?.log_discrepancies)
}

/// `mult_{E_k} π*C` for one vertex.
pub fn mult_pullback(g: &DualGraph, curve: &CurveAttachment, k: usize) -> Result<Rat> {
    check_vertex(g, k)?;
    Ok(profile(g, &[curve])?.mults.swap_remove(0).swap_remove(k))
}

/// `mult_{E_k} π*C` for every vertex.
pub fn mult_pullbacks(g: &DualGraph, curve: &CurveAttachment) -> Result<Vec<Rat>> {
    Ok(profile(g, &[curve])?.mults.swap_remove(0))
}

/// `a(E_k, Y, (1−δ)C) = a(E_k, Y, 0) − (1−δ)·mult_{E_k} π*C`. Requires
/// `0 < δ < 1`.
pub fn boundary_discrepancy(
    g: &DualGraph,
    curve: &CurveAttachment,
    k: usize,
    delta: &Rat,
) -> Result<Rat> {
    check_delta(delta)?;
    check_vertex(g, k)?;
    let p = profile(g, &[curve])?;
    Ok(&p.log_discrepancies[k] - (Rat::one() - delta) * &p.mults[0][k])
}

/// Boundary discrepancies at every vertex.
pub fn boundary_discrepancies(
    g: &DualGraph,
    curve: &CurveAttachment,
    delta: &Rat,
) -> Result<Vec<Rat>> {
    check_delta(delta)?;
    let p = profile(g, &[curve])?;
    let coeff = Rat::one() - delta;
    Ok(p.log_discrepancies
        .iter()
        .zip(&p.mults[0])
        .map(|(a, m)| a - &coeff * m)
        .collect())
}

/// The δ-lc test for the pair `(Y, (1−δ)C)` (or `(Y, 0)` without a curve):
/// true iff every vertex's (boundary) discrepancy is ≥ δ. Requires
/// `0 < δ < 1`.
pub fn is_delta_lc(g: &DualGraph, curve: Option<&CurveAttachment>, delta: &Rat) -> Result<bool> {
    check_delta(delta)?;
    let values = match curve {
        Some(c) => boundary_discrepancies(g, c, delta)?,
        None => log_discrepancies(g)?,
    };
    Ok(values.iter().all(|v| v >= delta))
}

fn check_vertex(g: &DualGraph, k: usize) -> Result<()> {
    if k >= g.n() {
        return Err(Error::VertexOutOfRange { index: k, n: g.n() });
    }
    Ok(())
}

fn check_delta(delta: &Rat) -> Result<()> {
    if delta <= &Rat::zero() || delta >= &Rat::one() {
        return Err(Error::ParamRange {
            name: "delta",
            value: crate::rat::format_rat(delta),
            range: "0 < delta < 1",
        });
    }
    Ok(())
}
