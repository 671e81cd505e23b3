//! Exact evaluators for the closed-form threshold and volume bounds.
//!
//! Everything here is plain rational arithmetic over the parameter pair
//! `(ε, δ)`: the log-canonical-threshold floor `t₀`, its specialization
//! `μ(2,ε)` at `δ = ε/2` with the cubic floor `3ε³/400`, the auxiliary caps
//! on curve self-intersections and relative Picard ranks, the per-case
//! volume bounds `3200/ε⁴`, `1152/ε²`, `64`, and the family of threshold
//! values `1/((q+1)(q²+q+1))` from the sharpness examples. Comparisons are
//! exact; [`grid_check`] re-proves every claimed inequality on the grid
//! `ε = 1/q`.
//!
//! The volume bounds are only meaningful for `ε < 1/3` and reject larger
//! inputs rather than extrapolate; each evaluator enforces the hypothesis
//! it actually needs, and [`BoundParams`] accepts the widest range any
//! formula tolerates (`0 < δ < ε < 1`).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::rat::{format_rat, rat, rat_string, rat_string_opt, Rat};
use crate::{Error, Result};

/// The parameter pair `(ε, δ)` with `0 < δ < ε < 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundParams {
    epsilon: Rat,
    delta: Rat,
}

impl BoundParams {
    pub fn new(epsilon: Rat, delta: Rat) -> Result<Self> {
        if epsilon <= Rat::zero() || epsilon >= Rat::one() {
            return Err(Error::ParamRange {
                name: "epsilon",
                value: format_rat(&epsilon),
                range: "0 < epsilon < 1",
            });
        }
        if delta <= Rat::zero() || delta >= epsilon {
            return Err(Error::ParamRange {
                name: "delta",
                value: format_rat(&delta),
                range: "0 < delta < epsilon",
            });
        }
        Ok(BoundParams { epsilon, delta })
    }

    pub fn epsilon(&self) -> &Rat {
        &self.epsilon
    }

    pub fn delta(&self) -> &Rat {
        &self.delta
    }
}

fn check_epsilon_third(epsilon: &Rat) -> Result<()> {
    if epsilon <= &Rat::zero() || epsilon >= &rat(1, 3) {
        return Err(Error::ParamRange {
            name: "epsilon",
            value: format_rat(epsilon),
            range: "0 < epsilon < 1/3",
        });
    }
    Ok(())
}

/// `t₀ ≥ δ²(ε−δ) / (16 + 4δ + δ²(ε−1))` — the threshold floor. Positive
/// for all valid params (the denominator exceeds `16 − δ² > 0`).
pub fn t0_lower_bound(p: &BoundParams) -> Rat {
    let d = &p.delta;
    let e = &p.epsilon;
    let num = d * d * (e - d);
    let den = rat(16, 1) + rat(4, 1) * d + d * d * (e - Rat::one());
    num / den
}

/// `μ(2,ε)`: [`t0_lower_bound`] at the canonical choice `δ = ε/2`.
/// Requires `0 < ε < 1/3`; exceeds [`mu2_floor`].
pub fn mu2_lower_bound(epsilon: &Rat) -> Result<Rat> {
    check_epsilon_third(epsilon)?;
    let p = BoundParams::new(epsilon.clone(), epsilon / rat(2, 1))?;
    Ok(t0_lower_bound(&p))
}

/// The cubic floor `3ε³/400` that [`mu2_lower_bound`] is proven to exceed.
pub fn mu2_floor(epsilon: &Rat) -> Result<Rat> {
    check_epsilon_third(epsilon)?;
    Ok(rat(3, 400) * epsilon * epsilon * epsilon)
}

/// The prime-divisor case floor `ε²/(2(2+3ε+ε²))` (i.e. `ε(ε−δ)/(2+3ε+ε²)`
/// at `δ = ε/2`). Requires `0 < ε < 1/3`.
pub fn divisor_case_bound(epsilon: &Rat) -> Result<Rat> {
    check_epsilon_third(epsilon)?;
    let num = epsilon * epsilon;
    let den = rat(2, 1) * (rat(2, 1) + rat(3, 1) * epsilon + epsilon * epsilon);
    Ok(num / den)
}

/// `M(2,ε) ≤ 2/ε + 4 + 2/3`; the coarser cap `4/ε` majorizes this for all
/// `ε < 3/7`, in particular on `(0, 1/3)`.
pub fn m2_upper_bound(epsilon: &Rat) -> Result<Rat> {
    check_epsilon_third(epsilon)?;
    Ok(rat(2, 1) / epsilon + rat(14, 3))
}

/// Volume bound for the del-Pezzo-fibration case via the majorizations
/// `6·(4/ε)/(3ε³/400) = 3200/ε⁴`. Requires `0 < ε < 1/3`.
pub fn dpf_bound(epsilon: &Rat) -> Result<Rat> {
    check_epsilon_third(epsilon)?;
    Ok(rat(6, 1) * (rat(4, 1) / epsilon) / mu2_floor(epsilon)?)
}

/// The tighter del-Pezzo-fibration bound `6·M(2,ε)/μ(2,ε)` using the exact
/// `μ` witness instead of its cubic floor.
pub fn dpf_bound_tight(epsilon: &Rat) -> Result<Rat> {
    Ok(rat(6, 1) * m2_upper_bound(epsilon)? / mu2_lower_bound(epsilon)?)
}

/// Conic-bundle case bound `144(d+2)/ε²` for the base degree `1 ≤ d ≤ 6`;
/// `d = 6` gives the quoted `1152/ε²`. Requires `0 < ε < 1`.
pub fn conic_bound(epsilon: &Rat, d: i64) -> Result<Rat> {
    if epsilon <= &Rat::zero() || epsilon >= &Rat::one() {
        return Err(Error::ParamRange {
            name: "epsilon",
            value: format_rat(epsilon),
            range: "0 < epsilon < 1",
        });
    }
    if !(1..=6).contains(&d) {
        return Err(Error::ParamRange {
            name: "d",
            value: d.to_string(),
            range: "1 <= d <= 6",
        });
    }
    Ok(rat(144 * (d + 2), 1) / (epsilon * epsilon))
}

/// Volume cap `64` in the Picard-rank-one case.
pub fn rank1_bound() -> Rat {
    rat(64, 1)
}

/// The headline volume bound `3200/ε⁴`. Requires `0 < ε < 1/3`.
pub fn volume_bound(epsilon: &Rat) -> Result<Rat> {
    check_epsilon_third(epsilon)?;
    let e2 = epsilon * epsilon;
    Ok(rat(3200, 1) / (&e2 * &e2))
}

/// Auxiliary caps used on the way to the volume bound, all functions of δ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxBounds {
    /// Self-intersection floor for irreducible curves: `C² ≥ −2/δ`.
    #[serde(with = "rat_string")]
    pub c2_floor: Rat,
    /// Relative Picard rank cap `ρ(Y_min/Y) ≤ 8/δ − 1`.
    #[serde(with = "rat_string")]
    pub rho_cap: Rat,
    /// Blow-up count cap `p ≤ 1/δ`.
    #[serde(with = "rat_string")]
    pub p_cap: Rat,
    /// Blow-up count cap `q ≤ 3/δ − 2`.
    #[serde(with = "rat_string")]
    pub q_cap: Rat,
    /// Combined cap `p + q ≤ 4/δ − 2`.
    #[serde(with = "rat_string")]
    pub pq_cap: Rat,
}

/// Evaluates the auxiliary caps. Requires `0 < δ < 1/6`.
pub fn aux_bounds(delta: &Rat) -> Result<AuxBounds> {
    if delta <= &Rat::zero() || delta >= &rat(1, 6) {
        return Err(Error::ParamRange {
            name: "delta",
            value: format_rat(delta),
            range: "0 < delta < 1/6",
        });
    }
    Ok(AuxBounds {
        c2_floor: rat(-2, 1) / delta,
        rho_cap: rat(8, 1) / delta - Rat::one(),
        p_cap: Rat::one() / delta,
        q_cap: rat(3, 1) / delta - rat(2, 1),
        pq_cap: rat(4, 1) / delta - rat(2, 1),
    })
}

/// Threshold value `1/((q+1)(q²+q+1))` of the q-th sharpness example.
/// Requires `q ≥ 1`.
pub fn ambro_example_t(q: u64) -> Result<Rat> {
    if q < 1 {
        return Err(Error::ParamRange {
            name: "q",
            value: q.to_string(),
            range: "q >= 1",
        });
    }
    let q = BigInt::from(q);
    let den = (&q + 1) * (&q * &q + &q + 1);
    Ok(Rat::new(BigInt::one(), den))
}

/// All bound values at one ε (and optionally δ), exact.
#[derive(Debug, Clone, Serialize)]
pub struct BoundSheet {
    #[serde(with = "rat_string")]
    pub epsilon: Rat,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rat_string_opt")]
    pub delta: Option<Rat>,
    /// Present only when δ is given.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "rat_string_opt")]
    pub t0_lb: Option<Rat>,
    #[serde(with = "rat_string")]
    pub mu2_lb: Rat,
    #[serde(with = "rat_string")]
    pub mu2_floor: Rat,
    #[serde(rename = "M2_ub", with = "rat_string")]
    pub m2_ub: Rat,
    #[serde(with = "rat_string")]
    pub dpf_bound: Rat,
    #[serde(with = "rat_string")]
    pub dpf_tight: Rat,
    /// Conic-bundle bound at the extreme base degree d = 6.
    #[serde(with = "rat_string")]
    pub conic_bound: Rat,
    #[serde(with = "rat_string")]
    pub rank1_bound: Rat,
    #[serde(with = "rat_string")]
    pub volume_bound: Rat,
}

/// Evaluates the whole sheet. Requires `0 < ε < 1/3` and, if given,
/// `0 < δ < ε`.
pub fn bound_sheet(epsilon: &Rat, delta: Option<&Rat>) -> Result<BoundSheet> {
    check_epsilon_third(epsilon)?;
    let t0_lb = delta
        .map(|d| Ok::<_, Error>(t0_lower_bound(&BoundParams::new(epsilon.clone(), d.clone())?)))
        .transpose()?;
    Ok(BoundSheet {
        epsilon: epsilon.clone(),
        delta: delta.cloned(),
        t0_lb,
        mu2_lb: mu2_lower_bound(epsilon)?,
        mu2_floor: mu2_floor(epsilon)?,
        m2_ub: m2_upper_bound(epsilon)?,
        dpf_bound: dpf_bound(epsilon)?,
        dpf_tight: dpf_bound_tight(epsilon)?,
        conic_bound: conic_bound(epsilon, 6)?,
        rank1_bound: rank1_bound(),
        volume_bound: volume_bound(epsilon)?,
    })
}

/// One inequality re-proved across the whole grid.
#[derive(Debug, Clone, Serialize)]
pub struct GridCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Smallest q at which the inequality failed, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure_q: Option<u64>,
}

/// Result of [`grid_check`] over `ε = 1/q`, `q = 4..=q_max`.
#[derive(Debug, Clone, Serialize)]
pub struct GridReport {
    pub q_min: u64,
    pub q_max: u64,
    pub checks: Vec<GridCheck>,
}

impl GridReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Re-proves every claimed inequality on the grid `ε = 1/q`,
/// `q = 4..=q_max`, by exact comparison. Requires `q_max ≥ 4`.
pub fn grid_check(q_max: u64) -> Result<GridReport> {
    const Q_MIN: u64 = 4;
    if q_max < Q_MIN {
        return Err(Error::ParamRange {
            name: "q_max",
            value: q_max.to_string(),
            range: "q_max >= 4",
        });
    }

    let mut checks: Vec<(&'static str, Option<u64>)> = vec![
        ("mu2_exceeds_floor", None),
        ("volume_dominates_other_cases", None),
        ("divisor_case_not_binding", None),
        ("dpf_tight_le_majorized", None),
        ("t0_monotone_in_epsilon", None),
        ("ambro_consistent_with_mu2", None),
        ("ambro_ratio_in_range", None),
    ];
    let mut record = |idx: usize, q: u64, ok: bool| {
        if !ok && checks[idx].1.is_none() {
            checks[idx].1 = Some(q);
        }
    };

    // Fixed δ for the monotonicity check, below every grid ε.
    let delta0 = Rat::new(BigInt::one(), BigInt::from(2 * (q_max + 1)));
    let mut prev_t0: Option<Rat> = None;

    for q in Q_MIN..=q_max {
        let eps = Rat::new(BigInt::one(), BigInt::from(q));
        let mu2 = mu2_lower_bound(&eps)?;
        record(0, q, mu2 > mu2_floor(&eps)?);

        let vol = volume_bound(&eps)?;
        record(
            1,
            q,
            vol >= rank1_bound() && vol >= conic_bound(&eps, 6)?,
        );
        record(2, q, divisor_case_bound(&eps)? > mu2);
        record(3, q, dpf_bound_tight(&eps)? <= dpf_bound(&eps)?);

        // ε decreases along the grid, so t0 at fixed δ must decrease too.
        let t0 = t0_lower_bound(&BoundParams::new(eps.clone(), delta0.clone())?);
        if let Some(prev) = prev_t0.replace(t0.clone()) {
            record(4, q, prev > t0);
        }

        let ambro = ambro_example_t(q)?;
        record(5, q, mu2 < ambro);
        let ratio = &ambro * rat(400, 3) * rat((q * q * q) as i64, 1);
        record(6, q, ratio > Rat::one() && ratio < rat(140, 1));
    }

    Ok(GridReport {
        q_min: Q_MIN,
        q_max,
        checks: checks
            .into_iter()
            .map(|(name, first_failure_q)| GridCheck {
                name,
                pass: first_failure_q.is_none(),
                first_failure_q,
            })
            .collect(),
    })
}

/// Exploratory helper (not a quoted formula): maximizes [`t0_lower_bound`]
/// over `δ ∈ {1/grid, 2/grid, ...} ∩ (0, ε)` and returns `(δ*, t₀(δ*))`.
pub fn t0_optimize(epsilon: &Rat, grid: u64) -> Result<(Rat, Rat)> {
    if epsilon <= &Rat::zero() || epsilon >= &Rat::one() {
        return Err(Error::ParamRange {
            name: "epsilon",
            value: format_rat(epsilon),
            range: "0 < epsilon < 1",
        });
    }
    let mut best: Option<(Rat, Rat)> = None;
    for j in 1..grid {
        let delta = Rat::new(BigInt::from(j), BigInt::from(grid));
        if &delta >= epsilon {
            break;
        }
        let value = t0_lower_bound(&BoundParams::new(epsilon.clone(), delta.clone())?);
        if best.as_ref().is_none_or(|(_, b)| &value > b) {
            best = Some((delta, value));
        }
    }
    best.ok_or(Error::ParamRange {
        name: "grid",
        value: grid.to_string(),
        range: "must admit a grid point below epsilon",
    })
}
