//! Hirzebruch–Jung continued fractions and cyclic quotient singularities.
//!
//! The minimal resolution of the cyclic quotient singularity `(1/n)(1, a)`
//! is a chain of rational curves whose weights are the entries of the
//! Hirzebruch–Jung expansion `n/a = m_1 - 1/(m_2 - 1/(...))` with all
//! `m_i ≥ 2`. These chains tie the continued-fraction arithmetic to the
//! determinant calculus: Δ of the chain recovers `n`.

use crate::dualgraph::DualGraph;
use crate::rat::Rat;
use crate::{Error, Result};

/// The cyclic quotient singularity `(1/n)(1, a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicQuotient {
    n: u64,
    a: u64,
}

impl CyclicQuotient {
    /// Requires `n ≥ 2`, `1 ≤ a < n`, and `gcd(a, n) = 1`.
    pub fn new(n: u64, a: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ParamRange {
                name: "n",
                value: n.to_string(),
                range: "n >= 2",
            });
        }
        if a < 1 || a >= n || num_integer::gcd(a, n) != 1 {
            return Err(Error::ParamRange {
                name: "a",
                value: a.to_string(),
                range: "1 <= a < n with gcd(a, n) = 1",
            });
        }
        Ok(CyclicQuotient { n, a })
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn weight(&self) -> u64 {
        self.a
    }

    /// Hirzebruch–Jung expansion of `n/a`: the unique continued fraction
    /// `n/a = m_1 - 1/(m_2 - 1/(...))` with every `m_i ≥ 2`.
    pub fn hj_expansion(&self) -> Vec<i64> {
        let (mut n, mut a) = (self.n, self.a);
        let mut expansion = Vec::new();
        while a > 0 {
            let m = n.div_ceil(a);
            expansion.push(m as i64);
            (n, a) = (a, m * a - n);
        }
        expansion
    }

    /// The resolution chain: weights from [`Self::hj_expansion`], consecutive
    /// vertices joined.
    pub fn chain_graph(&self) -> DualGraph {
        DualGraph::chain(&self.hj_expansion()).expect("expansion of n/a with a >= 1 is nonempty")
    }

    /// Evaluates the expansion back into a rational; always returns `n/a`.
    pub fn reconstruct(&self) -> Rat {
        let mut value = Rat::from_integer(0.into());
        for &m in self.hj_expansion().iter().rev() {
            // x -> m - 1/x, seeded with the last entry.
            value = if value == Rat::from_integer(0.into()) {
                Rat::from_integer(m.into())
            } else {
                Rat::from_integer(m.into()) - value.recip()
            };
        }
        value
    }
}
