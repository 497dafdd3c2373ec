//! Gröbner bases and the ideal calculus built on them.

mod bucket;
mod engine;
mod ideal;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

pub use engine::Truncation;
pub use ideal::{kernel_of_ring_map, Ideal};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub pairs_formed: u64,
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub max_degree: u32,
}

/// Resource guards shared by every Gröbner run of one computation, plus
/// running totals of the engine statistics.
#[derive(Debug)]
pub struct Budget {
    pub degree_bound: Option<u32>,
    deadline: Option<Instant>,
    runs: AtomicU64,
    pairs_formed: AtomicU64,
    pairs_reduced: AtomicU64,
    zero_reductions: AtomicU64,
    max_degree: AtomicU64,
}

pub const DEFAULT_DEGREE_BOUND: u32 = 60;

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Some(DEFAULT_DEGREE_BOUND), None)
    }
}

impl Budget {
    pub fn new(degree_bound: Option<u32>, timeout: Option<Duration>) -> Self {
        Budget {
            degree_bound,
            deadline: timeout.map(|t| Instant::now() + t),
            runs: AtomicU64::new(0),
            pairs_formed: AtomicU64::new(0),
            pairs_reduced: AtomicU64::new(0),
            zero_reductions: AtomicU64::new(0),
            max_degree: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(None, None)
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn record(&self, s: &EngineStats) {
        self.runs.fetch_add(1, Ordering::Relaxed);
        self.pairs_formed.fetch_add(s.pairs_formed, Ordering::Relaxed);
        self.pairs_reduced.fetch_add(s.pairs_reduced, Ordering::Relaxed);
        self.zero_reductions.fetch_add(s.zero_reductions, Ordering::Relaxed);
        self.max_degree.fetch_max(s.max_degree as u64, Ordering::Relaxed);
    }

    /// Number of Gröbner runs and accumulated statistics so far.
    pub fn totals(&self) -> (u64, EngineStats) {
        (
            self.runs.load(Ordering::Relaxed),
            EngineStats {
                pairs_formed: self.pairs_formed.load(Ordering::Relaxed),
                pairs_reduced: self.pairs_reduced.load(Ordering::Relaxed),
                zero_reductions: self.zero_reductions.load(Ordering::Relaxed),
                max_degree: self.max_degree.load(Ordering::Relaxed) as u32,
            },
        )
    }
}

/// Reduced Gröbner basis: monic, interreduced, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub(crate) ring: Arc<Ring>,
    pub(crate) elements: Vec<Polynomial>,
    pub(crate) stats: EngineStats,
    pub(crate) truncated: bool,
}

impl GroebnerBasis {
    pub fn compute(ring: &Arc<Ring>, gens: &[Polynomial], budget: &Budget) -> Result<Self> {
        engine::compute(ring, gens, budget, None)
    }

    /// Degree-truncated basis of a homogeneous input (see [`Truncation`]).
    pub fn compute_truncated(
        ring: &Arc<Ring>,
        gens: &[Polynomial],
        truncation: &Truncation,
        budget: &Budget,
    ) -> Result<Self> {
        for g in gens {
            if !g.is_homogeneous(&truncation.weights) {
                return Err(Error::precondition("truncated basis needs homogeneous input"));
            }
        }
        engine::compute(ring, gens, budget, Some(truncation))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn stats(&self) -> &EngineStats {
        &self.stats
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(|g| g.is_unit())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(engine::normal_form(&self.ring, f, &self.elements))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Normal form with respect to an arbitrary list (not necessarily a Gröbner basis).
pub fn reduce_by(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    engine::normal_form(f.ring(), f, divisors)
}
