//! Seeded random polynomials for property checks and test corpora.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};
use crate::ring::Ring;

pub struct PolyGen {
    rng: ChaCha8Rng,
}

impl PolyGen {
    pub fn new(seed: u64) -> Self {
        PolyGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn monomial(&mut self, arity: usize, degree: u32) -> Monomial {
        let mut e = vec![0u32; arity];
        for _ in 0..degree {
            e[self.rng.gen_range(0..arity)] += 1;
        }
        Monomial::from_exponents(&e)
    }

    fn coeff(&mut self) -> i64 {
        let c = self.rng.gen_range(1..=3);
        if self.rng.gen_bool(0.5) {
            -c
        } else {
            c
        }
    }

    /// A nonzero polynomial with at most `max_terms` terms of degrees `min_degree..=max_degree`.
    pub fn polynomial(&mut self, ring: &Arc<Ring>, min_degree: u32, max_degree: u32, max_terms: usize) -> Polynomial {
        let field = ring.field();
        loop {
            let k = self.rng.gen_range(1..=max_terms.max(1));
            let terms: Vec<Term> = (0..k)
                .map(|_| {
                    let d = self.rng.gen_range(min_degree..=max_degree);
                    Term {
                        coeff: field.from_i64(self.coeff()),
                        mono: self.monomial(ring.arity(), d),
                    }
                })
                .collect();
            let p = Polynomial::from_terms(ring, terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Generators of a proper ideal: no constant terms.
    pub fn ideal_generators(&mut self, ring: &Arc<Ring>, count: usize, max_degree: u32, max_terms: usize) -> Vec<Polynomial> {
        (0..count)
            .map(|_| self.polynomial(ring, 1, max_degree.max(1), max_terms))
            .collect()
    }

    /// `Σ r_i g_i` with random multipliers of degree at most `max_degree`; never zero.
    pub fn combination(&mut self, gens: &[Polynomial], max_degree: u32) -> Polynomial {
        let ring = gens[0].ring().clone();
        loop {
            let mut acc = Polynomial::zero(&ring);
            for g in gens {
                if self.rng.gen_bool(0.6) {
                    let r = self.polynomial(&ring, 0, max_degree, 2);
                    acc = &acc + &(&r * g);
                }
            }
            if !acc.is_zero() {
                return acc;
            }
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }
}
