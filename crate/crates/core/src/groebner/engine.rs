//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer–Möller installation of the product and chain criteria.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{AbortReason, Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};
use crate::ring::Ring;

use super::bucket::Geobucket;
use super::{Budget, EngineStats, GroebnerBasis};

/// Restricts the computation to S-pairs of weighted degree at most `max`.
/// Only meaningful for inputs homogeneous with respect to `weights`; the
/// result then reduces every homogeneous ideal member of degree `<= max` to zero.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub weights: Vec<u32>,
    pub max: u64,
}

struct Elem {
    poly: Polynomial,
    lm: Monomial,
    mask: u64,
    sugar: u32,
    active: bool,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    sugar: u32,
    degree: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

struct Engine<'a> {
    ring: &'a Arc<Ring>,
    field: Field,
    budget: &'a Budget,
    truncation: Option<&'a Truncation>,
    basis: Vec<Elem>,
    pairs: BTreeSet<Pair>,
    stats: EngineStats,
}

impl<'a> Engine<'a> {
    fn abort(&self, reason: AbortReason) -> Error {
        self.budget.record(&self.stats);
        Error::Aborted {
            reason,
            stats: self.stats.clone(),
        }
    }

    fn tick(&self) -> Result<()> {
        if self.budget.expired() {
            return Err(self.abort(AbortReason::Timeout));
        }
        Ok(())
    }

    fn find_reducer(&self, m: &Monomial, mask: u64) -> Option<usize> {
        self.basis
            .iter()
            .position(|e| e.active && e.mask & !mask == 0 && e.lm.divides(m))
    }

    /// Reduces the leading term until it is irreducible; the result is monic (or
    /// zero). Tails are left alone until the final interreduction.
    fn reduce(&mut self, p: Polynomial) -> Result<Polynomial> {
        let ring = self.ring;
        let mut acc = Geobucket::new(ring, self.field, p.into_terms());
        while let Some(lead) = acc.pop_leading() {
            match self.find_reducer(&lead.mono, lead.mono.support_mask()) {
                Some(k) => {
                    self.tick()?;
                    let e = &self.basis[k];
                    let q = e.lm.quotient_of(&lead.mono).expect("divides");
                    acc.sub_scaled(&lead.coeff, &q, &e.poly.terms()[1..]);
                }
                None => {
                    let mut out = vec![lead];
                    out.extend(acc.into_descending());
                    return Ok(Polynomial::from_sorted(ring, out).monic());
                }
            }
        }
        Ok(Polynomial::zero(ring))
    }

    fn spoly(&self, pair: &Pair) -> Polynomial {
        let a = &self.basis[pair.i];
        let b = &self.basis[pair.j];
        let one = self.field.one();
        let qa = a.lm.quotient_of(&pair.lcm).expect("lcm");
        let qb = b.lm.quotient_of(&pair.lcm).expect("lcm");
        // both monic: leading terms cancel
        let ta = &a.poly.terms()[1..];
        let tb = &b.poly.terms()[1..];
        let left: Vec<Term> = ta
            .iter()
            .map(|t| Term {
                coeff: t.coeff.clone(),
                mono: t.mono.mul(&qa),
            })
            .collect();
        let terms = sub_tail(self.ring, self.field, &left, &one, &qb, tb);
        Polynomial::from_sorted(self.ring, terms)
    }

    fn make_pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let lcm = a.lm.lcm(&b.lm);
        let deg = lcm.degree();
        let sugar = (a.sugar + deg - a.lm.degree()).max(b.sugar + deg - b.lm.degree());
        Pair {
            sugar,
            degree: deg,
            lcm,
            i: i.min(j),
            j: i.max(j),
        }
    }

    fn within_truncation(&self, lcm: &Monomial) -> bool {
        match self.truncation {
            None => true,
            Some(t) => lcm.weighted_degree(&t.weights) <= t.max,
        }
    }

    /// Gebauer–Möller update for a new monic element.
    fn insert(&mut self, poly: Polynomial, sugar: u32) {
        let lm = poly.leading_monomial().expect("nonzero").clone();
        self.stats.max_degree = self.stats.max_degree.max(poly.total_degree().unwrap_or(0));
        let k = self.basis.len();
        self.basis.push(Elem {
            mask: lm.support_mask(),
            lm: lm.clone(),
            poly,
            sugar,
            active: true,
        });

        let mut candidates: Vec<Pair> = (0..k)
            .filter(|&i| self.basis[i].active)
            .map(|i| self.make_pair(i, k))
            .collect();
        self.stats.pairs_formed += candidates.len() as u64;

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = candidates.pop() {
            let other = if p.i == k { p.j } else { p.i };
            let coprime = self.basis[other].lm.is_coprime(&lm);
            let dominated = candidates.iter().any(|q| q.lcm.divides(&p.lcm))
                || kept.iter().any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            }
        }
        // product criterion
        kept.retain(|p| {
            let other = if p.i == k { p.j } else { p.i };
            !self.basis[other].lm.is_coprime(&lm)
        });

        // criterion B on the old pairs
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !lm.divides(&p.lcm) {
                return true;
            }
            let lik = basis[p.i].lm.lcm(&lm);
            let ljk = basis[p.j].lm.lcm(&lm);
            lik == p.lcm || ljk == p.lcm
        });
        for p in kept {
            if self.within_truncation(&p.lcm) {
                self.pairs.insert(p);
            }
        }

        for i in 0..k {
            if self.basis[i].active && lm.divides(&self.basis[i].lm) {
                self.basis[i].active = false;
            }
        }
    }

    fn check_degree(&self, needed: u32) -> Result<()> {
        if let Some(bound) = self.budget.degree_bound {
            if needed > bound {
                return Err(self.abort(AbortReason::DegreeBound { bound, needed }));
            }
        }
        Ok(())
    }

    fn run(mut self, gens: &[Polynomial]) -> Result<GroebnerBasis> {
        let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
        input.sort_by(|a, b| {
            self.ring
                .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        });
        for g in input {
            let d = g.total_degree().unwrap_or(0);
            self.check_degree(d)?;
            let sugar = d;
            let h = self.reduce(g)?;
            if !h.is_zero() {
                self.insert(h, sugar);
            }
        }
        while let Some(pair) = self.pairs.pop_first() {
            if self.budget.expired() {
                return Err(self.abort(AbortReason::Timeout));
            }
            self.check_degree(pair.degree)?;
            let s = self.spoly(&pair);
            self.stats.pairs_reduced += 1;
            let h = self.reduce(s)?;
            if h.is_zero() {
                self.stats.zero_reductions += 1;
            } else {
                self.insert(h, pair.sugar);
            }
        }
        let elements = self.interreduce()?;
        self.budget.record(&self.stats);
        Ok(GroebnerBasis {
            ring: self.ring.clone(),
            elements,
            stats: self.stats,
            truncated: self.truncation.is_some(),
        })
    }

    fn interreduce(&mut self) -> Result<Vec<Polynomial>> {
        let mut idx: Vec<usize> = (0..self.basis.len()).filter(|&i| self.basis[i].active).collect();
        idx.sort_by(|&a, &b| self.ring.cmp(&self.basis[a].lm, &self.basis[b].lm));
        let mut polys = Vec::with_capacity(idx.len());
        for &i in &idx {
            // reduce the tail only: temporarily hide the element itself
            self.basis[i].active = false;
            let p = self.basis[i].poly.clone();
            let lead = p.terms()[0].clone();
            let tail = Polynomial::from_sorted(self.ring, p.terms()[1..].to_vec());
            let tail = self.reduce_keep_scale(tail)?;
            let mut terms = vec![lead];
            terms.extend(tail.into_terms());
            self.basis[i].active = true;
            polys.push(Polynomial::from_sorted(self.ring, terms));
        }
        Ok(polys)
    }

    /// Full reduction without normalising the result.
    fn reduce_keep_scale(&mut self, p: Polynomial) -> Result<Polynomial> {
        let ring = self.ring;
        let mut acc = Geobucket::new(ring, self.field, p.into_terms());
        let mut out: Vec<Term> = Vec::new();
        while let Some(lead) = acc.pop_leading() {
            match self.find_reducer(&lead.mono, lead.mono.support_mask()) {
                Some(k) => {
                    self.tick()?;
                    let e = &self.basis[k];
                    let q = e.lm.quotient_of(&lead.mono).expect("divides");
                    acc.sub_scaled(&lead.coeff, &q, &e.poly.terms()[1..]);
                }
                None => out.push(lead),
            }
        }
        Ok(Polynomial::from_sorted(ring, out))
    }
}

/// `a - c*q*b` for sorted term slices.
fn sub_tail(ring: &Ring, field: Field, a: &[Term], c: &Coeff, q: &Monomial, b: &[Term]) -> Vec<Term> {
    use std::cmp::Ordering;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let next_b = |j: usize| Term {
        coeff: field.neg(&field.mul(&b[j].coeff, c)),
        mono: b[j].mono.mul(q),
    };
    let mut pending: Option<Term> = if b.is_empty() { None } else { Some(next_b(0)) };
    while i < a.len() {
        let Some(tb) = pending.take() else { break };
        match ring.cmp(&a[i].mono, &tb.mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some(tb);
            }
            Ordering::Less => {
                out.push(tb);
                j += 1;
                pending = if j < b.len() { Some(next_b(j)) } else { None };
            }
            Ordering::Equal => {
                let s = field.add(&a[i].coeff, &tb.coeff);
                if !field.is_zero(&s) {
                    out.push(Term {
                        coeff: s,
                        mono: tb.mono,
                    });
                }
                i += 1;
                j += 1;
                pending = if j < b.len() { Some(next_b(j)) } else { None };
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    if let Some(tb) = pending {
        out.push(tb);
        j += 1;
        while j < b.len() {
            out.push(next_b(j));
            j += 1;
        }
    }
    out
}

use crate::field::Coeff;

pub(crate) fn compute(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    budget: &Budget,
    truncation: Option<&Truncation>,
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let engine = Engine {
        ring,
        field: ring.field(),
        budget,
        truncation,
        basis: Vec::new(),
        pairs: BTreeSet::new(),
        stats: EngineStats::default(),
    };
    engine.run(gens)
}

/// Normal form of `f` with respect to a list of monic polynomials, scaled so that
/// `f - result` lies in the ideal (no normalisation of the result).
pub(crate) fn normal_form(ring: &Arc<Ring>, f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let field = ring.field();
    let lms: Vec<(&Monomial, u64, &Polynomial)> = basis
        .iter()
        .filter_map(|g| g.leading_monomial().map(|m| (m, m.support_mask(), g)))
        .collect();
    let mut acc = Geobucket::new(ring, field, f.terms().to_vec());
    let mut out = Vec::new();
    while let Some(lead) = acc.pop_leading() {
        let mask = lead.mono.support_mask();
        let hit = lms.iter().find(|(m, mk, _)| mk & !mask == 0 && m.divides(&lead.mono));
        match hit {
            Some((m, _, g)) => {
                let q = m.quotient_of(&lead.mono).expect("divides");
                let lc = g.leading_coeff().expect("nonzero");
                let c = field.div(&lead.coeff, lc).expect("nonzero leading coefficient");
                acc.sub_scaled(&c, &q, &g.terms()[1..]);
            }
            None => out.push(lead),
        }
    }
    Polynomial::from_sorted(ring, out)
}
