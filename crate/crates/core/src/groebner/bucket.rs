//! Geobuckets: a polynomial kept as a few sorted term lists of geometrically
//! growing length, so that repeated `p − c·q·g` updates cost about `|g|·log|p|`.

use std::cmp::Ordering;

use crate::field::{Coeff, Field};
use crate::monomial::Monomial;
use crate::poly::Term;
use crate::ring::Ring;

/// Each bucket is sorted ascending, so its largest term sits at the end.
pub(crate) struct Geobucket<'a> {
    ring: &'a Ring,
    field: Field,
    buckets: Vec<Vec<Term>>,
}

fn capacity(level: usize) -> usize {
    16usize << (2 * level)
}

impl<'a> Geobucket<'a> {
    /// From terms in descending order.
    pub(crate) fn new(ring: &'a Ring, field: Field, mut desc: Vec<Term>) -> Self {
        desc.reverse();
        let mut g = Geobucket {
            ring,
            field,
            buckets: Vec::new(),
        };
        g.place(desc);
        g
    }

    /// Adds `−c·q·tail`, `tail` in descending order.
    pub(crate) fn sub_scaled(&mut self, c: &Coeff, q: &Monomial, tail: &[Term]) {
        let field = self.field;
        let v: Vec<Term> = tail
            .iter()
            .rev()
            .map(|t| Term {
                coeff: field.neg(&field.mul(&t.coeff, c)),
                mono: t.mono.mul(q),
            })
            .collect();
        self.place(v);
    }

    fn place(&mut self, mut v: Vec<Term>) {
        if v.is_empty() {
            return;
        }
        let mut i = 0;
        while capacity(i) < v.len() {
            i += 1;
        }
        loop {
            if self.buckets.len() <= i {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            if self.buckets[i].is_empty() {
                self.buckets[i] = v;
                return;
            }
            let b = std::mem::take(&mut self.buckets[i]);
            v = merge_ascending(self.ring, self.field, b, v);
            if v.len() <= capacity(i) {
                self.buckets[i] = v;
                return;
            }
            i += 1;
        }
    }

    /// Removes and returns the leading term, or `None` when the sum is zero.
    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        loop {
            let mut best: Option<usize> = None;
            for (i, b) in self.buckets.iter().enumerate() {
                let Some(t) = b.last() else { continue };
                best = match best {
                    None => Some(i),
                    Some(j) => {
                        let cur = &self.buckets[j].last().unwrap().mono;
                        if self.ring.cmp(&t.mono, cur) == Ordering::Greater {
                            Some(i)
                        } else {
                            Some(j)
                        }
                    }
                };
            }
            let j = best?;
            let mut lead = self.buckets[j].pop().unwrap();
            for i in 0..self.buckets.len() {
                if i == j {
                    continue;
                }
                if let Some(t) = self.buckets[i].pop_if(|t| t.mono == lead.mono) {
                    lead.coeff = self.field.add(&lead.coeff, &t.coeff);
                }
            }
            if !self.field.is_zero(&lead.coeff) {
                return Some(lead);
            }
        }
    }

    /// All remaining terms, descending.
    pub(crate) fn into_descending(self) -> Vec<Term> {
        let ring = self.ring;
        let field = self.field;
        let mut acc: Vec<Term> = Vec::new();
        for b in self.buckets {
            if !b.is_empty() {
                acc = merge_ascending(ring, field, acc, b);
            }
        }
        acc.reverse();
        acc
    }
}

fn merge_ascending(ring: &Ring, field: Field, a: Vec<Term>, b: Vec<Term>) -> Vec<Term> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let ord = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => ring.cmp(&x.mono, &y.mono),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match ord {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => out.push(ib.next().unwrap()),
            Ordering::Equal => {
                let x = ia.next().unwrap();
                let y = ib.next().unwrap();
                let c = field.add(&x.coeff, &y.coeff);
                if !field.is_zero(&c) {
                    out.push(Term { coeff: c, mono: x.mono });
                }
            }
        }
    }
    out
}
