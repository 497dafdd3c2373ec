//! Dense exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of fixed length (the arity of the ambient ring).
/// Derived `Ord` is the plain lexicographic comparison of exponent vectors
/// (the cached degree is a function of the exponents).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 14]>,
    deg: u32,
}

impl Monomial {
    fn make(exps: SmallVec<[u32; 14]>) -> Self {
        let deg = exps
            .iter()
            .try_fold(0u32, |a, &e| a.checked_add(e))
            .expect("degree overflow");
        Monomial { exps, deg }
    }

    pub fn one(arity: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, arity),
            deg: 0,
        }
    }

    pub fn var(arity: usize, index: usize, exp: u32) -> Self {
        let mut exps = SmallVec::from_elem(0, arity);
        exps[index] = exp;
        Monomial { exps, deg: exp }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial::make(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
            deg: self.deg.checked_add(other.deg).expect("degree overflow"),
        }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|a| a.checked_mul(e).expect("exponent overflow"))
                .collect(),
            deg: self.deg.checked_mul(e).expect("degree overflow"),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.arity());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a > b {
                return None;
            }
            exps.push(b - a);
        }
        Some(Monomial {
            exps,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::make(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::make(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set when variable `i mod 64` occurs; used for fast non-divisibility tests.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | 1 << (i % 64))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Re-indexes into a ring of `arity` variables: variable `i` moves to `map[i]`.
    pub fn remap(&self, map: &[usize], arity: usize) -> Monomial {
        let mut exps = SmallVec::from_elem(0, arity);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] += e;
            }
        }
        Monomial { exps, deg: self.deg }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// The first `block` variables are eliminated: degrevlex on that block
    /// decides first, degrevlex on the remaining variables breaks ties.
    Elimination { block: usize },
    /// Weighted degree first, degrevlex on ties.
    Weighted { weights: Vec<u32> },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

/// Reverse lexicographic tie-break for equal degrees.
fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a.deg.cmp(&b.deg).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination { block } => {
                let (ha, hb) = (&a.exps[..*block], &b.exps[..*block]);
                let (sa, sb): (u32, u32) = (ha.iter().sum(), hb.iter().sum());
                sa.cmp(&sb)
                    .then_with(|| revlex(ha, hb))
                    .then_with(|| (a.deg - sa).cmp(&(b.deg - sb)))
                    .then_with(|| revlex(&a.exps[*block..], &b.exps[*block..]))
            }
            MonomialOrder::Weighted { weights } => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| degrevlex(&a.exps, &b.exps)),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::DegRevLex => "degrevlex".into(),
            MonomialOrder::Elimination { block } => format!("elim({block})"),
            MonomialOrder::Weighted { weights } => format!("weighted{weights:?}"),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
