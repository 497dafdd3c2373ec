//! Sparse multivariate polynomials in canonical form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::monomial::Monomial;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Terms are nonzero, duplicate free and strictly descending in the ring order.
/// The zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Coeff) -> Self {
        Polynomial::monomial(ring, c, ring.one_monomial())
    }

    pub fn from_int(ring: &Arc<Ring>, v: i64) -> Self {
        Polynomial::constant(ring, ring.field().from_i64(v))
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Polynomial::from_int(ring, 1)
    }

    pub fn monomial(ring: &Arc<Ring>, c: Coeff, mono: Monomial) -> Self {
        assert_eq!(mono.arity(), ring.arity(), "monomial arity mismatch");
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![Term { coeff: c, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Polynomial::monomial(ring, ring.field().one(), Monomial::var(ring.arity(), index, 1))
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Option<Self> {
        ring.var_index(name).map(|i| Polynomial::var(ring, i))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = Term>) -> Self {
        let field = ring.field();
        let mut terms: Vec<Term> = terms.into_iter().collect();
        terms.sort_by(|a, b| ring.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = field.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !field.is_zero(&t.coeff));
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// The caller guarantees canonical form.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].mono.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Maximal total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.exp(var)).max()
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exp(var) > 0)
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.arity()).filter(|&i| self.uses_var(i)).collect()
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.neg(&t.coeff),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// Multiplication by the term `c * m`; order is preserved since monomial orders are multiplicative.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: field.mul(&t.coeff, c),
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc).expect("nonzero leading coefficient")),
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let field = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &Coeff| if negate_other { field.neg(c) } else { c.clone() };
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: sign(&b[j].coeff),
                        mono: b[j].mono.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        field.sub(&a[i].coeff, &b[j].coeff)
                    } else {
                        field.add(&a[i].coeff, &b[j].coeff)
                    };
                    if !field.is_zero(&c) {
                        out.push(Term {
                            coeff: c,
                            mono: a[i].mono.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| Term {
            coeff: sign(&t.coeff),
            mono: t.mono.clone(),
        }));
        Polynomial::from_sorted(ring, out)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        same_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let t = &small.terms[0];
            return Ok(large.mul_term(&t.coeff, &t.mono));
        }
        let field = self.field();
        let mut acc: Vec<Term> = Vec::with_capacity(self.len() * other.len());
        for a in &small.terms {
            for b in &large.terms {
                acc.push(Term {
                    coeff: field.mul(&a.coeff, &b.coeff),
                    mono: a.mono.mul(&b.mono),
                });
            }
        }
        Ok(Polynomial::from_terms(&self.ring, acc))
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self - c*m*g`, the elementary reduction step.
    pub(crate) fn sub_scaled(&self, c: &Coeff, m: &Monomial, g: &Polynomial) -> Polynomial {
        self.merge(&g.mul_term(c, m), true)
    }

    /// Ring-homomorphism image: variable `i` goes to `images[i]`, all in `target`.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Option<Polynomial>]) -> Result<Polynomial> {
        for img in images.iter().flatten() {
            same_ring(img.ring(), target)?;
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![Vec::new(); self.ring.arity()];
        let mut acc = Polynomial::zero(target);
        let field = target.field();
        for t in &self.terms {
            let coeff = convert_coeff(self.field(), field, &t.coeff)?;
            let mut prod = Polynomial::constant(target, coeff);
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images
                    .get(i)
                    .and_then(|x| x.as_ref())
                    .ok_or_else(|| Error::UnmappedVariable(self.ring.vars()[i].clone()))?;
                let cache = &mut powers[i];
                if cache.is_empty() {
                    cache.push(Polynomial::one(target));
                }
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * img;
                    cache.push(next);
                }
                prod = &prod * &cache[e as usize];
            }
            acc = &acc + &prod;
        }
        Ok(acc)
    }

    pub fn substitute_named(
        &self,
        target: &Arc<Ring>,
        map: &BTreeMap<String, Polynomial>,
    ) -> Result<Polynomial> {
        let images: Vec<Option<Polynomial>> =
            self.ring.vars().iter().map(|v| map.get(v).cloned()).collect();
        self.substitute(target, &images)
    }

    /// Moves the polynomial into `target`, matching variables by name and re-sorting.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        let mut map = Vec::with_capacity(self.ring.arity());
        for (i, v) in self.ring.vars().iter().enumerate() {
            match target.var_index(v) {
                Some(j) => map.push(j),
                None if !self.uses_var(i) => map.push(usize::MAX),
                None => return Err(Error::UnmappedVariable(v.clone())),
            }
        }
        let src = self.field();
        let dst = target.field();
        let arity = target.arity();
        let mut terms = Vec::with_capacity(self.len());
        for t in &self.terms {
            let mut m = Monomial::one(arity);
            if !t.mono.is_one() {
                let support: Vec<usize> = t.mono.support().collect();
                let mut exps = vec![0u32; arity];
                for i in support {
                    exps[map[i]] += t.mono.exp(i);
                }
                m = Monomial::from_exponents(&exps);
            }
            terms.push(Term {
                coeff: convert_coeff(src, dst, &t.coeff)?,
                mono: m,
            });
        }
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Weighted degree; `None` stands for the degree of zero (minus infinity).
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u64> {
        self.terms.iter().map(|t| t.mono.weighted_degree(weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut degs = self.terms.iter().map(|t| t.mono.weighted_degree(weights));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogeneous pieces in strictly increasing degree; they sum to `self`.
    pub fn homogeneous_components(&self, weights: &[u32]) -> Vec<(u64, Polynomial)> {
        let mut buckets: BTreeMap<u64, Vec<Term>> = BTreeMap::new();
        for t in &self.terms {
            buckets
                .entry(t.mono.weighted_degree(weights))
                .or_default()
                .push(t.clone());
        }
        buckets
            .into_iter()
            .map(|(d, ts)| (d, Polynomial::from_sorted(&self.ring, ts)))
            .collect()
    }

    /// Coefficients with respect to `var`: pairs `(e, c_e)` with `self = Σ c_e var^e`.
    pub fn coefficients_in(&self, var: usize) -> Vec<(u32, Polynomial)> {
        let mut buckets: BTreeMap<u32, Vec<Term>> = BTreeMap::new();
        for t in &self.terms {
            let e = t.mono.exp(var);
            let mut exps = t.mono.exponents().to_vec();
            exps[var] = 0;
            buckets.entry(e).or_default().push(Term {
                coeff: t.coeff.clone(),
                mono: Monomial::from_exponents(&exps),
            });
        }
        buckets
            .into_iter()
            .map(|(e, ts)| (e, Polynomial::from_terms(&self.ring, ts)))
            .collect()
    }

    /// Multivariate division by a list: `self = Σ q_i d_i + r` with no term of `r`
    /// divisible by a leading monomial of the divisors.
    pub fn divide(&self, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
        for d in divisors {
            same_ring(&self.ring, d.ring())?;
        }
        let field = self.field();
        let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
        let mut rem: Vec<Term> = Vec::new();
        let mut p = self.clone();
        while let Some(lt) = p.leading_term().cloned() {
            let hit = divisors.iter().enumerate().find_map(|(i, d)| {
                let lm = d.leading_monomial()?;
                lm.quotient_of(&lt.mono).map(|q| (i, q))
            });
            match hit {
                Some((i, q)) => {
                    let d = &divisors[i];
                    let c = field.div(&lt.coeff, d.leading_coeff().unwrap())?;
                    p = p.sub_scaled(&c, &q, d);
                    quotients[i].push(Term { coeff: c, mono: q });
                }
                None => {
                    rem.push(lt);
                    p.terms.remove(0);
                }
            }
        }
        Ok((
            quotients
                .into_iter()
                .map(|q| Polynomial::from_terms(&self.ring, q))
                .collect(),
            Polynomial::from_sorted(&self.ring, rem),
        ))
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut q, r) = self.divide(std::slice::from_ref(d))?;
        Ok(if r.is_zero() { Some(q.remove(0)) } else { None })
    }

    /// Canonical string, e.g. `x^2*y-3/4*x+1`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn convert_coeff(src: Field, dst: Field, c: &Coeff) -> Result<Coeff> {
    if src == dst {
        return Ok(c.clone());
    }
    dst.from_rational(&src.to_rational(c))
}

pub fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = field.is_negative(&t.coeff);
            let abs = if neg { field.neg(&t.coeff) } else { t.coeff.clone() };
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let mono = format_monomial(&t.mono, self.ring.vars());
            if mono.is_empty() {
                write!(f, "{}", field.fmt_coeff(&abs))?;
            } else if field.is_one(&abs) {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", field.fmt_coeff(&abs), mono)?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$m(self, rhs).expect("ring mismatch")
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    fn ring(field: Field) -> Arc<Ring> {
        Ring::new(field, ["x", "y", "t1", "t2"], MonomialOrder::DegRevLex).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        crate::parse::parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn cancellation_and_identity() {
        let r = ring(Field::Rational);
        assert_eq!(&p(&r, "x+y") + &p(&r, "x-y"), p(&r, "2*x"));
        assert_eq!(&p(&r, "x-y") * &p(&r, "x+y"), p(&r, "x^2-y^2"));
        assert!((&p(&r, "x") - &p(&r, "x")).is_zero());
    }

    #[test]
    fn frobenius_in_characteristic_two() {
        let r = ring(Field::Prime(2));
        assert_eq!(p(&r, "x+y").pow(2), p(&r, "x^2+y^2"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(Field::Rational);
        let b = ring(Field::Prime(5));
        assert!(matches!(p(&a, "x").add(&p(&b, "x")), Err(Error::RingMismatch)));
    }

    #[test]
    fn substitution_examples() {
        let r = Ring::new(Field::Rational, ["x", "y"], MonomialOrder::DegRevLex).unwrap();
        let s = Ring::new(Field::Rational, ["t"], MonomialOrder::DegRevLex).unwrap();
        let f = p(&r, "x^3-y^2");
        let img = vec![Some(p(&s, "t^2")), Some(p(&s, "t^3"))];
        assert!(f.substitute(&s, &img).unwrap().is_zero());

        let big = Ring::new(Field::Rational, ["x", "y", "t1", "t2", "u"], MonomialOrder::DegRevLex).unwrap();
        let g = p(&big, "y*t1-x*t2");
        let img: Vec<_> = ["x", "y", "u*x", "u*y", "u"].iter().map(|s| Some(p(&big, s))).collect();
        assert!(g.substitute(&big, &img).unwrap().is_zero());

        let ident = vec![Some(p(&r, "x")), Some(p(&r, "y"))];
        assert_eq!(p(&r, "x").substitute(&r, &ident).unwrap(), p(&r, "x"));
        let partial = vec![Some(p(&r, "x")), None];
        assert!(matches!(
            p(&r, "x*y").substitute(&r, &partial),
            Err(Error::UnmappedVariable(v)) if v == "y"
        ));
    }

    #[test]
    fn grading() {
        let r = ring(Field::Rational);
        let w = [0, 0, 1, 1];
        assert_eq!(p(&r, "y*t1-x*t2").weighted_degree(&w), Some(1));
        assert_eq!(Polynomial::zero(&r).weighted_degree(&w), None);
        let f = p(&r, "t1^2+x*t2+x^2");
        let comps = f.homogeneous_components(&w);
        let degs: Vec<u64> = comps.iter().map(|c| c.0).collect();
        assert_eq!(degs, vec![0, 1, 2]);
        assert_eq!(comps[0].1, p(&r, "x^2"));
        assert_eq!(comps[1].1, p(&r, "x*t2"));
        assert_eq!(comps[2].1, p(&r, "t1^2"));
        assert!(!f.is_homogeneous(&w));
    }

    #[test]
    fn division() {
        let r = ring(Field::Rational);
        let (q, rem) = p(&r, "x^2*y+x*y^2+y^2").divide(&[p(&r, "x*y-1"), p(&r, "y^2-1")]).unwrap();
        let back = &(&(&q[0] * &p(&r, "x*y-1")) + &(&q[1] * &p(&r, "y^2-1"))) + &rem;
        assert_eq!(back, p(&r, "x^2*y+x*y^2+y^2"));
        assert_eq!(p(&r, "x^2-y^2").div_exact(&p(&r, "x+y")).unwrap(), Some(p(&r, "x-y")));
        assert_eq!(p(&r, "x^2+y^2").div_exact(&p(&r, "x+y")).unwrap(), None);
    }

    #[test]
    fn printing() {
        let r = ring(Field::Rational);
        assert_eq!(p(&r, "-3/4*x + x^2*y - 1 + 0*y").to_string(), "x^2*y-3/4*x-1");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
        let q = ring(Field::Prime(32003));
        assert_eq!(p(&q, "x^4-y^3").to_string(), "x^4-y^3");
    }
}
