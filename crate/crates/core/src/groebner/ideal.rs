use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::Ring;

use super::{Budget, GroebnerBasis};

/// Finite generator list in a ring, with a lazily computed reduced Gröbner basis.
/// The zero ideal is represented by the single generator `0`.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        let gens = if gens.is_empty() {
            vec![Polynomial::zero(ring)]
        } else {
            gens
        };
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| crate::parse::parse_polynomial(ring, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal::new(ring, Vec::new()).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators with zeros removed.
    pub fn nonzero_generators(&self) -> Vec<Polynomial> {
        self.gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    pub fn groebner_basis(&self, budget: &Budget) -> Result<&GroebnerBasis> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = GroebnerBasis::compute(&self.ring, &self.gens, budget)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    /// Installs a basis computed elsewhere; the caller guarantees it is the
    /// reduced basis of this ideal for this ring's order.
    pub(crate) fn with_basis(mut self, gb: GroebnerBasis) -> Self {
        self.gb = OnceLock::new();
        let _ = self.gb.set(gb);
        self
    }

    pub fn normal_form(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        self.groebner_basis(budget)?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(f, budget)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        for g in other.generators() {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual membership of generators.
    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        Ok(self.contains_ideal(other, budget)? && other.contains_ideal(self, budget)?)
    }

    pub fn is_proper(&self, budget: &Budget) -> Result<bool> {
        Ok(!self.groebner_basis(budget)?.is_unit())
    }

    /// `f ∈ √I` via `1 ∈ I + (1 - w f)` with a fresh variable `w`.
    pub fn radical_contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let w = self.ring.fresh_name("w");
        let ext = self.ring.extend(&[w], 0)?;
        let mut gens = self
            .gens
            .iter()
            .map(|g| g.embed(&ext))
            .collect::<Result<Vec<_>>>()?;
        let wf = &Polynomial::var(&ext, ext.arity() - 1) * &f.embed(&ext)?;
        gens.push(&Polynomial::one(&ext) - &wf);
        Ok(GroebnerBasis::compute(&ext, &gens, budget)?.is_unit())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.nonzero_generators();
        gens.extend(other.nonzero_generators());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// A generating subset of the reduced basis: elements lying in the ideal of
    /// the others are dropped greedily, largest leading monomial first. Not a
    /// minimal generating set in general.
    pub fn trim(&self, budget: &Budget) -> Result<Ideal> {
        let mut gens = self.groebner_basis(budget)?.elements().to_vec();
        let mut k = gens.len();
        while k > 0 {
            k -= 1;
            if gens.len() == 1 {
                break;
            }
            let rest: Vec<Polynomial> = gens.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect();
            if GroebnerBasis::compute(&self.ring, &rest, budget)?.contains(&gens[k])? {
                gens.remove(k);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `g·I`.
    pub fn scaled_by(&self, g: &Polynomial) -> Result<Ideal> {
        let gens = self.gens.iter().map(|f| f.mul(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ k[remaining variables]`, returned in the same ring. A block order with
    /// the dropped variables first is installed internally.
    pub fn eliminate(&self, drop: &[usize], budget: &Budget) -> Result<Ideal> {
        Ok(self.eliminate_with_basis(drop, budget)?.0)
    }

    /// Elimination that also returns the eliminated basis in the ring on the
    /// remaining variables (degrevlex, original relative order).
    pub(crate) fn eliminate_with_basis(
        &self,
        drop: &[usize],
        budget: &Budget,
    ) -> Result<(Ideal, GroebnerBasis)> {
        let n = self.ring.arity();
        if drop.iter().any(|&i| i >= n) {
            return Err(Error::precondition("eliminated variable outside the ring"));
        }
        let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
        let mut drop = drop.to_vec();
        drop.sort_unstable();
        drop.dedup();
        let names = |idx: &[usize]| -> Vec<String> { idx.iter().map(|&i| self.ring.vars()[i].clone()).collect() };
        let mut order_vars = names(&drop);
        order_vars.extend(names(&keep));
        let mut weights: Vec<u32> = drop.iter().map(|&i| self.ring.weights()[i]).collect();
        weights.extend(keep.iter().map(|&i| self.ring.weights()[i]));
        let elim = self.ring.derive(order_vars, MonomialOrder::Elimination { block: drop.len() }, weights)?;
        let gens = self.gens.iter().map(|g| g.embed(&elim)).collect::<Result<Vec<_>>>()?;
        let gb = GroebnerBasis::compute(&elim, &gens, budget)?;

        let sub_weights = keep.iter().map(|&i| self.ring.weights()[i]).collect();
        let sub = self.ring.derive(names(&keep), MonomialOrder::DegRevLex, sub_weights)?;
        let block = drop.len();
        let mut sub_elems = Vec::new();
        for g in gb.elements() {
            if g.terms().iter().all(|t| t.mono.exponents()[..block].iter().all(|&e| e == 0)) {
                sub_elems.push(g.embed(&sub)?);
            }
        }
        sub_elems.sort_by(|a, b| sub.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let sub_gb = GroebnerBasis {
            ring: sub.clone(),
            elements: sub_elems.clone(),
            stats: gb.stats().clone(),
            truncated: false,
        };
        let back = sub_elems.iter().map(|g| g.embed(&self.ring)).collect::<Result<Vec<_>>>()?;
        Ok((Ideal::new(&self.ring, back)?, sub_gb))
    }

    /// `I ∩ J` through `w·I + (1−w)·J` and elimination of the tag `w`.
    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        if other.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if self.is_zero_ideal() || other.is_zero_ideal() {
            return Ok(Ideal::zero(&self.ring));
        }
        let w = self.ring.fresh_name("w");
        let ext = self.ring.extend(&[w], 0)?;
        let wv = Polynomial::var(&ext, ext.arity() - 1);
        let one_minus = &Polynomial::one(&ext) - &wv;
        let mut gens = Vec::new();
        for g in self.nonzero_generators() {
            gens.push(&wv * &g.embed(&ext)?);
        }
        for g in other.nonzero_generators() {
            gens.push(&one_minus * &g.embed(&ext)?);
        }
        let tagged = Ideal::new(&ext, gens)?;
        let elim = tagged.eliminate(&[ext.arity() - 1], budget)?;
        let back = elim
            .nonzero_generators()
            .iter()
            .map(|g| g.embed(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, back)
    }

    /// `I : f = (I ∩ (f)) / f`.
    pub fn colon(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::precondition("colon by the zero polynomial"));
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let inter = self.intersect(&principal, budget)?;
        let mut gens = Vec::new();
        for g in inter.nonzero_generators() {
            gens.push(g.div_exact(f)?.ok_or_else(|| {
                Error::precondition("intersection generator not divisible by the colon element")
            })?);
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I : J = ∩_j (I : g_j)`.
    pub fn colon_ideal(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        let gens = other.nonzero_generators();
        let mut acc: Option<Ideal> = None;
        for g in &gens {
            let c = self.colon(g, budget)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c, budget)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// Krull dimension of `R/I`: the largest set of variables containing the
    /// support of no leading monomial of the basis.
    pub fn dimension(&self, budget: &Budget) -> Result<usize> {
        let gb = self.groebner_basis(budget)?;
        if gb.is_unit() {
            return Err(Error::precondition("dimension of the unit ideal"));
        }
        let lms: Vec<u64> = gb.leading_monomials().iter().map(support_bits).collect();
        Ok(max_independent_set(self.ring.arity(), &lms))
    }

    /// `n − dim`; agrees with the height for the unmixed ideals this crate targets.
    pub fn height_unmixed(&self, budget: &Budget) -> Result<usize> {
        Ok(self.ring.arity() - self.dimension(budget)?)
    }
}

fn support_bits(m: &Monomial) -> u64 {
    assert!(m.arity() <= 64, "dimension search limited to 64 variables");
    m.support().fold(0u64, |acc, i| acc | 1 << i)
}

fn max_independent_set(n: usize, lms: &[u64]) -> usize {
    fn go(v: usize, n: usize, chosen: u64, size: usize, lms: &[u64], best: &mut usize) {
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = chosen | 1 << v;
        if lms.iter().all(|&m| m & !with != 0) {
            go(v + 1, n, with, size + 1, lms, best);
        }
        go(v + 1, n, chosen, size, lms, best);
    }
    let mut best = 0;
    go(0, n, 0, 0, lms, &mut best);
    best
}

/// Kernel of `k[x_1..x_n] → S`, `x_i ↦ images[i]`, as `(x_i − g_i) ∩ k[x]`.
/// `target` is the ring of the `x`; the images share one source ring whose
/// variable names are disjoint from the target's.
pub fn kernel_of_ring_map(target: &Arc<Ring>, images: &[Polynomial], budget: &Budget) -> Result<Ideal> {
    if images.len() != target.arity() {
        return Err(Error::precondition("one image per target variable is required"));
    }
    let Some(first) = images.first() else {
        return Ok(Ideal::zero(target));
    };
    let source = first.ring().clone();
    for g in images {
        if g.ring() != &source {
            return Err(Error::RingMismatch);
        }
    }
    if source.vars().iter().any(|v| target.var_index(v).is_some()) {
        return Err(Error::precondition("source and target variables must be distinct"));
    }
    let mut vars = source.vars().to_vec();
    vars.extend(target.vars().iter().cloned());
    let m = source.arity();
    let ext = target.derive(vars, MonomialOrder::Elimination { block: m }, vec![0; m + target.arity()])?;
    let mut gens = Vec::new();
    for (i, g) in images.iter().enumerate() {
        gens.push(&Polynomial::var(&ext, m + i) - &g.embed(&ext)?);
    }
    let graph = Ideal::new(&ext, gens)?;
    let drop: Vec<usize> = (0..m).collect();
    let (_, sub_gb) = graph.eliminate_with_basis(&drop, budget)?;
    let gens = sub_gb
        .elements()
        .iter()
        .map(|g| g.embed(target))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(target, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::parse::parse_polynomial;

    fn ring(vars: &[&str], order: MonomialOrder) -> Arc<Ring> {
        Ring::new(Field::Rational, vars.iter().copied(), order).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    fn basis(r: &Arc<Ring>, gens: &[&str]) -> Vec<String> {
        let i = Ideal::parse(r, gens).unwrap();
        i.groebner_basis(&Budget::default())
            .unwrap()
            .elements()
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    #[test]
    fn linear_elimination() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        assert_eq!(basis(&r, &["x+y", "x-y"]), vec!["y", "x"]);
        assert_eq!(basis(&r, &["x^2"]), vec!["x^2"]);
    }

    /// Hand Buchberger run for (x^3-2xy, x^2y-2y^2+x) in degrevlex with x > y:
    /// S(f1,f2) = y*f1 - x*f2 = -x^2, giving f3 = x^2; then
    /// S(f2,f3) = f2 - y*f3 = -2y^2 + x -> f4 = y^2 - x/2, and
    /// f1 = x*f3 - 2xy -> xy enters; reducing f1, f2 by f3, f4 leaves {x^2, xy, y^2 - x/2}.
    #[test]
    fn hand_buchberger_run() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        assert_eq!(basis(&r, &["x^3-2*x*y", "x^2*y-2*y^2+x"]), vec!["y^2-1/2*x", "x*y", "x^2"]);
    }

    #[test]
    fn normal_forms() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let b = Budget::default();
        let i = Ideal::parse(&r, &["x"]).unwrap();
        assert!(i.normal_form(&p(&r, "x^2"), &b).unwrap().is_zero());
        assert_eq!(i.normal_form(&p(&r, "y"), &b).unwrap(), p(&r, "y"));
        let j = Ideal::parse(&r, &["x^2-y"]).unwrap();
        assert_eq!(j.normal_form(&p(&r, "x^3"), &b).unwrap(), p(&r, "x*y"));
    }

    #[test]
    fn membership_and_radical() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let b = Budget::default();
        let i = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        assert!(!i.contains(&p(&r, "x"), &b).unwrap());
        assert!(i.contains(&p(&r, "x^2"), &b).unwrap());
        let sq = Ideal::parse(&r, &["x^2"]).unwrap();
        assert!(sq.radical_contains(&p(&r, "x"), &b).unwrap());
        assert!(!sq.radical_contains(&p(&r, "y"), &b).unwrap());
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let b = Budget::default();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        let xy = Ideal::parse(&r, &["x*y"]).unwrap();
        assert!(x.intersect(&y, &b).unwrap().equals(&xy, &b).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = ring(&["t", "x", "y"], MonomialOrder::DegRevLex);
        let b = Budget::default();
        let i = Ideal::parse(&r, &["x-t^2", "y-t^3"]).unwrap();
        let e = i.eliminate(&[0], &b).unwrap();
        let expected = Ideal::parse(&r, &["x^3-y^2"]).unwrap();
        assert!(e.equals(&expected, &b).unwrap());
        assert!(e.generators().iter().all(|g| !g.uses_var(0)));
        let same = i.eliminate(&[], &b).unwrap();
        assert!(same.equals(&i, &b).unwrap());
    }

    #[test]
    fn koszul_syzygy_by_elimination() {
        let r = ring(&["u", "t1", "t2", "x", "y"], MonomialOrder::DegRevLex);
        let b = Budget::default();
        let i = Ideal::parse(&r, &["t1-u*x", "t2-u*y"]).unwrap();
        let e = i.eliminate(&[0], &b).unwrap();
        let gens = e.nonzero_generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].monic(), p(&r, "y*t1-x*t2").monic());
    }

    #[test]
    fn dimensions() {
        let b = Budget::default();
        let r = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        let i = Ideal::parse(&r, &["x"]).unwrap();
        assert_eq!(i.dimension(&b).unwrap(), 2);
        assert_eq!(i.height_unmixed(&b).unwrap(), 1);
        assert!(Ideal::unit(&r).dimension(&b).is_err());
        assert_eq!(Ideal::zero(&r).dimension(&b).unwrap(), 3);
    }

    #[test]
    fn kernels() {
        let b = Budget::default();
        let s = ring(&["t"], MonomialOrder::DegRevLex);
        let r = ring(&["x", "y"], MonomialOrder::DegRevLex);
        let k = kernel_of_ring_map(&r, &[p(&s, "t^2"), p(&s, "t^3")], &b).unwrap();
        assert!(k.equals(&Ideal::parse(&r, &["x^3-y^2"]).unwrap(), &b).unwrap());

        let r3 = ring(&["x", "y", "z"], MonomialOrder::DegRevLex);
        let k = kernel_of_ring_map(&r3, &[p(&s, "t"), p(&s, "t^2"), p(&s, "t^3")], &b).unwrap();
        assert!(k.equals(&Ideal::parse(&r3, &["y-x^2", "z-x^3"]).unwrap(), &b).unwrap());
    }
}
