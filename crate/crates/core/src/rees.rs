//! Equations of the Rees algebra and the relation type.
//!
//! The ideal of equations `L = ker(R[t_1..t_s] → R[u], t_i ↦ f_i u)` is computed
//! as `(K, t_1 − u f_1, …, t_s − u f_s) ∩ k[x, t]`. The elimination input is
//! homogeneous for the grading `u, t_i ↦ 1`, `x_j ↦ 0`, so every element of the
//! reduced basis is homogeneous in the `t` variables. The relation type is the
//! largest degree `d` in which some basis element of degree `d` fails to lie in
//! the ideal generated by the elements of smaller degree (and `K`), or 1.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{Budget, GroebnerBasis, Ideal, Truncation};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Generators `f_1..f_s` of an ideal of `R/K`; `K` empty means the polynomial ring.
#[derive(Clone, Debug)]
pub struct IdealPresentation {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    relations: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        IdealPresentation::quotient(ring, gens, Vec::new())
    }

    pub fn quotient(ring: &Arc<Ring>, gens: Vec<Polynomial>, relations: Vec<Polynomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::precondition("an ideal presentation needs at least one generator"));
        }
        for g in gens.iter().chain(&relations) {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        if gens.iter().any(|g| g.is_zero()) {
            return Err(Error::precondition("zero generator in ideal presentation"));
        }
        let relations = relations.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealPresentation {
            ring: ring.clone(),
            gens,
            relations,
        })
    }

    pub fn from_ideal(ideal: &Ideal) -> Result<Self> {
        IdealPresentation::new(ideal.ring(), ideal.nonzero_generators())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn is_quotient(&self) -> bool {
        !self.relations.is_empty()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.gens.clone()).expect("same ring")
    }

    pub fn with_generators(&self, gens: Vec<Polynomial>) -> Result<Self> {
        IdealPresentation::quotient(&self.ring, gens, self.relations.clone())
    }
}

/// Ring `R[t_1..t_s]`: the `x` variables keep their positions, the `t` variables
/// follow with grading weight 1 (weight 0 on the `x`).
pub fn rees_ring(ring: &Ring, s: usize) -> Result<Arc<Ring>> {
    let ts = ring.fresh_names("t", s);
    let mut vars = ring.vars().to_vec();
    vars.extend(ts);
    let mut weights = vec![0; ring.arity()];
    weights.extend(std::iter::repeat_n(1, s));
    ring.derive(vars, MonomialOrder::DegRevLex, weights)
}

/// A `t`-homogeneous generating set of the ideal of equations.
#[derive(Clone, Debug)]
pub struct ReesEquations {
    presentation: IdealPresentation,
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    degrees: Vec<u64>,
    basis: GroebnerBasis,
    truncated_at: Option<u64>,
}

impl ReesEquations {
    /// The extended ring `S = R[t_1..t_s]`.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn presentation(&self) -> &IdealPresentation {
        &self.presentation
    }

    /// Generators sorted by `t`-degree; in the quotient case the degree-zero
    /// part is the extension of `K`.
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// `Some(d)` when only the equations of degree `<= d` were computed.
    pub fn truncated_at(&self) -> Option<u64> {
        self.truncated_at
    }

    /// Reduced Gröbner basis of the equations in `S` (degrevlex).
    pub fn basis(&self) -> &GroebnerBasis {
        &self.basis
    }

    pub fn t_weights(&self) -> &[u32] {
        self.ring.weights()
    }

    /// Generators of positive degree, grouped by degree.
    pub fn by_degree(&self) -> BTreeMap<u64, Vec<&Polynomial>> {
        let mut m: BTreeMap<u64, Vec<&Polynomial>> = BTreeMap::new();
        for (g, &d) in self.generators.iter().zip(&self.degrees) {
            m.entry(d).or_default().push(g);
        }
        m
    }

    /// The ideal `L` in `S`, with its basis already installed.
    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.generators.clone())
            .expect("same ring")
            .with_basis(self.basis.clone())
    }

    /// `t_i ↦ f_i`, `x ↦ x`, from `S` to `R`.
    pub fn substitution_images(&self) -> Vec<Option<Polynomial>> {
        let r = &self.presentation.ring;
        let mut images: Vec<Option<Polynomial>> = (0..r.arity()).map(|i| Some(Polynomial::var(r, i))).collect();
        images.extend(self.presentation.gens.iter().map(|f| Some(f.clone())));
        images
    }

    /// Checks that every generator maps to zero under `t_i ↦ f_i u` (modulo `K`).
    pub fn verify_substitution(&self, budget: &Budget) -> Result<bool> {
        let r = &self.presentation.ring;
        let u = r.fresh_name("u");
        let ru = r.extend(&[u], 1)?;
        let uvar = Polynomial::var(&ru, ru.arity() - 1);
        let mut images: Vec<Option<Polynomial>> = (0..r.arity()).map(|i| Some(Polynomial::var(&ru, i))).collect();
        for f in &self.presentation.gens {
            images.push(Some(&uvar * &f.embed(&ru)?));
        }
        let k = self
            .presentation
            .relations
            .iter()
            .map(|g| g.embed(&ru))
            .collect::<Result<Vec<_>>>()?;
        let kgb = GroebnerBasis::compute(&ru, &k, budget)?;
        for g in &self.generators {
            let img = g.substitute(&ru, &images)?;
            if !kgb.contains(&img)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Computes the equations of `I = (f_1..f_s)` by elimination of `u`.
pub fn rees_ideal(p: &IdealPresentation, budget: &Budget) -> Result<ReesEquations> {
    rees_ideal_up_to(p, None, budget)
}

/// The equations of `t`-degree at most `max_degree`. The elimination input is
/// homogeneous for the `(u, t)` grading, so a basis truncated at that degree
/// generates `L` exactly in degrees `<= max_degree`.
pub fn rees_ideal_truncated(p: &IdealPresentation, max_degree: u64, budget: &Budget) -> Result<ReesEquations> {
    rees_ideal_up_to(p, Some(max_degree), budget)
}

fn rees_ideal_up_to(p: &IdealPresentation, max_degree: Option<u64>, budget: &Budget) -> Result<ReesEquations> {
    let r = &p.ring;
    let s = p.gens.len();
    let target = rees_ring(r, s)?;
    let u = target.fresh_name("u");
    let mut vars = vec![u];
    vars.extend(target.vars().iter().cloned());
    let mut weights = vec![1];
    weights.extend(target.weights().iter().copied());
    let elim = r.derive(vars, MonomialOrder::Elimination { block: 1 }, weights)?;

    let n = r.arity();
    let uvar = Polynomial::var(&elim, 0);
    let mut input = Vec::with_capacity(s + p.relations.len());
    for g in &p.relations {
        input.push(g.embed(&elim)?);
    }
    for (i, f) in p.gens.iter().enumerate() {
        let t = Polynomial::var(&elim, 1 + n + i);
        input.push(&t - &(&uvar * &f.embed(&elim)?));
    }
    let gb = match max_degree {
        None => GroebnerBasis::compute(&elim, &input, budget)?,
        Some(max) => {
            let trunc = Truncation {
                weights: elim.weights().to_vec(),
                max,
            };
            GroebnerBasis::compute_truncated(&elim, &input, &trunc, budget)?
        }
    };

    let mut gens = Vec::new();
    for g in gb.elements() {
        if !g.uses_var(0) {
            gens.push(g.embed(&target)?);
        }
    }
    gens.sort_by(|a, b| target.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let weights = target.weights().to_vec();
    let mut degrees = Vec::with_capacity(gens.len());
    for g in &gens {
        if !g.is_homogeneous(&weights) {
            return Err(Error::precondition("equation is not t-homogeneous"));
        }
        degrees.push(g.weighted_degree(&weights).unwrap_or(0));
    }
    let basis = GroebnerBasis {
        ring: target.clone(),
        elements: gens.clone(),
        stats: gb.stats().clone(),
        truncated: max_degree.is_some(),
    };
    // stable sort: by degree, then by leading monomial
    let mut idx: Vec<usize> = (0..gens.len()).collect();
    idx.sort_by_key(|&i| degrees[i]);
    let generators = idx.iter().map(|&i| gens[i].clone()).collect();
    let degrees = idx.iter().map(|&i| degrees[i]).collect();
    Ok(ReesEquations {
        presentation: p.clone(),
        ring: target,
        generators,
        degrees,
        basis,
        truncated_at: max_degree,
    })
}

/// Relation type, degrees carrying fresh generators, and basis counts per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationsProfile {
    pub relation_type: u64,
    /// Degrees `q ≥ 2` with `E(I)_q ≠ 0`, increasing.
    pub fresh_degrees: Vec<u64>,
    /// Basis elements per degree; informational, not a minimal count.
    pub basis_counts: BTreeMap<u64, usize>,
    pub is_linear_type: bool,
    pub is_syzygetic: bool,
    /// `Some(d)` when only degrees `<= d` were searched; `relation_type` is then
    /// a lower bound and the flags describe those degrees only.
    pub searched_through: Option<u64>,
}

impl EquationsProfile {
    fn from_fresh(fresh: Vec<u64>, basis_counts: BTreeMap<u64, usize>) -> Self {
        let relation_type = fresh.iter().copied().max().unwrap_or(1);
        EquationsProfile {
            relation_type,
            is_linear_type: relation_type == 1,
            is_syzygetic: !fresh.contains(&2),
            fresh_degrees: fresh,
            basis_counts,
            searched_through: None,
        }
    }
}

/// Degrees in which the equations need generators not coming from lower degrees.
pub fn fresh_degrees(eqs: &ReesEquations, budget: &Budget) -> Result<Vec<u64>> {
    let s_ring = &eqs.ring;
    let weights = s_ring.weights().to_vec();
    let mut lower: Vec<Polynomial> = eqs
        .presentation
        .relations
        .iter()
        .map(|g| g.embed(s_ring))
        .collect::<Result<Vec<_>>>()?;
    let mut fresh = Vec::new();
    // K plus the lower-degree equations not already implied by lower ones;
    // generates the same ideal as all of them
    for (d, gens) in eqs.by_degree() {
        let gens: Vec<Polynomial> = gens.into_iter().cloned().collect();
        if d < 2 {
            lower.extend(gens);
            continue;
        }
        let trunc = Truncation {
            weights: weights.clone(),
            max: d,
        };
        let gb = GroebnerBasis::compute_truncated(s_ring, &lower, &trunc, budget)?;
        let mut new = Vec::new();
        for g in gens {
            if !gb.contains(&g)? {
                new.push(g);
            }
        }
        if !new.is_empty() {
            fresh.push(d);
            lower.extend(new);
        }
    }
    Ok(fresh)
}

pub fn profile(eqs: &ReesEquations, budget: &Budget) -> Result<EquationsProfile> {
    let fresh = fresh_degrees(eqs, budget)?;
    let mut counts = BTreeMap::new();
    for &d in &eqs.degrees {
        if d >= 1 {
            *counts.entry(d).or_insert(0) += 1;
        }
    }
    let mut p = EquationsProfile::from_fresh(fresh, counts);
    p.searched_through = eqs.truncated_at;
    Ok(p)
}

/// Relation type of the ideal (in `R` or `R/K`) described by `p`.
pub fn relation_type(p: &IdealPresentation, budget: &Budget) -> Result<EquationsProfile> {
    let eqs = rees_ideal(p, budget)?;
    profile(&eqs, budget)
}

/// Fresh degrees up to `max_degree` only; a lower bound for the relation type
/// that stays cheap when the full computation does not.
pub fn relation_type_bounded(p: &IdealPresentation, max_degree: u64, budget: &Budget) -> Result<EquationsProfile> {
    let eqs = rees_ideal_truncated(p, max_degree, budget)?;
    profile(&eqs, budget)
}

/// Rejects quotient presentations where `K` is the unit ideal or every generator lies in `K`.
pub fn check_quotient(p: &IdealPresentation, budget: &Budget) -> Result<()> {
    let k = Ideal::new(p.ring(), p.relations().to_vec())?;
    if !k.is_proper(budget)? {
        return Err(Error::precondition("the quotient relations generate the unit ideal"));
    }
    for g in p.generators() {
        if !k.contains(g, budget)? {
            return Ok(());
        }
    }
    Err(Error::precondition("all generators vanish in the quotient ring"))
}

/// Relation type of the image of `(f_1..f_s)` in `R/K`.
pub fn relation_type_quotient(
    ring: &Arc<Ring>,
    relations: Vec<Polynomial>,
    gens: Vec<Polynomial>,
    budget: &Budget,
) -> Result<EquationsProfile> {
    let p = IdealPresentation::quotient(ring, gens, relations)?;
    check_quotient(&p, budget)?;
    relation_type(&p, budget)
}

/// Coefficient vectors `(a_1..a_s)` with `Σ a_i f_i ≡ 0 (mod K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyModule {
    pub vectors: Vec<Vec<Polynomial>>,
}

/// The degree-one equations read as syzygies of the generators.
pub fn linear_equations(eqs: &ReesEquations) -> Result<SyzygyModule> {
    let r = &eqs.presentation.ring;
    let n = r.arity();
    let s = eqs.presentation.gens.len();
    let mut vectors = Vec::new();
    for (g, &d) in eqs.generators.iter().zip(&eqs.degrees) {
        if d != 1 {
            continue;
        }
        let mut v = vec![Polynomial::zero(r); s];
        for (i, vi) in v.iter_mut().enumerate() {
            for (e, c) in g.coefficients_in(n + i) {
                if e == 1 {
                    *vi = c.embed(r)?;
                }
            }
        }
        vectors.push(v);
    }
    Ok(SyzygyModule { vectors })
}

impl SyzygyModule {
    /// Every vector satisfies `Σ a_i f_i ∈ K`.
    pub fn verify(&self, p: &IdealPresentation, budget: &Budget) -> Result<bool> {
        let k = Ideal::new(&p.ring, p.relations.clone())?;
        for v in &self.vectors {
            let mut acc = Polynomial::zero(&p.ring);
            for (a, f) in v.iter().zip(&p.gens) {
                acc = &acc + &(a * f);
            }
            if !k.contains(&acc, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `I·R[y] + (y − g)` (and `K·R[y]`), an isomorphic presentation of `R/I`.
pub fn adjoin_variable_presentation(p: &IdealPresentation, g: &Polynomial) -> Result<IdealPresentation> {
    let r = &p.ring;
    if g.ring() != r {
        return Err(Error::RingMismatch);
    }
    let y = r.fresh_name("y");
    let ry = r.extend(&[y], 0)?;
    let mut gens = p.gens.iter().map(|f| f.embed(&ry)).collect::<Result<Vec<_>>>()?;
    gens.push(&Polynomial::var(&ry, ry.arity() - 1) - &g.embed(&ry)?);
    let rel = p.relations.iter().map(|f| f.embed(&ry)).collect::<Result<Vec<_>>>()?;
    IdealPresentation::quotient(&ry, gens, rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn ring(vars: &[&str]) -> Arc<Ring> {
        Ring::new(Field::Rational, vars.iter().copied(), MonomialOrder::DegRevLex).unwrap()
    }

    fn pres(r: &Arc<Ring>, gens: &[&str]) -> IdealPresentation {
        let gens = gens.iter().map(|g| crate::parse::parse_polynomial(r, g).unwrap()).collect();
        IdealPresentation::new(r, gens).unwrap()
    }

    #[test]
    fn principal_ideal_has_no_equations() {
        let r = ring(&["x", "y"]);
        let eqs = rees_ideal(&pres(&r, &["x"]), &Budget::default()).unwrap();
        assert!(eqs.generators().is_empty());
        let p = profile(&eqs, &Budget::default()).unwrap();
        assert_eq!(p.relation_type, 1);
        assert!(p.is_linear_type && p.is_syzygetic);
    }

    #[test]
    fn maximal_ideal_koszul_relation() {
        let r = ring(&["x", "y"]);
        let eqs = rees_ideal(&pres(&r, &["x", "y"]), &Budget::default()).unwrap();
        let shown: Vec<String> = eqs.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["y*t1-x*t2"]);
        assert!(eqs.verify_substitution(&Budget::default()).unwrap());
        let syz = linear_equations(&eqs).unwrap();
        assert_eq!(syz.vectors.len(), 1);
        assert!(syz.verify(eqs.presentation(), &Budget::default()).unwrap());
    }

    #[test]
    fn squares_and_product() {
        let r = ring(&["x", "y"]);
        let p = relation_type(&pres(&r, &["x^2", "y^2", "x*y"]), &Budget::default()).unwrap();
        assert_eq!(p.relation_type, 2);
        assert_eq!(p.fresh_degrees, vec![2]);
        assert!(!p.is_syzygetic);
    }

    #[test]
    fn powers_family() {
        let r = ring(&["x", "y"]);
        for q in 1..=3u32 {
            let gens = [format!("x^{q}"), format!("y^{q}"), format!("x^{}*y", q - 1)];
            let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
            let p = relation_type(&pres(&r, &refs), &Budget::default()).unwrap();
            assert_eq!(p.relation_type, q as u64, "q = {q}");
        }
    }

    #[test]
    fn neile_quotient() {
        let r = ring(&["x", "y"]);
        let k = vec![crate::parse::parse_polynomial(&r, "x^3-y^2").unwrap()];
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        let b = Budget::default();
        let one = Polynomial::one(&r);
        let p = relation_type_quotient(&r, k.clone(), vec![&x - &one, &y - &one], &b).unwrap();
        assert_eq!(p.relation_type, 1);
        let p = relation_type_quotient(&r, k.clone(), vec![x.clone(), y.clone()], &b).unwrap();
        assert_eq!(p.relation_type, 2);
        let p = relation_type_quotient(&r, vec![], vec![x.pow(2), y.pow(2), &x * &y], &b).unwrap();
        assert_eq!(p.relation_type, 2);
        assert!(relation_type_quotient(&r, k, vec![&x.pow(3) - &y.pow(2)], &b).is_err());
    }

    #[test]
    fn quotient_equations_contain_relations() {
        let r = ring(&["x", "y"]);
        let k = vec![crate::parse::parse_polynomial(&r, "x^3-y^2").unwrap()];
        let p = IdealPresentation::quotient(&r, vec![Polynomial::var(&r, 0), Polynomial::var(&r, 1)], k).unwrap();
        let eqs = rees_ideal(&p, &Budget::default()).unwrap();
        assert_eq!(eqs.degrees()[0], 0);
        assert!(eqs.verify_substitution(&Budget::default()).unwrap());
    }

    #[test]
    fn zero_generator_rejected() {
        let r = ring(&["x"]);
        assert!(IdealPresentation::new(&r, vec![Polynomial::zero(&r)]).is_err());
        assert!(IdealPresentation::new(&r, vec![]).is_err());
    }

    #[test]
    fn adjoined_variable() {
        let r = ring(&["x", "y"]);
        let p = pres(&r, &["x^2", "y^2"]);
        let q = adjoin_variable_presentation(&p, &crate::parse::parse_polynomial(&r, "x*y").unwrap()).unwrap();
        assert_eq!(q.ring().vars().len(), 3);
        assert_eq!(q.generators().len(), 3);
        assert_eq!(q.generators()[2].to_string(), "-x*y+y1");
    }
}
