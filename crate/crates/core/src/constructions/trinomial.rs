use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::poly::{Polynomial, Term};
use crate::rees::IdealPresentation;
use crate::ring::Ring;

/// An ideal of `R[y_1..y_r]` generated by polynomials with at most three terms,
/// with the substitutions `y_i ↦ σ_i` that recover the original ideal.
#[derive(Clone, Debug)]
pub struct TrinomialReduction {
    pub base: Arc<Ring>,
    pub ring: Arc<Ring>,
    pub generators: Vec<Polynomial>,
    /// `(y_i, σ_i)`; `σ_i` lies in `R[y_1..y_{i-1}]`.
    pub substitutions: Vec<(String, Polynomial)>,
    pub original: Vec<Polynomial>,
}

impl TrinomialReduction {
    pub fn new_variables(&self) -> usize {
        self.substitutions.len()
    }

    pub fn presentation(&self) -> Result<IdealPresentation> {
        IdealPresentation::new(&self.ring, self.generators.clone())
    }

    /// Images in `R` of `y_1..y_r`, obtained by unwinding `σ`.
    pub fn expansions(&self) -> Result<Vec<Polynomial>> {
        let n = self.base.arity();
        let mut images: Vec<Option<Polynomial>> = (0..n).map(|i| Some(Polynomial::var(&self.base, i))).collect();
        images.extend(std::iter::repeat_n(None, self.substitutions.len()));
        let mut out = Vec::with_capacity(self.substitutions.len());
        for (k, (_, s)) in self.substitutions.iter().enumerate() {
            let e = s.substitute(&self.base, &images)?;
            images[n + k] = Some(e.clone());
            out.push(e);
        }
        Ok(out)
    }

    /// The generators with every `y_i` replaced by its expansion.
    pub fn back_substitute(&self) -> Result<Ideal> {
        let n = self.base.arity();
        let mut images: Vec<Option<Polynomial>> = (0..n).map(|i| Some(Polynomial::var(&self.base, i))).collect();
        images.extend(self.expansions()?.into_iter().map(Some));
        let gens = self
            .generators
            .iter()
            .map(|g| g.substitute(&self.base, &images))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.base, gens)
    }

    pub fn verify(&self, budget: &Budget) -> Result<bool> {
        let back = self.back_substitute()?;
        let orig = Ideal::new(&self.base, self.original.clone())?;
        Ok(self.generators.iter().all(|g| g.len() <= 3) && back.equals(&orig, budget)?)
    }
}

#[derive(Clone, Debug)]
enum Piece {
    Term(Term),
    Fresh(usize),
}

struct Builder {
    pending: Vec<Vec<Piece>>,
    relations: Vec<(usize, Vec<Piece>)>,
    next: usize,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    /// Groups the last two pieces under a fresh variable until at most three remain.
    fn chain(&mut self, mut pieces: Vec<Piece>) -> Vec<Piece> {
        while pieces.len() > 3 {
            let b = pieces.pop().unwrap();
            let a = pieces.pop().unwrap();
            let y = self.fresh();
            self.relations.push((y, vec![a, b]));
            pieces.push(Piece::Fresh(y));
        }
        pieces
    }
}

fn is_linear(t: &Term) -> bool {
    t.mono.degree() == 1
}

fn refined_shape_ok(f: &Polynomial) -> bool {
    let ts = f.terms();
    match ts.len() {
        0 | 1 => true,
        2 => ts.iter().any(is_linear),
        3 => ts.iter().all(is_linear),
        _ => false,
    }
}

/// Replaces generators with many terms by trinomials in new variables.
///
/// Plain mode follows the recursion `y − (g_{m−1} + g_m)` on the terms in
/// descending order. Refined mode first replaces each non-linear term (constants
/// included) by a fresh variable, so that every output is a monomial, a binomial
/// with a linear term, or a linear trinomial.
pub fn trinomialize(p: &IdealPresentation, refined: bool) -> Result<TrinomialReduction> {
    if p.is_quotient() {
        return Err(Error::precondition("trinomialize needs a polynomial ring presentation"));
    }
    let base = p.ring().clone();
    let mut b = Builder {
        pending: Vec::new(),
        relations: Vec::new(),
        next: 0,
    };
    for f in p.generators() {
        let pieces: Vec<Piece> = f.terms().iter().cloned().map(Piece::Term).collect();
        let keep = if refined { refined_shape_ok(f) } else { f.len() <= 3 };
        if keep {
            b.pending.push(pieces);
            continue;
        }
        let pieces = if refined {
            pieces
                .into_iter()
                .map(|pc| match pc {
                    Piece::Term(t) if !is_linear(&t) => {
                        let y = b.fresh();
                        b.relations.push((y, vec![Piece::Term(t)]));
                        Piece::Fresh(y)
                    }
                    other => other,
                })
                .collect()
        } else {
            pieces
        };
        let out = b.chain(pieces);
        b.pending.push(out);
    }

    let names = base.fresh_names("y", b.next);
    let ring = base.extend(&names, 0)?;
    let n = base.arity();
    let build = |pieces: &[Piece]| -> Result<Polynomial> {
        let mut acc = Polynomial::zero(&ring);
        for pc in pieces {
            let q = match pc {
                Piece::Term(t) => Polynomial::from_terms(&base, [t.clone()]).embed(&ring)?,
                Piece::Fresh(y) => Polynomial::var(&ring, n + y),
            };
            acc = &acc + &q;
        }
        Ok(acc)
    };
    let mut generators = Vec::new();
    let mut substitutions = vec![None; b.next];
    // relations y − σ come first, in creation order
    for (y, rhs) in &b.relations {
        let sigma = build(rhs)?;
        generators.push(&Polynomial::var(&ring, n + y) - &sigma);
        substitutions[*y] = Some((names[*y].clone(), sigma));
    }
    for pieces in &b.pending {
        generators.push(build(pieces)?);
    }
    Ok(TrinomialReduction {
        base,
        ring,
        generators,
        substitutions: substitutions.into_iter().map(|s| s.expect("every variable defined")).collect(),
        original: p.generators().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use crate::rees::relation_type;

    fn pres(gens: &[&str]) -> IdealPresentation {
        let r = Ring::new(Field::Rational, ["x", "y", "z"], MonomialOrder::DegRevLex).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(&r, g).unwrap()).collect();
        IdealPresentation::new(&r, gens).unwrap()
    }

    #[test]
    fn three_terms_unchanged() {
        let t = trinomialize(&pres(&["x^2+y+z"]), false).unwrap();
        assert_eq!(t.new_variables(), 0);
        assert_eq!(t.generators[0].to_string(), "x^2+y+z");
    }

    #[test]
    fn four_terms() {
        let t = trinomialize(&pres(&["x^3+x*y+y^2+z"]), false).unwrap();
        assert_eq!(t.new_variables(), 1);
        let shown: Vec<String> = t.generators.iter().map(|g| g.to_string()).collect();
        // g3 + g4 = y^2 + z
        assert_eq!(shown, ["-y^2-z+y1", "x^3+x*y+y1"]);
        assert!(t.verify(&Budget::default()).unwrap());
    }

    #[test]
    fn five_terms() {
        let t = trinomialize(&pres(&["x^4+x^3+x^2+x+1"]), false).unwrap();
        assert_eq!(t.new_variables(), 2);
        assert_eq!(t.generators.len(), 3);
        assert_eq!(t.substitutions[1].1.to_string(), "x^2+y1");
        assert!(t.verify(&Budget::default()).unwrap());
    }

    #[test]
    fn refined_shapes() {
        let t = trinomialize(&pres(&["x^2+x*y+y^2+x+y", "x*y-z", "x^2*y-z^2"]), true).unwrap();
        for g in &t.generators {
            assert!(refined_shape_ok(g), "{g}");
        }
        assert!(t.verify(&Budget::default()).unwrap());
        assert!(t.generators.iter().any(|g| g.to_string() == "x*y-z"));
    }

    #[test]
    fn relation_type_preserved() {
        let p = pres(&["x^2+x*y+y^2+x+y"]);
        let b = Budget::default();
        let before = relation_type(&p, &b).unwrap().relation_type;
        let t = trinomialize(&p, false).unwrap();
        let after = relation_type(&t.presentation().unwrap(), &b).unwrap().relation_type;
        assert_eq!((before, after), (1, 1));
    }

    #[test]
    fn quotient_rejected() {
        let p = pres(&["x"]);
        let q = IdealPresentation::quotient(p.ring(), p.generators().to_vec(), vec![parse_polynomial(p.ring(), "y").unwrap()])
            .unwrap();
        assert!(trinomialize(&q, false).is_err());
    }
}
