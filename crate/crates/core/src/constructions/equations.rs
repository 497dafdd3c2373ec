use crate::error::{Error, Result};
use crate::groebner::{Budget, Ideal};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};
use crate::rees::{rees_ideal, rees_ring, IdealPresentation};

use super::PolyMatrix;

/// The linear forms `[t_1..t_s]·η` in `R[t]`, where `η` has one row per generator.
pub fn linear_forms(p: &IdealPresentation, eta: &PolyMatrix) -> Result<Vec<Polynomial>> {
    let s = p.generators().len();
    if eta.rows() != s {
        return Err(Error::precondition(format!(
            "presentation matrix has {} rows but the ideal has {s} generators",
            eta.rows()
        )));
    }
    if eta.ring() != p.ring() {
        return Err(Error::RingMismatch);
    }
    let sr = rees_ring(p.ring(), s)?;
    let n = p.ring().arity();
    let ts: Vec<Polynomial> = (0..s).map(|i| Polynomial::var(&sr, n + i)).collect();
    eta.embed(&sr)?.left_mul(&ts)
}

/// Jacobian dual `B` with `[t]·η = [x_vars]·B`, over `R[t_1..t_s]`.
///
/// Each monomial of each entry of `η` is charged to the first variable of
/// `x_vars` dividing it.
pub fn jacobian_dual(eta: &PolyMatrix, x_vars: &[usize]) -> Result<PolyMatrix> {
    let r = eta.ring();
    let n = r.arity();
    if x_vars.is_empty() || x_vars.iter().any(|&v| v >= n) {
        return Err(Error::precondition("invalid variable list for the Jacobian dual"));
    }
    let s = eta.rows();
    let sr = rees_ring(r, s)?;
    let mut b = PolyMatrix::zeros(&sr, x_vars.len(), eta.cols());
    let mut terms: Vec<Vec<Vec<Term>>> = vec![vec![Vec::new(); eta.cols()]; x_vars.len()];
    for i in 0..s {
        for j in 0..eta.cols() {
            for t in eta.get(i, j).terms() {
                let k = x_vars
                    .iter()
                    .position(|&v| t.mono.exp(v) > 0)
                    .ok_or_else(|| {
                        Error::precondition(format!(
                            "entry ({}, {}) of the matrix has a term {} outside the ideal of the chosen variables",
                            i + 1,
                            j + 1,
                            Polynomial::from_terms(r, [t.clone()])
                        ))
                    })?;
                let mut e = t.mono.exponents().to_vec();
                e[x_vars[k]] -= 1;
                e.extend(std::iter::repeat_n(0, s));
                e[n + i] += 1;
                terms[k][j].push(Term {
                    coeff: t.coeff.clone(),
                    mono: Monomial::from_exponents(&e),
                });
            }
        }
    }
    for (k, row) in terms.into_iter().enumerate() {
        for (j, ts) in row.into_iter().enumerate() {
            b.set(k, j, Polynomial::from_terms(&sr, ts));
        }
    }
    // identity [t]·η = [x]·B
    let xs: Vec<Polynomial> = x_vars.iter().map(|&v| Polynomial::var(&sr, v)).collect();
    let lhs = {
        let ts: Vec<Polynomial> = (0..s).map(|i| Polynomial::var(&sr, n + i)).collect();
        eta.embed(&sr)?.left_mul(&ts)?
    };
    if b.left_mul(&xs)? != lhs {
        return Err(Error::precondition("Jacobian dual identity failed"));
    }
    Ok(b)
}

#[derive(Clone, Debug)]
pub struct ExpectedEquations {
    pub holds: bool,
    /// A generator of `L` outside `(L⟨1⟩, minors)` when `holds` is false.
    pub witness: Option<Polynomial>,
    pub jacobian_dual: PolyMatrix,
    pub linear: Vec<Polynomial>,
    pub minors: Vec<Polynomial>,
    /// `t`-degrees of the minors.
    pub minor_degrees: Vec<u64>,
}

/// Tests whether `L = ([t]·η, maximal minors of B(η))`.
pub fn expected_equations_check(p: &IdealPresentation, eta: &PolyMatrix, budget: &Budget) -> Result<ExpectedEquations> {
    let linear = linear_forms(p, eta)?;
    let r = p.ring();
    let n = r.arity();
    let s = p.generators().len();
    // each column must be a syzygy
    let mut images: Vec<Option<Polynomial>> = (0..n).map(|i| Some(Polynomial::var(r, i))).collect();
    images.extend(p.generators().iter().cloned().map(Some));
    let k = Ideal::new(r, p.relations().to_vec())?;
    for (j, g) in linear.iter().enumerate() {
        if !k.contains(&g.substitute(r, &images)?, budget)? {
            return Err(Error::precondition(format!("column {} of the matrix is not a syzygy", j + 1)));
        }
    }
    let xs: Vec<usize> = (0..n).collect();
    let b = jacobian_dual(eta, &xs)?;
    // with fewer columns than rows the ideal of maximal minors is zero
    let minors: Vec<Polynomial> = if b.rows() <= b.cols() {
        b.minors(b.rows())?.into_iter().filter(|m| !m.is_zero()).collect()
    } else {
        Vec::new()
    };
    let eqs = rees_ideal(p, budget)?;
    let sr = eqs.ring().clone();
    debug_assert_eq!(sr.arity(), n + s);
    let weights = sr.weights().to_vec();
    let minor_degrees = minors.iter().map(|m| m.weighted_degree(&weights).unwrap_or(0)).collect();
    let l = eqs.ideal();
    let mut e_gens: Vec<Polynomial> = p.relations().iter().map(|g| g.embed(&sr)).collect::<Result<_>>()?;
    e_gens.extend(linear.iter().cloned());
    e_gens.extend(minors.iter().cloned());
    let e = Ideal::new(&sr, e_gens)?;
    if !l.contains_ideal(&e, budget)? {
        return Err(Error::precondition("minors of the Jacobian dual are not all equations"));
    }
    let mut witness = None;
    for g in eqs.generators() {
        if !e.contains(g, budget)? {
            witness = Some(g.clone());
            break;
        }
    }
    Ok(ExpectedEquations {
        holds: witness.is_none(),
        witness,
        jacobian_dual: b,
        linear,
        minors,
        minor_degrees,
    })
}

/// Whether `I = g·I_{s−1}(η)` for an `s × (s−1)` matrix `η`.
pub fn hilbert_burch_check(p: &IdealPresentation, g: &Polynomial, eta: &PolyMatrix, budget: &Budget) -> Result<bool> {
    let s = p.generators().len();
    if s < 2 || eta.rows() != s || eta.cols() != s - 1 {
        return Err(Error::precondition(format!(
            "expected a {}x{} matrix, got {}x{}",
            s,
            s.saturating_sub(1),
            eta.rows(),
            eta.cols()
        )));
    }
    if g.is_zero() {
        return Err(Error::precondition("g must be nonzero"));
    }
    if g.ring() != p.ring() || eta.ring() != p.ring() {
        return Err(Error::RingMismatch);
    }
    let minors: Vec<Polynomial> = eta.minors(s - 1)?.iter().map(|m| g * m).collect();
    let rhs = Ideal::new(p.ring(), minors)?;
    let mut gens: Vec<Polynomial> = p.generators().to_vec();
    gens.extend(p.relations().iter().cloned());
    let mut rhs_gens = rhs.generators().to_vec();
    rhs_gens.extend(p.relations().iter().cloned());
    Ideal::new(p.ring(), gens)?.equals(&Ideal::new(p.ring(), rhs_gens)?, budget)
}
