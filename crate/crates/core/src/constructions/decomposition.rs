use crate::error::{Error, Result};
use crate::gcd::gcd_all;
use crate::groebner::{Budget, Ideal};
use crate::poly::Polynomial;
use crate::rees::{relation_type, IdealPresentation};

/// `I = g·L` with `g` the monic gcd of the generators.
#[derive(Clone, Debug)]
pub struct StrippedIdeal {
    pub g: Polynomial,
    pub l: Ideal,
    pub factorization_exact: bool,
}

pub fn strip_principal_part(i: &Ideal, budget: &Budget) -> Result<StrippedIdeal> {
    if !i.is_proper(budget)? {
        return Err(Error::precondition("strip needs a proper ideal"));
    }
    let gens = i.nonzero_generators();
    let g = match gcd_all(gens.iter())? {
        Some(g) => g,
        None => return Err(Error::precondition("strip of the zero ideal")),
    };
    let l = if g.is_unit() {
        i.clone()
    } else {
        let quotients = gens
            .iter()
            .map(|f| f.div_exact(&g).map(|q| q.expect("gcd divides every generator")))
            .collect::<Result<Vec<_>>>()?;
        // the colon equals the exact quotient ideal; computed both ways as a check
        let colon = i.colon(&g, budget)?;
        let quot = Ideal::new(i.ring(), quotients)?;
        if !colon.equals(&quot, budget)? {
            return Err(Error::precondition("colon by the gcd differs from the quotient ideal"));
        }
        colon
    };
    let factorization_exact = i.equals(&l.scaled_by(&g)?, budget)?;
    Ok(StrippedIdeal {
        g,
        l,
        factorization_exact,
    })
}

/// Relation types of `I` and of `L` in `I = g·L`.
#[derive(Clone, Debug)]
pub struct StripReport {
    pub stripped: StrippedIdeal,
    pub rt_ideal: u64,
    /// `None` when `L` is the unit ideal.
    pub rt_stripped: Option<u64>,
    /// `rt(I) ∈ {1, rt(L)}`.
    pub consistent: bool,
}

impl StrippedIdeal {
    pub fn report(self, original: &Ideal, budget: &Budget) -> Result<StripReport> {
        let rt_ideal = relation_type(&IdealPresentation::from_ideal(original)?, budget)?.relation_type;
        let rt_stripped = if self.l.is_proper(budget)? {
            Some(relation_type(&IdealPresentation::from_ideal(&self.l)?, budget)?.relation_type)
        } else {
            None
        };
        let consistent = rt_ideal == 1 || Some(rt_ideal) == rt_stripped;
        Ok(StripReport {
            stripped: self,
            rt_ideal,
            rt_stripped,
            consistent,
        })
    }
}

#[derive(Clone, Debug)]
pub struct EquidimensionalReport {
    pub full: Ideal,
    /// Intersection of the components of height between 2 and `n − 1`.
    pub reduced: Option<Ideal>,
    pub heights: Vec<usize>,
    pub rt_full: u64,
    pub rt_reduced: Option<u64>,
    /// `rt(full) = 1`, or `rt(full) = rt(reduced)`.
    pub agrees: bool,
}

/// Intersects caller-supplied equidimensional components and compares relation types.
pub fn equidimensional_reduce(components: &[(Ideal, usize)], budget: &Budget) -> Result<EquidimensionalReport> {
    let first = components
        .first()
        .ok_or_else(|| Error::precondition("no components given"))?;
    let ring = first.0.ring().clone();
    let n = ring.arity();
    let mut heights = Vec::with_capacity(components.len());
    for (k, (c, h)) in components.iter().enumerate() {
        if c.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        if !c.is_proper(budget)? {
            return Err(Error::precondition(format!("component {} is the unit ideal", k + 1)));
        }
        let actual = c.height_unmixed(budget)?;
        if actual != *h {
            return Err(Error::precondition(format!(
                "component {} has height {actual}, declared {h}",
                k + 1
            )));
        }
        heights.push(actual);
    }
    let mut full: Option<Ideal> = None;
    let mut reduced: Option<Ideal> = None;
    for (c, h) in components {
        full = Some(match full {
            None => c.clone(),
            Some(a) => a.intersect(c, budget)?,
        });
        if *h >= 2 && *h < n {
            reduced = Some(match reduced {
                None => c.clone(),
                Some(a) => a.intersect(c, budget)?,
            });
        }
    }
    let full = full.expect("at least one component");
    let rt_of = |i: &Ideal| -> Result<u64> {
        let gens = i.groebner_basis(budget)?.elements().to_vec();
        Ok(relation_type(&IdealPresentation::new(&ring, gens)?, budget)?.relation_type)
    };
    let rt_full = rt_of(&full)?;
    let rt_reduced = reduced.as_ref().map(rt_of).transpose()?;
    let agrees = match rt_reduced {
        None => rt_full == 1,
        Some(r) => rt_full == 1 || rt_full == r,
    };
    Ok(EquidimensionalReport {
        full,
        reduced,
        heights,
        rt_full,
        rt_reduced,
        agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    fn ring() -> std::sync::Arc<Ring> {
        Ring::new(Field::Rational, ["x", "y", "z"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn strip_common_factor() {
        let r = ring();
        let b = Budget::default();
        let i = Ideal::parse(&r, &["x^2*(x^3-y*z)", "x*y*(x^3-y*z)"]).unwrap();
        let s = strip_principal_part(&i, &b).unwrap();
        assert_eq!(s.g, parse_polynomial(&r, "x^4-x*y*z").unwrap());
        assert!(s.l.equals(&Ideal::parse(&r, &["x", "y"]).unwrap(), &b).unwrap());
        assert!(s.factorization_exact);
        let rep = s.report(&i, &b).unwrap();
        assert_eq!((rep.rt_ideal, rep.rt_stripped), (1, Some(1)));
    }

    #[test]
    fn strip_trivial_cases() {
        let r = ring();
        let b = Budget::default();
        let s = strip_principal_part(&Ideal::parse(&r, &["x", "y"]).unwrap(), &b).unwrap();
        assert!(s.g.is_unit());
        let s = strip_principal_part(&Ideal::parse(&r, &["x^3-y^2"]).unwrap(), &b).unwrap();
        assert_eq!(s.g.to_string(), "x^3-y^2");
        assert!(!s.l.is_proper(&b).unwrap());
        assert!(strip_principal_part(&Ideal::parse(&r, &["1"]).unwrap(), &b).is_err());
    }

    #[test]
    fn maximal_ideal_only() {
        let r = ring();
        let b = Budget::default();
        let rep = equidimensional_reduce(&[(Ideal::parse(&r, &["x", "y", "z"]).unwrap(), 3)], &b).unwrap();
        assert!(rep.reduced.is_none());
        assert_eq!(rep.rt_full, 1);
        assert!(rep.agrees);
        assert!(equidimensional_reduce(&[(Ideal::parse(&r, &["x", "y", "z"]).unwrap(), 2)], &b).is_err());
    }

    #[test]
    fn hypersurface_plus_curve() {
        let r = ring();
        let b = Budget::default();
        let comps = [
            (Ideal::parse(&r, &["x+y+z"]).unwrap(), 1),
            (Ideal::parse(&r, &["x", "y"]).unwrap(), 2),
        ];
        let rep = equidimensional_reduce(&comps, &b).unwrap();
        assert_eq!(rep.rt_reduced, Some(1));
        assert_eq!(rep.rt_full, 1);
        assert!(rep.agrees);
    }
}
