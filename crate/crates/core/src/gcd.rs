//! Multivariate gcd by primitive polynomial remainder sequences, recursing on
//! the number of variables through the content/primitive-part split.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Monic gcd of `a` and `b`; `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(gcd_inner(a, b))
}

/// Monic gcd of a list; zero for an empty or all-zero list.
pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Result<Option<Polynomial>> {
    let mut acc: Option<Polynomial> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.monic(),
            Some(g) => gcd(&g, p)?,
        });
    }
    Ok(acc)
}

fn gcd_inner(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    // monomial shortcut keeps the common case cheap
    if a.len() == 1 && b.len() == 1 {
        let m = a.terms()[0].mono.gcd(&b.terms()[0].mono);
        return Polynomial::monomial(a.ring(), a.field().one(), m);
    }
    let mut vars = a.variables();
    for v in b.variables() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    vars.sort_unstable();
    let v = vars[0];

    let ca = content(a, v);
    let cb = content(b, v);
    let mut pa = exact(a, &ca);
    let mut pb = exact(b, &cb);
    let g_content = gcd_inner(&ca, &cb);

    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        if pb.degree_in(v) == Some(0) {
            pb = Polynomial::one(a.ring());
            break;
        }
        let r = pseudo_remainder(&pa, &pb, v);
        if r.is_zero() {
            break;
        }
        pa = pb;
        pb = primitive_part(&r, v);
    }
    (&g_content * &primitive_part(&pb, v)).monic()
}

fn exact(a: &Polynomial, d: &Polynomial) -> Polynomial {
    a.div_exact(d)
        .expect("nonzero divisor")
        .expect("content divides exactly")
}

/// Gcd of the coefficients of `f` viewed as a polynomial in variable `v`.
fn content(f: &Polynomial, v: usize) -> Polynomial {
    let coeffs = f.coefficients_in(v);
    let mut g = Polynomial::zero(f.ring());
    for (_, c) in &coeffs {
        g = gcd_inner(&g, c);
        if g.is_unit() {
            break;
        }
    }
    g
}

fn primitive_part(f: &Polynomial, v: usize) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    exact(f, &content(f, v)).monic()
}

fn leading_in(f: &Polynomial, v: usize) -> (u32, Polynomial) {
    f.coefficients_in(v).pop().expect("nonzero polynomial")
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let (n, lcb) = leading_in(b, v);
    let arity = a.ring().arity();
    let one = a.field().one();
    let mut r = a.clone();
    while let Some(d) = r.degree_in(v) {
        if r.is_zero() || d < n {
            break;
        }
        let (_, lcr) = leading_in(&r, v);
        let shift = Polynomial::monomial(a.ring(), one.clone(), Monomial::var(arity, v, d - n));
        r = &(&lcb * &r) - &(&(&lcr * &shift) * b);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn ring(field: Field) -> Arc<Ring> {
        Ring::new(field, ["x", "y", "z"], MonomialOrder::DegRevLex).unwrap()
    }

    fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn monomial_gcd() {
        let r = ring(Field::Rational);
        assert_eq!(gcd(&p(&r, "x^2*y"), &p(&r, "x*y^2")).unwrap(), p(&r, "x*y"));
    }

    #[test]
    fn factorable_case() {
        let r = ring(Field::Rational);
        let g = gcd(&p(&r, "x^2-y^2"), &p(&r, "x^2+2*x*y+y^2")).unwrap();
        assert_eq!(g, p(&r, "x+y"));
    }

    #[test]
    fn common_factor_of_three_generators() {
        for field in [Field::Rational, Field::Prime(32003)] {
            let r = ring(field);
            let g0 = p(&r, "x^3-y*z");
            let gens: Vec<Polynomial> = ["x", "y", "z"].iter().map(|v| &p(&r, v) * &g0).collect();
            let g = gcd_all(&gens).unwrap().unwrap();
            assert_eq!(g, g0.monic());
            for f in &gens {
                assert!(f.div_exact(&g).unwrap().is_some());
            }
        }
    }

    #[test]
    fn zero_and_units() {
        let r = ring(Field::Rational);
        let z = Polynomial::zero(&r);
        assert!(gcd(&z, &z).unwrap().is_zero());
        assert_eq!(gcd(&z, &p(&r, "2*x+2")).unwrap(), p(&r, "x+1"));
        assert_eq!(gcd(&p(&r, "x+1"), &p(&r, "x-1")).unwrap(), p(&r, "1"));
        assert_eq!(gcd(&p(&r, "3"), &p(&r, "x")).unwrap(), p(&r, "1"));
    }

    #[test]
    fn multivariate_with_content() {
        let r = ring(Field::Rational);
        let a = &p(&r, "(x*y+z)*(y-z)^2") * &p(&r, "x+y+z+1");
        let b = &p(&r, "(x*y+z)*(y-z)") * &p(&r, "x^2-z");
        assert_eq!(gcd(&a, &b).unwrap(), p(&r, "(x*y+z)*(y-z)").monic());
    }
}
