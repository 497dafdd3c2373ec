use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::groebner::{kernel_of_ring_map, Budget, Ideal};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;

use super::PolyMatrix;

/// Ideal of a curve given by a parametrization, with diagnostics.
#[derive(Clone, Debug)]
pub struct CurveIdeal {
    pub ideal: Ideal,
    pub images: Vec<Polynomial>,
    pub warnings: Vec<String>,
}

impl CurveIdeal {
    /// Generators taken from the reduced basis, for use in relation type runs.
    pub fn generators(&self, budget: &Budget) -> Result<Vec<Polynomial>> {
        Ok(self.ideal.groebner_basis(budget)?.elements().to_vec())
    }

    /// Every generator vanishes under the parametrization.
    pub fn verify(&self) -> Result<bool> {
        let src = self.images[0].ring().clone();
        let imgs: Vec<Option<Polynomial>> = self.images.iter().cloned().map(Some).collect();
        for g in self.ideal.generators() {
            if !g.substitute(&src, &imgs)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Kernel of `x_i ↦ g_i(t)` for univariate images in a one-variable ring.
pub fn parametrized_curve_ideal(target: &Arc<Ring>, images: Vec<Polynomial>, budget: &Budget) -> Result<CurveIdeal> {
    let src = images
        .first()
        .ok_or_else(|| Error::precondition("curve needs at least one image"))?
        .ring()
        .clone();
    if src.arity() != 1 {
        return Err(Error::precondition("curve images must be univariate in one parameter"));
    }
    let ideal = kernel_of_ring_map(target, &images, budget)?;
    Ok(CurveIdeal {
        ideal,
        images,
        warnings: Vec::new(),
    })
}

/// Kernel of `x_i ↦ t^{n_i}`.
pub fn monomial_curve_ideal(target: &Arc<Ring>, exponents: &[u32], budget: &Budget) -> Result<CurveIdeal> {
    if exponents.is_empty() || exponents.contains(&0) {
        return Err(Error::precondition("monomial curve exponents must be positive"));
    }
    let t = target.fresh_name("t");
    let src = Ring::new(target.field(), [t], MonomialOrder::DegRevLex)?;
    let tv = Polynomial::var(&src, 0);
    let images = exponents.iter().map(|&e| tv.pow(e)).collect();
    let mut c = parametrized_curve_ideal(target, images, budget)?;
    let g = exponents.iter().fold(0u32, |a, &b| a.gcd(&b));
    if g != 1 {
        c.warnings
            .push(format!("gcd of the exponents is {g}; the parametrization is not injective"));
    }
    Ok(c)
}

/// Herzog–Northcott ideal of the exponent triples `a`, `b` in the first three variables.
#[derive(Clone, Debug)]
pub struct HNIdeal {
    pub a: [u32; 3],
    pub b: [u32; 3],
    pub c: [u32; 3],
    pub ideal: Ideal,
    pub m: [u64; 3],
    pub gcd_m: u64,
}

impl HNIdeal {
    /// `gcd(m(J)) = 1`, the reported primality criterion.
    pub fn is_prime_by_criterion(&self) -> bool {
        self.gcd_m == 1
    }

    /// The `2 × 3` matrix whose minors give the generators.
    pub fn matrix(&self) -> PolyMatrix {
        let r = self.ideal.ring();
        let v = |i: usize, e: u32| Polynomial::var(r, i).pow(e);
        let [a1, a2, a3] = self.a;
        let [b1, b2, b3] = self.b;
        PolyMatrix::new(r, vec![vec![v(0, a1), v(1, a2), v(2, a3)], vec![v(1, b2), v(2, b3), v(0, b1)]])
            .expect("rectangular")
    }

    /// Images `x ↦ t^{m_1}, y ↦ t^{m_2}, z ↦ t^{m_3}`.
    pub fn parametrization(&self) -> Result<Vec<Polynomial>> {
        let t = self.ideal.ring().fresh_name("t");
        let src = Ring::new(self.ideal.ring().field(), [t], MonomialOrder::DegRevLex)?;
        let tv = Polynomial::var(&src, 0);
        self.m
            .iter()
            .map(|&e| {
                u32::try_from(e)
                    .map(|e| tv.pow(e))
                    .map_err(|_| Error::precondition("parametrization exponent too large"))
            })
            .collect()
    }
}

pub fn herzog_northcott(ring: &Arc<Ring>, a: [u32; 3], b: [u32; 3]) -> Result<HNIdeal> {
    if ring.arity() < 3 {
        return Err(Error::precondition("Herzog-Northcott ideals need three variables"));
    }
    if a.iter().chain(&b).any(|&e| e == 0) {
        return Err(Error::precondition("Herzog-Northcott exponents must be positive"));
    }
    let c = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    let v = |i: usize, e: u32| Polynomial::var(ring, i).pow(e);
    let gens = vec![
        &v(0, c[0]) - &(&v(1, b[1]) * &v(2, a[2])),
        &v(1, c[1]) - &(&v(0, a[0]) * &v(2, b[2])),
        &v(2, c[2]) - &(&v(0, b[0]) * &v(1, a[1])),
    ];
    let (a64, b64, c64) = (a.map(u64::from), b.map(u64::from), c.map(u64::from));
    let m = [
        c64[1] * c64[2] - a64[1] * b64[2],
        c64[0] * c64[2] - a64[2] * b64[0],
        c64[0] * c64[1] - a64[0] * b64[1],
    ];
    let gcd_m = m[0].gcd(&m[1]).gcd(&m[2]);
    Ok(HNIdeal {
        a,
        b,
        c,
        ideal: Ideal::new(ring, gens)?,
        m,
        gcd_m,
    })
}

/// Edge ideal of the cycle on the first `n` variables.
pub fn cycle_edge_ideal(ring: &Arc<Ring>, n: usize) -> Result<Ideal> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::precondition("cycle length must be even and at least 4"));
    }
    if ring.arity() < n {
        return Err(Error::precondition(format!("a {n}-cycle needs {n} variables")));
    }
    let gens = (0..n)
        .map(|i| &Polynomial::var(ring, i) * &Polynomial::var(ring, (i + 1) % n))
        .collect();
    Ideal::new(ring, gens)
}
