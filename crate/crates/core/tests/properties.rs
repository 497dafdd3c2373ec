mod common;

use std::sync::Arc;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use reltype::gcd::gcd;
use reltype::parse::parse_polynomial;
use reltype::rees::{rees_ideal, IdealPresentation};
use reltype::script::{run_text, RunOptions};
use reltype::{Budget, GroebnerBasis, Ideal, Monomial, Polynomial, Ring, Term};

fn xyz() -> Arc<Ring> {
    qq(&["x", "y", "z"])
}

fn term_strategy(max_exp: u32) -> impl Strategy<Value = ((i64, i64), [u32; 3])> {
    ((-9i64..=9, 1i64..=4), [0..=max_exp, 0..=max_exp, 0..=max_exp])
}

fn build(r: &Arc<Ring>, terms: &[((i64, i64), [u32; 3])]) -> Polynomial {
    let f = r.field();
    Polynomial::from_terms(
        r,
        terms.iter().map(|&((n, d), e)| Term {
            coeff: f
                .from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
                .unwrap(),
            mono: Monomial::from_exponents(&e),
        }),
    )
}

fn poly(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(term_strategy(max_exp), 0..=max_terms).prop_map(|ts| build(&xyz(), &ts))
}

fn nonzero(max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_exp, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printing_reparses(f in poly(4, 6)) {
        let r = f.ring().clone();
        prop_assert_eq!(parse_polynomial(&r, &f.to_canonical_string()).unwrap(), f);
    }

    #[test]
    fn substitution_is_a_homomorphism(f in poly(2, 4), g in poly(2, 4), imgs in prop::collection::vec(poly(1, 3), 3)) {
        let r = xyz();
        let images: Vec<Option<Polynomial>> = imgs.into_iter().map(Some).collect();
        let phi = |p: &Polynomial| p.substitute(&r, &images).unwrap();
        prop_assert_eq!(phi(&(&f * &g)), &phi(&f) * &phi(&g));
        prop_assert_eq!(phi(&(&f + &g)), &phi(&f) + &phi(&g));
        prop_assert_eq!(phi(&f.pow(2)), phi(&f).pow(2));
    }

    #[test]
    fn homogeneous_components_sum_back(f in poly(4, 8), w in prop::collection::vec(0u32..3, 3)) {
        let parts = f.homogeneous_components(&w);
        let mut acc = Polynomial::zero(f.ring());
        let mut last = None;
        for (d, p) in &parts {
            prop_assert!(p.is_homogeneous(&w));
            prop_assert_eq!(p.weighted_degree(&w), Some(*d));
            prop_assert!(last < Some(*d));
            last = Some(*d);
            acc = &acc + p;
        }
        prop_assert_eq!(acc, f);
    }

    #[test]
    fn gcd_divides_and_scales(a in nonzero(2, 3), b in nonzero(2, 3), c in nonzero(1, 2)) {
        let g = gcd(&a, &b).unwrap();
        prop_assert!(a.div_exact(&g).unwrap().is_some());
        prop_assert!(b.div_exact(&g).unwrap().is_some());
        let gc = gcd(&(&a * &c), &(&b * &c)).unwrap();
        prop_assert_eq!(gc.monic(), (&g * &c).monic());
    }

    #[test]
    fn reduced_basis_ignores_generator_order(gens in prop::collection::vec(nonzero(2, 3), 1..4), seed in any::<u64>()) {
        let r = xyz();
        let b = Budget::unlimited();
        let reference = GroebnerBasis::compute(&r, &gens, &b).unwrap().into_elements();
        let mut shuffled = gens.clone();
        reltype::random::PolyGen::new(seed).shuffle(&mut shuffled);
        shuffled.push(&gens[0] * &gens[gens.len() - 1]);
        prop_assert_eq!(GroebnerBasis::compute(&r, &shuffled, &b).unwrap().into_elements(), reference);
    }

    #[test]
    fn intersection_and_colon_membership(
        i in prop::collection::vec(nonzero(2, 2), 1..3),
        j in prop::collection::vec(nonzero(2, 2), 1..3),
        f in nonzero(1, 2),
        samples in prop::collection::vec(poly(2, 3), 4),
    ) {
        let r = xyz();
        let b = Budget::unlimited();
        let (i, j) = (Ideal::new(&r, i).unwrap(), Ideal::new(&r, j).unwrap());
        let meet = i.intersect(&j, &b).unwrap();
        let colon = i.colon(&f, &b).unwrap();
        for g in i.product(&j).unwrap().generators() {
            prop_assert!(meet.contains(g, &b).unwrap());
        }
        for s in &samples {
            prop_assert_eq!(meet.contains(s, &b).unwrap(), i.contains(s, &b).unwrap() && j.contains(s, &b).unwrap());
            prop_assert_eq!(colon.contains(s, &b).unwrap(), i.contains(&(s * &f), &b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rees_equations_vanish_and_are_graded(gens in prop::collection::vec(nonzero(2, 2), 1..4)) {
        let r = xyz();
        let b = Budget::unlimited();
        let p = IdealPresentation::new(&r, gens).unwrap();
        let eqs = rees_ideal(&p, &b).unwrap();
        prop_assert!(eqs.verify_substitution(&b).unwrap());
        for g in eqs.generators() {
            prop_assert!(g.is_homogeneous(eqs.t_weights()));
        }
    }

    #[test]
    fn report_polynomials_reparse(gens in prop::collection::vec(nonzero(2, 2), 1..3)) {
        let list: Vec<String> = gens.iter().map(|g| g.to_canonical_string()).collect();
        let text = format!("ring QQ[x,y,z]; I = ideal({}); rees(I);", list.join(", "));
        let (reports, code) = run_text(&text, &RunOptions::default());
        prop_assert_eq!(code, 0);
        let stated: Vec<&str> = reports[0].result["generators"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
        prop_assert_eq!(stated, list.iter().map(String::as_str).collect::<Vec<_>>());
        let res = &reports[1].result;
        let desc = res["rees_ring"].as_str().unwrap();
        let vars: Vec<&str> = desc[desc.find('[').unwrap() + 1..desc.len() - 1].split(',').collect();
        let s = qq(&vars);
        let eqs = rees_ideal(&IdealPresentation::new(&xyz(), gens).unwrap(), &Budget::unlimited()).unwrap();
        for (text, g) in res["equations"].as_array().unwrap().iter().zip(eqs.generators()) {
            let back = parse_polynomial(&s, text.as_str().unwrap()).unwrap();
            prop_assert_eq!(back.to_canonical_string(), g.to_canonical_string());
        }
    }
}
