#![allow(dead_code)]

use std::sync::Arc;

use reltype::random::PolyGen;
use reltype::rees::{relation_type, IdealPresentation};
use reltype::{Budget, Field, Ideal, MonomialOrder, Polynomial, Ring};

pub fn ring(field: Field, vars: &[&str]) -> Arc<Ring> {
    Ring::new(field, vars.iter().copied(), MonomialOrder::DegRevLex).unwrap()
}

pub fn qq(vars: &[&str]) -> Arc<Ring> {
    ring(Field::Rational, vars)
}

pub fn gf(vars: &[&str]) -> Arc<Ring> {
    ring(Field::Prime(32003), vars)
}

pub fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

pub fn polys(r: &Arc<Ring>, gens: &[&str]) -> Vec<Polynomial> {
    ideal(r, gens).generators().to_vec()
}

pub fn rt(p: &IdealPresentation) -> u64 {
    relation_type(p, &Budget::unlimited()).unwrap().relation_type
}

pub fn rt_of(r: &Arc<Ring>, gens: &[&str]) -> u64 {
    rt(&IdealPresentation::new(r, polys(r, gens)).unwrap())
}

/// Small random homogeneous ideals: two or three variables, two to four
/// generators of degree 2 or 3 with at most four terms.
pub fn corpus(seed: u64, count: usize) -> Vec<Ideal> {
    corpus_in(qq, seed, count)
}

pub fn corpus_in(make: fn(&[&str]) -> Arc<Ring>, seed: u64, count: usize) -> Vec<Ideal> {
    let mut g = PolyGen::new(seed);
    let names = ["x", "y", "z"];
    (0..count)
        .map(|k| {
            let n = 2 + k % 2;
            let r = make(&names[..n]);
            let s = 2 + (k / 2) % 3;
            let gens = (0..s)
                .map(|i| {
                    let d = 2 + ((k + i) % 2) as u32;
                    g.polynomial(&r, d, d, 4)
                })
                .collect();
            Ideal::new(&r, gens).unwrap()
        })
        .collect()
}
