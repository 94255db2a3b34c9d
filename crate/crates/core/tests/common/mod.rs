#![allow(dead_code)]

use equivar_core::{MatGroup, MultiPoly, PolyVectorField, Rat, RatMatrix};
use proptest::prelude::*;

pub fn z2() -> MatGroup {
    MatGroup::from_generators(1, &[RatMatrix::from_i64(1, 1, &[-1])]).unwrap()
}

pub fn z2_diag() -> MatGroup {
    MatGroup::from_generators(2, &[RatMatrix::from_i64(2, 2, &[-1, 0, 0, -1])]).unwrap()
}

pub fn swap() -> MatGroup {
    MatGroup::from_generators(2, &[RatMatrix::from_i64(2, 2, &[0, 1, 1, 0])]).unwrap()
}

pub fn c4() -> MatGroup {
    MatGroup::from_generators(2, &[RatMatrix::from_i64(2, 2, &[0, -1, 1, 0])]).unwrap()
}

pub fn samples() -> Vec<(&'static str, MatGroup)> {
    vec![
        ("z2", z2()),
        ("z2_diag", z2_diag()),
        ("swap", swap()),
        ("c4", c4()),
    ]
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Random polynomial in `nvars` variables with total degree at most `max_deg`.
pub fn poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    let term = (-4i64..=4, prop::collection::vec(0..=max_deg, nvars));
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .filter(|(_, e)| e.iter().sum::<u32>() <= max_deg)
            .map(|(c, e)| (rat(c), e));
        MultiPoly::from_terms(nvars, terms).unwrap()
    })
}

pub fn field(n: usize, max_deg: u32) -> impl Strategy<Value = PolyVectorField> {
    prop::collection::vec(poly(n, max_deg), n).prop_map(|c| PolyVectorField::new(c).unwrap())
}

pub fn point(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    prop::collection::vec((-5i64..=5, 1i64..=3), n).prop_map(|v| {
        v.into_iter()
            .map(|(p, q)| Rat::new(p.into(), q.into()))
            .collect()
    })
}

/// Keeps the first `n` exponents of every term.
pub fn truncate_vars(p: &MultiPoly, n: usize) -> MultiPoly {
    MultiPoly::from_terms(
        n,
        p.terms().map(|(m, c)| (c.clone(), m.exps()[..n].to_vec())),
    )
    .unwrap()
}
