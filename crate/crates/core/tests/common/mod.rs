//! Instance catalogues shared by the integration tests.

#![allow(dead_code)]

use dualbent::constructions::{
    diag_quad, mm_power, mm_qpoly, quad_trace, spread_bent, theorem1_construct, Family, Theorem1Params,
};
use dualbent::{FieldDesc, FieldElem, Instance};

fn primitive(p: u32, m: u32) -> FieldElem {
    FieldDesc::new(p, m).unwrap().primitive_element()
}

fn power(p: u32, m: u32, e: u64) -> FieldElem {
    let k = FieldDesc::new(p, m).unwrap();
    k.pow(k.primitive_element(), e)
}

/// alpha = (1, w^2, w^4): distinct branches, all of the same quadratic character.
fn even_alphas(p: u32, n: u32) -> [FieldElem; 3] {
    [FieldElem::ONE, power(p, n, 2), power(p, n, 4)]
}

/// alpha = (1, w, w^2): the middle branch has the opposite quadratic character.
fn mixed_alphas(p: u32, n: u32) -> [FieldElem; 3] {
    [FieldElem::ONE, power(p, n, 1), power(p, n, 2)]
}

pub fn three_branch(p: u32, n: u32, m: u32, s: u32, alpha: [FieldElem; 3]) -> Instance {
    theorem1_construct(&Theorem1Params {
        p,
        n,
        m,
        s,
        alpha,
        beta: FieldElem::ONE,
        l_coeffs: vec![FieldElem::ONE],
        gamma: FieldElem::ONE,
    })
    .unwrap()
}

/// Ternary instances of every family on groups of order at most 3^8.
pub fn ternary_desk() -> Vec<Instance> {
    let w2 = primitive(3, 2);
    let w4 = primitive(3, 4);
    let w6 = primitive(3, 6);
    let w8 = primitive(3, 8);
    vec![
        mm_power(3, 1, 1, FieldElem(1), 1).unwrap(),
        mm_power(3, 2, 1, FieldElem(1), 1).unwrap(),
        mm_power(3, 2, 2, FieldElem(1), 3).unwrap(),
        mm_power(3, 4, 2, w4, 1).unwrap(),
        mm_power(3, 4, 4, FieldElem(1), 3).unwrap(),
        mm_qpoly(3, 2, 1, FieldElem(1), vec![FieldElem(0), FieldElem(1)]).unwrap(),
        mm_qpoly(3, 2, 2, w2, vec![FieldElem(1)]).unwrap(),
        mm_qpoly(3, 4, 2, FieldElem(1), vec![FieldElem(0), FieldElem(1)]).unwrap(),
        quad_trace(3, 2, 1, FieldElem(1)).unwrap(),
        quad_trace(3, 2, 1, w2).unwrap(),
        quad_trace(3, 4, 2, FieldElem(1)).unwrap(),
        quad_trace(3, 6, 2, w6).unwrap(),
        quad_trace(3, 8, 2, w8).unwrap(),
        quad_trace(3, 8, 4, FieldElem(1)).unwrap(),
        quad_trace(3, 3, 1, FieldElem(1)).unwrap(),
        diag_quad(3, 1, vec![FieldElem(1), FieldElem(1)]).unwrap(),
        diag_quad(3, 1, vec![FieldElem(1), FieldElem(2), FieldElem(1), FieldElem(1)]).unwrap(),
        diag_quad(3, 2, vec![FieldElem(1), w2]).unwrap(),
        diag_quad(3, 2, vec![FieldElem(1), FieldElem(1), FieldElem(1), w2]).unwrap(),
        spread_bent(3, 1, 1, None, FieldElem::ZERO).unwrap(),
        spread_bent(3, 2, 1, None, FieldElem::ZERO).unwrap(),
        spread_bent(3, 2, 2, None, FieldElem::ZERO).unwrap(),
        spread_bent(3, 4, 2, None, FieldElem::ZERO).unwrap(),
        three_branch(3, 2, 1, 1, even_alphas(3, 2)),
        three_branch(3, 2, 2, 2, even_alphas(3, 2)),
        three_branch(3, 2, 2, 1, mixed_alphas(3, 2)),
        three_branch(3, 4, 2, 2, even_alphas(3, 4)),
    ]
}

/// Instances with codomain GF(p) over groups of order at most 7^4.
pub fn prime_codomain(p: u32) -> Vec<Instance> {
    let w2 = primitive(p, 2);
    let mut out = vec![
        mm_power(p, 1, 1, FieldElem(1), 1).unwrap(),
        mm_power(p, 2, 1, FieldElem(1), if p == 3 { 3 } else { 5 }).unwrap(),
        mm_qpoly(p, 2, 1, w2, vec![FieldElem(0), FieldElem(1)]).unwrap(),
        quad_trace(p, 1, 1, FieldElem(1)).unwrap(),
        quad_trace(p, 2, 1, FieldElem(1)).unwrap(),
        quad_trace(p, 2, 1, w2).unwrap(),
        quad_trace(p, 3, 1, primitive(p, 3)).unwrap(),
        quad_trace(p, 4, 1, FieldElem(1)).unwrap(),
        diag_quad(p, 1, vec![FieldElem(1), FieldElem(p - 1)]).unwrap(),
        diag_quad(p, 1, vec![FieldElem(1), FieldElem(2), FieldElem(1)]).unwrap(),
        spread_bent(p, 1, 1, None, FieldElem::ZERO).unwrap(),
        spread_bent(p, 2, 1, None, FieldElem::ZERO).unwrap(),
        three_branch(p, 2, 1, 1, even_alphas(p, 2)),
        three_branch(p, 2, 1, 1, mixed_alphas(p, 2)),
    ];
    if p == 3 {
        out.push(mm_power(3, 3, 1, FieldElem(1), 5).unwrap());
        out.push(quad_trace(3, 7, 1, FieldElem(1)).unwrap());
        out.push(three_branch(3, 4, 1, 1, mixed_alphas(3, 4)));
    }
    if p == 5 {
        out.push(diag_quad(5, 1, vec![FieldElem(2), FieldElem(3), FieldElem(1), FieldElem(4)]).unwrap());
    }
    out
}

pub fn families_covered(instances: &[Instance]) -> Vec<Family> {
    Family::ALL.into_iter().filter(|f| instances.iter().any(|i| i.family == *f)).collect()
}
