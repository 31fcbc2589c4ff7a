//! Proptest strategies for ring elements, fields and jets.

#![allow(dead_code)]

use lievec::jets::{JetField, JetFunction, JetMap};
use lievec::scalar::{q, qf};
use lievec::vfield::Ctx;
use lievec::{ExpPolyCoeff, Frequency, Rational, VarContext, VectorField};
use proptest::prelude::*;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| qf(n, d))
}

fn freq(n: usize, range: i64) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(-range..=range, n).prop_map(|v| v.into_iter().map(q).collect())
}

/// `c x^a exp(<f, x>) trig(<g, x>)` with small data.
pub fn ring_term(n: usize) -> impl Strategy<Value = ExpPolyCoeff> {
    (
        small_rational(),
        prop::collection::vec(0u32..=2, n),
        freq(n, 2),
        0u8..3,
        freq(n, 2),
    )
        .prop_map(move |(c, mono, e, kind, mut g)| {
            let mut t = ExpPolyCoeff::monomial(n, c, mono);
            t = &t * &ExpPolyCoeff::exp(Frequency(e));
            if kind > 0 {
                if g.iter().all(|v| *v == q(0)) {
                    g[0] = q(1);
                }
                let trig = if kind == 1 {
                    ExpPolyCoeff::cos(Frequency(g))
                } else {
                    ExpPolyCoeff::sin(Frequency(g))
                };
                t = &t * &trig;
            }
            t
        })
}

pub fn ring_element(n: usize, max_terms: usize) -> impl Strategy<Value = ExpPolyCoeff> {
    prop::collection::vec(ring_term(n), 0..=max_terms)
        .prop_map(move |ts| ts.iter().fold(ExpPolyCoeff::zero(n), |acc, t| &acc + t))
}

pub fn ctx2() -> Ctx {
    VarContext::new(&["x", "y"]).unwrap()
}

pub fn ctx3() -> Ctx {
    VarContext::new(&["x", "y", "z"]).unwrap()
}

pub fn field2(max_terms: usize) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(ring_element(2, max_terms), 2).prop_map(|cs| VectorField::new(ctx2(), cs))
}

/// Polynomial jet with small integer coefficients.
pub fn jet(n: usize, order: u32, max_terms: usize) -> impl Strategy<Value = JetFunction<Rational>> {
    prop::collection::vec((prop::collection::vec(0u32..=order, n), -3i64..=3), 0..=max_terms).prop_map(
        move |ts| {
            JetFunction::from_coeffs(
                n,
                order,
                ts.into_iter()
                    .filter(|(m, _)| m.iter().sum::<u32>() <= order)
                    .map(|(m, c)| (m, q(c))),
            )
        },
    )
}

pub fn jet_field(n: usize, order: u32, max_terms: usize) -> impl Strategy<Value = JetField<Rational>> {
    prop::collection::vec(jet(n, order, max_terms), n).prop_map(JetField::new)
}

/// Origin-preserving map with invertible linear part.
pub fn jet_map(n: usize, order: u32) -> impl Strategy<Value = JetMap<Rational>> {
    (
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec(jet(n, order, 4), n),
    )
        .prop_filter_map("singular linear part", move |(lin, hi)| {
            let comps: Vec<JetFunction<Rational>> = (0..n)
                .map(|i| {
                    let mut f = JetFunction::from_coeffs(
                        n,
                        order,
                        hi[i].coeffs().iter().filter(|(m, _)| m.iter().sum::<u32>() >= 2).map(|(m, c)| (m.clone(), c.clone())),
                    );
                    for j in 0..n {
                        let mut m = vec![0; n];
                        m[j] = 1;
                        f.add_term(m, q(lin[i * n + j]));
                    }
                    f
                })
                .collect();
            let map = JetMap::new(comps).ok()?;
            (map.linear_part().determinant() != q(0)).then_some(map)
        })
}
