#[path = "common/gen.rs"]
mod gen;

use gen::*;
use lievec::grading::Dilation;
use lievec::text::{format_field, parse_field};
use lievec::{ExpPolyCoeff, VectorField};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn cfg(cases: u32, seed: u64) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

proptest! {
    #![proptest_config(cfg(1000, 1))]

    #[test]
    fn ring_laws(a in ring_element(2, 3), b in ring_element(2, 3), c in ring_element(2, 2)) {
        let zero = ExpPolyCoeff::zero(2);
        let one = ExpPolyCoeff::one(2);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
    }
}

proptest! {
    #![proptest_config(cfg(500, 2))]

    #[test]
    fn partials_are_derivations(a in ring_element(2, 3), b in ring_element(2, 3), i in 0usize..2) {
        prop_assert_eq!((&a * &b).partial(i), &(&a.partial(i) * &b) + &(&a * &b.partial(i)));
        prop_assert_eq!((&a + &b).partial(i), &a.partial(i) + &b.partial(i));
    }

    #[test]
    fn partials_commute(a in ring_element(2, 4)) {
        prop_assert_eq!(a.partial(0).partial(1), a.partial(1).partial(0));
    }

    #[test]
    fn bracket_jacobi(x in field2(2), y in field2(2), z in field2(2)) {
        let xy_z = x.bracket(&y).unwrap().bracket(&z).unwrap();
        let yz_x = y.bracket(&z).unwrap().bracket(&x).unwrap();
        let zx_y = z.bracket(&x).unwrap().bracket(&y).unwrap();
        prop_assert!(xy_z.add(&yz_x).add(&zx_y).is_zero());
    }

    #[test]
    fn bracket_antisymmetric_bilinear(x in field2(2), y in field2(2), z in field2(2), c in small_rational()) {
        let xy = x.bracket(&y).unwrap();
        prop_assert!(xy.add(&y.bracket(&x).unwrap()).is_zero());
        let lhs = x.scale(&c).add(&z).bracket(&y).unwrap();
        let rhs = xy.scale(&c).add(&z.bracket(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_acts_as_commutator(x in field2(2), y in field2(2), f in ring_element(2, 2)) {
        let lhs = x.bracket(&y).unwrap().apply(&f).unwrap();
        let rhs = &x.apply(&y.apply(&f).unwrap()).unwrap() - &y.apply(&x.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_text_round_trip(x in field2(3)) {
        let text = format_field(&x);
        let back = parse_field(&text, &ctx2()).unwrap();
        prop_assert_eq!(back, x, "{}", text);
    }

    #[test]
    fn degrees_add_under_bracket(x in homogeneous_field(), y in homogeneous_field()) {
        let h = Dilation::new(ctx3(), vec![0, 1, 2]).unwrap();
        let dx = h.homogeneous_degree(&x).unwrap().unwrap();
        let dy = h.homogeneous_degree(&y).unwrap().unwrap();
        let b = x.bracket(&y).unwrap();
        if !b.is_zero() {
            prop_assert_eq!(h.homogeneous_degree(&b).unwrap(), Some(dx + dy));
        }
    }
}

/// Zero-weight factors in `x` for the `(0, 1, 2)` grading.
fn zero_weight_factor(k: u8) -> ExpPolyCoeff {
    use lievec::scalar::q;
    use lievec::Frequency;
    let x = ExpPolyCoeff::var(3, 0);
    let f = Frequency(vec![q(1), q(0), q(0)]);
    match k {
        0 => ExpPolyCoeff::one(3),
        1 => x,
        2 => ExpPolyCoeff::exp(f),
        3 => ExpPolyCoeff::cos(f),
        4 => ExpPolyCoeff::sin(f),
        _ => &x * &ExpPolyCoeff::exp(Frequency(vec![q(-1), q(0), q(0)])),
    }
}

/// A nonzero field homogeneous for weights `(0, 1, 2)` on `(x, y, z)`.
fn homogeneous_field() -> impl Strategy<Value = VectorField> {
    let term = (0usize..3, 0u32..=2, 0u32..=2, 0u8..6, small_rational());
    prop::collection::vec(term, 1..=4)
        .prop_map(|ts| {
            let w = [0i64, 1, 2];
            let deg = |(k, a, b, _, _): &(usize, u32, u32, u8, _)| *a as i64 + 2 * *b as i64 - w[*k];
            let target = deg(&ts[0]);
            let mut comps = vec![ExpPolyCoeff::zero(3); 3];
            for t in ts.iter().filter(|t| deg(t) == target) {
                let (k, a, b, g, c) = t;
                let m = ExpPolyCoeff::monomial(3, c.clone(), vec![0, *a, *b]);
                comps[*k] = &comps[*k] + &(&m * &zero_weight_factor(*g));
            }
            VectorField::new(ctx3(), comps)
        })
        .prop_filter("zero field", |v| !v.is_zero())
}
