use std::collections::BTreeSet;

use lievec::conjecture::{witness, Verdict};
use lievec::nilrad::nilradical_series;
use lievec::pipeline::{normalize, NormalizeOptions, Status};
use lievec::text::AlgebraFile;
use lievec::LieAlgebraVF;

fn load() -> LieAlgebraVF {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/exp_trig.lie")).unwrap();
    let f = AlgebraFile::parse(&text).unwrap();
    LieAlgebraVF::closure(f.ctx, &f.generators, 64).unwrap()
}

// The eighteen listed generators miss [d_y, exp(x)*y*d_u] = exp(x)*d_u.
#[test]
fn listed_generators_close_at_nineteen() {
    let l = load();
    assert_eq!(l.dim(), 19);
    assert!(l.is_solvable());
    assert!(l.is_transitive_at_origin());
    let s = nilradical_series(&l).unwrap();
    assert_eq!(s.dims, vec![19, 15, 8, 3, 0]);
    assert_eq!(s.dims_at_origin, vec![4, 3, 2, 1, 0]);
}

#[test]
fn normalizes_with_zero_weight_x() {
    let l = load();
    let c = normalize(&l, &NormalizeOptions::default()).unwrap();
    assert_eq!(c.status, Status::Certified, "{:?}", c.status);
    assert_eq!(c.variables, vec!["x", "y", "z", "u"]);
    assert_eq!(c.weights, vec![0, 1, 2, 3]);
    assert_eq!(c.profile.r, vec![0, 1, 2, 3]);
    assert!(c.zero_part_commutes);
    let l1 = c.series_degree_bounds.iter().find(|b| b.index == 1).unwrap();
    assert!(l1.max_degree.unwrap() <= -1);
}

#[test]
fn witnessed_with_exp_and_trig_in_x() {
    let l = load();
    let (_, w) = witness(&l, &NormalizeOptions::default()).unwrap();
    assert_eq!(w.verdict, Verdict::Witnessed);
    assert_eq!(w.zero_weight, vec!["x"]);
    let gens: BTreeSet<&str> = w.generators.iter().map(String::as_str).collect();
    let expect: BTreeSet<&str> = ["x", "y", "z", "u", "exp(x)", "exp(2*x)", "sin(x)", "cos(x)"].into();
    assert_eq!(gens, expect);
    assert!(w.receipts.iter().all(|r| r.reexpands));
}
