#[path = "common/oracle.rs"]
mod oracle;

use lievec::grading::{random_solvable, Dilation, Mode, RandomParams};
use lievec::liealg::lower_central_series;
use lievec::nilrad::{killing_radical, nilradical_of, nilradical_series};
use lievec::pipeline::{normalize, transform_exact, NormalizeOptions, Strategy};
use lievec::scalar::q;
use lievec::vfield::VarContext;
use lievec::{Error, ExpPolyCoeff, LieAlgebraVF, SeriesKind, VectorField};
use oracle::{ad_nilpotent, nilradical_oracle, trap, unit};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRADINGS: &[&[u32]] = &[&[1], &[1, 1], &[1, 2], &[0, 1], &[0, 2], &[1, 3], &[0, 1, 2], &[1, 1, 2], &[1, 2, 3], &[0, 1, 1]];

/// Random solvable algebras with `n <= 3` and dimension at most `max_dim`.
fn instances(count: usize, max_dim: usize) -> Vec<(u64, LieAlgebraVF)> {
    let names = ["x", "y", "z"];
    let mut out = Vec::new();
    let params = RandomParams {
        cap: max_dim,
        ..RandomParams::default()
    };
    for seed in 0u64.. {
        if out.len() == count {
            break;
        }
        let w = GRADINGS[seed as usize % GRADINGS.len()];
        let ctx = VarContext::new(&names[..w.len()]).unwrap();
        let h = Dilation::new(ctx, w.to_vec()).unwrap();
        match random_solvable(&h, seed, &params) {
            Ok(l) => out.push((seed, l)),
            Err(Error::DimensionCapExceeded(_)) => {}
            Err(e) => panic!("seed {seed}: {e}"),
        }
    }
    out
}

#[test]
fn nilradical_matches_power_sum_oracle() {
    let cases = instances(60, 6);
    assert!(cases.len() >= 50);
    for (seed, l) in &cases {
        let sc = l.structure();
        let nr = nilradical_of(sc).unwrap();
        assert_eq!(nr, nilradical_oracle(sc, *seed), "seed {seed}");
        for v in nr.basis() {
            assert!(ad_nilpotent(sc, v), "seed {seed}");
        }
        assert!(nr.is_ideal(sc));
    }
}

#[test]
fn trap_nilradical_avoids_killing_radical() {
    let sc = trap();
    let nr = nilradical_of(&sc).unwrap();
    let expect = lievec::Subspace::span(4, (1..4).map(|i| unit(4, i)));
    assert_eq!(nr, expect);
    assert_eq!(nilradical_oracle(&sc, 0), expect);
    assert!(killing_radical(&sc).contains(&unit(4, 0)));
    assert!(!ad_nilpotent(&sc, &unit(4, 0)));
}

#[test]
fn weights_follow_origin_dimensions() {
    for (seed, l) in instances(50, 6) {
        let c = normalize(&l, &NormalizeOptions::default()).unwrap();
        assert!(c.is_certified(), "seed {seed}: {:?}", c.status);
        let start = usize::from(c.profile.kind == SeriesKind::LowerCentral);
        let dims = &c.profile.dims_at_origin;
        for (i, d) in dims.iter().enumerate() {
            let count = c.weights.iter().filter(|&&w| w as usize >= start + i).count();
            assert_eq!(*d, count, "seed {seed}");
        }
        let mut sorted = c.weights.clone();
        sorted.sort();
        assert_eq!(sorted, oracle::weights_from_dims(start, dims), "seed {seed}");
        if c.profile.kind == SeriesKind::LowerCentral {
            assert_eq!(lower_central_series(l.structure(), None).dims.last(), Some(&0));
        } else {
            assert_eq!(nilradical_series(&l).unwrap().dims_at_origin, *dims);
        }
    }
}

/// `y_j = x_j + p_j(earlier)` along a random order of the positive-weight
/// variables, applied exactly to every basis field.
fn scramble(l: &LieAlgebraVF, w: &[u32], rng: &mut ChaCha8Rng) -> LieAlgebraVF {
    let n = w.len();
    let mut order: Vec<usize> = (0..n).filter(|&i| w[i] > 0).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut phi: Vec<ExpPolyCoeff> = (0..n).map(|i| ExpPolyCoeff::var(n, i)).collect();
    let mut psi = phi.clone();
    let mut earlier: Vec<usize> = (0..n).filter(|&i| w[i] == 0).collect();
    for &j in &order {
        let mut p = ExpPolyCoeff::zero(n);
        for &i in &earlier {
            for e in 1..=2 {
                let mut m = vec![0; n];
                m[i] = e;
                p = &p + &ExpPolyCoeff::monomial(n, q(rng.gen_range(-2..=2)), m);
            }
        }
        phi[j] = &phi[j] + &p;
        psi[j] = &psi[j] - &p.substitute(&psi).unwrap();
        earlier.push(j);
    }
    let ctx = l.ctx().clone();
    let basis: Vec<VectorField> = l
        .basis()
        .iter()
        .map(|x| {
            let comps = phi.iter().map(|p| x.apply(p).unwrap().substitute(&psi).unwrap()).collect();
            VectorField::new(ctx.clone(), comps)
        })
        .collect();
    LieAlgebraVF::from_basis(ctx, basis).unwrap()
}

#[test]
fn normalize_recovers_grading_after_scrambling() {
    for strategy in [Strategy::Forms, Strategy::Flows] {
        let opts = NormalizeOptions {
            strategy,
            ..NormalizeOptions::default()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut exact = 0;
        let cases = instances(60, 6);
        for (seed, l) in &cases {
            let w = GRADINGS[*seed as usize % GRADINGS.len()];
            let s = scramble(l, w, &mut rng);
            let c = normalize(&s, &opts).unwrap();
            assert!(c.is_certified(), "seed {seed} {strategy:?}: {:?}", c.status);
            let c0 = normalize(l, &opts).unwrap();
            assert!(c0.is_certified(), "seed {seed} {strategy:?}: {:?}", c0.status);
            let mut a = c.weights.clone();
            let mut b = c0.weights.clone();
            a.sort();
            b.sort();
            assert_eq!(a, b, "seed {seed}");
            match transform_exact(&s, &c) {
                Ok(t) => {
                    exact += 1;
                    let h = Dilation::new(t.ctx().clone(), c.weights.clone()).unwrap();
                    assert!(h.membership(t.basis(), Mode::NonPos).unwrap().holds, "seed {seed}");
                    let d1 = t.fields_of(&t.derived_series().chain[1]);
                    assert!(h.membership(&d1, Mode::StrictNeg).unwrap().holds, "seed {seed}");
                    assert_eq!(t.dim(), l.dim());
                }
                Err(Error::NotRepresentable(_)) => {}
                Err(e) => panic!("seed {seed}: {e}"),
            }
        }
        assert!(exact * 2 >= cases.len(), "{strategy:?}: only {exact} exact round trips");
    }
}
