//! Randomized property suites. Each runs a deterministic proptest runner so the
//! acceptance target and the property tests see the same cases.

use gitstab::degeneration::CrosscheckWitness;
use gitstab::lp::solve;
use gitstab::{
    apply_derivation, build_degeneration, chevalley_split, classify_torus, euler_check,
    from_destabilizer, futaki_from_kappa, futaki_of_limit, invariance, limit_poly, mu,
    oracle_classify, parse_poly, weight_spectrum, HPoly, Invariance, LinearProgram,
    LinearVectorField, LpOutcome, QMatrix, Relation, WeightVector, Q,
};
use gitstab::vfield::is_chevalley_pair;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use super::oracles::{jordan, kernel_dim, vertex_max};
use super::*;

pub type Suite = fn(u32) -> Result<(), String>;

pub const SUITES: &[(&str, Suite)] = &[
    ("parser round-trip", parser_roundtrip),
    ("ring identities and Euler", ring_identities),
    ("mu shift and scaling laws", mu_laws),
    ("limit idempotence and mu(f_inf) = mu(f)", limit_laws),
    ("kappa = mu for invariant diagonal fields", kappa_equals_mu),
    ("nilpotent implies kappa = 0", nilpotent_kappa_zero),
    ("Leibniz rule", leibniz),
    ("Futaki sign = -sign(mu), scaling covariance", futaki_sign),
    ("Chevalley postconditions and kernel filtration", chevalley),
    ("LP witness exactness vs vertex enumeration", lp_exactness),
    ("LP duality spot-check", lp_duality),
    ("permutation equivariance", permutation_equivariance),
    ("classify_torus vs box oracle", classify_vs_oracle),
    ("degeneration invariants", degeneration_invariants),
    ("Futaki-sign bridge", futaki_bridge),
];

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn with_weights(
    vars: std::ops::RangeInclusive<usize>,
    degs: std::ops::RangeInclusive<u32>,
) -> impl Strategy<Value = (HPoly, WeightVector)> {
    arb_poly(vars, degs, 8).prop_flat_map(|f| {
        let n = f.n_vars();
        (Just(f), arb_weights(n))
    })
}

pub fn parser_roundtrip(cases: u32) -> Result<(), String> {
    run(cases, arb_poly(2..=6, 1..=5, 8), |f| {
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, f.n_vars()).unwrap(), f.clone());
        let spaced = text.replace(' ', "").replace('+', " + ");
        prop_assert_eq!(parse_poly(&spaced, f.n_vars()).unwrap(), f);
        Ok(())
    })
}

pub fn ring_identities(cases: u32) -> Result<(), String> {
    let pair = arb_poly(2..=4, 1..=3, 6).prop_flat_map(|f| {
        let (n, d) = (f.n_vars(), f.degree());
        (Just(f), arb_poly_in(n, d, 6), arb_poly_in(n, 2, 4))
    });
    run(cases, pair, |(f, g, h)| {
        prop_assert!(f.add(&f.neg()).unwrap().is_zero());
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        let fh = f.mul(&h).unwrap();
        prop_assert_eq!(fh.clone(), h.mul(&f).unwrap());
        prop_assert_eq!(fh.degree(), f.degree() + 2);
        prop_assert_eq!(euler_check(&f), f.degree());
        prop_assert_eq!(euler_check(&fh), f.degree() + 2);
        Ok(())
    })
}

pub fn mu_laws(cases: u32) -> Result<(), String> {
    let s = (with_weights(2..=5, 1..=4), arb_rational(6, 4), (1i64..=6, 1i64..=4));
    run(cases, s, |((f, lambda), c, (tn, td))| {
        let d = Q::from_integer(f.degree().into());
        let m = mu(&lambda, &f).unwrap();
        prop_assert_eq!(mu(&lambda.shift(&c), &f).unwrap(), &m + &c * &d);
        let t = rat(tn, td);
        prop_assert_eq!(mu(&lambda.scale(&t), &f).unwrap(), &m * &t);
        prop_assert!(f.terms().all(|(g, _)| g.weight(lambda.as_slice()) >= m));
        prop_assert_eq!(weight_spectrum(&lambda, &f).unwrap().min_weight().cloned(), Some(m));
        Ok(())
    })
}

pub fn limit_laws(cases: u32) -> Result<(), String> {
    run(cases, with_weights(2..=5, 1..=4), |(f, lambda)| {
        let m = mu(&lambda, &f).unwrap();
        let finf = limit_poly(&lambda, &f).unwrap();
        prop_assert_eq!(limit_poly(&lambda, &finf).unwrap(), finf.clone());
        prop_assert_eq!(mu(&lambda, &finf).unwrap(), m.clone());
        for (g, c) in finf.terms() {
            prop_assert_eq!(&f.coeff(g), c);
        }
        let rest = f.sub(&finf).unwrap();
        prop_assert!(rest.terms().all(|(g, _)| g.weight(lambda.as_slice()) > m));
        prop_assert_eq!(weight_spectrum(&lambda, &f).unwrap().reassemble().unwrap(), f);
        Ok(())
    })
}

pub fn kappa_equals_mu(cases: u32) -> Result<(), String> {
    run(cases, with_weights(2..=5, 1..=4), |(f, lambda)| {
        let finf = limit_poly(&lambda, &f).unwrap();
        let v = LinearVectorField::diagonal(lambda.as_slice());
        let m = mu(&lambda, &f).unwrap();
        prop_assert_eq!(invariance(&v, &finf).unwrap(), Invariance::Invariant { kappa: m });
        let uniform = weight_spectrum(&lambda, &f).unwrap().entries().len() == 1;
        prop_assert_eq!(invariance(&v, &f).unwrap().is_invariant(), uniform);
        Ok(())
    })
}

fn arb_nilpotent(n: usize) -> impl Strategy<Value = QMatrix> {
    (arb_matrix(n, 2), arb_invertible(n)).prop_map(move |(a, p)| {
        let mut u = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                u.set(i, j, a.get(i, j).clone());
            }
        }
        p.mul(&u).mul(&p.inverse().unwrap())
    })
}

pub fn nilpotent_kappa_zero(cases: u32) -> Result<(), String> {
    let s = (3usize..=4).prop_flat_map(|n| {
        (
            arb_nilpotent(n),
            prop::collection::vec(prop::collection::vec(-2i64..=2, n), 1..=3),
            arb_poly_in(n, 2, 4),
        )
    });
    run(cases, s, |(a, combos, g)| {
        let n = a.rows();
        let v = LinearVectorField::new(a.clone()).unwrap();
        prop_assert!(v.is_nilpotent());
        // linear forms c . z with A^T c = 0 are killed by v, and so are their products
        let ker = a.transpose().kernel();
        let mut f: Option<HPoly> = None;
        for combo in &combos {
            let mut c = vec![Q::zero(); n];
            for (k, basis) in ker.iter().enumerate() {
                let w = rat(combo[k % n], 1);
                for i in 0..n {
                    c[i] += &w * &basis[i];
                }
            }
            if c.iter().all(Zero::is_zero) {
                c = ker[0].clone();
            }
            let l = HPoly::linear(&c);
            f = Some(match f {
                None => l,
                Some(acc) => acc.mul(&l).unwrap(),
            });
        }
        let f = f.unwrap();
        prop_assert_eq!(invariance(&v, &f).unwrap(), Invariance::Invariant { kappa: Q::zero() });
        if let Invariance::Invariant { kappa } = invariance(&v, &g).unwrap() {
            prop_assert!(kappa.is_zero());
        }
        Ok(())
    })
}

pub fn leibniz(cases: u32) -> Result<(), String> {
    let s = (2usize..=4).prop_flat_map(|n| (arb_matrix(n, 3), arb_poly_in(n, 2, 5), arb_poly_in(n, 1, 3)));
    run(cases, s, |(a, f, g)| {
        let v = LinearVectorField::new(a).unwrap();
        let lhs = apply_derivation(&v, &f.mul(&g).unwrap()).unwrap();
        let rhs = apply_derivation(&v, &f)
            .unwrap()
            .mul(&g)
            .unwrap()
            .add(&f.mul(&apply_derivation(&v, &g).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    })
}

pub fn futaki_sign(cases: u32) -> Result<(), String> {
    let s = arb_fano_poly(8).prop_flat_map(|f| {
        let n = f.n_vars();
        (Just(f), arb_weights(n), arb_rational(5, 3))
    });
    run(cases, s, |(f, lambda, t)| {
        let lambda = lambda.trace_zero_part();
        let v = futaki_of_limit(&lambda, &f).unwrap();
        let m = mu(&lambda, &f).unwrap();
        prop_assert_eq!(&v.kappa, &m);
        prop_assert_eq!(sign(&v.value), -sign(&m));
        let scaled = futaki_from_kappa(v.n, v.d, &v.kappa * &t).unwrap();
        prop_assert_eq!(scaled.value, &v.value * &t);
        prop_assert!(futaki_from_kappa(v.n, v.d, Q::zero()).unwrap().value.is_zero());
        Ok(())
    })
}

fn arb_blocks() -> impl Strategy<Value = Vec<(i64, usize)>> {
    let partitions: Vec<Vec<usize>> = vec![
        vec![4],
        vec![3, 1],
        vec![2, 2],
        vec![2, 1, 1],
        vec![1, 1, 1, 1],
    ];
    prop::sample::select(partitions).prop_flat_map(|sizes| {
        let k = sizes.len();
        prop::collection::vec(-3i64..=3, k)
            .prop_map(move |eig| eig.into_iter().zip(sizes.clone()).collect::<Vec<_>>())
    })
}

pub fn chevalley(cases: u32) -> Result<(), String> {
    run(cases, (arb_blocks(), arb_invertible(4)), |(blocks, p)| {
        let (d, nil) = jordan(&blocks);
        let pinv = p.inverse().unwrap();
        let conj = |m: &QMatrix| p.mul(m).mul(&pinv);
        let v = LinearVectorField::new(conj(&d.add(&nil))).unwrap();
        let (s, n) = chevalley_split(&v);
        prop_assert!(is_chevalley_pair(&v, &s, &n));
        prop_assert_eq!(s.matrix(), &conj(&d));
        prop_assert_eq!(n.matrix(), &conj(&nil));
        for &(e, _) in &blocks {
            let eq = Q::from_integer(e.into());
            for k in 1..=4u32 {
                let expected: usize = blocks
                    .iter()
                    .filter(|b| b.0 == e)
                    .map(|b| b.1.min(k as usize))
                    .sum();
                prop_assert_eq!(kernel_dim(v.matrix(), &eq, k), expected);
            }
            prop_assert_eq!(kernel_dim(s.matrix(), &eq, 1), kernel_dim(v.matrix(), &eq, 4));
        }
        Ok(())
    })
}

type Lp = (Vec<Q>, Vec<(Vec<Q>, Relation, Q)>);

fn arb_lp(only_le: bool) -> impl Strategy<Value = Lp> {
    (1usize..=4, 0usize..=8, 1i64..=5).prop_flat_map(move |(n, m, b)| {
        let rel = if only_le {
            Just(Relation::Le).boxed()
        } else {
            prop::sample::select(vec![Relation::Le, Relation::Ge, Relation::Eq]).boxed()
        };
        let row = prop::collection::vec((-3i64..=3).prop_map(|x| rat(x, 1)), n);
        (
            prop::collection::vec((-3i64..=3).prop_map(|x| rat(x, 1)), n),
            prop::collection::vec((row, rel, (-4i64..=4).prop_map(|x| rat(x, 1))), m),
        )
            .prop_map(move |(c, mut cons)| {
                for i in 0..n {
                    let mut e = vec![Q::zero(); n];
                    e[i] = Q::one();
                    cons.push((e.clone(), Relation::Le, rat(b, 1)));
                    cons.push((e.iter().map(|x| -x).collect(), Relation::Le, rat(b, 1)));
                }
                (c, cons)
            })
    })
}

fn build_lp(c: &[Q], cons: &[(Vec<Q>, Relation, Q)]) -> LinearProgram {
    let mut lp = LinearProgram::new(c.to_vec());
    for (row, rel, rhs) in cons {
        lp.add(row.clone(), *rel, rhs.clone()).unwrap();
    }
    lp
}

pub fn lp_exactness(cases: u32) -> Result<(), String> {
    run(cases, arb_lp(false), |(c, cons)| {
        let lp = build_lp(&c, &cons);
        match (solve(&lp), vertex_max(&c, &cons)) {
            (LpOutcome::Optimal { value, witness }, Some(best)) => {
                prop_assert!(lp.is_feasible_point(&witness));
                let at = c.iter().zip(&witness).fold(Q::zero(), |a, (x, y)| a + x * y);
                prop_assert_eq!(&at, &value);
                prop_assert_eq!(value, best);
            }
            (LpOutcome::Infeasible, None) => {}
            (got, want) => prop_assert!(false, "solver {:?} vs oracle {:?}", got, want),
        }
        Ok(())
    })
}

pub fn lp_duality(cases: u32) -> Result<(), String> {
    run(cases, arb_lp(true), |(c, cons)| {
        let n = c.len();
        let m = cons.len();
        let primal = solve(&build_lp(&c, &cons));
        // min b.y s.t. A^T y = c, y >= 0
        let mut dual = LinearProgram::new(cons.iter().map(|r| -r.2.clone()).collect());
        for j in 0..n {
            dual.add(cons.iter().map(|r| r.0[j].clone()).collect(), Relation::Eq, c[j].clone()).unwrap();
        }
        for i in 0..m {
            let mut e = vec![Q::zero(); m];
            e[i] = Q::one();
            dual.add(e, Relation::Ge, Q::zero()).unwrap();
        }
        if let LpOutcome::Optimal { value, .. } = primal {
            match solve(&dual) {
                LpOutcome::Optimal { value: dv, .. } => prop_assert_eq!(value, -dv),
                other => prop_assert!(false, "dual not optimal: {:?}", other),
            }
        }
        Ok(())
    })
}

pub fn permutation_equivariance(cases: u32) -> Result<(), String> {
    let s = with_weights(2..=4, 1..=4).prop_flat_map(|(f, l)| {
        let n = f.n_vars();
        (Just(f), Just(l), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    });
    run(cases, s, |(f, lambda, perm)| {
        let g = f.permute_variables(&perm).unwrap();
        let pl = lambda.permute(&perm);
        prop_assert_eq!(mu(&pl, &g).unwrap(), mu(&lambda, &f).unwrap());
        prop_assert_eq!(
            limit_poly(&pl, &g).unwrap(),
            limit_poly(&lambda, &f).unwrap().permute_variables(&perm).unwrap()
        );
        let (a, b) = (classify_torus(&f), classify_torus(&g));
        prop_assert_eq!(a.class, b.class);
        prop_assert_eq!(a.fixing_subspace_dim, b.fixing_subspace_dim);
        Ok(())
    })
}

pub fn classify_vs_oracle(cases: u32) -> Result<(), String> {
    run(cases, arb_poly(2..=3, 1..=4, 8), |f| {
        let t = classify_torus(&f);
        let o = oracle_classify(&f, 6).unwrap();
        prop_assert!(t.is_consistent_with(&f));
        prop_assert!(o.is_consistent_with(&f));
        prop_assert_eq!(t.class, o.class);
        prop_assert_eq!(t.fixing_subspace_dim, o.fixing_subspace_dim);
        if let Some(l) = &t.destabilizer {
            prop_assert!(l.is_trace_zero() && l.is_integral() && !l.is_zero());
            prop_assert!(mu(l, &f).unwrap() >= Q::zero());
        }
        Ok(())
    })
}

pub fn degeneration_invariants(cases: u32) -> Result<(), String> {
    let s = arb_fano_poly(8).prop_flat_map(|f| {
        let n = f.n_vars();
        (Just(f), arb_weights(n))
    });
    run(cases, s, |(f, lambda)| {
        let r = build_degeneration(&f, &LinearVectorField::diagonal(lambda.as_slice())).unwrap();
        let fam = &r.family;
        prop_assert_eq!(fam.exponents().min().cloned(), Some(Zero::zero()));
        prop_assert!(fam.s_rescale >= One::one());
        prop_assert_eq!(fam.evaluate(&Q::one()), f.clone());
        prop_assert_eq!(fam.evaluate(&Q::zero()), r.special_fiber.clone());
        prop_assert_eq!(r.special_fiber.clone(), limit_poly(&lambda, &f).unwrap());
        prop_assert_eq!(r.trivial, fam.strata.len() == 1);
        let g = &r.normalized_trace_zero_generator;
        prop_assert!(g.is_trace_zero() && g.is_integral());
        let fut = r.futaki.clone().unwrap();
        prop_assert_eq!(fut.value, futaki_of_limit(g, &f).unwrap().value);
        Ok(())
    })
}

pub fn futaki_bridge(cases: u32) -> Result<(), String> {
    let s = arb_fano_poly(6).prop_flat_map(|f| {
        let n = f.n_vars();
        (Just(f), arb_int_weights(n, 4))
    });
    run(cases, s, |(f, lambda)| {
        let verdict = classify_torus(&f);
        let witness = |l: WeightVector| {
            let r = from_destabilizer(&f, &l).unwrap();
            CrosscheckWitness { lambda: l, futaki: r.futaki.unwrap().value, trivial: r.trivial }
        };
        match &verdict.destabilizer {
            Some(l) => prop_assert!(!witness(l.clone()).satisfies_condition()),
            None => {
                let k = Q::from_integer(f.n_vars().into());
                let l = lambda.scale(&k).shift(&-lambda.trace());
                prop_assert!(witness(l).satisfies_condition());
            }
        }
        Ok(())
    })
}
