#![allow(dead_code)]

pub mod oracles;
pub mod suites;

use gitstab::{HPoly, QMatrix, WeightVector, Q};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

pub fn rat(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn arb_rational(num: i64, den: i64) -> impl Strategy<Value = Q> {
    (-num..=num, 1..=den).prop_map(|(n, d)| rat(n, d))
}

pub fn arb_nonzero_rational() -> impl Strategy<Value = Q> {
    ((1i64..=5), any::<bool>(), 1i64..=3).prop_map(|(n, neg, d)| rat(if neg { -n } else { n }, d))
}

/// Exponent vector of total degree `d` in `n` variables.
pub fn arb_exponents(n: usize, d: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..n, d as usize).prop_map(move |picks| {
        let mut e = vec![0u32; n];
        for i in picks {
            e[i] += 1;
        }
        e
    })
}

pub fn arb_poly_in(n: usize, d: u32, max_terms: usize) -> impl Strategy<Value = HPoly> {
    prop::collection::vec((arb_exponents(n, d), arb_nonzero_rational()), 1..=max_terms)
        .prop_filter_map("terms cancel", move |terms| HPoly::new(n, terms).ok())
}

/// Nonzero polynomial with `n_vars` in `vars` and degree in `degs`.
pub fn arb_poly(
    vars: std::ops::RangeInclusive<usize>,
    degs: std::ops::RangeInclusive<u32>,
    max_terms: usize,
) -> impl Strategy<Value = HPoly> {
    (vars, degs).prop_flat_map(move |(n, d)| arb_poly_in(n, d, max_terms))
}

/// Polynomial inside the Fano window `1 < d < n_vars`.
pub fn arb_fano_poly(max_terms: usize) -> impl Strategy<Value = HPoly> {
    (3usize..=5)
        .prop_flat_map(|n| (Just(n), 2u32..n as u32))
        .prop_flat_map(move |(n, d)| arb_poly_in(n, d, max_terms))
}

pub fn arb_weights(n: usize) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec(arb_rational(6, 3), n).prop_map(WeightVector::new)
}

pub fn arb_int_weights(n: usize, b: i64) -> impl Strategy<Value = WeightVector> {
    prop::collection::vec((-b..=b).prop_map(|x| rat(x, 1)), n).prop_map(WeightVector::new)
}

pub fn arb_matrix(n: usize, b: i64) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec((-b..=b).prop_map(|x| rat(x, 1)), n), n)
        .prop_map(|rows| QMatrix::from_rows(rows).unwrap())
}

/// Unit lower triangular times unit upper triangular; always invertible.
pub fn arb_invertible(n: usize) -> impl Strategy<Value = QMatrix> {
    (arb_matrix(n, 2), arb_matrix(n, 2)).prop_map(move |(a, b)| {
        let mut l = QMatrix::identity(n);
        let mut u = QMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l.set(i, j, a.get(i, j).clone());
                u.set(j, i, b.get(j, i).clone());
            }
        }
        l.mul(&u)
    })
}

/// Random instance for seeded corpora: `n_vars` in 2..=4, degree in 1..=4,
/// at most 8 terms with small integer coefficients.
pub fn random_instance<R: Rng>(rng: &mut R) -> HPoly {
    loop {
        let n = rng.gen_range(2..=4usize);
        let d = rng.gen_range(1..=4u32);
        if let Some(f) = random_poly(rng, n, d, 8) {
            return f;
        }
    }
}

/// `None` when the drawn terms cancel.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, d: u32, max_terms: usize) -> Option<HPoly> {
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(Vec<u32>, Q)> = (0..k)
        .map(|_| {
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            let mut c = 0i64;
            while c == 0 {
                c = rng.gen_range(-3..=3);
            }
            (e, rat(c, 1))
        })
        .collect();
    HPoly::new(n, terms).ok()
}

pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x > &Q::zero() {
        1
    } else {
        -1
    }
}
