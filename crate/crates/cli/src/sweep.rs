use gitstab::{QMatrix, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` invertible integer matrices with entries in `[-2, 2]`, fully
/// determined by `seed`.
pub fn random_bases(dim: usize, count: usize, seed: u64) -> Vec<QMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rows: Vec<Vec<Q>> = (0..dim)
            .map(|_| (0..dim).map(|_| Q::from_integer(rng.gen_range(-2i64..=2).into())).collect())
            .collect();
        let m = QMatrix::from_rows(rows).expect("square");
        if m.inverse().is_some() {
            out.push(m);
        }
    }
    out
}
