//! Test-side reference implementations, written independently of the library.

use gitstab::{QMatrix, Relation, Q};
use num_traits::{One, Zero};

/// Row echelon form by plain Gaussian elimination; returns the rank.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let factor = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let t = &factor * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Unique solution of a square system, if the matrix is nonsingular.
pub fn solve_square(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a.iter().zip(b).map(|(r, x)| {
        let mut row = r.clone();
        row.push(x.clone());
        row
    }).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for k in c..=n {
            m[c][k] = &m[c][k] / &piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for k in c..=n {
                    let t = &factor * &m[c][k];
                    m[i][k] -= t;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

fn satisfied(row: &[Q], rel: Relation, rhs: &Q, x: &[Q]) -> bool {
    let lhs = dot(row, x);
    match rel {
        Relation::Le => &lhs <= rhs,
        Relation::Ge => &lhs >= rhs,
        Relation::Eq => &lhs == rhs,
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Maximum of `c . x` over a bounded polyhedron, by enumerating every
/// intersection of `n` constraint hyperplanes. `None` when infeasible.
pub fn vertex_max(c: &[Q], constraints: &[(Vec<Q>, Relation, Q)]) -> Option<Q> {
    let n = c.len();
    let mut best: Option<Q> = None;
    for pick in subsets(constraints.len(), n) {
        let a: Vec<Vec<Q>> = pick.iter().map(|&i| constraints[i].0.clone()).collect();
        let b: Vec<Q> = pick.iter().map(|&i| constraints[i].2.clone()).collect();
        let Some(x) = solve_square(&a, &b) else { continue };
        if constraints.iter().all(|(r, rel, rhs)| satisfied(r, *rel, rhs, &x)) {
            let v = dot(c, &x);
            if best.as_ref().is_none_or(|b| &v > b) {
                best = Some(v);
            }
        }
    }
    best
}

/// `J = D + N` from Jordan blocks `(eigenvalue, size)`.
pub fn jordan(blocks: &[(i64, usize)]) -> (QMatrix, QMatrix) {
    let dim: usize = blocks.iter().map(|b| b.1).sum();
    let mut d = QMatrix::zeros(dim, dim);
    let mut nil = QMatrix::zeros(dim, dim);
    let mut at = 0;
    for &(e, size) in blocks {
        for i in at..at + size {
            d.set(i, i, Q::from_integer(e.into()));
            if i + 1 < at + size {
                nil.set(i, i + 1, Q::one());
            }
        }
        at += size;
    }
    (d, nil)
}

/// Dimension of `ker (m - e)^k`.
pub fn kernel_dim(m: &QMatrix, e: &Q, k: u32) -> usize {
    let shifted = m.sub(&QMatrix::identity(m.rows()).scale(e));
    let p = shifted.pow(k);
    m.rows() - rank(&p.to_rows())
}
