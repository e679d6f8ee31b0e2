//! Linear vector fields `v = sum a_ij zj d/dzi` on `C^{n+1}`, stored as the
//! matrix `(a_ij)`.
//!
//! The group generated by `v` acts on polynomials by inverse substitution, so
//! under a diagonal field with weights `lambda` the monomial `z^g` is scaled by
//! `exp(-(lambda . g) t)`. Every module uses this single convention.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{parse_rational, parse_rational_list, Q};
use crate::matrix::QMatrix;
use crate::poly::{HPoly, Monomial};
use crate::upoly::UPoly;
use crate::weights::WeightVector;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearVectorField {
    matrix: QMatrix,
}

impl LinearVectorField {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidMatrix(format!(
                "vector field matrix must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(LinearVectorField { matrix })
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        Self::new(QMatrix::from_rows(rows)?)
    }

    /// The Euler field `sum zi d/dzi`.
    pub fn identity(dim: usize) -> Self {
        LinearVectorField { matrix: QMatrix::identity(dim) }
    }

    pub fn zero(dim: usize) -> Self {
        LinearVectorField { matrix: QMatrix::zeros(dim, dim) }
    }

    pub fn diagonal(weights: &[Q]) -> Self {
        LinearVectorField { matrix: QMatrix::diag(weights) }
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn trace(&self) -> Q {
        self.matrix.trace()
    }

    pub fn is_diagonal(&self) -> bool {
        self.matrix.is_diagonal()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.matrix.pow(self.dim() as u32).is_zero()
    }

    fn check_dim(&self, f: &HPoly) -> Result<()> {
        if self.dim() != f.n_vars() {
            return Err(Error::DimensionMismatch { expected: f.n_vars(), actual: self.dim() });
        }
        Ok(())
    }
}

/// Outcome of testing whether `{f = 0}` is preserved by `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Invariance {
    /// `v(f) = kappa * f`.
    Invariant { kappa: Q },
    NotInvariant,
}

impl Invariance {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Invariance::Invariant { .. })
    }

    pub fn kappa(&self) -> Option<&Q> {
        match self {
            Invariance::Invariant { kappa } => Some(kappa),
            Invariance::NotInvariant => None,
        }
    }
}

/// `v(f) = sum_g f_g sum_{i,j} a_ij g_i zj z^(g - e_i)`. The result keeps the
/// degree of `f` and may be the zero polynomial.
pub fn apply_derivation(v: &LinearVectorField, f: &HPoly) -> Result<HPoly> {
    v.check_dim(f)?;
    let n = f.n_vars();
    let a = v.matrix();
    let mut out: BTreeMap<Monomial, Q> = BTreeMap::new();
    for (m, c) in f.terms() {
        for (i, &gi) in m.exponents().iter().enumerate() {
            if gi == 0 {
                continue;
            }
            let base = c * Q::from_integer(gi.into());
            for j in 0..n {
                let aij = a.get(i, j);
                if aij.is_zero() {
                    continue;
                }
                let mut e = m.exponents().to_vec();
                e[i] -= 1;
                e[j] += 1;
                *out.entry(Monomial::new(e)).or_insert_with(Q::zero) += &base * aij;
            }
        }
    }
    Ok(HPoly::from_map(n, f.degree(), out))
}

pub fn invariance(v: &LinearVectorField, f: &HPoly) -> Result<Invariance> {
    let vf = apply_derivation(v, f)?;
    if vf.is_zero() {
        return Ok(Invariance::Invariant { kappa: Q::zero() });
    }
    if vf.len() != f.len() {
        return Ok(Invariance::NotInvariant);
    }
    let mut kappa: Option<Q> = None;
    for ((m1, c1), (m2, c2)) in f.terms().zip(vf.terms()) {
        if m1 != m2 {
            return Ok(Invariance::NotInvariant);
        }
        let ratio = c2 / c1;
        match &kappa {
            None => kappa = Some(ratio),
            Some(k) if *k != ratio => return Ok(Invariance::NotInvariant),
            _ => {}
        }
    }
    Ok(Invariance::Invariant { kappa: kappa.expect("nonzero polynomial has a term") })
}

/// Additive Jordan-Chevalley decomposition `v = s + n` over the rationals.
///
/// Newton iteration `s <- s - p(s) p'(s)^-1` with `p` the squarefree part of
/// the characteristic polynomial; it stops once `p(s) = 0`, which takes
/// `O(log k)` steps for largest eigenvalue multiplicity `k`.
pub fn chevalley_split(v: &LinearVectorField) -> (LinearVectorField, LinearVectorField) {
    let dim = v.dim();
    if v.is_diagonal() {
        return (v.clone(), LinearVectorField::zero(dim));
    }
    let a = v.matrix();
    let p = a.char_poly().squarefree_part();
    let dp = p.derivative();
    let mut s = a.clone();
    loop {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            break;
        }
        let inv = dp
            .eval_matrix(&s)
            .inverse()
            .expect("p'(s) is invertible along the Newton iteration");
        s = s.sub(&ps.mul(&inv));
    }
    let n = a.sub(&s);
    let split = (LinearVectorField { matrix: s }, LinearVectorField { matrix: n });
    if cfg!(debug_assertions) {
        assert!(is_chevalley_pair(v, &split.0, &split.1), "Jordan-Chevalley postconditions");
    }
    split
}

/// Checks `v = s + n`, `sn = ns`, `n` nilpotent, and `s` annihilated by a
/// squarefree polynomial (the squarefree part of its characteristic polynomial).
pub fn is_chevalley_pair(v: &LinearVectorField, s: &LinearVectorField, n: &LinearVectorField) -> bool {
    let (vm, sm, nm) = (v.matrix(), s.matrix(), n.matrix());
    if sm.add(nm) != *vm {
        return false;
    }
    if sm.mul(nm) != nm.mul(sm) {
        return false;
    }
    if !n.is_nilpotent() {
        return false;
    }
    let p: UPoly = sm.char_poly().squarefree_part();
    p.eval_matrix(sm).is_zero()
}

pub fn is_semisimple(v: &LinearVectorField) -> bool {
    if v.is_diagonal() {
        return true;
    }
    let a = v.matrix();
    a.char_poly().squarefree_part().eval_matrix(a).is_zero()
}

/// Result of diagonalizing a semisimple field over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagonalization {
    /// `basis_change^-1 * A * basis_change = diag(weights)`.
    Split { weights: WeightVector, basis_change: QMatrix },
    /// Some eigenvalue is not rational.
    Unsupported { reason: String },
}

pub fn rational_diagonalize(v: &LinearVectorField) -> Result<Diagonalization> {
    let dim = v.dim();
    if v.is_diagonal() {
        return Ok(Diagonalization::Split {
            weights: WeightVector::new(v.matrix().diagonal()),
            basis_change: QMatrix::identity(dim),
        });
    }
    if !is_semisimple(v) {
        return Err(Error::NotSemisimple);
    }
    let a = v.matrix();
    let chi = a.char_poly();
    let mut roots = chi.rational_roots()?;
    let total: usize = roots.iter().map(|r| chi.root_multiplicity(r)).sum();
    if total < dim {
        return Ok(Diagonalization::Unsupported {
            reason: format!(
                "characteristic polynomial does not split over the rationals ({total} of {dim} eigenvalues rational)"
            ),
        });
    }
    roots.reverse();
    let mut weights = Vec::with_capacity(dim);
    let mut columns: Vec<Vec<Q>> = Vec::with_capacity(dim);
    for r in &roots {
        let shifted = a.sub(&QMatrix::identity(dim).scale(r));
        for vec in shifted.kernel() {
            weights.push(r.clone());
            columns.push(vec);
        }
    }
    debug_assert_eq!(columns.len(), dim);
    let p = QMatrix::from_rows(columns)?.transpose();
    Ok(Diagonalization::Split { weights: WeightVector::new(weights), basis_change: p })
}

/// Coefficients `f_k` of `t^k` in the action of `exp(t n)` on `f`:
/// `f_k = (-n)^k (f) / k!`. The first entry is `f` itself; trailing zero
/// coefficients are dropped, so a singleton means `n(f) = 0`.
pub fn exp_nilpotent_action(n: &LinearVectorField, f: &HPoly) -> Result<Vec<HPoly>> {
    n.check_dim(f)?;
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let neg = LinearVectorField { matrix: n.matrix().scale(&-Q::one()) };
    let mut out = vec![f.clone()];
    let mut current = f.clone();
    let mut k = 1u64;
    loop {
        current = apply_derivation(&neg, &current)?;
        if current.is_zero() {
            break;
        }
        out.push(current.scale(&Q::new(1.into(), factorial(k))));
        k += 1;
    }
    Ok(out)
}

fn factorial(k: u64) -> num_bigint::BigInt {
    (1..=k).fold(num_bigint::BigInt::one(), |acc, i| acc * i)
}

/// Parses a field given either as `diag:l0,l1,...` or as a JSON array of rows
/// whose entries are integers or `"p/q"` strings.
pub fn parse_field(text: &str) -> Result<LinearVectorField> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix("diag:") {
        return Ok(LinearVectorField::diagonal(&parse_rational_list(rest)?));
    }
    let value: Value =
        serde_json::from_str(t).map_err(|e| Error::InvalidMatrix(format!("not valid JSON: {e}")))?;
    LinearVectorField::new(matrix_from_json(&value)?)
}

pub fn matrix_from_json(value: &Value) -> Result<QMatrix> {
    let rows = value
        .as_array()
        .ok_or_else(|| Error::InvalidMatrix("expected an array of rows".into()))?;
    let mut data = Vec::with_capacity(rows.len());
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::InvalidMatrix("each row must be an array".into()))?;
        let mut r = Vec::with_capacity(cells.len());
        for cell in cells {
            let q = match cell {
                Value::String(s) => parse_rational(s)?,
                Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string())?,
                other => return Err(Error::InvalidMatrix(format!("bad entry {other}"))),
            };
            r.push(q);
        }
        data.push(r);
    }
    QMatrix::from_rows(data)
}

pub fn matrix_to_json(m: &QMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(crate::exact::fmt_rational(x))).collect()))
            .collect(),
    )
}
