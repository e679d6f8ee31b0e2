//! Generalized Futaki invariant of a Fano hypersurface,
//! `F = -(n+1-d)(d-1)((n+1)/n) * kappa`.
//!
//! The value is a formal evaluation: no check is made that the (limit)
//! hypersurface is Q-Fano.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::Q;
use crate::poly::HPoly;
use crate::weights::{mu, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FutakiValue {
    pub value: Q,
    /// Dimension of the ambient projective space.
    pub n: usize,
    pub d: u32,
    pub kappa: Q,
}

/// The positive constant `(n+1-d)(d-1)(n+1)/n`, defined inside the Fano window.
pub fn fano_constant(n: usize, d: u32) -> Result<Q> {
    let (nn, dd) = (n as i64, i64::from(d));
    if n < 2 || dd <= 1 || dd > nn {
        return Err(Error::OutsideFanoWindow { n, d });
    }
    Ok(Q::new(BigInt::from((nn + 1 - dd) * (dd - 1) * (nn + 1)), BigInt::from(nn)))
}

pub fn futaki_from_kappa(n: usize, d: u32, kappa: Q) -> Result<FutakiValue> {
    let c = fano_constant(n, d)?;
    Ok(FutakiValue { value: -(c * &kappa), n, d, kappa })
}

/// Futaki invariant of the trace-zero diagonal field `lambda` restricted to
/// the limit hypersurface of `f`, where `kappa = mu(lambda, f)`.
pub fn futaki_of_limit(lambda: &WeightVector, f: &HPoly) -> Result<FutakiValue> {
    if !lambda.is_trace_zero() {
        return Err(Error::NotTraceZero(crate::exact::fmt_rational(&lambda.trace())));
    }
    let n = f.n_vars() - 1;
    fano_constant(n, f.degree())?;
    let kappa = mu(lambda, f)?;
    futaki_from_kappa(n, f.degree(), kappa)
}
