//! Diagonal weight vectors, the minimal weight `mu`, weight spectra and limit
//! polynomials.
//!
//! Weight vectors need not have trace zero here; callers that require the
//! `SL(n+1)` normalization check it themselves.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, Q};
use crate::poly::HPoly;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<Q>);

impl WeightVector {
    pub fn new(lambda: Vec<Q>) -> Self {
        WeightVector(lambda)
    }

    pub fn from_integers(lambda: &[BigInt]) -> Self {
        WeightVector(lambda.iter().map(|x| Q::from_integer(x.clone())).collect())
    }

    pub fn zero(len: usize) -> Self {
        WeightVector(vec![Q::zero(); len])
    }

    pub fn as_slice(&self) -> &[Q] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Q> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn trace(&self) -> Q {
        self.0.iter().fold(Q::zero(), |a, b| a + b)
    }

    pub fn is_trace_zero(&self) -> bool {
        self.trace().is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// `lambda + c * (1, ..., 1)`
    pub fn shift(&self, c: &Q) -> Self {
        WeightVector(self.0.iter().map(|x| x + c).collect())
    }

    pub fn scale(&self, c: &Q) -> Self {
        WeightVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Projection onto trace zero: subtracts the mean entry.
    pub fn trace_zero_part(&self) -> Self {
        let mean = self.trace() / Q::from_integer(self.0.len().into());
        self.shift(&-mean)
    }

    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = vec![Q::zero(); self.0.len()];
        for (i, x) in self.0.iter().enumerate() {
            out[perm[i]] = x.clone();
        }
        WeightVector(out)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rational).collect()
    }

    fn check_dim(&self, f: &HPoly) -> Result<()> {
        if self.0.len() != f.n_vars() {
            return Err(Error::DimensionMismatch { expected: f.n_vars(), actual: self.0.len() });
        }
        Ok(())
    }
}

impl std::fmt::Display for WeightVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// Terms of `f` grouped by weight value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSpectrum {
    entries: BTreeMap<Q, HPoly>,
}

impl WeightSpectrum {
    pub fn entries(&self) -> &BTreeMap<Q, HPoly> {
        &self.entries
    }

    pub fn min_weight(&self) -> Option<&Q> {
        self.entries.keys().next()
    }

    /// Sum of all strata; equals the polynomial the spectrum was taken of.
    pub fn reassemble(&self) -> Option<HPoly> {
        let mut it = self.entries.values();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, p| acc.add(p).expect("strata share ring and degree")))
    }
}

/// `mu(lambda, f) = min { lambda . g : f_g != 0 }`.
pub fn mu(lambda: &WeightVector, f: &HPoly) -> Result<Q> {
    lambda.check_dim(f)?;
    f.terms()
        .map(|(m, _)| m.weight(lambda.as_slice()))
        .min()
        .ok_or(Error::ZeroPolynomial)
}

pub fn weight_spectrum(lambda: &WeightVector, f: &HPoly) -> Result<WeightSpectrum> {
    lambda.check_dim(f)?;
    let mut groups: BTreeMap<Q, BTreeMap<_, Q>> = BTreeMap::new();
    for (m, c) in f.terms() {
        groups
            .entry(m.weight(lambda.as_slice()))
            .or_default()
            .insert(m.clone(), c.clone());
    }
    let entries = groups
        .into_iter()
        .map(|(w, terms)| (w, HPoly::from_map(f.n_vars(), f.degree(), terms)))
        .collect();
    Ok(WeightSpectrum { entries })
}

/// The minimal-weight stratum `f_inf = sum_{lambda . g = mu} f_g z^g`.
pub fn limit_poly(lambda: &WeightVector, f: &HPoly) -> Result<HPoly> {
    let m = mu(lambda, f)?;
    Ok(f.filter_terms(|mono| mono.weight(lambda.as_slice()) == m))
}
