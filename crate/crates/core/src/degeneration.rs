//! Special degenerations of `{f = 0}` as a hypersurface in `P^n x C`.
//!
//! A family is described by `G(s) = sum_g f_g s^(M (lambda~ . g)) z^g`, where
//! `lambda~` are the eigenvalue weights of the inducing field shifted so that
//! the least weight on `supp f` is zero and `M` is the least positive integer
//! making every exponent integral. `G(1) = f` and `G(0)` is the limit
//! hypersurface.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, lcm_of_denominators, primitive_integer, Q};
use crate::futaki::{fano_constant, futaki_of_limit, FutakiValue};
use crate::matrix::QMatrix;
use crate::poly::{HPoly, Monomial};
use crate::stability::{classify_torus, trace_zero_box, StabilityVerdict};
use crate::vfield::{
    apply_derivation, chevalley_split, matrix_to_json, rational_diagonalize, Diagonalization,
    LinearVectorField,
};
use crate::weights::{limit_poly, mu, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationFamily {
    /// Fiber over `s = 1`, written in the eigenbasis of the inducing field.
    pub base_poly: HPoly,
    /// Normalized weights `lambda~` (least weight on the support is zero).
    pub generator: WeightVector,
    /// Integer factor `M` applied to `-s d/ds`.
    pub s_rescale: BigInt,
    /// `s`-exponent to the coefficient polynomial of `s^e`.
    pub strata: BTreeMap<BigInt, HPoly>,
}

impl DegenerationFamily {
    /// `G(s)` at a rational point. `G(0)` is the exponent-zero stratum.
    pub fn evaluate(&self, s: &Q) -> HPoly {
        let mut acc = HPoly::zero(self.base_poly.n_vars(), self.base_poly.degree());
        for (e, stratum) in &self.strata {
            let factor = if e.is_zero() {
                Q::one()
            } else {
                num_traits::pow(s.clone(), e.to_usize().expect("exponent fits in usize"))
            };
            acc = acc.add(&stratum.scale(&factor)).expect("strata share ring and degree");
        }
        acc
    }

    pub fn exponents(&self) -> impl Iterator<Item = &BigInt> {
        self.strata.keys()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationReport {
    pub family: DegenerationFamily,
    pub special_fiber: HPoly,
    pub trivial: bool,
    /// Absent when the degree lies outside the Fano window.
    pub futaki: Option<FutakiValue>,
    /// Primitive integer positive multiple of the trace-zero part of the
    /// generator; the Futaki value refers to this field.
    pub normalized_trace_zero_generator: WeightVector,
    /// Columns are the eigenvectors of the semisimple part; identity when the
    /// field was already diagonal.
    pub basis_change: QMatrix,
}

impl DegenerationReport {
    /// `{"f", "generator", "s_rescale", "strata", "special_fiber", "trivial",
    /// "futaki", "normalized_generator", "basis"}`.
    pub fn to_json(&self) -> Value {
        let fam = &self.family;
        let mut strata = Map::new();
        for (e, p) in &fam.strata {
            strata.insert(e.to_string(), Value::String(p.to_string()));
        }
        let basis = if self.basis_change == QMatrix::identity(self.basis_change.rows()) {
            Value::String("given".into())
        } else {
            matrix_to_json(&self.basis_change)
        };
        json!({
            "f": fam.base_poly.to_string(),
            "generator": fam.generator.to_strings(),
            "s_rescale": fam.s_rescale.to_u64().map(Value::from).unwrap_or_else(|| Value::String(fam.s_rescale.to_string())),
            "strata": Value::Object(strata),
            "special_fiber": self.special_fiber.to_string(),
            "trivial": self.trivial,
            "futaki": self.futaki.as_ref().map(|v| fmt_rational(&v.value)),
            "normalized_generator": self.normalized_trace_zero_generator.to_strings(),
            "basis": basis,
        })
    }
}

/// The degeneration of `{f = 0}` induced by `v`.
///
/// Fails when the nilpotent part of `v` moves `f` (the family would contain
/// powers of `ln s`) or when the semisimple part has irrational eigenvalues.
pub fn build_degeneration(f: &HPoly, v: &LinearVectorField) -> Result<DegenerationReport> {
    if v.dim() != f.n_vars() {
        return Err(Error::DimensionMismatch { expected: f.n_vars(), actual: v.dim() });
    }
    let (semisimple, nilpotent) = chevalley_split(v);
    if !apply_derivation(&nilpotent, f)?.is_zero() {
        return Err(Error::NilpotentActsNontrivially);
    }
    let (lambda, basis_change) = match rational_diagonalize(&semisimple)? {
        Diagonalization::Split { weights, basis_change } => (weights, basis_change),
        Diagonalization::Unsupported { reason } => return Err(Error::Unsupported(reason)),
    };
    let g = if basis_change == QMatrix::identity(f.n_vars()) {
        f.clone()
    } else {
        f.substitute_linear(&basis_change)?
    };
    let d = Q::from_integer(g.degree().into());
    let m = mu(&lambda, &g)?;
    let generator = lambda.shift(&-(m / &d));
    let weights: Vec<(Monomial, Q, Q)> = g
        .terms()
        .map(|(mono, c)| (mono.clone(), c.clone(), mono.weight(generator.as_slice())))
        .collect();
    let s_rescale = lcm_of_denominators(weights.iter().map(|(_, _, w)| w));
    let scale = Q::from_integer(s_rescale.clone());
    let mut grouped: BTreeMap<BigInt, BTreeMap<Monomial, Q>> = BTreeMap::new();
    for (mono, c, w) in weights {
        let e = (w * &scale).to_integer();
        debug_assert!(!e.is_negative());
        grouped.entry(e).or_default().insert(mono, c);
    }
    let strata: BTreeMap<BigInt, HPoly> = grouped
        .into_iter()
        .map(|(e, terms)| (e, HPoly::from_map(g.n_vars(), g.degree(), terms)))
        .collect();
    let family = DegenerationFamily { base_poly: g.clone(), generator, s_rescale, strata };

    let special_fiber = family.evaluate(&Q::zero());
    let trivial = family.strata.len() == 1 && family.strata.keys().all(Zero::is_zero);
    assert_eq!(family.evaluate(&Q::one()), g, "G(1) must reproduce f");
    assert_eq!(special_fiber, limit_poly(&family.generator, &g)?, "G(0) must be the limit");
    assert_eq!(family.strata.keys().next(), Some(&BigInt::zero()), "least exponent is zero");

    let normalized = WeightVector::from_integers(&primitive_integer(
        family.generator.trace_zero_part().as_slice(),
    ));
    let futaki = match fano_constant(g.n_vars() - 1, g.degree()) {
        Ok(_) => Some(futaki_of_limit(&normalized, &g)?),
        Err(_) => None,
    };
    Ok(DegenerationReport {
        family,
        special_fiber,
        trivial,
        futaki,
        normalized_trace_zero_generator: normalized,
        basis_change,
    })
}

/// Degeneration along `d * lambda - mu * (1, ..., 1)` for an integer
/// trace-zero `lambda`; its exponents are `d (w - mu)` over the weights `w`
/// of `f`, and its generator is that shifted vector.
pub fn from_destabilizer(f: &HPoly, lambda: &WeightVector) -> Result<DegenerationReport> {
    if !lambda.is_trace_zero() {
        return Err(Error::NotTraceZero(fmt_rational(&lambda.trace())));
    }
    if !lambda.is_integral() {
        return Err(Error::NonIntegerWeights);
    }
    let m = mu(lambda, f)?;
    let d = Q::from_integer(f.degree().into());
    let shifted = lambda.scale(&d).shift(&-m);
    build_degeneration(f, &LinearVectorField::diagonal(shifted.as_slice()))
}

/// One enumerated degeneration in a cross-check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckWitness {
    pub lambda: WeightVector,
    pub futaki: Q,
    pub trivial: bool,
}

impl CrosscheckWitness {
    /// `F >= 0`, with `F = 0` exactly for the trivial degeneration.
    pub fn satisfies_condition(&self) -> bool {
        if self.trivial {
            self.futaki.is_zero()
        } else {
            self.futaki.is_positive()
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "lambda": self.lambda.to_strings(),
            "futaki": fmt_rational(&self.futaki),
            "trivial": self.trivial,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    pub torus: StabilityVerdict,
    pub bound: i64,
    pub enumerated: usize,
    /// Degenerations in the box that break the Futaki condition.
    pub violations: Vec<CrosscheckWitness>,
    /// When the box held no violation for a torus-unstable `f`, the
    /// degeneration built from the LP destabilizer.
    pub outside_box_witness: Option<CrosscheckWitness>,
    pub agreement: bool,
}

impl CrosscheckReport {
    pub fn to_json(&self) -> Value {
        json!({
            "agreement": self.agreement,
            "torus": self.torus.to_json(),
            "bound": self.bound,
            "enumerated": self.enumerated,
            "violations": self.violations.iter().map(CrosscheckWitness::to_json).collect::<Vec<_>>(),
            "outside_box_witness": self.outside_box_witness.as_ref().map(CrosscheckWitness::to_json),
        })
    }
}

fn witness_for(f: &HPoly, lambda: WeightVector) -> Result<CrosscheckWitness> {
    let report = from_destabilizer(f, &lambda)?;
    let futaki = report.futaki.expect("Fano window checked by caller").value;
    Ok(CrosscheckWitness { lambda, futaki, trivial: report.trivial })
}

/// Compares the torus verdict for `f` with the degeneration criterion: `f` is
/// weakly stable iff every degeneration has `F >= 0`, with equality only for
/// trivial ones. Degenerations come from every integer trace-zero weight
/// vector in `[-bound, bound]^{n+1}`.
pub fn theorem_crosscheck(f: &HPoly, bound: i64) -> Result<CrosscheckReport> {
    fano_constant(f.n_vars() - 1, f.degree())?;
    let candidates = trace_zero_box(f.n_vars(), bound)?;
    let torus = classify_torus(f);
    let checked: Vec<CrosscheckWitness> = candidates
        .into_par_iter()
        .map(|l| {
            let lambda = WeightVector::from_integers(&l.into_iter().map(BigInt::from).collect::<Vec<_>>());
            witness_for(f, lambda)
        })
        .collect::<Result<_>>()?;
    let enumerated = checked.len();
    let violations: Vec<CrosscheckWitness> =
        checked.into_iter().filter(|w| !w.satisfies_condition()).collect();

    let mut outside_box_witness = None;
    let agreement = if torus.class.is_weakly_stable() {
        violations.is_empty()
    } else if !violations.is_empty() {
        true
    } else {
        let lambda = torus.destabilizer.clone().expect("unstable verdict carries a destabilizer");
        let w = witness_for(f, lambda)?;
        let violates = !w.satisfies_condition();
        outside_box_witness = Some(w);
        violates
    };
    if !agreement {
        log::warn!("cross-check disagreement for {f}");
    }
    Ok(CrosscheckReport { torus, bound, enumerated, violations, outside_box_witness, agreement })
}
