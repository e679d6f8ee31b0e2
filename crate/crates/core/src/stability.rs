//! Torus (Hilbert-Mumford) stability of `f` in a fixed coordinate basis.
//!
//! Let `C = {lambda : sum lambda = 0, lambda . g >= 0 for g in supp f}` and
//! `L = {lambda : sum lambda = 0, lambda . g = 0 for g in supp f}` (so `L` is
//! contained in `C`). Then
//!
//! * stable iff `C = {0}`,
//! * weakly stable but not stable iff `C = L != {0}`,
//! * not weakly stable iff `C` is strictly larger than `L`.
//!
//! `L` comes from a kernel computation. Whether `C` exceeds `L` is decided by
//! maximizing `sum_g lambda . g` over `C` capped at 1; the optimum is 1 exactly
//! when some `lambda` in `C` has a positive weight.
//!
//! A not-weakly-stable verdict is certified by an explicit one-parameter
//! subgroup and holds in every basis. The other two verdicts only speak for
//! the diagonal torus of the basis `f` is written in.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, primitive_integer, Q};
use crate::lp::{kernel, solve, LinearProgram, LpOutcome, Relation};
use crate::matrix::QMatrix;
use crate::poly::HPoly;
use crate::vfield::matrix_to_json;
use crate::weights::{mu, WeightVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StabilityClass {
    Stable,
    WeaklyStableNotStable,
    NotWeaklyStable,
}

impl StabilityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityClass::Stable => "stable",
            StabilityClass::WeaklyStableNotStable => "weakly_stable_not_stable",
            StabilityClass::NotWeaklyStable => "not_weakly_stable",
        }
    }

    pub fn is_weakly_stable(self) -> bool {
        self != StabilityClass::NotWeaklyStable
    }
}

/// What a verdict was decided relative to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictScope {
    /// Exact decision for the diagonal torus of the basis `f` is written in.
    GivenBasis,
    /// Exhaustive search over integer weights in `[-bound, bound]`.
    WithinBox(i64),
    /// Worst verdict over the given basis plus this many extra bases.
    TriedBases(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub class: StabilityClass,
    /// Integer trace-zero destabilizing weights, present iff not weakly stable.
    pub destabilizer: Option<WeightVector>,
    /// Dimension of the lineality space `L`.
    pub fixing_subspace_dim: usize,
    /// `mu` of the destabilizer.
    pub certificate_mu: Option<Q>,
    /// Basis change the verdict was found in; `None` for the given basis.
    pub basis: Option<QMatrix>,
    pub scope: VerdictScope,
}

impl StabilityVerdict {
    /// `{"class", "destabilizer", "mu", "fixing_dim", "basis"}`.
    pub fn to_json(&self) -> Value {
        let destabilizer = match &self.destabilizer {
            Some(w) => Value::Array(
                w.as_slice()
                    .iter()
                    .map(|x| {
                        let i = x.to_integer();
                        i.to_i64().map(Value::from).unwrap_or_else(|| Value::String(i.to_string()))
                    })
                    .collect(),
            ),
            None => Value::Null,
        };
        json!({
            "class": self.class.as_str(),
            "destabilizer": destabilizer,
            "mu": self.certificate_mu.as_ref().map(fmt_rational),
            "fixing_dim": self.fixing_subspace_dim,
            "basis": match &self.basis {
                None => Value::String("given".into()),
                Some(m) => matrix_to_json(m),
            },
        })
    }

    /// Checks the structural invariants of the verdict against `f`.
    pub fn is_consistent_with(&self, f: &HPoly) -> bool {
        match self.class {
            StabilityClass::Stable => self.destabilizer.is_none() && self.fixing_subspace_dim == 0,
            StabilityClass::WeaklyStableNotStable => {
                self.destabilizer.is_none() && self.fixing_subspace_dim > 0
            }
            StabilityClass::NotWeaklyStable => {
                let target = match &self.basis {
                    Some(p) => match f.substitute_linear(p) {
                        Ok(g) => g,
                        Err(_) => return false,
                    },
                    None => f.clone(),
                };
                self.destabilizer
                    .as_ref()
                    .is_some_and(|w| is_destabilizing(w, &target) && w.is_integral())
            }
        }
    }
}

fn support_rows(f: &HPoly) -> Vec<Vec<Q>> {
    f.terms().map(|(m, _)| m.as_rationals()).collect()
}

/// True when `lambda` is a nonzero trace-zero vector with every weight on
/// `supp f` nonnegative and at least one positive.
pub fn is_destabilizing(lambda: &WeightVector, f: &HPoly) -> bool {
    if lambda.len() != f.n_vars() || !lambda.is_trace_zero() {
        return false;
    }
    let weights: Vec<Q> = f.terms().map(|(m, _)| m.weight(lambda.as_slice())).collect();
    weights.iter().all(|w| !w.is_negative()) && weights.iter().any(Signed::is_positive)
}

/// Dimension of `L`, the trace-zero weights vanishing on all of `supp f`.
pub fn fixing_subspace_dim(f: &HPoly) -> usize {
    let mut rows = support_rows(f);
    rows.push(vec![Q::one(); f.n_vars()]);
    kernel(&rows).expect("rows share the variable count").len()
}

/// `maximize sum_g lambda . g` over trace-zero `lambda` nonnegative on
/// `supp f`, with the objective capped at 1.
pub fn cone_probe(f: &HPoly) -> LinearProgram {
    let n = f.n_vars();
    let rows = support_rows(f);
    let total: Vec<Q> = (0..n)
        .map(|i| rows.iter().fold(Q::zero(), |acc, r| acc + &r[i]))
        .collect();
    let mut probe = LinearProgram::new(total.clone());
    for r in &rows {
        probe.add(r.clone(), Relation::Ge, Q::zero()).expect("row width");
    }
    probe.add(vec![Q::one(); n], Relation::Eq, Q::zero()).expect("row width");
    probe.add(total, Relation::Le, Q::one()).expect("row width");
    probe
}

/// Rational destabilizing direction, preferring one with `mu > 0`.
fn rational_destabilizer(f: &HPoly) -> Option<Vec<Q>> {
    let n = f.n_vars();
    let rows = support_rows(f);
    let positive_direction = match solve(&cone_probe(f)) {
        LpOutcome::Optimal { value, witness } if value.is_positive() => witness,
        LpOutcome::Optimal { .. } => return None,
        other => unreachable!("cone probe is feasible and bounded: {other:?}"),
    };

    // second probe: maximize the minimum weight t, capped at 1
    let mut objective = vec![Q::zero(); n];
    objective.push(Q::one());
    let mut strict = LinearProgram::new(objective);
    for r in &rows {
        let mut row = r.clone();
        row.push(-Q::one());
        strict.add(row, Relation::Ge, Q::zero()).expect("row width");
    }
    let mut trace_row = vec![Q::one(); n];
    trace_row.push(Q::zero());
    strict.add(trace_row, Relation::Eq, Q::zero()).expect("row width");
    let mut cap = vec![Q::zero(); n];
    cap.push(Q::one());
    strict.add(cap, Relation::Le, Q::one()).expect("row width");
    match solve(&strict) {
        LpOutcome::Optimal { value, mut witness } if value.is_positive() => {
            witness.truncate(n);
            Some(witness)
        }
        _ => Some(positive_direction),
    }
}

/// Integer trace-zero `lambda != 0`, nonnegative on `supp f` with a positive
/// weight somewhere; with `mu(lambda, f) > 0` whenever such a direction exists.
pub fn destabilizer(f: &HPoly) -> Option<WeightVector> {
    let direction = rational_destabilizer(f)?;
    // positive rescaling keeps the sign pattern of the weights
    let lambda = WeightVector::from_integers(&primitive_integer(&direction));
    assert!(is_destabilizing(&lambda, f), "destabilizer failed direct evaluation");
    Some(lambda)
}

pub fn classify_torus(f: &HPoly) -> StabilityVerdict {
    let fixing = fixing_subspace_dim(f);
    let lambda = destabilizer(f);
    let class = match (&lambda, fixing) {
        (Some(_), _) => StabilityClass::NotWeaklyStable,
        (None, 0) => StabilityClass::Stable,
        (None, _) => StabilityClass::WeaklyStableNotStable,
    };
    let certificate_mu = lambda.as_ref().map(|l| mu(l, f).expect("dimensions match"));
    StabilityVerdict {
        class,
        destabilizer: lambda,
        fixing_subspace_dim: fixing,
        certificate_mu,
        basis: None,
        scope: VerdictScope::GivenBasis,
    }
}

/// Classifies `f` in its own basis and after each change of variables
/// `z = P w`, keeping the most unstable verdict found. A nonzero fixing torus
/// or a destabilizer in any basis is a basis-independent fact about `f`.
pub fn classify_with_bases(f: &HPoly, bases: &[QMatrix]) -> Result<StabilityVerdict> {
    let mut best = classify_torus(f);
    for p in bases {
        if best.class == StabilityClass::NotWeaklyStable {
            break;
        }
        if p.inverse().is_none() {
            return Err(Error::InvalidMatrix("basis change must be invertible".into()));
        }
        let g = f.substitute_linear(p)?;
        let v = classify_torus(&g);
        if v.class > best.class {
            best = StabilityVerdict { basis: Some(p.clone()), ..v };
        }
    }
    best.scope = VerdictScope::TriedBases(bases.len());
    Ok(best)
}

pub const ORACLE_LIMIT: u128 = 100_000_000;

/// All integer vectors of length `n` with entries in `[-bound, bound]` and
/// zero sum, in odometer order.
pub fn trace_zero_box(n: usize, bound: i64) -> Result<Vec<Vec<i64>>> {
    if bound < 1 {
        return Err(Error::InvalidArgument("box bound must be at least 1".into()));
    }
    let side = (2 * bound + 1) as u128;
    let candidates = side.checked_pow(n.saturating_sub(1) as u32).unwrap_or(u128::MAX);
    if candidates > ORACLE_LIMIT {
        return Err(Error::BoxTooLarge { candidates, limit: ORACLE_LIMIT });
    }
    let mut out = Vec::new();
    let mut head = vec![-bound; n - 1];
    loop {
        let last = -head.iter().sum::<i64>();
        if last.abs() <= bound {
            let mut full = head.clone();
            full.push(last);
            out.push(full);
        }
        let mut k = 0;
        while k < head.len() {
            if head[k] < bound {
                head[k] += 1;
                break;
            }
            head[k] = -bound;
            k += 1;
        }
        if k == head.len() {
            return Ok(out);
        }
    }
}

/// Exhaustive classification over integer trace-zero `lambda` in
/// `[-bound, bound]^{n+1}`. Refutations are exact; a stable or weakly stable
/// answer only holds within the box.
pub fn oracle_classify(f: &HPoly, bound: i64) -> Result<StabilityVerdict> {
    let n = f.n_vars();
    let supp: Vec<Vec<i64>> = f
        .terms()
        .map(|(m, _)| m.exponents().iter().map(|&e| i64::from(e)).collect())
        .collect();

    let mut best: Option<(i64, Vec<i64>)> = None;
    let mut fixing_basis: Vec<Vec<Q>> = Vec::new();
    for full in trace_zero_box(n, bound)? {
        let weights: Vec<i64> = supp
            .iter()
            .map(|g| g.iter().zip(&full).map(|(a, b)| a * b).sum())
            .collect();
        let min = *weights.iter().min().expect("nonempty support");
        let max = *weights.iter().max().expect("nonempty support");
        if min >= 0 && max > 0 {
            if best.as_ref().is_none_or(|(m, _)| min > *m) {
                best = Some((min, full));
            }
        } else if max == 0 && min == 0 && full.iter().any(|&x| x != 0) && fixing_basis.len() < n - 1 {
            let mut trial = fixing_basis.clone();
            trial.push(full.iter().map(|&x| Q::from_integer(x.into())).collect());
            if QMatrix::from_rows(trial.clone())?.rank() == trial.len() {
                fixing_basis = trial;
            }
        }
    }
    let fixing = fixing_basis.len();
    let (class, destabilizer, certificate_mu) = match best {
        Some((m, l)) => (
            StabilityClass::NotWeaklyStable,
            Some(WeightVector::from_integers(&l.into_iter().map(BigInt::from).collect::<Vec<_>>())),
            Some(Q::from_integer(m.into())),
        ),
        None if fixing > 0 => (StabilityClass::WeaklyStableNotStable, None, None),
        None => (StabilityClass::Stable, None, None),
    };
    Ok(StabilityVerdict {
        class,
        destabilizer,
        fixing_subspace_dim: fixing,
        certificate_mu,
        basis: None,
        scope: VerdictScope::WithinBox(bound),
    })
}
