//! Exact Hilbert-Mumford torus stability, generalized Futaki invariants and
//! special degenerations of projective hypersurfaces.
//!
//! Everything is computed over the rationals with arbitrary precision; there
//! is no floating point anywhere in a decision path.
//!
//! ```
//! use gitstab::{classify_torus, futaki_of_limit, parse_poly, StabilityClass, WeightVector};
//! use gitstab::exact::qs;
//!
//! let f = parse_poly("z0*z1^2 + z2^2*z3 - z2*z3^2 + z1*z2*z3", 4).unwrap();
//! assert_eq!(classify_torus(&f).class, StabilityClass::NotWeaklyStable);
//! let lambda = WeightVector::new(qs(&[-7, 5, 1, 1]));
//! assert_eq!(futaki_of_limit(&lambda, &f).unwrap().value, gitstab::exact::q(-8));
//! ```

pub mod degeneration;
pub mod error;
pub mod exact;
pub mod futaki;
pub mod lp;
pub mod matrix;
pub mod poly;
pub mod stability;
pub mod upoly;
pub mod vfield;
pub mod weights;

pub use degeneration::{
    build_degeneration, from_destabilizer, theorem_crosscheck, CrosscheckReport, CrosscheckWitness,
    DegenerationFamily, DegenerationReport,
};
pub use error::{Error, Result};
pub use exact::Q;
pub use futaki::{futaki_from_kappa, futaki_of_limit, FutakiValue};
pub use lp::{LinearProgram, LpOutcome, LpStatus, Relation};
pub use matrix::QMatrix;
pub use poly::{euler_check, parse_poly, print_poly, HPoly, Monomial};
pub use stability::{
    classify_torus, classify_with_bases, destabilizer, oracle_classify, StabilityClass,
    StabilityVerdict, VerdictScope,
};
pub use vfield::{
    apply_derivation, chevalley_split, exp_nilpotent_action, invariance, parse_field,
    rational_diagonalize, Diagonalization, Invariance, LinearVectorField,
};
pub use weights::{limit_poly, mu, weight_spectrum, WeightSpectrum, WeightVector};
