//! Fixed inputs shared by the benchmarks.

use gitstab::{parse_poly, HPoly};

pub const DEGENERATE_CUBIC: &str = "z0*z1^2 + z2^2*z3 - z2*z3^2 + z1*z2*z3";
pub const FERMAT_CUBIC: &str = "z0^3 + z1^3 + z2^3 + z3^3";

pub fn cubic(text: &str) -> HPoly {
    parse_poly(text, 4).expect("benchmark polynomial parses")
}
