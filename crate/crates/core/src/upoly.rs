//! Dense univariate polynomials over the rationals. Only what the matrix
//! decompositions need: Euclidean arithmetic, derivatives, squarefree parts
//! and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{lcm_of_denominators, Q};
use crate::matrix::QMatrix;

/// Coefficients stored low degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Q>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UPoly { coeffs: vec![Q::one()] }
    }

    /// `x - r`
    pub fn linear_root(r: &Q) -> Self {
        UPoly::new(vec![-r.clone(), Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        UPoly::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Q::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn div_rem(&self, divisor: &UPoly) -> (UPoly, UPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lc = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic squarefree part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &QMatrix) -> QMatrix {
        let n = m.rows();
        let mut acc = QMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&QMatrix::identity(n).scale(c));
        }
        acc
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Q) -> usize {
        let lin = UPoly::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (quot, rem) = p.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = quot;
            k += 1;
        }
        k
    }

    /// All distinct rational roots, ascending.
    ///
    /// The polynomial is scaled to a primitive integer polynomial and the
    /// substitution `x = y / a_n` makes it monic, so every rational root is
    /// `y / a_n` for an integer root `y` dividing the constant term and bounded
    /// by the Cauchy bound. Divisors are found by trial division restricted to
    /// primes below that bound; when the bound is too large to scan the search
    /// is refused instead of guessed.
    pub fn rational_roots(&self) -> Result<Vec<Q>> {
        let mut roots = Vec::new();
        if self.is_zero() {
            return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
        }
        let mut p = self.squarefree_part();
        if p.coeffs.first().is_some_and(|c| c.is_zero()) {
            roots.push(Q::zero());
            p = UPoly::new(p.coeffs[1..].to_vec());
        }
        let deg = match p.degree() {
            Some(d) if d > 0 => d,
            _ => return Ok(roots),
        };
        // primitive integer coefficients
        let l = lcm_of_denominators(&p.coeffs);
        let ints: Vec<BigInt> = p
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(l.clone())).to_integer())
            .collect();
        let an = ints[deg].clone();
        // monic integer polynomial in y = an * x: y^deg + sum ints[i] an^(deg-1-i) y^i
        let mut monic = Vec::with_capacity(deg + 1);
        for (i, c) in ints.iter().enumerate().take(deg) {
            monic.push(c * num_traits::pow(an.clone(), deg - 1 - i));
        }
        monic.push(BigInt::one());
        let bound: BigInt = BigInt::one() + monic[..deg].iter().map(|c| c.abs()).max().unwrap_or_default();
        let c0 = monic[0].abs();
        let divisors = bounded_divisors(&c0, &bound)?;
        let py = UPoly::new(monic.iter().map(|c| Q::from_integer(c.clone())).collect());
        for y in divisors {
            for cand in [y.clone(), -y] {
                let yq = Q::from_integer(cand);
                if py.eval(&yq).is_zero() {
                    roots.push(yq / Q::from_integer(an.clone()));
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

const TRIAL_LIMIT: u64 = 10_000_000;

/// Positive divisors of `n` that do not exceed `bound`.
fn bounded_divisors(n: &BigInt, bound: &BigInt) -> Result<Vec<BigInt>> {
    if n.is_zero() {
        return Ok(vec![]);
    }
    let mut rest = n.clone();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut k = BigInt::from(2);
    let mut steps: u64 = 0;
    loop {
        if &k * &k > rest {
            if rest > BigInt::one() && &rest <= bound {
                primes.push((rest.clone(), 1));
            }
            break;
        }
        if &k > bound {
            // remaining prime factors all exceed the bound
            break;
        }
        steps += 1;
        if steps > TRIAL_LIMIT {
            return Err(Error::Unsupported(
                "characteristic polynomial coefficients too large for exact rational root search".into(),
            ));
        }
        let mut e = 0;
        while rest.is_multiple_of(&k) {
            rest /= &k;
            e += 1;
        }
        if e > 0 {
            primes.push((k.clone(), e));
        }
        k += if k == BigInt::from(2) { 1 } else { 2 };
    }
    let mut divisors = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pk = d.clone();
            for _ in 0..=e {
                if &pk > bound {
                    break;
                }
                next.push(pk.clone());
                pk *= &p;
            }
        }
        divisors = next;
    }
    divisors.retain(|d| d <= bound);
    debug_assert!(divisors.iter().all(|d| (n % d).to_u8() == Some(0)));
    Ok(divisors)
}
