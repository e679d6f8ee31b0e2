//! Sparse homogeneous polynomials with exact rational coefficients.
//!
//! A polynomial is stored as an ordered map from exponent vectors to nonzero
//! coefficients, so structural equality coincides with polynomial equality.
//! Terms print in graded-lexicographic order with `z0 > z1 > ...`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, Q};
use crate::matrix::QMatrix;

/// Exponent multi-index `(g0, ..., gn)` of a monomial `z0^g0 * ... * zn^gn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Weight `lambda . gamma` of this monomial.
    pub fn weight(&self, lambda: &[Q]) -> Q {
        self.0
            .iter()
            .zip(lambda)
            .filter(|(e, _)| **e != 0)
            .fold(Q::zero(), |acc, (e, l)| acc + l * Q::from_integer((*e).into()))
    }

    pub fn as_rationals(&self) -> Vec<Q> {
        self.0.iter().map(|&e| Q::from_integer(e.into())).collect()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic; `z0` is the most significant variable.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{i}")?;
            } else {
                write!(f, "z{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Homogeneous polynomial in `n_vars` variables. The zero polynomial is
/// representable (it arises from derivations and differences) but is never
/// produced by [`parse_poly`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HPoly {
    n_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Q>,
}

impl HPoly {
    /// Builds a canonical nonzero polynomial from `(exponents, coefficient)`
    /// pairs. Repeated monomials are summed.
    pub fn new<I>(n_vars: usize, terms: I) -> Result<HPoly>
    where
        I: IntoIterator<Item = (Vec<u32>, Q)>,
    {
        let mut map: BTreeMap<Monomial, Q> = BTreeMap::new();
        let mut degree: Option<u32> = None;
        for (exps, c) in terms {
            if exps.len() != n_vars {
                return Err(Error::DimensionMismatch {
                    expected: n_vars,
                    actual: exps.len(),
                });
            }
            let m = Monomial(exps);
            let deg = m.degree();
            match degree {
                None => degree = Some(deg),
                Some(d) if d != deg => return Err(Error::Inhomogeneous { first: d, other: deg }),
                _ => {}
            }
            *map.entry(m).or_insert_with(Q::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(HPoly {
            n_vars,
            degree: degree.unwrap_or(0),
            terms: map,
        })
    }

    pub fn zero(n_vars: usize, degree: u32) -> HPoly {
        HPoly {
            n_vars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponents: Vec<u32>, coeff: Q) -> HPoly {
        let n_vars = exponents.len();
        let m = Monomial(exponents);
        let degree = m.degree();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        HPoly { n_vars, degree, terms }
    }

    /// Linear form `sum_j coeffs[j] * zj`.
    pub fn linear(coeffs: &[Q]) -> HPoly {
        let n = coeffs.len();
        let mut terms = BTreeMap::new();
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[j] = 1;
                terms.insert(Monomial(e), c.clone());
            }
        }
        HPoly { n_vars: n, degree: 1, terms }
    }

    /// Internal constructor for maps already known to be homogeneous of `degree`.
    pub(crate) fn from_map(n_vars: usize, degree: u32, mut terms: BTreeMap<Monomial, Q>) -> HPoly {
        terms.retain(|_, c| !c.is_zero());
        debug_assert!(terms.keys().all(|m| m.degree() == degree && m.n_vars() == n_vars));
        HPoly { n_vars, degree, terms }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// The monomials carrying a nonzero coefficient.
    pub fn support(&self) -> BTreeSet<Monomial> {
        self.terms.keys().cloned().collect()
    }

    fn check_compatible(&self, other: &HPoly) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                actual: other.n_vars,
            });
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Inhomogeneous {
                first: self.degree,
                other: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &HPoly) -> Result<HPoly> {
        self.check_compatible(other)?;
        let degree = if self.is_zero() { other.degree } else { self.degree };
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            *terms.entry(m.clone()).or_insert_with(Q::zero) += c;
        }
        Ok(HPoly::from_map(self.n_vars, degree, terms))
    }

    pub fn sub(&self, other: &HPoly) -> Result<HPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HPoly {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, c: &Q) -> HPoly {
        if c.is_zero() {
            return HPoly::zero(self.n_vars, self.degree);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        HPoly { n_vars: self.n_vars, degree: self.degree, terms }
    }

    pub fn mul(&self, other: &HPoly) -> Result<HPoly> {
        if self.n_vars != other.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                actual: other.n_vars,
            });
        }
        let mut terms: BTreeMap<Monomial, Q> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *terms.entry(m1.mul(m2)).or_insert_with(Q::zero) += c1 * c2;
            }
        }
        Ok(HPoly::from_map(self.n_vars, self.degree + other.degree, terms))
    }

    /// Linear change of variables: returns `g(w) = f(P w)`, i.e. every `zi`
    /// is replaced by `sum_j P[i][j] * wj`.
    pub fn substitute_linear(&self, p: &QMatrix) -> Result<HPoly> {
        if p.rows() != self.n_vars || p.cols() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                actual: p.rows(),
            });
        }
        let forms: Vec<HPoly> = (0..self.n_vars).map(|i| HPoly::linear(p.row(i))).collect();
        // powers[i][k] = forms[i]^k
        let mut powers: Vec<Vec<HPoly>> = Vec::with_capacity(self.n_vars);
        let max_exp: Vec<u32> = (0..self.n_vars)
            .map(|i| self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0))
            .collect();
        for (i, form) in forms.iter().enumerate() {
            let mut pw = vec![HPoly::monomial(vec![0; self.n_vars], Q::one())];
            for k in 1..=max_exp[i] as usize {
                let next = pw[k - 1].mul(form)?;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = HPoly::zero(self.n_vars, self.degree);
        for (m, c) in &self.terms {
            let mut prod = HPoly::monomial(vec![0; self.n_vars], c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.add(&prod)?;
        }
        Ok(HPoly::from_map(self.n_vars, self.degree, acc.terms))
    }

    /// Relabels variables: `zi` becomes `z{perm[i]}`.
    pub fn permute_variables(&self, perm: &[usize]) -> Result<HPoly> {
        if perm.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                actual: perm.len(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; self.n_vars];
                for (i, &x) in m.0.iter().enumerate() {
                    e[perm[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(HPoly::from_map(self.n_vars, self.degree, terms))
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> HPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        HPoly::from_map(self.n_vars, self.degree, terms)
    }
}

/// Applies the Euler field `sum zi d/dzi` and checks `u(f) = d f`. Returns `d`.
pub fn euler_check(f: &HPoly) -> u32 {
    let euler = crate::vfield::LinearVectorField::identity(f.n_vars());
    let uf = crate::vfield::apply_derivation(&euler, f).expect("Euler field has matching dimension");
    let expected = f.scale(&Q::from_integer(f.degree().into()));
    assert_eq!(uf, expected, "Euler identity failed for a homogeneous polynomial");
    f.degree()
}

pub fn support(f: &HPoly) -> BTreeSet<Monomial> {
    f.support()
}

impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("- ")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{}*", fmt_rational(&abs))?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

pub fn print_poly(f: &HPoly) -> String {
    f.to_string()
}

/// Parses the ASCII polynomial grammar
///
/// ```text
/// poly   := term (('+'|'-') term)*
/// term   := [coeff '*'] factor ('*' factor)*
/// factor := var ['^' posint]
/// var    := 'z' index
/// coeff  := ['-'] int ['/' posint]
/// ```
///
/// A sign before the first term is also accepted, which is what the printer
/// emits for a negative leading coefficient.
pub fn parse_poly(text: &str, n_vars: usize) -> Result<HPoly> {
    if n_vars < 2 {
        return Err(Error::TooFewVariables(n_vars));
    }
    let mut p = Parser { src: text.as_bytes(), pos: 0, n_vars };
    let terms = p.poly()?;
    HPoly::new(n_vars, terms)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string parses"))
    }

    fn small(&mut self, what: &str) -> Result<u32> {
        let start = self.pos;
        let v = self.digits()?;
        u32::try_from(&v).or_else(|_| {
            self.pos = start;
            self.err(format!("{what} too large"))
        })
    }

    fn poly(&mut self) -> Result<Vec<(Vec<u32>, Q)>> {
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek() {
            None => return self.err("empty polynomial"),
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                // a leading '-' may belong to a coefficient; both readings agree
                self.pos += 1;
                negate = true;
            }
            _ => {}
        }
        loop {
            let (exps, c) = self.term()?;
            terms.push((exps, if negate { -c } else { c }));
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Vec<u32>, Q)> {
        let mut coeff = Q::one();
        let mut exps = vec![0u32; self.n_vars];
        match self.peek() {
            Some(c) if c == b'-' || c.is_ascii_digit() => {
                let negative = c == b'-';
                if negative {
                    self.pos += 1;
                }
                let num = self.digits()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d.is_zero() {
                        return self.err("denominator must be positive");
                    }
                    d
                } else {
                    num_bigint::BigInt::one()
                };
                coeff = Q::new(if negative { -num } else { num }, den);
                if self.peek() != Some(b'*') {
                    return self.err("expected '*' after coefficient");
                }
                self.pos += 1;
            }
            _ => {}
        }
        self.factor(&mut exps)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut exps)?;
        }
        Ok((exps, coeff))
    }

    fn factor(&mut self, exps: &mut [u32]) -> Result<()> {
        if self.peek() != Some(b'z') {
            return self.err("expected variable 'z<index>'");
        }
        self.pos += 1;
        let start = self.pos;
        let idx = self.small("variable index")? as usize;
        if idx >= self.n_vars {
            self.pos = start;
            return Err(Error::VariableOutOfRange { index: idx, n_vars: self.n_vars });
        }
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            e = self.small("exponent")?;
            if e == 0 {
                return self.err("exponent must be positive");
            }
        }
        exps[idx] = exps[idx]
            .checked_add(e)
            .ok_or(Error::Syntax { pos: self.pos, message: "exponent overflow".into() })?;
        Ok(())
    }
}
