use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{binomial_signed, format_rational, pow_signed, RationalPoint};

/// Whether negative exponents are admissible (Laurent polynomials on the torus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Affine,
    Torus,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Affine => "affine",
            Mode::Torus => "torus",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "affine" => Ok(Mode::Affine),
            "torus" => Ok(Mode::Torus),
            other => Err(Error::Format(format!("unknown mode {other:?}"))),
        }
    }
}

pub type Exponent = Vec<i64>;

/// Sparse Laurent polynomial with exact rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration is lexicographic on exponent
/// vectors. No stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    n: usize,
    mode: Mode,
    terms: BTreeMap<Exponent, BigRational>,
}

impl Polynomial {
    pub fn zero(n: usize, mode: Mode) -> Self {
        Polynomial { n, mode, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, mode: Mode, c: BigRational) -> Self {
        let mut p = Polynomial::zero(n, mode);
        if !c.is_zero() {
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(n: usize, mode: Mode) -> Self {
        Polynomial::constant(n, mode, BigRational::one())
    }

    /// The coordinate function `x_{var+1}` (0-based `var`).
    pub fn var(n: usize, mode: Mode, var: usize) -> Result<Self> {
        if var >= n {
            return Err(Error::VariableOutOfRange { index: var + 1, n });
        }
        let mut e = vec![0; n];
        e[var] = 1;
        Polynomial::monomial(n, mode, e, BigRational::one())
    }

    pub fn monomial(n: usize, mode: Mode, exponent: Exponent, coeff: BigRational) -> Result<Self> {
        Polynomial::from_terms(n, mode, std::iter::once((exponent, coeff)))
    }

    /// Builds a canonical polynomial, combining repeated exponents and dropping zeros.
    pub fn from_terms<I>(n: usize, mode: Mode, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut p = Polynomial::zero(n, mode);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: e.len() });
            }
            if mode == Mode::Affine && e.iter().any(|&a| a < 0) {
                return Err(Error::NegativeExponentInAffine);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[i64]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Maximum of `|α|` over the support; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum::<i64>()).max()
    }

    /// Minimum of `|α|` over the support; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum::<i64>()).min()
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|e| e.iter().any(|&a| a < 0))
    }

    /// Reinterprets the polynomial in another mode.
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        if mode == Mode::Affine && self.has_negative_exponents() {
            return Err(Error::NegativeExponentInAffine);
        }
        Ok(Polynomial { mode, ..self.clone() })
    }

    pub(crate) fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        if self.mode != other.mode {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(self.n, self.mode);
        }
        Polynomial {
            n: self.n,
            mode: self.mode,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Product with all terms of total degree above `max_degree` discarded.
    pub fn mul_truncated(&self, other: &Polynomial, max_degree: Option<i64>) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch in product");
        let mut out = Polynomial::zero(self.n, self.mode);
        for (ea, ca) in &self.terms {
            let da: i64 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if let Some(m) = max_degree {
                    if da + eb.iter().sum::<i64>() > m {
                        continue;
                    }
                }
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: i64) -> Self {
        Polynomial {
            n: self.n,
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<i64>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Polynomial::one(self.n, self.mode);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, at: &RationalPoint) -> Result<BigRational> {
        if at.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: at.dim() });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &a) in at.coords().iter().zip(e) {
                if a != 0 {
                    term *= pow_signed(x, a)?;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `x_{var+1}` (0-based `var`).
    pub fn differentiate(&self, var: usize) -> Result<Self> {
        if var >= self.n {
            return Err(Error::VariableOutOfRange { index: var + 1, n: self.n });
        }
        let mut out = Polynomial::zero(self.n, self.mode);
        for (e, c) in &self.terms {
            let a = e[var];
            if a == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * BigRational::from_integer(a.into()));
        }
        Ok(out)
    }

    /// Taylor expansion about `center`: returns the affine polynomial
    /// `y ↦ self(center + y)`, truncated at total degree `max_degree` when given.
    ///
    /// Negative exponents expand as generalized binomial series, so a
    /// truncation degree is mandatory for them.
    pub fn taylor_at(&self, center: &RationalPoint, max_degree: Option<i64>) -> Result<Self> {
        if center.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: center.dim() });
        }
        let n = self.n;
        let mut out = Polynomial::zero(n, Mode::Affine);
        for (e, c) in &self.terms {
            let mut acc = Polynomial::constant(n, Mode::Affine, c.clone());
            for (i, (&a, x)) in e.iter().zip(center.coords()).enumerate() {
                if a == 0 {
                    continue;
                }
                let factor = binomial_factor(n, i, a, x, max_degree)?;
                acc = acc.mul_truncated(&factor, max_degree);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }
}

/// `(x + y_i)^a` as a polynomial in `y`, truncated at `max_degree`.
fn binomial_factor(n: usize, i: usize, a: i64, x: &BigRational, max_degree: Option<i64>) -> Result<Polynomial> {
    let mut f = Polynomial::zero(n, Mode::Affine);
    if x.is_zero() {
        if a < 0 {
            return Err(Error::ZeroToNegativePower);
        }
        if max_degree.is_none_or(|m| a <= m) {
            let mut e = vec![0; n];
            e[i] = a;
            f.add_term(e, BigRational::one());
        }
        return Ok(f);
    }
    let top = match (a >= 0, max_degree) {
        (true, Some(m)) => a.min(m),
        (true, None) => a,
        (false, Some(m)) => m,
        (false, None) => {
            return Err(Error::invalid("expansion of a negative power needs a truncation degree"))
        }
    };
    for k in 0..=top.max(-1) {
        let mut e = vec![0; n];
        e[i] = k;
        f.add_term(e, binomial_signed(a, k as usize) * pow_signed(x, a - k)?);
    }
    Ok(f)
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n, rhs.n, "dimension mismatch in sum");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        if rhs.mode == Mode::Torus {
            out.mode = Mode::Torus;
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            mode: self.mode,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.mul_truncated(rhs, None);
        if rhs.mode == Mode::Torus {
            out.mode = Mode::Torus;
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms in descending lexicographic exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
                .collect();
            if factors.is_empty() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}
