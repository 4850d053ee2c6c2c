//! Truncated power series in a formal time variable and the formal
//! trajectory of `x' = Q(x)`.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::VectorField;
use super::polynomial::{Mode, Polynomial};
use crate::error::{Error, Result};
use crate::rational::{rat, RationalPoint};

/// Coefficients `c_0..c_N` of a power series truncated at degree `N`.
pub type Series = Vec<BigRational>;

fn mul_trunc(a: &[BigRational], b: &[BigRational], len: usize) -> Series {
    let mut out = vec![BigRational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn inverse(a: &[BigRational], len: usize) -> Result<Series> {
    if a[0].is_zero() {
        return Err(Error::ZeroToNegativePower);
    }
    let inv0 = a[0].recip();
    let mut b = vec![BigRational::zero(); len];
    b[0] = inv0.clone();
    for k in 1..len {
        let mut acc = BigRational::zero();
        for i in 1..=k.min(a.len() - 1) {
            if !a[i].is_zero() {
                acc += &a[i] * &b[k - i];
            }
        }
        b[k] = -(&inv0 * acc);
    }
    Ok(b)
}

fn power(base: &[BigRational], e: i64, len: usize) -> Result<Series> {
    let b = if e < 0 { inverse(base, len)? } else { base[..len].to_vec() };
    let mut acc = vec![BigRational::zero(); len];
    acc[0] = BigRational::one();
    let mut sq = b;
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = mul_trunc(&acc, &sq, len);
        }
        k >>= 1;
        if k > 0 {
            sq = mul_trunc(&sq, &sq, len);
        }
    }
    Ok(acc)
}

/// `p(x(t))` truncated to `len` coefficients, where `x` are series with at
/// least `len` coefficients each.
pub fn compose(p: &Polynomial, x: &[Series], len: usize) -> Result<Series> {
    if x.len() != p.n() {
        return Err(Error::DimensionMismatch { expected: p.n(), found: x.len() });
    }
    let mut powers: HashMap<(usize, i64), Series> = HashMap::new();
    let mut out = vec![BigRational::zero(); len];
    for (e, c) in p.terms() {
        let mut term = vec![BigRational::zero(); len];
        term[0] = c.clone();
        for (i, &a) in e.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = powers.entry((i, a)) {
                let pw = power(&x[i], a, len)?;
                e.insert(pw);
            }
            term = mul_trunc(&term, &powers[&(i, a)], len);
        }
        for (o, t) in out.iter_mut().zip(term) {
            *o += t;
        }
    }
    Ok(out)
}

/// The formal solution of `x' = Q(x)`, `x(0) = start`, carried to degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesVector {
    order: usize,
    entries: Vec<Series>,
}

impl SeriesVector {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[Series] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &Series {
        &self.entries[i]
    }
}

/// Undetermined coefficients: `(k+1)·a_{k+1} = [t^k] Q(x(t))`, where the
/// right side only involves `a_0..a_k`.
pub fn trajectory_series(v: &VectorField, start: &RationalPoint, order: usize) -> Result<SeriesVector> {
    let n = v.n();
    if start.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: start.dim() });
    }
    if order == 0 {
        return Err(Error::invalid("series order must be at least 1"));
    }
    if v.mode() == Mode::Torus && !start.on_torus() {
        return Err(Error::OffTorus);
    }
    let len = order + 1;
    let mut entries: Vec<Series> = start
        .coords()
        .iter()
        .map(|c| {
            let mut s = vec![BigRational::zero(); len];
            s[0] = c.clone();
            s
        })
        .collect();
    for k in 0..order {
        for i in 0..n {
            let q = &v.components()[i];
            if q.is_zero() {
                continue;
            }
            let rhs = compose(q, &entries, k + 1)?;
            entries[i][k + 1] = &rhs[k] / rat(k as i64 + 1);
        }
    }
    Ok(SeriesVector { order, entries })
}
