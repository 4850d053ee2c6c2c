//! Order of vanishing of a polynomial along a trajectory germ.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::json;

use crate::bounds::{polytope_single_point_bound, single_point_bound, weak_single_point_bound};
use crate::error::{Error, Result};
use crate::poly::{compose, trajectory_series, Mode, Polynomial, VectorField};
use crate::polytope::LatticePolytope;
use crate::rational::{format_rational, RationalPoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Finite(u64),
    CertifiedInfinite { cutoff_used: u64, certificate: String },
    Inconclusive { cutoff_used: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityResult {
    pub status: Status,
    /// For `Finite(r)`: `r` and `(V^r P)(p) ≠ 0`.
    pub witness: Option<(u64, BigRational)>,
}

impl MultiplicityResult {
    fn finite(r: u64, value: BigRational) -> Self {
        MultiplicityResult { status: Status::Finite(r), witness: Some((r, value)) }
    }

    pub fn order(&self) -> Option<u64> {
        match self.status {
            Status::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.status, Status::Inconclusive { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match &self.status {
            Status::Finite(r) => json!({
                "status": "finite",
                "order": r,
                "witness_value": self.witness.as_ref().map(|(_, v)| format_rational(v)),
            }),
            Status::CertifiedInfinite { cutoff_used, certificate } => json!({
                "status": "certified_infinite",
                "cutoff": cutoff_used,
                "certificate": certificate,
            }),
            Status::Inconclusive { cutoff_used } => json!({
                "status": "inconclusive",
                "cutoff": cutoff_used,
            }),
        }
    }
}

impl std::fmt::Display for MultiplicityResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.status {
            Status::Finite(r) => {
                let v = self.witness.as_ref().map(|(_, v)| format_rational(v)).unwrap_or_default();
                write!(f, "finite {r} (V^{r}P = {v})")
            }
            Status::CertifiedInfinite { cutoff_used, certificate } => {
                write!(f, "certified infinite (chain vanishes through {cutoff_used}; {certificate})")
            }
            Status::Inconclusive { cutoff_used } => write!(f, "inconclusive at cutoff {cutoff_used}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cutoff {
    /// A sound upper bound for finite multiplicity.
    Auto,
    Fixed(u64),
}

impl std::str::FromStr for Cutoff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(Cutoff::Auto);
        }
        s.parse::<u64>().map(Cutoff::Fixed).map_err(|_| Error::invalid(format!("cutoff must be `auto` or a nonnegative integer, got {s:?}")))
    }
}

fn check_inputs(v: &VectorField, p: &Polynomial, at: &RationalPoint) -> Result<()> {
    if p.n() != v.n() {
        return Err(Error::DimensionMismatch { expected: v.n(), found: p.n() });
    }
    if at.dim() != v.n() {
        return Err(Error::DimensionMismatch { expected: v.n(), found: at.dim() });
    }
    if p.mode() != v.mode() {
        return Err(Error::ModeMismatch);
    }
    if v.mode() == Mode::Torus && !at.on_torus() {
        return Err(Error::OffTorus);
    }
    if v.is_singular_at(at)? {
        return Err(Error::SingularPoint);
    }
    Ok(())
}

fn to_u64(x: &BigRational, name: &str) -> Result<u64> {
    x.floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::invalid(format!("{name} = {} exceeds the supported cutoff range", format_rational(x))))
}

/// A certified cutoff and its name; `mult ≤ cutoff` whenever finite.
pub fn auto_cutoff(v: &VectorField, p: &Polynomial) -> Result<(u64, &'static str)> {
    let n = v.n();
    match v.mode() {
        Mode::Affine => {
            let d = p.total_degree().unwrap_or(0).max(1) as u64;
            let delta = v.degree().max(1) as u64;
            let b = BigRational::from_integer(single_point_bound(n, d, delta)?);
            Ok((to_u64(&b, "single_point_bound")?, "single_point_bound_sum"))
        }
        Mode::Torus => {
            let dp = LatticePolytope::newton(p)?;
            let dv = LatticePolytope::of_field(v)?;
            let b = polytope_single_point_bound(&dp, &dv, Mode::Torus, false)?;
            Ok((to_u64(&b, "polytope_single_point_bound")?, "polytope_single_point_bound"))
        }
    }
}

/// Evaluates `(V^j P)(at)` for `j = 0..=cutoff`, stopping at the first nonzero value.
///
/// Affine inputs run on Taylor jets about `at`, dropping everything above
/// degree `cutoff − j` at step `j`; torus inputs run the exact Laurent chain.
fn first_nonzero(v: &VectorField, p: &Polynomial, at: &RationalPoint, cutoff: u64) -> Result<Option<(u64, BigRational)>> {
    match v.mode() {
        Mode::Affine => {
            let c = cutoff as i64;
            let vj = v.taylor_at(at, None)?;
            let mut jet = p.taylor_at(at, Some(c))?;
            let origin = vec![0i64; v.n()];
            for j in 0..=cutoff {
                let value = jet.coeff(&origin);
                if !value.is_zero() {
                    return Ok(Some((j, value)));
                }
                if jet.is_zero() || j == cutoff {
                    break;
                }
                jet = vj.apply_truncated(&jet, Some(c - j as i64 - 1))?;
            }
            Ok(None)
        }
        Mode::Torus => {
            let mut cur = p.clone();
            for j in 0..=cutoff {
                let value = cur.evaluate(at)?;
                if !value.is_zero() {
                    return Ok(Some((j, value)));
                }
                if cur.is_zero() || j == cutoff {
                    break;
                }
                cur = v.lie_derivative(&cur)?;
            }
            Ok(None)
        }
    }
}

/// `min{r : (V^r P)(at) ≠ 0}` by the Lie-derivative chain.
pub fn multiplicity(v: &VectorField, p: &Polynomial, at: &RationalPoint, cutoff: Cutoff) -> Result<MultiplicityResult> {
    check_inputs(v, p, at)?;
    let value = p.evaluate(at)?;
    if !value.is_zero() {
        return Ok(MultiplicityResult::finite(0, value));
    }
    if p.is_zero() {
        let status = match cutoff {
            Cutoff::Auto => Status::CertifiedInfinite { cutoff_used: 0, certificate: "zero_polynomial".into() },
            Cutoff::Fixed(c) => Status::Inconclusive { cutoff_used: c },
        };
        return Ok(MultiplicityResult { status, witness: None });
    }
    let (c, certificate) = match cutoff {
        Cutoff::Auto => {
            let (c, name) = auto_cutoff(v, p)?;
            (c, Some(name))
        }
        Cutoff::Fixed(c) => (c, None),
    };
    Ok(match first_nonzero(v, p, at, c)? {
        Some((r, value)) => MultiplicityResult::finite(r, value),
        None => {
            let status = match certificate {
                Some(name) => Status::CertifiedInfinite { cutoff_used: c, certificate: name.into() },
                None => Status::Inconclusive { cutoff_used: c },
            };
            MultiplicityResult { status, witness: None }
        }
    })
}

/// Valuation of `P(γ(t))` through degree `order`, where `γ` is the formal
/// trajectory through `at`. Never reports infinite multiplicity.
pub fn multiplicity_via_series(v: &VectorField, p: &Polynomial, at: &RationalPoint, order: usize) -> Result<MultiplicityResult> {
    check_inputs(v, p, at)?;
    if order == 0 {
        return Err(Error::invalid("series order must be at least 1"));
    }
    let mut m = 1usize;
    let mut seen = 0usize;
    loop {
        m = (2 * m).min(order);
        let gamma = trajectory_series(v, at, m)?;
        let coeffs = compose(p, gamma.entries(), m + 1)?;
        if let Some(j) = coeffs.iter().skip(seen).position(|c| !c.is_zero()) {
            let j = seen + j;
            // (V^j P)(at) = j!·[t^j] P(γ(t))
            let fact = BigRational::from_integer(crate::rational::factorial(j));
            return Ok(MultiplicityResult::finite(j as u64, &coeffs[j] * fact));
        }
        seen = m + 1;
        if m == order {
            return Ok(MultiplicityResult { status: Status::Inconclusive { cutoff_used: order as u64 }, witness: None });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicitySum {
    pub per_point: Vec<MultiplicityResult>,
    /// Sum over the finite entries.
    pub sum: u64,
    /// False when some entry is not finite.
    pub valid: bool,
}

impl MultiplicitySum {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "sum": self.sum,
            "valid": self.valid,
            "points": self.per_point.iter().map(MultiplicityResult::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn multiplicity_sum(v: &VectorField, p: &Polynomial, points: &[RationalPoint], cutoff: Cutoff) -> Result<MultiplicitySum> {
    let per_point = std::thread::scope(|s| {
        let handles: Vec<_> = points.iter().map(|at| s.spawn(move || multiplicity(v, p, at, cutoff))).collect();
        handles
            .into_iter()
            .enumerate()
            .map(|(index, h)| {
                h.join()
                    .expect("multiplicity worker panicked")
                    .map_err(|e| Error::AtPoint { index, source: Box::new(e) })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let sum = per_point.iter().filter_map(MultiplicityResult::order).sum();
    let valid = per_point.iter().all(MultiplicityResult::is_finite);
    Ok(MultiplicitySum { per_point, sum, valid })
}

/// Outcome of [`certified_vanishing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vanishing {
    pub vanishes: bool,
    /// Chain length checked (the weak single-point bound).
    pub bound: u64,
    pub certificate: String,
    /// First nonzero chain value, when there is one.
    pub witness: Option<(u64, BigRational)>,
}

impl Vanishing {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vanishes": self.vanishes,
            "bound": self.bound,
            "certificate": self.certificate,
            "witness_order": self.witness.as_ref().map(|w| w.0),
            "witness_value": self.witness.as_ref().map(|w| format_rational(&w.1)),
        })
    }
}

/// Whether `P` vanishes identically on the trajectory germ through `at`,
/// decided by running the chain through `2^{n+1}(d'+(n−1)(δ−1))^n`.
pub fn certified_vanishing(v: &VectorField, p: &Polynomial, at: &RationalPoint) -> Result<Vanishing> {
    if v.mode() != Mode::Affine || p.mode() != Mode::Affine {
        return Err(Error::Hypothesis("certified vanishing needs polynomial (affine) inputs".into()));
    }
    check_inputs(v, p, at)?;
    let n = v.n();
    let d = p.total_degree().unwrap_or(0).max(1) as u64;
    let delta = v.degree().max(1) as u64;
    let b = to_u64(&BigRational::from_integer(weak_single_point_bound(n, d, delta)?), "weak_single_point_bound")?;
    let certificate = "single_point_bound_weak".to_string();
    let witness = if p.is_zero() { None } else { first_nonzero(v, p, at, b)? };
    Ok(Vanishing { vanishes: witness.is_none(), bound: b, certificate, witness })
}
