//! Closed-form and Newton-polytope multiplicity bounds.
//!
//! Degree forms replace `d` by `max(d, n−1)`; enlarging `Δ(P)` can only
//! weaken a bound, never break it. Polytope forms in affine mode likewise
//! use the smallest convex co-ideal containing `Δ(P)` and `(n−1)Δ_x`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::Mode;
use crate::polytope::{quermassintegral, LatticePolytope};
use crate::rational::{binomial, factorial, format_rational};

fn check_params(n: usize, d: u64, delta: u64) -> Result<()> {
    if n == 0 || d == 0 || delta == 0 {
        return Err(Error::invalid(format!("need n, d, delta >= 1 (got n={n}, d={d}, delta={delta})")));
    }
    Ok(())
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn two_pow(k: usize) -> BigInt {
    BigInt::one() << k
}

/// `max(d, n−1)`.
pub fn padded_degree(n: usize, d: u64) -> u64 {
    d.max(n as u64 - 1)
}

/// `d' + j(δ−1)`.
fn shifted(d: u64, j: usize, delta: u64) -> BigInt {
    big(d) + BigInt::from(j) * big(delta - 1)
}

/// `2^{2n−1} Σ_{i=1}^n [d+(i−1)(δ−1)]^{2n}` (no padding).
pub fn gabrielov_bound(n: usize, d: u64, delta: u64) -> Result<BigInt> {
    check_params(n, d, delta)?;
    let sum: BigInt = (0..n).map(|i| num_traits::pow(shifted(d, i, delta), 2 * n)).sum();
    Ok(two_pow(2 * n - 1) * sum)
}

/// Strict upper bound `2^n (d'+(n−k−1)(δ−1))^{n−k}` on the degree of the k-th multiplicity cycle.
pub fn mc_degree_simple(n: usize, d: u64, delta: u64, k: usize) -> Result<BigInt> {
    check_params(n, d, delta)?;
    if k >= n {
        return Err(Error::invalid(format!("cycle index k={k} must be < n={n}")));
    }
    let d = padded_degree(n, d);
    Ok(two_pow(n) * num_traits::pow(shifted(d, n - k - 1, delta), n - k))
}

/// `Σ_{k=0}^{n−1} 2^n (d'+(n−k−1)(δ−1))^{n−k}`.
pub fn single_point_bound(n: usize, d: u64, delta: u64) -> Result<BigInt> {
    (0..n).map(|k| mc_degree_simple(n, d, delta, k)).sum()
}

/// `2^{n+1} (d'+(n−1)(δ−1))^n`.
pub fn weak_single_point_bound(n: usize, d: u64, delta: u64) -> Result<BigInt> {
    check_params(n, d, delta)?;
    let d = padded_degree(n, d);
    Ok(two_pow(n + 1) * num_traits::pow(shifted(d, n - 1, delta), n))
}

/// `2^n Σ_k a_k (d'+(n−k−1)(δ−1))^{n−k}` for incidence counts `a_0..a_{n−1}`.
pub fn multipoint_bound(n: usize, d: u64, delta: u64, a: &[u64]) -> Result<BigInt> {
    check_params(n, d, delta)?;
    if a.len() != n {
        return Err(Error::invalid(format!("expected {n} incidence counts, got {}", a.len())));
    }
    let d = padded_degree(n, d);
    let sum: BigInt = a
        .iter()
        .enumerate()
        .map(|(k, &ak)| big(ak) * num_traits::pow(shifted(d, n - k - 1, delta), n - k))
        .sum();
    Ok(two_pow(n) * sum)
}

/// Which polar-variety degree estimate to evaluate.
#[derive(Debug, Clone, Copy)]
pub enum PvVariant<'a> {
    /// `C(n, r+k−1)·n!·Q_{k−1}(Δ+Δ_x)`.
    Torus(&'a LatticePolytope),
    /// `C(n, r+k−1)·n!·Q_{k−1}(Δ)` for a convex co-ideal `Δ`.
    AffinePolytope(&'a LatticePolytope),
    /// `C(n, r+k−1)·d^{n−k+1}`.
    AffineDegree(u64),
}

pub fn pv_degree(n: usize, r: usize, k: usize, variant: PvVariant<'_>) -> Result<BigRational> {
    if n == 0 || r == 0 || k == 0 || k + r > n + 1 {
        return Err(Error::invalid(format!("need r >= 1 and 1 <= k <= n-r+1 (n={n}, r={r}, k={k})")));
    }
    let choose = BigRational::from_integer(binomial(n, r + k - 1));
    let nfact = BigRational::from_integer(factorial(n));
    let polytope_checked = |delta: &LatticePolytope| {
        if delta.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: delta.ambient_dim() });
        }
        Ok(())
    };
    match variant {
        PvVariant::Torus(delta) => {
            polytope_checked(delta)?;
            let shifted = delta.minkowski_sum(&LatticePolytope::standard_simplex(n))?;
            Ok(choose * nfact * quermassintegral(&shifted, k - 1)?)
        }
        PvVariant::AffinePolytope(delta) => {
            polytope_checked(delta)?;
            if !delta.is_convex_coideal() {
                return Err(Error::Hypothesis("affine polar-degree bound needs a convex co-ideal".into()));
            }
            Ok(choose * nfact * quermassintegral(delta, k - 1)?)
        }
        PvVariant::AffineDegree(d) => {
            if d == 0 {
                return Err(Error::invalid("degree must be positive"));
            }
            Ok(choose * BigRational::from_integer(num_traits::pow(big(d), n - k + 1)))
        }
    }
}

/// Polytope-based degree bound for one multiplicity cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McPolytopeBound {
    /// `Σ_{r=1}^{n−k} C(n, r+k)·n!·Q_k(Δ(P)+(r−1)Δ(V)[+Δ_x])`.
    pub sum: BigRational,
    /// `2^n·n!·Q_k(Δ(P)+(n−k−1)Δ(V)[+Δ_x])`.
    pub weak: BigRational,
    /// False when the orthant hypothesis was waived rather than checked.
    pub hypothesis_verified: bool,
}

/// Hypothesis checks: torus mode needs a (lattice) translate of `(n−1)Δ_x`
/// inside `Δ(P)`; affine mode needs both polytopes in the nonnegative orthant
/// unless `waiver` is set.
pub fn mc_degree_polytope(
    n: usize,
    k: usize,
    delta_p: &LatticePolytope,
    delta_v: &LatticePolytope,
    mode: Mode,
    waiver: bool,
) -> Result<McPolytopeBound> {
    for p in [delta_p, delta_v] {
        if p.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.ambient_dim() });
        }
    }
    if k >= n {
        return Err(Error::invalid(format!("cycle index k={k} must be < n={n}")));
    }
    let simplex = LatticePolytope::standard_simplex(n);
    let (base, verified) = match mode {
        Mode::Torus => {
            if delta_p.lattice_translate_of_dilated_simplex(n as i64 - 1).is_none() {
                return Err(Error::Hypothesis(format!("no lattice translate of {}·Δ_x lies in Δ(P)", n - 1)));
            }
            (delta_p.clone(), true)
        }
        Mode::Affine => {
            let inside = delta_p.in_nonnegative_orthant() && delta_v.in_nonnegative_orthant();
            if !inside && !waiver {
                return Err(Error::Hypothesis(
                    "affine polytope bound needs Δ(P), Δ(V) in the nonnegative orthant (or a waiver)".into(),
                ));
            }
            (coideal_hull(delta_p, n)?, inside)
        }
    };
    let inner = |r: usize| -> Result<LatticePolytope> {
        let mut p = base.minkowski_sum(&delta_v.dilate(r as i64 - 1)?)?;
        if mode == Mode::Torus {
            p = p.minkowski_sum(&simplex)?;
        }
        Ok(p)
    };
    let nfact = BigRational::from_integer(factorial(n));
    let mut sum = BigRational::zero();
    for r in 1..=n - k {
        let q = quermassintegral(&inner(r)?, k)?;
        sum += BigRational::from_integer(binomial(n, r + k)) * &nfact * q;
    }
    let weak = BigRational::from_integer(two_pow(n)) * &nfact * quermassintegral(&inner(n - k)?, k)?;
    Ok(McPolytopeBound { sum, weak, hypothesis_verified: verified })
}

/// Smallest convex co-ideal containing `Δ` and `(n−1)Δ_x`: the hull of every
/// vertex with any subset of its coordinates set to zero.
fn coideal_hull(delta: &LatticePolytope, n: usize) -> Result<LatticePolytope> {
    let mut pts = LatticePolytope::dilated_simplex(n, n as i64 - 1).vertices().to_vec();
    for v in delta.vertices() {
        for mask in 0u32..(1 << n) {
            let lowered = v.iter().enumerate().map(|(i, &c)| if mask >> i & 1 == 1 { 0 } else { c }).collect();
            pts.push(lowered);
        }
    }
    LatticePolytope::from_points(n, pts)
}

/// `Σ_k` of the polytope cycle-degree sums: a single-point multiplicity bound.
pub fn polytope_single_point_bound(
    delta_p: &LatticePolytope,
    delta_v: &LatticePolytope,
    mode: Mode,
    waiver: bool,
) -> Result<BigRational> {
    let n = delta_p.ambient_dim();
    let mut total = BigRational::zero();
    for k in 0..n {
        total += mc_degree_polytope(n, k, delta_p, delta_v, mode, waiver)?.sum;
    }
    Ok(total)
}

/// Three-dimensional estimates: the classical one and the Betti-number refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrBounds {
    /// `d + 2d(d+δ−1)²`.
    pub gr: BigInt,
    /// `d[1+(d−1)²+(d+δ−1)(d+2δ−1)]`.
    pub improved: BigInt,
    /// `b0(F0) ≤ d`, `b0(F1) ≤ d(d+δ−1)`, `b0(F2) ≤ d(d+δ−1)(d+2δ−2)`, `b2(F0) ≤ d(d−1)²`.
    pub betti: [BigInt; 4],
}

pub fn gr_bounds(d: u64, delta: u64) -> Result<GrBounds> {
    if d < 2 || delta == 0 {
        return Err(Error::invalid(format!("need d >= 2 and delta >= 1 (got d={d}, delta={delta})")));
    }
    let (dd, de) = (big(d), big(delta));
    let a = &dd + &de - 1;
    let gr = &dd + BigInt::from(2) * &dd * &a * &a;
    let improved = &dd * (BigInt::one() + (&dd - 1) * (&dd - 1) + &a * (&dd + BigInt::from(2) * &de - 1));
    let betti = [
        dd.clone(),
        &dd * &a,
        &dd * &a * (&dd + BigInt::from(2) * &de - 2),
        &dd * (&dd - 1) * (&dd - 1),
    ];
    let betti_sum: BigInt = betti.iter().sum();
    if betti_sum != improved {
        return Err(Error::ComparisonFailed(format!("Betti summands {betti_sum} != improved bound {improved}")));
    }
    Ok(GrBounds { gr, improved, betti })
}

/// A user-supplied count `a_j(T)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncidenceFn {
    Constant(u64),
    /// Value of the last step whose threshold is `≤ T`; thresholds ascending.
    Steps(Vec<(BigRational, u64)>),
}

impl IncidenceFn {
    fn at(&self, t: &BigRational) -> Option<u64> {
        match self {
            IncidenceFn::Constant(c) => Some(*c),
            IncidenceFn::Steps(steps) => steps.iter().take_while(|(th, _)| th <= t).last().map(|(_, v)| *v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NesterenkoParams {
    c: BigRational,
    kappa: usize,
    table: BTreeMap<usize, IncidenceFn>,
}

impl NesterenkoParams {
    /// `a_0` defaults to the constant 1 and may not be anything else.
    pub fn new(c: BigRational, kappa: usize, mut table: BTreeMap<usize, IncidenceFn>) -> Result<Self> {
        if c <= BigRational::zero() {
            return Err(Error::invalid("the trajectory constant C must be positive"));
        }
        if kappa == 0 {
            return Err(Error::invalid("transcendence degree kappa must be at least 1"));
        }
        match table.get(&0) {
            None => {
                table.insert(0, IncidenceFn::Constant(1));
            }
            Some(IncidenceFn::Constant(1)) => {}
            Some(IncidenceFn::Steps(s)) if !s.is_empty() && s[0].0 <= BigRational::zero() && s.iter().all(|(_, v)| *v == 1) => {}
            Some(_) => return Err(Error::invalid("a_0(T) must be identically 1")),
        }
        Ok(NesterenkoParams { c, kappa, table })
    }

    pub fn c(&self) -> &BigRational {
        &self.c
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }
}

/// `C Σ_{j=1}^κ a_{κ−j}(C d^j)·d^j` with user-supplied `C` and `a`.
pub fn nesterenko_bound(d: u64, params: &NesterenkoParams) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    let dq = BigRational::from_integer(big(d));
    let mut sum = BigRational::zero();
    for j in 1..=params.kappa {
        let dj = num_traits::pow(dq.clone(), j);
        let t = &params.c * &dj;
        let idx = params.kappa - j;
        let a = params
            .table
            .get(&idx)
            .and_then(|f| f.at(&t))
            .ok_or_else(|| Error::invalid(format!("no table entry for a_{idx}({})", format_rational(&t))))?;
        sum += BigRational::from_integer(big(a)) * dj;
    }
    Ok(&params.c * sum)
}

/// Inputs for a comparison report.
#[derive(Debug, Clone)]
pub struct BoundParams {
    pub n: usize,
    pub d: u64,
    pub delta: u64,
    pub mode: Mode,
    pub poly_polytope: Option<LatticePolytope>,
    pub field_polytope: Option<LatticePolytope>,
    pub waiver: bool,
    pub nesterenko: Option<NesterenkoParams>,
    pub incidence: Option<Vec<u64>>,
}

impl BoundParams {
    pub fn degrees(n: usize, d: u64, delta: u64) -> Self {
        BoundParams {
            n,
            d,
            delta,
            mode: Mode::Affine,
            poly_polytope: None,
            field_polytope: None,
            waiver: false,
            nesterenko: None,
            incidence: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_params(self.n, self.d, self.delta)?;
        for p in self.poly_polytope.iter().chain(self.field_polytope.iter()) {
            if p.ambient_dim() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, found: p.ambient_dim() });
            }
        }
        if self.poly_polytope.is_some() != self.field_polytope.is_some() {
            return Err(Error::invalid("polytope bounds need both Δ(P) and Δ(V)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: String,
    pub value: BigRational,
    pub cite: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub lhs: String,
    pub rel: Relation,
    pub rhs: String,
    pub holds: bool,
}

/// Named bound values plus the comparisons that were asserted between them.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub params: BoundParams,
    pub entries: Vec<BoundEntry>,
    pub comparisons: Vec<Comparison>,
    pub notes: Vec<String>,
}

/// Which rows of a report to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Selection {
    #[default]
    All,
    Degree,
    Gr,
    Polytope,
    Nesterenko,
    Multipoint,
}

impl std::str::FromStr for Selection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Selection::All,
            "degree" => Selection::Degree,
            "gr" => Selection::Gr,
            "polytope" => Selection::Polytope,
            "nesterenko" => Selection::Nesterenko,
            "multipoint" => Selection::Multipoint,
            other => return Err(Error::invalid(format!("unknown bound selection {other:?}"))),
        })
    }
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<&BigRational> {
        self.entries.iter().find(|e| e.name == name).map(|e| &e.value)
    }

    fn push(&mut self, name: impl Into<String>, value: BigRational, cite: impl Into<String>) {
        self.entries.push(BoundEntry { name: name.into(), value, cite: cite.into() });
    }

    fn assert_rel(&mut self, lhs: &str, rel: Relation, rhs: &str) -> Result<()> {
        let (a, b) = match (self.get(lhs), self.get(rhs)) {
            (Some(a), Some(b)) => (a.clone(), b.clone()),
            _ => return Ok(()),
        };
        let holds = match rel {
            Relation::Le => a <= b,
            Relation::Lt => a < b,
        };
        self.comparisons.push(Comparison { lhs: lhs.into(), rel, rhs: rhs.into(), holds });
        if holds {
            Ok(())
        } else {
            Err(Error::ComparisonFailed(format!("{lhs} = {a} vs {rhs} = {b}")))
        }
    }

    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let w_name = self.entries.iter().map(|e| e.name.len()).max().unwrap_or(4).max(4);
        let w_val = self.entries.iter().map(|e| format_rational(&e.value).len()).max().unwrap_or(5).max(5);
        let mut out = String::new();
        let p = &self.params;
        let _ = writeln!(out, "n={} d={} delta={} mode={}", p.n, p.d, p.delta, p.mode);
        let _ = writeln!(out, "{:<w_name$}  {:>w_val$}  formula", "name", "value");
        for e in &self.entries {
            let _ = writeln!(out, "{:<w_name$}  {:>w_val$}  {}", e.name, format_rational(&e.value), e.cite);
        }
        for c in &self.comparisons {
            let rel = if c.rel == Relation::Le { "<=" } else { "<" };
            let _ = writeln!(out, "check {} {} {}: {}", c.lhs, rel, c.rhs, if c.holds { "ok" } else { "FAILED" });
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "value", "formula"]).expect("in-memory write");
        for e in &self.entries {
            w.write_record([e.name.as_str(), &format_rational(&e.value), e.cite.as_str()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 csv")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p = &self.params;
        let poly = |x: &Option<LatticePolytope>| x.as_ref().map(|q| q.vertices().to_vec());
        serde_json::json!({
            "params": {
                "n": p.n, "d": p.d, "delta": p.delta, "mode": p.mode, "waiver": p.waiver,
                "poly_polytope": poly(&p.poly_polytope), "field_polytope": poly(&p.field_polytope),
            },
            "entries": self.entries.iter().map(|e| serde_json::json!({
                "name": e.name, "value": format_rational(&e.value), "cite": e.cite,
            })).collect::<Vec<_>>(),
            "comparisons": self.comparisons,
            "notes": self.notes,
        })
    }
}

fn int(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

/// Tabulates every applicable bound and re-verifies the asserted relations.
pub fn compare_report(params: &BoundParams, which: Selection) -> Result<BoundReport> {
    params.validate()?;
    let (n, d, delta) = (params.n, params.d, params.delta);
    let mut rep = BoundReport { params: params.clone(), entries: vec![], comparisons: vec![], notes: vec![] };
    let want = |s: Selection| which == Selection::All || which == s;

    if want(Selection::Degree) {
        rep.push("gabrielov", int(gabrielov_bound(n, d, delta)?), "2^(2n-1) * sum_{i=1..n} [d+(i-1)(delta-1)]^(2n)");
        rep.push(
            "single_point_sum",
            int(single_point_bound(n, d, delta)?),
            "sum_{k=0..n-1} 2^n (d'+(n-k-1)(delta-1))^(n-k), d'=max(d,n-1)",
        );
        rep.push("single_point_weak", int(weak_single_point_bound(n, d, delta)?), "2^(n+1) (d'+(n-1)(delta-1))^n");
        rep.assert_rel("single_point_sum", Relation::Le, "single_point_weak")?;
    }
    if want(Selection::Gr) && n == 3 {
        if d >= 2 {
            let g = gr_bounds(d, delta)?;
            rep.push("gr", int(g.gr), "d + 2d(d+delta-1)^2");
            rep.push("gr_improved", int(g.improved), "d[1+(d-1)^2+(d+delta-1)(d+2delta-1)]");
            rep.assert_rel("gr_improved", Relation::Lt, "gr")?;
        } else {
            rep.notes.push("three-dimensional estimates need d >= 2".into());
        }
    }
    if want(Selection::Polytope) {
        if let (Some(dp), Some(dv)) = (&params.poly_polytope, &params.field_polytope) {
            let padded = padded_degree(n, d) as i64;
            let comparable = params.mode == Mode::Affine
                && LatticePolytope::dilated_simplex(n, padded).contains(dp)
                && LatticePolytope::dilated_simplex(n, delta as i64 - 1).contains(dv);
            for k in 0..n {
                let b = mc_degree_polytope(n, k, dp, dv, params.mode, params.waiver)?;
                if !b.hypothesis_verified {
                    rep.notes.push(format!("mc_polytope[{k}]: hypothesis unverified (waiver)"));
                }
                let plus = if params.mode == Mode::Torus { "+Delta_x" } else { "" };
                rep.push(
                    format!("mc_polytope_sum[{k}]"),
                    b.sum,
                    format!("sum_r C(n,r+k) n! Q_k(Delta(P)+(r-1)Delta(V){plus})"),
                );
                rep.push(
                    format!("mc_polytope_weak[{k}]"),
                    b.weak,
                    format!("2^n n! Q_k(Delta(P)+(n-k-1)Delta(V){plus})"),
                );
                rep.assert_rel(&format!("mc_polytope_sum[{k}]"), Relation::Le, &format!("mc_polytope_weak[{k}]"))?;
                if comparable {
                    rep.push(format!("mc_degree[{k}]"), int(mc_degree_simple(n, d, delta, k)?), "2^n (d'+(n-k-1)(delta-1))^(n-k)");
                    rep.assert_rel(&format!("mc_polytope_sum[{k}]"), Relation::Le, &format!("mc_degree[{k}]"))?;
                }
            }
            if !comparable {
                rep.notes.push("polytopes not inside d'Δ_x and (δ−1)Δ_x: no polytope-vs-degree comparison asserted".into());
            }
        }
    }
    if want(Selection::Nesterenko) {
        if let Some(np) = &params.nesterenko {
            rep.push(
                "nesterenko",
                nesterenko_bound(d, np)?,
                "parametrized: C sum_{j=1..kappa} a_{kappa-j}(C d^j) d^j (C user-supplied)",
            );
        }
    }
    if want(Selection::Multipoint) {
        if let Some(a) = &params.incidence {
            rep.push(
                "multipoint",
                int(multipoint_bound(n, d, delta, a)?),
                "2^n sum_k a_k (d'+(n-k-1)(delta-1))^(n-k)",
            );
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn gabrielov_by_hand() {
        assert_eq!(gabrielov_bound(2, 2, 2).unwrap(), b(776));
        assert_eq!(gabrielov_bound(2, 3, 2).unwrap(), b(2696));
        assert_eq!(gabrielov_bound(1, 1, 1).unwrap(), b(2));
        assert!(gabrielov_bound(2, 0, 1).is_err());
    }

    #[test]
    fn cycle_degrees_by_hand() {
        assert_eq!(mc_degree_simple(2, 3, 2, 0).unwrap(), b(64));
        assert_eq!(mc_degree_simple(2, 3, 2, 1).unwrap(), b(12));
        for n in 1..5 {
            for d in (n as u64).max(1)..6 {
                for k in 0..n {
                    assert_eq!(mc_degree_simple(n, d, 1, k).unwrap(), two_pow(n) * num_traits::pow(big(d), n - k));
                }
            }
        }
        assert!(mc_degree_simple(2, 3, 2, 2).is_err());
    }

    #[test]
    fn single_point_forms() {
        assert_eq!(single_point_bound(2, 3, 2).unwrap(), b(76));
        assert_eq!(weak_single_point_bound(2, 3, 2).unwrap(), b(128));
        assert_eq!(single_point_bound(2, 1, 1).unwrap(), b(8));
        // padding: d=1 in n=3 behaves as d=2
        assert_eq!(single_point_bound(3, 1, 1).unwrap(), single_point_bound(3, 2, 1).unwrap());
        assert!(single_point_bound(2, 3, 2).unwrap() < gabrielov_bound(2, 3, 2).unwrap());
    }

    #[test]
    fn polar_degrees() {
        assert_eq!(pv_degree(2, 1, 1, PvVariant::AffineDegree(3)).unwrap(), rat(18));
        let tri = LatticePolytope::dilated_simplex(2, 3);
        assert_eq!(pv_degree(2, 1, 1, PvVariant::AffinePolytope(&tri)).unwrap(), rat(18));
        let origin = LatticePolytope::point(vec![0, 0]);
        assert_eq!(pv_degree(2, 1, 1, PvVariant::Torus(&origin)).unwrap(), rat(2));
        assert!(pv_degree(2, 2, 2, PvVariant::AffineDegree(3)).is_err());
        let not_coideal = LatticePolytope::from_points(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        assert!(matches!(pv_degree(2, 1, 1, PvVariant::AffinePolytope(&not_coideal)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn polytope_cycle_degrees() {
        let two = LatticePolytope::dilated_simplex(2, 2);
        let origin = LatticePolytope::point(vec![0, 0]);
        let t = mc_degree_polytope(2, 0, &two, &origin, Mode::Torus, false).unwrap();
        assert_eq!((t.sum, t.weak), (rat(27), rat(36)));

        let three = LatticePolytope::dilated_simplex(2, 3);
        let simplex = LatticePolytope::standard_simplex(2);
        let a0 = mc_degree_polytope(2, 0, &three, &simplex, Mode::Affine, false).unwrap();
        assert_eq!(a0.sum, rat(34));
        let a1 = mc_degree_polytope(2, 1, &three, &simplex, Mode::Affine, false).unwrap();
        assert_eq!(a1.sum, rat(3));
        assert_eq!(a1.weak, rat(12));
    }

    #[test]
    fn polytope_hypotheses() {
        let seg = LatticePolytope::from_points(2, vec![vec![0, 0], vec![3, 0]]).unwrap();
        let origin = LatticePolytope::point(vec![0, 0]);
        assert!(matches!(mc_degree_polytope(2, 0, &seg, &origin, Mode::Torus, false), Err(Error::Hypothesis(_))));
        let v = LatticePolytope::from_points(2, vec![vec![-1, 0], vec![0, 1]]).unwrap();
        let three = LatticePolytope::dilated_simplex(2, 3);
        assert!(matches!(mc_degree_polytope(2, 0, &three, &v, Mode::Affine, false), Err(Error::Hypothesis(_))));
        let waived = mc_degree_polytope(2, 0, &three, &v, Mode::Affine, true).unwrap();
        assert!(!waived.hypothesis_verified);
        // a lone corner is enlarged to the square below it
        let corner = LatticePolytope::point(vec![3, 3]);
        let square = LatticePolytope::from_points(2, vec![vec![0, 0], vec![3, 0], vec![0, 3], vec![3, 3]]).unwrap();
        let origin = LatticePolytope::point(vec![0, 0]);
        assert_eq!(
            mc_degree_polytope(2, 0, &corner, &origin, Mode::Affine, false).unwrap(),
            mc_degree_polytope(2, 0, &square, &origin, Mode::Affine, false).unwrap()
        );
    }

    #[test]
    fn three_dimensional_estimates() {
        let g = gr_bounds(3, 2).unwrap();
        assert_eq!((g.gr.clone(), g.improved.clone()), (b(99), b(87)));
        let g = gr_bounds(2, 1).unwrap();
        assert_eq!((g.gr, g.improved), (b(18), b(16)));
        assert!(gr_bounds(1, 1).is_err());
    }

    #[test]
    fn nesterenko_parametrized() {
        let mut table = BTreeMap::new();
        let p = NesterenkoParams::new(rat(1), 1, table.clone()).unwrap();
        assert_eq!(nesterenko_bound(5, &p).unwrap(), rat(5));
        table.insert(1, IncidenceFn::Constant(7));
        let p = NesterenkoParams::new(rat(1), 2, table.clone()).unwrap();
        assert_eq!(nesterenko_bound(4, &p).unwrap(), rat(7 * 4 + 16));
        assert!(NesterenkoParams::new(rat(0), 1, table.clone()).is_err());
        let mut bad = table.clone();
        bad.insert(0, IncidenceFn::Constant(2));
        assert!(NesterenkoParams::new(rat(1), 1, bad).is_err());
        // steps: a_1(T) = 2 for T >= 3/2, missing below
        let mut steps = BTreeMap::new();
        steps.insert(1, IncidenceFn::Steps(vec![(ratio(3, 2), 2)]));
        let p = NesterenkoParams::new(ratio(1, 2), 2, steps).unwrap();
        assert_eq!(nesterenko_bound(4, &p).unwrap(), ratio(1, 2) * (rat(2 * 4) + rat(16)));
        assert!(nesterenko_bound(2, &p).is_err());
    }

    #[test]
    fn multipoint() {
        assert_eq!(multipoint_bound(2, 2, 2, &[1, 5]).unwrap(), b(76));
        assert_eq!(multipoint_bound(3, 4, 2, &[1, 1, 1]).unwrap(), single_point_bound(3, 4, 2).unwrap());
        assert_eq!(multipoint_bound(3, 4, 2, &[0, 0, 0]).unwrap(), b(0));
        assert!(multipoint_bound(3, 4, 2, &[1, 1]).is_err());
    }

    #[test]
    fn reports() {
        let r = compare_report(&BoundParams::degrees(2, 3, 2), Selection::All).unwrap();
        assert_eq!(r.get("gabrielov"), Some(&rat(2696)));
        assert_eq!(r.get("single_point_sum"), Some(&rat(76)));
        assert_eq!(r.get("single_point_weak"), Some(&rat(128)));
        assert!(r.get("gr").is_none());

        let r = compare_report(&BoundParams::degrees(3, 3, 2), Selection::Gr).unwrap();
        assert_eq!(r.get("gr"), Some(&rat(99)));
        assert_eq!(r.get("gr_improved"), Some(&rat(87)));
        assert_eq!(r.entries.len(), 2);

        let mut p = BoundParams::degrees(2, 3, 2);
        p.poly_polytope = Some(LatticePolytope::dilated_simplex(2, 3));
        p.field_polytope = Some(LatticePolytope::standard_simplex(2));
        let r = compare_report(&p, Selection::All).unwrap();
        assert_eq!(r.get("mc_polytope_sum[0]"), Some(&rat(34)));
        assert_eq!(r.get("mc_polytope_sum[1]"), Some(&rat(3)));
        assert_eq!(r.get("mc_degree[0]"), Some(&rat(64)));
        assert_eq!(r.get("mc_degree[1]"), Some(&rat(12)));
        assert!(r.comparisons.iter().all(|c| c.holds));
        assert!(r.to_table().contains("2696"));
        assert!(r.to_csv().starts_with("name,value,formula"));
    }
}
