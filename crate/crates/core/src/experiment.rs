//! Seeded randomized soundness runs: both oracles against the degree bounds.

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{gabrielov_bound, single_point_bound};
use crate::error::{Error, Result};
use crate::io::FieldFile;
use crate::multiplicity::{multiplicity, multiplicity_via_series, Cutoff, MultiplicityResult};
use crate::poly::{parse_poly, Mode, Polynomial, VectorField};
use crate::rational::{factorial, RationalPoint};
use crate::witness::graded_monomials;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub max_degree: u32,
    pub max_field_degree: u32,
    pub trials: u64,
    pub seed: u64,
    /// Coefficients are drawn from `[−coeff_range, coeff_range] \ {0}`.
    pub coeff_range: i64,
    /// Probability that a given monomial appears.
    pub density: f64,
    pub cutoff: u64,
    pub series_order: usize,
    /// When nonempty, trial `t` forces multiplicity at least `target_orders[t % len]`.
    pub target_orders: Vec<u64>,
    pub max_retries: u32,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            n: 2,
            max_degree: 3,
            max_field_degree: 2,
            trials: 100,
            seed: 1,
            coeff_range: 3,
            density: 0.5,
            cutoff: 30,
            series_order: 30,
            target_orders: Vec::new(),
            max_retries: 100,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.max_degree == 0 || self.coeff_range <= 0 || self.series_order == 0 {
            return Err(Error::invalid("n, max_degree, coeff_range and series_order must be positive"));
        }
        if !(self.density > 0.0 && self.density <= 1.0) {
            return Err(Error::invalid("density must lie in (0, 1]"));
        }
        Ok(())
    }
}

/// One generated problem, in a form that can be written out and replayed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub trial: u64,
    pub point: RationalPoint,
    pub poly: String,
    pub field: FieldFile,
}

impl Instance {
    pub fn decode(&self) -> Result<(VectorField, Polynomial, RationalPoint)> {
        let v = self.field.to_field()?;
        let p = parse_poly(&self.poly, v.n(), v.mode())?;
        Ok((v, p, self.point.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Replay {
    pub config: ExperimentConfig,
    pub instance: Instance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub trial: u64,
    pub n: usize,
    pub d: u64,
    pub delta: u64,
    pub point: String,
    pub poly: String,
    pub field: String,
    pub mult_chain: String,
    pub mult_series: String,
    pub single_point_bound: String,
    pub gabrielov_bound: String,
    pub oracles_agree: bool,
    pub pass: bool,
}

fn rng_for(config: &ExperimentConfig, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial);
    rng
}

fn random_coeff(rng: &mut ChaCha8Rng, range: i64) -> BigRational {
    let c = rng.gen_range(1..=range);
    BigRational::from_integer(if rng.gen_bool(0.5) { c } else { -c }.into())
}

fn random_poly(rng: &mut ChaCha8Rng, config: &ExperimentConfig, degree: u32) -> Polynomial {
    let mut terms = Vec::new();
    for e in graded_monomials(config.n, degree) {
        if rng.gen_bool(config.density) {
            terms.push((e, random_coeff(rng, config.coeff_range)));
        }
    }
    Polynomial::from_terms(config.n, Mode::Affine, terms).expect("nonnegative exponents")
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> RationalPoint {
    RationalPoint::new(
        (0..n)
            .map(|_| {
                let num: i64 = rng.gen_range(-3..=3);
                let den: i64 = rng.gen_range(1..=3);
                BigRational::new(num.into(), den.into())
            })
            .collect(),
    )
}

/// Subtracts `c_j ℓ^j` for `j < target`, `ℓ = x_i − p_i` with `Q_i(p) ≠ 0`,
/// so that `(V^j P)(p) = 0` for all `j < target`.
fn force_order(v: &VectorField, p: &Polynomial, at: &RationalPoint, target: u64) -> Result<Polynomial> {
    let q = v.evaluate(at)?;
    let i = q.iter().position(|c| !c.is_zero()).ok_or(Error::SingularPoint)?;
    let n = v.n();
    let ell = &Polynomial::var(n, Mode::Affine, i)? - &Polynomial::constant(n, Mode::Affine, at.coords()[i].clone());
    let mut p = p.clone();
    for j in 1..target {
        let mut vj = p.clone();
        for _ in 0..j {
            vj = v.lie_derivative(&vj)?;
        }
        let value = vj.evaluate(at)?;
        if value.is_zero() {
            continue;
        }
        let denom = BigRational::from_integer(factorial(j as usize)) * num_traits::pow(q[i].clone(), j as usize);
        p = &p - &ell.pow(j as u32).scale(&(value / denom));
    }
    Ok(p)
}

pub fn generate(config: &ExperimentConfig, trial: u64) -> Result<Instance> {
    config.validate()?;
    let mut rng = rng_for(config, trial);
    let n = config.n;
    let at = random_point(&mut rng, n);

    let mut field = None;
    for _ in 0..config.max_retries {
        let comps: Vec<_> = (0..n).map(|_| random_poly(&mut rng, config, config.max_field_degree)).collect();
        let v = VectorField::new(comps)?;
        if !v.is_singular_at(&at)? {
            field = Some(v);
            break;
        }
    }
    let v = field.ok_or_else(|| Error::Generation(format!("no field non-singular at {at} after {} tries", config.max_retries)))?;

    let mut poly = None;
    for _ in 0..config.max_retries {
        let raw = random_poly(&mut rng, config, config.max_degree);
        let p = &raw - &Polynomial::constant(n, Mode::Affine, raw.evaluate(&at)?);
        if p.total_degree().unwrap_or(0) >= 1 {
            poly = Some(p);
            break;
        }
    }
    let mut p = poly.ok_or_else(|| Error::Generation(format!("no nonconstant polynomial after {} tries", config.max_retries)))?;
    if !config.target_orders.is_empty() {
        let target = config.target_orders[(trial % config.target_orders.len() as u64) as usize];
        p = force_order(&v, &p, &at, target)?;
        if p.is_zero() {
            p = Polynomial::var(n, Mode::Affine, 0)?;
            p = &p - &Polynomial::constant(n, Mode::Affine, at.coords()[0].clone());
        }
    }
    Ok(Instance { trial, point: at, poly: p.to_string(), field: FieldFile::from_field(&v) })
}

fn describe(r: &MultiplicityResult) -> String {
    match r.order() {
        Some(k) => k.to_string(),
        None => "inconclusive".into(),
    }
}

pub fn run_instance(config: &ExperimentConfig, inst: &Instance) -> Result<Row> {
    let (v, p, at) = inst.decode()?;
    let n = v.n();
    let d = p.total_degree().unwrap_or(0).max(1) as u64;
    let delta = v.degree().max(1) as u64;
    let chain = multiplicity(&v, &p, &at, Cutoff::Fixed(config.cutoff))?;
    let series = multiplicity_via_series(&v, &p, &at, config.series_order)?;
    let sum = single_point_bound(n, d, delta)?;
    let gab = gabrielov_bound(n, d, delta)?;
    let agree = chain.order() == series.order();
    let sound = chain.order().is_none_or(|r| {
        let r = num_bigint::BigInt::from(r);
        r <= sum && r <= gab
    });
    Ok(Row {
        trial: inst.trial,
        n,
        d,
        delta,
        point: at.to_string(),
        poly: inst.poly.clone(),
        field: inst.field.components.join("; "),
        mult_chain: describe(&chain),
        mult_series: describe(&series),
        single_point_bound: sum.to_string(),
        gabrielov_bound: gab.to_string(),
        oracles_agree: agree,
        pass: agree && sound,
    })
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub rows: Vec<Row>,
    pub violations: Vec<Replay>,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for trial in 0..config.trials {
        let inst = generate(config, trial)?;
        let row = run_instance(config, &inst)?;
        if !row.pass {
            violations.push(Replay { config: config.clone(), instance: inst });
        }
        rows.push(row);
    }
    Ok(ExperimentReport { rows, violations })
}

/// Header plus one line per row; no rows gives an empty string.
pub fn rows_to_csv(rows: &[Row]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 csv")
}

/// Replaces the seed with `MULTLAB_SEED` when that variable holds an integer.
pub fn apply_seed_override(config: &mut ExperimentConfig) -> Result<()> {
    if let Ok(s) = std::env::var("MULTLAB_SEED") {
        config.seed = s.trim().parse().map_err(|_| Error::invalid(format!("MULTLAB_SEED={s:?} is not an integer")))?;
    }
    Ok(())
}
