//! Evaluation matrices, finite witness sets for semicontinuous bounds, and
//! `degf` for cycles made of points and hypersurfaces.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{independent_rows, Row};
use crate::poly::{Exponent, Mode, Polynomial};
use crate::rational::RationalPoint;

/// Exponents of total degree `k` in `n` variables, descending lex.
fn monomials_of_degree(n: usize, k: i64) -> Vec<Exponent> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials_of_degree(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All exponents of total degree `≤ d`: graded, descending lex within a degree.
pub fn graded_monomials(n: usize, d: u32) -> Vec<Exponent> {
    (0..=d as i64).flat_map(|k| monomials_of_degree(n, k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationMatrix {
    points: Vec<RationalPoint>,
    degree_bound: u32,
    monomials: Vec<Exponent>,
    entries: Vec<Row>,
}

impl EvaluationMatrix {
    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn monomials(&self) -> &[Exponent] {
        &self.monomials
    }

    pub fn entries(&self) -> &[Row] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        crate::linalg::rank(&self.entries)
    }

    /// Right kernel, each vector read as a polynomial of degree `≤ D`.
    pub fn kernel_polynomials(&self, n: usize) -> Vec<Polynomial> {
        crate::linalg::kernel(&self.entries, self.monomials.len())
            .into_iter()
            .map(|v| {
                let terms = self.monomials.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero());
                Polynomial::from_terms(n, Mode::Affine, terms).expect("nonnegative exponents")
            })
            .collect()
    }
}

fn monomial_value(e: &[i64], at: &RationalPoint) -> BigRational {
    let mut v = BigRational::one();
    for (x, &k) in at.coords().iter().zip(e) {
        v *= num_traits::pow(x.clone(), k as usize);
    }
    v
}

pub fn evaluation_matrix(points: &[RationalPoint], n: usize, d: u32) -> Result<EvaluationMatrix> {
    for p in points {
        if p.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.dim() });
        }
    }
    let monomials = graded_monomials(n, d);
    let entries = points.iter().map(|p| monomials.iter().map(|e| monomial_value(e, p)).collect()).collect();
    Ok(EvaluationMatrix { points: points.to_vec(), degree_bound: d, monomials, entries })
}

/// Earliest rows (in input order) spanning the row space of the evaluation matrix.
pub fn witness_set(points: &[RationalPoint], n: usize, d: u32) -> Result<Vec<RationalPoint>> {
    let m = evaluation_matrix(points, n, d)?;
    Ok(independent_rows(&m.entries).into_iter().map(|i| points[i].clone()).collect())
}

/// Union of per-level witness sets, in order of first appearance.
pub fn witness_family(levels: &BTreeMap<i64, Vec<RationalPoint>>, n: usize, d: u32) -> Result<Vec<RationalPoint>> {
    let mut out: Vec<RationalPoint> = Vec::new();
    for pts in levels.values() {
        for p in witness_set(pts, n, d)? {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Variety {
    Point(RationalPoint),
    /// Zero set of a nonconstant polynomial.
    Hypersurface(Polynomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleComponent {
    variety: Variety,
    coeff: u64,
}

impl CycleComponent {
    pub fn point(at: RationalPoint, coeff: u64) -> Result<Self> {
        Self::new(Variety::Point(at), coeff)
    }

    pub fn hypersurface(f: Polynomial, coeff: u64) -> Result<Self> {
        Self::new(Variety::Hypersurface(f), coeff)
    }

    pub fn new(variety: Variety, coeff: u64) -> Result<Self> {
        if coeff == 0 {
            return Err(Error::invalid("cycle coefficients must be positive"));
        }
        if let Variety::Hypersurface(f) = &variety {
            if f.mode() != Mode::Affine {
                return Err(Error::invalid("hypersurfaces must be given by affine polynomials"));
            }
            if f.total_degree().unwrap_or(0) < 1 {
                return Err(Error::invalid("a hypersurface needs a nonconstant defining polynomial"));
            }
        }
        Ok(CycleComponent { variety, coeff })
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn coeff(&self) -> u64 {
        self.coeff
    }

    fn ambient(&self) -> usize {
        match &self.variety {
            Variety::Point(p) => p.dim(),
            Variety::Hypersurface(f) => f.n(),
        }
    }

    pub fn degree(&self) -> u64 {
        match &self.variety {
            Variety::Point(_) => 1,
            Variety::Hypersurface(f) => f.total_degree().unwrap_or(0) as u64,
        }
    }

    pub fn dimension(&self) -> usize {
        match &self.variety {
            Variety::Point(_) => 0,
            Variety::Hypersurface(f) => f.n() - 1,
        }
    }

    pub fn contains(&self, at: &RationalPoint) -> Result<bool> {
        match &self.variety {
            Variety::Point(p) => Ok(p == at),
            Variety::Hypersurface(f) => Ok(f.evaluate(at)?.is_zero()),
        }
    }
}

/// A formal sum `Σ n_i [V_i]` with positive coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    n: usize,
    components: Vec<CycleComponent>,
}

impl Cycle {
    pub fn new(n: usize, components: Vec<CycleComponent>) -> Result<Self> {
        for c in &components {
            if c.ambient() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.ambient() });
            }
        }
        Ok(Cycle { n, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[CycleComponent] {
        &self.components
    }

    pub fn concat(&self, other: &Cycle) -> Result<Cycle> {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        Cycle::new(self.n, components)
    }
}

/// `Σ coeff·deg` over the components through `at`.
pub fn degf_eval(c: &Cycle, at: &RationalPoint) -> Result<u64> {
    if at.dim() != c.n {
        return Err(Error::DimensionMismatch { expected: c.n, found: at.dim() });
    }
    let mut total = 0;
    for comp in &c.components {
        if comp.contains(at)? {
            total += comp.coeff * comp.degree();
        }
    }
    Ok(total)
}
