use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::hull::Hull;
use crate::error::{Error, Result};
use crate::poly::{Polynomial, VectorField};

/// Convex hull of a finite nonempty set of integer points.
///
/// Two polytopes are equal when their vertex sets agree; the generators are
/// kept only for provenance.
#[derive(Clone)]
pub struct LatticePolytope {
    n: usize,
    generators: Vec<Vec<i64>>,
    hull: Arc<Hull>,
}

impl LatticePolytope {
    pub fn from_points(n: usize, points: Vec<Vec<i64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport("polytope needs at least one point"));
        }
        if let Some(bad) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
        }
        let hull = Arc::new(Hull::new(n, &points));
        Ok(LatticePolytope { n, generators: points, hull })
    }

    /// `Δ(P)`, the hull of the support.
    pub fn newton(p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::EmptySupport("zero polynomial"));
        }
        LatticePolytope::from_points(p.n(), p.support())
    }

    /// `Δ(V)`: each monomial `x^α ∂/∂x_i` contributes the point `α − e_i`.
    pub fn of_field(v: &VectorField) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::EmptySupport("zero vector field"));
        }
        LatticePolytope::from_points(v.n(), v.shifted_support())
    }

    /// `Δ_x = conv{0, e_1, …, e_n}`.
    pub fn standard_simplex(n: usize) -> Self {
        LatticePolytope::dilated_simplex(n, 1)
    }

    /// `m·Δ_x`.
    pub fn dilated_simplex(n: usize, m: i64) -> Self {
        let mut pts = vec![vec![0; n]];
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = m;
            pts.push(e);
        }
        LatticePolytope::from_points(n, pts).expect("simplex generators are well formed")
    }

    pub fn point(p: Vec<i64>) -> Self {
        let n = p.len();
        LatticePolytope::from_points(n, vec![p]).expect("single point")
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.hull.dim()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Extreme points, in lexicographic order.
    pub fn vertices(&self) -> &[Vec<i64>] {
        self.hull.vertices()
    }

    /// Exact Euclidean `n`-volume (zero when not full-dimensional).
    pub fn volume(&self) -> BigRational {
        self.hull.volume()
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        p.len() == self.n && self.hull.contains(p)
    }

    /// Hull containment `other ⊆ self`.
    pub fn contains(&self, other: &LatticePolytope) -> bool {
        other.n == self.n && other.vertices().iter().all(|v| self.hull.contains(v))
    }

    fn same_dim(&self, other: &LatticePolytope) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn minkowski_sum(&self, other: &LatticePolytope) -> Result<Self> {
        self.same_dim(other)?;
        let mut pts = Vec::with_capacity(self.vertices().len() * other.vertices().len());
        for a in self.vertices() {
            for b in other.vertices() {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        LatticePolytope::from_points(self.n, pts)
    }

    /// `m·Δ`; `dilate(0)` is the origin.
    pub fn dilate(&self, m: i64) -> Result<Self> {
        if m < 0 {
            return Err(Error::invalid("dilation factor must be nonnegative"));
        }
        let pts = self.vertices().iter().map(|v| v.iter().map(|x| x * m).collect()).collect();
        LatticePolytope::from_points(self.n, pts)
    }

    pub fn translate(&self, t: &[i64]) -> Result<Self> {
        if t.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: t.len() });
        }
        let pts = self.vertices().iter().map(|v| v.iter().zip(t).map(|(x, y)| x + y).collect()).collect();
        LatticePolytope::from_points(self.n, pts)
    }

    /// Restriction to the coordinates `coords` (used for split instances).
    pub fn project(&self, coords: &[usize]) -> Result<Self> {
        let pts = self.vertices().iter().map(|v| coords.iter().map(|&c| v[c]).collect()).collect();
        LatticePolytope::from_points(coords.len(), pts)
    }

    pub fn in_nonnegative_orthant(&self) -> bool {
        self.vertices().iter().all(|v| v.iter().all(|&x| x >= 0))
    }

    /// Lattice points of the bounding box of the hull.
    fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let lo = (0..self.n).map(|i| self.vertices().iter().map(|v| v[i]).min().expect("nonempty")).collect();
        let hi = (0..self.n).map(|i| self.vertices().iter().map(|v| v[i]).max().expect("nonempty")).collect();
        (lo, hi)
    }

    /// All lattice points in the polytope, lexicographically ordered.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let (lo, hi) = self.bounding_box();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.hull.contains(&cur) {
                out.push(cur.clone());
            }
            let mut i = self.n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    cur[i + 1..].copy_from_slice(&lo[i + 1..]);
                    break;
                }
            }
        }
    }

    /// Convex co-ideal test: the polytope lies in the nonnegative orthant and
    /// is closed under decreasing coordinates. Checking that every vertex with
    /// any subset of coordinates zeroed stays inside is sufficient.
    pub fn is_convex_coideal(&self) -> bool {
        if !self.in_nonnegative_orthant() {
            return false;
        }
        self.vertices().iter().all(|v| {
            let support: Vec<usize> = (0..self.n).filter(|&i| v[i] != 0).collect();
            (0u64..(1u64 << support.len())).all(|mask| {
                let mut w = v.clone();
                for (bit, &i) in support.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        w[i] = 0;
                    }
                }
                self.hull.contains(&w)
            })
        })
    }

    /// A lattice vector `t` with `t + m·Δ_x ⊆ self`, if one exists.
    pub fn lattice_translate_of_dilated_simplex(&self, m: i64) -> Option<Vec<i64>> {
        let simplex = LatticePolytope::dilated_simplex(self.n, m);
        self.lattice_points().into_iter().find(|t| {
            simplex.vertices().iter().all(|v| {
                let w: Vec<i64> = v.iter().zip(t).map(|(a, b)| a + b).collect();
                self.hull.contains(&w)
            })
        })
    }
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.vertices() == other.vertices()
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LatticePolytope").field("n", &self.n).field("vertices", &self.vertices()).finish()
    }
}
