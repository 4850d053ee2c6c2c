//! Exact convex hulls of lattice point sets.
//!
//! Points are sorted lexicographically and inserted one at a time
//! (beneath–beyond). The boundary is kept as a list of simplicial facets
//! with integer outward normals; every insertion cones the new point over
//! the strictly visible facets, which yields a placing triangulation and
//! hence the exact volume. Lower-dimensional sets are handled by projecting
//! onto a coordinate subspace that is injective on their affine hull.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::{det_int, kernel, primitive_integer, RowBasis};
use crate::rational::{factorial, rat};

#[derive(Debug, Clone)]
struct Facet {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
}

#[derive(Debug, Clone)]
pub(crate) struct Hull {
    ambient: usize,
    origin: Vec<i64>,
    dim: usize,
    coords: Vec<usize>,
    equations: Vec<Vec<BigInt>>,
    facets: Vec<Facet>,
    vertices: Vec<Vec<i64>>,
    /// `dim! ·` (volume of the projected hull).
    scaled_volume: BigInt,
}

fn dot_i64(a: &[BigInt], y: &[i64]) -> BigInt {
    a.iter().zip(y).fold(BigInt::zero(), |acc, (x, &v)| acc + x * BigInt::from(v))
}

fn simplex_det(pts: &[Vec<i64>], verts: &[usize], apex: usize) -> BigInt {
    let base = &pts[apex];
    let rows: Vec<Vec<BigInt>> = verts
        .iter()
        .map(|&v| pts[v].iter().zip(base).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    det_int(&rows)
}

/// Normal of the hyperplane through `d` points of `Z^d`, oriented away from
/// `inside / scale`.
fn facet_through(pts: &[Vec<i64>], verts: Vec<usize>, inside: &[BigInt], scale: i64) -> Facet {
    let d = pts[0].len();
    let v0 = &pts[verts[0]];
    let diffs: Vec<Vec<BigInt>> = verts[1..]
        .iter()
        .map(|&v| pts[v].iter().zip(v0).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    let mut normal = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<BigInt>> = diffs
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let cof = det_int(&minor);
        normal.push(if j % 2 == 0 { cof } else { -cof });
    }
    let mut offset = dot_i64(&normal, v0);
    let side = normal.iter().zip(inside).fold(BigInt::zero(), |acc, (a, b)| acc + a * b) - &offset * BigInt::from(scale);
    debug_assert!(!side.is_zero(), "interior reference point lies on a facet hyperplane");
    if side.is_positive() {
        normal.iter_mut().for_each(|x| *x = -x.clone());
        offset = -offset;
    }
    Facet { verts, normal, offset }
}

impl Hull {
    /// Hull of a nonempty set of points of `Z^n`.
    pub(crate) fn new(n: usize, points: &[Vec<i64>]) -> Hull {
        let mut pts: Vec<Vec<i64>> = points.to_vec();
        pts.sort();
        pts.dedup();
        assert!(!pts.is_empty(), "hull of an empty set");
        let origin = pts[0].clone();

        let mut basis = RowBasis::new();
        let mut simplex = vec![0usize];
        for (k, p) in pts.iter().enumerate().skip(1) {
            let row: Vec<BigRational> = p.iter().zip(&origin).map(|(a, b)| rat(a - b)).collect();
            if basis.insert(&row) {
                simplex.push(k);
            }
        }
        let dim = basis.rank();
        let mut coords = basis.pivots();
        coords.sort();
        let dir_rows: Vec<Vec<BigRational>> = basis.rows().cloned().collect();
        let equations: Vec<Vec<BigInt>> = if dim == n {
            Vec::new()
        } else if dim == 0 {
            (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect()
        } else {
            kernel(&dir_rows, n).iter().map(|w| primitive_integer(w)).collect()
        };

        let mut hull = Hull {
            ambient: n,
            origin,
            dim,
            coords,
            equations,
            facets: Vec::new(),
            vertices: Vec::new(),
            scaled_volume: BigInt::zero(),
        };
        if dim == 0 {
            hull.vertices = vec![pts[0].clone()];
            return hull;
        }

        let proj: Vec<Vec<i64>> = pts.iter().map(|p| hull.project(p)).collect();
        let inside: Vec<BigInt> = (0..dim)
            .map(|j| simplex.iter().map(|&s| BigInt::from(proj[s][j])).sum())
            .collect();
        let scale = (dim + 1) as i64;

        let mut facets: Vec<Facet> = (0..=dim)
            .map(|skip| {
                let verts: Vec<usize> = simplex.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                facet_through(&proj, verts, &inside, scale)
            })
            .collect();
        let mut volume = simplex_det(&proj, &simplex[1..], simplex[0]).abs();

        let in_simplex: Vec<bool> = {
            let mut f = vec![false; proj.len()];
            simplex.iter().for_each(|&s| f[s] = true);
            f
        };
        for k in 0..proj.len() {
            if in_simplex[k] {
                continue;
            }
            let y = &proj[k];
            let (visible, kept): (Vec<Facet>, Vec<Facet>) =
                facets.into_iter().partition(|f| dot_i64(&f.normal, y) > f.offset);
            facets = kept;
            if visible.is_empty() {
                continue;
            }
            let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
            for f in &visible {
                volume += simplex_det(&proj, &f.verts, k).abs();
                for skip in 0..f.verts.len() {
                    let mut r = f.verts.clone();
                    r.remove(skip);
                    *ridges.entry(r).or_insert(0) += 1;
                }
            }
            let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
            horizon.sort();
            for mut r in horizon {
                r.push(k);
                r.sort();
                facets.push(facet_through(&proj, r, &inside, scale));
            }
        }

        // extreme points: incident facet normals span the whole space
        let mut incident: HashMap<usize, RowBasis> = HashMap::new();
        for f in &facets {
            let row: Vec<BigRational> = f.normal.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            for &v in &f.verts {
                incident.entry(v).or_default().insert(&row);
            }
        }
        let mut vertices: Vec<Vec<i64>> =
            incident.into_iter().filter(|(_, b)| b.rank() == dim).map(|(v, _)| pts[v].clone()).collect();
        vertices.sort();

        hull.facets = facets;
        hull.vertices = vertices;
        hull.scaled_volume = volume;
        hull
    }

    fn project(&self, p: &[i64]) -> Vec<i64> {
        self.coords.iter().map(|&c| p[c]).collect()
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    pub(crate) fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Euclidean `n`-volume; zero for lower-dimensional hulls.
    pub(crate) fn volume(&self) -> BigRational {
        if self.dim < self.ambient {
            return BigRational::zero();
        }
        BigRational::new(self.scaled_volume.clone(), factorial(self.ambient))
    }

    pub(crate) fn contains(&self, p: &[i64]) -> bool {
        let rel: Vec<i64> = p.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        if self.equations.iter().any(|w| !dot_i64(w, &rel).is_zero()) {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        let y = self.project(p);
        self.facets.iter().all(|f| dot_i64(&f.normal, &y) <= f.offset)
    }
}
