#![allow(dead_code)]

use multlab::poly::Exponent;
use multlab::{Mode, Polynomial, RationalPoint, VectorField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Random affine polynomial in `n` variables of degree `≤ deg`.
pub fn poly(n: usize, deg: i64) -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(0..=deg, n), -4i64..=4).prop_filter("degree", move |(e, _)| e.iter().sum::<i64>() <= deg);
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        let mut p = Polynomial::zero(n, Mode::Affine);
        for (e, c) in terms {
            p = &p + &Polynomial::monomial(n, Mode::Affine, e, q(c)).unwrap();
        }
        p
    })
}

pub fn nonzero_poly(n: usize, deg: i64) -> impl Strategy<Value = Polynomial> {
    poly(n, deg).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn field(n: usize, deg: i64) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(poly(n, deg), n).prop_map(|c| VectorField::new(c).unwrap())
}

pub fn point(n: usize) -> impl Strategy<Value = RationalPoint> {
    prop::collection::vec((-3i64..=3, 1i64..=3), n).prop_map(|c| RationalPoint::new(c.into_iter().map(|(a, b)| qq(a, b)).collect()))
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=4).prop_map(|(a, b)| qq(a, b))
}

pub fn lattice_points(n: usize, max: i64, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..=max, n), count)
}

/// `P(x + c)` by expanding each monomial as a product of binomials.
pub fn shift_poly(p: &Polynomial, c: &[BigRational]) -> Polynomial {
    let n = p.n();
    let mut out = Polynomial::zero(n, Mode::Affine);
    for (e, coeff) in p.terms() {
        let mut term = Polynomial::constant(n, Mode::Affine, coeff.clone());
        for (i, &k) in e.iter().enumerate() {
            let lin = &Polynomial::var(n, Mode::Affine, i).unwrap() + &Polynomial::constant(n, Mode::Affine, c[i].clone());
            for _ in 0..k {
                term = &term * &lin;
            }
        }
        out = &out + &term;
    }
    out
}

/// Least `r ≤ cutoff` with `(V^r P)(at) ≠ 0`, by the untruncated chain.
pub fn naive_order(v: &VectorField, p: &Polynomial, at: &RationalPoint, cutoff: usize) -> Option<usize> {
    let mut cur = p.clone();
    for r in 0..=cutoff {
        if !cur.evaluate(at).unwrap().is_zero() {
            return Some(r);
        }
        cur = v.lie_derivative(&cur).unwrap();
    }
    None
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Planar convex hull (monotone chain), counter-clockwise, collinear points dropped.
pub fn planar_hull(points: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<i64>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<i64>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Shoelace area of the planar hull.
pub fn shoelace(points: &[Vec<i64>]) -> BigRational {
    let h = planar_hull(points);
    if h.len() < 3 {
        return BigRational::zero();
    }
    let mut twice = 0i64;
    for i in 0..h.len() {
        let (a, b) = (&h[i], &h[(i + 1) % h.len()]);
        twice += a[0] * b[1] - a[1] * b[0];
    }
    qq(twice.abs(), 2)
}

pub fn minkowski_points(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.iter().zip(y).map(|(s, t)| s + t).collect())).collect()
}

/// `m·Δ_x` as its vertex list.
pub fn simplex_vertices(n: usize, m: i64) -> Vec<Exponent> {
    let mut v = vec![vec![0; n]];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = m;
        v.push(e);
    }
    v
}

pub fn factorial(n: usize) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * q(k))
}
