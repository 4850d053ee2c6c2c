//! Exact Gaussian elimination over the rationals and fraction-free
//! determinants over the integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Row = Vec<BigRational>;

/// Incrementally maintained echelon basis of a row space.
#[derive(Debug, Clone, Default)]
pub struct RowBasis {
    rows: Vec<(usize, Row)>,
}

impl RowBasis {
    pub fn new() -> Self {
        RowBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `row` after elimination against the basis.
    pub fn reduce(&self, row: &[BigRational]) -> Row {
        let mut r = row.to_vec();
        for (pivot, b) in &self.rows {
            if r[*pivot].is_zero() {
                continue;
            }
            let f = r[*pivot].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        r
    }

    pub fn contains(&self, row: &[BigRational]) -> bool {
        self.reduce(row).iter().all(Zero::is_zero)
    }

    /// Adds `row` if it is independent of the basis; reports whether it was.
    pub fn insert(&mut self, row: &[BigRational]) -> bool {
        let mut r = self.reduce(row);
        let Some(pivot) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pivot].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // keep the basis fully reduced so `reduce` is a single pass
        for (_, b) in self.rows.iter_mut() {
            if b[pivot].is_zero() {
                continue;
            }
            let f = b[pivot].clone();
            for (x, y) in b.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((pivot, r));
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Row> {
        self.rows.iter().map(|(_, r)| r)
    }
}

pub fn rank(rows: &[Row]) -> usize {
    let mut b = RowBasis::new();
    for r in rows {
        b.insert(r);
    }
    b.rank()
}

/// Indices of the rows that raise the rank, scanning in input order.
pub fn independent_rows(rows: &[Row]) -> Vec<usize> {
    let mut b = RowBasis::new();
    rows.iter().enumerate().filter(|(_, r)| b.insert(r)).map(|(i, _)| i).collect()
}

/// Basis of `{x : M x = 0}` for a matrix with `ncols` columns.
pub fn kernel(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut b = RowBasis::new();
    for r in rows {
        b.insert(r);
    }
    let pivots = b.pivots();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (p, row) in b.rows.iter() {
            v[*p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

pub fn mat_vec(rows: &[Row], v: &[BigRational]) -> Row {
    rows.iter()
        .map(|r| r.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Determinant of a square integer matrix (Bareiss elimination).
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}
