use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lattice::LatticePolytope;
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial};

/// `vol(Σ_g m_g Δ_g)` for a weighted list of polytopes (not all weights zero).
fn volume_of_combination(parts: &[(&LatticePolytope, i64)]) -> Result<BigRational> {
    let mut acc: Option<LatticePolytope> = None;
    for (p, m) in parts {
        if *m == 0 {
            continue;
        }
        let scaled = p.dilate(*m)?;
        acc = Some(match acc {
            None => scaled,
            Some(a) => a.minkowski_sum(&scaled)?,
        });
    }
    Ok(acc.map(|p| p.volume()).unwrap_or_else(BigRational::zero))
}

/// Mixed volume, normalized so that `V(Δ,…,Δ) = vol(Δ)`:
/// `(1/n!) Σ_{∅≠S⊆[n]} (−1)^{n−|S|} vol(Σ_{i∈S} Δ_i)`.
///
/// Equal slots are grouped, so the sum runs over multiplicity vectors
/// weighted by products of binomials rather than over raw subsets.
pub fn mixed_volume(deltas: &[LatticePolytope]) -> Result<BigRational> {
    let n = deltas.first().map(LatticePolytope::ambient_dim).ok_or_else(|| Error::invalid("mixed volume needs n slots"))?;
    if deltas.len() != n {
        return Err(Error::invalid(format!("mixed volume in dimension {n} needs exactly {n} slots, got {}", deltas.len())));
    }
    if let Some(bad) = deltas.iter().find(|d| d.ambient_dim() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: bad.ambient_dim() });
    }
    let mut groups: Vec<(&LatticePolytope, usize)> = Vec::new();
    for d in deltas {
        match groups.iter_mut().find(|(g, _)| *g == d) {
            Some((_, m)) => *m += 1,
            None => groups.push((d, 1)),
        }
    }
    let mut total = BigRational::zero();
    let mut picks = vec![0usize; groups.len()];
    loop {
        // advance the odometer; all-zero is skipped
        let mut i = 0;
        while i < groups.len() && picks[i] == groups[i].1 {
            picks[i] = 0;
            i += 1;
        }
        if i == groups.len() {
            break;
        }
        picks[i] += 1;
        let size: usize = picks.iter().sum();
        let weight = picks
            .iter()
            .zip(&groups)
            .fold(BigInt::one(), |acc, (&a, (_, m))| acc * binomial(*m, a));
        let parts: Vec<(&LatticePolytope, i64)> = groups.iter().zip(&picks).map(|((g, _), &a)| (*g, a as i64)).collect();
        let vol = volume_of_combination(&parts)?;
        let term = vol * BigRational::from_integer(weight);
        if (n - size).is_multiple_of(2) {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total / BigRational::from_integer(factorial(n)))
}

/// `Q_j(Δ) = V(Δ, …, Δ, Δ_x, …, Δ_x)` with `j` copies of the standard simplex.
pub fn quermassintegral(delta: &LatticePolytope, j: usize) -> Result<BigRational> {
    let n = delta.ambient_dim();
    if j > n {
        return Err(Error::invalid(format!("quermassintegral index {j} exceeds dimension {n}")));
    }
    let simplex = LatticePolytope::standard_simplex(n);
    let mut slots = vec![delta.clone(); n - j];
    slots.extend(std::iter::repeat_n(simplex, j));
    mixed_volume(&slots)
}

/// Generic number of torus solutions `n!·V(Δ_1, …, Δ_n)`.
pub fn bk_count(deltas: &[LatticePolytope]) -> Result<BigInt> {
    let v = mixed_volume(deltas)?;
    let mu = v * BigRational::from_integer(factorial(deltas.len()));
    assert!(mu.is_integer(), "n!·V must be an integer on lattice polytopes, got {mu}");
    Ok(mu.to_integer())
}
