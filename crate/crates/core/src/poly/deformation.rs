use num_rational::BigRational;
use num_traits::Zero;

use super::polynomial::{Mode, Polynomial};
use crate::error::{Error, Result};

/// The family `P + e·(c_0 + c_1 ℓ + … + c_{n−1} ℓ^{n−1})` for an affine-linear pivot `ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    base: Polynomial,
    pivot: Polynomial,
    coefficients: Vec<BigRational>,
    perturbation: Polynomial,
}

/// Exactly `n` coefficients, paired with the powers `ℓ^0..ℓ^{n−1}`.
pub fn make_deformation(p: &Polynomial, pivot: &Polynomial, coeffs: &[BigRational]) -> Result<Deformation> {
    p.check_compatible(pivot)?;
    if pivot.has_negative_exponents() || pivot.total_degree().unwrap_or(0) > 1 {
        return Err(Error::invalid("pivot must be an affine-linear form"));
    }
    if coeffs.len() != p.n() {
        return Err(Error::invalid(format!("expected {} deformation coefficients, got {}", p.n(), coeffs.len())));
    }
    let mut perturbation = Polynomial::zero(p.n(), p.mode());
    let mut power = Polynomial::one(p.n(), p.mode());
    for c in coeffs {
        perturbation = &perturbation + &power.scale(c);
        power = &power * pivot;
    }
    Ok(Deformation { base: p.clone(), pivot: pivot.clone(), coefficients: coeffs.to_vec(), perturbation })
}

impl Deformation {
    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    pub fn pivot(&self) -> &Polynomial {
        &self.pivot
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// `Σ_j c_j ℓ^j`.
    pub fn perturbation(&self) -> &Polynomial {
        &self.perturbation
    }

    /// The member of the family at parameter value `e`.
    pub fn at(&self, e: &BigRational) -> Polynomial {
        if e.is_zero() {
            return self.base.clone();
        }
        &self.base + &self.perturbation.scale(e)
    }

    /// The whole family as one polynomial in `n + 1` variables, `e` last.
    pub fn family(&self) -> Polynomial {
        let n = self.base.n();
        let mode = self.base.mode();
        let mut terms = Vec::new();
        for (p, e_power) in [(&self.base, 0), (&self.perturbation, 1)] {
            for (ex, c) in p.terms() {
                let mut ex = ex.clone();
                ex.push(e_power);
                terms.push((ex, c.clone()));
            }
        }
        Polynomial::from_terms(n + 1, mode, terms).expect("lifted terms are well formed")
    }

    pub fn mode(&self) -> Mode {
        self.base.mode()
    }
}
