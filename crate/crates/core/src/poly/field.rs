use num_rational::BigRational;
use num_traits::Zero;

use super::polynomial::{Exponent, Mode, Polynomial};
use crate::error::{Error, Result};
use crate::rational::RationalPoint;

/// Vector field `V = Σ Q_i ∂/∂x_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    n: usize,
    mode: Mode,
    components: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let first = components.first().ok_or_else(|| Error::invalid("vector field needs at least one component"))?;
        let (n, mode) = (first.n(), first.mode());
        if components.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: components.len() });
        }
        for q in &components {
            if q.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: q.n() });
            }
            if q.mode() != mode {
                return Err(Error::ModeMismatch);
            }
        }
        Ok(VectorField { n, mode, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    /// Maximum total degree of the components (0 for the zero field).
    pub fn degree(&self) -> i64 {
        self.components.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    /// Exponents `α − e_i` over the monomials `x^α` of each `Q_i`.
    pub fn shifted_support(&self) -> Vec<Exponent> {
        let mut out: Vec<Exponent> = Vec::new();
        for (i, q) in self.components.iter().enumerate() {
            for e in q.terms().keys() {
                let mut s = e.clone();
                s[i] -= 1;
                out.push(s);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Values `Q_i(at)`.
    pub fn evaluate(&self, at: &RationalPoint) -> Result<Vec<BigRational>> {
        self.components.iter().map(|q| q.evaluate(at)).collect()
    }

    /// True when every component vanishes at `at`.
    pub fn is_singular_at(&self, at: &RationalPoint) -> Result<bool> {
        Ok(self.evaluate(at)?.iter().all(Zero::is_zero))
    }

    /// `VP = Σ Q_i ∂P/∂x_i`.
    pub fn lie_derivative(&self, p: &Polynomial) -> Result<Polynomial> {
        self.check(p)?;
        self.apply_truncated(p, None)
    }

    /// Lie derivative with every term above total degree `max_degree` discarded.
    pub(crate) fn apply_truncated(&self, p: &Polynomial, max_degree: Option<i64>) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.n, p.mode());
        for (i, q) in self.components.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let dp = p.differentiate(i)?;
            if dp.is_zero() {
                continue;
            }
            out = &out + &q.mul_truncated(&dp, max_degree);
        }
        Ok(out)
    }

    /// `[P, VP, …, V^{r−1}P]`.
    pub fn derivative_chain(&self, p: &Polynomial, length: usize) -> Result<Vec<Polynomial>> {
        self.check(p)?;
        if length == 0 {
            return Err(Error::invalid("derivative chain length must be at least 1"));
        }
        let mut chain = Vec::with_capacity(length);
        chain.push(p.clone());
        while chain.len() < length {
            let next = self.lie_derivative(chain.last().expect("nonempty"))?;
            chain.push(next);
        }
        Ok(chain)
    }

    /// The field re-expanded about `center`: components `Q_i(center + y)`,
    /// truncated at `max_degree` when given.
    pub fn taylor_at(&self, center: &RationalPoint, max_degree: Option<i64>) -> Result<VectorField> {
        let comps = self
            .components
            .iter()
            .map(|q| q.taylor_at(center, max_degree))
            .collect::<Result<Vec<_>>>()?;
        VectorField::new(comps)
    }

    fn check(&self, p: &Polynomial) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: p.n() });
        }
        if p.mode() != self.mode {
            return Err(Error::ModeMismatch);
        }
        Ok(())
    }
}

impl std::fmt::Display for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|q| q.to_string()).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::rat;

    fn field(comps: &[&str], mode: Mode) -> VectorField {
        let n = comps.len();
        VectorField::new(comps.iter().map(|c| parse_poly(c, n, mode).unwrap()).collect()).unwrap()
    }

    fn p(text: &str, n: usize) -> Polynomial {
        parse_poly(text, n, Mode::Affine).unwrap()
    }

    #[test]
    fn coordinate_field_differentiates() {
        let v = field(&["1", "0"], Mode::Affine);
        let q = p("x1^3*x2 - 2*x1 + x2^2", 2);
        assert_eq!(v.lie_derivative(&q).unwrap(), q.differentiate(0).unwrap());
    }

    #[test]
    fn chain_of_shear_field() {
        let v = field(&["1", "x1"], Mode::Affine);
        assert_eq!(v.lie_derivative(&p("x2", 2)).unwrap(), p("x1", 2));
        let chain = v.derivative_chain(&p("x2", 2), 3).unwrap();
        assert_eq!(chain, vec![p("x2", 2), p("x1", 2), p("1", 2)]);
        let zeros = v.derivative_chain(&p("0", 2), 4).unwrap();
        assert!(zeros.iter().all(Polynomial::is_zero) && zeros.len() == 4);
    }

    #[test]
    fn eigenfunction_of_diagonal_field() {
        // r x ∂x + s y ∂y with (r, s) = (2, 3) and P = x^3 - y^2
        let v = field(&["2*x1", "3*x2"], Mode::Affine);
        let q = p("x1^3 - x2^2", 2);
        assert_eq!(v.lie_derivative(&q).unwrap(), q.scale(&rat(6)));
        let chain = v.derivative_chain(&q, 3).unwrap();
        assert_eq!(chain[2], q.scale(&rat(36)));
    }

    #[test]
    fn shifted_support_rule() {
        assert_eq!(field(&["1", "0"], Mode::Affine).shifted_support(), vec![vec![-1, 0]]);
        assert_eq!(field(&["x1^2", "x1*x2"], Mode::Affine).shifted_support(), vec![vec![1, 0]]);
        assert_eq!(field(&["5*x1", "7*x2"], Mode::Affine).shifted_support(), vec![vec![0, 0]]);
    }

    #[test]
    fn mismatches_are_rejected() {
        let v = field(&["1", "x1"], Mode::Affine);
        assert!(matches!(v.lie_derivative(&p("x1", 1)), Err(Error::DimensionMismatch { .. })));
        let t = parse_poly("x1", 2, Mode::Torus).unwrap();
        assert_eq!(v.lie_derivative(&t), Err(Error::ModeMismatch));
        assert!(VectorField::new(vec![p("1", 2)]).is_err());
    }

    #[test]
    fn singularity() {
        let v = field(&["x1", "x2"], Mode::Affine);
        assert!(v.is_singular_at(&RationalPoint::from_ints(&[0, 0])).unwrap());
        assert!(!v.is_singular_at(&RationalPoint::from_ints(&[0, 1])).unwrap());
    }
}
