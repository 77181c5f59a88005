//! Truncated power series in `t` with polynomial coefficients.

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{int, Polynomial, Var};
use crate::error::{ParkError, Result};

/// `sum_{k=0}^{order} coeffs[k] t^k`, all arithmetic truncated at `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Polynomial>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![Polynomial::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Polynomial::one())
    }

    pub fn constant(order: usize, c: Polynomial) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Polynomial::one();
        }
        s
    }

    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Polynomial>) -> Self {
        coeffs.resize(order + 1, Polynomial::zero());
        TruncatedSeries { order, coeffs }
    }

    /// Builds `sum a_k t^k / k!` from the EGF coefficients `a_k`.
    pub fn from_egf(order: usize, a: &[Polynomial]) -> Self {
        let mut fact = BigRational::from_integer(1.into());
        let coeffs = (0..=order)
            .map(|k| {
                if k > 0 {
                    fact *= int(k as i64);
                }
                a.get(k)
                    .map(|c| c.scale(&fact.recip()))
                    .unwrap_or_else(Polynomial::zero)
            })
            .collect();
        TruncatedSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &Polynomial {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// `k! [t^k]`, the EGF coefficients.
    pub fn egf_coeffs(&self) -> Vec<Polynomial> {
        let mut fact = BigRational::from_integer(1.into());
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= int(k as i64);
                }
                c.scale(&fact)
            })
            .collect()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        TruncatedSeries { order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect();
        TruncatedSeries { order, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs = vec![Polynomial::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { order, coeffs }
    }

    pub fn scale(&self, c: &Polynomial) -> Self {
        self.map_coeffs(|a| a * c)
    }

    /// Formal derivative; the top coefficient becomes zero.
    pub fn derivative(&self) -> Self {
        let mut coeffs: Vec<Polynomial> = (1..=self.order)
            .map(|k| self.coeffs[k].scale(&int(k as i64)))
            .collect();
        coeffs.push(Polynomial::zero());
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    /// `exp(s)`; needs a zero constant term.
    ///
    /// Uses `k f_k = sum_{j=1}^{k} j s_j f_{k-j}` from `f' = s' f`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(ParkError::Domain("exp needs a zero constant term".into()));
        }
        let n = self.order;
        let mut f = vec![Polynomial::zero(); n + 1];
        f[0] = Polynomial::one();
        for k in 1..=n {
            let mut acc = Polynomial::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += self.coeffs[j].scale(&int(j as i64)) * f[k - j].clone();
                }
            }
            f[k] = acc.scale(&int(k as i64).recip());
        }
        Ok(TruncatedSeries { order: n, coeffs: f })
    }

    /// `log(s)`; needs constant term exactly 1.
    ///
    /// Uses `k g_k = k s_k - sum_{j=1}^{k-1} j g_j s_{k-j}` from `s g' = s'`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != Polynomial::one() {
            return Err(ParkError::Domain("log needs constant term 1".into()));
        }
        let n = self.order;
        let mut g = vec![Polynomial::zero(); n + 1];
        for k in 1..=n {
            let mut acc = self.coeffs[k].scale(&int(k as i64));
            for (j, gj) in g.iter().enumerate().take(k).skip(1) {
                if !gj.is_zero() {
                    acc = acc - gj.scale(&int(j as i64)) * self.coeffs[k - j].clone();
                }
            }
            g[k] = acc.scale(&int(k as i64).recip());
        }
        Ok(TruncatedSeries { order: n, coeffs: g })
    }

    /// Multiplicative inverse; the constant term must be a non-zero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| {
                ParkError::Domain("inverse needs a non-zero constant leading term".into())
            })?;
        let inv0 = c0.recip();
        let n = self.order;
        let mut h = vec![Polynomial::zero(); n + 1];
        h[0] = Polynomial::constant(inv0.clone());
        for k in 1..=n {
            let mut acc = Polynomial::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &h[k - j];
                }
            }
            h[k] = acc.scale(&-inv0.clone());
        }
        Ok(TruncatedSeries { order: n, coeffs: h })
    }

    /// Substitutes into every coefficient.
    pub fn subst_values(&self, bindings: &[(Var, BigRational)]) -> Self {
        self.map_coeffs(|c| c.subst_values(bindings))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }
}

/// `exp(v t)` to the given order.
pub fn exp_linear(order: usize, v: Var) -> TruncatedSeries {
    let a: Vec<Polynomial> = (0..=order)
        .map(|k| Polynomial::var(v).pow(k as u32))
        .collect();
    TruncatedSeries::from_egf(order, &a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::rat;
    use proptest::prelude::*;

    #[test]
    fn exp_of_zero_is_one() {
        let e = TruncatedSeries::zero(5).exp().unwrap();
        assert_eq!(e, TruncatedSeries::one(5));
    }

    #[test]
    fn geometric_series_inverse() {
        let one_minus_t = TruncatedSeries::one(3).sub(&TruncatedSeries::t(3));
        let inv = one_minus_t.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == Polynomial::one()));
        assert_eq!(inv.order(), 3);
    }

    #[test]
    fn preconditions_are_domain_errors() {
        assert!(TruncatedSeries::one(3).exp().is_err());
        assert!(TruncatedSeries::t(3).log().is_err());
        assert!(TruncatedSeries::t(3).inverse().is_err());
        let yt = TruncatedSeries::constant(2, Polynomial::var(Var::Y));
        assert!(yt.inverse().is_err());
    }

    #[test]
    fn exp_t_has_factorial_coefficients() {
        let e = TruncatedSeries::t(5).exp().unwrap();
        for k in 0..=5 {
            assert!(e.egf_coeffs()[k] == Polynomial::one(), "k={k}");
        }
        assert_eq!(*e.coeff(3), Polynomial::constant(rat(1, 6)));
    }

    #[test]
    fn exp_linear_matches_exp() {
        let yt = TruncatedSeries::t(6).scale(&Polynomial::var(Var::Y));
        assert_eq!(yt.exp().unwrap(), exp_linear(6, Var::Y));
    }

    fn zero_const_series() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-3i64..4, 0u32..3), 4).prop_map(|cs| {
            let mut coeffs = vec![Polynomial::zero()];
            for (c, e) in cs {
                coeffs.push(Polynomial::from_int(c) * Polynomial::var(Var::Q).pow(e));
            }
            TruncatedSeries::from_coeffs(4, coeffs)
        })
    }

    proptest! {
        #[test]
        fn log_inverts_exp(s in zero_const_series()) {
            prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
        }

        #[test]
        fn inverse_is_two_sided(s in zero_const_series()) {
            let f = TruncatedSeries::one(4).add(&s);
            let inv = f.inverse().unwrap();
            prop_assert_eq!(f.mul(&inv), TruncatedSeries::one(4));
        }
    }
}
