//! Sparse multivariate polynomials with exact rational coefficients over the
//! fixed alphabet `x, y, z, w, p, q, t`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParkError;

/// Number of variables in the alphabet.
pub const NVARS: usize = 7;

/// One of the seven indeterminates every generating function is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    W,
    P,
    Q,
    T,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::W, Var::P, Var::Q, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z", "w", "p", "q", "t"][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = ParkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| ParkError::Parse(format!("unknown variable `{s}`")))
    }
}

/// Exponent vector, one entry per [`Var`].
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared left to right in alphabet order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn with_exp(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = e;
        self
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in the seven-variable alphabet. Never stores a zero
/// coefficient, so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(BigRational::one(), Monomial::var(v))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I>(it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// `v^from + v^(from+1) + ... + v^to`; empty (zero) when `from > to`.
    pub fn geometric(v: Var, from: u32, to: u32) -> Self {
        Polynomial::from_terms(
            (from..=to).map(|e| (Monomial::ONE.with_exp(v, e), BigRational::one())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant rational if this polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn is_free_of(&self, v: Var) -> bool {
        self.degree_in(v) == 0
    }

    /// Coefficient of `v^e` as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, e: u32) -> Polynomial {
        Polynomial::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exp(v) == e)
                .map(|(m, c)| (m.with_exp(v, 0), c.clone())),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut e = k.0;
            for (a, b) in e.iter_mut().zip(m.0) {
                *a = a.checked_sub(b)?;
            }
            terms.insert(Monomial(e), c.clone());
        }
        Some(Polynomial { terms })
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneously replaces every bound variable by its polynomial.
    pub fn subst(&self, bindings: &[(Var, Polynomial)]) -> Polynomial {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut bound: [Option<&Polynomial>; NVARS] = [None; NVARS];
        for (v, p) in bindings {
            bound[v.index()] = Some(p);
        }
        // powers[v][e] = binding_v^e, grown on demand
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one()]; NVARS];
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut free = *m;
            let mut factor = Polynomial::constant(c.clone());
            for v in Var::ALL {
                let Some(b) = bound[v.index()] else { continue };
                let e = m.exp(v) as usize;
                free = free.with_exp(v, 0);
                let pw = &mut powers[v.index()];
                while pw.len() <= e {
                    let next = pw.last().unwrap() * b;
                    pw.push(next);
                }
                if e > 0 {
                    factor = &factor * &pw[e];
                }
            }
            out += factor.mul_monomial(&free);
        }
        out
    }

    /// Substitutes rational constants.
    pub fn subst_values(&self, bindings: &[(Var, BigRational)]) -> Polynomial {
        let b: Vec<(Var, Polynomial)> = bindings
            .iter()
            .map(|(v, c)| (*v, Polynomial::constant(c.clone())))
            .collect();
        self.subst(&b)
    }

    /// Sets each listed variable to 1.
    pub fn set_one(&self, vars: &[Var]) -> Polynomial {
        let b: Vec<(Var, BigRational)> = vars.iter().map(|v| (*v, BigRational::one())).collect();
        self.subst_values(&b)
    }

    /// Renames variables (a simultaneous substitution by variables).
    pub fn rename(&self, map: &[(Var, Var)]) -> Polynomial {
        let b: Vec<(Var, Polynomial)> = map.iter().map(|(a, b)| (*a, Polynomial::var(*b))).collect();
        self.subst(&b)
    }

    /// Evaluates at a full rational point; unbound variables are an error.
    pub fn eval(&self, point: &[(Var, BigRational)]) -> Result<BigRational, ParkError> {
        self.subst_values(point)
            .as_constant()
            .ok_or_else(|| ParkError::Domain("evaluation point leaves free variables".into()))
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn coeff_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    /// Coefficient vector in a single variable; other variables must be absent.
    pub fn univariate_coeffs(&self, v: Var) -> Result<Vec<BigRational>, ParkError> {
        let mut out = vec![BigRational::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            if m.degree() != m.exp(v) {
                return Err(ParkError::Domain(format!("polynomial is not univariate in {v}")));
            }
            out[m.exp(v) as usize] = c.clone();
        }
        Ok(out)
    }
}

impl From<BigRational> for Polynomial {
    fn from(c: BigRational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::from_int(n)
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            for (m, c) in lhs.terms {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Mul<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        &self * rhs
    }
}

impl Add<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Sub<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        &self - rhs
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |a, b| a * b)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for v in Var::ALL {
        match m.exp(v) {
            0 => {}
            1 => write!(f, "{v}")?,
            e => write!(f, "{v}^{e}")?,
        }
    }
    Ok(())
}

/// Human-readable form, highest graded-lex term first, e.g. `x^2y^2 + x^2y + xy + x`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x() -> Polynomial {
        Polynomial::var(Var::X)
    }
    fn y() -> Polynomial {
        Polynomial::var(Var::Y)
    }
    fn z() -> Polynomial {
        Polynomial::var(Var::Z)
    }
    fn w() -> Polynomial {
        Polynomial::var(Var::W)
    }
    fn p() -> Polynomial {
        Polynomial::var(Var::P)
    }
    fn c(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    #[test]
    fn additive_inverse_vanishes() {
        assert!((x() + (-x())).is_zero());
        assert_eq!((x() + (-x())).len(), 0);
    }

    #[test]
    fn like_terms_merge() {
        let a = &x() * &y() + c(2);
        let got = a + &x() * &y();
        assert_eq!(got, c(2) * &x() * &y() + c(2));
        assert_eq!(got.to_string(), "2xy + 2");
    }

    #[test]
    fn adding_zero_to_two_car_polynomial() {
        // w + xyw + zw^2, the four-statistic enumerator of length-2 parking functions
        let p2 = w() + x() * y() * w() + z() * w() * w();
        assert_eq!(&p2 + &Polynomial::zero(), p2);
        assert_eq!(p2.len(), 3);
    }

    #[test]
    fn products() {
        let lhs = (x() * y() + c(1)) * (x() * y() + x());
        let expect = x().pow(2) * y().pow(2) + x().pow(2) * y() + x() * y() + x();
        assert_eq!(lhs, expect);
        assert_eq!(lhs.to_string(), "x^2y^2 + x^2y + xy + x");
        assert_eq!(Polynomial::one() * lhs.clone(), lhs);
        assert_eq!((x() + c(1)) * (x() - c(1)), x().pow(2) - c(1));
    }

    #[test]
    fn substitution() {
        let p2 = w() + x() * y() * w() + z() * w() * w();
        assert_eq!(p2.set_one(&[Var::Z, Var::W]), c(2) + x() * y());
        assert_eq!(p2.subst(&[]), p2);
        let two_p_q = c(2) * p() * (c(1) - p());
        assert!(two_p_q.set_one(&[Var::P]).is_zero());
    }

    #[test]
    fn rename_is_simultaneous() {
        let e = x() * y().pow(2);
        assert_eq!(e.rename(&[(Var::X, Var::Y), (Var::Y, Var::X)]), y() * x().pow(2));
    }

    #[test]
    fn display_signs_and_fractions() {
        let e = Polynomial::constant(rat(-1, 2)) * x() + c(3) - y();
        assert_eq!(e.to_string(), "-1/2x - y + 3");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::var(Var::X);
        let b = Monomial::var(Var::Y).with_exp(Var::Z, 1);
        assert!(a < b);
        assert!(Monomial::var(Var::Y) < Monomial::var(Var::X));
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..5, 1i64..4), 0..5).prop_map(
            |ts| {
                Polynomial::from_terms(ts.into_iter().map(|((a, b, d), n, den)| {
                    let m = Monomial::ONE
                        .with_exp(Var::X, a)
                        .with_exp(Var::Y, b)
                        .with_exp(Var::P, d);
                    (m, rat(n, den))
                }))
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), d in small_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
            prop_assert_eq!(&(&a + &b) + &d, &a + &(&b + &d));
            prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn staged_substitution_matches_joint(a in small_poly(), s in -3i64..4, t in -3i64..4) {
            let staged = a.subst_values(&[(Var::X, int(s))]).subst_values(&[(Var::Y, int(t))]);
            let joint = a.subst_values(&[(Var::X, int(s)), (Var::Y, int(t))]);
            prop_assert_eq!(staged, joint);
        }

        #[test]
        fn no_zero_coefficients_stored(a in small_poly(), b in small_poly()) {
            let prod = &a * &b;
            prop_assert!(prod.terms().all(|(_, c)| !c.is_zero()));
        }
    }
}
