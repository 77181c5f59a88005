//! Exact per-car laws and finite-size distances to the Poisson and normal
//! limits. Everything is rational until the final distance computation.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use statrs::distribution::{ContinuousCDF, Discrete, DiscreteCDF, Normal, Poisson};

use crate::exactalg::{binomial, int, rpow, Monomial, Polynomial, Var};
use crate::{ParkError, Result};

/// An exact finite law on non-negative integers.
#[derive(Clone, Debug, PartialEq)]
pub struct Pmf {
    support: Vec<usize>,
    probs: Vec<BigRational>,
}

impl Pmf {
    /// Builds a law; probabilities must be non-negative and sum to one.
    pub fn new(support: Vec<usize>, probs: Vec<BigRational>) -> Result<Self> {
        if support.len() != probs.len() {
            return Err(ParkError::Invalid("support and probabilities differ in length".into()));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ParkError::Invalid("support must be strictly increasing".into()));
        }
        if probs.iter().any(Signed::is_negative) {
            return Err(ParkError::Invalid("negative probability".into()));
        }
        if probs.iter().sum::<BigRational>() != BigRational::one() {
            return Err(ParkError::Invalid("probabilities do not sum to 1".into()));
        }
        Ok(Pmf { support, probs })
    }

    /// The law of `X` given unnormalised weights `w[j] = weight(X = j)`.
    pub fn from_weights(weights: &[BigRational]) -> Result<Self> {
        let total: BigRational = weights.iter().sum();
        if total.is_zero() {
            return Err(ParkError::Invalid("zero total weight".into()));
        }
        let probs = weights.iter().map(|w| w / &total).collect();
        Pmf::new((0..weights.len()).collect(), probs)
    }

    pub fn point(at: usize) -> Self {
        Pmf { support: vec![at], probs: vec![BigRational::one()] }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probs(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn prob(&self, k: usize) -> BigRational {
        match self.support.binary_search(&k) {
            Ok(i) => self.probs[i].clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.support.iter().copied().zip(&self.probs)
    }

    pub fn mean(&self) -> BigRational {
        self.iter().map(|(k, p)| p * int(k as i64)).sum()
    }

    pub fn variance(&self) -> BigRational {
        let mu = self.mean();
        self.iter()
            .map(|(k, p)| {
                let d = int(k as i64) - &mu;
                p * &d * &d
            })
            .sum()
    }

    /// Float view for the limit comparisons.
    pub fn to_f64(&self) -> Vec<(usize, f64)> {
        self.iter().map(|(k, p)| (k, ratio_f64(p))).collect()
    }
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn check_car(n: usize, i: usize) -> Result<()> {
    if i >= n {
        return Err(ParkError::Domain(format!("car index i={i} needs i <= n-1 with n={n}")));
    }
    Ok(())
}

/// `C(i,s)(s+1)^(s-1)(n-s)^(i-s-1)`.
fn abel_term(n: i64, i: i64, s: i64) -> BigRational {
    binomial(i, s) * rpow(s + 1, s - 1) * rpow(n - s, i - s - 1)
}

/// `P_k` for `k = 0..=i` in the two-direction form, as polynomials in `p`:
/// forward blocks ending at `j = k+1..=i+1`, backward blocks at `j = n-i..=n-k`.
pub fn displacement_pmf_p_form(n: usize, i: usize) -> Result<Vec<Polynomial>> {
    check_car(n, i)?;
    let (n, i) = (n as i64, i as i64);
    let pre = int(n - i) / rpow(n + 1, i);
    let p = Polynomial::var(Var::P);
    let q = Polynomial::one() - p.clone();
    Ok((0..=i)
        .map(|k| {
            let fwd: BigRational = (k + 1..=i + 1)
                .map(|j| binomial(i, j - 1) * rpow(j, j - 2) * rpow(n - j + 1, i - j))
                .sum();
            let bwd: BigRational = (n - i..=n - k)
                .map(|j| binomial(i, n - j) * rpow(n - j + 1, n - j - 1) * rpow(j, i - n + j - 1))
                .sum();
            (p.scale(&fwd) + q.scale(&bwd)).scale(&pre)
        })
        .collect())
}

/// Law of the displacement of car `i+1` (0-based `i`) given that the
/// preference vector lies in `PF(m, n)`; it does not depend on `m > i`.
pub fn displacement_pmf(n: usize, i: usize) -> Result<Pmf> {
    check_car(n, i)?;
    let (nn, ii) = (n as i64, i as i64);
    let pre = int(nn - ii) / rpow(nn + 1, ii);
    let probs: Vec<BigRational> = (0..=ii)
        .map(|k| (k..=ii).map(|s| abel_term(nn, ii, s)).sum::<BigRational>() * &pre)
        .collect();
    Pmf::new((0..=i).collect(), probs)
}

/// `P(car i+1 is unlucky | PF(m, n)) = 1 - P_0`.
pub fn unlucky_prob(n: usize, i: usize) -> Result<BigRational> {
    Ok(BigRational::one() - displacement_pmf(n, i)?.prob(0))
}

/// Mean displacement per car over `PF(m, n)`: `(1/m) sum_i D_i`.
pub fn avg_displacement(m: usize, n: usize) -> Result<BigRational> {
    if m == 0 || m > n {
        return Err(ParkError::Domain(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    let total: BigRational = (0..m)
        .map(|i| displacement_pmf(n, i).map(|d| d.mean()))
        .sum::<Result<BigRational>>()?;
    Ok(total / int(m as i64))
}

/// Joint law of `(U, R)`: unlucky cars and positional repeats.
#[derive(Clone, Debug, PartialEq)]
pub struct UrLaw {
    probs: BTreeMap<(usize, usize), BigRational>,
}

impl UrLaw {
    pub fn probs(&self) -> &BTreeMap<(usize, usize), BigRational> {
        &self.probs
    }

    pub fn prob(&self, u: usize, r: usize) -> BigRational {
        self.probs.get(&(u, r)).cloned().unwrap_or_else(BigRational::zero)
    }

    fn marginal(&self, pick: impl Fn(usize, usize) -> usize) -> Pmf {
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (&(u, r), p) in &self.probs {
            *acc.entry(pick(u, r)).or_insert_with(BigRational::zero) += p;
        }
        let (support, probs) = acc.into_iter().unzip();
        Pmf { support, probs }
    }

    pub fn u(&self) -> Pmf {
        self.marginal(|u, _| u)
    }

    pub fn r(&self) -> Pmf {
        self.marginal(|_, r| r)
    }

    /// Reads `x^U y^R` coefficients of a polynomial and normalises them.
    pub fn from_poly(poly: &Polynomial, u: Var, r: Var) -> Result<Self> {
        let total = poly.coeff_sum();
        if total.is_zero() {
            return Err(ParkError::Invalid("zero total weight".into()));
        }
        let probs = poly
            .terms()
            .map(|(mono, c)| ((mono.exp(u) as usize, mono.exp(r) as usize), c / &total))
            .collect();
        Ok(UrLaw { probs })
    }

    /// `sum P(U = u, R = r) x^u y^r`.
    pub fn to_poly(&self, u: Var, r: Var) -> Polynomial {
        self.probs
            .iter()
            .map(|(&(a, b), p)| {
                let m = Monomial::ONE.with_exp(u, a as u32).with_exp(r, b as u32);
                Polynomial::term(p.clone(), m)
            })
            .sum()
    }
}

/// One independent step: `(1,1)` with weight `rep`, `(1,0)` with weight
/// `miss`, `(0,0)` with weight `lucky`.
struct Step {
    rep: u64,
    miss: u64,
    lucky: u64,
}

/// Convolves the steps over integer counts, dividing once at the end.
fn convolve(steps: impl IntoIterator<Item = Step>, denom: u64) -> UrLaw {
    let mut counts: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
    counts.insert((0, 0), BigUint::one());
    let mut steps_taken = 0u32;
    for s in steps {
        steps_taken += 1;
        let mut next: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
        for ((u, r), c) in counts {
            for (key, w) in [((u + 1, r + 1), s.rep), ((u + 1, r), s.miss), ((u, r), s.lucky)] {
                if w > 0 {
                    *next.entry(key).or_default() += &c * w;
                }
            }
        }
        counts = next;
    }
    let total = BigUint::from(denom).pow(steps_taken);
    let probs = counts
        .into_iter()
        .map(|(key, c)| (key, BigRational::new(c.into(), total.clone().into())))
        .collect();
    UrLaw { probs }
}

fn rk_circle(m: usize, r: usize, k: usize) -> Result<u64> {
    if m == 0 || r == 0 || k == 0 {
        return Err(ParkError::Domain("need m, r, k >= 1".into()));
    }
    Ok((k + m * r) as u64)
}

/// Exact `(U, R)` law over `PF_m(r, k)`: a product of `m-1` independent
/// steps with `P(rep) = 1/K`, `P(miss, no rep) = (i-1)/K`, `K = k + mr`.
pub fn exact_ur_law(m: usize, r: usize, k: usize) -> Result<UrLaw> {
    let big_k = rk_circle(m, r, k)?;
    Ok(convolve(
        (1..m as u64).map(|i| Step { rep: 1, miss: i - 1, lucky: big_k - i }),
        big_k,
    ))
}

/// Exact `(U, R)` law over prime parking functions of length `n >= 2`, with
/// steps on a circle of `n - 1` spots.
pub fn ppf_ur_law(n: usize) -> Result<UrLaw> {
    if n < 2 {
        return Err(ParkError::Domain("prime parking laws need n >= 2".into()));
    }
    let c = n as u64 - 1;
    Ok(convolve((1..=c).map(|i| Step { rep: 1, miss: i - 1, lucky: c - i }), c))
}

/// Law of `sum Bernoulli(a_i / d)` with integer numerators.
fn bernoulli_sum(numerators: impl IntoIterator<Item = u64>, d: u64) -> Pmf {
    let mut counts = vec![BigUint::one()];
    let mut steps = 0u32;
    for a in numerators {
        steps += 1;
        let mut next = vec![BigUint::zero(); counts.len() + 1];
        for (j, c) in counts.iter().enumerate() {
            next[j] += c * (d - a);
            next[j + 1] += c * a;
        }
        counts = next;
    }
    let total: num_bigint::BigInt = BigUint::from(d).pow(steps).into();
    let probs = counts
        .into_iter()
        .map(|c| BigRational::new(c.into(), total.clone()))
        .collect::<Vec<_>>();
    Pmf { support: (0..probs.len()).collect(), probs }
}

/// Total variation distance to `Poisson(lambda)`, including the Poisson
/// mass beyond the support.
pub fn tv_to_poisson(law: &Pmf, lambda: f64) -> f64 {
    let pois = Poisson::new(lambda).expect("positive rate");
    let top = *law.support().last().unwrap_or(&0);
    let dense: BTreeMap<usize, f64> = law.to_f64().into_iter().collect();
    let inside: f64 = (0..=top)
        .map(|j| (dense.get(&j).copied().unwrap_or(0.0) - pois.pmf(j as u64)).abs())
        .sum();
    0.5 * (inside + pois.sf(top as u64))
}

/// Kolmogorov distance between `(X - mean)/sd` and the standard normal,
/// with the law's exact mean and variance. A point mass scores 1/2.
pub fn ks_to_normal(law: &Pmf) -> f64 {
    let mu = ratio_f64(&law.mean());
    let var = ratio_f64(&law.variance());
    if var <= 0.0 {
        return 0.5;
    }
    let sd = var.sqrt();
    let phi = Normal::standard();
    let mut below = 0.0;
    let mut worst: f64 = 0.0;
    for (k, p) in law.to_f64() {
        let z = phi.cdf((k as f64 - mu) / sd);
        let after = below + p;
        worst = worst.max((below - z).abs()).max((after - z).abs());
        below = after;
    }
    worst
}

/// Finite-size distances to the limit laws.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub m: usize,
    pub k: usize,
    pub lambda: f64,
    /// TV between repeats `R` and `Poisson(lambda)`.
    pub tv_r: f64,
    /// TV between `L_s - 1` and `Poisson(lambda)`.
    pub tv_l: f64,
    /// Kolmogorov distance of standardised unluckiness `U` to the normal.
    pub ks_u: f64,
}

/// Distances for `PF_m(r, k)` at `k = cm + r`.
pub fn limit_checks(m: usize, c: usize, r: usize) -> Result<LimitReport> {
    let k = c * m + r;
    let big_k = rk_circle(m, r, k)?;
    let steps = 1..m as u64;
    let u_law = bernoulli_sum(steps.clone(), big_k);
    let r_law = bernoulli_sum(steps.clone().map(|_| 1), big_k);
    // Remark: L_s - 1 has the y-marginal of k y prod (y + K - 1).
    let l_law = bernoulli_sum(steps.map(|_| 1), big_k);
    let lambda = 1.0 / (c + r) as f64;
    Ok(LimitReport {
        m,
        k,
        lambda,
        tv_r: tv_to_poisson(&r_law, lambda),
        tv_l: tv_to_poisson(&l_law, lambda),
        ks_u: ks_to_normal(&u_law),
    })
}

/// Distances for prime parking functions of length `n >= 2`; every limit
/// rate is 1.
pub fn ppf_limit_checks(n: usize) -> Result<LimitReport> {
    if n < 2 {
        return Err(ParkError::Domain("prime parking laws need n >= 2".into()));
    }
    let c = n as u64 - 1;
    let u_law = bernoulli_sum(1..=c, c);
    let r_law = bernoulli_sum((1..=c).map(|_| 1), c);
    Ok(LimitReport {
        m: n,
        k: 0,
        lambda: 1.0,
        tv_r: tv_to_poisson(&r_law, 1.0),
        tv_l: tv_to_poisson(&r_law, 1.0),
        ks_u: ks_to_normal(&u_law),
    })
}

/// Marginal of `U` alone, as a sum of Bernoulli(i/K).
pub fn rk_u_law(m: usize, r: usize, k: usize) -> Result<Pmf> {
    let big_k = rk_circle(m, r, k)?;
    Ok(bernoulli_sum(1..m as u64, big_k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn first_car_is_lucky() {
        for n in 1..=6 {
            assert_eq!(displacement_pmf(n, 0).unwrap(), Pmf::point(0));
        }
    }

    #[test]
    fn pf2_second_car() {
        let d = displacement_pmf(2, 1).unwrap();
        assert_eq!(d.probs(), &[q(2, 3), q(1, 3)]);
        assert_eq!(unlucky_prob(2, 1).unwrap(), q(1, 3));
    }

    #[test]
    fn forms_agree_and_p_cancels() {
        for n in 1..=7 {
            for i in 0..n {
                let simple = displacement_pmf(n, i).unwrap();
                let pform = displacement_pmf_p_form(n, i).unwrap();
                for (k, poly) in pform.iter().enumerate() {
                    assert_eq!(poly.as_constant(), Some(simple.prob(k)), "n={n} i={i} k={k}");
                }
                assert_eq!(unlucky_prob(n, i).unwrap(), q(i as i64, n as i64 + 1));
            }
        }
    }

    #[test]
    fn bad_index() {
        assert!(displacement_pmf(3, 3).is_err());
        assert!(avg_displacement(4, 3).is_err());
        assert!(Pmf::new(vec![0, 1], vec![q(1, 2), q(1, 3)]).is_err());
    }

    #[test]
    fn ur_law_small() {
        assert_eq!(exact_ur_law(1, 2, 3).unwrap().probs().len(), 1);
        let law = exact_ur_law(2, 1, 1).unwrap();
        assert_eq!(law.prob(1, 1), q(1, 3));
        assert_eq!(law.prob(0, 0), q(2, 3));
        assert_eq!(law.prob(1, 0), q(0, 1));
    }

    #[test]
    fn degenerate_limits() {
        let rep = limit_checks(1, 0, 1).unwrap();
        assert_eq!(rep.ks_u, 0.5);
        assert!((rep.tv_r - (1.0 - (-1.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn thresholds_at_200() {
        for (c, r) in [(0, 1), (1, 1)] {
            let rep = limit_checks(200, c, r).unwrap();
            assert!(rep.tv_r < 0.01 && rep.ks_u < 0.05, "{rep:?}");
        }
        let rep = ppf_limit_checks(200).unwrap();
        assert!(rep.tv_r < 0.01 && rep.ks_u < 0.05, "{rep:?}");
    }

    #[test]
    fn distances_shrink() {
        for (c, r) in [(0, 1), (1, 1)] {
            let a = limit_checks(50, c, r).unwrap();
            let b = limit_checks(100, c, r).unwrap();
            assert!(b.tv_r < a.tv_r && b.ks_u < a.ks_u);
        }
    }
}
