//! Product and closed-form generating polynomials, built by explicit
//! multiplication so that comparisons are structural.

use num_rational::BigRational;
use num_traits::Zero;

use crate::exactalg::{binomial, int, multinomial, rpow, Monomial, Polynomial, TruncatedSeries, Var};
use crate::exactalg::series::exp_linear;
use crate::recurrences::{kreweras_dis, upf_rec};

fn v(var: Var) -> Polynomial {
    Polynomial::var(var)
}

fn c(n: i64) -> Polynomial {
    Polynomial::from_int(n)
}

fn prod(range: std::ops::RangeInclusive<i64>, f: impl Fn(i64) -> Polynomial) -> Polynomial {
    range.map(f).product()
}

/// `q prod_{i=1}^{n-1} (i + (n-i+1) q)`, lucky cars over `PF(n)`.
pub fn lucky_gf(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    let n = n as i64;
    let q = v(Var::Q);
    &q * &prod(1..=n - 1, |i| c(i) + &q * &c(n - i + 1))
}

/// `(q + n)^(n-1)`, repeats over `PF(n)`.
pub fn rep_gf(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    (v(Var::Q) + c(n as i64)).pow(n as u32 - 1)
}

fn rk_product(m: usize, r: usize, k: usize) -> Polynomial {
    let (m, r, k) = (m as i64, r as i64, k as i64);
    let (x, y) = (v(Var::X), v(Var::Y));
    prod(1..=m - 1, |i| &x * &y + &x * &c(i - 1) + c(k + m * r - i))
}

/// `k prod_{i=1}^{m-1} (xy + (i-1)x + k + mr - i)`: unluckiness and
/// repeats, probability-weighted over `PF_m(r, k)`.
pub fn rk_unl_rep_gf(m: usize, r: usize, k: usize) -> Polynomial {
    if m == 0 {
        return Polynomial::one();
    }
    c(k as i64) * rk_product(m, r, k)
}

/// `k y prod_{i=1}^{m-1} (xy + (i-1)x + k + mr - i)`: unluckiness and
/// leading elements (equally, entries equal to the second entry).
pub fn rk_unl_lel_gf(m: usize, r: usize, k: usize) -> Polynomial {
    if m == 0 {
        return Polynomial::one();
    }
    c(k as i64) * v(Var::Y) * rk_product(m, r, k)
}

/// `k y prod_{i=1}^{m-1} (y + k + mr - 1)`: entries equal to any fixed car's.
pub fn rk_same_as_gf(m: usize, r: usize, k: usize) -> Polynomial {
    if m == 0 {
        return Polynomial::one();
    }
    let y = v(Var::Y);
    let base = &y + &c((k + m * r) as i64 - 1);
    c(k as i64) * y * base.pow(m as u32 - 1)
}

/// `(n-m+1) prod_{i=1}^{m-1} (ix + n - i + 1)`, unluckiness over `PF(m, n)`.
pub fn unl_pf_mn_gf(m: usize, n: usize) -> Polynomial {
    if m == 0 {
        return Polynomial::one();
    }
    let (m, n) = (m as i64, n as i64);
    let x = v(Var::X);
    c(n - m + 1) * prod(1..=m - 1, |i| &x * &c(i) + c(n - i + 1))
}

/// `y prod_{i=1}^{n-1} (ix + n - i + y)`: non-leaders and root degree
/// over trees on `{0..n}`.
pub fn tree_nld_deg0_gf(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    let n = n as i64;
    let (x, y) = (v(Var::X), v(Var::Y));
    &y * &prod(1..=n - 1, |i| &x * &c(i) + c(n - i) + y.clone())
}

/// `y (y + n)^(n-1)`, ones over `PF(n)`.
pub fn ones_gf(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    v(Var::Y) * (v(Var::Y) + c(n as i64)).pow(n as u32 - 1)
}

/// The two products shared by the three-statistic formulas.
fn pair_products(n: i64) -> (Polynomial, Polynomial) {
    let (x, y, z) = (v(Var::X), v(Var::Y), v(Var::Z));
    let xyz = &x * &y * &z;
    let split = prod(1..=n - 2, |i| &x * &z + &y * &z + &z * &c(i - 1) + c(n - i));
    let joint = prod(1..=n - 2, |i| &xyz + &(&z * &c(i)) + c(n - i));
    (split, joint)
}

/// `x^lel y^one z^unl` over `PF(n)`:
/// `xy((n-1) prod (xz+yz+(i-1)z+n-i) + (xyz+1) prod (xyz+iz+n-i))`.
/// Stated for `n >= 2`; `n = 1` returns `xy`, `n = 0` returns 1.
pub fn master_gf(n: usize) -> Polynomial {
    match n {
        0 => return Polynomial::one(),
        1 => return v(Var::X) * v(Var::Y),
        _ => {}
    }
    let n = n as i64;
    let (split, joint) = pair_products(n);
    let xy = v(Var::X) * v(Var::Y);
    let xyz = &xy * &v(Var::Z);
    &xy * &(c(n - 1) * split + (xyz + c(1)) * joint)
}

/// `x^nlel y^one z^unl` over `PF(n)`, which has the same right-hand side.
/// Stated for `n >= 2`: over `PF(1)` there is no second car and the sum is `y`.
pub fn correspondence_gf(n: usize) -> Polynomial {
    master_gf(n)
}

/// `x^lel y^nlel z^unl` over `PF(n)`:
/// `xy(n prod (xz+yz+(i-1)z+n-i) + xyz prod (xyz+iz+n-i))`.
/// Stated for `n >= 2`; `n = 1` returns `xy` although the sum over `PF(1)`
/// is `x`, since nlel vanishes without a second car.
pub fn contrast_gf(n: usize) -> Polynomial {
    match n {
        0 => return Polynomial::one(),
        1 => return v(Var::X) * v(Var::Y),
        _ => {}
    }
    let n = n as i64;
    let (split, joint) = pair_products(n);
    let xy = v(Var::X) * v(Var::Y);
    let xyz = &xy * &v(Var::Z);
    &xy * &(c(n) * split + xyz * joint)
}

/// `coef * base^e`, skipping the power when the coefficient vanishes so
/// negative exponents only appear where they are harmless.
fn term(coef: BigRational, base: i64, e: i64) -> BigRational {
    if coef.is_zero() {
        coef
    } else {
        coef * rpow(base, e)
    }
}

/// `#{PF(n): lel = s+1, one = t+1}`.
pub fn master_counts(n: usize, s: usize, t: usize) -> BigRational {
    let (n, s, t) = (n as i64, s as i64, t as i64);
    if n == 1 {
        return int((s == 0 && t == 0) as i64);
    }
    let mut total = term(multinomial(n - 2, &[s, t, n - s - t - 2]), n - 1, n - s - t - 1);
    if s == t {
        total += term(binomial(n - 2, s), n, n - s - 2);
        total += term(binomial(n - 2, s - 1), n, n - s - 1);
    }
    total
}

/// `#{PF(n): lel = s+1, nlel = t+1}`, for `n >= 2`.
pub fn contrast_counts(n: usize, s: usize, t: usize) -> BigRational {
    let (n, s, t) = (n as i64, s as i64, t as i64);
    if n == 1 {
        return int((s == 0 && t == 0) as i64);
    }
    let mut total = term(multinomial(n - 2, &[s, t, n - s - t - 2]) * int(n), n - 1, n - s - t - 2);
    if s == t {
        total += term(binomial(n - 2, s - 1), n, n - s - 1);
    }
    total
}

fn ppf_product(n: i64) -> Polynomial {
    let (x, y) = (v(Var::X), v(Var::Y));
    prod(1..=n - 1, |i| &x * &y + &x * &c(i - 1) + c(n - 1 - i))
}

/// `prod_{i=1}^{n-1} (xy + (i-1)x + n-1-i)`, unluckiness and repeats over
/// prime parking functions.
pub fn ppf_unl_rep_gf(n: usize) -> Polynomial {
    ppf_product(n as i64)
}

/// `y prod_{i=1}^{n-1} (xy + (i-1)x + n-1-i)`, unluckiness and leading
/// elements over prime parking functions.
pub fn ppf_unl_lel_gf(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    v(Var::Y) * ppf_product(n as i64)
}

/// `y (y + n - 2)^(n-1)`, entries equal to a fixed car's over `PPF(n)`.
pub fn ppf_same_as_gf(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    v(Var::Y) * (v(Var::Y) + c(n as i64 - 2)).pow(n as u32 - 1)
}

/// `x^lel y^one` over `PPF(len)` with `len = n + 1 >= 2`:
/// `x(n-1+x+y)^(n-1)((n-1)y - x - (n-1)) + x(n-1+x)^n + x^2y^2(n+xy)^(n-1)`.
pub fn ppf_lel_one_gf(len: usize) -> Polynomial {
    assert!(len >= 2, "stated for prime parking functions of length at least 2");
    let n = len as i64 - 1;
    let (x, y) = (v(Var::X), v(Var::Y));
    let xy = &x * &y;
    let a = &x
        * &(c(n - 1) + x.clone() + y.clone()).pow(n as u32 - 1)
        * (&y * &c(n - 1) - x.clone() - c(n - 1));
    let b = &x * &(c(n - 1) + x.clone()).pow(n as u32);
    let d = &xy * &xy * (c(n) + xy.clone()).pow(n as u32 - 1);
    a + b + d
}

/// Stirling numbers of the second kind `S(n, k)`, `0 <= k <= n`.
pub fn stirling2(n: usize) -> Vec<Vec<BigRational>> {
    let mut s = vec![vec![int(0); n + 1]; n + 1];
    s[0][0] = int(1);
    for i in 1..=n {
        for k in 1..=i {
            s[i][k] = &s[i - 1][k - 1] + &s[i - 1][k] * int(k as i64);
        }
    }
    s
}

/// `sum_{k=1}^n S(n, k) k! y^(n-k)` over unit-interval parking functions.
pub fn upf_closed(n: usize) -> Polynomial {
    if n == 0 {
        return Polynomial::one();
    }
    let s = stirling2(n);
    let mut fact = int(1);
    let mut total = Polynomial::zero();
    for (k, s_nk) in s[n].iter().enumerate().skip(1) {
        fact *= int(k as i64);
        let m = Monomial::var(Var::Y).with_exp(Var::Y, (n - k) as u32);
        total.add_term(m, s_nk * &fact);
    }
    total
}

/// `y / (y + 1 - exp(y t))` to order `order`, as `1 / (1 - (exp(yt) - 1)/y)`.
pub fn upf_egf(order: usize) -> TruncatedSeries {
    let e = exp_linear(order, Var::Y);
    let shifted = e.sub(&TruncatedSeries::one(order));
    let divided = shifted.map_coeffs(|p| {
        p.div_monomial(&Monomial::var(Var::Y))
            .expect("exp(yt) - 1 is divisible by y")
    });
    TruncatedSeries::one(order)
        .sub(&divided)
        .inverse()
        .expect("constant term is 1")
}

/// Coefficients of `t^n/n!` in the unit-interval EGF agree with the
/// recurrence for `n <= order`, and the `y = 1` specialisation is
/// `1/(2 - exp t)`.
pub fn verify_upf_egf(order: usize) -> bool {
    let q = upf_egf(order);
    let rec_ok = q
        .egf_coeffs()
        .iter()
        .enumerate()
        .all(|(n, c)| *c == upf_rec(n));
    let fubini = TruncatedSeries::constant(order, c(2))
        .sub(&TruncatedSeries::t(order).exp().expect("t has no constant term"))
        .inverse()
        .expect("constant term is 1");
    let at_one = q.subst_values(&[(Var::Y, int(1))]);
    rec_ok && at_one == fubini
}

/// `sum_{n>=1} I_n(q)(q-1)^(n-1) t^n/n! = log sum_{n>=0} q^C(n,2) t^n/n!`
/// to order `order`. `I_n` is the inversion enumerator of trees on `n`
/// vertices, which is the displacement polynomial of `PF(n-1)`.
pub fn verify_dis_log_egf(order: usize) -> bool {
    dis_log_egf_holds(order, 1)
}

/// The same comparison with `I_n` replaced by the displacement polynomial of
/// `PF(n - offset)`, `offset <= 1`.
pub fn dis_log_egf_holds(order: usize, offset: usize) -> bool {
    let q = v(Var::Q);
    let qm1 = &q - &Polynomial::one();
    let lhs_coeffs: Vec<Polynomial> = (0..=order)
        .map(|n| {
            if n == 0 {
                Polynomial::zero()
            } else {
                kreweras_dis(n - offset) * qm1.pow(n as u32 - 1)
            }
        })
        .collect();
    let lhs = TruncatedSeries::from_egf(order, &lhs_coeffs);
    let inner: Vec<Polynomial> = (0..=order)
        .map(|n| q.pow((n * n.saturating_sub(1) / 2) as u32))
        .collect();
    let rhs = TruncatedSeries::from_egf(order, &inner)
        .log()
        .expect("constant term is 1");
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Polynomial {
        v(Var::X)
    }
    fn y() -> Polynomial {
        v(Var::Y)
    }
    fn z() -> Polynomial {
        v(Var::Z)
    }

    #[test]
    fn small_cases() {
        let q = v(Var::Q);
        assert_eq!(lucky_gf(1), q);
        assert_eq!(lucky_gf(2), q.clone() + c(2) * q.clone() * q.clone());
        assert_eq!(rep_gf(1), Polynomial::one());
        assert_eq!(rep_gf(2), q + c(2));
        assert_eq!(rk_unl_rep_gf(2, 1, 1), x() * y() + c(2));
        assert_eq!(rk_unl_rep_gf(1, 3, 4), c(4));
        assert_eq!(rk_unl_lel_gf(1, 3, 4), c(4) * y());
        assert_eq!(master_gf(2), x() * y() * (x() * y() * z() + c(2)));
        assert_eq!(master_gf(1), x() * y());
        assert_eq!(contrast_gf(2), c(2) * x() * y() + x() * x() * y() * y() * z());
        assert_eq!(ones_gf(2), c(2) * y() + y() * y());
        assert_eq!(ppf_unl_rep_gf(2), x() * y());
        let xy = x() * y();
        assert_eq!(ppf_unl_rep_gf(3), &xy * &xy + x() * &xy + xy.clone() + x());
        assert_eq!(upf_closed(1), Polynomial::one());
        assert_eq!(upf_closed(2), y() + c(2));
    }

    #[test]
    fn counts_from_the_master_formula() {
        assert_eq!(master_counts(2, 0, 0), int(2));
        assert_eq!(master_counts(4, 2, 1), int(0));
        for n in 2..=7usize {
            let poly = master_gf(n).set_one(&[Var::Z]);
            let cpoly = contrast_gf(n).set_one(&[Var::Z]);
            for s in 0..n {
                for t in 0..n {
                    let m = Monomial::ONE
                        .with_exp(Var::X, s as u32 + 1)
                        .with_exp(Var::Y, t as u32 + 1);
                    assert_eq!(poly.coeff(&m), master_counts(n, s, t), "n={n} s={s} t={t}");
                    assert_eq!(cpoly.coeff(&m), contrast_counts(n, s, t), "n={n} s={s} t={t}");
                }
            }
        }
    }

    #[test]
    fn specialisations() {
        for m in 1..=6usize {
            for n in m..=7 {
                let k = n - m + 1;
                let g = rk_unl_rep_gf(m, 1, k);
                assert_eq!(g.set_one(&[Var::Y]), unl_pf_mn_gf(m, n));
            }
            let rep = rk_unl_rep_gf(m, 1, 1).set_one(&[Var::X]).rename(&[(Var::Y, Var::Q)]);
            assert_eq!(rep, rep_gf(m));
            let lucky = unl_pf_mn_gf(m, m);
            // Lucky cars are the complement of unlucky ones.
            let flipped: Polynomial = lucky
                .terms()
                .map(|(mono, coef)| {
                    let e = m as u32 - mono.exp(Var::X);
                    Polynomial::term(coef.clone(), Monomial::var(Var::Q).with_exp(Var::Q, e))
                })
                .sum();
            assert_eq!(flipped, lucky_gf(m));
        }
    }

    #[test]
    fn ppf_corollary() {
        for len in 2..=7usize {
            let n = len as i64 - 1;
            let at_x1 = ppf_lel_one_gf(len).subst_values(&[(Var::X, int(1))]);
            let expect = (y() + c(n)).pow(n as u32) * (y() - c(1)) + c(n).pow(n as u32);
            assert_eq!(at_x1, expect, "len={len}");
        }
    }

    #[test]
    fn series_identities() {
        assert!(verify_upf_egf(0));
        assert!(verify_upf_egf(6));
        assert!(verify_dis_log_egf(1));
        assert!(verify_dis_log_egf(5));
        // Indexing by PF(n) instead of PF(n-1) breaks at t^2.
        assert!(dis_log_egf_holds(1, 0));
        assert!(!dis_log_egf_holds(2, 0));
        let q = upf_egf(4).subst_values(&[(Var::Y, int(1))]);
        assert_eq!(q.egf_coeffs()[4], c(75));
        let fub: Vec<_> = upf_egf(5)
            .subst_values(&[(Var::Y, int(1))])
            .egf_coeffs()
            .into_iter()
            .map(|p| p.as_constant().unwrap())
            .collect();
        assert_eq!(fub, [1, 1, 3, 13, 75, 541].map(int));
    }

    #[test]
    fn closed_upf_matches_recurrence() {
        for n in 0..=7 {
            assert_eq!(upf_closed(n), upf_rec(n));
        }
    }

    #[test]
    fn stirling_row() {
        let s = stirling2(4);
        assert_eq!(s[4][2], int(7));
        assert_eq!(s[4][4], int(1));
    }
}
