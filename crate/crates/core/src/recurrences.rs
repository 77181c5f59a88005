//! Recurrences for the generating polynomials, evaluated bottom-up.

use std::collections::HashMap;

use crate::exactalg::{binomial, multinomial, Polynomial, Var};
use crate::parking::UVector;

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

fn binom(n: usize, k: usize) -> Polynomial {
    Polynomial::constant(binomial(n as i64, k as i64))
}

/// `binom(n, k)` with `n` or `k` possibly negative, zero out of range.
fn binom_i(n: i64, k: i64) -> Polynomial {
    Polynomial::constant(binomial(n, k))
}

/// `x y + x y^2 + ... + x y^d`.
fn xy_run(d: usize) -> Polynomial {
    x() * Polynomial::geometric(Var::Y, 1, d as u32)
}

/// Table `P_0..=P_n` of the four-variable recurrence; the probabilistic
/// version weights forward runs by `p` and adds backward runs with `1-p`.
fn four_var(n: usize, probabilistic: bool) -> Vec<Polynomial> {
    let mut table = vec![Polynomial::one()];
    let fwd = if probabilistic { p() } else { Polynomial::one() };
    let bwd = Polynomial::one() - p();
    for k in 1..=n {
        let at_w1: Vec<Polynomial> = table.iter().map(|q| q.set_one(&[Var::W])).collect();
        let mut next = (Polynomial::one() + &fwd * &xy_run(k - 1)) * w() * &at_w1[k - 1];
        for i in 0..k.saturating_sub(1) {
            let mut factor = Polynomial::one() + &fwd * &xy_run(i);
            if probabilistic {
                factor += &bwd * &xy_run(k - i - 1);
            }
            next += binom(k - 1, i) * factor * z() * w() * &at_w1[i] * &table[k - i - 1];
        }
        table.push(next);
    }
    table
}

/// `P_n(x, y, z, w)` for unluckiness, displacement, descents and
/// right-to-left maxima over `PF(n)`.
pub fn p_rec(n: usize) -> Polynomial {
    four_var(n, false).pop().expect("table has n+1 entries")
}

/// The same recurrence for the tree statistics `nld, inv, lev-1, deg0`,
/// seeded and tabulated independently.
pub fn q_rec(n: usize) -> Polynomial {
    let mut q: HashMap<usize, Polynomial> = HashMap::from([(0, Polynomial::one())]);
    for k in 1..=n {
        let leading = (Polynomial::one() + xy_run(k - 1)) * w() * q[&(k - 1)].set_one(&[Var::W]);
        let rest: Polynomial = (0..k.saturating_sub(1))
            .map(|i| {
                binom(k - 1, i)
                    * (Polynomial::one() + xy_run(i))
                    * z()
                    * w()
                    * q[&i].set_one(&[Var::W])
                    * &q[&(k - i - 1)]
            })
            .sum();
        q.insert(k, leading + rest);
    }
    q.remove(&n).expect("filled up to n")
}

/// `P'_n(x, y, z, w)` under the probabilistic protocol, a polynomial in `p`.
pub fn pp_rec(n: usize) -> Polynomial {
    four_var(n, true).pop().expect("table has n+1 entries")
}

/// `P'_n(x, y)`, which carries no `p`.
pub fn pp_xy_rec(n: usize) -> Polynomial {
    let mut t = vec![Polynomial::one()];
    for k in 1..=n {
        let next = (0..k)
            .map(|i| binom(k - 1, i) * (Polynomial::one() + xy_run(i)) * &t[i] * &t[k - i - 1])
            .sum();
        t.push(next);
    }
    t.pop().expect("nonempty")
}

/// Weak compositions of `m` into `parts` parts.
fn compositions(m: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=m {
        for mut rest in compositions(m - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn composition_sum(m: usize, n: usize, table: &[Polynomial]) -> Polynomial {
    compositions(m, n - m + 1)
        .into_iter()
        .map(|s| {
            let parts: Vec<i64> = s.iter().map(|&k| k as i64).collect();
            Polynomial::constant(multinomial(m as i64, &parts))
                * s.iter().map(|&k| table[k].clone()).product::<Polynomial>()
        })
        .sum()
}

/// `P_{m,n}`: `m` cars on `n` spots, split at the never-tried spots.
pub fn p_mn_rec(m: usize, n: usize) -> Polynomial {
    assert!(m <= n, "PF(m, n) needs m <= n");
    composition_sum(m, n, &four_var(m, false))
}

/// `P'_{m,n}` under the probabilistic protocol.
pub fn pp_mn_rec(m: usize, n: usize) -> Polynomial {
    assert!(m <= n, "PF(m, n) needs m <= n");
    composition_sum(m, n, &four_var(m, true))
}

/// Total displacement `sum_{PF(n)} q^dis`.
pub fn kreweras_dis(n: usize) -> Polynomial {
    let mut t = vec![Polynomial::one()];
    for k in 0..n {
        let next = (0..=k)
            .map(|i| binom(k, i) * Polynomial::geometric(Var::Q, 0, i as u32) * &t[i] * &t[k - i])
            .sum();
        t.push(next);
    }
    t.swap_remove(n)
}

/// `sum_{PF(n)} x^unl y^lel`, conditioning on where the last car parks
/// relative to the first car's preference.
pub fn pair_rec_lel(n: usize) -> Polynomial {
    let mut t = vec![Polynomial::one()];
    for k in 1..=n {
        if k == 1 {
            t.push(y());
            continue;
        }
        let ones: Vec<Polynomial> = t.iter().map(|q| q.set_one(&[Var::Y])).collect();
        let kk = k as i64;
        let mut next = Polynomial::zero();
        for i in 0..k {
            let ii = i as i64;
            let a = binom_i(kk - 2, ii - 1)
                * (x() * y() + x() * c(ii - 1) + c(1))
                * &t[i]
                * &ones[k - i - 1];
            let b = binom_i(kk - 2, ii) * (x() * c(ii) + c(1)) * &ones[i] * &t[k - i - 1];
            next += a + b;
        }
        t.push(next);
    }
    t.swap_remove(n)
}

/// `sum_{PF(n)} x^unl y^one`.
pub fn pair_rec_one(n: usize) -> Polynomial {
    let mut t = vec![Polynomial::one()];
    for k in 1..=n {
        let ones: Vec<Polynomial> = t.iter().map(|q| q.set_one(&[Var::Y])).collect();
        let mut next = y() * &ones[k - 1];
        for i in 1..k {
            next += binom(k - 1, i)
                * (x() * y() + x() * c(i as i64 - 1) + c(1))
                * &t[i]
                * &ones[k - i - 1];
        }
        t.push(next);
    }
    t.swap_remove(n)
}

/// Unit-interval parking functions by displacement, `sum y^dis`.
pub fn upf_rec(n: usize) -> Polynomial {
    let mut t = vec![Polynomial::one()];
    for k in 1..=n {
        let conv: Polynomial = (0..k).map(|i| binom(k - 1, i) * &t[i] * &t[k - i - 1]).sum();
        t.push((y() + c(1)) * conv - y() * &t[k - 1]);
    }
    t.swap_remove(n)
}

/// `u_1 = (u_1..u_i)` and `u_2 = (u_{i+2} - u_{i+1}, ..., u_m - u_{i+1})`.
fn split(u: &[usize], i: usize) -> (Vec<usize>, Vec<usize>) {
    let pivot = u[i];
    (u[..i].to_vec(), u[i + 1..].iter().map(|&v| v - pivot).collect())
}

/// Memo for the u-vector recurrences, keyed by the vector itself.
#[derive(Default)]
pub struct UMemo {
    a: HashMap<Vec<usize>, Polynomial>,
    b: HashMap<Vec<usize>, Polynomial>,
    c: HashMap<Vec<usize>, Polynomial>,
}

impl UMemo {
    pub fn new() -> Self {
        Self::default()
    }

    /// `sum_{PF(u)} x^unl`.
    pub fn a(&mut self, u: &[usize]) -> Polynomial {
        if u.is_empty() {
            return Polynomial::one();
        }
        if let Some(v) = self.a.get(u) {
            return v.clone();
        }
        let m = u.len();
        let mut total = Polynomial::zero();
        for i in 0..m {
            let (u1, u2) = split(u, i);
            let ii = i as i64;
            total += binom(m - 1, i)
                * (x() * c(ii) + c(u[i] as i64 - ii))
                * self.a(&u1)
                * self.a(&u2);
        }
        self.a.insert(u.to_vec(), total.clone());
        total
    }

    /// `sum_{PF(u)} y^one`.
    pub fn b(&mut self, u: &[usize]) -> Polynomial {
        if u.is_empty() {
            return Polynomial::one();
        }
        if let Some(v) = self.b.get(u) {
            return v.clone();
        }
        let m = u.len();
        let mut total = Polynomial::zero();
        for i in 0..m {
            let (u1, u2) = split(u, i);
            total += binom(m - 1, i)
                * (y() + c(u[i] as i64 - 1))
                * self.b(&u1)
                * self.b(&u2).set_one(&[Var::Y]);
        }
        self.b.insert(u.to_vec(), total.clone());
        total
    }

    /// `sum_{PF(u)} z^lel`.
    pub fn c(&mut self, u: &[usize]) -> Polynomial {
        match u.len() {
            0 => return Polynomial::one(),
            1 => return z() * c(u[0] as i64),
            _ => {}
        }
        if let Some(v) = self.c.get(u) {
            return v.clone();
        }
        let m = u.len() as i64;
        let mut total = Polynomial::zero();
        for i in 0..u.len() {
            let (u1, u2) = split(u, i);
            let ii = i as i64;
            let c1 = self.c(&u1);
            let c2 = self.c(&u2);
            total += binom_i(m - 2, ii - 1)
                * (z() + c(u[i] as i64 - 1))
                * &c1
                * c2.set_one(&[Var::Z]);
            total += binom_i(m - 2, ii) * c(u[i] as i64) * c1.set_one(&[Var::Z]) * &c2;
        }
        self.c.insert(u.to_vec(), total.clone());
        total
    }
}

pub fn u_rec_a(u: &UVector) -> Polynomial {
    UMemo::new().a(u.as_slice())
}

pub fn u_rec_b(u: &UVector) -> Polynomial {
    UMemo::new().b(u.as_slice())
}

pub fn u_rec_c(u: &UVector) -> Polynomial {
    UMemo::new().c(u.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn base_cases() {
        assert_eq!(p_rec(0), Polynomial::one());
        assert_eq!(q_rec(0), Polynomial::one());
        assert_eq!(p_rec(2), w() + x() * y() * w() + z() * w() * w());
        assert_eq!(pp_rec(1), w());
        assert_eq!(pp_xy_rec(0), Polynomial::one());
        assert_eq!(pp_xy_rec(2), c(2) + x() * y());
        assert_eq!(kreweras_dis(1), Polynomial::one());
        assert_eq!(kreweras_dis(2), c(2) + Polynomial::var(Var::Q));
        assert_eq!(pair_rec_lel(1), y());
        assert_eq!(pair_rec_one(1), y());
        assert_eq!(pair_rec_lel(2), c(2) * y() + x() * y() * y());
        assert_eq!(upf_rec(0), Polynomial::one());
        assert_eq!(upf_rec(2), y() + c(2));
    }

    #[test]
    fn p_and_q_recurrences_agree() {
        for n in 0..=8 {
            assert_eq!(p_rec(n), q_rec(n), "n={n}");
        }
    }

    #[test]
    fn probabilistic_reduces() {
        for n in 0..=6 {
            let pp = pp_rec(n);
            assert_eq!(pp.subst_values(&[(Var::P, int(1))]), p_rec(n));
            let xy = pp.set_one(&[Var::Z, Var::W]);
            assert!(xy.is_free_of(Var::P), "n={n}");
            assert_eq!(xy, pp_xy_rec(n));
        }
    }

    #[test]
    fn displacement_marginal() {
        for n in 0..=6 {
            let dis = p_rec(n)
                .set_one(&[Var::X, Var::Z, Var::W])
                .rename(&[(Var::Y, Var::Q)]);
            assert_eq!(dis, kreweras_dis(n), "n={n}");
        }
    }

    #[test]
    fn pair_recurrences_agree() {
        for n in 0..=7 {
            assert_eq!(pair_rec_lel(n), pair_rec_one(n), "n={n}");
        }
    }

    #[test]
    fn square_composition_is_p() {
        for n in 0..=5 {
            assert_eq!(p_mn_rec(n, n), p_rec(n));
        }
    }

    #[test]
    fn fubini_values() {
        let got: Vec<_> = (1..=5).map(|n| upf_rec(n).coeff_sum()).collect();
        assert_eq!(got, [1, 3, 13, 75, 541].map(int));
    }

    #[test]
    fn u_vector_small_cases() {
        let mut memo = UMemo::new();
        assert_eq!(memo.a(&[1, 2]), x() + c(2));
        assert_eq!(memo.a(&[1]), Polynomial::one());
        assert_eq!(memo.b(&[1]), y());
        assert_eq!(memo.c(&[1]), z());
        assert_eq!(memo.c(&[1, 2]), z() * z() + c(2) * z());
        assert_eq!(memo.a(&[]), Polynomial::one());
        let u = UVector::new(vec![2, 3, 5]).unwrap();
        let count = u_rec_a(&u).coeff_sum();
        assert_eq!(u_rec_b(&u).coeff_sum(), count);
        assert_eq!(u_rec_c(&u).coeff_sum(), count);
    }
}
