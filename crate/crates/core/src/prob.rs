//! The probabilistic parking protocol, expanded exactly over every
//! coin-flip sequence.
//!
//! A car whose preferred spot is free parks there. A blocked car flips a
//! coin once: heads (weight `p`) scans forward, tails (weight `1-p`) scans
//! backward. Leaving the street in either direction fails the branch.

use crate::exactalg::{Polynomial, Var};
use crate::parking::{stats, Outcome, PrefVector, Stat, UVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flip {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTrace {
    /// `(car, direction)` with 1-based cars, in the order flipped.
    pub flips: Vec<(usize, Flip)>,
    /// `Err(car)` names the first car that left the street.
    pub outcome: Result<Outcome, usize>,
}

impl BranchTrace {
    pub fn heads(&self) -> u32 {
        self.flips.iter().filter(|f| f.1 == Flip::Forward).count() as u32
    }

    pub fn tails(&self) -> u32 {
        self.flips.len() as u32 - self.heads()
    }

    /// `p^heads (1-p)^tails`.
    pub fn weight(&self) -> Polynomial {
        branch_weight(self.heads(), self.tails())
    }
}

pub fn branch_weight(heads: u32, tails: u32) -> Polynomial {
    let p = Polynomial::var(Var::P);
    let q = Polynomial::one() - p.clone();
    p.pow(heads) * q.pow(tails)
}

/// Every branch of the protocol, depth first with forward before backward.
pub fn park_probabilistic(v: &PrefVector) -> Vec<BranchTrace> {
    let mut out = Vec::new();
    let mut taken = vec![false; v.spots() + 1];
    let mut occupied = Vec::with_capacity(v.len());
    let mut flips = Vec::new();
    expand(v, &mut taken, &mut occupied, &mut flips, &mut out);
    out
}

fn expand(
    v: &PrefVector,
    taken: &mut [bool],
    occupied: &mut Vec<usize>,
    flips: &mut Vec<(usize, Flip)>,
    out: &mut Vec<BranchTrace>,
) {
    let i = occupied.len();
    let n = v.spots();
    if i == v.len() {
        out.push(BranchTrace {
            flips: flips.clone(),
            outcome: Ok(Outcome {
                occupied: occupied.clone(),
                spots: n,
            }),
        });
        return;
    }
    let a = v.prefs()[i];
    let park = |s: usize, taken: &mut [bool], occupied: &mut Vec<usize>, flips: &mut Vec<_>, out: &mut Vec<_>| {
        taken[s] = true;
        occupied.push(s);
        expand(v, taken, occupied, flips, out);
        occupied.pop();
        taken[s] = false;
    };
    if !taken[a] {
        park(a, taken, occupied, flips, out);
        return;
    }
    for dir in [Flip::Forward, Flip::Backward] {
        flips.push((i + 1, dir));
        let spot = match dir {
            Flip::Forward => (a + 1..=n).find(|&s| !taken[s]),
            Flip::Backward => (1..a).rev().find(|&s| !taken[s]),
        };
        match spot {
            Some(s) => park(s, taken, occupied, flips, out),
            None => out.push(BranchTrace {
                flips: flips.clone(),
                outcome: Err(i + 1),
            }),
        }
        flips.pop();
    }
}

/// Which successful outcomes count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Event {
    /// Every car parks.
    AllPark,
    /// Every car parks and the occupied spots, sorted, are dominated by `u`.
    Dominated(UVector),
}

impl Event {
    pub fn accepts(&self, out: &Outcome) -> bool {
        match self {
            Event::AllPark => true,
            Event::Dominated(u) => {
                let mut s = out.occupied.clone();
                s.sort_unstable();
                s.len() == u.len() && s.iter().zip(u.as_slice()).all(|(b, u)| b <= u)
            }
        }
    }
}

/// Total weight of branches that succeed and satisfy `event`.
pub fn prob_event(v: &PrefVector, event: &Event) -> Polynomial {
    park_probabilistic(v)
        .into_iter()
        .filter(|b| matches!(&b.outcome, Ok(o) if event.accepts(o)))
        .map(|b| b.weight())
        .sum()
}

/// `P(v in PF(n))` for a vector of length `n` on `n` spots.
pub fn prob_pf(v: &PrefVector) -> Polynomial {
    prob_event(v, &Event::AllPark)
}

/// `P(v in PF(m, n))`: all `m` cars park on the street of `v`.
pub fn prob_pf_mn(v: &PrefVector) -> Polynomial {
    prob_event(v, &Event::AllPark)
}

/// `P(v in PF_m(r, k))` on a street of `u_m = k + (m-1) r` spots.
pub fn prob_rk(prefs: &[usize], r: usize, k: usize) -> crate::Result<Polynomial> {
    let u = UVector::rk(prefs.len(), r, k)?;
    prob_u(prefs, &u)
}

/// `P(v in PF(u))` on a street of `u_m` spots.
pub fn prob_u(prefs: &[usize], u: &UVector) -> crate::Result<Polynomial> {
    let v = PrefVector::new(prefs.to_vec(), u.last())?;
    Ok(prob_event(&v, &Event::Dominated(u.clone())))
}

/// `sum over successful branches of weight * prod var^stat`.
pub fn weighted_branch_sum(v: &PrefVector, event: &Event, weights: &[(Var, Stat)]) -> Polynomial {
    park_probabilistic(v)
        .into_iter()
        .filter_map(|b| {
            let out = b.outcome.as_ref().ok().filter(|o| event.accepts(o))?;
            let rec = stats(v, out);
            let mut m = crate::exactalg::Monomial::ONE;
            for &(var, s) in weights {
                m = m.with_exp(var, m.exp(var) + rec.get(s, v.prefs()) as u32);
            }
            Some(b.weight().mul_monomial(&m))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::parking::is_parking_function;

    fn pv(p: &[usize]) -> PrefVector {
        PrefVector::square(p.to_vec()).unwrap()
    }

    fn p() -> Polynomial {
        Polynomial::var(Var::P)
    }

    #[test]
    fn triple_two() {
        let expect = (p() * (Polynomial::one() - p())).scale(&int(2));
        assert_eq!(prob_pf(&pv(&[2, 2, 2])), expect);
    }

    #[test]
    fn no_collisions_single_branch() {
        let b = park_probabilistic(&pv(&[1, 2, 3]));
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].weight(), Polynomial::one());
        assert!(b[0].outcome.is_ok());
    }

    #[test]
    fn backward_rescue_in_rk_event() {
        let got = prob_rk(&[3, 3], 2, 2).unwrap();
        assert_eq!(got, Polynomial::one() - p());
    }

    #[test]
    fn weights_conserve_and_reduce_to_deterministic() {
        for n in 1..=4usize {
            let total = n.pow(n as u32);
            for mut idx in 0..total {
                let mut v = vec![0; n];
                for s in v.iter_mut() {
                    *s = idx % n + 1;
                    idx /= n;
                }
                let branches = park_probabilistic(&pv(&v));
                let w: Polynomial = branches.iter().map(|b| b.weight()).sum();
                assert_eq!(w, Polynomial::one());
                let at_one = prob_pf(&pv(&v)).subst_values(&[(Var::P, int(1))]);
                let expect = if is_parking_function(&v) { 1 } else { 0 };
                assert_eq!(at_one, Polynomial::from_int(expect), "{v:?}");
            }
        }
    }

    #[test]
    fn two_cars_weighted() {
        use Stat::*;
        let ws = [(Var::X, Unl), (Var::Y, Dis), (Var::Z, Des), (Var::W, Rlm)];
        let total: Polynomial = [[1, 1], [1, 2], [2, 1], [2, 2]]
            .iter()
            .map(|v| weighted_branch_sum(&pv(v), &Event::AllPark, &ws))
            .sum();
        let x = Polynomial::var(Var::X);
        let y = Polynomial::var(Var::Y);
        let z = Polynomial::var(Var::Z);
        let w = Polynomial::var(Var::W);
        let expect = w.clone()
            + p() * x.clone() * y.clone() * w.clone()
            + z.clone() * w.clone() * w.clone()
            + (Polynomial::one() - p()) * x * y * z * w.clone() * w;
        assert_eq!(total, expect);
        assert_eq!(
            total.subst_values(&[(Var::P, rat(1, 3))]).set_one(&[Var::X, Var::Y, Var::Z, Var::W]),
            Polynomial::from_int(3)
        );
    }
}
