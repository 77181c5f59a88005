//! Resolves a `gf` request to an oracle sum, a recurrence or a product.

use clap::ValueEnum;
use parkfn::closed_forms as cf;
use parkfn::exactalg::{Polynomial, Var};
use parkfn::oracle::{gf_over, gf_over_prob, Domain, Exec};
use parkfn::parking::{Stat, UVector};
use parkfn::recurrences as rec;
use parkfn::{ParkError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Pf,
    Pfmn,
    Rk,
    Ppf,
    Upf,
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Recurrence,
    Closed,
}

pub struct Request {
    pub family: Family,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub k: Option<usize>,
    pub u: Option<Vec<usize>>,
    pub stats: Vec<(Var, Stat)>,
    pub method: Method,
    pub prob: bool,
    pub exec: Exec,
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| ParkError::Invalid(format!("--{flag} is required for this family")))
}

impl Request {
    pub fn domain(&self) -> Result<Domain> {
        Ok(match self.family {
            Family::Pf => Domain::Pf { n: need(self.n, "n")? },
            Family::Pfmn => Domain::PfMn { m: need(self.m, "m")?, n: need(self.n, "n")? },
            Family::Rk => Domain::Rk { m: need(self.m, "m")?, r: need(self.r, "r")?, k: need(self.k, "k")? },
            Family::Ppf => Domain::Ppf { n: need(self.n, "n")? },
            Family::Upf => Domain::Upf { n: need(self.n, "n")? },
            Family::U => {
                let u = self.u.clone().ok_or_else(|| ParkError::Invalid("--u is required".into()))?;
                Domain::U(UVector::new(u)?)
            }
        })
    }
}

/// Parses `x=unl,y=dis`.
pub fn parse_stats(s: &str) -> Result<Vec<(Var, Stat)>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let (v, st) = part
                .split_once('=')
                .ok_or_else(|| ParkError::Parse(format!("expected var=stat, got {part:?}")))?;
            Ok((v.trim().parse()?, st.trim().parse()?))
        })
        .collect()
}

/// A formula computing `poly` in fixed variables for fixed statistics.
struct Candidate {
    canon: Vec<(Var, Stat)>,
    build: Box<dyn Fn() -> Polynomial>,
}

fn cand(canon: &[(Var, Stat)], build: impl Fn() -> Polynomial + 'static) -> Candidate {
    Candidate { canon: canon.to_vec(), build: Box::new(build) }
}

/// Restricts a candidate to the requested statistics and renames its
/// variables, or `None` if it does not carry them all.
fn project(c: &Candidate, want: &[(Var, Stat)]) -> Option<Polynomial> {
    let mut bindings = Vec::new();
    let mut used = Vec::new();
    for &(v, s) in want {
        let &(cv, _) = c.canon.iter().find(|(_, cs)| *cs == s)?;
        if used.contains(&cv) {
            return None;
        }
        used.push(cv);
        bindings.push((cv, Polynomial::var(v)));
    }
    let unused: Vec<Var> = c.canon.iter().map(|w| w.0).filter(|v| !used.contains(v)).collect();
    Some((c.build)().set_one(&unused).subst(&bindings))
}

const X: Var = Var::X;
const Y: Var = Var::Y;
const Z: Var = Var::Z;
const W: Var = Var::W;
const Q: Var = Var::Q;

fn four() -> [(Var, Stat); 4] {
    [(X, Stat::Unl), (Y, Stat::Dis), (Z, Stat::Des), (W, Stat::Rlm)]
}

fn same_as_index(stats: &[(Var, Stat)]) -> Option<usize> {
    stats.iter().find_map(|(_, s)| match s {
        Stat::SameAs(i) => Some(*i),
        Stat::Lel => Some(1),
        Stat::Nlel => Some(2),
        _ => None,
    })
}

fn recurrences(req: &Request) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    match (req.family, req.prob) {
        (Family::Pf, prob) => {
            let n = need(req.n, "n")?;
            out.push(cand(&four(), move || if prob { rec::pp_rec(n) } else { rec::p_rec(n) }));
            if !prob {
                out.push(cand(&[(X, Stat::Unl), (Y, Stat::Lel)], move || rec::pair_rec_lel(n)));
                out.push(cand(&[(X, Stat::Unl), (Y, Stat::One)], move || rec::pair_rec_one(n)));
            }
        }
        (Family::Pfmn, prob) => {
            let (m, n) = (need(req.m, "m")?, need(req.n, "n")?);
            out.push(cand(&four(), move || if prob { rec::pp_mn_rec(m, n) } else { rec::p_mn_rec(m, n) }));
        }
        (Family::Upf, false) => {
            let n = need(req.n, "n")?;
            out.push(cand(&[(Y, Stat::Dis)], move || rec::upf_rec(n)));
        }
        (Family::U, false) => {
            let Domain::U(u) = req.domain()? else { unreachable!() };
            let (a, b, c) = (u.clone(), u.clone(), u);
            out.push(cand(&[(X, Stat::Unl)], move || rec::u_rec_a(&a)));
            out.push(cand(&[(Y, Stat::One)], move || rec::u_rec_b(&b)));
            out.push(cand(&[(Z, Stat::Lel)], move || rec::u_rec_c(&c)));
        }
        _ => {}
    }
    Ok(out)
}

/// `(r, k)` products, which also hold branch-weighted.
fn rk_closed(m: usize, r: usize, k: usize, s: Option<usize>) -> Vec<Candidate> {
    let mut out = vec![
        cand(&[(X, Stat::Unl), (Y, Stat::Rep)], move || cf::rk_unl_rep_gf(m, r, k)),
        cand(&[(X, Stat::Unl), (Y, Stat::Lel)], move || cf::rk_unl_lel_gf(m, r, k)),
    ];
    if m >= 2 {
        out.push(cand(&[(X, Stat::Unl), (Y, Stat::SameAs(2))], move || cf::rk_unl_lel_gf(m, r, k)));
        out.push(cand(&[(X, Stat::Unl), (Y, Stat::Nlel)], move || cf::rk_unl_lel_gf(m, r, k)));
    }
    if let Some(s) = s.filter(|&s| (1..=m).contains(&s)) {
        let canon = [(Y, Stat::SameAs(s))];
        out.push(cand(&canon, move || cf::rk_same_as_gf(m, r, k)));
        out.push(cand(&[(Y, Stat::Lel)], move || cf::rk_same_as_gf(m, r, k)));
        if m >= 2 {
            out.push(cand(&[(Y, Stat::Nlel)], move || cf::rk_same_as_gf(m, r, k)));
        }
    }
    out
}

fn closed(req: &Request) -> Result<Vec<Candidate>> {
    let s = same_as_index(&req.stats);
    let mut out = Vec::new();
    match req.family {
        Family::Pf => {
            let n = need(req.n, "n")?;
            out.extend(rk_closed(n, 1, 1, s));
            if !req.prob {
                out.push(cand(&[(Q, Stat::Lucky)], move || cf::lucky_gf(n)));
                out.push(cand(&[(Q, Stat::Rep)], move || cf::rep_gf(n)));
                out.push(cand(&[(Y, Stat::One)], move || cf::ones_gf(n)));
                out.push(cand(&[(X, Stat::Lel), (Y, Stat::One), (Z, Stat::Unl)], move || cf::master_gf(n)));
                if n >= 2 {
                    out.push(cand(&[(X, Stat::Nlel), (Y, Stat::One), (Z, Stat::Unl)], move || cf::correspondence_gf(n)));
                    out.push(cand(&[(X, Stat::Lel), (Y, Stat::Nlel), (Z, Stat::Unl)], move || cf::contrast_gf(n)));
                }
            }
        }
        Family::Pfmn => {
            let (m, n) = (need(req.m, "m")?, need(req.n, "n")?);
            if m == 0 || m > n {
                return Err(ParkError::Domain(format!("need 1 <= m <= n, got m={m}, n={n}")));
            }
            out.extend(rk_closed(m, 1, n - m + 1, s));
        }
        Family::Rk => {
            let (m, r, k) = (need(req.m, "m")?, need(req.r, "r")?, need(req.k, "k")?);
            out.extend(rk_closed(m, r, k, s));
        }
        Family::Ppf if !req.prob => {
            let n = need(req.n, "n")?;
            out.push(cand(&[(X, Stat::Unl), (Y, Stat::Rep)], move || cf::ppf_unl_rep_gf(n)));
            out.push(cand(&[(X, Stat::Unl), (Y, Stat::Lel)], move || cf::ppf_unl_lel_gf(n)));
            if let Some(s) = s.filter(|&s| (1..=n).contains(&s)) {
                out.push(cand(&[(Y, Stat::SameAs(s))], move || cf::ppf_same_as_gf(n)));
                out.push(cand(&[(Y, Stat::Lel)], move || cf::ppf_same_as_gf(n)));
            }
            if n >= 2 {
                out.push(cand(&[(X, Stat::Lel), (Y, Stat::One)], move || cf::ppf_lel_one_gf(n)));
            }
        }
        Family::Upf if !req.prob => {
            let n = need(req.n, "n")?;
            out.push(cand(&[(Y, Stat::Dis)], move || cf::upf_closed(n)));
        }
        _ => {}
    }
    Ok(out)
}

/// Computes the requested generating polynomial.
pub fn compute(req: &Request) -> Result<Polynomial> {
    let domain = req.domain()?;
    match req.method {
        Method::Oracle if req.prob => gf_over_prob(&domain, &req.stats, req.exec),
        Method::Oracle => gf_over(&domain, &req.stats, req.exec),
        Method::Recurrence | Method::Closed => {
            let cands = if req.method == Method::Recurrence { recurrences(req)? } else { closed(req)? };
            cands
                .iter()
                .find_map(|c| project(c, &req.stats))
                .ok_or_else(|| {
                    ParkError::Unsupported(format!(
                        "no {:?} formula for family {:?} with these statistics{}",
                        req.method,
                        req.family,
                        if req.prob { " under the probabilistic protocol" } else { "" }
                    ))
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(family: Family, n: usize, stats: &str, method: Method) -> Request {
        Request {
            family,
            n: Some(n),
            m: None,
            r: None,
            k: None,
            u: None,
            stats: parse_stats(stats).unwrap(),
            method,
            prob: false,
            exec: Exec::Sequential,
        }
    }

    #[test]
    fn methods_agree() {
        for n in 1..=5 {
            for stats in ["x=unl,y=dis,z=des,w=rlm", "y=dis", "x=dis,y=unl", "w=unl,x=one"] {
                let o = compute(&req(Family::Pf, n, stats, Method::Oracle)).unwrap();
                let r = compute(&req(Family::Pf, n, stats, Method::Recurrence)).unwrap();
                assert_eq!(o, r, "{stats} n={n}");
            }
            for stats in ["x=unl,y=rep", "q=lucky", "y=lel,x=one,z=unl", "y=same3", "x=unl"] {
                if stats == "y=same3" && n < 3 {
                    continue;
                }
                let o = compute(&req(Family::Pf, n, stats, Method::Oracle)).unwrap();
                let c = compute(&req(Family::Pf, n, stats, Method::Closed)).unwrap();
                assert_eq!(o, c, "{stats} n={n}");
            }
        }
    }

    #[test]
    fn unsupported_combination() {
        let e = compute(&req(Family::Pf, 3, "x=des", Method::Closed)).unwrap_err();
        assert!(matches!(e, ParkError::Unsupported(_)));
        assert!(parse_stats("x:unl").is_err());
        assert!(parse_stats("v=unl").is_err());
    }
}
