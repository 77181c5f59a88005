//! Named identity suites. Each check compares independently computed
//! sides: brute-force tallies against recurrences, products or laws.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Deserialize;

use crate::closed_forms as cf;
use crate::distributions::{self as dist, Pmf, UrLaw};
use crate::exactalg::{int, rpow, Polynomial, Var};
use crate::oracle::{
    count, count_by, count_by_prob, count_with, count_with_prob, gf_over, gf_over_prob,
    poly_from_counts, prob_poly_from_counts, tree_gf, Domain, Exec,
};
use crate::parking::{is_parking_function, park_deterministic, stats, PrefVector, Stat, UVector};
use crate::prob::{prob_pf, prob_rk};
use crate::recurrences as rec;
use crate::trees::{prufer_decode, prufer_encode, prufer_to_pf_circular, tree_to_pf_bfs, TreeStat};
use crate::{ParkError, Result};

/// Acceptance bound on the total variation distance at the largest size.
pub const TV_BOUND: f64 = 0.01;
/// Acceptance bound on the Kolmogorov distance at the largest size.
pub const KS_BOUND: f64 = 0.05;
/// Sizes at which the limit distances are computed.
pub const LIMIT_SIZES: [usize; 3] = [50, 100, 200];
/// Cap on the circle size of the `(r, k)` grid: `(k + mr)^m`.
pub const RK_GRID_CAP: u64 = 1_000_000;

const TABLE1: &str = include_str!("../data/table1.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Counting,
    TreeRecurrence,
    Probabilistic,
    RkProducts,
    PairStatistics,
    Counterexamples,
    Prime,
    UnitInterval,
    UVectors,
    Displacement,
    Limits,
    Table1,
    Series,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Counting,
        Suite::TreeRecurrence,
        Suite::Probabilistic,
        Suite::RkProducts,
        Suite::PairStatistics,
        Suite::Counterexamples,
        Suite::Prime,
        Suite::UnitInterval,
        Suite::UVectors,
        Suite::Displacement,
        Suite::Limits,
        Suite::Table1,
        Suite::Series,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counting => "counting",
            Suite::TreeRecurrence => "tree-recurrence",
            Suite::Probabilistic => "probabilistic",
            Suite::RkProducts => "rk-products",
            Suite::PairStatistics => "pair-statistics",
            Suite::Counterexamples => "counterexamples",
            Suite::Prime => "prime",
            Suite::UnitInterval => "unit-interval",
            Suite::UVectors => "u-vectors",
            Suite::Displacement => "displacement",
            Suite::Limits => "limits",
            Suite::Table1 => "table1",
            Suite::Series => "series",
        }
    }

    /// Default size bound: `n` or `m`, the series order, or the largest
    /// limit size.
    pub fn default_max(self) -> usize {
        match self {
            Suite::Counting => 7,
            Suite::TreeRecurrence => 5,
            Suite::PairStatistics => 6,
            Suite::Probabilistic => 4,
            Suite::RkProducts => 5,
            Suite::Counterexamples => 5,
            Suite::Prime | Suite::UnitInterval | Suite::Displacement => 6,
            Suite::UVectors => 4,
            Suite::Limits => 200,
            Suite::Table1 => 3,
            Suite::Series => 6,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ParkError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ParkError::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct Params {
    /// Overrides [`Suite::default_max`].
    pub max: Option<usize>,
    pub exec: Exec,
    /// Seed for the sampled u-vectors.
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params { max: None, exec: Exec::Parallel, seed: 20 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn pass_count(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

fn clip(s: String) -> String {
    const MAX: usize = 240;
    if s.len() <= MAX {
        return s;
    }
    let cut = (0..=MAX).rev().find(|&i| s.is_char_boundary(i)).unwrap_or(0);
    format!("{}...", &s[..cut])
}

impl Checks {
    fn ok(&mut self, label: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.0.push(Check { label: label.into(), pass, detail: clip(detail.into()) });
    }

    fn eq<T: PartialEq + fmt::Display>(&mut self, label: impl Into<String>, got: &T, want: &T) {
        let pass = got == want;
        let detail = if pass { String::new() } else { format!("got {got}; want {want}") };
        self.ok(label, pass, detail);
    }

    fn eq_dbg<T: PartialEq + fmt::Debug>(&mut self, label: impl Into<String>, got: &T, want: &T) {
        let pass = got == want;
        let detail = if pass { String::new() } else { format!("got {got:?}; want {want:?}") };
        self.ok(label, pass, detail);
    }

    fn report(self, suite: Suite) -> Report {
        Report { suite, checks: self.0 }
    }
}

/// Runs one suite. Guard overflows and domain errors propagate.
pub fn run(suite: Suite, params: &Params) -> Result<Report> {
    let max = params.max.unwrap_or(suite.default_max());
    let exec = params.exec;
    let mut c = Checks::default();
    match suite {
        Suite::Counting => counting(&mut c, max, exec)?,
        Suite::TreeRecurrence => tree_recurrence(&mut c, max, exec)?,
        Suite::Probabilistic => probabilistic(&mut c, max, exec)?,
        Suite::RkProducts => rk_products(&mut c, max, exec)?,
        Suite::PairStatistics => pair_statistics(&mut c, max, exec)?,
        Suite::Counterexamples => counterexamples(&mut c, max, exec)?,
        Suite::Prime => prime(&mut c, max, exec)?,
        Suite::UnitInterval => unit_interval(&mut c, max, exec)?,
        Suite::UVectors => u_vectors(&mut c, max, params.seed, exec)?,
        Suite::Displacement => displacement(&mut c, max, exec)?,
        Suite::Limits => limits(&mut c, max)?,
        Suite::Table1 => table1(&mut c)?,
        Suite::Series => series(&mut c, max),
    }
    Ok(c.report(suite))
}

fn num(v: u64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn counting(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    for n in 0..=max {
        let got = num(count(&Domain::Pf { n }, exec)?);
        c.eq(format!("|PF({n})| = (n+1)^(n-1)"), &got, &rpow(n as i64 + 1, n as i64 - 1));
    }
    for n in 2..=max.min(6) {
        let got = num(count(&Domain::Ppf { n }, exec)?);
        c.eq(format!("|PPF({n})| = (n-1)^(n-1)"), &got, &rpow(n as i64 - 1, n as i64 - 1));
    }
    for n in 1..=max.min(6) {
        for m in 1..=n {
            let got = num(count(&Domain::PfMn { m, n }, exec)?);
            let want = int((n - m + 1) as i64) * rpow(n as i64 + 1, m as i64 - 1);
            c.eq(format!("|PF({m},{n})| = (n-m+1)(n+1)^(m-1)"), &got, &want);
        }
    }
    for n in 1..=max.min(6) {
        // Length of the constant run at the start of the vector.
        let runs = count_with(&Domain::Pf { n }, exec, |v, _| {
            let p = v.prefs();
            let run = p.iter().take_while(|&&a| a == p[0]).count();
            vec![(p[0] == 1) as usize, run]
        })?;
        let ones: u64 = runs.iter().filter(|(k, _)| k[0] == 1).map(|(_, v)| v).sum();
        c.eq(format!("#{{PF({n}): a_1 = 1}} = 2(n+1)^(n-2)"), &num(ones), &(int(2) * rpow(n as i64 + 1, n as i64 - 2)));
        for k in 1..=n {
            let got: u64 = runs.iter().filter(|(key, _)| key[1] >= k).map(|(_, v)| v).sum();
            c.eq(
                format!("#{{PF({n}): a_1 = .. = a_{k}}} = (n+1)^(n-k)"),
                &num(got),
                &rpow(n as i64 + 1, (n - k) as i64),
            );
        }
    }
    Ok(())
}

const FOUR: [(Var, Stat); 4] = [(Var::X, Stat::Unl), (Var::Y, Stat::Dis), (Var::Z, Stat::Des), (Var::W, Stat::Rlm)];

fn tree_recurrence(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    let tree_weights = [
        (Var::X, TreeStat::Nld),
        (Var::Y, TreeStat::Inv),
        (Var::Z, TreeStat::ExtraLeaves),
        (Var::W, TreeStat::Deg0),
    ];
    for n in 0..=max.min(5) {
        let p = rec::p_rec(n);
        c.eq(format!("P_{n}: recurrence = tabulated recurrence"), &rec::q_rec(n), &p);
        c.eq(format!("P_{n}: recurrence = PF oracle"), &gf_over(&Domain::Pf { n }, &FOUR, exec)?, &p);
        c.eq(format!("P_{n}: recurrence = tree sum"), &tree_gf(n, &tree_weights), &p);
    }
    for n in 1..=max.min(5) {
        for m in 1..=n {
            c.eq(
                format!("P_{{{m},{n}}}: composition sum = oracle"),
                &rec::p_mn_rec(m, n),
                &gf_over(&Domain::PfMn { m, n }, &FOUR, exec)?,
            );
        }
    }
    Ok(())
}

fn probabilistic(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    for n in 0..=max {
        let pp = rec::pp_rec(n);
        c.eq(
            format!("P'_{n}: recurrence = branch oracle"),
            &gf_over_prob(&Domain::Pf { n }, &FOUR, exec)?,
            &pp,
        );
        let marg = pp.set_one(&[Var::Z, Var::W]);
        c.ok(format!("P'_{n}(x, y, 1, 1) is free of p"), marg.is_free_of(Var::P), marg.to_string());
        c.eq(format!("P'_{n}(x, y, 1, 1) = p-free recurrence"), &marg, &rec::pp_xy_rec(n));
        c.eq(
            format!("P'_{n} at p = 1 is P_{n}"),
            &pp.subst_values(&[(Var::P, int(1))]),
            &rec::p_rec(n),
        );
    }
    for n in 1..=max {
        for m in 1..=n {
            c.eq(
                format!("P'_{{{m},{n}}}: composition sum = branch oracle"),
                &rec::pp_mn_rec(m, n),
                &gf_over_prob(&Domain::PfMn { m, n }, &FOUR, exec)?,
            );
        }
    }
    let p = Polynomial::var(Var::P);
    let one_minus_p = Polynomial::one() - p.clone();
    let v = PrefVector::square(vec![2, 2, 2])?;
    c.eq("P((2,2,2) in PF(3)) = 2p(1-p)", &prob_pf(&v), &(Polynomial::from_int(2) * &p * &one_minus_p));
    c.eq("P((3,3) in PF_2(2,2)) = 1-p", &prob_rk(&[3, 3], 2, 2)?, &one_minus_p);
    Ok(())
}

/// `(m, r, k)` with `m <= max_m`, `r <= 4`, `k <= 6` and `(k + mr)^m` capped.
pub fn rk_grid(max_m: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for r in 1..=4 {
            for k in 1..=6 {
                let circle = (k + m * r) as u64;
                if circle.checked_pow(m as u32).is_some_and(|s| s <= RK_GRID_CAP) {
                    out.push((m, r, k));
                }
            }
        }
    }
    out
}

fn rk_products(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    for (m, r, k) in rk_grid(max) {
        let dom = Domain::Rk { m, r, k };
        let mut list = vec![Stat::Unl, Stat::Rep, Stat::Lel];
        list.extend((1..=m).map(Stat::SameAs));
        let det = count_by(&dom, &list, exec)?;
        let prob = count_by_prob(&dom, &list, exec)?;
        let tag = format!("(m,r,k)=({m},{r},{k})");
        let unl_rep = cf::rk_unl_rep_gf(m, r, k);
        let unl_lel = cf::rk_unl_lel_gf(m, r, k);
        let same = cf::rk_same_as_gf(m, r, k);
        for (route, table, prob_weighted) in [("oracle", &det, false), ("branch oracle", &prob, true)] {
            let poly = |picks: &[(Var, usize)]| {
                if prob_weighted {
                    prob_poly_from_counts(table, picks)
                } else {
                    poly_from_counts(table, picks)
                }
            };
            c.eq(format!("x^unl y^rep {tag}: product = {route}"), &poly(&[(Var::X, 0), (Var::Y, 1)]), &unl_rep);
            c.eq(format!("x^unl y^lel {tag}: product = {route}"), &poly(&[(Var::X, 0), (Var::Y, 2)]), &unl_lel);
            if m >= 2 {
                c.eq(
                    format!("x^unl y^#(a_i = a_2) {tag}: product = {route}"),
                    &poly(&[(Var::X, 0), (Var::Y, 4)]),
                    &unl_lel,
                );
            }
            for s in 1..=m {
                c.eq(
                    format!("y^#(a_i = a_{s}) {tag}: product = {route}"),
                    &poly(&[(Var::Y, 2 + s)]),
                    &same,
                );
            }
        }
    }
    for m in 1..=max.min(6) {
        let n = m;
        let unl_rep = cf::rk_unl_rep_gf(m, 1, 1);
        let q = |p: Polynomial, v: Var| p.rename(&[(v, Var::Q)]);
        c.eq(
            format!("x := 1 gives (q+{n})^{}", n - 1),
            &q(unl_rep.subst_values(&[(Var::X, int(1))]), Var::Y),
            &cf::rep_gf(n),
        );
        c.eq(
            format!("rep over PF({n}) = (q+n)^(n-1)"),
            &gf_over(&Domain::Pf { n }, &[(Var::Q, Stat::Rep)], exec)?,
            &cf::rep_gf(n),
        );
        c.eq(
            format!("lucky over PF({n}) = Gessel-Seo product"),
            &gf_over(&Domain::Pf { n }, &[(Var::Q, Stat::Lucky)], exec)?,
            &cf::lucky_gf(n),
        );
        let unl = unl_rep.subst_values(&[(Var::Y, int(1))]);
        c.eq(format!("y := 1 gives the unluckiness product (m=n={n})"), &unl, &cf::unl_pf_mn_gf(m, n));
        c.eq(format!("lucky product is the reversed unluckiness product (n={n})"), &reverse_in(&unl, Var::X, n, Var::Q)?, &cf::lucky_gf(n));
    }
    for n in 1..=max.min(6) {
        for m in 1..=n {
            let k = n - m + 1;
            c.eq(
                format!("y := 1 at r=1, k={k} is the PF({m},{n}) unluckiness product"),
                &cf::rk_unl_rep_gf(m, 1, k).subst_values(&[(Var::Y, int(1))]),
                &cf::unl_pf_mn_gf(m, n),
            );
        }
    }
    same_as_third(c, exec)?;
    Ok(())
}

/// `sum c_e v^e` to `sum c_e out^(n-e)`.
fn reverse_in(p: &Polynomial, v: Var, n: usize, out: Var) -> Result<Polynomial> {
    Ok(p.univariate_coeffs(v)?
        .into_iter()
        .enumerate()
        .map(|(e, coef)| Polynomial::var(out).pow((n - e) as u32).scale(&coef))
        .sum())
}

/// Finds the smallest `(r, k)` at `m = 3` where the third car's analogue
/// of the leading-element product fails.
fn same_as_third(c: &mut Checks, exec: Exec) -> Result<()> {
    let mut witness = None;
    'search: for r in 1..=3 {
        for k in 1..=4 {
            let dom = Domain::Rk { m: 3, r, k };
            let got = gf_over(&dom, &[(Var::X, Stat::Unl), (Var::Y, Stat::SameAs(3))], exec)?;
            if got != cf::rk_unl_lel_gf(3, r, k) {
                witness = Some((r, k));
                break 'search;
            }
        }
    }
    c.ok(
        "x^unl y^#(a_i = a_3) differs from the product at m = 3",
        witness.is_some(),
        witness.map(|(r, k)| format!("witness r={r}, k={k}")).unwrap_or_else(|| "no witness found".into()),
    );
    Ok(())
}

fn pair_statistics(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    for n in 1..=max {
        let table = count_by(&Domain::Pf { n }, &[Stat::Lel, Stat::One, Stat::Unl, Stat::Nlel], exec)?;
        let poly = |picks: &[(Var, usize)]| poly_from_counts(&table, picks);
        c.eq(
            format!("x^lel y^one z^unl over PF({n}) = master formula"),
            &poly(&[(Var::X, 0), (Var::Y, 1), (Var::Z, 2)]),
            &cf::master_gf(n),
        );
        let nlel_one = poly(&[(Var::X, 3), (Var::Y, 1), (Var::Z, 2)]);
        let lel_nlel = poly(&[(Var::X, 0), (Var::Y, 3), (Var::Z, 2)]);
        if n == 1 {
            // No second car, so nlel vanishes and the n >= 2 formulas do not apply.
            c.eq("x^nlel y^one z^unl over PF(1) = y", &nlel_one, &Polynomial::var(Var::Y));
            c.eq("x^lel y^nlel z^unl over PF(1) = x", &lel_nlel, &Polynomial::var(Var::X));
        } else {
            c.eq(format!("x^nlel y^one z^unl over PF({n}) = master formula"), &nlel_one, &cf::correspondence_gf(n));
            c.eq(format!("x^lel y^nlel z^unl over PF({n}) = contrast formula"), &lel_nlel, &cf::contrast_gf(n));
        }
        c.eq(format!("y^one over PF({n}) = y(y+n)^(n-1)"), &poly(&[(Var::Y, 1)]), &cf::ones_gf(n));
        c.eq(format!("y^lel over PF({n}) = y(y+n)^(n-1)"), &poly(&[(Var::Y, 0)]), &cf::ones_gf(n));
        let unl_lel = cf::rk_unl_lel_gf(n, 1, 1);
        c.eq(format!("x^unl y^lel over PF({n}) = product"), &poly(&[(Var::X, 2), (Var::Y, 0)]), &unl_lel);
        c.eq(format!("x^unl y^one over PF({n}) = product"), &poly(&[(Var::X, 2), (Var::Y, 1)]), &unl_lel);

        let mut lel_one: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        let mut lel_nlel: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (key, v) in &table {
            *lel_one.entry((key[0], key[1])).or_default() += v;
            *lel_nlel.entry((key[0], key[3])).or_default() += v;
        }
        let mut master_ok = true;
        let mut contrast_ok = true;
        let mut first_bad = String::new();
        for s in 0..n {
            for t in 0..n {
                let a = num(lel_one.get(&(s + 1, t + 1)).copied().unwrap_or(0));
                let b = num(lel_nlel.get(&(s + 1, t + 1)).copied().unwrap_or(0));
                if a != cf::master_counts(n, s, t) {
                    master_ok = false;
                    first_bad = format!("lel/one s={s} t={t}: oracle {a}");
                }
                if n >= 2 && b != cf::contrast_counts(n, s, t) {
                    contrast_ok = false;
                    first_bad = format!("lel/nlel s={s} t={t}: oracle {b}");
                }
            }
        }
        c.ok(format!("lel/one count table for PF({n})"), master_ok, first_bad.clone());
        if n >= 2 {
            c.ok(format!("lel/nlel count table for PF({n})"), contrast_ok, first_bad);
        }
    }
    for n in 0..=max.min(5) {
        let ones_tree = tree_gf(n, &[(Var::Y, TreeStat::Deg0)]);
        c.eq(format!("y^deg0 over trees on {{0..{n}}} = y(y+n)^(n-1)"), &ones_tree, &cf::ones_gf(n));
        let nld = tree_gf(n, &[(Var::X, TreeStat::Nld)]);
        c.eq(format!("x^nld over trees on {{0..{n}}} = unluckiness product"), &nld, &cf::unl_pf_mn_gf(n, n));
        let edes = tree_gf(n, &[(Var::X, TreeStat::Edes)]);
        let unl = gf_over(&Domain::Pf { n }, &[(Var::X, Stat::Unl)], exec)?;
        c.eq(format!("x^edes over trees = x^unl over PF({n})"), &edes, &unl);
        let inv = tree_gf(n, &[(Var::Q, TreeStat::Inv)]);
        c.eq(format!("q^inv over trees = q^dis over PF({n})"), &inv, &rec::kreweras_dis(n));
        c.eq(
            format!("x^nld y^deg0 over trees on {{0..{n}}} = tree product"),
            &tree_gf(n, &[(Var::X, TreeStat::Nld), (Var::Y, TreeStat::Deg0)]),
            &cf::tree_nld_deg0_gf(n),
        );
    }
    for n in 0..=max.min(7) {
        c.eq(format!("lel recurrence = one recurrence (n={n})"), &rec::pair_rec_lel(n), &rec::pair_rec_one(n));
        c.eq(format!("q^dis recurrence = oracle (n={n})"), &rec::kreweras_dis(n), &gf_over(&Domain::Pf { n }, &[(Var::Q, Stat::Dis)], exec)?);
    }
    Ok(())
}

/// First `n` in `1..=max` where `f(n)` is false.
fn first_failure(max: usize, mut f: impl FnMut(usize) -> Result<bool>) -> Result<Option<usize>> {
    for n in 1..=max {
        if !f(n)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

fn counterexamples(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    let pairs = first_failure(max, |n| {
        let pf = gf_over(&Domain::Pf { n }, &[(Var::X, Stat::Unl), (Var::Y, Stat::Lel)], exec)?;
        Ok(pf == tree_gf(n, &[(Var::X, TreeStat::Nld), (Var::Y, TreeStat::Deg0)]))
    })?;
    c.eq_dbg("x^unl y^lel over PF vs x^nld y^deg0 over trees: first failure", &pairs, &Some(2));
    let dis = first_failure(max, |n| {
        let pf = gf_over(&Domain::Pf { n }, &[(Var::X, Stat::Unl), (Var::Y, Stat::Dis)], exec)?;
        Ok(pf == tree_gf(n, &[(Var::X, TreeStat::Edes), (Var::Y, TreeStat::Inv)]))
    })?;
    c.eq_dbg("x^unl y^dis over PF vs x^edes y^inv over trees: first failure", &dis, &Some(4));
    for n in 1..=max.min(6) {
        let single = cf::rk_unl_lel_gf(n, 1, 1) != cf::tree_nld_deg0_gf(n);
        c.ok(format!("pair product vs tree product differ at n={n}"), single == (n >= 2), "");
    }
    same_as_third(c, exec)
}

fn prime(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    for n in 2..=max {
        let dom = Domain::Ppf { n };
        let mut list = vec![Stat::Unl, Stat::Rep, Stat::Lel, Stat::One];
        list.extend((1..=n).map(Stat::SameAs));
        let table = count_by(&dom, &list, exec)?;
        let poly = |picks: &[(Var, usize)]| poly_from_counts(&table, picks);
        let ur = poly(&[(Var::X, 0), (Var::Y, 1)]);
        c.eq(format!("x^unl y^rep over PPF({n}) = product"), &ur, &cf::ppf_unl_rep_gf(n));
        c.eq(format!("x^unl y^lel over PPF({n}) = product"), &poly(&[(Var::X, 0), (Var::Y, 2)]), &cf::ppf_unl_lel_gf(n));
        for s in 1..=n {
            c.eq(
                format!("y^#(a_i = a_{s}) over PPF({n}) = y(y+n-2)^(n-1)"),
                &poly(&[(Var::Y, 3 + s)]),
                &cf::ppf_same_as_gf(n),
            );
        }
        c.eq(format!("x^lel y^one over PPF({n}) = closed form"), &poly(&[(Var::X, 2), (Var::Y, 3)]), &cf::ppf_lel_one_gf(n));
        let law = UrLaw::from_poly(&ur, Var::X, Var::Y)?;
        c.eq_dbg(format!("(U, R) law over PPF({n}) = independent steps"), &law, &dist::ppf_ur_law(n)?);
        let len = n as i64;
        let at_one = cf::ppf_lel_one_gf(n).subst_values(&[(Var::X, int(1))]);
        let y = Polynomial::var(Var::Y);
        let want = (y.clone() + Polynomial::from_int(len - 1)).pow(n as u32 - 1) * (y - Polynomial::one())
            + Polynomial::from_int(len - 1).pow(n as u32 - 1);
        c.eq(format!("x := 1 in the PPF({n}) lel/one form"), &at_one, &want);
    }
    Ok(())
}

fn unit_interval(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    let fubini = [1, 1, 3, 13, 75, 541, 4683, 47293];
    for n in 0..=max {
        let r = rec::upf_rec(n);
        c.eq(format!("UPF({n}): recurrence = Stirling form"), &r, &cf::upf_closed(n));
        let oracle = gf_over(&Domain::Upf { n }, &[(Var::Y, Stat::Dis)], exec)?;
        c.eq(format!("UPF({n}): recurrence = oracle"), &oracle, &r);
        if let Some(&f) = fubini.get(n) {
            let at_one = oracle.subst_values(&[(Var::Y, int(1))]);
            c.eq(format!("|UPF({n})| = {f}"), &at_one, &Polynomial::from_int(f));
        }
    }
    c.ok(format!("unit-interval EGF to order {max}"), cf::verify_upf_egf(max), "");
    Ok(())
}

/// Strictly increasing vectors with `len <= max_m` and top entry `<= 7`.
pub fn sample_u_vectors(count: usize, max_m: usize, seed: u64) -> Vec<UVector> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.random_range(1..=max_m.clamp(1, 7));
            let mut picks = rand::seq::index::sample(&mut rng, 7, m).into_vec();
            picks.sort_unstable();
            UVector::new(picks.into_iter().map(|i| i + 1).collect()).expect("distinct positive")
        })
        .collect()
}

fn u_vectors(c: &mut Checks, max: usize, seed: u64, exec: Exec) -> Result<()> {
    for u in sample_u_vectors(20, max, seed) {
        let dom = Domain::U(u.clone());
        let table = count_by(&dom, &[Stat::Unl, Stat::One, Stat::Lel], exec)?;
        let tag = format!("u={:?}", u.as_slice());
        c.eq(format!("x^unl {tag}: recurrence = oracle"), &rec::u_rec_a(&u), &poly_from_counts(&table, &[(Var::X, 0)]));
        c.eq(format!("y^one {tag}: recurrence = oracle"), &rec::u_rec_b(&u), &poly_from_counts(&table, &[(Var::Y, 1)]));
        c.eq(format!("z^lel {tag}: recurrence = oracle"), &rec::u_rec_c(&u), &poly_from_counts(&table, &[(Var::Z, 2)]));
    }
    Ok(())
}

fn law_from_counts(counts: &BTreeMap<usize, BigRational>) -> Result<Pmf> {
    let top = counts.keys().last().copied().unwrap_or(0);
    let w: Vec<BigRational> = (0..=top).map(|k| counts.get(&k).cloned().unwrap_or_else(BigRational::zero)).collect();
    Pmf::from_weights(&w)
}

fn displacement(c: &mut Checks, max: usize, exec: Exec) -> Result<()> {
    let per_car = |v: &PrefVector, out: &crate::parking::Outcome| stats(v, out).per_car_displacement;
    for n in 1..=max {
        for i in 0..n {
            let pmf = dist::displacement_pmf(n, i)?;
            let forms = dist::displacement_pmf_p_form(n, i)?;
            let agree = forms.iter().enumerate().all(|(k, f)| f.as_constant() == Some(pmf.prob(k)));
            c.ok(format!("n={n} i={i}: two-direction form = single sum"), agree, "");
            let want = BigRational::new((i as i64).into(), (n as i64 + 1).into());
            c.eq(format!("n={n} i={i}: unlucky probability i/(n+1)"), &dist::unlucky_prob(n, i)?, &want);
        }
        for m in 1..=n {
            let table = count_with(&Domain::PfMn { m, n }, exec, per_car)?;
            let members: u64 = table.values().sum();
            let total_dis: u64 = table.iter().map(|(k, v)| k.iter().sum::<usize>() as u64 * v).sum();
            for i in 0..m {
                let mut counts: BTreeMap<usize, BigRational> = BTreeMap::new();
                for (key, v) in &table {
                    *counts.entry(key[i]).or_insert_with(BigRational::zero) += num(*v);
                }
                let got = law_from_counts(&counts)?;
                c.eq_dbg(format!("car {} of PF({m},{n}): law = brute force", i + 1), &dist::displacement_pmf(n, i)?, &got);
            }
            let avg = num(total_dis) / (num(members) * int(m as i64));
            c.eq(format!("PF({m},{n}): mean displacement per car"), &dist::avg_displacement(m, n)?, &avg);
        }
    }
    for n in 1..=max.min(4) {
        for m in 1..=n {
            let table = count_with_prob(&Domain::PfMn { m, n }, exec, per_car)?;
            let total = prob_poly_from_counts(&table, &[]);
            let size = int((n - m + 1) as i64) * rpow(n as i64 + 1, m as i64 - 1);
            c.eq(format!("PF({m},{n}) branch weight total"), &total, &Polynomial::constant(size.clone()));
            for i in 0..m {
                let pmf = dist::displacement_pmf(n, i)?;
                for k in 0..=i {
                    let hits: BTreeMap<Vec<usize>, u64> =
                        table.iter().filter(|(key, _)| key[i] == k).map(|(key, v)| (key.clone(), *v)).collect();
                    let got = prob_poly_from_counts(&hits, &[]).scale(&(BigRational::one() / &size));
                    c.eq(
                        format!("car {} of PF({m},{n}), displacement {k}: branch law", i + 1),
                        &got,
                        &Polynomial::constant(pmf.prob(k)),
                    );
                }
            }
        }
    }
    for (m, r, k) in rk_grid(4) {
        if ((k + m * r) as u64).pow(m as u32) > 100_000 {
            continue;
        }
        let law = dist::exact_ur_law(m, r, k)?;
        let tag = format!("(m,r,k)=({m},{r},{k})");
        let product = UrLaw::from_poly(&cf::rk_unl_rep_gf(m, r, k), Var::X, Var::Y)?;
        c.eq_dbg(format!("(U, R) law {tag} = normalised product"), &law, &product);
        let oracle = gf_over(&Domain::Rk { m, r, k }, &[(Var::X, Stat::Unl), (Var::Y, Stat::Rep)], exec)?;
        c.eq_dbg(format!("(U, R) law {tag} = oracle"), &law, &UrLaw::from_poly(&oracle, Var::X, Var::Y)?);
        c.eq_dbg(format!("U marginal {tag}"), &law.u(), &dist::rk_u_law(m, r, k)?);
    }
    Ok(())
}

fn limits(c: &mut Checks, max: usize) -> Result<()> {
    let sizes: Vec<usize> = LIMIT_SIZES.iter().copied().filter(|&s| s <= max).collect();
    let largest = *sizes.last().unwrap_or(&0);
    let mut families: Vec<(String, Vec<dist::LimitReport>)> = Vec::new();
    for (cc, r) in [(0, 1), (1, 1)] {
        let reports = sizes.iter().map(|&m| dist::limit_checks(m, cc, r)).collect::<Result<Vec<_>>>()?;
        families.push((format!("PF_m(r, cm+r), c={cc}, r={r}"), reports));
    }
    let reports = sizes.iter().map(|&n| dist::ppf_limit_checks(n)).collect::<Result<Vec<_>>>()?;
    families.push(("PPF(n)".into(), reports));
    for (name, reports) in families {
        let decreasing = |f: fn(&dist::LimitReport) -> f64| reports.windows(2).all(|w| f(&w[1]) < f(&w[0]));
        let trace = |f: fn(&dist::LimitReport) -> f64| {
            reports.iter().map(|r| format!("{}:{:.5}", r.m, f(r))).collect::<Vec<_>>().join(" ")
        };
        c.ok(format!("{name}: TV(R, Poisson) decreasing"), decreasing(|r| r.tv_r), trace(|r| r.tv_r));
        c.ok(format!("{name}: TV(L_s - 1, Poisson) decreasing"), decreasing(|r| r.tv_l), trace(|r| r.tv_l));
        c.ok(format!("{name}: KS(U, normal) decreasing"), decreasing(|r| r.ks_u), trace(|r| r.ks_u));
        if let Some(last) = reports.last() {
            if last.m == 200 {
                c.ok(format!("{name}: TV < {TV_BOUND} at {largest}"), last.tv_r < TV_BOUND && last.tv_l < TV_BOUND, trace(|r| r.tv_r));
                c.ok(format!("{name}: KS < {KS_BOUND} at {largest}"), last.ks_u < KS_BOUND, trace(|r| r.ks_u));
            }
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct Row {
    code: Vec<usize>,
    parents: Vec<usize>,
    pollak: Vec<usize>,
    circular: Vec<usize>,
    bfs: Vec<usize>,
}

fn stat_of(prefs: &[usize], s: Stat) -> Result<usize> {
    let v = PrefVector::square(prefs.to_vec())?;
    let out = park_deterministic(&v).map_err(|f| ParkError::Invalid(format!("car {} fails in {prefs:?}", f.car)))?;
    Ok(stats(&v, &out).get(s, prefs))
}

fn table1(c: &mut Checks) -> Result<()> {
    let rows: Vec<Row> = serde_json::from_str(TABLE1).map_err(|e| ParkError::Parse(e.to_string()))?;
    c.eq("table rows", &rows.len(), &16);
    let mut rep_poly = Polynomial::zero();
    for row in &rows {
        let tag = format!("code {:?}", row.code);
        let tree = prufer_decode(&row.code, 3)?;
        c.eq_dbg(format!("{tag}: decoded tree"), &tree.parents().to_vec(), &row.parents);
        c.eq_dbg(format!("{tag}: re-encoded"), &prufer_encode(&tree), &row.code);
        c.eq_dbg(format!("{tag}: circular rotation column"), &prufer_to_pf_circular(&row.code), &row.circular);
        c.eq_dbg(format!("{tag}: breadth-first column"), &tree_to_pf_bfs(&tree), &row.bfs);
        let zeros = row.code.iter().filter(|&&a| a == 0).count();
        c.eq(format!("{tag}: zeros + 1 = lel"), &(zeros + 1), &stat_of(&row.circular, Stat::Lel)?);
        c.eq(format!("{tag}: root degree = ones"), &tree.stats().deg0, &stat_of(&row.bfs, Stat::One)?);
        let e = stat_of(&row.pollak, Stat::Rep)? as u32;
        rep_poly += Polynomial::var(Var::Q).pow(e);
    }
    for (name, col) in [
        ("pollak", rows.iter().map(|r| r.pollak.clone()).collect::<Vec<_>>()),
        ("circular", rows.iter().map(|r| r.circular.clone()).collect()),
        ("bfs", rows.iter().map(|r| r.bfs.clone()).collect()),
    ] {
        let set: BTreeSet<Vec<usize>> = col.iter().cloned().collect();
        let all_pf = col.iter().all(|p| is_parking_function(p));
        c.ok(format!("{name} column lists PF(3) once each"), all_pf && set.len() == 16, "");
    }
    let codes: BTreeSet<Vec<usize>> = rows.iter().map(|r| r.code.clone()).collect();
    c.eq("distinct codes", &codes.len(), &16);
    c.eq("q^rep over the pollak column = (q+3)^2", &rep_poly, &cf::rep_gf(3));
    Ok(())
}

fn series(c: &mut Checks, max: usize) {
    let order = max.min(5);
    c.ok(format!("log-EGF identity to order {order}"), cf::verify_dis_log_egf(order), "");
    c.ok(format!("unit-interval EGF and Fubini EGF to order {max}"), cf::verify_upf_egf(max), "");
}
