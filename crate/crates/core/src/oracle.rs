//! Brute-force generating polynomials over whole preference spaces.
//!
//! Every domain is enumerated as the full product `[base]^len`, members are
//! filtered by the sorted-rearrangement test and statistics are tallied into
//! a hash map of exponent tuples. Tallies merge by addition, so the parallel
//! and sequential paths return identical results.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{ParkError, Result};
use crate::exactalg::{Monomial, Polynomial, Var};
use crate::parking::{
    is_unit_interval, park_deterministic, stats, Outcome, PrefVector, Stat, UVector,
};
use crate::prob::{branch_weight, park_probabilistic, Event};
use crate::trees::{enumerate_forests, enumerate_trees, TreeStat};

/// Largest preference space the oracle will walk.
pub const GUARD: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    /// Classical parking functions of length `n`.
    Pf { n: usize },
    /// `m` cars that all park on `n` spots.
    PfMn { m: usize, n: usize },
    /// `u_i = k + (i-1) r`.
    Rk { m: usize, r: usize, k: usize },
    /// Prime parking functions of length `n`.
    Ppf { n: usize },
    /// Unit-interval parking functions of length `n`.
    Upf { n: usize },
    U(UVector),
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Pf { n } => write!(f, "PF({n})"),
            Domain::PfMn { m, n } => write!(f, "PF({m},{n})"),
            Domain::Rk { m, r, k } => write!(f, "PF_{m}({r},{k})"),
            Domain::Ppf { n } => write!(f, "PPF({n})"),
            Domain::Upf { n } => write!(f, "UPF({n})"),
            Domain::U(u) => write!(f, "PF{:?}", u.as_slice()),
        }
    }
}

impl Domain {
    /// Number of cars.
    pub fn len(&self) -> usize {
        match self {
            Domain::Pf { n } | Domain::Ppf { n } | Domain::Upf { n } => *n,
            Domain::PfMn { m, .. } | Domain::Rk { m, .. } => *m,
            Domain::U(u) => u.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The dominating bound vector of the sorted-rearrangement test.
    pub fn bounds(&self) -> Result<Vec<usize>> {
        Ok(match self {
            Domain::Pf { n } | Domain::Upf { n } => (1..=*n).collect(),
            Domain::Ppf { n } => (0..*n).map(|i| i.max(1)).collect(),
            Domain::PfMn { m, n } => {
                if m > n {
                    return Err(ParkError::Invalid(format!("PF({m},{n}) needs m <= n")));
                }
                (1..=*m).map(|i| n - m + i).collect()
            }
            Domain::Rk { m, r, k } => UVector::rk(*m, *r, *k)?.as_slice().to_vec(),
            Domain::U(u) => u.as_slice().to_vec(),
        })
    }

    /// Preferences range over `1..=base`.
    pub fn base(&self) -> Result<usize> {
        Ok(match self {
            Domain::PfMn { n, .. } => *n,
            _ => self.bounds()?.last().copied().unwrap_or(0),
        })
    }

    /// Street length for the parking protocols.
    pub fn spots(&self) -> Result<usize> {
        match self {
            Domain::Ppf { n } => Ok(*n),
            _ => self.base(),
        }
    }

    /// Event defining membership under the probabilistic protocol.
    pub fn event(&self) -> Result<Event> {
        match self {
            Domain::Pf { .. } | Domain::PfMn { .. } => Ok(Event::AllPark),
            Domain::Rk { m, r, k } => Ok(Event::Dominated(UVector::rk(*m, *r, *k)?)),
            Domain::U(u) => Ok(Event::Dominated(u.clone())),
            Domain::Ppf { .. } | Domain::Upf { .. } => Err(ParkError::Unsupported(format!(
                "{self} has no probabilistic membership event"
            ))),
        }
    }

    /// `base^len`, or a guard error.
    pub fn size(&self) -> Result<u128> {
        let base = self.base()? as u128;
        let mut size: u128 = 1;
        for _ in 0..self.len() {
            size = size.saturating_mul(base);
            if size > GUARD {
                return Err(ParkError::TooLarge {
                    size: (base).saturating_pow(self.len() as u32),
                    limit: GUARD,
                });
            }
        }
        Ok(size)
    }
}

/// Execution strategy. Without the `parallel` feature both run sequentially.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Reusable membership test on a fixed bound vector.
#[derive(Clone)]
struct Filter {
    bounds: Vec<usize>,
    counts: Vec<usize>,
    unit_interval: bool,
}

impl Filter {
    fn new(domain: &Domain) -> Result<Self> {
        let bounds = domain.bounds()?;
        let top = bounds.last().copied().unwrap_or(0);
        Ok(Filter {
            counts: vec![0; top.max(domain.base()?) + 1],
            bounds,
            unit_interval: matches!(domain, Domain::Upf { .. }),
        })
    }

    fn accepts(&mut self, prefs: &[usize]) -> bool {
        self.counts.fill(0);
        for &a in prefs {
            self.counts[a] += 1;
        }
        let mut seen = 0;
        let mut j = 0;
        for (i, &b) in self.bounds.iter().enumerate() {
            while j < b {
                j += 1;
                seen += self.counts[j];
            }
            if seen <= i {
                return false;
            }
        }
        !self.unit_interval || is_unit_interval(prefs)
    }
}

/// Folds `visit` over every vector of `[base]^len`, split by a short prefix.
fn fold_space<A, I, V, M>(base: usize, len: usize, exec: Exec, init: I, visit: V, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    V: Fn(&mut A, &[usize]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    if len == 0 {
        let mut acc = init();
        visit(&mut acc, &[]);
        return acc;
    }
    if base == 0 {
        return init();
    }
    let prefix = len.min(if base < 8 { 3 } else { 2 });
    let chunks = base.pow(prefix as u32);
    let run_chunk = |mut acc: A, c: usize| {
        let mut v = vec![1usize; len];
        let mut c = c;
        for slot in v[..prefix].iter_mut().rev() {
            *slot = c % base + 1;
            c /= base;
        }
        loop {
            visit(&mut acc, &v);
            // Odometer over the suffix.
            let mut i = len;
            loop {
                if i == prefix {
                    return acc;
                }
                i -= 1;
                if v[i] < base {
                    v[i] += 1;
                    break;
                }
                v[i] = 1;
            }
        }
    };
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..chunks)
                .into_par_iter()
                .fold(&init, run_chunk)
                .reduce(&init, merge)
        }
        _ => {
            let _ = &merge;
            (0..chunks).fold(init(), run_chunk)
        }
    }
}

type Tally = HashMap<Vec<usize>, u64>;

fn merge_tally(mut a: Tally, b: Tally) -> Tally {
    if a.len() < b.len() {
        return merge_tally(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Members of `domain` tallied by `key(vector, outcome)`.
pub fn count_with<K>(domain: &Domain, exec: Exec, key: K) -> Result<BTreeMap<Vec<usize>, u64>>
where
    K: Fn(&PrefVector, &Outcome) -> Vec<usize> + Sync + Send,
{
    domain.size()?;
    let base = domain.base()?;
    let spots = domain.spots()?;
    let proto = Filter::new(domain)?;
    let tally = fold_space(
        base,
        domain.len(),
        exec,
        || (Tally::new(), proto.clone()),
        |(acc, filter), prefs| {
            if !filter.accepts(prefs) {
                return;
            }
            let v = PrefVector::new(prefs.to_vec(), spots).expect("prefs lie in 1..=base");
            let out = park_deterministic(&v).expect("members park");
            *acc.entry(key(&v, &out)).or_insert(0) += 1;
        },
        |a, b| (merge_tally(a.0, b.0), a.1),
    );
    Ok(tally.0.into_iter().collect())
}

/// Members of `domain` tallied by the tuple of `stats`.
pub fn count_by(domain: &Domain, stat_list: &[Stat], exec: Exec) -> Result<BTreeMap<Vec<usize>, u64>> {
    count_with(domain, exec, |v, out| {
        if stat_list.is_empty() {
            return Vec::new();
        }
        let rec = stats(v, out);
        stat_list.iter().map(|&s| rec.get(s, v.prefs())).collect()
    })
}

/// `|domain|`.
pub fn count(domain: &Domain, exec: Exec) -> Result<u64> {
    Ok(count_by(domain, &[], exec)?.values().sum())
}

/// `sum over members of prod var^stat`.
pub fn gf_over(domain: &Domain, weights: &[(Var, Stat)], exec: Exec) -> Result<Polynomial> {
    let stat_list: Vec<Stat> = weights.iter().map(|w| w.1).collect();
    let table = count_by(domain, &stat_list, exec)?;
    Ok(poly_from_counts(&table, &index_picks(weights)))
}

/// Successful branches over every vector of the domain's preference space,
/// tallied by `key(vector, outcome)` followed by the heads and tails counts.
pub fn count_with_prob<K>(domain: &Domain, exec: Exec, key: K) -> Result<BTreeMap<Vec<usize>, u64>>
where
    K: Fn(&PrefVector, &Outcome) -> Vec<usize> + Sync + Send,
{
    domain.size()?;
    let event = domain.event()?;
    let base = domain.base()?;
    let spots = domain.spots()?;
    let tally = fold_space(
        base,
        domain.len(),
        exec,
        Tally::new,
        |acc, prefs| {
            let v = PrefVector::new(prefs.to_vec(), spots).expect("prefs lie in 1..=base");
            for b in park_probabilistic(&v) {
                let Ok(out) = &b.outcome else { continue };
                if !event.accepts(out) {
                    continue;
                }
                let mut k = key(&v, out);
                k.push(b.heads() as usize);
                k.push(b.tails() as usize);
                *acc.entry(k).or_insert(0) += 1;
            }
        },
        merge_tally,
    );
    Ok(tally.into_iter().collect())
}

/// Probabilistic counterpart of [`count_by`]; keys end with heads, tails.
pub fn count_by_prob(domain: &Domain, stat_list: &[Stat], exec: Exec) -> Result<BTreeMap<Vec<usize>, u64>> {
    count_with_prob(domain, exec, |v, out| {
        let rec = stats(v, out);
        stat_list.iter().map(|&s| rec.get(s, v.prefs())).collect()
    })
}

/// `sum over vectors, sum over successful branches of weight * prod var^stat`.
pub fn gf_over_prob(domain: &Domain, weights: &[(Var, Stat)], exec: Exec) -> Result<Polynomial> {
    let stat_list: Vec<Stat> = weights.iter().map(|w| w.1).collect();
    let table = count_by_prob(domain, &stat_list, exec)?;
    Ok(prob_poly_from_counts(&table, &index_picks(weights)))
}

fn index_picks(weights: &[(Var, Stat)]) -> Vec<(Var, usize)> {
    weights.iter().enumerate().map(|(i, w)| (w.0, i)).collect()
}

fn picked(picks: &[(Var, usize)], key: &[usize]) -> Monomial {
    let mut m = Monomial::ONE;
    for &(var, i) in picks {
        m = m.with_exp(var, m.exp(var) + key[i] as u32);
    }
    m
}

/// Polynomial from a `count_by` table, with `(var, i)` raising `var` to the
/// `i`-th tallied statistic. Unpicked statistics are summed out.
pub fn poly_from_counts(table: &BTreeMap<Vec<usize>, u64>, picks: &[(Var, usize)]) -> Polynomial {
    Polynomial::from_terms(
        table
            .iter()
            .map(|(key, &c)| (picked(picks, key), BigRational::from_integer(BigInt::from(c)))),
    )
}

/// As [`poly_from_counts`] for a `count_by_prob` table, weighting each entry
/// by `p^heads (1-p)^tails`.
pub fn prob_poly_from_counts(table: &BTreeMap<Vec<usize>, u64>, picks: &[(Var, usize)]) -> Polynomial {
    let mut grouped: BTreeMap<(u32, u32), Vec<(Monomial, BigRational)>> = BTreeMap::new();
    for (key, &c) in table {
        let k = key.len() - 2;
        grouped
            .entry((key[k] as u32, key[k + 1] as u32))
            .or_default()
            .push((picked(picks, key), BigRational::from_integer(BigInt::from(c))));
    }
    grouped
        .into_iter()
        .map(|((h, t), terms)| branch_weight(h, t) * Polynomial::from_terms(terms))
        .sum()
}

/// `sum over trees on {0..n} of prod var^stat`.
pub fn tree_gf(n: usize, weights: &[(Var, TreeStat)]) -> Polynomial {
    tally_trees(enumerate_trees(n).map(|t| t.as_forest().clone()), weights)
}

/// `sum over forests with the given roots and m further vertices`.
pub fn forest_gf(roots: usize, m: usize, weights: &[(Var, TreeStat)]) -> Polynomial {
    tally_trees(enumerate_forests(roots, m), weights)
}

fn tally_trees(it: impl Iterator<Item = crate::trees::Forest>, weights: &[(Var, TreeStat)]) -> Polynomial {
    let mut table: BTreeMap<Monomial, u64> = BTreeMap::new();
    for f in it {
        let s = f.stats();
        let mut m = Monomial::ONE;
        for &(var, st) in weights {
            m = m.with_exp(var, m.exp(var) + s.get(st, f.roots()) as u32);
        }
        *table.entry(m).or_insert(0) += 1;
    }
    Polynomial::from_terms(
        table
            .into_iter()
            .map(|(m, c)| (m, BigRational::from_integer(BigInt::from(c)))),
    )
}
