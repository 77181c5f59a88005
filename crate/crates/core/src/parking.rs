//! Deterministic parking, family membership tests and car-side statistics.

use std::fmt;
use std::str::FromStr;

use crate::error::{ParkError, Result};

/// Car preferences `a_1..a_m` on a street of `spots` spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrefVector {
    prefs: Vec<usize>,
    spots: usize,
}

impl PrefVector {
    pub fn new(prefs: Vec<usize>, spots: usize) -> Result<Self> {
        if let Some(&a) = prefs.iter().find(|&&a| a == 0 || a > spots) {
            return Err(ParkError::Invalid(format!(
                "preference {a} outside 1..={spots}"
            )));
        }
        Ok(PrefVector { prefs, spots })
    }

    /// A vector of length `n` on `n` spots.
    pub fn square(prefs: Vec<usize>) -> Result<Self> {
        let n = prefs.len();
        Self::new(prefs, n)
    }

    pub fn prefs(&self) -> &[usize] {
        &self.prefs
    }

    pub fn spots(&self) -> usize {
        self.spots
    }

    pub fn len(&self) -> usize {
        self.prefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefs.is_empty()
    }
}

impl fmt::Display for PrefVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.prefs.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Strictly increasing bounds `u_1 < ... < u_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UVector(Vec<usize>);

impl UVector {
    pub fn new(u: Vec<usize>) -> Result<Self> {
        if u.first() == Some(&0) || u.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ParkError::Invalid(format!(
                "u-vector must be positive and strictly increasing: {u:?}"
            )));
        }
        Ok(UVector(u))
    }

    /// `u_i = k + (i-1) r`.
    pub fn rk(m: usize, r: usize, k: usize) -> Result<Self> {
        if r == 0 || k == 0 {
            return Err(ParkError::Invalid("r and k must be positive".into()));
        }
        Self::new((0..m).map(|i| k + i * r).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `u_m`, or 0 when empty.
    pub fn last(&self) -> usize {
        self.0.last().copied().unwrap_or(0)
    }
}

/// Where each car ended up (1-based spots, indexed by car).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub occupied: Vec<usize>,
    pub spots: usize,
}

impl Outcome {
    /// Spot `j` (1-based) maps to `Some(car)` with cars 1-based.
    pub fn inverse(&self) -> Vec<Option<usize>> {
        let mut inv = vec![None; self.spots + 1];
        for (car, &b) in self.occupied.iter().enumerate() {
            inv[b] = Some(car + 1);
        }
        inv
    }
}

/// Car `car` (1-based) could not park.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Failure {
    pub car: usize,
}

pub fn park_deterministic(v: &PrefVector) -> std::result::Result<Outcome, Failure> {
    let n = v.spots;
    let mut taken = vec![false; n + 2];
    let mut occupied = Vec::with_capacity(v.len());
    for (i, &a) in v.prefs.iter().enumerate() {
        let mut s = a;
        while s <= n && taken[s] {
            s += 1;
        }
        if s > n {
            return Err(Failure { car: i + 1 });
        }
        taken[s] = true;
        occupied.push(s);
    }
    Ok(Outcome { occupied, spots: n })
}

/// `counts[j]` = number of entries equal to `j`, for `j` in `0..=bound`;
/// `None` if some entry exceeds `bound`.
fn histogram(prefs: &[usize], bound: usize) -> Option<Vec<usize>> {
    let mut counts = vec![0usize; bound + 1];
    for &a in prefs {
        if a == 0 || a > bound {
            return None;
        }
        counts[a] += 1;
    }
    Some(counts)
}

/// Sorted rearrangement `b_1 <= ... <= b_m` satisfies `b_i <= u_i`.
pub fn dominated_by(prefs: &[usize], u: &[usize]) -> bool {
    if prefs.len() != u.len() {
        return false;
    }
    let Some(&top) = u.last() else { return true };
    let Some(counts) = histogram(prefs, top) else {
        return false;
    };
    // The i-th smallest entry is <= u_i iff at least i entries are <= u_i.
    let mut seen = 0;
    let mut j = 0;
    for (i, &ui) in u.iter().enumerate() {
        while j < ui {
            j += 1;
            seen += counts[j];
        }
        if seen < i + 1 {
            return false;
        }
    }
    true
}

/// Classical parking function of length `prefs.len()`.
pub fn is_parking_function(prefs: &[usize]) -> bool {
    let n = prefs.len();
    let Some(counts) = histogram(prefs, n) else {
        return false;
    };
    let mut seen = 0;
    for (i, c) in counts.iter().enumerate().skip(1) {
        seen += c;
        if seen < i {
            return false;
        }
    }
    true
}

/// All `m` cars park on `n` spots: sorted `b_i <= n - m + i`.
pub fn is_pf_mn(prefs: &[usize], n: usize) -> bool {
    let m = prefs.len();
    if m > n {
        return false;
    }
    let u: Vec<usize> = (1..=m).map(|i| n - m + i).collect();
    dominated_by(prefs, &u)
}

pub fn is_u_parking(prefs: &[usize], u: &UVector) -> bool {
    dominated_by(prefs, u.as_slice())
}

pub fn is_rk_parking(prefs: &[usize], r: usize, k: usize) -> bool {
    match UVector::rk(prefs.len(), r, k) {
        Ok(u) => is_u_parking(prefs, &u),
        Err(_) => false,
    }
}

/// For every `j <= n-1` at least `j+1` cars prefer one of the first `j` spots.
pub fn is_prime(prefs: &[usize]) -> bool {
    let n = prefs.len();
    if n == 0 {
        return false;
    }
    let Some(counts) = histogram(prefs, n) else {
        return false;
    };
    let mut seen = 0;
    for (j, c) in counts.iter().enumerate().take(n).skip(1) {
        seen += c;
        if seen < j + 1 {
            return false;
        }
    }
    true
}

/// Parks on `n = len` spots with every car displaced by at most one.
pub fn is_unit_interval(prefs: &[usize]) -> bool {
    let Ok(v) = PrefVector::square(prefs.to_vec()) else {
        return false;
    };
    match park_deterministic(&v) {
        Ok(out) => out.occupied.iter().zip(prefs).all(|(&b, &a)| b - a <= 1),
        Err(_) => false,
    }
}

/// A statistic of a parked preference vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stat {
    Unl,
    Lucky,
    Dis,
    Des,
    Rlm,
    Rep,
    Lel,
    One,
    /// Entries equal to `a_2`.
    Nlel,
    /// Entries equal to `a_s` (1-based `s`).
    SameAs(usize),
}

impl fmt::Display for Stat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stat::Unl => f.write_str("unl"),
            Stat::Lucky => f.write_str("lucky"),
            Stat::Dis => f.write_str("dis"),
            Stat::Des => f.write_str("des"),
            Stat::Rlm => f.write_str("rlm"),
            Stat::Rep => f.write_str("rep"),
            Stat::Lel => f.write_str("lel"),
            Stat::One => f.write_str("one"),
            Stat::Nlel => f.write_str("nlel"),
            Stat::SameAs(s) => write!(f, "same{s}"),
        }
    }
}

impl FromStr for Stat {
    type Err = ParkError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "unl" => Stat::Unl,
            "lucky" => Stat::Lucky,
            "dis" => Stat::Dis,
            "des" => Stat::Des,
            "rlm" => Stat::Rlm,
            "rep" => Stat::Rep,
            "lel" => Stat::Lel,
            "one" | "ones" => Stat::One,
            "nlel" => Stat::Nlel,
            _ => match s.strip_prefix("same").and_then(|k| k.parse().ok()) {
                Some(k) if k >= 1 => Stat::SameAs(k),
                _ => return Err(ParkError::Parse(format!("unknown statistic `{s}`"))),
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatRecord {
    pub unl: usize,
    pub lucky: usize,
    pub dis: usize,
    pub des: usize,
    pub rlm: usize,
    pub rep: usize,
    pub lel: usize,
    pub one: usize,
    pub per_car_displacement: Vec<usize>,
}

/// Entries equal to `a_s`; zero if the vector is shorter than `s`.
pub fn same_as(prefs: &[usize], s: usize) -> usize {
    match prefs.get(s.wrapping_sub(1)) {
        Some(&a) => prefs.iter().filter(|&&b| b == a).count(),
        None => 0,
    }
}

/// Descents and right-to-left maxima of the inverse outcome, counted
/// separately on each maximal run of consecutive occupied spots.
pub fn des_rlm(out: &Outcome) -> (usize, usize) {
    let inv = out.inverse();
    let (mut des, mut rlm) = (0, 0);
    let mut run: Vec<usize> = Vec::new();
    let mut flush = |run: &mut Vec<usize>| {
        des += run.windows(2).filter(|w| w[0] > w[1]).count();
        let mut best = 0;
        for &c in run.iter().rev() {
            if c > best {
                best = c;
                rlm += 1;
            }
        }
        run.clear();
    };
    for slot in inv.iter().skip(1) {
        match slot {
            Some(c) => run.push(*c),
            None => flush(&mut run),
        }
    }
    flush(&mut run);
    (des, rlm)
}

/// Statistics of a run where car `i` wanted `prefs[i]` and took
/// `out.occupied[i]`; displacement is the distance travelled either way.
pub fn stats(v: &PrefVector, out: &Outcome) -> StatRecord {
    let prefs = &v.prefs;
    let per_car_displacement: Vec<usize> = prefs
        .iter()
        .zip(&out.occupied)
        .map(|(&a, &b)| a.abs_diff(b))
        .collect();
    let unl = per_car_displacement.iter().filter(|&&d| d > 0).count();
    let (des, rlm) = des_rlm(out);
    StatRecord {
        unl,
        lucky: prefs.len() - unl,
        dis: per_car_displacement.iter().sum(),
        des,
        rlm,
        rep: prefs.windows(2).filter(|w| w[0] == w[1]).count(),
        lel: same_as(prefs, 1),
        one: prefs.iter().filter(|&&a| a == 1).count(),
        per_car_displacement,
    }
}

impl StatRecord {
    /// The value of `stat`; preference-only statistics read `prefs`.
    pub fn get(&self, stat: Stat, prefs: &[usize]) -> usize {
        match stat {
            Stat::Unl => self.unl,
            Stat::Lucky => self.lucky,
            Stat::Dis => self.dis,
            Stat::Des => self.des,
            Stat::Rlm => self.rlm,
            Stat::Rep => self.rep,
            Stat::Lel => self.lel,
            Stat::One => self.one,
            Stat::Nlel => same_as(prefs, 2),
            Stat::SameAs(s) => same_as(prefs, s),
        }
    }
}

/// Rotates the entries of `prefs` greater than `k` through the cycle
/// `(k+1, ..., n+1)` by `c` steps, keeping entries `<= k` fixed.
pub fn rotate_above(prefs: &[usize], k: usize, c: usize) -> Vec<usize> {
    let n = prefs.len();
    let len = n + 1 - k;
    prefs
        .iter()
        .map(|&a| {
            if a <= k {
                a
            } else {
                k + 1 + (a - k - 1 + c) % len
            }
        })
        .collect()
}

/// Pollak's circle: the unique rotation `c` in `0..=n` such that
/// `((a + c - 1) mod (n+1)) + 1` is a parking function. Entries may be
/// anything in `1..=n+1`.
pub fn circular_rotation(prefs: &[usize]) -> Vec<usize> {
    let n = prefs.len();
    (0..=n)
        .map(|c| {
            prefs
                .iter()
                .map(|&a| (a + c - 1) % (n + 1) + 1)
                .collect::<Vec<_>>()
        })
        .find(|w| is_parking_function(w))
        .expect("exactly one rotation of a circular preference parks")
}
