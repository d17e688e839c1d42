use std::fmt;

use crate::designs::prime_power;
use crate::frames::{classify_type, EtfType, FrameError};

use super::plan_gdd_etf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    ConstructibleHere,
    KnownPerPaper,
    Asymptotic,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ConstructibleHere => "constructible-here",
            Status::KnownPerPaper => "known-per-paper",
            Status::Asymptotic => "asymptotic",
            Status::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceStatus {
    pub etf_type: EtfType,
    pub status: Status,
    pub witness: Option<String>,
}

impl fmt::Display for ExistenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            Some(w) => write!(f, "{} ({w})", self.status),
            None => write!(f, "{}", self.status),
        }
    }
}

fn is_prime_power(n: u64) -> bool {
    prime_power(n).is_some()
}

/// `Some(j)` when `n = 2^j`.
fn log2_exact(n: u64) -> Option<u32> {
    (n.is_power_of_two()).then(|| n.trailing_zeros())
}

/// `(q^J - 1)/(q - 1) = s` for some `J ≥ 2`.
fn is_geometric_count(q: u64, s: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut acc: u64 = 1 + q;
    while acc < s {
        match acc.checked_mul(q).and_then(|x| x.checked_add(1)) {
            Some(next) => acc = next,
            None => return false,
        }
    }
    acc == s
}

fn is_power_of(base: u64, n: u64) -> bool {
    let mut x = 1u64;
    while x < n {
        match x.checked_mul(base) {
            Some(y) => x = y,
            None => return false,
        }
    }
    x == n
}

/// `U` for which `K`-GDDs of type `M^U` are known to exist: `K^J`
/// (`J ≥ 0`), or a projective-geometry `BIBD(U, K, 1)` when `K - 1` is a prime power.
fn explicit_group_count(k: u64, u: u64) -> bool {
    is_power_of(k, u) || (k >= 3 && is_prime_power(k - 1) && is_geometric_count(k - 1, u) && u > k)
}

const SIC: [u64; 7] = [2, 3, 4, 5, 6, 7, 18];

fn positive_clause(k: u64, s: u64) -> Option<&'static str> {
    if k == 1 {
        return Some("Thm 4.1a");
    }
    if (2..=5).contains(&k) && s >= k && (s * (s - 1)).is_multiple_of(k) {
        return Some("Thm 4.1b(i)");
    }
    if is_prime_power(k) && is_geometric_count(k, s) {
        return Some("Thm 4.1b(ii)");
    }
    if k >= 3 && is_prime_power(k - 1) && is_geometric_count(k - 1, s) {
        return Some("Thm 4.1b(iii)");
    }
    if k >= 3 && is_prime_power(k - 1) && s == (k - 1) * (k - 1) {
        return Some("Thm 4.1b(iv)");
    }
    if let (Some(j1), Some(j2)) = (log2_exact(k), s.checked_sub(1).and_then(log2_exact)) {
        if 2 <= j1 && j1 < j2 {
            return Some("Thm 4.1b(v)");
        }
    }
    if k == s && is_prime_power(k) {
        return Some("Thm 4.1c");
    }
    if SIC.contains(&s) && k == s * (s - 1) {
        return Some("Thm 4.1d");
    }
    if (s == 3 || s == 5) && k == s * (s - 1) / 2 {
        return Some("Thm 4.1e");
    }
    None
}

fn negative_clause(k: u64, s: u64) -> Option<&'static str> {
    if k == 4 && (s % 8 == 3 || s % 60 == 7) {
        return Some("Thm 1.2a");
    }
    if k == 5 && (s % 15 == 4 || s % 380 == 5 || s % 380 == 309 || s % 280 == 9) {
        return Some("Thm 1.2b");
    }
    if k == 2 && s >= 3 {
        return Some("Thm 4.2a");
    }
    if k == 3 && s % 3 != 1 {
        return Some("Thm 4.2b");
    }
    if k == 4 && (3 * s).checked_sub(1).and_then(log2_exact).is_some_and(|e| e >= 3 && e % 2 == 1) {
        return Some("Thm 4.2c");
    }
    if k >= 4 && is_prime_power(k - 2) && s == k - 1 {
        return Some("Thm 4.2d");
    }
    if k >= 3 && log2_exact(k - 1).is_some_and(|j| j >= 1) {
        if s == 2 * k - 1 {
            return Some("Thm 4.2e");
        }
        if s == k {
            return Some("Thm 4.2f");
        }
    }
    if SIC.contains(&s) && k == s * (s + 1) {
        return Some("Thm 4.2g");
    }
    if (s == 3 || s == 5) && k == s * (s + 1) / 2 {
        return Some("Thm 4.2h");
    }
    if [(4, 7), (6, 11), (7, 13), (8, 15), (10, 5)].contains(&(k, s)) {
        return Some("Thm 4.2i");
    }
    // S = (aU + 1)/(K - 1) families with explicit K-GDDs of type M^U
    let families: [(u64, u64, &str); 5] =
        [(6, 9, "Thm 4.5a"), (6, 24, "Thm 4.5b"), (7, 35, "Thm 4.5c"), (10, 80, "Thm 4.5d"), (12, 32, "Thm 4.5e")];
    for (fk, a, tag) in families {
        if k == fk {
            let num = (k - 1) * s - 1;
            if num.is_multiple_of(a) && explicit_group_count(k, num / a) {
                return Some(tag);
            }
        }
    }
    None
}

/// The literature clause establishing type `(K, L, S)` outright, if any.
fn known_clause(t: &EtfType) -> Option<&'static str> {
    if t.l == 1 {
        positive_clause(t.k, t.s)
    } else {
        negative_clause(t.k, t.s)
    }
}

/// Seeds the library builds without imported frames: the simplices
/// `ETF(2,3)` and `ETF(3,4)`, and Steiner ETFs from the bundled BIBDs.
fn library_seed(t: &EtfType) -> bool {
    let (k, s) = (t.k, t.s);
    if t.l == -1 {
        return (k, s) == (3, 2) || (k, s) == (2, 3);
    }
    match k {
        2 => true,
        3 => s % 3 != 2,
        _ => (is_prime_power(k) && s == k + 1) || (is_prime_power(k - 1) && s == k),
    }
}

/// Status of type `(K, L, S)`: literature clauses first, then a one-step
/// transversal-design construction from a library seed, then the
/// sufficiently-large-`U` consequences, otherwise unknown.
pub fn existence_status(t: EtfType) -> Result<ExistenceStatus, FrameError> {
    let t = EtfType::new(t.k, t.l, t.s)?;
    let done = |status, witness: Option<String>| Ok(ExistenceStatus { etf_type: t, status, witness });
    if let Some(w) = known_clause(&t) {
        return done(Status::KnownPerPaper, Some(w.to_string()));
    }
    if t.k >= 2 {
        // TD(K, M0) over GF(M0) with U = K from a seed built here
        for s0 in 2..t.s {
            let Ok(seed) = EtfType::new(t.k, t.l, s0) else { continue };
            if !library_seed(&seed) {
                continue;
            }
            let m0 = seed.m() as u64;
            if is_prime_power(m0) && m0 + 1 >= t.k {
                if let Ok(plan) = plan_gdd_etf(seed, t.k) {
                    if plan.target == t {
                        return done(Status::ConstructibleHere, Some(format!("TD({},{m0}) with seed {seed}", t.k)));
                    }
                }
            }
        }
    }
    if t.l == 1 && t.k >= 2 && t.s >= t.k {
        return done(Status::Asymptotic, Some("Thm 4.1b(vi)".into()));
    }
    if t.k >= 2 {
        for s0 in 2..t.s {
            let Ok(seed) = EtfType::new(t.k, t.l, s0) else { continue };
            if known_clause(&seed).is_none() {
                continue;
            }
            let num = (t.k as i128 - 1) * t.s as i128 + t.l as i128;
            let m0 = seed.m();
            if num % m0 != 0 {
                continue;
            }
            if let Ok(plan) = plan_gdd_etf(seed, (num / m0) as u64) {
                if plan.target == t {
                    return done(Status::Asymptotic, Some(format!("Thm 3.4a from {seed}")));
                }
            }
        }
    }
    done(Status::Unknown, None)
}

/// Types of the `(D, N)` with `D = Q^{2J-1}(2Q^{2J}+Q-1)/(Q+1)` and
/// `N = 4Q^{2J}(Q^{2J}-1)/(Q²-1)`.
pub fn check_chen_classification(q: u64, j: u32) -> Result<Vec<EtfType>, FrameError> {
    if q < 2 || j < 1 {
        return Err(FrameError::Type(format!("need Q >= 2 and J >= 1, got Q = {q}, J = {j}")));
    }
    let overflow = || FrameError::Overflow(format!("Q = {q}, J = {j}"));
    let q = q as u128;
    let q2j = q.checked_pow(2 * j).ok_or_else(overflow)?;
    let d = (q2j / q).checked_mul(2 * q2j + q - 1).ok_or_else(overflow)? / (q + 1);
    let n = 4u128.checked_mul(q2j).and_then(|x| x.checked_mul(q2j - 1)).ok_or_else(overflow)? / (q * q - 1);
    let d = u64::try_from(d).map_err(|_| overflow())?;
    let n = u64::try_from(n).map_err(|_| overflow())?;
    classify_type(d, n)
}
