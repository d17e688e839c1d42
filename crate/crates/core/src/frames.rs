//! Frames over `Z[ζ_n]`, exact ETF certification and `(K, L, S)` classification.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::cyclo::{CycMatrix, CycScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("{groups} groups do not divide {n} columns")]
    Grouping { groups: usize, n: usize },
    #[error("classification needs 1 < D < N, got D = {d}, N = {n}")]
    Domain { d: u64, n: u64 },
    #[error("invalid type: {0}")]
    Type(String),
    #[error("{0}")]
    Naimark(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

/// A `D × N` synthesis operator, optionally split into equal consecutive column groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    synthesis: CycMatrix,
    groups: Option<usize>,
}

impl Frame {
    pub fn new(synthesis: CycMatrix) -> Result<Self, FrameError> {
        for c in 0..synthesis.cols() {
            if (0..synthesis.rows()).all(|r| synthesis.get(r, c).is_zero()) {
                return Err(FrameError::ZeroColumn(c));
            }
        }
        Ok(Frame { synthesis, groups: None })
    }

    /// Columns `g·size .. (g+1)·size` form group `g`.
    pub fn with_groups(mut self, groups: usize) -> Result<Self, FrameError> {
        let n = self.count();
        if groups == 0 || !n.is_multiple_of(groups) {
            return Err(FrameError::Grouping { groups, n });
        }
        self.groups = Some(groups);
        Ok(self)
    }

    pub fn dimension(&self) -> usize {
        self.synthesis.rows()
    }

    pub fn count(&self) -> usize {
        self.synthesis.cols()
    }

    pub fn groups(&self) -> Option<usize> {
        self.groups
    }

    pub fn order(&self) -> u32 {
        self.synthesis.order()
    }

    pub fn synthesis(&self) -> &CycMatrix {
        &self.synthesis
    }

    pub fn into_synthesis(self) -> CycMatrix {
        self.synthesis
    }

    pub fn gram(&self) -> CycMatrix {
        self.synthesis.gram()
    }
}

/// Result of [`verify_etf`] in the scaled convention: squared norms `s`,
/// squared inner-product moduli `t`, coherence² = `t/s²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtfCertificate {
    pub d: usize,
    pub n: usize,
    pub s: Option<BigInt>,
    pub t: Option<BigInt>,
    /// `N·s/D`.
    pub a: Option<BigRational>,
    pub equal_norm: bool,
    pub equiangular: bool,
    pub tight: bool,
    pub welch_equality: bool,
    pub flat: bool,
    pub centered: bool,
    /// First failed check, if any.
    pub violation: Option<String>,
}

impl EtfCertificate {
    pub fn is_etf(&self) -> bool {
        self.welch_equality
    }

    /// `ETF D=.. N=.. s=.. t=.. A=..`.
    pub fn summary(&self) -> String {
        let show = |v: &Option<BigInt>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
        let a = self.a.as_ref().map_or("-".to_string(), |x| x.to_string());
        let head = if self.welch_equality { "ETF" } else { "NOT-ETF" };
        format!("{head} D={} N={} s={} t={} A={a}", self.d, self.n, show(&self.s), show(&self.t))
    }

    pub fn flags(&self) -> String {
        format!(
            "equal_norm={} equiangular={} tight={} welch_equality={} flat={} centered={}",
            self.equal_norm, self.equiangular, self.tight, self.welch_equality, self.flat, self.centered
        )
    }
}

fn is_unimodular(e: &CycScalar) -> bool {
    e.abs_squared().is_one()
}

/// Exact ETF certification of a frame.
pub fn verify_etf(frame: &Frame) -> EtfCertificate {
    let phi = frame.synthesis();
    let (d, n) = (phi.rows(), phi.cols());
    let g = phi.gram();
    let mut violation: Option<String> = None;
    let mut fail = |msg: String| {
        if violation.is_none() {
            violation = Some(msg);
        }
    };

    let s = g.get(0, 0).as_integer().cloned();
    let mut equal_norm = s.is_some();
    if let Some(s0) = &s {
        for i in 1..n {
            if g.get(i, i).as_integer() != Some(s0) {
                equal_norm = false;
                fail(format!("Gram entry ({i},{i}) is {}, expected squared norm {s0}", g.get(i, i)));
                break;
            }
        }
    } else {
        fail(format!("Gram entry (0,0) is {}, not a rational integer", g.get(0, 0)));
    }

    let mut t: Option<BigInt> = None;
    let mut equiangular = true;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let m = g.get(i, j).abs_squared();
            match (m.as_integer(), &t) {
                (Some(v), None) => t = Some(v.clone()),
                (Some(v), Some(t0)) if v == t0 => {}
                _ => {
                    equiangular = false;
                    let want = t.as_ref().map_or("a rational integer".to_string(), |x| x.to_string());
                    fail(format!("Gram entry ({i},{j}) is {} with squared modulus {m}, expected {want}", g.get(i, j)));
                    break 'outer;
                }
            }
        }
    }
    if !equiangular {
        t = None;
    }

    let tight = match phi.frame_operator().as_scalar_identity() {
        Some(c) => match (&s, equal_norm) {
            (Some(s0), true) => {
                let ok = BigInt::from(d) * &c == BigInt::from(n) * s0;
                if !ok {
                    fail("D·ΦΦ* differs from N·s·I".to_string());
                }
                ok
            }
            _ => true,
        },
        None => {
            fail("frame operator ΦΦ* is not a multiple of the identity".to_string());
            false
        }
    };

    let a = match (&s, equal_norm, d) {
        (Some(s0), true, d) if d > 0 => Some(BigRational::new(BigInt::from(n) * s0, BigInt::from(d))),
        _ => None,
    };

    let mut welch_equality = equal_norm && equiangular && tight;
    if welch_equality && n > d {
        if let (Some(s0), Some(t0)) = (&s, &t) {
            let lhs = s0 * s0 * BigInt::from(n - d);
            let rhs = t0 * BigInt::from(d) * BigInt::from(n - 1);
            if lhs != rhs {
                welch_equality = false;
                fail(format!("Welch identity s²(N-D) = tD(N-1) fails: {lhs} vs {rhs}"));
            }
        }
    }
    if welch_equality && n > d + 1 && d > 1 && (n > d * d || n > (n - d) * (n - d)) {
        welch_equality = false;
        fail(format!("Gerzon bound violated by (D, N) = ({d}, {n})"));
    }

    let flat = phi.entries().iter().all(is_unimodular);
    let centered = phi.row_sums().iter().all(CycScalar::is_zero);
    EtfCertificate { d, n, s, t, a, equal_norm, equiangular, tight, welch_equality, flat, centered, violation }
}

/// `(K, L, S)` with `L = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtfType {
    pub k: u64,
    pub l: i8,
    pub s: u64,
}

impl fmt::Display for EtfType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{:+},{})", self.k, self.l, self.s)
    }
}

impl EtfType {
    /// Requires `K ≥ 1`, `S ≥ 2`, `L = ±1`, `K | S(S-L)` and `S(K-1) + L > 0`.
    pub fn new(k: u64, l: i8, s: u64) -> Result<Self, FrameError> {
        if k == 0 {
            return Err(FrameError::Type("K must be positive".into()));
        }
        if s < 2 {
            return Err(FrameError::Type(format!("S = {s} < 2")));
        }
        if l != 1 && l != -1 {
            return Err(FrameError::Type(format!("L = {l} is not +1 or -1")));
        }
        let t = EtfType { k, l, s };
        let (s, k) = (s as i128, k as i128);
        if (s * (s - l as i128)) % k != 0 {
            return Err(FrameError::Type(format!("K = {k} does not divide S(S-L) = {}", s * (s - l as i128))));
        }
        if t.m() <= 0 {
            return Err(FrameError::Type(format!("S(K-1)+L = {} is not positive", t.m())));
        }
        Ok(t)
    }

    /// `S(K-1) + L`.
    pub fn m(&self) -> i128 {
        self.s as i128 * (self.k as i128 - 1) + self.l as i128
    }

    /// `S + L`.
    pub fn s_plus_l(&self) -> i128 {
        self.s as i128 + self.l as i128
    }

    /// `D = (S/K)(S(K-1)+L)`.
    pub fn dimension(&self) -> i128 {
        self.s as i128 * self.m() / self.k as i128
    }

    /// `N = (S+L)(S(K-1)+L)`.
    pub fn count(&self) -> i128 {
        self.s_plus_l() * self.m()
    }

    /// Tight-frame constant `K(S+L)` at squared norm `S`.
    pub fn tight_constant(&self) -> i128 {
        self.k as i128 * self.s_plus_l()
    }

    /// Squared norm of the Naimark complement at squared norm `S`: `S(K-1) + KL`.
    pub fn complement_norm(&self) -> i128 {
        self.s as i128 * (self.k as i128 - 1) + self.k as i128 * self.l as i128
    }
}

/// Every `(K, L, S)` whose parameters are `(D, N)`, `L = +1` first.
pub fn classify_type(d: u64, n: u64) -> Result<Vec<EtfType>, FrameError> {
    if d <= 1 || n <= d {
        return Err(FrameError::Domain { d, n });
    }
    let (d, n) = (d as u128, n as u128);
    let num = d.checked_mul(n - 1).ok_or_else(|| FrameError::Overflow("D(N-1)".into()))?;
    let den = n - d;
    if num % den != 0 {
        return Ok(Vec::new());
    }
    let s2 = num / den;
    let s = s2.sqrt();
    if s * s != s2 || s < 2 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for l in [1i8, -1] {
        let spl = if l == 1 { s + 1 } else { s - 1 };
        let kden = d * spl;
        let knum = n.checked_mul(s).ok_or_else(|| FrameError::Overflow("NS".into()))?;
        if knum % kden != 0 {
            continue;
        }
        let k = knum / kden;
        if k == 0 || k > u64::MAX as u128 || s > u64::MAX as u128 {
            continue;
        }
        if let Ok(t) = EtfType::new(k as u64, l, s as u64) {
            if t.dimension() as u128 == d && t.count() as u128 == n {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// `q·G'` where `G' = A·I - G` and `A = p/q` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaimarkGram {
    pub cleared: CycMatrix,
    pub denominator: BigInt,
}

impl NaimarkGram {
    /// Diagonal of `G'` when it is integral.
    pub fn diagonal(&self) -> Option<Vec<BigInt>> {
        (0..self.cleared.rows())
            .map(|i| {
                let v = self.cleared.get(i, i).as_integer()?;
                (v % &self.denominator).is_zero().then(|| v / &self.denominator)
            })
            .collect()
    }
}

/// Forms `A·I - G` and certifies `G'G' = A·G'`, checked as `H² = pH` for
/// `H = pI - qG`.
pub fn naimark_gram(g: &CycMatrix, a: &BigRational) -> Result<NaimarkGram, FrameError> {
    if !g.is_square() {
        return Err(FrameError::Naimark("Gram matrix is not square".into()));
    }
    if !a.is_positive() {
        return Err(FrameError::Naimark(format!("tight constant {a} is not positive")));
    }
    let (p, q) = (a.numer().clone(), a.denom().clone());
    let n = g.rows();
    let pi = CycMatrix::scalar_identity(&CycScalar::from_int(g.order(), p.clone()), n);
    let h = pi.sub(&g.scale_int(&q)).expect("square");
    let hh = h.mul(&h).expect("square");
    if !hh.equals(&h.scale_int(&p)) {
        // equivalent to G·G ≠ A·G
        return Err(FrameError::Naimark(format!("G'·G' ≠ A·G': the Gram is not of a tight frame with constant {a}")));
    }
    Ok(NaimarkGram { cleared: h, denominator: q })
}

/// Result of [`verify_tdtf`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdtfReport {
    pub tight: bool,
    /// Distinct off-diagonal Gram values, when there are at most two.
    pub values: Option<Vec<CycScalar>>,
    /// Distinct squared moduli of off-diagonal Gram entries (up to three collected).
    pub moduli: Vec<CycScalar>,
}

impl TdtfReport {
    /// Tight, and the off-diagonal entries take at most two moduli.
    pub fn passes(&self) -> bool {
        self.tight && self.moduli.len() <= 2
    }

    pub fn is_equiangular(&self) -> bool {
        self.moduli.len() <= 1
    }
}

pub fn verify_tdtf(frame: &Frame) -> TdtfReport {
    let phi = frame.synthesis();
    let tight = phi.frame_operator().as_scalar_identity().is_some();
    let g = phi.gram();
    let n = g.rows();
    let mut values: Vec<CycScalar> = Vec::new();
    let mut too_many = false;
    let mut moduli: Vec<CycScalar> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let v = g.get(i, j);
            if !too_many && !values.contains(v) {
                if values.len() == 2 {
                    too_many = true;
                } else {
                    values.push(v.clone());
                }
            }
            if moduli.len() < 3 {
                let m = v.abs_squared();
                if !moduli.contains(&m) {
                    moduli.push(m);
                }
            }
        }
    }
    TdtfReport { tight, values: (!too_many).then_some(values), moduli }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::{HadamardMatrix, SimplexFrame};
    use num_traits::One;

    fn simplex(n: usize) -> Frame {
        let h = HadamardMatrix::fourier(n).unwrap();
        Frame::new(SimplexFrame::from_hadamard(&h).unwrap().into_matrix()).unwrap()
    }

    fn ty(k: u64, l: i8, s: u64) -> EtfType {
        EtfType { k, l, s }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_type(6, 16).unwrap(), vec![ty(2, 1, 3), ty(4, -1, 3)]);
        assert!(classify_type(3, 6).unwrap().is_empty());
        assert_eq!(classify_type(2, 3).unwrap(), vec![ty(1, 1, 2), ty(3, -1, 2)]);
        assert_eq!(classify_type(11, 33).unwrap(), vec![ty(4, -1, 4)]);
        assert_eq!(classify_type(266, 1008).unwrap(), vec![ty(4, -1, 19)]);
        assert!(classify_type(1, 3).is_err());
        assert!(classify_type(5, 5).is_err());
    }

    #[test]
    fn type_display_and_formulas() {
        let t = EtfType::new(4, -1, 3).unwrap();
        assert_eq!(t.to_string(), "(4,-1,3)");
        assert_eq!((t.dimension(), t.count(), t.m(), t.tight_constant(), t.complement_norm()), (6, 16, 8, 8, 5));
        assert_eq!(EtfType::new(2, 1, 3).unwrap().to_string(), "(2,+1,3)");
        assert!(EtfType::new(4, -1, 2).is_err());
        assert!(EtfType::new(1, -1, 2).is_err());
    }

    #[test]
    fn simplex_certificate() {
        let c = verify_etf(&simplex(3));
        assert!(c.is_etf() && c.flat && c.centered);
        assert_eq!((c.s.clone().unwrap(), c.t.clone().unwrap()), (BigInt::from(2), BigInt::from(1)));
        assert_eq!(c.a.clone().unwrap(), BigRational::from_integer(BigInt::from(3)));
        assert_eq!(c.summary(), "ETF D=2 N=3 s=2 t=1 A=3");
    }

    #[test]
    fn degenerate_frames() {
        let single = Frame::new(CycMatrix::from_ints(1, 2, 1, &[1, 2])).unwrap();
        assert_eq!(single.gram(), CycMatrix::from_ints(1, 1, 1, &[5]));
        let basis = Frame::new(CycMatrix::identity(2, 3)).unwrap();
        assert_eq!(basis.gram(), CycMatrix::identity(2, 3));
        let twins = Frame::new(CycMatrix::from_ints(1, 2, 2, &[1, 1, 1, 1])).unwrap();
        let c = verify_etf(&twins);
        assert!(c.equal_norm && !c.welch_equality);
        assert_eq!(c.t, Some(BigInt::from(4)));
        assert!(Frame::new(CycMatrix::from_ints(1, 1, 2, &[1, 0])).is_err());
    }

    #[test]
    fn perturbed_simplex_names_entry() {
        let mut m = simplex(3).into_synthesis();
        m.set(0, 1, CycScalar::from_int(3, 2));
        let c = verify_etf(&Frame::new(m).unwrap());
        assert!(!c.is_etf());
        assert!(c.violation.unwrap().contains("Gram entry"));
    }

    #[test]
    fn naimark_of_simplex() {
        let f = simplex(3);
        let g = f.gram();
        let ng = naimark_gram(&g, &BigRational::from_integer(BigInt::from(3))).unwrap();
        assert_eq!(ng.denominator, BigInt::one());
        assert_eq!(ng.diagonal().unwrap(), vec![BigInt::one(); 3]);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert!(ng.cleared.get(i, j).abs_squared().is_one());
                }
            }
        }
        let orth = CycMatrix::scalar_identity(&CycScalar::from_int(1, 4), 3);
        let z = naimark_gram(&orth, &BigRational::from_integer(BigInt::from(4))).unwrap();
        assert!(z.cleared.entries().iter().all(CycScalar::is_zero));
        assert!(naimark_gram(&g, &BigRational::from_integer(BigInt::from(2))).is_err());
    }

    #[test]
    fn tdtf_on_etf_and_random() {
        let r = verify_tdtf(&simplex(4));
        assert!(r.passes() && r.is_equiangular());
        let rand = Frame::new(CycMatrix::from_ints(1, 2, 3, &[1, 2, 0, 0, 1, 3])).unwrap();
        assert!(!verify_tdtf(&rand).passes());
    }
}
