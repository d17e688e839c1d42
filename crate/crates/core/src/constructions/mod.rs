//! Frame factories: regular simplices, Steiner ETFs, MOLS frames and the
//! GDD-based construction, plus existence bookkeeping.

mod status;

use std::fmt;

use num_bigint::BigInt;

use crate::cyclo::{lcm_orders, CycMatrix, CycScalar};
use crate::designs::{DesignError, EmbeddingOperatorSet, GroupDivisibleDesign};
use crate::frames::{classify_type, verify_etf, EtfCertificate, EtfType, Frame, FrameError};
use crate::hadamard::{HadamardError, HadamardMatrix, SimplexFrame};

pub use status::{check_chen_classification, existence_status, ExistenceStatus, Status};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("plan rejected: {0}")]
    Plan(#[from] PlanRejection),
    #[error("{0}")]
    Parameter(String),
    #[error("certification failed: {0}")]
    Certification(String),
}

/// The flat `(N-1) × N` simplex from rows `2..N` of a dephased Hadamard matrix.
pub fn regular_simplex(h: &HadamardMatrix) -> Result<Frame, ConstructionError> {
    Ok(Frame::new(SimplexFrame::from_hadamard(h)?.into_matrix())?)
}

fn require_dephased(h: &HadamardMatrix, what: &str, size: usize) -> Result<(), ConstructionError> {
    if h.size() != size {
        return Err(ConstructionError::Parameter(format!(
            "{what} Hadamard matrix has size {}, expected {size}",
            h.size()
        )));
    }
    if !h.is_dephased() {
        return Err(HadamardError::NotDephased.into());
    }
    Ok(())
}

/// Columns `E_v f_i` (v-major) for a `BIBD(V, K, 1)` and a dephased Hadamard of size `R + 1`.
pub fn steiner_etf(bibd: &GroupDivisibleDesign, h: &HadamardMatrix) -> Result<Frame, ConstructionError> {
    if bibd.m() != 1 {
        return Err(ConstructionError::Parameter(format!("Steiner ETF needs a BIBD (M = 1), got M = {}", bibd.m())));
    }
    let r = bibd.replication();
    require_dephased(h, "Steiner", r + 1)?;
    let emb = EmbeddingOperatorSet::new(bibd)?;
    let hm = h.matrix();
    let (b, v) = (bibd.block_count(), bibd.u());
    let mut mat = CycMatrix::zeros(hm.order(), b, v * (r + 1));
    for vertex in 0..v {
        let support = emb.support(vertex, 0);
        for i in 0..=r {
            for (slot, &row) in support.iter().enumerate() {
                mat.set(row, vertex * (r + 1) + i, hm.get(slot + 1, i).clone());
            }
        }
    }
    Ok(Frame::new(mat)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MolsVariant {
    /// `(I_K ⊗ F) Xᵀ`.
    Centered,
    /// The centered frame with a row of ones on top.
    Augmented,
}

impl std::str::FromStr for MolsVariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "centered" => Ok(MolsVariant::Centered),
            "augmented" => Ok(MolsVariant::Augmented),
            other => Err(format!("unknown variant {other:?} (centered|augmented)")),
        }
    }
}

/// Flat tight frame from `TD(K, M)` and a dephased Hadamard of size `M`.
pub fn mols_tdtf(td: &GroupDivisibleDesign, h: &HadamardMatrix, variant: MolsVariant) -> Result<Frame, ConstructionError> {
    if td.u() != td.k() {
        return Err(ConstructionError::Parameter(format!(
            "need a transversal design (U = K), got K = {} U = {}",
            td.k(),
            td.u()
        )));
    }
    td.verify().map_err(DesignError::Violation)?;
    let (k, m) = (td.k(), td.m());
    require_dephased(h, "MOLS", m)?;
    let hm = h.matrix();
    let order = hm.order();
    let top = usize::from(variant == MolsVariant::Augmented);
    let rows = top + k * (m - 1);
    let mut mat = CycMatrix::zeros(order, rows, td.block_count());
    for (col, block) in td.blocks().iter().enumerate() {
        if top == 1 {
            mat.set(0, col, CycScalar::one(order));
        }
        for &vertex in block {
            let (g, x) = (vertex / m, vertex % m);
            for r in 0..m - 1 {
                mat.set(top + g * (m - 1) + r, col, hm.get(r + 1, x).clone());
            }
        }
    }
    Ok(Frame::new(mat)?)
}

/// The violated admissibility condition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanRejection {
    #[error("K = {0} < 2: a GDD needs block size at least 2")]
    BlockSize(u64),
    #[error("U = {u} < K = {k}")]
    GroupCount { u: u64, k: u64 },
    #[error("(K-1) = {km1} does not divide (U-1) = {um1}")]
    Replication { km1: u64, um1: u64 },
    #[error("K(K-1) = {div} does not divide (S-L)U(U-1) = {val}")]
    BlockCount { div: i128, val: i128 },
    #[error("(S+L)(K-1) = {div} does not divide (K-2)(U-1) = {val}, so W = R/(S+L) is not an integer")]
    SimplexSize { div: i128, val: i128 },
    #[error("derived parameters are inconsistent: {0}")]
    Inconsistent(String),
    #[error("parameters too large")]
    Overflow,
}

/// Derived quantities of the GDD construction for a seed type and group count `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GddEtfPlan {
    pub seed: EtfType,
    pub u: u64,
    pub m: u64,
    pub r: u64,
    pub w: u64,
    pub b: u64,
    pub d: u64,
    pub d_prime: u64,
    pub n_prime: u64,
    pub target: EtfType,
}

impl GddEtfPlan {
    pub fn s_prime(&self) -> u64 {
        self.target.s
    }

    /// Size of `H_e`: `S + L`.
    pub fn he_size(&self) -> u64 {
        (self.seed.s as i128 + self.seed.l as i128) as u64
    }

    /// Size of `H_f`: `W + 1`.
    pub fn hf_size(&self) -> u64 {
        self.w + 1
    }
}

impl fmt::Display for GddEtfPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "seed={} U={} M={} R={} W={} S'={} D'={} N'={} He={} Hf={}",
            self.seed,
            self.u,
            self.m,
            self.r,
            self.w,
            self.s_prime(),
            self.d_prime,
            self.n_prime,
            self.he_size(),
            self.hf_size()
        )
    }
}

pub fn plan_gdd_etf(seed: EtfType, u: u64) -> Result<GddEtfPlan, PlanRejection> {
    let seed = EtfType::new(seed.k, seed.l, seed.s).map_err(|e| PlanRejection::Inconsistent(e.to_string()))?;
    let (k, s, l) = (seed.k as i128, seed.s as i128, seed.l as i128);
    if seed.k < 2 {
        return Err(PlanRejection::BlockSize(seed.k));
    }
    if u < seed.k {
        return Err(PlanRejection::GroupCount { u, k: seed.k });
    }
    let ui = u as i128;
    if !(u - 1).is_multiple_of(seed.k - 1) {
        return Err(PlanRejection::Replication { km1: seed.k - 1, um1: u - 1 });
    }
    let val = (s - l).checked_mul(ui).and_then(|x| x.checked_mul(ui - 1)).ok_or(PlanRejection::Overflow)?;
    if val % (k * (k - 1)) != 0 {
        return Err(PlanRejection::BlockCount { div: k * (k - 1), val });
    }
    let div = (s + l) * (k - 1);
    let val2 = (k - 2) * (ui - 1);
    if val2 % div != 0 {
        return Err(PlanRejection::SimplexSize { div, val: val2 });
    }
    let m = seed.m();
    let r = m * (ui - 1) / (k - 1);
    let w = r / (s + l);
    let s_prime = s + r;
    if (m * ui - l) % (k - 1) != 0 || (m * ui - l) / (k - 1) != s_prime {
        return Err(PlanRejection::Inconsistent("S + R differs from (MU - L)/(K - 1)".into()));
    }
    let b_num = m.checked_mul(m).and_then(|x| x.checked_mul(ui)).and_then(|x| x.checked_mul(ui - 1)).ok_or(PlanRejection::Overflow)?;
    if b_num % (k * (k - 1)) != 0 {
        return Err(PlanRejection::Inconsistent("GDD block count is not an integer".into()));
    }
    let b = b_num / (k * (k - 1));
    let d = seed.dimension();
    let d_prime = ui * d + b;
    let target = EtfType::new(seed.k, seed.l, s_prime as u64).map_err(|e| PlanRejection::Inconsistent(e.to_string()))?;
    if target.dimension() != d_prime {
        return Err(PlanRejection::Inconsistent(format!(
            "UD + B = {d_prime} but the target type has D = {}",
            target.dimension()
        )));
    }
    Ok(GddEtfPlan {
        seed,
        u,
        m: m as u64,
        r: r as u64,
        w: w as u64,
        b: b as u64,
        d: d as u64,
        d_prime: d_prime as u64,
        n_prime: target.count() as u64,
        target,
    })
}

/// A frame together with its certificate and classified types.
#[derive(Clone, Debug)]
pub struct CertifiedEtf {
    pub frame: Frame,
    pub certificate: EtfCertificate,
    pub types: Vec<EtfType>,
}

/// Certifies `frame` as an ETF and classifies it.
pub fn certify(frame: Frame) -> Result<CertifiedEtf, ConstructionError> {
    let certificate = verify_etf(&frame);
    if !certificate.is_etf() {
        return Err(ConstructionError::Certification(
            certificate.violation.clone().unwrap_or_else(|| "not an ETF".into()),
        ));
    }
    let (d, n) = (frame.dimension() as u64, frame.count() as u64);
    let types = if d > 1 && n > d { classify_type(d, n)? } else { Vec::new() };
    Ok(CertifiedEtf { frame, certificate, types })
}

/// The seed type for a certified seed frame at scaling `‖φ‖² = S` and block size `K`.
pub fn seed_type(cert: &EtfCertificate, k: usize) -> Result<EtfType, ConstructionError> {
    if !cert.is_etf() {
        return Err(ConstructionError::Parameter(format!(
            "seed is not an ETF: {}",
            cert.violation.clone().unwrap_or_default()
        )));
    }
    if cert.t != Some(BigInt::from(1)) {
        return Err(ConstructionError::Parameter("seed must be scaled so that |<φ,φ'>|² = 1".into()));
    }
    let s = cert.s.clone().expect("equal norm");
    if cert.d < 2 || cert.n <= cert.d {
        return Err(ConstructionError::Parameter(format!("seed ETF({}, {}) has no type", cert.d, cert.n)));
    }
    classify_type(cert.d as u64, cert.n as u64)?
        .into_iter()
        .find(|t| t.k == k as u64 && BigInt::from(t.s) == s)
        .ok_or_else(|| {
            ConstructionError::Parameter(format!(
                "seed ETF({}, {}) with squared norm {s} has no type with K = {k} and S = {s}",
                cert.d, cert.n
            ))
        })
}

/// `ψ_{u,m,i,j} = (δ_u ⊗ φ_{m,i}) ⊕ E_{u,m}(e_i ⊗ f_j)`, columns in lexicographic
/// `(u, m, i, j)` order. The result is certified before it is returned.
pub fn gdd_etf(
    seed: &Frame,
    gdd: &GroupDivisibleDesign,
    he: &HadamardMatrix,
    hf: &HadamardMatrix,
) -> Result<CertifiedEtf, ConstructionError> {
    let ty = seed_type(&verify_etf(seed), gdd.k())?;
    let plan = plan_gdd_etf(ty, gdd.u() as u64)?;
    let spl = plan.he_size() as usize;
    let groups = seed.count() / spl;
    if groups != gdd.m() || plan.m as usize != gdd.m() {
        return Err(ConstructionError::Parameter(format!(
            "seed has {groups} groups of {spl} columns but the GDD has groups of size {}",
            gdd.m()
        )));
    }
    if let Some(g) = seed.groups() {
        if g != groups {
            return Err(ConstructionError::Parameter(format!("seed is grouped into {g} groups, expected {groups}")));
        }
    }
    if he.size() != spl {
        return Err(ConstructionError::Parameter(format!("H_e has size {}, expected S + L = {spl}", he.size())));
    }
    require_dephased(hf, "H_f", plan.hf_size() as usize)?;
    let emb = EmbeddingOperatorSet::new(gdd)?;

    let order = lcm_orders([seed.order(), he.order(), hf.order()]);
    let phi = seed.synthesis().lift(order).expect("lcm");
    let e = he.matrix().lift(order).expect("lcm");
    let f = hf.matrix().lift(order).expect("lcm");
    let (u_count, m_count) = (gdd.u(), gdd.m());
    let (d, w) = (seed.dimension(), plan.w as usize);
    let rows = u_count * d + gdd.block_count();
    let cols = u_count * m_count * spl * (w + 1);
    debug_assert_eq!((rows as u64, cols as u64), (plan.d_prime, plan.n_prime));

    let zero = CycScalar::zero(order);
    let mut entries = vec![zero; rows * cols];
    for u in 0..u_count {
        for m in 0..m_count {
            let support = emb.support(u, m);
            for i in 0..spl {
                let seed_col = m * spl + i;
                for j in 0..=w {
                    let col = ((u * m_count + m) * spl + i) * (w + 1) + j;
                    for r in 0..d {
                        entries[(u * d + r) * cols + col] = phi.get(r, seed_col).clone();
                    }
                    for i2 in 0..spl {
                        for w2 in 0..w {
                            let row = u_count * d + support[i2 * w + w2];
                            entries[row * cols + col] = e.get(i2, i) * f.get(w2 + 1, j);
                        }
                    }
                }
            }
        }
    }
    let frame = Frame::new(CycMatrix::new(order, rows, cols, entries).expect("dimensions"))?;
    let out = certify(frame)?;
    let s_ok = out.certificate.s == Some(BigInt::from(plan.s_prime()));
    if !s_ok || out.certificate.t != Some(BigInt::from(1)) || !out.types.contains(&plan.target) {
        return Err(ConstructionError::Certification(format!(
            "output is an ETF but not of type {} at squared norm {}",
            plan.target,
            plan.s_prime()
        )));
    }
    Ok(out)
}

/// Reorders columns so that `perm[c]` becomes column `c`.
pub fn permute_columns(frame: &Frame, perm: &[usize]) -> Result<Frame, ConstructionError> {
    Ok(Frame::new(frame.synthesis().select_columns(perm))?)
}
