//! Python bindings: designs, Hadamard matrices, frames and their certificates.

use gddetf::constructions::{certify, permute_columns};
use gddetf::designs::{
    affine_plane, complete_pairs, fill_holes, projective_plane, steiner_triple_system, transversal_design,
    wilson_product, FiniteField,
};
use gddetf::io::{parse_design, parse_frame, write_design, write_frame, IoError};
use gddetf::{
    classify_type, existence_status, gdd_etf as core_gdd_etf, mols_tdtf, naimark_gram, plan_gdd_etf,
    regular_simplex, steiner_etf as core_steiner_etf, verify_etf, verify_tdtf, ConstructionError, EtfCertificate,
    EtfType, Frame as CoreFrame, GroupDivisibleDesign, HadamardMatrix, MolsVariant,
};
use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(gddetf, VerificationError, PyException, "An exact certification check failed.");

fn value_err(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn verification_err(e: impl ToString) -> PyErr {
    VerificationError::new_err(e.to_string())
}

fn construction_err(e: ConstructionError) -> PyErr {
    match e {
        ConstructionError::Certification(_) => verification_err(e),
        _ => value_err(e),
    }
}

fn io_err(e: IoError) -> PyErr {
    match e {
        IoError::Syntax { .. } => value_err(e),
        IoError::Design(_) => verification_err(e),
    }
}

fn field(q: u64) -> PyResult<FiniteField> {
    FiniteField::of_order(q).map_err(value_err)
}

type TypeTuple = (u64, i8, u64);

fn tuple(t: &EtfType) -> TypeTuple {
    (t.k, t.l, t.s)
}

/// A verified group divisible design on `U·M` points.
#[pyclass(frozen, from_py_object, module = "gddetf")]
#[derive(Clone)]
pub struct Design {
    inner: GroupDivisibleDesign,
}

fn design(inner: Result<GroupDivisibleDesign, gddetf::DesignError>) -> PyResult<Design> {
    Ok(Design { inner: inner.map_err(value_err)? })
}

#[pymethods]
impl Design {
    #[staticmethod]
    fn td(k: usize, q: u64) -> PyResult<Self> {
        design(transversal_design(k, q))
    }

    #[staticmethod]
    fn sts(u: usize) -> PyResult<Self> {
        design(steiner_triple_system(u))
    }

    #[staticmethod]
    fn affine(q: u64) -> PyResult<Self> {
        design(affine_plane(&field(q)?))
    }

    #[staticmethod]
    fn projective(q: u64) -> PyResult<Self> {
        design(projective_plane(&field(q)?))
    }

    #[staticmethod]
    fn pairs(v: usize) -> PyResult<Self> {
        design(complete_pairs(v))
    }

    /// Wilson product: type `(MN)^V` from outer `M^U` and inner `N^V`.
    #[staticmethod]
    fn product(outer: &Design, inner: &Design) -> PyResult<Self> {
        design(wilson_product(&outer.inner, &inner.inner))
    }

    #[staticmethod]
    fn fill(inner: &Design, outer: &Design) -> PyResult<Self> {
        design(fill_holes(&inner.inner, &outer.inner))
    }

    /// Parses and verifies the `GDD K U M B` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Design { inner: parse_design(text).map_err(io_err)? })
    }

    fn to_text(&self) -> String {
        write_design(&self.inner)
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn u(&self) -> usize {
        self.inner.u()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn replication(&self) -> usize {
        self.inner.replication()
    }

    #[getter]
    fn blocks(&self) -> Vec<Vec<usize>> {
        self.inner.blocks().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.block_count()
    }

    fn __repr__(&self) -> String {
        match self.inner.verify() {
            Ok(p) => format!("Design({p})"),
            Err(e) => format!("Design(invalid: {e})"),
        }
    }
}

/// A verified (complex) Hadamard matrix over a cyclotomic ring.
#[pyclass(frozen, from_py_object, module = "gddetf")]
#[derive(Clone)]
pub struct Hadamard {
    inner: HadamardMatrix,
}

#[pymethods]
impl Hadamard {
    /// Size `2^k`.
    #[staticmethod]
    fn sylvester(k: u32) -> Self {
        Hadamard { inner: HadamardMatrix::sylvester(k) }
    }

    #[staticmethod]
    fn paley1(q: u64) -> PyResult<Self> {
        Ok(Hadamard { inner: HadamardMatrix::paley_i(&field(q)?).map_err(value_err)? })
    }

    #[staticmethod]
    fn paley2(q: u64) -> PyResult<Self> {
        Ok(Hadamard { inner: HadamardMatrix::paley_ii(&field(q)?).map_err(value_err)? })
    }

    #[staticmethod]
    fn fourier(n: usize) -> PyResult<Self> {
        Ok(Hadamard { inner: HadamardMatrix::fourier(n).map_err(value_err)? })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let mat = parse_frame(text).map_err(io_err)?;
        Ok(Hadamard { inner: HadamardMatrix::new(mat).map_err(verification_err)? })
    }

    fn kron(&self, other: &Hadamard) -> Self {
        Hadamard { inner: self.inner.kron(&other.inner) }
    }

    fn dephase(&self) -> Self {
        Hadamard { inner: self.inner.dephase() }
    }

    fn to_text(&self) -> String {
        write_frame(self.inner.matrix())
    }

    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn is_real(&self) -> bool {
        self.inner.is_real()
    }

    #[getter]
    fn is_dephased(&self) -> bool {
        self.inner.is_dephased()
    }

    fn __repr__(&self) -> String {
        format!("Hadamard(size={}, order={})", self.inner.size(), self.inner.order())
    }
}

/// Exact ETF certificate.
#[pyclass(frozen, get_all, module = "gddetf")]
pub struct Certificate {
    d: usize,
    n: usize,
    s: Option<BigInt>,
    t: Option<BigInt>,
    /// Tight constant as a string, e.g. `"12"` or `"3/2"`.
    a: Option<String>,
    is_etf: bool,
    equal_norm: bool,
    equiangular: bool,
    tight: bool,
    flat: bool,
    centered: bool,
    violation: Option<String>,
    types: Vec<TypeTuple>,
}

impl Certificate {
    fn new(c: &EtfCertificate) -> Self {
        let types = if c.is_etf() && c.d > 1 && c.n > c.d {
            classify_type(c.d as u64, c.n as u64).map(|v| v.iter().map(tuple).collect()).unwrap_or_default()
        } else {
            Vec::new()
        };
        Certificate {
            d: c.d,
            n: c.n,
            s: c.s.clone(),
            t: c.t.clone(),
            a: c.a.as_ref().map(ToString::to_string),
            is_etf: c.is_etf(),
            equal_norm: c.equal_norm,
            equiangular: c.equiangular,
            tight: c.tight,
            flat: c.flat,
            centered: c.centered,
            violation: c.violation.clone(),
            types,
        }
    }
}

#[pymethods]
impl Certificate {
    fn __bool__(&self) -> bool {
        self.is_etf
    }

    fn __repr__(&self) -> String {
        let show = |v: &Option<BigInt>| v.as_ref().map_or("-".into(), ToString::to_string);
        format!(
            "{} D={} N={} s={} t={} A={}",
            if self.is_etf { "ETF" } else { "NOT-ETF" },
            self.d,
            self.n,
            show(&self.s),
            show(&self.t),
            self.a.as_deref().unwrap_or("-")
        )
    }
}

/// A `D × N` synthesis matrix over `Z[ζ_n]`.
#[pyclass(frozen, from_py_object, module = "gddetf")]
#[derive(Clone)]
pub struct Frame {
    inner: CoreFrame,
}

#[pymethods]
impl Frame {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let mat = parse_frame(text).map_err(io_err)?;
        Ok(Frame { inner: CoreFrame::new(mat).map_err(value_err)? })
    }

    fn to_text(&self) -> String {
        write_frame(self.inner.synthesis())
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn count(&self) -> usize {
        self.inner.count()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    /// Canonical coefficient vectors, row-major.
    fn entries(&self) -> Vec<Vec<Vec<BigInt>>> {
        let m = self.inner.synthesis();
        (0..m.rows()).map(|r| m.row(r).iter().map(|e| e.coeffs().to_vec()).collect()).collect()
    }

    fn certificate(&self) -> Certificate {
        Certificate::new(&verify_etf(&self.inner))
    }

    /// `(tight, squared moduli of off-diagonal Gram entries)`.
    fn tdtf(&self) -> (bool, Vec<String>) {
        let r = verify_tdtf(&self.inner);
        (r.tight, r.moduli.iter().map(ToString::to_string).collect())
    }

    /// Certifies the Naimark complement Gram `A·I - G`; returns its diagonal.
    fn naimark(&self) -> PyResult<Vec<BigInt>> {
        let c = verify_etf(&self.inner);
        let is_etf = c.is_etf();
        let a = c.a.filter(|_| is_etf).ok_or_else(|| verification_err("frame is not an ETF"))?;
        let g = naimark_gram(&self.inner.gram(), &a).map_err(verification_err)?;
        g.diagonal().ok_or_else(|| verification_err("complement diagonal is not integral"))
    }

    fn permute(&self, perm: Vec<usize>) -> PyResult<Self> {
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        if sorted != (0..self.inner.count()).collect::<Vec<_>>() {
            return Err(value_err("not a permutation of the columns"));
        }
        Ok(Frame { inner: permute_columns(&self.inner, &perm).map_err(construction_err)? })
    }

    fn __repr__(&self) -> String {
        format!("Frame(D={}, N={}, order={})", self.inner.dimension(), self.inner.count(), self.inner.order())
    }
}

fn certified(frame: CoreFrame) -> PyResult<Frame> {
    Ok(Frame { inner: certify(frame).map_err(construction_err)?.frame })
}

/// Every `(K, L, S)` with parameters `(D, N)`.
#[pyfunction]
fn classify(d: u64, n: u64) -> PyResult<Vec<TypeTuple>> {
    Ok(classify_type(d, n).map_err(value_err)?.iter().map(tuple).collect())
}

/// Existence status line, e.g. `"known-per-paper (Thm 1.2a)"`.
#[pyfunction]
fn status(k: u64, l: i8, s: u64) -> PyResult<String> {
    let t = EtfType::new(k, l, s).map_err(value_err)?;
    Ok(existence_status(t).map_err(value_err)?.to_string())
}

/// Derived quantities of the GDD construction for seed type `(k, l, s)` and `u` groups.
#[pyfunction]
fn plan(k: u64, l: i8, s: u64, u: u64) -> PyResult<String> {
    let t = EtfType::new(k, l, s).map_err(value_err)?;
    Ok(plan_gdd_etf(t, u).map_err(value_err)?.to_string())
}

#[pyfunction]
fn simplex(h: &Hadamard) -> PyResult<Frame> {
    certified(regular_simplex(&h.inner).map_err(construction_err)?)
}

#[pyfunction]
fn steiner_etf(bibd: &Design, h: &Hadamard) -> PyResult<Frame> {
    certified(core_steiner_etf(&bibd.inner, &h.inner).map_err(construction_err)?)
}

/// Flat tight frame from a transversal design; not certified as an ETF.
#[pyfunction]
#[pyo3(signature = (td, h, variant = "centered"))]
fn mols_frame(td: &Design, h: &Hadamard, variant: &str) -> PyResult<Frame> {
    let v: MolsVariant = variant.parse().map_err(value_err)?;
    Ok(Frame { inner: mols_tdtf(&td.inner, &h.inner, v).map_err(construction_err)? })
}

#[pyfunction]
fn gdd_etf(seed: &Frame, gdd: &Design, he: &Hadamard, hf: &Hadamard) -> PyResult<Frame> {
    let out = core_gdd_etf(&seed.inner, &gdd.inner, &he.inner, &hf.inner).map_err(construction_err)?;
    Ok(Frame { inner: out.frame })
}

#[pymodule]
#[pyo3(name = "gddetf")]
pub fn gddetf_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Design>()?;
    m.add_class::<Hadamard>()?;
    m.add_class::<Frame>()?;
    m.add_class::<Certificate>()?;
    m.add("VerificationError", m.py().get_type::<VerificationError>())?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(status, m)?)?;
    m.add_function(wrap_pyfunction!(plan, m)?)?;
    m.add_function(wrap_pyfunction!(simplex, m)?)?;
    m.add_function(wrap_pyfunction!(steiner_etf, m)?)?;
    m.add_function(wrap_pyfunction!(mols_frame, m)?)?;
    m.add_function(wrap_pyfunction!(gdd_etf, m)?)?;
    Ok(())
}
