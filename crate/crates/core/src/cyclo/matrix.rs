use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{lcm_orders, ring, CycScalar, CycloError};

/// Dense row-major matrix over `Z[ζ_n]`.
///
/// Binary operations lift both operands to the least common multiple of
/// their orders before combining them.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    order: u32,
    rows: usize,
    cols: usize,
    entries: Vec<CycScalar>,
}

impl CycMatrix {
    pub fn new(order: u32, rows: usize, cols: usize, entries: Vec<CycScalar>) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::ZeroOrder);
        }
        if entries.len() != rows * cols {
            return Err(CycloError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.order() != order) {
            return Err(CycloError::OrderMismatch(order, e.order()));
        }
        Ok(CycMatrix { order, rows, cols, entries })
    }

    pub fn from_fn(order: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycScalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let e = f(r, c);
                assert_eq!(e.order(), order, "entry ({r},{c}) has the wrong order");
                entries.push(e);
            }
        }
        CycMatrix { order, rows, cols, entries }
    }

    /// Integer matrix embedded at the given order.
    pub fn from_ints(order: u32, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        Self::from_fn(order, rows, cols, |r, c| CycScalar::from_int(order, values[r * cols + c]))
    }

    pub fn zeros(order: u32, rows: usize, cols: usize) -> Self {
        let z = CycScalar::zero(order);
        CycMatrix { order, rows, cols, entries: vec![z; rows * cols] }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        Self::scalar_identity(&CycScalar::one(order), n)
    }

    pub fn scalar_identity(value: &CycScalar, n: usize) -> Self {
        let order = value.order();
        Self::from_fn(order, n, n, |r, c| if r == c { value.clone() } else { CycScalar::zero(order) })
    }

    pub fn all_ones(order: u32, rows: usize, cols: usize) -> Self {
        let one = CycScalar::one(order);
        CycMatrix { order, rows, cols, entries: vec![one; rows * cols] }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycScalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: CycScalar) {
        assert_eq!(value.order(), self.order);
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[CycScalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<CycScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn lift(&self, to: u32) -> Result<Self, CycloError> {
        if to == self.order {
            return Ok(self.clone());
        }
        let entries = self.entries.iter().map(|e| e.lift(to)).collect::<Result<_, _>>()?;
        Ok(CycMatrix { order: to, rows: self.rows, cols: self.cols, entries })
    }

    fn lifted_pair(&self, other: &Self) -> (Self, Self) {
        let n = lcm_orders([self.order, other.order]);
        (self.lift(n).expect("lcm"), other.lift(n).expect("lcm"))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).conj());
            }
        }
        CycMatrix { order: self.order, rows: self.cols, cols: self.rows, entries }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CycloError> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, what: &str, f: impl Fn(&CycScalar, &CycScalar) -> CycScalar) -> Result<Self, CycloError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CycloError::Dimension(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (a, b) = self.lifted_pair(other);
        let entries = a.entries.iter().zip(&b.entries).map(|(x, y)| f(x, y)).collect();
        Ok(CycMatrix { order: a.order, rows: a.rows, cols: a.cols, entries })
    }

    pub fn scale(&self, s: &CycScalar) -> Self {
        let n = lcm_orders([self.order, s.order()]);
        let m = self.lift(n).expect("lcm");
        let s = s.lift(n).expect("lcm");
        let entries = m.entries.iter().map(|e| e * &s).collect();
        CycMatrix { order: n, rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        CycMatrix {
            order: self.order,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = self.lifted_pair(other);
        let rows = a.rows * b.rows;
        let cols = a.cols * b.cols;
        Self::from_fn(a.order, rows, cols, |r, c| {
            a.get(r / b.rows, c / b.cols) * b.get(r % b.rows, c % b.cols)
        })
    }

    /// Vertical concatenation (direct sum of the column vectors).
    pub fn vstack(parts: &[&CycMatrix]) -> Result<Self, CycloError> {
        let cols = parts.first().map_or(0, |p| p.cols);
        if parts.iter().any(|p| p.cols != cols) {
            return Err(CycloError::Dimension("vstack: column counts differ".into()));
        }
        let n = lcm_orders(parts.iter().map(|p| p.order));
        let mut entries = Vec::new();
        let mut rows = 0;
        for p in parts {
            entries.extend(p.lift(n)?.entries);
            rows += p.rows;
        }
        Ok(CycMatrix { order: n, rows, cols, entries })
    }

    pub fn hstack(parts: &[&CycMatrix]) -> Result<Self, CycloError> {
        let cols_t: Vec<CycMatrix> = parts.iter().map(|p| p.transpose()).collect();
        let refs: Vec<&CycMatrix> = cols_t.iter().collect();
        Self::vstack(&refs).map(|m| m.transpose())
            .map_err(|_| CycloError::Dimension("hstack: row counts differ".into()))
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.order, self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(self.order, rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    /// Equality as complex matrices (orders may differ).
    pub fn equals(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols {
            return false;
        }
        let (a, b) = self.lifted_pair(other);
        a.entries == b.entries
    }

    /// `Some(c)` when this is `c·I` for a rational integer `c`.
    pub fn as_scalar_identity(&self) -> Option<BigInt> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).as_integer()?.clone();
        for r in 0..self.rows {
            for k in 0..self.cols {
                let e = self.get(r, k);
                let ok = if r == k { e.as_integer() == Some(&c) } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// `A · 1`, the row sums.
    pub fn row_sums(&self) -> Vec<CycScalar> {
        (0..self.rows)
            .map(|r| self.row(r).iter().fold(CycScalar::zero(self.order), |acc, e| &acc + e))
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CycloError> {
        if self.cols != other.rows {
            return Err(CycloError::Dimension(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (a, b) = self.lifted_pair(other);
        let bt = b.transpose();
        let kernel = Kernel::new(&a, &bt);
        let cols = b.cols;
        let entries: Vec<CycScalar> = (0..a.rows)
            .into_par_iter()
            .flat_map_iter(|i| (0..cols).map(move |j| (i, j)).collect::<Vec<_>>())
            .map(|(i, j)| kernel.dot(i, j))
            .collect();
        Ok(CycMatrix { order: a.order, rows: a.rows, cols, entries })
    }

    /// `A*·A`, computed on the upper triangle and mirrored by conjugation.
    pub fn gram(&self) -> Self {
        let at = self.adjoint();
        // rows of A* are conjugated columns of A; pair them against columns of A
        let t = self.transpose();
        let kernel = Kernel::new(&at, &t);
        let n = self.cols;
        let upper: Vec<Vec<CycScalar>> = (0..n)
            .into_par_iter()
            .map(|i| (i..n).map(|j| kernel.dot(i, j)).collect())
            .collect();
        let mut out = CycMatrix::zeros(self.order, n, n);
        for (i, row) in upper.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                let j = i + off;
                if j != i {
                    out.set(j, i, v.conj());
                }
                out.set(i, j, v);
            }
        }
        out
    }

    /// `A·A*`.
    pub fn frame_operator(&self) -> Self {
        self.adjoint().gram()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.entries.iter().map(|e| e.max_abs_coeff()).max().unwrap_or_default()
    }
}

/// Dot products between rows of `left` and rows of `right_t` (i.e. columns
/// of the right factor), with a machine-word fast path.
struct Kernel<'a> {
    left: &'a CycMatrix,
    right_t: &'a CycMatrix,
    degree: usize,
    fast: Option<(Vec<i64>, Vec<bool>, Vec<i64>, Vec<bool>)>,
}

impl<'a> Kernel<'a> {
    fn new(left: &'a CycMatrix, right_t: &'a CycMatrix) -> Self {
        let degree = ring(left.order).degree;
        let pack = |m: &CycMatrix| -> Option<(Vec<i64>, Vec<bool>)> {
            let mut flat = Vec::with_capacity(m.entries.len() * degree);
            let mut nz = Vec::with_capacity(m.entries.len());
            for e in &m.entries {
                flat.extend(e.coeffs_i64()?);
                nz.push(!e.is_zero());
            }
            Some((flat, nz))
        };
        let fast = match (pack(left), pack(right_t)) {
            (Some((a, an)), Some((b, bn))) => Some((a, an, b, bn)),
            _ => None,
        };
        Kernel { left, right_t, degree, fast }
    }

    fn dot(&self, i: usize, j: usize) -> CycScalar {
        if let Some(v) = self.dot_fast(i, j) {
            return v;
        }
        let n = self.left.order;
        self.left
            .row(i)
            .iter()
            .zip(self.right_t.row(j))
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(CycScalar::zero(n), |acc, (a, b)| &acc + &(a * b))
    }

    /// `None` on any i128 overflow; the caller then redoes the entry in BigInt.
    fn dot_fast(&self, i: usize, j: usize) -> Option<CycScalar> {
        let (a, an, b, bn) = self.fast.as_ref()?;
        let d = self.degree;
        let inner = self.left.cols;
        let mut acc = vec![0i128; 2 * d - 1];
        let arow = i * inner;
        let brow = j * inner;
        for k in 0..inner {
            if !an[arow + k] || !bn[brow + k] {
                continue;
            }
            let x = &a[(arow + k) * d..(arow + k + 1) * d];
            let y = &b[(brow + k) * d..(brow + k + 1) * d];
            for (p, &xp) in x.iter().enumerate() {
                if xp == 0 {
                    continue;
                }
                for (q, &yq) in y.iter().enumerate() {
                    if yq != 0 {
                        let t = (xp as i128).checked_mul(yq as i128)?;
                        acc[p + q] = acc[p + q].checked_add(t)?;
                    }
                }
            }
        }
        let r = ring(self.left.order);
        let mut out = vec![0i128; d];
        for (k, &c) in acc.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (t, &p) in r.powers[k].iter().enumerate() {
                if p != 0 {
                    out[t] = out[t].checked_add(c.checked_mul(p as i128)?)?;
                }
            }
        }
        let coeffs = out.into_iter().map(BigInt::from).collect();
        Some(CycScalar::from_coeffs(self.left.order, coeffs).expect("degree"))
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix(order {}, {}x{})", self.order, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
