//! Possibly-complex Hadamard matrices and the flat regular simplices they carry.

use std::fmt;

use num_bigint::BigInt;

use crate::cyclo::{CycMatrix, CycScalar};
use crate::designs::{DesignError, FiniteField};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HadamardError {
    #[error("{0}")]
    Parameter(String),
    #[error(transparent)]
    Field(#[from] DesignError),
    #[error("not a Hadamard matrix: {0}")]
    Violation(HadamardViolation),
    #[error("Hadamard matrix is not dephased (first row must be all ones)")]
    NotDephased,
}

/// The first identity a candidate Hadamard matrix fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HadamardViolation {
    NotSquare { rows: usize, cols: usize },
    Empty,
    NotUnimodular { row: usize, col: usize },
    Orthogonality { row: usize, col: usize, value: CycScalar, expected: BigInt },
}

impl fmt::Display for HadamardViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HadamardViolation::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            HadamardViolation::Empty => write!(f, "matrix is empty"),
            HadamardViolation::NotUnimodular { row, col } => {
                write!(f, "entry ({row},{col}) does not have squared modulus 1")
            }
            HadamardViolation::Orthogonality { row, col, value, expected } => {
                write!(f, "H*H entry ({row},{col}) is {value}, expected {expected}")
            }
        }
    }
}

/// Checks that every entry has `|h|² = 1` and that `H*H = nI`.
pub fn verify_hadamard(mat: &CycMatrix) -> Result<(), HadamardViolation> {
    let n = mat.rows();
    if !mat.is_square() {
        return Err(HadamardViolation::NotSquare { rows: n, cols: mat.cols() });
    }
    if n == 0 {
        return Err(HadamardViolation::Empty);
    }
    for r in 0..n {
        for c in 0..n {
            if !mat.get(r, c).abs_squared().is_one() {
                return Err(HadamardViolation::NotUnimodular { row: r, col: c });
            }
        }
    }
    let g = mat.gram();
    let expected = BigInt::from(n);
    for r in 0..n {
        for c in 0..n {
            let e = g.get(r, c);
            let ok = if r == c { e.as_integer() == Some(&expected) } else { e.is_zero() };
            if !ok {
                let expected = if r == c { expected } else { BigInt::from(0) };
                return Err(HadamardViolation::Orthogonality { row: r, col: c, value: e.clone(), expected });
            }
        }
    }
    Ok(())
}

/// A verified Hadamard matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardMatrix {
    mat: CycMatrix,
    dephased: bool,
}

impl HadamardMatrix {
    pub fn new(mat: CycMatrix) -> Result<Self, HadamardError> {
        verify_hadamard(&mat).map_err(HadamardError::Violation)?;
        let dephased = mat.row(0).iter().all(CycScalar::is_one);
        Ok(HadamardMatrix { mat, dephased })
    }

    /// `sylvester(k)` has size `2^k`; entries are `±1` at order 2.
    pub fn sylvester(k: u32) -> Self {
        let base = CycMatrix::from_ints(2, 2, 2, &[1, 1, 1, -1]);
        let mut mat = CycMatrix::from_ints(2, 1, 1, &[1]);
        for _ in 0..k {
            mat = mat.kron(&base);
        }
        HadamardMatrix { mat, dephased: true }
    }

    /// Size `q + 1` for `q ≡ 3 (mod 4)`: `I + [[0, 1ᵀ], [-1, Q]]` with `Q` the Jacobsthal matrix.
    pub fn paley_i(field: &FiniteField) -> Result<Self, HadamardError> {
        let q = field.order();
        if q % 4 != 3 {
            return Err(HadamardError::Parameter(format!("Paley I needs q = 3 mod 4, got q = {q}")));
        }
        let vals = paley_core(field, -1);
        let n = q + 1;
        let mut ints = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                ints[r * n + c] = vals[r * n + c] + i64::from(r == c);
            }
        }
        Self::new(CycMatrix::from_ints(2, n, n, &ints))
    }

    /// Size `2(q + 1)` for `q ≡ 1 (mod 4)`: `C ⊗ [[1,1],[1,-1]] + I ⊗ [[1,-1],[-1,-1]]`
    /// with `C = [[0, 1ᵀ], [1, Q]]`. Not dephased in general.
    pub fn paley_ii(field: &FiniteField) -> Result<Self, HadamardError> {
        let q = field.order();
        if q % 4 != 1 {
            return Err(HadamardError::Parameter(format!("Paley II needs q = 1 mod 4, got q = {q}")));
        }
        let n = q + 1;
        let c = CycMatrix::from_ints(2, n, n, &paley_core(field, 1));
        let a = CycMatrix::from_ints(2, 2, 2, &[1, 1, 1, -1]);
        let b = CycMatrix::from_ints(2, 2, 2, &[1, -1, -1, -1]);
        let mat = c.kron(&a).add(&CycMatrix::identity(2, n).kron(&b)).expect("same shape");
        Self::new(mat)
    }

    /// `(ζ_n^{jk})`, order `n`.
    pub fn fourier(n: usize) -> Result<Self, HadamardError> {
        if n == 0 {
            return Err(HadamardError::Parameter("Fourier size must be positive".into()));
        }
        let order = n as u32;
        let mat = CycMatrix::from_fn(order, n, n, |j, k| CycScalar::root_of_unity(order, ((j * k) % n) as i64));
        Ok(HadamardMatrix { mat, dephased: true })
    }

    pub fn kron(&self, other: &Self) -> Self {
        HadamardMatrix { mat: self.mat.kron(&other.mat), dephased: self.dephased && other.dephased }
    }

    /// Scales each column by the conjugate of its first entry.
    pub fn dephase(&self) -> Self {
        if self.dephased {
            return self.clone();
        }
        let m = &self.mat;
        let mat = CycMatrix::from_fn(m.order(), m.rows(), m.cols(), |r, c| m.get(r, c) * &m.get(0, c).conj());
        HadamardMatrix { mat, dephased: true }
    }

    pub fn size(&self) -> usize {
        self.mat.rows()
    }

    pub fn order(&self) -> u32 {
        self.mat.order()
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CycMatrix {
        self.mat
    }

    pub fn is_dephased(&self) -> bool {
        self.dephased
    }

    /// True when every entry is `±1`.
    pub fn is_real(&self) -> bool {
        self.mat.entries().iter().all(|e| e.as_integer().is_some())
    }
}

/// `[[0, 1ᵀ], [sign·1, Q]]` with `Q_{xy} = χ(x - y)`, row-major.
fn paley_core(field: &FiniteField, sign: i64) -> Vec<i64> {
    let q = field.order();
    let n = q + 1;
    let mut v = vec![0i64; n * n];
    for i in 1..n {
        v[i] = 1;
        v[i * n] = sign;
        for j in 1..n {
            v[i * n + j] = field.quadratic_character(field.sub(i - 1, j - 1));
        }
    }
    v
}

/// Rows `2..N` of a dephased Hadamard matrix: `FF* = NI`, `F1 = 0`, `F*F = NI - J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexFrame {
    n: usize,
    f: CycMatrix,
}

impl SimplexFrame {
    pub fn from_hadamard(h: &HadamardMatrix) -> Result<Self, HadamardError> {
        if !h.is_dephased() {
            return Err(HadamardError::NotDephased);
        }
        let n = h.size();
        if n < 2 {
            return Err(HadamardError::Parameter("simplex needs a Hadamard matrix of size at least 2".into()));
        }
        let rows: Vec<usize> = (1..n).collect();
        let simplex = SimplexFrame { n, f: h.matrix().select_rows(&rows) };
        simplex.certify().map_err(HadamardError::Parameter)?;
        Ok(simplex)
    }

    fn certify(&self) -> Result<(), String> {
        let n = BigInt::from(self.n);
        if self.f.frame_operator().as_scalar_identity() != Some(n.clone()) {
            return Err("FF* is not NI".into());
        }
        if !self.f.row_sums().iter().all(CycScalar::is_zero) {
            return Err("F1 is not zero".into());
        }
        let g = self.f.gram();
        for r in 0..self.n {
            for c in 0..self.n {
                let want = if r == c { &n - 1 } else { BigInt::from(-1) };
                if g.get(r, c).as_integer() != Some(&want) {
                    return Err(format!("F*F entry ({r},{c}) differs from NI - J"));
                }
            }
        }
        if !self.f.entries().iter().all(|e| e.abs_squared().is_one()) {
            return Err("simplex is not flat".into());
        }
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.f
    }

    pub fn into_matrix(self) -> CycMatrix {
        self.f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_small() {
        assert_eq!(HadamardMatrix::sylvester(0).size(), 1);
        let h = HadamardMatrix::sylvester(2);
        let expected = CycMatrix::from_ints(
            2,
            4,
            4,
            &[1, 1, 1, 1, 1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1],
        );
        assert_eq!(h.matrix(), &expected);
        assert_eq!(h.matrix().gram().as_scalar_identity(), Some(BigInt::from(4)));
        assert!(h.is_real() && h.order() == 2);
    }

    #[test]
    fn fourier_three() {
        let h = HadamardMatrix::fourier(3).unwrap();
        assert_eq!(h.matrix().gram().as_scalar_identity(), Some(BigInt::from(3)));
        assert_eq!(h.matrix().get(2, 2), &CycScalar::root_of_unity(3, 1));
        assert!(verify_hadamard(HadamardMatrix::fourier(5).unwrap().matrix()).is_ok());
        assert!(!h.is_real());
    }

    #[test]
    fn paley_sizes() {
        let p7 = HadamardMatrix::paley_i(&FiniteField::new(7, 1).unwrap()).unwrap();
        assert_eq!(p7.size(), 8);
        assert!(p7.is_real() && p7.is_dephased());
        let p5 = HadamardMatrix::paley_ii(&FiniteField::new(5, 1).unwrap()).unwrap();
        assert_eq!(p5.size(), 12);
        let p9 = HadamardMatrix::paley_ii(&FiniteField::new(3, 2).unwrap()).unwrap();
        assert_eq!(p9.size(), 20);
        let p27 = HadamardMatrix::paley_i(&FiniteField::new(3, 3).unwrap()).unwrap();
        assert_eq!(p27.size(), 28);
        assert!(HadamardMatrix::paley_i(&FiniteField::new(5, 1).unwrap()).is_err());
        assert!(HadamardMatrix::paley_ii(&FiniteField::new(7, 1).unwrap()).is_err());
    }

    #[test]
    fn identity_is_not_hadamard() {
        let err = verify_hadamard(&CycMatrix::identity(2, 2)).unwrap_err();
        assert!(matches!(err, HadamardViolation::NotUnimodular { row: 0, col: 1 }));
        let bad = CycMatrix::from_ints(2, 2, 2, &[1, 1, 1, 1]);
        assert!(matches!(verify_hadamard(&bad), Err(HadamardViolation::Orthogonality { row: 0, col: 1, .. })));
    }

    #[test]
    fn dephase_restores_first_row() {
        let m = CycMatrix::from_ints(2, 2, 2, &[-1, -1, -1, 1]);
        let h = HadamardMatrix::new(m).unwrap();
        assert!(!h.is_dephased());
        let d = h.dephase();
        assert_eq!(d.matrix(), HadamardMatrix::sylvester(1).matrix());
        let f = HadamardMatrix::fourier(6).unwrap();
        assert_eq!(f.dephase(), f);
        let p = HadamardMatrix::paley_ii(&FiniteField::new(5, 1).unwrap()).unwrap().dephase();
        assert!(verify_hadamard(p.matrix()).is_ok());
        assert!(p.matrix().row(0).iter().all(CycScalar::is_one));
    }

    #[test]
    fn simplices() {
        let s = SimplexFrame::from_hadamard(&HadamardMatrix::fourier(3).unwrap()).unwrap();
        let expected = CycMatrix::from_ints(3, 3, 3, &[2, -1, -1, -1, 2, -1, -1, -1, 2]);
        assert_eq!(s.matrix().gram(), expected);
        let s2 = SimplexFrame::from_hadamard(&HadamardMatrix::sylvester(1)).unwrap();
        assert_eq!(s2.matrix(), &CycMatrix::from_ints(2, 1, 2, &[1, -1]));
        let s10 = SimplexFrame::from_hadamard(&HadamardMatrix::fourier(10).unwrap()).unwrap();
        assert_eq!((s10.matrix().rows(), s10.matrix().cols()), (9, 10));
        let raw = HadamardMatrix::paley_ii(&FiniteField::new(5, 1).unwrap()).unwrap();
        assert!(matches!(SimplexFrame::from_hadamard(&raw), Err(HadamardError::NotDephased)));
        assert!(SimplexFrame::from_hadamard(&HadamardMatrix::sylvester(0)).is_err());
    }
}
