use crate::cyclo::{CycMatrix, CycScalar};

use super::{DesignError, GroupDivisibleDesign};

/// For each vertex `(u, m)`, the ascending indices of the `R` blocks through it.
///
/// `E_{u,m}` is the `B × R` matrix whose column `r` is the standard basis
/// vector at `supports[u][m][r]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingOperatorSet {
    design: GroupDivisibleDesign,
    supports: Vec<Vec<Vec<usize>>>,
}

/// The first product identity an operator pair fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingViolation {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub message: String,
}

impl EmbeddingOperatorSet {
    pub fn new(design: &GroupDivisibleDesign) -> Result<Self, DesignError> {
        let params = design.verify().map_err(DesignError::Violation)?;
        let (u, m) = (design.u(), design.m());
        let mut supports = vec![vec![Vec::with_capacity(params.r); m]; u];
        for (idx, block) in design.blocks().iter().enumerate() {
            for &v in block {
                supports[v / m][v % m].push(idx);
            }
        }
        Ok(EmbeddingOperatorSet { design: design.clone(), supports })
    }

    pub fn design(&self) -> &GroupDivisibleDesign {
        &self.design
    }

    pub fn support(&self, u: usize, m: usize) -> &[usize] {
        &self.supports[u][m]
    }

    pub fn replication(&self) -> usize {
        self.design.replication()
    }

    /// `E_{u,m}` as an integer matrix of the given order.
    pub fn operator(&self, u: usize, m: usize, order: u32) -> CycMatrix {
        let s = &self.supports[u][m];
        let mut e = CycMatrix::zeros(order, self.design.block_count(), s.len());
        for (r, &b) in s.iter().enumerate() {
            e.set(b, r, CycScalar::one(order));
        }
        e
    }

    /// `E*_{u,m} E_{u',m'}` computed from supports: entry `(r, r')` is 1 iff
    /// both slots name the same block.
    pub fn cross(&self, a: (usize, usize), b: (usize, usize)) -> Vec<(usize, usize)> {
        let (sa, sb) = (&self.supports[a.0][a.1], &self.supports[b.0][b.1]);
        let mut hits = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < sa.len() && j < sb.len() {
            match sa[i].cmp(&sb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    hits.push((i, j));
                    i += 1;
                    j += 1;
                }
            }
        }
        hits
    }

    /// Checks `E*E = I`, `E*_{u,m}E_{u,m'} = 0` for `m ≠ m'`, and a single unit
    /// entry in `E*_{u,m}E_{u',m'}` for `u ≠ u'`, over all ordered pairs.
    pub fn check_identities(&self) -> Result<(), EmbeddingViolation> {
        let (u, m) = (self.design.u(), self.design.m());
        let r = self.replication();
        let keys: Vec<(usize, usize)> = (0..u).flat_map(|a| (0..m).map(move |b| (a, b))).collect();
        for &a in &keys {
            for &b in &keys {
                let hits = self.cross(a, b);
                let ok = if a == b {
                    hits.len() == r && hits.iter().all(|&(i, j)| i == j)
                } else if a.0 == b.0 {
                    hits.is_empty()
                } else {
                    hits.len() == 1
                };
                if !ok {
                    return Err(EmbeddingViolation {
                        left: a,
                        right: b,
                        message: format!("product has {} unit entries", hits.len()),
                    });
                }
            }
        }
        Ok(())
    }
}
