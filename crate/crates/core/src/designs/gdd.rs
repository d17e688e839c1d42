use std::fmt;

use crate::cyclo::{CycMatrix, CycScalar};

use super::DesignError;

/// A uniform `K`-GDD of type `M^U` over group-major vertex labels: group `u`
/// is `{uM, …, uM + M - 1}`. Blocks are sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDivisibleDesign {
    k: usize,
    u: usize,
    m: usize,
    blocks: Vec<Vec<usize>>,
}

/// Parameters of a verified design.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GddParams {
    pub k: usize,
    pub m: usize,
    pub u: usize,
    pub r: usize,
    pub b: usize,
}

impl fmt::Display for GddParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K={} U={} M={} R={} B={}", self.k, self.u, self.m, self.r, self.b)
    }
}

/// The first identity a candidate design fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GddViolation {
    NecessaryConditions { k: usize, m: usize, u: usize },
    BlockSize { block: usize, size: usize, expected: usize },
    VertexOutOfRange { block: usize, vertex: usize },
    UnsortedBlock { block: usize },
    SameGroup { block: usize, a: usize, b: usize },
    Replication { vertex: usize, count: usize, expected: usize },
    PairCoverage { a: usize, b: usize, count: usize, expected: usize },
    BlockCount { count: usize, expected: usize },
}

impl fmt::Display for GddViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GddViolation::*;
        match self {
            NecessaryConditions { k, m, u } => write!(
                f,
                "parameters K={k} M={m} U={u} violate U >= K, (K-1) | M(U-1), K(K-1) | M^2 U(U-1)"
            ),
            BlockSize { block, size, expected } => {
                write!(f, "X*1 = K*1 fails: block {block} has {size} vertices, expected {expected}")
            }
            VertexOutOfRange { block, vertex } => write!(f, "block {block} contains out-of-range vertex {vertex}"),
            UnsortedBlock { block } => write!(f, "block {block} is not strictly ascending"),
            SameGroup { block, a, b } => write!(f, "block {block} meets one group twice (vertices {a} and {b})"),
            Replication { vertex, count, expected } => write!(
                f,
                "X*X diagonal fails at vertex {vertex}: replication {count}, expected R = {expected}"
            ),
            PairCoverage { a, b, count, expected } => {
                let kind = if count > expected { "over-covered" } else { "under-covered" };
                write!(f, "X*X = RI + (J-I)xJ fails: pair ({a},{b}) {kind}, in {count} blocks, expected {expected}")
            }
            BlockCount { count, expected } => write!(f, "block count {count}, expected B = {expected}"),
        }
    }
}

impl GroupDivisibleDesign {
    /// Sorts each block and the block list, then verifies.
    pub fn new(k: usize, u: usize, m: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let d = Self::new_unchecked(k, u, m, blocks);
        d.verify().map_err(DesignError::Violation)?;
        Ok(d)
    }

    /// No validation and no reordering; pair with [`verify`](Self::verify).
    pub fn new_unchecked(k: usize, u: usize, m: usize, blocks: Vec<Vec<usize>>) -> Self {
        GroupDivisibleDesign { k, u, m, blocks }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of groups.
    pub fn u(&self) -> usize {
        self.u
    }

    /// Group size.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.u * self.m
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Replication number `M(U-1)/(K-1)`.
    pub fn replication(&self) -> usize {
        self.m * (self.u - 1) / (self.k - 1)
    }

    pub fn group_of(&self, vertex: usize) -> usize {
        vertex / self.m
    }

    pub fn is_bibd(&self) -> bool {
        self.m == 1
    }

    pub fn is_transversal(&self) -> bool {
        self.u == self.k
    }

    /// `(R, B)` when `(K, M, U)` pass the standard necessary conditions.
    pub fn necessary_conditions(k: usize, m: usize, u: usize) -> Option<(usize, usize)> {
        if k < 2 || m < 1 || u < k {
            return None;
        }
        let r_num = m * (u - 1);
        let b_num = m * m * u * (u - 1);
        if !r_num.is_multiple_of(k - 1) || !b_num.is_multiple_of(k * (k - 1)) {
            return None;
        }
        Some((r_num / (k - 1), b_num / (k * (k - 1))))
    }

    /// Checks every incidence identity; returns `(K, M, U, R, B)` or the first failure.
    pub fn verify(&self) -> Result<GddParams, GddViolation> {
        let (k, m, u) = (self.k, self.m, self.u);
        let (r, b) = Self::necessary_conditions(k, m, u).ok_or(GddViolation::NecessaryConditions { k, m, u })?;
        let v = u * m;
        for (idx, block) in self.blocks.iter().enumerate() {
            if block.len() != k {
                return Err(GddViolation::BlockSize { block: idx, size: block.len(), expected: k });
            }
            if let Some(&x) = block.iter().find(|&&x| x >= v) {
                return Err(GddViolation::VertexOutOfRange { block: idx, vertex: x });
            }
            if block.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GddViolation::UnsortedBlock { block: idx });
            }
            for w in block.windows(2) {
                if w[0] / m == w[1] / m {
                    return Err(GddViolation::SameGroup { block: idx, a: w[0], b: w[1] });
                }
            }
        }
        // X*X as pair counts
        let mut counts = vec![0usize; v * v];
        for block in &self.blocks {
            for &a in block {
                for &c in block {
                    counts[a * v + c] += 1;
                }
            }
        }
        // over-coverage is reported before under-coverage, then replication
        for over in [true, false] {
            for a in 0..v {
                for c in a + 1..v {
                    let count = counts[a * v + c];
                    let expected = usize::from(a / m != c / m);
                    if (over && count > expected) || (!over && count < expected) {
                        return Err(GddViolation::PairCoverage { a, b: c, count, expected });
                    }
                }
            }
        }
        for a in 0..v {
            let count = counts[a * v + a];
            if count != r {
                return Err(GddViolation::Replication { vertex: a, count, expected: r });
            }
        }
        if self.blocks.len() != b {
            return Err(GddViolation::BlockCount { count: self.blocks.len(), expected: b });
        }
        Ok(GddParams { k, m, u, r, b })
    }

    /// The `B × UM` {0,1} incidence matrix (rows are blocks).
    pub fn incidence_matrix(&self) -> CycMatrix {
        let v = self.vertex_count();
        let mut x = CycMatrix::zeros(1, self.blocks.len(), v);
        for (i, block) in self.blocks.iter().enumerate() {
            for &vertex in block {
                x.set(i, vertex, CycScalar::one(1));
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ]
    }

    #[test]
    fn fano_plane_verifies() {
        let d = GroupDivisibleDesign::new(3, 7, 1, fano()).unwrap();
        assert_eq!(d.verify().unwrap(), GddParams { k: 3, m: 1, u: 7, r: 3, b: 7 });
    }

    #[test]
    fn duplicated_block_names_the_pair() {
        let mut blocks = fano();
        blocks[6] = blocks[5].clone();
        let d = GroupDivisibleDesign::new_unchecked(3, 7, 1, blocks);
        // {2,3,6} twice: its first pair is over-covered
        assert_eq!(
            d.verify(),
            Err(GddViolation::PairCoverage { a: 2, b: 3, count: 2, expected: 1 })
        );
        let mut blocks = fano();
        blocks.push(vec![0, 1, 2]);
        let err = GroupDivisibleDesign::new_unchecked(3, 7, 1, blocks).verify().unwrap_err();
        assert_eq!(err, GddViolation::PairCoverage { a: 0, b: 1, count: 2, expected: 1 });
        assert!(err.to_string().contains("over-covered"));
    }

    #[test]
    fn necessary_conditions() {
        assert_eq!(GroupDivisibleDesign::necessary_conditions(3, 3, 3), Some((3, 9)));
        assert_eq!(GroupDivisibleDesign::necessary_conditions(3, 1, 7), Some((3, 7)));
        assert_eq!(GroupDivisibleDesign::necessary_conditions(3, 1, 5), None);
        assert_eq!(GroupDivisibleDesign::necessary_conditions(4, 8, 3), None);
    }

    #[test]
    fn structural_faults() {
        let bad = GroupDivisibleDesign::new_unchecked(3, 7, 1, vec![vec![0, 1]]);
        assert!(matches!(bad.verify(), Err(GddViolation::BlockSize { .. })));
        let bad = GroupDivisibleDesign::new_unchecked(2, 2, 2, vec![vec![0, 1]]);
        assert_eq!(bad.verify(), Err(GddViolation::SameGroup { block: 0, a: 0, b: 1 }));
        let bad = GroupDivisibleDesign::new_unchecked(3, 7, 1, vec![vec![0, 1, 9]]);
        assert!(matches!(bad.verify(), Err(GddViolation::VertexOutOfRange { .. })));
    }
}
