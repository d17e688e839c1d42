//! Classical designs and the product / hole-filling combinators.

use super::{DesignError, FiniteField, GroupDivisibleDesign, LatinSquareSet};

/// `TD(K, M)` from `K - 2` of the given squares: block `(x, y)` is
/// `{x, M + y, (j + 2)M + L_j(x, y)}`, blocks in lexicographic `(x, y)` order.
pub fn td_from_mols(squares: &LatinSquareSet, k: usize) -> Result<GroupDivisibleDesign, DesignError> {
    if k < 2 {
        return Err(DesignError::Parameter(format!("block size {k} < 2")));
    }
    if k - 2 > squares.len() {
        return Err(DesignError::TooFewSquares { need: k - 2, have: squares.len() });
    }
    let m = squares.size();
    let mut blocks = Vec::with_capacity(m * m);
    for x in 0..m {
        for y in 0..m {
            let mut block = vec![x, m + y];
            block.extend((0..k - 2).map(|j| (j + 2) * m + squares.get(j, x, y)));
            blocks.push(block);
        }
    }
    GroupDivisibleDesign::new(k, k, m, blocks)
}

/// `TD(K, q)` over `GF(q)`.
pub fn transversal_design(k: usize, q: u64) -> Result<GroupDivisibleDesign, DesignError> {
    let field = FiniteField::of_order(q)?;
    td_from_mols(&LatinSquareSet::from_field(&field), k)
}

/// `BIBD(V, 2, 1)`: every pair is a block.
pub fn complete_pairs(v: usize) -> Result<GroupDivisibleDesign, DesignError> {
    if v < 2 {
        return Err(DesignError::Parameter(format!("need at least 2 points, got {v}")));
    }
    let blocks = (0..v).flat_map(|a| (a + 1..v).map(move |b| vec![a, b])).collect();
    GroupDivisibleDesign::new(2, v, 1, blocks)
}

/// Steiner triple system on `U` points: Bose for `U ≡ 3 (mod 6)`, Skolem for
/// `U ≡ 1 (mod 6)`. Point `(x, i)` of `Q × Z_3` is labelled `3x + i`; the
/// Skolem point at infinity is `U - 1`.
pub fn steiner_triple_system(u: usize) -> Result<GroupDivisibleDesign, DesignError> {
    if u < 7 || (u % 6 != 1 && u % 6 != 3) {
        return Err(DesignError::Infeasible(format!(
            "no Steiner triple system construction for U = {u} (need U >= 7, U = 1 or 3 mod 6)"
        )));
    }
    let label = |x: usize, i: usize| 3 * x + (i % 3);
    let mut blocks = Vec::new();
    if u % 6 == 3 {
        let q = u / 3; // odd
        let half = q.div_ceil(2); // (q + 1) / 2, inverse of 2 mod q
        let op = |x: usize, y: usize| ((x + y) * half) % q;
        for x in 0..q {
            blocks.push(vec![label(x, 0), label(x, 1), label(x, 2)]);
        }
        for i in 0..3 {
            for x in 0..q {
                for y in x + 1..q {
                    blocks.push(vec![label(x, i), label(y, i), label(op(x, y), i + 1)]);
                }
            }
        }
    } else {
        let q = (u - 1) / 3; // 2n
        let n = q / 2;
        // half-idempotent commutative quasigroup: relabelled addition mod 2n
        let op = |x: usize, y: usize| {
            let s = (x + y) % q;
            if s.is_multiple_of(2) { s / 2 } else { n + (s - 1) / 2 }
        };
        let inf = u - 1;
        for x in 0..n {
            blocks.push(vec![label(x, 0), label(x, 1), label(x, 2)]);
            for i in 0..3 {
                blocks.push(vec![inf, label(n + x, i), label(x, i + 1)]);
            }
        }
        for i in 0..3 {
            for x in 0..q {
                for y in x + 1..q {
                    blocks.push(vec![label(x, i), label(y, i), label(op(x, y), i + 1)]);
                }
            }
        }
    }
    GroupDivisibleDesign::new(3, u, 1, blocks)
}

/// Lines of `AG(2, q)`: point `(x, y)` is labelled `xq + y`.
pub fn affine_plane(field: &FiniteField) -> Result<GroupDivisibleDesign, DesignError> {
    let q = field.order();
    let mut blocks = Vec::with_capacity(q * q + q);
    for slope in 0..q {
        for icpt in 0..q {
            blocks.push((0..q).map(|x| x * q + field.add(field.mul(slope, x), icpt)).collect());
        }
    }
    for c in 0..q {
        blocks.push((0..q).map(|y| c * q + y).collect());
    }
    GroupDivisibleDesign::new(q, q * q, 1, blocks)
}

/// Lines of `PG(2, q)` on the normalized points `(1,a,b)`, `(0,1,a)`, `(0,0,1)`.
pub fn projective_plane(field: &FiniteField) -> Result<GroupDivisibleDesign, DesignError> {
    let q = field.order();
    let mut points: Vec<[usize; 3]> = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            points.push([1, a, b]);
        }
    }
    for a in 0..q {
        points.push([0, 1, a]);
    }
    points.push([0, 0, 1]);
    let dot = |l: &[usize; 3], p: &[usize; 3]| {
        (0..3).fold(0, |acc, i| field.add(acc, field.mul(l[i], p[i])))
    };
    let blocks = points
        .iter()
        .map(|line| (0..points.len()).filter(|&i| dot(line, &points[i]) == 0).collect())
        .collect();
    GroupDivisibleDesign::new(q + 1, points.len(), 1, blocks)
}

/// `K`-GDD of type `(MN)^V` from a `K`-GDD of type `M^U` and a `U`-GDD of type `N^V`.
///
/// Each inner block's `U` points, in ascending (hence group) order, receive
/// the groups `X_1, …, X_U` of the outer design.
pub fn wilson_product(
    outer: &GroupDivisibleDesign,
    inner: &GroupDivisibleDesign,
) -> Result<GroupDivisibleDesign, DesignError> {
    if outer.u() != inner.k() {
        return Err(DesignError::Parameter(format!(
            "outer design has {} groups but inner blocks have size {}",
            outer.u(),
            inner.k()
        )));
    }
    let m = outer.m();
    let mut blocks = Vec::with_capacity(outer.block_count() * inner.block_count());
    for iblock in inner.blocks() {
        for oblock in outer.blocks() {
            blocks.push(
                oblock
                    .iter()
                    .map(|&v| iblock[outer.group_of(v)] * m + v % m)
                    .collect(),
            );
        }
    }
    GroupDivisibleDesign::new(outer.k(), inner.u(), m * inner.m(), blocks)
}

/// `K`-GDD of type `M^{UV}`: a copy of `inner` (type `M^U`) on every group of
/// `outer` (type `(MU)^V`), together with the outer blocks.
pub fn fill_holes(
    inner: &GroupDivisibleDesign,
    outer: &GroupDivisibleDesign,
) -> Result<GroupDivisibleDesign, DesignError> {
    if inner.k() != outer.k() {
        return Err(DesignError::Parameter(format!("block sizes differ: {} vs {}", inner.k(), outer.k())));
    }
    let hole = inner.vertex_count();
    if hole != outer.m() {
        return Err(DesignError::Parameter(format!(
            "inner design has {hole} points but outer groups have size {}",
            outer.m()
        )));
    }
    if outer.u() < outer.k() {
        return Err(DesignError::Parameter(format!("outer design has V = {} < K = {}", outer.u(), outer.k())));
    }
    let mut blocks = Vec::with_capacity(outer.u() * inner.block_count() + outer.block_count());
    for g in 0..outer.u() {
        for b in inner.blocks() {
            blocks.push(b.iter().map(|&x| g * hole + x).collect());
        }
    }
    blocks.extend(outer.blocks().iter().cloned());
    GroupDivisibleDesign::new(inner.k(), inner.u() * outer.u(), inner.m(), blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent pair-coverage oracle: every cross-group pair in exactly one block.
    fn pairs_covered_once(d: &GroupDivisibleDesign) -> bool {
        let v = d.vertex_count();
        (0..v).all(|a| {
            (a + 1..v).all(|b| {
                let n = d.blocks().iter().filter(|blk| blk.contains(&a) && blk.contains(&b)).count();
                n == usize::from(d.group_of(a) != d.group_of(b))
            })
        })
    }

    #[test]
    fn td33() {
        let td = transversal_design(3, 3).unwrap();
        assert_eq!(td.block_count(), 9);
        assert_eq!(td.replication(), 3);
        assert!(pairs_covered_once(&td));
        assert_eq!(td.blocks()[0], vec![0, 3, 6]);
    }

    #[test]
    fn td2_is_complete_bipartite() {
        let td = transversal_design(2, 5).unwrap();
        assert_eq!(td.block_count(), 25);
        assert!(pairs_covered_once(&td));
    }

    #[test]
    fn td48() {
        let td = transversal_design(4, 8).unwrap();
        let p = td.verify().unwrap();
        assert_eq!((p.b, p.r), (64, 8));
    }

    #[test]
    fn too_few_squares() {
        let sq = LatinSquareSet::from_field(&FiniteField::new(3, 1).unwrap());
        assert!(matches!(td_from_mols(&sq, 5), Err(DesignError::TooFewSquares { need: 3, have: 2 })));
    }

    #[test]
    fn sts_small() {
        let s7 = steiner_triple_system(7).unwrap();
        assert_eq!((s7.block_count(), s7.replication()), (7, 3));
        assert!(pairs_covered_once(&s7));
        let s9 = steiner_triple_system(9).unwrap();
        assert_eq!((s9.block_count(), s9.replication()), (12, 4));
        assert!(pairs_covered_once(&s9));
        assert!(matches!(steiner_triple_system(5), Err(DesignError::Infeasible(_))));
        assert!(steiner_triple_system(3).is_err());
    }

    #[test]
    fn sts_range() {
        for u in (7..=45).filter(|u| u % 6 == 1 || u % 6 == 3) {
            let s = steiner_triple_system(u).unwrap();
            assert!(pairs_covered_once(&s), "U = {u}");
        }
    }

    #[test]
    fn planes() {
        let ag3 = affine_plane(&FiniteField::new(3, 1).unwrap()).unwrap();
        assert_eq!((ag3.k(), ag3.u(), ag3.block_count()), (3, 9, 12));
        assert!(pairs_covered_once(&ag3));
        let pg2 = projective_plane(&FiniteField::new(2, 1).unwrap()).unwrap();
        assert_eq!((pg2.k(), pg2.u(), pg2.block_count()), (3, 7, 7));
        assert!(pairs_covered_once(&pg2));
        let ag2 = affine_plane(&FiniteField::new(2, 1).unwrap()).unwrap();
        assert_eq!(ag2, complete_pairs(4).unwrap());
        let pg4 = projective_plane(&FiniteField::new(2, 2).unwrap()).unwrap();
        assert_eq!((pg4.k(), pg4.u(), pg4.block_count()), (5, 21, 21));
    }

    #[test]
    fn wilson_td33_with_fano() {
        let g = wilson_product(&transversal_design(3, 3).unwrap(), &steiner_triple_system(7).unwrap()).unwrap();
        let p = g.verify().unwrap();
        assert_eq!((p.k, p.m, p.u, p.r, p.b), (3, 3, 7, 9, 63));
    }

    #[test]
    fn wilson_td22_with_triangle() {
        let g = wilson_product(&transversal_design(2, 2).unwrap(), &complete_pairs(3).unwrap()).unwrap();
        let p = g.verify().unwrap();
        assert_eq!((p.k, p.m, p.u, p.b), (2, 2, 3, 12));
    }

    #[test]
    fn wilson_with_single_block_is_relabelling() {
        let td = transversal_design(4, 8).unwrap();
        let single = GroupDivisibleDesign::new(4, 4, 1, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(wilson_product(&td, &single).unwrap(), td);
        assert!(wilson_product(&td, &steiner_triple_system(7).unwrap()).is_err());
    }

    #[test]
    fn fill_td48_into_td432() {
        let g = fill_holes(&transversal_design(4, 8).unwrap(), &transversal_design(4, 32).unwrap()).unwrap();
        let p = g.verify().unwrap();
        assert_eq!((p.k, p.m, p.u), (4, 8, 16));
        assert_eq!(p.b, 4 * 64 + 1024);
    }

    #[test]
    fn fill_td33_into_td39() {
        let g = fill_holes(&transversal_design(3, 3).unwrap(), &transversal_design(3, 9).unwrap()).unwrap();
        let p = g.verify().unwrap();
        assert_eq!((p.k, p.m, p.u), (3, 3, 9));
    }

    #[test]
    fn fill_rejects_mismatch() {
        let td33 = transversal_design(3, 3).unwrap();
        assert!(fill_holes(&td33, &transversal_design(3, 8).unwrap()).is_err());
        assert!(fill_holes(&td33, &transversal_design(4, 9).unwrap()).is_err());
    }
}
