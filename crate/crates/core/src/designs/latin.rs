use super::{DesignError, FiniteField};

/// A set of mutually orthogonal Latin squares of a common size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquareSet {
    size: usize,
    squares: Vec<Vec<Vec<usize>>>,
}

impl LatinSquareSet {
    /// Validates that every square is Latin and every pair is orthogonal.
    pub fn new(size: usize, squares: Vec<Vec<Vec<usize>>>) -> Result<Self, DesignError> {
        for (idx, sq) in squares.iter().enumerate() {
            if !is_latin(sq, size) {
                return Err(DesignError::Invalid(format!("square {idx} is not a Latin square of order {size}")));
            }
        }
        for a in 0..squares.len() {
            for b in a + 1..squares.len() {
                if !orthogonal(&squares[a], &squares[b], size) {
                    return Err(DesignError::Invalid(format!("squares {a} and {b} are not orthogonal")));
                }
            }
        }
        Ok(LatinSquareSet { size, squares })
    }

    /// The `q - 1` squares `L_a(x, y) = a·x + y`, `a` running over the nonzero
    /// field labels in ascending order.
    pub fn from_field(field: &FiniteField) -> Self {
        let q = field.order();
        let squares = (1..q)
            .map(|a| {
                (0..q)
                    .map(|x| (0..q).map(|y| field.add(field.mul(a, x), y)).collect())
                    .collect()
            })
            .collect();
        LatinSquareSet::new(q, squares).expect("field squares are mutually orthogonal")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn square(&self, i: usize) -> &[Vec<usize>] {
        &self.squares[i]
    }

    pub fn get(&self, square: usize, row: usize, col: usize) -> usize {
        self.squares[square][row][col]
    }
}

fn is_latin(sq: &[Vec<usize>], n: usize) -> bool {
    if sq.len() != n || sq.iter().any(|r| r.len() != n) {
        return false;
    }
    for i in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for j in 0..n {
            let (r, c) = (sq[i][j], sq[j][i]);
            if r >= n || c >= n || row[r] || col[c] {
                return false;
            }
            row[r] = true;
            col[c] = true;
        }
    }
    true
}

fn orthogonal(a: &[Vec<usize>], b: &[Vec<usize>], n: usize) -> bool {
    let mut seen = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let idx = a[i][j] * n + b[i][j];
            if seen[idx] {
                return false;
            }
            seen[idx] = true;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_orthogonal(a: &[Vec<usize>], b: &[Vec<usize>], n: usize) -> bool {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                pairs.push((a[i][j], b[i][j]));
            }
        }
        (0..n).all(|s| (0..n).all(|t| pairs.iter().filter(|&&p| p == (s, t)).count() == 1))
    }

    #[test]
    fn gf3_gives_two_mols() {
        let m = LatinSquareSet::from_field(&FiniteField::new(3, 1).unwrap());
        assert_eq!(m.len(), 2);
        assert!(brute_force_orthogonal(m.square(0), m.square(1), 3));
    }

    #[test]
    fn gf2_gives_one_square() {
        let m = LatinSquareSet::from_field(&FiniteField::new(2, 1).unwrap());
        assert_eq!(m.len(), 1);
        assert_eq!(m.square(0), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn gf8_gives_seven_mols() {
        let m = LatinSquareSet::from_field(&FiniteField::new(2, 3).unwrap());
        assert_eq!(m.len(), 7);
        let mut pairs = 0;
        for a in 0..7 {
            for b in a + 1..7 {
                assert!(brute_force_orthogonal(m.square(a), m.square(b), 8));
                pairs += 1;
            }
        }
        assert_eq!(pairs, 21);
    }

    #[test]
    fn rejects_non_orthogonal() {
        let sq = vec![vec![0, 1], vec![1, 0]];
        assert!(LatinSquareSet::new(2, vec![sq.clone(), sq]).is_err());
        assert!(LatinSquareSet::new(2, vec![vec![vec![0, 0], vec![1, 1]]]).is_err());
    }
}
