//! Dense linear algebra over GF(2).
//!
//! Rows are packed into `u64` words (row-major) so elimination and row XOR
//! run word-parallel. Every public operation is observably pure: rank, rref
//! and friends work on an internal copy. Bits past column `cols-1` in each
//! row's last word are always zero.
//!
//! Intended scale is a few hundred rows/columns; there is deliberately no
//! Four-Russians or blocked elimination here.

use crate::bits::{words_for, Bitset};

/// A dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

/// Reduced row echelon form: `matrix` has leading ones with zeros above and
/// below each pivot, zero rows sunk to the bottom; `pivots[i]` is the pivot
/// column of row `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = words_for(cols);
        Self {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Parses rows of '0'/'1' characters; all rows must have equal length.
    pub fn from_rows(rows: &[&str]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |s| s.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged row {i}");
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    _ => panic!("invalid matrix character {ch:?}"),
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        self.data[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let w = &mut self.data[r * self.words_per_row + c / 64];
        if bit {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    #[inline]
    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// XORs row `src` into row `dst`.
    #[inline]
    fn xor_rows(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let w = self.words_per_row;
        let (d, s) = (dst * w, src * w);
        for k in 0..w {
            let v = self.data[s + k];
            self.data[d + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Row `r` as a bitset of column indices.
    pub fn row(&self, r: usize) -> Bitset {
        let mut s = Bitset::empty(self.cols);
        for c in self.row_ones(r) {
            s.insert(c);
        }
        s
    }

    /// Set columns of row `r`, ascending.
    pub fn row_ones(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_words(r).iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi * 64;
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(base + tz)
                }
            })
        })
    }

    pub fn set_row(&mut self, r: usize, bits: &Bitset) {
        assert_eq!(bits.len(), self.cols, "row length mismatch");
        let w = self.words_per_row;
        self.data[r * w..(r + 1) * w].copy_from_slice(bits.words());
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// GF(2) row rank. The input is not modified.
    pub fn rank(&self) -> usize {
        self.clone().eliminate(false).pivots.len()
    }

    /// `true` iff a square matrix has full rank. The 0x0 matrix is invertible.
    pub fn is_invertible(&self) -> bool {
        assert_eq!(self.rows, self.cols, "is_invertible needs a square matrix");
        self.rank() == self.rows
    }

    /// Reduced row echelon form with pivot columns; the input is untouched.
    pub fn rref(&self) -> Rref {
        self.clone().eliminate(true)
    }

    /// In-place elimination. Pivot choice: first nonzero column, first
    /// available row. `reduced` additionally clears above each pivot.
    fn eliminate(mut self, reduced: bool) -> Rref {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            let Some(pr) = (next_row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.swap_rows(next_row, pr);
            let lo = if reduced { 0 } else { next_row + 1 };
            for r in lo..self.rows {
                if r != next_row && self.get(r, col) {
                    self.xor_rows(r, next_row);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        Rref {
            matrix: self,
            pivots,
        }
    }

    /// Matrix product over GF(2); `self.cols` must equal `rhs.rows`.
    pub fn multiply(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        let w = rhs.words_per_row;
        for r in 0..self.rows {
            for j in self.row_ones(r) {
                let src = j * w;
                let dst = r * w;
                for k in 0..w {
                    let v = rhs.data[src + k];
                    out.data[dst + k] ^= v;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row_ones(r) {
                out.set(c, r, true);
            }
        }
        out
    }

    /// `self` on top of `other`; column counts must match.
    pub fn stacked(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "column count mismatch in stack");
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        out.data[..self.data.len()].copy_from_slice(&self.data);
        out.data[self.data.len()..].copy_from_slice(&other.data);
        out
    }

    /// Gram matrix `self * self^T`.
    pub fn gram(&self) -> BitMatrix {
        self.multiply(&self.transpose())
    }

    /// A basis of `{x : self · x^T = 0}`, one vector per row, ordered by
    /// free-column index. Has `cols - rank` rows.
    pub fn nullspace_basis(&self) -> BitMatrix {
        let Rref { matrix, pivots } = self.rref();
        let rank = pivots.len();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, true);
            for (row, &p) in pivots.iter().enumerate().take(rank) {
                if matrix.get(row, f) {
                    out.set(i, p, true);
                }
            }
        }
        out
    }
}

/// dim(rowspace(a) ∩ rowspace(b)) = rank(a) + rank(b) − rank(a over b).
pub fn row_space_intersection_dim(a: &BitMatrix, b: &BitMatrix) -> usize {
    assert_eq!(a.cols, b.cols, "column count mismatch");
    a.rank() + b.rank() - a.stacked(b).rank()
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", u8::from(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(2, 5).rank(), 0);
    }

    #[test]
    fn rank_disjoint_triples() {
        let m = BitMatrix::from_rows(&["111000", "000111"]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn invertibility() {
        assert!(BitMatrix::from_rows(&["1"]).is_invertible());
        assert!(!BitMatrix::zeros(2, 2).is_invertible());
        // Gram of two disjoint weight-3 rows is the identity.
        let g = BitMatrix::from_rows(&["111000", "000111"]).gram();
        assert_eq!(g, BitMatrix::identity(2));
        assert!(g.is_invertible());
        // 0x0 is vacuously invertible.
        assert!(BitMatrix::zeros(0, 0).is_invertible());
    }

    #[test]
    #[should_panic(expected = "square")]
    fn invertibility_rejects_rectangular() {
        BitMatrix::zeros(2, 3).is_invertible();
    }

    #[test]
    fn multiply_identity() {
        let x = BitMatrix::from_rows(&["10110", "01101"]);
        assert_eq!(BitMatrix::identity(2).multiply(&x), x);
    }

    #[test]
    fn multiply_known_product() {
        let a = BitMatrix::from_rows(&["11", "01"]);
        let b = BitMatrix::from_rows(&["101", "110"]);
        // (1,1)·cols of b: row0 = 101^110 = 011; row1 = 110.
        assert_eq!(a.multiply(&b), BitMatrix::from_rows(&["011", "110"]));
    }

    #[test]
    fn rref_two_rows() {
        let m = BitMatrix::from_rows(&["110", "011"]);
        let r = m.rref();
        assert_eq!(r.matrix, BitMatrix::from_rows(&["101", "011"]));
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn nullspace_of_parity_row() {
        let m = BitMatrix::from_rows(&["11"]);
        let ns = m.nullspace_basis();
        assert_eq!(ns, BitMatrix::from_rows(&["11"]));
    }

    #[test]
    fn nullspace_edge_shapes() {
        // No constraints: whole space.
        assert_eq!(
            BitMatrix::zeros(0, 3).nullspace_basis(),
            BitMatrix::identity(3)
        );
        // Full rank square: zero space.
        assert_eq!(BitMatrix::identity(4).nullspace_basis().rows(), 0);
    }

    #[test]
    fn intersection_dim() {
        let i2 = BitMatrix::identity(2);
        assert_eq!(row_space_intersection_dim(&i2, &i2), 2);
        let a = BitMatrix::from_rows(&["10"]);
        let b = BitMatrix::from_rows(&["01"]);
        assert_eq!(row_space_intersection_dim(&a, &b), 0);
    }

    #[test]
    fn transpose_round_trip() {
        let m = BitMatrix::from_rows(&["10110", "01101", "11000"]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn wide_matrix_word_boundary() {
        // 70 columns exercises the two-word row path.
        let mut m = BitMatrix::zeros(2, 70);
        m.set(0, 0, true);
        m.set(0, 69, true);
        m.set(1, 69, true);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.row(0).to_indices(), vec![0, 69]);
        let mut sum = m.row(0);
        sum.xor_with(&m.row(1));
        assert_eq!(sum.to_indices(), vec![0]);
    }
}
