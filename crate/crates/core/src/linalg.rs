//! Dense matrices over GF(2^l), Gaussian elimination and random sampling of
//! scramblers and permutations.
//!
//! Elimination always pivots on the leftmost nonzero column and, within it,
//! the topmost usable row. Free variables are set to zero. The outputs of
//! [`DenseMatrix::rref`], [`DenseMatrix::systematic_form`] and
//! [`DenseMatrix::solve_right`] are therefore fully determined by the input.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major matrix over GF(2^l).
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    field: &'static Field,
    data: Vec<u16>,
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} over GF(2^{})", self.rows, self.cols, self.degree())?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize, degree: u8) -> Result<Self> {
        let field = Field::get(degree)?;
        Ok(DenseMatrix { rows, cols, field, data: vec![0; rows * cols] })
    }

    pub fn identity(n: usize, degree: u8) -> Result<Self> {
        let mut m = Self::zeros(n, n, degree)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<u16>], degree: u8) -> Result<Self> {
        let field = Field::get(degree)?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| !field.contains(x)) {
                return Err(Error::InvalidParameter(format!("{bad:#x} is not an element of GF(2^{degree})")));
            }
            data.extend_from_slice(row);
        }
        Ok(DenseMatrix { rows: rows.len(), cols, field, data })
    }

    pub fn from_fn(rows: usize, cols: usize, degree: u8, mut f: impl FnMut(usize, usize) -> u16) -> Result<Self> {
        let mut m = Self::zeros(rows, cols, degree)?;
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        Ok(m)
    }

    /// A 1×n matrix holding `v`.
    pub fn row_vector(v: &[u16], degree: u8) -> Result<Self> {
        Self::from_rows(&[v.to_vec()], degree)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn degree(&self) -> u8 {
        self.field.degree()
    }

    pub fn data(&self) -> &[u16] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u16 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u16] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u16> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u16>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn same_field(&self, other: &DenseMatrix) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(())
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix { rows: self.cols, cols: self.rows, field: self.field, data: vec![0; self.data.len()] };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect();
        Ok(DenseMatrix { data, ..*self })
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = vec![0u16; self.rows * other.cols];
        for r in 0..self.rows {
            let acc = &mut out[r * other.cols..(r + 1) * other.cols];
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (o, &b) in acc.iter_mut().zip(other.row(k)) {
                    *o ^= f.mul(a, b);
                }
            }
        }
        Ok(DenseMatrix { rows: self.rows, cols: other.cols, field: f, data: out })
    }

    /// `M · v^T` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u16]) -> Result<Vec<u16>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        let f = self.field;
        Ok((0..self.rows).map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| acc ^ f.mul(a, b))).collect())
    }

    /// `v · M` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u16]) -> Result<Vec<u16>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        let f = self.field;
        let mut out = vec![0u16; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(r)) {
                *o ^= f.mul(a, b);
            }
        }
        Ok(out)
    }

    /// Columns `indices` in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> DenseMatrix {
        let mut data = Vec::with_capacity(self.rows * indices.len());
        for r in 0..self.rows {
            data.extend(indices.iter().map(|&c| self.get(r, c)));
        }
        DenseMatrix { rows: self.rows, cols: indices.len(), field: self.field, data }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(DenseMatrix { rows: self.rows, cols, field: self.field, data })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(DenseMatrix { rows: self.rows + other.rows, cols: self.cols, field: self.field, data })
    }

    /// `self · P`, moving column `i` to column `perm.apply(i)`.
    pub fn permute_columns(&self, perm: &Permutation) -> Result<DenseMatrix> {
        if perm.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("permutation on {} points for {} columns", perm.len(), self.cols)));
        }
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, perm.apply(c), self.get(r, c));
            }
        }
        Ok(out)
    }

    /// `P · self`, moving row `perm.apply(i)` to row `i`.
    pub fn permute_rows(&self, perm: &Permutation) -> Result<DenseMatrix> {
        if perm.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("permutation on {} points for {} rows", perm.len(), self.rows)));
        }
        let mut out = self.clone();
        for r in 0..self.rows {
            let src = perm.apply(r);
            out.data[r * self.cols..(r + 1) * self.cols].copy_from_slice(self.row(src));
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: u16) {
        let f = self.field;
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, s);
        }
    }

    /// `row[dst] += s · row[src]`.
    fn add_scaled_row(&mut self, dst: usize, src: usize, s: u16) {
        let f = self.field;
        let cols = self.cols;
        for c in 0..cols {
            let v = f.mul(self.data[src * cols + c], s);
            self.data[dst * cols + c] ^= v;
        }
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    ///
    /// Only the first `limit_cols` columns are eligible as pivots; pass
    /// `self.cols()` for ordinary elimination.
    fn rref_limited(&self, limit_cols: usize) -> (DenseMatrix, Vec<usize>) {
        let mut m = self.clone();
        let f = self.field;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit_cols.min(self.cols) {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            m.scale_row(row, inv);
            for r in 0..m.rows {
                if r != row {
                    let s = m.get(r, col);
                    if s != 0 {
                        m.add_scaled_row(r, row, s);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        self.rref_limited(self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<DenseMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("inverse of non-square {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let aug = self.hstack(&DenseMatrix::identity(n, self.degree())?)?;
        let (red, pivots) = aug.rref_limited(n);
        if pivots.len() < n {
            return Err(Error::RankDeficient { rank: pivots.len(), expected: n });
        }
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(red.select_columns(&right))
    }

    /// Row-reduce to `[I | *]`.
    ///
    /// Returns the reduced matrix together with the column permutation `P`
    /// such that the result equals `T · self · P` for some invertible `T`.
    /// `P` is the identity when the first `rows` columns are already
    /// independent.
    pub fn systematic_form(&self) -> Result<(DenseMatrix, Permutation)> {
        let (red, pivots) = self.rref();
        if pivots.len() < self.rows {
            return Err(Error::RankDeficient { rank: pivots.len(), expected: self.rows });
        }
        let mut order = pivots.clone();
        order.extend((0..self.cols).filter(|c| !pivots.contains(c)));
        // column order[j] moves to position j
        let mut images = vec![0; self.cols];
        for (pos, &c) in order.iter().enumerate() {
            images[c] = pos;
        }
        let perm = Permutation::new(images)?;
        let out = red.permute_columns(&perm)?;
        Ok((out, perm))
    }

    /// Some `z` with `self · z^T = y`; free variables are zero.
    pub fn solve_right(&self, y: &[u16]) -> Result<Vec<u16>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("right-hand side of length {} for {} rows", y.len(), self.rows)));
        }
        let col = DenseMatrix { rows: self.rows, cols: 1, field: self.field, data: y.to_vec() };
        let aug = self.hstack(&col)?;
        let (red, pivots) = aug.rref_limited(self.cols);
        // a nonzero right-hand side in a row with no pivot means inconsistency
        for r in pivots.len()..red.rows {
            if red.get(r, self.cols) != 0 {
                return Err(Error::NoSolution);
            }
        }
        let mut z = vec![0u16; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            z[c] = red.get(r, self.cols);
        }
        Ok(z)
    }

    /// Text form: `rows cols l`, then one line of space-separated hex elements per row.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.degree());
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format(x)).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parse a matrix from the front of `lines`, consuming exactly its lines.
    pub fn read_text<'a>(lines: &mut impl Iterator<Item = &'a str>) -> Result<DenseMatrix> {
        let header = lines.next().ok_or_else(|| Error::Parse("missing matrix header".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bad matrix header {header:?}: {e}")))?;
        let [rows, cols, degree] = dims[..] else {
            return Err(Error::Parse(format!("matrix header {header:?} must be `rows cols l`")));
        };
        let degree = u8::try_from(degree).map_err(|_| Error::UnsupportedDegree(u8::MAX))?;
        let field = Field::get(degree)?;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("matrix truncated at row {r}")))?;
            let row: Vec<u16> =
                if cols == 0 { Vec::new() } else { line.split(' ').map(|t| field.parse(t)).collect::<Result<_>>()? };
            if row.len() != cols {
                return Err(Error::Parse(format!("row {r} has {} entries, expected {cols}", row.len())));
            }
            data.extend(row);
        }
        Ok(DenseMatrix { rows, cols, field, data })
    }

    pub fn from_text(s: &str) -> Result<DenseMatrix> {
        let mut lines = s.lines();
        let m = Self::read_text(&mut lines)?;
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after matrix".into()));
        }
        Ok(m)
    }
}

/// A bijection on `0..n`.
///
/// As a matrix, `P[i][images[i]] = 1`, so a row vector `x · P` carries
/// `x[i]` to position `images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidParameter(format!("images {images:?} do not form a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// The cyclic shift `i -> i + 1 mod n`.
    pub fn cycle(n: usize) -> Self {
        Permutation { images: (0..n).map(|i| (i + 1) % n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    /// Apply `self` first, then `next`. Matches the matrix product `P_self · P_next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| next.images[i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Number of points not fixed.
    pub fn moved_points(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i != j).count()
    }

    /// Direct sum: `self` on the first `len()` points, `other` shifted after it.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.len();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&j| j + n));
        Permutation { images }
    }

    /// Row vector `x · P`.
    pub fn permute_vector<T: Copy + Default>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::default(); x.len()];
        for (i, &v) in x.iter().enumerate() {
            out[self.images[i]] = v;
        }
        out
    }

    pub fn to_matrix(&self, degree: u8) -> Result<DenseMatrix> {
        let n = self.len();
        DenseMatrix::from_fn(n, n, degree, |r, c| u16::from(self.images[r] == c))
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(usize::to_string).collect();
        parts.join(" ")
    }

    pub fn from_text(line: &str) -> Result<Permutation> {
        let images = line
            .split_whitespace()
            .map(str::parse::<usize>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("bad permutation line: {e}")))?;
        Permutation::new(images)
    }
}

/// Uniformly random invertible `k × k` matrix over GF(2^l), by rejection.
pub fn sample_scrambler<R: Rng + ?Sized>(k: usize, degree: u8, rng: &mut R) -> Result<DenseMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter("scrambler size must be at least 1".into()));
    }
    let q = Field::get(degree)?.size();
    loop {
        let m = DenseMatrix::from_fn(k, k, degree, |_, _| rng.gen_range(0..q) as u16)?;
        if m.rank() == k {
            return Ok(m);
        }
    }
}

/// Uniformly random permutation of `0..n` (Fisher–Yates).
pub fn sample_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::InvalidParameter("permutation size must be at least 1".into()));
    }
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Ok(Permutation { images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn m(rows: &[&[u16]], l: u8) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), l).unwrap()
    }

    fn naive_mul(a: &DenseMatrix, b: &DenseMatrix) -> Vec<Vec<u16>> {
        let f = a.field();
        let mut out = vec![vec![0; b.cols()]; a.rows()];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for k in 0..a.cols() {
                    *cell ^= f.mul_schoolbook(a.get(i, k), b.get(k, j));
                }
            }
        }
        out
    }

    fn random(rows: usize, cols: usize, l: u8, rng: &mut ChaCha20Rng) -> DenseMatrix {
        let q = 1usize << l;
        DenseMatrix::from_fn(rows, cols, l, |_, _| rng.gen_range(0..q) as u16).unwrap()
    }

    /// Every row of `a` lies in the row space of `b`, and both have equal rank.
    fn same_row_space(a: &DenseMatrix, b: &DenseMatrix) -> bool {
        let rb = b.rank();
        a.rank() == rb && a.vstack(b).unwrap().rank() == rb
    }

    #[test]
    fn mul_examples() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let a = random(3, 4, 3, &mut rng);
        assert_eq!(a.mul(&DenseMatrix::identity(4, 3).unwrap()).unwrap(), a);
        let row = m(&[&[1, 1]], 1);
        let col = m(&[&[1], &[1]], 1);
        assert_eq!(row.mul(&col).unwrap(), m(&[&[0]], 1));
        let b = random(3, 3, 3, &mut rng);
        let c = random(3, 3, 3, &mut rng);
        assert_eq!(b.mul(&c).unwrap().to_rows(), naive_mul(&b, &c));
        assert!(matches!(b.mul(&a.transpose()), Err(Error::DimensionMismatch(_))));
        let other = random(3, 3, 2, &mut rng);
        assert_eq!(b.mul(&other), Err(Error::DegreeMismatch(3, 2)));
    }

    #[test]
    fn systematic_form_examples() {
        let g = m(&[&[1, 0, 1, 1], &[0, 1, 0, 1]], 1);
        let (s, p) = g.systematic_form().unwrap();
        assert_eq!(s, g);
        assert!(p.is_identity());

        let swap = m(&[&[0, 1], &[1, 0]], 1);
        let (s, p) = swap.systematic_form().unwrap();
        assert_eq!(s, DenseMatrix::identity(2, 1).unwrap());
        assert!(p.is_identity());

        // needs a column permutation: first column is zero
        let g = m(&[&[0, 1, 0, 1], &[0, 0, 1, 1]], 1);
        let (s, p) = g.systematic_form().unwrap();
        assert_eq!(s.select_columns(&[0, 1]), DenseMatrix::identity(2, 1).unwrap());
        assert!(!p.is_identity());
        assert!(same_row_space(&s, &g.permute_columns(&p).unwrap()));

        let deficient = m(&[&[1, 1], &[1, 1]], 1);
        assert!(matches!(deficient.systematic_form(), Err(Error::RankDeficient { rank: 1, .. })));
    }

    #[test]
    fn systematic_form_random_gf4() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 20 {
            let g = random(3, 6, 2, &mut rng);
            if g.rank() < 3 {
                continue;
            }
            let (s, p) = g.systematic_form().unwrap();
            assert_eq!(s.select_columns(&[0, 1, 2]), DenseMatrix::identity(3, 2).unwrap());
            assert!(same_row_space(&s, &g.permute_columns(&p).unwrap()));
            done += 1;
        }
    }

    #[test]
    fn solve_right_examples() {
        let h = m(&[&[1, 0, 1, 1], &[0, 1, 1, 0]], 1);
        assert_eq!(h.solve_right(&[0, 0]).unwrap(), vec![0, 0, 0, 0]);
        let y = [1, 1];
        let z = h.solve_right(&y).unwrap();
        assert_eq!(z, vec![1, 1, 0, 0]);
        assert_eq!(h.mul_vec(&z).unwrap(), y);

        let inconsistent = m(&[&[1, 1], &[1, 1]], 1);
        assert_eq!(inconsistent.solve_right(&[1, 0]), Err(Error::NoSolution));

        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..50 {
            let h = random(4, 7, 3, &mut rng);
            let x: Vec<u16> = (0..7).map(|_| rng.gen_range(0..8)).collect();
            let y = h.mul_vec(&x).unwrap();
            let z = h.solve_right(&y).unwrap();
            assert_eq!(h.mul_vec(&z).unwrap(), y);
        }
    }

    #[test]
    fn scrambler_examples() {
        let mut rng = ChaCha20Rng::seed_from_u64(42);
        assert_eq!(sample_scrambler(1, 1, &mut rng).unwrap(), m(&[&[1]], 1));
        let s = sample_scrambler(3, 1, &mut rng).unwrap();
        assert_eq!(s.rank(), 3);
        let inv = s.inverse().unwrap();
        assert_eq!(s.mul(&inv).unwrap(), DenseMatrix::identity(3, 1).unwrap());
        assert!(sample_scrambler(0, 1, &mut rng).is_err());
        let a = sample_scrambler(4, 3, &mut ChaCha20Rng::seed_from_u64(9)).unwrap();
        let b = sample_scrambler(4, 3, &mut ChaCha20Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scramblers_are_invertible_across_seeds() {
        for k in 2..=8 {
            for l in 1..=3 {
                for seed in 0..100 {
                    let mut rng = ChaCha20Rng::seed_from_u64(seed);
                    let s = sample_scrambler(k, l, &mut rng).unwrap();
                    assert_eq!(s.rank(), k);
                }
            }
        }
    }

    #[test]
    fn permutation_examples() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        assert!(sample_permutation(1, &mut rng).unwrap().is_identity());
        let p = sample_permutation(5, &mut rng).unwrap();
        let mut sorted = p.images().to_vec();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
        assert!(p.then(&p.inverse()).is_identity());
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn permutation_matrix_conventions_agree() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let p = sample_permutation(6, &mut rng).unwrap();
        let q = sample_permutation(6, &mut rng).unwrap();
        let a = random(4, 6, 2, &mut rng);
        let pm = p.to_matrix(2).unwrap();
        assert_eq!(a.permute_columns(&p).unwrap(), a.mul(&pm).unwrap());
        let x: Vec<u16> = (0..6).map(|_| rng.gen_range(0..4)).collect();
        assert_eq!(p.permute_vector(&x), pm.vec_mul(&x).unwrap());
        assert_eq!(p.then(&q).to_matrix(2).unwrap(), pm.mul(&q.to_matrix(2).unwrap()).unwrap());
        let b = random(6, 3, 2, &mut rng);
        assert_eq!(b.permute_rows(&p).unwrap(), pm.mul(&b).unwrap());
    }

    #[test]
    fn text_format() {
        let a = m(&[&[0x1, 0xa], &[0x0, 0xf]], 4);
        assert_eq!(a.to_text(), "2 2 4\n1 a\n0 f\n");
        assert_eq!(DenseMatrix::from_text(&a.to_text()).unwrap(), a);
        let b = m(&[&[0x1f, 0x00]], 5);
        assert_eq!(b.to_text(), "1 2 5\n1f 00\n");
        assert!(DenseMatrix::from_text("1 2 3\n1 9\n").is_err());
        assert!(DenseMatrix::from_text("2 2 3\n1 1\n").is_err());
    }

    proptest! {
        #[test]
        fn text_roundtrip(rows in 1usize..5, cols in 1usize..6, l in 1u8..=16, seed: u64) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let a = random(rows, cols, l, &mut rng);
            prop_assert_eq!(DenseMatrix::from_text(&a.to_text()).unwrap(), a);
        }

        #[test]
        fn systematic_form_preserves_row_space(seed: u64, l in 1u8..=3) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let g = random(3, 7, l, &mut rng);
            match g.systematic_form() {
                Ok((s, p)) => {
                    prop_assert!(same_row_space(&s, &g.permute_columns(&p).unwrap()));
                    prop_assert_eq!(s.select_columns(&[0, 1, 2]), DenseMatrix::identity(3, l).unwrap());
                }
                Err(Error::RankDeficient { rank, .. }) => prop_assert!(rank < 3),
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }

        #[test]
        fn solve_right_satisfies_system(seed: u64, l in 1u8..=4) {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let h = random(3, 5, l, &mut rng);
            let y: Vec<u16> = (0..3).map(|_| rng.gen_range(0..(1u16 << l))).collect();
            if let Ok(z) = h.solve_right(&y) {
                prop_assert_eq!(h.mul_vec(&z).unwrap(), y);
            }
        }
    }
}
