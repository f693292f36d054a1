//! Dense matrices over F_p. Vectors are rows throughout.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from row vectors; every row must have length `cols`.
    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Mat {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn diag(entries: &[u32]) -> Self {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    pub fn mul(&self, other: &Mat, fp: PrimeField) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let p = fp.p() as u64;
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                out.set(i, j, (acc % p) as u32);
            }
        }
        out
    }

    /// v · M.
    pub fn vec_mul(&self, v: &[u32], fp: PrimeField) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector-matrix product shape");
        let p = fp.p() as u64;
        (0..self.cols)
            .map(|j| {
                let acc: u64 = v
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c as u64 * self.get(k, j) as u64)
                    .sum();
                (acc % p) as u32
            })
            .collect()
    }

    /// x M y^T.
    pub fn bilinear(&self, x: &[u32], y: &[u32], fp: PrimeField) -> u32 {
        let p = fp.p() as u64;
        let mut acc = 0u64;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            let mut row = 0u64;
            for (j, &yj) in y.iter().enumerate() {
                row += self.get(i, j) as u64 * yj as u64;
            }
            acc += xi as u64 * (row % p);
        }
        (acc % p) as u32
    }

    /// Reduced row-echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self, fp: PrimeField) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = fp.inv(m.get(r, c)).unwrap();
            m.scale_row(r, inv, fp);
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let factor = m.get(i, c);
                    m.add_row_multiple(i, r, fp.neg(factor), fp);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    pub fn rank(&self, fp: PrimeField) -> usize {
        self.rref(fp).1.len()
    }

    /// Basis (as rows) of {x : M x^T = 0}.
    pub fn null_space(&self, fp: PrimeField) -> Mat {
        let (r, pivots) = self.rref(fp);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.set(k, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, fp.neg(r.get(i, fc)));
            }
        }
        out
    }

    /// Some x with x · M = b, if one exists.
    pub fn solve_left(&self, b: &[u32], fp: PrimeField) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.cols);
        // M^T x^T = b^T, augmented with b as an extra column.
        let mut aug = Mat::zeros(self.cols, self.rows + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(j, i, self.get(i, j));
            }
        }
        for (j, &bj) in b.iter().enumerate() {
            aug.set(j, self.rows, bj);
        }
        let (r, pivots) = aug.rref(fp);
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![0u32; self.rows];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.rows);
        }
        Some(x)
    }

    pub fn inverse(&self, fp: PrimeField) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(fp);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: u32, fp: PrimeField) {
        for j in 0..self.cols {
            let v = fp.mul(self.get(i, j), c);
            self.set(i, j, v);
        }
    }

    /// row[dst] += c · row[src]
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: u32, fp: PrimeField) {
        for j in 0..self.cols {
            let v = fp.add(self.get(dst, j), fp.mul(c, self.get(src, j)));
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c · col[src]
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: u32, fp: PrimeField) {
        for i in 0..self.rows {
            let v = fp.add(self.get(i, dst), fp.mul(c, self.get(i, src)));
            self.set(i, dst, v);
        }
    }

    pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
        let mut m = Mat::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j));
            }
        }
        m
    }

    /// Random matrix with entries uniform in F_p.
    pub fn random(rows: usize, cols: usize, fp: PrimeField, rng: &mut impl rand::Rng) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for v in m.data.iter_mut() {
            *v = rng.gen_range(0..fp.p());
        }
        m
    }

    /// Random invertible n×n matrix (rejection sampling).
    pub fn random_invertible(n: usize, fp: PrimeField, rng: &mut impl rand::Rng) -> Mat {
        loop {
            let m = Mat::random(n, n, fp, rng);
            if m.rank(fp) == n {
                return m;
            }
        }
    }

    pub fn random_symmetric(n: usize, fp: PrimeField, rng: &mut impl rand::Rng) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = rng.gen_range(0..fp.p());
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rref_and_null_space() {
        let fp = f(3);
        let a = Mat::from_rows(&[vec![1, 0], vec![0, 0]], 2).unwrap();
        let (r, piv) = a.rref(fp);
        assert_eq!(piv, vec![0]);
        assert_eq!(r.to_rows(), vec![vec![1, 0]]);
        assert_eq!(a.null_space(fp).to_rows(), vec![vec![0, 1]]);
    }

    #[test]
    fn solve_left_consistency() {
        let fp = f(3);
        let a = Mat::from_rows(&[vec![1, 0], vec![0, 0]], 2).unwrap();
        assert_eq!(a.solve_left(&[0, 1], fp), None);
        let x = a.solve_left(&[2, 0], fp).unwrap();
        assert_eq!(a.vec_mul(&x, fp), vec![2, 0]);
    }

    #[test]
    fn inverse_round_trip() {
        let fp = f(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..5 {
            let m = Mat::random_invertible(n, fp, &mut rng);
            let inv = m.inverse(fp).unwrap();
            assert_eq!(m.mul(&inv, fp), Mat::identity(n));
        }
        assert!(Mat::zeros(2, 2).inverse(fp).is_none());
    }
}
