//! Dense matrices over GF(2^e) and Gaussian elimination.
//!
//! Over GF(2) rows are packed into `u64` words during elimination.

use crate::field::Field;

/// Row-major dense matrix with entries in a small binary field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u8>], cols: usize) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&r[..cols]);
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<u8>], rows: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, f: &Field, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            let orow = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                if a == 1 {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o ^= b;
                    }
                } else {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o ^= f.mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &Field, v: &[u8]) -> Vec<u8> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u8;
                for (j, &x) in v.iter().enumerate() {
                    if x != 0 {
                        acc ^= f.mul(self.data[i * self.cols + j], x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a ^ b).collect() }
    }

    pub fn scale(&self, f: &Field, c: u8) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Columns `idx` of `self`, in the given order.
    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                m.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        m
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut m = Mat::zeros(self.rows, cols);
        for i in 0..self.rows {
            m.data[i * cols..i * cols + self.cols].copy_from_slice(self.row(i));
            m.data[i * cols + self.cols..(i + 1) * cols].copy_from_slice(other.row(i));
        }
        m
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn rank(&self, f: &Field) -> usize {
        rref(f, self).1.len()
    }

    pub fn pow(&self, f: &Field, n: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(f, self);
        }
        acc
    }
}

/// Reduced row echelon form: returns the nonzero reduced rows and their pivot columns.
pub fn rref(f: &Field, m: &Mat) -> (Mat, Vec<usize>) {
    let mut rows = m.row_vecs();
    let pivots = eliminate(f, &mut rows, m.cols);
    (Mat::from_rows(&rows, m.cols), pivots)
}

/// In-place full reduction of `rows`; zero rows are dropped.
pub fn eliminate(f: &Field, rows: &mut Vec<Vec<u8>>, cols: usize) -> Vec<usize> {
    if f.degree() == 1 {
        return eliminate_gf2(rows, cols);
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *x ^= f.mul(k, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn eliminate_gf2(rows: &mut Vec<Vec<u8>>, cols: usize) -> Vec<usize> {
    let words = cols.div_ceil(64);
    let mut packed: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            let mut w = vec![0u64; words];
            for (j, &x) in row.iter().enumerate().take(cols) {
                if x & 1 != 0 {
                    w[j / 64] |= 1u64 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == packed.len() {
            break;
        }
        let (wi, bit) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (r..packed.len()).find(|&i| packed[i][wi] & bit != 0) else { continue };
        packed.swap(r, p);
        let pivot_row = packed[r].clone();
        for (i, row) in packed.iter_mut().enumerate() {
            if i != r && row[wi] & bit != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(wi) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    packed.truncate(r);
    *rows = packed
        .iter()
        .map(|w| (0..cols).map(|j| ((w[j / 64] >> (j % 64)) & 1) as u8).collect())
        .collect();
    pivots
}

/// Basis of { x : m x = 0 }.
pub fn nullspace(f: &Field, m: &Mat) -> Vec<Vec<u8>> {
    let (r, pivots) = rref(f, m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u8; m.cols];
        v[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            // characteristic 2: -x = x
            v[p] = r.get(i, free);
        }
        out.push(v);
    }
    out
}

/// Some x with a x = b, if one exists.
pub fn solve(f: &Field, a: &Mat, b: &[u8]) -> Option<Vec<u8>> {
    assert_eq!(a.rows, b.len());
    let aug = a.hstack(&Mat::from_cols(&[b.to_vec()], a.rows));
    let (r, pivots) = rref(f, &aug);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![0u8; a.cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, a.cols);
    }
    Some(x)
}

/// Solve a X = B column by column; `None` if any column is inconsistent.
pub fn solve_matrix(f: &Field, a: &Mat, b: &Mat) -> Option<Mat> {
    assert_eq!(a.rows, b.rows);
    let aug = a.hstack(b);
    let (r, pivots) = rref(f, &aug);
    if pivots.iter().any(|&p| p >= a.cols) {
        return None;
    }
    let mut x = Mat::zeros(a.cols, b.cols);
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(p, j, r.get(i, a.cols + j));
        }
    }
    Some(x)
}

pub fn inverse(f: &Field, a: &Mat) -> Option<Mat> {
    if a.rows != a.cols {
        return None;
    }
    let n = a.rows;
    if n == 0 {
        return Some(Mat::zeros(0, 0));
    }
    let (r, pivots) = rref(f, &a.hstack(&Mat::identity(n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}

pub fn rank_of_vectors(f: &Field, vecs: &[Vec<u8>], len: usize) -> usize {
    let mut rows = vecs.to_vec();
    eliminate(f, &mut rows, len).len()
}

/// Reduced basis of the span of `vecs` inside k^len.
pub fn span(f: &Field, vecs: &[Vec<u8>], len: usize) -> Vec<Vec<u8>> {
    let mut rows = vecs.to_vec();
    eliminate(f, &mut rows, len);
    rows
}

/// Basis of span(a) ∩ span(b) inside k^len.
pub fn intersection(f: &Field, a: &[Vec<u8>], b: &[Vec<u8>], len: usize) -> Vec<Vec<u8>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols = a.to_vec();
    cols.extend_from_slice(b);
    let m = Mat::from_cols(&cols, len);
    let kernel = nullspace(f, &m);
    let vecs: Vec<Vec<u8>> = kernel
        .iter()
        .map(|x| {
            let mut v = vec![0u8; len];
            for (i, ai) in a.iter().enumerate() {
                if x[i] != 0 {
                    for (t, &y) in v.iter_mut().zip(ai) {
                        *t ^= f.mul(x[i], y);
                    }
                }
            }
            v
        })
        .collect();
    span(f, &vecs, len)
}

/// Indices of standard basis vectors completing `basis` to a basis of k^len.
pub fn standard_complement(f: &Field, basis: &[Vec<u8>], len: usize) -> Vec<usize> {
    let mut rows = span(f, basis, len);
    let mut out = Vec::new();
    let mut rank = rows.len();
    for j in 0..len {
        if rank == len {
            break;
        }
        let mut e = vec![0u8; len];
        e[j] = 1;
        let mut trial = rows.clone();
        trial.push(e);
        let r = eliminate(f, &mut trial, len).len();
        if r > rank {
            rows = trial;
            rank = r;
            out.push(j);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::gf;

    fn random_mat(seed: &mut u64, r: usize, c: usize, q: u8) -> Mat {
        let mut m = Mat::zeros(r, c);
        for x in m.data.iter_mut() {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            *x = ((*seed >> 33) % q as u64) as u8;
        }
        m
    }

    #[test]
    fn nullspace_is_kernel_and_rank_nullity() {
        let mut seed = 7u64;
        for e in [1, 2, 3] {
            let f = gf(e).unwrap();
            for (r, c) in [(3, 5), (7, 7), (10, 4), (70, 90)] {
                let m = random_mat(&mut seed, r, c, f.order() as u8);
                let ns = nullspace(f, &m);
                for v in &ns {
                    assert!(m.apply(f, v).iter().all(|&x| x == 0));
                }
                assert_eq!(ns.len() + m.rank(f), c);
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let mut seed = 11u64;
        for e in [1, 2, 4] {
            let f = gf(e).unwrap();
            let mut found = 0;
            while found < 5 {
                let m = random_mat(&mut seed, 6, 6, f.order() as u8);
                if let Some(inv) = inverse(f, &m) {
                    assert_eq!(m.mul(f, &inv), Mat::identity(6));
                    found += 1;
                } else {
                    assert!(m.rank(f) < 6);
                }
            }
        }
    }

    #[test]
    fn solve_consistent_system() {
        let f = gf(2).unwrap();
        let mut seed = 3u64;
        let a = random_mat(&mut seed, 8, 5, 4);
        let x = vec![1, 2, 3, 0, 1];
        let b = a.apply(f, &x);
        let y = solve(f, &a, &b).unwrap();
        assert_eq!(a.apply(f, &y), b);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let f = gf(1).unwrap();
        let a = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let b = vec![vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(intersection(f, &a, &b, 3), vec![vec![0, 1, 0]]);
        assert_eq!(standard_complement(f, &a, 3), vec![2]);
    }
}
