//! Row-major f64 matrix with the handful of products the network needs.
//!
//! All accumulation is in f64. Shape mismatches in these low-level ops are
//! programming errors and panic; the public layer APIs validate shapes and
//! return errors instead.

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    /// Build from a flat row-major buffer. Panics if `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// `self (n×k) · b (k×m)` with the cache-friendly ikj loop order.
    pub fn matmul(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, b.rows, "matmul inner dimension mismatch");
        let (n, k, m) = (self.rows, self.cols, b.cols);
        let mut out = Matrix::zeros(n, m);
        for i in 0..n {
            let arow = &self.data[i * k..(i + 1) * k];
            let orow = &mut out.data[i * m..(i + 1) * m];
            for (kk, &aik) in arow.iter().enumerate() {
                if aik == 0.0 {
                    continue;
                }
                let brow = &b.data[kk * m..(kk + 1) * m];
                for (o, &bkj) in orow.iter_mut().zip(brow.iter()) {
                    *o += aik * bkj;
                }
            }
        }
        out
    }

    /// `self (n×k) · bᵀ` where `b` is `(m×k)`: row-by-row dot products.
    pub fn matmul_bt(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.cols, b.cols, "matmul_bt inner dimension mismatch");
        let (n, k, m) = (self.rows, self.cols, b.rows);
        let mut out = Matrix::zeros(n, m);
        for i in 0..n {
            let arow = &self.data[i * k..(i + 1) * k];
            let orow = &mut out.data[i * m..(i + 1) * m];
            for (j, o) in orow.iter_mut().enumerate() {
                let brow = &b.data[j * k..(j + 1) * k];
                *o = arow.iter().zip(brow.iter()).map(|(&x, &y)| x * y).sum();
            }
        }
        out
    }

    /// `selfᵀ (k×n) · b (n×m)` accumulated row-at-a-time to stay contiguous.
    pub fn tmatmul(&self, b: &Matrix) -> Matrix {
        assert_eq!(self.rows, b.rows, "tmatmul outer dimension mismatch");
        let (n, k, m) = (self.rows, self.cols, b.cols);
        let mut out = Matrix::zeros(k, m);
        for i in 0..n {
            let arow = &self.data[i * k..(i + 1) * k];
            let brow = &b.data[i * m..(i + 1) * m];
            for (kk, &aik) in arow.iter().enumerate() {
                if aik == 0.0 {
                    continue;
                }
                let orow = &mut out.data[kk * m..(kk + 1) * m];
                for (o, &bij) in orow.iter_mut().zip(brow.iter()) {
                    *o += aik * bij;
                }
            }
        }
        out
    }

    /// Adds `bias` (length = cols) to every row.
    pub fn add_row_bias(&mut self, bias: &[f64]) {
        assert_eq!(bias.len(), self.cols, "bias length mismatch");
        for r in 0..self.rows {
            for (v, &b) in self.row_mut(r).iter_mut().zip(bias.iter()) {
                *v += b;
            }
        }
    }

    /// Column sums (used for bias gradients).
    pub fn col_sums(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for r in 0..self.rows {
            for (o, &v) in out.iter_mut().zip(self.row(r).iter()) {
                *o += v;
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Elementwise `self + other`.
    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Elementwise `self - other`.
    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    /// Copy of the first `n` columns.
    pub fn take_cols(&self, n: usize) -> Matrix {
        assert!(n <= self.cols);
        let mut out = Matrix::zeros(self.rows, n);
        for r in 0..self.rows {
            out.row_mut(r).copy_from_slice(&self.row(r)[..n]);
        }
        out
    }

    /// Pads with zero columns on the right up to `cols` total.
    pub fn pad_cols(&self, cols: usize) -> Matrix {
        assert!(cols >= self.cols);
        let mut out = Matrix::zeros(self.rows, cols);
        for r in 0..self.rows {
            out.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
        }
        out
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Naive triple-loop reference used as the oracle for all product variants.
    fn naive_matmul(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut s = 0.0;
                for k in 0..a.cols() {
                    s += a.get(i, k) * b.get(k, j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    fn transpose(a: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.cols(), a.rows());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                out.set(j, i, a.get(i, j));
            }
        }
        out
    }

    fn random_matrix(rows: usize, cols: usize, seed: u64) -> Matrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| rng.gen_range(-1.0..1.0)).collect())
    }

    fn assert_close(a: &Matrix, b: &Matrix, tol: f64) {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        for (x, y) in a.data().iter().zip(b.data()) {
            assert!((x - y).abs() <= tol, "{x} vs {y}");
        }
    }

    #[test]
    fn matmul_matches_naive_oracle() {
        let a = random_matrix(7, 5, 1);
        let b = random_matrix(5, 9, 2);
        assert_close(&a.matmul(&b), &naive_matmul(&a, &b), 1e-12);
    }

    #[test]
    fn matmul_bt_matches_naive_oracle() {
        let a = random_matrix(6, 4, 3);
        let b = random_matrix(8, 4, 4);
        assert_close(&a.matmul_bt(&b), &naive_matmul(&a, &transpose(&b)), 1e-12);
    }

    #[test]
    fn tmatmul_matches_naive_oracle() {
        let a = random_matrix(6, 4, 5);
        let b = random_matrix(6, 3, 6);
        assert_close(&a.tmatmul(&b), &naive_matmul(&transpose(&a), &b), 1e-12);
    }

    #[test]
    fn identity_product_is_input() {
        let a = random_matrix(4, 4, 7);
        let mut eye = Matrix::zeros(4, 4);
        for i in 0..4 {
            eye.set(i, i, 1.0);
        }
        assert_close(&a.matmul(&eye), &a, 0.0);
    }

    #[test]
    fn bias_and_col_sums() {
        let mut a = Matrix::zeros(3, 2);
        a.add_row_bias(&[1.0, -2.0]);
        assert_eq!(a.data(), &[1.0, -2.0, 1.0, -2.0, 1.0, -2.0]);
        assert_eq!(a.col_sums(), vec![3.0, -6.0]);
    }

    #[test]
    fn take_and_pad_cols() {
        let a = Matrix::from_vec(2, 3, vec![1., 2., 3., 4., 5., 6.]);
        let t = a.take_cols(2);
        assert_eq!(t.data(), &[1., 2., 4., 5.]);
        let p = t.pad_cols(3);
        assert_eq!(p.data(), &[1., 2., 0., 4., 5., 0.]);
    }
}
