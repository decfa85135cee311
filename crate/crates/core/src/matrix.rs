//! Dense square matrices over an exact field.

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<C> {
    dim: usize,
    data: Vec<C>,
}

impl<C: Field> Matrix<C> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            data: vec![C::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = C::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &C {
        &self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: C) {
        self.data[row * self.dim + col] = value;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &other.data[k * n + c];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * n + c;
                    out.data[idx] = out.data[idx].plus(&a.times(b));
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &C) -> Self {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x.times(s)).collect(),
        }
    }

    /// First `(row, col)` where the two matrices differ, scanning row-major.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.dim, i % self.dim))
    }

    /// Fraction-free (Bareiss) elimination; returns `(rank, determinant)`.
    pub fn rank_and_det(&self) -> (usize, C) {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut prev = C::one();
        let mut sign_flip = false;
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !a[r * n + col].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..n {
                    a.swap(p * n + c, row * n + c);
                }
                sign_flip = !sign_flip;
            }
            let pivot = a[row * n + col].clone();
            for r in row + 1..n {
                let factor = a[r * n + col].clone();
                for c in col + 1..n {
                    let v = pivot.times(&a[r * n + c]).minus(&factor.times(&a[row * n + c]));
                    a[r * n + c] = v.times(&prev.inverse().expect("nonzero pivot"));
                }
                a[r * n + col] = C::zero();
            }
            prev = pivot;
            rank += 1;
            row += 1;
            if row == n {
                break;
            }
        }
        let det = if rank < n {
            C::zero()
        } else if sign_flip {
            prev.negated()
        } else {
            prev
        };
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.rank_and_det().0
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n).data;
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if p != col {
                for c in 0..n {
                    a.swap(p * n + c, col * n + c);
                    inv.swap(p * n + c, col * n + c);
                }
            }
            let pinv = a[col * n + col].inverse()?;
            for c in 0..n {
                a[col * n + c] = a[col * n + c].times(&pinv);
                inv[col * n + c] = inv[col * n + c].times(&pinv);
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for c in 0..n {
                    if !a[col * n + c].is_zero() {
                        a[r * n + c] = a[r * n + c].minus(&f.times(&a[col * n + c]));
                    }
                    if !inv[col * n + c].is_zero() {
                        inv[r * n + c] = inv[r * n + c].minus(&f.times(&inv[col * n + c]));
                    }
                }
            }
        }
        Some(Matrix { dim: n, data: inv })
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }
}
