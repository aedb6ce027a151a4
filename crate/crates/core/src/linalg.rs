//! Exact linear algebra over the rationals.
//!
//! Determinants and ranks are computed by fraction-free Bareiss
//! elimination on an integer-scaled copy of the matrix, so every CI
//! decision downstream is exact. Matrices here are tiny (at most
//! `n x n` for ground sets of a handful of nodes), so no effort is
//! spent on anything beyond dense row operations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Dense matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<Rat>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            a: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            a: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = &self[(i, k)];
                if lik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = lik * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// Submatrix with the given row and column index lists (order kept).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                m[(ri, ci)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Clears denominators row by row; returns the integer matrix and the
    /// product of the row scale factors.
    fn integer_scaled(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale_product = BigInt::one();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut l = BigInt::one();
            for j in 0..self.cols {
                l = l.lcm(self[(i, j)].denom());
            }
            let row: Vec<BigInt> = (0..self.cols)
                .map(|j| {
                    let v = &self[(i, j)];
                    v.numer() * (&l / v.denom())
                })
                .collect();
            scale_product *= &l;
            out.push(row);
        }
        (out, scale_product)
    }

    /// Bareiss fraction-free elimination on an integer matrix.
    /// Returns (rank, determinant-of-leading-square-part-if-square).
    fn bareiss(mut m: Vec<Vec<BigInt>>) -> (usize, Option<BigInt>) {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let square = rows == cols;
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let pivot_row = (r..rows).find(|&i| !m[i][c].is_zero());
            let Some(p) = pivot_row else { continue };
            if p != r {
                m.swap(p, r);
                sign = -sign;
            }
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                    debug_assert!((&num % &prev).is_zero());
                    m[i][j] = num / &prev;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
        }
        let det = if square {
            Some(if r == rows {
                let d = m[rows - 1][cols - 1].clone();
                if sign < 0 {
                    -d
                } else {
                    d
                }
            } else {
                BigInt::zero()
            })
        } else {
            None
        };
        (r, det)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let (ints, _) = self.integer_scaled();
        Mat::bareiss(ints).0
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        if self.rows == 0 {
            return Rat::one();
        }
        let (ints, scale) = self.integer_scaled();
        let (_, det) = Mat::bareiss(ints);
        Rat::new(det.expect("square"), scale)
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            if p != c {
                for j in 0..n {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(c, j)].clone();
                    a[(c, j)] = tmp;
                    let tmp = inv[(p, j)].clone();
                    inv[(p, j)] = inv[(c, j)].clone();
                    inv[(c, j)] = tmp;
                }
            }
            let piv = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] /= &piv;
                inv[(c, j)] /= &piv;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let s = &f * &a[(c, j)];
                    a[(i, j)] -= s;
                    let s = &f * &inv[(c, j)];
                    inv[(i, j)] -= s;
                }
            }
        }
        Some(inv)
    }

    /// Affine rank of a point set given as matrix rows: the rank of the
    /// differences against the first row. An empty set has affine rank 0,
    /// a single point affine rank... 0 (dimension of its affine hull).
    pub fn affine_dim_of_rows(&self) -> usize {
        if self.rows <= 1 {
            return 0;
        }
        let mut diffs = Mat::zeros(self.rows - 1, self.cols);
        for i in 1..self.rows {
            for j in 0..self.cols {
                diffs[(i - 1, j)] = &self[(i, j)] - &self[(0, j)];
            }
        }
        diffs.rank()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.a[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.a[i * self.cols + j]
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Formats a rational as `p/q` (or `p` when integral).
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn rat_from_string(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num.parse().map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let q: BigInt = den.parse().map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if q.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(p, q))
}

/// Rational absolute value helper.
pub fn rat_abs(x: &Rat) -> Rat {
    x.abs()
}
