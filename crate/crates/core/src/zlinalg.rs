//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here works over arbitrary-precision integers or rationals.
//! Pivoting is deterministic (first nonzero entry in row-major order) so
//! every result is reproducible bit for bit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("vectors are linearly dependent over Q")]
    NotIndependent,
    #[error("zero vector has no primitive form")]
    ZeroVector,
    #[error("vectors have inconsistent lengths")]
    Shape,
}

/// Dense integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. `cols` is needed for the zero-row case.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Result<Self, LinAlgError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::Shape);
            }
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(*x);
            }
        }
        Ok(m)
    }

    pub fn from_big_rows(rows: &[Vec<BigInt>], cols: usize) -> Result<Self, LinAlgError> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::Shape);
            }
            for (j, x) in row.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + c * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + c * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

/// Smith decomposition `left * m * right = diag`, with `right_inv = right^{-1}`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Elementary divisors `d_1 | d_2 | ...` of `m`; length is `min(rows, cols)`,
/// zeros trailing.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    smith_decomposition(m).diagonal
}

pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let mut a = m.clone();
    let mut left = IntMatrix::identity(m.rows);
    let mut right = IntMatrix::identity(m.cols);
    let mut right_inv = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);

    // Column operations are mirrored on `right`, and their inverses as row
    // operations on `right_inv`.
    let col_swap = |a: &mut IntMatrix, r: &mut IntMatrix, ri: &mut IntMatrix, x: usize, y: usize| {
        a.swap_cols(x, y);
        r.swap_cols(x, y);
        ri.swap_rows(x, y);
    };
    let col_add = |a: &mut IntMatrix,
                   r: &mut IntMatrix,
                   ri: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   c: &BigInt| {
        a.add_col(dst, src, c);
        r.add_col(dst, src, c);
        ri.add_row(src, dst, &-c);
    };

    for t in 0..n {
        loop {
            // pivot: smallest nonzero |entry| in the trailing block, row-major ties
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    let v = a.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            col_swap(&mut a, &mut right, &mut right_inv, t, pj);

            let mut clean = true;
            for i in t + 1..a.rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                let c = -q;
                a.add_row(i, t, &c);
                left.add_row(i, t, &c);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..a.cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                let c = -q;
                col_add(&mut a, &mut right, &mut right_inv, j, t, &c);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = a.get(t, t).clone();
            let mut offender = None;
            'scan: for i in t + 1..a.rows {
                for j in t + 1..a.cols {
                    if !a.get(i, j).is_multiple_of(&p) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if t < a.rows && t < a.cols && a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }

    let diagonal = (0..n).map(|i| a.get(i, i).clone()).collect();
    SmithDecomposition {
        diagonal,
        left,
        right,
        right_inv,
    }
}

fn to_rat_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

/// Reduced row echelon form over Q. Returns the reduced rows and pivot columns.
fn rref(mut m: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (m, pivots)
}

pub fn rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref(to_rat_rows(rows), cols).1.len()
}

pub fn rank_i64(rows: &[Vec<i64>], cols: usize) -> usize {
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    rank(&big, cols)
}

/// Solves `a x = b`. Free variables are set to zero; pivots follow the
/// first-nonzero rule. `None` means the system is inconsistent.
pub fn solve_rational(a: &IntMatrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let cols = a.cols();
    let aug: Vec<Vec<BigRational>> = (0..a.rows())
        .map(|i| {
            let mut row: Vec<BigRational> = (0..cols)
                .map(|j| BigRational::from_integer(a.get(i, j).clone()))
                .collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let (red, pivots) = rref(aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = red[i][cols].clone();
    }
    Some(x)
}

/// Integer basis of the right kernel `{x : rows · x = 0}`, each vector primitive.
pub fn integer_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let (red, pivots) = if rows.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        rref(to_rat_rows(rows), cols)
    };
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -red[i][f].clone();
            }
            clear_denominators(&v)
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    primitive_big(&ints).unwrap_or(ints)
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn primitive_big(v: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(LinAlgError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Divides a nonzero lattice vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Result<Vec<i64>, LinAlgError> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(LinAlgError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

/// True iff the (independent) vectors extend to a Z-basis of `Z^r`.
pub fn is_partial_basis(vectors: &[Vec<i64>]) -> Result<bool, LinAlgError> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let cols = vectors[0].len();
    let m = IntMatrix::from_rows(vectors, cols)?;
    let d = smith_normal_form(&m);
    if d.iter().filter(|x| !x.is_zero()).count() < vectors.len() {
        return Err(LinAlgError::NotIndependent);
    }
    Ok(d.iter().all(|x| x.is_one()))
}

/// Z-basis of the saturated lattice `Z^r ∩ span_Q(rows)`.
pub fn saturation_basis(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(rows, cols).expect("rows share a length");
    let snf = smith_decomposition(&m);
    (0..snf.rank()).map(|i| snf.right_inv.row(i)).collect()
}

pub fn dot(a: &[BigInt], b: &[i64]) -> BigInt {
    a.iter().zip(b).map(|(x, &y)| x * BigInt::from(y)).sum()
}

pub fn dot_rat(a: &[BigRational], b: &[i64]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, &y)| x * BigRational::from_integer(BigInt::from(y)))
        .fold(BigRational::zero(), |acc, x| acc + x)
}
