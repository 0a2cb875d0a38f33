//! Exact linear algebra over the rationals.
//!
//! Everything downstream (cohomology, obstruction, exact sequences) reduces its
//! questions to ranks, kernels and quotients computed here. Matrices are dense
//! and small, so plain Gauss-Jordan elimination with eagerly reduced fractions
//! is used throughout. Bases are always returned as the nonzero rows of a
//! reduced row echelon form, which makes them canonical for the subspace they
//! span.

mod sequence;

pub use sequence::{homology_dims, ExactnessReport, PositionReport};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(len: usize) -> Vec<Q> {
    vec![Q::zero(); len]
}

pub fn unit_vec(len: usize, at: usize) -> Vec<Q> {
    let mut v = zero_vec(len);
    v[at] = Q::one();
    v
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Q>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: zero_vec(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Builds a matrix from row vectors. `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {} but expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {} but expected {rows}",
                    c.len()
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor for integer matrices, mostly for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        Matrix::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Q) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Matrix::new(self.rows, cols, data)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..a.cols {
            if pivot_row == a.rows {
                break;
            }
            let Some(found) = (pivot_row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
                continue;
            };
            a.swap_rows(found, pivot_row);
            let inv = a.get(pivot_row, col).recip();
            for j in col..a.cols {
                let idx = pivot_row * a.cols + j;
                if !a.data[idx].is_zero() {
                    a.data[idx] *= &inv;
                }
            }
            for r in 0..a.rows {
                if r == pivot_row || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in col..a.cols {
                    let p = a.get(pivot_row, j);
                    if p.is_zero() {
                        continue;
                    }
                    let delta = &factor * p;
                    a.data[r * a.cols + j] -= delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, in reduced echelon form.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = unit_vec(self.cols, free);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, free).clone();
                }
                v
            })
            .collect();
        SubspaceBasis::echelon(self.cols, vectors)
    }

    /// Basis of the column span, in reduced echelon form.
    pub fn image_basis(&self) -> SubspaceBasis {
        let (r, pivots) = self.transpose().rref();
        let vectors = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        SubspaceBasis {
            ambient_dim: self.rows,
            vectors,
        }
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[Q]) -> Result<Option<Vec<Q>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()])?)?;
        let (r, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vec(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A list of linearly independent vectors in `Q^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<Q>>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
        }
    }

    /// Canonical echelon basis for the span of arbitrary (possibly dependent) vectors.
    pub fn echelon(ambient_dim: usize, spanning: Vec<Vec<Q>>) -> Self {
        if spanning.is_empty() {
            return SubspaceBasis::empty(ambient_dim);
        }
        let m = Matrix::from_rows(ambient_dim, spanning).expect("vector length mismatch");
        let (r, pivots) = m.rref();
        SubspaceBasis {
            ambient_dim,
            vectors: (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_independent(&self) -> bool {
        self.as_rows().rank() == self.vectors.len()
    }

    /// The vectors as the rows of a matrix.
    pub fn as_rows(&self) -> Matrix {
        Matrix::from_rows(self.ambient_dim, self.vectors.clone()).expect("vector length mismatch")
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(self.ambient_dim, rows)
            .map(|m| m.rank() == self.as_rows().rank())
            .unwrap_or(false)
    }

    /// Equality as subspaces, independent of the chosen basis.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.ambient_dim == other.ambient_dim
            && SubspaceBasis::echelon(self.ambient_dim, self.vectors.clone())
                == SubspaceBasis::echelon(other.ambient_dim, other.vectors.clone())
    }

    /// Greedily extends this basis by vectors from `candidates`, in order,
    /// keeping only those that enlarge the span. Returns the accepted candidates.
    pub fn extend_from(&self, candidates: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let mut current = self.vectors.clone();
        let mut rank = self.as_rows().rank();
        let mut accepted = Vec::new();
        for c in candidates {
            current.push(c.clone());
            let m = Matrix::from_rows(self.ambient_dim, current.clone()).expect("length mismatch");
            let r = m.rank();
            if r > rank {
                rank = r;
                accepted.push(c.clone());
            } else {
                current.pop();
            }
        }
        accepted
    }
}

/// Dimension of `Q^ambient / span(sub)`.
pub fn quotient_dim(ambient: usize, sub: &SubspaceBasis) -> Result<usize> {
    if sub.ambient_dim != ambient {
        return Err(Error::DimensionMismatch(format!(
            "subspace lives in dimension {} but ambient is {ambient}",
            sub.ambient_dim
        )));
    }
    if sub.vectors.iter().any(|v| v.len() != ambient) {
        return Err(Error::DimensionMismatch(
            "subspace vector has wrong length".into(),
        ));
    }
    if !sub.is_independent() {
        return Err(Error::DependentVectors);
    }
    Ok(ambient - sub.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qv(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2).rank(), 2);
        assert_eq!(Matrix::zeros(2, 2).rank(), 0);
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(2).kernel_basis().dim(), 0);

        let k = Matrix::zeros(3, 3).kernel_basis();
        assert_eq!(
            k.vectors,
            vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])]
        );

        let k = Matrix::from_i64(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.vectors, vec![qv(&[1, -1])]);
    }

    #[test]
    fn image_examples() {
        assert!(Matrix::identity(2)
            .image_basis()
            .same_span(&SubspaceBasis::echelon(2, vec![qv(&[1, 0]), qv(&[0, 1])])));
        assert_eq!(Matrix::zeros(2, 3).image_basis().dim(), 0);
        let im = Matrix::from_i64(&[&[1, 2], &[2, 4]]).image_basis();
        assert_eq!(im.vectors, vec![qv(&[1, 2])]);
    }

    #[test]
    fn quotient_examples() {
        let one = SubspaceBasis {
            ambient_dim: 3,
            vectors: vec![qv(&[0, 2, 1])],
        };
        assert_eq!(quotient_dim(3, &one), Ok(2));
        assert_eq!(quotient_dim(5, &SubspaceBasis::empty(5)), Ok(5));
        let two = SubspaceBasis {
            ambient_dim: 2,
            vectors: vec![qv(&[1, 1]), qv(&[1, -1])],
        };
        assert_eq!(quotient_dim(2, &two), Ok(0));
        let dependent = SubspaceBasis {
            ambient_dim: 2,
            vectors: vec![qv(&[1, 1]), qv(&[2, 2])],
        };
        assert_eq!(quotient_dim(2, &dependent), Err(Error::DependentVectors));
    }

    #[test]
    fn solve_examples() {
        let b = qv(&[3, -7]);
        assert_eq!(Matrix::identity(2).solve(&b).unwrap(), Some(b));

        let m = Matrix::from_i64(&[&[1, 1]]);
        let x = m.solve(&qv(&[2])).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), qv(&[2]));

        let m = Matrix::from_i64(&[&[1], &[0]]);
        assert_eq!(m.solve(&qv(&[0, 1])).unwrap(), None);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..=3, r * c)
                .prop_map(move |xs| Matrix::new(r, c, xs.into_iter().map(q).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.dim(), m.cols());
            for v in &k.vectors {
                prop_assert!(is_zero_vec(&m.mul_vec(v).unwrap()));
            }
        }

        #[test]
        fn image_vectors_are_solvable(m in small_matrix()) {
            let im = m.image_basis();
            prop_assert_eq!(im.dim(), m.rank());
            for v in &im.vectors {
                prop_assert!(m.solve(v).unwrap().is_some());
            }
        }

        #[test]
        fn row_order_does_not_matter(m in small_matrix(), seed in any::<u64>()) {
            let mut order: Vec<usize> = (0..m.rows()).collect();
            // deterministic shuffle from the seed
            let mut s = seed;
            for i in (1..order.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (s >> 33) as usize % (i + 1));
            }
            let permuted = Matrix::from_rows(
                m.cols(),
                order.iter().map(|&r| m.row(r).to_vec()).collect(),
            ).unwrap();
            prop_assert_eq!(permuted.rank(), m.rank());
            prop_assert_eq!(permuted.kernel_basis(), m.kernel_basis());
        }
    }
}
