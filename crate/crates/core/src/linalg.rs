//! Dense exact matrices over a [`Ring`], signed permutation matrices, and
//! Gaussian elimination over fields.
//!
//! Elimination pivots on the first nonzero entry in column order, so every
//! basis returned here is deterministic. Row operations skip zero entries,
//! which keeps the sparse systems arising from involutions cheap.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::ring::{Ring, RingHom};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn scalar(n: usize, value: R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::ShapeMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<R>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "column of length {} in a matrix with {rows} rows",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn random<G: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut G) -> Self {
        Self::from_fn(rows, cols, |_, _| R::sample(rng))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn as_slice(&self) -> &[R] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<R> {
        self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn map<T: Ring>(&self, mut f: impl FnMut(&R) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    /// Entrywise image under a ring homomorphism.
    pub fn base_change<T: Ring, H: RingHom<R, T>>(&self, hom: &H) -> Matrix<T> {
        self.map(|x| hom.apply(x))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(R, R) -> R) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data =
            self.data.iter().zip(&other.data).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self += c * other`, skipping zero entries of `other`.
    pub fn add_scaled(&mut self, c: &R, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        if c.is_zero() {
            return;
        }
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x = x.clone() + c.clone() * y.clone();
            }
        }
    }
}

pub fn dot<R: Ring>(a: &[R], b: &[R]) -> R {
    a.iter().zip(b).fold(R::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

/// `trace(a * b)` without forming the product.
pub fn trace_of_product<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> R {
    assert!(a.cols == b.rows && a.rows == b.cols, "shape mismatch");
    let mut acc = R::zero();
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = &a[(i, k)];
            if x.is_zero() {
                continue;
            }
            let y = &b[(k, i)];
            if !y.is_zero() {
                acc = acc + x.clone() * y.clone();
            }
        }
    }
    acc
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

// The operator forms panic on shape mismatch; use the `try_*` and `matmul`
// methods where shapes are not known to agree.
impl<R: Ring> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: Self) -> Matrix<R> {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl<R: Ring> Add for &Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, rhs: Self) -> Matrix<R> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<R: Ring> Sub for &Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, rhs: Self) -> Matrix<R> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<R: Ring> Neg for &Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        self.map(|x| -x.clone())
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// A square matrix with exactly one `±1` entry in every row and column.
///
/// Column `j` is `sign[j] * e_{target[j]}`. Inversion needs no division, so
/// this works over any ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation<R> {
    target: Vec<usize>,
    sign: Vec<R>,
}

impl<R: Ring> SignedPermutation<R> {
    pub fn new(target: Vec<usize>, sign: Vec<R>) -> Result<Self> {
        let n = target.len();
        let mut seen = vec![false; n];
        if sign.len() != n {
            return Err(AlgebraError::NotSignedPermutation);
        }
        for (&t, s) in target.iter().zip(&sign) {
            if t >= n || seen[t] || !(s.is_one() || (-s.clone()).is_one()) {
                return Err(AlgebraError::NotSignedPermutation);
            }
            seen[t] = true;
        }
        Ok(SignedPermutation { target, sign })
    }

    pub fn from_matrix(m: &Matrix<R>) -> Result<Self> {
        if !m.is_square() {
            return Err(AlgebraError::NotSignedPermutation);
        }
        let mut target = Vec::with_capacity(m.cols());
        let mut sign = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            let mut nonzero = (0..m.rows()).filter(|&i| !m[(i, j)].is_zero());
            match (nonzero.next(), nonzero.next()) {
                (Some(i), None) => {
                    target.push(i);
                    sign.push(m[(i, j)].clone());
                }
                _ => return Err(AlgebraError::NotSignedPermutation),
            }
        }
        Self::new(target, sign)
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// Row index of the nonzero entry in column `j`.
    pub fn target(&self, j: usize) -> usize {
        self.target[j]
    }

    /// The nonzero entry of column `j`.
    pub fn sign(&self, j: usize) -> &R {
        &self.sign[j]
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut target = vec![0; n];
        let mut sign = vec![R::zero(); n];
        for j in 0..n {
            target[self.target[j]] = j;
            // (+-1)^{-1} = +-1
            sign[self.target[j]] = self.sign[j].clone();
        }
        SignedPermutation { target, sign }
    }

    pub fn to_matrix(&self) -> Matrix<R> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            m[(self.target[j], j)] = self.sign[j].clone();
        }
        m
    }

    /// `G^{-1} x^T G` where `G` is `self`, in `O(dim^2)`.
    pub fn transpose_conjugate(&self, x: &Matrix<R>) -> Matrix<R> {
        let n = self.dim();
        assert!(x.rows() == n && x.cols() == n, "shape mismatch");
        // entry (i, j) is s_i s_j x[g(j), g(i)]
        Matrix::from_fn(n, n, |i, j| {
            let v = &x[(self.target[j], self.target[i])];
            if v.is_zero() {
                R::zero()
            } else {
                self.sign[i].clone() * self.sign[j].clone() * v.clone()
            }
        })
    }
}

/// Inverse of a signed permutation matrix, validated first.
pub fn signed_perm_inverse<R: Ring>(b: &Matrix<R>) -> Result<Matrix<R>> {
    Ok(SignedPermutation::from_matrix(b)?.inverse().to_matrix())
}

/// Reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Rref<R> {
    pub rows: Vec<Vec<R>>,
    pub pivots: Vec<usize>,
}

impl<R: Ring> Rref<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn rref_in_place<R: Ring>(rows: &mut [Vec<R>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].try_inv().expect("field elimination hit a non-unit pivot");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() * inv.clone();
                }
            }
        }
        let support: Vec<(usize, R)> = rows[r]
            .iter()
            .enumerate()
            .skip(c)
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (j, x) in &support {
                row[*j] = row[*j].clone() - factor.clone() * x.clone();
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref<R: Ring>(m: &Matrix<R>) -> Result<Rref<R>> {
    R::require_field()?;
    let mut rows: Vec<Vec<R>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let pivots = rref_in_place(&mut rows, m.cols());
    rows.truncate(pivots.len());
    Ok(Rref { rows, pivots })
}

pub fn rank<R: Ring>(m: &Matrix<R>) -> Result<usize> {
    Ok(rref(m)?.rank())
}

/// Basis of `{x : m x = 0}`.
pub fn kernel_basis<R: Ring>(m: &Matrix<R>) -> Result<Vec<Vec<R>>> {
    let rr = rref(m)?;
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &rr.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![R::zero(); n];
        v[free] = R::one();
        for (row, &p) in rr.rows.iter().zip(&rr.pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Basis of the column space of `m`, in reduced echelon form.
pub fn image_basis<R: Ring>(m: &Matrix<R>) -> Result<Vec<Vec<R>>> {
    Ok(rref(&m.transpose())?.rows)
}

/// A solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve<R: Ring>(a: &Matrix<R>, b: &[R]) -> Result<Option<Vec<R>>> {
    R::require_field()?;
    if b.len() != a.rows() {
        return Err(AlgebraError::ShapeMismatch(format!(
            "{}x{} system with right-hand side of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut rows: Vec<Vec<R>> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = rref_in_place(&mut rows, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![R::zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Ok(Some(x))
}

/// Inverse of a square matrix over a field, or `None` when singular.
pub fn inverse<R: Ring>(m: &Matrix<R>) -> Result<Option<Matrix<R>>> {
    R::require_field()?;
    if !m.is_square() {
        return Err(AlgebraError::ShapeMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut rows: Vec<Vec<R>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| if i == j { R::one() } else { R::zero() }));
            r
        })
        .collect();
    let pivots = rref_in_place(&mut rows, n);
    if pivots.len() < n {
        return Ok(None);
    }
    let data = rows.into_iter().flat_map(|r| r.into_iter().skip(n)).collect();
    Ok(Some(Matrix::from_vec(n, n, data)?))
}

pub fn in_span<R: Ring>(x: &[R], basis: &[Vec<R>]) -> Result<bool> {
    Ok(RowSpace::new(x.len(), basis)?.contains(x))
}

/// The span of a list of vectors, kept in reduced echelon form for repeated
/// membership queries.
#[derive(Clone, Debug)]
pub struct RowSpace<R> {
    ambient: usize,
    rows: Vec<Vec<R>>,
    pivots: Vec<usize>,
}

impl<R: Ring> RowSpace<R> {
    pub fn new(ambient: usize, vectors: &[Vec<R>]) -> Result<Self> {
        R::require_field()?;
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "vector of length {} in a space of dimension {ambient}",
                v.len()
            )));
        }
        let mut rows = vectors.to_vec();
        let pivots = rref_in_place(&mut rows, ambient);
        rows.truncate(pivots.len());
        Ok(RowSpace { ambient, rows, pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The reduced echelon basis.
    pub fn basis(&self) -> &[Vec<R>] {
        &self.rows
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[R]) -> Vec<R> {
        assert_eq!(v.len(), self.ambient, "dimension mismatch");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    w[j] = w[j].clone() - f.clone() * x.clone();
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[R]) -> bool {
        self.reduce(v).iter().all(R::is_zero)
    }

    pub fn contains_space(&self, other: &RowSpace<R>) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }
}
