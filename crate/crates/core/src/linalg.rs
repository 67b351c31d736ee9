//! Dense matrices over any [`Field`], reduced row echelon form, kernels, and
//! subspaces stored by their canonical RREF basis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ExtElement, Field, FieldCtx, PrimeField};

/// Row-major dense matrix. Serializes as `{rows, cols, entries}` with one array per row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(
    into = "MatrixRepr<E>",
    try_from = "MatrixRepr<E>",
    bound(serialize = "E: Copy + Serialize", deserialize = "E: Copy + Deserialize<'de>")
)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<E> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<E>>,
}

impl<E: Copy> From<Matrix<E>> for MatrixRepr<E> {
    fn from(m: Matrix<E>) -> Self {
        MatrixRepr { rows: m.rows, cols: m.cols, entries: m.row_vecs() }
    }
}

impl<E: Copy> TryFrom<MatrixRepr<E>> for Matrix<E> {
    type Error = Error;

    fn try_from(r: MatrixRepr<E>) -> Result<Self> {
        if r.entries.len() != r.rows {
            return Err(Error::DimensionMismatch(format!("{} rows listed, {} declared", r.entries.len(), r.rows)));
        }
        Matrix::from_rows(r.cols, &r.entries)
    }
}

/// Matrix over the prime field.
pub type BitMatrix = Matrix<u32>;
/// Matrix over the extension field.
pub type ExtMatrix = Matrix<ExtElement>;

impl<E: Copy> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    /// Builds from row vectors, each of length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<E>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch(r.len(), cols));
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn row_vector(v: &[E]) -> Self {
        Matrix { rows: 1, cols: v.len(), data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Matrix { rows: self.rows, cols: cols.len(), data }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Matrix { rows: self.rows, cols: self.cols + other.cols, data })
    }

    pub fn map<T: Copy>(&self, f: impl Fn(E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }
}

impl<E: Copy> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }
}

impl BitMatrix {
    /// Image under the embedding F_q → F_{q^m}.
    pub fn embed(&self, ctx: &FieldCtx) -> ExtMatrix {
        self.map(|c| ctx.embed(c))
    }
}

/// Product `a · b`.
pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "product of {}x{} and {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = Matrix::zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.get(i, j), f.mul(x, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

/// Row vector times matrix.
pub fn vec_mul<F: Field>(f: &F, x: &[F::Elem], m: &Matrix<F::Elem>) -> Result<Vec<F::Elem>> {
    if x.len() != m.rows {
        return Err(Error::LengthMismatch(x.len(), m.rows));
    }
    let mut out = vec![f.zero(); m.cols];
    for (i, &xi) in x.iter().enumerate() {
        if f.is_zero(xi) {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            *o = f.add(*o, f.mul(xi, m.get(i, j)));
        }
    }
    Ok(out)
}

/// Componentwise sum.
pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch("sum of differently shaped matrices".into()));
    }
    let data = a.data.iter().zip(&b.data).map(|(&x, &y)| f.add(x, y)).collect();
    Ok(Matrix { rows: a.rows, cols: a.cols, data })
}

pub fn vec_add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

/// Reduced row echelon form with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    pub matrix: Matrix<E>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<E: Copy> Echelon<E> {
    /// The nonzero rows.
    pub fn basis(&self) -> Matrix<E> {
        Matrix {
            rows: self.rank,
            cols: self.matrix.cols,
            data: self.matrix.data[..self.rank * self.matrix.cols].to_vec(),
        }
    }
}

pub fn rref<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Echelon<F::Elem> {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !f.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..a.cols {
            let v = f.mul(a.get(r, j), inv);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if f.is_zero(factor) {
                continue;
            }
            for j in c..a.cols {
                let v = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { matrix: a, rank: r, pivots }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    rref(f, m).rank
}

pub fn rank_of_rows<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    rank(f, &Matrix::from_rows(cols, rows).expect("rows of equal length"))
}

/// Basis (as rows) of the right null space {x : M xᵀ = 0}.
pub fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let e = rref(f, m);
    let n = m.cols;
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    let mut out = Matrix::zeros(f, free.len(), n);
    for (row, &j) in free.iter().enumerate() {
        out.set(row, j, f.one());
        for (i, &p) in e.pivots.iter().enumerate() {
            out.set(row, p, f.neg(e.matrix.get(i, j)));
        }
    }
    out
}

/// Some x with x·M = y, free variables set to zero; `None` when inconsistent.
pub fn solve_left<F: Field>(f: &F, m: &Matrix<F::Elem>, y: &[F::Elem]) -> Option<Vec<F::Elem>> {
    if y.len() != m.cols {
        return None;
    }
    // Solve Mᵀ xᵀ = yᵀ on the augmented system.
    let aug = m.transpose().hstack(&Matrix::from_rows(1, &y.iter().map(|&v| vec![v]).collect::<Vec<_>>()).ok()?).ok()?;
    let e = rref(f, &aug);
    let vars = m.rows;
    if e.pivots.last() == Some(&vars) {
        return None;
    }
    let mut x = vec![f.zero(); vars];
    for (i, &p) in e.pivots.iter().enumerate() {
        x[p] = e.matrix.get(i, vars);
    }
    Some(x)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if m.rows != m.cols {
        return None;
    }
    let n = m.rows;
    let aug = m.hstack(&Matrix::identity(f, n)).ok()?;
    let e = rref(f, &aug);
    if e.rank < n || e.pivots[n - 1] >= n {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    Some(e.matrix.select_columns(&cols))
}

/// The m×n base-field matrix whose column j holds the coefficients of x_j.
pub fn expand_to_base(ctx: &FieldCtx, x: &[ExtElement]) -> BitMatrix {
    let m = ctx.m();
    let mut out = Matrix::filled(m, x.len(), 0u32);
    for (j, &e) in x.iter().enumerate() {
        for (i, c) in ctx.coeffs(e).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    out
}

/// Inverse of [`expand_to_base`]: reads each column as a coefficient vector.
pub fn collapse_from_base(ctx: &FieldCtx, b: &BitMatrix) -> Result<Vec<ExtElement>> {
    if b.rows() != ctx.m() {
        return Err(Error::DimensionMismatch(format!("{} rows, expected m = {}", b.rows(), ctx.m())));
    }
    (0..b.cols()).map(|j| ctx.from_coeffs(&b.column(j))).collect()
}

/// A subspace of F^n represented by its RREF basis without zero rows; equality is basis equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace<E = ExtElement> {
    ambient: usize,
    basis: Matrix<E>,
}

impl<E: Copy> Subspace<E> {
    pub fn from_generators<F: Field<Elem = E>>(f: &F, ambient: usize, gens: &Matrix<E>) -> Result<Self> {
        if gens.rows > 0 && gens.cols != ambient {
            return Err(Error::AmbientMismatch(gens.cols, ambient));
        }
        if gens.rows == 0 {
            return Ok(Self::zero(ambient));
        }
        let basis = rref(f, gens).basis();
        Ok(Subspace { ambient, basis })
    }

    /// Wraps a matrix already in RREF with no zero rows.
    pub fn from_rref_unchecked(ambient: usize, basis: Matrix<E>) -> Self {
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix { rows: 0, cols: ambient, data: Vec::new() } }
    }

    pub fn full<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(f, ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Self::from_generators(f, self.ambient, &stacked)
    }

    /// Orthogonal complement under Σ xᵢyᵢ.
    pub fn complement<F: Field<Elem = E>>(&self, f: &F) -> Self {
        if self.dim() == 0 {
            return Self::full(f, self.ambient);
        }
        let k = kernel(f, &self.basis);
        Self::from_generators(f, self.ambient, &k).expect("kernel has ambient columns")
    }

    /// Computed as (U^⊥ + V^⊥)^⊥.
    pub fn intersection<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.complement(f).sum(f, &other.complement(f))?.complement(f))
    }

    pub fn contains_vector<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        if self.dim() == 0 {
            return v.iter().all(|&x| f.is_zero(x));
        }
        solve_left(f, &self.basis, v).is_some()
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.ambient == other.ambient
            && (0..other.dim()).all(|i| self.contains_vector(f, other.basis.row(i)))
    }
}

impl Subspace<u32> {
    /// Lift of a base-field subspace to the extension; stays in RREF.
    pub fn embed(&self, ctx: &FieldCtx) -> Subspace<ExtElement> {
        Subspace { ambient: self.ambient, basis: self.basis.embed(ctx) }
    }
}

/// Rank over F_q of a base matrix; bit-packed elimination when q = 2.
pub fn base_rank(q: PrimeField, m: &BitMatrix) -> usize {
    if q.q() != 2 || m.cols() > 64 {
        return rank(&q, m);
    }
    let mut basis = [0u64; 64];
    let mut r = 0;
    for i in 0..m.rows() {
        let mut v = m.row(i).iter().enumerate().fold(0u64, |acc, (j, &b)| acc | ((b as u64 & 1) << j));
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                r += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> FieldCtx {
        FieldCtx::binary(4).unwrap()
    }

    #[test]
    fn rref_detects_scaled_row() {
        let f = f16();
        let a = f.alpha();
        let m = Matrix::from_rows(2, &[vec![f.one(), a], vec![a, f.mul(a, a)]]).unwrap();
        assert_eq!(rank(&f, &m), 1);
    }

    #[test]
    fn kernel_annihilates() {
        let f = f16();
        let a = f.alpha();
        let m = Matrix::from_rows(3, &[vec![f.one(), a, ExtElement(7)]]).unwrap();
        let k = kernel(&f, &m);
        assert_eq!(k.rows(), 2);
        let prod = mul(&f, &m, &k.transpose()).unwrap();
        assert!(prod.data().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn solve_left_inconsistent() {
        let f = PrimeField::new(2).unwrap();
        let z = Matrix::zeros(&f, 2, 2);
        assert_eq!(solve_left(&f, &z, &[1, 0]), None);
        assert_eq!(solve_left(&f, &Matrix::identity(&f, 2), &[1, 0]), Some(vec![1, 0]));
    }

    #[test]
    fn expansion_of_powers() {
        let f = f16();
        let a = f.alpha();
        let x = [f.one(), a, f.mul(a, a)];
        assert_eq!(base_rank(f.base(), &expand_to_base(&f, &x)), 3);
        assert_eq!(f.rank_weight(&x), 3);
        assert_eq!(collapse_from_base(&f, &expand_to_base(&f, &x)).unwrap(), x.to_vec());
    }

    #[test]
    fn disjoint_axes() {
        let f = f16();
        let e1 = Subspace::from_generators(&f, 3, &Matrix::from_rows(3, &[vec![ExtElement(1), ExtElement(0), ExtElement(0)]]).unwrap()).unwrap();
        let e2 = Subspace::from_generators(&f, 3, &Matrix::from_rows(3, &[vec![ExtElement(0), ExtElement(1), ExtElement(0)]]).unwrap()).unwrap();
        assert_eq!(e1.intersection(&f, &e2).unwrap().dim(), 0);
        assert_eq!(e1.sum(&f, &e2).unwrap().dim(), 2);
        assert_eq!(e1.intersection(&f, &e1).unwrap(), e1);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = f16();
        let m = Matrix::from_rows(2, &[vec![ExtElement(1), ExtElement(2)], vec![ExtElement(3), ExtElement(5)]]).unwrap();
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mul(&f, &m, &inv).unwrap(), Matrix::identity(&f, 2));
    }
}
