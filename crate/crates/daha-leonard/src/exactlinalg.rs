//! Dense exact matrices over [`FieldElement`] and the linear-algebra
//! predicates used throughout the crate.
//!
//! A matrix `M` represents a map `A` in a basis `v_0, …, v_d` when
//! `A v_s = Σ_r M[r][s] v_r`; columns are images of basis vectors.

use std::collections::BTreeSet;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactfield::{FieldContext, FieldElement, FieldError, Rational};

/// Errors raised by matrix operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("subspace is not invariant under the matrix")]
    NotInvariant,
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Dense row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// A column vector.
pub type Vector = Vec<FieldElement>;

impl ExactMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let m = ExactMatrix { rows, cols, data };
        m.context()?;
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize, ctx: FieldContext) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![FieldElement::zero_in(ctx); rows * cols],
        }
    }

    pub fn identity(n: usize, ctx: FieldContext) -> Self {
        Self::scalar(n, &FieldElement::one_in(ctx))
    }

    /// `s·I_n`.
    pub fn scalar(n: usize, s: &FieldElement) -> Self {
        let mut m = Self::zeros(n, n, s.context());
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn diagonal(entries: &[FieldElement]) -> Self {
        let ctx = entries
            .iter()
            .fold(FieldContext::RATIONAL, |c, e| c.join(e.context()).unwrap_or(c));
        let mut m = Self::zeros(entries.len(), entries.len(), ctx);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Builds a matrix from a list of rows.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::ShapeMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector]) -> Result<Self, LinalgError> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(LinalgError::ShapeMismatch("columns of unequal length".into()));
        }
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for col in cols {
                data.push(col[i].clone());
            }
        }
        Self::new(r, c, data)
    }

    /// Builds a matrix from small integers; convenient in tests and examples.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::from_int(x)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
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

    /// Common context of all entries.
    pub fn context(&self) -> Result<FieldContext, FieldError> {
        self.data
            .iter()
            .try_fold(FieldContext::RATIONAL, |c, e| c.join(e.context()))
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn row(&self, r: usize) -> Vector {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn diagonal_entries(&self) -> Vector {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = self.context()?.join(other.context()?)?;
        let mut out = Self::zeros(self.rows, other.cols, ctx);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].checked_add(&a.checked_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&FieldElement, &FieldElement) -> Result<FieldElement, FieldError>,
    ) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mat_add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, FieldElement::checked_add)
    }

    pub fn mat_sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.zip_with(other, FieldElement::checked_sub)
    }

    pub fn mat_scale(&self, s: &FieldElement) -> Result<Self, LinalgError> {
        let data = self
            .data
            .iter()
            .map(|a| a.checked_mul(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `self + s·I`.
    pub fn add_scalar(&self, s: &FieldElement) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch("add_scalar on non-square".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = out.get(i, i).checked_add(s)?;
            out.set(i, i, v);
        }
        Ok(out)
    }

    pub fn mat_vec(&self, v: &[FieldElement]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch("matrix-vector length".into()));
        }
        let ctx = self.context()?;
        let mut out = vec![FieldElement::zero_in(ctx); self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                let a = self.get(i, j);
                if a.is_zero() || x.is_zero() {
                    continue;
                }
                *o = o.checked_add(&a.checked_mul(x)?)?;
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse with first-nonzero pivoting.
    pub fn mat_inverse(&self) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let ctx = self.context()?;
        let mut aug = Self::zeros(n, 2 * n, ctx);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, FieldElement::one_in(ctx));
        }
        let (red, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        let mut out = Self::zeros(n, n, ctx);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> Result<(Self, Vec<usize>), LinalgError> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv()?;
            for c in col..m.cols {
                let v = m.get(row, c).checked_mul(&inv)?;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c).checked_sub(&f.checked_mul(pv)?)?;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        Ok(self.rref()?.1.len())
    }

    /// Solves `self · C = rhs` for `C`; `self` must have full column rank.
    /// Returns `None` when no solution exists.
    pub fn solve(&self, rhs: &Self) -> Result<Option<Self>, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::ShapeMismatch("solve: row counts differ".into()));
        }
        let n = self.cols;
        let ctx = self.context()?.join(rhs.context()?)?;
        let mut aug = Self::zeros(self.rows, n + rhs.cols, ctx);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let (red, pivots) = aug.rref()?;
        if pivots.iter().take_while(|&&p| p < n).count() < n {
            return Err(LinalgError::DependentBasis);
        }
        if pivots.iter().any(|&p| p >= n) {
            return Ok(None);
        }
        let mut out = Self::zeros(n, rhs.cols, ctx);
        for i in 0..n {
            for j in 0..rhs.cols {
                out.set(i, j, red.get(i, n + j).clone());
            }
        }
        Ok(Some(out))
    }

    /// Powers with integer exponent; negative exponents use the inverse.
    pub fn mat_pow(&self, e: i64) -> Result<Self, LinalgError> {
        let base = if e < 0 { self.mat_inverse()? } else { self.clone() };
        let mut acc = Self::identity(self.rows, self.context()?);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mat_mul(&base)?;
        }
        Ok(acc)
    }

    /// Evaluates the polynomial `Σ c_i M^i` (coefficients low to high).
    pub fn eval_poly(&self, coeffs: &[FieldElement]) -> Result<Self, LinalgError> {
        let ctx = self.context()?;
        let mut acc = Self::zeros(self.rows, self.cols, ctx);
        for c in coeffs.iter().rev() {
            acc = acc.mat_mul(self)?.add_scalar(c)?;
        }
        Ok(acc)
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square() && self.support_within(|r, c| r == c)
    }

    pub fn is_tridiagonal(&self) -> bool {
        self.is_square() && self.support_within(|r, c| r.abs_diff(c) <= 1)
    }

    /// Tridiagonal with every sub- and superdiagonal entry nonzero.
    pub fn is_irreducible_tridiagonal(&self) -> bool {
        self.is_tridiagonal()
            && (1..self.rows)
                .all(|i| !self.get(i, i - 1).is_zero() && !self.get(i - 1, i).is_zero())
    }

    pub fn is_upper_bidiagonal(&self) -> bool {
        self.is_square() && self.support_within(|r, c| c == r || c == r + 1)
    }

    pub fn is_lower_bidiagonal(&self) -> bool {
        self.is_square() && self.support_within(|r, c| r == c || r == c + 1)
    }

    /// Nonzero entries only at `(r, r)`, `(r−1, r)` and `(r−2, r)`.
    pub fn is_upper_tridiagonal(&self) -> bool {
        self.is_square() && self.support_within(|r, c| r <= c && c <= r + 2)
    }

    /// Transpose of upper tridiagonal.
    pub fn is_lower_tridiagonal(&self) -> bool {
        self.is_square() && self.support_within(|r, c| c <= r && r <= c + 2)
    }

    fn support_within(&self, allowed: impl Fn(usize, usize) -> bool) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| allowed(r, c) || self.get(r, c).is_zero()))
    }

    /// Characteristic polynomial `det(xI − M)`, coefficients low to high (monic).
    pub fn characteristic_polynomial(&self) -> Result<Vector, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::ShapeMismatch("charpoly of non-square".into()));
        }
        // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
        let n = self.rows;
        let ctx = self.context()?;
        let mut coeffs = vec![FieldElement::zero_in(ctx); n + 1];
        coeffs[n] = FieldElement::one_in(ctx);
        let mut mk = Self::zeros(n, n, ctx);
        for k in 1..=n {
            mk = self.mat_mul(&mk)?.add_scalar(&coeffs[n - k + 1])?;
            let am = self.mat_mul(&mk)?;
            let tr = am
                .diagonal_entries()
                .iter()
                .try_fold(FieldElement::zero_in(ctx), |s, x| s.checked_add(x))?;
            coeffs[n - k] = -tr.checked_div(&FieldElement::from_int(k as i64))?;
        }
        Ok(coeffs)
    }

    /// All eigenvalues with algebraic multiplicity, when they can be found
    /// exactly: rational roots by the rational-root test, then a leftover
    /// quadratic factor solved in `Q(√D)` (possibly extending `Q`).
    /// Returns `None` when an irreducible factor of degree ≥ 3 remains.
    pub fn exact_eigenvalues(&self) -> Result<Option<Vector>, LinalgError> {
        let cp = self.characteristic_polynomial()?;
        Ok(polynomial_roots(&cp))
    }

    /// JSON value: nested arrays of field-element objects.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("matrices always serialize")
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<FieldElement>>::deserialize(d)?;
        ExactMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

macro_rules! matrix_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait<&ExactMatrix> for &ExactMatrix {
            type Output = ExactMatrix;
            fn $method(self, rhs: &ExactMatrix) -> ExactMatrix {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<ExactMatrix> for ExactMatrix {
            type Output = ExactMatrix;
            fn $method(self, rhs: ExactMatrix) -> ExactMatrix {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactMatrix> for ExactMatrix {
            type Output = ExactMatrix;
            fn $method(self, rhs: &ExactMatrix) -> ExactMatrix {
                (&self).$method(rhs)
            }
        }
        impl $trait<ExactMatrix> for &ExactMatrix {
            type Output = ExactMatrix;
            fn $method(self, rhs: ExactMatrix) -> ExactMatrix {
                self.$method(&rhs)
            }
        }
    };
}

matrix_binop!(Add, add, mat_add);
matrix_binop!(Sub, sub, mat_sub);
matrix_binop!(Mul, mul, mat_mul);

impl Mul<&FieldElement> for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, s: &FieldElement) -> ExactMatrix {
        self.mat_scale(s).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self * &FieldElement::from_int(-1)
    }
}

/// A subspace given by a list of linearly independent column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    /// Wraps the given vectors, checking they are linearly independent.
    pub fn new(ambient_dim: usize, basis: Vec<Vector>) -> Result<Self, LinalgError> {
        if basis.iter().any(|v| v.len() != ambient_dim) {
            return Err(LinalgError::ShapeMismatch("vector length".into()));
        }
        if !basis.is_empty() && ExactMatrix::from_columns(&basis)?.rank()? < basis.len() {
            return Err(LinalgError::DependentBasis);
        }
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Columns are the basis vectors.
    pub fn basis_matrix(&self) -> Result<ExactMatrix, LinalgError> {
        ExactMatrix::from_columns(&self.basis)
    }

    /// The same subspace with its basis in reduced column echelon form.
    pub fn canonical(&self) -> Result<Self, LinalgError> {
        if self.basis.is_empty() {
            return Ok(self.clone());
        }
        let t = self.basis_matrix()?.transpose();
        let (red, pivots) = t.rref()?;
        Ok(Subspace {
            ambient_dim: self.ambient_dim,
            basis: (0..pivots.len()).map(|r| red.row(r)).collect(),
        })
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool, LinalgError> {
        if self.basis.is_empty() {
            return Ok(v.iter().all(FieldElement::is_zero));
        }
        let b = self.basis_matrix()?;
        let rhs = ExactMatrix::from_columns(&[v.to_vec()])?;
        Ok(b.solve(&rhs)?.is_some())
    }
}

/// Basis of `{v : Mv = 0}` in reduced column echelon form.
pub fn kernel_basis(m: &ExactMatrix) -> Result<Subspace, LinalgError> {
    let (red, pivots) = m.rref()?;
    let ctx = m.context()?;
    let pivot_set: BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..m.cols()).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![FieldElement::zero_in(ctx); m.cols()];
        v[free] = FieldElement::one_in(ctx);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -red.get(r, free);
        }
        basis.push(v);
    }
    Subspace {
        ambient_dim: m.cols(),
        basis,
    }
    .canonical()
}

/// The eigenspace `ker(M − μI)`.
pub fn eigenspace(m: &ExactMatrix, mu: &FieldElement) -> Result<Subspace, LinalgError> {
    kernel_basis(&m.add_scalar(&-mu)?)
}

/// `P⁻¹ M P`: the map `M` written in the basis given by the columns of `P`.
pub fn change_of_basis(m: &ExactMatrix, p: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
    if !p.is_square() || p.rows() != m.rows() {
        return Err(LinalgError::ShapeMismatch("change of basis".into()));
    }
    p.mat_inverse()?.mat_mul(&m.mat_mul(p)?).map_err(Into::into)
}

/// The matrix of `M` on an invariant subspace `W`, in `W`'s basis.
pub fn restrict(m: &ExactMatrix, w: &Subspace) -> Result<ExactMatrix, LinalgError> {
    if w.dim() == 0 {
        return Ok(ExactMatrix::zeros(0, 0, m.context()?));
    }
    let b = w.basis_matrix()?;
    let image = m.mat_mul(&b)?;
    b.solve(&image)?.ok_or(LinalgError::NotInvariant)
}

/// Roots with multiplicity of a polynomial (coefficients low to high), found
/// exactly. See [`ExactMatrix::exact_eigenvalues`].
pub fn polynomial_roots(coeffs: &[FieldElement]) -> Option<Vector> {
    let mut p: Vec<FieldElement> = coeffs.to_vec();
    while p.len() > 1 && p.last().is_some_and(FieldElement::is_zero) {
        p.pop();
    }
    let mut roots = Vec::new();
    let ctx = p
        .iter()
        .try_fold(FieldContext::RATIONAL, |c, e| c.join(e.context()))
        .ok()?;
    while p.len() > 1 && p[0].is_zero() {
        roots.push(FieldElement::zero_in(ctx));
        p.remove(0);
    }
    if p.iter().all(FieldElement::is_rational) && p.len() > 3 {
        for r in rational_roots(&p)? {
            while p.len() > 1 && eval(&p, &r).is_zero() {
                p = deflate(&p, &r);
                roots.push(r.clone());
            }
        }
    }
    match p.len() {
        0 | 1 => {}
        2 => roots.push(-(&p[0] / &p[1])),
        3 => {
            let (a, b, c) = (&p[2], &p[1], &p[0]);
            let disc = b * b - &(&FieldElement::from_int(4) * &(a * c));
            let s = match disc.sqrt_element() {
                Some(s) => s,
                None => {
                    let r = disc.as_rational()?;
                    let ext = FieldContext::for_radicand(r).ok()?;
                    disc.in_context(ext).ok()?.sqrt_in_field().ok()??
                }
            };
            let two_a = a * &FieldElement::from_int(2);
            roots.push(&(&(-b) + &s) / &two_a);
            roots.push(&(&(-b) - &s) / &two_a);
        }
        _ => return None,
    }
    Some(roots)
}

fn deflate(p: &[FieldElement], r: &FieldElement) -> Vec<FieldElement> {
    // Synthetic division by (x − r); assumes r is a root.
    let n = p.len() - 1;
    let mut out = vec![FieldElement::zero(); n];
    let mut carry = FieldElement::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &(&carry * r);
        out[i] = carry.clone();
    }
    out
}

fn eval(p: &[FieldElement], x: &FieldElement) -> FieldElement {
    p.iter()
        .rev()
        .fold(FieldElement::zero(), |acc, c| &(&acc * x) + c)
}

/// The distinct rational roots of a rational polynomial.
///
/// With `f` the square-free part scaled to integer coefficients and lead `l`,
/// `l^{m−1} f(y/l)` is monic with integer coefficients, so its rational roots
/// are integers bounded by the Cauchy bound. Each is found by lifting a
/// simple root modulo a small prime until the modulus exceeds twice the
/// bound, then checked exactly.
fn rational_roots(p: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let rp: Vec<Rational> = p.iter().map(|c| c.rat_part().clone()).collect();
    let sf = square_free(&rp);
    let f = integer_coefficients(&sf);
    let m = f.len() - 1;
    if m == 0 {
        return Some(Vec::new());
    }
    let lead = f[m].clone();
    let mut monic = vec![BigInt::one(); m + 1];
    let mut scale = BigInt::one();
    for i in (0..m).rev() {
        monic[i] = &f[i] * &scale;
        scale *= &lead;
    }
    let bound = monic[..m].iter().map(|c| c.abs()).max().unwrap_or_default() + 1u32;
    let p = small_primes().find(|&p| simple_roots_mod(&monic, p).is_some())?;
    let start = simple_roots_mod(&monic, p)?;
    let deriv: Vec<BigInt> = (1..=m).map(|i| &monic[i] * BigInt::from(i)).collect();
    let mut roots = Vec::new();
    for r0 in start {
        let mut r = BigInt::from(r0);
        let mut modulus = BigInt::from(p);
        while modulus <= &bound * 2u32 {
            modulus = &modulus * &modulus;
            let inv = mod_inverse(&int_eval(&deriv, &r), &modulus)?;
            r = (&r - int_eval(&monic, &r) * inv).mod_floor(&modulus);
        }
        if &r * 2u32 > modulus {
            r -= &modulus;
        }
        if int_eval(&monic, &r).is_zero() {
            roots.push(FieldElement::from_rational(Rational::new(r, lead.clone())));
        }
    }
    Some(roots)
}

fn poly_trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Remainder of `a` divided by `b`; `b` has a nonzero leading coefficient.
fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonempty divisor");
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let factor = r.last().expect("nonempty") / lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &factor * c;
        }
        r.pop();
        r = poly_trim(r);
        if r.is_empty() {
            r.push(Rational::zero());
        }
    }
    r
}

/// Quotient of `a` by an exact divisor `b`.
fn poly_div(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonempty divisor");
    let mut q = vec![Rational::zero(); a.len() + 1 - b.len()];
    for shift in (0..q.len()).rev() {
        let factor = &r[shift + b.len() - 1] / lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &factor * c;
        }
        q[shift] = factor;
    }
    q
}

/// `p / gcd(p, p′)`: the same roots, each simple.
fn square_free(p: &[Rational]) -> Vec<Rational> {
    let deriv: Vec<Rational> = (1..p.len())
        .map(|i| &p[i] * Rational::from_integer(BigInt::from(i)))
        .collect();
    if deriv.is_empty() || deriv.iter().all(Zero::is_zero) {
        return p.to_vec();
    }
    let (mut a, mut b) = (p.to_vec(), poly_trim(deriv));
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    poly_div(p, &a)
}

/// Primitive integer multiple of a rational polynomial.
fn integer_coefficients(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn int_eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..100_000).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// The roots of `f` modulo `p`, or `None` when one of them is repeated.
fn simple_roots_mod(f: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let pb = BigInt::from(p);
    let red: Vec<u64> = f
        .iter()
        .map(|c| c.mod_floor(&pb).try_into().expect("reduced below p"))
        .collect();
    let ev = |coeffs: &[u64], x: u64| {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x % p + c) % p)
    };
    let deriv: Vec<u64> = (1..red.len()).map(|i| red[i] * (i as u64 % p) % p).collect();
    let mut roots = Vec::new();
    for x in 0..p {
        if ev(&red, x) == 0 {
            if ev(&deriv, x) == 0 {
                return None;
            }
            roots.push(x);
        }
    }
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn inverse_and_products() {
        let i3 = ExactMatrix::identity(3, FieldContext::RATIONAL);
        assert_eq!(i3.mat_inverse().unwrap(), i3);
        let a = ExactMatrix::diagonal(&[fe(2), fe(3)]);
        let b = ExactMatrix::diagonal(&[FieldElement::frac(1, 2), FieldElement::frac(1, 3)]);
        assert_eq!(&a * &b, ExactMatrix::identity(2, FieldContext::RATIONAL));
        let sing = ExactMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.mat_inverse(), Err(LinalgError::Singular));
    }

    #[test]
    fn kernels() {
        let z = ExactMatrix::zeros(2, 2, FieldContext::RATIONAL);
        assert_eq!(kernel_basis(&z).unwrap().dim(), 2);
        let i2 = ExactMatrix::identity(2, FieldContext::RATIONAL);
        assert_eq!(kernel_basis(&i2).unwrap().dim(), 0);
        let ones = ExactMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        let k = kernel_basis(&ones).unwrap();
        assert_eq!(k.basis(), &[vec![fe(1), fe(-1)]]);
    }

    #[test]
    fn eigenspaces() {
        let d = ExactMatrix::diagonal(&[fe(3), FieldElement::frac(1, 12), fe(12)]);
        let e = eigenspace(&d, &fe(3)).unwrap();
        assert_eq!(e.basis(), &[vec![fe(1), fe(0), fe(0)]]);
        let i2 = ExactMatrix::identity(2, FieldContext::RATIONAL);
        assert_eq!(eigenspace(&i2, &fe(2)).unwrap().dim(), 0);
        let five = ExactMatrix::diagonal(&[fe(5), fe(5)]);
        assert_eq!(eigenspace(&five, &fe(5)).unwrap().dim(), 2);
    }

    #[test]
    fn shapes() {
        assert!(ExactMatrix::from_ints(&[&[1, 1], &[1, 1]]).is_irreducible_tridiagonal());
        assert!(!ExactMatrix::from_ints(&[&[1, 0], &[1, 1]]).is_irreducible_tridiagonal());
        assert!(ExactMatrix::diagonal(&[fe(1), fe(2)]).is_upper_bidiagonal());
        let ut = ExactMatrix::from_ints(&[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]);
        assert!(ut.is_upper_tridiagonal());
        assert!(!ut.is_lower_tridiagonal());
        assert!(ut.transpose().is_lower_tridiagonal());
        assert!(!ut.is_tridiagonal());
    }

    #[test]
    fn basis_changes_and_restrictions() {
        let m = ExactMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let i2 = ExactMatrix::identity(2, FieldContext::RATIONAL);
        assert_eq!(change_of_basis(&m, &i2).unwrap(), m);
        let swap = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let d = ExactMatrix::diagonal(&[fe(1), fe(2)]);
        assert_eq!(
            change_of_basis(&d, &swap).unwrap(),
            ExactMatrix::diagonal(&[fe(2), fe(1)])
        );
        let d3 = ExactMatrix::diagonal(&[fe(1), fe(2), fe(3)]);
        let w = Subspace::new(3, vec![vec![fe(1), fe(0), fe(0)], vec![fe(0), fe(0), fe(1)]])
            .unwrap();
        assert_eq!(
            restrict(&d3, &w).unwrap(),
            ExactMatrix::diagonal(&[fe(1), fe(3)])
        );
        let bad = Subspace::new(2, vec![vec![fe(1), fe(1)]]).unwrap();
        assert_eq!(restrict(&d, &bad), Err(LinalgError::NotInvariant));
    }

    #[test]
    fn eigenvalues_exact() {
        let m = ExactMatrix::from_ints(&[&[2, 1, 0], &[0, 3, 1], &[0, 0, -5]]);
        let mut ev = m.exact_eigenvalues().unwrap().unwrap();
        ev.sort();
        assert_eq!(ev, vec![fe(-5), fe(2), fe(3)]);
        let rot = ExactMatrix::from_ints(&[&[0, 2], &[1, 0]]);
        let ev = rot.exact_eigenvalues().unwrap().unwrap();
        assert_eq!(ev.len(), 2);
        assert_eq!(&ev[0] * &ev[0], fe(2));
        assert_eq!(ev[0].context().disc(), 2);
    }
}
