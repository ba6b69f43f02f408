//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Everything is plain Gauss–Jordan elimination. Vectors are `Vec<Scalar>`;
//! subspaces keep their basis in reduced row echelon form so equality of
//! subspaces is equality of bases.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// Reduces `rows` in place to reduced row echelon form, drops zero rows and
/// returns the pivot columns.
pub fn rref_rows(rows: &mut Vec<Vec<Scalar>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: FieldSpec, entries: &[Scalar]) -> Self {
        let mut m = Self::zeros(field, entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::input(format!("row {}", r + 1), format!("expected {cols} entries, got {}", row.len())));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::MixedFields(field, x.field()));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        assert_eq!(x.field(), self.field, "entry from a different field");
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * other.cols + c;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v, self.field)).collect())
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let rank = pivots.len();
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for (r, row) in rows.into_iter().enumerate() {
            for (c, x) in row.into_iter().enumerate() {
                m.data[r * self.cols + c] = x;
            }
        }
        Rref {
            matrix: m,
            rank,
            pivot_cols: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// `{v : self·v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[r][free];
            }
            basis.push(v);
        }
        Subspace::span(self.field, self.cols, basis)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut rows: Vec<Vec<Scalar>> = (0..n)
            .map(|r| {
                let mut row = self.row(r).to_vec();
                row.extend((0..n).map(|c| {
                    if c == r {
                        self.field.one()
                    } else {
                        self.field.zero()
                    }
                }));
                row
            })
            .collect();
        let pivots = rref_rows(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMap);
        }
        let inv: Vec<Vec<Scalar>> = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(self.field, inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let pivot = rows[c][c].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in c + 1..n {
                if rows[r][c].is_zero() {
                    continue;
                }
                let f = &rows[r][c] * &inv;
                for k in c..n {
                    let sub = &f * &rows[c][k];
                    rows[r][k] = &rows[r][k] - &sub;
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(Scalar::literal).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Coefficients `c` with `Σ c_k basis[k] = v`, if `v` is in the span of the
/// (independent) `basis`.
pub fn express(field: FieldSpec, basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    let m = basis.len();
    let n = v.len();
    // Solve the transposed system with an augmented column.
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            let mut row: Vec<Scalar> = basis.iter().map(|b| b[r].clone()).collect();
            row.push(v[r].clone());
            row
        })
        .collect();
    let pivots = rref_rows(&mut rows, m + 1);
    if pivots.last() == Some(&m) {
        return None;
    }
    let mut c = vec![field.zero(); m];
    for (r, &pc) in pivots.iter().enumerate() {
        c[pc] = rows[r][m].clone();
    }
    Some(c)
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn unit_vector(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// A linear subspace of `field^ambient` with an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: FieldSpec, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        let mut rows = vectors;
        debug_assert!(rows.iter().all(|v| v.len() == ambient));
        let pivots = rref_rows(&mut rows, ambient);
        Subspace {
            field,
            ambient,
            basis: rows,
            pivots,
        }
    }

    /// Span of a subset of the standard basis (0-based indices).
    pub fn coordinate(field: FieldSpec, ambient: usize, indices: &[usize]) -> Self {
        Self::span(
            field,
            ambient,
            indices.iter().map(|&i| unit_vector(field, ambient, i)).collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace: the pivot
    /// coordinates are cleared.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if out[pc].is_zero() {
                continue;
            }
            let f = out[pc].clone();
            for (x, y) in out.iter_mut().zip(row).skip(pc) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        out
    }

    /// Adds `v` to the span, keeping the basis reduced. Returns whether the
    /// dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[pc].inv().expect("nonzero");
        if !inv.is_one() {
            for x in w.iter_mut().skip(pc) {
                *x = &*x * &inv;
            }
        }
        for row in self.basis.iter_mut() {
            if row[pc].is_zero() {
                continue;
            }
            let f = row[pc].clone();
            for (x, y) in row.iter_mut().zip(&w).skip(pc) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > pc).unwrap_or(self.pivots.len());
        self.basis.insert(at, w);
        self.pivots.insert(at, pc);
        true
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        Ok(is_zero_vector(&self.reduce(v)))
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis.iter().all(|v| is_zero_vector(&self.reduce(v))))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient || !is_zero_vector(&self.reduce(v)) {
            return None;
        }
        // RREF basis: the coefficient of row r is the entry at its pivot.
        Some(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.field, self.ambient, vs))
    }

    /// `{y : x·y = 0 for all x in self}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.field, self.ambient);
        }
        Matrix::from_rows(self.field, self.basis.clone())
            .expect("basis rows have equal length")
            .nullspace()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        // U ∩ W = (U° + W°)°
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// A direct complement of `self` inside `outer`.
    ///
    /// The choice is fixed by pivots: `self` is written in the RREF
    /// coordinates of `outer`, and the `outer` basis vectors at the non-pivot
    /// coordinate positions are returned.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Subspace> {
        self.check_ambient(outer)?;
        if !outer.contains_subspace(self)? {
            return Err(Error::NotASubspace);
        }
        let mut coords: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|v| outer.coordinates(v).expect("contained"))
            .collect();
        let pivots = rref_rows(&mut coords, outer.dim());
        let chosen = (0..outer.dim())
            .filter(|k| !pivots.contains(k))
            .map(|k| outer.basis[k].clone())
            .collect();
        Ok(Subspace::span(self.field, self.ambient, chosen))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let cells: Vec<String> = v.iter().map(Scalar::literal).collect();
                format!("({})", cells.join(","))
            })
            .collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix {
        let f = FieldSpec::Rational;
        Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rref_basics() {
        let id = Matrix::identity(FieldSpec::Rational, 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(FieldSpec::Rational, 2, 4);
        assert_eq!(z.rref().rank, 0);
        assert_eq!(z.rref().matrix, z);

        let r = qm(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, qm(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
    }

    #[test]
    fn nullspace_basics() {
        assert_eq!(Matrix::identity(FieldSpec::Rational, 4).nullspace().dim(), 0);
        assert_eq!(Matrix::zeros(FieldSpec::Rational, 3, 5).nullspace().dim(), 5);

        let f3 = FieldSpec::prime(3).unwrap();
        let m = Matrix::from_rows(f3, vec![vec![f3.one(), f3.one(), f3.zero()]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.dim(), 2);
        // exhaust F3^3 to confirm the kernel has exactly 9 elements
        let elems = f3.elements().unwrap();
        let mut count = 0;
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    let v = vec![a.clone(), b.clone(), c.clone()];
                    let in_kernel = is_zero_vector(&m.mul_vec(&v).unwrap());
                    assert_eq!(in_kernel, ns.contains_vector(&v).unwrap());
                    count += in_kernel as usize;
                }
            }
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn lattice_operations() {
        let f = FieldSpec::Rational;
        let e1 = Subspace::coordinate(f, 2, &[0]);
        let e2 = Subspace::coordinate(f, 2, &[1]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(f, 2));

        let diag = Subspace::span(f, 2, vec![vec![f.one(), f.one()]]);
        let comp = diag.complement_in(&Subspace::full(f, 2)).unwrap();
        assert_eq!(comp, e2);
        assert_eq!(e1.complement_in(&e2), Err(Error::NotASubspace));
        assert_eq!(
            e1.sum(&Subspace::zero(f, 3)),
            Err(Error::AmbientMismatch(2, 3))
        );
    }

    #[test]
    fn inverse_and_determinant() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(FieldSpec::Rational, 2));
        assert_eq!(m.determinant().unwrap(), FieldSpec::Rational.one());
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::SingularMap));
        assert!(qm(&[&[1, 2], &[2, 4]]).determinant().unwrap().is_zero());
    }

    #[test]
    fn complement_of_coboundary_like_subspace() {
        let f = FieldSpec::Rational;
        let outer = Subspace::coordinate(f, 4, &[0, 1, 2]);
        let inner = Subspace::span(f, 4, vec![vec![f.zero(), f.one(), f.one(), f.zero()]]);
        let c = inner.complement_in(&outer).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.sum(&inner).unwrap(), outer);
        assert!(c.intersect(&inner).unwrap().is_zero());
    }
}
