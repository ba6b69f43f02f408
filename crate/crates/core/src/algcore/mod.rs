//! Anticommutative algebras given by structure constants.

mod identities;
mod io;
mod iso;

use std::fmt;

use crate::cohomology::{self, Flavor};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::linalg::{self, Matrix, Subspace};

pub(crate) use identities::Symmetry;
pub use identities::{Counterexample, Identity, IdentityCheck, IdentityFlags, Witness, GUARD_SAMPLES};
pub use io::{AlgebraFile, BracketEntry, OutputTerm};
pub use iso::{brute_iso, IsoSearch, DEFAULT_BUDGET};

/// An anticommutative algebra with basis `e_1..e_n`.
///
/// Only `[e_i, e_j]` for `i < j` is free data; the table is kept dense with
/// `[e_j, e_i] = -[e_i, e_j]` and `[e_i, e_i] = 0` filled in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    table: Vec<Vec<Scalar>>,
}

impl Algebra {
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Algebra {
            field,
            dim,
            table: vec![vec![field.zero(); dim]; dim * dim],
        }
    }

    /// Builds from 1-based `(i, j, k, c)` meaning `[e_i, e_j] ∋ c·e_k`.
    /// Entries with `i > j` are stored through anticommutativity.
    pub fn from_terms(field: FieldSpec, dim: usize, terms: &[(usize, usize, usize, Scalar)]) -> Result<Self> {
        let mut a = Algebra::zero(field, dim);
        for (i, j, k, c) in terms {
            let (i, j, k) = (*i, *j, *k);
            if i == 0 || j == 0 || k == 0 || i > dim || j > dim || k > dim {
                return Err(Error::input(format!("[e{i},e{j}]"), format!("index out of range 1..={dim}")));
            }
            if i == j {
                return Err(Error::input(format!("[e{i},e{j}]"), "a square bracket is always zero"));
            }
            let (lo, hi, sign) = if i < j { (i, j, c.clone()) } else { (j, i, -c) };
            if sign.field() != field {
                return Err(Error::MixedFields(field, sign.field()));
            }
            let mut v = a.product(lo - 1, hi - 1).to_vec();
            v[k - 1] = &v[k - 1] + &sign;
            a.set_product(lo - 1, hi - 1, v)?;
        }
        Ok(a)
    }

    /// Same as [`Algebra::from_terms`] with integer coefficients.
    pub fn from_int_terms(field: FieldSpec, dim: usize, terms: &[(usize, usize, usize, i64)]) -> Self {
        let terms: Vec<_> = terms.iter().map(|&(i, j, k, c)| (i, j, k, field.from_i64(c))).collect();
        Self::from_terms(field, dim, &terms).expect("valid literal table")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_i, e_j]`, 0-based.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i * self.dim + j]
    }

    /// Sets `[e_i, e_j] = v` (0-based, `i != j`) and `[e_j, e_i] = -v`.
    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<Scalar>) -> Result<()> {
        if i == j {
            return Err(Error::input(format!("[e{},e{}]", i + 1, j + 1), "a square bracket is always zero"));
        }
        self.check_vec(&v)?;
        let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
        self.table[i * self.dim + j] = v;
        self.table[j * self.dim + i] = neg;
        Ok(())
    }

    /// Nonzero constants `(i, j, k, c)`, 1-based with `i < j`.
    pub fn constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i + 1, j + 1, k + 1, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| linalg::is_zero_vector(v))
    }

    fn check_vec(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        if let Some(x) = v.iter().find(|x| x.field() != self.field) {
            return Err(Error::MixedFields(self.field, x.field()));
        }
        Ok(())
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.br(x, y))
    }

    pub(crate) fn br(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![self.field.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = &self.table[i * n + j];
                let f = xi * yj;
                for (o, ck) in out.iter_mut().zip(c) {
                    if !ck.is_zero() {
                        *o = &*o + &(&f * ck);
                    }
                }
            }
        }
        out
    }

    pub fn jacobian(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        self.check_vec(z)?;
        Ok(self.jac(x, y, z))
    }

    pub(crate) fn jac(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let a = self.br(&self.br(x, y), z);
        let b = self.br(&self.br(y, z), x);
        let c = self.br(&self.br(z, x), y);
        linalg::add_vectors(&linalg::add_vectors(&a, &b), &c)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        linalg::unit_vector(self.field, self.dim, i)
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim).map(|i| self.basis_vector(i)).collect()
    }

    /// `[U, V]` for subspaces.
    pub fn bracket_spaces(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut out = Subspace::zero(self.field, self.dim);
        for x in u.basis() {
            for y in v.basis() {
                out.insert(&self.br(x, y));
            }
        }
        out
    }

    /// `A^1 ⊇ A^2 ⊇ …` with `A^k = Σ_{i+j=k} [A^i, A^j]`.
    ///
    /// Consecutive terms may coincide before the sequence reaches zero, so a
    /// repeat does not end the computation; it runs until `A^k = 0` or for
    /// `4n + 4` terms, after which the trailing constant run is trimmed.
    pub fn power_filtration(&self) -> PowerFiltration {
        let max_terms = 4 * self.dim + 4;
        let mut terms = vec![Subspace::full(self.field, self.dim)];
        while !terms.last().expect("nonempty").is_zero() && terms.len() < max_terms {
            let k = terms.len() + 1;
            let mut next = Subspace::zero(self.field, self.dim);
            for i in 1..k {
                let part = self.bracket_spaces(&terms[i - 1], &terms[k - i - 1]);
                for v in part.basis() {
                    next.insert(v);
                }
            }
            terms.push(next);
        }
        let nilindex = terms.iter().position(Subspace::is_zero).map(|p| p + 1);
        if nilindex.is_none() {
            while terms.len() > 1 && terms[terms.len() - 1] == terms[terms.len() - 2] {
                terms.pop();
            }
        }
        PowerFiltration { terms, nilindex }
    }

    /// `{x : [x, A] = 0}`.
    pub fn annihilator(&self) -> Subspace {
        let n = self.dim;
        // row (j,k): Σ_i x_i c_ij^k
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.product(i, j)[k].clone()).collect::<Vec<_>>());
            }
        }
        if n == 0 {
            return Subspace::zero(self.field, 0);
        }
        Matrix::from_rows(self.field, rows).expect("square rows").nullspace()
    }

    /// Derivations `D` with `D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]`. The
    /// returned matrices act on column vectors.
    pub fn derivations(&self) -> Vec<Matrix> {
        let n = self.dim;
        if n == 0 {
            return Vec::new();
        }
        let var = |r: usize, c: usize| r * n + c;
        let mut eqs = Subspace::zero(self.field, n * n);
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let mut row = vec![self.field.zero(); n * n];
                    for m in 0..n {
                        let c = &self.product(i, j)[m];
                        if !c.is_zero() {
                            row[var(k, m)] = &row[var(k, m)] + c;
                        }
                    }
                    for a in 0..n {
                        let c = &self.product(a, j)[k];
                        if !c.is_zero() {
                            row[var(a, i)] = &row[var(a, i)] - c;
                        }
                        let c = &self.product(i, a)[k];
                        if !c.is_zero() {
                            row[var(a, j)] = &row[var(a, j)] - c;
                        }
                    }
                    eqs.insert(&row);
                }
            }
        }
        eqs.annihilator()
            .basis()
            .iter()
            .map(|v| {
                Matrix::from_rows(self.field, v.chunks(n).map(<[Scalar]>::to_vec).collect()).expect("n×n")
            })
            .collect()
    }

    pub fn derivation_dim(&self) -> usize {
        self.derivations().len()
    }

    /// Whether `d` satisfies the Leibniz rule on every basis pair.
    pub fn is_derivation(&self, d: &Matrix) -> bool {
        let n = self.dim;
        let img: Vec<Vec<Scalar>> = (0..n).map(|i| d.column(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.mul_vec(self.product(i, j)).expect("square");
                let ei = self.basis_vector(i);
                let ej = self.basis_vector(j);
                let rhs = linalg::add_vectors(&self.br(&img[i], &ej), &self.br(&ei, &img[j]));
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Structure constants in the basis `f_i = M e_i` (the columns of `M`):
    /// `c'_ij = M⁻¹ [M e_i, M e_j]`.
    pub fn transport(&self, m: &LinearMap) -> Result<Algebra> {
        let mat = m.matrix();
        if mat.rows() != self.dim || mat.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: mat.rows().max(mat.cols()),
            });
        }
        let inv = mat.inverse()?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|i| mat.column(i)).collect();
        let mut out = Algebra::zero(self.field, self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = inv.mul_vec(&self.br(&cols[i], &cols[j]))?;
                out.set_product(i, j, v)?;
            }
        }
        Ok(out)
    }

    /// `[A², A²]`. Its dimension can only drop under degeneration.
    pub fn square_of_square(&self) -> Subspace {
        let sq = self.bracket_spaces(&Subspace::full(self.field, self.dim), &Subspace::full(self.field, self.dim));
        self.bracket_spaces(&sq, &sq)
    }

    /// `Ann(A) ⊄ A²`, which holds exactly when `A = B ⊕ 𝔽x` as ideals.
    pub fn has_annihilator_component(&self) -> bool {
        let sq = self.bracket_spaces(&Subspace::full(self.field, self.dim), &Subspace::full(self.field, self.dim));
        !sq.contains_subspace(&self.annihilator()).expect("same ambient")
    }

    pub fn check_identity(&self, which: Identity, seed: u64) -> IdentityCheck {
        identities::check(self, which, seed)
    }

    /// The linearized check over basis tuples only.
    pub fn check_linearized(&self, which: Identity) -> Option<Counterexample> {
        identities::linearized(self, which)
    }

    /// The randomized check of the unlinearized form, where one exists
    /// (Malcev and binary Lie).
    pub fn check_guard(&self, which: Identity, seed: u64) -> Option<Option<Counterexample>> {
        identities::guard(self, which, seed)
    }

    pub fn identity_flags(&self, seed: u64) -> IdentityFlags {
        IdentityFlags {
            lie: self.check_identity(Identity::Lie, seed).holds(),
            malcev: self.check_identity(Identity::Malcev, seed).holds(),
            binary_lie: self.check_identity(Identity::BinaryLie, seed).holds(),
            cd: self.check_identity(Identity::Cd, seed).holds(),
        }
    }

    pub fn fingerprint(&self, seed: u64) -> Fingerprint {
        let pf = self.power_filtration();
        let bl = cohomology::h2(self, Flavor::BinaryLie, seed);
        let m = cohomology::h2(self, Flavor::Malcev, seed);
        Fingerprint {
            dim: self.dim,
            power_dims: pf.dims(),
            ann_dim: self.annihilator().dim(),
            der_dim: self.derivation_dim(),
            h2bl_dim: bl.h2_dim(),
            h2m_dim: m.h2_dim(),
            identity_flags: self.identity_flags(seed),
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lines = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.product(i, j);
                if linalg::is_zero_vector(v) {
                    continue;
                }
                let mut terms = Vec::new();
                for (k, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    terms.push(if c.is_one() {
                        format!("e{}", k + 1)
                    } else if (-c).is_one() {
                        format!("-e{}", k + 1)
                    } else {
                        format!("({})e{}", c.literal(), k + 1)
                    });
                }
                lines.push(format!("[e{},e{}] = {}", i + 1, j + 1, terms.join(" + ")));
            }
        }
        if lines.is_empty() {
            write!(f, "abelian, dim {} over {}", self.dim, self.field)
        } else {
            write!(f, "{}", lines.join(", "))
        }
    }
}

/// The power filtration; `terms[k-1] = A^k`.
#[derive(Clone, Debug)]
pub struct PowerFiltration {
    pub terms: Vec<Subspace>,
    /// Smallest `k` with `A^k = 0`, if any.
    pub nilindex: Option<usize>,
}

impl PowerFiltration {
    pub fn is_nilpotent(&self) -> bool {
        self.nilindex.is_some()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    /// `A^k` for any `k ≥ 1`, extended past the stored terms by stability.
    pub fn term(&self, k: usize) -> &Subspace {
        let idx = (k.max(1) - 1).min(self.terms.len() - 1);
        &self.terms[idx]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub power_dims: Vec<usize>,
    pub ann_dim: usize,
    pub der_dim: usize,
    pub h2bl_dim: usize,
    pub h2m_dim: usize,
    pub identity_flags: IdentityFlags,
}

/// A linear map given by a matrix acting on column vectors: column `i` is
/// the image of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinearMap::new(Matrix::identity(field, n))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.matrix.mul_vec(v)
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        Ok(LinearMap::new(self.matrix.mul(&inner.matrix)?))
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        Ok(LinearMap::new(self.matrix.inverse()?))
    }
}

/// `transport(a, p)` has exactly the constants of `b`; equivalently
/// `e_i ↦ p e_i` is an isomorphism from `b` onto `a`.
pub fn is_isomorphism(p: &LinearMap, a: &Algebra, b: &Algebra) -> Result<bool> {
    if a.field != b.field || a.dim != b.dim {
        return Ok(false);
    }
    match a.transport(p) {
        Ok(t) => Ok(t == *b),
        Err(Error::SingularMap) => Ok(false),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn heisenberg() -> Algebra {
        Algebra::from_int_terms(q(), 3, &[(1, 2, 3, 1)])
    }

    #[test]
    fn bracket_is_anticommutative() {
        let a = heisenberg();
        let e1 = a.basis_vector(0);
        let e2 = a.basis_vector(1);
        assert_eq!(a.bracket(&e1, &e2).unwrap(), a.basis_vector(2));
        assert_eq!(a.bracket(&e2, &e1).unwrap(), linalg::scale_vector(&q().from_i64(-1), &a.basis_vector(2)));
        assert!(linalg::is_zero_vector(&a.bracket(&e1, &e1).unwrap()));
        assert!(matches!(a.bracket(&e1, &[q().one()]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn from_terms_rejects_bad_indices() {
        assert!(Algebra::from_terms(q(), 2, &[(1, 1, 2, q().one())]).is_err());
        assert!(Algebra::from_terms(q(), 2, &[(1, 3, 2, q().one())]).is_err());
        let a = Algebra::from_terms(q(), 3, &[(2, 1, 3, q().one())]).unwrap();
        assert_eq!(a.product(0, 1)[2], q().from_i64(-1));
    }

    #[test]
    fn filtration_of_small_algebras() {
        let ab = Algebra::zero(q(), 4);
        let pf = ab.power_filtration();
        assert_eq!(pf.dims(), vec![4, 0]);
        assert_eq!(pf.nilindex, Some(2));
        let h = heisenberg().power_filtration();
        assert_eq!(h.dims(), vec![3, 1, 0]);
        // a non-nilpotent algebra stabilizes: [e1,e2]=e2
        let s = Algebra::from_int_terms(q(), 2, &[(1, 2, 2, 1)]).power_filtration();
        assert_eq!(s.dims(), vec![2, 1]);
        assert!(!s.is_nilpotent());
    }

    #[test]
    fn annihilator_and_derivations() {
        assert_eq!(Algebra::zero(q(), 3).annihilator().dim(), 3);
        assert_eq!(heisenberg().annihilator(), Subspace::coordinate(q(), 3, &[2]));
        assert_eq!(Algebra::zero(q(), 3).derivation_dim(), 9);
        let h = heisenberg();
        let ders = h.derivations();
        assert_eq!(ders.len(), 6);
        assert!(ders.iter().all(|d| h.is_derivation(d)));
        assert!(!h.is_derivation(&Matrix::diagonal(q(), &[q().one(), q().zero(), q().zero()])));
    }

    #[test]
    fn transport_by_identity_and_scaling() {
        let h = heisenberg();
        assert_eq!(h.transport(&LinearMap::identity(q(), 3)).unwrap(), h);
        let two = q().from_i64(2);
        let d = LinearMap::new(Matrix::diagonal(q(), &[two.clone(), q().one(), q().one()]));
        let t = h.transport(&d).unwrap();
        assert_eq!(t.product(0, 1), linalg::scale_vector(&two, &h.basis_vector(2)).as_slice());
        assert!(is_isomorphism(&d, &h, &t).unwrap());
        let sing = LinearMap::new(Matrix::zeros(q(), 3, 3));
        assert_eq!(h.transport(&sing), Err(Error::SingularMap));
        assert!(!is_isomorphism(&sing, &h, &h).unwrap());
    }

    #[test]
    fn annihilator_components() {
        // Heisenberg ⊕ 𝔽e4
        let a = Algebra::from_int_terms(q(), 4, &[(1, 2, 3, 1)]);
        assert!(a.has_annihilator_component());
        assert!(!heisenberg().has_annihilator_component());
    }
}
