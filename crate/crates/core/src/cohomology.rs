//! Skew forms, cocycles, coboundaries and central extensions.
//!
//! A skew form on an `n`-dimensional algebra is stored by its coefficients
//! on `Δ_ij`, `i < j`, in lexicographic order. Cocycle spaces are computed
//! as subspaces of that coordinate space.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::algcore::{is_isomorphism, Algebra, LinearMap, Symmetry, GUARD_SAMPLES};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::linalg::{add_vectors, dot, express, is_zero_vector, scale_vector, sub_vectors, Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Flavor {
    #[serde(rename = "bl")]
    BinaryLie,
    #[serde(rename = "m")]
    Malcev,
}

impl Flavor {
    pub fn name(&self) -> &'static str {
        match self {
            Flavor::BinaryLie => "bl",
            Flavor::Malcev => "m",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "bl" | "binarylie" | "binary-lie" => Ok(Flavor::BinaryLie),
            "m" | "malcev" => Ok(Flavor::Malcev),
            _ => Err(Error::parse("flavor", s, "expected bl or m")),
        }
    }
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of `Δ_ij` (0-based, `i < j`) in the coefficient vector.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)`, 0-based, in coefficient order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewForm {
    field: FieldSpec,
    dim: usize,
    coeffs: Vec<Scalar>,
}

impl SkewForm {
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        SkewForm {
            field,
            dim,
            coeffs: vec![field.zero(); pair_count(dim)],
        }
    }

    /// `Δ_ij` with 1-based indices.
    pub fn delta(field: FieldSpec, dim: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_terms(field, dim, &[(i, j, field.one())])
    }

    /// `Σ c Δ_ij` from 1-based `(i, j, c)`; `i > j` flips the sign.
    pub fn from_terms(field: FieldSpec, dim: usize, terms: &[(usize, usize, Scalar)]) -> Result<Self> {
        let mut out = Self::zero(field, dim);
        for (i, j, c) in terms {
            if c.field() != field {
                return Err(Error::MixedFields(field, c.field()));
            }
            let (i, j) = (*i, *j);
            if i == 0 || j == 0 || i > dim || j > dim || i == j {
                return Err(Error::parse("skew form", &format!("D{i}{j}"), format!("bad index pair for dim {dim}")));
            }
            let (lo, hi, c) = if i < j { (i, j, c.clone()) } else { (j, i, -c) };
            let k = pair_index(dim, lo - 1, hi - 1);
            out.coeffs[k] = &out.coeffs[k] + &c;
        }
        Ok(out)
    }

    pub fn from_coeffs(field: FieldSpec, dim: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != pair_count(dim) {
            return Err(Error::DimensionMismatch {
                expected: pair_count(dim),
                got: coeffs.len(),
            });
        }
        Ok(SkewForm { field, dim, coeffs })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coeffs)
    }

    /// `θ(e_i, e_j)`, 1-based, any order.
    pub fn coeff(&self, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => self.field.zero(),
            Less => self.coeffs[pair_index(self.dim, i - 1, j - 1)].clone(),
            Greater => -&self.coeffs[pair_index(self.dim, j - 1, i - 1)],
        }
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for (k, (i, j)) in pairs(self.dim).into_iter().enumerate() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let d = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            acc = &acc + &(c * &d);
        }
        acc
    }

    /// Gram matrix `G_ij = θ(e_i, e_j)`.
    pub fn gram(&self) -> Matrix {
        let n = self.dim;
        let mut g = Matrix::zeros(self.field, n, n);
        for (k, (i, j)) in pairs(n).into_iter().enumerate() {
            g.set(i, j, self.coeffs[k].clone());
            g.set(j, i, -&self.coeffs[k]);
        }
        g
    }

    pub fn from_gram(g: &Matrix) -> Self {
        let n = g.rows();
        let coeffs = pairs(n).into_iter().map(|(i, j)| g.get(i, j).clone()).collect();
        SkewForm {
            field: g.field(),
            dim: n,
            coeffs,
        }
    }

    /// `θ^⊥ = {x : θ(x, A) = 0}`.
    pub fn perp(&self) -> Subspace {
        self.gram().nullspace()
    }

    pub fn add(&self, other: &SkewForm) -> SkewForm {
        SkewForm {
            field: self.field,
            dim: self.dim,
            coeffs: add_vectors(&self.coeffs, &other.coeffs),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SkewForm {
        SkewForm {
            field: self.field,
            dim: self.dim,
            coeffs: scale_vector(c, &self.coeffs),
        }
    }

    /// Parses `"a*D23 + D45 - 3*D14"`. Compound coefficients need
    /// parentheses, e.g. `"(1+i)*D23"`. With ten or more basis vectors the
    /// indices are written `D1_10`.
    pub fn parse(field: FieldSpec, dim: usize, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::parse("skew form", text, why.to_string());
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        for c in text.chars() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (c == '+' || c == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('*') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = c == '-';
                continue;
            }
            if depth == 0 && (c == '+' || c == '-') && cur.trim().is_empty() {
                if c == '-' {
                    neg = !neg;
                }
                continue;
            }
            cur.push(c);
        }
        if depth != 0 {
            return Err(bad("unbalanced parentheses"));
        }
        if !cur.trim().is_empty() {
            terms.push((neg, cur));
        }
        if terms.is_empty() {
            return Err(bad("empty form"));
        }
        let mut out = Vec::new();
        for (neg, term) in terms {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            let (coef, name) = match term.rfind('*') {
                Some(k) => (term[..k].trim(), term[k + 1..].trim()),
                None => ("1", term),
            };
            let idx = name.strip_prefix('D').ok_or_else(|| bad("expected a D<ij> term"))?;
            let (i, j) = match idx.split_once('_') {
                Some((a, b)) => (a.parse().ok(), b.parse().ok()),
                None if idx.len() == 2 && idx.chars().all(|c| c.is_ascii_digit()) => {
                    (idx[..1].parse().ok(), idx[1..].parse().ok())
                }
                None => (None, None),
            };
            let (Some(i), Some(j)) = (i, j) else {
                return Err(bad("bad index in D<ij>"));
            };
            let coef = coef.trim_start_matches('(').trim_end_matches(')');
            let mut c = field.parse_scalar(coef)?;
            if neg {
                c = -c;
            }
            out.push((i, j, c));
        }
        Self::from_terms(field, dim, &out)
    }
}

impl fmt::Display for SkewForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, (i, j)) in pairs(self.dim).into_iter().enumerate() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let name = if self.dim >= 10 {
                format!("D{}_{}", i + 1, j + 1)
            } else {
                format!("D{}{}", i + 1, j + 1)
            };
            let lit = c.literal();
            let (neg, body) = match lit.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, lit),
            };
            let body = if body.contains(['+', '-']) { format!("({body})") } else { body };
            let term = if body == "1" { name } else { format!("{body}*{name}") };
            match (first, neg) {
                (true, false) => write!(f, "{term}")?,
                (true, true) => write!(f, "-{term}")?,
                (false, false) => write!(f, " + {term}")?,
                (false, true) => write!(f, " - {term}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for SkewForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Coefficient row of `θ(u, v)` in Δ-coordinates.
fn form_row(n: usize, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    pairs(n)
        .into_iter()
        .map(|(i, j)| &(&u[i] * &v[j]) - &(&u[j] * &v[i]))
        .collect()
}

fn psi_row(a: &Algebra, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
    let n = a.dim();
    let r1 = form_row(n, &a.br(u, v), w);
    let r2 = form_row(n, &a.br(v, w), u);
    let r3 = form_row(n, &a.br(w, u), v);
    add_vectors(&add_vectors(&r1, &r2), &r3)
}

fn condition_row(a: &Algebra, flavor: Flavor, q: [usize; 4]) -> Vec<Scalar> {
    let e = a.basis_vectors();
    let n = a.dim();
    let br = |x: &[Scalar], y: &[Scalar]| a.br(x, y);
    match flavor {
        Flavor::BinaryLie => {
            let (x, y, z, t) = (&e[q[0]], &e[q[1]], &e[q[2]], &e[q[3]]);
            let s1 = psi_row(a, &br(x, y), z, t);
            let s2 = psi_row(a, &br(x, t), z, y);
            let s3 = psi_row(a, &br(z, y), x, t);
            let s4 = psi_row(a, &br(z, t), x, y);
            add_vectors(&add_vectors(&s1, &s2), &add_vectors(&s3, &s4))
        }
        Flavor::Malcev => {
            let (w, x, y, z) = (&e[q[0]], &e[q[1]], &e[q[2]], &e[q[3]]);
            let lhs = form_row(n, &br(w, y), &br(x, z));
            let r1 = form_row(n, &br(&br(w, x), y), z);
            let r2 = form_row(n, &br(&br(x, y), z), w);
            let r3 = form_row(n, &br(&br(y, z), w), x);
            let r4 = form_row(n, &br(&br(z, w), x), y);
            sub_vectors(&lhs, &add_vectors(&add_vectors(&r1, &r2), &add_vectors(&r3, &r4)))
        }
    }
}

/// Cocycle space of the given flavor, from the multilinear conditions on
/// all ordered basis quadruples.
pub fn z2(a: &Algebra, flavor: Flavor) -> Subspace {
    let n = a.dim();
    let m = pair_count(n);
    let sym = match flavor {
        Flavor::BinaryLie => Symmetry::BinaryLie,
        Flavor::Malcev => Symmetry::Cyclic,
    };
    let mut rows = Subspace::zero(a.field(), m);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if rows.dim() == m {
                        return rows.annihilator();
                    }
                    if !sym.canonical([i, j, k, l]) {
                        continue;
                    }
                    let r = condition_row(a, flavor, [i, j, k, l]);
                    if !is_zero_vector(&r) {
                        rows.insert(&r);
                    }
                }
            }
        }
    }
    rows.annihilator()
}

/// Checks `θ([[x,y],x],y) = θ([[x,y],y],x)` on random pairs for every
/// basis form of `space`.
pub fn guard(a: &Algebra, space: &Subspace, seed: u64) -> bool {
    let field = a.field();
    let n = a.dim();
    if space.is_zero() {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GUARD_SAMPLES {
        let x: Vec<Scalar> = (0..n).map(|_| field.random(&mut rng)).collect();
        let y: Vec<Scalar> = (0..n).map(|_| field.random(&mut rng)).collect();
        let xy = a.br(&x, &y);
        // θ ↦ θ([[x,y],x],y) − θ([[x,y],y],x) as a row on pair coordinates
        let row = sub_vectors(&form_row(n, &a.br(&xy, &x), &y), &form_row(n, &a.br(&xy, &y), &x));
        if space.basis().iter().any(|b| !dot(&row, b, field).is_zero()) {
            return false;
        }
    }
    true
}

/// Coboundaries `δf(x,y) = f([x,y])`.
pub fn b2(a: &Algebra) -> Subspace {
    let n = a.dim();
    let forms = (0..n)
        .map(|k| pairs(n).into_iter().map(|(i, j)| a.product(i, j)[k].clone()).collect())
        .collect();
    Subspace::span(a.field(), pair_count(n), forms)
}

/// The coboundary of a linear functional `f` given by its values on the
/// basis.
pub fn coboundary(a: &Algebra, f: &[Scalar]) -> SkewForm {
    let n = a.dim();
    let coeffs = pairs(n)
        .into_iter()
        .map(|(i, j)| crate::linalg::dot(a.product(i, j), f, a.field()))
        .collect();
    SkewForm {
        field: a.field(),
        dim: n,
        coeffs,
    }
}

#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub algebra: Algebra,
    pub flavor: Flavor,
    pub z2: Subspace,
    pub b2: Subspace,
    /// Complement of `b2` in `z2` chosen by the pivot rule.
    pub h2: Subspace,
    pub guard_passed: bool,
}

/// `Z²/B²`. When `A` lacks the flavor's identity, coboundaries need not be
/// cocycles; `b2` is then `B² ∩ Z²`.
pub fn h2(a: &Algebra, flavor: Flavor, seed: u64) -> CohomologySpace {
    let z = z2(a, flavor);
    let b = b2(a).intersect(&z).expect("same ambient space");
    let h = b.complement_in(&z).expect("contained in z2");
    let guard_passed = guard(a, &z, seed);
    CohomologySpace {
        algebra: a.clone(),
        flavor,
        z2: z,
        b2: b,
        h2: h,
        guard_passed,
    }
}

impl CohomologySpace {
    pub fn h2_dim(&self) -> usize {
        self.h2.dim()
    }

    pub fn is_cocycle(&self, theta: &SkewForm) -> bool {
        self.z2.contains_vector(theta.coeffs()).unwrap_or(false)
    }

    pub fn is_coboundary(&self, theta: &SkewForm) -> bool {
        self.b2.contains_vector(theta.coeffs()).unwrap_or(false)
    }

    fn require(&self, theta: &SkewForm) -> Result<()> {
        if theta.dim() != self.algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.algebra.dim(),
                got: theta.dim(),
            });
        }
        if !self.is_cocycle(theta) {
            return Err(Error::NotACocycle(theta.to_string()));
        }
        Ok(())
    }

    /// Coordinates of `[θ]` in the basis of `h2`.
    pub fn class_of(&self, theta: &SkewForm) -> Result<Vec<Scalar>> {
        self.require(theta)?;
        let mut basis: Vec<Vec<Scalar>> = self.h2.basis().to_vec();
        basis.extend(self.b2.basis().iter().cloned());
        let c = express(self.algebra.field(), &basis, theta.coeffs()).expect("θ ∈ h2 ⊕ b2");
        Ok(c[..self.h2.dim()].to_vec())
    }

    /// The representative of `[θ]` inside `h2`.
    pub fn representative(&self, theta: &SkewForm) -> Result<SkewForm> {
        let c = self.class_of(theta)?;
        let n = self.algebra.dim();
        let mut v = vec![self.algebra.field().zero(); pair_count(n)];
        for (x, b) in c.iter().zip(self.h2.basis()) {
            v = add_vectors(&v, &scale_vector(x, b));
        }
        SkewForm::from_coeffs(self.algebra.field(), n, v)
    }

    /// Whether the classes of `thetas` are linearly independent in `H²`.
    pub fn classes_independent(&self, thetas: &[SkewForm]) -> Result<bool> {
        let mut span = self.b2.clone();
        for t in thetas {
            self.require(t)?;
            if !span.insert(t.coeffs()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The complement basis as forms.
    pub fn h2_basis(&self) -> Vec<SkewForm> {
        let n = self.algebra.dim();
        self.h2
            .basis()
            .iter()
            .map(|b| SkewForm::from_coeffs(self.algebra.field(), n, b.clone()).expect("pair-count vector"))
            .collect()
    }
}

/// `[θ] ∈ H²_M` inside `H²_BL`, i.e. `θ ∈ Z²_M + B²`.
pub fn is_in_h2m(a: &Algebra, theta: &SkewForm) -> Result<bool> {
    let bl = z2(a, Flavor::BinaryLie);
    if !bl.contains_vector(theta.coeffs())? {
        return Err(Error::NotACocycle(theta.to_string()));
    }
    let m = z2(a, Flavor::Malcev).sum(&b2(a))?;
    m.contains_vector(theta.coeffs())
}

pub fn theta_perp(a: &Algebra, theta: &SkewForm) -> Result<Subspace> {
    if theta.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: theta.dim(),
        });
    }
    Ok(theta.perp())
}

/// The central extension `A_θ = A ⊕ V`, `[x,y]_θ = [x,y] + Σ θ_r(x,y) v_r`.
/// Refuses forms outside `Z²_BL`.
pub fn extend(a: &Algebra, thetas: &[SkewForm]) -> Result<Algebra> {
    let z = z2(a, Flavor::BinaryLie);
    for t in thetas {
        if t.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: t.dim(),
            });
        }
        if !z.contains_vector(t.coeffs())? {
            return Err(Error::NotACocycle(t.to_string()));
        }
    }
    extend_unchecked(a, thetas)
}

/// As [`extend`] without the cocycle check.
pub fn extend_unchecked(a: &Algebra, thetas: &[SkewForm]) -> Result<Algebra> {
    if thetas.is_empty() {
        return Err(Error::ZeroInput);
    }
    let n = a.dim();
    let s = thetas.len();
    let f = a.field();
    let mut out = Algebra::zero(f, n + s);
    for (i, j) in pairs(n) {
        let mut v = a.product(i, j).to_vec();
        for t in thetas {
            v.push(t.coeff(i + 1, j + 1));
        }
        out.set_product(i, j, v)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceTests {
    pub independent: bool,
    /// `∩ θ_i^⊥ ∩ Ann(A) = 0`.
    pub joint_perp_meets_ann_trivially: bool,
    pub in_ts: bool,
    pub in_us: bool,
    pub has_ann_component: bool,
}

pub fn subspace_tests(a: &Algebra, thetas: &[SkewForm]) -> Result<SubspaceTests> {
    let bl = h2(a, Flavor::BinaryLie, crate::DEFAULT_SEED);
    let independent = bl.classes_independent(thetas)?;
    let mut meet = a.annihilator();
    for t in thetas {
        meet = meet.intersect(&t.perp())?;
    }
    let trivial = meet.is_zero();
    let in_ts = independent && trivial;
    let mut all_m = true;
    for t in thetas {
        all_m &= is_in_h2m(a, t)?;
    }
    let ext = extend_unchecked(a, thetas)?;
    Ok(SubspaceTests {
        independent,
        joint_perp_meets_ann_trivially: trivial,
        in_ts,
        in_us: in_ts && !all_m,
        has_ann_component: ext.has_annihilator_component(),
    })
}

/// `(φθ)(x,y) = θ(φx, φy)`; `φ` must be an automorphism of `a`.
pub fn act(a: &Algebra, phi: &LinearMap, theta: &SkewForm) -> Result<SkewForm> {
    if !is_isomorphism(phi, a, a)? {
        return Err(Error::NotAutomorphism);
    }
    act_unchecked(phi, theta)
}

/// Pull-back without the automorphism check: Gram matrix `φᵀ G φ`.
pub fn act_unchecked(phi: &LinearMap, theta: &SkewForm) -> Result<SkewForm> {
    let m = phi.matrix();
    let g = m.transpose().mul(&theta.gram())?.mul(m)?;
    Ok(SkewForm::from_gram(&g))
}

/// `δ = C₂₃C₄₅ − C₂₄C₃₅ + C₂₅C₃₄` for a form on a 5-dimensional algebra.
pub fn l58_delta(theta: &SkewForm) -> Result<Scalar> {
    if theta.dim() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: theta.dim(),
        });
    }
    let c = |i, j| theta.coeff(i, j);
    let t1 = &c(2, 3) * &c(4, 5);
    let t2 = &c(2, 4) * &c(3, 5);
    let t3 = &c(2, 5) * &c(3, 4);
    Ok(&(&t1 - &t2) + &t3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum U1 {
    /// `H²_M = H²_BL`, so every class lies in `H²_M`.
    Empty,
    Nonempty { witness: SkewForm },
    /// No witness among the sampled cocycles.
    Undecided { tries: usize },
}

impl U1 {
    pub fn is_nonempty(&self) -> bool {
        matches!(self, U1::Nonempty { .. })
    }
}

pub const U1_TRIES: usize = 200;

/// Decides whether some single cocycle spans a subspace in `U₁`: its class
/// is outside `H²_M` and `θ^⊥ ∩ Ann(A) = 0`. Witnesses are searched among
/// seeded random combinations of the `Z²_BL` basis.
pub fn u1(a: &Algebra, seed: u64) -> Result<U1> {
    let n = a.dim();
    let field = a.field();
    let bl = z2(a, Flavor::BinaryLie);
    let m = z2(a, Flavor::Malcev).sum(&b2(a))?;
    if m.contains_subspace(&bl)? {
        return Ok(U1::Empty);
    }
    let ann = a.annihilator();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..U1_TRIES {
        let mut v = vec![field.zero(); pair_count(n)];
        for b in bl.basis() {
            let c = field.from_i64(rng.gen_range(-3..=3));
            v = add_vectors(&v, &scale_vector(&c, b));
        }
        if m.contains_vector(&v)? {
            continue;
        }
        let theta = SkewForm::from_coeffs(field, n, v)?;
        if theta.perp().intersect(&ann)?.is_zero() {
            return Ok(U1::Nonempty { witness: theta });
        }
    }
    Ok(U1::Undecided { tries: U1_TRIES })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn l58() -> Algebra {
        Algebra::from_int_terms(q(), 5, &[(1, 2, 4, 1), (1, 3, 5, 1)])
    }

    #[test]
    fn pair_indexing() {
        let n = 5;
        for (k, (i, j)) in pairs(n).into_iter().enumerate() {
            assert_eq!(pair_index(n, i, j), k);
        }
    }

    #[test]
    fn parse_and_display() {
        let t = SkewForm::parse(q(), 5, "2*D23 + D45").unwrap();
        assert_eq!(t.coeff(2, 3), q().from_i64(2));
        assert_eq!(t.coeff(5, 4), q().from_i64(-1));
        assert_eq!(t.to_string(), "2*D23 + D45");
        let u = SkewForm::parse(q(), 5, "-1/2*D14 - D25").unwrap();
        assert_eq!(u.to_string(), "-1/2*D14 - D25");
        assert_eq!(SkewForm::parse(q(), 5, &u.to_string()).unwrap(), u);
        let g = SkewForm::parse(FieldSpec::GaussianRational, 3, "(1+i)*D12 - i*D23").unwrap();
        assert_eq!(SkewForm::parse(FieldSpec::GaussianRational, 3, &g.to_string()).unwrap(), g);
        assert!(SkewForm::parse(q(), 3, "D45").is_err());
        assert!(SkewForm::parse(q(), 3, "x*D12").is_err());
    }

    #[test]
    fn abelian_three_has_full_cocycles() {
        let a = Algebra::zero(q(), 3);
        assert_eq!(z2(&a, Flavor::BinaryLie).dim(), 3);
        assert_eq!(b2(&a).dim(), 0);
    }

    #[test]
    fn l58_dimensions() {
        let a = l58();
        assert_eq!(z2(&a, Flavor::BinaryLie).dim(), 10);
        let bl = h2(&a, Flavor::BinaryLie, 1);
        let m = h2(&a, Flavor::Malcev, 1);
        assert_eq!((bl.h2_dim(), m.h2_dim()), (8, 7));
        assert!(bl.guard_passed && m.guard_passed);
        let d45 = SkewForm::delta(q(), 5, 4, 5).unwrap();
        assert!(!is_in_h2m(&a, &d45).unwrap());
    }

    #[test]
    fn heisenberg_coboundary() {
        let a = Algebra::from_int_terms(q(), 3, &[(1, 2, 3, 1)]);
        let b = b2(&a);
        assert_eq!(b.dim(), 1);
        assert!(b.contains_vector(SkewForm::delta(q(), 3, 1, 2).unwrap().coeffs()).unwrap());
        let s = h2(&a, Flavor::BinaryLie, 1);
        let f = vec![q().from_i64(1), q().from_i64(2), q().from_i64(3)];
        assert!(is_zero_vector(&s.class_of(&coboundary(&a, &f)).unwrap()));
    }

    #[test]
    fn perps() {
        let f = q();
        assert_eq!(SkewForm::zero(f, 5).perp().dim(), 5);
        let t = SkewForm::delta(f, 5, 4, 5).unwrap();
        assert_eq!(t.perp(), Subspace::coordinate(f, 5, &[0, 1, 2]));
        let u = SkewForm::parse(f, 5, "3*D23 + D45").unwrap();
        assert_eq!(u.perp(), Subspace::coordinate(f, 5, &[0]));
    }

    #[test]
    fn extensions() {
        let f = q();
        let a = Algebra::zero(f, 2);
        let h = extend(&a, &[SkewForm::delta(f, 2, 1, 2).unwrap()]).unwrap();
        assert_eq!(h, Algebra::from_int_terms(f, 3, &[(1, 2, 3, 1)]));
        let bad = SkewForm::delta(f, 5, 2, 3).unwrap();
        assert!(matches!(extend(&l58(), &[bad.add(&SkewForm::delta(f, 5, 1, 4).unwrap())]), Ok(_)));
        // Δ12 + Δ34 on L_{4,3} is not a cocycle: [e1,e2]=e3,[e1,e3]=e4
        let l43 = Algebra::from_int_terms(f, 4, &[(1, 2, 3, 1), (1, 3, 4, 1)]);
        let nc = SkewForm::parse(f, 4, "D34").unwrap();
        assert!(matches!(extend(&l43, &[nc]), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn delta_examples() {
        let f = q();
        assert_eq!(l58_delta(&SkewForm::parse(f, 5, "7*D23 + D45").unwrap()).unwrap(), f.from_i64(7));
        assert!(l58_delta(&SkewForm::parse(f, 5, "D45").unwrap()).unwrap().is_zero());
        assert_eq!(l58_delta(&SkewForm::parse(f, 5, "D24 + D35").unwrap()).unwrap(), f.from_i64(-1));
    }

    #[test]
    fn act_identity() {
        let a = l58();
        let t = SkewForm::parse(q(), 5, "D23 + 2*D45").unwrap();
        assert_eq!(act(&a, &LinearMap::identity(q(), 5), &t).unwrap(), t);
        let d: Vec<Scalar> = [1, 1, 1, 1, 2].iter().map(|&x| q().from_i64(x)).collect();
        let swap = LinearMap::new(Matrix::diagonal(q(), &d));
        assert!(act(&a, &swap, &t).is_err());
    }

    #[test]
    fn u1_of_l58() {
        assert!(u1(&l58(), 3).unwrap().is_nonempty());
        assert_eq!(u1(&Algebra::zero(q(), 3), 3).unwrap(), U1::Empty);
    }
}
