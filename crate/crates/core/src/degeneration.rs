//! Degenerations through parametrized bases.
//!
//! A parametrized basis is an `n×n` matrix over `F(t)` whose row `i` holds the
//! coordinates of `E_i(t)`. Transporting an algebra to that basis gives
//! structure constants in `F(t)`; the family degenerates to `B` when every
//! constant is a polynomial whose value at `t = 0` is `B`'s constant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algcore::{Algebra, AlgebraFile, LinearMap};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::linalg::Matrix;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        Self::new(field, vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let field = c.field();
        let mut v = vec![field.zero(); k];
        v.push(c);
        Self::new(field, v)
    }

    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(self.field, (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lead().expect("nonzero").inv()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let c = &r[k] * &inv;
            let shift = k - dd;
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[shift + j] = &r[shift + j] - &(&c * dj);
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(Scalar::is_zero) {
                r.pop();
            }
        }
        Ok((Poly::new(self.field, q), Poly::new(self.field, r)))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

fn wrap_literal(c: &Scalar) -> String {
    let lit = c.literal();
    if lit.trim_start_matches('-').contains(['+', '-', '/']) {
        format!("({lit})")
    } else {
        lit
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            let (neg, mag) = match c.literal().strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, -c),
                _ => (false, c.clone()),
            };
            let body = if var.is_empty() {
                wrap_literal(&mag)
            } else if mag.is_one() {
                var
            } else {
                format!("{}*{var}", wrap_literal(&mag))
            };
            match (first, neg) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Reduced fraction of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field();
        if num.is_zero() {
            return Ok(Self::zero(field));
        }
        let g = num.gcd(&den);
        let (n, _) = num.divrem(&g)?;
        let (d, _) = den.divrem(&g)?;
        let l = d.lead().expect("nonzero").inv()?;
        Ok(RationalFunction {
            num: n.scale(&l),
            den: d.scale(&l),
        })
    }

    pub fn zero(field: FieldSpec) -> Self {
        RationalFunction {
            num: Poly::zero(field),
            den: Poly::constant(field.one()),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let one = c.field().one();
        RationalFunction {
            num: Poly::constant(c),
            den: Poly::constant(one),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = p.field().one();
        RationalFunction {
            num: p,
            den: Poly::constant(one),
        }
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(field: FieldSpec, k: i64) -> Self {
        let m = Poly::monomial(field.one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RationalFunction {
                num: Poly::constant(field.one()),
                den: m,
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, t: &Scalar) -> Result<Scalar> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        self.num.eval(t).checked_div(&d)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).expect("nonzero");
        }
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        Self::new(n, self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.field());
        }
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero")
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::constant(self.field().one());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Parses an expression in `t`, `i`, integers, `+ - * / ^` and
    /// parentheses; juxtaposition multiplies (`2t`, `it^2`). `e` stands for
    /// the family parameter and is replaced by `epsilon`.
    pub fn parse(field: FieldSpec, text: &str, epsilon: Option<&Scalar>) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut p = Parser {
            field,
            text,
            tokens,
            pos: 0,
            epsilon,
        };
        let v = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.err("trailing input"));
        }
        Ok(v)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        let d = self.den.to_string();
        let wrap = |s: String, single: bool| if single { s } else { format!("({s})") };
        let n_single = self.num.coeffs.iter().filter(|c| !c.is_zero()).count() <= 1 && !n.contains('*');
        let d_single = !d.contains([' ', '*']);
        write!(f, "{}/{}", wrap(n, n_single), wrap(d, d_single))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    T,
    I,
    E,
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = k;
                while k + 1 < chars.len() && chars[k + 1].is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..=k].iter().collect();
                let n = s
                    .parse()
                    .map_err(|_| Error::parse("rational function", text, "integer literal too large"))?;
                out.push(Tok::Num(n));
            }
            't' => out.push(Tok::T),
            'i' => out.push(Tok::I),
            'e' => out.push(Tok::E),
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => out.push(Tok::Op(c)),
            _ => return Err(Error::parse("rational function", text, format!("unexpected character '{c}'"))),
        }
        k += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    field: FieldSpec,
    text: &'a str,
    tokens: Vec<Tok>,
    pos: usize,
    epsilon: Option<&'a Scalar>,
}

impl Parser<'_> {
    fn err(&self, why: &str) -> Error {
        Error::parse("rational function", self.text, format!("{why} at token {}", self.pos))
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| self.err("division by zero"))?;
                }
                Some(Tok::Num(_) | Tok::T | Tok::I | Tok::E | Tok::Op('(')) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Op('^')) {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(&Tok::Op('-')) {
            self.pos += 1;
            true
        } else {
            false
        };
        let Some(Tok::Num(k)) = self.peek().cloned() else {
            return Err(self.err("expected an integer exponent"));
        };
        self.pos += 1;
        let k = k as i64;
        base.pow(if neg { -k } else { k }).map_err(|_| self.err("zero to a negative power"))
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        let f = self.field;
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(RationalFunction::constant(
                f.parse_scalar(&n.to_string()).map_err(|_| self.err("bad literal"))?,
            )),
            Tok::T => Ok(RationalFunction::t_pow(f, 1)),
            Tok::I => f
                .imaginary_unit()
                .map(RationalFunction::constant)
                .ok_or_else(|| self.err(&format!("no imaginary unit in {f}"))),
            Tok::E => match self.epsilon {
                Some(e) if e.field() == f => Ok(RationalFunction::constant(e.clone())),
                Some(_) => Err(self.err("parameter has the wrong field")),
                None => Err(self.err("parameter e has no value")),
            },
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(c) => Err(self.err(&format!("unexpected '{c}'"))),
        }
    }
}

type RfMatrix = Vec<Vec<RationalFunction>>;

fn rf_inverse(field: FieldSpec, m: &RfMatrix) -> Result<RfMatrix> {
    let n = m.len();
    let mut a: RfMatrix = m.to_vec();
    let mut inv: RfMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RationalFunction::constant(field.one())
                    } else {
                        RationalFunction::zero(field)
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::SingularBasis)?;
        a.swap(c, piv);
        inv.swap(c, piv);
        let s = a[c][c].inv()?;
        for j in 0..n {
            a[c][j] = a[c][j].mul(&s);
            inv[c][j] = inv[c][j].mul(&s);
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for j in 0..n {
                let x = a[c][j].mul(&f);
                a[r][j] = a[r][j].sub(&x);
                let y = inv[c][j].mul(&f);
                inv[r][j] = inv[r][j].sub(&y);
            }
        }
    }
    Ok(inv)
}

/// Row `i` holds the coordinates of `E_i(t)` in the original basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizedBasis {
    field: FieldSpec,
    rows: RfMatrix,
}

impl ParametrizedBasis {
    pub fn new(field: FieldSpec, rows: RfMatrix) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        if rows.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::MixedFields(field, rows.iter().flatten().find(|x| x.field() != field).unwrap().field()));
        }
        rf_inverse(field, &rows)?;
        Ok(ParametrizedBasis { field, rows })
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Self::diagonal_powers(field, &vec![0; n])
    }

    /// `E_i = t^{k_i} e_i`.
    pub fn diagonal_powers(field: FieldSpec, powers: &[i64]) -> Self {
        let n = powers.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            RationalFunction::t_pow(field, powers[i])
                        } else {
                            RationalFunction::zero(field)
                        }
                    })
                    .collect()
            })
            .collect();
        ParametrizedBasis { field, rows }
    }

    /// Parses each entry with [`RationalFunction::parse`].
    pub fn parse(field: FieldSpec, rows: &[Vec<String>], epsilon: Option<&Scalar>) -> Result<Self> {
        let mut out = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            let mut r = Vec::new();
            for (j, s) in row.iter().enumerate() {
                let v = RationalFunction::parse(field, s, epsilon)
                    .map_err(|e| Error::input(format!("basis[{i}][{j}]"), e.to_string()))?;
                r.push(v);
            }
            out.push(r);
        }
        Self::new(field, out)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> &RfMatrix {
        &self.rows
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    /// The basis at `t = t0` as a map whose columns are the `E_i(t0)`.
    pub fn at(&self, t0: &Scalar) -> Result<LinearMap> {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(j, i, self.rows[i][j].eval(t0)?);
            }
        }
        Ok(LinearMap::new(m))
    }

    /// Row-wise product `Q·P` for a constant change of basis `Q`.
    pub fn premultiply(&self, q: &Matrix) -> Result<Self> {
        let n = self.dim();
        if q.rows() != n || q.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: q.rows(),
            });
        }
        let mut rows = vec![vec![RationalFunction::zero(self.field); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                for k in 0..n {
                    let c = RationalFunction::constant(q.get(i, k).clone());
                    *x = x.add(&c.mul(&self.rows[k][j]));
                }
            }
        }
        Self::new(self.field, rows)
    }
}

/// `c'_{ij}^k(t)` for `i < j` (0-based), indexed `[pair][k]` in the
/// lexicographic pair order.
pub fn transported_constants(a: &Algebra, p: &ParametrizedBasis) -> Result<Vec<Vec<RationalFunction>>> {
    let n = a.dim();
    if p.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p.dim() });
    }
    if p.field() != a.field() {
        return Err(Error::MixedFields(a.field(), p.field()));
    }
    let f = a.field();
    let inv = rf_inverse(f, &p.rows)?;
    let consts = a.constants();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // [E_i, E_j] in the e-basis
            let mut v = vec![RationalFunction::zero(f); n];
            for (x, y, k, c) in &consts {
                let (x, y, k) = (x - 1, y - 1, k - 1);
                let w = p.rows[i][x].mul(&p.rows[j][y]).sub(&p.rows[i][y].mul(&p.rows[j][x]));
                if !w.is_zero() {
                    v[k] = v[k].add(&w.mul(&RationalFunction::constant(c.clone())));
                }
            }
            // solve Pᵀ c' = v
            let c: Vec<RationalFunction> = (0..n)
                .map(|k| {
                    (0..n).fold(RationalFunction::zero(f), |acc, m| {
                        if v[m].is_zero() {
                            acc
                        } else {
                            acc.add(&inv[m][k].mul(&v[m]))
                        }
                    })
                })
                .collect();
            out.push(c);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailReason {
    NotPolynomial { entry: String },
    LimitMismatch { expected: String, got: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationFailure {
    /// 1-based `(i, j, k)`.
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub reason: FailReason,
}

impl fmt::Display for DegenerationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = (self.i, self.j, self.k);
        match &self.reason {
            FailReason::NotPolynomial { entry } => write!(f, "c'({i},{j};{k}) = {entry} is not a polynomial"),
            FailReason::LimitMismatch { expected, got } => {
                write!(f, "c'({i},{j};{k}) at t=0 is {got}, target has {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationCheck {
    pub verified: bool,
    pub failures: Vec<DegenerationFailure>,
}

pub fn check_degeneration(a: &Algebra, b: &Algebra, p: &ParametrizedBasis) -> Result<DegenerationCheck> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    if a.field() != b.field() {
        return Err(Error::MixedFields(a.field(), b.field()));
    }
    let n = a.dim();
    let c = transported_constants(a, p)?;
    let mut failures = Vec::new();
    let mut pair = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let x = &c[pair][k];
                let (i1, j1, k1) = (i + 1, j + 1, k + 1);
                if !x.is_polynomial() {
                    failures.push(DegenerationFailure {
                        i: i1,
                        j: j1,
                        k: k1,
                        reason: FailReason::NotPolynomial { entry: x.to_string() },
                    });
                    continue;
                }
                let at0 = x.numerator().coeff(0);
                let want = &b.product(i, j)[k];
                if &at0 != want {
                    failures.push(DegenerationFailure {
                        i: i1,
                        j: j1,
                        k: k1,
                        reason: FailReason::LimitMismatch {
                            expected: want.literal(),
                            got: at0.literal(),
                        },
                    });
                }
            }
            pair += 1;
        }
    }
    Ok(DegenerationCheck {
        verified: failures.is_empty(),
        failures,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerObstruction {
    Possible,
    Obstructed,
}

/// A proper degeneration `A → B` forces `dim Der(A) < dim Der(B)`.
pub fn obstruction_der(a: &Algebra, b: &Algebra) -> (DerObstruction, usize, usize) {
    let (da, db) = (a.derivation_dim(), b.derivation_dim());
    let o = if da >= db {
        DerObstruction::Obstructed
    } else {
        DerObstruction::Possible
    };
    (o, da, db)
}

/// Closed-condition invariants that cannot increase (or, for the
/// annihilator, decrease) along a degeneration `A → B`. Returns the
/// violated ones.
pub fn semicontinuity_obstructions(a: &Algebra, b: &Algebra) -> Vec<String> {
    let mut out = Vec::new();
    let (pa, pb) = (a.power_filtration().dims(), b.power_filtration().dims());
    for k in 0..pa.len().max(pb.len()) {
        let x = pa.get(k).copied().unwrap_or(0);
        let y = pb.get(k).copied().unwrap_or(0);
        if y > x {
            out.push(format!("dim B^{} = {y} exceeds dim A^{} = {x}", k + 1, k + 1));
        }
    }
    let (sa, sb) = (a.square_of_square().dim(), b.square_of_square().dim());
    if sb > sa {
        out.push(format!("dim [B²,B²] = {sb} exceeds dim [A²,A²] = {sa}"));
    }
    let (aa, ab) = (a.annihilator().dim(), b.annihilator().dim());
    if ab < aa {
        out.push(format!("dim Ann(B) = {ab} is below dim Ann(A) = {aa}"));
    }
    out
}

/// An algebra reference in a witness file: an inline algebra or a string
/// resolved by the caller (catalog name or file path).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Inline(AlgebraFile),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub source: AlgebraRef,
    pub target: AlgebraRef,
    pub field: FieldSpec,
    pub basis: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_samples: Option<Vec<String>>,
}

impl WitnessFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::input(format!("line {} column {}", e.line(), e.column()), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Parsed `epsilon_samples`, or a single `None` when absent.
    pub fn samples(&self) -> Result<Vec<Option<Scalar>>> {
        match &self.epsilon_samples {
            None => Ok(vec![None]),
            Some(v) => v
                .iter()
                .enumerate()
                .map(|(k, s)| {
                    self.field
                        .parse_scalar(s)
                        .map(Some)
                        .map_err(|e| Error::input(format!("epsilon_samples[{k}]"), e.to_string()))
                })
                .collect(),
        }
    }

    pub fn basis_at(&self, epsilon: Option<&Scalar>) -> Result<ParametrizedBasis> {
        ParametrizedBasis::parse(self.field, &self.basis, epsilon)
    }
}
