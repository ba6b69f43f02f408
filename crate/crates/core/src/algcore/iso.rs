//! Exhaustive isomorphism search over 𝔽_p.
//!
//! For nilpotent algebras an isomorphism `S → T` is fixed by the images of
//! generators of `S` (a complement of `S²`). Those images are chosen one
//! filtration level of `T` at a time. If the images are known modulo
//! `T^{s+1}`, a bracket word of degree `m` in the generators is known modulo
//! `T^{m+s}`, so every structure relation `[w_a, w_b] = Σ r_c w_c` of total
//! degree `D` can already be tested modulo `T^{D+s}`. Components in the last
//! nonzero level `T^c` never enter a relation (`D ≥ 2`), so they are fixed
//! to zero. Invertibility depends on the level-1 block only.

use super::{is_isomorphism, Algebra, LinearMap};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};
use crate::linalg::Matrix;

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub struct IsoSearch {
    /// `P` with `is_isomorphism(P, a, b)`: columns are images of `b`'s basis
    /// in `a`.
    pub iso: Option<LinearMap>,
    /// Candidate partial assignments examined.
    pub candidates: u64,
    /// How a negative answer was obtained.
    pub certificate: String,
}

pub fn brute_iso(a: &Algebra, b: &Algebra, budget: u64) -> Result<IsoSearch> {
    if a.field() != b.field() {
        return Err(Error::MixedFields(a.field(), b.field()));
    }
    let FieldSpec::Prime(p) = a.field() else {
        return Err(Error::Unsupported("brute-force search needs a prime field".into()));
    };
    let none = |why: String| IsoSearch {
        iso: None,
        candidates: 0,
        certificate: why,
    };
    if a.dim() != b.dim() {
        return Ok(none(format!("dimensions differ ({} vs {})", a.dim(), b.dim())));
    }
    let (pa, pb) = (a.power_filtration(), b.power_filtration());
    if pa.dims() != pb.dims() {
        return Ok(none(format!("power filtration dims differ ({:?} vs {:?})", pa.dims(), pb.dims())));
    }
    let (ann_a, ann_b) = (a.annihilator().dim(), b.annihilator().dim());
    if ann_a != ann_b {
        return Ok(none(format!("annihilator dims differ ({ann_a} vs {ann_b})")));
    }
    let (da, db) = (a.derivation_dim(), b.derivation_dim());
    if da != db {
        return Ok(none(format!("derivation dims differ ({da} vs {db})")));
    }
    let zp = Zp(p);
    if pa.is_nilpotent() {
        layered(zp, b, a, budget)
    } else if a.dim() <= 4 {
        exhaustive(zp, b, a, budget)
    } else {
        Err(Error::Unsupported(
            "brute-force search covers nilpotent algebras or dimension at most 4".into(),
        ))
    }
}

#[derive(Clone, Copy)]
struct Zp(u64);

impl Zp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
    fn inv(self, a: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a, self.0 - 2, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn residue(x: &Scalar) -> u64 {
    match x {
        Scalar::Prime { value, .. } => *value,
        _ => unreachable!("prime field checked"),
    }
}

/// Sparse structure constants `(i, j, k, c)` with `i < j`.
struct Table {
    n: usize,
    entries: Vec<(usize, usize, usize, u64)>,
}

impl Table {
    fn new(a: &Algebra) -> Self {
        let entries = a.constants().into_iter().map(|(i, j, k, c)| (i - 1, j - 1, k - 1, residue(&c))).collect();
        Table { n: a.dim(), entries }
    }

    fn bracket(&self, zp: Zp, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.n];
        for &(i, j, k, c) in &self.entries {
            let d = zp.sub(zp.mul(x[i], y[j]), zp.mul(x[j], y[i]));
            if d != 0 {
                out[k] = zp.add(out[k], zp.mul(c, d));
            }
        }
        out
    }
}

/// Rank of a list of vectors mod p.
fn rank(zp: Zp, vs: &[Vec<u64>]) -> usize {
    let mut rows: Vec<Vec<u64>> = vs.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = zp.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = zp.mul(*x, inv);
        }
        let pr = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = zp.sub(*x, zp.mul(f, *y));
                }
            }
        }
        r += 1;
    }
    r
}

enum Word {
    Gen(usize),
    Br(usize, usize),
}

struct Relation {
    a: usize,
    b: usize,
    degree: usize,
    /// Sparse coefficients of `[w_a, w_b]` in the word basis.
    combo: Vec<(usize, u64)>,
    /// Largest generator index the relation depends on.
    support: usize,
}

struct Search<'a> {
    zp: Zp,
    d: usize,
    target: &'a Table,
    /// Filtration level of each adapted coordinate of the target.
    level: Vec<usize>,
    words: Vec<Word>,
    relations: Vec<Relation>,
    /// Coordinates enumerated at stage `s` (index `s - 1`).
    stage_coords: Vec<Vec<usize>>,
    images: Vec<Vec<u64>>,
    candidates: u64,
    budget: u64,
}

impl Search<'_> {
    fn word_images(&self) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = Vec::with_capacity(self.words.len());
        for w in &self.words {
            let v = match *w {
                Word::Gen(g) => self.images[g].clone(),
                Word::Br(a, b) => self.target.bracket(self.zp, &out[a], &out[b]),
            };
            out.push(v);
        }
        out
    }

    fn relations_hold(&self, stage: usize, upto_gen: usize, exact: bool) -> bool {
        let imgs = self.word_images();
        for rel in self.relations.iter().filter(|r| r.support == upto_gen) {
            let mut diff = self.target.bracket(self.zp, &imgs[rel.a], &imgs[rel.b]);
            for &(c, r) in &rel.combo {
                for (x, y) in diff.iter_mut().zip(&imgs[c]) {
                    *x = self.zp.sub(*x, self.zp.mul(r, *y));
                }
            }
            let bound = rel.degree + stage;
            let ok = diff
                .iter()
                .zip(&self.level)
                .all(|(x, &lev)| *x == 0 || (!exact && lev >= bound));
            if !ok {
                return false;
            }
        }
        true
    }

    /// Depth-first over (stage, generator).
    fn run(&mut self, stage: usize, gen: usize) -> Result<bool> {
        let stages = self.stage_coords.len();
        if stage > stages {
            return Ok(true);
        }
        let (next_stage, next_gen) = if gen + 1 == self.d { (stage + 1, 0) } else { (stage, gen + 1) };
        let coords = self.stage_coords[stage - 1].clone();
        let total = self.zp.0.pow(coords.len() as u32);
        let exact = stage == stages;
        for code in 0..total {
            self.candidates += 1;
            if self.candidates > self.budget {
                return Err(Error::SearchSpaceTooLarge { budget: self.budget });
            }
            let mut c = code;
            for &k in &coords {
                self.images[gen][k] = c % self.zp.0;
                c /= self.zp.0;
            }
            if stage == 1 {
                let level1: Vec<Vec<u64>> = self.images[..=gen]
                    .iter()
                    .map(|v| coords.iter().map(|&k| v[k]).collect())
                    .collect();
                if rank(self.zp, &level1) != gen + 1 {
                    continue;
                }
            }
            if !self.relations_hold(stage, gen, exact) {
                continue;
            }
            if self.run(next_stage, next_gen)? {
                return Ok(true);
            }
        }
        for &k in &coords {
            self.images[gen][k] = 0;
        }
        Ok(false)
    }
}

fn to_scalar_matrix(p: u64, rows: &[Vec<u64>]) -> Matrix {
    let f = FieldSpec::Prime(p);
    Matrix::from_rows(
        f,
        rows.iter().map(|r| r.iter().map(|&value| Scalar::Prime { value, p }).collect()).collect(),
    )
    .expect("rectangular")
}

/// Finds an isomorphism `src → dst`, returned as the matrix whose columns
/// are the images of `src`'s basis in `dst` coordinates.
fn layered(zp: Zp, src: &Algebra, dst: &Algebra, budget: u64) -> Result<IsoSearch> {
    let n = src.dim();
    let field = src.field();
    let p = zp.0;

    // Adapted basis of dst, level by level.
    let pd = dst.power_filtration();
    let top = pd.nilindex.expect("nilpotent") - 1;
    let mut adapted: Vec<Vec<Scalar>> = Vec::new();
    let mut level = Vec::new();
    for s in 1..=top {
        let c = pd.term(s + 1).complement_in(pd.term(s))?;
        for v in c.basis() {
            adapted.push(v.clone());
            level.push(s);
        }
    }
    let m = Matrix::from_rows(field, adapted).expect("n vectors").transpose();
    let dst_adapted = dst.transport(&LinearMap::new(m.clone()))?;
    let target = Table::new(&dst_adapted);

    // Generators and a word basis of src, degree by degree.
    let ps = src.power_filtration();
    let gens = ps.term(2).complement_in(ps.term(1))?;
    let d = gens.dim();
    let mut words = Vec::new();
    let mut vecs: Vec<Vec<Scalar>> = Vec::new();
    let mut degs = Vec::new();
    for (g, v) in gens.basis().iter().enumerate() {
        words.push(Word::Gen(g));
        vecs.push(v.clone());
        degs.push(1);
    }
    let mut deg = 2;
    while vecs.len() < n {
        let mut span = ps.term(deg + 1).clone();
        let count = vecs.len();
        for a in 0..count {
            for b in a + 1..count {
                if degs[a] + degs[b] != deg {
                    continue;
                }
                let v = src.br(&vecs[a], &vecs[b]);
                if span.insert(&v) && ps.term(deg).contains_vector(&v)? {
                    words.push(Word::Br(a, b));
                    vecs.push(v);
                    degs.push(deg);
                }
            }
        }
        deg += 1;
        if deg > 4 * n + 4 {
            return Err(Error::Unsupported("word basis did not close".into()));
        }
    }
    let wmat = Matrix::from_rows(field, vecs.clone()).expect("n×n").transpose();
    let winv = wmat.inverse()?;

    let mut support: Vec<usize> = Vec::new();
    for w in &words {
        let s = match *w {
            Word::Gen(g) => g,
            Word::Br(a, b) => support[a].max(support[b]),
        };
        support.push(s);
    }
    let mut relations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let coords = winv.mul_vec(&src.br(&vecs[a], &vecs[b]))?;
            let combo: Vec<(usize, u64)> = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(c, x)| (c, residue(x)))
                .collect();
            let sup = combo
                .iter()
                .map(|&(c, _)| support[c])
                .chain([support[a], support[b]])
                .max()
                .expect("nonempty");
            relations.push(Relation {
                a,
                b,
                degree: degs[a] + degs[b],
                combo,
                support: sup,
            });
        }
    }

    let stages = if top >= 2 { top - 1 } else { 1 };
    let stage_coords: Vec<Vec<usize>> = (1..=stages)
        .map(|s| (0..n).filter(|&k| level[k] == s).collect())
        .collect();

    let mut search = Search {
        zp,
        d,
        target: &target,
        level,
        words,
        relations,
        stage_coords,
        images: vec![vec![0; n]; d],
        candidates: 0,
        budget,
    };
    let found = if d == 0 { n == 0 } else { search.run(1, 0)? };
    let candidates = search.candidates;
    if !found {
        return Ok(IsoSearch {
            iso: None,
            candidates,
            certificate: format!("generator-image search exhausted after {candidates} candidates"),
        });
    }
    let imgs = search.word_images();
    let y = to_scalar_matrix(p, &imgs).transpose();
    let phi = m.mul(&y)?.mul(&winv)?;
    let map = LinearMap::new(phi);
    debug_assert!(is_isomorphism(&map, dst, src)?);
    Ok(IsoSearch {
        iso: Some(map),
        candidates,
        certificate: String::new(),
    })
}

/// Every matrix in GL(n, p); for small non-nilpotent inputs.
fn exhaustive(zp: Zp, src: &Algebra, dst: &Algebra, budget: u64) -> Result<IsoSearch> {
    let n = src.dim();
    let p = zp.0;
    let total = (p as u128).pow((n * n) as u32);
    if total > budget as u128 {
        return Err(Error::SearchSpaceTooLarge { budget });
    }
    let (ts, td) = (Table::new(src), Table::new(dst));
    let mut candidates = 0;
    for code in 0..total as u64 {
        candidates += 1;
        let mut c = code;
        let mut cols = vec![vec![0; n]; n];
        for col in cols.iter_mut() {
            for x in col.iter_mut() {
                *x = c % p;
                c /= p;
            }
        }
        if rank(zp, &cols) != n {
            continue;
        }
        // hom check: Φ[e_i,e_j] = [Φe_i, Φe_j]
        let mut ok = true;
        'pairs: for i in 0..n {
            for j in i + 1..n {
                let mut ei = vec![0; n];
                ei[i] = 1;
                let mut ej = vec![0; n];
                ej[j] = 1;
                let v = ts.bracket(zp, &ei, &ej);
                let mut lhs = vec![0; n];
                for (k, vk) in v.iter().enumerate() {
                    for r in 0..n {
                        lhs[r] = zp.add(lhs[r], zp.mul(*vk, cols[k][r]));
                    }
                }
                if lhs != td.bracket(zp, &cols[i], &cols[j]) {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            let map = LinearMap::new(to_scalar_matrix(p, &cols).transpose());
            return Ok(IsoSearch {
                iso: Some(map),
                candidates,
                certificate: String::new(),
            });
        }
    }
    Ok(IsoSearch {
        iso: None,
        candidates,
        certificate: format!("all {total} matrices in GL({n},{p}) rejected"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn finds_permuted_heisenberg() {
        let a = Algebra::from_int_terms(f3(), 3, &[(1, 2, 3, 1)]);
        let b = Algebra::from_int_terms(f3(), 3, &[(2, 3, 1, 1)]);
        let r = brute_iso(&a, &b, DEFAULT_BUDGET).unwrap();
        let p = r.iso.expect("isomorphic");
        assert!(is_isomorphism(&p, &a, &b).unwrap());
    }

    #[test]
    fn abelian_pairs() {
        let a = Algebra::zero(f3(), 2);
        let r = brute_iso(&a, &a, DEFAULT_BUDGET).unwrap();
        assert!(r.iso.is_some());
    }

    #[test]
    fn non_nilpotent_small_case() {
        // [e1,e2]=e2 against [e1,e2]=2e1 over F3
        let a = Algebra::from_int_terms(f3(), 2, &[(1, 2, 2, 1)]);
        let b = Algebra::from_int_terms(f3(), 2, &[(1, 2, 1, 2)]);
        let r = brute_iso(&a, &b, DEFAULT_BUDGET).unwrap();
        assert!(is_isomorphism(&r.iso.unwrap(), &a, &b).unwrap());
    }

    #[test]
    fn invariant_certificate() {
        let a = Algebra::zero(f3(), 3);
        let b = Algebra::from_int_terms(f3(), 3, &[(1, 2, 3, 1)]);
        let r = brute_iso(&a, &b, DEFAULT_BUDGET).unwrap();
        assert!(r.iso.is_none());
        assert!(r.certificate.contains("power filtration"));
    }

    fn b61(alpha: i64) -> Algebra {
        Algebra::from_int_terms(f3(), 6, &[(1, 2, 4, 1), (1, 3, 5, 1), (2, 3, 6, alpha), (4, 5, 6, 1)])
    }

    #[test]
    fn square_classes_of_b61_over_f3() {
        let r = brute_iso(&b61(1), &b61(2), DEFAULT_BUDGET).unwrap();
        assert!(r.iso.is_none(), "{:?}", r.iso);
        assert!(r.candidates > 0);
        let s = brute_iso(&b61(1), &b61(1), DEFAULT_BUDGET).unwrap();
        assert!(is_isomorphism(&s.iso.unwrap(), &b61(1), &b61(1)).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let a = Algebra::from_int_terms(f3(), 4, &[(1, 2, 3, 1), (1, 3, 4, 1)]);
        assert!(matches!(brute_iso(&a, &a, 3), Err(Error::SearchSpaceTooLarge { budget: 3 })));
    }
}
