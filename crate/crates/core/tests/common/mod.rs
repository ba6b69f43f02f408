#![allow(dead_code)]

use nilalg::algcore::{Algebra, Identity, LinearMap};
use nilalg::catalog::{l58_automorphism, m51_automorphism, parameter_samples, L58Aut, M51Aut, ENTRIES};
use nilalg::cohomology::{self, act, b2, extend_unchecked, l58_delta, z2, Flavor, SkewForm};
use nilalg::degeneration::{transported_constants, ParametrizedBasis};
use nilalg::linalg::{add_vectors, is_zero_vector, scale_vector};
use nilalg::{FieldSpec, Matrix, Scalar, Subspace};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x7072_6f70),
        failure_persistence: None,
        ..Config::default()
    }
}

const Q: FieldSpec = FieldSpec::Rational;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vector(f: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n).map(|_| f.random(r)).collect()
}

/// A random product of elementary matrices with small integer entries, so
/// transported constants stay small.
fn invertible(f: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> LinearMap {
    let mut m = Matrix::identity(f, n);
    for _ in 0..2 * n {
        let (i, j) = (r.gen_range(0..n), r.gen_range(0..n));
        if i == j {
            let c = if r.gen_bool(0.5) { f.from_i64(-1) } else { f.from_i64(2) };
            let c = if c.is_zero() { f.one() } else { c };
            for k in 0..n {
                let x = m.get(i, k) * &c;
                m.set(i, k, x);
            }
        } else {
            let c = f.from_i64(r.gen_range(-2..=2));
            for k in 0..n {
                let x = m.get(i, k) + &(&c * m.get(j, k));
                m.set(i, k, x);
            }
        }
    }
    LinearMap::new(m)
}

/// Arbitrary anticommutative algebra of dimension 2..=5.
fn any_algebra(f: FieldSpec, r: &mut ChaCha8Rng) -> Algebra {
    let n = r.gen_range(2..=5);
    let mut terms = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in 1..=n {
                if r.gen_bool(0.3) {
                    terms.push((i, j, k, f.random(r)));
                }
            }
        }
    }
    Algebra::from_terms(f, n, &terms).unwrap()
}

/// A catalog entry, parameter sampled, in a random basis.
fn catalog_algebra(f: FieldSpec, max_dim: usize, r: &mut ChaCha8Rng) -> Algebra {
    let pool: Vec<_> = ENTRIES.iter().filter(|e| e.dim <= max_dim).collect();
    let e = pool[r.gen_range(0..pool.len())];
    let p = e.param.map(|_| {
        let s = parameter_samples(f);
        s[r.gen_range(0..s.len())].clone()
    });
    let a = e.build(f, p.as_ref()).unwrap();
    a.transport(&invertible(f, a.dim(), r)).unwrap()
}

/// A catalog algebra, perturbed in one structure constant half the time.
fn mixed_algebra(f: FieldSpec, r: &mut ChaCha8Rng) -> Algebra {
    let mut a = catalog_algebra(f, 6, r);
    if a.dim() >= 2 && r.gen_bool(0.5) {
        let n = a.dim();
        let i = r.gen_range(0..n - 1);
        let j = r.gen_range(i + 1..n);
        let mut v = a.product(i, j).to_vec();
        let k = r.gen_range(0..n);
        v[k] = &v[k] + &f.random_nonzero(r);
        a.set_product(i, j, v).unwrap();
    }
    a
}

fn random_form(f: FieldSpec, n: usize, r: &mut ChaCha8Rng) -> SkewForm {
    SkewForm::from_coeffs(f, n, vector(f, n * (n - 1) / 2, r)).unwrap()
}

fn random_in(s: &Subspace, r: &mut ChaCha8Rng) -> Vec<Scalar> {
    let f = s.field();
    s.basis()
        .iter()
        .fold(vec![f.zero(); s.ambient_dim()], |acc, b| add_vectors(&acc, &scale_vector(&f.random(r), b)))
}

pub fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(Q), Just(FieldSpec::Prime(3)), Just(FieldSpec::Prime(5)), Just(FieldSpec::Prime(7))]
}

pub fn jacobian_is_alternating(seed: u64, f: FieldSpec) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let a = any_algebra(f, &mut r);
    let n = a.dim();
    let (x, y, z) = (vector(f, n, &mut r), vector(f, n, &mut r), vector(f, n, &mut r));
    let j = a.jacobian(&x, &y, &z).unwrap();
    let neg: Vec<Scalar> = j.iter().map(|c| -c).collect();
    prop_assert_eq!(a.jacobian(&y, &x, &z).unwrap(), neg.clone());
    prop_assert_eq!(a.jacobian(&x, &z, &y).unwrap(), neg);
    prop_assert!(is_zero_vector(&a.jacobian(&x, &x, &z).unwrap()));
    Ok(())
}

pub fn subspace_dimension_law(seed: u64, f: FieldSpec) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let n = r.gen_range(1..=7);
    let span = |r: &mut ChaCha8Rng| {
        let k = r.gen_range(0..=n);
        let vs = (0..k).map(|_| vector(f, n, r)).collect();
        Subspace::span(f, n, vs)
    };
    let (u, w) = (span(&mut r), span(&mut r));
    let sum = u.sum(&w).unwrap();
    let meet = u.intersect(&w).unwrap();
    prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
    prop_assert!(sum.contains_subspace(&u).unwrap() && u.contains_subspace(&meet).unwrap());
    prop_assert_eq!(u.annihilator().dim(), n - u.dim());
    Ok(())
}

pub fn linearized_agrees_with_direct(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let a = mixed_algebra(Q, &mut r);
    for id in [Identity::Malcev, Identity::BinaryLie] {
        let lin = a.check_linearized(id).is_none();
        let direct = matches!(a.check_guard(id, seed), Some(None));
        prop_assert_eq!(lin, direct, "{} on {}", id, a);
    }
    Ok(())
}

pub fn identity_hierarchy(seed: u64, f: FieldSpec) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let a = if r.gen_bool(0.5) { mixed_algebra(f, &mut r) } else { any_algebra(f, &mut r) };
    let fl = a.identity_flags(seed);
    prop_assert!(!fl.lie || fl.malcev, "Lie but not Malcev: {}", a);
    prop_assert!(!fl.malcev || fl.binary_lie, "Malcev but not binary Lie: {}", a);
    Ok(())
}

pub fn coboundaries_are_invariant_under_automorphisms(seed: u64, f: FieldSpec) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let (a, phi) = if r.gen_bool(0.5) {
        let a = nilalg::catalog::entry("L_5_8").unwrap().build(f, None).unwrap();
        (a, l58_automorphism(&L58Aut::random(f, &mut r)))
    } else {
        let a = nilalg::catalog::entry("M_5_1").unwrap().build(f, None).unwrap();
        (a, m51_automorphism(&M51Aut::random(f, &mut r)))
    };
    let b = b2(&a);
    for v in b.basis() {
        let theta = SkewForm::from_coeffs(f, 5, v.clone()).unwrap();
        let moved = act(&a, &phi, &theta).unwrap();
        prop_assert!(b.contains_vector(moved.coeffs()).unwrap());
    }
    let z = z2(&a, Flavor::BinaryLie);
    let theta = SkewForm::from_coeffs(f, 5, random_in(&z, &mut r)).unwrap();
    prop_assert!(z.contains_vector(act(&a, &phi, &theta).unwrap().coeffs()).unwrap());
    Ok(())
}

pub fn delta_covariance(seed: u64, f: FieldSpec) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let a = nilalg::catalog::entry("L_5_8").unwrap().build(f, None).unwrap();
    let g = L58Aut::random(f, &mut r);
    let theta = random_form(f, 5, &mut r);
    let moved = act(&a, &l58_automorphism(&g), &theta).unwrap();
    let m = g.minor();
    let factor = &(&g.a11 * &g.a11) * &(&m * &m);
    prop_assert_eq!(l58_delta(&moved).unwrap(), &factor * &l58_delta(&theta).unwrap());
    Ok(())
}

pub fn annihilator_of_extension(seed: u64, f: FieldSpec) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let a = catalog_algebra(f, 5, &mut r);
    let n = a.dim();
    let s = r.gen_range(1..=2);
    let z = z2(&a, Flavor::BinaryLie);
    let thetas: Vec<SkewForm> = (0..s).map(|_| SkewForm::from_coeffs(f, n, random_in(&z, &mut r)).unwrap()).collect();
    let ext = extend_unchecked(&a, &thetas).unwrap();
    let mut meet = a.annihilator();
    for t in &thetas {
        meet = meet.intersect(&t.perp()).unwrap();
    }
    let mut want: Vec<Vec<Scalar>> = meet
        .basis()
        .iter()
        .map(|v| v.iter().cloned().chain((0..s).map(|_| f.zero())).collect())
        .collect();
    want.extend((n..n + s).map(|k| nilalg::linalg::unit_vector(f, n + s, k)));
    prop_assert_eq!(ext.annihilator(), Subspace::span(f, n + s, want));
    Ok(())
}

pub fn extension_is_binary_lie_iff_cocycle(seed: u64, f: FieldSpec) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let a = catalog_algebra(f, 5, &mut r);
    let n = a.dim();
    if n < 2 {
        return Ok(());
    }
    let z = z2(&a, Flavor::BinaryLie);
    let mut c = random_in(&z, &mut r);
    if r.gen_bool(0.5) {
        c = add_vectors(&c, &vector(f, c.len(), &mut r));
    }
    let theta = SkewForm::from_coeffs(f, n, c).unwrap();
    let ext = extend_unchecked(&a, std::slice::from_ref(&theta)).unwrap();
    let bl = ext.check_linearized(Identity::BinaryLie).is_none();
    prop_assert_eq!(bl, z.contains_vector(theta.coeffs()).unwrap());
    prop_assert_eq!(cohomology::extend(&a, &[theta]).is_ok(), bl);
    Ok(())
}

pub fn parametrized_evaluation_and_composition(seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let a = catalog_algebra(Q, 6, &mut r);
    let n = a.dim();
    let powers: Vec<i64> = (0..n).map(|_| r.gen_range(-2..=3)).collect();
    let qm = invertible(Q, n, &mut r);
    let p = ParametrizedBasis::diagonal_powers(Q, &powers).premultiply(qm.matrix()).unwrap();
    let t0 = Q.random_nonzero(&mut r);
    let c = transported_constants(&a, &p).unwrap();
    let at = p.at(&t0).unwrap();
    let direct = a.transport(&at).unwrap();
    let mut pair = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                prop_assert_eq!(&c[pair][k].eval(&t0).unwrap(), &direct.product(i, j)[k]);
            }
            pair += 1;
        }
    }
    let m = invertible(Q, n, &mut r);
    let twice = a.transport(&m).unwrap().transport(&at).unwrap();
    prop_assert_eq!(twice, a.transport(&m.compose(&at).unwrap()).unwrap());
    Ok(())
}

pub fn fingerprint_is_transport_invariant(seed: u64, f: FieldSpec) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let a = catalog_algebra(f, 6, &mut r);
    let b = a.transport(&invertible(f, a.dim(), &mut r)).unwrap();
    prop_assert_eq!(a.fingerprint(seed), b.fingerprint(seed));
    Ok(())
}
