use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Algebra;
use crate::exactfield::Scalar;
use crate::linalg::{add_vectors, is_zero_vector, sub_vectors};

/// Number of random tuples used by the unlinearized guards.
pub const GUARD_SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Identity {
    Lie,
    Malcev,
    BinaryLie,
    #[serde(rename = "CD")]
    Cd,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::Lie, Identity::Malcev, Identity::BinaryLie, Identity::Cd];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Lie => "Lie",
            Identity::Malcev => "Malcev",
            Identity::BinaryLie => "BinaryLie",
            Identity::Cd => "CD",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// 1-based basis indices, in the order the identity's variables are
    /// listed.
    Basis(Vec<usize>),
    Vectors(Vec<Vec<Scalar>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub witness: Witness,
    /// Value of `lhs - rhs` at the witness.
    pub value: Vec<Scalar>,
    /// Found by the randomized unlinearized guard rather than the basis scan.
    pub from_guard: bool,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args = match &self.witness {
            Witness::Basis(ix) => ix.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join(","),
            Witness::Vectors(vs) => vs
                .iter()
                .map(|v| format!("({})", v.iter().map(Scalar::literal).collect::<Vec<_>>().join(",")))
                .collect::<Vec<_>>()
                .join(","),
        };
        let value: Vec<String> = self.value.iter().map(Scalar::literal).collect();
        write!(f, "at ({args}) value ({})", value.join(","))?;
        if self.from_guard {
            write!(f, " [random guard]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum IdentityCheck {
    Holds,
    Counterexample(Counterexample),
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityFlags {
    pub lie: bool,
    pub malcev: bool,
    pub binary_lie: bool,
    pub cd: bool,
}

impl IdentityFlags {
    pub fn get(&self, which: Identity) -> bool {
        match which {
            Identity::Lie => self.lie,
            Identity::Malcev => self.malcev,
            Identity::BinaryLie => self.binary_lie,
            Identity::Cd => self.cd,
        }
    }
}

pub(super) fn check(a: &Algebra, which: Identity, seed: u64) -> IdentityCheck {
    if let Some(c) = linearized(a, which) {
        return IdentityCheck::Counterexample(c);
    }
    if let Some(Some(c)) = guard(a, which, seed) {
        return IdentityCheck::Counterexample(c);
    }
    IdentityCheck::Holds
}

fn found(ix: &[usize], value: Vec<Scalar>) -> Option<Counterexample> {
    if is_zero_vector(&value) {
        None
    } else {
        Some(Counterexample {
            witness: Witness::Basis(ix.iter().map(|i| i + 1).collect()),
            value,
            from_guard: false,
        })
    }
}

pub(super) fn linearized(a: &Algebra, which: Identity) -> Option<Counterexample> {
    let n = a.dim();
    let e = a.basis_vectors();
    let br = |x: &[Scalar], y: &[Scalar]| a.br(x, y);
    match which {
        // J is alternating, so increasing triples suffice.
        Identity::Lie => {
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        if let Some(c) = found(&[i, j, k], a.jac(&e[i], &e[j], &e[k])) {
                            return Some(c);
                        }
                    }
                }
            }
            None
        }
        Identity::Malcev => quadruples(n, Symmetry::Cyclic, |[w, x, y, z]| {
            let (w, x, y, z) = (&e[w], &e[x], &e[y], &e[z]);
            let lhs = br(&br(w, y), &br(x, z));
            let r1 = br(&br(&br(w, x), y), z);
            let r2 = br(&br(&br(x, y), z), w);
            let r3 = br(&br(&br(y, z), w), x);
            let r4 = br(&br(&br(z, w), x), y);
            sub_vectors(&lhs, &add_vectors(&add_vectors(&r1, &r2), &add_vectors(&r3, &r4)))
        }),
        Identity::BinaryLie => quadruples(n, Symmetry::BinaryLie, |[x, y, z, t]| {
            let (x, y, z, t) = (&e[x], &e[y], &e[z], &e[t]);
            let s1 = a.jac(&br(x, y), z, t);
            let s2 = a.jac(&br(x, t), z, y);
            let s3 = a.jac(&br(z, y), x, t);
            let s4 = a.jac(&br(z, t), x, y);
            add_vectors(&add_vectors(&s1, &s2), &add_vectors(&s3, &s4))
        }),
        Identity::Cd => quadruples(n, Symmetry::None, |[x, y, s, t]| {
            let (x, y, s, t) = (&e[x], &e[y], &e[s], &e[t]);
            let xy = br(x, y);
            let lhs = sub_vectors(&br(&br(&xy, s), t), &br(&br(&xy, t), s));
            let r1 = sub_vectors(&br(&br(&br(x, s), t), y), &br(&br(&br(x, t), s), y));
            let r2 = sub_vectors(&br(x, &br(&br(y, s), t)), &br(x, &br(&br(y, t), s)));
            sub_vectors(&lhs, &add_vectors(&r1, &r2))
        }),
    }
}

/// Index symmetries under which a linearized identity is invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Symmetry {
    None,
    /// `(w,x,y,z) ↦ (x,y,z,w)`.
    Cyclic,
    /// `x ↔ z` and `y ↔ t` separately.
    BinaryLie,
}

impl Symmetry {
    /// One representative per orbit.
    pub(crate) fn canonical(self, q: [usize; 4]) -> bool {
        match self {
            Symmetry::None => true,
            Symmetry::Cyclic => (1..4).all(|r| q <= [q[r], q[(r + 1) % 4], q[(r + 2) % 4], q[(r + 3) % 4]]),
            Symmetry::BinaryLie => q[0] <= q[2] && q[1] <= q[3],
        }
    }
}

fn quadruples(n: usize, sym: Symmetry, f: impl Fn([usize; 4]) -> Vec<Scalar>) -> Option<Counterexample> {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let q = [i, j, k, l];
                    if !sym.canonical(q) {
                        continue;
                    }
                    if let Some(c) = found(&q, f(q)) {
                        return Some(c);
                    }
                }
            }
        }
    }
    None
}

/// Randomized check of `J(x,y,[x,z]) = [J(x,y,z),x]` (Malcev) or
/// `J([x,y],x,y) = 0` (binary Lie). `None` for identities without a guard.
pub(super) fn guard(a: &Algebra, which: Identity, seed: u64) -> Option<Option<Counterexample>> {
    let arity = match which {
        Identity::Malcev => 3,
        Identity::BinaryLie => 2,
        _ => return None,
    };
    let field = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GUARD_SAMPLES {
        let vs: Vec<Vec<Scalar>> = (0..arity)
            .map(|_| (0..a.dim()).map(|_| field.random(&mut rng)).collect())
            .collect();
        let value = match which {
            Identity::Malcev => {
                let (x, y, z) = (&vs[0], &vs[1], &vs[2]);
                let lhs = a.jac(x, y, &a.br(x, z));
                let rhs = a.br(&a.jac(x, y, z), x);
                sub_vectors(&lhs, &rhs)
            }
            _ => {
                let (x, y) = (&vs[0], &vs[1]);
                a.jac(&a.br(x, y), x, y)
            }
        };
        if !is_zero_vector(&value) {
            return Some(Some(Counterexample {
                witness: Witness::Vectors(vs),
                value,
                from_guard: true,
            }));
        }
    }
    Some(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;

    #[test]
    fn abelian_and_tiny_algebras_satisfy_everything() {
        for n in 0..3 {
            let a = Algebra::zero(FieldSpec::Rational, n);
            for w in Identity::ALL {
                assert!(a.check_identity(w, 1).holds(), "dim {n} {w}");
            }
        }
    }

    #[test]
    fn non_lie_three_dim_algebra_is_caught() {
        // [e1,e2]=e3, [e2,e3]=e1, [e1,e3]=e1 is not Lie
        let a = Algebra::from_int_terms(FieldSpec::Rational, 3, &[(1, 2, 3, 1), (2, 3, 1, 1), (1, 3, 1, 1)]);
        match a.check_identity(Identity::Lie, 7) {
            IdentityCheck::Counterexample(c) => assert_eq!(c.witness, Witness::Basis(vec![1, 2, 3])),
            IdentityCheck::Holds => panic!("expected a counterexample"),
        }
    }

    #[test]
    fn guard_is_deterministic_for_a_seed() {
        let a = Algebra::from_int_terms(FieldSpec::Rational, 3, &[(1, 2, 3, 1), (2, 3, 1, 1), (1, 3, 1, 1)]);
        assert_eq!(a.check_guard(Identity::Malcev, 5), a.check_guard(Identity::Malcev, 5));
        assert_eq!(a.check_guard(Identity::Lie, 5), None);
    }
}
