//! Balancedness of `𝔠`: is `0` interior to `conv(Im P) + span(N)` in `𝔠*`?

pub mod brute;
pub mod simplex;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{FlexError, Result};
use crate::exact::{dot, rank_of, Matrix};
use crate::scalar::serde_rat;
use crate::Rational;
use simplex::{feasibility, Feasibility};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancednessInstance {
    pub ambient_dim: usize,
    #[serde(with = "serde_rat::vecvec")]
    pub p_vectors: Vec<Vec<Rational>>,
    #[serde(with = "serde_rat::vecvec")]
    pub n_vectors: Vec<Vec<Rational>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Balance {
    Balanced,
    Unbalanced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `Σ c_j p_j = Σ a_i n_i` with every `c_j > 0`, and `P ∪ N` spans.
    Interior {
        #[serde(with = "serde_rat::vec")]
        p_coefficients: Vec<Rational>,
        #[serde(with = "serde_rat::vec")]
        n_coefficients: Vec<Rational>,
    },
    /// `φ ≠ 0`, `φ(N) = 0`, `φ(P) ≥ 0`.
    Separating {
        #[serde(with = "serde_rat::vec")]
        functional: Vec<Rational>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalancednessCertificate {
    pub verdict: Balance,
    pub witness: Witness,
}

impl BalancednessInstance {
    pub fn new(ambient_dim: usize, p_vectors: Vec<Vec<Rational>>, n_vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let inst = BalancednessInstance { ambient_dim, p_vectors, n_vectors };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.ambient_dim;
        if let Some(v) = self.p_vectors.iter().chain(&self.n_vectors).find(|v| v.len() != k) {
            return Err(FlexError::Contract(format!("vector of length {} in ambient dimension {k}", v.len())));
        }
        Ok(())
    }

    /// Basis of the functionals on `𝔠*` vanishing on `span(N)`.
    fn annihilator_of(&self, extra: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let k = self.ambient_dim;
        let rows: Vec<&Vec<Rational>> = self.n_vectors.iter().chain(extra).collect();
        if rows.is_empty() {
            return (0..k).map(|i| (0..k).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect();
        }
        Matrix::from_fn(rows.len(), k, |i, j| rows[i][j].clone()).nullspace()
    }
}

/// Decides balancedness by exact LP; the certificate is verified before return.
pub fn is_balanced(inst: &BalancednessInstance) -> Result<BalancednessCertificate> {
    inst.validate()?;
    let k = inst.ambient_dim;
    let phis = inst.annihilator_of(&[]);
    let r = phis.len();
    let cert = if r == 0 {
        let m = inst.p_vectors.len();
        let c = vec![Rational::one(); m];
        interior(inst, c)?
    } else {
        let q: Vec<Vec<Rational>> =
            inst.p_vectors.iter().map(|p| phis.iter().map(|f| dot(f, p)).collect()).collect();
        if rank_of(&q, r) < r {
            let f = inst.annihilator_of(&inst.p_vectors);
            BalancednessCertificate {
                verdict: Balance::Unbalanced,
                witness: Witness::Separating { functional: f[0].clone() },
            }
        } else {
            // c = 1 + u, u ≥ 0, Σ c_j q_j = 0.
            let m = q.len();
            let a = Matrix::from_fn(r, m, |i, j| q[j][i].clone());
            let b: Vec<Rational> = (0..r).map(|i| -q.iter().fold(Rational::zero(), |s, v| s + v[i].clone())).collect();
            match feasibility(&a, &b) {
                Feasibility::Feasible(u) => interior(inst, u.into_iter().map(|x| x + Rational::one()).collect())?,
                Feasibility::Infeasible(y) => separating(&phis, &y, k),
            }
        }
    };
    verify_certificate(inst, &cert)?;
    Ok(cert)
}

/// `y` in quotient coordinates, lifted to a functional on `𝔠*`.
fn separating(phis: &[Vec<Rational>], y: &[Rational], k: usize) -> BalancednessCertificate {
    let functional: Vec<Rational> =
        (0..k).map(|j| phis.iter().zip(y).fold(Rational::zero(), |s, (f, c)| s + f[j].clone() * c.clone())).collect();
    BalancednessCertificate { verdict: Balance::Unbalanced, witness: Witness::Separating { functional } }
}

fn interior(inst: &BalancednessInstance, c: Vec<Rational>) -> Result<BalancednessCertificate> {
    let k = inst.ambient_dim;
    let target: Vec<Rational> =
        (0..k).map(|i| inst.p_vectors.iter().zip(&c).fold(Rational::zero(), |s, (p, cj)| s + p[i].clone() * cj.clone())).collect();
    let a = if inst.n_vectors.is_empty() {
        vec![]
    } else {
        let n = Matrix::from_fn(k, inst.n_vectors.len(), |i, j| inst.n_vectors[j][i].clone());
        n.solve(&target).ok_or_else(|| FlexError::Internal("LP solution leaves span(N)".into()))?
    };
    Ok(BalancednessCertificate {
        verdict: Balance::Balanced,
        witness: Witness::Interior { p_coefficients: c, n_coefficients: a },
    })
}

/// Checks a certificate by direct rational arithmetic.
pub fn verify_certificate(inst: &BalancednessInstance, cert: &BalancednessCertificate) -> Result<()> {
    let k = inst.ambient_dim;
    let fail = |m: &str| Err(FlexError::Internal(format!("certificate rejected: {m}")));
    match (&cert.verdict, &cert.witness) {
        (Balance::Balanced, Witness::Interior { p_coefficients: c, n_coefficients: a }) => {
            if c.len() != inst.p_vectors.len() || a.len() != inst.n_vectors.len() {
                return fail("coefficient counts");
            }
            if c.iter().any(|x| *x <= Rational::zero()) {
                return fail("non-positive P coefficient");
            }
            for i in 0..k {
                let lhs = inst.p_vectors.iter().zip(c).fold(Rational::zero(), |s, (p, x)| s + p[i].clone() * x.clone());
                let rhs = inst.n_vectors.iter().zip(a).fold(Rational::zero(), |s, (n, x)| s + n[i].clone() * x.clone());
                if lhs != rhs {
                    return fail("combination does not vanish modulo span(N)");
                }
            }
            let all: Vec<Vec<Rational>> = inst.p_vectors.iter().chain(&inst.n_vectors).cloned().collect();
            if rank_of(&all, k) != k {
                return fail("P ∪ N does not span");
            }
            Ok(())
        }
        (Balance::Unbalanced, Witness::Separating { functional: f }) => {
            if f.len() != k || f.iter().all(Zero::is_zero) {
                return fail("zero functional");
            }
            if inst.n_vectors.iter().any(|n| !dot(f, n).is_zero()) {
                return fail("functional does not vanish on N");
            }
            if inst.p_vectors.iter().any(|p| dot(f, p) < Rational::zero()) {
                return fail("functional negative on P");
            }
            Ok(())
        }
        _ => fail("verdict and witness kinds differ"),
    }
}

#[cfg(test)]
mod tests {
    use super::brute::brute_force_balance;
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn single_positive_vector_is_unbalanced() {
        let inst = BalancednessInstance::new(1, vec![v(&[1])], vec![]).unwrap();
        let c = is_balanced(&inst).unwrap();
        assert_eq!(c.verdict, Balance::Unbalanced);
        assert_eq!(c.witness, Witness::Separating { functional: v(&[1]) });
    }

    #[test]
    fn empty_p_with_spanning_n_is_balanced() {
        let inst = BalancednessInstance::new(1, vec![], vec![v(&[1])]).unwrap();
        assert_eq!(is_balanced(&inst).unwrap().verdict, Balance::Balanced);
    }

    #[test]
    fn triangle_around_origin() {
        let inst = BalancednessInstance::new(2, vec![v(&[1, 0]), v(&[-1, 1]), v(&[0, -1])], vec![]).unwrap();
        let c = is_balanced(&inst).unwrap();
        assert_eq!(c.verdict, Balance::Balanced);
        let Witness::Interior { p_coefficients, .. } = c.witness else { panic!() };
        // Every positive solution is a multiple of (1,1,1).
        assert!(p_coefficients.iter().all(|x| *x == p_coefficients[0]));
    }

    #[test]
    fn degenerate_hull_is_unbalanced() {
        let inst = BalancednessInstance::new(2, vec![v(&[1, 0]), v(&[-1, 0])], vec![]).unwrap();
        assert_eq!(is_balanced(&inst).unwrap().verdict, Balance::Unbalanced);
        let inst = BalancednessInstance::new(2, vec![v(&[1, 0]), v(&[-1, 0])], vec![v(&[1, 1])]).unwrap();
        assert_eq!(is_balanced(&inst).unwrap().verdict, Balance::Balanced);
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(BalancednessInstance::new(2, vec![v(&[1])], vec![]).is_err());
    }

    #[test]
    fn forged_certificates_fail() {
        let inst = BalancednessInstance::new(1, vec![v(&[1])], vec![]).unwrap();
        let bad = BalancednessCertificate {
            verdict: Balance::Balanced,
            witness: Witness::Interior { p_coefficients: v(&[1]), n_coefficients: vec![] },
        };
        assert!(verify_certificate(&inst, &bad).is_err());
        let bad = BalancednessCertificate { verdict: Balance::Unbalanced, witness: Witness::Separating { functional: v(&[-1]) } };
        assert!(verify_certificate(&inst, &bad).is_err());
    }

    fn instance() -> impl Strategy<Value = BalancednessInstance> {
        (1usize..=4).prop_flat_map(|k| {
            let vecs = |n| prop::collection::vec(prop::collection::vec((-5i64..=5, 1i64..=3), k), 0..n);
            (Just(k), vecs(7), vecs(4)).prop_map(|(k, p, n)| {
                let conv = |xs: Vec<Vec<(i64, i64)>>| -> Vec<Vec<Rational>> {
                    xs.into_iter().map(|v| v.into_iter().map(|(a, b)| rat(a, b)).collect()).collect()
                };
                BalancednessInstance { ambient_dim: k, p_vectors: conv(p), n_vectors: conv(n) }
            })
        })
    }

    proptest! {
        #[test]
        fn lp_agrees_with_enumeration(inst in instance()) {
            let c = is_balanced(&inst).unwrap();
            prop_assert_eq!(c.verdict, brute_force_balance(&inst));
        }

        #[test]
        fn negating_p_and_witness(inst in instance()) {
            let c = is_balanced(&inst).unwrap();
            if let Witness::Separating { functional } = &c.witness {
                let neg = BalancednessInstance {
                    ambient_dim: inst.ambient_dim,
                    p_vectors: inst.p_vectors.iter().map(|p| p.iter().map(|x| -x).collect()).collect(),
                    n_vectors: inst.n_vectors.clone(),
                };
                let flipped = BalancednessCertificate {
                    verdict: Balance::Unbalanced,
                    witness: Witness::Separating { functional: functional.iter().map(|x| -x).collect() },
                };
                prop_assert!(verify_certificate(&neg, &flipped).is_ok());
            }
        }

        #[test]
        fn moving_p_to_n_keeps_balance(inst in instance(), pick in 0usize..7) {
            let c = is_balanced(&inst).unwrap();
            if c.verdict == Balance::Balanced && pick < inst.p_vectors.len() {
                let mut moved = inst.clone();
                let v = moved.p_vectors.remove(pick);
                moved.n_vectors.push(v);
                prop_assert_eq!(is_balanced(&moved).unwrap().verdict, Balance::Balanced);
            }
        }
    }
}
