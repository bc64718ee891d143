use num_traits::{One, Zero};

use super::gaussian::Gaussian;
use super::matrix::Matrix;
use super::quaternion::Quaternion;
use crate::error::FlexError;
use crate::scalar::{ConjField, OrderedField};

/// Antilinear map `v ↦ T·conj(v)` with `τ² = η·id`.
#[derive(Clone, PartialEq, Debug)]
pub struct AntilinearMap<T> {
    pub t: Matrix<Gaussian<T>>,
    pub eta: i8,
}

impl<T: OrderedField> AntilinearMap<T> {
    pub fn conjugation(n: usize) -> Self {
        AntilinearMap { t: Matrix::identity(n), eta: 1 }
    }

    /// `(a, b) ↦ (−conj b, conj a)` on `ℂ^m ⊕ ℂ^m`.
    pub fn quaternionic(m: usize) -> Self {
        let mut t = Matrix::zeros(2 * m, 2 * m);
        for i in 0..m {
            t[(i, m + i)] = -Gaussian::<T>::one();
            t[(m + i, i)] = Gaussian::one();
        }
        AntilinearMap { t, eta: -1 }
    }

    pub fn apply(&self, v: &[Gaussian<T>]) -> Vec<Gaussian<T>> {
        let c: Vec<_> = v.iter().map(|z| z.conj()).collect();
        self.t.mul_vec(&c)
    }

    /// Matrix of `τ∘τ`, which is `T·conj(T)`.
    pub fn square(&self) -> Matrix<Gaussian<T>> {
        self.t.mul(&self.t.conj())
    }

    pub fn is_consistent(&self) -> bool {
        let n = self.t.nrows();
        self.square() == Matrix::scalar(n, Gaussian::real(T::from_i64(self.eta as i64)))
    }
}

/// Which antilinear structure to attach.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TauAction {
    /// Right multiplication by `j` on a quaternionic space.
    Quaternionic,
    /// Complex conjugation on a real form.
    RealForm,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Complexified<T> {
    pub vector: Vec<Gaussian<T>>,
    pub tau: AntilinearMap<T>,
}

/// Complex model of a quaternionic (or real) vector.
///
/// Quaternionic: `a + j·b ↦ (a, b)` with complex scalars acting on the right.
/// Real form: entries must lie in ℂ (no `j`-part); `τ` is conjugation.
pub fn quaternion_complexify<T: OrderedField>(
    v: &[Quaternion<T>],
    side: TauAction,
) -> Result<Complexified<T>, FlexError> {
    match side {
        TauAction::Quaternionic => {
            let m = v.len();
            let mut vector: Vec<Gaussian<T>> = v.iter().map(|q| q.a.clone()).collect();
            vector.extend(v.iter().map(|q| q.b.clone()));
            Ok(Complexified { vector, tau: AntilinearMap::quaternionic(m) })
        }
        TauAction::RealForm => {
            if v.iter().any(|q| !q.b.is_zero()) {
                return Err(FlexError::Contract("real-form vector has a j-component".into()));
            }
            Ok(Complexified {
                vector: v.iter().map(|q| q.a.clone()).collect(),
                tau: AntilinearMap::conjugation(v.len()),
            })
        }
    }
}
