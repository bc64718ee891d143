use std::fmt;
use std::ops::Add;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::Matrix;
use crate::error::FlexError;
use crate::scalar::ConjField;

/// Inertia counts of a Hermitian form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    #[serde(default)]
    pub null: usize,
}

impl Signature {
    pub const fn new(pos: usize, neg: usize) -> Self {
        Signature { pos, neg, null: 0 }
    }

    pub const fn with_null(pos: usize, neg: usize, null: usize) -> Self {
        Signature { pos, neg, null }
    }

    pub const fn split(d: usize) -> Self {
        Signature::new(d, d)
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.null
    }

    pub fn value(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.null == 0
    }

    pub fn is_definite(&self) -> bool {
        self.null == 0 && (self.pos == 0) != (self.neg == 0)
    }

    pub fn is_vanishing(&self) -> bool {
        self.pos == self.neg
    }

    pub fn negate(&self) -> Self {
        Signature { pos: self.neg, neg: self.pos, null: self.null }
    }

    /// Signature of the tensor product of two nondegenerate forms.
    pub fn tensor(&self, o: &Signature) -> Self {
        Signature::new(self.pos * o.pos + self.neg * o.neg, self.pos * o.neg + self.neg * o.pos)
    }

    /// Signature of the induced form on `Λ²` (`antisym`) or `S²`.
    pub fn square(&self, antisym: bool) -> Self {
        let (p, q) = (self.pos, self.neg);
        let mixed = p * q;
        let same = if antisym {
            p * p.saturating_sub(1) / 2 + q * q.saturating_sub(1) / 2
        } else {
            p * (p + 1) / 2 + q * (q + 1) / 2
        };
        Signature::new(same, mixed)
    }

    pub fn scaled(&self, k: usize) -> Self {
        Signature::with_null(self.pos * k, self.neg * k, self.null * k)
    }

    /// `self` if `sign > 0`, else the negation.
    pub fn signed(&self, sign: i8) -> Self {
        if sign >= 0 {
            *self
        } else {
            self.negate()
        }
    }
}

impl Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature::with_null(self.pos + o.pos, self.neg + o.neg, self.null + o.null)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.pos, self.neg, self.null)
    }
}

/// Square matrix equal to its conjugate transpose.
#[derive(Clone, PartialEq, Debug)]
pub struct HermitianMatrix<T>(Matrix<T>);

impl<T: ConjField> HermitianMatrix<T> {
    pub fn new(m: Matrix<T>) -> Result<Self, FlexError> {
        if m.is_hermitian() {
            Ok(HermitianMatrix(m))
        } else {
            Err(FlexError::Contract("matrix is not Hermitian".into()))
        }
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    /// `A* M A`.
    pub fn congruent(&self, a: &Matrix<T>) -> Self {
        HermitianMatrix(a.adjoint().mul(&self.0).mul(a))
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        HermitianMatrix(Matrix::block_diag(&[self.0.clone(), o.0.clone()]))
    }

    pub fn signature(&self) -> Signature {
        congruence_signature(self.0.clone())
    }
}

/// Inertia of a Hermitian matrix by exact congruence diagonalization.
pub fn signature_of<T: ConjField>(m: &Matrix<T>) -> Result<Signature, FlexError> {
    HermitianMatrix::new(m.clone()).map(|h| h.signature())
}

fn congruence_signature<T: ConjField>(mut a: Matrix<T>) -> Signature {
    let n = a.nrows();
    let mut sig = Signature::default();
    let mut k = 0;
    while k < n {
        if let Some(i) = (k..n).find(|&i| !a[(i, i)].is_zero()) {
            a.swap_rows(i, k);
            a.swap_cols(i, k);
            let p = a[(k, k)].re();
            if p > T::Real::zero() {
                sig.pos += 1;
            } else {
                sig.neg += 1;
            }
            let pinv = T::from_real(p).inv();
            for j in k + 1..n {
                if a[(j, k)].is_zero() {
                    continue;
                }
                let f = a[(j, k)].clone() * pinv.clone();
                let fc = f.conj();
                // row_j -= f row_k ; col_j -= conj(f) col_k
                for c in k..n {
                    let v = a[(k, c)].clone();
                    a[(j, c)] = a[(j, c)].clone() - f.clone() * v;
                }
                for r in k..n {
                    let v = a[(r, k)].clone();
                    a[(r, j)] = a[(r, j)].clone() - v * fc.clone();
                }
            }
            k += 1;
            continue;
        }
        // Zero diagonal: find an off-diagonal entry and fold the hyperbolic pair.
        let hit = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[(i, j)].is_zero());
        let Some((i, j)) = hit else {
            sig.null += n - k;
            break;
        };
        // column_i += c column_j, row_i += conj(c) row_j with c = conj(a_ij)
        let c = a[(i, j)].conj();
        let cc = c.conj();
        for col in 0..n {
            let v = a[(j, col)].clone();
            a[(i, col)] = a[(i, col)].clone() + cc.clone() * v;
        }
        for row in 0..n {
            let v = a[(row, j)].clone();
            a[(row, i)] = a[(row, i)].clone() + v * c.clone();
        }
    }
    sig
}
