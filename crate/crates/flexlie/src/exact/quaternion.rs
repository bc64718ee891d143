use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gaussian::Gaussian;
use crate::scalar::{Field, OrderedField};

/// Quaternion `a + j·b` with `a, b` Gaussian and `j·z = conj(z)·j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quaternion<T> {
    pub a: Gaussian<T>,
    pub b: Gaussian<T>,
}

impl<T: OrderedField> Quaternion<T> {
    pub fn new(a: Gaussian<T>, b: Gaussian<T>) -> Self {
        Quaternion { a, b }
    }

    /// `w + x i + y j + z k` with `k = i j`.
    pub fn from_coords(w: T, x: T, y: T, z: T) -> Self {
        // i j = -j i, so x i + z k = x i - z j i; j-part coefficient of i is -z
        Quaternion { a: Gaussian::new(w, x), b: Gaussian::new(y, -z) }
    }

    pub fn i() -> Self {
        Quaternion { a: Gaussian::i(), b: Gaussian::zero() }
    }

    pub fn j() -> Self {
        Quaternion { a: Gaussian::zero(), b: Gaussian::one() }
    }

    pub fn k() -> Self {
        Self::i() * Self::j()
    }

    pub fn from_complex(a: Gaussian<T>) -> Self {
        Quaternion { a, b: Gaussian::zero() }
    }

    pub fn conjugate(&self) -> Self {
        Quaternion { a: self.a.conjugate(), b: -self.b.clone() }
    }

    pub fn norm_sq(&self) -> T {
        self.a.norm_sq() + self.b.norm_sq()
    }
}

impl<T: fmt::Debug> fmt::Debug for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} + j{:?}]", self.a, self.b)
    }
}

impl<T: OrderedField> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion { a: self.a + o.a, b: self.b + o.b }
    }
}

impl<T: OrderedField> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion { a: self.a - o.a, b: self.b - o.b }
    }
}

impl<T: OrderedField> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion { a: -self.a, b: -self.b }
    }
}

impl<T: OrderedField> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = self.a.clone() * o.a.clone() - self.b.conjugate() * o.b.clone();
        let b = self.a.conjugate() * o.b + self.b * o.a;
        Quaternion { a, b }
    }
}

impl<T: OrderedField> Div for Quaternion<T> {
    type Output = Self;
    /// Right division `self · o⁻¹`.
    fn div(self, o: Self) -> Self {
        let n = Gaussian::real(o.norm_sq());
        let inv = o.conjugate();
        let inv = Quaternion { a: inv.a / n.clone(), b: inv.b / n };
        self * inv
    }
}

impl<T: OrderedField> Zero for Quaternion<T> {
    fn zero() -> Self {
        Quaternion { a: Gaussian::zero(), b: Gaussian::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: OrderedField> One for Quaternion<T> {
    fn one() -> Self {
        Quaternion { a: Gaussian::one(), b: Gaussian::zero() }
    }
}

impl<T: OrderedField> Field for Quaternion<T> {
    fn from_i64(v: i64) -> Self {
        Quaternion::from_complex(Gaussian::from_i64(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::RationalQuaternion as Q;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Q::i(), Q::j(), Q::k());
        let m1 = -Q::one();
        assert_eq!(i.clone() * i.clone(), m1);
        assert_eq!(j.clone() * j.clone(), m1);
        assert_eq!(k.clone() * k.clone(), m1);
        assert_eq!(i.clone() * j.clone() * k.clone(), m1);
        assert_eq!(j.clone() * i.clone(), -k);
    }

    #[test]
    fn from_coords_matches_basis() {
        let q = Q::from_coords(int(1), int(2), int(3), int(4));
        let e = Q::one()
            + Q::i() * Q::from_i64(2)
            + Q::j() * Q::from_i64(3)
            + Q::k() * Q::from_i64(4);
        assert_eq!(q, e);
    }

    #[test]
    fn norm_via_conjugate() {
        let q = Q::from_coords(int(1), int(-2), int(3), int(5));
        let p = q.clone() * q.conjugate();
        assert_eq!(p, Q::from_i64(39));
        assert_eq!(q.norm_sq(), int(39));
    }

    #[test]
    fn right_division() {
        let p = Q::from_coords(int(2), int(0), int(-1), int(3));
        let q = Q::from_coords(int(1), int(1), int(1), int(-1));
        assert_eq!((p.clone() * q.clone()) / q, p);
    }
}
