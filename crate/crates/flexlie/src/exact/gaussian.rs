use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{ConjField, Field, OrderedField};

/// `re + i·im` over an ordered real field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gaussian<T> {
    pub re: T,
    pub im: T,
}

impl<T> Gaussian<T> {
    pub const fn new(re: T, im: T) -> Self {
        Gaussian { re, im }
    }
}

impl<T: OrderedField> Gaussian<T> {
    pub fn real(re: T) -> Self {
        Gaussian { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Gaussian { re: T::zero(), im: T::one() }
    }

    pub fn norm_sq(&self) -> T {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn conjugate(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn mul_i(&self) -> Self {
        Gaussian { re: -self.im.clone(), im: self.re.clone() }
    }
}

impl<T: fmt::Debug> fmt::Debug for Gaussian<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl<T: OrderedField> Add for Gaussian<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gaussian { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: OrderedField> Sub for Gaussian<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gaussian { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: OrderedField> Neg for Gaussian<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Gaussian { re: -self.re, im: -self.im }
    }
}

impl<T: OrderedField> Mul for Gaussian<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Gaussian {
            re: self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl<T: OrderedField> Div for Gaussian<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let n = o.norm_sq();
        let num = self * o.conjugate();
        Gaussian { re: num.re / n.clone(), im: num.im / n }
    }
}

impl<T: OrderedField> Zero for Gaussian<T> {
    fn zero() -> Self {
        Gaussian { re: T::zero(), im: T::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<T: OrderedField> One for Gaussian<T> {
    fn one() -> Self {
        Gaussian { re: T::one(), im: T::zero() }
    }
}

impl<T: OrderedField> Field for Gaussian<T> {
    fn from_i64(v: i64) -> Self {
        Gaussian::real(T::from_i64(v))
    }
}

impl<T: OrderedField> ConjField for Gaussian<T> {
    type Real = T;
    fn conj(&self) -> Self {
        self.conjugate()
    }
    fn re(&self) -> T {
        self.re.clone()
    }
    fn im(&self) -> T {
        self.im.clone()
    }
    fn from_real(r: T) -> Self {
        Gaussian::real(r)
    }
}
