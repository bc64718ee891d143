use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Field operations shared by every scalar the algebra runs over.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// Ordered real fields (exact rationals or floats).
pub trait OrderedField: Field + PartialOrd {
    fn to_f64(&self) -> f64;

    fn abs_val(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

/// Fields with an involutive conjugation over an ordered real subfield.
pub trait ConjField: Field {
    type Real: OrderedField;
    fn conj(&self) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn from_real(r: Self::Real) -> Self;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl OrderedField for BigRational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
}

macro_rules! float_field {
    ($t:ty) => {
        impl Field for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
        }
        impl OrderedField for $t {
            fn to_f64(&self) -> f64 {
                *self as f64
            }
        }
        impl ConjField for $t {
            type Real = $t;
            fn conj(&self) -> Self {
                *self
            }
            fn re(&self) -> Self {
                *self
            }
            fn im(&self) -> Self {
                0.0
            }
            fn from_real(r: Self) -> Self {
                r
            }
        }
    };
}
float_field!(f32);
float_field!(f64);

impl ConjField for BigRational {
    type Real = BigRational;
    fn conj(&self) -> Self {
        self.clone()
    }
    fn re(&self) -> Self {
        self.clone()
    }
    fn im(&self) -> Self {
        BigRational::zero()
    }
    fn from_real(r: Self) -> Self {
        r
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_to_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Serde adapters for exact rationals written as "p/q" strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`")))
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_str(&rat_to_string(r)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            match s {
                None => Ok(None),
                Some(s) => parse_rat(&s)
                    .map(Some)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))),
            }
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&rat_to_string(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            let v: Vec<String> = Vec::deserialize(d)?;
            v.iter()
                .map(|s| parse_rat(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))))
                .collect()
        }
    }

    pub mod vecvec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for row in v {
                let row: Vec<String> = row.iter().map(rat_to_string).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
            let v: Vec<Vec<String>> = Vec::deserialize(d)?;
            v.iter()
                .map(|row| {
                    row.iter()
                        .map(|s| parse_rat(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational `{s}`"))))
                        .collect()
                })
                .collect()
        }
    }
}
