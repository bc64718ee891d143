//! Centers of centralizers of reductive surface-group data in classical real
//! Lie groups: roots, Toledo constraints, and the balancedness test.

pub mod appendix;
pub mod balance;
pub mod calibration;
pub mod error;
pub mod exact;
pub mod forms;
pub mod group;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod roots;
pub mod scalar;
pub mod slots;
pub mod sweep;
pub mod toledo;
pub mod verdict;

pub use error::{FlexError, Result};
pub use exact::{signature_of, Gaussian, HermitianMatrix, Matrix, Quaternion, Signature};

pub type Rational = num_rational::BigRational;
pub type GaussianRational = Gaussian<Rational>;
pub type RationalQuaternion = Quaternion<Rational>;
pub type RationalMatrix = Matrix<Rational>;
pub type GaussianMatrix = Matrix<GaussianRational>;
pub type GaussianF64 = Gaussian<f64>;
