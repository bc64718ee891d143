pub mod complexify;
pub mod gaussian;
pub mod matrix;
pub mod quaternion;
pub mod signature;

pub use complexify::{quaternion_complexify, AntilinearMap, Complexified, TauAction};
pub use gaussian::Gaussian;
pub use matrix::{dot, rank_of, Matrix, Rref};
pub use quaternion::Quaternion;
pub use signature::{signature_of, HermitianMatrix, Signature};
