//! Exact computation and verification of the coefficient matrix of the
//! superintegrable chiral Potts generating function G(t, u).
//!
//! The crate is layered bottom-up:
//!
//! - [`cyclo`]: exact arithmetic in the cyclotomic field Q(w);
//! - [`bipoly`]: dense bivariate polynomials in `t`, `u` over Q(w);
//! - [`omega`]: truncated series and MacMahon's partition-analysis operator;
//! - [`genfun`]: the polynomial Q(t), the Lambda tables and three independent
//!   routes to the coefficient matrix;
//! - [`identities`]: exact replay of every intermediate identity at random
//!   rational points, with reproducible witnesses.

pub mod bipoly;
pub mod cyclo;
pub mod genfun;
pub mod identities;
pub mod omega;
pub mod scalar;

pub use bipoly::{BiPoly, BiPolyError};
pub use cyclo::{CycContext, CycNum, CycloError};
pub use genfun::{CoeffMatrix, LambdaTable, Method, Params};
pub use scalar::Scalar;
