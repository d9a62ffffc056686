//! Exact heights of generic Sylvester resultants `Res(f, g)` with `deg f`
//! in `1..=3` (expansion up to 4) and `g` generic of degree `n`.

pub mod asymptotics;
pub mod bigpoly;
pub mod cubic;
pub mod error;
pub mod quad;
pub mod sylvester;
pub mod verify;

mod factorial;

pub use bigpoly::{Monomial, SparsePoly, Universe};
pub use error::{Error, Result};
pub use sylvester::SylvesterSpec;
