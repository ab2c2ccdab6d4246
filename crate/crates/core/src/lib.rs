pub mod cli;
pub mod coalgebra;
pub mod comodule;
pub mod contramodule;
pub mod error;
pub mod field;
pub mod functors;
pub mod io;
pub mod linalg;
pub mod random;
pub mod sl2;
pub mod towers;
pub mod verdict;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
