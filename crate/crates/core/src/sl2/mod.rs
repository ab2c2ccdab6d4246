//! `SL2` over `F_p`: coordinate ring arithmetic, rational comodules,
//! Frobenius kernels and the `p = 2` module catalog.

pub mod catalog;
pub mod character;
pub mod kernel;
pub mod poly;
pub mod rational;

pub use catalog::{f_multiplicity, Catalog, KernelCache, KernelData, Tower};
pub use character::Character;
pub use kernel::FrobeniusKernel;
pub use poly::{SL2Poly, TensorPoly};
pub use rational::{hom_g, is_g_map, RationalComodule};
