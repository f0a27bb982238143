#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod analysis;
pub mod operators;
pub mod relaxation;
pub mod special;
pub mod transforms;

pub use error::{Error, Result};
pub use operators::{GridFunction, KernelSpec, MaskedGrid};
pub use special::PrabhakarParams;
