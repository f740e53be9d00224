pub mod cyclo;
pub mod error;
pub mod habiro;
pub mod knotdata;
pub mod qlaurent;
pub mod ranklab;
pub mod reptheory;
pub mod surgery;

pub(crate) mod dense;

pub use error::{Error, Result};
pub use qlaurent::LaurentPoly;
