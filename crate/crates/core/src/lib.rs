pub mod disc;
pub mod error;
pub mod exactalg;
pub mod export;
pub mod garside;
pub mod noncrossing;
pub mod rep;
pub mod rescale;
pub mod simplex;

pub use error::{Error, Result};
