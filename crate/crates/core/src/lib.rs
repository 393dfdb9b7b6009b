pub mod critical;
pub mod error;
pub mod exactalg;
pub mod hpreal;
pub mod mapcount;
pub mod series;
pub mod singular;

pub use error::{Error, Result};
