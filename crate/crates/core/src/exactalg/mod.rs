//! Exact rational and polynomial algebra.

pub mod param;
pub mod resultant;
pub mod ring;
pub mod scalar;
pub mod sturm;
pub mod unipoly;

pub use param::{Monomial, ParamPoly};
pub use resultant::{discriminant, resultant};
pub use ring::{sign_of, ExactDiv, Field, Ring};
pub use scalar::{format_exact, int, parse_exact, ratio, ExactScalar};
pub use sturm::{isolate_real_roots, refine_root, sturm_count, RootInterval, SturmSequence};
pub use unipoly::{poly_exact_div, UniPoly};
