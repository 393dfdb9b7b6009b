//! Truncated power series for S and Z.

mod lagrange;
mod truncated;

pub use lagrange::{
    audited, coefficient_sequence, lagrangian_numer_denom, pol_z_eval, solve_s, solve_z, z_exact, IsingParams, Mode,
    Series, SeriesCoeff, Symbols,
};
pub use truncated::TruncatedSeries;
