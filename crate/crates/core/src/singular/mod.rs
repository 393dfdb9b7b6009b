//! Dominant singularities of S and Z.
mod charpoly;
mod closed;
mod puiseux;
mod radius;
pub mod roots;

pub use charpoly::{
    cancelling_poly, char_factors, cleared_form, discriminant_cofactor, discriminant_in_z, discriminant_of_cleared,
    lagrangian_z, p1, p2, p3, primitive_poly, CancellingPoly, CharFactors,
};
pub use closed::{
    rho_closed_form, rho_high_branch, rho_low_branch, s_at_rho_closed_form, s_high_branch, s_low_branch, ClosedValue,
    NU_STAR,
};
pub use puiseux::{
    expand_s, newton_polygon_expand, residual_failure, shifted_curve, BivariatePoly, PuiseuxExpansion, PuiseuxTerm,
    EXACT_DROP_BITS,
};
pub use radius::{
    branches_at_rho, discriminant_moduli, dominant_exponent, locate_rho, radius_numeric, radius_with, s_bound,
    Enclosure, Located, RadiusOptions, SingularityReport, EXPONENT_AUDIT_BITS, UNIQUENESS_GAP,
};
