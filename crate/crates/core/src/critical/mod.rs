//! Observables and critical exponents.
mod closed;
mod finite;
mod fit;
mod thermo;

pub use closed::{chi_asymptote, chi_closed, m0_asymptote, m0_closed, m_critical_asymptote};
pub use finite::{
    finite_magnetization_exact, finite_observables, finite_profile, finite_susceptibility_exact, free_energy_sequence,
    symbolic_zn, z_values, Chi, ObservableSet, SYMBOLIC_LIMIT,
};
pub use fit::{aitken, exponent_fit, local_exponents, ratio_limit, FitResult};
pub use thermo::{
    auto_step, free_energy, free_energy_closed, one_sided_nu_derivatives, rho_value, stencil_for, thermo_magnetization,
    thermo_magnetization_with, thermo_observables, thermo_susceptibility, thermo_susceptibility_with,
    transition_at_nu_star, Extrapolated, Stencil, ThermoOptions, TransitionReport, THERMO_TOL,
};
