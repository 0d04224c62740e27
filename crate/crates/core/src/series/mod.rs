//! Truncated power series and the generating-function machinery.

pub mod egf;
pub mod sigma;
pub mod truncated;
pub mod xi;

pub use egf::{confluent_phi, egf_s, phi_series};
pub use sigma::{
    log_theta, ode_check_series, ode_check_sigma, radius_r, ratio_test_radius, sigma_coeff, sigma_eval, sigma_poly,
    sigma_series, theta_eval, theta_residual, NuBranch, NuParameter, OdeCheck, SigmaMethod, DISK_SAFETY,
};
pub use truncated::TruncatedSeries;
pub use xi::{ogf_forward, ogf_inverse, omega_map, omega_series, prefactor_series, xi_map, xi_series};
