//! Closed-form invariants and the brute-force machinery that checks them.

pub mod catenary;
pub mod density;
pub mod omega;

pub use catenary::{
    acm_with_catenary_degree, build_canonical_chain, canonical_factorization,
    catenary_closed_local, catenary_lower_bound_check, catenary_survey, CatenarySurvey,
    LowerBoundCheck,
};
pub use density::{
    ld_closed, ld_closed_local, ld_closed_power, ld_closed_regular, ld_survey, ld_witness_regular,
};
pub use omega::{
    is_bullet, omega_closed, omega_closed_regular, omega_closed_singular, omega_oracle,
    omega_witness_regular, OmegaReport, OmegaVariant,
};
