//! Special-function kernel.

pub mod bell;
pub mod erf;
pub mod gamma;
pub mod hyper;
pub mod pcf;

pub use bell::{bell_complete, bell_complete_all, bell_partial, bell_partial_table, BellScalar};
pub use erf::{erf_complex, fresnel};
pub use gamma::{
    gamma_complex, gamma_positive, ln_gamma, polygamma, polygamma_complex, zeta, EULER_GAMMA,
};
pub use hyper::{hyp2f2_11, r_function};
pub use pcf::{
    gamma_index_deriv, pcf, pcf_minus_one_erf, pcf_modified, pcf_modified_contour_orders,
    pcf_modified_orders, pcf_modified_series_orders, pcf_series, pcf_via_integral, ModifiedPcfSpec,
    SeriesTruncation,
};
