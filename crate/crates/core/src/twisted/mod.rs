//! Twisting operators, twisted cartesian products, the twisted
//! Eilenberg–Zilber reduction, the twisting cochain and the cap product.

mod cochain;
mod examples;
mod filtration;
mod operator;
mod tcp;

pub use cochain::{
    cap_product, sigma_action, tau_minus_unit, twisting_cochain, vanishes_on, CapMode,
    TwistingCochain,
};
pub use examples::{builtin_tcp, double_cover, hopf, klein, torus};
pub use filtration::{
    filtration_degree, filtration_drop_report, generator_filtration, FiltrationReport,
};
pub use operator::{check_twisting, TwistingOperator};
pub use tcp::{twisted_ez, twisted_perturbation, Tcp, TwistedEz};
