//! Effective homology of twisted cartesian products: the twisted
//! Eilenberg–Zilber reduction followed by a transfer onto effective factors.

mod equipment;
mod routes;
mod terms;

pub use equipment::{Equipment, Provenance, Side, SideMap};
pub use routes::{
    route_cor42, route_cor44, route_cor53, route_direct, route_thm41, run, Diagnostics, Method,
    Options, PipelineResult, Route,
};
pub use terms::transfer_terms;

use crate::error::Result;
use crate::twisted::{builtin_tcp, Tcp};

/// A builtin TCP with its standard equipment; K(Z,1) factors are cut off one
/// degree above `opts.max_dim`.
pub fn builtin(name: &str, opts: &Options) -> Result<(Tcp, Equipment)> {
    let tcp = builtin_tcp(name, opts.max_dim + 1)?;
    let eq = Equipment::for_builtin(name, &tcp)?;
    Ok((tcp, eq))
}
