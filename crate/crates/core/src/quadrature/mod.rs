//! Surface quadrature for Cauchy-type integral formulas.

pub mod formulas;
pub mod plemelj;
pub mod rule;
pub mod surface;

pub use formulas::{
    cauchy_reproduce, higher_order_reproduce, hopf_reproduce, measure_convolution,
    rp_symmetric_identities, surface_integral, PointMeasure,
};
pub use plemelj::{plemelj_limit, principal_value, PlemeljParams, Side};
pub use surface::{NormalTransport, Surface, SurfaceDesc};
