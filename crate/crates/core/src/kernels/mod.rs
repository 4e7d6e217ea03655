//! Kernel series on conformally flat quotients of `R^n` and `S^n`.

pub mod cot;
pub mod euclid;
pub mod hopf;
pub mod lattice;
pub mod spec;
pub mod sphere;
pub mod transversion;

use crate::clifford::{sub, Multivector};
use crate::error::{check_dim, Result};

pub use cot::{cot_kernel, semidirect_kernel, tail_estimate};
pub use euclid::{cauchy_normalization, fundamental_solution, higher_order, sphere_area};
pub use hopf::{hopf_kernel, hopf_poisson, hopf_transfer};
pub use lattice::{enumerate_shells, half_lattice};
pub use spec::{BundleSign, Family, HopfMode, KernelSpec, Regime, TruncationPolicy};
pub use sphere::{rp_kernel, sphere_cauchy, sphere_green};
pub use transversion::transversion_kernel;

/// Evaluates the kernel described by `spec` at `(x, y)`.
///
/// `hopf_transfer` specs use `G_q` as the transferred kernel.
pub fn evaluate(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<Multivector> {
    spec.validate()?;
    let d = spec.algebra_dim();
    check_dim(d, x.len())?;
    check_dim(d, y.len())?;
    let n = spec.n;
    match spec.family {
        Family::Euclid => fundamental_solution(&sub(x, y)),
        Family::EuclidK => higher_order(spec.q, &sub(x, y)),
        Family::SphereCauchy => sphere_cauchy(x, y, n),
        Family::SphereGreen => Ok(Multivector::scalar(d, sphere_green(x, y, n)?)),
        Family::Rp => rp_kernel(x, y, n, spec.bundle_sign, spec.q as u32),
        Family::Cot => cot_kernel(spec, x, y),
        Family::Semidirect => semidirect_kernel(spec, x, y),
        Family::Transversion => transversion_kernel(spec, x, y),
        Family::Hopf => hopf_kernel(spec, x, y),
        Family::HopfPoisson => Ok(Multivector::scalar(d, hopf_poisson(spec, x, y)?)),
        Family::HopfTransfer => {
            let q = spec.q;
            hopf_transfer(&|v| higher_order(q, v), x, y, n, &spec.trunc)
        }
    }
}
