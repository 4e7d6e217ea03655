//! Named verification suites. Check ids start with `cNN.` where `NN` is the
//! acceptance criterion the check belongs to.

use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use conflat_core::clifford::{dot, norm, scale};
use conflat_core::Multivector;

use crate::error::{HarnessError, Result};
use crate::runner::CheckDef;

mod algebra;
mod covariance;
mod critical;
mod determinism;
mod fundamental;
mod hopf;
mod plemelj;
mod reproduction;
mod rp;
mod semidirect;
mod spherical;
mod torus;
mod transversion;

pub const SUITES: &[&str] = &[
    "algebra-axioms",
    "fundamental-solutions",
    "spherical-operators",
    "euclidean-reproduction",
    "moebius-covariance",
    "rp-identities",
    "torus-kernels",
    "critical-regimes",
    "hopf-diagnostics",
    "transversion",
    "plemelj",
    "semidirect",
    "determinism",
    "default",
];

pub fn checks_for(name: &str) -> Result<Vec<CheckDef>> {
    Ok(match name {
        "algebra-axioms" => algebra::checks(),
        "fundamental-solutions" => fundamental::checks(),
        "spherical-operators" => spherical::checks(),
        "euclidean-reproduction" => reproduction::checks(),
        "moebius-covariance" => covariance::checks(),
        "rp-identities" => rp::checks(),
        "torus-kernels" => torus::checks(),
        "critical-regimes" => critical::checks(),
        "hopf-diagnostics" => hopf::checks(),
        "transversion" => transversion::checks(),
        "plemelj" => plemelj::checks(),
        "semidirect" => semidirect::checks(),
        "determinism" => determinism::checks(),
        "default" => {
            let mut all = Vec::new();
            for s in SUITES.iter().filter(|s| **s != "default") {
                all.extend(checks_for(s)?);
            }
            all
        }
        other => return Err(HarnessError::UnknownSuite(other.to_string())),
    })
}

pub(crate) fn unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let r = norm(&v);
        if r > 0.1 && r <= 1.0 {
            return scale(&v, 1.0 / r);
        }
    }
}

pub(crate) fn in_shell(rng: &mut ChaCha8Rng, d: usize, rmin: f64, rmax: f64) -> Vec<f64> {
    let u = unit(rng, d);
    scale(&u, rng.random_range(rmin..rmax))
}

/// Unit vector `x` with `<x, y> < max_cos`.
pub(crate) fn unit_away(rng: &mut ChaCha8Rng, y: &[f64], max_cos: f64) -> Vec<f64> {
    loop {
        let x = unit(rng, y.len());
        if dot(&x, y) < max_cos {
            return x;
        }
    }
}

pub(crate) fn random_mv(rng: &mut ChaCha8Rng, n: usize) -> Multivector {
    let c = (0..1usize << n).map(|_| rng.random_range(-1.0..1.0)).collect();
    Multivector::from_coeffs(n, c).expect("coefficient count matches")
}

pub(crate) fn rel(err: f64, scale: f64) -> f64 {
    err / scale.max(f64::MIN_POSITIVE)
}
