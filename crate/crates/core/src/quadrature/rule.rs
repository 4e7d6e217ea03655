//! One-dimensional rules and product rules on unit spheres `S^{d-1} ⊂ R^d`.
//!
//! A sphere rule is built around a pole `p = (1, 0, ..., 0)`: a node is
//! `cos θ p + sin θ ω` with `ω` on the equatorial `S^{d-2}`, and the weight
//! carries the Jacobian `sin^{d-2} θ`.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};

/// Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(order: usize, a: f64, b: f64) -> Result<Vec<(f64, f64)>> {
    let deg = NonZeroUsize::new(order)
        .ok_or_else(|| Error::InvalidParameter("Gauss-Legendre order must be >= 1".into()))?;
    let gl = GaussLegendre::new(deg);
    let (mid, half) = ((a + b) / 2.0, (b - a) / 2.0);
    let mut nodes: Vec<(f64, f64)> = gl
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (mid + half * x, half * w))
        .collect();
    nodes.sort_by(|p, q| p.0.total_cmp(&q.0));
    Ok(nodes)
}

/// Rule for the polar angle of the outermost level.
#[derive(Clone, Debug, PartialEq)]
pub enum PolarRule {
    /// Gauss–Legendre with the given order on `[0, π]`.
    Standard(usize),
    /// Composite Gauss–Legendre on `[θ_min, π]` with panel widths doubling
    /// away from `θ_min`, starting at `tau`.
    Graded { theta_min: f64, tau: f64, order: usize },
}

impl PolarRule {
    pub fn nodes(&self) -> Result<Vec<(f64, f64)>> {
        match *self {
            PolarRule::Standard(n) => gauss_legendre(n, 0.0, PI),
            PolarRule::Graded { theta_min, tau, order } => {
                if !(0.0..PI).contains(&theta_min) || tau <= 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "graded polar rule needs 0 <= theta_min < pi and tau > 0 (got {theta_min}, {tau})"
                    )));
                }
                let mut out = Vec::new();
                let mut lo = theta_min;
                let mut width = tau;
                while lo < PI {
                    let hi = (lo + width).min(PI);
                    // avoid a sliver panel at the end
                    let hi = if PI - hi < 0.25 * width { PI } else { hi };
                    out.extend(gauss_legendre(order, lo, hi)?);
                    lo = hi;
                    width *= 2.0;
                }
                Ok(out)
            }
        }
    }
}

/// Standard product rule on `S^{d-1}`: uniform angles on circles, Gauss–Legendre
/// in every polar angle.
pub fn sphere_rule(d: usize, polar: usize, azimuth: usize) -> Result<Vec<(Vec<f64>, f64)>> {
    sphere_rule_with(d, &PolarRule::Standard(polar), polar, azimuth)
}

/// Product rule on `S^{d-1}` whose outermost polar angle uses `outer`.
pub fn sphere_rule_with(
    d: usize,
    outer: &PolarRule,
    polar: usize,
    azimuth: usize,
) -> Result<Vec<(Vec<f64>, f64)>> {
    match d {
        0 => Err(Error::InvalidParameter("sphere rule needs d >= 1".into())),
        1 => Ok(vec![(vec![1.0], 1.0), (vec![-1.0], 1.0)]),
        2 if matches!(outer, PolarRule::Standard(_)) => {
            if azimuth == 0 {
                return Err(Error::InvalidParameter("azimuth count must be >= 1".into()));
            }
            let h = 2.0 * PI / azimuth as f64;
            Ok((0..azimuth)
                .map(|j| {
                    let (s, c) = (j as f64 * h).sin_cos();
                    (vec![c, s], h)
                })
                .collect())
        }
        _ => {
            let inner = sphere_rule(d - 1, polar, azimuth)?;
            let mut out = Vec::new();
            for (theta, wt) in outer.nodes()? {
                let (s, c) = theta.sin_cos();
                let jac = wt * s.powi(d as i32 - 2);
                for (om, wo) in &inner {
                    let mut u = Vec::with_capacity(d);
                    u.push(c);
                    u.extend(om.iter().map(|v| s * v));
                    out.push((u, jac * wo));
                }
            }
            Ok(out)
        }
    }
}
