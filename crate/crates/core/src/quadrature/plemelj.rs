//! Principal values and one-sided boundary limits of Cauchy integrals.
//!
//! The principal value excises a geodesic cap of chordal radius `eps` around
//! `w` and extrapolates `eps -> 0`. One-sided limits are evaluated along a
//! normal path at distances `t` and extrapolated `t -> 0`. Both use a polar
//! rule graded towards `w`.

use serde::Serialize;

use crate::clifford::{norm, Multivector};
use crate::diffops::FieldFn;
use crate::error::{Error, Result};
use crate::quadrature::formulas::{surface_integral, KernelFn};
use crate::quadrature::rule::PolarRule;
use crate::quadrature::surface::{Ambient, SphereGeometry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Towards the enclosed ball or cap.
    Inner,
    Outer,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlemeljParams {
    /// Exclusion radii, halving.
    pub eps: [f64; 3],
    /// Path distances, halving.
    pub ts: [f64; 3],
    pub panel_order: usize,
    pub polar: usize,
    pub azimuth: usize,
    /// The surface lives on a quotient by dilations about the origin, so a
    /// sphere around the origin does not bound a region of the quotient.
    pub dilation_quotient: bool,
}

impl Default for PlemeljParams {
    fn default() -> Self {
        PlemeljParams {
            eps: [0.2, 0.1, 0.05],
            ts: [0.2, 0.1, 0.05],
            panel_order: 16,
            polar: 16,
            azimuth: 48,
            dilation_quotient: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extrapolated {
    pub value: Multivector,
    pub samples: Vec<Multivector>,
    /// Successive differences did not grow.
    pub converged: bool,
}

fn ratio_test(s: &[Multivector]) -> bool {
    let d1 = s[0].dist(&s[1]);
    let d2 = s[1].dist(&s[2]);
    d2 <= d1 || d2 < 1e-13
}

/// Quadratic extrapolation to zero from samples at `h, h/2, h/4`.
fn richardson(s: &[Multivector]) -> Multivector {
    &s[0] * (1.0 / 3.0) - &s[1] * 2.0 + &s[2] * (8.0 / 3.0)
}

/// Least-squares line through `(t_i, s_i)` evaluated at zero.
fn linear_intercept(ts: &[f64], s: &[Multivector]) -> Multivector {
    let m = ts.len() as f64;
    let tbar = ts.iter().sum::<f64>() / m;
    let stt: f64 = ts.iter().map(|t| (t - tbar).powi(2)).sum();
    // intercept weights: 1/m - tbar (t_i - tbar) / stt
    let mut out = Multivector::zero(s[0].dim());
    for (t, v) in ts.iter().zip(s) {
        out += v * (1.0 / m - tbar * (t - tbar) / stt);
    }
    out
}

fn check_on_surface(g: &SphereGeometry, w: &[f64]) -> Result<()> {
    let r = norm(&g.pole_of(w));
    if (r - g.radius).abs() > 1e-10 * g.radius.max(1.0) {
        return Err(Error::Surface(format!(
            "boundary point is at distance {r} from the center, radius {}",
            g.radius
        )));
    }
    Ok(())
}

/// `PV (1/ω) ∫ K(x, w) n(x) f(x) dσ(x)` for `w` on the primary sheet.
pub fn principal_value(
    kernel: KernelFn,
    g: &SphereGeometry,
    f: &FieldFn,
    w: &[f64],
    omega: f64,
    p: &PlemeljParams,
) -> Result<Extrapolated> {
    check_on_surface(g, w)?;
    let pole = g.pole_of(w);
    let mut samples = Vec::with_capacity(3);
    for &eps in &p.eps {
        let theta = g.cap_angle(eps)?;
        let rule = PolarRule::Graded {
            theta_min: theta,
            tau: theta,
            order: p.panel_order,
        };
        let s = g.build(&pole, &rule, p.polar, p.azimuth)?;
        let v = surface_integral(&s, |nd| {
            Ok(kernel(&nd.point, w)? * Multivector::from_vector(&nd.normal) * f.eval(&nd.point)?)
        })?;
        samples.push(v / omega);
    }
    Ok(Extrapolated {
        value: richardson(&samples),
        converged: ratio_test(&samples),
        samples,
    })
}

/// Point at distance `t` from `w` along the normal path on `side`.
pub fn path_point(g: &SphereGeometry, w: &[f64], side: Side, t: f64) -> Vec<f64> {
    let (_, n) = g.point_normal(&crate::clifford::scale(&g.pole_of(w), 1.0 / g.radius));
    let sgn = match side {
        Side::Inner => -1.0,
        Side::Outer => 1.0,
    };
    match g.ambient {
        Ambient::Euclidean { .. } => w.iter().zip(&n).map(|(a, b)| a + sgn * t * b).collect(),
        Ambient::Sphere { .. } => {
            let (s, c) = t.sin_cos();
            w.iter().zip(&n).map(|(a, b)| c * a + sgn * s * b).collect()
        }
    }
}

/// One-sided limit of the Cauchy integral at `w`.
pub fn one_sided_limit(
    kernel: KernelFn,
    g: &SphereGeometry,
    f: &FieldFn,
    w: &[f64],
    side: Side,
    omega: f64,
    p: &PlemeljParams,
) -> Result<Extrapolated> {
    check_on_surface(g, w)?;
    let pole = g.pole_of(w);
    let mut samples = Vec::with_capacity(3);
    for &t in &p.ts {
        let y = path_point(g, w, side, t);
        let rule = PolarRule::Graded {
            theta_min: 0.0,
            tau: t / (4.0 * g.radius),
            order: p.panel_order,
        };
        let s = g.build(&pole, &rule, p.polar, p.azimuth)?;
        let v = surface_integral(&s, |nd| {
            Ok(kernel(&nd.point, &y)? * Multivector::from_vector(&nd.normal) * f.eval(&nd.point)?)
        })?;
        samples.push(v / omega);
    }
    Ok(Extrapolated {
        value: linear_intercept(&p.ts, &samples),
        converged: ratio_test(&samples),
        samples,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PlemeljOutcome {
    pub principal_value: Extrapolated,
    pub inner: Extrapolated,
    pub outer: Extrapolated,
    /// `(L_in + L_out)/2`.
    pub mean: Multivector,
    /// `L_in - L_out`.
    pub jump: Multivector,
    /// The sphere winds around the origin of a dilation quotient, so it does
    /// not split the manifold into two Hardy spaces.
    pub no_hardy_split: bool,
}

/// Both one-sided limits and the principal value at `w`.
pub fn plemelj_limit(
    kernel: KernelFn,
    g: &SphereGeometry,
    f: &FieldFn,
    w: &[f64],
    omega: f64,
    p: &PlemeljParams,
) -> Result<PlemeljOutcome> {
    let pv = principal_value(kernel, g, f, w, omega, p)?;
    let inner = one_sided_limit(kernel, g, f, w, Side::Inner, omega, p)?;
    let outer = one_sided_limit(kernel, g, f, w, Side::Outer, omega, p)?;
    let mean = (&inner.value + &outer.value) * 0.5;
    let jump = &inner.value - &outer.value;
    let no_hardy_split = p.dilation_quotient
        && matches!(g.ambient, Ambient::Euclidean { .. })
        && norm(&g.center) < g.radius;
    Ok(PlemeljOutcome {
        principal_value: pv,
        inner,
        outer,
        mean,
        jump,
        no_hardy_split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::sub;
    use crate::kernels::euclid::{cauchy_normalization, fundamental_solution};

    fn euclid(x: &[f64], y: &[f64]) -> Result<Multivector> {
        fundamental_solution(&sub(x, y))
    }

    #[test]
    fn extrapolation_weights() {
        let mk = |v: f64| Multivector::scalar(2, v);
        let q = |h: f64| 1.0 + 2.0 * h - 3.0 * h * h;
        let s = [mk(q(0.2)), mk(q(0.1)), mk(q(0.05))];
        assert!((richardson(&s).scalar_part() - 1.0).abs() < 1e-14);
        let l = |t: f64| 0.5 - 4.0 * t;
        let s = [mk(l(0.2)), mk(l(0.1)), mk(l(0.05))];
        assert!((linear_intercept(&[0.2, 0.1, 0.05], &s).scalar_part() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn jump_of_constant_on_unit_sphere() {
        let g = SphereGeometry::euclidean(vec![0.0; 3], 1.0).unwrap();
        let f = FieldFn::new(3, |x| Ok(Multivector::scalar(3, 1.0 + 0.5 * x[0])));
        let w = [0.0, 0.6, 0.8];
        let p = PlemeljParams::default();
        let out = plemelj_limit(&euclid, &g, &f, &w, cauchy_normalization(3), &p).unwrap();
        let fw = f.eval(&w).unwrap();
        assert!(out.jump.dist(&fw) < 1e-2, "jump {}", out.jump);
        assert!(out.mean.dist(&out.principal_value.value) < 1e-2);
        assert!(!out.no_hardy_split);
    }

    #[test]
    fn off_surface_point_rejected() {
        let g = SphereGeometry::euclidean(vec![0.0; 3], 1.0).unwrap();
        let f = FieldFn::new(3, |_| Ok(Multivector::one(3)));
        let r = principal_value(&euclid, &g, &f, &[0.0, 0.0, 0.9], -1.0, &PlemeljParams::default());
        assert!(r.is_err());
    }
}
