//! Kernels on the Hopf manifold `(R^n \ {0}) / {x ↦ 2^j x}`.

use crate::clifford::{norm, scale, sub, vector_inverse, Multivector};
use crate::error::{check_dim, Error, Result};
use crate::kernels::euclid::fundamental_solution;
use crate::kernels::spec::{Family, HopfMode, KernelSpec, TruncationPolicy};
use crate::sum::KahanMv;

/// Closed-form constant `c` with literal-mode `C(x,y) = c G(x-y)`:
/// `(1 - 2^{3-3n}) / (1 - 2^{1-n})`.
pub fn collapse_constant(n: usize) -> f64 {
    let n = n as i32;
    (1.0 - 2f64.powi(3 - 3 * n)) / (1.0 - 2f64.powi(1 - n))
}

/// Constant of the first literal series alone: `C_1 = G(x-y) / (1 - 2^{1-n})`.
pub fn c1_constant(n: usize) -> f64 {
    1.0 / (1.0 - 2f64.powi(1 - n as i32))
}

fn check_points(n: usize, x: &[f64], y: &[f64], depth: usize) -> Result<()> {
    check_dim(n, x.len())?;
    check_dim(n, y.len())?;
    if norm(x) == 0.0 || norm(y) == 0.0 {
        return Err(Error::OnSingularSet("Hopf kernels need x, y != 0".into()));
    }
    let ny = norm(y);
    for j in -(depth as i32)..=depth as i32 {
        let t = 2f64.powi(j);
        if norm(&sub(x, &scale(y, t))) < 1e-12 * t * ny {
            return Err(Error::OnSingularSet(format!("x = 2^{j} y")));
        }
    }
    Ok(())
}

/// Assembles `Σ_{j=0}^{T} K(2^j x - 2^j y) + 2^{2-2n} G(x) (Σ_{j=1}^{T} K(2^j x^{-1} - 2^j y^{-1})) G(y)`.
pub fn hopf_transfer(
    kernel: &dyn Fn(&[f64]) -> Result<Multivector>,
    x: &[f64],
    y: &[f64],
    n: usize,
    trunc: &TruncationPolicy,
) -> Result<Multivector> {
    let t = trunc.radius;
    check_points(n, x, y, t)?;
    let xi = vector_inverse(x)?;
    let yi = vector_inverse(y)?;
    let mut near = KahanMv::new(n);
    let mut far = KahanMv::new(n);
    for j in 0..=t {
        let p = 2f64.powi(j as i32);
        near.add(&kernel(&sub(&scale(x, p), &scale(y, p)))?);
    }
    for j in 1..=t {
        let p = 2f64.powi(j as i32);
        far.add(&kernel(&sub(&scale(&xi, p), &scale(&yi, p)))?);
    }
    let sandwich = fundamental_solution(x)? * far.into_value() * fundamental_solution(y)?;
    Ok(near.into_value() + sandwich * 2f64.powi(2 - 2 * n as i32))
}

/// Regularized orbit sum
/// `G(x-y) + Σ_{j≥1} [G(x - 2^{-j} y) - G(x)] + Σ_{j≥1} 2^{-j(n-1)} G(2^{-j} x - y)`.
///
/// `2^{j(n-1)} G(2^j x - y) = G(x - 2^{-j} y)` by homogeneity; the right-hand
/// form is used because it stays bounded for large `j`.
pub fn orbit_kernel(x: &[f64], y: &[f64], n: usize, trunc: &TruncationPolicy) -> Result<Multivector> {
    let t = trunc.radius;
    check_points(n, x, y, t)?;
    let gx = fundamental_solution(x)?;
    let mut acc = KahanMv::new(n);
    acc.add(&fundamental_solution(&sub(x, y))?);
    for j in 1..=t {
        let p = 2f64.powi(-(j as i32));
        acc.add(&(fundamental_solution(&sub(x, &scale(y, p)))? - &gx));
    }
    for j in 1..=t {
        let p = 2f64.powi(-(j as i32));
        let w = 2f64.powi(-(j as i32) * (n as i32 - 1));
        acc.add(&(fundamental_solution(&sub(&scale(x, p), y))? * w));
    }
    Ok(acc.into_value())
}

pub fn hopf_kernel(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<Multivector> {
    if !spec.family.is_hopf() {
        return Err(Error::InvalidParameter(format!(
            "expected a Hopf spec, got {:?}",
            spec.family
        )));
    }
    match spec.mode {
        HopfMode::Literal => hopf_transfer(&|v| fundamental_solution(v), x, y, spec.n, &spec.trunc),
        HopfMode::Orbit => orbit_kernel(x, y, spec.n, &spec.trunc),
    }
}

/// Scalar part of `2 C(x, y) e_n` for `x` on the hyperplane `x_n = 0`.
pub fn hopf_poisson(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    let n = spec.n;
    check_dim(n, x.len())?;
    if x[n - 1].abs() > 1e-12 {
        return Err(Error::InvalidParameter(
            "Poisson kernel needs x on the hyperplane x_n = 0".into(),
        ));
    }
    if y[n - 1].abs() < 1e-12 {
        return Err(Error::InvalidParameter(
            "Poisson kernel needs y off the hyperplane x_n = 0".into(),
        ));
    }
    let mut s = spec.clone();
    s.family = Family::Hopf;
    let c = hopf_kernel(&s, x, y)?;
    Ok(2.0 * (c * Multivector::basis_vector(n, n - 1)).scalar_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::euclid::higher_order;

    fn lit(n: usize) -> KernelSpec {
        KernelSpec::hopf(Family::Hopf, n, HopfMode::Literal)
    }

    #[test]
    fn c1_collapse() {
        let (x, y) = ([1.3, 0.2, -0.4], [0.7, -0.5, 0.9]);
        let trunc = TruncationPolicy::with_radius(50);
        let mut c1 = KahanMv::new(3);
        for j in 0..=50 {
            let p = 2f64.powi(j);
            c1.add(&fundamental_solution(&sub(&scale(&x, p), &scale(&y, p))).unwrap());
        }
        let want = fundamental_solution(&sub(&x, &y)).unwrap() * c1_constant(3);
        assert!(c1.value().dist(&want) < 1e-12 * want.norm());
        let c = hopf_transfer(&|v| fundamental_solution(v), &x, &y, 3, &trunc).unwrap();
        let want = fundamental_solution(&sub(&x, &y)).unwrap() * collapse_constant(3);
        assert!(c.dist(&want) < 1e-12 * want.norm());
    }

    #[test]
    fn literal_equals_transfer_with_g() {
        let (x, y) = ([1.1, 0.3, 0.2], [0.4, 0.9, -0.6]);
        let s = lit(3);
        let a = hopf_kernel(&s, &x, &y).unwrap();
        let b = hopf_transfer(&|v| fundamental_solution(v), &x, &y, 3, &s.trunc).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn transfer_with_g2_matches_geometric_series() {
        let n = 3;
        let (x, y) = ([1.1, 0.3, 0.2], [0.4, 0.9, -0.6]);
        let trunc = TruncationPolicy::with_radius(50);
        let l = hopf_transfer(&|v| higher_order(2, v), &x, &y, n, &trunc).unwrap();
        // G_2(2^j v) = 2^{-j(n-2)} G_2(v): both series are geometric
        let r = 2f64.powi(2 - n as i32);
        let near = higher_order(2, &sub(&x, &y)).unwrap() / (1.0 - r);
        let w = sub(&vector_inverse(&x).unwrap(), &vector_inverse(&y).unwrap());
        let far = fundamental_solution(&x).unwrap()
            * higher_order(2, &w).unwrap()
            * fundamental_solution(&y).unwrap()
            * (r / (1.0 - r));
        let want = near + far * 2f64.powi(2 - 2 * n as i32);
        assert!(l.dist(&want) < 1e-12 * want.norm());
    }

    #[test]
    fn orbit_dilation_structure() {
        let n = 3;
        let s = KernelSpec::hopf(Family::Hopf, n, HopfMode::Orbit);
        let (x, y) = ([1.1, 0.3, 0.2], [0.4, 0.9, -0.6]);
        let k = hopf_kernel(&s, &x, &y).unwrap();
        let k2 = hopf_kernel(&s, &scale(&x, 2.0), &scale(&y, 2.0)).unwrap();
        let want = k * 2f64.powi(1 - n as i32);
        assert!(k2.dist(&want) < 1e-12);
    }

    #[test]
    fn on_orbit_is_singular() {
        let s = lit(3);
        assert!(hopf_kernel(&s, &[1.0, 0.0, 0.0], &[0.25, 0.0, 0.0]).is_err());
        assert!(hopf_kernel(&s, &[0.0; 3], &[0.25, 0.0, 0.0]).is_err());
    }

    #[test]
    fn poisson_is_scalar_and_checks_plane() {
        let s = KernelSpec::hopf(Family::HopfPoisson, 3, HopfMode::Orbit);
        let p = hopf_poisson(&s, &[1.2, 0.4, 0.0], &[0.3, 0.2, 0.8]).unwrap();
        assert!(p.is_finite());
        assert!(hopf_poisson(&s, &[1.2, 0.4, 0.1], &[0.3, 0.2, 0.8]).is_err());
    }
}
