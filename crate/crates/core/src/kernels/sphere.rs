//! Kernels on `S^n ⊂ R^{n+1}` and on `RP^n` lifted to `S^n`.

use crate::clifford::{norm, sub, Multivector};
use crate::error::{check_dim, Error, Result};
use crate::kernels::euclid::inv_pow;
use crate::kernels::spec::BundleSign;

const SPHERE_TOL: f64 = 1e-12;

fn on_sphere(p: &[f64], n: usize) -> Result<()> {
    check_dim(n + 1, p.len())?;
    let r = norm(p);
    if (r - 1.0).abs() > SPHERE_TOL {
        return Err(Error::OffSphere(r));
    }
    Ok(())
}

fn separation(x: &[f64], y: &[f64], n: usize) -> Result<Vec<f64>> {
    on_sphere(x, n)?;
    on_sphere(y, n)?;
    let v = sub(x, y);
    if norm(&v) < 1e-14 {
        return Err(Error::OnSingularSet("x = y on the sphere".into()));
    }
    Ok(v)
}

/// Cauchy kernel for the spherical Dirac operator: `(x - y) / |x - y|^n`.
pub fn sphere_cauchy(x: &[f64], y: &[f64], n: usize) -> Result<Multivector> {
    let v = separation(x, y, n)?;
    let r2: f64 = v.iter().map(|t| t * t).sum();
    Ok(Multivector::from_vector(&v) * inv_pow(r2, n))
}

/// Green kernel for the spherical Laplacian: `1 / ((n-2) |x - y|^{n-2})`, `n > 2`.
pub fn sphere_green(x: &[f64], y: &[f64], n: usize) -> Result<f64> {
    if n <= 2 {
        return Err(Error::InvalidParameter("sphere_green needs n > 2".into()));
    }
    let v = separation(x, y, n)?;
    let r2: f64 = v.iter().map(|t| t * t).sum();
    Ok(inv_pow(r2, n - 2) / (n - 2) as f64)
}

/// `RP^n` kernels: order 1 gives `G_s(x,y) ± G_s(-x,y)`, order 2 gives `H_s(x,y) ± H_s(-x,y)`.
pub fn rp_kernel(x: &[f64], y: &[f64], n: usize, bundle: BundleSign, order: u32) -> Result<Multivector> {
    let xm: Vec<f64> = x.iter().map(|v| -v).collect();
    let s = bundle.sign();
    match order {
        1 => Ok(sphere_cauchy(x, y, n)? + sphere_cauchy(&xm, y, n)? * s),
        2 => Ok(Multivector::scalar(
            n + 1,
            sphere_green(x, y, n)? + s * sphere_green(&xm, y, n)?,
        )),
        _ => Err(Error::InvalidParameter(format!("rp kernel order {order} not in {{1, 2}}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const E1: [f64; 3] = [1.0, 0.0, 0.0];
    const E2: [f64; 3] = [0.0, 1.0, 0.0];

    #[test]
    fn cauchy_examples() {
        let g = sphere_cauchy(&E1, &[-1.0, 0.0, 0.0], 2).unwrap();
        assert_eq!(g, Multivector::basis_vector(3, 0) * 0.5);
        let g = sphere_cauchy(&E1, &E2, 2).unwrap();
        let want = Multivector::from_vector(&[0.5, -0.5, 0.0]);
        assert!(g.dist(&want) < 1e-15);
    }

    #[test]
    fn green_examples() {
        let e1 = [1.0, 0.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0, 0.0];
        assert!((sphere_green(&e1, &[-1.0, 0.0, 0.0, 0.0], 3).unwrap() - 0.5).abs() < 1e-15);
        assert!((sphere_green(&e1, &e2, 3).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(sphere_green(&E1, &E2, 2).is_err());
    }

    #[test]
    fn rp_examples() {
        let p = rp_kernel(&E1, &E2, 2, BundleSign::Plus, 1).unwrap();
        assert!(p.dist(&Multivector::from_vector(&[0.0, -1.0, 0.0])) < 1e-15);
        let m = rp_kernel(&E1, &E2, 2, BundleSign::Minus, 1).unwrap();
        assert!(m.dist(&Multivector::from_vector(&[1.0, 0.0, 0.0])) < 1e-15);
        let g = rp_kernel(&[1.0, 0.0, 0.0, 0.0], &[0.0, 1.0, 0.0, 0.0], 3, BundleSign::Minus, 2)
            .unwrap();
        assert!(g.norm() < 1e-15);
    }

    #[test]
    fn off_sphere_and_singular() {
        assert!(matches!(
            sphere_cauchy(&[1.0, 1.0, 0.0], &E2, 2),
            Err(Error::OffSphere(_))
        ));
        assert!(matches!(
            sphere_cauchy(&E1, &E1, 2),
            Err(Error::OnSingularSet(_))
        ));
        assert!(rp_kernel(&E1, &[-1.0, 0.0, 0.0], 2, BundleSign::Plus, 1).is_err());
    }
}
