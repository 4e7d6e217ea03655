//! Euclidean fundamental solutions `G` and the iterated hierarchy `G_q`.

use crate::clifford::{norm, Multivector};
use crate::error::{Error, Result};
use crate::sum::KahanPara;

/// Surface area of the unit sphere in `R^n`.
pub fn sphere_area(n: usize) -> f64 {
    use std::f64::consts::PI;
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI * sphere_area(n - 2) / (n - 2) as f64,
    }
}

/// Signed normalization for Cauchy-type formulas with the outward normal.
///
/// With `e_i^2 = -1`, `(1/w) ∫ G(x-y) n(x) f(x) dσ` reproduces `f(y)` for
/// `w = -area(S^{n-1})`; the unsigned area gives `-f(y)`.
pub fn cauchy_normalization(n: usize) -> f64 {
    -sphere_area(n)
}

/// `r^{-p}` from `r^2`.
#[inline]
pub(crate) fn inv_pow(r2: f64, p: usize) -> f64 {
    let half = r2.powi((p / 2) as i32);
    if p % 2 == 0 {
        1.0 / half
    } else {
        1.0 / (half * r2.sqrt())
    }
}

/// Exponent `p` with `G_q = x / |x|^p` (odd `q`) or `1 / |x|^p` (even `q`).
#[inline]
pub(crate) fn gq_exponent(n: usize, q: usize) -> usize {
    if q % 2 == 1 {
        n - q + 1
    } else {
        n - q
    }
}

pub(crate) fn check_order(n: usize, q: usize) -> Result<()> {
    if q == 0 || (q >= n && q != 1) {
        return Err(Error::InvalidParameter(format!(
            "kernel order q = {q} must satisfy 1 <= q <= max(1, n-1) with n = {n}"
        )));
    }
    Ok(())
}

/// Adds `factor * G_q(w)` to a paravector accumulator. `w` must be nonzero.
#[inline]
pub(crate) fn accumulate_gq(acc: &mut KahanPara, w: &[f64], n: usize, q: usize, factor: f64) {
    let r2: f64 = w.iter().map(|v| v * v).sum();
    let c = inv_pow(r2, gq_exponent(n, q)) * factor;
    if q % 2 == 1 {
        acc.add_vector(w, c);
    } else {
        acc.add_scalar(c);
    }
}

/// `G(x) = x / |x|^n`.
pub fn fundamental_solution(x: &[f64]) -> Result<Multivector> {
    higher_order(1, x)
}

/// `G_q(x)`: `x / |x|^{n-q+1}` for odd `q`, `1 / |x|^{n-q}` for even `q`.
pub fn higher_order(q: usize, x: &[f64]) -> Result<Multivector> {
    let n = x.len();
    check_order(n, q)?;
    let r = norm(x);
    if r == 0.0 {
        return Err(Error::OnSingularSet("G_q evaluated at the origin".into()));
    }
    let c = inv_pow(r * r, gq_exponent(n, q));
    Ok(if q % 2 == 1 {
        Multivector::from_vector(x) * c
    } else {
        Multivector::scalar(n, c)
    })
}

/// `λ_q` with `D G_q = λ_q G_{q-1}`: `q - n` for even `q`, `1 - q` for odd `q`.
pub fn hierarchy_factor(n: usize, q: usize) -> f64 {
    if q % 2 == 0 {
        q as f64 - n as f64
    } else {
        1.0 - q as f64
    }
}

/// `Π_{i=2..q} λ_i`, so that `N_q = G_q / norm` satisfies `D N_q = N_{q-1}`.
pub fn hierarchy_norm(n: usize, q: usize) -> f64 {
    (2..=q).map(|i| hierarchy_factor(n, i)).product()
}

/// `G_q` scaled so that the Dirac operator steps down the hierarchy with unit factor.
pub fn normalized_higher_order(q: usize, x: &[f64]) -> Result<Multivector> {
    Ok(higher_order(q, x)? / hierarchy_norm(x.len(), q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn areas() {
        assert!((sphere_area(2) - 2.0 * PI).abs() < 1e-15);
        assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-14);
        assert!((sphere_area(4) - 2.0 * PI * PI).abs() < 1e-14);
        assert!((sphere_area(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn g_on_e1() {
        let g = fundamental_solution(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(g, Multivector::basis_vector(3, 0));
    }

    #[test]
    fn g_at_origin_fails() {
        assert!(matches!(
            fundamental_solution(&[0.0; 3]),
            Err(Error::OnSingularSet(_))
        ));
    }

    #[test]
    fn g2_in_r3_is_inverse_distance() {
        let g = higher_order(2, &[0.0, 3.0, 4.0]).unwrap();
        assert!((g.scalar_part() - 0.2).abs() < 1e-16);
        assert_eq!(g.vector_part(), vec![0.0; 3]);
    }

    #[test]
    fn g3_in_r5() {
        // x / |x|^{n-q+1} = x / |x|^3
        let g = higher_order(3, &[2.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!((g.get(1) - 0.25).abs() < 1e-16);
    }

    #[test]
    fn order_out_of_range() {
        assert!(higher_order(3, &[1.0, 0.0, 0.0]).is_err());
        assert!(higher_order(0, &[1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn hierarchy_constants() {
        assert_eq!(hierarchy_factor(3, 2), -1.0);
        assert_eq!(hierarchy_factor(5, 3), -2.0);
        assert_eq!(hierarchy_factor(5, 4), -1.0);
        assert_eq!(hierarchy_norm(5, 4), (-3.0) * (-2.0) * (-1.0));
    }
}
