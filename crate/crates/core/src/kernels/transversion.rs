//! Kernels on quotients by the transversion group `x ↦ x (m x + 1)^{-1}`, `m ∈ Z^k`.
//!
//! Each kernel is `G(x) S(x^{-1} - y^{-1}) G(y)` where `S` is a lattice sum of
//! `G`; the three forms of `S` depend on how `k` compares to `n`.

use crate::clifford::{sub, vector_inverse, Multivector, MAX_DIM};
use crate::error::{check_dim, Error, Result};
use crate::kernels::cot::{lattice_distance, paired_sum, telescoped_sum};
use crate::kernels::euclid::{accumulate_gq, fundamental_solution};
use crate::kernels::lattice::{sign_character, visit_half_shell};
use crate::kernels::spec::{Family, KernelSpec, Regime};
use crate::sum::KahanPara;

/// `G(w) + Σ_{m ≠ 0} s(m) [G(w + m) - G(m)]`, the `k = n - 1` form.
fn subtracted_sum(n: usize, k: usize, l: usize, w: &[f64], radius: usize) -> KahanPara {
    let mut total = KahanPara::new(n);
    accumulate_gq(&mut total, w, n, 1, 1.0);
    let mut buf = [0.0; MAX_DIM];
    let mut lat = [0.0; MAX_DIM];
    for s in 1..=radius as i64 {
        let mut shell = KahanPara::new(n);
        visit_half_shell(k, s, |m| {
            let sg = sign_character(m, l);
            for dir in [1.0, -1.0] {
                buf[..n].copy_from_slice(w);
                lat[..n].iter_mut().for_each(|t| *t = 0.0);
                for i in 0..k {
                    buf[i] += dir * m[i] as f64;
                    lat[i] = dir * m[i] as f64;
                }
                accumulate_gq(&mut shell, &buf[..n], n, 1, sg);
                accumulate_gq(&mut shell, &lat[..n], n, 1, -sg);
            }
        });
        total.add_para(&shell.value());
    }
    total
}

/// The inner series at `w = x^{-1} - y^{-1}`.
pub fn transversion_series(spec: &KernelSpec, w: &[f64]) -> Result<Multivector> {
    if spec.family != Family::Transversion {
        return Err(Error::InvalidParameter(format!(
            "expected a transversion spec, got {:?}",
            spec.family
        )));
    }
    spec.validate()?;
    check_dim(spec.n, w.len())?;
    let (n, k, l, r) = (spec.n, spec.k, spec.l, spec.trunc.radius);
    let acc = match spec.regime()? {
        Regime::Generic => {
            if lattice_distance(w, k) < 1e-12 {
                return Err(Error::OnSingularSet("x^-1 - y^-1 on the lattice".into()));
            }
            paired_sum(n, 1, k, l, w, r)
        }
        Regime::Critical => {
            if lattice_distance(w, k) < 1e-12 {
                return Err(Error::OnSingularSet("x^-1 - y^-1 on the lattice".into()));
            }
            subtracted_sum(n, k, l, w, r)
        }
        Regime::Supercritical => {
            for (p, name) in [(&spec.a, "a"), (&spec.b, "b")] {
                if lattice_distance(&sub(w, p), k) < 1e-12 {
                    return Err(Error::OnSingularSet(format!(
                        "x^-1 - y^-1 - {name} on the lattice"
                    )));
                }
            }
            telescoped_sum(n, 1, k, l, w, &spec.a, &spec.b, r)
        }
    };
    Ok(acc.to_multivector())
}

pub fn transversion_kernel(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<Multivector> {
    check_dim(spec.n, x.len())?;
    check_dim(spec.n, y.len())?;
    let w = sub(&vector_inverse(x)?, &vector_inverse(y)?);
    let s = transversion_series(spec, &w)?;
    Ok(fundamental_solution(x)? * s * fundamental_solution(y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::cot::cot_kernel;

    #[test]
    fn m0_term_is_minus_g() {
        let x = [0.3, -0.7, 0.5];
        let y = [-0.2, 0.4, 0.9];
        let w = sub(&vector_inverse(&x).unwrap(), &vector_inverse(&y).unwrap());
        let t = fundamental_solution(&x).unwrap()
            * fundamental_solution(&w).unwrap()
            * fundamental_solution(&y).unwrap();
        let g = fundamental_solution(&sub(&x, &y)).unwrap();
        assert!((t + g).norm() < 1e-12);
    }

    #[test]
    fn generic_is_kelvin_conjugated_cot() {
        let n = 4;
        let x = [0.3, -0.7, 0.5, 0.2];
        let y = [-0.2, 0.4, 0.9, -0.1];
        let t = KernelSpec::lattice(Family::Transversion, n, 1, 1, 1).with_radius(15);
        let c = KernelSpec::lattice(Family::Cot, n, 1, 1, 1).with_radius(15);
        let xi = vector_inverse(&x).unwrap();
        let yi = vector_inverse(&y).unwrap();
        let want = fundamental_solution(&x).unwrap()
            * cot_kernel(&c, &xi, &yi).unwrap()
            * fundamental_solution(&y).unwrap();
        assert_eq!(transversion_kernel(&t, &x, &y).unwrap(), want);
    }

    #[test]
    fn all_three_regimes_evaluate() {
        let x = [0.3, -0.7, 0.5];
        let y = [-0.2, 0.4, 0.9];
        for k in 1..=3 {
            let s = KernelSpec::lattice(Family::Transversion, 3, 1, k, 0).with_radius(10);
            assert!(transversion_kernel(&s, &x, &y).unwrap().is_finite(), "k={k}");
        }
    }
}
