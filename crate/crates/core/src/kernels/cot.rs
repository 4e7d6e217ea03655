//! Lattice-periodized kernels `cot_{q,k,l}` and their semidirect symmetrizations.
//!
//! All sums run over sup-norm shells of `Z^k ⊂ R^n` (the first `k`
//! coordinates) in the canonical paired order of [`super::lattice`]. Each
//! shell is accumulated separately and shells are then combined in order, so
//! the result does not depend on how the work is scheduled.

use crate::clifford::{sub, Multivector, MAX_DIM};
use crate::error::{check_dim, Error, Result};
use crate::kernels::euclid::{accumulate_gq, hierarchy_norm};
use crate::kernels::lattice::{sign_character, visit_half_shell};
use crate::kernels::spec::{Family, KernelSpec, Regime};
use crate::sum::KahanPara;

/// Distance from `v` to the nearest point of `Z^k × {0}`.
pub fn lattice_distance(v: &[f64], k: usize) -> f64 {
    v.iter()
        .enumerate()
        .map(|(i, t)| {
            let d = if i < k { t - t.round() } else { *t };
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

fn ensure_off_lattice(v: &[f64], k: usize, what: &str) -> Result<()> {
    if lattice_distance(v, k) < 1e-12 {
        return Err(Error::OnSingularSet(format!("{what} lies on the lattice orbit")));
    }
    Ok(())
}

/// `G_q(v) + Σ_{ω ∈ Λ_k, |ω| ≤ R} s(ω) (G_q(v + ω) + G_q(v - ω))`.
///
/// This is the canonical symmetric-shell sum over all of `Z^k` and also the
/// literal critical-regime pairing.
pub(crate) fn paired_sum(n: usize, q: usize, k: usize, l: usize, v: &[f64], radius: usize) -> KahanPara {
    let mut total = KahanPara::new(n);
    accumulate_gq(&mut total, v, n, q, 1.0);
    let mut wp = [0.0; MAX_DIM];
    let mut wm = [0.0; MAX_DIM];
    for s in 1..=radius as i64 {
        let mut shell = KahanPara::new(n);
        visit_half_shell(k, s, |m| {
            let sg = sign_character(m, l);
            wp[..n].copy_from_slice(v);
            wm[..n].copy_from_slice(v);
            for i in 0..k {
                wp[i] += m[i] as f64;
                wm[i] -= m[i] as f64;
            }
            accumulate_gq(&mut shell, &wp[..n], n, q, sg);
            accumulate_gq(&mut shell, &wm[..n], n, q, sg);
        });
        total.add_para(&shell.value());
    }
    total
}

/// Telescoped supercritical sum
/// `G(v-a) - G(v-b) + Σ_{m ≠ 0} s(m) [G(v-a+m) - G(v-b+m) - G(m-a) + G(m-b)]`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn telescoped_sum(
    n: usize,
    q: usize,
    k: usize,
    l: usize,
    v: &[f64],
    a: &[f64],
    b: &[f64],
    radius: usize,
) -> KahanPara {
    let va = sub(v, a);
    let vb = sub(v, b);
    let na: Vec<f64> = a.iter().map(|t| -t).collect();
    let nb: Vec<f64> = b.iter().map(|t| -t).collect();
    let mut total = KahanPara::new(n);
    accumulate_gq(&mut total, &va, n, q, 1.0);
    accumulate_gq(&mut total, &vb, n, q, -1.0);
    let mut w = [0.0; MAX_DIM];
    let mut term = |acc: &mut KahanPara, base: &[f64], m: &[i64], dir: f64, f: f64| {
        w[..n].copy_from_slice(base);
        for i in 0..k {
            w[i] += dir * m[i] as f64;
        }
        accumulate_gq(acc, &w[..n], n, q, f);
    };
    for s in 1..=radius as i64 {
        let mut shell = KahanPara::new(n);
        visit_half_shell(k, s, |m| {
            let sg = sign_character(m, l);
            for dir in [1.0, -1.0] {
                term(&mut shell, &va, m, dir, sg);
                term(&mut shell, &vb, m, dir, -sg);
                term(&mut shell, &na, m, dir, -sg);
                term(&mut shell, &nb, m, dir, sg);
            }
        });
        total.add_para(&shell.value());
    }
    total
}

fn check_lattice_spec(spec: &KernelSpec) -> Result<Regime> {
    if !matches!(spec.family, Family::Cot | Family::Semidirect) {
        return Err(Error::InvalidParameter(format!(
            "expected a cot or semidirect spec, got {:?}",
            spec.family
        )));
    }
    spec.validate()?;
    spec.regime()
}

/// `cot_{q,k,l}` evaluated at the separation `v = x - y`.
pub fn cot_at(spec: &KernelSpec, v: &[f64]) -> Result<Multivector> {
    let reg = check_lattice_spec(spec)?;
    check_dim(spec.n, v.len())?;
    let (n, q, k, l, r) = (spec.n, spec.q, spec.k, spec.l, spec.trunc.radius);
    let acc = match reg {
        Regime::Generic | Regime::Critical => {
            ensure_off_lattice(v, k, "x - y")?;
            paired_sum(n, q, k, l, v, r)
        }
        Regime::Supercritical => {
            ensure_off_lattice(&sub(v, &spec.a), k, "x - y - a")?;
            ensure_off_lattice(&sub(v, &spec.b), k, "x - y - b")?;
            telescoped_sum(n, q, k, l, v, &spec.a, &spec.b, r)
        }
    };
    Ok(acc.to_multivector())
}

pub fn cot_kernel(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<Multivector> {
    check_dim(spec.n, x.len())?;
    check_dim(spec.n, y.len())?;
    cot_at(spec, &sub(x, y))
}

/// `cot_{q,k,l}` divided by the hierarchy constant `Π λ_i`, so that
/// `D` maps the normalized order-`q` kernel to the normalized order-`q-1` one.
pub fn cot_kernel_normalized(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<Multivector> {
    Ok(cot_kernel(spec, x, y)? / hierarchy_norm(spec.n, spec.q))
}

/// `cot(x, y) ± cot(-x, y)` with the sign from `bundle_sign`.
pub fn semidirect_kernel(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<Multivector> {
    let xm: Vec<f64> = x.iter().map(|t| -t).collect();
    Ok(cot_kernel(spec, x, y)? + cot_kernel(spec, &xm, y)? * spec.bundle_sign.sign())
}

/// Calibrated constant of the tail bound, `k 2^k`.
pub fn tail_constant(k: usize) -> f64 {
    k as f64 * 2f64.powi(k as i32)
}

fn tail_exponent(spec: &KernelSpec, paired: bool) -> Result<i32> {
    match spec.regime()? {
        Regime::Generic | Regime::Critical => {}
        Regime::Supercritical => {
            return Err(Error::NotApplicable(
                "no tail bound for the telescoped supercritical form".into(),
            ))
        }
    }
    let base = spec.k as i32 - (spec.n as i32 - spec.q as i32);
    // pairing only gains an order for odd (vector-valued) kernels
    Ok(if paired && spec.q % 2 == 1 { base - 1 } else { base })
}

/// Tail bound `C R^{k-(n-q)-1}` for the symmetric-shell summation actually used.
pub fn tail_estimate(spec: &KernelSpec) -> Result<f64> {
    let p = tail_exponent(spec, true)?;
    Ok(tail_constant(spec.k) * (spec.trunc.radius as f64).powi(p))
}

/// Tail bound `C R^{k-(n-q)}` for unpaired summation (generic regime only).
pub fn unpaired_tail_estimate(spec: &KernelSpec) -> Result<f64> {
    if spec.regime()? != Regime::Generic {
        return Err(Error::NotApplicable(
            "unpaired sums converge only in the generic regime".into(),
        ));
    }
    let p = tail_exponent(spec, false)?;
    Ok(tail_constant(spec.k) * (spec.trunc.radius as f64).powi(p))
}

/// Predicted algebraic rate of `|S_R - S_∞|` for the paired sum: `n - q - k`,
/// plus one for odd `q` (pair cancellation), plus one per sign-alternating direction.
pub fn predicted_order(spec: &KernelSpec) -> Result<f64> {
    match spec.regime()? {
        Regime::Supercritical => Err(Error::NotApplicable(
            "telescoped supercritical form has no predicted order".into(),
        )),
        _ => Ok((spec.n as i64 - spec.q as i64 - spec.k as i64
            + (spec.q % 2) as i64
            + spec.l as i64) as f64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, q: usize, k: usize, l: usize, r: usize) -> KernelSpec {
        KernelSpec::lattice(Family::Cot, n, q, k, l).with_radius(r)
    }

    #[test]
    fn symmetric_half_period_sum_vanishes() {
        // v = e1/2, k = 1: the terms pair up as G(v+m) with G(v-m-1), so the
        // symmetric sum leaves only the outermost boundary term
        let s = spec(3, 1, 1, 0, 200);
        let c = cot_at(&s, &[0.5, 0.0, 0.0]).unwrap();
        let edge = 1.0 / (200.5f64 * 200.5);
        assert!((c.get(1) - edge).abs() < 1e-12, "{}", c.get(1));
    }

    #[test]
    fn matches_direct_summation() {
        let s = spec(3, 1, 2, 1, 6);
        let v = [0.31, -0.17, 0.42];
        let mut direct = Multivector::zero(3);
        // reference: plain double loop over the box in a different order
        for m1 in -6i64..=6 {
            for m2 in -6i64..=6 {
                let w = [v[0] + m1 as f64, v[1] + m2 as f64, v[2]];
                let sg = if m1.abs() % 2 == 0 { 1.0 } else { -1.0 };
                direct += crate::kernels::euclid::fundamental_solution(&w).unwrap() * sg;
            }
        }
        let c = cot_at(&s, &v).unwrap();
        assert!(c.dist(&direct) < 1e-13);
    }

    #[test]
    fn on_lattice_is_singular() {
        let s = spec(3, 1, 1, 0, 10);
        assert!(matches!(
            cot_kernel(&s, &[1.2, 0.0, 0.0], &[0.2, 0.0, 0.0]),
            Err(Error::OnSingularSet(_))
        ));
    }

    #[test]
    fn supercritical_is_finite_and_regime_checked() {
        let s = spec(3, 2, 2, 0, 20);
        assert_eq!(s.regime().unwrap(), Regime::Supercritical);
        let c = cot_at(&s, &[0.1, 0.3, 0.2]).unwrap();
        assert!(c.is_finite());
        assert!(cot_at(&spec(3, 2, 2, 0, 20), &[0.5, 0.0, 0.0]).is_err());
    }

    #[test]
    fn tail_estimates() {
        let a = tail_estimate(&spec(3, 1, 1, 0, 40)).unwrap();
        let b = tail_estimate(&spec(3, 1, 1, 0, 80)).unwrap();
        assert!(b <= a / 4.0 + 1e-18);
        let c = tail_estimate(&spec(3, 1, 2, 0, 40)).unwrap();
        let d = tail_estimate(&spec(3, 1, 2, 0, 80)).unwrap();
        assert!(c.is_finite() && d < c);
        assert!(matches!(
            tail_estimate(&spec(3, 2, 2, 0, 40)),
            Err(Error::NotApplicable(_))
        ));
        assert!(unpaired_tail_estimate(&spec(3, 1, 2, 0, 40)).is_err());
    }

    #[test]
    fn semidirect_parity_exact() {
        let x = [0.2, 0.1, -0.3];
        let y = [0.05, -0.2, 0.1];
        let xm = [-0.2, -0.1, 0.3];
        for sign in [crate::kernels::spec::BundleSign::Plus, crate::kernels::spec::BundleSign::Minus] {
            let s = KernelSpec::lattice(Family::Semidirect, 3, 1, 1, 0)
                .with_radius(20)
                .with_sign(sign);
            let a = semidirect_kernel(&s, &x, &y).unwrap();
            let b = semidirect_kernel(&s, &xm, &y).unwrap();
            assert!((a - b * sign.sign()).norm() < 1e-14);
        }
    }
}
