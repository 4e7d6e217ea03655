use conflat_core::diffops::{dirac_fd, DEFAULT_H};
use conflat_core::kernels::cot::{lattice_distance, predicted_order};
use conflat_core::kernels::lattice::sign_character;
use conflat_core::kernels::{cot_kernel, tail_estimate, Family};
use conflat_core::quadrature::formulas::higher_order_reproduce;
use conflat_core::quadrature::{Surface, SurfaceDesc};
use conflat_core::{FieldFn, KernelSpec, Result};
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use super::rel;
use crate::converge::convergence_study;
use crate::runner::{CheckDef, Outcome};

pub(crate) const CONFIGS: [(usize, usize, usize); 6] = [(3, 1, 0), (3, 1, 1), (3, 2, 0), (3, 2, 1), (3, 2, 2), (4, 2, 1)];

fn tag(n: usize, k: usize, l: usize) -> String {
    format!("n{n}k{k}l{l}")
}

pub(crate) fn base_point(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.1 + 0.07 * i as f64).collect()
}

/// Point whose separation from `y` stays at least `0.2` away from `Z^k`.
pub(crate) fn field_point(rng: &mut ChaCha8Rng, y: &[f64], k: usize) -> Vec<f64> {
    loop {
        let x: Vec<f64> = (0..y.len())
            .map(|i| if i < k { rng.random_range(0.0..1.0) } else { rng.random_range(-0.5..0.5) })
            .collect();
        let v: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        if lattice_distance(&v, k) > 0.2 {
            return x;
        }
    }
}

/// Worst `|K(x + e_j, y) - s_j K(x, y)|` over `j < k`.
pub(crate) fn periodicity(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    let kx = cot_kernel(spec, x, y)?;
    let mut worst = 0.0f64;
    for j in 0..spec.k {
        let mut xs = x.to_vec();
        xs[j] += 1.0;
        let mut m = vec![0i64; spec.k];
        m[j] = 1;
        worst = worst.max(cot_kernel(spec, &xs, y)?.dist(&(&kx * sign_character(&m, spec.l))));
    }
    Ok(worst)
}

pub(crate) fn kernel_field(spec: KernelSpec, y: Vec<f64>) -> FieldFn {
    let (s, yy, k) = (spec.clone(), y.clone(), spec.k);
    FieldFn::new(spec.n, move |x| cot_kernel(&s, x, &yy)).with_singular_distance(move |x| {
        let v: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
        lattice_distance(&v, k)
    })
}

fn higher_order(n: usize, q: usize) -> Result<Outcome> {
    let spec = KernelSpec::lattice(Family::Cot, n, q, 1, 0);
    let mut center = vec![0.0; n];
    center[0] = 0.5;
    center[1] = 0.5;
    let s = Surface::from_desc(&SurfaceDesc::EuclideanSphere {
        center: center.clone(),
        radius: 0.4,
        nodes: if n == 3 { [32, 64] } else { [16, 32] },
    })?;
    let mut y = center.clone();
    y[0] += 0.1;
    y[1] -= 0.05;
    let mut y0 = vec![0.0; n];
    y0[1] = -0.3;
    y0[2] = -0.4;
    let f = kernel_field(spec.clone(), y0);
    let fy = f.eval(&y)?;
    let tol = 2.0 * tail_estimate(&spec)?;
    let r = higher_order_reproduce(&spec, &s, &f, &y, DEFAULT_H, tol)?;
    Ok(Outcome::new(rel(r.dist(&fy), fy.norm())).with("nodes", s.nodes.len() as f64))
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        // value is the worst defect / (2 tail estimate); pass at <= 1
        CheckDef::at_most("c07.torus.periodicity_vs_tail", 7, 1.0, |ctx| {
            let mut out = Outcome::default();
            for (n, k, l) in CONFIGS {
                let spec = KernelSpec::lattice(Family::Cot, n, 1, k, l).with_radius(40);
                let tail = tail_estimate(&spec)?;
                let y = base_point(n);
                let mut worst = 0.0f64;
                for _ in 0..4 {
                    let x = field_point(&mut ctx.rng, &y, k);
                    worst = worst.max(periodicity(&spec, &x, &y)?);
                }
                out.insert(format!("{}.defect", tag(n, k, l)), worst);
                out.insert(format!("{}.tail", tag(n, k, l)), tail);
                out.value = out.value.max(worst / (2.0 * tail));
            }
            Ok(out)
        }),
        CheckDef::at_most("c07.torus.monogenicity", 7, 1e-4, |ctx| {
            let mut out = Outcome::default();
            for (n, k, l) in CONFIGS {
                let spec = KernelSpec::lattice(Family::Cot, n, 1, k, l);
                let y = base_point(n);
                let f = kernel_field(spec, y.clone());
                let mut worst = 0.0f64;
                for _ in 0..4 {
                    let x = field_point(&mut ctx.rng, &y, k);
                    worst = worst.max(dirac_fd(&f, &x, DEFAULT_H)?.norm());
                }
                out.insert(tag(n, k, l), worst);
                out.value = out.value.max(worst);
            }
            Ok(out)
        }),
        CheckDef::at_most("c07.torus.higher_order_q1", 7, 1e-4, |_| higher_order(3, 1))
            .kernel(KernelSpec::lattice(Family::Cot, 3, 1, 1, 0)),
        CheckDef::at_most("c07.torus.higher_order_q2", 7, 1e-3, |_| higher_order(4, 2))
            .kernel(KernelSpec::lattice(Family::Cot, 4, 2, 1, 0)),
        CheckDef::at_most("c07.torus.convergence_order", 7, 0.3, |_| {
            let mut out = Outcome::default();
            for (n, k, l) in CONFIGS {
                let spec = KernelSpec::lattice(Family::Cot, n, 1, k, l);
                let x = base_point(n);
                let mut y = vec![0.0; n];
                y[0] = -0.2;
                let t = convergence_study(&spec, &x, &y, &[10, 20, 40, 80, 160])
                    .map_err(|e| conflat_core::Error::InvalidParameter(e.to_string()))?;
                let fitted = t.fitted_order().unwrap_or(f64::NAN);
                let predicted = predicted_order(&spec)?;
                out.insert(format!("{}.fitted", tag(n, k, l)), fitted);
                out.insert(format!("{}.predicted", tag(n, k, l)), predicted);
                let gap = (fitted - predicted).abs();
                out.value = if gap.is_nan() { f64::NAN } else { out.value.max(gap) };
            }
            Ok(out)
        }),
    ]
}
