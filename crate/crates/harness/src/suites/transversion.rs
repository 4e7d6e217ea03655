use conflat_core::clifford::{norm, sub, vector_inverse};
use conflat_core::kernels::cot::lattice_distance;
use conflat_core::kernels::{cauchy_normalization, fundamental_solution, transversion_kernel, Family};
use conflat_core::quadrature::formulas::reproduction_constant;
use conflat_core::quadrature::{cauchy_reproduce, Surface, SurfaceDesc};
use conflat_core::{FieldFn, KernelSpec, Multivector, Result};
use rand::RngExt;
use rand_chacha::ChaCha8Rng;

use super::{in_shell, rel};
use crate::converge::convergence_study;
use crate::runner::{CheckDef, Outcome};

const N: usize = 3;

fn spec(k: usize, l: usize) -> KernelSpec {
    KernelSpec::lattice(Family::Transversion, N, 1, k, l).with_radius(20)
}

/// `x (m x + 1)^{-1}`, computed as `(x^{-1} + m)^{-1}`.
fn transversion(x: &[f64], m: &[f64]) -> Result<Vec<f64>> {
    let xi = vector_inverse(x)?;
    vector_inverse(&xi.iter().zip(m).map(|(a, b)| a + b).collect::<Vec<_>>())
}

/// `m x + 1` and its norm to the power `n`.
fn factor(m: &[f64], x: &[f64]) -> (Multivector, f64) {
    let c = Multivector::from_vector(m) * Multivector::from_vector(x) + Multivector::one(N);
    let d = c.norm().powi(N as i32);
    (c, d)
}

fn random_m(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    loop {
        let m: Vec<f64> = (0..N).map(|i| if i < k { rng.random_range(-2i64..=2) as f64 } else { 0.0 }).collect();
        if norm(&m) > 0.0 {
            return m;
        }
    }
}

/// Pair whose inverted separation stays away from the lattice.
fn pair(rng: &mut ChaCha8Rng, k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    loop {
        let x = in_shell(rng, N, 0.5, 2.0);
        let y = in_shell(rng, N, 0.5, 2.0);
        let w = sub(&vector_inverse(&x)?, &vector_inverse(&y)?);
        if lattice_distance(&w, k) > 0.2 {
            return Ok((x, y));
        }
    }
}

fn automorphy(rng: &mut ChaCha8Rng, k: usize, l: usize) -> Result<f64> {
    let s = spec(k, l);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let (x, y) = pair(rng, k)?;
        let m = random_m(rng, k);
        let (u, v) = (transversion(&x, &m)?, transversion(&y, &m)?);
        let (cx, dx) = factor(&m, &x);
        let (cy, dy) = factor(&m, &y);
        let lhs = cx.reverse() * transversion_kernel(&s, &u, &v)? * cy * (1.0 / (dx * dy));
        let rhs = transversion_kernel(&s, &x, &y)?;
        worst = worst.max(rel(lhs.dist(&rhs), rhs.norm()));
    }
    Ok(worst)
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef::at_most("c10.transversion.automorphy", 10, 1e-10, |ctx| {
            let mut out = Outcome::default();
            for (k, l) in [(1, 0), (1, 1), (2, 0), (2, 2)] {
                let r = automorphy(&mut ctx.rng, k, l)?;
                out.insert(format!("k{k}l{l}"), r);
                out.value = out.value.max(r);
            }
            Ok(out)
        }),
        CheckDef::at_most("c10.transversion.m0_term", 10, 1e-12, |ctx| {
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let (x, y) = pair(&mut ctx.rng, 1)?;
                let w = sub(&vector_inverse(&x)?, &vector_inverse(&y)?);
                let t = fundamental_solution(&x)? * fundamental_solution(&w)? * fundamental_solution(&y)?;
                let g = fundamental_solution(&sub(&x, &y))?;
                worst = worst.max(rel((t + &g).norm(), g.norm()));
            }
            Ok(Outcome::new(worst).with("pairs", 100.0))
        }),
        // expected -1: the m = 0 term is -G(x - y)
        CheckDef::reported("c10.transversion.reproduction_constant", 10, -1.0, |_| {
            let s = Surface::from_desc(&SurfaceDesc::EuclideanSphere {
                center: vec![0.0, 0.5, 0.0],
                radius: 0.1,
                nodes: [32, 64],
            })?;
            let y = [0.02, 0.52, -0.01];
            let y0 = vec![0.3, 0.9, 0.2];
            let p = y0.clone();
            let f = FieldFn::new(N, move |x| fundamental_solution(&sub(x, &y0))).with_singular_points(vec![p]);
            let fy = f.eval(&y)?;
            let mut out = Outcome::default();
            for k in [1, 2] {
                let sp = spec(k, 0);
                let kern = move |x: &[f64], y: &[f64]| transversion_kernel(&sp, x, y);
                let r = cauchy_reproduce(&kern, &s, &f, &y, cauchy_normalization(N))?;
                let c = reproduction_constant(&r, &fy);
                out.insert(format!("k{k}.constant"), c);
                out.insert(format!("k{k}.off_multiple"), rel(r.dist(&(&fy * c)), fy.norm()));
                if k == 1 {
                    out.value = c;
                }
            }
            Ok(out)
        }),
        // count of rows beyond R = 10 whose step fails to shrink
        CheckDef::at_most("c10.transversion.monotone_convergence", 10, 0.0, |_| {
            let s = KernelSpec::lattice(Family::Transversion, N, 1, 1, 0);
            let x = [0.4, 0.6, -0.3];
            let y = [-0.5, 0.3, 0.7];
            let t = convergence_study(&s, &x, &y, &[10, 20, 40, 80, 160, 320])
                .map_err(|e| conflat_core::Error::InvalidParameter(e.to_string()))?;
            let mut violations = 0.0;
            for w in t.rows.windows(2) {
                if w[0].radius < 10 {
                    continue;
                }
                let delta_up = w[1].delta > w[0].delta;
                let step_up = matches!((w[0].step, w[1].step), (Some(a), Some(b)) if b > a);
                if delta_up || step_up {
                    violations += 1.0;
                }
            }
            Ok(Outcome::new(violations)
                .with("fitted_order", t.fitted_order().unwrap_or(f64::NAN)))
        }),
    ]
}
