use conflat_core::diffops::{dirac_iter, NESTED_H};
use conflat_core::kernels::cot::lattice_distance;
use conflat_core::kernels::{semidirect_kernel, tail_estimate, BundleSign, Family};
use conflat_core::{FieldFn, KernelSpec, Result};
use rand_chacha::ChaCha8Rng;

use super::torus::{base_point, field_point};
use crate::runner::{CheckDef, Outcome};

fn spec(n: usize, q: usize, k: usize, l: usize, sign: BundleSign) -> KernelSpec {
    KernelSpec::lattice(Family::Semidirect, n, q, k, l).with_radius(40).with_sign(sign)
}

fn neg(v: &[f64]) -> Vec<f64> {
    v.iter().map(|t| -t).collect()
}

/// Distance from `x` to the singular set `±y + Z^k`.
fn singular_distance(x: &[f64], y: &[f64], k: usize) -> f64 {
    let a: Vec<f64> = x.iter().zip(y).map(|(p, q)| p - q).collect();
    let b: Vec<f64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
    lattice_distance(&a, k).min(lattice_distance(&b, k))
}

fn point(rng: &mut ChaCha8Rng, y: &[f64], k: usize) -> Vec<f64> {
    loop {
        let x = field_point(rng, y, k);
        if singular_distance(&x, y, k) > 0.2 {
            return x;
        }
    }
}

/// Worst `|K(-x, y) - s K(x, y)|` and `|K(x, -y) + s K(x, y)|` over a few points.
fn parity(rng: &mut ChaCha8Rng, s: &KernelSpec) -> Result<(f64, f64)> {
    let y = base_point(s.n);
    let sg = s.bundle_sign.sign();
    let (mut ex, mut ey) = (0.0f64, 0.0f64);
    for _ in 0..4 {
        let x = point(rng, &y, s.k);
        let kx = semidirect_kernel(s, &x, &y)?;
        ex = ex.max(semidirect_kernel(s, &neg(&x), &y)?.dist(&(&kx * sg)));
        ey = ey.max(semidirect_kernel(s, &x, &neg(&y))?.dist(&(&kx * -sg)));
    }
    Ok((ex, ey))
}

fn tag(sign: BundleSign) -> &'static str {
    match sign {
        BundleSign::Plus => "plus",
        BundleSign::Minus => "minus",
    }
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        // value is the worst defect / (2 tail estimate); pass at <= 1
        CheckDef::at_most("c12.semidirect.parity", 12, 1.0, |ctx| {
            let mut out = Outcome::default();
            for (n, k, l) in [(3, 1, 0), (3, 1, 1), (3, 2, 1)] {
                for sign in [BundleSign::Plus, BundleSign::Minus] {
                    let s = spec(n, 1, k, l, sign);
                    let tail = tail_estimate(&s)?;
                    let (ex, ey) = parity(&mut ctx.rng, &s)?;
                    let t = format!("n{n}k{k}l{l}.{}", tag(sign));
                    out.insert(format!("{t}.x_defect"), ex);
                    out.insert(format!("{t}.y_defect"), ey);
                    out.value = out.value.max(ex.max(ey) / (2.0 * tail));
                }
            }
            Ok(out)
        }),
        CheckDef::at_most("c12.semidirect.green_dirac_squared", 12, 1e-3, |ctx| {
            let mut out = Outcome::default();
            for l in [0, 1] {
                for sign in [BundleSign::Plus, BundleSign::Minus] {
                    let s = spec(4, 2, 1, l, sign);
                    let y = base_point(4);
                    let (sp, yy, yd) = (s.clone(), y.clone(), y.clone());
                    let f = FieldFn::new(4, move |x| semidirect_kernel(&sp, x, &yy))
                        .with_singular_distance(move |x| singular_distance(x, &yd, 1));
                    let mut worst = 0.0f64;
                    for _ in 0..2 {
                        let x = point(&mut ctx.rng, &y, 1);
                        worst = worst.max(dirac_iter(&f, &x, 2, NESTED_H)?.norm());
                    }
                    out.insert(format!("l{l}.{}", tag(sign)), worst);
                    out.value = out.value.max(worst);
                }
            }
            Ok(out)
        }),
    ]
}
