use conflat_core::clifford::dot;
use conflat_core::diffops::{spherical_laplacian_check, NESTED_H};
use conflat_core::kernels::{cauchy_normalization, rp_kernel, sphere_cauchy, BundleSign};
use conflat_core::quadrature::formulas::{measure_spherical_normalization, rp_symmetric_identities};
use conflat_core::quadrature::{Surface, SurfaceDesc};
use conflat_core::{FieldFn, Multivector, Result};

use super::{rel, unit};
use crate::runner::{CheckDef, Outcome};

pub(crate) const CAP_ANGLE: f64 = 1.0;

/// Point at geodesic angle `t` from the last axis, tilted towards axis `i`.
pub(crate) fn tilted(n: usize, i: usize, t: f64) -> Vec<f64> {
    let mut p = vec![0.0; n + 1];
    p[n] = t.cos();
    p[i] = t.sin();
    p
}

pub(crate) fn cap(n: usize, nodes: [usize; 2]) -> Result<Surface> {
    Surface::from_desc(&SurfaceDesc::LatitudeSphere {
        axis: tilted(n, 0, 0.0),
        angle: CAP_ANGLE,
        nodes,
        antipodal: None,
    })
}

pub(crate) fn nodes_for(n: usize) -> [usize; 2] {
    if n == 2 {
        [16, 128]
    } else {
        [32, 64]
    }
}

/// `G_s(x, y0) ± G_s(-x, y0)`, with parity matching the bundle.
pub(crate) fn parity_field(n: usize, y0: Vec<f64>, bundle: BundleSign) -> FieldFn {
    let s = bundle.sign();
    let m0: Vec<f64> = y0.iter().map(|v| -v).collect();
    let sing = vec![y0.clone(), m0];
    FieldFn::new(n + 1, move |x| {
        let xm: Vec<f64> = x.iter().map(|v| -v).collect();
        Ok(sphere_cauchy(x, &y0, n)? + sphere_cauchy(&xm, &y0, n)? * s)
    })
    .with_singular_points(sing)
}

fn identities(n: usize) -> Result<Outcome> {
    let s = cap(n, nodes_for(n))?;
    let y = tilted(n, 0, 0.3);
    let y0 = tilted(n, 1, 1.4);
    let omega = cauchy_normalization(n);
    let mut out = Outcome::default();
    for bundle in [BundleSign::Plus, BundleSign::Minus] {
        let f = parity_field(n, y0.clone(), bundle);
        let fy = f.eval(&y)?;
        let (hemi, sym) = rp_symmetric_identities(bundle, &s, &f, &y, omega)?;
        let tag = match bundle {
            BundleSign::Plus => "plus",
            BundleSign::Minus => "minus",
        };
        let h = rel(hemi.dist(&fy), fy.norm());
        let want = match bundle {
            BundleSign::Plus => &fy * 2.0,
            BundleSign::Minus => Multivector::zero(n + 1),
        };
        let d = rel(sym.dist(&want), fy.norm());
        out.insert(format!("{tag}.hemisphere"), h);
        out.insert(format!("{tag}.symmetric"), d);
        out.value = out.value.max(h).max(d);
    }
    let measured = measure_spherical_normalization(&s, &y, &y0)?;
    out.insert("omega.measured", measured);
    out.insert("omega.expected", omega);
    Ok(out)
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef::at_most("c06.rp.identities_s2", 6, 1e-5, |_| identities(2)),
        CheckDef::at_most("c06.rp.identities_s3", 6, 1e-5, |_| identities(3)),
        CheckDef::at_most("c06.rp.green_laplacian_s3", 6, 1e-3, |ctx| {
            let n = 3;
            let y = unit(&mut ctx.rng, n + 1);
            let mut out = Outcome::default();
            for bundle in [BundleSign::Plus, BundleSign::Minus] {
                let yy = y.clone();
                let my: Vec<f64> = y.iter().map(|v| -v).collect();
                let f = FieldFn::new(n + 1, move |x| rp_kernel(x, &yy, n, bundle, 2))
                    .with_singular_points(vec![y.clone(), my]);
                let mut worst = 0.0f64;
                let mut count = 0;
                while count < 10 {
                    let x = unit(&mut ctx.rng, n + 1);
                    if dot(&x, &y).abs() >= 0.9 {
                        continue;
                    }
                    worst = worst.max(spherical_laplacian_check(&f, &x, n, NESTED_H)?.norm());
                    count += 1;
                }
                out.insert(format!("{bundle:?}").to_lowercase(), worst);
                out.value = out.value.max(worst);
            }
            Ok(out)
        }),
    ]
}
