use conflat_core::diffops::{spherical_dirac, spherical_laplacian_check, spherical_laplacian_literal, DEFAULT_H, NESTED_H};
use conflat_core::kernels::{sphere_cauchy, sphere_green};
use conflat_core::{FieldFn, Multivector};

use super::{unit, unit_away};
use crate::runner::{CheckDef, Outcome};

pub(crate) fn cauchy_field(y: Vec<f64>, n: usize) -> FieldFn {
    let p = y.clone();
    FieldFn::new(n + 1, move |x| sphere_cauchy(x, &y, n)).with_singular_points(vec![p])
}

pub(crate) fn green_field(y: Vec<f64>, n: usize) -> FieldFn {
    let p = y.clone();
    FieldFn::new(n + 1, move |x| Ok(Multivector::scalar(n + 1, sphere_green(x, &y, n)?)))
        .with_singular_points(vec![p])
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef::at_most("c03.spherical.dirac_cauchy_s2", 3, 1e-5, |ctx| {
            let y = unit(&mut ctx.rng, 3);
            let f = cauchy_field(y.clone(), 2);
            let mut worst = 0.0f64;
            for _ in 0..20 {
                let x = unit_away(&mut ctx.rng, &y, 0.9);
                worst = worst.max(spherical_dirac(&f, &x, 2, DEFAULT_H)?.norm());
            }
            Ok(Outcome::new(worst).with("points", 20.0))
        }),
        CheckDef::at_most("c03.spherical.laplacian_green_s3", 3, 1e-3, |ctx| {
            let y = unit(&mut ctx.rng, 4);
            let f = green_field(y.clone(), 3);
            let mut worst = 0.0f64;
            let mut literal = 0.0f64;
            for _ in 0..10 {
                let x = unit_away(&mut ctx.rng, &y, 0.9);
                worst = worst.max(spherical_laplacian_check(&f, &x, 3, NESTED_H)?.norm());
                literal = literal.max(spherical_laplacian_literal(&f, &x, 3, NESTED_H)?.norm());
            }
            // the literal sign convention does not annihilate the kernel
            Ok(Outcome::new(worst).with("points", 10.0).with("literal_sign_residual", literal))
        }),
    ]
}
