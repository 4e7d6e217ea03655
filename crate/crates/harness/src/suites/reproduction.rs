use conflat_core::clifford::sub;
use conflat_core::kernels::{cauchy_normalization, fundamental_solution};
use conflat_core::quadrature::{cauchy_reproduce, Surface, SurfaceDesc};
use conflat_core::{FieldFn, Multivector, Result};

use super::{in_shell, rel};
use crate::runner::{CheckDef, Ctx, Outcome};

fn euclid(x: &[f64], y: &[f64]) -> Result<Multivector> {
    fundamental_solution(&sub(x, y))
}

fn unit_sphere() -> Result<Surface> {
    Surface::from_desc(&SurfaceDesc::EuclideanSphere {
        center: vec![0.0; 3],
        radius: 1.0,
        nodes: [64, 128],
    })
}

fn interior_error(ctx: &mut Ctx, f: &FieldFn) -> Result<f64> {
    let s = unit_sphere()?;
    let w = cauchy_normalization(3);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let y = in_shell(&mut ctx.rng, 3, 0.0, 0.5);
        let fy = f.eval(&y)?;
        let r = cauchy_reproduce(&euclid, &s, f, &y, w)?;
        worst = worst.max(rel(r.dist(&fy), fy.norm()));
    }
    Ok(worst)
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef::at_most("c04.reproduction.constant", 4, 1e-7, |ctx| {
            let f = FieldFn::new(3, |_| Ok(Multivector::one(3)));
            Ok(Outcome::new(interior_error(ctx, &f)?).with("points", 5.0))
        }),
        CheckDef::at_most("c04.reproduction.linear", 4, 1e-7, |ctx| {
            let f = FieldFn::new(3, |x| Ok(Multivector::from_vector(&[x[0], -x[1], 0.0])));
            Ok(Outcome::new(interior_error(ctx, &f)?).with("points", 5.0))
        }),
        CheckDef::at_most("c04.reproduction.exterior_zero", 4, 1e-8, |ctx| {
            let s = unit_sphere()?;
            let w = cauchy_normalization(3);
            let fs = [
                FieldFn::new(3, |_| Ok(Multivector::one(3))),
                FieldFn::new(3, |x| Ok(Multivector::from_vector(&[x[0], -x[1], 0.0]))),
            ];
            let mut worst = 0.0f64;
            for _ in 0..5 {
                let y = in_shell(&mut ctx.rng, 3, 2.0, 3.0);
                for f in &fs {
                    worst = worst.max(cauchy_reproduce(&euclid, &s, f, &y, w)?.norm());
                }
            }
            Ok(Outcome::new(worst).with("points", 5.0))
        }),
    ]
}
