use conflat_core::diffops::{dirac_fd, dirac_iter, DEFAULT_H, NESTED_H};
use conflat_core::kernels::Family;
use conflat_core::{KernelSpec, Result};

use super::torus::{base_point, field_point, kernel_field, periodicity};
use crate::runner::{CheckDef, Ctx, Outcome};

/// `q = n - k` with pairing; the `1/R` tail needs a large radius to reach `1e-3`.
fn critical_spec() -> KernelSpec {
    KernelSpec::lattice(Family::Cot, 3, 1, 2, 0).with_radius(4000)
}

/// `q = n - k + 1`, telescoped form with the default regularization points.
fn supercritical_spec() -> KernelSpec {
    KernelSpec::lattice(Family::Cot, 3, 2, 2, 0).with_radius(1000)
}

fn periodicity_at(ctx: &mut Ctx, spec: &KernelSpec, points: usize) -> Result<Outcome> {
    let y = base_point(spec.n);
    let mut worst = 0.0f64;
    for _ in 0..points {
        let x = field_point(&mut ctx.rng, &y, spec.k);
        worst = worst.max(periodicity(spec, &x, &y)?);
    }
    Ok(Outcome::new(worst).with("radius", spec.trunc.radius as f64))
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef::at_most("c08.critical.periodicity", 8, 1e-3, |ctx| periodicity_at(ctx, &critical_spec(), 2))
            .kernel(critical_spec()),
        CheckDef::at_most("c08.critical.monogenicity", 8, 1e-3, |ctx| {
            let spec = critical_spec();
            let y = base_point(spec.n);
            let x = field_point(&mut ctx.rng, &y, spec.k);
            let f = kernel_field(spec, y);
            Ok(Outcome::new(dirac_fd(&f, &x, DEFAULT_H)?.norm()))
        })
        .kernel(critical_spec()),
        CheckDef::at_most("c08.supercritical.periodicity", 8, 1e-3, |ctx| {
            periodicity_at(ctx, &supercritical_spec(), 2)
        })
        .kernel(supercritical_spec()),
        CheckDef::at_most("c08.supercritical.dirac_squared", 8, 1e-3, |ctx| {
            let spec = supercritical_spec();
            let y = base_point(spec.n);
            let x = field_point(&mut ctx.rng, &y, spec.k);
            let f = kernel_field(spec, y);
            Ok(Outcome::new(dirac_iter(&f, &x, 2, NESTED_H)?.norm()))
        })
        .kernel(supercritical_spec()),
    ]
}
