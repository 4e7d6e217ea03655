use conflat_core::clifford::{scale, sub};
use conflat_core::diffops::{dirac_fd, DEFAULT_H};
use conflat_core::kernels::hopf::collapse_constant;
use conflat_core::kernels::{fundamental_solution, hopf_kernel, Family, HopfMode};
use conflat_core::quadrature::formulas::{hopf_reproduce, reproduction_constant};
use conflat_core::quadrature::{Surface, SurfaceDesc};
use conflat_core::{FieldFn, KernelSpec, Result};
use rand_chacha::ChaCha8Rng;

use super::{in_shell, rel};
use crate::runner::{CheckDef, Outcome};

fn spec(n: usize, mode: HopfMode) -> KernelSpec {
    KernelSpec::hopf(Family::Hopf, n, mode)
}

/// Pair with `x` not on the dyadic orbit of `y`.
fn pair(rng: &mut ChaCha8Rng, n: usize) -> (Vec<f64>, Vec<f64>) {
    loop {
        let x = in_shell(rng, n, 0.5, 3.0);
        let y = in_shell(rng, n, 0.5, 3.0);
        let near = (-4..=4).any(|j: i32| conflat_core::clifford::norm(&sub(&x, &scale(&y, 2f64.powi(j)))) < 0.2);
        if !near {
            return (x, y);
        }
    }
}

fn dilation_ratio(s: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    let c = hopf_kernel(s, x, y)?;
    let c2 = hopf_kernel(s, &scale(x, 2.0), &scale(y, 2.0))?;
    Ok(reproduction_constant(&c2, &c))
}

fn reproduction(mode: HopfMode) -> Result<(f64, f64)> {
    let n = 3;
    let s = Surface::from_desc(&SurfaceDesc::EuclideanSphere {
        center: vec![1.5, 0.0, 0.0],
        radius: 0.4,
        nodes: [32, 64],
    })?;
    let y = [1.6, 0.1, 0.0];
    let y0 = vec![1.5, 1.2, 0.0];
    let p = y0.clone();
    let f = FieldFn::new(n, move |x| fundamental_solution(&sub(x, &y0))).with_singular_points(vec![p]);
    let fy = f.eval(&y)?;
    let r = hopf_reproduce(&spec(n, mode), &s, &f, &y)?;
    let c = reproduction_constant(&r, &fy);
    Ok((c, rel(r.dist(&(&fy * c)), fy.norm())))
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef::at_most("c09.hopf.literal_collapse", 9, 1e-12, |ctx| {
            let mut out = Outcome::default();
            for n in [3, 4] {
                let c = collapse_constant(n);
                for _ in 0..10 {
                    let (x, y) = pair(&mut ctx.rng, n);
                    let k = hopf_kernel(&spec(n, HopfMode::Literal), &x, &y)?;
                    let want = fundamental_solution(&sub(&x, &y))? * c;
                    out.value = out.value.max(rel(k.dist(&want), want.norm()));
                }
                out.insert(format!("n{n}.closed_form"), c);
            }
            Ok(out)
        }),
        CheckDef::at_most("c09.hopf.literal_dilation_ratio", 9, 1e-10, |ctx| {
            let mut out = Outcome::default();
            for n in [3, 4] {
                let want = 2f64.powi(1 - n as i32);
                let mut worst = 0.0f64;
                let mut last = 0.0;
                for _ in 0..10 {
                    let (x, y) = pair(&mut ctx.rng, n);
                    last = dilation_ratio(&spec(n, HopfMode::Literal), &x, &y)?;
                    worst = worst.max((last - want).abs());
                }
                // distance from the invariance C(2x, 2y) = C(x, y)
                out.insert(format!("n{n}.ratio"), last);
                out.insert(format!("n{n}.invariance_defect"), (last - 1.0).abs());
                out.value = out.value.max(worst);
            }
            Ok(out)
        }),
        CheckDef::reported("c09.hopf.orbit_dilation_ratio", 9, 0.25, |ctx| {
            let (x, y) = pair(&mut ctx.rng, 3);
            let r = dilation_ratio(&spec(3, HopfMode::Orbit), &x, &y)?;
            Ok(Outcome::new(r).with("invariance_defect", (r - 1.0).abs()))
        }),
        CheckDef::at_most("c09.hopf.orbit_monogenicity", 9, 1e-5, |ctx| {
            let n = 3;
            let mut worst = 0.0f64;
            for _ in 0..10 {
                let (x, y) = pair(&mut ctx.rng, n);
                let s = spec(n, HopfMode::Orbit);
                let yy = y.clone();
                let f = FieldFn::new(n, move |z| hopf_kernel(&s, z, &yy));
                worst = worst.max(rel(dirac_fd(&f, &x, DEFAULT_H)?.norm(), f.eval(&x)?.norm()));
            }
            Ok(Outcome::new(worst))
        }),
        CheckDef::at_most("c09.hopf.orbit_reproduction", 9, 1e-5, |_| {
            let (c, resid) = reproduction(HopfMode::Orbit)?;
            Ok(Outcome::new((c - 1.0).abs()).with("constant", c).with("off_multiple", resid))
        }),
        CheckDef::at_most("c09.hopf.literal_reproduction", 9, 1e-6, |_| {
            let (c, resid) = reproduction(HopfMode::Literal)?;
            let want = collapse_constant(3);
            Ok(Outcome::new((c - want).abs())
                .with("constant", c)
                .with("closed_form", want)
                .with("off_multiple", resid))
        }),
    ]
}
