use conflat_core::diffops::{dirac_fd, dirac_iter, DEFAULT_H, NESTED_H};
use conflat_core::kernels::{fundamental_solution, higher_order};
use conflat_core::FieldFn;

use super::{in_shell, rel};
use crate::runner::{CheckDef, Ctx, Outcome};

const DIMS: [usize; 3] = [3, 4, 5];
const POINTS: usize = 20;

fn points(ctx: &mut Ctx, n: usize) -> Vec<Vec<f64>> {
    (0..POINTS).map(|_| in_shell(&mut ctx.rng, n, 0.5, 2.0)).collect()
}

fn gq(n: usize, q: usize) -> FieldFn {
    FieldFn::new(n, move |x| higher_order(q, x)).with_singular_points(vec![vec![0.0; n]])
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef::at_most("c02.fundamental.dirac_g", 2, 1e-8, |ctx| {
            let mut out = Outcome::default();
            for n in DIMS {
                let f = FieldFn::new(n, fundamental_solution).with_singular_points(vec![vec![0.0; n]]);
                let mut worst = 0.0f64;
                for x in points(ctx, n) {
                    worst = worst.max(dirac_fd(&f, &x, DEFAULT_H)?.norm());
                }
                out.insert(format!("n{n}"), worst);
                out.value = out.value.max(worst);
            }
            Ok(out)
        }),
        CheckDef::at_most("c02.fundamental.dirac_g2_relative", 2, 1e-5, |ctx| {
            let mut out = Outcome::default();
            for n in DIMS {
                let f = gq(n, 2);
                let mut worst = 0.0f64;
                for x in points(ctx, n) {
                    let want = higher_order(1, &x)? * (2.0 - n as f64);
                    worst = worst.max(rel(dirac_fd(&f, &x, DEFAULT_H)?.dist(&want), want.norm()));
                }
                out.insert(format!("n{n}"), worst);
                out.value = out.value.max(worst);
            }
            Ok(out)
        }),
        CheckDef::at_most("c02.fundamental.dirac2_g2", 2, 1e-4, |ctx| {
            let mut out = Outcome::default();
            for n in DIMS {
                let f = gq(n, 2);
                let mut worst = 0.0f64;
                for x in points(ctx, n) {
                    worst = worst.max(dirac_iter(&f, &x, 2, NESTED_H)?.norm());
                }
                out.insert(format!("n{n}"), worst);
                out.value = out.value.max(worst);
            }
            Ok(out)
        }),
    ]
}
