use conflat_core::clifford::sub;
use conflat_core::diffops::{dirac_fd, DEFAULT_H};
use conflat_core::kernels::fundamental_solution;
use conflat_core::moebius::{apply_moebius, pullback_field, pullback_monogenic, validate_vahlen, VahlenMatrix};
use conflat_core::{FieldFn, Multivector};

use super::in_shell;
use crate::runner::{CheckDef, Ctx, Outcome};

const N: usize = 3;
const FLOOR: f64 = 1e-9;
const Y0: [f64; 3] = [6.0, 1.0, 0.0];
const Y1: [f64; 3] = [0.0, -5.0, 2.0];

fn test_functions() -> Vec<(&'static str, FieldFn)> {
    let c = Multivector::one(N) * 0.5 + Multivector::blade(N, 0b011, 1.0) - Multivector::basis_vector(N, 2);
    let c5 = c.clone();
    vec![
        ("constant", FieldFn::new(N, move |_| Ok(c.clone()))),
        ("x1e1-x2e2", FieldFn::new(N, |x| Ok(Multivector::from_vector(&[x[0], -x[1], 0.0])))),
        (
            "x1-x2e12",
            FieldFn::new(N, |x| Ok(Multivector::scalar(N, x[0]) - Multivector::blade(N, 0b011, x[1]))),
        ),
        (
            "cauchy_y0",
            FieldFn::new(N, |x| fundamental_solution(&sub(x, &Y0))).with_singular_points(vec![Y0.to_vec()]),
        ),
        (
            "cauchy_y1_times_const",
            FieldFn::new(N, move |x| Ok(fundamental_solution(&sub(x, &Y1))? * &c5))
                .with_singular_points(vec![Y1.to_vec()]),
        ),
    ]
}

fn transforms() -> Vec<(&'static str, VahlenMatrix)> {
    vec![
        ("translation", VahlenMatrix::translation(&[0.3, -0.2, 0.1])),
        ("dilation", VahlenMatrix::dilation(N, 2.0)),
        ("kelvin", VahlenMatrix::kelvin(N)),
    ]
}

fn points(ctx: &mut Ctx) -> Vec<Vec<f64>> {
    (0..8).map(|_| in_shell(&mut ctx.rng, N, 0.5, 2.0)).collect()
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        // value is the worst pullback / (10 max(base, floor)); pass at <= 1
        CheckDef::at_most("c05.covariance.pullback_residual_ratio", 5, 1.0, |ctx| {
            let pts = points(ctx);
            let mut out = Outcome::default();
            for (mname, m) in transforms() {
                let v = validate_vahlen(&m);
                if !v.pass {
                    return Err(conflat_core::Error::InvalidVahlen(mname.to_string()));
                }
                for (fname, f) in test_functions() {
                    let pb = pullback_field(&m, &f);
                    let (mut base, mut pull) = (0.0f64, 0.0f64);
                    for x in &pts {
                        let y = apply_moebius(&m, x)?;
                        base = base.max(dirac_fd(&f, &y, DEFAULT_H)?.norm());
                        pull = pull.max(dirac_fd(&pb, x, DEFAULT_H)?.norm());
                    }
                    let ratio = pull / (10.0 * base.max(FLOOR));
                    out.insert(format!("{mname}.{fname}.base"), base);
                    out.insert(format!("{mname}.{fname}.pullback"), pull);
                    out.value = out.value.max(ratio);
                }
            }
            Ok(out)
        }),
        CheckDef::at_most("c05.covariance.sign_duality", 5, 0.0, |ctx| {
            let pts = points(ctx);
            let mut worst = 0.0f64;
            for (_, m) in transforms() {
                let neg = m.neg();
                for (_, f) in test_functions() {
                    for x in &pts {
                        let (a, b) = (apply_moebius(&m, x)?, apply_moebius(&neg, x)?);
                        worst = worst.max(a.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max));
                        let (p, q) = (pullback_monogenic(&m, &f, x)?, pullback_monogenic(&neg, &f, x)?);
                        worst = worst.max((p + q).max_abs());
                    }
                }
            }
            Ok(Outcome::new(worst))
        }),
    ]
}
