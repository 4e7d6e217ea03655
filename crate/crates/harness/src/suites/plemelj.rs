use conflat_core::clifford::sub;
use conflat_core::kernels::{cauchy_normalization, fundamental_solution, hopf_kernel, rp_kernel, BundleSign, Family, HopfMode};
use conflat_core::quadrature::surface::SphereGeometry;
use conflat_core::quadrature::{plemelj_limit, principal_value, NormalTransport, PlemeljParams};
use conflat_core::{FieldFn, KernelSpec, Multivector, Result};

use super::rel;
use super::rp::{parity_field, tilted, CAP_ANGLE};
use crate::runner::{CheckDef, Outcome};

fn euclid(x: &[f64], y: &[f64]) -> Result<Multivector> {
    fundamental_solution(&sub(x, y))
}

pub fn checks() -> Vec<CheckDef> {
    vec![
        // jump = f(w) times the reproduction constant 1
        CheckDef::at_most("c11.plemelj.euclidean_jump", 11, 5e-2, |_| {
            let g = SphereGeometry::euclidean(vec![0.0; 3], 1.0)?;
            let w = [0.0, 0.6, 0.8];
            let p = PlemeljParams::default();
            let fields = [
                FieldFn::new(3, |_| Ok(Multivector::one(3))),
                FieldFn::new(3, |x| Ok(Multivector::from_vector(&[x[0], -x[1], 0.0]))),
            ];
            let mut out = Outcome::default();
            for (i, f) in fields.iter().enumerate() {
                let r = plemelj_limit(&euclid, &g, f, &w, cauchy_normalization(3), &p)?;
                let fw = f.eval(&w)?;
                let jump = rel(r.jump.dist(&fw), fw.norm());
                out.insert(format!("f{i}.jump_error"), jump);
                out.insert(format!("f{i}.mean_vs_pv"), rel(r.mean.dist(&r.principal_value.value), fw.norm()));
                out.value = out.value.max(jump);
            }
            Ok(out)
        }),
        // on S_1 ∪ -S_1 the limits average to twice the primary-sheet P.V.
        CheckDef::at_most("c11.plemelj.rp_plus_symmetric", 11, 5e-2, |_| {
            let n = 2;
            let axis = tilted(n, 0, 0.0);
            let primary = SphereGeometry::latitude(&axis, CAP_ANGLE)?;
            let doubled = primary.clone().with_antipodal(NormalTransport::Plus)?;
            let w = tilted(n, 0, CAP_ANGLE);
            let f = parity_field(n, tilted(n, 1, 1.4), BundleSign::Plus);
            let k = |x: &[f64], y: &[f64]| rp_kernel(x, y, n, BundleSign::Plus, 1);
            let omega = cauchy_normalization(n);
            let p = PlemeljParams::default();
            let r = plemelj_limit(&k, &doubled, &f, &w, omega, &p)?;
            let pv1 = principal_value(&k, &primary, &f, &w, omega, &p)?.value;
            let fw = f.eval(&w)?;
            let mean = rel(r.mean.dist(&(&pv1 * 2.0)), fw.norm());
            let jump = rel(r.jump.dist(&(&fw * 2.0)), fw.norm());
            let half_eta = rel(r.mean.dist(&(&pv1 * 2.0 + &fw * 0.5)), fw.norm());
            Ok(Outcome::new(mean.max(jump))
                .with("mean_vs_2pv", mean)
                .with("jump_vs_2f", jump)
                .with("mean_vs_2pv_plus_half_f", half_eta))
        }),
        // value 0 when the flag is raised
        CheckDef::at_most("c11.plemelj.hopf_no_hardy_split", 11, 0.0, |_| {
            let spec = KernelSpec::hopf(Family::Hopf, 3, HopfMode::Orbit);
            let k = move |x: &[f64], y: &[f64]| hopf_kernel(&spec, x, y);
            let f = FieldFn::new(3, |_| Ok(Multivector::one(3)));
            let p = PlemeljParams {
                dilation_quotient: true,
                ..PlemeljParams::default()
            };
            let g = SphereGeometry::euclidean(vec![0.0; 3], 2.0)?;
            let w = [0.0, 1.2, 1.6];
            let r = plemelj_limit(&k, &g, &f, &w, cauchy_normalization(3), &p)?;
            let off = SphereGeometry::euclidean(vec![1.5, 0.0, 0.0], 0.4)?;
            let control = plemelj_limit(&k, &off, &f, &[1.5, 0.0, 0.4], cauchy_normalization(3), &p)?;
            Ok(Outcome::new(if r.no_hardy_split { 0.0 } else { 1.0 })
                .with("jump_norm", r.jump.norm())
                .with("control_flag", if control.no_hardy_split { 1.0 } else { 0.0 }))
        }),
    ]
}
