use conflat_core::clifford::{norm, scale, sub};
use conflat_core::diffops::{dirac_fd, DEFAULT_H};
use conflat_core::kernels::cot::lattice_distance;
use conflat_core::kernels::hopf::collapse_constant;
use conflat_core::kernels::lattice::sign_character;
use conflat_core::kernels::{
    cot_kernel, enumerate_shells, fundamental_solution, half_lattice, hopf_kernel, tail_estimate, Family, HopfMode,
};
use conflat_core::{FieldFn, KernelSpec};
use proptest::prelude::*;

#[test]
fn shells_cover_the_cube() {
    for k in 1..=3 {
        for r in 0..=4usize {
            let total: usize = enumerate_shells(k, r).iter().map(|s| s.len()).sum();
            assert_eq!(total, (2 * r + 1).pow(k as u32), "k={k} r={r}");
            assert_eq!(half_lattice(k, r).len(), ((2 * r + 1).pow(k as u32) - 1) / 2);
        }
    }
}

#[test]
fn collapse_constant_in_three_dimensions() {
    // (1 - 1/64) / (1 - 1/4)
    assert!((collapse_constant(3) - 1.3125).abs() < 1e-15);
}

#[test]
fn literal_hopf_is_scaled_cauchy_kernel() {
    let s = KernelSpec::hopf(Family::Hopf, 3, HopfMode::Literal);
    let (x, y) = ([0.7, -0.2, 0.4], [-0.3, 0.9, 0.5]);
    let k = hopf_kernel(&s, &x, &y).unwrap();
    let want = fundamental_solution(&sub(&x, &y)).unwrap() * collapse_constant(3);
    assert!(k.dist(&want) < 1e-12 * want.norm());
}

#[test]
fn orbit_hopf_is_monogenic() {
    let s = KernelSpec::hopf(Family::Hopf, 3, HopfMode::Orbit);
    let y = vec![-0.3, 0.9, 0.5];
    let f = FieldFn::new(3, move |x| hopf_kernel(&s, x, &y));
    let x = [0.7, -0.2, 0.4];
    let r = dirac_fd(&f, &x, DEFAULT_H).unwrap();
    assert!(r.norm() < 1e-5 * f.eval(&x).unwrap().norm());
}

#[test]
fn cot_rejects_lattice_translate_of_y() {
    let s = KernelSpec::lattice(Family::Cot, 3, 1, 2, 0);
    assert!(cot_kernel(&s, &[1.1, -1.0, 0.3], &[0.1, 0.0, 0.3]).is_err());
}

fn off_lattice(k: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.5f64..0.5, 3).prop_filter("away from lattice", move |v| lattice_distance(v, k) > 0.15)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cot_periodicity_within_tail(v in off_lattice(2), l in 0usize..=2) {
        let s = KernelSpec::lattice(Family::Cot, 3, 1, 2, l).with_radius(30);
        let y = [0.0; 3];
        let tail = tail_estimate(&s).unwrap();
        let k0 = cot_kernel(&s, &v, &y).unwrap();
        for j in 0..2 {
            let mut vs = v.clone();
            vs[j] += 1.0;
            let mut m = vec![0i64; 2];
            m[j] = 1;
            let d = cot_kernel(&s, &vs, &y).unwrap().dist(&(&k0 * sign_character(&m, l)));
            prop_assert!(d <= 2.0 * tail, "j={} defect {} tail {}", j, d, tail);
        }
    }

    #[test]
    fn cauchy_kernel_is_homogeneous(v in off_lattice(0), t in 0.5f64..4.0) {
        prop_assume!(norm(&v) > 0.1);
        let g = fundamental_solution(&v).unwrap();
        let gt = fundamental_solution(&scale(&v, t)).unwrap();
        prop_assert!(gt.dist(&(&g * t.powi(-2))) <= 1e-12 * g.norm() * t.powi(-2));
    }
}
