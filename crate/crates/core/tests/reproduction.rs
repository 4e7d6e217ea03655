//! Reproduction constants are kernel properties: they do not move with the
//! surface, the evaluation point or the test function.

use conflat_core::clifford::{norm, scale, sub};
use conflat_core::kernels::hopf::collapse_constant;
use conflat_core::kernels::{cauchy_normalization, cot_kernel, fundamental_solution, Family, HopfMode};
use conflat_core::quadrature::formulas::{hopf_reproduce, reproduction_constant};
use conflat_core::quadrature::{cauchy_reproduce, Surface, SurfaceDesc};
use conflat_core::{FieldFn, KernelSpec, Multivector, Result};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Config {
    surface: Surface,
    y: Vec<f64>,
    f: FieldFn,
}

fn unit(rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..3).map(|_| rng.random_range(-1.0..1.0)).collect();
        let r = norm(&v);
        if r > 0.1 && r <= 1.0 {
            return scale(&v, 1.0 / r);
        }
    }
}

/// Sphere around `center` with radius in `radii`, `y` inside, `f = G(x - y0) c`
/// with `y0` outside.
fn config(rng: &mut ChaCha8Rng, center: Vec<f64>, radii: (f64, f64)) -> Result<Config> {
    let radius = rng.random_range(radii.0..radii.1);
    let surface = Surface::from_desc(&SurfaceDesc::EuclideanSphere {
        center: center.clone(),
        radius,
        nodes: [32, 64],
    })?;
    let y: Vec<f64> = center.iter().zip(unit(rng)).map(|(c, u)| c + 0.4 * radius * u).collect();
    let y0: Vec<f64> = center.iter().zip(unit(rng)).map(|(c, u)| c + 2.0 * radius * u).collect();
    let c = Multivector::one(3) * rng.random_range(0.5..1.5) + Multivector::blade(3, 0b101, rng.random_range(-1.0..1.0));
    let p = y0.clone();
    let f = FieldFn::new(3, move |x| Ok(fundamental_solution(&sub(x, &y0))? * &c)).with_singular_points(vec![p]);
    Ok(Config { surface, y, f })
}

fn spread(cs: &[f64]) -> f64 {
    let lo = cs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = cs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

fn measure<F>(seed: u64, center: &[f64], radii: (f64, f64), mut run: F) -> Vec<f64>
where
    F: FnMut(&Config) -> Result<Multivector>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..5)
        .map(|_| {
            let cfg = config(&mut rng, center.to_vec(), radii).unwrap();
            let r = run(&cfg).unwrap();
            reproduction_constant(&r, &cfg.f.eval(&cfg.y).unwrap())
        })
        .collect()
}

#[test]
fn euclidean_constant_is_one() {
    let k = |x: &[f64], y: &[f64]| fundamental_solution(&sub(x, y));
    let cs = measure(1, &[0.2, -0.1, 0.3], (0.5, 1.5), |c| {
        cauchy_reproduce(&k, &c.surface, &c.f, &c.y, cauchy_normalization(3))
    });
    assert!(spread(&cs) < 1e-3, "{cs:?}");
    assert!((cs[0] - 1.0).abs() < 1e-3, "{cs:?}");
}

#[test]
fn cylinder_constant_is_one() {
    let spec = KernelSpec::lattice(Family::Cot, 3, 1, 1, 0);
    let k = move |x: &[f64], y: &[f64]| cot_kernel(&spec, x, y);
    let cs = measure(2, &[0.5, 0.3, -0.2], (0.1, 0.3), |c| {
        cauchy_reproduce(&k, &c.surface, &c.f, &c.y, cauchy_normalization(3))
    });
    assert!(spread(&cs) < 1e-3, "{cs:?}");
    assert!((cs[0] - 1.0).abs() < 1e-3, "{cs:?}");
}

#[test]
fn hopf_constants_per_mode() {
    for (mode, want) in [(HopfMode::Orbit, 1.0), (HopfMode::Literal, collapse_constant(3))] {
        let spec = KernelSpec::hopf(Family::Hopf, 3, mode);
        let cs = measure(3, &[1.5, 0.0, 0.0], (0.2, 0.45), |c| hopf_reproduce(&spec, &c.surface, &c.f, &c.y));
        assert!(spread(&cs) < 1e-3, "{mode:?} {cs:?}");
        assert!((cs[0] - want).abs() < 1e-3, "{mode:?} {cs:?}");
    }
}
