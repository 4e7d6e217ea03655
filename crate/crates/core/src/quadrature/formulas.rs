//! Cauchy-type integral formulas evaluated by surface quadrature.

use crate::clifford::{norm, sub, Multivector};
use crate::diffops::{dirac_iter, FieldFn};
use crate::error::{check_dim, Error, Result};
use crate::kernels::cot::cot_kernel_normalized;
use crate::kernels::euclid::{cauchy_normalization, sphere_area};
use crate::kernels::hopf::hopf_kernel;
use crate::kernels::lattice::sign_character;
use crate::kernels::spec::{BundleSign, Family, KernelSpec};
use crate::kernels::sphere::rp_kernel;
use crate::quadrature::surface::{Ambient, NormalTransport, Surface, SurfaceNode};
use crate::sum::KahanMv;

pub type KernelFn<'a> = &'a dyn Fn(&[f64], &[f64]) -> Result<Multivector>;

/// Weighted compensated sum over nodes in order.
pub fn surface_integral<F>(s: &Surface, integrand: F) -> Result<Multivector>
where
    F: Fn(&SurfaceNode) -> Result<Multivector>,
{
    let mut acc: Option<KahanMv> = None;
    for (i, node) in s.nodes.iter().enumerate() {
        let v = integrand(node)?;
        if !v.is_finite() {
            return Err(Error::NonFinite(i));
        }
        acc.get_or_insert_with(|| KahanMv::new(v.dim())).add(&(v * node.weight));
    }
    acc.map(KahanMv::into_value)
        .ok_or_else(|| Error::Surface("surface has no nodes".into()))
}

/// `(1/omega) ∫_S K(x, y) n(x) f(x) dσ(x)`.
pub fn cauchy_reproduce(kernel: KernelFn, s: &Surface, f: &FieldFn, y: &[f64], omega: f64) -> Result<Multivector> {
    check_dim(s.ambient_dim(), y.len())?;
    let v = surface_integral(s, |nd| {
        let k = kernel(&nd.point, y)?;
        Ok(k * Multivector::from_vector(&nd.normal) * f.eval(&nd.point)?)
    })?;
    Ok(v / omega)
}

/// Scalar `c` minimizing `|value - c expected|`.
pub fn reproduction_constant(value: &Multivector, expected: &Multivector) -> f64 {
    let num: f64 = value.coeffs().iter().zip(expected.coeffs()).map(|(a, b)| a * b).sum();
    num / expected.norm_sq()
}

/// Normalization constant measured on a spherical surface: `∫ G_s(x,y) n f dσ / f(y)`
/// with `f = G_s(·, y0)` and `y0` outside the enclosed cap.
pub fn measure_spherical_normalization(s: &Surface, y: &[f64], y0: &[f64]) -> Result<f64> {
    let n = match s.geometry.ambient {
        Ambient::Sphere { n } => n,
        Ambient::Euclidean { .. } => {
            return Err(Error::Surface("spherical normalization needs a surface on S^n".into()))
        }
    };
    let p = s.primary();
    let y0v = y0.to_vec();
    let f = FieldFn::new(n + 1, move |x| crate::kernels::sphere::sphere_cauchy(x, &y0v, n));
    let k = |x: &[f64], yy: &[f64]| crate::kernels::sphere::sphere_cauchy(x, yy, n);
    let i = cauchy_reproduce(&k, &p, &f, y, 1.0)?;
    Ok(reproduction_constant(&i, &f.eval(y)?))
}

/// Signed Euclidean-style normalization for `S^n`: `-area(S^{n-1})`.
pub fn spherical_normalization(n: usize) -> f64 {
    -sphere_area(n)
}

fn check_parity(f: &FieldFn, s: &Surface, sign: f64) -> Result<()> {
    let step = (s.nodes.len() / 16).max(1);
    for nd in s.nodes.iter().step_by(step) {
        let a = f.eval(&nd.point)?;
        let mx: Vec<f64> = nd.point.iter().map(|v| -v).collect();
        let b = f.eval(&mx)?;
        let defect = (&b - &a * sign).norm();
        if defect > 1e-9 * a.norm().max(1.0) {
            return Err(Error::InvalidParameter(format!(
                "test function parity violated: |f(-x) ∓ f(x)| = {defect:e}"
            )));
        }
    }
    Ok(())
}

/// `RP^n` reproduction on a latitude sphere `S_1` and on `S_1 ∪ -S_1`.
///
/// Returns `(primary-sheet value, symmetric value)`. The symmetric surface
/// carries the normal transported by the bundle of `bundle`. `f` must have
/// parity `f(-x) = ±f(x)` matching the bundle.
pub fn rp_symmetric_identities(
    bundle: BundleSign,
    s: &Surface,
    f: &FieldFn,
    y: &[f64],
    omega: f64,
) -> Result<(Multivector, Multivector)> {
    let n = match s.geometry.ambient {
        Ambient::Sphere { n } => n,
        _ => return Err(Error::Surface("RP^n identities need a surface on S^n".into())),
    };
    let transport = match bundle {
        BundleSign::Plus => NormalTransport::Plus,
        BundleSign::Minus => NormalTransport::Minus,
    };
    let primary = s.primary();
    let sym = primary.geometry.clone().with_antipodal(transport)?;
    let mirrored = Surface {
        nodes: primary
            .nodes
            .iter()
            .cloned()
            .chain(primary.nodes.iter().map(|nd| SurfaceNode {
                point: nd.point.iter().map(|v| -v).collect(),
                normal: nd.normal.iter().map(|v| v * transport.sign()).collect(),
                weight: nd.weight,
                sheet: 1,
            }))
            .collect(),
        geometry: sym,
    };
    check_parity(f, &primary, bundle.sign())?;
    let k = |x: &[f64], yy: &[f64]| rp_kernel(x, yy, n, bundle, 1);
    let hemi = cauchy_reproduce(&k, &primary, f, y, omega)?;
    let full = cauchy_reproduce(&k, &mirrored, f, y, omega)?;
    Ok((hemi, full))
}

fn check_orbit_disjoint(s: &Surface) -> Result<()> {
    match s.geometry.ambient {
        Ambient::Euclidean { .. } if s.geometry.cap.is_none() && s.geometry.radius < 0.5 => Ok(()),
        _ => Err(Error::Surface(
            "lattice formulas need a Euclidean sphere of radius < 1/2 (disjoint translates)".into(),
        )),
    }
}

/// Samples `f(x + e_i) = s_i f(x)` at a few surface nodes.
pub fn periodicity_defect(f: &FieldFn, spec: &KernelSpec, points: &[Vec<f64>]) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in points {
        let fx = f.eval(x)?;
        for i in 0..spec.k {
            let mut xs = x.clone();
            xs[i] += 1.0;
            let mut m = vec![0i64; spec.k];
            m[i] = 1;
            let want = &fx * sign_character(&m, spec.l);
            worst = worst.max(f.eval(&xs)?.dist(&want));
        }
    }
    Ok(worst)
}

/// Higher-order reproduction
/// `(1/ω) ∫ Σ_{j<q} (-1)^j N_{j+1}(x, y) n(x) D^j f(x) dσ(x)`
/// with `N_{j+1}` the normalized `cot_{j+1,k,l}` kernels.
pub fn higher_order_reproduce(
    spec: &KernelSpec,
    s: &Surface,
    f: &FieldFn,
    y: &[f64],
    h: f64,
    periodicity_tol: f64,
) -> Result<Multivector> {
    if spec.family != Family::Cot {
        return Err(Error::InvalidParameter("higher-order formula needs a cot spec".into()));
    }
    spec.validate()?;
    check_orbit_disjoint(s)?;
    check_dim(spec.n, y.len())?;
    let step = (s.nodes.len() / 5).max(1);
    let sample: Vec<Vec<f64>> = s.nodes.iter().step_by(step).map(|n| n.point.clone()).collect();
    let defect = periodicity_defect(f, spec, &sample)?;
    if defect > periodicity_tol {
        return Err(Error::Periodicity {
            defect,
            tol: periodicity_tol,
        });
    }
    let specs: Vec<KernelSpec> = (1..=spec.q)
        .map(|j| {
            let mut sj = spec.clone();
            sj.q = j;
            sj.validate().map(|_| sj)
        })
        .collect::<Result<_>>()?;
    let v = surface_integral(s, |nd| {
        let nx = Multivector::from_vector(&nd.normal);
        let mut acc = Multivector::zero(spec.n);
        for (j, sj) in specs.iter().enumerate() {
            let djf = if j == 0 {
                f.eval(&nd.point)?
            } else {
                dirac_iter(f, &nd.point, j as u32, h)?
            };
            let term = cot_kernel_normalized(sj, &nd.point, y)? * &nx * djf;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        Ok(acc)
    })?;
    Ok(v / cauchy_normalization(spec.n))
}

/// Cauchy formula on the Hopf manifold for a surface inside `1 <= |x| < 2`.
pub fn hopf_reproduce(spec: &KernelSpec, s: &Surface, f: &FieldFn, y: &[f64]) -> Result<Multivector> {
    for nd in &s.nodes {
        let r = norm(&nd.point);
        if !(1.0..2.0).contains(&r) {
            return Err(Error::Surface(format!(
                "node at |x| = {r} outside the fundamental annulus 1 <= |x| < 2"
            )));
        }
    }
    let k = |x: &[f64], yy: &[f64]| hopf_kernel(spec, x, yy);
    cauchy_reproduce(&k, s, f, y, cauchy_normalization(spec.n))
}

/// Finite `Cl_n`-valued measure.
#[derive(Clone, Debug)]
pub struct PointMeasure {
    atoms: Vec<(Vec<f64>, Multivector)>,
}

impl PointMeasure {
    pub fn new(atoms: Vec<(Vec<f64>, Multivector)>) -> Result<Self> {
        for i in 0..atoms.len() {
            for j in 0..i {
                if norm(&sub(&atoms[i].0, &atoms[j].0)) < 1e-14 {
                    return Err(Error::InvalidParameter("atom locations must be distinct".into()));
                }
            }
        }
        Ok(PointMeasure { atoms })
    }

    /// Atoms at `p` and `-p` carrying the same weight.
    pub fn symmetric_pair(p: &[f64], weight: Multivector) -> Result<Self> {
        let mp: Vec<f64> = p.iter().map(|v| -v).collect();
        Self::new(vec![(p.to_vec(), weight.clone()), (mp, weight)])
    }

    pub fn atoms(&self) -> &[(Vec<f64>, Multivector)] {
        &self.atoms
    }
}

/// `Σ K(x, p) w` over the atoms `(p, w)`.
pub fn measure_convolution(kernel: KernelFn, mu: &PointMeasure, x: &[f64]) -> Result<Multivector> {
    let mut acc: Option<KahanMv> = None;
    for (p, w) in &mu.atoms {
        if norm(&sub(x, p)) < 1e-12 {
            return Err(Error::OnSingularSet("evaluation point on an atom".into()));
        }
        let v = kernel(x, p)? * w;
        acc.get_or_insert_with(|| KahanMv::new(v.dim())).add(&v);
    }
    acc.map(KahanMv::into_value)
        .ok_or_else(|| Error::InvalidParameter("empty measure".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::euclid::fundamental_solution;
    use crate::quadrature::surface::SurfaceDesc;
    use std::f64::consts::PI;

    fn unit_sphere(p: usize, a: usize) -> Surface {
        Surface::from_desc(&SurfaceDesc::EuclideanSphere {
            center: vec![0.0; 3],
            radius: 1.0,
            nodes: [p, a],
        })
        .unwrap()
    }

    fn euclid(x: &[f64], y: &[f64]) -> Result<Multivector> {
        fundamental_solution(&sub(x, y))
    }

    #[test]
    fn integrals_on_unit_sphere() {
        let s = unit_sphere(64, 128);
        let one = surface_integral(&s, |_| Ok(Multivector::one(3))).unwrap();
        assert!((one.scalar_part() - 4.0 * PI).abs() < 1e-10);
        let x1sq = surface_integral(&s, |nd| Ok(Multivector::scalar(3, nd.point[0].powi(2)))).unwrap();
        assert!((x1sq.scalar_part() - 4.0 * PI / 3.0).abs() < 1e-8);
        let odd = surface_integral(&s, |nd| Ok(Multivector::scalar(3, nd.point[0]))).unwrap();
        assert!(odd.scalar_part().abs() < 1e-12);
    }

    #[test]
    fn non_finite_names_node() {
        let s = unit_sphere(4, 8);
        let r = surface_integral(&s, |nd| {
            Ok(Multivector::scalar(3, if nd.point[2] > 0.9 { f64::NAN } else { 1.0 }))
        });
        assert!(matches!(r, Err(Error::NonFinite(_))));
    }

    #[test]
    fn euclidean_reproduction() {
        let s = unit_sphere(64, 128);
        let w = cauchy_normalization(3);
        let one = FieldFn::new(3, |_| Ok(Multivector::one(3)));
        let r = cauchy_reproduce(&euclid, &s, &one, &[0.2, 0.0, 0.0], w).unwrap();
        assert!(r.dist(&Multivector::one(3)) < 1e-8);
        let r = cauchy_reproduce(&euclid, &s, &one, &[3.0, 0.0, 0.0], w).unwrap();
        assert!(r.norm() < 1e-8);
        let lin = FieldFn::new(3, |x| Ok(Multivector::from_vector(&[x[0], -x[1], 0.0])));
        let y = [0.1, 0.2, -0.1];
        let r = cauchy_reproduce(&euclid, &s, &lin, &y, w).unwrap();
        assert!(r.dist(&lin.eval(&y).unwrap()) < 1e-7);
    }

    #[test]
    fn measure_convolution_parity() {
        let n = 2;
        let p = [0.6, 0.0, 0.8];
        let wgt = Multivector::one(3) + Multivector::basis_vector(3, 1);
        let mu = PointMeasure::symmetric_pair(&p, wgt).unwrap();
        let x = [0.0, 0.6, 0.8];
        let mx = [0.0, -0.6, -0.8];
        for sign in [BundleSign::Plus, BundleSign::Minus] {
            let k = |a: &[f64], b: &[f64]| rp_kernel(a, b, n, sign, 1);
            let f1 = measure_convolution(&k, &mu, &x).unwrap();
            let f2 = measure_convolution(&k, &mu, &mx).unwrap();
            assert!((f2 - f1 * sign.sign()).norm() < 1e-12);
        }
        let single = PointMeasure::new(vec![(vec![0.0; 3], Multivector::one(3))]).unwrap();
        let v = measure_convolution(&euclid, &single, &[0.5, 0.0, 0.0]).unwrap();
        assert_eq!(v, fundamental_solution(&[0.5, 0.0, 0.0]).unwrap());
        assert!(PointMeasure::new(vec![(vec![0.0; 3], Multivector::one(3)); 2]).is_err());
    }
}
