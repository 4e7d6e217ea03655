//! Finite-difference Dirac operators used as residual oracles.
//!
//! Every first-order stencil is a central difference of width `h` combined
//! with one Richardson step `(4 A(h/2) - A(h)) / 3`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::clifford::{blade_sign, Multivector};
use crate::error::{check_dim, Error, Result};

pub const DEFAULT_H: f64 = 1e-3;
pub const NESTED_H: f64 = 5e-3;
const SPHERE_TOL: f64 = 1e-12;

pub type EvalFn = dyn Fn(&[f64]) -> Result<Multivector> + Send + Sync;
pub type DistanceFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A multivector-valued field on `R^dim` with an optional distance-to-singular-set
/// function. Operators refuse to place stencil points near the singular set.
#[derive(Clone)]
pub struct FieldFn {
    dim: usize,
    eval: Arc<EvalFn>,
    singular: Option<Arc<DistanceFn>>,
}

impl fmt::Debug for FieldFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldFn")
            .field("dim", &self.dim)
            .field("has_singular_set", &self.singular.is_some())
            .finish()
    }
}

impl FieldFn {
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&[f64]) -> Result<Multivector> + Send + Sync + 'static,
    {
        FieldFn {
            dim,
            eval: Arc::new(f),
            singular: None,
        }
    }

    pub fn with_singular_distance<D>(mut self, d: D) -> Self
    where
        D: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.singular = Some(Arc::new(d));
        self
    }

    /// Singular set made of isolated points.
    pub fn with_singular_points(self, pts: Vec<Vec<f64>>) -> Self {
        self.with_singular_distance(move |x| {
            pts.iter()
                .map(|p| crate::clifford::norm(&crate::clifford::sub(x, p)))
                .fold(f64::INFINITY, f64::min)
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> Result<Multivector> {
        check_dim(self.dim, x.len())?;
        (self.eval)(x)
    }

    pub fn distance_to_singular(&self, x: &[f64]) -> f64 {
        self.singular.as_ref().map_or(f64::INFINITY, |d| d(x))
    }

    fn check_reach(&self, x: &[f64], reach: f64) -> Result<()> {
        let d = self.distance_to_singular(x);
        if d <= reach {
            return Err(Error::SingularProximity { reach, distance: d });
        }
        Ok(())
    }
}

/// `e_{j+1} · m` without a full product.
pub(crate) fn basis_left_mul(j: usize, m: &Multivector) -> Multivector {
    let bit = 1usize << j;
    let mut out = Multivector::zero(m.dim());
    for (b, v) in m.coeffs().iter().enumerate() {
        if *v != 0.0 {
            out.set(b ^ bit, blade_sign(bit, b) * v);
        }
    }
    out
}

type Eval<'a> = &'a dyn Fn(&[f64]) -> Result<Multivector>;

fn richardson(a_h: Multivector, a_h2: Multivector) -> Multivector {
    (a_h2 * 4.0 - a_h) / 3.0
}

fn dirac_central(f: Eval, x: &[f64], h: f64) -> Result<Multivector> {
    let n = x.len();
    let mut acc: Option<Multivector> = None;
    let mut p = x.to_vec();
    for j in 0..n {
        p[j] = x[j] + h;
        let fp = f(&p)?;
        p[j] = x[j] - h;
        let fm = f(&p)?;
        p[j] = x[j];
        check_dim(n, fp.dim())?;
        let term = basis_left_mul(j, &(fp - fm));
        match acc.as_mut() {
            Some(a) => *a += term,
            None => acc = Some(term),
        }
    }
    Ok(acc.expect("dimension >= 1") / (2.0 * h))
}

fn dirac_stencil(f: Eval, x: &[f64], h: f64) -> Result<Multivector> {
    Ok(richardson(dirac_central(f, x, h)?, dirac_central(f, x, h / 2.0)?))
}

fn dirac_nested(f: Eval, x: &[f64], q: u32, h: f64) -> Result<Multivector> {
    if q == 0 {
        return f(x);
    }
    dirac_stencil(&|z: &[f64]| dirac_nested(f, z, q - 1, h), x, h)
}

/// `D f(x) = Σ e_j ∂_j f(x)`.
pub fn dirac_fd(f: &FieldFn, x: &[f64], h: f64) -> Result<Multivector> {
    check_dim(f.dim(), x.len())?;
    f.check_reach(x, 2.0 * h)?;
    dirac_stencil(&|z: &[f64]| f.eval(z), x, h)
}

/// `D^q f(x)` by nesting the first-order stencil.
pub fn dirac_iter(f: &FieldFn, x: &[f64], q: u32, h: f64) -> Result<Multivector> {
    if q == 0 {
        return Err(Error::InvalidParameter("dirac_iter needs q >= 1".into()));
    }
    check_dim(f.dim(), x.len())?;
    f.check_reach(x, 2.0 * q as f64 * h)?;
    dirac_nested(&|z: &[f64]| f.eval(z), x, q, h)
}

fn laplacian_central(f: Eval, x: &[f64], h: f64) -> Result<Multivector> {
    let f0 = f(x)?;
    let mut acc = f0.clone() * (-2.0 * x.len() as f64);
    let mut p = x.to_vec();
    for j in 0..x.len() {
        p[j] = x[j] + h;
        acc += f(&p)?;
        p[j] = x[j] - h;
        acc += f(&p)?;
        p[j] = x[j];
    }
    Ok(acc / (h * h))
}

/// Componentwise Laplacian `Σ ∂_j^2 f` (five-point stencil, one Richardson step).
pub fn laplacian_fd(f: &FieldFn, x: &[f64], h: f64) -> Result<Multivector> {
    check_dim(f.dim(), x.len())?;
    f.check_reach(x, 2.0 * h)?;
    let ev = |z: &[f64]| f.eval(z);
    Ok(richardson(
        laplacian_central(&ev, x, h)?,
        laplacian_central(&ev, x, h / 2.0)?,
    ))
}

fn rotate(x: &[f64], i: usize, j: usize, t: f64) -> Vec<f64> {
    let (s, c) = t.sin_cos();
    let mut y = x.to_vec();
    y[i] = c * x[i] - s * x[j];
    y[j] = s * x[i] + c * x[j];
    y
}

fn check_on_sphere(x: &[f64], n: usize) -> Result<()> {
    check_dim(n + 1, x.len())?;
    let r = crate::clifford::norm(x);
    if (r - 1.0).abs() > SPHERE_TOL {
        return Err(Error::OffSphere(r));
    }
    Ok(())
}

fn lambda_central(f: Eval, x: &[f64], h: f64) -> Result<Multivector> {
    let dim = x.len();
    let mut acc = Multivector::zero(dim);
    for i in 0..dim {
        for j in i + 1..dim {
            let d = f(&rotate(x, i, j, h))? - f(&rotate(x, i, j, -h))?;
            let eij = Multivector::blade(dim, (1 << i) | (1 << j), 1.0);
            acc += eij * d;
        }
    }
    Ok(acc / (2.0 * h))
}

fn spherical_dirac_inner(f: Eval, x: &[f64], n: usize, h: f64) -> Result<Multivector> {
    check_on_sphere(x, n)?;
    let lam = richardson(lambda_central(f, x, h)?, lambda_central(f, x, h / 2.0)?);
    Ok(Multivector::from_vector(x) * (lam + f(x)? * (n as f64 / 2.0)))
}

/// `D_s f(x) = x (Λ + n/2) f(x)` on `S^n ⊂ R^{n+1}`, with `Λ` from plane rotations.
pub fn spherical_dirac(f: &FieldFn, x: &[f64], n: usize, h: f64) -> Result<Multivector> {
    check_dim(f.dim(), x.len())?;
    f.check_reach(x, 2.0 * h)?;
    spherical_dirac_inner(&|z: &[f64]| f.eval(z), x, n, h)
}

fn spherical_second(f: &FieldFn, x: &[f64], n: usize, h: f64, sign: f64) -> Result<Multivector> {
    if n <= 2 {
        return Err(Error::InvalidParameter(
            "spherical Laplacian check needs n > 2".into(),
        ));
    }
    check_dim(f.dim(), x.len())?;
    f.check_reach(x, 4.0 * h)?;
    let ev = |z: &[f64]| f.eval(z);
    let inner = |z: &[f64]| -> Result<Multivector> {
        let ds = spherical_dirac_inner(&ev, z, n, h)?;
        Ok(ds + Multivector::from_vector(z) * f.eval(z)? * sign)
    };
    spherical_dirac_inner(&inner, x, n, h)
}

/// `D_s (D_s - x) f`, which annihilates the spherical Green kernel when
/// `D_s = x (Λ + n/2)`. It equals `D'(D' + x) f` for the opposite-sign
/// operator `D' = x^{-1}(Λ + n/2)`.
pub fn spherical_laplacian_check(f: &FieldFn, x: &[f64], n: usize, h: f64) -> Result<Multivector> {
    spherical_second(f, x, n, h, -1.0)
}

/// `D_s (D_s + x) f` with `D_s = x (Λ + n/2)` taken literally.
pub fn spherical_laplacian_literal(f: &FieldFn, x: &[f64], n: usize, h: f64) -> Result<Multivector> {
    spherical_second(f, x, n, h, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Operator {
    Dirac,
    DiracSquared,
    Laplacian,
    SphericalDirac { n: usize },
    SphericalLaplacian { n: usize },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ResidualSummary {
    /// Residual norm per input point; `None` where the point was skipped.
    pub per_point: Vec<Option<f64>>,
    pub skipped: Vec<usize>,
    pub max: Option<f64>,
    pub mean: Option<f64>,
}

/// Applies `op` to `f` at each point and summarizes the residual norms.
/// Points too close to the singular set are skipped and listed.
pub fn residual_scan(f: &FieldFn, points: &[Vec<f64>], op: Operator, h: f64) -> ResidualSummary {
    let mut out = ResidualSummary::default();
    for (i, x) in points.iter().enumerate() {
        let r = match op {
            Operator::Dirac => dirac_fd(f, x, h),
            Operator::DiracSquared => dirac_iter(f, x, 2, h),
            Operator::Laplacian => laplacian_fd(f, x, h),
            Operator::SphericalDirac { n } => spherical_dirac(f, x, n, h),
            Operator::SphericalLaplacian { n } => spherical_laplacian_check(f, x, n, h),
        };
        match r {
            Ok(m) => out.per_point.push(Some(m.norm())),
            Err(_) => {
                out.per_point.push(None);
                out.skipped.push(i);
            }
        }
    }
    let vals: Vec<f64> = out.per_point.iter().flatten().copied().collect();
    if !vals.is_empty() {
        out.max = Some(vals.iter().fold(0.0, |a: f64, v| a.max(*v)));
        out.mean = Some(vals.iter().sum::<f64>() / vals.len() as f64);
    }
    out
}
