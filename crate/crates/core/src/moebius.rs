//! Möbius transformations in Vahlen form `y = (ax + b)(cx + d)^{-1}`.

use serde::Serialize;

use crate::clifford::Multivector;
use crate::diffops::FieldFn;
use crate::error::{check_dim, Error, Result};

pub const VAHLEN_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct VahlenMatrix {
    pub a: Multivector,
    pub b: Multivector,
    pub c: Multivector,
    pub d: Multivector,
}

impl VahlenMatrix {
    pub fn new(a: Multivector, b: Multivector, c: Multivector, d: Multivector) -> Result<Self> {
        let n = a.dim();
        for m in [&b, &c, &d] {
            check_dim(n, m.dim())?;
        }
        Ok(VahlenMatrix { a, b, c, d })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn identity(n: usize) -> Self {
        let (one, zero) = (Multivector::one(n), Multivector::zero(n));
        VahlenMatrix {
            a: one.clone(),
            b: zero.clone(),
            c: zero,
            d: one,
        }
    }

    /// `x ↦ x + t`.
    pub fn translation(t: &[f64]) -> Self {
        let n = t.len();
        VahlenMatrix {
            a: Multivector::one(n),
            b: Multivector::from_vector(t),
            c: Multivector::zero(n),
            d: Multivector::one(n),
        }
    }

    /// `x ↦ λ x` written with pseudo-determinant one: `a = √λ`, `d = 1/√λ`.
    pub fn dilation(n: usize, lambda: f64) -> Self {
        let s = lambda.sqrt();
        VahlenMatrix {
            a: Multivector::scalar(n, s),
            b: Multivector::zero(n),
            c: Multivector::zero(n),
            d: Multivector::scalar(n, 1.0 / s),
        }
    }

    /// `(0, -1; 1, 0)`: `x ↦ -x^{-1} = x / |x|^2`.
    pub fn kelvin(n: usize) -> Self {
        VahlenMatrix {
            a: Multivector::zero(n),
            b: Multivector::scalar(n, -1.0),
            c: Multivector::one(n),
            d: Multivector::zero(n),
        }
    }

    /// `(1, 0; m, 1)`: `x ↦ x (m x + 1)^{-1}`.
    pub fn transversion(m: &[f64]) -> Self {
        let n = m.len();
        VahlenMatrix {
            a: Multivector::one(n),
            b: Multivector::zero(n),
            c: Multivector::from_vector(m),
            d: Multivector::one(n),
        }
    }

    pub fn neg(&self) -> Self {
        VahlenMatrix {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn pseudo_determinant(&self) -> Multivector {
        &self.a * self.d.reverse() - &self.b * self.c.reverse()
    }

    /// Inverse transformation `(~d, -~b; -~c, ~a)` scaled by the pseudo-determinant.
    pub fn inverse(&self) -> Result<Self> {
        let pd = self.pseudo_determinant();
        let s = pd.scalar_part();
        if (pd.norm() - s.abs()).abs() > VAHLEN_TOL || s.abs() < VAHLEN_TOL {
            return Err(Error::InvalidVahlen(format!("pseudo-determinant {pd}")));
        }
        Ok(VahlenMatrix {
            a: self.d.reverse() / s,
            b: -self.b.reverse() / s,
            c: -self.c.reverse() / s,
            d: self.a.reverse() / s,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityCheck {
    pub name: &'static str,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidityReport {
    pub checks: Vec<ValidityCheck>,
    pub pseudo_determinant: f64,
    pub pass: bool,
}

fn non_vector_mass(m: &Multivector) -> f64 {
    m.coeffs()
        .iter()
        .enumerate()
        .filter(|(b, _)| b.count_ones() != 1)
        .fold(0.0, |a, (_, v)| a.max(v.abs()))
}

/// Checks the algebraic conditions on the entries: `a~c, c~d, d~b, b~a`
/// are vectors and `a~d - b~c = ±1`.
pub fn validate_vahlen(m: &VahlenMatrix) -> ValidityReport {
    let mut checks = Vec::new();
    let pairs: [(&'static str, &Multivector, &Multivector); 4] = [
        ("a~c vector", &m.a, &m.c),
        ("c~d vector", &m.c, &m.d),
        ("d~b vector", &m.d, &m.b),
        ("b~a vector", &m.b, &m.a),
    ];
    for (name, p, q) in pairs {
        let r = non_vector_mass(&(p * q.reverse()));
        checks.push(ValidityCheck {
            name,
            residual: r,
            pass: r <= VAHLEN_TOL,
        });
    }
    let pd = m.pseudo_determinant();
    let s = pd.scalar_part();
    let off = pd.coeffs()[1..].iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let r = off.max((s.abs() - 1.0).abs());
    checks.push(ValidityCheck {
        name: "pseudo-determinant ±1",
        residual: r,
        pass: r <= VAHLEN_TOL,
    });
    let pass = checks.iter().all(|c| c.pass);
    ValidityReport {
        checks,
        pseudo_determinant: s,
        pass,
    }
}

fn denominator(m: &VahlenMatrix, x: &[f64]) -> Result<Multivector> {
    check_dim(m.dim(), x.len())?;
    let g = &m.c * Multivector::from_vector(x) + &m.d;
    if g.norm() < 1e-14 {
        return Err(Error::PointAtInfinity);
    }
    Ok(g)
}

/// Inverse of `cx + d`. Near-paravector values are cleaned to grade ≤ 1
/// first; anything else goes through the Clifford-group inverse.
fn invert_denominator(g: &Multivector) -> Result<Multivector> {
    let high = g
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(b, _)| b.count_ones() > 1)
        .fold(0.0f64, |a, (_, v)| a.max(v.abs()));
    if high > 0.0 && high < VAHLEN_TOL * g.norm() {
        let clean = g.grade(0) + g.grade(1);
        return clean.inverse();
    }
    g.inverse()
}

pub fn apply_moebius(m: &VahlenMatrix, x: &[f64]) -> Result<Vec<f64>> {
    let g = denominator(m, x)?;
    let num = &m.a * Multivector::from_vector(x) + &m.b;
    let y = num * invert_denominator(&g)?;
    y.to_vector(VAHLEN_TOL * y.norm().max(1.0))
}

/// Conformal weight: `k = 1` gives `~(cx+d) / |cx+d|^n`, `k = 2` gives `1 / |cx+d|^{n-2}`.
pub fn weight_j(m: &VahlenMatrix, x: &[f64], k: u32) -> Result<Multivector> {
    let n = m.dim();
    if k != 1 && k != 2 {
        return Err(Error::InvalidParameter(format!(
            "conformal weight J_{k} is not supported (only k = 1, 2)"
        )));
    }
    let g = denominator(m, x)?;
    let r = g.norm();
    Ok(if k == 1 {
        g.reverse() / r.powi(n as i32)
    } else {
        Multivector::scalar(n, 1.0 / r.powi(n as i32 - 2))
    })
}

/// `J_1(M, x) f(M x)`, left monogenic whenever `f` is.
pub fn pullback_monogenic(m: &VahlenMatrix, f: &FieldFn, x: &[f64]) -> Result<Multivector> {
    let y = apply_moebius(m, x)?;
    Ok(weight_j(m, x, 1)? * f.eval(&y)?)
}

/// [`pullback_monogenic`] as a field, with singular set pulled back from `f`
/// where possible and the pole of `M` added.
pub fn pullback_field(m: &VahlenMatrix, f: &FieldFn) -> FieldFn {
    let (m1, f1) = (m.clone(), f.clone());
    let (m2, f2) = (m.clone(), f.clone());
    FieldFn::new(m.dim(), move |x| pullback_monogenic(&m1, &f1, x)).with_singular_distance(
        move |x| {
            // distance to the pole is estimated from |cx + d| relative to |c|
            let g = match denominator(&m2, x) {
                Ok(g) => g,
                Err(_) => return 0.0,
            };
            let cn = m2.c.norm();
            let pole = if cn > 0.0 { g.norm() / cn } else { f64::INFINITY };
            let image = match apply_moebius(&m2, x) {
                Ok(y) => f2.distance_to_singular(&y),
                Err(_) => 0.0,
            };
            // image distances are rescaled by the local dilation factor |cx+d|^2
            let local = image * g.norm().powi(2);
            pole.min(local)
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::euclid::fundamental_solution;

    #[test]
    fn identity_valid() {
        let r = validate_vahlen(&VahlenMatrix::identity(3));
        assert!(r.pass);
        assert_eq!(r.pseudo_determinant, 1.0);
    }

    #[test]
    fn translation_valid() {
        assert!(validate_vahlen(&VahlenMatrix::translation(&[1.0, 0.0, 0.0])).pass);
    }

    #[test]
    fn scaled_identity_invalid() {
        let n = 3;
        let m = VahlenMatrix::new(
            Multivector::scalar(n, 2.0),
            Multivector::zero(n),
            Multivector::zero(n),
            Multivector::one(n),
        )
        .unwrap();
        let r = validate_vahlen(&m);
        assert!(!r.pass);
        assert_eq!(r.pseudo_determinant, 2.0);
    }

    #[test]
    fn apply_examples() {
        let t = VahlenMatrix::translation(&[1.0, 0.0, 0.0]);
        assert_eq!(apply_moebius(&t, &[0.0, 1.0, 0.0]).unwrap(), vec![1.0, 1.0, 0.0]);

        let x = [0.3, -0.4, 1.2];
        let k = apply_moebius(&VahlenMatrix::kelvin(3), &x).unwrap();
        let r2 = 0.09 + 0.16 + 1.44;
        for i in 0..3 {
            assert!((k[i] - x[i] / r2).abs() < 1e-15);
        }

        let d = apply_moebius(&VahlenMatrix::dilation(3, 2.0), &x).unwrap();
        for i in 0..3 {
            assert!((d[i] - 2.0 * x[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn kelvin_pole() {
        assert_eq!(
            apply_moebius(&VahlenMatrix::kelvin(3), &[0.0; 3]),
            Err(Error::PointAtInfinity)
        );
    }

    #[test]
    fn weights() {
        let t = VahlenMatrix::translation(&[0.5, 0.0, 0.0]);
        let x = [0.2, 0.1, -0.3];
        assert_eq!(weight_j(&t, &x, 1).unwrap(), Multivector::one(3));
        assert_eq!(weight_j(&t, &x, 2).unwrap(), Multivector::one(3));
        let w = weight_j(&VahlenMatrix::kelvin(3), &x, 1).unwrap();
        let g = fundamental_solution(&x).unwrap();
        assert!(w.dist(&g) < 1e-14);
        assert!(matches!(weight_j(&t, &x, 3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn transversion_inverse_roundtrip() {
        let m = VahlenMatrix::transversion(&[1.0, 0.0, 0.0]);
        assert!(validate_vahlen(&m).pass);
        let x = [0.3, 0.2, -0.5];
        let u = apply_moebius(&m, &x).unwrap();
        let back = apply_moebius(&m.inverse().unwrap(), &u).unwrap();
        for i in 0..3 {
            assert!((back[i] - x[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn sign_duality_is_exact() {
        let m = VahlenMatrix::transversion(&[0.0, 1.0, 0.0]);
        let x = [0.7, -0.1, 0.4];
        assert_eq!(apply_moebius(&m, &x).unwrap(), apply_moebius(&m.neg(), &x).unwrap());
        assert_eq!(weight_j(&m.neg(), &x, 1).unwrap(), -weight_j(&m, &x, 1).unwrap());
    }

    #[test]
    fn pullback_of_translated_g() {
        let b = [0.5, 0.0, 0.0];
        let y0 = [0.0, 0.0, 2.0];
        let f = FieldFn::new(3, move |x| {
            fundamental_solution(&crate::clifford::sub(x, &y0))
        });
        let x = [0.1, 0.2, 0.3];
        let p = pullback_monogenic(&VahlenMatrix::translation(&b), &f, &x).unwrap();
        let want = fundamental_solution(&[0.6, 0.2, -1.7]).unwrap();
        assert!(p.dist(&want) < 1e-15);
    }
}
