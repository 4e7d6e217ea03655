//! Dense multivectors in the Clifford algebra `Cl_n` with `e_i e_i = -1`.
//!
//! A multivector stores all `2^n` coefficients indexed by blade bitmask: bit
//! `i` set means the blade contains `e_{i+1}`. Vectors are plain `&[f64]`
//! slices wherever a function only needs a point of `R^n`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};

pub const MAX_DIM: usize = 12;

/// Sign of `e_A e_B` after reordering to canonical form.
///
/// Counts the transpositions needed to move every generator of `b` past the
/// higher generators of `a`, plus one factor of `-1` per shared generator.
#[inline]
pub fn blade_sign(a: usize, b: usize) -> f64 {
    let mut x = a >> 1;
    let mut swaps = 0u32;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(-1)^{r(r-1)/2}` for a blade of grade `r`.
#[inline]
pub fn reversion_sign(mask: usize) -> f64 {
    let r = mask.count_ones();
    if (r * r.saturating_sub(1) / 2) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Name of a blade as used in reports and CSV headers: `"1"`, `"e1"`, `"e23"`.
/// Generators past nine are written with a separating dot, e.g. `"e1.10"`.
pub fn blade_name(mask: usize) -> String {
    if mask == 0 {
        return "1".to_string();
    }
    let idx: Vec<usize> = (0..usize::BITS as usize)
        .filter(|i| mask & (1 << i) != 0)
        .map(|i| i + 1)
        .collect();
    if idx.iter().all(|&i| i < 10) {
        format!("e{}", idx.iter().map(|i| i.to_string()).collect::<String>())
    } else {
        format!(
            "e{}",
            idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
        )
    }
}

/// Inverse of [`blade_name`].
pub fn parse_blade_name(name: &str) -> Option<usize> {
    if name == "1" {
        return Some(0);
    }
    let rest = name.strip_prefix('e')?;
    let parts: Vec<usize> = if rest.contains('.') {
        rest.split('.').map(|p| p.parse().ok()).collect::<Option<_>>()?
    } else {
        rest.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()?
    };
    let mut mask = 0usize;
    let mut prev = 0;
    for i in parts {
        if i == 0 || i <= prev || i > MAX_DIM {
            return None;
        }
        prev = i;
        mask |= 1 << (i - 1);
    }
    Some(mask)
}

#[derive(Clone, PartialEq)]
pub struct Multivector {
    n: usize,
    c: Vec<f64>,
}

impl Multivector {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_DIM, "Cl_n supported for n <= {MAX_DIM}");
        Multivector {
            n,
            c: vec![0.0; 1 << n],
        }
    }

    pub fn try_zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(Self::zero(n))
    }

    pub fn scalar(n: usize, s: f64) -> Self {
        let mut m = Self::zero(n);
        m.c[0] = s;
        m
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, 1.0)
    }

    /// Basis vector `e_{i+1}` (zero-based index).
    pub fn basis_vector(n: usize, i: usize) -> Self {
        Self::blade(n, 1 << i, 1.0)
    }

    pub fn blade(n: usize, mask: usize, coeff: f64) -> Self {
        let mut m = Self::zero(n);
        m.c[mask] = coeff;
        m
    }

    pub fn from_vector(x: &[f64]) -> Self {
        let mut m = Self::zero(x.len());
        for (i, &xi) in x.iter().enumerate() {
            m.c[1 << i] = xi;
        }
        m
    }

    /// Builds a multivector from all `2^n` coefficients.
    pub fn from_coeffs(n: usize, coeffs: Vec<f64>) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::UnsupportedDimension(n));
        }
        check_dim(1 << n, coeffs.len())?;
        Ok(Multivector { n, c: coeffs })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.c
    }

    pub fn get(&self, mask: usize) -> f64 {
        self.c[mask]
    }

    pub fn set(&mut self, mask: usize, v: f64) {
        self.c[mask] = v;
    }

    pub fn scalar_part(&self) -> f64 {
        self.c[0]
    }

    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.c[1 << i]).collect()
    }

    /// Returns the vector part, failing if any other grade exceeds `tol`.
    pub fn to_vector(&self, tol: f64) -> Result<Vec<f64>> {
        let other = self
            .c
            .iter()
            .enumerate()
            .filter(|(m, _)| m.count_ones() != 1)
            .map(|(_, v)| v.abs())
            .fold(0.0, f64::max);
        if other > tol {
            return Err(Error::NotAVector(other));
        }
        Ok(self.vector_part())
    }

    pub fn grade(&self, r: u32) -> Self {
        let mut m = Self::zero(self.n);
        for (mask, v) in self.c.iter().enumerate() {
            if mask.count_ones() == r {
                m.c[mask] = *v;
            }
        }
        m
    }

    pub fn reverse(&self) -> Self {
        let mut m = self.clone();
        for (mask, v) in m.c.iter_mut().enumerate() {
            *v *= reversion_sign(mask);
        }
        m
    }

    /// Main involution: negates odd grades.
    pub fn involute(&self) -> Self {
        let mut m = self.clone();
        for (mask, v) in m.c.iter_mut().enumerate() {
            if mask.count_ones() % 2 == 1 {
                *v = -*v;
            }
        }
        m
    }

    /// Clifford conjugate: reversion composed with the main involution.
    pub fn conjugate(&self) -> Self {
        self.reverse().involute()
    }

    pub fn norm_sq(&self) -> f64 {
        self.c.iter().map(|v| v * v).sum()
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n);
        self.c
            .iter()
            .zip(&other.c)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Geometric product. Zero coefficients are skipped so products of
    /// sparse elements stay cheap in high dimension.
    pub fn gp(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "multivector dimension mismatch");
        let mut out = vec![0.0; self.c.len()];
        let nz: Vec<(usize, f64)> = other
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(m, v)| (m, *v))
            .collect();
        for (a, &av) in self.c.iter().enumerate() {
            if av == 0.0 {
                continue;
            }
            for &(b, bv) in &nz {
                out[a ^ b] += blade_sign(a, b) * av * bv;
            }
        }
        Multivector { n: self.n, c: out }
    }

    /// Inverse `~g / (g ~g)` for products of vectors, or `g^- / (g g^-)` for
    /// paravectors.
    ///
    /// Fails with [`Error::NotApplicable`] when neither norm is a scalar.
    pub fn inverse(&self) -> Result<Self> {
        let scale = self.norm_sq().max(f64::MIN_POSITIVE);
        // products of vectors: g ~g scalar; paravectors: g g^- scalar
        for partner in [self.reverse(), self.conjugate()] {
            let nn = self.gp(&partner);
            let s = nn.c[0];
            let off = nn.c[1..].iter().fold(0.0f64, |a, v| a.max(v.abs()));
            if off > 1e-10 * scale {
                continue;
            }
            if s.abs() <= 1e-300 || !s.is_finite() {
                return Err(Error::Singular(s.abs().sqrt()));
            }
            return Ok(partner / s);
        }
        Err(Error::NotApplicable(
            "neither g ~g nor g g^- is scalar; element has no closed-form inverse".into(),
        ))
    }
}

/// `x^{-1} = -x / |x|^2` for a nonzero vector.
pub fn vector_inverse(x: &[f64]) -> Result<Vec<f64>> {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    if r2 == 0.0 || !r2.is_finite() {
        return Err(Error::Singular(r2.sqrt()));
    }
    Ok(x.iter().map(|v| -v / r2).collect())
}

pub fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn scale(x: &[f64], s: f64) -> Vec<f64> {
    x.iter().map(|a| a * s).collect()
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(n={}; {})", self.n, self)
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, v) in self.c.iter().enumerate() {
            if *v == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}*{}", blade_name(mask))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nz: Vec<(usize, f64)> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(m, v)| (m, *v))
            .collect();
        let mut map = s.serialize_map(Some(nz.len()))?;
        for (m, v) in nz {
            map.serialize_entry(&blade_name(m), &v)?;
        }
        map.end()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr<&Multivector> for &Multivector {
            type Output = Multivector;
            fn $f(self, rhs: &Multivector) -> Multivector {
                assert_eq!(self.n, rhs.n, "multivector dimension mismatch");
                Multivector {
                    n: self.n,
                    c: self.c.iter().zip(&rhs.c).map(|(a, b)| a $op b).collect(),
                }
            }
        }
        impl $tr<Multivector> for Multivector {
            type Output = Multivector;
            fn $f(self, rhs: Multivector) -> Multivector {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Multivector> for Multivector {
            type Output = Multivector;
            fn $f(self, rhs: &Multivector) -> Multivector {
                (&self).$f(rhs)
            }
        }
        impl $tr<Multivector> for &Multivector {
            type Output = Multivector;
            fn $f(self, rhs: Multivector) -> Multivector {
                self.$f(&rhs)
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);

impl Mul<&Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}
impl Mul<Multivector> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}
impl Mul<&Multivector> for Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.gp(rhs)
    }
}
impl Mul<Multivector> for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: Multivector) -> Multivector {
        self.gp(&rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;
    fn mul(mut self, s: f64) -> Multivector {
        self.c.iter_mut().for_each(|v| *v *= s);
        self
    }
}
impl Mul<f64> for &Multivector {
    type Output = Multivector;
    fn mul(self, s: f64) -> Multivector {
        self.clone() * s
    }
}
impl Div<f64> for Multivector {
    type Output = Multivector;
    fn div(mut self, s: f64) -> Multivector {
        self.c.iter_mut().for_each(|v| *v /= s);
        self
    }
}
impl Div<f64> for &Multivector {
    type Output = Multivector;
    fn div(self, s: f64) -> Multivector {
        self.clone() / s
    }
}
impl Neg for Multivector {
    type Output = Multivector;
    fn neg(mut self) -> Multivector {
        self.c.iter_mut().for_each(|v| *v = -*v);
        self
    }
}
impl Neg for &Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        -self.clone()
    }
}
impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.n, rhs.n, "multivector dimension mismatch");
        self.c.iter_mut().zip(&rhs.c).for_each(|(a, b)| *a += b);
    }
}
impl AddAssign<Multivector> for Multivector {
    fn add_assign(&mut self, rhs: Multivector) {
        *self += &rhs;
    }
}
impl SubAssign<&Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.n, rhs.n, "multivector dimension mismatch");
        self.c.iter_mut().zip(&rhs.c).for_each(|(a, b)| *a -= b);
    }
}
impl SubAssign<Multivector> for Multivector {
    fn sub_assign(&mut self, rhs: Multivector) {
        *self -= &rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Multivector {
        Multivector::basis_vector(n, i)
    }

    #[test]
    fn generators_anticommute() {
        for n in 1..=MAX_DIM {
            for i in 0..n {
                for j in 0..n {
                    let s = e(n, i) * e(n, j) + e(n, j) * e(n, i);
                    let want = if i == j { -2.0 } else { 0.0 };
                    assert_eq!(s, Multivector::scalar(n, want), "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn e1e2_squares_to_minus_one() {
        let e12 = e(3, 0) * e(3, 1);
        assert_eq!(e12.get(0b011), 1.0);
        assert_eq!(&e12 * &e12, Multivector::scalar(3, -1.0));
    }

    #[test]
    fn vector_squares_to_minus_norm() {
        let x = Multivector::from_vector(&[1.0, 2.0, 2.0]);
        assert_eq!(&x * &x, Multivector::scalar(3, -9.0));
    }

    #[test]
    fn vector_inverse_example() {
        let x = [3.0, 4.0, 0.0];
        let xi = vector_inverse(&x).unwrap();
        assert_eq!(xi, vec![-0.12, -0.16, 0.0]);
        let p = Multivector::from_vector(&x) * Multivector::from_vector(&xi);
        assert!(p.dist(&Multivector::one(3)) < 1e-15);
    }

    #[test]
    fn zero_vector_is_singular() {
        assert!(matches!(vector_inverse(&[0.0; 3]), Err(Error::Singular(_))));
        assert!(matches!(
            Multivector::zero(3).inverse(),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn reversion_sign_by_grade() {
        let signs: Vec<f64> = (0..5u32).map(|r| reversion_sign((1 << r) - 1)).collect();
        assert_eq!(signs, vec![1.0, 1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn blade_names_round_trip() {
        for mask in 0..(1 << 5) {
            assert_eq!(parse_blade_name(&blade_name(mask)), Some(mask));
        }
        assert_eq!(blade_name(0b101), "e13");
        assert_eq!(parse_blade_name(&blade_name(0b1000_0000_0011)), Some(0b1000_0000_0011));
        assert_eq!(parse_blade_name("e21"), None);
    }

    #[test]
    fn clifford_group_inverse_of_paravector() {
        let g = Multivector::from_vector(&[0.3, -0.2, 0.5]) + Multivector::one(3);
        let gi = g.inverse().unwrap();
        assert!((&g * &gi).dist(&Multivector::one(3)) < 1e-15);
    }

    #[test]
    fn non_group_element_rejected() {
        // (1 + e12 + e3)~(1 + e12 + e3) = 1 + 2 e3
        let g = Multivector::one(3) + Multivector::blade(3, 0b011, 1.0) + Multivector::basis_vector(3, 2);
        assert!(matches!(g.inverse(), Err(Error::NotApplicable(_))));
    }
}
