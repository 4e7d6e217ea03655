//! Compensated accumulators.

use crate::clifford::{Multivector, MAX_DIM};

/// Paravector coefficients: slot 0 is the scalar, slot `i + 1` is `e_{i+1}`.
pub(crate) type Para = [f64; MAX_DIM + 1];

#[inline]
fn kahan_step(sum: &mut f64, comp: &mut f64, x: f64) {
    let y = x - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// Kahan accumulator over paravectors, the value space of every `G_q` term.
#[derive(Clone, Copy)]
pub(crate) struct KahanPara {
    sum: Para,
    comp: Para,
    len: usize,
}

impl KahanPara {
    /// `n` is the number of vector slots in use.
    pub fn new(n: usize) -> Self {
        KahanPara {
            sum: [0.0; MAX_DIM + 1],
            comp: [0.0; MAX_DIM + 1],
            len: n + 1,
        }
    }

    #[inline]
    pub fn add_scalar(&mut self, s: f64) {
        kahan_step(&mut self.sum[0], &mut self.comp[0], s);
    }

    #[inline]
    pub fn add_vector(&mut self, v: &[f64], factor: f64) {
        for (i, x) in v.iter().enumerate() {
            kahan_step(&mut self.sum[i + 1], &mut self.comp[i + 1], x * factor);
        }
    }

    pub fn add_para(&mut self, p: &Para) {
        for i in 0..self.len {
            kahan_step(&mut self.sum[i], &mut self.comp[i], p[i]);
        }
    }

    pub fn value(&self) -> Para {
        self.sum
    }

    pub fn to_multivector(&self) -> Multivector {
        para_to_mv(&self.sum, self.len - 1)
    }
}

pub(crate) fn para_to_mv(p: &Para, n: usize) -> Multivector {
    let mut m = Multivector::scalar(n, p[0]);
    for i in 0..n {
        m.set(1 << i, p[i + 1]);
    }
    m
}

/// Kahan accumulator over full multivectors.
#[derive(Clone, Debug)]
pub struct KahanMv {
    sum: Multivector,
    comp: Multivector,
}

impl KahanMv {
    pub fn new(n: usize) -> Self {
        KahanMv {
            sum: Multivector::zero(n),
            comp: Multivector::zero(n),
        }
    }

    pub fn add(&mut self, x: &Multivector) {
        let xs = x.coeffs();
        let comp = self.comp.coeffs_mut();
        let sum = self.sum.coeffs_mut();
        for i in 0..xs.len() {
            kahan_step(&mut sum[i], &mut comp[i], xs[i]);
        }
    }

    pub fn value(&self) -> Multivector {
        self.sum.clone()
    }

    pub fn into_value(self) -> Multivector {
        self.sum
    }
}

/// Compensated sum of scalars.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let (mut s, mut c) = (0.0, 0.0);
    for x in xs {
        kahan_step(&mut s, &mut c, x);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_recovers_small_terms() {
        let xs = std::iter::once(1.0).chain(std::iter::repeat_n(1e-16, 10_000));
        let s = kahan_sum(xs);
        assert!((s - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn para_roundtrip() {
        let mut k = KahanPara::new(3);
        k.add_scalar(2.0);
        k.add_vector(&[1.0, 0.0, -1.0], 0.5);
        let m = k.to_multivector();
        assert_eq!(m.scalar_part(), 2.0);
        assert_eq!(m.vector_part(), vec![0.5, 0.0, -0.5]);
    }
}
