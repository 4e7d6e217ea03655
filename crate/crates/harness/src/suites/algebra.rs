use conflat_core::clifford::{vector_inverse, MAX_DIM};
use conflat_core::Multivector;
use rand::RngExt;

use super::{in_shell, random_mv};
use crate::runner::{CheckDef, Outcome};

pub fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef::at_most("c01.algebra.anticommutation", 1, 0.0, |_| {
            let mut worst = 0.0f64;
            for n in 2..=MAX_DIM.min(8) {
                for i in 0..n {
                    for j in 0..n {
                        let (ei, ej) = (Multivector::basis_vector(n, i), Multivector::basis_vector(n, j));
                        let want = Multivector::scalar(n, if i == j { -2.0 } else { 0.0 });
                        worst = worst.max((&ei * &ej + &ej * &ei).dist(&want));
                    }
                }
            }
            Ok(Outcome::new(worst))
        }),
        CheckDef::at_most("c01.algebra.associativity", 1, 1e-12, |ctx| {
            let mut worst = 0.0f64;
            for t in 0..1000 {
                let n = 3 + t % 3;
                let (a, b, c) = (
                    random_mv(&mut ctx.rng, n),
                    random_mv(&mut ctx.rng, n),
                    random_mv(&mut ctx.rng, n),
                );
                let d = ((&a * &b) * &c).dist(&(&a * (&b * &c)));
                worst = worst.max(d / (a.norm() * b.norm() * c.norm()));
            }
            Ok(Outcome::new(worst).with("triples", 1000.0))
        }),
        CheckDef::at_most("c01.algebra.vector_inverse", 1, 1e-14, |ctx| {
            let mut worst = 0.0f64;
            for t in 0..100 {
                let n = 3 + t % 3;
                let x = in_shell(&mut ctx.rng, n, 0.1, 10.0);
                let p = Multivector::from_vector(&x) * Multivector::from_vector(&vector_inverse(&x)?);
                worst = worst.max(p.dist(&Multivector::one(n)));
            }
            Ok(Outcome::new(worst).with("vectors", 100.0))
        }),
        CheckDef::at_most("c01.algebra.reversion_antiautomorphism", 1, 0.0, |ctx| {
            let mut worst = 0.0f64;
            for _ in 0..200 {
                let n = 5;
                let a = Multivector::blade(n, ctx.rng.random_range(0..32), ctx.rng.random_range(-2.0..2.0));
                let b = Multivector::blade(n, ctx.rng.random_range(0..32), ctx.rng.random_range(-2.0..2.0));
                worst = worst.max((&a * &b).reverse().dist(&(b.reverse() * a.reverse())));
                worst = worst.max(a.reverse().reverse().dist(&a));
            }
            Ok(Outcome::new(worst))
        }),
    ]
}
