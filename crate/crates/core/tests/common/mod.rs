#![allow(dead_code)]

use std::sync::Arc;

use artinv_core::algebra::{ArtinianAlgebra, Element, IdealInA};
use artinv_core::arith::FieldSpec;
use artinv_core::poly::{Monomial, Polynomial, RingContext};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ctx(field: FieldSpec, n: usize) -> Arc<RingContext> {
    RingContext::new(field, (1..=n).map(|i| format!("x{i}"))).unwrap()
}

pub fn build(field: FieldSpec, vars: &[&str], gens: &[&str]) -> ArtinianAlgebra {
    let ctx = RingContext::new(field, vars.iter().map(|s| s.to_string())).unwrap();
    ArtinianAlgebra::from_strings(&ctx, gens).unwrap()
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, min_deg: u32, max_deg: u32) -> Monomial {
    let d = rng.random_range(min_deg..=max_deg);
    let mut e = vec![0u32; n];
    for _ in 0..d {
        e[rng.random_range(0..n)] += 1;
    }
    Monomial::new(e)
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: &Arc<RingContext>, min_deg: u32, max_deg: u32) -> Polynomial {
    let field = ctx.field();
    let terms = rng.random_range(1..=3);
    let mut p = Polynomial::zero(ctx);
    for _ in 0..terms {
        let m = random_monomial(rng, ctx.nvars(), min_deg, max_deg);
        let mut c = field.random(rng, 3);
        if c.is_zero() {
            c = field.one();
        }
        p = &p + &Polynomial::term(ctx, m, c);
    }
    p
}

/// A random local algebra: pure powers of every variable plus a few random
/// polynomials in `m²`. Retries until the length is at most `max_len`.
pub fn random_local(rng: &mut ChaCha8Rng, field: FieldSpec, max_len: usize) -> ArtinianAlgebra {
    loop {
        let n = rng.random_range(1..=3);
        let ctx = ctx(field, n);
        let mut gens: Vec<Polynomial> = (0..n)
            .map(|v| {
                let d = rng.random_range(2..=4);
                Polynomial::var(&ctx, v).pow(d)
            })
            .collect();
        for _ in 0..rng.random_range(0..=3) {
            gens.push(random_poly(rng, &ctx, 2, 3));
        }
        if let Ok(a) = ArtinianAlgebra::new(&ctx, gens) {
            if a.dim() <= max_len && a.is_local() {
                return a;
            }
        }
    }
}

/// A random homogeneous local algebra: pure powers plus random forms.
pub fn random_graded(rng: &mut ChaCha8Rng, field: FieldSpec, max_len: usize) -> ArtinianAlgebra {
    loop {
        let n = rng.random_range(1..=3);
        let ctx = ctx(field, n);
        let mut gens: Vec<Polynomial> = (0..n)
            .map(|v| Polynomial::var(&ctx, v).pow(rng.random_range(2..=3)))
            .collect();
        for _ in 0..rng.random_range(0..=2) {
            let d = rng.random_range(2..=3);
            gens.push(random_poly(rng, &ctx, d, d));
        }
        if let Ok(a) = ArtinianAlgebra::new(&ctx, gens) {
            if a.dim() <= max_len {
                return a;
            }
        }
    }
}

pub fn random_in_m(rng: &mut ChaCha8Rng, a: &ArtinianAlgebra) -> Element {
    let field = a.field();
    let mut c: Vec<_> = (0..a.dim()).map(|_| field.random(rng, 2)).collect();
    c[0] = field.zero();
    Element::new(c)
}

pub fn random_ideal(rng: &mut ChaCha8Rng, a: &ArtinianAlgebra) -> IdealInA {
    let gens: Vec<Element> = (0..rng.random_range(1..=3)).map(|_| random_in_m(rng, a)).collect();
    a.ideal_from_generators(&gens)
}

/// Every element of `A` over a finite field, in base-q index order.
pub fn all_elements(a: &ArtinianAlgebra) -> Vec<Element> {
    let field = a.field();
    let q = field.size().unwrap();
    let total = q.pow(a.dim() as u32);
    (0..total)
        .map(|mut i| {
            let c = (0..a.dim())
                .map(|_| {
                    let d = i % q;
                    i /= q;
                    field.element(d)
                })
                .collect();
            Element::new(c)
        })
        .collect()
}
