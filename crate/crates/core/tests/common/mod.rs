//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use chainbound::ring::{Coeff, ExponentVector, Polynomial};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_monomial(rng: &mut ChaCha8Rng, m: usize, total: u64) -> ExponentVector {
    let mut exps = vec![0u32; m];
    for _ in 0..total {
        exps[rng.gen_range(0..m)] += 1;
    }
    ExponentVector::new(exps).unwrap()
}

/// The first term has degree exactly `max_degree`.
pub fn random_poly(rng: &mut ChaCha8Rng, m: usize, max_degree: u64, max_terms: usize) -> Polynomial {
    let n = rng.gen_range(1..=max_terms);
    let terms: Vec<(ExponentVector, Coeff)> = (0..n)
        .map(|t| {
            let mut c = rng.gen_range(-4i64..=4);
            if c == 0 {
                c = 1;
            }
            let total = if t == 0 { max_degree } else { rng.gen_range(0..=max_degree) };
            (random_monomial(rng, m, total), Coeff::from_integer(c.into()))
        })
        .collect();
    Polynomial::from_terms(m, terms).unwrap()
}

pub fn random_nonzero(rng: &mut ChaCha8Rng, m: usize, max_degree: u64, max_terms: usize) -> Polynomial {
    loop {
        let p = random_poly(rng, m, max_degree, max_terms);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_system(rng: &mut ChaCha8Rng, m: usize, s: usize, d: u64, max_terms: usize) -> Vec<Polynomial> {
    (0..s).map(|_| random_nonzero(rng, m, d, max_terms)).collect()
}

pub fn max_degree(ps: &[Polynomial]) -> u64 {
    ps.iter().filter_map(|p| p.degree().ok()).max().unwrap_or(0)
}

pub fn combination(rng: &mut ChaCha8Rng, generators: &[Polynomial], m: usize, h_degree: u64) -> Polynomial {
    let mut g = Polynomial::zero(m);
    for f in generators {
        let h = random_poly(rng, m, h_degree, 3);
        g = g.add(&h.mul(f).unwrap()).unwrap();
    }
    g
}

/// Independent evaluation of `(3^n - 1) d + i`.
pub fn chi_plus(n: usize, d: u64, i: u64) -> u128 {
    (3u128.pow(n as u32) - 1) * u128::from(d) + u128::from(i)
}
