//! Cross-module properties on seeded random instances.

mod common;

use chainbound::antichain::{chain_to_antichain, IdealChainInput};
use chainbound::bounds::{bound, BoundBudget, DegreeFunction};
use chainbound::division::reduce;
use chainbound::groebner::{buchberger_trace, is_groebner, verify_stage_degree_bounds};
use chainbound::membership::{brute_force_membership, ideal_contains, membership, Ideal};
use chainbound::ring::{MonomialOrder, Polynomial};
use common::{chi_plus, combination, max_degree, random_nonzero, random_poly, random_system};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DEGLEX: MonomialOrder = MonomialOrder::DegLex;
const LEX: MonomialOrder = MonomialOrder::Lex;

fn instance(seed: u64, max_m: usize, max_s: usize, max_d: u64) -> (ChaCha8Rng, usize, Vec<Polynomial>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=max_m);
    let s = rng.gen_range(1..=max_s);
    let d = rng.gen_range(1..=max_d);
    let generators = random_system(&mut rng, m, s, d, 3);
    (rng, m, generators)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn buchberger_runs_are_sound(seed in any::<u64>()) {
        let (_, _, input) = instance(seed, 3, 3, 2);
        for order in [DEGLEX, LEX] {
            let trace = buchberger_trace(&input, order).unwrap();
            let basis = trace.basis_polynomials();
            prop_assert!(trace.certificates_verify());
            prop_assert!(trace.strictly_ascends());
            prop_assert!(is_groebner(&basis, order).unwrap());
            prop_assert!(input.iter().all(|f| basis.contains(f)));
            if order == DEGLEX {
                let report = verify_stage_degree_bounds(&trace, max_degree(&input)).unwrap();
                prop_assert!(report.pass);
            }
        }
    }

    #[test]
    fn constructed_members_get_bounded_certificates(seed in any::<u64>()) {
        let (mut rng, m, generators) = instance(seed, 3, 3, 2);
        let g = combination(&mut rng, &generators, m, 2);
        let cert = membership(&g, &generators, DEGLEX).unwrap();
        prop_assert!(cert.member);
        prop_assert!(cert.verify(&g, &generators));
        let cap = chi_plus(cert.trace_length, max_degree(&generators), g.degree().unwrap_or(0));
        prop_assert!(u128::from(cert.max_cofactor_degree) <= cap);
        prop_assert_eq!(cert.bound_used, BigUint::from(cap));

        let basis = buchberger_trace(&generators, DEGLEX).unwrap().basis_polynomials();
        prop_assert!(reduce(&g, &basis, DEGLEX).unwrap().remainder.is_zero());
    }

    #[test]
    fn membership_does_not_depend_on_the_order(seed in any::<u64>()) {
        let (mut rng, m, generators) = instance(seed, 3, 3, 2);
        let g = if rng.gen_bool(0.5) {
            combination(&mut rng, &generators, m, 1)
        } else {
            random_poly(&mut rng, m, 3, 3)
        };
        let lex = ideal_contains(&g, &generators, LEX).unwrap();
        let deglex = ideal_contains(&g, &generators, DEGLEX).unwrap();
        prop_assert_eq!(lex, deglex);
        prop_assert_eq!(membership(&g, &generators, DEGLEX).unwrap().member, deglex);
    }

    #[test]
    fn oracle_agrees_at_the_trace_bound(seed in any::<u64>()) {
        let (mut rng, m, generators) = instance(seed, 2, 3, 2);
        let g = if rng.gen_bool(0.5) {
            combination(&mut rng, &generators, m, 1)
        } else {
            random_poly(&mut rng, m, 2, 3)
        };
        let cert = membership(&g, &generators, DEGLEX).unwrap();
        let cap = chi_plus(cert.trace_length, max_degree(&generators), g.degree().unwrap_or(0));
        match brute_force_membership(&g, &generators, cap as u64, 2_500) {
            Ok(answer) => prop_assert_eq!(answer, cert.member),
            Err(e) => prop_assert!(e.is_budget()),
        }
    }

    #[test]
    fn non_members_have_no_small_certificates(seed in any::<u64>()) {
        let (mut rng, m, generators) = instance(seed, 2, 2, 2);
        let g = random_poly(&mut rng, m, 2, 3);
        if !ideal_contains(&g, &generators, DEGLEX).unwrap() {
            for cap in 0..=3 {
                prop_assert!(!brute_force_membership(&g, &generators, cap, 10_000).unwrap());
            }
        }
    }

    #[test]
    fn chains_are_no_longer_than_the_bound(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stages = vec![vec![random_nonzero(&mut rng, 2, 2, 2)]];
        for _ in 0..rng.gen_range(0..4) {
            let current = stages.last().unwrap().clone();
            let ideal = Ideal::new(2, &current, DEGLEX).unwrap();
            let next = (0..10)
                .map(|_| random_nonzero(&mut rng, 2, 3, 2))
                .find(|q| !ideal.contains(q).unwrap());
            let Some(q) = next else { break };
            let mut stage = current;
            stage.push(q);
            stages.push(stage);
        }
        let t = stages.len();
        let out = chain_to_antichain(&IdealChainInput { stages, order: DEGLEX }).unwrap();
        prop_assert_eq!(out.witness.len(), t);
        // Raw stage degrees need not be monotone, hence the running maximum.
        let f = DegreeFunction::running_max(out.stage_degrees.iter().map(|&d| d.max(1))).unwrap();
        let b = bound(2, &f, &BoundBudget::default()).unwrap();
        prop_assert!(BigUint::from(t) <= b);
    }
}

#[test]
fn random_instances_are_reproducible() {
    let mut a = ChaCha8Rng::seed_from_u64(1);
    let mut b = ChaCha8Rng::seed_from_u64(1);
    assert_eq!(random_system(&mut a, 3, 4, 3, 3), random_system(&mut b, 3, 4, 3, 3));
}
