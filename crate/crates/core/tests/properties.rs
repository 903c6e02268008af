// Copyright 2026 The gamowlab Authors
// SPDX-License-Identifier: Apache-2.0

use gamowlab::channels::{damping_channel, damping_closed_form, DensityMatrix};
use gamowlab::cmatrix::{commutator, svd, ComplexMatrix, C64};
use gamowlab::commutators::{evolved_commutator, trajectory};
use gamowlab::evolution::{evolution_operator, EvolutionVariant};
use gamowlab::gamow::GamowSpace;
use gamowlab::qlattice::{distributivity_check, join, leq, meet, ortho, Projector, LATTICE_EQ_TOL};
use proptest::prelude::*;

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
        .prop_map(|v| v.into_iter().map(|(a, b)| C64::new(a, b)).collect())
}

fn matrix(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    complex_vec(d * d).prop_map(move |v| ComplexMatrix::new(d, d, v).unwrap())
}

fn hermitian(d: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(d).prop_map(|m| m.hermitian_part())
}

fn density(d: usize) -> impl Strategy<Value = DensityMatrix> {
    matrix(d).prop_filter_map("nonzero", |g| {
        let p = g.mul(&g.adjoint()).unwrap();
        let tr = p.trace().re;
        (tr > 1e-6).then(|| DensityMatrix::new(p.scale_real(1.0 / tr).hermitian_part()).unwrap())
    })
}

fn space(n: usize) -> impl Strategy<Value = GamowSpace> {
    prop::collection::vec((-3.0f64..3.0, 0.1f64..2.5), n)
        .prop_map(|p| GamowSpace::from_pairs(&p).unwrap())
}

/// A projector of random rank onto random vectors in dimension `d`.
fn projector(d: usize) -> impl Strategy<Value = Projector> {
    (0..=d).prop_flat_map(move |r| {
        prop::collection::vec(complex_vec(d), r)
            .prop_map(move |vs| Projector::from_vectors(d, &vs).unwrap())
    })
}

/// Three projectors drawn from a shared pool, so meets are often nontrivial.
fn pooled_triple(d: usize) -> impl Strategy<Value = [Projector; 3]> {
    (
        prop::collection::vec(complex_vec(d), d + 1),
        prop::collection::vec(
            prop::sample::subsequence((0..=d).collect::<Vec<_>>(), 1..d),
            3,
        ),
    )
        .prop_map(move |(pool, picks)| {
            let make = |idx: &Vec<usize>| {
                let vs: Vec<Vec<C64>> = idx.iter().map(|&k| pool[k].clone()).collect();
                Projector::from_vectors(d, &vs).unwrap()
            };
            [make(&picks[0]), make(&picks[1]), make(&picks[2])]
        })
}

fn trace_product(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.mul(b).unwrap().trace()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn damping_duality(p in 0.0f64..=1.0, rho in density(2), o in hermitian(2)) {
        let ch = damping_channel(p).unwrap();
        let lhs = trace_product(ch.apply_schrodinger(&rho).unwrap().matrix(), &o);
        let rhs = trace_product(rho.matrix(), &ch.apply_heisenberg(&o).unwrap());
        prop_assert!((lhs - rhs).norm() <= 1e-12);
    }

    #[test]
    fn damping_iterate_matches_closed_form(p in 0.0f64..=1.0, n in 0usize..60, o in matrix(2)) {
        let ch = damping_channel(p).unwrap();
        let it = ch.iterate_heisenberg(&o, n).unwrap();
        prop_assert!(it.distance(&damping_closed_form(p, n, &o).unwrap()) <= 1e-12);
    }

    #[test]
    fn damping_commutator_decays_monotonically(p in 0.05f64..0.95, a in hermitian(2), b in hermitian(2)) {
        let ch = damping_channel(p).unwrap();
        let (mut a, mut b) = (a, b);
        let mut prev = commutator(&a, &b).unwrap().frobenius_norm();
        for _ in 0..40 {
            a = ch.apply_heisenberg(&a).unwrap();
            b = ch.apply_heisenberg(&b).unwrap();
            let norm = commutator(&a, &b).unwrap().frobenius_norm();
            prop_assert!(norm <= prev * (1.0 + 1e-12));
            prev = norm;
        }
    }

    #[test]
    fn commutator_is_antisymmetric_and_scale_equivariant(a in matrix(3), b in matrix(3), s in -3.0f64..3.0) {
        let ab = commutator(&a, &b).unwrap();
        let ba = commutator(&b, &a).unwrap();
        prop_assert!(ab.add(&ba).unwrap().max_abs() <= 1e-14);
        let scaled = commutator(&a.scale_real(s), &b).unwrap();
        prop_assert!(scaled.distance(&ab.scale_real(s)) <= 1e-13 * (1.0 + ab.frobenius_norm()));
    }

    #[test]
    fn frobenius_norm_is_submultiplicative(a in matrix(4), b in matrix(4)) {
        let ab = a.mul(&b).unwrap().frobenius_norm();
        prop_assert!(ab <= a.frobenius_norm() * b.frobenius_norm() * (1.0 + 1e-12));
    }

    #[test]
    fn hermitian_evolution_factorizes(sp in space(2), s in 0.0f64..3.0, t in 0.0f64..3.0) {
        let us = evolution_operator(&sp, s, EvolutionVariant::Hermitian).unwrap();
        let ut = evolution_operator(&sp, t, EvolutionVariant::Hermitian).unwrap();
        let ust = evolution_operator(&sp, s + t, EvolutionVariant::Hermitian).unwrap();
        prop_assert!(us.matrix().mul(ut.matrix()).unwrap().distance(ust.matrix()) <= 1e-12);
    }

    #[test]
    fn invertible_evolution_is_a_group(sp in space(3), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let us = evolution_operator(&sp, s, EvolutionVariant::Invertible).unwrap();
        let ut = evolution_operator(&sp, t, EvolutionVariant::Invertible).unwrap();
        let ust = evolution_operator(&sp, s + t, EvolutionVariant::Invertible).unwrap();
        let prod = us.matrix().mul(ut.matrix()).unwrap();
        prop_assert!(prod.distance(ust.matrix()) <= 1e-12 * ust.matrix().frobenius_norm().max(1.0));
    }

    #[test]
    fn single_resonance_modulus_law(sp in space(1), a in hermitian(2), b in hermitian(2), t in 0.0f64..5.0) {
        let k = commutator(&a, &b).unwrap();
        let kt = evolved_commutator(&sp, &a, &b, t, EvolutionVariant::Hermitian).unwrap();
        let env = (-2.0 * t * sp.min_width()).exp();
        for r in 0..2 {
            for c in 0..2 {
                let expected = env * k[(r, c)].norm();
                prop_assert!((kt[(r, c)].norm() - expected).abs() <= 1e-12 * (expected + env * k.frobenius_norm()));
            }
        }
    }

    #[test]
    fn multi_resonance_norm_is_bounded_and_decreasing(sp in space(3), a in hermitian(6), b in hermitian(6)) {
        let times: Vec<f64> = (0..21).map(|k| 0.25 * k as f64).collect();
        let traj = trajectory(&sp, &a, &b, &times, EvolutionVariant::Hermitian).unwrap();
        let k = commutator(&a, &b).unwrap().frobenius_norm();
        let mut prev = f64::INFINITY;
        for (t, n) in traj.times().iter().zip(traj.norms()) {
            prop_assert!(*n <= k * (-2.0 * t * sp.min_width()).exp() * (1.0 + 1e-12) + 1e-300);
            prop_assert!(*n <= prev * (1.0 + 1e-12));
            prev = *n;
        }
    }

    #[test]
    fn meet_and_join_commute(p in projector(4), q in projector(4)) {
        prop_assert!(meet(&p, &q).unwrap().approx_eq(&meet(&q, &p).unwrap(), LATTICE_EQ_TOL));
        prop_assert!(join(&p, &q).unwrap().approx_eq(&join(&q, &p).unwrap(), LATTICE_EQ_TOL));
    }

    #[test]
    fn meet_and_join_associate([a, b, c] in pooled_triple(4)) {
        let l = meet(&meet(&a, &b).unwrap(), &c).unwrap();
        let r = meet(&a, &meet(&b, &c).unwrap()).unwrap();
        prop_assert!(l.approx_eq(&r, LATTICE_EQ_TOL));
        let l = join(&join(&a, &b).unwrap(), &c).unwrap();
        let r = join(&a, &join(&b, &c).unwrap()).unwrap();
        prop_assert!(l.approx_eq(&r, LATTICE_EQ_TOL));
    }

    #[test]
    fn de_morgan(p in projector(5), q in projector(5)) {
        let lhs = ortho(&meet(&p, &q).unwrap());
        let rhs = join(&ortho(&p), &ortho(&q)).unwrap();
        prop_assert!(lhs.approx_eq(&rhs, LATTICE_EQ_TOL));
    }

    #[test]
    fn meet_below_join(p in projector(4), q in projector(4)) {
        let m = meet(&p, &q).unwrap();
        let j = join(&p, &q).unwrap();
        prop_assert!(leq(&m, &p).unwrap() && leq(&m, &q).unwrap());
        prop_assert!(leq(&p, &j).unwrap() && leq(&q, &j).unwrap());
    }

    #[test]
    fn distributive_inequalities_hold([a, b, c] in pooled_triple(5)) {
        prop_assert!(distributivity_check(&a, &b, &c).unwrap().inequality_holds);
    }

    #[test]
    fn commuting_triples_are_distributive(
        g in matrix(5),
        bits in prop::collection::vec(prop::collection::vec(any::<bool>(), 5), 3),
    ) {
        let w = svd(&g).unwrap().u;
        let ps: Vec<Projector> = bits
            .iter()
            .map(|b| {
                let diag: Vec<C64> = b.iter().map(|&x| C64::new(if x { 1.0 } else { 0.0 }, 0.0)).collect();
                let m = ComplexMatrix::mul_chain(&[&w, &ComplexMatrix::diagonal(&diag), &w.adjoint()]).unwrap();
                Projector::new(m.hermitian_part()).unwrap()
            })
            .collect();
        let rep = distributivity_check(&ps[0], &ps[1], &ps[2]).unwrap();
        prop_assert!(rep.meet_equal && rep.join_equal);
    }
}
