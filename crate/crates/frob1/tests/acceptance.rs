//! Acceptance suite: one test per criterion, each printing a pass line and
//! enforcing its runtime budget. Run with `cargo test --test acceptance`
//! (add `-- --nocapture` to see the per-criterion lines).

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use frob1::circle::Complex;
use frob1::graded::{koszul_sign, rat, rat_int, Degree, Permutation};
use frob1::lifts::{verify_homotopy, Generator, LiftSet};
use frob1::op::{compose, Leg, Operation};
use frob1::qloc;
use frob1::quad::{
    moment_checks, mu_direct_halfplane, mu_direct_total, mu_total_and_halfplane, primitive,
    shaped_bump_profile, u_integrals, BumpShape, Grid1D,
};
use frob1::symbolic::{
    block_interleave, frob1_associativity_check, frob1_compose, Frob1Elem, HBasis, HTensor,
    ThreeVertexShape,
};

fn finish(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed <= budget,
        "{criterion} exceeded its runtime budget: {elapsed:.2?} > {budget:.2?}"
    );
    println!("{criterion}: PASS ({elapsed:.2?})");
}

/// Criterion 1: the genus-two obstruction equals -1/12 · id entrywise and
/// acts as (-1/12, -1/12) on cohomology, for every N in 5..=10.
#[test]
fn criterion_1_discrete_obstruction() {
    let started = Instant::now();
    for n in 5..=10 {
        let lifts = LiftSet::build(Complex::new(n).unwrap()).unwrap();
        let obstruction = lifts.b_obstruction().unwrap();
        let expected = Operation::identity(lifts.complex).scaled(&rat(-1, 12));
        assert_eq!(obstruction, expected, "entrywise mismatch at N = {n}");
        assert_eq!(
            obstruction.cohomology_action_11().unwrap(),
            (rat(-1, 12), rat(-1, 12)),
            "cohomology action mismatch at N = {n}"
        );
    }
    finish(
        "criterion 1 (discrete obstruction -1/12)",
        started,
        Duration::from_secs(5),
    );
}

/// Criterion 2: for each generator with a lift, `[d, lift]`, the literal
/// table, and the composition assembly agree exactly, N in 5..=10.
#[test]
fn criterion_2_homotopy_equations() {
    let started = Instant::now();
    for n in 5..=10 {
        let lifts = LiftSet::build(Complex::new(n).unwrap()).unwrap();
        for gen in Generator::ALL {
            let table = lifts.rhs_from_tables(gen).unwrap();
            let composed = lifts.rhs_from_compositions(gen).unwrap();
            assert_eq!(
                table,
                composed,
                "table != compositions for {} at N = {n}",
                gen.name()
            );
            if let Some(lift) = lifts.lift(gen) {
                assert!(
                    verify_homotopy(lift, &table).unwrap(),
                    "homotopy equation failed for {} at N = {n}",
                    gen.name()
                );
            }
        }
    }
    finish(
        "criterion 2 (homotopy equations, tables == compositions)",
        started,
        Duration::from_secs(30),
    );
}

/// Criterion 3: the quasilocality ledger, i.e. radii of the lifts and
/// composition subadditivity on 200 seeded random sparse pairs.
#[test]
fn criterion_3_quasilocality_ledger() {
    let started = Instant::now();
    let complex = Complex::new(8).unwrap();
    let lifts = LiftSet::build(complex).unwrap();
    assert_eq!(lifts.mult.quasilocality_radius(), 0);
    assert_eq!(lifts.comult.quasilocality_radius(), 0);
    for gen in Generator::LIFTED {
        assert!(
            lifts.lift(gen).unwrap().quasilocality_radius() <= 1,
            "{} radius exceeds 1",
            gen.name()
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    for _ in 0..200 {
        let (mq, nq) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let (mp, np) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let dq = rng.gen_range(-(mq as Degree)..=(nq as Degree));
        let dp = rng.gen_range(-(mp as Degree)..=(np as Degree));
        let q = Operation::random_sparse(complex, mq, nq, dq, 6, &mut rng);
        let p = Operation::random_sparse(complex, mp, np, dp, 6, &mut rng);
        let input_order: Vec<Leg> = (0..mq).map(Leg::Q).chain((1..mp).map(Leg::P)).collect();
        let output_order: Vec<Leg> = (0..np).map(Leg::P).chain((1..nq).map(Leg::Q)).collect();
        let composed = compose(&p, &q, &[(0, 0)], &input_order, &output_order).unwrap();
        assert!(
            composed.quasilocality_radius()
                <= p.quasilocality_radius() + q.quasilocality_radius() + 1,
            "subadditivity violated"
        );
    }
    finish(
        "criterion 3 (quasilocality ledger)",
        started,
        Duration::from_secs(10),
    );
}

/// Criterion 4: quasilocal cohomology at N = 12 matches the circle's
/// cohomology shifted by 1 - n, for four arity pairs, at ℓ = 1 and ℓ = 2.
#[test]
fn criterion_4_quasilocal_cohomology() {
    let started = Instant::now();
    let complex = Complex::new(12).unwrap();
    for (m, n) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
        let pair_started = Instant::now();
        let dims1 = qloc::cohomology_dims(complex, m, n, 1).unwrap();
        let dims2 = qloc::cohomology_dims(complex, m, n, 2).unwrap();
        for (p, dim) in &dims1 {
            let expected = usize::from(*p == n as Degree - 1 || *p == n as Degree);
            assert_eq!(*dim, expected, "(m,n)=({m},{n}) ℓ=1 degree {p}");
        }
        assert_eq!(dims1, dims2, "(m,n)=({m},{n}) dims changed at ℓ=2");
        let budget = if (m, n) == (2, 2) {
            Duration::from_secs(300)
        } else {
            Duration::from_secs(10)
        };
        assert!(
            pair_started.elapsed() <= budget,
            "(m,n)=({m},{n}) exceeded its budget"
        );
    }
    finish(
        "criterion 4 (quasilocal cohomology dims)",
        started,
        Duration::from_secs(320),
    );
}

/// Criterion 5: the cohomology-model Frobenius tables and coassociativity
/// expansions, every row against frozen signed values.
#[test]
fn criterion_5_homology_model() {
    use HBasis::{Omega, One};
    let started = Instant::now();
    type FrozenRow = (Vec<HBasis>, Vec<(Vec<HBasis>, i64)>);
    let rows: [FrozenRow; 4] = [
        (vec![One, One], vec![(vec![One, Omega], -1), (vec![Omega, One], 1)]),
        (vec![One, Omega], vec![(vec![Omega, Omega], 1)]),
        (vec![Omega, One], vec![(vec![Omega, Omega], 1)]),
        (vec![Omega, Omega], vec![]),
    ];
    for (input, terms) in &rows {
        let expected = HTensor::from_terms(
            2,
            &terms
                .iter()
                .map(|(t, c)| (t.clone(), rat_int(*c)))
                .collect::<Vec<_>>(),
        );
        let tensor = HTensor::basis(input.clone());
        assert_eq!(tensor.clone().mult_at(0).comult_at(0), expected);
        assert_eq!(tensor.clone().comult_at(0).mult_at(1), expected);
        assert_eq!(tensor.comult_at(1).mult_at(0), expected);
    }
    let left = HTensor::basis(vec![One]).comult_at(0).comult_at(0);
    assert_eq!(
        left,
        HTensor::from_terms(
            3,
            &[
                (vec![One, Omega, Omega], rat_int(1)),
                (vec![Omega, One, Omega], rat_int(-1)),
                (vec![Omega, Omega, One], rat_int(1)),
            ],
        )
    );
    let right = HTensor::basis(vec![One]).comult_at(0).comult_at(1);
    assert_eq!(
        right,
        HTensor::from_terms(
            3,
            &[
                (vec![One, Omega, Omega], rat_int(-1)),
                (vec![Omega, One, Omega], rat_int(1)),
                (vec![Omega, Omega, One], rat_int(-1)),
            ],
        )
    );
    finish(
        "criterion 5 (cohomology-model Frobenius axioms)",
        started,
        Duration::from_secs(1),
    );
}

/// Criterion 6: the composition sign `(-1)^(n1 (n2 - 1))` for n1, n2 <= 4
/// and exhaustive dioperadic associativity for composite m + n <= 8.
#[test]
fn criterion_6_frob1_sign_calculus() {
    let started = Instant::now();
    for n1 in 1..=4usize {
        for n2 in 1..=4usize {
            let receiver = Frob1Elem::generator(2, n1).unwrap();
            let provider = Frob1Elem::generator(1, n2 + 1).unwrap();
            let out =
                frob1_compose(&receiver, 0, &provider, 0, &block_interleave(n1, n2)).unwrap();
            let expected = if (n1 * (n2 - 1)) % 2 == 0 { 1 } else { -1 };
            assert_eq!(out.coeff(), &rat_int(expected), "n1 = {n1}, n2 = {n2}");
        }
    }
    for m1 in 1..=5usize {
        for n1 in 1..=5usize {
            for m2 in 1..=5usize {
                for n2 in 1..=5usize {
                    for m3 in 1..=5usize {
                        for n3 in 1..=5usize {
                            if m1 + n1 + m2 + n2 + m3 + n3 > 12 {
                                continue;
                            }
                            let v1 = Frob1Elem::generator(m1, n1).unwrap();
                            let v2 = Frob1Elem::generator(m2, n2).unwrap();
                            let v3 = Frob1Elem::generator(m3, n3).unwrap();
                            for shape in [
                                ThreeVertexShape::Chain,
                                ThreeVertexShape::TwoProviders,
                                ThreeVertexShape::TwoReceivers,
                            ] {
                                if let Ok(ok) =
                                    frob1_associativity_check(&v1, &v2, &v3, shape)
                                {
                                    assert!(ok, "associativity failed");
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    finish(
        "criterion 6 (component sign calculus)",
        started,
        Duration::from_secs(10),
    );
}

/// Criterion 7: the smooth-model integrals at their stated tolerances,
/// stable across the regulator sweep and two bump families.
#[test]
fn criterion_7_smooth_integrals() {
    let started = Instant::now();
    let mut halves = Vec::new();
    for epsilon in [0.05, 0.1, 0.2] {
        for shape in [BumpShape::SmoothExp, BumpShape::Quintic] {
            let grid = Grid1D::for_epsilon(epsilon, 200).unwrap();
            let phi = shaped_bump_profile(grid, epsilon, shape).unwrap();
            let f = primitive(&phi);
            let (m1, m2) = moment_checks(&phi, &f);
            assert!((m1 - 0.5).abs() < 1e-8, "m1 = {m1} at ε = {epsilon}");
            assert!((m2 - 1.0 / 3.0).abs() < 1e-8, "m2 = {m2} at ε = {epsilon}");
            for t in [-0.8, -0.3, 0.0, 0.4, 0.9] {
                let y = t * epsilon;
                let (a, b, c) = u_integrals(y, &phi, &f);
                assert!((a - 1.0).abs() < 1e-8);
                assert!((b + 0.5).abs() < 1e-8);
                let y_idx = (grid.center() as isize
                    + (y / grid.step).round() as isize) as usize;
                assert!((c + (1.0 - f.values[y_idx])).abs() < 1e-8);
            }
            let (total, half) = mu_total_and_halfplane(&phi, &f);
            assert!(total.abs() < 1e-6, "total = {total}");
            assert!((half + 1.0 / 12.0).abs() < 1e-6, "half = {half}");
            let direct = mu_direct_halfplane(&phi, &f);
            assert!((direct + 1.0 / 12.0).abs() < 1e-4, "direct = {direct}");
            assert!((direct - half).abs() < 1e-4);
            assert!(mu_direct_total(&phi, &f).abs() < 1e-4);
            halves.push(half);
        }
    }
    let spread = halves.iter().cloned().fold(f64::NAN, f64::max)
        - halves.iter().cloned().fold(f64::NAN, f64::min);
    assert!(spread < 1e-5, "half-plane values drift across the sweep");
    finish(
        "criterion 7 (smooth integrals, -1/12 half-plane)",
        started,
        Duration::from_secs(120),
    );
}

/// Criterion 8: the structural property suite: d-commutator squares to
/// zero, the Leibniz rule for composition, the permutation group laws, and
/// Koszul sign multiplicativity, 500 seeded cases each.
#[test]
fn criterion_8_structural_properties() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(808);

    // [d, [d, P]] = 0
    for _ in 0..500 {
        let n = rng.gen_range(3..=8);
        let complex = Complex::new(n).unwrap();
        let m = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let degree = rng.gen_range(-(m as Degree)..=(k as Degree));
        let p = Operation::random_sparse(complex, m, k, degree, 5, &mut rng);
        assert!(p.commutator_with_d().commutator_with_d().is_zero());
    }

    // Leibniz: [d, P∘Q] = [d,P]∘Q + (-1)^deg(P) P∘[d,Q], every single-edge
    // matching of random (≤2, ≤2) pairs.
    for _ in 0..500 {
        let complex = Complex::new(rng.gen_range(5..=8)).unwrap();
        let (mq, nq) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let (mp, np) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let dq = rng.gen_range(-(mq as Degree)..=(nq as Degree));
        let dp = rng.gen_range(-(mp as Degree)..=(np as Degree));
        let q = Operation::random_sparse(complex, mq, nq, dq, 4, &mut rng);
        let p = Operation::random_sparse(complex, mp, np, dp, 4, &mut rng);
        let input_order: Vec<Leg> = (0..mq).map(Leg::Q).chain((1..mp).map(Leg::P)).collect();
        let output_order: Vec<Leg> = (0..np).map(Leg::P).chain((1..nq).map(Leg::Q)).collect();
        for qo in 0..nq {
            for pi in 0..mp {
                let matching = [(qo, pi)];
                let in_order: Vec<Leg> = (0..mq)
                    .map(Leg::Q)
                    .chain((0..mp).filter(|i| *i != pi).map(Leg::P))
                    .collect();
                let out_order: Vec<Leg> = (0..np)
                    .map(Leg::P)
                    .chain((0..nq).filter(|j| *j != qo).map(Leg::Q))
                    .collect();
                let _ = (&input_order, &output_order);
                let pq = compose(&p, &q, &matching, &in_order, &out_order).unwrap();
                let lhs = pq.commutator_with_d();
                let dp_q = compose(&p.commutator_with_d(), &q, &matching, &in_order, &out_order)
                    .unwrap();
                let p_dq = compose(&p, &q.commutator_with_d(), &matching, &in_order, &out_order)
                    .unwrap();
                let sign = if dp.rem_euclid(2) == 0 { 1 } else { -1 };
                let rhs = dp_q.plus(&p_dq.scaled(&rat_int(sign))).unwrap();
                assert_eq!(lhs, rhs, "Leibniz failed at matching ({qo}, {pi})");
            }
        }
    }

    // Permutation actions are group actions.
    for _ in 0..500 {
        let complex = Complex::new(rng.gen_range(4..=6)).unwrap();
        let arity = rng.gen_range(2..=3);
        let degree = rng.gen_range(-(arity as Degree)..=(arity as Degree));
        let p = Operation::random_sparse(complex, arity, arity, degree, 4, &mut rng);
        let perms = Permutation::all(arity);
        let sigma = &perms[rng.gen_range(0..perms.len())];
        let tau = &perms[rng.gen_range(0..perms.len())];
        let st = sigma.compose(tau).unwrap();
        assert_eq!(
            p.permute_inputs(sigma).unwrap().permute_inputs(tau).unwrap(),
            p.permute_inputs(&st).unwrap()
        );
        assert_eq!(
            p.permute_outputs(tau).unwrap().permute_outputs(sigma).unwrap(),
            p.permute_outputs(&st).unwrap()
        );
    }

    // Koszul multiplicativity on random permutations and degrees.
    for _ in 0..500 {
        let size = rng.gen_range(1..=8);
        let random_perm = |rng: &mut ChaCha8Rng| {
            let mut images: Vec<usize> = (0..size).collect();
            for i in (1..size).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            Permutation::from_images(images).unwrap()
        };
        let sigma = random_perm(&mut rng);
        let tau = random_perm(&mut rng);
        let degrees: Vec<Degree> = (0..size).map(|_| rng.gen_range(-2..=3)).collect();
        let lhs = koszul_sign(&sigma.compose(&tau).unwrap(), &degrees).unwrap();
        let rhs = koszul_sign(&sigma, &tau.apply_slice(&degrees).unwrap()).unwrap()
            * koszul_sign(&tau, &degrees).unwrap();
        assert_eq!(lhs, rhs);
    }

    finish(
        "criterion 8 (structural property suite)",
        started,
        Duration::from_secs(60),
    );
}
