//! Machine-readable verification reports and the suites behind the CLI.
//!
//! A suite runs a list of named checks, each recording an expected value,
//! an actual value, an optional tolerance, and a pass flag; the report
//! passes iff every check does. Suites are deterministic given their
//! parameters; the only randomness is the seeded generator driving the
//! composition subadditivity sweep.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::circle::Complex;
use crate::graded::{rat, rat_int, Degree};
use crate::lifts::{verify_homotopy, Generator, LiftSet};
use crate::op::{compose, Leg, Operation};
use crate::qloc;
use crate::quad::{
    self, primitive, shaped_bump_profile, BumpShape, Grid1D, Profile,
};
use crate::symbolic::{
    frob1_associativity_check, frob1_compose, frob1_compose_k, generator_stats,
    block_interleave, Frob1Elem, HBasis, HTensor, ThreeVertexShape,
};
use crate::graded::Permutation;
use crate::{Error, Result};

/// One named check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub pass: bool,
}

/// A suite's outcome: parameters, checks, overall flag, wall-clock time.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    pub duration_secs: f64,
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let params = if self.params.is_empty() {
            String::new()
        } else {
            let kv: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            format!(" [{}]", kv.join(", "))
        };
        out.push_str(&format!("suite {}{}\n", self.suite, params));
        for check in &self.checks {
            let tol = check
                .tolerance
                .map(|t| format!(" (tol {t:.0e})"))
                .unwrap_or_default();
            out.push_str(&format!(
                "  {} {}: expected {}, got {}{}\n",
                if check.pass { "pass" } else { "FAIL" },
                check.name,
                check.expected,
                check.actual,
                tol
            ));
        }
        out.push_str(&format!(
            "  => {} ({} checks, {:.3}s)\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.checks.len(),
            self.duration_secs
        ));
        out
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| !c.pass)
    }
}

struct ReportBuilder {
    suite: String,
    params: BTreeMap<String, String>,
    checks: Vec<CheckRecord>,
    started: Instant,
}

impl ReportBuilder {
    fn new(suite: &str) -> Self {
        ReportBuilder {
            suite: suite.to_string(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            started: Instant::now(),
        }
    }

    fn param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    fn check_eq<T: Display + PartialEq>(&mut self, name: &str, expected: T, actual: T) {
        let pass = expected == actual;
        self.checks.push(CheckRecord {
            name: name.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            tolerance: None,
            pass,
        });
    }

    fn check_true(&mut self, name: &str, actual: bool) {
        self.check_eq(name, true, actual);
    }

    fn check_f64(&mut self, name: &str, expected: f64, actual: f64, tolerance: f64) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            expected: format!("{expected:.12}"),
            actual: format!("{actual:.12}"),
            tolerance: Some(tolerance),
            pass: (expected - actual).abs() <= tolerance,
        });
    }

    fn finish(self) -> Report {
        let pass = self.checks.iter().all(|c| c.pass);
        Report {
            suite: self.suite,
            params: self.params,
            checks: self.checks,
            pass,
            duration_secs: self.started.elapsed().as_secs_f64(),
        }
    }
}

fn dims_string(dims: &BTreeMap<Degree, usize>) -> String {
    let kv: Vec<String> = dims
        .iter()
        .filter(|(_, d)| **d != 0)
        .map(|(p, d)| format!("{p}:{d}"))
        .collect();
    format!("{{{}}}", kv.join(", "))
}

/// The discrete verification suite: homotopy equations, quasilocality
/// ledger, symmetry and invariance checks, and the obstruction, all at one
/// subdivision size.
pub fn verify_discrete(cells: u32, seed: u64) -> Result<Report> {
    let mut b = ReportBuilder::new("verify-discrete")
        .param("cells", cells)
        .param("seed", seed);
    let complex = Complex::new(cells)?;
    let lifts = LiftSet::build(complex)?;

    for gen in Generator::ALL {
        let table = lifts.rhs_from_tables(gen)?;
        let composed = lifts.rhs_from_compositions(gen)?;
        b.check_true(
            &format!("{}: table == compositions", gen.name()),
            table == composed,
        );
        if let Some(lift) = lifts.lift(gen) {
            b.check_true(
                &format!("{}: [d, lift] == rhs", gen.name()),
                verify_homotopy(lift, &table)?,
            );
        }
    }

    b.check_eq("mult radius", 0, lifts.mult.quasilocality_radius());
    b.check_eq("comult radius", 0, lifts.comult.quasilocality_radius());
    for gen in Generator::LIFTED {
        let radius = lifts.lift(gen).unwrap().quasilocality_radius();
        b.check_true(&format!("{} radius <= 1", gen.name()), radius <= 1);
    }
    b.check_eq(
        "frobeniator target radius",
        1,
        lifts
            .rhs_from_tables(Generator::Frobeniator)?
            .quasilocality_radius(),
    );

    b.check_true("S3 symmetry of (co)associator", lifts.s3_symmetry_check()?);

    let mut invariant = true;
    for gen in Generator::LIFTED {
        let lift = lifts.lift(gen).unwrap();
        invariant &= lift.shifted(1) == *lift;
    }
    b.check_true("lifts are rotation invariant", invariant);

    // Subadditivity of the quasilocality radius under single-edge
    // composition, on seeded random sparse pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut subadditive = true;
    let mut closure = true;
    for _ in 0..200 {
        use rand::Rng;
        let (mq, nq) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let (mp, np) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let dq = rng.gen_range(-(mq as Degree)..=(nq as Degree));
        let dp = rng.gen_range(-(mp as Degree)..=(np as Degree));
        let q = Operation::random_sparse(complex, mq, nq, dq, 6, &mut rng);
        let p = Operation::random_sparse(complex, mp, np, dp, 6, &mut rng);
        let input_order: Vec<Leg> = (0..mq)
            .map(Leg::Q)
            .chain((1..mp).map(Leg::P))
            .collect();
        let output_order: Vec<Leg> = (0..np)
            .map(Leg::P)
            .chain((1..nq).map(Leg::Q))
            .collect();
        let composed = compose(&p, &q, &[(0, 0)], &input_order, &output_order)?;
        subadditive &= composed.quasilocality_radius()
            <= p.quasilocality_radius() + q.quasilocality_radius() + 1;
        closure &= p.commutator_with_d().quasilocality_radius() <= p.quasilocality_radius();
    }
    b.check_true("radius(P∘Q) <= r(P) + r(Q) + 1 on 200 random pairs", subadditive);
    b.check_true("radius([d, P]) <= radius(P)", closure);

    append_obstruction_checks(&mut b, &lifts)?;
    Ok(b.finish())
}

fn append_obstruction_checks(b: &mut ReportBuilder, lifts: &LiftSet) -> Result<()> {
    match lifts.b_obstruction() {
        Ok(obstruction) => {
            let expected = Operation::identity(lifts.complex).scaled(&rat(-1, 12));
            b.check_true("obstruction == -1/12 id entrywise", obstruction == expected);
            b.check_true(
                "obstruction is closed",
                obstruction.commutator_with_d().is_zero(),
            );
            let (h0, h1) = obstruction.cohomology_action_11()?;
            b.check_eq("obstruction acts on H^0 by", rat(-1, 12), h0.clone());
            b.check_eq("obstruction acts on H^1 by", rat(-1, 12), h1.clone());
            b.check_true(
                "obstruction is not exact (nonzero action)",
                !(h0 == rat_int(0) && h1 == rat_int(0)),
            );
        }
        Err(Error::Verification(message)) => {
            b.check_eq("obstruction certificate", "valid".to_string(), message);
        }
        Err(other) => return Err(other),
    }
    Ok(())
}

/// Just the genus-two obstruction, at one subdivision size.
pub fn obstruction(cells: u32) -> Result<Report> {
    let mut b = ReportBuilder::new("obstruction").param("cells", cells);
    let lifts = LiftSet::build(Complex::new(cells)?)?;
    append_obstruction_checks(&mut b, &lifts)?;
    Ok(b.finish())
}

/// The two-dimensional cohomology model: multiplication and
/// comultiplication tables, the Frobenius axiom rows, and the two
/// coassociativity expansions, all against frozen values.
pub fn verify_homology_model() -> Result<Report> {
    use HBasis::{Omega, One};
    let mut b = ReportBuilder::new("verify-homology-model");

    type FrozenRow = (Vec<HBasis>, Vec<(Vec<HBasis>, i64)>);
    let frozen_rows: [FrozenRow; 4] = [
        (vec![One, One], vec![(vec![One, Omega], -1), (vec![Omega, One], 1)]),
        (vec![One, Omega], vec![(vec![Omega, Omega], 1)]),
        (vec![Omega, One], vec![(vec![Omega, Omega], 1)]),
        (vec![Omega, Omega], vec![]),
    ];
    for (input, expected_terms) in &frozen_rows {
        let expected = HTensor::from_terms(
            2,
            &expected_terms
                .iter()
                .map(|(t, c)| (t.clone(), rat_int(*c)))
                .collect::<Vec<_>>(),
        );
        let tensor = HTensor::basis(input.clone());
        let lhs = tensor.mult_at(0).comult_at(0);
        let rhs = tensor.comult_at(0).mult_at(1);
        let mirror = tensor.comult_at(1).mult_at(0);
        let name = format!("{input:?}");
        b.check_true(&format!("Frobenius lhs row {name}"), lhs == expected);
        b.check_true(&format!("Frobenius rhs row {name}"), rhs == expected);
        b.check_true(&format!("Frobenius mirror row {name}"), mirror == expected);
    }

    let on_one_left = HTensor::basis(vec![One]).comult_at(0).comult_at(0);
    let expected_left = HTensor::from_terms(
        3,
        &[
            (vec![One, Omega, Omega], rat_int(1)),
            (vec![Omega, One, Omega], rat_int(-1)),
            (vec![Omega, Omega, One], rat_int(1)),
        ],
    );
    b.check_true("(Δ⊗id)Δ(1) expansion", on_one_left == expected_left);
    let on_one_right = HTensor::basis(vec![One]).comult_at(0).comult_at(1);
    let expected_right = HTensor::from_terms(
        3,
        &[
            (vec![One, Omega, Omega], rat_int(-1)),
            (vec![Omega, One, Omega], rat_int(1)),
            (vec![Omega, Omega, One], rat_int(-1)),
        ],
    );
    b.check_true("(id⊗Δ)Δ(1) expansion", on_one_right == expected_right);
    let on_omega_left = HTensor::basis(vec![Omega]).comult_at(0).comult_at(0);
    let on_omega_right = HTensor::basis(vec![Omega]).comult_at(0).comult_at(1);
    b.check_true(
        "coassociativity on ω with the braiding sign",
        on_omega_left == HTensor::basis(vec![Omega, Omega, Omega])
            && on_omega_right
                == HTensor::from_terms(3, &[(vec![Omega, Omega, Omega], rat_int(-1))]),
    );

    Ok(b.finish())
}

/// The abstract component calculus: composition signs, vanishing of
/// multi-edge composites, exhaustive dioperadic associativity, and the
/// generator bookkeeping.
pub fn verify_frob1() -> Result<Report> {
    let mut b = ReportBuilder::new("verify-frob1");

    let receiver = Frob1Elem::generator(1, 2)?;
    let provider = Frob1Elem::generator(2, 1)?;
    let standard = frob1_compose(&receiver, 0, &provider, 0, &Permutation::identity(2))?;
    b.check_eq(
        "standard composition coefficient",
        rat_int(1),
        standard.coeff().clone(),
    );

    let mut interleave_ok = true;
    for n1 in 1..=4usize {
        for n2 in 1..=4usize {
            let expected = if (n1 * (n2 - 1)) % 2 == 0 { 1 } else { -1 };
            let receiver = Frob1Elem::generator(2, n1)?;
            let provider = Frob1Elem::generator(1, n2 + 1)?;
            let out = frob1_compose(&receiver, 0, &provider, 0, &block_interleave(n1, n2))?;
            interleave_ok &= out.coeff() == &rat_int(expected);
        }
    }
    b.check_true(
        "interleaved output order sign is (-1)^(n1 (n2 - 1)), n1, n2 <= 4",
        interleave_ok,
    );

    let a = Frob1Elem::generator(3, 1)?;
    let bb = Frob1Elem::generator(1, 3)?;
    b.check_true(
        "multi-edge composition vanishes",
        frob1_compose_k(&a, &bb, 2)?.is_zero() && frob1_compose_k(&a, &bb, 3)?.is_zero(),
    );

    let mut associative = true;
    let mut shapes_checked: u64 = 0;
    for m1 in 1..=5usize {
        for n1 in 1..=5usize {
            for m2 in 1..=5usize {
                for n2 in 1..=5usize {
                    for m3 in 1..=5usize {
                        for n3 in 1..=5usize {
                            if m1 + n1 + m2 + n2 + m3 + n3 > 12 {
                                continue;
                            }
                            let v1 = Frob1Elem::generator(m1, n1)?;
                            let v2 = Frob1Elem::generator(m2, n2)?;
                            let v3 = Frob1Elem::generator(m3, n3)?;
                            for shape in [
                                ThreeVertexShape::Chain,
                                ThreeVertexShape::TwoProviders,
                                ThreeVertexShape::TwoReceivers,
                            ] {
                                if let Ok(ok) =
                                    frob1_associativity_check(&v1, &v2, &v3, shape)
                                {
                                    associative &= ok;
                                    shapes_checked += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    b.check_true(
        &format!(
            "dioperadic associativity, composite m+n <= 8 ({shapes_checked} shapes)"
        ),
        associative,
    );

    let stats_b = generator_stats(1, 1, 2)?;
    b.check_eq(
        "genus-2 (1,1) generator stats (mults, comults, degree)",
        "(2, 2, -1)".to_string(),
        format!(
            "({}, {}, {})",
            stats_b.n_mult, stats_b.n_comult, stats_b.coh_degree
        ),
    );
    let stats_m = generator_stats(2, 1, 0)?;
    let stats_a = generator_stats(1, 2, 1)?;
    b.check_true(
        "multiplication and genus-1 (1,2) stats",
        (stats_m.n_mult, stats_m.n_comult, stats_m.coh_degree) == (1, 0, 0)
            && (stats_a.n_mult, stats_a.n_comult, stats_a.coh_degree) == (1, 2, 0),
    );

    Ok(b.finish())
}

/// Quasilocal cohomology dimensions for one arity pair, checked against
/// the shift of the circle's cohomology.
pub fn qloc_dims(cells: u32, inputs: usize, outputs: usize, ell: u32) -> Result<Report> {
    let mut b = ReportBuilder::new("qloc-dims")
        .param("cells", cells)
        .param("m", inputs)
        .param("n", outputs)
        .param("ell", ell);
    let complex = Complex::new(cells)?;
    b.check_true(
        "complex closes under [d, -] and d² = 0",
        qloc::differential_squares_to_zero(complex, inputs, outputs, ell)?,
    );
    let dims = qloc::cohomology_dims(complex, inputs, outputs, ell)?;
    let mut expected = BTreeMap::new();
    expected.insert(outputs as Degree - 1, 1usize);
    expected.insert(outputs as Degree, 1usize);
    b.check_eq(
        "cohomology dims equal the circle's, shifted by 1 - n",
        dims_string(&expected),
        dims_string(&dims),
    );
    Ok(b.finish())
}

/// Numerical verification of the smooth-model integrals, with sweeps over
/// the regulator and the bump family.
pub fn verify_derham(epsilon: f64, step_div: u32) -> Result<Report> {
    let mut b = ReportBuilder::new("verify-derham")
        .param("epsilon", epsilon)
        .param("step-div", step_div);

    let grid = Grid1D::for_epsilon(epsilon, step_div)?;
    let phi = shaped_bump_profile(grid, epsilon, BumpShape::SmoothExp)?;
    let f = primitive(&phi);

    b.check_f64("bump mass", 1.0, phi.integral(), 1e-12);
    b.check_f64("F(+∞)", 1.0, *f.values.last().unwrap(), 1e-12);
    b.check_f64("F(0)", 0.5, f.values[grid.center()], 1e-10);
    let mut support_ok = true;
    for i in 0..grid.samples() {
        let x = grid.x(i);
        if x <= -epsilon {
            support_ok &= f.values[i].abs() < 1e-12;
        }
        if x >= epsilon {
            support_ok &= (f.values[i] - 1.0).abs() < 1e-12;
        }
    }
    b.check_true("F - Θ is supported in (-ε, ε)", support_ok);

    let (m1, m2) = quad::moment_checks(&phi, &f);
    b.check_f64("∫ φ F", 0.5, m1, 1e-8);
    b.check_f64("∫ φ F²", 1.0 / 3.0, m2, 1e-8);

    let sample_points = [-0.8, -0.3, 0.0, 0.4, 0.9].map(|t| t * epsilon);
    for y in sample_points {
        let (a, bb, c) = quad::u_integrals(y, &phi, &f);
        b.check_f64(&format!("A(y = {y:.3})"), 1.0, a, 1e-8);
        b.check_f64(&format!("B(y = {y:.3})"), -0.5, bb, 1e-8);
        let y_idx =
            (grid.center() as isize + (y / grid.step).round() as isize) as usize;
        b.check_f64(
            &format!("C(y) + (1 - F(y)) at y = {y:.3}"),
            0.0,
            c + (1.0 - f.values[y_idx]),
            1e-8,
        );
    }

    let (total, half) = quad::mu_total_and_halfplane(&phi, &f);
    b.check_f64("∬ μ (reduced)", 0.0, total, 1e-6);
    b.check_f64("∬_{y ≥ x} μ (reduced)", -1.0 / 12.0, half, 1e-6);

    let direct = quad::mu_direct_halfplane(&phi, &f);
    b.check_f64("∬_{y ≥ x} μ (direct)", -1.0 / 12.0, direct, 1e-4);
    b.check_f64("direct vs reduced half-plane", half, direct, 1e-4);
    b.check_f64("∬ μ (direct)", 0.0, quad::mu_direct_total(&phi, &f), 1e-4);

    // Regulator and bump-shape sweep.
    let mut halves = Vec::new();
    for eps in [0.05, 0.1, 0.2] {
        for shape in [BumpShape::SmoothExp, BumpShape::Quintic] {
            let grid = Grid1D::for_epsilon(eps, step_div)?;
            let phi = shaped_bump_profile(grid, eps, shape)?;
            let f = primitive(&phi);
            let (total, half) = quad::mu_total_and_halfplane(&phi, &f);
            let tag = format!("ε = {eps}, {shape:?}");
            b.check_f64(&format!("∬ μ [{tag}]"), 0.0, total, 1e-6);
            b.check_f64(&format!("∬_(y ≥ x) μ [{tag}]"), -1.0 / 12.0, half, 1e-6);
            let direct = quad::mu_direct_halfplane(&phi, &f);
            b.check_f64(
                &format!("direct half-plane [{tag}]"),
                -1.0 / 12.0,
                direct,
                1e-4,
            );
            halves.push(half);
        }
    }
    let spread = halves
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    b.check_f64(
        "half-plane spread across the sweep",
        0.0,
        spread.1 - spread.0,
        1e-5,
    );

    Ok(b.finish())
}

/// Profiles for the reduced-path integrals at the suite defaults; shared
/// by the book examples.
pub fn default_profiles() -> Result<(Profile, Profile)> {
    let grid = Grid1D::for_epsilon(0.1, 200)?;
    let phi = shaped_bump_profile(grid, 0.1, BumpShape::SmoothExp)?;
    let f = primitive(&phi);
    Ok((phi, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_suite_passes_at_default_size() {
        let report = verify_discrete(8, 2024).unwrap();
        assert!(report.pass, "{}", report.render_text());
    }

    #[test]
    fn obstruction_suite_passes() {
        let report = obstruction(8).unwrap();
        assert!(report.pass, "{}", report.render_text());
        assert!(report.render_text().contains("-1/12"));
    }

    #[test]
    fn homology_model_suite_passes() {
        let report = verify_homology_model().unwrap();
        assert!(report.pass, "{}", report.render_text());
    }

    #[test]
    fn frob1_suite_passes() {
        let report = verify_frob1().unwrap();
        assert!(report.pass, "{}", report.render_text());
    }

    #[test]
    fn qloc_suite_matches_the_shift() {
        let report = qloc_dims(8, 1, 2, 1).unwrap();
        assert!(report.pass, "{}", report.render_text());
    }

    #[test]
    fn reports_serialize_to_json() {
        let report = verify_homology_model().unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"suite\":\"verify-homology-model\""));
        assert!(json.contains("\"pass\":true"));
    }
}
