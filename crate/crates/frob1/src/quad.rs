//! Numerical replay of the smooth-model integrals behind the obstruction.
//!
//! Everything here is double-precision quadrature of compactly supported
//! data on a uniform grid: a unit-mass bump `φ` supported in `(-ε, ε)`,
//! its primitive `F`, the three one-dimensional integrals that reduce the
//! two-form `μ`, and two independent evaluations of the half-plane integral
//! `∬_{y ≥ x} μ = -1/12` (and of the full-plane integral, which vanishes).
//!
//! The step function `Θ` is handled analytically: integrands containing
//! `F - Θ` are split at the jump and integrated piece by piece, so the
//! quadrature never sees the discontinuity and products like `Θ · δ`
//! never arise. Every reported value is bump-shape and `ε` independent up
//! to quadrature error; the verification suite sweeps both.
//!
//! Orientation bookkeeping for the direct path: the two-form is reduced to
//! a scalar coefficient `m(x, y)` against `dx ∧ dy` by moving each
//! integration differential to the front of the form before integrating
//! (one transposition per odd factor crossed). Pairing the iterated
//! integral signs `∫_x ∫_y = -∫_y ∫_x` with that reduction leaves one
//! global sign: the iterated integral of `μ` equals minus the naive double
//! integral of `m`.

use crate::{Error, Result};

/// A symmetric uniform grid `x_i = (i - half_n) · step` for
/// `i = 0 ..= 2 · half_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub half_width: f64,
    pub step: f64,
    half_n: usize,
}

impl Grid1D {
    /// Grid of half-width `half_width` and spacing `step`; the half-width
    /// is rounded up to a whole number of steps so 0 is a grid point.
    pub fn new(half_width: f64, step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0 && half_width.is_finite() && half_width > 0.0) {
            return Err(Error::Argument(
                "grid needs positive finite step and half-width".into(),
            ));
        }
        let half_n = (half_width / step).ceil() as usize;
        Ok(Grid1D {
            half_width: half_n as f64 * step,
            step,
            half_n,
        })
    }

    /// The grid used throughout the suite: `h = ε / step_div` with
    /// half-width `4ε`, comfortably containing every convolution of bumps
    /// supported in `(-ε, ε)`.
    pub fn for_epsilon(epsilon: f64, step_div: u32) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::Argument("epsilon must be positive".into()));
        }
        if step_div == 0 {
            return Err(Error::Argument("step divisor must be positive".into()));
        }
        Grid1D::new(4.0 * epsilon, epsilon / step_div as f64)
    }

    pub fn samples(&self) -> usize {
        2 * self.half_n + 1
    }

    pub fn center(&self) -> usize {
        self.half_n
    }

    pub fn x(&self, i: usize) -> f64 {
        (i as f64 - self.half_n as f64) * self.step
    }

    /// Composite trapezoid rule over the whole grid.
    pub fn trapezoid(&self, values: &[f64]) -> f64 {
        assert_eq!(values.len(), self.samples());
        let inner: f64 = values[1..values.len() - 1].iter().sum();
        (inner + 0.5 * (values[0] + values[values.len() - 1])) * self.step
    }
}

/// The available bump families. Both are unit-mass, even and supported in
/// `(-ε, ε)`; results must agree between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BumpShape {
    /// `exp(-1 / (1 - t²))`: the standard smooth mollifier.
    SmoothExp,
    /// `(1 - t²)⁵`: polynomial, flat enough at the boundary for the
    /// trapezoid rule to stay well inside the stated tolerances.
    Quintic,
}

/// A sampled scalar profile on a grid: a bump, a primitive, an integrand.
#[derive(Clone, Debug)]
pub struct Profile {
    pub grid: Grid1D,
    pub values: Vec<f64>,
}

impl Profile {
    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Value at the (possibly out-of-range) signed index, extended by the
    /// profile's limits: 0 on the left and `values.last()` on the right.
    /// Exact for compactly supported bumps and their primitives.
    pub fn value_extended(&self, i: isize) -> f64 {
        if i < 0 {
            self.values[0]
        } else if i as usize >= self.values.len() {
            *self.values.last().unwrap()
        } else {
            self.values[i as usize]
        }
    }

    pub fn integral(&self) -> f64 {
        self.grid.trapezoid(&self.values)
    }
}

/// The default bump: [`BumpShape::SmoothExp`], normalized to unit mass.
pub fn bump_profile(grid: Grid1D, epsilon: f64) -> Result<Profile> {
    shaped_bump_profile(grid, epsilon, BumpShape::SmoothExp)
}

/// A unit-mass even bump supported in `(-ε, ε)`. Errors if the grid does
/// not resolve the bump (`step > ε / 200`) or cannot contain it.
pub fn shaped_bump_profile(grid: Grid1D, epsilon: f64, shape: BumpShape) -> Result<Profile> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Argument("epsilon must be positive".into()));
    }
    if grid.step > epsilon / 200.0 {
        return Err(Error::Argument(format!(
            "grid step {} under-resolves epsilon = {epsilon}; need step <= epsilon/200",
            grid.step
        )));
    }
    if grid.half_width < epsilon {
        return Err(Error::Argument(
            "grid is too narrow to contain the bump support".into(),
        ));
    }
    let raw = |t: f64| -> f64 {
        if t.abs() >= 1.0 {
            return 0.0;
        }
        match shape {
            BumpShape::SmoothExp => (-1.0 / (1.0 - t * t)).exp(),
            BumpShape::Quintic => (1.0 - t * t).powi(5),
        }
    };
    // Sample symmetrically, then rescale so the trapezoid mass is exactly 1.
    let center = grid.center();
    let mut values = vec![0.0; grid.samples()];
    for offset in 0..=center {
        let v = raw(grid.x(center + offset) / epsilon);
        values[center + offset] = v;
        values[center - offset] = v;
    }
    let mass = grid.trapezoid(&values);
    for v in &mut values {
        *v /= mass;
    }
    Ok(Profile { grid, values })
}

/// One sixth-order cumulative increment `∫_{x_i}^{x_{i+1}} f` from the six
/// surrounding samples (degree-five interpolation). Out-of-range samples
/// read through the profile extension, which is exact for compactly
/// supported integrands.
fn increment6(sample: impl Fn(isize) -> f64, i: isize, step: f64) -> f64 {
    (11.0 * sample(i - 2) - 93.0 * sample(i - 1) + 802.0 * sample(i) + 802.0 * sample(i + 1)
        - 93.0 * sample(i + 2)
        + 11.0 * sample(i + 3))
        * step
        / 1440.0
}

/// Cumulative integral of a profile: `F(x) = ∫_{-∞}^x φ`, accumulated from
/// sixth-order interval increments so the pointwise values track the true
/// primitive far below the tolerances of every downstream check.
pub fn primitive(phi: &Profile) -> Profile {
    let mut values = Vec::with_capacity(phi.values.len());
    let mut acc = 0.0;
    values.push(0.0);
    for i in 0..phi.values.len() - 1 {
        acc += increment6(|j| phi.value_extended(j), i as isize, phi.grid.step);
        values.push(acc);
    }
    Profile {
        grid: phi.grid,
        values,
    }
}

/// The first two moments of `F` against `φ`: `(∫ φ F, ∫ φ F²)`, which the
/// exact-form identities pin at `mass²/2` and `mass³/3`.
pub fn moment_checks(phi: &Profile, f: &Profile) -> (f64, f64) {
    let m1: Vec<f64> = phi
        .values
        .iter()
        .zip(&f.values)
        .map(|(p, q)| p * q)
        .collect();
    let m2: Vec<f64> = phi
        .values
        .iter()
        .zip(&f.values)
        .map(|(p, q)| p * q * q)
        .collect();
    (phi.grid.trapezoid(&m1), phi.grid.trapezoid(&m2))
}

/// The three one-variable integrals at the sample point `y` (snapped to
/// the grid), each evaluated by direct quadrature of its integrand:
///
/// * `A = ∫ d(F(u) F(y+u)) = ∫ (φ(u) F(y+u) + F(u) φ(y+u)) du  → 1`
/// * `B = -1/2 ∫ d(F(u)²) = -∫ F(u) φ(u) du                    → -1/2`
/// * `C = -∫_{u ≥ 0} φ(y+u) du                                  → -(1 - F(y))`
pub fn u_integrals(y: f64, phi: &Profile, f: &Profile) -> (f64, f64, f64) {
    let grid = phi.grid;
    let y_idx = (y / grid.step).round() as isize;
    let shifted = |p: &Profile, i: usize| p.value_extended(i as isize + y_idx);
    let a_integrand: Vec<f64> = (0..grid.samples())
        .map(|i| phi.values[i] * shifted(f, i) + f.values[i] * shifted(phi, i))
        .collect();
    let a = grid.trapezoid(&a_integrand);
    let b_integrand: Vec<f64> = (0..grid.samples())
        .map(|i| f.values[i] * phi.values[i])
        .collect();
    let b = -grid.trapezoid(&b_integrand);
    // C: the tail integral of the shifted bump from u = 0 (a grid point),
    // accumulated with the same increments as the primitive so that
    // C + (1 - F(y)) cancels structurally.
    let center = grid.center() as isize;
    let mut c_sum = 0.0;
    for i in center..grid.samples() as isize - 1 {
        c_sum += increment6(|j| phi.value_extended(j + y_idx), i, grid.step);
    }
    (a, b, -c_sum)
}

/// The reduced evaluation of the two-form integrals: the full-plane value
/// `-∫ φ(y)(A + B + C(y)) dy` (which vanishes) and the half-plane value
/// `-∫ F(y) φ(y)(A + B + C(y)) dy = -1/12`, with `A, B, C` supplied
/// pointwise by [`u_integrals`].
pub fn mu_total_and_halfplane(phi: &Profile, f: &Profile) -> (f64, f64) {
    let grid = phi.grid;
    let mut total_integrand = vec![0.0; grid.samples()];
    let mut half_integrand = vec![0.0; grid.samples()];
    for i in 0..grid.samples() {
        if phi.values[i] == 0.0 {
            continue;
        }
        let y = grid.x(i);
        let (a, b, c) = u_integrals(y, phi, f);
        total_integrand[i] = phi.values[i] * (a + b + c);
        half_integrand[i] = f.values[i] * phi.values[i] * (a + b + c);
    }
    (
        -grid.trapezoid(&total_integrand),
        -grid.trapezoid(&half_integrand),
    )
}

/// The scalar coefficient `m(x, y)` of the unreduced two-form against
/// `dx ∧ dy`:
///
/// `m(x,y) = ∫ φ(x-u) φ(y-u) [ φ(u)(F(y) - F(u)) + φ(y)(F(u) - Θ(u)) ] du`,
///
/// the first summand coming from the frobeniator composite (its inner
/// integral collapsed to `F(y) - F(u)`) and the second from the
/// coassociator term. The `u`-quadrature is split at the `Θ` jump.
fn mu_coefficient(ix: usize, iy: usize, phi: &Profile, f: &Profile, support: isize) -> f64 {
    let grid = phi.grid;
    let center = grid.center() as isize;
    let f_y = f.values[iy];
    let phi_y = phi.values[iy];
    let at = |p: &Profile, i: isize| p.value_extended(i);
    let ix = ix as isize;
    let iy = iy as isize;
    // supp φ(x-u) ∩ supp φ(y-u): u within the bump radius of both x and y.
    let lo = (ix - support).max(iy - support).max(0);
    let hi = (ix + support).min(iy + support).min(2 * center);
    if lo > hi {
        return 0.0;
    }
    let integrand_smooth = |iu: isize| -> f64 {
        let w = at(phi, ix - iu + center) * at(phi, iy - iu + center);
        if w == 0.0 {
            return 0.0;
        }
        w * at(phi, iu) * (f_y - at(f, iu))
    };
    let integrand_theta = |iu: isize, theta: f64| -> f64 {
        let w = at(phi, ix - iu + center) * at(phi, iy - iu + center);
        if w == 0.0 {
            return 0.0;
        }
        w * phi_y * (at(f, iu) - theta)
    };
    // trapezoid for the smooth part over [lo, hi]
    let mut smooth = 0.5 * (integrand_smooth(lo) + integrand_smooth(hi));
    for iu in lo + 1..hi {
        smooth += integrand_smooth(iu);
    }
    // Θ part: piecewise over [lo, center] with Θ = 0 and [center, hi] with
    // Θ = 1, taking one-sided values at the jump.
    let mut theta_part = 0.0;
    if lo < center {
        let top = hi.min(center);
        let mut s = 0.5 * (integrand_theta(lo, 0.0) + integrand_theta(top, 0.0));
        for iu in lo + 1..top {
            s += integrand_theta(iu, 0.0);
        }
        theta_part += s;
    }
    if hi > center {
        let bottom = lo.max(center);
        let mut s = 0.5 * (integrand_theta(bottom, 1.0) + integrand_theta(hi, 1.0));
        for iu in bottom + 1..hi {
            s += integrand_theta(iu, 1.0);
        }
        theta_part += s;
    }
    (smooth + theta_part) * grid.step
}

/// Direct nested-quadrature evaluation of the half-plane integral of the
/// unreduced two-form over `y ≥ x`. Independent of the reduced path except
/// for sharing the sampled bump and primitive.
pub fn mu_direct_halfplane(phi: &Profile, f: &Profile) -> f64 {
    let grid = phi.grid;
    let center = grid.center() as isize;
    // m is supported where |x|, |y| < 2ε; the bump's support radius in
    // steps is bounded by the first/last nonzero sample.
    let support = bump_support_steps(phi);
    let lo = (center - 2 * support).max(0) as usize;
    let hi = ((center + 2 * support) as usize).min(grid.samples() - 1);
    let mut sum = 0.0;
    for iy in lo..=hi {
        // trapezoid in x over (-∞, y]: interior points plus half weight on
        // the diagonal x = y; the left end lies outside the support.
        let mut row = 0.5 * mu_coefficient(iy, iy, phi, f, support);
        for ix in lo..iy {
            row += mu_coefficient(ix, iy, phi, f, support);
        }
        sum += row * trapezoid_weight(iy, lo, hi);
    }
    // iterated-integral orientation: minus the naive double integral
    -sum * grid.step * grid.step
}

/// Direct evaluation of the full-plane integral of the two-form; exactness
/// makes it vanish.
pub fn mu_direct_total(phi: &Profile, f: &Profile) -> f64 {
    let grid = phi.grid;
    let center = grid.center() as isize;
    let support = bump_support_steps(phi);
    let lo = (center - 2 * support).max(0) as usize;
    let hi = ((center + 2 * support) as usize).min(grid.samples() - 1);
    let mut sum = 0.0;
    for iy in lo..=hi {
        let mut row = 0.0;
        for ix in lo..=hi {
            row += mu_coefficient(ix, iy, phi, f, support) * trapezoid_weight(ix, lo, hi);
        }
        sum += row * trapezoid_weight(iy, lo, hi);
    }
    -sum * grid.step * grid.step
}

fn trapezoid_weight(i: usize, lo: usize, hi: usize) -> f64 {
    if i == lo || i == hi {
        0.5
    } else {
        1.0
    }
}

fn bump_support_steps(phi: &Profile) -> isize {
    let center = phi.grid.center();
    let mut radius = 0usize;
    for (i, v) in phi.values.iter().enumerate() {
        if *v != 0.0 {
            radius = radius.max(i.abs_diff(center));
        }
    }
    radius as isize + 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(epsilon: f64, step_div: u32, shape: BumpShape) -> (Profile, Profile) {
        let grid = Grid1D::for_epsilon(epsilon, step_div).unwrap();
        let phi = shaped_bump_profile(grid, epsilon, shape).unwrap();
        let f = primitive(&phi);
        (phi, f)
    }

    #[test]
    fn bump_is_normalized_even_and_supported() {
        let (phi, _) = setup(0.1, 200, BumpShape::SmoothExp);
        assert!((phi.integral() - 1.0).abs() < 1e-12);
        let grid = phi.grid;
        let center = grid.center();
        for offset in 0..=center {
            assert_eq!(phi.values[center + offset], phi.values[center - offset]);
            if grid.x(center + offset) >= 0.1 {
                assert_eq!(phi.values[center + offset], 0.0);
            }
        }
    }

    #[test]
    fn under_resolved_grid_is_rejected() {
        let grid = Grid1D::new(0.4, 0.01).unwrap();
        assert!(shaped_bump_profile(grid, 0.1, BumpShape::SmoothExp).is_err());
    }

    #[test]
    fn primitive_is_monotone_with_the_right_limits() {
        let (phi, f) = setup(0.1, 200, BumpShape::SmoothExp);
        assert!((f.values.last().unwrap() - 1.0).abs() < 1e-12);
        assert!((f.values[f.grid.center()] - 0.5).abs() < 1e-10);
        for w in f.values.windows(2) {
            assert!(w[1] >= w[0]);
        }
        // F - Θ is supported in (-ε, ε)
        for i in 0..f.grid.samples() {
            let x = f.grid.x(i);
            if x <= -0.1 {
                assert!(f.values[i].abs() < 1e-12);
            }
            if x >= 0.1 {
                assert!((f.values[i] - 1.0).abs() < 1e-12);
            }
        }
        let _ = phi;
    }

    #[test]
    fn moments_hit_the_exact_form_identities() {
        let (phi, f) = setup(0.1, 200, BumpShape::SmoothExp);
        let (m1, m2) = moment_checks(&phi, &f);
        assert!((m1 - 0.5).abs() < 1e-8, "m1 = {m1}");
        assert!((m2 - 1.0 / 3.0).abs() < 1e-8, "m2 = {m2}");
    }

    // With φ scaled by 2 the first moment becomes mass²/2 = 2.
    #[test]
    fn moments_scale_with_the_mass() {
        let (phi, _) = setup(0.1, 200, BumpShape::SmoothExp);
        let doubled = Profile {
            grid: phi.grid,
            values: phi.values.iter().map(|v| 2.0 * v).collect(),
        };
        let f2 = primitive(&doubled);
        let (m1, m2) = moment_checks(&doubled, &f2);
        assert!((m1 - 2.0).abs() < 1e-8);
        assert!((m2 - 8.0 / 3.0).abs() < 1e-7);
    }

    #[test]
    fn u_integrals_against_closed_forms() {
        let (phi, f) = setup(0.1, 200, BumpShape::SmoothExp);
        for y in [-0.08, -0.03, 0.0, 0.04, 0.09] {
            let (a, b, c) = u_integrals(y, &phi, &f);
            assert!((a - 1.0).abs() < 1e-8, "A({y}) = {a}");
            assert!((b + 0.5).abs() < 1e-8, "B = {b}");
            let y_idx =
                (phi.grid.center() as isize + (y / phi.grid.step).round() as isize) as usize;
            let expected = -(1.0 - f.values[y_idx]);
            assert!((c - expected).abs() < 1e-8, "C({y}) = {c} != {expected}");
        }
    }

    #[test]
    fn reduced_path_total_and_halfplane() {
        let (phi, f) = setup(0.1, 200, BumpShape::SmoothExp);
        let (total, half) = mu_total_and_halfplane(&phi, &f);
        assert!(total.abs() < 1e-6, "total = {total}");
        assert!((half + 1.0 / 12.0).abs() < 1e-6, "half = {half}");
    }

    #[test]
    fn reduced_path_is_epsilon_and_shape_independent() {
        let mut results = Vec::new();
        for epsilon in [0.05, 0.1, 0.2] {
            for shape in [BumpShape::SmoothExp, BumpShape::Quintic] {
                let (phi, f) = setup(epsilon, 200, shape);
                let (total, half) = mu_total_and_halfplane(&phi, &f);
                assert!(total.abs() < 1e-6);
                results.push(half);
            }
        }
        for pair in results.windows(2) {
            assert!((pair[0] - pair[1]).abs() < 1e-5);
        }
    }

    #[test]
    fn direct_path_agrees_and_the_full_plane_vanishes() {
        let (phi, f) = setup(0.1, 200, BumpShape::SmoothExp);
        let direct = mu_direct_halfplane(&phi, &f);
        assert!((direct + 1.0 / 12.0).abs() < 1e-4, "direct = {direct}");
        let (_, reduced) = mu_total_and_halfplane(&phi, &f);
        assert!((direct - reduced).abs() < 1e-4);
        let total = mu_direct_total(&phi, &f);
        assert!(total.abs() < 1e-4, "direct total = {total}");
    }

    #[test]
    fn values_are_stable_under_halving_the_step() {
        let (phi1, f1) = setup(0.1, 200, BumpShape::SmoothExp);
        let (phi2, f2) = setup(0.1, 400, BumpShape::SmoothExp);
        let (_, h1) = mu_total_and_halfplane(&phi1, &f1);
        let (_, h2) = mu_total_and_halfplane(&phi2, &f2);
        assert!((h1 - h2).abs() < 1e-8);
        let (m1a, m2a) = moment_checks(&phi1, &f1);
        let (m1b, m2b) = moment_checks(&phi2, &f2);
        assert!((m1a - m1b).abs() < 1e-9);
        assert!((m2a - m2b).abs() < 1e-9);
    }
}
