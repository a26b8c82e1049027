//! The explicit quasilocal lifts on the subdivided circle and their
//! homotopy equations.
//!
//! The generators live at arities (2,1), (1,2), (3,1), (1,3), (2,2) and,
//! at higher genus, (2,1), (1,2), (1,1). Each homotopy equation says that
//! the commutator `[d, lift]` of a generator equals a right-hand side that
//! can be written down twice over: once as a literal coefficient table and
//! once by composing earlier lifts along the graph that defines the
//! generator's derivative. Both are built here, and agreement of the two is
//! the main internal consistency check.
//!
//! The genus-two composite is the end of the story: its right-hand side is
//! forced to be `-1/12 · id`, which acts nontrivially on cohomology, so no
//! primitive exists and the tower of lifts stops there.
//!
//! Wiring conventions for the derivative composites, fixed once and
//! validated against the tables:
//!
//! * associator: `-mult(mult ⊗ id) + mult(id ⊗ mult)`;
//! * frobeniator: `comult ∘ mult  -  (id ⊗ mult)(comult ⊗ id)`, the zigzag
//!   consuming the comultiplication's second output;
//! * coassociator: `-(id ⊗ comult)comult - (comult ⊗ id)comult`;
//! * d-generator: `-associator ∘ (comult into inputs 1,2) - mult ∘ frobeniator`,
//!   both double-edge compositions;
//! * a-generator: `-frobeniator ∘ comult (both edges) + (id ⊗ mult) ∘ coassociator`;
//! * b-generator: `d_gen ∘ comult - mult ∘ a_gen + 1/3 · associator ∘ coassociator`,
//!   the last along three edges with outputs rotated one step into the
//!   associator's inputs.

use crate::circle::Complex;
use crate::graded::{rat, rat_int, Permutation};
use crate::op::{compose, Leg, Operation};
use crate::{Error, Result};

/// The generators whose homotopy equations the verifier replays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Associator,
    Coassociator,
    Frobeniator,
    DGen,
    AGen,
    BGen,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Associator,
        Generator::Coassociator,
        Generator::Frobeniator,
        Generator::DGen,
        Generator::AGen,
        Generator::BGen,
    ];

    /// The five generators that come with an explicit lift. The genus-two
    /// generator has none; that is the point.
    pub const LIFTED: [Generator; 5] = [
        Generator::Associator,
        Generator::Coassociator,
        Generator::Frobeniator,
        Generator::DGen,
        Generator::AGen,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Associator => "associator",
            Generator::Coassociator => "coassociator",
            Generator::Frobeniator => "frobeniator",
            Generator::DGen => "d-generator",
            Generator::AGen => "a-generator",
            Generator::BGen => "b-generator",
        }
    }
}

/// The lift tables for one subdivision size.
#[derive(Clone, Debug)]
pub struct LiftSet {
    pub complex: Complex,
    /// (2,1), degree 0, radius 0.
    pub mult: Operation,
    /// (1,2), degree 1, radius 0.
    pub comult: Operation,
    /// (3,1), degree -1.
    pub associator: Operation,
    /// (1,3), degree 1.
    pub coassociator: Operation,
    /// (2,2), degree 0.
    pub frobeniator: Operation,
    /// (2,1), degree -1.
    pub d_gen: Operation,
    /// (1,2), degree 0.
    pub a_gen: Operation,
}

/// Builds the lift tables. Requires `N >= 5` so that radius-1 supports
/// never wrap around the circle and silently merge table rows.
pub fn build_lifts(complex: Complex) -> Result<LiftSet> {
    LiftSet::build(complex)
}

impl LiftSet {
    pub fn build(complex: Complex) -> Result<Self> {
        if complex.n() < 5 {
            return Err(Error::Argument(format!(
                "lift tables need N >= 5, got {}",
                complex.n()
            )));
        }
        let cx = complex;
        let half = rat(1, 2);
        let quarter = rat(1, 4);
        let sixth = rat(1, 6);
        let twelfth = rat(1, 12);

        let mut mult = Operation::zero(cx, 2, 1, 0);
        let mut comult = Operation::zero(cx, 1, 2, 1);
        let mut associator = Operation::zero(cx, 3, 1, -1);
        let mut coassociator = Operation::zero(cx, 1, 3, 1);
        let mut frobeniator = Operation::zero(cx, 2, 2, 0);
        let mut d_gen = Operation::zero(cx, 2, 1, -1);
        let mut a_gen = Operation::zero(cx, 1, 2, 0);

        for x in 0..cx.n() as i64 {
            let f = cx.vertex(x);
            let gp = cx.edge(x); // g_{x+1/2}
            let gm = cx.edge(x - 1); // g_{x-1/2}

            mult.insert(&[f, f], &[f], rat_int(1))?;
            for g in [gm, gp] {
                mult.insert(&[f, g], &[g], half.clone())?;
                mult.insert(&[g, f], &[g], half.clone())?;
            }

            // comult: f_x -> 1/2 (g_{x-1/2} + g_{x+1/2}) ⊗ f_x
            //               - f_x ⊗ 1/2 (g_{x-1/2} + g_{x+1/2}),
            //         g -> g ⊗ g.
            for g in [gm, gp] {
                comult.insert(&[f], &[g, f], half.clone())?;
                comult.insert(&[f], &[f, g], -half.clone())?;
            }
            comult.insert(&[gp], &[gp, gp], rat_int(1))?;

            // associator lift; the sign s follows the edge choice.
            for (g, s) in [(gp, 1i64), (gm, -1i64)] {
                let s = rat_int(s);
                associator.insert(&[g, g, f], &[g], &s * &twelfth)?;
                associator.insert(&[g, f, g], &[g], &s * &sixth)?;
                associator.insert(&[f, g, g], &[g], &s * &twelfth)?;
            }

            // coassociator lift:
            // f -> 1/12 (g_- - g_+) ⊗ f ⊗ f - 1/6 f ⊗ (g_- - g_+) ⊗ f
            //      + 1/12 f ⊗ f ⊗ (g_- - g_+).
            for (g, s) in [(gm, 1i64), (gp, -1i64)] {
                let s = rat_int(s);
                coassociator.insert(&[f], &[g, f, f], &s * &twelfth)?;
                coassociator.insert(&[f], &[f, g, f], -&s * &sixth)?;
                coassociator.insert(&[f], &[f, f, g], &s * &twelfth)?;
            }

            // frobeniator lift: f ⊗ g_{x±1/2} -> ∓ 1/4 f ⊗ g_{x±1/2}.
            frobeniator.insert(&[f, gp], &[f, gp], -quarter.clone())?;
            frobeniator.insert(&[f, gm], &[f, gm], quarter.clone())?;

            // the two higher-genus lifts
            d_gen.insert(&[gp, gp], &[gp], -twelfth.clone())?;
            a_gen.insert(&[f], &[f, f], twelfth.clone())?;
        }

        Ok(LiftSet {
            complex,
            mult,
            comult,
            associator,
            coassociator,
            frobeniator,
            d_gen,
            a_gen,
        })
    }

    /// The lift of a generator, if it has one.
    pub fn lift(&self, gen: Generator) -> Option<&Operation> {
        match gen {
            Generator::Associator => Some(&self.associator),
            Generator::Coassociator => Some(&self.coassociator),
            Generator::Frobeniator => Some(&self.frobeniator),
            Generator::DGen => Some(&self.d_gen),
            Generator::AGen => Some(&self.a_gen),
            Generator::BGen => None,
        }
    }

    /// The literal right-hand-side table of a generator's homotopy
    /// equation.
    pub fn rhs_from_tables(&self, gen: Generator) -> Result<Operation> {
        let cx = self.complex;
        let quarter = rat(1, 4);
        let twelfth = rat(1, 12);
        match gen {
            Generator::Associator => {
                let mut t = Operation::zero(cx, 3, 1, 0);
                for x in 0..cx.n() as i64 {
                    let f = cx.vertex(x);
                    for (g, s) in [(cx.edge(x), 1i64), (cx.edge(x - 1), -1i64)] {
                        let f_next = cx.vertex(x + s);
                        t.insert(&[g, f, f], &[g], quarter.clone())?;
                        t.insert(&[f, f, g], &[g], -quarter.clone())?;
                        t.insert(&[g, f, f_next], &[g], -quarter.clone())?;
                        t.insert(&[f, f_next, g], &[g], quarter.clone())?;
                    }
                }
                Ok(t)
            }
            Generator::Coassociator => {
                let mut t = Operation::zero(cx, 1, 3, 2);
                for x in 0..cx.n() as i64 {
                    let f = cx.vertex(x);
                    let gm = cx.edge(x - 1);
                    let gp = cx.edge(x);
                    // f -> -1/4 (g_- - g_+)⊗(g_- - g_+)⊗f
                    //      +1/4 f⊗(g_- - g_+)⊗(g_- - g_+)
                    for (ga, sa) in [(gm, 1i64), (gp, -1i64)] {
                        for (gb, sb) in [(gm, 1i64), (gp, -1i64)] {
                            let s = rat_int(sa * sb);
                            t.insert(&[f], &[ga, gb, f], -&s * &quarter)?;
                            t.insert(&[f], &[f, ga, gb], &s * &quarter)?;
                        }
                    }
                }
                Ok(t)
            }
            Generator::Frobeniator => {
                let mut t = Operation::zero(cx, 2, 2, 1);
                for x in 0..cx.n() as i64 {
                    let f = cx.vertex(x);
                    let gm = cx.edge(x - 1);
                    let gp = cx.edge(x);
                    t.insert(&[f, f], &[f, gm], -quarter.clone())?;
                    t.insert(&[f, f], &[f, gp], -quarter.clone())?;
                    for (g, s) in [(gp, 1i64), (gm, -1i64)] {
                        let f_next = cx.vertex(x + s);
                        t.insert(&[f, f_next], &[f, g], quarter.clone())?;
                        // f ⊗ g_{x±1/2} -> ∓ 1/4 (g_- - g_+) ⊗ g_{x±1/2}
                        let s = rat_int(s);
                        t.insert(&[f, g], &[gm, g], -&s * &quarter)?;
                        t.insert(&[f, g], &[gp, g], &s * &quarter)?;
                    }
                }
                Ok(t)
            }
            Generator::DGen => {
                let mut t = Operation::zero(cx, 2, 1, 0);
                for x in 0..cx.n() as i64 {
                    let f = cx.vertex(x);
                    for (g, s) in [(cx.edge(x), 1i64), (cx.edge(x - 1), -1i64)] {
                        let s = rat_int(s);
                        t.insert(&[f, g], &[g], &s * &twelfth)?;
                        t.insert(&[g, f], &[g], -&s * &twelfth)?;
                    }
                }
                Ok(t)
            }
            Generator::AGen => {
                let mut t = Operation::zero(cx, 1, 2, 1);
                for x in 0..cx.n() as i64 {
                    let f = cx.vertex(x);
                    for (g, s) in [(cx.edge(x - 1), 1i64), (cx.edge(x), -1i64)] {
                        let s = rat_int(s);
                        t.insert(&[f], &[g, f], &s * &twelfth)?;
                        t.insert(&[f], &[f, g], &s * &twelfth)?;
                    }
                }
                Ok(t)
            }
            Generator::BGen => Ok(Operation::identity(cx).scaled(&rat(-1, 12))),
        }
    }

    /// The same right-hand side assembled from properadic compositions of
    /// the lifts, following each generator's derivative graph.
    pub fn rhs_from_compositions(&self, gen: Generator) -> Result<Operation> {
        let m = &self.mult;
        let dd = &self.comult;
        match gen {
            Generator::Associator => {
                let left = compose(
                    m,
                    m,
                    &[(0, 0)],
                    &[Leg::Q(0), Leg::Q(1), Leg::P(1)],
                    &[Leg::P(0)],
                )?;
                let right = compose(
                    m,
                    m,
                    &[(0, 1)],
                    &[Leg::P(0), Leg::Q(0), Leg::Q(1)],
                    &[Leg::P(0)],
                )?;
                right.minus(&left)
            }
            Generator::Frobeniator => {
                let straight = compose(
                    dd,
                    m,
                    &[(0, 0)],
                    &[Leg::Q(0), Leg::Q(1)],
                    &[Leg::P(0), Leg::P(1)],
                )?;
                // zigzag: comult's second output feeds mult's first input;
                // the first comult output and the mult output survive.
                let zigzag = compose(
                    m,
                    dd,
                    &[(1, 0)],
                    &[Leg::Q(0), Leg::P(1)],
                    &[Leg::Q(0), Leg::P(0)],
                )?;
                straight.minus(&zigzag)
            }
            Generator::Coassociator => {
                let on_second = compose(
                    dd,
                    dd,
                    &[(1, 0)],
                    &[Leg::Q(0)],
                    &[Leg::Q(0), Leg::P(0), Leg::P(1)],
                )?;
                let on_first = compose(
                    dd,
                    dd,
                    &[(0, 0)],
                    &[Leg::Q(0)],
                    &[Leg::P(0), Leg::P(1), Leg::Q(1)],
                )?;
                on_second.scaled(&rat_int(-1)).minus(&on_first)
            }
            Generator::DGen => {
                let assoc_cap = compose(
                    &self.associator,
                    dd,
                    &[(0, 0), (1, 1)],
                    &[Leg::Q(0), Leg::P(2)],
                    &[Leg::P(0)],
                )?;
                let frob_cap = compose(
                    m,
                    &self.frobeniator,
                    &[(0, 0), (1, 1)],
                    &[Leg::Q(0), Leg::Q(1)],
                    &[Leg::P(0)],
                )?;
                assoc_cap.scaled(&rat_int(-1)).minus(&frob_cap)
            }
            Generator::AGen => {
                let frob_cap = compose(
                    &self.frobeniator,
                    dd,
                    &[(0, 0), (1, 1)],
                    &[Leg::Q(0)],
                    &[Leg::P(0), Leg::P(1)],
                )?;
                let coassoc_cap = compose(
                    m,
                    &self.coassociator,
                    &[(1, 0), (2, 1)],
                    &[Leg::Q(0)],
                    &[Leg::Q(0), Leg::P(0)],
                )?;
                coassoc_cap.minus(&frob_cap)
            }
            Generator::BGen => {
                let d_cap = compose(
                    &self.d_gen,
                    dd,
                    &[(0, 0), (1, 1)],
                    &[Leg::Q(0)],
                    &[Leg::P(0)],
                )?;
                let a_cap = compose(
                    m,
                    &self.a_gen,
                    &[(0, 0), (1, 1)],
                    &[Leg::Q(0)],
                    &[Leg::P(0)],
                )?;
                // coassociator outputs rotated one step into the
                // associator's inputs.
                let stacked = compose(
                    &self.associator,
                    &self.coassociator,
                    &[(0, 1), (1, 2), (2, 0)],
                    &[Leg::Q(0)],
                    &[Leg::P(0)],
                )?;
                d_cap
                    .minus(&a_cap)?
                    .plus(&stacked.scaled(&rat(1, 3)))
            }
        }
    }

    /// The genus-two obstruction: the right-hand side of the last homotopy
    /// equation. Certifies that it equals `-1/12 · id` entrywise, is
    /// closed, and acts as `(-1/12, -1/12)` on cohomology.
    pub fn b_obstruction(&self) -> Result<Operation> {
        let obstruction = self.rhs_from_compositions(Generator::BGen)?;
        let expected = Operation::identity(self.complex).scaled(&rat(-1, 12));
        if obstruction != expected {
            let offending = obstruction
                .entries()
                .find(|(i, o, c)| expected.entry(i, o) != **c)
                .map(|(i, o, c)| format!("{i:?} -> {o:?}: {c}"))
                .unwrap_or_else(|| "a missing entry".into());
            return Err(Error::Verification(format!(
                "genus-two obstruction differs from -1/12 id at {offending}"
            )));
        }
        if !obstruction.commutator_with_d().is_zero() {
            return Err(Error::Verification(
                "genus-two obstruction is not closed".into(),
            ));
        }
        let action = obstruction.cohomology_action_11()?;
        if action != (rat(-1, 12), rat(-1, 12)) {
            return Err(Error::Verification(format!(
                "genus-two obstruction acts as ({}, {}) on cohomology",
                action.0, action.1
            )));
        }
        Ok(obstruction)
    }

    /// Checks that the associator's inputs and the coassociator's outputs
    /// carry the two-dimensional representation of `S_3`: summing over the
    /// cyclic group (with Koszul signs) annihilates both.
    pub fn s3_symmetry_check(&self) -> Result<bool> {
        let c = Permutation::rotation(3, 1);
        let c2 = Permutation::rotation(3, 2);
        let assoc_sum = self
            .associator
            .plus(&self.associator.permute_inputs(&c)?)?
            .plus(&self.associator.permute_inputs(&c2)?)?;
        let coassoc_sum = self
            .coassociator
            .plus(&self.coassociator.permute_outputs(&c)?)?
            .plus(&self.coassociator.permute_outputs(&c2)?)?;
        Ok(assoc_sum.is_zero() && coassoc_sum.is_zero())
    }
}

/// `true` iff `[d, h]` equals `rhs` entrywise over exact rationals.
pub fn verify_homotopy(h: &Operation, rhs: &Operation) -> Result<bool> {
    if h.inputs() != rhs.inputs()
        || h.outputs() != rhs.outputs()
        || h.degree() + 1 != rhs.degree()
    {
        return Err(Error::Argument(format!(
            "homotopy of shape ({}, {}; deg {}) cannot solve a right-hand side \
             of shape ({}, {}; deg {})",
            h.inputs(),
            h.outputs(),
            h.degree(),
            rhs.inputs(),
            rhs.outputs(),
            rhs.degree()
        )));
    }
    Ok(h.commutator_with_d() == *rhs)
}
