//! The abstract one-shifted Frobenius components, their composition signs,
//! and the two-dimensional cohomology model of the circle.
//!
//! Each component `(m, n)` with `m, n >= 1` and `(m, n) != (1, 1)` is one
//! dimensional, spanned by a generator `e_{m,n}` of degree `n - 1`; the
//! `(1, 1)` component is zero. Input permutations act trivially and output
//! permutations act by the sign character, so an element is just a rational
//! multiple of its generator and the symmetric-group action is evaluated
//! lazily as a character, never as matrices.
//!
//! Single-edge composition sends `e_{m1,n1} ⊗ e_{m2,n2}` to
//! `± e_{m1+m2-1, n1+n2-1}`. With the composite outputs ordered by splicing
//! the receiver's output block into the slot the provider's consumed output
//! occupied, the base sign is `(-1)^(j · (n1 - 1))` where `j` is the index
//! of the consumed provider output and `n1` counts the receiver's outputs.
//! Joining two vertices along more than one edge gives zero. These rules
//! are cross-checked against the concrete model on `H = <1, ω>` in the
//! tests, where the generators act by iterated multiplication and
//! comultiplication.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::graded::{rat_int, Degree, Permutation, Rat};
use crate::{Error, Result};

/// A rational multiple of the generator `e_{m,n}`. Forced to zero when
/// `(m, n) = (1, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frob1Elem {
    m: usize,
    n: usize,
    coeff: Rat,
}

impl Frob1Elem {
    /// `coeff · e_{m,n}`.
    pub fn new(m: usize, n: usize, coeff: Rat) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Argument(format!(
                "component ({m}, {n}) needs positive arities"
            )));
        }
        let coeff = if (m, n) == (1, 1) { Rat::zero() } else { coeff };
        Ok(Frob1Elem { m, n, coeff })
    }

    pub fn generator(m: usize, n: usize) -> Result<Self> {
        Frob1Elem::new(m, n, rat_int(1))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Degree of the component, `n - 1`.
    pub fn degree(&self) -> Degree {
        self.n as Degree - 1
    }
}

/// Single-edge composition: the receiver `a` consumes, through its input
/// `a_input`, the output `b_output` of the provider `b`. `out_perm` then
/// rearranges the spliced output order and contributes its sign character
/// (inputs act trivially).
pub fn frob1_compose(
    a: &Frob1Elem,
    a_input: usize,
    b: &Frob1Elem,
    b_output: usize,
    out_perm: &Permutation,
) -> Result<Frob1Elem> {
    if a_input >= a.m {
        return Err(Error::Argument(format!(
            "receiver input slot {a_input} out of range for m = {}",
            a.m
        )));
    }
    if b_output >= b.n {
        return Err(Error::Argument(format!(
            "provider output slot {b_output} out of range for n = {}",
            b.n
        )));
    }
    let m = a.m + b.m - 1;
    let n = a.n + b.n - 1;
    if out_perm.size() != n {
        return Err(Error::Argument(format!(
            "output permutation of size {} against {n} composite outputs",
            out_perm.size()
        )));
    }
    let splice_sign = if (b_output * (a.n - 1)) % 2 == 0 { 1 } else { -1 };
    Frob1Elem::new(
        m,
        n,
        &a.coeff * &b.coeff * rat_int(splice_sign * out_perm.sign()),
    )
}

/// Composition along `edges` parallel edges: zero unless `edges == 1`, in
/// which case it delegates to [`frob1_compose`] with canonical slots.
pub fn frob1_compose_k(a: &Frob1Elem, b: &Frob1Elem, edges: usize) -> Result<Frob1Elem> {
    if edges == 0 {
        return Err(Error::Argument(
            "composition needs at least one connecting edge".into(),
        ));
    }
    if edges > 1 {
        // Such a composite must transform both trivially and by sign under
        // exchanging the parallel edges, so it vanishes.
        if edges > a.m || edges > b.n {
            return Err(Error::Argument(format!(
                "cannot join {edges} edges between components ({}, {}) and ({}, {})",
                a.m, a.n, b.m, b.n
            )));
        }
        return Frob1Elem::new(a.m + b.m - edges, a.n + b.n - edges, Rat::zero());
    }
    frob1_compose(a, 0, b, 0, &Permutation::identity(a.n + b.n - 1))
}

/// The output reordering whose sign is `(-1)^(n1 (n2 - 1))`: starting from
/// the spliced order with the receiver block (size `n1`) in front of the
/// provider's leftovers (size `n2`), move the receiver block past all but
/// the last leftover.
pub fn block_interleave(n1: usize, n2: usize) -> Permutation {
    let total = n1 + n2;
    let mut images = Vec::with_capacity(total);
    for i in 0..n1 {
        images.push(n2 - 1 + i);
    }
    for j in 0..n2 {
        images.push(if j + 1 < n2 { j } else { total - 1 });
    }
    Permutation::from_images(images).expect("interleave images form a bijection")
}

/// The three directed three-vertex tree shapes of single-edge composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThreeVertexShape {
    /// `v3` feeds `v2`, which feeds `v1`.
    Chain,
    /// `v2` and `v3` each feed a different input of `v1`.
    TwoProviders,
    /// Two different outputs of `v1` feed `v2` and `v3`.
    TwoReceivers,
}

/// Labels for tracking composite output orderings through a route.
type OutLabel = (usize, usize); // (vertex id, output slot)

#[derive(Clone, Debug)]
struct Composite {
    m: usize,
    coeff: Rat,
    outputs: Vec<OutLabel>,
}

impl Composite {
    fn vertex(id: usize, e: &Frob1Elem) -> Composite {
        Composite {
            m: e.m,
            coeff: e.coeff.clone(),
            outputs: (0..e.n).map(|slot| (id, slot)).collect(),
        }
    }

    fn degree(&self) -> Degree {
        self.outputs.len() as Degree - 1
    }

    /// Receiver `self` consumes output index `j` of `provider`; outputs are
    /// spliced in place of the consumed slot.
    fn consume(&self, provider: &Composite, j: usize) -> Composite {
        let splice_sign = if (j as Degree * self.degree()) % 2 == 0 {
            1
        } else {
            -1
        };
        let mut outputs = provider.outputs.clone();
        outputs.splice(j..=j, self.outputs.iter().cloned());
        let m = self.m + provider.m - 1;
        let n = outputs.len();
        let coeff = if (m, n) == (1, 1) {
            Rat::zero()
        } else {
            &self.coeff * &provider.coeff * rat_int(splice_sign)
        };
        Composite { m, coeff, outputs }
    }
}

/// Checks dioperadic associativity for one three-vertex shape: the two
/// composition orders must agree once their output orderings are aligned
/// (sign character) and the element swap between the routes is charged its
/// Koszul sign. All slot choices of the shape are swept.
pub fn frob1_associativity_check(
    v1: &Frob1Elem,
    v2: &Frob1Elem,
    v3: &Frob1Elem,
    shape: ThreeVertexShape,
) -> Result<bool> {
    match shape {
        ThreeVertexShape::Chain => {
            for j23 in 0..v3.n {
                for j12 in 0..v2.n {
                    // ((v1 ∘ v2) ∘ v3) versus (v1 ∘ (v2 ∘ v3)).
                    let c12 = Composite::vertex(0, v1).consume(&Composite::vertex(1, v2), j12);
                    let a = c12.consume(&Composite::vertex(2, v3), j23);
                    let c23 = Composite::vertex(1, v2).consume(&Composite::vertex(2, v3), j23);
                    let j = c23
                        .outputs
                        .iter()
                        .position(|&l| l == (1, j12))
                        .expect("v2 output survives in c23");
                    let b = Composite::vertex(0, v1).consume(&c23, j);
                    if !routes_agree(&a, &b, 1)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        ThreeVertexShape::TwoProviders => {
            if v1.m < 2 {
                return Err(Error::Argument(format!(
                    "two-provider shape needs a receiver with at least 2 inputs, got m = {}",
                    v1.m
                )));
            }
            let swap = koszul_factor(v2, v3);
            for j2 in 0..v2.n {
                for j3 in 0..v3.n {
                    let a = Composite::vertex(0, v1)
                        .consume(&Composite::vertex(1, v2), j2)
                        .consume(&Composite::vertex(2, v3), j3);
                    let b = Composite::vertex(0, v1)
                        .consume(&Composite::vertex(2, v3), j3)
                        .consume(&Composite::vertex(1, v2), j2);
                    if !routes_agree(&a, &b, swap)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        ThreeVertexShape::TwoReceivers => {
            if v1.n < 2 {
                return Err(Error::Argument(format!(
                    "two-receiver shape needs a provider with at least 2 outputs, got n = {}",
                    v1.n
                )));
            }
            let swap = koszul_factor(v2, v3);
            for j2 in 0..v1.n {
                for j3 in 0..v1.n {
                    if j2 == j3 {
                        continue;
                    }
                    let c2 = Composite::vertex(1, v2).consume(&Composite::vertex(0, v1), j2);
                    let pos3 = c2
                        .outputs
                        .iter()
                        .position(|&l| l == (0, j3))
                        .expect("the other v1 output survives");
                    let a = Composite::vertex(2, v3).consume(&c2, pos3);
                    let c3 = Composite::vertex(2, v3).consume(&Composite::vertex(0, v1), j3);
                    let pos2 = c3
                        .outputs
                        .iter()
                        .position(|&l| l == (0, j2))
                        .expect("the other v1 output survives");
                    let b = Composite::vertex(1, v2).consume(&c3, pos2);
                    if !routes_agree(&a, &b, swap)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

fn koszul_factor(v2: &Frob1Elem, v3: &Frob1Elem) -> i64 {
    if (v2.degree() * v3.degree()) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `a == swap · b` after aligning `b`'s outputs to `a`'s by the sign
/// character.
fn routes_agree(a: &Composite, b: &Composite, swap: i64) -> Result<bool> {
    let mut images = Vec::with_capacity(b.outputs.len());
    for label in &b.outputs {
        let pos = a
            .outputs
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Argument("routes ended with different output legs".into()))?;
        images.push(pos);
    }
    let align = Permutation::from_images(images)?;
    Ok(a.coeff == &b.coeff * rat_int(align.sign() * swap))
}

/// Bookkeeping for a generator of the resolved structure: vertex counts
/// and cohomological degree determined by arities and genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenStats {
    pub m: usize,
    pub n: usize,
    pub genus: usize,
    pub n_mult: usize,
    pub n_comult: usize,
    pub coh_degree: Degree,
}

/// `n_mult = β + m - 1`, `n_comult = β + n - 1`,
/// `coh_degree = 2 - (β + m)`.
pub fn generator_stats(m: usize, n: usize, genus: usize) -> Result<GenStats> {
    if m == 0 || n == 0 {
        return Err(Error::Argument(format!(
            "generator arities must be positive, got ({m}, {n})"
        )));
    }
    Ok(GenStats {
        m,
        n,
        genus,
        n_mult: genus + m - 1,
        n_comult: genus + n - 1,
        coh_degree: 2 - (genus as Degree + m as Degree),
    })
}

/// Basis of the cohomology of the circle: the unit and the volume class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HBasis {
    One,
    Omega,
}

impl HBasis {
    pub fn degree(&self) -> Degree {
        match self {
            HBasis::One => 0,
            HBasis::Omega => 1,
        }
    }
}

/// An element `c1 · 1 + cω · ω` of the cohomology model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElem {
    pub c_one: Rat,
    pub c_omega: Rat,
}

impl HElem {
    pub fn one() -> Self {
        HElem {
            c_one: rat_int(1),
            c_omega: Rat::zero(),
        }
    }

    pub fn omega() -> Self {
        HElem {
            c_one: Rat::zero(),
            c_omega: rat_int(1),
        }
    }

    pub fn zero() -> Self {
        HElem {
            c_one: Rat::zero(),
            c_omega: Rat::zero(),
        }
    }

    pub fn basis(b: HBasis) -> Self {
        match b {
            HBasis::One => HElem::one(),
            HBasis::Omega => HElem::omega(),
        }
    }
}

/// `1·1 = 1`, `1·ω = ω·1 = ω`, `ω·ω = 0`.
pub fn h_mult(a: &HElem, b: &HElem) -> HElem {
    HElem {
        c_one: &a.c_one * &b.c_one,
        c_omega: &a.c_one * &b.c_omega + &a.c_omega * &b.c_one,
    }
}

/// `Δ(1) = -1 ⊗ ω + ω ⊗ 1` and `Δ(ω) = ω ⊗ ω`, as a formal sum.
pub fn h_comult(a: &HElem) -> HTensor {
    let mut t = HTensor::zero(2);
    t.add_term(vec![HBasis::One, HBasis::Omega], -a.c_one.clone());
    t.add_term(vec![HBasis::Omega, HBasis::One], a.c_one.clone());
    t.add_term(vec![HBasis::Omega, HBasis::Omega], a.c_omega.clone());
    t
}

/// A formal sum of basis tensors in the cohomology model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTensor {
    arity: usize,
    terms: BTreeMap<Vec<HBasis>, Rat>,
}

impl HTensor {
    pub fn zero(arity: usize) -> Self {
        HTensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(tuple: Vec<HBasis>) -> Self {
        let mut t = HTensor::zero(tuple.len());
        t.add_term(tuple, rat_int(1));
        t
    }

    pub fn from_terms(arity: usize, terms: &[(Vec<HBasis>, Rat)]) -> Self {
        let mut t = HTensor::zero(arity);
        for (tuple, coeff) in terms {
            t.add_term(tuple.clone(), coeff.clone());
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, tuple: &[HBasis]) -> Rat {
        self.terms.get(tuple).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<HBasis>, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, tuple: Vec<HBasis>, coeff: Rat) {
        assert_eq!(tuple.len(), self.arity, "tensor arity mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(tuple.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&tuple);
        }
    }

    /// Applies the multiplication to factors `slot` and `slot + 1`. The
    /// operator has degree zero, so no Koszul sign appears.
    pub fn mult_at(&self, slot: usize) -> HTensor {
        assert!(slot + 1 < self.arity, "mult_at out of range");
        let mut out = HTensor::zero(self.arity - 1);
        for (tuple, coeff) in &self.terms {
            let product = h_mult(&HElem::basis(tuple[slot]), &HElem::basis(tuple[slot + 1]));
            for (b, c) in [(HBasis::One, &product.c_one), (HBasis::Omega, &product.c_omega)] {
                if !c.is_zero() {
                    let mut t = Vec::with_capacity(self.arity - 1);
                    t.extend_from_slice(&tuple[..slot]);
                    t.push(b);
                    t.extend_from_slice(&tuple[slot + 2..]);
                    out.add_term(t, coeff * c);
                }
            }
        }
        out
    }

    /// Applies the comultiplication to factor `slot`. The operator has
    /// degree one, so it collects `(-1)^(degree of the prefix)`.
    pub fn comult_at(&self, slot: usize) -> HTensor {
        assert!(slot < self.arity, "comult_at out of range");
        let mut out = HTensor::zero(self.arity + 1);
        for (tuple, coeff) in &self.terms {
            let prefix: Degree = tuple[..slot].iter().map(|b| b.degree()).sum();
            let sign = rat_int(if prefix % 2 == 0 { 1 } else { -1 });
            for (pair, c) in h_comult(&HElem::basis(tuple[slot])).terms {
                let mut t = Vec::with_capacity(self.arity + 1);
                t.extend_from_slice(&tuple[..slot]);
                t.extend_from_slice(&pair);
                t.extend_from_slice(&tuple[slot + 1..]);
                out.add_term(t, coeff * &c * &sign);
            }
        }
        out
    }
}
