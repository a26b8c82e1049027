//! Graded multilinear operations on the cellular complex.
//!
//! An `Operation` is an `m`-input, `n`-output map stored as a sparse table
//! of rational matrix entries indexed by basis cell tuples, together with a
//! declared degree. The degree is validated against every entry (the sum of
//! the output cell degrees minus the sum of the input cell degrees must
//! equal it), which catches sign and wiring bugs early.
//!
//! Sign conventions. All signs come from one rule: exchanging two
//! homogeneous factors of degrees `p` and `q` costs `(-1)^(p q)`. Properadic
//! composition is evaluated on basis tensors by the canonical-ordering
//! dance: bring the inner operation's inputs to the front (collecting
//! crossing signs), apply it, move its matched outputs into the outer
//! operation's input slots (collecting crossing signs), apply the outer
//! operation, and finally shuffle the surviving factors into the requested
//! output order (collecting crossing signs). Applying an operation to the
//! *leftmost* block of factors never costs a sign; every sign is an honest
//! factor crossing. This convention makes `[d, -]` a derivation for the
//! composition, which the property suite checks.
//!
//! The ordering of unmatched legs is not canonicalized here; callers pass
//! explicit `input_order`/`output_order` placements.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::Rng;

use crate::circle::{CellIndex, Cochain, Complex};
use crate::graded::{rat, rat_int, koszul_sign, reorder_sign, Degree, Permutation, Rat};
use crate::{Error, Result};

/// A formal sparse sum of basis output tuples, as produced by applying an
/// operation to a tuple of cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Vec<CellIndex>, Rat>,
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, tuple: Vec<CellIndex>, coeff: Rat) {
        assert_eq!(tuple.len(), self.arity, "tensor arity mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(tuple).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key: Vec<CellIndex> = self
                .terms
                .iter()
                .find(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .expect("zero entry just created");
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, tuple: &[CellIndex]) -> Rat {
        self.terms.get(tuple).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<CellIndex>, &Rat)> {
        self.terms.iter()
    }

    /// Collapses an arity-1 tensor to a cochain of the given degree.
    pub fn into_cochain(self, degree: Degree) -> Result<Cochain> {
        if self.arity != 1 {
            return Err(Error::Argument(format!(
                "cannot view an arity-{} tensor as a cochain",
                self.arity
            )));
        }
        let mut c = Cochain::zero(degree);
        for (tuple, coeff) in self.terms {
            if tuple[0].degree() != degree.rem_euclid(2) {
                return Err(Error::Contract(format!(
                    "cell {} has the wrong parity for degree {}",
                    tuple[0], degree
                )));
            }
            c.add_term(tuple[0], coeff);
        }
        Ok(c)
    }
}

/// Addresses a leg of a composite: either a leg of the outer operation `P`
/// or of the inner operation `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    P(usize),
    Q(usize),
}

/// An `m`-to-`n` graded operation on the cellular complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operation {
    complex: Complex,
    inputs: usize,
    outputs: usize,
    degree: Degree,
    entries: BTreeMap<Vec<CellIndex>, BTreeMap<Vec<CellIndex>, Rat>>,
}

impl Operation {
    pub fn zero(complex: Complex, inputs: usize, outputs: usize, degree: Degree) -> Self {
        Operation {
            complex,
            inputs,
            outputs,
            degree,
            entries: BTreeMap::new(),
        }
    }

    pub fn complex(&self) -> Complex {
        self.complex
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.values().map(|m| m.len()).sum()
    }

    /// Adds a single matrix entry, validating arities and the degree
    /// constraint. Coefficients accumulate; zeros are pruned.
    pub fn insert(
        &mut self,
        input: &[CellIndex],
        output: &[CellIndex],
        coeff: Rat,
    ) -> Result<()> {
        if input.len() != self.inputs || output.len() != self.outputs {
            return Err(Error::Argument(format!(
                "entry arity ({}, {}) does not match operation arity ({}, {})",
                input.len(),
                output.len(),
                self.inputs,
                self.outputs
            )));
        }
        for cell in input.iter().chain(output.iter()) {
            if cell.doubled() >= self.complex.num_cells() {
                return Err(Error::Argument(format!(
                    "cell {cell} out of range for N = {}",
                    self.complex.n()
                )));
            }
        }
        let in_deg: Degree = input.iter().map(|c| c.degree()).sum();
        let out_deg: Degree = output.iter().map(|c| c.degree()).sum();
        if out_deg - in_deg != self.degree {
            return Err(Error::Argument(format!(
                "entry violates the degree constraint: output degree {out_deg} - \
                 input degree {in_deg} != {}",
                self.degree
            )));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let row = self.entries.entry(input.to_vec()).or_default();
        let cell = row.entry(output.to_vec()).or_insert_with(Rat::zero);
        *cell += coeff;
        if cell.is_zero() {
            row.remove(output);
            if row.is_empty() {
                self.entries.remove(input);
            }
        }
        Ok(())
    }

    pub fn from_entries(
        complex: Complex,
        inputs: usize,
        outputs: usize,
        degree: Degree,
        entries: &[(Vec<CellIndex>, Vec<CellIndex>, Rat)],
    ) -> Result<Self> {
        let mut op = Operation::zero(complex, inputs, outputs, degree);
        for (i, o, c) in entries {
            op.insert(i, o, c.clone())?;
        }
        Ok(op)
    }

    pub fn entry(&self, input: &[CellIndex], output: &[CellIndex]) -> Rat {
        self.entries
            .get(input)
            .and_then(|row| row.get(output))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn entries(
        &self,
    ) -> impl Iterator<Item = (&Vec<CellIndex>, &Vec<CellIndex>, &Rat)> {
        self.entries
            .iter()
            .flat_map(|(i, row)| row.iter().map(move |(o, c)| (i, o, c)))
    }

    /// The identity: the (1,1) degree-0 operation with `c -> c` for every
    /// cell.
    pub fn identity(complex: Complex) -> Self {
        let mut op = Operation::zero(complex, 1, 1, 0);
        for cell in complex.cells() {
            op.insert(&[cell], &[cell], rat_int(1))
                .expect("identity entries are valid");
        }
        op
    }

    /// The differential packaged as a (1,1) degree-1 operation.
    pub fn differential_op(complex: Complex) -> Self {
        let mut op = Operation::zero(complex, 1, 1, 1);
        for v in complex.vertices() {
            for (edge, sign) in complex.d_cell(v) {
                op.insert(&[v], &[edge], rat_int(sign))
                    .expect("differential entries are valid");
            }
        }
        op
    }

    /// A matrix unit: a single entry with coefficient 1.
    pub fn matrix_unit(
        complex: Complex,
        input: &[CellIndex],
        output: &[CellIndex],
    ) -> Result<Self> {
        let in_deg: Degree = input.iter().map(|c| c.degree()).sum();
        let out_deg: Degree = output.iter().map(|c| c.degree()).sum();
        let mut op = Operation::zero(complex, input.len(), output.len(), out_deg - in_deg);
        op.insert(input, output, rat_int(1))?;
        Ok(op)
    }

    /// Multilinear extension of the entry table. No signs: entries carry
    /// them already.
    pub fn apply(&self, inputs: &[Cochain]) -> Result<Tensor> {
        if inputs.len() != self.inputs {
            return Err(Error::Argument(format!(
                "operation expects {} inputs, got {}",
                self.inputs,
                inputs.len()
            )));
        }
        let mut out = Tensor::zero(self.outputs);
        // Walk the sparse product of the input supports.
        let mut stack: Vec<(Vec<CellIndex>, Rat)> = vec![(Vec::new(), rat_int(1))];
        for cochain in inputs {
            let mut next = Vec::new();
            for (tuple, coeff) in &stack {
                for (cell, c) in cochain.terms() {
                    let mut t = tuple.clone();
                    t.push(*cell);
                    next.push((t, coeff * c));
                }
            }
            stack = next;
        }
        for (tuple, coeff) in stack {
            if let Some(row) = self.entries.get(&tuple) {
                for (otuple, c) in row {
                    out.add_term(otuple.clone(), &coeff * c);
                }
            }
        }
        Ok(out)
    }

    /// Entrywise linear combination.
    pub fn plus(&self, other: &Operation) -> Result<Operation> {
        if self.inputs != other.inputs
            || self.outputs != other.outputs
            || self.degree != other.degree
            || self.complex != other.complex
        {
            return Err(Error::Argument(format!(
                "cannot add operations of shape ({}, {}; deg {}) and ({}, {}; deg {})",
                self.inputs, self.outputs, self.degree, other.inputs, other.outputs,
                other.degree
            )));
        }
        let mut out = self.clone();
        for (i, o, c) in other.entries() {
            out.insert(i, o, c.clone())?;
        }
        Ok(out)
    }

    pub fn scaled(&self, factor: &Rat) -> Operation {
        let mut out = Operation::zero(self.complex, self.inputs, self.outputs, self.degree);
        for (i, o, c) in self.entries() {
            out.insert(i, o, c * factor).expect("rescaling preserves validity");
        }
        out
    }

    pub fn minus(&self, other: &Operation) -> Result<Operation> {
        self.plus(&other.scaled(&rat_int(-1)))
    }

    /// `[d, P] = d∘P - (-1)^deg(P) P∘d`, with `d` extended to tensor powers
    /// by the graded Leibniz rule.
    pub fn commutator_with_d(&self) -> Operation {
        let cx = self.complex;
        let mut out = Operation::zero(cx, self.inputs, self.outputs, self.degree + 1);
        let post_sign = rat_int(-(if self.degree.rem_euclid(2) == 0 { 1 } else { -1 }));
        for (x, row) in &self.entries {
            // -(-1)^p P ∘ d: replace an input edge by the vertices mapping
            // onto it; the Leibniz prefix sign counts odd factors before the
            // modified slot in the *new* input tuple (unchanged slots).
            for (i, cell) in x.iter().enumerate() {
                if cell.is_edge() {
                    let prefix: Degree = x[..i].iter().map(|c| c.degree()).sum();
                    let prefix_sign = rat_int(if prefix % 2 == 0 { 1 } else { -1 });
                    for (vertex, s) in cx.d_preimages(*cell) {
                        let mut xi = x.clone();
                        xi[i] = vertex;
                        for (y, c) in row {
                            out.insert(&xi, y, &post_sign * &prefix_sign * rat_int(s) * c)
                                .expect("commutator entries are valid");
                        }
                    }
                }
            }
            // d ∘ P: differentiate each output factor with Leibniz signs.
            for (y, c) in row {
                for (j, cell) in y.iter().enumerate() {
                    if cell.is_vertex() {
                        let prefix: Degree = y[..j].iter().map(|c| c.degree()).sum();
                        let prefix_sign = rat_int(if prefix % 2 == 0 { 1 } else { -1 });
                        for (edge, s) in cx.d_cell(*cell) {
                            let mut yj = y.clone();
                            yj[j] = edge;
                            out.insert(x, &yj, &prefix_sign * rat_int(s) * c)
                                .expect("commutator entries are valid");
                        }
                    }
                }
            }
        }
        out
    }

    /// Precomposition with the Koszul action of `perm` on the input tensor
    /// factors: `(P·σ)(v) = koszul_sign(σ, deg v) · P(σ(v))`.
    pub fn permute_inputs(&self, perm: &Permutation) -> Result<Operation> {
        if perm.size() != self.inputs {
            return Err(Error::Argument(format!(
                "input permutation of size {} against arity {}",
                perm.size(),
                self.inputs
            )));
        }
        let mut out = Operation::zero(self.complex, self.inputs, self.outputs, self.degree);
        for (x, o, c) in self.entries() {
            // The entry at x fires on v with σ(v) = x, i.e. v[i] = x[σ(i)].
            let v: Vec<CellIndex> = (0..self.inputs).map(|i| x[perm.image(i)]).collect();
            let degrees: Vec<Degree> = v.iter().map(|c| c.degree()).collect();
            let sign = koszul_sign(perm, &degrees)?;
            out.insert(&v, o, rat_int(sign) * c)?;
        }
        Ok(out)
    }

    /// Postcomposition with the Koszul action of `perm` on the output
    /// factors.
    pub fn permute_outputs(&self, perm: &Permutation) -> Result<Operation> {
        if perm.size() != self.outputs {
            return Err(Error::Argument(format!(
                "output permutation of size {} against arity {}",
                perm.size(),
                self.outputs
            )));
        }
        let mut out = Operation::zero(self.complex, self.inputs, self.outputs, self.degree);
        for (x, y, c) in self.entries() {
            let degrees: Vec<Degree> = y.iter().map(|c| c.degree()).collect();
            let sign = koszul_sign(perm, &degrees)?;
            let permuted = perm.apply_slice(y)?;
            out.insert(x, &permuted, rat_int(sign) * c)?;
        }
        Ok(out)
    }

    /// The least `ℓ` such that every nonzero entry connects each input cell
    /// to each output cell within nonsymmetric distance `ℓ`. The zero
    /// operation has radius 0 (vacuous maximum); on a finite circle every
    /// operation has a finite radius, so no infinity marker is needed.
    pub fn quasilocality_radius(&self) -> u32 {
        let mut radius = 0;
        for (x, y, _) in self.entries() {
            for xi in x {
                for yj in y {
                    radius = radius.max(self.complex.distance(*xi, *yj));
                }
            }
        }
        radius
    }

    /// Conjugates by the rotation `x -> x + k`: shifts every entry's cells.
    pub fn shifted(&self, k: i64) -> Operation {
        let cx = self.complex;
        let mut out = Operation::zero(cx, self.inputs, self.outputs, self.degree);
        for (x, y, c) in self.entries() {
            let xs: Vec<CellIndex> = x.iter().map(|&cell| cx.shift(cell, k)).collect();
            let ys: Vec<CellIndex> = y.iter().map(|&cell| cx.shift(cell, k)).collect();
            out.insert(&xs, &ys, c.clone()).expect("shift preserves validity");
        }
        out
    }

    /// The scalars by which a closed (1,1) degree-0 operation acts on
    /// `H^0` and `H^1`, read off the standard representatives.
    pub fn cohomology_action_11(&self) -> Result<(Rat, Rat)> {
        if self.inputs != 1 || self.outputs != 1 || self.degree != 0 {
            return Err(Error::Contract(format!(
                "cohomology action needs a (1,1) degree-0 operation, got \
                 ({}, {}; deg {})",
                self.inputs, self.outputs, self.degree
            )));
        }
        if !self.commutator_with_d().is_zero() {
            return Err(Error::Contract(
                "cohomology action needs a closed operation".into(),
            ));
        }
        let cx = self.complex;
        let on_unit = self.apply(&[cx.unit_cochain()])?.into_cochain(0)?;
        let on_volume = self.apply(&[cx.volume_cochain()])?.into_cochain(1)?;
        let c0 = cx.cohomology_class(&on_unit)?;
        let c1 = cx.cohomology_class(&on_volume)?;
        Ok((c0.h0, c1.h1))
    }

    /// A random sparse operation of the given shape, for property sweeps.
    pub fn random_sparse<R: Rng>(
        complex: Complex,
        inputs: usize,
        outputs: usize,
        degree: Degree,
        entries: usize,
        rng: &mut R,
    ) -> Operation {
        let mut op = Operation::zero(complex, inputs, outputs, degree);
        let n = complex.n() as i64;
        let mut attempts = 0;
        let mut placed = 0;
        while placed < entries && attempts < entries * 20 {
            attempts += 1;
            let input: Vec<CellIndex> = (0..inputs)
                .map(|_| complex.cell_from_doubled(rng.gen_range(0..2 * n)))
                .collect();
            let in_deg: Degree = input.iter().map(|c| c.degree()).sum();
            let out_deg = in_deg + degree;
            if out_deg < 0 || out_deg > outputs as Degree {
                continue;
            }
            // Choose which output slots are odd, then fill cells.
            let mut slots: Vec<usize> = (0..outputs).collect();
            for i in (1..slots.len()).rev() {
                slots.swap(i, rng.gen_range(0..=i));
            }
            let odd: Vec<bool> = {
                let mut v = vec![false; outputs];
                for &s in slots.iter().take(out_deg as usize) {
                    v[s] = true;
                }
                v
            };
            let output: Vec<CellIndex> = odd
                .iter()
                .map(|&is_edge| {
                    let x = rng.gen_range(0..n);
                    if is_edge {
                        complex.edge(x)
                    } else {
                        complex.vertex(x)
                    }
                })
                .collect();
            let num = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let den = rng.gen_range(1..=3);
            op.insert(&input, &output, rat(num, den))
                .expect("random entry satisfies the degree constraint");
            placed += 1;
        }
        op
    }
}

/// Properadic partial composition `P ∘ Q` along the given matching of
/// inner outputs to outer inputs. `input_order` places the composite's
/// inputs (all of `Q`'s plus `P`'s unmatched); `output_order` places the
/// composite's outputs (all of `P`'s plus `Q`'s unmatched). Bilinear in
/// both arguments; all Koszul signs follow the canonical-ordering rule
/// described in the module docs.
pub fn compose(
    outer: &Operation,
    inner: &Operation,
    matching: &[(usize, usize)],
    input_order: &[Leg],
    output_order: &[Leg],
) -> Result<Operation> {
    if outer.complex != inner.complex {
        return Err(Error::Argument(
            "cannot compose operations over different complexes".into(),
        ));
    }
    if matching.is_empty() {
        return Err(Error::Argument(
            "properadic composition needs a non-empty matching; disconnected \
             compositions are not supported"
                .into(),
        ));
    }
    let k = matching.len();
    let mut q_matched = vec![false; inner.outputs];
    let mut p_matched = vec![false; outer.inputs];
    for &(qo, pi) in matching {
        if qo >= inner.outputs || pi >= outer.inputs {
            return Err(Error::Argument(format!(
                "matching pair ({qo}, {pi}) out of range for shapes ({}, {}) and ({}, {})",
                outer.inputs, outer.outputs, inner.inputs, inner.outputs
            )));
        }
        if q_matched[qo] || p_matched[pi] {
            return Err(Error::Argument(format!(
                "matching reuses a slot in pair ({qo}, {pi})"
            )));
        }
        q_matched[qo] = true;
        p_matched[pi] = true;
    }
    let unmatched_p_in: Vec<usize> = (0..outer.inputs).filter(|&i| !p_matched[i]).collect();
    let unmatched_q_out: Vec<usize> = (0..inner.outputs).filter(|&j| !q_matched[j]).collect();

    let expect_inputs = inner.inputs + outer.inputs - k;
    let expect_outputs = outer.outputs + inner.outputs - k;
    check_cover(
        input_order,
        expect_inputs,
        |leg| match leg {
            Leg::Q(i) => *i < inner.inputs,
            Leg::P(i) => unmatched_p_in.contains(i),
        },
        "input",
    )?;
    check_cover(
        output_order,
        expect_outputs,
        |leg| match leg {
            Leg::P(j) => *j < outer.outputs,
            Leg::Q(j) => unmatched_q_out.contains(j),
        },
        "output",
    )?;

    let mut result = Operation::zero(
        outer.complex,
        expect_inputs,
        expect_outputs,
        outer.degree + inner.degree,
    );

    // Index the outer entries by the cells sitting in the matched inputs.
    type EntryRow<'a> = (&'a Vec<CellIndex>, &'a BTreeMap<Vec<CellIndex>, Rat>);
    let mut outer_index: HashMap<Vec<CellIndex>, Vec<EntryRow>> = HashMap::new();
    for (xp, row) in &outer.entries {
        let key: Vec<CellIndex> = matching.iter().map(|&(_, pi)| xp[pi]).collect();
        outer_index.entry(key).or_default().push((xp, row));
    }

    // Tag sequences for the three reorderings; only degrees vary per entry.
    let canonical_in: Vec<Leg> = (0..inner.inputs)
        .map(Leg::Q)
        .chain(unmatched_p_in.iter().map(|&i| Leg::P(i)))
        .collect();
    // Mid-stage tags: Q's outputs then P's unmatched inputs.
    #[derive(Clone, Copy, PartialEq, Debug)]
    enum Mid {
        QOut(usize),
        PIn(usize),
    }
    let mid_current: Vec<Mid> = (0..inner.outputs)
        .map(Mid::QOut)
        .chain(unmatched_p_in.iter().map(|&i| Mid::PIn(i)))
        .collect();
    let q_slot_for_p_in: HashMap<usize, usize> =
        matching.iter().map(|&(qo, pi)| (pi, qo)).collect();
    let mid_target: Vec<Mid> = (0..outer.inputs)
        .map(|pi| match q_slot_for_p_in.get(&pi) {
            Some(&qo) => Mid::QOut(qo),
            None => Mid::PIn(pi),
        })
        .chain(unmatched_q_out.iter().map(|&j| Mid::QOut(j)))
        .collect();
    let fin_current: Vec<Leg> = (0..outer.outputs)
        .map(Leg::P)
        .chain(unmatched_q_out.iter().map(|&j| Leg::Q(j)))
        .collect();

    for (xq, q_row) in &inner.entries {
        for (yq, cq) in q_row {
            let key: Vec<CellIndex> = matching.iter().map(|&(qo, _)| yq[qo]).collect();
            let Some(candidates) = outer_index.get(&key) else {
                continue;
            };
            for (xp, p_row) in candidates {
                // Composite input tuple and its degree sequence.
                let in_tuple: Vec<CellIndex> = input_order
                    .iter()
                    .map(|leg| match leg {
                        Leg::Q(i) => xq[*i],
                        Leg::P(i) => xp[*i],
                    })
                    .collect();
                let in_degrees: Vec<Degree> =
                    in_tuple.iter().map(|c| c.degree()).collect();
                let sign_in = reorder_sign(input_order, &in_degrees, &canonical_in)?;

                // Degrees after applying Q: its outputs, then P's spare inputs.
                let mid_degrees: Vec<Degree> = yq
                    .iter()
                    .map(|c| c.degree())
                    .chain(unmatched_p_in.iter().map(|&i| xp[i].degree()))
                    .collect();
                let sign_mid = reorder_sign(&mid_current, &mid_degrees, &mid_target)?;

                let pair_sign = rat_int(sign_in * sign_mid);
                for (yp, cp) in *p_row {
                    let fin_degrees: Vec<Degree> = yp
                        .iter()
                        .map(|c| c.degree())
                        .chain(unmatched_q_out.iter().map(|&j| yq[j].degree()))
                        .collect();
                    let sign_out = reorder_sign(&fin_current, &fin_degrees, output_order)?;
                    let out_tuple: Vec<CellIndex> = output_order
                        .iter()
                        .map(|leg| match leg {
                            Leg::P(j) => yp[*j],
                            Leg::Q(j) => yq[*j],
                        })
                        .collect();
                    result.insert(
                        &in_tuple,
                        &out_tuple,
                        cq * cp * &pair_sign * rat_int(sign_out),
                    )?;
                }
            }
        }
    }
    Ok(result)
}

fn check_cover(order: &[Leg], expected: usize, valid: impl Fn(&Leg) -> bool, what: &str) -> Result<()> {
    if order.len() != expected {
        return Err(Error::Argument(format!(
            "{what} order lists {} legs, expected {expected}",
            order.len()
        )));
    }
    for (i, leg) in order.iter().enumerate() {
        if !valid(leg) {
            return Err(Error::Argument(format!(
                "{what} order slot {i} refers to an unavailable leg {leg:?}"
            )));
        }
        if order[..i].contains(leg) {
            return Err(Error::Argument(format!(
                "{what} order repeats leg {leg:?}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifts::LiftSet;

    fn cx() -> Complex {
        Complex::new(5).unwrap()
    }

    #[test]
    fn identity_acts_as_identity_and_has_radius_zero() {
        let cx = cx();
        let id = Operation::identity(cx);
        let f0 = Cochain::basis(&cx, cx.vertex(0)).unwrap();
        let g0 = Cochain::basis(&cx, cx.edge(0)).unwrap();
        assert_eq!(
            id.apply(std::slice::from_ref(&f0)).unwrap().into_cochain(0).unwrap(),
            f0
        );
        assert_eq!(
            id.apply(std::slice::from_ref(&g0)).unwrap().into_cochain(1).unwrap(),
            g0
        );
        assert_eq!(id.quasilocality_radius(), 0);
        assert!(id.commutator_with_d().is_zero());
    }

    #[test]
    fn apply_reads_the_table_and_misses_are_zero() {
        let cx = cx();
        let lifts = LiftSet::build(cx).unwrap();
        let f0 = Cochain::basis(&cx, cx.vertex(0)).unwrap();
        let f1 = Cochain::basis(&cx, cx.vertex(1)).unwrap();
        let out = lifts.mult.apply(&[f0.clone(), f0.clone()]).unwrap();
        assert_eq!(out.coeff(&[cx.vertex(0)]), rat_int(1));
        // absent entry: f_0 ⊗ f_1 has no table row
        assert!(lifts.mult.apply(&[f0.clone(), f1]).unwrap().is_zero());
        let zero = Operation::zero(cx, 2, 1, 0);
        assert!(zero.apply(&[f0.clone(), f0]).unwrap().is_zero());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let cx = cx();
        let id = Operation::identity(cx);
        let f0 = Cochain::basis(&cx, cx.vertex(0)).unwrap();
        assert!(id.apply(&[f0.clone(), f0]).is_err());
    }

    #[test]
    fn degree_constraint_is_enforced() {
        let cx = cx();
        let mut op = Operation::zero(cx, 1, 1, 0);
        assert!(op.insert(&[cx.vertex(0)], &[cx.edge(0)], rat_int(1)).is_err());
        assert!(op.insert(&[cx.vertex(0)], &[cx.vertex(0)], rat_int(1)).is_ok());
    }

    #[test]
    fn add_and_scale() {
        let cx = cx();
        let id = Operation::identity(cx);
        assert!(id.plus(&id.scaled(&rat_int(-1))).unwrap().is_zero());
        let mut doubled = Operation::identity(cx).scaled(&rat_int(2));
        assert_eq!(doubled.entry(&[cx.vertex(0)], &[cx.vertex(0)]), rat_int(2));
        doubled = doubled.minus(&id).unwrap();
        assert_eq!(doubled, id);
        let d = Operation::differential_op(cx);
        assert!(id.plus(&d).is_err());
    }

    #[test]
    fn commutator_examples() {
        let cx = cx();
        let lifts = LiftSet::build(cx).unwrap();
        // The multiplication table is a chain map.
        assert!(lifts.mult.commutator_with_d().is_zero());
        assert!(Operation::identity(cx).commutator_with_d().is_zero());
        // [d, associator](g_{x+1/2} ⊗ f_x ⊗ f_x) = 1/4 g_{x+1/2}.
        let d_assoc = lifts.associator.commutator_with_d();
        let g = Cochain::basis(&cx, cx.edge(0)).unwrap();
        let f = Cochain::basis(&cx, cx.vertex(0)).unwrap();
        let out = d_assoc.apply(&[g.clone(), f.clone(), f]).unwrap();
        assert_eq!(out.coeff(&[cx.edge(0)]), rat(1, 4));
    }

    #[test]
    fn output_swap_collects_the_odd_odd_sign() {
        let cx = cx();
        // Single entry f_0 -> g_{1/2} ⊗ g_{3/2}, then swap the outputs.
        let op = Operation::from_entries(
            cx,
            1,
            2,
            2,
            &[(vec![cx.vertex(0)], vec![cx.edge(0), cx.edge(1)], rat_int(1))],
        )
        .unwrap();
        let swapped = op.permute_outputs(&Permutation::transposition(2, 0, 1)).unwrap();
        assert_eq!(
            swapped.entry(&[cx.vertex(0)], &[cx.edge(1), cx.edge(0)]),
            rat_int(-1)
        );
    }

    #[test]
    fn input_permutations_identity_and_mult_symmetry() {
        let cx = cx();
        let lifts = LiftSet::build(cx).unwrap();
        let id_perm = Permutation::identity(2);
        assert_eq!(lifts.mult.permute_inputs(&id_perm).unwrap(), lifts.mult);
        // The multiplication table is symmetric after sign bookkeeping: the
        // swap sign is +1 because at most one input is odd in every entry.
        let swap = Permutation::transposition(2, 0, 1);
        assert_eq!(lifts.mult.permute_inputs(&swap).unwrap(), lifts.mult);
    }

    #[test]
    fn permutation_actions_compose_exhaustively_on_s3() {
        let cx = cx();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        use rand::SeedableRng;
        for degree in [-1, 0, 1] {
            let op = Operation::random_sparse(cx, 3, 3, degree, 12, &mut rng);
            for sigma in Permutation::all(3) {
                for tau in Permutation::all(3) {
                    let st = sigma.compose(&tau).unwrap();
                    let via_inputs = op
                        .permute_inputs(&sigma)
                        .unwrap()
                        .permute_inputs(&tau)
                        .unwrap();
                    assert_eq!(via_inputs, op.permute_inputs(&st).unwrap());
                    let via_outputs = op
                        .permute_outputs(&tau)
                        .unwrap()
                        .permute_outputs(&sigma)
                        .unwrap();
                    assert_eq!(via_outputs, op.permute_outputs(&st).unwrap());
                }
            }
        }
    }

    #[test]
    fn composing_with_the_identity_is_the_identity_law() {
        let cx = cx();
        let d = Operation::differential_op(cx);
        let id = Operation::identity(cx);
        let composed = compose(&d, &id, &[(0, 0)], &[Leg::Q(0)], &[Leg::P(0)]).unwrap();
        assert_eq!(composed, d);
        let composed = compose(&id, &d, &[(0, 0)], &[Leg::Q(0)], &[Leg::P(0)]).unwrap();
        assert_eq!(composed, d);
    }

    #[test]
    fn wedge_style_associativity_on_vertex_inputs() {
        let cx = cx();
        let lifts = LiftSet::build(cx).unwrap();
        let m = &lifts.mult;
        let left = compose(
            m,
            m,
            &[(0, 0)],
            &[Leg::Q(0), Leg::Q(1), Leg::P(1)],
            &[Leg::P(0)],
        )
        .unwrap();
        let f0 = Cochain::basis(&cx, cx.vertex(0)).unwrap();
        let out = left.apply(&[f0.clone(), f0.clone(), f0]).unwrap();
        assert_eq!(out.coeff(&[cx.vertex(0)]), rat_int(1));
    }

    #[test]
    fn empty_matching_and_slot_collisions_are_errors() {
        let cx = cx();
        let id = Operation::identity(cx);
        assert!(compose(&id, &id, &[], &[Leg::Q(0), Leg::P(0)], &[]).is_err());
        let d = Operation::differential_op(cx);
        // repeated q-output slot
        let lifts = LiftSet::build(cx).unwrap();
        assert!(compose(
            &lifts.mult,
            &lifts.comult,
            &[(0, 0), (0, 1)],
            &[Leg::Q(0)],
            &[Leg::P(0)]
        )
        .is_err());
        // bad order cover
        assert!(compose(&d, &id, &[(0, 0)], &[Leg::P(0)], &[Leg::P(0)]).is_err());
    }

    #[test]
    fn quasilocality_of_a_shifted_entry() {
        let cx = Complex::new(8).unwrap();
        let op = Operation::matrix_unit(cx, &[cx.vertex(0)], &[cx.vertex(3)]).unwrap();
        assert_eq!(op.quasilocality_radius(), 3);
        let zero = Operation::zero(cx, 2, 2, 0);
        assert_eq!(zero.quasilocality_radius(), 0);
    }

    #[test]
    fn cohomology_action_of_identity_and_exact_operations() {
        let cx = cx();
        let id = Operation::identity(cx);
        assert_eq!(id.cohomology_action_11().unwrap(), (rat_int(1), rat_int(1)));
        // D(h) acts as zero for any degree -1 h.
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5 {
            let h = Operation::random_sparse(cx, 1, 1, -1, 6, &mut rng);
            let dh = h.commutator_with_d();
            if dh.commutator_with_d().is_zero() {
                assert_eq!(
                    dh.cohomology_action_11().unwrap(),
                    (rat_int(0), rat_int(0))
                );
            }
        }
    }
}
