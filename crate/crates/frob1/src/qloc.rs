//! The cochain complexes of quasilocal operations and their cohomology.
//!
//! For fixed arities `(m, n)` and a radius `ℓ`, the `ℓ`-quasilocal
//! operations of each degree are spanned by matrix units whose entries
//! connect every input cell to every output cell within nonsymmetric
//! distance `ℓ`. The commutator with the differential preserves the bound
//! (differentiation is 0-quasilocal), so these spaces form a complex; its
//! cohomology is computed by exact rank and, for `ℓ` small against `N`,
//! matches the cohomology of the circle shifted by `1 - n`: one dimension
//! in degrees `n - 1` and `n`, nothing else. Sweeping `ℓ` upward at fixed
//! `N` eventually breaks that answer, which `breakdown_ell` locates
//! empirically.

use std::collections::{BTreeMap, HashMap};

use crate::circle::{CellIndex, Complex};
use crate::graded::Degree;
use crate::linalg::SparseMat;
use crate::op::Operation;
use crate::{Error, Result};

/// The basis of the `ℓ`-quasilocal `(m, n)` operations of one degree:
/// matrix units listed as (input tuple, output tuple) pairs.
#[derive(Clone, Debug)]
pub struct QlocSpace {
    pub complex: Complex,
    pub inputs: usize,
    pub outputs: usize,
    pub ell: u32,
    pub degree: Degree,
    pub basis: Vec<(Vec<CellIndex>, Vec<CellIndex>)>,
    index: HashMap<(Vec<CellIndex>, Vec<CellIndex>), usize>,
}

impl QlocSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, input: &[CellIndex], output: &[CellIndex]) -> Option<usize> {
        self.index
            .get(&(input.to_vec(), output.to_vec()))
            .copied()
    }

    /// The matrix unit at a basis position, as an [`Operation`].
    pub fn unit(&self, position: usize) -> Operation {
        let (input, output) = &self.basis[position];
        Operation::matrix_unit(self.complex, input, output)
            .expect("basis tuples are valid matrix units")
    }
}

/// Enumerates the `ℓ`-quasilocal basis in one degree. Degrees outside
/// `[-m, n]` yield the empty space.
pub fn qloc_basis(
    complex: Complex,
    inputs: usize,
    outputs: usize,
    ell: u32,
    degree: Degree,
) -> Result<QlocSpace> {
    if inputs == 0 || outputs == 0 {
        return Err(Error::Argument(
            "quasilocal spaces need positive arities".into(),
        ));
    }
    let mut space = QlocSpace {
        complex,
        inputs,
        outputs,
        ell,
        degree,
        basis: Vec::new(),
        index: HashMap::new(),
    };
    if degree < -(inputs as Degree) || degree > outputs as Degree {
        return Ok(space);
    }

    // Precompute each cell's ℓ-neighborhood once.
    let cells: Vec<CellIndex> = complex.cells().collect();
    let neighborhoods: HashMap<CellIndex, Vec<CellIndex>> = cells
        .iter()
        .map(|&c| {
            let near: Vec<CellIndex> = cells
                .iter()
                .copied()
                .filter(|&y| complex.distance(c, y) <= ell)
                .collect();
            (c, near)
        })
        .collect();

    let mut input_tuple = Vec::with_capacity(inputs);
    enumerate_inputs(
        &cells,
        &neighborhoods,
        inputs,
        outputs,
        degree,
        &mut input_tuple,
        &mut space,
    );
    Ok(space)
}

fn enumerate_inputs(
    cells: &[CellIndex],
    neighborhoods: &HashMap<CellIndex, Vec<CellIndex>>,
    inputs: usize,
    outputs: usize,
    degree: Degree,
    tuple: &mut Vec<CellIndex>,
    space: &mut QlocSpace,
) {
    if tuple.len() == inputs {
        // Joint neighborhood of all inputs.
        let mut joint: Vec<CellIndex> = neighborhoods[&tuple[0]].clone();
        for c in &tuple[1..] {
            let near = &neighborhoods[c];
            joint.retain(|y| near.contains(y));
        }
        if joint.is_empty() {
            return;
        }
        let in_degree: Degree = tuple.iter().map(|c| c.degree()).sum();
        let target = in_degree + degree;
        if !(0..=outputs as Degree).contains(&target) {
            return;
        }
        let mut output_tuple = Vec::with_capacity(outputs);
        enumerate_outputs(&joint, outputs, target, tuple, &mut output_tuple, space);
        return;
    }
    for &c in cells {
        tuple.push(c);
        enumerate_inputs(cells, neighborhoods, inputs, outputs, degree, tuple, space);
        tuple.pop();
    }
}

fn enumerate_outputs(
    joint: &[CellIndex],
    outputs: usize,
    remaining_degree: Degree,
    input_tuple: &[CellIndex],
    tuple: &mut Vec<CellIndex>,
    space: &mut QlocSpace,
) {
    let slots_left = (outputs - tuple.len()) as Degree;
    if remaining_degree < 0 || remaining_degree > slots_left {
        return;
    }
    if tuple.len() == outputs {
        let key = (input_tuple.to_vec(), tuple.clone());
        space.index.insert(key, space.basis.len());
        space.basis.push((input_tuple.to_vec(), tuple.clone()));
        return;
    }
    for &c in joint {
        tuple.push(c);
        enumerate_outputs(
            joint,
            outputs,
            remaining_degree - c.degree(),
            input_tuple,
            tuple,
            space,
        );
        tuple.pop();
    }
}

/// The matrix of `[d, -]` from one quasilocal degree to the next. Errors
/// if some image entry escapes the target basis, i.e. if the spaces failed
/// to close under the differential.
pub fn differential_matrix(from: &QlocSpace, to: &QlocSpace) -> Result<SparseMat> {
    let mut mat = SparseMat::zero(to.dim(), from.dim());
    for (col, _) in from.basis.iter().enumerate() {
        let image = from.unit(col).commutator_with_d();
        for (i, o, c) in image.entries() {
            let row = to.index_of(i, o).ok_or_else(|| {
                Error::Contract(format!(
                    "differential image entry {i:?} -> {o:?} escapes the \
                     ℓ = {} basis in degree {}",
                    to.ell, to.degree
                ))
            })?;
            mat.add(row, col, c.clone());
        }
    }
    Ok(mat)
}

/// Cohomology dimensions of the `ℓ`-quasilocal `(m, n)` complex, one entry
/// per degree in `-m ..= n`.
pub fn cohomology_dims(
    complex: Complex,
    inputs: usize,
    outputs: usize,
    ell: u32,
) -> Result<BTreeMap<Degree, usize>> {
    let lo = -(inputs as Degree);
    let hi = outputs as Degree;
    let mut spaces = BTreeMap::new();
    for p in lo..=hi {
        spaces.insert(p, qloc_basis(complex, inputs, outputs, ell, p)?);
    }
    let mut ranks = BTreeMap::new();
    for p in lo..=hi {
        let from = &spaces[&p];
        if p == hi {
            ranks.insert(p, 0usize);
            continue;
        }
        let to = &spaces[&(p + 1)];
        ranks.insert(p, differential_matrix(from, to)?.rank());
    }
    let mut dims = BTreeMap::new();
    for p in lo..=hi {
        let dim = spaces[&p].dim();
        let rank_out = ranks[&p];
        let rank_in = if p == lo { 0 } else { ranks[&(p - 1)] };
        dims.insert(p, dim - rank_out - rank_in);
    }
    Ok(dims)
}

/// Checks `d² = 0` at the matrix level across all degrees.
pub fn differential_squares_to_zero(
    complex: Complex,
    inputs: usize,
    outputs: usize,
    ell: u32,
) -> Result<bool> {
    let lo = -(inputs as Degree);
    let hi = outputs as Degree;
    for p in lo..hi.saturating_sub(1) {
        let a = qloc_basis(complex, inputs, outputs, ell, p)?;
        let b = qloc_basis(complex, inputs, outputs, ell, p + 1)?;
        let c = qloc_basis(complex, inputs, outputs, ell, p + 2)?;
        let d1 = differential_matrix(&a, &b)?;
        let d2 = differential_matrix(&b, &c)?;
        if !d2.multiply(&d1).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first `ℓ >= 2` at which the cohomology dimensions deviate from the
/// `ℓ = 1` answer, if any occurs for `ℓ <= N`.
pub fn breakdown_ell(complex: Complex, inputs: usize, outputs: usize) -> Result<Option<u32>> {
    let reference = cohomology_dims(complex, inputs, outputs, 1)?;
    for ell in 2..=complex.n() {
        if cohomology_dims(complex, inputs, outputs, ell)? != reference {
            return Ok(Some(ell));
        }
    }
    Ok(None)
}
