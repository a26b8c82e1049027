//! The cellular cochain complex of the circle subdivided into `N` cells.
//!
//! Vertices sit at `0, 1, .., N-1` and edges at the half-integers between
//! them. A single "doubled" coordinate mod `2N` addresses both: even values
//! `2x` are the vertex functions `f_x`, odd values `2x+1` are the edge
//! cochains `g_{x+1/2}`. The differential is
//! `d f_x = g_{x-1/2} - g_{x+1/2}`, and every edge cochain is closed.
//!
//! The doubled coordinate also turns the nonsymmetric locality metric into
//! integer arithmetic: a vertex occupies the single doubled point `{2x}`,
//! an edge occupies `{2x, 2x+1, 2x+2}`, and the distance from cell `a` to
//! cell `b` is `max` over points of `a` of the shortest circular doubled
//! distance to `b`, halved. This makes the distance from `f_x` to
//! `g_{x±1/2}` equal to 0 while the distance from `g_{x±1/2}` back to
//! `f_x` is 1.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::graded::{rat_int, Degree, Rat};
use crate::{Error, Result};

/// A basis cell, addressed by its doubled coordinate in `0..2N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex {
    doubled: u32,
}

impl CellIndex {
    pub fn doubled(&self) -> u32 {
        self.doubled
    }

    pub fn is_vertex(&self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn is_edge(&self) -> bool {
        self.doubled % 2 == 1
    }

    /// 0 for vertices, 1 for edges.
    pub fn degree(&self) -> Degree {
        (self.doubled % 2) as Degree
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vertex() {
            write!(f, "f{}", self.doubled / 2)
        } else {
            write!(f, "g{}/2", self.doubled)
        }
    }
}

/// Handle to the `N`-cell subdivision. Copyable and immutable, so cochains
/// and operations can be shared freely across threads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Complex {
    n: u32,
}

impl Complex {
    /// A circle with `n >= 3` vertices and `n` edges.
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::Argument(format!(
                "need at least 3 cells for a nondegenerate subdivision, got {n}"
            )));
        }
        Ok(Complex { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of basis cells, `2N`.
    pub fn num_cells(&self) -> u32 {
        2 * self.n
    }

    /// The vertex `f_x` (x taken mod N).
    pub fn vertex(&self, x: i64) -> CellIndex {
        CellIndex {
            doubled: (2 * x).rem_euclid(2 * self.n as i64) as u32,
        }
    }

    /// The edge `g_{x+1/2}` (x taken mod N).
    pub fn edge(&self, x: i64) -> CellIndex {
        CellIndex {
            doubled: (2 * x + 1).rem_euclid(2 * self.n as i64) as u32,
        }
    }

    pub fn cell_from_doubled(&self, doubled: i64) -> CellIndex {
        CellIndex {
            doubled: doubled.rem_euclid(2 * self.n as i64) as u32,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = CellIndex> {
        (0..self.num_cells()).map(|doubled| CellIndex { doubled })
    }

    pub fn vertices(&self) -> impl Iterator<Item = CellIndex> {
        let n = self.n as i64;
        let me = *self;
        (0..n).map(move |x| me.vertex(x))
    }

    pub fn edges(&self) -> impl Iterator<Item = CellIndex> {
        let n = self.n as i64;
        let me = *self;
        (0..n).map(move |x| me.edge(x))
    }

    /// Shifts a cell by `k` full cells (rotation by `k` vertices).
    pub fn shift(&self, cell: CellIndex, k: i64) -> CellIndex {
        self.cell_from_doubled(cell.doubled as i64 + 2 * k)
    }

    /// The two terms of `d f_x = g_{x-1/2} - g_{x+1/2}` for a vertex, or
    /// an empty list for a (closed) edge.
    pub fn d_cell(&self, cell: CellIndex) -> Vec<(CellIndex, i64)> {
        if cell.is_vertex() {
            vec![
                (self.cell_from_doubled(cell.doubled as i64 - 1), 1),
                (self.cell_from_doubled(cell.doubled as i64 + 1), -1),
            ]
        } else {
            Vec::new()
        }
    }

    /// Vertices `w` such that `d f_w` contains the given edge, with the
    /// coefficient it carries there.
    pub fn d_preimages(&self, edge: CellIndex) -> Vec<(CellIndex, i64)> {
        if edge.is_vertex() {
            return Vec::new();
        }
        vec![
            // edge = g_{z+1/2}: d f_z hits it with -1, d f_{z+1} with +1.
            (self.cell_from_doubled(edge.doubled as i64 - 1), -1),
            (self.cell_from_doubled(edge.doubled as i64 + 1), 1),
        ]
    }

    /// Nonsymmetric distance from cell `a` to cell `b`.
    pub fn distance(&self, from: CellIndex, to: CellIndex) -> u32 {
        let two_n = 2 * self.n as i64;
        let circ = |p: i64, q: i64| -> i64 {
            let d = (p - q).rem_euclid(two_n);
            d.min(two_n - d)
        };
        let points = |c: CellIndex| -> Vec<i64> {
            let d = c.doubled as i64;
            if c.is_vertex() {
                vec![d]
            } else {
                vec![d - 1, d, d + 1]
            }
        };
        let to_pts = points(to);
        points(from)
            .into_iter()
            .map(|p| to_pts.iter().map(|&q| circ(p, q)).min().unwrap())
            .max()
            .unwrap() as u32
            / 2
    }

    fn check_cell(&self, cell: CellIndex) -> Result<()> {
        if cell.doubled >= self.num_cells() {
            return Err(Error::Argument(format!(
                "cell {} out of range for N = {}",
                cell, self.n
            )));
        }
        Ok(())
    }

    /// The cochain differential. Raises degree by one and kills edges.
    pub fn differential(&self, c: &Cochain) -> Cochain {
        let mut out = Cochain::zero(c.degree + 1);
        for (cell, coeff) in &c.coeffs {
            for (target, sign) in self.d_cell(*cell) {
                out.add_term(target, coeff * rat_int(sign));
            }
        }
        out
    }

    /// Reads the cohomology class of a closed cochain against the standard
    /// representatives: the constant vertex cochain in degree 0 and the sum
    /// of the edge coefficients in degree 1.
    pub fn cohomology_class(&self, c: &Cochain) -> Result<CohClass> {
        if !self.differential(c).is_zero() {
            return Err(Error::Contract(
                "cohomology_class requires a closed cochain".into(),
            ));
        }
        match c.degree {
            0 => {
                // Closed degree-0 cochains are constant; read any vertex.
                let h0 = c
                    .coeffs
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rat::zero);
                Ok(CohClass {
                    h0,
                    h1: Rat::zero(),
                })
            }
            1 => {
                let mut h1 = Rat::zero();
                for coeff in c.coeffs.values() {
                    h1 += coeff;
                }
                Ok(CohClass {
                    h0: Rat::zero(),
                    h1,
                })
            }
            _ => Ok(CohClass {
                h0: Rat::zero(),
                h1: Rat::zero(),
            }),
        }
    }

    /// Whether a closed cochain is a coboundary.
    pub fn is_exact(&self, c: &Cochain) -> Result<bool> {
        let class = self.cohomology_class(c)?;
        Ok(class.h0.is_zero() && class.h1.is_zero())
    }

    /// The standard degree-0 representative of the unit class: `sum_x f_x`.
    pub fn unit_cochain(&self) -> Cochain {
        let mut c = Cochain::zero(0);
        for v in self.vertices() {
            c.add_term(v, rat_int(1));
        }
        c
    }

    /// The canonical degree-1 representative: the single edge `g_{1/2}`.
    pub fn volume_cochain(&self) -> Cochain {
        Cochain::basis(self, self.edge(0)).expect("edge(0) is always valid")
    }
}

/// A homogeneous cellular cochain: a degree and a sparse rational
/// coefficient vector over the cells of that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: Degree,
    coeffs: BTreeMap<CellIndex, Rat>,
}

impl Cochain {
    pub fn zero(degree: Degree) -> Self {
        Cochain {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis cochain supported on a single cell.
    pub fn basis(complex: &Complex, cell: CellIndex) -> Result<Self> {
        complex.check_cell(cell)?;
        let mut c = Cochain::zero(cell.degree());
        c.add_term(cell, rat_int(1));
        Ok(c)
    }

    pub fn from_terms(
        complex: &Complex,
        degree: Degree,
        terms: &[(CellIndex, Rat)],
    ) -> Result<Self> {
        if !terms.is_empty() && !(0..=1).contains(&degree) {
            return Err(Error::Argument(format!(
                "the circle has no nonzero cochains in degree {degree}"
            )));
        }
        let mut c = Cochain::zero(degree);
        for (cell, coeff) in terms {
            complex.check_cell(*cell)?;
            if cell.degree() != degree {
                return Err(Error::Argument(format!(
                    "cell {cell} has the wrong parity for degree {degree}"
                )));
            }
            c.add_term(*cell, coeff.clone());
        }
        Ok(c)
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, cell: CellIndex) -> Rat {
        self.coeffs.get(&cell).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CellIndex, &Rat)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    /// Adds `coeff * cell`, pruning zeros so equality stays structural.
    /// Panics if the cell's parity does not match the cochain's degree.
    pub fn add_term(&mut self, cell: CellIndex, coeff: Rat) {
        assert_eq!(
            cell.degree(),
            self.degree.rem_euclid(2),
            "cell {cell} has the wrong parity for a degree-{} cochain",
            self.degree
        );
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(cell).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&cell);
        }
    }

    pub fn scaled(&self, factor: &Rat) -> Cochain {
        let mut out = Cochain::zero(self.degree);
        for (cell, coeff) in &self.coeffs {
            out.add_term(*cell, coeff * factor);
        }
        out
    }

    pub fn plus(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree {
            return Err(Error::Argument(format!(
                "cannot add cochains of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (cell, coeff) in &other.coeffs {
            out.add_term(*cell, coeff.clone());
        }
        Ok(out)
    }
}

/// A cohomology class of the circle, written against the basis `1, ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub h0: Rat,
    pub h1: Rat,
}
