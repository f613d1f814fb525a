//! Reduced homology of edge selections in degrees `d-1` and `d`.
//!
//! Only these two degrees carry information: the full `(d-1)`-skeleton kills
//! everything below. Torsion in degree `d-1` is read off the saturation
//! index of the selected boundary columns inside the full ambient chain
//! group, which is legitimate because the cycle lattice `Z_{d-1}` is itself
//! saturated in `C_{d-1}`.

use num_bigint::BigInt;

use crate::complex::{boundary_matrix, cycle_space_dim, Hypergraph};
use crate::error::{domain, Error, Result};
use crate::exactalg::{rank, saturation_index};
use crate::IntMatrix;

/// A subset of the edges of a parent hypergraph, by column index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubcomplexSelection<'a> {
    parent: &'a Hypergraph,
    chosen: Vec<usize>,
}

impl<'a> SubcomplexSelection<'a> {
    /// Indices are sorted; out-of-range or repeated indices are rejected.
    pub fn new(parent: &'a Hypergraph, mut chosen: Vec<usize>) -> Result<Self> {
        chosen.sort_unstable();
        if chosen.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain("repeated edge index in selection"));
        }
        if let Some(&i) = chosen.iter().find(|&&i| i >= parent.edge_count()) {
            return Err(domain(format!(
                "edge index {i} out of range for {} edges",
                parent.edge_count()
            )));
        }
        Ok(SubcomplexSelection { parent, chosen })
    }

    pub fn all(parent: &'a Hypergraph) -> Self {
        SubcomplexSelection {
            parent,
            chosen: (0..parent.edge_count()).collect(),
        }
    }

    pub fn empty(parent: &'a Hypergraph) -> Self {
        SubcomplexSelection {
            parent,
            chosen: Vec::new(),
        }
    }

    pub fn parent(&self) -> &'a Hypergraph {
        self.parent
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }

    /// The selected edges as a hypergraph of their own.
    pub fn to_hypergraph(&self) -> Hypergraph {
        self.parent.restrict(&self.chosen)
    }

    /// Boundary columns of the chosen edges over all `d`-subset rows.
    pub fn boundary(&self) -> IntMatrix {
        boundary_matrix(self.parent).select_columns(&self.chosen)
    }
}

/// `|H̃_{d-1}(F; ℤ)_tors|`.
pub fn torsion_order(f: &SubcomplexSelection<'_>) -> BigInt {
    saturation_index(&f.boundary())
}

/// Same as [`torsion_order`], against a boundary matrix the caller already holds.
pub fn torsion_of_columns(boundary: &IntMatrix, columns: &[usize]) -> BigInt {
    saturation_index(&boundary.select_columns(columns))
}

/// `true` when the selected boundary columns are linearly independent
/// (`H̃_d(F; ℚ) = 0`).
pub fn is_hyperforest(f: &SubcomplexSelection<'_>) -> bool {
    rank(&f.boundary()) == f.len()
}

/// A hyperforest with exactly `binom(n-1, d)` edges.
pub fn is_spanning_hypertree(f: &SubcomplexSelection<'_>) -> bool {
    let h = f.parent;
    let target = cycle_space_dim(h.n(), h.d()).expect("parent hypergraph is valid");
    f.len() == target && is_hyperforest(f)
}

/// Rational Betti number of reduced homology in degree `k ∈ {d-1, d}`.
pub fn betti(f: &SubcomplexSelection<'_>, k: usize) -> Result<usize> {
    let h = f.parent;
    let d = h.d();
    let r = rank(&f.boundary());
    if k == d {
        Ok(f.len() - r)
    } else if k + 1 == d {
        Ok(cycle_space_dim(h.n(), d)? - r)
    } else {
        Err(Error::UnsupportedDegree { d, k })
    }
}
