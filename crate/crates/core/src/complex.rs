//! Uniform hypergraphs as simplicial complexes with full skeleton, and their
//! boundary and coboundary maps.
//!
//! Simplices are stored as ascending vertex lists (1-based), which fixes the
//! orientation of every simplex once and for all.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::IntMatrix;

/// A `(d+1)`-uniform hypergraph on vertices `1..=n`.
///
/// Edges are kept ascending internally and sorted lexicographically, so the
/// column order of every matrix built from a hypergraph is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    d: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Validates and canonicalizes. Edges may list their vertices in any
    /// order; repeated vertices, out-of-range labels, wrong arity and
    /// duplicate edges are rejected.
    pub fn new(n: usize, d: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        check_dims(n, d)?;
        let mut canonical = Vec::with_capacity(edges.len());
        for (i, mut e) in edges.into_iter().enumerate() {
            if e.len() != d + 1 {
                return Err(domain(format!(
                    "edge {i} has {} vertices, expected {}",
                    e.len(),
                    d + 1
                )));
            }
            if let Some(v) = e.iter().find(|&&v| v == 0 || v > n) {
                return Err(domain(format!("edge {i}: vertex {v} outside 1..={n}")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(domain(format!("edge {i} repeats a vertex")));
            }
            canonical.push(e);
        }
        canonical.sort();
        if let Some(w) = canonical.windows(2).find(|w| w[0] == w[1]) {
            return Err(domain(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Hypergraph {
            n,
            d,
            edges: canonical,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Column index of an edge given in any vertex order.
    pub fn edge_index(&self, edge: &[usize]) -> Option<usize> {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges.binary_search(&e).ok()
    }

    pub fn is_complete(&self) -> bool {
        BigUint::from(self.edges.len()) == binomial(self.n, self.d + 1)
    }

    /// The sub-hypergraph on the same vertices keeping the listed edges.
    pub fn restrict(&self, edge_indices: &[usize]) -> Hypergraph {
        let mut edges: Vec<Vec<usize>> = edge_indices
            .iter()
            .map(|&i| self.edges[i].clone())
            .collect();
        edges.sort();
        edges.dedup();
        Hypergraph {
            n: self.n,
            d: self.d,
            edges,
        }
    }
}

fn check_dims(n: usize, d: usize) -> Result<()> {
    if d == 0 {
        return Err(domain("d = 0 is not supported; hypergraphs start at d = 1"));
    }
    if d + 1 > n {
        return Err(domain(format!("need 1 <= d <= n-1, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// Lexicographic numbering of the `k`-element subsets of `1..=n`.
#[derive(Clone, Debug)]
pub struct SimplexIndex {
    subsets: Vec<Vec<usize>>,
    positions: HashMap<Vec<usize>, usize>,
}

impl SimplexIndex {
    pub fn new(n: usize, k: usize) -> Self {
        let subsets = k_subsets(n, k);
        let positions = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        SimplexIndex { subsets, positions }
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Position of an ascending subset.
    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        self.positions.get(subset).copied()
    }

    pub fn subset(&self, i: usize) -> &[usize] {
        &self.subsets[i]
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }
}

/// All `k`-subsets of `1..=n`, ascending, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            if n - v + 1 < k - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Sign of the permutation that sorts `seq` (distinct entries), and the
/// sorted sequence.
pub fn sort_with_sign(seq: &[usize]) -> (Vec<usize>, i32) {
    let mut v = seq.to_vec();
    let mut sign = 1;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (v, sign)
}

/// Boundary of an oriented simplex given as a vertex tuple in any order,
/// as `(ascending face, coefficient)` pairs.
pub fn oriented_boundary(tuple: &[usize]) -> Vec<(Vec<usize>, i32)> {
    (0..tuple.len())
        .map(|i| {
            let face: Vec<usize> = tuple
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .collect();
            let (sorted, s) = sort_with_sign(&face);
            let alt = if i % 2 == 0 { 1 } else { -1 };
            (sorted, alt * s)
        })
        .collect()
}

/// The column of `∂` for one oriented simplex, over the given row index.
pub fn boundary_column(rows: &SimplexIndex, tuple: &[usize]) -> Vec<BigInt> {
    let mut col = vec![BigInt::zero(); rows.len()];
    for (face, c) in oriented_boundary(tuple) {
        let r = rows
            .position(&face)
            .expect("face of a simplex on 1..=n is indexed");
        col[r] += c;
    }
    col
}

/// Matrix of `∂_d` restricted to the edges of `H`: rows are all `d`-subsets
/// of `1..=n` in lexicographic order, columns the edges of `H`.
pub fn boundary_matrix(h: &Hypergraph) -> IntMatrix {
    let rows = SimplexIndex::new(h.n, h.d);
    let cols: Vec<Vec<BigInt>> = h.edges.iter().map(|e| boundary_column(&rows, e)).collect();
    IntMatrix::from_columns(rows.len(), &cols)
}

/// Matrix of `∂_k : C_k → C_{k-1}` of the full simplex on `1..=n`. For
/// `k = 0` this is the augmentation `C_0 → ℤ`, a single row of ones.
pub fn boundary_operator(n: usize, k: usize) -> IntMatrix {
    let cols = k_subsets(n, k + 1);
    if k == 0 {
        return IntMatrix::from_vec(1, cols.len(), vec![BigInt::one(); cols.len()]);
    }
    let rows = SimplexIndex::new(n, k);
    let columns: Vec<Vec<BigInt>> = cols.iter().map(|s| boundary_column(&rows, s)).collect();
    IntMatrix::from_columns(rows.len(), &columns)
}

/// Dimension of the cycle space `Z_{d-1}`, i.e. `binom(n-1, d)`.
pub fn cycle_space_dim(n: usize, d: usize) -> Result<usize> {
    check_dims(n, d)?;
    let b = binomial(n - 1, d);
    usize::try_from(b).map_err(|_| domain("cycle space dimension overflows usize"))
}

/// The complete `(d+1)`-uniform hypergraph on `n` vertices.
pub fn complete_hypergraph(n: usize, d: usize) -> Result<Hypergraph> {
    check_dims(n, d)?;
    Ok(Hypergraph {
        n,
        d,
        edges: k_subsets(n, d + 1),
    })
}

/// Evaluates the coboundary `d_{d-1} γ` on every edge of `H`, i.e. returns
/// `transpose(boundary_matrix(H)) · γ`. `gamma` is indexed like the rows of
/// [`boundary_matrix`].
pub fn coboundary_apply<T>(h: &Hypergraph, gamma: &[T]) -> Result<Vec<T>>
where
    T: Clone + Zero + Neg<Output = T> + Add<Output = T> + Mul<Output = T>,
{
    let rows = SimplexIndex::new(h.n, h.d);
    if gamma.len() != rows.len() {
        return Err(domain(format!(
            "cochain has {} entries, expected {}",
            gamma.len(),
            rows.len()
        )));
    }
    Ok(h.edges
        .iter()
        .map(|e| {
            oriented_boundary(e)
                .into_iter()
                .fold(T::zero(), |acc, (face, c)| {
                    let g = gamma[rows.position(&face).expect("indexed face")].clone();
                    if c > 0 {
                        acc + g
                    } else {
                        acc + -g
                    }
                })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rank;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Hypergraph::new(4, 0, vec![]).is_err());
        assert!(Hypergraph::new(3, 3, vec![]).is_err());
        assert!(Hypergraph::new(4, 2, vec![vec![1, 1, 2]]).is_err());
        assert!(Hypergraph::new(4, 2, vec![vec![1, 2]]).is_err());
        assert!(Hypergraph::new(4, 2, vec![vec![1, 2, 5]]).is_err());
        assert!(Hypergraph::new(4, 2, vec![vec![1, 2, 3], vec![3, 2, 1]]).is_err());
        let h = Hypergraph::new(4, 2, vec![vec![3, 1, 2]]).unwrap();
        assert_eq!(h.edges(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn simplex_index_is_lexicographic() {
        let idx = SimplexIndex::new(4, 2);
        assert_eq!(
            idx.subsets(),
            &[[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]].map(|s| s.to_vec())
        );
        for i in 0..idx.len() {
            assert_eq!(idx.position(idx.subset(i)), Some(i));
        }
    }

    #[test]
    fn triangle_column() {
        // u1 = (12) - (13) + (23)
        let h = Hypergraph::new(4, 2, vec![vec![1, 2, 3]]).unwrap();
        let b = boundary_matrix(&h);
        assert_eq!(b.column(0), ints(&[1, -1, 0, 1, 0, 0]));
    }

    #[test]
    fn graph_incidence_column() {
        let h = Hypergraph::new(3, 1, vec![vec![1, 3]]).unwrap();
        assert_eq!(boundary_matrix(&h).column(0), ints(&[-1, 0, 1]));
    }

    #[test]
    fn complete_k34_columns_match_generators() {
        let b = boundary_matrix(&complete_hypergraph(4, 2).unwrap());
        // rows 12 13 14 23 24 34
        let u = [
            [1, -1, 0, 1, 0, 0],
            [1, 0, -1, 0, 1, 0],
            [0, 1, -1, 0, 0, 1],
            [0, 0, 0, 1, -1, 1],
        ];
        for (j, col) in u.iter().enumerate() {
            assert_eq!(b.column(j), ints(col));
        }
        assert_eq!(rank(&b), 3);
    }

    #[test]
    fn cycle_dims() {
        assert_eq!(cycle_space_dim(4, 2).unwrap(), 3);
        assert_eq!(cycle_space_dim(7, 1).unwrap(), 6);
        assert_eq!(cycle_space_dim(5, 3).unwrap(), 4);
        assert!(cycle_space_dim(3, 0).is_err());
        assert!(cycle_space_dim(3, 3).is_err());
    }

    #[test]
    fn complete_edge_counts() {
        assert_eq!(complete_hypergraph(4, 2).unwrap().edge_count(), 4);
        assert_eq!(complete_hypergraph(6, 2).unwrap().edge_count(), 20);
        assert_eq!(complete_hypergraph(7, 1).unwrap().edge_count(), 21);
        assert!(complete_hypergraph(2, 2).is_err());
    }

    #[test]
    fn coboundary_of_zero_and_cut() {
        let k4 = complete_hypergraph(4, 1).unwrap();
        let zero = vec![BigInt::zero(); 4];
        assert!(coboundary_apply(&k4, &zero)
            .unwrap()
            .iter()
            .all(Zero::is_zero));
        // indicator of A = {1, 2}
        let gamma = ints(&[1, 1, 0, 0]);
        let vals = coboundary_apply(&k4, &gamma).unwrap();
        for (e, v) in k4.edges().iter().zip(&vals) {
            let crossing = (e[0] <= 2) != (e[1] <= 2);
            assert_eq!(v.clone() != BigInt::zero(), crossing, "edge {e:?}");
            assert!(v.magnitude() <= &BigUint::one());
        }
        assert!(coboundary_apply(&k4, &ints(&[1, 2])).is_err());
    }

    #[test]
    fn coboundary_unit_cochain_k34() {
        // frozen from the transpose-matrix oracle: edges 123 124 134 234
        let h = complete_hypergraph(4, 2).unwrap();
        let mut gamma = vec![BigInt::zero(); 6];
        gamma[0] = BigInt::one();
        let vals = coboundary_apply(&h, &gamma).unwrap();
        assert_eq!(vals, ints(&[1, 1, 0, 0]));
        assert_eq!(vals, boundary_matrix(&h).transpose().mul_vec(&gamma));
    }

    #[test]
    fn sort_sign() {
        assert_eq!(sort_with_sign(&[1, 2, 3]), (vec![1, 2, 3], 1));
        assert_eq!(sort_with_sign(&[2, 1, 3]), (vec![1, 2, 3], -1));
        assert_eq!(sort_with_sign(&[2, 3, 1]), (vec![1, 2, 3], 1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(20, 10), BigUint::from(184_756u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}
