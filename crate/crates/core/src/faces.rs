//! Faces of `Z_H` through sign patterns of coboundaries.
//!
//! A sign pattern assigns `-1`, `0` or `+1` to every edge of `H` (in its
//! ascending orientation). It is *valid* when some cochain `γ` on the
//! `(d-1)`-subsets has `sign((d γ)(e)) = σ(e)` for every edge. Valid
//! patterns ordered by refinement form the face lattice of `Z_H`; proper
//! valid patterns (no zeros) are its vertices.
//!
//! Validity is an exact rational feasibility question. Strict conditions
//! `(dγ)(e) > 0` are replaced by `(dγ)(e) ≥ 1`, which changes nothing because
//! the system is homogeneous in `γ`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::census::{check_budget, ShardSpec};
use crate::complex::{boundary_matrix, complete_hypergraph, sort_with_sign, Hypergraph};
use crate::error::{domain, Result};
use crate::exactalg::{rank, EchelonBasis, LinearSystem, Relation, Solver};
use crate::{IntMatrix, Rational};

/// Sign of a rational as `-1`, `0` or `1`.
fn sign_of(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Signs on the edges of a hypergraph, indexed like its edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignPattern {
    values: Vec<i8>,
}

impl SignPattern {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(-1..=1).contains(*v)) {
            return Err(domain(format!("sign value {v} not in {{-1, 0, 1}}")));
        }
        Ok(SignPattern { values })
    }

    pub fn zero(len: usize) -> Self {
        SignPattern {
            values: vec![0; len],
        }
    }

    /// Parses a string over `+`, `-`, `0`.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                _ => Err(domain(format!("bad sign character {c:?}"))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(|values| SignPattern { values })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, edge: usize) -> i8 {
        self.values[edge]
    }

    /// Value on an ordered vertex tuple: the stored value times the sign of
    /// the permutation sorting the tuple. `None` if the tuple is not an edge.
    pub fn on_tuple(&self, h: &Hypergraph, tuple: &[usize]) -> Option<i8> {
        let (sorted, s) = sort_with_sign(tuple);
        h.edge_index(&sorted).map(|i| self.values[i] * s as i8)
    }

    pub fn is_proper(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    pub fn zero_set(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| self.values[i] == 0)
            .collect()
    }

    /// `self ⪰ other`: agrees with `other` wherever `other` is nonzero.
    pub fn refines(&self, other: &SignPattern) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(&s, &t)| t == 0 || s == t)
    }

    pub fn hamming(&self, other: &SignPattern) -> usize {
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn negated(&self) -> SignPattern {
        SignPattern {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.values {
            f.write_str(match v {
                1 => "+",
                -1 => "-",
                _ => "0",
            })?;
        }
        Ok(())
    }
}

/// The coboundary constraint system of a hypergraph.
///
/// `γ` is restricted to a maximal set of `(d-1)`-subsets whose boundary rows
/// are linearly independent; the image of the coboundary map is unchanged,
/// so no sign pattern is lost, and the solvers see only `rank(∂)` variables.
#[derive(Clone, Debug)]
pub struct CoboundarySystem {
    boundary: IntMatrix,
    free_rows: Vec<usize>,
    // coefficients of (dγ)(e) in the free variables
    edge_forms: Vec<Vec<BigInt>>,
    solver: Solver,
}

impl CoboundarySystem {
    pub fn new(h: &Hypergraph) -> Self {
        Self::with_solver(h, Solver::Auto)
    }

    pub fn with_solver(h: &Hypergraph, solver: Solver) -> Self {
        let boundary = boundary_matrix(h);
        let mut basis = EchelonBasis::new(boundary.cols());
        let free_rows: Vec<usize> = (0..boundary.rows())
            .filter(|&r| basis.insert(boundary.row(r)))
            .collect();
        let edge_forms = (0..boundary.cols())
            .map(|e| {
                free_rows
                    .iter()
                    .map(|&r| boundary[(r, e)].clone())
                    .collect()
            })
            .collect();
        CoboundarySystem {
            boundary,
            free_rows,
            edge_forms,
            solver,
        }
    }

    pub fn boundary(&self) -> &IntMatrix {
        &self.boundary
    }

    pub fn edge_count(&self) -> usize {
        self.edge_forms.len()
    }

    /// `(dγ)(e)` for a reduced witness.
    fn value(&self, edge: usize, x: &[Rational]) -> Rational {
        self.edge_forms[edge]
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .fold(Rational::zero(), |acc, (c, v)| acc + v * c)
    }

    /// Solves for a reduced witness; `None` entries are unconstrained.
    fn solve(&self, partial: &[Option<i8>]) -> Option<Vec<Rational>> {
        let mut sys = LinearSystem::<BigInt>::new(self.free_rows.len());
        for (e, s) in partial.iter().enumerate() {
            match s {
                None => {}
                Some(0) => sys.push_int(&self.edge_forms[e], Relation::Equal, BigInt::zero()),
                Some(s) => {
                    let f: Vec<BigInt> = self.edge_forms[e]
                        .iter()
                        .map(|c| c * BigInt::from(*s))
                        .collect();
                    sys.push_int(&f, Relation::GreaterEq, BigInt::from(1));
                }
            }
        }
        sys.solve(self.solver).into_witness()
    }

    /// Expands a reduced witness to a cochain on all `(d-1)`-subsets.
    fn lift(&self, x: &[Rational]) -> Vec<Rational> {
        let mut gamma = vec![Rational::zero(); self.boundary.rows()];
        for (&r, v) in self.free_rows.iter().zip(x) {
            gamma[r] = v.clone();
        }
        gamma
    }

    fn satisfies(&self, edge: usize, sign: i8, x: &[Rational]) -> bool {
        sign_of(&self.value(edge, x)) == sign
    }
}

/// A witnessing cochain `γ` (indexed like the rows of the boundary matrix)
/// with `sign(dγ) = σ`, or `None` if `σ` is not valid.
pub fn validity_check(h: &Hypergraph, sigma: &SignPattern) -> Result<Option<Vec<Rational>>> {
    validity_check_with(&CoboundarySystem::new(h), sigma)
}

pub fn validity_check_with(
    sys: &CoboundarySystem,
    sigma: &SignPattern,
) -> Result<Option<Vec<Rational>>> {
    if sigma.len() != sys.edge_count() {
        return Err(domain(format!(
            "pattern has {} entries for {} edges",
            sigma.len(),
            sys.edge_count()
        )));
    }
    let partial: Vec<Option<i8>> = sigma.values().iter().map(|&v| Some(v)).collect();
    Ok(sys.solve(&partial).map(|x| sys.lift(&x)))
}

/// Sum of the boundary columns of the positively signed edges.
pub fn vertex_point(boundary: &IntMatrix, sigma: &SignPattern) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); boundary.rows()];
    for (e, &s) in sigma.values().iter().enumerate() {
        if s > 0 {
            for (i, x) in p.iter_mut().enumerate() {
                *x += &boundary[(i, e)];
            }
        }
    }
    p
}

/// Depth-first walk over sign assignments, edge by edge, keeping a witness
/// for the current partial pattern. A child reuses the parent's witness
/// when it already has the right sign on the new edge.
struct PatternWalk<'a> {
    sys: &'a CoboundarySystem,
    choices: &'a [i8],
    shard: ShardSpec,
    partial: Vec<Option<i8>>,
    found: Vec<(SignPattern, Vec<Rational>)>,
}

impl PatternWalk<'_> {
    fn run(&mut self, edge: usize, witness: Vec<Rational>, prefix: u64) {
        let total = self.partial.len();
        let depth = self.shard.prefix_depth();
        if edge == depth.min(total) && !self.shard.owns(prefix << (depth - edge)) {
            return;
        }
        if edge == total {
            let values = self.partial.iter().map(|v| v.expect("assigned")).collect();
            self.found.push((SignPattern { values }, witness));
            return;
        }
        for (k, &s) in self.choices.iter().enumerate() {
            self.partial[edge] = Some(s);
            let next = if self.sys.satisfies(edge, s, &witness) {
                Some(witness.clone())
            } else {
                self.sys.solve(&self.partial)
            };
            if let Some(w) = next {
                let digit = (k as u64).min(1);
                self.run(edge + 1, w, (prefix << 1) | digit);
            }
        }
        self.partial[edge] = None;
    }
}

fn walk(
    sys: &CoboundarySystem,
    choices: &[i8],
    shard: ShardSpec,
) -> Vec<(SignPattern, Vec<Rational>)> {
    let mut w = PatternWalk {
        sys,
        choices,
        shard,
        partial: vec![None; sys.edge_count()],
        found: Vec::new(),
    };
    let start = vec![Rational::zero(); sys.free_rows.len()];
    w.run(0, start, 0);
    w.found
}

/// A vertex of `Z_H`: its proper valid pattern and its lattice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub pattern: SignPattern,
    pub point: Vec<BigInt>,
}

/// All vertices, patterns in lexicographic order (`-` before `+`).
pub fn enumerate_vertices(h: &Hypergraph, budget: u64) -> Result<Vec<Vertex>> {
    enumerate_vertices_shard(h, budget, ShardSpec::whole())
}

/// The vertices whose first `⌈log₂ m⌉` signs (`+` read as 1) fall in the shard.
pub fn enumerate_vertices_shard(
    h: &Hypergraph,
    budget: u64,
    shard: ShardSpec,
) -> Result<Vec<Vertex>> {
    check_budget(
        "vertex enumeration",
        BigUint::from(2u8).pow(h.edge_count() as u32),
        budget,
    )?;
    let sys = CoboundarySystem::new(h);
    Ok(walk(&sys, &[-1, 1], shard)
        .into_iter()
        .map(|(pattern, _)| Vertex {
            point: vertex_point(sys.boundary(), &pattern),
            pattern,
        })
        .collect())
}

/// `true` iff the two vertices span an edge of `Z_H`, i.e. their patterns
/// differ on exactly one edge. Both patterns must be proper and valid.
pub fn vertex_adjacency(h: &Hypergraph, a: &SignPattern, b: &SignPattern) -> Result<bool> {
    let sys = CoboundarySystem::new(h);
    for p in [a, b] {
        if !p.is_proper() {
            return Err(domain(format!("pattern {p} is not proper")));
        }
        if validity_check_with(&sys, p)?.is_none() {
            return Err(domain(format!("pattern {p} is not valid")));
        }
    }
    Ok(a.hamming(b) == 1)
}

/// A face of `Z_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceDescriptor {
    pub pattern: SignPattern,
    /// Rank of the boundary columns on the zero set of the pattern.
    pub dimension: usize,
    /// Cochain on all `(d-1)`-subsets whose coboundary has the pattern's signs.
    pub witness: Vec<Rational>,
}

/// All faces of `Z_H`, including `Z_H` itself (the all-zero pattern).
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<FaceDescriptor>,
    /// Dimension of `Z_H`, `rank(boundary_matrix(H))`.
    pub dimension: usize,
}

impl FaceLattice {
    /// Face counts by dimension, `0..=dimension`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dimension + 1];
        for face in &self.faces {
            f[face.dimension] += 1;
        }
        f
    }

    pub fn of_dimension(&self, k: usize) -> impl Iterator<Item = &FaceDescriptor> {
        self.faces.iter().filter(move |f| f.dimension == k)
    }

    /// Indices (into `faces`) of the vertices lying on `faces[i]`.
    pub fn vertices_of(&self, i: usize) -> Vec<usize> {
        let target = &self.faces[i].pattern;
        (0..self.faces.len())
            .filter(|&j| self.faces[j].dimension == 0 && self.faces[j].pattern.refines(target))
            .collect()
    }

    pub fn position(&self, pattern: &SignPattern) -> Option<usize> {
        self.faces.iter().position(|f| &f.pattern == pattern)
    }
}

/// Enumerates every valid pattern; refuses when `3^|E|` exceeds `budget`.
pub fn face_lattice(h: &Hypergraph, budget: u64) -> Result<FaceLattice> {
    check_budget(
        "face lattice",
        BigUint::from(3u8).pow(h.edge_count() as u32),
        budget,
    )?;
    let sys = CoboundarySystem::new(h);
    let dimension = rank(sys.boundary());
    let faces = walk(&sys, &[-1, 0, 1], ShardSpec::whole())
        .into_iter()
        .map(|(pattern, x)| {
            let zeros = pattern.zero_set();
            let dimension = rank(&sys.boundary().select_columns(&zeros));
            FaceDescriptor {
                witness: sys.lift(&x),
                pattern,
                dimension,
            }
        })
        .collect();
    Ok(FaceLattice { faces, dimension })
}

/// Faces of codimension one.
pub fn facets(h: &Hypergraph, budget: u64) -> Result<Vec<FaceDescriptor>> {
    let lattice = face_lattice(h, budget)?;
    let Some(k) = lattice.dimension.checked_sub(1) else {
        return Ok(Vec::new());
    };
    Ok(lattice
        .faces
        .into_iter()
        .filter(|f| f.dimension == k)
        .collect())
}

fn check_partition(n: usize, d: usize, parts: &[Vec<usize>]) -> Result<Vec<usize>> {
    if parts.len() != d + 1 {
        return Err(domain(format!(
            "expected {} parts, got {}",
            d + 1,
            parts.len()
        )));
    }
    let mut part_of = vec![usize::MAX; n + 1];
    for (k, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(domain(format!("part {k} is empty")));
        }
        for &v in part {
            if v == 0 || v > n {
                return Err(domain(format!("vertex {v} outside 1..={n}")));
            }
            if part_of[v] != usize::MAX {
                return Err(domain(format!("vertex {v} appears twice")));
            }
            part_of[v] = k;
        }
    }
    if let Some(v) = (1..=n).find(|&v| part_of[v] == usize::MAX) {
        return Err(domain(format!("vertex {v} is in no part")));
    }
    Ok(part_of)
}

/// Pattern of an ordered partition of `1..=n` into `d+1` parts, on the edges
/// of `H`: a transversal edge gets the sign of the permutation that sorts
/// its vertices by part index, every other edge gets 0.
pub fn partition_pattern_on(h: &Hypergraph, parts: &[Vec<usize>]) -> Result<SignPattern> {
    let part_of = check_partition(h.n(), h.d(), parts)?;
    let values = h
        .edges()
        .iter()
        .map(|e| {
            let labels: Vec<usize> = e.iter().map(|&v| part_of[v]).collect();
            let mut seen = labels.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() == labels.len() {
                sort_with_sign(&labels).1 as i8
            } else {
                0
            }
        })
        .collect();
    Ok(SignPattern { values })
}

/// [`partition_pattern_on`] for the complete hypergraph `K^{(d+1)}_n`.
pub fn partition_pattern(n: usize, d: usize, parts: &[Vec<usize>]) -> Result<SignPattern> {
    partition_pattern_on(&complete_hypergraph(n, d)?, parts)
}

/// All ordered partitions of `1..=n` into `k` nonempty parts.
pub fn ordered_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut labels = vec![0usize; n];
    loop {
        let mut parts = vec![Vec::new(); k];
        for (v, &l) in labels.iter().enumerate() {
            parts[l].push(v + 1);
        }
        if parts.iter().all(|p| !p.is_empty()) {
            out.push(parts);
        }
        // odometer, last vertex fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            labels[i] += 1;
            if labels[i] < k {
                break;
            }
            labels[i] = 0;
        }
    }
}

/// `true` when `sigma` is the pattern of some ordered partition into `d+1` parts.
pub fn is_partition_induced(h: &Hypergraph, sigma: &SignPattern) -> bool {
    ordered_partitions(h.n(), h.d() + 1)
        .iter()
        .any(|p| partition_pattern_on(h, p).is_ok_and(|q| &q == sigma))
}

/// An orientation of every edge of `K^{(d+1)}_n`, relative to ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypertournament {
    n: usize,
    d: usize,
    orientation: Vec<i8>,
}

impl Hypertournament {
    pub fn new(n: usize, d: usize, orientation: Vec<i8>) -> Result<Self> {
        let k = complete_hypergraph(n, d)?;
        if orientation.len() != k.edge_count() {
            return Err(domain(format!(
                "orientation has {} entries, K^({})_{} has {} edges",
                orientation.len(),
                d + 1,
                n,
                k.edge_count()
            )));
        }
        if orientation.iter().any(|&s| s != 1 && s != -1) {
            return Err(domain("orientation entries must be +1 or -1"));
        }
        Ok(Hypertournament { n, d, orientation })
    }

    /// The orientation numbered `bits` (bit `i` set means edge `i` is negated).
    pub fn from_bits(n: usize, d: usize, bits: u64) -> Result<Self> {
        let m = complete_hypergraph(n, d)?.edge_count();
        let orientation = (0..m)
            .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
            .collect();
        Self::new(n, d, orientation)
    }

    /// Orients each edge by the position of its vertices in `order`
    /// (a permutation of `1..=n`).
    pub fn from_vertex_order(n: usize, d: usize, order: &[usize]) -> Result<Self> {
        let mut rank_of = vec![0; n + 1];
        for (r, &v) in order.iter().enumerate() {
            rank_of[v] = r;
        }
        let k = complete_hypergraph(n, d)?;
        let orientation = k
            .edges()
            .iter()
            .map(|e| {
                let ranks: Vec<usize> = e.iter().map(|&v| rank_of[v]).collect();
                sort_with_sign(&ranks).1 as i8
            })
            .collect();
        Self::new(n, d, orientation)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn to_sign_pattern(&self) -> SignPattern {
        SignPattern {
            values: self.orientation.clone(),
        }
    }
}

/// `true` iff the open cone of the oriented edges misses every nonzero
/// `d`-cycle, i.e. iff its proper pattern is valid.
pub fn is_acyclic_hypertournament(t: &Hypertournament) -> bool {
    let k = complete_hypergraph(t.n, t.d).expect("validated on construction");
    validity_check(&k, &t.to_sign_pattern())
        .expect("lengths match")
        .is_some()
}
