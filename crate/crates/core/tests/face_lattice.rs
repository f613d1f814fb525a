//! Combinatorial consistency of the face lattice and the vertex set.

use std::collections::{BTreeMap, BTreeSet};

use acyclo_core::complex::complete_hypergraph;
use acyclo_core::exactalg::rank;
use acyclo_core::faces::{
    enumerate_vertices, face_lattice, is_acyclic_hypertournament, vertex_adjacency, FaceLattice,
};
use acyclo_core::oracle::signpattern_bruteforce;
use acyclo_core::{BigInt, Hypergraph, Hypertournament, IntMatrix, SignPattern};

const BUDGET: u64 = 1_000_000;

fn lattice(n: usize, d: usize) -> (Hypergraph, FaceLattice) {
    let h = complete_hypergraph(n, d).unwrap();
    let l = face_lattice(&h, BUDGET).unwrap();
    (h, l)
}

#[test]
fn refinement_is_containment() {
    for (n, d) in [(4, 2), (4, 1), (3, 1)] {
        let (_, l) = lattice(n, d);
        let verts: Vec<BTreeSet<usize>> = (0..l.faces.len())
            .map(|i| l.vertices_of(i).into_iter().collect())
            .collect();
        for (i, f) in l.faces.iter().enumerate() {
            assert!(!verts[i].is_empty(), "every face has a vertex");
            for (j, g) in l.faces.iter().enumerate() {
                assert_eq!(
                    f.pattern.refines(&g.pattern),
                    verts[i].is_subset(&verts[j]),
                    "{} vs {}",
                    f.pattern,
                    g.pattern
                );
            }
        }
    }
}

#[test]
fn face_dimension_is_affine_hull_dimension() {
    for (n, d) in [(4, 2), (4, 1), (5, 1)] {
        let (h, l) = lattice(n, d);
        let points: BTreeMap<SignPattern, Vec<BigInt>> = enumerate_vertices(&h, BUDGET)
            .unwrap()
            .into_iter()
            .map(|v| (v.pattern, v.point))
            .collect();
        for (i, f) in l.faces.iter().enumerate() {
            let vs: Vec<&Vec<BigInt>> = l
                .vertices_of(i)
                .into_iter()
                .map(|j| &points[&l.faces[j].pattern])
                .collect();
            let diffs: Vec<Vec<BigInt>> = vs[1..]
                .iter()
                .map(|p| p.iter().zip(vs[0]).map(|(a, b)| a - b).collect())
                .collect();
            let hull = if diffs.is_empty() {
                0
            } else {
                rank(&IntMatrix::from_rows(&diffs))
            };
            assert_eq!(hull, f.dimension, "face {}", f.pattern);
        }
        let whole = l.position(&SignPattern::zero(h.edge_count())).unwrap();
        assert_eq!(l.faces[whole].dimension, l.dimension);
    }
}

#[test]
fn edges_join_vertices_differing_in_one_sign() {
    let (h, l) = lattice(4, 2);
    let vertices: Vec<&SignPattern> = l.of_dimension(0).map(|f| &f.pattern).collect();
    let mut from_lattice = BTreeSet::new();
    for (i, f) in l.faces.iter().enumerate() {
        if f.dimension == 1 {
            let ends = l.vertices_of(i);
            assert_eq!(ends.len(), 2, "an edge has two endpoints");
            from_lattice.insert((
                l.faces[ends[0]].pattern.clone(),
                l.faces[ends[1]].pattern.clone(),
            ));
        }
    }
    let mut from_signs = BTreeSet::new();
    for (a, pa) in vertices.iter().enumerate() {
        for pb in &vertices[a + 1..] {
            if vertex_adjacency(&h, pa, pb).unwrap() {
                from_signs.insert(((*pa).clone(), (*pb).clone()));
            }
        }
    }
    assert_eq!(from_lattice, from_signs);
    assert_eq!(from_signs.len(), 24);
}

#[test]
fn rhombic_dodecahedron() {
    let (_, l) = lattice(4, 2);
    assert_eq!(l.dimension, 3);
    assert_eq!(l.f_vector(), vec![14, 24, 12, 1]);
    for (i, f) in l.faces.iter().enumerate() {
        if f.dimension == 2 {
            assert_eq!(
                l.vertices_of(i).len(),
                4,
                "facet {} is a rhombus",
                f.pattern
            );
        }
    }
}

#[test]
fn permutohedron_vertices_are_permutations() {
    // adding Σ_{i<j} e_i turns the sum of positive edge columns into the
    // in-degree vector of the tournament, a permutation of 0..n-1
    for n in 3..=5 {
        let h = complete_hypergraph(n, 1).unwrap();
        let vs = enumerate_vertices(&h, BUDGET).unwrap();
        let factorial: usize = (1..=n).product();
        assert_eq!(vs.len(), factorial);
        let mut seen = BTreeSet::new();
        for v in &vs {
            let mut p: Vec<i64> = v.point.iter().map(|x| i64::try_from(x).unwrap()).collect();
            for e in h.edges() {
                p[e[0] - 1] += 1;
            }
            let mut sorted = p.clone();
            sorted.sort();
            assert_eq!(sorted, (0..n as i64).collect::<Vec<_>>());
            seen.insert(p);
        }
        assert_eq!(seen.len(), factorial);
    }
}

#[test]
fn vertices_biject_with_acyclic_hypertournaments() {
    for (n, d) in [(3, 1), (4, 1), (5, 1), (4, 2)] {
        let h = complete_hypergraph(n, d).unwrap();
        let vertices: BTreeSet<SignPattern> = enumerate_vertices(&h, BUDGET)
            .unwrap()
            .into_iter()
            .map(|v| v.pattern)
            .collect();
        let brute = signpattern_bruteforce(&h).unwrap();
        let m = h.edge_count();
        let acyclic: BTreeSet<SignPattern> = (0..1u64 << m)
            .map(|bits| Hypertournament::from_bits(n, d, bits).unwrap())
            .filter(is_acyclic_hypertournament)
            .map(|t| t.to_sign_pattern())
            .collect();
        assert_eq!(vertices, brute, "({n},{d})");
        assert_eq!(vertices, acyclic, "({n},{d})");
        if d == 1 {
            assert_eq!(vertices.len(), (1..=n).product::<usize>());
        }
    }
}

#[test]
fn transitive_tournaments_are_acyclic() {
    let order = [3, 1, 4, 2, 5];
    for d in 1..=3 {
        let t = Hypertournament::from_vertex_order(5, d, &order).unwrap();
        assert!(is_acyclic_hypertournament(&t), "d = {d}");
    }
}
