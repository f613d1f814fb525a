//! Algebraic invariants of the exact kernels and the chain complex.

use acyclo_core::complex::{
    boundary_matrix, boundary_operator, complete_hypergraph, cycle_space_dim, oriented_boundary,
    sort_with_sign,
};
use acyclo_core::exactalg::{invariant_factors, nullspace, rank, saturation_index, snf, Matrix};
use acyclo_core::homology::torsion_order;
use acyclo_core::oracle::torsion_rowreduce;
use acyclo_core::{BigInt, IntMatrix, SubcomplexSelection};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn int_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-9i64..=9, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

/// Mostly-sparse matrices, where rank deficiency and torsion actually occur.
fn sparse_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 1 => -4i64..=4], r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn any_matrix() -> impl Strategy<Value = IntMatrix> {
    prop_oneof![int_matrix(8), sparse_matrix(8)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn snf_reconstructs_and_divides(a in any_matrix()) {
        let s = snf(&a);
        prop_assert!(s.left_transform.is_unimodular());
        prop_assert!(s.right_transform.is_unimodular());
        let d = &(&s.left_transform * &a) * &s.right_transform;
        prop_assert_eq!(&d, &s.diagonal());
        let f = &s.invariant_factors;
        let r = s.rank();
        prop_assert_eq!(r, rank(&a));
        prop_assert!(f[..r].iter().all(|x| *x > BigInt::zero()));
        prop_assert!(f[r..].iter().all(|x| x.is_zero()));
        for w in f[..r].windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert_eq!(&invariant_factors(&a), f);
    }

    #[test]
    fn saturation_invariant_under_column_moves(a in any_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = a.cols();
        let mut perm: Vec<usize> = (0..c).collect();
        for i in (1..c).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let mut b = a.select_columns(&perm);
        let j = rng.gen_range(0..c);
        for i in 0..b.rows() {
            b[(i, j)] = -b[(i, j)].clone();
        }
        prop_assert_eq!(saturation_index(&a), saturation_index(&b));
    }

    #[test]
    fn nullspace_is_kernel_basis(a in any_matrix()) {
        let ns = nullspace(&a);
        prop_assert_eq!(ns.len(), a.cols() - rank(&a));
        for v in &ns {
            prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            let first = v.iter().find(|x| !x.is_zero()).unwrap();
            prop_assert!(*first > BigInt::zero());
        }
        if !ns.is_empty() {
            prop_assert_eq!(rank(&IntMatrix::from_rows(&ns)), ns.len());
        }
    }

    #[test]
    fn oriented_boundary_is_antisymmetric(n in 2usize..8, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(2..=n);
        let mut tuple: Vec<usize> = sample(&mut rng, n, k).into_iter().map(|v| v + 1).collect();
        tuple.sort();
        let ascending = oriented_boundary(&tuple);
        for i in (1..k).rev() {
            tuple.swap(i, rng.gen_range(0..=i));
        }
        let (_, s) = sort_with_sign(&tuple);
        let permuted = oriented_boundary(&tuple);
        let mut a = ascending.clone();
        let mut p: Vec<(Vec<usize>, i32)> = permuted.into_iter().map(|(f, c)| (f, c * s)).collect();
        a.sort();
        p.sort();
        prop_assert_eq!(a, p);
    }
}

#[test]
fn boundary_of_boundary_vanishes() {
    for n in 1..=7 {
        for k in 1..=3.min(n - 1) {
            let outer = boundary_operator(n, k - 1);
            let inner = boundary_operator(n, k);
            assert!((&outer * &inner).is_zero(), "n = {n}, k = {k}");
        }
    }
}

#[test]
fn complete_boundary_rank_is_cycle_dimension() {
    for n in 2..=7 {
        for d in 1..n.min(4) {
            let h = complete_hypergraph(n, d).unwrap();
            assert_eq!(
                rank(&boundary_matrix(&h)),
                cycle_space_dim(n, d).unwrap(),
                "n = {n}, d = {d}"
            );
        }
    }
}

#[test]
fn generic_scalar_agrees_with_bigint() {
    let rows = [[2i64, 4, 4], [-6, 6, 12], [10, -4, -16]];
    let small: Matrix<i64> = Matrix::from_i64_rows(&rows);
    let big = IntMatrix::from_i64_rows(&rows);
    let f_small: Vec<BigInt> = invariant_factors(&small)
        .into_iter()
        .map(BigInt::from)
        .collect();
    assert_eq!(f_small, invariant_factors(&big));
    assert_eq!(
        f_small,
        vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
    );
}

fn rp2() -> acyclo_core::Hypergraph {
    let faces = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    acyclo_core::Hypergraph::new(6, 2, faces.iter().map(|f| f.to_vec()).collect()).unwrap()
}

#[test]
fn projective_plane_has_order_two_torsion() {
    let h = rp2();
    let b = boundary_matrix(&h);
    let mut expected = vec![BigInt::one(); 9];
    expected.push(BigInt::from(2));
    assert_eq!(invariant_factors(&b), expected);
    let all = SubcomplexSelection::all(&h);
    assert_eq!(torsion_order(&all), BigInt::from(2));
    assert_eq!(torsion_rowreduce(&all), BigInt::from(2));
}

#[test]
fn torsion_agrees_with_row_reduction_oracle() {
    // 200 uniform subsets of K^(3)_6, which are almost always torsion-free,
    // plus 20 relabelled copies of the projective plane, which are not
    let h = complete_hypergraph(6, 2).unwrap();
    let plane = rp2();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut selections: Vec<Vec<usize>> = (0..200)
        .map(|_| {
            let k = rng.gen_range(0..=h.edge_count());
            sample(&mut rng, h.edge_count(), k).into_vec()
        })
        .collect();
    for _ in 0..20 {
        let perm: Vec<usize> = sample(&mut rng, 6, 6).into_iter().map(|v| v + 1).collect();
        selections.push(
            plane
                .edges()
                .iter()
                .map(|e| {
                    let image: Vec<usize> = e.iter().map(|&v| perm[v - 1]).collect();
                    h.edge_index(&image).unwrap()
                })
                .collect(),
        );
    }
    let mut nontrivial = 0;
    for chosen in selections {
        let s = SubcomplexSelection::new(&h, chosen).unwrap();
        let t = torsion_order(&s);
        assert_eq!(t, torsion_rowreduce(&s), "{:?}", s.chosen());
        if t > BigInt::one() {
            nontrivial += 1;
        }
    }
    assert!(nontrivial >= 20);
}
