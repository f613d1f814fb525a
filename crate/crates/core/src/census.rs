//! Spanning hyperforest and hypertree enumeration, and everything assembled
//! from it: Ehrhart polynomials, volumes, lattice-point counts and the
//! torsion census of complete hypergraphs.
//!
//! Enumeration walks the binary decision tree "exclude / include edge `i`"
//! for `i = 0, 1, …`, exclude first, so subsets come out with their
//! characteristic vectors in lexicographic order (edge 0 most significant).
//! An include branch is only taken when the new boundary column is
//! independent of the ones already chosen, tracked by a fraction-free
//! [`EchelonBasis`] cloned down the tree.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::complex::{binomial, boundary_matrix, complete_hypergraph, cycle_space_dim, Hypergraph};
use crate::error::{domain, Error, Result};
use crate::exactalg::{rank, saturation_index, EchelonBasis};
use crate::homology::SubcomplexSelection;
use crate::IntMatrix;

/// Default cap on the number of candidate subsets an enumeration may face.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Shard `index` of `total`: the subsets whose first `⌈log₂ total⌉`
/// include/exclude decisions, read as a binary number, are `≡ index (mod total)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShardSpec {
    pub index: usize,
    pub total: usize,
}

impl ShardSpec {
    pub fn new(index: usize, total: usize) -> Result<Self> {
        if total == 0 || index >= total {
            return Err(domain(format!("invalid shard {index}/{total}")));
        }
        Ok(ShardSpec { index, total })
    }

    pub fn whole() -> Self {
        ShardSpec { index: 0, total: 1 }
    }

    pub fn prefix_depth(&self) -> usize {
        (usize::BITS - (self.total - 1).leading_zeros()) as usize
    }

    pub(crate) fn owns(&self, prefix: u64) -> bool {
        prefix % self.total as u64 == self.index as u64
    }
}

/// Walks independent column subsets of a matrix.
pub struct IndependentSubsets {
    columns: Vec<Vec<BigInt>>,
    exact_size: Option<usize>,
    shard: ShardSpec,
    stack: Vec<Frame>,
}

struct Frame {
    next: usize,
    chosen: Vec<usize>,
    basis: EchelonBasis<BigInt>,
    prefix: u64,
}

impl IndependentSubsets {
    /// All independent subsets of the columns of `m`; with `exact_size`,
    /// only those of that size (branches that cannot reach it are pruned).
    pub fn new(m: &IntMatrix, exact_size: Option<usize>, shard: ShardSpec) -> Self {
        let columns: Vec<Vec<BigInt>> = (0..m.cols()).map(|j| m.column(j)).collect();
        let root = Frame {
            next: 0,
            chosen: Vec::new(),
            basis: EchelonBasis::new(m.rows()),
            prefix: 0,
        };
        IndependentSubsets {
            columns,
            exact_size,
            shard,
            stack: vec![root],
        }
    }
}

impl Iterator for IndependentSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let total = self.columns.len();
        let depth = self.shard.prefix_depth();
        while let Some(frame) = self.stack.pop() {
            if frame.next == depth.min(total)
                && !self.shard.owns(frame.prefix << (depth - frame.next))
            {
                continue;
            }
            if let Some(k) = self.exact_size {
                if frame.chosen.len() + (total - frame.next) < k {
                    continue;
                }
            }
            if frame.next == total {
                return Some(frame.chosen);
            }
            let i = frame.next;
            let room = self.exact_size.is_none_or(|k| frame.chosen.len() < k);
            if room && frame.basis.is_independent(&self.columns[i]) {
                let mut basis = frame.basis.clone();
                basis.insert(&self.columns[i]);
                let mut chosen = frame.chosen.clone();
                chosen.push(i);
                self.stack.push(Frame {
                    next: i + 1,
                    chosen,
                    basis,
                    prefix: (frame.prefix << 1) | 1,
                });
            }
            self.stack.push(Frame {
                next: i + 1,
                prefix: frame.prefix << 1,
                ..frame
            });
        }
        None
    }
}

/// Every spanning hyperforest of `H` exactly once.
pub fn enumerate_spanning_hyperforests(
    h: &Hypergraph,
) -> impl Iterator<Item = SubcomplexSelection<'_>> + '_ {
    IndependentSubsets::new(&boundary_matrix(h), None, ShardSpec::whole())
        .map(move |s| SubcomplexSelection::new(h, s).expect("indices come from H"))
}

/// Every spanning hypertree of `H` (hyperforests with `binom(n-1, d)` edges).
pub fn enumerate_spanning_hypertrees(
    h: &Hypergraph,
    shard: ShardSpec,
) -> impl Iterator<Item = SubcomplexSelection<'_>> + '_ {
    let r = cycle_space_dim(h.n(), h.d()).expect("valid hypergraph");
    IndependentSubsets::new(&boundary_matrix(h), Some(r), shard)
        .map(move |s| SubcomplexSelection::new(h, s).expect("indices come from H"))
}

/// Upper bound on the subsets a hyperforest walk can visit:
/// `Σ_{k ≤ r} binom(|E|, k)` with `r = binom(n-1, d)`.
pub fn hyperforest_bound(h: &Hypergraph) -> BigUint {
    let r = cycle_space_dim(h.n(), h.d()).expect("valid hypergraph");
    (0..=r.min(h.edge_count()))
        .map(|k| binomial(h.edge_count(), k))
        .sum()
}

/// `binom(|E|, binom(n-1, d))`, the candidate count of a hypertree walk.
pub fn hypertree_bound(h: &Hypergraph) -> BigUint {
    let r = cycle_space_dim(h.n(), h.d()).expect("valid hypergraph");
    binomial(h.edge_count(), r)
}

/// Fails with [`Error::Budget`] when `bound` exceeds `budget`.
pub fn check_budget(what: &str, bound: BigUint, budget: u64) -> Result<()> {
    if bound > BigUint::from(budget) {
        return Err(Error::Budget {
            what: what.to_string(),
            bound,
            budget,
        });
    }
    Ok(())
}

/// Ehrhart polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EhrhartPolynomial {
    pub coefficients: Vec<BigInt>,
}

impl EhrhartPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        EhrhartPolynomial { coefficients }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coefficients.get(k).cloned().unwrap_or_default()
    }

    pub fn evaluate(&self, t: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Value at `t = 1`.
    pub fn coefficient_sum(&self) -> BigInt {
        self.coefficients.iter().sum()
    }
}

impl fmt::Display for EhrhartPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 if c.is_one() => "t".to_string(),
                1 => format!("{c}t"),
                _ if c.is_one() => format!("t^{k}"),
                _ => format!("{c}t^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `L(Z_H, t) = Σ_F |H̃_{d-1}(F; ℤ)_tors| t^{|E(F)|}` over spanning hyperforests.
pub fn ehrhart(h: &Hypergraph) -> EhrhartPolynomial {
    let b = boundary_matrix(h);
    let mut coeffs: Vec<BigInt> = Vec::new();
    for s in IndependentSubsets::new(&b, None, ShardSpec::whole()) {
        let k = s.len();
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        coeffs[k] += saturation_index(&b.select_columns(&s));
    }
    EhrhartPolynomial::new(coeffs)
}

/// Normalized volume of `Z_H`: the sum of torsion orders over spanning
/// hypertrees, which is the `t^{binom(n-1,d)}` coefficient of [`ehrhart`].
/// Zero when `H` has no spanning hypertree.
pub fn volume(h: &Hypergraph) -> BigInt {
    hypertree_census(h, ShardSpec::whole()).weighted_volume
}

/// Number of lattice points of `Z_H`: the Ehrhart polynomial at `t = 1`.
pub fn lattice_point_count(h: &Hypergraph) -> BigInt {
    let b = boundary_matrix(h);
    IndependentSubsets::new(&b, None, ShardSpec::whole())
        .map(|s| saturation_index(&b.select_columns(&s)))
        .sum()
}

/// Torsion statistics over spanning hypertrees.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusReport {
    pub hypertree_count: u64,
    /// `Σ_T |H̃_{d-1}(T; ℤ)|`
    pub weighted_volume: BigInt,
    /// `Σ_T |H̃_{d-1}(T; ℤ)|²`
    pub kalai_sum: BigInt,
    pub torsion_histogram: BTreeMap<BigInt, u64>,
}

impl CensusReport {
    pub fn record(&mut self, torsion: BigInt) {
        self.hypertree_count += 1;
        self.weighted_volume += &torsion;
        self.kalai_sum += &torsion * &torsion;
        *self.torsion_histogram.entry(torsion).or_default() += 1;
    }

    /// Component-wise sum; shard reports merge in any order.
    pub fn merge(mut self, other: CensusReport) -> CensusReport {
        self.hypertree_count += other.hypertree_count;
        self.weighted_volume += other.weighted_volume;
        self.kalai_sum += other.kalai_sum;
        for (k, v) in other.torsion_histogram {
            *self.torsion_histogram.entry(k).or_default() += v;
        }
        self
    }

    /// Totals agree with the histogram.
    pub fn is_consistent(&self) -> bool {
        let count: u64 = self.torsion_histogram.values().sum();
        let weighted: BigInt = self
            .torsion_histogram
            .iter()
            .map(|(k, &v)| k * BigInt::from(v))
            .sum();
        let squares: BigInt = self
            .torsion_histogram
            .iter()
            .map(|(k, &v)| k * k * BigInt::from(v))
            .sum();
        count == self.hypertree_count
            && weighted == self.weighted_volume
            && squares == self.kalai_sum
    }
}

/// Census over the spanning hypertrees of an arbitrary `H` in one shard.
pub fn hypertree_census(h: &Hypergraph, shard: ShardSpec) -> CensusReport {
    let b = boundary_matrix(h);
    let r = cycle_space_dim(h.n(), h.d()).expect("valid hypergraph");
    let mut report = CensusReport::default();
    for s in IndependentSubsets::new(&b, Some(r), shard) {
        report.record(saturation_index(&b.select_columns(&s)));
    }
    report
}

/// Hypertree census of the complete hypergraph `K^{(d+1)}_n`, refusing to
/// start when `binom(binom(n, d+1), binom(n-1, d))` exceeds `budget`.
pub fn kalai_census(n: usize, d: usize, budget: u64) -> Result<CensusReport> {
    kalai_census_shard(n, d, budget, ShardSpec::whole())
}

pub fn kalai_census_shard(
    n: usize,
    d: usize,
    budget: u64,
    shard: ShardSpec,
) -> Result<CensusReport> {
    let h = complete_hypergraph(n, d)?;
    check_budget("hypertree census", hypertree_bound(&h), budget)?;
    Ok(hypertree_census(&h, shard))
}

/// Runs `shards` shards of [`hypertree_census`] on the rayon pool and merges them.
pub fn hypertree_census_parallel(h: &Hypergraph, shards: usize) -> CensusReport {
    let shards = shards.max(1);
    (0..shards)
        .into_par_iter()
        .map(|i| {
            hypertree_census(
                h,
                ShardSpec {
                    index: i,
                    total: shards,
                },
            )
        })
        .reduce(CensusReport::default, CensusReport::merge)
}

pub fn kalai_census_parallel(
    n: usize,
    d: usize,
    budget: u64,
    shards: usize,
) -> Result<CensusReport> {
    let h = complete_hypergraph(n, d)?;
    check_budget("hypertree census", hypertree_bound(&h), budget)?;
    Ok(hypertree_census_parallel(&h, shards))
}

/// `n^{binom(n-2, d)}`, the closed form the Kalai sum must match.
pub fn kalai_formula(n: usize, d: usize) -> BigInt {
    let e = binomial(n - 2, d).to_u32().expect("exponent fits u32");
    BigInt::from(n).pow(e)
}

/// Volumes of `A_{n,d}` and of its dual `A_{n,n-d-2}`.
pub fn duality_volume_check(n: usize, d: usize, budget: u64) -> Result<(BigInt, BigInt)> {
    if n < d + 3 {
        return Err(domain(format!(
            "duality needs n >= d + 3, got n = {n}, d = {d}"
        )));
    }
    let primal = kalai_census(n, d, budget)?;
    let dual = kalai_census(n, n - d - 2, budget)?;
    Ok((primal.weighted_volume, dual.weighted_volume))
}

/// Rank of `boundary_matrix(H)`: the dimension of `Z_H`.
pub fn zonotope_dimension(h: &Hypergraph) -> usize {
    rank(&boundary_matrix(h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> EhrhartPolynomial {
        EhrhartPolynomial::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn shard_prefix_depth() {
        assert_eq!(ShardSpec::whole().prefix_depth(), 0);
        assert_eq!(ShardSpec::new(0, 2).unwrap().prefix_depth(), 1);
        assert_eq!(ShardSpec::new(2, 3).unwrap().prefix_depth(), 2);
        assert_eq!(ShardSpec::new(0, 4).unwrap().prefix_depth(), 2);
        assert_eq!(ShardSpec::new(0, 5).unwrap().prefix_depth(), 3);
        assert!(ShardSpec::new(3, 3).is_err());
        assert!(ShardSpec::new(0, 0).is_err());
    }

    #[test]
    fn forest_counts() {
        let k34 = complete_hypergraph(4, 2).unwrap();
        assert_eq!(enumerate_spanning_hyperforests(&k34).count(), 15);
        let k3 = complete_hypergraph(3, 1).unwrap();
        assert_eq!(enumerate_spanning_hyperforests(&k3).count(), 7);
        let empty = Hypergraph::new(4, 2, vec![]).unwrap();
        let all: Vec<_> = enumerate_spanning_hyperforests(&empty).collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn enumeration_order_is_lexicographic_in_characteristic_vector() {
        let k3 = complete_hypergraph(3, 1).unwrap();
        let got: Vec<Vec<usize>> = enumerate_spanning_hyperforests(&k3)
            .map(|s| s.chosen().to_vec())
            .collect();
        let want: Vec<Vec<usize>> = vec![
            vec![],
            vec![2],
            vec![1],
            vec![1, 2],
            vec![0],
            vec![0, 2],
            vec![0, 1],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn ehrhart_examples() {
        assert_eq!(
            ehrhart(&complete_hypergraph(3, 1).unwrap()),
            poly(&[1, 3, 3])
        );
        assert_eq!(
            ehrhart(&complete_hypergraph(4, 2).unwrap()),
            poly(&[1, 4, 6, 4])
        );
        let seg = Hypergraph::new(4, 2, vec![vec![1, 2, 4]]).unwrap();
        assert_eq!(ehrhart(&seg), poly(&[1, 1]));
        assert_eq!(poly(&[1, 4, 6, 4]).to_string(), "4t^3 + 6t^2 + 4t + 1");
        assert_eq!(poly(&[1, 1]).to_string(), "t + 1");
    }

    #[test]
    fn volumes_and_points() {
        for (n, v) in [(3, 3), (4, 16), (5, 125)] {
            assert_eq!(volume(&complete_hypergraph(n, 1).unwrap()), BigInt::from(v));
        }
        assert_eq!(volume(&complete_hypergraph(4, 2).unwrap()), BigInt::from(4));
        let sparse = Hypergraph::new(5, 2, vec![vec![1, 2, 3], vec![2, 3, 4]]).unwrap();
        assert_eq!(volume(&sparse), BigInt::zero());
        assert_eq!(
            lattice_point_count(&complete_hypergraph(3, 1).unwrap()),
            BigInt::from(7)
        );
        assert_eq!(
            lattice_point_count(&complete_hypergraph(4, 2).unwrap()),
            BigInt::from(15)
        );
        let seg = Hypergraph::new(3, 1, vec![vec![1, 2]]).unwrap();
        assert_eq!(lattice_point_count(&seg), BigInt::from(2));
    }

    #[test]
    fn small_censuses() {
        let r = kalai_census(4, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.hypertree_count, 4);
        assert_eq!(r.weighted_volume, BigInt::from(4));
        assert_eq!(r.kalai_sum, BigInt::from(4));
        assert!(r.is_consistent());
        let r = kalai_census(5, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.kalai_sum, kalai_formula(5, 2));
        assert_eq!(r.kalai_sum, BigInt::from(125));
    }

    #[test]
    fn budget_is_enforced() {
        match kalai_census(7, 2, DEFAULT_BUDGET) {
            Err(Error::Budget { bound, .. }) => assert_eq!(bound, binomial(35, 15)),
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn shards_merge_to_whole() {
        let whole = kalai_census(5, 2, DEFAULT_BUDGET).unwrap();
        for m in [2, 3, 5, 8] {
            let merged = (0..m)
                .map(|i| {
                    kalai_census_shard(5, 2, DEFAULT_BUDGET, ShardSpec::new(i, m).unwrap()).unwrap()
                })
                .fold(CensusReport::default(), CensusReport::merge);
            assert_eq!(merged, whole, "m = {m}");
        }
        assert_eq!(
            kalai_census_parallel(5, 2, DEFAULT_BUDGET, 16).unwrap(),
            whole
        );
    }

    #[test]
    fn duality_examples() {
        assert_eq!(
            duality_volume_check(5, 1, DEFAULT_BUDGET).unwrap(),
            (BigInt::from(125), BigInt::from(125))
        );
        assert!(duality_volume_check(4, 2, DEFAULT_BUDGET).is_err());
        let (a, b) = duality_volume_check(4, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!((a.clone(), b), (BigInt::from(16), BigInt::from(16)));
    }
}
