//! Brute-force cross-checks.
//!
//! Nothing in here calls into the elimination, Smith form, enumeration or
//! feasibility code of the other modules; each oracle rebuilds what it
//! needs (boundary columns, determinants, lattice reductions, polytope
//! membership) with a different algorithm. Only the data types are shared,
//! plus `faces::validity_check`, which the sign-pattern oracle is meant to
//! drive exhaustively.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::census::ehrhart;
use crate::complex::Hypergraph;
use crate::error::{domain, Error, Result};
use crate::faces::{validity_check, SignPattern};
use crate::homology::SubcomplexSelection;

/// Default generator cap for [`lattice_points_direct`].
pub const DEFAULT_GENERATOR_CAP: usize = 8;
/// Edge cap for [`signpattern_bruteforce`].
pub const BRUTEFORCE_EDGE_CAP: usize = 12;

/// One theorem-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub quantity: String,
    pub theorem_value: String,
    pub oracle_value: String,
    pub agreement: bool,
}

impl OracleReport {
    pub fn compare(
        quantity: impl Into<String>,
        theorem: impl ToString,
        oracle: impl ToString,
    ) -> Self {
        let theorem_value = theorem.to_string();
        let oracle_value = oracle.to_string();
        OracleReport {
            quantity: quantity.into(),
            agreement: theorem_value == oracle_value,
            theorem_value,
            oracle_value,
        }
    }
}

// ---------------------------------------------------------------------------
// private helpers, deliberately separate from complex/exactalg

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    // odometer over ascending k-tuples of 1..=n
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Boundary vector of an ascending simplex over the ascending faces of
/// size `len - 1`: omitting the vertex at position `i` contributes `(-1)^i`.
fn boundary_vector(simplex: &[usize], faces: &[Vec<usize>]) -> Vec<i64> {
    let mut v = vec![0i64; faces.len()];
    for i in 0..simplex.len() {
        let mut face = simplex.to_vec();
        face.remove(i);
        let pos = faces.binary_search(&face).expect("face is listed");
        v[pos] += if i % 2 == 0 { 1 } else { -1 };
    }
    v
}

fn edge_columns(h: &Hypergraph, edges: &[usize]) -> (usize, Vec<Vec<i64>>) {
    let faces = subsets_of_size(h.n(), h.d());
    let cols = edges
        .iter()
        .map(|&e| boundary_vector(&h.edges()[e], &faces))
        .collect();
    (faces.len(), cols)
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

// ---------------------------------------------------------------------------

/// Spanning-tree count of a graph by the matrix-tree theorem: determinant of
/// the Laplacian with the first row and column deleted.
pub fn kirchhoff_tree_count(g: &Hypergraph) -> Result<BigInt> {
    if g.d() != 1 {
        return Err(domain(format!(
            "Kirchhoff count needs a graph (d = 1), got d = {}",
            g.d()
        )));
    }
    let n = g.n();
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    for e in g.edges() {
        let (a, b) = (e[0] - 1, e[1] - 1);
        lap[a][a] += 1;
        lap[b][b] += 1;
        lap[a][b] -= 1;
        lap[b][a] -= 1;
    }
    let minor: Vec<Vec<BigInt>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
    Ok(bareiss_det(minor))
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Torsion of `C_{d-1} / B_{d-1}(F)` by Euclidean row reduction to echelon
/// form followed by Euclidean column reduction to a triangular block; the
/// torsion order is the product of the diagonal.
pub fn torsion_rowreduce(f: &SubcomplexSelection<'_>) -> BigInt {
    let (rows, cols) = edge_columns(f.parent(), f.chosen());
    let k = cols.len();
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| cols.iter().map(|c| big(c[i])).collect())
        .collect();

    // row echelon with unimodular row operations
    let mut r = 0;
    for c in 0..k {
        if r == rows {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by_key(|&&i| m[i][c].abs())
                .expect("nonempty");
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                done &= m[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if !m[r][c].is_zero() {
            r += 1;
        }
    }
    let mut top: Vec<Vec<BigInt>> = m.into_iter().take(r).collect();

    // column reduction of the r×k block to [T | 0], T lower triangular
    for i in 0..r {
        loop {
            let nonzero: Vec<usize> = (i..k).filter(|&j| !top[i][j].is_zero()).collect();
            let Some(&p) = nonzero.iter().min_by_key(|&&j| top[i][j].abs()) else {
                unreachable!("echelon rows are independent");
            };
            for row in top.iter_mut() {
                row.swap(i, p);
            }
            let mut done = true;
            for j in i + 1..k {
                if top[i][j].is_zero() {
                    continue;
                }
                let q = top[i][j].div_floor(&top[i][i]);
                for row in top.iter_mut() {
                    let v = &q * &row[i];
                    row[j] -= v;
                }
                done &= top[i][j].is_zero();
            }
            if done {
                break;
            }
        }
    }
    (0..r).fold(BigInt::one(), |acc, i| acc * top[i][i].abs())
}

/// Rational Gauss–Jordan inverse of a square matrix, `None` if singular.
fn inverse(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= p * &f;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn rational_rank(cols: &[Vec<i64>], rows: usize) -> usize {
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            cols.iter()
                .map(|c| BigRational::from_integer(big(c[i])))
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..cols.len() {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        for row in &mut m[r + 1..] {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= p * &f;
                }
            }
        }
        r += 1;
    }
    r
}

/// A basis of the column space with an invertible square row block.
struct Basis {
    columns: Vec<usize>,
    rows: Vec<usize>,
    inverse: Vec<Vec<BigRational>>,
}

fn column_bases(cols: &[Vec<i64>], rows: usize) -> Vec<Basis> {
    let r = rational_rank(cols, rows);
    let mut out = Vec::new();
    for cs in subsets_of_size(cols.len(), r) {
        let cs: Vec<usize> = cs.iter().map(|c| c - 1).collect();
        let sub: Vec<Vec<i64>> = cs.iter().map(|&c| cols[c].clone()).collect();
        if rational_rank(&sub, rows) < r {
            continue;
        }
        // first invertible r×r row block, rows chosen greedily
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..rows {
            let mut trial = chosen.clone();
            trial.push(i);
            let block: Vec<Vec<i64>> = sub
                .iter()
                .map(|c| trial.iter().map(|&t| c[t]).collect())
                .collect();
            if rational_rank(&block, trial.len()) == trial.len() {
                chosen = trial;
            }
            if chosen.len() == r {
                break;
            }
        }
        let block: Vec<Vec<BigRational>> = chosen
            .iter()
            .map(|&i| {
                cs.iter()
                    .map(|&c| BigRational::from_integer(big(cols[c][i])))
                    .collect()
            })
            .collect();
        let inverse = inverse(&block).expect("block chosen invertible");
        out.push(Basis {
            columns: cs,
            rows: chosen,
            inverse,
        });
    }
    out
}

/// `p ∈ {Σ λ_e b_e : 0 ≤ λ_e ≤ t}`? Decided by trying every basic solution:
/// non-basic coefficients sit at a bound, basic ones are solved for.
fn in_dilate(p: &[i64], cols: &[Vec<i64>], bases: &[Basis], t: i64) -> bool {
    let k = cols.len();
    for b in bases {
        let others: Vec<usize> = (0..k).filter(|j| !b.columns.contains(j)).collect();
        for mask in 0u32..1 << others.len() {
            let mut rhs: Vec<i64> = p.to_vec();
            for (bit, &j) in others.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    for (x, c) in rhs.iter_mut().zip(&cols[j]) {
                        *x -= t * c;
                    }
                }
            }
            let lambda: Vec<BigRational> = b
                .inverse
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&b.rows)
                        .fold(BigRational::zero(), |acc, (a, &i)| acc + a * big(rhs[i]))
                })
                .collect();
            let tt = BigRational::from_integer(big(t));
            if lambda.iter().any(|l| l.is_negative() || *l > tt) {
                continue;
            }
            let consistent = (0..rhs.len()).all(|i| {
                let s = b
                    .columns
                    .iter()
                    .zip(&lambda)
                    .fold(BigRational::zero(), |acc, (&c, l)| {
                        acc + l * big(cols[c][i])
                    });
                s == BigRational::from_integer(big(rhs[i]))
            });
            if consistent {
                return true;
            }
        }
    }
    false
}

/// Counts lattice points of `t·Z_H` directly: every integer point of the
/// bounding box that is a `(d-1)`-cycle is tested for membership.
pub fn lattice_points_direct(h: &Hypergraph, t: u32, cap: usize) -> Result<BigInt> {
    if h.edge_count() > cap {
        return Err(Error::Budget {
            what: "direct lattice-point count (generators)".into(),
            bound: h.edge_count().into(),
            budget: cap as u64,
        });
    }
    if t == 0 {
        return Err(domain("dilation factor must be positive"));
    }
    let t = i64::from(t);
    let all: Vec<usize> = (0..h.edge_count()).collect();
    let (rows, cols) = edge_columns(h, &all);
    let bases = column_bases(&cols, rows);

    // reduced boundary one dimension down, as a cycle test
    let d = h.d();
    let faces = subsets_of_size(h.n(), d);
    let cycle_test: Vec<Vec<i64>> = if d == 1 {
        vec![vec![1; rows]]
    } else {
        let lower = subsets_of_size(h.n(), d - 1);
        let cols_down: Vec<Vec<i64>> = faces.iter().map(|f| boundary_vector(f, &lower)).collect();
        (0..lower.len())
            .map(|i| cols_down.iter().map(|c| c[i]).collect())
            .collect()
    };

    let lo: Vec<i64> = (0..rows)
        .map(|i| t * cols.iter().map(|c| c[i].min(0)).sum::<i64>())
        .collect();
    let hi: Vec<i64> = (0..rows)
        .map(|i| t * cols.iter().map(|c| c[i].max(0)).sum::<i64>())
        .collect();

    let mut count = BigInt::zero();
    let mut p = lo.clone();
    loop {
        let is_cycle = cycle_test
            .iter()
            .all(|row| row.iter().zip(&p).map(|(a, b)| a * b).sum::<i64>() == 0);
        if is_cycle && in_dilate(&p, &cols, &bases, t) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == rows {
                return Ok(count);
            }
            if p[i] < hi[i] {
                p[i] += 1;
                break;
            }
            p[i] = lo[i];
            i += 1;
        }
    }
}

/// Interpolates direct counts at `t = 1..=D+1`, `D = binom(n-1, d)`, and
/// compares the resulting polynomial with [`ehrhart`].
pub fn ehrhart_fit_check(h: &Hypergraph, cap: usize) -> Result<OracleReport> {
    let degree = subsets_of_size(h.n() - 1, h.d()).len();
    let points: Vec<(i64, BigInt)> = (1..=degree as u32 + 1)
        .map(|t| lattice_points_direct(h, t, cap).map(|c| (i64::from(t), c)))
        .collect::<Result<_>>()?;
    let fitted = interpolate(&points);
    let oracle = format_coefficients(&fitted);
    let theorem_poly = ehrhart(h);
    let theorem: Vec<BigRational> = (0..fitted.len())
        .map(|k| BigRational::from_integer(theorem_poly.coefficient(k)))
        .collect();
    let agree_len = theorem_poly.coefficients.len() <= fitted.len();
    let mut report = OracleReport::compare(
        "ehrhart coefficients",
        format_coefficients(&theorem),
        oracle,
    );
    report.agreement &= agree_len;
    Ok(report)
}

fn format_coefficients(c: &[BigRational]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Coefficients (lowest first) of the polynomial through the given points,
/// by Newton divided differences.
fn interpolate(points: &[(i64, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let xs: Vec<BigRational> = points
        .iter()
        .map(|(x, _)| BigRational::from_integer(big(*x)))
        .collect();
    let mut dd: Vec<BigRational> = points
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand Σ dd[i] Π_{j<i} (t - x_j)
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for i in 0..n {
        for (k, b) in basis.iter().enumerate() {
            coeffs[k] += &dd[i] * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b;
            next[k] -= b * &xs[i];
        }
        basis = next;
    }
    coeffs
}

/// All valid proper sign patterns, by testing each of the `2^|E|` candidates.
pub fn signpattern_bruteforce(h: &Hypergraph) -> Result<BTreeSet<SignPattern>> {
    let m = h.edge_count();
    if m > BRUTEFORCE_EDGE_CAP {
        return Err(Error::Budget {
            what: "brute-force sign patterns (edges)".into(),
            bound: m.into(),
            budget: BRUTEFORCE_EDGE_CAP as u64,
        });
    }
    let mut out = BTreeSet::new();
    for bits in 0u32..1 << m {
        let values = (0..m)
            .map(|i| if bits >> i & 1 == 1 { 1 } else { -1 })
            .collect();
        let p = SignPattern::new(values)?;
        if validity_check(h, &p)?.is_some() {
            out.insert(p);
        }
    }
    Ok(out)
}

/// Sum of `torsion_rowreduce` over all edge subsets of size `binom(n-1, d)`
/// whose columns have full rank: the volume, by brute force. Refuses when
/// the number of subsets exceeds `budget`.
pub fn volume_bruteforce(h: &Hypergraph, budget: u64) -> Result<BigInt> {
    let r = subsets_of_size(h.n() - 1, h.d()).len();
    let m = h.edge_count();
    if r > m {
        return Ok(BigInt::zero());
    }
    let candidates = choose(m, r);
    if candidates > BigInt::from(budget) {
        return Err(Error::Budget {
            what: "brute-force volume (subsets)".into(),
            bound: candidates.magnitude().clone(),
            budget,
        });
    }
    let all: Vec<usize> = (0..m).collect();
    let (rows, cols) = edge_columns(h, &all);
    Ok(subsets_of_size(m, r)
        .into_iter()
        .map(|s| s.into_iter().map(|i| i - 1).collect::<Vec<_>>())
        .filter(|s| {
            let sub: Vec<Vec<i64>> = s.iter().map(|&i| cols[i].clone()).collect();
            rational_rank(&sub, rows) == r
        })
        .map(|s| torsion_rowreduce(&SubcomplexSelection::new(h, s).expect("valid indices")))
        .sum())
}

fn choose(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}
