use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{ExactInt, Matrix};

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank<T: ExactInt>(a: &Matrix<T>) -> usize {
    bareiss_echelon(a.clone()).0
}

/// Runs Bareiss elimination in place, skipping columns without a pivot.
/// Returns the rank and the last pivot (the determinant, up to sign, for a
/// nonsingular square input).
fn bareiss_echelon<T: ExactInt>(mut m: Matrix<T>) -> (usize, T, bool) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = T::one();
    let mut r = 0;
    let mut odd_swaps = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap_rows(p, r);
            odd_swaps = !odd_swaps;
        }
        let pivot = m[(r, c)].clone();
        for i in r + 1..rows {
            let lead = m[(i, c)].clone();
            for j in c + 1..cols {
                let v = (pivot.clone() * m[(i, j)].clone() - lead.clone() * m[(r, j)].clone())
                    / prev.clone();
                m[(i, j)] = v;
            }
            m[(i, c)] = T::zero();
        }
        // rows untouched by this step (above r) are already final
        prev = pivot;
        r += 1;
    }
    (r, prev, odd_swaps)
}

pub(crate) fn bareiss_determinant<T: ExactInt>(m: Matrix<T>) -> T {
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    let (r, last, odd) = bareiss_echelon(m);
    if r < n {
        T::zero()
    } else if odd {
        -last
    } else {
        last
    }
}

/// Basis of the rational kernel of `a`, each vector scaled to a primitive
/// integer vector whose first nonzero entry is positive.
pub fn nullspace<T: ExactInt>(a: &Matrix<T>) -> Vec<Vec<T>> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<Ratio<T>>> = (0..rows)
        .map(|i| {
            a.row(i)
                .iter()
                .map(|x| Ratio::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.clone() - p.clone() * f.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }

    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Ratio::<T>::zero(); cols];
        v[free] = Ratio::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        basis.push(primitive_from_rationals(&v));
    }
    basis
}

fn primitive_from_rationals<T: ExactInt>(v: &[Ratio<T>]) -> Vec<T> {
    let lcm = v.iter().fold(T::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<T> = v
        .iter()
        .map(|x| x.numer().clone() * (lcm.clone() / x.denom().clone()))
        .collect();
    make_primitive(ints)
}

/// Divides out the content and makes the first nonzero entry positive.
pub(crate) fn make_primitive<T: ExactInt>(mut v: Vec<T>) -> Vec<T> {
    let g = v.iter().fold(T::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let flip = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = x.clone() / g.clone();
        if flip {
            *x = -x.clone();
        }
    }
    v
}

/// Row-echelon basis that grows one vector at a time.
///
/// Reductions are fraction-free: a vector is combined with a basis vector by
/// cross-multiplying the pivot entries and the result is divided by its
/// content, so entries stay small integers.
#[derive(Clone, Debug)]
pub struct EchelonBasis<T> {
    dim: usize,
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: ExactInt> EchelonBasis<T> {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    fn reduce(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut v = v.to_vec();
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let g = b[*p].gcd(&v[*p]);
            let bs = b[*p].clone() / g.clone();
            let vs = v[*p].clone() / g;
            for (x, y) in v.iter_mut().zip(b) {
                *x = bs.clone() * x.clone() - vs.clone() * y.clone();
            }
            v = make_primitive(v);
        }
        v
    }

    /// `true` when `v` is not in the span of the basis.
    pub fn is_independent(&self, v: &[T]) -> bool {
        self.reduce(v).iter().any(|x| !x.is_zero())
    }

    /// Adds `v` to the basis if it is independent; reports whether it was.
    pub fn insert(&mut self, v: &[T]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, r));
                true
            }
            None => false,
        }
    }
}
