use super::{ExactInt, Matrix};

/// Smith normal form `left · A · right = diag(invariant_factors)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf<T> {
    /// `min(rows, cols)` nonnegative entries; nonzero ones form a
    /// divisibility chain and zeros come last.
    pub invariant_factors: Vec<T>,
    pub left_transform: Matrix<T>,
    pub right_transform: Matrix<T>,
}

impl<T: ExactInt> Snf<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|x| !x.is_zero())
            .count()
    }

    /// Product of the nonzero invariant factors.
    pub fn torsion(&self) -> T {
        nonzero_product(&self.invariant_factors)
    }

    /// The diagonal matrix `left · A · right` with the shape of `A`.
    pub fn diagonal(&self) -> Matrix<T> {
        let mut d = Matrix::zeros(self.left_transform.rows(), self.right_transform.cols());
        for (i, f) in self.invariant_factors.iter().enumerate() {
            d[(i, i)] = f.clone();
        }
        d
    }
}

/// Smith normal form with unimodular witnesses.
pub fn snf<T: ExactInt>(a: &Matrix<T>) -> Snf<T> {
    let mut w = Reduction::new(a.clone(), true);
    w.run();
    Snf {
        invariant_factors: w.diagonal(),
        left_transform: w.left.expect("tracked"),
        right_transform: w.right.expect("tracked"),
    }
}

/// Invariant factors only; skips the bookkeeping of the transforms.
pub fn invariant_factors<T: ExactInt>(a: &Matrix<T>) -> Vec<T> {
    let mut w = Reduction::new(a.clone(), false);
    w.run();
    w.diagonal()
}

/// Index of the column lattice of `a` in its saturation: the product of
/// the nonzero invariant factors (1 for a zero matrix).
pub fn saturation_index<T: ExactInt>(a: &Matrix<T>) -> T {
    nonzero_product(&invariant_factors(a))
}

fn nonzero_product<T: ExactInt>(factors: &[T]) -> T {
    factors
        .iter()
        .filter(|x| !x.is_zero())
        .fold(T::one(), |acc, x| acc * x.clone())
}

struct Reduction<T> {
    d: Matrix<T>,
    left: Option<Matrix<T>>,
    right: Option<Matrix<T>>,
}

impl<T: ExactInt> Reduction<T> {
    fn new(a: Matrix<T>, track: bool) -> Self {
        let (left, right) = if track {
            (
                Some(Matrix::identity(a.rows())),
                Some(Matrix::identity(a.cols())),
            )
        } else {
            (None, None)
        };
        Reduction { d: a, left, right }
    }

    fn diagonal(&self) -> Vec<T> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(l) = &mut self.left {
            l.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(r) = &mut self.right {
            r.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &T) {
        self.d.add_row_multiple(dst, src, f);
        if let Some(l) = &mut self.left {
            l.add_row_multiple(dst, src, f);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &T) {
        self.d.add_col_multiple(dst, src, f);
        if let Some(r) = &mut self.right {
            r.add_col_multiple(dst, src, f);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some(l) = &mut self.left {
            l.negate_row(i);
        }
    }

    /// Smallest nonzero entry (by absolute value) of the trailing block.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, T)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let a = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                    let unit = a.is_one();
                    best = Some((i, j, a));
                    if unit {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|(_, _, b)| b.is_one()) {
                break;
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn run(&mut self) {
        let (m, n) = (self.d.rows(), self.d.cols());
        for t in 0..m.min(n) {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);
                let p = self.d[(t, t)].clone();

                let mut clean = true;
                for i in t + 1..m {
                    if self.d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = self.d[(i, t)].clone() / p.clone();
                    self.add_row(i, t, &-q);
                    clean &= self.d[(i, t)].is_zero();
                }
                for j in t + 1..n {
                    if self.d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = self.d[(t, j)].clone() / p.clone();
                    self.add_col(j, t, &-q);
                    clean &= self.d[(t, j)].is_zero();
                }
                if !clean {
                    continue;
                }

                // pivot must divide the whole trailing block
                let offender = (t + 1..m)
                    .find(|&i| (t + 1..n).any(|j| !(self.d[(i, j)].clone() % p.clone()).is_zero()));
                match offender {
                    Some(i) => self.add_row(t, i, &T::one()),
                    None => break,
                }
            }
            if self.d[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }
}
