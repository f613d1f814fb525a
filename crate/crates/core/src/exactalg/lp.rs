//! Exact feasibility of linear systems `a·x ≥ b`, `a·x = b` over ℚ.
//!
//! Two independent solvers: Fourier–Motzkin elimination (with a row-count
//! cap) and a two-phase-free simplex (phase one only, Bland's rule).

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::ExactInt;

/// Variable count at or below which [`Solver::Auto`] tries Fourier–Motzkin.
pub const FM_MAX_VARS: usize = 12;
/// Fourier–Motzkin gives up (and `Auto` switches to simplex) past this many rows.
pub const FM_MAX_ROWS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    GreaterEq,
    Equal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Solver {
    #[default]
    Auto,
    FourierMotzkin,
    Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility<T: ExactInt> {
    Feasible(Vec<Ratio<T>>),
    Infeasible,
}

impl<T: ExactInt> Feasibility<T> {
    pub fn into_witness(self) -> Option<Vec<Ratio<T>>> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

#[derive(Clone, Debug)]
struct Row<T> {
    coeffs: Vec<Ratio<T>>,
    rel: Relation,
    rhs: Ratio<T>,
}

/// A conjunction of linear constraints in a fixed number of variables.
#[derive(Clone, Debug)]
pub struct LinearSystem<T> {
    vars: usize,
    rows: Vec<Row<T>>,
}

impl<T: ExactInt> LinearSystem<T> {
    pub fn new(vars: usize) -> Self {
        LinearSystem {
            vars,
            rows: Vec::new(),
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn push(&mut self, coeffs: Vec<Ratio<T>>, rel: Relation, rhs: Ratio<T>) {
        assert_eq!(coeffs.len(), self.vars, "coefficient count mismatch");
        self.rows.push(Row { coeffs, rel, rhs });
    }

    /// Integer-coefficient convenience wrapper around [`push`](Self::push).
    pub fn push_int(&mut self, coeffs: &[T], rel: Relation, rhs: T) {
        self.push(
            coeffs.iter().cloned().map(Ratio::from_integer).collect(),
            rel,
            Ratio::from_integer(rhs),
        );
    }

    /// `true` when `x` satisfies every constraint.
    pub fn is_satisfied_by(&self, x: &[Ratio<T>]) -> bool {
        x.len() == self.vars
            && self.rows.iter().all(|r| {
                let v = dot(&r.coeffs, x);
                match r.rel {
                    Relation::GreaterEq => v >= r.rhs,
                    Relation::Equal => v == r.rhs,
                }
            })
    }

    pub fn solve(&self, solver: Solver) -> Feasibility<T> {
        let out = match solver {
            Solver::Simplex => simplex(self),
            Solver::FourierMotzkin => {
                fourier_motzkin(self, usize::MAX).expect("an uncapped elimination always finishes")
            }
            Solver::Auto if self.vars <= FM_MAX_VARS => {
                fourier_motzkin(self, FM_MAX_ROWS).unwrap_or_else(|| simplex(self))
            }
            Solver::Auto => simplex(self),
        };
        if let Feasibility::Feasible(x) = &out {
            debug_assert!(self.is_satisfied_by(x));
        }
        out
    }
}

fn dot<T: ExactInt>(a: &[Ratio<T>], x: &[Ratio<T>]) -> Ratio<T> {
    a.iter()
        .zip(x)
        .filter(|(c, _)| !c.is_zero())
        .fold(Ratio::zero(), |acc, (c, v)| acc + c.clone() * v.clone())
}

/// Scales an inequality so its first nonzero coefficient has absolute value 1.
fn normalize<T: ExactInt>(row: &mut (Vec<Ratio<T>>, Ratio<T>)) {
    if let Some(lead) = row.0.iter().find(|c| !c.is_zero()) {
        let s = lead.abs().recip();
        for c in row.0.iter_mut() {
            *c = c.clone() * s.clone();
        }
        row.1 = row.1.clone() * s;
    }
}

// x_var = rhs - Σ coeffs·x   (coeffs[var] is zero)
struct Substitution<T> {
    var: usize,
    coeffs: Vec<Ratio<T>>,
    rhs: Ratio<T>,
}

struct Stage<T> {
    var: usize,
    bounds: Vec<(Vec<Ratio<T>>, Ratio<T>)>,
}

/// Returns `None` when the row cap is hit.
fn fourier_motzkin<T: ExactInt>(sys: &LinearSystem<T>, cap: usize) -> Option<Feasibility<T>> {
    let n = sys.vars;
    let mut ineqs: Vec<(Vec<Ratio<T>>, Ratio<T>)> = Vec::new();
    let mut eqs: Vec<(Vec<Ratio<T>>, Ratio<T>)> = Vec::new();
    for r in &sys.rows {
        match r.rel {
            Relation::GreaterEq => ineqs.push((r.coeffs.clone(), r.rhs.clone())),
            Relation::Equal => eqs.push((r.coeffs.clone(), r.rhs.clone())),
        }
    }

    // Gaussian substitution for the equalities.
    let mut subs: Vec<Substitution<T>> = Vec::new();
    while let Some((a, b)) = eqs.pop() {
        let Some(k) = a.iter().position(|c| !c.is_zero()) else {
            if b.is_zero() {
                continue;
            }
            return Some(Feasibility::Infeasible);
        };
        let inv = a[k].recip();
        let mut coeffs: Vec<Ratio<T>> = a.iter().map(|c| c.clone() * inv.clone()).collect();
        coeffs[k] = Ratio::zero();
        let rhs = b * inv;
        let eliminate = |row: &mut (Vec<Ratio<T>>, Ratio<T>)| {
            let f = row.0[k].clone();
            if f.is_zero() {
                return;
            }
            row.0[k] = Ratio::zero();
            for (c, s) in row.0.iter_mut().zip(&coeffs) {
                if !s.is_zero() {
                    *c = c.clone() - f.clone() * s.clone();
                }
            }
            row.1 = row.1.clone() - f * rhs.clone();
        };
        for row in eqs.iter_mut().chain(ineqs.iter_mut()) {
            eliminate(row);
        }
        subs.push(Substitution {
            var: k,
            coeffs,
            rhs,
        });
    }

    let substituted: Vec<usize> = subs.iter().map(|s| s.var).collect();
    let mut remaining: Vec<usize> = (0..n).filter(|v| !substituted.contains(v)).collect();
    let mut stages: Vec<Stage<T>> = Vec::new();

    loop {
        // drop constant rows, reject contradictions, deduplicate
        let mut kept: Vec<(Vec<Ratio<T>>, Ratio<T>)> = Vec::with_capacity(ineqs.len());
        for mut row in ineqs.drain(..) {
            if row.0.iter().all(Zero::is_zero) {
                if row.1.is_positive() {
                    return Some(Feasibility::Infeasible);
                }
                continue;
            }
            normalize(&mut row);
            kept.push(row);
        }
        kept.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)));
        // same coefficients: keep only the largest right-hand side
        kept.dedup_by(|later, earlier| later.0 == earlier.0);
        ineqs = kept;

        if ineqs.len() > cap {
            return None;
        }

        // pick the variable with the cheapest elimination
        let Some((pos_idx, var)) = remaining
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let p = ineqs.iter().filter(|r| r.0[v].is_positive()).count();
                let q = ineqs.iter().filter(|r| r.0[v].is_negative()).count();
                (p * q, p + q, i, v)
            })
            .min()
            .map(|(_, _, i, v)| (i, v))
        else {
            break;
        };
        remaining.swap_remove(pos_idx);

        let (involved, rest): (Vec<_>, Vec<_>) =
            ineqs.into_iter().partition(|r| !r.0[var].is_zero());
        let (pos, neg): (Vec<_>, Vec<_>) = involved.iter().partition(|r| r.0[var].is_positive());
        let mut next = rest;
        for p in &pos {
            for q in &neg {
                let fp = -q.0[var].clone();
                let fq = p.0[var].clone();
                let coeffs: Vec<Ratio<T>> =
                    p.0.iter()
                        .zip(&q.0)
                        .map(|(a, b)| a.clone() * fp.clone() + b.clone() * fq.clone())
                        .collect();
                let rhs = p.1.clone() * fp.clone() + q.1.clone() * fq.clone();
                next.push((coeffs, rhs));
                if next.len() > cap.saturating_mul(4) {
                    return None;
                }
            }
        }
        stages.push(Stage {
            var,
            bounds: involved,
        });
        ineqs = next;
    }

    // Back-substitution in reverse elimination order.
    let mut x = vec![Ratio::<T>::zero(); n];
    for stage in stages.iter().rev() {
        let k = stage.var;
        let mut lower: Option<Ratio<T>> = None;
        let mut upper: Option<Ratio<T>> = None;
        for (a, b) in &stage.bounds {
            let mut others = dot(a, &x);
            others = others - a[k].clone() * x[k].clone();
            let bound = (b.clone() - others) / a[k].clone();
            if a[k].is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        x[k] = match (lower, upper) {
            (Some(l), _) => l,
            (None, Some(u)) => u,
            (None, None) => Ratio::zero(),
        };
    }
    for s in subs.iter().rev() {
        x[s.var] = s.rhs.clone() - dot(&s.coeffs, &x);
    }
    Some(Feasibility::Feasible(x))
}

/// Phase-one simplex on a dense tableau with Bland's anti-cycling rule.
fn simplex<T: ExactInt>(sys: &LinearSystem<T>) -> Feasibility<T> {
    let n = sys.vars;
    let m = sys.rows.len();
    let slack_count = sys
        .rows
        .iter()
        .filter(|r| r.rel == Relation::GreaterEq)
        .count();
    // columns: u (n), v (n), slacks, artificials (m), then rhs
    let art0 = 2 * n + slack_count;
    let width = art0 + m;
    let mut tab: Vec<Vec<Ratio<T>>> = Vec::with_capacity(m + 1);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut slack = 2 * n;
    for (i, r) in sys.rows.iter().enumerate() {
        let mut row = vec![Ratio::<T>::zero(); width + 1];
        for (j, c) in r.coeffs.iter().enumerate() {
            row[j] = c.clone();
            row[n + j] = -c.clone();
        }
        if r.rel == Relation::GreaterEq {
            row[slack] = -Ratio::one();
            slack += 1;
        }
        row[width] = r.rhs.clone();
        if row[width].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art0 + i] = Ratio::one();
        tab.push(row);
        basis.push(art0 + i);
    }
    // objective: minimize Σ artificials, stored as reduced costs
    let mut obj = vec![Ratio::<T>::zero(); width + 1];
    for row in &tab {
        for (o, v) in obj.iter_mut().zip(row) {
            *o = o.clone() - v.clone();
        }
    }
    for o in &mut obj[art0..width] {
        *o = Ratio::zero();
    }

    while let Some(enter) = (0..width).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, Ratio<T>)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = row[width].clone() / row[enter].clone();
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        let Some((r, _)) = leave else {
            // phase-one objective is bounded below by zero
            unreachable!("unbounded phase-one simplex");
        };
        pivot(&mut tab, &mut obj, r, enter);
        basis[r] = enter;
    }

    if !obj[width].is_zero() {
        return Feasibility::Infeasible;
    }
    let mut x = vec![Ratio::<T>::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = x[b].clone() + tab[i][width].clone();
        } else if b < 2 * n {
            x[b - n] = x[b - n].clone() - tab[i][width].clone();
        }
    }
    Feasibility::Feasible(x)
}

fn pivot<T: ExactInt>(tab: &mut [Vec<Ratio<T>>], obj: &mut [Ratio<T>], r: usize, c: usize) {
    let inv = tab[r][c].recip();
    for v in tab[r].iter_mut() {
        *v = v.clone() * inv.clone();
    }
    let prow = tab[r].clone();
    let eliminate = |row: &mut [Ratio<T>]| {
        let f = row[c].clone();
        if f.is_zero() {
            return;
        }
        for (v, p) in row.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v = v.clone() - f.clone() * p.clone();
            }
        }
    };
    for (i, row) in tab.iter_mut().enumerate() {
        if i != r {
            eliminate(row);
        }
    }
    eliminate(obj);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Ratio<i64> {
        Ratio::from_integer(n)
    }

    fn both(sys: &LinearSystem<i64>) -> (bool, bool) {
        let fm = sys.solve(Solver::FourierMotzkin);
        let sx = sys.solve(Solver::Simplex);
        for f in [&fm, &sx] {
            if let Feasibility::Feasible(x) = f {
                assert!(sys.is_satisfied_by(x), "witness {x:?} violates {sys:?}");
            }
        }
        (
            matches!(fm, Feasibility::Feasible(_)),
            matches!(sx, Feasibility::Feasible(_)),
        )
    }

    #[test]
    fn empty_system_is_feasible() {
        let sys = LinearSystem::<i64>::new(3);
        assert_eq!(both(&sys), (true, true));
        let sys = LinearSystem::<i64>::new(0);
        assert_eq!(both(&sys), (true, true));
    }

    #[test]
    fn strict_pair_contradiction() {
        // x ≥ 1 and -x ≥ 1
        let mut sys = LinearSystem::<i64>::new(1);
        sys.push_int(&[1], Relation::GreaterEq, 1);
        sys.push_int(&[-1], Relation::GreaterEq, 1);
        assert_eq!(both(&sys), (false, false));
    }

    #[test]
    fn equalities_and_inequalities() {
        // x + y = 3, x - y ≥ 1, y ≥ 1/2
        let mut sys = LinearSystem::<i64>::new(2);
        sys.push_int(&[1, 1], Relation::Equal, 3);
        sys.push_int(&[1, -1], Relation::GreaterEq, 1);
        sys.push(vec![r(0), r(1)], Relation::GreaterEq, Ratio::new(1, 2));
        assert_eq!(both(&sys), (true, true));
        sys.push_int(&[0, -1], Relation::GreaterEq, -1);
        sys.push_int(&[-1, 0], Relation::GreaterEq, -2);
        // now y ≤ 1 and x ≤ 2 with x + y = 3 forces x = 2, y = 1
        assert_eq!(both(&sys), (true, true));
        sys.push_int(&[0, 1], Relation::GreaterEq, 2);
        assert_eq!(both(&sys), (false, false));
    }

    #[test]
    fn inconsistent_equalities() {
        let mut sys = LinearSystem::<i64>::new(2);
        sys.push_int(&[1, 1], Relation::Equal, 1);
        sys.push_int(&[2, 2], Relation::Equal, 3);
        assert_eq!(both(&sys), (false, false));
    }
}
