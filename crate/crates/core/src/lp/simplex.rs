//! Bounded-variable primal simplex on a dense tableau.
//!
//! Columns are laid out as `[structural (n) | slack (m) | artificial (k)]`.
//! The slack block of the tableau is always `B^-1`, which is where the row
//! duals and Farkas multipliers are read from.

use super::{LinearSystem, LpError, LpOptions, LpResult};
use crate::scalar::{ExtendedValue, Scalar, Tolerances};

enum Outcome {
    Optimal,
    Unbounded { entering: usize, dir_up: bool },
}

struct Tableau<'a, S> {
    m: usize,
    n: usize,
    ncols: usize,
    t: Vec<Vec<S>>,
    basis: Vec<usize>,
    row_of: Vec<Option<usize>>,
    value: Vec<S>,
    lower: Vec<Option<S>>,
    upper: Vec<Option<S>>,
    tol: &'a Tolerances<S>,
    max_iterations: usize,
    bland_after: usize,
    iterations: usize,
}

pub(super) fn solve<S: Scalar>(
    system: &LinearSystem<S>,
    objective: &[S],
    options: &LpOptions<S>,
) -> Result<LpResult<S>, LpError> {
    let n = system.n;
    let m = system.m();
    let tol = &options.tolerances;

    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for j in 0..n {
        let lo = match &system.lower[j] {
            ExtendedValue::NegInf => None,
            ExtendedValue::Finite(v) => Some(v.clone()),
            ExtendedValue::PosInf => return Ok(empty_box(m)),
        };
        let hi = match &system.upper[j] {
            ExtendedValue::PosInf => None,
            ExtendedValue::Finite(v) => Some(v.clone()),
            ExtendedValue::NegInf => return Ok(empty_box(m)),
        };
        if let (Some(l), Some(u)) = (&lo, &hi) {
            if *l > u.clone() + tol.feasibility.clone() {
                return Ok(empty_box(m));
            }
        }
        lower.push(lo);
        upper.push(hi);
    }

    let mut value: Vec<S> = (0..n)
        .map(|j| lower[j].clone().or_else(|| upper[j].clone()).unwrap_or_else(S::zero))
        .collect();

    let residual: Vec<S> = system
        .rows
        .iter()
        .map(|row| row.rhs.clone() - row.activity(&value))
        .collect();
    let art_rows: Vec<usize> = (0..m).filter(|&i| residual[i] < -tol.feasibility.clone()).collect();
    let k = art_rows.len();
    let ncols = n + m + k;

    let mut t = vec![vec![S::zero(); ncols]; m];
    let mut basis = vec![0usize; m];
    let mut row_of = vec![None; ncols];
    for (i, row) in system.rows.iter().enumerate() {
        for (j, a) in &row.coeffs {
            t[i][*j] = a.clone();
        }
        t[i][n + i] = S::one();
    }
    value.extend((0..m).map(|i| {
        if residual[i] < -tol.feasibility.clone() {
            S::zero()
        } else {
            residual[i].clone()
        }
    }));
    for i in 0..m {
        basis[i] = n + i;
    }
    for (a, &i) in art_rows.iter().enumerate() {
        // row i: A_i x + s_i - a = b_i, with a basic; store the row negated so
        // the basic column is a unit vector.
        let col = n + m + a;
        for entry in t[i].iter_mut() {
            *entry = -entry.clone();
        }
        t[i][col] = S::one();
        basis[i] = col;
        value.push(-residual[i].clone());
    }
    for (i, &b) in basis.iter().enumerate() {
        row_of[b] = Some(i);
    }

    lower.extend((0..m + k).map(|_| Some(S::zero())));
    upper.extend((0..m + k).map(|_| None));

    let mut tab = Tableau {
        m,
        n,
        ncols,
        t,
        basis,
        row_of,
        value,
        lower,
        upper,
        tol,
        max_iterations: options.max_iterations,
        bland_after: options.bland_after.max(1) * (m + n).max(1),
        iterations: 0,
    };

    if k > 0 {
        let mut phase1 = vec![S::zero(); ncols];
        for c in phase1.iter_mut().skip(n + m) {
            *c = S::one();
        }
        tab.iterate(&phase1)?;
        let infeasibility = tab.value.iter().skip(n + m).fold(S::zero(), |acc, v| acc + v.clone());
        if infeasibility > tol.feasibility {
            let w = tab.row_duals(&phase1);
            let farkas_row = w.into_iter().map(|wi| clamp_nonneg(-wi, tol)).collect();
            return Ok(LpResult::Infeasible { farkas_row });
        }
        for j in n + m..ncols {
            tab.upper[j] = Some(S::zero());
            if tab.row_of[j].is_none() {
                tab.value[j] = S::zero();
            }
        }
    }

    let mut cost = vec![S::zero(); ncols];
    cost[..n].clone_from_slice(objective);
    match tab.iterate(&cost)? {
        Outcome::Unbounded { entering, dir_up } => {
            let mut ray = vec![S::zero(); n];
            let dir = if dir_up { S::one() } else { -S::one() };
            if entering < n {
                ray[entering] = dir.clone();
            }
            for i in 0..m {
                let b = tab.basis[i];
                if b < n {
                    ray[b] = -dir.clone() * tab.t[i][entering].clone();
                }
            }
            Ok(LpResult::Unbounded { ray })
        }
        Outcome::Optimal => {
            let point: Vec<S> = tab.value[..n].to_vec();
            let w = tab.row_duals(&cost);
            let dual_row: Vec<S> = w.into_iter().map(|wi| clamp_nonneg(-wi, tol)).collect();
            let mut dual_bound = objective.to_vec();
            for (row, lam) in system.rows.iter().zip(&dual_row) {
                if lam.is_zero() {
                    continue;
                }
                for (j, a) in &row.coeffs {
                    dual_bound[*j] = dual_bound[*j].clone() + a.clone() * lam.clone();
                }
            }
            let value = crate::scalar::dot(objective, &point);
            Ok(LpResult::Optimal {
                value,
                point,
                dual_row,
                dual_bound,
            })
        }
    }
}

fn empty_box<S: Scalar>(m: usize) -> LpResult<S> {
    LpResult::Infeasible {
        farkas_row: vec![S::zero(); m],
    }
}

fn clamp_nonneg<S: Scalar>(v: S, tol: &Tolerances<S>) -> S {
    if v < S::zero() && v >= -tol.optimality.clone() {
        S::zero()
    } else {
        v
    }
}

impl<S: Scalar> Tableau<'_, S> {
    /// `w = c_B^T B^-1`, read from the slack block.
    fn row_duals(&self, cost: &[S]) -> Vec<S> {
        let mut w = vec![S::zero(); self.m];
        for k in 0..self.m {
            let cb = &cost[self.basis[k]];
            if cb.is_zero() {
                continue;
            }
            for (i, wi) in w.iter_mut().enumerate() {
                let e = &self.t[k][self.n + i];
                if !e.is_zero() {
                    *wi = wi.clone() + cb.clone() * e.clone();
                }
            }
        }
        w
    }

    fn reduced_costs(&self, cost: &[S]) -> Vec<Option<S>> {
        let mut d: Vec<Option<S>> = (0..self.ncols)
            .map(|j| {
                if self.row_of[j].is_some() {
                    None
                } else {
                    Some(cost[j].clone())
                }
            })
            .collect();
        for i in 0..self.m {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, dj) in d.iter_mut().enumerate() {
                if let Some(dj) = dj {
                    let a = &self.t[i][j];
                    if !a.is_zero() {
                        dj.sub_mul(cb, a);
                    }
                }
            }
        }
        d
    }

    fn can_increase(&self, j: usize) -> bool {
        match &self.upper[j] {
            None => true,
            Some(u) => self.value[j] < *u,
        }
    }

    fn can_decrease(&self, j: usize) -> bool {
        match &self.lower[j] {
            None => true,
            Some(l) => self.value[j] > *l,
        }
    }

    fn iterate(&mut self, cost: &[S]) -> Result<Outcome, LpError> {
        let opt_tol = self.tol.optimality.clone();
        let mut degenerate_run = 0usize;
        loop {
            if self.iterations >= self.max_iterations {
                return Err(LpError::IterationLimitExceeded(self.max_iterations));
            }
            self.iterations += 1;
            let bland = degenerate_run > self.bland_after;

            let d = self.reduced_costs(cost);
            let mut entering: Option<(usize, bool, S)> = None;
            for (j, dj) in d.iter().enumerate() {
                let Some(dj) = dj else { continue };
                let dir_up = if *dj < -opt_tol.clone() && self.can_increase(j) {
                    true
                } else if *dj > opt_tol && self.can_decrease(j) {
                    false
                } else {
                    continue;
                };
                let mag = dj.abs();
                let better = match &entering {
                    None => true,
                    Some((_, _, best)) => !bland && mag > *best,
                };
                if better {
                    entering = Some((j, dir_up, mag));
                }
                if bland {
                    break;
                }
            }
            let Some((q, dir_up, _)) = entering else {
                return Ok(Outcome::Optimal);
            };

            // ratio test
            let pivot_tol = self.tol.pivot.clone();
            let mut best: Option<(usize, S, S, bool)> = None; // row, theta, |alpha|, hits upper
            for i in 0..self.m {
                let alpha = &self.t[i][q];
                if alpha.abs() <= pivot_tol || alpha.is_zero() {
                    continue;
                }
                // change of basic i per unit step of the entering variable
                let delta = if dir_up { -alpha.clone() } else { alpha.clone() };
                let b = self.basis[i];
                let (limit, hits_upper) = if delta < S::zero() {
                    match &self.lower[b] {
                        Some(l) => ((self.value[b].clone() - l.clone()) / (-delta), false),
                        None => continue,
                    }
                } else {
                    match &self.upper[b] {
                        Some(u) => ((u.clone() - self.value[b].clone()) / delta, true),
                        None => continue,
                    }
                };
                let limit = if limit < S::zero() { S::zero() } else { limit };
                let mag = alpha.abs();
                let replace = match &best {
                    None => true,
                    Some((bi, bt, bm, _)) => {
                        if limit < *bt {
                            true
                        } else if limit == *bt {
                            if bland {
                                b < self.basis[*bi]
                            } else {
                                mag > *bm || (mag == *bm && b < self.basis[*bi])
                            }
                        } else {
                            false
                        }
                    }
                };
                if replace {
                    best = Some((i, limit, mag, hits_upper));
                }
            }

            let flip = match (&self.lower[q], &self.upper[q]) {
                (Some(l), Some(u)) => Some(u.clone() - l.clone()),
                _ => None,
            };
            let step_is_flip = match (&flip, &best) {
                (Some(f), Some((_, theta, _, _))) => *f <= *theta,
                (Some(_), None) => true,
                (None, _) => false,
            };
            if best.is_none() && flip.is_none() {
                return Ok(Outcome::Unbounded { entering: q, dir_up });
            }

            let theta = if step_is_flip {
                flip.clone().expect("flip distance")
            } else {
                best.as_ref().expect("blocking row").1.clone()
            };
            if theta <= self.tol.pivot {
                degenerate_run += 1;
            } else {
                degenerate_run = 0;
            }

            let signed = if dir_up { theta.clone() } else { -theta.clone() };
            if !theta.is_zero() {
                self.value[q] = self.value[q].clone() + signed.clone();
                for i in 0..self.m {
                    let a = &self.t[i][q];
                    if a.is_zero() {
                        continue;
                    }
                    let b = self.basis[i];
                    let a = a.clone();
                    self.value[b].sub_mul(&a, &signed);
                }
            }

            if step_is_flip {
                self.value[q] = if dir_up {
                    self.upper[q].clone().expect("upper")
                } else {
                    self.lower[q].clone().expect("lower")
                };
                continue;
            }

            let (r, _, _, hits_upper) = best.expect("blocking row");
            let leaving = self.basis[r];
            self.value[leaving] = if hits_upper {
                self.upper[leaving].clone().expect("upper")
            } else {
                self.lower[leaving].clone().expect("lower")
            };
            self.pivot(r, q);
        }
    }

    fn pivot(&mut self, r: usize, q: usize) {
        let piv = self.t[r][q].clone();
        for e in self.t[r].iter_mut() {
            if !e.is_zero() {
                e.div_by(&piv);
            }
        }
        let pivot_row = std::mem::take(&mut self.t[r]);
        let nz: Vec<usize> = (0..self.ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[q].clone();
            if f.is_zero() {
                continue;
            }
            for &j in &nz {
                row[j].sub_mul(&f, &pivot_row[j]);
            }
            row[q] = S::zero();
        }
        self.t[r] = pivot_row;
        let leaving = self.basis[r];
        self.row_of[leaving] = None;
        self.basis[r] = q;
        self.row_of[q] = Some(r);
    }
}
