//! Linear programming over `{x : Ax <= b, l <= x <= u}`.
//!
//! Every result carries a certificate that [`check_certificate`] can verify in
//! exact arithmetic, independently of which backend produced it.

mod certificate;
mod simplex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{ExtendedValue, Rational, Scalar, Tolerances};

pub use certificate::{check_certificate, check_certificate_with};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("iteration limit of {0} exceeded")]
    IterationLimitExceeded(usize),
}

/// Selects the arithmetic used for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Exact,
    Float,
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(format!("unknown backend `{other}`")),
        }
    }
}

/// One `coeffs . x <= rhs` row. Coefficients are sorted by index and nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct Row<S> {
    pub coeffs: Vec<(usize, S)>,
    pub rhs: S,
}

impl<S: Scalar> Row<S> {
    pub fn new(coeffs: impl IntoIterator<Item = (usize, S)>, rhs: S) -> Self {
        let mut coeffs: Vec<(usize, S)> = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        coeffs.sort_by_key(|(i, _)| *i);
        // merge duplicates
        let mut merged: Vec<(usize, S)> = Vec::with_capacity(coeffs.len());
        for (i, v) in coeffs {
            match merged.last_mut() {
                Some((j, w)) if *j == i => *w = w.clone() + v,
                _ => merged.push((i, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        Row { coeffs: merged, rhs }
    }

    pub fn activity(&self, x: &[S]) -> S {
        self.coeffs
            .iter()
            .fold(S::zero(), |acc, (i, a)| acc + a.clone() * x[*i].clone())
    }

    pub fn negated(&self) -> Self {
        Row {
            coeffs: self.coeffs.iter().map(|(i, a)| (*i, -a.clone())).collect(),
            rhs: -self.rhs.clone(),
        }
    }

    pub fn convert<T: Scalar>(&self) -> Row<T> {
        Row {
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, a)| (*i, T::from_rational(&a.to_rational())))
                .collect(),
            rhs: T::from_rational(&self.rhs.to_rational()),
        }
    }
}

/// `{x in R^n : rows, lower <= x <= upper}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<S> {
    pub n: usize,
    pub rows: Vec<Row<S>>,
    pub lower: Vec<ExtendedValue<S>>,
    pub upper: Vec<ExtendedValue<S>>,
}

impl<S: Scalar> LinearSystem<S> {
    /// System with `n` free variables and no rows.
    pub fn free(n: usize) -> Self {
        LinearSystem {
            n,
            rows: Vec::new(),
            lower: vec![ExtendedValue::NegInf; n],
            upper: vec![ExtendedValue::PosInf; n],
        }
    }

    /// Box `[lo, hi]^n` without rows.
    pub fn boxed(n: usize, lo: S, hi: S) -> Self {
        LinearSystem {
            n,
            rows: Vec::new(),
            lower: vec![ExtendedValue::Finite(lo); n],
            upper: vec![ExtendedValue::Finite(hi); n],
        }
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn with_row(mut self, row: Row<S>) -> Self {
        self.rows.push(row);
        self
    }

    pub fn push_row(&mut self, row: Row<S>) {
        self.rows.push(row);
    }

    pub fn validate(&self) -> Result<(), LpError> {
        if self.lower.len() != self.n || self.upper.len() != self.n {
            return Err(LpError::DimensionMismatch(format!(
                "{} variables but {} lower / {} upper bounds",
                self.n,
                self.lower.len(),
                self.upper.len()
            )));
        }
        for (r, row) in self.rows.iter().enumerate() {
            if let Some((i, _)) = row.coeffs.iter().find(|(i, _)| *i >= self.n) {
                return Err(LpError::DimensionMismatch(format!(
                    "row {r} references variable {i} but n = {}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Whether `x` satisfies all rows and bounds within `tol`.
    pub fn contains(&self, x: &[S], tol: &S) -> bool {
        x.len() == self.n
            && self
                .rows
                .iter()
                .all(|row| row.activity(x) <= row.rhs.clone() + tol.clone())
            && x.iter().zip(&self.lower).all(|(v, l)| match l {
                ExtendedValue::Finite(l) => *v >= l.clone() - tol.clone(),
                ExtendedValue::NegInf => true,
                ExtendedValue::PosInf => false,
            })
            && x.iter().zip(&self.upper).all(|(v, u)| match u {
                ExtendedValue::Finite(u) => *v <= u.clone() + tol.clone(),
                ExtendedValue::PosInf => true,
                ExtendedValue::NegInf => false,
            })
    }

    /// Rows plus one row per finite bound (`x_j <= u_j`, `-x_j <= -l_j`).
    pub fn rows_with_bounds(&self) -> Vec<Row<S>> {
        let mut rows = self.rows.clone();
        for j in 0..self.n {
            if let ExtendedValue::Finite(u) = &self.upper[j] {
                rows.push(Row::new([(j, S::one())], u.clone()));
            }
            if let ExtendedValue::Finite(l) = &self.lower[j] {
                rows.push(Row::new([(j, -S::one())], -l.clone()));
            }
        }
        rows
    }

    pub fn convert<T: Scalar>(&self) -> LinearSystem<T> {
        LinearSystem {
            n: self.n,
            rows: self.rows.iter().map(Row::convert).collect(),
            lower: self.lower.iter().map(ExtendedValue::convert).collect(),
            upper: self.upper.iter().map(ExtendedValue::convert).collect(),
        }
    }
}

/// Certified outcome of an LP solve.
#[derive(Debug, Clone, PartialEq)]
pub enum LpResult<S> {
    /// `dual_row >= 0` are row multipliers; `dual_bound = c + A^T dual_row` are the
    /// reduced costs, positive entries priced at lower bounds, negative at upper.
    Optimal {
        value: S,
        point: Vec<S>,
        dual_row: Vec<S>,
        dual_bound: Vec<S>,
    },
    /// `y >= 0` with `min_{l<=x<=u} (y^T A) x > y^T b`.
    Infeasible { farkas_row: Vec<S> },
    /// `A r <= 0`, `r` respects infinite bounds only, `c . r < 0`.
    Unbounded { ray: Vec<S> },
}

impl<S: Scalar> LpResult<S> {
    /// Minimum value with the `+inf` / `-inf` conventions for empty / unbounded.
    pub fn value(&self) -> ExtendedValue<S> {
        match self {
            LpResult::Optimal { value, .. } => ExtendedValue::Finite(value.clone()),
            LpResult::Infeasible { .. } => ExtendedValue::PosInf,
            LpResult::Unbounded { .. } => ExtendedValue::NegInf,
        }
    }

    pub fn point(&self) -> Option<&[S]> {
        match self {
            LpResult::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, LpResult::Optimal { .. })
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpResult::Infeasible { .. })
    }
}

/// Solver configuration. Tolerances default per backend.
#[derive(Debug, Clone)]
pub struct LpOptions<S> {
    pub tolerances: Tolerances<S>,
    pub max_iterations: usize,
    /// Consecutive degenerate pivots, as a multiple of `m + n`, before Bland's rule.
    pub bland_after: usize,
}

impl<S: Scalar> Default for LpOptions<S> {
    fn default() -> Self {
        LpOptions {
            tolerances: S::default_tolerances(),
            max_iterations: 200_000,
            bland_after: 10,
        }
    }
}

/// Minimizes `objective . x` over `system`.
pub fn lp_solve<S: Scalar>(
    system: &LinearSystem<S>,
    objective: &[S],
    options: &LpOptions<S>,
) -> Result<LpResult<S>, LpError> {
    system.validate()?;
    if objective.len() != system.n {
        return Err(LpError::DimensionMismatch(format!(
            "objective has {} entries but n = {}",
            objective.len(),
            system.n
        )));
    }
    simplex::solve(system, objective, options)
}

/// [`lp_solve`] with the default options of the scalar type.
pub fn solve_default<S: Scalar>(system: &LinearSystem<S>, objective: &[S]) -> Result<LpResult<S>, LpError> {
    lp_solve(system, objective, &LpOptions::default())
}

/// Solves an exact system with the requested backend and lifts the result back
/// to rationals. Float results are converted, not re-certified.
pub fn solve_with_backend(
    system: &LinearSystem<Rational>,
    objective: &[Rational],
    backend: Backend,
) -> Result<LpResult<Rational>, LpError> {
    match backend {
        Backend::Exact => solve_default(system, objective),
        Backend::Float => {
            let sys: LinearSystem<f64> = system.convert();
            let c: Vec<f64> = crate::scalar::convert_vec(objective);
            Ok(convert_result(&solve_default(&sys, &c)?))
        }
    }
}

pub fn convert_result<A: Scalar, B: Scalar>(result: &LpResult<A>) -> LpResult<B> {
    use crate::scalar::convert_vec;
    match result {
        LpResult::Optimal {
            value,
            point,
            dual_row,
            dual_bound,
        } => LpResult::Optimal {
            value: B::from_rational(&value.to_rational()),
            point: convert_vec(point),
            dual_row: convert_vec(dual_row),
            dual_bound: convert_vec(dual_bound),
        },
        LpResult::Infeasible { farkas_row } => LpResult::Infeasible {
            farkas_row: convert_vec(farkas_row),
        },
        LpResult::Unbounded { ray } => LpResult::Unbounded { ray: convert_vec(ray) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn r(n: i64) -> Rational {
        ratio(n, 1)
    }

    fn fifth_box() -> LinearSystem<Rational> {
        LinearSystem::boxed(2, r(0), ratio(1, 5))
    }

    #[test]
    fn box_vertex_optimum() {
        let res = solve_default(&fifth_box(), &[r(-1), r(-1)]).unwrap();
        match &res {
            LpResult::Optimal { value, point, .. } => {
                assert_eq!(*value, ratio(-2, 5));
                assert_eq!(point, &vec![ratio(1, 5), ratio(1, 5)]);
            }
            other => panic!("expected optimal, got {other:?}"),
        }
        assert!(check_certificate(&fifth_box(), &[r(-1), r(-1)], &res));
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        // x1 <= 0 and x1 >= 1 as rows
        let sys = LinearSystem::free(1)
            .with_row(Row::new([(0, r(1))], r(0)))
            .with_row(Row::new([(0, r(-1))], r(-1)));
        let res = solve_default(&sys, &[r(1)]).unwrap();
        assert!(res.is_infeasible());
        assert!(check_certificate(&sys, &[r(1)], &res));

        let crossed = LinearSystem {
            n: 1,
            rows: vec![],
            lower: vec![ExtendedValue::Finite(r(1))],
            upper: vec![ExtendedValue::Finite(r(0))],
        };
        let res = solve_default(&crossed, &[r(1)]).unwrap();
        assert!(res.is_infeasible());
        assert!(check_certificate(&crossed, &[r(1)], &res));
    }

    #[test]
    fn fifth_box_with_x1_at_least_one_is_infeasible() {
        let sys = fifth_box().with_row(Row::new([(0, r(-1))], r(-1)));
        let res = solve_default(&sys, &[r(-1), r(-1)]).unwrap();
        assert!(res.is_infeasible());
        assert!(check_certificate(&sys, &[r(-1), r(-1)], &res));
    }

    #[test]
    fn unbounded_ray() {
        let sys = LinearSystem {
            n: 2,
            rows: vec![Row::new([(0, r(1)), (1, r(-1))], r(1))],
            lower: vec![ExtendedValue::Finite(r(0)), ExtendedValue::Finite(r(0))],
            upper: vec![ExtendedValue::PosInf, ExtendedValue::PosInf],
        };
        let res = solve_default(&sys, &[r(-1), r(0)]).unwrap();
        assert!(matches!(res, LpResult::Unbounded { .. }));
        assert_eq!(res.value(), ExtendedValue::NegInf);
        assert!(check_certificate(&sys, &[r(-1), r(0)], &res));
    }

    #[test]
    fn free_variables_and_equalities() {
        // min x + y s.t. x - y = 1 (two rows), y >= -3, x free
        let sys = LinearSystem {
            n: 2,
            rows: vec![
                Row::new([(0, r(1)), (1, r(-1))], r(1)),
                Row::new([(0, r(-1)), (1, r(1))], r(-1)),
            ],
            lower: vec![ExtendedValue::NegInf, ExtendedValue::Finite(r(-3))],
            upper: vec![ExtendedValue::PosInf, ExtendedValue::PosInf],
        };
        let res = solve_default(&sys, &[r(1), r(1)]).unwrap();
        assert_eq!(res.value(), ExtendedValue::Finite(r(-5)));
        assert!(check_certificate(&sys, &[r(1), r(1)], &res));
    }

    #[test]
    fn dimension_mismatch() {
        let sys = fifth_box();
        assert!(matches!(
            lp_solve(&sys, &[r(1)], &LpOptions::default()),
            Err(LpError::DimensionMismatch(_))
        ));
        let bad = LinearSystem::free(1).with_row(Row::new([(3, r(1))], r(0)));
        assert!(matches!(
            solve_default(&bad, &[r(1)]),
            Err(LpError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn float_backend_matches_on_box() {
        let res = solve_with_backend(&fifth_box(), &[r(-1), r(-1)], Backend::Float).unwrap();
        let v = res.value().to_f64();
        assert!((v + 0.4).abs() < 1e-12);
    }

    #[test]
    fn determinism() {
        let sys = fifth_box().with_row(Row::new([(0, r(1)), (1, r(2))], ratio(1, 3)));
        let a = solve_default(&sys, &[r(-1), r(-1)]).unwrap();
        let b = solve_default(&sys, &[r(-1), r(-1)]).unwrap();
        assert_eq!(a, b);
    }
}
