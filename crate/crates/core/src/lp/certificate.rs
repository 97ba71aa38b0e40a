//! Exact verification of LP certificates.

use num_traits::{One, Signed, Zero};

use super::{LinearSystem, LpResult};
use crate::scalar::{convert_vec, ExtendedValue, Rational, Scalar, Tolerances};

/// Checks `result` in exact arithmetic, using the default tolerances of `S`
/// (zero for the exact backend).
pub fn check_certificate<S: Scalar>(system: &LinearSystem<S>, objective: &[S], result: &LpResult<S>) -> bool {
    let tol = S::default_tolerances();
    let tol = Tolerances {
        feasibility: tol.feasibility.to_rational(),
        optimality: tol.optimality.to_rational(),
        pivot: tol.pivot.to_rational(),
        objective_rel: tol.objective_rel.to_rational(),
        integrality: tol.integrality.to_rational(),
    };
    check_certificate_with(system, objective, result, &tol)
}

/// Checks `result` in exact arithmetic under explicit tolerances.
pub fn check_certificate_with<S: Scalar>(
    system: &LinearSystem<S>,
    objective: &[S],
    result: &LpResult<S>,
    tol: &Tolerances<Rational>,
) -> bool {
    if system.validate().is_err() || objective.len() != system.n {
        return false;
    }
    let sys: LinearSystem<Rational> = system.convert();
    let c: Vec<Rational> = convert_vec(objective);
    match result {
        LpResult::Optimal { point, dual_row, .. } => {
            check_optimal(&sys, &c, &convert_vec(point), &convert_vec(dual_row), tol)
        }
        LpResult::Infeasible { farkas_row } => check_farkas(&sys, &convert_vec(farkas_row), tol),
        LpResult::Unbounded { ray } => check_ray(&sys, &c, &convert_vec(ray), tol),
    }
}

fn bounds(sys: &LinearSystem<Rational>, j: usize) -> (Option<&Rational>, Option<&Rational>) {
    let lo = match &sys.lower[j] {
        ExtendedValue::Finite(v) => Some(v),
        _ => None,
    };
    let hi = match &sys.upper[j] {
        ExtendedValue::Finite(v) => Some(v),
        _ => None,
    };
    (lo, hi)
}

fn check_optimal(
    sys: &LinearSystem<Rational>,
    c: &[Rational],
    x: &[Rational],
    lambda: &[Rational],
    tol: &Tolerances<Rational>,
) -> bool {
    if x.len() != sys.n || lambda.len() != sys.m() {
        return false;
    }
    if !sys.contains(x, &tol.feasibility) {
        return false;
    }
    if lambda.iter().any(|l| *l < -tol.optimality.clone()) {
        return false;
    }
    let mut reduced = c.to_vec();
    for (row, l) in sys.rows.iter().zip(lambda) {
        for (j, a) in &row.coeffs {
            reduced[*j] += a * l;
        }
    }
    let mut dual = Rational::zero();
    for (row, l) in sys.rows.iter().zip(lambda) {
        dual -= &row.rhs * l;
    }
    let mut slack_budget = Rational::one();
    for (j, r) in reduced.iter().enumerate() {
        let (lo, hi) = bounds(sys, j);
        slack_budget += r.abs();
        if r.is_positive() {
            match lo {
                Some(l) => dual += r * l,
                None if *r <= tol.optimality => {}
                None => return false,
            }
        } else if r.is_negative() {
            match hi {
                Some(u) => dual += r * u,
                None if -r.clone() <= tol.optimality => {}
                None => return false,
            }
        }
    }
    slack_budget += lambda.iter().fold(Rational::zero(), |a, l| a + l.abs());
    let primal = c.iter().zip(x).fold(Rational::zero(), |a, (ci, xi)| a + ci * xi);
    let scale = if primal.abs() > Rational::one() {
        primal.abs()
    } else {
        Rational::one()
    };
    let allowed = &tol.objective_rel * scale + &tol.feasibility * slack_budget;
    (primal - dual).abs() <= allowed
}

fn check_farkas(sys: &LinearSystem<Rational>, y: &[Rational], tol: &Tolerances<Rational>) -> bool {
    if y.len() != sys.m() || y.iter().any(|v| v.is_negative()) {
        return false;
    }
    for j in 0..sys.n {
        if let (Some(l), Some(u)) = bounds(sys, j) {
            if l > u {
                return true;
            }
        }
        if sys.lower[j] == ExtendedValue::PosInf || sys.upper[j] == ExtendedValue::NegInf {
            return true;
        }
    }
    let mut g = vec![Rational::zero(); sys.n];
    let mut yb = Rational::zero();
    for (row, yi) in sys.rows.iter().zip(y) {
        if yi.is_zero() {
            continue;
        }
        yb += &row.rhs * yi;
        for (j, a) in &row.coeffs {
            g[*j] += a * yi;
        }
    }
    let mut min_activity = Rational::zero();
    for (j, gj) in g.iter().enumerate() {
        let (lo, hi) = bounds(sys, j);
        if gj.is_positive() {
            match lo {
                Some(l) => min_activity += gj * l,
                None if *gj <= tol.optimality => {}
                None => return false,
            }
        } else if gj.is_negative() {
            match hi {
                Some(u) => min_activity += gj * u,
                None if -gj.clone() <= tol.optimality => {}
                None => return false,
            }
        }
    }
    min_activity - yb > tol.feasibility
}

fn check_ray(sys: &LinearSystem<Rational>, c: &[Rational], r: &[Rational], tol: &Tolerances<Rational>) -> bool {
    if r.len() != sys.n {
        return false;
    }
    if sys.rows.iter().any(|row| row.activity(r) > tol.feasibility) {
        return false;
    }
    for (j, rj) in r.iter().enumerate() {
        let (lo, hi) = bounds(sys, j);
        if *rj > tol.feasibility && hi.is_some() {
            return false;
        }
        if *rj < -tol.feasibility.clone() && lo.is_some() {
            return false;
        }
    }
    let cr = c.iter().zip(r).fold(Rational::zero(), |a, (ci, ri)| a + ci * ri);
    cr < -tol.optimality.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve_default, Row};
    use crate::scalar::ratio;

    fn sample() -> (LinearSystem<f64>, Vec<f64>) {
        let sys = LinearSystem::boxed(2, 0.0, 1.0).with_row(Row::new([(0, 1.0), (1, 1.0)], 1.5));
        (sys, vec![-1.0, -2.0])
    }

    #[test]
    fn valid_float_certificate_passes() {
        let (sys, c) = sample();
        let res = solve_default(&sys, &c).unwrap();
        assert!(check_certificate(&sys, &c, &res));
    }

    #[test]
    fn point_violating_row_by_twice_tolerance_fails() {
        let (sys, c) = sample();
        let res = solve_default(&sys, &c).unwrap();
        let LpResult::Optimal {
            value,
            mut point,
            dual_row,
            dual_bound,
        } = res
        else {
            panic!("expected optimal");
        };
        // optimum is (1/2, 1); push x1 so that x1 + x2 = 1.5 + 2e-7
        point[0] += 2e-7;
        let bad = LpResult::Optimal {
            value,
            point,
            dual_row,
            dual_bound,
        };
        assert!(!check_certificate(&sys, &c, &bad));
    }

    #[test]
    fn negative_farkas_entry_fails() {
        let sys = LinearSystem::free(1)
            .with_row(Row::new([(0, ratio(1, 1))], ratio(0, 1)))
            .with_row(Row::new([(0, ratio(-1, 1))], ratio(-1, 1)));
        let good = LpResult::Infeasible {
            farkas_row: vec![ratio(1, 1), ratio(1, 1)],
        };
        assert!(check_certificate(&sys, &[ratio(0, 1)], &good));
        let bad = LpResult::Infeasible {
            farkas_row: vec![ratio(-1, 1), ratio(1, 1)],
        };
        assert!(!check_certificate(&sys, &[ratio(0, 1)], &bad));
    }

    #[test]
    fn wrong_optimal_value_fails() {
        let sys = LinearSystem::boxed(2, ratio(0, 1), ratio(1, 5));
        let c = vec![ratio(-1, 1), ratio(-1, 1)];
        // feasible but suboptimal point with zero duals
        let bad = LpResult::Optimal {
            value: ratio(0, 1),
            point: vec![ratio(0, 1), ratio(0, 1)],
            dual_row: vec![],
            dual_bound: c.clone(),
        };
        assert!(!check_certificate(&sys, &c, &bad));
    }
}
