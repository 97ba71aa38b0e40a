use bbcompress::fixtures::{random_ip, RandomIpShape};
use bbcompress::lp::{lp_solve, LinearSystem, LpOptions, LpResult, Row};
use bbcompress::scalar::{convert_vec, ratio};
use bbcompress::{ExtendedValue, Rational};
use num_traits::Zero;
use proptest::prelude::*;

/// Minimum of `c . x` over a bounded 2-D system, by checking every
/// intersection of two constraint lines.
fn vertex_minimum(sys: &LinearSystem<Rational>, c: &[Rational]) -> ExtendedValue<Rational> {
    let rows = sys.rows_with_bounds();
    let dense = |r: &Row<Rational>| {
        let mut a = [Rational::zero(), Rational::zero()];
        for (j, v) in &r.coeffs {
            a[*j] = v.clone();
        }
        a
    };
    let mut best = ExtendedValue::PosInf;
    for i in 0..rows.len() {
        for k in i + 1..rows.len() {
            let (a, b) = (dense(&rows[i]), dense(&rows[k]));
            let det = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
            if det.is_zero() {
                continue;
            }
            let x0 = (rows[i].rhs.clone() * b[1].clone() - a[1].clone() * rows[k].rhs.clone()) / det.clone();
            let x1 = (a[0].clone() * rows[k].rhs.clone() - rows[i].rhs.clone() * b[0].clone()) / det;
            let x = [x0, x1];
            if rows.iter().all(|r| r.activity(&x) <= r.rhs) {
                let v = ExtendedValue::Finite(c[0].clone() * x[0].clone() + c[1].clone() * x[1].clone());
                best = best.min(v);
            }
        }
    }
    best
}

fn small_system(bounds: (i64, i64), rows: &[(i64, i64, i64)]) -> LinearSystem<Rational> {
    let mut sys = LinearSystem::boxed(2, ratio(bounds.0, 1), ratio(bounds.1, 1));
    for (a, b, r) in rows {
        sys.push_row(Row::new([(0, ratio(*a, 1)), (1, ratio(*b, 1))], ratio(*r, 1)));
    }
    sys
}

#[test]
fn exact_and_float_agree_on_random_programs() {
    for seed in 0..200u64 {
        let inst = random_ip(
            seed,
            RandomIpShape::new(1 + (seed as usize % 8), (seed as usize / 8) % 9, 4),
        );
        let exact = lp_solve(&inst.system, &inst.objective, &LpOptions::default()).unwrap();
        let fsys: LinearSystem<f64> = inst.system.convert();
        let fc: Vec<f64> = convert_vec(&inst.objective);
        let float = lp_solve(&fsys, &fc, &LpOptions::default()).unwrap();
        let (e, f) = (exact.value().to_f64(), float.value().to_f64());
        assert!((e - f).abs() <= 1e-7 * e.abs().max(1.0), "seed {seed}: {e} vs {f}");
    }
}

#[test]
fn optimal_results_carry_a_feasible_point() {
    for seed in 0..40 {
        let inst = random_ip(seed, RandomIpShape::new(3, 4, 3));
        let res = lp_solve(&inst.system, &inst.objective, &LpOptions::default()).unwrap();
        let x = res
            .point()
            .expect("box keeps the LP bounded and the anchor keeps it feasible");
        assert!(inst.system.contains(x, &Rational::zero()), "seed {seed}");
        let value: Rational = inst.objective.iter().zip(x).map(|(c, v)| c.clone() * v.clone()).sum();
        assert_eq!(ExtendedValue::Finite(value), res.value());
    }
}

#[test]
fn empty_and_unbounded_systems() {
    let empty = small_system((0, 1), &[(1, 1, -1)]);
    assert!(lp_solve(&empty, &[ratio(1, 1), ratio(0, 1)], &LpOptions::default())
        .unwrap()
        .is_infeasible());

    let open = LinearSystem::free(2).with_row(Row::new([(0, ratio(1, 1))], ratio(3, 1)));
    let res = lp_solve(&open, &[ratio(0, 1), ratio(1, 1)], &LpOptions::default()).unwrap();
    assert!(matches!(res, LpResult::Unbounded { .. }));
    assert_eq!(res.value(), ExtendedValue::NegInf);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simplex_matches_vertex_enumeration(
        lo in -3i64..=0,
        width in 1i64..=4,
        rows in prop::collection::vec((-3i64..=3, -3i64..=3, -4i64..=6), 0..5),
        c0 in -3i64..=3,
        c1 in -3i64..=3,
    ) {
        let sys = small_system((lo, lo + width), &rows);
        let c = [ratio(c0, 1), ratio(c1, 1)];
        let res = lp_solve(&sys, &c, &LpOptions::default()).unwrap();
        prop_assert_eq!(res.value(), vertex_minimum(&sys, &c));
    }
}
