use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Instance, InstanceError};
use crate::lp::{LinearSystem, Row};
use crate::scalar::{ExtendedValue, Rational, Scalar};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    name: String,
    n: usize,
    m: usize,
    objective: Vec<String>,
    rows: Vec<RowDoc>,
    lb: Vec<String>,
    ub: Vec<String>,
    integer: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    optimal_value: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    sense_flipped: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowDoc {
    coeffs: BTreeMap<usize, String>,
    rhs: String,
}

fn scalar(text: &str, what: &str) -> Result<Rational, InstanceError> {
    Rational::parse_text(text).ok_or_else(|| InstanceError::Schema(format!("bad {what} `{text}`")))
}

fn extended(text: &str, what: &str) -> Result<ExtendedValue<Rational>, InstanceError> {
    ExtendedValue::parse_text(text).ok_or_else(|| InstanceError::Schema(format!("bad {what} `{text}`")))
}

/// Reads the native JSON instance format. Numbers are `"p/q"` strings.
pub fn parse_json_instance(text: &str) -> Result<Instance<Rational>, InstanceError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| InstanceError::Schema(e.to_string()))?;
    let n = doc.n;
    if doc.objective.len() != n || doc.lb.len() != n || doc.ub.len() != n || doc.integer.len() != n {
        return Err(InstanceError::Schema(format!(
            "vectors must have length n = {n} (objective {}, lb {}, ub {}, integer {})",
            doc.objective.len(),
            doc.lb.len(),
            doc.ub.len(),
            doc.integer.len()
        )));
    }
    if doc.rows.len() != doc.m {
        return Err(InstanceError::Schema(format!(
            "m = {} but {} rows given",
            doc.m,
            doc.rows.len()
        )));
    }
    let objective = doc
        .objective
        .iter()
        .map(|t| scalar(t, "objective coefficient"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(doc.m);
    for (r, row) in doc.rows.iter().enumerate() {
        let mut coeffs = Vec::with_capacity(row.coeffs.len());
        for (idx, v) in &row.coeffs {
            if *idx >= n {
                return Err(InstanceError::Schema(format!("row {r} references variable {idx}")));
            }
            coeffs.push((*idx, scalar(v, "coefficient")?));
        }
        let row = Row::new(coeffs, scalar(&row.rhs, "rhs")?);
        if row.coeffs.is_empty() {
            return Err(InstanceError::Schema(format!("row {r} has no nonzero coefficient")));
        }
        rows.push(row);
    }
    let lower = doc
        .lb
        .iter()
        .map(|t| extended(t, "lower bound"))
        .collect::<Result<Vec<_>, _>>()?;
    let upper = doc
        .ub
        .iter()
        .map(|t| extended(t, "upper bound"))
        .collect::<Result<Vec<_>, _>>()?;
    let known_optimal_value = doc
        .optimal_value
        .as_deref()
        .map(|t| extended(t, "optimal value"))
        .transpose()?;
    Ok(Instance {
        name: doc.name,
        objective,
        system: LinearSystem { n, rows, lower, upper },
        integer: doc.integer,
        known_optimal_value,
        sense_flipped: doc.sense_flipped,
    })
}

/// Writes the native JSON instance format.
pub fn write_json_instance<S: Scalar>(instance: &Instance<S>) -> String {
    let doc = InstanceDoc {
        name: instance.name.clone(),
        n: instance.n(),
        m: instance.m(),
        objective: instance.objective.iter().map(Scalar::to_text).collect(),
        rows: instance
            .system
            .rows
            .iter()
            .map(|row| RowDoc {
                coeffs: row.coeffs.iter().map(|(i, v)| (*i, v.to_text())).collect(),
                rhs: row.rhs.to_text(),
            })
            .collect(),
        lb: instance.system.lower.iter().map(ExtendedValue::to_text).collect(),
        ub: instance.system.upper.iter().map(ExtendedValue::to_text).collect(),
        integer: instance.integer.clone(),
        optimal_value: instance.known_optimal_value.as_ref().map(ExtendedValue::to_text),
        sense_flipped: instance.sense_flipped,
    };
    serde_json::to_string(&doc).expect("instance serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn sample() -> Instance<Rational> {
        let system = LinearSystem::boxed(2, ratio(0, 1), ratio(1, 5))
            .with_row(Row::new([(0, ratio(1, 1)), (1, ratio(-3, 2))], ratio(1, 3)));
        Instance::pure("box", vec![ratio(-1, 1), ratio(-1, 1)], system)
            .with_optimal_value(ExtendedValue::Finite(ratio(0, 1)))
    }

    #[test]
    fn round_trip() {
        let inst = sample();
        let text = write_json_instance(&inst);
        assert_eq!(parse_json_instance(&text).unwrap(), inst);
    }

    #[test]
    fn fractional_bound_on_integer_variable_is_accepted() {
        let text = r#"{"name":"x","n":1,"m":0,"objective":["1"],"rows":[],
            "lb":["1/2"],"ub":["7/3"],"integer":[true]}"#;
        let inst = parse_json_instance(text).unwrap();
        assert_eq!(inst.system.lower[0], ExtendedValue::Finite(ratio(1, 2)));
    }

    #[test]
    fn missing_objective_is_schema_error() {
        let text = r#"{"name":"x","n":1,"m":0,"rows":[],"lb":["0"],"ub":["1"],"integer":[true]}"#;
        assert!(matches!(parse_json_instance(text), Err(InstanceError::Schema(_))));
    }

    #[test]
    fn length_mismatch_is_schema_error() {
        let text = r#"{"name":"x","n":2,"m":0,"objective":["1"],"rows":[],"lb":["0"],"ub":["1"],"integer":[true]}"#;
        assert!(matches!(parse_json_instance(text), Err(InstanceError::Schema(_))));
    }
}
