//! Integer programs `min c.x` over a bounded polyhedron, plus their file formats.

mod json;
mod mps;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lp::LinearSystem;
use crate::scalar::{convert_vec, ExtendedValue, Rational, Scalar};

pub use json::{parse_json_instance, write_json_instance};
pub use mps::{parse_mps, write_mps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("syntax error on line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("unsupported feature: {0}")]
    Unsupported(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("value {0} cannot be written as a terminating decimal")]
    Unrepresentable(String),
}

/// `min objective . x` over `system`, with `integer[j]` marking integral variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<S> {
    pub name: String,
    pub objective: Vec<S>,
    pub system: LinearSystem<S>,
    pub integer: Vec<bool>,
    /// Valid primal bound, used as the branch-and-bound incumbent.
    pub known_optimal_value: Option<ExtendedValue<S>>,
    /// Set when the source was a maximization and `objective` was negated.
    pub sense_flipped: bool,
}

impl<S: Scalar> Instance<S> {
    pub fn new(name: impl Into<String>, objective: Vec<S>, system: LinearSystem<S>, integer: Vec<bool>) -> Self {
        Instance {
            name: name.into(),
            objective,
            system,
            integer,
            known_optimal_value: None,
            sense_flipped: false,
        }
    }

    /// Pure integer program over `system`.
    pub fn pure(name: impl Into<String>, objective: Vec<S>, system: LinearSystem<S>) -> Self {
        let n = system.n;
        Self::new(name, objective, system, vec![true; n])
    }

    pub fn with_optimal_value(mut self, value: ExtendedValue<S>) -> Self {
        self.known_optimal_value = Some(value);
        self
    }

    pub fn n(&self) -> usize {
        self.system.n
    }

    pub fn m(&self) -> usize {
        self.system.m()
    }

    pub fn integer_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.integer.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }

    /// Converts a minimization value back to the orientation of the source file.
    pub fn report_value(&self, v: &ExtendedValue<S>) -> ExtendedValue<S> {
        if !self.sense_flipped {
            return v.clone();
        }
        match v {
            ExtendedValue::NegInf => ExtendedValue::PosInf,
            ExtendedValue::PosInf => ExtendedValue::NegInf,
            ExtendedValue::Finite(x) => ExtendedValue::Finite(-x.clone()),
        }
    }

    pub fn convert<T: Scalar>(&self) -> Instance<T> {
        Instance {
            name: self.name.clone(),
            objective: convert_vec(&self.objective),
            system: self.system.convert(),
            integer: self.integer.clone(),
            known_optimal_value: self.known_optimal_value.as_ref().map(ExtendedValue::convert),
            sense_flipped: self.sense_flipped,
        }
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        self.system
            .validate()
            .map_err(|e| InstanceError::Schema(e.to_string()))?;
        if self.objective.len() != self.n() || self.integer.len() != self.n() {
            return Err(InstanceError::Schema(format!(
                "objective has {} entries and integrality mask {}, expected {}",
                self.objective.len(),
                self.integer.len(),
                self.n()
            )));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, hex encoded. The known optimal
    /// value is not part of the hash.
    pub fn content_hash(&self) -> String {
        let mut exact: Instance<Rational> = self.convert();
        exact.known_optimal_value = None;
        let mut hasher = Sha256::new();
        hasher.update(write_json_instance(&exact).as_bytes());
        hex::encode(hasher.finalize())
    }
}
