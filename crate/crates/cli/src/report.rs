//! JSON run reports. Keys are emitted in sorted order and every number that
//! is not a plain count is an exact rational string, so two runs with the
//! same inputs print the same report apart from `wall_time_ms`.

use std::time::Duration;

use indel_cover::{format_rational, BoundReport, CoverReport};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

pub const WALL_TIME_KEY: &str = "wall_time_ms";

#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    parameters: Map<String, Value>,
    outputs: Map<String, Value>,
    verification: Option<Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            parameters: Map::new(),
            outputs: Map::new(),
            verification: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn verification(&mut self, cover: &CoverReport) -> &mut Self {
        self.verification = Some(json!({
            "covered": cover.covered,
            "radius": cover.radius,
            "direction": cover.direction.as_str(),
            "code_size": cover.code_size,
            "checked_space_size": cover.checked_space_size,
            "witness_uncovered": cover.witness_uncovered.as_ref().map(ToString::to_string),
            "density": cover.density.as_ref().map(format_rational),
        }));
        self
    }

    pub fn to_value(&self, elapsed: Option<Duration>) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), self.command.clone().into());
        top.insert("parameters".into(), Value::Object(self.parameters.clone()));
        top.insert("outputs".into(), Value::Object(self.outputs.clone()));
        if let Some(v) = &self.verification {
            top.insert("verification".into(), v.clone());
        }
        if let Some(d) = elapsed {
            top.insert(WALL_TIME_KEY.into(), (d.as_millis() as u64).into());
        }
        Value::Object(top)
    }
}

pub fn rational(v: &BigRational) -> Value {
    format_rational(v).into()
}

pub fn bound(b: &BoundReport) -> Value {
    json!({
        "kind": b.kind.to_string(),
        "value": format_rational(&b.value),
        "ceiling": b.ceiling.to_string(),
    })
}
