use std::io::Read;

use serde::de::DeserializeOwned;
use toric_aut::format::{ConeSpec, FanSpec};
use toric_aut::surface::{CompleteFan2D, DEFAULT_TOWER_CAP};
use toric_aut::Cone;

use crate::{Failure, Payload};

pub const TOWER_CAP_VAR: &str = "TORIC_AUT_MAX_TOWER";

/// Inline JSON if it looks like JSON, stdin for `-`, otherwise a file.
pub fn read_source(source: &str) -> Result<String, Failure> {
    let trimmed = source.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(source.to_string());
    }
    if source == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(text);
    }
    std::fs::read_to_string(source).map_err(|e| Failure::Io(format!("{source}: {e}")))
}

fn payload_text(p: &Payload) -> Result<String, Failure> {
    match (&p.payload, &p.input) {
        (Some(_), Some(_)) => Err(Failure::Usage("give the payload either positionally or with --input, not both".into())),
        (Some(s), None) | (None, Some(s)) => read_source(s),
        (None, None) => Err(Failure::Usage("missing payload: pass JSON, a file path, or --input FILE|-".into())),
    }
}

pub fn parse_text<T: DeserializeOwned>(text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Parse(e.to_string()))
}

pub fn parse<T: DeserializeOwned>(p: &Payload) -> Result<T, Failure> {
    parse_text(&payload_text(p)?)
}

/// Malformed cone data is a parse error, not a domain refusal.
pub fn cone_of(spec: &ConeSpec) -> Result<Cone, Failure> {
    spec.to_cone().map_err(|e| Failure::Parse(e.to_string()))
}

pub fn cone(p: &Payload) -> Result<Cone, Failure> {
    cone_of(&parse::<ConeSpec>(p)?)
}

pub fn cone_from(source: &str) -> Result<Cone, Failure> {
    cone_of(&parse_text::<ConeSpec>(&read_source(source)?)?)
}

pub fn fan(p: &Payload) -> Result<CompleteFan2D, Failure> {
    parse::<FanSpec>(p)?.to_fan().map_err(|e| Failure::Parse(e.to_string()))
}

pub fn tower_cap() -> Result<usize, Failure> {
    match std::env::var(TOWER_CAP_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("{TOWER_CAP_VAR}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_TOWER_CAP),
    }
}
