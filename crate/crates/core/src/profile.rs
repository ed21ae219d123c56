//! Profile files: JSON documents listing each agent's value model.
//!
//! ```json
//! { "version": 1,
//!   "agents": [ { "model": "wp", "w": 1.0, "p": 0.5 },
//!               { "model": "exponential", "w": 10.0, "lambda": 0.08 } ] }
//! ```
//!
//! A multi-resource profile adds `resources` and gives each agent one model
//! per resource:
//!
//! ```json
//! { "version": 1, "resources": ["a", "b"],
//!   "agents": [ { "models": [ { "model": "wp", "w": 200.0, "p": 0.2 },
//!                             { "model": "wp", "w": 20.0, "p": 0.8 } ] } ] }
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::economy::{Economy, MultiEconomy};
use crate::model::ValueModel;
use crate::{Error, Result};

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Single(Economy),
    Multi(MultiEconomy),
}

impl Profile {
    pub fn n_agents(&self) -> usize {
        match self {
            Self::Single(e) => e.len(),
            Self::Multi(me) => me.n_agents(),
        }
    }

    pub fn n_resources(&self) -> usize {
        match self {
            Self::Single(_) => 1,
            Self::Multi(me) => me.n_resources(),
        }
    }
}

#[derive(Deserialize)]
struct RawFile {
    version: u32,
    #[serde(default)]
    resources: Option<Vec<String>>,
    agents: Vec<Value>,
}

#[derive(Serialize, Deserialize)]
struct MultiAgent {
    models: Vec<ValueModel>,
}

#[derive(Serialize)]
struct SingleFile<'a> {
    version: u32,
    agents: &'a [ValueModel],
}

#[derive(Serialize)]
struct MultiFile<'a> {
    version: u32,
    resources: &'a [String],
    agents: Vec<MultiAgent>,
}

fn agent_record<T: serde::de::DeserializeOwned>(value: Value, index: usize) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::Profile(format!("agent {}: {e}", index + 1)))
}

pub fn parse(text: &str) -> Result<Profile> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| Error::Profile(e.to_string()))?;
    if raw.version != VERSION {
        return Err(Error::Profile(format!("unsupported version {} (expected {VERSION})", raw.version)));
    }
    match raw.resources {
        None => {
            let agents = raw.agents.into_iter().enumerate().map(|(i, v)| agent_record(v, i)).collect::<Result<_>>()?;
            Ok(Profile::Single(Economy::new(agents)?))
        }
        Some(resources) => {
            let rows = raw
                .agents
                .into_iter()
                .enumerate()
                .map(|(i, v)| agent_record::<MultiAgent>(v, i).map(|a| a.models))
                .collect::<Result<_>>()?;
            Ok(Profile::Multi(MultiEconomy::with_labels(rows, resources)?))
        }
    }
}

pub fn to_string(profile: &Profile) -> String {
    let out = match profile {
        Profile::Single(e) => serde_json::to_string_pretty(&SingleFile { version: VERSION, agents: e.agents() }),
        Profile::Multi(me) => serde_json::to_string_pretty(&MultiFile {
            version: VERSION,
            resources: me.resources(),
            agents: me.models().iter().map(|row| MultiAgent { models: row.clone() }).collect(),
        }),
    };
    out.expect("profiles always serialize") + "\n"
}

pub fn load(path: &Path) -> Result<Profile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Profile(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn save(path: &Path, profile: &Profile) -> Result<()> {
    std::fs::write(path, to_string(profile)).map_err(|e| Error::Profile(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_single() {
        let e = Economy::new(vec![
            ValueModel::wp(1.0 / 3.0, 0.1 + 0.2),
            ValueModel::uniform(5.0, 3.0),
            ValueModel::exponential(10.0, 0.08),
            ValueModel::discrete(&[(100.0, 0.2), (-20.0, 0.4)], 0.4),
        ])
        .unwrap();
        let p = Profile::Single(e);
        assert_eq!(parse(&to_string(&p)).unwrap(), p);
    }

    #[test]
    fn round_trip_multi() {
        let me = MultiEconomy::with_labels(
            vec![vec![ValueModel::wp(200.0, 0.2), ValueModel::wp(20.0, 0.8)]],
            vec!["x".into(), "y".into()],
        )
        .unwrap();
        let p = Profile::Multi(me);
        assert_eq!(parse(&to_string(&p)).unwrap(), p);
    }

    #[test]
    fn sampled_profiles_reload_identically() {
        use crate::experiments::{sample_profile, Family, SamplerSpec};
        for family in [Family::Exponential { l: 10.0 }, Family::Uniform { a1_max: 1.0 }, Family::Wp { w_max: 1.0 }] {
            for m in [1, 3] {
                for seed in 0..20 {
                    let p = sample_profile(&SamplerSpec::new(family, 7, m), seed).unwrap();
                    assert_eq!(parse(&to_string(&p)).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn field_names() {
        let text = r#"{"version": 1, "agents": [
            {"model": "wp", "w": 1, "p": 0.5},
            {"model": "uniform", "a1": 5, "a2": 3},
            {"model": "exponential", "w": 10, "lambda": 0.08},
            {"model": "discrete", "atoms": [{"v": 40, "p": 0.4}, {"v": -10, "p": 0.4}], "q_inf": 0.2}
        ]}"#;
        let Profile::Single(e) = parse(text).unwrap() else { panic!() };
        assert_eq!(e.len(), 4);
    }

    #[test]
    fn errors_name_the_agent() {
        let text = r#"{"version": 1, "agents": [{"model": "wp", "w": 1, "p": 0.5}, {"model": "exponential", "w": 10, "lambda": 0.2}]}"#;
        let err = parse(text).unwrap_err();
        assert!(err.to_string().contains("agent 2: violates A3"), "{err}");
        let text = r#"{"version": 1, "agents": [{"model": "gamma", "k": 1}]}"#;
        assert!(parse(text).unwrap_err().to_string().contains("agent 1"));
        assert!(parse(r#"{"version": 2, "agents": []}"#).is_err());
    }
}
