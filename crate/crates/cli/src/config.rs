//! JSON parameter files: keys `gamma0`, `rabi_re`, `rabi_im`, `detuning`,
//! `vic`. The interference switch accepts a boolean or the integers 0/1;
//! anything fractional is rejected.

use std::path::Path;

use anyhow::{bail, Context};
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub gamma0: Option<f64>,
    pub rabi_re: Option<f64>,
    pub rabi_im: Option<f64>,
    pub detuning: Option<f64>,
    pub vic: Option<VicSwitch>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum VicSwitch {
    Flag(bool),
    Level(f64),
}

impl VicSwitch {
    pub fn as_bool(&self) -> anyhow::Result<bool> {
        match self {
            VicSwitch::Flag(b) => Ok(*b),
            VicSwitch::Level(x) if *x == 0.0 => Ok(false),
            VicSwitch::Level(x) if *x == 1.0 => Ok(true),
            VicSwitch::Level(x) => {
                bail!("vic must be 0, 1, true or false; fractional value {x} rejected")
            }
        }
    }
}

pub fn load(path: &Path) -> anyhow::Result<ConfigFile> {
    let body = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let config: ConfigFile = serde_json::from_str(&body)
        .with_context(|| format!("parsing config {}", path.display()))?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_keys() {
        let c: ConfigFile = serde_json::from_str(
            r#"{"gamma0": 2.0, "rabi_re": 0.5, "rabi_im": -0.1, "detuning": 0.5, "vic": 1}"#,
        )
        .unwrap();
        assert_eq!(c.gamma0, Some(2.0));
        assert!(c.vic.unwrap().as_bool().unwrap());
    }

    #[test]
    fn vic_accepts_bool_and_binary_only() {
        let c: ConfigFile = serde_json::from_str(r#"{"vic": false}"#).unwrap();
        assert!(!c.vic.unwrap().as_bool().unwrap());
        let c: ConfigFile = serde_json::from_str(r#"{"vic": 0}"#).unwrap();
        assert!(!c.vic.unwrap().as_bool().unwrap());
        let c: ConfigFile = serde_json::from_str(r#"{"vic": 0.5}"#).unwrap();
        assert!(c.vic.unwrap().as_bool().is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<ConfigFile>(r#"{"omega": 1.0}"#).is_err());
    }
}
