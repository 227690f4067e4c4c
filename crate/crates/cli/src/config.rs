//! Flat `key = value` experiment files.
//!
//! ```text
//! # comment
//! command = verify-leibniz
//! tuple = s=1,p=4,q=4,r=2
//! family = random:alpha=2,seed=7
//! bandwidth = 8
//! bandwidth = 16
//! ```
//!
//! `command` names the subcommand; every other key becomes the flag of the
//! same name (underscores read as dashes), repeated keys give lists, and
//! `true`/`false` switch boolean flags. Keys the subcommand does not know are
//! rejected by the argument parser.

use std::fs;
use std::path::Path;

use torus_leibniz::{Error, Result};

/// Turns an experiment file into the equivalent argument list.
pub fn config_args(path: &Path) -> Result<Vec<String>> {
    let text = fs::read_to_string(path)?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<Vec<String>> {
    let mut command = None;
    let mut flags = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key = value, got '{line}'", number + 1)))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() {
            return Err(Error::Parse(format!("line {}: empty key", number + 1)));
        }
        if key == "command" {
            if command.replace(value.to_string()).is_some() {
                return Err(Error::Parse(format!("line {}: command given twice", number + 1)));
            }
            continue;
        }
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => {
                flags.push(format!("--{key}"));
                flags.push(value.to_string());
            }
        }
    }
    let command = command.ok_or_else(|| Error::Parse("missing key 'command'".into()))?;
    let mut args = vec![command];
    args.extend(flags);
    Ok(args)
}
