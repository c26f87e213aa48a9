// Copyright 2026 The optqrc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Flat `key = value` config files and flag resolution.
//!
//! A value comes from the command line if given, else from the config file,
//! else from the built-in default. Every resolved value is recorded so the
//! run manifest can echo and hash the effective configuration.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::CliError;

/// Keys that do not change results and are left out of the config hash.
const UNHASHED: [&str; 3] = ["out", "jobs", "config"];

#[derive(Debug, Default)]
pub struct Settings {
    file: BTreeMap<String, String>,
    used: BTreeSet<String>,
    resolved: BTreeMap<String, String>,
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Config(format!(
                "config line {}: expected `key = value`",
                i + 1
            )));
        };
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Config(format!("config line {}: empty key", i + 1)));
        }
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(CliError::Config(format!(
                "config line {}: duplicate key `{key}`",
                i + 1
            )));
        }
    }
    Ok(map)
}

impl Settings {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let file = match path {
            Some(p) => {
                let text = fs::read_to_string(p)
                    .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        let mut s = Settings {
            file,
            ..Default::default()
        };
        if let Some(p) = path {
            s.resolved.insert("config".into(), p.display().to_string());
        }
        Ok(s)
    }

    /// Resolves `key` from the flag, then the file, then `default`.
    pub fn value<T>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T, CliError>
    where
        T: FromStr + Display,
        T::Err: Display,
    {
        self.used.insert(key.to_string());
        let v = match flag {
            Some(v) => v,
            None => match self.file.get(key) {
                Some(text) => text
                    .parse()
                    .map_err(|e| CliError::Config(format!("config `{key}`: {e}")))?,
                None => default,
            },
        };
        self.resolved.insert(key.to_string(), v.to_string());
        Ok(v)
    }

    /// Fails on config keys the command never asked for.
    pub fn check_unused(&self) -> Result<(), CliError> {
        let unknown: Vec<&String> = self.file.keys().filter(|k| !self.used.contains(*k)).collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(CliError::Config(format!("unknown config keys: {unknown:?}")))
        }
    }

    pub fn resolved(&self) -> &BTreeMap<String, String> {
        &self.resolved
    }

    /// SHA-256 over the sorted `key=value` lines that affect results.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for (k, v) in &self.resolved {
            if UNHASHED.contains(&k.as_str()) {
                continue;
            }
            h.update(format!("{k}={v}\n").as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Comma-separated list parsing for flag values.
pub fn parse_list<T>(key: &str, text: &str) -> Result<Vec<T>, CliError>
where
    T: FromStr,
    T::Err: Display,
{
    let items: Vec<T> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|e| CliError::Config(format!("`{key}` entry `{s}`: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err(CliError::Config(format!("`{key}` is empty")));
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let mut s = Settings {
            file: parse_config("# comment\nseeds = 7\nalpha=0.5\n").unwrap(),
            ..Default::default()
        };
        assert_eq!(s.value("seeds", Some(3usize), 1).unwrap(), 3);
        assert_eq!(s.value("alpha", None, 1.0).unwrap(), 0.5);
        assert_eq!(s.value("gates", None, 20usize).unwrap(), 20);
        s.check_unused().unwrap();
        assert_eq!(s.resolved()["seeds"], "3");
    }

    #[test]
    fn bad_config() {
        assert!(parse_config("novalue").is_err());
        assert!(parse_config("a=1\na=2").is_err());
        let mut s = Settings {
            file: parse_config("seeds = many\nextra = 1").unwrap(),
            ..Default::default()
        };
        assert!(s.value::<usize>("seeds", None, 1).is_err());
        assert!(s.check_unused().is_err());
    }

    #[test]
    fn hash_ignores_output_location() {
        let mut a = Settings::default();
        a.value("seeds", Some(3usize), 1).unwrap();
        a.value("out", Some("x".to_string()), String::new()).unwrap();
        let mut b = Settings::default();
        b.value("seeds", Some(3usize), 1).unwrap();
        b.value("out", Some("y".to_string()), String::new()).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<usize>("gates", "20, 50,100").unwrap(), vec![20, 50, 100]);
        assert!(parse_list::<usize>("gates", "20,x").is_err());
        assert!(parse_list::<usize>("gates", " , ").is_err());
    }
}
