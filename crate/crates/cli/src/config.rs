//! Flat `key = value` settings. File values load first, command-line flags
//! override them, and every value a command reads (defaults included) is
//! recorded so it can be echoed into output headers.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Bad invocation or configuration; maps to exit code 1.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

#[derive(Debug, Default, Clone)]
pub struct Settings {
    given: BTreeMap<String, String>,
    used: BTreeMap<String, String>,
}

impl Settings {
    /// Parses `key = value` lines. `#` starts a comment; blank lines are
    /// ignored; keys may use '-' or '_'.
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let mut given = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(usage(format!("config line {}: expected `key = value`, got {raw:?}", i + 1)));
            };
            let key = normalize_key(k);
            if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(usage(format!("config line {}: bad key {k:?}", i + 1)));
            }
            if given.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(usage(format!("config line {}: duplicate key {key}", i + 1)));
            }
        }
        Ok(Self { given, used: BTreeMap::new() })
    }

    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| usage(format!("cannot read config {}: {e}", p.display())))?;
                Self::parse(&text)
            }
        }
    }

    /// Flag override; `None` leaves any file value in place.
    pub fn set<V: ToString>(&mut self, key: &str, value: Option<V>) {
        if let Some(v) = value {
            self.given.insert(normalize_key(key), v.to_string());
        }
    }

    pub fn has(&self, key: &str) -> bool {
        self.given.contains_key(key)
    }

    fn raw(&mut self, key: &str, default: Option<String>) -> anyhow::Result<String> {
        let v = match self.given.get(key) {
            Some(v) => v.clone(),
            None => default.ok_or_else(|| usage(format!("missing required setting `{key}`")))?,
        };
        self.used.insert(key.to_string(), v.clone());
        Ok(v)
    }

    pub fn get<T: FromStr + ToString>(&mut self, key: &str, default: Option<T>) -> anyhow::Result<T>
    where
        T::Err: fmt::Display,
    {
        let v = self.raw(key, default.map(|d| d.to_string()))?;
        v.parse().map_err(|e| usage(format!("setting `{key}` = {v:?}: {e}")))
    }

    pub fn list<T: FromStr>(&mut self, key: &str, default: Option<&str>) -> anyhow::Result<Vec<T>>
    where
        T::Err: fmt::Display,
    {
        let v = self.raw(key, default.map(str::to_string))?;
        v.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|e| usage(format!("setting `{key}` item {s:?}: {e}"))))
            .collect()
    }

    /// Optional setting with no default; recorded only when present.
    pub fn opt<T: FromStr>(&mut self, key: &str) -> anyhow::Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.given.get(key).cloned() {
            None => Ok(None),
            Some(v) => {
                self.used.insert(key.to_string(), v.clone());
                v.parse().map(Some).map_err(|e| usage(format!("setting `{key}` = {v:?}: {e}")))
            }
        }
    }

    /// Fails on keys that were given but never read by the command.
    pub fn finish(&self) -> anyhow::Result<()> {
        let unknown: Vec<_> = self.given.keys().filter(|k| !self.used.contains_key(*k)).cloned().collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            Err(usage(format!("unknown setting(s) for this command: {}", unknown.join(", "))))
        }
    }

    /// Resolved settings as `key = value` lines, sorted by key.
    pub fn echo(&self) -> Vec<String> {
        self.used.iter().map(|(k, v)| format!("{k} = {v}")).collect()
    }

    pub fn resolved(&self) -> &BTreeMap<String, String> {
        &self.used
    }
}

fn normalize_key(k: &str) -> String {
    k.trim().replace('-', "_")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let mut s = Settings::parse("n = 2\nell = 4 # comment\n\nsigma-v = 1.5").unwrap();
        s.set("ell", Some(2.0));
        assert_eq!(s.get::<f64>("n", None).unwrap(), 2.0);
        assert_eq!(s.get::<f64>("ell", None).unwrap(), 2.0);
        assert_eq!(s.get::<f64>("sigma_v", None).unwrap(), 1.5);
        assert_eq!(s.get::<f64>("alpha", Some(-0.5)).unwrap(), -0.5);
        assert_eq!(s.echo(), ["alpha = -0.5", "ell = 2", "n = 2", "sigma_v = 1.5"]);
        s.finish().unwrap();
    }

    #[test]
    fn malformed_and_unknown_keys_are_usage_errors() {
        assert!(Settings::parse("n 2").is_err());
        assert!(Settings::parse("n = 1\nn = 2").is_err());
        let mut s = Settings::parse("bogus = 1").unwrap();
        let _ = s.get::<f64>("n", Some(2.0));
        assert!(s.finish().unwrap_err().downcast_ref::<Usage>().is_some());
    }

    #[test]
    fn lists_parse() {
        let mut s = Settings::parse("rho = 0.5, 1.0,2").unwrap();
        assert_eq!(s.list::<f64>("rho", None).unwrap(), vec![0.5, 1.0, 2.0]);
    }
}
