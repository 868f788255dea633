use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

/// Keys accepted in a config file. Dashes and underscores are interchangeable.
const KNOWN_KEYS: &[&str] = &[
    "format",
    "alpha0",
    "phi",
    "xi_min",
    "xi_max",
    "steps",
    "xi",
    "alpha_max",
    "alpha_steps",
    "theta_points",
    "xi_plus",
    "xi_minus",
    "alpha0_minus",
    "half_width",
    "res",
    "r",
    "mode",
    "xi_convention",
    "eps",
    "omega",
    "l",
    "n_max",
    "r_max",
    "points",
];

/// `key = value` pairs; blank lines and lines starting with `#` are skipped.
#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('-', "_").to_ascii_lowercase()
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", i + 1)))?;
            let key = normalize(k);
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key `{}`",
                    i + 1,
                    k.trim()
                )));
            }
            values.insert(key, v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// The flag if given, else the config entry, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.raw(key) {
            Some(s) => s
                .parse()
                .map_err(|e| CliError::Usage(format!("config key `{key}`: cannot parse `{s}`: {e}"))),
            None => Ok(default),
        }
    }

    /// Like [`Config::pick`] for clap value enums.
    pub fn pick_enum<T: clap::ValueEnum>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.raw(key) {
            Some(s) => T::from_str(s, true).map_err(|e| CliError::Usage(format!("config key `{key}`: {e}"))),
            None => Ok(default),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        let c = Config::parse("# mandel sweep\nalpha0 = 3\n\nxi-min=0.1\n").unwrap();
        assert_eq!(c.raw("alpha0"), Some("3"));
        assert_eq!(c.raw("xi_min"), Some("0.1"));
        assert_eq!(c.pick(None, "xi_min", 0.5).unwrap(), 0.1);
        assert_eq!(c.pick(Some(0.2), "xi_min", 0.5).unwrap(), 0.2);
        assert_eq!(c.pick(None, "xi_max", 0.5).unwrap(), 0.5);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::parse("alpha0 3").is_err());
        assert!(Config::parse("colour = red").is_err());
        let c = Config::parse("steps = many").unwrap();
        assert!(c.pick::<usize>(None, "steps", 1).is_err());
    }
}
