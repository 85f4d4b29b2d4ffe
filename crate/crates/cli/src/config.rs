//! Key=value configuration files and the flag/env/file/default resolution.
//!
//! Precedence: explicit CLI flag > `EMIN_LAB_SEED` (seed only) > config file
//! > built-in default. Config keys use the flag spelling without the leading
//! dashes, e.g. `field-dim = 4`. Lines starting with `#` are comments.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV_VAR: &str = "EMIN_LAB_SEED";

#[derive(Debug, Clone, Default)]
pub struct FileConfig {
    values: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config file {}", path.display()))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!(
                    "{}:{}: expected `key = value`, found `{raw}`",
                    path.display(),
                    lineno + 1
                );
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => match raw.parse::<T>() {
                Ok(v) => Ok(Some(v)),
                Err(e) => bail!("config key `{key}`: cannot parse `{raw}`: {e}"),
            },
        }
    }

    /// flag > config > default.
    pub fn resolve<T: FromStr + Clone>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        if let Some(v) = flag {
            return Ok(v);
        }
        Ok(self.get::<T>(key)?.unwrap_or(default))
    }

    /// Seed resolution: flag > EMIN_LAB_SEED > config > default.
    pub fn resolve_seed(&self, flag: Option<u64>) -> Result<u64> {
        if let Some(seed) = flag {
            return Ok(seed);
        }
        if let Ok(raw) = std::env::var(SEED_ENV_VAR) {
            return raw
                .parse::<u64>()
                .with_context(|| format!("{SEED_ENV_VAR} must be an unsigned 64-bit integer, got `{raw}`"));
        }
        Ok(self.get::<u64>("seed")?.unwrap_or(DEFAULT_SEED))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_config(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn parses_keys_and_comments() {
        let f = write_config("# comment\nsamples = 500\nfield-dim=4\n\nensemble = pure\n");
        let cfg = FileConfig::load(f.path()).unwrap();
        assert_eq!(cfg.get::<usize>("samples").unwrap(), Some(500));
        assert_eq!(cfg.get::<usize>("field-dim").unwrap(), Some(4));
        assert_eq!(cfg.get::<String>("ensemble").unwrap().as_deref(), Some("pure"));
        assert_eq!(cfg.get::<u64>("seed").unwrap(), None);
    }

    #[test]
    fn flag_beats_config_beats_default() {
        let f = write_config("samples = 500\n");
        let cfg = FileConfig::load(f.path()).unwrap();
        assert_eq!(cfg.resolve(Some(9usize), "samples", 1).unwrap(), 9);
        assert_eq!(cfg.resolve(None::<usize>, "samples", 1).unwrap(), 500);
        assert_eq!(cfg.resolve(None::<usize>, "missing", 1).unwrap(), 1);
    }

    #[test]
    fn rejects_malformed_lines() {
        let f = write_config("samples 500\n");
        assert!(FileConfig::load(f.path()).is_err());
    }

    #[test]
    fn rejects_unparseable_values() {
        let f = write_config("samples = many\n");
        let cfg = FileConfig::load(f.path()).unwrap();
        assert!(cfg.get::<usize>("samples").is_err());
    }
}
