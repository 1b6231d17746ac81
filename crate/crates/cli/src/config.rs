//! Flat `key = value` config files. Flags win over config values; the
//! CHIMERA_QSEARCH_WORKERS environment variable is the fallback for
//! `--workers`.

use std::collections::HashMap;
use std::path::Path;

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: HashMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Config, String> {
        let mut values = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", idx + 1))?;
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// flag > config > default
    pub fn resolve<T: Clone + std::str::FromStr>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, String> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(text) => text
                .parse::<T>()
                .map_err(|_| format!("config key `{key}`: cannot parse `{text}`")),
            None => Ok(default),
        }
    }

    /// flag > config > CHIMERA_QSEARCH_WORKERS > all cores
    pub fn resolve_workers(&self, flag: Option<usize>) -> Result<Option<usize>, String> {
        if let Some(w) = flag {
            return Ok(Some(w));
        }
        if let Some(text) = self.get("workers") {
            return text
                .parse::<usize>()
                .map(Some)
                .map_err(|_| format!("config key `workers`: cannot parse `{text}`"));
        }
        match std::env::var("CHIMERA_QSEARCH_WORKERS") {
            Ok(text) => text
                .parse::<usize>()
                .map(Some)
                .map_err(|_| format!("CHIMERA_QSEARCH_WORKERS: cannot parse `{text}`")),
            Err(_) => Ok(None),
        }
    }
}
