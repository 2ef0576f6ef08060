//! Resource settings. Each value comes from the first source that sets
//! it: command-line flag, environment, config file, built-in default.
//!
//! The config file is TOML:
//!
//! ```toml
//! cap = 2000000
//! subloop_bound = 64
//! timeout = 600
//! ```

use serde::Deserialize;

use bolkit_core::Limits;

use crate::catalog::BuildContext;
use crate::error::CliError;

pub const ENV_CAP: &str = "BOLKIT_CAP";
pub const ENV_SUBLOOP_BOUND: &str = "BOLKIT_SUBLOOP_BOUND";
pub const ENV_TIMEOUT: &str = "BOLKIT_TIMEOUT";
pub const DEFAULT_TIMEOUT_SECS: u64 = 600;
/// Read when no `--config` is given and the file exists.
pub const DEFAULT_CONFIG_FILE: &str = "bolkit.toml";

/// One layer of optional settings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub cap: Option<usize>,
    pub subloop_bound: Option<usize>,
    pub timeout: Option<u64>,
}

impl Settings {
    fn or(self, lower: Settings) -> Settings {
        Settings {
            cap: self.cap.or(lower.cap),
            subloop_bound: self.subloop_bound.or(lower.subloop_bound),
            timeout: self.timeout.or(lower.timeout),
        }
    }

    pub fn from_toml(text: &str, path: &str) -> Result<Settings, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("{path}: {}", e.message())))
    }

    pub fn from_env(lookup: impl Fn(&str) -> Option<String>) -> Result<Settings, CliError> {
        fn parse<T: std::str::FromStr>(name: &str, value: Option<String>) -> Result<Option<T>, CliError> {
            value
                .map(|v| {
                    v.trim()
                        .parse()
                        .map_err(|_| CliError::Config(format!("{name}={v} is not a non-negative integer")))
                })
                .transpose()
        }
        Ok(Settings {
            cap: parse(ENV_CAP, lookup(ENV_CAP))?,
            subloop_bound: parse(ENV_SUBLOOP_BOUND, lookup(ENV_SUBLOOP_BOUND))?,
            timeout: parse(ENV_TIMEOUT, lookup(ENV_TIMEOUT))?,
        })
    }
}

/// Resolved settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub limits: Limits,
    pub timeout_secs: u64,
}

impl Config {
    pub fn resolve(flags: Settings, env: Settings, file: Settings) -> Config {
        let s = flags.or(env).or(file);
        Config {
            limits: Limits {
                cap: s.cap.unwrap_or(Limits::DEFAULT_CAP),
                subloop_bound: s.subloop_bound.unwrap_or(Limits::DEFAULT_SUBLOOP_BOUND),
            },
            timeout_secs: s.timeout.unwrap_or(DEFAULT_TIMEOUT_SECS),
        }
    }

    /// Reads the environment and the config file (`path`, or the default
    /// file if present) and applies `flags` on top.
    pub fn load(flags: Settings, path: Option<&str>) -> Result<Config, CliError> {
        let env = Settings::from_env(|k| std::env::var(k).ok())?;
        let file = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{p}: {e}")))?;
                Settings::from_toml(&text, p)?
            }
            None => match std::fs::read_to_string(DEFAULT_CONFIG_FILE) {
                Ok(text) => Settings::from_toml(&text, DEFAULT_CONFIG_FILE)?,
                Err(_) => Settings::default(),
            },
        };
        Ok(Config::resolve(flags, env, file))
    }

    pub fn context(&self) -> BuildContext {
        BuildContext { limits: self.limits, timeout_secs: Some(self.timeout_secs) }
    }
}

impl Default for Config {
    fn default() -> Self {
        Config::resolve(Settings::default(), Settings::default(), Settings::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cap(c: usize) -> Settings {
        Settings { cap: Some(c), ..Settings::default() }
    }

    #[test]
    fn precedence() {
        assert_eq!(Config::resolve(cap(1), cap(2), cap(3)).limits.cap, 1);
        assert_eq!(Config::resolve(Settings::default(), cap(2), cap(3)).limits.cap, 2);
        assert_eq!(Config::resolve(Settings::default(), Settings::default(), cap(3)).limits.cap, 3);
        let d = Config::default();
        assert_eq!(d.limits, Limits::default());
        assert_eq!(d.timeout_secs, DEFAULT_TIMEOUT_SECS);
    }

    #[test]
    fn layers_merge_per_field() {
        let file = Settings::from_toml("subloop_bound = 10\ntimeout = 5\n", "f").unwrap();
        let env = Settings::from_env(|k| (k == ENV_TIMEOUT).then(|| "7".to_string())).unwrap();
        let c = Config::resolve(cap(100), env, file);
        assert_eq!((c.limits.cap, c.limits.subloop_bound, c.timeout_secs), (100, 10, 7));
    }

    #[test]
    fn bad_values() {
        assert!(Settings::from_env(|k| (k == ENV_CAP).then(|| "many".to_string())).is_err());
        assert!(Settings::from_toml("cpa = 1\n", "f").is_err());
    }
}
