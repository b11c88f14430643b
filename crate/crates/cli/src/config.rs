//! Run configuration: flags, then a `key = value` file, then defaults.
//!
//! File keys are the long flag names without dashes (`h`, `T`, `J`, `m`,
//! `n-max`, `h-range`, `T-range`, `n`, `bc`, `ground`, `pair`, `dump`,
//! `out`, `format`, `threads`, `lanczos-tol`, `only`). Lines starting with
//! `#` are comments.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use xychain_core::ChainParams;
use xychain_ed::Boundary;

use crate::error::{CliError, Result};
use crate::output::Format;
use crate::range::parse_grid;

#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    path: PathBuf,
    entries: BTreeMap<String, (usize, String)>,
}

impl ConfigFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
            path: path.to_path_buf(),
            line: 0,
            reason: e.to_string(),
        })?;
        Self::parse(path, &text)
    }

    pub fn parse(path: &Path, text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config {
                    path: path.to_path_buf(),
                    line: k + 1,
                    reason: format!("expected key = value, got '{line}'"),
                });
            };
            entries.insert(key.trim().to_string(), (k + 1, value.trim().to_string()));
        }
        Ok(Self {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// `flag` if given, otherwise the parsed file entry.
    pub fn pick<T: FromStr>(&self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, value)) => value.parse().map(Some).map_err(|e| CliError::Config {
                path: self.path.clone(),
                line: *line,
                reason: format!("{key}: {e}"),
            }),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }
}

pub fn require<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{flag} (flag or config entry)")))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    FnTable {
        params: ChainParams,
        n_max: usize,
    },
    Concurrence {
        m: usize,
        params: ChainParams,
    },
    CriticalField {
        m: usize,
    },
    CriticalTemps {
        m: usize,
        field: f64,
    },
    TcMax {
        m: usize,
    },
    Sweep {
        m: usize,
        fields: Vec<f64>,
        temperatures: Vec<f64>,
    },
    PhaseDiagram {
        m: usize,
        fields: Vec<f64>,
    },
    Surface {
        m: usize,
        fields: Vec<f64>,
        temperatures: Vec<f64>,
    },
    Ed {
        sites: usize,
        boundary: Boundary,
        field: f64,
        /// `None` for the ground state.
        temperature: Option<f64>,
        pair: (usize, usize),
        dump: Option<PathBuf>,
    },
    Verify {
        only: Option<Vec<usize>>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::FnTable { .. } => "fn-table",
            Command::Concurrence { .. } => "concurrence",
            Command::CriticalField { .. } => "critical-field",
            Command::CriticalTemps { .. } => "critical-temps",
            Command::TcMax { .. } => "tc-max",
            Command::Sweep { .. } => "sweep",
            Command::PhaseDiagram { .. } => "phase-diagram",
            Command::Surface { .. } => "surface",
            Command::Ed { .. } => "ed",
            Command::Verify { .. } => "verify",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub coupling: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// `None` lets rayon use every core.
    pub threads: Option<usize>,
    pub lanczos_tolerance: f64,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lanczos_tolerance > 0.0 && self.lanczos_tolerance.is_finite()) {
            return Err(CliError::Usage("--lanczos-tol must be positive".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        ChainParams::new(self.coupling, 0.0, 0.0)?;
        let grids: Vec<&[f64]> = match &self.command {
            Command::Sweep {
                fields,
                temperatures,
                ..
            }
            | Command::Surface {
                fields,
                temperatures,
                ..
            } => vec![fields, temperatures],
            Command::PhaseDiagram { fields, .. } => vec![fields],
            _ => vec![],
        };
        for g in grids {
            if g.is_empty() || g.windows(2).any(|w| w[1] <= w[0]) {
                return Err(CliError::Usage(
                    "grids must be non-empty and increasing".into(),
                ));
            }
        }
        Ok(())
    }
}

pub fn grid(value: Option<String>, flag: &str) -> Result<Vec<f64>> {
    parse_grid(&require(value, flag)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_values_fill_missing_flags() {
        let cfg = ConfigFile::parse(Path::new("run.cfg"), "# demo\nm = 3\nh = 0.75\n\nbc=open\n")
            .unwrap();
        assert_eq!(cfg.pick::<usize>("m", None).unwrap(), Some(3));
        assert_eq!(cfg.pick::<usize>("m", Some(2)).unwrap(), Some(2));
        assert_eq!(cfg.pick::<f64>("T", None).unwrap(), None);
        assert_eq!(
            cfg.pick::<Boundary>("bc", None).unwrap(),
            Some(Boundary::Open)
        );
        assert_eq!(cfg.keys().collect::<Vec<_>>(), vec!["bc", "h", "m"]);
    }

    #[test]
    fn malformed_files_point_at_the_line() {
        let err = ConfigFile::parse(Path::new("x"), "m = 2\nnonsense\n").unwrap_err();
        assert!(matches!(err, CliError::Config { line: 2, .. }));
        let cfg = ConfigFile::parse(Path::new("x"), "m = two\n").unwrap();
        assert!(matches!(
            cfg.pick::<usize>("m", None),
            Err(CliError::Config { line: 1, .. })
        ));
    }
}
