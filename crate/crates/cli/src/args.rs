//! Command-line flags and their resolution into a [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use xychain_core::ChainParams;
use xychain_ed::lanczos::LanczosOptions;
use xychain_ed::Boundary;

use crate::config::{grid, require, Command, ConfigFile, RunConfig};
use crate::error::{CliError, Result};
use crate::output::Format;

const AFTER_HELP: &str = "\
Ranges: a:b:step gives a, a+step, ... and includes b when the grid lands \
within half a step of it. A single number or a comma list also works.

Config files hold `key = value` lines named after the long flags \
(h, T, J, m, n-max, h-range, T-range, n, bc, ground, pair, dump, out, \
format, threads, lanczos-tol, only). Flags win over the file.

The default worker count comes from XYCHAIN_THREADS, else all cores.";

#[derive(Debug, Parser)]
#[command(
    name = "xychain",
    version,
    about = "Pair entanglement in the XX chain in a transverse field"
)]
#[command(after_help = AFTER_HELP)]
pub struct Cli {
    /// key = value file supplying defaults for any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Worker threads
    #[arg(long, global = true, env = "XYCHAIN_THREADS")]
    pub threads: Option<usize>,

    /// csv or json
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Exchange coupling J
    #[arg(long = "J", global = true)]
    pub coupling: Option<f64>,

    /// Residual bound for Lanczos ground states
    #[arg(long = "lanczos-tol", global = true)]
    pub lanczos_tol: Option<f64>,

    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct Point {
    /// Field h
    #[arg(long = "h")]
    pub field: Option<f64>,
    /// Temperature T
    #[arg(long = "T")]
    pub temperature: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Fermion correlators f_0..f_n
    FnTable {
        #[command(flatten)]
        point: Point,
        #[arg(long = "n-max")]
        n_max: Option<usize>,
    },
    /// Concurrence, witness and density-matrix entries at one point
    Concurrence {
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        point: Point,
    },
    /// Zero-temperature field where the pair becomes entangled
    CriticalField {
        #[arg(long)]
        m: Option<usize>,
    },
    /// Critical temperatures at fixed field
    CriticalTemps {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "h")]
        field: Option<f64>,
    },
    /// Field and height of the critical-temperature maximum
    TcMax {
        #[arg(long)]
        m: Option<usize>,
    },
    /// Concurrence on an h × T grid
    Sweep {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "h-range")]
        fields: Option<String>,
        #[arg(long = "T-range")]
        temperatures: Option<String>,
    },
    /// Critical temperatures along a field grid
    PhaseDiagram {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "h-range")]
        fields: Option<String>,
    },
    /// Concurrence surface; defaults to h in 0:1.5:0.01 and T in 0:0.5:0.005
    Surface {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long = "h-range")]
        fields: Option<String>,
        #[arg(long = "T-range")]
        temperatures: Option<String>,
    },
    /// Exact diagonalization of a finite chain
    Ed {
        /// Number of sites
        #[arg(long = "n")]
        sites: Option<usize>,
        /// open or periodic (default periodic)
        #[arg(long)]
        bc: Option<String>,
        /// Use the ground state
        #[arg(long, conflicts_with = "temperature")]
        ground: bool,
        /// Thermal state at this temperature (N ≤ 12)
        #[arg(long = "T")]
        temperature: Option<f64>,
        #[arg(long = "h")]
        field: Option<f64>,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pair: Option<Vec<usize>>,
        /// Binary dump of the ground state
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Oracle and acceptance checks with a pass/fail table
    Verify {
        /// Comma list of criterion numbers
        #[arg(long)]
        only: Option<String>,
    },
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse().map_err(|_| {
                CliError::Usage(format!("{what}: '{t}' is not a non-negative integer"))
            })
        })
        .collect()
}

fn distance(cfg: &ConfigFile, flag: Option<usize>) -> Result<usize> {
    let m = require(cfg.pick("m", flag)?, "m")?;
    if m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    Ok(m)
}

pub fn resolve(cli: Cli) -> Result<RunConfig> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::read(path)?,
        None => ConfigFile::default(),
    };
    let coupling = cfg.pick("J", cli.coupling)?.unwrap_or(1.0);
    let format = cfg
        .pick::<String>("format", cli.format)?
        .map(|s| s.parse::<Format>().map_err(CliError::Usage))
        .transpose()?
        .unwrap_or(Format::Csv);
    let point = |p: Point| -> Result<ChainParams> {
        let h = require(cfg.pick("h", p.field)?, "h")?;
        let t = require(cfg.pick("T", p.temperature)?, "T")?;
        Ok(ChainParams::new(coupling, h, t)?)
    };

    let command = match cli.command {
        Sub::FnTable { point: p, n_max } => Command::FnTable {
            params: point(p)?,
            n_max: require(cfg.pick("n-max", n_max)?, "n-max")?,
        },
        Sub::Concurrence { m, point: p } => Command::Concurrence {
            m: distance(&cfg, m)?,
            params: point(p)?,
        },
        Sub::CriticalField { m } => Command::CriticalField {
            m: distance(&cfg, m)?,
        },
        Sub::CriticalTemps { m, field } => Command::CriticalTemps {
            m: distance(&cfg, m)?,
            field: require(cfg.pick("h", field)?, "h")?,
        },
        Sub::TcMax { m } => Command::TcMax {
            m: distance(&cfg, m)?,
        },
        Sub::Sweep {
            m,
            fields,
            temperatures,
        } => Command::Sweep {
            m: distance(&cfg, m)?,
            fields: grid(cfg.pick("h-range", fields)?, "h-range")?,
            temperatures: grid(cfg.pick("T-range", temperatures)?, "T-range")?,
        },
        Sub::PhaseDiagram { m, fields } => Command::PhaseDiagram {
            m: distance(&cfg, m)?,
            fields: grid(cfg.pick("h-range", fields)?, "h-range")?,
        },
        Sub::Surface {
            m,
            fields,
            temperatures,
        } => Command::Surface {
            m: distance(&cfg, m)?,
            fields: grid(
                Some(cfg.pick("h-range", fields)?.unwrap_or("0:1.5:0.01".into())),
                "h-range",
            )?,
            temperatures: grid(
                Some(
                    cfg.pick("T-range", temperatures)?
                        .unwrap_or("0:0.5:0.005".into()),
                ),
                "T-range",
            )?,
        },
        Sub::Ed {
            sites,
            bc,
            ground,
            temperature,
            field,
            pair,
            dump,
        } => {
            let sites = require(cfg.pick("n", sites)?, "n")?;
            let boundary = match cfg.pick::<String>("bc", bc)? {
                Some(s) => s.parse::<Boundary>().map_err(CliError::Usage)?,
                None => Boundary::Periodic,
            };
            let temperature = if ground {
                None
            } else if let Some(t) = cfg.pick("T", temperature)? {
                Some(t)
            } else if cfg.pick::<bool>("ground", None)? == Some(true) {
                None
            } else {
                return Err(CliError::Usage("ed needs --ground or --T".into()));
            };
            let pair = match pair {
                Some(p) => p,
                None => parse_list(require(cfg.raw("pair"), "pair")?, "pair")?,
            };
            let [i, j] = pair[..] else {
                return Err(CliError::Usage("--pair takes two site indices".into()));
            };
            Command::Ed {
                sites,
                boundary,
                field: cfg.pick("h", field)?.unwrap_or(0.0),
                temperature,
                pair: (i, j),
                dump: cfg.pick("dump", dump)?,
            }
        }
        Sub::Verify { only } => Command::Verify {
            only: cfg
                .pick::<String>("only", only)?
                .map(|s| parse_list(&s, "only"))
                .transpose()?,
        },
    };

    let run = RunConfig {
        command,
        coupling,
        format,
        out: cfg.pick("out", cli.out)?,
        threads: cfg.pick("threads", cli.threads)?,
        lanczos_tolerance: cfg
            .pick("lanczos-tol", cli.lanczos_tol)?
            .unwrap_or(LanczosOptions::default().tolerance),
    };
    run.validate()?;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    fn parse(args: &[&str]) -> Result<RunConfig> {
        let cli = Cli::try_parse_from(std::iter::once("xychain").chain(args.iter().copied()))
            .map_err(|e| CliError::Usage(e.to_string()))?;
        resolve(cli)
    }

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn single_point_commands() {
        let c = parse(&["concurrence", "--m", "2", "--h", "0", "--T", "0"]).unwrap();
        assert_eq!(c.command.name(), "concurrence");
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.coupling, 1.0);
        let c = parse(&[
            "--J", "2", "fn-table", "--h", "2", "--T", "0", "--n-max", "3",
        ])
        .unwrap();
        match c.command {
            Command::FnTable { params, n_max } => {
                assert_eq!(params.coupling(), 2.0);
                assert_eq!(n_max, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ed_needs_a_state_choice() {
        assert!(parse(&["ed", "--n", "8", "--pair", "0", "2"]).is_err());
        let c = parse(&[
            "ed", "--n", "8", "--ground", "--pair", "0", "2", "--bc", "open",
        ])
        .unwrap();
        assert!(matches!(
            c.command,
            Command::Ed {
                temperature: None,
                boundary: Boundary::Open,
                pair: (0, 2),
                ..
            }
        ));
    }

    #[test]
    fn bad_input_is_a_usage_error() {
        assert!(matches!(
            parse(&["sweep", "--m", "2"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            parse(&[
                "sweep",
                "--m",
                "2",
                "--h-range",
                "0:1:0",
                "--T-range",
                "0.1"
            ]),
            Err(CliError::Range { .. })
        ));
        assert!(matches!(
            parse(&["critical-field", "--m", "0"]),
            Err(CliError::Usage(_))
        ));
        assert!(matches!(
            parse(&["--format", "xml", "critical-field", "--m", "2"]),
            Err(CliError::Usage(_))
        ));
        assert!(parse(&["critical-field", "--m", "2", "--bogus"]).is_err());
        assert!(matches!(
            parse(&["--lanczos-tol", "-1", "tc-max", "--m", "2"]),
            Err(CliError::Usage(_))
        ));
    }
}
