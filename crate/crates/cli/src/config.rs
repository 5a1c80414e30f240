//! Resolution of flag values: command line, then `--config` file, then
//! built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::{parse_range, Channel, Cli, Command, Format, Method};
use crate::CliError;

pub const DEFAULT_GRID_N: usize = 4000;
pub const DEFAULT_OSC_X_MAX: f64 = 12.0;

/// Keys mirror the long flag names.
#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ConfigFile {
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub grid_n: Option<usize>,
    pub x_max: Option<f64>,
    pub threads: Option<usize>,
    pub tolerance: Option<f64>,
    pub ell: Option<f64>,
    pub m: Option<u32>,
    pub levels: Option<usize>,
    pub z: Option<f64>,
    pub method: Option<Method>,
    pub channel: Option<Channel>,
    pub samples: Option<usize>,
    pub range: Option<String>,
    pub points: Option<usize>,
    pub e_osc: Option<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

/// Every knob after merging; command-specific defaults are applied by the
/// commands themselves.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub seed: u64,
    pub grid_n: usize,
    pub x_max: Option<f64>,
    pub threads: Option<usize>,
    pub tolerance: Option<f64>,
    pub ell: Option<f64>,
    pub m: Option<u32>,
    pub levels: Option<usize>,
    pub z: Option<f64>,
    pub method: Option<Method>,
    pub channel: Option<Channel>,
    pub samples: Option<usize>,
    pub range: Option<(f64, f64)>,
    pub points: Option<usize>,
    pub e_osc: Option<f64>,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self, CliError> {
        let file = match &cli.global.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let g = &cli.global;
        let (ell, m, levels, z, method, channel, samples, range, points, e_osc) = match &cli.command {
            Command::Spectrum(a) => (a.ell, None, a.levels, a.z, a.method, a.channel, None, None, None, None),
            Command::Verify(a) => (a.ell, a.m, None, a.z, None, None, a.samples, None, None, None),
            Command::Eigenfunction(a) => (a.ell, a.m, None, None, None, None, None, a.range, a.points, None),
            Command::Map(a) => (a.ell, a.m, None, a.z, None, None, None, None, None, a.e_osc),
        };
        let file_range = file
            .range
            .as_deref()
            .map(parse_range)
            .transpose()
            .map_err(|e| CliError::Usage(format!("config range: {e}")))?;
        let config = Self {
            format: g.format.or(file.format).unwrap_or_default(),
            output: g.output.clone().or(file.output),
            seed: g.seed.or(file.seed).unwrap_or(wigner_ks::DEFAULT_SEED),
            grid_n: g.grid_n.or(file.grid_n).unwrap_or(DEFAULT_GRID_N),
            x_max: g.x_max.or(file.x_max),
            threads: g.threads.or(file.threads),
            tolerance: g.tolerance.or(file.tolerance),
            ell: ell.or(file.ell),
            m: m.or(file.m),
            levels: levels.or(file.levels),
            z: z.or(file.z),
            method: method.or(file.method),
            channel: channel.or(file.channel),
            samples: samples.or(file.samples),
            range: range.or(file_range),
            points: points.or(file.points),
            e_osc: e_osc.or(file.e_osc),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.grid_n < 2 {
            return Err(CliError::Usage(format!("--grid-n must be at least 2, got {}", self.grid_n)));
        }
        if let Some(x) = self.x_max {
            positive("--x-max", x)?;
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(CliError::Usage(format!("--tolerance must be >= 0, got {t}")));
            }
        }
        if let Some(z) = self.z {
            positive("--z", z)?;
        }
        if self.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        Ok(())
    }

    /// `--ell` as a nonnegative integer.
    pub fn integer_ell(&self) -> Result<u32, CliError> {
        let ell = self.ell.unwrap_or(0.0);
        if ell >= 0.0 && ell.fract() == 0.0 && ell <= u32::MAX as f64 {
            Ok(ell as u32)
        } else {
            Err(CliError::Usage(format!("--ell must be a nonnegative integer here, got {ell}")))
        }
    }

    pub fn z(&self) -> f64 {
        self.z.unwrap_or(1.0)
    }
}

fn positive(name: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} must be positive, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;
    use std::io::Write;

    fn resolve(args: &[&str]) -> Result<RunConfig, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("wigner-ks").chain(args.iter().copied())).unwrap();
        RunConfig::resolve(&cli)
    }

    #[test]
    fn defaults() {
        let c = resolve(&["spectrum", "wigner"]).unwrap();
        assert_eq!((c.seed, c.grid_n, c.format), (42, 4000, Format::Csv));
        assert_eq!(c.x_max, None);
    }

    #[test]
    fn flags_beat_config() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, r#"{{"seed": 7, "grid-n": 100, "ell": 2, "format": "json"}}"#).unwrap();
        let path = file.path().to_str().unwrap();
        let c = resolve(&["spectrum", "hydrogen", "--config", path, "--seed", "9"]).unwrap();
        assert_eq!((c.seed, c.grid_n, c.ell, c.format), (9, 100, Some(2.0), Format::Json));
    }

    #[test]
    fn unknown_config_key_is_usage_error() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        write!(file, r#"{{"sed": 7}}"#).unwrap();
        let path = file.path().to_str().unwrap();
        assert!(matches!(resolve(&["map", "--config", path]), Err(CliError::Usage(_))));
    }

    #[test]
    fn range_checks() {
        assert!(matches!(resolve(&["spectrum", "wigner", "--grid-n", "1"]), Err(CliError::Usage(_))));
        assert!(matches!(resolve(&["map", "--z", "-1"]), Err(CliError::Usage(_))));
        let c = resolve(&["map", "--ell", "1.5"]).unwrap();
        assert!(c.integer_ell().is_err());
        assert_eq!(parse_range("0,20"), Ok((0.0, 20.0)));
        assert!(parse_range("5,1").is_err());
    }
}
