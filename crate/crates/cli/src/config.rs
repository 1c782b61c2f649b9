//! Run configuration: an optional TOML document overridden by flags.

use std::path::{Path, PathBuf};

use clap::Args;
use matrixless::expansion::Space;
use matrixless::{CosinePoly, Error, Precision, Result, SymbolPair};
use serde::Deserialize;

pub const DEFAULT_N1: usize = 100;
pub const DEFAULT_LEVELS: usize = 5;
pub const DEFAULT_DIGITS: u32 = 60;
pub const DEFAULT_ORDERS: [usize; 3] = [256, 512, 1024];

/// Keys accepted in the `--config` document.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    l: Option<Vec<f64>>,
    g: Option<Vec<f64>>,
    n1: Option<usize>,
    #[serde(rename = "K")]
    max_level: Option<usize>,
    digits: Option<u32>,
    space: Option<String>,
    orders: Option<Vec<usize>>,
    levels: Option<Vec<usize>>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    table: Option<PathBuf>,
    cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// TOML file with any of the keys below; flags win over it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Cosine coefficients of l, e.g. "[2, -1, -1]".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub l: Option<String>,
    /// Cosine coefficients of the preconditioner g.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Coarse grid size.
    #[arg(long, global = true)]
    pub n1: Option<usize>,
    /// Number of expansion levels.
    #[arg(long = "K", global = true)]
    pub max_level: Option<usize>,
    /// Working digits for precompute; 0 selects double precision.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Expansion variable: s or lambda.
    #[arg(long, global = true)]
    pub space: Option<String>,
    /// Matrix orders for error sweeps.
    #[arg(long, global = true, value_delimiter = ',')]
    pub orders: Option<Vec<usize>>,
    /// Levels for error sweeps.
    #[arg(long, global = true, value_delimiter = ',')]
    pub levels: Option<Vec<usize>>,
    /// Output file (precompute, approx) or directory (errors).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Expansion table file.
    #[arg(long, global = true)]
    pub table: Option<PathBuf>,
    /// Directory for cached reference spectra.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub pair: SymbolPair,
    pub n1: usize,
    pub max_level: usize,
    pub precision: Precision,
    pub space: Space,
    pub orders: Vec<usize>,
    pub levels: Option<Vec<usize>>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub table: Option<PathBuf>,
    pub cache: Option<PathBuf>,
}

fn read_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn symbol(flag: Option<&str>, file: Option<Vec<f64>>, name: &str) -> Result<CosinePoly> {
    match (flag, file) {
        (Some(text), _) => text.parse(),
        (None, Some(coeffs)) => CosinePoly::new(coeffs),
        (None, None) => Err(Error::Parse(format!("symbol {name} not given (use --{name} or the config file)"))),
    }
}

impl RunConfig {
    pub fn resolve(args: &ConfigArgs) -> Result<RunConfig> {
        let file = match &args.config {
            Some(path) => read_file(path)?,
            None => FileConfig::default(),
        };
        let l = symbol(args.l.as_deref(), file.l, "l")?;
        let g = symbol(args.g.as_deref(), file.g, "g")?;
        let space = match args.space.as_deref().or(file.space.as_deref()) {
            Some(s) => s.parse()?,
            None => Space::SVariable,
        };
        let digits = args.digits.or(file.digits).unwrap_or(DEFAULT_DIGITS);
        let config = RunConfig {
            pair: SymbolPair::new(l, g),
            n1: args.n1.or(file.n1).unwrap_or(DEFAULT_N1),
            max_level: args.max_level.or(file.max_level).unwrap_or(DEFAULT_LEVELS),
            precision: Precision::from_digits(digits)?,
            space,
            orders: args.orders.clone().or(file.orders).unwrap_or_else(|| DEFAULT_ORDERS.to_vec()),
            levels: args.levels.clone().or(file.levels),
            out: args.out.clone().or(file.out),
            jobs: args.jobs.or(file.jobs),
            table: args.table.clone().or(file.table),
            cache: args.cache.clone().or(file.cache),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        let degree = self.pair.degree();
        if let Some(&n) = self.orders.iter().find(|n| **n <= degree) {
            return Err(Error::OrderTooSmall { n, degree });
        }
        if let Some(levels) = &self.levels {
            if let Some(&k) = levels.iter().find(|k| **k == 0) {
                return Err(Error::LevelOutOfRange { k, levels: self.max_level });
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::Parse("--jobs must be positive".into()));
        }
        Ok(())
    }

    pub fn table_path(&self) -> Result<&Path> {
        self.table.as_deref().ok_or_else(|| Error::Parse("no table file given (use --table)".into()))
    }
}
