use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::{error, info};
use matrixless::expansion::{precompute, ExpansionTable, GridSpec};
use matrixless::harness::{figure_dump, parity_diagnostic, table_csv, table_sweep, table_text, Oracle};
use matrixless::symbols::DEFAULT_SAMPLES;
use matrixless::{Result, SymbolPair};

use crate::config::RunConfig;

fn certified(pair: &SymbolPair) -> Result<SymbolPair> {
    pair.certify(DEFAULT_SAMPLES)
}

pub fn certify(config: &RunConfig, out: &mut impl Write) -> Result<()> {
    let verdict = config.pair.check_monotone(DEFAULT_SAMPLES);
    writeln!(out, "{}", verdict.message)?;
    let pair = certified(&config.pair)?;
    let (lo, hi) = pair.bounds()?;
    writeln!(out, "range: ({lo}, {hi})")?;
    writeln!(out, "digest: {}", pair.digest())?;
    Ok(())
}

pub fn precompute_table(config: &RunConfig) -> Result<PathBuf> {
    let pair = certified(&config.pair).inspect_err(|_| {
        error!("refusing to precompute for uncertified symbols; run `matrixless certify` for details")
    })?;
    let grid = GridSpec::new(config.n1, config.max_level)?;
    let out = config.out.clone().unwrap_or_else(|| PathBuf::from("table.toml"));
    let start = Instant::now();
    let table = precompute(&pair, &grid, config.space, config.precision)?;
    info!(
        "precompute: n1={} K={} {:?} {} levels in {:.2?}",
        config.n1,
        config.max_level,
        config.precision,
        table.levels(),
        start.elapsed()
    );
    table.save(&out)?;
    info!("wrote {}", out.display());
    Ok(out)
}

fn load_table(config: &RunConfig) -> Result<ExpansionTable> {
    let path = config.table_path()?;
    let start = Instant::now();
    let table = ExpansionTable::load(path)?;
    info!("loaded {} ({} levels) in {:.2?}", path.display(), table.levels(), start.elapsed());
    Ok(table)
}

pub fn approx(config: &RunConfig, n: usize, k: usize, stdout: &mut impl Write) -> Result<()> {
    let table = load_table(config)?;
    let start = Instant::now();
    let approx = table.approx_eigs(&config.pair, n, k)?;
    info!("approximated n={n} k={k} in {:.2?} ({} clamped)", start.elapsed(), approx.clamped);
    let mut values = approx.values;
    values.sort_by(f64::total_cmp);
    match &config.out {
        Some(path) => write_values(&mut BufWriter::new(std::fs::File::create(path)?), &values)?,
        None => write_values(&mut BufWriter::new(stdout), &values)?,
    }
    Ok(())
}

fn write_values(w: &mut impl Write, values: &[f64]) -> Result<()> {
    for v in values {
        writeln!(w, "{v:e}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn errors(config: &RunConfig, stdout: &mut impl Write) -> Result<()> {
    let table = load_table(config)?;
    let levels = config.levels.clone().unwrap_or_else(|| (1..=table.levels()).collect());
    let oracle = Oracle { cache_dir: config.cache.clone(), ..Oracle::double() };
    let start = Instant::now();
    let reports = table_sweep(&table, &config.pair, &config.orders, &levels, &oracle)?;
    info!("sweep over {} cells in {:.2?}", reports.len(), start.elapsed());

    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("errors"));
    std::fs::create_dir_all(&dir)?;
    write_file(&dir.join("table.txt"), &table_text(&reports))?;
    write_file(&dir.join("table.csv"), &table_csv(&reports))?;
    for r in &reports {
        write_file(&dir.join(format!("figure-n{}-k{}.csv", r.n, r.k)), &figure_dump(r))?;
    }

    write!(stdout, "{}", table_text(&reports))?;
    for r in &reports {
        let d = parity_diagnostic(r);
        if d.anomaly {
            writeln!(
                stdout,
                "parity anomaly at n={} k={}: even max {:.4e}, odd max {:.4e}, ratio {:.2}, alternation {:.2}",
                r.n, r.k, d.even_max, d.odd_max, d.ratio, d.alternation
            )?;
        }
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}
