//! Monte Carlo sweeps of `Pr[H^{k-1}(Y; R) = 0]` and of the isolated-face
//! count along `p = (k log n + ω) / n`.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;

use randcomplex::unionfind::DisjointSet;
use randcomplex::{
    expected_isolated, isolated_count, isolated_variance, sample_complex, vanishes,
    FiniteAbelianGroup, RngSeed,
};

use crate::error::{LabError, LabResult};

pub const CSV_HEADER: &str =
    "omega,p,trials,frac_H_vanishes,frac_no_isolated,mean_isolated,expected_isolated";

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub n: u32,
    pub k: u32,
    /// Group spec such as `Z2` or `Z2xZ3`.
    pub group: String,
    pub omega_grid: Vec<f64>,
    pub trials: usize,
    pub master_seed: RngSeed,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(n: u32, k: u32, group: &str, omega_grid: Vec<f64>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            n,
            k,
            group: group.to_string(),
            omega_grid,
            trials,
            master_seed: RngSeed(seed),
            output: None,
        }
    }

    /// Checks the config and parses the group.
    pub fn validate(&self) -> LabResult<FiniteAbelianGroup> {
        if self.k < 1 || self.k + 1 > self.n {
            return Err(randcomplex::Error::DimensionOutOfRange { k: self.k, n: self.n }.into());
        }
        if self.trials == 0 {
            return Err(LabError::Config("trials must be at least 1".into()));
        }
        if self.omega_grid.is_empty() {
            return Err(LabError::Config("empty omega grid".into()));
        }
        if let Some(w) = self.omega_grid.iter().find(|w| !w.is_finite()) {
            return Err(LabError::Config(format!("omega {w} is not finite")));
        }
        Ok(self.group.parse()?)
    }

    /// `p = (k ln n + ω) / n`, clamped to `[0, 1]`.
    pub fn p_of(&self, omega: f64) -> f64 {
        ((self.k as f64 * (self.n as f64).ln() + omega) / self.n as f64).clamp(0.0, 1.0)
    }
}

/// `min, min + step, ...` up to `max` inclusive (with a small tolerance).
pub fn omega_range(min: f64, max: f64, step: f64) -> LabResult<Vec<f64>> {
    if !(step > 0.0) || !min.is_finite() || !max.is_finite() || max < min {
        return Err(LabError::Config(format!(
            "bad omega range {min}..{max} step {step}"
        )));
    }
    let count = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| min + i as f64 * step).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub omega: f64,
    pub p: f64,
    pub trials: usize,
    pub frac_h_vanishes: f64,
    pub frac_no_isolated: f64,
    pub mean_isolated: f64,
    pub expected_isolated: f64,
    /// Trials with an isolated face where the cohomology still vanished.
    pub violations: usize,
    /// Sample standard deviation of the isolated count.
    pub isolated_std: f64,
    /// `sqrt(Var[g] / trials)` from the exact variance of the count.
    pub isolated_se: f64,
    /// For k = 1: trials where vanishing disagreed with union-find
    /// connectivity.
    pub connectivity_mismatches: Option<usize>,
}

impl SweepRow {
    /// `|mean - E[g]|` in units of the exact standard error.
    pub fn isolated_z(&self) -> f64 {
        let diff = (self.mean_isolated - self.expected_isolated).abs();
        if self.isolated_se > 0.0 {
            diff / self.isolated_se
        } else if diff < 1e-12 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{:.10},{},{:.6},{:.6},{:.6},{:.6}",
            self.omega,
            self.p,
            self.trials,
            self.frac_h_vanishes,
            self.frac_no_isolated,
            self.mean_isolated,
            self.expected_isolated
        )
    }
}

struct Trial {
    vanishes: bool,
    isolated: usize,
    connected: Option<bool>,
}

fn graph_connected(y: &randcomplex::Complex) -> bool {
    let mut dsu = DisjointSet::new(y.n() as usize);
    for e in y.faces() {
        let v = e.vertices();
        dsu.union(v[0] as usize - 1, v[1] as usize - 1);
    }
    dsu.components() == 1
}

/// Runs `trials` samples at every grid point. Trial `t` uses the seed
/// `derive(master, [t])` at every `ω`, so each trial is one coupled
/// realisation whose face set grows with `p`. Rows come back sorted by `ω`.
pub fn run_threshold_sweep(cfg: &ExperimentConfig) -> LabResult<Vec<SweepRow>> {
    let group = cfg.validate()?;
    let (n, k) = (cfg.n, cfg.k);
    let jobs: Vec<(usize, usize)> = (0..cfg.omega_grid.len())
        .flat_map(|i| (0..cfg.trials).map(move |t| (i, t)))
        .collect();
    let results: Vec<Trial> = jobs
        .par_iter()
        .map(|&(i, t)| -> LabResult<Trial> {
            let p = cfg.p_of(cfg.omega_grid[i]);
            let y = sample_complex(n, k, p, cfg.master_seed.derive(&[t as u64]))?;
            Ok(Trial {
                vanishes: vanishes(&y, &group),
                isolated: isolated_count(&y),
                connected: (k == 1).then(|| graph_connected(&y)),
            })
        })
        .collect::<LabResult<_>>()?;

    let t = cfg.trials as f64;
    let mut rows: Vec<SweepRow> = results
        .chunks(cfg.trials)
        .zip(&cfg.omega_grid)
        .map(|(chunk, &omega)| {
            let p = cfg.p_of(omega);
            let mean = chunk.iter().map(|r| r.isolated as f64).sum::<f64>() / t;
            let var = if chunk.len() > 1 {
                chunk
                    .iter()
                    .map(|r| (r.isolated as f64 - mean).powi(2))
                    .sum::<f64>()
                    / (t - 1.0)
            } else {
                0.0
            };
            SweepRow {
                omega,
                p,
                trials: cfg.trials,
                frac_h_vanishes: chunk.iter().filter(|r| r.vanishes).count() as f64 / t,
                frac_no_isolated: chunk.iter().filter(|r| r.isolated == 0).count() as f64 / t,
                mean_isolated: mean,
                expected_isolated: expected_isolated(n, k, p),
                violations: chunk.iter().filter(|r| r.isolated > 0 && r.vanishes).count(),
                isolated_std: var.sqrt(),
                isolated_se: (isolated_variance(n, k, p) / t).sqrt(),
                connectivity_mismatches: (k == 1).then(|| {
                    chunk
                        .iter()
                        .filter(|r| r.connected != Some(r.vanishes))
                        .count()
                }),
            }
        })
        .collect();
    rows.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut sink: W) -> LabResult<()> {
    writeln!(sink, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(sink, "{}", row.csv_line())?;
    }
    sink.flush()?;
    Ok(())
}
