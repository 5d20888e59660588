//! Parameter sweeps over seeds and scenario values, with stable CSV
//! emission for plotting.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{FlocError, Result};
use crate::scenario::Scenario;
use crate::sim::{run, RoundMetrics};

/// Scenario dimension swept over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SweepParam {
    NodeCount,
    PeakRadiation,
    SolarPeakTime,
    SolarSpread,
    ConnectivityWeight,
}

impl SweepParam {
    pub fn key(&self) -> &'static str {
        match self {
            SweepParam::NodeCount => "node_count",
            SweepParam::PeakRadiation => "s_max",
            SweepParam::SolarPeakTime => "rho",
            SweepParam::SolarSpread => "sigma",
            SweepParam::ConnectivityWeight => "alpha2",
        }
    }

    /// Applies one sweep value onto a scenario.
    pub fn apply(&self, scenario: &mut Scenario, value: f64) -> Result<()> {
        match self {
            SweepParam::NodeCount => {
                if value <= 0.0 || value.fract() != 0.0 {
                    return Err(FlocError::config(format!(
                        "node_count sweep value {value} is not a positive integer"
                    )));
                }
                scenario.network.node_count = value as usize;
            }
            SweepParam::PeakRadiation => scenario.thermal.s_max = value,
            SweepParam::SolarPeakTime => scenario.thermal.rho = value,
            SweepParam::SolarSpread => scenario.thermal.sigma = value,
            SweepParam::ConnectivityWeight => scenario.options.alpha2 = value,
        }
        Ok(())
    }
}

impl FromStr for SweepParam {
    type Err = FlocError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "node_count" => Ok(SweepParam::NodeCount),
            "s_max" => Ok(SweepParam::PeakRadiation),
            "rho" => Ok(SweepParam::SolarPeakTime),
            "sigma" => Ok(SweepParam::SolarSpread),
            "alpha2" => Ok(SweepParam::ConnectivityWeight),
            other => Err(FlocError::config(format!(
                "unknown sweep parameter {other:?} (expected node_count|s_max|rho|sigma|alpha2)"
            ))),
        }
    }
}

/// A sweep: one parameter, its values, seeds per point.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub values: Vec<f64>,
    pub seeds: u64,
    /// Override of the scenario's round count.
    pub rounds: Option<usize>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(FlocError::config("sweep needs at least one value"));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(FlocError::config("sweep values must be finite"));
        }
        if self.seeds == 0 {
            return Err(FlocError::config("sweep needs at least one seed"));
        }
        Ok(())
    }
}

/// One emitted row: a (sweep value, seed, round) cell with its metrics.
#[derive(Clone, Debug)]
pub struct ReportRow {
    pub param: &'static str,
    pub value: f64,
    pub seed: u64,
    pub round: usize,
    pub metrics: RoundMetrics,
}

/// Per-sweep-point aggregate across seeds and rounds.
#[derive(Clone, Debug)]
pub struct SummaryRow {
    pub param: &'static str,
    pub value: f64,
    pub mean_active_node_ratio: f64,
    pub mean_avg_energy_consumed: f64,
    pub mean_pdr: f64,
    /// Total delivered over total generated across all rows of the point;
    /// robust to rounds that generated nothing.
    pub overall_pdr: f64,
    pub mean_alive_count: f64,
}

/// Runs the full sweep matrix. Points and seeds execute in parallel; the
/// result order is normalized to (value index, seed, round) so output does
/// not depend on scheduling.
pub fn run_sweep(base: &Scenario, spec: &SweepSpec, jobs: Option<usize>) -> Result<Vec<ReportRow>> {
    spec.validate()?;
    base.validate()?;

    let mut cells: Vec<(usize, u64)> = Vec::new();
    for value_index in 0..spec.values.len() {
        for seed_offset in 0..spec.seeds {
            cells.push((value_index, seed_offset));
        }
    }

    let run_cell = |(value_index, seed_offset): &(usize, u64)| -> Result<Vec<ReportRow>> {
        let value = spec.values[*value_index];
        let mut scenario = base.clone();
        spec.param.apply(&mut scenario, value)?;
        if let Some(rounds) = spec.rounds {
            scenario.network.rounds = rounds;
        }
        let seed = base.network.seed + seed_offset;
        scenario.network.seed = seed;
        let series = run(&scenario)?;
        Ok(series
            .into_iter()
            .enumerate()
            .map(|(round, metrics)| ReportRow {
                param: spec.param.key(),
                value,
                seed,
                round,
                metrics,
            })
            .collect())
    };

    let results: Vec<Result<Vec<ReportRow>>> = match jobs {
        Some(threads) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| FlocError::config(format!("worker pool: {e}")))?;
            pool.install(|| cells.par_iter().map(run_cell).collect())
        }
        None => cells.par_iter().map(run_cell).collect(),
    };

    let mut rows = Vec::new();
    for cell_rows in results {
        rows.extend(cell_rows?);
    }
    // Normalize ordering: value appearance order, then seed, then round.
    let position = |v: f64| spec.values.iter().position(|x| *x == v).unwrap_or(0);
    rows.sort_by(|a, b| {
        position(a.value)
            .cmp(&position(b.value))
            .then(a.seed.cmp(&b.seed))
            .then(a.round.cmp(&b.round))
    });
    Ok(rows)
}

/// Collapses sweep rows into one summary row per sweep value, in value
/// appearance order.
pub fn summarize(rows: &[ReportRow]) -> Vec<SummaryRow> {
    let mut order: Vec<f64> = Vec::new();
    for row in rows {
        if !order.contains(&row.value) {
            order.push(row.value);
        }
    }
    order
        .into_iter()
        .map(|value| {
            let group: Vec<&ReportRow> = rows.iter().filter(|r| r.value == value).collect();
            let count = group.len().max(1) as f64;
            let generated: u64 = group.iter().map(|r| r.metrics.packets_generated).sum();
            let delivered: u64 = group.iter().map(|r| r.metrics.packets_delivered).sum();
            SummaryRow {
                param: group.first().map(|r| r.param).unwrap_or("value"),
                value,
                mean_active_node_ratio: group
                    .iter()
                    .map(|r| r.metrics.active_node_ratio)
                    .sum::<f64>()
                    / count,
                mean_avg_energy_consumed: group
                    .iter()
                    .map(|r| r.metrics.avg_energy_consumed)
                    .sum::<f64>()
                    / count,
                mean_pdr: group.iter().map(|r| r.metrics.pdr).sum::<f64>() / count,
                overall_pdr: if generated == 0 {
                    1.0
                } else {
                    delivered as f64 / generated as f64
                },
                mean_alive_count: group.iter().map(|r| r.metrics.alive_count).sum::<usize>() as f64
                    / count,
            }
        })
        .collect()
}

const METRICS_COLUMNS: &str = "active_node_ratio,avg_energy_consumed,packets_generated,\
packets_delivered,pdr,mean_temperature,alive_count";

fn push_metrics(line: &mut String, m: &RoundMetrics) {
    let _ = write!(
        line,
        "{},{},{},{},{},{},{}",
        m.active_node_ratio,
        m.avg_energy_consumed,
        m.packets_generated,
        m.packets_delivered,
        m.pdr,
        m.mean_temperature,
        m.alive_count
    );
}

/// CSV for a single run: one line per round.
pub fn run_csv(series: &[RoundMetrics]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "round,{METRICS_COLUMNS}");
    for (round, m) in series.iter().enumerate() {
        let mut line = format!("{round},");
        push_metrics(&mut line, m);
        let _ = writeln!(out, "{line}");
    }
    out
}

/// CSV for sweep rows: one line per (value, seed, round).
pub fn report_csv(rows: &[ReportRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "param,value,seed,round,{METRICS_COLUMNS}");
    for row in rows {
        let mut line = format!("{},{},{},{},", row.param, row.value, row.seed, row.round);
        push_metrics(&mut line, &row.metrics);
        let _ = writeln!(out, "{line}");
    }
    out
}

/// CSV for per-point summaries.
pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "param,value,mean_active_node_ratio,mean_avg_energy_consumed,mean_pdr,overall_pdr,\
mean_alive_count"
    );
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.param,
            row.value,
            row.mean_active_node_ratio,
            row.mean_avg_energy_consumed,
            row.mean_pdr,
            row.overall_pdr,
            row.mean_alive_count
        );
    }
    out
}

/// Writes CSV text to a file.
pub fn write_csv(path: impl AsRef<Path>, content: &str) -> Result<()> {
    let path = path.as_ref();
    let mut file =
        std::fs::File::create(path).map_err(|e| FlocError::io(path.display().to_string(), e))?;
    file.write_all(content.as_bytes())
        .map_err(|e| FlocError::io(path.display().to_string(), e))?;
    Ok(())
}

/// Path of the per-point summary emitted alongside a sweep CSV:
/// `metrics.csv` gains a `metrics_summary.csv` sibling.
pub fn summary_path(out: &Path) -> std::path::PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sweep".to_string());
    let name = match out.extension() {
        Some(ext) => format!("{stem}_summary.{}", ext.to_string_lossy()),
        None => format!("{stem}_summary"),
    };
    out.with_file_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny_scenario() -> Scenario {
        let mut s = Scenario::default();
        s.network.node_count = 8;
        s.network.rounds = 4;
        s.network.seed = 11;
        s.thermal.s_max = 0.0;
        s.initial_energy_sink_neighbors = 1e6;
        s.initial_energy_others = 1e6;
        s
    }

    #[test]
    fn sweep_runs_full_matrix() {
        let spec = SweepSpec {
            param: SweepParam::NodeCount,
            values: vec![6.0, 8.0],
            seeds: 2,
            rounds: Some(3),
        };
        let rows = run_sweep(&tiny_scenario(), &spec, Some(2)).unwrap();
        assert_eq!(rows.len(), 2 * 2 * 3);
        // Ordering is (value, seed, round).
        assert_eq!(rows[0].value, 6.0);
        assert_eq!(rows[0].seed, 11);
        assert_eq!(rows[0].round, 0);
        assert_eq!(rows.last().unwrap().value, 8.0);
        assert_eq!(rows.last().unwrap().seed, 12);
    }

    #[test]
    fn parallel_equals_serial() {
        let spec = SweepSpec {
            param: SweepParam::PeakRadiation,
            values: vec![0.0, 500.0, 1000.0],
            seeds: 2,
            rounds: Some(4),
        };
        let base = tiny_scenario();
        let serial = report_csv(&run_sweep(&base, &spec, Some(1)).unwrap());
        let parallel = report_csv(&run_sweep(&base, &spec, Some(4)).unwrap());
        assert_eq!(serial, parallel);
    }

    #[test]
    fn csv_is_byte_stable_and_round_trips() {
        let spec = SweepSpec {
            param: SweepParam::NodeCount,
            values: vec![6.0],
            seeds: 1,
            rounds: Some(3),
        };
        let rows = run_sweep(&tiny_scenario(), &spec, None).unwrap();
        let a = report_csv(&rows);
        let b = report_csv(&run_sweep(&tiny_scenario(), &spec, None).unwrap());
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));

        // Parse back and compare a spot value.
        let lines: Vec<&str> = a.lines().collect();
        assert_eq!(lines.len(), 4);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields[0], "node_count");
        let ratio: f64 = fields[4].parse().unwrap();
        assert_eq!(ratio, rows[0].metrics.active_node_ratio);
    }

    #[test]
    fn empty_rows_emit_header_only() {
        let text = report_csv(&[]);
        assert_eq!(text.lines().count(), 1);
        let text = run_csv(&[]);
        assert_eq!(text.lines().count(), 1);
    }

    #[test]
    fn summary_averages_match_hand_computation() {
        let spec = SweepSpec {
            param: SweepParam::NodeCount,
            values: vec![6.0, 8.0],
            seeds: 2,
            rounds: Some(3),
        };
        let rows = run_sweep(&tiny_scenario(), &spec, None).unwrap();
        let summaries = summarize(&rows);
        assert_eq!(summaries.len(), 2);
        for summary in &summaries {
            let group: Vec<&ReportRow> = rows.iter().filter(|r| r.value == summary.value).collect();
            let mean: f64 = group
                .iter()
                .map(|r| r.metrics.active_node_ratio)
                .sum::<f64>()
                / group.len() as f64;
            assert!((summary.mean_active_node_ratio - mean).abs() < 1e-15);
        }
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let spec = SweepSpec {
            param: SweepParam::NodeCount,
            values: vec![],
            seeds: 1,
            rounds: None,
        };
        assert!(run_sweep(&tiny_scenario(), &spec, None).is_err());
        let spec = SweepSpec {
            param: SweepParam::NodeCount,
            values: vec![6.5],
            seeds: 1,
            rounds: Some(1),
        };
        assert!(run_sweep(&tiny_scenario(), &spec, None).is_err());
        assert!("voltage".parse::<SweepParam>().is_err());
    }

    #[test]
    fn summary_path_is_a_sibling() {
        let p = summary_path(Path::new("out/metrics.csv"));
        assert_eq!(p, Path::new("out/metrics_summary.csv"));
        let p = summary_path(Path::new("metrics"));
        assert_eq!(p, Path::new("metrics_summary"));
    }
}
