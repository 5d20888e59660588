use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use floc::scenario::Scenario;
use floc::sweep::{
    report_csv, run_csv, run_sweep, summarize, summary_csv, summary_path, write_csv, SweepParam,
    SweepSpec,
};
use floc::FlocError;
use hflts::{
    aggregate_intervals, possibility_rank, CriteriaVector, DecisionEngine, ExpressionMatrix,
    NumericInterval, Status, ALTERNATIVES,
};

const EXIT_USAGE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

/// Opportunistic clustering simulator with linguistic role decisions.
#[derive(Parser)]
#[command(name = "floc", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and emit per-round metrics as CSV.
    Run(RunArgs),
    /// Run a parameter sweep across values and seeds.
    Sweep(SweepArgs),
    /// Linguistic decision tooling.
    Hflts(HfltsArgs),
    /// Re-derive the built-in reference decision matrix and check every
    /// stage of the pipeline against its frozen expected cells.
    Validate,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Round-count override.
    #[arg(long)]
    rounds: Option<usize>,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Scenario file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Swept parameter: node_count|s_max|rho|sigma|alpha2.
    #[arg(long)]
    param: String,
    /// Comma-separated sweep values.
    #[arg(long)]
    values: String,
    /// Seeds per sweep value (base seed, base seed + 1, ...).
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    /// Round-count override.
    #[arg(long)]
    rounds: Option<usize>,
    /// Worker threads; defaults to the rayon global pool.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output CSV path; a `<stem>_summary.csv` sibling is written too.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct HfltsArgs {
    #[command(subcommand)]
    command: HfltsCommand,
}

#[derive(Subcommand)]
enum HfltsCommand {
    /// Rank the role alternatives from an expression matrix file or a
    /// criteria vector.
    Rank(RankArgs),
}

#[derive(Args)]
struct RankArgs {
    /// Matrix file: three comma-separated rows of six expressions.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Six comma-separated criterion values in [0, 1]; used to build the
    /// matrix when no file is given.
    #[arg(long)]
    criteria: Option<String>,
    /// Aggregation mode: optimistic|pessimistic.
    #[arg(long, default_value = "optimistic")]
    mode: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are normal exits.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };

    let outcome = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Hflts(args) => match args.command {
            HfltsCommand::Rank(rank) => cmd_rank(rank),
        },
        Command::Validate => cmd_validate(),
    };

    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                FlocError::Config(_) | FlocError::ScenarioParse { .. } => EXIT_CONFIG,
                _ => EXIT_RUNTIME,
            };
            ExitCode::from(code)
        }
    }
}

fn load_scenario(config: &Option<PathBuf>) -> Result<Scenario, FlocError> {
    match config {
        Some(path) => Scenario::from_file(path),
        None => Ok(Scenario::default()),
    }
}

fn cmd_run(args: RunArgs) -> Result<ExitCode, FlocError> {
    let mut scenario = load_scenario(&args.config)?;
    if let Some(seed) = args.seed {
        scenario.network.seed = seed;
    }
    if let Some(rounds) = args.rounds {
        scenario.network.rounds = rounds;
    }
    let series = floc::run(&scenario)?;
    let csv = run_csv(&series);
    match args.out {
        Some(path) => write_csv(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode, FlocError> {
    let scenario = load_scenario(&args.config)?;
    let param: SweepParam = args.param.parse()?;
    let values = parse_values(&args.values)?;
    let spec = SweepSpec {
        param,
        values,
        seeds: args.seeds,
        rounds: args.rounds,
    };
    let rows = run_sweep(&scenario, &spec, args.jobs)?;
    write_csv(&args.out, &report_csv(&rows))?;
    let summaries = summarize(&rows);
    write_csv(summary_path(&args.out), &summary_csv(&summaries))?;
    if floc::log_enabled() {
        eprintln!(
            "[floc] sweep {}: {} values x {} seeds, {} rows",
            spec.param.key(),
            spec.values.len(),
            spec.seeds,
            rows.len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_values(text: &str) -> Result<Vec<f64>, FlocError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| FlocError::config(format!("invalid sweep value {s:?}")))
        })
        .collect()
}

fn cmd_rank(args: RankArgs) -> Result<ExitCode, FlocError> {
    let status = match args.mode.as_str() {
        "optimistic" => Status::Optimistic,
        "pessimistic" => Status::Pessimistic,
        other => {
            return Err(FlocError::config(format!(
                "mode must be optimistic|pessimistic, got {other:?}"
            )))
        }
    };

    let matrix = match (&args.matrix, &args.criteria) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| FlocError::io(path.display().to_string(), e))?;
            ExpressionMatrix::parse(&text)
                .map_err(|e| FlocError::config(format!("{}: {e}", path.display())))?
        }
        (None, Some(text)) => {
            let values = parse_values(text)?;
            let array: [f64; 6] = values
                .try_into()
                .map_err(|_| FlocError::config("expected six criterion values"))?;
            let criteria =
                CriteriaVector::new(array).map_err(|e| FlocError::config(e.to_string()))?;
            ExpressionMatrix::from_criteria(&criteria)
        }
        (None, None) => {
            return Err(FlocError::config(
                "provide --matrix <file> or --criteria v1,..,v6",
            ))
        }
    };

    let term_sets = matrix.transform().map_err(FlocError::Hflts)?;
    let envelopes = term_sets.envelopes();
    println!("expressions:");
    print!("{matrix}");
    println!("H (term sets):");
    print!("{term_sets}");
    println!("Y (envelopes):");
    print!("{envelopes}");

    let engine = DecisionEngine::default();
    let decision = engine.decide_with_matrix(&matrix, status)?;
    println!("ranks ({}):", args.mode);
    for alt in ALTERNATIVES {
        let cuts: Vec<NumericInterval> = envelopes.row(alt).iter().map(|iv| iv.one_cut()).collect();
        let agg = aggregate_intervals(&cuts, status.aggregation_mode());
        println!(
            "{:>5}: interval {}  rank {:.6}",
            alt.name(),
            agg,
            possibility_rank(agg)
        );
    }
    println!("selected: {}", decision.role.name());
    Ok(ExitCode::SUCCESS)
}

fn cmd_validate() -> Result<ExitCode, FlocError> {
    let expected_sets = [
        [
            "{vh, p}",
            "{vh, p}",
            "{el, vl, l}",
            "{vh, p}",
            "{el, vl, l}",
            "{h, vh, p}",
        ],
        [
            "{l, m, h}",
            "{vl, l, m, h}",
            "{l, m, h, vh}",
            "{h, vh, p}",
            "{l, m, h, vh}",
            "{m, h, vh}",
        ],
        [
            "{m, h, vh, p}",
            "{vl, l, m, h}",
            "{el, vl, l, m}",
            "{h, vh, p}",
            "{el, vl, l}",
            "{h, vh, p}",
        ],
    ];
    let expected_envelopes = [
        [
            "[vh, p]", "[vh, p]", "[el, l]", "[vh, p]", "[el, l]", "[h, p]",
        ],
        [
            "[l, h]", "[vl, h]", "[l, vh]", "[h, p]", "[l, vh]", "[m, vh]",
        ],
        [
            "[m, p]", "[vl, h]", "[el, m]", "[h, p]", "[el, l]", "[h, p]",
        ],
    ];

    let matrix = ExpressionMatrix::reference();
    let term_sets = matrix.transform().map_err(FlocError::Hflts)?;
    let envelopes = term_sets.envelopes();

    let mut all_ok = true;
    let mut check = |name: &str, ok: bool| {
        println!("{:<34} {}", name, if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    };

    let mut sets_ok = true;
    let mut envelopes_ok = true;
    for alt in ALTERNATIVES {
        for j in 0..6 {
            sets_ok &= term_sets.cell(alt, j).to_string() == expected_sets[alt.index()][j];
            envelopes_ok &=
                envelopes.cell(alt, j).to_string() == expected_envelopes[alt.index()][j];
        }
    }
    check("term set cells (18)", sets_ok);
    check("envelope cells (18)", envelopes_ok);

    let engine = DecisionEngine::default();
    let optimistic = engine.decide_with_matrix(&matrix, Status::Optimistic)?;
    check(
        "optimistic rank formula (6/7)",
        (optimistic.ranks[0] - 6.0 / 7.0).abs() < 1e-12,
    );
    check(
        "optimistic argmax is CH",
        optimistic.role == hflts::Alternative::ClusterHead,
    );
    let pessimistic = engine.decide_with_matrix(&matrix, Status::Pessimistic)?;
    check(
        "pessimistic argmax departs CH",
        pessimistic.role != hflts::Alternative::ClusterHead,
    );

    if all_ok {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(FlocError::domain("reference matrix validation failed"))
    }
}
