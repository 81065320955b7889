use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ergofit::design::{
    anchor_ruleset, optimize_dimensions, type1_ruleset, type2_ruleset, workstation_guidelines, OptimizationSpec,
    Ruleset,
};
use ergofit::fit::{compare_reports, population_mismatch};
use ergofit::io::{load_dataset, write_dataset};
use ergofit::stats::correlation_matrix;
use ergofit::synth::synthetic_population;
use ergofit::{required_sample_size, FitConfig, Gender, Measure, PopulationDataset};
use ergofit_cli::analysis::{anova_rows, describe_dataset, histograms, load_spec, parse_groups};
use ergofit_cli::service::{serve, AppState};
use ergofit_cli::{render, CliError, Format};

/// Furniture fit analysis for a measured population.
#[derive(Debug, Parser)]
#[command(name = "ergofit", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Population CSV (id,gender,age,study_year,PH,...,SCH).
    #[arg(long, global = true, value_name = "PATH")]
    dataset: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output files into this directory instead of stdout.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Significance level for ANOVA decisions.
    #[arg(long, global = true, value_name = "F")]
    alpha: Option<f64>,
    /// Footwear allowance added to popliteal height (mm).
    #[arg(long, global = true, value_name = "MM")]
    shoe_allowance: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    Type1,
    Type2,
    Anchors,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Descriptive statistics per measure and gender.
    Describe,
    /// Mismatch report per spec; two or more specs add change tables against the first.
    Mismatch {
        #[arg(long, required = true, value_name = "PATH")]
        spec: Vec<PathBuf>,
    },
    /// One-way ANOVA on each line of a groups file (`label | g1 | g2 ...`).
    Anova {
        #[arg(long, value_name = "PATH")]
        groups: PathBuf,
    },
    /// Dimensions from a ruleset file or a built-in ruleset.
    Propose {
        #[arg(long, value_name = "PATH", conflicts_with = "preset")]
        rules: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Preset::Type1)]
        preset: Preset,
    },
    /// Grid search for the spec with the lowest weighted mismatch.
    Optimize {
        #[arg(long, value_name = "PATH")]
        grid: PathBuf,
    },
    /// Workstation placement constants.
    Guidelines,
    /// Equal-width bin counts per measure and gender.
    Histogram {
        #[arg(long, default_value_t = 20)]
        bins: usize,
        /// Restrict to these measures (repeatable); default all.
        #[arg(long, value_name = "ACRONYM")]
        measure: Vec<String>,
        /// Restrict to one gender (M or F).
        #[arg(long)]
        gender: Option<String>,
    },
    /// Spearman correlation matrix over all records.
    Correlation,
    /// Minimum sample size for a population at a precision level.
    SampleSize {
        #[arg(long)]
        population: u64,
        #[arg(long, default_value_t = 0.05)]
        precision: f64,
    },
    /// Write a seeded synthetic population in the dataset schema.
    Synth {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 300)]
        male: usize,
        #[arg(long, default_value_t = 80)]
        female: usize,
    },
    /// Serve the read-only HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080, value_parser = clap::value_parser!(u16).range(1..))]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
    },
}

impl GlobalArgs {
    fn config(&self) -> Result<FitConfig, CliError> {
        let mut cfg = FitConfig::default();
        if let Some(a) = self.alpha {
            cfg.alpha_level = a;
        }
        if let Some(s) = self.shoe_allowance {
            cfg.shoe_allowance = s;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn dataset(&self, command: &str) -> Result<PopulationDataset, CliError> {
        let path = self
            .dataset
            .as_deref()
            .ok_or_else(|| CliError::Input(format!("--dataset is required for {command}")))?;
        Ok(load_dataset(path)?)
    }

    /// Prints `body`, or writes it to `<out>/<stem>.<ext>`.
    fn emit(&self, stem: &str, body: &str) -> Result<(), CliError> {
        match &self.out {
            None => print!("{body}"),
            Some(dir) => {
                std::fs::create_dir_all(dir)?;
                let path = dir.join(format!("{}.{}", file_stem(stem), self.format.extension()));
                std::fs::write(&path, body)?;
                eprintln!("wrote {}", path.display());
            }
        }
        Ok(())
    }
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn parse_gender(s: &str) -> Result<Gender, CliError> {
    s.parse().map_err(CliError::Input)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    let cfg = g.config()?;
    let fmt = g.format;
    match cli.command {
        Command::Describe => {
            let d = g.dataset("describe")?;
            g.emit("describe", &render::describe(&describe_dataset(&d, &cfg)?, fmt))
        }
        Command::Mismatch { spec } => {
            let specs = spec.iter().map(|p| load_spec(p)).collect::<Result<Vec<_>, _>>()?;
            let d = g.dataset("mismatch")?;
            let reports = specs
                .iter()
                .map(|s| population_mismatch(&d, s, &cfg))
                .collect::<Result<Vec<_>, _>>()?;
            if reports.len() == 1 {
                return g.emit("mismatch", &render::mismatch(&reports[0], fmt));
            }
            let first = &reports[0];
            let mut comparisons = Vec::new();
            for r in &reports[1..] {
                comparisons.push((r, compare_reports(first, r)?));
            }
            if fmt == Format::Json && g.out.is_none() {
                let body = serde_json::json!({
                    "reports": reports,
                    "comparisons": comparisons
                        .iter()
                        .map(|(r, rows)| serde_json::json!({
                            "before": first.spec_name,
                            "after": r.spec_name,
                            "rows": rows,
                        }))
                        .collect::<Vec<_>>(),
                });
                return g.emit("mismatch", &render::to_json(&body));
            }
            let mut sections = Vec::new();
            for (i, r) in reports.iter().enumerate() {
                sections.push((format!("mismatch_{}_{}", i + 1, r.spec_name), render::mismatch(r, fmt)));
            }
            for (r, rows) in &comparisons {
                let stem = format!("delta_{}_vs_{}", first.spec_name, r.spec_name);
                sections.push((stem, render::deltas(&first.spec_name, &r.spec_name, rows, fmt)));
            }
            if g.out.is_some() {
                for (stem, body) in &sections {
                    g.emit(stem, body)?;
                }
                Ok(())
            } else {
                let bodies: Vec<&str> = sections.iter().map(|(_, b)| b.as_str()).collect();
                g.emit("mismatch", &bodies.join("\n"))
            }
        }
        Command::Anova { groups } => {
            let text = std::fs::read_to_string(&groups)
                .map_err(|e| CliError::Input(format!("groups file not found: {} ({e})", groups.display())))?;
            let rows = anova_rows(&parse_groups(&text)?, cfg.alpha_level)?;
            g.emit("anova", &render::anova(&rows, fmt))
        }
        Command::Propose { rules, preset } => {
            let d = g.dataset("propose")?;
            let ruleset = match rules {
                Some(p) => Ruleset::load(&p)?,
                None => match preset {
                    Preset::Type1 => type1_ruleset(),
                    Preset::Type2 => type2_ruleset(),
                    Preset::Anchors => anchor_ruleset(),
                },
            };
            g.emit("proposal", &render::spec(&ruleset.propose(&d, &cfg)?, fmt))
        }
        Command::Optimize { grid } => {
            let d = g.dataset("optimize")?;
            let opt = OptimizationSpec::load(&grid)?;
            g.emit("optimized", &render::optimization(&optimize_dimensions(&d, &opt, &cfg)?, fmt))
        }
        Command::Guidelines => g.emit("guidelines", &render::guidelines(&workstation_guidelines(), fmt)),
        Command::Histogram { bins, measure, gender } => {
            let d = g.dataset("histogram")?;
            let measures = if measure.is_empty() {
                Measure::ALL.to_vec()
            } else {
                measure.iter().map(|m| m.parse().map_err(CliError::Input)).collect::<Result<_, _>>()?
            };
            let genders = match gender {
                Some(s) => vec![parse_gender(&s)?],
                None => Gender::ALL.to_vec(),
            };
            if bins == 0 {
                return Err(CliError::Input("--bins must be >= 1".into()));
            }
            g.emit("histogram", &render::histograms(&histograms(&d, bins, &measures, &genders)?, fmt))
        }
        Command::Correlation => {
            let d = g.dataset("correlation")?;
            g.emit("correlation", &render::correlation(&correlation_matrix(&d, &Measure::ALL)?, fmt))
        }
        Command::SampleSize { population, precision } => {
            let n = required_sample_size(population, precision).map_err(|e| CliError::Input(e.to_string()))?;
            let body = match fmt {
                Format::Json => render::to_json(&serde_json::json!({
                    "population": population,
                    "precision": precision,
                    "sample_size": n,
                })),
                Format::Csv => format!("population,precision,sample_size\n{population},{precision},{n}\n"),
                Format::Table => format!("{n}\n"),
            };
            g.emit("sample_size", &body)
        }
        Command::Synth { seed, male, female } => {
            let d = synthetic_population(seed, male, female);
            let mut buf = Vec::new();
            write_dataset(&d, &mut buf)?;
            let body = String::from_utf8(buf).expect("csv is utf-8");
            match &g.out {
                None => {
                    print!("{body}");
                    Ok(())
                }
                Some(dir) => write_file(dir, "synthetic.csv", &body),
            }
        }
        Command::Serve { port, host } => {
            let dataset = g.dataset("serve")?;
            let runtime = tokio::runtime::Runtime::new()?;
            runtime
                .block_on(serve(AppState { dataset, cfg }, SocketAddr::new(host, port)))
                .map_err(|e| CliError::Analysis(format!("server error: {e}")))
        }
    }
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, body)?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
