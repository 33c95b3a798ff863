//! Command-line surface for the plan-search harness.
//!
//! Exit codes: 0 success, 1 validation failure (bad dataset, failed plan,
//! replay miss), 2 configuration error (clap usage errors also exit 2).

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use plansearch::dataset::{fixtures, load_dataset, DatasetSplit};
use plansearch::harness::{
    bench_configs, render_report, run_experiment, ChatFactory, GeneratorFactory, MockFactory,
    Report, ReportFormat,
};
use plansearch::llm_client::{ClientConfig, ClientMode, LlmClient};
use plansearch::plan_dsl::parse_plan;
use plansearch::search::SearchConfig;
use plansearch::{execute_plan, format_answer, load_scene};

#[derive(Parser)]
#[command(name = "plansearch", version, about = "Plan search over scene graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Onestop,
    Tot,
    TotOs,
    TotBlock,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeneratorArg {
    Mock,
    Chat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Table => ReportFormat::Table,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Args)]
struct GeneratorOpts {
    #[arg(long, value_enum, default_value = "mock")]
    generator: GeneratorArg,
    /// Mock: probability a single-step generation is the correct next step.
    #[arg(long, default_value_t = 0.7)]
    p_step: f64,
    /// Mock: probability a remaining/block generation is fully correct.
    #[arg(long, default_value_t = 0.5)]
    p_full: f64,
    /// Chat: base URL of the chat-completion service.
    #[arg(long, default_value = "https://api.openai.com/v1")]
    base_url: String,
    /// Chat: model identifier sent in each request.
    #[arg(long, default_value = "")]
    model: String,
    /// Chat: environment variable holding the API credential.
    #[arg(long, default_value = "CHAT_API_KEY")]
    credential_env: String,
    /// Chat: transport mode.
    #[arg(long, value_enum, default_value = "replay")]
    client_mode: ClientModeArg,
    /// Chat: record/replay cache file.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClientModeArg {
    Live,
    Record,
    Replay,
}

#[derive(Subcommand)]
enum Command {
    /// Run one search mode over a dataset and write a JSON report.
    Run {
        #[arg(long)]
        dataset: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Branch factor (default 3; 5 for tot-block).
        #[arg(long)]
        branch: Option<usize>,
        #[arg(long, default_value_t = 30)]
        max_step: usize,
        /// Start depth for tot-os.
        #[arg(long, default_value_t = 2)]
        start_depth: usize,
        /// Block size for tot-block.
        #[arg(long, default_value_t = 2)]
        block_size: usize,
        #[command(flatten)]
        generator: GeneratorOpts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        /// Output path for the JSON report (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run all four modes over a dataset and write the full report.
    Bench {
        /// Dataset path; the bundled fixtures when omitted.
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[command(flatten)]
        generator: GeneratorOpts,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Execute a plan file against a scene file; prints the trace and answer.
    EvalPlan {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long)]
        scene: PathBuf,
    },
    /// Validate a dataset file: schema, taxonomy, scenes, gold plans.
    ValidateDataset {
        #[arg(long)]
        dataset: PathBuf,
    },
    /// Sweep mock reliability settings over synthetic questions.
    Simulate {
        /// Comma-separated p_step values.
        #[arg(long, default_value = "0.5,0.7,0.9")]
        p_step: String,
        /// Comma-separated p_full values.
        #[arg(long, default_value = "0.3,0.5,0.7")]
        p_full: String,
        #[arg(long, default_value_t = 30)]
        questions: usize,
        #[arg(long, default_value_t = 2)]
        min_hops: usize,
        #[arg(long, default_value_t = 10)]
        max_hops: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
    },
    /// Render a previously written JSON report.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
}

fn parse_float_list(text: &str) -> anyhow::Result<Vec<f64>> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .with_context(|| format!("\"{part}\" is not a number"))
        })
        .collect()
}

/// Errors that mean "the input data is bad" rather than "the invocation is
/// misconfigured"; they exit 1 instead of 2.
fn is_validation_error(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        cause
            .downcast_ref::<plansearch::dataset::DatasetError>()
            .is_some()
            || cause
                .downcast_ref::<plansearch::scene_graph::SceneError>()
                .is_some()
            || cause
                .downcast_ref::<plansearch::plan_dsl::ParseError>()
                .is_some()
            || cause
                .downcast_ref::<plansearch::interpreter::RuntimeError>()
                .is_some()
            || cause
                .downcast_ref::<plansearch::llm_client::ClientError>()
                .is_some()
    })
}

fn load_split(path: Option<&PathBuf>) -> anyhow::Result<DatasetSplit> {
    match path {
        Some(path) => {
            load_dataset(path).with_context(|| format!("loading dataset {}", path.display()))
        }
        None => Ok(fixtures::bundled_fixtures()),
    }
}

fn make_factory(
    opts: &GeneratorOpts,
    split: &DatasetSplit,
) -> anyhow::Result<Box<dyn GeneratorFactory>> {
    match opts.generator {
        GeneratorArg::Mock => Ok(Box::new(MockFactory {
            p_step: opts.p_step,
            p_full: opts.p_full,
        })),
        GeneratorArg::Chat => {
            let mode = match opts.client_mode {
                ClientModeArg::Live => ClientMode::Live,
                ClientModeArg::Record => ClientMode::Record,
                ClientModeArg::Replay => ClientMode::Replay,
            };
            let config = ClientConfig {
                base_url: opts.base_url.clone(),
                model: opts.model.clone(),
                credential_env: opts.credential_env.clone(),
                mode,
                cache_path: opts.cache.clone(),
                ..ClientConfig::default()
            };
            let client = Arc::new(LlmClient::new(config)?);
            Ok(Box::new(ChatFactory::from_library_records(
                client,
                split.library.iter(),
                4,
            )))
        }
    }
}

fn write_or_print(text: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn write_report(
    report: &Report,
    out: Option<&PathBuf>,
    format: ReportFormat,
) -> anyhow::Result<()> {
    write_or_print(&render_report(report, format), out)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Run {
            dataset,
            mode,
            branch,
            max_step,
            start_depth,
            block_size,
            generator,
            seed,
            repeats,
            out,
        } => {
            let split = load_split(Some(&dataset))?;
            let mut config = match mode {
                ModeArg::Onestop => SearchConfig::one_stop(),
                ModeArg::Tot => SearchConfig::tot(),
                ModeArg::TotOs => SearchConfig::tot_os(start_depth),
                ModeArg::TotBlock => SearchConfig::tot_block(block_size),
            }
            .with_max_step(max_step);
            if let Some(branch) = branch {
                config = config.with_branch(branch);
            }
            config.validate().map_err(|e| anyhow::anyhow!("{e}"))?;
            let factory = make_factory(&generator, &split)?;
            let (report, _) =
                run_experiment(&split.test, &[config], factory.as_ref(), repeats, seed)?;
            write_report(&report, out.as_ref(), ReportFormat::Json)
        }
        Command::Bench {
            dataset,
            generator,
            seed,
            repeats,
            out,
            format,
        } => {
            let split = load_split(dataset.as_ref())?;
            let factory = make_factory(&generator, &split)?;
            let (report, _) = run_experiment(
                &split.test,
                &bench_configs(),
                factory.as_ref(),
                repeats,
                seed,
            )?;
            write_report(&report, out.as_ref(), format.into())
        }
        Command::EvalPlan { plan, scene } => {
            let plan_text = std::fs::read_to_string(&plan)
                .with_context(|| format!("reading {}", plan.display()))?;
            let scene_text = std::fs::read_to_string(&scene)
                .with_context(|| format!("reading {}", scene.display()))?;
            let plan = parse_plan(&plan_text)?;
            let scene = load_scene(&scene_text)?;
            let trace = execute_plan(&plan, &scene)?;
            print!("{}", trace.to_json_lines());
            match &trace.answer {
                Some(value) => {
                    let answer = format_answer(value)?;
                    println!("{}", serde_json::json!({ "answer": answer }));
                }
                None => println!("{}", serde_json::json!({ "answer": null })),
            }
            Ok(())
        }
        Command::ValidateDataset { dataset } => {
            let split = load_split(Some(&dataset))?;
            println!(
                "ok: {} library record(s), {} test record(s)",
                split.library.len(),
                split.test.len()
            );
            Ok(())
        }
        Command::Simulate {
            p_step,
            p_full,
            questions,
            min_hops,
            max_hops,
            seed,
            repeats,
        } => {
            let p_steps = parse_float_list(&p_step)?;
            let p_fulls = parse_float_list(&p_full)?;
            for p in p_steps.iter().chain(&p_fulls) {
                if !(0.0..=1.0).contains(p) {
                    anyhow::bail!("probabilities must lie in [0, 1], got {p}");
                }
            }
            let records = fixtures::synthetic_records(questions, min_hops, max_hops);
            println!(
                "{:<8}{:<8}{:>12}{:>12}{:>12}{:>12}{:>14}{:>14}",
                "p_step",
                "p_full",
                "onestop_acc",
                "tot_acc",
                "os_acc",
                "block_acc",
                "tot_steps",
                "os_steps"
            );
            for &ps in &p_steps {
                for &pf in &p_fulls {
                    let factory = MockFactory {
                        p_step: ps,
                        p_full: pf,
                    };
                    let (report, _) =
                        run_experiment(&records, &bench_configs(), &factory, repeats, seed)?;
                    let cells = &report.rows[0].cells;
                    println!(
                        "{:<8.2}{:<8.2}{:>12.2}{:>12.2}{:>12.2}{:>12.2}{:>14.2}{:>14.2}",
                        ps,
                        pf,
                        cells[0].accuracy,
                        cells[1].accuracy,
                        cells[2].accuracy,
                        cells[3].accuracy,
                        cells[1].mean_steps,
                        cells[2].mean_steps,
                    );
                }
            }
            Ok(())
        }
        Command::Report { input, format } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let report: Report = serde_json::from_str(&text)
                .with_context(|| "parsing the JSON report".to_string())?;
            print!("{}", render_report(&report, format.into()));
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err:#}");
        let code = if is_validation_error(&err) { 1 } else { 2 };
        std::process::exit(code);
    }
}
