//! Experiment runner, metrics (accuracy, mean steps, step-saving ratio,
//! no-backtrack and inconsistency counts, hop correlations), and report
//! rendering.
//!
//! Runs fan out over a worker pool; outcomes are sorted by question id before
//! aggregation, so the report is byte-identical regardless of scheduling.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{answers_match, DatasetError, QuestionRecord, QuestionType, QUESTION_TYPES};
use crate::generator::chat::{ChatGenerator, ChatGeneratorConfig};
use crate::generator::prompt::PromptExample;
use crate::generator::{seed_for_run, Generator, MockConfig, MockGenerator};
use crate::llm_client::{ClientError, LlmClient};
use crate::search::{solve, SearchConfig, SearchMode, SearchResult};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Client(#[from] ClientError),
}

/// Reasoning-step saving index: ratio of the baseline tree search's mean
/// steps to a variant's mean steps.
pub fn rssi(mean_steps_tot: f64, mean_steps_variant: f64) -> Result<f64, MetricsError> {
    if mean_steps_variant == 0.0 {
        return Err(MetricsError::DivisionByZero);
    }
    Ok(mean_steps_tot / mean_steps_variant)
}

/// Sample Pearson correlation coefficient.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, MetricsError> {
    if x.len() != y.len() {
        return Err(MetricsError::DegenerateInput("length mismatch".into()));
    }
    if x.len() < 2 {
        return Err(MetricsError::DegenerateInput(
            "need at least two points".into(),
        ));
    }
    let n = x.len() as f64;
    let mean_x = x.iter().sum::<f64>() / n;
    let mean_y = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (a, b) in x.iter().zip(y) {
        cov += (a - mean_x) * (b - mean_y);
        var_x += (a - mean_x).powi(2);
        var_y += (b - mean_y).powi(2);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return Err(MetricsError::DegenerateInput("zero variance".into()));
    }
    Ok(cov / (var_x.sqrt() * var_y.sqrt()))
}

/// One (question, algorithm, repeat) run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub question_id: String,
    pub question_type: QuestionType,
    pub config_index: usize,
    pub algorithm: String,
    pub repeat: usize,
    pub hops: usize,
    pub correct: bool,
    pub result: SearchResult,
}

/// Executable-but-wrong count: plans the evaluator accepted whose answer
/// misses the gold answer.
pub fn inconsistency_count<'a>(outcomes: impl IntoIterator<Item = &'a RunOutcome>) -> usize {
    outcomes
        .into_iter()
        .filter(|o| o.result.success && !o.correct)
        .count()
}

/// Builds one generator per (question, repeat) run.
pub trait GeneratorFactory: Sync {
    fn name(&self) -> String;
    fn validate(&self, records: &[QuestionRecord]) -> Result<(), HarnessError> {
        let _ = records;
        Ok(())
    }
    fn make(&self, record: &QuestionRecord, seed: u64) -> Box<dyn Generator>;
}

/// Seeded mock generator driven by each record's gold plan.
pub struct MockFactory {
    pub p_step: f64,
    pub p_full: f64,
}

impl MockFactory {
    pub fn perfect() -> Self {
        MockFactory {
            p_step: 1.0,
            p_full: 1.0,
        }
    }
}

impl GeneratorFactory for MockFactory {
    fn name(&self) -> String {
        format!("mock(p_step={}, p_full={})", self.p_step, self.p_full)
    }

    fn validate(&self, records: &[QuestionRecord]) -> Result<(), HarnessError> {
        for record in records {
            if record.gold_plan.is_none() {
                return Err(HarnessError::Config(format!(
                    "mock generation needs a gold plan; record {} has none",
                    record.id
                )));
            }
        }
        Ok(())
    }

    fn make(&self, record: &QuestionRecord, seed: u64) -> Box<dyn Generator> {
        let gold = record
            .gold_plan
            .clone()
            .expect("validated: gold plan present");
        Box::new(MockGenerator::new(MockConfig::noisy(
            gold,
            self.p_step,
            self.p_full,
            seed,
        )))
    }
}

/// Chat-backed generation with per-type example libraries.
pub struct ChatFactory {
    pub client: Arc<LlmClient>,
    pub libraries: BTreeMap<QuestionType, Vec<PromptExample>>,
    pub examples: usize,
}

impl ChatFactory {
    /// Derive per-type libraries from a dataset's library records.
    pub fn from_library_records<'a>(
        client: Arc<LlmClient>,
        records: impl IntoIterator<Item = &'a QuestionRecord>,
        examples: usize,
    ) -> Self {
        let mut libraries: BTreeMap<QuestionType, Vec<PromptExample>> = BTreeMap::new();
        for record in records {
            if let Some(plan) = &record.gold_plan {
                libraries
                    .entry(record.question_type)
                    .or_default()
                    .push(PromptExample {
                        question: record.question.clone(),
                        plan: crate::plan_dsl::render_plan(plan),
                    });
            }
        }
        ChatFactory {
            client,
            libraries,
            examples,
        }
    }
}

impl GeneratorFactory for ChatFactory {
    fn name(&self) -> String {
        "chat".to_string()
    }

    fn validate(&self, records: &[QuestionRecord]) -> Result<(), HarnessError> {
        for record in records {
            let available = self
                .libraries
                .get(&record.question_type)
                .map(Vec::len)
                .unwrap_or(0);
            if available < self.examples {
                return Err(HarnessError::Config(format!(
                    "{} example library holds {available} entries, {} needed",
                    record.question_type, self.examples
                )));
            }
        }
        Ok(())
    }

    fn make(&self, record: &QuestionRecord, seed: u64) -> Box<dyn Generator> {
        let library = self
            .libraries
            .get(&record.question_type)
            .cloned()
            .unwrap_or_default();
        let config = ChatGeneratorConfig::new(library, seed);
        Box::new(ChatGenerator::new(config, Arc::clone(&self.client)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub generator: String,
    pub base_seed: u64,
    pub repeats: usize,
    pub questions: usize,
    pub algorithms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub algorithm: String,
    /// Percent of runs whose answer matched gold.
    pub accuracy: f64,
    pub mean_steps: f64,
    /// Mean per-repeat count of questions answered correctly with zero
    /// backtrack events.
    pub no_back: f64,
    /// Mean per-repeat count of accepted-but-wrong plans.
    pub inconsistency: f64,
    pub zero_backtrack_runs: usize,
    pub backtracked_runs: usize,
    pub total_runs: usize,
    pub correct_runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TypeRow {
    pub structure: String,
    pub question_type: String,
    pub avg_hop: f64,
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RssiRow {
    pub question_type: String,
    pub variant: String,
    /// Ratio of mean steps (the primary definition).
    pub ratio_of_means: f64,
    /// Mean of per-run step ratios, reported for comparison with the
    /// ratio-of-means convention.
    pub mean_of_ratios: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRow {
    pub algorithm: String,
    pub hop_vs_accuracy: Option<f64>,
    pub hop_vs_steps: Option<f64>,
    pub hop_vs_no_back: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub meta: RunMeta,
    pub rows: Vec<TypeRow>,
    pub rssi: Vec<RssiRow>,
    pub correlations: Vec<CorrelationRow>,
}

/// The standard four-algorithm comparison.
pub fn bench_configs() -> Vec<SearchConfig> {
    vec![
        SearchConfig::one_stop(),
        SearchConfig::tot(),
        SearchConfig::tot_os(2),
        SearchConfig::tot_block(2),
    ]
}

/// Run every record under every config for the given repeats and aggregate.
/// Per-question failures are recorded in the outcomes, never raised.
pub fn run_experiment(
    records: &[QuestionRecord],
    configs: &[SearchConfig],
    factory: &dyn GeneratorFactory,
    repeats: usize,
    base_seed: u64,
) -> Result<(Report, Vec<RunOutcome>), HarnessError> {
    if configs.is_empty() {
        return Err(HarnessError::Config(
            "no search configurations given".into(),
        ));
    }
    if repeats == 0 {
        return Err(HarnessError::Config("repeats must be at least 1".into()));
    }
    for config in configs {
        config
            .validate()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
    }
    factory.validate(records)?;

    let tasks: Vec<(usize, usize, usize)> = (0..records.len())
        .flat_map(|r| (0..configs.len()).flat_map(move |c| (0..repeats).map(move |k| (r, c, k))))
        .collect();
    let mut outcomes: Vec<RunOutcome> = tasks
        .par_iter()
        .map(|&(r, c, k)| {
            let record = &records[r];
            let config = &configs[c];
            let seed = seed_for_run(base_seed, &record.id, k as u64);
            let mut generator = factory.make(record, seed);
            let result = solve(&record.question, generator.as_mut(), &record.scene, config);
            let correct = result.success
                && result
                    .answer
                    .as_deref()
                    .is_some_and(|a| answers_match(&record.answer, a));
            RunOutcome {
                question_id: record.id.clone(),
                question_type: record.question_type,
                config_index: c,
                algorithm: config.label(),
                repeat: k,
                hops: record.gold_plan.as_ref().map(|p| p.len()).unwrap_or(0),
                correct,
                result,
            }
        })
        .collect();
    outcomes.sort_by(|a, b| {
        (a.question_type, &a.question_id, a.config_index, a.repeat).cmp(&(
            b.question_type,
            &b.question_id,
            b.config_index,
            b.repeat,
        ))
    });
    let report = build_report(
        records,
        configs,
        factory.name(),
        repeats,
        base_seed,
        &outcomes,
    );
    Ok((report, outcomes))
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut n) = (0.0, 0usize);
    for v in values {
        sum += v;
        n += 1;
    }
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

fn build_report(
    records: &[QuestionRecord],
    configs: &[SearchConfig],
    generator: String,
    repeats: usize,
    base_seed: u64,
    outcomes: &[RunOutcome],
) -> Report {
    let present: Vec<QuestionType> = QUESTION_TYPES
        .into_iter()
        .filter(|t| records.iter().any(|r| r.question_type == *t))
        .collect();

    let mut rows = Vec::new();
    for question_type in &present {
        let type_records: Vec<&QuestionRecord> = records
            .iter()
            .filter(|r| r.question_type == *question_type)
            .collect();
        let avg_hop = mean(
            type_records
                .iter()
                .map(|r| r.gold_plan.as_ref().map(|p| p.len()).unwrap_or(0) as f64),
        );
        let mut cells = Vec::new();
        for (c, config) in configs.iter().enumerate() {
            let cell_outcomes: Vec<&RunOutcome> = outcomes
                .iter()
                .filter(|o| o.question_type == *question_type && o.config_index == c)
                .collect();
            let total = cell_outcomes.len();
            let correct = cell_outcomes.iter().filter(|o| o.correct).count();
            let zero_backtrack = cell_outcomes
                .iter()
                .filter(|o| o.result.backtracks == 0)
                .count();
            let no_back_total = cell_outcomes
                .iter()
                .filter(|o| o.correct && o.result.backtracks == 0)
                .count();
            let inconsistent = inconsistency_count(cell_outcomes.iter().copied());
            cells.push(Cell {
                algorithm: config.label(),
                accuracy: if total == 0 {
                    0.0
                } else {
                    100.0 * correct as f64 / total as f64
                },
                mean_steps: mean(cell_outcomes.iter().map(|o| o.result.steps_used as f64)),
                no_back: no_back_total as f64 / repeats as f64,
                inconsistency: inconsistent as f64 / repeats as f64,
                zero_backtrack_runs: zero_backtrack,
                backtracked_runs: total - zero_backtrack,
                total_runs: total,
                correct_runs: correct,
            });
        }
        rows.push(TypeRow {
            structure: question_type.structure().label().to_string(),
            question_type: question_type.label().to_string(),
            avg_hop,
            cells,
        });
    }

    let rssi_rows = build_rssi_rows(configs, &rows, outcomes);
    let correlations = build_correlations(configs, &rows);

    Report {
        meta: RunMeta {
            generator,
            base_seed,
            repeats,
            questions: records.len(),
            algorithms: configs.iter().map(SearchConfig::label).collect(),
        },
        rows,
        rssi: rssi_rows,
        correlations,
    }
}

fn build_rssi_rows(
    configs: &[SearchConfig],
    rows: &[TypeRow],
    outcomes: &[RunOutcome],
) -> Vec<RssiRow> {
    let Some(tot_index) = configs.iter().position(|c| c.mode == SearchMode::ToT) else {
        return Vec::new();
    };
    let variant_indices: Vec<usize> = configs
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            matches!(
                c.mode,
                SearchMode::ToTOS { .. } | SearchMode::ToTBlock { .. }
            )
        })
        .map(|(i, _)| i)
        .collect();
    let mut out = Vec::new();
    for row in rows {
        for &v in &variant_indices {
            let tot_cell = &row.cells[tot_index];
            let variant_cell = &row.cells[v];
            if let Ok(ratio) = rssi(tot_cell.mean_steps, variant_cell.mean_steps) {
                out.push(RssiRow {
                    question_type: row.question_type.clone(),
                    variant: variant_cell.algorithm.clone(),
                    ratio_of_means: ratio,
                    mean_of_ratios: mean_of_ratios(outcomes, &row.question_type, tot_index, v),
                });
            }
        }
    }
    // Whole-dataset row per variant.
    for &v in &variant_indices {
        let tot_mean = mean(
            outcomes
                .iter()
                .filter(|o| o.config_index == tot_index)
                .map(|o| o.result.steps_used as f64),
        );
        let variant_mean = mean(
            outcomes
                .iter()
                .filter(|o| o.config_index == v)
                .map(|o| o.result.steps_used as f64),
        );
        if let Ok(ratio) = rssi(tot_mean, variant_mean) {
            out.push(RssiRow {
                question_type: "All".to_string(),
                variant: configs[v].label(),
                ratio_of_means: ratio,
                mean_of_ratios: mean_of_ratios_all(outcomes, tot_index, v),
            });
        }
    }
    out
}

fn mean_of_ratios(
    outcomes: &[RunOutcome],
    question_type: &str,
    tot_index: usize,
    variant_index: usize,
) -> Option<f64> {
    let pairs = paired_ratios(
        outcomes
            .iter()
            .filter(|o| o.question_type.label() == question_type),
        tot_index,
        variant_index,
    );
    if pairs.is_empty() {
        None
    } else {
        Some(mean(pairs.into_iter()))
    }
}

fn mean_of_ratios_all(
    outcomes: &[RunOutcome],
    tot_index: usize,
    variant_index: usize,
) -> Option<f64> {
    let pairs = paired_ratios(outcomes.iter(), tot_index, variant_index);
    if pairs.is_empty() {
        None
    } else {
        Some(mean(pairs.into_iter()))
    }
}

fn paired_ratios<'a>(
    outcomes: impl Iterator<Item = &'a RunOutcome>,
    tot_index: usize,
    variant_index: usize,
) -> Vec<f64> {
    let mut tot: BTreeMap<(String, usize), f64> = BTreeMap::new();
    let mut variant: BTreeMap<(String, usize), f64> = BTreeMap::new();
    for o in outcomes {
        let key = (o.question_id.clone(), o.repeat);
        if o.config_index == tot_index {
            tot.insert(key, o.result.steps_used as f64);
        } else if o.config_index == variant_index {
            variant.insert(key, o.result.steps_used as f64);
        }
    }
    tot.iter()
        .filter_map(|(key, t)| variant.get(key).map(|v| t / v))
        .collect()
}

fn build_correlations(configs: &[SearchConfig], rows: &[TypeRow]) -> Vec<CorrelationRow> {
    let hops: Vec<f64> = rows.iter().map(|r| r.avg_hop).collect();
    configs
        .iter()
        .enumerate()
        .map(|(c, config)| {
            let series = |f: &dyn Fn(&Cell) -> f64| -> Vec<f64> {
                rows.iter().map(|r| f(&r.cells[c])).collect()
            };
            CorrelationRow {
                algorithm: config.label(),
                hop_vs_accuracy: pearson(&hops, &series(&|cell| cell.accuracy)).ok(),
                hop_vs_steps: pearson(&hops, &series(&|cell| cell.mean_steps)).ok(),
                hop_vs_no_back: pearson(&hops, &series(&|cell| cell.no_back)).ok(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn from_name(name: &str) -> Option<ReportFormat> {
        match name {
            "table" => Some(ReportFormat::Table),
            "csv" => Some(ReportFormat::Csv),
            "json" => Some(ReportFormat::Json),
            _ => None,
        }
    }
}

/// Deterministic rendering; the table mirrors the per-type accuracy layout
/// with bracketed mean steps for the tree methods.
pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut text = serde_json::to_string_pretty(report).expect("report serializes");
            text.push('\n');
            text
        }
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Table => render_table(report),
    }
}

fn render_csv(report: &Report) -> String {
    let mut out = String::from(
        "structure,question_type,avg_hop,algorithm,accuracy,mean_steps,no_back,inconsistency,zero_backtrack_runs,backtracked_runs,total_runs,correct_runs\n",
    );
    for row in &report.rows {
        for cell in &row.cells {
            out.push_str(&format!(
                "{},{},{:.4},{},{:.4},{:.4},{:.4},{:.4},{},{},{},{}\n",
                row.structure,
                row.question_type,
                row.avg_hop,
                cell.algorithm,
                cell.accuracy,
                cell.mean_steps,
                cell.no_back,
                cell.inconsistency,
                cell.zero_backtrack_runs,
                cell.backtracked_runs,
                cell.total_runs,
                cell.correct_runs,
            ));
        }
    }
    out
}

fn render_table(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "generator: {}   seed: {}   repeats: {}   questions: {}\n\n",
        report.meta.generator, report.meta.base_seed, report.meta.repeats, report.meta.questions
    ));
    out.push_str(&format!("{:<16}{:<12}{:>6}  ", "Structure", "Type", "#hop"));
    for algorithm in &report.meta.algorithms {
        out.push_str(&format!("{:>18}", algorithm));
    }
    out.push('\n');
    let mut last_structure = String::new();
    for row in &report.rows {
        let structure = if row.structure == last_structure {
            String::new()
        } else {
            last_structure = row.structure.clone();
            row.structure.clone()
        };
        out.push_str(&format!(
            "{:<16}{:<12}{:>6.1}  ",
            structure, row.question_type, row.avg_hop
        ));
        for cell in &row.cells {
            let text = if cell.algorithm == "One-Stop" {
                format!("{:.2}", cell.accuracy)
            } else {
                format!("{:.2} ({:.2})", cell.accuracy, cell.mean_steps)
            };
            out.push_str(&format!("{:>18}", text));
        }
        out.push('\n');
    }
    if !report.rssi.is_empty() {
        out.push_str("\nstep saving index (baseline ToT / variant)\n");
        for row in &report.rssi {
            let mean_of_ratios = row
                .mean_of_ratios
                .map(|v| format!("{v:.4}"))
                .unwrap_or_else(|| "-".to_string());
            out.push_str(&format!(
                "{:<12}{:<18}ratio_of_means={:.4}  mean_of_ratios={}\n",
                row.question_type, row.variant, row.ratio_of_means, mean_of_ratios
            ));
        }
    }
    if report.rows.len() >= 2 {
        out.push_str("\nhop correlations (per-type means)\n");
        for row in &report.correlations {
            let fmt = |v: Option<f64>| {
                v.map(|v| format!("{v:.3}"))
                    .unwrap_or_else(|| "-".to_string())
            };
            out.push_str(&format!(
                "{:<18}acc={}  steps={}  no_back={}\n",
                row.algorithm,
                fmt(row.hop_vs_accuracy),
                fmt(row.hop_vs_steps),
                fmt(row.hop_vs_no_back),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::fixtures::synthetic_records;

    #[test]
    fn rssi_matches_hand_division() {
        assert!((rssi(5.48, 3.04).unwrap() - 1.8026315789473684).abs() < 1e-12);
        assert!((rssi(15.90, 9.63).unwrap() - 1.6510903426791277).abs() < 1e-12);
        assert_eq!(rssi(3.3, 3.3).unwrap(), 1.0);
        assert!(matches!(rssi(2.0, 0.0), Err(MetricsError::DivisionByZero)));
    }

    #[test]
    fn pearson_fixtures() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap() - 0.5).abs() < 1e-12);
        assert!(pearson(&[1.0, 1.0], &[1.0, 2.0]).is_err());
        assert!(pearson(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn perfect_mock_experiment_is_all_correct() {
        let records = synthetic_records(6, 2, 4);
        let configs = bench_configs();
        let (report, outcomes) =
            run_experiment(&records, &configs, &MockFactory::perfect(), 2, 11).unwrap();
        assert_eq!(outcomes.len(), 6 * 4 * 2);
        for row in &report.rows {
            for cell in &row.cells {
                assert_eq!(cell.accuracy, 100.0, "{}", cell.algorithm);
                assert_eq!(cell.backtracked_runs, 0);
                assert_eq!(
                    cell.zero_backtrack_runs + cell.backtracked_runs,
                    cell.total_runs
                );
            }
        }
    }

    #[test]
    fn report_is_invariant_to_record_order() {
        let mut records = synthetic_records(8, 2, 5);
        let configs = bench_configs();
        let factory = MockFactory {
            p_step: 0.7,
            p_full: 0.5,
        };
        let (forward, _) = run_experiment(&records, &configs, &factory, 2, 3).unwrap();
        records.reverse();
        let (reversed, _) = run_experiment(&records, &configs, &factory, 2, 3).unwrap();
        assert_eq!(forward, reversed);
    }

    #[test]
    fn csv_round_trips() {
        let records = synthetic_records(4, 2, 3);
        let (report, _) =
            run_experiment(&records, &bench_configs(), &MockFactory::perfect(), 1, 5).unwrap();
        let csv = render_csv(&report);
        let mut lines = csv.lines();
        let header = lines.next().unwrap();
        assert_eq!(header.split(',').count(), 12);
        let mut parsed = 0;
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 12);
            let row = report
                .rows
                .iter()
                .find(|r| r.question_type == fields[1])
                .unwrap();
            let cell = row.cells.iter().find(|c| c.algorithm == fields[3]).unwrap();
            assert_eq!(format!("{:.4}", cell.accuracy), fields[4]);
            assert_eq!(format!("{:.4}", cell.mean_steps), fields[5]);
            assert_eq!(cell.total_runs.to_string(), fields[10]);
            parsed += 1;
        }
        assert_eq!(parsed, report.rows.len() * report.meta.algorithms.len());
    }

    #[test]
    fn chat_factory_rejects_thin_example_libraries() {
        use crate::llm_client::{ClientConfig, LlmClient, ReplayCache};
        let records = synthetic_records(1, 2, 2);
        let client = Arc::new(LlmClient::replaying(
            ClientConfig::default(),
            ReplayCache::in_memory(),
        ));
        let factory = ChatFactory {
            client,
            libraries: BTreeMap::new(),
            examples: 4,
        };
        let err = run_experiment(
            &records,
            &[crate::search::SearchConfig::tot()],
            &factory,
            1,
            0,
        )
        .unwrap_err();
        assert!(matches!(err, HarnessError::Config(_)));
    }

    #[test]
    fn hopeless_one_stop_scores_zero() {
        let records = synthetic_records(5, 2, 4);
        let factory = MockFactory {
            p_step: 1.0,
            p_full: 0.0,
        };
        let (report, _) = run_experiment(
            &records,
            &[crate::search::SearchConfig::one_stop()],
            &factory,
            2,
            4,
        )
        .unwrap();
        let cell = &report.rows[0].cells[0];
        assert_eq!(cell.accuracy, 0.0);
        assert_eq!(cell.mean_steps, 1.0);
    }

    #[test]
    fn perfect_block_rssi_equals_block_size_on_divisible_hops() {
        // Hops 4 and 8 both divide by 2 and by 4.
        let mut records = synthetic_records(2, 4, 4);
        records.extend(synthetic_records(2, 8, 8).into_iter().map(|mut r| {
            r.id = format!("{}-b", r.id);
            r
        }));
        for k in [2usize, 4] {
            let configs = vec![
                crate::search::SearchConfig::tot(),
                crate::search::SearchConfig::tot_block(k),
            ];
            let (report, _) =
                run_experiment(&records, &configs, &MockFactory::perfect(), 1, 3).unwrap();
            let row = &report.rows[0];
            let ratio = rssi(row.cells[0].mean_steps, row.cells[1].mean_steps).unwrap();
            assert_eq!(ratio, k as f64);
        }
    }

    #[test]
    fn empty_report_renders_header_only() {
        let report = Report {
            meta: RunMeta {
                generator: "mock".into(),
                base_seed: 0,
                repeats: 1,
                questions: 0,
                algorithms: vec!["ToT".into()],
            },
            rows: Vec::new(),
            rssi: Vec::new(),
            correlations: Vec::new(),
        };
        let table = render_report(&report, ReportFormat::Table);
        assert!(table.contains("Structure"));
        assert_eq!(table.lines().count(), 3);
        let csv = render_report(&report, ReportFormat::Csv);
        assert_eq!(csv.lines().count(), 1);
    }

    #[test]
    fn inconsistency_counts_accepted_but_wrong_plans() {
        // A record whose stated answer disagrees with what its plan computes:
        // the search still "solves" it, and that solve counts as inconsistent.
        let mut records = synthetic_records(3, 3, 3);
        records[0].answer = "999".to_string();
        let (report, outcomes) = run_experiment(
            &records,
            &[crate::search::SearchConfig::tot()],
            &MockFactory::perfect(),
            1,
            1,
        )
        .unwrap();
        let cell = &report.rows[0].cells[0];
        assert_eq!(cell.correct_runs, 2);
        assert_eq!(cell.inconsistency, 1.0);
        assert_eq!(inconsistency_count(outcomes.iter()), 1);
    }

    #[test]
    fn json_report_round_trips_and_is_stable() {
        let records = synthetic_records(3, 2, 4);
        let factory = MockFactory {
            p_step: 0.8,
            p_full: 0.6,
        };
        let (a, _) = run_experiment(&records, &bench_configs(), &factory, 2, 9).unwrap();
        let (b, _) = run_experiment(&records, &bench_configs(), &factory, 2, 9).unwrap();
        let ja = render_report(&a, ReportFormat::Json);
        assert_eq!(ja, render_report(&b, ReportFormat::Json));
        let parsed: Report = serde_json::from_str(&ja).unwrap();
        assert_eq!(parsed, a);
    }
}
