//! Depth-first plan search with evaluator-guided backtracking and a global
//! step budget.
//!
//! Every node visit issues exactly one generation and charges one step.
//! A candidate that the evaluator rejects counts one backtrack and the next
//! branch is tried; a node whose branches are all spent counts one backtrack
//! and returns to its parent. The budget check runs before each generation,
//! so `steps_used <= max_step` holds unconditionally.

use serde::Serialize;
use thiserror::Error;

use crate::evaluator::{evaluate_candidate, Verdict};
use crate::generator::{variant_dispatch, GenRequest, Generator, DEFAULT_EXAMPLE_COUNT};
use crate::interpreter::{execute_plan, format_answer};
use crate::plan_dsl::{extract_steps_from_response, Plan};
use crate::scene_graph::SceneGraph;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid search configuration: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    OneStop,
    ToT,
    ToTOS { start_depth: usize },
    ToTBlock { block: usize },
}

impl SearchMode {
    /// Column label used in reports.
    pub fn label(&self) -> String {
        match self {
            SearchMode::OneStop => "One-Stop".to_string(),
            SearchMode::ToT => "ToT".to_string(),
            SearchMode::ToTOS { start_depth } if *start_depth == 2 => "ToT-OS".to_string(),
            SearchMode::ToTOS { start_depth } => format!("ToT-OS(sn={start_depth})"),
            SearchMode::ToTBlock { block } if *block == 2 => "ToT-Block".to_string(),
            SearchMode::ToTBlock { block } => format!("ToT-Block(k={block})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Branches tried per node.
    pub branch: usize,
    /// Global generation budget.
    pub max_step: usize,
    /// Variable whose assignment marks a complete plan.
    pub stop_sign: String,
}

impl SearchConfig {
    pub fn one_stop() -> Self {
        SearchConfig {
            mode: SearchMode::OneStop,
            branch: 1,
            max_step: 30,
            stop_sign: "ans".into(),
        }
    }

    pub fn tot() -> Self {
        SearchConfig {
            mode: SearchMode::ToT,
            branch: 3,
            max_step: 30,
            stop_sign: "ans".into(),
        }
    }

    pub fn tot_os(start_depth: usize) -> Self {
        SearchConfig {
            mode: SearchMode::ToTOS { start_depth },
            branch: 3,
            max_step: 30,
            stop_sign: "ans".into(),
        }
    }

    /// Block search widens the tree: depth shrinks, so the branch factor
    /// defaults to 5 instead of 3.
    pub fn tot_block(block: usize) -> Self {
        SearchConfig {
            mode: SearchMode::ToTBlock { block },
            branch: 5,
            max_step: 30,
            stop_sign: "ans".into(),
        }
    }

    pub fn with_max_step(mut self, max_step: usize) -> Self {
        self.max_step = max_step;
        self
    }

    pub fn with_branch(mut self, branch: usize) -> Self {
        self.branch = branch;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.branch < 1 {
            return Err(ConfigError::Invalid(
                "branch factor must be at least 1".into(),
            ));
        }
        if self.max_step < 1 {
            return Err(ConfigError::Invalid("max_step must be at least 1".into()));
        }
        if self.stop_sign.is_empty() {
            return Err(ConfigError::Invalid("stop sign must be nonempty".into()));
        }
        match self.mode {
            SearchMode::ToTOS { start_depth } if start_depth < 1 => Err(ConfigError::Invalid(
                "start depth must be at least 1".into(),
            )),
            SearchMode::ToTBlock { block } if block < 1 => {
                Err(ConfigError::Invalid("block size must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        self.mode.label()
    }
}

/// One node-visit record: what was generated at which (depth, branch) and how
/// it was judged. Serialized as JSON lines for run traces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeEvent {
    pub depth: usize,
    pub branch: usize,
    pub text: String,
    pub verdict: Verdict,
    /// Step counter value after this generation.
    pub t: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub success: bool,
    /// Canonical text of the solved plan.
    pub plan: Option<String>,
    pub answer: Option<String>,
    pub steps_used: usize,
    pub backtracks: usize,
    /// True when no candidate was rejected and no subtree was exhausted.
    pub no_back: bool,
    pub events: Vec<NodeEvent>,
}

impl SearchResult {
    pub fn trace_json_lines(&self) -> String {
        let mut out = String::new();
        for event in &self.events {
            out.push_str(&serde_json::to_string(event).expect("event serializes"));
            out.push('\n');
        }
        out
    }
}

struct SearchState<'g> {
    generator: &'g mut dyn Generator,
    config: SearchConfig,
    question: String,
    t: usize,
    backtracks: usize,
    events: Vec<NodeEvent>,
}

enum Outcome {
    Solved(Plan),
    BudgetExhausted,
    Exhausted,
}

impl SearchState<'_> {
    fn contains_stop(&self, plan: &Plan) -> bool {
        plan.steps.iter().any(|s| s.target == self.config.stop_sign)
    }

    /// One generation: charges a step and returns the raw text (empty on
    /// transport failure, which the evaluator then rejects as unparsable).
    fn generate(&mut self, trajectory: &Plan, depth: usize, branch: usize) -> String {
        self.t += 1;
        let mode = variant_dispatch(&self.config.mode, depth, branch);
        let request = GenRequest {
            question: self.question.clone(),
            trajectory: trajectory.clone(),
            mode,
            examples: DEFAULT_EXAMPLE_COUNT,
            seed_context: self.t as u64,
        };
        self.generator.generate(&request).unwrap_or_default()
    }

    fn dfs(&mut self, prefix: &Plan, depth: usize, scene: &SceneGraph) -> Outcome {
        for branch in 0..self.config.branch {
            if self.t >= self.config.max_step {
                return Outcome::BudgetExhausted;
            }
            let text = self.generate(prefix, depth, branch);
            let steps = extract_steps_from_response(&text);
            let (candidate, verdict) = if steps.is_empty() {
                (
                    prefix.clone(),
                    Verdict::parse_failure("generation contained no step lines"),
                )
            } else {
                let candidate = prefix.extended_with(&steps);
                let verdict = evaluate_candidate(&candidate, scene);
                (candidate, verdict)
            };
            let pass = verdict.pass;
            self.events.push(NodeEvent {
                depth,
                branch,
                text,
                verdict,
                t: self.t,
            });
            if pass && self.contains_stop(&candidate) {
                return Outcome::Solved(candidate);
            }
            if pass {
                match self.dfs(&candidate, depth + 1, scene) {
                    Outcome::Solved(plan) => return Outcome::Solved(plan),
                    Outcome::BudgetExhausted => return Outcome::BudgetExhausted,
                    Outcome::Exhausted => {} // child counted its own exhaustion
                }
            } else {
                self.backtracks += 1;
            }
        }
        self.backtracks += 1;
        Outcome::Exhausted
    }

    fn finish(self, outcome: Outcome, scene: &SceneGraph) -> SearchResult {
        let (success, plan, answer) = match outcome {
            Outcome::Solved(plan) => {
                let answer = execute_plan(&plan, scene)
                    .ok()
                    .and_then(|trace| trace.answer)
                    .and_then(|value| format_answer(&value).ok());
                (true, Some(crate::plan_dsl::render_plan(&plan)), answer)
            }
            _ => (false, None, None),
        };
        SearchResult {
            success,
            plan,
            answer,
            steps_used: self.t,
            backtracks: self.backtracks,
            no_back: self.backtracks == 0,
            events: self.events,
        }
    }
}

/// Single-generation baseline: one Remaining call, one evaluation, no retry.
pub fn run_one_stop(
    question: &str,
    generator: &mut dyn Generator,
    scene: &SceneGraph,
) -> SearchResult {
    let mut state = SearchState {
        generator,
        config: SearchConfig::one_stop(),
        question: question.to_string(),
        t: 0,
        backtracks: 0,
        events: Vec::new(),
    };
    let text = state.generate(&Plan::default(), 1, 0);
    let steps = extract_steps_from_response(&text);
    let (candidate, verdict) = if steps.is_empty() {
        (
            Plan::default(),
            Verdict::parse_failure("generation contained no step lines"),
        )
    } else {
        let verdict = evaluate_candidate(&steps, scene);
        (steps, verdict)
    };
    let pass = verdict.pass;
    if !pass {
        state.backtracks += 1;
    }
    state.events.push(NodeEvent {
        depth: 1,
        branch: 0,
        text,
        verdict,
        t: state.t,
    });
    let outcome = if pass && state.contains_stop(&candidate) {
        Outcome::Solved(candidate)
    } else {
        Outcome::Exhausted
    };
    state.finish(outcome, scene)
}

/// Depth-first search under the configured mode. Failures (budget exhaustion,
/// exhausted tree) come back as unsuccessful results, never errors.
pub fn solve(
    question: &str,
    generator: &mut dyn Generator,
    scene: &SceneGraph,
    config: &SearchConfig,
) -> SearchResult {
    config.validate().expect("validated configuration");
    if config.mode == SearchMode::OneStop {
        return run_one_stop(question, generator, scene);
    }
    let mut state = SearchState {
        generator,
        config: config.clone(),
        question: question.to_string(),
        t: 0,
        backtracks: 0,
        events: Vec::new(),
    };
    let outcome = state.dfs(&Plan::default(), 1, scene);
    state.finish(outcome, scene)
}
