//! Plan-search engine and benchmark harness for scene-graph question answering.
//!
//! The crate executes code-like step plans (`Step n:var = fn(args)`) against
//! immutable scene graphs, evaluates candidate plans for executability and
//! scene consistency, and searches for complete plans with four strategies:
//! one-stop generation, depth-first tree search over single steps, tree search
//! with a one-stop tail, and tree search over fixed-size step blocks. A seeded
//! mock generator makes every search reproducible offline; a chat-completion
//! client with record/replay plugs in for live runs.

pub mod dataset;
pub mod evaluator;
pub mod generator;
pub mod harness;
pub mod interpreter;
pub mod llm_client;
pub mod plan_dsl;
pub mod scene_graph;
pub mod search;

pub use evaluator::{detect_stop, evaluate_candidate, Diagnostic, DiagnosticKind, Verdict};
pub use interpreter::{execute_plan, format_answer, Env, Trace, Value};
pub use plan_dsl::{extract_steps_from_response, parse_plan, render_plan, Plan, PlanStep};
pub use scene_graph::{load_scene, SceneGraph, SceneStyle};
pub use search::{run_one_stop, solve, SearchConfig, SearchMode, SearchResult};
