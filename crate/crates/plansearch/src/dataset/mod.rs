//! Question records, the 9-type × 4-structure taxonomy, dataset loading, and
//! bundled fixtures.
//!
//! Datasets are JSONL, one record per line, with the scene document embedded
//! so a file is self-contained:
//!
//! ```text
//! {"id": "...", "question": "...", "answer": "...", "question_type": "Sum",
//!  "structure": "Parallel", "gold_plan": ["Step 1:...", ...],
//!  "scene": {"relationships": {...}, "objects": [...]}, "split": "test"}
//! ```
//!
//! `split` is optional ("library" or "test", default "test").

pub mod fixtures;

use std::fmt;
use std::path::Path;

use serde_json::Value as Json;
use thiserror::Error;

use crate::interpreter::tokens::canonical;
use crate::interpreter::{execute_plan, format_answer};
use crate::plan_dsl::{parse_plan, render_step, Plan};
use crate::scene_graph::{load_scene_value, SceneError, SceneGraph};

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("taxonomy error: {0}")]
    Taxonomy(String),
    #[error("gold plan mismatch: {0}")]
    GoldPlanMismatch(String),
    #[error("record {0} has no gold plan")]
    MissingGoldPlan(String),
    #[error(transparent)]
    Scene(#[from] SceneError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QuestionType {
    ShortRel,
    LongRel,
    Sum,
    Compare,
    Logic,
    QueryPart,
    Exist,
    Count,
    Analogy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InferenceStructure {
    Sequence,
    Parallel,
    Backtrack,
    MultiBacktrack,
}

/// All question types in reporting order, grouped by structure.
pub const QUESTION_TYPES: [QuestionType; 9] = [
    QuestionType::ShortRel,
    QuestionType::LongRel,
    QuestionType::Sum,
    QuestionType::Compare,
    QuestionType::Logic,
    QuestionType::QueryPart,
    QuestionType::Exist,
    QuestionType::Count,
    QuestionType::Analogy,
];

impl QuestionType {
    pub fn label(&self) -> &'static str {
        match self {
            QuestionType::ShortRel => "Short Rel",
            QuestionType::LongRel => "Long Rel",
            QuestionType::Sum => "Sum",
            QuestionType::Compare => "Compare",
            QuestionType::Logic => "Logic",
            QuestionType::QueryPart => "Query Part",
            QuestionType::Exist => "Exist",
            QuestionType::Count => "Count",
            QuestionType::Analogy => "Analogy",
        }
    }

    pub fn from_label(label: &str) -> Option<QuestionType> {
        QUESTION_TYPES.iter().copied().find(|t| t.label() == label)
    }

    /// The inference structure a type belongs to; fixed by the taxonomy.
    pub fn structure(&self) -> InferenceStructure {
        match self {
            QuestionType::ShortRel | QuestionType::LongRel => InferenceStructure::Sequence,
            QuestionType::Sum | QuestionType::Compare | QuestionType::Logic => {
                InferenceStructure::Parallel
            }
            QuestionType::QueryPart | QuestionType::Exist | QuestionType::Count => {
                InferenceStructure::Backtrack
            }
            QuestionType::Analogy => InferenceStructure::MultiBacktrack,
        }
    }
}

impl fmt::Display for QuestionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl InferenceStructure {
    pub fn label(&self) -> &'static str {
        match self {
            InferenceStructure::Sequence => "Sequence",
            InferenceStructure::Parallel => "Parallel",
            InferenceStructure::Backtrack => "Backtrack",
            InferenceStructure::MultiBacktrack => "Multi-Backtrack",
        }
    }

    pub fn from_label(label: &str) -> Option<InferenceStructure> {
        [
            InferenceStructure::Sequence,
            InferenceStructure::Parallel,
            InferenceStructure::Backtrack,
            InferenceStructure::MultiBacktrack,
        ]
        .into_iter()
        .find(|s| s.label() == label)
    }
}

impl fmt::Display for InferenceStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone)]
pub struct QuestionRecord {
    pub id: String,
    pub question: String,
    pub answer: String,
    pub question_type: QuestionType,
    pub gold_plan: Option<Plan>,
    pub scene: SceneGraph,
}

impl QuestionRecord {
    pub fn structure(&self) -> InferenceStructure {
        self.question_type.structure()
    }

    /// Serialize to the JSONL record shape.
    pub fn to_json(&self, split: &str) -> Json {
        let mut map = serde_json::Map::new();
        map.insert("id".into(), Json::from(self.id.clone()));
        map.insert("question".into(), Json::from(self.question.clone()));
        map.insert("answer".into(), Json::from(self.answer.clone()));
        map.insert(
            "question_type".into(),
            Json::from(self.question_type.label()),
        );
        map.insert("structure".into(), Json::from(self.structure().label()));
        if let Some(plan) = &self.gold_plan {
            map.insert(
                "gold_plan".into(),
                Json::Array(
                    plan.steps
                        .iter()
                        .map(|s| Json::from(render_step(s)))
                        .collect(),
                ),
            );
        }
        map.insert("scene".into(), self.scene.to_document());
        map.insert("split".into(), Json::from(split));
        Json::Object(map)
    }
}

/// Gold-plan step count, the operational hop number.
pub fn hop_of(record: &QuestionRecord) -> Result<usize, DatasetError> {
    record
        .gold_plan
        .as_ref()
        .map(|p| p.len())
        .ok_or_else(|| DatasetError::MissingGoldPlan(record.id.clone()))
}

/// Answers compare case-insensitively after canonicalization.
pub fn answers_match(expected: &str, actual: &str) -> bool {
    canonical(expected) == canonical(actual)
}

#[derive(Debug, Clone, Default)]
pub struct DatasetSplit {
    pub library: Vec<QuestionRecord>,
    pub test: Vec<QuestionRecord>,
}

impl DatasetSplit {
    pub fn all_records(&self) -> impl Iterator<Item = &QuestionRecord> {
        self.library.iter().chain(self.test.iter())
    }

    pub fn library_for(&self, question_type: QuestionType) -> Vec<&QuestionRecord> {
        self.library
            .iter()
            .filter(|r| r.question_type == question_type)
            .collect()
    }

    /// Serialize the whole split to JSONL, library records first.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for record in &self.library {
            out.push_str(&record.to_json("library").to_string());
            out.push('\n');
        }
        for record in &self.test {
            out.push_str(&record.to_json("test").to_string());
            out.push('\n');
        }
        out
    }
}

fn parse_record(json: &Json, line: usize) -> Result<(QuestionRecord, String), DatasetError> {
    let obj = json
        .as_object()
        .ok_or_else(|| DatasetError::Schema(format!("line {line}: record is not an object")))?;
    let field = |name: &str| -> Result<&str, DatasetError> {
        obj.get(name).and_then(Json::as_str).ok_or_else(|| {
            DatasetError::Schema(format!("line {line}: missing text field \"{name}\""))
        })
    };
    let id = field("id")?.to_string();
    let question = field("question")?.to_string();
    let answer = field("answer")?.to_string();
    let type_label = field("question_type")?;
    let question_type = QuestionType::from_label(type_label).ok_or_else(|| {
        DatasetError::Taxonomy(format!(
            "record {id}: unknown question type \"{type_label}\""
        ))
    })?;
    let structure_label = field("structure")?;
    let structure = InferenceStructure::from_label(structure_label).ok_or_else(|| {
        DatasetError::Taxonomy(format!(
            "record {id}: unknown structure \"{structure_label}\""
        ))
    })?;
    if structure != question_type.structure() {
        return Err(DatasetError::Taxonomy(format!(
            "record {id}: {} questions have structure {}, not {}",
            question_type.label(),
            question_type.structure().label(),
            structure_label
        )));
    }
    let scene_json = obj
        .get("scene")
        .ok_or_else(|| DatasetError::Schema(format!("record {id}: missing \"scene\"")))?;
    let scene = load_scene_value(scene_json)?;
    let gold_plan = match obj.get("gold_plan") {
        None | Some(Json::Null) => None,
        Some(Json::Array(lines)) => {
            let mut text = String::new();
            for l in lines {
                let s = l.as_str().ok_or_else(|| {
                    DatasetError::Schema(format!("record {id}: gold_plan entries must be text"))
                })?;
                text.push_str(s);
                text.push('\n');
            }
            let plan = parse_plan(&text).map_err(|e| {
                DatasetError::Schema(format!("record {id}: gold plan does not parse: {e}"))
            })?;
            Some(plan)
        }
        Some(_) => {
            return Err(DatasetError::Schema(format!(
                "record {id}: gold_plan must be a list of step strings"
            )))
        }
    };
    if let Some(plan) = &gold_plan {
        let trace = execute_plan(plan, &scene).map_err(|e| {
            DatasetError::GoldPlanMismatch(format!("record {id}: gold plan fails to run: {e}"))
        })?;
        let value = trace.answer.ok_or_else(|| {
            DatasetError::GoldPlanMismatch(format!("record {id}: gold plan never assigns ans"))
        })?;
        let produced = format_answer(&value).map_err(|e| {
            DatasetError::GoldPlanMismatch(format!("record {id}: gold answer value: {e}"))
        })?;
        if !answers_match(&answer, &produced) {
            return Err(DatasetError::GoldPlanMismatch(format!(
                "record {id}: gold plan produces \"{produced}\", record says \"{answer}\""
            )));
        }
    }
    let split = obj
        .get("split")
        .and_then(Json::as_str)
        .unwrap_or("test")
        .to_string();
    if split != "library" && split != "test" {
        return Err(DatasetError::Schema(format!(
            "record {id}: split must be \"library\" or \"test\""
        )));
    }
    Ok((
        QuestionRecord {
            id,
            question,
            answer,
            question_type,
            gold_plan,
            scene,
        },
        split,
    ))
}

/// Parse a JSONL dataset. Every record is validated: taxonomy, scene
/// invariants, and gold-plan execution against the stated answer.
pub fn parse_dataset(text: &str) -> Result<DatasetSplit, DatasetError> {
    let mut split = DatasetSplit::default();
    let mut seen = std::collections::BTreeSet::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let json: Json = serde_json::from_str(line)
            .map_err(|e| DatasetError::Schema(format!("line {}: invalid JSON: {e}", i + 1)))?;
        let (record, kind) = parse_record(&json, i + 1)?;
        if !seen.insert(record.id.clone()) {
            return Err(DatasetError::Schema(format!(
                "duplicate record id \"{}\"",
                record.id
            )));
        }
        match kind.as_str() {
            "library" => split.library.push(record),
            _ => split.test.push(record),
        }
    }
    Ok(split)
}

pub fn load_dataset(path: impl AsRef<Path>) -> Result<DatasetSplit, DatasetError> {
    let text = std::fs::read_to_string(path)?;
    parse_dataset(&text)
}
