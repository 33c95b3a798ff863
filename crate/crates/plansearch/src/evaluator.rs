//! Candidate-plan evaluation: static signature/type checking, scene-vocabulary
//! checking of string literals, execution, and the empty-result policy.
//!
//! A candidate prefix passes when no hard diagnostic is raised. Passing says
//! the prefix runs and its parameters refer to things that exist in the scene;
//! it does not guarantee the final answer is right — the harness counts those
//! inconsistencies separately.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::interpreter::tokens::{canonical_term, number_word};
use crate::interpreter::{execute_plan, ValueKind, ALL_OBJECTS, STOP_SIGN};
use crate::plan_dsl::{Arg, ListItem, Plan};
use crate::scene_graph::{SceneGraph, SceneStyle, VocabularyIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiagnosticKind {
    ParseFailure,
    UnknownFunction,
    ArityMismatch,
    ArgTypeMismatch,
    UndefinedVariable,
    VocabularyMismatch,
    RuntimeFailure,
    EmptyResult,
    NonSequentialIndex,
    Rebinding,
}

impl DiagnosticKind {
    /// Soft diagnostics never flip a verdict to fail.
    pub fn is_soft(&self) -> bool {
        matches!(
            self,
            DiagnosticKind::NonSequentialIndex | DiagnosticKind::Rebinding
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    /// Step index as written in the plan; 0 when no step applies.
    pub step: i64,
    pub kind: DiagnosticKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub diagnostics: Vec<Diagnostic>,
}

impl Verdict {
    fn from_diagnostics(diagnostics: Vec<Diagnostic>) -> Self {
        let pass = diagnostics.iter().all(|d| d.kind.is_soft());
        Verdict { pass, diagnostics }
    }

    /// Verdict produced by callers when a generation yields no parsable steps.
    pub fn parse_failure(message: impl Into<String>) -> Self {
        Verdict {
            pass: false,
            diagnostics: vec![Diagnostic {
                step: 0,
                kind: DiagnosticKind::ParseFailure,
                message: message.into(),
            }],
        }
    }

    pub fn hard_kinds(&self) -> Vec<DiagnosticKind> {
        self.diagnostics
            .iter()
            .filter(|d| !d.kind.is_soft())
            .map(|d| d.kind)
            .collect()
    }
}

/// True iff some step assigns the stop sign `ans`.
pub fn detect_stop(prefix: &Plan) -> bool {
    prefix.steps.iter().any(|s| s.target == STOP_SIGN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ParamKind {
    Text,
    Objects,
    Num,
    Descriptors,
    Relations,
    NumOrText,
}

struct Signature {
    params: &'static [ParamKind],
    result: ValueKind,
}

/// Closed table of the 19 tools plus the `fewer_than` alias; unknown names are
/// never executed.
fn signature_of(function: &str) -> Option<Signature> {
    use ParamKind::*;
    use ValueKind as V;
    let sig = match function {
        "filter_object" | "filter_category" => Signature {
            params: &[Text, Objects],
            result: V::Objects,
        },
        "filter_part" => Signature {
            params: &[Descriptors, Objects],
            result: V::Objects,
        },
        "exclude_object" | "intersection" => Signature {
            params: &[Objects, Objects],
            result: V::Objects,
        },
        "query_relation" => Signature {
            params: &[Text, Objects],
            result: V::Objects,
        },
        "get_relation" => Signature {
            params: &[Objects, Objects],
            result: V::Relations,
        },
        "filter_relation" => Signature {
            params: &[Relations, Objects, Objects],
            result: V::Objects,
        },
        "query_category" => Signature {
            params: &[Objects],
            result: V::Text,
        },
        "query_part" => Signature {
            params: &[Text, Objects],
            result: V::Text,
        },
        // One-argument query_color is handled by arity special-casing below.
        "query_color" => Signature {
            params: &[Text, Objects],
            result: V::Text,
        },
        "query_size" => Signature {
            params: &[Objects],
            result: V::Text,
        },
        "count_part" => Signature {
            params: &[Text, Objects],
            result: V::Num,
        },
        "count_object" => Signature {
            params: &[Objects],
            result: V::Num,
        },
        "sum" => Signature {
            params: &[Num, Num],
            result: V::Num,
        },
        "equal" => Signature {
            params: &[NumOrText, NumOrText],
            result: V::Bool,
        },
        "more_than" | "few_than" | "fewer_than" => Signature {
            params: &[Num, Num],
            result: V::Bool,
        },
        "exist" => Signature {
            params: &[Objects],
            result: V::Bool,
        },
        _ => return None,
    };
    Some(sig)
}

/// Statically known kind of a bound variable. `Unknown` absorbs earlier
/// failures so one bad step does not cascade.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VarKind {
    Known(ValueKind),
    Unknown,
}

struct StaticChecker<'s> {
    vars: BTreeMap<String, VarKind>,
    diagnostics: Vec<Diagnostic>,
    scene: &'s SceneGraph,
}

impl<'s> StaticChecker<'s> {
    fn new(scene: &'s SceneGraph) -> Self {
        let mut vars = BTreeMap::new();
        vars.insert(ALL_OBJECTS.to_string(), VarKind::Known(ValueKind::Objects));
        StaticChecker {
            vars,
            diagnostics: Vec::new(),
            scene,
        }
    }

    fn push(&mut self, step: i64, kind: DiagnosticKind, message: String) {
        self.diagnostics.push(Diagnostic {
            step,
            kind,
            message,
        });
    }

    fn var_kind(&mut self, step: i64, name: &str) -> VarKind {
        match self.vars.get(name) {
            Some(k) => *k,
            None => {
                self.push(
                    step,
                    DiagnosticKind::UndefinedVariable,
                    format!("variable \"{name}\" is used before definition"),
                );
                VarKind::Unknown
            }
        }
    }

    fn check_plain(&mut self, step: i64, function: &str, arg: &Arg, want: ValueKind) {
        let found = match arg {
            Arg::Str(_) => Some(ValueKind::Text),
            Arg::Int(_) => Some(ValueKind::Num),
            Arg::List(_) => {
                self.push(
                    step,
                    DiagnosticKind::ArgTypeMismatch,
                    format!("{function} does not take a list here"),
                );
                return;
            }
            Arg::Var(v) => match self.var_kind(step, v) {
                VarKind::Known(k) => Some(k),
                VarKind::Unknown => None,
            },
        };
        if let Some(found) = found {
            if found != want {
                self.push(
                    step,
                    DiagnosticKind::ArgTypeMismatch,
                    format!("{function} expects {want:?}, got {found:?}"),
                );
            }
        }
    }

    fn check_descriptors(&mut self, step: i64, function: &str, arg: &Arg) {
        let Arg::List(items) = arg else {
            self.push(
                step,
                DiagnosticKind::ArgTypeMismatch,
                format!("{function} expects a descriptor list"),
            );
            return;
        };
        for item in items {
            if let ListItem::Var(v) = item {
                if let VarKind::Known(k) = self.var_kind(step, v) {
                    if k != ValueKind::Text && k != ValueKind::Num {
                        self.push(
                            step,
                            DiagnosticKind::ArgTypeMismatch,
                            format!("descriptor variable \"{v}\" holds {k:?}"),
                        );
                    }
                }
            }
        }
    }

    fn arg_value_kind(&mut self, step: i64, arg: &Arg) -> Option<ValueKind> {
        match arg {
            Arg::Str(_) => Some(ValueKind::Text),
            Arg::Int(_) => Some(ValueKind::Num),
            Arg::List(_) => None,
            Arg::Var(v) => match self.var_kind(step, v) {
                VarKind::Known(k) => Some(k),
                VarKind::Unknown => None,
            },
        }
    }

    /// One canonicalized literal against one vocabulary set.
    fn check_vocab_token(
        &mut self,
        step: i64,
        token: &str,
        slot: &str,
        allowed: impl Fn(&VocabularyIndex, &str) -> bool,
    ) {
        if let Some(n) = number_word(token) {
            if n > self.scene.vocabulary.max_part_count {
                self.push(
                    step,
                    DiagnosticKind::VocabularyMismatch,
                    format!("number word \"{token}\" exceeds the scene's largest part count"),
                );
            }
            return;
        }
        let term = canonical_term(token);
        if !allowed(&self.scene.vocabulary, &term) {
            self.push(
                step,
                DiagnosticKind::VocabularyMismatch,
                format!("\"{token}\" is not a {slot} of this scene"),
            );
        }
    }

    fn check_vocabulary(&mut self, step: i64, function: &str, args: &[Arg]) {
        match function {
            "filter_object" | "filter_category" => {
                if let Some(Arg::Str(s)) = args.first() {
                    self.check_vocab_token(step, s, "category", |v, t| v.categories.contains(t));
                }
            }
            "query_part" => {
                if let Some(Arg::Str(s)) = args.first() {
                    self.check_vocab_token(step, s, "color", |v, t| v.colors.contains(t));
                }
            }
            "count_part" => {
                if let Some(Arg::Str(s)) = args.first() {
                    self.check_vocab_token(step, s, "part name", |v, t| v.part_names.contains(t));
                }
            }
            "query_color" => {
                if args.len() == 2 {
                    if let Some(Arg::Str(s)) = args.first() {
                        self.check_vocab_token(step, s, "part name", |v, t| {
                            v.part_names.contains(t)
                        });
                    }
                }
            }
            "filter_part" => {
                let Some(Arg::List(items)) = args.first() else {
                    return;
                };
                let part_based = self.scene.style == SceneStyle::PartBased;
                for item in items {
                    match item {
                        ListItem::Str(s) => {
                            self.check_vocab_token(step, s, "scene token", |v, t| {
                                v.colors.contains(t)
                                    || v.sizes.contains(t)
                                    || v.materials.contains(t)
                                    || if part_based {
                                        v.part_names.contains(t)
                                    } else {
                                        v.categories.contains(t)
                                    }
                            });
                        }
                        ListItem::Int(n) => {
                            if *n > self.scene.vocabulary.max_part_count {
                                self.push(
                                    step,
                                    DiagnosticKind::VocabularyMismatch,
                                    format!("count {n} exceeds the scene's largest part count"),
                                );
                            }
                        }
                        ListItem::Var(_) => {} // dynamic, covered by execution
                    }
                }
            }
            _ => {}
        }
    }

    fn check_step(&mut self, position: usize, step: &crate::plan_dsl::PlanStep) {
        let idx = step.index;
        if idx != (position + 1) as i64 {
            self.push(
                idx,
                DiagnosticKind::NonSequentialIndex,
                format!("step written as {idx} sits at position {}", position + 1),
            );
        }
        if self.vars.contains_key(&step.target) {
            self.push(
                idx,
                DiagnosticKind::Rebinding,
                format!("\"{}\" is assigned more than once", step.target),
            );
        }
        let Some(sig) = signature_of(&step.call.function) else {
            self.push(
                idx,
                DiagnosticKind::UnknownFunction,
                format!("\"{}\" is not a tool", step.call.function),
            );
            self.vars.insert(step.target.clone(), VarKind::Unknown);
            return;
        };
        let args = &step.call.args;
        // query_color also accepts a single object argument.
        let params: &[ParamKind] = if step.call.function == "query_color" && args.len() == 1 {
            &[ParamKind::Objects]
        } else {
            sig.params
        };
        if args.len() != params.len() {
            self.push(
                idx,
                DiagnosticKind::ArityMismatch,
                format!(
                    "{} takes {} argument(s), got {}",
                    step.call.function,
                    params.len(),
                    args.len()
                ),
            );
            self.vars.insert(step.target.clone(), VarKind::Unknown);
            return;
        }
        for (arg, param) in args.iter().zip(params) {
            match param {
                ParamKind::Text => self.check_plain(idx, &step.call.function, arg, ValueKind::Text),
                ParamKind::Objects => {
                    self.check_plain(idx, &step.call.function, arg, ValueKind::Objects)
                }
                ParamKind::Num => self.check_plain(idx, &step.call.function, arg, ValueKind::Num),
                ParamKind::Relations => {
                    self.check_plain(idx, &step.call.function, arg, ValueKind::Relations)
                }
                ParamKind::Descriptors => self.check_descriptors(idx, &step.call.function, arg),
                ParamKind::NumOrText => {
                    if let Some(k) = self.arg_value_kind(idx, arg) {
                        if k != ValueKind::Num && k != ValueKind::Text {
                            self.push(
                                idx,
                                DiagnosticKind::ArgTypeMismatch,
                                format!(
                                    "{} expects numbers or text, got {k:?}",
                                    step.call.function
                                ),
                            );
                        }
                    } else if matches!(arg, Arg::List(_)) {
                        self.push(
                            idx,
                            DiagnosticKind::ArgTypeMismatch,
                            format!("{} does not take a list", step.call.function),
                        );
                    }
                }
            }
        }
        if step.call.function == "equal" && args.len() == 2 {
            let a = self.arg_value_kind(idx, &args[0]);
            let b = self.arg_value_kind(idx, &args[1]);
            if let (Some(a), Some(b)) = (a, b) {
                if a != b
                    && matches!(a, ValueKind::Num | ValueKind::Text)
                    && matches!(b, ValueKind::Num | ValueKind::Text)
                {
                    self.push(
                        idx,
                        DiagnosticKind::ArgTypeMismatch,
                        format!("equal cannot compare {a:?} with {b:?}"),
                    );
                }
            }
        }
        self.check_vocabulary(idx, &step.call.function, args);
        self.vars
            .insert(step.target.clone(), VarKind::Known(sig.result));
    }
}

/// Object-set results from these tools must be nonempty; an empty result is
/// evidence the plan filtered for something that is not there. `exclude_object`
/// and `filter_relation` legitimately produce empty sets.
const HARD_EMPTY_FUNCTIONS: [&str; 5] = [
    "filter_object",
    "filter_part",
    "filter_category",
    "query_relation",
    "intersection",
];

/// The state evaluator: signature/type check, vocabulary check, execution,
/// empty-result policy, in that order. Execution is skipped once an earlier
/// stage raised a hard diagnostic.
pub fn evaluate_candidate(prefix: &Plan, scene: &SceneGraph) -> Verdict {
    if prefix.is_empty() {
        return Verdict::parse_failure("candidate contains no steps");
    }
    let mut checker = StaticChecker::new(scene);
    for (position, step) in prefix.steps.iter().enumerate() {
        checker.check_step(position, step);
    }
    let mut diagnostics = checker.diagnostics;
    let statically_sound = diagnostics.iter().all(|d| d.kind.is_soft());

    if statically_sound {
        match execute_plan(prefix, scene) {
            Err(failure) => diagnostics.push(Diagnostic {
                step: failure.step.unwrap_or(0),
                kind: DiagnosticKind::RuntimeFailure,
                message: failure.to_string(),
            }),
            Ok(trace) => {
                for record in &trace.steps {
                    let function = record.step.call.function.as_str();
                    if HARD_EMPTY_FUNCTIONS.contains(&function) {
                        if let crate::interpreter::Value::Objects(objs) = &record.value {
                            if objs.is_empty() {
                                diagnostics.push(Diagnostic {
                                    step: record.step.index,
                                    kind: DiagnosticKind::EmptyResult,
                                    message: format!("{function} produced an empty object set"),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Verdict::from_diagnostics(diagnostics)
}
