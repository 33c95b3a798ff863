//! Deterministic plan execution against a scene graph.
//!
//! Steps run in order, each binding its target variable; execution stops at
//! the first failure or after the step assigning `ans` (the stop sign).

pub mod tokens;
pub mod tools;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::plan_dsl::{Arg, ListItem, Plan, PlanStep};
use crate::scene_graph::SceneGraph;

use tokens::{canonical, DescriptorList, DescriptorToken};

/// Variable that marks a complete plan.
pub const STOP_SIGN: &str = "ans";
/// Pre-bound variable holding every object index.
pub const ALL_OBJECTS: &str = "all_obj";

/// Runtime value lattice: object sets stay sorted ascending and duplicate-free,
/// text is canonical lowercase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Objects(Vec<usize>),
    Num(i64),
    Bool(bool),
    Text(String),
    Relations(Vec<String>),
}

impl Value {
    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Objects(_) => ValueKind::Objects,
            Value::Num(_) => ValueKind::Num,
            Value::Bool(_) => ValueKind::Bool,
            Value::Text(_) => ValueKind::Text,
            Value::Relations(_) => ValueKind::Relations,
        }
    }

    /// Compact single-line rendering used in traces.
    pub fn render(&self) -> String {
        match self {
            Value::Objects(objs) => {
                let items: Vec<String> = objs.iter().map(|i| i.to_string()).collect();
                format!("[{}]", items.join(","))
            }
            Value::Num(n) => n.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(t) => t.clone(),
            Value::Relations(rels) => format!("[{}]", rels.join(",")),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ValueKind {
    Objects,
    Num,
    Bool,
    Text,
    Relations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailureKind {
    UnknownFunction,
    ArityMismatch,
    TypeMismatch,
    UndefinedVariable,
    ReservedVariable,
    NonSingleton,
    SameObject,
    NoRelation,
    UnknownRelation,
    DescriptorError,
    NoMatch,
    AmbiguousPart,
    NoSuchPart,
    UnsupportedStyle,
    UnformattableValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind:?}{} : {message}", .step.map(|s| format!(" at step {s}")).unwrap_or_default())]
pub struct RuntimeError {
    pub kind: FailureKind,
    pub message: String,
    /// Step index (as written in the plan) attached by `execute_plan`.
    pub step: Option<i64>,
}

impl RuntimeError {
    pub fn new(kind: FailureKind, message: String) -> Self {
        RuntimeError {
            kind,
            message,
            step: None,
        }
    }

    fn at(mut self, step: i64) -> Self {
        self.step = Some(step);
        self
    }
}

/// Variable bindings for one execution; `all_obj` is pre-bound and never
/// rebound.
#[derive(Debug, Clone)]
pub struct Env {
    bindings: BTreeMap<String, Value>,
}

impl Env {
    pub fn for_scene(scene: &SceneGraph) -> Self {
        let mut bindings = BTreeMap::new();
        bindings.insert(ALL_OBJECTS.to_string(), Value::Objects(scene.all_objects()));
        Env { bindings }
    }

    pub fn get(&self, var: &str) -> Option<&Value> {
        self.bindings.get(var)
    }

    pub fn bind(&mut self, var: &str, value: Value) -> Result<(), RuntimeError> {
        if var == ALL_OBJECTS {
            return Err(RuntimeError::new(
                FailureKind::ReservedVariable,
                format!("\"{ALL_OBJECTS}\" cannot be rebound"),
            ));
        }
        self.bindings.insert(var.to_string(), value);
        Ok(())
    }
}

/// One executed step and the value it bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub step: PlanStep,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Trace {
    pub steps: Vec<StepRecord>,
    /// Value bound to `ans`, when a step targeted it.
    pub answer: Option<Value>,
}

impl Trace {
    /// JSON lines (step index, target, rendered value), the golden-file format.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for record in &self.steps {
            let line = serde_json::json!({
                "step": record.step.index,
                "target": record.step.target,
                "value": record.value.render(),
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

fn lookup<'e>(env: &'e Env, var: &str) -> Result<&'e Value, RuntimeError> {
    env.get(var).ok_or_else(|| {
        RuntimeError::new(
            FailureKind::UndefinedVariable,
            format!("variable \"{var}\" is not defined"),
        )
    })
}

fn text_arg(env: &Env, arg: &Arg, function: &str) -> Result<String, RuntimeError> {
    match arg {
        Arg::Str(s) => Ok(s.clone()),
        Arg::Var(v) => match lookup(env, v)? {
            Value::Text(t) => Ok(t.clone()),
            other => Err(RuntimeError::new(
                FailureKind::TypeMismatch,
                format!("{function} expects text, got {:?}", other.kind()),
            )),
        },
        _ => Err(RuntimeError::new(
            FailureKind::TypeMismatch,
            format!("{function} expects a text argument"),
        )),
    }
}

fn objects_arg(env: &Env, arg: &Arg, function: &str) -> Result<Vec<usize>, RuntimeError> {
    match arg {
        Arg::Var(v) => match lookup(env, v)? {
            Value::Objects(objs) => Ok(objs.clone()),
            other => Err(RuntimeError::new(
                FailureKind::TypeMismatch,
                format!("{function} expects an object set, got {:?}", other.kind()),
            )),
        },
        _ => Err(RuntimeError::new(
            FailureKind::TypeMismatch,
            format!("{function} expects an object-set variable"),
        )),
    }
}

fn num_arg(env: &Env, arg: &Arg, function: &str) -> Result<i64, RuntimeError> {
    match arg {
        Arg::Var(v) => match lookup(env, v)? {
            Value::Num(n) => Ok(*n),
            other => Err(RuntimeError::new(
                FailureKind::TypeMismatch,
                format!("{function} expects a number, got {:?}", other.kind()),
            )),
        },
        _ => Err(RuntimeError::new(
            FailureKind::TypeMismatch,
            format!("{function} expects a numeric variable"),
        )),
    }
}

fn relations_arg(env: &Env, arg: &Arg, function: &str) -> Result<Vec<String>, RuntimeError> {
    match arg {
        Arg::Var(v) => match lookup(env, v)? {
            Value::Relations(rels) => Ok(rels.clone()),
            other => Err(RuntimeError::new(
                FailureKind::TypeMismatch,
                format!("{function} expects a relation set, got {:?}", other.kind()),
            )),
        },
        _ => Err(RuntimeError::new(
            FailureKind::TypeMismatch,
            format!("{function} expects a relation-set variable"),
        )),
    }
}

fn descriptor_arg(env: &Env, arg: &Arg, function: &str) -> Result<DescriptorList, RuntimeError> {
    let Arg::List(items) = arg else {
        return Err(RuntimeError::new(
            FailureKind::TypeMismatch,
            format!("{function} expects a descriptor list"),
        ));
    };
    let mut tokens = Vec::with_capacity(items.len());
    for item in items {
        match item {
            ListItem::Str(s) => tokens.push(DescriptorToken::Text(s.clone())),
            ListItem::Int(n) => tokens.push(DescriptorToken::Count(*n)),
            ListItem::Var(v) => match lookup(env, v)? {
                Value::Text(t) => tokens.push(DescriptorToken::Text(t.clone())),
                Value::Num(n) => tokens.push(DescriptorToken::Count(*n)),
                other => {
                    return Err(RuntimeError::new(
                        FailureKind::TypeMismatch,
                        format!(
                            "descriptor variables must be text or numbers, got {:?}",
                            other.kind()
                        ),
                    ))
                }
            },
        }
    }
    DescriptorList::classify(&tokens)
        .map_err(|e| RuntimeError::new(FailureKind::DescriptorError, e.0))
}

fn expect_arity(step: &PlanStep, arity: usize) -> Result<(), RuntimeError> {
    if step.call.args.len() == arity {
        Ok(())
    } else {
        Err(RuntimeError::new(
            FailureKind::ArityMismatch,
            format!(
                "{} takes {arity} argument(s), got {}",
                step.call.function,
                step.call.args.len()
            ),
        ))
    }
}

/// Execute one step in the given environment and return the produced value.
pub fn execute_step(step: &PlanStep, scene: &SceneGraph, env: &Env) -> Result<Value, RuntimeError> {
    let args = &step.call.args;
    let f = step.call.function.as_str();
    match f {
        "filter_object" | "filter_category" => {
            expect_arity(step, 2)?;
            let category = text_arg(env, &args[0], f)?;
            let objs = objects_arg(env, &args[1], f)?;
            Ok(Value::Objects(tools::filter_object(
                scene, &category, &objs,
            )))
        }
        "filter_part" => {
            expect_arity(step, 2)?;
            let descriptors = descriptor_arg(env, &args[0], f)?;
            let objs = objects_arg(env, &args[1], f)?;
            Ok(Value::Objects(tools::filter_part(
                scene,
                &descriptors,
                &objs,
            )))
        }
        "exclude_object" => {
            expect_arity(step, 2)?;
            let obj = objects_arg(env, &args[0], f)?;
            let objs = objects_arg(env, &args[1], f)?;
            Ok(Value::Objects(tools::exclude_object(&obj, &objs)))
        }
        "intersection" => {
            expect_arity(step, 2)?;
            let a = objects_arg(env, &args[0], f)?;
            let b = objects_arg(env, &args[1], f)?;
            Ok(Value::Objects(tools::intersection(&a, &b)))
        }
        "query_relation" => {
            expect_arity(step, 2)?;
            let relation = text_arg(env, &args[0], f)?;
            let obj = objects_arg(env, &args[1], f)?;
            Ok(Value::Objects(tools::query_relation(
                scene, &relation, &obj,
            )?))
        }
        "get_relation" => {
            expect_arity(step, 2)?;
            let a = objects_arg(env, &args[0], f)?;
            let b = objects_arg(env, &args[1], f)?;
            Ok(Value::Relations(tools::get_relation(scene, &a, &b)?))
        }
        "filter_relation" => {
            expect_arity(step, 3)?;
            let relations = relations_arg(env, &args[0], f)?;
            let thing = objects_arg(env, &args[1], f)?;
            let objs = objects_arg(env, &args[2], f)?;
            Ok(Value::Objects(tools::filter_relation(
                scene, &relations, &thing, &objs,
            )?))
        }
        "query_category" => {
            expect_arity(step, 1)?;
            let obj = objects_arg(env, &args[0], f)?;
            Ok(Value::Text(tools::query_category(scene, &obj)?))
        }
        "query_part" => {
            expect_arity(step, 2)?;
            let color = text_arg(env, &args[0], f)?;
            let obj = objects_arg(env, &args[1], f)?;
            Ok(Value::Text(tools::query_part(scene, &color, &obj)?))
        }
        "query_color" => match args.len() {
            1 => {
                let obj = objects_arg(env, &args[0], f)?;
                Ok(Value::Text(tools::query_color_of_object(scene, &obj)?))
            }
            2 => {
                let part = text_arg(env, &args[0], f)?;
                let obj = objects_arg(env, &args[1], f)?;
                Ok(Value::Text(tools::query_color_of_part(scene, &part, &obj)?))
            }
            n => Err(RuntimeError::new(
                FailureKind::ArityMismatch,
                format!("query_color takes 1 or 2 arguments, got {n}"),
            )),
        },
        "query_size" => {
            expect_arity(step, 1)?;
            let obj = objects_arg(env, &args[0], f)?;
            Ok(Value::Text(tools::query_size(scene, &obj)?))
        }
        "count_part" => {
            expect_arity(step, 2)?;
            let part = text_arg(env, &args[0], f)?;
            let obj = objects_arg(env, &args[1], f)?;
            Ok(Value::Num(tools::count_part(scene, &part, &obj)?))
        }
        "count_object" => {
            expect_arity(step, 1)?;
            let objs = objects_arg(env, &args[0], f)?;
            Ok(Value::Num(tools::count_object(&objs)))
        }
        "sum" => {
            expect_arity(step, 2)?;
            Ok(Value::Num(tools::sum(
                num_arg(env, &args[0], f)?,
                num_arg(env, &args[1], f)?,
            )))
        }
        "equal" => {
            expect_arity(step, 2)?;
            let resolve = |arg: &Arg| -> Result<Value, RuntimeError> {
                match arg {
                    Arg::Str(s) => Ok(Value::Text(s.clone())),
                    Arg::Var(v) => Ok(lookup(env, v)?.clone()),
                    _ => Err(RuntimeError::new(
                        FailureKind::TypeMismatch,
                        "equal expects numbers or text".to_string(),
                    )),
                }
            };
            match (resolve(&args[0])?, resolve(&args[1])?) {
                (Value::Num(a), Value::Num(b)) => Ok(Value::Bool(a == b)),
                (Value::Text(a), Value::Text(b)) => Ok(Value::Bool(canonical(&a) == canonical(&b))),
                (a, b) => Err(RuntimeError::new(
                    FailureKind::TypeMismatch,
                    format!("equal cannot compare {:?} with {:?}", a.kind(), b.kind()),
                )),
            }
        }
        "more_than" => {
            expect_arity(step, 2)?;
            Ok(Value::Bool(tools::more_than(
                num_arg(env, &args[0], f)?,
                num_arg(env, &args[1], f)?,
            )))
        }
        "few_than" | "fewer_than" => {
            expect_arity(step, 2)?;
            Ok(Value::Bool(tools::few_than(
                num_arg(env, &args[0], f)?,
                num_arg(env, &args[1], f)?,
            )))
        }
        "exist" => {
            expect_arity(step, 1)?;
            let objs = objects_arg(env, &args[0], f)?;
            Ok(Value::Bool(tools::exist(&objs)))
        }
        other => Err(RuntimeError::new(
            FailureKind::UnknownFunction,
            format!("\"{other}\" is not a tool"),
        )),
    }
}

/// Run the plan in order, stopping after the step that assigns `ans`.
pub fn execute_plan(plan: &Plan, scene: &SceneGraph) -> Result<Trace, RuntimeError> {
    let mut env = Env::for_scene(scene);
    let mut trace = Trace::default();
    for step in &plan.steps {
        let value = execute_step(step, scene, &env).map_err(|e| e.at(step.index))?;
        env.bind(&step.target, value.clone())
            .map_err(|e| e.at(step.index))?;
        let is_stop = step.target == STOP_SIGN;
        trace.steps.push(StepRecord {
            step: step.clone(),
            value: value.clone(),
        });
        if is_stop {
            trace.answer = Some(value);
            break;
        }
    }
    Ok(trace)
}

/// Final-answer rendering used for gold comparison: booleans become
/// "yes"/"no", numbers decimal digits, text canonical lowercase.
pub fn format_answer(value: &Value) -> Result<String, RuntimeError> {
    match value {
        Value::Bool(true) => Ok("yes".to_string()),
        Value::Bool(false) => Ok("no".to_string()),
        Value::Num(n) => Ok(n.to_string()),
        Value::Text(t) => Ok(canonical(t)),
        other => Err(RuntimeError::new(
            FailureKind::UnformattableValue,
            format!("{:?} cannot be a final answer", other.kind()),
        )),
    }
}
