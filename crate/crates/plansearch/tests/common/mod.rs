//! Independent brute-force oracle: a second, naive implementation of every
//! tool that works straight off the raw scene-document JSON lists, used to
//! cross-check the interpreter. It shares the plan AST with the library but
//! none of the scene structures, token tables, or tool code.

use std::collections::BTreeMap;

use serde_json::Value as Json;

use plansearch::plan_dsl::{Arg, ListItem, Plan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OValue {
    Objs(Vec<usize>),
    Int(i64),
    Flag(bool),
    Word(String),
    Rels(Vec<String>),
}

fn norm(token: &str) -> String {
    let lowered = token
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase();
    match lowered.as_str() {
        "tiny" => "small".into(),
        "big" => "large".into(),
        "matte" => "rubber".into(),
        "shiny" => "metal".into(),
        "metallic" => "metal".into(),
        "ball" => "sphere".into(),
        "block" => "cube".into(),
        _ => lowered,
    }
}

fn word_to_number(token: &str) -> Option<i64> {
    [
        "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    ]
    .iter()
    .position(|w| *w == token.to_lowercase())
    .map(|p| p as i64 + 1)
}

pub struct Oracle<'d> {
    doc: &'d Json,
}

impl<'d> Oracle<'d> {
    pub fn new(doc: &'d Json) -> Self {
        Oracle { doc }
    }

    fn objects(&self) -> &Vec<Json> {
        self.doc["objects"].as_array().expect("objects list")
    }

    pub fn object_count(&self) -> usize {
        self.objects().len()
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.object_count()).collect()
    }

    fn object_entry(&self, index: usize) -> (&String, &Json) {
        self.objects()[index]
            .as_object()
            .expect("one-entry map")
            .iter()
            .next()
            .expect("one entry")
    }

    fn category(&self, index: usize) -> String {
        let (name, _) = self.object_entry(index);
        name.trim_end_matches(|c: char| c.is_ascii_digit())
            .to_lowercase()
    }

    fn is_part_based(&self) -> bool {
        self.object_entry(0).1.is_object()
    }

    /// (part name, color, count) triples of one part-based object.
    fn parts(&self, index: usize) -> Vec<(String, String, i64)> {
        let (_, body) = self.object_entry(index);
        body.as_object()
            .map(|parts| {
                parts
                    .iter()
                    .map(|(part, value)| {
                        let pair = value.as_array().expect("color/count pair");
                        (
                            part.to_lowercase(),
                            pair[0].as_str().expect("color").to_lowercase(),
                            pair[1].as_i64().expect("count"),
                        )
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// (color, size, material) of one attribute-based object.
    fn attributes(&self, index: usize) -> Option<(String, String, String)> {
        let (_, body) = self.object_entry(index);
        body.as_array().map(|triple| {
            (
                triple[0].as_str().expect("color").to_lowercase(),
                triple[1].as_str().expect("size").to_lowercase(),
                triple[2].as_str().expect("material").to_lowercase(),
            )
        })
    }

    fn relation_row(&self, relation: &str, anchor: usize) -> Option<Vec<usize>> {
        let rows = self.doc["relationships"].get(relation)?.as_array()?;
        let mut row: Vec<usize> = rows[anchor]
            .as_array()
            .expect("index list")
            .iter()
            .map(|v| v.as_u64().expect("index") as usize)
            .collect();
        row.sort_unstable();
        Some(row)
    }

    pub fn filter_object(&self, category: &str, objs: &[usize]) -> Vec<usize> {
        let want = norm(category);
        objs.iter()
            .copied()
            .filter(|&i| self.category(i) == want)
            .collect()
    }

    pub fn filter_part(&self, tokens: &[OToken], objs: &[usize]) -> Result<Vec<usize>, String> {
        // Re-classify from scratch.
        let mut count: Option<i64> = None;
        let mut color: Option<String> = None;
        let mut size: Option<String> = None;
        let mut material: Option<String> = None;
        let mut name: Option<String> = None;
        if tokens.is_empty() {
            return Err("empty descriptor list".into());
        }
        for token in tokens {
            match token {
                OToken::Number(n) => {
                    if count.replace(*n).is_some() {
                        return Err("count slot claimed twice".into());
                    }
                }
                OToken::Word(w) => {
                    if let Some(n) = word_to_number(w) {
                        if count.replace(n).is_some() {
                            return Err("count slot claimed twice".into());
                        }
                        continue;
                    }
                    let term = norm(w);
                    let slot = if [
                        "gray", "blue", "brown", "yellow", "red", "green", "purple", "cyan",
                    ]
                    .contains(&term.as_str())
                    {
                        &mut color
                    } else if ["small", "large"].contains(&term.as_str()) {
                        &mut size
                    } else if ["rubber", "metal"].contains(&term.as_str()) {
                        &mut material
                    } else {
                        &mut name
                    };
                    if slot.replace(term).is_some() {
                        return Err("slot claimed twice".into());
                    }
                }
            }
        }
        let matches = |i: usize| -> bool {
            if self.is_part_based() {
                if size.is_some() || material.is_some() {
                    return false;
                }
                self.parts(i).iter().any(|(part, part_color, part_count)| {
                    name.as_deref().map(|n| part == n).unwrap_or(true)
                        && color.as_deref().map(|c| part_color == c).unwrap_or(true)
                        && count.map(|n| *part_count == n).unwrap_or(true)
                })
            } else {
                if count.is_some() {
                    return false;
                }
                let (c, s, m) = self.attributes(i).expect("attribute triple");
                name.as_deref()
                    .map(|n| self.category(i) == n)
                    .unwrap_or(true)
                    && color.as_deref().map(|want| c == want).unwrap_or(true)
                    && size.as_deref().map(|want| s == want).unwrap_or(true)
                    && material.as_deref().map(|want| m == want).unwrap_or(true)
            }
        };
        Ok(objs.iter().copied().filter(|&i| matches(i)).collect())
    }

    pub fn exclude_object(&self, obj: &[usize], objs: &[usize]) -> Vec<usize> {
        objs.iter().copied().filter(|i| !obj.contains(i)).collect()
    }

    pub fn intersection(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().copied().filter(|i| b.contains(i)).collect()
    }

    pub fn query_relation(&self, relation: &str, obj: &[usize]) -> Result<Vec<usize>, String> {
        if obj.len() != 1 {
            return Err("needs one object".into());
        }
        self.relation_row(&norm(relation), obj[0])
            .ok_or_else(|| "unknown relation".into())
    }

    pub fn get_relation(&self, a: &[usize], b: &[usize]) -> Result<Vec<String>, String> {
        if a.len() != 1 || b.len() != 1 {
            return Err("needs one object each".into());
        }
        if a[0] == b[0] {
            return Err("same object".into());
        }
        let mut found = Vec::new();
        for relation in ["front", "behind", "left", "right", "above", "below"] {
            if let Some(row) = self.relation_row(relation, b[0]) {
                if row.contains(&a[0]) {
                    found.push(relation.to_string());
                }
            }
        }
        if found.is_empty() {
            Err("no relation".into())
        } else {
            Ok(found)
        }
    }

    pub fn filter_relation(
        &self,
        relations: &[String],
        thing: &[usize],
        objs: &[usize],
    ) -> Result<Vec<usize>, String> {
        if thing.len() != 1 {
            return Err("needs one object".into());
        }
        if relations.is_empty() {
            return Err("needs relations".into());
        }
        let mut keep = Vec::new();
        'outer: for &candidate in objs {
            if candidate == thing[0] {
                continue;
            }
            for relation in relations {
                match self.relation_row(&norm(relation), candidate) {
                    Some(row) if row.contains(&thing[0]) => {}
                    Some(_) => continue 'outer,
                    None => return Err("unknown relation".into()),
                }
            }
            keep.push(candidate);
        }
        Ok(keep)
    }

    pub fn query_category(&self, obj: &[usize]) -> Result<String, String> {
        if obj.len() != 1 {
            return Err("needs one object".into());
        }
        Ok(self.category(obj[0]))
    }

    pub fn query_part(&self, color: &str, obj: &[usize]) -> Result<String, String> {
        if obj.len() != 1 {
            return Err("needs one object".into());
        }
        if !self.is_part_based() {
            return Err("wrong style".into());
        }
        let want = norm(color);
        let hits: Vec<String> = self
            .parts(obj[0])
            .into_iter()
            .filter(|(_, c, _)| *c == want)
            .map(|(part, _, _)| part)
            .collect();
        match hits.len() {
            0 => Err("no match".into()),
            1 => Ok(hits[0].clone()),
            _ => Err("ambiguous".into()),
        }
    }

    pub fn query_color(&self, part: Option<&str>, obj: &[usize]) -> Result<String, String> {
        if obj.len() != 1 {
            return Err("needs one object".into());
        }
        match part {
            Some(part) => {
                if !self.is_part_based() {
                    return Err("wrong style".into());
                }
                let want = norm(part);
                self.parts(obj[0])
                    .into_iter()
                    .find(|(name, _, _)| *name == want)
                    .map(|(_, color, _)| color)
                    .ok_or_else(|| "no such part".into())
            }
            None => self
                .attributes(obj[0])
                .map(|(color, _, _)| color)
                .ok_or_else(|| "wrong style".into()),
        }
    }

    pub fn query_size(&self, obj: &[usize]) -> Result<String, String> {
        if obj.len() != 1 {
            return Err("needs one object".into());
        }
        self.attributes(obj[0])
            .map(|(_, size, _)| size)
            .ok_or_else(|| "wrong style".into())
    }

    pub fn count_part(&self, part: &str, obj: &[usize]) -> Result<i64, String> {
        if obj.len() != 1 {
            return Err("needs one object".into());
        }
        if !self.is_part_based() {
            return Err("wrong style".into());
        }
        let want = norm(part);
        Ok(self
            .parts(obj[0])
            .into_iter()
            .find(|(name, _, _)| *name == want)
            .map(|(_, _, count)| count)
            .unwrap_or(0))
    }

    /// Naive step-by-step plan execution straight off the document.
    pub fn execute(&self, plan: &Plan) -> Result<(Vec<OValue>, Option<OValue>), String> {
        let mut env: BTreeMap<String, OValue> = BTreeMap::new();
        env.insert("all_obj".to_string(), OValue::Objs(self.all()));
        let mut values = Vec::new();
        let mut answer = None;
        for step in &plan.steps {
            let value = self.execute_step(step, &env)?;
            if step.target == "all_obj" {
                return Err("all_obj is reserved".into());
            }
            env.insert(step.target.clone(), value.clone());
            values.push(value.clone());
            if step.target == "ans" {
                answer = Some(value);
                break;
            }
        }
        Ok((values, answer))
    }

    fn execute_step(
        &self,
        step: &plansearch::plan_dsl::PlanStep,
        env: &BTreeMap<String, OValue>,
    ) -> Result<OValue, String> {
        let text = |arg: &Arg| -> Result<String, String> {
            match arg {
                Arg::Str(s) => Ok(s.clone()),
                Arg::Var(v) => match env.get(v) {
                    Some(OValue::Word(w)) => Ok(w.clone()),
                    Some(_) => Err("not text".into()),
                    None => Err(format!("undefined {v}")),
                },
                _ => Err("not text".into()),
            }
        };
        let objs = |arg: &Arg| -> Result<Vec<usize>, String> {
            match arg {
                Arg::Var(v) => match env.get(v) {
                    Some(OValue::Objs(o)) => Ok(o.clone()),
                    Some(_) => Err("not objects".into()),
                    None => Err(format!("undefined {v}")),
                },
                _ => Err("not objects".into()),
            }
        };
        let number = |arg: &Arg| -> Result<i64, String> {
            match arg {
                Arg::Var(v) => match env.get(v) {
                    Some(OValue::Int(n)) => Ok(*n),
                    Some(_) => Err("not a number".into()),
                    None => Err(format!("undefined {v}")),
                },
                _ => Err("not a number".into()),
            }
        };
        let relations = |arg: &Arg| -> Result<Vec<String>, String> {
            match arg {
                Arg::Var(v) => match env.get(v) {
                    Some(OValue::Rels(r)) => Ok(r.clone()),
                    Some(_) => Err("not relations".into()),
                    None => Err(format!("undefined {v}")),
                },
                _ => Err("not relations".into()),
            }
        };
        let tokens = |arg: &Arg| -> Result<Vec<OToken>, String> {
            match arg {
                Arg::List(items) => items
                    .iter()
                    .map(|item| match item {
                        ListItem::Str(s) => Ok(OToken::Word(s.clone())),
                        ListItem::Int(n) => Ok(OToken::Number(*n)),
                        ListItem::Var(v) => match env.get(v) {
                            Some(OValue::Word(w)) => Ok(OToken::Word(w.clone())),
                            Some(OValue::Int(n)) => Ok(OToken::Number(*n)),
                            Some(_) => Err("bad descriptor".to_string()),
                            None => Err(format!("undefined {v}")),
                        },
                    })
                    .collect(),
                _ => Err("not a list".into()),
            }
        };
        let a = &step.call.args;
        let need = |n: usize| -> Result<(), String> {
            if a.len() == n {
                Ok(())
            } else {
                Err("arity".into())
            }
        };
        match step.call.function.as_str() {
            "filter_object" | "filter_category" => {
                need(2)?;
                Ok(OValue::Objs(
                    self.filter_object(&text(&a[0])?, &objs(&a[1])?),
                ))
            }
            "filter_part" => {
                need(2)?;
                Ok(OValue::Objs(
                    self.filter_part(&tokens(&a[0])?, &objs(&a[1])?)?,
                ))
            }
            "exclude_object" => {
                need(2)?;
                Ok(OValue::Objs(
                    self.exclude_object(&objs(&a[0])?, &objs(&a[1])?),
                ))
            }
            "intersection" => {
                need(2)?;
                Ok(OValue::Objs(
                    self.intersection(&objs(&a[0])?, &objs(&a[1])?),
                ))
            }
            "query_relation" => {
                need(2)?;
                Ok(OValue::Objs(
                    self.query_relation(&text(&a[0])?, &objs(&a[1])?)?,
                ))
            }
            "get_relation" => {
                need(2)?;
                Ok(OValue::Rels(
                    self.get_relation(&objs(&a[0])?, &objs(&a[1])?)?,
                ))
            }
            "filter_relation" => {
                need(3)?;
                Ok(OValue::Objs(self.filter_relation(
                    &relations(&a[0])?,
                    &objs(&a[1])?,
                    &objs(&a[2])?,
                )?))
            }
            "query_category" => {
                need(1)?;
                Ok(OValue::Word(self.query_category(&objs(&a[0])?)?))
            }
            "query_part" => {
                need(2)?;
                Ok(OValue::Word(self.query_part(&text(&a[0])?, &objs(&a[1])?)?))
            }
            "query_color" => match a.len() {
                1 => Ok(OValue::Word(self.query_color(None, &objs(&a[0])?)?)),
                2 => Ok(OValue::Word(
                    self.query_color(Some(&text(&a[0])?), &objs(&a[1])?)?,
                )),
                _ => Err("arity".into()),
            },
            "query_size" => {
                need(1)?;
                Ok(OValue::Word(self.query_size(&objs(&a[0])?)?))
            }
            "count_part" => {
                need(2)?;
                Ok(OValue::Int(self.count_part(&text(&a[0])?, &objs(&a[1])?)?))
            }
            "count_object" => {
                need(1)?;
                Ok(OValue::Int(objs(&a[0])?.len() as i64))
            }
            "sum" => {
                need(2)?;
                Ok(OValue::Int(number(&a[0])? + number(&a[1])?))
            }
            "equal" => {
                need(2)?;
                let resolved = |arg: &Arg| -> Result<OValue, String> {
                    match arg {
                        Arg::Str(s) => Ok(OValue::Word(s.clone())),
                        Arg::Var(v) => env.get(v).cloned().ok_or_else(|| format!("undefined {v}")),
                        _ => Err("bad arg".into()),
                    }
                };
                match (resolved(&a[0])?, resolved(&a[1])?) {
                    (OValue::Int(x), OValue::Int(y)) => Ok(OValue::Flag(x == y)),
                    (OValue::Word(x), OValue::Word(y)) => {
                        Ok(OValue::Flag(x.to_lowercase() == y.to_lowercase()))
                    }
                    _ => Err("type mismatch".into()),
                }
            }
            "more_than" => {
                need(2)?;
                Ok(OValue::Flag(number(&a[0])? > number(&a[1])?))
            }
            "few_than" | "fewer_than" => {
                need(2)?;
                Ok(OValue::Flag(number(&a[0])? < number(&a[1])?))
            }
            "exist" => {
                need(1)?;
                Ok(OValue::Flag(!objs(&a[0])?.is_empty()))
            }
            other => Err(format!("unknown function {other}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OToken {
    Word(String),
    Number(i64),
}

pub fn format_oracle_answer(value: &OValue) -> Result<String, String> {
    match value {
        OValue::Flag(true) => Ok("yes".into()),
        OValue::Flag(false) => Ok("no".into()),
        OValue::Int(n) => Ok(n.to_string()),
        OValue::Word(w) => Ok(w.to_lowercase()),
        _ => Err("unformattable".into()),
    }
}

/// Structural comparison between an oracle value and an interpreter value.
pub fn values_agree(oracle: &OValue, value: &plansearch::interpreter::Value) -> bool {
    use plansearch::interpreter::Value;
    match (oracle, value) {
        (OValue::Objs(a), Value::Objects(b)) => a == b,
        (OValue::Int(a), Value::Num(b)) => a == b,
        (OValue::Flag(a), Value::Bool(b)) => a == b,
        (OValue::Word(a), Value::Text(b)) => a.to_lowercase() == *b,
        (OValue::Rels(a), Value::Relations(b)) => a == b,
        _ => false,
    }
}
