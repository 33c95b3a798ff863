//! The scene-graph toolkit: filter, algebra, relation, and attribution tools.
//!
//! Object sets are ascending, duplicate-free index vectors. Tools that take a
//! unique referent (`query_*`, `count_part`, `get_relation`) require singleton
//! sets; a non-singleton argument is evidence of a wrong plan and surfaces as
//! an error so the search can backtrack.

use crate::scene_graph::{SceneGraph, SceneStyle};

use super::tokens::{canonical, canonical_term, DescriptorList};
use super::{FailureKind, RuntimeError};

/// Relation names in the fixed order used by `get_relation` results.
pub const RELATION_ORDER: [&str; 6] = ["front", "behind", "left", "right", "above", "below"];

fn singleton(objs: &[usize], what: &str) -> Result<usize, RuntimeError> {
    if objs.len() == 1 {
        Ok(objs[0])
    } else {
        Err(RuntimeError::new(
            FailureKind::NonSingleton,
            format!("{what} requires exactly one object, got {}", objs.len()),
        ))
    }
}

pub fn filter_object(scene: &SceneGraph, category: &str, objs: &[usize]) -> Vec<usize> {
    let want = canonical_term(category);
    objs.iter()
        .copied()
        .filter(|&i| scene.objects[i].category == want)
        .collect()
}

/// Identical semantics to [`filter_object`]; exists as a distinct name because
/// gold plans feed it the text produced by `query_category`.
pub fn filter_category(scene: &SceneGraph, category: &str, objs: &[usize]) -> Vec<usize> {
    filter_object(scene, category, objs)
}

pub fn filter_part(scene: &SceneGraph, descriptors: &DescriptorList, objs: &[usize]) -> Vec<usize> {
    objs.iter()
        .copied()
        .filter(|&i| {
            let obj = &scene.objects[i];
            match scene.style {
                SceneStyle::PartBased => {
                    // Size/material constraints can never hold for a part.
                    if descriptors.size.is_some() || descriptors.material.is_some() {
                        return false;
                    }
                    obj.parts.iter().any(|(part, p)| {
                        descriptors
                            .name
                            .as_deref()
                            .is_none_or(|n| canonical(part) == n)
                            && descriptors.color.as_deref().is_none_or(|c| p.color == c)
                            && descriptors.count.is_none_or(|n| p.count == n)
                    })
                }
                SceneStyle::AttributeBased => {
                    if descriptors.count.is_some() {
                        return false;
                    }
                    let a = obj.attributes.as_ref().expect("attribute-based object");
                    descriptors
                        .name
                        .as_deref()
                        .is_none_or(|n| obj.category == n)
                        && descriptors.color.as_deref().is_none_or(|c| a.color == c)
                        && descriptors.size.as_deref().is_none_or(|s| a.size == s)
                        && descriptors
                            .material
                            .as_deref()
                            .is_none_or(|m| a.material == m)
                }
            }
        })
        .collect()
}

pub fn exclude_object(obj: &[usize], objs: &[usize]) -> Vec<usize> {
    objs.iter().copied().filter(|i| !obj.contains(i)).collect()
}

pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|i| b.contains(i)).collect()
}

pub fn query_relation(
    scene: &SceneGraph,
    relation: &str,
    obj: &[usize],
) -> Result<Vec<usize>, RuntimeError> {
    let anchor = singleton(obj, "query_relation")?;
    let name = canonical(relation);
    scene.objects_in_relation(&name, anchor).map_err(|_| {
        RuntimeError::new(
            FailureKind::UnknownRelation,
            format!("relation \"{name}\" is not in the scene"),
        )
    })
}

/// Every relation `r` with `a` standing in `r` to `b`, in [`RELATION_ORDER`].
pub fn get_relation(
    scene: &SceneGraph,
    a: &[usize],
    b: &[usize],
) -> Result<Vec<String>, RuntimeError> {
    let a = singleton(a, "get_relation")?;
    let b = singleton(b, "get_relation")?;
    if a == b {
        return Err(RuntimeError::new(
            FailureKind::SameObject,
            "get_relation needs two distinct objects".to_string(),
        ));
    }
    let mut found = Vec::new();
    for name in RELATION_ORDER {
        if let Some(rows) = scene.relations.get(name) {
            if rows[b].contains(&a) {
                found.push(name.to_string());
            }
        }
    }
    if found.is_empty() {
        Err(RuntimeError::new(
            FailureKind::NoRelation,
            format!("no relation holds between objects {a} and {b}"),
        ))
    } else {
        Ok(found)
    }
}

/// Objects `y` in `objs` such that `thing` stands in every given relation to
/// `y`, with `thing` itself excluded. May legitimately be empty.
pub fn filter_relation(
    scene: &SceneGraph,
    relations: &[String],
    thing: &[usize],
    objs: &[usize],
) -> Result<Vec<usize>, RuntimeError> {
    let thing = singleton(thing, "filter_relation")?;
    if relations.is_empty() {
        return Err(RuntimeError::new(
            FailureKind::NoRelation,
            "filter_relation needs a nonempty relation set".to_string(),
        ));
    }
    let mut tables = Vec::with_capacity(relations.len());
    for r in relations {
        let name = canonical(r);
        let rows = scene.relations.get(&name).ok_or_else(|| {
            RuntimeError::new(
                FailureKind::UnknownRelation,
                format!("relation \"{name}\" is not in the scene"),
            )
        })?;
        tables.push(rows);
    }
    Ok(objs
        .iter()
        .copied()
        .filter(|&y| y != thing && tables.iter().all(|rows| rows[y].contains(&thing)))
        .collect())
}

pub fn query_category(scene: &SceneGraph, obj: &[usize]) -> Result<String, RuntimeError> {
    let i = singleton(obj, "query_category")?;
    Ok(scene.objects[i].category.clone())
}

pub fn query_part(scene: &SceneGraph, color: &str, obj: &[usize]) -> Result<String, RuntimeError> {
    let i = singleton(obj, "query_part")?;
    if scene.style != SceneStyle::PartBased {
        return Err(RuntimeError::new(
            FailureKind::UnsupportedStyle,
            "query_part needs a part-based scene".to_string(),
        ));
    }
    let want = canonical_term(color);
    let matches: Vec<&str> = scene.objects[i]
        .parts
        .iter()
        .filter(|(_, p)| p.color == want)
        .map(|(name, _)| name.as_str())
        .collect();
    match matches.len() {
        0 => Err(RuntimeError::new(
            FailureKind::NoMatch,
            format!("object {i} has no {want} part"),
        )),
        1 => Ok(canonical(matches[0])),
        n => Err(RuntimeError::new(
            FailureKind::AmbiguousPart,
            format!("object {i} has {n} {want} parts"),
        )),
    }
}

/// Two-argument form: the color of a named part (part-based scenes).
pub fn query_color_of_part(
    scene: &SceneGraph,
    part: &str,
    obj: &[usize],
) -> Result<String, RuntimeError> {
    let i = singleton(obj, "query_color")?;
    if scene.style != SceneStyle::PartBased {
        return Err(RuntimeError::new(
            FailureKind::UnsupportedStyle,
            "two-argument query_color needs a part-based scene".to_string(),
        ));
    }
    let want = canonical(part);
    scene.objects[i]
        .parts
        .iter()
        .find(|(name, _)| canonical(name) == want)
        .map(|(_, p)| p.color.clone())
        .ok_or_else(|| {
            RuntimeError::new(
                FailureKind::NoSuchPart,
                format!("object {i} has no part \"{want}\""),
            )
        })
}

/// One-argument form: the object's own color (attribute-based scenes).
pub fn query_color_of_object(scene: &SceneGraph, obj: &[usize]) -> Result<String, RuntimeError> {
    let i = singleton(obj, "query_color")?;
    match (&scene.style, &scene.objects[i].attributes) {
        (SceneStyle::AttributeBased, Some(a)) => Ok(a.color.clone()),
        _ => Err(RuntimeError::new(
            FailureKind::UnsupportedStyle,
            "one-argument query_color needs an attribute-based scene".to_string(),
        )),
    }
}

pub fn query_size(scene: &SceneGraph, obj: &[usize]) -> Result<String, RuntimeError> {
    let i = singleton(obj, "query_size")?;
    match (&scene.style, &scene.objects[i].attributes) {
        (SceneStyle::AttributeBased, Some(a)) => Ok(a.size.clone()),
        _ => Err(RuntimeError::new(
            FailureKind::UnsupportedStyle,
            "query_size needs an attribute-based scene".to_string(),
        )),
    }
}

/// Stored count of the named part; 0 when the part is absent, so comparison
/// questions can count parts missing on one branch.
pub fn count_part(scene: &SceneGraph, part: &str, obj: &[usize]) -> Result<i64, RuntimeError> {
    let i = singleton(obj, "count_part")?;
    if scene.style != SceneStyle::PartBased {
        return Err(RuntimeError::new(
            FailureKind::UnsupportedStyle,
            "count_part needs a part-based scene".to_string(),
        ));
    }
    let want = canonical(part);
    Ok(scene.objects[i]
        .parts
        .iter()
        .find(|(name, _)| canonical(name) == want)
        .map(|(_, p)| p.count)
        .unwrap_or(0))
}

pub fn count_object(objs: &[usize]) -> i64 {
    objs.len() as i64
}

pub fn sum(a: i64, b: i64) -> i64 {
    a + b
}

pub fn more_than(a: i64, b: i64) -> bool {
    a > b
}

pub fn few_than(a: i64, b: i64) -> bool {
    a < b
}

pub fn exist(objs: &[usize]) -> bool {
    !objs.is_empty()
}
