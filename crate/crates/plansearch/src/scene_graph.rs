//! Immutable scene graphs in two styles: part-based (PTR-like) objects that
//! carry named parts with a color and a count, and attribute-based
//! (CLEVR-like) objects that carry a (color, size, material) triple.
//!
//! A scene document is JSON with two top-level keys:
//!
//! ```text
//! {
//!   "relationships": { "behind": [[], [0], [0, 1]], ... },
//!   "objects": [ {"Chair0": {"leg": ["gray", 4], ...}}, ... ]
//! }
//! ```
//!
//! The relation convention is `j ∈ relations[r][i]  ⇔  j is r-of i`
//! (e.g. `behind[1] = [0]` reads "object 0 is behind object 1").

use std::collections::{BTreeMap, BTreeSet};

use serde_json::Value as Json;
use thiserror::Error;

/// Opposed relation pairs whose duality is validated at load time.
pub const OPPOSED_PAIRS: [(&str, &str); 3] =
    [("left", "right"), ("front", "behind"), ("above", "below")];

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("consistency error: {0}")]
    Consistency(String),
    #[error("unknown relation: {0}")]
    UnknownRelation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SceneStyle {
    PartBased,
    AttributeBased,
}

/// One named part of a part-based object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Part {
    pub color: String,
    pub count: i64,
}

/// Color / size / material triple of an attribute-based object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attributes {
    pub color: String,
    pub size: String,
    pub material: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SceneObject {
    pub name: String,
    /// Name with trailing digits stripped, lowercased ("Chair0" -> "chair").
    pub category: String,
    pub parts: BTreeMap<String, Part>,
    pub attributes: Option<Attributes>,
}

/// Canonical token sets reachable by scanning the objects, used by the
/// evaluator to reject plan literals that cannot refer to anything in the
/// scene.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VocabularyIndex {
    pub part_names: BTreeSet<String>,
    pub colors: BTreeSet<String>,
    pub categories: BTreeSet<String>,
    pub sizes: BTreeSet<String>,
    pub materials: BTreeSet<String>,
    pub max_part_count: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SceneGraph {
    pub objects: Vec<SceneObject>,
    /// relation name -> per-object index lists; `relations[r][i]` holds the
    /// objects standing in relation `r` to object `i`.
    pub relations: BTreeMap<String, Vec<Vec<usize>>>,
    pub style: SceneStyle,
    pub vocabulary: VocabularyIndex,
}

/// Strip trailing decimal digits and lowercase: "Chair0" -> "chair".
pub fn category_of(name: &str) -> String {
    name.trim_end_matches(|c: char| c.is_ascii_digit())
        .to_lowercase()
}

impl SceneGraph {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    /// All object indices, the value pre-bound to `all_obj`.
    pub fn all_objects(&self) -> Vec<usize> {
        (0..self.objects.len()).collect()
    }

    /// The `relations[relation][anchor]` row as an ascending index set.
    pub fn objects_in_relation(
        &self,
        relation: &str,
        anchor: usize,
    ) -> Result<Vec<usize>, SceneError> {
        let rows = self
            .relations
            .get(relation)
            .ok_or_else(|| SceneError::UnknownRelation(relation.to_string()))?;
        let mut row = rows[anchor].clone();
        row.sort_unstable();
        Ok(row)
    }

    pub fn has_relation(&self, relation: &str) -> bool {
        self.relations.contains_key(relation)
    }

    /// Serialize back to the on-disk document shape.
    pub fn to_document(&self) -> Json {
        let mut rel = serde_json::Map::new();
        for (name, rows) in &self.relations {
            rel.insert(
                name.clone(),
                Json::Array(
                    rows.iter()
                        .map(|row| Json::Array(row.iter().map(|&i| Json::from(i as i64)).collect()))
                        .collect(),
                ),
            );
        }
        let objects: Vec<Json> = self
            .objects
            .iter()
            .map(|obj| {
                let body = match self.style {
                    SceneStyle::PartBased => {
                        let mut parts = serde_json::Map::new();
                        for (part, p) in &obj.parts {
                            parts.insert(
                                part.clone(),
                                Json::Array(vec![Json::from(p.color.clone()), Json::from(p.count)]),
                            );
                        }
                        Json::Object(parts)
                    }
                    SceneStyle::AttributeBased => {
                        let a = obj.attributes.as_ref().expect("attribute-based object");
                        Json::Array(vec![
                            Json::from(a.color.clone()),
                            Json::from(a.size.clone()),
                            Json::from(a.material.clone()),
                        ])
                    }
                };
                let mut entry = serde_json::Map::new();
                entry.insert(obj.name.clone(), body);
                Json::Object(entry)
            })
            .collect();
        let mut doc = serde_json::Map::new();
        doc.insert("relationships".to_string(), Json::Object(rel));
        doc.insert("objects".to_string(), Json::Array(objects));
        Json::Object(doc)
    }
}

/// Parse and validate a scene document. Sibling keys other than
/// "relationships" and "objects" (e.g. "question", "answer") are ignored.
pub fn load_scene(document: &str) -> Result<SceneGraph, SceneError> {
    let json: Json = serde_json::from_str(document)
        .map_err(|e| SceneError::Schema(format!("invalid JSON: {e}")))?;
    load_scene_value(&json)
}

/// Same as [`load_scene`] for an already-parsed JSON value.
pub fn load_scene_value(json: &Json) -> Result<SceneGraph, SceneError> {
    let root = json
        .as_object()
        .ok_or_else(|| SceneError::Schema("document is not a JSON object".into()))?;
    let raw_objects = root
        .get("objects")
        .and_then(Json::as_array)
        .ok_or_else(|| SceneError::Schema("missing \"objects\" list".into()))?;
    let raw_relations = root
        .get("relationships")
        .and_then(Json::as_object)
        .ok_or_else(|| SceneError::Schema("missing \"relationships\" map".into()))?;

    let mut objects = Vec::with_capacity(raw_objects.len());
    let mut part_styled = 0usize;
    let mut attr_styled = 0usize;
    for (idx, entry) in raw_objects.iter().enumerate() {
        let map = entry
            .as_object()
            .filter(|m| m.len() == 1)
            .ok_or_else(|| SceneError::Schema(format!("object {idx} is not a one-entry map")))?;
        let (name, body) = map.iter().next().expect("one entry");
        let category = category_of(name);
        if category.is_empty() {
            return Err(SceneError::Schema(format!(
                "object {idx} has an empty category"
            )));
        }
        let object = match body {
            Json::Object(parts) => {
                if parts.is_empty() {
                    return Err(SceneError::Schema(format!(
                        "object \"{name}\" has no parts"
                    )));
                }
                let mut parsed = BTreeMap::new();
                for (part, val) in parts {
                    let pair = val.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                        SceneError::Schema(format!(
                            "part \"{part}\" of \"{name}\" is not [color, count]"
                        ))
                    })?;
                    let color = pair[0].as_str().ok_or_else(|| {
                        SceneError::Schema(format!("part \"{part}\" color is not text"))
                    })?;
                    let count = pair[1].as_i64().ok_or_else(|| {
                        SceneError::Schema(format!("part \"{part}\" count is not an integer"))
                    })?;
                    if count < 1 {
                        return Err(SceneError::Schema(format!(
                            "part \"{part}\" of \"{name}\" has count {count} < 1"
                        )));
                    }
                    parsed.insert(
                        part.clone(),
                        Part {
                            color: color.to_lowercase(),
                            count,
                        },
                    );
                }
                part_styled += 1;
                SceneObject {
                    name: name.clone(),
                    category,
                    parts: parsed,
                    attributes: None,
                }
            }
            Json::Array(triple) => {
                if triple.len() != 3 {
                    return Err(SceneError::Schema(format!(
                        "object \"{name}\" attribute list has {} entries, expected 3",
                        triple.len()
                    )));
                }
                let mut slots = Vec::with_capacity(3);
                for (i, v) in triple.iter().enumerate() {
                    let s = v.as_str().filter(|s| !s.is_empty()).ok_or_else(|| {
                        SceneError::Schema(format!(
                            "object \"{name}\" attribute {i} is not nonempty text"
                        ))
                    })?;
                    slots.push(s.to_lowercase());
                }
                attr_styled += 1;
                SceneObject {
                    name: name.clone(),
                    category,
                    parts: BTreeMap::new(),
                    attributes: Some(Attributes {
                        color: slots[0].clone(),
                        size: slots[1].clone(),
                        material: slots[2].clone(),
                    }),
                }
            }
            _ => {
                return Err(SceneError::Schema(format!(
                    "object \"{name}\" body must be a part map or an attribute triple"
                )))
            }
        };
        objects.push(object);
    }
    if objects.is_empty() {
        return Err(SceneError::Schema("scene has no objects".into()));
    }
    let style = match (part_styled, attr_styled) {
        (n, 0) if n == objects.len() => SceneStyle::PartBased,
        (0, n) if n == objects.len() => SceneStyle::AttributeBased,
        _ => {
            return Err(SceneError::Schema(
                "mixed part-based and attribute-based objects".into(),
            ))
        }
    };

    let n = objects.len();
    let mut relations = BTreeMap::new();
    for (name, rows_json) in raw_relations {
        let rows_list = rows_json.as_array().ok_or_else(|| {
            SceneError::Schema(format!("relation \"{name}\" is not a list of lists"))
        })?;
        if rows_list.len() != n {
            return Err(SceneError::Schema(format!(
                "relation \"{name}\" has {} rows for {n} objects",
                rows_list.len()
            )));
        }
        let mut rows = Vec::with_capacity(n);
        for (i, row_json) in rows_list.iter().enumerate() {
            let row_list = row_json.as_array().ok_or_else(|| {
                SceneError::Schema(format!("relation \"{name}\" row {i} is not a list"))
            })?;
            let mut row = Vec::with_capacity(row_list.len());
            for v in row_list {
                let j = v.as_u64().ok_or_else(|| {
                    SceneError::Schema(format!("relation \"{name}\" row {i} holds a non-index"))
                })? as usize;
                if j >= n {
                    return Err(SceneError::Consistency(format!(
                        "relation \"{name}\" row {i} references object {j}, but the scene has {n} objects"
                    )));
                }
                if j == i {
                    return Err(SceneError::Consistency(format!(
                        "relation \"{name}\" is reflexive at object {i}"
                    )));
                }
                row.push(j);
            }
            row.sort_unstable();
            row.dedup();
            rows.push(row);
        }
        relations.insert(name.clone(), rows);
    }

    // j is r-of i must imply i is opposite(r)-of j, whenever both tables exist.
    for (a, b) in OPPOSED_PAIRS {
        let (Some(ra), Some(rb)) = (relations.get(a), relations.get(b)) else {
            continue;
        };
        for i in 0..n {
            for &j in &ra[i] {
                if !rb[j].contains(&i) {
                    return Err(SceneError::Consistency(format!(
                        "duality violated: {j} ∈ {a}[{i}] but {i} ∉ {b}[{j}]"
                    )));
                }
            }
            for &j in &rb[i] {
                if !ra[j].contains(&i) {
                    return Err(SceneError::Consistency(format!(
                        "duality violated: {j} ∈ {b}[{i}] but {i} ∉ {a}[{j}]"
                    )));
                }
            }
        }
    }

    let vocabulary = build_vocabulary(&objects);
    Ok(SceneGraph {
        objects,
        relations,
        style,
        vocabulary,
    })
}

/// Rescan the objects and collect every canonical token.
pub fn build_vocabulary(objects: &[SceneObject]) -> VocabularyIndex {
    let mut v = VocabularyIndex::default();
    for obj in objects {
        v.categories.insert(obj.category.clone());
        for (part, p) in &obj.parts {
            v.part_names.insert(part.to_lowercase());
            v.colors.insert(p.color.clone());
            v.max_part_count = v.max_part_count.max(p.count);
        }
        if let Some(a) = &obj.attributes {
            v.colors.insert(a.color.clone());
            v.sizes.insert(a.size.clone());
            v.materials.insert(a.material.clone());
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::fixtures::{CLEVR_REFERENCE_DOC, PTR_REFERENCE_DOC};

    #[test]
    fn loads_part_based_scene() {
        let scene = load_scene(PTR_REFERENCE_DOC).unwrap();
        assert_eq!(scene.len(), 3);
        assert_eq!(scene.style, SceneStyle::PartBased);
        let cats: Vec<&str> = scene.objects.iter().map(|o| o.category.as_str()).collect();
        assert_eq!(cats, ["chair", "table", "chair"]);
        assert_eq!(scene.vocabulary.max_part_count, 4);
        assert!(scene.vocabulary.part_names.contains("arm vertical bar"));
    }

    #[test]
    fn loads_attribute_based_scene() {
        let scene = load_scene(CLEVR_REFERENCE_DOC).unwrap();
        assert_eq!(scene.len(), 8);
        assert_eq!(scene.style, SceneStyle::AttributeBased);
        assert!(scene.vocabulary.sizes.contains("small"));
        assert!(scene.vocabulary.materials.contains("rubber"));
        assert!(!scene.has_relation("above"));
    }

    #[test]
    fn category_of_strips_digits() {
        assert_eq!(category_of("Chair0"), "chair");
        assert_eq!(category_of("cube4"), "cube");
        assert_eq!(category_of("sleep_area"), "sleep_area");
    }

    #[test]
    fn objects_in_relation_reads_rows() {
        let ptr = load_scene(PTR_REFERENCE_DOC).unwrap();
        assert_eq!(ptr.objects_in_relation("behind", 2).unwrap(), vec![0, 1]);
        assert_eq!(
            ptr.objects_in_relation("above", 0).unwrap(),
            Vec::<usize>::new()
        );
        let clevr = load_scene(CLEVR_REFERENCE_DOC).unwrap();
        assert_eq!(
            clevr.objects_in_relation("left", 4).unwrap(),
            vec![0, 3, 5, 6]
        );
        assert!(matches!(
            clevr.objects_in_relation("above", 0),
            Err(SceneError::UnknownRelation(_))
        ));
    }

    #[test]
    fn duality_violation_is_rejected() {
        // behind[1] says 0 is behind 1, but front[0] omits 1.
        let doc = r#"{
            "relationships": {"behind": [[], [0]], "front": [[], []]},
            "objects": [{"Chair0": {"leg": ["gray", 4]}}, {"Table0": {"top": ["red", 1]}}]
        }"#;
        assert!(matches!(load_scene(doc), Err(SceneError::Consistency(_))));
    }

    #[test]
    fn reflexive_relation_is_rejected() {
        let doc = r#"{
            "relationships": {"behind": [[0], []], "front": [[], []]},
            "objects": [{"Chair0": {"leg": ["gray", 4]}}, {"Table0": {"top": ["red", 1]}}]
        }"#;
        assert!(matches!(load_scene(doc), Err(SceneError::Consistency(_))));
    }

    #[test]
    fn out_of_range_index_is_rejected() {
        let doc = r#"{
            "relationships": {"behind": [[5]]},
            "objects": [{"Chair0": {"leg": ["gray", 4]}}]
        }"#;
        assert!(matches!(load_scene(doc), Err(SceneError::Consistency(_))));
    }

    #[test]
    fn mixed_styles_are_rejected() {
        let doc = r#"{
            "relationships": {},
            "objects": [
                {"Chair0": {"leg": ["gray", 4]}},
                {"cube0": ["gray", "large", "rubber"]}
            ]
        }"#;
        assert!(matches!(load_scene(doc), Err(SceneError::Schema(_))));
    }

    #[test]
    fn sibling_keys_are_ignored() {
        let doc = r#"{
            "question": "how many chairs?",
            "answer": "1",
            "relationships": {},
            "objects": [{"Chair0": {"leg": ["gray", 4]}}]
        }"#;
        let scene = load_scene(doc).unwrap();
        assert_eq!(scene.len(), 1);
    }

    #[test]
    fn load_is_deterministic_and_roundtrips() {
        let a = load_scene(PTR_REFERENCE_DOC).unwrap();
        let b = load_scene(PTR_REFERENCE_DOC).unwrap();
        assert_eq!(a, b);
        let re = load_scene(&a.to_document().to_string()).unwrap();
        assert_eq!(a, re);
    }

    #[test]
    fn vocabulary_matches_independent_rescan() {
        for doc in [PTR_REFERENCE_DOC, CLEVR_REFERENCE_DOC] {
            let scene = load_scene(doc).unwrap();
            assert_eq!(scene.vocabulary, build_vocabulary(&scene.objects));
        }
    }
}
