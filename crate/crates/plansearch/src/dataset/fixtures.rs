//! Bundled desk-scale fixtures: hand-built scenes, gold plans for every
//! question type, and synthetic plan chains for search benchmarks.
//!
//! Custom scenes are laid out on an integer grid (x grows rightward, y grows
//! toward the back) and the relation tables are derived mechanically from the
//! coordinates, so duality holds by construction and every stated answer was
//! derived by reading the tables.

use serde_json::{json, Value as Json};

use crate::dataset::{DatasetSplit, QuestionRecord, QuestionType};
use crate::evaluator::evaluate_candidate;
use crate::interpreter::{execute_plan, format_answer};
use crate::plan_dsl::parse_plan;
use crate::scene_graph::{load_scene, load_scene_value, SceneGraph};

/// Part-based reference scene: two chairs and a table.
pub const PTR_REFERENCE_DOC: &str = r#"{
  "relationships": {
    "above": [[], [], []],
    "behind": [[], [0], [0, 1]],
    "below": [[], [], []],
    "front": [[1, 2], [2], []],
    "left": [[1, 2], [], [1]],
    "right": [[], [0, 2], [0]]
  },
  "objects": [
    {"Chair0": {"back": ["cyan", 1], "leg": ["gray", 4], "seat": ["gray", 1]}},
    {"Table0": {"door": ["purple", 1], "leg": ["blue", 3], "top": ["yellow", 1]}},
    {"Chair1": {"arm horizontal bar": ["green", 2], "arm vertical bar": ["brown", 4], "back": ["brown", 1], "leg": ["cyan", 4], "leg bar": ["green", 2], "seat": ["brown", 1]}}
  ]
}"#;

/// Attribute-based reference scene: eight primitives.
pub const CLEVR_REFERENCE_DOC: &str = r#"{
  "relationships": {
    "right": [[1, 2, 4, 7], [2, 7], [], [0, 1, 2, 4, 7], [1, 2, 7], [0, 1, 2, 3, 4, 6, 7], [0, 1, 2, 3, 4, 7], [2]],
    "behind": [[1, 2, 3, 4, 5, 6, 7], [4, 7], [1, 4, 7], [1, 2, 4, 7], [], [1, 2, 3, 4, 7], [1, 2, 3, 4, 5, 7], [4]],
    "front": [[], [0, 2, 3, 5, 6], [0, 3, 5, 6], [0, 5, 6], [0, 1, 2, 3, 5, 6, 7], [0, 6], [0], [0, 1, 2, 3, 5, 6]],
    "left": [[3, 5, 6], [0, 3, 4, 5, 6], [0, 1, 3, 4, 5, 6, 7], [5, 6], [0, 3, 5, 6], [], [5], [0, 1, 3, 4, 5, 6]]
  },
  "objects": [
    {"cube0": ["gray", "large", "rubber"]},
    {"sphere0": ["brown", "small", "metal"]},
    {"cube1": ["blue", "large", "rubber"]},
    {"cylinder0": ["brown", "large", "rubber"]},
    {"cube2": ["purple", "small", "metal"]},
    {"sphere1": ["gray", "small", "metal"]},
    {"cube3": ["gray", "small", "rubber"]},
    {"cube4": ["blue", "small", "metal"]}
  ]
}"#;

pub fn ptr_reference_scene() -> SceneGraph {
    load_scene(PTR_REFERENCE_DOC).expect("reference part-based scene is valid")
}

pub fn clevr_reference_scene() -> SceneGraph {
    load_scene(CLEVR_REFERENCE_DOC).expect("reference attribute-based scene is valid")
}

/// (part name, color, count)
type PartSpec = (&'static str, &'static str, i64);
/// (object name, x, y, parts)
type PartObjectSpec = (&'static str, i64, i64, &'static [PartSpec]);
/// (object name, x, y, color, size, material)
type AttrObjectSpec = (
    &'static str,
    i64,
    i64,
    &'static str,
    &'static str,
    &'static str,
);

fn relation_rows(coords: &[(i64, i64)]) -> Json {
    let n = coords.len();
    let row = |pred: &dyn Fn(usize, usize) -> bool| -> Json {
        Json::Array(
            (0..n)
                .map(|i| {
                    Json::Array(
                        (0..n)
                            .filter(|&j| j != i && pred(j, i))
                            .map(|j| Json::from(j as i64))
                            .collect(),
                    )
                })
                .collect(),
        )
    };
    // j is left-of i when x_j < x_i; j is behind i when y_j > y_i.
    json!({
        "left": row(&|j, i| coords[j].0 < coords[i].0),
        "right": row(&|j, i| coords[j].0 > coords[i].0),
        "behind": row(&|j, i| coords[j].1 > coords[i].1),
        "front": row(&|j, i| coords[j].1 < coords[i].1),
    })
}

/// Build a part-based scene from grid coordinates; above/below stay empty.
pub fn build_part_scene(objects: &[PartObjectSpec]) -> SceneGraph {
    let coords: Vec<(i64, i64)> = objects.iter().map(|o| (o.1, o.2)).collect();
    let mut relationships = relation_rows(&coords);
    let empty: Vec<Json> = (0..objects.len()).map(|_| json!([])).collect();
    relationships["above"] = Json::Array(empty.clone());
    relationships["below"] = Json::Array(empty);
    let objs: Vec<Json> = objects
        .iter()
        .map(|(name, _, _, parts)| {
            let mut body = serde_json::Map::new();
            for (part, color, count) in *parts {
                body.insert(part.to_string(), json!([color, count]));
            }
            json!({ *name: body })
        })
        .collect();
    let doc = json!({ "relationships": relationships, "objects": objs });
    load_scene_value(&doc).expect("generated part-based scene is valid")
}

/// Build an attribute-based scene from grid coordinates.
pub fn build_attr_scene(objects: &[AttrObjectSpec]) -> SceneGraph {
    let coords: Vec<(i64, i64)> = objects.iter().map(|o| (o.1, o.2)).collect();
    let relationships = relation_rows(&coords);
    let objs: Vec<Json> = objects
        .iter()
        .map(|(name, _, _, color, size, material)| json!({ *name: [color, size, material] }))
        .collect();
    let doc = json!({ "relationships": relationships, "objects": objs });
    load_scene_value(&doc).expect("generated attribute-based scene is valid")
}

/// Six furniture pieces with a rich part inventory.
pub fn ptr_home_scene() -> SceneGraph {
    build_part_scene(&[
        (
            "Chair0",
            1,
            1,
            &[
                ("back", "cyan", 1),
                ("leg", "gray", 4),
                ("seat", "brown", 1),
                ("leg bar", "green", 2),
            ],
        ),
        (
            "Chair1",
            2,
            4,
            &[
                ("back", "brown", 1),
                ("leg", "cyan", 4),
                ("seat", "brown", 1),
                ("arm vertical bar", "brown", 4),
                ("arm horizontal bar", "green", 2),
                ("leg bar", "green", 2),
            ],
        ),
        (
            "Table0",
            3,
            2,
            &[
                ("drawer", "red", 6),
                ("leg", "blue", 4),
                ("top", "yellow", 1),
            ],
        ),
        (
            "Table1",
            4,
            6,
            &[
                ("door", "green", 1),
                ("leg", "blue", 2),
                ("top", "purple", 1),
                ("drawer", "cyan", 3),
            ],
        ),
        (
            "Bed0",
            5,
            5,
            &[
                ("sleep area", "purple", 1),
                ("leg", "brown", 4),
                ("frame", "gray", 1),
            ],
        ),
        (
            "Cart0",
            6,
            3,
            &[
                ("body", "cyan", 1),
                ("wheel", "gray", 4),
                ("handle", "red", 1),
            ],
        ),
    ])
}

/// Two beds, two chairs, a table, and a cart.
pub fn ptr_studio_scene() -> SceneGraph {
    build_part_scene(&[
        (
            "Bed0",
            1,
            2,
            &[
                ("sleep area", "purple", 1),
                ("leg", "gray", 4),
                ("headboard", "blue", 1),
            ],
        ),
        (
            "Bed1",
            2,
            5,
            &[
                ("sleep area", "green", 1),
                ("leg", "brown", 4),
                ("headboard", "blue", 1),
            ],
        ),
        (
            "Chair0",
            3,
            1,
            &[
                ("back", "red", 1),
                ("leg", "blue", 4),
                ("seat", "cyan", 1),
                ("leg bar", "gray", 8),
            ],
        ),
        (
            "Table0",
            4,
            4,
            &[
                ("top", "cyan", 1),
                ("leg", "green", 3),
                ("drawer", "green", 2),
            ],
        ),
        (
            "Cart0",
            5,
            3,
            &[
                ("body", "yellow", 1),
                ("wheel", "red", 3),
                ("handle", "gray", 1),
            ],
        ),
        (
            "Chair1",
            6,
            6,
            &[
                ("back", "brown", 1),
                ("leg", "yellow", 4),
                ("seat", "green", 1),
                ("leg bar", "cyan", 2),
            ],
        ),
    ])
}

/// Two chairs, two tables, two carts.
pub fn ptr_loft_scene() -> SceneGraph {
    build_part_scene(&[
        (
            "Chair0",
            1,
            3,
            &[
                ("back", "yellow", 1),
                ("leg", "blue", 4),
                ("seat", "brown", 1),
                ("leg bar", "green", 3),
            ],
        ),
        (
            "Chair1",
            2,
            6,
            &[
                ("back", "green", 1),
                ("leg", "red", 4),
                ("seat", "brown", 1),
                ("leg bar", "red", 2),
            ],
        ),
        (
            "Table0",
            3,
            1,
            &[
                ("drawer", "red", 6),
                ("leg", "cyan", 4),
                ("top", "green", 1),
            ],
        ),
        (
            "Table1",
            4,
            5,
            &[("door", "purple", 2), ("leg", "blue", 2), ("top", "red", 1)],
        ),
        (
            "Cart0",
            5,
            2,
            &[
                ("body", "cyan", 1),
                ("wheel", "gray", 4),
                ("handle", "brown", 1),
            ],
        ),
        (
            "Cart1",
            6,
            4,
            &[
                ("body", "green", 1),
                ("wheel", "red", 2),
                ("handle", "gray", 1),
            ],
        ),
    ])
}

/// Six primitives arranged so the long relation chains are unambiguous.
pub fn clevr_field_scene() -> SceneGraph {
    build_attr_scene(&[
        ("cube0", 3, 5, "yellow", "small", "rubber"),
        ("cylinder0", 1, 6, "gray", "large", "rubber"),
        ("sphere0", 4, 2, "brown", "small", "metal"),
        ("sphere1", 0, 4, "yellow", "large", "metal"),
        ("cube1", 5, 1, "blue", "large", "metal"),
        ("cylinder1", 2, 3, "purple", "small", "metal"),
    ])
}

/// Seven primitives with one unique referent per attribute combination used
/// in the logic fixtures.
pub fn clevr_lab_scene() -> SceneGraph {
    build_attr_scene(&[
        ("cube0", 1, 4, "red", "small", "rubber"),
        ("sphere0", 5, 5, "green", "large", "metal"),
        ("cube1", 3, 3, "brown", "large", "metal"),
        ("cylinder0", 2, 2, "blue", "small", "rubber"),
        ("sphere1", 0, 1, "purple", "small", "metal"),
        ("cube2", 4, 6, "gray", "large", "metal"),
        ("cylinder1", 6, 0, "yellow", "large", "rubber"),
    ])
}

/// Derived plan for the attribute-based reference question; answers "brown".
pub const CLEVR_REFERENCE_PLAN: &str = r#"Step 1:obj1 = filter_part(["purple","shiny"],all_obj)
Step 2:obj2 = query_relation("left",obj1)
Step 3:obj3 = filter_part(["tiny","gray","metallic","ball"],all_obj)
Step 4:obj4 = query_relation("behind",obj3)
Step 5:obj5 = intersection(obj2,obj4)
Step 6:obj6 = filter_part(["large"],obj5)
Step 7:ans = query_color(obj6)"#;

/// Derived plan for the part-based reference question; answers "chair".
pub const PTR_REFERENCE_PLAN: &str = r#"Step 1:obj1 = filter_object("chair",all_obj)
Step 2:obj2 = filter_part(["four","brown","arm vertical bar"],obj1)
Step 3:obj3 = filter_part(["gray","leg"],all_obj)
Step 4:relation1 = get_relation(obj2,obj3)
Step 5:obj4 = filter_part(["three","blue","leg"],all_obj)
Step 6:obj5 = filter_relation(relation1,obj4,all_obj)
Step 7:ans = query_category(obj5)"#;

/// The reference gold plans, one per question type, in taxonomy order. These
/// are the canonical template plans the bundled fixtures are built around.
pub const GOLD_SHORT_REL: &str = r#"Step 1:obj1 = filter_object("table",all_obj)
Step 2:obj2 = filter_part(["six","red","drawer"],obj1)
Step 3:obj3 = query_relation("behind",obj2)
Step 4:ans = count_object(obj3)"#;

pub const GOLD_LONG_REL: &str = r#"Step 1:obj1 = filter_part(["tiny","yellow","matte"],all_obj)
Step 2:obj2 = query_relation("behind",obj1)
Step 3:obj3 = query_relation("right",obj2)
Step 4:obj4 = filter_object("sphere",obj3)
Step 5:obj5 = query_relation("behind",obj4)
Step 6:obj6 = filter_object("ball",obj5)
Step 7:obj7 = filter_part(["yellow"],obj6)
Step 8:ans = query_size(obj7)"#;

pub const GOLD_SUM: &str = r#"Step 1:obj1 = filter_object("table",all_obj)
Step 2:obj2 = filter_part(["cyan","leg"],obj1)
Step 3:num1 = count_part("drawer",obj2)
Step 4:obj3 = filter_object("table",all_obj)
Step 5:obj4 = filter_part(["two","blue","leg"],obj3)
Step 6:num2 = count_part("door",obj4)
Step 7:ans = sum(num1,num2)"#;

pub const GOLD_COMPARE: &str = r#"Step 1:obj1 = filter_object("cart",all_obj)
Step 2:obj2 = filter_part(["one","cyan","body"],obj1)
Step 3:num1 = count_part("wheel",obj2)
Step 4:obj3 = filter_part(["red","leg bar"],all_obj)
Step 5:num2 = count_part("leg",obj3)
Step 6:ans = equal(num1,num2)"#;

pub const GOLD_LOGIC: &str = r#"Step 1:obj1 = filter_part(["small","red"],all_obj)
Step 2:obj2 = query_relation("right",obj1)
Step 3:obj3 = filter_part(["large","green","metal"],all_obj)
Step 4:obj4 = query_relation("front",obj3)
Step 5:obj5 = intersection(obj2,obj4)
Step 6:obj6 = filter_part(["metal"],obj5)
Step 7:ans = query_color(obj6)"#;

pub const GOLD_QUERY_PART: &str = r#"Step 1:obj1 = filter_part(["blue","leg"],all_obj)
Step 2:category1 = query_category(obj1)
Step 3:obj2 = filter_category(category1,all_obj)
Step 4:obj3 = exclude_object(obj1,obj2)
Step 5:ans = query_part("brown",obj3)"#;

pub const GOLD_EXIST: &str = r#"Step 1:obj1 = filter_object("chair",all_obj)
Step 2:obj2 = filter_part(["one","red","back"],obj1)
Step 3:num1 = count_part("leg bar",obj2)
Step 4:obj3 = filter_part([num1,"leg bar"],all_obj)
Step 5:obj4 = exclude_object(obj2,obj3)
Step 6:ans = exist(obj4)"#;

pub const GOLD_COUNT: &str = r#"Step 1:obj1 = filter_object("chair",all_obj)
Step 2:obj2 = filter_part(["three","leg bar"],obj1)
Step 3:color1 = query_color("seat",obj2)
Step 4:obj3 = filter_part([color1,"seat"],all_obj)
Step 5:obj4 = exclude_object(obj2,obj3)
Step 6:ans = count_part("leg",obj4)"#;

pub const GOLD_ANALOGY: &str = r#"Step 1:obj1 = filter_object("bed",all_obj)
Step 2:obj2 = filter_part(["one","purple","sleep area"],obj1)
Step 3:obj3 = filter_object("bed",all_obj)
Step 4:obj4 = filter_part(["one","green","sleep area"],obj3)
Step 5:relation1 = get_relation(obj2,obj4)
Step 6:obj5 = filter_part(["eight","leg bar"],all_obj)
Step 7:obj6 = filter_relation(relation1,obj5,all_obj)
Step 8:ans = count_object(obj6)"#;

/// Ids of the test records hosting the nine reference gold plans.
pub const GOLD_RECORD_IDS: [&str; 9] = [
    "short-rel-t3",
    "long-rel-t1",
    "sum-t1",
    "compare-t1",
    "logic-t2",
    "query-part-t1",
    "exist-t1",
    "count-t1",
    "analogy-t1",
];

fn record(
    id: &str,
    question_type: QuestionType,
    question: &str,
    answer: &str,
    scene: SceneGraph,
    plan_text: &str,
) -> QuestionRecord {
    let plan = parse_plan(plan_text)
        .unwrap_or_else(|e| panic!("fixture {id}: gold plan does not parse: {e}"));
    let verdict = evaluate_candidate(&plan, &scene);
    assert!(
        verdict.pass,
        "fixture {id}: gold plan rejected: {:?}",
        verdict.diagnostics
    );
    let trace = execute_plan(&plan, &scene)
        .unwrap_or_else(|e| panic!("fixture {id}: gold plan fails: {e}"));
    let value = trace
        .answer
        .unwrap_or_else(|| panic!("fixture {id}: gold plan never assigns ans"));
    let produced =
        format_answer(&value).unwrap_or_else(|e| panic!("fixture {id}: unformattable answer: {e}"));
    assert!(
        crate::dataset::answers_match(answer, &produced),
        "fixture {id}: stated answer \"{answer}\" but the plan yields \"{produced}\""
    );
    QuestionRecord {
        id: id.to_string(),
        question: question.to_string(),
        answer: answer.to_string(),
        question_type,
        gold_plan: Some(plan),
        scene,
    }
}

/// The bundled split: 4 library and 3 test records per question type, every
/// gold plan executed and answer-checked while the split is built.
pub fn bundled_fixtures() -> DatasetSplit {
    use QuestionType::*;
    let home = ptr_home_scene;
    let studio = ptr_studio_scene;
    let loft = ptr_loft_scene;
    let field = clevr_field_scene;
    let lab = clevr_lab_scene;
    let ptr_ref = ptr_reference_scene;
    let clevr_ref = clevr_reference_scene;

    let library = vec![
        record(
            "short-rel-l1",
            ShortRel,
            "how many things are behind the chair with four cyan legs?",
            "2",
            home(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"four\",\"cyan\",\"leg\"],obj1)\nStep 3:obj3 = query_relation(\"behind\",obj2)\nStep 4:ans = count_object(obj3)",
        ),
        record(
            "short-rel-l2",
            ShortRel,
            "how many things are on the left of the cart with a cyan body?",
            "5",
            home(),
            "Step 1:obj1 = filter_object(\"cart\",all_obj)\nStep 2:obj2 = filter_part([\"one\",\"cyan\",\"body\"],obj1)\nStep 3:obj3 = query_relation(\"left\",obj2)\nStep 4:ans = count_object(obj3)",
        ),
        record(
            "short-rel-l3",
            ShortRel,
            "how many things are in front of the bed with a green sleep area?",
            "4",
            studio(),
            "Step 1:obj1 = filter_object(\"bed\",all_obj)\nStep 2:obj2 = filter_part([\"green\",\"sleep area\"],obj1)\nStep 3:obj3 = query_relation(\"front\",obj2)\nStep 4:ans = count_object(obj3)",
        ),
        record(
            "short-rel-l4",
            ShortRel,
            "how many things are on the left of the cart with two red wheels?",
            "5",
            loft(),
            "Step 1:obj1 = filter_object(\"cart\",all_obj)\nStep 2:obj2 = filter_part([\"two\",\"red\",\"wheel\"],obj1)\nStep 3:obj3 = query_relation(\"left\",obj2)\nStep 4:ans = count_object(obj3)",
        ),
        record(
            "long-rel-l1",
            LongRel,
            "what is the color of the small ball that is on the left side of the blue thing that is in front of the gray cylinder?",
            "brown",
            field(),
            "Step 1:obj1 = filter_part([\"gray\",\"cylinder\"],all_obj)\nStep 2:obj2 = query_relation(\"front\",obj1)\nStep 3:obj3 = filter_part([\"blue\"],obj2)\nStep 4:obj4 = query_relation(\"left\",obj3)\nStep 5:obj5 = filter_object(\"ball\",obj4)\nStep 6:obj6 = filter_part([\"small\"],obj5)\nStep 7:ans = query_color(obj6)",
        ),
        record(
            "long-rel-l2",
            LongRel,
            "what size is the metal thing that is behind the purple thing on the right side of the big gray thing?",
            "large",
            field(),
            "Step 1:obj1 = filter_part([\"big\",\"gray\"],all_obj)\nStep 2:obj2 = query_relation(\"right\",obj1)\nStep 3:obj3 = filter_part([\"purple\"],obj2)\nStep 4:obj4 = query_relation(\"behind\",obj3)\nStep 5:obj5 = filter_part([\"metal\"],obj4)\nStep 6:ans = query_size(obj5)",
        ),
        record(
            "long-rel-l3",
            LongRel,
            "what size is the purple thing in front of the gray metal cube that is behind the blue cylinder?",
            "small",
            lab(),
            "Step 1:obj1 = filter_part([\"blue\",\"cylinder\"],all_obj)\nStep 2:obj2 = query_relation(\"behind\",obj1)\nStep 3:obj3 = filter_part([\"large\",\"metal\"],obj2)\nStep 4:obj4 = filter_object(\"cube\",obj3)\nStep 5:obj5 = filter_part([\"gray\"],obj4)\nStep 6:obj6 = query_relation(\"front\",obj5)\nStep 7:obj7 = filter_part([\"purple\"],obj6)\nStep 8:ans = query_size(obj7)",
        ),
        record(
            "long-rel-l4",
            LongRel,
            "what color is the big metal ball on the right side of the rubber block behind the yellow thing?",
            "green",
            lab(),
            "Step 1:obj1 = filter_part([\"yellow\"],all_obj)\nStep 2:obj2 = query_relation(\"behind\",obj1)\nStep 3:obj3 = filter_part([\"rubber\"],obj2)\nStep 4:obj4 = filter_object(\"cube\",obj3)\nStep 5:obj5 = query_relation(\"right\",obj4)\nStep 6:obj6 = filter_part([\"large\",\"metal\"],obj5)\nStep 7:obj7 = filter_object(\"sphere\",obj6)\nStep 8:ans = query_color(obj7)",
        ),
        record(
            "sum-l1",
            Sum,
            "what is the sum of the number of legs in the bed with a gray frame, and the number of legs in the chair with a brown back?",
            "8",
            home(),
            "Step 1:obj1 = filter_object(\"bed\",all_obj)\nStep 2:obj2 = filter_part([\"gray\",\"frame\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_object(\"chair\",all_obj)\nStep 5:obj4 = filter_part([\"one\",\"brown\",\"back\"],obj3)\nStep 6:num2 = count_part(\"leg\",obj4)\nStep 7:ans = sum(num1,num2)",
        ),
        record(
            "sum-l2",
            Sum,
            "what is the sum of the number of legs in the table with a purple door, and the number of arm vertical bars in the chair with a brown back?",
            "7",
            ptr_ref(),
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"purple\",\"door\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_object(\"chair\",all_obj)\nStep 5:obj4 = filter_part([\"brown\",\"back\"],obj3)\nStep 6:num2 = count_part(\"arm vertical bar\",obj4)\nStep 7:ans = sum(num1,num2)",
        ),
        record(
            "sum-l3",
            Sum,
            "what is the sum of the number of drawers in the table with a cyan top, and the number of wheels in the cart with a gray handle?",
            "5",
            studio(),
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"cyan\",\"top\"],obj1)\nStep 3:num1 = count_part(\"drawer\",obj2)\nStep 4:obj3 = filter_object(\"cart\",all_obj)\nStep 5:obj4 = filter_part([\"gray\",\"handle\"],obj3)\nStep 6:num2 = count_part(\"wheel\",obj4)\nStep 7:ans = sum(num1,num2)",
        ),
        record(
            "sum-l4",
            Sum,
            "what is the sum of the number of leg bars in the chair with a yellow back, and the number of doors in the table with a red top?",
            "5",
            loft(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"yellow\",\"back\"],obj1)\nStep 3:num1 = count_part(\"leg bar\",obj2)\nStep 4:obj3 = filter_object(\"table\",all_obj)\nStep 5:obj4 = filter_part([\"red\",\"top\"],obj3)\nStep 6:num2 = count_part(\"door\",obj4)\nStep 7:ans = sum(num1,num2)",
        ),
        record(
            "compare-l1",
            Compare,
            "are there more legs in the chair with gray legs than drawers in the table with a purple top?",
            "yes",
            home(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"gray\",\"leg\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_object(\"table\",all_obj)\nStep 5:obj4 = filter_part([\"one\",\"purple\",\"top\"],obj3)\nStep 6:num2 = count_part(\"drawer\",obj4)\nStep 7:ans = more_than(num1,num2)",
        ),
        record(
            "compare-l2",
            Compare,
            "are there an equal number of legs in the bed with a purple sleep area, and legs in the chair with a red back?",
            "yes",
            studio(),
            "Step 1:obj1 = filter_object(\"bed\",all_obj)\nStep 2:obj2 = filter_part([\"purple\",\"sleep area\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_object(\"chair\",all_obj)\nStep 5:obj4 = filter_part([\"red\",\"back\"],obj3)\nStep 6:num2 = count_part(\"leg\",obj4)\nStep 7:ans = equal(num1,num2)",
        ),
        record(
            "compare-l3",
            Compare,
            "are there more legs in the chair with gray legs than legs in the table with a yellow top?",
            "yes",
            ptr_ref(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"gray\",\"leg\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_object(\"table\",all_obj)\nStep 5:obj4 = filter_part([\"yellow\",\"top\"],obj3)\nStep 6:num2 = count_part(\"leg\",obj4)\nStep 7:ans = more_than(num1,num2)",
        ),
        record(
            "compare-l4",
            Compare,
            "are there fewer wheels in the cart with a green body than drawers in the table with a green top?",
            "yes",
            loft(),
            "Step 1:obj1 = filter_object(\"cart\",all_obj)\nStep 2:obj2 = filter_part([\"green\",\"body\"],obj1)\nStep 3:num1 = count_part(\"wheel\",obj2)\nStep 4:obj3 = filter_object(\"table\",all_obj)\nStep 5:obj4 = filter_part([\"green\",\"top\"],obj3)\nStep 6:num2 = count_part(\"drawer\",obj4)\nStep 7:ans = few_than(num1,num2)",
        ),
        record(
            "logic-l1",
            Logic,
            "The green thing that is both behind the red thing and behind the yellow thing is what size?",
            "large",
            lab(),
            "Step 1:obj1 = filter_part([\"red\"],all_obj)\nStep 2:obj2 = query_relation(\"behind\",obj1)\nStep 3:obj3 = filter_part([\"yellow\"],all_obj)\nStep 4:obj4 = query_relation(\"behind\",obj3)\nStep 5:obj5 = intersection(obj2,obj4)\nStep 6:obj6 = filter_part([\"green\"],obj5)\nStep 7:ans = query_size(obj6)",
        ),
        record(
            "logic-l2",
            Logic,
            "The big rubber thing that is both on the left side of the brown ball and behind the blue block is what color?",
            "gray",
            field(),
            "Step 1:obj1 = filter_part([\"brown\",\"ball\"],all_obj)\nStep 2:obj2 = query_relation(\"left\",obj1)\nStep 3:obj3 = filter_part([\"blue\"],all_obj)\nStep 4:obj4 = query_relation(\"behind\",obj3)\nStep 5:obj5 = intersection(obj2,obj4)\nStep 6:obj6 = filter_part([\"large\",\"rubber\"],obj5)\nStep 7:ans = query_color(obj6)",
        ),
        record(
            "logic-l3",
            Logic,
            "The gray thing that is both on the left side of the big rubber thing and behind the small metal thing is what size?",
            "large",
            lab(),
            "Step 1:obj1 = filter_part([\"large\",\"rubber\"],all_obj)\nStep 2:obj2 = query_relation(\"left\",obj1)\nStep 3:obj3 = filter_part([\"small\",\"metal\"],all_obj)\nStep 4:obj4 = query_relation(\"behind\",obj3)\nStep 5:obj5 = intersection(obj2,obj4)\nStep 6:obj6 = filter_part([\"gray\"],obj5)\nStep 7:ans = query_size(obj6)",
        ),
        record(
            "logic-l4",
            Logic,
            "The big gray thing that is both on the left side of the blue metal block and in front of the purple thing is what category?",
            "cube",
            clevr_ref(),
            "Step 1:obj1 = filter_part([\"blue\",\"metal\"],all_obj)\nStep 2:obj2 = query_relation(\"left\",obj1)\nStep 3:obj3 = filter_part([\"purple\"],all_obj)\nStep 4:obj4 = query_relation(\"front\",obj3)\nStep 5:obj5 = intersection(obj2,obj4)\nStep 6:obj6 = filter_part([\"large\",\"gray\"],obj5)\nStep 7:ans = query_category(obj6)",
        ),
        record(
            "query-part-l1",
            QueryPart,
            "what is the category of the cyan part of the thing that is of the same category as the thing with a cyan back?",
            "leg",
            home(),
            "Step 1:obj1 = filter_part([\"cyan\",\"back\"],all_obj)\nStep 2:category1 = query_category(obj1)\nStep 3:obj2 = filter_category(category1,all_obj)\nStep 4:obj3 = exclude_object(obj1,obj2)\nStep 5:ans = query_part(\"cyan\",obj3)",
        ),
        record(
            "query-part-l2",
            QueryPart,
            "what is the category of the yellow part of the thing that is of the same category as the thing with a green back?",
            "back",
            loft(),
            "Step 1:obj1 = filter_part([\"green\",\"back\"],all_obj)\nStep 2:category1 = query_category(obj1)\nStep 3:obj2 = filter_category(category1,all_obj)\nStep 4:obj3 = exclude_object(obj1,obj2)\nStep 5:ans = query_part(\"yellow\",obj3)",
        ),
        record(
            "query-part-l3",
            QueryPart,
            "what is the category of the blue part of the thing that is of the same category as the thing with a green sleep area?",
            "headboard",
            studio(),
            "Step 1:obj1 = filter_part([\"green\",\"sleep area\"],all_obj)\nStep 2:category1 = query_category(obj1)\nStep 3:obj2 = filter_category(category1,all_obj)\nStep 4:obj3 = exclude_object(obj1,obj2)\nStep 5:ans = query_part(\"blue\",obj3)",
        ),
        record(
            "query-part-l4",
            QueryPart,
            "what is the category of the cyan part of the thing that is of the same category as the thing with green arm horizontal bars?",
            "back",
            ptr_ref(),
            "Step 1:obj1 = filter_part([\"green\",\"arm horizontal bar\"],all_obj)\nStep 2:category1 = query_category(obj1)\nStep 3:obj2 = filter_category(category1,all_obj)\nStep 4:obj3 = exclude_object(obj1,obj2)\nStep 5:ans = query_part(\"cyan\",obj3)",
        ),
        record(
            "exist-l1",
            Exist,
            "are there any other objects that have the same number of leg bars as the chair with one brown back?",
            "yes",
            home(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"one\",\"brown\",\"back\"],obj1)\nStep 3:num1 = count_part(\"leg bar\",obj2)\nStep 4:obj3 = filter_part([num1,\"leg bar\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = exist(obj4)",
        ),
        record(
            "exist-l2",
            Exist,
            "are there any other objects that have the same number of legs as the table with two purple doors?",
            "no",
            loft(),
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"two\",\"purple\",\"door\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_part([num1,\"leg\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = exist(obj4)",
        ),
        record(
            "exist-l3",
            Exist,
            "are there any other objects that have the same number of legs as the bed with a purple sleep area?",
            "yes",
            studio(),
            "Step 1:obj1 = filter_object(\"bed\",all_obj)\nStep 2:obj2 = filter_part([\"purple\",\"sleep area\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_part([num1,\"leg\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = exist(obj4)",
        ),
        record(
            "exist-l4",
            Exist,
            "are there any other objects that have the same number of legs as the chair with a brown seat?",
            "yes",
            ptr_ref(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"brown\",\"seat\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_part([num1,\"leg\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = exist(obj4)",
        ),
        record(
            "count-l1",
            Count,
            "what is the number of the legs of the thing that has the same color of seat as the chair with two arm horizontal bars?",
            "4",
            home(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"two\",\"arm horizontal bar\"],obj1)\nStep 3:color1 = query_color(\"seat\",obj2)\nStep 4:obj3 = filter_part([color1,\"seat\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = count_part(\"leg\",obj4)",
        ),
        record(
            "count-l2",
            Count,
            "what is the number of the legs of the other thing of the same category as the table with three cyan drawers?",
            "4",
            home(),
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"three\",\"cyan\",\"drawer\"],obj1)\nStep 3:category1 = query_category(obj2)\nStep 4:obj3 = filter_category(category1,all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = count_part(\"leg\",obj4)",
        ),
        record(
            "count-l3",
            Count,
            "what is the number of the legs of the thing that has the same color of headboard as the bed with a purple sleep area?",
            "4",
            studio(),
            "Step 1:obj1 = filter_object(\"bed\",all_obj)\nStep 2:obj2 = filter_part([\"purple\",\"sleep area\"],obj1)\nStep 3:color1 = query_color(\"headboard\",obj2)\nStep 4:obj3 = filter_part([color1,\"headboard\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = count_part(\"leg\",obj4)",
        ),
        record(
            "count-l4",
            Count,
            "what is the number of the legs of the other thing of the same category as the chair with a cyan back?",
            "4",
            ptr_ref(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"cyan\",\"back\"],obj1)\nStep 3:category1 = query_category(obj2)\nStep 4:obj3 = filter_category(category1,all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = count_part(\"leg\",obj4)",
        ),
        record(
            "analogy-l1",
            Analogy,
            "the bed with a purple sleep area has certain positional relation to the cart with a cyan body. by analogy, is there an object that the table with a yellow top has the same positional relation to?",
            "no",
            home(),
            "Step 1:obj1 = filter_object(\"bed\",all_obj)\nStep 2:obj2 = filter_part([\"purple\",\"sleep area\"],obj1)\nStep 3:obj3 = filter_object(\"cart\",all_obj)\nStep 4:obj4 = filter_part([\"cyan\",\"body\"],obj3)\nStep 5:relation1 = get_relation(obj2,obj4)\nStep 6:obj5 = filter_object(\"table\",all_obj)\nStep 7:obj6 = filter_part([\"yellow\",\"top\"],obj5)\nStep 8:obj7 = filter_relation(relation1,obj6,all_obj)\nStep 9:ans = exist(obj7)",
        ),
        record(
            "analogy-l2",
            Analogy,
            "the chair with a yellow back has certain positional relation to the chair with a green back. by analogy, how many objects does the table with a red top have the same positional relation to?",
            "0",
            loft(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"yellow\",\"back\"],obj1)\nStep 3:obj3 = filter_object(\"chair\",all_obj)\nStep 4:obj4 = filter_part([\"green\",\"back\"],obj3)\nStep 5:relation1 = get_relation(obj2,obj4)\nStep 6:obj5 = filter_object(\"table\",all_obj)\nStep 7:obj6 = filter_part([\"red\",\"top\"],obj5)\nStep 8:obj7 = filter_relation(relation1,obj6,all_obj)\nStep 9:ans = count_object(obj7)",
        ),
        record(
            "analogy-l3",
            Analogy,
            "the cart with a green body has certain positional relation to the cart with a cyan body. by analogy, how many objects does the table with a red top have the same positional relation to?",
            "2",
            loft(),
            "Step 1:obj1 = filter_part([\"green\",\"body\"],all_obj)\nStep 2:obj2 = filter_part([\"cyan\",\"body\"],all_obj)\nStep 3:relation1 = get_relation(obj1,obj2)\nStep 4:obj3 = filter_object(\"table\",all_obj)\nStep 5:obj4 = filter_part([\"red\",\"top\"],obj3)\nStep 6:obj5 = filter_relation(relation1,obj4,all_obj)\nStep 7:ans = count_object(obj5)",
        ),
        record(
            "analogy-l4",
            Analogy,
            "the table with a purple door has certain positional relation to the chair with a cyan back. by analogy, is there an object that the chair with a brown back has the same positional relation to?",
            "yes",
            ptr_ref(),
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"purple\",\"door\"],obj1)\nStep 3:obj3 = filter_object(\"chair\",all_obj)\nStep 4:obj4 = filter_part([\"cyan\",\"back\"],obj3)\nStep 5:relation1 = get_relation(obj2,obj4)\nStep 6:obj5 = filter_object(\"chair\",all_obj)\nStep 7:obj6 = filter_part([\"brown\",\"back\"],obj5)\nStep 8:obj7 = filter_relation(relation1,obj6,all_obj)\nStep 9:ans = exist(obj7)",
        ),
    ];

    let test = vec![
        record(
            "short-rel-t1",
            ShortRel,
            "how many things are behind the table with six red drawers?",
            "4",
            home(),
            GOLD_SHORT_REL,
        ),
        record(
            "short-rel-t2",
            ShortRel,
            "how many things are behind the cart with three red wheels?",
            "3",
            studio(),
            "Step 1:obj1 = filter_object(\"cart\",all_obj)\nStep 2:obj2 = filter_part([\"three\",\"red\",\"wheel\"],obj1)\nStep 3:obj3 = query_relation(\"behind\",obj2)\nStep 4:ans = count_object(obj3)",
        ),
        record(
            "short-rel-t3",
            ShortRel,
            "how many things are behind the table with six red drawers?",
            "5",
            loft(),
            GOLD_SHORT_REL,
        ),
        record(
            "long-rel-t1",
            LongRel,
            "What size is the yellow ball behind the sphere that is on the right side of the object that is behind the tiny yellow matte thing?",
            "large",
            field(),
            GOLD_LONG_REL,
        ),
        record(
            "long-rel-t2",
            LongRel,
            "what size is the brown metal block that is on the right side of the cylinder behind the tiny purple thing?",
            "large",
            lab(),
            "Step 1:obj1 = filter_part([\"tiny\",\"purple\"],all_obj)\nStep 2:obj2 = query_relation(\"behind\",obj1)\nStep 3:obj3 = filter_object(\"cylinder\",obj2)\nStep 4:obj4 = query_relation(\"right\",obj3)\nStep 5:obj5 = filter_part([\"metal\",\"cube\"],obj4)\nStep 6:obj6 = filter_part([\"brown\"],obj5)\nStep 7:ans = query_size(obj6)",
        ),
        record(
            "long-rel-t3",
            LongRel,
            "what size is the yellow ball behind the metal cylinder on the left side of the blue block?",
            "large",
            field(),
            "Step 1:obj1 = filter_part([\"blue\",\"block\"],all_obj)\nStep 2:obj2 = query_relation(\"left\",obj1)\nStep 3:obj3 = filter_part([\"metal\"],obj2)\nStep 4:obj4 = filter_object(\"cylinder\",obj3)\nStep 5:obj5 = query_relation(\"behind\",obj4)\nStep 6:obj6 = filter_part([\"yellow\"],obj5)\nStep 7:obj7 = filter_object(\"ball\",obj6)\nStep 8:ans = query_size(obj7)",
        ),
        record(
            "sum-t1",
            Sum,
            "what is the sum of the number of drawers in the table with cyan legs, and the number of doors in the table with two blue legs?",
            "8",
            loft(),
            GOLD_SUM,
        ),
        record(
            "sum-t2",
            Sum,
            "what is the sum of the number of drawers in the table with four blue legs, and the number of wheels in the cart with a red handle?",
            "10",
            home(),
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"four\",\"blue\",\"leg\"],obj1)\nStep 3:num1 = count_part(\"drawer\",obj2)\nStep 4:obj3 = filter_object(\"cart\",all_obj)\nStep 5:obj4 = filter_part([\"one\",\"red\",\"handle\"],obj3)\nStep 6:num2 = count_part(\"wheel\",obj4)\nStep 7:ans = sum(num1,num2)",
        ),
        record(
            "sum-t3",
            Sum,
            "what is the sum of the number of legs in the chair with a cyan back, and the number of leg bars in the chair with green arm horizontal bars?",
            "6",
            ptr_ref(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"cyan\",\"back\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_object(\"chair\",all_obj)\nStep 5:obj4 = filter_part([\"green\",\"arm horizontal bar\"],obj3)\nStep 6:num2 = count_part(\"leg bar\",obj4)\nStep 7:ans = sum(num1,num2)",
        ),
        record(
            "compare-t1",
            Compare,
            "are there an equal number of legs in the object with two red leg bars, and wheels in the cart with a cyan body?",
            "yes",
            loft(),
            GOLD_COMPARE,
        ),
        record(
            "compare-t2",
            Compare,
            "are there an equal number of legs in the object with six red drawers, and wheels in the cart with a cyan body?",
            "yes",
            home(),
            "Step 1:obj1 = filter_object(\"cart\",all_obj)\nStep 2:obj2 = filter_part([\"one\",\"cyan\",\"body\"],obj1)\nStep 3:num1 = count_part(\"wheel\",obj2)\nStep 4:obj3 = filter_part([\"six\",\"red\",\"drawer\"],all_obj)\nStep 5:num2 = count_part(\"leg\",obj3)\nStep 6:ans = equal(num1,num2)",
        ),
        record(
            "compare-t3",
            Compare,
            "are there an equal number of leg bars in the chair with blue legs, and wheels in the cart with a yellow body?",
            "no",
            studio(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"blue\",\"leg\"],obj1)\nStep 3:num1 = count_part(\"leg bar\",obj2)\nStep 4:obj3 = filter_object(\"cart\",all_obj)\nStep 5:obj4 = filter_part([\"yellow\",\"body\"],obj3)\nStep 6:num2 = count_part(\"wheel\",obj4)\nStep 7:ans = equal(num1,num2)",
        ),
        record(
            "logic-t1",
            Logic,
            "The large thing that is both on the left side of the purple shiny object and behind the tiny gray metallic ball is what color?",
            "brown",
            clevr_ref(),
            CLEVR_REFERENCE_PLAN,
        ),
        record(
            "logic-t2",
            Logic,
            "The metal object that is both on the right side of the small red thing and in front of the large green metal thing is what color?",
            "brown",
            lab(),
            GOLD_LOGIC,
        ),
        record(
            "logic-t3",
            Logic,
            "The metal block that is both in front of the yellow block and on the right side of the purple thing is what color?",
            "blue",
            field(),
            "Step 1:obj1 = filter_part([\"yellow\",\"cube\"],all_obj)\nStep 2:obj2 = query_relation(\"front\",obj1)\nStep 3:obj3 = filter_part([\"purple\"],all_obj)\nStep 4:obj4 = query_relation(\"right\",obj3)\nStep 5:obj5 = intersection(obj2,obj4)\nStep 6:obj6 = filter_part([\"metal\",\"cube\"],obj5)\nStep 7:ans = query_color(obj6)",
        ),
        record(
            "query-part-t1",
            QueryPart,
            "what is the category of the brown part of the thing that is of the same category as the thing with blue legs?",
            "back",
            studio(),
            GOLD_QUERY_PART,
        ),
        record(
            "query-part-t2",
            QueryPart,
            "what is the category of the green part of the thing that is of the same category as the thing with a yellow top?",
            "door",
            home(),
            "Step 1:obj1 = filter_part([\"yellow\",\"top\"],all_obj)\nStep 2:category1 = query_category(obj1)\nStep 3:obj2 = filter_category(category1,all_obj)\nStep 4:obj3 = exclude_object(obj1,obj2)\nStep 5:ans = query_part(\"green\",obj3)",
        ),
        record(
            "query-part-t3",
            QueryPart,
            "what is the category of the red part of the thing that is of the same category as the thing with a cyan body?",
            "wheel",
            loft(),
            "Step 1:obj1 = filter_part([\"cyan\",\"body\"],all_obj)\nStep 2:category1 = query_category(obj1)\nStep 3:obj2 = filter_category(category1,all_obj)\nStep 4:obj3 = exclude_object(obj1,obj2)\nStep 5:ans = query_part(\"red\",obj3)",
        ),
        record(
            "exist-t1",
            Exist,
            "are there any objects that have the same number of leg bars as the chair with one red back?",
            "no",
            studio(),
            GOLD_EXIST,
        ),
        record(
            "exist-t2",
            Exist,
            "are there any other objects that have the same number of drawers as the table with a yellow top?",
            "no",
            home(),
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"yellow\",\"top\"],obj1)\nStep 3:num1 = count_part(\"drawer\",obj2)\nStep 4:obj3 = filter_part([num1,\"drawer\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = exist(obj4)",
        ),
        record(
            "exist-t3",
            Exist,
            "are there any other objects that have the same number of legs as the chair with a yellow back?",
            "yes",
            loft(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"yellow\",\"back\"],obj1)\nStep 3:num1 = count_part(\"leg\",obj2)\nStep 4:obj3 = filter_part([num1,\"leg\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = exist(obj4)",
        ),
        record(
            "count-t1",
            Count,
            "what is the number of the legs of the thing that has the same color of seat as the chair with three leg bars?",
            "4",
            loft(),
            GOLD_COUNT,
        ),
        record(
            "count-t2",
            Count,
            "what is the number of the drawers of the thing that has the same color of leg as the table with one green door?",
            "6",
            home(),
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"one\",\"green\",\"door\"],obj1)\nStep 3:color1 = query_color(\"leg\",obj2)\nStep 4:obj3 = filter_part([color1,\"leg\"],all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = count_part(\"drawer\",obj4)",
        ),
        record(
            "count-t3",
            Count,
            "what is the number of the leg bars of the other thing of the same category as the chair with blue legs?",
            "2",
            studio(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"blue\",\"leg\"],obj1)\nStep 3:category1 = query_category(obj2)\nStep 4:obj3 = filter_category(category1,all_obj)\nStep 5:obj4 = exclude_object(obj2,obj3)\nStep 6:ans = count_part(\"leg bar\",obj4)",
        ),
        record(
            "analogy-t1",
            Analogy,
            "the bed with a purple sleep area has certain positional relation to the bed with one green sleep area. by analogy, how many objects does the object with eight leg bars have the same positional relation to?",
            "3",
            studio(),
            GOLD_ANALOGY,
        ),
        record(
            "analogy-t2",
            Analogy,
            "the chair with four brown arm vertical bars has certain positional relation to the chair with gray legs. by analogy, the thing with three blue legs has the same positional relation to an object of what category?",
            "Chair",
            ptr_ref(),
            PTR_REFERENCE_PLAN,
        ),
        record(
            "analogy-t3",
            Analogy,
            "the chair with a cyan back has certain positional relation to the chair with a brown back. by analogy, how many objects does the table with six red drawers have the same positional relation to?",
            "3",
            home(),
            "Step 1:obj1 = filter_object(\"chair\",all_obj)\nStep 2:obj2 = filter_part([\"cyan\",\"back\"],obj1)\nStep 3:obj3 = filter_object(\"chair\",all_obj)\nStep 4:obj4 = filter_part([\"brown\",\"back\"],obj3)\nStep 5:relation1 = get_relation(obj2,obj4)\nStep 6:obj5 = filter_part([\"six\",\"red\",\"drawer\"],all_obj)\nStep 7:obj6 = filter_relation(relation1,obj5,all_obj)\nStep 8:ans = count_object(obj6)",
        ),
    ];

    DatasetSplit { library, test }
}

/// Canonical sum-chain plan of the given length: `count_object` once, then
/// chained sums. Every prefix is valid and the answer is `hops * |objects|`.
pub fn synthetic_sum_chain_plan(hops: usize) -> String {
    assert!(hops >= 1);
    if hops == 1 {
        return "Step 1:ans = count_object(all_obj)".to_string();
    }
    let mut lines = vec!["Step 1:num1 = count_object(all_obj)".to_string()];
    for k in 2..hops {
        lines.push(format!("Step {k}:num{k} = sum(num{},num1)", k - 1));
    }
    lines.push(format!("Step {hops}:ans = sum(num{},num1)", hops - 1));
    lines.join("\n")
}

/// Synthetic records for search benchmarks: `count` questions whose hop
/// numbers cycle through `min_hops..=max_hops`.
pub fn synthetic_records(count: usize, min_hops: usize, max_hops: usize) -> Vec<QuestionRecord> {
    assert!(min_hops >= 1 && max_hops >= min_hops);
    let scene = ptr_reference_scene();
    let n = scene.len() as i64;
    let span = max_hops - min_hops + 1;
    (0..count)
        .map(|i| {
            let hops = min_hops + (i % span);
            let plan_text = synthetic_sum_chain_plan(hops);
            record(
                &format!("synthetic-{:03}", i + 1),
                QuestionType::Sum,
                &format!("what is {hops} times the number of objects in the scene?"),
                &(hops as i64 * n).to_string(),
                scene.clone(),
                &plan_text,
            )
        })
        .collect()
}
