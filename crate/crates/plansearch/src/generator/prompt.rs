//! Prompt assembly: instruction, tool glossary, sampled demonstrations, the
//! question, and the accepted trajectory, in that order, ending with
//! "Answer:" so the model continues from the next step.

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::plan_dsl::{render_step, Plan};

use super::GenerationError;

pub const DEFAULT_INSTRUCTION: &str =
    "Output python code with the sequence of steps to solve the given question.";

/// One line per tool, grouped filter / algebra / relation / attribution.
pub const TOOL_DESCRIPTIONS: &str = "\
filter_object(category, object_list): Take a category and a list of objects, and return the objects with the category.
filter_part(part_list, object_list): Take a list of parts or attributes of an object and an object list, and return the objects with the attribute or part.
filter_category(category, object_list): Take a category and an object list, and return the objects with the input category.
exclude_object(object, object_list): Take an object and an object list, and return the object list excluding the input object.
intersection(object_list, object_list): Take two lists of objects, and return the intersection terms.
count_part(part, object): Take a part and an object, and return the number of parts in the object.
count_object(object_list): Take an object list, and return the number of objects in the list.
sum(num1, num2): Take two numbers, and return the sum of the two numbers.
equal(input1, input2): Take two numbers or attributes, and return a boolean value based on the comparison.
more_than(num1, num2): Take two numbers, and return whether the first number is more than the second number.
few_than(num1, num2): Take two numbers, and return whether the first number is less than the second number.
exist(object_list): Take an object list, and return a boolean value standing for whether the object list is not empty.
query_relation(relation, object): Take a relation and an object, and return the things with the relation to the object.
get_relation(object, object): Take two objects, and return the relation between them.
filter_relation(relation, thing, object_list): Take a relation, an object, and a list of objects, and return the objects in the list that the thing has the relation to.
query_category(object_or_part): Take a part or an object, and return the category of the part or object.
query_color(part, object): Take a part and an object, and return the color of the part in the object.
query_part(color, object): Take a color and an object, and return the category of the part with the color in the object.
query_size(object): Take an object, and return the size of the object.";

/// A demonstration pair for few-shot prompting.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PromptExample {
    pub question: String,
    pub plan: String,
}

/// Draw `m` distinct examples uniformly without replacement; a fixed seed
/// reproduces the same selection and order.
pub fn sample_examples(
    library: &[PromptExample],
    m: usize,
    seed: u64,
) -> Result<Vec<PromptExample>, GenerationError> {
    if library.len() < m {
        return Err(GenerationError::InsufficientExamples {
            available: library.len(),
            requested: m,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let indices = rand::seq::index::sample(&mut rng, library.len(), m);
    Ok(indices.iter().map(|i| library[i].clone()).collect())
}

/// Assemble the full prompt. The trajectory's canonical step lines follow the
/// final "Answer:"; with an empty trajectory the prompt ends right after it.
pub fn build_prompt(
    instruction: &str,
    tool_descriptions: &str,
    examples: &[PromptExample],
    question: &str,
    trajectory: &Plan,
) -> String {
    let mut prompt = String::new();
    prompt.push_str(instruction);
    prompt.push_str("\n\n");
    prompt.push_str(tool_descriptions);
    prompt.push_str("\n\n");
    for example in examples {
        prompt.push_str("Question: ");
        prompt.push_str(&example.question);
        prompt.push_str("\nAnswer:\n");
        prompt.push_str(example.plan.trim_end());
        prompt.push_str("\n\n");
    }
    prompt.push_str("Question: ");
    prompt.push_str(question);
    prompt.push_str("\nAnswer:\n");
    for step in &trajectory.steps {
        prompt.push_str(&render_step(step));
        prompt.push('\n');
    }
    prompt
}

/// Example-library file: JSONL, one {"question", "plan"} per line.
pub fn load_example_library(path: impl AsRef<Path>) -> std::io::Result<Vec<PromptExample>> {
    let text = std::fs::read_to_string(path)?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            serde_json::from_str(line)
                .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan_dsl::parse_plan;

    fn library(n: usize) -> Vec<PromptExample> {
        (0..n)
            .map(|i| PromptExample {
                question: format!("question {i}"),
                plan: format!("Step 1:ans = count_object(all_obj) # {i}"),
            })
            .collect()
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let lib = library(20);
        let a = sample_examples(&lib, 4, 11).unwrap();
        let b = sample_examples(&lib, 4, 11).unwrap();
        assert_eq!(a, b);
        let c = sample_examples(&lib, 4, 12).unwrap();
        assert_eq!(a.len(), 4);
        let distinct: std::collections::BTreeSet<&str> =
            a.iter().map(|e| e.question.as_str()).collect();
        assert_eq!(distinct.len(), 4);
        // Different seeds may (and here do) differ.
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_requires_enough_examples() {
        let lib = library(3);
        assert!(matches!(
            sample_examples(&lib, 4, 0),
            Err(GenerationError::InsufficientExamples {
                available: 3,
                requested: 4
            })
        ));
    }

    #[test]
    fn empty_trajectory_prompt_ends_with_answer_header() {
        let prompt = build_prompt(
            "Do it.",
            "tool(): does things.",
            &[],
            "how many?",
            &Plan::default(),
        );
        assert!(prompt.ends_with("Answer:\n"));
        assert!(prompt.starts_with("Do it.\n\ntool(): does things.\n\nQuestion: how many?\n"));
    }

    #[test]
    fn trajectory_steps_follow_answer_header() {
        let trajectory = parse_plan(
            "Step 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"cyan\",\"leg\"],obj1)",
        )
        .unwrap();
        let prompt = build_prompt("X.", "t(): y.", &[], "q?", &trajectory);
        assert!(prompt.ends_with(
            "Answer:\nStep 1:obj1 = filter_object(\"table\",all_obj)\nStep 2:obj2 = filter_part([\"cyan\",\"leg\"],obj1)\n"
        ));
    }
}
