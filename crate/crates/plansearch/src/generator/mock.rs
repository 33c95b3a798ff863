//! Seeded mock generator: emits gold-plan continuations with configurable
//! reliability, and evaluator-rejectable corruptions otherwise.
//!
//! Corruptions are drawn uniformly from the configured kinds; each kind is
//! guaranteed to fail evaluation (unknown tool name, out-of-vocabulary
//! literal, or an undefined variable), so an accepted prefix is always a gold
//! prefix and search statistics stay interpretable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::plan_dsl::{render_step, Arg, ListItem, Plan, PlanStep};

use super::{derive_seed, GenMode, GenRequest, GenerationError, Generator};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorruptionKind {
    WrongFunction,
    WrongLiteral,
    UndefinedVariable,
}

pub const ALL_CORRUPTIONS: [CorruptionKind; 3] = [
    CorruptionKind::WrongFunction,
    CorruptionKind::WrongLiteral,
    CorruptionKind::UndefinedVariable,
];

#[derive(Debug, Clone)]
pub struct MockConfig {
    pub gold_plan: Plan,
    /// Probability that a NextStep generation is the correct next gold step.
    pub p_step: f64,
    /// Probability that a Remaining/Block generation is fully correct.
    pub p_full: f64,
    pub corruption_kinds: Vec<CorruptionKind>,
    pub seed: u64,
}

impl MockConfig {
    pub fn perfect(gold_plan: Plan, seed: u64) -> Self {
        MockConfig {
            gold_plan,
            p_step: 1.0,
            p_full: 1.0,
            corruption_kinds: ALL_CORRUPTIONS.to_vec(),
            seed,
        }
    }

    pub fn noisy(gold_plan: Plan, p_step: f64, p_full: f64, seed: u64) -> Self {
        assert!((0.0..=1.0).contains(&p_step) && (0.0..=1.0).contains(&p_full));
        MockConfig {
            gold_plan,
            p_step,
            p_full,
            corruption_kinds: ALL_CORRUPTIONS.to_vec(),
            seed,
        }
    }
}

pub struct MockGenerator {
    config: MockConfig,
}

impl MockGenerator {
    pub fn new(config: MockConfig) -> Self {
        MockGenerator { config }
    }
}

/// Appending "s" never produces another tool name.
fn corrupt_function(step: &mut PlanStep) {
    step.call.function.push('s');
}

/// Swap the first string literal for a token no scene vocabulary contains.
/// Returns false when the step has no string literal to corrupt.
fn corrupt_literal(step: &mut PlanStep) -> bool {
    for arg in &mut step.call.args {
        match arg {
            Arg::Str(s) => {
                *s = "zzz_void".to_string();
                return true;
            }
            Arg::List(items) => {
                for item in items {
                    if let ListItem::Str(s) = item {
                        *s = "zzz_void".to_string();
                        return true;
                    }
                }
            }
            _ => {}
        }
    }
    false
}

/// Swap the first variable reference for one that is never bound.
/// Returns false when the step references no variable.
fn corrupt_variable(step: &mut PlanStep) -> bool {
    for arg in &mut step.call.args {
        match arg {
            Arg::Var(v) => {
                *v = "missing_var_9".to_string();
                return true;
            }
            Arg::List(items) => {
                for item in items {
                    if let ListItem::Var(v) = item {
                        *v = "missing_var_9".to_string();
                        return true;
                    }
                }
            }
            _ => {}
        }
    }
    false
}

fn corrupt_step(step: &mut PlanStep, kind: CorruptionKind) {
    match kind {
        CorruptionKind::WrongFunction => corrupt_function(step),
        CorruptionKind::WrongLiteral => {
            if !corrupt_literal(step) && !corrupt_variable(step) {
                corrupt_function(step);
            }
        }
        CorruptionKind::UndefinedVariable => {
            if !corrupt_variable(step) {
                corrupt_function(step);
            }
        }
    }
}

impl Generator for MockGenerator {
    fn generate(&mut self, request: &GenRequest) -> Result<String, GenerationError> {
        let mut rng =
            ChaCha8Rng::seed_from_u64(derive_seed(&[self.config.seed, request.seed_context]));
        let gold = &self.config.gold_plan.steps;
        let next = request.trajectory.len().min(gold.len());
        let (mut steps, p_correct): (Vec<PlanStep>, f64) = match request.mode {
            GenMode::NextStep => (
                gold.get(next).cloned().into_iter().collect(),
                self.config.p_step,
            ),
            GenMode::Remaining => (gold[next..].to_vec(), self.config.p_full),
            GenMode::Block(k) => {
                let end = (next + k.max(1)).min(gold.len());
                (gold[next..end].to_vec(), self.config.p_full)
            }
        };
        if steps.is_empty() {
            return Ok(String::new());
        }
        if rng.gen::<f64>() >= p_correct {
            let position = rng.gen_range(0..steps.len());
            let kind =
                self.config.corruption_kinds[rng.gen_range(0..self.config.corruption_kinds.len())];
            corrupt_step(&mut steps[position], kind);
        }
        Ok(steps.iter().map(render_step).collect::<Vec<_>>().join("\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::fixtures::{ptr_reference_scene, PTR_REFERENCE_PLAN};
    use crate::evaluator::evaluate_candidate;
    use crate::plan_dsl::{extract_steps_from_response, parse_plan, render_plan};

    fn gold() -> Plan {
        parse_plan(PTR_REFERENCE_PLAN).unwrap()
    }

    fn request(trajectory: Plan, mode: GenMode, seed_context: u64) -> GenRequest {
        GenRequest {
            question: "q".into(),
            trajectory,
            mode,
            examples: 4,
            seed_context,
        }
    }

    #[test]
    fn perfect_next_step_is_gold_verbatim() {
        let gold = gold();
        let mut generator = MockGenerator::new(MockConfig::perfect(gold.clone(), 1));
        let prefix = Plan::new(gold.steps[..2].to_vec());
        let text = generator
            .generate(&request(prefix, GenMode::NextStep, 3))
            .unwrap();
        assert_eq!(text, render_step(&gold.steps[2]));
    }

    #[test]
    fn perfect_remaining_completes_the_plan() {
        let gold = gold();
        let mut generator = MockGenerator::new(MockConfig::perfect(gold.clone(), 1));
        let prefix = Plan::new(gold.steps[..2].to_vec());
        let text = generator
            .generate(&request(prefix.clone(), GenMode::Remaining, 9))
            .unwrap();
        let steps = extract_steps_from_response(&text);
        assert_eq!(steps.len(), gold.len() - 2);
        assert_eq!(
            render_plan(&prefix.extended_with(&steps)),
            render_plan(&gold)
        );
        assert!(steps.steps.iter().any(|s| s.target == "ans"));
    }

    #[test]
    fn block_truncates_at_plan_end() {
        let gold = gold();
        let mut generator = MockGenerator::new(MockConfig::perfect(gold.clone(), 1));
        let prefix = Plan::new(gold.steps[..6].to_vec());
        let text = generator
            .generate(&request(prefix, GenMode::Block(3), 2))
            .unwrap();
        let steps = extract_steps_from_response(&text);
        assert_eq!(steps.len(), 1);
        assert_eq!(steps.steps[0].target, "ans");
    }

    #[test]
    fn corruptions_are_rejected_by_the_evaluator() {
        let gold = gold();
        let scene = ptr_reference_scene();
        let mut generator = MockGenerator::new(MockConfig::noisy(gold.clone(), 0.0, 0.0, 42));
        for seed_context in 0..40u64 {
            let at = (seed_context as usize) % gold.len();
            let prefix = Plan::new(gold.steps[..at].to_vec());
            let text = generator
                .generate(&request(prefix.clone(), GenMode::NextStep, seed_context))
                .unwrap();
            let steps = extract_steps_from_response(&text);
            assert_eq!(steps.len(), 1, "corrupted step still matches the grammar");
            let verdict = evaluate_candidate(&prefix.extended_with(&steps), &scene);
            assert!(!verdict.pass, "seed {seed_context}: {text}");
        }
    }

    #[test]
    fn identical_requests_reproduce_identical_text() {
        let gold = gold();
        let mut a = MockGenerator::new(MockConfig::noisy(gold.clone(), 0.4, 0.4, 7));
        let mut b = MockGenerator::new(MockConfig::noisy(gold.clone(), 0.4, 0.4, 7));
        for seed_context in 0..10 {
            let req = request(Plan::default(), GenMode::Remaining, seed_context);
            assert_eq!(a.generate(&req).unwrap(), b.generate(&req).unwrap());
        }
    }

    #[test]
    fn exhausted_gold_yields_empty_text() {
        let gold = gold();
        let mut generator = MockGenerator::new(MockConfig::perfect(gold.clone(), 1));
        let text = generator
            .generate(&request(gold, GenMode::NextStep, 0))
            .unwrap();
        assert!(text.is_empty());
    }
}
