//! The plan-generator contract used by the search, with a seeded mock for
//! offline runs and a chat-completion implementation for live ones.
//!
//! One `generate` invocation is one reasoning step: the search charges its
//! step budget per call, so implementations must produce exactly one
//! generation per request.

pub mod chat;
pub mod mock;
pub mod prompt;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::plan_dsl::Plan;
use crate::search::SearchMode;

pub use chat::{ChatGenerator, ChatGeneratorConfig};
pub use mock::{CorruptionKind, MockConfig, MockGenerator};
pub use prompt::{build_prompt, load_example_library, sample_examples, PromptExample};

#[derive(Debug, Error)]
pub enum GenerationError {
    #[error("library holds {available} examples, {requested} requested")]
    InsufficientExamples { available: usize, requested: usize },
    #[error("generation transport failed: {0}")]
    Transport(#[from] crate::llm_client::ClientError),
}

/// Demonstrations per prompt unless a request overrides it.
pub const DEFAULT_EXAMPLE_COUNT: usize = 4;

/// What one generation should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// The single next step.
    NextStep,
    /// Every remaining step through the stop sign.
    Remaining,
    /// The next `k` steps (fewer when the plan ends sooner).
    Block(usize),
}

/// One generation request. `seed_context` individualizes the randomness of a
/// node visit so identical (config, request) pairs reproduce identical text.
#[derive(Debug, Clone)]
pub struct GenRequest {
    pub question: String,
    /// Accepted plan prefix (possibly empty).
    pub trajectory: Plan,
    pub mode: GenMode,
    /// Demonstration examples to include in the prompt.
    pub examples: usize,
    pub seed_context: u64,
}

pub trait Generator {
    /// Produce raw text; the caller extracts step lines from it.
    fn generate(&mut self, request: &GenRequest) -> Result<String, GenerationError>;
}

/// Mode selection per node: depth `d` (1-based) and branch index `i`.
pub fn variant_dispatch(mode: &SearchMode, depth: usize, branch: usize) -> GenMode {
    match mode {
        SearchMode::OneStop => GenMode::Remaining,
        SearchMode::ToT => GenMode::NextStep,
        SearchMode::ToTOS { start_depth } => {
            if depth >= *start_depth && branch == 0 {
                GenMode::Remaining
            } else {
                GenMode::NextStep
            }
        }
        SearchMode::ToTBlock { block } => GenMode::Block(*block),
    }
}

/// Stable cross-platform seed mixing.
pub fn derive_seed(parts: &[u64]) -> u64 {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update(part.to_le_bytes());
    }
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("eight bytes"))
}

/// Seed for one (question, repeat) run.
pub fn seed_for_run(base_seed: u64, question_id: &str, repeat: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(base_seed.to_le_bytes());
    hasher.update(question_id.as_bytes());
    hasher.update(repeat.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("eight bytes"))
}

/// Wrapper that counts invocations; the search's step counter must match.
pub struct CountingGenerator<G> {
    inner: G,
    calls: u64,
}

impl<G> CountingGenerator<G> {
    pub fn new(inner: G) -> Self {
        CountingGenerator { inner, calls: 0 }
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }
}

impl<G: Generator> Generator for CountingGenerator<G> {
    fn generate(&mut self, request: &GenRequest) -> Result<String, GenerationError> {
        self.calls += 1;
        self.inner.generate(request)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dispatch_follows_mode_rules() {
        let os = SearchMode::ToTOS { start_depth: 2 };
        assert_eq!(variant_dispatch(&os, 2, 0), GenMode::Remaining);
        assert_eq!(variant_dispatch(&os, 1, 0), GenMode::NextStep);
        assert_eq!(variant_dispatch(&os, 3, 1), GenMode::NextStep);
        assert_eq!(variant_dispatch(&os, 3, 0), GenMode::Remaining);

        let block = SearchMode::ToTBlock { block: 2 };
        assert_eq!(variant_dispatch(&block, 1, 0), GenMode::Block(2));
        assert_eq!(variant_dispatch(&block, 7, 4), GenMode::Block(2));

        assert_eq!(variant_dispatch(&SearchMode::ToT, 5, 2), GenMode::NextStep);
        assert_eq!(
            variant_dispatch(&SearchMode::OneStop, 1, 0),
            GenMode::Remaining
        );
    }

    #[test]
    fn seeds_are_stable() {
        assert_eq!(derive_seed(&[1, 2]), derive_seed(&[1, 2]));
        assert_ne!(derive_seed(&[1, 2]), derive_seed(&[2, 1]));
        assert_eq!(seed_for_run(7, "q-1", 0), seed_for_run(7, "q-1", 0));
        assert_ne!(seed_for_run(7, "q-1", 0), seed_for_run(7, "q-1", 1));
        assert_ne!(seed_for_run(7, "q-1", 0), seed_for_run(7, "q-2", 0));
    }
}
