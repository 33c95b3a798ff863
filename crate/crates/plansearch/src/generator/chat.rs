//! Chat-backed generator: assembles the few-shot prompt for each node visit
//! and sends it through the transport client. Example selection re-randomizes
//! per node (seeded), which diversifies the branches of the tree search.

use std::sync::Arc;

use crate::llm_client::LlmClient;

use super::prompt::{
    build_prompt, sample_examples, PromptExample, DEFAULT_INSTRUCTION, TOOL_DESCRIPTIONS,
};
use super::{derive_seed, GenMode, GenRequest, GenerationError, Generator};

#[derive(Debug, Clone)]
pub struct ChatGeneratorConfig {
    pub instruction: String,
    pub tool_descriptions: String,
    pub library: Vec<PromptExample>,
    pub seed: u64,
}

impl ChatGeneratorConfig {
    pub fn new(library: Vec<PromptExample>, seed: u64) -> Self {
        ChatGeneratorConfig {
            instruction: DEFAULT_INSTRUCTION.to_string(),
            tool_descriptions: TOOL_DESCRIPTIONS.to_string(),
            library,
            seed,
        }
    }
}

pub struct ChatGenerator {
    config: ChatGeneratorConfig,
    client: Arc<LlmClient>,
}

impl ChatGenerator {
    pub fn new(config: ChatGeneratorConfig, client: Arc<LlmClient>) -> Self {
        ChatGenerator { config, client }
    }

    fn instruction_for(&self, mode: GenMode) -> String {
        match mode {
            GenMode::Remaining => self.config.instruction.clone(),
            GenMode::NextStep => {
                format!("{} Generate only the next step.", self.config.instruction)
            }
            GenMode::Block(k) => {
                format!(
                    "{} Generate only the next {k} steps.",
                    self.config.instruction
                )
            }
        }
    }

    /// The exact prompt a request produces; exposed for golden tests and for
    /// pre-seeding replay caches.
    pub fn prompt_for(&self, request: &GenRequest) -> Result<String, GenerationError> {
        let examples = sample_examples(
            &self.config.library,
            request.examples,
            derive_seed(&[self.config.seed, request.seed_context]),
        )?;
        Ok(build_prompt(
            &self.instruction_for(request.mode),
            &self.config.tool_descriptions,
            &examples,
            &request.question,
            &request.trajectory,
        ))
    }

    pub fn client(&self) -> &LlmClient {
        &self.client
    }
}

impl Generator for ChatGenerator {
    fn generate(&mut self, request: &GenRequest) -> Result<String, GenerationError> {
        let prompt = self.prompt_for(request)?;
        Ok(self.client.complete(&prompt)?)
    }

    // keep trait object-safe: nothing else
}

#[allow(dead_code)]
fn assert_object_safe(_: &dyn Generator) {}
