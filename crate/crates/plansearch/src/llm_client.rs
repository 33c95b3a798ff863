//! Chat-completion transport with retries, a concurrent-request limit, and a
//! digest-keyed record/replay cache for deterministic offline runs.
//!
//! The wire shape is the de-facto chat-completions JSON: a `messages` list in,
//! the first choice's message content out. Requests are keyed by a digest over
//! model, temperature, and the full message content, so replay fixtures stay
//! stable under search-order changes. The credential is read from an
//! environment variable at call time and never stored or logged.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Condvar, Mutex};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport failed: {0}")]
    Transport(String),
    #[error("rate limited after retries")]
    RateLimited,
    #[error("replay cache has no entry for digest {0}")]
    ReplayMiss(String),
    #[error("credential environment variable {0} is not set")]
    MissingCredential(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("malformed response: {0}")]
    MalformedResponse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClientMode {
    Live,
    Record,
    Replay,
}

#[derive(Debug, Clone)]
pub struct ClientConfig {
    pub base_url: String,
    pub model: String,
    /// Name of the environment variable holding the API credential.
    pub credential_env: String,
    pub temperature: f64,
    pub timeout: Duration,
    pub max_retries: u32,
    pub concurrency_limit: usize,
    pub mode: ClientMode,
    /// Replay cache file; required in Record and Replay modes.
    pub cache_path: Option<PathBuf>,
}

impl Default for ClientConfig {
    fn default() -> Self {
        ClientConfig {
            base_url: "https://api.openai.com/v1".to_string(),
            model: String::new(),
            credential_env: "CHAT_API_KEY".to_string(),
            temperature: 1.0,
            timeout: Duration::from_secs(60),
            max_retries: 3,
            concurrency_limit: 4,
            mode: ClientMode::Replay,
            cache_path: None,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    digest: String,
    response: String,
}

/// Append-only digest -> response store backed by a JSONL file.
#[derive(Debug)]
pub struct ReplayCache {
    entries: Mutex<BTreeMap<String, String>>,
    file: Option<Mutex<std::fs::File>>,
}

impl ReplayCache {
    /// In-memory cache, useful for tests and for building fixtures.
    pub fn in_memory() -> Self {
        ReplayCache {
            entries: Mutex::new(BTreeMap::new()),
            file: None,
        }
    }

    /// Load (or create) the backing file; existing entries are indexed.
    pub fn open(path: &PathBuf, writable: bool) -> Result<Self, ClientError> {
        let mut entries = BTreeMap::new();
        match std::fs::read_to_string(path) {
            Ok(text) => {
                for line in text.lines().filter(|l| !l.trim().is_empty()) {
                    let entry: CacheEntry = serde_json::from_str(line)
                        .map_err(|e| ClientError::Cache(format!("bad cache line: {e}")))?;
                    entries.insert(entry.digest, entry.response);
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound && writable => {}
            Err(e) => return Err(ClientError::Cache(e.to_string())),
        }
        let file = if writable {
            let file = std::fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|e| ClientError::Cache(e.to_string()))?;
            Some(Mutex::new(file))
        } else {
            None
        };
        Ok(ReplayCache {
            entries: Mutex::new(entries),
            file,
        })
    }

    pub fn get(&self, digest: &str) -> Option<String> {
        self.entries
            .lock()
            .expect("cache lock")
            .get(digest)
            .cloned()
    }

    pub fn insert(&self, digest: String, response: String) -> Result<(), ClientError> {
        let mut entries = self.entries.lock().expect("cache lock");
        if entries.contains_key(&digest) {
            return Ok(());
        }
        if let Some(file) = &self.file {
            let line = serde_json::to_string(&CacheEntry {
                digest: digest.clone(),
                response: response.clone(),
            })
            .expect("cache entry serializes");
            let mut file = file.lock().expect("cache file lock");
            writeln!(file, "{line}").map_err(|e| ClientError::Cache(e.to_string()))?;
        }
        entries.insert(digest, response);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

struct Semaphore {
    permits: Mutex<usize>,
    available: Condvar,
}

impl Semaphore {
    fn new(permits: usize) -> Self {
        Semaphore {
            permits: Mutex::new(permits.max(1)),
            available: Condvar::new(),
        }
    }

    fn acquire(&self) -> SemaphoreGuard<'_> {
        let mut permits = self.permits.lock().expect("semaphore lock");
        while *permits == 0 {
            permits = self.available.wait(permits).expect("semaphore wait");
        }
        *permits -= 1;
        SemaphoreGuard { semaphore: self }
    }
}

struct SemaphoreGuard<'s> {
    semaphore: &'s Semaphore,
}

impl Drop for SemaphoreGuard<'_> {
    fn drop(&mut self) {
        let mut permits = self.semaphore.permits.lock().expect("semaphore lock");
        *permits += 1;
        self.semaphore.available.notify_one();
    }
}

pub struct LlmClient {
    config: ClientConfig,
    cache: Option<ReplayCache>,
    semaphore: Semaphore,
    agent: ureq::Agent,
}

impl LlmClient {
    pub fn new(config: ClientConfig) -> Result<Self, ClientError> {
        let cache = match config.mode {
            ClientMode::Live => None,
            ClientMode::Record | ClientMode::Replay => {
                let path = config.cache_path.as_ref().ok_or_else(|| {
                    ClientError::Cache("record/replay mode needs a cache path".to_string())
                })?;
                Some(ReplayCache::open(path, config.mode == ClientMode::Record)?)
            }
        };
        let agent_config = ureq::Agent::config_builder()
            .timeout_global(Some(config.timeout))
            .build();
        let semaphore = Semaphore::new(config.concurrency_limit);
        Ok(LlmClient {
            config,
            cache,
            semaphore,
            agent: agent_config.new_agent(),
        })
    }

    /// Client around an existing cache; replay-only, no file backing needed.
    pub fn replaying(config: ClientConfig, cache: ReplayCache) -> Self {
        let agent_config = ureq::Agent::config_builder()
            .timeout_global(Some(config.timeout))
            .build();
        let semaphore = Semaphore::new(config.concurrency_limit);
        LlmClient {
            config: ClientConfig {
                mode: ClientMode::Replay,
                ..config
            },
            cache: Some(cache),
            semaphore,
            agent: agent_config.new_agent(),
        }
    }

    pub fn mode(&self) -> ClientMode {
        self.config.mode
    }

    fn request_body(&self, prompt: &str) -> serde_json::Value {
        serde_json::json!({
            "messages": [{"content": prompt, "role": "user"}],
            "model": self.config.model,
            "temperature": self.config.temperature,
        })
    }

    /// Content-addressing key: sha256 over model, temperature, and messages.
    pub fn request_digest(&self, prompt: &str) -> String {
        let body = self.request_body(prompt);
        let mut hasher = Sha256::new();
        hasher.update(body.to_string().as_bytes());
        hex::encode(hasher.finalize())
    }

    pub fn complete(&self, prompt: &str) -> Result<String, ClientError> {
        match self.config.mode {
            ClientMode::Replay => {
                let digest = self.request_digest(prompt);
                self.cache
                    .as_ref()
                    .expect("replay mode has a cache")
                    .get(&digest)
                    .ok_or(ClientError::ReplayMiss(digest))
            }
            ClientMode::Record => {
                let digest = self.request_digest(prompt);
                let cache = self.cache.as_ref().expect("record mode has a cache");
                if let Some(hit) = cache.get(&digest) {
                    return Ok(hit);
                }
                let response = self.live_call(prompt)?;
                cache.insert(digest, response.clone())?;
                Ok(response)
            }
            ClientMode::Live => self.live_call(prompt),
        }
    }

    fn live_call(&self, prompt: &str) -> Result<String, ClientError> {
        let key = std::env::var(&self.config.credential_env)
            .map_err(|_| ClientError::MissingCredential(self.config.credential_env.clone()))?;
        let url = format!(
            "{}/chat/completions",
            self.config.base_url.trim_end_matches('/')
        );
        let body = self.request_body(prompt);
        let _permit = self.semaphore.acquire();
        let mut last_error = ClientError::Transport("no attempt made".to_string());
        for attempt in 0..=self.config.max_retries {
            if attempt > 0 {
                let backoff = Duration::from_millis(100u64 << (attempt - 1).min(5));
                std::thread::sleep(backoff);
            }
            match self
                .agent
                .post(&url)
                .header("Authorization", &format!("Bearer {key}"))
                .send_json(&body)
            {
                Ok(mut response) => {
                    let json: serde_json::Value = response
                        .body_mut()
                        .read_json()
                        .map_err(|e| ClientError::MalformedResponse(e.to_string()))?;
                    return json["choices"][0]["message"]["content"]
                        .as_str()
                        .map(str::to_string)
                        .ok_or_else(|| {
                            ClientError::MalformedResponse(
                                "response lacks choices[0].message.content".to_string(),
                            )
                        });
                }
                Err(ureq::Error::StatusCode(429)) => last_error = ClientError::RateLimited,
                Err(ureq::Error::StatusCode(code)) if code == 408 || code >= 500 => {
                    last_error = ClientError::Transport(format!("status {code}"));
                }
                Err(ureq::Error::StatusCode(code)) => {
                    return Err(ClientError::Transport(format!("status {code}")));
                }
                Err(e) => last_error = ClientError::Transport(e.to_string()),
            }
        }
        Err(last_error)
    }
}
