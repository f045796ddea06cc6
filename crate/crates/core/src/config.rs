use std::env;

use serde::{Deserialize, Serialize};

use crate::partition::DEFAULT_CAP;

/// Environment variable holding the worker count used by the CLI.
pub const WORKERS_ENV: &str = "SPIN_SPRINGER_WORKERS";

/// Which component comes first when the defect `t` is exactly 0.
///
/// For `t > 0` the image is always `(alpha, beta)` and for `t < 0` always
/// `(beta, alpha)`; the two conventions only disagree on the `t = 0` fiber.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    /// `t <= 0` gives `(beta, alpha)`.
    #[default]
    #[serde(rename = "t0-swap")]
    SwapAtZero,
    /// `t >= 0` gives `(alpha, beta)`.
    #[serde(rename = "t0-keep")]
    KeepAtZero,
}

impl Convention {
    pub fn swaps(self, t: i64) -> bool {
        match self {
            Convention::SwapAtZero => t <= 0,
            Convention::KeepAtZero => t < 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::SwapAtZero => "t0-swap",
            Convention::KeepAtZero => "t0-keep",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub cap: u64,
    pub convention: Convention,
    pub workers: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            cap: DEFAULT_CAP,
            convention: Convention::default(),
            workers: 1,
        }
    }
}

impl Settings {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// Defaults, with the worker count taken from [`WORKERS_ENV`] when set.
    pub fn from_env() -> Self {
        let workers = env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .unwrap_or(1);
        Settings::default().with_workers(workers)
    }

    /// Runs `op` on a dedicated pool of `self.workers` threads.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers.max(1)).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
}
