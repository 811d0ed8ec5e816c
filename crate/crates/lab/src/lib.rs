//! Scenario runner for `awlab-core`: TOML scenarios, a rayon job runner, and
//! CSV / JSON / text artifacts. The `awlab` binary wraps [`cli`].

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use config::{parse_config, ScenarioConfig};
pub use error::LabError;
pub use runner::{run_scenario, Resolved, RunReport};

/// The bundled smoke scenario.
pub const SMOKE_SCENARIO: &str = include_str!("../scenarios/smoke.toml");
/// A scenario whose Lemma A constant is forced too small.
pub const BROKEN_SCENARIO: &str = include_str!("../scenarios/broken.toml");
