//! Configuration files, the fixture expression language, table emission
//! and the job driver behind the `twistlab` binary.

pub mod bundled;
pub mod config;
pub mod emit;
pub mod expr;
pub mod fixture;
pub mod job;

pub use config::{parse_sigma, parse_weights, CheckSpec, EmitFormat, Expect, JobConfig};
pub use emit::{emit_latex, emit_structured, TableEntry};
pub use expr::{emit as emit_expression, parse as parse_expression_syntax, parse_expression, Expr};
pub use fixture::{compare_fixture, DualFixture, FixtureReport, FixtureTable};
pub use job::{exit_code, run_config, run_job, run_text, CheckOutcome, Job, JobReport, RunOptions};
