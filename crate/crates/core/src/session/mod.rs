//! Session files: a line-oriented script of declarations and commands,
//! executed into a report that can be emitted as text or JSON.

mod emit;
mod parse;
mod run;

pub use emit::{emit, Format};
pub use parse::{parse_session, Command, Flags, Functor, ModuleSource, ParseError, Session, Statement};
pub use run::{module_json, run_session, CommandResult, Options, Report, Status};

/// Environment variable holding the default `kmax`.
pub const KMAX_ENV: &str = "WORKBENCH_KMAX";

/// Report schema version.
pub const SCHEMA_VERSION: u32 = 1;
