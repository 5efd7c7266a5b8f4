//! Session files, command dispatch and report emission for syzlab.

pub mod error;
pub mod run;
pub mod session;

pub use error::{CliError, Result};
pub use run::{run_corpus, run_file, run_path, run_session, Fragment, Outcome, RunOptions};
pub use session::{parse_session, parse_session_with, Command, Expr, Session, VerifyArg};
