use std::path::PathBuf;

use thiserror::Error;

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{line}:{col}: unknown name `{name}`")]
    UnknownName { line: usize, col: usize, name: String },

    #[error("{line}:{col}: ideal generator `{generator}` is not homogeneous")]
    NonHomogeneousIdeal { line: usize, col: usize, generator: String },

    #[error("session declares no ring")]
    NoRing,

    #[error("`corpus {0}` inside a corpus session")]
    NestedCorpus(String),

    #[error(transparent)]
    Engine(#[from] syzlab_core::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Session {
        path: PathBuf,
        #[source]
        source: Box<CliError>,
    },
}

pub type Result<T> = std::result::Result<T, CliError>;
