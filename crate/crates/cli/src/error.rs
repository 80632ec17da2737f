use std::path::PathBuf;

use radmds::ErrorClass;

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error(transparent)]
    Core(#[from] radmds::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Manifest {
        path: PathBuf,
        source: serde_json::Error,
    },

    #[error("{0}")]
    Usage(String),
}

impl Failure {
    /// 1 for parse or validation problems, 2 for numeric failures, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(e) => match e.class() {
                ErrorClass::Validation => 1,
                ErrorClass::Numeric => 2,
                ErrorClass::Io => 3,
            },
            Failure::Io { .. } => 3,
            Failure::Manifest { .. } | Failure::Usage(_) => 1,
        }
    }
}
