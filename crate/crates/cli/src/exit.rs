use std::fmt;

pub const PARSE: u8 = 1;
pub const CONSTRAINT: u8 = 2;
pub const COARSE: u8 = 3;
pub const VERIFY: u8 = 4;

/// An error tagged with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code,
            error: error.into(),
        }
    }

    pub fn msg(code: u8, msg: impl fmt::Display) -> Self {
        Failure {
            code,
            error: anyhow::anyhow!("{msg}"),
        }
    }
}

pub type CmdResult<T = ()> = Result<T, Failure>;

pub trait OrExit<T> {
    fn or_exit(self, code: u8) -> CmdResult<T>;
}

impl<T, E: Into<anyhow::Error>> OrExit<T> for Result<T, E> {
    fn or_exit(self, code: u8) -> CmdResult<T> {
        self.map_err(|e| Failure::new(code, e))
    }
}
