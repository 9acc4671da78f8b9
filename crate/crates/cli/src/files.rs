use std::io::Write;
use std::path::Path;

use anyhow::Context;
use holonet_core::format::FormatError;
use holonet_core::NetworkDocument;

use crate::exit::{CmdResult, Failure, OrExit, CONSTRAINT, PARSE};

pub fn read_text(path: &Path) -> CmdResult<String> {
    std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .or_exit(PARSE)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> CmdResult {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let write = || -> anyhow::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(contents.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path)?;
        Ok(())
    };
    write()
        .with_context(|| format!("writing {}", path.display()))
        .or_exit(CONSTRAINT)
}

/// Syntax errors exit 1; files that parse but violate network or group
/// rules exit 2.
pub fn read_network(path: &Path) -> CmdResult<NetworkDocument> {
    let text = read_text(path)?;
    NetworkDocument::parse(&text).map_err(|e| {
        let code = match e {
            FormatError::Syntax { .. } => PARSE,
            _ => CONSTRAINT,
        };
        Failure::new(
            code,
            anyhow::Error::new(e).context(format!("in {}", path.display())),
        )
    })
}
