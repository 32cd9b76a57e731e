use std::path::{Path, PathBuf};

use khtwist_core::diagram::DiagramError;
use khtwist_core::{braid_closure, EdgeRef, LinkDiagram};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Diagram(#[from] DiagramError),
    #[error("bad braid word {word:?}: {message}")]
    BadBraidWord { word: String, message: String },
    #[error("give a diagram with --pd FILE or --braid WORD --strands K")]
    MissingDiagram,
    #[error("--pd and --braid are mutually exclusive")]
    ConflictingSources,
    #[error("--braid needs --strands")]
    MissingStrands,
}

/// Generators separated by commas and/or whitespace, e.g. `1,-2,1`.
pub fn parse_braid_word(word: &str) -> Result<Vec<i32>, InputError> {
    word.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i32>().map_err(|e| InputError::BadBraidWord { word: word.to_string(), message: format!("{t:?}: {e}") })
        })
        .collect()
}

pub fn read_pd(path: &Path) -> Result<LinkDiagram, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io { path: path.to_path_buf(), source })?;
    Ok(text.parse()?)
}

pub fn load(pd: Option<&Path>, braid: Option<&str>, strands: Option<usize>) -> Result<LinkDiagram, InputError> {
    match (pd, braid) {
        (Some(_), Some(_)) => Err(InputError::ConflictingSources),
        (Some(path), None) => read_pd(path),
        (None, Some(word)) => {
            let strands = strands.ok_or(InputError::MissingStrands)?;
            Ok(braid_closure(&parse_braid_word(word)?, strands)?)
        }
        (None, None) => Err(InputError::MissingDiagram),
    }
}

/// A twist base: its own mark if it has one, otherwise the first two
/// closing strands of a braid closure.
pub fn twist_base(d: LinkDiagram) -> Result<LinkDiagram, InputError> {
    if d.marked_region().is_some() {
        return Ok(d);
    }
    Ok(d.with_mark(EdgeRef::Edge(1), EdgeRef::Edge(2))?)
}
