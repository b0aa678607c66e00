//! Plain-text code files.
//!
//! ```text
//! q=2 n=4
//! # optional comment lines
//! 0101
//! 1000
//! 1110
//! ```
//!
//! Words use the canonical rendering (digits for `q ≤ 10`, comma-separated
//! symbols otherwise), one per line, in lexicographic order when written.
//! For `n = 0` the single empty word is an empty line.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use indel_cover::{Alphabet, Code, Word};

use crate::CliError;

pub fn render(code: &Code) -> String {
    let mut out = format!("q={} n={}\n", code.q(), code.word_len());
    for w in code.iter() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

fn parse_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: &str) -> Option<(u32, usize)> {
    let mut parts = line.split_whitespace();
    let q = parts.next()?.strip_prefix("q=")?.parse().ok()?;
    let n = parts.next()?.strip_prefix("n=")?.parse().ok()?;
    parts.next().is_none().then_some((q, n))
}

pub fn parse(text: &str) -> Result<Code, CliError> {
    if !text.is_empty() && !text.ends_with('\n') {
        let last = text.lines().count();
        return Err(parse_error(last, "missing trailing newline"));
    }
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (q, n) = loop {
        match lines.next() {
            None => return Err(parse_error(1, "missing header `q=<int> n=<int>`")),
            Some((_, l)) if l.starts_with('#') => continue,
            Some((i, l)) => break parse_header(l).ok_or_else(|| parse_error(i, format!("bad header {l:?}")))?,
        }
    };
    let alphabet = Alphabet::new(q).map_err(|e| parse_error(1, e.to_string()))?;
    let mut seen = BTreeSet::new();
    for (i, line) in lines {
        if line.starts_with('#') {
            continue;
        }
        let word = Word::parse(line, alphabet).map_err(|e| parse_error(i, e.to_string()))?;
        if word.len() != n {
            return Err(parse_error(i, format!("word {line:?} has length {}, header says n={n}", word.len())));
        }
        if !seen.insert(word) {
            return Err(parse_error(i, format!("duplicate word {line:?}")));
        }
    }
    Code::from_words(alphabet, n, seen).map_err(CliError::Core)
}

pub fn save(path: &Path, code: &Code) -> Result<(), CliError> {
    fs::write(path, render(code)).map_err(|e| CliError::Io(path.display().to_string(), e))
}

pub fn load(path: &Path) -> Result<Code, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    parse(&text)
}
