//! Plain-text automaton files.
//!
//! ```text
//! # comment
//! nfa s=2 states=3
//! start: 0
//! final: 2
//! 0 0 1
//! 1 1 2
//! ```
//!
//! After the header, the `start:`/`final:` lines and the transition lines may
//! appear in any order. Printing is canonical: sorted transitions.

use std::fmt;

use crate::automata::{Dfa, Nfa, StateId, Symbol};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(u32, usize)> {
    let mut fields = line.split_whitespace();
    if fields.next() != Some("nfa") {
        return Err(parse_err(line_no, "expected header `nfa s=<int> states=<int>`"));
    }
    let mut alphabet = None;
    let mut states = None;
    for field in fields {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, format!("malformed header field `{field}`")))?;
        let bad = |_| parse_err(line_no, format!("header field `{key}` is not an integer"));
        match key {
            "s" => alphabet = Some(value.parse::<u32>().map_err(bad)?),
            "states" => states = Some(value.parse::<usize>().map_err(bad)?),
            _ => return Err(parse_err(line_no, format!("unknown header field `{key}`"))),
        }
    }
    match (alphabet, states) {
        (Some(s), Some(n)) => Ok((s, n)),
        (None, _) => Err(parse_err(line_no, "header is missing `s=`")),
        (_, None) => Err(parse_err(line_no, "header is missing `states=`")),
    }
}

fn parse_ids(line_no: usize, rest: &str) -> Result<Vec<StateId>> {
    rest.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| parse_err(line_no, format!("`{tok}` is not a state id")))
        })
        .collect()
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut header = None;
    let mut start: Option<Vec<StateId>> = None;
    let mut finals: Option<Vec<StateId>> = None;
    let mut transitions: Vec<(StateId, Symbol, StateId)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if header.is_none() {
            header = Some(parse_header(line_no, line)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("start:") {
            if start.replace(parse_ids(line_no, rest)?).is_some() {
                return Err(parse_err(line_no, "duplicate `start:` line"));
            }
        } else if let Some(rest) = line.strip_prefix("final:") {
            if finals.replace(parse_ids(line_no, rest)?).is_some() {
                return Err(parse_err(line_no, "duplicate `final:` line"));
            }
        } else {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(parse_err(line_no, "expected `<from> <symbol> <to>`"));
            }
            let num = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|_| parse_err(line_no, format!("`{tok}` is not an integer")))
            };
            let symbol = toks[1]
                .parse::<Symbol>()
                .map_err(|_| parse_err(line_no, format!("`{}` is not a symbol", toks[1])))?;
            transitions.push((num(toks[0])?, symbol, num(toks[2])?));
        }
    }

    let (s, n) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    let start = start.ok_or_else(|| parse_err(0, "missing `start:` line"))?;
    let finals = finals.ok_or_else(|| parse_err(0, "missing `final:` line"))?;
    Nfa::new(s, n, start, finals, transitions)
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    Dfa::try_from(parse_nfa(text)?)
}

pub fn write_nfa(a: &Nfa) -> String {
    a.to_string()
}

impl fmt::Display for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nfa s={} states={}", self.alphabet_size(), self.num_states())?;
        f.write_str("start:")?;
        for q in self.start_states() {
            write!(f, " {q}")?;
        }
        f.write_str("\nfinal:")?;
        for q in self.final_states() {
            write!(f, " {q}")?;
        }
        f.write_str("\n")?;
        for (p, a, q) in self.transitions() {
            writeln!(f, "{p} {a} {q}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_nfa().fmt(f)
    }
}
