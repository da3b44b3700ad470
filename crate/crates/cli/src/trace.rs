//! Plain-text operation traces.
//!
//! One operation per line: `I <pos> <sym>`, `D <pos>` or `Q <l> <r>`.
//! Numbers are decimal and positions 0-based. Lines starting with `#` and
//! blank lines are skipped.

use std::fmt;
use std::io::{BufRead, Write};

use rangemode::{DynamicModes, Symbol};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceLine {
    Insert(usize, Symbol),
    Delete(usize),
    Query(usize, usize),
}

impl fmt::Display for TraceLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceLine::Insert(i, c) => write!(f, "I {i} {c}"),
            TraceLine::Delete(i) => write!(f, "D {i}"),
            TraceLine::Query(l, r) => write!(f, "Q {l} {r}"),
        }
    }
}

/// Parses one line; `Ok(None)` for comments and blank lines.
pub fn parse_line(text: &str) -> std::result::Result<Option<TraceLine>, String> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('#') {
        return Ok(None);
    }
    let mut fields = text.split_ascii_whitespace();
    let tag = fields.next().unwrap_or_default();
    let args: Vec<&str> = fields.collect();
    let num = |k: usize| -> std::result::Result<u64, String> {
        args[k]
            .parse::<u64>()
            .map_err(|_| format!("expected a decimal number, found {:?}", args[k]))
    };
    let arity = |n: usize| -> std::result::Result<(), String> {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!(
                "`{tag}` takes {n} argument(s), found {}",
                args.len()
            ))
        }
    };
    let op = match tag {
        "I" => {
            arity(2)?;
            TraceLine::Insert(num(0)? as usize, Symbol(num(1)?))
        }
        "D" => {
            arity(1)?;
            TraceLine::Delete(num(0)? as usize)
        }
        "Q" => {
            arity(2)?;
            TraceLine::Query(num(0)? as usize, num(1)? as usize)
        }
        _ => return Err(format!("unknown operation {tag:?}; expected I, D or Q")),
    };
    Ok(Some(op))
}

/// Applies one operation, returning the query answer line if any.
pub fn apply<M: DynamicModes>(model: &mut M, op: TraceLine) -> rangemode::Result<Option<String>> {
    match op {
        TraceLine::Insert(i, c) => model.insert(i, c).map(|_| None),
        TraceLine::Delete(i) => model.delete(i).map(|_| None),
        TraceLine::Query(l, r) => model.modes(l, r).map(|m| Some(m.to_string())),
    }
}

/// Runs a trace against `model`, writing one line per query.
pub fn run_trace<M, R, W>(model: &mut M, input: R, mut out: W) -> Result<()>
where
    M: DynamicModes,
    R: BufRead,
    W: Write,
{
    for (k, text) in input.lines().enumerate() {
        let line = k + 1;
        let text = text?;
        let Some(op) = parse_line(&text).map_err(|m| CliError::parse(line, m))? else {
            continue;
        };
        if let Some(answer) = apply(model, op).map_err(|source| CliError::Op {
            line,
            error: source,
        })? {
            writeln!(out, "{answer}")?;
        }
    }
    out.flush()?;
    Ok(())
}

/// [`run_trace`] over in-memory text.
pub fn run_trace_str<M: DynamicModes>(model: &mut M, input: &str) -> Result<String> {
    let mut out = Vec::new();
    run_trace(model, input.as_bytes(), &mut out)?;
    Ok(String::from_utf8(out).expect("trace output is ASCII"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rangemode::{Engine, NaiveSeq, Strategy};

    #[test]
    fn parse_round_trips() {
        for text in ["I 0 5", "D 12", "Q 3 9"] {
            assert_eq!(parse_line(text).unwrap().unwrap().to_string(), text);
        }
        assert_eq!(parse_line("# note").unwrap(), None);
        assert_eq!(parse_line("   ").unwrap(), None);
        assert!(parse_line("I 0").is_err());
        assert!(parse_line("Q 1 x").is_err());
        assert!(parse_line("X 1").is_err());
        assert!(parse_line("D -1").is_err());
    }

    #[test]
    fn trace_examples() {
        let mut e = Engine::with_strategy(&[], Strategy::Pcn);
        assert_eq!(
            run_trace_str(&mut e, "I 0 5\nI 1 7\nI 2 5\nQ 0 2\n").unwrap(),
            "2 5\n"
        );
        let mut e = Engine::with_strategy(&[], Strategy::SimpleRebuild);
        assert_eq!(run_trace_str(&mut e, "I 0 1\nQ 0 0").unwrap(), "1 1\n");

        let err = run_trace_str(&mut NaiveSeq::new(), "Q 0 0\n").unwrap_err();
        assert!(matches!(err, CliError::Op { line: 1, .. }), "{err}");
        let err = run_trace_str(&mut NaiveSeq::new(), "# c\nI 0 1\nI 9 1\n").unwrap_err();
        assert_eq!(err.line(), Some(3));
        let err = run_trace_str(&mut NaiveSeq::new(), "I 0 1\nbogus\n").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
    }
}
