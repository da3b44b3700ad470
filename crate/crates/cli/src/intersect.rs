//! Set intersection queries over a [`SetFamily`].
//!
//! A family file holds one `U <size>` line followed by `S <elements...>`
//! lines, one per set. Elements are `1..=size`; sets are numbered from 1 in
//! file order. Queries are `? i j`, `+ k x` and `- k x`.

use std::io::{BufRead, Write};

use rangemode::{Config, SetFamily};

use crate::error::{CliError, Result};

fn numbers(fields: &[&str], line: usize) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<usize>().map_err(|_| {
                CliError::parse(line, format!("expected a decimal number, found {f:?}"))
            })
        })
        .collect()
}

fn element(x: usize, universe: usize, line: usize) -> Result<usize> {
    if x == 0 || x > universe {
        return Err(CliError::parse(
            line,
            format!("element {x} is outside 1..={universe}"),
        ));
    }
    Ok(x - 1)
}

/// Parses a family file into `(universe, sets)` with 0-based elements.
pub fn parse_family(text: &str) -> Result<(usize, Vec<Vec<usize>>)> {
    let mut universe = None;
    let mut sets = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let fields: Vec<&str> = raw.split_ascii_whitespace().collect();
        match fields.split_first() {
            None => {}
            Some((tag, _)) if tag.starts_with('#') => {}
            Some((&"U", rest)) => {
                if universe.is_some() {
                    return Err(CliError::parse(line, "duplicate `U` line"));
                }
                match numbers(rest, line)?.as_slice() {
                    &[u] => universe = Some(u),
                    _ => return Err(CliError::parse(line, "`U` takes exactly one size")),
                }
            }
            Some((&"S", rest)) => {
                let u = universe.ok_or_else(|| CliError::parse(line, "`S` before `U`"))?;
                let set = numbers(rest, line)?
                    .into_iter()
                    .map(|x| element(x, u, line))
                    .collect::<Result<Vec<_>>>()?;
                sets.push(set);
            }
            Some((tag, _)) => {
                return Err(CliError::parse(
                    line,
                    format!("unknown line {tag:?}; expected U or S"),
                ));
            }
        }
    }
    let universe =
        universe.ok_or_else(|| CliError::parse(text.lines().count().max(1), "missing `U` line"))?;
    Ok((universe, sets))
}

pub fn load_family(text: &str, config: Config) -> Result<SetFamily> {
    let (universe, sets) = parse_family(text)?;
    Ok(SetFamily::build_with(&sets, universe, config)?)
}

/// Answers a query stream. `?` prints the intersection (1-based, ascending)
/// or `-` when it is empty.
pub fn run_intersect<R: BufRead, W: Write>(
    family: &mut SetFamily,
    queries: R,
    mut out: W,
) -> Result<()> {
    let u = family.universe_size();
    for (k, raw) in queries.lines().enumerate() {
        let line = k + 1;
        let raw = raw?;
        let fields: Vec<&str> = raw.split_ascii_whitespace().collect();
        let Some((tag, rest)) = fields.split_first() else {
            continue;
        };
        if tag.starts_with('#') {
            continue;
        }
        let args = numbers(rest, line)?;
        let &[a, b] = args.as_slice() else {
            return Err(CliError::parse(line, format!("`{tag}` takes two numbers")));
        };
        let op = |error| CliError::Op { line, error };
        match *tag {
            "?" => {
                let members = family.enumerate_intersection(a, b).map_err(op)?;
                if members.is_empty() {
                    writeln!(out, "-")?;
                } else {
                    let ids: Vec<String> = members.iter().map(|x| (x + 1).to_string()).collect();
                    writeln!(out, "{}", ids.join(" "))?;
                }
            }
            "+" => family.add_member(a, element(b, u, line)?).map_err(op)?,
            "-" => family.remove_member(a, element(b, u, line)?).map_err(op)?,
            _ => {
                return Err(CliError::parse(
                    line,
                    format!("unknown query {tag:?}; expected ?, + or -"),
                ))
            }
        }
    }
    out.flush()?;
    Ok(())
}

pub fn run_intersect_str(family: &mut SetFamily, queries: &str) -> Result<String> {
    let mut out = Vec::new();
    run_intersect(family, queries.as_bytes(), &mut out)?;
    Ok(String::from_utf8(out).expect("output is ASCII"))
}
