use thiserror::Error;

use super::SyntaxError;
use crate::error::GroupError;
use crate::group::{FiniteGroup, Permutation, DEFAULT_ORDER_CAP};

/// A parsed group fixture file.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub meta: Vec<(String, String)>,
    pub group: FiniteGroup,
}

impl Fixture {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    #[error("invalid group: {0}")]
    Validation(#[from] GroupError),
}

enum Block {
    Cayley { rows: Vec<Vec<usize>> },
    Generators { gens: Vec<Vec<Vec<usize>>> },
}

const KEYS: [&str; 4] = ["name", "meta", "cayley", "generators"];

fn header(line: &str) -> Option<(&str, &str)> {
    let (key, rest) = line.split_once(':')?;
    let key = key.trim();
    KEYS.contains(&key).then_some((key, rest.trim()))
}

fn col_of(line: &str, sub: &str) -> usize {
    sub.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn parse_row(lineno: usize, line: &str) -> Result<Vec<usize>, SyntaxError> {
    let mut row = Vec::new();
    let mut rest = line;
    loop {
        let trimmed = rest.trim_start();
        if trimmed.is_empty() {
            return Ok(row);
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let token = &trimmed[..end];
        let value = token
            .parse::<usize>()
            .map_err(|_| SyntaxError::new(lineno, col_of(line, token), "element index"))?;
        row.push(value);
        rest = &trimmed[end..];
    }
}

/// Disjoint cycles such as `(1 2)(3 4 5)`; `()` is the identity.
fn parse_cycles(lineno: usize, line: &str, text: &str) -> Result<Vec<Vec<usize>>, SyntaxError> {
    let bytes = text.as_bytes();
    let base = col_of(line, text);
    let mut cycles = Vec::new();
    let mut i = 0;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(SyntaxError::new(lineno, base + i, "'('"));
        }
        let open = i;
        i += 1;
        let mut cycle = Vec::new();
        loop {
            while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b',') {
                i += 1;
            }
            if i == bytes.len() {
                return Err(SyntaxError::new(lineno, base + open, "')' closing this cycle"));
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let point = text[start..i]
                .parse::<usize>()
                .ok()
                .filter(|&p| p >= 1)
                .ok_or_else(|| SyntaxError::new(lineno, base + start, "point number (1-based)"))?;
            cycle.push(point);
        }
        cycles.push(cycle);
    }
    if cycles.is_empty() {
        return Err(SyntaxError::new(lineno, base, "cycle"));
    }
    Ok(cycles)
}

/// Parse a fixture: an optional `name:` line, any number of
/// `meta: key = value` lines, and exactly one `cayley:` or `generators:`
/// block. Blank lines and `#` comments are ignored.
pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    parse_fixture_capped(text, DEFAULT_ORDER_CAP)
}

pub fn parse_fixture_capped(text: &str, cap: usize) -> Result<Fixture, FixtureError> {
    let mut name: Option<String> = None;
    let mut meta = Vec::new();
    let mut block: Option<Block> = None;
    let mut in_block = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.split('#').next().unwrap();
        if line.trim().is_empty() {
            continue;
        }
        if let Some((key, value)) = header(line) {
            in_block = false;
            match key {
                "name" => name = Some(value.to_string()),
                "meta" => {
                    let (k, v) = value.split_once('=').ok_or_else(|| {
                        SyntaxError::new(lineno, col_of(line, value), "`key = value`")
                    })?;
                    meta.push((k.trim().to_string(), v.trim().to_string()));
                }
                _ => {
                    if block.is_some() {
                        return Err(SyntaxError::new(lineno, col_of(line, line.trim_start()), "a single construction block").into());
                    }
                    if !value.is_empty() {
                        return Err(SyntaxError::new(lineno, col_of(line, value), "end of line").into());
                    }
                    block = Some(if key == "cayley" {
                        Block::Cayley { rows: Vec::new() }
                    } else {
                        Block::Generators { gens: Vec::new() }
                    });
                    in_block = true;
                }
            }
            continue;
        }
        match (&mut block, in_block) {
            (Some(Block::Cayley { rows }), true) => rows.push(parse_row(lineno, line)?),
            (Some(Block::Generators { gens }), true) => {
                let (label, cycles) = line.split_once(':').ok_or_else(|| {
                    SyntaxError::new(lineno, col_of(line, line.trim_start()), "`label: cycles`")
                })?;
                if label.trim().is_empty() {
                    return Err(SyntaxError::new(lineno, col_of(line, line.trim_start()), "generator label").into());
                }
                gens.push(parse_cycles(lineno, line, cycles)?);
            }
            _ => {
                return Err(SyntaxError::new(
                    lineno,
                    col_of(line, line.trim_start()),
                    "`name:`, `meta:`, `cayley:` or `generators:`",
                )
                .into())
            }
        }
    }
    let name = name.unwrap_or_else(|| "G".to_string());
    let group = match block {
        None => {
            return Err(SyntaxError::new(last_line + 1, 1, "a `cayley:` or `generators:` block").into());
        }
        Some(Block::Cayley { rows }) => {
            if rows.len() > cap {
                return Err(GroupError::OrderCapExceeded { cap }.into());
            }
            FiniteGroup::from_cayley(&rows, name.clone())?
        }
        Some(Block::Generators { gens }) => {
            let degree = gens.iter().flatten().flatten().copied().max().unwrap_or(1);
            let perms = gens
                .iter()
                .map(|cycles| Permutation::from_cycles(cycles, degree))
                .collect::<Result<Vec<_>, _>>()?;
            FiniteGroup::from_permutations(&perms, name.clone(), cap)?
        }
    };
    Ok(Fixture { name, meta, group })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::conjugacy_classes;

    #[test]
    fn cayley_fixture() {
        let f = parse_fixture("name: C2\ncayley:\n0 1\n1 0\n").unwrap();
        assert_eq!(f.name, "C2");
        assert_eq!(f.group.order(), 2);
    }

    #[test]
    fn generator_fixture() {
        let f = parse_fixture("generators:\na: (1 2)\nb: (1 2 3)").unwrap();
        assert_eq!(f.group.order(), 6);
        assert_eq!(conjugacy_classes(&f.group).count(), 3);
        let f = parse_fixture("name: V\n# comment\nmeta: source = test\ngenerators:\nx: (1 2)(3 4)\ny: (1 3)(2 4)\n")
            .unwrap();
        assert_eq!(f.group.order(), 4);
        assert_eq!(f.meta("source"), Some("test"));
    }

    #[test]
    fn unclosed_cycle_points_at_open_paren() {
        let err = parse_fixture("name: X\ngenerators:\na: (1 2").unwrap_err();
        let FixtureError::Syntax(e) = err else { panic!() };
        assert_eq!((e.line, e.col), (3, 4));
    }

    #[test]
    fn bad_cayley_token() {
        let err = parse_fixture("cayley:\n0 1\n1 x\n").unwrap_err();
        let FixtureError::Syntax(e) = err else { panic!() };
        assert_eq!((e.line, e.col, e.expected.as_str()), (3, 3, "element index"));
    }

    #[test]
    fn construction_block_count() {
        let err = parse_fixture("name: X\nmeta: a = b\n").unwrap_err();
        let FixtureError::Syntax(e) = err else { panic!() };
        assert_eq!(e.line, 3);
        let err = parse_fixture("cayley:\n0\ngenerators:\na: (1 2)\n").unwrap_err();
        let FixtureError::Syntax(e) = err else { panic!() };
        assert_eq!((e.line, e.col), (3, 1));
    }

    #[test]
    fn validation_errors_pass_through() {
        let err = parse_fixture("cayley:\n0 1\n0 1\n").unwrap_err();
        assert!(matches!(err, FixtureError::Validation(_)));
    }
}
