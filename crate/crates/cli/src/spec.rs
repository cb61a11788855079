//! Group specifications: catalogue names or explicit generators.
//!
//! ```text
//! spec    := name | "gens:" cycles (sep cycles)*
//! name    := ("S" | "A" | "D") ["_"] int | "Q8" | "Q_8" | cyclic ("x" cyclic)*
//! cyclic  := "Z/" int
//! sep     := ";" | ","            (outside parentheses)
//! ```

use invgal::{catalogue, parse_cycles, Limits, PermGroup, Permutation};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Dihedral(usize),
    Quaternion,
    Abelian(Vec<usize>),
    Generators { cycles: Vec<String>, degree: usize },
}

fn spec_error(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Spec { pos, msg: msg.into() }
}

fn parse_int(text: &str, pos: usize) -> Result<usize, CliError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(spec_error(pos, format!("expected a positive integer, found {text:?}")));
    }
    match text.parse::<usize>() {
        Ok(0) | Err(_) => Err(spec_error(pos, format!("{text:?} is not a positive integer"))),
        Ok(v) => Ok(v),
    }
}

/// Splits at `;` or `,` outside parentheses, keeping byte offsets.
fn split_generators(body: &str, offset: usize) -> Result<Vec<(usize, &str)>, CliError> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => {
                if depth > 0 {
                    return Err(spec_error(offset + i, "nested parenthesis"));
                }
                depth += 1;
            }
            ')' => {
                if depth == 0 {
                    return Err(spec_error(offset + i, "unbalanced ')'"));
                }
                depth -= 1;
            }
            ';' | ',' if depth == 0 => {
                parts.push((offset + start, &body[start..i]));
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(spec_error(offset + body.len(), "unclosed '('"));
    }
    parts.push((offset + start, &body[start..]));
    Ok(parts)
}

fn max_point(cycles: &str, offset: usize) -> Result<usize, CliError> {
    let mut best = 0;
    let mut current = String::new();
    let mut begin = 0;
    for (i, ch) in cycles.char_indices().chain(std::iter::once((cycles.len(), ' '))) {
        if ch.is_ascii_digit() {
            if current.is_empty() {
                begin = i;
            }
            current.push(ch);
        } else if !current.is_empty() {
            best = best.max(parse_int(&current, offset + begin)?);
            current.clear();
        }
    }
    Ok(best)
}

/// Parses a group specification; `degree` applies to `gens:` specs and is inferred when absent.
pub fn parse_group_spec(text: &str, degree: Option<usize>) -> Result<GroupSpec, CliError> {
    let text = text.trim();
    if let Some(body) = text.strip_prefix("gens:") {
        let offset = 5;
        let parts = split_generators(body, offset)?;
        let mut cycles = Vec::new();
        let mut inferred = 1;
        for (pos, part) in parts {
            let part = part.trim();
            if part.is_empty() {
                return Err(spec_error(pos, "empty generator"));
            }
            inferred = inferred.max(max_point(part, pos)?);
            cycles.push(part.to_string());
        }
        let degree = degree.unwrap_or(inferred);
        return Ok(GroupSpec::Generators { cycles, degree });
    }
    if text == "Q8" || text == "Q_8" {
        return Ok(GroupSpec::Quaternion);
    }
    if text.starts_with("Z/") {
        let mut factors = Vec::new();
        let mut pos = 0;
        for piece in text.split('x') {
            let Some(n) = piece.strip_prefix("Z/") else {
                return Err(spec_error(pos, format!("expected Z/<n>, found {piece:?}")));
            };
            factors.push(parse_int(n, pos + 2)?);
            pos += piece.len() + 1;
        }
        return Ok(GroupSpec::Abelian(factors));
    }
    let mut chars = text.chars();
    let kind = chars.next().ok_or_else(|| spec_error(0, "empty group specification"))?;
    let rest = chars.as_str();
    let (digits, at) = match rest.strip_prefix('_') {
        Some(d) => (d, 2),
        None => (rest, 1),
    };
    let make = match kind {
        'S' => GroupSpec::Symmetric,
        'A' => GroupSpec::Alternating,
        'D' => GroupSpec::Dihedral,
        _ => return Err(CliError::UnknownGroup(text.to_string())),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::UnknownGroup(text.to_string()));
    }
    Ok(make(parse_int(digits, at)?))
}

impl GroupSpec {
    pub fn resolve(&self, limits: Limits) -> Result<PermGroup, CliError> {
        let base = match self {
            GroupSpec::Symmetric(n) => catalogue::symmetric(*n)?,
            GroupSpec::Alternating(n) => catalogue::alternating(*n)?,
            GroupSpec::Dihedral(n) => catalogue::dihedral(*n)?,
            GroupSpec::Quaternion => catalogue::quaternion()?,
            GroupSpec::Abelian(factors) => catalogue::abelian(factors)?,
            GroupSpec::Generators { cycles, degree } => {
                let gens = cycles
                    .iter()
                    .map(|c| parse_cycles(c, *degree))
                    .collect::<Result<Vec<Permutation>, _>>()?;
                return Ok(PermGroup::with_limits(&gens, limits)?);
            }
        };
        Ok(PermGroup::with_limits(base.generators(), limits)?)
    }
}
