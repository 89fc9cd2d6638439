//! Plain-text facet files.
//!
//! ```text
//! # optional comments
//! n 5
//! 1 2 3
//! 1 3 4
//! 4 5
//! ```
//!
//! The `n` header is optional; without it `n` is the largest label seen.

use std::fmt::Write as _;

use itertools::Itertools;

use super::{ComplexError, SimplicialComplex};

pub fn parse_facet_file(text: &str) -> Result<SimplicialComplex, ComplexError> {
    let mut n: Option<u32> = None;
    let mut facets: Vec<Vec<u32>> = Vec::new();
    let mut first_content = true;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| ComplexError::Parse { line: lineno + 1, message };
        if let Some(rest) = line.strip_prefix('n') {
            if !first_content {
                return Err(parse_err("`n` header must come before the facets".into()));
            }
            let count = rest
                .trim()
                .parse::<u32>()
                .map_err(|_| parse_err(format!("bad vertex count `{}`", rest.trim())))?;
            n = Some(count);
            first_content = false;
            continue;
        }
        first_content = false;
        let facet = line
            .split_whitespace()
            .map(|tok| match tok.parse::<u32>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(parse_err(format!("`{tok}` is not a positive integer label"))),
            })
            .collect::<Result<Vec<u32>, _>>()?;
        if let Some(bound) = n {
            if let Some(&v) = facet.iter().find(|&&v| v > bound) {
                return Err(parse_err(format!("label {v} exceeds n = {bound}")));
            }
        }
        if facet.iter().duplicates().next().is_some() {
            return Err(parse_err("repeated label in facet".into()));
        }
        facets.push(facet);
    }
    let n = n.unwrap_or_else(|| facets.iter().flatten().copied().max().unwrap_or(0));
    SimplicialComplex::from_facets(n, facets)
}

/// Renders a complex in the format read by [`parse_facet_file`].
pub fn write_facet_file(complex: &SimplicialComplex) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", complex.vertex_count()).unwrap();
    for facet in complex.facets() {
        writeln!(out, "{}", facet.vertices().iter().join(" ")).unwrap();
    }
    out
}
