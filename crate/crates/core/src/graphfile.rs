//! Reading weighted dual graphs from files.
//!
//! Two formats, auto-detected. Text (one graph per file):
//!
//! ```text
//! weights: 2 3 2
//! edge: 1 2
//! edge: 2 3
//! curve: 1 0 0
//! ```
//!
//! The `weights:` line comes first; `edge:` lines use 1-based vertex
//! indices; the optional `curve:` line gives one non-negative intersection
//! number per vertex. Blank lines and `#` comments are ignored. The same
//! data is accepted as a JSON object `{"weights": [...], "edges": [[i,j],
//! ...], "curve": [...]}` with 1-based edges.
//!
//! Parsing is permissive about graph *semantics* — disconnected or
//! weight-1 graphs load fine (Δ is still defined for them); callers that
//! need a valid singularity graph run [`DualGraph::validate`].

use std::collections::HashSet;

use serde::Deserialize;

use crate::discrepancy::CurveAttachment;
use crate::dualgraph::DualGraph;
use crate::{Error, Result};

/// A parsed graph file: the graph plus the optional curve attachment.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: DualGraph,
    pub curve: Option<CurveAttachment>,
}

/// Parses either format, deciding by the first non-whitespace character
/// (`{` means JSON).
pub fn parse_str(input: &str) -> Result<GraphFile> {
    match input.trim_start().starts_with('{') {
        true => parse_json(input),
        false => parse_text(input),
    }
}

/// Parses the line-oriented text format. Errors carry 1-based line numbers.
pub fn parse_text(input: &str) -> Result<GraphFile> {
    let fail = |line: usize, msg: String| Error::ParseGraph { line, msg };

    let mut weights: Option<Vec<i64>> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut curve: Option<Vec<i64>> = None;

    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (directive, rest) = line
            .split_once(':')
            .ok_or_else(|| fail(lineno, format!("expected 'directive: values', got '{line}'")))?;
        let numbers: Vec<i64> = rest
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|_| fail(lineno, format!("'{tok}' is not an integer")))
            })
            .collect::<Result<_>>()?;
        match directive.trim() {
            "weights" => {
                if weights.is_some() {
                    return Err(fail(lineno, "duplicate 'weights:' line".into()));
                }
                if numbers.is_empty() {
                    return Err(fail(lineno, "at least one weight is required".into()));
                }
                weights = Some(numbers);
            }
            "edge" => {
                let n = weights
                    .as_ref()
                    .ok_or_else(|| fail(lineno, "'weights:' line must come first".into()))?
                    .len();
                let [a, b] = numbers[..] else {
                    return Err(fail(lineno, "'edge:' takes exactly two vertex indices".into()));
                };
                for v in [a, b] {
                    if v < 1 || v > n as i64 {
                        return Err(fail(
                            lineno,
                            format!("vertex {v} out of range 1..={n}"),
                        ));
                    }
                }
                if a == b {
                    return Err(fail(lineno, format!("self-loop at vertex {a}")));
                }
                let (a, b) = (a as usize, b as usize);
                if !seen_edges.insert((a.min(b), a.max(b))) {
                    return Err(fail(lineno, format!("duplicate edge {a} {b}")));
                }
                edges.push((a, b));
            }
            "curve" => {
                let n = weights
                    .as_ref()
                    .ok_or_else(|| fail(lineno, "'weights:' line must come first".into()))?
                    .len();
                if curve.is_some() {
                    return Err(fail(lineno, "duplicate 'curve:' line".into()));
                }
                if numbers.len() != n {
                    return Err(fail(
                        lineno,
                        format!("curve has {} entries, graph has {n} vertices", numbers.len()),
                    ));
                }
                if let Some(bad) = numbers.iter().find(|&&c| c < 0) {
                    return Err(fail(lineno, format!("negative curve entry {bad}")));
                }
                curve = Some(numbers);
            }
            other => {
                return Err(fail(lineno, format!("unknown directive '{other}'")));
            }
        }
    }

    let weights = weights.ok_or_else(|| fail(1, "missing 'weights:' line".into()))?;
    let graph = DualGraph::from_one_based(weights, &edges)?;
    let curve = curve.map(CurveAttachment::new).transpose()?;
    Ok(GraphFile { graph, curve })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonGraph {
    weights: Vec<i64>,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    curve: Option<Vec<i64>>,
}

/// Parses the JSON object format (1-based edges, like the text format).
pub fn parse_json(input: &str) -> Result<GraphFile> {
    let parsed: JsonGraph = serde_json::from_str(input).map_err(|e| Error::ParseGraph {
        line: e.line(),
        msg: e.to_string(),
    })?;
    let n = parsed.weights.len();
    let graph = DualGraph::from_one_based(parsed.weights, &parsed.edges)?;
    let curve = parsed
        .curve
        .map(|c| {
            if c.len() != n {
                return Err(Error::CurveLengthMismatch {
                    got: c.len(),
                    expected: n,
                });
            }
            CurveAttachment::new(c)
        })
        .transpose()?;
    Ok(GraphFile { graph, curve })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_text_with_curve_and_comments() {
        let input = "# three-vertex chain\nweights: 2 3 2\n\nedge: 1 2\nedge: 2 3\ncurve: 1 0 0\n";
        let file = parse_str(input).unwrap();
        assert_eq!(file.graph.weights(), &[2, 3, 2]);
        assert_eq!(file.graph.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(file.curve.unwrap().entries(), &[1, 0, 0]);
    }

    #[test]
    fn parses_minimal_text() {
        let file = parse_str("weights: 7\n").unwrap();
        assert_eq!(file.graph.n(), 1);
        assert!(file.curve.is_none());
    }

    #[test]
    fn parses_json() {
        let input = r#"{"weights": [3, 2], "edges": [[1, 2]], "curve": [1, 0]}"#;
        let file = parse_str(input).unwrap();
        assert_eq!(file.graph.weights(), &[3, 2]);
        assert_eq!(file.graph.edges(), &[(0, 1)]);
        assert_eq!(file.curve.unwrap().entries(), &[1, 0]);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let cases: &[(&str, usize, &str)] = &[
            ("weights: 2 x\n", 1, "not an integer"),
            ("weights: 2 2\nedge: 1\n", 2, "exactly two"),
            ("weights: 2 2\nedge: 1 3\n", 2, "out of range"),
            ("weights: 2 2\nedge: 1 1\n", 2, "self-loop"),
            ("weights: 2 2\nedge: 1 2\nedge: 2 1\n", 3, "duplicate edge"),
            ("weights: 2 2\ncurve: 1\n", 2, "2 vertices"),
            ("weights: 2 2\ncurve: 1 -1\n", 2, "negative"),
            ("edge: 1 2\n", 1, "must come first"),
            ("weights: 2\nweights: 2\n", 2, "duplicate 'weights:'"),
            ("weights: 2\nvertices: 1\n", 2, "unknown directive"),
            ("hello\n", 1, "expected 'directive"),
            ("", 1, "missing 'weights:'"),
        ];
        for &(input, line, needle) in cases {
            match parse_str(input) {
                Err(Error::ParseGraph { line: l, msg }) => {
                    assert_eq!(l, line, "input {input:?}");
                    assert!(msg.contains(needle), "input {input:?}: got '{msg}'");
                }
                other => panic!("input {input:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn json_errors() {
        assert!(matches!(
            parse_str(r#"{"weights": [2], "edges": [[1, 1]]}"#),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            parse_str(r#"{"weights": [2, 2], "curve": [1]}"#),
            Err(Error::CurveLengthMismatch { .. })
        ));
        assert!(matches!(
            parse_str(r#"{"weights": [2,"#),
            Err(Error::ParseGraph { .. })
        ));
        assert!(matches!(
            parse_str(r#"{"weights": [2], "extra": 1}"#),
            Err(Error::ParseGraph { .. })
        ));
    }

    #[test]
    fn permissive_about_semantics() {
        // Disconnected and weight-1 graphs parse; validation is separate.
        let file = parse_str("weights: 2 2\n").unwrap();
        assert!(!file.graph.validate().connected);
        let file = parse_str("weights: 1 2\nedge: 1 2\n").unwrap();
        assert!(!file.graph.validate().weights_at_least_two);
    }
}
