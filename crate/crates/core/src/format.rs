//! Plain-text formats.
//!
//! Matroid files start with `n <int>`, optionally followed by `rank <int>`; every
//! further non-empty line not starting with `#` is one copoint. A copoint is
//! written as whitespace- or comma-separated integers, or, when `n <= 9`, as a
//! compact digit string (`2345678`). Braces are ignored, so `{}` is the empty set.
//!
//! Incidence-graph files start with `points <int>` and list one line per row,
//! in the same set syntax.
//!
//! Canonical output always uses space-separated ascending integers, one set per
//! line, sets in lexicographic order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::set::{ElementSet, SetFamily, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedMatroid {
    pub n: usize,
    pub declared_rank: Option<usize>,
    pub copoints: SetFamily,
    /// Non-fatal notes, e.g. duplicate copoint lines that were dropped.
    pub warnings: Vec<String>,
}

impl ParsedMatroid {
    /// Validates and builds the matroid, cross-checking a declared rank.
    pub fn build(&self) -> Result<Matroid> {
        let m = Matroid::from_copoints(self.n, &self.copoints)?;
        match self.declared_rank {
            Some(expected) if expected != m.rank() => Err(Error::RankMismatch {
                expected,
                found: m.rank(),
            }),
            _ => Ok(m),
        }
    }
}

/// Meaningful lines as `(1-based line number, trimmed text)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header(line: usize, text: &str, key: &str) -> Result<Option<usize>> {
    let mut parts = text.split_whitespace();
    if parts.next() != Some(key) {
        return Ok(None);
    }
    let value = parts
        .next()
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("expected `{key} <int>`"),
        })?;
    if parts.next().is_some() {
        return Err(Error::Parse {
            line,
            message: format!("trailing text after `{key} <int>`"),
        });
    }
    Ok(Some(value))
}

fn check_ground(line: usize, n: usize) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::Parse {
            line,
            message: format!("ground set size {n} outside 1..={MAX_GROUND}"),
        });
    }
    Ok(())
}

/// Parses one set written in either accepted syntax.
pub fn parse_set(text: &str, n: usize, line: usize) -> Result<ElementSet> {
    let cleaned: String = text.chars().filter(|&c| c != '{' && c != '}').collect();
    let tokens: Vec<&str> = cleaned
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();

    if let [token] = tokens.as_slice() {
        if token.len() > 1 && token.chars().all(|c| c.is_ascii_digit()) {
            if n <= 9 {
                return token
                    .chars()
                    .map(|c| c.to_digit(10).unwrap() as usize)
                    .try_fold(ElementSet::EMPTY, |acc, e| {
                        if (1..=n).contains(&e) {
                            Ok(acc.with(e))
                        } else {
                            Err(Error::ElementOutOfRange {
                                line,
                                element: e,
                                n,
                            })
                        }
                    });
            }
            let fits = token.parse::<usize>().is_ok_and(|v| v <= n);
            if !fits {
                return Err(Error::CompactTokenWithLargeN {
                    line,
                    token: token.to_string(),
                    n,
                });
            }
        }
    }

    tokens.iter().try_fold(ElementSet::EMPTY, |acc, t| {
        let e: usize = t.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{t}` is not an element"),
        })?;
        if (1..=n).contains(&e) {
            Ok(acc.with(e))
        } else {
            Err(Error::ElementOutOfRange {
                line,
                element: e,
                n,
            })
        }
    })
}

fn push_set(fam: &mut SetFamily, warnings: &mut Vec<String>, set: ElementSet, line: usize) {
    if !fam.insert(set) {
        warnings.push(format!("line {line}: duplicate set {set:?} ignored"));
    }
}

pub fn parse_matroid_text(text: &str) -> Result<ParsedMatroid> {
    let mut lines = content_lines(text).peekable();
    let (first_line, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input, expected `n <int>`".into(),
    })?;
    let n = parse_header(first_line, first, "n")?.ok_or_else(|| Error::Parse {
        line: first_line,
        message: "first line must be `n <int>`".into(),
    })?;
    check_ground(first_line, n)?;

    let mut declared_rank = None;
    if let Some(&(line, text)) = lines.peek() {
        if let Some(r) = parse_header(line, text, "rank")? {
            declared_rank = Some(r);
            lines.next();
        }
    }

    let mut copoints = SetFamily::new();
    let mut warnings = Vec::new();
    for (line, text) in lines {
        let set = parse_set(text, n, line)?;
        push_set(&mut copoints, &mut warnings, set, line);
    }
    Ok(ParsedMatroid {
        n,
        declared_rank,
        copoints,
        warnings,
    })
}

/// A bare list of sets over `S_n`, one per line (used for added clutters).
pub fn parse_set_list(text: &str, n: usize) -> Result<(SetFamily, Vec<String>)> {
    let mut fam = SetFamily::new();
    let mut warnings = Vec::new();
    for (line, text) in content_lines(text) {
        if parse_header(line, text, "n")?.is_some() {
            continue;
        }
        let set = parse_set(text, n, line)?;
        push_set(&mut fam, &mut warnings, set, line);
    }
    Ok((fam, warnings))
}

/// Sets separated by `;` (or by `,` when no `;` is present), e.g. `24,258,27`
/// or `2 4; 2 5 8`.
pub fn parse_inline_sets(text: &str, n: usize) -> Result<Vec<ElementSet>> {
    let sep = if text.contains(';') { ';' } else { ',' };
    text.split(sep)
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_set(t, n, 1))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedGraph {
    pub points: usize,
    pub lines: SetFamily,
    pub warnings: Vec<String>,
}

pub fn parse_graph_text(text: &str) -> Result<ParsedGraph> {
    let mut lines = content_lines(text);
    let (first_line, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input, expected `points <int>`".into(),
    })?;
    let points = parse_header(first_line, first, "points")?.ok_or_else(|| Error::Parse {
        line: first_line,
        message: "first line must be `points <int>`".into(),
    })?;
    check_ground(first_line, points)?;
    let mut fam = SetFamily::new();
    let mut warnings = Vec::new();
    for (line, text) in lines {
        let set = parse_set(text, points, line)?;
        push_set(&mut fam, &mut warnings, set, line);
    }
    Ok(ParsedGraph {
        points,
        lines: fam,
        warnings,
    })
}

/// True if the first meaningful line is a `points` header.
pub fn is_graph_text(text: &str) -> bool {
    content_lines(text)
        .next()
        .is_some_and(|(_, l)| l.split_whitespace().next() == Some("points"))
}

/// One set per line in canonical order.
pub fn format_family(fam: &SetFamily) -> String {
    let mut out = String::new();
    for s in fam.sorted() {
        let _ = writeln!(out, "{s}");
    }
    out
}

/// Canonical matroid text: header lines followed by the sorted copoints.
pub fn format_matroid(m: &Matroid) -> String {
    format!(
        "n {}\nrank {}\n{}",
        m.n(),
        m.rank(),
        format_family(m.copoints())
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testdata::*;

    #[test]
    fn parses_example_with_rank_header() {
        let p = parse_matroid_text(M1_TEXT).unwrap();
        assert_eq!(p.n, 8);
        assert_eq!(p.declared_rank, Some(4));
        assert_eq!(p.copoints.len(), 41);
        assert!(p.warnings.is_empty());
        assert!(p.copoints.contains(set("1256")));
    }

    #[test]
    fn duplicate_lines_warn_and_dedup() {
        let p = parse_matroid_text(M4_TEXT).unwrap();
        assert_eq!(p.copoints.len(), 8);
        assert_eq!(p.warnings.len(), 1);
        assert!(p.warnings[0].contains("{1,6}"));
    }

    #[test]
    fn separated_syntax_for_large_n() {
        let p = parse_matroid_text("n 12\n1 2 11\n3,4\n{5 6}\n11").unwrap();
        assert_eq!(
            p.copoints.as_slice(),
            &[
                [1, 2, 11].into_iter().collect(),
                set("34"),
                set("56"),
                ElementSet::singleton(11)
            ]
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_matroid_text("n 12\n2345678"),
            Err(Error::CompactTokenWithLargeN { line: 2, .. })
        ));
        assert_eq!(
            parse_matroid_text("n 8\n129"),
            Err(Error::ElementOutOfRange {
                line: 2,
                element: 9,
                n: 8
            })
        );
        assert_eq!(
            parse_matroid_text("n 8\n1 2 0"),
            Err(Error::ElementOutOfRange {
                line: 2,
                element: 0,
                n: 8
            })
        );
        assert!(matches!(
            parse_matroid_text("rank 3\n12"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matroid_text("n 8\n1 x"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_matroid_text(""), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_matroid_text("n 65\n1"),
            Err(Error::Parse { .. })
        ));
        assert!(parse_matroid_text("n 8\nrank 3\n12").unwrap().declared_rank == Some(3));
    }

    #[test]
    fn declared_rank_is_cross_checked() {
        let bad = M5_TEXT.replace("rank 3", "rank 4");
        assert_eq!(
            parse_matroid_text(&bad).unwrap().build(),
            Err(Error::RankMismatch {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn canonical_round_trip_on_examples() {
        for text in ALL_TEXTS {
            let m = parse_matroid_text(text).unwrap().build().unwrap();
            let again = parse_matroid_text(&format_matroid(&m))
                .unwrap()
                .build()
                .unwrap();
            assert_eq!(m, again);
        }
    }

    #[test]
    fn canonical_output_shape() {
        let m = parse_matroid_text("n 3\n3\n1\n2").unwrap().build().unwrap();
        assert_eq!(format_matroid(&m), "n 3\nrank 2\n1\n2\n3\n");
    }

    #[test]
    fn inline_sets() {
        assert_eq!(
            parse_inline_sets("24,258, 27", 8).unwrap(),
            vec![set("24"), set("258"), set("27")]
        );
        assert_eq!(
            parse_inline_sets("1 2 10; 3 4", 12).unwrap(),
            vec![[1, 2, 10].into_iter().collect(), set("34")]
        );
    }

    #[test]
    fn graph_format() {
        let text = "# triangle\npoints 3\n12\n13\n23\n";
        assert!(is_graph_text(text));
        assert!(!is_graph_text(M5_TEXT));
        let g = parse_graph_text(text).unwrap();
        assert_eq!(g.points, 3);
        assert_eq!(g.lines.len(), 3);
    }
}
