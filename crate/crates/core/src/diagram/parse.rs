use thiserror::Error;

use super::{DiagramError, PDCode};

/// Error from [`parse_pd`], located by 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    /// Set when the text was well formed but the diagram is invalid.
    pub invalid: Option<DiagramError>,
}

/// Parses whitespace-separated `X[a,b,c,d]` tokens and `O` tokens (one
/// crossing-free circle each). `#` starts a comment running to end of line;
/// commas between tokens and a surrounding `PD[...]` are tolerated.
pub fn parse_pd(text: &str) -> Result<PDCode, ParseError> {
    let mut crossings: Vec<[u32; 4]> = Vec::new();
    let mut positions: Vec<(usize, usize)> = Vec::new();
    let mut circles = 0usize;

    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("");
        let bytes = line.as_bytes();
        let mut i = 0;
        let err = |col: usize, msg: String| ParseError {
            line: lineno + 1,
            column: col + 1,
            message: msg,
            invalid: None,
        };
        while i < bytes.len() {
            let c = bytes[i];
            if c.is_ascii_whitespace() || c == b',' || c == b']' {
                i += 1;
                continue;
            }
            if line[i..].starts_with("PD[") {
                i += 3;
                continue;
            }
            match c {
                b'O' => {
                    circles += 1;
                    i += 1;
                }
                b'X' => {
                    let start = i;
                    if bytes.get(i + 1) != Some(&b'[') {
                        return Err(err(i, "expected '[' after 'X'".into()));
                    }
                    let close = line[i..]
                        .find(']')
                        .map(|p| p + i)
                        .ok_or_else(|| err(start, "unterminated crossing tuple".into()))?;
                    let inner = &line[i + 2..close];
                    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                    if parts.len() != 4 {
                        return Err(err(start, format!("crossing tuple has {} entries, expected 4", parts.len())));
                    }
                    let mut x = [0u32; 4];
                    for (slot, part) in x.iter_mut().zip(&parts) {
                        *slot = part
                            .parse::<u32>()
                            .ok()
                            .filter(|&v| v > 0)
                            .ok_or_else(|| err(start, format!("invalid arc label '{part}'")))?;
                    }
                    crossings.push(x);
                    positions.push((lineno + 1, start + 1));
                    i = close + 1;
                }
                _ => {
                    return Err(err(i, format!("unexpected character '{}'", line[i..].chars().next().unwrap())));
                }
            }
        }
    }

    let tuples = crossings.clone();
    PDCode::new(crossings, circles).map_err(|e| {
        let ci = e
            .crossing()
            .or_else(|| e.label().and_then(|label| tuples.iter().position(|x| x.contains(&label))));
        let (line, column) = ci.and_then(|ci| positions.get(ci).copied()).unwrap_or((1, 1));
        ParseError {
            line,
            column,
            message: e.to_string(),
            invalid: Some(e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_trefoil() {
        let d = parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.extra_circles(), 0);
    }

    #[test]
    fn parses_unknot_and_comments() {
        let d = parse_pd("# the unknot\nO\n").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.extra_circles(), 1);
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]] O # trailing").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.extra_circles(), 1);
    }

    #[test]
    fn rejects_lone_crossing() {
        let e = parse_pd("X[1,2,3,4]").unwrap_err();
        assert!(matches!(e.invalid, Some(DiagramError::ArcCount { .. })));
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn reports_malformed_tuples_with_location() {
        let e = parse_pd("X[1,4,2,5]\n  X[3,6,4]").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.invalid.is_none());
        let e = parse_pd("X[1,4,2,x]").unwrap_err();
        assert!(e.message.contains("invalid arc label"));
        let e = parse_pd("X[1,4,2,5").unwrap_err();
        assert!(e.message.contains("unterminated"));
        let e = parse_pd("Y").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
    }

    #[test]
    fn locates_invalid_arc() {
        let e = parse_pd("X[1,4,2,5] X[3,6,4,1]\nX[5,2,6,7]").unwrap_err();
        assert!(matches!(e.invalid, Some(DiagramError::ArcCount { .. })));
    }
}
