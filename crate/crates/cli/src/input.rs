//! Vertex files: one 0/1 row per vertex, whitespace separated, `#` starts a
//! comment.

use nbpoly::{Error, Polytope, Result};

pub fn parse_rows(text: &str) -> Result<Vec<Vec<u8>>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let mut row = Vec::new();
        for tok in content.split_whitespace() {
            match tok {
                "0" => row.push(0),
                "1" => row.push(1),
                other => {
                    return Err(Error::Parse {
                        line: i + 1,
                        reason: format!("expected 0 or 1, found {other:?}"),
                    })
                }
            }
        }
        if row.is_empty() {
            continue;
        }
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(Error::Parse {
                    line: i + 1,
                    reason: format!("row has {} coordinates, expected {first}", row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(rows)
}

/// Parses a vertex file; `dim` defaults to the row length.
pub fn parse_polytope(text: &str, dim: Option<usize>) -> Result<Polytope> {
    let rows = parse_rows(text)?;
    let d = dim.unwrap_or(rows[0].len());
    Polytope::from_coordinates(d, &rows)
}
