//! The plain matrix text format: a `matrix R C` header followed by `R` rows of
//! whitespace-separated entries (`p` or `p/q`). Blank lines and `#` comments
//! are ignored.

use crate::error::{Error, Result};
use crate::matops::RatMatrix;
use crate::rational::parse_rat;

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_matrix(text: &str) -> Result<RatMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .filter(|(_, l)| !l.trim().is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, 1, "empty matrix file"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    if words.len() != 3 || words[0] != "matrix" {
        return Err(err(hline, 1, "expected header `matrix R C`"));
    }
    let dim = |w: &str, col: usize| {
        w.parse::<usize>()
            .map_err(|_| err(hline, col, format!("bad dimension {w:?}")))
    };
    let rows = dim(words[1], 8)?;
    let cols = dim(words[2], 10)?;

    let mut data = Vec::with_capacity(rows);
    for (lineno, line) in lines {
        if data.len() == rows {
            return Err(err(lineno, 1, "more rows than declared"));
        }
        let mut row = Vec::with_capacity(cols);
        for word in line.split_whitespace() {
            let column = line.find(word).unwrap_or(0) + 1;
            row.push(parse_rat(word).ok_or_else(|| err(lineno, column, format!("bad entry {word:?}")))?);
        }
        if row.len() != cols {
            return Err(err(lineno, 1, format!("expected {cols} entries, found {}", row.len())));
        }
        data.push(row);
    }
    if data.len() != rows {
        return Err(err(text.lines().count().max(1), 1, "fewer rows than declared"));
    }
    if rows == 0 {
        return Ok(RatMatrix::zeros(0, cols));
    }
    Ok(RatMatrix::from_rows(data))
}
