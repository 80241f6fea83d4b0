//! Line-oriented presentation files.
//!
//! ```text
//! algebra A3            # optional name
//! vertices 3
//! arrow a: 1 -> 2
//! arrow b: 2 -> 3
//! relation a.b          # zero relation
//! relation 1*a.b - 1/2*c.d
//! ```

use num::One;

use crate::algebra::{PathSum, PathWord, Presentation};
use crate::error::{Error, Result};
use crate::matops::Quiver;
use crate::rational::{parse_rat, Rat};

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    /// Byte offset of `text` inside the original line.
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize, offset: usize) -> Self {
        Cursor {
            text,
            pos: 0,
            line,
            offset,
        }
    }

    fn column(&self) -> usize {
        self.offset + self.pos + 1
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.line, self.column(), format!("expected {c:?}")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }

    fn identifier(&mut self) -> Result<(&'a str, usize)> {
        self.skip_ws();
        let col = self.column();
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {}
            _ => return Err(err(self.line, col, "expected a name")),
        }
        let name = self.take_while(|c| c.is_alphanumeric() || c == '_' || c == '\'');
        let stars = self.take_while(|c| c == '*');
        let full = &self.text[self.pos - name.len() - stars.len()..self.pos];
        Ok((full, col))
    }

    fn number(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let col = self.column();
        let digits = self.take_while(|c| c.is_ascii_digit());
        digits
            .parse()
            .map(|n| (n, col))
            .map_err(|_| err(self.line, col, "expected a number"))
    }
}

pub fn parse(text: &str) -> Result<Presentation> {
    let mut name = None;
    let mut quiver: Option<Quiver> = None;
    let mut relations = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.is_empty() {
            continue;
        }
        let offset = content.len() - trimmed.len();
        let (keyword, rest) = trimmed
            .split_once(char::is_whitespace)
            .unwrap_or((trimmed.trim_end(), ""));
        let rest_offset = offset + keyword.len() + 1;
        let mut cur = Cursor::new(rest, line, rest_offset);
        match keyword {
            "algebra" => {
                let (n, _) = cur.identifier()?;
                name = Some(n.to_string());
            }
            "vertices" => {
                if quiver.is_some() {
                    return Err(err(line, offset + 1, "duplicate `vertices` line"));
                }
                let (n, _) = cur.number()?;
                quiver = Some(Quiver::new(n));
            }
            "arrow" => {
                let q = quiver
                    .as_mut()
                    .ok_or_else(|| err(line, offset + 1, "`vertices` must come before arrows"))?;
                let (arrow, col) = cur.identifier()?;
                cur.expect(':')?;
                let (s, scol) = cur.number()?;
                cur.expect('-')?;
                cur.expect('>')?;
                let (t, tcol) = cur.number()?;
                for (v, c) in [(s, scol), (t, tcol)] {
                    if q.check_vertex(v).is_err() {
                        return Err(err(line, c, format!("vertex {v} out of range")));
                    }
                }
                if q.arrow_index(arrow).is_some() {
                    return Err(err(line, col, format!("duplicate arrow {arrow:?}")));
                }
                q.add_arrow(arrow, s, t)?;
            }
            "relation" => {
                let q = quiver
                    .as_ref()
                    .ok_or_else(|| err(line, offset + 1, "`vertices` must come before relations"))?;
                relations.push(parse_relation(&mut cur, q)?);
            }
            other => return Err(err(line, offset + 1, format!("unknown keyword {other:?}"))),
        }
        if !cur.at_end() {
            return Err(err(line, cur.column(), "unexpected trailing input"));
        }
    }

    let quiver = quiver.ok_or_else(|| err(1, 1, "missing `vertices` line"))?;
    Ok(Presentation {
        name: name.unwrap_or_else(|| "A".to_string()),
        quiver,
        relations,
    })
}

fn parse_relation(cur: &mut Cursor, q: &Quiver) -> Result<PathSum> {
    let mut sum = PathSum::zero();
    let start_col = cur.column();
    let mut first = true;
    loop {
        cur.skip_ws();
        let mut sign = Rat::one();
        if cur.eat('-') {
            sign = -sign;
        } else if !cur.eat('+') && !first {
            break;
        }
        first = false;
        cur.skip_ws();
        let mut coeff = Rat::one();
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            let col = cur.column();
            let lit = cur.take_while(|c| c.is_ascii_digit() || c == '/');
            coeff = parse_rat(lit).ok_or_else(|| err(cur.line, col, format!("bad coefficient {lit:?}")))?;
            cur.expect('*')?;
        }
        let word_col = {
            cur.skip_ws();
            cur.column()
        };
        let mut arrows = Vec::new();
        loop {
            let (name, col) = cur.identifier()?;
            let idx = q
                .arrow_index(name)
                .ok_or_else(|| err(cur.line, col, format!("unknown arrow {name:?}")))?;
            arrows.push(idx);
            if !cur.eat('.') {
                break;
            }
        }
        if arrows.len() < 2 {
            return Err(err(cur.line, word_col, "relation terms must have length at least 2"));
        }
        let word = PathWord::from_arrows(q, arrows)
            .ok_or_else(|| err(cur.line, word_col, "arrows in path are not composable"))?;
        if let Some(ends) = sum.endpoints() {
            if ends != (word.source, word.target) {
                return Err(err(cur.line, word_col, "relation mixes paths with different endpoints"));
            }
        }
        sum.add_term(word, sign * coeff);
        if cur.at_end() {
            break;
        }
    }
    if sum.is_zero() {
        return Err(err(cur.line, start_col, "relation is zero"));
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn linear_a3() {
        let p = parse("vertices 3\narrow a: 1->2\narrow b: 2 -> 3\n").unwrap();
        assert_eq!(p.quiver.arrows().len(), 2);
        assert!(p.relations.is_empty());
        assert_eq!(p.name, "A");
        let p = parse("algebra Z\nvertices 3\narrow a: 1->2\narrow b: 2->3\nrelation a.b # zero\n").unwrap();
        assert_eq!(p.name, "Z");
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].len(), 1);
    }

    #[test]
    fn commutativity_relation() {
        let text = "vertices 4\narrow a: 1->2\narrow b: 2->4\narrow c: 1->3\narrow d: 3->4\n\
                    relation 1*a.b - 1*c.d\n";
        let p = parse(text).unwrap();
        let r = &p.relations[0];
        assert_eq!(r.len(), 2);
        let cd = PathWord::from_arrows(&p.quiver, vec![2, 3]).unwrap();
        assert_eq!(r.coefficient(&cd), rat(-1));
        let p2 = parse(&text.replace("1*a.b - 1*c.d", "-a.b + 2/3*c.d")).unwrap();
        assert_eq!(p2.relations[0].coefficient(&cd), crate::rational::rat_frac(2, 3));
    }

    fn position(text: &str) -> (usize, usize, String) {
        match parse(text) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        let base = "vertices 3\narrow a: 1->2\narrow b: 2->3\narrow c: 1->3\n";
        let (l, c, m) = position(&format!("{base}relation a\n"));
        assert_eq!((l, c), (5, 10));
        assert!(m.contains("length"), "{m}");
        let (l, c, _) = position(&format!("{base}relation a.x\n"));
        assert_eq!((l, c), (5, 12));
        let (_, _, m) = position(&format!("{base}relation b.a\n"));
        assert!(m.contains("composable"));
        let (_, _, m) =
            position("vertices 4\narrow a: 1->2\narrow b: 2->3\narrow c: 3->4\narrow d: 2->4\nrelation a.b - b.c\n");
        assert!(m.contains("endpoints"));
        let (l, _, m) = position("vertices 2\narrow a: 1->3\n");
        assert_eq!(l, 2);
        assert!(m.contains("out of range"));
        let (_, _, m) = position("arrow a: 1->2\n");
        assert!(m.contains("before"));
        let (_, _, m) = position("vertices 2\nfoo\n");
        assert!(m.contains("unknown keyword"));
    }
}
