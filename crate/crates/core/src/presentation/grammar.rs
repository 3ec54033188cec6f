//! One relation per line:
//!
//! ```text
//! sq K | triple I J | comm I J | ccomm I : W | eq: W1 = W2 | word: W
//! ```
//!
//! `K`, `I`, `J` are generator numbers (`3` means `g3`); `W` is a
//! whitespace-separated list of `gK` or `gK^-1` tokens.

use super::word::{Letter, Word};
use super::PresentationError;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let mut col_of = Vec::with_capacity(line.len() + 1);
    for (col, (byte, _)) in line.char_indices().enumerate() {
        col_of.push((byte, col + 1));
    }
    let column = |byte: usize| {
        col_of
            .iter()
            .find(|(b, _)| *b == byte)
            .map_or(line.chars().count() + 1, |(_, c)| *c)
    };
    for (i, ch) in line.char_indices() {
        let split = ch == ':' || ch == '=';
        if ch.is_whitespace() || split {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: column(s),
                });
            }
            if split {
                out.push(Token {
                    text: &line[i..i + 1],
                    column: column(i),
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: column(s),
        });
    }
    out
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax {
            column,
            message: message.into(),
        }
    }

    fn column(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map_or(self.end_column, |t| t.column)
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>, PresentationError> {
        let t = self
            .tokens
            .get(self.pos)
            .copied()
            .ok_or_else(|| self.err(self.end_column, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, text: &str) -> Result<(), PresentationError> {
        let col = self.column();
        let t = self.next(&format!("`{text}`"))?;
        if t.text == text {
            Ok(())
        } else {
            Err(self.err(col, format!("expected `{text}`, found `{}`", t.text)))
        }
    }

    fn lookup(&self, name: &str) -> Result<usize, PresentationError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))
    }

    fn number(&mut self) -> Result<usize, PresentationError> {
        let t = self.next("a generator number")?;
        let k: usize = t
            .text
            .parse()
            .map_err(|_| self.err(t.column, format!("expected a generator number, found `{}`", t.text)))?;
        self.lookup(&format!("g{k}"))
    }

    fn letter(&self, t: Token<'_>) -> Result<Letter, PresentationError> {
        let (name, inverse) = match t.text.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (t.text, false),
        };
        if name.is_empty() || name.contains('^') {
            return Err(self.err(t.column, format!("malformed generator token `{}`", t.text)));
        }
        Ok(Letter {
            gen: self.lookup(name)?,
            inverse,
        })
    }

    /// Letters up to (not including) `stop` or the end of the line.
    fn word(&mut self, stop: Option<&str>) -> Result<Word, PresentationError> {
        let mut letters = Vec::new();
        while let Some(&t) = self.tokens.get(self.pos) {
            if Some(t.text) == stop {
                break;
            }
            if t.text == ":" || t.text == "=" {
                return Err(self.err(t.column, format!("unexpected `{}`", t.text)));
            }
            letters.push(self.letter(t)?);
            self.pos += 1;
        }
        Ok(Word::from_letters(letters))
    }

    fn finish(&self) -> Result<(), PresentationError> {
        match self.tokens.get(self.pos) {
            Some(t) => Err(self.err(t.column, format!("unexpected trailing `{}`", t.text))),
            None => Ok(()),
        }
    }
}

fn parser<'a>(line: &'a str, names: &'a [String]) -> Parser<'a> {
    Parser {
        tokens: tokenize(line),
        pos: 0,
        end_column: line.chars().count() + 1,
        names,
    }
}

/// Parses one line of the relation grammar into a relator.
pub fn parse_relation(line: &str, names: &[String]) -> Result<Word, PresentationError> {
    let mut p = parser(line, names);
    let head = p.next("a relation keyword")?;
    let word = match head.text {
        "sq" => {
            let k = p.number()?;
            Word::gens(&[k, k])
        }
        "triple" => {
            let (i, j) = (p.number()?, p.number()?);
            Word::from_letters(vec![
                Letter::new(i),
                Letter::new(j),
                Letter::new(i),
                Letter::inv(j),
                Letter::inv(i),
                Letter::inv(j),
            ])
        }
        "comm" => {
            let (i, j) = (p.number()?, p.number()?);
            Word::commutator(&Word::gens(&[i]), &Word::gens(&[j]))
        }
        "ccomm" => {
            let i = p.number()?;
            p.expect(":")?;
            let col = p.column();
            let w = p.word(None)?;
            if w.is_empty() {
                return Err(p.err(col, "expected a word"));
            }
            Word::commutator(&Word::gens(&[i]), &w)
        }
        "eq" => {
            p.expect(":")?;
            let lhs = p.word(Some("="))?;
            p.expect("=")?;
            let rhs = p.word(None)?;
            lhs.concat(&rhs.inverse())
        }
        "word" => {
            p.expect(":")?;
            p.word(None)?
        }
        other => {
            return Err(p.err(
                head.column,
                format!("unknown relation keyword `{other}`"),
            ))
        }
    };
    p.finish()?;
    Ok(word)
}

/// Parses `eq: gK = W` into the generator `gK` and its definition `W`.
pub fn parse_definition(line: &str, names: &[String]) -> Result<(usize, Word), PresentationError> {
    let mut p = parser(line, names);
    p.expect("eq")?;
    p.expect(":")?;
    let col = p.column();
    let lhs = p.word(Some("="))?;
    p.expect("=")?;
    let rhs = p.word(None)?;
    match lhs.letters() {
        [l] if !l.inverse => Ok((l.gen, rhs)),
        _ => Err(p.err(col, "left-hand side must be a single generator")),
    }
}

fn number_of(names: &[String], gen: usize) -> Option<usize> {
    let n = names.get(gen)?;
    let k: usize = n.strip_prefix('g')?.parse().ok()?;
    (format!("g{k}") == *n).then_some(k)
}

/// Renders a relator in the relation grammar, using the short forms where the
/// relator has their exact shape.
pub fn format_relation(w: &Word, names: &[String]) -> String {
    let l = w.letters();
    let pos = |x: &Letter| !x.inverse;
    let num = |x: &Letter| number_of(names, x.gen);
    match l {
        [a, b] if a == b && pos(a) => {
            if let Some(k) = num(a) {
                return format!("sq {k}");
            }
        }
        [a, b, c, d] if pos(a) && pos(b) && a.gen != b.gen && *c == a.inverted() && *d == b.inverted() => {
            if let (Some(i), Some(j)) = (num(a), num(b)) {
                return format!("comm {i} {j}");
            }
        }
        [a, b, c, d, e, f]
            if pos(a) && pos(b) && a.gen != b.gen && c == a && *d == b.inverted() && *e == a.inverted() && *f == b.inverted() =>
        {
            if let (Some(i), Some(j)) = (num(a), num(b)) {
                return format!("triple {i} {j}");
            }
        }
        _ => {}
    }
    format!("word: {}", w.display(names))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (1..=n).map(|k| format!("g{k}")).collect()
    }

    #[test]
    fn triple_form() {
        let w = parse_relation("triple 1 2", &names(9)).unwrap();
        assert_eq!(w, Word::from_signed(&[1, 2, 1, -2, -1, -2]));
    }

    #[test]
    fn eq_form() {
        let w = parse_relation("eq: g3 = g5 g9 g5", &names(9)).unwrap();
        assert_eq!(w, Word::from_signed(&[3, -5, -9, -5]));
    }

    #[test]
    fn ccomm_form() {
        let w = parse_relation("ccomm 1 : g8 g7 g8", &names(9)).unwrap();
        assert_eq!(w, Word::from_signed(&[1, 8, 7, 8, -1, -8, -7, -8]));
    }

    #[test]
    fn other_forms() {
        let n = names(3);
        assert_eq!(parse_relation("sq 2", &n).unwrap(), Word::from_signed(&[2, 2]));
        assert_eq!(
            parse_relation("comm 1 3", &n).unwrap(),
            Word::from_signed(&[1, 3, -1, -3])
        );
        assert_eq!(
            parse_relation("word: g1 g2^-1 g3", &n).unwrap(),
            Word::from_signed(&[1, -2, 3])
        );
        assert_eq!(
            parse_relation("eq:g1=g2", &n).unwrap(),
            Word::from_signed(&[1, -2])
        );
    }

    #[test]
    fn errors_carry_position() {
        let n = names(3);
        assert_eq!(
            parse_relation("triple 1 x", &n),
            Err(PresentationError::Syntax {
                column: 10,
                message: "expected a generator number, found `x`".into()
            })
        );
        assert!(matches!(
            parse_relation("sq 4", &n),
            Err(PresentationError::UnknownGenerator(g)) if g == "g4"
        ));
        assert!(matches!(
            parse_relation("word: g1 g7", &n),
            Err(PresentationError::UnknownGenerator(g)) if g == "g7"
        ));
        assert!(matches!(
            parse_relation("ccomm 1 g2", &n),
            Err(PresentationError::Syntax { column: 9, .. })
        ));
        assert!(matches!(
            parse_relation("braid 1 2", &n),
            Err(PresentationError::Syntax { column: 1, .. })
        ));
        assert!(matches!(
            parse_relation("sq 1 2", &n),
            Err(PresentationError::Syntax { column: 6, .. })
        ));
        assert!(matches!(
            parse_relation("", &n),
            Err(PresentationError::Syntax { column: 1, .. })
        ));
    }

    #[test]
    fn definitions() {
        let n = names(9);
        let (g, w) = parse_definition("eq: g7 = g1 g4 g1", &n).unwrap();
        assert_eq!(g, 6);
        assert_eq!(w, Word::from_signed(&[1, 4, 1]));
        assert!(parse_definition("eq: g7 g1 = g4", &n).is_err());
    }

    #[test]
    fn format_round_trip() {
        let n = names(9);
        for line in [
            "sq 4",
            "triple 2 7",
            "comm 1 9",
            "word: g3 g8 g7 g8 g3 g4^-1 g6^-1",
        ] {
            let w = parse_relation(line, &n).unwrap();
            assert_eq!(format_relation(&w, &n), line);
            assert_eq!(parse_relation(&format_relation(&w, &n), &n).unwrap(), w);
        }
    }
}
