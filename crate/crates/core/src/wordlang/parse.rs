use thiserror::Error;

use super::{CommutatorWord, Identity};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("parse error at {line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line: 1,
            column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Comma,
    Semi,
    Ident(String),
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '(' => out.push((col, Tok::Open)),
            ')' => out.push((col, Tok::Close)),
            ',' => out.push((col, Tok::Comma)),
            ';' => out.push((col, Tok::Semi)),
            c if c.is_whitespace() => {}
            c if is_ident_start(c) => {
                let start = i;
                while i + 1 < chars.len() && is_ident_char(chars[i + 1]) {
                    i += 1;
                }
                let name: String = chars[start..=i].iter().collect();
                out.push((col, Tok::Ident(name)));
            }
            other => return Err(ParseError::at(col, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn word(&mut self) -> Result<CommutatorWord, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(CommutatorWord::Var(name))
            }
            Some(Tok::Open) => self.group(),
            Some(t) => Err(ParseError::at(self.column(), format!("expected a word, found {}", show(&t)))),
            None => Err(ParseError::at(self.end, "expected a word, found end of input")),
        }
    }

    fn group(&mut self) -> Result<CommutatorWord, ParseError> {
        let open = self.column();
        self.pos += 1;
        let mut segs: Vec<Vec<CommutatorWord>> = vec![Vec::new()];
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) | Some(Tok::Open) => {
                    let item = self.word()?;
                    segs.last_mut().unwrap().push(item);
                }
                Some(_) => return Err(ParseError::at(self.column(), "empty segment")),
                None => return Err(ParseError::at(self.end, "unbalanced parentheses")),
            }
            match self.peek() {
                Some(Tok::Comma) => self.pos += 1,
                Some(Tok::Semi) => {
                    self.pos += 1;
                    segs.push(Vec::new());
                }
                Some(Tok::Close) => {
                    self.pos += 1;
                    break;
                }
                Some(t) => {
                    let t = show(t);
                    return Err(ParseError::at(
                        self.column(),
                        format!("expected `,`, `;` or `)`, found {t}"),
                    ));
                }
                None => return Err(ParseError::at(self.end, "unbalanced parentheses")),
            }
        }
        let mut values: Vec<CommutatorWord> = segs
            .into_iter()
            .map(|mut seg| {
                if seg.len() == 1 {
                    seg.pop().unwrap()
                } else {
                    CommutatorWord::LeftNormed(seg)
                }
            })
            .collect();
        if values.len() == 1 {
            return match values.pop().unwrap() {
                w @ CommutatorWord::LeftNormed(_) => Ok(w),
                CommutatorWord::Var(_) => Err(ParseError::at(
                    open,
                    "a parenthesized single item is not a commutator",
                )),
            };
        }
        Ok(CommutatorWord::LeftNormed(values))
    }
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Open => "`(`".into(),
        Tok::Close => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Ident(s) => format!("`{s}`"),
    }
}

/// Parses a commutator word: a bare identifier or a parenthesized group of
/// `;`-separated segments of `,`-separated items.
pub fn parse(text: &str) -> Result<CommutatorWord, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        end: text.chars().count() + 1,
        toks,
        pos: 0,
    };
    if p.toks.is_empty() {
        return Err(ParseError::at(1, "empty input"));
    }
    let w = p.word()?;
    if p.pos < p.toks.len() {
        let col = p.column();
        let msg = match p.peek() {
            Some(Tok::Close) => "unbalanced parentheses".to_string(),
            Some(t) => format!("trailing input starting at {}", show(t)),
            None => unreachable!(),
        };
        return Err(ParseError::at(col, msg));
    }
    Ok(w)
}

/// Parses `WORD = WORD` or `WORD = 0`.
pub fn parse_identity(text: &str) -> Result<Identity, ParseError> {
    let mut parts = text.splitn(3, '=');
    let lhs = parts.next().unwrap_or("");
    let Some(rhs) = parts.next() else {
        return Err(ParseError::at(text.len() + 1, "expected `=`"));
    };
    if parts.next().is_some() {
        return Err(ParseError::at(1, "more than one `=`"));
    }
    let offset = lhs.chars().count() + 1;
    let lhs = parse(lhs)?;
    let rhs = if rhs.trim() == "0" {
        None
    } else {
        Some(parse(rhs).map_err(|mut e| {
            e.column += offset;
            e
        })?)
    };
    Ok(Identity { lhs, rhs })
}

/// Parses the identity file format: one identity per line, `#` comments,
/// blank lines ignored.
pub fn parse_identities(text: &str) -> Result<Vec<Identity>, ParseError> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let id = parse_identity(body).map_err(|mut e| {
            e.line = n + 1;
            e
        })?;
        out.push(id);
    }
    Ok(out)
}
