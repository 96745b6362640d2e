//! Tokenizer for the statement language. Tracks line/column for error
//! reporting; `#` starts a comment running to end of line.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    /// `[label]` — any bracketed text that is not a pure integer (those are
    /// `E[j]` indices and lex as plain brackets).
    Label(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Underscore,
    Colon,
    EqEq,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let err = |line: usize, col: usize, msg: String| Error::Parse { line, col, msg };

    while i < chars.len() {
        let c = chars[i];
        let (tline, tcol) = (line, col);
        let advance = |i: &mut usize, line: &mut usize, col: &mut usize| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                advance(&mut i, &mut line, &mut col);
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    advance(&mut i, &mut line, &mut col);
                }
            }
            '0'..='9' => {
                let mut v: i64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((chars[i] as u8 - b'0') as i64))
                        .ok_or_else(|| err(tline, tcol, "integer literal too large".into()))?;
                    advance(&mut i, &mut line, &mut col);
                }
                out.push(Token {
                    tok: Tok::Int(v),
                    line: tline,
                    col: tcol,
                });
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    // `_` glued to an identifier belongs to names like
                    // p_partition, but a lone suffix `_` after `)` is its own
                    // token; inside an identifier we keep consuming.
                    s.push(chars[i]);
                    advance(&mut i, &mut line, &mut col);
                }
                out.push(Token {
                    tok: Tok::Ident(s),
                    line: tline,
                    col: tcol,
                });
            }
            '[' => {
                // Look ahead to the matching ']' on this line: digits-only
                // contents are an index bracket, anything else is a label.
                let mut j = i + 1;
                let mut contents = String::new();
                let mut closed = false;
                while j < chars.len() && chars[j] != '\n' {
                    if chars[j] == ']' {
                        closed = true;
                        break;
                    }
                    contents.push(chars[j]);
                    j += 1;
                }
                let is_index = contents.trim().chars().all(|c| c.is_ascii_digit());
                if closed && !is_index {
                    let label = contents.trim().to_string();
                    while i <= j {
                        advance(&mut i, &mut line, &mut col);
                    }
                    out.push(Token {
                        tok: Tok::Label(label),
                        line: tline,
                        col: tcol,
                    });
                } else {
                    advance(&mut i, &mut line, &mut col);
                    out.push(Token {
                        tok: Tok::LBracket,
                        line: tline,
                        col: tcol,
                    });
                }
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '_' => Tok::Underscore,
                    ':' => Tok::Colon,
                    '=' => {
                        advance(&mut i, &mut line, &mut col);
                        if i < chars.len() && chars[i] == '=' {
                            advance(&mut i, &mut line, &mut col);
                            out.push(Token {
                                tok: Tok::EqEq,
                                line: tline,
                                col: tcol,
                            });
                            continue;
                        }
                        return Err(err(tline, tcol, "expected `==`".into()));
                    }
                    other => {
                        return Err(err(tline, tcol, format!("unexpected character `{other}`")));
                    }
                };
                advance(&mut i, &mut line, &mut col);
                out.push(Token {
                    tok,
                    line: tline,
                    col: tcol,
                });
            }
        }
    }
    Ok(out)
}
