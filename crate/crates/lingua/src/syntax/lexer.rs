//! Tokenizer shared by the concrete and colloquial dialects.

use std::fmt;

use super::SyntaxError;
use crate::number::Decimal;

/// Reserved words; none of them may be used as an identifier.
pub const KEYWORDS: &[&str] = &[
    "add-attr", "add-to-arr", "all-array", "all-list", "and", "arr", "array", "array-of", "array-type", "as",
    "asr", "at", "be", "begin", "begin-asr", "begin-program", "boolean", "by", "call", "change-arr",
    "change-rec", "conformant-with", "defined-d", "defined-t", "do", "ee", "else", "empty-ap", "empty-fp",
    "end", "end-asr", "end-program", "endproc", "exists", "expand-record-type", "false", "fi", "FF", "for-all",
    "from", "fun", "glue", "if", "if-error", "increasing", "is", "let", "list", "list-of", "list-type", "max",
    "multiproc", "new", "not", "number", "od", "of", "of-value", "off", "on", "or", "pop", "proc", "push",
    "real", "rec", "record", "record-type", "reduce-record-type", "ref", "remove-attr",
    "replace-transfer-in", "return", "rsa", "set", "skip", "small-number", "string", "sum", "tel", "tes",
    "then", "to", "top", "true", "TT", "type", "val", "value", "while", "with", "word", "yoke",
];

pub fn is_keyword(text: &str) -> bool {
    KEYWORDS.contains(&text)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifier or keyword.
    Name(String),
    /// Unsigned numeric literal.
    Num(Decimal),
    /// Word constant in apostrophes.
    Word(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "`{n}`"),
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Word(w) => write!(f, "word '{w}'"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: &[(&str, &str)] = &[
    (":=", ":="),
    ("<=", "<="),
    (">=", ">="),
    ("<>", "<>"),
    ("≤", "<="),
    ("≥", ">="),
    ("≠", "<>"),
    ("²", "²"),
    ("(", "("),
    (")", ")"),
    ("[", "["),
    ("]", "]"),
    (",", ","),
    (";", ";"),
    (":", ":"),
    ("=", "="),
    ("<", "<"),
    (">", ">"),
    ("+", "+"),
    ("-", "-"),
    ("*", "*"),
    ("/", "/"),
    (".", "."),
    ("@", "@"),
];

/// Splits source text into tokens; `#` starts a comment running to the end
/// of the line. The result always ends with [`Tok::Eof`].
pub fn tokenize(src: &str) -> Result<Vec<Token>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, to: usize| {
        for &c in &chars[*i..to] {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        }
        *i = to;
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c.is_whitespace() {
            let to = i + 1;
            advance(&mut i, &mut line, &mut col, to);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                let to = i + 1;
            advance(&mut i, &mut line, &mut col, to);
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut j = i;
            loop {
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j] == '-' && chars[j + 1].is_ascii_alphabetic() {
                    j += 1;
                    continue;
                }
                break;
            }
            let text: String = chars[i..j].iter().collect();
            tokens.push(Token { tok: Tok::Name(text), line: tl, col: tc });
            advance(&mut i, &mut line, &mut col, j);
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                j += 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
            }
            let text: String = chars[i..j].iter().collect();
            let n = text.parse::<Decimal>().map_err(|e| SyntaxError::new(tl, tc, e.to_string()))?;
            tokens.push(Token { tok: Tok::Num(n), line: tl, col: tc });
            advance(&mut i, &mut line, &mut col, j);
            continue;
        }
        if c == '\'' {
            let mut j = i + 1;
            while j < chars.len() && chars[j] != '\'' {
                j += 1;
            }
            if j >= chars.len() {
                return Err(SyntaxError::new(tl, tc, "unterminated word constant"));
            }
            let text: String = chars[i + 1..j].iter().collect();
            tokens.push(Token { tok: Tok::Word(text), line: tl, col: tc });
            advance(&mut i, &mut line, &mut col, j + 1);
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let Some((text, sym)) = SYMBOLS.iter().find(|(text, _)| rest.starts_with(text)) else {
            return Err(SyntaxError::new(tl, tc, format!("unexpected character {c:?}")));
        };
        tokens.push(Token { tok: Tok::Sym(sym), line: tl, col: tc });
        let to = i + text.chars().count();
        advance(&mut i, &mut line, &mut col, to);
    }
    tokens.push(Token { tok: Tok::Eof, line, col });
    Ok(tokens)
}
