// SPDX-License-Identifier: Apache-2.0

//! Tokenizer and S-expression parser for SMT-LIB text.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("unterminated quoted symbol")]
    UnterminatedQuotedSymbol,
    #[error("unbalanced parentheses")]
    UnbalancedParens,
    #[error("no S-expression in input")]
    EmptyInput,
    #[error("unrecognized solver response: {0}")]
    UnrecognizedResponse(String),
    #[error("solver error: {0}")]
    SolverError(String),
    #[error("malformed model: {0}")]
    MalformedModel(String),
    #[error("unsupported value form: {0}")]
    UnsupportedValueForm(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("ill-formed term: {0}")]
    BadTerm(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Open,
    Close,
    /// Symbol, numeral, decimal, `#x`/`#b` literal, keyword, `|quoted|`
    /// symbol or `"string"` literal, verbatim.
    Atom(String),
}

impl Token {
    pub fn text(&self) -> &str {
        match self {
            Token::Open => "(",
            Token::Close => ")",
            Token::Atom(a) => a,
        }
    }
}

/// Splits SMT-LIB text into tokens, skipping whitespace and `;` comments.
pub fn tokenize(text: &str) -> Result<Vec<Token>, ReadError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(start, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            ';' => {
                for (_, c) in chars.by_ref() {
                    if c == '\n' {
                        break;
                    }
                }
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            '"' => {
                chars.next();
                let mut end = None;
                while let Some((i, c)) = chars.next() {
                    if c == '"' {
                        // "" is an escaped quote
                        if chars.peek().map(|&(_, c)| c) == Some('"') {
                            chars.next();
                        } else {
                            end = Some(i + 1);
                            break;
                        }
                    }
                }
                let end = end.ok_or(ReadError::UnterminatedString)?;
                tokens.push(Token::Atom(text[start..end].to_owned()));
            }
            '|' => {
                chars.next();
                let end = chars
                    .by_ref()
                    .find(|&(_, c)| c == '|')
                    .map(|(i, _)| i + 1)
                    .ok_or(ReadError::UnterminatedQuotedSymbol)?;
                tokens.push(Token::Atom(text[start..end].to_owned()));
            }
            _ => {
                let mut end = text.len();
                while let Some(&(i, c)) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ';' | '"' | '|') {
                        end = i;
                        break;
                    }
                    chars.next();
                }
                tokens.push(Token::Atom(text[start..end].to_owned()));
            }
        }
    }
    Ok(tokens)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

impl SExpr {
    pub fn atom(&self) -> Option<&str> {
        match self {
            SExpr::Atom(a) => Some(a),
            SExpr::List(_) => None,
        }
    }

    pub fn list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items) => Some(items),
            SExpr::Atom(_) => None,
        }
    }

    pub fn is_atom(&self, text: &str) -> bool {
        self.atom() == Some(text)
    }

    /// The head atom of a nonempty list.
    pub fn head(&self) -> Option<&str> {
        self.list()?.first()?.atom()
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Atom(a) => f.write_str(a),
            SExpr::List(items) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses the first complete S-expression and returns it with the remaining
/// tokens.
pub fn parse_sexpr(tokens: &[Token]) -> Result<(SExpr, &[Token]), ReadError> {
    let (first, mut rest) = tokens.split_first().ok_or(ReadError::EmptyInput)?;
    match first {
        Token::Atom(a) => Ok((SExpr::Atom(a.clone()), rest)),
        Token::Close => Err(ReadError::UnbalancedParens),
        Token::Open => {
            let mut items = Vec::new();
            loop {
                match rest.first() {
                    None => return Err(ReadError::UnbalancedParens),
                    Some(Token::Close) => return Ok((SExpr::List(items), &rest[1..])),
                    Some(_) => {
                        let (item, r) = parse_sexpr(rest)?;
                        items.push(item);
                        rest = r;
                    }
                }
            }
        }
    }
}

/// Parses every S-expression in `text`.
pub fn parse_all(text: &str) -> Result<Vec<SExpr>, ReadError> {
    let tokens = tokenize(text)?;
    let mut rest = tokens.as_slice();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let (e, r) = parse_sexpr(rest)?;
        out.push(e);
        rest = r;
    }
    Ok(out)
}

/// Parses exactly one S-expression.
pub fn parse_one(text: &str) -> Result<SExpr, ReadError> {
    let tokens = tokenize(text)?;
    let (e, rest) = parse_sexpr(&tokens)?;
    if !rest.is_empty() {
        let extra: Vec<&str> = rest.iter().map(Token::text).collect();
        return Err(ReadError::UnrecognizedResponse(format!(
            "trailing input after `{e}`: {}",
            extra.join(" ")
        )));
    }
    Ok(e)
}

/// Strips the quotes of a string literal and undoes `""` escapes.
pub fn unquote_string(atom: &str) -> Option<String> {
    let inner = atom.strip_prefix('"')?.strip_suffix('"')?;
    Some(inner.replace("\"\"", "\""))
}

/// Strips `|...|` from a quoted symbol; other symbols are returned as is.
pub fn symbol_name(atom: &str) -> &str {
    atom.strip_prefix('|')
        .and_then(|s| s.strip_suffix('|'))
        .unwrap_or(atom)
}
