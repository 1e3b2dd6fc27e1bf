use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Number { value: f64, imaginary: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset of the first character.
    pub offset: usize,
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_continue(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_'
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut tokens = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let single = match c {
            b'+' => Some(TokenKind::Plus),
            b'-' => Some(TokenKind::Minus),
            b'*' => Some(TokenKind::Star),
            b'/' => Some(TokenKind::Slash),
            b'^' => Some(TokenKind::Caret),
            b'(' => Some(TokenKind::LParen),
            b')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token { kind, offset: start });
            pos += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            pos = lex_number(bytes, pos, &mut tokens)?;
            continue;
        }
        if is_ident_start(c) {
            while pos < bytes.len() && is_ident_continue(bytes[pos]) {
                pos += 1;
            }
            tokens.push(Token {
                kind: TokenKind::Ident(src[start..pos].to_string()),
                offset: start,
            });
            continue;
        }
        let ch = src[start..].chars().next().unwrap_or('?');
        return Err(ParseError::Lexical {
            offset: start,
            message: format!("unexpected character `{ch}`"),
        });
    }
    tokens.push(Token {
        kind: TokenKind::End,
        offset: bytes.len(),
    });
    Ok(tokens)
}

fn lex_number(bytes: &[u8], start: usize, tokens: &mut Vec<Token>) -> Result<usize, ParseError> {
    let digits = |mut p: usize| {
        while p < bytes.len() && bytes[p].is_ascii_digit() {
            p += 1;
        }
        p
    };
    let mut pos = digits(start);
    let int_len = pos - start;
    let mut frac_len = 0;
    if pos < bytes.len() && bytes[pos] == b'.' {
        let after = digits(pos + 1);
        frac_len = after - pos - 1;
        pos = after;
    }
    if int_len == 0 && frac_len == 0 {
        return Err(ParseError::Lexical {
            offset: start,
            message: "malformed number".to_string(),
        });
    }
    // exponent only when digits follow, so `2e` stays `2` then `e`
    if pos < bytes.len() && (bytes[pos] == b'e' || bytes[pos] == b'E') {
        let mut p = pos + 1;
        if p < bytes.len() && (bytes[p] == b'+' || bytes[p] == b'-') {
            p += 1;
        }
        if p < bytes.len() && bytes[p].is_ascii_digit() {
            pos = digits(p);
        }
    }
    let text = std::str::from_utf8(&bytes[start..pos]).expect("ascii");
    let value: f64 = text.parse().map_err(|_| ParseError::Lexical {
        offset: start,
        message: format!("malformed number `{text}`"),
    })?;
    if !value.is_finite() {
        return Err(ParseError::Lexical {
            offset: start,
            message: format!("number `{text}` is out of range"),
        });
    }
    let imaginary = pos < bytes.len()
        && bytes[pos] == b'i'
        && !(pos + 1 < bytes.len() && is_ident_continue(bytes[pos + 1]));
    if imaginary {
        pos += 1;
    }
    tokens.push(Token {
        kind: TokenKind::Number { value, imaginary },
        offset: start,
    });
    Ok(pos)
}
