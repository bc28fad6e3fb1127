use super::diagnostic::{ParseDiagnostic, SourceSpan};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Word(String),
    Arrow,
    Colon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub span: SourceSpan,
    /// First token on its line; used to resynchronize after errors.
    pub line_start: bool,
}

impl Token {
    pub fn word(&self) -> Option<&str> {
        match &self.kind {
            TokenKind::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            TokenKind::Word(w) => format!("'{w}'"),
            TokenKind::Arrow => "'->'".to_string(),
            TokenKind::Colon => "':'".to_string(),
        }
    }
}

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.'
}

/// True iff `s` lexes as a single word token.
pub fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_word_char)
}

/// Splits source text into tokens. Unknown characters are reported and
/// skipped so lexing always reaches the end of input.
pub(crate) fn tokenize(source: &str) -> (Vec<Token>, Vec<ParseDiagnostic>) {
    let mut tokens = Vec::new();
    let mut errors = Vec::new();
    for (line_idx, line) in source.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut col = 0;
        let mut first = true;
        while col < chars.len() {
            let c = chars[col];
            let span = |len: usize| SourceSpan::new(line_idx + 1, col + 1, len);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                col += 1;
                continue;
            }
            let (kind, len) = if is_word_char(c) {
                let len = chars[col..].iter().take_while(|c| is_word_char(**c)).count();
                (TokenKind::Word(chars[col..col + len].iter().collect()), len)
            } else if c == '-' && chars.get(col + 1) == Some(&'>') {
                (TokenKind::Arrow, 2)
            } else if c == ':' {
                (TokenKind::Colon, 1)
            } else {
                errors.push(ParseDiagnostic::error(span(1), format!("unexpected character '{c}'")));
                col += 1;
                continue;
            };
            tokens.push(Token {
                kind,
                span: span(len),
                line_start: first,
            });
            first = false;
            col += len;
        }
    }
    (tokens, errors)
}
