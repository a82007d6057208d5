use crate::concept::ConceptExpr;

use super::Diagnostic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Arrow,
    Equals,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Equals => "`=`".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub column: usize,
}

/// Splits one line into tokens. Columns are 1-based character offsets.
pub(crate) fn lex(line: &str, line_no: usize) -> Result<Vec<Token>, Diagnostic> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, column });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::Arrow, column });
            i += 2;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), column });
        } else if c.is_ascii_digit() || c == '-' || c == '.' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            out.push(Token { tok: Tok::Number(chars[start..i].iter().collect()), column });
        } else {
            return Err(Diagnostic::error(line_no, column, "syntax", format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
pub(crate) struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(tokens: &'a [Token], line: usize, line_len: usize) -> Self {
        Cursor { tokens, pos: 0, line, end_column: line_len + 1 }
    }

    pub(crate) fn column(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|t| &t.tok)
    }

    pub(crate) fn error(&self, message: impl Into<String>) -> Diagnostic {
        Diagnostic::error(self.line, self.column(), "syntax", message)
    }

    fn unexpected(&self, wanted: &str) -> Diagnostic {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {}", t.describe())),
            None => self.error(format!("expected {wanted}, found end of line")),
        }
    }

    pub(crate) fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), Diagnostic> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    pub(crate) fn ident(&mut self, wanted: &str) -> Result<String, Diagnostic> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    /// An identifier that is not one of the reserved words.
    pub(crate) fn name(&mut self, wanted: &str) -> Result<String, Diagnostic> {
        let column = self.column();
        let s = self.ident(wanted)?;
        if matches!(s.as_str(), "Top" | "Bottom") {
            return Err(Diagnostic::error(self.line, column, "syntax", format!("`{s}` is reserved")));
        }
        Ok(s)
    }

    pub(crate) fn number(&mut self, wanted: &str) -> Result<String, Diagnostic> {
        match self.peek() {
            Some(Tok::Number(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    pub(crate) fn at(&self, tok: &Tok) -> bool {
        self.peek() == Some(tok)
    }

    pub(crate) fn finish(&self) -> Result<(), Diagnostic> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected trailing {}", t.describe()))),
        }
    }

    pub(crate) fn concept(&mut self) -> Result<ConceptExpr, Diagnostic> {
        match (self.peek(), self.peek2()) {
            (Some(Tok::LBrace), _) => {
                self.pos += 1;
                let ind = self.name("an individual name")?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(ConceptExpr::Nominal(ind))
            }
            (Some(Tok::Ident(kw)), Some(Tok::LParen)) if kw == "and" => {
                self.pos += 2;
                let mut members = vec![self.concept()?];
                self.expect(Tok::Comma, "`,`")?;
                members.push(self.concept()?);
                while self.at(&Tok::Comma) {
                    self.pos += 1;
                    members.push(self.concept()?);
                }
                self.expect(Tok::RParen, "`,` or `)`")?;
                Ok(ConceptExpr::And(members))
            }
            (Some(Tok::Ident(kw)), Some(Tok::LParen)) if kw == "some" => {
                self.pos += 2;
                let role = self.name("a role name")?;
                self.expect(Tok::Comma, "`,`")?;
                let filler = self.concept()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ConceptExpr::some(role, filler))
            }
            (Some(Tok::Ident(s)), _) => {
                let e = match s.as_str() {
                    "Top" => ConceptExpr::Top,
                    "Bottom" => ConceptExpr::Bottom,
                    _ => ConceptExpr::atom(s.clone()),
                };
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.unexpected("a concept")),
        }
    }
}
