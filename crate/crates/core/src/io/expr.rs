//! The element expression language:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | rational | 'p(' vertex ')' | 's(' path ')'
//!         | 'sstar(' path ')' | '(' expr ')'
//! ```
//!
//! A path is edge names joined by `.`, or a vertex name. The text between
//! the parentheses of a generator is taken verbatim, so names may contain
//! `+`, `/` or `:`.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::kp::{Algebra, KPElement, KPError};
use crate::paths::PathError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("unknown edge or vertex `{0}`")]
    UnknownEdge(String),
    #[error("path `{0}` is not composable")]
    NotComposable(String),
}

pub fn parse_kp_expr(text: &str, alg: &Algebra) -> Result<KPElement, ExprError> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0, text, alg };
    let x = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(x)
}

struct Parser<'a, 'g> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
    alg: &'a Algebra<'g>,
}

impl Parser<'_, '_> {
    fn error(&self, message: &str) -> ExprError {
        ExprError::Parse { column: self.pos + 1, message: message.to_owned() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<KPElement, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<KPElement, ExprError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let rhs = self.factor()?;
            acc = self.alg.multiply(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<KPElement, ExprError> {
        self.skip_ws();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => self.rational(),
            Some(c) if c.is_alphabetic() => self.generator(),
            Some(_) => Err(self.error("expected a term")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> BigInt {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().expect("ascii digits")
    }

    fn rational(&mut self) -> Result<KPElement, ExprError> {
        let num = self.digits();
        let mut den = BigInt::from(1);
        if self.peek() == Some('/') {
            self.pos += 1;
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error("expected a denominator"));
            }
            den = self.digits();
            if den == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
        }
        Ok(self.alg.one().scale(&BigRational::new(num, den)))
    }

    fn generator(&mut self) -> Result<KPElement, ExprError> {
        let start = self.pos;
        while self.peek().is_some_and(char::is_alphanumeric) {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        if !["p", "s", "sstar"].contains(&name.as_str()) {
            self.pos = start;
            return Err(self.error(&format!("unknown generator `{name}`")));
        }
        if !self.eat('(') {
            return Err(self.error("expected `(`"));
        }
        let open = self.pos;
        while self.peek().is_some_and(|c| c != ')') {
            self.pos += 1;
        }
        if self.peek() != Some(')') {
            return Err(self.error("expected `)`"));
        }
        let lo = self.chars.get(open).map_or(self.text.len(), |&(i, _)| i);
        let hi = self.chars[self.pos].0;
        let literal = self.text[lo..hi].trim().to_owned();
        self.pos += 1;
        let result = match name.as_str() {
            "p" => self.alg.p_named(&literal),
            "s" => self.alg.s_named(&literal),
            _ => self.alg.sstar_named(&literal),
        };
        result.map_err(|err| match err {
            KPError::UnknownVertex(n) | KPError::Path(PathError::Unknown(n)) => ExprError::UnknownEdge(n),
            KPError::Path(PathError::NotComposable(_)) => ExprError::NotComposable(literal.clone()),
            other => ExprError::Parse { column: open + 1, message: other.to_string() },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn examples_from_g1() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        let eval = |s: &str| parse_kp_expr(s, &alg).unwrap();
        assert!(alg.is_zero(&eval("sstar(g) * s(g) - p(a)")));
        assert!(alg.is_zero(&eval("p(a) * p(a) - p(a)")));
        let ef = eval("s(e.f)");
        assert_eq!(ef.display(&g), "s(e.f)");
        assert!(alg.is_zero(&eval("s(g)*sstar(g) + s(e)*sstar(e) - p(a)")));
        assert!(alg.is_zero(&eval("-(2/3)*p(b) + 2/3 * p(b)")));
    }

    #[test]
    fn orthogonal_loops() {
        let g = fixtures::g2();
        let alg = Algebra::new(&g).unwrap();
        assert!(parse_kp_expr("sstar(x) * s(y)", &alg).unwrap().is_empty());
    }

    #[test]
    fn display_round_trips() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        for text in ["0", "p(a)", "s(a)*sstar(b)", "3/2*s(e) - 2*sstar(g.e)", "s(e)*sstar(e) + s(g)*sstar(g)"] {
            let x = parse_kp_expr(text, &alg).unwrap();
            assert_eq!(parse_kp_expr(&x.display(&g), &alg).unwrap(), x, "{text}");
        }
    }

    #[test]
    fn errors() {
        let g = fixtures::g1();
        let alg = Algebra::new(&g).unwrap();
        assert_eq!(parse_kp_expr("s(z)", &alg), Err(ExprError::UnknownEdge("z".into())));
        assert_eq!(parse_kp_expr("s(f.e)", &alg), Err(ExprError::NotComposable("f.e".into())));
        assert!(matches!(parse_kp_expr("p(a) +", &alg), Err(ExprError::Parse { column: 7, .. })));
        assert!(matches!(parse_kp_expr("q(a)", &alg), Err(ExprError::Parse { column: 1, .. })));
        assert!(matches!(parse_kp_expr("(p(a)", &alg), Err(ExprError::Parse { .. })));
    }
}
