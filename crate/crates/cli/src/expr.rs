//! Matroid constructor expressions.
//!
//! ```text
//! expr    := product ('+' product)*
//! product := postfix ('*' postfix)*
//! postfix := atom ('|' set | '/' set)*
//! atom    := U(r,n;labels) | U(r,n) | I(x) | Z(x) | dual(expr) | (expr)
//! set     := '{' [label (',' label)*] '}'
//! ```
//!
//! `+` is the direct sum and `*` the free product; both are left
//! associative and `*` binds tighter. `M|{..}` restricts and `M/{..}`
//! contracts.

use matroid_minor::{GroundSet, Matroid, MatroidError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("at position {pos}: {source}")]
    Matroid {
        pos: usize,
        #[source]
        source: MatroidError,
    },
}

pub fn parse_matroid_expr(text: &str) -> Result<Matroid, ExprError> {
    let mut p = Parser { src: text, pos: 0 };
    let m = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(m)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> ExprError {
        ExprError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn lift<T>(&self, pos: usize, r: Result<T, MatroidError>) -> Result<T, ExprError> {
        r.map_err(|source| ExprError::Matroid { pos, source })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<String, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if c.is_alphanumeric() || c == '_' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.error("expected a label"));
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn number(&mut self) -> Result<usize, ExprError> {
        let start = self.pos;
        let word = self.ident()?;
        word.parse().map_err(|_| ExprError::Parse {
            pos: start,
            msg: format!("expected a number, found '{word}'"),
        })
    }

    fn expr(&mut self) -> Result<Matroid, ExprError> {
        let mut m = self.product()?;
        loop {
            let pos = self.pos;
            if !self.eat('+') {
                return Ok(m);
            }
            let rhs = self.product()?;
            m = self.lift(pos, m.direct_sum(&rhs))?;
        }
    }

    fn product(&mut self) -> Result<Matroid, ExprError> {
        let mut m = self.postfix()?;
        loop {
            let pos = self.pos;
            if !self.eat('*') {
                return Ok(m);
            }
            let rhs = self.postfix()?;
            m = self.lift(pos, m.free_product(&rhs))?;
        }
    }

    fn postfix(&mut self) -> Result<Matroid, ExprError> {
        let mut m = self.atom()?;
        loop {
            let pos = self.pos;
            if self.eat('|') {
                let labels = self.set()?;
                let u = self.lift(pos, m.ground().mask_of(&labels))?;
                m = self.lift(pos, m.restrict(u))?;
            } else if self.eat('/') {
                let labels = self.set()?;
                let u = self.lift(pos, m.ground().mask_of(&labels))?;
                m = self.lift(pos, m.contract(u))?;
            } else {
                return Ok(m);
            }
        }
    }

    fn set(&mut self) -> Result<Vec<String>, ExprError> {
        self.expect('{')?;
        let mut labels = Vec::new();
        if self.eat('}') {
            return Ok(labels);
        }
        loop {
            labels.push(self.ident()?);
            if self.eat('}') {
                return Ok(labels);
            }
            self.expect(',')?;
        }
    }

    fn atom(&mut self) -> Result<Matroid, ExprError> {
        if self.eat('(') {
            let m = self.expr()?;
            self.expect(')')?;
            return Ok(m);
        }
        self.skip_ws();
        let pos = self.pos;
        let name = self.ident()?;
        self.expect('(')?;
        let m = match name.as_str() {
            "U" => {
                let r = self.number()?;
                self.expect(',')?;
                let n = self.number()?;
                let labels: Vec<String> = if self.eat(';') {
                    let mut v = vec![self.ident()?];
                    while self.eat(',') {
                        v.push(self.ident()?);
                    }
                    v
                } else {
                    (0..n).map(|i| i.to_string()).collect()
                };
                if labels.len() != n {
                    return Err(ExprError::Parse {
                        pos,
                        msg: format!("U({r},{n}) needs {n} labels, found {}", labels.len()),
                    });
                }
                let ground = self.lift(pos, GroundSet::new(labels))?;
                self.lift(pos, Matroid::uniform(r, ground))?
            }
            "I" => {
                let x = self.ident()?;
                self.lift(pos, Matroid::isthmus(&x))?
            }
            "Z" => {
                let x = self.ident()?;
                self.lift(pos, Matroid::loop_on(&x))?
            }
            "dual" => self.expr()?.dual(),
            _ => {
                return Err(ExprError::Parse {
                    pos,
                    msg: format!("unknown constructor '{name}'"),
                })
            }
        };
        self.expect(')')?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GroundSet {
        GroundSet::new(s.chars().map(|c| c.to_string())).unwrap()
    }

    #[test]
    fn free_product_of_isthmus_and_loop() {
        let m = parse_matroid_expr("I(a)*Z(b)").unwrap();
        assert_eq!(m, Matroid::uniform(1, g("ab")).unwrap());
    }

    #[test]
    fn direct_sum_gives_d() {
        let m = parse_matroid_expr("U(1,2;a,b)+U(1,2;c,d)").unwrap();
        let d = Matroid::uniform(1, g("ab"))
            .unwrap()
            .direct_sum(&Matroid::uniform(1, g("cd")).unwrap())
            .unwrap();
        assert_eq!(m, d);
    }

    #[test]
    fn overlap_is_reported() {
        match parse_matroid_expr("I(a)*I(a)") {
            Err(ExprError::Matroid {
                source: MatroidError::GroundOverlap(_),
                ..
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn precedence_and_postfix() {
        let a = parse_matroid_expr("I(a)+I(b)*Z(c)").unwrap();
        let b = parse_matroid_expr("I(a)+(I(b)*Z(c))").unwrap();
        assert_eq!(a, b);
        let r = parse_matroid_expr("U(2,4;a,b,c,d)|{a,b}").unwrap();
        assert_eq!(r, Matroid::uniform(2, g("ab")).unwrap());
        let c = parse_matroid_expr("U(2,4;a,b,c,d)/{a}").unwrap();
        assert_eq!(c, Matroid::uniform(1, g("bcd")).unwrap());
        let d = parse_matroid_expr("dual(I(a)*Z(b))").unwrap();
        assert_eq!(d, Matroid::uniform(1, g("ab")).unwrap());
        assert_eq!(parse_matroid_expr(" U(0,0) ").unwrap(), Matroid::empty());
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_matroid_expr("I(a)+"), Err(ExprError::Parse { pos: 5, .. })));
        assert!(matches!(parse_matroid_expr("X(a)"), Err(ExprError::Parse { pos: 0, .. })));
        assert!(matches!(parse_matroid_expr("U(1,2;a)"), Err(ExprError::Parse { .. })));
        assert!(matches!(parse_matroid_expr("I(a) I(b)"), Err(ExprError::Parse { pos: 5, .. })));
        assert!(matches!(parse_matroid_expr("U(3,2)"), Err(ExprError::Matroid { .. })));
    }
}
