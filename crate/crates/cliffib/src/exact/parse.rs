//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | name | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{MultiPoly, Vars};
use super::rational::Rational;
use crate::error::{Error, Result};

pub fn parse_poly(text: &str, vars: &Vars) -> Result<MultiPoly> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(b'^') = self.peek() {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "exponent out of range".into(),
                })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let mut q = Rational::from_integer(n);
                if let Some(b'/') = self.peek() {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "division by zero".into(),
                        });
                    }
                    q /= Rational::from_integer(d);
                }
                Ok(MultiPoly::constant(self.vars, q))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(MultiPoly::var(self.vars, i)),
                    None => Err(Error::UnknownVariable {
                        name: name.to_string(),
                        pos: start,
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::vars;
    use crate::exact::rational::rat;

    #[test]
    fn simple_forms() {
        let v = vars(&["s"]);
        let p = parse_poly("s^2-1", &v).unwrap();
        assert_eq!(p.coefficient(&[2]), rat(1));
        assert_eq!(p.coefficient(&[0]), rat(-1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn zero_has_no_terms() {
        let v = vars(&["s", "t"]);
        let p = parse_poly("0", &v).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn rational_literals_and_precedence() {
        let v = vars(&["x"]);
        let p = parse_poly("-1/2*x^2 + 3/4 - -x", &v).unwrap();
        assert_eq!(p.to_string(), "-1/2*x^2 + x + 3/4");
    }

    #[test]
    fn errors_carry_positions() {
        let v = vars(&["s"]);
        assert_eq!(
            parse_poly("s + u", &v),
            Err(Error::UnknownVariable {
                name: "u".into(),
                pos: 4
            })
        );
        match parse_poly("s + * 2", &v) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("(s", &v), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", &v), Err(Error::Syntax { .. })));
    }
}
