//! Recursive-descent parser for rational functions in `j`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := base ("^" uint)?
//! base   := "j" | int | "(" expr ")"
//! int    := "-"? digit+
//! ```

use telesum::{ExactRational, RationalFunction};
use thiserror::Error;

/// Largest accepted exponent; keeps `j^999999999` from exhausting memory.
const MAX_EXPONENT: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at position {pos}: division by zero")]
    ZeroDenominator { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.error(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.error(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a digit");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction, ParseError> {
        let mut acc = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let op_pos = self.pos;
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if op == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)
                    .map_err(|_| ParseError::ZeroDenominator { pos: op_pos })?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RationalFunction, ParseError> {
        let base = self.base()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp_pos = self.pos;
        let e: u32 = match self.digits()?.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => {
                return Err(ParseError::Syntax {
                    pos: exp_pos,
                    msg: format!("exponent larger than {MAX_EXPONENT}"),
                })
            }
        };
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<RationalFunction, ParseError> {
        match self.peek() {
            Some(b'j') => {
                self.pos += 1;
                Ok(RationalFunction::var())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                let d = self.digits()?;
                Ok(int_rf(d, true))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                Ok(int_rf(d, false))
            }
            Some(c) => self.error(format!("unexpected '{}'", c as char)),
            None => self.error("unexpected end of input"),
        }
    }
}

fn int_rf(digits: &str, negative: bool) -> RationalFunction {
    let v: ExactRational = digits.parse().expect("validated digits");
    RationalFunction::constant(if negative { -v } else { v })
}

/// Parses `text` into a reduced rational function of `j`.
pub fn parse_ratfun(text: &str) -> Result<RationalFunction, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let r = p.expr()?;
    match p.peek() {
        None => Ok(r),
        Some(c) => p.error(format!("unexpected '{}'", c as char)),
    }
}

/// Text that [`parse_ratfun`] reads back to the same function.
pub fn render(r: &RationalFunction) -> String {
    r.display_in("j")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use telesum::Polynomial;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_i64(n), Polynomial::from_i64(d)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(parse_ratfun("j/(j+2)").unwrap(), rf(&[0, 1], &[2, 1]));
        assert_eq!(parse_ratfun("(j^2-1)/(j^2+2*j+1)").unwrap(), rf(&[-1, 1], &[1, 1]));
        assert_eq!(parse_ratfun("1/0"), Err(ParseError::ZeroDenominator { pos: 1 }));
    }

    #[test]
    fn precedence_and_whitespace() {
        assert_eq!(parse_ratfun(" 2 * j ^ 2 + 1 ").unwrap(), rf(&[1, 0, 2], &[1]));
        assert_eq!(parse_ratfun("1/2/j").unwrap(), rf(&[1], &[0, 2]));
        assert_eq!(parse_ratfun("j - -3").unwrap(), rf(&[3, 1], &[1]));
        assert_eq!(parse_ratfun("(j+1)^0").unwrap(), RationalFunction::one());
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse_ratfun("j+"),
            Err(ParseError::Syntax {
                pos: 2,
                msg: "unexpected end of input".into()
            })
        );
        assert!(matches!(parse_ratfun("(j+1"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_ratfun("x"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_ratfun("-j"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_ratfun("j^-1"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(
            parse_ratfun("j^99999"),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(parse_ratfun("j j"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(
            parse_ratfun("j/(j-j)"),
            Err(ParseError::ZeroDenominator { pos: 1 })
        ));
    }

    #[test]
    fn render_examples() {
        assert_eq!(render(&rf(&[0, 1], &[2, 1])), "(j)/(j + 2)");
        assert_eq!(render(&rf(&[0, -1], &[1])), "-1*j");
        assert_eq!(render(&rf(&[1, 2], &[0, 0, 2])), "(j + 1/2)/(j^2)");
    }

    fn small_rf() -> impl Strategy<Value = RationalFunction> {
        let poly = prop::collection::vec(-6i64..=6, 1..4).prop_map(|c| Polynomial::from_i64(&c));
        (poly.clone(), poly.prop_filter("nonzero", |p| !p.is_zero()))
            .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn round_trip(r in small_rf()) {
            let text = render(&r);
            let back = parse_ratfun(&text).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert_eq!(render(&back), text);
        }
    }
}
