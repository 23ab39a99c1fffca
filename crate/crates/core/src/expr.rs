//! Text form of tower elements.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? INT)*
//! atom  := INT | 'zeta' '(' INT ')' | 'c' '(' INT ')' | '(' expr ')'
//! ```
//!
//! `c(k)` stands for `zeta(k) + zeta(k)^-1`. The canonical rendering is a sum
//! of `q*zeta(k)^j` terms in ascending `j` at the minimal level `k`, and parses
//! back to the same element.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::tower::{CycloElem, Rational, DEFAULT_MAX_LEVEL};

/// Largest accepted exponent magnitude in `^`.
pub const MAX_EXPONENT: u64 = 1 << 16;

pub fn parse_element(src: &str) -> Result<CycloElem> {
    parse_element_with(src, DEFAULT_MAX_LEVEL)
}

/// Parses and evaluates `src`; `zeta(k)` and `c(k)` with `k > max_level` are rejected.
pub fn parse_element_with(src: &str, max_level: u32) -> Result<CycloElem> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        max_level,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_level: u32,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<CycloElem> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloElem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.eat(b'/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycloElem> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<CycloElem> {
        let mut acc = self.atom()?;
        while self.eat(b'^') {
            let negative = self.eat(b'-');
            let start = self.pos;
            let e = self.integer()?;
            if e > BigInt::from(MAX_EXPONENT) {
                self.pos = start;
                return Err(self.error("exponent too large"));
            }
            let e = i64::try_from(e).expect("bounded exponent");
            acc = acc.pow(if negative { -e } else { e })?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<CycloElem> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(CycloElem::from_rational(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let min = match name {
                    "zeta" => 1,
                    "c" => 2,
                    _ => {
                        self.pos = start;
                        return Err(self.error(&format!("unknown name '{name}'")));
                    }
                };
                self.expect(b'(')?;
                let arg_pos = self.peek().map(|_| self.pos).unwrap_or(self.pos);
                let k = self.integer()?;
                self.expect(b')')?;
                let k = u32::try_from(&k).unwrap_or(u32::MAX);
                if k < min {
                    self.pos = arg_pos;
                    return Err(self.error(&format!("{name}(k) needs k >= {min}")));
                }
                if k > self.max_level {
                    return Err(Error::LevelBudgetExceeded {
                        needed: k,
                        max: self.max_level,
                    });
                }
                Ok(if name == "zeta" {
                    CycloElem::zeta(k)
                } else {
                    CycloElem::cosgen(k)
                })
            }
            Some(_) => Err(self.error("expected a number, zeta(k), c(k) or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(digits.parse().expect("digits"))
    }
}

fn render_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical text of an element; `parse_element(render_element(x)) == x`.
pub fn render_element(x: &CycloElem) -> String {
    if x.level() == 1 {
        return render_rational(&x.coeff(0));
    }
    let k = x.level();
    let parts: Vec<String> = x
        .terms()
        .iter()
        .map(|(j, q)| {
            let unit = match j {
                0 => return render_rational(q),
                1 => format!("zeta({k})"),
                _ => format!("zeta({k})^{j}"),
            };
            if q.is_one() {
                unit
            } else {
                format!("{}*{unit}", render_rational(q))
            }
        })
        .collect();
    parts.join(" + ")
}

/// Rendering used inside polynomial coefficient lists.
pub fn render_list(xs: &[CycloElem]) -> Vec<String> {
    xs.iter().map(render_element).collect()
}
