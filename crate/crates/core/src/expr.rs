//! Coefficient expressions: a small recursive-descent parser producing
//! [`RatFunc`] values, and a deterministic printer that the parser accepts back.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INTEGER)?
//! atom   := INTEGER | IDENT | '(' expr ')'
//! ```
//!
//! Exponents are non-negative integer literals and cannot be chained.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{MultiPoly, RatFunc, Rational};
use crate::error::{Error, Result};

/// Source text together with the variables it may mention.
#[derive(Clone, Debug)]
pub struct ExprSource<'a> {
    pub text: &'a str,
    pub variables: &'a [String],
}

impl ExprSource<'_> {
    pub fn parse(&self) -> Result<RatFunc> {
        parse_expr(self.text, self.variables)
    }
}

/// Returns true when `name` is usable as a chart variable.
pub fn is_valid_variable(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_expr<S: AsRef<str>>(text: &str, variables: &[S]) -> Result<RatFunc> {
    let vars: Vec<&str> = variables.iter().map(AsRef::as_ref).collect();
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars: &vars,
    };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.syntax("unexpected trailing input"));
    }
    Ok(value.value)
}

struct Parsed {
    value: RatFunc,
    /// Set when the expression is the bare literal `0`.
    literal_zero: bool,
}

impl Parsed {
    fn of(value: RatFunc) -> Self {
        Parsed {
            value,
            literal_zero: false,
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn syntax(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.to_string(),
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

    fn expr(&mut self) -> Result<Parsed> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            let value = if op == b'+' {
                &acc.value + &rhs.value
            } else {
                &acc.value - &rhs.value
            };
            acc = Parsed::of(value);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Parsed> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            let op_pos = self.pos;
            self.pos += 1;
            self.skip_ws();
            let rhs_start = self.pos;
            let rhs = self.unary()?;
            let value = if op == b'*' {
                &acc.value * &rhs.value
            } else if rhs.literal_zero {
                return Err(Error::ZeroDenominatorLiteral { offset: rhs_start });
            } else {
                acc.value.try_div(&rhs.value).map_err(|e| match e {
                    Error::DivisionByZero => Error::Syntax {
                        offset: op_pos,
                        message: "divisor is identically zero".into(),
                    },
                    other => other,
                })?
            };
            acc = Parsed::of(value);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Parsed> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Parsed::of(-inner.value));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Parsed> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let exp_pos = {
            self.skip_ws();
            self.pos
        };
        if self.peek() == Some(b'-') {
            return Err(Error::NegativeExponent { offset: exp_pos });
        }
        let exp = match self.peek() {
            Some(c) if c.is_ascii_digit() => self.integer()?,
            _ => return Err(self.syntax("exponent must be a non-negative integer literal")),
        };
        let exp: u32 = u32::try_from(&exp).map_err(|_| Error::Syntax {
            offset: exp_pos,
            message: "exponent too large".into(),
        })?;
        if self.peek() == Some(b'^') {
            return Err(self.syntax("chained exponents are not allowed"));
        }
        Ok(Parsed::of(base.value.pow(exp)))
    }

    fn atom(&mut self) -> Result<Parsed> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected `)`"));
                }
                self.pos += 1;
                Ok(Parsed::of(inner.value))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                if let Some(c) = self.src.get(self.pos) {
                    if c.is_ascii_alphabetic() || *c == b'.' || *c == b'_' {
                        return Err(self.syntax("malformed number"));
                    }
                }
                Ok(Parsed {
                    literal_zero: n.is_zero(),
                    value: RatFunc::constant(self.nvars(), Rational::from_integer(n)),
                })
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Parsed::of(RatFunc::var(self.nvars(), i))),
                    None => Err(Error::UnknownVariable(name.to_string())),
                }
            }
            Some(_) => Err(self.syntax("unexpected character")),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        digits.parse().map_err(|_| Error::Syntax {
            offset: start,
            message: "expected integer".into(),
        })
    }
}

/// Prints a rational function with the given variable names.
///
/// Numerator and denominator are scaled to coprime integer polynomials; the
/// denominator is omitted when it is `1`. The output always parses back to an
/// equal function.
pub fn print_expr<S: AsRef<str>>(f: &RatFunc, variables: &[S]) -> String {
    let names: Vec<&str> = variables.iter().map(AsRef::as_ref).collect();
    if f.is_zero() {
        return "0".to_string();
    }
    let (nc, np) = f.numer().primitive_part();
    let (dc, dp) = f.denom().primitive_part();
    let c = nc / dc;
    let top = np.scale(&Rational::from_integer(c.numer().clone()));
    let bottom = dp.scale(&Rational::from_integer(c.denom().clone()));
    let top_s = print_poly(&top, &names);
    if bottom.is_one() {
        return top_s;
    }
    let bottom_s = print_poly(&bottom, &names);
    let top_s = if top.num_terms() > 1 {
        format!("({top_s})")
    } else {
        top_s
    };
    let bare_bottom = bottom.as_constant().is_some()
        || (bottom.num_terms() == 1
            && bottom.leading_term().is_some_and(|(m, c)| {
                c.is_one() && m.exponents().iter().filter(|&&e| e > 0).count() == 1
            }));
    if bare_bottom {
        format!("{top_s}/{bottom_s}")
    } else {
        format!("{top_s}/({bottom_s})")
    }
}

/// Prints a polynomial, highest grlex term first.
pub fn print_poly<S: AsRef<str>>(p: &MultiPoly, names: &[S]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let factors: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| {
                let name = names[v].as_ref();
                if e == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        let coeff = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        if factors.is_empty() {
            out.push_str(&coeff);
        } else {
            if !abs.is_one() {
                out.push_str(&coeff);
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}
