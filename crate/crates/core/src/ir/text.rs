//! Text form of expressions.
//!
//! ```text
//! obj  := "1" | "I" | name | "(" obj "*" obj ")"
//! mor  := "id(" obj ")" | "gen" name | "comp(" mor "," mor ")" | "ten(" mor "," mor ")"
//!       | "assoc(" obj "," obj "," obj ["," "inv"] ")" | "lunit(" obj ["," "inv"] ")"
//!       | "runit(" obj ["," "inv"] ")" | "braid(" obj "," obj ["," "inv"] ")"
//!       | "scale(" real "," real "," mor ")" | "sum(" [mor {"," mor}] ")"
//! real := integer | integer "/" integer | float literal
//! ```
//!
//! The unit renders as `1`. Whitespace is ignored between tokens.

use thiserror::Error;

use super::{MorExpr, ObjectExpr};
use crate::scalar::{Coeff, Real};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

pub fn render_object(o: &ObjectExpr) -> String {
    let mut s = String::new();
    write_object(o, &mut s);
    s
}

fn write_object(o: &ObjectExpr, s: &mut String) {
    match o {
        ObjectExpr::Unit => s.push('1'),
        ObjectExpr::Gen(n) => s.push_str(n),
        ObjectExpr::Tensor(a, b) => {
            s.push('(');
            write_object(a, s);
            s.push_str(" * ");
            write_object(b, s);
            s.push(')');
        }
    }
}

pub fn render(e: &MorExpr) -> String {
    let mut s = String::new();
    write_mor(e, &mut s);
    s
}

fn inv_suffix(inv: bool) -> &'static str {
    if inv {
        ", inv"
    } else {
        ""
    }
}

fn write_mor(e: &MorExpr, s: &mut String) {
    match e {
        MorExpr::Identity(a) => {
            s.push_str("id(");
            write_object(a, s);
            s.push(')');
        }
        MorExpr::Gen(n) => {
            s.push_str("gen ");
            s.push_str(n);
        }
        MorExpr::Compose(f, g) | MorExpr::Tensor(f, g) => {
            s.push_str(if matches!(e, MorExpr::Compose(..)) {
                "comp("
            } else {
                "ten("
            });
            write_mor(f, s);
            s.push_str(", ");
            write_mor(g, s);
            s.push(')');
        }
        MorExpr::Assoc(a, b, c, inv) => {
            s.push_str(&format!(
                "assoc({}, {}, {}{})",
                render_object(a),
                render_object(b),
                render_object(c),
                inv_suffix(*inv)
            ));
        }
        MorExpr::LUnit(a, inv) => {
            s.push_str(&format!("lunit({}{})", render_object(a), inv_suffix(*inv)))
        }
        MorExpr::RUnit(a, inv) => {
            s.push_str(&format!("runit({}{})", render_object(a), inv_suffix(*inv)))
        }
        MorExpr::Braid(a, b, inv) => s.push_str(&format!(
            "braid({}, {}{})",
            render_object(a),
            render_object(b),
            inv_suffix(*inv)
        )),
        MorExpr::Scale(c, f) => {
            s.push_str(&format!("scale({}, {}, ", c.re.render(), c.im.render()));
            write_mor(f, s);
            s.push(')');
        }
        MorExpr::Sum(ts) => {
            s.push_str("sum(");
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    s.push_str(", ");
                }
                write_mor(t, s);
            }
            s.push(')');
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(d) => self.err(format!("expected `{c}`, found `{d}`")),
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn name(&mut self) -> Result<String, SyntaxError> {
        self.skip_ws();
        let r = self.rest();
        match r.chars().next() {
            Some(c) if is_name_start(c) => {}
            Some(c) => return self.err(format!("expected a name, found `{c}`")),
            None => return self.err("expected a name, found end of input"),
        }
        let len = r.find(|c: char| !is_name_char(c)).unwrap_or(r.len());
        self.pos += len;
        Ok(r[..len].to_string())
    }

    fn object(&mut self) -> Result<ObjectExpr, SyntaxError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let a = self.object()?;
                self.expect('*')?;
                let b = self.object()?;
                self.expect(')')?;
                Ok(ObjectExpr::tensor(a, b))
            }
            Some('1') => {
                self.pos += 1;
                if self.rest().starts_with(|c: char| is_name_char(c)) {
                    return self.err("unexpected characters after `1`");
                }
                Ok(ObjectExpr::Unit)
            }
            _ => {
                let n = self.name()?;
                Ok(if n == "I" {
                    ObjectExpr::Unit
                } else {
                    ObjectExpr::Gen(n)
                })
            }
        }
    }

    /// Optional trailing `, inv` before the closing parenthesis.
    fn inv_flag(&mut self) -> Result<bool, SyntaxError> {
        if self.peek() == Some(',') {
            self.pos += 1;
            let at = self.pos;
            let w = self.name()?;
            if w != "inv" {
                self.pos = at;
                return self.err(format!("expected `inv`, found `{w}`"));
            }
            self.expect(')')?;
            Ok(true)
        } else {
            self.expect(')')?;
            Ok(false)
        }
    }

    fn real(&mut self) -> Result<Real, SyntaxError> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | '/' | 'e' | 'E')))
            .unwrap_or(r.len());
        if len == 0 {
            return self.err("expected a number");
        }
        match Real::parse(&r[..len]) {
            Some(x) => {
                self.pos += len;
                Ok(x)
            }
            None => self.err(format!("malformed number `{}`", &r[..len])),
        }
    }

    fn mor(&mut self) -> Result<MorExpr, SyntaxError> {
        let start = self.pos;
        let head = self.name()?;
        if head == "gen" {
            return Ok(MorExpr::Gen(self.name()?));
        }
        self.expect('(')?;
        let e = match head.as_str() {
            "id" => {
                let a = self.object()?;
                self.expect(')')?;
                MorExpr::Identity(a)
            }
            "comp" | "ten" => {
                let f = self.mor()?;
                self.expect(',')?;
                let g = self.mor()?;
                self.expect(')')?;
                if head == "comp" {
                    MorExpr::Compose(Box::new(f), Box::new(g))
                } else {
                    MorExpr::Tensor(Box::new(f), Box::new(g))
                }
            }
            "assoc" => {
                let a = self.object()?;
                self.expect(',')?;
                let b = self.object()?;
                self.expect(',')?;
                let c = self.object()?;
                MorExpr::Assoc(a, b, c, self.inv_flag()?)
            }
            "lunit" | "runit" => {
                let a = self.object()?;
                let inv = self.inv_flag()?;
                if head == "lunit" {
                    MorExpr::LUnit(a, inv)
                } else {
                    MorExpr::RUnit(a, inv)
                }
            }
            "braid" => {
                let a = self.object()?;
                self.expect(',')?;
                let b = self.object()?;
                MorExpr::Braid(a, b, self.inv_flag()?)
            }
            "scale" => {
                let re = self.real()?;
                self.expect(',')?;
                let im = self.real()?;
                self.expect(',')?;
                let f = self.mor()?;
                self.expect(')')?;
                MorExpr::Scale(Coeff::new(re, im), Box::new(f))
            }
            "sum" => {
                let mut ts = Vec::new();
                if self.peek() == Some(')') {
                    self.pos += 1;
                } else {
                    loop {
                        ts.push(self.mor()?);
                        match self.peek() {
                            Some(',') => self.pos += 1,
                            _ => {
                                self.expect(')')?;
                                break;
                            }
                        }
                    }
                }
                MorExpr::Sum(ts)
            }
            _ => {
                self.pos = start;
                return self.err(format!("unknown form `{head}`"));
            }
        };
        Ok(e)
    }
}

pub fn parse(src: &str) -> Result<MorExpr, SyntaxError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.mor()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_object(src: &str) -> Result<ObjectExpr, SyntaxError> {
    let mut p = Parser { src, pos: 0 };
    let o = p.object()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(o)
}
