//! Text grammar for coefficients, vector fields and algebra files.
//!
//! ```text
//! field    := ['-'] term (('+'|'-') term)* | '0'
//! term     := (factor '*')* 'd_' var
//! factor   := rational | var | var '^' nat
//!           | 'exp' '(' linform ')' | 'sin' '(' linform ')' | 'cos' '(' linform ')'
//! linform  := ['-'] lterm (('+'|'-') lterm)*
//! lterm    := rational ['*'] var | var
//! rational := int | int '/' posint
//! ```
//!
//! Whitespace is ignored. An algebra file has a `vars:` line, an optional
//! `weights:` line, one generator per line, and an optional `options:` block
//! of `key = value` lines. `#` starts a comment.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::coeffring::{ExpPolyCoeff, Frequency, TermKey, Trig};
use crate::error::{Error, Result};
use crate::scalar::fmt_q;
use crate::vfield::{Ctx, VarContext, VectorField};
use crate::Rational;

const RESERVED: [&str; 3] = ["exp", "sin", "cos"];

/// Identifier `[A-Za-z][A-Za-z0-9_]*`, not reserved and not starting with `d_`.
pub fn is_valid_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !s.starts_with("d_")
        && !RESERVED.contains(&s)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Deriv(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Deriv(s) => format!("`d_{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str, line: usize) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, col));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            match s.strip_prefix("d_") {
                Some(v) if !v.is_empty() => out.push((Tok::Deriv(v.to_string()), col)),
                _ => out.push((Tok::Ident(s), col)),
            }
        } else {
            return Err(Error::parse(line, col, format!("unexpected character `{c}`")));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    ctx: &'a VarContext,
}

impl<'a> Parser<'a> {
    fn new(src: &str, line: usize, ctx: &'a VarContext) -> Result<Self> {
        Ok(Self {
            toks: lex(src, line)?,
            pos: 0,
            line,
            ctx,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, expected: &str) -> Result<T> {
        Err(Error::parse(
            self.line,
            self.col(),
            format!("expected {expected}, found {}", describe(self.peek())),
        ))
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(what)
        }
    }

    fn var(&mut self, name: &str) -> Result<usize> {
        self.ctx
            .index_of(name)
            .map_or_else(|| self.err(&format!("a declared variable (got `{name}`)")), Ok)
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = match self.bump() {
            Tok::Int(n) => n,
            _ => {
                self.pos -= 1;
                return self.err("a number");
            }
        };
        if *self.peek() == Tok::Slash {
            self.bump();
            let d = match self.peek().clone() {
                Tok::Int(d) if !d.is_zero() => d,
                _ => return self.err("a positive denominator"),
            };
            self.bump();
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    fn linform(&mut self) -> Result<Frequency> {
        let n = self.ctx.len();
        let mut acc = vec![Rational::zero(); n];
        let mut sign = Rational::one();
        if *self.peek() == Tok::Minus {
            self.bump();
            sign = -sign;
        }
        loop {
            let c = match self.peek() {
                Tok::Int(_) => {
                    let c = self.rational()?;
                    if *self.peek() == Tok::Star {
                        self.bump();
                    }
                    c
                }
                _ => Rational::one(),
            };
            let name = match self.peek().clone() {
                Tok::Ident(s) => s,
                _ => return self.err("a variable in the linear form"),
            };
            let i = self.var(&name)?;
            self.bump();
            acc[i] += sign * c;
            match self.peek() {
                Tok::Plus => sign = Rational::one(),
                Tok::Minus => sign = -Rational::one(),
                _ => break,
            }
            self.bump();
        }
        Ok(Frequency(acc))
    }

    fn factor(&mut self) -> Result<ExpPolyCoeff> {
        let n = self.ctx.len();
        match self.peek().clone() {
            Tok::Int(_) => Ok(ExpPolyCoeff::constant(n, self.rational()?)),
            Tok::Ident(s) if RESERVED.contains(&s.as_str()) => {
                self.bump();
                self.expect(Tok::LParen, "`(`")?;
                let f = self.linform()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(match s.as_str() {
                    "exp" => ExpPolyCoeff::exp(f),
                    "sin" => ExpPolyCoeff::sin(f),
                    _ => ExpPolyCoeff::cos(f),
                })
            }
            Tok::Ident(s) => {
                let i = self.var(&s)?;
                self.bump();
                let mut e = 1u32;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    e = match self.peek().clone() {
                        Tok::Int(k) => u32::try_from(k).map_err(|_| {
                            Error::parse(self.line, self.col(), "exponent too large")
                        })?,
                        _ => return self.err("a natural exponent"),
                    };
                    self.bump();
                }
                Ok(ExpPolyCoeff::var(n, i).pow(e))
            }
            _ => self.err("a number, variable, `exp`, `sin` or `cos`"),
        }
    }

    /// Product of factors, optionally terminated by `d_var`.
    fn product(&mut self, allow_deriv: bool) -> Result<(ExpPolyCoeff, Option<usize>)> {
        let mut acc = ExpPolyCoeff::one(self.ctx.len());
        loop {
            if allow_deriv {
                if let Tok::Deriv(v) = self.peek().clone() {
                    let i = self.var(&v)?;
                    self.bump();
                    return Ok((acc, Some(i)));
                }
            }
            acc = &acc * &self.factor()?;
            if *self.peek() == Tok::Star {
                self.bump();
            } else if allow_deriv {
                return self.err("`*`");
            } else {
                return Ok((acc, None));
            }
        }
    }

    fn sum(&mut self, field: bool) -> Result<Vec<(ExpPolyCoeff, Option<usize>)>> {
        let mut out = Vec::new();
        if matches!(self.peek(), Tok::Int(z) if z.is_zero())
            && matches!(self.peek2(), Tok::End)
        {
            self.bump();
            return Ok(out);
        }
        let mut negate = false;
        if *self.peek() == Tok::Minus {
            self.bump();
            negate = true;
        }
        loop {
            let (c, d) = self.product(field)?;
            out.push((if negate { -&c } else { c }, d));
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::End => break,
                _ => return self.err("`+`, `-` or end of input"),
            }
            self.bump();
        }
        Ok(out)
    }
}

/// Parses a vector field; `line` is reported in errors.
pub fn parse_field_at(text: &str, ctx: &Ctx, line: usize) -> Result<VectorField> {
    let mut p = Parser::new(text, line, ctx)?;
    let mut v = VectorField::zero(ctx.clone());
    for (c, d) in p.sum(true)? {
        v = v.add(&VectorField::along(ctx.clone(), d.expect("field terms carry d_"), c));
    }
    Ok(v)
}

pub fn parse_field(text: &str, ctx: &Ctx) -> Result<VectorField> {
    parse_field_at(text, ctx, 1)
}

pub fn parse_fields<S: AsRef<str>>(ctx: &Ctx, texts: &[S]) -> Result<Vec<VectorField>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_field_at(t.as_ref(), ctx, i + 1))
        .collect()
}

/// Parses a coefficient function (no `d_` allowed).
pub fn parse_coeff(text: &str, ctx: &Ctx) -> Result<ExpPolyCoeff> {
    let mut p = Parser::new(text, 1, ctx)?;
    let mut acc = ExpPolyCoeff::zero(ctx.len());
    for (c, _) in p.sum(false)? {
        acc = &acc + &c;
    }
    Ok(acc)
}

fn format_linform(f: &Frequency, names: &[String]) -> String {
    let mut s = String::new();
    for (i, c) in f.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&fmt_q(&a));
            s.push('*');
        }
        s.push_str(&names[i]);
    }
    s
}

/// Factors of a term key without the coefficient, e.g. `["x^2", "exp(2*y)"]`.
fn key_factors(k: &TermKey, names: &[String]) -> Vec<String> {
    let mut f = Vec::new();
    for (i, &a) in k.mono.iter().enumerate() {
        match a {
            0 => {}
            1 => f.push(names[i].clone()),
            _ => f.push(format!("{}^{a}", names[i])),
        }
    }
    if !k.exp.is_zero() {
        f.push(format!("exp({})", format_linform(&k.exp, names)));
    }
    if let Some(m) = &k.trig_freq {
        let head = if k.trig == Trig::Cos { "cos" } else { "sin" };
        f.push(format!("{head}({})", format_linform(m, names)));
    }
    f
}

/// Appends `± c*factors[*tail]` to `out`.
fn push_term(out: &mut String, c: &Rational, mut factors: Vec<String>, tail: Option<&str>) {
    let neg = c.is_negative();
    let a = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if !a.is_one() || (factors.is_empty() && tail.is_none()) {
        factors.insert(0, fmt_q(&a));
    }
    if let Some(t) = tail {
        factors.push(t.to_string());
    }
    out.push_str(&factors.join("*"));
}

pub fn format_coeff(c: &ExpPolyCoeff, names: &[String]) -> String {
    let mut s = String::new();
    for (k, a) in c.terms() {
        push_term(&mut s, a, key_factors(k, names), None);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

pub fn format_field(v: &VectorField) -> String {
    let names = v.ctx().names();
    let mut s = String::new();
    for (j, c) in v.components().iter().enumerate() {
        let d = format!("d_{}", names[j]);
        for (k, a) in c.terms() {
            push_term(&mut s, a, key_factors(k, names), Some(&d));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// A parsed algebra file.
#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub ctx: Ctx,
    pub generators: Vec<VectorField>,
    pub weights: Option<Vec<u32>>,
    pub options: BTreeMap<String, String>,
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(a, _)| a)
}

fn header<'l>(line: &'l str, key: &str) -> Option<&'l str> {
    let t = line.trim_start();
    t.strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
}

pub fn parse_weights(s: &str, line: usize) -> Result<Vec<u32>> {
    s.split(',')
        .map(|w| {
            w.trim()
                .parse::<u32>()
                .map_err(|_| Error::parse(line, 1, format!("invalid weight `{}`", w.trim())))
        })
        .collect()
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut ctx: Option<Ctx> = None;
        let mut weights = None;
        let mut generators = Vec::new();
        let mut options = BTreeMap::new();
        let mut in_options = false;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            if let Some(rest) = header(line, "vars") {
                if ctx.is_some() {
                    return Err(Error::parse(line_no, 1, "duplicate `vars:` line"));
                }
                let names: Vec<&str> = rest.split(',').map(str::trim).collect();
                ctx = Some(VarContext::new(&names).map_err(|e| Error::parse(line_no, 1, e.to_string()))?);
                continue;
            }
            if let Some(rest) = header(line, "weights") {
                weights = Some(parse_weights(rest, line_no)?);
                continue;
            }
            if header(line, "options").is_some_and(|r| r.trim().is_empty()) {
                in_options = true;
                continue;
            }
            if in_options {
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line_no, 1, "expected `key = value` in options block"))?;
                options.insert(k.trim().to_string(), v.trim().to_string());
                continue;
            }
            let c = ctx
                .as_ref()
                .ok_or_else(|| Error::parse(line_no, 1, "generator before `vars:` line"))?;
            generators.push(parse_field_at(line, c, line_no)?);
        }
        let ctx = ctx.ok_or_else(|| Error::parse(1, 1, "missing `vars:` line"))?;
        if let Some(w) = &weights {
            if w.len() != ctx.len() {
                return Err(Error::parse(1, 1, "weight count differs from variable count"));
            }
        }
        Ok(Self {
            ctx,
            generators,
            weights,
            options,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vars: {}\n", self.ctx.names().join(", "));
        if let Some(w) = &self.weights {
            let w: Vec<String> = w.iter().map(u32::to_string).collect();
            s.push_str(&format!("weights: {}\n", w.join(", ")));
        }
        for g in &self.generators {
            s.push_str(&format_field(g));
            s.push('\n');
        }
        if !self.options.is_empty() {
            s.push_str("options:\n");
            for (k, v) in &self.options {
                s.push_str(&format!("  {k} = {v}\n"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn ctx() -> Ctx {
        VarContext::new(&["x", "y", "z", "u"]).unwrap()
    }

    #[test]
    fn parses_examples() {
        let c = ctx();
        let f = parse_field("y^2*d_x - u*d_u", &c).unwrap();
        assert_eq!(f.component(0), &ExpPolyCoeff::var(4, 1).pow(2));
        assert_eq!(f.component(3), &ExpPolyCoeff::var(4, 3).scale(&q(-1)));
        let e = parse_field("exp(2 x)*d_u", &c).unwrap();
        assert_eq!(e.component(3), &ExpPolyCoeff::exp(Frequency::unit(4, 0, q(2))));
        let s = parse_field("sin(x)*y*d_u", &c).unwrap();
        assert_eq!(
            s.component(3),
            &(&ExpPolyCoeff::sin(Frequency::unit(4, 0, q(1))) * &ExpPolyCoeff::var(4, 1))
        );
        assert_eq!(parse_field("exp(2x)*d_u", &c).unwrap(), e);
        assert_eq!(parse_field("exp(2*x)*d_u", &c).unwrap(), e);
    }

    #[test]
    fn printing() {
        let c = ctx();
        for s in [
            "y^2*d_x - u*d_u",
            "exp(2*x)*d_u",
            "y*sin(x)*d_u",
            "-3/4*x*exp(-x + 1/2*y)*cos(z)*d_y",
            "d_x",
            "0",
        ] {
            assert_eq!(format_field(&parse_field(s, &c).unwrap()), s);
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let c = ctx();
        match parse_field("y*d_q", &c) {
            Err(Error::Parse { line: 1, column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_field("y*", &c), Err(Error::Parse { .. })));
        assert!(matches!(parse_field("y", &c), Err(Error::Parse { .. })));
        assert!(matches!(parse_field("1/0*d_x", &c), Err(Error::Parse { .. })));
        assert!(matches!(parse_field("exp(x^2)*d_x", &c), Err(Error::Parse { .. })));
    }

    #[test]
    fn var_names() {
        assert!(is_valid_var_name("x1"));
        assert!(!is_valid_var_name("d_x"));
        assert!(!is_valid_var_name("exp"));
        assert!(!is_valid_var_name("1x"));
    }

    #[test]
    fn algebra_file_roundtrip() {
        let text = "# heisenberg\nvars: x, y\nweights: 3, 1\nd_x\nd_y # shift\ny*d_x\noptions:\n  jet_order = 6\n";
        let a = AlgebraFile::parse(text).unwrap();
        assert_eq!(a.generators.len(), 3);
        assert_eq!(a.weights, Some(vec![3, 1]));
        assert_eq!(a.options["jet_order"], "6");
        let b = AlgebraFile::parse(&a.to_text()).unwrap();
        assert_eq!(a.generators, b.generators);
        match AlgebraFile::parse("vars: x\nd_x\ny*d_x\n") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
