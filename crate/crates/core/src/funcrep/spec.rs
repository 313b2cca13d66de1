//! Text format for functions.
//!
//! ```text
//! input    := [field] "f" "=" function
//! field    := "p=" P " n=" N [" mod=[" c0 "," c1 ... "]"]
//! function := "Tr(" term (("+" | "-") term)* ")" [("+" | "-") INT]
//! term     := coef ["*" mono] | mono
//! coef     := "g^" INT | INT
//! mono     := "x" ["^" INT]
//! ```
//!
//! `g` is the primitive element of the field. Whitespace is ignored.
//! Example: `p=3 n=6 f=Tr(g^7*x^98)`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::TraceForm;
use crate::error::{Error, Result};
use crate::gf::{FFElem, FieldCtx, FieldSpec};

/// A coefficient as written: a power of the primitive element or an integer.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coef {
    Gen(i64),
    Int(i64),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecTerm {
    pub negated: bool,
    pub coef: Coef,
    pub exp: u64,
}

/// Field-independent description of a trace form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub terms: Vec<SpecTerm>,
    pub constant: i64,
}

/// A full input line: optional field plus function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedFunction {
    pub field: Option<FieldSpec>,
    pub function: FunctionSpec,
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
    offset: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn pos(&self) -> usize {
        self.offset + self.i
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(
                self.pos(),
                format!("expected '{}'", c as char),
            ))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.i;
        if self.i < self.s.len() && (self.s[self.i] == b'-' || self.s[self.i] == b'+') {
            self.i += 1;
            self.skip_ws();
        }
        let ds = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if ds == self.i {
            return Err(Error::parse(self.offset + start, "expected an integer"));
        }
        let text: String = std::str::from_utf8(&self.s[start..self.i])
            .unwrap_or_default()
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        text.parse().map_err(|_| {
            Error::parse(
                self.offset + start,
                format!("integer '{text}' out of range"),
            )
        })
    }

    fn uint(&mut self) -> Result<u64> {
        let at = self.pos();
        let v = self.int()?;
        u64::try_from(v).map_err(|_| Error::parse(at, "exponent must be non-negative"))
    }
}

impl FunctionSpec {
    /// Parses `Tr(...) [+c]`, with an optional leading `f=`.
    pub fn parse(s: &str) -> Result<FunctionSpec> {
        Self::parse_at(s, 0)
    }

    pub fn parse_at(s: &str, offset: usize) -> Result<FunctionSpec> {
        let mut c = Cursor {
            s: s.as_bytes(),
            i: 0,
            offset,
        };
        if c.peek() == Some(b'f') {
            c.i += 1;
            c.expect(b'=')?;
        }
        if !(c.eat(b'T') && c.s.get(c.i) == Some(&b'r')) {
            return Err(Error::parse(c.pos(), "expected 'Tr('"));
        }
        c.i += 1;
        c.expect(b'(')?;
        let mut terms = Vec::new();
        let mut negated = false;
        if c.eat(b'-') {
            negated = true;
        } else {
            c.eat(b'+');
        }
        loop {
            terms.push(parse_term(&mut c, negated)?);
            if c.eat(b'+') {
                negated = false;
            } else if c.eat(b'-') {
                negated = true;
            } else {
                break;
            }
        }
        c.expect(b')')?;
        let mut constant = 0;
        if c.eat(b'+') {
            constant = c.int()?;
        } else if c.eat(b'-') {
            constant = -c.int()?;
        }
        if c.peek().is_some() {
            return Err(Error::parse(c.pos(), "unexpected trailing input"));
        }
        Ok(FunctionSpec { terms, constant })
    }

    /// Instantiates the form in `ctx`, reading `g` as primitive^s.
    pub fn instantiate_with(&self, ctx: &Arc<FieldCtx>, s: i64) -> Result<TraceForm> {
        let terms = self.terms.iter().map(|t| {
            let c = match t.coef {
                Coef::Gen(m) => ctx.gen_pow(m.wrapping_mul(s)),
                Coef::Int(v) => ctx.from_int(v),
            };
            let c = if t.negated { ctx.neg(c) } else { c };
            (c, t.exp)
        });
        let k = self.constant.rem_euclid(ctx.p() as i64) as u32;
        TraceForm::new(ctx.clone(), terms.collect::<Vec<(FFElem, u64)>>(), k)
    }

    pub fn instantiate(&self, ctx: &Arc<FieldCtx>) -> Result<TraceForm> {
        self.instantiate_with(ctx, 1)
    }

    /// True iff some coefficient is written as a power of `g`.
    pub fn uses_generator(&self) -> bool {
        self.terms
            .iter()
            .any(|t| matches!(t.coef, Coef::Gen(m) if m != 0))
    }
}

fn parse_term(c: &mut Cursor<'_>, negated: bool) -> Result<SpecTerm> {
    let mut coef = Coef::Int(1);
    let mut exp = None;
    match c.peek() {
        Some(b'g') => {
            c.i += 1;
            c.expect(b'^')?;
            coef = Coef::Gen(c.int()?);
            if c.eat(b'*') {
                exp = Some(parse_mono(c)?);
            }
        }
        Some(b'x') => exp = Some(parse_mono(c)?),
        Some(d) if d.is_ascii_digit() => {
            coef = Coef::Int(c.int()?);
            if c.eat(b'*') {
                exp = Some(parse_mono(c)?);
            }
        }
        _ => return Err(Error::parse(c.pos(), "expected a term")),
    }
    Ok(SpecTerm {
        negated,
        coef,
        exp: exp.unwrap_or(0),
    })
}

fn parse_mono(c: &mut Cursor<'_>) -> Result<u64> {
    if !c.eat(b'x') {
        return Err(Error::parse(c.pos(), "expected 'x'"));
    }
    if c.eat(b'^') {
        c.uint()
    } else {
        Ok(1)
    }
}

impl ParsedFunction {
    /// Parses `[field] f=...`.
    pub fn parse(s: &str) -> Result<ParsedFunction> {
        let at = find_function_start(s);
        match at {
            Some(i) => {
                let head = &s[..i];
                let field = if head.trim().is_empty() {
                    None
                } else {
                    Some(FieldSpec::parse_at(head, 0)?)
                };
                Ok(ParsedFunction {
                    field,
                    function: FunctionSpec::parse_at(&s[i..], i)?,
                })
            }
            None => Err(Error::parse(s.len(), "missing 'f='")),
        }
    }

    /// Builds the field (when given) and the trace form.
    pub fn build(&self) -> Result<(Arc<FieldCtx>, TraceForm)> {
        let field = self
            .field
            .as_ref()
            .ok_or_else(|| Error::parse(0, "missing field 'p=.. n=..'"))?;
        let ctx = field.build()?;
        let tf = self.function.instantiate(&ctx)?;
        Ok((ctx, tf))
    }
}

fn find_function_start(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    (0..b.len()).find(|&i| {
        b[i] == b'f'
            && (i == 0 || b[i - 1].is_ascii_whitespace())
            && b[i + 1..].iter().find(|c| !c.is_ascii_whitespace()) == Some(&b'=')
    })
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("f=Tr(")?;
        for (i, t) in self.terms.iter().enumerate() {
            if t.negated {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            match t.coef {
                Coef::Gen(m) => write!(f, "g^{m}*")?,
                Coef::Int(1) => {}
                Coef::Int(v) => write!(f, "{v}*")?,
            }
            write!(f, "x^{}", t.exp)?;
        }
        f.write_str(")")?;
        match self.constant {
            0 => Ok(()),
            c if c > 0 => write!(f, "+{c}"),
            c => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for ParsedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(fs) = &self.field {
            write!(f, "{fs} ")?;
        }
        write!(f, "{}", self.function)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table_row() {
        let p = ParsedFunction::parse("p=3 n=6 f=Tr(g^7*x^98)").unwrap();
        assert_eq!(
            p.field,
            Some(FieldSpec {
                p: 3,
                n: 6,
                modulus: None
            })
        );
        assert_eq!(
            p.function.terms,
            vec![SpecTerm {
                negated: false,
                coef: Coef::Gen(7),
                exp: 98
            }]
        );
    }

    #[test]
    fn parses_signs_and_constants() {
        let f = FunctionSpec::parse("f = Tr( x^5 - x^7 + g^20 * x^10 ) + 2").unwrap();
        assert_eq!(f.terms.len(), 3);
        assert!(f.terms[1].negated);
        assert_eq!(f.constant, 2);
        let g = FunctionSpec::parse("Tr(-2*x + 1)-1").unwrap();
        assert_eq!(
            g.terms[0],
            SpecTerm {
                negated: true,
                coef: Coef::Int(2),
                exp: 1
            }
        );
        assert_eq!(g.terms[1].exp, 0);
        assert_eq!(g.constant, -1);
    }

    #[test]
    fn round_trips_through_display() {
        for s in [
            "p=3 n=4 f=Tr(x^4+g^10*x^22)",
            "p=3 n=4 mod=[2,1,0,0,1] f=Tr(x^5-x^7+g^20*x^10)+1",
        ] {
            let p = ParsedFunction::parse(s).unwrap();
            assert_eq!(ParsedFunction::parse(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn error_positions() {
        match ParsedFunction::parse("p=3 n=2 f=Tr(x^2 +)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 18),
            other => panic!("{other:?}"),
        }
        match ParsedFunction::parse("p=3 n=2 f=Tr(y)") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 13),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            ParsedFunction::parse("p=3 n=2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            ParsedFunction::parse("p=3 n=2 f=Tr(x)x"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn exponent_too_large_is_rejected_at_build() {
        let p = ParsedFunction::parse("p=3 n=2 f=Tr(x^9)").unwrap();
        assert!(matches!(p.build(), Err(Error::Precondition(_))));
    }

    #[test]
    fn generator_scaling() {
        let p = ParsedFunction::parse("p=3 n=4 f=Tr(g^10*x^22)").unwrap();
        let (ctx, _) = p.build().unwrap();
        let tf = p.function.instantiate_with(&ctx, 7).unwrap();
        assert_eq!(tf.terms()[0].coef, ctx.gen_pow(70));
    }
}
