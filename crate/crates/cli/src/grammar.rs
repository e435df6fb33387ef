//! Expression syntax for the four instances.
//!
//! ```text
//! power-affine    element  3*x^2 | x^2 | 3*x | x          point  12
//! affine-lattice  element  aff([[2,0],[0,1]],[1,-1])      point  [5,-2]
//! dyadic-steps    element  t^2 d^1 | d t | t              point  [3/2,-1]
//! tower           element  P1^2 P3 F^2 | F | P2           point  (payload,level)
//!
//! pq(<point> ; <element>)      frac(<denominator> , <numerator>)
//! ```
//!
//! Words are read left to right as a composition, so `d t` is `d∘t` and acts by `t` first.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use pseudoquotient::instances::{
    AffineLattice, AffineLatticeMap, DyadicStepMap, DyadicStepValue, DyadicSteps, LatticePoint,
    PowerAffine, PowerAffineMap, RationalVector, RootValue, StepFunction, Tower, TowerMap,
    TowerPoint, TowerValue,
};
use pseudoquotient::{GroupFraction, OreAction, Pseudoquotient};

use crate::error::CliError;

/// A byte-offset cursor over one expression.
pub struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    pub fn offset(&self) -> usize {
        self.pos
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn error(&self, message: impl Into<String>) -> CliError {
        CliError::Syntax {
            message: message.into(),
            offset: self.pos,
        }
    }

    fn expected(&mut self, what: &str) -> CliError {
        let found = match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        self.error(format!("expected {what}, found {found}"))
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), CliError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.expected(&format!("`{c}`")))
        }
    }

    pub fn eat_keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    pub fn expect_end(&mut self) -> Result<(), CliError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}` after expression"))),
        }
    }

    fn digits(&mut self) -> Result<&'a str, CliError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest.bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(self.expected("a number"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    pub fn natural(&mut self) -> Result<BigUint, CliError> {
        let digits = self.digits()?;
        Ok(digits.parse().expect("ascii digits"))
    }

    pub fn small(&mut self) -> Result<u32, CliError> {
        let start = self.pos;
        let n = self.natural()?;
        n.to_u32().ok_or(CliError::Syntax {
            message: "number too large".into(),
            offset: start,
        })
    }

    pub fn large(&mut self) -> Result<u64, CliError> {
        let start = self.pos;
        let n = self.natural()?;
        n.to_u64().ok_or(CliError::Syntax {
            message: "number too large".into(),
            offset: start,
        })
    }

    pub fn integer(&mut self) -> Result<BigInt, CliError> {
        let negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        let n = BigInt::from(self.natural()?);
        Ok(if negative { -n } else { n })
    }

    pub fn rational(&mut self) -> Result<BigRational, CliError> {
        let numer = self.integer()?;
        if self.eat('/') {
            let start = self.pos;
            let denom = BigInt::from(self.natural()?);
            if denom.is_zero() {
                return Err(CliError::Syntax {
                    message: "zero denominator".into(),
                    offset: start,
                });
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    /// `[a, b, ...]`, possibly empty.
    pub fn list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, CliError>,
    ) -> Result<Vec<T>, CliError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// `^k` if present, else 1.
    fn exponent(&mut self) -> Result<u32, CliError> {
        if self.eat('^') {
            self.small()
        } else {
            Ok(1)
        }
    }
}

/// Parsing, printing and JSON rendering for one instance.
///
/// Parsing does not need the instance value, so the affine dimension can be inferred from
/// whatever is parsed first.
pub trait Grammar: OreAction {
    fn parse_point(c: &mut Cursor) -> Result<Self::Point, CliError>;
    fn parse_element(c: &mut Cursor) -> Result<Self::Element, CliError>;
    fn print_point(x: &Self::Point) -> String;
    fn print_element(f: &Self::Element) -> String;
    fn canonical_json(v: &Self::Canonical) -> Value;
    fn canonical_text(v: &Self::Canonical) -> String;

    /// Dimension carried by a parsed value, where the instance has one.
    fn point_dim(_x: &Self::Point) -> Option<usize> {
        None
    }
    fn element_dim(_f: &Self::Element) -> Option<usize> {
        None
    }
}

fn whole<T>(
    text: &str,
    parse: impl FnOnce(&mut Cursor) -> Result<T, CliError>,
) -> Result<T, CliError> {
    let mut c = Cursor::new(text);
    let value = parse(&mut c)?;
    c.expect_end()?;
    Ok(value)
}

pub fn parse_point<A: Grammar>(text: &str) -> Result<A::Point, CliError> {
    whole(text, A::parse_point)
}

pub fn parse_element<A: Grammar>(text: &str) -> Result<A::Element, CliError> {
    whole(text, A::parse_element)
}

fn pq_body<A: Grammar>(c: &mut Cursor) -> Result<Pseudoquotient<A::Point, A::Element>, CliError> {
    if !c.eat_keyword("pq") {
        return Err(c.expected("`pq(`"));
    }
    c.expect('(')?;
    let x = A::parse_point(c)?;
    c.expect(';')?;
    let f = A::parse_element(c)?;
    c.expect(')')?;
    Ok(Pseudoquotient::new(x, f))
}

fn frac_body<A: Grammar>(c: &mut Cursor) -> Result<GroupFraction<A::Element>, CliError> {
    if !c.eat_keyword("frac") {
        return Err(c.expected("`frac(`"));
    }
    c.expect('(')?;
    let den = A::parse_element(c)?;
    c.expect(',')?;
    let num = A::parse_element(c)?;
    c.expect(')')?;
    Ok(GroupFraction::new(den, num))
}

pub fn parse_pq<A: Grammar>(text: &str) -> Result<Pseudoquotient<A::Point, A::Element>, CliError> {
    whole(text, pq_body::<A>)
}

pub fn parse_fraction<A: Grammar>(text: &str) -> Result<GroupFraction<A::Element>, CliError> {
    whole(text, frac_body::<A>)
}

/// Either a single element or a `frac(..)`.
pub enum Operator<E> {
    Element(E),
    Fraction(GroupFraction<E>),
}

pub fn parse_operator<A: Grammar>(text: &str) -> Result<Operator<A::Element>, CliError> {
    if text.trim_start().starts_with("frac") {
        parse_fraction::<A>(text).map(Operator::Fraction)
    } else {
        parse_element::<A>(text).map(Operator::Element)
    }
}

pub fn print_pq<A: Grammar>(p: &Pseudoquotient<A::Point, A::Element>) -> String {
    format!(
        "pq({}; {})",
        A::print_point(&p.numerator),
        A::print_element(&p.denominator)
    )
}

pub fn print_fraction<A: Grammar>(f: &GroupFraction<A::Element>) -> String {
    format!(
        "frac({}, {})",
        A::print_element(&f.den),
        A::print_element(&f.num)
    )
}

fn rational_strings(values: &[BigRational]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

impl Grammar for PowerAffine {
    fn parse_point(c: &mut Cursor) -> Result<BigUint, CliError> {
        c.natural()
    }

    fn parse_element(c: &mut Cursor) -> Result<PowerAffineMap, CliError> {
        let multiplier = if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
            let m = c.natural()?;
            c.expect('*')?;
            m
        } else {
            BigUint::from(1u32)
        };
        c.expect('x')?;
        let exponent = c.exponent()?;
        Ok(PowerAffineMap::new(multiplier, exponent)?)
    }

    fn print_point(x: &BigUint) -> String {
        x.to_string()
    }

    fn print_element(f: &PowerAffineMap) -> String {
        f.to_string()
    }

    fn canonical_json(v: &RootValue) -> Value {
        let reduced = v.reduced();
        json!({
            "radicand": v.radicand().to_string(),
            "index": v.index(),
            "reduced": {
                "radicand": reduced.radicand().to_string(),
                "index": reduced.index(),
            },
        })
    }

    fn canonical_text(v: &RootValue) -> String {
        format!("{v} (reduced {})", v.reduced())
    }
}

impl Grammar for AffineLattice {
    fn parse_point(c: &mut Cursor) -> Result<LatticePoint, CliError> {
        Ok(LatticePoint(c.list(Cursor::integer)?))
    }

    fn parse_element(c: &mut Cursor) -> Result<AffineLatticeMap, CliError> {
        if !c.eat_keyword("aff") {
            return Err(c.expected("`aff(`"));
        }
        c.expect('(')?;
        let matrix = c.list(|c| c.list(Cursor::integer))?;
        c.expect(',')?;
        let offset = c.list(Cursor::integer)?;
        c.expect(')')?;
        Ok(AffineLatticeMap::new(matrix, offset)?)
    }

    fn print_point(x: &LatticePoint) -> String {
        x.to_string()
    }

    fn print_element(f: &AffineLatticeMap) -> String {
        f.to_string()
    }

    fn canonical_json(v: &RationalVector) -> Value {
        json!({ "vector": rational_strings(&v.0) })
    }

    fn canonical_text(v: &RationalVector) -> String {
        v.to_string()
    }

    fn point_dim(x: &LatticePoint) -> Option<usize> {
        Some(x.dim())
    }

    fn element_dim(f: &AffineLatticeMap) -> Option<usize> {
        Some(f.dim())
    }
}

impl Grammar for DyadicSteps {
    fn parse_point(c: &mut Cursor) -> Result<StepFunction, CliError> {
        Ok(StepFunction::new(c.list(Cursor::rational)?))
    }

    fn parse_element(c: &mut Cursor) -> Result<DyadicStepMap, CliError> {
        let mut word = None;
        loop {
            let letter = if c.eat('t') {
                let k = c.exponent()?;
                DyadicStepMap::new(u64::from(k), 0)
            } else if c.eat('d') {
                DyadicStepMap::new(0, c.exponent()?)
            } else if word.is_none() {
                return Err(c.expected("`t` or `d`"));
            } else {
                break;
            };
            word = Some(match word {
                None => letter,
                Some(w) => DyadicSteps.compose(&w, &letter),
            });
            c.eat('*');
        }
        Ok(word.expect("at least one letter"))
    }

    fn print_point(x: &StepFunction) -> String {
        x.to_string()
    }

    fn print_element(f: &DyadicStepMap) -> String {
        f.to_string()
    }

    fn canonical_json(v: &DyadicStepValue) -> Value {
        let v = v.normalized();
        json!({
            "scale": v.scale,
            "start": v.start,
            "values": rational_strings(&v.values),
        })
    }

    fn canonical_text(v: &DyadicStepValue) -> String {
        let v = v.normalized();
        format!(
            "scale {} start {} values [{}]",
            v.scale,
            v.start,
            rational_strings(&v.values).join(",")
        )
    }
}

impl Grammar for Tower {
    fn parse_point(c: &mut Cursor) -> Result<TowerPoint, CliError> {
        c.expect('(')?;
        let payload = c.integer()?;
        c.expect(',')?;
        let level = c.small()?;
        c.expect(')')?;
        Ok(TowerPoint::new(payload, level)?)
    }

    fn parse_element(c: &mut Cursor) -> Result<TowerMap, CliError> {
        // Composition of normal forms does not depend on the level rules.
        let algebra = Tower::default();
        let mut word = None;
        loop {
            let letter = if c.eat('F') {
                TowerMap::phi_power(c.exponent()?)
            } else if c.eat('P') {
                let level = c.small()?;
                TowerMap::psi_power(level, c.exponent()?)?
            } else if word.is_none() {
                return Err(c.expected("`F` or `P<level>`"));
            } else {
                break;
            };
            word = Some(match word {
                None => letter,
                Some(w) => algebra.compose(&w, &letter),
            });
            c.eat('*');
        }
        Ok(word.expect("at least one letter"))
    }

    fn print_point(x: &TowerPoint) -> String {
        x.to_string()
    }

    fn print_element(f: &TowerMap) -> String {
        f.to_string()
    }

    fn canonical_json(v: &TowerValue) -> Value {
        json!({ "level": v.level, "payload": v.payload.to_string() })
    }

    fn canonical_text(v: &TowerValue) -> String {
        format!("({},{})", v.payload, v.level)
    }
}
