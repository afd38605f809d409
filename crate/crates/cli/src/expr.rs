//! Expression language for pastures.
//!
//! ```text
//! expr     := tensor ('x' tensor)*
//! tensor   := unary ('ox' unary)*
//! unary    := ('Lb' | 'Lt' | 'Lw' | 'Lg') '(' expr ')' | '(' expr ')' | atom
//! atom     := 'F1pm' ['<' vars '>'] ['//' '(' relation (';' relation)* ')']
//!           | 'F' digits | 'K' | 'S' | 'W' | 'U' | 'D' | 'H' | 'G'
//! relation := term (('+' | '-') term)*      two or three terms
//! term     := ['-'] factor ('*' factor)*
//! factor   := '1' | var ['^' ['-'] digits]
//! ```
//!
//! Whitespace is ignored everywhere.

use std::fmt;

use pasture_core::lift::{lift, LiftKind, LiftResult};
use pasture_core::pasture::{f1pm, finite_field, free_algebra, monomial, named, product, quotient, tensor};
use pasture_core::{Error, NamedPasture, Pasture, PastureElement, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub negated: bool,
    /// Variables with exponents, in written order. Empty means `1`.
    pub factors: Vec<(String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Named(NamedPasture),
    Field(u64),
    Presentation {
        vars: Vec<String>,
        relations: Vec<Vec<Term>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PastureExpr {
    Atom(Atom),
    Product(Box<PastureExpr>, Box<PastureExpr>),
    Tensor(Box<PastureExpr>, Box<PastureExpr>),
    Lift(LiftKind, Box<PastureExpr>),
}

const LIFT_NAMES: [(&str, LiftKind); 4] = [
    ("Lb", LiftKind::Binary),
    ("Lt", LiftKind::Ternary),
    ("Lw", LiftKind::Wlum),
    ("Lg", LiftKind::Grs),
];

fn lift_name(kind: LiftKind) -> &'static str {
    LIFT_NAMES.iter().find(|(_, k)| *k == kind).unwrap().0
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(s)
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn digits(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Parse { pos: start, msg: "expected a number".into() })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        let mut chars = self.src[self.pos..].char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() || c == '_' => {}
            _ => return Err(self.error("expected a variable name")),
        }
        let len = chars
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(self.src.len() - self.pos);
        self.pos += len;
        Ok(self.src[start..self.pos].to_string())
    }

    fn expr(&mut self) -> Result<PastureExpr> {
        let mut lhs = self.tensor()?;
        // 'x' is the product operator; 'ox' is tried first by the tensor level
        while self.peek() == Some('x') {
            self.pos += 1;
            let rhs = self.tensor()?;
            lhs = PastureExpr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn tensor(&mut self) -> Result<PastureExpr> {
        let mut lhs = self.unary()?;
        while self.eat("ox") {
            let rhs = self.unary()?;
            lhs = PastureExpr::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<PastureExpr> {
        for (name, kind) in LIFT_NAMES {
            if self.eat(name) {
                self.expect("(")?;
                let inner = self.expr()?;
                self.expect(")")?;
                return Ok(PastureExpr::Lift(kind, Box::new(inner)));
            }
        }
        if self.eat("(") {
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(inner);
        }
        self.atom().map(PastureExpr::Atom)
    }

    fn atom(&mut self) -> Result<Atom> {
        if self.eat("F1pm") {
            let mut vars = Vec::new();
            if self.eat("<")
                && !self.eat(">") {
                    loop {
                        vars.push(self.ident()?);
                        if self.eat(">") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
            let mut relations = Vec::new();
            if self.eat("//") {
                self.expect("(")?;
                loop {
                    relations.push(self.relation()?);
                    if self.eat(")") {
                        break;
                    }
                    self.expect(";")?;
                }
            }
            if vars.is_empty() && relations.is_empty() {
                return Ok(Atom::Named(NamedPasture::F1pm));
            }
            return Ok(Atom::Presentation { vars, relations });
        }
        if self.eat("F") {
            let q = self.digits()?;
            return Ok(match q {
                2 => Atom::Named(NamedPasture::F2),
                3 => Atom::Named(NamedPasture::F3),
                _ => Atom::Field(q),
            });
        }
        for n in [
            NamedPasture::K,
            NamedPasture::S,
            NamedPasture::W,
            NamedPasture::U,
            NamedPasture::D,
            NamedPasture::H,
            NamedPasture::G,
        ] {
            if self.eat(n.as_str()) {
                return Ok(Atom::Named(n));
            }
        }
        Err(self.error("expected a pasture"))
    }

    fn relation(&mut self) -> Result<Vec<Term>> {
        let neg = self.eat("-");
        let mut terms = vec![self.term(neg)?];
        loop {
            if self.eat("+") {
                terms.push(self.term(false)?);
            } else if self.eat("-") {
                terms.push(self.term(true)?);
            } else {
                break;
            }
        }
        if !(2..=3).contains(&terms.len()) {
            return Err(self.error(format!("a relation needs 2 or 3 terms, found {}", terms.len())));
        }
        Ok(terms)
    }

    fn term(&mut self, negated: bool) -> Result<Term> {
        let mut factors = Vec::new();
        loop {
            if self.eat("1") {
                // unit factor
            } else {
                let v = self.ident()?;
                let e = if self.eat("^") {
                    let neg = self.eat("-");
                    let k = self.digits()? as i64;
                    if neg {
                        -k
                    } else {
                        k
                    }
                } else {
                    1
                };
                factors.push((v, e));
            }
            if !self.eat("*") {
                break;
            }
        }
        Ok(Term { negated, factors })
    }
}

pub fn parse(text: &str) -> Result<PastureExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Named(n) => write!(f, "{}", n.as_str()),
            Atom::Field(q) => write!(f, "F{q}"),
            Atom::Presentation { vars, relations } => {
                write!(f, "F1pm")?;
                if !vars.is_empty() {
                    write!(f, "<{}>", vars.join(","))?;
                }
                if !relations.is_empty() {
                    let rels: Vec<String> = relations
                        .iter()
                        .map(|r| {
                            let mut s = String::new();
                            for (i, t) in r.iter().enumerate() {
                                if t.negated {
                                    s.push('-');
                                } else if i > 0 {
                                    s.push('+');
                                }
                                s.push_str(&t.to_string());
                            }
                            s
                        })
                        .collect();
                    write!(f, "//({})", rels.join("; "))?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for PastureExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn needs_parens_in_tensor(e: &PastureExpr, right: bool) -> bool {
            matches!(e, PastureExpr::Product(..)) || (right && matches!(e, PastureExpr::Tensor(..)))
        }
        match self {
            PastureExpr::Atom(a) => write!(f, "{a}"),
            PastureExpr::Lift(k, e) => write!(f, "{}({e})", lift_name(*k)),
            PastureExpr::Product(l, r) => {
                write!(f, "{l} x ")?;
                if matches!(**r, PastureExpr::Product(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            PastureExpr::Tensor(l, r) => {
                if needs_parens_in_tensor(l, false) {
                    write!(f, "({l})")?;
                } else {
                    write!(f, "{l}")?;
                }
                write!(f, " ox ")?;
                if needs_parens_in_tensor(r, true) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}

/// Result of evaluating an expression. Lifts keep their canonical morphism.
#[derive(Debug, Clone)]
pub enum Value {
    Pasture(Pasture),
    Lift(LiftResult),
}

impl Value {
    pub fn pasture(&self) -> &Pasture {
        match self {
            Value::Pasture(p) => p,
            Value::Lift(l) => &l.lift,
        }
    }

    pub fn into_pasture(self) -> Pasture {
        match self {
            Value::Pasture(p) => p,
            Value::Lift(l) => l.lift,
        }
    }
}

fn presentation(vars: &[String], relations: &[Vec<Term>]) -> Result<Pasture> {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let free = free_algebra(&f1pm(), &names)?;
    let gens = free.generator_names().to_vec();
    let mut triples = Vec::new();
    for r in relations {
        let mut elems: Vec<PastureElement> = Vec::new();
        for t in r {
            let mut word = vec![0i64; gens.len()];
            for (v, e) in &t.factors {
                let i = gens
                    .iter()
                    .position(|g| g == v)
                    .ok_or_else(|| Error::Invalid(format!("undeclared variable {v}")))?;
                word[i] += e;
            }
            elems.push(monomial(&free, t.negated, &word));
        }
        if elems.len() == 2 {
            elems.push(PastureElement::Zero);
        }
        let t: [PastureElement; 3] = elems.try_into().map_err(|_| Error::BadRelationShape)?;
        triples.push(t);
    }
    quotient(&free, &triples, &[])
}

pub fn evaluate(e: &PastureExpr) -> Result<Value> {
    Ok(match e {
        PastureExpr::Atom(Atom::Named(n)) => Value::Pasture(named(*n)),
        PastureExpr::Atom(Atom::Field(q)) => Value::Pasture(finite_field(*q)?),
        PastureExpr::Atom(Atom::Presentation { vars, relations }) => {
            Value::Pasture(presentation(vars, relations)?.with_label(e.to_string()))
        }
        PastureExpr::Product(l, r) => {
            let p = product(evaluate(l)?.pasture(), evaluate(r)?.pasture());
            Value::Pasture(p.with_label(e.to_string()))
        }
        PastureExpr::Tensor(l, r) => {
            let p = tensor(evaluate(l)?.pasture(), evaluate(r)?.pasture());
            Value::Pasture(p.with_label(e.to_string()))
        }
        PastureExpr::Lift(kind, inner) => {
            let src = evaluate(inner)?.into_pasture();
            Value::Lift(lift(&src, *kind)?)
        }
    })
}

pub fn eval_str(text: &str) -> Result<Value> {
    evaluate(&parse(text)?)
}
