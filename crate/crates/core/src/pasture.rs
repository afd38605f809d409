//! Pastures: an abelian unit group with a distinguished `-1` and a nullset
//! of three-term sums.
//!
//! Only all-unit null triples are stored, one canonical representative per
//! orbit under unit scaling. The zero-containing null triples are forced:
//! `a + 0 + 0` is null only for `a = 0`, and `x + y + 0` is null exactly when
//! `y = -x` (scaling `1 + x + 0` reduces to the uniqueness of `-1`).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use log::debug;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::group::{AbelianGroup, GroupElement};

/// Name of the presentation generator standing for `-1`.
pub const SIGN: &str = "-1";

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PastureElement {
    Zero,
    Unit(GroupElement),
}

impl PastureElement {
    pub fn unit(&self) -> Option<&GroupElement> {
        match self {
            PastureElement::Zero => None,
            PastureElement::Unit(g) => Some(g),
        }
    }
}

/// Canonical representative of an orbit of all-unit null triples.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NullTripleOrbit([GroupElement; 3]);

impl NullTripleOrbit {
    pub fn representative(&self) -> &[GroupElement; 3] {
        &self.0
    }
}

/// Minimum over the scalings that send one entry to 1, each sorted.
pub fn canonical_orbit(g: &AbelianGroup, t: [&GroupElement; 3]) -> NullTripleOrbit {
    let mut best: Option<[GroupElement; 3]> = None;
    for pivot in t {
        let mut s = [
            g.div(t[0], pivot),
            g.div(t[1], pivot),
            g.div(t[2], pivot),
        ];
        s.sort();
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    NullTripleOrbit(best.unwrap())
}

#[derive(Debug, Clone)]
enum Notation {
    Word,
    Field(Arc<FiniteField>),
    Product(Box<Pasture>, Box<Pasture>),
}

#[derive(Debug, Clone)]
pub struct Pasture {
    units: AbelianGroup,
    null_orbits: Vec<NullTripleOrbit>,
    label: Option<String>,
    names: Vec<String>,
    notation: Notation,
}

/// Equality of the underlying structures: unit group canonical form and
/// nullset. Labels and presentations are ignored.
impl PartialEq for Pasture {
    fn eq(&self, other: &Self) -> bool {
        self.units.same_canonical_form(&other.units) && self.null_orbits == other.null_orbits
    }
}

impl Eq for Pasture {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NonCanonicalOrbit(usize),
    DuplicateOrbit(usize),
    UnsortedOrbits(usize),
    DivisibilityChain(usize),
    EpsilonOrder,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonCanonicalOrbit(i) => write!(f, "orbit {i} is not in canonical form"),
            Violation::DuplicateOrbit(i) => write!(f, "orbit {i} repeats an earlier orbit"),
            Violation::UnsortedOrbits(i) => write!(f, "orbit {i} is out of order"),
            Violation::DivisibilityChain(i) => {
                write!(f, "invariant factor {i} breaks the divisibility chain")
            }
            Violation::EpsilonOrder => write!(f, "epsilon does not square to 1"),
        }
    }
}

impl Pasture {
    fn build(
        units: AbelianGroup,
        orbits: impl IntoIterator<Item = NullTripleOrbit>,
        names: Vec<String>,
        notation: Notation,
    ) -> Pasture {
        let set: BTreeSet<NullTripleOrbit> = orbits.into_iter().collect();
        Pasture {
            units,
            null_orbits: set.into_iter().collect(),
            label: None,
            names,
            notation,
        }
    }

    /// Assembles a pasture without canonicalizing or deduplicating the
    /// orbit list. Meant for hand-built data that is checked with
    /// [`Pasture::validate`].
    pub fn from_raw_parts(units: AbelianGroup, orbits: Vec<[GroupElement; 3]>) -> Pasture {
        let names = (0..units.generator_count()).map(|i| format!("g{i}")).collect();
        Pasture {
            units,
            null_orbits: orbits.into_iter().map(NullTripleOrbit).collect(),
            label: None,
            names,
            notation: Notation::Word,
        }
    }

    pub fn units(&self) -> &AbelianGroup {
        &self.units
    }

    pub fn null_orbits(&self) -> &[NullTripleOrbit] {
        &self.null_orbits
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Pasture {
        self.label = Some(label.into());
        self
    }

    /// Names of the presentation generators.
    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn one(&self) -> GroupElement {
        self.units.identity()
    }

    pub fn epsilon(&self) -> &GroupElement {
        self.units.epsilon()
    }

    pub fn epsilon_is_one(&self) -> bool {
        self.units.epsilon().is_identity()
    }

    pub fn is_finite(&self) -> bool {
        self.units.is_finite()
    }

    /// The field this pasture was built from, if any.
    pub fn field(&self) -> Option<&FiniteField> {
        match &self.notation {
            Notation::Field(f) => Some(f),
            _ => None,
        }
    }

    /// Unit corresponding to a nonzero field element. Only for pastures
    /// built by [`finite_field`].
    pub fn field_unit(&self, x: u32) -> Option<GroupElement> {
        let f = self.field()?;
        let e = f.log(x)?;
        Some(self.units.element_from_i64_word(&[e as i64]))
    }

    /// Field element of a unit. Only for pastures built by [`finite_field`].
    pub fn field_value(&self, g: &GroupElement) -> Option<u32> {
        let f = self.field()?;
        let w = self.units.word_of(g);
        let n = BigInt::from(f.order() - 1);
        let e = num_integer::Integer::mod_floor(&w[0], &n).to_u64()?;
        Some(f.exp(e))
    }

    pub fn canonical_orbit(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> NullTripleOrbit {
        canonical_orbit(&self.units, [a, b, c])
    }

    pub fn null_contains_units(&self, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> bool {
        let o = self.canonical_orbit(a, b, c);
        self.null_orbits.binary_search(&o).is_ok()
    }

    pub fn null_contains(&self, a: &PastureElement, b: &PastureElement, c: &PastureElement) -> bool {
        let units: Vec<&GroupElement> = [a, b, c].iter().filter_map(|x| x.unit()).collect();
        match units.len() {
            0 => true,
            1 => false,
            2 => *units[1] == self.units.mul(self.epsilon(), units[0]),
            _ => self.null_contains_units(units[0], units[1], units[2]),
        }
    }

    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut v = Vec::new();
        for (i, w) in self.units.torsion().windows(2).enumerate() {
            if !(&w[1] % &w[0]).is_zero() {
                v.push(Violation::DivisibilityChain(i + 1));
            }
        }
        if self.units.torsion().iter().any(|d| d <= &BigInt::one()) {
            v.push(Violation::DivisibilityChain(0));
        }
        let e = self.epsilon();
        if !self.units.mul(e, e).is_identity() {
            v.push(Violation::EpsilonOrder);
        }
        for (i, o) in self.null_orbits.iter().enumerate() {
            let [a, b, c] = &o.0;
            if self.canonical_orbit(a, b, c) != *o {
                v.push(Violation::NonCanonicalOrbit(i));
            }
            if self.null_orbits[..i].contains(o) {
                v.push(Violation::DuplicateOrbit(i));
            } else if i > 0 && self.null_orbits[i - 1] > *o {
                v.push(Violation::UnsortedOrbits(i));
            }
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    /// Human readable form of a unit.
    pub fn format_unit(&self, g: &GroupElement) -> String {
        match &self.notation {
            Notation::Field(f) => f.format(self.field_value(g).unwrap()),
            Notation::Product(p, q) => {
                let w = self.units.word_of(g);
                let n = p.units.generator_count();
                let a = p.units.element_from_word(&w[..n]);
                let b = q.units.element_from_word(&w[n..]);
                format!("({}, {})", p.format_unit(&a), q.format_unit(&b))
            }
            Notation::Word => self.format_word(g),
        }
    }

    pub fn format_element(&self, x: &PastureElement) -> String {
        match x {
            PastureElement::Zero => "0".into(),
            PastureElement::Unit(g) => self.format_unit(g),
        }
    }

    fn format_word(&self, g: &GroupElement) -> String {
        let word = self.short_word(g).unwrap_or_else(|| self.units.word_of(g));
        let mut negative = false;
        let mut parts = Vec::new();
        for (name, e) in self.names.iter().zip(&word) {
            if e.is_zero() {
                continue;
            }
            if name == SIGN {
                if (e % 2u32) != BigInt::zero() {
                    negative = !negative;
                }
            } else if e.is_one() {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        let body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        if negative {
            format!("-{body}")
        } else {
            body
        }
    }

    // Searches small words for a compact spelling of `g`.
    fn short_word(&self, g: &GroupElement) -> Option<Vec<BigInt>> {
        const BOUND: i64 = 3;
        let n = self.names.len();
        let free: Vec<usize> = (0..n).filter(|&i| self.names[i] != SIGN).collect();
        if free.len() > 4 {
            return None;
        }
        let signs: Vec<usize> = (0..n).filter(|&i| self.names[i] == SIGN).collect();
        let sign_choices: Vec<i64> = if signs.is_empty() { vec![0] } else { vec![0, 1] };
        for total in 0..=(BOUND as usize * free.len()) {
            let mut found = None;
            for_each_composition(free.len(), total, BOUND as usize, &mut |exps| {
                if found.is_some() {
                    return;
                }
                for &s in &sign_choices {
                    let mut w = vec![BigInt::zero(); n];
                    if let Some(&i) = signs.first() {
                        w[i] = BigInt::from(s);
                    }
                    for (&i, &e) in free.iter().zip(exps) {
                        w[i] = BigInt::from(e);
                    }
                    if self.units.element_from_word(&w) == *g {
                        found = Some(w);
                        return;
                    }
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    pub fn descriptor_json(&self) -> Value {
        json!({
            "units": {
                "free_rank": self.units.free_rank(),
                "torsion": self.units.torsion().iter().map(int_json).collect::<Vec<_>>(),
                "epsilon": element_json(self.epsilon()),
            },
            "null_orbits": self.null_orbits.iter()
                .map(|o| o.0.iter().map(element_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "label": self.label.clone().unwrap_or_default(),
        })
    }
}

// Signed exponent vectors with entries bounded by `bound` and absolute sum
// `total`, in a fixed order.
fn for_each_composition(len: usize, total: usize, bound: usize, f: &mut dyn FnMut(&[i64])) {
    fn go(
        i: usize,
        left: usize,
        bound: usize,
        cur: &mut Vec<i64>,
        f: &mut dyn FnMut(&[i64]),
    ) {
        if i == cur.len() {
            if left == 0 {
                f(cur);
            }
            return;
        }
        for a in 0..=left.min(bound) {
            for s in if a == 0 { vec![0i64] } else { vec![a as i64, -(a as i64)] } {
                cur[i] = s;
                go(i + 1, left - a, bound, cur, f);
            }
        }
        cur[i] = 0;
    }
    let mut cur = vec![0; len];
    go(0, total, bound, &mut cur, f);
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn element_json(g: &GroupElement) -> Value {
    Value::Array(g.coords().iter().map(int_json).collect())
}

impl fmt::Display for Pasture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            writeln!(f, "{l}")?;
        }
        writeln!(f, "units: {}, -1 = {}", self.units, self.format_unit(self.epsilon()))?;
        writeln!(f, "null orbits: {}", self.null_orbits.len())?;
        for o in &self.null_orbits {
            let [a, b, c] = &o.0;
            writeln!(
                f,
                "  {} + {} + {}",
                self.format_unit(a),
                self.format_unit(b),
                self.format_unit(c)
            )?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// constructors

fn ints(x: &[i64]) -> Vec<BigInt> {
    x.iter().map(|&v| BigInt::from(v)).collect()
}

/// The initial pasture: units `{1, -1}`, no all-unit null triples.
pub fn f1pm() -> Pasture {
    let g = AbelianGroup::from_presentation(1, &[ints(&[2])], &ints(&[1])).unwrap();
    Pasture::build(g, [], vec![SIGN.into()], Notation::Word).with_label("F1pm")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedPasture {
    F1pm,
    K,
    S,
    W,
    U,
    D,
    H,
    G,
    F2,
    F3,
}

impl NamedPasture {
    pub const ALL: [NamedPasture; 10] = [
        NamedPasture::F1pm,
        NamedPasture::K,
        NamedPasture::S,
        NamedPasture::W,
        NamedPasture::U,
        NamedPasture::D,
        NamedPasture::H,
        NamedPasture::G,
        NamedPasture::F2,
        NamedPasture::F3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NamedPasture::F1pm => "F1pm",
            NamedPasture::K => "K",
            NamedPasture::S => "S",
            NamedPasture::W => "W",
            NamedPasture::U => "U",
            NamedPasture::D => "D",
            NamedPasture::H => "H",
            NamedPasture::G => "G",
            NamedPasture::F2 => "F2",
            NamedPasture::F3 => "F3",
        }
    }
}

impl std::str::FromStr for NamedPasture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedPasture::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

/// Sum of signed Laurent monomials in the presentation generators of `p`,
/// given as `(negated, word)` terms.
pub fn monomial(p: &Pasture, negated: bool, word: &[i64]) -> PastureElement {
    let mut g = p.units.element_from_i64_word(word);
    if negated {
        g = p.units.mul(&g, p.epsilon());
    }
    PastureElement::Unit(g)
}

pub fn named(n: NamedPasture) -> Pasture {
    let f = f1pm();
    let one = |p: &Pasture, neg: bool| monomial(p, neg, &vec![0; p.units.generator_count()]);
    let zero = PastureElement::Zero;
    let p = match n {
        NamedPasture::F1pm => Ok(f),
        NamedPasture::K => quotient(
            &f,
            &[
                [one(&f, false), one(&f, false), one(&f, false)],
                [one(&f, false), one(&f, false), zero],
            ],
            &[],
        ),
        NamedPasture::S => quotient(&f, &[[one(&f, false), one(&f, false), one(&f, true)]], &[]),
        NamedPasture::W => quotient(
            &f,
            &[
                [one(&f, false), one(&f, false), one(&f, false)],
                [one(&f, false), one(&f, false), one(&f, true)],
            ],
            &[],
        ),
        NamedPasture::F2 => quotient(&f, &[[one(&f, false), one(&f, false), zero]], &[]),
        NamedPasture::F3 => quotient(&f, &[[one(&f, false), one(&f, false), one(&f, false)]], &[]),
        NamedPasture::U => {
            let a = free_algebra(&f, &["x", "y"]).unwrap();
            let rel = [
                monomial(&a, false, &[0, 1, 0]),
                monomial(&a, false, &[0, 0, 1]),
                monomial(&a, true, &[0, 0, 0]),
            ];
            quotient(&a, &[rel], &[])
        }
        NamedPasture::D => {
            let a = free_algebra(&f, &["z"]).unwrap();
            let z = monomial(&a, false, &[0, 1]);
            quotient(&a, &[[z.clone(), z, monomial(&a, true, &[0, 0])]], &[])
        }
        NamedPasture::H => {
            let a = free_algebra(&f, &["z"]).unwrap();
            let rels = [
                [monomial(&a, false, &[0, 3]), monomial(&a, false, &[0, 0]), zero],
                [
                    monomial(&a, false, &[0, 1]),
                    monomial(&a, false, &[0, -1]),
                    monomial(&a, true, &[0, 0]),
                ],
            ];
            quotient(&a, &rels, &[])
        }
        NamedPasture::G => {
            let a = free_algebra(&f, &["z"]).unwrap();
            let rel = [
                monomial(&a, false, &[0, 2]),
                monomial(&a, false, &[0, 1]),
                monomial(&a, true, &[0, 0]),
            ];
            quotient(&a, &[rel], &[])
        }
    };
    p.expect("named presentations are well formed")
        .with_label(n.as_str())
}

/// The pasture of GF(q).
pub fn finite_field(q: u64) -> Result<Pasture> {
    let f = FiniteField::new(q)?;
    let n = q as i64 - 1;
    let eps = if q.is_multiple_of(2) { 0 } else { n / 2 };
    let g = AbelianGroup::from_presentation(1, &[ints(&[n])], &ints(&[eps]))?;
    let mut orbits = Vec::new();
    let unit = |x: u32| g.element_from_i64_word(&[f.log(x).unwrap() as i64]);
    let one = unit(1);
    for b in 1..q as u32 {
        let c = f.neg(f.add(1, b));
        if c != 0 {
            orbits.push(canonical_orbit(&g, [&one, &unit(b), &unit(c)]));
        }
    }
    Ok(Pasture::build(g, orbits, vec!["a".into()], Notation::Field(Arc::new(f))).with_label(format!("F{q}")))
}

/// Re-expresses an orbit of `from` in `to`, given how presentation words of
/// `from` embed into words of `to`.
fn move_orbit(
    from: &AbelianGroup,
    to: &AbelianGroup,
    o: &NullTripleOrbit,
    embed: &dyn Fn(Vec<BigInt>) -> Vec<BigInt>,
) -> NullTripleOrbit {
    let m = |g: &GroupElement| to.element_from_word(&embed(from.word_of(g)));
    let [a, b, c] = &o.0;
    canonical_orbit(to, [&m(a), &m(b), &m(c)])
}

/// Adjoins free variables to `p`.
pub fn free_algebra(p: &Pasture, names: &[&str]) -> Result<Pasture> {
    let mut all = p.names.clone();
    for n in names {
        if *n == SIGN || all.iter().any(|x| x == n) {
            return Err(Error::DuplicateName(n.to_string()));
        }
        all.push(n.to_string());
    }
    let old = p.units.generator_count();
    let total = old + names.len();
    let pad = |mut w: Vec<BigInt>| {
        w.resize(total, BigInt::zero());
        w
    };
    let rows: Vec<Vec<BigInt>> = p.units.relations().iter().map(|r| pad(r.clone())).collect();
    let g = AbelianGroup::from_presentation(total, &rows, &pad(p.units.word_of(p.epsilon())))?;
    let orbits: Vec<_> = p
        .null_orbits
        .iter()
        .map(|o| move_orbit(&p.units, &g, o, &pad))
        .collect();
    let label = format!(
        "{}<{}>",
        p.label.clone().unwrap_or_else(|| "P".into()),
        names.join(",")
    );
    Ok(Pasture::build(g, orbits, all, Notation::Word).with_label(label))
}

/// Imposes extra null triples and unit identifications.
///
/// A relation `x + y + 0` identifies `y` with `-x`, i.e. kills `x y^-1 -1`.
/// Such kills never produce further zero-containing relations, since every
/// stored orbit consists of units and stays so in any quotient of the unit
/// group. So one round of quotienting already gives the closure.
pub fn quotient(
    p: &Pasture,
    extra_null: &[[PastureElement; 3]],
    identifications: &[(GroupElement, GroupElement)],
) -> Result<Pasture> {
    let g = &p.units;
    let mut kills = Vec::new();
    let mut triples = Vec::new();
    for t in extra_null {
        let u: Vec<&GroupElement> = t.iter().filter_map(|x| x.unit()).collect();
        match u.len() {
            3 => triples.push([u[0].clone(), u[1].clone(), u[2].clone()]),
            2 => kills.push(g.mul(&g.div(u[0], u[1]), g.epsilon())),
            _ => return Err(Error::BadRelationShape),
        }
    }
    for (a, b) in identifications {
        kills.push(g.div(a, b));
    }
    let kills: Vec<GroupElement> = kills.into_iter().filter(|k| !k.is_identity()).collect();
    let q = if kills.is_empty() {
        g.clone()
    } else {
        g.quotient_by(&kills)?
    };
    if !p.epsilon_is_one() && q.epsilon().is_identity() {
        debug!("quotient collapses -1 to 1");
    }
    let mv = |x: &GroupElement| q.transfer(g, x);
    let mut orbits: Vec<NullTripleOrbit> = p
        .null_orbits
        .iter()
        .map(|o| {
            let [a, b, c] = &o.0;
            canonical_orbit(&q, [&mv(a), &mv(b), &mv(c)])
        })
        .collect();
    for [a, b, c] in &triples {
        orbits.push(canonical_orbit(&q, [&mv(a), &mv(b), &mv(c)]));
    }
    let notation = match &p.notation {
        Notation::Product(..) | Notation::Field(_) if kills.is_empty() => p.notation.clone(),
        _ => Notation::Word,
    };
    let mut out = Pasture::build(q, orbits, p.names.clone(), notation);
    out.label = p.label.clone().map(|l| format!("{l}//(...)"));
    Ok(out)
}

fn merged_names(a: &[String], b: &[String], keep_sign: bool) -> Vec<String> {
    let mut out: Vec<String> = a.to_vec();
    for n in b {
        if n == SIGN && keep_sign {
            out.push(n.clone());
            continue;
        }
        let mut cand = n.clone();
        let mut i = 2;
        while out.contains(&cand) || (cand == SIGN && !keep_sign) {
            cand = format!("{n}_{i}");
            i += 1;
        }
        out.push(cand);
    }
    out
}

fn block_rows(p: &AbelianGroup, q: &AbelianGroup) -> Vec<Vec<BigInt>> {
    let (m, n) = (p.generator_count(), q.generator_count());
    let mut rows = Vec::new();
    for r in p.relations() {
        let mut w = r.clone();
        w.resize(m + n, BigInt::zero());
        rows.push(w);
    }
    for r in q.relations() {
        let mut w = vec![BigInt::zero(); m];
        w.extend(r.iter().cloned());
        rows.push(w);
    }
    rows
}

fn concat(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    let mut a = a;
    a.extend(b);
    a
}

/// Element of a product or tensor pasture built from `p` and `q` whose
/// presentation is the concatenation of theirs.
pub fn pair_unit(
    pq: &Pasture,
    p: &Pasture,
    q: &Pasture,
    x: &GroupElement,
    y: &GroupElement,
) -> GroupElement {
    pq.units
        .element_from_word(&concat(p.units.word_of(x), q.units.word_of(y)))
}

/// Splits a unit of `pq = product(p, q)` into its components.
pub fn split_unit(
    pq: &Pasture,
    p: &Pasture,
    q: &Pasture,
    x: &GroupElement,
) -> (GroupElement, GroupElement) {
    let w = pq.units.word_of(x);
    let n = p.units.generator_count();
    (
        p.units.element_from_word(&w[..n]),
        q.units.element_from_word(&w[n..]),
    )
}

pub fn product(p: &Pasture, q: &Pasture) -> Pasture {
    let rows = block_rows(&p.units, &q.units);
    let eps = concat(p.units.word_of(p.epsilon()), q.units.word_of(q.epsilon()));
    let n = rows.first().map_or(eps.len(), |r| r.len());
    let g = AbelianGroup::from_presentation(n, &rows, &eps).expect("product of valid groups");
    let names = merged_names(&p.names, &q.names, false);
    let shell = Pasture::build(g.clone(), [], names.clone(), Notation::Word);
    let mut orbits = BTreeSet::new();
    for a in &p.null_orbits {
        for b in &q.null_orbits {
            let [b0, b1, b2] = &b.0;
            for perm in PERMS {
                let bb = [b0, b1, b2];
                let t: Vec<GroupElement> = (0..3)
                    .map(|i| pair_unit(&shell, p, q, &a.0[i], bb[perm[i]]))
                    .collect();
                orbits.insert(canonical_orbit(&g, [&t[0], &t[1], &t[2]]));
            }
        }
    }
    let label = format!("{} x {}", p.label().unwrap_or("P"), q.label().unwrap_or("Q"));
    Pasture::build(
        g,
        orbits,
        names,
        Notation::Product(Box::new(p.clone()), Box::new(q.clone())),
    )
    .with_label(label)
}

pub const PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub fn tensor(p: &Pasture, q: &Pasture) -> Pasture {
    let mut rows = block_rows(&p.units, &q.units);
    let ep = p.units.word_of(p.epsilon());
    let eq: Vec<BigInt> = q.units.word_of(q.epsilon()).into_iter().map(|x| -x).collect();
    rows.push(concat(ep.clone(), eq));
    let n = rows[0].len();
    let mut eps = ep;
    eps.resize(n, BigInt::zero());
    let g = AbelianGroup::from_presentation(n, &rows, &eps).expect("tensor of valid groups");
    let m = p.units.generator_count();
    let left = |w: Vec<BigInt>| {
        let mut w = w;
        w.resize(n, BigInt::zero());
        w
    };
    let right = |w: Vec<BigInt>| concat(vec![BigInt::zero(); m], w);
    let mut orbits: Vec<NullTripleOrbit> = p
        .null_orbits
        .iter()
        .map(|o| move_orbit(&p.units, &g, o, &left))
        .collect();
    orbits.extend(q.null_orbits.iter().map(|o| move_orbit(&q.units, &g, o, &right)));
    let label = format!("{} ox {}", p.label().unwrap_or("P"), q.label().unwrap_or("Q"));
    Pasture::build(g, orbits, merged_names(&p.names, &q.names, true), Notation::Word)
        .with_label(label)
}

/// Product of a list; the empty product is K.
pub fn product_all(ps: &[Pasture]) -> Pasture {
    match ps.split_first() {
        None => named(NamedPasture::K),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, p| product(&acc, p)),
    }
}

/// Tensor product of a list; the empty tensor product is F1pm.
pub fn tensor_all(ps: &[Pasture]) -> Pasture {
    match ps.split_first() {
        None => f1pm(),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, p| tensor(&acc, p)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(_p: &Pasture, g: &GroupElement) -> PastureElement {
        PastureElement::Unit(g.clone())
    }

    #[test]
    fn f1pm_shape() {
        let p = f1pm();
        assert_eq!(p.units().torsion(), &[BigInt::from(2)]);
        assert!(p.null_orbits().is_empty());
        let (one, e) = (p.one(), p.epsilon().clone());
        assert!(p.null_contains(&u(&p, &one), &u(&p, &e), &PastureElement::Zero));
        assert!(!p.null_contains(&u(&p, &one), &u(&p, &one), &PastureElement::Zero));
    }

    #[test]
    fn named_shapes() {
        let s = named(NamedPasture::S);
        assert_eq!(s.null_orbits().len(), 1);
        let one = u(&s, &s.one());
        assert!(!s.null_contains(&one, &one, &one));
        let d = named(NamedPasture::D);
        assert_eq!(d.units().free_rank(), 1);
        assert_eq!(d.units().torsion(), &[BigInt::from(2)]);
        let h = named(NamedPasture::H);
        assert_eq!(h.units().torsion(), &[BigInt::from(6)]);
        assert_eq!(h.units().free_rank(), 0);
        assert_eq!(h.null_orbits().len(), 1);
        let z = h.units().element_from_i64_word(&[0, 1]);
        assert_eq!(h.units().pow_i64(&z, 3), *h.epsilon());
        let uu = named(NamedPasture::U);
        assert_eq!(uu.units().free_rank(), 2);
        let f2 = named(NamedPasture::F2);
        assert_eq!(f2.units().dim(), 0);
        assert!(f2.epsilon_is_one());
        let k = named(NamedPasture::K);
        assert!(k.epsilon_is_one());
        assert_eq!(k.null_orbits().len(), 1);
        for n in NamedPasture::ALL {
            assert_eq!(named(n).validate(), Ok(()), "{n:?}");
        }
    }

    #[test]
    fn f3_contains_one_one_one() {
        let f3 = finite_field(3).unwrap();
        let one = u(&f3, &f3.one());
        assert!(f3.null_contains(&one, &one, &one));
        assert_eq!(f3, named(NamedPasture::F3));
    }

    #[test]
    fn small_fields() {
        let f2 = finite_field(2).unwrap();
        assert_eq!(f2.units().dim(), 0);
        assert!(f2.null_orbits().is_empty());
        let f5 = finite_field(5).unwrap();
        assert_eq!(f5.null_orbits().len(), 1);
        let [a, b, c] = [1, 2, 2].map(|v| f5.field_unit(v).unwrap());
        assert_eq!(f5.null_orbits()[0], f5.canonical_orbit(&a, &b, &c));
        assert_eq!(finite_field(6).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn field_null_orbits_match_brute_force() {
        for q in [4u64, 5, 7, 8, 9, 11, 13, 16] {
            let p = finite_field(q).unwrap();
            let f = p.field().unwrap().clone();
            let mut set = BTreeSet::new();
            let mut count = 0;
            for a in 1..q as u32 {
                for b in 1..q as u32 {
                    let c = f.neg(f.add(a, b));
                    if c == 0 {
                        continue;
                    }
                    count += 1;
                    let [x, y, z] = [a, b, c].map(|v| p.field_unit(v).unwrap());
                    set.insert(p.canonical_orbit(&x, &y, &z));
                }
            }
            assert_eq!(count, (q - 1) * (q - 2));
            assert_eq!(set.into_iter().collect::<Vec<_>>(), p.null_orbits());
        }
    }

    #[test]
    fn two_term_rule_exhaustive() {
        let ps = [
            finite_field(7).unwrap(),
            finite_field(4).unwrap(),
            named(NamedPasture::W),
            named(NamedPasture::K),
            named(NamedPasture::H),
        ];
        for p in ps {
            let els = p.units().elements().unwrap();
            for x in &els {
                for y in &els {
                    let expect = *y == p.units().mul(p.epsilon(), x);
                    assert_eq!(
                        p.null_contains(&u(&p, x), &u(&p, y), &PastureElement::Zero),
                        expect
                    );
                }
            }
        }
    }

    #[test]
    fn free_algebra_over_f3() {
        let p = free_algebra(&finite_field(3).unwrap(), &["t"]).unwrap();
        assert_eq!(p.units().free_rank(), 1);
        assert_eq!(p.units().torsion(), &[BigInt::from(2)]);
        assert_eq!(p.null_orbits().len(), 1);
        assert_eq!(
            free_algebra(&f1pm(), &["x", "x"]).unwrap_err(),
            Error::DuplicateName("x".into())
        );
    }

    #[test]
    fn bad_relation_shape() {
        let f = f1pm();
        let one = u(&f, &f.one());
        let r = quotient(&f, &[[one, PastureElement::Zero, PastureElement::Zero]], &[]);
        assert_eq!(r.unwrap_err(), Error::BadRelationShape);
    }

    #[test]
    fn product_and_tensor_examples() {
        let f1 = f1pm();
        let pp = product(&f1, &f1);
        assert_eq!(pp.units().order(), Some(BigInt::from(4)));
        assert!(pp.null_orbits().is_empty());
        let s = named(NamedPasture::S);
        assert_eq!(product(&s, &s).null_orbits().len(), 2);
        let f45 = product(&finite_field(4).unwrap(), &finite_field(5).unwrap());
        assert_eq!(f45.null_orbits().len(), 1);
        let k = tensor(&named(NamedPasture::F2), &named(NamedPasture::F3));
        assert_eq!(k, named(NamedPasture::K));
        let dh = tensor(&named(NamedPasture::D), &named(NamedPasture::H));
        assert_eq!(dh.units().free_rank(), 1);
        assert_eq!(dh.units().torsion(), &[BigInt::from(6)]);
        assert_eq!(dh.null_orbits().len(), 2);
        let w = named(NamedPasture::W);
        assert_eq!(tensor(&f1, &w), w);
        assert_eq!(tensor_all(&[]), f1);
        assert_eq!(product_all(&[]), named(NamedPasture::K));
    }

    #[test]
    fn validate_rejects_duplicates() {
        let f5 = finite_field(5).unwrap();
        let rep = f5.null_orbits()[0].representative().clone();
        let g = f5.units();
        let two = rep.iter().find(|x| !x.is_identity()).unwrap().clone();
        let scaled = [g.mul(&rep[0], &two), g.mul(&rep[1], &two), g.mul(&rep[2], &two)];
        let bad = Pasture::from_raw_parts(g.clone(), vec![rep.clone(), scaled, rep]);
        let v = bad.validate().unwrap_err();
        assert!(v.contains(&Violation::NonCanonicalOrbit(1)));
        assert!(v.contains(&Violation::DuplicateOrbit(2)));
    }

    #[test]
    fn formatting() {
        let h = named(NamedPasture::H);
        let z = h.units().element_from_i64_word(&[0, 1]);
        assert_eq!(h.format_unit(&z), "z");
        assert_eq!(h.format_unit(&h.units().pow_i64(&z, 4)), "-z");
        let f5 = finite_field(5).unwrap();
        assert_eq!(f5.format_unit(f5.epsilon()), "4");
        let f4 = finite_field(4).unwrap();
        let a = f4.field_unit(2).unwrap();
        assert_eq!(f4.format_unit(&a), "a");
    }
}
