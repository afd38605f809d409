//! Reproduction suites run by `pasture verify`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use pasture_core::field::prime_power;
use pasture_core::hexagon::{census_fq, hexagon_of, psi_product};
use pasture_core::lift::{lift, LiftKind};
use pasture_core::matroid::{lift_bijection_check, Matroid};
use pasture_core::morphism::{iso_check, IsoResult};
use pasture_core::pasture::{finite_field, named, product};
use pasture_core::{hexagons, FundamentalPair, HexagonKind, NamedPasture, Pasture};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    HexLists,
    Table1,
    Table2,
    LiftTable,
    Glift,
    Triples,
    Idempotence,
    Matroid,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::HexLists,
        Suite::Table1,
        Suite::Table2,
        Suite::LiftTable,
        Suite::Glift,
        Suite::Triples,
        Suite::Idempotence,
        Suite::Matroid,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::HexLists => "hex-lists",
            Suite::Table1 => "table1",
            Suite::Table2 => "table2",
            Suite::LiftTable => "lift-table",
            Suite::Glift => "glift",
            Suite::Triples => "triples",
            Suite::Idempotence => "idempotence",
            Suite::Matroid => "matroid",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| format!("unknown suite {s}"))
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub max_q: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_q: 64 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub suite: Suite,
    pub items: Vec<Item>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.as_str(),
            "pass": self.passed(),
            "items": self.items.iter().map(|i| json!({
                "name": i.name,
                "pass": i.pass,
                "detail": i.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            let mark = if i.pass { "ok  " } else { "FAIL" };
            if i.detail.is_empty() {
                writeln!(f, "{mark} {}", i.name)?;
            } else {
                writeln!(f, "{mark} {}: {}", i.name, i.detail)?;
            }
        }
        let n = self.items.iter().filter(|i| i.pass).count();
        write!(f, "{}: {n}/{} passed", self.suite.as_str(), self.items.len())
    }
}

struct Items(Vec<Item>);

impl Items {
    fn push(&mut self, name: impl Into<String>, outcome: Result<String, String>) {
        let (pass, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.0.push(Item { name: name.into(), pass, detail });
    }
}

pub fn run(suite: Suite, opts: &Options) -> Report {
    let mut items = Items(Vec::new());
    match suite {
        Suite::HexLists => hex_lists(&mut items),
        Suite::Table1 => table1(&mut items, opts.max_q),
        Suite::Table2 => table2(&mut items),
        Suite::LiftTable => lift_table(&mut items),
        Suite::Glift => glift(&mut items),
        Suite::Triples => triples(&mut items),
        Suite::Idempotence => idempotence(&mut items),
        Suite::Matroid => matroid(&mut items),
    }
    Report { suite, items: items.0 }
}

fn field(q: u64) -> Pasture {
    finite_field(q).expect("prime power")
}

// Listed hexagons as (kind, entries); entries are `n * 1` for n >= 0 and
// alpha^k for `-k`, with alpha a root of the given polynomial.
type Listed = (u64, Option<&'static [i64]>, Vec<(HexagonKind, [i64; 6])>);

fn listed_hexagons() -> Vec<Listed> {
    use HexagonKind::*;
    vec![
        (2, None, vec![]),
        (3, None, vec![(Ternary, [2; 6])]),
        (4, Some(&[-1, 1, 1]), vec![(Hexagonal, [-1, -2, -2, -1, -1, -2])]),
        (5, None, vec![(Dyadic, [3, 3, 2, 2, 4, 4])]),
        (7, None, vec![(Dyadic, [4, 4, 2, 2, 6, 6]), (Hexagonal, [3, 5, 5, 3, 3, 5])]),
        (8, Some(&[-1, 1, 0, 1]), vec![(NearRegular, [-1, -3, -6, -4, -2, -5])]),
        (
            9,
            Some(&[-1, 1, 1]),
            vec![(Ternary, [2; 6]), (NearRegular, [-1, -2, -7, -6, -3, -5])],
        ),
        (11, None, vec![(Dyadic, [6, 6, 2, 2, 10, 10]), (NearRegular, [3, 9, 4, 5, 8, 7])]),
        (
            13,
            None,
            vec![
                (Dyadic, [7, 7, 2, 2, 12, 12]),
                (Hexagonal, [4, 10, 10, 4, 4, 10]),
                (NearRegular, [3, 11, 9, 6, 5, 8]),
            ],
        ),
    ]
}

fn hex_lists(items: &mut Items) {
    for (q, poly, listed) in listed_hexagons() {
        items.push(format!("F{q}"), check_hex_list(q, poly, &listed));
    }
}

fn check_hex_list(q: u64, poly: Option<&[i64]>, listed: &[(HexagonKind, [i64; 6])]) -> Result<String, String> {
    let p = field(q);
    let f = p.field().unwrap().clone();
    let int = |n: i64| {
        let one = if n < 0 { f.neg(1) } else { 1 };
        (0..n.unsigned_abs()).fold(0u32, |acc, _| f.add(acc, one))
    };
    let alpha = poly.map(|c| {
        (1..f.order())
            .find(|&x| {
                let (mut acc, mut pw) = (0u32, 1u32);
                for &k in c {
                    acc = f.add(acc, f.mul(int(k), pw));
                    pw = f.mul(pw, x);
                }
                acc == 0
            })
            .expect("listed polynomial has a root")
    });
    let value = |e: i64| {
        if e >= 0 {
            int(e)
        } else {
            (0..-e).fold(1u32, |acc, _| f.mul(acc, alpha.unwrap()))
        }
    };
    let ours = hexagons(&p);
    if ours.len() != listed.len() {
        return Err(format!("{} hexagons, {} listed", ours.len(), listed.len()));
    }
    let mut hit = BTreeSet::new();
    for (kind, entries) in listed {
        let v: Vec<u32> = entries.iter().map(|&e| value(e)).collect();
        let pair = FundamentalPair::new(p.field_unit(v[0]).unwrap(), p.field_unit(v[1]).unwrap());
        let h = hexagon_of(&p, &pair).map_err(|e| format!("{v:?}: {e}"))?;
        if h.kind != *kind || h.mu != kind.mu() {
            return Err(format!("{v:?} is {} with mu {}, listed {kind}", h.kind, h.mu));
        }
        let support: BTreeSet<u32> = h.support.iter().map(|g| p.field_value(g).unwrap()).collect();
        let listed_support: BTreeSet<u32> = v.iter().copied().collect();
        if support != listed_support {
            return Err(format!("support {support:?}, listed {listed_support:?}"));
        }
        hit.insert(h.canonical_pair.clone());
    }
    if hit.len() != ours.len() {
        return Err("listed hexagons are not distinct".into());
    }
    let kinds: Vec<&str> = ours.iter().map(|h| h.kind.as_str()).collect();
    Ok(kinds.join(", "))
}

fn table1(items: &mut Items, max_q: u64) {
    for q in (2..=max_q).filter(|&q| prime_power(q).is_some()) {
        let outcome = census_fq(q).map_err(|e| e.to_string()).and_then(|c| {
            let want = (
                q % 2 == 1 && q % 3 != 0,
                (q - 1) % 3 == 0,
                q % 3 == 0,
                ((q - 2) / 6) as usize,
            );
            let got = (c.dyadic > 0, c.hexagonal > 0, c.ternary > 0, c.near_regular);
            let desc = format!(
                "q mod 6 = {}: dyadic {}, hexagonal {}, ternary {}, near-regular {}",
                q % 6,
                c.dyadic,
                c.hexagonal,
                c.ternary,
                c.near_regular
            );
            if got == want {
                Ok(desc)
            } else {
                Err(desc)
            }
        });
        items.push(format!("F{q}"), outcome);
    }
}

fn expected_fiber(m1: usize, m2: usize) -> Vec<usize> {
    match (m1.min(m2), m1.max(m2)) {
        (1, x) => vec![x],
        (2, 2) => vec![2, 2],
        (2, 3) => vec![6],
        (2, 6) => vec![6, 6],
        (3, 3) => vec![3, 6],
        (3, 6) => vec![6, 6, 6],
        _ => vec![6; 6],
    }
}

fn check_fibers(p: &Pasture, q: &Pasture) -> Result<String, String> {
    let psi = psi_product(p, q);
    if psi.fibers.len() != psi.left.len() * psi.right.len() {
        return Err("a pair of hexagons has an empty fiber".into());
    }
    let mut cells = Vec::new();
    for fib in &psi.fibers {
        let (m1, m2) = (psi.left[fib.left].mu, psi.right[fib.right].mu);
        let want = expected_fiber(m1, m2);
        if fib.mus != want {
            return Err(format!("({m1},{m2}) -> {:?}, expected {want:?}", fib.mus));
        }
        cells.push(format!("({m1},{m2}) -> {:?}", fib.mus));
    }
    Ok(cells.join("; "))
}

fn table2(items: &mut Items) {
    let witnesses = [(3u64, "F3"), (4, "F4"), (5, "F5"), (8, "F8")];
    for i in 0..witnesses.len() {
        for j in i..witnesses.len() {
            let (a, b) = (field(witnesses[i].0), field(witnesses[j].0));
            items.push(format!("{} x {}", witnesses[i].1, witnesses[j].1), check_fibers(&a, &b));
        }
    }
    let s = named(NamedPasture::S);
    items.push("S x S", check_fibers(&s, &s));
    let kinds: BTreeSet<&str> = hexagons(&product(&s, &s)).iter().map(|h| h.kind.as_str()).collect();
    let want: BTreeSet<&str> = ["dyadic", "near-regular"].into_iter().collect();
    let n = hexagons(&product(&s, &s)).len();
    items.push(
        "S x S hexagon types",
        if kinds == want && n == 2 {
            Ok("dyadic, near-regular".into())
        } else {
            Err(format!("{n} hexagons: {kinds:?}"))
        },
    );
}

fn lift_table(items: &mut Items) {
    use NamedPasture::*;
    let rows: Vec<(&str, Pasture, LiftKind, &str)> = vec![
        ("F2", named(F2), LiftKind::Ternary, "F1pm"),
        ("F4", field(4), LiftKind::Ternary, "H"),
        ("F5", field(5), LiftKind::Ternary, "D"),
        ("F7", field(7), LiftKind::Ternary, "D ox H"),
        ("F8", field(8), LiftKind::Ternary, "U"),
        ("F9", field(9), LiftKind::Ternary, "F3 ox U"),
        ("F11", field(11), LiftKind::Ternary, "D ox U"),
        ("F13", field(13), LiftKind::Ternary, "D ox H ox U"),
        ("G", named(G), LiftKind::Ternary, "U"),
        ("S", named(S), LiftKind::Ternary, "D"),
        ("W", named(W), LiftKind::Ternary, "F3 ox D"),
        ("K", named(K), LiftKind::Ternary, "F3"),
        ("F4", field(4), LiftKind::Wlum, "F2 ox H"),
        ("F8", field(8), LiftKind::Wlum, "F2 ox U"),
    ];
    for (name, p, kind, want) in rows {
        let outcome = lift(&p, kind).map_err(|e| e.to_string()).and_then(|l| {
            let got = l.descriptor.map(|d| d.to_string()).unwrap_or_default();
            if got == want {
                Ok(got)
            } else {
                Err(format!("got {got}, expected {want}"))
            }
        });
        items.push(format!("{}({name})", kind.as_str()), outcome);
    }
}

fn iso_item(a: &Pasture, b: &Pasture) -> Result<String, String> {
    match iso_check(a, b) {
        IsoResult::Iso(_) => Ok("isomorphic".into()),
        IsoResult::NotIso(why) => Err(format!("not isomorphic: {why}")),
        IsoResult::Unknown(why) => Err(format!("unknown: {why}")),
    }
}

fn glift(items: &mut Items) {
    let cases = [
        ("grs(F4 x F5) = G", product(&field(4), &field(5)), named(NamedPasture::G)),
        ("grs(F5) = F5", field(5), field(5)),
        ("grs(K) = K", named(NamedPasture::K), named(NamedPasture::K)),
    ];
    for (name, p, want) in cases {
        let outcome = lift(&p, LiftKind::Grs)
            .map_err(|e| e.to_string())
            .and_then(|l| iso_item(&l.lift, &want));
        items.push(name, outcome);
    }
}

/// Triples `(q, p1, p2)` with `q - 2 = (p1 - 2)(p2 - 2)`, as listed.
pub const TRIPLES: [(u64, u64, u64); 30] = [
    (8, 4, 5), (29, 5, 11), (47, 5, 17), (83, 5, 29), (125, 5, 43), (137, 11, 17),
    (11, 5, 5), (32, 4, 17), (47, 7, 11), (83, 11, 11), (128, 8, 23), (149, 9, 23),
    (16, 4, 9), (32, 5, 11), (51, 5, 19), (89, 5, 31), (128, 11, 16), (163, 9, 25),
    (17, 5, 7), (32, 7, 8), (71, 5, 25), (101, 11, 13), (137, 5, 47), (167, 13, 17),
    (23, 5, 9), (37, 7, 9), (79, 9, 13), (121, 9, 19), (137, 7, 29), (173, 5, 59),
];

fn triples(items: &mut Items) {
    for (q, p1, p2) in TRIPLES {
        let mut problems = Vec::new();
        if q != (p1 - 2) * (p2 - 2) + 2 {
            problems.push(format!("(p1-2)(p2-2)+2 = {}", (p1 - 2) * (p2 - 2) + 2));
        }
        for x in [q, p1, p2] {
            if prime_power(x).is_none() {
                problems.push(format!("{x} is not a prime power"));
            }
        }
        if q % 3 == 0 {
            problems.push("3 divides q".into());
        }
        let outcome = if problems.is_empty() {
            Ok(String::new())
        } else {
            Err(problems.join(", "))
        };
        items.push(format!("({q},{p1},{p2})"), outcome);
    }
    let mut lifted: Vec<(u64, u64, u64)> = TRIPLES.iter().copied().filter(|t| t.0 <= 64).collect();
    for extra in [(53, 5, 19)] {
        if !lifted.contains(&extra) {
            lifted.push(extra);
        }
    }
    for (q, p1, p2) in lifted {
        let outcome = (|| {
            let a = lift(&finite_field(q).map_err(|e| e.to_string())?, LiftKind::Ternary).map_err(|e| e.to_string())?;
            let pq = product(
                &finite_field(p1).map_err(|e| e.to_string())?,
                &finite_field(p2).map_err(|e| e.to_string())?,
            );
            let b = lift(&pq, LiftKind::Ternary).map_err(|e| e.to_string())?;
            let (da, db) = (a.descriptor.unwrap(), b.descriptor.unwrap());
            if da == db {
                Ok(da.to_string())
            } else {
                Err(format!("{da} vs {db}"))
            }
        })();
        items.push(format!("Lt(F{q}) = Lt(F{p1} x F{p2})"), outcome);
    }
}

fn idempotence(items: &mut Items) {
    let mut corpus: Vec<(String, Pasture)> = NamedPasture::ALL
        .into_iter()
        .map(|n| (n.as_str().to_string(), named(n)))
        .collect();
    for q in [4u64, 5, 7, 8, 9, 11, 13] {
        corpus.push((format!("F{q}"), field(q)));
    }
    corpus.push(("F4 x F5".into(), product(&field(4), &field(5))));
    let s = named(NamedPasture::S);
    corpus.push(("S x S".into(), product(&s, &s)));
    for (name, p) in &corpus {
        for kind in [LiftKind::Ternary, LiftKind::Wlum, LiftKind::Grs] {
            let outcome = lift(p, kind)
                .and_then(|once| lift(&once.lift, kind))
                .map_err(|e| e.to_string())
                .and_then(|twice| {
                    if twice.lambda.is_isomorphism() {
                        Ok(String::new())
                    } else {
                        Err("re-lift map is not an isomorphism".into())
                    }
                });
            items.push(format!("{}({name})", kind.as_str()), outcome);
        }
    }
}

fn k4() -> Matroid {
    Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).expect("K4")
}

fn matroid(items: &mut Items) {
    let u24 = Matroid::uniform(2, 4);
    let cases: Vec<(&str, Matroid, Pasture, LiftKind)> = vec![
        ("U24, ternary(F4)", u24.clone(), field(4), LiftKind::Ternary),
        ("U24, wlum(F4)", u24.clone(), field(4), LiftKind::Wlum),
        ("U24, ternary(F3)", u24, named(NamedPasture::F3), LiftKind::Ternary),
        ("M(K4), binary(F2)", k4(), named(NamedPasture::F2), LiftKind::Binary),
        ("M(K4), ternary(F3)", k4(), named(NamedPasture::F3), LiftKind::Ternary),
        ("M(K4), ternary(F4)", k4(), field(4), LiftKind::Ternary),
    ];
    for (name, m, p, kind) in cases {
        let outcome = lift(&p, kind)
            .and_then(|l| lift_bijection_check(&m, &l))
            .map_err(|e| e.to_string())
            .and_then(|r| {
                let d = format!("{} <-> {} classes", r.lift_classes, r.source_classes);
                if r.is_bijection() {
                    Ok(d)
                } else {
                    Err(d)
                }
            });
        items.push(name, outcome);
    }
}
