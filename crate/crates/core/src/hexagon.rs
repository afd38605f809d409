//! Fundamental pairs, the action of the dihedral group of order 6 on them,
//! and hexagons (the orbits).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pasture::{element_json, finite_field, product, split_unit, Pasture, PERMS};
use crate::group::GroupElement;

/// A pair `(a, b)` of units with `a + b - 1` null.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FundamentalPair {
    pub a: GroupElement,
    pub b: GroupElement,
}

impl FundamentalPair {
    pub fn new(a: GroupElement, b: GroupElement) -> Self {
        FundamentalPair { a, b }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HexagonKind {
    Ternary,
    Hexagonal,
    Dyadic,
    NearRegular,
}

impl HexagonKind {
    pub fn from_mu(mu: usize) -> Option<Self> {
        match mu {
            1 => Some(HexagonKind::Ternary),
            2 => Some(HexagonKind::Hexagonal),
            3 => Some(HexagonKind::Dyadic),
            6 => Some(HexagonKind::NearRegular),
            _ => None,
        }
    }

    pub fn mu(self) -> usize {
        match self {
            HexagonKind::Ternary => 1,
            HexagonKind::Hexagonal => 2,
            HexagonKind::Dyadic => 3,
            HexagonKind::NearRegular => 6,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HexagonKind::Ternary => "ternary",
            HexagonKind::Hexagonal => "hexagonal",
            HexagonKind::Dyadic => "dyadic",
            HexagonKind::NearRegular => "near-regular",
        }
    }
}

impl fmt::Display for HexagonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hexagon {
    /// Least pair of the orbit.
    pub canonical_pair: FundamentalPair,
    pub mu: usize,
    pub kind: HexagonKind,
    /// First coordinates of the pairs, sorted.
    pub support: Vec<GroupElement>,
    /// All pairs of the orbit, sorted.
    pub pairs: Vec<FundamentalPair>,
}

impl Hexagon {
    pub fn contains(&self, pair: &FundamentalPair) -> bool {
        self.pairs.binary_search(pair).is_ok()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pair": [element_json(&self.canonical_pair.a), element_json(&self.canonical_pair.b)],
            "mu": self.mu,
            "kind": self.kind.as_str(),
            "support": self.support.iter().map(element_json).collect::<Vec<_>>(),
        })
    }

    /// Pair list in the pasture's notation.
    pub fn describe(&self, p: &Pasture) -> String {
        let pairs: Vec<String> = self
            .pairs
            .iter()
            .map(|x| format!("({}, {})", p.format_unit(&x.a), p.format_unit(&x.b)))
            .collect();
        format!("{} mu={} {}", self.kind, self.mu, pairs.join(" "))
    }
}

pub fn is_fundamental(p: &Pasture, pair: &FundamentalPair) -> bool {
    p.null_contains_units(&pair.a, &pair.b, p.epsilon())
}

fn rho_raw(p: &Pasture, x: &FundamentalPair) -> FundamentalPair {
    let g = p.units();
    let binv = g.inv(&x.b);
    let second = g.mul(&g.mul(p.epsilon(), &x.a), &binv);
    FundamentalPair::new(binv, second)
}

fn sigma_raw(x: &FundamentalPair) -> FundamentalPair {
    FundamentalPair::new(x.b.clone(), x.a.clone())
}

fn not_fundamental(p: &Pasture, x: &FundamentalPair) -> Error {
    Error::NotFundamental(p.format_unit(&x.a), p.format_unit(&x.b))
}

/// `rho(a, b) = (1/b, -a/b)`.
pub fn d3_rho(p: &Pasture, x: &FundamentalPair) -> Result<FundamentalPair> {
    if !is_fundamental(p, x) {
        return Err(not_fundamental(p, x));
    }
    Ok(rho_raw(p, x))
}

/// `sigma(a, b) = (b, a)`.
pub fn d3_sigma(p: &Pasture, x: &FundamentalPair) -> Result<FundamentalPair> {
    if !is_fundamental(p, x) {
        return Err(not_fundamental(p, x));
    }
    Ok(sigma_raw(x))
}

/// Orbit of a pair under rho and sigma, sorted.
pub fn d3_orbit(p: &Pasture, x: &FundamentalPair) -> Vec<FundamentalPair> {
    let mut seen = BTreeSet::new();
    let mut todo = vec![x.clone()];
    while let Some(y) = todo.pop() {
        if seen.insert(y.clone()) {
            todo.push(rho_raw(p, &y));
            todo.push(sigma_raw(&y));
        }
    }
    seen.into_iter().collect()
}

// The pairs (-x/z, -y/z) over orderings (x, y, z) of an orbit representative
// are exactly the pairs of its hexagon.
fn pairs_of_orbit(p: &Pasture, rep: &[GroupElement; 3]) -> BTreeSet<FundamentalPair> {
    let g = p.units();
    PERMS
        .iter()
        .map(|[i, j, k]| {
            let m = g.mul(p.epsilon(), &g.inv(&rep[*k]));
            FundamentalPair::new(g.mul(&rep[*i], &m), g.mul(&rep[*j], &m))
        })
        .collect()
}

pub fn fundamental_pairs(p: &Pasture) -> Vec<FundamentalPair> {
    let mut all = BTreeSet::new();
    for o in p.null_orbits() {
        all.extend(pairs_of_orbit(p, o.representative()));
    }
    all.into_iter().collect()
}

pub fn fundamental_elements(p: &Pasture) -> Vec<GroupElement> {
    let set: BTreeSet<GroupElement> = fundamental_pairs(p).into_iter().map(|x| x.a).collect();
    set.into_iter().collect()
}

fn hexagon_from_pairs(pairs: BTreeSet<FundamentalPair>) -> Hexagon {
    let pairs: Vec<FundamentalPair> = pairs.into_iter().collect();
    let mu = pairs.len();
    let support: BTreeSet<GroupElement> = pairs.iter().map(|x| x.a.clone()).collect();
    Hexagon {
        canonical_pair: pairs[0].clone(),
        mu,
        kind: HexagonKind::from_mu(mu).expect("orbit lengths divide 6 and are not 6/..."),
        support: support.into_iter().collect(),
        pairs,
    }
}

/// One hexagon per null orbit, ordered by canonical pair.
pub fn hexagons(p: &Pasture) -> Vec<Hexagon> {
    let mut hs: Vec<Hexagon> = p
        .null_orbits()
        .iter()
        .map(|o| hexagon_from_pairs(pairs_of_orbit(p, o.representative())))
        .collect();
    hs.sort_by(|x, y| x.canonical_pair.cmp(&y.canonical_pair));
    hs
}

/// Hexagon containing the given pair.
pub fn hexagon_of(p: &Pasture, x: &FundamentalPair) -> Result<Hexagon> {
    if !is_fundamental(p, x) {
        return Err(not_fundamental(p, x));
    }
    Ok(hexagon_from_pairs(d3_orbit(p, x).into_iter().collect()))
}

/// Type read off from the shape of the orbit rather than its length:
/// ternary if it contains `(-1, -1)`, dyadic if it contains some `(a, a)`
/// with `a != -1`, hexagonal if it contains `(a, 1/a)` with `a^3 = -1` and
/// `a != -1`, near-regular otherwise.
pub fn closed_form_kind(p: &Pasture, x: &FundamentalPair) -> HexagonKind {
    let g = p.units();
    let e = p.epsilon();
    let orbit = d3_orbit(p, x);
    if orbit.iter().any(|y| y.a == *e && y.b == *e) {
        HexagonKind::Ternary
    } else if orbit.iter().any(|y| y.a == y.b && y.a != *e) {
        HexagonKind::Dyadic
    } else if orbit
        .iter()
        .any(|y| y.b == g.inv(&y.a) && g.pow_i64(&y.a, 3) == *e && y.a != *e)
    {
        HexagonKind::Hexagonal
    } else {
        HexagonKind::NearRegular
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Census {
    pub ternary: usize,
    pub hexagonal: usize,
    pub dyadic: usize,
    pub near_regular: usize,
}

impl Census {
    pub fn of(hs: &[Hexagon]) -> Census {
        let mut c = Census::default();
        for h in hs {
            match h.kind {
                HexagonKind::Ternary => c.ternary += 1,
                HexagonKind::Hexagonal => c.hexagonal += 1,
                HexagonKind::Dyadic => c.dyadic += 1,
                HexagonKind::NearRegular => c.near_regular += 1,
            }
        }
        c
    }
}

pub fn census_fq(q: u64) -> Result<Census> {
    Ok(Census::of(&hexagons(&finite_field(q)?)))
}

/// Fiber of the map from hexagons of `P x Q` to pairs of hexagons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiFiber {
    pub left: usize,
    pub right: usize,
    /// Orbit lengths of the hexagons in the fiber, sorted.
    pub mus: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PsiMap {
    pub product: Pasture,
    pub left: Vec<Hexagon>,
    pub right: Vec<Hexagon>,
    pub hexagons: Vec<Hexagon>,
    /// Image of each hexagon of the product, as indices into `left`/`right`.
    pub image: Vec<(usize, usize)>,
    pub fibers: Vec<PsiFiber>,
}

pub fn psi_product(p: &Pasture, q: &Pasture) -> PsiMap {
    let pq = product(p, q);
    let left = hexagons(p);
    let right = hexagons(q);
    let hs = hexagons(&pq);
    let mut image = Vec::new();
    let mut fib: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for h in &hs {
        let (a1, a2) = split_unit(&pq, p, q, &h.canonical_pair.a);
        let (b1, b2) = split_unit(&pq, p, q, &h.canonical_pair.b);
        let (x1, x2) = (FundamentalPair::new(a1, b1), FundamentalPair::new(a2, b2));
        let i = left.iter().position(|k| k.contains(&x1)).expect("projection is fundamental");
        let j = right.iter().position(|k| k.contains(&x2)).expect("projection is fundamental");
        image.push((i, j));
        fib.entry((i, j)).or_default().push(h.mu);
    }
    let fibers = fib
        .into_iter()
        .map(|((left, right), mut mus)| {
            mus.sort();
            PsiFiber { left, right, mus }
        })
        .collect();
    PsiMap {
        product: pq,
        left,
        right,
        hexagons: hs,
        image,
        fibers,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionFailure {
    pub element: GroupElement,
    /// Number of hexagon supports containing the element.
    pub count: usize,
}

/// Checks that every unit other than 1 lies in exactly one hexagon support.
pub fn partial_field_partition_check(p: &Pasture) -> Result<std::result::Result<(), PartitionFailure>> {
    let hs = hexagons(p);
    for x in p.units().elements()? {
        if x.is_identity() {
            continue;
        }
        let count = hs.iter().filter(|h| h.support.binary_search(&x).is_ok()).count();
        if count != 1 {
            return Ok(Err(PartitionFailure { element: x, count }));
        }
    }
    Ok(Ok(()))
}
