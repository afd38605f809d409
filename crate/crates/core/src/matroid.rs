//! Matroids given by bases, their representations over finite pastures and
//! rescaling classes.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite::FiniteTable;
use crate::group::GroupElement;
use crate::lift::LiftResult;
use crate::morphism::PastureMorphism;
use crate::pasture::{Pasture, PastureElement};

/// Default bound on search nodes when enumerating representations.
pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000_000;
/// Bound on `|P^x|^n` for the explicit rescaling closure.
pub const RESCALING_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Vec<usize>>,
}

impl Matroid {
    /// Elements are `1..=n`. Checks the basis exchange axiom.
    pub fn from_bases(n: usize, rank: usize, bases: Vec<Vec<usize>>) -> Result<Matroid> {
        let mut set = BTreeSet::new();
        for b in bases {
            let mut b = b;
            b.sort_unstable();
            let distinct = b.windows(2).all(|w| w[0] < w[1]);
            if b.len() != rank || !distinct || b.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::NotAMatroid(format!("bad basis {b:?}")));
            }
            set.insert(b);
        }
        if set.is_empty() {
            return Err(Error::NotAMatroid("no bases".into()));
        }
        let bases: Vec<Vec<usize>> = set.into_iter().collect();
        for b1 in &bases {
            for b2 in &bases {
                for &x in b1.iter().filter(|x| !b2.contains(x)) {
                    let ok = b2.iter().filter(|y| !b1.contains(y)).any(|&y| {
                        let mut c: Vec<usize> = b1.iter().copied().filter(|&z| z != x).collect();
                        c.push(y);
                        c.sort_unstable();
                        bases.binary_search(&c).is_ok()
                    });
                    if !ok {
                        return Err(Error::ExchangeAxiom {
                            b1: b1.clone(),
                            b2: b2.clone(),
                            x,
                        });
                    }
                }
            }
        }
        Ok(Matroid { n, rank, bases })
    }

    pub fn uniform(rank: usize, n: usize) -> Matroid {
        let bases = subsets(n, rank);
        Matroid::from_bases(n, rank, bases).expect("uniform matroid")
    }

    /// Cycle matroid of a graph on vertices `0..vertices`; edge `i` becomes
    /// element `i + 1`.
    pub fn graphic(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
        let forest = |s: &[usize]| {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut x = x;
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            for &e in s {
                let (u, v) = edges[e - 1];
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
            true
        };
        if edges.iter().any(|&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::Invalid("edge endpoint out of range".into()));
        }
        let n = edges.len();
        let rank = (0..=n.min(vertices))
            .rev()
            .find(|&r| subsets(n, r).iter().any(|s| forest(s)))
            .unwrap_or(0);
        let bases = subsets(n, rank).into_iter().filter(|s| forest(s)).collect();
        Matroid::from_bases(n, rank, bases)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Sorted bases in lexicographic order.
    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    pub fn basis_index(&self, b: &[usize]) -> Option<usize> {
        self.bases.binary_search_by(|x| x.as_slice().cmp(b)).ok()
    }

    pub fn from_json(v: &Value) -> Result<Matroid> {
        let bad = || Error::Invalid("matroid JSON needs n, rank and bases".into());
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let rank = v.get("rank").and_then(Value::as_u64).ok_or_else(bad)? as usize;
        let bases = v
            .get("bases")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|b| {
                b.as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matroid::from_bases(n, rank, bases)
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "rank": self.rank, "bases": self.bases})
    }
}

/// All `k`-subsets of `1..=n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

// One three-term relation: for each term, the two sets as basis indices
// (None for non-bases) and whether sorting them is an odd permutation.
#[derive(Debug, Clone)]
struct Quad {
    j: Vec<usize>,
    e: [usize; 4],
    terms: [[(Option<usize>, bool); 2]; 3],
}

fn quads(m: &Matroid) -> Vec<Quad> {
    let mut out = Vec::new();
    let r = m.rank;
    if r < 2 {
        return out;
    }
    let lookup = |j: &[usize], a: usize, b: usize| {
        let odd = (j.iter().filter(|&&x| x > a).count() + j.iter().filter(|&&x| x > b).count()) % 2 == 1;
        let mut s = j.to_vec();
        s.push(a);
        s.push(b);
        s.sort_unstable();
        (m.basis_index(&s), odd)
    };
    for j in subsets(m.n, r - 2) {
        let rest: Vec<usize> = (1..=m.n).filter(|x| !j.contains(x)).collect();
        for e in subsets(rest.len(), 4) {
            let e = [rest[e[0] - 1], rest[e[1] - 1], rest[e[2] - 1], rest[e[3] - 1]];
            let terms = [
                [lookup(&j, e[0], e[1]), lookup(&j, e[2], e[3])],
                [lookup(&j, e[0], e[2]), lookup(&j, e[1], e[3])],
                [lookup(&j, e[0], e[3]), lookup(&j, e[1], e[2])],
            ];
            if terms.iter().any(|t| t[0].0.is_some() && t[1].0.is_some()) {
                out.push(Quad { j: j.clone(), e, terms });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerViolation {
    pub j: Vec<usize>,
    pub e: [usize; 4],
}

/// A map from bases to units satisfying the three-term Plücker relations.
#[derive(Debug, Clone)]
pub struct Representation {
    matroid: Arc<Matroid>,
    pasture: Arc<Pasture>,
    values: Vec<GroupElement>,
}

impl Representation {
    /// Checks the Plücker relations; `values` are indexed like the bases.
    pub fn new(
        matroid: &Matroid,
        pasture: &Pasture,
        values: Vec<GroupElement>,
    ) -> std::result::Result<Representation, PluckerViolation> {
        assert_eq!(values.len(), matroid.bases.len());
        let r = Representation {
            matroid: Arc::new(matroid.clone()),
            pasture: Arc::new(pasture.clone()),
            values,
        };
        plucker_check(matroid, pasture, &r.values)?;
        Ok(r)
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn pasture(&self) -> &Pasture {
        &self.pasture
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    /// Delta on an arbitrary tuple, using the alternating rule.
    pub fn delta(&self, tuple: &[usize]) -> PastureElement {
        let mut s = tuple.to_vec();
        let mut odd = false;
        for i in 0..s.len() {
            for j in 0..s.len() - 1 - i {
                if s[j] > s[j + 1] {
                    s.swap(j, j + 1);
                    odd = !odd;
                }
            }
        }
        if s.windows(2).any(|w| w[0] == w[1]) {
            return PastureElement::Zero;
        }
        match self.matroid.basis_index(&s) {
            None => PastureElement::Zero,
            Some(i) => {
                let g = self.pasture.units();
                let v = &self.values[i];
                PastureElement::Unit(if odd { g.mul(v, self.pasture.epsilon()) } else { v.clone() })
            }
        }
    }

    pub fn pushforward(&self, f: &PastureMorphism) -> std::result::Result<Representation, PluckerViolation> {
        Representation::new(&self.matroid, f.target(), self.values.iter().map(|v| f.apply(v)).collect())
    }
}

/// Checks every three-term Plücker relation.
pub fn plucker_check(
    m: &Matroid,
    p: &Pasture,
    values: &[GroupElement],
) -> std::result::Result<(), PluckerViolation> {
    let g = p.units();
    let term = |t: &[(Option<usize>, bool); 2], extra: bool| {
        let (Some(a), Some(b)) = (t[0].0, t[1].0) else {
            return PastureElement::Zero;
        };
        let mut v = g.mul(&values[a], &values[b]);
        if t[0].1 ^ t[1].1 ^ extra {
            v = g.mul(&v, p.epsilon());
        }
        PastureElement::Unit(v)
    };
    for q in quads(m) {
        let x = term(&q.terms[0], false);
        let y = term(&q.terms[1], true);
        let z = term(&q.terms[2], false);
        if !p.null_contains(&x, &y, &z) {
            return Err(PluckerViolation { j: q.j.clone(), e: q.e });
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct RescalingClass {
    pub representative: Representation,
    /// Number of normalized representations in the class.
    pub size: usize,
}

// Normalized solutions and their classes, as unit indices.
struct ClassData {
    table: FiniteTable,
    units: Vec<GroupElement>,
    solutions: Vec<Vec<u32>>,
    class_of: HashMap<Vec<u32>, usize>,
    classes: Vec<(Vec<u32>, usize)>,
}

fn check_relation(t: &FiniteTable, q: &Quad, vals: &[u32]) -> bool {
    let term = |tm: &[(Option<usize>, bool); 2], extra: bool| {
        let (Some(a), Some(b)) = (tm[0].0, tm[1].0) else {
            return None;
        };
        let mut v = t.m(vals[a], vals[b]);
        if tm[0].1 ^ tm[1].1 ^ extra {
            v = t.m(v, t.eps);
        }
        Some(v)
    };
    t.null(term(&q.terms[0], false), term(&q.terms[1], true), term(&q.terms[2], false))
}

fn search(
    t: &FiniteTable,
    by_last: &[Vec<Quad>],
    vals: &mut Vec<u32>,
    k: usize,
    nodes: &std::sync::atomic::AtomicU64,
    cap: u64,
    out: &mut Vec<Vec<u32>>,
) -> Result<()> {
    if k == vals.len() {
        out.push(vals.clone());
        return Ok(());
    }
    for x in 0..t.n as u32 {
        if nodes.fetch_add(1, std::sync::atomic::Ordering::Relaxed) >= cap {
            return Err(Error::SearchSpaceExceeded {
                size: format!("more than {cap} search nodes"),
                cap,
            });
        }
        vals[k] = x;
        if by_last[k].iter().all(|q| check_relation(t, q, vals)) {
            search(t, by_last, vals, k + 1, nodes, cap, out)?;
        }
    }
    Ok(())
}

fn class_data(m: &Matroid, p: &Pasture, cap: u64) -> Result<ClassData> {
    if !p.is_finite() {
        return Err(Error::InfinitePasture);
    }
    let t = FiniteTable::new(p)?;
    let units = p.units().elements()?;
    let nb = m.bases.len();
    let mut by_last: Vec<Vec<Quad>> = vec![Vec::new(); nb];
    for q in quads(m) {
        let last = q
            .terms
            .iter()
            .flat_map(|x| x.iter().filter_map(|y| y.0))
            .max()
            .unwrap();
        by_last[last].push(q);
    }
    let nodes = std::sync::atomic::AtomicU64::new(0);
    let mut root = vec![t.one; nb];
    let solutions: Vec<Vec<u32>> = if nb == 1 {
        if by_last[0].iter().all(|q| check_relation(&t, q, &root)) {
            vec![root]
        } else {
            vec![]
        }
    } else {
        if !by_last[0].iter().all(|q| check_relation(&t, q, &root)) {
            return Ok(ClassData {
                table: t,
                units,
                solutions: vec![],
                class_of: HashMap::new(),
                classes: vec![],
            });
        }
        root.truncate(nb);
        let parts: Vec<Result<Vec<Vec<u32>>>> = (0..t.n as u32)
            .into_par_iter()
            .map(|x| {
                let mut vals = root.clone();
                vals[1] = x;
                let mut out = Vec::new();
                if by_last[1].iter().all(|q| check_relation(&t, q, &vals)) {
                    search(&t, &by_last, &mut vals, 2, &nodes, cap, &mut out)?;
                }
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for part in parts {
            all.extend(part?);
        }
        all
    };
    let characters = rescaling_characters(m, &t)?;
    let index: HashMap<&Vec<u32>, ()> = solutions.iter().map(|s| (s, ())).collect();
    let mut class_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut classes = Vec::new();
    for s in &solutions {
        if class_of.contains_key(s) {
            continue;
        }
        let orbit: BTreeSet<Vec<u32>> = characters
            .iter()
            .map(|c| s.iter().zip(c).map(|(&a, &b)| t.m(a, b)).collect())
            .collect();
        let id = classes.len();
        for o in &orbit {
            debug_assert!(index.contains_key(o), "rescaling leaves the solution set");
            class_of.insert(o.clone(), id);
        }
        classes.push((orbit.iter().next().unwrap().clone(), orbit.len()));
    }
    // order classes by representative
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&a, &b| classes[a].0.cmp(&classes[b].0));
    let mut rank = vec![0; classes.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    for v in class_of.values_mut() {
        *v = rank[*v];
    }
    let classes = order.into_iter().map(|i| classes[i].clone()).collect();
    Ok(ClassData {
        table: t,
        units,
        solutions,
        class_of,
        classes,
    })
}

// The distinct maps B -> prod_{e in B} d(e) / prod_{e in B_min} d(e).
fn rescaling_characters(m: &Matroid, t: &FiniteTable) -> Result<Vec<Vec<u32>>> {
    let total = (t.n as u128).pow(m.n as u32);
    if total > RESCALING_CAP as u128 {
        return Err(Error::SearchSpaceExceeded {
            size: total.to_string(),
            cap: RESCALING_CAP,
        });
    }
    let inv: Vec<u32> = (0..t.n as u32)
        .map(|x| (0..t.n as u32).find(|&y| t.m(x, y) == t.one).unwrap())
        .collect();
    let mut set = BTreeSet::new();
    let mut d = vec![0u32; m.n];
    for mut k in 0..total as u64 {
        for x in d.iter_mut() {
            *x = (k % t.n as u64) as u32;
            k /= t.n as u64;
        }
        let chi = |b: &Vec<usize>| b.iter().fold(t.one, |acc, &e| t.m(acc, d[e - 1]));
        let norm = inv[chi(&m.bases[0]) as usize];
        set.insert(m.bases.iter().map(|b| t.m(chi(b), norm)).collect::<Vec<u32>>());
    }
    Ok(set.into_iter().collect())
}

pub fn representation_classes(m: &Matroid, p: &Pasture) -> Result<Vec<RescalingClass>> {
    representation_classes_with_cap(m, p, DEFAULT_SEARCH_CAP)
}

/// Rescaling classes of representations of `m` over the finite pasture `p`.
///
/// Representations are normalized by sending the least basis to 1 and
/// enumerated by backtracking, testing each Plücker relation as soon as its
/// last basis has a value. `cap` bounds the number of search nodes.
pub fn representation_classes_with_cap(
    m: &Matroid,
    p: &Pasture,
    cap: u64,
) -> Result<Vec<RescalingClass>> {
    let data = class_data(m, p, cap)?;
    let (mm, pp) = (Arc::new(m.clone()), Arc::new(p.clone()));
    Ok(data
        .classes
        .iter()
        .map(|(rep, size)| RescalingClass {
            representative: Representation {
                matroid: mm.clone(),
                pasture: pp.clone(),
                values: rep.iter().map(|&i| data.units[i as usize].clone()).collect(),
            },
            size: *size,
        })
        .collect())
}

/// Number of normalized representations (before taking classes).
pub fn normalized_representation_count(m: &Matroid, p: &Pasture) -> Result<usize> {
    Ok(class_data(m, p, DEFAULT_SEARCH_CAP)?.solutions.len())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub lift_classes: usize,
    pub source_classes: usize,
    /// Source class hit by each lift class.
    pub image: Vec<usize>,
    /// Lift classes whose members do not all land in one source class.
    pub split: Vec<usize>,
}

impl BijectionReport {
    pub fn is_bijection(&self) -> bool {
        let distinct: BTreeSet<usize> = self.image.iter().copied().collect();
        self.split.is_empty()
            && self.lift_classes == self.source_classes
            && distinct.len() == self.image.len()
    }
}

/// Pushes rescaling classes of `m` over a lift forward along its canonical
/// morphism and compares with the classes over the source.
pub fn lift_bijection_check(m: &Matroid, lift: &LiftResult) -> Result<BijectionReport> {
    class_map(m, &lift.lambda)
}

/// Map on rescaling classes induced by a morphism of finite pastures.
pub fn class_map(m: &Matroid, f: &PastureMorphism) -> Result<BijectionReport> {
    let up = class_data(m, f.source(), DEFAULT_SEARCH_CAP)?;
    let down = class_data(m, f.target(), DEFAULT_SEARCH_CAP)?;
    let tg = f.target().units();
    let image_of = |v: &Vec<u32>| -> Option<usize> {
        let pushed: Vec<u32> = v
            .iter()
            .map(|&i| tg.index_of(&f.apply(&up.units[i as usize])) as u32)
            .collect();
        down.class_of.get(&pushed).copied()
    };
    let mut image = Vec::new();
    let mut split = Vec::new();
    let mut members: Vec<Vec<&Vec<u32>>> = vec![Vec::new(); up.classes.len()];
    for s in &up.solutions {
        members[up.class_of[s]].push(s);
    }
    for (i, (rep, _)) in up.classes.iter().enumerate() {
        let target = image_of(rep).ok_or_else(|| {
            Error::Invalid("pushforward of a representation is not a representation".into())
        })?;
        if members[i].iter().any(|s| image_of(s) != Some(target)) {
            split.push(i);
        }
        image.push(target);
    }
    let _ = &down.table;
    Ok(BijectionReport {
        lift_classes: up.classes.len(),
        source_classes: down.classes.len(),
        image,
        split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pasture::{f1pm, finite_field};

    pub(crate) fn k4() -> Matroid {
        // edges of K4 on vertices a b c d
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut bases = Vec::new();
        for s in subsets(6, 3) {
            let mut parent: Vec<usize> = (0..4).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut acyclic = true;
            for &e in &s {
                let (u, v) = edges[e - 1];
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                if a == b {
                    acyclic = false;
                }
                parent[a] = b;
            }
            if acyclic {
                bases.push(s);
            }
        }
        Matroid::from_bases(6, 3, bases).unwrap()
    }

    #[test]
    fn constructions() {
        assert_eq!(Matroid::uniform(2, 4).bases().len(), 6);
        let bad = Matroid::from_bases(4, 2, vec![vec![1, 2], vec![3, 4]]);
        assert!(matches!(bad, Err(Error::ExchangeAxiom { .. })));
        assert_eq!(k4().bases().len(), 16);
        let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(Matroid::graphic(4, &edges).unwrap(), k4());
    }

    #[test]
    fn json_round_trip() {
        let m = Matroid::uniform(2, 4);
        assert_eq!(Matroid::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn u24_over_f4_by_hand() {
        let p = finite_field(4).unwrap();
        let f = p.field().unwrap().clone();
        let m = Matroid::uniform(2, 4);
        // bases 12 13 14 23 24 34; fix 12 13 14 23 to 1
        let unit = |x: u32| p.field_unit(x).unwrap();
        for d24 in 1..4u32 {
            for d34 in 1..4u32 {
                let vals = vec![unit(1), unit(1), unit(1), unit(1), unit(d24), unit(d34)];
                // D12 D34 - D13 D24 + D14 D23
                let s = f.add(f.sub(d34, d24), 1);
                assert_eq!(plucker_check(&m, &p, &vals).is_ok(), s == 0);
            }
        }
    }

    #[test]
    fn u24_over_f1pm_never() {
        let p = f1pm();
        let m = Matroid::uniform(2, 4);
        let (one, e) = (p.one(), p.epsilon().clone());
        for mask in 0..32u32 {
            let mut vals = vec![one.clone()];
            for i in 0..5 {
                vals.push(if mask >> i & 1 == 1 { e.clone() } else { one.clone() });
            }
            assert!(plucker_check(&m, &p, &vals).is_err());
        }
    }

    #[test]
    fn minors_of_matrices_pass() {
        let p = finite_field(7).unwrap();
        let f = p.field().unwrap().clone();
        let cols: [[u32; 3]; 6] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3], [2, 5, 1]];
        let det = |a: [u32; 3], b: [u32; 3], c: [u32; 3]| {
            let t = |x: u32, y: u32, z: u32| f.mul(x, f.mul(y, z));
            let pos = f.add(f.add(t(a[0], b[1], c[2]), t(b[0], c[1], a[2])), t(c[0], a[1], b[2]));
            let neg = f.add(f.add(t(c[0], b[1], a[2]), t(a[0], c[1], b[2])), t(b[0], a[1], c[2]));
            f.sub(pos, neg)
        };
        let mut bases = Vec::new();
        let mut vals = Vec::new();
        for s in subsets(6, 3) {
            let d = det(cols[s[0] - 1], cols[s[1] - 1], cols[s[2] - 1]);
            if d != 0 {
                bases.push(s);
                vals.push(p.field_unit(d).unwrap());
            }
        }
        let m = Matroid::from_bases(6, 3, bases).unwrap();
        assert!(plucker_check(&m, &p, &vals).is_ok());
    }

    #[test]
    fn class_counts() {
        let m = Matroid::uniform(2, 4);
        for q in [4u64, 5, 7] {
            let c = representation_classes(&m, &finite_field(q).unwrap()).unwrap();
            assert_eq!(c.len() as u64, q - 2);
        }
        let k = k4();
        assert_eq!(representation_classes(&k, &finite_field(3).unwrap()).unwrap().len(), 1);
        assert!(matches!(
            representation_classes(&m, &crate::pasture::named(crate::pasture::NamedPasture::D)),
            Err(Error::InfinitePasture)
        ));
    }

    // Projective classes of n distinct points on the line over F_p, counted
    // by normalizing the first three points to 0, 1, infinity.
    fn line_classes_prime(p: u64, n: usize) -> usize {
        if n <= 3 {
            return 1;
        }
        let rest = p as usize - 2;
        (0..n - 3).map(|i| rest - i).product()
    }

    #[test]
    fn cross_ratio_oracle() {
        for q in [4u64, 5, 7, 8] {
            let m = Matroid::uniform(2, 4);
            let c = representation_classes(&m, &finite_field(q).unwrap()).unwrap();
            assert_eq!(c.len() as u64, q - 2, "q={q}");
        }
        for (p, n) in [(5u64, 5usize), (7, 5)] {
            let m = Matroid::uniform(2, n);
            let c = representation_classes(&m, &finite_field(p).unwrap()).unwrap();
            assert_eq!(c.len(), line_classes_prime(p, n), "p={p} n={n}");
        }
    }

    #[test]
    fn k4_over_f5() {
        assert_eq!(representation_classes(&k4(), &finite_field(5).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn lift_bijections() {
        let f4 = finite_field(4).unwrap();
        let u24 = Matroid::uniform(2, 4);
        let t = crate::lift::ternary_lift(&f4).unwrap();
        let r = lift_bijection_check(&u24, &t).unwrap();
        assert!(r.is_bijection(), "{r:?}");
        assert_eq!((r.lift_classes, r.source_classes), (2, 2));
        let w = crate::lift::wlum_lift(&f4).unwrap();
        assert!(lift_bijection_check(&u24, &w).unwrap().is_bijection());
        let b = crate::lift::binary_lift(&finite_field(2).unwrap()).unwrap();
        assert!(lift_bijection_check(&k4(), &b).unwrap().is_bijection());
    }

    #[test]
    fn pushforward_keeps_relations() {
        let f4 = finite_field(4).unwrap();
        let t = crate::lift::ternary_lift(&f4).unwrap();
        let m = Matroid::uniform(2, 4);
        for c in representation_classes(&m, &t.lift).unwrap() {
            let pushed = c.representative.pushforward(&t.lambda).unwrap();
            assert!(plucker_check(&m, &f4, pushed.values()).is_ok());
        }
    }

    #[test]
    fn alternating_delta() {
        let p = finite_field(5).unwrap();
        let m = Matroid::uniform(2, 4);
        let c = &representation_classes(&m, &p).unwrap()[0];
        let r = &c.representative;
        let ab = r.delta(&[1, 3]);
        let ba = r.delta(&[3, 1]);
        let neg = |x: &PastureElement| match x {
            PastureElement::Unit(g) => PastureElement::Unit(p.units().mul(g, p.epsilon())),
            z => z.clone(),
        };
        assert_eq!(ba, neg(&ab));
        assert_eq!(r.delta(&[2, 2]), PastureElement::Zero);
    }
}
