//! Binary, ternary, WLUM and GRS lifts together with their canonical
//! morphisms back to the source pasture.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::hexagon::{fundamental_elements, fundamental_pairs, hexagons, Hexagon, HexagonKind};
use crate::morphism::PastureMorphism;
use crate::pasture::{
    f1pm, free_algebra, monomial, named, quotient, tensor, tensor_all, NamedPasture, Pasture,
    PastureElement,
};

/// Largest fundamental element set accepted by [`grs_lift`].
pub const GRS_LIMIT: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LiftKind {
    Binary,
    Ternary,
    Wlum,
    Grs,
}

impl LiftKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LiftKind::Binary => "binary",
            LiftKind::Ternary => "ternary",
            LiftKind::Wlum => "wlum",
            LiftKind::Grs => "grs",
        }
    }
}

/// Multiplicities of the tensor factors of a ternary or WLUM lift.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct FactorDescriptor {
    pub u: usize,
    pub d: usize,
    pub h: usize,
    pub f3: usize,
    pub f2: usize,
}

impl FactorDescriptor {
    pub fn to_json(&self) -> Value {
        json!({"U": self.u, "D": self.d, "H": self.h, "F3": self.f3, "F2": self.f2})
    }
}

impl fmt::Display for FactorDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, n) in [("F2", self.f2), ("F3", self.f3), ("D", self.d), ("H", self.h), ("U", self.u)] {
            parts.extend(std::iter::repeat_n(name, n));
        }
        if parts.is_empty() {
            write!(f, "F1pm")
        } else {
            write!(f, "{}", parts.join(" ox "))
        }
    }
}

#[derive(Debug, Clone)]
pub struct LiftResult {
    pub lift: Pasture,
    /// The canonical morphism from the lift to the source.
    pub lambda: PastureMorphism,
    pub kind: LiftKind,
    pub descriptor: Option<FactorDescriptor>,
}

impl LiftResult {
    pub fn source(&self) -> &Pasture {
        self.lambda.target()
    }
}

/// The four pastures a single hexagon lifts to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    F3,
    D,
    H,
    U,
}

impl Model {
    pub fn of(kind: HexagonKind) -> Model {
        match kind {
            HexagonKind::Ternary => Model::F3,
            HexagonKind::Dyadic => Model::D,
            HexagonKind::Hexagonal => Model::H,
            HexagonKind::NearRegular => Model::U,
        }
    }

    pub fn pasture(self) -> Pasture {
        named(match self {
            Model::F3 => NamedPasture::F3,
            Model::D => NamedPasture::D,
            Model::H => NamedPasture::H,
            Model::U => NamedPasture::U,
        })
    }
}

// Images of the model's presentation generators (the sign first).
fn model_images(p: &Pasture, hex: &Hexagon) -> (Model, Vec<GroupElement>) {
    let e = p.epsilon().clone();
    let pair = &hex.canonical_pair;
    let model = Model::of(hex.kind);
    let imgs = match model {
        Model::F3 => vec![e],
        Model::D => {
            let fixed = hex.pairs.iter().find(|x| x.a == x.b).expect("dyadic hexagon has a symmetric pair");
            vec![e, fixed.a.clone()]
        }
        Model::H => vec![e, pair.a.clone()],
        Model::U => vec![e, pair.a.clone(), pair.b.clone()],
    };
    (model, imgs)
}

/// The lift of a single hexagon and its morphism to `p`.
pub fn hexagon_lift(p: &Pasture, hex: &Hexagon) -> Result<(Model, PastureMorphism)> {
    if !hexagons(p).contains(hex) {
        return Err(Error::HexagonNotOfPasture);
    }
    let (model, imgs) = model_images(p, hex);
    let lambda = PastureMorphism::from_generator_images(&model.pasture(), p, &imgs)?;
    Ok((model, lambda))
}

pub fn binary_lift(p: &Pasture) -> Result<LiftResult> {
    let lift = if p.epsilon_is_one() {
        named(NamedPasture::F2)
    } else {
        f1pm()
    };
    let lambda = PastureMorphism::from_generator_images(&lift, p, &[p.epsilon().clone()])?;
    Ok(LiftResult {
        lift,
        lambda,
        kind: LiftKind::Binary,
        descriptor: None,
    })
}

fn check_pair_bijection(l: &PastureMorphism) -> Result<()> {
    let mut mapped: Vec<_> = fundamental_pairs(l.source()).iter().map(|x| l.apply_pair(x)).collect();
    mapped.sort();
    mapped.dedup();
    if mapped != fundamental_pairs(l.target()) {
        return Err(Error::Invalid("lift does not biject fundamental pairs".into()));
    }
    Ok(())
}

pub fn ternary_lift(p: &Pasture) -> Result<LiftResult> {
    let hs = hexagons(p);
    let mut desc = FactorDescriptor::default();
    let mut models = Vec::new();
    let mut imgs = Vec::new();
    for h in &hs {
        let (m, i) = model_images(p, h);
        match m {
            Model::F3 => desc.f3 += 1,
            Model::D => desc.d += 1,
            Model::H => desc.h += 1,
            Model::U => desc.u += 1,
        }
        models.push(m.pasture());
        imgs.extend(i);
    }
    if models.is_empty() {
        imgs.push(p.epsilon().clone());
    }
    let lift = tensor_all(&models).with_label(desc.to_string());
    let lambda = PastureMorphism::from_generator_images(&lift, p, &imgs)?;
    check_pair_bijection(&lambda)?;
    Ok(LiftResult {
        lift,
        lambda,
        kind: LiftKind::Ternary,
        descriptor: Some(desc),
    })
}

pub fn wlum_lift(p: &Pasture) -> Result<LiftResult> {
    let t = ternary_lift(p)?;
    if !p.epsilon_is_one() {
        return Ok(LiftResult {
            kind: LiftKind::Wlum,
            ..t
        });
    }
    let mut desc = t.descriptor.unwrap();
    desc.f2 = 1;
    let lift = tensor(&t.lift, &named(NamedPasture::F2)).with_label(desc.to_string());
    let lg = t.lift.units();
    let mut imgs: Vec<GroupElement> = (0..lg.generator_count())
        .map(|i| {
            let mut w = vec![0i64; lg.generator_count()];
            w[i] = 1;
            t.lambda.apply(&lg.element_from_i64_word(&w))
        })
        .collect();
    imgs.push(p.epsilon().clone());
    let lambda = PastureMorphism::from_generator_images(&lift, p, &imgs)?;
    Ok(LiftResult {
        lift,
        lambda,
        kind: LiftKind::Wlum,
        descriptor: Some(desc),
    })
}

pub fn grs_lift(p: &Pasture) -> Result<LiftResult> {
    let fe = fundamental_elements(p);
    if fe.len() > GRS_LIMIT {
        return Err(Error::TooManyFundamental(fe.len(), GRS_LIMIT));
    }
    let g = p.units();
    let index: BTreeMap<&GroupElement, usize> = fe.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let names: Vec<String> = fe.iter().map(|a| format!("t[{}]", p.format_unit(a))).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let free = free_algebra(&f1pm(), &name_refs)?;
    let n = fe.len() + 1;
    let word = |ts: &[usize]| {
        let mut w = vec![0i64; n];
        for &t in ts {
            w[t + 1] += 1;
        }
        w
    };
    let elt = |neg: bool, ts: &[usize]| match monomial(&free, neg, &word(ts)) {
        PastureElement::Unit(x) => x,
        PastureElement::Zero => unreachable!(),
    };
    let unit = |x: GroupElement| PastureElement::Unit(x);
    let mut triples = Vec::new();
    let mut idents = Vec::new();
    if p.epsilon_is_one() {
        idents.push((elt(true, &[]), elt(false, &[])));
    }
    for (i, a) in fe.iter().enumerate() {
        let j = index[&g.inv(a)];
        if i <= j {
            idents.push((elt(false, &[i, j]), elt(false, &[])));
        }
    }
    for pair in fundamental_pairs(p) {
        let (i, j) = (index[&pair.a], index[&pair.b]);
        triples.push([unit(elt(false, &[i])), unit(elt(false, &[j])), unit(elt(true, &[]))]);
        // (a, b^-1) fundamental with b = 1/pair.b and c = -(ab)^-1
        let b = g.inv(&pair.b);
        let c = g.mul(p.epsilon(), &g.inv(&g.mul(&pair.a, &b)));
        let (jb, jc) = (index[&b], index[&c]);
        idents.push((elt(false, &[i, jb, jc]), elt(true, &[])));
    }
    for (i, a) in fe.iter().enumerate() {
        for (j, b) in fe.iter().enumerate().skip(i) {
            let c = g.inv(&g.mul(a, b));
            if let Some(&k) = index.get(&c) {
                if k >= j {
                    idents.push((elt(false, &[i, j, k]), elt(false, &[])));
                }
            }
        }
    }
    let lift = quotient(&free, &triples, &idents)?.with_label(format!(
        "Lg({})",
        p.label().unwrap_or("P")
    ));
    let mut imgs = vec![p.epsilon().clone()];
    imgs.extend(fe.iter().cloned());
    let lambda = PastureMorphism::from_generator_images(&lift, p, &imgs)?;
    let mut mapped: Vec<GroupElement> = fundamental_elements(&lift).iter().map(|x| lambda.apply(x)).collect();
    mapped.sort();
    mapped.dedup();
    if mapped != fe || fundamental_elements(&lift).len() != fe.len() {
        return Err(Error::Invalid("GRS lift does not biject fundamental elements".into()));
    }
    Ok(LiftResult {
        lift,
        lambda,
        kind: LiftKind::Grs,
        descriptor: None,
    })
}

pub fn lift(p: &Pasture, kind: LiftKind) -> Result<LiftResult> {
    match kind {
        LiftKind::Binary => binary_lift(p),
        LiftKind::Ternary => ternary_lift(p),
        LiftKind::Wlum => wlum_lift(p),
        LiftKind::Grs => grs_lift(p),
    }
}

/// Compares two ternary or WLUM lifts by their factor multiplicities.
///
/// Tensor products of D, H, U with at most one F2 and one F3 are determined
/// up to isomorphism by these counts and vice versa, since the hexagons of a
/// tensor product of such models are the hexagons of the factors.
pub fn lift_descriptor_iso(a: &LiftResult, b: &LiftResult) -> Result<bool> {
    match (a.descriptor, b.descriptor) {
        (Some(x), Some(y)) if a.kind != LiftKind::Grs && b.kind != LiftKind::Grs => Ok(x == y),
        _ => Err(Error::KindMismatch),
    }
}
