//! Pasture morphisms: validation, composition, hom-set enumeration and an
//! isomorphism test.

use std::sync::Arc;

use log::debug;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::finite::{small_coords, FiniteTable};
use crate::group::GroupElement;
use crate::hexagon::{fundamental_elements, hexagons, FundamentalPair, HexagonKind};
use crate::pasture::{Pasture, PastureElement};

/// Default bound on the number of candidate image assignments.
pub const DEFAULT_CANDIDATE_CAP: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct PastureMorphism {
    source: Arc<Pasture>,
    target: Arc<Pasture>,
    images: Vec<GroupElement>,
}

impl PartialEq for PastureMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.source == other.source && self.target == other.target
    }
}

impl Eq for PastureMorphism {}

impl PastureMorphism {
    /// Validated morphism from images of the canonical unit generators.
    pub fn make(source: &Pasture, target: &Pasture, images: Vec<GroupElement>) -> Result<Self> {
        Self::make_shared(Arc::new(source.clone()), Arc::new(target.clone()), images)
    }

    pub fn make_shared(
        source: Arc<Pasture>,
        target: Arc<Pasture>,
        images: Vec<GroupElement>,
    ) -> Result<Self> {
        if images.len() != source.units().dim() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                source.units().dim(),
                images.len()
            )));
        }
        if let Some(j) = source.units().check_images(target.units(), &images) {
            return Err(Error::GroupHomViolation(j));
        }
        let f = PastureMorphism {
            source,
            target,
            images,
        };
        if f.apply(f.source.epsilon()) != *f.target.epsilon() {
            return Err(Error::EpsilonViolation);
        }
        for (i, o) in f.source.null_orbits().iter().enumerate() {
            let [a, b, c] = o.representative();
            if !f
                .target
                .null_contains_units(&f.apply(a), &f.apply(b), &f.apply(c))
            {
                return Err(Error::NullsetViolation(i));
            }
        }
        Ok(f)
    }

    /// Validated morphism from images of the presentation generators.
    pub fn from_generator_images(
        source: &Pasture,
        target: &Pasture,
        gen_images: &[GroupElement],
    ) -> Result<Self> {
        let sg = source.units();
        let tg = target.units();
        if gen_images.len() != sg.generator_count() {
            return Err(Error::Invalid(format!(
                "expected {} generator images, got {}",
                sg.generator_count(),
                gen_images.len()
            )));
        }
        let eval = |w: &[BigInt]| {
            let mut acc = vec![BigInt::zero(); tg.dim()];
            for (k, img) in w.iter().zip(gen_images) {
                for (a, x) in acc.iter_mut().zip(img.coords()) {
                    *a += k * x;
                }
            }
            tg.reduce(acc)
        };
        let images: Vec<GroupElement> = (0..sg.dim()).map(|j| eval(&sg.word_of(&sg.generator(j)))).collect();
        let f = Self::make(source, target, images)?;
        for (i, img) in gen_images.iter().enumerate() {
            let mut w = vec![BigInt::zero(); sg.generator_count()];
            w[i] = BigInt::from(1);
            if f.apply(&sg.element_from_word(&w)) != *img {
                return Err(Error::GroupHomViolation(i));
            }
        }
        Ok(f)
    }

    pub fn identity(p: &Pasture) -> Self {
        let g = p.units();
        let images = (0..g.dim()).map(|j| g.generator(j)).collect();
        let p = Arc::new(p.clone());
        PastureMorphism {
            source: p.clone(),
            target: p,
            images,
        }
    }

    pub fn source(&self) -> &Pasture {
        &self.source
    }

    pub fn target(&self) -> &Pasture {
        &self.target
    }

    /// Images of the canonical unit generators of the source.
    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        self.source
            .units()
            .apply_images(self.target.units(), &self.images, x)
    }

    pub fn apply_element(&self, x: &PastureElement) -> PastureElement {
        match x {
            PastureElement::Zero => PastureElement::Zero,
            PastureElement::Unit(g) => PastureElement::Unit(self.apply(g)),
        }
    }

    pub fn apply_pair(&self, x: &FundamentalPair) -> FundamentalPair {
        FundamentalPair::new(self.apply(&x.a), self.apply(&x.b))
    }

    pub fn is_surjective_on_units(&self) -> bool {
        self.target.units().is_generated_by(&self.images)
    }

    /// Bijective on units and on null orbits.
    ///
    /// Equal invariants plus surjectivity give bijectivity on units, since
    /// finitely generated abelian groups are Hopfian. A unit bijection maps
    /// distinct null orbits to distinct null orbits, so equal orbit counts
    /// make the inverse a morphism as well.
    pub fn is_isomorphism(&self) -> bool {
        let (s, t) = (self.source.units(), self.target.units());
        s.torsion() == t.torsion()
            && s.free_rank() == t.free_rank()
            && self.source.null_orbits().len() == self.target.null_orbits().len()
            && self.is_surjective_on_units()
    }
}

pub fn compose(g: &PastureMorphism, f: &PastureMorphism) -> Result<PastureMorphism> {
    if f.target() != g.source() {
        return Err(Error::ChainMismatch);
    }
    let images = f.images.iter().map(|x| g.apply(x)).collect();
    PastureMorphism::make_shared(f.source.clone(), g.target.clone(), images)
}

pub fn hom_set(p: &Pasture, q: &Pasture) -> Result<Vec<PastureMorphism>> {
    hom_set_with_cap(p, q, DEFAULT_CANDIDATE_CAP)
}

/// All morphisms `p -> q`.
///
/// For a finite target every assignment of generator images is tried. For
/// an infinite target the source must be generated by its fundamental
/// elements and `-1`; fundamental elements go to fundamental elements, so it
/// suffices to try those as images.
pub fn hom_set_with_cap(p: &Pasture, q: &Pasture, cap: u64) -> Result<Vec<PastureMorphism>> {
    let (ps, qs) = (Arc::new(p.clone()), Arc::new(q.clone()));
    if q.is_finite() {
        hom_set_finite(ps, qs, cap)
    } else {
        hom_set_fundamental(ps, qs, cap)?.ok_or(Error::InfiniteTarget)
    }
}

fn check_cap(total: u128, cap: u64) -> Result<()> {
    if total > cap as u128 {
        return Err(Error::SearchSpaceExceeded {
            size: total.to_string(),
            cap,
        });
    }
    Ok(())
}

fn hom_set_finite(p: Arc<Pasture>, q: Arc<Pasture>, cap: u64) -> Result<Vec<PastureMorphism>> {
    let t = FiniteTable::new(&q)?;
    let sg = p.units();
    let tg = q.units();
    let all = tg.elements()?;
    let cands: Vec<Vec<u32>> = (0..sg.dim())
        .map(|j| match sg.torsion().get(j) {
            Some(d) => (0..t.n as u32).filter(|&x| t.pow(x, d) == t.one).collect(),
            None => (0..t.n as u32).collect(),
        })
        .collect();
    let total: u128 = cands.iter().map(|c| c.len() as u128).product();
    check_cap(total, cap)?;
    let e = t.exponent();
    let eps = small_coords(p.epsilon(), e);
    let orbits: Vec<[Vec<usize>; 3]> = p
        .null_orbits()
        .iter()
        .map(|o| o.representative().clone().map(|x| small_coords(&x, e)))
        .collect();
    let eval = |imgs: &[u32], c: &[usize]| {
        let mut r = t.one;
        for (&img, &k) in imgs.iter().zip(c) {
            for _ in 0..k {
                r = t.m(r, img);
            }
        }
        r
    };
    let found: Vec<Vec<u32>> = (0..total as u64)
        .into_par_iter()
        .filter_map(|mut k| {
            let mut imgs = vec![0u32; cands.len()];
            for j in (0..cands.len()).rev() {
                let n = cands[j].len() as u64;
                imgs[j] = cands[j][(k % n) as usize];
                k /= n;
            }
            if eval(&imgs, &eps) != t.eps {
                return None;
            }
            for [a, b, c] in &orbits {
                if !t.null_units(eval(&imgs, a), eval(&imgs, b), eval(&imgs, c)) {
                    return None;
                }
            }
            Some(imgs)
        })
        .collect();
    debug!("hom search: {total} candidates, {} morphisms", found.len());
    Ok(found
        .into_iter()
        .map(|imgs| PastureMorphism {
            source: p.clone(),
            target: q.clone(),
            images: imgs.iter().map(|&i| all[i as usize].clone()).collect(),
        })
        .collect())
}

/// Fundamental elements that together with `-1` generate the units, if
/// they do.
pub fn fundamental_generators(p: &Pasture) -> Option<Vec<GroupElement>> {
    let g = p.units();
    let mut gens = vec![p.epsilon().clone()];
    for a in fundamental_elements(p) {
        if g.solve(&gens, &a).is_none() {
            gens.push(a);
        }
    }
    g.is_generated_by(&gens).then(|| gens[1..].to_vec())
}

fn hom_set_fundamental(
    p: Arc<Pasture>,
    q: Arc<Pasture>,
    cap: u64,
) -> Result<Option<Vec<PastureMorphism>>> {
    let Some(gens) = fundamental_generators(&p) else {
        return Ok(None);
    };
    let sg = p.units();
    let tg = q.units();
    let mut basis = vec![p.epsilon().clone()];
    basis.extend(gens.iter().cloned());
    // canonical generator j = sum of coeff[j][i] * basis[i]
    let coeff: Vec<Vec<BigInt>> = (0..sg.dim())
        .map(|j| sg.solve(&basis, &sg.generator(j)).expect("basis generates"))
        .collect();
    let targets = fundamental_elements(&q);
    let total = (targets.len() as u128).pow(gens.len() as u32);
    check_cap(total, cap)?;
    let found: Vec<Vec<GroupElement>> = (0..total as u64)
        .into_par_iter()
        .filter_map(|mut k| {
            let mut assigned = vec![q.epsilon().clone()];
            let mut picks = Vec::with_capacity(gens.len());
            for _ in 0..gens.len() {
                picks.push(targets[(k % targets.len() as u64) as usize].clone());
                k /= targets.len() as u64;
            }
            picks.reverse();
            assigned.extend(picks);
            let images: Vec<GroupElement> = coeff
                .iter()
                .map(|c| {
                    let mut acc = vec![BigInt::zero(); tg.dim()];
                    for (k, img) in c.iter().zip(&assigned) {
                        for (a, x) in acc.iter_mut().zip(img.coords()) {
                            *a += k * x;
                        }
                    }
                    tg.reduce(acc)
                })
                .collect();
            if sg.check_images(tg, &images).is_some() {
                return None;
            }
            let consistent = basis
                .iter()
                .zip(&assigned)
                .all(|(b, a)| sg.apply_images(tg, &images, b) == *a);
            consistent.then_some(images)
        })
        .collect();
    let mut out = Vec::new();
    for images in found {
        if let Ok(f) = PastureMorphism::make_shared(p.clone(), q.clone(), images) {
            out.push(f);
        }
    }
    out.sort_by(|a, b| a.images.cmp(&b.images));
    out.dedup_by(|a, b| a.images == b.images);
    Ok(Some(out))
}

#[derive(Debug, Clone)]
pub enum IsoResult {
    Iso(PastureMorphism),
    NotIso(String),
    Unknown(String),
}

impl IsoResult {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoResult::Iso(_))
    }
}

fn kind_multiset(p: &Pasture) -> Vec<HexagonKind> {
    let mut v: Vec<HexagonKind> = hexagons(p).into_iter().map(|h| h.kind).collect();
    v.sort();
    v
}

/// Decides isomorphism when both pastures are finite or when one of them is
/// generated by fundamental elements and `-1`; otherwise `Unknown`.
pub fn iso_check(p: &Pasture, q: &Pasture) -> IsoResult {
    iso_check_with_cap(p, q, DEFAULT_CANDIDATE_CAP)
}

pub fn iso_check_with_cap(p: &Pasture, q: &Pasture, cap: u64) -> IsoResult {
    let (pg, qg) = (p.units(), q.units());
    if pg.torsion() != qg.torsion() || pg.free_rank() != qg.free_rank() {
        return IsoResult::NotIso(format!("unit groups differ: {pg} vs {qg}"));
    }
    if p.epsilon_is_one() != q.epsilon_is_one() {
        return IsoResult::NotIso("-1 = 1 holds in only one of them".into());
    }
    if p.null_orbits().len() != q.null_orbits().len() {
        return IsoResult::NotIso(format!(
            "null orbit counts differ: {} vs {}",
            p.null_orbits().len(),
            q.null_orbits().len()
        ));
    }
    if kind_multiset(p) != kind_multiset(q) {
        return IsoResult::NotIso("hexagon types differ".into());
    }
    let search = |a: &Pasture, b: &Pasture| -> Result<Option<Vec<PastureMorphism>>> {
        let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
        if b.is_finite() {
            hom_set_finite(a, b, cap).map(Some)
        } else {
            hom_set_fundamental(a, b, cap)
        }
    };
    let mut attempt = search(p, q);
    if matches!(attempt, Ok(None)) {
        // an isomorphism preserves generation by fundamental elements
        if fundamental_generators(q).is_some() {
            return IsoResult::NotIso("only one side is generated by fundamental elements".into());
        }
        attempt = Ok(None);
    }
    match attempt {
        Ok(Some(homs)) => match homs.into_iter().find(|f| f.is_isomorphism()) {
            Some(f) => IsoResult::Iso(f),
            None => IsoResult::NotIso("no morphism is an isomorphism".into()),
        },
        Ok(None) => IsoResult::Unknown("neither side is finite or generated by fundamental elements".into()),
        Err(e) => IsoResult::Unknown(e.to_string()),
    }
}

/// The projections of `product(p, q)`.
pub fn product_projections(
    p: &Pasture,
    q: &Pasture,
    pq: &Pasture,
) -> Result<(PastureMorphism, PastureMorphism)> {
    let (m, n) = (p.units().generator_count(), q.units().generator_count());
    let unit = |g: &Pasture, i: Option<usize>| {
        let mut w = vec![BigInt::zero(); g.units().generator_count()];
        if let Some(i) = i {
            w[i] = BigInt::from(1);
        }
        g.units().element_from_word(&w)
    };
    let left: Vec<GroupElement> = (0..m + n)
        .map(|i| unit(p, (i < m).then_some(i)))
        .collect();
    let right: Vec<GroupElement> = (0..m + n)
        .map(|i| unit(q, (i >= m).then(|| i - m)))
        .collect();
    Ok((
        PastureMorphism::from_generator_images(pq, p, &left)?,
        PastureMorphism::from_generator_images(pq, q, &right)?,
    ))
}

/// The inclusions into `tensor(p, q)`.
pub fn tensor_inclusions(
    p: &Pasture,
    q: &Pasture,
    pq: &Pasture,
) -> Result<(PastureMorphism, PastureMorphism)> {
    let (m, n) = (p.units().generator_count(), q.units().generator_count());
    let g = pq.units();
    let unit = |i: usize| {
        let mut w = vec![BigInt::zero(); m + n];
        w[i] = BigInt::from(1);
        g.element_from_word(&w)
    };
    let left: Vec<GroupElement> = (0..m).map(unit).collect();
    let right: Vec<GroupElement> = (m..m + n).map(unit).collect();
    Ok((
        PastureMorphism::from_generator_images(p, pq, &left)?,
        PastureMorphism::from_generator_images(q, pq, &right)?,
    ))
}
