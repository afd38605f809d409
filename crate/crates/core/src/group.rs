//! Finitely generated abelian groups given by presentations.
//!
//! A presentation is `Z^n / <rows>`. Elements are stored in canonical
//! coordinates: torsion coordinates first (reduced modulo their invariant
//! factors, which form a divisibility chain), then free coordinates.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::snf::{smith, solve_rows};

/// A group element in canonical coordinates of some [`AbelianGroup`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement(Vec<BigInt>);

impl GroupElement {
    pub fn new(coords: Vec<BigInt>) -> Self {
        GroupElement(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        GroupElement(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

// Lexicographic, each coordinate compared by absolute value and then sign
// with the positive value first. Torsion coordinates are never negative so
// this is plain numeric order on them.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            let o = a
                .abs()
                .cmp(&b.abs())
                .then_with(|| a.is_negative().cmp(&b.is_negative()));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    generator_count: usize,
    relations: Vec<Vec<BigInt>>,
    torsion: Vec<BigInt>,
    free_rank: usize,
    // n x dim, presentation word -> canonical coordinates
    to_canonical: Vec<Vec<BigInt>>,
    // dim x n, canonical generator -> presentation word
    from_canonical: Vec<Vec<BigInt>>,
    epsilon: GroupElement,
}

impl AbelianGroup {
    /// Builds `Z^n / <relations>` with a distinguished element `epsilon`
    /// (given as a word) that must satisfy `epsilon^2 = 1`.
    pub fn from_presentation(
        n: usize,
        relations: &[Vec<BigInt>],
        epsilon_word: &[BigInt],
    ) -> Result<Self> {
        for r in relations.iter().chain(std::iter::once(&epsilon_word.to_vec())) {
            if r.len() != n {
                return Err(Error::RowLength {
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let s = smith(relations, n);
        let rank = s.diag.len();
        let mut keep = Vec::new();
        let mut torsion = Vec::new();
        let mut reduced = Vec::new();
        for (i, d) in s.diag.iter().enumerate() {
            reduced.push(s.v_inv[i].iter().map(|x| x * d).collect::<Vec<_>>());
            if !d.is_one() {
                keep.push(i);
                torsion.push(d.clone());
            }
        }
        keep.extend(rank..n);
        let to_canonical = (0..n)
            .map(|r| keep.iter().map(|&c| s.v[r][c].clone()).collect())
            .collect();
        let from_canonical = keep.iter().map(|&c| s.v_inv[c].clone()).collect();
        let mut g = AbelianGroup {
            generator_count: n,
            relations: reduced,
            torsion,
            free_rank: n - rank,
            to_canonical,
            from_canonical,
            epsilon: GroupElement(Vec::new()),
        };
        g.epsilon = g.element_from_word(epsilon_word);
        if !g.mul(&g.epsilon, &g.epsilon).is_identity() {
            return Err(Error::EpsilonOrder);
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        AbelianGroup::from_presentation(0, &[], &[]).expect("trivial group")
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    /// Relation rows, reduced to a basis of the relation lattice.
    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of canonical coordinates.
    pub fn dim(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn epsilon(&self) -> &GroupElement {
        &self.epsilon
    }

    /// Same invariant factors, free rank and epsilon.
    pub fn same_canonical_form(&self, other: &AbelianGroup) -> bool {
        self.torsion == other.torsion
            && self.free_rank == other.free_rank
            && self.epsilon == other.epsilon
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![BigInt::zero(); self.dim()])
    }

    /// The `j`-th canonical generator.
    pub fn generator(&self, j: usize) -> GroupElement {
        let mut c = vec![BigInt::zero(); self.dim()];
        c[j] = BigInt::one();
        self.reduce(c)
    }

    pub fn reduce(&self, mut coords: Vec<BigInt>) -> GroupElement {
        debug_assert_eq!(coords.len(), self.dim());
        for (c, d) in coords.iter_mut().zip(&self.torsion) {
            *c = c.mod_floor(d);
        }
        GroupElement(coords)
    }

    pub fn element_from_word(&self, word: &[BigInt]) -> GroupElement {
        assert_eq!(word.len(), self.generator_count, "word length");
        let coords = (0..self.dim())
            .map(|j| {
                word.iter()
                    .zip(&self.to_canonical)
                    .map(|(w, row)| w * &row[j])
                    .sum()
            })
            .collect();
        self.reduce(coords)
    }

    pub fn element_from_i64_word(&self, word: &[i64]) -> GroupElement {
        let w: Vec<BigInt> = word.iter().map(|&x| BigInt::from(x)).collect();
        self.element_from_word(&w)
    }

    /// A presentation word representing `e`.
    pub fn word_of(&self, e: &GroupElement) -> Vec<BigInt> {
        (0..self.generator_count)
            .map(|i| {
                e.0.iter()
                    .zip(&self.from_canonical)
                    .map(|(c, row)| c * &row[i])
                    .sum()
            })
            .collect()
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().map(|x| -x).collect())
    }

    pub fn div(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.reduce(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn pow(&self, a: &GroupElement, k: &BigInt) -> GroupElement {
        self.reduce(a.0.iter().map(|x| x * k).collect())
    }

    pub fn pow_i64(&self, a: &GroupElement, k: i64) -> GroupElement {
        self.pow(a, &BigInt::from(k))
    }

    /// Order of an element, `None` if it has infinite order.
    pub fn order_of(&self, a: &GroupElement) -> Option<BigInt> {
        let t = self.torsion.len();
        if a.0[t..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(
            a.0.iter()
                .zip(&self.torsion)
                .map(|(c, d)| d / c.gcd(d))
                .fold(BigInt::one(), |acc, x| acc.lcm(&x)),
        )
    }

    /// All elements of a finite group, in mixed-radix order on the torsion
    /// coordinates.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let radices = self.small_torsion()?;
        let total: usize = radices.iter().product();
        Ok((0..total).map(|i| self.element_at(&radices, i)).collect())
    }

    /// Invariant factors as machine integers. Fails for infinite groups or
    /// absurdly large ones.
    pub fn small_torsion(&self) -> Result<Vec<usize>> {
        if !self.is_finite() {
            return Err(Error::InfinitePasture);
        }
        self.torsion
            .iter()
            .map(|d| {
                d.to_usize().ok_or_else(|| Error::SearchSpaceExceeded {
                    size: d.to_string(),
                    cap: usize::MAX as u64,
                })
            })
            .collect()
    }

    fn element_at(&self, radices: &[usize], mut i: usize) -> GroupElement {
        let mut c = vec![BigInt::zero(); radices.len()];
        for j in (0..radices.len()).rev() {
            c[j] = BigInt::from(i % radices[j]);
            i /= radices[j];
        }
        GroupElement(c)
    }

    /// Index of `e` in the order used by [`AbelianGroup::elements`].
    pub fn index_of(&self, e: &GroupElement) -> usize {
        let mut i = 0usize;
        for (c, d) in e.0.iter().zip(&self.torsion) {
            i = i * d.to_usize().unwrap() + c.to_usize().unwrap();
        }
        i
    }

    /// Quotient by the subgroup generated by `kill`. The result keeps the
    /// same presentation generators, so [`AbelianGroup::transfer`] maps
    /// elements across.
    pub fn quotient_by(&self, kill: &[GroupElement]) -> Result<AbelianGroup> {
        let mut rows = self.relations.clone();
        rows.extend(kill.iter().map(|k| self.word_of(k)));
        AbelianGroup::from_presentation(self.generator_count, &rows, &self.word_of(&self.epsilon))
    }

    /// Maps an element of `from` into `self`, where both share presentation
    /// generators and `self` has at least the relations of `from`.
    pub fn transfer(&self, from: &AbelianGroup, e: &GroupElement) -> GroupElement {
        self.element_from_word(&from.word_of(e))
    }

    /// Evaluates the homomorphism sending the `j`-th canonical generator of
    /// `self` to `images[j]` in `target`.
    pub fn apply_images(
        &self,
        target: &AbelianGroup,
        images: &[GroupElement],
        e: &GroupElement,
    ) -> GroupElement {
        let mut acc = vec![BigInt::zero(); target.dim()];
        for (c, img) in e.0.iter().zip(images) {
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(&img.0) {
                *a += c * x;
            }
        }
        target.reduce(acc)
    }

    /// Whether `images` (one per canonical generator) define a homomorphism.
    /// Returns the first offending generator otherwise.
    pub fn check_images(&self, target: &AbelianGroup, images: &[GroupElement]) -> Option<usize> {
        self.torsion
            .iter()
            .enumerate()
            .find(|(j, d)| !target.pow(&images[*j], d).is_identity())
            .map(|(j, _)| j)
    }

    /// Writes `t` as an integer combination of `gens`, if possible.
    pub fn solve(&self, gens: &[GroupElement], t: &GroupElement) -> Option<Vec<BigInt>> {
        let dim = self.dim();
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.0.clone()).collect();
        for (j, d) in self.torsion.iter().enumerate() {
            let mut r = vec![BigInt::zero(); dim];
            r[j] = d.clone();
            rows.push(r);
        }
        let z = solve_rows(&rows, dim, &t.0)?;
        Some(z[..gens.len()].to_vec())
    }

    /// Whether `gens` generate the whole group.
    pub fn is_generated_by(&self, gens: &[GroupElement]) -> bool {
        (0..self.dim()).all(|j| self.solve(gens, &self.generator(j)).is_some())
    }

    /// All homomorphisms to a finite `target` sending epsilon to epsilon,
    /// as image lists on the canonical generators.
    pub fn enumerate_homs(&self, target: &AbelianGroup) -> Result<Vec<Vec<GroupElement>>> {
        if !target.is_finite() {
            return Err(Error::InfiniteTarget);
        }
        let all = target.elements()?;
        let choices: Vec<Vec<GroupElement>> = (0..self.dim())
            .map(|j| match self.torsion.get(j) {
                Some(d) => all
                    .iter()
                    .filter(|x| target.pow(x, d).is_identity())
                    .cloned()
                    .collect(),
                None => all.clone(),
            })
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; choices.len()];
        if choices.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        loop {
            let images: Vec<GroupElement> =
                idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            if self.apply_images(target, &images, &self.epsilon) == target.epsilon {
                out.push(images);
            }
            let mut k = choices.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend((0..self.free_rank).map(|_| "Z".to_string()));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(r: &[&[i64]]) -> Vec<Vec<BigInt>> {
        r.iter().map(|x| x.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn w(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn four_six_gives_z_plus_z2() {
        let g = AbelianGroup::from_presentation(2, &rows(&[&[4, 6]]), &w(&[0, 0])).unwrap();
        assert_eq!(g.torsion(), &[BigInt::from(2)]);
        assert_eq!(g.free_rank(), 1);
    }

    #[test]
    fn quotient_to_cyclic_four() {
        // Z/2 (epsilon) + Z (t), kill t^2 * epsilon
        let g = AbelianGroup::from_presentation(2, &rows(&[&[2, 0]]), &w(&[1, 0])).unwrap();
        let t = g.element_from_i64_word(&[0, 1]);
        let kill = g.mul(&g.pow_i64(&t, 2), g.epsilon());
        let q = g.quotient_by(&[kill]).unwrap();
        assert_eq!(q.torsion(), &[BigInt::from(4)]);
        assert_eq!(q.free_rank(), 0);
        let tq = q.transfer(&g, &t);
        assert_eq!(q.pow_i64(&tq, 2), *q.epsilon());
        assert_eq!(q.order_of(&tq), Some(BigInt::from(4)));
    }

    #[test]
    fn epsilon_must_square_to_one() {
        let r = AbelianGroup::from_presentation(1, &rows(&[&[3]]), &w(&[1]));
        assert_eq!(r.unwrap_err(), Error::EpsilonOrder);
    }

    #[test]
    fn word_round_trip() {
        let g = AbelianGroup::from_presentation(3, &rows(&[&[4, 6, 0], &[2, 2, 6]]), &w(&[0, 0, 0]))
            .unwrap();
        for e in [[1, 0, 0], [0, 1, 0], [3, -2, 5], [7, 7, -1]] {
            let x = g.element_from_i64_word(&e);
            assert_eq!(g.element_from_word(&g.word_of(&x)), x);
        }
    }

    #[test]
    fn hom_counts() {
        let c = |m: i64, e: i64| {
            AbelianGroup::from_presentation(1, &rows(&[&[m]]), &w(&[e])).unwrap()
        };
        assert_eq!(c(6, 0).enumerate_homs(&c(3, 0)).unwrap().len(), 3);
        assert_eq!(c(2, 0).enumerate_homs(&c(3, 0)).unwrap().len(), 1);
        let zz2 = AbelianGroup::from_presentation(2, &rows(&[&[2, 0]]), &w(&[1, 0])).unwrap();
        assert_eq!(zz2.enumerate_homs(&c(4, 2)).unwrap().len(), 4);
        assert_eq!(
            c(4, 2).enumerate_homs(&zz2).unwrap_err(),
            Error::InfiniteTarget
        );
    }

    #[test]
    fn element_order_puts_positive_first() {
        let a = GroupElement::from_i64s(&[1]);
        let b = GroupElement::from_i64s(&[-1]);
        let c = GroupElement::from_i64s(&[2]);
        assert!(a < b && b < c);
    }

    #[test]
    fn solve_in_torsion() {
        let g = AbelianGroup::from_presentation(1, &rows(&[&[6]]), &w(&[3])).unwrap();
        let two = g.element_from_i64_word(&[2]);
        let four = g.element_from_i64_word(&[4]);
        assert!(g.solve(std::slice::from_ref(&two), &four).is_some());
        assert!(g.solve(std::slice::from_ref(&two), &g.epsilon().clone()).is_none());
        assert!(!g.is_generated_by(&[two]));
    }
}
