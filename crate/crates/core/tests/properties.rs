use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use pasture_core::hexagon::{d3_rho, d3_sigma, fundamental_elements, fundamental_pairs, hexagon_of};
use pasture_core::matroid::{plucker_check, representation_classes, subsets, Matroid};
use pasture_core::morphism::{product_projections, tensor_inclusions};
use pasture_core::pasture::canonical_orbit;
use pasture_core::*;
use proptest::prelude::*;

fn corpus() -> Vec<Pasture> {
    use NamedPasture::*;
    let mut v: Vec<Pasture> = [F2, F3, S, W, K, H].into_iter().map(named).collect();
    v.push(finite_field(4).unwrap());
    v.push(finite_field(5).unwrap());
    v
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
            .collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn word(g: &AbelianGroup, w: &[i64]) -> GroupElement {
    g.element_from_i64_word(w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // |Z^n / rows| is the gcd of the maximal minors.
    #[test]
    fn cokernel_order_matches_minors(
        n in 1usize..=3,
        rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 0..=4),
    ) {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|r| r[..n].to_vec()).collect();
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let g = AbelianGroup::from_presentation(n, &big, &vec![BigInt::zero(); n]).unwrap();
        let mut gcd = BigInt::zero();
        for s in subsets(rows.len(), n) {
            let m: Vec<Vec<i64>> = s.iter().map(|&i| rows[i - 1].clone()).collect();
            gcd = gcd.gcd(&det(&m));
        }
        match g.order() {
            Some(o) => prop_assert_eq!(o, gcd.abs()),
            None => prop_assert!(gcd.is_zero()),
        }
    }

    #[test]
    fn canonical_form_is_fixed(
        n in 1usize..=3,
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 0..=3),
    ) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r[..n].iter().map(|&x| BigInt::from(x)).collect()).collect();
        let g = AbelianGroup::from_presentation(n, &big, &vec![BigInt::zero(); n]).unwrap();
        let diag: Vec<Vec<BigInt>> = g.torsion().iter().enumerate().map(|(i, d)| {
            let mut r = vec![BigInt::zero(); g.dim()];
            r[i] = d.clone();
            r
        }).collect();
        let h = AbelianGroup::from_presentation(g.dim(), &diag, &vec![BigInt::zero(); g.dim()]).unwrap();
        prop_assert!(g.same_canonical_form(&h));
        prop_assert_eq!(h.torsion(), g.torsion());
    }

    #[test]
    fn quotient_kills(
        rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 0..=2),
        kill in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 1..=2),
    ) {
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let g = AbelianGroup::from_presentation(3, &big, &[BigInt::zero(), BigInt::zero(), BigInt::zero()]).unwrap();
        let ks: Vec<GroupElement> = kill.iter().map(|w| word(&g, w)).collect();
        let q = g.quotient_by(&ks).unwrap();
        for k in &ks {
            prop_assert!(q.transfer(&g, k).is_identity());
        }
        // transfer is a homomorphism
        let (a, b) = (word(&g, &[1, 0, 0]), word(&g, &[0, 1, 1]));
        prop_assert_eq!(q.transfer(&g, &g.mul(&a, &b)), q.mul(&q.transfer(&g, &a), &q.transfer(&g, &b)));
    }

    // Counted on presentation generators by brute force.
    #[test]
    fn hom_counts_match_brute_force(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 0..=2),
        target in 0usize..4,
    ) {
        // epsilon is the first generator
        let mut rows = rows;
        rows.push(vec![2, 0]);
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let g = AbelianGroup::from_presentation(2, &big, &[BigInt::from(1), BigInt::zero()]).unwrap();
        let t = [
            finite_field(5).unwrap(),
            finite_field(7).unwrap(),
            product(&finite_field(3).unwrap(), &finite_field(5).unwrap()),
            named(NamedPasture::H),
        ][target].units().clone();
        let elems = t.elements().unwrap();
        let mut count = 0;
        for x in elems.iter().filter(|x| *x == t.epsilon()) {
            for y in &elems {
                let ok = rows.iter().all(|r| {
                    t.mul(&t.pow_i64(x, r[0]), &t.pow_i64(y, r[1])).is_identity()
                });
                if ok {
                    count += 1;
                }
            }
        }
        prop_assert_eq!(g.enumerate_homs(&t).unwrap().len(), count);
    }
}

#[test]
fn product_nullset_is_componentwise() {
    let c = corpus();
    for p in &c {
        for q in &c {
            let pq = product(p, q);
            let pu = p.units().elements().unwrap();
            let qu = q.units().elements().unwrap();
            for b1 in &pu {
                for c1 in &pu {
                    let left = p.null_contains_units(&p.one(), b1, c1);
                    for b2 in &qu {
                        for c2 in &qu {
                            let right = q.null_contains_units(&q.one(), b2, c2);
                            let b = pasture::pair_unit(&pq, p, q, b1, b2);
                            let cc = pasture::pair_unit(&pq, p, q, c1, c2);
                            assert_eq!(pq.null_contains_units(&pq.one(), &b, &cc), left && right);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn tensor_nullset_is_generated_by_factors() {
    let c = corpus();
    for p in &c {
        for q in &c {
            let pq = tensor(p, q);
            let (i, j) = tensor_inclusions(p, q, &pq).unwrap();
            let mut expect = BTreeSet::new();
            for (f, src) in [(&i, p), (&j, q)] {
                for o in src.null_orbits() {
                    let [a, b, cc] = o.representative();
                    expect.insert(canonical_orbit(pq.units(), [&f.apply(a), &f.apply(b), &f.apply(cc)]));
                }
            }
            let got: BTreeSet<NullTripleOrbit> = pq.null_orbits().iter().cloned().collect();
            assert_eq!(got, expect, "{p} ox {q}");
        }
    }
}

#[test]
fn two_term_rule_on_corpus() {
    let mut c = corpus();
    c.push(product(&finite_field(4).unwrap(), &finite_field(5).unwrap()));
    for p in &c {
        let g = p.units();
        let us = g.elements().unwrap();
        for x in &us {
            for y in &us {
                let z = PastureElement::Zero;
                let holds = p.null_contains(&PastureElement::Unit(x.clone()), &PastureElement::Unit(y.clone()), &z);
                assert_eq!(holds, *y == g.mul(x, p.epsilon()));
            }
        }
    }
}

#[test]
fn constructors_validate() {
    let mut c = corpus();
    for n in NamedPasture::ALL {
        c.push(named(n));
    }
    for q in [7u64, 8, 9, 16, 25, 27, 32, 49, 64] {
        c.push(finite_field(q).unwrap());
    }
    c.push(product(&c[1], &c[6]));
    c.push(tensor(&named(NamedPasture::D), &named(NamedPasture::H)));
    for p in &c {
        assert!(p.validate().is_ok(), "{p}");
    }
}

#[test]
fn d3_relations_on_all_pairs() {
    let mut c = corpus();
    c.push(finite_field(7).unwrap());
    c.push(finite_field(8).unwrap());
    c.push(finite_field(9).unwrap());
    c.push(named(NamedPasture::U));
    c.push(named(NamedPasture::D));
    c.push(named(NamedPasture::G));
    for p in &c {
        let pairs = fundamental_pairs(p);
        let mut total = 0;
        for h in hexagons(p) {
            total += h.mu;
        }
        assert_eq!(total, pairs.len());
        for x in &pairs {
            let r = |y: &FundamentalPair| d3_rho(p, y).unwrap();
            let s = |y: &FundamentalPair| d3_sigma(p, y).unwrap();
            assert_eq!(&r(&r(&r(x))), x);
            assert_eq!(&s(&s(x)), x);
            assert_eq!(&s(&r(&s(&r(x)))), x);
        }
    }
}

#[test]
fn morphisms_respect_hexagons() {
    let c = corpus();
    for p in &c {
        for q in &c {
            for f in hom_set(p, q).unwrap() {
                assert!(PastureMorphism::make(p, q, f.images().to_vec()).is_ok());
                for h in hexagons(p) {
                    let img = f.apply_pair(&h.canonical_pair);
                    let ih = hexagon_of(q, &img).unwrap();
                    assert_eq!(h.mu % ih.mu, 0, "{p} -> {q}");
                }
            }
        }
    }
}

#[test]
fn hom_into_products() {
    let c = corpus();
    let small = [&c[0], &c[1], &c[6], &c[7], &c[4]];
    for p in [&c[0], &c[1], &c[5], &c[6], &c[7]] {
        for q1 in small {
            for q2 in small {
                let qq = product(q1, q2);
                let (pi1, pi2) = product_projections(q1, q2, &qq).unwrap();
                let homs = hom_set(p, &qq).unwrap();
                let n1 = hom_set(p, q1).unwrap().len();
                let n2 = hom_set(p, q2).unwrap().len();
                assert_eq!(homs.len(), n1 * n2, "{p} -> {q1} x {q2}");
                let pairs: BTreeSet<(Vec<GroupElement>, Vec<GroupElement>)> = homs
                    .iter()
                    .map(|f| {
                        (
                            compose(&pi1, f).unwrap().images().to_vec(),
                            compose(&pi2, f).unwrap().images().to_vec(),
                        )
                    })
                    .collect();
                assert_eq!(pairs.len(), homs.len());
            }
        }
    }
}

#[test]
fn hom_out_of_tensors() {
    let c = corpus();
    let src = [&c[0], &c[1], &c[5], &c[6]];
    for p1 in src {
        for p2 in src {
            let t = tensor(p1, p2);
            let (i, j) = tensor_inclusions(p1, p2, &t).unwrap();
            for q in [&c[0], &c[1], &c[6], &c[7], &c[2], &c[4]] {
                let homs = hom_set(&t, q).unwrap();
                let n1 = hom_set(p1, q).unwrap().len();
                let n2 = hom_set(p2, q).unwrap().len();
                assert_eq!(homs.len(), n1 * n2, "{p1} ox {p2} -> {q}");
                let pairs: BTreeSet<(Vec<GroupElement>, Vec<GroupElement>)> = homs
                    .iter()
                    .map(|f| {
                        (
                            compose(f, &i).unwrap().images().to_vec(),
                            compose(f, &j).unwrap().images().to_vec(),
                        )
                    })
                    .collect();
                assert_eq!(pairs.len(), homs.len());
            }
        }
    }
}

fn lift_corpus() -> Vec<Pasture> {
    let mut c: Vec<Pasture> = NamedPasture::ALL.into_iter().map(named).collect();
    for q in [4u64, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
        c.push(finite_field(q).unwrap());
    }
    c
}

#[test]
fn lift_maps_are_bijective_where_expected() {
    for p in lift_corpus() {
        let t = ternary_lift(&p).unwrap();
        assert!(PastureMorphism::make(&t.lift, &p, t.lambda.images().to_vec()).is_ok());
        let up: BTreeSet<FundamentalPair> = fundamental_pairs(&t.lift)
            .iter()
            .map(|x| t.lambda.apply_pair(x))
            .collect();
        assert_eq!(up.len(), fundamental_pairs(&t.lift).len(), "{p}");
        assert_eq!(up, fundamental_pairs(&p).into_iter().collect(), "{p}");

        let g = grs_lift(&p).unwrap();
        let fe: BTreeSet<GroupElement> = fundamental_elements(&g.lift)
            .iter()
            .map(|x| g.lambda.apply(x))
            .collect();
        assert_eq!(fe.len(), fundamental_elements(&g.lift).len(), "{p}");
        assert_eq!(fe, fundamental_elements(&p).into_iter().collect(), "{p}");
    }
}

#[test]
fn rescaling_orbits_divide_group_order() {
    let u24 = Matroid::uniform(2, 4);
    for q in [4u64, 5, 7] {
        let p = finite_field(q).unwrap();
        let group = (q - 1).pow(4) as usize;
        for c in representation_classes(&u24, &p).unwrap() {
            assert_eq!(group % c.size, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabeling_keeps_class_count(perm in Just((1..=6usize).collect::<Vec<_>>()).prop_shuffle(), q in prop::sample::select(vec![3u64, 4, 5])) {
        let k4 = {
            let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
            let bases: Vec<Vec<usize>> = subsets(6, 3).into_iter().filter(|s| {
                let vs: BTreeSet<usize> = s.iter().flat_map(|&e| [edges[e - 1].0, edges[e - 1].1]).collect();
                // three edges form a tree on four vertices iff they touch all of them
                vs.len() == 4
            }).collect();
            Matroid::from_bases(6, 3, bases).unwrap()
        };
        let relabeled = Matroid::from_bases(
            6,
            3,
            k4.bases().iter().map(|b| b.iter().map(|&e| perm[e - 1]).collect()).collect(),
        ).unwrap();
        let p = finite_field(q).unwrap();
        prop_assert_eq!(
            representation_classes(&k4, &p).unwrap().len(),
            representation_classes(&relabeled, &p).unwrap().len()
        );
    }
}

#[test]
fn pushforward_keeps_plucker_relations() {
    let u24 = Matroid::uniform(2, 4);
    let c = corpus();
    for p in &c {
        let classes = representation_classes(&u24, p).unwrap();
        for q in &c {
            for f in hom_set(p, q).unwrap() {
                for cl in &classes {
                    let vals: Vec<GroupElement> =
                        cl.representative.values().iter().map(|v| f.apply(v)).collect();
                    assert!(plucker_check(&u24, q, &vals).is_ok(), "{p} -> {q}");
                }
            }
        }
    }
}
