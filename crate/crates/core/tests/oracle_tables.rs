//! Independent derivations of the frozen fixture tables.
//!
//! The i2 table is re-derived from actual partial bijections on two
//! points, composed by hand; the s5 table is re-derived from subset
//! products of the five explicitly listed local bisections of the arrow
//! category. Neither derivation touches the enumeration or bisection
//! machinery of the crate.

use stonedual_core::fixtures;
use stonedual_core::monoid::{MonoidContext, MonoidTable};

/// A partial bijection on {0, 1}: image[p] = Some(q) means p ↦ q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PartialBijection {
    image: [Option<usize>; 2],
}

impl PartialBijection {
    fn compose(self, first: PartialBijection) -> PartialBijection {
        // self ∘ first: apply `first`, then `self`
        let mut image = [None, None];
        for p in 0..2 {
            if let Some(q) = first.image[p] {
                image[p] = self.image[q];
            }
        }
        PartialBijection { image }
    }

    fn domain_identity(self) -> PartialBijection {
        let mut image = [None, None];
        for p in 0..2 {
            if self.image[p].is_some() {
                image[p] = Some(p);
            }
        }
        PartialBijection { image }
    }

    fn range_identity(self) -> PartialBijection {
        let mut image = [None, None];
        for p in 0..2 {
            if let Some(q) = self.image[p] {
                image[q] = Some(q);
            }
        }
        PartialBijection { image }
    }
}

fn i2_by_hand() -> (Vec<&'static str>, Vec<PartialBijection>) {
    let pb = |a: Option<usize>, b: Option<usize>| PartialBijection { image: [a, b] };
    (
        vec!["0", "e1", "e2", "s12", "s21", "1", "w"],
        vec![
            pb(None, None),
            pb(Some(0), None),
            pb(None, Some(1)),
            pb(Some(1), None),
            pb(None, Some(0)),
            pb(Some(0), Some(1)),
            pb(Some(1), Some(0)),
        ],
    )
}

#[test]
fn i2_fixture_matches_partial_bijection_composition() {
    let (labels, maps) = i2_by_hand();
    let fixture = fixtures::i2();
    assert_eq!(fixture.n(), maps.len());
    let index_of = |m: PartialBijection| maps.iter().position(|&x| x == m).expect("closed");
    for (i, &x) in maps.iter().enumerate() {
        assert_eq!(fixture.label(i), labels[i]);
        for (j, &y) in maps.iter().enumerate() {
            let composed = index_of(x.compose(y));
            assert_eq!(
                fixture.mul(i, j),
                composed,
                "{} ∘ {}",
                labels[i],
                labels[j]
            );
        }
        assert_eq!(fixture.star(i), index_of(x.domain_identity()));
        assert_eq!(fixture.plus(i), index_of(x.range_identity()));
    }
}

/// The five local bisections of the arrow category, as explicit arrow
/// sets over {id_e, id_f, a}, multiplied as sets by hand.
#[test]
fn s5_fixture_matches_subset_products_over_arrow() {
    // arrows: 0 = id_e, 1 = id_f, 2 = a with d(a) = id_e, r(a) = id_f
    let d = [0usize, 1, 0];
    let r = [0usize, 1, 1];
    let compose = |x: usize, y: usize| -> Option<usize> {
        if d[x] != r[y] {
            return None;
        }
        match (x, y) {
            (0, 0) => Some(0),
            (1, 1) => Some(1),
            (2, 0) => Some(2),
            (1, 2) => Some(2),
            _ => None,
        }
    };
    let sets: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![2], vec![0, 1]];
    let labels = ["{}", "{id_e}", "{id_f}", "{a}", "{id_e,id_f}"];
    let product = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = a
            .iter()
            .flat_map(|&x| b.iter().filter_map(move |&y| compose(x, y)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let index_of =
        |s: &Vec<usize>| sets.iter().position(|t| t == s).expect("closed under products");
    let fixture = fixtures::s5();
    for (i, a) in sets.iter().enumerate() {
        assert_eq!(fixture.label(i), labels[i]);
        for (j, b) in sets.iter().enumerate() {
            assert_eq!(
                fixture.mul(i, j),
                index_of(&product(a, b)),
                "{} · {}",
                labels[i],
                labels[j]
            );
        }
        let mut star: Vec<usize> = a.iter().map(|&x| d[x]).collect();
        star.sort_unstable();
        star.dedup();
        assert_eq!(fixture.star(i), index_of(&star));
        let mut plus: Vec<usize> = a.iter().map(|&x| r[x]).collect();
        plus.sort_unstable();
        plus.dedup();
        assert_eq!(fixture.plus(i), index_of(&plus));
    }
}

#[test]
fn s5_is_what_the_bisection_machinery_produces() {
    let kb = fixtures::arrow().kb_monoid(64).unwrap();
    assert_eq!(kb.monoid.table, fixtures::s5());
}

#[test]
fn prime_filter_carriers_are_the_frozen_ones() {
    let freeze: Vec<(MonoidTable, Vec<(&str, Vec<&str>)>)> = vec![
        (
            fixtures::b4(),
            vec![("e", vec!["e", "1"]), ("f", vec!["f", "1"])],
        ),
        (
            fixtures::i2(),
            vec![
                ("e1", vec!["e1", "1"]),
                ("e2", vec!["e2", "1"]),
                ("s12", vec!["s12", "w"]),
                ("s21", vec!["s21", "w"]),
            ],
        ),
        (
            fixtures::s5(),
            vec![
                ("{id_e}", vec!["{id_e}", "{id_e,id_f}"]),
                ("{id_f}", vec!["{id_f}", "{id_e,id_f}"]),
                ("{a}", vec!["{a}"]),
            ],
        ),
    ];
    for (m, expected) in freeze {
        let ctx = MonoidContext::new(&m).unwrap();
        let filters = stonedual_core::filters::enumerate_prime_filters(&ctx).unwrap();
        assert_eq!(filters.len(), expected.len());
        for (filter, (min, carrier)) in filters.iter().zip(&expected) {
            assert_eq!(m.label(filter.min), *min);
            assert_eq!(m.labels(&filter.carrier), *carrier);
        }
    }
}

#[test]
fn s5_natural_order_is_subset_inclusion_of_bisections() {
    // the dictionary: element index -> the arrow subset it denotes
    let sets: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![2], vec![0, 1]];
    let m = fixtures::s5();
    let order = m.natural_order().unwrap();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            let subset = a.iter().all(|x| b.contains(x));
            assert_eq!(
                order.le(i, j),
                subset,
                "{} vs {}",
                m.label(i),
                m.label(j)
            );
        }
    }
}
