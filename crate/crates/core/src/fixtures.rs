//! Canonical small fixtures used across tests, the suite runner and the
//! `fixture:` URI scheme of the file loaders.
//!
//! Monoids: `b4` (four-element Boolean algebra), `g0` (two-element group
//! with zero adjoined), `i2` (symmetric inverse monoid on two points),
//! `s5` (the bisection monoid of `arrow`), `chain3` (three-element chain,
//! not complemented), `kb_fork` (the bisection monoid of `fork`).
//!
//! Categories: `arrow` (two objects, one non-identity arrow), `pair2`
//! (pair groupoid on two objects), `fork` (two arrows out of one object,
//! not right reversible), `fork_n`, `discrete`, `flat2` (one object,
//! one non-cancellable loop).
//!
//! The `i2` and `s5` tables are frozen literals; `tests/oracle_tables.rs`
//! re-derives both from partial bijection composition and from subset
//! products over `arrow`.

use crate::category::CategoryTable;
use crate::monoid::{HomomorphismMap, MonoidTable};

/// The Boolean algebra {0, e, f, 1} as a Boolean inverse monoid:
/// multiplication is meet, star and plus are the identity.
pub fn b4() -> MonoidTable {
    MonoidTable::from_tables(
        &["0", "e", "f", "1"],
        &[
            &["0", "0", "0", "0"],
            &["0", "e", "0", "e"],
            &["0", "0", "f", "f"],
            &["0", "e", "f", "1"],
        ],
        &["0", "e", "f", "1"],
        &["0", "e", "f", "1"],
        "0",
        "1",
    )
    .expect("b4 fixture is well formed")
}

/// The two-element group {1, g} with a zero adjoined.
pub fn g0() -> MonoidTable {
    MonoidTable::from_tables(
        &["0", "1", "g"],
        &[
            &["0", "0", "0"],
            &["0", "1", "g"],
            &["0", "g", "1"],
        ],
        &["0", "1", "1"],
        &["0", "1", "1"],
        "0",
        "1",
    )
    .expect("g0 fixture is well formed")
}

/// The symmetric inverse monoid on {1, 2}: the empty map, the two
/// restricted identities e1, e2, the two singleton moves s12 (1 ↦ 2) and
/// s21 (2 ↦ 1), the identity, and the swap w. Multiplication is
/// composition with the right factor applied first.
pub fn i2() -> MonoidTable {
    MonoidTable::from_tables(
        &["0", "e1", "e2", "s12", "s21", "1", "w"],
        &[
            &["0", "0", "0", "0", "0", "0", "0"],
            &["0", "e1", "0", "0", "s21", "e1", "s21"],
            &["0", "0", "e2", "s12", "0", "e2", "s12"],
            &["0", "s12", "0", "0", "e2", "s12", "e2"],
            &["0", "0", "s21", "e1", "0", "s21", "e1"],
            &["0", "e1", "e2", "s12", "s21", "1", "w"],
            &["0", "s12", "s21", "e1", "e2", "w", "1"],
        ],
        &["0", "e1", "e2", "e1", "e2", "1", "1"],
        &["0", "e1", "e2", "e2", "e1", "1", "1"],
        "0",
        "1",
    )
    .expect("i2 fixture is well formed")
}

/// The three-element chain 0 < e < 1 under meet. A Boolean restriction
/// monoid it is not: e has no complement.
pub fn chain3() -> MonoidTable {
    MonoidTable::from_tables(
        &["0", "e", "1"],
        &[
            &["0", "0", "0"],
            &["0", "e", "e"],
            &["0", "e", "1"],
        ],
        &["0", "e", "1"],
        &["0", "e", "1"],
        "0",
        "1",
    )
    .expect("chain3 fixture is well formed")
}

/// The five local bisections of [`arrow`] under subset multiplication.
/// Boolean ample but not inverse: {a} has no generalized inverse.
pub fn s5() -> MonoidTable {
    MonoidTable::from_tables(
        &["{}", "{id_e}", "{id_f}", "{a}", "{id_e,id_f}"],
        &[
            &["{}", "{}", "{}", "{}", "{}"],
            &["{}", "{id_e}", "{}", "{}", "{id_e}"],
            &["{}", "{}", "{id_f}", "{a}", "{id_f}"],
            &["{}", "{a}", "{}", "{}", "{a}"],
            &["{}", "{id_e}", "{id_f}", "{a}", "{id_e,id_f}"],
        ],
        &["{}", "{id_e}", "{id_f}", "{id_e}", "{id_e,id_f}"],
        &["{}", "{id_e}", "{id_f}", "{id_f}", "{id_e,id_f}"],
        "{}",
        "{id_e,id_f}",
    )
    .expect("s5 fixture is well formed")
}

/// The category with identities id_e, id_f and a single non-identity
/// arrow a with d(a) = id_e and r(a) = id_f. Cancellative and right
/// reversible, not a groupoid.
pub fn arrow() -> CategoryTable {
    CategoryTable::from_tables(
        &["id_e", "id_f", "a"],
        &["id_e", "id_f"],
        &[("id_e", "id_e"), ("id_f", "id_f"), ("a", "id_e")],
        &[("id_e", "id_e"), ("id_f", "id_f"), ("a", "id_f")],
        &[
            ("id_e", "id_e", "id_e"),
            ("id_f", "id_f", "id_f"),
            ("a", "id_e", "a"),
            ("id_f", "a", "a"),
        ],
    )
    .expect("arrow fixture is well formed")
}

/// The pair groupoid on two objects: arrows gij run from object j to
/// object i, so d(g12) = id2 and r(g12) = id1.
pub fn pair2() -> CategoryTable {
    CategoryTable::from_tables(
        &["id1", "id2", "g12", "g21"],
        &["id1", "id2"],
        &[("id1", "id1"), ("id2", "id2"), ("g12", "id2"), ("g21", "id1")],
        &[("id1", "id1"), ("id2", "id2"), ("g12", "id1"), ("g21", "id2")],
        &[
            ("id1", "id1", "id1"),
            ("id2", "id2", "id2"),
            ("id1", "g12", "g12"),
            ("g12", "id2", "g12"),
            ("id2", "g21", "g21"),
            ("g21", "id1", "g21"),
            ("g12", "g21", "id1"),
            ("g21", "g12", "id2"),
        ],
    )
    .expect("pair2 fixture is well formed")
}

/// Two arrows x: 1 → 2 and y: 1 → 3 out of a common object. Cancellative
/// but not right reversible: Cx = {x} and Cy = {y} never meet.
pub fn fork() -> CategoryTable {
    fork_n(2)
}

/// A fork with `prongs` arrows out of object 1 (prongs >= 2), targets
/// 2..=prongs+1. Never right reversible.
pub fn fork_n(prongs: usize) -> CategoryTable {
    assert!(prongs >= 2, "a fork needs at least two prongs");
    let mut arrows: Vec<String> = (1..=prongs + 1).map(|i| format!("id{i}")).collect();
    let ids: Vec<String> = arrows.clone();
    let prong_labels: Vec<String> = (0..prongs)
        .map(|k| {
            if k == 0 {
                "x".to_string()
            } else if k == 1 {
                "y".to_string()
            } else {
                format!("z{k}")
            }
        })
        .collect();
    arrows.extend(prong_labels.iter().cloned());
    let mut d = Vec::new();
    let mut r = Vec::new();
    let mut comp = Vec::new();
    for id in &ids {
        d.push((id.clone(), id.clone()));
        r.push((id.clone(), id.clone()));
        comp.push((id.clone(), id.clone(), id.clone()));
    }
    for (k, p) in prong_labels.iter().enumerate() {
        let target = format!("id{}", k + 2);
        d.push((p.clone(), "id1".to_string()));
        r.push((p.clone(), target.clone()));
        comp.push((p.clone(), "id1".to_string(), p.clone()));
        comp.push((target.clone(), p.clone(), p.clone()));
    }
    let arrows_ref: Vec<&str> = arrows.iter().map(|s| s.as_str()).collect();
    let ids_ref: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    let d_ref: Vec<(&str, &str)> = d.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let r_ref: Vec<(&str, &str)> = r.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let c_ref: Vec<(&str, &str, &str)> = comp
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    CategoryTable::from_tables(&arrows_ref, &ids_ref, &d_ref, &r_ref, &c_ref)
        .expect("fork fixture is well formed")
}

/// The discrete category on n identities.
pub fn discrete(n: usize) -> CategoryTable {
    let labels: Vec<String> = (1..=n).map(|i| format!("id{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
    let pairs: Vec<(&str, &str)> = refs.iter().map(|&l| (l, l)).collect();
    let comp: Vec<(&str, &str, &str)> = refs.iter().map(|&l| (l, l, l)).collect();
    CategoryTable::from_tables(&refs, &refs, &pairs, &pairs, &comp)
        .expect("discrete fixture is well formed")
}

/// One object, one extra loop z with z·z = z. A category that is not
/// cancellative: z·z = z·1 with z ≠ 1.
pub fn flat2() -> CategoryTable {
    CategoryTable::from_tables(
        &["1", "z"],
        &["1"],
        &[("1", "1"), ("z", "1")],
        &[("1", "1"), ("z", "1")],
        &[
            ("1", "1", "1"),
            ("1", "z", "z"),
            ("z", "1", "z"),
            ("z", "z", "z"),
        ],
    )
    .expect("flat2 fixture is well formed")
}

/// The bisection monoid of [`fork`]; Boolean ample and the standard
/// counterexample to condition (C).
pub fn kb_fork() -> MonoidTable {
    fork()
        .kb_monoid(1 << 12)
        .expect("kb(fork) fits any reasonable cap")
        .monoid
        .table
        .clone()
}

/// The inclusion of the bisections of [`arrow`] into the partial
/// bijections on two points: {} ↦ 0, {id_e} ↦ e1, {id_f} ↦ e2,
/// {a} ↦ s12, {id_e,id_f} ↦ 1.
pub fn hom_s5_into_i2() -> HomomorphismMap {
    let source = s5();
    let target = i2();
    let images = ["0", "e1", "e2", "s12", "1"];
    let map = (0..source.n())
        .map(|x| target.index_of(images[x]).expect("image label exists"))
        .collect();
    HomomorphismMap {
        source,
        target,
        map,
    }
}

/// The automorphism of b4 swapping e and f.
pub fn hom_b4_swap() -> HomomorphismMap {
    let m = b4();
    let images = ["0", "f", "e", "1"];
    let map = (0..m.n())
        .map(|x| m.index_of(images[x]).expect("image label exists"))
        .collect();
    HomomorphismMap {
        source: m.clone(),
        target: m,
        map,
    }
}

/// A defective map s5 → b4 that collapses {a} to 0 without collapsing its
/// star; star preservation fails.
pub fn hom_s5_collapse_to_b4() -> HomomorphismMap {
    let source = s5();
    let target = b4();
    let images = ["0", "e", "f", "0", "1"];
    let map = (0..source.n())
        .map(|x| target.index_of(images[x]).expect("image label exists"))
        .collect();
    HomomorphismMap {
        source,
        target,
        map,
    }
}

/// Resolve a monoid fixture by name (case-insensitive).
pub fn monoid_by_name(name: &str) -> Option<MonoidTable> {
    match name.to_ascii_uppercase().as_str() {
        "B4" => Some(b4()),
        "G0" => Some(g0()),
        "I2" => Some(i2()),
        "S5" => Some(s5()),
        "CHAIN3" => Some(chain3()),
        "KB_FORK" => Some(kb_fork()),
        _ => None,
    }
}

/// Resolve a category fixture by name (case-insensitive). `DISCRETE<n>`
/// and `FORK<n>` take a numeric suffix.
pub fn category_by_name(name: &str) -> Option<CategoryTable> {
    let upper = name.to_ascii_uppercase();
    match upper.as_str() {
        "ARROW" => return Some(arrow()),
        "PAIR2" => return Some(pair2()),
        "FORK" => return Some(fork()),
        "FLAT2" => return Some(flat2()),
        _ => {}
    }
    if let Some(rest) = upper.strip_prefix("DISCRETE") {
        if let Ok(n) = rest.parse::<usize>() {
            if n >= 1 {
                return Some(discrete(n));
            }
        }
    }
    if let Some(rest) = upper.strip_prefix("FORK") {
        if let Ok(n) = rest.parse::<usize>() {
            if n >= 2 {
                return Some(fork_n(n));
            }
        }
    }
    None
}
