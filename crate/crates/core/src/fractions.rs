//! Condition (C), the groupoid of fractions of a cancellative right
//! reversible category, and the converse presentation check.
//!
//! The fraction calculus: elements are pairs (a, b) with r(a) = r(b),
//! read as a⁻¹b, under the equivalence
//! `(a, b) ~ (a', b') iff u·a = u'·a' and u·b = u'·b' for some u, u'`.
//! The product of class(a, b) and class(c, d) with d(b) = d(c) picks a
//! common left multiple p·b = q·c and returns class(p·a, q·d); the
//! inverse of class(a, b) is class(b, a), and ι embeds the category by
//! c ↦ class(r(c), c). Nothing here is taken on faith: the equivalence is
//! checked to be transitive, the product is checked to be independent of
//! representatives and of the choice of (p, q) over every choice at this
//! finite scale, and the groupoid laws and the wide/fraction clauses are
//! verified on every run. Tie-breaking is deterministic: seed 0 scans
//! pairs in lexicographic index order, any other seed scans in reverse,
//! which permutes the class presentation without changing the result up
//! to isomorphism.

use serde::Serialize;

use crate::category::{find_category_isomorphism, CategoryTable};
use crate::error::{Error, Result};
use crate::filters::{build_category, StonePoint};
use crate::monoid::{Elem, MonoidContext};

/// The natural order restricted to elements whose star lies in a fixed
/// prime filter of the projection algebra.
#[derive(Debug, Clone)]
pub struct RelativizedOrder {
    pub point: StonePoint,
    pub pairs: Vec<(Elem, Elem)>,
}

impl RelativizedOrder {
    pub fn le(&self, x: Elem, y: Elem) -> bool {
        self.pairs.binary_search(&(x, y)).is_ok()
    }
}

/// Check that `carrier` is a prime filter of the projection algebra and
/// build the order x ≤_F y iff x*, y* ∈ F and x ≤ y.
pub fn relativized_order(ctx: &MonoidContext, carrier: &[Elem]) -> Result<RelativizedOrder> {
    let m = &ctx.table;
    let projections = m.projections();
    let describe = || {
        m.labels(carrier).join(",")
    };
    let mut sorted = carrier.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty()
        || sorted.iter().any(|p| !projections.contains(p))
        || sorted.contains(&m.zero())
    {
        return Err(Error::FilterNotPrime(describe()));
    }
    // up-closed in the projection algebra, meet-closed, prime
    for &p in &sorted {
        for &q in &projections {
            if ctx.order.le(p, q) && !sorted.contains(&q) {
                return Err(Error::FilterNotPrime(describe()));
            }
        }
        for &q in &sorted {
            if !sorted.contains(&m.mul(p, q)) {
                return Err(Error::FilterNotPrime(describe()));
            }
        }
    }
    for &p in &projections {
        for &q in &projections {
            if let Some(j) = ctx.join(p, q) {
                if sorted.contains(&j) && !sorted.contains(&p) && !sorted.contains(&q) {
                    return Err(Error::FilterNotPrime(describe()));
                }
            }
        }
    }
    let atom = *sorted
        .iter()
        .find(|&&p| sorted.iter().all(|&q| ctx.order.le(p, q)))
        .ok_or_else(|| Error::FilterNotPrime(describe()))?;
    let mut pairs = Vec::new();
    for x in 0..m.n() {
        if !sorted.contains(&m.star(x)) {
            continue;
        }
        for y in 0..m.n() {
            if sorted.contains(&m.star(y)) && ctx.order.le(x, y) {
                pairs.push((x, y));
            }
        }
    }
    pairs.sort_unstable();
    Ok(RelativizedOrder {
        point: StonePoint {
            atom,
            carrier: sorted,
        },
        pairs,
    })
}

/// Witness for one (F, a, b) instance of condition (C).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConditionCWitness {
    pub c: Elem,
    pub d: Elem,
    pub a1: Elem,
    pub b1: Elem,
    pub e: Elem,
}

#[derive(Debug, Clone)]
pub struct ConditionCReport {
    pub holds: bool,
    pub points: Vec<StonePoint>,
    /// One witness per (point index, a, b) with a*b* ∈ F, in search order.
    pub witnesses: Vec<(usize, Elem, Elem, ConditionCWitness)>,
    /// First (point index, a, b) admitting no witness, if any.
    pub counterexample: Option<(usize, Elem, Elem)>,
}

/// Quantify condition (C) over every prime filter F of the projection
/// algebra and every pair (a, b) with a*b* ∈ F: some nonzero c, d admit
/// a1 ≤_F a with a1+ ≤ c*, b1 ≤_F b with b1+ ≤ d*, and e ∈ F with
/// c·a·e = d·b·e. Witnesses are the lexicographically first tuples
/// (c, d, a1, b1, e) in index order.
pub fn check_condition_c(ctx: &MonoidContext) -> Result<ConditionCReport> {
    let m = &ctx.table;
    let n = m.n();
    let projections = m.projections();
    let zero = m.zero();
    let atoms: Vec<Elem> = projections
        .iter()
        .copied()
        .filter(|&p| {
            p != zero
                && projections
                    .iter()
                    .all(|&q| q == zero || q == p || !ctx.order.le(q, p))
        })
        .collect();
    let points: Vec<StonePoint> = atoms
        .iter()
        .map(|&p| StonePoint {
            atom: p,
            carrier: projections
                .iter()
                .copied()
                .filter(|&q| ctx.order.le(p, q))
                .collect(),
        })
        .collect();
    let mut witnesses = Vec::new();
    for (pi, point) in points.iter().enumerate() {
        let in_f = |p: Elem| point.carrier.binary_search(&p).is_ok();
        // candidates a1 ≤_F x for each x, and the c's they admit
        let mut below_f: Vec<Vec<Elem>> = vec![Vec::new(); n];
        for x in 0..n {
            if !in_f(m.star(x)) {
                continue;
            }
            below_f[x] = (0..n)
                .filter(|&a1| in_f(m.star(a1)) && ctx.order.le(a1, x))
                .collect();
        }
        // c is admissible for x when some a1 ≤_F x has a1+ ≤ c*
        let admissible = |x: Elem| -> Vec<bool> {
            let mut ok = vec![false; n];
            for c in 0..n {
                if c == zero {
                    continue;
                }
                ok[c] = below_f[x]
                    .iter()
                    .any(|&a1| ctx.order.le(m.plus(a1), m.star(c)));
            }
            ok
        };
        let filter_elems: Vec<Elem> = point.carrier.clone();
        for a in 0..n {
            if !in_f(m.star(a)) {
                continue;
            }
            let ca_adm = admissible(a);
            for b in 0..n {
                if !in_f(m.mul(m.star(a), m.star(b))) {
                    continue;
                }
                let cb_adm = admissible(b);
                // values d·b·e reachable from admissible d, one flag row per e
                let db_flags: Vec<Vec<bool>> = filter_elems
                    .iter()
                    .map(|&e| {
                        let be = m.mul(b, e);
                        let mut flags = vec![false; n];
                        for d in 0..n {
                            if cb_adm[d] {
                                flags[m.mul(d, be)] = true;
                            }
                        }
                        flags
                    })
                    .collect();
                // lexicographically first (c, d, a1, b1, e): the a1/b1
                // constraints do not involve d or e, so each component can
                // be minimized in turn
                let first_c = (0..n).find(|&c| {
                    ca_adm[c] && {
                        let ca = m.mul(c, a);
                        filter_elems
                            .iter()
                            .enumerate()
                            .any(|(ei, &e)| db_flags[ei][m.mul(ca, e)])
                    }
                });
                let witness = first_c.map(|c| {
                    let ca = m.mul(c, a);
                    let d = (0..n)
                        .find(|&d| {
                            cb_adm[d]
                                && filter_elems
                                    .iter()
                                    .any(|&e| m.mul(ca, e) == m.mul(m.mul(d, b), e))
                        })
                        .expect("feasibility of c");
                    let a1 = *below_f[a]
                        .iter()
                        .find(|&&a1| ctx.order.le(m.plus(a1), m.star(c)))
                        .expect("admissibility of c");
                    let b1 = *below_f[b]
                        .iter()
                        .find(|&&b1| ctx.order.le(m.plus(b1), m.star(d)))
                        .expect("admissibility of d");
                    let e = *filter_elems
                        .iter()
                        .find(|&&e| m.mul(ca, e) == m.mul(m.mul(d, b), e))
                        .expect("feasibility of (c, d)");
                    ConditionCWitness { c, d, a1, b1, e }
                });
                match witness {
                    Some(w) => witnesses.push((pi, a, b, w)),
                    None => {
                        return Ok(ConditionCReport {
                            holds: false,
                            points,
                            witnesses,
                            counterexample: Some((pi, a, b)),
                        })
                    }
                }
            }
        }
    }
    Ok(ConditionCReport {
        holds: true,
        points,
        witnesses,
        counterexample: None,
    })
}

/// Re-evaluate a stored witness; used by tests and by the suite to keep
/// reports honest.
pub fn revalidate_condition_c_witness(
    ctx: &MonoidContext,
    point: &StonePoint,
    a: Elem,
    b: Elem,
    w: &ConditionCWitness,
) -> bool {
    let m = &ctx.table;
    let in_f = |p: Elem| point.carrier.binary_search(&p).is_ok();
    w.c != m.zero()
        && w.d != m.zero()
        && in_f(m.star(w.a1))
        && in_f(m.star(a))
        && ctx.order.le(w.a1, a)
        && ctx.order.le(m.plus(w.a1), m.star(w.c))
        && in_f(m.star(w.b1))
        && in_f(m.star(b))
        && ctx.order.le(w.b1, b)
        && ctx.order.le(m.plus(w.b1), m.star(w.d))
        && in_f(w.e)
        && m.mul(w.c, m.mul(a, w.e)) == m.mul(w.d, m.mul(b, w.e))
}

#[derive(Debug, Clone)]
pub struct EquivalenceReport {
    pub condition_c: bool,
    pub right_reversible: bool,
}

/// Condition (C) on the monoid must agree with right reversibility of its
/// prime filter category; a mismatch is a theorem violation.
pub fn check_reversibility_equivalence(ctx: &MonoidContext) -> Result<EquivalenceReport> {
    let condc = check_condition_c(ctx)?;
    let cat = build_category(ctx)?;
    let rev = cat.table.check_right_reversible();
    if condc.holds != rev.ok() {
        return Err(Error::violation(
            "condition-c-vs-reversibility",
            "condition (C) disagrees with right reversibility of the filter category",
            serde_json::json!({
                "condition_c": condc.holds,
                "right_reversible": rev.ok(),
            }),
        ));
    }
    Ok(EquivalenceReport {
        condition_c: condc.holds,
        right_reversible: rev.ok(),
    })
}

#[derive(Debug, Clone)]
pub struct CommonMultipleReport {
    pub checked_pairs: usize,
    pub first_witness: Option<(Elem, Elem, Elem, Elem)>,
}

/// Under condition (C): whenever a*b* ≠ 0 there are s, t with
/// s·a = t·b ≠ 0. Exhaustive; a missing multiple is a theorem violation.
pub fn check_common_left_multiples(ctx: &MonoidContext) -> Result<CommonMultipleReport> {
    let m = &ctx.table;
    let n = m.n();
    let zero = m.zero();
    // left multiple sets, one flag vector per element
    let mut left: Vec<Vec<bool>> = vec![vec![false; n]; n];
    for x in 0..n {
        for s in 0..n {
            left[x][m.mul(s, x)] = true;
        }
    }
    let mut checked = 0;
    let mut first_witness = None;
    for a in 0..n {
        for b in 0..n {
            if m.mul(m.star(a), m.star(b)) == zero {
                continue;
            }
            checked += 1;
            let common = (0..n).find(|&x| x != zero && left[a][x] && left[b][x]);
            match common {
                None => {
                    return Err(Error::violation(
                        "common-left-multiple",
                        "a*b* is nonzero but Sa ∩ Sb = {0}",
                        serde_json::json!({ "a": m.label(a), "b": m.label(b) }),
                    ))
                }
                Some(x) => {
                    if first_witness.is_none() {
                        let s = (0..n).find(|&s| m.mul(s, a) == x).expect("flagged");
                        let t = (0..n).find(|&t| m.mul(t, b) == x).expect("flagged");
                        first_witness = Some((a, b, s, t));
                    }
                }
            }
        }
    }
    Ok(CommonMultipleReport {
        checked_pairs: checked,
        first_witness,
    })
}

/// A pair (a, b) of arrows with r(a) = r(b), read as the fraction a⁻¹b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FractionPair {
    pub a: usize,
    pub b: usize,
}

/// The groupoid of fractions of a cancellative right reversible category.
#[derive(Debug, Clone)]
pub struct FractionGroupoid {
    pub table: CategoryTable,
    pub inverses: Vec<usize>,
    /// Equivalence classes of pairs, parallel to the arrows of `table`.
    pub classes: Vec<Vec<FractionPair>>,
    /// Embedding of the input category: arrow index → arrow of `table`.
    pub iota: Vec<usize>,
    pub seed: u64,
}

impl FractionGroupoid {
    pub fn class_of(&self, p: FractionPair) -> Option<usize> {
        self.classes
            .iter()
            .position(|cls| cls.binary_search(&p).is_ok())
    }
}

pub fn fractions_groupoid(c: &CategoryTable, seed: u64) -> Result<FractionGroupoid> {
    let cancel = c.check_cancellative();
    if let Some(w) = cancel.witness {
        return Err(Error::NotCancellative {
            side: w.side,
            a: c.label(w.a).into(),
            b: c.label(w.b).into(),
            c: c.label(w.c).into(),
        });
    }
    let rev = c.check_right_reversible();
    if let Some((a, b)) = rev.witness {
        return Err(Error::NotRightReversible {
            a: c.label(a).into(),
            b: c.label(b).into(),
        });
    }
    let n = c.n();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if c.r(a) == c.r(b) {
                pairs.push(FractionPair { a, b });
            }
        }
    }
    if seed != 0 {
        pairs.reverse();
    }
    let k = pairs.len();
    // (a, b) ~ (a', b') iff some u, u' satisfy ua = u'a' and ub = u'b'
    let related = |p: FractionPair, q: FractionPair| -> bool {
        for u in 0..n {
            if c.d(u) != c.r(p.a) {
                continue;
            }
            for u2 in 0..n {
                if c.d(u2) != c.r(q.a) {
                    continue;
                }
                if c.compose(u, p.a) == c.compose(u2, q.a)
                    && c.compose(u, p.b) == c.compose(u2, q.b)
                {
                    return true;
                }
            }
        }
        false
    };
    let mut rel = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            rel[i * k + j] = related(pairs[i], pairs[j]);
        }
    }
    for i in 0..k {
        if !rel[i * k + i] {
            return Err(Error::violation(
                "fraction-equivalence",
                "pair equivalence is not reflexive",
                pair_json(c, pairs[i]),
            ));
        }
        for j in 0..k {
            if rel[i * k + j] != rel[j * k + i] {
                return Err(Error::violation(
                    "fraction-equivalence",
                    "pair equivalence is not symmetric",
                    serde_json::json!([pair_json(c, pairs[i]), pair_json(c, pairs[j])]),
                ));
            }
            if !rel[i * k + j] {
                continue;
            }
            for l in 0..k {
                if rel[j * k + l] && !rel[i * k + l] {
                    return Err(Error::violation(
                        "fraction-equivalence",
                        "pair equivalence is not transitive",
                        serde_json::json!([
                            pair_json(c, pairs[i]),
                            pair_json(c, pairs[j]),
                            pair_json(c, pairs[l]),
                        ]),
                    ));
                }
            }
        }
    }
    let mut class_of = vec![usize::MAX; k];
    let mut classes: Vec<Vec<FractionPair>> = Vec::new();
    for i in 0..k {
        if class_of[i] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = Vec::new();
        for j in 0..k {
            if rel[i * k + j] {
                class_of[j] = id;
                members.push(pairs[j]);
            }
        }
        members.sort();
        classes.push(members);
    }
    let g = classes.len();
    let find_class = |p: FractionPair| -> usize {
        let idx = pairs
            .iter()
            .position(|&q| q == p)
            .expect("pair enumerated");
        class_of[idx]
    };
    // identities: classes of (e, e); endpoints of class(a, b) are d(b), d(a)
    let mut iota_obj = vec![usize::MAX; n];
    for &e in c.identities() {
        iota_obj[e] = find_class(FractionPair { a: e, b: e });
    }
    let reps: Vec<FractionPair> = classes.iter().map(|cls| cls[0]).collect();
    let dmap: Vec<usize> = reps.iter().map(|p| iota_obj[c.d(p.b)]).collect();
    let rmap: Vec<usize> = reps.iter().map(|p| iota_obj[c.d(p.a)]).collect();
    let identities: Vec<usize> = c.identities().iter().map(|&e| iota_obj[e]).collect();

    // common left multiples in seed order
    let multipliers = |b: usize, c2: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..n {
            if c.d(p) != c.r(b) {
                continue;
            }
            for q in 0..n {
                if c.d(q) != c.r(c2) {
                    continue;
                }
                if c.compose(p, b) == c.compose(q, c2) {
                    out.push((p, q));
                }
            }
        }
        if seed != 0 {
            out.reverse();
        }
        out
    };
    let multiply = |x: FractionPair, y: FractionPair| -> Result<usize> {
        let choices = multipliers(x.b, y.a);
        let &(p, q) = choices.first().ok_or_else(|| {
            Error::violation(
                "fraction-multiplication",
                "no common left multiple despite right reversibility",
                serde_json::json!([pair_json(c, x), pair_json(c, y)]),
            )
        })?;
        let pa = c.compose(p, x.a).expect("endpoints match");
        let qd = c.compose(q, y.b).expect("endpoints match");
        Ok(find_class(FractionPair { a: pa, b: qd }))
    };
    let mut comp = vec![None; g * g];
    for x in 0..g {
        for y in 0..g {
            if dmap[x] == rmap[y] {
                comp[x * g + y] = Some(multiply(reps[x], reps[y])?);
            }
        }
    }
    // well-definedness: every representative pair and every (p, q) choice
    // lands in the same class
    for x in 0..g {
        for y in 0..g {
            let Some(expected) = comp[x * g + y] else { continue };
            for &px in &classes[x] {
                for &py in &classes[y] {
                    if c.d(px.b) != c.d(py.a) {
                        // representatives of composable classes are composable
                        return Err(Error::violation(
                            "fraction-multiplication",
                            "representatives of composable classes fail to compose",
                            serde_json::json!([pair_json(c, px), pair_json(c, py)]),
                        ));
                    }
                    for &(p, q) in &multipliers(px.b, py.a) {
                        let pa = c.compose(p, px.a).expect("endpoints match");
                        let qd = c.compose(q, py.b).expect("endpoints match");
                        let got = find_class(FractionPair { a: pa, b: qd });
                        if got != expected {
                            return Err(Error::violation(
                                "fraction-multiplication",
                                "product depends on the representative or multiplier choice",
                                serde_json::json!({
                                    "left": pair_json(c, px),
                                    "right": pair_json(c, py),
                                }),
                            ));
                        }
                    }
                }
            }
        }
    }
    let labels: Vec<String> = reps
        .iter()
        .map(|p| format!("{}\\{}", c.label(p.a), c.label(p.b)))
        .collect();
    let table = CategoryTable::from_parts(labels, identities, dmap, rmap, comp)
        .map_err(|e| Error::violation("fraction-category-laws", e.to_string(), serde_json::Value::Null))?;
    let groupoid = table.check_groupoid();
    let inverses = groupoid.inverses.clone().ok_or_else(|| {
        Error::violation(
            "fraction-groupoid",
            "the category of fractions is not a groupoid",
            serde_json::json!({ "witness": groupoid.witness.map(|w| table.label(w).to_string()) }),
        )
    })?;
    // the inverse of class(a, b) is class(b, a)
    for (x, rep) in reps.iter().enumerate() {
        if inverses[x] != find_class(FractionPair { a: rep.b, b: rep.a }) {
            return Err(Error::violation(
                "fraction-groupoid",
                "inversion does not swap the two sides of a fraction",
                pair_json(c, *rep),
            ));
        }
    }
    // ι embeds the category: injective functor with wide image
    let iota: Vec<usize> = (0..n)
        .map(|x| find_class(FractionPair { a: c.r(x), b: x }))
        .collect();
    for x in 0..n {
        for y in 0..n {
            if x != y && iota[x] == iota[y] {
                return Err(Error::violation(
                    "fraction-embedding",
                    "ι is not injective",
                    serde_json::json!([c.label(x), c.label(y)]),
                ));
            }
            match (c.compose(x, y), table.compose(iota[x], iota[y])) {
                (None, _) => {}
                (Some(xy), Some(img)) if iota[xy] == img => {}
                _ => {
                    return Err(Error::violation(
                        "fraction-embedding",
                        "ι does not preserve composition",
                        serde_json::json!([c.label(x), c.label(y)]),
                    ))
                }
            }
        }
        if table.d(iota[x]) != iota[c.d(x)] || table.r(iota[x]) != iota[c.r(x)] {
            return Err(Error::violation(
                "fraction-embedding",
                "ι does not preserve endpoints",
                serde_json::json!(c.label(x)),
            ));
        }
    }
    for &e in table.identities() {
        if !c.identities().iter().any(|&x| iota[x] == e) {
            return Err(Error::violation(
                "fraction-embedding",
                "ι(C) is not wide in the groupoid of fractions",
                serde_json::json!(table.label(e)),
            ));
        }
    }
    // every arrow is ι(a)⁻¹·ι(b)
    for (x, rep) in reps.iter().enumerate() {
        let via = table
            .compose(inverses[iota[rep.a]], iota[rep.b])
            .expect("fraction endpoints");
        if via != x {
            return Err(Error::violation(
                "fraction-coverage",
                "an arrow is not ι(a)⁻¹·ι(b) for its own representative",
                pair_json(c, *rep),
            ));
        }
    }
    Ok(FractionGroupoid {
        table,
        inverses,
        classes,
        iota,
        seed,
    })
}

fn pair_json(c: &CategoryTable, p: FractionPair) -> serde_json::Value {
    serde_json::json!({ "a": c.label(p.a), "b": c.label(p.b) })
}

#[derive(Debug, Clone)]
pub struct UniquenessReport {
    /// Arrow bijection g1 → g2 commuting with the two embeddings.
    pub iso: Vec<usize>,
}

/// Two fraction groupoids built over the same category (with different
/// tie-breaking seeds) must be isomorphic over ι.
pub fn check_fractions_unique(
    c: &CategoryTable,
    g1: &FractionGroupoid,
    g2: &FractionGroupoid,
) -> Result<UniquenessReport> {
    let pins: Vec<(usize, usize)> = (0..c.n()).map(|x| (g1.iota[x], g2.iota[x])).collect();
    match find_category_isomorphism(&g1.table, &g2.table, &pins) {
        Some(iso) => Ok(UniquenessReport { iso }),
        None => Err(Error::violation(
            "fraction-uniqueness",
            "no isomorphism over ι between two fraction groupoids of the same category",
            serde_json::json!({ "seed1": g1.seed, "seed2": g2.seed }),
        )),
    }
}

#[derive(Debug, Clone)]
pub struct PresentationReport {
    pub right_reversible: bool,
    /// C·C⁻¹ covers the groupoid.
    pub cc_inv_full: bool,
    /// C⁻¹·C covers the groupoid.
    pub inv_cc_full: bool,
    pub hypotheses_hold: bool,
    /// When the hypotheses hold: fractions(C) → G arrow map.
    pub iso: Option<Vec<usize>>,
}

/// Converse check: given a groupoid G and a wide composition-closed
/// subcategory C, test right reversibility of C and both coverage
/// identities C·C⁻¹ = G and C⁻¹·C = G (reported separately), and when
/// the hypotheses hold verify that the groupoid of fractions of C is
/// isomorphic to G by extending ι, i.e. class(a, b) ↦ a⁻¹·b inside G.
pub fn check_fraction_presentation(
    g: &CategoryTable,
    sub_arrows: &[usize],
) -> Result<PresentationReport> {
    let groupoid = g.check_groupoid();
    let inv = groupoid
        .inverses
        .clone()
        .ok_or_else(|| Error::Invalid("ambient category is not a groupoid".into()))?;
    let mut sub = sub_arrows.to_vec();
    sub.sort_unstable();
    sub.dedup();
    for &e in g.identities() {
        if !sub.contains(&e) {
            return Err(Error::Invalid("subcategory is not wide".into()));
        }
    }
    let (c, parent) = g.subcategory(&sub)?;
    let rev = c.check_right_reversible();
    let mut covered_cc = vec![false; g.n()];
    let mut covered_inv = vec![false; g.n()];
    for &x in &parent {
        for &y in &parent {
            if let Some(xy) = g.compose(x, inv[y]) {
                covered_cc[xy] = true;
            }
            if let Some(xy) = g.compose(inv[x], y) {
                covered_inv[xy] = true;
            }
        }
    }
    let cc_inv_full = covered_cc.iter().all(|&b| b);
    let inv_cc_full = covered_inv.iter().all(|&b| b);
    let hypotheses_hold = rev.ok() && cc_inv_full;
    if !hypotheses_hold {
        return Ok(PresentationReport {
            right_reversible: rev.ok(),
            cc_inv_full,
            inv_cc_full,
            hypotheses_hold,
            iso: None,
        });
    }
    let fractions = fractions_groupoid(&c, 0)?;
    // extend ι: class(a, b) ↦ a⁻¹·b computed inside G
    let mut iso = Vec::with_capacity(fractions.table.n());
    for cls in &fractions.classes {
        let rep = cls[0];
        let (pa, pb) = (parent[rep.a], parent[rep.b]);
        let img = g.compose(inv[pa], pb).ok_or_else(|| {
            Error::violation(
                "fraction-presentation",
                "representative fraction does not compose inside the ambient groupoid",
                serde_json::json!({ "a": g.label(pa), "b": g.label(pb) }),
            )
        })?;
        iso.push(img);
    }
    let fail = |clause: &str, witness: serde_json::Value| {
        Err(Error::violation("fraction-presentation", clause, witness))
    };
    let mut hit = vec![false; g.n()];
    for &img in &iso {
        if hit[img] {
            return fail("extension of ι is not injective", serde_json::Value::Null);
        }
        hit[img] = true;
    }
    if hit.iter().any(|&b| !b) {
        return fail("extension of ι is not surjective", serde_json::Value::Null);
    }
    let ft = &fractions.table;
    for x in 0..ft.n() {
        if iso[ft.d(x)] != g.d(iso[x]) || iso[ft.r(x)] != g.r(iso[x]) {
            return fail(
                "extension of ι does not preserve endpoints",
                serde_json::json!(ft.label(x)),
            );
        }
        for y in 0..ft.n() {
            match ft.compose(x, y) {
                None => {
                    if g.compose(iso[x], iso[y]).is_some() {
                        return fail(
                            "extension of ι invents a composite",
                            serde_json::json!([ft.label(x), ft.label(y)]),
                        );
                    }
                }
                Some(xy) => {
                    if g.compose(iso[x], iso[y]) != Some(iso[xy]) {
                        return fail(
                            "extension of ι does not preserve composition",
                            serde_json::json!([ft.label(x), ft.label(y)]),
                        );
                    }
                }
            }
        }
    }
    for (i, &p) in parent.iter().enumerate() {
        if iso[fractions.iota[i]] != p {
            return fail(
                "extension does not restrict to the inclusion on C",
                serde_json::json!(g.label(p)),
            );
        }
    }
    Ok(PresentationReport {
        right_reversible: true,
        cc_inv_full,
        inv_cc_full,
        hypotheses_hold: true,
        iso: Some(iso),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::monoid::MonoidContext;

    fn ctx_of(m: &crate::monoid::MonoidTable) -> MonoidContext {
        MonoidContext::new(m).unwrap()
    }

    #[test]
    fn relativized_order_on_s5() {
        let m = fixtures::s5();
        let ctx = ctx_of(&m);
        let e = m.index_of("{id_e}").unwrap();
        let one = m.one();
        let ord = relativized_order(&ctx, &[e, one]).unwrap();
        let a = m.index_of("{a}").unwrap();
        assert!(ord.le(a, a), "a* = {{id_e}} lies in F");
        assert!(ord.le(e, one));
        let f = m.index_of("{id_f}").unwrap();
        assert!(!ord.le(f, f), "f* = {{id_f}} is outside F");
        // reflexivity exactly on the F-slice
        for x in 0..m.n() {
            assert_eq!(ord.le(x, x), ord.point.carrier.contains(&m.star(x)));
        }
    }

    #[test]
    fn relativized_order_on_i2() {
        let m = fixtures::i2();
        let ctx = ctx_of(&m);
        let e1 = m.index_of("e1").unwrap();
        let ord = relativized_order(&ctx, &[e1, m.one()]).unwrap();
        assert!(ord.le(e1, m.one()), "e1 ≤_F 1 since 1* = 1 ∈ F");
    }

    #[test]
    fn non_prime_filter_is_rejected() {
        let m = fixtures::b4();
        let ctx = ctx_of(&m);
        // {1} is a filter of the projection algebra but not prime
        assert!(matches!(
            relativized_order(&ctx, &[m.one()]),
            Err(Error::FilterNotPrime(_))
        ));
        // a non-projection carrier is rejected outright
        let i2 = fixtures::i2();
        let ctx2 = ctx_of(&i2);
        let s12 = i2.index_of("s12").unwrap();
        assert!(matches!(
            relativized_order(&ctx2, &[s12]),
            Err(Error::FilterNotPrime(_))
        ));
    }

    #[test]
    fn condition_c_holds_on_fixtures() {
        for m in [fixtures::s5(), fixtures::i2(), fixtures::b4(), fixtures::g0()] {
            let ctx = ctx_of(&m);
            let report = check_condition_c(&ctx).unwrap();
            assert!(report.holds, "condition (C) should hold");
            for (pi, a, b, w) in &report.witnesses {
                assert!(
                    revalidate_condition_c_witness(&ctx, &report.points[*pi], *a, *b, w),
                    "stored witness must re-validate"
                );
            }
        }
    }

    #[test]
    fn condition_c_fails_on_kb_fork() {
        let m = fixtures::kb_fork();
        let ctx = ctx_of(&m);
        let report = check_condition_c(&ctx).unwrap();
        assert!(!report.holds);
        let (pi, a, b) = report.counterexample.expect("counterexample reported");
        // the reported triple really admits no witness: re-run the search
        // by brute force over all tuples
        let point = &report.points[pi];
        let n = m.n();
        let mut found = false;
        'all: for c in 0..n {
            for d in 0..n {
                if c == m.zero() || d == m.zero() {
                    continue;
                }
                for a1 in 0..n {
                    for b1 in 0..n {
                        for &e in &point.carrier {
                            let w = ConditionCWitness { c, d, a1, b1, e };
                            if revalidate_condition_c_witness(&ctx, point, a, b, &w) {
                                found = true;
                                break 'all;
                            }
                        }
                    }
                }
            }
        }
        assert!(!found, "brute force confirms the counterexample");
        // the fork counterexample appears at the singleton bisections over x, y
        let fx = m.index_of("{x}").unwrap();
        let fy = m.index_of("{y}").unwrap();
        let id1 = m.index_of("{id1}").unwrap();
        let cex_point = report
            .points
            .iter()
            .position(|p| p.atom == id1)
            .expect("the filter over {id1} is a point");
        let mut missing = false;
        'paircheck: for c in 0..n {
            for d in 0..n {
                if c == m.zero() || d == m.zero() {
                    continue;
                }
                for a1 in 0..n {
                    for b1 in 0..n {
                        for &e in &report.points[cex_point].carrier {
                            let w = ConditionCWitness { c, d, a1, b1, e };
                            if revalidate_condition_c_witness(
                                &ctx,
                                &report.points[cex_point],
                                fx,
                                fy,
                                &w,
                            ) {
                                missing = true;
                                break 'paircheck;
                            }
                        }
                    }
                }
            }
        }
        assert!(!missing, "({{x}}, {{y}}) over ^{{id1}} admits no witness");
    }

    #[test]
    fn reversibility_equivalence_on_fixtures() {
        for (m, expect) in [
            (fixtures::s5(), true),
            (fixtures::i2(), true),
            (fixtures::kb_fork(), false),
        ] {
            let ctx = ctx_of(&m);
            let report = check_reversibility_equivalence(&ctx).unwrap();
            assert_eq!(report.condition_c, expect);
            assert_eq!(report.right_reversible, expect);
        }
    }

    #[test]
    fn common_left_multiples_on_s5_and_i2() {
        let m = fixtures::s5();
        let ctx = ctx_of(&m);
        let report = check_common_left_multiples(&ctx).unwrap();
        assert!(report.checked_pairs > 0);
        // a = {id_e}, b = {a} has the common multiple {a} = {a}·{id_e} = {id_f}·{a}
        let e = m.index_of("{id_e}").unwrap();
        let a = m.index_of("{a}").unwrap();
        let f = m.index_of("{id_f}").unwrap();
        assert_eq!(m.mul(a, e), a);
        assert_eq!(m.mul(f, a), a);

        let i2 = fixtures::i2();
        let ctx2 = ctx_of(&i2);
        check_common_left_multiples(&ctx2).unwrap();
    }

    #[test]
    fn fractions_of_arrow_is_pair2() {
        let c = fixtures::arrow();
        let g = fractions_groupoid(&c, 0).unwrap();
        assert_eq!(g.table.n(), 4);
        // iota(a) = class(id_f, a), the new arrow is class(a, id_f)
        let a = c.index_of("a").unwrap();
        let id_f = c.index_of("id_f").unwrap();
        assert_eq!(
            g.iota[a],
            g.class_of(FractionPair { a: id_f, b: a }).unwrap()
        );
        let inv_arrow = g.class_of(FractionPair { a, b: id_f }).unwrap();
        assert_eq!(g.inverses[g.iota[a]], inv_arrow);
        // the object correspondence id_e ↦ id1, id_f ↦ id2 extends to an iso
        let p2 = fixtures::pair2();
        let id_e = c.index_of("id_e").unwrap();
        let pins = [
            (g.iota[id_e], p2.index_of("id1").unwrap()),
            (g.iota[id_f], p2.index_of("id2").unwrap()),
        ];
        let iso = find_category_isomorphism(&g.table, &p2, &pins).expect("iso to pair2");
        assert_eq!(iso[g.iota[a]], p2.index_of("g21").unwrap());
        // class partition: (a,a) ~ (id_e,id_e)
        let cls = g.class_of(FractionPair { a, b: a }).unwrap();
        assert_eq!(cls, g.class_of(FractionPair { a: id_e, b: id_e }).unwrap());
    }

    #[test]
    fn fractions_of_a_groupoid_is_itself() {
        let c = fixtures::pair2();
        let g = fractions_groupoid(&c, 0).unwrap();
        assert_eq!(g.table.n(), 4);
        let pins: Vec<(usize, usize)> = (0..c.n()).map(|x| (g.iota[x], x)).collect();
        assert!(find_category_isomorphism(&g.table, &c, &pins).is_some());
    }

    #[test]
    fn fractions_of_discrete_is_discrete() {
        for n in 1..=3 {
            let c = fixtures::discrete(n);
            let g = fractions_groupoid(&c, 0).unwrap();
            assert_eq!(g.table.n(), n);
        }
    }

    #[test]
    fn fractions_require_preconditions() {
        assert!(matches!(
            fractions_groupoid(&fixtures::fork(), 0),
            Err(Error::NotRightReversible { .. })
        ));
        assert!(matches!(
            fractions_groupoid(&fixtures::flat2(), 0),
            Err(Error::NotCancellative { .. })
        ));
    }

    #[test]
    fn two_seeds_give_isomorphic_fraction_groupoids() {
        let c = fixtures::arrow();
        let g1 = fractions_groupoid(&c, 0).unwrap();
        let g2 = fractions_groupoid(&c, 1).unwrap();
        let report = check_fractions_unique(&c, &g1, &g2).unwrap();
        assert_eq!(report.iso.len(), g1.table.n());
    }

    #[test]
    fn presentation_converse_for_pair2_and_arrow() {
        let g = fixtures::pair2();
        // embed arrow: identities plus g21 (d = id1, r = id2 matches a: e → f)
        let sub = vec![
            g.index_of("id1").unwrap(),
            g.index_of("id2").unwrap(),
            g.index_of("g21").unwrap(),
        ];
        let report = check_fraction_presentation(&g, &sub).unwrap();
        assert!(report.right_reversible);
        assert!(report.cc_inv_full && report.inv_cc_full);
        assert!(report.iso.is_some());
    }

    #[test]
    fn presentation_converse_identities_only_fails_hypotheses() {
        let g = fixtures::pair2();
        let sub: Vec<usize> = g.identities().to_vec();
        let report = check_fraction_presentation(&g, &sub).unwrap();
        assert!(report.right_reversible);
        assert!(!report.cc_inv_full);
        assert!(!report.hypotheses_hold);
        assert!(report.iso.is_none());
    }

    #[test]
    fn presentation_converse_full_subcategory_is_identity_like() {
        let g = fixtures::pair2();
        let sub: Vec<usize> = (0..g.n()).collect();
        let report = check_fraction_presentation(&g, &sub).unwrap();
        assert!(report.hypotheses_hold);
        assert!(report.iso.is_some());
    }
}
