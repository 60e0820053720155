//! Prime filters of a Boolean restriction monoid and the category they
//! form.
//!
//! A filter is an up-closed, down-directed subset; in the finite case it
//! is the up-set of its least element, so enumeration walks the nonzero
//! elements, keeps the minimal ones and then verifies primeness and
//! maximality independently instead of assuming they coincide. Primeness
//! quantifies over binary compatible joins.
//!
//! Arrows of the filter category compose by `A·B = (AB)↑` when
//! `d(A) = r(B)`, with `d(A) = (A*)↑` and `r(A) = (A+)↑`. The identities
//! are exactly the prime filters containing a projection. No topology is
//! materialized: in the finite discrete case every set is open and
//! compact, and the per-element index `X_a` stands in for the usual basis.

use serde::Serialize;

use crate::category::CategoryTable;
use crate::error::{Error, Result};
use crate::monoid::{Elem, MonoidContext};

/// A prime filter, stored as its sorted carrier plus the least element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PrimeFilter {
    pub min: Elem,
    pub carrier: Vec<Elem>,
}

impl PrimeFilter {
    /// The up-set of `m`.
    pub fn up_of(ctx: &MonoidContext, m: Elem) -> Self {
        PrimeFilter {
            min: m,
            carrier: ctx.order.above(m),
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.carrier.binary_search(&a).is_ok()
    }
}

/// Up-close a set, find its least element, and check it really is a
/// proper filter (up-closed, down-directed via the least element, 0-free).
fn filter_from_set(ctx: &MonoidContext, set: &[Elem]) -> Result<PrimeFilter> {
    if set.is_empty() {
        return Err(Error::Invalid("empty set generates no filter".into()));
    }
    let n = ctx.table.n();
    let mut member = vec![false; n];
    for &a in set {
        for b in 0..n {
            if ctx.order.le(a, b) {
                member[b] = true;
            }
        }
    }
    let carrier: Vec<Elem> = (0..n).filter(|&x| member[x]).collect();
    let min = *carrier
        .iter()
        .find(|&&m| carrier.iter().all(|&x| ctx.order.le(m, x)))
        .ok_or_else(|| Error::Invalid("set is not down-directed".into()))?;
    if carrier.contains(&ctx.table.zero()) {
        return Err(Error::Invalid("filter is not proper".into()));
    }
    Ok(PrimeFilter { min, carrier })
}

/// Primeness with respect to binary compatible joins: whenever a join
/// lands in the filter, one of the joined elements already lies in it.
pub fn is_prime(ctx: &MonoidContext, filter: &PrimeFilter) -> bool {
    for (a, b) in ctx.compatible_pairs() {
        if let Some(j) = ctx.join(a, b) {
            if filter.contains(j) && !filter.contains(a) && !filter.contains(b) {
                return false;
            }
        }
    }
    true
}

/// Maximality among proper filters. Finite filters are up-sets of their
/// least element, so this reduces to minimality of `min` among nonzero
/// elements.
pub fn is_ultrafilter(ctx: &MonoidContext, filter: &PrimeFilter) -> bool {
    let zero = ctx.table.zero();
    filter.min != zero
        && (0..ctx.table.n())
            .all(|x| x == zero || x == filter.min || !ctx.order.le(x, filter.min))
}

/// Enumerate all prime filters. Every candidate up-set is tested for
/// primeness and for maximality, and the two verdicts are required to
/// agree; a disagreement is a theorem violation, not an input error.
pub fn enumerate_prime_filters(ctx: &MonoidContext) -> Result<Vec<PrimeFilter>> {
    let m = &ctx.table;
    let mut out = Vec::new();
    for x in 0..m.n() {
        if x == m.zero() {
            continue;
        }
        let candidate = PrimeFilter::up_of(ctx, x);
        let prime = is_prime(ctx, &candidate);
        let ultra = is_ultrafilter(ctx, &candidate);
        if prime != ultra {
            return Err(Error::violation(
                "prime-equals-ultrafilter",
                "an up-set filter is prime but not maximal, or maximal but not prime",
                serde_json::json!({
                    "generator": m.label(x),
                    "prime": prime,
                    "maximal": ultra,
                }),
            ));
        }
        if prime {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// `d(A) = (A*)↑`, verified to be a prime filter again.
pub fn filter_d(ctx: &MonoidContext, a: &PrimeFilter) -> Result<PrimeFilter> {
    let image: Vec<Elem> = a.carrier.iter().map(|&x| ctx.table.star(x)).collect();
    let f = filter_from_set(ctx, &image)?;
    ensure_prime(ctx, &f, "d-of-prime-filter")?;
    Ok(f)
}

/// `r(A) = (A+)↑`, verified to be a prime filter again.
pub fn filter_r(ctx: &MonoidContext, a: &PrimeFilter) -> Result<PrimeFilter> {
    let image: Vec<Elem> = a.carrier.iter().map(|&x| ctx.table.plus(x)).collect();
    let f = filter_from_set(ctx, &image)?;
    ensure_prime(ctx, &f, "r-of-prime-filter")?;
    Ok(f)
}

fn ensure_prime(ctx: &MonoidContext, f: &PrimeFilter, claim: &str) -> Result<()> {
    if !is_prime(ctx, f) || !is_ultrafilter(ctx, f) {
        return Err(Error::violation(
            claim,
            "derived filter is not prime",
            serde_json::json!({ "min": ctx.table.label(f.min) }),
        ));
    }
    Ok(())
}

/// `A·B = (AB)↑` for composable prime filters, verified prime.
pub fn filter_product(ctx: &MonoidContext, a: &PrimeFilter, b: &PrimeFilter) -> Result<PrimeFilter> {
    let da = filter_d(ctx, a)?;
    let rb = filter_r(ctx, b)?;
    if da != rb {
        return Err(Error::NotComposable);
    }
    let mut products = Vec::with_capacity(a.carrier.len() * b.carrier.len());
    for &x in &a.carrier {
        for &y in &b.carrier {
            products.push(ctx.table.mul(x, y));
        }
    }
    products.sort_unstable();
    products.dedup();
    let f = filter_from_set(ctx, &products)?;
    ensure_prime(ctx, &f, "prime-filter-product")?;
    Ok(f)
}

/// The category of prime filters, with the element-to-arrow index.
#[derive(Debug, Clone)]
pub struct PrimeFilterCategory {
    pub table: CategoryTable,
    pub filters: Vec<PrimeFilter>,
    /// For each monoid element a, the sorted arrows whose filter contains a.
    pub x_index: Vec<Vec<usize>>,
}

impl PrimeFilterCategory {
    pub fn arrow_of(&self, f: &PrimeFilter) -> Option<usize> {
        self.filters.iter().position(|g| g == f)
    }
}

/// Assemble the full prime filter category of a Boolean restriction
/// monoid and verify its laws: identities are the filters containing
/// projections, every filter equals `(a·d(A))↑` for each of its elements,
/// and filters with a common d that meet are equal.
pub fn build_category(ctx: &MonoidContext) -> Result<PrimeFilterCategory> {
    let m = &ctx.table;
    let filters = enumerate_prime_filters(ctx)?;
    let projections = m.projections();
    let n = filters.len();
    let find = |f: &PrimeFilter| -> Result<usize> {
        filters
            .iter()
            .position(|g| g == f)
            .ok_or_else(|| Error::violation(
                "filter-category-closure",
                "a derived filter is not among the enumerated prime filters",
                serde_json::json!({ "min": m.label(f.min) }),
            ))
    };
    let mut identities = Vec::new();
    for (i, f) in filters.iter().enumerate() {
        if f.carrier.iter().any(|a| projections.contains(a)) {
            identities.push(i);
        }
    }
    let mut dmap = Vec::with_capacity(n);
    let mut rmap = Vec::with_capacity(n);
    for f in &filters {
        dmap.push(find(&filter_d(ctx, f)?)?);
        rmap.push(find(&filter_r(ctx, f)?)?);
    }
    for (i, f) in filters.iter().enumerate() {
        let is_id = identities.contains(&i);
        if is_id != (dmap[i] == i && rmap[i] == i) {
            return Err(Error::violation(
                "filter-category-identities",
                "identities are not exactly the filters containing projections",
                serde_json::json!({ "min": m.label(f.min) }),
            ));
        }
    }
    let mut comp = vec![None; n * n];
    for i in 0..n {
        for j in 0..n {
            if dmap[i] == rmap[j] {
                let prod = filter_product(ctx, &filters[i], &filters[j])?;
                comp[i * n + j] = Some(find(&prod)?);
            }
        }
    }
    let labels: Vec<String> = filters.iter().map(|f| format!("^{}", m.label(f.min))).collect();
    let table = CategoryTable::from_parts(labels, identities, dmap, rmap, comp)
        .map_err(|e| Error::violation("filter-category-laws", e.to_string(), serde_json::Value::Null))?;

    // coset form: A = (a·d(A))↑ for every a ∈ A
    for (i, f) in filters.iter().enumerate() {
        let d = &filters[table.d(i)];
        for &a in &f.carrier {
            let coset: Vec<Elem> = d.carrier.iter().map(|&p| m.mul(a, p)).collect();
            let up = filter_from_set(ctx, &coset)?;
            if &up != f {
                return Err(Error::violation(
                    "filter-coset-form",
                    "a prime filter is not the up-set of a·d(A)",
                    serde_json::json!({ "filter": m.label(f.min), "element": m.label(a) }),
                ));
            }
        }
    }
    // filters with common d that intersect coincide, and dually
    for i in 0..n {
        for j in (i + 1)..n {
            let meet = filters[i]
                .carrier
                .iter()
                .any(|a| filters[j].contains(*a));
            if meet && (table.d(i) == table.d(j) || table.r(i) == table.r(j)) {
                return Err(Error::violation(
                    "filter-disjointness",
                    "distinct prime filters with a common endpoint intersect",
                    serde_json::json!({
                        "first": m.label(filters[i].min),
                        "second": m.label(filters[j].min),
                    }),
                ));
            }
        }
    }
    let x_index: Vec<Vec<usize>> = (0..m.n())
        .map(|a| {
            (0..n)
                .filter(|&i| filters[i].contains(a))
                .collect()
        })
        .collect();
    Ok(PrimeFilterCategory {
        table,
        filters,
        x_index,
    })
}

/// A point of the classical Stone space of the projection algebra,
/// represented by its generating atom.
#[derive(Debug, Clone, Serialize)]
pub struct StonePoint {
    pub atom: Elem,
    /// The ultrafilter of the projection algebra: projections above the atom.
    pub carrier: Vec<Elem>,
}

#[derive(Debug, Clone)]
pub struct StoneSpace {
    pub points: Vec<StonePoint>,
    /// For each point, the identity arrow of the filter category it maps to.
    pub identity_arrow: Vec<usize>,
}

/// Enumerate the ultrafilters of the projection algebra (one per atom),
/// exhibit the bijection with the identity arrows of the filter category,
/// and verify the transfer: every prime filter equals `(aE)↑` for some
/// projection ultrafilter E and some a with a* ∈ E.
pub fn stone_space(ctx: &MonoidContext, cat: &PrimeFilterCategory) -> Result<StoneSpace> {
    let m = &ctx.table;
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
    let mut points = Vec::new();
    for &p in &atoms {
        let carrier: Vec<Elem> = projections
            .iter()
            .copied()
            .filter(|&q| ctx.order.le(p, q))
            .collect();
        // filter laws inside the projection algebra: meets stay in, prime
        for &q in &carrier {
            for &q2 in &carrier {
                if !carrier.contains(&m.mul(q, q2)) {
                    return Err(Error::violation(
                        "stone-point-filter",
                        "projection ultrafilter is not meet-closed",
                        serde_json::json!({ "atom": m.label(p) }),
                    ));
                }
            }
        }
        for &q in &projections {
            for &q2 in &projections {
                if let Some(j) = ctx.join(q, q2) {
                    if carrier.contains(&j)
                        && !carrier.contains(&q)
                        && !carrier.contains(&q2)
                    {
                        return Err(Error::violation(
                            "stone-point-prime",
                            "projection ultrafilter is not prime",
                            serde_json::json!({ "atom": m.label(p) }),
                        ));
                    }
                }
            }
        }
        points.push(StonePoint { atom: p, carrier });
    }
    // bijection with identity arrows via up-closure in the whole monoid
    let mut identity_arrow = Vec::with_capacity(points.len());
    let mut hit = vec![false; cat.filters.len()];
    for point in &points {
        let up = filter_from_set(ctx, &point.carrier)?;
        let arrow = cat.arrow_of(&up).ok_or_else(|| {
            Error::violation(
                "stone-point-bijection",
                "projection ultrafilter does not up-close to a prime filter",
                serde_json::json!({ "atom": m.label(point.atom) }),
            )
        })?;
        if !cat.table.is_identity(arrow) || hit[arrow] {
            return Err(Error::violation(
                "stone-point-bijection",
                "point does not map bijectively onto an identity arrow",
                serde_json::json!({ "atom": m.label(point.atom) }),
            ));
        }
        hit[arrow] = true;
        identity_arrow.push(arrow);
    }
    if cat
        .table
        .identities()
        .iter()
        .any(|&e| !hit[e])
    {
        return Err(Error::violation(
            "stone-point-bijection",
            "an identity arrow is not hit by any projection ultrafilter",
            serde_json::Value::Null,
        ));
    }
    // transfer: every prime filter is (aE)↑ with a* ∈ E
    for f in &cat.filters {
        let mut found = false;
        'search: for point in &points {
            for a in 0..m.n() {
                if !point.carrier.contains(&m.star(a)) {
                    continue;
                }
                let coset: Vec<Elem> = point.carrier.iter().map(|&p| m.mul(a, p)).collect();
                if let Ok(up) = filter_from_set(ctx, &coset) {
                    if &up == f {
                        found = true;
                        break 'search;
                    }
                }
            }
        }
        if !found {
            return Err(Error::violation(
                "stone-transfer",
                "a prime filter is not the up-set of aE for any point E",
                serde_json::json!({ "filter": m.label(f.min) }),
            ));
        }
    }
    Ok(StoneSpace {
        points,
        identity_arrow,
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
    fn b4_has_two_prime_filters() {
        let m = fixtures::b4();
        let ctx = ctx_of(&m);
        let filters = enumerate_prime_filters(&ctx).unwrap();
        let mins: Vec<&str> = filters.iter().map(|f| m.label(f.min)).collect();
        assert_eq!(mins, ["e", "f"]);
        // ↑1 = {1} is a proper filter but not prime: e ∨ f = 1
        let up1 = PrimeFilter::up_of(&ctx, m.one());
        assert!(!is_prime(&ctx, &up1));
    }

    #[test]
    fn i2_has_four_prime_filters() {
        let m = fixtures::i2();
        let ctx = ctx_of(&m);
        let filters = enumerate_prime_filters(&ctx).unwrap();
        let mins: Vec<&str> = filters.iter().map(|f| m.label(f.min)).collect();
        assert_eq!(mins, ["e1", "e2", "s12", "s21"]);
        let s12 = filters.iter().find(|f| m.label(f.min) == "s12").unwrap();
        assert_eq!(m.labels(&s12.carrier), ["s12", "w"]);
    }

    #[test]
    fn s5_has_three_prime_filters() {
        let m = fixtures::s5();
        let ctx = ctx_of(&m);
        let filters = enumerate_prime_filters(&ctx).unwrap();
        let mins: Vec<&str> = filters.iter().map(|f| m.label(f.min)).collect();
        assert_eq!(mins, ["{id_e}", "{id_f}", "{a}"]);
    }

    #[test]
    fn filter_endpoints_in_i2() {
        let m = fixtures::i2();
        let ctx = ctx_of(&m);
        let s12 = PrimeFilter::up_of(&ctx, m.index_of("s12").unwrap());
        let d = filter_d(&ctx, &s12).unwrap();
        let r = filter_r(&ctx, &s12).unwrap();
        assert_eq!(m.label(d.min), "e1");
        assert_eq!(m.label(r.min), "e2");
    }

    #[test]
    fn filter_endpoints_fix_identity_filters() {
        let m = fixtures::s5();
        let ctx = ctx_of(&m);
        let e = PrimeFilter::up_of(&ctx, m.index_of("{id_e}").unwrap());
        assert_eq!(filter_d(&ctx, &e).unwrap(), e);
        assert_eq!(filter_r(&ctx, &e).unwrap(), e);
        let a = PrimeFilter::up_of(&ctx, m.index_of("{a}").unwrap());
        assert_eq!(m.label(filter_d(&ctx, &a).unwrap().min), "{id_e}");
    }

    #[test]
    fn filter_products_in_i2() {
        let m = fixtures::i2();
        let ctx = ctx_of(&m);
        let up = |l: &str| PrimeFilter::up_of(&ctx, m.index_of(l).unwrap());
        // identity law: r(B)·B = B
        let s12 = up("s12");
        let rb = filter_r(&ctx, &s12).unwrap();
        assert_eq!(filter_product(&ctx, &rb, &s12).unwrap(), s12);
        // ↑s12 · ↑e1 = ↑s12
        assert_eq!(filter_product(&ctx, &s12, &up("e1")).unwrap(), s12);
        // ↑s21 · ↑s12 = ↑e1
        assert_eq!(
            filter_product(&ctx, &up("s21"), &up("s12")).unwrap(),
            up("e1")
        );
        // non-composable pair
        assert!(matches!(
            filter_product(&ctx, &up("e1"), &up("s12")),
            Err(Error::NotComposable)
        ));
    }

    #[test]
    fn category_of_b4_is_discrete() {
        let m = fixtures::b4();
        let ctx = ctx_of(&m);
        let cat = build_category(&ctx).unwrap();
        assert_eq!(cat.table.n(), 2);
        assert_eq!(cat.table.identities().len(), 2);
    }

    #[test]
    fn category_of_i2_is_pair2() {
        let ctx = ctx_of(&fixtures::i2());
        let cat = build_category(&ctx).unwrap();
        assert!(crate::category::find_category_isomorphism(&cat.table, &fixtures::pair2(), &[])
            .is_some());
    }

    #[test]
    fn category_of_s5_is_arrow() {
        let ctx = ctx_of(&fixtures::s5());
        let cat = build_category(&ctx).unwrap();
        assert!(crate::category::find_category_isomorphism(&cat.table, &fixtures::arrow(), &[])
            .is_some());
    }

    #[test]
    fn x_index_behaves_like_a_basis() {
        for m in [fixtures::b4(), fixtures::i2(), fixtures::s5(), fixtures::g0()] {
            let ctx = ctx_of(&m);
            let cat = build_category(&ctx).unwrap();
            for a in 0..m.n() {
                for b in 0..m.n() {
                    let mut meet: Vec<usize> = cat.x_index[a]
                        .iter()
                        .copied()
                        .filter(|i| cat.x_index[b].contains(i))
                        .collect();
                    let mut cover: Vec<usize> = (0..m.n())
                        .filter(|&c| ctx.order.le(c, a) && ctx.order.le(c, b))
                        .flat_map(|c| cat.x_index[c].iter().copied())
                        .collect();
                    meet.sort_unstable();
                    cover.sort_unstable();
                    cover.dedup();
                    assert_eq!(meet, cover, "X_a ∩ X_b is covered by X_c for c ≤ a, b");
                }
            }
        }
    }

    #[test]
    fn non_boolean_input_surfaces_as_a_violation() {
        // chain3 is not Boolean: ↑1 = {1} is prime there but not maximal,
        // so the prime-equals-ultrafilter verification trips
        let ctx = ctx_of(&fixtures::chain3());
        match enumerate_prime_filters(&ctx) {
            Err(Error::TheoremViolation(v)) => {
                assert_eq!(v.claim, "prime-equals-ultrafilter");
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn stone_space_counts() {
        for (m, expect) in [
            (fixtures::b4(), 2),
            (fixtures::i2(), 2),
            (fixtures::g0(), 1),
            (fixtures::s5(), 2),
        ] {
            let ctx = ctx_of(&m);
            let cat = build_category(&ctx).unwrap();
            let space = stone_space(&ctx, &cat).unwrap();
            assert_eq!(space.points.len(), expect);
            assert_eq!(space.points.len(), cat.table.identities().len());
        }
    }
}
