//! The two object-level duality isomorphisms and the morphism-level
//! duality through relational functors.
//!
//! Object side: `a ↦ X_a` identifies a Boolean restriction monoid with
//! the bisection monoid of its prime filter category, and `x ↦ F_x`
//! identifies a category with the prime filter category of its bisection
//! monoid. Both certificates verify every preservation clause
//! exhaustively.
//!
//! Morphism side: a homomorphism θ: S → T induces the relation ρ_θ from
//! the filter category of T to the filter category of S by
//! `(A, B) ∈ ρ_θ iff A ⊆ θ⁻¹(B)`; the relation satisfies the relational
//! functor axioms RF1–RF3 and the covering axioms CRF1–CRF2, and θ is
//! recovered from ρ_θ via `ρ⁻¹(X_s) = X_{θ(s)}`. The nonempty preimage
//! θ⁻¹(B) of a prime filter splits into prime filters along the relation
//! `a ≈ b iff some c ∈ θ⁻¹(B) lies below both`.

use std::collections::BTreeSet;

use crate::category::{CategoryTable, KbMonoid, LocalBisection};
use crate::error::{Error, Result};
use crate::filters::{build_category, is_prime, is_ultrafilter, PrimeFilter, PrimeFilterCategory};
use crate::monoid::{Elem, HomomorphismMap, MonoidContext};

/// Mutually inverse maps plus the list of verified preservation clauses.
#[derive(Debug, Clone)]
pub struct IsoCertificate {
    pub forward: Vec<usize>,
    pub backward: Vec<usize>,
    pub clauses: Vec<&'static str>,
}

/// A monoid with its filter category, the bisection monoid of that
/// category, and the double-dual certificate.
#[derive(Debug, Clone)]
pub struct StoneDual {
    pub ctx: MonoidContext,
    pub category: PrimeFilterCategory,
    pub kb: KbMonoid,
    pub certificate: IsoCertificate,
}

/// Build the filter category of `ctx`, take its bisection monoid, and
/// certify that `a ↦ X_a` is an isomorphism onto it.
pub fn monoid_double_dual(ctx: &MonoidContext, cap: usize) -> Result<StoneDual> {
    let category = build_category(ctx)?;
    let kb = category.table.kb_monoid(cap)?;
    let m = &ctx.table;
    let n = m.n();
    let violation = |clause: &str, witness: serde_json::Value| {
        Error::violation("monoid-double-dual", clause, witness)
    };
    if kb.len() != n {
        return Err(violation(
            "X does not have the same cardinality as the monoid",
            serde_json::json!({ "monoid": n, "bisections": kb.len() }),
        ));
    }
    let mut forward = Vec::with_capacity(n);
    for a in 0..n {
        let xa = LocalBisection(category.x_index[a].clone());
        let i = kb.index_of(&xa).ok_or_else(|| {
            violation(
                "X_a is not a local bisection of the filter category",
                serde_json::json!({ "element": m.label(a) }),
            )
        })?;
        forward.push(i);
    }
    let mut clauses = Vec::new();
    let mut backward = vec![usize::MAX; n];
    for a in 0..n {
        if backward[forward[a]] != usize::MAX {
            return Err(violation(
                "a ↦ X_a is not injective",
                serde_json::json!({ "element": m.label(a) }),
            ));
        }
        backward[forward[a]] = a;
    }
    clauses.push("bijective");
    let t = &kb.monoid.table;
    for a in 0..n {
        for b in 0..n {
            if forward[m.mul(a, b)] != t.mul(forward[a], forward[b]) {
                return Err(violation(
                    "X_{ab} differs from X_a · X_b",
                    serde_json::json!({ "a": m.label(a), "b": m.label(b) }),
                ));
            }
        }
    }
    clauses.push("multiplicative");
    for a in 0..n {
        if forward[m.star(a)] != t.star(forward[a]) || forward[m.plus(a)] != t.plus(forward[a]) {
            return Err(violation(
                "star or plus is not preserved",
                serde_json::json!({ "a": m.label(a) }),
            ));
        }
    }
    clauses.push("star");
    clauses.push("plus");
    if forward[m.zero()] != t.zero() || forward[m.one()] != t.one() {
        return Err(violation("zero or one is not preserved", serde_json::Value::Null));
    }
    clauses.push("zero");
    clauses.push("one");
    for (a, b) in ctx.compatible_pairs() {
        if let Some(j) = ctx.join(a, b) {
            let (fa, fb) = (forward[a], forward[b]);
            if !kb.monoid.compatible(fa, fb) || kb.monoid.join(fa, fb) != Some(forward[j]) {
                return Err(violation(
                    "a binary compatible join is not preserved",
                    serde_json::json!({ "a": m.label(a), "b": m.label(b) }),
                ));
            }
        }
    }
    clauses.push("joins");
    Ok(StoneDual {
        ctx: ctx.clone(),
        category,
        kb,
        certificate: IsoCertificate {
            forward,
            backward,
            clauses,
        },
    })
}

/// A category, the filter category of its bisection monoid, and the
/// double-dual certificate for `x ↦ F_x`.
#[derive(Debug, Clone)]
pub struct CategoryDoubleDual {
    pub kb: KbMonoid,
    pub refiltered: PrimeFilterCategory,
    pub certificate: IsoCertificate,
}

/// Build the bisection monoid of `c`, then its filter category, and
/// certify that `x ↦ F_x` (the filter of bisections containing x) is an
/// isomorphism of categories.
pub fn category_double_dual(c: &CategoryTable, cap: usize) -> Result<CategoryDoubleDual> {
    let kb = c.kb_monoid(cap)?;
    let refiltered = build_category(&kb.monoid)?;
    let n = c.n();
    let violation = |clause: &str, witness: serde_json::Value| {
        Error::violation("category-double-dual", clause, witness)
    };
    if refiltered.table.n() != n {
        return Err(violation(
            "filter category has a different number of arrows",
            serde_json::json!({ "arrows": n, "filters": refiltered.table.n() }),
        ));
    }
    let mut forward = Vec::with_capacity(n);
    for x in 0..n {
        let carrier: Vec<Elem> = (0..kb.len())
            .filter(|&i| kb.bisections[i].0.contains(&x))
            .collect();
        let min = *carrier
            .iter()
            .find(|&&i| carrier.iter().all(|&j| kb.monoid.order.le(i, j)))
            .ok_or_else(|| {
                violation(
                    "F_x has no least element",
                    serde_json::json!({ "arrow": c.label(x) }),
                )
            })?;
        let fx = PrimeFilter { min, carrier };
        if !is_prime(&kb.monoid, &fx) || !is_ultrafilter(&kb.monoid, &fx) {
            return Err(violation(
                "F_x is not a prime filter",
                serde_json::json!({ "arrow": c.label(x) }),
            ));
        }
        let arrow = refiltered.arrow_of(&fx).ok_or_else(|| {
            violation(
                "F_x is not among the enumerated prime filters",
                serde_json::json!({ "arrow": c.label(x) }),
            )
        })?;
        forward.push(arrow);
    }
    let mut clauses = Vec::new();
    let mut backward = vec![usize::MAX; n];
    for x in 0..n {
        if backward[forward[x]] != usize::MAX {
            return Err(violation(
                "x ↦ F_x is not injective",
                serde_json::json!({ "arrow": c.label(x) }),
            ));
        }
        backward[forward[x]] = x;
    }
    clauses.push("bijective");
    let d2 = &refiltered.table;
    for x in 0..n {
        if c.is_identity(x) != d2.is_identity(forward[x]) {
            return Err(violation(
                "identities are not matched",
                serde_json::json!({ "arrow": c.label(x) }),
            ));
        }
        if forward[c.d(x)] != d2.d(forward[x]) || forward[c.r(x)] != d2.r(forward[x]) {
            return Err(violation(
                "d or r is not matched",
                serde_json::json!({ "arrow": c.label(x) }),
            ));
        }
    }
    clauses.push("identities");
    clauses.push("endpoints");
    for x in 0..n {
        for y in 0..n {
            match (c.compose(x, y), d2.compose(forward[x], forward[y])) {
                (None, None) => {}
                (Some(xy), Some(img)) if forward[xy] == img => {}
                _ => {
                    return Err(violation(
                        "composition is not matched",
                        serde_json::json!({ "x": c.label(x), "y": c.label(y) }),
                    ))
                }
            }
        }
    }
    clauses.push("composition");
    Ok(CategoryDoubleDual {
        kb,
        refiltered,
        certificate: IsoCertificate {
            forward,
            backward,
            clauses,
        },
    })
}

/// A relation ⊆ target × source regarded as an arrow from `source` to
/// `target` (both are categories). For the relation induced by a
/// homomorphism θ: S → T, `source` is the filter category of T and
/// `target` the filter category of S.
#[derive(Debug, Clone)]
pub struct RelationalFunctor {
    pub source: CategoryTable,
    pub target: CategoryTable,
    /// Pairs (c, d) with c an arrow of `target`, d an arrow of `source`.
    pub pairs: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct RfAxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    pub witness: Option<serde_json::Value>,
}

#[derive(Debug, Clone)]
pub struct RfReport {
    pub checks: Vec<RfAxiomCheck>,
}

impl RfReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl RelationalFunctor {
    pub fn related(&self, c: usize, d: usize) -> bool {
        self.pairs.contains(&(c, d))
    }

    /// Evaluate RF1–RF3 and CRF1–CRF2 exhaustively.
    pub fn check_axioms(&self) -> RfReport {
        let (cc, dd) = (&self.target, &self.source);
        let mut checks = Vec::new();
        let mut push = |name: &'static str, witness: Option<serde_json::Value>| {
            checks.push(RfAxiomCheck {
                name,
                passed: witness.is_none(),
                witness,
            });
        };
        // RF1: each identity of the source has a unique identity partner
        let mut w = None;
        for &e in dd.identities() {
            let partners = cc
                .identities()
                .iter()
                .filter(|&&f| self.related(f, e))
                .count();
            if partners != 1 {
                w = Some(serde_json::json!({ "identity": dd.label(e), "partners": partners }));
                break;
            }
        }
        push("RF1", w);
        // RF2: closure under d and r
        let mut w = None;
        'rf2: for &(c, d) in &self.pairs {
            if !self.related(cc.d(c), dd.d(d)) || !self.related(cc.r(c), dd.r(d)) {
                w = Some(serde_json::json!({ "c": cc.label(c), "d": dd.label(d) }));
                break 'rf2;
            }
        }
        push("RF2", w);
        // RF3: closure under defined composition
        let mut w = None;
        'rf3: for &(a, b) in &self.pairs {
            for &(c, d) in &self.pairs {
                if let (Some(ac), Some(bd)) = (cc.compose(a, c), dd.compose(b, d)) {
                    if !self.related(ac, bd) {
                        w = Some(serde_json::json!({
                            "a": cc.label(a), "b": dd.label(b),
                            "c": cc.label(c), "d": dd.label(d),
                        }));
                        break 'rf3;
                    }
                }
            }
        }
        push("RF3", w);
        // CRF1: partners with a common endpoint are unique
        let mut w = None;
        'crf1: for &(a, b) in &self.pairs {
            for &(a2, b2) in &self.pairs {
                if a != a2 || b == b2 {
                    continue;
                }
                if dd.d(b) == dd.d(b2) || dd.r(b) == dd.r(b2) {
                    w = Some(serde_json::json!({
                        "a": cc.label(a), "b": dd.label(b), "b2": dd.label(b2),
                    }));
                    break 'crf1;
                }
            }
        }
        push("CRF1", w);
        // CRF2: lifting along identities, both sides
        let mut w = None;
        'crf2: for &e in dd.identities() {
            for &f in cc.identities() {
                if !self.related(f, e) {
                    continue;
                }
                for a in 0..cc.n() {
                    if cc.d(a) == f {
                        let lifted = (0..dd.n())
                            .any(|b| dd.d(b) == e && self.related(a, b));
                        if !lifted {
                            w = Some(serde_json::json!({
                                "identity": dd.label(e), "arrow": cc.label(a), "side": "d",
                            }));
                            break 'crf2;
                        }
                    }
                    if cc.r(a) == f {
                        let lifted = (0..dd.n())
                            .any(|b| dd.r(b) == e && self.related(a, b));
                        if !lifted {
                            w = Some(serde_json::json!({
                                "identity": dd.label(e), "arrow": cc.label(a), "side": "r",
                            }));
                            break 'crf2;
                        }
                    }
                }
            }
        }
        push("CRF2", w);
        RfReport { checks }
    }
}

/// The dual relation of a homomorphism. `src` and `tgt` are the
/// double-dual contexts of source and target; the relation runs from the
/// target's filter category to the source's. The preimage of every
/// target filter is decomposed into prime filters along the way, and the
/// pairs of the relation are cross-checked to be exactly the pairs
/// (class, filter) arising from those decompositions. All RF/CRF axioms
/// are verified; any failure is a theorem violation.
pub fn relational_functor_of(
    h: &HomomorphismMap,
    src: &StoneDual,
    tgt: &StoneDual,
) -> Result<RelationalFunctor> {
    let report = h.check()?;
    if !report.ok() {
        return Err(Error::Invalid(
            "map is not a homomorphism of Boolean restriction monoids".into(),
        ));
    }
    let mut pairs = BTreeSet::new();
    for (i, a) in src.category.filters.iter().enumerate() {
        for (j, b) in tgt.category.filters.iter().enumerate() {
            // A ⊆ θ⁻¹(B)
            if a.carrier.iter().all(|&x| b.contains(h.map[x])) {
                pairs.insert((i, j));
            }
        }
    }
    let mut from_decomposition = BTreeSet::new();
    for (j, b) in tgt.category.filters.iter().enumerate() {
        for class in decompose_preimage(h, &src.ctx, b)? {
            let i = src.category.arrow_of(&class).ok_or_else(|| {
                Error::violation(
                    "preimage-partition-class",
                    "a preimage class is not among the source's prime filters",
                    serde_json::json!({ "min": h.source.label(class.min) }),
                )
            })?;
            from_decomposition.insert((i, j));
        }
    }
    if pairs != from_decomposition {
        return Err(Error::violation(
            "relational-functor-pairs",
            "the relation differs from the preimage decompositions",
            serde_json::Value::Null,
        ));
    }
    let rho = RelationalFunctor {
        source: tgt.category.table.clone(),
        target: src.category.table.clone(),
        pairs,
    };
    let axioms = rho.check_axioms();
    if !axioms.ok() {
        let failed: Vec<_> = axioms
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| (c.name, c.witness.clone()))
            .collect();
        return Err(Error::violation(
            "relational-functor-axioms",
            "the relation of a homomorphism fails an RF/CRF axiom",
            serde_json::json!(failed
                .iter()
                .map(|(n, w)| serde_json::json!({ "axiom": n, "witness": w }))
                .collect::<Vec<_>>()),
        ));
    }
    Ok(rho)
}

/// Split the preimage θ⁻¹(B) of a prime filter into prime filters via
/// `a ≈ b iff some c ∈ θ⁻¹(B) lies below both`. An empty preimage is a
/// legitimate outcome and yields the empty partition.
pub fn decompose_preimage(
    h: &HomomorphismMap,
    src_ctx: &MonoidContext,
    b: &PrimeFilter,
) -> Result<Vec<PrimeFilter>> {
    let preimage: Vec<Elem> = (0..h.source.n())
        .filter(|&a| b.contains(h.map[a]))
        .collect();
    if preimage.is_empty() {
        return Ok(Vec::new());
    }
    let k = preimage.len();
    let related = |x: Elem, y: Elem| -> bool {
        preimage
            .iter()
            .any(|&c| src_ctx.order.le(c, x) && src_ctx.order.le(c, y))
    };
    let mut rel = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            rel[i * k + j] = related(preimage[i], preimage[j]);
        }
    }
    // the relation must already be an equivalence; transitivity is the
    // nontrivial part
    for i in 0..k {
        for j in 0..k {
            if !rel[i * k + j] {
                continue;
            }
            for l in 0..k {
                if rel[j * k + l] && !rel[i * k + l] {
                    return Err(Error::violation(
                        "preimage-partition-equivalence",
                        "the below-both relation on a filter preimage is not transitive",
                        serde_json::json!({
                            "a": h.source.label(preimage[i]),
                            "b": h.source.label(preimage[j]),
                            "c": h.source.label(preimage[l]),
                        }),
                    ));
                }
            }
        }
    }
    let mut seen = vec![false; k];
    let mut classes = Vec::new();
    for i in 0..k {
        if seen[i] {
            continue;
        }
        let members: Vec<Elem> = (0..k)
            .filter(|&j| rel[i * k + j])
            .map(|j| {
                seen[j] = true;
                preimage[j]
            })
            .collect();
        let min = *members
            .iter()
            .find(|&&m| members.iter().all(|&x| src_ctx.order.le(m, x)))
            .ok_or_else(|| {
                Error::violation(
                    "preimage-partition-class",
                    "an equivalence class has no least element",
                    serde_json::json!({ "starter": h.source.label(preimage[i]) }),
                )
            })?;
        let class = PrimeFilter {
            min,
            carrier: members,
        };
        if PrimeFilter::up_of(src_ctx, min) != class
            || !is_prime(src_ctx, &class)
            || !is_ultrafilter(src_ctx, &class)
        {
            return Err(Error::violation(
                "preimage-partition-class",
                "an equivalence class of the preimage is not a prime filter",
                serde_json::json!({ "min": h.source.label(min) }),
            ));
        }
        classes.push(class);
    }
    classes.sort();
    Ok(classes)
}

/// Recover a homomorphism from a covering relational functor between two
/// filter categories: for each source element s, `ρ⁻¹(X_s)` must be a
/// local bisection of the target's filter category and correspond to a
/// unique target element through the double-dual certificate.
pub fn homomorphism_of(
    rho: &RelationalFunctor,
    src: &StoneDual,
    tgt: &StoneDual,
) -> Result<HomomorphismMap> {
    let axioms = rho.check_axioms();
    if !axioms.ok() {
        return Err(Error::Invalid(
            "relation fails the covering relational functor axioms".into(),
        ));
    }
    let n = src.ctx.table.n();
    let mut map = Vec::with_capacity(n);
    for s in 0..n {
        let xs = &src.category.x_index[s];
        let mut preimage: Vec<usize> = rho
            .pairs
            .iter()
            .filter(|(c, _)| xs.contains(c))
            .map(|&(_, d)| d)
            .collect();
        preimage.sort_unstable();
        preimage.dedup();
        if !tgt.category.table.is_local_bisection(&preimage) {
            return Err(Error::violation(
                "dual-image-bisection",
                "ρ⁻¹(X_s) is not a local bisection of the target filter category",
                serde_json::json!({ "element": src.ctx.table.label(s) }),
            ));
        }
        let bisection = LocalBisection(preimage);
        let kb_index = tgt.kb.index_of(&bisection).ok_or_else(|| {
            Error::violation(
                "dual-image-bisection",
                "ρ⁻¹(X_s) is not among the enumerated bisections",
                serde_json::json!({ "element": src.ctx.table.label(s) }),
            )
        })?;
        map.push(tgt.certificate.backward[kb_index]);
    }
    let h = HomomorphismMap {
        source: src.ctx.table.clone(),
        target: tgt.ctx.table.clone(),
        map,
    };
    let report = h.check()?;
    if !report.ok() {
        return Err(Error::violation(
            "recovered-homomorphism",
            "the map recovered from a relational functor is not a homomorphism",
            serde_json::Value::Null,
        ));
    }
    Ok(h)
}

#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub checked: usize,
    pub witness: Option<serde_json::Value>,
}

impl FactorizationReport {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// For every pair (x, d) ∈ ρ and every factorization x = a·b, some
/// factorization d = d1·d2 must satisfy (a, d1), (b, d2) ∈ ρ.
pub fn check_composite_factorization(rho: &RelationalFunctor) -> Result<FactorizationReport> {
    let (cc, dd) = (&rho.target, &rho.source);
    let mut checked = 0;
    for &(x, d) in &rho.pairs {
        for a in 0..cc.n() {
            for b in 0..cc.n() {
                if cc.compose(a, b) != Some(x) {
                    continue;
                }
                checked += 1;
                let mut found = false;
                'split: for d1 in 0..dd.n() {
                    for d2 in 0..dd.n() {
                        if dd.compose(d1, d2) == Some(d)
                            && rho.related(a, d1)
                            && rho.related(b, d2)
                        {
                            found = true;
                            break 'split;
                        }
                    }
                }
                if !found {
                    let witness = serde_json::json!({
                        "composite": cc.label(x),
                        "left": cc.label(a),
                        "right": cc.label(b),
                        "partner": dd.label(d),
                    });
                    return Ok(FactorizationReport {
                        checked,
                        witness: Some(witness),
                    });
                }
            }
        }
    }
    Ok(FactorizationReport {
        checked,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::monoid::MonoidContext;

    fn dual_of(m: &crate::monoid::MonoidTable) -> StoneDual {
        let ctx = MonoidContext::new(m).unwrap();
        monoid_double_dual(&ctx, 1 << 12).unwrap()
    }

    #[test]
    fn monoid_double_dual_on_fixtures() {
        for m in [fixtures::b4(), fixtures::g0(), fixtures::i2(), fixtures::s5()] {
            let dual = dual_of(&m);
            assert_eq!(dual.kb.len(), m.n());
            assert!(dual.certificate.clauses.contains(&"joins"));
        }
    }

    #[test]
    fn b4_elements_map_to_identity_subsets() {
        let dual = dual_of(&fixtures::b4());
        // two identity arrows, four bisections: the subsets of the identities
        assert_eq!(dual.category.table.n(), 2);
        assert_eq!(dual.kb.len(), 4);
    }

    #[test]
    fn category_double_dual_on_fixtures() {
        for c in [
            fixtures::arrow(),
            fixtures::pair2(),
            fixtures::fork(),
            fixtures::discrete(2),
        ] {
            let dd = category_double_dual(&c, 1 << 12).unwrap();
            assert_eq!(dd.refiltered.table.n(), c.n());
        }
    }

    #[test]
    fn identity_homomorphism_gives_identity_relation() {
        let m = fixtures::i2();
        let dual = dual_of(&m);
        let h = crate::monoid::HomomorphismMap::identity(&m);
        let rho = relational_functor_of(&h, &dual, &dual).unwrap();
        let n = dual.category.table.n();
        let expected: BTreeSet<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        assert_eq!(rho.pairs, expected);
    }

    #[test]
    fn inclusion_relation_has_three_pairs() {
        let h = fixtures::hom_s5_into_i2();
        let s = dual_of(&h.source);
        let t = dual_of(&h.target);
        let rho = relational_functor_of(&h, &s, &t).unwrap();
        assert_eq!(rho.pairs.len(), 3, "the filter over s21 has no partner");
        // the s21 arrow of C(I2) contributes no pair
        let s21_arrow = t
            .category
            .filters
            .iter()
            .position(|f| h.target.label(f.min) == "s21")
            .unwrap();
        assert!(rho.pairs.iter().all(|&(_, d)| d != s21_arrow));
    }

    #[test]
    fn swap_relation_swaps_identities() {
        let h = fixtures::hom_b4_swap();
        let dual = dual_of(&h.source);
        let rho = relational_functor_of(&h, &dual, &dual).unwrap();
        let e_arrow = dual
            .category
            .filters
            .iter()
            .position(|f| h.source.label(f.min) == "e")
            .unwrap();
        let f_arrow = dual
            .category
            .filters
            .iter()
            .position(|f| h.source.label(f.min) == "f")
            .unwrap();
        assert!(rho.related(e_arrow, f_arrow));
        assert!(rho.related(f_arrow, e_arrow));
        assert!(!rho.related(e_arrow, e_arrow));
    }

    #[test]
    fn axiom_checker_catches_broken_relations() {
        let m = fixtures::b4();
        let dual = dual_of(&m);
        let h = crate::monoid::HomomorphismMap::identity(&m);
        let rho = relational_functor_of(&h, &dual, &dual).unwrap();
        // dropping one identity pair starves RF1
        let mut broken = rho.clone();
        let &(e, f) = broken.pairs.iter().next().unwrap();
        broken.pairs.remove(&(e, f));
        let report = broken.check_axioms();
        assert!(!report.ok());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "RF1" && !c.passed));
        // a second partner for an identity breaks RF1's uniqueness
        let mut crossed = rho.clone();
        let ids: Vec<usize> = (0..crossed.target.n()).collect();
        crossed.pairs.insert((ids[0], ids[1]));
        let report = crossed.check_axioms();
        assert!(!report.ok());
    }

    #[test]
    fn preimage_partition_examples() {
        let m = fixtures::i2();
        let ctx = MonoidContext::new(&m).unwrap();
        let h = crate::monoid::HomomorphismMap::identity(&m);
        for b in crate::filters::enumerate_prime_filters(&ctx).unwrap() {
            let classes = decompose_preimage(&h, &ctx, &b).unwrap();
            assert_eq!(classes, vec![b]);
        }

        let h = fixtures::hom_s5_into_i2();
        let sctx = MonoidContext::new(&h.source).unwrap();
        let tctx = MonoidContext::new(&h.target).unwrap();
        let tfilters = crate::filters::enumerate_prime_filters(&tctx).unwrap();
        let by_min = |l: &str| {
            tfilters
                .iter()
                .find(|f| h.target.label(f.min) == l)
                .unwrap()
                .clone()
        };
        assert!(decompose_preimage(&h, &sctx, &by_min("s21")).unwrap().is_empty());
        let classes = decompose_preimage(&h, &sctx, &by_min("e1")).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(h.source.label(classes[0].min), "{id_e}");
    }

    #[test]
    fn theta_rho_roundtrip_on_fixture_maps() {
        let cases: Vec<crate::monoid::HomomorphismMap> = vec![
            crate::monoid::HomomorphismMap::identity(&fixtures::i2()),
            crate::monoid::HomomorphismMap::identity(&fixtures::b4()),
            crate::monoid::HomomorphismMap::identity(&fixtures::s5()),
            fixtures::hom_b4_swap(),
            fixtures::hom_s5_into_i2(),
        ];
        for h in cases {
            let s = dual_of(&h.source);
            let t = dual_of(&h.target);
            let rho = relational_functor_of(&h, &s, &t).unwrap();
            let back = homomorphism_of(&rho, &s, &t).unwrap();
            assert_eq!(back.map, h.map, "θ_{{ρ_θ}} recovers θ pointwise");
        }
    }

    #[test]
    fn factorization_property_on_fixture_maps() {
        let cases: Vec<crate::monoid::HomomorphismMap> = vec![
            crate::monoid::HomomorphismMap::identity(&fixtures::i2()),
            fixtures::hom_b4_swap(),
            fixtures::hom_s5_into_i2(),
        ];
        for h in cases {
            let s = dual_of(&h.source);
            let t = dual_of(&h.target);
            let rho = relational_functor_of(&h, &s, &t).unwrap();
            let report = check_composite_factorization(&rho).unwrap();
            assert!(report.ok(), "factorization fails: {:?}", report.witness);
        }
    }
}
