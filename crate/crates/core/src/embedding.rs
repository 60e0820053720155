//! The end-to-end embedding pipeline and the filter correspondence of a
//! full embedding.
//!
//! Pipeline for a Boolean ample monoid S satisfying condition (C): build
//! the prime filter category, take its groupoid of fractions G, and let
//! T be the bisection monoid of G. The embedding sends a to the ι-image
//! of the bisection X_a. Four certificates are computed exhaustively:
//! ε is injective, ε is a homomorphism of Boolean restriction monoids,
//! ε is full (every idempotent of T lies in the image), and every
//! nonzero element of T is a finite join of fractions ε(a)⁻¹ε(b).

use std::collections::BTreeMap;

use crate::category::LocalBisection;
use crate::duality::{monoid_double_dual, StoneDual};
use crate::error::{Error, Result};
use crate::filters::{enumerate_prime_filters, is_prime, is_ultrafilter, PrimeFilter};
use crate::fractions::{check_condition_c, fractions_groupoid, FractionGroupoid};
use crate::monoid::{Elem, HomomorphismMap, MonoidContext};

/// Certificates for one embedding run. `covers` stores, per nonzero
/// element of the target, a minimal list of fraction pairs (a, b) whose
/// join is that element.
#[derive(Debug, Clone)]
pub struct EmbeddingResult {
    pub dual: StoneDual,
    pub fractions: FractionGroupoid,
    pub target: crate::category::KbMonoid,
    pub map: Vec<Elem>,
    pub covers: BTreeMap<Elem, Vec<(Elem, Elem)>>,
    pub certificates: EmbeddingCertificates,
}

#[derive(Debug, Clone, Copy)]
pub struct EmbeddingCertificates {
    pub injective: bool,
    pub homomorphic: bool,
    pub full: bool,
    pub join_cover: bool,
    pub max_cover_size: usize,
}

impl EmbeddingCertificates {
    pub fn all(&self) -> bool {
        self.injective && self.homomorphic && self.full && self.join_cover
    }
}

/// Run the pipeline. Fails with `ConditionCFails` (carrying the
/// counterexample) when the hypothesis is not met.
pub fn embed_pipeline(ctx: &MonoidContext, cap: usize, seed: u64) -> Result<EmbeddingResult> {
    let condc = check_condition_c(ctx)?;
    if let Some((pi, a, b)) = condc.counterexample {
        return Err(Error::ConditionCFails {
            filter: ctx.table.label(condc.points[pi].atom).into(),
            a: ctx.table.label(a).into(),
            b: ctx.table.label(b).into(),
        });
    }
    let dual = monoid_double_dual(ctx, cap)?;
    let fractions = fractions_groupoid(&dual.category.table, seed)?;
    let target = fractions.table.kb_monoid(cap)?;
    let t = &target.monoid;
    // ε(a) = { ι(A) : A ∈ X_a }
    let mut map = Vec::with_capacity(ctx.table.n());
    for a in 0..ctx.table.n() {
        let image: Vec<usize> = dual.category.x_index[a]
            .iter()
            .map(|&arrow| fractions.iota[arrow])
            .collect();
        let bisection = LocalBisection::sorted(image);
        let idx = target.index_of(&bisection).ok_or_else(|| {
            Error::violation(
                "embedding-image",
                "ι(X_a) is not a local bisection of the groupoid of fractions",
                serde_json::json!({ "element": ctx.table.label(a) }),
            )
        })?;
        map.push(idx);
    }
    let mut injective = true;
    for a in 0..map.len() {
        for b in (a + 1)..map.len() {
            if map[a] == map[b] {
                injective = false;
            }
        }
    }
    let hom = HomomorphismMap {
        source: ctx.table.clone(),
        target: t.table.clone(),
        map: map.clone(),
    };
    let homomorphic = hom.check()?.ok();
    let image: Vec<bool> = {
        let mut flags = vec![false; t.table.n()];
        for &x in &map {
            flags[x] = true;
        }
        flags
    };
    let full = t
        .table
        .idempotents()
        .into_iter()
        .all(|e| image[e]);
    if !t.table.classify().inverse {
        return Err(Error::violation(
            "embedding-target-inverse",
            "the bisection monoid of the groupoid of fractions does not classify inverse",
            serde_json::Value::Null,
        ));
    }
    // all fractions ε(a)⁻¹·ε(b); the inverse of a bisection of a groupoid
    // flips each arrow
    let inverse_of = |x: Elem| -> Result<Elem> {
        let flipped: Vec<usize> = target.bisections[x]
            .0
            .iter()
            .map(|&g| fractions.inverses[g])
            .collect();
        let bisection = LocalBisection::sorted(flipped);
        let y = target.index_of(&bisection).ok_or_else(|| {
            Error::violation(
                "embedding-inverse",
                "arrowwise inverse of a bisection is not a bisection",
                serde_json::json!({ "element": t.table.label(x) }),
            )
        })?;
        if t.table.mul(t.table.mul(x, y), x) != x || t.table.mul(t.table.mul(y, x), y) != y {
            return Err(Error::violation(
                "embedding-inverse",
                "arrowwise inverse is not a generalized inverse",
                serde_json::json!({ "element": t.table.label(x) }),
            ));
        }
        Ok(y)
    };
    let mut fraction_of: BTreeMap<Elem, (Elem, Elem)> = BTreeMap::new();
    for a in 0..ctx.table.n() {
        let inv_ea = inverse_of(map[a])?;
        for b in 0..ctx.table.n() {
            let frac = t.table.mul(inv_ea, map[b]);
            fraction_of.entry(frac).or_insert((a, b));
        }
    }
    let mut covers = BTreeMap::new();
    let mut join_cover = true;
    let mut max_cover_size = 0;
    for tx in 0..t.table.n() {
        if tx == t.table.zero() {
            continue;
        }
        let below: Vec<Elem> = fraction_of
            .keys()
            .copied()
            .filter(|&f| f != t.table.zero() && t.order.le(f, tx))
            .collect();
        let union: Vec<usize> = below
            .iter()
            .flat_map(|&f| target.bisections[f].0.iter().copied())
            .collect();
        if LocalBisection::sorted(union) != target.bisections[tx] {
            join_cover = false;
            continue;
        }
        // a minimal cover drawn from the maximal fractions below tx
        let maximal: Vec<Elem> = below
            .iter()
            .copied()
            .filter(|&f| below.iter().all(|&g| g == f || !t.order.le(f, g)))
            .collect();
        let chosen = minimal_cover(&target.bisections, &maximal, &target.bisections[tx])
            .unwrap_or_else(|| maximal.clone());
        max_cover_size = max_cover_size.max(chosen.len());
        covers.insert(tx, chosen.iter().map(|f| fraction_of[f]).collect());
    }
    Ok(EmbeddingResult {
        dual,
        fractions,
        target,
        map,
        covers,
        certificates: EmbeddingCertificates {
            injective,
            homomorphic,
            full,
            join_cover,
            max_cover_size,
        },
    })
}

/// Smallest subset of `candidates` whose arrow union equals `goal`.
/// Exponential in the candidate count, so callers pass the maximal
/// fractions only; bails out above 12 candidates.
fn minimal_cover(
    bisections: &[LocalBisection],
    candidates: &[Elem],
    goal: &LocalBisection,
) -> Option<Vec<Elem>> {
    if candidates.len() > 12 {
        return None;
    }
    fn search(
        bisections: &[LocalBisection],
        candidates: &[Elem],
        goal: &LocalBisection,
        size: usize,
        start: usize,
        acc: &mut Vec<Elem>,
    ) -> Option<Vec<Elem>> {
        if acc.len() == size {
            let union: Vec<usize> = acc
                .iter()
                .flat_map(|&f| bisections[f].0.iter().copied())
                .collect();
            if &LocalBisection::sorted(union) == goal {
                return Some(acc.clone());
            }
            return None;
        }
        for i in start..candidates.len() {
            acc.push(candidates[i]);
            if let Some(found) = search(bisections, candidates, goal, size, i + 1, acc) {
                return Some(found);
            }
            acc.pop();
        }
        None
    }
    (1..=candidates.len())
        .find_map(|size| search(bisections, candidates, goal, size, 0, &mut Vec::new()))
}

#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub source_filters: usize,
    pub target_filters: usize,
    pub matched: usize,
}

/// The two maps A ↦ A↑ = {t : ε(a) ≤ t for some a ∈ A} and
/// B ↦ ε⁻¹(B ∩ ε(S)) are mutually inverse bijections between the prime
/// filters of S and the prime filters of T meeting the image of ε.
pub fn check_filter_correspondence(
    ctx: &MonoidContext,
    emb: &EmbeddingResult,
) -> Result<CorrespondenceReport> {
    let t = &emb.target.monoid;
    let tfilters = enumerate_prime_filters(t)?;
    let sfilters = &emb.dual.category.filters;
    let mut up_of: Vec<usize> = Vec::with_capacity(sfilters.len());
    for a_filter in sfilters.iter() {
        let carrier: Vec<Elem> = (0..t.table.n())
            .filter(|&tx| {
                a_filter
                    .carrier
                    .iter()
                    .any(|&a| t.order.le(emb.map[a], tx))
            })
            .collect();
        let min = *carrier
            .iter()
            .find(|&&m| carrier.iter().all(|&x| t.order.le(m, x)))
            .ok_or_else(|| {
                Error::violation(
                    "filter-correspondence",
                    "the raised filter has no least element",
                    serde_json::json!({ "filter": ctx.table.label(a_filter.min) }),
                )
            })?;
        let raised = PrimeFilter { min, carrier };
        if !is_prime(t, &raised) || !is_ultrafilter(t, &raised) {
            return Err(Error::violation(
                "filter-correspondence",
                "a raised filter is not a prime filter of the target",
                serde_json::json!({ "filter": ctx.table.label(a_filter.min) }),
            ));
        }
        let idx = tfilters.iter().position(|f| f == &raised).ok_or_else(|| {
            Error::violation(
                "filter-correspondence",
                "a raised filter is missing from the target enumeration",
                serde_json::json!({ "filter": ctx.table.label(a_filter.min) }),
            )
        })?;
        up_of.push(idx);
    }
    // injectivity of raising
    for i in 0..up_of.len() {
        for j in (i + 1)..up_of.len() {
            if up_of[i] == up_of[j] {
                return Err(Error::violation(
                    "filter-correspondence",
                    "raising prime filters is not injective",
                    serde_json::Value::Null,
                ));
            }
        }
    }
    let mut matched = 0;
    for (bi, b_filter) in tfilters.iter().enumerate() {
        let meets_image = emb.map.iter().any(|&img| b_filter.contains(img));
        let raised_here = up_of.contains(&bi);
        if meets_image != raised_here {
            return Err(Error::violation(
                "filter-correspondence",
                "the filters meeting the image are not exactly the raised ones",
                serde_json::json!({ "filter": t.table.label(b_filter.min) }),
            ));
        }
        if !meets_image {
            continue;
        }
        matched += 1;
        // lower B and check the round trips
        let lowered: Vec<Elem> = (0..ctx.table.n())
            .filter(|&a| b_filter.contains(emb.map[a]))
            .collect();
        let position = sfilters
            .iter()
            .position(|f| f.carrier == lowered)
            .ok_or_else(|| {
                Error::violation(
                    "filter-correspondence",
                    "lowering a target filter does not give a prime filter of the source",
                    serde_json::json!({ "filter": t.table.label(b_filter.min) }),
                )
            })?;
        if up_of[position] != bi {
            return Err(Error::violation(
                "filter-correspondence",
                "raise and lower are not mutually inverse",
                serde_json::json!({ "filter": t.table.label(b_filter.min) }),
            ));
        }
    }
    // (A↑)↓ = A comes with the position check above; matched counts B's
    Ok(CorrespondenceReport {
        source_filters: sfilters.len(),
        target_filters: tfilters.len(),
        matched,
    })
}
