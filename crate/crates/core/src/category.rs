//! Finite categories as composition tables, plus the passage to the
//! monoid of local bisections.
//!
//! Arrows are identified with indices; objects are identified with
//! identity arrows. The partial composition `x·y` is defined exactly when
//! `d(x) = r(y)`, and validation enforces that the declared table has
//! precisely that domain, coherent endpoints, identity laws and
//! associativity.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::{check_boolean_restriction, MonoidContext, MonoidTable};

/// Raw, label-level form of a category file. `compose` lists only the
/// defined composites as triples `[x, y, x·y]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawCategory {
    pub arrows: Vec<String>,
    pub identities: Vec<String>,
    pub d: BTreeMap<String, String>,
    pub r: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryTable {
    arrows: Vec<String>,
    identities: Vec<usize>,
    is_identity: Vec<bool>,
    dmap: Vec<usize>,
    rmap: Vec<usize>,
    comp: Vec<Option<usize>>, // n*n, row-major: comp[x][y] = x·y when d(x) = r(y)
}

impl CategoryTable {
    pub fn from_raw(raw: &RawCategory) -> Result<Self> {
        let n = raw.arrows.len();
        if n == 0 {
            return Err(Error::BadShape("category needs at least one arrow".into()));
        }
        let mut index = BTreeMap::new();
        for (i, lab) in raw.arrows.iter().enumerate() {
            if index.insert(lab.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(lab.clone()));
            }
        }
        let look = |lab: &String| -> Result<usize> {
            index
                .get(lab)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(lab.clone()))
        };
        let mut is_identity = vec![false; n];
        let mut identities = Vec::new();
        for lab in &raw.identities {
            let e = look(lab)?;
            if !is_identity[e] {
                is_identity[e] = true;
                identities.push(e);
            }
        }
        identities.sort_unstable();
        let mut dmap = vec![usize::MAX; n];
        let mut rmap = vec![usize::MAX; n];
        for (which, source, out) in [("d", &raw.d, &mut dmap), ("r", &raw.r, &mut rmap)] {
            for (x, e) in source.iter() {
                out[look(x)?] = look(e)?;
            }
            for (x, &v) in out.iter().enumerate() {
                if v == usize::MAX {
                    return Err(Error::BadShape(format!(
                        "{which} is missing arrow `{}`",
                        raw.arrows[x]
                    )));
                }
                if !is_identity[v] {
                    return Err(Error::BadIdentity(raw.arrows[v].clone()));
                }
            }
        }
        let mut comp = vec![None; n * n];
        for [x, y, xy] in &raw.compose {
            let (x, y, xy) = (look(x)?, look(y)?, look(xy)?);
            comp[x * n + y] = Some(xy);
        }
        let table = CategoryTable {
            arrows: raw.arrows.clone(),
            identities,
            is_identity,
            dmap,
            rmap,
            comp,
        };
        table.validate()?;
        Ok(table)
    }

    /// Convenience constructor for fixtures and tests.
    pub fn from_tables(
        arrows: &[&str],
        identities: &[&str],
        d: &[(&str, &str)],
        r: &[(&str, &str)],
        compose: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let raw = RawCategory {
            arrows: arrows.iter().map(|s| s.to_string()).collect(),
            identities: identities.iter().map(|s| s.to_string()).collect(),
            d: d.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            r: r.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            compose: compose
                .iter()
                .map(|(x, y, z)| [x.to_string(), y.to_string(), z.to_string()])
                .collect(),
        };
        Self::from_raw(&raw)
    }

    /// Construct from index-level parts and validate.
    pub fn from_parts(
        arrows: Vec<String>,
        identities: Vec<usize>,
        dmap: Vec<usize>,
        rmap: Vec<usize>,
        comp: Vec<Option<usize>>,
    ) -> Result<Self> {
        let n = arrows.len();
        if dmap.len() != n || rmap.len() != n || comp.len() != n * n {
            return Err(Error::BadShape("category tables have wrong shape".into()));
        }
        let mut is_identity = vec![false; n];
        for &e in &identities {
            if e >= n {
                return Err(Error::BadShape("identity index out of range".into()));
            }
            is_identity[e] = true;
        }
        let mut identities = identities;
        identities.sort_unstable();
        identities.dedup();
        let table = CategoryTable {
            arrows,
            identities,
            is_identity,
            dmap,
            rmap,
            comp,
        };
        table.validate()?;
        Ok(table)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n();
        for &e in &self.identities {
            if self.dmap[e] != e || self.rmap[e] != e {
                return Err(Error::BadIdentity(self.arrows[e].clone()));
            }
        }
        // composition defined exactly on {(x, y) : d(x) = r(y)}
        for x in 0..n {
            for y in 0..n {
                let should = self.dmap[x] == self.rmap[y];
                match self.comp[x * n + y] {
                    Some(_) if !should => {
                        return Err(Error::ExtraComposite {
                            x: self.arrows[x].clone(),
                            y: self.arrows[y].clone(),
                        })
                    }
                    None if should => {
                        return Err(Error::MissingComposite {
                            x: self.arrows[x].clone(),
                            y: self.arrows[y].clone(),
                        })
                    }
                    _ => {}
                }
            }
        }
        // composite endpoints
        for x in 0..n {
            for y in 0..n {
                if let Some(xy) = self.comp[x * n + y] {
                    if self.dmap[xy] != self.dmap[y] || self.rmap[xy] != self.rmap[x] {
                        return Err(Error::BadComposite {
                            x: self.arrows[x].clone(),
                            y: self.arrows[y].clone(),
                        });
                    }
                }
            }
        }
        // identity laws
        for x in 0..n {
            if self.comp[x * n + self.dmap[x]] != Some(x)
                || self.comp[self.rmap[x] * n + x] != Some(x)
            {
                return Err(Error::BadIdentity(self.arrows[x].clone()));
            }
        }
        // associativity over all composable triples
        for x in 0..n {
            for y in 0..n {
                if self.dmap[x] != self.rmap[y] {
                    continue;
                }
                let xy = self.comp[x * n + y].expect("domain checked");
                for z in 0..n {
                    if self.dmap[y] != self.rmap[z] {
                        continue;
                    }
                    let yz = self.comp[y * n + z].expect("domain checked");
                    if self.comp[xy * n + z] != self.comp[x * n + yz] {
                        return Err(Error::NotAssociative {
                            a: self.arrows[x].clone(),
                            b: self.arrows[y].clone(),
                            c: self.arrows[z].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_raw(&self) -> RawCategory {
        let n = self.n();
        let mut compose = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if let Some(xy) = self.comp[x * n + y] {
                    compose.push([
                        self.arrows[x].clone(),
                        self.arrows[y].clone(),
                        self.arrows[xy].clone(),
                    ]);
                }
            }
        }
        RawCategory {
            arrows: self.arrows.clone(),
            identities: self.identities.iter().map(|&e| self.arrows[e].clone()).collect(),
            d: (0..n)
                .map(|x| (self.arrows[x].clone(), self.arrows[self.dmap[x]].clone()))
                .collect(),
            r: (0..n)
                .map(|x| (self.arrows[x].clone(), self.arrows[self.rmap[x]].clone()))
                .collect(),
            compose,
        }
    }

    pub fn n(&self) -> usize {
        self.arrows.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.arrows[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|l| l == label)
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn is_identity(&self, x: usize) -> bool {
        self.is_identity[x]
    }

    #[inline]
    pub fn d(&self, x: usize) -> usize {
        self.dmap[x]
    }

    #[inline]
    pub fn r(&self, x: usize) -> usize {
        self.rmap[x]
    }

    /// `x·y` when `d(x) = r(y)`.
    #[inline]
    pub fn compose(&self, x: usize, y: usize) -> Option<usize> {
        self.comp[x * self.arrows.len() + y]
    }

    /// Two-sided cancellation, checked exhaustively.
    pub fn check_cancellative(&self) -> CancellationReport {
        let n = self.n();
        for a in 0..n {
            for b in 0..n {
                if self.dmap[a] != self.rmap[b] {
                    continue;
                }
                for c in (b + 1)..n {
                    if self.dmap[a] != self.rmap[c] {
                        continue;
                    }
                    if self.compose(a, b) == self.compose(a, c) {
                        return CancellationReport {
                            witness: Some(CancellationWitness {
                                side: "left",
                                a,
                                b,
                                c,
                            }),
                        };
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.dmap[b] != self.rmap[a] {
                    continue;
                }
                for c in (b + 1)..n {
                    if self.dmap[c] != self.rmap[a] {
                        continue;
                    }
                    if self.compose(b, a) == self.compose(c, a) {
                        return CancellationReport {
                            witness: Some(CancellationWitness {
                                side: "right",
                                a,
                                b,
                                c,
                            }),
                        };
                    }
                }
            }
        }
        CancellationReport { witness: None }
    }

    /// Look for an inverse of every arrow; returns the inverse table or the
    /// first arrow lacking one.
    pub fn check_groupoid(&self) -> GroupoidReport {
        let n = self.n();
        let mut inverses = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n).find(|&h| {
                self.dmap[h] == self.rmap[g]
                    && self.rmap[h] == self.dmap[g]
                    && self.compose(h, g) == Some(self.dmap[g])
                    && self.compose(g, h) == Some(self.rmap[g])
            });
            match inv {
                Some(h) => inverses.push(h),
                None => {
                    return GroupoidReport {
                        inverses: None,
                        witness: Some(g),
                    }
                }
            }
        }
        GroupoidReport {
            inverses: Some(inverses),
            witness: None,
        }
    }

    /// Right reversibility: every two arrows with a common d have a common
    /// left multiple c·a = c'·b.
    pub fn check_right_reversible(&self) -> ReversibilityReport {
        let n = self.n();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.dmap[a] != self.dmap[b] {
                    continue;
                }
                let mut found = false;
                'search: for c in 0..n {
                    if self.dmap[c] != self.rmap[a] {
                        continue;
                    }
                    let ca = self.compose(c, a).expect("composable");
                    for c2 in 0..n {
                        if self.dmap[c2] != self.rmap[b] {
                            continue;
                        }
                        if self.compose(c2, b) == Some(ca) {
                            found = true;
                            break 'search;
                        }
                    }
                }
                if !found {
                    return ReversibilityReport {
                        witness: Some((a, b)),
                    };
                }
            }
        }
        ReversibilityReport { witness: None }
    }

    /// Enumerate all local bisections: arrow subsets on which both d and r
    /// are injective. Walks the d-fibers as partial matchings rather than
    /// filtering the powerset. Output is sorted by (cardinality, indices);
    /// exceeding `cap` aborts with the count reached.
    pub fn enumerate_local_bisections(&self, cap: usize) -> Result<Vec<LocalBisection>> {
        let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.n() {
            fibers.entry(self.dmap[x]).or_default().push(x);
        }
        let fibers: Vec<Vec<usize>> = fibers.into_values().collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let mut used_r = vec![false; self.n()];
        self.walk_fibers(&fibers, 0, &mut chosen, &mut used_r, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn walk_fibers(
        &self,
        fibers: &[Vec<usize>],
        depth: usize,
        chosen: &mut Vec<usize>,
        used_r: &mut Vec<bool>,
        out: &mut Vec<LocalBisection>,
        cap: usize,
    ) -> Result<()> {
        if depth == fibers.len() {
            if out.len() >= cap {
                return Err(Error::CapExceeded {
                    reached: out.len() + 1,
                    cap,
                });
            }
            out.push(LocalBisection::sorted(chosen.clone()));
            return Ok(());
        }
        // skip this fiber entirely
        self.walk_fibers(fibers, depth + 1, chosen, used_r, out, cap)?;
        for &x in &fibers[depth] {
            let rx = self.rmap[x];
            if used_r[rx] {
                continue;
            }
            used_r[rx] = true;
            chosen.push(x);
            self.walk_fibers(fibers, depth + 1, chosen, used_r, out, cap)?;
            chosen.pop();
            used_r[rx] = false;
        }
        Ok(())
    }

    /// Product of two arrow sets: all defined composites. The product of
    /// two local bisections is again one.
    pub fn set_product(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for &x in a {
            for &y in b {
                if let Some(xy) = self.compose(x, y) {
                    out.push(xy);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_local_bisection(&self, set: &[usize]) -> bool {
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[i + 1..] {
                if self.dmap[x] == self.dmap[y] || self.rmap[x] == self.rmap[y] {
                    return false;
                }
            }
        }
        true
    }

    /// Build the monoid of all local bisections: multiplication is set
    /// product, star takes d-images, plus takes r-images, zero is the
    /// empty set and one is the full identity set.
    ///
    /// Postconditions are verified, not assumed: the result is a Boolean
    /// restriction monoid, it is ample whenever the category cancels, and
    /// it classifies inverse whenever the category is a groupoid.
    pub fn kb_monoid(&self, cap: usize) -> Result<KbMonoid> {
        let bisections = self.enumerate_local_bisections(cap)?;
        let index: BTreeMap<&LocalBisection, usize> =
            bisections.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let k = bisections.len();
        let get = |set: Vec<usize>| -> usize {
            let b = LocalBisection(set);
            *index
                .get(&b)
                .expect("products of local bisections are local bisections")
        };
        let mut mult = Vec::with_capacity(k * k);
        for a in &bisections {
            for b in &bisections {
                let prod = self.set_product(&a.0, &b.0);
                if !self.is_local_bisection(&prod) {
                    return Err(Error::violation(
                        "bisection-product-closure",
                        "product of two local bisections is not a local bisection",
                        serde_json::json!({
                            "left": self.labels_of(&a.0),
                            "right": self.labels_of(&b.0),
                        }),
                    ));
                }
                mult.push(get(prod));
            }
        }
        let star: Vec<usize> = bisections
            .iter()
            .map(|a| {
                let mut s: Vec<usize> = a.0.iter().map(|&x| self.dmap[x]).collect();
                s.sort_unstable();
                s.dedup();
                get(s)
            })
            .collect();
        let plus: Vec<usize> = bisections
            .iter()
            .map(|a| {
                let mut s: Vec<usize> = a.0.iter().map(|&x| self.rmap[x]).collect();
                s.sort_unstable();
                s.dedup();
                get(s)
            })
            .collect();
        let zero = get(Vec::new());
        let one = get(self.identities.clone());
        let labels: Vec<String> = bisections.iter().map(|b| self.bisection_label(b)).collect();
        let table = MonoidTable::from_parts(labels, mult, star, plus, zero, one)
            .map_err(|e| Error::violation("kb-monoid-laws", e.to_string(), serde_json::Value::Null))?;
        let ctx = MonoidContext::new(&table).map_err(|e| {
            Error::violation("kb-natural-order", e.to_string(), serde_json::Value::Null)
        })?;
        let boolean = check_boolean_restriction(&ctx);
        if !boolean.ok() {
            return Err(Error::violation(
                "kb-boolean-restriction",
                format!("bisection monoid fails the Boolean restriction check: {:?}", boolean.failure),
                serde_json::Value::Null,
            ));
        }
        let axioms = ctx.table.check_axioms();
        if !axioms.restriction() {
            return Err(Error::violation(
                "kb-restriction-axioms",
                format!("bisection monoid fails {:?}", axioms.failed()),
                serde_json::Value::Null,
            ));
        }
        if self.check_cancellative().ok() && !axioms.all() {
            return Err(Error::violation(
                "kb-ample-over-cancellative",
                "category cancels but its bisection monoid fails A7",
                serde_json::Value::Null,
            ));
        }
        if self.check_groupoid().ok() && !ctx.table.classify().inverse {
            return Err(Error::violation(
                "kb-inverse-over-groupoid",
                "groupoid whose bisection monoid does not classify inverse",
                serde_json::Value::Null,
            ));
        }
        Ok(KbMonoid {
            monoid: ctx,
            bisections,
        })
    }

    pub fn labels_of(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&x| self.arrows[x].clone()).collect()
    }

    fn bisection_label(&self, b: &LocalBisection) -> String {
        let inner: Vec<&str> = b.0.iter().map(|&x| self.label(x)).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Restrict to a composition-closed arrow subset. The subset must
    /// contain d(x), r(x) for each of its members and all composites.
    pub fn subcategory(&self, arrows: &[usize]) -> Result<(CategoryTable, Vec<usize>)> {
        let mut sub: Vec<usize> = arrows.to_vec();
        sub.sort_unstable();
        sub.dedup();
        let position: BTreeMap<usize, usize> =
            sub.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        for &x in &sub {
            if !position.contains_key(&self.dmap[x]) || !position.contains_key(&self.rmap[x]) {
                return Err(Error::Invalid(format!(
                    "subcategory misses an endpoint identity of `{}`",
                    self.arrows[x]
                )));
            }
        }
        let m = sub.len();
        let mut comp = vec![None; m * m];
        for (i, &x) in sub.iter().enumerate() {
            for (j, &y) in sub.iter().enumerate() {
                if let Some(xy) = self.compose(x, y) {
                    match position.get(&xy) {
                        Some(&k) => comp[i * m + j] = Some(k),
                        None => {
                            return Err(Error::Invalid(format!(
                                "subcategory is not closed: {}·{} escapes",
                                self.arrows[x], self.arrows[y]
                            )))
                        }
                    }
                }
            }
        }
        let table = CategoryTable::from_parts(
            sub.iter().map(|&x| self.arrows[x].clone()).collect(),
            sub.iter()
                .enumerate()
                .filter(|&(_, &x)| self.is_identity[x])
                .map(|(i, _)| i)
                .collect(),
            sub.iter().map(|&x| position[&self.dmap[x]]).collect(),
            sub.iter().map(|&x| position[&self.rmap[x]]).collect(),
            comp,
        )?;
        Ok((table, sub))
    }
}

/// An arrow subset injective under both d and r, kept sorted. Bisections
/// order by cardinality first, then lexicographically by indices; this is
/// the deterministic element order of the bisection monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalBisection(pub Vec<usize>);

impl LocalBisection {
    pub fn sorted(mut set: Vec<usize>) -> Self {
        set.sort_unstable();
        set.dedup();
        LocalBisection(set)
    }
}

impl Ord for LocalBisection {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LocalBisection {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CancellationWitness {
    pub side: &'static str,
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

#[derive(Debug, Clone)]
pub struct CancellationReport {
    pub witness: Option<CancellationWitness>,
}

impl CancellationReport {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct GroupoidReport {
    pub inverses: Option<Vec<usize>>,
    pub witness: Option<usize>,
}

impl GroupoidReport {
    pub fn ok(&self) -> bool {
        self.inverses.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct ReversibilityReport {
    pub witness: Option<(usize, usize)>,
}

impl ReversibilityReport {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// The monoid of all local bisections of a category, with the dictionary
/// back to arrow sets. Element i of the monoid is `bisections[i]`.
#[derive(Debug, Clone)]
pub struct KbMonoid {
    pub monoid: MonoidContext,
    pub bisections: Vec<LocalBisection>,
}

impl KbMonoid {
    pub fn index_of(&self, b: &LocalBisection) -> Option<usize> {
        self.bisections.binary_search(b).ok()
    }

    pub fn len(&self) -> usize {
        self.bisections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bisections.is_empty()
    }
}

/// Backtracking search for an isomorphism of categories extending the
/// given pins (pairs of arrow indices). Preserves identities, d, r and
/// composition. Meant for small tables.
pub fn find_category_isomorphism(
    a: &CategoryTable,
    b: &CategoryTable,
    pins: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.identities().len() != b.identities().len() {
        return None;
    }
    let n = a.n();
    let profile = |c: &CategoryTable, x: usize| -> (bool, bool, usize, usize) {
        let out = (0..c.n()).filter(|&y| c.d(y) == c.d(x)).count();
        let inc = (0..c.n()).filter(|&y| c.r(y) == c.r(x)).count();
        (c.is_identity(x), c.d(x) == c.r(x), out, inc)
    };
    let pa: Vec<_> = (0..n).map(|x| profile(a, x)).collect();
    let pb: Vec<_> = (0..n).map(|x| profile(b, x)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(x, y) in pins {
        if pa[x] != pb[y] || used[y] || (map[x] != usize::MAX && map[x] != y) {
            return None;
        }
        map[x] = y;
        used[y] = true;
    }

    fn consistent(a: &CategoryTable, b: &CategoryTable, map: &[usize], x: usize) -> bool {
        let y = map[x];
        if map[a.d(x)] != usize::MAX && map[a.d(x)] != b.d(y) {
            return false;
        }
        if map[a.r(x)] != usize::MAX && map[a.r(x)] != b.r(y) {
            return false;
        }
        for z in 0..a.n() {
            if map[z] == usize::MAX {
                continue;
            }
            for (p, q) in [(x, z), (z, x)] {
                match (a.compose(p, q), b.compose(map[p], map[q])) {
                    (None, None) => {}
                    (Some(pq), Some(img)) => {
                        if map[pq] != usize::MAX && map[pq] != img {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }

    fn rec(
        a: &CategoryTable,
        b: &CategoryTable,
        pa: &[(bool, bool, usize, usize)],
        pb: &[(bool, bool, usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let x = match (0..a.n()).find(|&x| map[x] == usize::MAX) {
            None => return true,
            Some(x) => x,
        };
        for y in 0..b.n() {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map, x) && rec(a, b, pa, pb, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    for &(x, _) in pins {
        if !consistent(a, b, &map, x) {
            return None;
        }
    }
    if rec(a, b, &pa, &pb, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn arrow_validates() {
        let c = fixtures::arrow();
        assert_eq!(c.n(), 3);
        assert_eq!(c.identities().len(), 2);
    }

    #[test]
    fn pair2_validates() {
        let c = fixtures::pair2();
        assert_eq!(c.n(), 4);
        let g12 = c.index_of("g12").unwrap();
        let g21 = c.index_of("g21").unwrap();
        assert_eq!(c.compose(g12, g21), c.index_of("id1"));
    }

    #[test]
    fn missing_composite_detected() {
        let mut raw = fixtures::pair2().to_raw();
        raw.compose.retain(|[x, y, _]| !(x == "g12" && y == "g21"));
        assert!(matches!(
            CategoryTable::from_raw(&raw),
            Err(Error::MissingComposite { .. })
        ));
    }

    #[test]
    fn extra_composite_detected() {
        let mut raw = fixtures::arrow().to_raw();
        raw.compose.push(["a".into(), "a".into(), "a".into()]);
        assert!(matches!(
            CategoryTable::from_raw(&raw),
            Err(Error::ExtraComposite { .. })
        ));
    }

    #[test]
    fn cancellativity_checks() {
        assert!(fixtures::arrow().check_cancellative().ok());
        assert!(fixtures::pair2().check_cancellative().ok());
        let report = fixtures::flat2().check_cancellative();
        let w = report.witness.expect("flat2 does not cancel");
        // z·z = z·1 with z != 1
        assert_eq!(w.side, "left");
    }

    #[test]
    fn groupoid_checks() {
        assert!(fixtures::pair2().check_groupoid().ok());
        assert!(fixtures::discrete(3).check_groupoid().ok());
        let c = fixtures::arrow();
        let report = c.check_groupoid();
        assert_eq!(report.witness, c.index_of("a"));
    }

    #[test]
    fn right_reversibility_checks() {
        assert!(fixtures::arrow().check_right_reversible().ok());
        assert!(fixtures::pair2().check_right_reversible().ok());
        let c = fixtures::fork();
        let report = c.check_right_reversible();
        let (a, b) = report.witness.expect("fork is not right reversible");
        let mut labels = [c.label(a), c.label(b)];
        labels.sort();
        assert_eq!(labels, ["x", "y"]);
    }

    #[test]
    fn bisection_counts() {
        assert_eq!(fixtures::arrow().enumerate_local_bisections(100).unwrap().len(), 5);
        assert_eq!(fixtures::pair2().enumerate_local_bisections(100).unwrap().len(), 7);
        for n in 1..=4 {
            assert_eq!(
                fixtures::discrete(n).enumerate_local_bisections(100).unwrap().len(),
                1 << n
            );
        }
    }

    #[test]
    fn bisection_cap_is_enforced() {
        match fixtures::pair2().enumerate_local_bisections(3) {
            Err(Error::CapExceeded { reached, cap }) => {
                assert_eq!(cap, 3);
                assert!(reached > 3);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn kb_of_arrow_is_the_s5_fixture() {
        let kb = fixtures::arrow().kb_monoid(100).unwrap();
        assert_eq!(kb.monoid.table, fixtures::s5());
    }

    #[test]
    fn kb_of_discrete2_is_b4_up_to_iso() {
        let kb = fixtures::discrete(2).kb_monoid(100).unwrap();
        assert!(crate::monoid::find_monoid_isomorphism(&kb.monoid.table, &fixtures::b4()).is_some());
    }

    #[test]
    fn kb_of_pair2_is_i2_up_to_iso() {
        let kb = fixtures::pair2().kb_monoid(100).unwrap();
        assert_eq!(kb.len(), 7);
        assert!(crate::monoid::find_monoid_isomorphism(&kb.monoid.table, &fixtures::i2()).is_some());
    }

    #[test]
    fn kb_order_is_inclusion_and_joins_are_unions() {
        let kb = fixtures::pair2().kb_monoid(100).unwrap();
        let ctx = &kb.monoid;
        for (i, a) in kb.bisections.iter().enumerate() {
            for (j, b) in kb.bisections.iter().enumerate() {
                let subset = a.0.iter().all(|x| b.0.contains(x));
                assert_eq!(ctx.order.le(i, j), subset);
                if ctx.compatible(i, j) {
                    if let Some(join) = ctx.join(i, j) {
                        let mut union = a.0.clone();
                        union.extend(&b.0);
                        let union = LocalBisection::sorted(union);
                        assert_eq!(kb.bisections[join], union);
                    }
                }
            }
        }
    }

    #[test]
    fn category_isomorphism_search_works() {
        let a = fixtures::pair2();
        let iso = find_category_isomorphism(&a, &a, &[]).unwrap();
        for x in 0..a.n() {
            assert_eq!(iso[a.d(x)], a.d(iso[x]));
        }
        assert!(find_category_isomorphism(&fixtures::arrow(), &fixtures::discrete(3), &[]).is_none());
    }

    #[test]
    fn subcategory_of_pair2() {
        let g = fixtures::pair2();
        let ids: Vec<usize> = g.identities().to_vec();
        let (sub, _) = g.subcategory(&ids).unwrap();
        assert_eq!(sub.n(), 2);
        // g12 alone is not closed towards its endpoints' composites
        let g12 = g.index_of("g12").unwrap();
        assert!(g.subcategory(&[g12]).is_err());
    }
}
