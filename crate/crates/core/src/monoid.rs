//! Finite monoids with star/plus structure, given by explicit tables.
//!
//! A [`MonoidTable`] stores the full multiplication table, the two unary
//! operations `a ↦ a*` and `a ↦ a+`, and distinguished zero and one.
//! Construction validates well-formedness only (associativity, identity,
//! zero, closed tables); the algebraic structure checks live in
//! [`MonoidTable::check_axioms`], [`MonoidTable::natural_order`],
//! [`check_boolean_restriction`] and [`MonoidTable::classify`].
//!
//! Axioms, in the order reported:
//!
//! - A1: `(s*)* = s*`, `(s+)+ = s+`, `(s*)+ = s*`, `(s+)* = s+`
//! - A2: `(s*t*)* = s*t*`, `(s+t+)+ = s+t+`
//! - A3: `s*t* = t*s*`, `s+t+ = t+s+`
//! - A4: `s s* = s`, `s+ s = s`
//! - A5: `(st)* = (s*t)*`, `(st)+ = (st+)+`
//! - A6: `t*s = s(ts)*`, `st+ = (st+)+ s`
//! - A7: `ac = bc ⇒ ac+ = bc+`, `ca = cb ⇒ c*a = c*b`
//!
//! A restriction monoid satisfies A1–A6, an ample monoid A1–A7.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element inside a [`MonoidTable`].
pub type Elem = usize;

/// Raw, label-level form of a monoid file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawMonoid {
    pub elements: Vec<String>,
    /// Row-major: `mult[a][b]` is the label of `a·b`.
    pub mult: Vec<Vec<String>>,
    pub star: Vec<String>,
    pub plus: Vec<String>,
    pub zero: String,
    pub one: String,
}

/// A validated finite monoid with star/plus tables and distinguished 0, 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidTable {
    elements: Vec<String>,
    mult: Vec<Elem>, // n*n, row-major
    star: Vec<Elem>,
    plus: Vec<Elem>,
    zero: Elem,
    one: Elem,
}

impl MonoidTable {
    /// Validate a raw description. Checks label uniqueness, table shapes,
    /// associativity (exhaustively over all triples), the identity law for
    /// `one` and absorption for `zero`.
    pub fn from_raw(raw: &RawMonoid) -> Result<Self> {
        let n = raw.elements.len();
        if n == 0 {
            return Err(Error::BadShape("monoid needs at least one element".into()));
        }
        let mut index = BTreeMap::new();
        for (i, lab) in raw.elements.iter().enumerate() {
            if index.insert(lab.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(lab.clone()));
            }
        }
        let look = |lab: &String| -> Result<Elem> {
            index
                .get(lab)
                .copied()
                .ok_or_else(|| Error::UnknownLabel(lab.clone()))
        };
        if raw.mult.len() != n {
            return Err(Error::BadShape(format!(
                "mult has {} rows, expected {n}",
                raw.mult.len()
            )));
        }
        let mut mult = Vec::with_capacity(n * n);
        for row in &raw.mult {
            if row.len() != n {
                return Err(Error::BadShape(format!(
                    "mult row has {} entries, expected {n}",
                    row.len()
                )));
            }
            for lab in row {
                mult.push(look(lab)?);
            }
        }
        if raw.star.len() != n || raw.plus.len() != n {
            return Err(Error::BadShape("star/plus must list one value per element".into()));
        }
        let star = raw.star.iter().map(&look).collect::<Result<Vec<_>>>()?;
        let plus = raw.plus.iter().map(&look).collect::<Result<Vec<_>>>()?;
        let zero = look(&raw.zero)?;
        let one = look(&raw.one)?;

        let m = MonoidTable {
            elements: raw.elements.clone(),
            mult,
            star,
            plus,
            zero,
            one,
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if m.mul(m.mul(a, b), c) != m.mul(a, m.mul(b, c)) {
                        return Err(Error::NotAssociative {
                            a: m.label(a).into(),
                            b: m.label(b).into(),
                            c: m.label(c).into(),
                        });
                    }
                }
            }
        }
        for a in 0..n {
            if m.mul(one, a) != a || m.mul(a, one) != a {
                return Err(Error::BadIdentity(m.label(one).into()));
            }
            if m.mul(zero, a) != zero || m.mul(a, zero) != zero {
                return Err(Error::BadZero(m.label(zero).into()));
            }
        }
        Ok(m)
    }

    /// Convenience constructor used by fixtures and tests.
    pub fn from_tables(
        elements: &[&str],
        mult: &[&[&str]],
        star: &[&str],
        plus: &[&str],
        zero: &str,
        one: &str,
    ) -> Result<Self> {
        let raw = RawMonoid {
            elements: elements.iter().map(|s| s.to_string()).collect(),
            mult: mult
                .iter()
                .map(|row| row.iter().map(|s| s.to_string()).collect())
                .collect(),
            star: star.iter().map(|s| s.to_string()).collect(),
            plus: plus.iter().map(|s| s.to_string()).collect(),
            zero: zero.to_string(),
            one: one.to_string(),
        };
        Self::from_raw(&raw)
    }

    /// Construct directly from index tables. Runs the same validation as
    /// [`MonoidTable::from_raw`].
    pub fn from_parts(
        elements: Vec<String>,
        mult: Vec<Elem>,
        star: Vec<Elem>,
        plus: Vec<Elem>,
        zero: Elem,
        one: Elem,
    ) -> Result<Self> {
        let n = elements.len();
        if mult.len() != n * n || star.len() != n || plus.len() != n {
            return Err(Error::BadShape("table sizes do not match element count".into()));
        }
        if mult.iter().chain(&star).chain(&plus).any(|&x| x >= n) || zero >= n || one >= n {
            return Err(Error::BadShape("table entry out of range".into()));
        }
        let raw = RawMonoid {
            mult: (0..n)
                .map(|a| (0..n).map(|b| elements[mult[a * n + b]].clone()).collect())
                .collect(),
            star: star.iter().map(|&x| elements[x].clone()).collect(),
            plus: plus.iter().map(|&x| elements[x].clone()).collect(),
            zero: elements[zero].clone(),
            one: elements[one].clone(),
            elements,
        };
        Self::from_raw(&raw)
    }

    pub fn to_raw(&self) -> RawMonoid {
        let n = self.n();
        RawMonoid {
            elements: self.elements.clone(),
            mult: (0..n)
                .map(|a| (0..n).map(|b| self.label(self.mul(a, b)).to_string()).collect())
                .collect(),
            star: (0..n).map(|a| self.label(self.star(a)).to_string()).collect(),
            plus: (0..n).map(|a| self.label(self.plus(a)).to_string()).collect(),
            zero: self.label(self.zero).to_string(),
            one: self.label(self.one).to_string(),
        }
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.elements.len() + b]
    }

    #[inline]
    pub fn star(&self, a: Elem) -> Elem {
        self.star[a]
    }

    #[inline]
    pub fn plus(&self, a: Elem) -> Elem {
        self.plus[a]
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.elements[a]
    }

    pub fn labels(&self, xs: &[Elem]) -> Vec<String> {
        xs.iter().map(|&x| self.label(x).to_string()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.elements.iter().position(|l| l == label)
    }

    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        (0..self.n()).filter(|&a| self.is_idempotent(a)).collect()
    }

    /// Projections: the image of star together with the image of plus.
    /// Never assumed equal to the idempotents; ampleness makes them agree.
    pub fn projections(&self) -> Vec<Elem> {
        let mut ps: Vec<Elem> = self.star.iter().chain(&self.plus).copied().collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// a ≤ b in the natural partial order: a = b·a*.
    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.mul(b, self.star(a)) == a
    }

    /// Compatibility: ab* = ba* and a+b = b+a.
    pub fn compatible(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, self.star(b)) == self.mul(b, self.star(a))
            && self.mul(self.plus(a), b) == self.mul(self.plus(b), a)
    }

    /// Evaluate axioms A1–A7 exhaustively. Total: never fails, each axiom
    /// gets a pass flag and, on failure, the first witness tuple.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.n();
        let mut checks: Vec<AxiomCheck> = (0..7).map(|_| AxiomCheck::pass()).collect();

        'a1: for s in 0..n {
            let (st, pl) = (self.star(s), self.plus(s));
            if self.star(st) != st
                || self.plus(pl) != pl
                || self.plus(st) != st
                || self.star(pl) != pl
            {
                checks[0] = AxiomCheck::fail(vec![s]);
                break 'a1;
            }
        }
        'a2: for s in 0..n {
            for t in 0..n {
                let p = self.mul(self.star(s), self.star(t));
                let q = self.mul(self.plus(s), self.plus(t));
                if self.star(p) != p || self.plus(q) != q {
                    checks[1] = AxiomCheck::fail(vec![s, t]);
                    break 'a2;
                }
            }
        }
        'a3: for s in 0..n {
            for t in 0..n {
                if self.mul(self.star(s), self.star(t)) != self.mul(self.star(t), self.star(s))
                    || self.mul(self.plus(s), self.plus(t))
                        != self.mul(self.plus(t), self.plus(s))
                {
                    checks[2] = AxiomCheck::fail(vec![s, t]);
                    break 'a3;
                }
            }
        }
        'a4: for s in 0..n {
            if self.mul(s, self.star(s)) != s || self.mul(self.plus(s), s) != s {
                checks[3] = AxiomCheck::fail(vec![s]);
                break 'a4;
            }
        }
        'a5: for s in 0..n {
            for t in 0..n {
                if self.star(self.mul(s, t)) != self.star(self.mul(self.star(s), t))
                    || self.plus(self.mul(s, t)) != self.plus(self.mul(s, self.plus(t)))
                {
                    checks[4] = AxiomCheck::fail(vec![s, t]);
                    break 'a5;
                }
            }
        }
        'a6: for s in 0..n {
            for t in 0..n {
                let left = self.mul(self.star(t), s);
                let right = self.mul(s, self.star(self.mul(t, s)));
                let stp = self.mul(s, self.plus(t));
                if left != right || stp != self.mul(self.plus(stp), s) {
                    checks[5] = AxiomCheck::fail(vec![s, t]);
                    break 'a6;
                }
            }
        }
        'a7: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(a, c) == self.mul(b, c)
                        && self.mul(a, self.plus(c)) != self.mul(b, self.plus(c))
                    {
                        checks[6] = AxiomCheck::fail(vec![a, b, c]);
                        break 'a7;
                    }
                    if self.mul(c, a) == self.mul(c, b)
                        && self.mul(self.star(c), a) != self.mul(self.star(c), b)
                    {
                        checks[6] = AxiomCheck::fail(vec![a, b, c]);
                        break 'a7;
                    }
                }
            }
        }
        AxiomReport { checks }
    }

    /// Compute the natural partial order a ≤ b iff a = b·a*, verifying that
    /// it actually is a partial order (it need not be when the table does
    /// not describe a restriction monoid).
    pub fn natural_order(&self) -> Result<OrderRelation> {
        let n = self.n();
        let mut le = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                le[a * n + b] = self.leq(a, b);
            }
        }
        let rel = OrderRelation { n, le };
        for a in 0..n {
            if !rel.le(a, a) {
                return Err(Error::NotAPartialOrder {
                    law: "reflexivity",
                    a: self.label(a).into(),
                    b: self.label(a).into(),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && rel.le(a, b) && rel.le(b, a) {
                    return Err(Error::NotAPartialOrder {
                        law: "antisymmetry",
                        a: self.label(a).into(),
                        b: self.label(b).into(),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !rel.le(a, b) {
                    continue;
                }
                for c in 0..n {
                    if rel.le(b, c) && !rel.le(a, c) {
                        return Err(Error::NotAPartialOrder {
                            law: "transitivity",
                            a: self.label(a).into(),
                            b: self.label(c).into(),
                        });
                    }
                }
            }
        }
        Ok(rel)
    }

    /// Classify the table. All flags are computed exhaustively; the inverse
    /// flag uses existence of a generalized inverse plus commuting
    /// idempotents, which needs only the multiplication table.
    pub fn classify(&self) -> Classification {
        let axioms = self.check_axioms();
        let restriction = axioms.restriction();
        let ample = axioms.all();
        let n = self.n();
        let mut inverse = true;
        'outer: for a in 0..n {
            let mut found = false;
            for b in 0..n {
                if self.mul(self.mul(a, b), a) == a && self.mul(self.mul(b, a), b) == b {
                    found = true;
                    break;
                }
            }
            if !found {
                inverse = false;
                break 'outer;
            }
        }
        if inverse {
            let es = self.idempotents();
            'comm: for &e in &es {
                for &f in &es {
                    if self.mul(e, f) != self.mul(f, e) {
                        inverse = false;
                        break 'comm;
                    }
                }
            }
        }
        let boolean = restriction
            && MonoidContext::new(self)
                .map(|ctx| check_boolean_restriction(&ctx).ok())
                .unwrap_or(false);
        Classification {
            restriction,
            ample,
            inverse,
            boolean,
        }
    }
}

/// Per-axiom result; a failed axiom always carries a witness tuple that
/// re-evaluates to a violation.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub passed: bool,
    pub witness: Option<Vec<Elem>>,
}

impl AxiomCheck {
    fn pass() -> Self {
        AxiomCheck {
            passed: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<Elem>) -> Self {
        AxiomCheck {
            passed: false,
            witness: Some(witness),
        }
    }
}

pub const AXIOM_NAMES: [&str; 7] = ["A1", "A2", "A3", "A4", "A5", "A6", "A7"];

#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    /// A1–A7 all pass.
    pub fn all(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// A1–A6 pass (the restriction monoid axioms).
    pub fn restriction(&self) -> bool {
        self.checks[..6].iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.passed)
            .map(|(i, _)| AXIOM_NAMES[i])
            .collect()
    }
}

/// The natural partial order of a restriction monoid, materialized.
#[derive(Debug, Clone)]
pub struct OrderRelation {
    n: usize,
    le: Vec<bool>,
}

impl OrderRelation {
    #[inline]
    pub fn le(&self, a: Elem, b: Elem) -> bool {
        self.le[a * self.n + b]
    }

    pub fn pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.le(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Elements below `a`, inclusive.
    pub fn below(&self, a: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&x| self.le(x, a)).collect()
    }

    /// Elements above `a`, inclusive (the up-set of `a`).
    pub fn above(&self, a: Elem) -> Vec<Elem> {
        (0..self.n).filter(|&x| self.le(a, x)).collect()
    }

    /// Nonzero elements with no nonzero element strictly below them.
    pub fn minimal_nonzero(&self, zero: Elem) -> Vec<Elem> {
        (0..self.n)
            .filter(|&m| {
                m != zero && (0..self.n).all(|x| x == zero || x == m || !self.le(x, m))
            })
            .collect()
    }
}

/// A monoid together with its natural order, compatibility relation and
/// the table of binary compatible joins. Built once, shared by everything
/// that quantifies over joins.
#[derive(Debug, Clone)]
pub struct MonoidContext {
    pub table: MonoidTable,
    pub order: OrderRelation,
    compat: Vec<bool>,
    join: Vec<Option<Elem>>,
}

impl MonoidContext {
    pub fn new(m: &MonoidTable) -> Result<Self> {
        let order = m.natural_order()?;
        let n = m.n();
        let mut compat = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                compat[a * n + b] = m.compatible(a, b);
            }
        }
        let mut join = vec![None; n * n];
        for a in 0..n {
            for b in a..n {
                if !compat[a * n + b] {
                    continue;
                }
                let j = least_upper_bound(&order, a, b);
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        Ok(MonoidContext {
            table: m.clone(),
            order,
            compat,
            join,
        })
    }

    #[inline]
    pub fn compatible(&self, a: Elem, b: Elem) -> bool {
        self.compat[a * self.table.n() + b]
    }

    /// Join of a compatible pair, if the least upper bound exists.
    /// `None` for incompatible pairs as well; callers that care about the
    /// distinction check [`MonoidContext::compatible`] first.
    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.join[a * self.table.n() + b]
    }

    /// Compatible pairs (a, b) with a <= b as indices, each unordered pair once.
    pub fn compatible_pairs(&self) -> Vec<(Elem, Elem)> {
        let n = self.table.n();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a..n {
                if self.compat[a * n + b] {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

fn least_upper_bound(order: &OrderRelation, a: Elem, b: Elem) -> Option<Elem> {
    let ubs: Vec<Elem> = order
        .above(a)
        .into_iter()
        .filter(|&u| order.le(b, u))
        .collect();
    let mut best = *ubs.first()?;
    for &u in &ubs {
        if order.le(u, best) {
            best = u;
        }
    }
    if ubs.iter().all(|&u| order.le(best, u)) {
        Some(best)
    } else {
        None
    }
}

/// The join of a compatible pair, or `Ok(None)` when no least upper bound
/// exists. Errors when the pair is not compatible.
pub fn compatible_join(ctx: &MonoidContext, a: Elem, b: Elem) -> Result<Option<Elem>> {
    if !ctx.compatible(a, b) {
        return Err(Error::NotCompatible {
            a: ctx.table.label(a).into(),
            b: ctx.table.label(b).into(),
        });
    }
    Ok(ctx.join(a, b))
}

/// Classification flags, all computed exhaustively from the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub restriction: bool,
    pub ample: bool,
    pub inverse: bool,
    pub boolean: bool,
}

/// Which clause of the Boolean restriction check failed first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BooleanFailure {
    /// A compatible pair with no join.
    MissingJoin { a: Elem, b: Elem },
    /// c·(a∨b) != ca ∨ cb (side "left") or (a∨b)·c != ac ∨ bc (side "right").
    Distributivity {
        side: &'static str,
        c: Elem,
        a: Elem,
        b: Elem,
    },
    /// The projection poset is not a complemented distributive lattice
    /// with bottom 0 and top 1.
    ProjectionLattice { clause: String, witness: Vec<Elem> },
}

#[derive(Debug, Clone)]
pub struct BooleanReport {
    pub failure: Option<BooleanFailure>,
}

impl BooleanReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Verify the three Boolean restriction clauses:
/// (i) every compatible pair has a join, (ii) multiplication distributes
/// over those joins from both sides, (iii) the projections form a
/// complemented distributive lattice under the natural order with 0 and 1.
/// Reports the first failing clause with a witness.
pub fn check_boolean_restriction(ctx: &MonoidContext) -> BooleanReport {
    let m = &ctx.table;
    let n = m.n();
    let pairs = ctx.compatible_pairs();
    for &(a, b) in &pairs {
        if ctx.join(a, b).is_none() {
            return BooleanReport {
                failure: Some(BooleanFailure::MissingJoin { a, b }),
            };
        }
    }
    for &(a, b) in &pairs {
        let j = ctx.join(a, b).expect("checked above");
        for c in 0..n {
            let (ca, cb) = (m.mul(c, a), m.mul(c, b));
            if !ctx.compatible(ca, cb) || ctx.join(ca, cb) != Some(m.mul(c, j)) {
                return BooleanReport {
                    failure: Some(BooleanFailure::Distributivity {
                        side: "left",
                        c,
                        a,
                        b,
                    }),
                };
            }
            let (ac, bc) = (m.mul(a, c), m.mul(b, c));
            if !ctx.compatible(ac, bc) || ctx.join(ac, bc) != Some(m.mul(j, c)) {
                return BooleanReport {
                    failure: Some(BooleanFailure::Distributivity {
                        side: "right",
                        c,
                        a,
                        b,
                    }),
                };
            }
        }
    }
    let fail = |clause: &str, witness: Vec<Elem>| BooleanReport {
        failure: Some(BooleanFailure::ProjectionLattice {
            clause: clause.to_string(),
            witness,
        }),
    };
    let projections = m.projections();
    if !projections.contains(&m.zero()) {
        return fail("zero is not a projection", vec![m.zero()]);
    }
    if !projections.contains(&m.one()) {
        return fail("one is not a projection", vec![m.one()]);
    }
    // Meets and joins of projections must stay projections and be the
    // lattice operations for the induced order.
    let mut meet = BTreeMap::new();
    let mut pjoin = BTreeMap::new();
    for &p in &projections {
        for &q in &projections {
            let pq = m.mul(p, q);
            if !projections.contains(&pq) {
                return fail("projections not closed under meet", vec![p, q]);
            }
            if !ctx.order.le(pq, p)
                || !ctx.order.le(pq, q)
                || projections
                    .iter()
                    .any(|&r| ctx.order.le(r, p) && ctx.order.le(r, q) && !ctx.order.le(r, pq))
            {
                return fail("product of projections is not the meet", vec![p, q]);
            }
            meet.insert((p, q), pq);
            match ctx.join(p, q) {
                Some(j) if projections.contains(&j) => {
                    pjoin.insert((p, q), j);
                }
                _ => return fail("projections have no join", vec![p, q]),
            }
        }
    }
    for &p in &projections {
        for &q in &projections {
            for &r in &projections {
                let lhs = meet[&(p, pjoin[&(q, r)])];
                let rhs = pjoin[&(meet[&(p, q)], meet[&(p, r)])];
                if lhs != rhs {
                    return fail("projection lattice not distributive", vec![p, q, r]);
                }
            }
        }
    }
    for &p in &projections {
        let complemented = projections
            .iter()
            .any(|&q| meet[&(p, q)] == m.zero() && pjoin[&(p, q)] == m.one());
        if !complemented {
            return fail("projection has no complement", vec![p]);
        }
    }
    BooleanReport { failure: None }
}

/// A total map between two monoid tables, checked as a homomorphism of
/// Boolean restriction monoids.
#[derive(Debug, Clone)]
pub struct HomomorphismMap {
    pub source: MonoidTable,
    pub target: MonoidTable,
    pub map: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomFailure {
    Zero,
    One,
    Mult { a: Elem, b: Elem },
    Star { a: Elem },
    Plus { a: Elem },
    /// The image of a compatible join is not the join of the images.
    Join { a: Elem, b: Elem },
}

#[derive(Debug, Clone)]
pub struct HomomorphismReport {
    pub failures: Vec<HomFailure>,
}

impl HomomorphismReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl HomomorphismMap {
    pub fn identity(m: &MonoidTable) -> Self {
        HomomorphismMap {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.n()).collect(),
        }
    }

    /// Verify zero, one, multiplication, star, plus and binary compatible
    /// join preservation. Collects one witness per failing clause.
    pub fn check(&self) -> Result<HomomorphismReport> {
        let (s, t) = (&self.source, &self.target);
        if self.map.len() != s.n() || self.map.iter().any(|&x| x >= t.n()) {
            return Err(Error::BadShape("homomorphism map has wrong shape".into()));
        }
        let h = |a: Elem| self.map[a];
        let mut failures = Vec::new();
        if h(s.zero()) != t.zero() {
            failures.push(HomFailure::Zero);
        }
        if h(s.one()) != t.one() {
            failures.push(HomFailure::One);
        }
        'mult: for a in 0..s.n() {
            for b in 0..s.n() {
                if h(s.mul(a, b)) != t.mul(h(a), h(b)) {
                    failures.push(HomFailure::Mult { a, b });
                    break 'mult;
                }
            }
        }
        for a in 0..s.n() {
            if h(s.star(a)) != t.star(h(a)) {
                failures.push(HomFailure::Star { a });
                break;
            }
        }
        for a in 0..s.n() {
            if h(s.plus(a)) != t.plus(h(a)) {
                failures.push(HomFailure::Plus { a });
                break;
            }
        }
        let sctx = MonoidContext::new(s)?;
        let tctx = MonoidContext::new(t)?;
        'join: for (a, b) in sctx.compatible_pairs() {
            if let Some(j) = sctx.join(a, b) {
                if !tctx.compatible(h(a), h(b)) || tctx.join(h(a), h(b)) != Some(h(j)) {
                    failures.push(HomFailure::Join { a, b });
                    break 'join;
                }
            }
        }
        Ok(HomomorphismReport { failures })
    }
}

/// Search for an isomorphism of monoid tables: a bijection preserving
/// multiplication, star, plus, zero and one. Backtracking with fingerprint
/// pruning; intended for desk-scale tables.
pub fn find_monoid_isomorphism(a: &MonoidTable, b: &MonoidTable) -> Option<Vec<Elem>> {
    if a.n() != b.n() {
        return None;
    }
    let n = a.n();
    let fp = |m: &MonoidTable, x: Elem| -> (bool, bool, bool, usize, usize) {
        let below = (0..n).filter(|&y| m.leq(y, x)).count();
        let factor = (0..n)
            .flat_map(|p| (0..n).map(move |q| (p, q)))
            .filter(|&(p, q)| m.mul(p, q) == x)
            .count();
        (m.is_idempotent(x), m.star(x) == x, m.plus(x) == x, below, factor)
    };
    let fpa: Vec<_> = (0..n).map(|x| fp(a, x)).collect();
    let fpb: Vec<_> = (0..n).map(|x| fp(b, x)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.zero()] = b.zero();
    used[b.zero()] = true;
    if a.one() != a.zero() {
        if fpa[a.one()] != fpb[b.one()] || used[b.one()] {
            return None;
        }
        map[a.one()] = b.one();
        used[b.one()] = true;
    } else if b.one() != b.zero() {
        return None;
    }

    fn consistent(a: &MonoidTable, b: &MonoidTable, map: &[Elem], x: Elem) -> bool {
        let n = a.n();
        let y = map[x];
        if map[a.star(x)] != usize::MAX && map[a.star(x)] != b.star(y) {
            return false;
        }
        if map[a.plus(x)] != usize::MAX && map[a.plus(x)] != b.plus(y) {
            return false;
        }
        for z in 0..n {
            if map[z] == usize::MAX {
                continue;
            }
            let (p, q) = (a.mul(x, z), a.mul(z, x));
            if map[p] != usize::MAX && map[p] != b.mul(y, map[z]) {
                return false;
            }
            if map[q] != usize::MAX && map[q] != b.mul(map[z], y) {
                return false;
            }
        }
        true
    }

    fn rec(
        a: &MonoidTable,
        b: &MonoidTable,
        fpa: &[(bool, bool, bool, usize, usize)],
        fpb: &[(bool, bool, bool, usize, usize)],
        map: &mut Vec<Elem>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.n();
        let x = match (0..n).find(|&x| map[x] == usize::MAX) {
            None => return true,
            Some(x) => x,
        };
        for y in 0..n {
            if used[y] || fpa[x] != fpb[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map, x) && rec(a, b, fpa, fpb, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if rec(a, b, &fpa, &fpb, &mut map, &mut used) {
        // Full re-check; the search prunes with partial information only.
        for x in 0..n {
            for y in 0..n {
                if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                    return None;
                }
            }
            if map[a.star(x)] != b.star(map[x]) || map[a.plus(x)] != b.plus(map[x]) {
                return None;
            }
        }
        Some(map)
    } else {
        None
    }
}
