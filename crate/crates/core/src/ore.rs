//! Bounded symbolic fractions over an oracle-described monoid.
//!
//! The oracle supplies elements up to a bound, multiplication, and a
//! common-left-multiplier function (a, b) ↦ (p, q) with p·a = q·b.
//! Fractions are pairs (a, b) read as a⁻¹b; the product of (a, b) and
//! (c, d) picks (p, q) with p·b = q·c and returns (p·a, q·d). The oracle
//! also reduces a pair to a normal form naming its class; for the
//! built-in free commutative monoid of rank k the normal form of (a, b)
//! is the integer vector b − a.
//!
//! Every oracle answer is distrusted: p·a = q·b is re-checked on each
//! call and a mismatch aborts with `OracleInconsistent`.

use crate::error::{Error, Result};

pub trait OreOracle {
    type Elem: Clone + Eq + Ord + std::fmt::Debug;
    type NormalForm: Clone + Eq + Ord + std::fmt::Debug;

    /// Elements with coordinates (or length, or whatever the oracle
    /// measures) bounded by `bound`.
    fn elements(&self, bound: u32) -> Vec<Self::Elem>;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Some (p, q) with p·a = q·b.
    fn common_left_multiplier(&self, a: &Self::Elem, b: &Self::Elem)
        -> (Self::Elem, Self::Elem);
    /// The class of the fraction a⁻¹b.
    fn normal_form(&self, a: &Self::Elem, b: &Self::Elem) -> Self::NormalForm;
    fn describe(&self, a: &Self::Elem) -> String;
    fn describe_nf(&self, nf: &Self::NormalForm) -> String;
}

/// A fraction a⁻¹b over the oracle's monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction<E> {
    pub a: E,
    pub b: E,
}

/// Multiply two fractions through the common-left-multiplier calculus,
/// re-checking the oracle's answer.
pub fn fraction_mul<O: OreOracle>(
    oracle: &O,
    x: &Fraction<O::Elem>,
    y: &Fraction<O::Elem>,
) -> Result<Fraction<O::Elem>> {
    let (p, q) = oracle.common_left_multiplier(&x.b, &y.a);
    if oracle.mul(&p, &x.b) != oracle.mul(&q, &y.a) {
        return Err(Error::OracleInconsistent {
            a: oracle.describe(&x.b),
            b: oracle.describe(&y.a),
        });
    }
    Ok(Fraction {
        a: oracle.mul(&p, &x.a),
        b: oracle.mul(&q, &y.b),
    })
}

#[derive(Debug, Clone)]
pub struct OreReport {
    pub elements: usize,
    pub classes: usize,
    pub products_checked: usize,
    pub associativity_triples: usize,
}

/// Verify the group laws for the fractions of the oracle's monoid, on all
/// classes whose normal forms arise from element pairs within the bound:
/// identity and inverses pointwise, associativity over all triples, and
/// independence of the normal form under common left shifts.
pub fn check_ore_fractions<O: OreOracle>(oracle: &O, bound: u32) -> Result<OreReport> {
    let elements = oracle.elements(bound);
    let one = oracle.one();
    let violation = |clause: &str, detail: String| {
        Error::violation("ore-fraction-laws", clause, serde_json::json!({ "case": detail }))
    };
    // normal form is invariant under left shifts of a representative
    for a in &elements {
        for b in &elements {
            let nf = oracle.normal_form(a, b);
            for h in &elements {
                let shifted = oracle.normal_form(&oracle.mul(h, a), &oracle.mul(h, b));
                if shifted != nf {
                    return Err(violation(
                        "normal form changes under a common left shift",
                        format!(
                            "({}, {}) shifted by {}",
                            oracle.describe(a),
                            oracle.describe(b),
                            oracle.describe(h)
                        ),
                    ));
                }
            }
        }
    }
    // one representative per class
    let mut reps: Vec<(O::NormalForm, Fraction<O::Elem>)> = Vec::new();
    for a in &elements {
        for b in &elements {
            let nf = oracle.normal_form(a, b);
            if reps.iter().all(|(known, _)| known != &nf) {
                reps.push((
                    nf,
                    Fraction {
                        a: a.clone(),
                        b: b.clone(),
                    },
                ));
            }
        }
    }
    reps.sort_by(|x, y| x.0.cmp(&y.0));
    let identity_nf = oracle.normal_form(&one, &one);
    // identity class behaves as a two-sided identity, inverses invert
    let mut products = 0;
    for (nf, frac) in &reps {
        let id = Fraction {
            a: one.clone(),
            b: one.clone(),
        };
        let right = fraction_mul(oracle, frac, &id)?;
        let left = fraction_mul(oracle, &id, frac)?;
        products += 2;
        if oracle.normal_form(&right.a, &right.b) != *nf
            || oracle.normal_form(&left.a, &left.b) != *nf
        {
            return Err(violation(
                "identity law fails",
                oracle.describe_nf(nf),
            ));
        }
        let inv = Fraction {
            a: frac.b.clone(),
            b: frac.a.clone(),
        };
        let prod = fraction_mul(oracle, frac, &inv)?;
        let prod2 = fraction_mul(oracle, &inv, frac)?;
        products += 2;
        if oracle.normal_form(&prod.a, &prod.b) != identity_nf
            || oracle.normal_form(&prod2.a, &prod2.b) != identity_nf
        {
            return Err(violation("inverse law fails", oracle.describe_nf(nf)));
        }
    }
    // associativity through the pair calculus
    let mut triples = 0;
    for (_, x) in &reps {
        for (_, y) in &reps {
            for (_, z) in &reps {
                triples += 1;
                let xy_z = {
                    let xy = fraction_mul(oracle, x, y)?;
                    fraction_mul(oracle, &xy, z)?
                };
                let x_yz = {
                    let yz = fraction_mul(oracle, y, z)?;
                    fraction_mul(oracle, x, &yz)?
                };
                if oracle.normal_form(&xy_z.a, &xy_z.b) != oracle.normal_form(&x_yz.a, &x_yz.b) {
                    return Err(violation(
                        "associativity fails",
                        format!(
                            "{} · {} · {}",
                            oracle.describe(&x.b),
                            oracle.describe(&y.b),
                            oracle.describe(&z.b)
                        ),
                    ));
                }
            }
        }
    }
    Ok(OreReport {
        elements: elements.len(),
        classes: reps.len(),
        products_checked: products,
        associativity_triples: triples,
    })
}

/// The free commutative monoid of rank k (written additively), the one
/// built-in oracle family. Rank is capped at 4; elements are stored in
/// fixed arrays padded with zeros so the hot loops stay allocation-free.
#[derive(Debug, Clone)]
pub struct FreeCommutativeMonoid {
    rank: usize,
}

impl FreeCommutativeMonoid {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 4 {
            return Err(Error::Invalid("rank must lie in 1..=4".into()));
        }
        Ok(FreeCommutativeMonoid { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Pad coordinates into the fixed element representation.
    pub fn element(&self, coords: &[u32]) -> [u32; 4] {
        assert!(coords.len() == self.rank, "coordinate count must match the rank");
        let mut out = [0u32; 4];
        out[..self.rank].copy_from_slice(coords);
        out
    }

    /// Trim a normal form back to rank-many coordinates.
    pub fn coords(&self, nf: &[i64; 4]) -> Vec<i64> {
        nf[..self.rank].to_vec()
    }
}

impl OreOracle for FreeCommutativeMonoid {
    type Elem = [u32; 4];
    type NormalForm = [i64; 4];

    fn elements(&self, bound: u32) -> Vec<[u32; 4]> {
        let mut out = vec![[0u32; 4]];
        for coord in 0..self.rank {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=bound).map(move |c| {
                        let mut v = prefix;
                        v[coord] = c;
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn one(&self) -> [u32; 4] {
        [0; 4]
    }

    fn mul(&self, a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
        let mut out = [0u32; 4];
        for i in 0..4 {
            out[i] = a[i] + b[i];
        }
        out
    }

    fn common_left_multiplier(&self, a: &[u32; 4], b: &[u32; 4]) -> ([u32; 4], [u32; 4]) {
        let mut p = [0u32; 4];
        let mut q = [0u32; 4];
        for i in 0..4 {
            let m = a[i].max(b[i]);
            p[i] = m - a[i];
            q[i] = m - b[i];
        }
        (p, q)
    }

    fn normal_form(&self, a: &[u32; 4], b: &[u32; 4]) -> [i64; 4] {
        let mut out = [0i64; 4];
        for i in 0..4 {
            out[i] = i64::from(b[i]) - i64::from(a[i]);
        }
        out
    }

    fn describe(&self, a: &[u32; 4]) -> String {
        format!("{:?}", &a[..self.rank])
    }

    fn describe_nf(&self, nf: &[i64; 4]) -> String {
        format!("{:?}", &nf[..self.rank])
    }
}
