//! Deterministic random instances: a groupoid G (disjoint union of pair
//! groupoids with a group factor), a wide composition-closed subcategory
//! C sampled at a density, and the bisection monoid S of C. Identical
//! parameters always produce identical instances.

use serde::{Deserialize, Serialize};

use crate::category::{CategoryTable, KbMonoid};
use crate::error::{Error, Result};

/// splitmix64; deterministic across builds and platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        ((self.next_u64() >> 11) as f64 / (1u64 << 53) as f64) < p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupChoice {
    Trivial,
    Cyclic2,
    Cyclic3,
}

impl GroupChoice {
    pub fn order(self) -> usize {
        match self {
            GroupChoice::Trivial => 1,
            GroupChoice::Cyclic2 => 2,
            GroupChoice::Cyclic3 => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub seed: u64,
    pub components: usize,
    pub objects_min: usize,
    pub objects_max: usize,
    pub group: GroupChoice,
    /// Probability that a non-identity arrow of G is sampled into C
    /// before closing under composition.
    pub density: f64,
}

impl GeneratorParams {
    pub fn new(seed: u64) -> Self {
        GeneratorParams {
            seed,
            components: 1,
            objects_min: 1,
            objects_max: 3,
            group: GroupChoice::Trivial,
            density: 0.5,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub groupoid: CategoryTable,
    /// Arrows of `groupoid` forming the sampled subcategory.
    pub sub_arrows: Vec<usize>,
    pub subcategory: CategoryTable,
    pub kb: KbMonoid,
}

/// Build (G, C, S). Errors with `CapExceeded` when G has more than
/// `cap_arrows` arrows or when the bisection count of C passes
/// `cap_bisections`.
pub fn generate_instance(
    params: &GeneratorParams,
    cap_arrows: usize,
    cap_bisections: usize,
) -> Result<GeneratedInstance> {
    if params.components == 0
        || params.objects_min == 0
        || params.objects_min > params.objects_max
        || !(0.0..=1.0).contains(&params.density)
    {
        return Err(Error::Invalid("generator parameters out of range".into()));
    }
    let mut rng = SplitMix64::new(params.seed);
    let group = params.group.order();
    // arrows (component, from, to, group element); d is the `from` side
    let mut arrows: Vec<(usize, usize, usize, usize)> = Vec::new();
    for comp in 0..params.components {
        let span = params.objects_max - params.objects_min + 1;
        let objects = params.objects_min + rng.below(span as u64) as usize;
        for i in 0..objects {
            for j in 0..objects {
                for t in 0..group {
                    arrows.push((comp, i, j, t));
                }
            }
        }
    }
    if arrows.len() > cap_arrows {
        return Err(Error::CapExceeded {
            reached: arrows.len(),
            cap: cap_arrows,
        });
    }
    let n = arrows.len();
    let labels: Vec<String> = arrows
        .iter()
        .map(|&(c, i, j, t)| {
            if i == j && t == 0 {
                format!("c{c}e{i}")
            } else {
                format!("c{c}a{j}to{i}g{t}")
            }
        })
        .collect();
    let find = |c: usize, i: usize, j: usize, t: usize| -> usize {
        arrows
            .iter()
            .position(|&x| x == (c, i, j, t))
            .expect("arrow exists")
    };
    let identities: Vec<usize> = (0..n)
        .filter(|&x| {
            let (_, i, j, t) = arrows[x];
            i == j && t == 0
        })
        .collect();
    let dmap: Vec<usize> = (0..n)
        .map(|x| {
            let (c, _, j, _) = arrows[x];
            find(c, j, j, 0)
        })
        .collect();
    let rmap: Vec<usize> = (0..n)
        .map(|x| {
            let (c, i, _, _) = arrows[x];
            find(c, i, i, 0)
        })
        .collect();
    let mut comp_table = vec![None; n * n];
    for x in 0..n {
        for y in 0..n {
            if dmap[x] != rmap[y] {
                continue;
            }
            let (cx, i, _, t1) = arrows[x];
            let (_, _, k, t2) = arrows[y];
            comp_table[x * n + y] = Some(find(cx, i, k, (t1 + t2) % group));
        }
    }
    let groupoid = CategoryTable::from_parts(labels, identities.clone(), dmap, rmap, comp_table)?;
    if !groupoid.check_groupoid().ok() {
        return Err(Error::Invalid("generated table is not a groupoid".into()));
    }
    // sample the wide subcategory, then close it under composition
    let mut included: Vec<bool> = (0..n).map(|x| groupoid.is_identity(x)).collect();
    for x in 0..n {
        if !included[x] && rng.chance(params.density) {
            included[x] = true;
        }
    }
    loop {
        let mut grew = false;
        for x in 0..n {
            if !included[x] {
                continue;
            }
            for y in 0..n {
                if !included[y] {
                    continue;
                }
                if let Some(xy) = groupoid.compose(x, y) {
                    if !included[xy] {
                        included[xy] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    let sub_arrows: Vec<usize> = (0..n).filter(|&x| included[x]).collect();
    let (subcategory, _) = groupoid.subcategory(&sub_arrows)?;
    let kb = subcategory.kb_monoid(cap_bisections)?;
    Ok(GeneratedInstance {
        groupoid,
        sub_arrows,
        subcategory,
        kb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::monoid::find_monoid_isomorphism;

    #[test]
    fn determinism_in_seed() {
        let params = GeneratorParams {
            seed: 42,
            components: 2,
            objects_min: 1,
            objects_max: 3,
            group: GroupChoice::Cyclic2,
            density: 0.4,
        };
        let a = generate_instance(&params, 64, 4096).unwrap();
        let b = generate_instance(&params, 64, 4096).unwrap();
        assert_eq!(a.groupoid.to_raw().arrows, b.groupoid.to_raw().arrows);
        assert_eq!(a.sub_arrows, b.sub_arrows);
        assert_eq!(a.kb.monoid.table, b.kb.monoid.table);
    }

    #[test]
    fn full_density_single_pair_component_gives_i2() {
        let params = GeneratorParams {
            seed: 7,
            components: 1,
            objects_min: 2,
            objects_max: 2,
            group: GroupChoice::Trivial,
            density: 1.0,
        };
        let inst = generate_instance(&params, 64, 4096).unwrap();
        assert_eq!(inst.groupoid.n(), 4);
        assert_eq!(inst.subcategory.n(), 4);
        assert!(find_monoid_isomorphism(&inst.kb.monoid.table, &fixtures::i2()).is_some());
    }

    #[test]
    fn zero_density_gives_a_boolean_algebra_of_object_subsets() {
        let params = GeneratorParams {
            seed: 3,
            components: 1,
            objects_min: 3,
            objects_max: 3,
            group: GroupChoice::Trivial,
            density: 0.0,
        };
        let inst = generate_instance(&params, 64, 4096).unwrap();
        assert_eq!(inst.subcategory.n(), 3, "identities only");
        assert_eq!(inst.kb.len(), 8, "subsets of the objects");
    }

    #[test]
    fn one_object_cyclic2_gives_g0() {
        let params = GeneratorParams {
            seed: 11,
            components: 1,
            objects_min: 1,
            objects_max: 1,
            group: GroupChoice::Cyclic2,
            density: 1.0,
        };
        let inst = generate_instance(&params, 64, 4096).unwrap();
        assert!(find_monoid_isomorphism(&inst.kb.monoid.table, &fixtures::g0()).is_some());
    }

    #[test]
    fn generated_monoid_is_always_boolean_ample() {
        for seed in 0..20 {
            let params = GeneratorParams {
                seed,
                components: 1 + (seed as usize % 2),
                objects_min: 1,
                objects_max: 2,
                group: if seed % 3 == 0 {
                    GroupChoice::Cyclic2
                } else {
                    GroupChoice::Trivial
                },
                density: [0.0, 0.3, 0.7, 1.0][seed as usize % 4],
            };
            let inst = generate_instance(&params, 64, 4096).unwrap();
            assert!(inst.subcategory.check_cancellative().ok());
            let class = inst.kb.monoid.table.classify();
            assert!(class.ample && class.boolean);
        }
    }

    #[test]
    fn arrow_cap_is_reported() {
        let params = GeneratorParams {
            seed: 0,
            components: 1,
            objects_min: 3,
            objects_max: 3,
            group: GroupChoice::Cyclic3,
            density: 1.0,
        };
        assert!(matches!(
            generate_instance(&params, 16, 4096),
            Err(Error::CapExceeded { .. })
        ));
    }
}
