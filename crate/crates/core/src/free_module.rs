//! The rank-2 free module over a [`FiniteRing`], its cyclic submodules, and
//! the census of all 256 generating pairs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Label};
use crate::structure::LabelSet;

/// An element `(a, b)` of the free module of rank 2. Ordered
/// lexicographically by `(a, b)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModVector {
    pub a: Label,
    pub b: Label,
}

impl ModVector {
    pub const fn new(a: u8, b: u8) -> Self {
        Self {
            a: Label(a),
            b: Label(b),
        }
    }

    pub fn coordinates(self) -> [Label; 2] {
        [self.a, self.b]
    }
}

impl fmt::Display for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl fmt::Debug for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ModVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a.0, self.b.0].serialize(s)
    }
}

impl std::str::FromStr for ModVector {
    type Err = String;

    /// Parses `(a,b)`; the parentheses are optional.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected `(a,b)`, got `{s}`"))?;
        let parse = |t: &str| t.trim().parse::<u8>().map_err(|e| format!("bad label `{t}`: {e}"));
        Ok(Self::new(parse(a)?, parse(b)?))
    }
}

/// Which side the ring acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `α·(a, b) = (αa, αb)`
    Left,
    /// `(a, b)·α = (aα, bα)`
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

pub fn act(ring: &FiniteRing, alpha: Label, v: ModVector, side: Side) -> ModVector {
    match side {
        Side::Left => ModVector {
            a: ring.mul(alpha, v.a),
            b: ring.mul(alpha, v.b),
        },
        Side::Right => ModVector {
            a: ring.mul(v.a, alpha),
            b: ring.mul(v.b, alpha),
        },
    }
}

/// A pair `(c, d)` with `ac + bd = 1` (left) or `ca + db = 1` (right).
pub fn unimodular_witness(ring: &FiniteRing, v: ModVector, side: Side) -> Option<(Label, Label)> {
    let one = ring.one();
    let combo = |c: Label, d: Label| match side {
        Side::Left => ring.add(ring.mul(v.a, c), ring.mul(v.b, d)),
        Side::Right => ring.add(ring.mul(c, v.a), ring.mul(d, v.b)),
    };
    ring.labels()
        .flat_map(|c| ring.labels().map(move |d| (c, d)))
        .find(|&(c, d)| combo(c, d) == one)
}

/// Unimodularity in the left-module sense: `ac + bd = 1` for some `c, d`.
pub fn is_unimodular(ring: &FiniteRing, v: ModVector) -> bool {
    unimodular_witness(ring, v, Side::Left).is_some()
}

pub fn is_unimodular_on(ring: &FiniteRing, v: ModVector, side: Side) -> bool {
    unimodular_witness(ring, v, side).is_some()
}

/// Scalars killing `v`.
pub fn annihilator(ring: &FiniteRing, v: ModVector, side: Side) -> LabelSet {
    let zero = ModVector {
        a: ring.zero(),
        b: ring.zero(),
    };
    ring.labels()
        .filter(|&alpha| act(ring, alpha, v, side) == zero)
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicSubmodule {
    pub generator: ModVector,
    pub side: Side,
    /// `vectors[α]` is the image of scalar `α`, repeats allowed.
    pub vectors: Vec<ModVector>,
    pub distinct_vectors: BTreeSet<ModVector>,
    pub is_free: bool,
    /// The generator itself is unimodular.
    pub is_unimodular_generated: bool,
    pub contains_unimodular: bool,
}

impl CyclicSubmodule {
    pub fn contains(&self, v: &ModVector) -> bool {
        self.distinct_vectors.contains(v)
    }

    /// Set of every coordinate of every vector.
    pub fn coordinate_labels(&self) -> LabelSet {
        self.distinct_vectors.iter().flat_map(|v| v.coordinates()).collect()
    }
}

pub fn cyclic_submodule(ring: &FiniteRing, v: ModVector, side: Side) -> CyclicSubmodule {
    let vectors: Vec<ModVector> = ring.labels().map(|alpha| act(ring, alpha, v, side)).collect();
    let distinct_vectors: BTreeSet<ModVector> = vectors.iter().copied().collect();
    CyclicSubmodule {
        generator: v,
        side,
        is_free: distinct_vectors.len() == ring.order(),
        is_unimodular_generated: is_unimodular_on(ring, v, side),
        contains_unimodular: distinct_vectors.iter().any(|&w| is_unimodular_on(ring, w, side)),
        vectors,
        distinct_vectors,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorClass {
    Unimodular,
    NonunimodularFreeGenerating,
    NonunimodularNonfreeGenerating,
}

impl VectorClass {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Unimodular => "unimodular",
            Self::NonunimodularFreeGenerating => "nonunimodular-free-generating",
            Self::NonunimodularNonfreeGenerating => "nonunimodular-nonfree-generating",
        }
    }
}

/// A submodule identified extensionally, with every vector generating it.
#[derive(Clone, Debug, Serialize)]
pub struct SubmoduleClass {
    /// Generated by the lexicographically smallest generator.
    pub submodule: CyclicSubmodule,
    pub generators: BTreeSet<ModVector>,
}

impl SubmoduleClass {
    pub fn canonical_generator(&self) -> ModVector {
        self.submodule.generator
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ClassifiedVector {
    pub vector: ModVector,
    pub class: VectorClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCounts {
    pub unimodular: usize,
    pub nonunimodular_free_generating: usize,
    pub nonunimodular_nonfree_generating: usize,
    pub distinct_free_submodules: usize,
    pub distinct_nonfree_submodules: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub side: Side,
    /// All pairs in `(a, b)` order.
    pub classes: Vec<ClassifiedVector>,
    pub counts: ClassCounts,
    /// Free submodules containing no unimodular vector, ordered by
    /// canonical generator.
    pub nonunimodular_free: Vec<SubmoduleClass>,
}

impl Census {
    pub fn submodules(&self) -> impl Iterator<Item = &CyclicSubmodule> {
        self.nonunimodular_free.iter().map(|c| &c.submodule)
    }

    /// The class containing `generator` among its generators.
    pub fn class_generated_by(&self, generator: ModVector) -> Option<&SubmoduleClass> {
        self.nonunimodular_free
            .iter()
            .find(|c| c.generators.contains(&generator))
    }
}

fn all_pairs(ring: &FiniteRing) -> impl Iterator<Item = ModVector> + '_ {
    ring.labels()
        .flat_map(move |a| ring.labels().map(move |b| ModVector { a, b }))
}

/// Groups all cyclic submodules by their vector sets.
fn group_submodules(ring: &FiniteRing, side: Side) -> BTreeMap<BTreeSet<ModVector>, BTreeSet<ModVector>> {
    let mut groups: BTreeMap<BTreeSet<ModVector>, BTreeSet<ModVector>> = BTreeMap::new();
    for v in all_pairs(ring) {
        groups
            .entry(cyclic_submodule(ring, v, side).distinct_vectors)
            .or_default()
            .insert(v);
    }
    groups
}

pub fn census(ring: &FiniteRing, side: Side) -> Result<Census> {
    let mut classes = Vec::with_capacity(ring.order() * ring.order());
    let mut counts = ClassCounts {
        unimodular: 0,
        nonunimodular_free_generating: 0,
        nonunimodular_nonfree_generating: 0,
        distinct_free_submodules: 0,
        distinct_nonfree_submodules: 0,
    };
    for v in all_pairs(ring) {
        let sub = cyclic_submodule(ring, v, side);
        let class = match (sub.is_unimodular_generated, sub.is_free) {
            (true, true) => VectorClass::Unimodular,
            (true, false) => return Err(Error::UnimodularNotFree(v.to_string())),
            (false, true) => VectorClass::NonunimodularFreeGenerating,
            (false, false) => VectorClass::NonunimodularNonfreeGenerating,
        };
        match class {
            VectorClass::Unimodular => counts.unimodular += 1,
            VectorClass::NonunimodularFreeGenerating => counts.nonunimodular_free_generating += 1,
            VectorClass::NonunimodularNonfreeGenerating => counts.nonunimodular_nonfree_generating += 1,
        }
        classes.push(ClassifiedVector { vector: v, class });
    }

    let mut nonunimodular_free = Vec::new();
    for (vectors, generators) in group_submodules(ring, side) {
        let canonical = *generators.first().expect("every group has a generator");
        let submodule = cyclic_submodule(ring, canonical, side);
        debug_assert_eq!(submodule.distinct_vectors, vectors);
        if submodule.is_free {
            counts.distinct_free_submodules += 1;
            if !submodule.contains_unimodular {
                nonunimodular_free.push(SubmoduleClass { submodule, generators });
            }
        } else {
            counts.distinct_nonfree_submodules += 1;
        }
    }
    nonunimodular_free.sort_by_key(|c| c.canonical_generator());
    Ok(Census {
        side,
        classes,
        counts,
        nonunimodular_free,
    })
}

/// Over all free cyclic submodules, "has a nonunimodular generator and no
/// unimodular vector" picks out the same submodules as "has no unimodular
/// generator".
pub fn nonunimodular_definitions_agree(ring: &FiniteRing, side: Side) -> bool {
    let unimodular = |v: &ModVector| is_unimodular_on(ring, *v, side);
    group_submodules(ring, side)
        .into_iter()
        .filter(|(vectors, _)| vectors.len() == ring.order())
        .all(|(vectors, generators)| {
            let first = generators.iter().any(|g| !unimodular(g)) && !vectors.iter().any(unimodular);
            let second = !generators.iter().any(unimodular);
            first == second
        })
}
