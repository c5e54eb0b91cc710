//! Units, ideals and the Jacobson radical of a small [`FiniteRing`].
//!
//! Everything here is exhaustive: rings have at most 16 elements, so label
//! sets fit in a `u16` bitmask and the full power set can be scanned.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Label};

/// The two maximal ideals and the radical of the order-16 ring as
/// conventionally labelled.
pub const KNOWN_I_L: [u8; 8] = [0, 3, 5, 6, 8, 11, 13, 14];
pub const KNOWN_I_R: [u8; 8] = [0, 3, 5, 6, 9, 10, 12, 15];
pub const KNOWN_J: [u8; 4] = [0, 3, 5, 6];

/// Largest ring order the bitmask representation supports.
pub const MAX_ORDER: usize = 16;

/// A set of ring labels, one bit per label.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LabelSet(u16);

impl LabelSet {
    pub const EMPTY: Self = Self(0);

    pub const fn from_bits(bits: u16) -> Self {
        Self(bits)
    }

    pub fn full(order: usize) -> Self {
        debug_assert!(order <= MAX_ORDER);
        Self(((1u32 << order) - 1) as u16)
    }

    pub fn from_raw(labels: &[u8]) -> Self {
        labels.iter().map(|&l| Label(l)).collect()
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub const fn contains(self, x: Label) -> bool {
        self.0 >> x.0 & 1 == 1
    }

    pub fn insert(&mut self, x: Label) -> bool {
        let fresh = !self.contains(x);
        self.0 |= 1 << x.0;
        fresh
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Label> {
        (0..16u8).filter(move |&i| self.0 >> i & 1 == 1).map(Label)
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.iter().map(|l| l.0).collect()
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        let mut set = Self::EMPTY;
        for x in iter {
            set.insert(x);
        }
        set
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for LabelSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sidedness {
    /// Absorbs multiplication from the left: `r·x ∈ I`.
    Left,
    /// Absorbs multiplication from the right: `x·r ∈ I`.
    Right,
    TwoSided,
}

impl Sidedness {
    fn absorbs_left(self) -> bool {
        matches!(self, Self::Left | Self::TwoSided)
    }

    fn absorbs_right(self) -> bool {
        matches!(self, Self::Right | Self::TwoSided)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ideal {
    pub members: LabelSet,
    pub sidedness: Sidedness,
}

impl Ideal {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: Label) -> bool {
        self.members.contains(x)
    }
}

fn check_order(ring: &FiniteRing) -> Result<()> {
    if ring.order() > MAX_ORDER {
        return Err(Error::TooLarge(ring.order()));
    }
    Ok(())
}

/// Elements with a two-sided inverse.
pub fn units(ring: &FiniteRing) -> LabelSet {
    let one = ring.one();
    ring.labels()
        .filter(|&x| ring.labels().any(|y| ring.mul(x, y) == one && ring.mul(y, x) == one))
        .collect()
}

/// Whether `set` is an additive subgroup absorbing multiplication on the
/// requested side(s). For a finite set, containing zero and being closed
/// under addition already makes it a subgroup.
pub fn is_ideal(ring: &FiniteRing, set: LabelSet, sidedness: Sidedness) -> bool {
    if !set.contains(ring.zero()) {
        return false;
    }
    set.iter().all(|x| {
        set.iter().all(|y| set.contains(ring.add(x, y)))
            && ring.labels().all(|r| {
                (!sidedness.absorbs_left() || set.contains(ring.mul(r, x)))
                    && (!sidedness.absorbs_right() || set.contains(ring.mul(x, r)))
            })
    })
}

/// Smallest ideal of the given sidedness containing `generators`.
pub fn ideal_closure(ring: &FiniteRing, generators: LabelSet, sidedness: Sidedness) -> LabelSet {
    let mut set = generators;
    set.insert(ring.zero());
    loop {
        let mut next = set;
        for x in set.iter() {
            for y in set.iter() {
                next.insert(ring.add(x, y));
            }
            for r in ring.labels() {
                if sidedness.absorbs_left() {
                    next.insert(ring.mul(r, x));
                }
                if sidedness.absorbs_right() {
                    next.insert(ring.mul(x, r));
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

fn sorted_ideals(sets: impl IntoIterator<Item = LabelSet>, sidedness: Sidedness) -> Vec<Ideal> {
    let mut sets: Vec<LabelSet> = sets.into_iter().collect();
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    sets.into_iter().map(|members| Ideal { members, sidedness }).collect()
}

/// All ideals of the given sidedness.
///
/// Every ideal is a finite sum of principal ideals, so closing the principal
/// ideals (and those generated by pairs) under pairwise sums reaches them all.
pub fn enumerate_ideals(ring: &FiniteRing, sidedness: Sidedness) -> Result<Vec<Ideal>> {
    check_order(ring)?;
    let labels: Vec<Label> = ring.labels().collect();
    let mut family = std::collections::BTreeSet::new();
    family.insert(ideal_closure(ring, LabelSet::EMPTY, sidedness));
    for (i, &x) in labels.iter().enumerate() {
        for &y in &labels[i..] {
            family.insert(ideal_closure(ring, [x, y].into_iter().collect(), sidedness));
        }
    }
    loop {
        let current: Vec<LabelSet> = family.iter().copied().collect();
        let before = family.len();
        for (i, &a) in current.iter().enumerate() {
            for &b in &current[i + 1..] {
                if !a.is_subset(b) && !b.is_subset(a) {
                    family.insert(ideal_closure(ring, a.union(b), sidedness));
                }
            }
        }
        if family.len() == before {
            break;
        }
    }
    Ok(sorted_ideals(family, sidedness))
}

/// Reference enumeration: tests every subset of the ring for the ideal
/// property. Independent of [`enumerate_ideals`]'s generator closure.
pub fn enumerate_ideals_exhaustive(ring: &FiniteRing, sidedness: Sidedness) -> Result<Vec<Ideal>> {
    check_order(ring)?;
    let full = LabelSet::full(ring.order()).bits() as u32;
    let sets = (0..=full)
        .map(|bits| LabelSet::from_bits(bits as u16))
        .filter(|&s| is_ideal(ring, s, sidedness));
    Ok(sorted_ideals(sets, sidedness))
}

/// Proper ideals of the given sidedness that are maximal under inclusion.
pub fn maximal_ideals(ring: &FiniteRing, sidedness: Sidedness) -> Result<Vec<Ideal>> {
    let all = enumerate_ideals(ring, sidedness)?;
    let full = LabelSet::full(ring.order());
    let proper: Vec<Ideal> = all.into_iter().filter(|i| i.members != full).collect();
    Ok(proper
        .iter()
        .filter(|i| {
            !proper
                .iter()
                .any(|j| j.members != i.members && i.members.is_subset(j.members))
        })
        .copied()
        .collect())
}

pub fn maximal_two_sided_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    maximal_ideals(ring, Sidedness::TwoSided)
}

pub fn maximal_left_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    maximal_ideals(ring, Sidedness::Left)
}

/// Intersection of all maximal left ideals.
pub fn jacobson_via_maximal_left_ideals(ring: &FiniteRing) -> Result<LabelSet> {
    Ok(maximal_left_ideals(ring)?
        .iter()
        .fold(LabelSet::full(ring.order()), |acc, m| acc.intersection(m.members)))
}

/// `{x : 1 − r·x is left-invertible for every r}`.
pub fn jacobson_via_quasi_regularity(ring: &FiniteRing) -> LabelSet {
    let one = ring.one();
    let left_invertible = |z: Label| ring.labels().any(|y| ring.mul(y, z) == one);
    ring.labels()
        .filter(|&x| ring.labels().all(|r| left_invertible(ring.sub(one, ring.mul(r, x)))))
        .collect()
}

/// The Jacobson radical, computed by two independent characterisations
/// which must agree.
pub fn jacobson_radical(ring: &FiniteRing) -> Result<Ideal> {
    let via_ideals = jacobson_via_maximal_left_ideals(ring)?;
    let via_quasi_regular = jacobson_via_quasi_regularity(ring);
    if via_ideals != via_quasi_regular {
        return Err(Error::MethodDisagreement {
            via_ideals: via_ideals.to_vec(),
            via_quasi_regular: via_quasi_regular.to_vec(),
        });
    }
    Ok(Ideal {
        members: via_ideals,
        sidedness: Sidedness::TwoSided,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub units: LabelSet,
    pub non_units: LabelSet,
    pub two_sided_ideals: Vec<LabelSet>,
    pub left_ideal_count: usize,
    pub right_ideal_count: usize,
    pub maximal_two_sided: Vec<LabelSet>,
    pub maximal_left: Vec<LabelSet>,
    pub jacobson: LabelSet,
    pub jacobson_is_two_sided: bool,
}

pub fn structure_report(ring: &FiniteRing) -> Result<StructureReport> {
    let units = units(ring);
    let members = |v: Vec<Ideal>| v.into_iter().map(|i| i.members).collect::<Vec<_>>();
    let jacobson = jacobson_radical(ring)?.members;
    Ok(StructureReport {
        units,
        non_units: LabelSet::from_bits(LabelSet::full(ring.order()).bits() & !units.bits()),
        two_sided_ideals: members(enumerate_ideals(ring, Sidedness::TwoSided)?),
        left_ideal_count: enumerate_ideals(ring, Sidedness::Left)?.len(),
        right_ideal_count: enumerate_ideals(ring, Sidedness::Right)?.len(),
        maximal_two_sided: members(maximal_two_sided_ideals(ring)?),
        maximal_left: members(maximal_left_ideals(ring)?),
        jacobson,
        jacobson_is_two_sided: is_ideal(ring, jacobson, Sidedness::TwoSided),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring16, Gf2Matrix3};

    const I_L: [u8; 8] = KNOWN_I_L;
    const I_R: [u8; 8] = KNOWN_I_R;
    const J: [u8; 4] = KNOWN_J;

    fn ring() -> FiniteRing {
        build_ring16().unwrap()
    }

    #[test]
    fn units_of_ring16() {
        let ring = ring();
        let u = units(&ring);
        assert_eq!(u, LabelSet::from_raw(&[1, 2, 4, 7]));
        assert!(u.contains(ring.one()));
        assert!(!u.contains(ring.zero()));
    }

    #[test]
    fn two_sided_ideals_include_known_ones() {
        let ring = ring();
        let ideals: Vec<LabelSet> = enumerate_ideals(&ring, Sidedness::TwoSided)
            .unwrap()
            .into_iter()
            .map(|i| i.members)
            .collect();
        for known in [&I_L[..], &I_R, &J, &[0], &(0..16).collect::<Vec<u8>>()] {
            assert!(ideals.contains(&LabelSet::from_raw(known)), "{known:?}");
        }
    }

    #[test]
    fn generator_closure_matches_subset_scan() {
        let ring = ring();
        for side in [Sidedness::Left, Sidedness::Right, Sidedness::TwoSided] {
            assert_eq!(
                enumerate_ideals(&ring, side).unwrap(),
                enumerate_ideals_exhaustive(&ring, side).unwrap(),
                "{side:?}"
            );
        }
    }

    #[test]
    fn maximal_two_sided_are_i_l_and_i_r() {
        let ring = ring();
        let maxi = maximal_two_sided_ideals(&ring).unwrap();
        let sets: Vec<LabelSet> = maxi.iter().map(|i| i.members).collect();
        assert_eq!(sets.len(), 2);
        assert!(sets.contains(&LabelSet::from_raw(&I_L)));
        assert!(sets.contains(&LabelSet::from_raw(&I_R)));
        let u = units(&ring);
        for m in &maxi {
            assert_eq!(m.len(), 8);
            assert!(m.members.intersection(u).is_empty());
        }
    }

    #[test]
    fn radical_by_both_methods() {
        let ring = ring();
        let j = jacobson_radical(&ring).unwrap();
        assert_eq!(j.members, LabelSet::from_raw(&J));
        assert!(j.contains(ring.zero()));
        assert_eq!(
            j.members,
            LabelSet::from_raw(&I_L).intersection(LabelSet::from_raw(&I_R))
        );
        assert!(is_ideal(&ring, j.members, Sidedness::TwoSided));
        for m in maximal_two_sided_ideals(&ring).unwrap() {
            assert!(j.members.is_subset(m.members));
        }
    }

    #[test]
    fn no_proper_ideal_contains_a_unit() {
        let ring = ring();
        let u = units(&ring);
        let full = LabelSet::full(16);
        for side in [Sidedness::Left, Sidedness::Right, Sidedness::TwoSided] {
            for i in enumerate_ideals(&ring, side).unwrap() {
                if i.members != full {
                    assert!(i.members.intersection(u).is_empty());
                }
            }
        }
    }

    #[test]
    fn too_large_ring_is_rejected() {
        // GF(2)-span of {1, e12, e13, e23, e22} etc: take all upper
        // triangular 3x3 matrices, 64 elements.
        let mats: Vec<Gf2Matrix3> = (0..512u16)
            .map(Gf2Matrix3::from_bits)
            .filter(|m| m.entry(1, 0) == 0 && m.entry(2, 0) == 0 && m.entry(2, 1) == 0)
            .collect();
        let big = FiniteRing::from_matrices(&mats).unwrap();
        assert_eq!(big.order(), 64);
        assert!(matches!(
            enumerate_ideals(&big, Sidedness::Left),
            Err(Error::TooLarge(64))
        ));
    }

    #[test]
    fn trivial_ring_radical() {
        let ring = FiniteRing::from_matrices(&[Gf2Matrix3::ZERO]).unwrap();
        assert_eq!(jacobson_radical(&ring).unwrap().members, LabelSet::from_raw(&[0]));
    }
}
