//! 3×3 matrices over GF(2) and the finite ring of order 16 they span.
//!
//! Matrices are packed row-major into the low nine bits of a `u16`
//! (bit `3 * row + col`). Ring elements are addressed by [`Label`], the
//! index into the ring's element list; for the shipped ring the labels are
//! the conventional ones 0..=15.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

const ROW_MASK: u16 = 0b111;
const ENTRY_MASK: u16 = 0x1ff;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2Matrix3(u16);

impl Gf2Matrix3 {
    pub const ZERO: Self = Self(0);
    pub const IDENTITY: Self = Self(0b100_010_001);

    /// Builds a matrix from its rows; entries are reduced mod 2.
    pub const fn from_rows(rows: [[u8; 3]; 3]) -> Self {
        let mut bits = 0u16;
        let mut r = 0;
        while r < 3 {
            let mut c = 0;
            while c < 3 {
                bits |= ((rows[r][c] & 1) as u16) << (3 * r + c);
                c += 1;
            }
            r += 1;
        }
        Self(bits)
    }

    pub const fn from_bits(bits: u16) -> Self {
        Self(bits & ENTRY_MASK)
    }

    pub const fn bits(self) -> u16 {
        self.0
    }

    pub const fn entry(self, row: usize, col: usize) -> u8 {
        ((self.0 >> (3 * row + col)) & 1) as u8
    }

    pub fn rows(self) -> [[u8; 3]; 3] {
        let mut out = [[0u8; 3]; 3];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = self.entry(r, c);
            }
        }
        out
    }

    const fn row(self, r: usize) -> u16 {
        (self.0 >> (3 * r)) & ROW_MASK
    }
}

/// Entry-wise XOR.
pub const fn mat_add(x: Gf2Matrix3, y: Gf2Matrix3) -> Gf2Matrix3 {
    Gf2Matrix3(x.0 ^ y.0)
}

/// Matrix product mod 2. Row `i` of `x·y` is the XOR of the rows of `y`
/// selected by the set bits of row `i` of `x`.
pub const fn mat_mul(x: Gf2Matrix3, y: Gf2Matrix3) -> Gf2Matrix3 {
    let mut bits = 0u16;
    let mut i = 0;
    while i < 3 {
        let xr = x.row(i);
        let mut acc = 0u16;
        let mut k = 0;
        while k < 3 {
            let select = 0u16.wrapping_sub((xr >> k) & 1);
            acc ^= select & y.row(k);
            k += 1;
        }
        bits |= acc << (3 * i);
        i += 1;
    }
    Gf2Matrix3(bits)
}

impl std::ops::Add for Gf2Matrix3 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        mat_add(self, rhs)
    }
}

impl std::ops::Mul for Gf2Matrix3 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        mat_mul(self, rhs)
    }
}

impl fmt::Debug for Gf2Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.rows();
        write!(f, "[{a:?} {b:?} {c:?}]")
    }
}

/// The sixteen matrices `[[a,c,d],[0,b,0],[0,0,b]]` in their conventional
/// labelling order.
pub const CANONICAL_LABELING: [[[u8; 3]; 3]; 16] = [
    [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 1, 0], [0, 1, 0], [0, 0, 1]],
    [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
    [[1, 1, 1], [0, 1, 0], [0, 0, 1]],
    [[0, 1, 1], [0, 0, 0], [0, 0, 0]],
    [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    [[1, 0, 1], [0, 1, 0], [0, 0, 1]],
    [[0, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 0, 0], [0, 0, 0]],
    [[1, 1, 0], [0, 0, 0], [0, 0, 0]],
    [[0, 1, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 1, 1], [0, 0, 0], [0, 0, 0]],
    [[0, 1, 1], [0, 1, 0], [0, 0, 1]],
    [[0, 0, 1], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 1], [0, 0, 0], [0, 0, 0]],
];

/// Index of an element in a [`FiniteRing`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Label(pub u8);

impl Label {
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite ring of matrices together with its Cayley tables.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    elements: Vec<Gf2Matrix3>,
    add_table: Vec<Label>,
    mul_table: Vec<Label>,
    zero: Label,
    one: Label,
}

impl FiniteRing {
    /// Builds the ring whose elements are `elements`, in that label order.
    ///
    /// The zero is the zero matrix. The unity is whichever element acts as a
    /// two-sided multiplicative identity in the computed table, so the
    /// one-element ring `{0}` is accepted with `zero == one`.
    pub fn from_matrices(elements: &[Gf2Matrix3]) -> Result<Self> {
        let n = elements.len();
        if n > usize::from(u8::MAX) {
            return Err(Error::TooLarge(n));
        }
        let lookup = |m: Gf2Matrix3| elements.iter().position(|&e| e == m);
        let mut add_table = Vec::with_capacity(n * n);
        let mut mul_table = Vec::with_capacity(n * n);
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                let s = lookup(x + y).ok_or(Error::ClosureViolation { op: "sum", x: i, y: j })?;
                let p = lookup(x * y).ok_or(Error::ClosureViolation {
                    op: "product",
                    x: i,
                    y: j,
                })?;
                add_table.push(Label(s as u8));
                mul_table.push(Label(p as u8));
            }
        }
        let zero = lookup(Gf2Matrix3::ZERO).ok_or(Error::MissingIdentity("zero matrix"))?;
        let mut ring = Self {
            elements: elements.to_vec(),
            add_table,
            mul_table,
            zero: Label(zero as u8),
            one: Label(0),
        };
        ring.one = ring
            .labels()
            .find(|&e| ring.labels().all(|x| ring.mul(e, x) == x && ring.mul(x, e) == x))
            .ok_or(Error::MissingIdentity("multiplicative identity"))?;
        Ok(ring)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + Clone {
        (0..self.elements.len() as u8).map(Label)
    }

    pub fn elements(&self) -> &[Gf2Matrix3] {
        &self.elements
    }

    pub fn element(&self, x: Label) -> Gf2Matrix3 {
        self.elements[x.index()]
    }

    pub fn zero(&self) -> Label {
        self.zero
    }

    pub fn one(&self) -> Label {
        self.one
    }

    #[inline]
    pub fn add(&self, x: Label, y: Label) -> Label {
        self.add_table[x.index() * self.order() + y.index()]
    }

    #[inline]
    pub fn mul(&self, x: Label, y: Label) -> Label {
        self.mul_table[x.index() * self.order() + y.index()]
    }

    /// Additive inverse, read off the addition table.
    pub fn neg(&self, x: Label) -> Label {
        self.labels()
            .find(|&y| self.add(x, y) == self.zero)
            .expect("additive inverse exists in a verified ring")
    }

    pub fn sub(&self, x: Label, y: Label) -> Label {
        self.add(x, self.neg(y))
    }

    /// Label of a matrix, if it belongs to the ring.
    pub fn label_of(&self, m: Gf2Matrix3) -> Option<Label> {
        self.elements.iter().position(|&e| e == m).map(|i| Label(i as u8))
    }

    pub fn add_rows(&self) -> Vec<Vec<Label>> {
        self.add_table.chunks(self.order()).map(<[Label]>::to_vec).collect()
    }

    pub fn mul_rows(&self) -> Vec<Vec<Label>> {
        self.mul_table.chunks(self.order()).map(<[Label]>::to_vec).collect()
    }

    #[cfg(test)]
    pub(crate) fn set_product(&mut self, x: Label, y: Label, z: Label) {
        let n = self.order();
        self.mul_table[x.index() * n + y.index()] = z;
    }
}

/// The ring of order 16 with its conventional labels.
pub fn build_ring16() -> Result<FiniteRing> {
    let matrices: Vec<_> = CANONICAL_LABELING
        .iter()
        .map(|&rows| Gf2Matrix3::from_rows(rows))
        .collect();
    let ring = FiniteRing::from_matrices(&matrices)?;
    debug_assert_eq!(ring.zero(), Label(0));
    debug_assert_eq!(ring.one(), Label(1));
    Ok(ring)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    AdditiveClosure,
    AdditiveAssociativity,
    AdditiveCommutativity,
    AdditiveIdentity,
    AdditiveInverses,
    MultiplicativeClosure,
    MultiplicativeAssociativity,
    LeftDistributivity,
    RightDistributivity,
    MultiplicativeIdentity,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// First offending tuple of labels, if any.
    pub counterexample: Option<Vec<u8>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_axioms(&self) -> Vec<Axiom> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.axiom).collect()
    }
}

/// Exhaustively checks the ring axioms on the Cayley tables.
pub fn verify_ring_axioms(ring: &FiniteRing) -> AxiomReport {
    let n = ring.order();
    let labels: Vec<Label> = ring.labels().collect();
    let pairs = || labels.iter().flat_map(|&x| labels.iter().map(move |&y| (x, y)));
    let triples = || pairs().flat_map(|(x, y)| labels.iter().map(move |&z| (x, y, z)));
    let raw = |t: &[Label]| t.iter().map(|l| l.0).collect::<Vec<u8>>();

    let mut checks = Vec::new();
    let mut push = |axiom, counterexample: Option<Vec<u8>>| {
        checks.push(AxiomCheck {
            axiom,
            passed: counterexample.is_none(),
            counterexample,
        });
    };

    push(
        Axiom::AdditiveClosure,
        pairs()
            .find(|&(x, y)| ring.add(x, y).index() >= n)
            .map(|(x, y)| raw(&[x, y])),
    );
    push(
        Axiom::MultiplicativeClosure,
        pairs()
            .find(|&(x, y)| ring.mul(x, y).index() >= n)
            .map(|(x, y)| raw(&[x, y])),
    );
    push(
        Axiom::AdditiveAssociativity,
        triples()
            .find(|&(x, y, z)| ring.add(ring.add(x, y), z) != ring.add(x, ring.add(y, z)))
            .map(|(x, y, z)| raw(&[x, y, z])),
    );
    push(
        Axiom::AdditiveCommutativity,
        pairs()
            .find(|&(x, y)| ring.add(x, y) != ring.add(y, x))
            .map(|(x, y)| raw(&[x, y])),
    );
    let zero = ring.zero();
    push(
        Axiom::AdditiveIdentity,
        labels
            .iter()
            .find(|&&x| ring.add(zero, x) != x || ring.add(x, zero) != x)
            .map(|&x| raw(&[x])),
    );
    push(
        Axiom::AdditiveInverses,
        labels
            .iter()
            .find(|&&x| !labels.iter().any(|&y| ring.add(x, y) == zero))
            .map(|&x| raw(&[x])),
    );
    push(
        Axiom::MultiplicativeAssociativity,
        triples()
            .find(|&(x, y, z)| ring.mul(ring.mul(x, y), z) != ring.mul(x, ring.mul(y, z)))
            .map(|(x, y, z)| raw(&[x, y, z])),
    );
    push(
        Axiom::LeftDistributivity,
        triples()
            .find(|&(x, y, z)| ring.mul(x, ring.add(y, z)) != ring.add(ring.mul(x, y), ring.mul(x, z)))
            .map(|(x, y, z)| raw(&[x, y, z])),
    );
    push(
        Axiom::RightDistributivity,
        triples()
            .find(|&(x, y, z)| ring.mul(ring.add(x, y), z) != ring.add(ring.mul(x, z), ring.mul(y, z)))
            .map(|(x, y, z)| raw(&[x, y, z])),
    );
    let one = ring.one();
    push(
        Axiom::MultiplicativeIdentity,
        labels
            .iter()
            .find(|&&x| ring.mul(one, x) != x || ring.mul(x, one) != x)
            .map(|&x| raw(&[x])),
    );
    AxiomReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(label: usize) -> Gf2Matrix3 {
        Gf2Matrix3::from_rows(CANONICAL_LABELING[label])
    }

    /// Naive triple-loop product, independent of the bit-sliced one.
    fn naive_mul(x: Gf2Matrix3, y: Gf2Matrix3) -> Gf2Matrix3 {
        let (a, b) = (x.rows(), y.rows());
        let mut out = [[0u8; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum::<u8>() % 2;
            }
        }
        Gf2Matrix3::from_rows(out)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(mat_add(Gf2Matrix3::ZERO, Gf2Matrix3::ZERO), Gf2Matrix3::ZERO);
        for bits in 0..512 {
            let x = Gf2Matrix3::from_bits(bits);
            assert_eq!(x + x, Gf2Matrix3::ZERO);
        }
        assert_eq!(m(1) + m(3), m(2));
    }

    #[test]
    fn multiplication_examples() {
        for l in 0..16 {
            assert_eq!(m(1) * m(l), m(l));
        }
        assert_eq!(m(2) * m(2), m(1));
        assert_eq!(m(3) * m(8), m(3));
        assert_eq!(m(8) * m(3), m(0));
    }

    #[test]
    fn bit_sliced_product_matches_naive_on_all_matrices() {
        for x in 0..512 {
            for y in 0..512 {
                let (x, y) = (Gf2Matrix3::from_bits(x), Gf2Matrix3::from_bits(y));
                assert_eq!(mat_mul(x, y), naive_mul(x, y));
            }
        }
    }

    #[test]
    fn ring16_tables() {
        let ring = build_ring16().unwrap();
        assert_eq!(ring.order(), 16);
        assert_eq!(ring.zero(), Label(0));
        assert_eq!(ring.one(), Label(1));
        assert_eq!(ring.mul(Label(2), Label(2)), Label(1));
        for x in ring.labels() {
            assert_eq!(ring.add(x, x), Label(0));
            for y in ring.labels() {
                assert_eq!(
                    ring.element(ring.mul(x, y)),
                    naive_mul(ring.element(x), ring.element(y))
                );
            }
        }
    }

    #[test]
    fn closure_violation_is_reported() {
        let err = FiniteRing::from_matrices(&[Gf2Matrix3::ZERO, Gf2Matrix3::IDENTITY, m(3)]).unwrap_err();
        assert!(matches!(err, Error::ClosureViolation { op: "sum", .. }));
    }

    #[test]
    fn ring16_satisfies_axioms() {
        let report = verify_ring_axioms(&build_ring16().unwrap());
        assert!(report.passed(), "{:?}", report.failed_axioms());
    }

    #[test]
    fn tampered_product_breaks_axioms() {
        let mut ring = build_ring16().unwrap();
        ring.set_product(Label(2), Label(2), Label(0));
        let failed = verify_ring_axioms(&ring).failed_axioms();
        assert!(
            failed.contains(&Axiom::MultiplicativeAssociativity) || failed.contains(&Axiom::MultiplicativeIdentity),
            "{failed:?}"
        );
    }

    #[test]
    fn trivial_ring() {
        let ring = FiniteRing::from_matrices(&[Gf2Matrix3::ZERO]).unwrap();
        assert_eq!(ring.zero(), ring.one());
        assert!(verify_ring_axioms(&ring).passed());
    }
}
