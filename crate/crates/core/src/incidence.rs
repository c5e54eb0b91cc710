//! Point–line incidence structures, the duad–syntheme doily, the 3×3 grid,
//! generalized-quadrangle axiom checks and isomorphism search.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::free_module::ModVector;

/// A 2-subset `{lo, hi}` of `{1, …, 6}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Duad {
    lo: u8,
    hi: u8,
}

impl Duad {
    pub fn new(i: u8, j: u8) -> Option<Self> {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        (lo != hi && (1..=6).contains(&lo) && (1..=6).contains(&hi)).then_some(Self { lo, hi })
    }

    pub fn elements(self) -> [u8; 2] {
        [self.lo, self.hi]
    }

    pub fn contains(self, x: u8) -> bool {
        self.lo == x || self.hi == x
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        !other.contains(self.lo) && !other.contains(self.hi)
    }
}

impl fmt::Display for Duad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl fmt::Debug for Duad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The 15 duads in lexicographic order.
pub fn all_duads() -> Vec<Duad> {
    (1..=6u8)
        .flat_map(|i| (i + 1..=6).map(move |j| Duad { lo: i, hi: j }))
        .collect()
}

/// Three duads partitioning `{1, …, 6}`, stored sorted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Syntheme([Duad; 3]);

impl Syntheme {
    pub fn new(mut duads: [Duad; 3]) -> Option<Self> {
        duads.sort();
        let [x, y, z] = duads;
        (x.is_disjoint(y) && x.is_disjoint(z) && y.is_disjoint(z)).then_some(Self(duads))
    }

    pub fn duads(&self) -> [Duad; 3] {
        self.0
    }
}

impl fmt::Display for Syntheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.0;
        write!(f, "{{{x},{y},{z}}}")
    }
}

/// The 15 synthemes: pair 1 with one of five partners, then the smallest
/// remaining element with one of three, and the last two together.
pub fn all_synthemes() -> Vec<Syntheme> {
    let mut out = Vec::with_capacity(15);
    for first in 2..=6u8 {
        let rest: Vec<u8> = (2..=6).filter(|&x| x != first).collect();
        let pivot = rest[0];
        for &second in &rest[1..] {
            let last: Vec<u8> = rest[1..].iter().copied().filter(|&x| x != second).collect();
            let duads = [
                Duad { lo: 1, hi: first },
                Duad { lo: pivot, hi: second },
                Duad {
                    lo: last[0],
                    hi: last[1],
                },
            ];
            out.push(Syntheme::new(duads).expect("construction yields a partition"));
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PointLabel {
    Unlabeled(usize),
    Duad(Duad),
    Vector(ModVector),
    Grid { row: u8, col: u8 },
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::Unlabeled(i) => write!(f, "p{i}"),
            PointLabel::Duad(d) => write!(f, "{d}"),
            PointLabel::Vector(v) => write!(f, "{v}"),
            PointLabel::Grid { row, col } => write!(f, "r{row}c{col}"),
        }
    }
}

impl Serialize for PointLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Points plus lines given as sorted point-index sets. The line list is
/// kept sorted so that iteration order and serialization are stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceStructure {
    points: Vec<PointLabel>,
    lines: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    pub fn new(points: Vec<PointLabel>, lines: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut lines: Vec<Vec<usize>> = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        lines.sort();
        let s = Self { points, lines };
        s.validate()?;
        Ok(s)
    }

    /// Checks index bounds, repeated points on a line, duplicate lines and
    /// that two points share at most one line.
    pub fn validate(&self) -> Result<()> {
        let n = self.points.len();
        for (i, line) in self.lines.iter().enumerate() {
            if let Some(&p) = line.iter().find(|&&p| p >= n) {
                return Err(Error::InvalidIncidence(format!("line {i} references point {p} of {n}")));
            }
            if line.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidIncidence(format!("line {i} repeats a point")));
            }
        }
        if self.lines.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIncidence("two lines have identical point sets".into()));
        }
        for p in 0..n {
            for q in p + 1..n {
                if self.lines_through_pair(p, q).count() > 1 {
                    return Err(Error::InvalidIncidence(format!(
                        "points {} and {} share more than one line",
                        self.points[p], self.points[q]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn points(&self) -> &[PointLabel] {
        &self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    pub fn label(&self, p: usize) -> PointLabel {
        self.points[p]
    }

    pub fn index_of(&self, label: &PointLabel) -> Option<usize> {
        self.points.iter().position(|l| l == label)
    }

    pub fn lines_through(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        self.lines
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.contains(&p))
            .map(|(i, _)| i)
    }

    fn lines_through_pair(&self, p: usize, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.lines_through(p).filter(move |&i| self.lines[i].contains(&q))
    }

    pub fn degree(&self, p: usize) -> usize {
        self.lines_through(p).count()
    }

    pub fn line_through(&self, p: usize, q: usize) -> Option<usize> {
        self.lines_through_pair(p, q).next()
    }

    pub fn collinear(&self, p: usize, q: usize) -> bool {
        p != q && self.line_through(p, q).is_some()
    }

    /// Labels of the points on line `i`.
    pub fn line_labels(&self, i: usize) -> Vec<PointLabel> {
        self.lines[i].iter().map(|&p| self.points[p]).collect()
    }

    /// Same incidence with points renamed.
    pub fn relabeled(&self, mut rename: impl FnMut(PointLabel) -> Option<PointLabel>) -> Option<Self> {
        let points = self.points.iter().map(|&l| rename(l)).collect::<Option<Vec<_>>>()?;
        Some(Self {
            points,
            lines: self.lines.clone(),
        })
    }

    /// The substructure on `keep` (indices into `self`) with the given lines,
    /// which must lie entirely inside `keep`.
    pub fn restrict(&self, keep: &BTreeSet<usize>, lines: &[usize]) -> Result<Self> {
        let order: Vec<usize> = keep.iter().copied().collect();
        let new_index = |p: usize| order.binary_search(&p).ok();
        let mut new_lines = Vec::with_capacity(lines.len());
        for &i in lines {
            let mapped = self.lines[i]
                .iter()
                .map(|&p| new_index(p))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::InvalidIncidence(format!("line {i} leaves the kept point set")))?;
            new_lines.push(mapped);
        }
        Self::new(order.iter().map(|&p| self.points[p]).collect(), new_lines)
    }

    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(points: Vec<PointLabel>, lines: Vec<Vec<usize>>) -> Self {
        Self { points, lines }
    }
}

/// Points are the 15 duads, lines the 15 synthemes, incidence containment.
pub fn build_doily() -> IncidenceStructure {
    let duads = all_duads();
    let lines: Vec<Vec<usize>> = all_synthemes()
        .into_iter()
        .map(|s| {
            s.duads()
                .iter()
                .map(|d| duads.binary_search(d).expect("duad is listed"))
                .collect()
        })
        .collect();
    IncidenceStructure::new(duads.into_iter().map(PointLabel::Duad).collect(), lines)
        .expect("duad-syntheme geometry is a partial linear space")
}

/// The 3×3 grid: points `(row, col)`, lines the three rows and three columns.
pub fn build_grid_gq21() -> IncidenceStructure {
    let points = (0..3u8)
        .flat_map(|row| (0..3u8).map(move |col| PointLabel::Grid { row, col }))
        .collect();
    let rows = (0..3).map(|r| vec![3 * r, 3 * r + 1, 3 * r + 2]);
    let cols = (0..3).map(|c| vec![c, c + 3, c + 6]);
    IncidenceStructure::new(points, rows.chain(cols)).expect("grid is a partial linear space")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GqAxiom {
    /// Every line has `s + 1` points.
    LineSize,
    /// Every point is on `t + 1` lines.
    PointDegree,
    /// Two points share at most one line.
    AtMostOneLine,
    /// A point off a line is collinear with exactly one point of it.
    UniqueCollinear,
}

#[derive(Clone, Debug, Serialize)]
pub struct GqViolation {
    pub axiom: GqAxiom,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GqReport {
    pub s: usize,
    pub t: usize,
    pub points: usize,
    pub lines: usize,
    pub violations: Vec<GqViolation>,
}

impl GqReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: GqAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

pub fn check_gq(structure: &IncidenceStructure, s: usize, t: usize) -> GqReport {
    let mut violations = Vec::new();
    let mut fail = |axiom, detail: String| violations.push(GqViolation { axiom, detail });
    let label = |p: usize| structure.label(p).to_string();

    for (i, line) in structure.lines().iter().enumerate() {
        if line.len() != s + 1 {
            fail(GqAxiom::LineSize, format!("line {i} has {} points", line.len()));
        }
    }
    for p in 0..structure.point_count() {
        let d = structure.degree(p);
        if d != t + 1 {
            fail(GqAxiom::PointDegree, format!("point {} is on {d} lines", label(p)));
        }
    }
    for p in 0..structure.point_count() {
        for q in p + 1..structure.point_count() {
            let shared = structure
                .lines()
                .iter()
                .filter(|l| l.contains(&p) && l.contains(&q))
                .count();
            if shared > 1 {
                fail(
                    GqAxiom::AtMostOneLine,
                    format!("points {} and {} share {shared} lines", label(p), label(q)),
                );
            }
        }
    }
    for p in 0..structure.point_count() {
        for (i, line) in structure.lines().iter().enumerate() {
            if line.contains(&p) {
                continue;
            }
            let collinear = line.iter().filter(|&&q| structure.collinear(p, q)).count();
            if collinear != 1 {
                fail(
                    GqAxiom::UniqueCollinear,
                    format!("point {} is collinear with {collinear} points of line {i}", label(p)),
                );
            }
        }
    }
    GqReport {
        s,
        t,
        points: structure.point_count(),
        lines: structure.line_count(),
        violations,
    }
}

fn degree_profile(s: &IncidenceStructure) -> (usize, usize, Vec<usize>, Vec<usize>) {
    let mut degrees: Vec<usize> = (0..s.point_count()).map(|p| s.degree(p)).collect();
    let mut sizes: Vec<usize> = s.lines().iter().map(Vec::len).collect();
    degrees.sort_unstable();
    sizes.sort_unstable();
    (s.point_count(), s.line_count(), degrees, sizes)
}

/// Whether `map` (a-point → b-point) is a bijection carrying the lines of
/// `a` exactly onto the lines of `b`.
pub fn verify_isomorphism(a: &IncidenceStructure, b: &IncidenceStructure, map: &[usize]) -> bool {
    if map.len() != a.point_count() || a.point_count() != b.point_count() || a.line_count() != b.line_count() {
        return false;
    }
    let image: BTreeSet<usize> = map.iter().copied().collect();
    if image.len() != map.len() || image.iter().any(|&q| q >= b.point_count()) {
        return false;
    }
    let target: BTreeSet<&Vec<usize>> = b.lines().iter().collect();
    let mapped: BTreeSet<Vec<usize>> = a
        .lines()
        .iter()
        .map(|l| {
            let mut m: Vec<usize> = l.iter().map(|&p| map[p]).collect();
            m.sort_unstable();
            m
        })
        .collect();
    mapped.len() == target.len() && mapped.iter().all(|l| target.contains(l))
}

struct Search<'s> {
    a: &'s IncidenceStructure,
    b: &'s IncidenceStructure,
    order: Vec<usize>,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
}

impl Search<'_> {
    /// Every line `l` of `from` through `p` must, restricted to already
    /// mapped points plus `p ↦ q`, land inside a line of `to` of the same
    /// size through `q`.
    fn lines_consistent(
        from: &IncidenceStructure,
        to: &IncidenceStructure,
        map: &[Option<usize>],
        p: usize,
        q: usize,
    ) -> bool {
        from.lines_through(p).all(|li| {
            let line = &from.lines()[li];
            let images: Vec<usize> = line.iter().filter(|&&x| x != p).filter_map(|&x| map[x]).collect();
            to.lines_through(q)
                .any(|mi| to.lines()[mi].len() == line.len() && images.iter().all(|y| to.lines()[mi].contains(y)))
        })
    }

    fn feasible(&self, p: usize, q: usize) -> bool {
        if self.backward[q].is_some() || self.a.degree(p) != self.b.degree(q) {
            return false;
        }
        let collinearity_preserved = (0..self.a.point_count())
            .filter_map(|x| self.forward[x].map(|y| (x, y)))
            .all(|(x, y)| self.a.collinear(p, x) == self.b.collinear(q, y));
        collinearity_preserved
            && Self::lines_consistent(self.a, self.b, &self.forward, p, q)
            && Self::lines_consistent(self.b, self.a, &self.backward, q, p)
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        for q in 0..self.b.point_count() {
            if !self.feasible(p, q) {
                continue;
            }
            self.forward[p] = Some(q);
            self.backward[q] = Some(p);
            if self.extend(depth + 1) {
                return true;
            }
            self.forward[p] = None;
            self.backward[q] = None;
        }
        false
    }
}

/// Visiting order: highest degree first, then repeatedly the point
/// collinear with the most already-placed points.
fn search_order(s: &IncidenceStructure) -> Vec<usize> {
    let n = s.point_count();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let links = order.iter().filter(|&&x| s.collinear(p, x)).count();
                (links, s.degree(p), std::cmp::Reverse(p))
            })
            .expect("unplaced point remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// A point bijection `a → b` carrying lines onto lines, if one exists.
/// Labels are ignored. The returned map is verified before it is returned.
pub fn find_isomorphism(a: &IncidenceStructure, b: &IncidenceStructure) -> Option<Vec<usize>> {
    if degree_profile(a) != degree_profile(b) {
        return None;
    }
    let mut search = Search {
        a,
        b,
        order: search_order(a),
        forward: vec![None; a.point_count()],
        backward: vec![None; b.point_count()],
    };
    if !search.extend(0) {
        return None;
    }
    let map: Vec<usize> = search
        .forward
        .into_iter()
        .map(|q| q.expect("complete mapping"))
        .collect();
    verify_isomorphism(a, b, &map).then_some(map)
}
