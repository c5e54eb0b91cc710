//! Links the algebra to the geometry: doily points are relabelled by the
//! fifteen nonzero vectors of J², and each nonunimodular free submodule
//! leaves a seven-point "Jacobson trace" of three concurrent lines.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::free_module::{census, cyclic_submodule, Census, CyclicSubmodule, ModVector, Side, SubmoduleClass};
use crate::incidence::{
    build_doily, build_grid_gq21, check_gq, find_isomorphism, verify_isomorphism, Duad, GqReport, IncidenceStructure,
    PointLabel,
};
use crate::orbit_table::GOLDEN_HEADERS;
use crate::ring::{FiniteRing, Label};
use crate::structure::{jacobson_radical, maximal_two_sided_ideals, LabelSet, KNOWN_I_L, KNOWN_I_R};

/// The standard duad ↔ vector assignment.
pub const STANDARD_BIJECTION: [((u8, u8), (u8, u8)); 15] = [
    ((1, 2), (3, 3)),
    ((1, 3), (5, 3)),
    ((1, 4), (0, 6)),
    ((1, 5), (3, 6)),
    ((1, 6), (5, 0)),
    ((2, 3), (6, 0)),
    ((2, 4), (3, 5)),
    ((2, 5), (0, 5)),
    ((2, 6), (6, 3)),
    ((3, 4), (5, 5)),
    ((3, 5), (6, 5)),
    ((3, 6), (0, 3)),
    ((4, 5), (3, 0)),
    ((4, 6), (5, 6)),
    ((5, 6), (6, 6)),
];

/// Nonzero vectors with both coordinates in `radical`.
pub fn nonzero_radical_vectors(radical: LabelSet, zero: Label) -> BTreeSet<ModVector> {
    radical
        .iter()
        .flat_map(|a| radical.iter().map(move |b| ModVector { a, b }))
        .filter(|v| *v != ModVector { a: zero, b: zero })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DuadVectorBijection {
    pairs: Vec<(String, ModVector)>,
    #[serde(skip)]
    map: BTreeMap<Duad, ModVector>,
}

impl DuadVectorBijection {
    /// Checks that the map is a bijection from all 15 duads onto the
    /// nonzero vectors over `radical`.
    pub fn new(pairs: impl IntoIterator<Item = (Duad, ModVector)>, radical: LabelSet, zero: Label) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (d, v) in pairs {
            if map.insert(d, v).is_some() {
                return Err(Error::InvalidBijection(format!("duad {d} assigned twice")));
            }
        }
        if map.len() != 15 {
            return Err(Error::InvalidBijection(format!(
                "{} duads assigned, expected 15",
                map.len()
            )));
        }
        let image: BTreeSet<ModVector> = map.values().copied().collect();
        if image.len() != map.len() {
            return Err(Error::InvalidBijection("two duads share a vector".into()));
        }
        let target = nonzero_radical_vectors(radical, zero);
        if image != target {
            let stray: Vec<String> = image.difference(&target).map(|v| v.to_string()).collect();
            return Err(Error::InvalidBijection(format!(
                "image is not J² minus zero; outside: [{}]",
                stray.join(" ")
            )));
        }
        Ok(Self {
            pairs: map.iter().map(|(d, v)| (d.to_string(), *v)).collect(),
            map,
        })
    }

    pub fn vector_of(&self, d: Duad) -> Option<ModVector> {
        self.map.get(&d).copied()
    }

    pub fn duad_of(&self, v: ModVector) -> Option<Duad> {
        self.map.iter().find(|(_, &w)| w == v).map(|(&d, _)| d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Duad, ModVector)> + '_ {
        self.map.iter().map(|(&d, &v)| (d, v))
    }
}

pub fn standard_bijection(radical: LabelSet, zero: Label) -> Result<DuadVectorBijection> {
    let pairs = STANDARD_BIJECTION.iter().map(|&((i, j), (a, b))| {
        (
            Duad::new(i, j).expect("transcribed duads are valid"),
            ModVector::new(a, b),
        )
    });
    DuadVectorBijection::new(pairs, radical, zero)
}

/// Replaces duad labels by their vectors, keeping incidence.
pub fn relabel_doily(doily: &IncidenceStructure, bijection: &DuadVectorBijection) -> Result<IncidenceStructure> {
    doily
        .relabeled(|label| match label {
            PointLabel::Duad(d) => bijection.vector_of(d).map(PointLabel::Vector),
            _ => None,
        })
        .ok_or_else(|| Error::InvalidBijection("doily point without a duad label or assigned vector".into()))
}

fn vector_label(s: &IncidenceStructure, p: usize) -> Option<ModVector> {
    match s.label(p) {
        PointLabel::Vector(v) => Some(v),
        _ => None,
    }
}

fn line_vectors(s: &IncidenceStructure, i: usize) -> Vec<ModVector> {
    s.lines()[i].iter().filter_map(|&p| vector_label(s, p)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub generator: ModVector,
    pub side: Side,
    pub trace_points: BTreeSet<ModVector>,
    /// Indices into the doily's line list.
    pub trace_lines: Vec<usize>,
    pub trace_line_points: Vec<Vec<ModVector>>,
    pub concurrence_point: ModVector,
    pub concurrence_duad: Option<String>,
}

pub fn jacobson_trace(sub: &CyclicSubmodule, doily: &IncidenceStructure) -> Result<TraceReport> {
    let violation = |detail: String| Error::TraceShapeViolation {
        generator: sub.generator.to_string(),
        detail,
    };
    let doily_points: BTreeSet<ModVector> = (0..doily.point_count())
        .filter_map(|p| vector_label(doily, p))
        .collect();
    if doily_points.len() != doily.point_count() {
        return Err(violation("doily points are not labelled by vectors".into()));
    }
    let trace_points: BTreeSet<ModVector> = sub.distinct_vectors.intersection(&doily_points).copied().collect();
    if trace_points.len() != 7 {
        return Err(violation(format!("{} trace points, expected 7", trace_points.len())));
    }
    let trace_lines: Vec<usize> = (0..doily.line_count())
        .filter(|&i| line_vectors(doily, i).iter().all(|v| trace_points.contains(v)))
        .collect();
    if trace_lines.len() != 3 {
        return Err(violation(format!(
            "{} doily lines inside the trace, expected 3",
            trace_lines.len()
        )));
    }
    let line_sets: Vec<BTreeSet<usize>> = trace_lines
        .iter()
        .map(|&i| doily.lines()[i].iter().copied().collect())
        .collect();
    let common: Vec<usize> = line_sets[0]
        .iter()
        .filter(|p| line_sets[1..].iter().all(|l| l.contains(p)))
        .copied()
        .collect();
    let &[centre] = common.as_slice() else {
        return Err(violation(format!(
            "{} points common to all three lines, expected 1",
            common.len()
        )));
    };
    for (i, a) in line_sets.iter().enumerate() {
        for b in &line_sets[i + 1..] {
            if a.intersection(b).count() != 1 {
                return Err(violation("two trace lines meet outside the concurrence point".into()));
            }
        }
    }
    let covered: BTreeSet<ModVector> = line_sets
        .iter()
        .flatten()
        .filter_map(|&p| vector_label(doily, p))
        .collect();
    if covered != trace_points {
        return Err(violation("trace lines do not cover the trace".into()));
    }
    let concurrence_point = vector_label(doily, centre).expect("labelled above");
    Ok(TraceReport {
        generator: sub.generator,
        side: sub.side,
        trace_line_points: trace_lines.iter().map(|&i| line_vectors(doily, i)).collect(),
        trace_lines,
        trace_points,
        concurrence_point,
        concurrence_duad: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LineMultiplicity {
    pub line: usize,
    pub points: Vec<ModVector>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreGeometry {
    pub line_multiplicities: Vec<LineMultiplicity>,
    /// multiplicity → number of doily lines with it
    pub histogram: BTreeMap<usize, usize>,
    pub distinguished_lines: Vec<usize>,
    pub concurrence_points: Vec<ModVector>,
    pub core: IncidenceStructure,
    pub gq21: GqReport,
    /// Core point label → grid point label.
    pub grid_isomorphism: Vec<(String, String)>,
}

pub fn core_geometry(traces: &[TraceReport], doily: &IncidenceStructure) -> Result<CoreGeometry> {
    let shape = |msg: String| Error::CoreShapeViolation(msg);
    let mut counts = vec![0usize; doily.line_count()];
    for t in traces {
        for &i in &t.trace_lines {
            counts[i] += 1;
        }
    }
    let mut histogram = BTreeMap::new();
    for &c in &counts {
        *histogram.entry(c).or_insert(0) += 1;
    }
    let expected: BTreeMap<usize, usize> = [(1, 9), (3, 6)].into();
    if histogram != expected {
        return Err(shape(format!(
            "line multiplicity histogram {histogram:?}, expected {expected:?}"
        )));
    }
    let distinguished_lines: Vec<usize> = (0..counts.len()).filter(|&i| counts[i] == 3).collect();

    let concurrence_points: BTreeSet<ModVector> = traces.iter().map(|t| t.concurrence_point).collect();
    if concurrence_points.len() != traces.len() || traces.len() != 9 {
        return Err(shape(format!(
            "{} distinct concurrence points from {} traces",
            concurrence_points.len(),
            traces.len()
        )));
    }
    let point_index = |v: &ModVector| {
        doily
            .index_of(&PointLabel::Vector(*v))
            .expect("trace points are doily points")
    };
    let keep: BTreeSet<usize> = concurrence_points.iter().map(point_index).collect();
    for v in &concurrence_points {
        let p = point_index(v);
        let on = distinguished_lines
            .iter()
            .filter(|&&i| doily.lines()[i].contains(&p))
            .count();
        if on != 2 {
            return Err(shape(format!("concurrence point {v} lies on {on} distinguished lines")));
        }
    }
    let core = doily
        .restrict(&keep, &distinguished_lines)
        .map_err(|e| shape(e.to_string()))?;
    let gq21 = check_gq(&core, 2, 1);
    let grid = build_grid_gq21();
    let map = find_isomorphism(&core, &grid).ok_or_else(|| shape("core is not isomorphic to the 3×3 grid".into()))?;
    if !verify_isomorphism(&core, &grid, &map) {
        return Err(shape("grid isomorphism failed re-verification".into()));
    }
    let grid_isomorphism = map
        .iter()
        .enumerate()
        .map(|(p, &q)| (core.label(p).to_string(), grid.label(q).to_string()))
        .collect();
    let line_multiplicities = counts
        .iter()
        .enumerate()
        .map(|(line, &multiplicity)| LineMultiplicity {
            line,
            points: line_vectors(doily, line),
            multiplicity,
        })
        .collect();
    Ok(CoreGeometry {
        line_multiplicities,
        histogram,
        distinguished_lines,
        concurrence_points: concurrence_points.into_iter().collect(),
        core,
        gq21,
        grid_isomorphism,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TriplePartition {
    pub triples: Vec<Vec<ModVector>>,
    /// Shared vectors between two submodules of the same triple.
    pub intra_size: usize,
    /// Shared vectors between submodules of different triples.
    pub inter_size: usize,
    /// Generators in input order.
    pub generators: Vec<ModVector>,
    pub intersection_sizes: Vec<Vec<usize>>,
}

/// Groups nine submodules into triples by the size of their pairwise
/// intersections, requiring exactly two off-diagonal sizes.
pub fn triple_partition(subs: &[CyclicSubmodule]) -> Result<TriplePartition> {
    let fail = |msg: String| Error::PartitionViolation(msg);
    if subs.len() != 9 {
        return Err(fail(format!("{} submodules, expected 9", subs.len())));
    }
    let n = subs.len();
    let sizes: Vec<Vec<usize>> = subs
        .iter()
        .map(|x| {
            subs.iter()
                .map(|y| x.distinct_vectors.intersection(&y.distinct_vectors).count())
                .collect()
        })
        .collect();
    let levels: BTreeSet<usize> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| sizes[i][j])
        .collect();
    let (&inter_size, &intra_size) = match (levels.first(), levels.last()) {
        (Some(lo), Some(hi)) if levels.len() == 2 => (lo, hi),
        _ => {
            return Err(fail(format!(
                "off-diagonal intersection sizes {levels:?}, expected two levels"
            )))
        }
    };

    let mut assigned = vec![false; n];
    let mut triples = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let group: Vec<usize> = (0..n).filter(|&j| j == i || sizes[i][j] == intra_size).collect();
        let clique = group
            .iter()
            .all(|&x| group.iter().all(|&y| x == y || sizes[x][y] == intra_size));
        if group.len() != 3 || !clique || group.iter().any(|&j| assigned[j]) {
            return Err(fail(format!("submodule {} has no clean triple", subs[i].generator)));
        }
        for &j in &group {
            assigned[j] = true;
        }
        triples.push(group.iter().map(|&j| subs[j].generator).collect());
    }
    Ok(TriplePartition {
        triples,
        intra_size,
        inter_size,
        generators: subs.iter().map(|s| s.generator).collect(),
        intersection_sizes: sizes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub ideal: LabelSet,
    pub coordinates: LabelSet,
    pub outside: LabelSet,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.outside.is_empty()
    }
}

/// Whether every coordinate of every vector of every submodule lies in
/// `ideal`.
pub fn ideal_membership_check<'a>(
    subs: impl IntoIterator<Item = &'a CyclicSubmodule>,
    ideal: LabelSet,
) -> MembershipReport {
    let coordinates = subs
        .into_iter()
        .fold(LabelSet::EMPTY, |acc, s| acc.union(s.coordinate_labels()));
    MembershipReport {
        ideal,
        coordinates,
        outside: LabelSet::from_bits(coordinates.bits() & !ideal.bits()),
    }
}

/// Generator used to present a submodule: the matching golden header on
/// the left side, otherwise the canonical generator.
pub fn display_generator(class: &SubmoduleClass, side: Side) -> ModVector {
    match side {
        Side::Left => GOLDEN_HEADERS
            .iter()
            .copied()
            .find(|h| class.generators.contains(h))
            .unwrap_or(class.canonical_generator()),
        Side::Right => class.canonical_generator(),
    }
}

/// Submodules of a census, each generated by its display generator, in
/// golden column order on the left side and canonical order on the right.
pub fn presented_submodules(ring: &FiniteRing, census: &Census) -> Vec<CyclicSubmodule> {
    let mut gens: Vec<ModVector> = census
        .nonunimodular_free
        .iter()
        .map(|c| display_generator(c, census.side))
        .collect();
    if census.side == Side::Left {
        gens.sort_by_key(|g| GOLDEN_HEADERS.iter().position(|h| h == g).unwrap_or(usize::MAX));
    }
    gens.into_iter()
        .map(|g| cyclic_submodule(ring, g, census.side))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SideAnalysis {
    pub side: Side,
    pub census: Census,
    pub submodules: Vec<ModVector>,
    pub traces: Vec<TraceReport>,
    pub core: CoreGeometry,
    pub triples: TriplePartition,
    pub membership: MembershipReport,
    /// Every doily point appears in some trace.
    pub traces_cover_doily: bool,
}

/// Census, traces, core, triples and coordinate check for one side.
pub fn analyze_side(
    ring: &FiniteRing,
    side: Side,
    doily: &IncidenceStructure,
    bijection: &DuadVectorBijection,
    coordinate_ideal: LabelSet,
) -> Result<SideAnalysis> {
    let census = census(ring, side)?;
    let subs = presented_submodules(ring, &census);
    let traces = subs
        .iter()
        .map(|s| {
            jacobson_trace(s, doily).map(|mut t| {
                t.concurrence_duad = bijection.duad_of(t.concurrence_point).map(|d| d.to_string());
                t
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let core = core_geometry(&traces, doily)?;
    let triples = triple_partition(&subs)?;
    let membership = ideal_membership_check(&subs, coordinate_ideal);
    let covered: BTreeSet<ModVector> = traces.iter().flat_map(|t| t.trace_points.iter().copied()).collect();
    Ok(SideAnalysis {
        side,
        submodules: subs.iter().map(|s| s.generator).collect(),
        traces_cover_doily: covered.len() == doily.point_count(),
        census,
        traces,
        core,
        triples,
        membership,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideCounts {
    pub submodules: usize,
    pub trace_sizes: BTreeSet<usize>,
    pub lines_per_trace: BTreeSet<usize>,
    pub distinguished_lines: usize,
    pub concurrence_points: usize,
    pub line_histogram: BTreeMap<usize, usize>,
    pub triples: usize,
    pub triple_levels: (usize, usize),
}

impl SideCounts {
    pub fn of(a: &SideAnalysis) -> Self {
        Self {
            submodules: a.submodules.len(),
            trace_sizes: a.traces.iter().map(|t| t.trace_points.len()).collect(),
            lines_per_trace: a.traces.iter().map(|t| t.trace_lines.len()).collect(),
            distinguished_lines: a.core.distinguished_lines.len(),
            concurrence_points: a.core.concurrence_points.len(),
            line_histogram: a.core.histogram.clone(),
            triples: a.triples.triples.len(),
            triple_levels: (a.triples.intra_size, a.triples.inter_size),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MirrorReport {
    pub left: SideAnalysis,
    pub right: SideAnalysis,
    pub left_counts: SideCounts,
    pub right_counts: SideCounts,
    /// Doily points equal the nonzero vectors over the radical.
    pub shared_doily: bool,
    pub left_in_i_l: bool,
    pub right_in_i_r: bool,
}

impl MirrorReport {
    pub fn passed(&self) -> bool {
        self.shared_doily && self.left_in_i_l && self.right_in_i_r && self.left_counts == self.right_counts
    }
}

fn known_maximal(ring: &FiniteRing, known: &[u8]) -> Result<LabelSet> {
    let set = LabelSet::from_raw(known);
    if maximal_two_sided_ideals(ring)?.iter().any(|m| m.members == set) {
        Ok(set)
    } else {
        Err(Error::MirrorMismatch(format!("{set} is not a maximal two-sided ideal")))
    }
}

/// Runs the whole correspondence on both the left and the right module
/// over one shared doily, and compares them level by level.
pub fn right_module_mirror(ring: &FiniteRing) -> Result<MirrorReport> {
    let radical = jacobson_radical(ring)?.members;
    let bijection = standard_bijection(radical, ring.zero())?;
    let doily = relabel_doily(&build_doily(), &bijection)?;
    let i_l = known_maximal(ring, &KNOWN_I_L)?;
    let i_r = known_maximal(ring, &KNOWN_I_R)?;
    let left = analyze_side(ring, Side::Left, &doily, &bijection, i_l)?;
    let right = analyze_side(ring, Side::Right, &doily, &bijection, i_r)?;
    let doily_points: BTreeSet<ModVector> = (0..doily.point_count())
        .filter_map(|p| vector_label(&doily, p))
        .collect();
    let report = MirrorReport {
        left_counts: SideCounts::of(&left),
        right_counts: SideCounts::of(&right),
        shared_doily: doily_points == nonzero_radical_vectors(radical, ring.zero()),
        left_in_i_l: left.membership.passed(),
        right_in_i_r: right.membership.passed(),
        left,
        right,
    };
    if report.left_counts != report.right_counts {
        return Err(Error::MirrorMismatch(format!(
            "left counts {:?} differ from right counts {:?}",
            report.left_counts, report.right_counts
        )));
    }
    Ok(report)
}
