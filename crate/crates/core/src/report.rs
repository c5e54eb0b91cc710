//! The end-to-end verification pipeline and its aggregate report.

use serde::Serialize;

use crate::correspondence::{
    relabel_doily, right_module_mirror, standard_bijection, DuadVectorBijection, MirrorReport, SideAnalysis,
};
use crate::error::Result;
use crate::free_module::{nonunimodular_definitions_agree, ClassCounts, ModVector, Side};
use crate::incidence::{build_doily, check_gq, GqReport, IncidenceStructure};
use crate::orbit_table::{orbit_table_check_against, OrbitTableReport, SubmoduleTable, GOLDEN_HEADERS};
use crate::ring::{build_ring16, verify_ring_axioms, AxiomReport, FiniteRing};
use crate::structure::{structure_report, LabelSet, StructureReport, KNOWN_I_L, KNOWN_I_R, KNOWN_J};

/// Everything the commands need, computed once.
pub struct Pipeline {
    pub ring: FiniteRing,
    pub structure: StructureReport,
    pub bijection: DuadVectorBijection,
    pub duad_doily: IncidenceStructure,
    pub doily: IncidenceStructure,
    pub mirror: MirrorReport,
}

impl Pipeline {
    pub fn new() -> Result<Self> {
        let ring = build_ring16()?;
        let structure = structure_report(&ring)?;
        let bijection = standard_bijection(structure.jacobson, ring.zero())?;
        let duad_doily = build_doily();
        let doily = relabel_doily(&duad_doily, &bijection)?;
        let mirror = right_module_mirror(&ring)?;
        Ok(Self {
            ring,
            structure,
            bijection,
            duad_doily,
            doily,
            mirror,
        })
    }

    pub fn side(&self, side: Side) -> &SideAnalysis {
        match side {
            Side::Left => &self.mirror.left,
            Side::Right => &self.mirror.right,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusSummary {
    pub side: Side,
    pub counts: ClassCounts,
    pub nonunimodular_free_generators: Vec<Vec<ModVector>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub overall_pass: bool,
    pub checks: Vec<Check>,
    pub ring_axioms: Option<AxiomReport>,
    pub structure: Option<StructureReport>,
    pub census: Vec<CensusSummary>,
    pub orbit_table: Option<OrbitTableReport>,
    pub doily_gq: Option<GqReport>,
    pub relabeled_doily_gq: Option<GqReport>,
    pub bijection: Option<DuadVectorBijection>,
    pub mirror: Option<MirrorReport>,
}

impl VerificationReport {
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn record(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

/// Every element has the shape `[[a,c,d],[0,b,0],[0,0,b]]` and the sixteen
/// are distinct.
fn matrix_form_holds(ring: &FiniteRing) -> bool {
    let shaped = ring.elements().iter().all(|m| {
        let r = m.rows();
        r[1] == [0, r[1][1], 0] && r[2] == [0, 0, r[1][1]]
    });
    let distinct: std::collections::BTreeSet<_> = ring.elements().iter().collect();
    shaped && distinct.len() == 16
}

/// Runs the whole pipeline with the transcribed orbit table as golden data.
pub fn verify_all() -> VerificationReport {
    verify_all_with(&SubmoduleTable::golden())
}

/// Runs the whole pipeline, checking the orbit table against `golden`. Failures are
/// recorded as checks rather than returned as errors.
pub fn verify_all_with(golden: &SubmoduleTable) -> VerificationReport {
    let mut checks = Checks::default();
    let mut report = VerificationReport {
        overall_pass: false,
        checks: Vec::new(),
        ring_axioms: None,
        structure: None,
        census: Vec::new(),
        orbit_table: None,
        doily_gq: None,
        relabeled_doily_gq: None,
        bijection: None,
        mirror: None,
    };
    let finish = |mut report: VerificationReport, checks: Checks| {
        report.overall_pass = !checks.0.is_empty() && checks.0.iter().all(|c| c.passed);
        report.checks = checks.0;
        report
    };

    let ring = match build_ring16() {
        Ok(r) => r,
        Err(e) => {
            checks.record("ring.build", false, e.to_string());
            return finish(report, checks);
        }
    };
    checks.record("ring.build", true, "16 elements, tables closed");
    checks.record(
        "ring.matrix_form",
        matrix_form_holds(&ring),
        "elements are [[a,c,d],[0,b,0],[0,0,b]]",
    );
    let axioms = verify_ring_axioms(&ring);
    let detail = match axioms.failed_axioms() {
        failed if failed.is_empty() => format!("all {} axioms hold", axioms.checks.len()),
        failed => format!("failed: {failed:?}"),
    };
    checks.record("ring.axioms", axioms.passed(), detail);
    report.ring_axioms = Some(axioms);

    let structure = match structure_report(&ring) {
        Ok(s) => s,
        Err(e) => {
            checks.record("structure.jacobson", false, e.to_string());
            return finish(report, checks);
        }
    };
    checks.record(
        "structure.units",
        structure.units == LabelSet::from_raw(&[1, 2, 4, 7]),
        format!("units {}", structure.units),
    );
    let mut known_max = vec![LabelSet::from_raw(&KNOWN_I_L), LabelSet::from_raw(&KNOWN_I_R)];
    known_max.sort();
    let mut computed_max = structure.maximal_two_sided.clone();
    computed_max.sort();
    checks.record(
        "structure.maximal_ideals",
        computed_max == known_max,
        format!("maximal two-sided ideals {computed_max:?}"),
    );
    checks.record(
        "structure.jacobson",
        structure.jacobson == LabelSet::from_raw(&KNOWN_J) && structure.jacobson_is_two_sided,
        format!("radical {} (two methods agree)", structure.jacobson),
    );
    report.structure = Some(structure.clone());

    let orbit_table = orbit_table_check_against(&ring, golden);
    let detail = match orbit_table.mismatches.first() {
        Some(m) => format!(
            "{} mismatching cells; first at column R{} alpha {}: expected {}, computed {}",
            orbit_table.mismatches.len(),
            m.column,
            m.alpha,
            m.expected,
            m.computed
        ),
        None => format!("{} cells match", orbit_table.cells_checked),
    };
    checks.record("orbit_table.cells", orbit_table.passed(), detail);
    report.orbit_table = Some(orbit_table);

    for side in [Side::Left, Side::Right] {
        let name = match side {
            Side::Left => "census.definitions_agree_left",
            Side::Right => "census.definitions_agree_right",
        };
        checks.record(
            name,
            nonunimodular_definitions_agree(&ring, side),
            "both phrasings select the same submodules",
        );
    }

    let doily = build_doily();
    let gq = check_gq(&doily, 2, 2);
    checks.record(
        "doily.gq22",
        gq.passed() && gq.points == 15 && gq.lines == 15,
        format!(
            "{} points, {} lines, {} violations",
            gq.points,
            gq.lines,
            gq.violations.len()
        ),
    );
    report.doily_gq = Some(gq);

    let bijection = match standard_bijection(structure.jacobson, ring.zero()) {
        Ok(b) => b,
        Err(e) => {
            checks.record("correspondence.bijection", false, e.to_string());
            return finish(report, checks);
        }
    };
    checks.record("correspondence.bijection", true, "15 duads onto J² minus zero");
    if let Ok(relabeled) = relabel_doily(&doily, &bijection) {
        let gq = check_gq(&relabeled, 2, 2);
        checks.record(
            "doily.relabeled_gq22",
            gq.passed(),
            format!("{} violations", gq.violations.len()),
        );
        report.relabeled_doily_gq = Some(gq);
    }
    report.bijection = Some(bijection);

    let mirror = match right_module_mirror(&ring) {
        Ok(m) => m,
        Err(e) => {
            checks.record("correspondence.pipeline", false, e.to_string());
            return finish(report, checks);
        }
    };
    let left = &mirror.left;
    checks.record(
        "census.nine_left",
        left.census.nonunimodular_free.len() == 9,
        format!("{} nonunimodular free submodules", left.census.nonunimodular_free.len()),
    );
    let headers_found = GOLDEN_HEADERS
        .iter()
        .all(|h| left.census.class_generated_by(*h).is_some());
    checks.record(
        "census.golden_headers",
        headers_found,
        "every golden header generates a census submodule",
    );
    checks.record(
        "correspondence.traces",
        left.traces.len() == 9,
        "nine traces of seven points on three concurrent lines",
    );
    checks.record(
        "correspondence.traces_cover_doily",
        left.traces_cover_doily,
        "union of traces is the whole doily",
    );
    checks.record(
        "correspondence.core",
        left.core.gq21.passed(),
        format!("histogram {:?}, core isomorphic to the grid", left.core.histogram),
    );
    checks.record(
        "correspondence.triples",
        left.triples.triples.len() == 3,
        format!("intra {} > inter {}", left.triples.intra_size, left.triples.inter_size),
    );
    checks.record(
        "correspondence.i_l_membership",
        mirror.left_in_i_l,
        format!("coordinates {}", left.membership.coordinates),
    );
    checks.record(
        "mirror.right",
        mirror.passed(),
        format!(
            "right: {} submodules, coordinates {}, shared doily {}",
            mirror.right.submodules.len(),
            mirror.right.membership.coordinates,
            mirror.shared_doily
        ),
    );
    report.census = [&mirror.left, &mirror.right]
        .iter()
        .map(|a| CensusSummary {
            side: a.side,
            counts: a.census.counts.clone(),
            nonunimodular_free_generators: a
                .census
                .nonunimodular_free
                .iter()
                .map(|c| c.generators.iter().copied().collect())
                .collect(),
        })
        .collect();
    report.mirror = Some(mirror);
    finish(report, checks)
}
