//! Exit criteria, one function each. Every check is exact.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use doily::correspondence::{nonzero_radical_vectors, right_module_mirror, MirrorReport};
use doily::export::{render, ExportFormat, ExportTarget};
use doily::free_module::{census, cyclic_submodule, is_unimodular_on, ModVector, Side};
use doily::incidence::{build_doily, build_grid_gq21, check_gq, find_isomorphism, verify_isomorphism};
use doily::orbit_table::{orbit_table_golden_check, GOLDEN_CELLS, GOLDEN_HEADERS};
use doily::report::{verify_all, Pipeline};
use doily::ring::{build_ring16, verify_ring_axioms, FiniteRing, Gf2Matrix3, Label};
use doily::structure::{
    jacobson_radical, jacobson_via_maximal_left_ideals, jacobson_via_quasi_regularity, maximal_two_sided_ideals, units,
    LabelSet,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ring() -> FiniteRing {
    build_ring16().expect("ring builds")
}

fn mirror() -> MirrorReport {
    right_module_mirror(&ring()).expect("mirror pipeline runs")
}

/// Labelling block as `(a, b, c, d)` for `[[a,c,d],[0,b,0],[0,0,b]]`.
const PARAMETERS: [(u8, u8, u8, u8); 16] = [
    (0, 0, 0, 0),
    (1, 1, 0, 0),
    (1, 1, 1, 0),
    (0, 0, 1, 0),
    (1, 1, 1, 1),
    (0, 0, 1, 1),
    (0, 0, 0, 1),
    (1, 1, 0, 1),
    (0, 1, 0, 0),
    (1, 0, 0, 0),
    (1, 0, 1, 0),
    (0, 1, 1, 0),
    (1, 0, 1, 1),
    (0, 1, 1, 1),
    (0, 1, 0, 1),
    (1, 0, 0, 1),
];

fn ac1_ring_reconstruction() -> Outcome {
    let ring = ring();
    ensure(ring.order() == 16, "order is not 16")?;
    for (label, &(a, b, c, d)) in PARAMETERS.iter().enumerate() {
        let want = Gf2Matrix3::from_rows([[a, c, d], [0, b, 0], [0, 0, b]]);
        let got = ring.element(Label(label as u8));
        ensure(got == want, format!("label {label}: {got:?} != {want:?}"))?;
    }
    let report = verify_ring_axioms(&ring);
    ensure(report.passed(), format!("axioms failed: {:?}", report.failed_axioms()))?;
    Ok("16 matrices match bit-for-bit; axioms hold over all 4096 triples".into())
}

fn ac2_units() -> Outcome {
    let u = units(&ring());
    ensure(u == LabelSet::from_raw(&[1, 2, 4, 7]), format!("units {u}"))?;
    Ok(format!("units {u}"))
}

fn ac3_ideals_and_radical() -> Outcome {
    let ring = ring();
    let found: BTreeSet<LabelSet> = maximal_two_sided_ideals(&ring)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|i| i.members)
        .collect();
    let known: BTreeSet<LabelSet> = [
        LabelSet::from_raw(&[0, 3, 5, 6, 8, 11, 13, 14]),
        LabelSet::from_raw(&[0, 3, 5, 6, 9, 10, 12, 15]),
    ]
    .into();
    ensure(found == known, format!("maximal two-sided ideals {found:?}"))?;
    let via_ideals = jacobson_via_maximal_left_ideals(&ring).map_err(|e| e.to_string())?;
    let via_qr = jacobson_via_quasi_regularity(&ring);
    let j = LabelSet::from_raw(&[0, 3, 5, 6]);
    ensure(via_ideals == j, format!("maximal-left-ideal route gives {via_ideals}"))?;
    ensure(via_qr == j, format!("quasi-regular route gives {via_qr}"))?;
    ensure(
        jacobson_radical(&ring).map(|r| r.members).ok() == Some(j),
        "jacobson_radical disagrees",
    )?;
    Ok(format!("maximal ideals I_l, I_r; J = {j} by both routes"))
}

fn ac4_census_and_orbit_table() -> Outcome {
    let ring = ring();
    let c = census(&ring, Side::Left).map_err(|e| e.to_string())?;
    ensure(
        c.nonunimodular_free.len() == 9,
        format!("{} submodules", c.nonunimodular_free.len()),
    )?;
    for h in GOLDEN_HEADERS {
        ensure(
            c.class_generated_by(h).is_some(),
            format!("header R{h} generates no census submodule"),
        )?;
    }
    let distinct: BTreeSet<_> = GOLDEN_HEADERS
        .iter()
        .map(|&h| c.class_generated_by(h).unwrap().canonical_generator())
        .collect();
    ensure(distinct.len() == 9, "two headers generate the same submodule")?;
    ensure(
        GOLDEN_CELLS[11][3] == ModVector::new(11, 11) && GOLDEN_CELLS[11][8] == ModVector::new(11, 0),
        "typographic cells",
    )?;
    let t = orbit_table_golden_check(&ring);
    ensure(
        t.passed(),
        format!("{} cells checked, mismatches {:?}", t.cells_checked, t.mismatches),
    )?;
    Ok(format!(
        "9 submodules contain the 9 headers; {} cells match",
        t.cells_checked
    ))
}

fn ac5_unimodular_implies_free() -> Outcome {
    let ring = ring();
    let mut unimodular = 0;
    let mut counterexamples = 0;
    for side in [Side::Left, Side::Right] {
        for a in ring.labels() {
            for b in ring.labels() {
                let v = ModVector { a, b };
                if is_unimodular_on(&ring, v, side) {
                    unimodular += 1;
                    if !cyclic_submodule(&ring, v, side).is_free {
                        counterexamples += 1;
                    }
                }
            }
        }
    }
    ensure(counterexamples == 0, format!("{counterexamples} counterexamples"))?;
    Ok(format!(
        "0 counterexamples over {unimodular} unimodular pairs (left + right)"
    ))
}

fn ac6_doily() -> Outcome {
    let d = build_doily();
    ensure(d.point_count() == 15 && d.line_count() == 15, "doily size")?;
    ensure(d.lines().iter().all(|l| l.len() == 3), "not 3-uniform")?;
    ensure((0..15).all(|p| d.degree(p) == 3), "not 3-regular")?;
    let gq = check_gq(&d, 2, 2);
    ensure(gq.passed(), format!("GQ(2,2) violations: {:?}", gq.violations))?;
    Ok("15 points, 15 lines, 3-regular, 3-uniform, GQ(2,2)".into())
}

fn ac7_traces() -> Outcome {
    let m = mirror();
    let traces = &m.left.traces;
    ensure(traces.len() == 9, "not nine traces")?;
    for t in traces {
        ensure(
            t.trace_points.len() == 7 && t.trace_lines.len() == 3,
            format!("R{} trace shape", t.generator),
        )?;
    }
    let r38 = traces
        .iter()
        .find(|t| t.generator == ModVector::new(3, 8))
        .ok_or("no R(3,8) trace")?;
    let want: BTreeSet<ModVector> = [(0, 3), (0, 5), (0, 6), (3, 0), (3, 3), (3, 5), (3, 6)]
        .iter()
        .map(|&(a, b)| ModVector::new(a, b))
        .collect();
    ensure(r38.trace_points == want, format!("R(3,8) trace {:?}", r38.trace_points))?;
    ensure(
        r38.concurrence_point == ModVector::new(0, 3),
        format!("R(3,8) centre {}", r38.concurrence_point),
    )?;
    Ok("nine 7-point traces on 3 concurrent lines; R(3,8) centred at (0,3)".into())
}

fn ac8_core() -> Outcome {
    let m = mirror();
    let core = &m.left.core;
    let want: std::collections::BTreeMap<usize, usize> = [(1, 9), (3, 6)].into();
    ensure(core.histogram == want, format!("histogram {:?}", core.histogram))?;
    ensure(core.concurrence_points.len() == 9, "concurrence points")?;
    for p in 0..core.core.point_count() {
        ensure(
            core.core.degree(p) == 2,
            format!("core point {} degree", core.core.label(p)),
        )?;
    }
    let grid = build_grid_gq21();
    let map = find_isomorphism(&core.core, &grid).ok_or("no grid isomorphism")?;
    ensure(
        verify_isomorphism(&core.core, &grid, &map),
        "isomorphism fails re-verification",
    )?;
    ensure(core.grid_isomorphism.len() == 9, "witness not emitted")?;
    ensure(check_gq(&core.core, 2, 1).passed(), "core is not GQ(2,1)")?;
    Ok(format!(
        "histogram {:?}; core ≅ 3×3 grid via {:?}",
        core.histogram, core.grid_isomorphism
    ))
}

fn ac9_triples() -> Outcome {
    let m = mirror();
    let t = &m.left.triples;
    ensure(
        t.triples.len() == 3 && t.triples.iter().all(|x| x.len() == 3),
        "not three triples",
    )?;
    let covered: BTreeSet<ModVector> = t.triples.iter().flatten().copied().collect();
    ensure(covered.len() == 9, "triples overlap or miss a submodule")?;
    ensure(t.intra_size > t.inter_size, "intra not larger than inter")?;
    Ok(format!(
        "triples {:?}; intra {} > inter {}",
        t.triples, t.intra_size, t.inter_size
    ))
}

fn ac10_membership_and_mirror() -> Outcome {
    let m = mirror();
    ensure(
        m.left_in_i_l,
        format!("left coordinates {}", m.left.membership.coordinates),
    )?;
    ensure(
        m.right_in_i_r,
        format!("right coordinates {}", m.right.membership.coordinates),
    )?;
    ensure(m.right.submodules.len() == 9, "right census")?;
    ensure(
        m.left_counts == m.right_counts,
        format!("{:?} vs {:?}", m.left_counts, m.right_counts),
    )?;
    ensure(m.shared_doily, "doily points differ from J² minus zero")?;
    let j = LabelSet::from_raw(&[0, 3, 5, 6]);
    let doily_points = nonzero_radical_vectors(j, Label(0));
    for t in &m.right.traces {
        ensure(t.trace_points.is_subset(&doily_points), "right trace leaves the doily")?;
    }
    ensure(
        m.left.core.concurrence_points == m.right.core.concurrence_points,
        "core point sets differ",
    )?;
    Ok(format!("left ⊆ I_l, right ⊆ I_r; counts {:?}", m.right_counts))
}

fn ac11_properties() -> Outcome {
    let ring = ring();
    for side in [Side::Left, Side::Right] {
        let c = census(&ring, side).map_err(|e| e.to_string())?;
        for (i, class) in c.nonunimodular_free.iter().enumerate() {
            for g in &class.generators {
                ensure(
                    cyclic_submodule(&ring, *g, side).distinct_vectors == class.submodule.distinct_vectors,
                    "generator of a class yields a different set",
                )?;
            }
            for other in &c.nonunimodular_free[i + 1..] {
                ensure(
                    other.submodule.distinct_vectors != class.submodule.distinct_vectors,
                    "duplicate class",
                )?;
            }
        }
    }
    let m = mirror();
    for side in [&m.left, &m.right] {
        for t in &side.traces {
            let per_line = t.trace_line_points[0].len() - 1;
            ensure(
                1 + t.trace_lines.len() * per_line == t.trace_points.len(),
                "1 + 3·2 ≠ 7",
            )?;
        }
        ensure(side.traces_cover_doily, "traces miss a doily point")?;
        let union: BTreeSet<ModVector> = side
            .traces
            .iter()
            .flat_map(|t| t.trace_points.iter().copied())
            .collect();
        ensure(union.len() == 15, "trace union is not 15 points")?;
    }
    let (a, b) = (
        Pipeline::new().map_err(|e| e.to_string())?,
        Pipeline::new().map_err(|e| e.to_string())?,
    );
    let mut artifacts = 0;
    for target in ["ring-tables", "census", "doily", "traces", "core"] {
        for format in ["structured-report", "table", "graph"] {
            for side in [Side::Left, Side::Right] {
                let (t, f): (ExportTarget, ExportFormat) = (target.parse().unwrap(), format.parse().unwrap());
                match (render(&a, t, f, side), render(&b, t, f, side)) {
                    (Ok(x), Ok(y)) => {
                        ensure(x == y, format!("{target}/{format} differs between runs"))?;
                        artifacts += x.len();
                    }
                    (Err(_), Err(_)) => {}
                    _ => return Err(format!("{target}/{format} succeeded only once")),
                }
            }
        }
    }
    let r1 = serde_json::to_string(&verify_all()).unwrap();
    let r2 = serde_json::to_string(&verify_all()).unwrap();
    ensure(r1 == r2, "verification report differs between runs")?;
    Ok(format!(
        "dedup sound, 1+3·2=7, traces cover 15 points, {artifacts} artifacts byte-identical"
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("AC-1 ring reconstruction", ac1_ring_reconstruction),
        ("AC-2 units", ac2_units),
        ("AC-3 maximal ideals and radical", ac3_ideals_and_radical),
        ("AC-4 census and orbit table", ac4_census_and_orbit_table),
        ("AC-5 unimodular implies free", ac5_unimodular_implies_free),
        ("AC-6 doily is GQ(2,2)", ac6_doily),
        ("AC-7 Jacobson traces", ac7_traces),
        ("AC-8 GQ(2,1) core", ac8_core),
        ("AC-9 triple partition", ac9_triples),
        ("AC-10 ideal membership and right mirror", ac10_membership_and_mirror),
        ("AC-11 property suite", ac11_properties),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                println!("[FAIL] {name}: {why}");
                failures.push(name);
            }
        }
    }
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(10);
    let timely = elapsed < budget;
    println!(
        "[{}] runtime {:.2?} (budget {budget:?})",
        if timely { "PASS" } else { "FAIL" },
        elapsed
    );
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
    assert!(timely, "acceptance suite took {elapsed:?}");
}
