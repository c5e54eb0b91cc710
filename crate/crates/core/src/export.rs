//! File exports: JSON reports, CSV tables and Levi graphs in DOT.
//!
//! Every renderer returns `(file name, contents)` pairs so that output is a
//! pure function of the pipeline; [`write_artifacts`] only touches the
//! requested directory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::correspondence::presented_submodules;
use crate::error::{Error, Result};
use crate::free_module::{ModVector, Side};
use crate::incidence::{IncidenceStructure, PointLabel};
use crate::orbit_table::SubmoduleTable;
use crate::report::Pipeline;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportTarget {
    RingTables,
    Census,
    Doily,
    Traces,
    Core,
}

impl FromStr for ExportTarget {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ring-tables" => Self::RingTables,
            "census" => Self::Census,
            "doily" => Self::Doily,
            "traces" => Self::Traces,
            "core" => Self::Core,
            other => return Err(Error::UnknownTarget(other.to_string())),
        })
    }
}

impl ExportTarget {
    fn name(self) -> &'static str {
        match self {
            Self::RingTables => "ring-tables",
            Self::Census => "census",
            Self::Doily => "doily",
            Self::Traces => "traces",
            Self::Core => "core",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    StructuredReport,
    Table,
    Graph,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "structured-report" => Self::StructuredReport,
            "table" => Self::Table,
            "graph" => Self::Graph,
            other => return Err(Error::UnknownFormat(other.to_string())),
        })
    }
}

impl ExportFormat {
    fn name(self) -> &'static str {
        match self {
            Self::StructuredReport => "structured-report",
            Self::Table => "table",
            Self::Graph => "graph",
        }
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("side must be `left` or `right`, got `{other}`")),
        }
    }
}

pub type Artifact = (String, String);

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn label_grid(symbol: &str, rows: &[Vec<crate::ring::Label>]) -> Result<String> {
    let header = std::iter::once(symbol.to_string())
        .chain((0..rows.len()).map(|i| i.to_string()))
        .collect::<Vec<_>>();
    csv_string(
        &header,
        rows.iter().enumerate().map(|(i, row)| {
            std::iter::once(i.to_string())
                .chain(row.iter().map(|l| l.to_string()))
                .collect()
        }),
    )
}

/// An orbit grid as CSV: `alpha,R(a,b),…` then sixteen rows.
pub fn submodule_table_csv(table: &SubmoduleTable) -> Result<String> {
    let header: Vec<String> = std::iter::once("alpha".to_string())
        .chain(table.headers.iter().map(|h| format!("R{h}")))
        .collect();
    csv_string(
        &header,
        table.cells.iter().enumerate().map(|(alpha, row)| {
            std::iter::once(alpha.to_string())
                .chain(row.iter().map(|v| v.to_string()))
                .collect()
        }),
    )
}

/// Parses the output of [`submodule_table_csv`].
pub fn parse_submodule_table(text: &str) -> Result<SubmoduleTable> {
    let bad = |msg: String| Error::MalformedTable(msg);
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r
        .headers()?
        .iter()
        .skip(1)
        .map(|h| h.strip_prefix('R').unwrap_or(h).parse::<ModVector>().map_err(bad))
        .collect::<Result<Vec<_>>>()?;
    let mut cells = Vec::new();
    for (i, record) in r.records().enumerate() {
        let record = record?;
        let alpha: usize = record
            .get(0)
            .and_then(|a| a.parse().ok())
            .ok_or_else(|| bad(format!("row {i}: bad alpha")))?;
        if alpha != i {
            return Err(bad(format!("row {i} labelled alpha {alpha}")));
        }
        let row = record
            .iter()
            .skip(1)
            .map(|c| c.parse::<ModVector>().map_err(bad))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != headers.len() {
            return Err(bad(format!(
                "row {i} has {} cells for {} columns",
                row.len(),
                headers.len()
            )));
        }
        cells.push(row);
    }
    Ok(SubmoduleTable { headers, cells })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Levi graph: circles for points, boxes for lines, one edge per incidence.
/// `emphasis` points are drawn as double circles.
pub fn levi_graph_dot(
    name: &str,
    structure: &IncidenceStructure,
    point_caption: impl Fn(usize) -> String,
    lines: &[usize],
    points: &[usize],
    emphasis: &[usize],
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", dot_escape(name));
    let _ = writeln!(out, "  node [fontname=\"Helvetica\"];");
    for &p in points {
        let shape = if emphasis.contains(&p) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  p{p} [label=\"{}\", shape={shape}];",
            dot_escape(&point_caption(p))
        );
    }
    for &i in lines {
        let caption: Vec<String> = structure.line_labels(i).iter().map(|l| l.to_string()).collect();
        let _ = writeln!(
            out,
            "  l{i} [label=\"L{i}: {}\", shape=box];",
            dot_escape(&caption.join(" "))
        );
    }
    for &i in lines {
        for &p in &structure.lines()[i] {
            let _ = writeln!(out, "  p{p} -- l{i};");
        }
    }
    out.push_str("}\n");
    out
}

fn unsupported(target: ExportTarget, format: ExportFormat) -> Error {
    Error::UnsupportedExport {
        target: target.name().into(),
        format: format.name().into(),
    }
}

/// Doily point caption: duad and vector.
fn doily_caption(p: &Pipeline) -> impl Fn(usize) -> String + '_ {
    move |i| format!("{}\n{}", p.duad_doily.label(i), p.doily.label(i))
}

fn lines_csv(structure: &IncidenceStructure, lines: &[usize], extra: impl Fn(usize) -> String) -> Result<String> {
    let header: Vec<String> = ["line", "p1", "p2", "p3", "note"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    csv_string(
        &header,
        lines.iter().map(|&i| {
            let mut row = vec![i.to_string()];
            row.extend(structure.line_labels(i).iter().map(|l| l.to_string()));
            row.push(extra(i));
            row
        }),
    )
}

pub fn render(p: &Pipeline, target: ExportTarget, format: ExportFormat, side: Side) -> Result<Vec<Artifact>> {
    let analysis = p.side(side);
    let all_points: Vec<usize> = (0..p.doily.point_count()).collect();
    let all_lines: Vec<usize> = (0..p.doily.line_count()).collect();
    Ok(match (target, format) {
        (ExportTarget::RingTables, ExportFormat::Table) => vec![
            ("add.csv".into(), label_grid("+", &p.ring.add_rows())?),
            ("mul.csv".into(), label_grid("*", &p.ring.mul_rows())?),
        ],
        (ExportTarget::RingTables, ExportFormat::StructuredReport) => {
            #[derive(Serialize)]
            struct Tables {
                elements: Vec<[[u8; 3]; 3]>,
                add: Vec<Vec<crate::ring::Label>>,
                mul: Vec<Vec<crate::ring::Label>>,
            }
            let t = Tables {
                elements: p.ring.elements().iter().map(|m| m.rows()).collect(),
                add: p.ring.add_rows(),
                mul: p.ring.mul_rows(),
            };
            vec![("ring_tables.json".into(), to_json(&t)?)]
        }
        (ExportTarget::Census, ExportFormat::Table) => {
            let header: Vec<String> = ["a", "b", "class"].iter().map(|s| s.to_string()).collect();
            let rows = analysis.census.classes.iter().map(|c| {
                vec![
                    c.vector.a.to_string(),
                    c.vector.b.to_string(),
                    c.class.as_str().to_string(),
                ]
            });
            vec![(format!("census_{side}.csv"), csv_string(&header, rows)?)]
        }
        (ExportTarget::Census, ExportFormat::StructuredReport) => {
            vec![(format!("census_{side}.json"), to_json(&analysis.census)?)]
        }
        (ExportTarget::Doily, ExportFormat::Graph) => vec![(
            "doily.dot".into(),
            levi_graph_dot("doily", &p.doily, doily_caption(p), &all_lines, &all_points, &[]),
        )],
        (ExportTarget::Doily, ExportFormat::Table) => {
            let synthemes = |i: usize| {
                let d: Vec<String> = p.duad_doily.line_labels(i).iter().map(|l| l.to_string()).collect();
                d.join(" ")
            };
            vec![("doily_lines.csv".into(), lines_csv(&p.doily, &all_lines, synthemes)?)]
        }
        (ExportTarget::Doily, ExportFormat::StructuredReport) => {
            #[derive(Serialize)]
            struct DoilyExport<'a> {
                duad_model: &'a IncidenceStructure,
                vector_model: &'a IncidenceStructure,
            }
            vec![(
                "doily.json".into(),
                to_json(&DoilyExport {
                    duad_model: &p.duad_doily,
                    vector_model: &p.doily,
                })?,
            )]
        }
        (ExportTarget::Traces, ExportFormat::Table) => {
            let subs = presented_submodules(&p.ring, &analysis.census);
            let headers: Vec<ModVector> = subs.iter().map(|s| s.generator).collect();
            let table = SubmoduleTable::computed(&p.ring, &headers, side);
            vec![(format!("traces_{side}.csv"), submodule_table_csv(&table)?)]
        }
        (ExportTarget::Traces, ExportFormat::StructuredReport) => {
            vec![(format!("traces_{side}.json"), to_json(&analysis.traces)?)]
        }
        (ExportTarget::Traces, ExportFormat::Graph) => analysis
            .traces
            .iter()
            .map(|t| {
                let index = |v: &ModVector| p.doily.index_of(&PointLabel::Vector(*v)).expect("trace point in doily");
                let points: Vec<usize> = t.trace_points.iter().map(index).collect();
                let name = format!("trace_{side}_{}_{}", t.generator.a, t.generator.b);
                let dot = levi_graph_dot(
                    &format!("R{}", t.generator),
                    &p.doily,
                    doily_caption(p),
                    &t.trace_lines,
                    &points,
                    &[index(&t.concurrence_point)],
                );
                (format!("{name}.dot"), dot)
            })
            .collect(),
        (ExportTarget::Core, ExportFormat::Graph) => {
            let points: Vec<usize> = analysis
                .core
                .concurrence_points
                .iter()
                .map(|v| p.doily.index_of(&PointLabel::Vector(*v)).expect("core point in doily"))
                .collect();
            vec![(
                format!("core_{side}.dot"),
                levi_graph_dot(
                    "core",
                    &p.doily,
                    doily_caption(p),
                    &analysis.core.distinguished_lines,
                    &points,
                    &[],
                ),
            )]
        }
        (ExportTarget::Core, ExportFormat::Table) => {
            vec![(
                format!("core_{side}.csv"),
                lines_csv(&p.doily, &analysis.core.distinguished_lines, |_| {
                    "multiplicity 3".into()
                })?,
            )]
        }
        (ExportTarget::Core, ExportFormat::StructuredReport) => {
            vec![(format!("core_{side}.json"), to_json(&analysis.core)?)]
        }
        (t @ (ExportTarget::RingTables | ExportTarget::Census), f @ ExportFormat::Graph) => {
            return Err(unsupported(t, f))
        }
    })
}

/// Writes artifacts into `dir`, creating it if needed.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    artifacts
        .iter()
        .map(|(name, contents)| {
            let path = dir.join(name);
            std::fs::write(&path, contents).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            Ok(path)
        })
        .collect()
}
