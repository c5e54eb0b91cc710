use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use doily::correspondence::jacobson_trace;
use doily::export::{parse_submodule_table, render, to_json, write_artifacts, ExportFormat, ExportTarget};
use doily::free_module::{cyclic_submodule, ModVector, Side};
use doily::orbit_table::SubmoduleTable;
use doily::report::{verify_all_with, Pipeline};
use doily::ring::Label;
use doily::Error;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "doily",
    version,
    about = "Free cyclic submodules of a ring of order 16 and the doily"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check and write verification_report.json.
    VerifyAll {
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Golden orbit table in the `export traces --format table` layout.
        #[arg(long, hide = true)]
        golden_table: Option<PathBuf>,
    },
    /// Export ring-tables, census, doily, traces or core.
    Export {
        what: String,
        #[arg(long, default_value = "structured-report")]
        format: String,
        #[arg(long, default_value = "left")]
        side: Side,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify all 256 pairs and list the nonunimodular free submodules.
    Census {
        #[arg(long, default_value = "left")]
        side: Side,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the orbit of (a, b) and, for a nonunimodular free submodule,
    /// its trace in the doily.
    Trace {
        a: u8,
        b: u8,
        #[arg(long, default_value = "left")]
        side: Side,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn usage(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(EXIT_USAGE)
}

fn failed(err: impl std::fmt::Display) -> ExitCode {
    eprintln!("check failed: {err}");
    ExitCode::from(EXIT_FAILED)
}

/// Verification errors exit 1; everything else is a usage or environment
/// problem.
fn exit_for(err: Error) -> ExitCode {
    match err {
        Error::Io { .. }
        | Error::UnknownTarget(_)
        | Error::UnknownFormat(_)
        | Error::UnsupportedExport { .. }
        | Error::MalformedTable(_)
        | Error::Csv(_)
        | Error::Json(_) => usage(err),
        other => failed(other),
    }
}

fn verify(out: PathBuf, golden_table: Option<PathBuf>) -> ExitCode {
    let golden = match golden_table {
        Some(path) => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {e}", path.display())),
            };
            match parse_submodule_table(&text) {
                Ok(t) => t,
                Err(e) => return exit_for(e),
            }
        }
        None => SubmoduleTable::golden(),
    };
    let report = verify_all_with(&golden);
    for check in &report.checks {
        println!(
            "[{}] {}: {}",
            if check.passed { "PASS" } else { "FAIL" },
            check.name,
            check.detail
        );
    }
    let written = to_json(&report).and_then(|json| write_artifacts(&out, &[("verification_report.json".into(), json)]));
    match written {
        Ok(paths) => println!("report: {}", paths[0].display()),
        Err(e) => return exit_for(e),
    }
    match report.first_failure() {
        None => ExitCode::SUCCESS,
        Some(check) => failed(format!("{}: {}", check.name, check.detail)),
    }
}

fn export(what: &str, format: &str, side: Side, out: PathBuf) -> ExitCode {
    let result = (|| {
        let target: ExportTarget = what.parse()?;
        let format: ExportFormat = format.parse()?;
        let pipeline = Pipeline::new()?;
        write_artifacts(&out, &render(&pipeline, target, format, side)?)
    })();
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => exit_for(e),
    }
}

fn census(side: Side, out: Option<PathBuf>) -> ExitCode {
    let pipeline = match Pipeline::new() {
        Ok(p) => p,
        Err(e) => return exit_for(e),
    };
    let census = &pipeline.side(side).census;
    let c = &census.counts;
    println!("{side} module over the ring of order 16");
    println!("  unimodular pairs:                     {}", c.unimodular);
    println!(
        "  nonunimodular, free orbit:            {}",
        c.nonunimodular_free_generating
    );
    println!(
        "  nonunimodular, non-free orbit:        {}",
        c.nonunimodular_nonfree_generating
    );
    println!("  distinct free cyclic submodules:      {}", c.distinct_free_submodules);
    println!(
        "  distinct non-free cyclic submodules:  {}",
        c.distinct_nonfree_submodules
    );
    println!(
        "  nonunimodular free submodules:        {}",
        census.nonunimodular_free.len()
    );
    for class in &census.nonunimodular_free {
        let gens: Vec<String> = class.generators.iter().map(|g| g.to_string()).collect();
        println!("    R{}  generators {}", class.canonical_generator(), gens.join(" "));
    }
    if let Some(dir) = out {
        let artifacts = render(&pipeline, ExportTarget::Census, ExportFormat::StructuredReport, side)
            .and_then(|mut a| {
                a.extend(render(&pipeline, ExportTarget::Census, ExportFormat::Table, side)?);
                Ok(a)
            })
            .and_then(|a| write_artifacts(&dir, &a));
        if let Err(e) = artifacts {
            return exit_for(e);
        }
    }
    ExitCode::SUCCESS
}

fn trace(a: u8, b: u8, side: Side, out: Option<PathBuf>) -> ExitCode {
    let pipeline = match Pipeline::new() {
        Ok(p) => p,
        Err(e) => return exit_for(e),
    };
    let order = pipeline.ring.order() as u8;
    if a >= order || b >= order {
        return usage(format!("labels must be below {order}"));
    }
    let v = ModVector {
        a: Label(a),
        b: Label(b),
    };
    let sub = cyclic_submodule(&pipeline.ring, v, side);
    println!(
        "{side} R{v}: free {}, generator unimodular {}, contains unimodular {}",
        sub.is_free, sub.is_unimodular_generated, sub.contains_unimodular
    );
    for (alpha, w) in sub.vectors.iter().enumerate() {
        println!("  {alpha:>2}  {w}");
    }
    if !sub.is_free || sub.contains_unimodular {
        println!("not a nonunimodular free cyclic submodule; no trace");
        return ExitCode::SUCCESS;
    }
    let report = match jacobson_trace(&sub, &pipeline.doily) {
        Ok(t) => t,
        Err(e) => return exit_for(e),
    };
    let points: Vec<String> = report.trace_points.iter().map(|p| p.to_string()).collect();
    println!("trace: {}", points.join(" "));
    for line in &report.trace_line_points {
        let pts: Vec<String> = line.iter().map(|p| p.to_string()).collect();
        println!("  line {}", pts.join(" "));
    }
    let duad = pipeline
        .bijection
        .duad_of(report.concurrence_point)
        .map(|d| d.to_string())
        .unwrap_or_default();
    println!("concurrence point: {} {duad}", report.concurrence_point);
    if let Some(dir) = out {
        let name = format!("trace_{side}_{a}_{b}.json");
        if let Err(e) = to_json(&report).and_then(|json| write_artifacts(&dir, &[(name, json)])) {
            return exit_for(e);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyAll { out, golden_table } => verify(out, golden_table),
        Command::Export {
            what,
            format,
            side,
            out,
        } => export(&what, &format, side, out),
        Command::Census { side, out } => census(side, out),
        Command::Trace { a, b, side, out } => trace(a, b, side, out),
    }
}
