//! Run artifacts: trajectory CSV, machine-readable report and, for 2D
//! scenarios, an SVG overlay of map, planned paths and simulated tracks.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path as FsPath, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::experiment::{PairRun, RunReport};
use crate::nav::{Mode, Status};

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("cannot write {path}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn write_file(path: &FsPath, contents: &str) -> Result<(), OutputError> {
    fs::write(path, contents).map_err(|source| OutputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `scenario.json`, `report.json`, `trajectories.csv` and (2D only)
/// `overlay.svg` into `dir`. Returns the written paths.
pub fn emit_outputs(report: &RunReport, dir: &FsPath) -> Result<Vec<PathBuf>, OutputError> {
    fs::create_dir_all(dir).map_err(|source| OutputError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut written = Vec::new();

    let scenario_path = dir.join("scenario.json");
    write_file(&scenario_path, &report.scenario.to_json())?;
    written.push(scenario_path);

    let report_path = dir.join("report.json");
    write_file(&report_path, &render_report(report))?;
    written.push(report_path);

    let csv_path = dir.join("trajectories.csv");
    write_file(&csv_path, &render_csv(report))?;
    written.push(csv_path);

    if report.scenario.map.dims() == 2 {
        let svg_path = dir.join("overlay.svg");
        write_file(&svg_path, &render_svg(report))?;
        written.push(svg_path);
    }

    Ok(written)
}

// ---------------------------------------------------------------- report --

#[derive(Serialize)]
struct ReportDoc {
    schema_version: u32,
    scenario_hash: String,
    matrix: MatrixDoc,
    priority: PriorityDoc,
    unassigned_vehicles: Vec<String>,
    results: Vec<ResultDoc>,
}

#[derive(Serialize)]
struct MatrixDoc {
    targets: Vec<String>,
    vehicles: Vec<String>,
    /// Path lengths in metres; `null` marks an unreachable pair.
    raw: Vec<Vec<Option<f64>>>,
    normalized: Vec<Vec<Option<f64>>>,
}

#[derive(Serialize)]
struct PriorityDoc {
    pairs: Vec<PairDoc>,
    entries_inspected: usize,
}

#[derive(Serialize)]
struct PairDoc {
    target: String,
    vehicle: String,
    value: f64,
}

#[derive(Serialize)]
struct ResultDoc {
    pair: String,
    target: String,
    vehicle: String,
    mode: Mode,
    status: StatusDoc,
    planned_length: f64,
    traveled: f64,
    max_cross_track: f64,
    samples: usize,
    saturated_steps: usize,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum StatusDoc {
    Reached { distance: f64 },
    Collision { position: Vec<f64>, time: f64 },
    Failed { reason: crate::nav::FailReason },
}

fn finite_or_none(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn render_report(report: &RunReport) -> String {
    let scenario = &report.scenario;
    let doc = ReportDoc {
        schema_version: crate::scenario::SCHEMA_VERSION,
        scenario_hash: report.scenario_hash.clone(),
        matrix: MatrixDoc {
            targets: scenario.targets.iter().map(|e| e.id.clone()).collect(),
            vehicles: scenario.vehicles.iter().map(|e| e.id.clone()).collect(),
            raw: report
                .matrix
                .raw()
                .iter()
                .map(|row| row.iter().map(|&v| finite_or_none(v)).collect())
                .collect(),
            normalized: report
                .matrix
                .normalized()
                .iter()
                .map(|row| row.iter().map(|&v| finite_or_none(v)).collect())
                .collect(),
        },
        priority: PriorityDoc {
            pairs: report
                .priority
                .pairs
                .iter()
                .map(|p| PairDoc {
                    target: scenario.targets[p.target].id.clone(),
                    vehicle: scenario.vehicles[p.vehicle].id.clone(),
                    value: p.value,
                })
                .collect(),
            entries_inspected: report.priority.entries_inspected,
        },
        unassigned_vehicles: report
            .unassigned_vehicles
            .iter()
            .map(|&v| scenario.vehicles[v].id.clone())
            .collect(),
        results: report
            .runs
            .iter()
            .map(|run| ResultDoc {
                pair: run.pair_label(),
                target: run.target_id.clone(),
                vehicle: run.vehicle_id.clone(),
                mode: run.mode,
                status: match &run.outcome.status {
                    Status::Reached { distance } => StatusDoc::Reached {
                        distance: *distance,
                    },
                    Status::Collision { position, time } => StatusDoc::Collision {
                        position: position.as_slice().to_vec(),
                        time: *time,
                    },
                    Status::Failed { reason } => StatusDoc::Failed { reason: *reason },
                },
                planned_length: run.path.length(),
                traveled: run.record.traveled,
                max_cross_track: run.outcome.max_cross_track,
                samples: run.record.samples.len(),
                saturated_steps: run.record.saturated_steps,
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serializes");
    out.push('\n');
    out
}

// ------------------------------------------------------------------- csv --

fn render_csv(report: &RunReport) -> String {
    let dims = report.scenario.map.dims() as usize;
    let axes = ["x", "y", "z"];
    let mut out = String::from("t");
    for group in ["pos", "cmd", "cur", "act"] {
        for axis in &axes[..dims] {
            let _ = write!(out, ",{group}_{axis}");
        }
    }
    out.push_str(",mode,pair\n");

    for run in &report.runs {
        let pair = run.pair_label();
        for s in &run.record.samples {
            let _ = write!(out, "{}", s.t);
            for v in [&s.position, &s.commanded, &s.current, &s.actual] {
                for c in v.as_slice() {
                    let _ = write!(out, ",{c}");
                }
            }
            let _ = writeln!(out, ",{},{}", run.mode, pair);
        }
    }
    out
}

// ------------------------------------------------------------------- svg --

const SVG_SCALE: f64 = 30.0;
const SVG_MARGIN: f64 = 20.0;

struct SvgFrame {
    height_m: f64,
}

impl SvgFrame {
    fn x(&self, x_m: f64) -> f64 {
        SVG_MARGIN + x_m * SVG_SCALE
    }
    // SVG y grows downward; scenario y grows upward.
    fn y(&self, y_m: f64) -> f64 {
        SVG_MARGIN + (self.height_m - y_m) * SVG_SCALE
    }
}

fn mode_color(mode: Mode) -> &'static str {
    match mode {
        Mode::Bnnp => "#e6821e",
        Mode::Cbnntap => "#1e78c8",
    }
}

fn polyline(points: impl Iterator<Item = (f64, f64)>, style: &str) -> String {
    let mut coords = String::new();
    for (x, y) in points {
        let _ = write!(coords, "{x:.2},{y:.2} ");
    }
    format!("<polyline points=\"{}\" {style}/>\n", coords.trim_end())
}

fn render_svg(report: &RunReport) -> String {
    let map = &report.scenario.map;
    let extent = map.extent();
    let (w_m, h_m) = (extent[0] as f64, extent[1] as f64);
    let frame = SvgFrame { height_m: h_m };
    let width = w_m * SVG_SCALE + 2.0 * SVG_MARGIN;
    let height = h_m * SVG_SCALE + 2.0 * SVG_MARGIN;

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    );

    // grid
    for i in 0..=extent[0] {
        let x = frame.x(i as f64);
        let _ = writeln!(
            svg,
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>",
            frame.y(0.0),
            frame.y(h_m)
        );
    }
    for j in 0..=extent[1] {
        let y = frame.y(j as f64);
        let _ = writeln!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>",
            frame.x(0.0),
            frame.x(w_m)
        );
    }

    // obstacles
    for c in map.obstacles() {
        let x = frame.x(c.coords()[0] as f64);
        let y = frame.y(c.coords()[1] as f64 + 1.0);
        let _ = writeln!(
            svg,
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{SVG_SCALE}\" height=\"{SVG_SCALE}\" fill=\"#404040\"/>"
        );
    }

    // planned paths (one per assigned pair, independent of mode)
    let mut seen: Vec<&PairRun> = Vec::new();
    for run in &report.runs {
        if seen.iter().any(|r| r.target == run.target) {
            continue;
        }
        seen.push(run);
        svg.push_str(&polyline(
            run.path
                .waypoints()
                .iter()
                .map(|c| (frame.x(c.center()[0]), frame.y(c.center()[1]))),
            "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"4 3\"",
        ));
    }

    // simulated trajectories
    for run in &report.runs {
        let style = format!(
            "fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\"",
            mode_color(run.mode)
        );
        svg.push_str(&polyline(
            run.record
                .samples
                .iter()
                .map(|s| (frame.x(s.position[0]), frame.y(s.position[1]))),
            &style,
        ));
        if let Status::Collision { position, .. } = &run.outcome.status {
            let (x, y) = (frame.x(position[0]), frame.y(position[1]));
            let _ = writeln!(
                svg,
                "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"5\" fill=\"#f0c000\" stroke=\"black\"/>"
            );
        }
    }

    // endpoints and labels
    for e in &report.scenario.vehicles {
        let c = e.cell.center();
        let _ = write!(
            svg,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"10\" height=\"10\" fill=\"#2050c0\"/>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
            frame.x(c[0]) - 5.0,
            frame.y(c[1]) - 5.0,
            frame.x(c[0]) + 7.0,
            frame.y(c[1]) - 7.0,
            e.id
        );
    }
    for e in &report.scenario.targets {
        let c = e.cell.center();
        let _ = write!(
            svg,
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"10\" height=\"10\" fill=\"#c03030\"/>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\">{}</text>\n",
            frame.x(c[0]) - 5.0,
            frame.y(c[1]) - 5.0,
            frame.x(c[0]) + 7.0,
            frame.y(c[1]) - 7.0,
            e.id
        );
    }

    svg.push_str("</svg>\n");
    svg
}
