//! Data-file rendering: CSV with a trailing summary block, JSON with an
//! embedded manifest, and the manifest itself.
//!
//! The checksum recorded in every manifest is the SHA-256 of the canonical
//! CSV rendering of the data, so CSV and JSON runs of the same computation
//! carry the same fingerprint.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::fmt::{round12, sig12};
use super::Failure;
use crate::trajectory::{ClosurePhase, Trajectory};

/// A traced trajectory plus its validated summary values.
pub struct TraceReport<'a> {
    pub traj: &'a Trajectory,
    pub breaks: usize,
    pub closure: ClosurePhase,
    pub parity: Option<bool>,
}

/// Emitted with every run; re-running the same command reproduces
/// byte-identical data files.
#[derive(Serialize)]
struct RunManifest {
    command: &'static str,
    version: &'static str,
    parameters: serde_json::Value,
    sample_count: usize,
    data_sha256: String,
}

#[derive(Serialize)]
struct JsonSample {
    t: f64,
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
    kx: f64,
    ky: f64,
    kz: f64,
    a: f64,
    sheet: i8,
    break_flag: u8,
}

#[derive(Serialize)]
struct JsonSummary {
    breaks: usize,
    closure_phase: String,
    parity_ok: Option<bool>,
}

#[derive(Serialize)]
struct TraceDocument {
    manifest: RunManifest,
    samples: Vec<JsonSample>,
    summary: JsonSummary,
}

pub fn parity_label(parity: Option<bool>) -> &'static str {
    match parity {
        Some(true) => "true",
        Some(false) => "false",
        None => "n/a",
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn break_flags(traj: &Trajectory) -> Vec<u8> {
    let mut flags = vec![0u8; traj.samples.len()];
    for (flag, pair) in flags[1..].iter_mut().zip(traj.samples.windows(2)) {
        if pair[1].point.sheet != pair[0].point.sheet {
            *flag = 1;
        }
    }
    flags
}

/// Canonical CSV rendering: the fixed header, one row per sample with
/// twelve-significant-digit floats, then the summary block as `#` lines.
fn render_trace_csv(report: &TraceReport) -> String {
    let mut text = String::new();
    text.push_str("t,alpha_re,alpha_im,beta_re,beta_im,kx,ky,kz,a,sheet,break_flag\n");
    let flags = break_flags(report.traj);
    for (sample, flag) in report.traj.samples.iter().zip(&flags) {
        let m = &sample.mes;
        let p = &sample.point;
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            sig12(sample.t),
            sig12(m.alpha().re),
            sig12(m.alpha().im),
            sig12(m.beta().re),
            sig12(m.beta().im),
            sig12(p.axis[0]),
            sig12(p.axis[1]),
            sig12(p.axis[2]),
            sig12(p.angle),
            p.sheet,
            flag,
        ));
    }
    text.push_str("# summary\n");
    text.push_str(&format!("# breaks,{}\n", report.breaks));
    text.push_str(&format!("# closure_phase,{}\n", report.closure));
    text.push_str(&format!("# parity_ok,{}\n", parity_label(report.parity)));
    text
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

fn trace_manifest(
    report: &TraceReport,
    parameters: serde_json::Value,
    data_sha256: String,
) -> RunManifest {
    RunManifest {
        command: "trace",
        version: env!("CARGO_PKG_VERSION"),
        parameters,
        sample_count: report.traj.samples.len(),
        data_sha256,
    }
}

/// Writes the CSV data file plus its manifest sidecar; returns the paths.
pub fn write_trace_csv(
    out: &Path,
    report: &TraceReport,
    parameters: serde_json::Value,
) -> Result<Vec<PathBuf>, Failure> {
    let csv = render_trace_csv(report);
    let manifest = trace_manifest(report, parameters, sha256_hex(csv.as_bytes()));
    std::fs::write(out, csv)?;
    let sidecar = manifest_path(out);
    std::fs::write(&sidecar, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(vec![out.to_path_buf(), sidecar])
}

/// Writes the JSON document (manifest, samples, summary) in one file.
pub fn write_trace_json(
    out: &Path,
    report: &TraceReport,
    parameters: serde_json::Value,
) -> Result<Vec<PathBuf>, Failure> {
    let csv = render_trace_csv(report);
    let manifest = trace_manifest(report, parameters, sha256_hex(csv.as_bytes()));
    let flags = break_flags(report.traj);
    let samples = report
        .traj
        .samples
        .iter()
        .zip(&flags)
        .map(|(s, flag)| JsonSample {
            t: round12(s.t),
            alpha_re: round12(s.mes.alpha().re),
            alpha_im: round12(s.mes.alpha().im),
            beta_re: round12(s.mes.beta().re),
            beta_im: round12(s.mes.beta().im),
            kx: round12(s.point.axis[0]),
            ky: round12(s.point.axis[1]),
            kz: round12(s.point.axis[2]),
            a: round12(s.point.angle),
            sheet: s.point.sheet,
            break_flag: *flag,
        })
        .collect();
    let document = TraceDocument {
        manifest,
        samples,
        summary: JsonSummary {
            breaks: report.breaks,
            closure_phase: report.closure.to_string(),
            parity_ok: report.parity,
        },
    };
    std::fs::write(out, serde_json::to_string_pretty(&document)? + "\n")?;
    Ok(vec![out.to_path_buf()])
}

/// Writes a ratio/intensity scan with its manifest sidecar.
pub fn write_scan_csv(
    out: &Path,
    rows: &[(f64, f64)],
    parameters: serde_json::Value,
) -> Result<Vec<PathBuf>, Failure> {
    let mut csv = String::from("ratio,intensity\n");
    for (ratio, intensity) in rows {
        csv.push_str(&format!("{},{}\n", sig12(*ratio), sig12(*intensity)));
    }
    let manifest = RunManifest {
        command: "optics",
        version: env!("CARGO_PKG_VERSION"),
        parameters,
        sample_count: rows.len(),
        data_sha256: sha256_hex(csv.as_bytes()),
    };
    std::fs::write(out, csv)?;
    let sidecar = manifest_path(out);
    std::fs::write(&sidecar, serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(vec![out.to_path_buf(), sidecar])
}
