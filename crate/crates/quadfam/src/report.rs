//! Deterministic serialization: JSON and CSV writers with floats rendered at
//! 17 significant digits (exact `f64` round-trip), and the run manifest that
//! makes every invocation replayable byte-for-byte.
//!
//! Writers emit through strings built in a fixed order; no maps, no
//! timestamps, no locale. Re-running a manifest reproduces identical bytes.

use crate::bc::{CEReport, ReturnItinerary, ReturnKind};
use crate::experiments::{ConvergenceTable, DiscontinuityDemo, LandingTable, ScanRow};
use crate::measures::{DensityHistogram, EmpiricalMeasure, MeasureError};
use crate::param::{ContinuationPath, PeriodicOrbit, Stability};
use sha2::{Digest, Sha256};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Render a float with 17 significant digits; `null` for non-finite values
/// (JSON has no representation for them).
pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else {
        "null".to_string()
    }
}

/// CSV cell for a float: same 17-digit rendering, `inf`/`nan` spelled out.
pub fn fmt_float_csv(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x)
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn opt_usize(v: Option<usize>) -> String {
    match v {
        Some(x) => x.to_string(),
        None => "null".to_string(),
    }
}

/// A measure as a JSON array of `[position, weight]` pairs.
pub fn measure_to_json(mu: &EmpiricalMeasure) -> String {
    let mut out = String::from("[");
    for (i, &(x, w)) in mu.atoms().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("[{},{}]", fmt_float(x), fmt_float(w)));
    }
    out.push(']');
    out
}

/// Parse a measure back from the `[[position, weight], ...]` form.
pub fn measure_from_json(text: &str) -> Result<EmpiricalMeasure, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let arr = value.as_array().ok_or("expected a JSON array")?;
    let mut atoms = Vec::with_capacity(arr.len());
    for pair in arr {
        let p = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or("expected [position, weight] pairs")?;
        let x = p[0].as_f64().ok_or("position must be a number")?;
        let w = p[1].as_f64().ok_or("weight must be a number")?;
        atoms.push((x, w));
    }
    EmpiricalMeasure::from_atoms(atoms).map_err(|e: MeasureError| e.to_string())
}

/// Histogram as CSV `(bin_left, bin_right, mass)`.
pub fn histogram_to_csv(h: &DensityHistogram) -> String {
    let mut out = String::from("bin_left,bin_right,mass\n");
    for (i, &m) in h.masses.iter().enumerate() {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_float_csv(h.bin_edges[i]),
            fmt_float_csv(h.bin_edges[i + 1]),
            fmt_float_csv(m)
        ));
    }
    out
}

/// Solver result record `{kind, a, period, residual, multiplier}`.
pub fn solver_record_json(
    kind: &str,
    a: f64,
    a_decimal: &str,
    period: usize,
    residual: f64,
    multiplier: f64,
) -> String {
    format!(
        "{{\"kind\":{},\"a\":{},\"a_decimal\":{},\"period\":{},\"residual\":{},\"multiplier\":{}}}",
        json_string(kind),
        fmt_float(a),
        json_string(a_decimal),
        period,
        fmt_float(residual),
        fmt_float(multiplier)
    )
}

pub fn orbit_to_json(orbit: &PeriodicOrbit) -> String {
    let stability = match orbit.stability {
        Stability::Attracting => "attracting",
        Stability::Superstable => "superstable",
        Stability::Repelling => "repelling",
        Stability::Neutral => "neutral",
    };
    let pts: Vec<String> = orbit.points.iter().map(|&x| fmt_float(x)).collect();
    format!(
        "{{\"a\":{},\"period\":{},\"multiplier\":{},\"stability\":{},\"points\":[{}]}}",
        fmt_float(orbit.a.get()),
        orbit.period,
        fmt_float(orbit.multiplier),
        json_string(stability),
        pts.join(",")
    )
}

pub fn path_to_json(path: &ContinuationPath) -> String {
    let nodes: Vec<String> = path
        .nodes
        .iter()
        .map(|(a, o)| format!("{{\"a\":{},\"orbit\":{}}}", fmt_float(*a), orbit_to_json(o)))
        .collect();
    format!("{{\"period\":{},\"nodes\":[{}]}}", path.period(), nodes.join(","))
}

/// Growth report `{depth, min_exponent, first_violation, recurrence_violations}`.
pub fn ce_report_to_json(r: &CEReport) -> String {
    let viols: Vec<String> = r.recurrence_violations.iter().map(|v| v.to_string()).collect();
    format!(
        "{{\"depth\":{},\"min_exponent\":{},\"first_violation\":{},\"recurrence_violations\":[{}]}}",
        r.depth,
        fmt_float(r.min_exponent),
        opt_usize(r.first_violation),
        viols.join(",")
    )
}

fn kind_label(k: ReturnKind) -> &'static str {
    match k {
        ReturnKind::EssentialFree => "essential_free",
        ReturnKind::InessentialFree => "inessential_free",
        ReturnKind::BoundReturn => "bound_return",
        ReturnKind::Escape => "escape",
    }
}

/// Itinerary as a JSON event stream.
pub fn itinerary_to_json(it: &ReturnItinerary) -> String {
    let mut events = Vec::with_capacity(it.events.len());
    for e in &it.events {
        let (mu, nu, extended) = match e.index {
            Some(idx) => (idx.mu.to_string(), idx.nu.to_string(), idx.extended.to_string()),
            None => ("null".into(), "null".into(), "null".into()),
        };
        events.push(format!(
            "{{\"time\":{},\"kind\":{},\"mu\":{},\"nu\":{},\"extended\":{},\"hull_lo\":{},\"hull_hi\":{},\"monotone\":{},\"samples\":{}}}",
            e.time,
            json_string(kind_label(e.kind)),
            mu,
            nu,
            extended,
            fmt_float(e.hull.hull_lo),
            fmt_float(e.hull.hull_hi),
            e.hull.monotone,
            e.hull.samples
        ));
    }
    let bps: Vec<String> = it
        .bound_periods
        .iter()
        .map(|(s, p)| format!("[{s},{p}]"))
        .collect();
    format!(
        "{{\"n_max\":{},\"events\":[{}],\"bound_periods\":[{}]}}",
        it.n_max,
        events.join(","),
        bps.join(",")
    )
}

/// Convergence table as CSV `(n, a_n, period, w1, residual)`.
pub fn table_to_csv(t: &ConvergenceTable) -> String {
    let mut out = String::from("n,a_n,period,w1,residual\n");
    for r in &t.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            fmt_float_csv(r.a_n),
            r.period,
            fmt_float_csv(r.w1),
            fmt_float_csv(r.residual)
        ));
    }
    out
}

pub fn table_to_json(t: &ConvergenceTable) -> String {
    let rows: Vec<String> = t
        .rows
        .iter()
        .map(|r| {
            format!(
                "{{\"n\":{},\"a_n\":{},\"a_decimal\":{},\"period\":{},\"w1\":{},\"residual\":{}}}",
                r.n,
                fmt_float(r.a_n),
                json_string(&r.a_decimal),
                r.period,
                fmt_float(r.w1),
                fmt_float(r.residual)
            )
        })
        .collect();
    let notes: Vec<String> = t.notes.iter().map(|n| json_string(n)).collect();
    format!("{{\"rows\":[{}],\"notes\":[{}]}}", rows.join(","), notes.join(","))
}

pub fn landing_table_to_csv(t: &LandingTable) -> String {
    let mut out = String::from("N,a_hat,distance,residual\n");
    for r in &t.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.n_steps,
            fmt_float_csv(r.a_hat),
            fmt_float_csv(r.distance),
            fmt_float_csv(r.residual)
        ));
    }
    out
}

pub fn landing_table_to_json(t: &LandingTable) -> String {
    let rows: Vec<String> = t
        .rows
        .iter()
        .map(|r| {
            format!(
                "{{\"N\":{},\"a_hat\":{},\"distance\":{},\"residual\":{}}}",
                r.n_steps,
                fmt_float(r.a_hat),
                fmt_float(r.distance),
                fmt_float(r.residual)
            )
        })
        .collect();
    let notes: Vec<String> = t.notes.iter().map(|n| json_string(n)).collect();
    format!("{{\"rows\":[{}],\"notes\":[{}]}}", rows.join(","), notes.join(","))
}

pub fn scan_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("a,kind,period,multiplier,lyapunov\n");
    for r in rows {
        let kind = if r.period.is_some() {
            "attracting"
        } else {
            "chaotic_candidate"
        };
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_float_csv(r.a),
            kind,
            r.period.map_or(String::new(), |p| p.to_string()),
            r.multiplier.map_or(String::new(), fmt_float_csv),
            r.lyapunov.map_or(String::new(), fmt_float_csv)
        ));
    }
    out
}

pub fn scan_to_json(rows: &[ScanRow]) -> String {
    let items: Vec<String> = rows
        .iter()
        .map(|r| {
            format!(
                "{{\"a\":{},\"period\":{},\"multiplier\":{},\"lyapunov\":{}}}",
                fmt_float(r.a),
                opt_usize(r.period),
                r.multiplier.map_or("null".to_string(), fmt_float),
                r.lyapunov.map_or("null".to_string(), fmt_float)
            )
        })
        .collect();
    format!("[{}]", items.join(","))
}

pub fn demo_to_json(demo: &DiscontinuityDemo) -> String {
    format!(
        "{{\"acip_table\":{},\"singular_table\":{},\"window_check\":{{\"a_superstable\":{},\"a_probe\":{},\"period\":{},\"w1\":{}}}}}",
        table_to_json(&demo.acip_table),
        table_to_json(&demo.singular_table),
        fmt_float(demo.window_check.a_superstable),
        fmt_float(demo.window_check.a_probe),
        demo.window_check.period,
        fmt_float(demo.window_check.w1)
    )
}

/// Everything needed to replay a run: the exact argv, the seed and precision
/// mode, the tool version, the output paths, and a content hash binding them.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: String,
    pub argv: Vec<String>,
    pub seed: u64,
    pub precision: String,
    pub version: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, argv: &[String], seed: u64, precision: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            argv: argv.to_vec(),
            seed,
            precision: precision.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: Vec::new(),
        }
    }

    /// Hash of the run configuration (command, argv, seed, precision,
    /// version): identical configurations hash identically.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.command.as_bytes());
        for arg in &self.argv {
            hasher.update([0u8]);
            hasher.update(arg.as_bytes());
        }
        hasher.update(self.seed.to_le_bytes());
        hasher.update(self.precision.as_bytes());
        hasher.update(self.version.as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        let argv: Vec<String> = self.argv.iter().map(|a| json_string(a)).collect();
        let outputs: Vec<String> = self.outputs.iter().map(|o| json_string(o)).collect();
        format!(
            "{{\"command\":{},\"argv\":[{}],\"seed\":{},\"precision\":{},\"version\":{},\"outputs\":[{}],\"content_hash\":{}}}\n",
            json_string(&self.command),
            argv.join(","),
            self.seed,
            json_string(&self.precision),
            json_string(&self.version),
            outputs.join(","),
            json_string(&self.content_hash())
        )
    }
}

/// Read the `argv` array back out of a manifest file (for replay).
pub fn manifest_argv(text: &str) -> Result<Vec<String>, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid manifest: {e}"))?;
    let argv = value["argv"].as_array().ok_or("manifest lacks argv")?;
    argv.iter()
        .map(|v| {
            v.as_str()
                .map(str::to_string)
                .ok_or_else(|| "argv entries must be strings".to_string())
        })
        .collect()
}

/// Write `content` to `dir/name`, creating the directory; returns bytes written.
pub fn write_output(dir: &Path, name: &str, content: &str) -> std::io::Result<(PathBuf, u64)> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path)?;
    f.write_all(content.as_bytes())?;
    Ok((path, content.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_17_digits() {
        assert_eq!(fmt_float(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_float(f64::INFINITY), "null");
        // round-trip exactness
        let x = 1.7548776662466927;
        let parsed: f64 = fmt_float(x).parse().unwrap();
        assert_eq!(parsed, x);
    }

    #[test]
    fn measure_round_trip() {
        let mu = EmpiricalMeasure::from_atoms(vec![(-0.25, 0.5), (0.5, 0.5)]).unwrap();
        let text = measure_to_json(&mu);
        let back = measure_from_json(&text).unwrap();
        assert_eq!(back.atoms(), mu.atoms());
    }

    #[test]
    fn empty_table_is_header_only() {
        let t = ConvergenceTable::default();
        assert_eq!(table_to_csv(&t), "n,a_n,period,w1,residual\n");
    }

    #[test]
    fn manifest_hash_stable_and_sensitive() {
        let m1 = RunManifest::new("orbit", &["--a".into(), "2".into()], 7, "double");
        let m2 = RunManifest::new("orbit", &["--a".into(), "2".into()], 7, "double");
        assert_eq!(m1.content_hash(), m2.content_hash());
        let m3 = RunManifest::new("orbit", &["--a".into(), "2".into()], 8, "double");
        assert_ne!(m1.content_hash(), m3.content_hash());
    }

    #[test]
    fn manifest_argv_round_trip() {
        let mut m = RunManifest::new("scan", &["scan".into(), "--grid".into(), "5".into()], 1, "double");
        m.outputs.push("out/result.csv".into());
        let argv = manifest_argv(&m.to_json()).unwrap();
        assert_eq!(argv, vec!["scan", "--grid", "5"]);
    }

    #[test]
    fn json_escaping() {
        assert_eq!(json_string("a\"b\\c\n"), "\"a\\\"b\\\\c\\n\"");
    }
}
