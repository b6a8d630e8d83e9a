//! Circuit metrics tables and netlist export.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use bposit::FormatSpec;
use bposit_circuit::{build_circuit, CircuitKind, CircuitMetrics, Netlist};
use serde::Serialize;

use crate::error::{AnalysisError, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CircuitRow {
    pub kind: String,
    pub format: String,
    pub n: u32,
    pub metrics: CircuitMetrics,
}

pub struct BuiltCircuit {
    pub kind: CircuitKind,
    pub spec: FormatSpec,
    pub netlist: Netlist,
}

/// Builds every `kind` at every width using the kind's default format.
pub fn build_all(kinds: &[CircuitKind], widths: &[u32]) -> Result<Vec<BuiltCircuit>> {
    let mut out = Vec::new();
    for &kind in kinds {
        for &n in widths {
            let spec = kind
                .default_spec(n)
                .ok_or_else(|| AnalysisError::InvalidArgument(format!("{kind} has no format at N = {n}")))?;
            out.push(BuiltCircuit { kind, spec, netlist: build_circuit(kind, &spec)? });
        }
    }
    Ok(out)
}

pub fn rows(circuits: &[BuiltCircuit]) -> Vec<CircuitRow> {
    circuits
        .iter()
        .map(|c| CircuitRow {
            kind: c.kind.to_string(),
            format: c.spec.to_string(),
            n: c.spec.n(),
            metrics: c.netlist.metrics(),
        })
        .collect()
}

pub fn render_table(rows: &[CircuitRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<12} {:<14} {:>6} {:>6}  largest mux", "kind", "format", "gates", "depth");
    for r in rows {
        let mux = r
            .metrics
            .mux_inputs
            .iter()
            .max_by_key(|(_, k)| *k)
            .map(|(name, k)| format!("{name} ({k}:1)"))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "{:<12} {:<14} {:>6} {:>6}  {}",
            r.kind, r.format, r.metrics.gate_count, r.metrics.depth, mux
        );
    }
    s
}

/// Writes `<kind>-<N>.json` (and `.dot` when asked) for every circuit.
pub fn export(circuits: &[BuiltCircuit], dir: &Path, dot: bool) -> Result<Vec<String>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for c in circuits {
        let stem = format!("{}-{}", c.kind, c.spec.n());
        let json = dir.join(format!("{stem}.json"));
        fs::write(&json, c.netlist.to_json())?;
        written.push(json.display().to_string());
        if dot {
            let path = dir.join(format!("{stem}.dot"));
            fs::write(&path, c.netlist.to_dot())?;
            written.push(path.display().to_string());
        }
    }
    Ok(written)
}
