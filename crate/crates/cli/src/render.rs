//! Text forms of command results. Everything ends in a newline.

use std::fmt::Write;

use serde::Serialize;

use coreabacus::enumeration::FamilyReport;
use coreabacus::verification::VerificationReport;
use coreabacus::Partition;

use crate::commands::{CoreReport, CountReport, Format, ReportFormat};

pub fn json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn moduli_label(moduli: &[u64]) -> String {
    let inner: Vec<String> = moduli.iter().map(u64::to_string).collect();
    format!("({})", inner.join(","))
}

fn parts_field(p: &Partition) -> String {
    let parts: Vec<String> = p.parts().iter().map(u64::to_string).collect();
    parts.join(" ")
}

pub fn family(report: &FamilyReport, format: Format) -> serde_json::Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => return json(report),
        Format::Csv => {
            out.push_str("weight,length,parts\n");
            for p in &report.members {
                let _ = writeln!(out, "{},{},{}", p.weight(), p.len(), parts_field(p));
            }
        }
        Format::Table => {
            let _ = writeln!(out, "{}-cores: {}", moduli_label(&report.moduli), report.count);
            let width = report
                .members
                .iter()
                .map(|p| p.weight().to_string().len())
                .max()
                .unwrap_or(1)
                .max(6);
            let _ = writeln!(out, "{:>width$}  {:>6}  partition", "weight", "length");
            for p in &report.members {
                let _ = writeln!(out, "{:>width$}  {:>6}  {p}", p.weight(), p.len());
            }
        }
    }
    Ok(out)
}

pub fn count(report: &CountReport, format: Format) -> serde_json::Result<String> {
    match format {
        Format::Json => json(report),
        Format::Csv | Format::Table => Ok(format!("{}\n", report.count)),
    }
}

pub fn core(report: &CoreReport, format: ReportFormat) -> serde_json::Result<String> {
    match format {
        ReportFormat::Json => json(report),
        ReportFormat::Table => Ok(format!(
            "moduli:    {}\npartition: {}\nparts:     {}\nweight:    {}\n",
            moduli_label(&report.moduli),
            report.partition,
            report.parts,
            report.weight
        )),
    }
}

pub fn verification(report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "claim: {}  grid: {}", report.claim, report.grid);
    let rows: Vec<[String; 5]> = report
        .cells
        .iter()
        .map(|c| {
            let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            [
                params.join(","),
                c.quantity.clone(),
                c.expected.to_string(),
                c.observed.to_string(),
                if c.pass { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    let header = ["params", "quantity", "expected", "observed", "result"].map(String::from);
    let mut widths = header.clone().map(|h| h.len());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    for row in std::iter::once(&header).chain(&rows) {
        let line = format!(
            "{:<w0$}  {:<w1$}  {:>w2$}  {:>w3$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            row[4],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
        );
        let _ = writeln!(out, "{}", line.trim_end());
    }
    let passed = report.cells.iter().filter(|c| c.pass).count();
    let _ = writeln!(out, "{passed}/{} cells pass", report.cells.len());
    if let Some(probes) = &report.berger {
        out.push('\n');
        for p in probes {
            let max = p.max_weight.map_or_else(|| "-".to_string(), |w| w.to_string());
            let _ = write!(
                out,
                "s={} m={}  {}  formula={} max={} maximal={}",
                p.s,
                p.m,
                p.verdict,
                p.formula_weight,
                max,
                p.maximal.len()
            );
            if let Some(divides) = p.m_squared_divides {
                let _ = write!(out, "  m²|max={divides}");
            }
            out.push('\n');
        }
    }
    out
}
