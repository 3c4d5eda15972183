//! CSV and markdown rendering of study results.

use std::fmt::Write;

use super::study::{ErrorRecord, SweepRecord};

pub const CSV_HEADER: &str = "level,h,dof,err_omega,err_u,err_p,err_super,ord_omega,ord_u,ord_p,ord_super";
pub const SWEEP_HEADER: &str = "nu,method,err_omega,err_u,err_p,err_super";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Markdown),
            other => Err(format!("unknown format '{other}' (expected csv or md)")),
        }
    }
}

/// Six significant digits.
fn num(x: f64) -> String {
    format!("{x:.5e}")
}

fn orders(r: &ErrorRecord) -> [Option<f64>; 4] {
    match r.orders {
        Some(o) => [Some(o.omega), Some(o.u), Some(o.p), Some(o.super_)],
        None => [None; 4],
    }
}

pub fn emit(records: &[ErrorRecord], format: Format) -> String {
    match format {
        Format::Csv => emit_csv(records),
        Format::Markdown => emit_markdown(records),
    }
}

fn emit_csv(records: &[ErrorRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let ord: Vec<String> = orders(r).iter().map(|o| o.map(num).unwrap_or_default()).collect();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.level,
            num(r.h),
            r.dof,
            num(r.err_omega),
            num(r.err_u),
            num(r.err_p),
            num(r.err_super),
            ord.join(",")
        )
        .unwrap();
    }
    out
}

fn emit_markdown(records: &[ErrorRecord]) -> String {
    let mut out = String::new();
    out.push_str("| h⁻¹ | h | dof | ‖ω-ω_h‖ | Order | ‖u-u_h‖ | Order | ‖p-p_h‖ | Order | ‖I_h u-u_h‖ | Order |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
    for r in records {
        let ord: Vec<String> = orders(r)
            .iter()
            .map(|o| o.map(|v| format!("{v:.2}")).unwrap_or_else(|| "N/A".into()))
            .collect();
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.level,
            num(r.h),
            r.dof,
            num(r.err_omega),
            ord[0],
            num(r.err_u),
            ord[1],
            num(r.err_p),
            ord[2],
            num(r.err_super),
            ord[3]
        )
        .unwrap();
    }
    out
}

pub fn emit_sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            num(r.nu),
            r.method.name(),
            num(r.err_omega),
            num(r.err_u),
            num(r.err_p),
            num(r.err_super)
        )
        .unwrap();
    }
    out
}
