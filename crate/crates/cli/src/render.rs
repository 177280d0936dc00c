//! Text, JSON and CSV output.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catalog::CatalogReport;
use crate::classify::{ClassifyReport, Evidence};
use crate::tables::{Table1Report, Table2Report};
use crate::theorem::TheoremReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Pretty JSON with keys sorted at every level.
pub fn json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable report");
    let mut s = serde_json::to_string_pretty(&v).expect("json");
    s.push('\n');
    s
}

fn dims_text(d: &[u64]) -> String {
    d.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn evidence_text(e: &Evidence) -> String {
    match e {
        Evidence::MonomialCertificate { monomials } if monomials.is_empty() => "free".to_string(),
        Evidence::MonomialCertificate { monomials } => {
            format!("monomials {}", monomials.join(", "))
        }
        Evidence::GkObstruction {
            term,
            graded,
            source,
            ..
        } => {
            let mut s = if *graded {
                format!("graded, {term}")
            } else {
                term.clone()
            };
            if let Some(t) = &source.tail_from {
                write!(
                    s,
                    " [computed to arity {}, tail from {t}]",
                    source.computed_to
                )
                .unwrap();
            }
            s
        }
        Evidence::PairedGkDefect { term, .. } => format!("f(-f(-t)) - t = {term} + ..."),
        Evidence::Citation { operad, via: None } => operad.clone(),
        Evidence::Citation {
            operad,
            via: Some(v),
        } => format!("{operad} ({v})"),
        Evidence::Nothing { reason } => reason.clone(),
    }
}

pub fn classify_text(r: &ClassifyReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "closure to arity {}, printed tails {}",
        r.max_arity,
        on_off(r.paper_tail)
    )
    .unwrap();
    for rec in &r.records {
        let dual = rec
            .duality
            .as_ref()
            .map(|d| format!("  dual dim {}, self-dual {}", d.dual_dim, d.self_dual))
            .unwrap_or_default();
        writeln!(
            s,
            "{:7} {:8} [{}] {}: {}{}",
            rec.name,
            if rec.witness == "representative" {
                String::new()
            } else {
                format!("~{}", rec.iso_class)
            },
            dims_text(&rec.dims),
            rec.verdict.as_str(),
            evidence_text(&rec.evidence),
            dual
        )
        .unwrap();
    }
    writeln!(
        s,
        "Koszul classes ({}): {}",
        r.koszul_classes.len(),
        r.koszul_classes.join(", ")
    )
    .unwrap();
    for (v, n) in &r.verdict_counts {
        writeln!(s, "  {v}: {n}").unwrap();
    }
    s
}

fn on_off(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

pub fn table1_text(r: &Table1Report) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "closure to arity {}, printed tails {}",
        r.max_arity,
        on_off(r.paper_tail)
    )
    .unwrap();
    for row in &r.rows {
        writeln!(s, "{}", row.operads.join(", ")).unwrap();
        writeln!(
            s,
            "  printed   [{}] -> {}",
            dims_text(&row.printed_dims),
            row.printed_term
        )
        .unwrap();
        for c in &row.computed {
            let note = match c.first_mismatch {
                Some(k) => format!("  MISMATCH at arity {k}"),
                None => String::new(),
            };
            writeln!(s, "  {:9} [{}]{note}", c.operad, dims_text(&c.dims)).unwrap();
        }
        writeln!(
            s,
            "  printed series gives {} ({})",
            row.printed_series_term.as_deref().unwrap_or("nothing"),
            ok(row.printed_series_matches)
        )
        .unwrap();
        let tail = row
            .paper_tail_from
            .map(|k| format!(", printed tail from arity {k}"))
            .unwrap_or_default();
        writeln!(
            s,
            "  computed series gives {}{tail} ({})",
            row.computed_term.as_deref().unwrap_or("nothing"),
            ok(row.computed_matches)
        )
        .unwrap();
    }
    s
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "differs"
    }
}

pub fn table1_csv(r: &Table1Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "operads",
        "printed_dims",
        "computed_dims",
        "prefix_matches",
        "paper_tail_from",
        "printed_term",
        "printed_series_term",
        "computed_term",
        "computed_matches",
    ])
    .unwrap();
    for row in &r.rows {
        w.write_record([
            row.operads.join(" "),
            dims_text(&row.printed_dims),
            row.computed
                .iter()
                .map(|c| dims_text(&c.dims))
                .collect::<Vec<_>>()
                .join(" "),
            row.prefix_matches.to_string(),
            row.paper_tail_from
                .map(|k| k.to_string())
                .unwrap_or_default(),
            row.printed_term.clone(),
            row.printed_series_term.clone().unwrap_or_default(),
            row.computed_term.clone().unwrap_or_default(),
            row.computed_matches.to_string(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

pub fn table2_text(r: &Table2Report) -> String {
    let mut s = String::new();
    writeln!(s, "equations checked to order {}", r.order).unwrap();
    for row in &r.rows {
        let status = |o: &crate::tables::OdeResult| match &o.first_defect {
            None => "holds".to_string(),
            Some((k, c)) => format!("fails, leaves {c}*t^{k}"),
        };
        writeln!(
            s,
            "{:9} {:8} f = {}: {} {}",
            row.operad,
            row.oeis.as_deref().unwrap_or("-"),
            row.series,
            row.printed.equation,
            status(&row.printed)
        )
        .unwrap();
        if let Some(c) = &row.corrected {
            writeln!(s, "{:18} corrected: {} {}", "", c.equation, status(c)).unwrap();
        }
    }
    s
}

pub fn table2_csv(r: &Table2Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "operad",
        "oeis",
        "series",
        "equation",
        "passes",
        "corrected",
        "corrected_passes",
    ])
    .unwrap();
    for row in &r.rows {
        w.write_record([
            row.operad.clone(),
            row.oeis.clone().unwrap_or_default(),
            row.series.clone(),
            row.printed.equation.clone(),
            row.printed.passed.to_string(),
            row.corrected
                .as_ref()
                .map(|c| c.equation.clone())
                .unwrap_or_default(),
            row.corrected
                .as_ref()
                .map(|c| c.passed.to_string())
                .unwrap_or_default(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

pub fn theorem_text(r: &TheoremReport) -> String {
    let mut s = String::new();
    for row in &r.rows {
        writeln!(s, "{} ({}) [{}]", row.name, row.entry, dims_text(&row.dims)).unwrap();
        let form = |f: &crate::theorem::FormCheck| {
            if f.matches() {
                format!("{} agrees", f.form)
            } else {
                format!("{} disagrees at t^{:?}", f.form, f.mismatched_degrees)
            }
        };
        writeln!(s, "  closed form: {}", form(&row.printed)).unwrap();
        if let Some(c) = &row.candidate {
            writeln!(s, "  candidate:   {}", form(c)).unwrap();
        }
        writeln!(
            s,
            "  equation {} {}",
            row.equation.equation,
            if row.equation.passed {
                "holds"
            } else {
                "fails"
            }
        )
        .unwrap();
        writeln!(
            s,
            "  self-dual {} (expected {}), mirror-invariant {} (expected {})",
            row.self_dual,
            row.self_dual_expected,
            row.mirror_invariant,
            row.mirror_invariant_expected
        )
        .unwrap();
        writeln!(
            s,
            "  dual dims [{}] vs rev(-f(-t)) [{}]: {}",
            dims_text(&row.dual_dims),
            row.gk_dual_dims.join(","),
            if row.series_consistent {
                "consistent"
            } else {
                "INCONSISTENT"
            }
        )
        .unwrap();
    }
    for d in &r.discrepancies {
        writeln!(s, "discrepancy: {d}").unwrap();
    }
    s
}

pub fn catalog_text(r: &CatalogReport) -> String {
    let mut s = String::new();
    for e in &r.entries {
        let known = e
            .known
            .as_deref()
            .map(|k| format!(" = {k}"))
            .unwrap_or_default();
        writeln!(
            s,
            "{:7} {} {}{known}",
            e.name,
            e.key,
            e.relations.join("; ")
        )
        .unwrap();
    }
    writeln!(s, "{} entries", r.entries.len()).unwrap();
    writeln!(s, "isomorphism classes ({}):", r.iso_classes.len()).unwrap();
    for c in r.iso_classes.iter().filter(|c| c.members.len() > 1) {
        let m: Vec<String> = c
            .members
            .iter()
            .map(|(n, w)| format!("{n} ({w})"))
            .collect();
        writeln!(s, "  {}", m.join(", ")).unwrap();
    }
    let couples = r
        .equal_congruence_groups
        .iter()
        .filter(|g| g.len() == 2)
        .count();
    let triples = r
        .equal_congruence_groups
        .iter()
        .filter(|g| g.len() == 3)
        .count();
    writeln!(
        s,
        "equal congruences among RR;RL: {couples} couples, {triples} triples"
    )
    .unwrap();
    writeln!(
        s,
        "{} equivariant congruences, {} outside the catalog up to mirror",
        r.equivariant_congruences,
        r.outside_catalog.len()
    )
    .unwrap();
    s
}
