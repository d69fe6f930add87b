//! Plain-text renderings.

use std::fmt::Write;

use joint_digits_core::dependence::DependenceReport;
use joint_digits_core::image::ImageReport;
use joint_digits_core::torus::CoverageReport;

use crate::formats::{TableRecord, WitnessRecord};

/// Grid with rows `j2` and columns `j1`; each cell lists its runs of
/// combined-base digits, `∅` when the pair is not attained.
pub fn table_text(t: &TableRecord) -> String {
    let d = &t.dependence;
    let cell_text = |runs: &[(u64, u64)]| {
        if runs.is_empty() {
            "\u{2205}".to_string()
        } else {
            runs.iter()
                .map(|&(a, b)| if a == b { a.to_string() } else { format!("{a}-{b}") })
                .collect::<Vec<_>>()
                .join(",")
        }
    };
    let cols = (d.b1 - 1) as usize;
    let mut grid: Vec<Vec<String>> = Vec::new();
    let mut header = vec![String::new()];
    header.extend((1..=cols).map(|j1| format!("j1={j1}")));
    grid.push(header);
    for row in t.cells.chunks(cols) {
        let mut line = vec![format!("j2={}", row[0].j2)];
        line.extend(row.iter().map(|c| cell_text(&c.runs)));
        grid.push(line);
    }
    let widths: Vec<usize> = (0..=cols)
        .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "bases ({}, {}): a = {}, e1 = {}, e2 = {}, combined base {}",
        d.b1, d.b2, d.a, d.e1, d.e2, d.combined_base
    );
    for r in &grid {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    let excluded: Vec<String> = t.excluded.iter().map(|(a, b)| format!("({a},{b})")).collect();
    let _ = writeln!(out, "excluded ({}): {}", excluded.len(), excluded.join(" "));
    out
}

pub fn deps_text(r: &DependenceReport) -> String {
    let mut out = String::new();
    let bases: Vec<String> = r.bases.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(out, "bases: {}", bases.join(", "));
    for (i, j, d) in &r.dependent_pairs {
        let (b1, b2) = d.bases();
        let (e1, e2) = d.exponents();
        let _ = writeln!(
            out,
            "dependent [{i},{j}]: {b1} = {a}^{e1}, {b2} = {a}^{e2}, combined base {}",
            d.combined_base(),
            a = d.a()
        );
    }
    let _ = writeln!(out, "pairwise independent: {}", if r.pairwise_independent() { "yes" } else { "no" });
    out
}

pub fn image_text(r: &ImageReport) -> String {
    let mut out = String::new();
    let (a, e) = r.counts();
    let _ = writeln!(out, "bases ({}, {}): {a} attainable, {e} excluded", r.bases.0, r.bases.1);
    if !r.excluded.is_empty() {
        let ex: Vec<String> = r.excluded.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let _ = writeln!(out, "excluded: {}", ex.join(" "));
    }
    out
}

pub fn witness_text(w: &WitnessRecord) -> String {
    match w {
        WitnessRecord::Found { x, anchor, k, verified, .. } => {
            format!("found x = {x} (anchor {anchor}, k = {k}, verified: {verified})\n")
        }
        WitnessRecord::NotAttainable { pair, verdict, .. } => format!(
            "not attainable: bases [{},{}] cannot show ({},{}); no c in [{}, {}]\n",
            pair.0, pair.1, verdict.pair.0, verdict.pair.1, verdict.scan_range.0, verdict.scan_range.1
        ),
        WitnessRecord::Exhausted { k_reached, note, .. } => format!("exhausted at k = {k_reached}: {note}\n"),
    }
}

pub fn coverage_text(r: &CoverageReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} samples ({}): {} of {} boxes hit, max |frequency - measure| = {:.6}",
        r.samples,
        r.sampler.name(),
        r.rectangles_hit(),
        r.rectangles_total(),
        r.max_deviation()
    );
    for (t, f, m) in r.frequencies() {
        let t: Vec<String> = t.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(out, "{:<12} {f:.6} {m:.6}", t.join(","));
    }
    out
}
