//! Text and CSV renderings.

use std::fmt::Write;

use crate::doc::{
    BlockDoc, BlocksDoc, Ext1Doc, FusionDoc, FusionTableDoc, MatrixDoc, Payload, ReportDoc, SeriesDoc, TiltingDoc,
    VerificationDoc,
};

pub fn csv(payload: &Payload) -> Option<String> {
    match payload {
        Payload::Matrix(m) => Some(matrix_csv(m)),
        _ => None,
    }
}

fn matrix_csv(m: &MatrixDoc) -> String {
    let mut out = String::new();
    writeln!(out, ",{}", m.col_labels.join(",")).unwrap();
    for (label, row) in m.row_labels.iter().zip(&m.rows) {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{label},{}", cells.join(",")).unwrap();
    }
    out
}

pub fn text(payload: &Payload) -> String {
    match payload {
        Payload::Report(r) => report_text(r),
        Payload::Matrix(m) => format!("{} of Ver_{{{}^{}}}\n{}", m.name, m.p, m.n, matrix_text(m)),
        Payload::Fusion(f) => fusion_text(f),
        Payload::FusionTable(t) => table_text(t),
        Payload::Blocks(b) => blocks_text(b),
        Payload::Ext1(e) => ext1_text(e),
        Payload::Series(s) => series_text(s),
        Payload::Tilting(t) => tilting_text(t),
        Payload::Verification(v) => verification_text(v),
    }
}

/// Right-aligned grid with a header row and a label column.
fn grid(corner: &str, cols: &[String], rows: &[(String, Vec<String>)]) -> String {
    let label_w = rows.iter().map(|(l, _)| l.len()).chain([corner.len()]).max().unwrap_or(0);
    let mut widths: Vec<usize> = cols.iter().map(|c| c.len()).collect();
    for (_, cells) in rows {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |label: &str, cells: &[String]| {
        let mut s = format!("{label:<label_w$}");
        for (c, w) in cells.iter().zip(&widths) {
            s.push_str(&format!("  {c:>w$}"));
        }
        s.trim_end().to_string()
    };
    writeln!(out, "{}", line(corner, cols)).unwrap();
    for (label, cells) in rows {
        writeln!(out, "{}", line(label, cells)).unwrap();
    }
    out
}

fn matrix_text(m: &MatrixDoc) -> String {
    let rows: Vec<(String, Vec<String>)> = m
        .row_labels
        .iter()
        .zip(&m.rows)
        .map(|(l, r)| (l.clone(), r.iter().map(|x| x.to_string()).collect()))
        .collect();
    grid("", &m.col_labels, &rows)
}

fn fusion_text(f: &FusionDoc) -> String {
    let v: Vec<String> = f.vector.iter().map(|x| x.to_string()).collect();
    format!("L{} x L{} = {}\nvector: ({})\n", f.a, f.b, f.folded.text, v.join(", "))
}

fn table_text(t: &FusionTableDoc) -> String {
    let cols: Vec<String> = t.labels.iter().map(|i| format!("L{i}")).collect();
    let rows: Vec<(String, Vec<String>)> =
        t.labels.iter().zip(&t.cells).map(|(i, r)| (format!("L{i}"), r.clone())).collect();
    format!("fusion table of Ver_{{{}^{}}}\n{}", t.p, t.n, grid("x", &cols, &rows))
}

fn block_line(b: &BlockDoc) -> String {
    let simples: Vec<String> = b.simples.iter().map(|i| format!("L{i}")).collect();
    let projs: Vec<String> = b.projectives.iter().map(|s| format!("T{s}")).collect();
    format!("level {}  size {}  det {}  {}  |  {}", b.level, b.size, b.det, simples.join(" "), projs.join(" "))
}

fn blocks_text(b: &BlocksDoc) -> String {
    let mut out = format!("{} blocks of Ver_{{{}^{}}}\n", b.blocks.len(), b.p, b.n);
    for block in &b.blocks {
        writeln!(out, "{}", block_line(block)).unwrap();
    }
    out
}

fn ext1_text(e: &Ext1Doc) -> String {
    let mut out = format!("nonzero Ext^1 between simples of Ver_{{{}^{}}}\n", e.p, e.n);
    if e.pairs.is_empty() {
        out.push_str("none\n");
    }
    for (a, b) in &e.pairs {
        writeln!(out, "Ext^1(L{a}, L{b}) = k").unwrap();
    }
    out
}

fn series_text(s: &SeriesDoc) -> String {
    let cols = vec!["invariant_dims".to_string(), "series_fn".to_string()];
    let rows: Vec<(String, Vec<String>)> = s
        .invariant_dims
        .iter()
        .zip(&s.series_fn)
        .enumerate()
        .map(|(m, (a, b))| (m.to_string(), vec![a.to_string(), b.to_string()]))
        .collect();
    format!("Ver_{{{}^{}}}, m = 0..={}\n{}equal: {}\n", s.p, s.n, s.max, grid("m", &cols, &rows), s.equal)
}

fn tilting_text(t: &TiltingDoc) -> String {
    let weyl: Vec<String> =
        t.weyl.iter().map(|(j, c)| if c.0 == 1.into() { format!("W{j}") } else { format!("{c}W{j}") }).collect();
    let ch: Vec<String> = t.character.iter().map(|(w, c)| format!("{w}:{c}")).collect();
    format!(
        "T{} for p = {}\ndim: {}\nWeyl factors: {}\ncharacter: {}\n",
        t.m,
        t.p,
        t.dim,
        weyl.join(" + "),
        ch.join(", ")
    )
}

fn verification_text(v: &VerificationDoc) -> String {
    let name_w = v.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = format!("verification of Ver_{{{}^{}}} (samples {}, seed {})\n", v.p, v.n, v.samples, v.seed);
    // witnesses are free text, so they stay left-aligned
    for c in &v.checks {
        writeln!(out, "{:<name_w$}  {:<7}  {}", c.name, c.status, c.witness).unwrap();
    }
    writeln!(out, "all passed: {}", v.all_passed).unwrap();
    out
}

fn report_text(r: &ReportDoc) -> String {
    let mut out = String::new();
    writeln!(out, "Ver_{{{}^{}}}: {} simple objects, {} blocks", r.p, r.n, r.simples.len(), r.blocks.len()).unwrap();
    out.push_str("\ncorrespondence L_i <-> T_s(i)\n");
    let cols: Vec<String> = r.correspondence.iter().map(|c| format!("L{}", c.simple)).collect();
    let row = vec![("".to_string(), r.correspondence.iter().map(|c| format!("T{}", c.projective)).collect())];
    out.push_str(&grid("", &cols, &row));
    out.push_str("\nCartan matrix\n");
    out.push_str(&matrix_text(&r.cartan));
    out.push_str("\nblocks\n");
    for b in &r.blocks {
        writeln!(out, "{}", block_line(b)).unwrap();
    }
    out.push_str("\nFrobenius-Perron dimensions\n");
    let cols = vec!["FPdim L".to_string(), "FPdim P".to_string(), "dim mod p".to_string()];
    let rows: Vec<(String, Vec<String>)> = r
        .fpdims
        .iter()
        .map(|f| (format!("L{}", f.simple), vec![f.simple_dim.clone(), f.projective_dim.clone(), f.dim_mod_p.to_string()]))
        .collect();
    out.push_str(&grid("", &cols, &rows));
    if let Some(pairs) = &r.ext1 {
        out.push_str("\nnonzero Ext^1\n");
        let items: Vec<String> = pairs.iter().map(|(a, b)| format!("(L{a}, L{b})")).collect();
        writeln!(out, "{}", if items.is_empty() { "none".to_string() } else { items.join(" ") }).unwrap();
    }
    out.push('\n');
    out.push_str(&verification_text(&r.verification));
    out
}
