use gueo_core::strata::{StratumLabel, StratumRecord};

const HEADER: [&str; 10] = ["k", "l", "class", "len", "dim", "target", "rank", "base", "parahoric", "pos_cox"];

fn label(s: Option<StratumLabel>) -> String {
    s.map(|s| format!("({},{})", s.k, s.l)).unwrap_or_else(|| "-".to_string())
}

fn number(v: Option<usize>) -> String {
    v.map(|v| v.to_string()).unwrap_or_else(|| "-".to_string())
}

/// One row per label, columns padded to their widest cell.
pub fn render(records: &[StratumRecord]) -> String {
    let mut rows: Vec<Vec<String>> = vec![HEADER.iter().map(|h| h.to_string()).collect()];
    for r in records {
        rows.push(vec![
            r.label.k.to_string(),
            r.label.l.to_string(),
            r.class.to_string(),
            r.length.to_string(),
            number(r.dim),
            label(r.target),
            number(r.rank),
            label(r.base),
            if r.class.is_nonempty() { r.parahoric.to_string() } else { "-".to_string() },
            if r.positive_coxeter { "yes" } else { "no" }.to_string(),
        ]);
    }
    let widths: Vec<usize> = (0..HEADER.len())
        .map(|c| rows.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
