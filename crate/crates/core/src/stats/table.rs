use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::CorpusStats;
use crate::segment::CorpusMeta;

pub struct TableRow<'a> {
    pub name: &'a str,
    pub meta: Option<&'a CorpusMeta>,
    pub stats: &'a CorpusStats,
}

fn richness(r: f64) -> String {
    let s = format!("{r:.3}");
    match s.strip_prefix('0') {
        Some(rest) => String::from(rest),
        None => s,
    }
}

/// Aligned text table with the columns
/// `Corpus prod cotext # L(σ) <src> <tgt> voc-<src> voc-<tgt>`.
///
/// L is the pooled mean length, σ the pooled dispersion of length ratios.
pub fn render_table(rows: &[TableRow<'_>], src_label: &str, tgt_label: &str) -> String {
    let header: Vec<String> = [
        "Corpus",
        "prod",
        "cotext",
        "#",
        "L (σ)",
        src_label,
        tgt_label,
        &format!("voc {src_label}"),
        &format!("voc {tgt_label}"),
    ]
    .iter()
    .map(|s| String::from(*s))
    .collect();

    let mut cells: Vec<Vec<String>> = Vec::with_capacity(rows.len() + 1);
    cells.push(header);
    for row in rows {
        let s = row.stats;
        cells.push(alloc::vec![
            String::from(row.name),
            String::from(row.meta.map_or("", |m| m.production.code())),
            String::from(row.meta.map_or("", |m| m.has_cotext.code())),
            format!("{}", s.segment_count),
            format!("{:.2} ({:.2})", s.mean_len_pooled, s.len_ratio_cv_pooled),
            format!("{}", s.tokens_src),
            format!("{}", s.tokens_tgt),
            richness(s.richness_src.ratio),
            richness(s.richness_tgt.ratio),
        ]);
    }

    let columns = cells[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();

    let mut out = String::new();
    for (i, row) in cells.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            if c > 0 {
                out.push_str("  ");
            }
            if c == 0 {
                out.push_str(cell);
                out.extend(core::iter::repeat_n(' ', pad));
            } else {
                out.extend(core::iter::repeat_n(' ', pad));
                out.push_str(cell);
            }
        }
        let trimmed = out.trim_end_matches(' ').len();
        out.truncate(trimmed);
        out.push('\n');
        if i == 0 {
            let total: usize = widths.iter().sum::<usize>() + 2 * (columns - 1);
            let _ = writeln!(out, "{}", "-".repeat(total));
        }
    }
    out
}
