//! Text grid in the diagonal display convention: the entry (i, d) prints in
//! column d + i, rows run bottom-up from 0, zeros are left blank, and the
//! footer labels the columns.

use crate::num::format_rational;
use crate::table::CohomologyTable;


pub fn render_grid(t: &CohomologyTable) -> String {
    let n = t.ambient();
    // bounding box of the nonzero entries in display coordinates
    let mut col_lo = None;
    let mut col_hi = None;
    for (i, d, _) in t.nonzero_entries() {
        let c = d + i as i64;
        col_lo = Some(col_lo.map_or(c, |x: i64| x.min(c)));
        col_hi = Some(col_hi.map_or(c, |x: i64| x.max(c)));
    }
    let (lo, hi) = match (col_lo, col_hi) {
        (Some(a), Some(b)) => (a, b),
        _ => (t.window().lo, t.window().hi),
    };

    let ncols = (hi - lo + 1) as usize;
    let mut cells: Vec<Vec<String>> = vec![vec![String::new(); ncols]; n + 1];
    for (i, d, v) in t.nonzero_entries() {
        let c = d + i as i64;
        if lo <= c && c <= hi {
            cells[i][(c - lo) as usize] = format_rational(v);
        }
    }

    let mut widths: Vec<usize> = (0..ncols).map(|k| (lo + k as i64).to_string().len()).collect();
    for row in &cells {
        for (k, cell) in row.iter().enumerate() {
            widths[k] = widths[k].max(cell.len());
        }
    }

    let mut out = String::new();
    for i in (0..=n).rev() {
        let mut line = String::new();
        for (k, cell) in cells[i].iter().enumerate() {
            line.push_str(&format!("  {:>width$}", cell, width = widths[k]));
        }
        line.push_str(&format!("  | {i}"));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    let total: usize = widths.iter().map(|w| w + 2).sum::<usize>() + 6;
    out.push_str(&"-".repeat(total));
    out.push('\n');
    for (k, w) in widths.iter().enumerate() {
        out.push_str(&format!("  {:>width$}", lo + k as i64, width = w));
    }
    out.push_str("  | d\\i\n");
    out
}
