use std::fmt::Write as _;

use super::report::Report;

const MAX_SIDE: i64 = 60;

/// Staircase picture: `*` vertices, `+` boundary lattice points, `.` the
/// interior of Γ₀, `/` the diagonal. Followed by the diagonal intersection
/// of every facet with a candidate pole.
pub fn draw_polygon(report: &Report) -> String {
    let mut out = String::new();
    let max_x = report.vertices.iter().map(|v| v[0]).max().unwrap_or(0) + 2;
    let max_y = report.vertices.iter().map(|v| v[1]).max().unwrap_or(0) + 2;
    let side = max_x.max(max_y);
    if side > MAX_SIDE {
        let _ = writeln!(out, "(polygon too large to draw)");
    } else {
        let value = |f: &super::report::FacetJson, x: i64, y: i64| f.normal[0] * x + f.normal[1] * y - f.n;
        for y in (0..=side).rev() {
            let mut row = String::new();
            for x in 0..=side {
                let inside = report.facets.iter().all(|f| value(f, x, y) >= 0);
                let boundary = inside && report.facets.iter().any(|f| value(f, x, y) == 0);
                let c = if report.vertices.contains(&[x, y]) {
                    '*'
                } else if boundary {
                    '+'
                } else if x == y {
                    '/'
                } else if inside {
                    '.'
                } else {
                    ' '
                };
                row.push(c);
            }
            let _ = writeln!(out, "{:>3} {}", y, row.trim_end());
        }
    }
    for (i, f) in report.facets.iter().enumerate() {
        if let (Some(r), Some(c)) = (&f.diagonal_r, &f.candidate) {
            let _ = writeln!(out, "  facet [{i}] meets the diagonal at r = {r}, -1/r = {c}");
        }
    }
    out
}
