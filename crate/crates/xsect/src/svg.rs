//! SVG rendering of a two-dimensional section on the unit-square fundamental domain.

use std::fmt::Write as _;

use xsect_core::polyline::Polyline;
use xsect_core::Grid;

const SIZE: f64 = 512.0;
const MARGIN: f64 = 16.0;

fn px(p: [f64; 2]) -> (f64, f64) {
    (MARGIN + SIZE * p[0], MARGIN + SIZE * (1.0 - p[1]))
}

/// Path data for a lifted polyline folded into the fundamental domain.
fn folded_path(points: &[[f64; 2]]) -> String {
    let mut d = String::new();
    let mut last: Option<(i64, i64, [f64; 2])> = None;
    for w in points.windows(2) {
        let mid = [(w[0][0] + w[1][0]) / 2.0, (w[0][1] + w[1][1]) / 2.0];
        let off = (mid[0].floor() as i64, mid[1].floor() as i64);
        let a = [w[0][0] - off.0 as f64, w[0][1] - off.1 as f64];
        let b = [w[1][0] - off.0 as f64, w[1][1] - off.1 as f64];
        let continues = matches!(last, Some((ox, oy, end)) if (ox, oy) == off && end == a);
        if !continues {
            let (x, y) = px(a);
            let _ = write!(d, "M{x:.2} {y:.2}");
        }
        let (x, y) = px(b);
        let _ = write!(d, "L{x:.2} {y:.2}");
        last = Some((off.0, off.1, b));
    }
    d
}

/// Recurrent cells shaded, section curves drawn on top.
pub fn render(grid: &Grid, shaded: &[u32], polylines: &[Polyline], title: &str) -> String {
    let res = grid.resolution();
    let (cw, ch) = (SIZE / res[0] as f64, SIZE / res[1] as f64);
    let total = SIZE + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">"
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\" stroke=\"black\"/>");
    let _ = writeln!(s, "<g fill=\"#f4a582\" stroke=\"none\">");
    for &v in shaded {
        let c = grid.coords(v as usize);
        let (x, y) = px([c[0] as f64 / res[0] as f64, (c[1] + 1) as f64 / res[1] as f64]);
        let _ = writeln!(s, "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{cw:.2}\" height=\"{ch:.2}\"/>");
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "<g fill=\"none\" stroke=\"#2166ac\" stroke-width=\"2\" stroke-linejoin=\"round\">");
    for p in polylines {
        let _ = writeln!(s, "<path d=\"{}\"/>", folded_path(&p.points));
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
