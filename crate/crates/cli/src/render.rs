//! Deterministic SVG chord diagrams: a circle of labeled points, chords as
//! straight segments, crossing chords highlighted. The canonical pair text is
//! embedded in a `<desc>` element so a diagram can be parsed back.

use std::fmt::Write as _;

const SIZE: f64 = 500.0;
const RADIUS: f64 = 200.0;
const LABEL_RADIUS: f64 = 228.0;

/// Position of the 1-based point `p` among `two_n` points: point 1 sits at
/// the top, labels advance clockwise.
fn position(p: u32, two_n: usize, radius: f64) -> (f64, f64) {
    let angle = -std::f64::consts::FRAC_PI_2
        + 2.0 * std::f64::consts::PI * ((p - 1) as f64) / (two_n as f64);
    (
        SIZE / 2.0 + radius * angle.cos(),
        SIZE / 2.0 + radius * angle.sin(),
    )
}

/// Render a diagram of `two_n` circle points with the given 1-based chords.
///
/// `highlight` marks the chords that take the accent stroke (the crossing
/// ones, unless plain rendering was requested). `desc` is embedded verbatim.
pub fn chord_diagram(
    two_n: usize,
    chords: &[(u32, u32)],
    highlight: &[(u32, u32)],
    desc: &str,
) -> String {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    let _ = writeln!(svg, "<desc>{desc}</desc>");
    let _ = writeln!(
        svg,
        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"{RADIUS}\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>",
        SIZE / 2.0,
        SIZE / 2.0
    );
    for &(a, b) in chords {
        let (x1, y1) = position(a, two_n, RADIUS);
        let (x2, y2) = position(b, two_n, RADIUS);
        let accent = highlight.contains(&(a, b));
        let (stroke, class) = if accent {
            ("#cc2222", " class=\"crossing\"")
        } else {
            ("#226699", "")
        };
        let _ = writeln!(
            svg,
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"{stroke}\" stroke-width=\"2\"{class}/>"
        );
    }
    for p in 1..=two_n as u32 {
        let (x, y) = position(p, two_n, RADIUS);
        let _ = writeln!(svg, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"#000000\"/>");
        let (lx, ly) = position(p, two_n, LABEL_RADIUS);
        let _ = writeln!(
            svg,
            "<text x=\"{lx:.2}\" y=\"{ly:.2}\" font-size=\"16\" text-anchor=\"middle\" dominant-baseline=\"middle\">{p}</text>"
        );
    }
    svg.push_str("</svg>\n");
    svg
}

/// Extract the `<desc>` payload of a rendered diagram.
pub fn parse_desc(svg: &str) -> Option<&str> {
    let start = svg.find("<desc>")? + "<desc>".len();
    let end = svg[start..].find("</desc>")? + start;
    Some(&svg[start..end])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagram_is_stable_and_carries_its_source() {
        let chords = [(1, 2), (3, 4)];
        let a = chord_diagram(4, &chords, &[], "(1,2)(3,4)");
        let b = chord_diagram(4, &chords, &[], "(1,2)(3,4)");
        assert_eq!(a, b);
        assert_eq!(parse_desc(&a), Some("(1,2)(3,4)"));
        assert!(a.contains("<line"));
        assert!(!a.contains("class=\"crossing\""));
    }

    #[test]
    fn highlighted_chords_take_the_accent_stroke() {
        let chords = [(1, 3), (2, 4)];
        let svg = chord_diagram(4, &chords, &chords, "(1,3)(2,4)");
        assert_eq!(svg.matches("class=\"crossing\"").count(), 2);
        assert_eq!(svg.matches("#cc2222").count(), 2);
    }
}
