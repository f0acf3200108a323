//! Deterministic SVG rendering of a configuration: unit circle, strong
//! vortex as a cross, weak vortices as colored dots (hollow for negative
//! weight).

use std::fmt::Write;

use vortexre::export::ConfigRecord;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

pub fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

fn fmt_list(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| format!("{}", (x * 1e6).round() / 1e6))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render(c: &ConfigRecord) -> String {
    let reach = c
        .weak
        .iter()
        .chain(std::iter::once(&c.strong))
        .map(|p| p[0].abs().max(p[1].abs()))
        .fold(1.0f64, f64::max);
    let e = (reach + 0.35).max(1.35);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="400" height="400" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        -e,
        -e,
        2.0 * e,
        2.0 * e
    );
    let _ = writeln!(
        s,
        r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="white"/>"#,
        -e,
        -e,
        2.0 * e,
        2.0 * e
    );
    let _ = writeln!(
        s,
        r##"<circle cx="0" cy="0" r="1" fill="none" stroke="#999999" stroke-width="0.008" stroke-dasharray="0.04 0.03"/>"##
    );
    let (x0, y0) = (c.strong[0], -c.strong[1]);
    let _ = writeln!(
        s,
        r#"<path d="M {:.6} {:.6} L {:.6} {:.6} M {:.6} {:.6} L {:.6} {:.6}" stroke="black" stroke-width="0.02"/>"#,
        x0 - 0.06,
        y0,
        x0 + 0.06,
        y0,
        x0,
        y0 - 0.06,
        x0,
        y0 + 0.06
    );
    for (i, p) in c.weak.iter().enumerate() {
        let col = color(i);
        let negative = c.mu.get(i).is_some_and(|m| *m < 0.0);
        let fill = if negative { "white" } else { col };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.6}" cy="{:.6}" r="0.055" fill="{fill}" stroke="{col}" stroke-width="0.02"/>"#,
            p[0], -p[1]
        );
        let norm = p[0].hypot(p[1]).max(1e-12);
        let _ = writeln!(
            s,
            r#"<text x="{:.6}" y="{:.6}" font-size="0.09" font-family="sans-serif" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            p[0] + 0.14 * p[0] / norm,
            -(p[1] + 0.14 * p[1] / norm),
            i + 1
        );
    }
    let title = match &c.label {
        Some(l) => format!("{l}  μ = ({}), ε = {}", fmt_list(&c.mu), c.eps),
        None => format!("μ = ({}), ε = {}", fmt_list(&c.mu), c.eps),
    };
    let _ = writeln!(
        s,
        r#"<text x="{:.6}" y="{:.6}" font-size="0.08" font-family="sans-serif">{}</text>"#,
        -e + 0.05,
        -e + 0.12,
        title
    );
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_colored() {
        let c = ConfigRecord {
            mu: vec![1.0, -1.0, 1.0],
            eps: 0.0,
            strong: [0.0, 0.0],
            weak: vec![
                [1.0, 0.0],
                [-0.5, 0.8660254037844386],
                [-0.5, -0.8660254037844386],
            ],
            label: None,
        };
        let a = render(&c);
        assert_eq!(a, render(&c));
        assert!(a.contains("#1f77b4") && a.contains("#ff7f0e") && a.contains("#2ca02c"));
        assert!(a.contains(r##"fill="white" stroke="#ff7f0e""##));
    }
}
