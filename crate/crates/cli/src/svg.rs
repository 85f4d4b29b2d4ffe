//! Minimal self-contained SVG emission for scatter and line views of the
//! experiment CSVs. The plots are a convenience; the CSVs stay the source of
//! truth.

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn from_points(points: &[(f64, f64)]) -> Frame {
        let mut x_min = f64::INFINITY;
        let mut x_max = f64::NEG_INFINITY;
        let mut y_min = f64::INFINITY;
        let mut y_max = f64::NEG_INFINITY;
        for &(x, y) in points {
            x_min = x_min.min(x);
            x_max = x_max.max(x);
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
        if !x_min.is_finite() {
            (x_min, x_max, y_min, y_max) = (0.0, 1.0, 0.0, 1.0);
        }
        let pad = |lo: &mut f64, hi: &mut f64| {
            let span = (*hi - *lo).abs();
            let pad = if span == 0.0 { 0.5 } else { span * 0.05 };
            *lo -= pad;
            *hi += pad;
        };
        pad(&mut x_min, &mut x_max);
        pad(&mut y_min, &mut y_max);
        Frame {
            x_min,
            x_max,
            y_min,
            y_max,
        }
    }

    fn sx(&self, x: f64) -> f64 {
        MARGIN_LEFT + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT)
    }

    fn sy(&self, y: f64) -> f64 {
        HEIGHT - MARGIN_BOTTOM
            - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)
    }
}

fn header(title: &str) -> String {
    format!(
        concat!(
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" "#,
            r#"viewBox="0 0 {w} {h}">"#,
            r#"<rect width="{w}" height="{h}" fill="white"/>"#,
            r#"<text x="{tx}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{title}</text>"#
        ),
        w = WIDTH,
        h = HEIGHT,
        tx = WIDTH / 2.0,
        title = title
    )
}

fn axes(frame: &Frame, x_label: &str, y_label: &str) -> String {
    let mut out = String::new();
    let x0 = MARGIN_LEFT;
    let x1 = WIDTH - MARGIN_RIGHT;
    let y0 = HEIGHT - MARGIN_BOTTOM;
    let y1 = MARGIN_TOP;
    out.push_str(&format!(
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    ));
    for k in 0..=5 {
        let fx = frame.x_min + (frame.x_max - frame.x_min) * k as f64 / 5.0;
        let px = frame.sx(fx);
        out.push_str(&format!(
            concat!(
                r#"<line x1="{px}" y1="{y0}" x2="{px}" y2="{yt}" stroke="black"/>"#,
                r#"<text x="{px}" y="{ly}" font-family="sans-serif" font-size="11" text-anchor="middle">{v:.3}</text>"#
            ),
            px = px,
            y0 = y0,
            yt = y0 + 5.0,
            ly = y0 + 18.0,
            v = fx
        ));
        let fy = frame.y_min + (frame.y_max - frame.y_min) * k as f64 / 5.0;
        let py = frame.sy(fy);
        out.push_str(&format!(
            concat!(
                r#"<line x1="{xt}" y1="{py}" x2="{x0}" y2="{py}" stroke="black"/>"#,
                r#"<text x="{lx}" y="{ty}" font-family="sans-serif" font-size="11" text-anchor="end">{v:.3}</text>"#
            ),
            xt = x0 - 5.0,
            py = py,
            x0 = x0,
            lx = x0 - 8.0,
            ty = py + 4.0,
            v = fy
        ));
    }
    out.push_str(&format!(
        concat!(
            r#"<text x="{cx}" y="{by}" font-family="sans-serif" font-size="13" text-anchor="middle">{xl}</text>"#,
            r#"<text x="16" y="{cy}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 {cy})">{yl}</text>"#
        ),
        cx = (x0 + x1) / 2.0,
        by = HEIGHT - 12.0,
        cy = (y0 + y1) / 2.0,
        xl = x_label,
        yl = y_label
    ));
    out
}

pub fn scatter_svg(points: &[(f64, f64)], title: &str, x_label: &str, y_label: &str) -> String {
    let frame = Frame::from_points(points);
    let mut out = header(title);
    out.push_str(&axes(&frame, x_label, y_label));
    for &(x, y) in points {
        out.push_str(&format!(
            r#"<circle cx="{:.2}" cy="{:.2}" r="1.6" fill="steelblue" fill-opacity="0.45"/>"#,
            frame.sx(x),
            frame.sy(y)
        ));
    }
    out.push_str("</svg>\n");
    out
}

pub fn line_svg(points: &[(f64, f64)], title: &str, x_label: &str, y_label: &str) -> String {
    let frame = Frame::from_points(points);
    let mut out = header(title);
    out.push_str(&axes(&frame, x_label, y_label));
    let path: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", frame.sx(x), frame.sy(y)))
        .collect();
    out.push_str(&format!(
        r#"<polyline points="{}" fill="none" stroke="firebrick" stroke-width="1.8"/>"#,
        path.join(" ")
    ));
    for &(x, y) in points {
        out.push_str(&format!(
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="firebrick"/>"#,
            frame.sx(x),
            frame.sy(y)
        ));
    }
    out.push_str("</svg>\n");
    out
}
