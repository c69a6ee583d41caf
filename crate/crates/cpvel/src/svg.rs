use std::fmt::Write as _;

use cpvel_core::Packing;

/// Options for [`render_packing`].
#[derive(Debug, Clone)]
pub struct RenderOptions {
    /// Width and height in pixels.
    pub size: f64,
    /// Vertex to highlight, usually the root.
    pub highlight: Option<usize>,
    /// Circles smaller than this many pixels are skipped.
    pub min_pixels: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { size: 800.0, highlight: None, min_pixels: 0.0 }
    }
}

/// Renders the unit circle and one `<circle>` per vertex. The y axis points
/// up, as in the plane.
pub fn render_packing(p: &Packing, opts: &RenderOptions) -> String {
    let half = opts.size / 2.0;
    let scale = half * 0.98;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = opts.size
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<g transform="translate({half} {half}) scale({scale} {neg})" stroke-width="{w}">"#,
        neg = -scale,
        w = 1.0 / scale
    );
    let _ = writeln!(out, r#"<circle cx="0" cy="0" r="1" fill="none" stroke="black"/>"#);
    for (v, c) in p.circles().iter().enumerate() {
        if opts.highlight != Some(v) && c.radius * scale < opts.min_pixels {
            continue;
        }
        let fill = if opts.highlight == Some(v) { "#e4572e" } else { "#a8c5e6" };
        let _ = writeln!(
            out,
            r##"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="{fill}" stroke="#1d3557"><title>{v}</title></circle>"##,
            c.center.re, c.center.im, c.radius
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
