use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::PBox;

/// CSV with header `level,q_lo,q_hi`, one row per level, ascending.
///
/// Values use the shortest representation that parses back to the same `f64`.
pub fn to_csv(x: &PBox) -> String {
    let mut out = String::from("level,q_lo,q_hi\n");
    for i in 0..x.steps() {
        let _ = writeln!(out, "{},{},{}", x.level(i), x.q_lo[i], x.q_hi[i]);
    }
    out
}

pub fn read_csv(text: &str) -> Result<PBox> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == "level,q_lo,q_hi" => {}
        other => {
            return Err(Error::Domain(format!("unexpected p-box CSV header {other:?}")));
        }
    }
    let mut q_lo = Vec::new();
    let mut q_hi = Vec::new();
    for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Domain(format!("row {}: {e}", n + 2)));
        if fields.len() != 3 {
            return Err(Error::Domain(format!("row {}: expected 3 fields", n + 2)));
        }
        q_lo.push(parse(fields[1])?);
        q_hi.push(parse(fields[2])?);
    }
    PBox::new(q_lo, q_hi)
}

const SIZE: f64 = 400.0;
const MARGIN: f64 = 40.0;

fn sx(x: f64) -> f64 {
    MARGIN + x * SIZE
}

fn sy(y: f64) -> f64 {
    MARGIN + (1.0 - y) * SIZE
}

/// Staircase CDF through the given quantiles, from `(0, 0)` to `(1, 1)`.
fn step_points(q: &[f64]) -> Vec<(f64, f64)> {
    let n = q.len() as f64;
    let mut pts = vec![(0.0, 0.0)];
    for (i, &v) in q.iter().enumerate() {
        pts.push((v, i as f64 / n));
        pts.push((v, (i + 1) as f64 / n));
    }
    pts.push((1.0, 1.0));
    pts
}

fn path(pts: &[(f64, f64)]) -> String {
    let mut d = String::new();
    for (k, (x, y)) in pts.iter().enumerate() {
        let cmd = if k == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{:.3},{:.3} ", sx(*x), sy(*y));
    }
    d.trim_end().to_string()
}

/// SVG band chart of the two CDF bounds on `[0, 1] x [0, 1]`.
pub fn to_svg(x: &PBox, title: &str) -> String {
    let upper_cdf = step_points(&x.q_lo);
    let lower_cdf = step_points(&x.q_hi);
    let mut band = upper_cdf.clone();
    band.extend(lower_cdf.iter().rev());
    let full = SIZE + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{full}" height="{full}" viewBox="0 0 {full} {full}">"#
    );
    let _ = writeln!(out, "  <title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        r#"  <rect x="{MARGIN}" y="{MARGIN}" width="{SIZE}" height="{SIZE}" fill="none" stroke="black"/>"#
    );
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let _ = writeln!(
            out,
            r#"  <text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle">{t}</text>"#,
            sx(t),
            full - MARGIN / 2.0
        );
        let _ = writeln!(
            out,
            r#"  <text x="{:.1}" y="{:.1}" font-size="10" text-anchor="end">{t}</text>"#,
            MARGIN - 4.0,
            sy(t) + 3.0
        );
    }
    let _ = writeln!(out, r##"  <path d="{} Z" fill="#999999" fill-opacity="0.4" stroke="none"/>"##, path(&band));
    let _ = writeln!(out, r#"  <path d="{}" fill="none" stroke="red"/>"#, path(&upper_cdf));
    let _ = writeln!(out, r#"  <path d="{}" fill="none" stroke="black"/>"#, path(&lower_cdf));
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbox::cbox_kn;

    #[test]
    fn csv_round_trips_exactly() {
        let c = cbox_kn(5, 6, 30).unwrap();
        let text = to_csv(&c);
        assert!(text.starts_with("level,q_lo,q_hi\n"));
        assert_eq!(text.lines().count(), 31);
        assert_eq!(read_csv(&text).unwrap(), c);
    }

    #[test]
    fn csv_rejects_bad_header() {
        assert!(read_csv("a,b,c\n0.5,0.1,0.2\n").is_err());
        assert!(read_csv("level,q_lo,q_hi\n0.5,0.1\n").is_err());
    }

    #[test]
    fn svg_has_two_paths_and_band() {
        let svg = to_svg(&cbox_kn(5, 6, 10).unwrap(), "KN(5,6) <demo>");
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<path").count(), 3);
        assert!(svg.contains("&lt;demo&gt;"));
    }
}
