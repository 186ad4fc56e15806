use std::fmt::Write;

use nphk::classify::{classify, height, linear_height};
use nphk::cli::{analyze_text, default_p_list, parse_p_list, polygon_svg};
use nphk::exponent::kp_profile;
use nphk::newton::polygon_of;
use nphk::oscint::{eval_oscillatory_with, AmplitudeSpec, PhaseF64, QuadConfig};
use nphk::polyring::{format_rational, int, parse_polynomial, rat, to_f64};

/// Largest `λ` the page will integrate; keeps a single click under a second.
pub const MAX_LAMBDA: f64 = 4096.0;

pub fn analyze_json(phi: &str, p_list: &str) -> Result<String, String> {
    let ps = if p_list.trim().is_empty() {
        default_p_list()
    } else {
        parse_p_list(p_list).map_err(|e| e.to_string())?
    };
    if let Some(p) = ps.iter().find(|p| **p < int(1) || **p > int(2)) {
        return Err(format!("p = {} outside [1, 2]", format_rational(p)));
    }
    let report = analyze_text(phi, &ps).map_err(|e| e.to_string())?;
    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())
}

pub fn polygon(phi: &str) -> Result<String, String> {
    let p = parse_polynomial(phi).map_err(|e| e.to_string())?;
    let poly = polygon_of(&p).map_err(|e| e.to_string())?;
    Ok(polygon_svg(&poly, &p.to_string()))
}

pub fn profile(phi: &str) -> Result<String, String> {
    let p = parse_polynomial(phi).map_err(|e| e.to_string())?;
    let kind = classify(&p).map_err(|e| e.to_string())?.kind;
    let prof = kp_profile(&kind).map_err(|e| e.to_string())?;
    let h = height(&kind).map_err(|e| e.to_string())?;
    let hl = linear_height(&kind).map_err(|e| e.to_string())?;

    let (w, ht, pad) = (420.0, 300.0, 40.0);
    // 1/p on [1/2, 1], k on [0, 3]
    let px = |v: f64| pad + (v - 0.5) / 0.5 * (w - 2.0 * pad);
    let py = |k: f64| ht - pad - k / 3.0 * (ht - 2.0 * pad);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{ht}" viewBox="0 0 {w} {ht}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r##"<rect width="{w}" height="{ht}" fill="#fff"/>"##);
    let _ = writeln!(
        out,
        r##"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="#ccc"/>"##,
        w - 2.0 * pad,
        ht - 2.0 * pad
    );
    for (v, label) in [(0.5, "1/2"), (0.75, "3/4"), (1.0, "1")] {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{label}</text>"#,
            px(v),
            ht - pad + 14.0
        );
    }
    for k in 0..=3 {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{k}</text>"#,
            pad - 5.0,
            py(f64::from(k)) + 4.0
        );
    }
    // bounds (6 − 2/h)u and (6 − 2/h_lin)u, u = 1/p − 1/2
    for (hh, colour) in [(&h, "#999"), (&hl, "#ccc")] {
        let slope = to_f64(&(int(6) - int(2) / hh));
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{colour}" stroke-dasharray="4 3"/>"#,
            px(0.5),
            py(0.0),
            px(1.0),
            py(slope * 0.5)
        );
    }
    let mut pts = Vec::new();
    for s in &prof.segments {
        for u in [&s.u_from, &s.u_to] {
            let k = s.eval(u);
            pts.push(format!("{:.1},{:.1}", px(to_f64(&(u + rat(1, 2)))), py(to_f64(&k))));
        }
    }
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#c0392b" stroke-width="2"/>"##,
        pts.join(" ")
    );
    let _ = writeln!(
        out,
        r#"<text x="{pad}" y="{:.1}">{kind}: h = {}, h_lin = {}</text>"#,
        pad - 12.0,
        format_rational(&h),
        format_rational(&hl)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn oscillatory(phi: &str, lambda: f64, radius: f64) -> Result<String, String> {
    if !(lambda > 0.0 && lambda <= MAX_LAMBDA) {
        return Err(format!("lambda must lie in (0, {MAX_LAMBDA}]"));
    }
    let p = parse_polynomial(phi).map_err(|e| e.to_string())?;
    let amp = AmplitudeSpec::new(radius).map_err(|e| e.to_string())?;
    let v = eval_oscillatory_with(&PhaseF64::new(&p), &amp, lambda, (0.0, 0.0), &QuadConfig::default())
        .map_err(|e| e.to_string())?;
    Ok(format!(
        r#"{{"lambda":{lambda},"re":{:e},"im":{:e},"abs":{:e},"err":{:e}}}"#,
        v.value.re,
        v.value.im,
        v.value.norm(),
        v.err
    ))
}
