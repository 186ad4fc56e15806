//! The `analyze` report: every symbolic invariant of one phase, with exact
//! rationals serialized as `"num/den"` strings.

use serde::Serialize;

use crate::classify::{classify, height_report, Classification, SingularityKind};
use crate::error::Error;
use crate::exponent::{kp_point, kp_profile, ExponentProfile};
use crate::newton::{polygon_of, taylor_support, Face, FaceKind, NewtonPolygon, RayDirection};
use crate::polyring::{format_rational, parse_polynomial, rat, BivariatePolynomial, Order, Rational};

pub const WARN_RANK: &str = "rank >= 1: out of scope";
pub const WARN_UNSUPPORTED: &str = "h > 2: unsupported";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceReport {
    pub kind: FaceKind,
    pub points: Vec<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<RayDirection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<[String; 2]>,
}

impl FaceReport {
    pub fn new(face: &Face) -> Self {
        let direction = match face {
            Face::Ray { direction, .. } => Some(*direction),
            _ => None,
        };
        Self {
            kind: face.kind(),
            points: face.endpoints().into_iter().map(|(a, b)| [a, b]).collect(),
            direction,
            weight: face.weight().map(|w| [format_rational(&w.k1), format_rational(&w.k2)]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonReport {
    pub vertices: Vec<[u32; 2]>,
    pub edges: Vec<FaceReport>,
    pub d: String,
    pub principal_face: FaceReport,
}

impl PolygonReport {
    pub fn new(poly: &NewtonPolygon) -> Self {
        Self {
            vertices: poly.vertices().iter().map(|&(a, b)| [a, b]).collect(),
            edges: poly.edges().iter().map(FaceReport::new).collect(),
            d: format_rational(poly.distance()),
            principal_face: FaceReport::new(poly.principal_face()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KpEntry {
    pub p: String,
    pub k_p: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentReport {
    pub slope: String,
    pub intercept: String,
    pub u_from: String,
    pub u_to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub input_text: String,
    pub phase: String,
    pub taylor_support: Vec<[u32; 2]>,
    pub polygon: PolygonReport,
    pub rank: u8,
    pub kind: String,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<String>,
    pub h: Option<String>,
    pub h_lin: Option<String>,
    pub linearly_adapted: Option<bool>,
    pub multiplicity: Option<u8>,
    /// Newton polygon in the adapted coordinates, when they were built.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub adapted_phase: Option<String>,
    pub kp_table: Vec<KpEntry>,
    pub profile: Vec<SegmentReport>,
    pub warnings: Vec<String>,
}

/// `p` values used when none are requested.
pub fn default_p_list() -> Vec<Rational> {
    vec![rat(1, 1), rat(6, 5), rat(4, 3), rat(3, 2), rat(2, 1)]
}

fn order_text(o: Order) -> String {
    o.to_string()
}

fn kind_params(kind: &SingularityKind) -> [Option<String>; 4] {
    match kind {
        SingularityKind::D { m, n } => [Some(order_text(*m)), Some(order_text(*n)), None, None],
        SingularityKind::E6 { k0, k1 }
        | SingularityKind::E7 { k0, k1 }
        | SingularityKind::E8 { k0, k1 }
        | SingularityKind::CaseBIV { k0, k1 } => [None, None, Some(order_text(*k0)), Some(order_text(*k1))],
        _ => [None, None, None, None],
    }
}

fn profile_rows(profile: &ExponentProfile) -> Vec<SegmentReport> {
    profile
        .segments
        .iter()
        .map(|s| SegmentReport {
            slope: format_rational(&s.slope),
            intercept: format_rational(&s.intercept),
            u_from: format_rational(&s.u_from),
            u_to: format_rational(&s.u_to),
        })
        .collect()
}

/// Builds the report for an already parsed phase.
pub fn report_for(input_text: &str, p: &BivariatePolynomial, p_list: &[Rational]) -> Result<AnalysisReport, Error> {
    let support = taylor_support(p)?;
    let polygon = polygon_of(p)?;
    let c: Classification = classify(p)?;
    let [m, n, k0, k1] = kind_params(&c.kind);
    let mut report = AnalysisReport {
        input_text: input_text.to_string(),
        phase: p.to_string(),
        taylor_support: support.points().map(|(a, b)| [a, b]).collect(),
        polygon: PolygonReport::new(&polygon),
        rank: c.rank,
        kind: c.kind.label(),
        family: c.kind.tag().to_string(),
        m,
        n,
        k0,
        k1,
        h: None,
        h_lin: None,
        linearly_adapted: None,
        multiplicity: None,
        adapted_phase: None,
        kp_table: Vec::new(),
        profile: Vec::new(),
        warnings: Vec::new(),
    };
    match &c.kind {
        SingularityKind::NondegenerateOrRankPositive { .. } => report.warnings.push(WARN_RANK.into()),
        SingularityKind::UnsupportedHeightAbove2 => report.warnings.push(WARN_UNSUPPORTED.into()),
        kind => {
            let hr = height_report(&c)?;
            let profile = kp_profile(kind)?;
            report.h = Some(format_rational(&hr.h));
            report.h_lin = Some(format_rational(&hr.h_lin));
            report.linearly_adapted = Some(hr.linearly_adapted);
            report.multiplicity = Some(hr.multiplicity);
            report.adapted_phase = c.adapted.as_ref().map(|a| a.to_string());
            report.kp_table = p_list
                .iter()
                .map(|p| {
                    Ok(KpEntry {
                        p: format_rational(p),
                        k_p: format_rational(&kp_point(kind, p)?),
                    })
                })
                .collect::<Result<_, Error>>()?;
            report.profile = profile_rows(&profile);
        }
    }
    Ok(report)
}

/// Parses `text` and builds its report.
pub fn analyze_text(text: &str, p_list: &[Rational]) -> Result<AnalysisReport, Error> {
    let p = parse_polynomial(text)?;
    report_for(text, &p, p_list)
}

/// Plain-text summary used on stdout.
pub fn summary_lines(r: &AnalysisReport) -> Vec<String> {
    let mut out = vec![
        format!("phase      {}", r.phase),
        format!("support    {:?}", r.taylor_support),
        format!(
            "distance   d = {}   principal face: {:?}",
            r.polygon.d, r.polygon.principal_face.kind
        ),
        format!("class      {} (rank {})", r.kind, r.rank),
    ];
    if let (Some(m), Some(n)) = (&r.m, &r.n) {
        out.push(format!("D data     m = {m}, n = {n}"));
    }
    if let (Some(h), Some(hl)) = (&r.h, &r.h_lin) {
        out.push(format!(
            "heights    h = {h}, h_lin = {hl}, linearly adapted: {}, multiplicity: {}",
            r.linearly_adapted.unwrap_or(false),
            r.multiplicity.unwrap_or(0)
        ));
    }
    for e in &r.kp_table {
        out.push(format!("k_p        p = {:<5} k_p = {}", e.p, e.k_p));
    }
    for w in &r.warnings {
        out.push(format!("warning    {w}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_for_nla_row() {
        let r = analyze_text("x*(y - x^2)^2 + x^7", &[rat(1, 1), rat(4, 3), rat(2, 1)]).unwrap();
        assert_eq!(r.kind, "D8");
        assert_eq!(r.m.as_deref(), Some("2"));
        assert_eq!(r.n.as_deref(), Some("7"));
        assert_eq!(r.h.as_deref(), Some("7/4"));
        assert_eq!(r.h_lin.as_deref(), Some("5/3"));
        assert_eq!(r.linearly_adapted, Some(false));
        assert_eq!(r.kp_table[0].k_p, "17/7");
        assert_eq!(r.kp_table[2].k_p, "0");
        assert_eq!(r.profile.len(), 2);
    }

    #[test]
    fn rank_positive_still_reports_polygon() {
        let r = analyze_text("x^2 + y^3", &default_p_list()).unwrap();
        assert_eq!(r.warnings, vec![WARN_RANK.to_string()]);
        assert_eq!(r.polygon.d, "6/5");
        assert!(r.h.is_none());
        assert!(r.kp_table.is_empty());
    }

    #[test]
    fn json_rationals_are_strings() {
        let r = analyze_text("y^3 + x^4", &[rat(1, 1)]).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["h"], "12/7");
        assert_eq!(v["kp_table"][0]["k_p"], "29/12");
        assert_eq!(v["polygon"]["d"], "12/7");
    }
}
