//! The built-in classified corpus and the exact identity suites run by the
//! `corpus` command.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify, height, linear_height};
use crate::exponent::{kp_point, verify_nla_identity};
use crate::newton::{build_polygon, LatticeSet};
use crate::polyring::{format_rational, int, parse_polynomial, rat, Exponent, Order, Rational};

/// One corpus row with its expected invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusRow {
    pub phase: &'static str,
    pub label: &'static str,
    pub m: Option<Order>,
    pub n: Option<Order>,
    pub h: Rational,
    pub h_lin: Rational,
    pub linearly_adapted: bool,
    pub k1: Rational,
}

fn row(
    phase: &'static str,
    label: &'static str,
    mn: Option<(Order, Order)>,
    h: Rational,
    h_lin: Rational,
    k1: Rational,
) -> CorpusRow {
    CorpusRow {
        phase,
        label,
        m: mn.map(|x| x.0),
        n: mn.map(|x| x.1),
        linearly_adapted: h == h_lin,
        h,
        h_lin,
        k1,
    }
}

/// The classified corpus. D-type rows use the rank-zero normal form
/// `x·(y − x^k)² + x^n`.
pub fn corpus() -> Vec<CorpusRow> {
    let f = Order::Finite;
    vec![
        row("x^2*y + y^3", "D4", None, rat(3, 2), rat(3, 2), rat(7, 3)),
        row(
            "x*(y - x^2)^2 + x^5",
            "D6",
            Some((f(2), f(5))),
            rat(5, 3),
            rat(5, 3),
            rat(12, 5),
        ),
        row(
            "x*(y - x^2)^2 + x^7",
            "D8",
            Some((f(2), f(7))),
            rat(7, 4),
            rat(5, 3),
            rat(17, 7),
        ),
        row(
            "x*(y - x^3)^2 + x^9",
            "D10",
            Some((f(3), f(9))),
            rat(9, 5),
            rat(7, 4),
            rat(22, 9),
        ),
        row(
            "x*(y - x^2)^2",
            "D_inf",
            Some((f(2), Order::Infinite)),
            int(2),
            rat(5, 3),
            rat(5, 2),
        ),
        row("y^3 + x^4", "E6", None, rat(12, 7), rat(12, 7), rat(29, 12)),
        row("y^3 + y*x^3", "E7", None, rat(9, 5), rat(9, 5), rat(22, 9)),
        row("y^3 + x^5", "E8", None, rat(15, 8), rat(15, 8), rat(37, 15)),
        row("y^3 + x^6", "CaseBIV", None, int(2), int(2), rat(5, 2)),
        row("x^4 + y^4", "CaseC", None, int(2), int(2), rat(5, 2)),
    ]
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Mismatches as `field: expected X, got Y`.
    pub details: Vec<String>,
}

impl CheckResult {
    fn from_details(name: String, details: Vec<String>) -> Self {
        Self {
            name,
            passed: details.is_empty(),
            details,
        }
    }

    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.details.is_empty() {
            format!("{status}  {}", self.name)
        } else {
            format!("{status}  {}  [{}]", self.name, self.details.join("; "))
        }
    }
}

fn compare<T: PartialEq + std::fmt::Display>(out: &mut Vec<String>, field: &str, expected: &T, actual: &T) {
    if expected != actual {
        out.push(format!("{field}: expected {expected}, got {actual}"));
    }
}

fn show(o: Option<Order>) -> String {
    o.map_or_else(|| "-".to_string(), |o| o.to_string())
}

/// Checks one corpus row against the classifier and the exponent formulas.
pub fn check_row(r: &CorpusRow) -> CheckResult {
    let name = format!("{:<8} {}", r.label, r.phase);
    let mut details = Vec::new();
    let outcome = (|| -> Result<(), crate::Error> {
        let p = parse_polynomial(r.phase)?;
        let c = classify(&p)?;
        compare(&mut details, "kind", &r.label.to_string(), &c.kind.label());
        let (m, n) = match c.kind.d_params() {
            Some((m, n)) => (Some(m), Some(n)),
            None => (None, None),
        };
        compare(&mut details, "m", &show(r.m), &show(m));
        compare(&mut details, "n", &show(r.n), &show(n));
        if !c.kind.is_supported() {
            return Ok(());
        }
        let h = height(&c.kind)?;
        let hl = linear_height(&c.kind)?;
        compare(&mut details, "h", &format_rational(&r.h), &format_rational(&h));
        compare(&mut details, "h_lin", &format_rational(&r.h_lin), &format_rational(&hl));
        compare(&mut details, "linearly adapted", &r.linearly_adapted, &(h == hl));
        let k1 = kp_point(&c.kind, &Rational::one())?;
        compare(&mut details, "k_1", &format_rational(&r.k1), &format_rational(&k1));
        Ok(())
    })();
    if let Err(e) = outcome {
        details.push(format!("error: {e}"));
    }
    CheckResult::from_details(name, details)
}

/// `p` values for the sandwich check.
pub fn sandwich_p_values() -> Vec<Rational> {
    vec![int(1), rat(6, 5), rat(4, 3), rat(3, 2), int(2)]
}

/// `(6 − 2/h_lin)u ≤ k_p ≤ (6 − 2/h)u`, with equality when linearly adapted.
pub fn check_sandwich(r: &CorpusRow) -> CheckResult {
    let name = format!("sandwich {}", r.label);
    let mut details = Vec::new();
    let kind = parse_polynomial(r.phase)
        .map_err(crate::Error::from)
        .and_then(|p| classify(&p))
        .map(|c| c.kind);
    match kind {
        Ok(kind) => {
            for p in sandwich_p_values() {
                let u = p.recip() - rat(1, 2);
                let lower = (int(6) - int(2) / &r.h_lin) * &u;
                let upper = (int(6) - int(2) / &r.h) * &u;
                match kp_point(&kind, &p) {
                    Ok(k) => {
                        let ok = lower <= k && k <= upper && (!r.linearly_adapted || (lower == k && k == upper));
                        if !ok {
                            details.push(format!(
                                "p = {}: {} <= {} <= {} fails",
                                format_rational(&p),
                                format_rational(&lower),
                                format_rational(&k),
                                format_rational(&upper)
                            ));
                        }
                    }
                    Err(e) => details.push(format!("p = {}: {e}", format_rational(&p))),
                }
            }
        }
        Err(e) => details.push(format!("error: {e}")),
    }
    CheckResult::from_details(name, details)
}

/// All `(m, n)` with `2 ≤ m ≤ 6`, `2m + 2 ≤ n ≤ 24` or `n = ∞`.
pub fn nla_parameter_grid() -> Vec<(u32, Order)> {
    (2..=6)
        .flat_map(|m| {
            (2 * m + 2..=24)
                .map(Order::Finite)
                .chain(std::iter::once(Order::Infinite))
                .map(move |n| (m, n))
        })
        .collect()
}

pub fn check_nla_identities() -> CheckResult {
    let grid = nla_parameter_grid();
    let failures: Vec<String> = grid
        .iter()
        .filter(|(m, n)| !matches!(verify_nla_identity(*m, *n), Ok(true)))
        .map(|(m, n)| format!("m = {m}, n = {n}"))
        .collect();
    CheckResult::from_details(
        format!("interpolation identity on {} (m, n) pairs", grid.len()),
        failures,
    )
}

/// Newton distance from supporting lines alone: the largest `c/(w₁+w₂)`
/// over lines `w·t = c` through one or two support points that leave every
/// support point on the side `w·t ≥ c`.
pub fn distance_by_supporting_lines(points: &[Exponent]) -> Rational {
    let r = |v: u32| Rational::from_integer(v.into());
    let mut candidates: Vec<(Rational, Rational)> =
        vec![(Rational::one(), Rational::zero()), (Rational::zero(), Rational::one())];
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            // normal to b − a, oriented into the first quadrant
            let w1 = r(b.1) - r(a.1);
            let w2 = r(a.0) - r(b.0);
            if w1 < Rational::zero() && w2 < Rational::zero() {
                candidates.push((-w1, -w2));
            } else if w1 >= Rational::zero() && w2 >= Rational::zero() && !(w1.is_zero() && w2.is_zero()) {
                candidates.push((w1, w2));
            }
        }
    }
    let mut best = Rational::zero();
    for (w1, w2) in candidates {
        let c = points
            .iter()
            .map(|e| &w1 * r(e.0) + &w2 * r(e.1))
            .min()
            .expect("nonempty support");
        let d = c / (&w1 + &w2);
        if d > best {
            best = d;
        }
    }
    best
}

/// Random supports of at most `max_points` points with coordinates `≤ max_coord`.
pub fn random_supports(seed: u64, count: usize, max_points: usize, max_coord: u32) -> Vec<Vec<Exponent>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=max_points);
            (0..k)
                .map(|_| (rng.gen_range(0..=max_coord), rng.gen_range(0..=max_coord)))
                .collect()
        })
        .collect()
}

pub fn check_random_distances(seed: u64, count: usize) -> CheckResult {
    let mut failures = Vec::new();
    for (i, pts) in random_supports(seed, count, 12, 20).iter().enumerate() {
        let d = build_polygon(&LatticeSet::new(pts.iter().copied())).map(|p| p.distance().clone());
        let oracle = distance_by_supporting_lines(pts);
        match d {
            Ok(d) if d == oracle => {}
            Ok(d) => failures.push(format!(
                "support #{i} {pts:?}: expected {}, got {}",
                format_rational(&oracle),
                format_rational(&d)
            )),
            Err(e) => failures.push(format!("support #{i}: {e}")),
        }
    }
    CheckResult::from_details(
        format!("Newton distance vs supporting lines, {count} supports, seed {seed}"),
        failures,
    )
}

/// Options of a corpus run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusOptions {
    /// Only rows whose label starts with this tag.
    pub filter: Option<String>,
    /// Replace the expected `k_1` of this row (by label) with a wrong value.
    pub poison: Option<String>,
    pub seed: u64,
}

/// Poisoned expectations differ from the truth by exactly 1/1000.
pub fn poison_rows(rows: &mut [CorpusRow], label: &str) -> bool {
    let mut hit = false;
    for r in rows.iter_mut().filter(|r| r.label == label) {
        r.k1 += rat(1, 1000);
        hit = true;
    }
    hit
}

pub fn run_corpus(opts: &CorpusOptions) -> Vec<CheckResult> {
    let mut rows = corpus();
    if let Some(label) = &opts.poison {
        poison_rows(&mut rows, label);
    }
    if let Some(tag) = &opts.filter {
        rows.retain(|r| r.label.starts_with(tag.as_str()));
    }
    let mut out: Vec<CheckResult> = rows.iter().map(check_row).collect();
    if opts.filter.is_none() {
        out.extend(rows.iter().map(check_sandwich));
        out.push(check_nla_identities());
        out.push(check_random_distances(opts.seed, 200));
    }
    out
}
