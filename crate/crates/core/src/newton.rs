//! Newton polygon of a phase at the origin: Taylor support, the convex hull
//! of `∪ α + ℝ₊²`, the Newton distance and the principal face.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::Error;
use crate::polyring::{format_rational, BivariatePolynomial, Exponent, LinearMap2, Rational};

/// Finite set of exponent pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeSet {
    points: BTreeSet<Exponent>,
}

impl LatticeSet {
    pub fn new<I: IntoIterator<Item = Exponent>>(points: I) -> Self {
        Self {
            points: points.into_iter().collect(),
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.points.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, e: Exponent) -> bool {
        self.points.contains(&e)
    }

    pub fn insert(&mut self, e: Exponent) {
        self.points.insert(e);
    }
}

/// Supporting weight `(κ₁, κ₂)` of the line `κ₁t₁ + κ₂t₂ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub k1: Rational,
    pub k2: Rational,
}

impl Weight {
    pub fn eval(&self, e: Exponent) -> Rational {
        &self.k1 * Rational::from_integer(e.0.into()) + &self.k2 * Rational::from_integer(e.1.into())
    }

    pub fn norm(&self) -> Rational {
        &self.k1 + &self.k2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RayDirection {
    /// `t₂ → ∞` along `t₁ = const`.
    Up,
    /// `t₁ → ∞` along `t₂ = const`.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceKind {
    Vertex,
    CompactEdge,
    UnboundedRay,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Vertex(Exponent),
    /// Compact edge; `from` has the smaller `t₁`.
    Edge {
        from: Exponent,
        to: Exponent,
        weight: Weight,
    },
    Ray {
        origin: Exponent,
        direction: RayDirection,
        /// Absent when the ray lies on a coordinate axis.
        weight: Option<Weight>,
    },
}

impl Face {
    pub fn kind(&self) -> FaceKind {
        match self {
            Face::Vertex(_) => FaceKind::Vertex,
            Face::Edge { .. } => FaceKind::CompactEdge,
            Face::Ray { .. } => FaceKind::UnboundedRay,
        }
    }

    pub fn weight(&self) -> Option<&Weight> {
        match self {
            Face::Vertex(_) => None,
            Face::Edge { weight, .. } => Some(weight),
            Face::Ray { weight, .. } => weight.as_ref(),
        }
    }

    pub fn endpoints(&self) -> Vec<Exponent> {
        match self {
            Face::Vertex(v) => vec![*v],
            Face::Edge { from, to, .. } => vec![*from, *to],
            Face::Ray { origin, .. } => vec![*origin],
        }
    }

    /// Whether the lattice point `e` lies on this face.
    pub fn contains(&self, e: Exponent) -> bool {
        match self {
            Face::Vertex(v) => *v == e,
            Face::Edge { from, to, .. } => {
                let (a1, a2) = (i64::from(from.0), i64::from(from.1));
                let (b1, b2) = (i64::from(to.0), i64::from(to.1));
                let (e1, e2) = (i64::from(e.0), i64::from(e.1));
                let cross = (b1 - a1) * (e2 - a2) - (b2 - a2) * (e1 - a1);
                cross == 0 && (a1..=b1).contains(&e1)
            }
            Face::Ray {
                origin,
                direction: RayDirection::Up,
                ..
            } => e.0 == origin.0 && e.1 >= origin.1,
            Face::Ray {
                origin,
                direction: RayDirection::Right,
                ..
            } => e.1 == origin.1 && e.0 >= origin.0,
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Vertex(v) => write!(f, "vertex {v:?}"),
            Face::Edge { from, to, weight } => write!(
                f,
                "edge {from:?}-{to:?} (κ = {}, {})",
                format_rational(&weight.k1),
                format_rational(&weight.k2)
            ),
            Face::Ray { origin, direction, .. } => write!(f, "ray {direction:?} from {origin:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<Exponent>,
    edges: Vec<Face>,
    distance: Rational,
    principal_face: Face,
}

impl NewtonPolygon {
    /// Extreme points ordered by increasing `t₁`.
    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    /// Boundary faces in order: vertical ray, compact edges left to right,
    /// horizontal ray.
    pub fn edges(&self) -> &[Face] {
        &self.edges
    }

    pub fn compact_edges(&self) -> impl Iterator<Item = &Face> {
        self.edges.iter().filter(|f| f.kind() == FaceKind::CompactEdge)
    }

    pub fn distance(&self) -> &Rational {
        &self.distance
    }

    pub fn principal_face(&self) -> &Face {
        &self.principal_face
    }

    pub fn bisectrix_point(&self) -> (Rational, Rational) {
        (self.distance.clone(), self.distance.clone())
    }

    /// Every face of the polygon, including the vertices.
    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.vertices
            .iter()
            .map(|&v| Face::Vertex(v))
            .chain(self.edges.iter().cloned())
    }
}

/// Exponents with nonzero coefficient; rejects phases with constant or
/// linear terms.
pub fn taylor_support(p: &BivariatePolynomial) -> Result<LatticeSet, Error> {
    if p.support().any(|(a, b)| a + b <= 1) {
        return Err(Error::NotCriticalAtOrigin);
    }
    Ok(LatticeSet::new(p.support()))
}

fn cross(o: Exponent, a: Exponent, b: Exponent) -> i64 {
    let (o1, o2) = (i64::from(o.0), i64::from(o.1));
    (i64::from(a.0) - o1) * (i64::from(b.1) - o2) - (i64::from(a.1) - o2) * (i64::from(b.0) - o1)
}

fn edge_weight(a: Exponent, b: Exponent) -> Weight {
    let det = i64::from(a.0) * i64::from(b.1) - i64::from(a.1) * i64::from(b.0);
    let k1 = i64::from(b.1) - i64::from(a.1);
    let k2 = i64::from(a.0) - i64::from(b.0);
    Weight {
        k1: Rational::new(k1.into(), det.into()),
        k2: Rational::new(k2.into(), det.into()),
    }
}

fn axis_weight(level: u32, up: bool) -> Option<Weight> {
    (level > 0).then(|| {
        let w = Rational::new(1.into(), level.into());
        if up {
            Weight {
                k1: w,
                k2: Rational::zero(),
            }
        } else {
            Weight {
                k1: Rational::zero(),
                k2: w,
            }
        }
    })
}

/// Convex hull of `∪ α + ℝ₊²` over the support, with its Newton distance.
pub fn build_polygon(s: &LatticeSet) -> Result<NewtonPolygon, Error> {
    if s.is_empty() {
        return Err(Error::EmptySupport);
    }
    // staircase: dominated points never touch the boundary
    // (t1, t2) ascending order: a point survives iff it is strictly lower than all before it
    let mut stair: Vec<Exponent> = Vec::new();
    for e in s.points() {
        if stair.last().is_none_or(|last| e.1 < last.1) {
            stair.push(e);
        }
    }
    let mut hull: Vec<Exponent> = Vec::with_capacity(stair.len());
    for &e in &stair {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], e) <= 0 {
            hull.pop();
        }
        hull.push(e);
    }

    let left = hull[0];
    let bottom = *hull.last().expect("nonempty");
    let mut edges = vec![Face::Ray {
        origin: left,
        direction: RayDirection::Up,
        weight: axis_weight(left.0, true),
    }];
    for w in hull.windows(2) {
        edges.push(Face::Edge {
            from: w[0],
            to: w[1],
            weight: edge_weight(w[0], w[1]),
        });
    }
    edges.push(Face::Ray {
        origin: bottom,
        direction: RayDirection::Right,
        weight: axis_weight(bottom.1, false),
    });

    let (distance, principal_face) = locate_bisectrix(&hull, &edges);
    Ok(NewtonPolygon {
        vertices: hull,
        edges,
        distance,
        principal_face,
    })
}

fn locate_bisectrix(hull: &[Exponent], edges: &[Face]) -> (Rational, Face) {
    let int = |k: u32| Rational::from_integer(k.into());
    if let Some(&v) = hull.iter().find(|v| v.0 == v.1) {
        return (int(v.0), Face::Vertex(v));
    }
    let left = hull[0];
    if left.0 > left.1 {
        return (int(left.0), edges[0].clone());
    }
    let bottom = hull[hull.len() - 1];
    if bottom.1 > bottom.0 {
        return (int(bottom.1), edges[edges.len() - 1].clone());
    }
    for face in &edges[1..edges.len() - 1] {
        if let Face::Edge { from, to, weight } = face {
            if from.0 < from.1 && to.0 > to.1 {
                let d = Rational::from_integer(1.into()) / weight.norm();
                return (d, face.clone());
            }
        }
    }
    unreachable!("the bisectrix always meets the boundary")
}

/// The Newton distance and the principal face.
pub fn newton_distance(poly: &NewtonPolygon) -> (Rational, Face) {
    (poly.distance.clone(), poly.principal_face.clone())
}

/// Terms of `p` whose exponents lie on the face `f`; `f` must be a face of
/// the Newton polygon of `p`.
pub fn face_part(p: &BivariatePolynomial, f: &Face) -> Result<BivariatePolynomial, Error> {
    let poly = build_polygon(&LatticeSet::new(p.support()))?;
    if !poly.faces().any(|g| g == *f) {
        return Err(Error::FaceNotIncident);
    }
    Ok(BivariatePolynomial::from_terms(
        p.terms().filter(|(e, _)| f.contains(*e)).map(|(e, c)| (e, c.clone())),
    ))
}

/// Principal part `φ_π`.
pub fn principal_part(p: &BivariatePolynomial) -> Result<BivariatePolynomial, Error> {
    let poly = build_polygon(&taylor_support(p)?)?;
    face_part(p, poly.principal_face())
}

/// Newton distance of `p(Mx)`.
pub fn distance_under_linear(p: &BivariatePolynomial, m: &LinearMap2) -> Result<Rational, Error> {
    let q = p.apply_linear(m);
    Ok(build_polygon(&taylor_support(&q)?)?.distance)
}

/// Newton polygon of a phase, checking criticality.
pub fn polygon_of(p: &BivariatePolynomial) -> Result<NewtonPolygon, Error> {
    build_polygon(&taylor_support(p)?)
}
