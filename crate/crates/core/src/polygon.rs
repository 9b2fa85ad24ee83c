//! Newton polygon of a two-variable polynomial at the origin.
//!
//! The polygon is stored as a staircase: vertices with strictly increasing
//! `x` and strictly decreasing `y`, joined by compact facets, with a vertical
//! ray above the first vertex and a horizontal ray to the right of the last.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::exactnum::{ratio, Rational};
use num_traits::Zero;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("f is zero")]
    ZeroPolynomial,
    #[error("f(0) ≠ 0 required")]
    ConstantTerm,
    #[error("duplicate exponent ({0}, {1})")]
    DuplicateExponent(u32, u32),
    #[error("zero coefficient at exponent ({0}, {1})")]
    ZeroCoefficient(u32, u32),
}

/// Lattice point / integer vector in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Point) -> i64 {
        self.x * other.x + self.y * other.y
    }

    /// `det [self; other]`.
    pub fn cross(self, other: Point) -> i64 {
        self.x * other.y - self.y * other.x
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPoint {
    pub x: u32,
    pub y: u32,
    pub coeff: Rational,
}

/// The support of `f` with its coefficients, keyed by exponent `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Support {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Support {
    pub fn new(points: impl IntoIterator<Item = SupportPoint>) -> Result<Self, PolygonError> {
        let mut terms = BTreeMap::new();
        for p in points {
            if p.coeff.is_zero() {
                return Err(PolygonError::ZeroCoefficient(p.x, p.y));
            }
            if (p.x, p.y) == (0, 0) {
                return Err(PolygonError::ConstantTerm);
            }
            if terms.insert((p.x, p.y), p.coeff).is_some() {
                return Err(PolygonError::DuplicateExponent(p.x, p.y));
            }
        }
        if terms.is_empty() {
            return Err(PolygonError::ZeroPolynomial);
        }
        Ok(Self { terms })
    }

    /// Support with all coefficients equal to one.
    pub fn from_exponents(exps: &[(u32, u32)]) -> Result<Self, PolygonError> {
        Self::new(exps.iter().map(|&(x, y)| SupportPoint {
            x,
            y,
            coeff: ratio(1, 1),
        }))
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rational> {
        &self.terms
    }

    pub fn coeff(&self, p: Point) -> Option<&Rational> {
        if p.x < 0 || p.y < 0 {
            return None;
        }
        self.terms.get(&(p.x as u32, p.y as u32))
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.terms
            .keys()
            .map(|&(x, y)| Point::new(i64::from(x), i64::from(y)))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FacetKind {
    /// `x = vertex.x`, going up from the first vertex.
    VerticalRay { vertex: Point },
    /// Segment between consecutive vertices, `start.x < end.x`.
    Compact { start: Point, end: Point },
    /// `y = vertex.y`, going right from the last vertex.
    HorizontalRay { vertex: Point },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B1Flag {
    NotB1,
    X,
    Y,
    Both,
}

impl B1Flag {
    pub fn is_b1(self) -> bool {
        self != B1Flag::NotB1
    }

    pub fn as_str(self) -> &'static str {
        match self {
            B1Flag::NotB1 => "none",
            B1Flag::X => "x",
            B1Flag::Y => "y",
            B1Flag::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetData {
    pub kind: FacetKind,
    /// Primitive inward normal, both entries nonnegative.
    pub normal: Point,
    pub n: i64,
    pub nu: i64,
    /// Lattice length, compact facets only.
    pub lattice_length: Option<i64>,
}

impl FacetData {
    pub fn is_compact(&self) -> bool {
        matches!(self.kind, FacetKind::Compact { .. })
    }

    pub fn endpoints(&self) -> Option<(Point, Point)> {
        match self.kind {
            FacetKind::Compact { start, end } => Some((start, end)),
            _ => None,
        }
    }
}

/// Two-dimensional cone spanned by primitive generators in the closed first
/// quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cone2 {
    pub generators: [Point; 2],
    pub mult: i64,
}

impl Cone2 {
    /// `None` when the generators are linearly dependent.
    pub fn new(a: Point, b: Point) -> Option<Self> {
        let mult = a.cross(b).abs();
        (mult > 0).then_some(Self {
            generators: [a, b],
            mult,
        })
    }
}

/// Dual cone of a face: a ray for a facet, a planar cone for a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualCone {
    Ray(Point),
    Planar(Cone2),
}

impl DualCone {
    pub fn generators(&self) -> &[Point] {
        match self {
            DualCone::Ray(v) => std::slice::from_ref(v),
            DualCone::Planar(c) => &c.generators,
        }
    }

    pub fn mult(&self) -> i64 {
        match self {
            DualCone::Ray(_) => 1,
            DualCone::Planar(c) => c.mult,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    support: Vec<Point>,
    vertices: Vec<Point>,
    facets: Vec<FacetData>,
}

/// Lower-left staircase hull of the support.
pub fn build_polygon(support: &Support) -> NewtonPolygon {
    let mut pts: Vec<Point> = support.points().collect();
    pts.sort_by_key(|p| (p.x, p.y));

    // Pareto-minimal points, x ascending and y strictly descending.
    let mut staircase: Vec<Point> = Vec::new();
    for p in &pts {
        if staircase.last().map_or(true, |q| p.y < q.y) {
            staircase.push(*p);
        }
    }

    // Monotone chain: keep strict left turns only (collinear points are not
    // vertices).
    let mut vertices: Vec<Point> = Vec::new();
    for p in staircase {
        while vertices.len() >= 2 {
            let q = vertices[vertices.len() - 1];
            let o = vertices[vertices.len() - 2];
            if (q - o).cross(p - q) <= 0 {
                vertices.pop();
            } else {
                break;
            }
        }
        vertices.push(p);
    }

    let first = vertices[0];
    let last = *vertices.last().expect("support is nonempty");
    let mut facets = Vec::with_capacity(vertices.len() + 1);
    facets.push(FacetData {
        kind: FacetKind::VerticalRay { vertex: first },
        normal: Point::new(1, 0),
        n: first.x,
        nu: 1,
        lattice_length: None,
    });
    for w in vertices.windows(2) {
        let (start, end) = (w[0], w[1]);
        let g = (end.x - start.x).gcd(&(start.y - end.y));
        let normal = Point::new((start.y - end.y) / g, (end.x - start.x) / g);
        facets.push(FacetData {
            kind: FacetKind::Compact { start, end },
            normal,
            n: normal.dot(start),
            nu: normal.x + normal.y,
            lattice_length: Some(g),
        });
    }
    facets.push(FacetData {
        kind: FacetKind::HorizontalRay { vertex: last },
        normal: Point::new(0, 1),
        n: last.y,
        nu: 1,
        lattice_length: None,
    });

    NewtonPolygon {
        support: pts,
        vertices,
        facets,
    }
}

impl NewtonPolygon {
    pub fn support(&self) -> &[Point] {
        &self.support
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Vertical ray, compact facets left to right, horizontal ray.
    pub fn facets(&self) -> &[FacetData] {
        &self.facets
    }

    pub fn facet_data(&self, index: usize) -> &FacetData {
        &self.facets[index]
    }

    pub fn compact_facets(&self) -> impl Iterator<Item = (usize, &FacetData)> {
        self.facets
            .iter()
            .enumerate()
            .filter(|(_, f)| f.is_compact())
    }

    /// `N(a) = min over Γ₀ of a·x` for `a` in the closed first quadrant.
    pub fn n_of(&self, a: Point) -> i64 {
        self.support
            .iter()
            .map(|p| a.dot(*p))
            .min()
            .expect("support is nonempty")
    }

    /// Whether `p` lies in Γ₀.
    pub fn contains(&self, p: Point) -> bool {
        self.facets.iter().all(|f| f.normal.dot(p) >= f.n)
    }

    /// Cone spanned by the normals of the two facets adjacent to vertex
    /// `index`.
    pub fn vertex_dual_cone(&self, index: usize) -> Cone2 {
        let a = self.facets[index].normal;
        let b = self.facets[index + 1].normal;
        Cone2::new(a, b).expect("adjacent facet normals are independent")
    }

    /// The lattice points of Γ₀'s boundary adjacent to vertex `index`: the
    /// previous and next vertex, or the next lattice point along a ray.
    pub fn neighbors(&self, index: usize) -> (Point, Point) {
        let v = self.vertices[index];
        let prev = if index == 0 {
            Point::new(v.x, v.y + 1)
        } else {
            self.vertices[index - 1]
        };
        let next = self
            .vertices
            .get(index + 1)
            .copied()
            .unwrap_or(Point::new(v.x + 1, v.y));
        (prev, next)
    }
}

/// `−ν/N`, absent when `N = 0`.
pub fn candidate_pole(facet: &FacetData) -> Option<Rational> {
    (facet.n > 0).then(|| ratio(-facet.nu, facet.n))
}

/// Coordinate `r` of the point `(r, r)` where the affine hull of the facet
/// meets the diagonal, computed from the facet's geometry alone. `None` when
/// the line is parallel to the diagonal.
pub fn diagonal_intersection(facet: &FacetData) -> Option<Rational> {
    match facet.kind {
        FacetKind::VerticalRay { vertex } => Some(ratio(vertex.x, 1)),
        FacetKind::HorizontalRay { vertex } => Some(ratio(vertex.y, 1)),
        FacetKind::Compact { start, end } => {
            let d = end - start;
            let denom = d.x - d.y;
            if denom == 0 {
                return None;
            }
            // start + t·d lies on y = x
            let t = ratio(start.y - start.x, denom);
            Some(ratio(start.x, 1) + t * ratio(d.x, 1))
        }
    }
}

pub fn is_b1(facet: &FacetData) -> B1Flag {
    let Some((p, q)) = facet.endpoints() else {
        return B1Flag::NotB1;
    };
    let hits = |a: i64, b: i64| (a.min(b), a.max(b)) == (0, 1);
    match (hits(p.x, q.x), hits(p.y, q.y)) {
        (true, true) => B1Flag::Both,
        (true, false) => B1Flag::X,
        (false, true) => B1Flag::Y,
        (false, false) => B1Flag::NotB1,
    }
}
