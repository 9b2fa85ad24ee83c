//! The B₁-facet pole criterion, the closed-form contributions and residues
//! behind it, the nondegeneracy test, and an end-to-end verifier that checks
//! the criterion's predictions against directly extracted poles.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactnum::{poly_gcd, rat, FactoredRatFunc, LinFactor, Rational, UniPoly};
use crate::polygon::{
    build_polygon, candidate_pole, is_b1, FacetKind, NewtonPolygon, Point, Support,
};
use crate::poles::candidate_poles;
use crate::zeta::topological_zeta;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriterionError {
    #[error("invalid frame: {0}")]
    InvalidFrame(&'static str),
    #[error("degenerate frame: {0} vanishes")]
    DegenerateFrame(&'static str),
    #[error("non-compact residue needs a ≠ b (got a = b = {0})")]
    EqualRayCoordinates(i64),
    #[error("non-compact residue needs a > 0")]
    ZeroRayCoordinate,
}

/// A compact facet `(k,l)–(m,n)` with `k < m`, `l > n`, together with the
/// boundary points `(a,b)` before `(k,l)` and `(c,d)` after `(m,n)`. At the
/// ends of the staircase the neighbors are the next lattice points along the
/// rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProofFacetFrame {
    pub k: i64,
    pub l: i64,
    pub m: i64,
    pub n: i64,
    pub g: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

impl ProofFacetFrame {
    pub fn new(
        (k, l): (i64, i64),
        (m, n): (i64, i64),
        (a, b): (i64, i64),
        (c, d): (i64, i64),
    ) -> Result<Self, CriterionError> {
        if [k, l, m, n, a, b, c, d].iter().any(|&v| v < 0) {
            return Err(CriterionError::InvalidFrame("negative coordinate"));
        }
        if k >= m || l <= n {
            return Err(CriterionError::InvalidFrame("need k < m and l > n"));
        }
        if a > k || b <= l || c <= m || d > n {
            return Err(CriterionError::InvalidFrame("neighbors out of order"));
        }
        let (p0, p1, p2, p3) = (
            Point::new(a, b),
            Point::new(k, l),
            Point::new(m, n),
            Point::new(c, d),
        );
        if (p1 - p0).cross(p2 - p1) <= 0 || (p2 - p1).cross(p3 - p2) <= 0 {
            return Err(CriterionError::InvalidFrame("staircase is not strictly convex"));
        }
        Ok(Self {
            k,
            l,
            m,
            n,
            g: (m - k).gcd(&(l - n)),
            a,
            b,
            c,
            d,
        })
    }

    /// Facet with ray neighbors on both sides.
    pub fn isolated(k: i64, l: i64, m: i64, n: i64) -> Result<Self, CriterionError> {
        Self::new((k, l), (m, n), (k, l + 1), (m + 1, n))
    }

    /// Frame of compact facet `index` of `polygon`.
    pub fn from_polygon(polygon: &NewtonPolygon, index: usize) -> Option<Self> {
        let FacetKind::Compact { start, end } = polygon.facet_data(index).kind else {
            return None;
        };
        // compact facet i joins vertices i-1 and i
        let (before, _) = polygon.neighbors(index - 1);
        let (_, after) = polygon.neighbors(index);
        Self::new(
            (start.x, start.y),
            (end.x, end.y),
            (before.x, before.y),
            (after.x, after.y),
        )
        .ok()
    }

    /// `lm − kn`.
    pub fn pole_n(&self) -> i64 {
        self.l * self.m - self.k * self.n
    }

    /// `l − n + m − k`.
    pub fn pole_nu(&self) -> i64 {
        self.l - self.n + self.m - self.k
    }

    /// `−(l−n+m−k)/(lm−kn)`.
    pub fn candidate(&self) -> Rational {
        Rational::new(-big(self.pole_nu()), big(self.pole_n()))
    }

    pub fn is_b1(&self) -> bool {
        let x = (self.k, self.m, self.g) == (0, 1, 1);
        let y = (self.n, self.l, self.g) == (0, 1, 1);
        x || y
    }

    fn facet_factor(&self) -> LinFactor {
        LinFactor::new(self.pole_n(), self.pole_nu()).expect("lm − kn > 0 on a valid frame")
    }
}

/// `−s g² / ((s+1)((lm−kn)s + l−n+m−k))`.
pub fn facet_contribution(frame: &ProofFacetFrame) -> FactoredRatFunc {
    let g2 = frame.g * frame.g;
    FactoredRatFunc::new(
        UniPoly::from_ints(&[0, -g2]),
        [LinFactor::new(1, 1).expect("valid"), frame.facet_factor()],
    )
}

pub fn vertex_contribution(frame: &ProofFacetFrame, which: Side) -> FactoredRatFunc {
    let ProofFacetFrame {
        k,
        l,
        m,
        n,
        a,
        b,
        c,
        d,
        ..
    } = *frame;
    let (numer, other) = match which {
        Side::Left => (
            (b - l) * (m - k) - (l - n) * (k - a),
            LinFactor::new(b * k - a * l, b - l + k - a),
        ),
        Side::Right => (
            (l - n) * (c - m) - (n - d) * (m - k),
            LinFactor::new(n * c - m * d, n - d + c - m),
        ),
    };
    FactoredRatFunc::new(
        UniPoly::constant(rat(numer)),
        [frame.facet_factor(), other.expect("valid frame")],
    )
}

/// Sum of the facet's contribution and both endpoint contributions.
pub fn assembled_contribution(frame: &ProofFacetFrame) -> FactoredRatFunc {
    [
        facet_contribution(frame),
        vertex_contribution(frame, Side::Left),
        vertex_contribution(frame, Side::Right),
    ]
    .into_iter()
    .sum()
}

/// `F = (ml−nk)(ml−nk+k−m+n−l) + g²(n−m)(k−l)`.
pub fn factor_f(frame: &ProofFacetFrame) -> Rational {
    let ProofFacetFrame { k, l, m, n, g, .. } = *frame;
    let (k, l, m, n, g) = (big(k), big(l), big(m), big(n), big(g));
    let a = &m * &l - &n * &k;
    let f = &a * (&a + &k - &m + &n - &l) + &g * &g * (&n - &m) * (&k - &l);
    Rational::from_integer(f)
}

/// Residue at `−(l−n+m−k)/(lm−kn)` of the summed facet and endpoint
/// contributions, by the closed formula.
pub fn closed_form_residue(frame: &ProofFacetFrame) -> Result<Rational, CriterionError> {
    let ProofFacetFrame { k, l, m, n, .. } = *frame;
    let a = frame.pole_n();
    let nu = frame.pole_nu();
    if a <= 0 {
        return Err(CriterionError::DegenerateFrame("lm − kn"));
    }
    if n == m {
        return Err(CriterionError::DegenerateFrame("n − m"));
    }
    if k == l {
        return Err(CriterionError::DegenerateFrame("k − l"));
    }
    if a == nu {
        return Err(CriterionError::DegenerateFrame("ml − nk + k − m + n − l"));
    }
    let numer = big(nu) * factor_f(frame).to_integer();
    let denom = big(a) * big(n - m) * big(k - l) * big(a - nu);
    Ok(Rational::new(numer, denom))
}

/// Residue `1/(a − b)` at `−1/a` for a non-compact facet on `x = a` with
/// vertex `(a, b)`.
pub fn noncompact_residue(a: i64, b: i64) -> Result<Rational, CriterionError> {
    if a <= 0 {
        return Err(CriterionError::ZeroRayCoordinate);
    }
    if a == b {
        return Err(CriterionError::EqualRayCoordinates(a));
    }
    Ok(Rational::new(BigInt::one(), big(a - b)))
}

/// `(a, b)` for a ray facet in the orientation where the ray lies on `x = a`.
pub fn ray_frame(kind: FacetKind) -> Option<(i64, i64)> {
    match kind {
        FacetKind::VerticalRay { vertex } => Some((vertex.x, vertex.y)),
        FacetKind::HorizontalRay { vertex } => Some((vertex.y, vertex.x)),
        FacetKind::Compact { .. } => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCheck {
    pub facet: usize,
    /// `P(t) = Σ cᵢ tⁱ` along the edge from its left endpoint.
    pub edge_poly: UniPoly,
    pub degenerate: bool,
}

/// Coefficients at the lattice points of compact facet `index`, walking from
/// its left endpoint (or from its right endpoint when `reversed`).
pub fn edge_polynomial(
    support: &Support,
    polygon: &NewtonPolygon,
    index: usize,
    reversed: bool,
) -> Option<UniPoly> {
    let facet = polygon.facet_data(index);
    let (mut p, mut q) = facet.endpoints()?;
    if reversed {
        std::mem::swap(&mut p, &mut q);
    }
    let g = facet.lattice_length?;
    let step = Point::new((q.x - p.x) / g, (q.y - p.y) / g);
    let coeffs = (0..=g)
        .map(|i| {
            let pt = Point::new(p.x + i * step.x, p.y + i * step.y);
            support.coeff(pt).cloned().unwrap_or_else(Rational::zero)
        })
        .collect();
    Some(UniPoly::from_coeffs(coeffs))
}

/// A square-free edge polynomial on `ℂ*` means no common zero of `f_τ` and
/// its partials in the torus.
pub fn edge_is_degenerate(p: &UniPoly) -> bool {
    !poly_gcd(p, &p.derivative()).is_monomial()
}

/// Status of every compact edge; vertices are monomial faces and always
/// nondegenerate.
pub fn nondegeneracy_check(support: &Support, polygon: &NewtonPolygon) -> Vec<EdgeCheck> {
    polygon
        .compact_facets()
        .map(|(i, _)| {
            let edge_poly = edge_polynomial(support, polygon, i, false).expect("compact");
            EdgeCheck {
                facet: i,
                degenerate: edge_is_degenerate(&edge_poly),
                edge_poly,
            }
        })
        .collect()
}

pub fn is_nondegenerate(support: &Support, polygon: &NewtonPolygon) -> bool {
    nondegeneracy_check(support, polygon)
        .iter()
        .all(|e| !e.degenerate)
}

/// Candidates `≠ −1` contributed by at least one facet that is not B₁.
pub fn predicted_poles(polygon: &NewtonPolygon) -> BTreeSet<Rational> {
    let minus_one = -Rational::one();
    polygon
        .facets()
        .iter()
        .filter(|f| !is_b1(f).is_b1())
        .filter_map(candidate_pole)
        .filter(|v| *v != minus_one)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictEntry {
    pub value: Rational,
    pub predicted_pole: bool,
    pub actual_pole: bool,
    pub order: u32,
    pub contributing_facets: Vec<usize>,
    pub agree: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueRoute {
    CompactFacet,
    Ray,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCheck {
    pub value: Rational,
    pub facet: usize,
    pub route: ResidueRoute,
    /// From the closed formula.
    pub expected: Rational,
    /// From the canonical zeta function, zero when `value` is not a pole;
    /// `None` when the pole is not simple.
    pub actual: Option<Rational>,
}

impl ResidueCheck {
    pub fn matches(&self) -> bool {
        self.actual.as_ref() == Some(&self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionVerdict {
    /// Whether f is nondegenerate; when false every value is formal.
    pub nondegenerate: bool,
    pub entries: Vec<VerdictEntry>,
    pub residue_checks: Vec<ResidueCheck>,
    /// Facet candidates strictly below −1, recorded as they occur.
    pub candidates_below_minus_one: Vec<Rational>,
}

impl CriterionVerdict {
    pub fn agree(&self) -> bool {
        self.entries.iter().all(|e| e.agree) && self.residue_checks.iter().all(|r| r.matches())
    }
}

pub fn verify_criterion(support: &Support) -> CriterionVerdict {
    let polygon = build_polygon(support);
    verify_polygon(support, &polygon)
}

pub fn verify_polygon(support: &Support, polygon: &NewtonPolygon) -> CriterionVerdict {
    let nondegenerate = is_nondegenerate(support, polygon);
    let z = topological_zeta(polygon).zeta;
    let predicted = predicted_poles(polygon);
    let minus_one = -Rational::one();

    let candidates = candidate_poles(polygon);
    let mut values: BTreeSet<Rational> = candidates.iter().map(|c| c.value.clone()).collect();
    values.extend(z.poles().into_iter().map(|(v, _)| v));
    values.remove(&minus_one);

    let entries = values
        .into_iter()
        .map(|value| {
            let order = z.pole_order(&value);
            let predicted_pole = predicted.contains(&value);
            let contributing_facets = candidates
                .iter()
                .find(|c| c.value == value)
                .map(|c| c.facets.clone())
                .unwrap_or_default();
            VerdictEntry {
                predicted_pole,
                actual_pole: order > 0,
                agree: predicted_pole == (order > 0),
                order,
                contributing_facets,
                value,
            }
        })
        .collect();

    let mut residue_checks = Vec::new();
    for c in candidates.iter().filter(|c| !c.is_minus_one()) {
        let [facet] = c.facets[..] else { continue };
        let kind = polygon.facet_data(facet).kind;
        let (route, expected) = match kind {
            FacetKind::Compact { .. } => {
                let Some(frame) = ProofFacetFrame::from_polygon(polygon, facet) else {
                    continue;
                };
                match closed_form_residue(&frame) {
                    Ok(r) => (ResidueRoute::CompactFacet, r),
                    Err(_) => continue,
                }
            }
            _ => {
                let (a, b) = ray_frame(kind).expect("ray");
                match noncompact_residue(a, b) {
                    Ok(r) => (ResidueRoute::Ray, r),
                    Err(_) => continue,
                }
            }
        };
        let actual = match z.pole_order(&c.value) {
            0 => Some(Rational::zero()),
            1 => z.residue_simple(&c.value).ok(),
            _ => None,
        };
        residue_checks.push(ResidueCheck {
            value: c.value.clone(),
            facet,
            route,
            expected,
            actual,
        });
    }

    let candidates_below_minus_one = candidates
        .iter()
        .filter(|c| c.value < minus_one)
        .map(|c| c.value.clone())
        .collect();

    CriterionVerdict {
        nondegenerate,
        entries,
        residue_checks,
        candidates_below_minus_one,
    }
}
