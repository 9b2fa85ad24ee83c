//! Topological zeta function of a nondegenerate plane curve from its Newton
//! polygon.
//!
//! In two variables the only compact faces of positive dimension are the
//! compact facets, each with `(−1)^1 · 1! · Vol = −g`, so
//!
//! ```text
//! Z(s) = Σ_vertices J_v(s) − s/(s+1) · Σ_compact facets g·J_τ(s)
//! ```

use crate::exactnum::{rat, FactoredRatFunc, LinFactor, UniPoly};
use crate::polygon::{DualCone, FacetData, NewtonPolygon, Point};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Vertex(usize),
    Facet(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaResult {
    pub zeta: FactoredRatFunc,
    /// `J_v` for every vertex.
    pub vertex_terms: Vec<(usize, FactoredRatFunc)>,
    /// `−s/(s+1) · g · J_τ` for every compact facet.
    pub facet_terms: Vec<(usize, FactoredRatFunc)>,
}

fn linear_factor(polygon: &NewtonPolygon, a: Point) -> LinFactor {
    LinFactor::new(polygon.n_of(a), a.x + a.y).expect("generator in the first quadrant")
}

/// `mult(Δ) / Π (N(aᵢ) s + ν(aᵢ))`.
pub fn j_delta(cone: &DualCone, polygon: &NewtonPolygon) -> FactoredRatFunc {
    FactoredRatFunc::new(
        UniPoly::constant(rat(cone.mult())),
        cone.generators().iter().map(|&a| linear_factor(polygon, a)),
    )
}

/// Plane dual cones are already simplicial, so `J_τ` is a single `J_Δ`.
pub fn j_tau(face: Face, polygon: &NewtonPolygon) -> FactoredRatFunc {
    let cone = match face {
        Face::Vertex(i) => DualCone::Planar(polygon.vertex_dual_cone(i)),
        Face::Facet(i) => DualCone::Ray(polygon.facet_data(i).normal),
    };
    j_delta(&cone, polygon)
}

/// Lattice length `g` of a compact facet; `None` for rays.
pub fn normalized_volume(facet: &FacetData) -> Option<i64> {
    facet.lattice_length
}

pub fn topological_zeta(polygon: &NewtonPolygon) -> ZetaResult {
    let vertex_terms: Vec<_> = (0..polygon.vertices().len())
        .map(|i| (i, j_tau(Face::Vertex(i), polygon)))
        .collect();
    let s = UniPoly::var();
    let s_plus_one = LinFactor::new(1, 1).expect("valid");
    let facet_terms: Vec<_> = polygon
        .compact_facets()
        .map(|(i, f)| {
            let g = normalized_volume(f).expect("compact");
            let j = j_tau(Face::Facet(i), polygon);
            let term = j.mul_poly(&s).div_factor(s_plus_one);
            (i, term.scale(&rat(-g)))
        })
        .collect();
    let zeta = vertex_terms
        .iter()
        .chain(facet_terms.iter())
        .map(|(_, t)| t.clone())
        .sum();
    ZetaResult {
        zeta,
        vertex_terms,
        facet_terms,
    }
}
