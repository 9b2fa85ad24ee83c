//! Candidate and actual poles of an assembled zeta function.

use num_traits::One;

use crate::exactnum::Rational;
use crate::polygon::{candidate_pole, NewtonPolygon};
use crate::zeta::ZetaResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidatePole {
    pub value: Rational,
    /// Indices of facets with `−ν/N = value`.
    pub facets: Vec<usize>,
}

impl CandidatePole {
    pub fn is_minus_one(&self) -> bool {
        self.value == -Rational::one()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleReport {
    pub value: Rational,
    pub order: u32,
    /// Present iff `order == 1`.
    pub residue: Option<Rational>,
    pub contributing_facets: Vec<usize>,
    pub is_minus_one: bool,
}

/// Distinct candidate values in ascending order, `−1` always included.
pub fn candidate_poles(polygon: &NewtonPolygon) -> Vec<CandidatePole> {
    let mut out: Vec<CandidatePole> = Vec::new();
    let mut push = |value: Rational, facet: Option<usize>| {
        let slot = match out.iter_mut().position(|c| c.value == value) {
            Some(i) => &mut out[i],
            None => {
                out.push(CandidatePole {
                    value,
                    facets: Vec::new(),
                });
                out.last_mut().expect("just pushed")
            }
        };
        slot.facets.extend(facet);
    };
    for (i, f) in polygon.facets().iter().enumerate() {
        if let Some(v) = candidate_pole(f) {
            push(v, Some(i));
        }
    }
    push(-Rational::one(), None);
    out.sort_by(|a, b| a.value.cmp(&b.value));
    out
}

/// One report per distinct root of the canonical denominator.
pub fn actual_poles(z: &ZetaResult, polygon: &NewtonPolygon) -> Vec<PoleReport> {
    let candidates = candidate_poles(polygon);
    let mut out: Vec<PoleReport> = z
        .zeta
        .poles()
        .into_iter()
        .map(|(value, order)| {
            let residue = (order == 1).then(|| {
                z.zeta
                    .residue_simple(&value)
                    .expect("order checked above")
            });
            let contributing_facets = candidates
                .iter()
                .find(|c| c.value == value)
                .map(|c| c.facets.clone())
                .unwrap_or_default();
            PoleReport {
                is_minus_one: value == -Rational::one(),
                value,
                order,
                residue,
                contributing_facets,
            }
        })
        .collect();
    out.sort_by(|a, b| a.value.cmp(&b.value));
    out
}
