use std::fmt::Write as _;

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ascii::draw_polygon;
use super::parse::{parse_polynomial, render_polynomial, ParseError};
use crate::criterion::{predicted_poles, verify_polygon, CriterionVerdict, ResidueRoute};
use crate::exactnum::{FactoredRatFunc, LinFactor, Rational, UniPoly};
use crate::polygon::{
    build_polygon, candidate_pole, diagonal_intersection, is_b1, FacetKind, NewtonPolygon, Support,
};
use crate::poles::{actual_poles, candidate_poles};
use crate::zeta::topological_zeta;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

const FORMAL_NOTE: &str = "formal value — nondegeneracy failed";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error("bad denominator factor [{0}, {1}]")]
    BadFactor(u64, u64),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ReportOptions {
    pub residues: bool,
    pub ascii_polygon: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayJson {
    pub direction: String,
    pub vertex: [i64; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub endpoints: Option<[[i64; 2]; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ray: Option<RayJson>,
    pub normal: [i64; 2],
    #[serde(rename = "N")]
    pub n: i64,
    pub nu: i64,
    pub g: Option<i64>,
    pub b1: String,
    pub candidate: Option<String>,
    pub diagonal_r: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaJson {
    pub display: String,
    pub numerator_coeffs: Vec<String>,
    pub denominator_factors: Vec<[u64; 2]>,
}

impl ZetaJson {
    pub fn from_function(z: &FactoredRatFunc) -> Self {
        Self {
            display: z.to_string(),
            numerator_coeffs: z.numerator().coeffs().iter().map(|c| c.to_string()).collect(),
            denominator_factors: z
                .denominator_factors()
                .iter()
                .map(|f| [f.n(), f.nu()])
                .collect(),
        }
    }

    /// Rebuilds the function from the structured fields.
    pub fn to_function(&self) -> Result<FactoredRatFunc, ReportError> {
        let coeffs = self
            .numerator_coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()?;
        let factors = self
            .denominator_factors
            .iter()
            .map(|&[n, nu]| {
                let n_i = i64::try_from(n).map_err(|_| ReportError::BadFactor(n, nu))?;
                let nu_i = i64::try_from(nu).map_err(|_| ReportError::BadFactor(n, nu))?;
                LinFactor::new(n_i, nu_i).map_err(|_| ReportError::BadFactor(n, nu))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FactoredRatFunc::new(UniPoly::from_coeffs(coeffs), factors))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ReportError> {
    s.parse::<Rational>()
        .map_err(|_| ReportError::BadRational(s.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub value: String,
    pub facets: Vec<usize>,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleJson {
    pub value: String,
    pub order: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residue: Option<String>,
    /// Criterion prediction; `null` for −1, which the criterion does not cover.
    pub predicted: Option<bool>,
    pub contributing_facets: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetailJson {
    pub value: String,
    pub predicted: bool,
    pub actual: bool,
    pub order: u32,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueCheckJson {
    pub value: String,
    pub facet: usize,
    pub route: String,
    pub expected: String,
    pub actual: Option<String>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionJson {
    pub agree: bool,
    pub hypotheses_met: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub details: Vec<DetailJson>,
    pub residue_checks: Vec<ResidueCheckJson>,
    pub candidates_below_minus_one: Vec<String>,
}

impl CriterionJson {
    pub fn from_verdict(v: &CriterionVerdict) -> Self {
        Self {
            agree: v.agree(),
            hypotheses_met: v.nondegenerate,
            note: (!v.nondegenerate).then(|| FORMAL_NOTE.to_string()),
            details: v
                .entries
                .iter()
                .map(|e| DetailJson {
                    value: e.value.to_string(),
                    predicted: e.predicted_pole,
                    actual: e.actual_pole,
                    order: e.order,
                    agree: e.agree,
                })
                .collect(),
            residue_checks: v
                .residue_checks
                .iter()
                .map(|r| ResidueCheckJson {
                    value: r.value.to_string(),
                    facet: r.facet,
                    route: match r.route {
                        ResidueRoute::CompactFacet => "compact".into(),
                        ResidueRoute::Ray => "ray".into(),
                    },
                    expected: r.expected.to_string(),
                    actual: r.actual.as_ref().map(ToString::to_string),
                    matches: r.matches(),
                })
                .collect(),
            candidates_below_minus_one: v
                .candidates_below_minus_one
                .iter()
                .map(ToString::to_string)
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: String,
    pub nondegenerate: bool,
    pub vertices: Vec<[i64; 2]>,
    pub facets: Vec<FacetJson>,
    pub zeta: ZetaJson,
    pub candidate_poles: Vec<CandidateJson>,
    pub poles: Vec<PoleJson>,
    pub criterion: CriterionJson,
}

fn facet_json(polygon: &NewtonPolygon) -> Vec<FacetJson> {
    polygon
        .facets()
        .iter()
        .map(|f| {
            let (endpoints, ray) = match f.kind {
                FacetKind::Compact { start, end } => {
                    (Some([[start.x, start.y], [end.x, end.y]]), None)
                }
                FacetKind::VerticalRay { vertex } => (
                    None,
                    Some(RayJson {
                        direction: "vertical".into(),
                        vertex: [vertex.x, vertex.y],
                    }),
                ),
                FacetKind::HorizontalRay { vertex } => (
                    None,
                    Some(RayJson {
                        direction: "horizontal".into(),
                        vertex: [vertex.x, vertex.y],
                    }),
                ),
            };
            FacetJson {
                endpoints,
                ray,
                normal: [f.normal.x, f.normal.y],
                n: f.n,
                nu: f.nu,
                g: f.lattice_length,
                b1: is_b1(f).as_str().into(),
                candidate: candidate_pole(f).map(|c| c.to_string()),
                diagonal_r: (f.n > 0)
                    .then(|| diagonal_intersection(f))
                    .flatten()
                    .map(|r| r.to_string()),
            }
        })
        .collect()
}

impl Report {
    pub fn build(support: &Support) -> Self {
        let polygon = build_polygon(support);
        let z = topological_zeta(&polygon);
        let verdict = verify_polygon(support, &polygon);
        let predicted = predicted_poles(&polygon);
        let minus_one = -Rational::one();

        let candidate_poles = candidate_poles(&polygon)
            .into_iter()
            .map(|c| {
                let order = z.zeta.pole_order(&c.value);
                let all_b1 = !c.facets.is_empty()
                    && c.facets.iter().all(|&i| is_b1(polygon.facet_data(i)).is_b1());
                let status = match order {
                    0 if all_b1 => "cancelled (B₁)".to_string(),
                    0 => "cancelled".to_string(),
                    k => format!("pole (order {k})"),
                };
                CandidateJson {
                    value: c.value.to_string(),
                    facets: c.facets,
                    status,
                }
            })
            .collect();

        let poles = actual_poles(&z, &polygon)
            .into_iter()
            .map(|p| PoleJson {
                value: p.value.to_string(),
                order: p.order,
                residue: p.residue.map(|r| r.to_string()),
                predicted: (p.value != minus_one).then(|| predicted.contains(&p.value)),
                contributing_facets: p.contributing_facets,
            })
            .collect();

        Report {
            input: render_polynomial(support),
            nondegenerate: verdict.nondegenerate,
            vertices: polygon.vertices().iter().map(|v| [v.x, v.y]).collect(),
            facets: facet_json(&polygon),
            zeta: ZetaJson::from_function(&z.zeta),
            candidate_poles,
            poles,
            criterion: CriterionJson::from_verdict(&verdict),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if !self.nondegenerate {
            EXIT_DEGENERATE
        } else if !self.criterion.agree {
            EXIT_MISMATCH
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self, options: &ReportOptions) -> String {
        let mut out = String::new();
        let formal = if self.nondegenerate {
            String::new()
        } else {
            format!(" [{FORMAL_NOTE}]")
        };
        let _ = writeln!(out, "f = {}", self.input);
        let _ = writeln!(
            out,
            "nondegenerate: {}",
            if self.nondegenerate { "yes" } else { "no" }
        );
        let verts: Vec<String> = self
            .vertices
            .iter()
            .map(|[x, y]| format!("({x},{y})"))
            .collect();
        let _ = writeln!(out, "vertices: {}", verts.join(" "));
        let _ = writeln!(out, "facets:");
        for (i, f) in self.facets.iter().enumerate() {
            let what = match (&f.endpoints, &f.ray) {
                (Some([[k, l], [m, n]]), _) => format!("({k},{l})-({m},{n})"),
                (_, Some(r)) => format!("{} ray at ({},{})", r.direction, r.vertex[0], r.vertex[1]),
                _ => String::new(),
            };
            let g = f.g.map(|g| format!(" g={g}")).unwrap_or_default();
            let cand = f
                .candidate
                .as_ref()
                .map(|c| format!(" candidate={c}"))
                .unwrap_or_default();
            let b1 = if f.b1 == "none" {
                String::new()
            } else {
                format!(" B1({})", f.b1)
            };
            let _ = writeln!(
                out,
                "  [{i}] {what}: normal=({},{}) N={} nu={}{g}{b1}{cand}",
                f.normal[0], f.normal[1], f.n, f.nu
            );
        }
        if options.ascii_polygon {
            out.push_str(&draw_polygon(self));
        }
        let _ = writeln!(out, "Z_top(s) = {}{formal}", self.zeta.display);
        let _ = writeln!(out, "candidate poles:");
        for c in &self.candidate_poles {
            let _ = writeln!(out, "  {}: {} facets={:?}", c.value, c.status, c.facets);
        }
        let _ = writeln!(out, "poles:");
        for p in &self.poles {
            let residue = p
                .residue
                .as_ref()
                .map(|r| format!(" residue={r}"))
                .unwrap_or_default();
            let predicted = match p.predicted {
                Some(true) => " predicted",
                Some(false) => " NOT predicted",
                None => "",
            };
            let _ = writeln!(out, "  {} order={}{residue}{predicted}", p.value, p.order);
        }
        if options.residues {
            let _ = writeln!(out, "residue cross-checks:");
            for r in &self.criterion.residue_checks {
                let _ = writeln!(
                    out,
                    "  {} via {} (facet {}): closed form {} vs zeta {} {}",
                    r.value,
                    r.route,
                    r.facet,
                    r.expected,
                    r.actual.as_deref().unwrap_or("(not simple)"),
                    if r.matches { "ok" } else { "MISMATCH" }
                );
            }
        }
        out.push_str(&self.criterion_text());
        out
    }

    pub fn criterion_text(&self) -> String {
        let c = &self.criterion;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "criterion: {}{}",
            if c.agree { "agree" } else { "DISAGREE" },
            if c.hypotheses_met {
                String::new()
            } else {
                format!(" ({FORMAL_NOTE})")
            }
        );
        for d in &c.details {
            let _ = writeln!(
                out,
                "  {}: predicted={} actual={} (order {}){}",
                d.value,
                d.predicted,
                d.actual,
                d.order,
                if d.agree { "" } else { " MISMATCH" }
            );
        }
        let matched = c.residue_checks.iter().filter(|r| r.matches).count();
        let _ = writeln!(
            out,
            "  residue checks: {matched}/{} match",
            c.residue_checks.len()
        );
        if !c.candidates_below_minus_one.is_empty() {
            let _ = writeln!(
                out,
                "  candidates below -1: {}",
                c.candidates_below_minus_one.join(", ")
            );
        }
        out
    }
}

pub fn run_report(text: &str) -> Result<Report, ParseError> {
    Ok(Report::build(&parse_polynomial(text)?))
}

impl Report {
    /// Exact zeta function rebuilt from the structured JSON fields.
    pub fn zeta_function(&self) -> Result<FactoredRatFunc, ReportError> {
        self.zeta.to_function()
    }

    pub fn pole(&self, value: &str) -> Option<&PoleJson> {
        self.poles.iter().find(|p| p.value == value)
    }
}
