//! Seeded random corpus of nondegenerate staircases, each checked end to end
//! by the criterion verifier.

use std::fmt::Write as _;

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::parse::render_polynomial;
use super::report::Report;
use crate::criterion::{is_nondegenerate, verify_polygon};
use crate::exactnum::rat;
use crate::polygon::{build_polygon, Point, Support, SupportPoint};

pub const MAX_COORD: i64 = 30;
pub const MAX_VERTICES: usize = 6;

const NONZERO: [i64; 6] = [-3, -2, -1, 1, 2, 3];
const EDGE_COEFFS: [i64; 9] = [0, 0, 0, -3, -2, -1, 1, 2, 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("count must be at least 1")]
    EmptyCount,
}

/// Independent stream per instance, so instance `i` does not depend on how
/// many draws earlier instances consumed.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn small_offset<R: Rng>(rng: &mut R) -> i64 {
    match rng.gen_range(0..10) {
        0..=3 => 0,
        4..=5 => 1,
        _ => rng.gen_range(2..=6),
    }
}

/// Strictly convex staircase with 1–6 vertices and coordinates ≤ 30.
fn random_vertices<R: Rng>(rng: &mut R) -> Vec<Point> {
    loop {
        let r = rng.gen_range(1..=MAX_VERTICES);
        let mut dirs: Vec<(i64, i64)> = Vec::new();
        let mut attempts = 0;
        while dirs.len() < r - 1 && attempts < 100 {
            attempts += 1;
            let (dx, dy) = (rng.gen_range(1..=5i64), rng.gen_range(1..=5i64));
            if dx.gcd(&dy) != 1 || dirs.iter().any(|&(a, b)| a * dy == b * dx) {
                continue;
            }
            dirs.push((dx, dy));
        }
        if dirs.len() < r - 1 {
            continue;
        }
        // steepest first
        dirs.sort_by(|&(a, b), &(c, d)| (d * a).cmp(&(b * c)));
        let edges: Vec<(i64, i64)> = dirs
            .into_iter()
            .map(|(dx, dy)| {
                let g = *[1, 1, 1, 2, 3].choose(rng).expect("nonempty");
                (dx * g, dy * g)
            })
            .collect();
        let x0 = small_offset(rng);
        let y_end = small_offset(rng);
        let total_dy: i64 = edges.iter().map(|e| e.1).sum();
        let mut v = vec![Point::new(x0, y_end + total_dy)];
        for (dx, dy) in &edges {
            let last = *v.last().expect("nonempty");
            v.push(Point::new(last.x + dx, last.y - dy));
        }
        if r >= 2 && rng.gen_bool(0.15) {
            // put one vertex on the diagonal so two facets share a candidate
            let pick = v[rng.gen_range(0..v.len())];
            let t = pick.y - pick.x;
            if v[0].x + t >= 0 {
                v.iter_mut().for_each(|p| p.x += t);
            } else {
                // t < 0 here, so this raises every vertex
                v.iter_mut().for_each(|p| p.y -= t);
            }
        }
        let in_range = v.iter().all(|p| p.x >= 0 && p.y >= 0 && p.x <= MAX_COORD && p.y <= MAX_COORD);
        if in_range && !v.contains(&Point::new(0, 0)) {
            return v;
        }
    }
}

/// A random nondegenerate polynomial: random coefficients on the staircase
/// vertices and edge lattice points, plus a few interior terms.
pub fn generate_instance<R: Rng>(rng: &mut R) -> Support {
    loop {
        let vertices = random_vertices(rng);
        let mut edge_points = Vec::new();
        for w in vertices.windows(2) {
            let g = (w[1].x - w[0].x).gcd(&(w[0].y - w[1].y));
            let step = Point::new((w[1].x - w[0].x) / g, (w[1].y - w[0].y) / g);
            for i in 1..g {
                edge_points.push(Point::new(w[0].x + i * step.x, w[0].y + i * step.y));
            }
        }
        let skeleton = build_polygon(
            &Support::new(vertices.iter().map(|p| SupportPoint {
                x: p.x as u32,
                y: p.y as u32,
                coeff: rat(1),
            }))
            .expect("vertices avoid the origin"),
        );
        let mut interior = Vec::new();
        for _ in 0..rng.gen_range(0..=3) {
            let p = Point::new(rng.gen_range(0..=MAX_COORD), rng.gen_range(0..=MAX_COORD));
            let strictly_inside = skeleton.facets().iter().all(|f| f.normal.dot(p) > f.n);
            if strictly_inside && !interior.contains(&p) {
                interior.push(p);
            }
        }
        for _ in 0..50 {
            let mut terms = Vec::new();
            let mut push = |p: Point, c: i64| {
                if c != 0 {
                    terms.push(SupportPoint {
                        x: p.x as u32,
                        y: p.y as u32,
                        coeff: rat(c),
                    });
                }
            };
            for &p in &vertices {
                push(p, *NONZERO.choose(rng).expect("nonempty"));
            }
            for &p in &edge_points {
                push(p, *EDGE_COEFFS.choose(rng).expect("nonempty"));
            }
            for &p in &interior {
                push(p, *NONZERO.choose(rng).expect("nonempty"));
            }
            let support = Support::new(terms).expect("distinct nonzero terms");
            if is_nondegenerate(&support, &build_polygon(&support)) {
                return support;
            }
        }
    }
}

/// The first `count` instances for `seed`.
pub fn corpus_instances(seed: u64, count: u64) -> Vec<Support> {
    (0..count)
        .map(|i| generate_instance(&mut instance_rng(seed, i)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub index: u64,
    pub input: String,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub seed: u64,
    pub count: u64,
    pub agreements: u64,
    /// Candidates `≠ −1` checked against the criterion.
    pub candidates_checked: u64,
    pub b1_cancellations: u64,
    pub order_two_poles: u64,
    pub residue_checks: u64,
    pub residue_matches: u64,
    pub candidates_below_minus_one: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl CorpusSummary {
    pub fn all_agree(&self) -> bool {
        self.agreements == self.count && self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "corpus seed={} count={}", self.seed, self.count);
        let _ = writeln!(out, "agreement: {}/{}", self.agreements, self.count);
        let _ = writeln!(out, "candidates checked: {}", self.candidates_checked);
        let _ = writeln!(out, "B1 cancellations: {}", self.b1_cancellations);
        let _ = writeln!(out, "order-2 poles: {}", self.order_two_poles);
        let _ = writeln!(
            out,
            "residue checks: {}/{} match",
            self.residue_matches, self.residue_checks
        );
        let _ = writeln!(
            out,
            "candidates below -1: {}",
            self.candidates_below_minus_one
        );
        for c in &self.counterexamples {
            let _ = writeln!(out, "COUNTEREXAMPLE #{}: f = {}", c.index, c.input);
            out.push_str(&c.details);
        }
        out
    }
}

pub fn run_corpus(seed: u64, count: u64) -> Result<CorpusSummary, CorpusError> {
    if count == 0 {
        return Err(CorpusError::EmptyCount);
    }
    let mut summary = CorpusSummary {
        seed,
        count,
        agreements: 0,
        candidates_checked: 0,
        b1_cancellations: 0,
        order_two_poles: 0,
        residue_checks: 0,
        residue_matches: 0,
        candidates_below_minus_one: 0,
        counterexamples: Vec::new(),
    };
    for (i, support) in corpus_instances(seed, count).iter().enumerate() {
        let polygon = build_polygon(support);
        let v = verify_polygon(support, &polygon);
        summary.candidates_checked += v.entries.len() as u64;
        summary.b1_cancellations += v
            .entries
            .iter()
            .filter(|e| !e.actual_pole && !e.predicted_pole)
            .count() as u64;
        summary.order_two_poles += v.entries.iter().filter(|e| e.order == 2).count() as u64;
        summary.residue_checks += v.residue_checks.len() as u64;
        summary.residue_matches += v.residue_checks.iter().filter(|r| r.matches()).count() as u64;
        summary.candidates_below_minus_one += v.candidates_below_minus_one.len() as u64;
        if v.nondegenerate && v.agree() {
            summary.agreements += 1;
        } else {
            summary.counterexamples.push(Counterexample {
                index: i as u64,
                input: render_polynomial(support),
                details: Report::build(support).criterion_text(),
            });
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_count_is_an_error() {
        assert_eq!(run_corpus(1, 0), Err(CorpusError::EmptyCount));
    }

    #[test]
    fn deterministic() {
        let a = run_corpus(7, 20).unwrap();
        let b = run_corpus(7, 20).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_json(), b.to_json());
        assert_ne!(corpus_instances(7, 5), corpus_instances(8, 5));
    }

    #[test]
    fn instances_respect_bounds() {
        for s in corpus_instances(3, 200) {
            let p = build_polygon(&s);
            assert!((1..=MAX_VERTICES).contains(&p.vertices().len()));
            assert!(p.vertices().iter().all(|v| v.x <= MAX_COORD && v.y <= MAX_COORD));
            assert!(is_nondegenerate(&s, &p));
        }
    }

    #[test]
    fn seed_one_hundred() {
        let s = run_corpus(1, 100).unwrap();
        assert_eq!(s.agreements, 100, "{}", s.to_text());
    }
}
