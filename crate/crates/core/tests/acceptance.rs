//! Acceptance suite. Every criterion is checked at exact equality and reports
//! one PASS/FAIL line; the test fails if any criterion fails.
//!
//! `cargo test -p topzeta --test acceptance -- --nocapture`

mod common;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use topzeta::cli::corpus::corpus_instances;
use topzeta::cli::parse_polynomial;
use topzeta::criterion::{
    assembled_contribution, closed_form_residue, edge_is_degenerate, edge_polynomial, factor_f,
    is_nondegenerate, noncompact_residue, nondegeneracy_check, predicted_poles, ray_frame,
    ProofFacetFrame,
};
use topzeta::exactnum::{ratio, LinFactor};
use topzeta::polygon::{candidate_pole, diagonal_intersection, FacetKind};
use topzeta::{
    build_polygon, topological_zeta, FactoredRatFunc, NewtonPolygon, Rational, Support, UniPoly,
};

use common::{random_frame, residue_or_zero};

const CORPUS_SEED: u64 = 20_240_601;
const CORPUS_COUNT: u64 = 1000;
const FRAME_SEED: u64 = 77;
const FRAME_COUNT: usize = 600;

type Outcome = Result<String, String>;

struct Instance {
    support: Support,
    polygon: NewtonPolygon,
}

fn corpus() -> Vec<Instance> {
    corpus_instances(CORPUS_SEED, CORPUS_COUNT)
        .into_iter()
        .map(|support| {
            let polygon = build_polygon(&support);
            Instance { support, polygon }
        })
        .collect()
}

fn zeta_of(text: &str) -> (Support, NewtonPolygon, FactoredRatFunc) {
    let support = parse_polynomial(text).expect("valid input");
    let polygon = build_polygon(&support);
    let z = topological_zeta(&polygon).zeta;
    (support, polygon, z)
}

fn rf(numer: &[i64], factors: &[(i64, i64)]) -> FactoredRatFunc {
    FactoredRatFunc::new(
        UniPoly::from_ints(numer),
        factors.iter().map(|&(n, nu)| LinFactor::new(n, nu).expect("valid factor")),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cusp() -> Outcome {
    let (_, _, z) = zeta_of("x^2 + y^3");
    let expected = rf(&[5, 4], &[(1, 1), (6, 5)]);
    ensure(z == expected, || format!("Z = {z}, expected {expected}"))?;
    let poles = z.poles();
    ensure(
        poles == vec![(ratio(-1, 1), 1), (ratio(-5, 6), 1)],
        || format!("poles {poles:?}"),
    )?;
    let res = z.residue_simple(&ratio(-5, 6)).map_err(|e| e.to_string())?;
    ensure(res == ratio(5, 3), || format!("residue at -5/6 is {res}"))?;
    let frame = ProofFacetFrame::isolated(0, 3, 2, 0).map_err(|e| e.to_string())?;
    ensure(frame.g == 1, || "g ≠ 1".into())?;
    let closed = closed_form_residue(&frame).map_err(|e| e.to_string())?;
    ensure(closed == ratio(5, 3), || format!("closed form gives {closed}"))?;
    Ok(format!("Z = {z}, Res(-5/6) = {res} = closed form"))
}

fn b1_cancellation() -> Outcome {
    let (_, polygon, z) = zeta_of("x + y");
    ensure(z == rf(&[1], &[(1, 1)]), || format!("Z(x+y) = {z}"))?;
    ensure(
        polygon
            .facets()
            .iter()
            .any(|f| candidate_pole(f) == Some(ratio(-2, 1))),
        || "-2 is not a candidate of x+y".into(),
    )?;
    ensure(z.pole_order(&ratio(-2, 1)) == 0, || "-2 is a pole of x+y".into())?;

    let (_, polygon, z) = zeta_of("y^5 + x*y^2");
    ensure(z == rf(&[1], &[(1, 1), (2, 1)]), || format!("Z(y^5+xy^2) = {z}"))?;
    ensure(
        polygon
            .facets()
            .iter()
            .any(|f| candidate_pole(f) == Some(ratio(-4, 5))),
        || "-4/5 is not a candidate".into(),
    )?;
    ensure(z.pole_order(&ratio(-4, 5)) == 0, || "-4/5 is a pole".into())?;
    let half = ratio(-1, 2);
    let res = z.residue_simple(&half).map_err(|e| e.to_string())?;
    let ray = polygon
        .facets()
        .iter()
        .find(|f| !f.is_compact() && candidate_pole(f) == Some(half.clone()))
        .ok_or("no ray contributes -1/2")?;
    let (a, b) = ray_frame(ray.kind).ok_or("not a ray")?;
    let expected = noncompact_residue(a, b).map_err(|e| e.to_string())?;
    ensure(res == Rational::one() && res == expected, || {
        format!("residue {res}, ray formula 1/({a}-{b}) = {expected}")
    })?;
    Ok(format!("Z(x+y) = 1/(s+1); Z(y^5+xy^2) = {z}, Res(-1/2) = 1/({a}-{b}) = {res}"))
}

fn order_two() -> Outcome {
    let (_, polygon, z) = zeta_of("x^5 + x^2*y^2 + y^5");
    let half = ratio(-1, 2);
    let contributing = polygon
        .facets()
        .iter()
        .filter(|f| candidate_pole(f) == Some(half.clone()))
        .count();
    ensure(contributing == 2, || format!("{contributing} facets give -1/2"))?;
    let order = z.pole_order(&half);
    ensure(order == 2, || format!("order {order} at -1/2"))?;
    Ok(format!("Z = {z}, order 2 at -1/2"))
}

fn residue_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(FRAME_SEED);
    let mut b1 = 0;
    for i in 0..FRAME_COUNT {
        let frame = random_frame(&mut rng, 30);
        let s0 = frame.candidate();
        let assembled = assembled_contribution(&frame);
        let direct = residue_or_zero(&assembled, &s0)
            .ok_or_else(|| format!("frame #{i}: pole of order > 1"))?;
        let closed = closed_form_residue(&frame).map_err(|e| format!("{frame:?}: {e}"))?;
        ensure(direct == closed, || {
            format!("frame #{i} {frame:?}: residue {direct}, closed form {closed}")
        })?;
        if frame.is_b1() {
            b1 += 1;
        }
    }
    let mut zero_checks = 0;
    for l in 1..=50 {
        // n = 1 puts (1, 1) on the diagonal: the candidate is −1
        for n in (0..l).filter(|&n| n != 1) {
            let frame = ProofFacetFrame::isolated(0, l, 1, n).map_err(|e| e.to_string())?;
            let s0 = frame.candidate();
            let direct = residue_or_zero(&assembled_contribution(&frame), &s0)
                .ok_or_else(|| format!("(0,{l},1,{n}): pole of order > 1"))?;
            let closed = closed_form_residue(&frame).map_err(|e| e.to_string())?;
            ensure(direct.is_zero() && closed.is_zero(), || {
                format!("(0,{l},1,{n}): residue {direct}, closed form {closed}")
            })?;
            zero_checks += 1;
        }
    }
    Ok(format!(
        "{FRAME_COUNT} random frames ({b1} B1) match; {zero_checks} (0,l,1,n) frames have residue 0"
    ))
}

fn criterion_suite(corpus: &[Instance]) -> Outcome {
    let mut candidates = 0;
    for (i, inst) in corpus.iter().enumerate() {
        ensure(is_nondegenerate(&inst.support, &inst.polygon), || {
            format!("instance #{i} is degenerate")
        })?;
        let z = topological_zeta(&inst.polygon).zeta;
        let minus_one = ratio(-1, 1);
        let actual: BTreeSet<Rational> = z
            .poles()
            .into_iter()
            .map(|(v, _)| v)
            .filter(|v| *v != minus_one)
            .collect();
        let predicted = predicted_poles(&inst.polygon);
        ensure(predicted == actual, || {
            format!("instance #{i}: predicted {predicted:?}, actual {actual:?}")
        })?;
        candidates += predicted.len();
    }
    Ok(format!(
        "{} instances agree ({candidates} predicted poles)",
        corpus.len()
    ))
}

fn geometry(corpus: &[Instance]) -> Outcome {
    let mut facets = 0;
    for (i, inst) in corpus.iter().enumerate() {
        for (j, f) in inst.polygon.compact_facets() {
            let FacetKind::Compact { start, end } = f.kind else {
                unreachable!()
            };
            let g = f.lattice_length.ok_or("compact facet without length")?;
            let mult = start.cross(end).abs();
            ensure(mult == f.n * g, || {
                format!("instance #{i} facet {j}: mult {mult}, N·g = {}", f.n * g)
            })?;
            let r = diagonal_intersection(f).ok_or("facet parallel to the diagonal")?;
            let nu_over_n = ratio(f.nu, f.n);
            ensure(nu_over_n == r.recip(), || {
                format!("instance #{i} facet {j}: ν/N = {nu_over_n}, r = {r}")
            })?;
            facets += 1;
        }
    }
    Ok(format!("{facets} compact facets satisfy mult = N·g and ν/N = 1/r"))
}

fn signs(corpus: &[Instance]) -> Outcome {
    let (mut above, mut below) = (0, 0);
    for (i, inst) in corpus.iter().enumerate() {
        for (j, _) in inst.polygon.compact_facets() {
            let frame = ProofFacetFrame::from_polygon(&inst.polygon, j).ok_or("no frame")?;
            let ProofFacetFrame { k, l, m, n, .. } = frame;
            let is_above = k < l && m < n;
            let is_below = l < k && n < m;
            if frame.is_b1() || !(is_above || is_below) {
                continue;
            }
            let res = closed_form_residue(&frame).map_err(|e| format!("{frame:?}: {e}"))?;
            let f = factor_f(&frame);
            ensure(res.is_negative() && f.is_positive(), || {
                format!("instance #{i} facet {j} {frame:?}: Res = {res}, F = {f}")
            })?;
            if is_above {
                above += 1;
            } else {
                below += 1;
            }
        }
    }
    ensure(above > 0 && below > 0, || {
        format!("too few frames: {above} above, {below} below")
    })?;
    Ok(format!("{above} frames above and {below} below the diagonal: Res < 0, F > 0"))
}

fn nondegeneracy(corpus: &[Instance]) -> Outcome {
    let degenerate = parse_polynomial("x^2 + 2*x*y + y^2").expect("valid");
    ensure(!is_nondegenerate(&degenerate, &build_polygon(&degenerate)), || {
        "x^2+2xy+y^2 reported nondegenerate".into()
    })?;
    let cusp = parse_polynomial("x^2 + y^3").expect("valid");
    ensure(is_nondegenerate(&cusp, &build_polygon(&cusp)), || {
        "x^2+y^3 reported degenerate".into()
    })?;
    for i in 0..=12u32 {
        for j in 0..=12u32 {
            if (i, j) == (0, 0) {
                continue;
            }
            let s = Support::from_exponents(&[(i, j)]).expect("monomial");
            let p = build_polygon(&s);
            ensure(nondegeneracy_check(&s, &p).is_empty() && is_nondegenerate(&s, &p), || {
                format!("x^{i}y^{j} not reported nondegenerate")
            })?;
        }
    }
    let mut edges = 0;
    for (i, inst) in corpus.iter().enumerate() {
        for (j, _) in inst.polygon.compact_facets() {
            let fwd = edge_polynomial(&inst.support, &inst.polygon, j, false).ok_or("no edge")?;
            let rev = edge_polynomial(&inst.support, &inst.polygon, j, true).ok_or("no edge")?;
            ensure(rev == fwd.reversed(), || {
                format!("instance #{i} facet {j}: reversal is not t^g P(1/t)")
            })?;
            ensure(edge_is_degenerate(&fwd) == edge_is_degenerate(&rev), || {
                format!("instance #{i} facet {j}: orientation changes the verdict")
            })?;
            edges += 1;
        }
    }
    Ok(format!("examples classified; {edges} corpus edges orientation-independent"))
}

#[test]
fn acceptance_criteria() {
    let corpus = corpus();
    let results: Vec<(&str, Outcome)> = vec![
        ("1 cusp", cusp()),
        ("2 B1 cancellation", b1_cancellation()),
        ("3 order-2 pole", order_two()),
        ("4 residue identity", residue_identity()),
        ("5 criterion", criterion_suite(&corpus)),
        ("6 geometry identities", geometry(&corpus)),
        ("7 sign properties", signs(&corpus)),
        ("8 nondegeneracy", nondegeneracy(&corpus)),
    ];
    let mut failed = Vec::new();
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS [{name}] {detail}"),
            Err(detail) => {
                println!("FAIL [{name}] {detail}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
