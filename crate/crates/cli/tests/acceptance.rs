//! Acceptance suite: one PASS/FAIL line per criterion, each within its time
//! budget. Lines go straight to stdout so they show without `--nocapture`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use pqmaps_core::approx::{
    approximate_with_boundary, boundary_correct, bump_target, fit_ladder, fit_pq_map, fs_uniform_points,
    ladder_non_increasing, measure_correction, PhasePolicy, SampledMap,
};
use pqmaps_core::bookkeeping::{bundle_rank, dim_bound, e1_page, evaluate_page, stable_range, BettiTable, ProblemParams};
use pqmaps_core::discriminant::{check_stabilization_membership, has_common_zero, random_corpus, random_tuple, Mode as DiscMode, VerdictKind, DEFAULT_TOL};
use pqmaps_core::genpos::{monte_carlo, Lemma, DEFAULT_MAGNITUDE};
use pqmaps_core::seeds::{trial_rng, DEFAULT_SEED};
use pqmaps_core::{FieldKind, GaussianRational};
use pqmaps_resolution::complex::SimplicialMap;
use pqmaps_resolution::corpus::{corpus, CorpusParams};
use pqmaps_resolution::fox_neuwirth::{c2_from_disk_model, fox_neuwirth_betti, DEFAULT_BOUND};
use pqmaps_resolution::resolution::{build_resolution, check_resolution_equivalence, compare_embeddings, Mode};
use pqmaps_resolution::spectral::spectral_sequence;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn criterion(id: u32, name: &str, budget: Duration, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = check();
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let ok = o.passed && in_time;
    let line = format!(
        "{} criterion {id}: {name}: {} [{:.2}s of {:.0}s]{}\n",
        if ok { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64(),
        budget.as_secs_f64(),
        if in_time { "" } else { " (over budget)" }
    );
    let mut out = std::io::stdout().lock();
    out.write_all(line.as_bytes()).unwrap();
    out.flush().unwrap();
    ok
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn formula_identities() -> Outcome {
    let mut rng = trial_rng(DEFAULT_SEED, 1);
    let mut checked = 0;
    let mut bad = Vec::new();
    while checked < 10_000 {
        let m = rng.gen_range(1..=3u32);
        let n = rng.gen_range(m..=m + 3);
        let p = rng.gen_range(0..=8u32);
        let q = rng.gen_range(0..=p);
        let params = ProblemParams::new(m, n, p, q).unwrap();
        if params.validity_bound() < 1 {
            continue;
        }
        let r = rng.gen_range(1..=params.validity_bound());
        let lhs = bundle_rank(&params, r).unwrap() + 2 * m as i64 * r;
        if lhs != dim_bound(&params, r).unwrap() {
            bad.push(format!("bundle {params} r={r}"));
        }
        let d = params.degree();
        let (mi, ni) = (m as i64, n as i64);
        if stable_range(mi, ni, d + 2) - stable_range(mi, ni, d) != 2 * ni - 2 * mi + 1 {
            bad.push(format!("stable range {params}"));
        }
        checked += 1;
    }
    outcome(bad.is_empty(), format!("{checked} parameter sets, {} mismatches {:?}", bad.len(), &bad[..bad.len().min(3)]))
}

/// Draw `total` random `(m, p, q, r)` with `r` in `1..=rmax(p)`, group equal
/// draws, and run each group as one Monte Carlo batch.
fn certification(lemma: Lemma, total: u64, stream: u64, rmax: impl Fn(u32) -> u32) -> Outcome {
    let mut rng = trial_rng(DEFAULT_SEED, stream);
    let mut groups: BTreeMap<(u32, u32, u32, u32, u32), u64> = BTreeMap::new();
    for _ in 0..total {
        let m = rng.gen_range(1..=2u32);
        let p = rng.gen_range(1..=5u32);
        let q = rng.gen_range(0..=2u32.min(p));
        let n = rng.gen_range(m..=m + 1);
        let r = rng.gen_range(1..=rmax(p));
        *groups.entry((m, n, p, q, r)).or_default() += 1;
    }
    let mut trials = 0;
    let mut failures = Vec::new();
    for (k, (&(m, n, p, q, r), &count)) in groups.iter().enumerate() {
        let params = ProblemParams::new(m, n, p, q).unwrap();
        let summary = monte_carlo(lemma, &params, r as usize, count, DEFAULT_SEED + 1000 * stream + k as u64, DEFAULT_MAGNITUDE).unwrap();
        assert!(summary.guaranteed, "{lemma:?} not claimed for {params} r={r}");
        trials += summary.trials;
        if summary.failures > 0 {
            failures.push(format!("{params} r={r}: {}", summary.failures));
        }
    }
    outcome(failures.is_empty(), format!("{lemma:?}: {trials} trials in {} groups, failures {failures:?}", groups.len()))
}

fn resolution_corpus() -> Outcome {
    let maps = corpus(2024, 20, &CorpusParams::default());
    let mut problems = Vec::new();
    let mut pairs = 0;
    let largest = maps.iter().map(|m| m.source().simplex_count().max(m.target().simplex_count())).max().unwrap();
    for (i, map) in maps.iter().enumerate() {
        let res = build_resolution(map, &Mode::Nondegenerate, None, i as u64).unwrap();
        for field in [FieldKind::Rational, FieldKind::F2] {
            if !check_resolution_equivalence(&res, field).holds {
                problems.push(format!("map {i}: Betti differ over {field}"));
            }
            let ss = spectral_sequence(&res.complex, field);
            if !(ss.converged && ss.consistent) {
                problems.push(format!("map {i}: E^inf does not sum to Betti over {field}"));
            }
        }
        for pair in 0..10u64 {
            let (a, b) = (1000 * i as u64 + pair, 7_000_000 + 31 * pair + i as u64);
            pairs += 1;
            if !compare_embeddings(map, a, b, None, FieldKind::Rational).unwrap().agree {
                problems.push(format!("map {i}: seeds {a}, {b} disagree"));
            }
        }
    }
    outcome(
        problems.is_empty() && largest <= 200,
        format!("{} maps (largest complex {largest} simplices), {pairs} seed pairs, problems {problems:?}", maps.len()),
    )
}

fn two_points() -> Outcome {
    let res = build_resolution(&SimplicialMap::two_points(), &Mode::Nondegenerate, None, DEFAULT_SEED).unwrap();
    let ss = spectral_sequence(&res.complex, FieldKind::Rational);
    let e1 = ss.e1();
    let inf = ss.infinity();
    let got = (e1.rank(1, 0), e1.rank(2, 1), inf.total_in_degree(0), inf.total_in_degree(1));
    outcome(got == (2, 1, 1, 0), format!("E1(1,0)={} E1(2,1)={} E_inf deg0={} deg1={}", got.0, got.1, got.2, got.3))
}

fn betti_oracle() -> Outcome {
    let q = FieldKind::Rational;
    let r1 = fox_neuwirth_betti(1, q, DEFAULT_BOUND).unwrap();
    let r2 = fox_neuwirth_betti(2, q, DEFAULT_BOUND).unwrap();
    let model = c2_from_disk_model(q);
    let ok = r1 == BTreeMap::from([(2, 1)]) && r2 == BTreeMap::from([(3, 1), (4, 1)]) && model == r2;
    outcome(ok, format!("r=1 {r1:?}, r=2 {r2:?}, triangulated model {model:?}"))
}

fn e1_evaluation() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/betti_m1_rational.csv");
    let table = BettiTable::from_csv_path(&path).unwrap();
    let params = ProblemParams::new(1, 2, 5, 0).unwrap();
    let page = e1_page(&params, 5, 30, false).unwrap();
    let eval = evaluate_page(&page, &table).unwrap();
    let lowest = eval.lowest_positive_degree();
    outcome(lowest == Some((3, 1)) && eval.uncovered.is_empty(), format!("lowest positive degree {lowest:?}, histogram {:?}", eval.histogram))
}

fn discriminant() -> Outcome {
    let mut tuples = Vec::new();
    for (k, (n, p)) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)].into_iter().enumerate() {
        let params = ProblemParams::new(1, n, p, 0).unwrap();
        tuples.extend(random_corpus(DEFAULT_SEED + k as u64, &params, 20, 5).into_iter().map(|(t, _)| t));
    }
    let (mut disagree, mut unstable, mut decidable, mut zeros) = (Vec::new(), Vec::new(), 0, 0);
    for (i, t) in tuples.iter().enumerate() {
        let exact = has_common_zero(t, DiscMode::Exact, DEFAULT_TOL).unwrap().verdict.kind();
        let numeric = has_common_zero(t, DiscMode::Numeric, DEFAULT_TOL).unwrap().verdict.kind();
        zeros += (exact == VerdictKind::CommonZero) as usize;
        if exact != numeric {
            disagree.push(format!("#{i}: {exact:?} vs {numeric:?}"));
        }
        let stab = check_stabilization_membership(t, DEFAULT_TOL).unwrap();
        match stab.agree {
            Some(true) => decidable += 1,
            Some(false) => unstable.push(i),
            None => {}
        }
    }
    outcome(
        disagree.is_empty() && unstable.is_empty() && decidable > 0,
        format!(
            "{} tuples ({zeros} with a common zero), disagreements {disagree:?}, stabilization decidable {decidable}, changed {unstable:?}",
            tuples.len()
        ),
    )
}

fn approximator() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;

    // rational targets: sampled (p, q)-maps are recovered exactly
    for (k, (m, n, p, q)) in [(1, 1, 1, 0), (1, 2, 2, 1), (2, 2, 1, 0), (1, 1, 3, 1)].into_iter().enumerate() {
        let params = ProblemParams::new(m, n, p, q).unwrap();
        let t = random_tuple(&mut trial_rng(DEFAULT_SEED, 100 + k as u64), &params, 3);
        let samples = SampledMap::from_fn(&fs_uniform_points(m as usize, 80, k as u64), |x| t.evaluate_float(x).unwrap()).unwrap();
        let fit = fit_pq_map(&samples, p, q, PhasePolicy::UnitPhase).unwrap();
        // zero up to double rounding of the sample values
        let exact = fit.residual <= 1e-18 && fit.sup_fs_error < 1e-7;
        ok &= exact;
        notes.push(format!("({m},{n},{p},{q}) residual {:.1e}", fit.residual));

        let fitted = approximate_with_boundary(&samples, t.boundary(), p, q, PhasePolicy::UnitPhase).unwrap();
        ok &= fitted.boundary_agreement == Some(true);
    }

    // boundary correction of perturbed polynomials
    let small = GaussianRational::new(
        num_rational::BigRational::new(1.into(), 50.into()),
        num_rational::BigRational::new((-1).into(), 80.into()),
    );
    let mut worst: f64 = 0.0;
    for k in 0..10u64 {
        let params = ProblemParams::new(2, 2, 2, 1).unwrap();
        let mut rng = trial_rng(DEFAULT_SEED, 200 + k);
        let s = random_tuple(&mut rng, &params, 3);
        let noise = random_tuple(&mut rng, &params, 2);
        let points = fs_uniform_points(2, 200, k);
        for (sc, nc) in s.components().iter().zip(noise.components()) {
            let p = sc.add(&nc.scale(&small)).unwrap();
            let f = sc.restrict_to_hyperplane().unwrap();
            let p1 = boundary_correct(&p, &f).unwrap();
            ok &= p1.restrict_to_hyperplane().unwrap() == f;
            let bound = measure_correction(&p, &p1, |x: &[Complex64]| sc.evaluate_float(x).unwrap(), &points);
            ok &= bound.holds;
            worst = worst.max(bound.corrected_sup / bound.eps);
        }
    }
    notes.push(format!("correction worst sup ratio {worst:.3}"));

    // non-algebraic target: residual non-increasing up the ladder
    let samples = SampledMap::from_fn(&fs_uniform_points(1, 200, 3), bump_target).unwrap();
    let ladder = fit_ladder(&samples, 3, PhasePolicy::UnitPhase).unwrap();
    let monotone = ladder.len() == 4 && ladder_non_increasing(&ladder, &samples);
    ok &= monotone;
    let residuals: Vec<String> = ladder.iter().map(|r| format!("{:.3e}", r.residual)).collect();
    notes.push(format!("bump ladder residuals [{}]", residuals.join(", ")));

    outcome(ok, notes.join("; "))
}

#[test]
fn acceptance() {
    let results = [
        criterion(1, "formula identities", secs(1), formula_identities),
        criterion(2, "Veronese affine independence for r <= p+1", secs(60), || {
            certification(Lemma::Vdm, 10_000, 2, |p| p + 1)
        }),
        criterion(3, "vanishing conditions and fiber dimension", secs(120), || {
            let a = certification(Lemma::Hyperplanes, 10_000, 3, |p| p);
            let b = certification(Lemma::Fiber, 10_000, 4, |p| p.div_ceil(2));
            outcome(a.passed && b.passed, format!("{}; {}", a.detail, b.detail))
        }),
        criterion(4, "resolution corpus", secs(300), resolution_corpus),
        criterion(5, "two points over a point", secs(10), two_points),
        criterion(6, "configuration-space Betti oracle", secs(10), betti_oracle),
        criterion(7, "E1 evaluation with the shipped table", secs(10), e1_evaluation),
        criterion(8, "discriminant verdicts", secs(120), discriminant),
        criterion(9, "approximator", secs(120), approximator),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
