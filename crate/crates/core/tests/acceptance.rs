//! Acceptance gate. Each test covers one criterion and writes a single
//! PASS/FAIL line to stderr (bypassing output capture, so the lines show up
//! in a plain `cargo test` run).

use std::io::Write;
use std::time::Instant;

use qfcodes::cli::suites::{self, default_matrix, Instance, Status, Suite, SuiteOptions};
use qfcodes::codes::{
    minimality_check, predicted_length, weight_distribution_predicted, CodeCD, WeightDist, DEFAULT_BRUTE_LIMIT,
};
use qfcodes::gf::{for_each_vector, ExtField};
use qfcodes::ghw::{ghw_exact, hierarchy_report, GhwSide, HierarchyCase, HierarchyOptions};
use qfcodes::matrix::Mat;
use qfcodes::quadform::{FormInput, QuadForm};
use qfcodes::subspace::PairSpaceCtx;
use rayon::prelude::*;

fn report(n: u32, title: &str, ok: bool, detail: &str) {
    let line = format!("{} criterion {n} ({title}): {detail}\n", if ok { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().write_all(line.as_bytes());
}

/// f = diag(1, 1, 1) on F_27 and g = Tr(x²) on F_9: an odd-rank code with s = 5.
fn stretch() -> Instance {
    suites::instance(
        "p3-s3+2-diag111-trx2",
        3,
        (3, FormInput::Gram { rows: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]] }),
        (2, FormInput::TracePoly { coeffs: vec![vec![1, 0]] }),
    )
    .unwrap()
}

fn hierarchy_opts() -> HierarchyOptions {
    HierarchyOptions { limit: u128::MAX, side: GhwSide::Auto, product_witness: true }
}

#[test]
fn criterion_1_length() {
    let matrix = default_matrix();
    let lengths: Vec<usize> = matrix.iter().map(|i| i.code.n()).collect();
    let predicted: Vec<u64> = matrix
        .iter()
        .map(|i| {
            let c = &i.code;
            predicted_length(c.prime_field(), c.s(), c.rank(), c.sign()).unwrap()
        })
        .collect();
    let ok = lengths == [4, 8, 20] && predicted == [4, 8, 20];
    report(1, "length formula", ok, &format!("enumerated {lengths:?}, predicted {predicted:?}"));
    assert!(ok);
}

fn diagonal_pair_codes(p: u32, s: usize) -> Vec<CodeCD> {
    let mut out = Vec::new();
    for s1 in 1..s {
        let s2 = s - s1;
        let k1 = ExtField::new(p as u64, s1, None).unwrap();
        let k2 = ExtField::new(p as u64, s2, None).unwrap();
        let ctx = PairSpaceCtx::new(k1.clone(), k2.clone()).unwrap();
        let mut d1s = Vec::new();
        for_each_vector(p, s1, |d| d1s.push(d.to_vec()));
        let mut d2s = Vec::new();
        for_each_vector(p, s2, |d| d2s.push(d.to_vec()));
        for d1 in &d1s {
            let f = QuadForm::from_gram(&k1, Mat::diag(d1)).unwrap();
            for d2 in &d2s {
                let g = QuadForm::from_gram(&k2, Mat::diag(d2)).unwrap();
                out.push(CodeCD::new(&ctx, &f, &g).unwrap());
            }
        }
    }
    out
}

#[test]
fn criterion_2_weight_distributions() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for inst in default_matrix() {
        let c = &inst.code;
        let brute = c.weight_distribution_bruteforce(DEFAULT_BRUTE_LIMIT).unwrap();
        let pred = weight_distribution_predicted(c.prime_field(), c.s(), c.rank(), c.sign()).unwrap();
        if c.dimension() != c.s() || brute != pred {
            failures.push(format!("{}: {brute:?} vs {pred:?}", inst.name));
        }
    }
    let odd = &default_matrix()[1].code;
    let example = WeightDist::from([(0, 1), (4, 12), (6, 8), (8, 6)]);
    if odd.weight_distribution_bruteforce(DEFAULT_BRUTE_LIMIT).unwrap() != example {
        failures.push("p=3, s=3, R=3, ε=−1 example".into());
    }

    let mut swept = 0;
    let mut deficient = 0;
    for p in [3, 5] {
        for s in 2..=4 {
            let codes = diagonal_pair_codes(p, s);
            let results: Vec<(bool, Option<String>)> = codes
                .par_iter()
                .map(|c| {
                    if c.dimension() != c.s() {
                        return (false, None);
                    }
                    let brute = c.weight_distribution_bruteforce(DEFAULT_BRUTE_LIMIT).unwrap();
                    let pred = weight_distribution_predicted(c.prime_field(), c.s(), c.rank(), c.sign());
                    let bad = match pred {
                        Ok(pred) if pred == brute => None,
                        other => Some(format!(
                            "p={p} f={:?} g={:?}: enumerated {brute:?}, predicted {other:?}",
                            c.f().gram().to_rows(),
                            c.g().gram().to_rows()
                        )),
                    };
                    (true, bad)
                })
                .collect();
            for (full, bad) in results {
                if full {
                    swept += 1;
                } else {
                    deficient += 1;
                }
                failures.extend(bad);
            }
        }
    }
    let ok = failures.is_empty();
    report(
        2,
        "weight distributions",
        ok,
        &format!(
            "3 matrix configs + {swept} diagonal pairs with dim = s ({deficient} dimension-deficient pairs excluded), {} mismatches, {:.1}s",
            failures.len(),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_3_weight_hierarchies() {
    let start = Instant::now();
    let expected: [&[u64]; 3] = [&[2, 4], &[4, 6, 8], &[12, 16, 18, 20]];
    let cases = [HierarchyCase::EvenA, HierarchyCase::Odd, HierarchyCase::EvenB];
    let mut ok = true;
    let mut detail = Vec::new();
    for ((inst, want), case) in default_matrix().iter().zip(expected).zip(cases) {
        let c = &inst.code;
        let mut both_sides = true;
        let exact: Vec<u64> = (1..=c.s())
            .map(|r| {
                let a = ghw_exact(c, r, GhwSide::Intersection, u128::MAX).unwrap();
                let b = ghw_exact(c, r, GhwSide::Annihilator, u128::MAX).unwrap();
                both_sides &= a == b;
                a
            })
            .collect();
        let rep = hierarchy_report(c, 1..=c.s(), &hierarchy_opts()).unwrap();
        let predicted: Vec<u64> = rep.rows.iter().filter_map(|r| r.predicted).collect();
        let good = both_sides && exact == want && predicted == want && rep.case == Some(case);
        ok &= good;
        detail.push(format!("{case:?} {exact:?}"));
    }
    let t = Instant::now();
    let st = stretch();
    let rep = hierarchy_report(&st.code, 1..=5, &hierarchy_opts()).unwrap();
    let exact: Vec<u64> = rep.rows.iter().filter_map(|r| r.exact).collect();
    let stretch_ok = st.code.dimension() == 5
        && rep.case == Some(HierarchyCase::Odd)
        && rep.rows.iter().all(|r| r.matches == Some(true));
    ok &= stretch_ok;
    detail.push(format!(
        "stretch s=5 {:?} {exact:?} in {:.1}s",
        rep.case.unwrap(),
        t.elapsed().as_secs_f64()
    ));
    report(
        3,
        "weight hierarchies",
        ok,
        &format!("{}; total {:.1}s", detail.join(", "), start.elapsed().as_secs_f64()),
    );
    assert!(ok);
}

#[test]
fn criterion_4_exponential_sums() {
    let start = Instant::now();
    let res = suites::run(
        &[Suite::Orbit, Suite::Weil, Suite::LevelSet, Suite::SubspaceSum],
        &[],
        &SuiteOptions::default(),
    );
    let cases: u64 = res.checks.iter().map(|c| c.cases).sum();
    let ok = res.checks.iter().all(|c| c.status == Status::Pass);
    let failed: Vec<&str> = res
        .checks
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| c.name.as_str())
        .collect();
    report(
        4,
        "exponential-sum identities",
        ok,
        &format!(
            "{} checks, {cases} comparisons, not passing: {failed:?}, {:.1}s",
            res.checks.len(),
            start.elapsed().as_secs_f64()
        ),
    );
    assert!(ok, "{:#?}", res.checks);
}

#[test]
fn criterion_5_counting_identities() {
    let start = Instant::now();
    let mut matrix = default_matrix();
    matrix.push(stretch());
    let res = suites::run(&[Suite::PairCount, Suite::Annihilator], &matrix, &SuiteOptions::default());
    let cases: u64 = res.checks.iter().map(|c| c.cases).sum();
    let ok = res.checks.iter().all(|c| c.status == Status::Pass);
    report(
        5,
        "counting identities",
        ok,
        &format!("{} checks, {cases} comparisons, {:.1}s", res.checks.len(), start.elapsed().as_secs_f64()),
    );
    assert!(ok, "{:#?}", res.checks);
}

/// Further codes with R even and ε = η̄(−1)^{R/2}, where the Griesmer bound
/// is met for r ≤ R/2.
fn even_a_extra() -> Vec<Instance> {
    vec![
        suites::instance(
            "p3-s2+2-trx2-diag12",
            3,
            (2, FormInput::TracePoly { coeffs: vec![vec![1, 0]] }),
            (2, FormInput::Gram { rows: vec![vec![1, 0], vec![0, 2]] }),
        )
        .unwrap(),
        suites::instance(
            "p5-s1+1-x2-y2",
            5,
            (1, FormInput::Gram { rows: vec![vec![1]] }),
            (1, FormInput::Gram { rows: vec![vec![1]] }),
        )
        .unwrap(),
    ]
}

#[test]
fn criterion_6_griesmer() {
    let mut matrix = default_matrix();
    matrix.push(stretch());
    matrix.extend(even_a_extra());
    let mut ok = true;
    let mut equalities = 0;
    for inst in &matrix {
        let rep = hierarchy_report(&inst.code, 1..=inst.code.s(), &hierarchy_opts()).unwrap();
        ok &= rep.griesmer_bound_holds == Some(true) && rep.dimension == inst.code.s();
        for row in &rep.rows {
            if rep.case == Some(HierarchyCase::EvenA) && row.r <= rep.params.rank() / 2 {
                ok &= row.griesmer_equality == Some(true);
                equalities += 1;
            }
        }
    }
    ok &= equalities > 0;
    report(
        6,
        "Griesmer bound",
        ok,
        &format!("equality on {equalities} even-case rows, bound respected on {} codes", matrix.len()),
    );
    assert!(ok);
}

#[test]
fn criterion_7_structure() {
    let res = suites::run(&[Suite::Structure, Suite::Weights], &default_matrix(), &SuiteOptions::default());
    let mut ok = res.checks.iter().all(|c| c.status == Status::Pass);
    let mut matrix = default_matrix();
    matrix.push(stretch());
    for inst in &matrix {
        let rep = hierarchy_report(&inst.code, 1..=inst.code.s(), &hierarchy_opts()).unwrap();
        ok &= rep.monotone == Some(true);
        let wd = inst.code.weight_distribution_bruteforce(DEFAULT_BRUTE_LIMIT).unwrap();
        ok &= wd.total() == 3u64.pow(inst.code.s() as u32);
    }
    report(
        7,
        "structural properties",
        ok,
        "Wei monotonicity, Σ A_w = p^s, g² = p*, σ_z(g) = η̄(z)g, sign invariance under 100 congruences",
    );
    assert!(ok, "{:#?}", res.checks);
}

#[test]
fn criterion_8_minimality() {
    let mut matrix = default_matrix();
    matrix.push(stretch());
    let res = suites::run(&[Suite::Weights], &matrix, &SuiteOptions::default());
    let mut ok = true;
    let mut lines = Vec::new();
    for inst in &matrix {
        let c = &inst.code;
        let wd = c.weight_distribution_bruteforce(DEFAULT_BRUTE_LIMIT).unwrap();
        let m = minimality_check(&wd, c.prime_field()).unwrap();
        let entry = res
            .checks
            .iter()
            .find(|ch| ch.name == format!("weights/{}/minimality", inst.name))
            .unwrap();
        let flagged = entry.detail.as_deref().unwrap_or("").contains("FLAG");
        // Every failure at R ≥ 3 must be flagged, and nothing else.
        ok &= flagged == (!m.holds && c.rank() >= 3);
        lines.push(format!(
            "{} R={} w_min={} w_max={} {}",
            inst.name,
            c.rank(),
            m.w_min,
            m.w_max,
            if m.holds { "holds" } else if flagged { "FAILS (flagged)" } else { "fails" }
        ));
    }
    report(8, "minimality test reported", ok, &lines.join("; "));
    assert!(ok);
}
