//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line and fails
//! when its criterion does not hold.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use tree_records::analysis::{
    asymptotic_log_ratio, borel_tanner_residual, forest_peak_index, is_log_concave, is_unimodal, kortchemski_poly,
    peak_fit, permutation_record_position_poly, srec_polynomial, tree_peak_index, tree_row_argmax,
};
use tree_records::arith::{cayley_unrooted, pow};
use tree_records::counting::{
    forest_record_number_with, forest_record_table_recurrence, tree_record_row, StirlingTable,
};
use tree_records::verify::{bijection_suite, identities_suite, series_suite, tables_suite, VerifyReport};

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!("{} criterion {id:>2}: {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn suite_detail(r: &VerifyReport, elapsed: Duration) -> String {
    let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
    format!("{} checks, failed {:?}, {:.1?}", r.checks.len(), failed, elapsed)
}

#[test]
fn criterion_01_tables_reproduction() {
    let start = Instant::now();
    let r = tables_suite(8).unwrap();
    let elapsed = start.elapsed();
    let ok = r.passed() && r.checks.len() == 14 && elapsed < Duration::from_secs(60);
    report(1, "four-way table agreement with reference rows, n <= 8", ok, suite_detail(&r, elapsed));
}

#[test]
fn criterion_02_bijection() {
    let start = Instant::now();
    let r = bijection_suite(6).unwrap();
    let elapsed = start.elapsed();
    let total: u64 = (1..=6u32).map(|n| (n as u64 + 1).pow(n - 1)).sum();
    let counted = r.checks[0].name.contains(&format!("over {total} forests"));
    let ok = r.passed() && counted && elapsed < Duration::from_secs(10);
    report(2, "decompose/reconstruct round trip, n <= 6", ok, suite_detail(&r, elapsed));
}

#[test]
fn criterion_03_factorization() {
    let r = identities_suite(8).unwrap();
    let wanted = ["flags x fillings x attachments", "type sums = table rows"];
    let ok = wanted
        .iter()
        .all(|w| r.checks.iter().any(|c| c.name.starts_with(w) && c.passed));
    report(3, "type factorization and type sums, n <= 8", ok, suite_detail(&r, Duration::ZERO));
}

#[test]
fn criterion_04_series_identities() {
    let start = Instant::now();
    let r = series_suite(30).unwrap();
    let elapsed = start.elapsed();
    let ok = r.passed() && elapsed < Duration::from_secs(30);
    report(4, "series identities at order 30", ok, suite_detail(&r, elapsed));
}

#[test]
fn criterion_05_stirling_formula() {
    let recurrence = forest_record_table_recurrence(60);
    let stirling = StirlingTable::new(61);
    let mismatches: Vec<(usize, usize)> = (1..=60)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .filter(|&(n, k)| forest_record_number_with(n, k, &stirling) != recurrence.get(n, k))
        .collect();
    report(
        5,
        "Stirling formula = recurrence, n <= 60",
        mismatches.is_empty(),
        format!("{} mismatches", mismatches.len()),
    );
}

#[test]
fn criterion_06_row_sums() {
    let forests = forest_record_table_recurrence(60);
    let bad: Vec<usize> = (1..=60)
        .filter(|&n| {
            tree_record_row(n).iter().sum::<BigUint>() != pow(n, n - 1)
                || forests.row(n).iter().sum::<BigUint>() != pow(n + 1, n - 1)
        })
        .collect();
    report(6, "row sums n^(n-1) and (n+1)^(n-1), n <= 60", bad.is_empty(), format!("bad rows {bad:?}"));
}

#[test]
fn criterion_07_log_concavity() {
    let start = Instant::now();
    let tree_bad: Vec<usize> = (1..=500).filter(|&n| !is_log_concave(&tree_record_row(n)[1..])).collect();
    let forests = forest_record_table_recurrence(200);
    let forest_bad: Vec<usize> = (1..=200).filter(|&n| !is_log_concave(&forests.row(n)[1..])).collect();
    let elapsed = start.elapsed();
    let ok = tree_bad.is_empty() && forest_bad.is_empty() && elapsed < Duration::from_secs(300);
    report(
        7,
        "log-concave tree rows n <= 500, forest rows n <= 200",
        ok,
        format!("tree counterexamples {tree_bad:?}, forest counterexamples {forest_bad:?}, {elapsed:.1?}"),
    );
}

#[test]
fn criterion_08_peaks() {
    let tree_bad: Vec<usize> = (1..=2000)
        .filter(|&n| tree_peak_index(n).unwrap() != tree_row_argmax(n))
        .collect();
    println!("  tree peak formula = exact argmax, n <= 2000: mismatches {tree_bad:?}");

    let forests = forest_record_table_recurrence(200);
    let peaks: Vec<usize> = (1..=200).map(|n| forest_peak_index(&forests, n).unwrap()).collect();
    let monotone = peaks.windows(2).all(|w| w[0] <= w[1]);
    let out_of_band: Vec<(usize, usize, f64)> = (100..=200)
        .map(|n| (n, peaks[n - 1], (peaks[n - 1] * peaks[n - 1]) as f64 / n as f64))
        .filter(|&(_, _, ratio)| !(0.9..=1.6).contains(&ratio))
        .collect();
    println!("  forest peaks nondecreasing, n <= 200: {monotone}");
    println!("  k*(n)^2/n outside [0.9, 1.6] for 100 <= n <= 200: {out_of_band:?}");

    let fit = peak_fit(50, 300).unwrap();
    let slope_ok = (1.0..=1.5).contains(&fit.slope);
    println!("  OLS slope over 50 <= n <= 300: {:.4} (intercept {:.4})", fit.slope, fit.intercept);

    let ok = tree_bad.is_empty() && monotone && out_of_band.is_empty() && slope_ok;
    report(
        8,
        "peak location",
        ok,
        format!(
            "tree mismatches {}, monotone {monotone}, band violations {}, slope {:.4}",
            tree_bad.len(),
            out_of_band.len(),
            fit.slope
        ),
    );
}

#[test]
fn criterion_09_asymptotics() {
    let mut ok = true;
    let mut detail = Vec::new();
    for k in 2..=4 {
        let mags: Vec<f64> = [100, 1_000, 10_000]
            .iter()
            .map(|&n| asymptotic_log_ratio(n, k).unwrap().abs())
            .collect();
        ok &= mags.windows(2).all(|w| w[1] < w[0]);
        detail.push(format!("k={k}: {}", mags.iter().map(|m| format!("{m:.3e}")).collect::<Vec<_>>().join(" > ")));
    }
    let at_limit = asymptotic_log_ratio(10_000, 2).unwrap().abs();
    ok &= at_limit < 1e-3;
    report(9, "log ratio decreases to zero", ok, detail.join("; "));
}

#[test]
fn criterion_10_borel_tanner() {
    let mut worst: f64 = 0.0;
    let mut lines = Vec::new();
    for rho in [0.1, 0.5, 0.9] {
        for k in 1..=3 {
            let r = borel_tanner_residual(k, rho, 400).unwrap();
            worst = worst.max(r.abs());
            if r.abs() > 1e-6 {
                lines.push(format!("rho={rho} k={k} residual={r:.3e}"));
            }
            println!("  rho={rho} k={k}: 1 - sum = {r:.3e}");
        }
    }
    report(
        10,
        "Borel-Tanner mass within 1e-6 of 1 at truncation 400",
        worst <= 1e-6,
        format!("worst residual {worst:.3e}; over tolerance: {lines:?}"),
    );
}

#[test]
fn criterion_11_kortchemski() {
    let bad: Vec<usize> = (1..=7)
        .filter(|&n| kortchemski_poly(n).unwrap() != permutation_record_position_poly(n).unwrap())
        .collect();
    report(11, "product formula = permutation enumeration, n <= 7", bad.is_empty(), format!("bad n {bad:?}"));
}

#[test]
fn criterion_12_srec() {
    let mut ok = true;
    let mut non_unimodal = Vec::new();
    for n in 1..=8 {
        let p = srec_polynomial(n).unwrap();
        ok &= BigUint::from(p.total()) == pow(n, n - 1);
        ok &= BigUint::from(p.coeff(0)) == cayley_unrooted(n);
        if !is_unimodal(&p.dense()) {
            non_unimodal.push(n);
        }
    }
    ok &= !non_unimodal.is_empty();
    report(
        12,
        "srec sums, constant terms, and a non-unimodal row, n <= 8",
        ok,
        format!("non-unimodal rows {non_unimodal:?}"),
    );
}
