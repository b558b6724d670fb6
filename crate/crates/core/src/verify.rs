//! Cross-validation suites: every count is computed by independent routes
//! and the results are compared exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{factorial, pow, to_rational};
use crate::composition::{all_compositions, Composition};
use crate::counting::{
    brute_force_table, cayley_forest_count, forest_from_tree_numbers, forest_record_table_formula,
    forest_record_table_recurrence, tree_record_row, tree_record_table_formula, tree_record_table_recurrence,
    RecordKind, RecordTable, BRUTE_FORCE_CAP, TABLE_CAP,
};
use crate::decomposition::{
    count_attachments_forest, count_attachments_tree, count_bonsai_fillings, count_forests_of_type,
    count_restricted_flags, count_trees_of_type, decompose, reconstruct, restricted_flag_of,
};
use crate::prufer::iter_rooted_forests;
use crate::series::{
    cayley_tree, fixed_n_polynomial, forest_record_series_closed, forest_record_series_exp, per_k_tree_series,
    pde_holds, record_table_from_series, tree_record_series, tree_record_series_integral,
    unrooted_tree_series_check, TruncatedBivariateEGF, SERIES_CAP,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Tables,
    Series,
    Bijection,
    Identities,
    All,
}

/// Largest `n` the bijection suite enumerates.
pub const BIJECTION_CAP: usize = BRUTE_FORCE_CAP;

/// Rows 1..=8 of the tree record numbers, `k = 1..=n`.
pub const TREE_REFERENCE: [&[u64]; 8] = [
    &[1],
    &[1, 1],
    &[3, 4, 2],
    &[16, 24, 18, 6],
    &[125, 200, 180, 96, 24],
    &[1296, 2160, 2160, 1440, 600, 120],
    &[16807, 28812, 30870, 23520, 12600, 4320, 720],
    &[262144, 458752, 516096, 430080, 268800, 120960, 35280, 5040],
];

/// Rows 1..=8 of the forest record numbers, `k = 1..=n`.
pub const FOREST_REFERENCE: [&[u64]; 8] = [
    &[1],
    &[1, 2],
    &[3, 7, 6],
    &[16, 39, 46, 24],
    &[125, 310, 415, 326, 120],
    &[1296, 3240, 4635, 4360, 2556, 720],
    &[16807, 42189, 62825, 65415, 47656, 22212, 5040],
    &[262144, 659456, 1008448, 1120385, 927388, 551852, 212976, 40320],
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Mismatches, empty on success.
    pub diffs: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>, diffs: Vec<String>) -> Self {
        Check {
            name: name.into(),
            passed: diffs.is_empty(),
            diffs,
        }
    }

    fn flag(name: impl Into<String>, ok: bool, failure: impl FnOnce() -> String) -> Self {
        let diffs = if ok { Vec::new() } else { vec![failure()] };
        Check::new(name, diffs)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn extend(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
    }

    /// One `PASS`/`FAIL` line per check, followed by up to 20 diffs for each
    /// failure.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(out, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            for d in c.diffs.iter().take(20) {
                let _ = writeln!(out, "  {d}");
            }
            if c.diffs.len() > 20 {
                let _ = writeln!(out, "  ... {} more", c.diffs.len() - 20);
            }
        }
        let failed = self.failures().count();
        let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        out
    }
}

pub fn run_suite(suite: Suite, n_max: usize) -> Result<VerifyReport> {
    match suite {
        Suite::Tables => tables_suite(n_max),
        Suite::Series => series_suite(n_max),
        Suite::Bijection => bijection_suite(n_max),
        Suite::Identities => identities_suite(n_max),
        Suite::All => {
            let mut report = tables_suite(n_max)?;
            report.extend(series_suite(n_max.min(SERIES_CAP))?);
            report.extend(bijection_suite(n_max.min(BIJECTION_CAP))?);
            report.extend(identities_suite(n_max)?);
            Ok(report)
        }
    }
}

fn check_cap(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        return Err(Error::CapExceeded { what, value, cap });
    }
    Ok(())
}

/// Entry-by-entry comparison over `1 <= n <= n_max`, `0 <= k <= n`.
pub fn table_diffs(left: &RecordTable, right: &RecordTable, n_max: usize) -> Vec<String> {
    let mut diffs = Vec::new();
    for n in 0..=n_max {
        for k in 0..=n + 1 {
            let (a, b) = (left.get(n, k), right.get(n, k));
            if a != b {
                diffs.push(format!("({n},{k}): {a} != {b}"));
            }
        }
    }
    diffs
}

fn reference_diffs(table: &RecordTable, reference: &[&[u64]; 8]) -> Vec<String> {
    let mut diffs = Vec::new();
    for (i, row) in reference.iter().enumerate().take(table.n_max()) {
        let n = i + 1;
        for k in 0..=n + 1 {
            let expected = if k >= 1 && k <= n { BigUint::from(row[k - 1]) } else { BigUint::zero() };
            let got = table.get(n, k);
            if got != expected {
                diffs.push(format!("({n},{k}): {got} != reference {expected}"));
            }
        }
    }
    diffs
}

/// Closed form, recurrence, series extraction and brute force, for both
/// kinds, against each other and against the reference rows.
pub fn tables_suite(n_max: usize) -> Result<VerifyReport> {
    check_cap("tables n_max", n_max, TABLE_CAP)?;
    let mut report = VerifyReport::default();
    for kind in [RecordKind::Tree, RecordKind::Forest] {
        let name = kind.name();
        let (formula, recurrence) = match kind {
            RecordKind::Tree => (tree_record_table_formula(n_max), tree_record_table_recurrence(n_max)),
            RecordKind::Forest => (forest_record_table_formula(n_max), forest_record_table_recurrence(n_max)),
        };
        report.checks.push(Check::new(
            format!("{name}: formula = recurrence, n <= {n_max}"),
            table_diffs(&formula, &recurrence, n_max),
        ));
        let series_n = n_max.min(SERIES_CAP);
        let series = record_table_from_series(kind, series_n)?;
        report.checks.push(Check::new(
            format!("{name}: formula = series, n <= {series_n}"),
            table_diffs(&formula, &series, series_n),
        ));
        let brute_n = n_max.min(BRUTE_FORCE_CAP);
        let brute = brute_force_table(kind, brute_n)?;
        report.checks.push(Check::new(
            format!("{name}: formula = brute force, n <= {brute_n}"),
            table_diffs(&formula, &brute, brute_n),
        ));
        let reference = match kind {
            RecordKind::Tree => &TREE_REFERENCE,
            RecordKind::Forest => &FOREST_REFERENCE,
        };
        for (label, table) in [("formula", &formula), ("recurrence", &recurrence), ("series", &series), ("brute force", &brute)] {
            let n = table.n_max().min(8);
            report.checks.push(Check::new(
                format!("{name}: {label} = reference rows, n <= {n}"),
                reference_diffs(table, reference),
            ));
        }
    }
    Ok(report)
}

fn series_diff(name: &str, left: &TruncatedBivariateEGF, right: &TruncatedBivariateEGF) -> Check {
    let order = left.order().min(right.order());
    let mut diffs = Vec::new();
    for n in 0..=order {
        for k in 0..=n + 1 {
            let (a, b) = (left.coeff(n, k), right.coeff(n, k));
            if a != b {
                diffs.push(format!("[z^{n} t^{k}]: {a} != {b}"));
            }
        }
    }
    Check::new(name, diffs)
}

/// Functional equations of the tree function and the record functions, all
/// exact up to `order`.
pub fn series_suite(order: usize) -> Result<VerifyReport> {
    check_cap("series order", order, SERIES_CAP)?;
    let mut report = VerifyReport::default();
    let tree = cayley_tree(order);
    let z_exp_tree = tree.exp().map_err(|e| Error::Series(e.to_string()))?.mul_z();
    report.checks.push(series_diff("T = z exp(T)", &tree, &z_exp_tree));

    let rooted = tree_record_series(order);
    let integral = tree_record_series_integral(order);
    report
        .checks
        .push(series_diff("record tree function: log form = integral form", &rooted, &integral));

    let via_exp = forest_record_series_exp(order);
    let closed = forest_record_series_closed(order);
    report
        .checks
        .push(series_diff("forest record function: exp(tree) = closed form", &via_exp, &closed));

    report.checks.push(Check::flag("cleared differential equation", pde_holds(&via_exp, &tree), || {
        format!("z R' != t T R + z R' t T below order {order}")
    }));

    let mut diffs = Vec::new();
    for k in 1..=order.min(6) {
        let column = per_k_tree_series(order, k).column(0);
        if column != rooted.column(k) {
            diffs.push(format!("column t^{k} differs from T^k/k - T^(k+1)/(k+1)"));
        }
    }
    report.checks.push(Check::new("per-k columns, k <= 6", diffs));

    let mut diffs = Vec::new();
    for n in 1..=order.max(50).min(SERIES_CAP) {
        let exact: Vec<BigRational> = tree_record_row(n).iter().map(to_rational).collect();
        let poly = fixed_n_polynomial(n);
        for k in 0..=n {
            let scaled = poly.get(k).cloned().unwrap_or_else(BigRational::zero) * to_rational(&factorial(k));
            if scaled != exact[k] {
                diffs.push(format!("n = {n}, k = {k}: {scaled} != {}", exact[k]));
            }
            if n <= order && rooted.coeff(n, k) != exact[k] {
                diffs.push(format!("series row n = {n}, k = {k}: {} != {}", rooted.coeff(n, k), exact[k]));
            }
        }
    }
    report
        .checks
        .push(Check::new("fixed-n polynomial (t/n)(n+t)^(n-1) matches rows", diffs));

    report.checks.push(Check::flag(
        "unrooted trees: int T/s = T - T^2/2",
        unrooted_tree_series_check(order),
        || "coefficients differ".into(),
    ));
    Ok(report)
}

/// Every ◦-rooted tree on `0..=n`, `n <= n_max`: decompose, rebuild, and
/// tally types against the type-indexed formulas.
pub fn bijection_suite(n_max: usize) -> Result<VerifyReport> {
    check_cap("bijection n_max", n_max, BIJECTION_CAP)?;
    let mut report = VerifyReport::default();
    let mut round_trip = Vec::new();
    let mut types = Vec::new();
    let mut flags = Vec::new();
    let mut total = 0u64;
    for n in 1..=n_max {
        let mut forests: BTreeMap<Composition, u64> = BTreeMap::new();
        let mut trees: BTreeMap<Composition, u64> = BTreeMap::new();
        let mut flag_types: BTreeMap<Composition, u64> = BTreeMap::new();
        for tree in iter_rooted_forests(n) {
            total += 1;
            let d = decompose(&tree)?;
            if reconstruct(&d) != tree {
                round_trip.push(format!("n = {n}: {}", serde_json::to_string(&tree.to_json())?));
            }
            let t = d.bonsai_type();
            if t.total() != n || tree.record_count() != t.len() {
                round_trip.push(format!("n = {n}: type {t} inconsistent with the tree"));
            }
            if d.is_planted() {
                *trees.entry(t.clone()).or_default() += 1;
            }
            if restricted_flag_of(&d).flag_type() != t {
                flags.push(format!("n = {n}: flag type differs from bonsai type {t}"));
            }
            *flag_types.entry(t.clone()).or_default() += 1;
            *forests.entry(t).or_default() += 1;
        }
        for t in all_compositions(n) {
            let got_f = BigUint::from(forests.get(&t).copied().unwrap_or(0));
            let got_t = BigUint::from(trees.get(&t).copied().unwrap_or(0));
            let want_f = count_forests_of_type(&t)?;
            let want_t = count_trees_of_type(&t)?;
            if got_f != want_f {
                types.push(format!("forests of type {t}: counted {got_f}, formula {want_f}"));
            }
            if got_t != want_t {
                types.push(format!("trees of type {t}: counted {got_t}, formula {want_t}"));
            }
        }
    }
    report.checks.push(Check::new(
        format!("decompose/reconstruct round trip over {total} forests, n <= {n_max}"),
        round_trip,
    ));
    report.checks.push(Check::new("restricted flag type = bonsai type", flags));
    report
        .checks
        .push(Check::new(format!("type histograms = type formulas, n <= {n_max}"), types));
    Ok(report)
}

/// Algebraic identities between the formulas, no enumeration of trees.
pub fn identities_suite(n_max: usize) -> Result<VerifyReport> {
    check_cap("identities n_max", n_max, TABLE_CAP)?;
    let mut report = VerifyReport::default();
    let trees = tree_record_table_formula(n_max);
    let forests = forest_record_table_formula(n_max);

    let type_n = n_max.min(12);
    let mut product_diffs = Vec::new();
    let mut sum_diffs = Vec::new();
    for n in 1..=type_n {
        let mut tree_sums = vec![BigUint::zero(); n + 1];
        let mut forest_sums = vec![BigUint::zero(); n + 1];
        for t in all_compositions(n) {
            let base = count_restricted_flags(&t)? * count_bonsai_fillings(&t);
            let tree_product = &base * count_attachments_tree(&t);
            let forest_product = &base * count_attachments_forest(&t);
            let (want_t, want_f) = (count_trees_of_type(&t)?, count_forests_of_type(&t)?);
            if tree_product != want_t {
                product_diffs.push(format!("trees of type {t}: {tree_product} != {want_t}"));
            }
            if forest_product != want_f {
                product_diffs.push(format!("forests of type {t}: {forest_product} != {want_f}"));
            }
            tree_sums[t.len()] += want_t;
            forest_sums[t.len()] += want_f;
        }
        for k in 1..=n {
            if tree_sums[k] != trees.get(n, k) {
                sum_diffs.push(format!("tree ({n},{k}): {} != {}", tree_sums[k], trees.get(n, k)));
            }
            if forest_sums[k] != forests.get(n, k) {
                sum_diffs.push(format!("forest ({n},{k}): {} != {}", forest_sums[k], forests.get(n, k)));
            }
        }
    }
    report.checks.push(Check::new(
        format!("flags x fillings x attachments = type counts, n <= {type_n}"),
        product_diffs,
    ));
    report
        .checks
        .push(Check::new(format!("type sums = table rows, n <= {type_n}"), sum_diffs));

    let mut diffs = Vec::new();
    for n in 1..=n_max {
        let tree_sum: BigUint = trees.row(n).iter().sum();
        let forest_sum: BigUint = forests.row(n).iter().sum();
        if tree_sum != pow(n, n - 1) {
            diffs.push(format!("sum_k R•({n},k) = {tree_sum}"));
        }
        if forest_sum != pow(n + 1, n - 1) {
            diffs.push(format!("sum_k R({n},k) = {forest_sum}"));
        }
    }
    report
        .checks
        .push(Check::new(format!("row sums n^(n-1) and (n+1)^(n-1), n <= {n_max}"), diffs));

    let mut diffs = Vec::new();
    for n in 1..=n_max.min(60) {
        for k in 1..=n {
            let via_trees = forest_from_tree_numbers(n, k)?;
            if via_trees != forests.get(n, k) {
                diffs.push(format!("({n},{k}): {via_trees} != {}", forests.get(n, k)));
            }
        }
    }
    report.checks.push(Check::new("forest numbers from tree numbers", diffs));

    let mut diffs = Vec::new();
    for n in 1..=n_max {
        if trees.get(n, 1) != crate::arith::cayley_unrooted(n) {
            diffs.push(format!("R•({n},1) = {}", trees.get(n, 1)));
        }
        if trees.get(n, n) != factorial(n - 1) || forests.get(n, n) != factorial(n) {
            diffs.push(format!("top entries of row {n}"));
        }
    }
    report
        .checks
        .push(Check::new("R•(n,1) = n^(n-2), R•(n,n) = (n-1)!, R(n,n) = n!", diffs));

    let mut diffs = Vec::new();
    for n in 1..=n_max.min(30) {
        let direct: BigUint = (1..=n).map(|k| cayley_forest_count(n, k)).sum();
        if direct != pow(n + 1, n - 1) {
            diffs.push(format!("n = {n}: {direct}"));
        }
    }
    report
        .checks
        .push(Check::new("rooted forests by component count sum to (n+1)^(n-1)", diffs));

    let one = BigUint::one();
    report.checks.push(Check::flag("R(0,0) = 1", forests.get(0, 0) == one, || {
        format!("R(0,0) = {}", forests.get(0, 0))
    }));
    Ok(report)
}
