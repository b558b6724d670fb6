//! Shape and asymptotics of the record numbers, plus the queueing and
//! record-sum statistics connected to them.
//!
//! Floating point is confined to [`borel_tanner_pmf`],
//! [`asymptotic_log_ratio`] and [`peak_fit`]; every other routine is exact.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, cayley_unrooted, ln_big};
use crate::counting::{forest_record_table_recurrence, tree_record_row, RecordTable, BRUTE_FORCE_CAP};
use crate::prufer::iter_rooted_trees;
use crate::{Error, Result};

/// `a_k^2 >= a_{k-1} a_{k+1}` at every interior index of the positive
/// support. Leading and trailing zeros are ignored; an interior zero breaks
/// log-concavity.
pub fn is_log_concave(seq: &[BigUint]) -> bool {
    let Some(first) = seq.iter().position(|x| !x.is_zero()) else {
        return true;
    };
    let last = seq.iter().rposition(|x| !x.is_zero()).expect("nonempty support");
    let support = &seq[first..=last];
    support
        .windows(3)
        .all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}

/// Nondecreasing then nonincreasing.
pub fn is_unimodal<T: PartialOrd>(seq: &[T]) -> bool {
    let mut descending = false;
    for w in seq.windows(2) {
        if w[1] < w[0] {
            descending = true;
        } else if descending && w[1] > w[0] {
            return false;
        }
    }
    true
}

/// Greatest index attaining the maximum.
pub fn greatest_argmax<T: Ord>(seq: &[T]) -> Option<usize> {
    let max = seq.iter().max()?;
    seq.iter().rposition(|x| x == max)
}

/// `floor((1 + sqrt(1 + 4n)) / 2)`, the greatest index maximizing `R•(n, ·)`.
pub fn tree_peak_index(n: usize) -> Result<usize> {
    if n < 1 {
        return Err(Error::InvalidArgument("tree peaks are defined for n >= 1".into()));
    }
    Ok((1 + (1 + 4 * n).sqrt()) / 2)
}

/// Greatest `k` maximizing `R(n, k)`, from an exact forest table.
pub fn forest_peak_index(table: &RecordTable, n: usize) -> Result<usize> {
    if n < 1 || n > table.n_max() {
        return Err(Error::InvalidArgument(format!("n = {n} is outside 1..={}", table.n_max())));
    }
    Ok(greatest_argmax(table.row(n)).expect("nonempty row"))
}

/// Greatest `k` maximizing the exact tree row `R•(n, ·)`.
pub fn tree_row_argmax(n: usize) -> usize {
    greatest_argmax(&tree_record_row(n)).expect("nonempty row")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeakFitResult {
    pub slope: f64,
    pub intercept: f64,
    /// `(n, k*(n))` pairs the fit was computed from.
    pub samples: Vec<(usize, usize)>,
}

/// Ordinary least squares of `k*(n)^2` against `n` over `samples`.
pub fn fit_squared_peaks(samples: Vec<(usize, usize)>) -> Result<PeakFitResult> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument("a fit needs at least two samples".into()));
    }
    let m = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|&(n, _)| n as f64).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, k)| (k * k) as f64).collect();
    let mean_x = xs.iter().sum::<f64>() / m;
    let mean_y = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("all samples share the same n".into()));
    }
    let slope = sxy / sxx;
    Ok(PeakFitResult {
        slope,
        intercept: mean_y - slope * mean_x,
        samples,
    })
}

/// Forest peak locations for `n_min..=n_max` and the least-squares line
/// through their squares.
pub fn peak_fit(n_min: usize, n_max: usize) -> Result<PeakFitResult> {
    if n_min < 1 || n_max < n_min {
        return Err(Error::InvalidArgument(format!("bad range {n_min}..={n_max}")));
    }
    if n_max > crate::counting::TABLE_CAP {
        return Err(Error::CapExceeded {
            what: "peak fit n_max",
            value: n_max,
            cap: crate::counting::TABLE_CAP,
        });
    }
    let table = forest_record_table_recurrence(n_max);
    let samples = (n_min..=n_max)
        .map(|n| forest_peak_index(&table, n).map(|k| (n, k)))
        .collect::<Result<_>>()?;
    fit_squared_peaks(samples)
}

/// `ln R•(n,k) - ln(k n^(n-2)) = sum_{i<k} ln(1 - i/n)`.
pub fn asymptotic_log_ratio(n: usize, k: usize) -> Result<f64> {
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let nf = n as f64;
    Ok((1..k).map(|i| (-(i as f64) / nf).ln_1p()).sum())
}

/// Same quantity computed from the exact integers, for cross-checking at
/// moderate `n`.
pub fn asymptotic_log_ratio_exact(n: usize, k: usize) -> f64 {
    let value = crate::counting::tree_record_number(n, k);
    let reference = crate::arith::pow(n, n.saturating_sub(2)) * k;
    ln_big(&value) - ln_big(&reference)
}

/// Probability that a busy period started by `k` customers serves exactly
/// `n` customers at traffic intensity `rho`:
/// `R•(n,k) / (n-1)! e^(-rho n) rho^(n-k) = k n^(n-k-1) rho^(n-k) e^(-rho n) / (n-k)!`.
pub fn borel_tanner_pmf(k: usize, rho: f64, n: usize) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidArgument(format!("rho = {rho} is outside (0, 1)")));
    }
    if k < 1 || n < k {
        return Err(Error::InvalidArgument(format!("need n >= k >= 1, got n = {n}, k = {k}")));
    }
    let (nf, kf) = (n as f64, k as f64);
    let ln_p = kf.ln() + (nf - kf - 1.0) * nf.ln() + (nf - kf) * rho.ln()
        - rho * nf
        - statrs::function::gamma::ln_gamma(nf - kf + 1.0);
    Ok(ln_p.exp())
}

/// `1 - sum_{n=k}^{n_max} pmf(k, rho, n)`.
pub fn borel_tanner_residual(k: usize, rho: f64, n_max: usize) -> Result<f64> {
    let mut total = 0.0;
    for n in k..=n_max {
        total += borel_tanner_pmf(k, rho, n)?;
    }
    Ok(1.0 - total)
}

/// Coefficients (by power of `q`) of `q (q^2 + 1) (q^3 + 2) ... (q^n + n - 1)`.
pub fn kortchemski_poly(n: usize) -> Result<Vec<BigUint>> {
    if n < 1 {
        return Err(Error::InvalidArgument("the record-sum polynomial needs n >= 1".into()));
    }
    let mut poly = vec![BigUint::zero(), BigUint::one()];
    for i in 2..=n {
        let mut next = vec![BigUint::zero(); poly.len() + i];
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[d + i] += c;
            next[d] += c * (i - 1);
        }
        poly = next;
    }
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    Ok(poly)
}

/// Sum over all permutations of `1..=n` of `q^(sum of record positions)`,
/// records being left-to-right maxima and positions counted from 1.
pub fn permutation_record_position_poly(n: usize) -> Result<Vec<BigUint>> {
    if n < 1 {
        return Err(Error::InvalidArgument("permutations need n >= 1".into()));
    }
    if n > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            what: "permutation n",
            value: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut counts = vec![0u64; n * (n + 1) / 2 + 1];
    for perm in (1..=n).permutations(n) {
        let mut best = 0;
        let mut sum = 0;
        for (i, &x) in perm.iter().enumerate() {
            if x > best {
                best = x;
                sum += i + 1;
            }
        }
        counts[sum] += 1;
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    Ok(counts.into_iter().map(BigUint::from).collect())
}

/// Histogram of the sum of record depths over all rooted trees on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrecPolynomial {
    pub n: usize,
    /// depth sum -> number of trees
    pub coeffs: BTreeMap<usize, u64>,
}

impl SrecPolynomial {
    pub fn coeff(&self, s: usize) -> u64 {
        self.coeffs.get(&s).copied().unwrap_or(0)
    }

    /// Dense coefficient list from `q^0` to the highest power.
    pub fn dense(&self) -> Vec<u64> {
        let top = self.coeffs.keys().next_back().copied().unwrap_or(0);
        (0..=top).map(|s| self.coeff(s)).collect()
    }

    pub fn total(&self) -> u64 {
        self.coeffs.values().sum()
    }
}

/// Sum of the depths (measured from the tree's own root) of its records.
pub fn srec(tree: &crate::tree::RootedTree) -> usize {
    let depths = tree.depths();
    tree.records().into_iter().map(|r| depths[r]).sum()
}

pub fn srec_polynomial(n: usize) -> Result<SrecPolynomial> {
    if n > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            what: "srec n",
            value: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut coeffs = BTreeMap::new();
    for tree in iter_rooted_trees(n) {
        *coeffs.entry(srec(&tree)).or_insert(0) += 1;
    }
    Ok(SrecPolynomial { n, coeffs })
}

/// Unrooted forests on `1..=n` with exactly two components:
/// `(1/2) sum_{a+b=n, a,b>=1} C(n, a) a^(a-2) b^(b-2)`.
pub fn two_component_forests(n: usize) -> BigUint {
    let twice: BigUint = (1..n)
        .map(|a| binomial(n, a) * cayley_unrooted(a) * cayley_unrooted(n - a))
        .sum();
    twice / 2u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrecColumnRow {
    pub n: usize,
    pub q1: u64,
    /// Coefficient of the second nonzero power of `q`, if any.
    pub second_nonzero: Option<(usize, u64)>,
    pub two_component_forests: String,
    pub q1_matches: bool,
    pub second_nonzero_matches: bool,
}

/// Compares candidate "second columns" of the srec table with the number of
/// two-component unrooted forests. Purely a report: nothing is asserted.
pub fn srec_second_column_check(n_max: usize) -> Result<Vec<SrecColumnRow>> {
    (1..=n_max)
        .map(|n| {
            let poly = srec_polynomial(n)?;
            let forests = two_component_forests(n);
            let second_nonzero = poly.coeffs.iter().filter(|(_, &c)| c != 0).nth(1).map(|(&s, &c)| (s, c));
            let q1 = poly.coeff(1);
            Ok(SrecColumnRow {
                n,
                q1,
                second_nonzero,
                q1_matches: BigUint::from(q1) == forests,
                second_nonzero_matches: second_nonzero.is_some_and(|(_, c)| BigUint::from(c) == forests),
                two_component_forests: forests.to_string(),
            })
        })
        .collect()
}

pub fn format_srec_report(rows: &[SrecColumnRow]) -> String {
    let mut out = String::from("n,q1,second_nonzero_power,second_nonzero_value,two_component_forests,q1_match,second_match\n");
    for r in rows {
        let (power, value) = match r.second_nonzero {
            Some((s, c)) => (s.to_string(), c.to_string()),
            None => (String::new(), String::new()),
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.n, r.q1, power, value, r.two_component_forests, r.q1_matches, r.second_nonzero_matches
        ));
    }
    out
}

/// First row (in increasing `n`) that is not log-concave over `k >= 1`.
pub fn first_non_log_concave_row<'a>(rows: impl IntoIterator<Item = (usize, &'a [BigUint])>) -> Option<usize> {
    rows.into_iter()
        .find(|(_, row)| !is_log_concave(&row[1.min(row.len())..]))
        .map(|(n, _)| n)
}

pub fn forest_log_concavity_sweep(n_max: usize) -> Result<Option<usize>> {
    if n_max > crate::counting::TABLE_CAP {
        return Err(Error::CapExceeded {
            what: "sweep n_max",
            value: n_max,
            cap: crate::counting::TABLE_CAP,
        });
    }
    let table = forest_record_table_recurrence(n_max);
    Ok(first_non_log_concave_row(
        table.rows().iter().enumerate().skip(1).map(|(n, r)| (n, r.as_slice())),
    ))
}

pub fn tree_log_concavity_sweep(n_max: usize) -> Option<usize> {
    (1..=n_max).find(|&n| !is_log_concave(&tree_record_row(n)[1..]))
}
