//! Tree and forest record numbers.
//!
//! `R•(n, k)` counts rooted trees on `1..=n` with `k` records and `R(n, k)`
//! rooted forests on `1..=n` with `k` records. Every evaluator here is exact;
//! out-of-range `(n, k)` yields 0, matching the zero padding of the tables.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{self, binomial, cayley_unrooted, expect_natural, falling, pow, pow_signed, to_rational};
use crate::prufer::{iter_rooted_forests, iter_rooted_trees};
use crate::{Error, Result};

/// Largest `n` the brute-force oracles will enumerate.
pub const BRUTE_FORCE_CAP: usize = 8;
/// Largest `n` for exact tables.
pub const TABLE_CAP: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Tree,
    Forest,
}

impl RecordKind {
    pub fn name(self) -> &'static str {
        match self {
            RecordKind::Tree => "tree",
            RecordKind::Forest => "forest",
        }
    }
}

/// How a [`RecordTable`] is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Method {
    /// Closed forms (falling factorials for trees, Stirling numbers for forests).
    Formula,
    Recurrence,
    /// Coefficient extraction from the generating functions.
    Series,
    /// Histogram over the exhaustive enumeration.
    Brute,
}

/// Triangle of record numbers, `entries[n][k]` for `0 <= k <= n <= n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecordTable {
    kind: RecordKind,
    rows: Vec<Vec<BigUint>>,
}

impl RecordTable {
    /// `rows[n]` must have length `n + 1`.
    pub fn from_rows(kind: RecordKind, rows: Vec<Vec<BigUint>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidArgument("a table needs row 0".into()));
        }
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidArgument(format!("row {n} has {} entries", row.len())));
            }
        }
        Ok(RecordTable { kind, rows })
    }

    pub fn kind(&self) -> RecordKind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Row `n` indexed by `k = 0..=n`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    /// Line `n` (for `n >= 1`) lists `R(n, 1), ..., R(n, n)`, comma separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows[1..] {
            let line: Vec<String> = row[1..].iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }

    /// OEIS b-file reading the triangle by rows over `1 <= k <= n`, starting
    /// at index 1 for trees; forests prepend `R(0,0)` at index 0.
    pub fn to_bfile(&self) -> String {
        let mut out = String::new();
        let mut index = match self.kind {
            RecordKind::Tree => 1,
            RecordKind::Forest => {
                writeln!(out, "0 {}", self.rows[0][0]).unwrap();
                1
            }
        };
        for row in &self.rows[1..] {
            for v in &row[1..] {
                writeln!(out, "{index} {v}").unwrap();
                index += 1;
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(json_integer).collect()))
            .collect();
        json!({ "kind": self.kind.name(), "n_max": self.n_max(), "rows": rows })
    }
}

/// An exact integer as a JSON number.
pub fn json_integer(x: &BigUint) -> Value {
    Value::Number(x.to_string().parse().expect("decimal integers are JSON numbers"))
}

/// Unsigned Stirling numbers of the first kind `c(m, j)` for `m <= m_max`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTable {
    pub fn new(m_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for m in 1..=m_max {
            let prev = &rows[m - 1];
            let row = (0..=m)
                .map(|j| {
                    let shifted = if j >= 1 { prev[j - 1].clone() } else { BigUint::zero() };
                    let stay = prev.get(j).map(|c| c * (m - 1)).unwrap_or_default();
                    shifted + stay
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { rows }
    }

    pub fn m_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, m: usize, j: usize) -> BigUint {
        assert!(m <= self.m_max(), "Stirling table only reaches m = {}", self.m_max());
        self.rows[m].get(j).cloned().unwrap_or_default()
    }

    pub fn row(&self, m: usize) -> &[BigUint] {
        &self.rows[m]
    }
}

pub fn stirling_first_unsigned(m: usize, j: usize) -> BigUint {
    if j > m {
        return BigUint::zero();
    }
    StirlingTable::new(m).get(m, j)
}

/// `R•(n, k) = k (n-1)(n-2)...(n-k+1) n^(n-k-1)`.
pub fn tree_record_number(n: usize, k: usize) -> BigUint {
    if n == 0 || k == 0 || k > n {
        return BigUint::zero();
    }
    let exponent = n as i64 - k as i64 - 1;
    let value = to_rational(&(falling(n - 1, k - 1) * k)) * pow_signed(n, exponent);
    expect_natural(&value, format!("R•({n},{k})")).expect("closed form is integral")
}

/// Row `n` of the tree table, `k = 0..=n`, by stepping the closed form with
/// exact divisions: `R•(n,k) = R•(n,k-1) (n-k+1) k / ((k-1) n)`.
pub fn tree_record_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::zero(); n + 1];
    if n == 0 {
        return row;
    }
    row[1] = cayley_unrooted(n);
    for k in 2..=n {
        let numerator = &row[k - 1] * ((n - k + 1) * k);
        let denominator = BigUint::from((k - 1) * n);
        debug_assert!((&numerator % &denominator).is_zero());
        row[k] = numerator / denominator;
    }
    row
}

/// Alternating Stirling sum
/// `R(n,k) = sum_{m=k+1}^{n+1} (-1)^(m+k-1) C(n, m-1) m (n+1)^(n-m) c(m, m-k)`.
pub fn forest_record_number(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    forest_record_number_with(n, k, &StirlingTable::new(n + 1))
}

pub fn forest_record_number_with(n: usize, k: usize, stirling: &StirlingTable) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut integral = BigInt::zero();
    for m in k + 1..=n {
        let term = BigInt::from(binomial(n, m - 1) * m * pow(n + 1, n - m) * stirling.get(m, m - k));
        if (m + k - 1) % 2 == 0 {
            integral += term;
        } else {
            integral -= term;
        }
    }
    // m = n + 1: the factor m (n+1)^(n-m) = (n+1) (n+1)^(-1) is kept rational
    let m = n + 1;
    let weight = to_rational(&BigUint::from(m)) * pow_signed(n + 1, n as i64 - m as i64);
    let mut last = weight * to_rational(&(binomial(n, m - 1) * stirling.get(m, m - k)));
    if (m + k - 1) % 2 == 1 {
        last = -last;
    }
    let value = BigRational::from_integer(integral) + last;
    expect_natural(&value, format!("R({n},{k})")).expect("Stirling formula is integral")
}

pub fn forest_record_row(n: usize, stirling: &StirlingTable) -> Vec<BigUint> {
    (0..=n).map(|k| forest_record_number_with(n, k, stirling)).collect()
}

/// `R(n,k) = sum_{m=k+1}^{n+1} (-1)^(m+k-1) c(m, m-k) R•(n+1, m) / (m-1)!`.
pub fn forest_from_tree_numbers(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Ok(BigUint::zero());
    }
    let stirling = StirlingTable::new(n + 1);
    let tree_row = tree_record_row(n + 1);
    forest_from_tree_row(n, k, &stirling, &tree_row)
}

fn forest_from_tree_row(n: usize, k: usize, stirling: &StirlingTable, tree_row: &[BigUint]) -> Result<BigUint> {
    let mut sum = BigRational::zero();
    for m in k + 1..=n + 1 {
        let term = to_rational(&(stirling.get(m, m - k) * &tree_row[m])) / to_rational(&arith::factorial(m - 1));
        if (m + k - 1) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    expect_natural(&sum, format!("R({n},{k}) from tree numbers"))
}

/// Rooted forests on `1..=n` with exactly `k` components: `C(n,k) k n^(n-k-1)`.
pub fn cayley_forest_count(n: usize, k: usize) -> BigUint {
    if k > n || (k == 0 && n > 0) {
        return BigUint::zero();
    }
    if n == 0 {
        return BigUint::one();
    }
    let value = to_rational(&(binomial(n, k) * k)) * pow_signed(n, n as i64 - k as i64 - 1);
    expect_natural(&value, format!("forests({n},{k})")).expect("Cayley's formula is integral")
}

pub fn tree_record_table_formula(n_max: usize) -> RecordTable {
    let rows = (0..=n_max).map(tree_record_row).collect();
    RecordTable::from_rows(RecordKind::Tree, rows).expect("rows are triangular")
}

pub fn forest_record_table_formula(n_max: usize) -> RecordTable {
    let stirling = StirlingTable::new(n_max + 1);
    let rows = (0..=n_max).map(|n| forest_record_row(n, &stirling)).collect();
    RecordTable::from_rows(RecordKind::Forest, rows).expect("rows are triangular")
}

/// Both recurrences remove the largest label `n`: what remains is a tree on
/// `i` labels with `k - 1` records, a bonsai on the other `n - i` labels,
/// and a parent for `n` (`i` choices for trees, `i + 1` for forests).
fn record_table_recurrence(kind: RecordKind, n_max: usize) -> RecordTable {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![match kind {
        RecordKind::Tree => BigUint::zero(),
        RecordKind::Forest => BigUint::one(),
    }]);
    for n in 1..=n_max {
        let weights: Vec<BigUint> = (0..n)
            .map(|i| {
                let parents = match kind {
                    RecordKind::Tree => i,
                    RecordKind::Forest => i + 1,
                };
                binomial(n - 1, i) * cayley_unrooted(n - i) * parents
            })
            .collect();
        let mut row = vec![BigUint::zero(); n + 1];
        for (k, cell) in row.iter_mut().enumerate().skip(1) {
            if kind == RecordKind::Tree && k == 1 {
                *cell = cayley_unrooted(n);
                continue;
            }
            *cell = (k - 1..n)
                .filter(|&i| !rows[i][k - 1].is_zero())
                .map(|i| &weights[i] * &rows[i][k - 1])
                .sum();
        }
        rows.push(row);
    }
    RecordTable::from_rows(kind, rows).expect("rows are triangular")
}

pub fn tree_record_table_recurrence(n_max: usize) -> RecordTable {
    record_table_recurrence(RecordKind::Tree, n_max)
}

pub fn forest_record_table_recurrence(n_max: usize) -> RecordTable {
    record_table_recurrence(RecordKind::Forest, n_max)
}

fn check_brute_cap(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_CAP {
        return Err(Error::CapExceeded {
            what: "brute-force n",
            value: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    Ok(())
}

fn histogram(n: usize, counts: impl Iterator<Item = usize>) -> Vec<BigUint> {
    let mut hist = vec![0u64; n + 1];
    for k in counts {
        hist[k] += 1;
    }
    hist.into_iter().map(BigUint::from).collect()
}

/// Record-count histogram over all `n^(n-1)` rooted trees on `1..=n`.
pub fn brute_force_tree_row(n: usize) -> Result<Vec<BigUint>> {
    check_brute_cap(n)?;
    Ok(histogram(n, iter_rooted_trees(n).map(|t| t.record_count())))
}

/// Record-count histogram over all `(n+1)^(n-1)` rooted forests on `1..=n`.
pub fn brute_force_forest_row(n: usize) -> Result<Vec<BigUint>> {
    check_brute_cap(n)?;
    Ok(histogram(n, iter_rooted_forests(n).map(|t| t.record_count())))
}

pub fn brute_force_table(kind: RecordKind, n_max: usize) -> Result<RecordTable> {
    check_brute_cap(n_max)?;
    let rows = (0..=n_max)
        .map(|n| match kind {
            RecordKind::Tree => brute_force_tree_row(n),
            RecordKind::Forest => brute_force_forest_row(n),
        })
        .collect::<Result<_>>()?;
    RecordTable::from_rows(kind, rows)
}

/// Computes a table with the requested method, enforcing the caps.
pub fn record_table(kind: RecordKind, n_max: usize, method: Method) -> Result<RecordTable> {
    if n_max > TABLE_CAP {
        return Err(Error::CapExceeded {
            what: "table n_max",
            value: n_max,
            cap: TABLE_CAP,
        });
    }
    Ok(match (method, kind) {
        (Method::Formula, RecordKind::Tree) => tree_record_table_formula(n_max),
        (Method::Formula, RecordKind::Forest) => forest_record_table_formula(n_max),
        (Method::Recurrence, kind) => record_table_recurrence(kind, n_max),
        (Method::Series, kind) => crate::series::record_table_from_series(kind, n_max)?,
        (Method::Brute, kind) => brute_force_table(kind, n_max)?,
    })
}
