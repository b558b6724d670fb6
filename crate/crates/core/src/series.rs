//! Truncated bivariate exponential generating functions over exact rationals.
//!
//! A series `F(z, t) = sum_n sum_k a[n][k] z^n t^k / n!` is stored by its
//! scaled coefficients `a[n][k] = n! [z^n t^k] F` for `n <= order`; each row
//! is a polynomial in `t`. Every operation is exact below `order + 1`, and
//! operations that lose a degree (division by `z`, differentiation) lower the
//! order of the result.
//!
//! The constructions at the bottom build the Cayley tree function `T(z)`, the
//! tree record function and the forest record function in several
//! independent ways so that their functional equations can be checked
//! coefficient by coefficient.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::arith::{binomial, expect_natural, pow, to_rational};
use crate::counting::{RecordKind, RecordTable};
use crate::{Error, Result};

/// Largest truncation order accepted by the table and CLI entry points.
pub const SERIES_CAP: usize = 60;

type Poly = Vec<BigRational>;

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_add(a: &[BigRational], b: &[BigRational]) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

fn poly_scale(a: &[BigRational], c: &BigRational) -> Poly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

/// `sum_{i=lo}^{hi} C(n, i) a[i] b[n - i]`.
fn binomial_convolution(n: usize, lo: usize, hi: usize, a: &[Poly], b: &[Poly]) -> Poly {
    let mut acc = Vec::new();
    for i in lo..=hi {
        let (x, y) = (&a[i], &b[n - i]);
        if x.is_empty() || y.is_empty() {
            continue;
        }
        let term = poly_scale(&poly_mul(x, y), &to_rational(&binomial(n, i)));
        acc = poly_add(&acc, &term);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedBivariateEGF {
    order: usize,
    coeffs: Vec<Poly>,
}

impl TruncatedBivariateEGF {
    /// `rows[n][k] = n! [z^n t^k]`; the order is `rows.len() - 1`.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Series("a series needs at least the constant row".into()));
        }
        Ok(TruncatedBivariateEGF {
            order: rows.len() - 1,
            coeffs: rows.into_iter().map(trim).collect(),
        })
    }

    pub fn zero(order: usize) -> Self {
        TruncatedBivariateEGF {
            order,
            coeffs: vec![Vec::new(); order + 1],
        }
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = trim(vec![c]);
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    /// The monomial `t^j`.
    pub fn t_pow(order: usize, j: usize) -> Self {
        let mut s = Self::zero(order);
        let mut p = vec![BigRational::zero(); j + 1];
        p[j] = BigRational::one();
        s.coeffs[0] = p;
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = vec![BigRational::one()];
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `n! [z^n t^k]`, zero beyond the stored polynomial.
    pub fn coeff(&self, n: usize, k: usize) -> BigRational {
        self.coeffs[n].get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Row `n` as a polynomial in `t` (trailing zeros trimmed).
    pub fn row(&self, n: usize) -> &[BigRational] {
        &self.coeffs[n]
    }

    /// Column `k` as `n = 0..=order`.
    pub fn column(&self, k: usize) -> Vec<BigRational> {
        (0..=self.order).map(|n| self.coeff(n, k)).collect()
    }

    pub fn set_coeff(&mut self, n: usize, k: usize, value: BigRational) {
        let row = &mut self.coeffs[n];
        if row.len() <= k {
            row.resize(k + 1, BigRational::zero());
        }
        row[k] = value;
        let trimmed = trim(std::mem::take(row));
        *row = trimmed;
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedBivariateEGF {
            order,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Equal on every coefficient up to the smaller of the two orders.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let order = self.order.min(other.order);
        self.coeffs[..=order] == other.coeffs[..=order]
    }

    fn constant_term_vanishes(&self) -> bool {
        self.coeffs[0].is_empty()
    }

    fn require_zero_constant(&self, op: &str) -> Result<()> {
        if self.constant_term_vanishes() {
            Ok(())
        } else {
            Err(Error::Series(format!("{op} needs a series without a z^0 term")))
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedBivariateEGF {
            order: self.order,
            coeffs: self.coeffs.iter().map(|p| poly_scale(p, c)).collect(),
        }
    }

    /// Multiplies every coefficient by the polynomial `p(t)`.
    pub fn mul_poly_t(&self, p: &[BigRational]) -> Self {
        TruncatedBivariateEGF {
            order: self.order,
            coeffs: self.coeffs.iter().map(|q| poly_mul(q, p)).collect(),
        }
    }

    /// Exact division by `t`; fails when some coefficient has a `t^0` term.
    pub fn div_t(&self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, p)| match p.first() {
                None => Ok(Vec::new()),
                Some(c) if c.is_zero() => Ok(p[1..].to_vec()),
                Some(_) => Err(Error::Series(format!("row {n} is not divisible by t"))),
            })
            .collect::<Result<_>>()?;
        Ok(TruncatedBivariateEGF {
            order: self.order,
            coeffs,
        })
    }

    pub fn pow(&self, j: usize) -> Self {
        let mut result = Self::one(self.order);
        let mut base = self.clone();
        let mut e = j;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `exp(a)` for `a` without constant term, from `f' = a' f`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant("exp")?;
        let mut f: Vec<Poly> = Vec::with_capacity(self.order + 1);
        f.push(vec![BigRational::one()]);
        for n in 0..self.order {
            // f[n+1] = sum_{i=0}^{n} C(n,i) a[i+1] f[n-i]
            let next = binomial_convolution(n, 0, n, &self.coeffs[1..], &f);
            f.push(next);
        }
        Ok(TruncatedBivariateEGF {
            order: self.order,
            coeffs: f,
        })
    }

    /// `log(1 + a)` for `a` without constant term, from `(1 + a) g' = a'`.
    pub fn log1p(&self) -> Result<Self> {
        self.require_zero_constant("log1p")?;
        let mut g: Vec<Poly> = vec![Vec::new(); self.order + 1];
        for n in 0..self.order {
            // g[n+1] = a[n+1] - sum_{i=1}^{n} C(n,i) a[i] g[n+1-i]
            let correction = binomial_convolution(n, 1, n, &self.coeffs, &g[1..]);
            g[n + 1] = poly_add(&self.coeffs[n + 1], &poly_scale(&correction, &rat(-1)));
        }
        Ok(TruncatedBivariateEGF {
            order: self.order,
            coeffs: g,
        })
    }

    /// `1 / (1 - a)` for `a` without constant term, from `g = 1 + a g`.
    pub fn geometric(&self) -> Result<Self> {
        self.require_zero_constant("geometric")?;
        let mut g: Vec<Poly> = Vec::with_capacity(self.order + 1);
        g.push(vec![BigRational::one()]);
        for n in 1..=self.order {
            let next = binomial_convolution(n, 1, n, &self.coeffs, &g);
            g.push(next);
        }
        Ok(TruncatedBivariateEGF {
            order: self.order,
            coeffs: g,
        })
    }

    /// `a / z` for `a` without constant term; the order drops by one.
    pub fn divide_by_z(&self) -> Result<Self> {
        self.require_zero_constant("divide_by_z")?;
        if self.order == 0 {
            return Err(Error::Series("dividing an order-0 series by z leaves nothing".into()));
        }
        // n! [z^n](a/z) = a[n+1] / (n+1)
        let coeffs = (0..self.order)
            .map(|n| poly_scale(&self.coeffs[n + 1], &rat(n as i64 + 1).recip()))
            .collect();
        Ok(TruncatedBivariateEGF {
            order: self.order - 1,
            coeffs,
        })
    }

    /// Multiplication by `z`; the order grows by one.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = vec![Vec::new()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, p)| poly_scale(p, &rat(n as i64 + 1))),
        );
        TruncatedBivariateEGF {
            order: self.order + 1,
            coeffs,
        }
    }

    /// `d/dz`; the order drops by one.
    pub fn z_derivative(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::Series("differentiating an order-0 series leaves nothing".into()));
        }
        Ok(TruncatedBivariateEGF {
            order: self.order - 1,
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `z d/dz`, which keeps the order: `n! [z^n]` is multiplied by `n`.
    pub fn euler(&self) -> Self {
        TruncatedBivariateEGF {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, p)| poly_scale(p, &rat(n as i64)))
                .collect(),
        }
    }

    /// `int_0^z a(s) / s ds` for `a` without constant term: row `n` is
    /// divided by `n`, so the order is kept.
    pub fn integrate_over_z(&self) -> Result<Self> {
        self.require_zero_constant("integrate_over_z")?;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, p)| if n == 0 { Vec::new() } else { poly_scale(p, &rat(n as i64).recip()) })
            .collect();
        Ok(TruncatedBivariateEGF {
            order: self.order,
            coeffs,
        })
    }

    /// `{"N": order, "rows": [[...], ...]}`; integers as numbers, other
    /// rationals as `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .coeffs
            .iter()
            .map(|p| Value::Array(p.iter().map(json_rational).collect()))
            .collect();
        json!({ "N": self.order, "rows": rows })
    }
}

fn json_rational(x: &BigRational) -> Value {
    if x.is_integer() {
        let int = x.to_integer();
        let text = int.to_string();
        Value::Number(text.parse().expect("decimal integers are JSON numbers"))
    } else {
        Value::String(x.to_string())
    }
}

impl Add for &TruncatedBivariateEGF {
    type Output = TruncatedBivariateEGF;

    fn add(self, other: &TruncatedBivariateEGF) -> TruncatedBivariateEGF {
        let order = self.order.min(other.order);
        TruncatedBivariateEGF {
            order,
            coeffs: (0..=order).map(|n| poly_add(&self.coeffs[n], &other.coeffs[n])).collect(),
        }
    }
}

impl Neg for &TruncatedBivariateEGF {
    type Output = TruncatedBivariateEGF;

    fn neg(self) -> TruncatedBivariateEGF {
        self.scale(&rat(-1))
    }
}

impl Sub for &TruncatedBivariateEGF {
    type Output = TruncatedBivariateEGF;

    fn sub(self, other: &TruncatedBivariateEGF) -> TruncatedBivariateEGF {
        self + &(-other)
    }
}

impl Mul for &TruncatedBivariateEGF {
    type Output = TruncatedBivariateEGF;

    fn mul(self, other: &TruncatedBivariateEGF) -> TruncatedBivariateEGF {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| binomial_convolution(n, 0, n, &self.coeffs, &other.coeffs))
            .collect();
        TruncatedBivariateEGF { order, coeffs }
    }
}

/// `T(z) = sum_{n>=1} n^(n-1) z^n / n!`, the Cayley tree function.
pub fn cayley_tree(order: usize) -> TruncatedBivariateEGF {
    let coeffs = (0..=order)
        .map(|n| match n {
            0 => Vec::new(),
            _ => vec![to_rational(&pow(n, n - 1))],
        })
        .collect();
    TruncatedBivariateEGF { order, coeffs }
}

/// `(1/t) log(1 - t T)`, materialised without Laurent terms in `t`.
pub fn log_one_minus_t_tree_over_t(order: usize) -> TruncatedBivariateEGF {
    let t_tree = cayley_tree(order).mul_poly_t(&[BigRational::zero(), BigRational::one()]);
    (-&t_tree)
        .log1p()
        .and_then(|s| s.div_t())
        .expect("t T has no constant term and log(1 - tT) is divisible by t")
}

/// `T - ((t-1)/t) log(1 - t T)`.
pub fn tree_record_series(order: usize) -> TruncatedBivariateEGF {
    let tree = cayley_tree(order);
    let correction = log_one_minus_t_tree_over_t(order).mul_poly_t(&[rat(-1), rat(1)]);
    &tree - &correction
}

/// `int_0^z (1/s) t T / (1 - t T) ds`.
pub fn tree_record_series_integral(order: usize) -> TruncatedBivariateEGF {
    let t_tree = cayley_tree(order).mul_poly_t(&[BigRational::zero(), BigRational::one()]);
    let ratio = &t_tree * &t_tree.geometric().expect("no constant term");
    ratio.integrate_over_z().expect("no constant term")
}

/// `T^k / k - T^(k+1) / (k+1)`, a series in `z` alone.
pub fn per_k_tree_series(order: usize, k: usize) -> TruncatedBivariateEGF {
    assert!(k >= 1, "record counts start at 1");
    let tree = cayley_tree(order);
    let low = tree.pow(k).scale(&rat(k as i64).recip());
    let high = tree.pow(k + 1).scale(&rat(k as i64 + 1).recip());
    &low - &high
}

/// `int_0^z T(s)^j / s ds`, the trees with exactly `j` records.
pub fn integral_of_tree_power(order: usize, j: usize) -> TruncatedBivariateEGF {
    cayley_tree(order).pow(j).integrate_over_z().expect("T^j has no constant term for j >= 1")
}

/// Forest record function as `exp` of the tree record function.
pub fn forest_record_series_exp(order: usize) -> TruncatedBivariateEGF {
    tree_record_series(order).exp().expect("tree record series has no constant term")
}

/// Forest record function as `(1/z) T (1 - t T)^(-(t-1)/t)`, the power being
/// `exp(-(t-1) (1/t) log(1 - t T))`.
pub fn forest_record_series_closed(order: usize) -> TruncatedBivariateEGF {
    let prefactor = cayley_tree(order + 1).divide_by_z().expect("T has no constant term");
    let exponent = log_one_minus_t_tree_over_t(order).mul_poly_t(&[rat(1), rat(-1)]);
    &prefactor * &exponent.exp().expect("no constant term")
}

/// Both constructions of the forest record function, which must agree.
pub fn forest_record_series(order: usize) -> Result<TruncatedBivariateEGF> {
    let via_exp = forest_record_series_exp(order);
    let closed = forest_record_series_closed(order);
    if via_exp != closed {
        return Err(Error::Series(format!(
            "forest record constructions disagree below order {order}"
        )));
    }
    Ok(via_exp)
}

/// `z dR/dz = t T R + (z dR/dz) t T`.
pub fn pde_holds(forest: &TruncatedBivariateEGF, tree: &TruncatedBivariateEGF) -> bool {
    let t_tree = tree.mul_poly_t(&[BigRational::zero(), BigRational::one()]);
    let lhs = forest.euler();
    let rhs = &(&t_tree * forest) + &(&lhs * &t_tree);
    lhs.agrees_with(&rhs) && rhs.order() == forest.order().min(tree.order())
}

pub fn verify_pde(order: usize) -> bool {
    match forest_record_series(order) {
        Ok(forest) => pde_holds(&forest, &cayley_tree(order)),
        Err(_) => false,
    }
}

/// `int_0^z T(s)/s ds`, the unrooted trees.
pub fn unrooted_tree_series(order: usize) -> TruncatedBivariateEGF {
    integral_of_tree_power(order, 1)
}

/// The unrooted series has coefficients `n^(n-2)` and equals `T - T^2/2`.
pub fn unrooted_tree_series_check(order: usize) -> bool {
    let unrooted = unrooted_tree_series(order);
    let counts_ok = (1..=order).all(|n| unrooted.coeff(n, 0) == to_rational(&crate::arith::cayley_unrooted(n)));
    let tree = cayley_tree(order);
    let closed = &tree - &tree.pow(2).scale(&BigRational::new(1.into(), 2.into()));
    counts_ok && unrooted == closed
}

/// Whether `int_0^z T(s)/s ds = T - T^2` holds up to `order`.
pub fn unrooted_identity_without_half_holds(order: usize) -> bool {
    let tree = cayley_tree(order);
    unrooted_tree_series(order) == &tree - &tree.pow(2)
}

/// Coefficients in `t` of `(t/n) (n + t)^(n-1)`.
pub fn fixed_n_polynomial(n: usize) -> Vec<BigRational> {
    assert!(n >= 1, "the polynomial is defined for n >= 1");
    let mut p = vec![rat(0), rat(1) / rat(n as i64)];
    let base = [rat(n as i64), rat(1)];
    for _ in 0..n - 1 {
        p = poly_mul(&p, &base);
    }
    p
}

/// Extracts a record table from the tree or forest record function.
pub fn record_table_from_series(kind: RecordKind, n_max: usize) -> Result<RecordTable> {
    if n_max > SERIES_CAP {
        return Err(Error::CapExceeded {
            what: "series order",
            value: n_max,
            cap: SERIES_CAP,
        });
    }
    let series = match kind {
        RecordKind::Tree => tree_record_series(n_max),
        RecordKind::Forest => forest_record_series(n_max)?,
    };
    let rows = (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|k| expect_natural(&series.coeff(n, k), format!("series coefficient ({n},{k})")))
                .collect::<Result<Vec<BigUint>>>()
        })
        .collect::<Result<_>>()?;
    // any mass beyond k = n would be a bug in the construction
    if (0..=n_max).any(|n| series.row(n).len() > n + 1) {
        return Err(Error::Series("coefficient with more records than nodes".into()));
    }
    RecordTable::from_rows(kind, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorial;
    use crate::counting::{forest_record_number, tree_record_number};

    fn int(x: &BigUint) -> BigRational {
        to_rational(x)
    }

    fn ints(values: &[i64]) -> Vec<BigRational> {
        values.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn exp_of_z() {
        let e = TruncatedBivariateEGF::z(8).exp().unwrap();
        for n in 0..=8 {
            assert_eq!(e.coeff(n, 0), rat(1));
        }
        assert!(e.exp().is_err());
    }

    #[test]
    fn log_inverts_exp() {
        let z = TruncatedBivariateEGF::z(10);
        let e = z.exp().unwrap();
        let e_minus_one = &e - &TruncatedBivariateEGF::one(10);
        assert_eq!(e_minus_one.log1p().unwrap(), z);
    }

    #[test]
    fn cube_of_z() {
        let cube = TruncatedBivariateEGF::z(5).pow(3);
        assert_eq!(cube.coeff(3, 0), int(&factorial(3)));
        assert_eq!(cube.coeff(4, 0), rat(0));
    }

    #[test]
    fn preconditions() {
        let one = TruncatedBivariateEGF::one(4);
        assert!(one.exp().is_err());
        assert!(one.log1p().is_err());
        assert!(one.divide_by_z().is_err());
        assert!(one.integrate_over_z().is_err());
        assert!(one.geometric().is_err());
        assert!(one.div_t().is_err());
        assert!(TruncatedBivariateEGF::zero(0).z_derivative().is_err());
    }

    #[test]
    fn order_bookkeeping() {
        let t = cayley_tree(6);
        assert_eq!(t.divide_by_z().unwrap().order(), 5);
        assert_eq!(t.z_derivative().unwrap().order(), 5);
        assert_eq!(t.mul_z().order(), 7);
        assert_eq!(t.integrate_over_z().unwrap().order(), 6);
        assert_eq!((&t * &cayley_tree(3)).order(), 3);
        // z d/dz = z * derivative
        assert!(t.z_derivative().unwrap().mul_z().agrees_with(&t.euler()));
    }

    #[test]
    fn cayley_function() {
        let t = cayley_tree(12);
        assert_eq!(t.coeff(0, 0), rat(0));
        assert_eq!(t.coeff(1, 0), rat(1));
        assert_eq!(t.coeff(2, 0), rat(2));
        assert_eq!(t.coeff(3, 0), rat(9));
        let rhs = t.truncate(11).exp().unwrap().mul_z();
        assert_eq!(rhs, t);
    }

    #[test]
    fn log_over_t_is_the_expected_sum() {
        let order = 10;
        let tree = cayley_tree(order);
        let mut expected = TruncatedBivariateEGF::zero(order);
        for j in 1..=order {
            let term = tree.pow(j).scale(&rat(j as i64).recip()).mul_poly_t(
                &(0..j).map(|i| if i == j - 1 { rat(-1) } else { rat(0) }).collect::<Vec<_>>(),
            );
            expected = &expected + &term;
        }
        assert_eq!(log_one_minus_t_tree_over_t(order), expected);
    }

    #[test]
    fn tree_record_rows() {
        let s = tree_record_series(8);
        assert_eq!(s.row(1), &ints(&[0, 1])[..]);
        assert_eq!(s.row(5), &ints(&[0, 125, 200, 180, 96, 24])[..]);
        for n in 1..=8 {
            for k in 0..=n + 1 {
                assert_eq!(s.coeff(n, k), int(&tree_record_number(n, k)));
            }
        }
        assert_eq!(tree_record_series_integral(8), s);
    }

    #[test]
    fn per_k_columns() {
        let s = tree_record_series(9);
        for k in 1..=4 {
            assert_eq!(per_k_tree_series(9, k).column(0), s.column(k));
            assert_eq!(integral_of_tree_power(9, k).column(0), s.column(k));
        }
        assert_eq!(per_k_tree_series(9, 1).coeff(2, 0), rat(1));
        for n in 1..=9 {
            assert_eq!(per_k_tree_series(9, n).coeff(n, 0), int(&factorial(n - 1)));
        }
    }

    #[test]
    fn forest_record_rows() {
        let f = forest_record_series(8).unwrap();
        assert_eq!(f.row(0), &ints(&[1])[..]);
        assert_eq!(f.row(4), &ints(&[0, 16, 39, 46, 24])[..]);
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(f.coeff(n, k), int(&forest_record_number(n, k)));
            }
        }
    }

    #[test]
    fn differential_equation() {
        assert!(verify_pde(1));
        assert!(verify_pde(10));
        let mut forest = forest_record_series(8).unwrap();
        let tree = cayley_tree(8);
        assert!(pde_holds(&forest, &tree));
        forest.set_coeff(5, 2, forest.coeff(5, 2) + rat(1));
        assert!(!pde_holds(&forest, &tree));
    }

    #[test]
    fn unrooted_trees() {
        let u = unrooted_tree_series(10);
        assert_eq!(u.coeff(1, 0), rat(1));
        assert_eq!(u.coeff(3, 0), rat(3));
        assert!(unrooted_tree_series_check(10));
        assert!(!unrooted_identity_without_half_holds(10));
    }

    #[test]
    fn fixed_n_polynomials() {
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(fixed_n_polynomial(3), vec![rat(0), rat(3), rat(2), third]);
        assert_eq!(fixed_n_polynomial(1), ints(&[0, 1]));
        for n in 1..=10 {
            let p = fixed_n_polynomial(n);
            for (k, c) in p.iter().enumerate() {
                assert_eq!(c * int(&factorial(k)), int(&tree_record_number(n, k)));
            }
        }
    }

    #[test]
    fn json_output() {
        let t = cayley_tree(3);
        assert_eq!(serde_json::to_string(&t.to_json()).unwrap(), r#"{"N":3,"rows":[[],[1],[2],[9]]}"#);
        let half = TruncatedBivariateEGF::constant(0, BigRational::new(1.into(), 2.into()));
        assert_eq!(serde_json::to_string(&half.to_json()).unwrap(), r#"{"N":0,"rows":[["1/2"]]}"#);
    }

    #[test]
    fn tables_from_series() {
        let trees = record_table_from_series(RecordKind::Tree, 6).unwrap();
        assert_eq!(trees, crate::counting::tree_record_table_formula(6));
        assert!(record_table_from_series(RecordKind::Forest, 61).is_err());
    }
}
