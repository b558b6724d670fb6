//! Compositions of an integer: ordered sequences of positive parts.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!("part {} is zero", i + 1)));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being composed.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `t_1 + ... + t_i`, with `prefix_sum(0) = 0`.
    pub fn prefix_sum(&self, i: usize) -> usize {
        self.parts[..i].iter().sum()
    }

    /// `prefix_sum(1) * prefix_sum(2) * ... * prefix_sum(i)`.
    pub fn prefix_sum_factorial(&self, i: usize) -> BigUint {
        let mut acc = BigUint::one();
        let mut sum = 0;
        for &p in &self.parts[..i] {
            sum += p;
            acc *= sum;
        }
        acc
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Compositions of `n` into exactly `k` parts, lexicographically increasing.
pub struct Compositions {
    next: Option<Vec<usize>>,
}

pub fn compositions(n: usize, k: usize) -> Compositions {
    let next = if k == 0 || k > n {
        None
    } else {
        let mut first = vec![1; k];
        first[k - 1] = n - (k - 1);
        Some(first)
    };
    Compositions { next }
}

/// Every composition of `n`, grouped by number of parts.
pub fn all_compositions(n: usize) -> impl Iterator<Item = Composition> {
    (1..=n).flat_map(move |k| compositions(n, k))
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        // Successor: grow the rightmost part whose suffix can spare a unit,
        // then make the suffix as small as possible (ones, slack at the end).
        let k = current.len();
        let mut tail = 0;
        for i in (0..k.saturating_sub(1)).rev() {
            tail += current[i + 1];
            if tail > k - 1 - i {
                let mut succ = current.clone();
                succ[i] += 1;
                succ[i + 1..].fill(1);
                succ[k - 1] = tail - 1 - (k - 2 - i);
                self.next = Some(succ);
                break;
            }
        }
        Some(Composition { parts: current })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(it: impl Iterator<Item = Composition>) -> Vec<Vec<usize>> {
        it.map(Vec::from).collect()
    }

    #[test]
    fn prefix_sums() {
        let t = Composition::new(vec![4, 1, 1, 2, 5, 1]).unwrap();
        assert_eq!(t.len(), 6);
        assert_eq!(t.total(), 14);
        assert_eq!(t.prefix_sum(0), 0);
        assert_eq!(t.prefix_sum(3), 6);
        assert_eq!(t.prefix_sum(6), 14);
        assert_eq!(t.prefix_sum_factorial(3), BigUint::from(4u32 * 5 * 6));
        assert_eq!(t.prefix_sum_factorial(0), BigUint::one());
        assert_eq!(t.to_string(), "(4,1,1,2,5,1)");
    }

    #[test]
    fn rejects_zero_parts() {
        assert!(Composition::new(vec![2, 0, 1]).is_err());
        assert!(Composition::new(vec![]).is_err());
        assert!(serde_json::from_str::<Composition>("[1,0]").is_err());
    }

    #[test]
    fn lexicographic_order() {
        assert_eq!(
            parts(compositions(5, 3)),
            vec![
                vec![1, 1, 3],
                vec![1, 2, 2],
                vec![1, 3, 1],
                vec![2, 1, 2],
                vec![2, 2, 1],
                vec![3, 1, 1],
            ]
        );
        assert_eq!(parts(compositions(3, 1)), vec![vec![3]]);
        assert_eq!(parts(compositions(3, 3)), vec![vec![1, 1, 1]]);
        assert!(parts(compositions(3, 4)).is_empty());
        assert!(parts(compositions(3, 0)).is_empty());
    }

    #[test]
    fn counts_are_binomial() {
        for n in 1..=10 {
            for k in 1..=n {
                let list = parts(compositions(n, k));
                assert_eq!(num_bigint::BigUint::from(list.len()), crate::arith::binomial(n - 1, k - 1));
                assert!(list.windows(2).all(|w| w[0] < w[1]));
                assert!(list.iter().all(|c| c.iter().sum::<usize>() == n));
            }
            assert_eq!(all_compositions(n).count(), 1 << (n - 1));
        }
    }
}
