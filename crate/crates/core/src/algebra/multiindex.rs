use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

/// Exponent vector of a monomial, one entry per variable of its frame.
///
/// `Ord` is graded-lex: total degree first, then lexicographic on the
/// exponents in frame order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The exponent vector of the `i`-th variable.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    /// `δ! = ∏ δ_i!`
    pub fn factorial_weight(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &e| acc * factorial(e))
    }

    /// `β!/(β−α)!` for `self = β`, or `None` unless `α ≤ β` componentwise.
    pub fn falling_weight(&self, alpha: &MultiIndex) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for (&b, &a) in self.0.iter().zip(&alpha.0) {
            if a > b {
                return None;
            }
            for t in (b - a + 1)..=b {
                acc *= t;
            }
        }
        Some(acc)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other`, defined only when `other ≤ self` componentwise.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn gcd(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn lcm(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Pure lexicographic comparison in frame order (first variable largest).
    pub fn lex_cmp(&self, other: &MultiIndex) -> Ordering {
        self.0.cmp(&other.0)
    }

    /// All monomials of degree `d` in `n` variables, in descending graded-lex order.
    pub fn all_of_degree(n: usize, d: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fill(&mut out, &mut current, 0, d as u32);
        out
    }
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut [u32], pos: usize, remaining: u32) {
    if pos + 1 >= current.len() {
        if let Some(last) = current.last_mut() {
            *last = remaining;
            out.push(MultiIndex(current.to_vec()));
        } else if remaining == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial_count;

    #[test]
    fn enumeration_is_descending_and_complete() {
        let ms = MultiIndex::all_of_degree(3, 4);
        assert_eq!(ms.len(), monomial_count(3, 4));
        assert_eq!(ms[0].exponents(), &[4, 0, 0]);
        assert_eq!(ms.last().unwrap().exponents(), &[0, 0, 4]);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn degree_zero_has_one_monomial() {
        assert_eq!(MultiIndex::all_of_degree(3, 0), vec![MultiIndex::zeros(3)]);
        assert_eq!(MultiIndex::all_of_degree(1, 5).len(), 1);
    }

    #[test]
    fn falling_weight_matches_factorials() {
        let beta = MultiIndex::new(vec![2, 1]);
        let alpha = MultiIndex::new(vec![2, 0]);
        assert_eq!(beta.falling_weight(&alpha), Some(BigInt::from(2)));
        assert_eq!(alpha.falling_weight(&beta), None);
        assert_eq!(MultiIndex::new(vec![3, 2]).factorial_weight(), BigInt::from(12));
    }

    #[test]
    fn subtraction_requires_domination() {
        let a = MultiIndex::new(vec![1, 2]);
        assert_eq!(a.checked_sub(&MultiIndex::new(vec![1, 1])), Some(MultiIndex::new(vec![0, 1])));
        assert_eq!(a.checked_sub(&MultiIndex::new(vec![2, 0])), None);
    }
}
