//! Integer partitions, the dominance order and multinomial coefficients.
//!
//! A [`Partition`] is stored as its weakly decreasing list of positive parts.
//! Its total order ([`Ord`]) is the canonical indexing order used by every
//! matrix in the crate: by degree, then reverse-lexicographic, with `(n)`
//! first and `(1^n)` last. This order is a linear extension of dominance;
//! Kostka matrices are upper unitriangular in it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::check_degree;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from weakly decreasing parts. Trailing zeros are
    /// stripped; any other zero or an increase is rejected.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::arg(format!("zero part inside partition {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::arg(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts decreasingly and drops zeros.
    pub fn from_multiset(parts: impl IntoIterator<Item = u32>) -> Self {
        let mut parts: Vec<u32> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        Partition::from_multiset([n])
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (1..=width as u32)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `true` iff the degrees agree and every prefix sum of `self` is at least
    /// the matching prefix sum of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.degree() != other.degree() {
            return false;
        }
        let len = self.len().max(other.len());
        let (mut a, mut b) = (0u64, 0u64);
        for i in 0..len {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a < b {
                return false;
            }
        }
        true
    }

    /// `deg(P)! / prod_i P(i)!`.
    pub fn multinomial(&self) -> BigUint {
        let num = factorial(self.degree());
        let den = self
            .parts
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * factorial(p as usize));
        num / den
    }

    /// Multiplicity of each part size: `m[k]` is the number of parts equal to `k`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0usize; self.part(0) as usize + 1];
        for &p in &self.parts {
            m[p as usize] += 1;
        }
        m
    }

    /// Size of the centraliser of a permutation of cycle type `self`:
    /// `prod_k k^{m_k} m_k!`.
    pub fn centralizer_order(&self) -> BigUint {
        self.multiplicities()
            .iter()
            .enumerate()
            .skip(1)
            .fold(BigUint::one(), |acc, (k, &m)| {
                acc * BigUint::from(k).pow(m as u32) * factorial(m)
            })
    }

    /// Sign of a permutation of cycle type `self`.
    pub fn sign(&self) -> i32 {
        let even_cycles = self.parts.iter().filter(|&&p| p % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as `[2,1]`; the empty partition as `[]`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.comma_list())
    }
}

impl Partition {
    /// `2,1` style rendering without brackets.
    pub fn comma_list(&self) -> String {
        self.parts
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Parses `2,1`, `[2,1]`, or an empty string / `[]` for the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .unwrap_or(s)
            .trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::arg(format!("bad partition part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// All partitions of `n`, in the canonical (reverse-lexicographic) order.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    check_degree(n, "partitions_of")?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n as u32, n as u32, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=remaining.min(max_part)).rev() {
        current.push(p);
        fill(remaining - p, p, current, out);
        current.pop();
    }
}

/// Panics if some element strictly dominates an element listed before it.
pub(crate) fn assert_dominance_compatible<T>(order: &[T], dominates: impl Fn(&T, &T) -> bool) {
    for (i, a) in order.iter().enumerate() {
        for b in &order[..i] {
            assert!(
                !dominates(a, b),
                "canonical order is not a linear extension of dominance"
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_small_degrees() {
        assert_eq!(partitions_of(0).unwrap(), vec![Partition::empty()]);
        assert_eq!(
            partitions_of(3).unwrap(),
            vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]
        );
        assert_eq!(partitions_of(5).unwrap().len(), 7);
    }

    #[test]
    fn enumeration_is_sorted_in_canonical_order() {
        let ps = partitions_of(9).unwrap();
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ps.first(), Some(&Partition::row(9)));
        assert_eq!(ps.last(), Some(&Partition::column(9)));
        assert_dominance_compatible(&ps, |a, b| a.dominates(b) && a != b);
    }

    #[test]
    fn enumeration_refuses_beyond_bound() {
        assert!(matches!(
            partitions_of(10_000),
            Err(Error::ResourceBound(_))
        ));
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[2]).dominates(&p(&[1, 1])));
        assert!(!p(&[1, 1]).dominates(&p(&[2])));
        assert!(!p(&[3, 1, 1, 1]).dominates(&p(&[2, 2, 2])));
        assert!(!p(&[2, 2, 2]).dominates(&p(&[3, 1, 1, 1])));
        assert!(!p(&[2]).dominates(&p(&[2, 1])));
    }

    #[test]
    fn multinomials() {
        assert_eq!(p(&[5]).multinomial(), BigUint::from(1u32));
        assert_eq!(p(&[2, 1]).multinomial(), BigUint::from(3u32));
        assert_eq!(p(&[2, 2]).multinomial(), BigUint::from(6u32));
        assert_eq!(Partition::empty().multinomial(), BigUint::from(1u32));
        // 25!/(1^25) overflows u64
        assert_eq!(Partition::column(25).multinomial(), factorial(25));
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[4]).conjugate(), Partition::column(4));
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn construction_normalizes_and_validates() {
        assert_eq!(p(&[2, 0, 0]), p(&[2]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!("2,1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,x".parse::<Partition>().is_err());
    }

    #[test]
    fn json_shape() {
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        let back: Partition = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(back, p(&[3, 1, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn class_data() {
        // S_3: identity, transpositions, 3-cycles
        assert_eq!(p(&[1, 1, 1]).centralizer_order(), BigUint::from(6u32));
        assert_eq!(p(&[2, 1]).centralizer_order(), BigUint::from(2u32));
        assert_eq!(p(&[3]).centralizer_order(), BigUint::from(3u32));
        assert_eq!(p(&[2, 1]).sign(), -1);
        assert_eq!(p(&[2, 2]).sign(), 1);
    }
}
