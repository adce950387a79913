//! Partitions, their distinct rearrangements, and permutations with cycles.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates that `parts` is weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidValue(format!(
                "partition {parts:?} has a zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidValue(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts first; zeros are still rejected.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    /// `part -> m_part` for every part present.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// The distinct parts, descending.
    pub fn distinct_parts(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.dedup();
        v
    }

    /// `Π_i m_i!`
    pub fn multiplicity_factorial_product(&self) -> Rational {
        self.multiplicities()
            .values()
            .fold(Rational::ONE, |acc, &m| {
                &acc * &Rational::factorial(m as u32)
            })
    }

    /// Removes one copy of `part`.
    pub fn remove_part(&self, part: u32) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == part)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    /// `l(mu)! / Π_i m_i(mu)!`, the number of distinct rearrangements.
    pub fn rearrangement_count(&self) -> Rational {
        &Rational::factorial(self.len() as u32) / &self.multiplicity_factorial_product()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Parses `2,1,1` (any order, brackets optional).
    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')']);
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_unsorted(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(4), (3,1), (2,2), ...`.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::empty());
    } else {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Partitions of every weight `1..=w`, grouped by weight.
pub fn partitions_up_to(w: u32) -> Vec<Partition> {
    (1..=w).flat_map(partitions_of).collect()
}

/// A distinct rearrangement of a partition's parts with its prefix sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derangement {
    entries: Vec<u32>,
    prefix_sums: Vec<u32>,
}

impl Derangement {
    pub fn new(entries: Vec<u32>) -> Self {
        let prefix_sums = entries
            .iter()
            .scan(0, |s, &c| {
                *s += c;
                Some(*s)
            })
            .collect();
        Derangement {
            entries,
            prefix_sums,
        }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `[c_1], [c_1 + c_2], ...`
    pub fn prefix_sums(&self) -> &[u32] {
        &self.prefix_sums
    }

    /// `[c_i]` with the convention `[c_0] = 0`; `i` is 1-based.
    pub fn prefix(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.prefix_sums[i - 1]
        }
    }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// The distinct rearrangements of `mu`'s parts in lexicographic order. The
/// empty partition has exactly one (empty) rearrangement.
pub fn derangements(mu: &Partition) -> Vec<Derangement> {
    let mut v: Vec<u32> = mu.0.iter().rev().copied().collect();
    let mut out = vec![Derangement::new(v.clone())];
    while next_permutation(&mut v) {
        out.push(Derangement::new(v.clone()));
    }
    out
}

/// Like [`derangements`] but refuses partitions longer than `max_len`.
pub fn derangements_capped(mu: &Partition, max_len: usize) -> Result<Vec<Derangement>> {
    Error::check_cap("partition length", mu.len(), max_len)?;
    Ok(derangements(mu))
}

/// `z_mu = Π_i i^{m_i} m_i!`
pub fn z_of(mu: &Partition) -> Rational {
    mu.multiplicities()
        .iter()
        .fold(Rational::ONE, |acc, (&i, &m)| {
            let f =
                &Rational::from_integer(i as i64).pow(m as u32) * &Rational::factorial(m as u32);
            &acc * &f
        })
}

/// A permutation of `{1..n}` with its cycle decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationWithCycles {
    /// `mapping[i - 1] = sigma(i)`.
    mapping: Vec<usize>,
    /// Disjoint cycles, each starting at its least element, ordered by it.
    cycles: Vec<Vec<usize>>,
}

impl PermutationWithCycles {
    pub fn from_mapping(mapping: Vec<usize>) -> Self {
        let n = mapping.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i - 1] {
                seen[i - 1] = true;
                cyc.push(i);
                i = mapping[i - 1];
            }
            cycles.push(cyc);
        }
        PermutationWithCycles { mapping, cycles }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    /// `sigma(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i - 1]
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Cycle lengths as a partition.
    pub fn cycle_type(&self) -> Partition {
        Partition::from_unsorted(self.cycles.iter().map(|c| c.len() as u32).collect())
            .expect("cycle lengths are positive")
    }

    /// `(-1)^{n - #cycles}`
    pub fn sign(&self) -> i64 {
        if (self.mapping.len() - self.cycles.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub const DEFAULT_PERMUTATION_CAP: usize = 8;

/// All `n!` permutations of `{1..n}` in lexicographic order of their
/// one-line notation.
pub fn permutations_with_cycles(n: usize, cap: usize) -> Result<Vec<PermutationWithCycles>> {
    Error::check_cap("permutation size", n, cap)?;
    let mut v: Vec<usize> = (1..=n).collect();
    let mut out = vec![PermutationWithCycles::from_mapping(v.clone())];
    while next_permutation(&mut v) {
        out.push(PermutationWithCycles::from_mapping(v.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partitions_up_to_examples() {
        assert_eq!(partitions_up_to(2), vec![p(&[1]), p(&[2]), p(&[1, 1])]);
        assert_eq!(
            partitions_of(4),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert!(partitions_up_to(0).is_empty());
        assert_eq!(partitions_up_to(8).len(), 66);
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!("1,2,1".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("[3, 1]".parse::<Partition>().unwrap(), p(&[3, 1]));
        assert!("a,1".parse::<Partition>().is_err());
    }

    #[test]
    fn derangement_examples() {
        let d: Vec<Vec<u32>> = derangements(&p(&[2, 1]))
            .iter()
            .map(|d| d.entries().to_vec())
            .collect();
        assert_eq!(d, vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(derangements(&p(&[1, 1])).len(), 1);
        assert_eq!(derangements(&p(&[2, 1, 1])).len(), 3);
        let all = derangements(&p(&[3, 2, 1]));
        let e = all.iter().find(|d| d.entries() == [3, 1, 2]).unwrap();
        assert_eq!(e.prefix_sums(), &[3, 4, 6]);
        assert_eq!(e.prefix(0), 0);
        assert_eq!(derangements(&Partition::empty()).len(), 1);
        assert!(derangements_capped(&p(&[1; 9]), 8).is_err());
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_of(&p(&[1, 1, 1])), Rational::from_integer(6));
        assert_eq!(z_of(&p(&[2, 1])), Rational::from_integer(2));
        assert_eq!(z_of(&p(&[3, 3])), Rational::from_integer(18));
    }

    #[test]
    fn permutation_examples() {
        let two = permutations_with_cycles(2, 8).unwrap();
        assert_eq!(two[0].cycles(), &[vec![1], vec![2]]);
        assert_eq!(two[1].cycles(), &[vec![1, 2]]);
        assert_eq!(permutations_with_cycles(1, 8).unwrap()[0].cycles().len(), 1);
        let three = permutations_with_cycles(3, 8).unwrap();
        let count = |t: &[u32]| three.iter().filter(|s| s.cycle_type() == p(t)).count();
        assert_eq!((count(&[1, 1, 1]), count(&[2, 1]), count(&[3])), (1, 3, 2));
        assert!(matches!(
            permutations_with_cycles(9, 8),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn serde_as_descending_array() {
        let s = serde_json::to_string(&p(&[3, 1, 1])).unwrap();
        assert_eq!(s, "[3,1,1]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
