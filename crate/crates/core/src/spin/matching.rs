use std::fmt;

use crate::error::{Error, Result};
use crate::limits::{check_even, Limits};

/// A Rumer pairing: a partition of `0..n` into `n/2` unordered pairs.
///
/// Stored canonically: each pair as `(k, l)` with `k < l`, pairs sorted by
/// their smaller element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching {
    pairs: Vec<(usize, usize)>,
}

impl PerfectMatching {
    /// Validates and canonicalizes a pair list covering `0..n`.
    pub fn new(pairs: &[(usize, usize)], n: usize) -> Result<Self> {
        check_even(n)?;
        if pairs.len() != n / 2 {
            return Err(Error::invalid(format!(
                "{} pairs cannot cover {n} spins",
                pairs.len()
            )));
        }
        let mut seen = vec![false; n];
        let mut canon = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            let (k, l) = (a.min(b), a.max(b));
            if l >= n || k == l || seen[k] || seen[l] {
                return Err(Error::invalid(format!(
                    "pair ({a}, {b}) is not disjoint from the others within 0..{n}"
                )));
            }
            seen[k] = true;
            seen[l] = true;
            canon.push((k, l));
        }
        canon.sort_unstable();
        Ok(PerfectMatching { pairs: canon })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn n(&self) -> usize {
        2 * self.pairs.len()
    }

    pub fn partner(&self, k: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == k {
                Some(b)
            } else if b == k {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn pairs_together(&self, i: usize, j: usize) -> bool {
        self.partner(i) == Some(j)
    }
}

impl fmt::Display for PerfectMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in &self.pairs {
            write!(f, "({k},{l})")?;
        }
        Ok(())
    }
}

/// Number of perfect matchings of `n` points: `n! / (2^(n/2) (n/2)!)`, i.e. `(n-1)!!`.
pub fn matching_count(n: usize) -> u128 {
    assert!(n.is_multiple_of(2), "odd n has no perfect matching");
    (1..n).step_by(2).map(|k| k as u128).product()
}

/// All canonical matchings of `0..n` in lexicographic order of their pair lists.
pub fn enumerate_matchings(n: usize) -> Result<Vec<PerfectMatching>> {
    enumerate_matchings_with(n, &Limits::default())
}

pub fn enumerate_matchings_with(n: usize, limits: &Limits) -> Result<Vec<PerfectMatching>> {
    check_even(n)?;
    if n > limits.max_n {
        return Err(Error::invalid(format!(
            "n = {n} exceeds the matching bound n <= {}",
            limits.max_n
        )));
    }
    let mut out = Vec::with_capacity(matching_count(n) as usize);
    let mut used = vec![false; n];
    let mut current = Vec::with_capacity(n / 2);
    extend(&mut used, &mut current, &mut out);
    Ok(out)
}

// Pairs the smallest free index with each larger free index in turn.
fn extend(used: &mut [bool], current: &mut Vec<(usize, usize)>, out: &mut Vec<PerfectMatching>) {
    let Some(first) = used.iter().position(|&u| !u) else {
        out.push(PerfectMatching {
            pairs: current.clone(),
        });
        return;
    };
    used[first] = true;
    for second in first + 1..used.len() {
        if used[second] {
            continue;
        }
        used[second] = true;
        current.push((first, second));
        extend(used, current, out);
        current.pop();
        used[second] = false;
    }
    used[first] = false;
}
