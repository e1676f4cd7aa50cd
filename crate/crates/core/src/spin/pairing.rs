use std::collections::BTreeMap;

use num_integer::Integer;

use super::{twice_sz, PerfectMatching};
use crate::error::{Error, Result};
use crate::Rational;

/// Spin-state vector with integer amplitudes; the physical vector is
/// `2^(-norm_exponent/2) * amps`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactVector {
    n: usize,
    amps: BTreeMap<u64, i64>,
    norm_exponent: u32,
}

impl ExactVector {
    pub fn new(n: usize, amps: BTreeMap<u64, i64>, norm_exponent: u32) -> Result<Self> {
        if let Some((&b, _)) = amps.iter().find(|(&b, _)| b >> n != 0) {
            return Err(Error::invalid(format!("basis index {b} outside {n} spins")));
        }
        let amps = amps.into_iter().filter(|&(_, a)| a != 0).collect();
        Ok(ExactVector {
            n,
            amps,
            norm_exponent,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn norm_exponent(&self) -> u32 {
        self.norm_exponent
    }

    pub fn amplitude(&self, bits: u64) -> i64 {
        self.amps.get(&bits).copied().unwrap_or(0)
    }

    /// Nonzero `(basis index, amplitude)` pairs, ascending by index.
    pub fn support(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.amps.iter().map(|(&b, &a)| (b, a))
    }

    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    pub fn negated(&self) -> Self {
        ExactVector {
            n: self.n,
            amps: self.amps.iter().map(|(&b, &a)| (b, -a)).collect(),
            norm_exponent: self.norm_exponent,
        }
    }

    pub fn norm_squared(&self) -> Rational {
        overlap(self, self).expect("self overlap has an even exponent")
    }

    /// True when every nonzero amplitude has total S_z = 0.
    pub fn in_sz_zero_sector(&self) -> bool {
        self.amps.keys().all(|&b| twice_sz(b, self.n) == 0)
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let scale = 2f64.powf(-(self.norm_exponent as f64) / 2.0);
        let mut v = vec![0.0; 1 << self.n];
        for (&b, &a) in &self.amps {
            v[b as usize] = a as f64 * scale;
        }
        v
    }
}

/// Product of two-spin singlets over ordered pairs `(k, l)`; within each pair
/// the `↑_k ↓_l` term carries `+1`. Pairs need not be sorted, so swapping the
/// members of one pair negates the result.
pub fn singlet_product(pairs: &[(usize, usize)], n: usize) -> Result<ExactVector> {
    let mut seen = 0u64;
    for &(k, l) in pairs {
        if k >= n || l >= n || k == l || seen >> k & 1 == 1 || seen >> l & 1 == 1 {
            return Err(Error::invalid(format!(
                "pair ({k}, {l}) overlaps or exceeds {n} spins"
            )));
        }
        seen |= 1 << k | 1 << l;
    }
    let mut amps: BTreeMap<u64, i64> = BTreeMap::from([(0, 1)]);
    for &(k, l) in pairs {
        let mut next = BTreeMap::new();
        for (bits, a) in amps {
            next.insert(bits | 1 << k, a);
            next.insert(bits | 1 << l, -a);
        }
        amps = next;
    }
    Ok(ExactVector {
        n,
        amps,
        norm_exponent: pairs.len() as u32,
    })
}

/// Normalized pairing state of a canonical matching.
pub fn pairing_state(m: &PerfectMatching) -> ExactVector {
    singlet_product(m.pairs(), m.n()).expect("canonical matching is a valid pair list")
}

/// Exact inner product `<a|b>`.
///
/// Fails when the spin counts differ or when the result would carry an odd
/// power of `2^(-1/2)` and is therefore irrational.
pub fn overlap(a: &ExactVector, b: &ExactVector) -> Result<Rational> {
    if a.n != b.n {
        return Err(Error::invalid(format!(
            "overlap of vectors on {} and {} spins",
            a.n, b.n
        )));
    }
    let (small, large) = if a.amps.len() <= b.amps.len() {
        (a, b)
    } else {
        (b, a)
    };
    let dot: i128 = small
        .amps
        .iter()
        .map(|(bits, &x)| x as i128 * large.amplitude(*bits) as i128)
        .sum();
    let e = a.norm_exponent + b.norm_exponent;
    if dot == 0 {
        return Ok(Rational::from_integer(0));
    }
    if e % 2 == 1 {
        return Err(Error::Domain(
            "overlap carries an odd power of 2^(-1/2) and is not rational".into(),
        ));
    }
    let denom = 1i128 << (e / 2);
    let g = dot.gcd(&denom);
    Ok(Rational::new(
        i64::try_from(dot / g).map_err(|_| Error::Domain("overlap numerator overflow".into()))?,
        i64::try_from(denom / g)
            .map_err(|_| Error::Domain("overlap denominator overflow".into()))?,
    ))
}
