//! Partial traces to arbitrary spin subsets, and the closed-form two-spin
//! reduced state with its pair correlation.

use std::fmt;
use std::ops::Add;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::check_even;
use crate::linalg::{ExactMatrix, Matrix};
use crate::rho::{build_rho_pairing_with, ExactDensityMatrix};
use crate::spin::{pauli_expectation, Pauli};
use crate::{Limits, Rational};

/// Spins retained by a partial trace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubsystemMask {
    keep: Vec<usize>,
    n_total: usize,
}

impl SubsystemMask {
    pub fn new(keep: &[usize], n_total: usize) -> Result<Self> {
        let mut sorted = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(Error::invalid("mask must keep at least one spin"));
        }
        if sorted.len() != keep.len() {
            return Err(Error::invalid(format!("mask {keep:?} repeats a spin")));
        }
        if let Some(&k) = sorted.iter().find(|&&k| k >= n_total) {
            return Err(Error::invalid(format!("spin {k} outside 0..{n_total}")));
        }
        Ok(SubsystemMask {
            keep: sorted,
            n_total,
        })
    }

    pub fn keep(&self) -> &[usize] {
        &self.keep
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn traced(&self) -> Vec<usize> {
        (0..self.n_total)
            .filter(|k| !self.keep.contains(k))
            .collect()
    }
}

impl fmt::Display for SubsystemMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.keep.iter().map(|k| k.to_string()).collect();
        write!(f, "keep={}", parts.join(","))
    }
}

/// Spreads the low bits of `x` onto the bit positions `positions`.
fn scatter(x: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (t, &p)| acc | (x >> t & 1) << p)
}

/// Partial trace of a `2^n_total` square matrix, keeping `keep` (ascending).
/// Bit `t` of a reduced index is spin `keep[t]`.
pub fn partial_trace_matrix<T>(m: &Matrix<T>, n_total: usize, keep: &[usize]) -> Matrix<T>
where
    T: Copy + Zero + Add<Output = T>,
{
    assert_eq!(m.rows(), 1 << n_total, "matrix is not on {n_total} spins");
    let rest: Vec<usize> = (0..n_total).filter(|k| !keep.contains(k)).collect();
    let kept: Vec<usize> = (0..1usize << keep.len())
        .map(|a| scatter(a, keep))
        .collect();
    let env: Vec<usize> = (0..1usize << rest.len())
        .map(|e| scatter(e, &rest))
        .collect();
    Matrix::from_fn(kept.len(), kept.len(), |a, b| {
        env.iter()
            .fold(T::zero(), |acc, &e| acc + m[(kept[a] | e, kept[b] | e)])
    })
}

pub fn partial_trace(rho: &ExactDensityMatrix, mask: &SubsystemMask) -> Result<ExactDensityMatrix> {
    if mask.n_total != rho.n() {
        return Err(Error::invalid(format!(
            "mask is for {} spins but the matrix has {}",
            mask.n_total,
            rho.n()
        )));
    }
    let reduced = partial_trace_matrix(rho.numer(), rho.n(), &mask.keep);
    ExactDensityMatrix::new(ExactMatrix::new(reduced, rho.denom())?)
}

/// Size of the system a pair was taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParentSize {
    Finite(u64),
    /// The large-N limit, where the pair is maximally mixed.
    Infinite,
}

impl fmt::Display for ParentSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParentSize::Finite(n) => write!(f, "{n}"),
            ParentSize::Infinite => f.write_str("infinity"),
        }
    }
}

impl From<u64> for ParentSize {
    fn from(n: u64) -> Self {
        ParentSize::Finite(n)
    }
}

/// Reduced state of any two spins: singlet weight `w_s` on `|S⟩⟨S|` and
/// `w_t` on each of the three triplet projectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoSpinWeights {
    pub parent: ParentSize,
    pub singlet: Rational,
    pub triplet_each: Rational,
}

impl TwoSpinWeights {
    /// `w_t I + (w_s - w_t) |S⟩⟨S|` in the two-spin computational basis.
    pub fn to_density_matrix(&self) -> ExactDensityMatrix {
        let half_gap = (self.singlet - self.triplet_each) / 2;
        let entries = Matrix::from_fn(4, 4, |r, c| {
            let mut x = if r == c {
                self.triplet_each
            } else {
                Rational::zero()
            };
            // |S⟩ = (|01⟩ - |10⟩)/√2 lives on indices 1 and 2
            if (1..=2).contains(&r) && (1..=2).contains(&c) {
                x += if r == c { half_gap } else { -half_gap };
            }
            x
        });
        let m = ExactMatrix::from_rationals(&entries).expect("4x4 rational matrix");
        ExactDensityMatrix::new(m).expect("weights sum to one")
    }

    /// `Tr(σ_a σ_a ρ)` for any axis `a`: `w_t - w_s`.
    pub fn same_axis_correlator(&self) -> Rational {
        self.triplet_each - self.singlet
    }

    /// Reads the weights off a two-spin state, if it has this form.
    pub fn from_pair_state(rho: &ExactDensityMatrix, parent: ParentSize) -> Option<Self> {
        if rho.n() != 2 {
            return None;
        }
        let triplet_each = rho.entry(0, 0);
        let singlet = (rho.entry(1, 1) + rho.entry(2, 2)) / 2 - rho.entry(1, 2);
        let w = TwoSpinWeights {
            parent,
            singlet,
            triplet_each,
        };
        (w.to_density_matrix() == *rho).then_some(w)
    }
}

/// Closed-form pair weights: `w_s = (N+2)/(4(N-1))`, `w_t = (N-2)/(4(N-1))`;
/// both `1/4` in the infinite limit.
pub fn two_spin_reduced_analytic(parent: ParentSize) -> Result<TwoSpinWeights> {
    let (singlet, triplet_each) = match parent {
        ParentSize::Infinite => (Rational::new(1, 4), Rational::new(1, 4)),
        ParentSize::Finite(n) => {
            check_even_u64(n)?;
            let n = n as i64;
            (
                Rational::new(n + 2, 4 * (n - 1)),
                Rational::new(n - 2, 4 * (n - 1)),
            )
        }
    };
    Ok(TwoSpinWeights {
        parent,
        singlet,
        triplet_each,
    })
}

fn check_even_u64(n: u64) -> Result<()> {
    if n > i64::MAX as u64 / 8 {
        return Err(Error::invalid(format!("particle count {n} too large")));
    }
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "particle count must be even and >= 2, got {n}"
        )));
    }
    Ok(())
}

/// `⟨S₁·S₂⟩ / |S|² = -1/(N-1)`; zero in the infinite limit.
pub fn pair_correlation(parent: ParentSize) -> Result<Rational> {
    match parent {
        ParentSize::Infinite => Ok(Rational::zero()),
        ParentSize::Finite(n) => {
            check_even_u64(n)?;
            Ok(Rational::new(-1, n as i64 - 1))
        }
    }
}

/// `Tr((σ₁·σ₂) ρ) / 3` for a two-spin state.
pub fn pair_correlation_of(rho_pair: &ExactMatrix) -> Result<Rational> {
    if rho_pair.dim() != 4 {
        return Err(Error::invalid(
            "pair correlation needs a 4x4 two-spin matrix",
        ));
    }
    let mut total = Rational::zero();
    for p in [Pauli::X, Pauli::Y, Pauli::Z] {
        total += pauli_expectation(rho_pair, &[(0, p), (1, p)])?;
    }
    Ok(total / 3)
}

/// Builds `ρ^N`, traces down to spins `i` and `j`, and evaluates the pair correlation.
pub fn pair_correlation_numeric(n: usize, i: usize, j: usize, limits: &Limits) -> Result<Rational> {
    check_even(n)?;
    let rho = build_rho_pairing_with(n, limits)?;
    let pair = partial_trace(&rho, &SubsystemMask::new(&[i, j], n)?)?;
    pair_correlation_of(&pair)
}

/// Serializable view of the pair weights.
#[derive(Debug, Clone, Serialize)]
pub struct TwoSpinWeightsRecord {
    pub parent: String,
    #[serde(with = "crate::serde_rational")]
    pub singlet: Rational,
    #[serde(with = "crate::serde_rational")]
    pub triplet_each: Rational,
}

impl From<&TwoSpinWeights> for TwoSpinWeightsRecord {
    fn from(w: &TwoSpinWeights) -> Self {
        TwoSpinWeightsRecord {
            parent: w.parent.to_string(),
            singlet: w.singlet,
            triplet_each: w.triplet_each,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rho::build_rho_pairing;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn weights_closed_form() {
        let w2 = two_spin_reduced_analytic(ParentSize::Finite(2)).unwrap();
        assert_eq!((w2.singlet, w2.triplet_each), (r(1, 1), r(0, 1)));
        let w4 = two_spin_reduced_analytic(ParentSize::Finite(4)).unwrap();
        assert_eq!((w4.singlet, w4.triplet_each), (r(1, 2), r(1, 6)));
        let w6 = two_spin_reduced_analytic(ParentSize::Finite(6)).unwrap();
        assert_eq!((w6.singlet, w6.triplet_each), (r(2, 5), r(1, 5)));
        let inf = two_spin_reduced_analytic(ParentSize::Infinite).unwrap();
        assert_eq!((inf.singlet, inf.triplet_each), (r(1, 4), r(1, 4)));
        for n in (2..200).step_by(2) {
            let w = two_spin_reduced_analytic(ParentSize::Finite(n)).unwrap();
            assert_eq!(w.singlet + w.triplet_each * 3, r(1, 1));
        }
        assert!(two_spin_reduced_analytic(ParentSize::Finite(5)).is_err());
    }

    #[test]
    fn infinite_limit_is_maximally_mixed() {
        let rho = two_spin_reduced_analytic(ParentSize::Infinite)
            .unwrap()
            .to_density_matrix();
        assert_eq!(rho, ExactDensityMatrix::maximally_mixed(2).unwrap());
    }

    #[test]
    fn single_spin_is_maximally_mixed() {
        for n in [2, 4, 6] {
            let rho = build_rho_pairing(n).unwrap();
            for k in 0..n {
                let one = partial_trace(&rho, &SubsystemMask::new(&[k], n).unwrap()).unwrap();
                assert_eq!(one, ExactDensityMatrix::maximally_mixed(1).unwrap());
            }
        }
    }

    #[test]
    fn four_spin_pair_matches_weights() {
        let rho = build_rho_pairing(4).unwrap();
        let pair = partial_trace(&rho, &SubsystemMask::new(&[0, 1], 4).unwrap()).unwrap();
        let w = TwoSpinWeights::from_pair_state(&pair, ParentSize::Finite(4)).unwrap();
        assert_eq!((w.singlet, w.triplet_each), (r(1, 2), r(1, 6)));
    }

    #[test]
    fn six_spin_pair_matches_weights() {
        let rho = build_rho_pairing(6).unwrap();
        let pair = partial_trace(&rho, &SubsystemMask::new(&[2, 5], 6).unwrap()).unwrap();
        let expect = two_spin_reduced_analytic(ParentSize::Finite(6)).unwrap();
        assert_eq!(pair, expect.to_density_matrix());
    }

    #[test]
    fn correlations() {
        assert_eq!(pair_correlation(ParentSize::Finite(2)).unwrap(), r(-1, 1));
        assert_eq!(pair_correlation(ParentSize::Finite(4)).unwrap(), r(-1, 3));
        assert_eq!(pair_correlation(ParentSize::Infinite).unwrap(), r(0, 1));
        assert_eq!(
            pair_correlation_numeric(4, 1, 3, &Limits::default()).unwrap(),
            r(-1, 3)
        );
    }

    #[test]
    fn mask_validation() {
        assert!(SubsystemMask::new(&[], 4).is_err());
        assert!(SubsystemMask::new(&[1, 1], 4).is_err());
        assert!(SubsystemMask::new(&[4], 4).is_err());
        let m = SubsystemMask::new(&[2, 0], 4).unwrap();
        assert_eq!(m.keep(), &[0, 2]);
        assert_eq!(m.traced(), vec![1, 3]);
        assert_eq!(m.to_string(), "keep=0,2");
        let rho = build_rho_pairing(2).unwrap();
        assert!(partial_trace(&rho, &m).is_err());
    }

    #[test]
    fn generic_over_floats() {
        let rho = build_rho_pairing(4).unwrap();
        let reduced = partial_trace_matrix(rho.float_view(), 4, &[0, 1]);
        assert!((reduced[(1, 2)] - (-1.0 / 6.0)).abs() < 1e-15);
        let single = rho.float_view().map(|&x| x as f32);
        let reduced32 = partial_trace_matrix(&single, 4, &[3]);
        assert!((reduced32[(0, 0)] - 0.5).abs() < 1e-6);
    }
}
