//! CHSH correlator for one spin (Alice) against the remaining `N - 1` spins
//! (Bob), by the full density matrix and by the closed-form pair state.
//!
//! Alice measures `Q = σ_z` and `R = σ_x` on her spin; Bob measures
//! `S = -(Θ_z + Θ_x)/√2` and `T = (Θ_z - Θ_x)/√2` with `Θ_a = Σ σ_a` over his
//! spins. Each correlator is an exact rational multiple of `√2`; the float
//! value is formed only at the end.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::reduction::{two_spin_reduced_analytic, ParentSize};
use crate::rho::{build_rho_pairing_with, ExactDensityMatrix};
use crate::spin::{pauli_expectation, Pauli};
use crate::{Limits, Rational};

pub const CLASSICAL_BOUND: f64 = 2.0;
pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;

/// The four measurement operators for a given particle count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChshOperatorSet {
    n: u64,
    alice: usize,
}

/// Spectral norms of the raw operators; Bob's grow with `N - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorNorms {
    pub q: f64,
    pub r: f64,
    pub s: f64,
    pub t: f64,
}

impl ChshOperatorSet {
    pub fn new(n: u64, alice: usize) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "particle count must be even and >= 2, got {n}"
            )));
        }
        if alice as u64 >= n {
            return Err(Error::invalid(format!(
                "Alice's spin {alice} outside 0..{n}"
            )));
        }
        Ok(ChshOperatorSet { n, alice })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn alice(&self) -> usize {
        self.alice
    }

    pub fn bob(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n as usize).filter(move |&k| k != self.alice)
    }

    /// `‖(±Θ_z - Θ_x)/√2‖ = N - 1`: every spin term has eigenvalues `±1`.
    pub fn operator_norms(&self) -> OperatorNorms {
        let bob = (self.n - 1) as f64;
        OperatorNorms {
            q: 1.0,
            r: 1.0,
            s: bob,
            t: bob,
        }
    }

    /// Dense `Θ_z` or `Θ_x` on all `n` spins. Intended for small `n`.
    pub fn theta_matrix(&self, axis: Pauli) -> Result<Matrix<i64>> {
        if self.n > 12 {
            return Err(Error::UnsupportedSize(format!(
                "dense Θ for n = {}",
                self.n
            )));
        }
        let dim = 1usize << self.n;
        let mut m = Matrix::zeros(dim, dim);
        for c in 0..dim as u64 {
            for k in self.bob() {
                let (r, phase) = axis.act(c, k);
                let v = match phase {
                    0 => 1,
                    2 => -1,
                    _ => {
                        return Err(Error::invalid("Θ is only built for the z and x axes"));
                    }
                };
                m[(r as usize, c as usize)] += v;
            }
        }
        Ok(m)
    }
}

/// Which evaluation produced a CHSH value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Traces against the full N-spin density matrix.
    Full,
    /// Uses the closed-form pair state for each of Bob's spins.
    Reduced,
    /// Traces against a caller-supplied density matrix.
    Override,
}

/// `⟨σ_a^A Θ_b⟩` for `a, b ∈ {z, x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisSums {
    pub zz: Rational,
    pub zx: Rational,
    pub xz: Rational,
    pub xx: Rational,
}

/// The four correlators, each as its coefficient of `√2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChshCorrelators {
    #[serde(with = "crate::serde_rational")]
    pub qs: Rational,
    #[serde(with = "crate::serde_rational")]
    pub rs: Rational,
    #[serde(with = "crate::serde_rational")]
    pub rt: Rational,
    #[serde(with = "crate::serde_rational")]
    pub qt: Rational,
}

impl ChshCorrelators {
    pub fn from_axis_sums(s: &AxisSums) -> Self {
        // ⟨QS⟩ = -(zz + zx)/√2 = -(zz + zx)/2 · √2, and likewise for the others.
        ChshCorrelators {
            qs: -(s.zz + s.zx) / 2,
            rs: -(s.xz + s.xx) / 2,
            rt: (s.xz - s.xx) / 2,
            qt: (s.zz - s.zx) / 2,
        }
    }

    /// Coefficient of `√2` in `⟨QS⟩ + ⟨RS⟩ + ⟨RT⟩ - ⟨QT⟩`.
    pub fn sum_over_sqrt2(&self) -> Rational {
        self.qs + self.rs + self.rt - self.qt
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChshReport {
    pub n: u64,
    pub route: Route,
    pub alice: usize,
    pub value: f64,
    /// `value / √2`, exact.
    #[serde(with = "crate::serde_rational")]
    pub value_over_sqrt2: Rational,
    pub correlators: ChshCorrelators,
    pub classical_bound: f64,
    pub tsirelson_bound: f64,
    pub violated: bool,
    pub operator_norms: OperatorNorms,
}

fn to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn report(ops: &ChshOperatorSet, route: Route, sums: &AxisSums) -> ChshReport {
    let correlators = ChshCorrelators::from_axis_sums(sums);
    let coeff = correlators.sum_over_sqrt2();
    // coeff·√2 > 2  ⇔  coeff > 0 and coeff² > 2
    let violated = coeff.is_positive() && coeff * coeff > Rational::from_integer(2);
    ChshReport {
        n: ops.n,
        route,
        alice: ops.alice,
        value: to_f64(coeff) * std::f64::consts::SQRT_2,
        value_over_sqrt2: coeff,
        correlators,
        classical_bound: CLASSICAL_BOUND,
        tsirelson_bound: TSIRELSON_BOUND,
        violated,
        operator_norms: ops.operator_norms(),
    }
}

/// Axis sums traced against an explicit density matrix.
pub fn axis_sums_full(rho: &ExactDensityMatrix, alice: usize) -> Result<AxisSums> {
    let ops = ChshOperatorSet::new(rho.n() as u64, alice)?;
    let mut sums = AxisSums {
        zz: Rational::zero(),
        zx: Rational::zero(),
        xz: Rational::zero(),
        xx: Rational::zero(),
    };
    for i in ops.bob() {
        let e = |a: Pauli, b: Pauli| pauli_expectation(rho, &[(alice, a), (i, b)]);
        sums.zz += e(Pauli::Z, Pauli::Z)?;
        sums.zx += e(Pauli::Z, Pauli::X)?;
        sums.xz += e(Pauli::X, Pauli::Z)?;
        sums.xx += e(Pauli::X, Pauli::X)?;
    }
    Ok(sums)
}

/// CHSH value of `ρ^N` with spin 0 as Alice.
pub fn chsh_value_full(n: usize) -> Result<ChshReport> {
    chsh_value_full_with(n, 0, &Limits::default())
}

pub fn chsh_value_full_with(n: usize, alice: usize, limits: &Limits) -> Result<ChshReport> {
    let rho = build_rho_pairing_with(n, limits)?;
    let ops = ChshOperatorSet::new(n as u64, alice)?;
    Ok(report(&ops, Route::Full, &axis_sums_full(&rho, alice)?))
}

/// CHSH value for any density matrix, e.g. a product or pair state.
pub fn chsh_for_density(rho: &ExactDensityMatrix, alice: usize) -> Result<ChshReport> {
    let ops = ChshOperatorSet::new(rho.n() as u64, alice)?;
    Ok(report(&ops, Route::Override, &axis_sums_full(rho, alice)?))
}

/// CHSH value from the closed-form pair state; O(1) in `n`.
pub fn chsh_value_reduced(n: u64) -> Result<ChshReport> {
    let ops = ChshOperatorSet::new(n, 0)?;
    let pair = two_spin_reduced_analytic(ParentSize::Finite(n))?.to_density_matrix();
    // Every (Alice, i) pair has the same reduced state.
    let bob = Rational::from_integer(n as i64 - 1);
    let e = |a: Pauli, b: Pauli| -> Result<Rational> {
        Ok(pauli_expectation(&pair, &[(0, a), (1, b)])? * bob)
    };
    let sums = AxisSums {
        zz: e(Pauli::Z, Pauli::Z)?,
        zx: e(Pauli::Z, Pauli::X)?,
        xz: e(Pauli::X, Pauli::Z)?,
        xx: e(Pauli::X, Pauli::X)?,
    };
    Ok(report(&ops, Route::Reduced, &sums))
}

/// CHSH report by the requested route.
pub fn chsh_classical_bound_check(n: u64, route: Route) -> Result<ChshReport> {
    match route {
        Route::Reduced => chsh_value_reduced(n),
        Route::Full => {
            let n = usize::try_from(n).map_err(|_| Error::invalid("n too large"))?;
            chsh_value_full(n)
        }
        Route::Override => Err(Error::invalid(
            "the override route needs a density matrix; use chsh_for_density",
        )),
    }
}
