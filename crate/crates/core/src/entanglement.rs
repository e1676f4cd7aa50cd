//! Partial transposition, eigenvalue negativity, the principal-minor
//! witness, and PPT checks for pair states.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{structural_blocks, symmetric_eigenvalues, ExactMatrix, Matrix};
use crate::reduction::{two_spin_reduced_analytic, ParentSize};
use crate::spin::SpinBasisState;
use crate::{Limits, Rational};

/// Ordered split of `0..n_total` into parts A and B.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    part_a: Vec<usize>,
    part_b: Vec<usize>,
    n_total: usize,
}

impl Bipartition {
    /// Part B is the complement of `part_a`.
    pub fn new(part_a: &[usize], n_total: usize) -> Result<Self> {
        let mut a = part_a.to_vec();
        a.sort_unstable();
        a.dedup();
        if a.len() != part_a.len() {
            return Err(Error::invalid(format!("part A {part_a:?} repeats a spin")));
        }
        if let Some(&k) = a.iter().find(|&&k| k >= n_total) {
            return Err(Error::invalid(format!("spin {k} outside 0..{n_total}")));
        }
        let b: Vec<usize> = (0..n_total).filter(|k| !a.contains(k)).collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::invalid(
                "both parts of a bipartition must be non-empty",
            ));
        }
        Ok(Bipartition {
            part_a: a,
            part_b: b,
            n_total,
        })
    }

    /// Checks that `part_a` and `part_b` are disjoint and cover `0..n_total`.
    pub fn from_parts(part_a: &[usize], part_b: &[usize], n_total: usize) -> Result<Self> {
        let bp = Self::new(part_a, n_total)?;
        let mut b = part_b.to_vec();
        b.sort_unstable();
        if b != bp.part_b {
            return Err(Error::invalid(format!(
                "parts {part_a:?} and {part_b:?} do not partition 0..{n_total}"
            )));
        }
        Ok(bp)
    }

    pub fn part_a(&self) -> &[usize] {
        &self.part_a
    }

    pub fn part_b(&self) -> &[usize] {
        &self.part_b
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn mask_a(&self) -> usize {
        self.part_a.iter().fold(0, |m, &k| m | 1 << k)
    }

    pub fn mask_b(&self) -> usize {
        self.part_b.iter().fold(0, |m, &k| m | 1 << k)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|k| k.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}|{}", join(&self.part_a), join(&self.part_b))
    }
}

/// Transposes the B indices: entry `((m_A,k_B),(n_A,l_B))` of the result is
/// entry `((m_A,l_B),(n_A,k_B))` of the input. `mask_b` selects B's bits.
pub fn partial_transpose_matrix<T: Copy>(m: &Matrix<T>, mask_b: usize) -> Matrix<T> {
    let mask_a = !mask_b;
    Matrix::from_fn(m.rows(), m.cols(), |r, c| {
        m[((r & mask_a) | (c & mask_b), (c & mask_a) | (r & mask_b))]
    })
}

pub fn partial_transpose(rho: &ExactMatrix, bp: &Bipartition) -> Result<ExactMatrix> {
    check_dims(rho, bp)?;
    rho.with_numer(partial_transpose_matrix(rho.numer(), bp.mask_b()))
}

fn check_dims(rho: &ExactMatrix, bp: &Bipartition) -> Result<()> {
    if rho.dim() != 1 << bp.n_total {
        return Err(Error::invalid(format!(
            "bipartition of {} spins applied to a {}x{} matrix",
            bp.n_total,
            rho.dim(),
            rho.dim()
        )));
    }
    Ok(())
}

/// Spectrum of the partial transpose and the doubled negativity.
#[derive(Debug, Clone, Serialize)]
pub struct NegativityReport {
    pub split: String,
    /// Eigenvalues of the partial transpose, descending.
    pub eigenvalues: Vec<f64>,
    /// `-2 Σ λ` over the negative eigenvalues.
    pub negativity: f64,
    pub min_eigenvalue: f64,
}

impl NegativityReport {
    pub fn is_entangled(&self, tol: f64) -> bool {
        self.min_eigenvalue < -tol
    }
}

/// Eigenvalues below this count as negative when summing the negativity.
pub const NEGATIVE_EIGENVALUE_TOLERANCE: f64 = 1e-12;

pub fn negativity_measure(rho: &ExactMatrix, bp: &Bipartition) -> Result<NegativityReport> {
    negativity_measure_with(rho, bp, &Limits::default())
}

pub fn negativity_measure_with(
    rho: &ExactMatrix,
    bp: &Bipartition,
    limits: &Limits,
) -> Result<NegativityReport> {
    check_dims(rho, bp)?;
    limits.check_eigensolve(bp.n_total, "sylvester_witness")?;
    let pt = partial_transpose(rho, bp)?;
    let mut eigenvalues = pt.eigenvalues();
    eigenvalues.reverse();
    let negativity = -2.0
        * eigenvalues
            .iter()
            .filter(|&&l| l < -NEGATIVE_EIGENVALUE_TOLERANCE)
            .sum::<f64>();
    let min_eigenvalue = eigenvalues.last().copied().unwrap_or(0.0);
    Ok(NegativityReport {
        split: bp.to_string(),
        eigenvalues,
        negativity,
        min_eigenvalue,
    })
}

/// A negative 2x2 principal minor of a partially transposed matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub split: String,
    /// Source element `ρ_ij` before transposition.
    pub source_row: usize,
    pub source_col: usize,
    pub source_row_label: String,
    pub source_col_label: String,
    #[serde(with = "crate::serde_rational")]
    pub source_value: Rational,
    /// Where the element lands after transposition: `(i', j')`.
    pub row: usize,
    pub col: usize,
    pub row_label: String,
    pub col_label: String,
    /// Twice the total S_z of `i'` and `j'`.
    pub row_twice_sz: i32,
    pub col_twice_sz: i32,
    #[serde(with = "crate::serde_rational")]
    pub diag_row: Rational,
    #[serde(with = "crate::serde_rational")]
    pub diag_col: Rational,
    /// `ρᵀ_{i'i'} ρᵀ_{j'j'} - |ρᵀ_{i'j'}|²`.
    #[serde(with = "crate::serde_rational")]
    pub minor: Rational,
}

/// Checks one source element `(i, j)` as a witness candidate.
///
/// Qualifies when `ρ_ij ≠ 0` and the B parts of `i` and `j` have different,
/// nonzero S_z; the transposed element then sits between two basis states of
/// nonzero total S_z. Returns the report when the resulting minor is negative.
pub fn witness_at(
    rho: &ExactMatrix,
    bp: &Bipartition,
    i: usize,
    j: usize,
) -> Option<WitnessReport> {
    let n = bp.n_total;
    let (mask_a, mask_b) = (bp.mask_a(), bp.mask_b());
    let nb = bp.part_b.len() as i32;
    let b_sz = |x: usize| 2 * (x & mask_b).count_ones() as i32 - nb;

    let value = rho.numer_at(i, j);
    if i == j || value == 0 {
        return None;
    }
    let (sz_l, sz_k) = (b_sz(i), b_sz(j));
    if sz_l == sz_k || sz_l == 0 || sz_k == 0 {
        return None;
    }
    let row = (i & mask_a) | (j & mask_b);
    let col = (j & mask_a) | (i & mask_b);
    // Partial transposition leaves the diagonal in place.
    let d_row = rho.numer_at(row, row) as i128;
    let d_col = rho.numer_at(col, col) as i128;
    let minor_numer = d_row * d_col - (value as i128) * (value as i128);
    if minor_numer >= 0 {
        return None;
    }
    let denom = rho.denom() as i128;
    let minor = Rational::new(
        i64::try_from(minor_numer).ok()?,
        i64::try_from(denom * denom).ok()?,
    );
    let label = |b: usize| {
        SpinBasisState::new(b as u64, n)
            .map(|s| s.to_string())
            .unwrap_or_default()
    };
    let sz = |b: usize| 2 * b.count_ones() as i32 - n as i32;
    Some(WitnessReport {
        split: bp.to_string(),
        source_row: i,
        source_col: j,
        source_row_label: label(i),
        source_col_label: label(j),
        source_value: rho.entry(i, j),
        row,
        col,
        row_label: label(row),
        col_label: label(col),
        row_twice_sz: sz(row),
        col_twice_sz: sz(col),
        diag_row: rho.entry(row, row),
        diag_col: rho.entry(col, col),
        minor,
    })
}

/// First witness in row-major scan order of source elements, if any.
/// Needs no eigensolve.
pub fn sylvester_witness(rho: &ExactMatrix, bp: &Bipartition) -> Result<Option<WitnessReport>> {
    check_dims(rho, bp)?;
    let dim = rho.dim();
    Ok((0..dim)
        .into_par_iter()
        .find_map_first(|i| (0..dim).find_map(|j| witness_at(rho, bp, i, j))))
}

/// Result of the PPT test on a two-spin pair state.
#[derive(Debug, Clone, Serialize)]
pub struct PairPptReport {
    pub parent: String,
    pub is_ppt: bool,
    /// Exact spectrum of the partial transpose, descending.
    #[serde(with = "crate::serde_rational::vec")]
    pub exact_eigenvalues: Vec<Rational>,
    #[serde(with = "crate::serde_rational")]
    pub min_eigenvalue: Rational,
    /// Float spectrum from the Jacobi eigensolve, descending.
    pub eigenvalues: Vec<f64>,
}

/// Exact eigenvalues when every structural block is 1x1 or a 2x2 block with
/// equal diagonal entries (`a ± b`).
pub fn exact_block_eigenvalues(m: &ExactMatrix) -> Option<Vec<Rational>> {
    let blocks = structural_blocks(m.numer(), |x| !x.is_zero());
    let mut eig = Vec::with_capacity(m.dim());
    for block in blocks {
        match block.as_slice() {
            [i] => eig.push(m.entry(*i, *i)),
            [i, j] if m.numer_at(*i, *i) == m.numer_at(*j, *j) => {
                eig.push(m.entry(*i, *i) + m.entry(*i, *j));
                eig.push(m.entry(*i, *i) - m.entry(*i, *j));
            }
            _ => return None,
        }
    }
    eig.sort_unstable_by(|a, b| b.cmp(a));
    Some(eig)
}

/// Partially transposes the closed-form pair state of an `n`-spin singlet and
/// reports whether it stays positive semidefinite.
pub fn ppt_separability_pair(parent: ParentSize) -> Result<PairPptReport> {
    let pair = two_spin_reduced_analytic(parent)?.to_density_matrix();
    let bp = Bipartition::new(&[0], 2)?;
    let pt = partial_transpose(&pair, &bp)?;
    let exact = exact_block_eigenvalues(&pt)
        .ok_or_else(|| Error::Domain("pair-state partial transpose lost its block form".into()))?;
    let min = *exact.last().expect("four eigenvalues");
    let mut eigenvalues = symmetric_eigenvalues(pt.float_view());
    eigenvalues.reverse();
    Ok(PairPptReport {
        parent: parent.to_string(),
        is_ppt: min >= Rational::zero(),
        exact_eigenvalues: exact,
        min_eigenvalue: min,
        eigenvalues,
    })
}
