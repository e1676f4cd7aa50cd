use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Matrix};

/// Relabels spins: spin `k` of the input becomes spin `perm[k]` of the output.
pub fn permute_spins<T: Copy>(m: &Matrix<T>, perm: &[usize]) -> Matrix<T> {
    let n = perm.len();
    assert_eq!(m.rows(), 1 << n, "matrix is not on {n} spins");
    let map = |b: usize| {
        perm.iter()
            .enumerate()
            .fold(0usize, |acc, (k, &to)| acc | (b >> k & 1) << to)
    };
    let images: Vec<usize> = (0..m.rows()).map(map).collect();
    let mut out = m.clone();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out[(images[r], images[c])] = m[(r, c)];
        }
    }
    out
}

pub fn permute_spins_exact(m: &ExactMatrix, perm: &[usize]) -> Result<ExactMatrix> {
    let n = m
        .spin_count()
        .ok_or_else(|| Error::invalid("matrix dimension is not a power of two"))?;
    let mut check = perm.to_vec();
    check.sort_unstable();
    if check != (0..n).collect::<Vec<_>>() {
        return Err(Error::invalid(format!(
            "{perm:?} is not a permutation of 0..{n}"
        )));
    }
    m.with_numer(permute_spins(m.numer(), perm))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Numerators (over `m.denom()`) of the commutator `[m, A]` where `A` is the
/// real form of the total spin along `axis`: `Σσ_x`, `-iΣσ_y`, or `Σσ_z`.
/// `[m, Σσ_y]` vanishes exactly when this does.
pub fn total_spin_commutator(m: &ExactMatrix, axis: Axis) -> Result<Matrix<i64>> {
    let n = m
        .spin_count()
        .ok_or_else(|| Error::invalid("matrix dimension is not a power of two"))?;
    let dim = m.dim();
    let numer = m.numer();
    // A|c> = Σ_k coeff(c, k) |c ^ flip(k)>
    let coeff = |c: usize, k: usize| -> i64 {
        let up = c >> k & 1 == 1;
        match axis {
            Axis::X => 1,
            Axis::Y | Axis::Z => {
                if up {
                    1
                } else {
                    -1
                }
            }
        }
    };
    let flips = axis != Axis::Z;
    Ok(Matrix::from_fn(dim, dim, |r, c| {
        let mut acc: i64 = 0;
        for k in 0..n {
            if flips {
                // (mA)_{rc} = m_{r, c^k} A_{c^k, c};  (Am)_{rc} = A_{r, r^k} m_{r^k, c}
                let ck = c ^ 1 << k;
                let rk = r ^ 1 << k;
                acc += numer[(r, ck)] * coeff(c, k) - coeff(rk, k) * numer[(rk, c)];
            } else {
                acc += numer[(r, c)] * (coeff(c, k) - coeff(r, k));
            }
        }
        acc
    }))
}
