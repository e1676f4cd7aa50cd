use std::fmt::Debug;

use num_traits::{Float, FromPrimitive};

use super::Matrix;

/// Real floating-point scalar accepted by the eigensolver: `f32` or `f64`.
pub trait RealScalar: Float + FromPrimitive + Debug + Send + Sync + 'static {}

impl RealScalar for f32 {}
impl RealScalar for f64 {}

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending.
///
/// Only the upper triangle is trusted to be consistent with the lower one;
/// callers pass symmetric input.
pub fn symmetric_eigenvalues<T: RealScalar>(m: &Matrix<T>) -> Vec<T> {
    assert!(m.is_square(), "eigenvalues need a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let scale = a
        .as_slice()
        .iter()
        .fold(T::zero(), |acc, &x| acc + x * x)
        .sqrt();
    if scale == T::zero() {
        return vec![T::zero(); n];
    }
    let two = T::one() + T::one();
    let tol = T::epsilon() * scale;

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a[(p, q)] * a[(p, q)];
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
            }
        }
    }

    let mut eig = a.diagonal();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalue is NaN"));
    eig
}

/// Groups indices into the connected components of the nonzero pattern of a
/// symmetric matrix. Each component, ordered ascending, is an invariant block.
pub fn structural_blocks<T>(m: &Matrix<T>, is_nonzero: impl Fn(&T) -> bool) -> Vec<Vec<usize>> {
    let n = m.rows();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for r in 0..n {
        for c in r + 1..n {
            if is_nonzero(&m[(r, c)]) || is_nonzero(&m[(c, r)]) {
                let (a, b) = (find(&mut parent, r), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i);
    }
    groups
}

/// Eigenvalues of a symmetric matrix, solving each structural block
/// independently. Sorted ascending.
pub fn blockwise_symmetric_eigenvalues<T: RealScalar>(m: &Matrix<T>) -> Vec<T> {
    use rayon::prelude::*;

    let blocks = structural_blocks(m, |x| *x != T::zero());
    let mut eig: Vec<T> = blocks
        .par_iter()
        .flat_map_iter(|idx| {
            if idx.len() == 1 {
                return vec![m[(idx[0], idx[0])]];
            }
            let sub = Matrix::from_fn(idx.len(), idx.len(), |r, c| m[(idx[r], idx[c])]);
            symmetric_eigenvalues(&sub)
        })
        .collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalue is NaN"));
    eig
}
