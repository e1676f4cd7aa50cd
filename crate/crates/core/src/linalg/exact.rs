use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;

use super::{blockwise_symmetric_eigenvalues, Matrix};
use crate::error::{Error, Result};
use crate::Rational;

/// Square matrix of exact rationals stored as integer numerators over one
/// positive common denominator, kept in lowest terms.
///
/// A double-precision copy is derived on first use.
pub struct ExactMatrix {
    numer: Matrix<i64>,
    denom: i64,
    float_view: OnceLock<Matrix<f64>>,
}

impl ExactMatrix {
    pub fn new(numer: Matrix<i64>, denom: i64) -> Result<Self> {
        if !numer.is_square() {
            return Err(Error::invalid(format!(
                "exact matrix must be square, got {}x{}",
                numer.rows(),
                numer.cols()
            )));
        }
        if denom == 0 {
            return Err(Error::invalid("zero denominator"));
        }
        let mut numer = numer;
        let mut denom = denom;
        if denom < 0 {
            denom = -denom;
            numer.as_mut_slice().iter_mut().for_each(|x| *x = -*x);
        }
        let g = numer
            .as_slice()
            .iter()
            .fold(denom, |g, &x| if x == 0 { g } else { g.gcd(&x) });
        if g > 1 {
            denom /= g;
            numer.as_mut_slice().iter_mut().for_each(|x| *x /= g);
        }
        Ok(ExactMatrix {
            numer,
            denom,
            float_view: OnceLock::new(),
        })
    }

    /// Collects rational entries onto their least common denominator.
    pub fn from_rationals(m: &Matrix<Rational>) -> Result<Self> {
        let denom = m.as_slice().iter().fold(1i64, |l, x| l.lcm(x.denom()));
        let numer = m.map(|x| x.numer() * (denom / x.denom()));
        Self::new(numer, denom)
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(Matrix::zeros(dim, dim), 1).expect("valid shape")
    }

    pub fn dim(&self) -> usize {
        self.numer.rows()
    }

    /// Number of spins when the dimension is a power of two.
    pub fn spin_count(&self) -> Option<usize> {
        let d = self.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    pub fn numer(&self) -> &Matrix<i64> {
        &self.numer
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    #[inline]
    pub fn numer_at(&self, r: usize, c: usize) -> i64 {
        self.numer[(r, c)]
    }

    pub fn entry(&self, r: usize, c: usize) -> Rational {
        Rational::new(self.numer[(r, c)], self.denom)
    }

    pub fn trace(&self) -> Rational {
        let t: i128 = (0..self.dim()).map(|i| self.numer[(i, i)] as i128).sum();
        ratio_from_i128(t, self.denom)
    }

    pub fn is_symmetric(&self) -> bool {
        self.numer.is_symmetric()
    }

    pub fn nonzero_count(&self) -> usize {
        self.numer.count_nonzero()
    }

    pub fn to_rationals(&self) -> Matrix<Rational> {
        self.numer.map(|&x| Rational::new(x, self.denom))
    }

    /// New matrix with the same denominator and a transformed numerator grid.
    pub fn with_numer(&self, numer: Matrix<i64>) -> Result<Self> {
        Self::new(numer, self.denom)
    }

    pub fn float_view(&self) -> &Matrix<f64> {
        self.float_view.get_or_init(|| {
            let d = self.denom as f64;
            self.numer.map(|&x| x as f64 / d)
        })
    }

    /// Largest entrywise absolute difference of the float views.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.float_view()
            .as_slice()
            .iter()
            .zip(other.float_view().as_slice())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of the float view, ascending. Requires a symmetric matrix.
    pub fn eigenvalues(&self) -> Vec<f64> {
        debug_assert!(self.is_symmetric());
        blockwise_symmetric_eigenvalues(self.float_view())
    }
}

pub(crate) fn ratio_from_i128(numer: i128, denom: i64) -> Rational {
    let g = numer.gcd(&(denom as i128));
    let (n, d) = if g == 0 {
        (0, 1)
    } else {
        (numer / g, denom as i128 / g)
    };
    Rational::new(
        i64::try_from(n).expect("reduced numerator fits in i64"),
        i64::try_from(d).expect("reduced denominator fits in i64"),
    )
}

impl Clone for ExactMatrix {
    fn clone(&self) -> Self {
        ExactMatrix {
            numer: self.numer.clone(),
            denom: self.denom,
            float_view: self.float_view.clone(),
        }
    }
}

impl PartialEq for ExactMatrix {
    fn eq(&self, other: &Self) -> bool {
        // Both sides are in lowest terms, so representation equality is value equality.
        self.denom == other.denom && self.numer == other.numer
    }
}

impl Eq for ExactMatrix {}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExactMatrix")
            .field("dim", &self.dim())
            .field("denom", &self.denom)
            .field("nonzero", &self.nonzero_count())
            .finish()
    }
}
