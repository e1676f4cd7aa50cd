use crate::error::{Error, Result};
use crate::linalg::ratio_from_i128;
use crate::linalg::ExactMatrix;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    /// `σ|bits⟩ = i^phase |bits'⟩` for the operator acting on spin `k`.
    #[inline]
    pub fn act(self, bits: u64, k: usize) -> (u64, u8) {
        let up = bits >> k & 1 == 1;
        match self {
            Pauli::X => (bits ^ 1 << k, 0),
            Pauli::Y => (bits ^ 1 << k, if up { 1 } else { 3 }),
            Pauli::Z => (bits, if up { 0 } else { 2 }),
        }
    }
}

/// `Tr(O ρ)` for a product `O` of single-spin Pauli operators on distinct spins.
///
/// Evaluated by acting with `O` on basis states, never forming `O` densely.
pub fn pauli_expectation(rho: &ExactMatrix, ops: &[(usize, Pauli)]) -> Result<Rational> {
    let n = rho
        .spin_count()
        .ok_or_else(|| Error::invalid("matrix dimension is not a power of two"))?;
    for (i, &(k, _)) in ops.iter().enumerate() {
        if k >= n || ops[..i].iter().any(|&(j, _)| j == k) {
            return Err(Error::invalid(format!(
                "Pauli string acts on spin {k} twice or outside 0..{n}"
            )));
        }
    }
    let mut re: i128 = 0;
    let mut im: i128 = 0;
    for j in 0..rho.dim() as u64 {
        let mut bits = j;
        let mut phase = 0u8;
        for &(k, p) in ops {
            let (b, ph) = p.act(bits, k);
            bits = b;
            phase = (phase + ph) % 4;
        }
        // O|j> = i^phase |bits>, so O_{bits,j} contributes O_{bits,j} * rho_{j,bits}.
        let v = rho.numer_at(j as usize, bits as usize) as i128;
        match phase {
            0 => re += v,
            1 => im += v,
            2 => re -= v,
            _ => im -= v,
        }
    }
    if im != 0 {
        return Err(Error::Domain("expectation value is not real".into()));
    }
    Ok(ratio_from_i128(re, rho.denom()))
}
