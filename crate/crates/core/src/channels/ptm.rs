//! Pauli transfer matrices: the 4×4 real representation of single-qubit
//! channels used by the decomposition solver.

use num_complex::Complex;

use crate::scalar::Scalar;

use super::kraus::{mat_mul, mat_trace, pauli_mat, KrausChannel};
use super::ChannelError;

/// Real 4×4 matrix with rows/columns indexed by I, X, Y, Z.
/// Column j is the Pauli expansion of the channel's action on σ_j.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliTransferMatrix<T: Scalar> {
    pub m: [[T; 4]; 4],
}

impl<T: Scalar> PauliTransferMatrix<T> {
    pub fn identity() -> Self {
        let mut m = [[T::zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = T::one();
        }
        PauliTransferMatrix { m }
    }

    pub fn zero() -> Self {
        PauliTransferMatrix { m: [[T::zero(); 4]; 4] }
    }

    /// Verifies the trace-preservation row (1, 0, 0, 0) to 1e-10.
    pub fn check_trace_preserving(&self) -> Result<(), ChannelError> {
        let tol = T::of(1e-10);
        for j in 0..4 {
            let want = if j == 0 { T::one() } else { T::zero() };
            if (self.m[0][j] - want).abs() > tol {
                return Err(ChannelError::NotTracePreserving(
                    (self.m[0][j] - want).abs().to64(),
                ));
            }
        }
        Ok(())
    }

    /// Matrix product: self ∘ other (self applied after other).
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = T::zero();
                for k in 0..4 {
                    acc += self.m[i][k] * other.m[k][j];
                }
                out.m[i][j] = acc;
            }
        }
        out
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        worst
    }

    /// Scaled accumulate: self += s · other.
    pub fn add_scaled(&mut self, s: T, other: &Self) {
        for i in 0..4 {
            for j in 0..4 {
                self.m[i][j] += s * other.m[i][j];
            }
        }
    }

    /// Bottom-right 3×3 rotation/contraction block.
    pub fn bloch_block(&self) -> [[T; 3]; 3] {
        let mut b = [[T::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                b[i][j] = self.m[i + 1][j + 1];
            }
        }
        b
    }

    /// Bloch translation vector (first column, rows X..Z).
    pub fn bloch_shift(&self) -> [T; 3] {
        [self.m[1][0], self.m[2][0], self.m[3][0]]
    }
}

/// PTM of a Kraus channel: m[i][j] = ½ Tr{σ_i 𝓔(σ_j)}.
pub fn kraus_to_ptm<T: Scalar>(
    ch: &KrausChannel<T>,
) -> Result<PauliTransferMatrix<T>, ChannelError> {
    let mut out = PauliTransferMatrix::zero();
    for j in 0..4 {
        let image = ch.apply(&pauli_mat(j));
        for i in 0..4 {
            let tr: Complex<T> = mat_trace(&mat_mul(&pauli_mat(i), &image));
            debug_assert!(tr.im.abs() < T::of(1e-9));
            out.m[i][j] = tr.re * T::of(0.5);
        }
    }
    out.check_trace_preserving()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_channel_gives_identity_ptm() {
        let ptm = kraus_to_ptm(&KrausChannel::<f64>::identity()).unwrap();
        assert!(ptm.max_abs_diff(&PauliTransferMatrix::identity()) < 1e-14);
    }

    #[test]
    fn depolarizing_ptm_is_isotropic_contraction() {
        for p in [1e-4, 1e-2, 0.3] {
            let ptm = kraus_to_ptm(&KrausChannel::<f64>::depolarizing(p).unwrap()).unwrap();
            let c = 1.0 - 4.0 * p / 3.0;
            for i in 0..4 {
                for j in 0..4 {
                    let want = match (i, j) {
                        (0, 0) => 1.0,
                        (a, b) if a == b => c,
                        _ => 0.0,
                    };
                    assert!((ptm.m[i][j] - want).abs() < 1e-12, "p={p} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn z_rotation_ptm_rotates_equator() {
        let theta = 0.37;
        let ptm = kraus_to_ptm(&KrausChannel::<f64>::z_rotation(theta).unwrap()).unwrap();
        assert!((ptm.m[1][1] - theta.cos()).abs() < 1e-12);
        assert!((ptm.m[2][1] - theta.sin()).abs() < 1e-12);
        assert!((ptm.m[1][2] + theta.sin()).abs() < 1e-12);
        assert!((ptm.m[3][3] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_unitary_z_axis_matches_z_rotation() {
        // n̂ = ẑ, δ = θ/2 equals z_rotation(θ) up to global phase
        let theta = 0.81;
        let a = kraus_to_ptm(&KrausChannel::<f64>::random_unitary(theta / 2.0, 0.0, 0.0).unwrap())
            .unwrap();
        let b = kraus_to_ptm(&KrausChannel::<f64>::z_rotation(theta).unwrap()).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }
}
