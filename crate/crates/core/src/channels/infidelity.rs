//! Worst-case channel infidelity over pure input states, by Bloch-sphere
//! grid search with local refinement.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

use super::kraus::KrausChannel;
use super::ptm::{kraus_to_ptm, PauliTransferMatrix};
use super::ChannelError;

/// Summary diagnostics of one channel at one strength.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChannelReport<T: Scalar> {
    /// Worst-case (maximum over pure states) infidelity.
    pub epsilon: T,
    pub gamma: T,
    pub eta: T,
    pub nu: T,
}

/// Fidelity of the pure state with Bloch vector `n` through the channel:
/// ⟨ψ|E(|ψ⟩⟨ψ|)|ψ⟩ = ½(1 + n·(Mn + c)).
fn fidelity_at<T: Scalar>(m: &[[T; 3]; 3], c: &[T; 3], n: [T; 3]) -> T {
    let mut mn = [T::zero(); 3];
    for i in 0..3 {
        for j in 0..3 {
            mn[i] += m[i][j] * n[j];
        }
    }
    let mut dot = T::zero();
    for i in 0..3 {
        dot += n[i] * (mn[i] + c[i]);
    }
    (T::one() + dot) * T::of(0.5)
}

fn unit_vector<T: Scalar>(theta: T, phi: T) -> [T; 3] {
    [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
}

/// Worst-case infidelity computed from a PTM.
pub fn worst_case_infidelity_of_ptm<T: Scalar>(ptm: &PauliTransferMatrix<T>) -> T {
    let m = ptm.bloch_block();
    let c = ptm.bloch_shift();

    // Fibonacci-lattice scan of the sphere, then shrinking pattern search.
    const GRID: usize = 16_384;
    let golden = T::of(1.618_033_988_749_894_9);
    let mut best = (T::infinity(), T::zero(), T::zero());
    for i in 0..GRID {
        let frac = T::of(i as f64 + 0.5) / T::of(GRID as f64);
        let theta = (T::one() - T::of(2.0) * frac).acos();
        let phi = T::TAU() * T::of(i as f64) / golden;
        let f = fidelity_at(&m, &c, unit_vector(theta, phi));
        if f < best.0 {
            best = (f, theta, phi);
        }
    }
    let (mut f_min, mut theta, mut phi) = best;
    let mut step = T::of(0.03);
    while step > T::of(1e-9) {
        let mut improved = false;
        for (dt, dp) in [
            (step, T::zero()),
            (-step, T::zero()),
            (T::zero(), step),
            (T::zero(), -step),
        ] {
            let f = fidelity_at(&m, &c, unit_vector(theta + dt, phi + dp));
            if f < f_min {
                f_min = f;
                theta += dt;
                phi += dp;
                improved = true;
            }
        }
        if !improved {
            step = step * T::of(0.5);
        }
    }
    (T::one() - f_min).max(T::zero())
}

/// Worst-case infidelity of a Kraus channel.
pub fn worst_case_infidelity<T: Scalar>(ch: &KrausChannel<T>) -> Result<T, ChannelError> {
    Ok(worst_case_infidelity_of_ptm(&kraus_to_ptm(ch)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_zero_infidelity() {
        let eps = worst_case_infidelity(&KrausChannel::<f64>::identity()).unwrap();
        assert!(eps.abs() < 1e-10);
    }

    #[test]
    fn z_rotation_infidelity_is_sin_squared_half_angle() {
        for theta in [1e-3, 0.1, 0.5, 1.5] {
            let eps =
                worst_case_infidelity(&KrausChannel::<f64>::z_rotation(theta).unwrap()).unwrap();
            let want = (theta / 2.0).sin().powi(2);
            assert!((eps - want).abs() < 1e-10, "theta={theta}: {eps} vs {want}");
        }
    }

    #[test]
    fn depolarizing_infidelity_is_two_thirds_p() {
        for p in [1e-4, 1e-2, 0.3] {
            let eps =
                worst_case_infidelity(&KrausChannel::<f64>::depolarizing(p).unwrap()).unwrap();
            assert!((eps - 2.0 * p / 3.0).abs() < 1e-10, "p={p}");
        }
    }

    #[test]
    fn generic_rotation_infidelity_is_sin_squared_delta() {
        for (delta, theta, phi) in [(0.05, 0.7, 1.1), (0.3, 2.0, 4.4), (0.01, 1.3, 0.2)] {
            let ch = KrausChannel::<f64>::random_unitary(delta, theta, phi).unwrap();
            let eps = worst_case_infidelity(&ch).unwrap();
            let want = delta.sin().powi(2);
            assert!((eps - want).abs() < 1e-9, "delta={delta}: {eps} vs {want}");
        }
    }

    #[test]
    fn amplitude_damping_worst_case_is_p() {
        // worst input is |1⟩: fidelity 1−p exactly
        for p in [1e-3, 0.05] {
            let eps =
                worst_case_infidelity(&KrausChannel::<f64>::amplitude_damping(p).unwrap())
                    .unwrap();
            assert!((eps - p).abs() < 1e-8, "p={p}: {eps}");
        }
    }
}
