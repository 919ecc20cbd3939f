//! One-parameter channel families for sweeps: a family maps a strength
//! parameter to a Kraus channel, and can be calibrated against a target
//! worst-case infidelity by bisection.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

use super::infidelity::worst_case_infidelity;
use super::kraus::{KrausChannel, Mat2};
use super::ChannelError;

/// Channel family with a single strength knob.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum ChannelFamily<T: Scalar> {
    /// Strength is the depolarizing probability p.
    Depolarizing,
    /// Strength is the damping probability p_A.
    AmplitudeDamping,
    /// Strength is the rotation angle θ of |1⟩⟨1| ↦ e^{iθ}|1⟩⟨1|.
    UnitaryZ,
    /// Coherent rotation exp(iδ n̂·σ) about a fixed axis; strength is δ.
    UnitaryAxis { theta: T, phi: T },
    /// Non-unitary channel from fixed Gaussian seed matrices; strength is ω.
    Nonunitary { seeds: Vec<Mat2<T>> },
}

/// The fixed three-Kraus non-unitary channel that performed worst in the
/// surface-code survey; strength scales both seed operators.
pub fn adversarial_nonunitary_family<T: Scalar>() -> ChannelFamily<T> {
    let c = |re: f64, im: f64| Complex::new(T::of(re), T::of(im));
    let e1: Mat2<T> = [
        [c(7.513196e-2, 2.284803e-1), c(-3.740817e-2, -5.503615e-1)],
        [c(8.559614e-2, -3.434704e-2), c(-4.949497e-1, -4.828740e-1)],
    ];
    let e2: Mat2<T> = [
        [c(8.930400e-4, 2.591419e-1), c(-1.370156e-1, 4.818675e-1)],
        [c(7.107620e-2, 9.455447e-2), c(-1.669140e-1, 4.662648e-2)],
    ];
    ChannelFamily::Nonunitary { seeds: vec![e1, e2] }
}

impl<T: Scalar> ChannelFamily<T> {
    pub fn at_strength(&self, s: T) -> Result<KrausChannel<T>, ChannelError> {
        match self {
            ChannelFamily::Depolarizing => KrausChannel::depolarizing(s),
            ChannelFamily::AmplitudeDamping => KrausChannel::amplitude_damping(s),
            ChannelFamily::UnitaryZ => KrausChannel::z_rotation(s),
            ChannelFamily::UnitaryAxis { theta, phi } => {
                KrausChannel::random_unitary(s, *theta, *phi)
            }
            ChannelFamily::Nonunitary { seeds } => KrausChannel::nonunitary_from_seeds(seeds, s),
        }
    }

    /// Worst-case infidelity at a given strength.
    pub fn infidelity_at(&self, s: T) -> Result<T, ChannelError> {
        worst_case_infidelity(&self.at_strength(s)?)
    }

    /// Inverts strength ↦ worst-case infidelity by bisection; infidelity is
    /// monotone in strength over each family's valid range.
    pub fn strength_for_infidelity(&self, eps: T) -> Result<T, ChannelError> {
        if eps < T::zero() {
            return Err(ChannelError::CalibrationFailed("negative infidelity".into()));
        }
        if eps == T::zero() {
            return Ok(T::zero());
        }
        // bracket: grow until the family errors out or overshoots
        let mut hi = T::of(1e-6);
        let mut hi_eps = self.infidelity_at(hi)?;
        let mut guard = 0;
        while hi_eps < eps {
            let next = hi * T::of(2.0);
            match self.infidelity_at(next) {
                Ok(e) => {
                    hi = next;
                    hi_eps = e;
                }
                Err(_) => break, // strength left the family's valid domain
            }
            guard += 1;
            if guard > 80 {
                return Err(ChannelError::CalibrationFailed(
                    "could not bracket target infidelity".into(),
                ));
            }
        }
        if hi_eps < eps {
            return Err(ChannelError::CalibrationFailed(format!(
                "target infidelity {} unreachable (max {})",
                eps.to64(),
                hi_eps.to64()
            )));
        }
        let mut lo = T::zero();
        for _ in 0..200 {
            let mid = (lo + hi) * T::of(0.5);
            if mid == lo || mid == hi {
                break;
            }
            if self.infidelity_at(mid)? < eps {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok((lo + hi) * T::of(0.5))
    }

    pub fn label(&self) -> String {
        match self {
            ChannelFamily::Depolarizing => "depolarizing".into(),
            ChannelFamily::AmplitudeDamping => "amplitude-damping".into(),
            ChannelFamily::UnitaryZ => "unitary-z".into(),
            ChannelFamily::UnitaryAxis { .. } => "unitary-axis".into(),
            ChannelFamily::Nonunitary { seeds } => format!("nonunitary-{}", seeds.len() + 1),
        }
    }
}
