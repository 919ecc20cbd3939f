//! Minimal-negativity decomposition of a CPTP channel over the stabilizer
//! dictionary, and its weak-noise form.
//!
//! Solves  minimize Σ_μ |q_μ|  subject to  Σ_μ q_μ · PTM(S_μ) = PTM(E)
//! with sign-split variables (66 vars, 13 equality rows). Among optima with
//! equal Σ|q_μ| the solution maximizing the identity weight q_0 is selected
//! (secondary objective), which minimizes the noise strength γ = 1 − q_0.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

use super::dictionary::{dictionary, StabilizerChannelId, DICTIONARY_SIZE};
use super::kraus::KrausChannel;
use super::ptm::{kraus_to_ptm, PauliTransferMatrix};
use super::simplex::solve_lp;
use super::ChannelError;

/// Quasiprobability decomposition of one channel: full coefficients q_μ,
/// the weak form (γ, r_i), and the negativities.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizerDecomposition<T: Scalar> {
    /// All nonzero coefficients (id, q_μ), identity first when present.
    pub terms: Vec<(StabilizerChannelId, T)>,
    /// Noise strength γ = 1 − q_0.
    pub gamma: T,
    /// Fault mixture (id, r_i) with Σ r_i = 1; empty when γ = 0.
    pub fault_terms: Vec<(StabilizerChannelId, T)>,
    /// Negativity of the full decomposition: Σ_{q_μ<0} |q_μ|.
    pub eta: T,
    /// Negativity of the fault mixture: Σ_{r_i<0} |r_i|.
    pub nu: T,
    /// 1 + 2ν, the per-fault weight magnitude.
    pub beta: T,
    /// True when an identity prefactor above 1 was folded into the faults.
    pub folded_identity: bool,
}

impl<T: Scalar> StabilizerDecomposition<T> {
    /// The trivial decomposition of the identity channel.
    pub fn identity() -> Self {
        StabilizerDecomposition {
            terms: vec![(StabilizerChannelId::IDENTITY, T::one())],
            gamma: T::zero(),
            fault_terms: Vec::new(),
            eta: T::zero(),
            nu: T::zero(),
            beta: T::one(),
            folded_identity: false,
        }
    }

    /// 1 + 2η, the importance-sampling weight magnitude of the full form.
    pub fn alpha(&self) -> T {
        T::one() + T::of(2.0) * self.eta
    }

    /// Σ|q_μ| over all terms.
    pub fn l1_norm(&self) -> T {
        self.terms.iter().map(|&(_, q)| q.abs()).sum()
    }

    /// Reconstructs the PTM from the terms.
    pub fn reconstruct_ptm(&self) -> PauliTransferMatrix<T> {
        let d = dictionary();
        let mut out = PauliTransferMatrix::zero();
        for &(id, q) in &self.terms {
            out.add_scaled(q, &d.ptm(id));
        }
        out
    }
}

/// Decomposes a channel given directly as a PTM.
pub fn decompose_ptm<T: Scalar>(
    target: &PauliTransferMatrix<T>,
) -> Result<StabilizerDecomposition<T>, ChannelError> {
    target.check_trace_preserving()?;
    let d = dictionary();
    let ids: Vec<StabilizerChannelId> = StabilizerChannelId::all().collect();
    let ptms: Vec<PauliTransferMatrix<T>> = ids.iter().map(|&id| d.ptm(id)).collect();

    // 13 equality rows: the 12 non-trivial PTM coordinates plus Σ q_μ = 1.
    // Variables: u_0..u_32, v_0..v_32 with q_μ = u_μ − v_μ.
    let nvars = 2 * DICTIONARY_SIZE;
    let mut a: Vec<Vec<T>> = Vec::with_capacity(13);
    let mut b: Vec<T> = Vec::with_capacity(13);
    for r in 0..3 {
        for c in 0..4 {
            let mut row = vec![T::zero(); nvars];
            for (mu, p) in ptms.iter().enumerate() {
                row[mu] = p.m[r + 1][c];
                row[DICTIONARY_SIZE + mu] = -p.m[r + 1][c];
            }
            a.push(row);
            b.push(target.m[r + 1][c]);
        }
    }
    let mut sum_row = vec![T::one(); nvars];
    for v in sum_row.iter_mut().skip(DICTIONARY_SIZE) {
        *v = -T::one();
    }
    a.push(sum_row);
    b.push(T::one());

    let ones = vec![T::one(); nvars];
    let first = solve_lp(&a, &b, &ones)
        .map_err(|e| ChannelError::SolverFailed(format!("L1 phase: {e}")))?;

    // Secondary objective: among Σ|q| optima, maximize q_0 = u_0 − v_0.
    let mut a2 = a.clone();
    let mut b2 = b.clone();
    a2.push(ones.clone());
    b2.push(first.objective);
    let mut c2 = vec![T::zero(); nvars];
    c2[0] = -T::one();
    c2[DICTIONARY_SIZE] = T::one();
    let refined = solve_lp(&a2, &b2, &c2)
        .map_err(|e| ChannelError::SolverFailed(format!("tie-break phase: {e}")))?;

    let drop_tol = T::of(1e-12).max(T::epsilon() * T::of(32.0));
    let mut qs = vec![T::zero(); DICTIONARY_SIZE];
    for mu in 0..DICTIONARY_SIZE {
        let q = refined.x[mu] - refined.x[DICTIONARY_SIZE + mu];
        qs[mu] = if q.abs() < drop_tol { T::zero() } else { q };
    }

    build_decomposition(target, &ids, qs)
}

fn build_decomposition<T: Scalar>(
    target: &PauliTransferMatrix<T>,
    ids: &[StabilizerChannelId],
    qs: Vec<T>,
) -> Result<StabilizerDecomposition<T>, ChannelError> {
    let gamma_floor = T::of(1e-12).max(T::epsilon() * T::of(32.0));
    let q0 = qs[0];
    let mut terms: Vec<(StabilizerChannelId, T)> = Vec::new();
    for (mu, &q) in qs.iter().enumerate() {
        if q != T::zero() {
            terms.push((ids[mu], q));
        }
    }
    let eta: T = qs.iter().filter(|&&q| q < T::zero()).map(|&q| -q).sum();

    let (gamma, fault_terms, folded_identity) = if q0 > T::one() + gamma_floor {
        // identity prefactor above 1: fold the excess into the fault mixture
        let g: T = qs.iter().skip(1).map(|&q| q.abs()).sum();
        let mut faults = vec![(ids[0], (q0 - (T::one() - g)) / g)];
        for (mu, &q) in qs.iter().enumerate().skip(1) {
            if q != T::zero() {
                faults.push((ids[mu], q / g));
            }
        }
        (g, faults, true)
    } else {
        // γ as the direct sum of non-identity weights keeps Σ r_i = 1 exact;
        // it equals 1 − q_0 through the solver's Σ q_μ = 1 constraint.
        let g: T = qs.iter().skip(1).copied().sum();
        if g <= gamma_floor {
            (T::zero(), Vec::new(), false)
        } else {
            let faults = qs
                .iter()
                .enumerate()
                .skip(1)
                .filter(|&(_, &q)| q != T::zero())
                .map(|(mu, &q)| (ids[mu], q / g))
                .collect();
            (g, faults, false)
        }
    };

    let nu: T = fault_terms
        .iter()
        .filter(|&&(_, r)| r < T::zero())
        .map(|&(_, r)| -r)
        .sum();
    let dec = StabilizerDecomposition {
        terms,
        gamma,
        fault_terms,
        eta,
        nu,
        beta: T::one() + T::of(2.0) * nu,
        folded_identity,
    };

    let sum_tol = T::of(1e-9).max(T::epsilon() * T::of(1e4));
    let q_sum: T = dec.terms.iter().map(|&(_, q)| q).sum();
    if (q_sum - T::one()).abs() > sum_tol {
        return Err(ChannelError::SolverFailed(format!(
            "coefficients sum to {q_sum}, expected 1"
        )));
    }
    if !dec.fault_terms.is_empty() {
        let r_sum: T = dec.fault_terms.iter().map(|&(_, r)| r).sum();
        if (r_sum - T::one()).abs() > sum_tol {
            return Err(ChannelError::SolverFailed(format!(
                "fault weights sum to {r_sum}, expected 1"
            )));
        }
    }
    let recon_tol = T::of(1e-8).max(T::epsilon() * T::of(1e6));
    let dev = dec.reconstruct_ptm().max_abs_diff(target);
    if dev > recon_tol {
        return Err(ChannelError::ReconstructionFailed(dev.to64()));
    }
    Ok(dec)
}

/// Minimal-negativity stabilizer decomposition of a Kraus channel.
pub fn decompose<T: Scalar>(
    ch: &KrausChannel<T>,
) -> Result<StabilizerDecomposition<T>, ChannelError> {
    decompose_ptm(&kraus_to_ptm(ch)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Axis;

    fn q_of(dec: &StabilizerDecomposition<f64>, id: StabilizerChannelId) -> f64 {
        dec.terms.iter().find(|&&(i, _)| i == id).map_or(0.0, |&(_, q)| q)
    }

    #[test]
    fn identity_channel_decomposes_trivially() {
        let dec = decompose(&KrausChannel::<f64>::identity()).unwrap();
        assert!((q_of(&dec, StabilizerChannelId::IDENTITY) - 1.0).abs() < 1e-12);
        assert_eq!(dec.gamma, 0.0);
        assert_eq!(dec.eta, 0.0);
        assert!(dec.fault_terms.is_empty());
    }

    #[test]
    fn depolarizing_decomposes_onto_pauli_unitaries() {
        let d = dictionary();
        for p in [1e-4, 1e-3, 1e-2] {
            let dec = decompose(&KrausChannel::<f64>::depolarizing(p).unwrap()).unwrap();
            assert!((q_of(&dec, StabilizerChannelId::IDENTITY) - (1.0 - p)).abs() < 1e-10);
            for axis in Axis::ALL {
                let got = q_of(&dec, d.pauli_unitary_id(axis));
                assert!((got - p / 3.0).abs() < 1e-10, "p={p} axis={axis}");
            }
            assert!(dec.eta.abs() < 1e-12);
            assert!(dec.nu.abs() < 1e-12);
            assert!((dec.gamma - p).abs() < 1e-10);
        }
    }

    #[test]
    fn amplitude_damping_weak_form_matches_closed_form() {
        for p in [1e-4, 1e-3, 1e-2, 0.1] {
            let dec = decompose(&KrausChannel::<f64>::amplitude_damping(p).unwrap()).unwrap();
            let gamma = 0.5 * ((1.0 + p) - (1.0 - p).sqrt());
            assert!((dec.gamma - gamma).abs() < 1e-10, "p={p}: {} vs {gamma}", dec.gamma);
        }
        // ν → 1/3 as p → 0
        let dec = decompose(&KrausChannel::<f64>::amplitude_damping(1e-4).unwrap()).unwrap();
        assert!((dec.nu - 1.0 / 3.0).abs() < 0.02, "nu={}", dec.nu);
    }

    #[test]
    fn l1_identity_ties_out() {
        // 1 + 2η = Σ|q| exactly, by construction
        let dec = decompose(&KrausChannel::<f64>::amplitude_damping(0.02).unwrap()).unwrap();
        assert!((dec.l1_norm() - (1.0 + 2.0 * dec.eta)).abs() < 1e-12);
    }

    #[test]
    fn pauli_channels_have_zero_negativity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        let d = dictionary();
        for _ in 0..20 {
            // random Pauli channel: convex mixture of I, X, Y, Z conjugations
            let mut w = [0.0; 4];
            let mut s = 0.0;
            for v in w.iter_mut() {
                *v = rng.gen::<f64>();
                s += *v;
            }
            let mut target = PauliTransferMatrix::<f64>::zero();
            target.add_scaled(w[0] / s, &d.ptm(StabilizerChannelId::IDENTITY));
            for (k, axis) in Axis::ALL.iter().enumerate() {
                target.add_scaled(w[k + 1] / s, &d.ptm(d.pauli_unitary_id(*axis)));
            }
            let dec = decompose_ptm(&target).unwrap();
            assert!(dec.eta < 1e-10, "eta={}", dec.eta);
        }
    }

    #[test]
    fn roundtrip_on_random_channels() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(22);
        for i in 0..50 {
            let ch = if i % 2 == 0 {
                KrausChannel::<f64>::random_nonunitary(2 + i % 4, 1e-2, &mut rng).unwrap()
            } else {
                use rand::Rng;
                let d: f64 = rng.gen_range(0.0..0.3);
                let th: f64 = rng.gen_range(0.0..std::f64::consts::PI);
                let ph: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                KrausChannel::random_unitary(d, th, ph).unwrap()
            };
            let target = kraus_to_ptm(&ch).unwrap();
            let dec = decompose_ptm(&target).unwrap();
            assert!(dec.reconstruct_ptm().max_abs_diff(&target) < 1e-8);
            let r_sum: f64 = dec.fault_terms.iter().map(|&(_, r)| r).sum();
            if !dec.fault_terms.is_empty() {
                assert!((r_sum - 1.0).abs() < 1e-9);
            }
        }
    }
}
