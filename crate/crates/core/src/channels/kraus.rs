//! Single-qubit CPTP channels in Kraus form, plus the named channel families
//! used by the experiments.

use num_complex::Complex;
use rand::Rng;

use crate::scalar::Scalar;

use super::ChannelError;

/// 2×2 complex matrix in row-major order.
pub type Mat2<T> = [[Complex<T>; 2]; 2];

pub(crate) fn mat_zero<T: Scalar>() -> Mat2<T> {
    let z = Complex::new(T::zero(), T::zero());
    [[z, z], [z, z]]
}

pub(crate) fn mat_identity<T: Scalar>() -> Mat2<T> {
    let mut m = mat_zero();
    m[0][0] = Complex::new(T::one(), T::zero());
    m[1][1] = Complex::new(T::one(), T::zero());
    m
}

pub(crate) fn mat_mul<T: Scalar>(a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
    let mut out = mat_zero();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub(crate) fn mat_dagger<T: Scalar>(a: &Mat2<T>) -> Mat2<T> {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub(crate) fn mat_add_assign<T: Scalar>(a: &mut Mat2<T>, b: &Mat2<T>) {
    for i in 0..2 {
        for j in 0..2 {
            a[i][j] = a[i][j] + b[i][j];
        }
    }
}

pub(crate) fn mat_scale<T: Scalar>(a: &Mat2<T>, s: Complex<T>) -> Mat2<T> {
    let mut out = *a;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v = *v * s;
        }
    }
    out
}

pub(crate) fn mat_trace<T: Scalar>(a: &Mat2<T>) -> Complex<T> {
    a[0][0] + a[1][1]
}

/// Pauli matrices indexed 0..4 as I, X, Y, Z.
pub(crate) fn pauli_mat<T: Scalar>(i: usize) -> Mat2<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let im = Complex::new(T::zero(), T::one());
    match i {
        0 => [[one, zero], [zero, one]],
        1 => [[zero, one], [one, zero]],
        2 => [[zero, -im], [im, zero]],
        3 => [[one, zero], [zero, -one]],
        _ => panic!("pauli index out of range"),
    }
}

/// Principal square root of a positive semidefinite Hermitian 2×2 matrix.
pub(crate) fn mat_psd_sqrt<T: Scalar>(a: &Mat2<T>) -> Result<Mat2<T>, ChannelError> {
    // eigen-decomposition of a Hermitian 2x2: a = p·I + v·σ with real p, v
    let p = (a[0][0].re + a[1][1].re) * T::of(0.5);
    let vx = a[0][1].re;
    let vy = -a[0][1].im;
    let vz = (a[0][0].re - a[1][1].re) * T::of(0.5);
    let r = (vx * vx + vy * vy + vz * vz).sqrt();
    let (lo, hi) = (p - r, p + r);
    if lo < -T::of(1e-9) {
        return Err(ChannelError::NotPositive);
    }
    let lo = lo.max(T::zero());
    let (slo, shi) = (lo.sqrt(), hi.sqrt());
    if r < T::of(1e-300) {
        return Ok(mat_scale(&mat_identity(), Complex::new(shi, T::zero())));
    }
    // sqrt(a) = c·I + d·v̂·σ with c = (s_hi+s_lo)/2, d = (s_hi−s_lo)/2
    let c = (shi + slo) * T::of(0.5);
    let d = (shi - slo) * T::of(0.5) / r;
    let mut m = mat_scale(&mat_identity(), Complex::new(c, T::zero()));
    let sigma = [pauli_mat::<T>(1), pauli_mat::<T>(2), pauli_mat::<T>(3)];
    for (comp, s) in [vx, vy, vz].into_iter().zip(sigma.iter()) {
        mat_add_assign(&mut m, &mat_scale(s, Complex::new(d * comp, T::zero())));
    }
    Ok(m)
}

/// A single-qubit CPTP channel specified by its Kraus operators.
#[derive(Clone, Debug)]
pub struct KrausChannel<T: Scalar> {
    ops: Vec<Mat2<T>>,
}

impl<T: Scalar> KrausChannel<T> {
    /// Builds a channel, verifying trace preservation Σ E†E = 1 to 1e-10.
    pub fn new(ops: Vec<Mat2<T>>) -> Result<Self, ChannelError> {
        let ch = KrausChannel { ops };
        ch.check_trace_preserving()?;
        Ok(ch)
    }

    pub fn ops(&self) -> &[Mat2<T>] {
        &self.ops
    }

    fn check_trace_preserving(&self) -> Result<(), ChannelError> {
        let mut acc = mat_zero();
        for e in &self.ops {
            mat_add_assign(&mut acc, &mat_mul(&mat_dagger(e), e));
        }
        let id = mat_identity::<T>();
        for i in 0..2 {
            for j in 0..2 {
                let d = acc[i][j] - id[i][j];
                if d.norm() > T::of(1e-10) {
                    return Err(ChannelError::NotTracePreserving(
                        d.norm().to64(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Applies the channel to a 2×2 density matrix.
    pub fn apply(&self, rho: &Mat2<T>) -> Mat2<T> {
        let mut out = mat_zero();
        for e in &self.ops {
            mat_add_assign(&mut out, &mat_mul(&mat_mul(e, rho), &mat_dagger(e)));
        }
        out
    }

    /// The identity channel.
    pub fn identity() -> Self {
        KrausChannel { ops: vec![mat_identity()] }
    }

    /// Isotropic Pauli noise: Kraus {√(1−p)·1, √(p/3)·X, √(p/3)·Y, √(p/3)·Z}.
    pub fn depolarizing(p: T) -> Result<Self, ChannelError> {
        check_unit_interval(p)?;
        let mut ops = vec![mat_scale(
            &mat_identity(),
            Complex::new((T::one() - p).sqrt(), T::zero()),
        )];
        let amp = Complex::new((p / T::of(3.0)).sqrt(), T::zero());
        for i in 1..4 {
            ops.push(mat_scale(&pauli_mat(i), amp));
        }
        KrausChannel::new(ops)
    }

    /// Decay toward |0⟩: E_0 = |0⟩⟨0| + √(1−p)|1⟩⟨1|, E_1 = √p |0⟩⟨1|.
    pub fn amplitude_damping(p: T) -> Result<Self, ChannelError> {
        check_unit_interval(p)?;
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let e0 = [[one, zero], [zero, Complex::new((T::one() - p).sqrt(), T::zero())]];
        let e1 = [[zero, Complex::new(p.sqrt(), T::zero())], [zero, zero]];
        KrausChannel::new(vec![e0, e1])
    }

    /// Coherent rotation about Z: |0⟩⟨0| + e^{iθ}|1⟩⟨1|.
    pub fn z_rotation(theta: T) -> Result<Self, ChannelError> {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let u = [[one, zero], [zero, Complex::new(theta.cos(), theta.sin())]];
        KrausChannel::new(vec![u])
    }

    /// Coherent rotation U = exp(iδ n̂·σ) with n̂ given by polar angles.
    pub fn random_unitary(delta: T, theta: T, phi: T) -> Result<Self, ChannelError> {
        if delta < T::zero() {
            return Err(ChannelError::ParameterOutOfRange("delta must be ≥ 0".into()));
        }
        let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
        // exp(iδ n·σ) = cos δ · 1 + i sin δ · n·σ
        let mut u = mat_scale(&mat_identity(), Complex::new(delta.cos(), T::zero()));
        let s = delta.sin();
        for (c, i) in n.into_iter().zip(1..4) {
            mat_add_assign(&mut u, &mat_scale(&pauli_mat(i), Complex::new(T::zero(), s * c)));
        }
        KrausChannel::new(vec![u])
    }

    /// Random non-unitary channel: J−1 Gaussian Kraus operators scaled by √ω
    /// and a residual principal square root. Resamples on positivity failure,
    /// erroring after `MAX_RETRIES` attempts.
    pub fn random_nonunitary<R: Rng + ?Sized>(
        j: usize,
        omega: T,
        rng: &mut R,
    ) -> Result<Self, ChannelError> {
        const MAX_RETRIES: usize = 64;
        if !(2..=5).contains(&j) {
            return Err(ChannelError::ParameterOutOfRange("J must be in 2..=5".into()));
        }
        if omega < T::zero() {
            return Err(ChannelError::ParameterOutOfRange("omega must be ≥ 0".into()));
        }
        for _ in 0..MAX_RETRIES {
            let seeds: Vec<Mat2<T>> = (0..j - 1).map(|_| random_gaussian_mat(rng)).collect();
            match Self::nonunitary_from_seeds(&seeds, omega) {
                Ok(ch) => return Ok(ch),
                Err(ChannelError::NotPositive) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(ChannelError::PositivityRetriesExhausted)
    }

    /// Deterministic variant used by channel families: fixed seed matrices,
    /// strength ω varies.
    pub fn nonunitary_from_seeds(seeds: &[Mat2<T>], omega: T) -> Result<Self, ChannelError> {
        let sqrt_omega = Complex::new(omega.sqrt(), T::zero());
        let mut ops: Vec<Mat2<T>> = seeds.iter().map(|e| mat_scale(e, sqrt_omega)).collect();
        let mut residual = mat_identity();
        for e in &ops {
            let ete = mat_mul(&mat_dagger(e), e);
            for i in 0..2 {
                for k in 0..2 {
                    residual[i][k] = residual[i][k] - ete[i][k];
                }
            }
        }
        ops.push(mat_psd_sqrt(&residual)?);
        KrausChannel::new(ops)
    }
}

fn check_unit_interval<T: Scalar>(p: T) -> Result<(), ChannelError> {
    if p < T::zero() || p > T::one() {
        Err(ChannelError::ParameterOutOfRange("probability must be in [0, 1]".into()))
    } else {
        Ok(())
    }
}

/// 2×2 matrix with entries' real and imaginary parts drawn from a standard
/// normal (Box-Muller on the given stream).
pub(crate) fn random_gaussian_mat<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> Mat2<T> {
    let mut normal = || -> T {
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen();
        T::of((-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos())
    };
    let mut m = mat_zero();
    for row in m.iter_mut() {
        for v in row.iter_mut() {
            *v = Complex::new(normal(), normal());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn amplitude_damping_zero_is_identity() {
        let ch = KrausChannel::<f64>::amplitude_damping(0.0).unwrap();
        let rho = [[Complex::new(0.3, 0.0), Complex::new(0.1, 0.2)],
                   [Complex::new(0.1, -0.2), Complex::new(0.7, 0.0)]];
        let out = ch.apply(&rho);
        for i in 0..2 {
            for j in 0..2 {
                assert!((out[i][j] - rho[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn depolarizing_kraus_set() {
        let ch = KrausChannel::<f64>::depolarizing(0.3).unwrap();
        assert_eq!(ch.ops().len(), 4);
        assert!((ch.ops()[0][0][0].re - 0.7f64.sqrt()).abs() < 1e-14);
        assert!((ch.ops()[1][0][1].re - 0.1f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn parameter_range_enforced() {
        assert!(KrausChannel::<f64>::depolarizing(1.2).is_err());
        assert!(KrausChannel::<f64>::amplitude_damping(-0.1).is_err());
    }

    #[test]
    fn random_nonunitary_is_trace_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for j in 2..=5 {
            let ch = KrausChannel::<f64>::random_nonunitary(j, 1e-3, &mut rng).unwrap();
            assert_eq!(ch.ops().len(), j);
            // TP is checked by the constructor; re-verify the residual is PSD-derived
            let mut acc = mat_zero::<f64>();
            for e in ch.ops() {
                mat_add_assign(&mut acc, &mat_mul(&mat_dagger(e), e));
            }
            assert!((acc[0][0].re - 1.0).abs() < 1e-10);
            assert!((acc[1][1].re - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn nonunitary_omega_zero_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let ch = KrausChannel::<f64>::random_nonunitary(3, 0.0, &mut rng).unwrap();
        let rho = [[Complex::new(0.2, 0.0), Complex::new(0.0, 0.4)],
                   [Complex::new(0.0, -0.4), Complex::new(0.8, 0.0)]];
        let out = ch.apply(&rho);
        for i in 0..2 {
            for j in 0..2 {
                assert!((out[i][j] - rho[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let a = [[Complex::new(0.9, 0.0), Complex::new(0.1, 0.05)],
                 [Complex::new(0.1, -0.05), Complex::new(0.4, 0.0)]];
        let s = mat_psd_sqrt(&a).unwrap();
        let sq = mat_mul(&s, &s);
        for i in 0..2 {
            for j in 0..2 {
                assert!((sq[i][j] - a[i][j]).norm() < 1e-12, "{i}{j}");
            }
        }
    }
}
