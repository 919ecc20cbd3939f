//! Stabilizer states in the destabilizer/stabilizer tableau representation.
//!
//! Rows are packed into 64-bit words so gate conjugation and row products are
//! word-parallel. Rows 0..n hold destabilizers, rows n..2n stabilizers, and
//! one extra row serves as scratch space for deterministic measurements.
//! Phases are tracked mod 4 (exponent of i); Hermitian rows carry 0 or 2.

use rand::Rng;
use thiserror::Error;

use crate::pauli::{anticommutes_bits, product_phase_delta, words_for, Axis, PauliString, Sign};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("tableau requires at least one qubit")]
    ZeroQubits,
    #[error("qubit index {0} out of range for {1} qubits")]
    QubitOutOfRange(usize, usize),
    #[error("two-qubit gate targets must be distinct")]
    DuplicateTargets,
    #[error("measurement operator must be Hermitian (sign ±1)")]
    NonHermitian,
    #[error("operator acts on {0} qubits but state has {1}")]
    SizeMismatch(usize, usize),
    #[error("reset operator must be a single-qubit Pauli")]
    NotSingleQubit,
    #[error("projection sign inconsistent with current state")]
    InconsistentProjection,
}

/// An ideal Clifford operation on explicit qubit targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CliffordOp {
    I(usize),
    H(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cx(usize, usize),
}

impl CliffordOp {
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            CliffordOp::I(q)
            | CliffordOp::H(q)
            | CliffordOp::S(q)
            | CliffordOp::X(q)
            | CliffordOp::Y(q)
            | CliffordOp::Z(q) => vec![q],
            CliffordOp::Cx(c, t) => vec![c, t],
        }
    }
}

/// Outcome classification of a Pauli measurement before any collapse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeasureKind {
    Deterministic(Sign),
    Random,
}

/// Bit-packed stabilizer/destabilizer tableau for an n-qubit pure state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    w: usize,
    xs: Vec<u64>,
    zs: Vec<u64>,
    phases: Vec<u8>,
}

impl Tableau {
    /// The state |0…0⟩: stabilizers Z_i, destabilizers X_i, all signs +.
    pub fn new(n: usize) -> Result<Self, TableauError> {
        if n == 0 {
            return Err(TableauError::ZeroQubits);
        }
        let w = words_for(n);
        let rows = 2 * n + 1;
        let mut t = Tableau {
            n,
            w,
            xs: vec![0; rows * w],
            zs: vec![0; rows * w],
            phases: vec![0; rows],
        };
        for q in 0..n {
            t.xs[q * w + (q >> 6)] |= 1 << (q & 63); // destabilizer X_q
            t.zs[(n + q) * w + (q >> 6)] |= 1 << (q & 63); // stabilizer Z_q
        }
        Ok(t)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    fn row_range(&self, r: usize) -> std::ops::Range<usize> {
        r * self.w..(r + 1) * self.w
    }

    fn row_as_pauli(&self, r: usize) -> PauliString {
        let mut p = PauliString::identity(self.n);
        for q in 0..self.n {
            let (wq, b) = (q >> 6, q & 63);
            if self.xs[r * self.w + wq] >> b & 1 != 0 {
                p.set_x(q, true);
            }
            if self.zs[r * self.w + wq] >> b & 1 != 0 {
                p.set_z(q, true);
            }
        }
        p.set_phase(self.phases[r]);
        p
    }

    pub fn destabilizer(&self, i: usize) -> PauliString {
        assert!(i < self.n);
        self.row_as_pauli(i)
    }

    pub fn stabilizer(&self, i: usize) -> PauliString {
        assert!(i < self.n);
        self.row_as_pauli(self.n + i)
    }

    pub(crate) fn stabilizer_bits(&self, i: usize) -> (&[u64], &[u64], u8) {
        let r = self.row_range(self.n + i);
        (&self.xs[r.clone()], &self.zs[r], self.phases[self.n + i])
    }

    /// row i := row k · row i with exact phase tracking.
    fn row_mul(&mut self, i: usize, k: usize) {
        debug_assert_ne!(i, k);
        let w = self.w;
        let (io, ko) = (i * w, k * w);
        let delta = product_phase_delta(
            &self.xs[ko..ko + w],
            &self.zs[ko..ko + w],
            &self.xs[io..io + w],
            &self.zs[io..io + w],
        );
        self.phases[i] =
            (self.phases[k] as i64 + self.phases[i] as i64 + delta).rem_euclid(4) as u8;
        for t in 0..w {
            let x = self.xs[ko + t];
            self.xs[io + t] ^= x;
            let z = self.zs[ko + t];
            self.zs[io + t] ^= z;
        }
    }

    fn row_copy(&mut self, dst: usize, src: usize) {
        let w = self.w;
        for t in 0..w {
            self.xs[dst * w + t] = self.xs[src * w + t];
            self.zs[dst * w + t] = self.zs[src * w + t];
        }
        self.phases[dst] = self.phases[src];
    }

    fn row_clear(&mut self, r: usize) {
        let w = self.w;
        self.xs[r * self.w..(r + 1) * w].fill(0);
        self.zs[r * self.w..(r + 1) * w].fill(0);
        self.phases[r] = 0;
    }

    fn row_anticommutes(&self, r: usize, p: &PauliString) -> bool {
        let range = self.row_range(r);
        anticommutes_bits(&self.xs[range.clone()], &self.zs[range], p.xs(), p.zs())
    }

    fn check_qubit(&self, q: usize) -> Result<(), TableauError> {
        if q < self.n {
            Ok(())
        } else {
            Err(TableauError::QubitOutOfRange(q, self.n))
        }
    }

    pub fn apply(&mut self, op: &CliffordOp) -> Result<(), TableauError> {
        match *op {
            CliffordOp::I(q) => self.check_qubit(q),
            CliffordOp::H(q) => {
                self.check_qubit(q)?;
                self.apply_h(q);
                Ok(())
            }
            CliffordOp::S(q) => {
                self.check_qubit(q)?;
                self.apply_s(q);
                Ok(())
            }
            CliffordOp::X(q) => {
                self.check_qubit(q)?;
                self.apply_x(q);
                Ok(())
            }
            CliffordOp::Y(q) => {
                self.check_qubit(q)?;
                self.apply_y(q);
                Ok(())
            }
            CliffordOp::Z(q) => {
                self.check_qubit(q)?;
                self.apply_z(q);
                Ok(())
            }
            CliffordOp::Cx(c, t) => {
                self.check_qubit(c)?;
                self.check_qubit(t)?;
                if c == t {
                    return Err(TableauError::DuplicateTargets);
                }
                self.apply_cx(c, t);
                Ok(())
            }
        }
    }

    pub fn apply_h(&mut self, q: usize) {
        let (wq, b) = (q >> 6, q & 63);
        let mask = 1u64 << b;
        let w = self.w;
        for r in 0..2 * self.n {
            let xi = r * w + wq;
            let x = self.xs[xi] & mask;
            let z = self.zs[xi] & mask;
            if x != 0 && z != 0 {
                self.phases[r] = (self.phases[r] + 2) & 3;
            }
            self.xs[xi] ^= x ^ z;
            self.zs[xi] ^= x ^ z;
        }
    }

    pub fn apply_s(&mut self, q: usize) {
        let (wq, b) = (q >> 6, q & 63);
        let mask = 1u64 << b;
        let w = self.w;
        for r in 0..2 * self.n {
            let xi = r * w + wq;
            let x = self.xs[xi] & mask;
            let z = self.zs[xi] & mask;
            if x != 0 && z != 0 {
                self.phases[r] = (self.phases[r] + 2) & 3;
            }
            self.zs[xi] ^= x;
        }
    }

    pub fn apply_x(&mut self, q: usize) {
        let (wq, b) = (q >> 6, q & 63);
        let mask = 1u64 << b;
        for r in 0..2 * self.n {
            if self.zs[r * self.w + wq] & mask != 0 {
                self.phases[r] = (self.phases[r] + 2) & 3;
            }
        }
    }

    pub fn apply_z(&mut self, q: usize) {
        let (wq, b) = (q >> 6, q & 63);
        let mask = 1u64 << b;
        for r in 0..2 * self.n {
            if self.xs[r * self.w + wq] & mask != 0 {
                self.phases[r] = (self.phases[r] + 2) & 3;
            }
        }
    }

    pub fn apply_y(&mut self, q: usize) {
        let (wq, b) = (q >> 6, q & 63);
        let mask = 1u64 << b;
        for r in 0..2 * self.n {
            let xi = r * self.w + wq;
            if (self.xs[xi] ^ self.zs[xi]) & mask != 0 {
                self.phases[r] = (self.phases[r] + 2) & 3;
            }
        }
    }

    pub fn apply_cx(&mut self, c: usize, t: usize) {
        let (wc, bc) = (c >> 6, c & 63);
        let (wt, bt) = (t >> 6, t & 63);
        let w = self.w;
        for r in 0..2 * self.n {
            let xc = self.xs[r * w + wc] >> bc & 1;
            let zc = self.zs[r * w + wc] >> bc & 1;
            let xt = self.xs[r * w + wt] >> bt & 1;
            let zt = self.zs[r * w + wt] >> bt & 1;
            if xc & zt & (xt ^ zc ^ 1) != 0 {
                self.phases[r] = (self.phases[r] + 2) & 3;
            }
            self.xs[r * w + wt] ^= xc << bt;
            self.zs[r * w + wc] ^= zt << bc;
        }
    }

    /// Conjugates the state by a Pauli operator (phase of `p` is ignored).
    pub fn apply_pauli(&mut self, p: &PauliString) {
        assert_eq!(p.n(), self.n);
        for r in 0..2 * self.n {
            if self.row_anticommutes(r, p) {
                self.phases[r] = (self.phases[r] + 2) & 3;
            }
        }
    }

    fn validate_measurement(&self, p: &PauliString) -> Result<(), TableauError> {
        if p.n() != self.n {
            return Err(TableauError::SizeMismatch(p.n(), self.n));
        }
        if !p.is_hermitian() {
            return Err(TableauError::NonHermitian);
        }
        Ok(())
    }

    fn first_anticommuting_stabilizer(&self, p: &PauliString) -> Option<usize> {
        (self.n..2 * self.n).find(|&r| self.row_anticommutes(r, p))
    }

    /// Classifies the measurement of `p` without collapsing the state.
    pub fn measure_kind(&mut self, p: &PauliString) -> Result<MeasureKind, TableauError> {
        self.validate_measurement(p)?;
        if self.first_anticommuting_stabilizer(p).is_some() {
            return Ok(MeasureKind::Random);
        }
        Ok(MeasureKind::Deterministic(self.deterministic_sign(p)))
    }

    /// Sign of `p` in the stabilizer group; caller guarantees determinism.
    fn deterministic_sign(&mut self, p: &PauliString) -> Sign {
        let scratch = 2 * self.n;
        self.row_clear(scratch);
        for i in 0..self.n {
            if self.row_anticommutes(i, p) {
                self.row_mul(scratch, self.n + i);
            }
        }
        debug_assert!({
            let acc = self.row_as_pauli(scratch);
            acc.xs() == p.xs() && acc.zs() == p.zs()
        });
        debug_assert!(self.phases[scratch] % 2 == 0);
        if (self.phases[scratch] as i16 - p.phase() as i16).rem_euclid(4) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Collapses the random branch of measuring `p` to the given outcome.
    fn project_random(&mut self, pivot: usize, p: &PauliString, outcome: Sign) {
        for r in 0..2 * self.n {
            if r != pivot && self.row_anticommutes(r, p) {
                self.row_mul(r, pivot);
            }
        }
        self.row_copy(pivot - self.n, pivot);
        // new stabilizer row = outcome · p
        let w = self.w;
        for t in 0..w {
            self.xs[pivot * w + t] = p.xs()[t];
            self.zs[pivot * w + t] = p.zs()[t];
        }
        self.phases[pivot] = (p.phase() + outcome.phase()) & 3;
    }

    /// Measures the Hermitian Pauli `p`. Deterministic outcomes leave the
    /// state unchanged and consume no randomness; random outcomes are ±1 with
    /// probability 1/2 each and collapse the state.
    pub fn measure<R: Rng + ?Sized>(
        &mut self,
        p: &PauliString,
        rng: &mut R,
    ) -> Result<Sign, TableauError> {
        self.validate_measurement(p)?;
        match self.first_anticommuting_stabilizer(p) {
            Some(pivot) => {
                let outcome = if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
                self.project_random(pivot, p, outcome);
                Ok(outcome)
            }
            None => Ok(self.deterministic_sign(p)),
        }
    }

    /// Measures `p` forcing the stated outcome on the random branch. Errors
    /// if the outcome is deterministic and disagrees.
    pub fn project_onto(&mut self, p: &PauliString, outcome: Sign) -> Result<(), TableauError> {
        self.validate_measurement(p)?;
        match self.first_anticommuting_stabilizer(p) {
            Some(pivot) => {
                self.project_random(pivot, p, outcome);
                Ok(())
            }
            None => {
                if self.deterministic_sign(p) == outcome {
                    Ok(())
                } else {
                    Err(TableauError::InconsistentProjection)
                }
            }
        }
    }

    /// Measures the single-qubit Pauli `p` and flips the qubit with an
    /// anticommuting Pauli if the outcome disagrees with `sign`, leaving
    /// sign·p in the stabilizer group.
    pub fn reset_to_eigenstate<R: Rng + ?Sized>(
        &mut self,
        p: &PauliString,
        sign: Sign,
        rng: &mut R,
    ) -> Result<(), TableauError> {
        self.validate_measurement(p)?;
        if p.weight() != 1 {
            return Err(TableauError::NotSingleQubit);
        }
        let q = (0..self.n).find(|&q| p.axis_at(q).is_some()).unwrap();
        let outcome = self.measure(p, rng)?;
        if outcome != sign {
            match p.axis_at(q).unwrap() {
                Axis::X | Axis::Y => self.apply_z(q),
                Axis::Z => self.apply_x(q),
            }
        }
        Ok(())
    }

    /// Convenience: measure Z_q and reset the qubit to |0⟩.
    pub fn reset_z_plus<R: Rng + ?Sized>(&mut self, q: usize, rng: &mut R) -> Result<(), TableauError> {
        let p = PauliString::single(self.n, q, Axis::Z, Sign::Plus);
        self.reset_to_eigenstate(&p, Sign::Plus, rng)
    }

    /// Builds the stabilizer state fixed by the given signed generators by
    /// projecting |0…0⟩ onto each in turn. Generators must be independent,
    /// mutually commuting, and Hermitian.
    pub fn from_stabilizers(n: usize, gens: &[PauliString]) -> Result<Self, TableauError> {
        let mut t = Tableau::new(n)?;
        for g in gens {
            let mut body = g.clone();
            body.set_phase(0);
            t.project_onto(&body, g.sign())?;
        }
        Ok(t)
    }

    /// Checks the internal commutation structure: stabilizers mutually
    /// commute, destabilizer i anticommutes with stabilizer i only.
    pub fn check_invariants(&self) -> bool {
        let stab: Vec<PauliString> = (0..self.n).map(|i| self.stabilizer(i)).collect();
        let destab: Vec<PauliString> = (0..self.n).map(|i| self.destabilizer(i)).collect();
        for i in 0..self.n {
            for j in 0..self.n {
                if stab[i].anticommutes(&stab[j]) {
                    return false;
                }
                if destab[i].anticommutes(&stab[j]) != (i == j) {
                    return false;
                }
            }
        }
        true
    }
}

/// Gaussian-elimination workspace over signed Pauli rows, used for overlap
/// computation. Rows are kept in echelon form indexed by leading bit, with
/// exact phase tracking under row products.
#[derive(Clone, Debug)]
pub struct StabilizerEchelon {
    n: usize,
    w: usize,
    xs: Vec<u64>,
    zs: Vec<u64>,
    phases: Vec<u8>,
    /// pivot bit index (0..2n) → row index + 1; 0 = empty
    table: Vec<u32>,
}

/// Result of reducing a row against the echelon.
enum Reduction {
    /// Row reduced to identity; the residual phase (mod 4) is returned.
    Zero(u8),
    Added,
}

impl StabilizerEchelon {
    pub fn new(n: usize) -> Self {
        let w = words_for(n);
        StabilizerEchelon {
            n,
            w,
            xs: Vec::with_capacity(2 * n * w),
            zs: Vec::with_capacity(2 * n * w),
            phases: Vec::with_capacity(2 * n),
            table: vec![0; 2 * n],
        }
    }

    /// Echelon primed with the stabilizer rows of `t`.
    pub fn from_state(t: &Tableau) -> Self {
        let mut e = Self::new(t.n());
        for i in 0..t.n() {
            let (xs, zs, phase) = t.stabilizer_bits(i);
            let r = e.reduce_insert(xs, zs, phase);
            debug_assert!(matches!(r, Reduction::Added));
        }
        e
    }

    fn leading_bit(&self, xs: &[u64], zs: &[u64]) -> Option<usize> {
        for (wi, &wv) in xs.iter().enumerate() {
            if wv != 0 {
                return Some(wi * 64 + wv.trailing_zeros() as usize);
            }
        }
        for (wi, &wv) in zs.iter().enumerate() {
            if wv != 0 {
                return Some(self.n + wi * 64 + wv.trailing_zeros() as usize);
            }
        }
        None
    }

    fn reduce_insert(&mut self, xs: &[u64], zs: &[u64], phase: u8) -> Reduction {
        let w = self.w;
        let mut x = xs.to_vec();
        let mut z = zs.to_vec();
        let mut ph = phase;
        loop {
            let Some(l) = self.leading_bit(&x, &z) else {
                return Reduction::Zero(ph & 3);
            };
            let slot = self.table[l];
            if slot == 0 {
                let row = self.phases.len();
                self.xs.extend_from_slice(&x);
                self.zs.extend_from_slice(&z);
                self.phases.push(ph & 3);
                self.table[l] = row as u32 + 1;
                return Reduction::Added;
            }
            let r = (slot - 1) as usize;
            let (rx, rz) = (&self.xs[r * w..(r + 1) * w], &self.zs[r * w..(r + 1) * w]);
            let delta = product_phase_delta(&x, &z, rx, rz);
            ph = (ph as i64 + self.phases[r] as i64 + delta).rem_euclid(4) as u8;
            for t in 0..w {
                x[t] ^= rx[t];
                z[t] ^= rz[t];
            }
        }
    }

    /// |⟨target|state⟩|² where `self` was primed from the target state.
    /// Returns `None` for orthogonal states, otherwise the exponent `e ≤ 0`
    /// such that the overlap is 2^e (dyadic exact).
    pub fn overlap_exponent(&self, state: &Tableau) -> Result<Option<i32>, TableauError> {
        if state.n() != self.n {
            return Err(TableauError::SizeMismatch(state.n(), self.n));
        }
        let mut e = self.clone();
        let mut common = 0i32;
        for i in 0..state.n() {
            let (xs, zs, phase) = state.stabilizer_bits(i);
            match e.reduce_insert(xs, zs, phase) {
                Reduction::Zero(0) => common += 1,
                Reduction::Zero(2) => return Ok(None),
                Reduction::Zero(p) => unreachable!("odd phase {p} on reduced stabilizer row"),
                Reduction::Added => {}
            }
        }
        Ok(Some(common - self.n as i32))
    }
}

/// |⟨a|b⟩|² of two stabilizer states, exact as a dyadic rational.
pub fn stabilizer_overlap(a: &Tableau, b: &Tableau) -> Result<f64, TableauError> {
    let e = StabilizerEchelon::from_state(a).overlap_exponent(b)?;
    Ok(match e {
        None => 0.0,
        Some(exp) => (exp as f64).exp2(),
    })
}
