//! Bit-packed n-qubit Pauli operators with phase tracked mod 4.
//!
//! A `PauliString` represents i^phase · ⊗_q σ(x_q, z_q) with the canonical
//! Hermitian single-qubit Paulis σ(0,0)=I, σ(1,0)=X, σ(0,1)=Z, σ(1,1)=Y.
//! Hermitian operators therefore carry phase 0 (+1) or 2 (−1).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Number of 64-bit words needed for `n` bits.
#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// Single-qubit Pauli axis (excluding identity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// (x bit, z bit) of the axis operator.
    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Axis::X => (true, false),
            Axis::Y => (true, true),
            Axis::Z => (false, true),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => write!(f, "X"),
            Axis::Y => write!(f, "Y"),
            Axis::Z => write!(f, "Z"),
        }
    }
}

/// A ±1 sign, e.g. a measurement outcome or eigenstate label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Phase exponent of i: 0 for +, 2 for −.
    #[inline]
    pub fn phase(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 2,
        }
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    #[inline]
    pub fn from_bit(flipped: bool) -> Sign {
        if flipped {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Bit-packed n-qubit Pauli operator with phase exponent of i in {0,1,2,3}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    xs: Vec<u64>,
    zs: Vec<u64>,
    phase: u8,
}

impl PauliString {
    /// The identity operator on `n` qubits.
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        PauliString { n, xs: vec![0; w], zs: vec![0; w], phase: 0 }
    }

    /// A single-qubit Pauli `axis` on qubit `q` with the given sign.
    pub fn single(n: usize, q: usize, axis: Axis, sign: Sign) -> Self {
        assert!(q < n, "qubit index out of range");
        let mut p = Self::identity(n);
        let (x, z) = axis.bits();
        p.set_x(q, x);
        p.set_z(q, z);
        p.phase = sign.phase();
        p
    }

    /// Builds from explicit per-qubit (x, z) bit pairs.
    pub fn from_bits(n: usize, bits: impl IntoIterator<Item = (usize, bool, bool)>, sign: Sign) -> Self {
        let mut p = Self::identity(n);
        for (q, x, z) in bits {
            assert!(q < n);
            p.set_x(q, x);
            p.set_z(q, z);
        }
        p.phase = sign.phase();
        p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub(crate) fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    /// Hermitian operators have phase 0 or 2.
    #[inline]
    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    /// Sign of a Hermitian operator.
    pub fn sign(&self) -> Sign {
        debug_assert!(self.is_hermitian());
        if self.phase == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    #[inline]
    pub fn x_bit(&self, q: usize) -> bool {
        self.xs[q >> 6] >> (q & 63) & 1 != 0
    }

    #[inline]
    pub fn z_bit(&self, q: usize) -> bool {
        self.zs[q >> 6] >> (q & 63) & 1 != 0
    }

    #[inline]
    pub fn set_x(&mut self, q: usize, v: bool) {
        let (w, b) = (q >> 6, q & 63);
        if v {
            self.xs[w] |= 1 << b;
        } else {
            self.xs[w] &= !(1 << b);
        }
    }

    #[inline]
    pub fn set_z(&mut self, q: usize, v: bool) {
        let (w, b) = (q >> 6, q & 63);
        if v {
            self.zs[w] |= 1 << b;
        } else {
            self.zs[w] &= !(1 << b);
        }
    }

    pub(crate) fn xs(&self) -> &[u64] {
        &self.xs
    }

    pub(crate) fn zs(&self) -> &[u64] {
        &self.zs
    }

    /// True when every tensor factor is the identity (phase may be anything).
    pub fn is_identity_body(&self) -> bool {
        self.xs.iter().all(|&w| w == 0) && self.zs.iter().all(|&w| w == 0)
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.xs
            .iter()
            .zip(&self.zs)
            .map(|(&x, &z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// True iff the two operators anticommute.
    pub fn anticommutes(&self, other: &PauliString) -> bool {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        anticommutes_bits(&self.xs, &self.zs, &other.xs, &other.zs)
    }

    /// In-place product `self = self · other`, phase tracked mod 4.
    pub fn mul_assign(&mut self, other: &PauliString) {
        assert_eq!(self.n, other.n, "qubit count mismatch");
        let delta = product_phase_delta(&self.xs, &self.zs, &other.xs, &other.zs);
        self.phase = (self.phase as i64 + other.phase as i64 + delta).rem_euclid(4) as u8;
        for (a, b) in self.xs.iter_mut().zip(&other.xs) {
            *a ^= b;
        }
        for (a, b) in self.zs.iter_mut().zip(&other.zs) {
            *a ^= b;
        }
    }

    /// Product of two Pauli operators.
    pub fn mul(&self, other: &PauliString) -> PauliString {
        let mut p = self.clone();
        p.mul_assign(other);
        p
    }

    /// Per-qubit view as (I|X|Y|Z) characters, used by Display and tests.
    pub fn axis_at(&self, q: usize) -> Option<Axis> {
        match (self.x_bit(q), self.z_bit(q)) {
            (false, false) => None,
            (true, false) => Some(Axis::X),
            (true, true) => Some(Axis::Y),
            (false, true) => Some(Axis::Z),
        }
    }
}

/// Symplectic inner product over packed bit slices: true iff operators anticommute.
#[inline]
pub(crate) fn anticommutes_bits(x1: &[u64], z1: &[u64], x2: &[u64], z2: &[u64]) -> bool {
    let mut acc = 0u32;
    for i in 0..x1.len() {
        acc ^= (x1[i] & z2[i]).count_ones() ^ (z1[i] & x2[i]).count_ones();
    }
    acc & 1 != 0
}

/// Phase exponent contribution Σ_q g(σ1_q, σ2_q) for the product σ1·σ2,
/// excluding the operands' own phases.
#[inline]
pub(crate) fn product_phase_delta(x1: &[u64], z1: &[u64], x2: &[u64], z2: &[u64]) -> i64 {
    let mut plus = 0i64;
    let mut minus = 0i64;
    for i in 0..x1.len() {
        let (a, b, c, d) = (x1[i], z1[i], x2[i], z2[i]);
        // left factor Y: +1 where right is Z-ish in x, etc.; see AG04 g-function
        let p = (a & b & d & !c) | (a & !b & d & c) | (!a & b & c & !d);
        let m = (a & b & c & !d) | (a & !b & d & !c) | (!a & b & c & d);
        plus += p.count_ones() as i64;
        minus += m.count_ones() as i64;
    }
    plus - minus
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phase {
            0 => write!(f, "+")?,
            1 => write!(f, "+i")?,
            2 => write!(f, "-")?,
            3 => write!(f, "-i")?,
            _ => unreachable!(),
        }
        for q in 0..self.n {
            match self.axis_at(q) {
                None => write!(f, "I")?,
                Some(a) => write!(f, "{a}")?,
            }
        }
        Ok(())
    }
}

/// Parses strings like "+XIZ", "-YY", "XI" (implicit +).
impl FromStr for PauliString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (sign, body) = match s.as_bytes().first() {
            Some(b'+') => (Sign::Plus, &s[1..]),
            Some(b'-') => (Sign::Minus, &s[1..]),
            _ => (Sign::Plus, s),
        };
        let n = body.len();
        if n == 0 {
            return Err("empty Pauli string".into());
        }
        let mut p = PauliString::identity(n);
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' | '_' | '.' => {}
                'X' => p.set_x(q, true),
                'Z' => p.set_z(q, true),
                'Y' => {
                    p.set_x(q, true);
                    p.set_z(q, true);
                }
                other => return Err(format!("invalid Pauli character {other:?}")),
            }
        }
        p.phase = sign.phase();
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_products() {
        // XZ = -iY, ZX = iY, XY = iZ, YZ = iX
        let cases = [
            ("X", "Z", "Y", 3),
            ("Z", "X", "Y", 1),
            ("X", "Y", "Z", 1),
            ("Y", "X", "Z", 3),
            ("Y", "Z", "X", 1),
            ("Z", "Y", "X", 3),
            ("X", "X", "I", 0),
            ("Y", "Y", "I", 0),
            ("Z", "Z", "I", 0),
        ];
        for (a, b, c, phase) in cases {
            let got = p(a).mul(&p(b));
            assert_eq!(got.axis_at(0), p(c).axis_at(0), "{a}·{b}");
            assert_eq!(got.phase(), phase, "{a}·{b}");
        }
    }

    #[test]
    fn commutation() {
        assert!(p("X").anticommutes(&p("Z")));
        assert!(!p("X").anticommutes(&p("X")));
        assert!(!p("XX").anticommutes(&p("ZZ")));
        assert!(p("XI").anticommutes(&p("ZZ")));
        // anticommuting at two positions makes the operators commute
        assert!(!p("YIZ").anticommutes(&p("XIY")));
        assert!(p("YIZ").anticommutes(&p("XIZ")));
    }

    #[test]
    fn product_signs_multiqubit() {
        // (X⊗Z)·(Z⊗X) = (XZ)⊗(ZX) = (-iY)⊗(iY) = Y⊗Y
        let got = p("XZ").mul(&p("ZX"));
        assert_eq!(got, p("YY"));
        // (XX)(ZZ) = (-iY)⊗(-iY) = -YY; the two explicit minus signs cancel
        let got = p("-XX").mul(&p("-ZZ"));
        assert_eq!(got, p("-YY"));
    }

    #[test]
    fn associativity_on_random_strings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(1..70);
            let mut ops = Vec::new();
            for _ in 0..3 {
                let mut q = PauliString::identity(n);
                for i in 0..n {
                    q.set_x(i, rng.gen());
                    q.set_z(i, rng.gen());
                }
                q.set_phase(rng.gen_range(0..4));
                ops.push(q);
            }
            let left = ops[0].mul(&ops[1]).mul(&ops[2]);
            let right = ops[0].mul(&ops[1].mul(&ops[2]));
            assert_eq!(left, right);
        }
    }

    #[test]
    fn display_roundtrip() {
        for s in ["+XIZ", "-YY", "+IIII", "-XYZI"] {
            assert_eq!(p(s).to_string(), s);
        }
    }
}
