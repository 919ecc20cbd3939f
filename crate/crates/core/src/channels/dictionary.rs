//! The stabilizer-channel dictionary: 24 single-qubit Clifford unitaries
//! (canonicalized to H/S words), 3 non-selective Pauli dephasing channels,
//! and 6 measure-and-reset channels — 33 entries that affinely span the
//! 12-dimensional space of single-qubit trace-preserving maps.

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::pauli::{Axis, PauliString, Sign};
use crate::scalar::Scalar;
use crate::tableau::{Tableau, TableauError};

use super::ptm::PauliTransferMatrix;
use super::ChannelError;

/// Identifier of one dictionary entry. Entry 0 is the identity channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerChannelId {
    /// One of the 24 single-qubit Clifford unitaries, in dictionary order.
    CliffordUnitary(u8),
    /// Non-selective measurement of the axis Pauli.
    Dephase(Axis),
    /// Measure the axis Pauli and reset to the given eigenstate.
    Reset(Axis, Sign),
}

pub const DICTIONARY_SIZE: usize = 33;

impl StabilizerChannelId {
    pub const IDENTITY: StabilizerChannelId = StabilizerChannelId::CliffordUnitary(0);

    /// Stable index 0..33: Cliffords, then dephasings (X, Y, Z), then resets
    /// (X+, X−, Y+, Y−, Z+, Z−).
    pub fn index(self) -> usize {
        match self {
            StabilizerChannelId::CliffordUnitary(i) => i as usize,
            StabilizerChannelId::Dephase(a) => 24 + axis_index(a),
            StabilizerChannelId::Reset(a, s) => {
                27 + 2 * axis_index(a) + if s == Sign::Plus { 0 } else { 1 }
            }
        }
    }

    pub fn from_index(i: usize) -> Result<Self, ChannelError> {
        match i {
            0..=23 => Ok(StabilizerChannelId::CliffordUnitary(i as u8)),
            24..=26 => Ok(StabilizerChannelId::Dephase(Axis::ALL[i - 24])),
            27..=32 => {
                let a = Axis::ALL[(i - 27) / 2];
                let s = if (i - 27) % 2 == 0 { Sign::Plus } else { Sign::Minus };
                Ok(StabilizerChannelId::Reset(a, s))
            }
            _ => Err(ChannelError::UnknownDictionaryEntry(i)),
        }
    }

    pub fn all() -> impl Iterator<Item = StabilizerChannelId> {
        (0..DICTIONARY_SIZE).map(|i| Self::from_index(i).unwrap())
    }
}

fn axis_index(a: Axis) -> usize {
    match a {
        Axis::X => 0,
        Axis::Y => 1,
        Axis::Z => 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HsGate {
    H,
    S,
}

type Rot = [[i8; 3]; 3];

const ROT_H: Rot = [[0, 0, 1], [0, -1, 0], [1, 0, 0]];
const ROT_S: Rot = [[0, -1, 0], [1, 0, 0], [0, 0, 1]];

fn rot_mul(a: &Rot, b: &Rot) -> Rot {
    let mut out = [[0i8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = 0i8;
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k] * bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

/// One of the 24 single-qubit Clifford unitaries: its canonical H/S word
/// (application order) and exact Bloch rotation.
#[derive(Clone, Debug)]
pub struct CliffordEntry {
    pub word: Vec<HsGate>,
    pub rotation: Rot,
}

/// The full dictionary, built once per process.
pub struct Dictionary {
    pub cliffords: Vec<CliffordEntry>,
    pauli_unitary: [u8; 3],
}

impl Dictionary {
    fn build() -> Self {
        let identity: Rot = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut entries: Vec<CliffordEntry> =
            vec![CliffordEntry { word: Vec::new(), rotation: identity }];
        let mut cursor = 0;
        while cursor < entries.len() {
            let base = entries[cursor].clone();
            for (gate, rot) in [(HsGate::H, ROT_H), (HsGate::S, ROT_S)] {
                let rotation = rot_mul(&rot, &base.rotation);
                if !entries.iter().any(|e| e.rotation == rotation) {
                    let mut word = base.word.clone();
                    word.push(gate);
                    entries.push(CliffordEntry { word, rotation });
                }
            }
            cursor += 1;
        }
        assert_eq!(entries.len(), 24, "single-qubit Clifford group size");

        let mut pauli_unitary = [0u8; 3];
        for (slot, diag) in [
            [1i8, -1, -1], // X: flips Y and Z
            [-1, 1, -1],   // Y
            [-1, -1, 1],   // Z
        ]
        .iter()
        .enumerate()
        {
            let want: Rot = [[diag[0], 0, 0], [0, diag[1], 0], [0, 0, diag[2]]];
            pauli_unitary[slot] = entries
                .iter()
                .position(|e| e.rotation == want)
                .expect("Pauli unitary present in Clifford group") as u8;
        }

        let dict = Dictionary { cliffords: entries, pauli_unitary };
        debug_assert_eq!(dict.affine_rank(), 12);
        dict
    }

    /// Dictionary id of the Pauli unitary conjugation about `axis`.
    pub fn pauli_unitary_id(&self, axis: Axis) -> StabilizerChannelId {
        StabilizerChannelId::CliffordUnitary(self.pauli_unitary[axis_index(axis)])
    }

    /// Exact PTM of a dictionary entry.
    pub fn ptm<T: Scalar>(&self, id: StabilizerChannelId) -> PauliTransferMatrix<T> {
        let mut out = PauliTransferMatrix::zero();
        out.m[0][0] = T::one();
        match id {
            StabilizerChannelId::CliffordUnitary(i) => {
                let rot = &self.cliffords[i as usize].rotation;
                for r in 0..3 {
                    for c in 0..3 {
                        out.m[r + 1][c + 1] = T::of(rot[r][c] as f64);
                    }
                }
            }
            StabilizerChannelId::Dephase(a) => {
                let k = axis_index(a);
                out.m[k + 1][k + 1] = T::one();
            }
            StabilizerChannelId::Reset(a, s) => {
                let k = axis_index(a);
                out.m[k + 1][0] = T::of(s.as_f64());
            }
        }
        out
    }

    /// Rank of the dictionary's affine span around the identity entry.
    pub fn affine_rank(&self) -> usize {
        // 12 coordinates: PTM rows 1..=3 over all 4 columns
        let mut rows: Vec<[f64; 12]> = Vec::new();
        let id_ptm = self.ptm::<f64>(StabilizerChannelId::IDENTITY);
        for id in StabilizerChannelId::all().skip(1) {
            let p = self.ptm::<f64>(id);
            let mut row = [0.0; 12];
            for r in 0..3 {
                for c in 0..4 {
                    row[r * 4 + c] = p.m[r + 1][c] - id_ptm.m[r + 1][c];
                }
            }
            rows.push(row);
        }
        let mut rank = 0;
        for col in 0..12 {
            if let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col].abs() > 0.5) {
                rows.swap(rank, pivot);
                for r in 0..rows.len() {
                    if r != rank && rows[r][col].abs() > 0.5 {
                        let f = rows[r][col] / rows[rank][col];
                        for c in col..12 {
                            rows[r][c] -= f * rows[rank][c];
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }
}

/// Process-wide dictionary instance.
pub fn dictionary() -> &'static Dictionary {
    static DICT: OnceLock<Dictionary> = OnceLock::new();
    DICT.get_or_init(Dictionary::build)
}

/// All 33 entries with their exact PTMs, in stable index order.
pub fn dictionary_ptms<T: Scalar>() -> Vec<(StabilizerChannelId, PauliTransferMatrix<T>)> {
    let d = dictionary();
    StabilizerChannelId::all().map(|id| (id, d.ptm(id))).collect()
}

impl Tableau {
    /// Applies a dictionary stabilizer channel to one qubit: Clifford ids
    /// replay their H/S word, dephase ids measure non-selectively, reset ids
    /// measure and re-prepare the eigenstate.
    pub fn apply_stabilizer_channel<R: Rng + ?Sized>(
        &mut self,
        id: StabilizerChannelId,
        qubit: usize,
        rng: &mut R,
    ) -> Result<(), TableauError> {
        match id {
            StabilizerChannelId::CliffordUnitary(i) => {
                if qubit >= self.n() {
                    return Err(TableauError::QubitOutOfRange(qubit, self.n()));
                }
                for g in &dictionary().cliffords[i as usize].word {
                    match g {
                        HsGate::H => self.apply_h(qubit),
                        HsGate::S => self.apply_s(qubit),
                    }
                }
                Ok(())
            }
            StabilizerChannelId::Dephase(axis) => {
                let p = PauliString::single(self.n(), qubit, axis, Sign::Plus);
                self.measure(&p, rng).map(|_| ())
            }
            StabilizerChannelId::Reset(axis, sign) => {
                let p = PauliString::single(self.n(), qubit, axis, Sign::Plus);
                self.reset_to_eigenstate(&p, sign, rng)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dictionary_has_33_entries_and_full_affine_span() {
        let entries = dictionary_ptms::<f64>();
        assert_eq!(entries.len(), 33);
        assert_eq!(dictionary().affine_rank(), 12);
    }

    #[test]
    fn identity_entry_is_identity_ptm() {
        let d = dictionary();
        let ptm = d.ptm::<f64>(StabilizerChannelId::IDENTITY);
        assert!(ptm.max_abs_diff(&PauliTransferMatrix::identity()) < 1e-15);
        assert!(d.cliffords[0].word.is_empty());
    }

    #[test]
    fn dephase_z_ptm() {
        let ptm = dictionary().ptm::<f64>(StabilizerChannelId::Dephase(Axis::Z));
        let mut want = PauliTransferMatrix::zero();
        want.m[0][0] = 1.0;
        want.m[3][3] = 1.0;
        assert!(ptm.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn reset_z_plus_ptm_pattern() {
        let ptm = dictionary().ptm::<f64>(StabilizerChannelId::Reset(Axis::Z, Sign::Plus));
        for i in 0..4 {
            for j in 0..4 {
                let want = match (i, j) {
                    (0, 0) | (3, 0) => 1.0,
                    _ => 0.0,
                };
                assert_eq!(ptm.m[i][j], want);
            }
        }
    }

    #[test]
    fn pauli_unitary_words_act_correctly() {
        let d = dictionary();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        // Z-unitary on |+> gives |->
        let mut t = Tableau::new(1).unwrap();
        t.apply_h(0);
        t.apply_stabilizer_channel(d.pauli_unitary_id(Axis::Z), 0, &mut rng).unwrap();
        assert_eq!(t.stabilizer(0), "-X".parse().unwrap());
        // X-unitary on |0> gives |1>
        let mut t = Tableau::new(1).unwrap();
        t.apply_stabilizer_channel(d.pauli_unitary_id(Axis::X), 0, &mut rng).unwrap();
        assert_eq!(t.stabilizer(0), "-Z".parse().unwrap());
    }

    #[test]
    fn dephase_z_on_plus_is_unbiased_coin() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let trials = 10_000;
        let mut plus = 0;
        for _ in 0..trials {
            let mut t = Tableau::new(1).unwrap();
            t.apply_h(0);
            t.apply_stabilizer_channel(StabilizerChannelId::Dephase(Axis::Z), 0, &mut rng)
                .unwrap();
            if t.stabilizer(0) == "Z".parse().unwrap() {
                plus += 1;
            } else {
                assert_eq!(t.stabilizer(0), "-Z".parse().unwrap());
            }
        }
        let sigma = (trials as f64 * 0.25).sqrt();
        assert!((plus as f64 - trials as f64 / 2.0).abs() < 5.0 * sigma);
    }

    #[test]
    fn reset_channel_on_one_gives_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut t = Tableau::new(1).unwrap();
        t.apply_x(0);
        t.apply_stabilizer_channel(StabilizerChannelId::Reset(Axis::Z, Sign::Plus), 0, &mut rng)
            .unwrap();
        assert_eq!(t.stabilizer(0), "Z".parse().unwrap());
    }

    #[test]
    fn index_roundtrip() {
        for id in StabilizerChannelId::all() {
            assert_eq!(StabilizerChannelId::from_index(id.index()).unwrap(), id);
        }
        assert!(StabilizerChannelId::from_index(33).is_err());
    }
}
