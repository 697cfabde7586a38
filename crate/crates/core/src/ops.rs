//! Linear maps on registers: 2×2 gates, the fan-out controlled-NOT and the
//! census of one-qubit maps over GF(2).

use std::fmt;

use crate::bits::PackedBits;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::state::{normalize_sparse, Coeffs, State, Vector};

/// A 2×2 matrix `[[a, b], [c, d]]` whose columns are the images of `|0⟩` and `|1⟩`:
/// `g|0⟩ = a|0⟩ + c|1⟩`, `g|1⟩ = b|0⟩ + d|1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate2 {
    field: FieldSpec,
    // row-major a, b, c, d
    m: [u32; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateName {
    /// `|0⟩ ↦ |+⟩`, `|1⟩ ↦ |1⟩`, `|+⟩ ↦ |0⟩`.
    S,
    /// `|0⟩ ↦ |0⟩`, `|1⟩ ↦ |+⟩`, `|+⟩ ↦ |1⟩`. The dagger is only a name; there is no adjoint here.
    SDag,
    X,
    I,
}

impl GateName {
    pub const ALL: [GateName; 4] = [GateName::S, GateName::SDag, GateName::X, GateName::I];

    pub fn label(self) -> &'static str {
        match self {
            GateName::S => "s",
            GateName::SDag => "s_dag",
            GateName::X => "x",
            GateName::I => "i",
        }
    }
}

/// The named GF(2) gates.
pub fn named_gate(name: GateName, field: FieldSpec) -> Result<Gate2> {
    if !field.is_gf2() {
        return Err(Error::UnsupportedField { p: field.modulus() });
    }
    let m = match name {
        GateName::S => [1, 0, 1, 1],
        GateName::SDag => [1, 1, 0, 1],
        GateName::X => [0, 1, 1, 0],
        GateName::I => [1, 0, 0, 1],
    };
    Ok(Gate2 { field, m })
}

impl Gate2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Result<Self> {
        let field = a.field();
        for s in [b, c, d] {
            field.check_same(s.field())?;
        }
        Ok(Gate2 {
            field,
            m: [a.value(), b.value(), c.value(), d.value()],
        })
    }

    /// Entries are reduced mod p.
    pub fn from_values(field: FieldSpec, rows: [[u64; 2]; 2]) -> Self {
        let r = |v: u64| field.scalar(v).value();
        Gate2 {
            field,
            m: [r(rows[0][0]), r(rows[0][1]), r(rows[1][0]), r(rows[1][1])],
        }
    }

    pub fn s() -> Self {
        named_gate(GateName::S, FieldSpec::GF2).unwrap()
    }

    pub fn s_dag() -> Self {
        named_gate(GateName::SDag, FieldSpec::GF2).unwrap()
    }

    pub fn x() -> Self {
        named_gate(GateName::X, FieldSpec::GF2).unwrap()
    }

    pub fn identity(field: FieldSpec) -> Self {
        Gate2::from_values(field, [[1, 0], [0, 1]])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Entries as scalars, row-major `[a, b, c, d]`.
    pub fn entries(&self) -> [Scalar; 4] {
        self.m.map(|v| self.field.scalar(u64::from(v)))
    }

    pub fn det(&self) -> Scalar {
        let f = self.field;
        let [a, b, c, d] = self.m;
        let ad = f.scalar(u64::from(f.mul_raw(a, d)));
        let bc = f.scalar(u64::from(f.mul_raw(b, c)));
        ad.sub(bc).expect("same field")
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Inverse through the adjugate.
    pub fn inverse(&self) -> Result<Gate2> {
        let det_inv = self.det().inv().map_err(|_| Error::NonInvertibleGate)?;
        let f = self.field;
        let [a, b, c, d] = self.entries();
        let scale = |s: Scalar| s.mul(det_inv).expect("same field").value();
        Ok(Gate2 {
            field: f,
            m: [scale(d), scale(b.neg()), scale(c.neg()), scale(a)],
        })
    }

    /// Applies the map to a one-qubit vector.
    pub fn act(&self, v: &Vector) -> Result<Vector> {
        apply_single_raw(self, 0, v)
    }
}

impl fmt::Display for Gate2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// Matrix product `g · h`: apply `h` first.
pub fn compose(g: &Gate2, h: &Gate2) -> Result<Gate2> {
    g.field.check_same(h.field)?;
    let f = g.field;
    let [a, b, c, d] = g.m;
    let [e, fh, gg, hh] = h.m;
    let dot = |x: u32, y: u32, z: u32, w: u32| f.add_raw(f.mul_raw(x, y), f.mul_raw(z, w));
    Ok(Gate2 {
        field: f,
        m: [dot(a, e, b, gg), dot(a, fh, b, hh), dot(c, e, d, gg), dot(c, fh, d, hh)],
    })
}

fn check_qubit(q: usize, qubits: usize) -> Result<()> {
    if q >= qubits {
        Err(Error::IndexOutOfRange {
            index: q,
            bound: qubits,
        })
    } else {
        Ok(())
    }
}

// Position of wire `q` inside a basis index.
#[inline]
fn bit_of_wire(q: usize, qubits: usize) -> usize {
    qubits - 1 - q
}

/// Applies an invertible gate to wire `q` (wire 0 is the top wire).
pub fn apply_single(g: &Gate2, q: usize, s: &State) -> Result<State> {
    if !g.is_invertible() {
        return Err(Error::NonInvertibleGate);
    }
    let v = apply_single_raw(g, q, s.as_vector())?;
    debug_assert!(!v.is_zero());
    State::try_from(v)
}

/// Applies any 2×2 map to wire `q`. The result may be the zero vector.
pub fn apply_single_raw(g: &Gate2, q: usize, v: &Vector) -> Result<Vector> {
    g.field.check_same(v.field())?;
    check_qubit(q, v.qubits())?;
    let k = bit_of_wire(q, v.qubits());
    let f = g.field;
    let [a, b, c, d] = g.m;
    let coeffs = match &v.coeffs {
        Coeffs::Bits(bits) => {
            let mut out = bits.clone();
            butterfly_gf2(&mut out, k, [a == 1, b == 1, c == 1, d == 1]);
            Coeffs::Bits(out)
        }
        Coeffs::Words(words) => {
            let mut out = words.clone();
            let stride = 1usize << k;
            for i0 in 0..out.len() {
                if i0 & stride != 0 {
                    continue;
                }
                let (x0, x1) = (words[i0], words[i0 | stride]);
                out[i0] = f.add_raw(f.mul_raw(a, x0), f.mul_raw(b, x1));
                out[i0 | stride] = f.add_raw(f.mul_raw(c, x0), f.mul_raw(d, x1));
            }
            Coeffs::Words(out)
        }
        Coeffs::Sparse(entries) => {
            let bit = 1usize << k;
            let mut out = Vec::with_capacity(entries.len() * 2);
            for &(i, x) in entries {
                let (i0, i1) = (i & !bit, i | bit);
                let (to0, to1) = if i & bit == 0 { (a, c) } else { (b, d) };
                if to0 != 0 {
                    out.push((i0, f.mul_raw(to0, x)));
                }
                if to1 != 0 {
                    out.push((i1, f.mul_raw(to1, x)));
                }
            }
            Coeffs::Sparse(normalize_sparse(f, out))
        }
    };
    Ok(v.with_coeffs(coeffs))
}

// Bits of a word whose position has bit k clear.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// In-place GF(2) butterfly on index bit `k`, 64 coefficients per word operation.
fn butterfly_gf2(bits: &mut PackedBits, k: usize, [a, b, c, d]: [bool; 4]) {
    let sel = |on: bool| if on { u64::MAX } else { 0 };
    let (ma, mb, mc, md) = (sel(a), sel(b), sel(c), sel(d));
    let words = bits.words_mut();
    if k < 6 {
        let shift = 1u32 << k;
        let low = LOW_MASKS[k];
        for w in words.iter_mut() {
            let lo = *w & low;
            let hi = (*w >> shift) & low;
            let new_lo = (lo & ma) ^ (hi & mb);
            let new_hi = (lo & mc) ^ (hi & md);
            *w = new_lo | (new_hi << shift);
        }
    } else {
        let stride = 1usize << (k - 6);
        for block in words.chunks_mut(2 * stride) {
            let (lo_half, hi_half) = block.split_at_mut(stride);
            for (lo, hi) in lo_half.iter_mut().zip(hi_half.iter_mut()) {
                let (x0, x1) = (*lo, *hi);
                *lo = (x0 & ma) ^ (x1 & mb);
                *hi = (x0 & mc) ^ (x1 & md);
            }
        }
    }
}

/// Relabels basis kets through a bijection `perm` on indices.
pub(crate) fn permute_basis(v: &Vector, perm: impl Fn(usize) -> usize) -> Vector {
    let coeffs = match &v.coeffs {
        Coeffs::Bits(bits) => {
            let mut out = PackedBits::zeros(bits.len());
            for i in bits.iter_ones() {
                out.set(perm(i), true);
            }
            Coeffs::Bits(out)
        }
        Coeffs::Words(words) => {
            let mut out = vec![0; words.len()];
            for (i, &x) in words.iter().enumerate() {
                out[perm(i)] = x;
            }
            Coeffs::Words(out)
        }
        Coeffs::Sparse(entries) => {
            let mut out: Vec<(usize, u32)> = entries.iter().map(|&(i, x)| (perm(i), x)).collect();
            out.sort_unstable_by_key(|e| e.0);
            Coeffs::Sparse(out)
        }
    };
    v.with_coeffs(coeffs)
}

/// Controlled-NOT from `control` onto every wire in `targets`.
pub fn fanout_cnot(control: usize, targets: &[usize], s: &State) -> Result<State> {
    let qubits = s.qubits();
    check_qubit(control, qubits)?;
    let mut flip = 0usize;
    for &t in targets {
        check_qubit(t, qubits)?;
        if t == control {
            return Err(Error::ControlInTargets { qubit: control });
        }
        flip |= 1 << bit_of_wire(t, qubits);
    }
    let ctrl = 1usize << bit_of_wire(control, qubits);
    let v = permute_basis(s.as_vector(), |i| if i & ctrl != 0 { i ^ flip } else { i });
    State::try_from(v)
}

/// All 16 one-qubit linear maps over GF(2), split by invertibility.
#[derive(Debug, Clone)]
pub struct MapCensus {
    pub invertible: Vec<Gate2>,
    pub non_invertible: Vec<Gate2>,
}

/// Enumerates the 16 matrices over GF(2) in row-major binary order.
pub fn enumerate_1q_maps(field: FieldSpec) -> Result<MapCensus> {
    if !field.is_gf2() {
        return Err(Error::UnsupportedField { p: field.modulus() });
    }
    let (invertible, non_invertible) = (0u32..16)
        .map(|code| Gate2 {
            field,
            m: [(code >> 3) & 1, (code >> 2) & 1, (code >> 1) & 1, code & 1],
        })
        .partition(Gate2::is_invertible);
    Ok(MapCensus {
        invertible,
        non_invertible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Backend;
    use proptest::prelude::*;

    const GF2: FieldSpec = FieldSpec::GF2;

    fn kets(backend: Backend) -> [State; 3] {
        [
            State::zero_ket(backend),
            State::one_ket(backend),
            State::plus_ket(backend),
        ]
    }

    fn ket(backend: Backend, list: &[&str]) -> State {
        State::try_from(Vector::from_kets(backend, list).unwrap()).unwrap()
    }

    #[test]
    fn named_gate_action_tables() {
        for backend in Backend::ALL {
            let [z, o, p] = kets(backend);
            let s = Gate2::s();
            let sd = Gate2::s_dag();
            assert_eq!(apply_single(&s, 0, &z).unwrap(), p);
            assert_eq!(apply_single(&s, 0, &o).unwrap(), o);
            assert_eq!(apply_single(&s, 0, &p).unwrap(), z);
            assert_eq!(apply_single(&sd, 0, &z).unwrap(), z);
            assert_eq!(apply_single(&sd, 0, &o).unwrap(), p);
            assert_eq!(apply_single(&sd, 0, &p).unwrap(), o);
            assert_eq!(apply_single(&Gate2::x(), 0, &p).unwrap(), p);
        }
    }

    #[test]
    fn named_gates_reject_other_fields() {
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(named_gate(GateName::S, f3), Err(Error::UnsupportedField { p: 3 }));
        assert!(enumerate_1q_maps(f3).is_err());
    }

    #[test]
    fn invertibility() {
        assert!(Gate2::s().is_invertible());
        assert!(Gate2::identity(GF2).is_invertible());
        let ones = Gate2::from_values(GF2, [[1, 1], [1, 1]]);
        assert!(!ones.is_invertible());
        let p = State::plus_ket(Backend::Dense);
        assert!(apply_single_raw(&ones, 0, &p).unwrap().is_zero());
        assert_eq!(apply_single(&ones, 0, &p), Err(Error::NonInvertibleGate));
    }

    #[test]
    fn apply_in_register() {
        for backend in Backend::ALL {
            let init = State::basis(2, 0, GF2, backend).unwrap();
            assert_eq!(
                apply_single(&Gate2::s(), 1, &init).unwrap(),
                ket(backend, &["00", "01"])
            );
            let ones = State::basis(2, 3, GF2, backend).unwrap();
            assert_eq!(
                apply_single(&Gate2::s_dag(), 0, &ones).unwrap(),
                ket(backend, &["01", "11"])
            );
            assert_eq!(apply_single(&Gate2::identity(GF2), 1, &ones).unwrap(), ones);
            assert_eq!(
                apply_single(&Gate2::s(), 2, &ones),
                Err(Error::IndexOutOfRange { index: 2, bound: 2 })
            );
        }
    }

    #[test]
    fn fanout_examples() {
        for backend in Backend::ALL {
            let s = ket(backend, &["100"]);
            assert_eq!(fanout_cnot(0, &[1, 2], &s).unwrap(), ket(backend, &["111"]));
            let s = ket(backend, &["001"]);
            assert_eq!(fanout_cnot(0, &[1, 2], &s).unwrap(), s);
            let s = ket(backend, &["11", "00"]);
            assert_eq!(fanout_cnot(0, &[1], &s).unwrap(), ket(backend, &["10", "00"]));
            assert_eq!(fanout_cnot(0, &[0, 1], &s), Err(Error::ControlInTargets { qubit: 0 }));
            assert!(matches!(fanout_cnot(0, &[5], &s), Err(Error::IndexOutOfRange { .. })));
        }
    }

    #[test]
    fn composition() {
        let i = Gate2::identity(GF2);
        assert_eq!(compose(&Gate2::s(), &Gate2::s()).unwrap(), i);
        assert_eq!(compose(&Gate2::s_dag(), &Gate2::s_dag()).unwrap(), i);
        assert_eq!(compose(&i, &Gate2::x()).unwrap(), Gate2::x());
        let f3 = Gate2::identity(FieldSpec::new(3).unwrap());
        assert!(matches!(compose(&i, &f3), Err(Error::MixedFields { .. })));
    }

    #[test]
    fn census_six_and_ten() {
        let census = enumerate_1q_maps(GF2).unwrap();
        assert_eq!(census.invertible.len(), 6);
        assert_eq!(census.non_invertible.len(), 10);
        for name in GateName::ALL {
            assert!(census.invertible.contains(&named_gate(name, GF2).unwrap()));
        }
        let states = kets(Backend::Dense);
        let mut perms = Vec::new();
        for g in &census.invertible {
            let images: Vec<usize> = states
                .iter()
                .map(|s| {
                    let img = g.act(s).unwrap();
                    states.iter().position(|t| **t == img).unwrap()
                })
                .collect();
            perms.push(images);
        }
        perms.sort();
        perms.dedup();
        assert_eq!(perms.len(), 6);
        for g in &census.non_invertible {
            assert!(states.iter().any(|s| g.act(s).unwrap().is_zero()));
        }
    }

    #[test]
    fn invertible_maps_form_a_group() {
        let census = enumerate_1q_maps(GF2).unwrap();
        let group = &census.invertible;
        for g in group {
            for h in group {
                assert!(group.contains(&compose(g, h).unwrap()));
            }
            // inverse by search agrees with the adjugate formula
            let found: Vec<&Gate2> = group
                .iter()
                .filter(|h| compose(g, h).unwrap() == Gate2::identity(GF2))
                .collect();
            assert_eq!(found.len(), 1);
            assert_eq!(*found[0], g.inverse().unwrap());
        }
    }

    #[test]
    fn gf3_gate_inverse_and_words_backend() {
        let f = FieldSpec::new(3).unwrap();
        let g = Gate2::from_values(f, [[1, 2], [0, 2]]);
        let inv = g.inverse().unwrap();
        assert_eq!(compose(&g, &inv).unwrap(), Gate2::identity(f));
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        let s = State::random(3, f, Backend::Dense, &mut rng).unwrap();
        for q in 0..3 {
            let out = apply_single(&g, q, &s).unwrap();
            let sparse = apply_single(&g, q, &s.to_backend(Backend::Sparse)).unwrap();
            assert_eq!(out, sparse);
            assert_eq!(apply_single(&inv, q, &out).unwrap(), s);
        }
    }

    fn gf2_state(bits: Vec<bool>, qubits: usize, backend: Backend) -> Option<State> {
        let idx: Vec<usize> = bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
        State::try_from(Vector::from_indices(qubits, backend, &idx).unwrap()).ok()
    }

    proptest! {
        #[test]
        fn gates_undo_and_backends_agree(
            bits in prop::collection::vec(any::<bool>(), 1 << 8),
            gate in 0usize..6,
            q in 0usize..8,
        ) {
            let census = enumerate_1q_maps(GF2).unwrap();
            let g = census.invertible[gate];
            let Some(s) = gf2_state(bits, 8, Backend::Dense) else { return Ok(()); };
            let out = apply_single(&g, q, &s).unwrap();
            let sparse = apply_single(&g, q, &s.to_backend(Backend::Sparse)).unwrap();
            prop_assert_eq!(out.support(), sparse.support());
            prop_assert_eq!(apply_single(&g.inverse().unwrap(), q, &out).unwrap(), s.clone());
            let twice = apply_single(&Gate2::s(), q, &apply_single(&Gate2::s(), q, &s).unwrap()).unwrap();
            prop_assert_eq!(&twice, &s);
            let twice = apply_single(&Gate2::s_dag(), q, &apply_single(&Gate2::s_dag(), q, &s).unwrap()).unwrap();
            prop_assert_eq!(&twice, &s);
        }

        #[test]
        fn linearity(
            a in prop::collection::vec(any::<bool>(), 1 << 7),
            b in prop::collection::vec(any::<bool>(), 1 << 7),
            gate in 0usize..6,
            q in 0usize..7,
        ) {
            let g = enumerate_1q_maps(GF2).unwrap().invertible[gate];
            let (Some(u), Some(v)) = (gf2_state(a, 7, Backend::Dense), gf2_state(b, 7, Backend::Dense)) else { return Ok(()); };
            let Ok(sum) = State::try_from(u.add(&v).unwrap()) else { return Ok(()); };
            let lhs = apply_single(&g, q, &sum).unwrap();
            let rhs = apply_single(&g, q, &u).unwrap().add(&apply_single(&g, q, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs.as_vector(), &rhs);
        }

        #[test]
        fn fanout_is_an_involution(
            bits in prop::collection::vec(any::<bool>(), 1 << 6),
            control in 0usize..6,
            mask in 1u32..64,
        ) {
            let targets: Vec<usize> = (0..6).filter(|&t| t != control && mask >> t & 1 == 1).collect();
            let Some(s) = gf2_state(bits, 6, Backend::Dense) else { return Ok(()); };
            let once = fanout_cnot(control, &targets, &s).unwrap();
            let sparse = fanout_cnot(control, &targets, &s.to_backend(Backend::Sparse)).unwrap();
            prop_assert_eq!(&once, &sparse);
            prop_assert_eq!(fanout_cnot(control, &targets, &once).unwrap(), s);
        }
    }
}
