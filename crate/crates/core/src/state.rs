//! Register states over GF(p).
//!
//! A [`Vector`] assigns a field coefficient to each of the `2^m` standard basis
//! kets of an `m`-qubit register. A [`State`] is a nonzero vector; the zero
//! vector is not a physical state.
//!
//! Wire 0 is the top wire and the most significant bit of a basis index. For
//! the algorithm's register `|y⟩|x₁…xₙ⟩` the index is `(y << n) | x` with `x₁`
//! the most significant bit of `x`.
//!
//! Two storage backends sit behind the same interface:
//!
//! * [`Backend::Dense`] stores all `2^m` coefficients. Over GF(2) each one is a
//!   single bit packed into `u64` words.
//! * [`Backend::Sparse`] stores only the nonzero coefficients as a sorted list.
//!   Over GF(2), adding two vectors is the symmetric difference of supports.
//!
//! Equality compares coefficients exactly and ignores the backend.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bits::PackedBits;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Largest register the simulator accepts (the dense backend holds `2^m` entries).
pub const MAX_QUBITS: usize = 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    #[default]
    Dense,
    Sparse,
}

impl Backend {
    pub const ALL: [Backend; 2] = [Backend::Dense, Backend::Sparse];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Dense => "dense",
            Backend::Sparse => "sparse",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "dense" => Ok(Backend::Dense),
            "sparse" => Ok(Backend::Sparse),
            other => Err(format!("unknown backend `{other}` (expected dense or sparse)")),
        }
    }
}

/// Position of `|y⟩|x̄⟩` in the standard basis of an `(n+1)`-qubit register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex(pub usize);

impl BasisIndex {
    pub fn from_parts(y: bool, x: usize, n: usize) -> Self {
        debug_assert!(x < 1 << n);
        BasisIndex((usize::from(y) << n) | x)
    }

    pub fn y(self, n: usize) -> bool {
        (self.0 >> n) & 1 == 1
    }

    pub fn x(self, n: usize) -> usize {
        self.0 & ((1 << n) - 1)
    }
}

/// Result of a standard-basis measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Outcome {
    pub index: usize,
}

#[derive(Debug, Clone)]
pub(crate) enum Coeffs {
    /// Dense GF(2), one bit per basis ket.
    Bits(PackedBits),
    /// Dense GF(p) for p > 2.
    Words(Vec<u32>),
    /// Nonzero `(index, value)` pairs, strictly increasing by index.
    Sparse(Vec<(usize, u32)>),
}

#[derive(Debug, Clone)]
pub struct Vector {
    qubits: usize,
    field: FieldSpec,
    pub(crate) coeffs: Coeffs,
}

pub(crate) fn check_qubits(qubits: usize) -> Result<()> {
    if qubits > MAX_QUBITS {
        Err(Error::RegisterTooLarge {
            qubits,
            limit: MAX_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// Sorts entries by index, sums duplicates and drops zeros.
pub(crate) fn normalize_sparse(field: FieldSpec, mut entries: Vec<(usize, u32)>) -> Vec<(usize, u32)> {
    entries.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, u32)> = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add_raw(last.1, v),
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

impl Vector {
    pub fn zero(qubits: usize, field: FieldSpec, backend: Backend) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        let coeffs = match backend {
            Backend::Sparse => Coeffs::Sparse(Vec::new()),
            Backend::Dense if field.is_gf2() => Coeffs::Bits(PackedBits::zeros(dim)),
            Backend::Dense => Coeffs::Words(vec![0; dim]),
        };
        Ok(Vector { qubits, field, coeffs })
    }

    /// Builds a vector by summing `(index, coefficient)` terms. Repeated
    /// indices accumulate, so over GF(2) they cancel in pairs.
    pub fn from_terms<I>(qubits: usize, field: FieldSpec, backend: Backend, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut v = Vector::zero(qubits, field, backend)?;
        let dim = v.dim();
        let mut sparse = Vec::new();
        for (i, c) in terms {
            field.check_same(c.field())?;
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, bound: dim });
            }
            match &mut v.coeffs {
                Coeffs::Bits(bits) => {
                    if c.value() == 1 {
                        bits.flip(i);
                    }
                }
                Coeffs::Words(words) => words[i] = field.add_raw(words[i], c.value()),
                Coeffs::Sparse(_) => sparse.push((i, c.value())),
            }
        }
        if let Coeffs::Sparse(entries) = &mut v.coeffs {
            *entries = normalize_sparse(field, sparse);
        }
        Ok(v)
    }

    /// GF(2) vector given as a list of basis kets. Repeats cancel.
    pub fn from_indices(qubits: usize, backend: Backend, indices: &[usize]) -> Result<Self> {
        let one = FieldSpec::GF2.one();
        Vector::from_terms(qubits, FieldSpec::GF2, backend, indices.iter().map(|&i| (i, one)))
    }

    /// GF(2) vector from ket bit strings, e.g. `["001", "100"]`.
    pub fn from_kets(backend: Backend, kets: &[&str]) -> Result<Self> {
        let qubits = kets.first().map_or(0, |k| k.len());
        let mut indices = Vec::with_capacity(kets.len());
        for k in kets {
            if k.len() != qubits {
                return Err(Error::DimensionMismatch {
                    expected: qubits,
                    found: k.len(),
                });
            }
            if let Some(bad) = k.chars().find(|c| !matches!(c, '0' | '1')) {
                return Err(Error::InvalidTable(bad));
            }
            let i = usize::from_str_radix(k, 2).map_err(|_| Error::RegisterTooLarge {
                qubits,
                limit: MAX_QUBITS,
            })?;
            indices.push(i);
        }
        Vector::from_indices(qubits, backend, &indices)
    }

    /// Uniformly random vector (possibly zero).
    pub fn random<R: Rng + ?Sized>(qubits: usize, field: FieldSpec, backend: Backend, rng: &mut R) -> Result<Self> {
        check_qubits(qubits)?;
        let p = u64::from(field.modulus());
        let terms: Vec<(usize, Scalar)> = (0..1usize << qubits)
            .map(|i| (i, field.scalar(rng.random_range(0..p))))
            .collect();
        Vector::from_terms(qubits, field, backend, terms)
    }

    #[inline]
    pub fn qubits(&self) -> usize {
        self.qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn backend(&self) -> Backend {
        match self.coeffs {
            Coeffs::Sparse(_) => Backend::Sparse,
            _ => Backend::Dense,
        }
    }

    pub(crate) fn with_coeffs(&self, coeffs: Coeffs) -> Vector {
        Vector {
            qubits: self.qubits,
            field: self.field,
            coeffs,
        }
    }

    pub fn coefficient(&self, index: usize) -> Result<Scalar> {
        if index >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index,
                bound: self.dim(),
            });
        }
        let raw = match &self.coeffs {
            Coeffs::Bits(bits) => u32::from(bits.get(index)),
            Coeffs::Words(words) => words[index],
            Coeffs::Sparse(entries) => entries
                .binary_search_by_key(&index, |e| e.0)
                .map_or(0, |pos| entries[pos].1),
        };
        Ok(self.field.scalar(u64::from(raw)))
    }

    /// Nonzero coefficients as `(index, value)`, increasing by index.
    pub fn terms(&self) -> Vec<(usize, u32)> {
        match &self.coeffs {
            Coeffs::Bits(bits) => bits.iter_ones().map(|i| (i, 1)).collect(),
            Coeffs::Words(words) => words
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (i, v))
                .collect(),
            Coeffs::Sparse(entries) => entries.clone(),
        }
    }

    /// Basis indices with a nonzero coefficient, strictly increasing.
    pub fn support(&self) -> Vec<usize> {
        match &self.coeffs {
            Coeffs::Bits(bits) => bits.iter_ones().collect(),
            _ => self.terms().into_iter().map(|(i, _)| i).collect(),
        }
    }

    pub fn support_len(&self) -> usize {
        match &self.coeffs {
            Coeffs::Bits(bits) => bits.count_ones() as usize,
            Coeffs::Words(words) => words.iter().filter(|&&v| v != 0).count(),
            Coeffs::Sparse(entries) => entries.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Bits(bits) => !bits.any(),
            Coeffs::Words(words) => words.iter().all(|&v| v == 0),
            Coeffs::Sparse(entries) => entries.is_empty(),
        }
    }

    fn check_compatible(&self, other: &Vector) -> Result<()> {
        self.field.check_same(other.field)?;
        if self.qubits != other.qubits {
            return Err(Error::DimensionMismatch {
                expected: self.qubits,
                found: other.qubits,
            });
        }
        Ok(())
    }

    /// Componentwise sum; the result uses `self`'s backend and may be zero.
    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_compatible(other)?;
        let field = self.field;
        let coeffs = match (&self.coeffs, &other.coeffs) {
            (Coeffs::Bits(a), Coeffs::Bits(b)) => {
                let mut out = a.clone();
                out.xor_assign(b);
                Coeffs::Bits(out)
            }
            (Coeffs::Words(a), Coeffs::Words(b)) => {
                Coeffs::Words(a.iter().zip(b).map(|(&x, &y)| field.add_raw(x, y)).collect())
            }
            (Coeffs::Sparse(a), _) => {
                let mut all = a.clone();
                all.extend(other.terms());
                Coeffs::Sparse(normalize_sparse(field, all))
            }
            _ => {
                let rhs = other.to_backend(self.backend());
                return self.add(&rhs);
            }
        };
        Ok(self.with_coeffs(coeffs))
    }

    /// Tensor product; `self`'s qubits become the high-order wires.
    pub fn tensor(&self, other: &Vector) -> Result<Vector> {
        self.field.check_same(other.field)?;
        let qubits = self.qubits + other.qubits;
        check_qubits(qubits)?;
        let field = self.field;
        let lhs = self.terms();
        let rhs = other.terms();
        let terms = lhs.iter().flat_map(|&(i, a)| {
            rhs.iter()
                .map(move |&(j, b)| ((i << other.qubits) | j, field.scalar(u64::from(field.mul_raw(a, b)))))
        });
        Vector::from_terms(qubits, field, self.backend(), terms)
    }

    pub fn to_backend(&self, backend: Backend) -> Vector {
        if backend == self.backend() {
            return self.clone();
        }
        let field = self.field;
        let terms = self.terms().into_iter().map(|(i, v)| (i, field.scalar(u64::from(v))));
        Vector::from_terms(self.qubits, field, backend, terms).expect("same register, same field")
    }

    /// Ket-sum rendering, e.g. `|001⟩ + |100⟩ + |101⟩`. Coefficients other
    /// than 1 are written in front of the ket; the zero vector renders as `0`.
    pub fn render(&self) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let width = self.qubits;
        terms
            .iter()
            .map(|&(i, v)| {
                let ket = if width == 0 {
                    "|⟩".to_string()
                } else {
                    format!("|{i:0width$b}⟩")
                };
                if v == 1 {
                    ket
                } else {
                    format!("{v}{ket}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl PartialEq for Vector {
    fn eq(&self, other: &Vector) -> bool {
        self.qubits == other.qubits && self.field == other.field && self.terms() == other.terms()
    }
}

impl Eq for Vector {}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A nonzero vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State(Vector);

impl State {
    /// The basis ket `|i⟩` of an `m`-qubit register.
    pub fn basis(qubits: usize, index: usize, field: FieldSpec, backend: Backend) -> Result<Self> {
        check_qubits(qubits)?;
        let bound = 1usize << qubits;
        if index >= bound {
            return Err(Error::IndexOutOfRange { index, bound });
        }
        let v = Vector::from_terms(qubits, field, backend, [(index, field.one())])?;
        Ok(State(v))
    }

    /// `|0⟩` over GF(2).
    pub fn zero_ket(backend: Backend) -> Self {
        State::basis(1, 0, FieldSpec::GF2, backend).expect("valid basis ket")
    }

    /// `|1⟩` over GF(2).
    pub fn one_ket(backend: Backend) -> Self {
        State::basis(1, 1, FieldSpec::GF2, backend).expect("valid basis ket")
    }

    /// `|+⟩ = |0⟩ + |1⟩` over GF(2).
    pub fn plus_ket(backend: Backend) -> Self {
        State(Vector::from_indices(1, backend, &[0, 1]).expect("valid kets"))
    }

    /// All nonzero vectors of an `m`-qubit register over GF(p), in increasing
    /// lexicographic order of their coefficient lists. Small `m` only.
    pub fn enumerate(qubits: usize, field: FieldSpec, backend: Backend) -> Result<Vec<State>> {
        check_qubits(qubits)?;
        let dim = 1usize << qubits;
        let p = u64::from(field.modulus());
        let count = p.checked_pow(dim as u32).ok_or(Error::RegisterTooLarge {
            qubits,
            limit: MAX_QUBITS,
        })?;
        let mut out = Vec::new();
        for code in 1..count {
            let mut rest = code;
            let mut terms = Vec::with_capacity(dim);
            for i in (0..dim).rev() {
                terms.push((i, field.scalar(rest % p)));
                rest /= p;
            }
            out.push(State(Vector::from_terms(qubits, field, backend, terms)?));
        }
        Ok(out)
    }

    /// Uniformly random nonzero vector.
    pub fn random<R: Rng + ?Sized>(qubits: usize, field: FieldSpec, backend: Backend, rng: &mut R) -> Result<Self> {
        loop {
            let v = Vector::random(qubits, field, backend, rng)?;
            if !v.is_zero() {
                return Ok(State(v));
            }
        }
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }

    pub fn tensor(&self, other: &State) -> Result<State> {
        // A product of nonzero vectors is nonzero.
        Ok(State(self.0.tensor(&other.0)?))
    }

    pub fn to_backend(&self, backend: Backend) -> State {
        State(self.0.to_backend(backend))
    }

    /// Standard-basis measurement: one element of the support, chosen
    /// uniformly by a generator seeded from `seed` alone, so equal seeds and
    /// equal states give equal outcomes. The theory itself assigns no
    /// distribution; only membership in the support is meaningful.
    pub fn measure(&self, seed: u64) -> Outcome {
        let support = self.0.support();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = if support.len() == 1 {
            0
        } else {
            rng.random_range(0..support.len())
        };
        Outcome { index: support[pick] }
    }
}

impl TryFrom<Vector> for State {
    type Error = Error;

    fn try_from(v: Vector) -> Result<State> {
        if v.is_zero() {
            Err(Error::ZeroVector)
        } else {
            Ok(State(v))
        }
    }
}

impl From<State> for Vector {
    fn from(s: State) -> Vector {
        s.0
    }
}

impl Deref for State {
    type Target = Vector;

    fn deref(&self) -> &Vector {
        &self.0
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
