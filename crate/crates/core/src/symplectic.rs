//! Binary symplectic representation of n-qubit Pauli operators, up to phase.
//!
//! A Pauli `σx^{a_1}σz^{b_1} ⊗ … ⊗ σx^{a_n}σz^{b_n}` is stored as `(a|b)`.
//! Over GF(4) with basis `{1, ω}`: `I ↔ 0 ↔ (00)`, `X ↔ 1 ↔ (10)`,
//! `Y ↔ ω² ↔ (11)`, `Z ↔ ω ↔ (01)`.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{BitMatrix, BitVector, Echelon};
use crate::error::{check_len, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliSymbol {
    I,
    X,
    Y,
    Z,
}

impl PauliSymbol {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliSymbol::I,
            (true, false) => PauliSymbol::X,
            (true, true) => PauliSymbol::Y,
            (false, true) => PauliSymbol::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliSymbol::I => (false, false),
            PauliSymbol::X => (true, false),
            PauliSymbol::Y => (true, true),
            PauliSymbol::Z => (false, true),
        }
    }

    /// GF(4) name of the symbol: `0`, `1`, `w` or `w2`.
    pub fn gf4(self) -> &'static str {
        match self {
            PauliSymbol::I => "0",
            PauliSymbol::X => "1",
            PauliSymbol::Y => "w2",
            PauliSymbol::Z => "w",
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliSymbol::I => 'I',
            PauliSymbol::X => 'X',
            PauliSymbol::Y => 'Y',
            PauliSymbol::Z => 'Z',
        }
    }
}

/// `(g^X | g^Z)` with both halves of length `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SympVector {
    x: BitVector,
    z: BitVector,
}

impl SympVector {
    pub fn new(x: BitVector, z: BitVector) -> Result<Self> {
        check_len(x.len(), z.len())?;
        Ok(SympVector { x, z })
    }

    pub fn zero(n: usize) -> Self {
        SympVector {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
        }
    }

    /// Splits a length-`2n` vector `(a|b)`.
    pub fn from_concat(v: &BitVector) -> Result<Self> {
        if !v.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter("odd symplectic length".into()));
        }
        let n = v.len() / 2;
        Ok(SympVector {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
        })
    }

    pub fn to_concat(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &BitVector {
        &self.x
    }

    pub fn z(&self) -> &BitVector {
        &self.z
    }

    pub fn symbol(&self, i: usize) -> PauliSymbol {
        PauliSymbol::from_bits(self.x.get(i), self.z.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of qubits on which the operator is not the identity.
    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// `(wgt(g^X) + wgt(g^Z) + wgt(g^X + g^Z)) / 2`.
    pub fn weight_half_sum(&self) -> usize {
        (self.x.weight() + self.z.weight() + (&self.x ^ &self.z).weight()) / 2
    }

    pub fn gf4_symbols(&self) -> String {
        (0..self.n())
            .map(|i| self.symbol(i).gf4())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_hex_pair(&self) -> SympHex {
        SympHex {
            x: self.x.to_hex(),
            z: self.z.to_hex(),
        }
    }

    pub fn from_hex_pair(n: usize, h: &SympHex) -> Result<Self> {
        Ok(SympVector {
            x: BitVector::from_hex(n, &h.x)?,
            z: BitVector::from_hex(n, &h.z)?,
        })
    }
}

/// Serialized form `{x, z}` of a [`SympVector`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SympHex {
    pub x: String,
    pub z: String,
}

impl fmt::Display for SympVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            write!(f, "{}", self.symbol(i).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SympVector {
    type Err = Error;

    /// Parses a Pauli string such as `"XZZXI"`.
    fn from_str(s: &str) -> Result<Self> {
        let n = s.chars().count();
        let mut v = SympVector::zero(n);
        for (i, c) in s.chars().enumerate() {
            let sym = match c.to_ascii_uppercase() {
                'I' => PauliSymbol::I,
                'X' => PauliSymbol::X,
                'Y' => PauliSymbol::Y,
                'Z' => PauliSymbol::Z,
                other => return Err(Error::Parse(format!("bad Pauli symbol {other:?}"))),
            };
            let (a, b) = sym.bits();
            v.x.set(i, a);
            v.z.set(i, b);
        }
        Ok(v)
    }
}

impl BitXorAssign<&SympVector> for SympVector {
    fn bitxor_assign(&mut self, rhs: &SympVector) {
        self.x ^= &rhs.x;
        self.z ^= &rhs.z;
    }
}

impl BitXor<&SympVector> for &SympVector {
    type Output = SympVector;
    fn bitxor(self, rhs: &SympVector) -> SympVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

/// `a·d + b·c` for `u = (a|b)`, `v = (c|d)`; zero iff the operators commute.
pub fn symp_inner(u: &SympVector, v: &SympVector) -> bool {
    assert_eq!(u.n(), v.n(), "symplectic inner product of different sizes");
    u.x.dot(&v.z) ^ u.z.dot(&v.x)
}

/// Swaps the halves of a concatenated `(a|b)`, turning the symplectic form
/// into the Euclidean one: `<u, v>_s = u · swap(v)`.
pub(crate) fn swap_halves(v: &BitVector) -> BitVector {
    let n = v.len() / 2;
    v.slice(n, 2 * n).concat(&v.slice(0, n))
}

/// Additive code over GF(4) given by independent generators in `(x|z)` layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveSympCode {
    n: usize,
    generators: BitMatrix,
}

impl AdditiveSympCode {
    /// Span of `rows` (each of length `2n`). Dependent rows are dropped.
    pub fn from_rows(n: usize, rows: &[BitVector]) -> Result<Self> {
        let mut e = Echelon::new(2 * n);
        let mut generators = BitMatrix::empty(2 * n);
        for r in rows {
            check_len(2 * n, r.len())?;
            if e.insert(r).is_some() {
                generators.push_row(r.clone());
            }
        }
        Ok(AdditiveSympCode { n, generators })
    }

    pub fn from_vectors(n: usize, vs: &[SympVector]) -> Result<Self> {
        let rows: Vec<BitVector> = vs.iter().map(SympVector::to_concat).collect();
        Self::from_rows(n, &rows)
    }

    pub fn zero(n: usize) -> Self {
        AdditiveSympCode {
            n,
            generators: BitMatrix::empty(2 * n),
        }
    }

    pub fn full(n: usize) -> Self {
        AdditiveSympCode {
            n,
            generators: BitMatrix::identity(2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.generators.nrows()
    }

    /// Generators as concatenated `(x|z)` rows.
    pub fn generators(&self) -> &BitMatrix {
        &self.generators
    }

    pub fn generator_vectors(&self) -> Vec<SympVector> {
        self.generators
            .rows()
            .iter()
            .map(|r| SympVector::from_concat(r).expect("even length"))
            .collect()
    }

    pub fn contains(&self, v: &SympVector) -> bool {
        Echelon::from_matrix(&self.generators).contains(&v.to_concat())
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_code(&self, other: &AdditiveSympCode) -> bool {
        let e = Echelon::from_matrix(&self.generators);
        other.generators.rows().iter().all(|r| e.contains(r))
    }

    pub fn same_span(&self, other: &AdditiveSympCode) -> bool {
        self.rank() == other.rank() && self.contains_code(other)
    }

    /// Element `Σ coeffs_i g_i`.
    pub fn combine(&self, coeffs: &BitVector) -> SympVector {
        SympVector::from_concat(&self.generators.combine(coeffs)).expect("even length")
    }

    /// Bit `j` is `<v, g_j>`.
    pub fn symplectic_syndrome(&self, v: &SympVector) -> BitVector {
        let w = swap_halves(&v.to_concat());
        self.generators.mul_vec(&w)
    }

    /// Symplectic dual: all `w` with `<w, g> = 0` for every generator `g`.
    pub fn symplectic_dual(&self) -> AdditiveSympCode {
        let swapped = BitMatrix::from_rows(
            2 * self.n,
            self.generators.rows().iter().map(swap_halves).collect(),
        )
        .expect("consistent lengths");
        AdditiveSympCode {
            n: self.n,
            generators: swapped.kernel(),
        }
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let gens = self.generator_vectors();
        gens.iter()
            .enumerate()
            .all(|(i, u)| gens[i + 1..].iter().all(|v| !symp_inner(u, v)))
    }
}
