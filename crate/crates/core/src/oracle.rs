//! Reference computations for small instances: exhaustive minimum weights
//! and a dense state-vector Knill-Laflamme check.
//!
//! Nothing here is used by the fast paths; these exist to cross-check them.

use num_complex::Complex64;
use rand::Rng;

use crate::bits::BitVector;
use crate::error::{check_len, Error, Result};
use crate::lincode::LinearCode;
use crate::stabilizer::StabilizerCode;
use crate::symplectic::{symp_inner, AdditiveSympCode, SympVector};

/// Largest qubit count for the dense simulator.
pub const MAX_DENSE_QUBITS: usize = 6;

/// Largest dimension enumerated by the brute-force weight routines.
pub const MAX_BRUTE_DIM: usize = 24;

const TOL: f64 = 1e-9;

/// Calls `f` on every element of the span of `rows`, walking a Gray code so
/// each step costs one XOR. The zero vector is visited first.
pub fn for_each_span_element(len: usize, rows: &[BitVector], mut f: impl FnMut(&BitVector)) {
    assert!(rows.len() <= MAX_BRUTE_DIM, "span too large to enumerate");
    let mut v = BitVector::zeros(len);
    f(&v);
    for i in 1u64..(1u64 << rows.len()) {
        v ^= &rows[i.trailing_zeros() as usize];
        f(&v);
    }
}

fn brute_dim_check(k: usize) -> Result<()> {
    if k > MAX_BRUTE_DIM {
        return Err(Error::InvalidParameter(format!(
            "dimension {k} exceeds brute-force limit {MAX_BRUTE_DIM}"
        )));
    }
    Ok(())
}

/// Minimum nonzero weight by full enumeration; `None` for the zero code.
pub fn brute_min_weight(code: &LinearCode) -> Result<Option<usize>> {
    brute_dim_check(code.k())?;
    let mut best: Option<usize> = None;
    for_each_span_element(code.n(), code.generator().rows(), |v| {
        let w = v.weight();
        if w > 0 && best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    });
    Ok(best)
}

/// Minimum weight of `code + shift` by full enumeration.
pub fn brute_coset_min_weight(code: &LinearCode, shift: &BitVector) -> Result<usize> {
    brute_dim_check(code.k())?;
    check_len(code.n(), shift.len())?;
    let mut best = usize::MAX;
    for_each_span_element(code.n(), code.generator().rows(), |v| {
        best = best.min((v ^ shift).weight());
    });
    Ok(best)
}

/// Symplectic counterpart: minimum weight of `code + shift`, or of the
/// nonzero elements of `code` when the shift is zero.
pub fn brute_symp_min_weight(code: &AdditiveSympCode, shift: &SympVector) -> Result<Option<usize>> {
    brute_dim_check(code.rank())?;
    check_len(code.n(), shift.n())?;
    let s = shift.to_concat();
    let exclude_zero = shift.is_zero();
    let mut best: Option<usize> = None;
    for_each_span_element(2 * code.n(), code.generators().rows(), |v| {
        let u = SympVector::from_concat(&(v ^ &s)).expect("even length");
        if exclude_zero && u.is_zero() {
            return;
        }
        let w = u.weight();
        if best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    });
    Ok(best)
}

/// A Pauli operator on at most [`MAX_DENSE_QUBITS`] qubits, stored as bit
/// masks with qubit `i` at bit `i`. Acts as the Hermitian representative
/// `i^{|x∧z|} X^x Z^z`, times `i^phase`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PauliMatrix {
    pub n: usize,
    pub x: u32,
    pub z: u32,
    pub phase: u8,
}

impl PauliMatrix {
    pub fn new(n: usize, x: u32, z: u32) -> Result<Self> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::InvalidParameter(format!(
                "dense simulation limited to {MAX_DENSE_QUBITS} qubits"
            )));
        }
        let mask = (1u32 << n) - 1;
        if x & !mask != 0 || z & !mask != 0 {
            return Err(Error::InvalidParameter("Pauli mask exceeds n".into()));
        }
        Ok(PauliMatrix { n, x, z, phase: 0 })
    }

    pub fn from_symp(v: &SympVector) -> Result<Self> {
        let mask = |b: &BitVector| b.support().fold(0u32, |m, i| m | (1 << i));
        Self::new(v.n(), mask(v.x()), mask(v.z()))
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// `E|b⟩ = i^{phase + |x∧z|} (-1)^{z·b} |b ⊕ x⟩`.
    pub fn apply(&self, psi: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(psi.len(), 1 << self.n);
        let base = i_pow(self.phase as u32 + (self.x & self.z).count_ones());
        let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
        for (b, amp) in psi.iter().enumerate() {
            let b = b as u32;
            let sign = if (self.z & b).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[(b ^ self.x) as usize] = amp * base * sign;
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let dim = 1usize << self.n;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let mut e = vec![Complex64::new(0.0, 0.0); dim];
            e[col] = Complex64::new(1.0, 0.0);
            for (row, a) in self.apply(&e).into_iter().enumerate() {
                m[row][col] = a;
            }
        }
        m
    }
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    inner(a, a).re.sqrt()
}

/// Orthonormal basis of the joint +1 eigenspace of the stabilizer
/// generators, found by projecting computational basis states.
pub fn codespace(stab: &AdditiveSympCode) -> Result<Vec<Vec<Complex64>>> {
    let n = stab.n();
    let gens: Vec<PauliMatrix> = stab
        .generator_vectors()
        .iter()
        .map(PauliMatrix::from_symp)
        .collect::<Result<_>>()?;
    if !stab.is_self_orthogonal() {
        return Err(Error::Consistency("generators do not commute".into()));
    }
    let dim = 1usize << n;
    let want = 1usize << (n - stab.rank());
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(want);
    for b in 0..dim {
        if basis.len() == want {
            break;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[b] = Complex64::new(1.0, 0.0);
        for g in &gens {
            let gv = g.apply(&v);
            for (a, c) in v.iter_mut().zip(gv) {
                *a = (*a + c) * 0.5;
            }
        }
        for q in &basis {
            let c = inner(q, &v);
            for (a, x) in v.iter_mut().zip(q) {
                *a -= c * x;
            }
        }
        let nv = norm(&v);
        if nv > 1e-6 {
            basis.push(v.into_iter().map(|a| a / nv).collect());
        }
    }
    if basis.len() != want {
        return Err(Error::Consistency(format!(
            "codespace has dimension {}, expected {want}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// Basis `X̄^{i_1}_1 ... X̄^{i_k}_k |0̄⟩`, where `|0̄⟩` is the state fixed by
/// the stabilizer and every logical Z. Index bit `j` selects `X̄_{j+1}`.
pub fn canonical_basis(code: &StabilizerCode) -> Result<Vec<Vec<Complex64>>> {
    let mut gens = code.stab().generator_vectors();
    gens.extend(code.logical_z().iter().cloned());
    let zero = codespace(&AdditiveSympCode::from_vectors(code.n(), &gens)?)?;
    let xs: Vec<PauliMatrix> = code
        .logical_x()
        .iter()
        .map(PauliMatrix::from_symp)
        .collect::<Result<_>>()?;
    let out: Vec<Vec<Complex64>> = (0..1usize << code.k())
        .map(|i| {
            xs.iter()
                .enumerate()
                .filter(|(j, _)| i >> j & 1 == 1)
                .fold(zero[0].clone(), |v, (_, x)| x.apply(&v))
        })
        .collect();
    check_orthonormal(&out)?;
    Ok(out)
}

fn check_orthonormal(basis: &[Vec<Complex64>]) -> Result<()> {
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let want = if i == j { 1.0 } else { 0.0 };
            if (inner(a, b) - want).norm() > TOL {
                return Err(Error::Consistency("basis is not orthonormal".into()));
            }
        }
    }
    Ok(())
}

/// Basis of `⊕_i E_{t_i} Q`. Fails if the translated spaces are not
/// mutually orthogonal.
pub fn union_codespace(
    stab: &AdditiveSympCode,
    translations: &[SympVector],
) -> Result<Vec<Vec<Complex64>>> {
    let q = codespace(stab)?;
    let mut basis = Vec::with_capacity(q.len() * translations.len());
    for t in translations {
        check_len(stab.n(), t.n())?;
        let e = PauliMatrix::from_symp(t)?;
        basis.extend(q.iter().map(|v| e.apply(v)));
    }
    check_orthonormal(&basis)
        .map_err(|_| Error::Consistency("translated codespaces are not orthonormal".into()))?;
    Ok(basis)
}

/// True when `P E P` is not a multiple of `P` on the span of `basis`.
pub fn knill_laflamme_fails(basis: &[Vec<Complex64>], e: &PauliMatrix) -> bool {
    let images: Vec<Vec<Complex64>> = basis.iter().map(|v| e.apply(v)).collect();
    let c = inner(&basis[0], &images[0]);
    for (a, u) in basis.iter().enumerate() {
        for (b, v) in images.iter().enumerate() {
            let want = if a == b { c } else { Complex64::new(0.0, 0.0) };
            if (inner(u, v) - want).norm() > TOL {
                return true;
            }
        }
    }
    false
}

/// Smallest weight of a Pauli violating the Knill-Laflamme conditions, or
/// `n + 1` if none does.
pub fn knill_laflamme_distance(basis: &[Vec<Complex64>], n: usize) -> Result<usize> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::InvalidParameter("too many qubits".into()));
    }
    if basis.is_empty() {
        return Err(Error::InvalidParameter("empty codespace".into()));
    }
    let mut by_weight: Vec<PauliMatrix> = Vec::new();
    for x in 0..1u32 << n {
        for z in 0..1u32 << n {
            if x | z != 0 {
                by_weight.push(PauliMatrix::new(n, x, z)?);
            }
        }
    }
    by_weight.sort_by_key(|p| p.weight());
    Ok(by_weight
        .iter()
        .find(|p| knill_laflamme_fails(basis, p))
        .map_or(n + 1, |p| p.weight()))
}

/// A small union code: stabilizer plus translations from distinct cosets of
/// its normalizer, the first one zero.
#[derive(Clone, Debug)]
pub struct SmallUnionInstance {
    pub stab: AdditiveSympCode,
    pub translations: Vec<SympVector>,
}

fn random_symp<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SympVector {
    let mask = (1u64 << n) - 1;
    SympVector::new(
        BitVector::from_u64(n, rng.random::<u64>() & mask),
        BitVector::from_u64(n, rng.random::<u64>() & mask),
    )
    .expect("same length")
}

/// Random instance on `n ∈ [lo, hi]` qubits with up to `max_translations`
/// translations.
pub fn random_union_instance<R: Rng + ?Sized>(
    rng: &mut R,
    lo: usize,
    hi: usize,
    max_translations: usize,
) -> SmallUnionInstance {
    let n = rng.random_range(lo..=hi);
    let r = rng.random_range(1..n);
    let mut gens: Vec<SympVector> = Vec::new();
    while gens.len() < r {
        let v = random_symp(rng, n);
        if v.is_zero() || gens.iter().any(|g| symp_inner(g, &v)) {
            continue;
        }
        let mut trial = gens.clone();
        trial.push(v.clone());
        if AdditiveSympCode::from_vectors(n, &trial)
            .expect("same n")
            .rank()
            == trial.len()
        {
            gens = trial;
        }
    }
    let stab = AdditiveSympCode::from_vectors(n, &gens).expect("same n");
    let cap = max_translations.min(1 << r);
    let want = rng.random_range(1..=cap);
    let mut translations = vec![SympVector::zero(n)];
    let mut seen = vec![stab.symplectic_syndrome(&SympVector::zero(n))];
    let mut attempts = 0;
    while translations.len() < want && attempts < 1000 {
        attempts += 1;
        let t = random_symp(rng, n);
        let s = stab.symplectic_syndrome(&t);
        if !seen.contains(&s) {
            seen.push(s);
            translations.push(t);
        }
    }
    SmallUnionInstance { stab, translations }
}
