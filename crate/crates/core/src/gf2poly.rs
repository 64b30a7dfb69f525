//! Polynomials over GF(2), the field GF(2^w), cyclotomic cosets, minimal
//! polynomials and primitive idempotents.

use std::fmt;
use std::ops::{Add, Mul};

use crate::bits::{BitMatrix, BitVector};
use crate::error::{Error, Result};

/// Polynomial over GF(2). Bit `i` of the packed limbs is the coefficient of
/// `z^i`; trailing zero limbs are always trimmed, so the zero polynomial has
/// no limbs at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    limbs: Vec<u64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2 { limbs: vec![1] }
    }

    pub fn monomial(d: usize) -> Self {
        let mut p = Poly2::zero();
        p.set_coeff(d, true);
        p
    }

    /// `z^n + 1`.
    pub fn cyclic_modulus(n: usize) -> Self {
        &Poly2::monomial(n) + &Poly2::one()
    }

    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Poly2::zero();
        for &e in exps {
            let c = p.coeff(e);
            p.set_coeff(e, !c);
        }
        p
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = Poly2 { limbs };
        p.trim();
        p
    }

    /// Polynomial whose coefficient of `z^i` is bit `i` of `v`.
    pub fn from_bitvector(v: &BitVector) -> Self {
        Poly2::from_limbs(v.words().to_vec())
    }

    /// Coefficient vector of length `len`; panics if the degree does not fit.
    pub fn to_bitvector(&self, len: usize) -> BitVector {
        if let Some(d) = self.degree() {
            assert!(d < len, "degree {d} does not fit in length {len}");
        }
        BitVector::from_words(len, self.limbs.clone())
    }

    fn trim(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set_coeff(&mut self, i: usize, value: bool) {
        if i / 64 >= self.limbs.len() {
            if !value {
                return;
            }
            self.limbs.resize(i / 64 + 1, 0);
        }
        if value {
            self.limbs[i / 64] |= 1 << (i % 64);
        } else {
            self.limbs[i / 64] &= !(1 << (i % 64));
            self.trim();
        }
    }

    /// Exponents with nonzero coefficients, ascending.
    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.limbs.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(wi * 64 + rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
        }
        out
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn shifted(&self, k: usize) -> Poly2 {
        if self.is_zero() {
            return Poly2::zero();
        }
        let (ws, bs) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + ws + 1];
        for (i, &w) in self.limbs.iter().enumerate() {
            limbs[i + ws] |= w << bs;
            if bs != 0 {
                limbs[i + ws + 1] |= w >> (64 - bs);
            }
        }
        Poly2::from_limbs(limbs)
    }

    fn xor_in(&mut self, other: &Poly2) {
        if other.limbs.len() > self.limbs.len() {
            self.limbs.resize(other.limbs.len(), 0);
        }
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
        self.trim();
    }

    pub fn div_rem(&self, divisor: &Poly2) -> Result<(Poly2, Poly2)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            quot.set_coeff(rd - dd, true);
            rem.xor_in(&divisor.shifted(rd - dd));
        }
        Ok((quot, rem))
    }

    pub fn rem(&self, divisor: &Poly2) -> Result<Poly2> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn divides(&self, other: &Poly2) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Reduction modulo `z^n + 1`, i.e. exponents folded modulo `n`.
    pub fn mod_cyclic(&self, n: usize) -> Poly2 {
        assert!(n > 0);
        let mut out = Poly2::zero();
        for e in self.exponents() {
            let c = out.coeff(e % n);
            out.set_coeff(e % n, !c);
        }
        out
    }

    pub fn gcd(&self, other: &Poly2) -> Poly2 {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// Value at `z = 1`, the parity of the coefficients.
    pub fn eval_at_one(&self) -> bool {
        self.weight() % 2 == 1
    }

    /// Hex of the packed coefficients, lowest degree in the least significant
    /// bit of the first 64-bit word.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0000000000000000".into();
        }
        self.limbs.iter().map(|w| format!("{w:016x}")).collect()
    }

    pub fn from_hex(hex: &str) -> Result<Self> {
        let hex = hex.trim();
        if hex.is_empty() || !hex.len().is_multiple_of(16) {
            return Err(Error::Parse(format!("bad polynomial hex {hex:?}")));
        }
        let limbs = hex
            .as_bytes()
            .chunks(16)
            .map(|c| {
                let s = std::str::from_utf8(c).map_err(|e| Error::Parse(e.to_string()))?;
                u64::from_str_radix(s, 16).map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly2::from_limbs(limbs))
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        out.xor_in(rhs);
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for e in self.exponents() {
            out.xor_in(&rhs.shifted(e));
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "z".to_string(),
                _ => format!("z^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

/// Element of GF(2^w): bit `j` is the coefficient of `z^j` of the residue
/// class modulo the field modulus.
pub type FieldElem = u32;

/// Built-in primitive moduli, indexed by extension degree.
pub fn default_primitive_modulus(w: usize) -> Option<Poly2> {
    let exps: &[usize] = match w {
        2 => &[2, 1, 0],
        3 => &[3, 1, 0],
        4 => &[4, 1, 0],
        5 => &[5, 2, 0],
        6 => &[6, 1, 0],
        7 => &[7, 1, 0],
        8 => &[8, 4, 3, 2, 0],
        9 => &[9, 4, 0],
        10 => &[10, 3, 0],
        11 => &[11, 2, 0],
        12 => &[12, 6, 4, 1, 0],
        _ => return None,
    };
    Some(Poly2::from_exponents(exps))
}

/// GF(2^w) with discrete logarithm tables relative to the primitive element
/// `alpha = z mod modulus`.
#[derive(Clone, Debug)]
pub struct FieldTable {
    w: usize,
    modulus: Poly2,
    log: Vec<u32>,
    antilog: Vec<FieldElem>,
}

impl FieldTable {
    /// Largest supported extension degree.
    pub const MAX_DEGREE: usize = 20;

    pub fn new(w: usize, modulus: Poly2) -> Result<Self> {
        if !(2..=Self::MAX_DEGREE).contains(&w) {
            return Err(Error::InvalidModulus(format!(
                "extension degree {w} outside 2..={}",
                Self::MAX_DEGREE
            )));
        }
        if modulus.degree() != Some(w) {
            return Err(Error::InvalidModulus(format!(
                "modulus {modulus} does not have degree {w}"
            )));
        }
        let size = 1usize << w;
        let n = size - 1;
        let reduce_mask = (modulus.limbs[0] & ((1u64 << w) - 1)) as FieldElem;
        let mut log = vec![u32::MAX; size];
        let mut antilog = Vec::with_capacity(n);
        let mut x: FieldElem = 1;
        for e in 0..n {
            if log[x as usize] != u32::MAX {
                return Err(Error::InvalidModulus(format!(
                    "{modulus} is not primitive: alpha^{e} repeats alpha^{}",
                    log[x as usize]
                )));
            }
            log[x as usize] = e as u32;
            antilog.push(x);
            // multiply by z and reduce
            let carry = (x >> (w - 1)) & 1;
            x = (x << 1) & (n as FieldElem);
            if carry == 1 {
                x ^= reduce_mask;
            }
        }
        if x != 1 {
            return Err(Error::InvalidModulus(format!(
                "{modulus} is not primitive: alpha^{n} != 1"
            )));
        }
        Ok(FieldTable {
            w,
            modulus,
            log,
            antilog,
        })
    }

    pub fn with_default_modulus(w: usize) -> Result<Self> {
        let m = default_primitive_modulus(w)
            .ok_or_else(|| Error::InvalidModulus(format!("no built-in modulus for w={w}")))?;
        Self::new(w, m)
    }

    pub fn degree(&self) -> usize {
        self.w
    }

    pub fn modulus(&self) -> &Poly2 {
        &self.modulus
    }

    /// Multiplicative group order `2^w - 1`.
    pub fn order(&self) -> usize {
        self.antilog.len()
    }

    pub fn size(&self) -> usize {
        self.antilog.len() + 1
    }

    pub fn alpha(&self) -> FieldElem {
        self.alpha_pow(1)
    }

    pub fn alpha_pow(&self, e: usize) -> FieldElem {
        self.antilog[e % self.order()]
    }

    /// Discrete log base alpha; `None` for zero.
    pub fn log(&self, x: FieldElem) -> Option<usize> {
        if x == 0 {
            None
        } else {
            Some(self.log[x as usize] as usize)
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = self.log[a as usize] as usize + self.log[b as usize] as usize;
        self.antilog[e % self.order()]
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        let l = self.log(a)?;
        Some(self.antilog[(self.order() - l) % self.order()])
    }

    /// `x^e` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, x: FieldElem, mut e: u64) -> FieldElem {
        let mut base = x;
        let mut acc: FieldElem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Horner evaluation of a binary polynomial at `x`.
    pub fn eval(&self, p: &Poly2, x: FieldElem) -> FieldElem {
        let Some(d) = p.degree() else { return 0 };
        let mut acc: FieldElem = 0;
        for i in (0..=d).rev() {
            acc = self.mul(acc, x) ^ FieldElem::from(p.coeff(i));
        }
        acc
    }
}

/// `{i * 2^k mod n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicCoset {
    pub representative: usize,
    pub members: Vec<usize>,
}

pub fn cyclotomic_coset(n: usize, i: usize) -> CyclotomicCoset {
    assert!(n % 2 == 1 && i < n, "need odd n and 0 <= i < n");
    let mut members = vec![i];
    let mut j = (2 * i) % n;
    while j != i {
        members.push(j);
        j = (2 * j) % n;
    }
    members.sort_unstable();
    CyclotomicCoset {
        representative: members[0],
        members,
    }
}

/// Smallest member of every cyclotomic coset modulo `n`, ascending.
pub fn coset_representatives(n: usize) -> Vec<usize> {
    let mut seen = vec![false; n];
    let mut reps = Vec::new();
    for i in 0..n {
        if !seen[i] {
            reps.push(i);
            for m in cyclotomic_coset(n, i).members {
                seen[m] = true;
            }
        }
    }
    reps
}

/// Minimal polynomial of `alpha^i`, expanded as the product of
/// `(z - alpha^j)` over the cyclotomic coset of `i`.
pub fn minimal_polynomial(field: &FieldTable, i: usize) -> Poly2 {
    let coset = cyclotomic_coset(field.order(), i % field.order());
    // coefficients in GF(2^w), lowest degree first
    let mut coeffs: Vec<FieldElem> = vec![1];
    for &j in &coset.members {
        let root = field.alpha_pow(j);
        let mut next = vec![0; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] ^= c;
            next[k] ^= field.mul(c, root);
        }
        coeffs = next;
    }
    let mut p = Poly2::zero();
    for (k, &c) in coeffs.iter().enumerate() {
        assert!(c <= 1, "minimal polynomial coefficient outside GF(2)");
        p.set_coeff(k, c == 1);
    }
    p
}

/// Primitive idempotent `theta_i`: the unique polynomial of degree below `n`
/// evaluating to 1 on the conjugates of `alpha^i` and to 0 on every other
/// power of alpha. Found by solving the binary linearisation of the
/// evaluation constraints.
pub fn idempotent(field: &FieldTable, i: usize) -> Poly2 {
    let n = field.order();
    let w = field.degree();
    let coset = cyclotomic_coset(n, i % n);
    let mut in_coset = vec![false; n];
    for &j in &coset.members {
        in_coset[j] = true;
    }
    // unknowns c_0..c_{n-1}, augmented column n
    let mut system = BitMatrix::empty(n + 1);
    for (j, &target) in in_coset.iter().enumerate() {
        for b in 0..w {
            let mut row = BitVector::zeros(n + 1);
            for k in 0..n {
                if (field.alpha_pow(j * k) >> b) & 1 == 1 {
                    row.set(k, true);
                }
            }
            if b == 0 && target {
                row.set(n, true);
            }
            system.push_row(row);
        }
    }
    let (r, pivots) = system.rref();
    assert!(
        !pivots.contains(&n) && pivots.len() == n,
        "idempotent interpolation system is not uniquely solvable"
    );
    let mut theta = Poly2::zero();
    for (row, &p) in r.rows().iter().zip(&pivots) {
        if row.get(n) {
            theta.set_coeff(p, true);
        }
    }
    theta
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f32() -> FieldTable {
        FieldTable::with_default_modulus(5).unwrap()
    }

    /// Naive multiplication modulo the field polynomial, independent of the
    /// log tables.
    fn naive_mul(a: u32, b: u32, modulus: u32, w: usize) -> u32 {
        let mut acc = 0u32;
        let mut a = a;
        for k in 0..w {
            if (b >> k) & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            if (a >> w) & 1 == 1 {
                a ^= modulus;
            }
        }
        acc
    }

    fn naive_alpha_pow(e: usize) -> u32 {
        (0..e).fold(1, |x, _| naive_mul(x, 0b10, 0b100101, 5))
    }

    fn naive_eval(p: &Poly2, x: u32) -> u32 {
        let mut acc = 0;
        let mut xp = 1;
        for k in 0..=p.degree().unwrap_or(0) {
            if p.coeff(k) {
                acc ^= xp;
            }
            xp = naive_mul(xp, x, 0b100101, 5);
        }
        acc
    }

    #[test]
    fn poly_arithmetic_basics() {
        let zp1 = Poly2::from_exponents(&[1, 0]);
        assert_eq!(&zp1 * &zp1, Poly2::from_exponents(&[2, 0]));
        assert_eq!(Poly2::zero().degree(), None);
        assert_eq!(Poly2::one().degree(), Some(0));
        let m = Poly2::cyclic_modulus(31);
        assert!(m.rem(&m).unwrap().is_zero());
        assert_eq!(m.div_rem(&Poly2::zero()), Err(Error::DivisionByZero));
        assert_eq!(zp1.to_string(), "z + 1");
    }

    #[test]
    fn shifts_cross_limb_boundaries() {
        let p = Poly2::from_exponents(&[63, 0]);
        let q = &p * &Poly2::monomial(70);
        assert_eq!(q.exponents(), vec![70, 133]);
        assert_eq!(Poly2::from_hex(&q.to_hex()).unwrap(), q);
        assert_eq!(q.mod_cyclic(31).exponents(), vec![8, 9]);
    }

    #[test]
    fn field_rejects_degenerate_and_reducible_moduli() {
        assert!(FieldTable::new(1, Poly2::from_exponents(&[1, 0])).is_err());
        assert!(FieldTable::new(5, Poly2::from_exponents(&[5, 4, 3, 2, 1, 0])).is_err());
        // irreducible but not primitive: z^4+z^3+z^2+z+1 has order 5
        assert!(FieldTable::new(4, Poly2::from_exponents(&[4, 3, 2, 1, 0])).is_err());
        assert!(FieldTable::new(5, Poly2::from_exponents(&[4, 1, 0])).is_err());
    }

    #[test]
    fn field_tables_match_power_iteration() {
        let f = f32();
        assert_eq!(f.order(), 31);
        assert_eq!(f.alpha_pow(31), 1);
        for e in 1..31 {
            assert_ne!(f.alpha_pow(e), 1);
            assert_eq!(f.alpha_pow(e), naive_alpha_pow(e));
        }
        for x in 1..32u32 {
            assert_eq!(f.alpha_pow(f.log(x).unwrap()), x);
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
        assert_eq!(f.eval(f.modulus(), f.alpha()), 0);
    }

    #[test]
    fn builtin_moduli_are_primitive() {
        for w in 2..=12 {
            FieldTable::with_default_modulus(w).unwrap();
        }
    }

    #[test]
    fn cyclotomic_cosets_mod_31() {
        assert_eq!(cyclotomic_coset(31, 0).members, vec![0]);
        assert_eq!(cyclotomic_coset(31, 1).members, vec![1, 2, 4, 8, 16]);
        assert_eq!(cyclotomic_coset(31, 3).members, vec![3, 6, 12, 17, 24]);
        assert_eq!(coset_representatives(31), vec![0, 1, 3, 5, 7, 11, 15]);
    }

    #[test]
    fn minimal_polynomials_of_gf32() {
        let f = f32();
        assert_eq!(minimal_polynomial(&f, 0), Poly2::from_exponents(&[1, 0]));
        assert_eq!(minimal_polynomial(&f, 1), *f.modulus());
        // brute-force oracle: the unique monic degree-5 polynomial vanishing
        // at alpha^3, evaluated with naive arithmetic
        let a3 = naive_alpha_pow(3);
        let candidates: Vec<Poly2> = (0u64..32)
            .map(|low| Poly2::from_limbs(vec![(1 << 5) | low]))
            .filter(|p| naive_eval(p, a3) == 0)
            .collect();
        assert_eq!(candidates.len(), 1);
        assert_eq!(minimal_polynomial(&f, 3), candidates[0]);
        assert_eq!(candidates[0], Poly2::from_exponents(&[5, 4, 3, 2, 0]));
    }

    #[test]
    fn generator_of_c2_divides_cyclic_modulus() {
        let f = f32();
        let g =
            &(&minimal_polynomial(&f, 1) * &minimal_polynomial(&f, 3)) * &minimal_polynomial(&f, 5);
        assert_eq!(g.degree(), Some(15));
        assert!(g.divides(&Poly2::cyclic_modulus(31)).unwrap());
    }

    #[test]
    fn poly_eval_examples() {
        let f = f32();
        assert_eq!(f.eval(&Poly2::from_exponents(&[1, 0]), 1), 0);
        assert_eq!(f.eval(&Poly2::monomial(3), f.alpha_pow(2)), f.alpha_pow(6));
    }

    #[test]
    fn idempotents_satisfy_defining_evaluations() {
        let f = f32();
        let theta0 = idempotent(&f, 0);
        assert_eq!(theta0, Poly2::from_limbs(vec![(1u64 << 31) - 1]));
        let theta1 = idempotent(&f, 1);
        for j in 0..31 {
            let expect = u32::from(cyclotomic_coset(31, 1).members.contains(&j));
            assert_eq!(naive_eval(&theta1, naive_alpha_pow(j)), expect, "j={j}");
        }
        assert!(!theta1.eval_at_one());
        assert_eq!((&theta1 * &theta1).mod_cyclic(31), theta1);
    }
}
