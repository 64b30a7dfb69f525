//! Binary linear codes and the constructions used to build the Goethals and
//! Preparata components: cyclic codes, parity extension, `|u|u+v|`,
//! duality, containment and Reed-Muller codes.

use rand::Rng;

pub use crate::bits::{BitMatrix, BitVector, Echelon};
use crate::error::{check_len, Error, Result};
use crate::gf2poly::{idempotent, FieldTable, Poly2};

/// A binary linear `[n, k]` code with a full-rank generator matrix and a
/// canonical parity-check matrix (kernel of the RREF of the generator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    n: usize,
    generator: BitMatrix,
    parity_check: BitMatrix,
}

impl LinearCode {
    /// Code spanned by `rows`. Dependent rows are dropped; the remaining rows
    /// keep their order.
    pub fn from_generators(n: usize, rows: Vec<BitVector>) -> Result<Self> {
        let spanning = BitMatrix::from_rows(n, rows)?;
        let mut echelon = Echelon::new(n);
        let mut generator = BitMatrix::empty(n);
        for r in spanning.rows() {
            if echelon.insert(r).is_some() {
                generator.push_row(r.clone());
            }
        }
        let parity_check = generator.kernel();
        let code = LinearCode {
            n,
            generator,
            parity_check,
        };
        code.check_invariants()?;
        Ok(code)
    }

    pub fn from_matrix(m: &BitMatrix) -> Result<Self> {
        Self::from_generators(m.ncols(), m.rows().to_vec())
    }

    fn check_invariants(&self) -> Result<()> {
        for g in self.generator.rows() {
            if !self.parity_check.mul_vec(g).is_zero() {
                return Err(Error::Consistency("G·Hᵀ != 0".into()));
            }
        }
        if self.parity_check.rank() != self.n - self.k() {
            return Err(Error::Consistency("parity check is not full rank".into()));
        }
        Ok(())
    }

    pub fn zero_code(n: usize) -> Self {
        Self::from_generators(n, Vec::new()).expect("zero code")
    }

    pub fn repetition(n: usize) -> Self {
        Self::from_generators(n, vec![BitVector::ones(n)]).expect("repetition code")
    }

    pub fn even_weight(n: usize) -> Self {
        Self::repetition(n).dual()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.nrows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn syndrome(&self, v: &BitVector) -> BitVector {
        self.parity_check.mul_vec(v)
    }

    pub fn contains_vector(&self, v: &BitVector) -> bool {
        v.len() == self.n && self.syndrome(v).is_zero()
    }

    /// Codeword `x · G`.
    pub fn encode(&self, message: &BitVector) -> BitVector {
        self.generator.combine(message)
    }

    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> BitVector {
        let msg = BitVector::from_indices(self.k(), (0..self.k()).filter(|_| rng.random::<bool>()));
        self.encode(&msg)
    }

    /// Appends an overall parity coordinate.
    pub fn extend_parity(&self) -> LinearCode {
        let rows = self
            .generator
            .rows()
            .iter()
            .map(|r| {
                let mut ext = r.concat(&BitVector::zeros(1));
                if r.weight() % 2 == 1 {
                    ext.set(self.n, true);
                }
                ext
            })
            .collect();
        LinearCode::from_generators(self.n + 1, rows).expect("extension preserves rank")
    }

    /// Euclidean dual.
    pub fn dual(&self) -> LinearCode {
        LinearCode::from_generators(self.n, self.parity_check.rows().to_vec())
            .expect("dual of a valid code")
    }

    /// True iff `other ⊆ self`, decided by `rank(self ∪ other) = rank(self)`.
    pub fn contains(&self, other: &LinearCode) -> Result<bool> {
        check_len(self.n, other.n)?;
        Ok(self.generator.vstack(&other.generator).rank() == self.k())
    }

    /// Span of `self` and extra vectors.
    pub fn augment(&self, extra: &[BitVector]) -> Result<LinearCode> {
        let mut rows = self.generator.rows().to_vec();
        rows.extend(extra.iter().cloned());
        LinearCode::from_generators(self.n, rows)
    }

    pub fn intersection_is_trivial(&self, other: &LinearCode) -> Result<bool> {
        check_len(self.n, other.n)?;
        Ok(self.generator.vstack(&other.generator).rank() == self.k() + other.k())
    }
}

/// Cyclic code of length `n` generated by `g`, with generator rows
/// `z^i g(z)` for `i = 0..n-deg(g)`.
pub fn cyclic_code(n: usize, g: &Poly2) -> Result<LinearCode> {
    if !g.divides(&Poly2::cyclic_modulus(n))? {
        return Err(Error::NotCyclic { n });
    }
    let deg = g.degree().expect("nonzero divisor");
    let base = g.to_bitvector(n);
    let rows = (0..n - deg).map(|i| base.rotate(i)).collect();
    LinearCode::from_generators(n, rows)
}

/// The ideal generated by `p` in `GF(2)[z]/(z^n + 1)`: the span of all cyclic
/// shifts of `p mod (z^n + 1)`. Unlike [`cyclic_code`], `p` need not divide
/// `z^n + 1` (idempotent generators, for instance).
pub fn cyclic_span(n: usize, p: &Poly2) -> LinearCode {
    let base = p.mod_cyclic(n).to_bitvector(n);
    LinearCode::from_generators(n, (0..n).map(|i| base.rotate(i)).collect())
        .expect("rows have length n")
}

/// `{(u, u+v) : u ∈ a, v ∈ b}` with generator `[[G_a | G_a], [0 | G_b]]`.
pub fn u_u_plus_v(a: &LinearCode, b: &LinearCode) -> Result<LinearCode> {
    check_len(a.n(), b.n())?;
    let n = a.n();
    let mut rows: Vec<BitVector> = a.generator().rows().iter().map(|g| g.concat(g)).collect();
    rows.extend(
        b.generator()
            .rows()
            .iter()
            .map(|g| BitVector::zeros(n).concat(g)),
    );
    LinearCode::from_generators(2 * n, rows)
}

/// Reed-Muller code `RM(r, m)`: evaluations of all monomials of degree at most
/// `r`. Coordinate `j` is the assignment whose variable `v` is bit `v` of `j`.
pub fn reed_muller(r: usize, m: usize) -> Result<LinearCode> {
    if r > m || m > 20 {
        return Err(Error::InvalidParameter(format!("RM({r},{m})")));
    }
    let n = 1usize << m;
    let rows = (0u32..(1 << m))
        .filter(|mask| mask.count_ones() as usize <= r)
        .map(|mask| BitVector::from_indices(n, (0..n).filter(|&j| (j as u32) & mask == mask)))
        .collect();
    LinearCode::from_generators(n, rows)
}

/// Coset representatives shared by the Goethals and Preparata codes:
/// `t_i = (z^i; 1; z^i θ_1(z); 0)` for `i < n` and `t_n = 0`, where
/// `n = 2^{m-1} - 1`. Each half lays out the cyclic coordinates `0..n`
/// followed by the extension coordinate.
pub fn coset_reps_gp(field: &FieldTable, m: usize) -> Result<Vec<BitVector>> {
    if m < 6 || m % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "m must be even and at least 6, got {m}"
        )));
    }
    if field.degree() != m - 1 {
        return Err(Error::InvalidParameter(format!(
            "field degree {} does not match m-1 = {}",
            field.degree(),
            m - 1
        )));
    }
    let n = field.order();
    let theta1 = idempotent(field, 1);
    if theta1.eval_at_one() {
        return Err(Error::Consistency("theta_1(1) != 0".into()));
    }
    let half = n + 1;
    let mut reps = Vec::with_capacity(n + 1);
    for i in 0..n {
        let first = Poly2::monomial(i);
        let second = (&first * &theta1).mod_cyclic(n);
        // the appended bits are the parities f(1) of each half
        let mut left = first.to_bitvector(half);
        left.set(n, first.eval_at_one());
        let mut right = second.to_bitvector(half);
        right.set(n, second.eval_at_one());
        if !left.get(n) || right.get(n) {
            return Err(Error::Consistency(format!(
                "extension bits of t_{i} disagree with (z^i;1;z^iθ_1;0)"
            )));
        }
        reps.push(left.concat(&right));
    }
    reps.push(BitVector::zeros(2 * half));
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::minimal_polynomial;

    fn f32() -> FieldTable {
        FieldTable::with_default_modulus(5).unwrap()
    }

    #[test]
    fn cyclic_parity_code() {
        let c = cyclic_code(7, &Poly2::from_exponents(&[1, 0])).unwrap();
        assert_eq!((c.n(), c.k()), (7, 6));
        let even = LinearCode::even_weight(7);
        assert!(c.contains(&even).unwrap() && even.contains(&c).unwrap());
    }

    #[test]
    fn cyclic_rejects_non_divisor() {
        assert_eq!(
            cyclic_code(7, &Poly2::from_exponents(&[2, 0])).unwrap_err(),
            Error::NotCyclic { n: 7 }
        );
    }

    #[test]
    fn hamming_31_parity_check_columns() {
        let f = f32();
        let h = cyclic_code(31, &minimal_polynomial(&f, 1)).unwrap();
        assert_eq!(h.k(), 26);
        let cols = h.parity_check().transpose();
        let mut seen = std::collections::HashSet::new();
        for c in cols.rows() {
            assert!(!c.is_zero());
            assert!(seen.insert(c.clone()), "two equal columns");
        }
        // some three columns are dependent: c_0 + c_1 equals another column
        let sum = cols.row(0) ^ cols.row(1);
        assert!(seen.contains(&sum));
    }

    #[test]
    fn extension_of_even_weight_code() {
        let c = cyclic_code(7, &Poly2::from_exponents(&[1, 0]))
            .unwrap()
            .extend_parity();
        assert_eq!((c.n(), c.k()), (8, 6));
        assert!(c.generator().rows().iter().all(|r| !r.get(7)));
    }

    #[test]
    fn extended_hamming_has_even_rows_and_column_argument() {
        let f = f32();
        let e = cyclic_code(31, &minimal_polynomial(&f, 1))
            .unwrap()
            .extend_parity();
        assert_eq!((e.n(), e.k()), (32, 26));
        assert!(e.generator().rows().iter().all(|r| r.weight() % 2 == 0));
        // distance 4: every sum of at most three check columns is nonzero
        let cols = e.parity_check().transpose();
        let cols = cols.rows();
        for i in 0..32 {
            for j in i + 1..32 {
                assert!(!(&cols[i] ^ &cols[j]).is_zero());
                for k in j + 1..32 {
                    assert!(!(&(&cols[i] ^ &cols[j]) ^ &cols[k]).is_zero());
                }
            }
        }
    }

    #[test]
    fn u_u_plus_v_of_repetition_codes() {
        let r = LinearCode::repetition(2);
        let c = u_u_plus_v(&r, &r).unwrap();
        assert_eq!((c.n(), c.k()), (4, 2));
        let words: std::collections::BTreeSet<String> = (0..4u64)
            .map(|m| c.encode(&BitVector::from_u64(2, m)).to_string())
            .collect();
        let expected: std::collections::BTreeSet<String> = ["0000", "1111", "0011"]
            .iter()
            .chain(["1100"].iter())
            .map(|s| s.to_string())
            .collect();
        assert_eq!(words, expected);
        assert!(u_u_plus_v(&r, &LinearCode::repetition(3)).is_err());
    }

    #[test]
    fn dual_examples() {
        let rep = LinearCode::repetition(8);
        let d = rep.dual();
        assert_eq!(d.k(), 7);
        assert!(d.generator().rows().iter().all(|r| r.weight() % 2 == 0));
        let dd = d.dual();
        assert!(dd.contains(&rep).unwrap() && rep.contains(&dd).unwrap());
    }

    #[test]
    fn contains_rejects_length_mismatch() {
        assert!(LinearCode::repetition(3)
            .contains(&LinearCode::repetition(4))
            .is_err());
    }

    #[test]
    fn reed_muller_dimensions() {
        let r03 = reed_muller(0, 3).unwrap();
        assert_eq!((r03.n(), r03.k()), (8, 1));
        assert_eq!(r03.generator().row(0), &BitVector::ones(8));
        assert_eq!(reed_muller(4, 6).unwrap().k(), 57);
        assert_eq!(reed_muller(3, 6).unwrap().k(), 42);
        assert!(reed_muller(4, 3).is_err());
    }

    #[test]
    fn coset_reps_layout_for_m6() {
        let f = f32();
        let reps = coset_reps_gp(&f, 6).unwrap();
        assert_eq!(reps.len(), 32);
        assert!(reps[31].is_zero());
        let t0 = &reps[0];
        assert_eq!(t0.slice(0, 32), BitVector::from_indices(32, [0, 31]));
        let theta1 = idempotent(&f, 1);
        assert_eq!(t0.slice(32, 63), theta1.to_bitvector(31));
        assert!(!t0.get(63));
        assert!(coset_reps_gp(&f, 8).is_err());
        assert!(coset_reps_gp(&f, 5).is_err());
    }
}
