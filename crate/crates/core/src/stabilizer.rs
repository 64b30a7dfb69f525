//! Stabilizer codes in symplectic form: CSS codes, Steane's enlargement of
//! a dual-containing code, logical operators and an invariant audit.

use serde::Serialize;

use crate::bits::{BitMatrix, BitVector, Echelon};
use crate::error::{check_len, Error, Result};
use crate::gf2poly::{default_primitive_modulus, FieldTable, Poly2};
use crate::lincode::LinearCode;
use crate::symplectic::{symp_inner, AdditiveSympCode, SympVector};

/// An `[[n, k]]` stabilizer code: stabilizer `S`, normalizer `N = S^⊥`, and
/// `k` symplectic pairs of logical operators.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    n: usize,
    k: usize,
    stab: AdditiveSympCode,
    norm: AdditiveSympCode,
    logical_x: Vec<SympVector>,
    logical_z: Vec<SympVector>,
    pub claimed_d: Option<usize>,
}

impl StabilizerCode {
    pub fn from_stabilizer(stab: AdditiveSympCode) -> Result<Self> {
        if !stab.is_self_orthogonal() {
            return Err(Error::Construction(
                "stabilizer is not self-orthogonal".into(),
            ));
        }
        let norm = stab.symplectic_dual();
        Self::assemble(stab, norm)
    }

    pub fn from_normalizer(norm: AdditiveSympCode) -> Result<Self> {
        let stab = norm.symplectic_dual();
        if !norm.contains_code(&stab) {
            return Err(Error::Construction(
                "normalizer does not contain its symplectic dual".into(),
            ));
        }
        Self::assemble(stab, norm)
    }

    fn assemble(stab: AdditiveSympCode, norm: AdditiveSympCode) -> Result<Self> {
        let n = stab.n();
        let (logical_x, logical_z) = extract_logicals(&stab, &norm)?;
        Ok(StabilizerCode {
            n,
            k: logical_x.len(),
            stab,
            norm,
            logical_x,
            logical_z,
            claimed_d: None,
        })
    }

    /// Parts given explicitly, no derivation. Used to feed corrupted data to
    /// [`audit`].
    pub fn from_parts_unchecked(
        stab: AdditiveSympCode,
        norm: AdditiveSympCode,
        logical_x: Vec<SympVector>,
        logical_z: Vec<SympVector>,
    ) -> Self {
        StabilizerCode {
            n: stab.n(),
            k: logical_x.len(),
            stab,
            norm,
            logical_x,
            logical_z,
            claimed_d: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stab(&self) -> &AdditiveSympCode {
        &self.stab
    }

    pub fn norm(&self) -> &AdditiveSympCode {
        &self.norm
    }

    pub fn logical_x(&self) -> &[SympVector] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[SympVector] {
        &self.logical_z
    }
}

/// Symplectic Gram-Schmidt on a complement of `stab` inside `norm`.
fn extract_logicals(
    stab: &AdditiveSympCode,
    norm: &AdditiveSympCode,
) -> Result<(Vec<SympVector>, Vec<SympVector>)> {
    let mut e = Echelon::from_matrix(stab.generators());
    let mut pool: Vec<SympVector> = norm
        .generators()
        .rows()
        .iter()
        .filter(|r| e.insert(r).is_some())
        .map(|r| SympVector::from_concat(r).expect("even length"))
        .collect();
    let (mut xs, mut zs) = (Vec::new(), Vec::new());
    while !pool.is_empty() {
        let u = pool.remove(0);
        let j = pool
            .iter()
            .position(|v| symp_inner(&u, v))
            .ok_or_else(|| Error::Construction("degenerate normalizer quotient".into()))?;
        let v = pool.remove(j);
        for w in pool.iter_mut() {
            let (with_v, with_u) = (symp_inner(w, &v), symp_inner(w, &u));
            if with_v {
                *w ^= &u;
            }
            if with_u {
                *w ^= &v;
            }
        }
        xs.push(u);
        zs.push(v);
    }
    Ok((xs, zs))
}

/// CSS code of a dual-containing code `C`: normalizer `{(c|0)} ∪ {(0|c)}`,
/// `k = 2 dim C - n`.
pub fn css(c: &LinearCode) -> Result<StabilizerCode> {
    if !c.contains(&c.dual())? {
        return Err(Error::Construction("C does not contain its dual".into()));
    }
    let n = c.n();
    let zero = BitVector::zeros(n);
    let rows: Vec<BitVector> = c
        .generator()
        .rows()
        .iter()
        .map(|g| g.concat(&zero))
        .chain(c.generator().rows().iter().map(|g| zero.concat(g)))
        .collect();
    StabilizerCode::from_normalizer(AdditiveSympCode::from_rows(n, &rows)?)
}

/// Invertible map `A` on GF(2)^dim with `A + I` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointFreeMap {
    matrix: BitMatrix,
}

impl FixedPointFreeMap {
    pub fn new(matrix: BitMatrix) -> Result<Self> {
        let d = matrix.ncols();
        check_len(d, matrix.nrows())?;
        if !is_fixed_point_free(&matrix) {
            return Err(Error::Construction(
                "matrix is singular or has a nonzero fixed point".into(),
            ));
        }
        Ok(FixedPointFreeMap { matrix })
    }

    /// Companion matrix of `p`: row `i` is `e_{i+1}` for `i < d-1` and the
    /// last row holds the low coefficients of `p`.
    pub fn companion(p: &Poly2) -> Result<Self> {
        let d = p
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidParameter("companion of constant".into()))?;
        let mut m = BitMatrix::empty(d);
        for i in 0..d - 1 {
            m.push_row(BitVector::from_indices(d, [i + 1]));
        }
        m.push_row(BitVector::from_indices(d, (0..d).filter(|&j| p.coeff(j))));
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }
}

pub fn is_fixed_point_free(a: &BitMatrix) -> bool {
    let d = a.ncols();
    if a.nrows() != d {
        return false;
    }
    let plus_i = BitMatrix::from_rows(
        d,
        a.rows()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                r.flip(i);
                r
            })
            .collect(),
    )
    .expect("square");
    a.rank() == d && plus_i.rank() == d
}

/// Companion matrix of an irreducible polynomial of degree `dim`; its
/// eigenvalues are roots of that polynomial, none equal to 1.
pub fn fixed_point_free(dim: usize) -> Result<FixedPointFreeMap> {
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "no fixed-point-free invertible map on GF(2)^{dim}"
        )));
    }
    let p = match default_primitive_modulus(dim) {
        Some(p) => p,
        None if dim <= FieldTable::MAX_DEGREE => (1u64..1 << dim)
            .step_by(2)
            .map(|low| Poly2::from_limbs(vec![(1 << dim) | low]))
            .find(|p| FieldTable::new(dim, p.clone()).is_ok())
            .ok_or_else(|| {
                Error::Construction(format!("no primitive polynomial of degree {dim}"))
            })?,
        None => {
            return Err(Error::InvalidParameter(format!(
                "dimension {dim} too large"
            )))
        }
    };
    FixedPointFreeMap::companion(&p)
}

/// Output of [`steane_enlarge`].
#[derive(Clone, Debug)]
pub struct SteaneEnlargement {
    pub code: StabilizerCode,
    /// Basis `D` of a complement of `C` in `C'`.
    pub complement: BitMatrix,
    pub map: FixedPointFreeMap,
}

/// Rows `(g|0)`, `(0|g)` for `g ∈ G` and `(d_i | (AD)_i)`.
pub fn steane_normalizer(g: &BitMatrix, d: &BitMatrix, a: &BitMatrix) -> Result<AdditiveSympCode> {
    let n = g.ncols();
    check_len(n, d.ncols())?;
    check_len(d.nrows(), a.nrows())?;
    check_len(d.nrows(), a.ncols())?;
    let zero = BitVector::zeros(n);
    let ad = a.mul(d);
    let rows: Vec<BitVector> = g
        .rows()
        .iter()
        .map(|r| r.concat(&zero))
        .chain(g.rows().iter().map(|r| zero.concat(r)))
        .chain(d.rows().iter().zip(ad.rows()).map(|(x, y)| x.concat(y)))
        .collect();
    AdditiveSympCode::from_rows(n, &rows)
}

/// Basis of a complement of `c` inside `cp`: the reduced rows that extend an
/// echelon basis of `c` to one of `cp`.
pub fn complement_basis(c: &LinearCode, cp: &LinearCode) -> Result<BitMatrix> {
    check_len(c.n(), cp.n())?;
    let mut e = Echelon::from_matrix(c.generator());
    let rows = cp
        .generator()
        .rows()
        .iter()
        .filter_map(|r| e.insert(r))
        .collect();
    BitMatrix::from_rows(c.n(), rows)
}

/// Enlargement of a chain `C^⊥ ⊆ C ⊂ C'` with `dim C' > dim C + 1` to an
/// `[[n, k + k' - n]]` stabilizer code.
pub fn steane_enlarge(c: &LinearCode, cp: &LinearCode) -> Result<SteaneEnlargement> {
    check_len(c.n(), cp.n())?;
    if cp.k() <= c.k() + 1 {
        return Err(Error::Construction(format!(
            "need dim C' > dim C + 1, got {} and {}",
            cp.k(),
            c.k()
        )));
    }
    let map = fixed_point_free(cp.k() - c.k())?;
    steane_enlarge_with(c, cp, map)
}

pub fn steane_enlarge_with(
    c: &LinearCode,
    cp: &LinearCode,
    map: FixedPointFreeMap,
) -> Result<SteaneEnlargement> {
    if !c.contains(&c.dual())? {
        return Err(Error::Construction("C does not contain its dual".into()));
    }
    if !cp.contains(c)? || cp.k() <= c.k() + 1 {
        return Err(Error::Construction(
            "need C strictly inside C' with codimension >= 2".into(),
        ));
    }
    let complement = complement_basis(c, cp)?;
    check_len(complement.nrows(), map.dim())?;
    let norm = steane_normalizer(c.generator(), &complement, map.matrix())?;
    let code = StabilizerCode::from_normalizer(norm)?;
    debug_assert_eq!(code.k(), c.k() + cp.k() - c.n());
    Ok(SteaneEnlargement {
        code,
        complement,
        map,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AuditReport {
    pub items: Vec<AuditItem>,
}

impl AuditReport {
    fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.items.push(AuditItem {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditItem> {
        self.items.iter().filter(|i| !i.passed)
    }
}

/// Checks every structural invariant of a stabilizer code.
pub fn audit(s: &StabilizerCode) -> AuditReport {
    let mut r = AuditReport::default();
    let (n, k) = (s.n, s.k);
    r.push(
        "stabilizer self-orthogonal",
        s.stab.is_self_orthogonal(),
        "",
    );
    r.push(
        "stabilizer inside normalizer",
        s.norm.contains_code(&s.stab),
        "",
    );
    r.push(
        "normalizer is the symplectic dual",
        s.norm.same_span(&s.stab.symplectic_dual()),
        "",
    );
    r.push(
        "ranks n-k and n+k",
        s.stab.rank() + k == n && s.norm.rank() == n + k,
        format!("rank S = {}, rank N = {}", s.stab.rank(), s.norm.rank()),
    );
    r.push(
        "k logical pairs",
        s.logical_x.len() == k && s.logical_z.len() == k,
        format!("{} X, {} Z", s.logical_x.len(), s.logical_z.len()),
    );
    let logicals: Vec<&SympVector> = s.logical_x.iter().chain(&s.logical_z).collect();
    r.push(
        "logicals commute with stabilizer",
        logicals
            .iter()
            .all(|l| s.stab.symplectic_syndrome(l).is_zero()),
        "",
    );
    let mut bad = None;
    'outer: for (i, xi) in s.logical_x.iter().enumerate() {
        for (j, zj) in s.logical_z.iter().enumerate() {
            if symp_inner(xi, zj) != (i == j) {
                bad = Some((i, j));
                break 'outer;
            }
        }
    }
    r.push(
        "<X_i, Z_j> = delta_ij",
        bad.is_none(),
        bad.map(|(i, j)| format!("fails at ({i}, {j})"))
            .unwrap_or_default(),
    );
    let pairwise_commute = |ls: &[SympVector]| {
        ls.iter()
            .enumerate()
            .all(|(i, a)| ls[i + 1..].iter().all(|b| !symp_inner(a, b)))
    };
    r.push("X logicals commute", pairwise_commute(&s.logical_x), "");
    r.push("Z logicals commute", pairwise_commute(&s.logical_z), "");
    let mut e = Echelon::from_matrix(s.stab.generators());
    let independent = logicals.iter().all(|l| e.insert(&l.to_concat()).is_some());
    r.push("logicals independent modulo stabilizer", independent, "");
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::Poly2;
    use crate::lincode::cyclic_code;

    fn hamming7() -> LinearCode {
        cyclic_code(7, &Poly2::from_exponents(&[3, 1, 0])).unwrap()
    }

    #[test]
    fn steane_seven_qubit_code() {
        let s = css(&hamming7()).unwrap();
        assert_eq!((s.n(), s.k()), (7, 1));
        assert_eq!(s.stab().rank(), 6);
        assert!(audit(&s).all_passed());
    }

    #[test]
    fn repetition_two_gives_bell_pair() {
        let s = css(&LinearCode::repetition(2)).unwrap();
        assert_eq!(s.k(), 0);
        assert_eq!(s.stab().rank(), 2);
    }

    #[test]
    fn css_requires_dual_containment() {
        assert!(css(&LinearCode::repetition(3)).is_err());
    }

    #[test]
    fn five_qubit_code_from_stabilizer() {
        let gens: Vec<SympVector> = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let s = StabilizerCode::from_stabilizer(AdditiveSympCode::from_vectors(5, &gens).unwrap())
            .unwrap();
        assert_eq!(s.k(), 1);
        assert!(audit(&s).all_passed());
    }

    #[test]
    fn corrupted_logical_fails_audit() {
        let s = css(&hamming7()).unwrap();
        let mut xs = s.logical_x().to_vec();
        xs[0] = SympVector::zero(7);
        let bad = StabilizerCode::from_parts_unchecked(
            s.stab().clone(),
            s.norm().clone(),
            xs,
            s.logical_z().to_vec(),
        );
        let report = audit(&bad);
        assert!(!report.all_passed());
        assert!(report.failures().any(|f| f.name.contains("delta")));
    }

    #[test]
    fn fixed_point_free_small_dims() {
        let a2 = fixed_point_free(2).unwrap();
        assert_eq!(a2.matrix().nrows(), 2);
        assert!(fixed_point_free(1).is_err());
        assert!(fixed_point_free(0).is_err());
        assert!(FixedPointFreeMap::new(BitMatrix::identity(3)).is_err());
        let a5 = fixed_point_free(5).unwrap();
        assert_eq!(
            a5,
            FixedPointFreeMap::companion(&Poly2::from_exponents(&[5, 2, 0])).unwrap()
        );
    }

    #[test]
    fn fixed_point_free_exhaustive() {
        for dim in 2..=16 {
            let a = fixed_point_free(dim).unwrap();
            let m = a.matrix();
            for x in 1u64..(1 << dim) {
                let v = BitVector::from_u64(dim, x);
                let image = m.combine(&v);
                assert!(!image.is_zero() && image != v, "dim {dim}, x {x:b}");
            }
        }
        assert!(fixed_point_free(18).is_ok());
    }

    #[test]
    fn steane_rejects_degenerate_chain() {
        // extended Hamming [8,4] is self-dual; C' = C fails k' > k + 1
        let e = hamming7().extend_parity();
        assert!(steane_enlarge(&e, &e).is_err());
    }
}
