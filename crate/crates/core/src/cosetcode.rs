//! Goethals and extended Preparata codes as unions of cosets of the linear
//! codes `C_G` and `C_P`, together with the field-sum description by pairs
//! of subsets `(X, Y)` of GF(2^{m-1}).

use std::fmt;

use rand::Rng;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::bits::BitVector;
use crate::error::{check_len, Error, Result};
use crate::gf2poly::{idempotent, minimal_polynomial, FieldElem, FieldTable, Poly2};
use crate::lincode::{coset_reps_gp, cyclic_code, u_u_plus_v, LinearCode};

/// Parameters of the Goethals/Preparata family for an even `m >= 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GpParams {
    pub m: usize,
    /// `2^{m-1} - 1`, length of the cyclic components.
    pub n: usize,
    /// `1 + 2^{m/2-2}`
    pub r: usize,
    /// `1 + 2^{m/2-1}`
    pub s: usize,
    /// `2^{m/2-1}`, so that `sigma + 1 = s`.
    pub sigma: usize,
    /// Number of cosets, `2^{m-1}`.
    pub cosets: usize,
}

impl GpParams {
    /// `m = 4` is rejected: there `r = 2` is conjugate to 1, so `C_G = C_P`.
    pub fn new(m: usize) -> Result<Self> {
        if m < 6 || m % 2 == 1 || m > 20 {
            return Err(Error::InvalidParameter(format!(
                "m must be even with 6 <= m <= 20, got {m}"
            )));
        }
        let p = GpParams {
            m,
            n: (1 << (m - 1)) - 1,
            r: 1 + (1 << (m / 2 - 2)),
            s: 1 + (1 << (m / 2 - 1)),
            sigma: 1 << (m / 2 - 1),
            cosets: 1 << (m - 1),
        };
        debug_assert!(gcd(p.sigma + 1, p.n) == 1 && gcd(p.sigma - 1, p.n) == 1);
        Ok(p)
    }

    pub fn length(&self) -> usize {
        1 << self.m
    }

    /// `2^m - 4m + 2`
    pub fn goethals_base_dim(&self) -> usize {
        self.length() + 2 - 4 * self.m
    }

    /// `2^m - 3m + 1`
    pub fn preparata_base_dim(&self) -> usize {
        self.length() + 1 - 3 * self.m
    }
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The integer identities `(2^{m-1}-1) - (2^{m/2-1} ± 1)(2^{m/2} ∓ 2) = 1`,
/// which give `gcd(σ ± 1, n) = 1` for `σ = 2^{m/2-1}`.
pub fn gcd_identity_holds(m: u32) -> bool {
    if m < 4 || m % 2 == 1 {
        return false;
    }
    let n = (1i128 << (m - 1)) - 1;
    let sigma = 1i128 << (m / 2 - 1);
    let half = 1i128 << (m / 2);
    n - (sigma + 1) * (half - 2) == 1 && n - (sigma - 1) * (half + 2) == 1
}

/// Every linear and cyclic component behind `G(m)` and `P(m)`.
#[derive(Clone, Debug)]
pub struct ClassicalTower {
    pub params: GpParams,
    pub field: FieldTable,
    pub mu1: Poly2,
    pub mu_r: Poly2,
    pub mu_s: Poly2,
    pub theta1: Poly2,
    /// `<μ_1>`
    pub c1: LinearCode,
    /// `<μ_1 μ_r μ_s>`
    pub c2: LinearCode,
    /// `<μ_1 μ_s>`
    pub c3: LinearCode,
    /// `|u|u+v|` of extended `C_1` and `C_2`.
    pub c_g: LinearCode,
    /// `|u|u+v|` of extended `C_1` and `C_3`.
    pub c_p: LinearCode,
    pub reps: Vec<BitVector>,
}

impl ClassicalTower {
    pub fn build(m: usize) -> Result<Self> {
        let params = GpParams::new(m)?;
        let field = FieldTable::with_default_modulus(m - 1)?;
        Self::with_field(params, field)
    }

    pub fn with_field(params: GpParams, field: FieldTable) -> Result<Self> {
        if field.degree() != params.m - 1 {
            return Err(Error::InvalidParameter("field degree must be m-1".into()));
        }
        let n = params.n;
        let mu1 = minimal_polynomial(&field, 1);
        let mu_r = minimal_polynomial(&field, params.r);
        let mu_s = minimal_polynomial(&field, params.s);
        let c1 = cyclic_code(n, &mu1)?;
        let c2 = cyclic_code(n, &(&(&mu1 * &mu_r) * &mu_s))?;
        let c3 = cyclic_code(n, &(&mu1 * &mu_s))?;
        let c1e = c1.extend_parity();
        let c_g = u_u_plus_v(&c1e, &c2.extend_parity())?;
        let c_p = u_u_plus_v(&c1e, &c3.extend_parity())?;
        let reps = coset_reps_gp(&field, params.m)?;
        Ok(ClassicalTower {
            theta1: idempotent(&field, 1),
            params,
            field,
            mu1,
            mu_r,
            mu_s,
            c1,
            c2,
            c3,
            c_g,
            c_p,
            reps,
        })
    }

    pub fn goethals(&self) -> Result<CosetUnionCode> {
        CosetUnionCode::new(Family::Goethals, self.c_g.clone(), self.reps.clone())
    }

    pub fn preparata(&self) -> Result<CosetUnionCode> {
        CosetUnionCode::new(Family::Preparata, self.c_p.clone(), self.reps.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Goethals,
    Preparata,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Goethals => "goethals",
            Family::Preparata => "preparata",
        })
    }
}

/// Nonlinear code `⋃_i (base + reps[i])`.
#[derive(Clone, Debug)]
pub struct CosetUnionCode {
    family: Family,
    base: LinearCode,
    reps: Vec<BitVector>,
    by_syndrome: FxHashMap<BitVector, usize>,
}

impl CosetUnionCode {
    /// Validates that every representative has the right length, that they lie
    /// in pairwise distinct cosets of `base`, and that one of them is zero.
    pub fn new(family: Family, base: LinearCode, reps: Vec<BitVector>) -> Result<Self> {
        let mut by_syndrome = FxHashMap::default();
        for (i, t) in reps.iter().enumerate() {
            check_len(base.n(), t.len())?;
            if let Some(j) = by_syndrome.insert(base.syndrome(t), i) {
                return Err(Error::Construction(format!(
                    "representatives {j} and {i} lie in the same coset"
                )));
            }
        }
        if !reps.iter().any(BitVector::is_zero) {
            return Err(Error::Construction("no zero coset representative".into()));
        }
        Ok(CosetUnionCode {
            family,
            base,
            reps,
            by_syndrome,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn base(&self) -> &LinearCode {
        &self.base
    }

    pub fn reps(&self) -> &[BitVector] {
        &self.reps
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// `log2 |code| = log2 |reps| + k_base` (exact when `|reps|` is a power of two).
    pub fn log2_size(&self) -> f64 {
        (self.reps.len() as f64).log2() + self.base.k() as f64
    }

    /// Index of the coset containing `v`, if any.
    pub fn coset_of(&self, v: &BitVector) -> Result<Option<usize>> {
        check_len(self.base.n(), v.len())?;
        Ok(self.by_syndrome.get(&self.base.syndrome(v)).copied())
    }

    pub fn contains_vector(&self, v: &BitVector) -> Result<bool> {
        Ok(self.coset_of(v)?.is_some())
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BitVector {
        let t = &self.reps[rng.random_range(0..self.reps.len())];
        &self.base.random_codeword(rng) ^ t
    }
}

pub fn goethals(m: usize) -> Result<CosetUnionCode> {
    ClassicalTower::build(m)?.goethals()
}

pub fn preparata(m: usize) -> Result<CosetUnionCode> {
    ClassicalTower::build(m)?.preparata()
}

/// A pair of subsets of GF(2^{m-1}), elements sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SetPair {
    pub x: Vec<FieldElem>,
    pub y: Vec<FieldElem>,
}

impl SetPair {
    pub fn new(mut x: Vec<FieldElem>, mut y: Vec<FieldElem>) -> Result<Self> {
        for set in [&mut x, &mut y] {
            set.sort_unstable();
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter("duplicate set element".into()));
            }
        }
        Ok(SetPair { x, y })
    }
}

fn half_to_set(field: &FieldTable, half: &BitVector) -> Vec<FieldElem> {
    let n = field.order();
    let mut set: Vec<FieldElem> = half
        .support()
        .map(|i| if i < n { field.alpha_pow(i) } else { 0 })
        .collect();
    set.sort_unstable();
    set
}

fn set_to_half(field: &FieldTable, set: &[FieldElem]) -> BitVector {
    let n = field.order();
    BitVector::from_indices(n + 1, set.iter().map(|&e| field.log(e).unwrap_or(n)))
}

/// Reads `v = (1_X(α^i); 1_X(0); 1_Y(α^i); 1_Y(0))` as the pair `(X, Y)`.
pub fn vector_to_setpair(field: &FieldTable, v: &BitVector) -> Result<SetPair> {
    let half = field.order() + 1;
    check_len(2 * half, v.len())?;
    Ok(SetPair {
        x: half_to_set(field, &v.slice(0, half)),
        y: half_to_set(field, &v.slice(half, 2 * half)),
    })
}

pub fn setpair_to_vector(field: &FieldTable, sp: &SetPair) -> BitVector {
    set_to_half(field, &sp.x).concat(&set_to_half(field, &sp.y))
}

fn power_sum(field: &FieldTable, set: &[FieldElem], e: u64) -> FieldElem {
    set.iter().fold(0, |acc, &x| acc ^ field.pow(x, e))
}

/// Condition `Σ x^e + (Σ x)^e = Σ y^e`.
fn power_condition(field: &FieldTable, sp: &SetPair, e: u64) -> bool {
    let sx = power_sum(field, &sp.x, 1);
    power_sum(field, &sp.x, e) ^ field.pow(sx, e) == power_sum(field, &sp.y, e)
}

fn parity_and_sum_conditions(field: &FieldTable, sp: &SetPair) -> bool {
    sp.x.len().is_multiple_of(2)
        && sp.y.len().is_multiple_of(2)
        && power_sum(field, &sp.x, 1) == power_sum(field, &sp.y, 1)
}

/// Membership in `G(m)` via the field-sum conditions with exponents `r`, `s`.
pub fn goethals_conditions(field: &FieldTable, p: &GpParams, sp: &SetPair) -> bool {
    parity_and_sum_conditions(field, sp)
        && power_condition(field, sp, p.r as u64)
        && power_condition(field, sp, p.s as u64)
}

/// Preparata conditions for an arbitrary power of two `sigma`.
pub fn preparata_conditions_with_sigma(field: &FieldTable, sigma: u64, sp: &SetPair) -> bool {
    parity_and_sum_conditions(field, sp) && power_condition(field, sp, sigma + 1)
}

/// Membership in `P(m)` via the field-sum conditions with `σ = 2^{m/2-1}`.
pub fn preparata_conditions(field: &FieldTable, p: &GpParams, sp: &SetPair) -> bool {
    preparata_conditions_with_sigma(field, p.sigma as u64, sp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::cyclotomic_coset;
    use crate::lincode::cyclic_span;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tower6() -> ClassicalTower {
        ClassicalTower::build(6).unwrap()
    }

    #[test]
    fn params_for_m6_and_rejections() {
        let p = GpParams::new(6).unwrap();
        assert_eq!((p.n, p.r, p.s, p.sigma, p.cosets), (31, 3, 5, 4, 32));
        assert!(GpParams::new(4).is_err());
        assert!(GpParams::new(7).is_err());
        // for m = 4, r = 2 is conjugate to 1
        assert!(cyclotomic_coset(7, 1).members.contains(&2));
    }

    #[test]
    fn gcd_identity() {
        for m in [4, 6, 8, 10] {
            assert!(gcd_identity_holds(m), "m={m}");
            let n = (1usize << (m - 1)) - 1;
            let sigma = 1usize << (m / 2 - 1);
            assert_eq!(gcd(sigma + 1, n), 1);
            assert_eq!(gcd(sigma - 1, n), 1);
        }
        assert!(!gcd_identity_holds(5));
    }

    #[test]
    fn tower_dimensions_m6() {
        let t = tower6();
        assert_eq!(t.c1.k(), 26);
        assert_eq!(t.c2.k(), 16);
        assert_eq!(t.c3.k(), 21);
        assert_eq!((t.c_g.n(), t.c_g.k()), (64, 42));
        assert_eq!((t.c_p.n(), t.c_p.k()), (64, 47));
        assert!(t.c_p.contains(&t.c_g).unwrap());
        assert!(t.c_g.contains(&t.c_g.dual()).unwrap());
        assert!(!t.c_g.contains(&t.c_p).unwrap());
    }

    #[test]
    fn goethals_and_preparata_sizes() {
        let t = tower6();
        let g = t.goethals().unwrap();
        let p = t.preparata().unwrap();
        assert_eq!(g.reps().len(), 32);
        assert_eq!(g.log2_size(), 47.0);
        assert_eq!(p.log2_size(), 52.0);
        assert!(g.contains_vector(&BitVector::zeros(64)).unwrap());
        assert!(g.contains_vector(&BitVector::zeros(63)).is_err());
    }

    #[test]
    fn duplicate_coset_rejected() {
        let t = tower6();
        let mut reps = t.reps.clone();
        let shifted = &reps[0] ^ t.c_g.generator().row(0);
        reps.push(shifted);
        assert!(CosetUnionCode::new(Family::Goethals, t.c_g.clone(), reps).is_err());
    }

    #[test]
    fn sum_of_two_reps_is_not_a_codeword() {
        let t = tower6();
        let g = t.goethals().unwrap();
        assert!(!g.contains_vector(&(&t.reps[0] ^ &t.reps[1])).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = &t.reps[5] ^ &t.c_g.random_codeword(&mut rng);
        assert!(g.contains_vector(&w).unwrap());
    }

    #[test]
    fn setpair_conversions() {
        let t = tower6();
        let f = &t.field;
        assert_eq!(
            vector_to_setpair(f, &BitVector::zeros(64)).unwrap(),
            SetPair::default()
        );
        let sp = vector_to_setpair(f, &t.reps[0]).unwrap();
        assert_eq!(sp.x, vec![0, 1]);
        let theta_support: Vec<FieldElem> = {
            let mut v: Vec<_> = t
                .theta1
                .exponents()
                .into_iter()
                .map(|e| f.alpha_pow(e))
                .collect();
            v.sort_unstable();
            v
        };
        assert_eq!(sp.y, theta_support);
        assert_eq!(setpair_to_vector(f, &sp), t.reps[0]);
        assert!(SetPair::new(vec![1, 1], vec![]).is_err());
    }

    #[test]
    fn condition_examples() {
        let t = tower6();
        let f = &t.field;
        let p = t.params;
        assert!(goethals_conditions(f, &p, &SetPair::default()));
        assert!(preparata_conditions(f, &p, &SetPair::default()));
        let odd = SetPair::new(vec![f.alpha()], vec![]).unwrap();
        assert!(!goethals_conditions(f, &p, &odd));
    }

    #[test]
    fn sampled_codewords_satisfy_conditions() {
        let t = tower6();
        let g = t.goethals().unwrap();
        let pr = t.preparata().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let w = g.sample(&mut rng);
            let sp = vector_to_setpair(&t.field, &w).unwrap();
            assert!(goethals_conditions(&t.field, &t.params, &sp));
            assert!(preparata_conditions(&t.field, &t.params, &sp));
            assert!(pr.contains_vector(&w).unwrap());
            assert_eq!(w.weight() % 2, 0);
            let v = pr.sample(&mut rng);
            let sp = vector_to_setpair(&t.field, &v).unwrap();
            assert!(preparata_conditions(&t.field, &t.params, &sp));
        }
    }

    #[test]
    fn vectors_outside_the_code_fail_conditions() {
        let t = tower6();
        let g = t.goethals().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut rejected = 0;
        for _ in 0..200 {
            let mut w = g.sample(&mut rng);
            w.flip(rng.random_range(0..64));
            w.flip(rng.random_range(0..64));
            let member = g.contains_vector(&w).unwrap();
            let sp = vector_to_setpair(&t.field, &w).unwrap();
            assert_eq!(goethals_conditions(&t.field, &t.params, &sp), member);
            rejected += usize::from(!member);
        }
        assert!(rejected > 100);
    }

    #[test]
    fn case_one_equal_halves() {
        let t = tower6();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c1e = t.c1.extend_parity();
        for _ in 0..50 {
            let u = c1e.random_codeword(&mut rng);
            let sp = vector_to_setpair(&t.field, &u.concat(&u)).unwrap();
            assert_eq!(sp.x, sp.y);
            assert_eq!(sp.x.iter().fold(0, |a, &x| a ^ x), 0);
            assert!(goethals_conditions(&t.field, &t.params, &sp));
        }
    }

    #[test]
    fn case_two_empty_x() {
        let t = tower6();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let c2e = t.c2.extend_parity();
        for _ in 0..50 {
            let v = c2e.random_codeword(&mut rng);
            let sp = vector_to_setpair(&t.field, &BitVector::zeros(32).concat(&v)).unwrap();
            assert!(sp.x.is_empty());
            for e in [1, t.params.r, t.params.s] {
                assert_eq!(power_sum(&t.field, &sp.y, e as u64), 0);
            }
        }
    }

    #[test]
    fn case_three_rep_pairs() {
        let t = tower6();
        let f = &t.field;
        for i in 0..t.params.n {
            let fy = (&Poly2::monomial(i) * &t.theta1).mod_cyclic(t.params.n);
            assert_eq!(f.eval(&fy, f.alpha()), f.alpha_pow(i));
            assert_eq!(f.eval(&fy, f.alpha_pow(t.params.r)), 0);
            assert_eq!(f.eval(&fy, f.alpha_pow(t.params.s)), 0);
            let sp = vector_to_setpair(f, &t.reps[i]).unwrap();
            assert_eq!(sp.x, {
                let mut x = vec![0, f.alpha_pow(i)];
                x.sort_unstable();
                x
            });
        }
    }

    #[test]
    fn theta_ideal_meets_hamming_trivially() {
        let t = tower6();
        let a = cyclic_span(31, &t.theta1).extend_parity();
        let b = t.c1.extend_parity();
        assert_eq!(a.k(), 5);
        assert!(a.intersection_is_trivial(&b).unwrap());
    }
}
