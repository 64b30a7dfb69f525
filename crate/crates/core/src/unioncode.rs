//! Union stabilizer codes: a stabilizer code `C_0` together with a set of
//! translations from distinct cosets of its normalizer, their exact distance
//! on small instances, and the quantum Goethals-Preparata code.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::bits::{BitMatrix, BitVector, Echelon};
use crate::cosetcode::ClassicalTower;
use crate::distsearch::{symp_min_weight, SearchEngine, SearchOutcome};
use crate::error::{check_len, Error, Result};
use crate::gf2poly::{FieldTable, Poly2};
use crate::lincode::{cyclic_code, cyclic_span, LinearCode};
use crate::oracle::{
    for_each_span_element, knill_laflamme_distance, random_union_instance, union_codespace,
};
use crate::stabilizer::{
    audit, complement_basis, fixed_point_free, steane_normalizer, StabilizerCode,
};
use crate::symplectic::{symp_inner, AdditiveSympCode, SympHex, SympVector};

/// `⊕_{t ∈ T_0} t C_0`.
#[derive(Clone, Debug)]
pub struct UnionStabilizerCode {
    base: StabilizerCode,
    translations: Vec<SympVector>,
    pub label: String,
}

impl UnionStabilizerCode {
    /// Requires a zero translation and pairwise distinct normalizer cosets.
    pub fn new(base: StabilizerCode, translations: Vec<SympVector>) -> Result<Self> {
        let mut seen: FxHashMap<BitVector, usize> = FxHashMap::default();
        for (i, t) in translations.iter().enumerate() {
            check_len(base.n(), t.n())?;
            if let Some(j) = seen.insert(base.stab().symplectic_syndrome(t), i) {
                return Err(Error::Construction(format!(
                    "translations {j} and {i} lie in the same normalizer coset"
                )));
            }
        }
        if !translations.iter().any(SympVector::is_zero) {
            return Err(Error::Construction("no zero translation".into()));
        }
        Ok(Self::new_unchecked(base, translations))
    }

    /// No coset validation; used to feed inconsistent instances to checks.
    pub fn new_unchecked(base: StabilizerCode, translations: Vec<SympVector>) -> Self {
        UnionStabilizerCode {
            base,
            translations,
            label: String::new(),
        }
    }

    pub fn base(&self) -> &StabilizerCode {
        &self.base
    }

    pub fn translations(&self) -> &[SympVector] {
        &self.translations
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// `log2 K + k`.
    pub fn log2_dim(&self) -> f64 {
        (self.translations.len() as f64).log2() + self.base.k() as f64
    }

    pub fn normalizer_code(&self) -> UnionNormalizerCode {
        UnionNormalizerCode {
            base_norm: self.base.norm().clone(),
            translations: self.translations.clone(),
        }
    }
}

/// `⋃_{t ∈ T_0} C_0^* + t`.
#[derive(Clone, Debug)]
pub struct UnionNormalizerCode {
    pub base_norm: AdditiveSympCode,
    pub translations: Vec<SympVector>,
}

impl UnionNormalizerCode {
    pub fn contains(&self, v: &SympVector) -> bool {
        let e = Echelon::from_matrix(self.base_norm.generators());
        self.translations
            .iter()
            .any(|t| e.contains(&(v ^ t).to_concat()))
    }
}

/// Translations `(t_i | t_j)` for all pairs, row-major in `(i, j)`.
pub fn gp_translations(reps: &[BitVector]) -> Result<Vec<SympVector>> {
    let mut out = Vec::with_capacity(reps.len() * reps.len());
    for ti in reps {
        for tj in reps {
            out.push(SympVector::new(ti.clone(), tj.clone())?);
        }
    }
    Ok(out)
}

/// Minimum symplectic weight of `c0 + t1 + t2` if at most `radius`.
pub fn coset_distance(
    c0: &AdditiveSympCode,
    t1: &SympVector,
    t2: &SympVector,
    radius: usize,
    budget: u128,
) -> Result<Option<usize>> {
    if t1 == t2 {
        return Ok(Some(0));
    }
    Ok(symp_min_weight(c0, &(t1 ^ t2), radius, budget)?.weight)
}

/// Elements of the stabilizer commuting with every translation: the kernel of
/// the generator-by-translation commutation matrix.
pub fn tilde_c0(u: &UnionStabilizerCode) -> AdditiveSympCode {
    let stab = u.base.stab();
    let gens = stab.generator_vectors();
    let rows: Vec<BitVector> = u
        .translations
        .iter()
        .map(|t| BitVector::from_bools(&gens.iter().map(|g| symp_inner(g, t)).collect::<Vec<_>>()))
        .collect();
    let m = BitMatrix::from_rows(gens.len(), rows).expect("consistent widths");
    let coeffs = m.kernel();
    let elems: Vec<SympVector> = coeffs.rows().iter().map(|c| stab.combine(c)).collect();
    AdditiveSympCode::from_vectors(u.n(), &elems).expect("same length")
}

/// Exact distance and the `d_min(C^*)` lower bound, `n + 1` meaning no
/// element qualifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SmallDistance {
    pub exact: usize,
    pub lower_bound: usize,
}

/// Enumerates `⋃_{i <= j} C_0^* + t_i + t_j`. The exact distance is the
/// lightest element outside `C~_0`; the lower bound is the lightest nonzero
/// element.
pub fn distance_exact_small(u: &UnionStabilizerCode, budget: u128) -> Result<SmallDistance> {
    let n = u.n();
    let norm = u.base.norm();
    let k = u.translations.len() as u128;
    let needed = (1u128 << norm.rank()) * (k * (k + 1) / 2);
    if norm.rank() > crate::oracle::MAX_BRUTE_DIM || needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let tc0 = Echelon::from_matrix(tilde_c0(u).generators());
    let mut out = SmallDistance {
        exact: n + 1,
        lower_bound: n + 1,
    };
    let mut shifts = vec![SympVector::zero(n)];
    for (i, a) in u.translations.iter().enumerate() {
        for b in &u.translations[i + 1..] {
            shifts.push(a ^ b);
        }
    }
    for s in &shifts {
        let sc = s.to_concat();
        for_each_span_element(2 * n, norm.generators().rows(), |v| {
            let e = SympVector::from_concat(&(v ^ &sc)).expect("even length");
            if e.is_zero() {
                return;
            }
            let w = e.weight();
            out.lower_bound = out.lower_bound.min(w);
            if w < out.exact && !tc0.contains(&e.to_concat()) {
                out.exact = w;
            }
        });
    }
    Ok(out)
}

/// Dense-state distance of the union code.
pub fn knill_laflamme_union(u: &UnionStabilizerCode) -> Result<usize> {
    let basis = union_codespace(u.base.stab(), &u.translations)?;
    knill_laflamme_distance(&basis, u.n())
}

#[derive(Clone, Debug, Serialize)]
pub struct KlInstance {
    pub index: u64,
    pub n: usize,
    pub k: usize,
    pub translations: usize,
    pub exact: Option<usize>,
    pub lower_bound: Option<usize>,
    pub knill_laflamme: Option<usize>,
    pub agree: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KlSuiteReport {
    pub seed: u64,
    pub instances: Vec<KlInstance>,
}

impl KlSuiteReport {
    pub fn all_agree(&self) -> bool {
        self.instances.iter().all(|i| i.agree)
    }
}

/// Compares the exact distance with the dense Knill-Laflamme distance on
/// `count` random instances; instance `i` is seeded with `seed + i`.
/// Odd-numbered instances are redrawn until they have at least two
/// translations and the dense check reports distance at least 2, since most
/// random codes have distance 1. With `corrupt`, an
/// extra translation from the normalizer (the coset of zero) is appended,
/// which must show up as a disagreement.
pub fn run_kl_suite(seed: u64, count: u64, corrupt: bool) -> KlSuiteReport {
    let instances = (0..count)
        .into_par_iter()
        .map(|i| kl_instance(seed.wrapping_add(i), i, corrupt))
        .collect();
    KlSuiteReport { seed, instances }
}

fn kl_instance(seed: u64, index: u64, corrupt: bool) -> KlInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut inst = random_union_instance(&mut rng, 3, 5, 4);
    if index % 2 == 1 {
        for _ in 0..5000 {
            let d = union_codespace(&inst.stab, &inst.translations)
                .and_then(|b| knill_laflamme_distance(&b, inst.stab.n()));
            if inst.translations.len() >= 2 && matches!(d, Ok(d) if d >= 2) {
                break;
            }
            inst = random_union_instance(&mut rng, 3, 5, 4);
        }
    }
    let mut translations = inst.translations;
    if corrupt {
        let l = inst.stab.symplectic_dual().generator_vectors()[0].clone();
        translations.push(l);
    }
    let fail = |n, k, t, detail: String| KlInstance {
        index,
        n,
        k,
        translations: t,
        exact: None,
        lower_bound: None,
        knill_laflamme: None,
        agree: false,
        detail,
    };
    let (n, t) = (inst.stab.n(), translations.len());
    let base = match StabilizerCode::from_stabilizer(inst.stab) {
        Ok(b) => b,
        Err(e) => return fail(n, 0, t, e.to_string()),
    };
    let k = base.k();
    let u = UnionStabilizerCode::new_unchecked(base, translations);
    let exact = distance_exact_small(&u, u128::MAX);
    let kl = knill_laflamme_union(&u);
    match (exact, kl) {
        (Ok(d), Ok(kl)) => KlInstance {
            index,
            n,
            k,
            translations: t,
            exact: Some(d.exact),
            lower_bound: Some(d.lower_bound),
            knill_laflamme: Some(kl),
            agree: d.exact == kl && d.lower_bound <= d.exact,
            detail: String::new(),
        },
        (Ok(d), Err(e)) => KlInstance {
            exact: Some(d.exact),
            lower_bound: Some(d.lower_bound),
            ..fail(n, k, t, format!("dense check: {e}"))
        },
        (Err(e), _) => fail(n, k, t, format!("exact distance: {e}")),
    }
}

/// One row of the parameter table: the union code `((n, 2^log2_dim, 8))`, its
/// base `[[n, base_k, 8]]`, and two comparison codes of the same length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GpTableRow {
    pub m: usize,
    pub n: u64,
    pub log2_dim: u64,
    pub base_k: u64,
    /// `((n, 2^{n-6m+2}, 8))` from Goethals codes, cited for comparison.
    pub goethals_log2_dim: u64,
    /// `[[n, n-5m-2, 8]]` enlarged BCH codes, cited for comparison.
    pub enlarged_bch_k: u64,
}

/// Pure parameter arithmetic; `m` even, `6 <= m <= 62`.
pub fn gp_table_row(m: usize) -> Result<GpTableRow> {
    if m < 6 || m % 2 == 1 || m > 62 {
        return Err(Error::InvalidParameter(format!(
            "m must be even in 6..=62, got {m}"
        )));
    }
    let n = 1u64 << m;
    let m64 = m as u64;
    let base_k = n - 7 * m64 + 3;
    let log2_dim = n - 5 * m64 + 1;
    debug_assert_eq!(log2_dim, base_k + 2 * (m64 - 1));
    Ok(GpTableRow {
        m,
        n,
        log2_dim,
        base_k,
        goethals_log2_dim: n - 6 * m64 + 2,
        enlarged_bch_k: n - 5 * m64 - 2,
    })
}

impl GpTableRow {
    pub fn union_params(&self) -> String {
        format!("(({}, 2^{}, 8))", self.n, self.log2_dim)
    }

    pub fn base_params(&self) -> String {
        format!("[[{}, {}, 8]]", self.n, self.base_k)
    }

    pub fn goethals_params(&self) -> String {
        format!("(({}, 2^{}, 8))", self.n, self.goethals_log2_dim)
    }

    pub fn enlarged_bch_params(&self) -> String {
        format!("[[{}, {}, 8]]", self.n, self.enlarged_bch_k)
    }
}

/// Text rendering with the two comparison columns marked as cited.
pub fn render_table(rows: &[GpTableRow]) -> String {
    let mut out = format!(
        "{:>3}  {:<20}  {:<16}  {:<20}  {:<18}\n",
        "m", "Goethals-Preparata", "base code", "Goethals (cited)", "enlarged BCH (cited)"
    );
    for r in rows {
        out.push_str(&format!(
            "{:>3}  {:<20}  {:<16}  {:<20}  {:<18}\n",
            r.m,
            r.union_params(),
            r.base_params(),
            r.goethals_params(),
            r.enlarged_bch_params()
        ));
    }
    out
}

/// Raw ingredients of the quantum Goethals-Preparata code. Kept separate
/// from the derived objects so that any of them can be replaced before
/// verification.
#[derive(Clone, Debug)]
pub struct GpComponents {
    pub m: usize,
    pub field: FieldTable,
    pub theta1: Poly2,
    pub mu1: Poly2,
    pub c_g: LinearCode,
    pub c_p: LinearCode,
    pub reps: Vec<BitVector>,
    /// Complement of `C_G` in `C_P`, one row per dimension.
    pub d: BitMatrix,
    pub a: BitMatrix,
}

impl GpComponents {
    pub fn from_tower(t: &ClassicalTower) -> Result<Self> {
        let d = complement_basis(&t.c_g, &t.c_p)?;
        let a = fixed_point_free(d.nrows())?.matrix().clone();
        Ok(GpComponents {
            m: t.params.m,
            field: t.field.clone(),
            theta1: t.theta1.clone(),
            mu1: t.mu1.clone(),
            c_g: t.c_g.clone(),
            c_p: t.c_p.clone(),
            reps: t.reps.clone(),
            d,
            a,
        })
    }

    pub fn normalizer(&self) -> Result<AdditiveSympCode> {
        steane_normalizer(self.c_g.generator(), &self.d, &self.a)
    }
}

/// The quantum Goethals-Preparata code and everything it was built from.
#[derive(Clone, Debug)]
pub struct GpConstruction {
    pub tower: ClassicalTower,
    pub components: GpComponents,
    pub code: UnionStabilizerCode,
}

pub fn build_gp_code(m: usize) -> Result<GpConstruction> {
    let tower = ClassicalTower::build(m)?;
    let components = GpComponents::from_tower(&tower)?;
    let base = StabilizerCode::from_normalizer(components.normalizer()?)?;
    let mut code = UnionStabilizerCode::new(base, gp_translations(&tower.reps)?)?;
    code.label = format!("quantum Goethals-Preparata m={m}");
    Ok(GpConstruction {
        tower,
        components,
        code,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub radius_g: usize,
    pub radius_p: usize,
    pub radius_rm: usize,
    pub budget: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            radius_g: 7,
            radius_p: 5,
            radius_rm: 3,
            budget: crate::distsearch::DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub instances: usize,
    pub detail: String,
    /// Hex of a counterexample, or of the witness for an upper bound.
    pub witness: Option<String>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct GpReport {
    pub m: usize,
    pub n: usize,
    pub k: Option<usize>,
    pub translations: usize,
    pub log2_dim: Option<f64>,
    pub options: VerifyOptions,
    pub checks: Vec<CheckResult>,
    /// Set when every check passed with radii one below the target weights.
    pub certified_distance: Option<usize>,
    pub upper_bound_witness: Option<SympHex>,
    pub elapsed_ms: u128,
}

impl GpReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Timer(Instant);

impl Timer {
    fn start() -> Self {
        Timer(Instant::now())
    }
    fn ms(&self) -> u128 {
        self.0.elapsed().as_millis()
    }
}

fn check(name: &str, passed: bool, instances: usize, detail: String, t: &Timer) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        instances,
        detail,
        witness: None,
        elapsed_ms: t.ms(),
    }
}

/// Pair sums `t_i + t_j`, `i < j`.
fn rep_differences(reps: &[BitVector]) -> Vec<BitVector> {
    let mut out = Vec::new();
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            out.push(a ^ b);
        }
    }
    out
}

/// No vector of weight `<= radius` in `code` or in any of the given cosets.
fn coset_floor_check(
    label: &str,
    code: &LinearCode,
    shifts: &[BitVector],
    radius: usize,
    budget: u128,
) -> Result<CheckResult> {
    let t = Timer::start();
    let name = format!("{label}: minimum weight > {radius}");
    let engine = SearchEngine::for_linear_code(code, radius, budget)?;
    let mut outcomes = vec![engine.min_weight_search()];
    outcomes.extend(engine.coset_search_batch(shifts)?);
    let bad: Vec<(usize, &SearchOutcome)> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| o.found())
        .collect();
    let mut r = check(
        &name,
        bad.is_empty(),
        outcomes.len(),
        match bad.first() {
            None => format!(
                "no vector of weight <= {radius} in {} instances",
                outcomes.len()
            ),
            Some((i, o)) => format!(
                "{} of {} instances have weight <= {radius}; first is instance {i} with weight {}",
                bad.len(),
                outcomes.len(),
                o.weight.unwrap()
            ),
        },
        &t,
    );
    r.witness = bad
        .first()
        .and_then(|(_, o)| o.witness.as_ref().map(|w| w.to_hex()));
    Ok(r)
}

/// Structured verification that the quantum Goethals-Preparata code has
/// distance 8. Errors only on budget or shape problems; failed checks are
/// reported, not raised.
pub fn verify_gp_distance(c: &GpComponents, opts: &VerifyOptions) -> Result<GpReport> {
    let total = Timer::start();
    let n = c.c_g.n();
    check_len(n, c.c_p.n())?;
    check_len(n, c.d.ncols())?;
    let diffs = rep_differences(&c.reps);
    let mut checks = Vec::new();

    checks.push(coset_floor_check(
        "C_G and cosets C_G + t_i + t_j",
        &c.c_g,
        &diffs,
        opts.radius_g,
        opts.budget,
    )?);
    checks.push(coset_floor_check(
        "C_P and cosets C_P + t_i + t_j",
        &c.c_p,
        &diffs,
        opts.radius_p,
        opts.budget,
    )?);

    let t = Timer::start();
    let rm = c.c_p.augment(&c.reps)?;
    let want = (1usize << c.m) - c.m - 1;
    let mut rm_check = coset_floor_check("C_P + span{t_i}", &rm, &[], opts.radius_rm, opts.budget)?;
    rm_check.passed &= rm.k() == want;
    rm_check.detail = format!(
        "dimension {} (expected {want}); {}",
        rm.k(),
        rm_check.detail
    );
    rm_check.elapsed_ms = t.ms();
    checks.push(rm_check);

    let t = Timer::start();
    let cyc_n = (n / 2) - 1;
    let theta_code = cyclic_span(cyc_n, &c.theta1).extend_parity();
    let mu_code = cyclic_code(cyc_n, &c.mu1)?.extend_parity();
    let trivial = theta_code.intersection_is_trivial(&mu_code)?;
    checks.push(check(
        "<theta_1> and <mu_1> (extended) intersect trivially",
        trivial,
        1,
        format!("dims {} and {}", theta_code.k(), mu_code.k()),
        &t,
    ));

    let t = Timer::start();
    let dim = c.d.nrows();
    let shape_ok = c.a.nrows() == dim && c.a.ncols() == dim;
    let (rd, rad, rsum) = if shape_ok {
        let ad = c.a.mul(&c.d);
        let sum = BitMatrix::from_rows(
            n,
            c.d.rows()
                .iter()
                .zip(ad.rows())
                .map(|(x, y)| x ^ y)
                .collect(),
        )?;
        (c.d.rank(), ad.rank(), sum.rank())
    } else {
        (0, 0, 0)
    };
    checks.push(check(
        "D, AD and D + AD have full rank",
        shape_ok && rd == dim && rad == dim && rsum == dim,
        1,
        format!("dim {dim}; ranks {rd}, {rad}, {rsum}"),
        &t,
    ));

    let t = Timer::start();
    let base = c.normalizer().and_then(StabilizerCode::from_normalizer);
    let (base_ok, base_detail) = match &base {
        Ok(b) => {
            let a = audit(b);
            let fails: Vec<String> = a.failures().map(|f| f.name.clone()).collect();
            (
                a.all_passed(),
                if fails.is_empty() {
                    format!(
                        "[[{}, {}]], rank S = {}, rank N = {}",
                        b.n(),
                        b.k(),
                        b.stab().rank(),
                        b.norm().rank()
                    )
                } else {
                    format!("failed: {}", fails.join("; "))
                },
            )
        }
        Err(e) => (false, e.to_string()),
    };
    checks.push(check(
        "stabilizer self-orthogonal and logical audit",
        base_ok,
        1,
        base_detail,
        &t,
    ));

    let t = Timer::start();
    let translations = gp_translations(&c.reps)?;
    let union = base
        .as_ref()
        .ok()
        .map(|b| UnionStabilizerCode::new(b.clone(), translations.clone()));
    let (tr_ok, tr_detail) = match &union {
        Some(Ok(u)) => (
            true,
            format!(
                "{} translations, log2 dim {}",
                u.translations().len(),
                u.log2_dim()
            ),
        ),
        Some(Err(e)) => (false, e.to_string()),
        None => (false, "no base code".into()),
    };
    checks.push(check(
        "translations lie in distinct normalizer cosets",
        tr_ok,
        translations.len(),
        tr_detail,
        &t,
    ));

    let t = Timer::start();
    let target = opts.radius_g + 1;
    let mut upper = check("weight-8 element outside C~_0", false, 1, String::new(), &t);
    let mut upper_hex = None;
    let found = SearchEngine::for_linear_code(&c.c_g, target, opts.budget)?.min_weight_search();
    match (&found.witness, &base) {
        (Some(w), Ok(b)) => {
            let e = SympVector::new(w.clone(), BitVector::zeros(n))?;
            let in_norm = b.norm().contains(&e);
            let in_stab = b.stab().contains(&e);
            upper.passed = in_norm && !in_stab && found.weight == Some(target);
            upper.detail = format!(
                "(c|0) with c in C_G of weight {}; in normalizer: {in_norm}; in stabilizer: {in_stab}",
                found.weight.unwrap()
            );
            upper.witness = Some(w.to_hex());
            upper_hex = Some(e.to_hex_pair());
        }
        (None, _) => upper.detail = format!("no codeword of weight <= {target}"),
        (_, Err(_)) => upper.detail = "no base code".into(),
    }
    upper.elapsed_ms = t.ms();
    checks.push(upper);

    let all = checks.iter().all(|c| c.passed);
    // a larger radius_g would reach the weight-8 codewords of C_G itself
    let radii_ok = opts.radius_g == 7 && opts.radius_p >= 5 && opts.radius_rm >= 3;
    let u = union.and_then(|u| u.ok());
    Ok(GpReport {
        m: c.m,
        n,
        k: u.as_ref().map(|u| u.base().k()),
        translations: translations.len(),
        log2_dim: u.as_ref().map(|u| u.log2_dim()),
        options: *opts,
        checks,
        certified_distance: (all && radii_ok).then_some(8),
        upper_bound_witness: upper_hex,
        elapsed_ms: total.ms(),
    })
}
