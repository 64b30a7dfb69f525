//! Bounded minimum-weight search in cosets of binary linear codes and of
//! additive symplectic codes.
//!
//! A coset is identified by a syndrome. To find a lightest vector with
//! syndrome `t` and weight at most `radius = a + b` (`a = ⌈radius/2⌉`), every
//! pattern of weight at most `b` is stored in a [`SyndromeIndex`] keyed by its
//! syndrome; patterns `p` of weight at most `a` are then streamed and the
//! index is probed at `t + s(p)`. Patterns are enumerated depth-first with
//! the running syndrome updated by one column XOR per step.
//!
//! A pattern is a set of `(position, symbol)` pairs. For binary codes every
//! position has one symbol; for symplectic codes it has three (X, Z, Y) and
//! the weight counts positions.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::bits::{BitMatrix, BitVector};
use crate::error::{check_len, Error, Result};
use crate::lincode::LinearCode;
use crate::symplectic::{swap_halves, AdditiveSympCode, SympVector};

/// Default cap on enumerated patterns per search.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

type Pattern = SmallVec<[(u16, u8); 8]>;

/// Packed syndrome. `u64` covers up to 64 check bits; [`BitVector`] is the
/// general path.
pub trait SyndromeWord: Clone + Eq + Hash + Send + Sync + Debug {
    fn from_bits(v: &BitVector) -> Self;
    fn xor(&self, other: &Self) -> Self;
}

impl SyndromeWord for u64 {
    #[inline]
    fn from_bits(v: &BitVector) -> Self {
        v.words().first().copied().unwrap_or(0)
    }
    #[inline]
    fn xor(&self, other: &Self) -> Self {
        self ^ other
    }
}

impl SyndromeWord for BitVector {
    fn from_bits(v: &BitVector) -> Self {
        v.clone()
    }
    fn xor(&self, other: &Self) -> Self {
        self ^ other
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Hamming,
    Symplectic,
}

/// Result of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Lightest weight found, if any vector of weight `<= radius` exists.
    pub weight: Option<usize>,
    /// The corresponding vector, in the code's ambient layout (concatenated
    /// `(x|z)` for symplectic codes).
    pub witness: Option<BitVector>,
    pub radius: usize,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.weight.is_some()
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    weight: usize,
    vector: BitVector,
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        match self.weight.cmp(&other.weight) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => self.vector.support_cmp(&other.vector) == Ordering::Less,
        }
    }
}

fn pick(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y.better_than(&x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of patterns of weight at most `w` over `n` positions with `q`
/// symbols each.
pub fn pattern_count(n: usize, q: usize, w: usize) -> u128 {
    (0..=w.min(n))
        .map(|i| binom(n, i) * (q as u128).pow(i as u32))
        .sum()
}

/// Syndromes of all patterns up to `max_left_weight`, keeping the lightest
/// (then lexicographically first) pattern per syndrome.
struct SyndromeIndex<S> {
    table: FxHashMap<S, Pattern>,
    max_left_weight: usize,
    /// Lightest nonzero code vector seen as a collision while building.
    collision_best: Option<Candidate>,
}

struct Engine<S> {
    metric: Metric,
    positions: usize,
    symbols: usize,
    ambient_len: usize,
    checks: BitMatrix,
    /// Syndrome of `(position, symbol)` at `position * symbols + symbol`.
    columns: Vec<S>,
    /// Ambient coordinates flipped by `(position, symbol)`.
    ambient: Vec<SmallVec<[u32; 2]>>,
    radius: usize,
    stream_weight: usize,
    index: SyndromeIndex<S>,
}

impl<S: SyndromeWord> Engine<S> {
    fn new(metric: Metric, checks: BitMatrix, radius: usize) -> Self {
        let ambient_len = checks.ncols();
        let (positions, symbols) = match metric {
            Metric::Hamming => (ambient_len, 1),
            Metric::Symplectic => (ambient_len / 2, 3),
        };
        let cols_t = checks.transpose();
        let mut columns = Vec::with_capacity(positions * symbols);
        let mut ambient = Vec::with_capacity(positions * symbols);
        for pos in 0..positions {
            let coords: Vec<SmallVec<[u32; 2]>> = match metric {
                Metric::Hamming => vec![SmallVec::from_slice(&[pos as u32])],
                Metric::Symplectic => {
                    let (x, z) = (pos as u32, (positions + pos) as u32);
                    vec![
                        SmallVec::from_slice(&[x]),
                        SmallVec::from_slice(&[z]),
                        SmallVec::from_slice(&[x, z]),
                    ]
                }
            };
            for c in coords {
                let mut syn = BitVector::zeros(checks.nrows());
                for &j in &c {
                    syn ^= cols_t.row(j as usize);
                }
                columns.push(S::from_bits(&syn));
                ambient.push(c);
            }
        }
        let stream_weight = radius.div_ceil(2);
        let mut engine = Engine {
            metric,
            positions,
            symbols,
            ambient_len,
            checks,
            columns,
            ambient,
            radius,
            stream_weight,
            index: SyndromeIndex {
                table: FxHashMap::default(),
                max_left_weight: radius / 2,
                collision_best: None,
            },
        };
        engine.build_index();
        engine
    }

    fn zero_syndrome(&self) -> S {
        S::from_bits(&BitVector::zeros(self.checks.nrows()))
    }

    fn syndrome(&self, v: &BitVector) -> S {
        S::from_bits(&self.checks.mul_vec(v))
    }

    fn weight(&self, v: &BitVector) -> usize {
        match self.metric {
            Metric::Hamming => v.weight(),
            Metric::Symplectic => SympVector::from_concat(v).expect("even").weight(),
        }
    }

    fn ambient_of(&self, patterns: &[&Pattern]) -> BitVector {
        let mut v = BitVector::zeros(self.ambient_len);
        for p in patterns {
            for &(pos, sym) in p.iter() {
                for &j in &self.ambient[pos as usize * self.symbols + sym as usize] {
                    v.flip(j as usize);
                }
            }
        }
        v
    }

    /// Visits every pattern of weight exactly `depth` whose positions are all
    /// at least `start`, lexicographically.
    fn visit_exact(
        &self,
        start: usize,
        depth: usize,
        acc: &S,
        pattern: &mut Pattern,
        visit: &mut impl FnMut(&Pattern, &S),
    ) {
        if depth == 0 {
            visit(pattern, acc);
            return;
        }
        for pos in start..self.positions.saturating_sub(depth - 1) {
            for sym in 0..self.symbols {
                let s = acc.xor(&self.columns[pos * self.symbols + sym]);
                pattern.push((pos as u16, sym as u8));
                self.visit_exact(pos + 1, depth - 1, &s, pattern, visit);
                pattern.pop();
            }
        }
    }

    fn build_index(&mut self) {
        let mut table: FxHashMap<S, Pattern> = FxHashMap::default();
        let mut collisions: Vec<(Pattern, Pattern)> = Vec::new();
        let zero = self.zero_syndrome();
        for w in 0..=self.index.max_left_weight {
            let mut pattern = Pattern::new();
            self.visit_exact(0, w, &zero, &mut pattern, &mut |p, s| match table.get(s) {
                Some(existing) => collisions.push((existing.clone(), p.clone())),
                None => {
                    table.insert(s.clone(), p.clone());
                }
            });
        }
        let mut best = None;
        for (a, b) in &collisions {
            let v = self.ambient_of(&[a, b]);
            if !v.is_zero() {
                let c = Candidate {
                    weight: self.weight(&v),
                    vector: v,
                };
                best = pick(best, Some(c));
            }
        }
        self.index.table = table;
        self.index.collision_best = best;
    }

    fn probe(&self, target: &S, p: &Pattern, s: &S, exclude_zero: bool) -> Option<Candidate> {
        let hit = self.index.table.get(&target.xor(s))?;
        if exclude_zero && hit == p {
            return None;
        }
        let v = self.ambient_of(&[p, hit]);
        if exclude_zero && v.is_zero() {
            return None;
        }
        Some(Candidate {
            weight: self.weight(&v),
            vector: v,
        })
    }

    /// Best candidate among streamed patterns whose first position is `first`.
    fn stream_from(&self, first: usize, target: &S, exclude_zero: bool) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        let zero = self.zero_syndrome();
        for sym in 0..self.symbols {
            let s0 = zero.xor(&self.columns[first * self.symbols + sym]);
            let mut pattern: Pattern = SmallVec::from_slice(&[(first as u16, sym as u8)]);
            for extra in 0..self.stream_weight {
                self.visit_exact(first + 1, extra, &s0, &mut pattern, &mut |p, s| {
                    if let Some(c) = self.probe(target, p, s, exclude_zero) {
                        if best.as_ref().is_none_or(|b| c.better_than(b)) {
                            best = Some(c);
                        }
                    }
                });
            }
        }
        best
    }

    fn search(&self, target: &S, exclude_zero: bool, parallel: bool) -> SearchOutcome {
        let mut best = if exclude_zero {
            self.index.collision_best.clone()
        } else {
            None
        };
        let empty = Pattern::new();
        best = pick(
            best,
            self.probe(target, &empty, &self.zero_syndrome(), exclude_zero),
        );
        if self.stream_weight > 0 {
            let streamed = if parallel {
                (0..self.positions)
                    .into_par_iter()
                    .map(|first| self.stream_from(first, target, exclude_zero))
                    .reduce(|| None, pick)
            } else {
                (0..self.positions)
                    .map(|first| self.stream_from(first, target, exclude_zero))
                    .fold(None, pick)
            };
            best = pick(best, streamed);
        }
        let best = best.filter(|c| c.weight <= self.radius);
        if let Some(c) = &best {
            assert!(
                self.syndrome(&c.vector) == *target && self.weight(&c.vector) == c.weight,
                "search witness failed re-verification"
            );
        }
        SearchOutcome {
            weight: best.as_ref().map(|c| c.weight),
            witness: best.map(|c| c.vector),
            radius: self.radius,
        }
    }
}

enum EngineImpl {
    Narrow(Engine<u64>),
    Wide(Engine<BitVector>),
}

/// A syndrome index built once for a code and radius, reusable across many
/// target cosets.
pub struct SearchEngine {
    inner: EngineImpl,
    per_search_cost: u128,
}

impl SearchEngine {
    fn build(metric: Metric, checks: BitMatrix, radius: usize, budget: u128) -> Result<Self> {
        let (positions, symbols) = match metric {
            Metric::Hamming => (checks.ncols(), 1),
            Metric::Symplectic => (checks.ncols() / 2, 3),
        };
        if radius > positions {
            return Err(Error::InvalidParameter(format!(
                "radius {radius} exceeds length {positions}"
            )));
        }
        let table_cost = pattern_count(positions, symbols, radius / 2);
        let stream_cost = pattern_count(positions, symbols, radius.div_ceil(2));
        let needed = table_cost + stream_cost;
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        let inner = if checks.nrows() <= 64 {
            EngineImpl::Narrow(Engine::new(metric, checks, radius))
        } else {
            EngineImpl::Wide(Engine::new(metric, checks, radius))
        };
        Ok(SearchEngine {
            inner,
            per_search_cost: stream_cost,
        })
    }

    /// Engine over the parity checks of a binary linear code.
    pub fn for_linear_code(code: &LinearCode, radius: usize, budget: u128) -> Result<Self> {
        Self::build(Metric::Hamming, code.parity_check().clone(), radius, budget)
    }

    /// Engine over an additive code: the checks are the symplectic dual's
    /// generators, so that the syndrome of `v` is `(<v, h_j>)_j`.
    pub fn for_symplectic_code(
        code: &AdditiveSympCode,
        radius: usize,
        budget: u128,
    ) -> Result<Self> {
        let dual = code.symplectic_dual();
        let checks = BitMatrix::from_rows(
            2 * code.n(),
            dual.generators().rows().iter().map(swap_halves).collect(),
        )?;
        Self::build(Metric::Symplectic, checks, radius, budget)
    }

    /// Patterns streamed per target.
    pub fn per_search_cost(&self) -> u128 {
        self.per_search_cost
    }

    pub fn radius(&self) -> usize {
        match &self.inner {
            EngineImpl::Narrow(e) => e.radius,
            EngineImpl::Wide(e) => e.radius,
        }
    }

    fn ambient_len(&self) -> usize {
        match &self.inner {
            EngineImpl::Narrow(e) => e.ambient_len,
            EngineImpl::Wide(e) => e.ambient_len,
        }
    }

    fn run(&self, shift: &BitVector, exclude_zero: bool, parallel: bool) -> SearchOutcome {
        match &self.inner {
            EngineImpl::Narrow(e) => e.search(&e.syndrome(shift), exclude_zero, parallel),
            EngineImpl::Wide(e) => e.search(&e.syndrome(shift), exclude_zero, parallel),
        }
    }

    /// Lightest vector in `code + shift`, or none within the radius.
    pub fn coset_search(&self, shift: &BitVector) -> Result<SearchOutcome> {
        check_len(self.ambient_len(), shift.len())?;
        Ok(self.run(shift, false, true))
    }

    /// Lightest nonzero codeword, or none within the radius.
    pub fn min_weight_search(&self) -> SearchOutcome {
        self.run(&BitVector::zeros(self.ambient_len()), true, true)
    }

    /// Independent coset searches fanned out over the rayon pool; outcomes in
    /// input order.
    pub fn coset_search_batch(&self, shifts: &[BitVector]) -> Result<Vec<SearchOutcome>> {
        for s in shifts {
            check_len(self.ambient_len(), s.len())?;
        }
        Ok(shifts
            .par_iter()
            .map(|s| self.run(s, false, false))
            .collect())
    }
}

pub fn coset_min_weight(
    code: &LinearCode,
    shift: &BitVector,
    radius: usize,
) -> Result<SearchOutcome> {
    coset_min_weight_with_budget(code, shift, radius, DEFAULT_BUDGET)
}

pub fn coset_min_weight_with_budget(
    code: &LinearCode,
    shift: &BitVector,
    radius: usize,
    budget: u128,
) -> Result<SearchOutcome> {
    check_len(code.n(), shift.len())?;
    SearchEngine::for_linear_code(code, radius, budget)?.coset_search(shift)
}

pub fn min_weight(code: &LinearCode, radius: usize) -> Result<SearchOutcome> {
    min_weight_with_budget(code, radius, DEFAULT_BUDGET)
}

pub fn min_weight_with_budget(
    code: &LinearCode,
    radius: usize,
    budget: u128,
) -> Result<SearchOutcome> {
    Ok(SearchEngine::for_linear_code(code, radius, budget)?.min_weight_search())
}

/// Lightest symplectic-weight vector of `code + shift`. A zero shift asks for
/// the lightest nonzero element of `code` itself.
pub fn symp_min_weight(
    code: &AdditiveSympCode,
    shift: &SympVector,
    radius: usize,
    budget: u128,
) -> Result<SearchOutcome> {
    check_len(code.n(), shift.n())?;
    let engine = SearchEngine::for_symplectic_code(code, radius, budget)?;
    if shift.is_zero() {
        Ok(engine.min_weight_search())
    } else {
        engine.coset_search(&shift.to_concat())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2poly::Poly2;
    use crate::lincode::cyclic_code;

    fn ext_hamming8() -> LinearCode {
        cyclic_code(7, &Poly2::from_exponents(&[3, 1, 0]))
            .unwrap()
            .extend_parity()
    }

    #[test]
    fn codeword_shift_has_weight_zero() {
        let c = ext_hamming8();
        let out = coset_min_weight(&c, c.generator().row(0), 4).unwrap();
        assert_eq!(out.weight, Some(0));
        assert!(out.witness.unwrap().is_zero());
    }

    #[test]
    fn unit_vector_is_its_own_coset_leader() {
        let c = ext_hamming8();
        let e0 = BitVector::from_indices(8, [0]);
        let out = coset_min_weight(&c, &e0, 3).unwrap();
        assert_eq!(out.weight, Some(1));
        assert_eq!(out.witness.unwrap(), e0);
    }

    #[test]
    fn extended_hamming_min_weight() {
        let c = ext_hamming8();
        assert!(!min_weight(&c, 3).unwrap().found());
        let out = min_weight(&c, 4).unwrap();
        assert_eq!(out.weight, Some(4));
        assert!(c.contains_vector(out.witness.as_ref().unwrap()));
    }

    #[test]
    fn symplectic_singleton_code() {
        let c = AdditiveSympCode::from_vectors(1, &["Y".parse().unwrap()]).unwrap();
        let out = symp_min_weight(&c, &SympVector::zero(1), 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(out.weight, Some(1));
    }

    #[test]
    fn budget_and_radius_errors() {
        let c = ext_hamming8();
        assert!(matches!(
            min_weight_with_budget(&c, 4, 0),
            Err(Error::Budget { .. })
        ));
        assert!(min_weight(&c, 9).is_err());
        assert!(coset_min_weight(&c, &BitVector::zeros(7), 2).is_err());
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(pattern_count(64, 1, 3), 1 + 64 + 2016 + 41664);
        assert_eq!(pattern_count(64, 1, 4), 679_121);
        assert_eq!(pattern_count(2, 3, 2), 1 + 6 + 9);
    }

    #[test]
    fn wide_syndrome_path_matches_narrow() {
        // a [80, 10] code has 70 check bits, beyond the u64 fast path
        let mut rows = Vec::new();
        for i in 0..10 {
            rows.push(BitVector::from_indices(
                80,
                (0..8).map(|j| (i * 8 + j) % 80).chain([i]),
            ));
        }
        let c = LinearCode::from_generators(80, rows).unwrap();
        let out = min_weight(&c, 8).unwrap();
        let brute = (1u64..1 << c.k())
            .map(|m| c.encode(&BitVector::from_u64(c.k(), m)).weight())
            .min()
            .unwrap();
        assert_eq!(out.weight, Some(brute));
    }
}
