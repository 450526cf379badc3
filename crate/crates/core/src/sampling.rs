//! Randomness primitives and exact word samplers.
//!
//! Every sampler draws from a caller-supplied generator; the crate's own
//! stream type is [`RngStream`], a seeded ChaCha generator whose 64-bit
//! stream id allows deterministic splitting.

use num_bigint::BigUint;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{AdfaCertificate, StateId, Symbol, Word};
use crate::distributions::{augment, WordDistribution};
use crate::error::{Error, Result};

/// Seeded, splittable pseudorandom stream. Equal `(seed, stream)` pairs
/// produce equal sequences.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.inner.get_stream()
    }

    /// A fresh stream with the same key and a stream id derived from this
    /// stream's id and `index`; the parent's position is irrelevant.
    pub fn split(&self, index: u64) -> RngStream {
        let mut inner = ChaCha8Rng::seed_from_u64(self.seed);
        inner.set_stream(mix(self.stream() ^ mix(index.wrapping_add(1))));
        RngStream {
            seed: self.seed,
            inner,
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Returns 0 with probability `p` and 1 otherwise.
pub fn toss_coin<R: Rng + ?Sized>(p: f64, rng: &mut R) -> Result<u8> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidInput(format!("coin probability {p} is outside [0,1]")));
    }
    Ok(if heads(p, rng) { 0 } else { 1 })
}

fn heads<R: Rng + ?Sized>(p: f64, rng: &mut R) -> bool {
    rng.random::<f64>() < p
}

/// A uniformly random word of length `len` over `{0, .., s-1}`. Panics if `s == 0`.
pub fn uselect<R: Rng + ?Sized>(s: u32, len: usize, rng: &mut R) -> Word {
    assert!(s >= 1, "alphabet must be nonempty");
    (0..len)
        .map(|_| rng.random_range(0..s))
        .collect::<Vec<Symbol>>()
        .into()
}

/// Floor for the remaining-mass denominator of the sequential coin scheme.
const MASS_FLOOR: f64 = 1e-15;

/// A probability vector over outcomes `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    probs: Vec<f64>,
}

impl FiniteDistribution {
    /// Entries must be finite, nonnegative and sum to 1 within 1e-9.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidInput("finite distribution needs an outcome".into()));
        }
        if let Some(p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::InvalidInput(format!("invalid probability {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput(format!("probabilities sum to {sum}, not 1")));
        }
        Ok(FiniteDistribution { probs })
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// The coin biases `p_1 .. p_{len-1}` of the sequential scheme:
    /// `p_i = D(x_i) / ((1-p_1)...(1-p_{i-1}))`, clamped to `[0,1]`.
    pub fn coin_parameters(&self) -> Vec<f64> {
        let mut remaining = 1.0;
        let mut coins = Vec::with_capacity(self.probs.len().saturating_sub(1));
        for &d in &self.probs[..self.probs.len() - 1] {
            let p = (d / f64::max(remaining, MASS_FLOOR)).clamp(0.0, 1.0);
            coins.push(p);
            remaining *= 1.0 - p;
        }
        coins
    }

    /// Sequential coin tosses: outcome `i` on the first heads; the last
    /// outcome absorbs whatever mass is left.
    pub fn select<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let last = self.probs.len() - 1;
        let mut remaining = 1.0;
        for (i, &d) in self.probs[..last].iter().enumerate() {
            let p = (d / f64::max(remaining, MASS_FLOOR)).clamp(0.0, 1.0);
            if heads(p, rng) {
                return i;
            }
            remaining *= 1.0 - p;
        }
        last
    }
}

pub fn select_fin<R: Rng + ?Sized>(d: &FiniteDistribution, rng: &mut R) -> usize {
    d.select(rng)
}

/// Accepting-path counts of an acyclic DFA. `count(q)` is the number of
/// words leading from the start state to `q` (zero for unreachable states).
#[derive(Debug, Clone, PartialEq)]
pub struct PathCountTable {
    counts: Vec<BigUint>,
    total: BigUint,
    finals: Vec<StateId>,
}

impl PathCountTable {
    pub fn count(&self, q: StateId) -> &BigUint {
        &self.counts[q]
    }

    /// `|L(B)|`.
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    /// Reachable final states, ascending.
    pub fn finals(&self) -> &[StateId] {
        &self.finals
    }
}

pub fn count_paths(b: &AdfaCertificate) -> PathCountTable {
    let dfa = b.dfa();
    let mut counts = vec![BigUint::ZERO; dfa.num_states()];
    counts[dfa.start()] = BigUint::from(1u32);
    for &q in b.topo_order() {
        if q == dfa.start() {
            continue;
        }
        let sum: BigUint = b.predecessors(q).iter().map(|&(p, _)| &counts[p]).sum();
        counts[q] = sum;
    }
    let mut finals: Vec<StateId> = b
        .topo_order()
        .iter()
        .copied()
        .filter(|&q| dfa.is_final(q))
        .collect();
    finals.sort_unstable();
    let total = finals.iter().map(|&f| &counts[f]).sum();
    PathCountTable {
        counts,
        total,
        finals,
    }
}

/// Uniform integer in `[0, bound)` by rejection on `bits(bound)` random bits.
pub fn uniform_below<R: Rng + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(bound.bits() > 0, "empty range");
    let bits = bound.bits();
    let digits = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) {
        u32::MAX
    } else {
        (1u32 << (bits % 32)) - 1
    };
    loop {
        let mut v: Vec<u32> = (0..digits).map(|_| rng.next_u32()).collect();
        v[digits - 1] &= top_mask;
        let r = BigUint::new(v);
        if &r < bound {
            return r;
        }
    }
}

/// The word of rank `r` in `L(B)`: the final state is chosen by cumulative
/// `N(f)` over ascending ids, then each backward step by cumulative `N(p)`
/// over incoming transitions sorted by `(symbol, source)`.
pub fn unrank(b: &AdfaCertificate, table: &PathCountTable, r: &BigUint) -> Result<Word> {
    if r >= table.total() {
        return Err(Error::InvalidInput(format!(
            "rank {r} is not below the language size {}",
            table.total()
        )));
    }
    let mut r = r.clone();
    let mut q = *table
        .finals()
        .iter()
        .find(|&&f| {
            if &r < table.count(f) {
                true
            } else {
                r -= table.count(f);
                false
            }
        })
        .expect("rank below total selects a final state");
    let start = b.dfa().start();
    let mut reversed = Vec::new();
    // invariant: r < N(q)
    while q != start {
        let &(p, a) = b
            .predecessors(q)
            .iter()
            .find(|&&(p, _)| {
                if &r < table.count(p) {
                    true
                } else {
                    r -= table.count(p);
                    false
                }
            })
            .expect("N(q) is the sum over predecessors");
        reversed.push(a);
        q = p;
    }
    reversed.reverse();
    Ok(Word::new(reversed))
}

/// A uniformly random word of `L(B)`.
pub fn adfa_uselect<R: Rng + ?Sized>(
    b: &AdfaCertificate,
    table: &PathCountTable,
    rng: &mut R,
) -> Result<Word> {
    if table.total() == &BigUint::ZERO {
        return Err(Error::EmptyLanguage);
    }
    let r = uniform_below(table.total(), rng);
    unrank(b, table, &r)
}

/// Outcome of sampling a truncated distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AugmentedSample {
    Word(Word),
    /// The residual outcome: the distribution picked a length above the cutoff.
    None,
}

impl std::fmt::Display for AugmentedSample {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AugmentedSample::Word(w) => w.fmt(f),
            AugmentedSample::None => f.write_str("⊥"),
        }
    }
}

/// Sampler for the truncation at `cutoff` of a length-based distribution.
#[derive(Debug, Clone)]
pub struct AugmentedSampler {
    alphabet_size: u32,
    cutoff: u64,
    table: FiniteDistribution,
}

impl AugmentedSampler {
    pub fn new(w: &WordDistribution, cutoff: u64) -> Result<Self> {
        let table = augment(w, cutoff)?;
        Ok(AugmentedSampler {
            alphabet_size: table.alphabet_size(),
            cutoff,
            table: table.to_finite()?,
        })
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn table(&self) -> &FiniteDistribution {
        &self.table
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> AugmentedSample {
        let len = self.table.select(rng);
        if len as u64 > self.cutoff {
            AugmentedSample::None
        } else {
            AugmentedSample::Word(uselect(self.alphabet_size, len, rng))
        }
    }
}

pub fn sample_augmented<R: Rng + ?Sized>(
    w: &WordDistribution,
    cutoff: u64,
    rng: &mut R,
) -> Result<AugmentedSample> {
    Ok(AugmentedSampler::new(w, cutoff)?.sample(rng))
}

/// A source of random words over a fixed alphabet.
pub trait WordSampler {
    fn alphabet_size(&self) -> u32;
    fn sample_word<R: Rng + ?Sized>(&self, rng: &mut R) -> Word;
}

impl WordSampler for WordDistribution {
    fn alphabet_size(&self) -> u32 {
        WordDistribution::alphabet_size(self)
    }

    fn sample_word<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        self.sample(rng)
    }
}

/// Uniform over `Σ^len`.
#[derive(Debug, Clone, Copy)]
pub struct UniformLength {
    pub alphabet_size: u32,
    pub len: usize,
}

impl WordSampler for UniformLength {
    fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    fn sample_word<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        uselect(self.alphabet_size, self.len, rng)
    }
}

/// Uniform over `Σ^{<=max_len}`: length `k` has mass `s^k / (1 + s + .. + s^max_len)`.
#[derive(Debug, Clone)]
pub struct UniformUpTo {
    alphabet_size: u32,
    lengths: FiniteDistribution,
}

impl UniformUpTo {
    pub fn new(alphabet_size: u32, max_len: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidInput("alphabet size must be at least 1".into()));
        }
        // s^{k - max_len} avoids overflow; the normalization is unchanged
        let inv = 1.0 / alphabet_size as f64;
        let weights: Vec<f64> = (0..=max_len)
            .map(|k| inv.powf((max_len - k) as f64))
            .collect();
        let t: f64 = weights.iter().sum();
        let lengths = FiniteDistribution::new(weights.into_iter().map(|w| w / t).collect())?;
        Ok(UniformUpTo {
            alphabet_size,
            lengths,
        })
    }

    pub fn lengths(&self) -> &FiniteDistribution {
        &self.lengths
    }
}

impl WordSampler for UniformUpTo {
    fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    fn sample_word<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        let k = self.lengths.select(rng);
        uselect(self.alphabet_size, k, rng)
    }
}

/// Uniform over the language of an acyclic DFA.
#[derive(Debug, Clone)]
pub struct AdfaUniform {
    acceptor: AdfaCertificate,
    counts: PathCountTable,
}

impl AdfaUniform {
    pub fn new(acceptor: AdfaCertificate) -> Result<Self> {
        let counts = count_paths(&acceptor);
        if counts.total() == &BigUint::ZERO {
            return Err(Error::EmptyLanguage);
        }
        Ok(AdfaUniform { acceptor, counts })
    }

    pub fn counts(&self) -> &PathCountTable {
        &self.counts
    }
}

impl WordSampler for AdfaUniform {
    fn alphabet_size(&self) -> u32 {
        self.acceptor.alphabet_size()
    }

    fn sample_word<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        adfa_uselect(&self.acceptor, &self.counts, rng).expect("language is nonempty")
    }
}
