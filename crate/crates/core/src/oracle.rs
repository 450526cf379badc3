//! Exact brute-force answers for small instances: per-length acceptance
//! counts, universality indices, subset tests and language enumeration.
//!
//! Counting determinizes on the fly one length at a time, so it handles
//! lengths in the dozens as long as the number of distinct subsets per layer
//! stays below the configured limit.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::automata::{certify_block, AdfaCertificate, Nfa, Symbol, Word};
use crate::distributions::LengthDistribution;
use crate::error::{Error, Result};
use crate::util::ratio_to_f64;

/// All words of length `len` over `{0, .., s-1}` in lexicographic order.
pub fn all_words(s: u32, len: usize) -> impl Iterator<Item = Word> {
    let mut next = if s == 0 && len > 0 {
        None
    } else {
        Some(vec![0 as Symbol; len])
    };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        // increment as a base-s counter, most significant symbol first
        let mut i = len;
        while i > 0 {
            i -= 1;
            if succ[i] + 1 < s {
                succ[i] += 1;
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(Word::new(current))
    })
}

/// Outcome of an exact inclusion test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetOutcome {
    Included,
    Counterexample(Word),
}

/// Interval around an index whose exact value depends on lengths above `cutoff`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexInterval {
    pub lower: f64,
    pub upper: f64,
    pub cutoff: u64,
}

impl IndexInterval {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

pub const DEFAULT_SUBSET_LIMIT: usize = 1 << 20;
pub const DEFAULT_ENUM_LIMIT: usize = 1 << 20;

/// Resource limits for the brute-force computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Distinct subsets alive in one layer of the determinization.
    pub subsets: usize,
    /// Words (and search nodes) visited by language enumeration.
    pub words: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            subsets: DEFAULT_SUBSET_LIMIT,
            words: DEFAULT_ENUM_LIMIT,
        }
    }
}

type StateSet = Vec<u64>;

fn singleton_set(n: usize, states: &[usize]) -> StateSet {
    let mut set = vec![0u64; n.div_ceil(64)];
    for &q in states {
        set[q / 64] |= 1 << (q % 64);
    }
    set
}

fn members(set: &StateSet) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(i, &word)| {
        (0..64).filter(move |b| word >> b & 1 == 1).map(move |b| i * 64 + b)
    })
}

impl Limits {
    /// `|L(a) ∩ Σ^n|` for every `n <= max_len`.
    pub fn counts_up_to(&self, a: &Nfa, max_len: usize) -> Result<Vec<BigUint>> {
        let n = a.num_states();
        let accepting = |set: &StateSet| members(set).any(|q| a.is_final(q));
        let mut layer: HashMap<StateSet, BigUint> = HashMap::new();
        if !a.start_states().is_empty() {
            layer.insert(singleton_set(n, a.start_states()), BigUint::from(1u32));
        }
        let mut counts = Vec::with_capacity(max_len + 1);
        for len in 0..=max_len {
            counts.push(
                layer
                    .iter()
                    .filter(|(set, _)| accepting(set))
                    .map(|(_, w)| w)
                    .sum(),
            );
            if len == max_len {
                break;
            }
            let mut next: HashMap<StateSet, BigUint> = HashMap::new();
            for (set, weight) in &layer {
                for sym in 0..a.alphabet_size() {
                    let mut succ = vec![0u64; set.len()];
                    let mut any = false;
                    for p in members(set) {
                        for &q in a.successors(p, sym) {
                            succ[q / 64] |= 1 << (q % 64);
                            any = true;
                        }
                    }
                    if any {
                        *next.entry(succ).or_default() += weight;
                    }
                }
                if next.len() > self.subsets {
                    return Err(Error::ResourceLimit {
                        what: "subset states per layer",
                        limit: self.subsets,
                    });
                }
            }
            layer = next;
        }
        Ok(counts)
    }

    pub fn count_per_length(&self, a: &Nfa, len: usize) -> Result<BigUint> {
        Ok(self.counts_up_to(a, len)?.pop().expect("one count per length"))
    }

    /// Index of a block NFA under the uniform distribution on `Σ^ℓ`.
    pub fn exact_index_block(&self, a: &Nfa) -> Result<f64> {
        let cert = certify_block(a)?;
        let len = cert.word_length();
        let count = self.count_per_length(cert.nfa(), len)?;
        Ok(ratio_to_f64(&count, &BigUint::from(a.alphabet_size()).pow(len as u32)))
    }

    /// Bounds on the index of `a` under the length-based distribution with
    /// length law `l`, exact up to floating point on lengths `<= cutoff`.
    pub fn exact_index_truncated(
        &self,
        a: &Nfa,
        l: &LengthDistribution,
        cutoff: u64,
    ) -> Result<IndexInterval> {
        let counts = self.counts_up_to(a, cutoff as usize)?;
        let s = BigUint::from(a.alphabet_size());
        let mut lower = 0.0;
        for (len, count) in counts.iter().enumerate() {
            let mass = l.mass(len as u64);
            if mass > 0.0 {
                lower += mass * ratio_to_f64(count, &s.pow(len as u32));
            }
        }
        Ok(IndexInterval {
            lower,
            upper: lower + l.tail(cutoff),
            cutoff,
        })
    }

    /// Index of `a` under the uniform distribution on `Σ^{<=max_len}`.
    pub fn exact_index_uniform_up_to(&self, a: &Nfa, max_len: usize) -> Result<f64> {
        let counts = self.counts_up_to(a, max_len)?;
        let s = BigUint::from(a.alphabet_size());
        let accepted: BigUint = counts.iter().sum();
        let total: BigUint = (0..=max_len as u32).map(|k| s.pow(k)).sum();
        Ok(ratio_to_f64(&accepted, &total))
    }

    /// The words of `L(B)` in depth-first order with symbols ascending.
    pub fn enumerate_language(&self, b: &AdfaCertificate) -> Result<Vec<Word>> {
        let dfa = b.dfa();
        let mut words = Vec::new();
        let mut visited = 0usize;
        let mut stack: Vec<(usize, Vec<Symbol>)> = vec![(dfa.start(), Vec::new())];
        while let Some((q, prefix)) = stack.pop() {
            visited += 1;
            if visited > self.words {
                return Err(Error::ResourceLimit {
                    what: "enumerated words",
                    limit: self.words,
                });
            }
            if dfa.is_final(q) {
                words.push(Word::new(prefix.clone()));
            }
            for a in (0..dfa.alphabet_size()).rev() {
                if let Some(r) = dfa.next(q, a) {
                    let mut longer = prefix.clone();
                    longer.push(a);
                    stack.push((r, longer));
                }
            }
        }
        Ok(words)
    }

    /// Whether `L(B) ⊆ L(a)`, with the first counterexample in enumeration order.
    pub fn exact_subset(&self, b: &AdfaCertificate, a: &Nfa) -> Result<SubsetOutcome> {
        if a.alphabet_size() != b.alphabet_size() {
            return Err(Error::AlphabetMismatch {
                expected: a.alphabet_size(),
                found: b.alphabet_size(),
            });
        }
        for w in self.enumerate_language(b)? {
            if !a.accepts(&w)? {
                return Ok(SubsetOutcome::Counterexample(w));
            }
        }
        Ok(SubsetOutcome::Included)
    }
}

pub fn counts_up_to(a: &Nfa, max_len: usize) -> Result<Vec<BigUint>> {
    Limits::default().counts_up_to(a, max_len)
}

pub fn count_per_length(a: &Nfa, len: usize) -> Result<BigUint> {
    Limits::default().count_per_length(a, len)
}

pub fn exact_index_block(a: &Nfa) -> Result<f64> {
    Limits::default().exact_index_block(a)
}

pub fn exact_index_truncated(a: &Nfa, l: &LengthDistribution, cutoff: u64) -> Result<IndexInterval> {
    Limits::default().exact_index_truncated(a, l, cutoff)
}

pub fn exact_index_uniform_up_to(a: &Nfa, max_len: usize) -> Result<f64> {
    Limits::default().exact_index_uniform_up_to(a, max_len)
}

/// Enumeration capped at `limit` visited words.
pub fn enumerate_language(b: &AdfaCertificate, limit: usize) -> Result<Vec<Word>> {
    Limits {
        words: limit,
        ..Limits::default()
    }
    .enumerate_language(b)
}

pub fn exact_subset(b: &AdfaCertificate, a: &Nfa) -> Result<SubsetOutcome> {
    Limits::default().exact_subset(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{certify_acyclic, Dfa};
    use crate::sampling::RngStream;
    use rand::Rng;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn count_by_enumeration(a: &Nfa, len: usize) -> u64 {
        all_words(a.alphabet_size(), len)
            .filter(|w| a.accepts(w).unwrap())
            .count() as u64
    }

    fn random_nfa(rng: &mut RngStream, states: usize, s: u32) -> Nfa {
        let mut t = Vec::new();
        for p in 0..states {
            for a in 0..s {
                for q in 0..states {
                    if rng.random_bool(0.25) {
                        t.push((p, a, q));
                    }
                }
            }
        }
        let finals: Vec<usize> = (0..states).filter(|_| rng.random_bool(0.4)).collect();
        Nfa::new(s, states, [0], finals, t).unwrap()
    }

    #[test]
    fn all_words_in_order() {
        let words: Vec<String> = all_words(2, 2).map(|w| w.to_string()).collect();
        assert_eq!(words, ["00", "01", "10", "11"]);
        assert_eq!(all_words(3, 0).count(), 1);
        assert_eq!(all_words(0, 2).count(), 0);
        assert_eq!(all_words(3, 4).count(), 81);
    }

    #[test]
    fn counts_for_simple_languages() {
        assert_eq!(count_per_length(&Dfa::exact_length(2, 3).into_nfa(), 3).unwrap(), big(8));
        assert_eq!(count_per_length(&Dfa::exact_length(2, 3).into_nfa(), 2).unwrap(), big(0));
        // 0Σ*
        let zero_first = Nfa::new(2, 2, [0], [1], [(0, 0, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
        let counts = counts_up_to(&zero_first, 40).unwrap();
        assert_eq!(counts[0], big(0));
        for (n, c) in counts.iter().enumerate().skip(1) {
            assert_eq!(c, &(big(1) << (n - 1)));
        }
    }

    #[test]
    fn counts_agree_with_enumeration_on_random_nfas() {
        let mut rng = RngStream::new(21);
        for _ in 0..100 {
            let states = rng.random_range(1..=5);
            let s = rng.random_range(1..=3);
            let a = random_nfa(&mut rng, states, s);
            let counts = counts_up_to(&a, 6).unwrap();
            for (n, c) in counts.iter().enumerate() {
                assert_eq!(c, &big(count_by_enumeration(&a, n)));
                assert!(c <= &BigUint::from(s).pow(n as u32));
            }
        }
    }

    #[test]
    fn subset_limit_is_enforced() {
        // (0|1)*1(0|1)^{k}: determinization needs 2^k subsets
        let k = 12;
        let mut t = vec![(0, 0, 0), (0, 1, 0), (0, 1, 1)];
        for i in 1..=k {
            t.push((i, 0, i + 1));
            t.push((i, 1, i + 1));
        }
        let a = Nfa::new(2, k + 2, [0], [k + 1], t).unwrap();
        let tight = Limits {
            subsets: 64,
            ..Limits::default()
        };
        assert!(matches!(
            tight.count_per_length(&a, 20),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(count_per_length(&a, 20).is_ok());
    }

    #[test]
    fn block_index_examples() {
        assert_eq!(exact_index_block(&Dfa::exact_length(2, 3).into_nfa()).unwrap(), 1.0);
        // Σ^10 minus 0^10: 11 states, the lower chain tracks "all zeros so far"
        let mut t = Vec::new();
        for i in 0..10 {
            t.push((i, 0, i + 1));
            t.push((i, 1, 11 + i));
            if i > 0 {
                t.push((10 + i, 0, 11 + i));
                t.push((10 + i, 1, 11 + i));
            }
        }
        let a = Nfa::new(2, 21, [0], [20], t).unwrap();
        assert_eq!(exact_index_block(&a).unwrap(), 1.0 - 2f64.powi(-10));
        assert!(matches!(
            exact_index_block(&Dfa::universal(2).into_nfa()),
            Err(Error::NotBlock(..))
        ));
    }

    #[test]
    fn block_index_matches_enumeration_on_random_block_nfas() {
        let mut rng = RngStream::new(22);
        let mut checked = 0;
        while checked < 30 {
            // layered NFA: 6 states over 3 levels of 2
            let mut t = Vec::new();
            for level in 0..2 {
                for p in 0..2 {
                    for a in 0..2 {
                        for q in 0..2 {
                            if rng.random_bool(0.4) {
                                t.push((2 * level + p, a, 2 * level + 2 + q));
                            }
                        }
                    }
                }
            }
            let a = Nfa::new(2, 6, [0, 1], [4, 5], t).unwrap();
            let Ok(index) = exact_index_block(&a) else {
                continue;
            };
            checked += 1;
            assert_eq!(index, count_by_enumeration(&a, 2) as f64 / 4.0);
        }
    }

    #[test]
    fn truncated_index_examples() {
        let l = LengthDistribution::lambert(2.0, 0).unwrap();
        let universal = Dfa::universal(2).into_nfa();
        let i = exact_index_truncated(&universal, &l, 10).unwrap();
        assert!((i.lower - (1.0 - l.tail(10))).abs() < 1e-15);
        assert!((i.upper - 1.0).abs() < 1e-15);

        let empty = Nfa::new(2, 1, [0], Vec::<usize>::new(), []).unwrap();
        let i = exact_index_truncated(&empty, &l, 10).unwrap();
        assert_eq!((i.lower, i.upper), (0.0, l.tail(10)));

        // Σ* minus 0Σ*: ε plus words starting with 1
        let a = Nfa::new(2, 2, [0], [0, 1], [(0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
        let i = exact_index_truncated(&a, &l, 40).unwrap();
        assert!(i.contains(0.75) || (i.lower - 0.75).abs() < 1e-15);
        assert!(i.width() <= 2f64.powi(-41));
        assert_eq!(i.width(), l.tail(40));
    }

    #[test]
    fn uniform_up_to_index() {
        // Σ^{<=3} minus Σ^3 over two symbols: 7 of 15 words
        let a = Dfa::exact_length(2, 3).into_nfa();
        let complement_of_top: Nfa = Nfa::new(
            2,
            4,
            [0],
            [0, 1, 2],
            a.transitions().collect::<Vec<_>>(),
        )
        .unwrap();
        assert!((exact_index_uniform_up_to(&complement_of_top, 3).unwrap() - 7.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn subset_examples() {
        let sigma2 = certify_acyclic(&Dfa::exact_length(2, 2)).unwrap();
        assert_eq!(
            exact_subset(&sigma2, &Dfa::universal(2).into_nfa()).unwrap(),
            SubsetOutcome::Included
        );
        // Σ² minus {10}
        let a = Nfa::new(2, 4, [0], [2], [(0, 0, 1), (1, 0, 2), (1, 1, 2), (0, 1, 3), (3, 1, 2)])
            .unwrap();
        assert_eq!(
            exact_subset(&sigma2, &a).unwrap(),
            SubsetOutcome::Counterexample(Word::from_digits("10").unwrap())
        );
    }

    #[test]
    fn enumeration_order_and_limit() {
        let d = Dfa::new(2, 3, 0, [0, 1, 2], [(0, 0, 1), (0, 1, 2), (1, 1, 2)]).unwrap();
        let cert = certify_acyclic(&d).unwrap();
        let words: Vec<String> = enumerate_language(&cert, 100)
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(words, ["ε", "0", "01", "1"]);
        assert!(matches!(
            enumerate_language(&cert, 2),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
