#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use nfa_approx::{Dfa, Nfa, RngStream, StateId};
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Exact universality by exploring every reachable subset, including the
/// empty one produced by missing transitions.
pub fn is_universal(a: &Nfa) -> bool {
    let start: Vec<StateId> = a.start_states().to_vec();
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        if !set.iter().any(|&q| a.is_final(q)) {
            return false;
        }
        for sym in 0..a.alphabet_size() {
            let mut next: Vec<StateId> = set
                .iter()
                .flat_map(|&p| a.successors(p, sym).iter().copied())
                .collect();
            next.sort_unstable();
            next.dedup();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    true
}

pub fn random_nfa(rng: &mut RngStream, states: usize, s: u32, density: f64, final_rate: f64) -> Nfa {
    let mut t = Vec::new();
    for p in 0..states {
        for a in 0..s {
            for q in 0..states {
                if rng.random_bool(density) {
                    t.push((p, a, q));
                }
            }
        }
    }
    let finals: Vec<StateId> = (0..states).filter(|_| rng.random_bool(final_rate)).collect();
    Nfa::new(s, states, [0], finals, t).unwrap()
}

/// Random DFA, possibly incomplete and cyclic.
pub fn random_dfa(rng: &mut RngStream, states: usize, s: u32) -> Dfa {
    let mut t = Vec::new();
    for p in 0..states {
        for a in 0..s {
            if rng.random_bool(0.85) {
                t.push((p, a, rng.random_range(0..states)));
            }
        }
    }
    let finals: Vec<StateId> = (0..states).filter(|_| rng.random_bool(0.5)).collect();
    Dfa::new(s, states, 0, finals, t).unwrap()
}

/// Random acyclic DFA: transitions only go to higher-numbered states.
pub fn random_adfa(rng: &mut RngStream, states: usize, s: u32) -> Dfa {
    let mut t = Vec::new();
    for p in 0..states {
        for a in 0..s {
            if p + 1 < states && rng.random_bool(0.9) {
                t.push((p, a, rng.random_range(p + 1..states)));
            }
        }
    }
    let finals: Vec<StateId> = (0..states).filter(|_| rng.random_bool(0.4)).collect();
    Dfa::new(s, states, 0, finals, t).unwrap()
}

/// Random layered NFA over `len` levels of `width` states; every accepted
/// word has length `len`.
pub fn random_layered(rng: &mut RngStream, len: usize, width: usize, density: f64) -> Nfa {
    let mut t = Vec::new();
    for level in 0..len {
        for p in 0..width {
            for a in 0..2 {
                for q in 0..width {
                    if rng.random_bool(density) {
                        t.push((level * width + p, a, (level + 1) * width + q));
                    }
                }
            }
        }
    }
    let finals = (len * width..(len + 1) * width).collect::<Vec<_>>();
    Nfa::new(2, (len + 1) * width, 0..width, finals, t).unwrap()
}

pub fn chi_square_passes(observed: &[u64], expected: &[f64], significance: f64) -> bool {
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    let critical = ChiSquared::new((observed.len() - 1) as f64)
        .unwrap()
        .inverse_cdf(1.0 - significance);
    stat <= critical
}

/// Three binomial standard deviations for `runs` trials at rate `p`.
pub fn three_sigma(p: f64, runs: u64) -> f64 {
    3.0 * (p * (1.0 - p) / runs as f64).sqrt()
}

/// `Σ_{i=1}^{n} i^{-t}` plus the midpoint of the integral-test bracket.
pub fn zeta_oracle(t: f64, n: u64) -> f64 {
    let partial: f64 = (1..=n).rev().map(|i| (i as f64).powf(-t)).sum();
    let lower = ((n + 1) as f64).powf(1.0 - t) / (t - 1.0);
    let upper = (n as f64).powf(1.0 - t) / (t - 1.0);
    partial + 0.5 * (lower + upper)
}
