//! Monte Carlo estimation of the universality index and the randomized
//! decision procedures built on it.
//!
//! Every procedure returns `true` with certainty when the automaton accepts
//! every word the distribution can produce, and returns `false` with
//! probability at least 3/4 when the index is below `1 - eps`. A `false`
//! verdict always carries the rejected word as a witness.

use std::collections::HashSet;

use serde::Serialize;

use crate::automata::{certify_block, complement_dfa, union_nfa, AdfaCertificate, Dfa, Nfa, StateId, Word};
use crate::distributions::{LengthDistribution, WordDistribution};
use crate::error::{Error, Result};
use crate::sampling::{
    adfa_uselect, count_paths, uselect, AugmentedSample, AugmentedSampler, RngStream, UniformUpTo,
    WordSampler,
};

/// Largest tolerance used by the tractable-distribution procedure. Any value
/// below 1/5 keeps its trial bound valid.
pub const EPS_CAP: f64 = 1.0 / 6.0;

/// Default bound on the length argument of [`prax_maxlen_univ`].
pub const DEFAULT_MAX_LENGTH: usize = 1_000_000;

/// Allowed gap between the closed-form tail and `1 - Σ masses`.
const RESIDUAL_AGREEMENT: f64 = 1e-9;

/// A tolerance strictly between 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps < 1.0 {
            Ok(Tolerance(eps))
        } else {
            Err(Error::InvalidInput(format!("tolerance must lie in (0,1), got {eps}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `⌈x⌉`, except that values within 1e-9 (relative) of an integer snap to
/// it, so that rounding noise in `1/eps²` does not add a trial.
pub fn ceil_snapped(x: f64) -> u64 {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.max(1.0) {
        r as u64
    } else {
        x.ceil() as u64
    }
}

/// `⌈1/eps²⌉`, the trial count of the uniform-sampling procedures.
pub fn trials_uniform(eps: Tolerance) -> u64 {
    ceil_snapped(1.0 / (eps.0 * eps.0))
}

/// `min(eps, EPS_CAP)`.
pub fn capped_tolerance(eps: Tolerance) -> f64 {
    eps.0.min(EPS_CAP)
}

/// `⌈5/(e - 5e²)²⌉` with `e = min(eps, EPS_CAP)`.
pub fn trials_tractable(eps: Tolerance) -> u64 {
    let e = capped_tolerance(eps);
    let gap = e - 5.0 * e * e;
    ceil_snapped(5.0 / (gap * gap))
}

/// Parameters of one run of [`prax_univ`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TractablePlan {
    pub eps_capped: f64,
    pub trials: u64,
    pub cutoff: u64,
}

pub fn tractable_plan(eps: Tolerance, l: &LengthDistribution) -> Result<TractablePlan> {
    let e = capped_tolerance(eps);
    // the trial bound needs (1/e)^{2-1} > 5
    assert!(1.0 / e > 5.0, "capped tolerance {e} must stay below 1/5");
    Ok(TractablePlan {
        eps_capped: e,
        trials: trials_tractable(eps),
        cutoff: l.maxlen(e * e)?,
    })
}

/// Result of a decision procedure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub verdict: bool,
    /// Planned number of trials.
    pub n: u64,
    /// Trials actually run; fewer than `n` after an early rejection.
    pub performed: u64,
    /// Length cutoff, when the procedure truncates the distribution.
    #[serde(rename = "M")]
    pub cutoff: Option<u64>,
    /// Absent for deterministic procedures.
    pub seed: Option<u64>,
    /// A word in the distribution's support that the automaton rejects.
    pub witness: Option<Word>,
}

/// `count` successes out of `trials` draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Estimate {
    pub count: u64,
    pub trials: u64,
}

impl Estimate {
    pub fn value(&self) -> f64 {
        self.count as f64 / self.trials as f64
    }
}

fn check_alphabets(a: &Nfa, found: u32) -> Result<()> {
    if a.alphabet_size() == found {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            expected: a.alphabet_size(),
            found,
        })
    }
}

fn check_trials(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("at least one trial is required".into()))
    } else {
        Ok(())
    }
}

/// Fraction of `n` sampled words accepted by `a`.
pub fn ui_estim<S: WordSampler>(sampler: &S, a: &Nfa, n: u64, rng: &mut RngStream) -> Result<Estimate> {
    check_alphabets(a, sampler.alphabet_size())?;
    check_trials(n)?;
    let count = (0..n)
        .filter(|_| a.accepts_unchecked(sampler.sample_word(rng).symbols()))
        .count() as u64;
    Ok(Estimate { count, trials: n })
}

/// Fraction of `n` draws from the truncation at `cutoff` that are either the
/// residual outcome or a word accepted by `a`.
pub fn ui_estim_ml(
    w: &WordDistribution,
    a: &Nfa,
    n: u64,
    cutoff: u64,
    rng: &mut RngStream,
) -> Result<Estimate> {
    check_alphabets(a, w.alphabet_size())?;
    check_trials(n)?;
    let sampler = AugmentedSampler::new(w, cutoff)?;
    let count = (0..n)
        .filter(|_| match sampler.sample(rng) {
            AugmentedSample::None => true,
            AugmentedSample::Word(x) => a.accepts_unchecked(x.symbols()),
        })
        .count() as u64;
    Ok(Estimate { count, trials: n })
}

/// Draws up to `trials` words and stops at the first one `a` rejects.
/// `draw` returning `None` counts as a pass.
fn first_rejection(
    a: &Nfa,
    trials: u64,
    cutoff: Option<u64>,
    rng: &mut RngStream,
    mut draw: impl FnMut(&mut RngStream) -> Option<Word>,
) -> EstimateReport {
    let seed = rng.seed();
    for performed in 1..=trials {
        if let Some(w) = draw(rng) {
            if !a.accepts_unchecked(w.symbols()) {
                return EstimateReport {
                    verdict: false,
                    n: trials,
                    performed,
                    cutoff,
                    seed: Some(seed),
                    witness: Some(w),
                };
            }
        }
    }
    EstimateReport {
        verdict: true,
        n: trials,
        performed: trials,
        cutoff,
        seed: Some(seed),
        witness: None,
    }
}

/// Tests `L(b) ⊆ L(a)` against words drawn uniformly from `L(b)`.
pub fn prax_adfa_subset_nfa(
    a: &Nfa,
    b: &AdfaCertificate,
    eps: Tolerance,
    rng: &mut RngStream,
) -> Result<EstimateReport> {
    check_alphabets(a, b.alphabet_size())?;
    let table = count_paths(b);
    // fail before sampling on an empty L(b)
    adfa_uselect(b, &table, &mut rng.clone())?;
    Ok(first_rejection(a, trials_uniform(eps), None, rng, |r| {
        Some(adfa_uselect(b, &table, r).expect("language is nonempty"))
    }))
}

/// Tests universality of `a` relative to the uniform distribution on `Σ^len`.
pub fn prax_uniform_length(
    a: &Nfa,
    len: usize,
    eps: Tolerance,
    rng: &mut RngStream,
) -> Result<EstimateReport> {
    let s = a.alphabet_size();
    Ok(first_rejection(a, trials_uniform(eps), None, rng, |r| {
        Some(uselect(s, len, r))
    }))
}

/// Block-NFA universality: uniform words of the block length.
pub fn prax_block_univ(a: &Nfa, eps: Tolerance, rng: &mut RngStream) -> Result<EstimateReport> {
    let len = certify_block(a)?.word_length();
    prax_uniform_length(a, len, eps, rng)
}

/// Universality relative to the uniform distribution on `Σ^{<=len}`.
pub fn prax_maxlen_univ(
    a: &Nfa,
    len: usize,
    eps: Tolerance,
    rng: &mut RngStream,
) -> Result<EstimateReport> {
    prax_maxlen_univ_bounded(a, len, eps, DEFAULT_MAX_LENGTH, rng)
}

/// [`prax_maxlen_univ`] with an explicit bound on `len`.
pub fn prax_maxlen_univ_bounded(
    a: &Nfa,
    len: usize,
    eps: Tolerance,
    bound: usize,
    rng: &mut RngStream,
) -> Result<EstimateReport> {
    if len > bound {
        return Err(Error::InvalidInput(format!(
            "length {len} exceeds the configured bound {bound}"
        )));
    }
    let sampler = UniformUpTo::new(a.alphabet_size(), len)?;
    Ok(first_rejection(a, trials_uniform(eps), Some(len as u64), rng, |r| {
        Some(sampler.sample_word(r))
    }))
}

/// Universality relative to the length-based distribution with length law `l`,
/// sampling from its truncation at `maxlen(l, eps'²)`.
pub fn prax_univ(
    a: &Nfa,
    eps: Tolerance,
    l: &LengthDistribution,
    rng: &mut RngStream,
) -> Result<EstimateReport> {
    let plan = tractable_plan(eps, l)?;
    let w = WordDistribution::length_based(l.clone(), a.alphabet_size())?;
    let sampler = AugmentedSampler::new(&w, plan.cutoff)?;
    let probs = sampler.table().probs();
    let summed = 1.0 - probs[..probs.len() - 1].iter().sum::<f64>();
    let residual = probs[probs.len() - 1];
    assert!(
        (summed - residual).abs() <= RESIDUAL_AGREEMENT,
        "closed-form tail {residual} disagrees with 1 - Σ masses = {summed}"
    );
    Ok(first_rejection(a, plan.trials, Some(plan.cutoff), rng, |r| {
        match sampler.sample(r) {
            AugmentedSample::Word(x) => Some(x),
            AugmentedSample::None => None,
        }
    }))
}

/// Deterministic test of `Σ^{<=M} ⊆ L(a)` for a unary `a`, with
/// `M = maxlen(l, eps)`. Stops early once the reachable state set repeats,
/// since every later length then revisits a set already checked.
pub fn pax_unary_univ(a: &Nfa, eps: Tolerance, l: &LengthDistribution) -> Result<EstimateReport> {
    if a.alphabet_size() != 1 {
        return Err(Error::InvalidInput(format!(
            "unary procedure needs alphabet size 1, got {}",
            a.alphabet_size()
        )));
    }
    let cutoff = l.maxlen(eps.value())?;
    let report = |verdict, witness| EstimateReport {
        verdict,
        n: cutoff + 1,
        performed: 0,
        cutoff: Some(cutoff),
        seed: None,
        witness,
    };
    let mut frontier: Vec<StateId> = a.start_states().to_vec();
    let mut seen: HashSet<Vec<StateId>> = HashSet::new();
    for len in 0..=cutoff {
        if !frontier.iter().any(|&q| a.is_final(q)) {
            return Ok(EstimateReport {
                performed: len + 1,
                ..report(false, Some(Word::repeat(0, len as usize)))
            });
        }
        if !seen.insert(frontier.clone()) {
            break;
        }
        let mut next: Vec<StateId> = frontier.iter().flat_map(|&p| a.successors(p, 0).iter().copied()).collect();
        next.sort_unstable();
        next.dedup();
        frontier = next;
    }
    Ok(EstimateReport {
        performed: seen.len() as u64,
        ..report(true, None)
    })
}

/// Outcome of an amplified run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmplifiedReport {
    /// The first `false` run, or the last run if all were `true`.
    pub report: EstimateReport,
    pub runs: u32,
}

/// Runs `run` up to `k` times, stopping at the first `false`.
pub fn amplify<F>(k: u32, mut run: F) -> Result<AmplifiedReport>
where
    F: FnMut() -> Result<EstimateReport>,
{
    if k == 0 {
        return Err(Error::InvalidInput("amplification needs k >= 1".into()));
    }
    let mut last = None;
    for i in 1..=k {
        let report = run()?;
        if !report.verdict {
            return Ok(AmplifiedReport { report, runs: i });
        }
        last = Some(report);
    }
    Ok(AmplifiedReport {
        report: last.expect("k >= 1"),
        runs: k,
    })
}

/// Word distribution used by [`prax_emptiness`].
#[derive(Debug, Clone, PartialEq)]
pub enum EmptinessMode {
    /// Uniform on `Σ^len`.
    Block(usize),
    /// Length-based with the given length law.
    Tractable(LengthDistribution),
}

/// Tests whether `L(d_1) ∩ .. ∩ L(d_k)` has probability at most `eps` by
/// testing the union of the complements for `(1 - eps)`-universality. A
/// `false` verdict's witness lies in the intersection.
pub fn prax_emptiness(
    ds: &[Dfa],
    eps: Tolerance,
    mode: &EmptinessMode,
    rng: &mut RngStream,
) -> Result<EstimateReport> {
    let complements: Vec<Dfa> = ds.iter().map(complement_dfa).collect();
    let union = union_nfa(&complements)?;
    match mode {
        EmptinessMode::Block(len) => prax_uniform_length(&union, *len, eps, rng),
        EmptinessMode::Tractable(l) => prax_univ(&union, eps, l, rng),
    }
}
