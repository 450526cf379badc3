//! Automaton representations: NFAs without empty-word transitions, DFAs as
//! validated NFAs, and certificates for acyclic DFAs and block NFAs.
//!
//! States are dense ids `0..Q`. The alphabet is always `{0, .., s-1}`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type StateId = usize;
pub type Symbol = u32;

/// A word over `{0, .., s-1}`. The empty word is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `n` copies of `symbol`.
    pub fn repeat(symbol: Symbol, n: usize) -> Self {
        Word(vec![symbol; n])
    }

    /// Parses a word written as decimal digits, e.g. `"0110"`.
    pub fn from_digits(digits: &str) -> Result<Self> {
        digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .ok_or_else(|| Error::InvalidInput(format!("'{c}' is not a digit symbol")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fails if some symbol is not below `alphabet_size`.
    pub fn check_alphabet(&self, alphabet_size: u32) -> Result<()> {
        match self.0.iter().find(|&&a| a >= alphabet_size) {
            Some(&symbol) => Err(Error::SymbolOutOfRange {
                symbol,
                alphabet_size,
            }),
            None => Ok(()),
        }
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

/// Digits concatenated when every symbol is below 10, dot-separated otherwise.
/// The empty word prints as `ε`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        if self.0.iter().all(|&a| a < 10) {
            for a in &self.0 {
                write!(f, "{a}")?;
            }
        } else {
            for (i, a) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(".")?;
                }
                write!(f, "{a}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A nondeterministic finite automaton with a set of start states.
///
/// Transitions are stored grouped by `(state, symbol)`, each target list
/// sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet_size: u32,
    num_states: usize,
    start: Vec<StateId>,
    finals: Vec<bool>,
    delta: Vec<Vec<StateId>>,
    num_transitions: usize,
}

impl Nfa {
    pub fn new<S, F, T>(
        alphabet_size: u32,
        num_states: usize,
        start: S,
        finals: F,
        transitions: T,
    ) -> Result<Self>
    where
        S: IntoIterator<Item = StateId>,
        F: IntoIterator<Item = StateId>,
        T: IntoIterator<Item = (StateId, Symbol, StateId)>,
    {
        if alphabet_size == 0 {
            return Err(Error::InvalidInput("alphabet size must be at least 1".into()));
        }
        let check_state = |q: StateId| {
            if q < num_states {
                Ok(q)
            } else {
                Err(Error::StateOutOfRange {
                    state: q,
                    states: num_states,
                })
            }
        };
        let mut start_states = start.into_iter().map(check_state).collect::<Result<Vec<_>>>()?;
        start_states.sort_unstable();
        start_states.dedup();

        let mut final_flags = vec![false; num_states];
        for q in finals {
            final_flags[check_state(q)?] = true;
        }

        let s = alphabet_size as usize;
        let mut delta = vec![Vec::new(); num_states * s];
        for (p, a, q) in transitions {
            check_state(p)?;
            check_state(q)?;
            if a >= alphabet_size {
                return Err(Error::SymbolOutOfRange {
                    symbol: a,
                    alphabet_size,
                });
            }
            delta[p * s + a as usize].push(q);
        }
        let mut num_transitions = 0;
        for targets in &mut delta {
            targets.sort_unstable();
            targets.dedup();
            num_transitions += targets.len();
        }

        Ok(Nfa {
            alphabet_size,
            num_states,
            start: start_states,
            finals: final_flags,
            delta,
            num_transitions,
        })
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn num_transitions(&self) -> usize {
        self.num_transitions
    }

    /// Number of states plus number of transitions.
    pub fn size(&self) -> usize {
        self.num_states + self.num_transitions
    }

    pub fn start_states(&self) -> &[StateId] {
        &self.start
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn final_states(&self) -> Vec<StateId> {
        (0..self.num_states).filter(|&q| self.finals[q]).collect()
    }

    pub fn successors(&self, q: StateId, a: Symbol) -> &[StateId] {
        &self.delta[q * self.alphabet_size as usize + a as usize]
    }

    /// All transitions `(from, symbol, to)` in lexicographic order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Symbol, StateId)> + '_ {
        let s = self.alphabet_size as usize;
        self.delta.iter().enumerate().flat_map(move |(i, targets)| {
            let (p, a) = (i / s, (i % s) as Symbol);
            targets.iter().map(move |&q| (p, a, q))
        })
    }

    /// Incoming transitions per state, as `(from, symbol)` pairs.
    pub fn predecessors(&self) -> Vec<Vec<(StateId, Symbol)>> {
        let mut preds = vec![Vec::new(); self.num_states];
        for (p, a, q) in self.transitions() {
            preds[q].push((p, a));
        }
        preds
    }

    /// Membership by frontier-set simulation, `O(|w| * size)`.
    pub fn accepts(&self, w: &Word) -> Result<bool> {
        w.check_alphabet(self.alphabet_size)?;
        Ok(self.accepts_unchecked(w.symbols()))
    }

    pub(crate) fn accepts_unchecked(&self, w: &[Symbol]) -> bool {
        let mut in_frontier = vec![false; self.num_states];
        let mut frontier: Vec<StateId> = self.start.clone();
        for &q in &frontier {
            in_frontier[q] = true;
        }
        let mut next = Vec::new();
        for &a in w {
            for &q in &frontier {
                in_frontier[q] = false;
            }
            next.clear();
            for &p in &frontier {
                for &q in self.successors(p, a) {
                    if !in_frontier[q] {
                        in_frontier[q] = true;
                        next.push(q);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            if frontier.is_empty() {
                return false;
            }
        }
        frontier.iter().any(|&q| self.finals[q])
    }

    fn forward_reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states];
        let mut stack: Vec<StateId> = self.start.clone();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(p) = stack.pop() {
            for a in 0..self.alphabet_size {
                for &q in self.successors(p, a) {
                    if !seen[q] {
                        seen[q] = true;
                        stack.push(q);
                    }
                }
            }
        }
        seen
    }

    /// Shortest distance from each state to a final state, `None` if no final
    /// state is reachable.
    fn distance_to_final(&self) -> Vec<Option<usize>> {
        let preds = self.predecessors();
        let mut dist = vec![None; self.num_states];
        let mut queue = VecDeque::new();
        for q in 0..self.num_states {
            if self.finals[q] {
                dist[q] = Some(0);
                queue.push_back(q);
            }
        }
        while let Some(q) = queue.pop_front() {
            let d = dist[q].unwrap();
            for &(p, _) in &preds[q] {
                if dist[p].is_none() {
                    dist[p] = Some(d + 1);
                    queue.push_back(p);
                }
            }
        }
        dist
    }
}

/// A DFA: an [`Nfa`] with exactly one start state and at most one transition
/// per `(state, symbol)`. May be incomplete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa(Nfa);

impl Dfa {
    pub fn new<F, T>(
        alphabet_size: u32,
        num_states: usize,
        start: StateId,
        finals: F,
        transitions: T,
    ) -> Result<Self>
    where
        F: IntoIterator<Item = StateId>,
        T: IntoIterator<Item = (StateId, Symbol, StateId)>,
    {
        Dfa::try_from(Nfa::new(alphabet_size, num_states, [start], finals, transitions)?)
    }

    pub fn start(&self) -> StateId {
        self.0.start[0]
    }

    pub fn next(&self, q: StateId, a: Symbol) -> Option<StateId> {
        self.0.successors(q, a).first().copied()
    }

    pub fn as_nfa(&self) -> &Nfa {
        &self.0
    }

    pub fn into_nfa(self) -> Nfa {
        self.0
    }

    pub fn alphabet_size(&self) -> u32 {
        self.0.alphabet_size
    }

    pub fn num_states(&self) -> usize {
        self.0.num_states
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.0.finals[q]
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        self.0.accepts(w)
    }

    pub fn is_complete(&self) -> bool {
        self.0.delta.iter().all(|t| t.len() == 1)
    }

    /// One accepting state with a loop on every symbol: `Σ*`.
    pub fn universal(alphabet_size: u32) -> Dfa {
        Dfa::new(alphabet_size, 1, 0, [0], (0..alphabet_size).map(|a| (0, a, 0)))
            .expect("alphabet size is at least 1")
    }

    /// A chain of `len + 1` states accepting exactly `Σ^len`.
    pub fn exact_length(alphabet_size: u32, len: usize) -> Dfa {
        let transitions = (0..len).flat_map(|i| (0..alphabet_size).map(move |a| (i, a, i + 1)));
        Dfa::new(alphabet_size, len + 1, 0, [len], transitions).expect("alphabet size is at least 1")
    }
}

impl TryFrom<Nfa> for Dfa {
    type Error = Error;

    fn try_from(nfa: Nfa) -> Result<Self> {
        if nfa.start.len() != 1 {
            return Err(Error::NotDeterministic(format!(
                "{} start states",
                nfa.start.len()
            )));
        }
        let s = nfa.alphabet_size as usize;
        if let Some(i) = nfa.delta.iter().position(|t| t.len() > 1) {
            return Err(Error::NotDeterministic(format!(
                "state {} has {} transitions on symbol {}",
                i / s,
                nfa.delta[i].len(),
                i % s
            )));
        }
        Ok(Dfa(nfa))
    }
}

/// A DFA together with a topological order of its reachable states. Every
/// reachable transition goes forward in that order, so the language is finite.
#[derive(Debug, Clone)]
pub struct AdfaCertificate {
    dfa: Dfa,
    topo_order: Vec<StateId>,
    // incoming transitions restricted to reachable states, sorted
    predecessors: Vec<Vec<(StateId, Symbol)>>,
}

impl AdfaCertificate {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn topo_order(&self) -> &[StateId] {
        &self.topo_order
    }

    pub fn predecessors(&self, q: StateId) -> &[(StateId, Symbol)] {
        &self.predecessors[q]
    }

    pub fn alphabet_size(&self) -> u32 {
        self.dfa.alphabet_size()
    }

    pub fn is_reachable(&self, q: StateId) -> bool {
        self.topo_order.contains(&q)
    }
}

/// Builds a topological order of the states reachable from the start state.
/// Cycles among unreachable states are ignored.
pub fn certify_acyclic(d: &Dfa) -> Result<AdfaCertificate> {
    let nfa = d.as_nfa();
    let reachable = nfa.forward_reachable();
    let mut indegree = vec![0usize; nfa.num_states];
    let mut predecessors = vec![Vec::new(); nfa.num_states];
    for (p, a, q) in nfa.transitions() {
        if reachable[p] {
            indegree[q] += 1;
            predecessors[q].push((p, a));
        }
    }
    for preds in &mut predecessors {
        preds.sort_unstable_by_key(|&(p, a)| (a, p));
    }

    let mut order = Vec::new();
    let mut queue: VecDeque<StateId> = (0..nfa.num_states)
        .filter(|&q| reachable[q] && indegree[q] == 0)
        .collect();
    while let Some(p) = queue.pop_front() {
        order.push(p);
        for a in 0..nfa.alphabet_size {
            if let Some(q) = d.next(p, a) {
                indegree[q] -= 1;
                if indegree[q] == 0 {
                    queue.push_back(q);
                }
            }
        }
    }
    let reachable_count = reachable.iter().filter(|&&r| r).count();
    if order.len() < reachable_count {
        let stuck = (0..nfa.num_states)
            .find(|&q| reachable[q] && indegree[q] > 0)
            .expect("some reachable state keeps a positive in-degree");
        return Err(Error::NotAcyclic(stuck));
    }
    Ok(AdfaCertificate {
        dfa: d.clone(),
        topo_order: order,
        predecessors,
    })
}

/// A trimmed NFA all of whose accepted words have the same length.
#[derive(Debug, Clone)]
pub struct BlockCertificate {
    nfa: Nfa,
    word_length: usize,
    level: Vec<usize>,
}

impl BlockCertificate {
    /// The trimmed automaton: every state lies on an accepting path.
    pub fn nfa(&self) -> &Nfa {
        &self.nfa
    }

    pub fn word_length(&self) -> usize {
        self.word_length
    }

    /// Depth of state `q` of the trimmed automaton.
    pub fn level(&self, q: StateId) -> usize {
        self.level[q]
    }
}

/// Trims `a` and assigns BFS levels; succeeds iff all accepted words share
/// one length.
pub fn certify_block(a: &Nfa) -> Result<BlockCertificate> {
    let forward = a.forward_reachable();
    let to_final = a.distance_to_final();
    let useful: Vec<bool> = (0..a.num_states)
        .map(|q| forward[q] && to_final[q].is_some())
        .collect();
    if !a.start.iter().any(|&q| useful[q]) {
        return Err(Error::EmptyLanguage);
    }

    let mut relabel = vec![usize::MAX; a.num_states];
    let mut kept = Vec::new();
    for q in 0..a.num_states {
        if useful[q] {
            relabel[q] = kept.len();
            kept.push(q);
        }
    }

    let mut level: Vec<Option<usize>> = vec![None; a.num_states];
    let mut queue = VecDeque::new();
    for &q in &a.start {
        if useful[q] {
            level[q] = Some(0);
            queue.push_back(q);
        }
    }
    while let Some(p) = queue.pop_front() {
        let lp = level[p].unwrap();
        for sym in 0..a.alphabet_size {
            for &q in a.successors(p, sym) {
                if !useful[q] {
                    continue;
                }
                match level[q] {
                    None => {
                        level[q] = Some(lp + 1);
                        queue.push_back(q);
                    }
                    Some(lq) if lq != lp + 1 => {
                        let r = to_final[q].unwrap();
                        return Err(Error::NotBlock(lq + r, lp + 1 + r));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut word_length = None;
    for &q in &kept {
        if a.finals[q] {
            let lq = level[q].unwrap();
            match word_length {
                None => word_length = Some(lq),
                Some(l) if l != lq => return Err(Error::NotBlock(l, lq)),
                Some(_) => {}
            }
        }
    }

    let nfa = Nfa::new(
        a.alphabet_size,
        kept.len(),
        a.start.iter().filter(|&&q| useful[q]).map(|&q| relabel[q]),
        kept.iter().filter(|&&q| a.finals[q]).map(|&q| relabel[q]),
        a.transitions()
            .filter(|&(p, _, q)| useful[p] && useful[q])
            .map(|(p, sym, q)| (relabel[p], sym, relabel[q])),
    )?;
    Ok(BlockCertificate {
        nfa,
        word_length: word_length.expect("a useful start implies a useful final"),
        level: kept.iter().map(|&q| level[q].unwrap()).collect(),
    })
}

/// DFA for `Σ* \ L(d)`: completes `d` with a sink state if needed, then flips
/// the final states.
pub fn complement_dfa(d: &Dfa) -> Dfa {
    let nfa = d.as_nfa();
    let complete = d.is_complete();
    let n = nfa.num_states + usize::from(!complete);
    let sink = nfa.num_states;
    let mut transitions: Vec<_> = nfa.transitions().collect();
    if !complete {
        for p in 0..n {
            for a in 0..nfa.alphabet_size {
                if p == sink || d.next(p, a).is_none() {
                    transitions.push((p, a, sink));
                }
            }
        }
    }
    let finals = (0..n).filter(|&q| q == sink && !complete || q < nfa.num_states && !nfa.finals[q]);
    Dfa::new(nfa.alphabet_size, n, d.start(), finals, transitions)
        .expect("completion of a valid DFA is a valid DFA")
}

/// NFA for the union of the DFAs' languages: disjoint copies with the union
/// of their start states. Linear time, no empty-word transitions.
pub fn union_nfa(ds: &[Dfa]) -> Result<Nfa> {
    let first = ds
        .first()
        .ok_or_else(|| Error::InvalidInput("union of an empty list of DFAs".into()))?;
    let s = first.alphabet_size();
    let mut offset = 0;
    let mut start = Vec::new();
    let mut finals = Vec::new();
    let mut transitions = Vec::new();
    for d in ds {
        if d.alphabet_size() != s {
            return Err(Error::AlphabetMismatch {
                expected: s,
                found: d.alphabet_size(),
            });
        }
        let nfa = d.as_nfa();
        start.push(offset + d.start());
        finals.extend(nfa.final_states().into_iter().map(|q| offset + q));
        transitions.extend(nfa.transitions().map(|(p, a, q)| (offset + p, a, offset + q)));
        offset += nfa.num_states;
    }
    Nfa::new(s, offset, start, finals, transitions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::all_words;

    fn w(digits: &str) -> Word {
        Word::from_digits(digits).unwrap()
    }

    /// Depth-first path search; independent of the frontier simulation.
    fn accepts_by_paths(a: &Nfa, word: &[Symbol]) -> bool {
        fn go(a: &Nfa, q: StateId, rest: &[Symbol]) -> bool {
            match rest.split_first() {
                None => a.is_final(q),
                Some((&x, tail)) => a.successors(q, x).iter().any(|&r| go(a, r, tail)),
            }
        }
        a.start_states().iter().any(|&q| go(a, q, word))
    }

    fn zero_star_one() -> Nfa {
        Nfa::new(2, 2, [0], [1], [(0, 0, 0), (0, 1, 1)]).unwrap()
    }

    fn all_of_length(s: u32, len: usize) -> Nfa {
        let transitions = (0..len).flat_map(|i| (0..s).map(move |a| (i, a, i + 1)));
        Nfa::new(s, len + 1, [0], [len], transitions).unwrap()
    }

    #[test]
    fn single_state_accepts_empty_word() {
        let a = Nfa::new(2, 1, [0], [0], []).unwrap();
        assert!(a.accepts(&Word::empty()).unwrap());
        assert!(!a.accepts(&w("0")).unwrap());
    }

    #[test]
    fn zero_star_one_membership() {
        let a = zero_star_one();
        assert!(a.accepts(&w("001")).unwrap());
        assert!(a.accepts(&w("1")).unwrap());
        assert!(!a.accepts(&w("010")).unwrap());
    }

    /// Σ₂³ \ {111} as 0ΣΣ ∪ 10Σ ∪ 110.
    fn length_three_minus_111() -> Nfa {
        Nfa::new(
            2,
            6,
            [0],
            [3],
            [
                (0, 0, 1),
                (1, 0, 2),
                (1, 1, 2),
                (2, 0, 3),
                (2, 1, 3),
                (0, 1, 4),
                (4, 0, 2),
                (4, 1, 5),
                (5, 0, 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn length_three_minus_111_agrees_with_path_search() {
        let a = length_three_minus_111();
        let mut accepted = 0;
        for word in all_words(2, 3) {
            let by_paths = accepts_by_paths(&a, word.symbols());
            assert_eq!(a.accepts(&word).unwrap(), by_paths);
            accepted += usize::from(by_paths);
        }
        assert_eq!(accepted, 7);
        assert!(!a.accepts(&w("111")).unwrap());
    }

    #[test]
    fn membership_rejects_out_of_range_symbol() {
        let a = zero_star_one();
        assert!(matches!(
            a.accepts(&w("02")),
            Err(Error::SymbolOutOfRange { symbol: 2, .. })
        ));
    }

    #[test]
    fn construction_validates_ids() {
        assert!(matches!(
            Nfa::new(2, 2, [0], [5], []),
            Err(Error::StateOutOfRange { state: 5, .. })
        ));
        assert!(matches!(
            Nfa::new(2, 2, [0], [1], [(0, 3, 1)]),
            Err(Error::SymbolOutOfRange { .. })
        ));
        assert!(Nfa::new(0, 1, [0], [0], []).is_err());
    }

    #[test]
    fn size_counts_states_and_transitions() {
        let a = Nfa::new(2, 2, [0], [1], [(0, 0, 1), (0, 0, 1), (0, 1, 1)]).unwrap();
        assert_eq!(a.num_transitions(), 2);
        assert_eq!(a.size(), 4);
    }

    #[test]
    fn dfa_rejects_nondeterminism() {
        let a = Nfa::new(2, 2, [0], [1], [(0, 0, 0), (0, 0, 1)]).unwrap();
        assert!(matches!(Dfa::try_from(a), Err(Error::NotDeterministic(_))));
        let b = Nfa::new(2, 2, [0, 1], [1], []).unwrap();
        assert!(Dfa::try_from(b).is_err());
    }

    #[test]
    fn chain_is_acyclic() {
        let d = Dfa::new(2, 3, 0, [2], [(0, 0, 1), (1, 1, 2)]).unwrap();
        let cert = certify_acyclic(&d).unwrap();
        assert_eq!(cert.topo_order(), &[0, 1, 2]);
    }

    #[test]
    fn reachable_self_loop_is_cyclic() {
        let d = Dfa::new(2, 2, 0, [1], [(0, 0, 1), (1, 1, 1)]).unwrap();
        assert!(matches!(certify_acyclic(&d), Err(Error::NotAcyclic(1))));
    }

    #[test]
    fn unreachable_cycle_is_ignored() {
        let d = Dfa::new(2, 4, 0, [1], [(0, 0, 1), (2, 0, 3), (3, 0, 2), (3, 1, 1)]).unwrap();
        let cert = certify_acyclic(&d).unwrap();
        assert_eq!(cert.topo_order(), &[0, 1]);
        // incoming edges from unreachable states are not recorded
        assert_eq!(cert.predecessors(1), &[(0, 0)]);
    }

    #[test]
    fn block_of_all_length_two_words() {
        let cert = certify_block(&all_of_length(2, 2)).unwrap();
        assert_eq!(cert.word_length(), 2);
        assert_eq!(cert.level(0), 0);
        assert_eq!(cert.level(2), 2);
    }

    #[test]
    fn zero_and_double_zero_is_not_block() {
        let a = Nfa::new(2, 3, [0], [1, 2], [(0, 0, 1), (1, 0, 2)]).unwrap();
        assert!(matches!(certify_block(&a), Err(Error::NotBlock(_, _))));
    }

    #[test]
    fn reachable_cycle_is_not_block() {
        let a = Nfa::new(2, 2, [0], [1], [(0, 0, 1), (1, 0, 0)]).unwrap();
        assert!(matches!(certify_block(&a), Err(Error::NotBlock(1, 3))));
    }

    #[test]
    fn dead_states_do_not_break_blocks() {
        // state 3 is a dead end reachable at two depths
        let a = Nfa::new(
            2,
            4,
            [0],
            [2],
            [(0, 0, 1), (1, 1, 2), (0, 1, 3), (1, 0, 3)],
        )
        .unwrap();
        let cert = certify_block(&a).unwrap();
        assert_eq!(cert.word_length(), 2);
        assert_eq!(cert.nfa().num_states(), 3);
    }

    #[test]
    fn empty_language_is_reported() {
        let a = Nfa::new(2, 2, [0], [], [(0, 0, 1)]).unwrap();
        assert!(matches!(certify_block(&a), Err(Error::EmptyLanguage)));
    }

    #[test]
    fn complement_of_universal_is_empty() {
        let d = Dfa::new(2, 1, 0, [0], [(0, 0, 0), (0, 1, 0)]).unwrap();
        let c = complement_dfa(&d);
        for n in 0..=5 {
            assert!(all_words(2, n).all(|x| !c.accepts(&x).unwrap()));
        }
    }

    #[test]
    fn complement_of_zero_prefix() {
        // 0Σ* over Σ₂, incomplete
        let d = Dfa::new(2, 2, 0, [1], [(0, 0, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
        let c = complement_dfa(&d);
        assert!(c.is_complete());
        assert!(c.accepts(&Word::empty()).unwrap());
        assert!(c.accepts(&w("1")).unwrap());
        assert!(c.accepts(&w("10")).unwrap());
        assert!(!c.accepts(&w("0")).unwrap());
        assert!(!c.accepts(&w("01")).unwrap());
    }

    #[test]
    fn union_of_zero_and_one_prefixes_is_sigma_plus() {
        let zero = Dfa::new(2, 2, 0, [1], [(0, 0, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
        let one = Dfa::new(2, 2, 0, [1], [(0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap();
        let u = union_nfa(&[zero, one]).unwrap();
        assert_eq!(u.num_states(), 4);
        assert!(!u.accepts(&Word::empty()).unwrap());
        for n in 1..=5 {
            assert!(all_words(2, n).all(|x| u.accepts(&x).unwrap()));
        }
    }

    #[test]
    fn union_rejects_mixed_alphabets() {
        let a = Dfa::new(2, 1, 0, [0], []).unwrap();
        let b = Dfa::new(3, 1, 0, [0], []).unwrap();
        assert!(matches!(
            union_nfa(&[a, b]),
            Err(Error::AlphabetMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn word_display() {
        assert_eq!(w("0110").to_string(), "0110");
        assert_eq!(Word::empty().to_string(), "ε");
        assert_eq!(Word::new(vec![1, 12]).to_string(), "1.12");
    }
}
