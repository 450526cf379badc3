//! Reduction from binary block-NFA universality to the threshold problem
//! "does the NFA accept at least a `δ` fraction of the words of its block
//! length?".
//!
//! For a block NFA `b` of length `ℓ` and rational `δ ∈ (0,1)` the output
//! accepts `F · L(b)` where `F` is a set of `1 + m_k` words of length `k`, and
//! `|L(b)| = 2^ℓ` iff `|L(out)| ≥ 2^{k+ℓ} δ`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::automata::{BlockCertificate, Nfa, StateId, Symbol};
use crate::error::{Error, Result};

/// Default search bound for the first 1-bit of `δ`.
pub const DEFAULT_BIT_BOUND: usize = 4096;

/// A rational `δ = num/den ∈ (0,1)` in lowest terms, read as a binary
/// expansion `0.b_1 b_2 ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaBits {
    num: BigUint,
    den: BigUint,
}

impl DeltaBits {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if num.is_zero() || num >= den {
            return Err(Error::InvalidInput(format!("delta {num}/{den} is not in (0,1)")));
        }
        let g = num.gcd(&den);
        Ok(DeltaBits {
            num: num / &g,
            den: den / g,
        })
    }

    pub fn from_u64(num: u64, den: u64) -> Result<Self> {
        DeltaBits::new(num.into(), den.into())
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    /// Bits `b_1, b_2, ...` by repeated doubling of the fractional part.
    pub fn bits(&self) -> impl Iterator<Item = u8> + '_ {
        let mut rem = self.num.clone();
        std::iter::from_fn(move || {
            rem <<= 1u32;
            if rem >= self.den {
                rem -= &self.den;
                Some(1)
            } else {
                Some(0)
            }
        })
    }

    /// `b_p` for `p >= 1`.
    pub fn bit(&self, p: usize) -> u8 {
        assert!(p >= 1, "bit positions start at 1");
        self.bits().nth(p - 1).expect("the expansion is infinite")
    }

    /// `m_p = b_1 2^{p-1} + ... + b_p = ⌊δ 2^p⌋`.
    pub fn m(&self, p: usize) -> BigUint {
        (&self.num << p) / &self.den
    }

    /// `δ = m / 2^j` for some integers `m, j`.
    pub fn is_dyadic(&self) -> bool {
        let d = &self.den;
        (d & (d - 1u32)).is_zero()
    }

    /// For dyadic `δ = m/2^j` in lowest terms, `(m, j)`.
    pub fn dyadic_parts(&self) -> Option<(BigUint, usize)> {
        self.is_dyadic()
            .then(|| (self.num.clone(), (self.den.bits() - 1) as usize))
    }

    /// `count / 2^n ≥ δ`, exactly.
    pub fn meets_threshold(&self, count: &BigUint, n: usize) -> bool {
        count * &self.den >= &self.num << n
    }
}

impl fmt::Display for DeltaBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for DeltaBits {
    type Err = Error;

    /// Parses `P/Q`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("delta `{s}` is not of the form P/Q"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: BigUint = p.trim().parse().map_err(|_| bad())?;
        let q: BigUint = q.trim().parse().map_err(|_| bad())?;
        DeltaBits::new(p, q)
    }
}

/// Smallest `p` with `b_p = 1`, searching up to `bound` positions.
pub fn first_one_position(delta: &DeltaBits, bound: usize) -> Result<usize> {
    delta
        .bits()
        .take(bound)
        .position(|b| b == 1)
        .map(|i| i + 1)
        .ok_or_else(|| Error::InvalidInput(format!("no 1-bit of delta {delta} within {bound} positions")))
}

#[derive(Clone, Copy)]
enum Label {
    Bit(Symbol),
    Any,
}

/// A block NFA over `{0,1}` accepting exactly the `1 + m` words `w` of length
/// `k` with `int(w) ≤ m` (most significant symbol first), with one start
/// state `0` and one final state, the last state.
///
/// Words below `m` are grouped by the highest position where they differ
/// from `bin(m)`: for each 1-bit of `m` one straight-line branch copies the
/// higher bits of `m`, reads 0, then anything. A final branch spells `bin(m)`
/// itself. Branches share only the start and final states, so the size is at
/// most `(k + 1)(3k + 1)`.
pub fn build_mk_bnfa(m: &BigUint, k: usize) -> Result<Nfa> {
    if k == 0 {
        return Err(Error::InvalidInput("gadget length k must be at least 1".into()));
    }
    if m.bits() as usize > k {
        return Err(Error::InvalidInput(format!("1 + {m} words do not fit in length {k}")));
    }
    // position i in 0..k carries weight k-1-i
    let bit_at = |i: usize| -> Symbol { u32::from(m.bit((k - 1 - i) as u64)) };
    let mut branches: Vec<Vec<Label>> = Vec::new();
    for c in 0..k {
        if m.bit(c as u64) {
            let split = k - 1 - c;
            branches.push(
                (0..k)
                    .map(|i| match i.cmp(&split) {
                        std::cmp::Ordering::Less => Label::Bit(bit_at(i)),
                        std::cmp::Ordering::Equal => Label::Bit(0),
                        std::cmp::Ordering::Greater => Label::Any,
                    })
                    .collect(),
            );
        }
    }
    branches.push((0..k).map(|i| Label::Bit(bit_at(i))).collect());

    let inner = k - 1;
    let num_states = 2 + branches.len() * inner;
    let final_state = num_states - 1;
    let mut transitions: Vec<(StateId, Symbol, StateId)> = Vec::new();
    for (b, labels) in branches.iter().enumerate() {
        // states of this branch: 0, 1 + b*inner .. 1 + b*inner + inner - 1, final
        let state = |i: usize| -> StateId {
            if i == 0 {
                0
            } else if i == k {
                final_state
            } else {
                1 + b * inner + (i - 1)
            }
        };
        for (i, label) in labels.iter().enumerate() {
            let symbols: &[Symbol] = match label {
                Label::Bit(0) => &[0],
                Label::Bit(_) => &[1],
                Label::Any => &[0, 1],
            };
            for &a in symbols {
                transitions.push((state(i), a, state(i + 1)));
            }
        }
    }
    Nfa::new(2, num_states, [0], [final_state], transitions)
}

/// The reduction's output and the quantities that determine it.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub nfa: Nfa,
    /// Length of the gadget words.
    pub k: usize,
    /// Block length of the output, `k + ℓ`.
    pub n: usize,
    /// The gadget accepts `1 + m_k` words.
    pub m_k: BigUint,
    /// Position of the first 1-bit of `δ`; absent for the dyadic variant.
    pub p1: Option<usize>,
}

fn check_binary(b: &BlockCertificate) -> Result<usize> {
    if b.nfa().alphabet_size() != 2 {
        return Err(Error::InvalidInput(format!(
            "reduction needs a binary alphabet, got size {}",
            b.nfa().alphabet_size()
        )));
    }
    let len = b.word_length();
    if len == 0 {
        return Err(Error::InvalidInput("block length must be at least 1".into()));
    }
    Ok(len)
}

/// Automaton for `F · L(b)`: transitions into the gadget's final state are
/// redirected to every start state of `b`. Inputs are not modified.
fn concatenate(gadget: &Nfa, b: &Nfa) -> Result<Nfa> {
    let f = gadget.num_states() - 1;
    let offset = f;
    let mut transitions = Vec::new();
    for (p, a, q) in gadget.transitions() {
        if q == f {
            transitions.extend(b.start_states().iter().map(|&s| (p, a, offset + s)));
        } else {
            transitions.push((p, a, q));
        }
    }
    transitions.extend(b.transitions().map(|(p, a, q)| (offset + p, a, offset + q)));
    let finals = b.final_states().into_iter().map(|q| offset + q);
    Nfa::new(2, offset + b.num_states(), [0], finals, transitions)
}

/// The general reduction, valid for every rational `δ`: `k = p_1 + ℓ`,
/// `m_k = ⌊δ 2^k⌋`, output accepting `(1 + m_k) |L(b)|` words of length `k + ℓ`.
pub fn reduce_to_threshold(b: &BlockCertificate, delta: &DeltaBits) -> Result<Reduction> {
    let len = check_binary(b)?;
    let p1 = first_one_position(delta, DEFAULT_BIT_BOUND)?;
    let k = p1 + len;
    let m_k = delta.m(k);
    // b_{p1} = 1 gives m_k ≥ 2^{k - p1} = 2^ℓ
    assert!(m_k >= BigUint::one() << len && m_k.bits() as usize <= k);
    let gadget = build_mk_bnfa(&m_k, k)?;
    Ok(Reduction {
        nfa: concatenate(&gadget, b.nfa())?,
        k,
        n: k + len,
        m_k,
        p1: Some(p1),
    })
}

/// The variant for dyadic `δ = m/2^j`: the gadget has exactly `m` words of
/// length `j`, so `|L(out)| = m |L(b)|` and the threshold `2^n δ` is met iff
/// `b` is universal.
pub fn reduce_to_threshold_dyadic(b: &BlockCertificate, delta: &DeltaBits) -> Result<Reduction> {
    let len = check_binary(b)?;
    let (m, k) = delta
        .dyadic_parts()
        .ok_or_else(|| Error::InvalidInput(format!("delta {delta} is not dyadic")))?;
    let m_k = m - 1u32;
    let gadget = build_mk_bnfa(&m_k, k)?;
    Ok(Reduction {
        nfa: concatenate(&gadget, b.nfa())?,
        k,
        n: k + len,
        m_k,
        p1: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::certify_block;
    use crate::oracle::{all_words, count_per_length};
    use crate::sampling::RngStream;
    use rand::Rng;

    fn accepted(a: &Nfa, len: usize) -> Vec<String> {
        all_words(2, len)
            .filter(|w| a.accepts(w).unwrap())
            .map(|w| w.to_string())
            .collect()
    }

    /// Oracle: binary expansion by exact floating doubling (exact for dyadic
    /// inputs with small denominators) or long division on integers.
    fn bits_by_long_division(num: u64, den: u64, count: usize) -> Vec<u8> {
        let mut r = num;
        (0..count)
            .map(|_| {
                r *= 2;
                let b = (r / den) as u8;
                r %= den;
                b
            })
            .collect()
    }

    #[test]
    fn bit_extraction() {
        let third = DeltaBits::from_u64(1, 3).unwrap();
        assert_eq!(third.bits().take(6).collect::<Vec<_>>(), [0, 1, 0, 1, 0, 1]);
        for (p, q) in [(5, 16), (1, 3), (2, 7), (11, 13)] {
            let d = DeltaBits::from_u64(p, q).unwrap();
            let want = bits_by_long_division(p, q, 40);
            assert_eq!(d.bits().take(40).collect::<Vec<_>>(), want);
            for i in 1..=40 {
                assert_eq!(d.bit(i), want[i - 1]);
                let m: u64 = want[..i].iter().fold(0, |acc, &b| 2 * acc + b as u64);
                assert_eq!(d.m(i), BigUint::from(m));
            }
        }
    }

    #[test]
    fn first_one_positions() {
        let pos = |p, q| first_one_position(&DeltaBits::from_u64(p, q).unwrap(), 64).unwrap();
        assert_eq!(pos(1, 2), 1);
        assert_eq!(pos(1, 3), 2);
        assert_eq!(pos(5, 16), 2);
        assert_eq!(pos(1, 1024), 10);
        assert!(first_one_position(&DeltaBits::from_u64(1, 1024).unwrap(), 9).is_err());
    }

    #[test]
    fn m_brackets_non_dyadic_delta() {
        for (p, q) in [(1u64, 3u64), (2, 7), (5, 11)] {
            let d = DeltaBits::from_u64(p, q).unwrap();
            let p1 = first_one_position(&d, 64).unwrap();
            let mut prev = BigUint::zero();
            for i in 1..30 {
                let m = d.m(i);
                // m_i / 2^i < δ < (1 + m_i) / 2^i
                assert!(&m * q < BigUint::from(p) << i);
                assert!((&m + 1u32) * q > BigUint::from(p) << i);
                if i > p1 {
                    assert!(m > prev);
                }
                prev = m;
            }
        }
    }

    #[test]
    fn delta_parsing() {
        let d: DeltaBits = "2/4".parse().unwrap();
        assert_eq!(d, DeltaBits::from_u64(1, 2).unwrap());
        assert_eq!(d.to_string(), "1/2");
        assert!(d.is_dyadic());
        assert!(!DeltaBits::from_u64(1, 3).unwrap().is_dyadic());
        for bad in ["1", "0/3", "3/3", "4/3", "a/b", "1/0"] {
            assert!(bad.parse::<DeltaBits>().is_err(), "{bad}");
        }
    }

    #[test]
    fn gadget_examples() {
        let zero = build_mk_bnfa(&BigUint::zero(), 3).unwrap();
        assert_eq!(accepted(&zero, 3), ["000"]);
        let five = build_mk_bnfa(&BigUint::from(5u32), 3).unwrap();
        assert_eq!(accepted(&five, 3), ["000", "001", "010", "011", "100", "101"]);
        let full = build_mk_bnfa(&BigUint::from(7u32), 3).unwrap();
        assert_eq!(accepted(&full, 3).len(), 8);
        assert!(build_mk_bnfa(&BigUint::from(8u32), 3).is_err());
        assert!(build_mk_bnfa(&BigUint::zero(), 0).is_err());
        for a in [&zero, &five, &full] {
            assert_eq!(a.final_states().len(), 1);
            assert_eq!(certify_block(a).unwrap().word_length(), 3);
        }
    }

    #[test]
    fn gadget_counts_on_random_parameters() {
        let mut rng = RngStream::new(31);
        for _ in 0..50 {
            let k = rng.random_range(1..=10usize);
            let m = BigUint::from(rng.random_range(0..1u64 << k));
            let a = build_mk_bnfa(&m, k).unwrap();
            let words = accepted(&a, k);
            assert_eq!(BigUint::from(words.len()), &m + 1u32);
            // exactly the words numerically at most m
            for w in &words {
                assert!(BigUint::parse_bytes(w.as_bytes(), 2).unwrap() <= m);
            }
            assert_eq!(count_per_length(&a, k).unwrap(), &m + 1u32);
        }
    }

    #[test]
    fn gadget_size_is_quadratic() {
        for k in 1..=12 {
            let m = (BigUint::one() << k) - 1u32;
            let size = build_mk_bnfa(&m, k).unwrap().size();
            assert!(size <= 4 * k * k, "k = {k}: size {size}");
        }
    }

    fn universal_block(len: usize) -> BlockCertificate {
        certify_block(&crate::automata::Dfa::exact_length(2, len).into_nfa()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let half = DeltaBits::from_u64(1, 2).unwrap();
        let r = reduce_to_threshold(&universal_block(2), &half).unwrap();
        assert_eq!((r.k, r.n, r.p1), (3, 5, Some(1)));
        let count = count_per_length(&r.nfa, r.n).unwrap();
        assert!(count * 2u32 > BigUint::one() << r.n);
        assert_eq!(certify_block(&r.nfa).unwrap().word_length(), r.n);

        // Σ₂² minus {11}
        let b = Nfa::new(2, 4, [0], [2], [(0, 0, 1), (0, 1, 3), (1, 0, 2), (1, 1, 2), (3, 0, 2)]).unwrap();
        let r = reduce_to_threshold(&certify_block(&b).unwrap(), &half).unwrap();
        let count = count_per_length(&r.nfa, r.n).unwrap();
        assert!(&count * 2u32 < BigUint::one() << r.n);
        assert_eq!(count, (&r.m_k + 1u32) * 3u32);
    }

    #[test]
    fn dyadic_variant_meets_threshold_exactly() {
        let d = DeltaBits::from_u64(5, 16).unwrap();
        let r = reduce_to_threshold_dyadic(&universal_block(2), &d).unwrap();
        let count = count_per_length(&r.nfa, r.n).unwrap();
        assert_eq!(count, BigUint::from(5u32 * 4));
        assert!(d.meets_threshold(&count, r.n));
        assert!(reduce_to_threshold_dyadic(&universal_block(2), &DeltaBits::from_u64(1, 3).unwrap()).is_err());
    }

    #[test]
    fn rejects_non_binary_input() {
        let b = certify_block(&crate::automata::Dfa::exact_length(3, 2).into_nfa()).unwrap();
        assert!(reduce_to_threshold(&b, &DeltaBits::from_u64(1, 3).unwrap()).is_err());
    }
}
