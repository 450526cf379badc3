//! Length distributions on the nonnegative integers (uniform, Lambert,
//! Dirichlet), the length-based word distributions built from them, and
//! their truncations at a cutoff length.
//!
//! All arithmetic is IEEE double precision. The Riemann zeta values needed by
//! the Dirichlet family are computed once per distribution with a rigorous
//! error bound well below the tolerances used elsewhere (1e-10).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;

use crate::automata::{AdfaCertificate, Word};
use crate::error::{Error, Result};
use crate::sampling::{self, FiniteDistribution, PathCountTable};
use crate::util::ratio_to_f64;

/// Tolerance for the zeta value cached inside each Dirichlet distribution.
pub const ZETA_TOLERANCE: f64 = 1e-15;

// B_{2k} / (2k)! for k = 1..=6.
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1_307_674_368_000.0,
];

/// A value of the Riemann zeta function with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub t: f64,
    pub value: f64,
    pub error_bound: f64,
    /// Number of terms summed explicitly before the remainder expansion.
    pub terms: u64,
}

/// `Σ_{i ≥ n} i^{-t}` for `n ≥ 1`: explicit terms `n..cut-1`, then an
/// Euler-Maclaurin expansion of the remainder at `cut`. Returns the value and
/// the magnitude of the first omitted correction, which bounds the truncation
/// error because every derivative of `x^{-t}` has constant sign.
fn power_tail(t: f64, n: u64, cut: u64) -> (f64, f64) {
    debug_assert!(n >= 1 && t > 1.0);
    let cut = cut.max(n);
    // small terms first
    let mut explicit = 0.0;
    for i in (n..cut).rev() {
        explicit += (i as f64).powf(-t);
    }
    let c = cut as f64;
    let mut remainder = c.powf(1.0 - t) / (t - 1.0) + 0.5 * c.powf(-t);
    // rising factorial t(t+1)...(t+2k-2) times cut^{-t-2k+1}
    let mut rising = t;
    let mut power = c.powf(-t - 1.0);
    let mut omitted = 0.0;
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = coeff * rising * power;
        if k + 1 == BERNOULLI_OVER_FACTORIAL.len() {
            omitted = term.abs();
        } else {
            remainder += term;
        }
        let m = 2.0 * k as f64 + 1.0;
        rising *= (t + m) * (t + m + 1.0);
        power /= c * c;
    }
    (explicit + remainder, omitted)
}

/// Zeta with the explicit partial sum cut at `terms + 1` (at least 1).
pub fn zeta_with_terms(t: f64, terms: u64) -> ZetaValue {
    let (value, error_bound) = power_tail(t, 1, terms.max(1) + 1);
    ZetaValue {
        t,
        value,
        error_bound,
        terms: terms.max(1),
    }
}

/// `ζ(t)` for `t > 1`, doubling the number of explicit terms until the error
/// bound is at most `tol` (or the term budget of 2^24 is spent).
pub fn zeta(t: f64, tol: f64) -> Result<ZetaValue> {
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::InvalidInput(format!("zeta needs t > 1, got {t}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("zeta tolerance must be positive, got {tol}")));
    }
    let mut terms = 8;
    loop {
        let z = zeta_with_terms(t, terms);
        if z.error_bound <= tol || terms >= 1 << 24 {
            return Ok(z);
        }
        terms *= 2;
    }
}

/// Family and parameters of a [`LengthDistribution`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Mass `1/M` on each of `0..M`.
    Uniform { max: u64 },
    /// Geometric: mass `(1-z) z^{n-d}` for `n ≥ d`, with `z = 1/base`.
    Lambert { base: f64, displacement: u64 },
    /// Zeta-weighted: mass `(n+1-d)^{-t} / ζ(t)` for `n ≥ d`.
    Dirichlet { exponent: f64, displacement: u64 },
}

/// A probability distribution on word lengths.
#[derive(Debug, Clone)]
pub struct LengthDistribution {
    family: Family,
    // ζ(t) for Dirichlet, NaN otherwise
    zeta: f64,
}

impl PartialEq for LengthDistribution {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl LengthDistribution {
    pub fn uniform(max: u64) -> Result<Self> {
        if max == 0 {
            return Err(Error::InvalidInput("uniform length distribution needs M >= 1".into()));
        }
        Ok(LengthDistribution {
            family: Family::Uniform { max },
            zeta: f64::NAN,
        })
    }

    pub fn lambert(base: f64, displacement: u64) -> Result<Self> {
        if !(base > 1.0 && base.is_finite()) {
            return Err(Error::InvalidInput(format!("Lambert base must be > 1, got {base}")));
        }
        Ok(LengthDistribution {
            family: Family::Lambert { base, displacement },
            zeta: f64::NAN,
        })
    }

    pub fn dirichlet(exponent: f64, displacement: u64) -> Result<Self> {
        let z = zeta(exponent, ZETA_TOLERANCE)
            .map_err(|_| Error::InvalidInput(format!("Dirichlet exponent must be > 1, got {exponent}")))?;
        Ok(LengthDistribution {
            family: Family::Dirichlet {
                exponent,
                displacement,
            },
            zeta: z.value,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Smallest length with positive mass.
    pub fn support_start(&self) -> u64 {
        match self.family {
            Family::Uniform { .. } => 0,
            Family::Lambert { displacement, .. } | Family::Dirichlet { displacement, .. } => {
                displacement
            }
        }
    }

    /// `L(n)`, exactly zero outside the support.
    pub fn mass(&self, n: u64) -> f64 {
        match self.family {
            Family::Uniform { max } => {
                if n < max {
                    1.0 / max as f64
                } else {
                    0.0
                }
            }
            Family::Lambert { base, displacement } => {
                if n < displacement {
                    return 0.0;
                }
                let z = 1.0 / base;
                (1.0 - z) * z.powf((n - displacement) as f64)
            }
            Family::Dirichlet {
                exponent,
                displacement,
            } => {
                if n < displacement {
                    return 0.0;
                }
                ((n - displacement + 1) as f64).powf(-exponent) / self.zeta
            }
        }
    }

    /// Pointwise mass; the polynomial-time `probd` of a tractable distribution.
    pub fn probd(&self, m: u64) -> f64 {
        self.mass(m)
    }

    /// `L(ℕ^{>n})`, the mass of all lengths above `n`.
    pub fn tail(&self, n: u64) -> f64 {
        match self.family {
            Family::Uniform { max } => {
                if n + 1 >= max {
                    0.0
                } else {
                    (max - 1 - n) as f64 / max as f64
                }
            }
            Family::Lambert { base, displacement } => {
                if n < displacement {
                    1.0
                } else {
                    (1.0 / base).powf((n + 1 - displacement) as f64)
                }
            }
            Family::Dirichlet {
                exponent,
                displacement,
            } => {
                if n < displacement {
                    1.0
                } else {
                    let first = n + 2 - displacement;
                    power_tail(exponent, first, 16).0 / self.zeta
                }
            }
        }
    }

    pub fn expected_length(&self) -> Result<f64> {
        match self.family {
            Family::Uniform { max } => Ok((max - 1) as f64 / 2.0),
            Family::Lambert { base, displacement } => Ok(displacement as f64 + 1.0 / (base - 1.0)),
            Family::Dirichlet {
                exponent,
                displacement,
            } => {
                if exponent <= 2.0 {
                    return Err(Error::InfiniteExpectation(exponent));
                }
                let shifted = zeta(exponent - 1.0, ZETA_TOLERANCE)?.value;
                Ok(displacement as f64 + shifted / self.zeta - 1.0)
            }
        }
    }

    /// A cutoff `M` with `tail(M) <= eps`: the smallest integer meeting the
    /// family's closed-form sufficient bound (`M-1` for uniform,
    /// `⌈log_base(1/eps)⌉ + d - 1` for Lambert, `⌈(1/eps)^{1/(t-1)}⌉ + d - 1`
    /// for Dirichlet).
    pub fn maxlen(&self, eps: f64) -> Result<u64> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidInput(format!("maxlen tolerance must lie in (0,1), got {eps}")));
        }
        match self.family {
            Family::Uniform { max } => Ok(max - 1),
            Family::Lambert { base, displacement } => {
                let z = 1.0 / base;
                // smallest k with z^k <= eps; the guess is corrected for rounding
                let mut k = ((1.0 / eps).ln() / base.ln()).ceil().max(0.0) as u64;
                while k > 0 && z.powf((k - 1) as f64) <= eps {
                    k -= 1;
                }
                while z.powf(k as f64) > eps {
                    k += 1;
                }
                Ok((k + displacement).saturating_sub(1))
            }
            Family::Dirichlet {
                exponent,
                displacement,
            } => {
                let target = 1.0 / eps;
                let root = target.powf(1.0 / (exponent - 1.0));
                if root >= u64::MAX as f64 / 2.0 {
                    return Err(Error::InvalidInput(format!(
                        "cutoff for eps = {eps} overflows at exponent {exponent}"
                    )));
                }
                // smallest k >= 1 with k^{t-1} >= 1/eps
                let mut k = (root.ceil() as u64).max(1);
                while k > 1 && ((k - 1) as f64).powf(exponent - 1.0) >= target {
                    k -= 1;
                }
                while (k as f64).powf(exponent - 1.0) < target {
                    k += 1;
                }
                Ok(k + displacement - 1)
            }
        }
    }

    /// Draws a length exactly from the distribution by inverting the tail
    /// function (exponential then binary search).
    pub fn sample_length<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        // v uniform in (0, 1]; answer is the first n with tail(n) < v
        let v = 1.0 - rng.random::<f64>();
        let lo = self.support_start();
        if self.tail(lo) < v {
            return lo;
        }
        let mut step = 1u64;
        let mut below = lo;
        let mut hi = lo + step;
        while self.tail(hi) >= v {
            below = hi;
            step = step.saturating_mul(2);
            hi = hi.saturating_add(step);
        }
        // tail(below) >= v > tail(hi)
        while hi - below > 1 {
            let mid = below + (hi - below) / 2;
            if self.tail(mid) < v {
                hi = mid;
            } else {
                below = mid;
            }
        }
        hi
    }
}

impl fmt::Display for LengthDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Uniform { max } => write!(f, "uniform:M={max}"),
            Family::Lambert { base, displacement } => {
                write!(f, "lambert:base={base},d={displacement}")
            }
            Family::Dirichlet {
                exponent,
                displacement,
            } => write!(f, "dirichlet:t={exponent},d={displacement}"),
        }
    }
}

/// Parses `uniform:M=<int>`, `lambert:base=<real>,d=<int>` or
/// `dirichlet:t=<real>,d=<int>`. A missing `d` defaults to 0.
impl FromStr for LengthDistribution {
    type Err = Error;

    fn from_str(descriptor: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidInput(format!("distribution `{descriptor}`: {msg}"));
        let (name, params) = descriptor
            .trim()
            .split_once(':')
            .ok_or_else(|| bad("expected `<family>:<key>=<value>,...`".into()))?;
        let mut fields = Vec::new();
        for part in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("field `{part}` is not `key=value`")))?;
            fields.push((k.trim(), v.trim()));
        }
        let allowed: &[&str] = match name {
            "uniform" => &["M"],
            "lambert" => &["base", "d"],
            "dirichlet" => &["t", "d"],
            other => return Err(bad(format!("unknown family `{other}`"))),
        };
        if let Some((k, _)) = fields.iter().find(|(k, _)| !allowed.contains(k)) {
            return Err(bad(format!("unknown field `{k}` for family `{name}`")));
        }
        let get = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let int = |key: &str, default: Option<u64>| -> Result<u64> {
            match get(key) {
                Some(v) => v
                    .parse()
                    .map_err(|_| bad(format!("field `{key}` = `{v}` is not a nonnegative integer"))),
                None => default.ok_or_else(|| bad(format!("missing field `{key}`"))),
            }
        };
        let real = |key: &str| -> Result<f64> {
            let v = get(key).ok_or_else(|| bad(format!("missing field `{key}`")))?;
            v.parse()
                .map_err(|_| bad(format!("field `{key}` = `{v}` is not a number")))
        };
        let checked = |r: Result<Self>, key: &str| {
            r.map_err(|e| bad(format!("field `{key}`: {e}")))
        };
        match name {
            "uniform" => checked(Self::uniform(int("M", None)?), "M"),
            "lambert" => checked(Self::lambert(real("base")?, int("d", Some(0))?), "base"),
            _ => checked(Self::dirichlet(real("t")?, int("d", Some(0))?), "t"),
        }
    }
}

/// A probability distribution on words.
#[derive(Debug, Clone)]
pub enum WordDistribution {
    /// `W(w) = L(|w|) · s^{-|w|}`.
    LengthBased {
        length: LengthDistribution,
        alphabet_size: u32,
    },
    /// Uniform over the finite language of an acyclic DFA.
    UniformFinite {
        acceptor: AdfaCertificate,
        counts: PathCountTable,
    },
}

impl WordDistribution {
    pub fn length_based(length: LengthDistribution, alphabet_size: u32) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidInput("alphabet size must be at least 1".into()));
        }
        Ok(WordDistribution::LengthBased {
            length,
            alphabet_size,
        })
    }

    pub fn uniform_finite(acceptor: AdfaCertificate) -> Result<Self> {
        let counts = sampling::count_paths(&acceptor);
        if counts.total() == &BigUint::ZERO {
            return Err(Error::EmptyLanguage);
        }
        Ok(WordDistribution::UniformFinite { acceptor, counts })
    }

    pub fn alphabet_size(&self) -> u32 {
        match self {
            WordDistribution::LengthBased { alphabet_size, .. } => *alphabet_size,
            WordDistribution::UniformFinite { acceptor, .. } => acceptor.alphabet_size(),
        }
    }

    pub fn length(&self) -> Option<&LengthDistribution> {
        match self {
            WordDistribution::LengthBased { length, .. } => Some(length),
            WordDistribution::UniformFinite { .. } => None,
        }
    }

    pub fn word_prob(&self, w: &Word) -> Result<f64> {
        w.check_alphabet(self.alphabet_size())?;
        match self {
            WordDistribution::LengthBased {
                length,
                alphabet_size,
            } => {
                let spread = (1.0 / *alphabet_size as f64).powf(w.len() as f64);
                Ok(length.mass(w.len() as u64) * spread)
            }
            WordDistribution::UniformFinite { acceptor, counts } => {
                if acceptor.dfa().accepts(w)? {
                    Ok(ratio_to_f64(&BigUint::from(1u32), counts.total()))
                } else {
                    Ok(0.0)
                }
            }
        }
    }

    /// Draws a word exactly from the distribution (no cutoff).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Word {
        match self {
            WordDistribution::LengthBased {
                length,
                alphabet_size,
            } => {
                let n = length.sample_length(rng);
                sampling::uselect(*alphabet_size, n as usize, rng)
            }
            WordDistribution::UniformFinite { acceptor, counts } => {
                sampling::adfa_uselect(acceptor, counts, rng).expect("language is nonempty")
            }
        }
    }
}

/// The truncation `W^M` of a length-based distribution, as an outcome table
/// over lengths `0..=M` followed by the outcome "no word" carrying `W(Σ^{>M})`.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedTable {
    cutoff: u64,
    alphabet_size: u32,
    probs: Vec<f64>,
}

impl AugmentedTable {
    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn length_prob(&self, n: u64) -> f64 {
        if n <= self.cutoff {
            self.probs[n as usize]
        } else {
            0.0
        }
    }

    pub fn none_prob(&self) -> f64 {
        self.probs[self.probs.len() - 1]
    }

    /// Length masses then the "no word" mass.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn to_finite(&self) -> Result<FiniteDistribution> {
        FiniteDistribution::new(self.probs.clone())
    }
}

pub fn augment(w: &WordDistribution, cutoff: u64) -> Result<AugmentedTable> {
    let WordDistribution::LengthBased {
        length,
        alphabet_size,
    } = w
    else {
        return Err(Error::NotLengthBased);
    };
    let mut probs: Vec<f64> = (0..=cutoff).map(|n| length.mass(n)).collect();
    probs.push(length.tail(cutoff));
    Ok(AugmentedTable {
        cutoff,
        alphabet_size: *alphabet_size,
        probs,
    })
}
