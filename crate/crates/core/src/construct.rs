//! Explicit dominating sets of `KG_n` built from an odd prime (power) `q`
//! dividing `n` for which 2 is a primitive root.
//!
//! * prime stride, `q = p <= ⌈log₂ n⌉`:
//!   `{2pl : 0 <= l < n/2p} ∪ {2pl - 1 : 1 <= l <= n/2p}`, size `n/p`;
//! * prime power stride, `q = p^k`, `k >= 2`, `φ(q) < ⌈log₂ n⌉`:
//!   `{lq : 0 <= l < n/q} ∪ {lq - 1 : 1 <= l <= n/q}`, size `2n/q`.
//!
//! Both sets are certified by [`crate::verify::certify`] rather than by
//! replaying the case analysis that shows why they dominate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knodel::{GraphError, VertexSet};
use crate::numtheory::{ceil_log2, factorize, floor_log2, is_prime, NumError, PrimePowerWitness};
use crate::verify::{berge_lower, remainder_lower, BoundReport, BoundSource, UpperBound};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("n must be even and at least 6, got {0}")]
    BadOrder(u64),
    #[error(transparent)]
    Number(#[from] NumError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{q} does not divide n = {n}")]
    NotDivisor { q: u64, n: u64 },
    #[error("p = {p} exceeds ⌈log₂ n⌉ = {limit}")]
    PrimeTooLarge { p: u64, limit: u32 },
    #[error("φ({q}) = {phi} is not below ⌈log₂ n⌉ = {limit}")]
    TotientTooLarge { q: u64, phi: u64, limit: u32 },
    #[error("2 is not a primitive root modulo {q} (order {order})")]
    NotPrimitive { q: u64, order: u64 },
    #[error("exponent must be at least 2 for the prime power construction, got {0}")]
    ExponentTooSmall(u32),
    #[error("witness {p}^{e} does not license this construction")]
    WrongWitness { p: u64, e: u32 },
}

/// Which closed-form family produced a set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Prime,
    PrimePower,
}

impl Construction {
    pub fn label(&self) -> &'static str {
        match self {
            Construction::Prime => "prime",
            Construction::PrimePower => "prime_power",
        }
    }

    pub fn bound_source(&self) -> BoundSource {
        match self {
            Construction::Prime => BoundSource::Prime,
            Construction::PrimePower => BoundSource::PrimePower,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub n: u64,
    pub degree: u32,
    pub construction: Construction,
    pub witness: PrimePowerWitness,
    pub claimed_size: u64,
    pub set: VertexSet,
}

fn check_order(n: u64) -> Result<(), ConstructError> {
    if n % 2 != 0 || n < 6 {
        return Err(ConstructError::BadOrder(n));
    }
    Ok(())
}

fn require_primitive(w: &PrimePowerWitness) -> Result<(), ConstructError> {
    if !w.is_primitive {
        return Err(ConstructError::NotPrimitive {
            q: w.value,
            order: w.order_of_two,
        });
    }
    Ok(())
}

/// Checks `p | n`, `p <= ⌈log₂ n⌉` and that 2 is primitive modulo `p`.
pub fn check_prime_preconditions(n: u64, p: u64) -> Result<PrimePowerWitness, ConstructError> {
    check_order(n)?;
    let w = PrimePowerWitness::new(p, 1)?;
    if n % p != 0 {
        return Err(ConstructError::NotDivisor { q: p, n });
    }
    let limit = ceil_log2(n);
    if p > limit as u64 {
        return Err(ConstructError::PrimeTooLarge { p, limit });
    }
    require_primitive(&w)?;
    Ok(w)
}

/// Checks `k >= 2`, `p^k | n`, `φ(p^k) < ⌈log₂ n⌉` and that 2 is primitive
/// modulo `p^k`.
pub fn check_prime_power_preconditions(
    n: u64,
    p: u64,
    k: u32,
) -> Result<PrimePowerWitness, ConstructError> {
    check_order(n)?;
    if k < 2 {
        return Err(ConstructError::ExponentTooSmall(k));
    }
    let w = PrimePowerWitness::new(p, k)?;
    if n % w.value != 0 {
        return Err(ConstructError::NotDivisor { q: w.value, n });
    }
    let limit = ceil_log2(n);
    if w.totient() >= limit as u64 {
        return Err(ConstructError::TotientTooLarge {
            q: w.value,
            phi: w.totient(),
            limit,
        });
    }
    require_primitive(&w)?;
    Ok(w)
}

/// The prime stride set for `n` and stride `2p`, without precondition checks.
/// Requires `2p | n`.
pub(crate) fn prime_stride_set(n: u64, p: u64) -> VertexSet {
    let blocks = n / (2 * p);
    let mut set = VertexSet::new(n as usize);
    for l in 0..blocks {
        set.insert((2 * p * l) as usize);
        set.insert((2 * p * (l + 1) - 1) as usize);
    }
    set
}

/// The prime power stride set for `n` and stride `q`. Requires `q | n`.
pub(crate) fn prime_power_stride_set(n: u64, q: u64) -> VertexSet {
    let blocks = n / q;
    let mut set = VertexSet::new(n as usize);
    for l in 0..blocks {
        set.insert((q * l) as usize);
        set.insert((q * (l + 1) - 1) as usize);
    }
    set
}

pub fn construct_prime(n: u64, witness: &PrimePowerWitness) -> Result<ConstructionResult, ConstructError> {
    if witness.e != 1 {
        return Err(ConstructError::WrongWitness {
            p: witness.p,
            e: witness.e,
        });
    }
    let checked = check_prime_preconditions(n, witness.p)?;
    if checked != *witness {
        return Err(ConstructError::WrongWitness {
            p: witness.p,
            e: witness.e,
        });
    }
    Ok(ConstructionResult {
        n,
        degree: floor_log2(n),
        construction: Construction::Prime,
        witness: checked,
        claimed_size: n / checked.p,
        set: prime_stride_set(n, checked.p),
    })
}

pub fn construct_prime_power(
    n: u64,
    witness: &PrimePowerWitness,
) -> Result<ConstructionResult, ConstructError> {
    let checked = check_prime_power_preconditions(n, witness.p, witness.e)?;
    if checked != *witness {
        return Err(ConstructError::WrongWitness {
            p: witness.p,
            e: witness.e,
        });
    }
    Ok(ConstructionResult {
        n,
        degree: floor_log2(n),
        construction: Construction::PrimePower,
        witness: checked,
        claimed_size: 2 * n / checked.value,
        set: prime_power_stride_set(n, checked.value),
    })
}

/// All witnesses for `n`, prime stride witnesses first, each list with the
/// strongest (largest) witness first.
pub fn witnesses(n: u64) -> Result<(Vec<PrimePowerWitness>, Vec<PrimePowerWitness>), ConstructError> {
    check_order(n)?;
    let fact = factorize(n)?;
    let mut primes = Vec::new();
    let mut powers = Vec::new();
    for &(p, e) in fact.factors.iter().filter(|(p, _)| *p != 2) {
        if let Ok(w) = check_prime_preconditions(n, p) {
            primes.push(w);
        }
        for k in 2..=e {
            if let Ok(w) = check_prime_power_preconditions(n, p, k) {
                powers.push(w);
            }
        }
    }
    primes.sort_by(|a, b| b.value.cmp(&a.value));
    powers.sort_by(|a, b| b.value.cmp(&a.value));
    Ok((primes, powers))
}

/// The prime `p = ⌈log₂ n⌉` case: `p` odd prime dividing `n` with 2
/// primitive modulo `p`. There the prime stride set meets the degree
/// counting bound, so `γ(KG_n) = n/p` exactly.
pub fn exact_prime_case(n: u64) -> Option<PrimePowerWitness> {
    let p = ceil_log2(n) as u64;
    if p % 2 == 0 || !is_prime(p) {
        return None;
    }
    check_prime_preconditions(n, p).ok()
}

/// Every admissible upper bound for `γ(KG_n)` with its source, best first,
/// plus the counting lower bounds.
///
/// Ties in value favour the prime stride construction, then the prime
/// power one, then the unconditional `⌈n/4⌉`.
pub fn best_bound(n: u64) -> Result<BoundReport, ConstructError> {
    let (primes, powers) = witnesses(n)?;
    let degree = floor_log2(n) as u64;
    let mut uppers: Vec<UpperBound> = primes
        .iter()
        .map(|w| UpperBound {
            value: n / w.p,
            source: BoundSource::Prime,
            witness: Some(*w),
        })
        .chain(powers.iter().map(|w| UpperBound {
            value: 2 * n / w.value,
            source: BoundSource::PrimePower,
            witness: Some(*w),
        }))
        .collect();
    uppers.push(UpperBound {
        value: n.div_ceil(4),
        source: BoundSource::Quarter,
        witness: None,
    });
    uppers.sort_by(|a, b| {
        (a.value, a.source)
            .cmp(&(b.value, b.source))
            .then_with(|| b.witness.map(|w| w.value).cmp(&a.witness.map(|w| w.value)))
    });
    Ok(BoundReport {
        n,
        degree,
        lower_berge: berge_lower(n, degree),
        lower_prop2: remainder_lower(n, degree),
        uppers,
        known_exact: exact_prime_case(n).map(|w| n / w.p),
        gamma_exact: None,
    })
}
