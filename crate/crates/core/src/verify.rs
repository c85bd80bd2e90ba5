//! Certificates for candidate dominating sets and the counting lower bounds
//! for regular bipartite graphs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knodel::{GraphError, KnodelGraph, VertexSet};
use crate::numtheory::PrimePowerWitness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("set does not dominate the graph ({0} vertices uncovered)")]
    NotDominating(usize),
    #[error("n = {n} is not divisible by degree + 1 = {d}")]
    NotTight { n: usize, d: usize },
    #[error("set has {size} vertices; the tight size is {tight}")]
    WrongSize { size: usize, tight: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub dominating: bool,
    pub independent: bool,
    pub perfect: bool,
    pub efficient: bool,
    pub undominated: VertexSet,
    /// `(even members, odd members)`.
    pub parity_split: (usize, usize),
}

/// Computes every property by counting, for each vertex, how many members
/// of `d` are adjacent to it. All undominated vertices are reported.
pub fn certify(g: &KnodelGraph, d: &VertexSet) -> Result<Certificate, VerifyError> {
    if d.universe() != g.n() {
        return Err(GraphError::SizeMismatch(d.universe(), g.n()).into());
    }
    let n = g.n();
    let mut hits = vec![0u16; n];
    for u in d.iter() {
        for y in g.neighbor_iter(u) {
            hits[y] = hits[y].saturating_add(1);
        }
    }
    let mut undominated = VertexSet::new(n);
    let mut independent = true;
    let mut exactly_once = true;
    for (v, &h) in hits.iter().enumerate() {
        if d.contains(v) {
            independent &= h == 0;
        } else {
            if h == 0 {
                undominated.insert(v);
            }
            exactly_once &= h == 1;
        }
    }
    let dominating = undominated.is_empty();
    let perfect = dominating && exactly_once;
    let evens = d.even_count();
    Ok(Certificate {
        dominating,
        independent,
        perfect,
        efficient: perfect && independent,
        undominated,
        parity_split: (evens, d.len() - evens),
    })
}

/// `⌈n / (degree + 1)⌉`, valid for every graph of maximum degree `degree`.
pub fn berge_lower(n: u64, degree: u64) -> u64 {
    n.div_ceil(degree + 1)
}

/// Improved lower bound for `k`-regular bipartite graphs.
///
/// When `n = 2j(k+1) + r` with `4 <= r < k + 1`, a set of `2j + 1` vertices
/// leaves its lighter side with at most `j` members, which cover at most
/// `j(k+1) + 1 < n/2` vertices of the opposite side. So `γ >= 2j + 2`.
pub fn remainder_lower(n: u64, degree: u64) -> Option<u64> {
    if degree < 2 {
        return None;
    }
    let (q, r) = (n / (degree + 1), n % (degree + 1));
    (q % 2 == 0 && r >= 4).then_some(q + 2)
}

/// Counting obstruction from both sides of the parity bipartition: `d` can
/// only dominate side `Y` if `k·|d ∩ X| + |d ∩ Y| >= |Y|`, and symmetrically.
/// Returns `false` when either side is provably left uncovered.
pub fn bipartite_capacity_ok(g: &KnodelGraph, d: &VertexSet) -> bool {
    let k = g.degree() as usize;
    let half = g.n() / 2;
    let evens = d.even_count();
    let odds = d.len() - evens;
    k * evens + odds >= half && k * odds + evens >= half
}

/// Necessary conditions on a set of the tight size `n/(k+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightSetVerdict {
    pub efficient: bool,
    pub even_size: bool,
    pub balanced: bool,
}

impl TightSetVerdict {
    pub fn holds(&self) -> bool {
        self.efficient && self.even_size && self.balanced
    }
}

/// For a dominating set of size exactly `n/(k+1)`: any minimum set of that
/// size must be efficient, and in a regular bipartite graph it must then
/// split evenly between the two sides (so its size is even).
pub fn tight_set_check(g: &KnodelGraph, d: &VertexSet) -> Result<TightSetVerdict, VerifyError> {
    let n = g.n();
    let k1 = g.degree() as usize + 1;
    if n % k1 != 0 {
        return Err(VerifyError::NotTight { n, d: k1 });
    }
    if d.len() != n / k1 {
        return Err(VerifyError::WrongSize {
            size: d.len(),
            tight: n / k1,
        });
    }
    let cert = certify(g, d)?;
    if !cert.dominating {
        return Err(VerifyError::NotDominating(cert.undominated.len()));
    }
    Ok(TightSetVerdict {
        efficient: cert.efficient,
        even_size: d.len() % 2 == 0,
        balanced: cert.parity_split.0 == cert.parity_split.1,
    })
}

/// Where an upper bound on γ comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// `n/p` from the prime stride construction.
    Prime,
    /// `2n/p^k` from the prime power construction.
    PrimePower,
    /// Unconditional `⌈n/4⌉`.
    Quarter,
}

impl BoundSource {
    pub fn label(&self) -> &'static str {
        match self {
            BoundSource::Prime => "prime",
            BoundSource::PrimePower => "prime_power",
            BoundSource::Quarter => "quarter",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBound {
    pub value: u64,
    pub source: BoundSource,
    pub witness: Option<PrimePowerWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub degree: u64,
    pub lower_berge: u64,
    pub lower_prop2: Option<u64>,
    /// Every admissible upper bound, best first.
    pub uppers: Vec<UpperBound>,
    /// Set when the prime `p = ⌈log₂ n⌉` case applies and γ is pinned at `n/p`.
    pub known_exact: Option<u64>,
    pub gamma_exact: Option<u64>,
}

impl BoundReport {
    pub fn lower(&self) -> u64 {
        self.lower_prop2.map_or(self.lower_berge, |l| l.max(self.lower_berge))
    }

    pub fn best(&self) -> Option<&UpperBound> {
        self.uppers.first()
    }

    pub fn upper(&self) -> Option<u64> {
        self.uppers.iter().map(|u| u.value).min()
    }

    /// `max(lowers) <= γ <= min(uppers)`; vacuous without an exact γ.
    pub fn sandwich_holds(&self) -> bool {
        match self.gamma_exact {
            None => true,
            Some(g) => self.lower() <= g && self.upper().map_or(true, |u| g <= u),
        }
    }
}
