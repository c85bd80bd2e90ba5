//! Range scans over even `n`: witnesses, bounds, optional exact γ and the
//! upper-bound conjectures for `p ∤ n`.
//!
//! A conjecture test only reports `Refuted` after a completed exact search
//! shows no dominating set of the target size exists. Heuristic failure is
//! never evidence against.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::construct::{
    best_bound, construct_prime, construct_prime_power, prime_power_stride_set, prime_stride_set,
    witnesses, Construction, ConstructError,
};
use crate::exact::{exact_gamma, exists_dominating_of_size, Decision, ExactError, Solve, SolveOptions, MAX_ORDER};
use crate::knodel::{GraphError, KnodelGraph, VertexSet};
use crate::numtheory::{ceil_log2, factorize, floor_log2, is_prime, NumError, PrimePowerWitness};
use crate::par::{self, Execution};
use crate::verify::{berge_lower, certify, BoundReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScanError {
    #[error("scan range must satisfy 6 <= lo <= hi with both even (got {lo}..={hi})")]
    BadRange { lo: u64, hi: u64 },
    #[error("n = {0} must be even and at least 6")]
    BadOrder(u64),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Number(#[from] NumError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    /// Run the exact oracle for `n` up to this order.
    pub oracle_max: u64,
    /// Run the oracle regardless of `oracle_max` (still capped by the solver).
    pub force_oracle: bool,
    pub conjectures: bool,
    pub solve: SolveOptions,
    /// Explicit sets are only materialised and certified up to this order.
    pub set_limit: u64,
    /// The translated-set heuristic is only tried up to this order.
    pub heuristic_limit: u64,
    pub execution: Execution,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            oracle_max: 128,
            force_oracle: false,
            conjectures: true,
            solve: SolveOptions::default(),
            set_limit: 1 << 20,
            heuristic_limit: 4096,
            execution: Execution::default(),
        }
    }
}

impl ScanOptions {
    fn oracle_applies(&self, n: u64) -> bool {
        (self.force_oracle || n <= self.oracle_max) && n as usize <= MAX_ORDER
    }

    fn solve_options(&self) -> SolveOptions {
        let mut s = self.solve;
        s.bb_ceiling = s.bb_ceiling.max(self.oracle_max.min(MAX_ORDER as u64) as usize);
        if self.force_oracle {
            s.bb_ceiling = MAX_ORDER;
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Supported,
    Refuted,
    Inconclusive,
    NotApplicable,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Supported => "supported",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "n/a",
        }
    }

    pub fn is_conclusive(self) -> bool {
        matches!(self, Verdict::Supported | Verdict::Refuted)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// The stride set for `n` itself, certified.
    Construction,
    /// Heuristic: the stride set of a smaller order, shifted and greedily
    /// completed, then certified.
    TranslatedHeuristic,
    /// Witness or completed proof of nonexistence from the exact search.
    Search,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    /// `γ <= ⌈n/p⌉` for odd prime `p <= ⌈log₂ n⌉`, 2 primitive mod `p`.
    PrimeStride,
    /// `γ <= ⌈2n/p^k⌉` for `k >= 2`, `φ(p^k) < ⌈log₂ n⌉`, 2 primitive mod `p^k`.
    PrimePowerStride,
}

impl Conjecture {
    fn target(self, n: u64, q: u64) -> u64 {
        match self {
            Conjecture::PrimeStride => n.div_ceil(q),
            Conjecture::PrimePowerStride => (2 * n).div_ceil(q),
        }
    }

    /// Orders `n'` at which the stride set is defined are multiples of this.
    fn period(self, q: u64) -> u64 {
        2 * q
    }

    fn base_set(self, n: u64, q: u64) -> VertexSet {
        match self {
            Conjecture::PrimeStride => prime_stride_set(n, q),
            Conjecture::PrimePowerStride => prime_power_stride_set(n, q),
        }
    }
}

/// How the stride set of the largest smaller order `n'` was moved into
/// `KG_n` before greedy completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Translation {
    /// Members `>= cut` move up by the remainder `n - n'`.
    Tail { cut: u64, by: u64 },
    /// Every member moves up by `by`.
    Rotate { by: u64 },
}

impl Translation {
    fn apply(self, v: u64) -> u64 {
        match self {
            Translation::Tail { cut, by } if v >= cut => v + by,
            Translation::Tail { .. } => v,
            Translation::Rotate { by } => v + by,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureTest {
    pub conjecture: Conjecture,
    pub p: u64,
    pub e: u32,
    pub q: u64,
    pub target: u64,
    pub verdict: Verdict,
    pub evidence: Evidence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Translation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub verdict: Verdict,
    pub tests: Vec<ConjectureTest>,
}

impl ConjectureReport {
    fn from_tests(tests: Vec<ConjectureTest>) -> Self {
        let has = |v| tests.iter().any(|t| t.verdict == v);
        let verdict = if has(Verdict::Refuted) {
            Verdict::Refuted
        } else if has(Verdict::Inconclusive) {
            Verdict::Inconclusive
        } else if has(Verdict::Supported) {
            Verdict::Supported
        } else {
            Verdict::NotApplicable
        };
        Self { verdict, tests }
    }
}

/// Odd primes `p <= ⌈log₂ n⌉` with 2 primitive modulo `p`.
pub fn prime_stride_candidates(n: u64) -> Vec<PrimePowerWitness> {
    let limit = ceil_log2(n) as u64;
    (3..=limit)
        .step_by(2)
        .filter(|&p| is_prime(p))
        .filter_map(|p| PrimePowerWitness::new(p, 1).ok())
        .filter(|w| w.is_primitive)
        .collect()
}

/// `p^k`, `k >= 2`, with `φ(p^k) < ⌈log₂ n⌉` and 2 primitive modulo `p^k`.
pub fn prime_power_candidates(n: u64) -> Vec<PrimePowerWitness> {
    let limit = ceil_log2(n) as u64;
    let mut out = Vec::new();
    for p in (3..limit.max(3)).step_by(2).filter(|&p| is_prime(p)) {
        for k in 2.. {
            let Ok(w) = PrimePowerWitness::new(p, k) else { break };
            if w.totient() >= limit {
                break;
            }
            if w.is_primitive {
                out.push(w);
            }
        }
    }
    out
}

fn check_even_order(n: u64) -> Result<(), ScanError> {
    if n % 2 != 0 || n < 6 {
        return Err(ScanError::BadOrder(n));
    }
    Ok(())
}

/// Tests `γ(KG_n) <= ⌈n/p⌉`; divisibility is not required.
pub fn test_conjecture1(n: u64, p: u64, opts: &ScanOptions) -> Result<ConjectureTest, ScanError> {
    check_even_order(n)?;
    let w = PrimePowerWitness::new(p, 1)?;
    let limit = ceil_log2(n) as u64;
    if p > limit {
        return Err(ScanError::Precondition(format!(
            "p = {p} exceeds ⌈log₂ {n}⌉ = {limit}"
        )));
    }
    if !w.is_primitive {
        return Err(ScanError::Precondition(format!("2 is not a primitive root modulo {p}")));
    }
    Ok(run_test(n, w, Conjecture::PrimeStride, None, opts))
}

/// Tests `γ(KG_n) <= ⌈2n/p^k⌉`; divisibility is not required.
pub fn test_conjecture2(n: u64, p: u64, k: u32, opts: &ScanOptions) -> Result<ConjectureTest, ScanError> {
    check_even_order(n)?;
    if k < 2 {
        return Err(ScanError::Precondition(format!("exponent {k} is below 2")));
    }
    let w = PrimePowerWitness::new(p, k)?;
    let limit = ceil_log2(n) as u64;
    if w.totient() >= limit {
        return Err(ScanError::Precondition(format!(
            "φ({}) = {} is not below ⌈log₂ {n}⌉ = {limit}",
            w.value,
            w.totient()
        )));
    }
    if !w.is_primitive {
        return Err(ScanError::Precondition(format!(
            "2 is not a primitive root modulo {}",
            w.value
        )));
    }
    Ok(run_test(n, w, Conjecture::PrimePowerStride, None, opts))
}

/// Greedily adds at most `extra` vertices to `set` (largest new coverage,
/// lowest index on ties). Returns whether the result dominates.
fn complete_greedily(g: &KnodelGraph, set: &mut VertexSet, extra: u64) -> bool {
    let n = g.n();
    let mut covered = vec![false; n];
    for v in set.iter() {
        covered[v] = true;
        for y in g.neighbor_iter(v) {
            covered[y] = true;
        }
    }
    for _ in 0..extra {
        let uncovered: Vec<usize> = (0..n).filter(|&v| !covered[v]).collect();
        if uncovered.is_empty() {
            return true;
        }
        // only closed neighbours of uncovered vertices can gain anything
        let mut cands: Vec<usize> = uncovered
            .iter()
            .flat_map(|&u| std::iter::once(u).chain(g.neighbor_iter(u)))
            .collect();
        cands.sort_unstable();
        cands.dedup();
        let gain = |v: usize| {
            !covered[v] as usize + g.neighbor_iter(v).filter(|&y| !covered[y]).count()
        };
        let best = cands
            .into_iter()
            .map(|v| (gain(v), v))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .map(|(_, v)| v)
            .expect("uncovered vertices have candidates");
        set.insert(best);
        covered[best] = true;
        for y in g.neighbor_iter(best) {
            covered[y] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// Known oracle outcome passed down from a scan, so the test does not
/// search again.
struct Known<'a> {
    lower: u64,
    upper: u64,
    best: Option<&'a VertexSet>,
}

fn run_test(
    n: u64,
    w: PrimePowerWitness,
    conjecture: Conjecture,
    known: Option<Known<'_>>,
    opts: &ScanOptions,
) -> ConjectureTest {
    let target = conjecture.target(n, w.value);
    let mut test = ConjectureTest {
        conjecture,
        p: w.p,
        e: w.e,
        q: w.value,
        target,
        verdict: Verdict::Inconclusive,
        evidence: Evidence::None,
        translation: None,
        witness: None,
    };
    let supported = |test: &mut ConjectureTest, evidence, set: VertexSet| {
        test.verdict = Verdict::Supported;
        test.evidence = evidence;
        test.witness = Some(set);
    };

    let graph = (n <= opts.set_limit)
        .then(|| KnodelGraph::build(n as usize, None).ok())
        .flatten();
    if let Some(g) = &graph {
        let period = conjecture.period(w.value);
        let base_order = n - n % period;
        if base_order == n {
            let set = conjecture.base_set(n, w.value);
            if set.len() as u64 <= target && certify(g, &set).is_ok_and(|c| c.dominating) {
                supported(&mut test, Evidence::Construction, set);
                return test;
            }
        } else if base_order >= period && n <= opts.heuristic_limit {
            let base = conjecture.base_set(base_order, w.value);
            let slack = target.saturating_sub(base.len() as u64);
            let by = n - base_order;
            let tails = (0..base_order).step_by(2).map(|cut| Translation::Tail { cut, by });
            let rotations = (0..period).map(|by| Translation::Rotate { by });
            for tr in tails.chain(rotations) {
                let mut set = VertexSet::new(n as usize);
                for v in base.iter() {
                    set.insert((tr.apply(v as u64) % n) as usize);
                }
                if complete_greedily(g, &mut set, slack) && set.len() as u64 <= target {
                    test.translation = Some(tr);
                    supported(&mut test, Evidence::TranslatedHeuristic, set);
                    return test;
                }
            }
        }
    }

    if let Some(k) = known {
        if k.upper <= target {
            if let Some(best) = k.best {
                supported(&mut test, Evidence::Search, best.clone());
                return test;
            }
        }
        if k.lower > target {
            test.verdict = Verdict::Refuted;
            test.evidence = Evidence::Search;
            return test;
        }
    }

    if opts.oracle_applies(n) {
        if let Some(g) = &graph {
            match exists_dominating_of_size(g, target as usize, &opts.solve_options()) {
                Ok(Decision::Yes(set)) => supported(&mut test, Evidence::Search, set),
                Ok(Decision::No) => {
                    test.verdict = Verdict::Refuted;
                    test.evidence = Evidence::Search;
                }
                Ok(Decision::Inconclusive { .. }) | Err(_) => {}
            }
        }
    }
    test
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructedSet {
    pub construction: Construction,
    pub q: u64,
    pub size: u64,
    pub dominating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OracleOutcome {
    Skipped,
    Exact {
        gamma: u64,
        nodes_explored: u64,
        time_ms: u64,
        witness: VertexSet,
    },
    Inconclusive {
        lower: u64,
        upper: u64,
        nodes_explored: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        best: Option<VertexSet>,
    },
    Failed {
        message: String,
    },
}

impl OracleOutcome {
    pub fn is_conclusive(&self) -> bool {
        matches!(self, OracleOutcome::Exact { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: u64,
    pub degree: u32,
    pub factorization: String,
    pub prime_witnesses: Vec<PrimePowerWitness>,
    pub prime_power_witnesses: Vec<PrimePowerWitness>,
    pub constructed: Vec<ConstructedSet>,
    pub bounds: Option<BoundReport>,
    pub oracle: OracleOutcome,
    pub gamma: Option<u64>,
    pub conj1: Option<ConjectureReport>,
    pub conj2: Option<ConjectureReport>,
    pub conj3_slack: Option<u64>,
    pub sandwich_ok: bool,
    pub errors: Vec<String>,
}

impl ScanRecord {
    pub fn has_witness(&self) -> bool {
        !self.prime_witnesses.is_empty() || !self.prime_power_witnesses.is_empty()
    }

    fn conclusiveness(&self) -> usize {
        let tests = |r: &Option<ConjectureReport>| {
            r.as_ref()
                .map_or(0, |r| r.tests.iter().filter(|t| t.verdict.is_conclusive()).count())
        };
        1000 * self.oracle.is_conclusive() as usize + tests(&self.conj1) + tests(&self.conj2)
    }
}

/// One record for even `n >= 6`. Failures are recorded in `errors`.
pub fn scan_one(n: u64, opts: &ScanOptions) -> ScanRecord {
    let mut rec = ScanRecord {
        n,
        degree: floor_log2(n.max(1)),
        factorization: String::new(),
        prime_witnesses: Vec::new(),
        prime_power_witnesses: Vec::new(),
        constructed: Vec::new(),
        bounds: None,
        oracle: OracleOutcome::Skipped,
        gamma: None,
        conj1: None,
        conj2: None,
        conj3_slack: None,
        sandwich_ok: true,
        errors: Vec::new(),
    };
    if let Err(e) = check_even_order(n) {
        rec.errors.push(e.to_string());
        return rec;
    }
    match factorize(n) {
        Ok(f) => rec.factorization = f.to_string(),
        Err(e) => rec.errors.push(e.to_string()),
    }
    match witnesses(n) {
        Ok((primes, powers)) => {
            rec.prime_witnesses = primes;
            rec.prime_power_witnesses = powers;
        }
        Err(e) => rec.errors.push(e.to_string()),
    }

    if n <= opts.set_limit {
        let built = rec
            .prime_witnesses
            .iter()
            .map(|w| construct_prime(n, w))
            .chain(rec.prime_power_witnesses.iter().map(|w| construct_prime_power(n, w)));
        let graph = KnodelGraph::build(n as usize, None);
        for result in built {
            match (result, &graph) {
                (Ok(c), Ok(g)) => rec.constructed.push(ConstructedSet {
                    construction: c.construction,
                    q: c.witness.value,
                    size: c.set.len() as u64,
                    dominating: certify(g, &c.set).is_ok_and(|cert| cert.dominating),
                }),
                (Err(e), _) => rec.errors.push(e.to_string()),
                (_, Err(e)) => rec.errors.push(e.to_string()),
            }
        }
    }

    let mut bounds = match best_bound(n) {
        Ok(b) => Some(b),
        Err(e) => {
            rec.errors.push(e.to_string());
            None
        }
    };

    if opts.oracle_applies(n) {
        rec.oracle = match KnodelGraph::build(n as usize, None)
            .map_err(ScanError::from)
            .and_then(|g| Ok(exact_gamma(&g, &opts.solve_options())?))
        {
            Ok(Solve::Exact(r)) => OracleOutcome::Exact {
                gamma: r.gamma,
                nodes_explored: r.nodes_explored,
                time_ms: r.elapsed.as_millis() as u64,
                witness: r.witness,
            },
            Ok(Solve::Inconclusive(i)) => OracleOutcome::Inconclusive {
                lower: i.lower,
                upper: i.upper,
                nodes_explored: i.nodes_explored,
                best: i.best,
            },
            Err(e) => OracleOutcome::Failed {
                message: e.to_string(),
            },
        };
    }

    if let OracleOutcome::Exact { gamma, .. } = rec.oracle {
        rec.gamma = Some(gamma);
        rec.conj3_slack = Some(gamma.saturating_sub(berge_lower(n, rec.degree as u64)));
    }
    if let Some(b) = bounds.as_mut() {
        b.gamma_exact = rec.gamma;
        rec.sandwich_ok = b.sandwich_holds();
        if let OracleOutcome::Inconclusive { lower, .. } = rec.oracle {
            rec.sandwich_ok &= b.upper().map_or(true, |u| lower <= u);
        }
    }
    rec.bounds = bounds;

    if opts.conjectures {
        let known = || match &rec.oracle {
            OracleOutcome::Exact { gamma, witness, .. } => Some(Known {
                lower: *gamma,
                upper: *gamma,
                best: Some(witness),
            }),
            OracleOutcome::Inconclusive {
                lower, upper, best, ..
            } => Some(Known {
                lower: *lower,
                upper: *upper,
                best: best.as_ref(),
            }),
            _ => None,
        };
        let c1 = prime_stride_candidates(n)
            .into_iter()
            .map(|w| run_test(n, w, Conjecture::PrimeStride, known(), opts))
            .collect();
        let c2 = prime_power_candidates(n)
            .into_iter()
            .map(|w| run_test(n, w, Conjecture::PrimePowerStride, known(), opts))
            .collect();
        rec.conj1 = Some(ConjectureReport::from_tests(c1));
        rec.conj2 = Some(ConjectureReport::from_tests(c2));
    }
    rec
}

fn check_range(lo: u64, hi: u64) -> Result<(), ScanError> {
    if lo < 6 || lo > hi || lo % 2 != 0 || hi % 2 != 0 {
        return Err(ScanError::BadRange { lo, hi });
    }
    Ok(())
}

/// Records for every even `n` in `lo..=hi`, sorted by `n`.
pub fn scan_range(lo: u64, hi: u64, opts: &ScanOptions) -> Result<Vec<ScanRecord>, ScanError> {
    let mut out = Vec::new();
    scan_range_with(lo, hi, opts, |r| out.push(r))?;
    Ok(out)
}

/// Like [`scan_range`] but hands records to `sink` in order of `n`, one
/// chunk at a time, so long scans produce output as they go.
pub fn scan_range_with<F: FnMut(ScanRecord)>(
    lo: u64,
    hi: u64,
    opts: &ScanOptions,
    mut sink: F,
) -> Result<(), ScanError> {
    check_range(lo, hi)?;
    let ns: Vec<u64> = (lo..=hi).step_by(2).collect();
    let chunk = if opts.execution.is_parallel() { 64 } else { 1 };
    for part in ns.chunks(chunk) {
        for rec in par::map(part.to_vec(), opts.execution, |n| scan_one(n, opts)) {
            sink(rec);
        }
    }
    Ok(())
}

/// Merges a re-run into earlier records: per `n`, the more conclusive
/// record wins, the newer one on ties. Output is sorted by `n`.
pub fn merge_records(old: Vec<ScanRecord>, new: Vec<ScanRecord>) -> Vec<ScanRecord> {
    let mut by_n = std::collections::BTreeMap::new();
    for rec in old.into_iter().chain(new) {
        match by_n.entry(rec.n) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(rec);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                if rec.conclusiveness() >= o.get().conclusiveness() {
                    o.insert(rec);
                }
            }
        }
    }
    by_n.into_values().collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub supported: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub not_applicable: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Supported => self.supported += 1,
            Verdict::Refuted => self.refuted += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
            Verdict::NotApplicable => self.not_applicable += 1,
        }
    }
}

/// A refuted conjecture instance: `gamma` is the exact value when known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: u64,
    pub q: u64,
    pub target: u64,
    pub gamma: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub with_witness: usize,
    pub witness_fraction: f64,
    pub solved: usize,
    pub oracle_inconclusive: Vec<u64>,
    /// `(n, slack)` of the largest slack among solved `n`.
    pub max_slack: Option<(u64, u64)>,
    pub mean_slack: Option<f64>,
    /// Slack is compared against `slack_factor · log₂ n`.
    pub slack_factor: f64,
    pub slack_exceeding: Vec<u64>,
    /// Counted per tested `(n, q)` pair.
    pub conj1: VerdictCounts,
    pub conj2: VerdictCounts,
    pub conj1_refuted: Vec<Counterexample>,
    pub conj2_refuted: Vec<Counterexample>,
    pub heuristic_witnesses: usize,
    pub sandwich_violations: Vec<u64>,
    pub errors: usize,
}

pub fn summarize(records: &[ScanRecord], slack_factor: f64) -> Summary {
    let with_witness = records.iter().filter(|r| r.has_witness()).count();
    let slacks: Vec<(u64, u64)> = records
        .iter()
        .filter_map(|r| r.conj3_slack.map(|s| (r.n, s)))
        .collect();
    let mut s = Summary {
        records: records.len(),
        with_witness,
        witness_fraction: if records.is_empty() {
            0.0
        } else {
            with_witness as f64 / records.len() as f64
        },
        solved: slacks.len(),
        oracle_inconclusive: records
            .iter()
            .filter(|r| matches!(r.oracle, OracleOutcome::Inconclusive { .. }))
            .map(|r| r.n)
            .collect(),
        max_slack: slacks.iter().copied().max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0))),
        mean_slack: (!slacks.is_empty())
            .then(|| slacks.iter().map(|s| s.1 as f64).sum::<f64>() / slacks.len() as f64),
        slack_factor,
        slack_exceeding: slacks
            .iter()
            .filter(|(n, s)| *s as f64 > slack_factor * (*n as f64).log2())
            .map(|s| s.0)
            .collect(),
        conj1: VerdictCounts::default(),
        conj2: VerdictCounts::default(),
        conj1_refuted: Vec::new(),
        conj2_refuted: Vec::new(),
        heuristic_witnesses: 0,
        sandwich_violations: records.iter().filter(|r| !r.sandwich_ok).map(|r| r.n).collect(),
        errors: records.iter().map(|r| r.errors.len()).sum(),
    };
    for r in records {
        for (report, counts, refuted) in [
            (&r.conj1, &mut s.conj1, &mut s.conj1_refuted),
            (&r.conj2, &mut s.conj2, &mut s.conj2_refuted),
        ] {
            let Some(report) = report else { continue };
            if report.tests.is_empty() {
                counts.add(Verdict::NotApplicable);
            }
            for t in &report.tests {
                counts.add(t.verdict);
                if t.verdict == Verdict::Refuted {
                    refuted.push(Counterexample {
                        n: r.n,
                        q: t.q,
                        target: t.target,
                        gamma: r.gamma,
                    });
                }
                s.heuristic_witnesses += (t.evidence == Evidence::TranslatedHeuristic) as usize;
            }
        }
    }
    s
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[u64]| {
            if v.is_empty() {
                "none".to_string()
            } else {
                v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
            }
        };
        let cex = |v: &[Counterexample]| {
            if v.is_empty() {
                return "none".to_string();
            }
            v.iter()
                .map(|c| match c.gamma {
                    Some(g) => format!("n={} q={} target={} gamma={}", c.n, c.q, c.target, g),
                    None => format!("n={} q={} target={}", c.n, c.q, c.target),
                })
                .collect::<Vec<_>>()
                .join("; ")
        };
        let counts = |c: &VerdictCounts| {
            format!(
                "supported={} refuted={} inconclusive={} n/a={}",
                c.supported, c.refuted, c.inconclusive, c.not_applicable
            )
        };
        writeln!(f, "records              {}", self.records)?;
        writeln!(
            f,
            "with witness         {} ({:.3})",
            self.with_witness, self.witness_fraction
        )?;
        writeln!(f, "solved exactly       {}", self.solved)?;
        writeln!(f, "oracle inconclusive  {}", list(&self.oracle_inconclusive))?;
        match self.max_slack {
            Some((n, s)) => writeln!(
                f,
                "slack max/mean       {s} (n={n}) / {:.3}",
                self.mean_slack.unwrap_or(0.0)
            )?,
            None => writeln!(f, "slack max/mean       -")?,
        }
        writeln!(
            f,
            "slack > {}·log2(n)    {}",
            self.slack_factor,
            list(&self.slack_exceeding)
        )?;
        writeln!(f, "conj1                {}", counts(&self.conj1))?;
        writeln!(f, "conj1 refuted        {}", cex(&self.conj1_refuted))?;
        writeln!(f, "conj2                {}", counts(&self.conj2))?;
        writeln!(f, "conj2 refuted        {}", cex(&self.conj2_refuted))?;
        writeln!(f, "heuristic witnesses  {}", self.heuristic_witnesses)?;
        writeln!(f, "sandwich violations  {}", list(&self.sandwich_violations))?;
        write!(f, "errors               {}", self.errors)
    }
}
