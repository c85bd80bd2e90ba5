//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fail. The oracle sweep over 6..=128 is shared by the
//! criteria that need exact values.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use knodel_core::construct::{construct_prime, construct_prime_power, witnesses};
use knodel_core::exact::{
    fixed_degree_gamma_range_check, Decision, DomGraph, Method, SolveOptions,
};
use knodel_core::knodel::KnodelGraph;
use knodel_core::numtheory::{heuristic_sum, is_primitive_root, is_wieferich, primes_below};
use knodel_core::scan::{scan_range, summarize, OracleOutcome, ScanOptions, ScanRecord, Verdict};
use knodel_core::verify::{certify, remainder_lower, tight_set_check};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn run(id: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if let Some(limit) = limit {
        if took > limit {
            out.pass = false;
            out.detail = format!("{}; over the {:?} limit", out.detail, limit);
        }
    }
    println!(
        "{} [{id:2}] {name} ({:.1}s) {}",
        if out.pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        out.detail
    );
    out.pass
}

fn ilog2(n: usize) -> u32 {
    let mut k = 0;
    while 2usize << k <= n {
        k += 1;
    }
    k
}

fn naive_order(a: u64, m: u64) -> Option<u64> {
    let mut x = a % m;
    for k in 1..=m {
        if x == 1 {
            return Some(k);
        }
        x = x * a % m;
    }
    None
}

fn naive_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn naive_phi(m: u64) -> u64 {
    (1..=m).filter(|&a| naive_gcd(a, m) == 1).count() as u64
}

fn naive_gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { naive_gcd(b, a % b) }
}

fn ceil_log2(n: u64) -> u64 {
    let mut k = 0;
    while 1u64 << k < n {
        k += 1;
    }
    k
}

/// Primes `p` with `p | n`, `p <= ⌈log₂ n⌉` and 2 of order `p - 1` mod `p`.
fn expected_prime_witnesses(n: u64) -> BTreeSet<u64> {
    (3..=ceil_log2(n))
        .filter(|&p| naive_prime(p) && n % p == 0 && naive_order(2, p) == Some(p - 1))
        .collect()
}

/// `(p, k)` with `k >= 2`, `p^k | n`, `φ(p^k) < ⌈log₂ n⌉` and 2 primitive mod `p^k`.
fn expected_power_witnesses(n: u64) -> BTreeSet<(u64, u32)> {
    let mut out = BTreeSet::new();
    for p in (3..=ceil_log2(n)).filter(|&p| naive_prime(p)) {
        let mut k = 2;
        while n % p.pow(k) == 0 {
            let q = p.pow(k);
            let phi = naive_phi(q);
            if phi < ceil_log2(n) && naive_order(2, q) == Some(phi) {
                out.insert((p, k));
            }
            k += 1;
        }
    }
    out
}

fn structure() -> Outcome {
    let mut violations = Vec::new();
    for n in (6..=4096usize).step_by(2) {
        let g = match KnodelGraph::build(n, None) {
            Ok(g) => g,
            Err(e) => {
                violations.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let k = ilog2(n);
        if g.degree() != k {
            violations.push(format!("n={n}: degree {}", g.degree()));
            continue;
        }
        for x in 0..n {
            let want: BTreeSet<usize> = (1..=k).map(|t| ((1usize << t) - 1 + n - x % n) % n).collect();
            let got: Vec<usize> = g.neighbor_iter(x).collect();
            let bad = got.len() != k as usize
                || got.iter().copied().collect::<BTreeSet<_>>() != want
                || got.iter().any(|&y| y == x || (x + y) % 2 == 0 || !g.is_edge(y, x));
            if bad {
                violations.push(format!("n={n} x={x}"));
                break;
            }
        }
    }
    Outcome::new(
        violations.is_empty(),
        format!("{} violations {}", violations.len(), violations.iter().take(3).cloned().collect::<Vec<_>>().join(", ")),
    )
}

fn construction_sweep(powers: bool) -> Outcome {
    let (mut checked, mut failures) = (0, Vec::new());
    for n in (6..=20_000u64).step_by(2) {
        let (ps, qs) = witnesses(n).expect("even order");
        let mismatch = if powers {
            qs.iter().map(|w| (w.p, w.e)).collect::<BTreeSet<_>>() != expected_power_witnesses(n)
        } else {
            ps.iter().map(|w| w.p).collect::<BTreeSet<_>>() != expected_prime_witnesses(n)
        };
        if mismatch {
            failures.push(format!("n={n}: witness set"));
        }
        let list = if powers { &qs } else { &ps };
        if list.is_empty() {
            continue;
        }
        let g = KnodelGraph::build(n as usize, None).unwrap();
        for w in list {
            let (built, size) = if powers {
                (construct_prime_power(n, w), 2 * n / w.value)
            } else {
                (construct_prime(n, w), n / w.p)
            };
            checked += 1;
            match built {
                Ok(c) if c.set.len() as u64 == size && certify(&g, &c.set).unwrap().dominating => {}
                _ => failures.push(format!("n={n} q={}", w.value)),
            }
        }
    }
    Outcome::new(
        failures.is_empty() && checked > 0,
        format!("{checked} sets certified, {} failures {}", failures.len(), failures.iter().take(3).cloned().collect::<Vec<_>>().join(", ")),
    )
}

fn known_values() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (n, want) in [(20usize, 4u64), (30, 6)] {
        let start = Instant::now();
        let g = DomGraph::from_knodel(&KnodelGraph::build(n, None).unwrap());
        let got = g.solve(&SolveOptions::default()).unwrap().gamma();
        let took = start.elapsed();
        pass &= got == Some(want) && took < Duration::from_secs(5);
        notes.push(format!("γ({n})={got:?} in {:.3}s", took.as_secs_f64()));
    }
    Outcome::new(pass, notes.join(", "))
}

fn self_consistency(sweep: &[ScanRecord], sweep_time: Duration) -> Outcome {
    let exhaustive = SolveOptions {
        method: Method::Exhaustive,
        ..SolveOptions::default()
    };
    let mut disagree = Vec::new();
    for n in (6..=24usize).step_by(2) {
        let g = DomGraph::from_knodel(&KnodelGraph::build(n, None).unwrap());
        let a = g.solve(&exhaustive).unwrap().gamma();
        let b = g.solve(&SolveOptions::default()).unwrap().gamma();
        if a.is_none() || a != b {
            disagree.push(n);
        }
    }
    let mut breaches = Vec::new();
    let mut inconclusive = Vec::new();
    for r in sweep {
        if !r.sandwich_ok {
            let b = r.bounds.as_ref().unwrap();
            breaches.push(format!(
                "n={} lower={} gamma={:?} upper={:?}",
                r.n,
                b.lower(),
                r.gamma,
                b.upper()
            ));
        }
        if let OracleOutcome::Inconclusive { lower, upper, .. } = r.oracle {
            inconclusive.push(format!("n={} in [{lower},{upper}]", r.n));
        }
    }
    let in_time = sweep_time <= Duration::from_secs(600);
    Outcome::new(
        disagree.is_empty() && breaches.is_empty() && in_time,
        format!(
            "exhaustive/B&B disagree at {:?}; sandwich breaches [{}]; inconclusive [{}]; sweep {:.0}s",
            disagree,
            breaches.join(", "),
            inconclusive.join(", "),
            sweep_time.as_secs_f64()
        ),
    )
}

fn tight_sets(sweep: &[ScanRecord]) -> Outcome {
    let (mut checked, mut failures) = (Vec::new(), Vec::new());
    for r in sweep {
        let n = r.n as usize;
        let k1 = r.degree as usize + 1;
        let OracleOutcome::Exact { gamma, witness, .. } = &r.oracle else { continue };
        if n % k1 != 0 || *gamma as usize != n / k1 {
            continue;
        }
        let g = KnodelGraph::build(n, None).unwrap();
        match tight_set_check(&g, witness) {
            Ok(v) if v.holds() => checked.push(n),
            _ => failures.push(n),
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!("tight at {checked:?}; failures {failures:?}"),
    )
}

fn remainder_bound(sweep: &[ScanRecord]) -> Outcome {
    // the oracle must not be handed the bound it is checking
    let opts = SolveOptions {
        remainder_bound: false,
        ..SolveOptions::default()
    };
    let (mut checked, mut failures) = (Vec::new(), Vec::new());
    for n in (6..=128usize).step_by(2) {
        let g = KnodelGraph::build(n, None).unwrap();
        let Some(lower) = remainder_lower(n as u64, g.degree() as u64) else { continue };
        let decision = DomGraph::from_knodel(&g).decide(lower as usize - 1, &opts).unwrap();
        let swept = sweep.iter().find(|r| r.n == n as u64).and_then(|r| r.gamma);
        if decision == Decision::No && swept.map_or(true, |g| g >= lower) {
            checked.push(format!("{n}:{lower}"));
        } else {
            failures.push(format!("n={n} lower={lower} decision={}", match decision {
                Decision::Yes(_) => "smaller set found",
                Decision::No => "none smaller",
                Decision::Inconclusive { .. } => "inconclusive",
            }));
        }
    }
    Outcome::new(
        failures.is_empty() && !checked.is_empty(),
        format!("n:lower {}; failures [{}]", checked.join(" "), failures.join(", ")),
    )
}

fn fixed_degree() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for (degree, from) in [(3u32, 8usize), (4, 10)] {
        for n in (from..=40).step_by(2) {
            count += 1;
            let c = fixed_degree_gamma_range_check(n, degree, &SolveOptions::default()).unwrap();
            if c.in_range() != Some(true) {
                failures.push(format!("k={degree} n={n} γ={:?} range [{},{}]", c.gamma, c.low, c.high));
            }
        }
    }
    Outcome::new(failures.is_empty(), format!("{count} orders, failures [{}]", failures.join(", ")))
}

fn number_theory() -> Outcome {
    let primes = primes_below(64);
    let lib: Vec<u64> = primes.iter().copied().filter(|&p| is_primitive_root(2, p)).collect();
    let naive: Vec<u64> = (3..64)
        .filter(|&p| naive_prime(p) && naive_order(2, p) == Some(p - 1))
        .collect();
    let want = vec![3, 5, 11, 13, 19, 29, 37, 53, 59, 61];
    // 2 is outside the domain (even input is rejected)
    let wieferich: Vec<u64> = primes_below(100_000)
        .into_iter()
        .filter(|&p| p > 2 && is_wieferich(p).unwrap())
        .collect();
    Outcome::new(
        lib == want && naive == want && wieferich == [1093, 3511] && is_wieferich(2).is_err(),
        format!("2 primitive mod {lib:?}; Wieferich below 1e5 {wieferich:?}"),
    )
}

fn heuristic() -> Outcome {
    let at3 = heuristic_sum(3);
    let values: Vec<f64> = [1_000, 10_000, 100_000, 1_000_000].map(heuristic_sum).to_vec();
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = diffs.iter().all(|&d| d > 0.0);
    let shrinking = diffs.windows(2).all(|w| w[1] < w[0]);
    Outcome::new(
        at3 == 0.5 && increasing && shrinking,
        format!("S(3)={at3}, S(10^3..10^6)={values:.6?}, steps={diffs:.6?}"),
    )
}

fn conjectures(sweep: &[ScanRecord]) -> Outcome {
    let s = summarize(sweep, 1.0);
    let refuted = s.conj1.refuted + s.conj2.refuted;
    let list = |v: &[knodel_core::scan::Counterexample]| {
        v.iter()
            .map(|c| format!("n={} q={} target={} γ={:?}", c.n, c.q, c.target, c.gamma))
            .collect::<Vec<_>>()
            .join("; ")
    };
    let unsettled = sweep
        .iter()
        .flat_map(|r| r.conj1.iter().chain(r.conj2.iter()))
        .flat_map(|c| c.tests.iter())
        .filter(|t| t.verdict == Verdict::Inconclusive)
        .count();
    let slack = s
        .max_slack
        .map_or("none".to_string(), |(n, v)| format!("{v} at n={n}"));
    Outcome::new(
        refuted == 0,
        format!(
            "conj1 {}/{} supported, refuted [{}]; conj2 {}/{} supported, refuted [{}]; {unsettled} inconclusive; max slack {slack}",
            s.conj1.supported,
            s.conj1.supported + s.conj1.refuted + s.conj1.inconclusive,
            list(&s.conj1_refuted),
            s.conj2.supported,
            s.conj2.supported + s.conj2.refuted + s.conj2.inconclusive,
            list(&s.conj2_refuted),
        ),
    )
}

fn main() -> ExitCode {
    let mut all = true;
    all &= run(1, "structure for even n in [6, 4096]", Some(Duration::from_secs(30)), structure);
    all &= run(2, "prime stride sets for n <= 20000", Some(Duration::from_secs(120)), || construction_sweep(false));
    all &= run(3, "prime power sets for n <= 20000", None, || construction_sweep(true));
    all &= run(4, "exact values at n = 20, 30", None, known_values);

    println!("     oracle sweep over even n in [6, 128] ...");
    let start = Instant::now();
    let opts = ScanOptions {
        oracle_max: 128,
        conjectures: true,
        ..ScanOptions::default()
    };
    let sweep = scan_range(6, 128, &opts).expect("valid range");
    let sweep_time = start.elapsed();

    all &= run(5, "oracle self-consistency and sandwich", None, || self_consistency(&sweep, sweep_time));
    all &= run(6, "tight sets are efficient and balanced", None, || tight_sets(&sweep));
    all &= run(7, "remainder lower bound", None, || remainder_bound(&sweep));
    all &= run(8, "fixed-degree ranges", None, fixed_degree);
    all &= run(9, "number theory", Some(Duration::from_secs(30)), number_theory);
    all &= run(10, "heuristic sum", None, heuristic);
    all &= run(11, "conjecture scan over [6, 128]", None, || conjectures(&sweep));

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
