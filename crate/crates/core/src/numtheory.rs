//! Elementary number theory: primality, factorization, Euler's totient,
//! multiplicative order and primitive roots, plus the Wieferich predicate
//! and the prime sum used by the primitive-root/Wieferich density heuristic.
//!
//! Everything here works on `u64` inputs. Modular products go through `u128`
//! so moduli up to `2^64 - 1` are safe.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("input must be positive")]
    Zero,
    #[error("{0} has no prime factorization (need n >= 2)")]
    NoFactorization(u64),
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{a} is not coprime to {m}; its order is undefined")]
    NotCoprime { a: u64, m: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{p}^{e} does not fit in 64 bits")]
    Overflow { p: u64, e: u32 },
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut base = base % m;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `⌊log₂ n⌋` for `n >= 1`.
pub fn floor_log2(n: u64) -> u32 {
    debug_assert!(n > 0);
    63 - n.leading_zeros()
}

/// `⌈log₂ n⌉` for `n >= 1`.
pub fn ceil_log2(n: u64) -> u32 {
    debug_assert!(n > 0);
    if n.is_power_of_two() {
        floor_log2(n)
    } else {
        floor_log2(n) + 1
    }
}

// Deterministic for every n < 2^64 (first twelve primes as witnesses).
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization `n = Π pᵢ^eᵢ` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// `φ(n) = Π p^(e-1) (p - 1)`.
    pub fn totient(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e - 1) * (p - 1))
            .product()
    }

    /// Distinct divisors of `n`, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl std::fmt::Display for Factorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial division, with a Miller–Rabin check on the cofactor after every
/// factor found so a large prime cofactor ends the loop early.
pub fn factorize(n: u64) -> Result<Factorization, NumError> {
    if n < 2 {
        return Err(NumError::NoFactorization(n));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    let mut check_prime = true;
    while rest > 1 {
        if check_prime && is_prime(rest) {
            factors.push((rest, 1));
            break;
        }
        check_prime = false;
        if d.saturating_mul(d) > rest {
            factors.push((rest, 1));
            break;
        }
        if rest % d == 0 {
            let mut e = 0;
            while rest % d == 0 {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
            check_prime = true;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    Ok(Factorization { n, factors })
}

/// Euler's totient. `φ(1) = 1`.
pub fn totient(n: u64) -> Result<u64, NumError> {
    match n {
        0 => Err(NumError::Zero),
        1 => Ok(1),
        _ => Ok(factorize(n)?.totient()),
    }
}

/// Least `k >= 1` with `a^k ≡ 1 (mod m)`.
///
/// Starts from `φ(m)` and strips prime factors while the power stays 1.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64, NumError> {
    if m < 2 {
        return Err(NumError::ModulusTooSmall(m));
    }
    if gcd(a % m, m) != 1 {
        return Err(NumError::NotCoprime { a, m });
    }
    let phi = totient(m)?;
    if phi == 1 {
        return Ok(1);
    }
    let mut order = phi;
    for p in factorize(phi)?.primes() {
        while order % p == 0 && pow_mod(a, order / p, m) == 1 {
            order /= p;
        }
    }
    Ok(order)
}

/// True iff `gcd(a, m) = 1` and `a` has order `φ(m)` modulo `m`.
pub fn is_primitive_root(a: u64, m: u64) -> bool {
    if m < 2 || gcd(a % m, m) != 1 {
        return false;
    }
    match (multiplicative_order(a, m), totient(m)) {
        (Ok(ord), Ok(phi)) => ord == phi,
        _ => false,
    }
}

/// `2^(p-1) ≡ 1 (mod p²)`.
pub fn is_wieferich(p: u64) -> Result<bool, NumError> {
    if p % 2 == 0 || !is_prime(p) {
        return Err(NumError::NotOddPrime(p));
    }
    let p2 = (p as u128 * p as u128)
        .try_into()
        .map_err(|_| NumError::Overflow { p, e: 2 })?;
    Ok(pow_mod(2, p - 1, p2) == 1)
}

/// An odd prime power `p^e` together with the order of 2 modulo it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerWitness {
    pub p: u64,
    pub e: u32,
    pub value: u64,
    pub order_of_two: u64,
    pub is_primitive: bool,
}

impl PrimePowerWitness {
    pub fn new(p: u64, e: u32) -> Result<Self, NumError> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(NumError::NotOddPrime(p));
        }
        if e == 0 {
            return Err(NumError::Zero);
        }
        let value = p.checked_pow(e).ok_or(NumError::Overflow { p, e })?;
        let order_of_two = multiplicative_order(2, value)?;
        Ok(Self {
            p,
            e,
            value,
            order_of_two,
            is_primitive: order_of_two == value - value / p,
        })
    }

    pub fn totient(&self) -> u64 {
        self.value - self.value / self.p
    }
}

/// Primes below `limit`, by the sieve of Eratosthenes.
pub fn primes_below(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; limit];
    let mut primes = Vec::new();
    for i in 2..limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// `φ(k)` for every `k < limit` (index 0 holds 0).
pub fn totient_table(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut phi: Vec<u64> = (0..limit as u64).collect();
    for i in 2..limit {
        if phi[i] == i as u64 {
            let mut j = i;
            while j < limit {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    phi
}

/// `Σ_{p < x, p prime} φ(p-1) / (p (p-1))`.
///
/// Each term is the heuristic probability that 2 is a primitive root
/// modulo `p` and `p` is Wieferich, under the independence assumptions.
pub fn heuristic_sum(x: u64) -> f64 {
    if x < 3 {
        return 0.0;
    }
    let phi = totient_table(x);
    primes_below(x)
        .into_iter()
        .map(|p| phi[(p - 1) as usize] as f64 / (p as f64 * (p - 1) as f64))
        .sum()
}
