//! Elementary number theory over `u64`.
//!
//! Everything here is a pure function of its inputs plus a process-wide
//! prime sieve that is built once on first use and read-only afterwards.
//! Arithmetic is checked: an overflow is reported as [`KernelError::Overflow`]
//! rather than wrapping.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use thiserror::Error;

/// Default upper bound of the cached sieve.
pub const DEFAULT_SIEVE_BOUND: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_SIEVE_BOUND`].
pub const SIEVE_BOUND_ENV: &str = "ACM_SIEVE_BOUND";

/// Default number of candidates scanned by [`find_prime_in_class`].
pub const DEFAULT_PRIME_SEARCH_CAP: u64 = 10_000_000;

const MIN_SIEVE_BOUND: u64 = 100;
const MAX_SIEVE_BOUND: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("{value} is out of range: {expected}")]
    OutOfRange { value: u64, expected: &'static str },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{a} is not coprime to {n}")]
    NotCoprime { a: u64, n: u64 },
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error("no prime congruent to {residue} mod {modulus} found within {cap} candidates")]
    SearchCapExceeded {
        residue: u64,
        modulus: u64,
        cap: u64,
    },
}

pub type KernelResult<T> = Result<T, KernelError>;

/// Canonical factorization of a positive integer: `(prime, exponent)` pairs
/// sorted by prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeFactorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl PrimeFactorization {
    /// Factorization of 1 (no prime factors).
    pub fn one() -> Self {
        Self {
            value: 1,
            factors: Vec::new(),
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p`, zero when `p` does not divide the value.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Number of distinct prime divisors.
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    /// Sum of the exponents (prime factors counted with multiplicity).
    pub fn total_multiplicity(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let current = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..current {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
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

/// Smallest-prime-factor table plus the prime list up to a bound.
#[derive(Debug)]
pub struct PrimeSieve {
    bound: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl PrimeSieve {
    pub fn new(bound: u64) -> Self {
        let bound = bound.clamp(MIN_SIEVE_BOUND, MAX_SIEVE_BOUND);
        let n = bound as usize;
        let mut spf = vec![0u32; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u64);
            }
            let si = spf[i];
            for &p in &primes {
                let p32 = p as u32;
                if p32 > si {
                    break;
                }
                let m = i * p as usize;
                if m > n {
                    break;
                }
                spf[m] = p32;
            }
        }
        Self { bound, spf, primes }
    }

    /// The process-wide sieve, sized by `ACM_SIEVE_BOUND` when set.
    pub fn global() -> &'static PrimeSieve {
        static SIEVE: OnceLock<PrimeSieve> = OnceLock::new();
        SIEVE.get_or_init(|| {
            let bound = std::env::var(SIEVE_BOUND_ENV)
                .ok()
                .and_then(|v| v.trim().parse::<u64>().ok())
                .unwrap_or(DEFAULT_SIEVE_BOUND);
            PrimeSieve::new(bound)
        })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n <= self.bound {
            n >= 2 && u64::from(self.spf[n as usize]) == n
        } else {
            miller_rabin(n)
        }
    }

    pub fn factor(&self, n: u64) -> KernelResult<PrimeFactorization> {
        if n < 2 {
            return Err(KernelError::OutOfRange {
                value: n,
                expected: "n >= 2",
            });
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let push = |p: u64, factors: &mut Vec<(u64, u32)>| match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        };
        let mut rest = n;
        if rest > self.bound {
            for &p in &self.primes {
                if p.saturating_mul(p) > rest || rest <= self.bound {
                    break;
                }
                while rest.is_multiple_of(p) {
                    rest /= p;
                    push(p, &mut factors);
                }
            }
        }
        if rest <= self.bound {
            while rest > 1 {
                let p = u64::from(self.spf[rest as usize]);
                rest /= p;
                push(p, &mut factors);
            }
        } else if miller_rabin(rest) {
            push(rest, &mut factors);
        } else {
            // Composite with every prime factor above the sieve bound.
            let mut d = self.bound + 1;
            if d.is_multiple_of(2) {
                d += 1;
            }
            while d.saturating_mul(d) <= rest {
                while rest.is_multiple_of(d) {
                    rest /= d;
                    push(d, &mut factors);
                }
                d += 2;
            }
            if rest > 1 {
                push(rest, &mut factors);
            }
        }
        Ok(PrimeFactorization { value: n, factors })
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

/// `a * b mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    mul_mod_u64(a % m, b % m, m)
}

/// `base^exp mod m` by square-and-multiply.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod_u64(result, b, m);
        }
        b = mul_mod_u64(b, b, m);
        exp >>= 1;
    }
    result
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

fn miller_rabin(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic primality test for all `u64`.
pub fn is_prime(n: u64) -> bool {
    PrimeSieve::global().is_prime(n)
}

pub fn factor_integer(n: u64) -> KernelResult<PrimeFactorization> {
    PrimeSieve::global().factor(n)
}

/// Largest `k` with `p^k | n`.
pub fn p_adic_valuation(n: u64, p: u64) -> KernelResult<u32> {
    if !is_prime(p) {
        return Err(KernelError::NotPrime(p));
    }
    if n == 0 {
        return Err(KernelError::OutOfRange {
            value: n,
            expected: "n >= 1",
        });
    }
    Ok(valuation(n, p))
}

/// Valuation without the primality check; `p >= 2`, `n >= 1`.
pub(crate) fn valuation(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

pub fn euler_phi(n: u64) -> KernelResult<u64> {
    match n {
        0 => Err(KernelError::OutOfRange {
            value: 0,
            expected: "n >= 1",
        }),
        1 => Ok(1),
        _ => Ok(phi_of(&factor_integer(n)?)),
    }
}

fn phi_of(fact: &PrimeFactorization) -> u64 {
    fact.factors()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

fn require_modulus(n: u64) -> KernelResult<()> {
    if n < 2 {
        Err(KernelError::OutOfRange {
            value: n,
            expected: "modulus >= 2",
        })
    } else {
        Ok(())
    }
}

/// Least `k >= 1` with `a^k ≡ 1 (mod n)`.
pub fn multiplicative_order(a: u64, n: u64) -> KernelResult<u64> {
    require_modulus(n)?;
    let a = a % n;
    if a.gcd(&n) != 1 {
        return Err(KernelError::NotCoprime { a, n });
    }
    let phi = euler_phi(n)?;
    let mut order = phi;
    if phi > 1 {
        for &(q, _) in factor_integer(phi)?.factors() {
            while order % q == 0 && pow_mod(a, order / q, n) == 1 {
                order /= q;
            }
        }
    }
    Ok(order)
}

/// Inverse of `a` modulo `n`, in `[1, n-1]`.
pub fn mod_inverse(a: u64, n: u64) -> KernelResult<u64> {
    require_modulus(n)?;
    let (mut r0, mut r1) = (i128::from(n), i128::from(a % n));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(KernelError::NotCoprime { a, n });
    }
    Ok(t0.rem_euclid(i128::from(n)) as u64)
}

/// Smallest prime in `residue, residue + modulus, residue + 2*modulus, ...`
/// that is not in `exclusions`.
///
/// The scan starts at `residue` itself, so passing an unreduced residue
/// (for instance a prime `p` with `p > modulus`) only yields primes `>= p`.
pub fn find_prime_in_class(
    residue: u64,
    modulus: u64,
    exclusions: &BTreeSet<u64>,
) -> KernelResult<u64> {
    find_prime_in_class_capped(residue, modulus, exclusions, DEFAULT_PRIME_SEARCH_CAP)
}

pub fn find_prime_in_class_capped(
    residue: u64,
    modulus: u64,
    exclusions: &BTreeSet<u64>,
    cap: u64,
) -> KernelResult<u64> {
    require_modulus(modulus)?;
    if residue.gcd(&modulus) != 1 {
        return Err(KernelError::NotCoprime {
            a: residue,
            n: modulus,
        });
    }
    let sieve = PrimeSieve::global();
    let mut candidate = residue;
    for _ in 0..cap {
        if sieve.is_prime(candidate) && !exclusions.contains(&candidate) {
            return Ok(candidate);
        }
        candidate = candidate
            .checked_add(modulus)
            .ok_or(KernelError::Overflow("prime search candidate"))?;
    }
    Err(KernelError::SearchCapExceeded {
        residue,
        modulus,
        cap,
    })
}
