//! Slow, direct reference implementations. Nothing here calls into the
//! library's arithmetic or search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

pub fn member(a: u64, b: u64, x: u64) -> bool {
    x == 1 || (x >= a && (x - a).is_multiple_of(b))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn is_atom(a: u64, b: u64, x: u64) -> bool {
    x != 1
        && member(a, b, x)
        && !divisors(x)
            .into_iter()
            .any(|y| y > 1 && y < x && member(a, b, y) && member(a, b, x / y))
}

/// Prime factors with multiplicity, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

pub fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every factorization of `x` as a sorted atom list, collected into a set.
pub fn factorizations(a: u64, b: u64, x: u64) -> BTreeSet<Vec<u64>> {
    fn go(a: u64, b: u64, x: u64, min: u64, acc: &mut Vec<u64>, out: &mut BTreeSet<Vec<u64>>) {
        if x == 1 {
            out.insert(acc.clone());
            return;
        }
        for d in divisors(x) {
            if d >= min && is_atom(a, b, d) && member(a, b, x / d) {
                acc.push(d);
                go(a, b, x / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(a, b, x, 2, &mut Vec::new(), &mut out);
    out
}

pub fn lengths(zs: &BTreeSet<Vec<u64>>) -> BTreeSet<usize> {
    zs.iter().map(Vec::len).collect()
}

fn counts(z: &[u64]) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for &a in z {
        *m.entry(a).or_insert(0) += 1;
    }
    m
}

pub fn distance(z1: &[u64], z2: &[u64]) -> usize {
    let (c1, c2) = (counts(z1), counts(z2));
    let common: usize = c1
        .iter()
        .map(|(a, &n)| n.min(c2.get(a).copied().unwrap_or(0)))
        .sum();
    (z1.len() - common).max(z2.len() - common)
}

fn connected(zs: &[Vec<u64>], n: usize) -> bool {
    let mut seen = vec![false; zs.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for j in 0..zs.len() {
            if !seen[j] && distance(&zs[i], &zs[j]) <= n {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Least `N` for which the `N`-distance graph on `Z(x)` is connected,
/// found by binary search over `N`.
pub fn catenary(a: u64, b: u64, x: u64) -> usize {
    let zs: Vec<Vec<u64>> = factorizations(a, b, x).into_iter().collect();
    if zs.len() <= 1 {
        return 0;
    }
    let (mut lo, mut hi) = (0, zs.iter().map(Vec::len).max().unwrap());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if connected(&zs, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Whether `x |_M y` for `y` the product of `factors`. The product is
/// tracked modulo `x·b`, which fixes both `x | y` and the residue of
/// `y / x`, alongside a saturating copy for the size comparison.
pub fn divides_product(a: u64, b: u64, x: u64, factors: &[u64]) -> bool {
    let modulus = x as u128 * b as u128;
    let (mut residue, mut size) = (1u128, 1u128);
    for &f in factors {
        residue = residue * f as u128 % modulus;
        size = size.saturating_mul(f as u128);
    }
    if residue % x as u128 != 0 {
        return false;
    }
    let q_residue = (residue / x as u128) as u64;
    let q_at_least_a = size >= x as u128 * a as u128;
    size == x as u128 || (q_at_least_a && q_residue == a % b)
}

/// Bullet test over every proper sub-multiset (as index subsets).
pub fn is_bullet(a: u64, b: u64, x: u64, atoms: &[u64]) -> bool {
    let n = atoms.len();
    let pick = |mask: u32| -> Vec<u64> {
        (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| atoms[i])
            .collect()
    };
    let full = (1u32 << n) - 1;
    divides_product(a, b, x, atoms) && (0..full).all(|mask| !divides_product(a, b, x, &pick(mask)))
}
