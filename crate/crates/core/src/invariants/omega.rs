//! Omega primality: closed forms, the bullet test, a bounded brute-force
//! oracle and the explicit witness for regular monoids.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{self, PrimeFactorization};
use crate::monoid::{Acm, AcmDescriptor};

/// Rounding used in the singular closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaVariant {
    Floor,
    #[default]
    Ceiling,
}

impl FromStr for OmegaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "floor" => Ok(Self::Floor),
            "ceiling" | "ceil" => Ok(Self::Ceiling),
            other => Err(Error::Malformed(format!("unknown variant {other:?}"))),
        }
    }
}

impl fmt::Display for OmegaVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Floor => "floor",
            Self::Ceiling => "ceiling",
        })
    }
}

/// `Σ e_i` over the integer factorization of `x`.
pub fn omega_closed_regular(acm: &Acm, x: u64) -> Result<u64> {
    if !acm.classification().is_regular() {
        return Err(Error::ClassMismatch {
            expected: "regular",
            actual: acm.classification().name(),
        });
    }
    acm.require_nonunit(x)?;
    Ok(kernel::factor_integer(x)?.total_multiplicity())
}

/// Writes `x = ∏ q_i^{r_i + e_i} · ∏ p_j^{s_j}` with `d = ∏ q_i^{r_i}` and
/// returns `max({1 + round((r_i + e_i) / r_i)} ∪ {Σ s_j})`.
pub fn omega_closed_singular(acm: &Acm, x: u64, variant: OmegaVariant) -> Result<u64> {
    if acm.classification().is_regular() {
        return Err(Error::ClassMismatch {
            expected: "singular",
            actual: "regular",
        });
    }
    acm.require_nonunit(x)?;
    let d = kernel::factor_integer(acm.descriptor().d())?;
    let fx = kernel::factor_integer(x)?;
    let mut best = 0u64;
    for &(q, r) in d.factors() {
        let total = fx.exponent_of(q);
        if total < r {
            return Err(acm.not_in_monoid(x));
        }
        let (r, total) = (u64::from(r), u64::from(total));
        let rounded = match variant {
            OmegaVariant::Floor => total / r,
            OmegaVariant::Ceiling => total.div_ceil(r),
        };
        best = best.max(1 + rounded);
    }
    let s: u64 = fx
        .factors()
        .iter()
        .filter(|&&(p, _)| d.exponent_of(p) == 0)
        .map(|&(_, e)| u64::from(e))
        .sum();
    Ok(best.max(s))
}

/// Class dispatch: regular closed form, or the singular one with `variant`.
pub fn omega_closed(acm: &Acm, x: u64, variant: OmegaVariant) -> Result<u64> {
    if acm.classification().is_regular() {
        omega_closed_regular(acm, x)
    } else {
        omega_closed_singular(acm, x, variant)
    }
}

/// `x |_M ∏ atoms` without forming the product: divide `x` out of the
/// atoms one gcd at a time and track the cofactor's residue mod `b`.
pub(crate) fn divides_product<I>(desc: &AcmDescriptor, x: u64, atoms: I) -> bool
where
    I: IntoIterator<Item = u64>,
{
    let b = desc.b();
    let mut rest = x;
    let mut residue = 1 % b;
    let mut cofactor_is_one = true;
    for atom in atoms {
        let g = rest.gcd(&atom);
        rest /= g;
        let c = atom / g;
        if c != 1 {
            cofactor_is_one = false;
            residue = kernel::mul_mod(residue, c % b, b);
        }
    }
    rest == 1 && desc.contains_by_residue(residue, cofactor_is_one)
}

fn divides_without(desc: &AcmDescriptor, x: u64, atoms: &[u64], skip: usize) -> bool {
    divides_product(
        desc,
        x,
        atoms
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &a)| a),
    )
}

/// A multiset of atoms whose product `x` divides while no proper
/// sub-multiset's product is divisible. Divisibility is monotone under
/// multiplication by elements, so the one-removal subsets suffice.
pub fn is_bullet(acm: &Acm, x: u64, atoms: &[u64]) -> Result<bool> {
    acm.require_nonunit(x)?;
    for &a in atoms {
        if a == 1 || !acm.contains(a) || !acm.is_atom(a)? {
            return Err(Error::NotAnAtom(a));
        }
    }
    Ok(bullet_check(acm.descriptor(), x, atoms))
}

fn bullet_check(desc: &AcmDescriptor, x: u64, atoms: &[u64]) -> bool {
    divides_product(desc, x, atoms.iter().copied())
        && (0..atoms.len()).all(|i| !divides_without(desc, x, atoms, i))
}

/// Atoms `p_i · q^{ord(p_i) - 1}` with `q ≡ p_i (mod b)` a fresh prime, one
/// per prime factor of `x` counted with multiplicity. A prime already in the
/// monoid (order 1) is its own atom.
pub fn omega_witness_regular(acm: &Acm, x: u64) -> Result<Vec<u64>> {
    let expected = omega_closed_regular(acm, x)?;
    let b = acm.b();
    let fx = kernel::factor_integer(x)?;
    let mut exclusions: BTreeSet<u64> = fx.primes().collect();
    let mut atoms = Vec::new();
    for &(p, e) in fx.factors() {
        let order = kernel::multiplicative_order(p % b, b)?;
        for _ in 0..e {
            if order == 1 {
                atoms.push(p);
                continue;
            }
            let q = kernel::find_prime_in_class(p, b, &exclusions)?;
            exclusions.insert(q);
            let exp = u32::try_from(order - 1).map_err(|_| Error::Overflow("witness atom"))?;
            let atom = kernel::checked_pow(q, exp)
                .and_then(|t| t.checked_mul(p))
                .ok_or(Error::Overflow("witness atom"))?;
            atoms.push(atom);
        }
    }
    atoms.sort_unstable();
    if atoms.len() as u64 != expected || !is_bullet(acm, x, &atoms)? {
        return Err(Error::Structural(format!(
            "witness {atoms:?} for {x} is not a bullet of length {expected}"
        )));
    }
    Ok(atoms)
}

/// Default node budget for [`omega_oracle`].
pub const DEFAULT_ORACLE_NODE_CAP: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaReport {
    pub monoid: AcmDescriptor,
    pub element: u64,
    /// Regular: `Σ e_i`. Singular: the ceiling variant.
    pub closed_form_value: u64,
    pub floor_variant: Option<u64>,
    pub ceiling_variant: Option<u64>,
    pub oracle_lower_bound: usize,
    pub witness_bullet: Vec<u64>,
    pub atom_bound: u64,
    pub length_bound: usize,
    /// The search visited every candidate within the bounds.
    pub exhaustive: bool,
    /// Some candidate was still open when it reached `length_bound`, so a
    /// longer bullet is not ruled out by the atom bound alone.
    pub truncated_by_length: bool,
    pub agrees_with_closed_form: bool,
    pub agrees_with_floor: Option<bool>,
    pub agrees_with_ceiling: Option<bool>,
}

/// Longest bullet of `x` among multisets of atoms `<= atom_bound` of size
/// `<= length_bound`.
pub fn omega_oracle(
    acm: &Acm,
    x: u64,
    atom_bound: u64,
    length_bound: usize,
) -> Result<OmegaReport> {
    omega_oracle_capped(acm, x, atom_bound, length_bound, DEFAULT_ORACLE_NODE_CAP)
}

pub fn omega_oracle_capped(
    acm: &Acm,
    x: u64,
    atom_bound: u64,
    length_bound: usize,
    node_cap: u64,
) -> Result<OmegaReport> {
    acm.require_nonunit(x)?;
    let reps = class_representatives(acm, x, atom_bound)?;
    let mut search = BulletSearch {
        desc: acm.descriptor(),
        x,
        reps: &reps,
        length_bound,
        node_cap,
        nodes: 0,
        stack: Vec::new(),
        best: Vec::new(),
        truncated: false,
    };
    let exhaustive = search.descend(0);
    let (truncated, best) = (search.truncated, search.best);
    if best.is_empty() {
        return Err(Error::Unavailable(format!(
            "no bullet of {x} among atoms <= {atom_bound} of length <= {length_bound}"
        )));
    }

    let regular = acm.classification().is_regular();
    let (closed, floor, ceiling) = if regular {
        (omega_closed_regular(acm, x)?, None, None)
    } else {
        let f = omega_closed_singular(acm, x, OmegaVariant::Floor)?;
        let c = omega_closed_singular(acm, x, OmegaVariant::Ceiling)?;
        (c, Some(f), Some(c))
    };
    let lb = best.len();
    Ok(OmegaReport {
        monoid: *acm.descriptor(),
        element: x,
        closed_form_value: closed,
        floor_variant: floor,
        ceiling_variant: ceiling,
        oracle_lower_bound: lb,
        witness_bullet: best,
        atom_bound,
        length_bound,
        exhaustive,
        truncated_by_length: truncated,
        agrees_with_closed_form: lb as u64 == closed,
        agrees_with_floor: floor.map(|v| v == lb as u64),
        agrees_with_ceiling: ceiling.map(|v| v == lb as u64),
    })
}

/// One atom per class of atoms that are interchangeable in every bullet of
/// `x`, taking the smallest member.
///
/// Singular: the exact part over the primes of `x` and `b`, plus the residue
/// of the rest mod `b` and whether the rest is 1. Regular: the valuations
/// over the primes of `x`, each capped at its exponent in `x`; atoms coprime
/// to `x` never appear in a bullet and are dropped.
fn class_representatives(acm: &Acm, x: u64, atom_bound: u64) -> Result<Vec<u64>> {
    let b = acm.b();
    let fx = kernel::factor_integer(x)?;
    let regular = acm.classification().is_regular();
    let mut s_primes: Vec<u64> = fx.primes().collect();
    if !regular {
        s_primes.extend(kernel::factor_integer(b)?.primes());
        s_primes.sort_unstable();
        s_primes.dedup();
    }
    let mut seen: HashMap<Vec<u64>, u64> = HashMap::new();
    let mut reps = Vec::new();
    for atom in acm.atoms_up_to(atom_bound) {
        let key = if regular {
            regular_key(&fx, atom)
        } else {
            singular_key(&s_primes, b, atom)
        };
        let Some(key) = key else { continue };
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
            slot.insert(atom);
            reps.push(atom);
        }
    }
    Ok(reps)
}

fn regular_key(fx: &PrimeFactorization, atom: u64) -> Option<Vec<u64>> {
    let key: Vec<u64> = fx
        .factors()
        .iter()
        .map(|&(p, e)| u64::from(kernel::valuation(atom, p).min(e)))
        .collect();
    key.iter().any(|&v| v > 0).then_some(key)
}

fn singular_key(s_primes: &[u64], b: u64, atom: u64) -> Option<Vec<u64>> {
    let mut rest = atom;
    let mut key = Vec::with_capacity(s_primes.len() + 2);
    for &p in s_primes {
        let v = kernel::valuation(rest, p);
        rest /= p.pow(v);
        key.push(u64::from(v));
    }
    key.push(rest % b);
    key.push(u64::from(rest == 1));
    Some(key)
}

struct BulletSearch<'a> {
    desc: &'a AcmDescriptor,
    x: u64,
    reps: &'a [u64],
    length_bound: usize,
    node_cap: u64,
    nodes: u64,
    stack: Vec<u64>,
    best: Vec<u64>,
    truncated: bool,
}

impl BulletSearch<'_> {
    /// Returns `false` once the node budget runs out.
    fn descend(&mut self, start: usize) -> bool {
        for i in start..self.reps.len() {
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return false;
            }
            self.stack.push(self.reps[i]);
            let keep_going = self.visit(i);
            self.stack.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }

    fn visit(&mut self, i: usize) -> bool {
        let atoms = &self.stack;
        let last = atoms.len() - 1;
        // Dropping the newest atom gives the parent, already known not to be
        // divisible; every other removal is new.
        if (0..last).any(|j| divides_without(self.desc, self.x, atoms, j)) {
            return true;
        }
        if divides_product(self.desc, self.x, atoms.iter().copied()) {
            if atoms.len() > self.best.len() {
                self.best = atoms.clone();
            }
            return true;
        }
        if atoms.len() >= self.length_bound {
            self.truncated = true;
            return true;
        }
        self.descend(i)
    }
}
