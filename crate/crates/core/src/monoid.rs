//! Arithmetical congruence monoids `M_{a,b} = (a + bN_0) ∪ {1}`.
//!
//! [`AcmDescriptor`] is the validated `(a, b)` pair, [`Classification`] splits
//! monoids into regular, local singular and global singular classes, and
//! [`Acm`] bundles both with an atom cache shared by the enumeration and
//! survey code.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{self, PrimeFactorization};

/// A validated pair `(a, b)` with `0 < a <= b` and `a^2 ≡ a (mod b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AcmDescriptor {
    a: u64,
    b: u64,
    d: u64,
    f: u64,
}

/// Checks the defining conditions and derives `d = gcd(a, b)`, `f = b / d`.
pub fn validate_acm(a: u64, b: u64) -> Result<AcmDescriptor> {
    let invalid = |reason: &str| Error::InvalidAcm {
        a,
        b,
        reason: reason.to_string(),
    };
    if a == 0 {
        return Err(invalid("a must be positive"));
    }
    if a > b {
        return Err(invalid("a must not exceed b"));
    }
    if kernel::mul_mod(a, a, b) != a % b {
        return Err(invalid("a² ≢ a (mod b)"));
    }
    let d = a.gcd(&b);
    Ok(AcmDescriptor { a, b, d, f: b / d })
}

impl AcmDescriptor {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        validate_acm(a, b)
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    pub fn is_regular(&self) -> bool {
        self.a == 1
    }

    /// Set membership: `x = 1`, or `x ≡ a (mod b)` with `x >= a`.
    pub fn contains(&self, x: u64) -> bool {
        x == 1 || (x >= self.a && x % self.b == self.a % self.b)
    }

    /// Membership of a positive integer known only through its residue
    /// mod `b` and whether it equals 1. Every positive integer congruent to
    /// `a` is at least `a`, so the residue decides.
    pub fn contains_by_residue(&self, residue: u64, is_one: bool) -> bool {
        is_one || residue % self.b == self.a % self.b
    }

    /// The smallest nonunit element.
    pub fn first_nonunit(&self) -> u64 {
        if self.a == 1 {
            1 + self.b
        } else {
            self.a
        }
    }

    /// Nonunit elements `<= bound`, ascending.
    pub fn nonunits_up_to(&self, bound: u64) -> impl Iterator<Item = u64> {
        let step = self.b;
        let first = self.first_nonunit();
        std::iter::successors(Some(first), move |&x| x.checked_add(step))
            .take_while(move |&x| x <= bound)
    }
}

impl fmt::Display for AcmDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{{{},{}}}", self.a, self.b)
    }
}

/// Structural parameters of a local singular monoid with `d = p^alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LocalParams {
    pub p: u64,
    pub alpha: u32,
    /// Least exponent with `p^beta` in the monoid.
    pub beta: u32,
    /// Largest integer strictly below `beta / alpha`.
    pub delta: u32,
}

impl LocalParams {
    pub fn p_alpha(&self) -> u64 {
        self.p.pow(self.alpha)
    }

    /// `p^beta`, the least pure power of `p` in the monoid.
    pub fn p_beta(&self) -> Option<u64> {
        kernel::checked_pow(self.p, self.beta)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `a = 1`; every regular ACM is Krull.
    Regular,
    LocalSingular(LocalParams),
    GlobalSingular {
        d: PrimeFactorization,
        f: u64,
    },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Regular => "regular",
            Classification::LocalSingular(_) => "local singular",
            Classification::GlobalSingular { .. } => "global singular",
        }
    }

    pub fn local(&self) -> Option<&LocalParams> {
        match self {
            Classification::LocalSingular(params) => Some(params),
            _ => None,
        }
    }

    pub fn is_regular(&self) -> bool {
        matches!(self, Classification::Regular)
    }

    pub fn is_global(&self) -> bool {
        matches!(self, Classification::GlobalSingular { .. })
    }

    /// Regular ACMs admit a divisor theory; nothing is claimed for the others.
    pub fn krull_annotation(&self) -> Option<&'static str> {
        self.is_regular()
            .then_some("Krull (divisor theory into primes coprime to b)")
    }
}

pub fn classify(desc: &AcmDescriptor) -> Result<Classification> {
    if desc.a == 1 {
        return Ok(Classification::Regular);
    }
    let d = kernel::factor_integer(desc.d)?;
    if d.is_prime_power() {
        let (p, alpha) = d.factors()[0];
        let beta = compute_beta(desc, p)?;
        Ok(Classification::LocalSingular(LocalParams {
            p,
            alpha,
            beta,
            delta: delta_bound(alpha, beta),
        }))
    } else {
        Ok(Classification::GlobalSingular { d, f: desc.f })
    }
}

/// Least `beta >= 1` with `p^beta` in the monoid, following `p^k mod b`
/// until the residue sequence cycles.
pub fn compute_beta(desc: &AcmDescriptor, p: u64) -> Result<u32> {
    let b = desc.b;
    let target = desc.a % b;
    let mut seen = HashSet::new();
    let mut residue = 1u64;
    // p^k saturates once it passes a; only the comparison with a matters.
    let mut power: u64 = 1;
    for k in 1u32.. {
        residue = kernel::mul_mod(residue, p, b);
        power = power.saturating_mul(p);
        if residue == target && power >= desc.a {
            return Ok(k);
        }
        if power >= desc.a && !seen.insert(residue) {
            break;
        }
    }
    Err(Error::Structural(format!("no power of {p} lies in {desc}")))
}

/// `ceil(beta / alpha) - 1`, the largest integer strictly below
/// `beta / alpha`; zero whenever `beta <= alpha`.
pub fn delta_bound(alpha: u32, beta: u32) -> u32 {
    assert!(alpha > 0, "alpha must be positive");
    beta.div_ceil(alpha).saturating_sub(1)
}

/// Atom flags for every element up to a bound, built by crossing off
/// products of nonunit pairs.
#[derive(Debug)]
pub struct AtomTable {
    desc: AcmDescriptor,
    bound: u64,
    atoms: Vec<bool>,
}

impl AtomTable {
    pub fn build(desc: &AcmDescriptor, bound: u64) -> Self {
        let (a, b) = (desc.a, desc.b);
        let len = if bound >= a {
            ((bound - a) / b + 1) as usize
        } else {
            0
        };
        let mut atoms = vec![true; len];
        if a == 1 && len > 0 {
            atoms[0] = false;
        }
        let element = |i: usize| a + i as u64 * b;
        for i in 0..len {
            let y = element(i);
            if y == 1 {
                continue;
            }
            if y.saturating_mul(y) > bound {
                break;
            }
            for j in i..len {
                let prod = y.saturating_mul(element(j));
                if prod > bound {
                    break;
                }
                atoms[((prod - a) / b) as usize] = false;
            }
        }
        Self {
            desc: *desc,
            bound,
            atoms,
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `None` when `x` lies beyond the table.
    pub fn is_atom(&self, x: u64) -> Option<bool> {
        if x > self.bound {
            return None;
        }
        if x == 1 || !self.desc.contains(x) {
            return Some(false);
        }
        Some(self.atoms[((x - self.desc.a) / self.desc.b) as usize])
    }

    /// Atoms up to `bound` (at most the table bound), ascending.
    pub fn atoms_up_to(&self, bound: u64) -> Vec<u64> {
        let (a, b) = (self.desc.a, self.desc.b);
        self.atoms
            .iter()
            .enumerate()
            .filter(|&(_, &is_atom)| is_atom)
            .map(|(i, _)| a + i as u64 * b)
            .take_while(|&x| x <= bound)
            .collect()
    }
}

/// An element where the printed single-congruence membership criterion
/// disagrees with set membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipDisagreement {
    pub x: u64,
    pub by_definition: bool,
    pub congruent_to_one_mod_b: bool,
}

/// A monoid together with its classification and a lazily grown atom cache.
#[derive(Debug)]
pub struct Acm {
    desc: AcmDescriptor,
    class: Classification,
    atom_cache: RwLock<Option<Arc<AtomTable>>>,
}

impl Clone for Acm {
    fn clone(&self) -> Self {
        let cache = self.atom_cache.read().expect("atom cache poisoned").clone();
        Self {
            desc: self.desc,
            class: self.class.clone(),
            atom_cache: RwLock::new(cache),
        }
    }
}

impl Acm {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        Self::from_descriptor(validate_acm(a, b)?)
    }

    pub fn from_descriptor(desc: AcmDescriptor) -> Result<Self> {
        let class = classify(&desc)?;
        Ok(Self {
            desc,
            class,
            atom_cache: RwLock::new(None),
        })
    }

    pub fn descriptor(&self) -> &AcmDescriptor {
        &self.desc
    }

    pub fn classification(&self) -> &Classification {
        &self.class
    }

    pub fn local_params(&self) -> Option<&LocalParams> {
        self.class.local()
    }

    pub fn a(&self) -> u64 {
        self.desc.a
    }

    pub fn b(&self) -> u64 {
        self.desc.b
    }

    pub fn contains(&self, x: u64) -> bool {
        self.desc.contains(x)
    }

    pub(crate) fn require_nonunit(&self, x: u64) -> Result<()> {
        if x == 1 || !self.contains(x) {
            Err(self.not_in_monoid(x))
        } else {
            Ok(())
        }
    }

    pub(crate) fn not_in_monoid(&self, x: u64) -> Error {
        Error::NotInMonoid {
            x,
            a: self.desc.a,
            b: self.desc.b,
        }
    }

    /// `x |_M y`: `x` divides `y` over the integers and the cofactor lies in
    /// the monoid (the cofactor 1 included).
    pub fn divides_in_monoid(&self, x: u64, y: u64) -> Result<bool> {
        for v in [x, y] {
            if !self.contains(v) {
                return Err(self.not_in_monoid(v));
            }
        }
        Ok(y.is_multiple_of(x) && self.contains(y / x))
    }

    /// The nonunit cofactor `x / y` when it lies in the monoid.
    ///
    /// Returns `None` when the cofactor is outside the monoid, and also when
    /// `x = y` since the cofactor is then the unit.
    pub fn quotient_in_monoid(&self, x: u64, y: u64) -> Result<Option<u64>> {
        self.require_nonunit(x)?;
        self.require_nonunit(y)?;
        if !x.is_multiple_of(y) {
            return Err(Error::NotIntegerDivisor { x: y, y: x });
        }
        let q = x / y;
        if q == 1 {
            return Ok(None);
        }
        // d | q already forces q into the monoid.
        if q.is_multiple_of(self.desc.d) || self.contains(q) {
            debug_assert!(self.contains(q));
            Ok(Some(q))
        } else {
            Ok(None)
        }
    }

    /// Valuation-based atom test for local singular monoids, when one
    /// applies. `None` means the valuation alone does not decide.
    pub fn atom_fast_path(&self, x: u64) -> Option<bool> {
        let params = self.class.local()?;
        if x == 1 || !self.contains(x) {
            return None;
        }
        let v = kernel::valuation(x, params.p);
        let (alpha, beta) = (params.alpha, params.beta);
        if alpha == beta {
            if alpha == 1 {
                Some(v == 1)
            } else {
                Some(alpha <= v && v < 2 * alpha)
            }
        } else if v >= alpha + beta {
            Some(false)
        } else if v < 2 * alpha {
            Some(true)
        } else {
            None
        }
    }

    /// Atom test by scanning divisor pairs `(y, x / y)` with `y <= sqrt(x)`.
    pub fn is_atom_brute(&self, x: u64) -> Result<bool> {
        self.require_nonunit(x)?;
        if x < 4 {
            return Ok(true);
        }
        let divisors = kernel::factor_integer(x)?.divisors();
        Ok(!divisors
            .iter()
            .skip(1)
            .take_while(|&&y| y <= x / y)
            .any(|&y| self.contains(y) && self.contains(x / y)))
    }

    /// Atom test: cached table, then the valuation fast path, then the
    /// divisor scan.
    pub fn is_atom(&self, x: u64) -> Result<bool> {
        self.require_nonunit(x)?;
        if let Some(table) = self.cached_table() {
            if let Some(v) = table.is_atom(x) {
                return Ok(v);
            }
        }
        match self.atom_fast_path(x) {
            Some(v) => Ok(v),
            None => self.is_atom_brute(x),
        }
    }

    fn cached_table(&self) -> Option<Arc<AtomTable>> {
        self.atom_cache.read().expect("atom cache poisoned").clone()
    }

    /// An atom table covering at least `bound`, built on first request and
    /// reused by later calls with smaller bounds.
    pub fn atom_table(&self, bound: u64) -> Arc<AtomTable> {
        if let Some(table) = self.cached_table() {
            if table.bound() >= bound {
                return table;
            }
        }
        let mut slot = self.atom_cache.write().expect("atom cache poisoned");
        if let Some(table) = slot.as_ref() {
            if table.bound() >= bound {
                return Arc::clone(table);
            }
        }
        let table = Arc::new(AtomTable::build(&self.desc, bound));
        *slot = Some(Arc::clone(&table));
        table
    }

    pub fn atoms_up_to(&self, bound: u64) -> Vec<u64> {
        self.atom_table(bound).atoms_up_to(bound)
    }

    /// Elements `x <= bound` where set membership disagrees with the
    /// congruence `x ≡ 1 (mod b)`. Empty for regular monoids.
    pub fn membership_diagnostic(&self, bound: u64) -> Vec<MembershipDisagreement> {
        (1..=bound)
            .filter_map(|x| {
                let by_definition = self.contains(x);
                let congruent_to_one_mod_b = x % self.desc.b == 1 % self.desc.b;
                (by_definition != congruent_to_one_mod_b).then_some(MembershipDisagreement {
                    x,
                    by_definition,
                    congruent_to_one_mod_b,
                })
            })
            .collect()
    }
}

impl fmt::Display for Acm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.desc.fmt(f)
    }
}
