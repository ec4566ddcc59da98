//! Factorization sets, length profiles, the factorization distance, chains
//! and per-element catenary degrees.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel;
use crate::monoid::Acm;
use crate::union_find::UnionFind;

/// Default limit on the number of factorizations materialized per element.
pub const DEFAULT_FACTORIZATION_CAP: usize = 100_000;

/// A multiset of atoms, kept sorted ascending, together with its product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factorization {
    atoms: Vec<u64>,
    element: u64,
}

impl Factorization {
    /// Validates every entry as an atom of `acm` and computes the product.
    pub fn new(acm: &Acm, mut atoms: Vec<u64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Malformed(
                "a factorization needs at least one atom".into(),
            ));
        }
        for &atom in &atoms {
            if !acm.contains(atom) || atom == 1 || !acm.is_atom(atom)? {
                return Err(Error::NotAnAtom(atom));
            }
        }
        atoms.sort_unstable();
        let element = product(&atoms)?;
        Ok(Self { atoms, element })
    }

    /// Builds from atoms already known to be valid; only sorts and multiplies.
    pub(crate) fn from_atoms_unchecked(mut atoms: Vec<u64>) -> Result<Self> {
        atoms.sort_unstable();
        let element = product(&atoms)?;
        Ok(Self { atoms, element })
    }

    pub fn atoms(&self) -> &[u64] {
        &self.atoms
    }

    pub fn element(&self) -> u64 {
        self.element
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.atoms.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join("·"))
    }
}

fn product(atoms: &[u64]) -> Result<u64> {
    atoms.iter().try_fold(1u64, |acc, &a| {
        acc.checked_mul(a)
            .ok_or(Error::Overflow("factorization product"))
    })
}

/// Every factorization of `x`, each sorted, in lexicographic order.
///
/// Atoms are chosen in nondecreasing order among the divisors of `x`, and a
/// branch continues only while the remaining cofactor lies in the monoid.
pub fn enumerate_factorizations(acm: &Acm, x: u64, cap: usize) -> Result<Vec<Factorization>> {
    run_enumeration(acm, x, cap, false)
}

/// The lexicographically smallest factorization of `x`: the first leaf of
/// the same search.
pub fn first_factorization(acm: &Acm, x: u64) -> Result<Factorization> {
    let mut found = run_enumeration(acm, x, 1, true)?;
    found
        .pop()
        .ok_or_else(|| Error::Structural(format!("{x} has no factorization")))
}

fn run_enumeration(acm: &Acm, x: u64, cap: usize, first_only: bool) -> Result<Vec<Factorization>> {
    acm.require_nonunit(x)?;
    let mut atoms = Vec::new();
    for y in kernel::factor_integer(x)?.divisors() {
        if y > 1 && acm.contains(y) && acm.is_atom(y)? {
            atoms.push(y);
        }
    }
    let mut search = Enumeration {
        acm,
        atoms: &atoms,
        cap,
        first_only,
        current: Vec::new(),
        found: Vec::new(),
    };
    search.descend(0, x)?;
    Ok(search.found)
}

struct Enumeration<'a> {
    acm: &'a Acm,
    atoms: &'a [u64],
    cap: usize,
    first_only: bool,
    current: Vec<u64>,
    found: Vec<Factorization>,
}

impl Enumeration<'_> {
    /// Returns `Ok(true)` when the search should stop.
    fn descend(&mut self, start: usize, rest: u64) -> Result<bool> {
        if rest == 1 {
            if self.found.len() >= self.cap {
                return Err(Error::CapExceeded {
                    what: "factorization enumeration",
                    cap: self.cap as u64,
                });
            }
            let element = self.current.iter().product();
            self.found.push(Factorization {
                atoms: self.current.clone(),
                element,
            });
            return Ok(self.first_only);
        }
        for i in start..self.atoms.len() {
            let y = self.atoms[i];
            if y > rest {
                break;
            }
            if !rest.is_multiple_of(y) {
                continue;
            }
            let cofactor = rest / y;
            // later atoms are >= y, so a nontrivial cofactor must be too
            if cofactor != 1 && (cofactor < y || !self.acm.contains(cofactor)) {
                continue;
            }
            self.current.push(y);
            let stop = self.descend(i, cofactor)?;
            self.current.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Length set and the quantities derived from it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthProfile {
    pub lengths: Vec<usize>,
    pub min_length: usize,
    pub max_length: usize,
    pub spread: usize,
    pub delta_set: BTreeSet<usize>,
    #[serde(serialize_with = "crate::report::serialize_opt_ratio")]
    pub length_density: Option<Ratio<u64>>,
}

impl LengthProfile {
    pub fn from_factorizations(zs: &[Factorization]) -> Result<Self> {
        let lengths: BTreeSet<usize> = zs.iter().map(Factorization::len).collect();
        Self::from_lengths(lengths)
    }

    pub fn from_lengths(lengths: BTreeSet<usize>) -> Result<Self> {
        let lengths: Vec<usize> = lengths.into_iter().collect();
        let (Some(&min_length), Some(&max_length)) = (lengths.first(), lengths.last()) else {
            return Err(Error::Malformed("empty length set".into()));
        };
        let delta_set = lengths.windows(2).map(|w| w[1] - w[0]).collect();
        let spread = max_length - min_length;
        let length_density =
            (spread > 0).then(|| Ratio::new((lengths.len() - 1) as u64, spread as u64));
        Ok(Self {
            lengths,
            min_length,
            max_length,
            spread,
            delta_set,
            length_density,
        })
    }

    pub fn is_half_factorial(&self) -> bool {
        self.spread == 0
    }
}

/// Length profile of `x` from its full factorization set.
pub fn length_profile(acm: &Acm, x: u64) -> Result<LengthProfile> {
    LengthProfile::from_factorizations(&enumerate_factorizations(
        acm,
        x,
        DEFAULT_FACTORIZATION_CAP,
    )?)
}

/// Number of atoms left on the larger side after cancelling the common
/// sub-multiset.
pub fn factorization_distance(z1: &Factorization, z2: &Factorization) -> Result<usize> {
    if z1.element != z2.element {
        return Err(Error::Malformed(format!(
            "distance between factorizations of different elements ({} and {})",
            z1.element, z2.element
        )));
    }
    Ok(sorted_distance(&z1.atoms, &z2.atoms))
}

pub(crate) fn sorted_distance(a: &[u64], b: &[u64]) -> usize {
    let (mut i, mut j, mut common) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                common += 1;
                i += 1;
                j += 1;
            }
        }
    }
    (a.len() - common).max(b.len() - common)
}

/// A sequence of factorizations of one element with its link distances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    steps: Vec<Factorization>,
    link_distances: Vec<usize>,
    max_link: usize,
}

impl ChainCertificate {
    pub fn new(steps: Vec<Factorization>) -> Result<Self> {
        let Some(first) = steps.first() else {
            return Err(Error::Malformed("empty chain".into()));
        };
        let element = first.element;
        if let Some(z) = steps.iter().find(|z| z.element != element) {
            return Err(Error::Malformed(format!(
                "chain mixes elements {element} and {}",
                z.element
            )));
        }
        let link_distances: Vec<usize> = steps
            .windows(2)
            .map(|w| sorted_distance(&w[0].atoms, &w[1].atoms))
            .collect();
        let max_link = link_distances.iter().copied().max().unwrap_or(0);
        Ok(Self {
            steps,
            link_distances,
            max_link,
        })
    }

    pub fn steps(&self) -> &[Factorization] {
        &self.steps
    }

    pub fn link_distances(&self) -> &[usize] {
        &self.link_distances
    }

    pub fn max_link(&self) -> usize {
        self.max_link
    }

    pub fn element(&self) -> u64 {
        self.steps[0].element
    }

    pub fn first(&self) -> &Factorization {
        &self.steps[0]
    }

    pub fn last(&self) -> &Factorization {
        self.steps.last().expect("chain is nonempty")
    }

    /// Checks that every step is a genuine factorization in `acm`.
    pub fn steps_are_factorizations(&self, acm: &Acm) -> Result<bool> {
        for z in &self.steps {
            for &atom in &z.atoms {
                if atom == 1 || !acm.contains(atom) || !acm.is_atom(atom)? {
                    return Ok(false);
                }
            }
            if product(&z.atoms)? != z.element {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether the certificate is an `n`-chain. Link distances are recomputed.
pub fn verify_chain(cert: &ChainCertificate, n: usize) -> Result<bool> {
    let recomputed = ChainCertificate::new(cert.steps.clone())?;
    if recomputed.link_distances != cert.link_distances {
        return Err(Error::Malformed("recorded link distances are stale".into()));
    }
    Ok(recomputed.max_link <= n)
}

/// Least `N` for which the graph on the factorizations with edges of
/// distance at most `N` is connected: the largest edge Kruskal needs.
pub fn catenary_of_factorizations(zs: &[Factorization]) -> usize {
    if zs.len() <= 1 {
        return 0;
    }
    let mut edges = Vec::with_capacity(zs.len() * (zs.len() - 1) / 2);
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            edges.push((sorted_distance(&zs[i].atoms, &zs[j].atoms), i, j));
        }
    }
    edges.sort_unstable();
    let mut uf = UnionFind::new(zs.len());
    for (w, i, j) in edges {
        if uf.union(i, j) && uf.components() == 1 {
            return w;
        }
    }
    unreachable!("complete graph is connected")
}

pub fn catenary_of_element(acm: &Acm, x: u64) -> Result<usize> {
    let zs = enumerate_factorizations(acm, x, DEFAULT_FACTORIZATION_CAP)?;
    Ok(catenary_of_factorizations(&zs))
}
