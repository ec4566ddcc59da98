//! Catenary degree of local singular monoids: closed form, explicit chains
//! to a canonical factorization, surveys and the delta-set lower bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{
    first_factorization, ChainCertificate, Factorization, DEFAULT_FACTORIZATION_CAP,
};
use crate::kernel;
use crate::monoid::{Acm, AcmDescriptor, LocalParams};
use crate::survey::{Survey, SurveySummary};

fn local(acm: &Acm) -> Result<&LocalParams> {
    acm.local_params().ok_or(Error::ClassMismatch {
        expected: "local singular",
        actual: acm.classification().name(),
    })
}

/// 2 for `α = β = 1`, 3 for `α = β > 1`, `1 + ⌈β/α⌉` for `α < β`.
pub fn catenary_closed_local(acm: &Acm) -> Result<u64> {
    let LocalParams { alpha, beta, .. } = *local(acm)?;
    Ok(if alpha == beta {
        if alpha == 1 {
            2
        } else {
            3
        }
    } else {
        1 + u64::from(beta.div_ceil(alpha))
    })
}

/// Largest link a chain from [`build_canonical_chain`] may contain.
pub fn chain_link_bound(params: &LocalParams) -> usize {
    let (alpha, beta) = (params.alpha as usize, params.beta as usize);
    match (alpha == beta, alpha == 1) {
        (true, true) => 2,
        (true, false) => 3,
        _ => 1 + (alpha + beta - 1) / alpha,
    }
}

/// `M_{2^{n-1}, (2^{n-1} - 1)·2}`, whose catenary degree is `n`; for `n = 2`
/// this is `M_{2,2}`.
pub fn acm_with_catenary_degree(n: u32) -> Result<AcmDescriptor> {
    if n < 2 {
        return Err(Error::Malformed(format!("catenary degree {n} < 2")));
    }
    let a = kernel::checked_pow(2, n - 1).ok_or(Error::Overflow("2^(n-1)"))?;
    let b = if n == 2 {
        2
    } else {
        (a - 1)
            .checked_mul(2)
            .ok_or(Error::Overflow("(2^(n-1) - 1)·2"))?
    };
    AcmDescriptor::new(a, b)
}

struct Split {
    v: u32,
    rest: u64,
}

fn split(atom: u64, p: u64) -> Split {
    let v = kernel::valuation(atom, p);
    Split {
        v,
        rest: atom / p.pow(v),
    }
}

fn pow(p: u64, e: u32) -> Result<u64> {
    kernel::checked_pow(p, e).ok_or(Error::Overflow("prime power"))
}

/// The factorization every chain from [`build_canonical_chain`] ends at.
///
/// Writing `x = p^V · u`: for `α = β = 1` it is `p^{V-1} · (p u)`; for
/// `α = β > 1` copies of `p^α` and one atom `p^{α + (V mod α)} u`; for
/// `α < β` copies of `p^β` and the least factorization of a remainder with
/// valuation in `[α, α + β - 1]`.
pub fn canonical_factorization(acm: &Acm, x: u64) -> Result<Factorization> {
    let params = *local(acm)?;
    acm.require_nonunit(x)?;
    let LocalParams { p, alpha, beta, .. } = params;
    let Split { v, rest: u } = split(x, p);
    let atoms = if alpha == beta {
        let pa = pow(p, alpha)?;
        let (k, e) = (v / alpha, v % alpha);
        if e == 0 && u == 1 {
            vec![pa; k as usize]
        } else {
            let mut atoms = vec![pa; k as usize - 1];
            atoms.push(pow(p, alpha + e)? * u);
            atoms
        }
    } else {
        let pb = pow(p, beta)?;
        let k = if u == 1 && v % beta == 0 {
            0
        } else {
            // unique k in [alpha, alpha + beta - 1] with k ≡ v (mod beta)
            alpha + (v - alpha) % beta
        };
        let n = (v - k) / beta;
        let mut atoms = vec![pb; n as usize];
        if k > 0 || u != 1 {
            let r = x / pow(pb, n)?;
            atoms.extend_from_slice(first_factorization(acm, r)?.atoms());
        }
        atoms
    };
    Factorization::from_atoms_unchecked(atoms)
}

/// A chain from `z` to [`canonical_factorization`] whose links stay within
/// [`chain_link_bound`].
pub fn build_canonical_chain(acm: &Acm, x: u64, z: &Factorization) -> Result<ChainCertificate> {
    let params = *local(acm)?;
    if z.element() != x {
        return Err(Error::Malformed(format!(
            "{z} is a factorization of {}, not {x}",
            z.element()
        )));
    }
    let mut steps = vec![z.clone()];
    let mut current = z.atoms().to_vec();
    let LocalParams { p, alpha, beta, .. } = params;
    if alpha == beta && alpha == 1 {
        // (p u)(p u') -> p · (p u u')
        loop {
            let open: Vec<usize> = (0..current.len()).filter(|&i| current[i] != p).collect();
            let [i, j, ..] = open[..] else { break };
            let merged = current[i] / p * current[j];
            replace(&mut current, &[i, j], &[p, merged]);
            record(&mut current, &mut steps)?;
        }
    } else if alpha == beta {
        let pa = pow(p, alpha)?;
        loop {
            // non-bare atoms p^{α+e}·w ordered by (e, w)
            let mut open: Vec<(u32, u64, usize)> = (0..current.len())
                .filter(|&i| current[i] != pa)
                .map(|i| {
                    let s = split(current[i], p);
                    (s.v - alpha, s.rest, i)
                })
                .collect();
            open.sort_unstable();
            let [(e1, _, i), (e2, _, j), ..] = open[..] else {
                break;
            };
            let product = current[i] * current[j];
            let replacement = if e1 + e2 < alpha {
                vec![pa, product / pa]
            } else {
                vec![pa, pa, product / (pa * pa)]
            };
            replace(&mut current, &[i, j], &replacement);
            record(&mut current, &mut steps)?;
        }
    } else {
        let pb = pow(p, beta)?;
        loop {
            let mut open: Vec<(u64, u32, u64)> = current
                .iter()
                .filter(|&&a| a != pb)
                .map(|&a| {
                    let s = split(a, p);
                    (s.rest, s.v, a)
                })
                .collect();
            let total: u32 = open.iter().map(|t| t.1).sum();
            if total < alpha + beta {
                break;
            }
            open.sort_unstable();
            let mut taken = Vec::new();
            let mut v_sum = 0;
            while v_sum < alpha + beta {
                let (_, v, a) = open.pop().expect("valuation total covers the target");
                v_sum += v;
                taken.push(a);
            }
            let g: u64 = taken.iter().product();
            let mut replacement = if v_sum < alpha + 2 * beta {
                vec![pb]
            } else {
                vec![pb, pb]
            };
            let cofactor = g / replacement.iter().product::<u64>();
            replacement.extend_from_slice(first_factorization(acm, cofactor)?.atoms());
            for a in taken {
                let pos = current
                    .iter()
                    .position(|&c| c == a)
                    .expect("taken from current");
                current.swap_remove(pos);
            }
            current.extend(replacement);
            record(&mut current, &mut steps)?;
        }
    }

    let mut target = canonical_factorization(acm, x)?.atoms().to_vec();
    record(&mut target, &mut steps)?;
    ChainCertificate::new(steps)
}

/// Appends `atoms` as a new step unless it repeats the last one.
fn record(atoms: &mut [u64], steps: &mut Vec<Factorization>) -> Result<()> {
    atoms.sort_unstable();
    if steps.last().is_none_or(|s| s.atoms() != &*atoms) {
        steps.push(Factorization::from_atoms_unchecked(atoms.to_vec())?);
    }
    Ok(())
}

fn replace(atoms: &mut Vec<u64>, remove: &[usize], add: &[u64]) {
    let mut remove = remove.to_vec();
    remove.sort_unstable_by(|a, b| b.cmp(a));
    for i in remove {
        atoms.swap_remove(i);
    }
    atoms.extend_from_slice(add);
}

/// Largest surveyed `c(x)` and its least witness; the witness is absent
/// when every scanned element factors uniquely.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatenarySurvey {
    pub value: usize,
    pub witness: Option<u64>,
}

pub fn catenary_survey(acm: &Acm, bound: u64) -> Result<CatenarySurvey> {
    let survey = Survey::run(acm, bound, DEFAULT_FACTORIZATION_CAP)?;
    Ok(catenary_from_summary(&survey.summary()))
}

pub fn catenary_from_summary(summary: &SurveySummary) -> CatenarySurvey {
    match summary.max_catenary {
        Some(w) if w.value > 0 => CatenarySurvey {
            value: w.value,
            witness: Some(w.witness),
        },
        _ => CatenarySurvey {
            value: 0,
            witness: None,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundCheck {
    pub monoid: AcmDescriptor,
    pub bound: u64,
    pub max_delta: Option<usize>,
    /// `2 + max Δ`, when some scanned element has two lengths.
    pub lower_bound: Option<usize>,
    pub closed_form: Option<u64>,
    pub surveyed_catenary: usize,
    pub applicable: bool,
    /// The lower bound exceeds the closed form or the surveyed value.
    pub violation: bool,
}

pub fn catenary_lower_bound_check(acm: &Acm, bound: u64) -> Result<LowerBoundCheck> {
    let survey = Survey::run(acm, bound, DEFAULT_FACTORIZATION_CAP)?;
    Ok(lower_bound_from_summary(acm, bound, &survey.summary()))
}

pub fn lower_bound_from_summary(acm: &Acm, bound: u64, summary: &SurveySummary) -> LowerBoundCheck {
    let max_delta = summary.max_delta();
    let lower_bound = max_delta.map(|d| d + 2);
    let closed_form = catenary_closed_local(acm).ok();
    let surveyed = catenary_from_summary(summary).value;
    let violation =
        lower_bound.is_some_and(|lb| closed_form.is_some_and(|c| lb as u64 > c) || lb > surveyed);
    LowerBoundCheck {
        monoid: *acm.descriptor(),
        bound,
        max_delta,
        lower_bound,
        closed_form,
        surveyed_catenary: surveyed,
        applicable: lower_bound.is_some(),
        violation,
    }
}
