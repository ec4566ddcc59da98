//! Structural parameters of global singular monoids and empirical probes of
//! two open conjectures. Probes compare surveyed numbers; they prove nothing.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{
    catenary_of_factorizations, enumerate_factorizations, DEFAULT_FACTORIZATION_CAP,
};
use crate::invariants::catenary::{catenary_from_summary, CatenarySurvey};
use crate::kernel::{self, PrimeFactorization};
use crate::monoid::{Acm, AcmDescriptor};
use crate::report::serialize_opt_ratio;
use crate::survey::{Survey, Witnessed};

pub const DEFAULT_POWER_CAP: u32 = 8;

fn global_d(acm: &Acm) -> Result<&PrimeFactorization> {
    match acm.classification() {
        crate::monoid::Classification::GlobalSingular { d, .. } => Ok(d),
        other => Err(Error::ClassMismatch {
            expected: "global singular",
            actual: other.name(),
        }),
    }
}

/// A member of `X`: `∏ p_i^{k_i α_i}` over exactly the primes of `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XMember {
    pub element: u64,
    pub k: Vec<u32>,
}

impl XMember {
    pub fn max_k(&self) -> u32 {
        self.k.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalProfile {
    pub monoid: AcmDescriptor,
    pub zeta: u32,
    pub mu: XMember,
    pub mu_prime: XMember,
    /// Least `t` with `μ^t` factoring in two ways, if within the power cap.
    pub catenary_order_mu: Option<u32>,
    pub search_bound: u64,
    /// Only `X ∩ [1, search_bound]` was searched, so `ζ` is an upper estimate.
    pub bounded_search: bool,
}

/// Members of `X` up to `bound`, ascending.
pub fn x_members(acm: &Acm, bound: u64) -> Result<Vec<XMember>> {
    let d = global_d(acm)?;
    let mut out = Vec::new();
    let mut k = Vec::new();
    collect_x(acm, d.factors(), bound, 1, &mut k, &mut out);
    out.sort_by_key(|m| m.element);
    Ok(out)
}

fn collect_x(
    acm: &Acm,
    primes: &[(u64, u32)],
    bound: u64,
    acc: u64,
    k: &mut Vec<u32>,
    out: &mut Vec<XMember>,
) {
    let Some(&(p, alpha)) = primes.get(k.len()) else {
        if acm.contains(acc) {
            out.push(XMember {
                element: acc,
                k: k.clone(),
            });
        }
        return;
    };
    let Some(step) = kernel::checked_pow(p, alpha) else {
        return;
    };
    let mut value = acc;
    for ki in 1.. {
        match value.checked_mul(step) {
            Some(v) if v <= bound => value = v,
            _ => break,
        }
        k.push(ki);
        collect_x(acm, primes, bound, value, k, out);
        k.pop();
    }
}

/// `μ` minimizes `max k_i`; `μ′` is the least member with the next larger
/// value of `max k_i`. Ties go to the smaller element.
pub fn global_profile(acm: &Acm, search_bound: u64) -> Result<GlobalProfile> {
    let mut members = x_members(acm, search_bound)?;
    members.sort_by_key(|m| (m.max_k(), m.element));
    let Some(mu) = members.first().cloned() else {
        return Err(Error::Unavailable(format!(
            "X has no member <= {search_bound}"
        )));
    };
    let zeta = mu.max_k();
    let Some(mu_prime) = members.iter().find(|m| m.max_k() > zeta).cloned() else {
        return Err(Error::Unavailable(format!(
            "X has fewer than two max-k values <= {search_bound}"
        )));
    };
    let catenary_order_mu = match catenary_order(acm, mu.element, DEFAULT_POWER_CAP) {
        Ok(t) => Some(t),
        Err(Error::CapExceeded { .. } | Error::Overflow(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(GlobalProfile {
        monoid: *acm.descriptor(),
        zeta,
        mu,
        mu_prime,
        catenary_order_mu,
        search_bound,
        bounded_search: true,
    })
}

/// Least `t <= power_cap` with more than one factorization of `m^t`.
pub fn catenary_order(acm: &Acm, m: u64, power_cap: u32) -> Result<u32> {
    acm.require_nonunit(m)?;
    let mut power = 1u64;
    for t in 1..=power_cap {
        power = power
            .checked_mul(m)
            .ok_or(Error::Overflow("power in catenary order"))?;
        match enumerate_factorizations(acm, power, 2) {
            Ok(zs) if zs.len() > 1 => return Ok(t),
            Ok(_) => {}
            Err(Error::CapExceeded { .. }) => return Ok(t),
            Err(e) => return Err(e),
        }
    }
    Err(Error::CapExceeded {
        what: "catenary order power search",
        cap: u64::from(power_cap),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    InsufficientData,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LdProbe {
    pub monoid: AcmDescriptor,
    pub bound: u64,
    pub max_delta: Option<usize>,
    pub min_length_density: Option<u64>,
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub surveyed_min_ld: Option<Ratio<u64>>,
    /// `1 / max Δ`.
    #[serde(serialize_with = "serialize_opt_ratio")]
    pub conjectured_ld: Option<Ratio<u64>>,
    pub verdict: Verdict,
}

impl LdProbe {
    pub fn recompute_verdict(&self) -> Verdict {
        match (self.surveyed_min_ld, self.conjectured_ld) {
            (Some(ld), Some(c)) if ld == c => Verdict::Consistent,
            (Some(_), Some(_)) => Verdict::Inconsistent,
            _ => Verdict::InsufficientData,
        }
    }
}

pub fn probe_ld_conjecture(acm: &Acm, bound: u64) -> Result<LdProbe> {
    global_d(acm)?;
    let survey = Survey::run(acm, bound, DEFAULT_FACTORIZATION_CAP)?;
    probe_ld_from_survey(acm, &survey)
}

pub fn probe_ld_from_survey(acm: &Acm, survey: &Survey) -> Result<LdProbe> {
    global_d(acm)?;
    let summary = survey.summary();
    let max_delta = summary.max_delta();
    let min_ld: Option<Witnessed<Ratio<u64>>> = summary.min_length_density;
    let mut probe = LdProbe {
        monoid: *acm.descriptor(),
        bound: survey.bound,
        max_delta,
        min_length_density: min_ld.map(|w| w.witness),
        surveyed_min_ld: min_ld.map(|w| w.value),
        conjectured_ld: max_delta.map(|d| Ratio::new(1, d as u64)),
        verdict: Verdict::InsufficientData,
    };
    probe.verdict = probe.recompute_verdict();
    Ok(probe)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HedgeValue {
    /// The exponent used is `t - 1`.
    pub t: u32,
    pub element: Option<u64>,
    pub catenary: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatenaryProbe {
    pub profile: GlobalProfile,
    pub omega_mu: u32,
    /// `(μ′)^ζ · μ^{ω_μ - 1}`.
    pub conjectured_element: u64,
    pub conjectured_element_catenary: usize,
    /// `max{ζ + 1, ω_μ, c((μ′)^ζ · μ^{ω_μ - 1})}`.
    pub rhs: usize,
    pub hedges: Vec<HedgeValue>,
    pub bound: u64,
    pub surveyed: CatenarySurvey,
    /// The conjectured element lies within the scanned range.
    pub within_reach: bool,
    pub verdict: Verdict,
}

impl CatenaryProbe {
    /// Consistent when the surveyed maximum stays within the right-hand side
    /// and, if the conjectured element was scanned, reaches it.
    pub fn recompute_verdict(&self) -> Verdict {
        let within = self.surveyed.value <= self.rhs;
        let attained = !self.within_reach || self.surveyed.value == self.rhs;
        if within && attained {
            Verdict::Consistent
        } else {
            Verdict::Inconsistent
        }
    }
}

fn element_catenary(acm: &Acm, x: u64) -> Result<usize> {
    Ok(catenary_of_factorizations(&enumerate_factorizations(
        acm,
        x,
        DEFAULT_FACTORIZATION_CAP,
    )?))
}

/// `(μ′)^ζ · μ^e`, if it fits.
fn probe_element(profile: &GlobalProfile, e: u32) -> Option<u64> {
    kernel::checked_pow(profile.mu_prime.element, profile.zeta)?
        .checked_mul(kernel::checked_pow(profile.mu.element, e)?)
}

pub fn probe_catenary_conjecture(acm: &Acm, bound: u64) -> Result<CatenaryProbe> {
    global_d(acm)?;
    let survey = Survey::run(acm, bound, DEFAULT_FACTORIZATION_CAP)?;
    probe_catenary_from_survey(acm, &survey, bound)
}

pub fn probe_catenary_from_survey(
    acm: &Acm,
    survey: &Survey,
    profile_bound: u64,
) -> Result<CatenaryProbe> {
    let profile = global_profile(acm, profile_bound)?;
    let omega_mu = profile.catenary_order_mu.ok_or(Error::CapExceeded {
        what: "catenary order of mu",
        cap: u64::from(DEFAULT_POWER_CAP),
    })?;
    let element =
        probe_element(&profile, omega_mu - 1).ok_or(Error::Overflow("conjectured element"))?;
    let c = element_catenary(acm, element)?;
    let rhs = (profile.zeta as usize + 1).max(omega_mu as usize).max(c);

    let mut hedges = Vec::new();
    for t in [omega_mu.saturating_sub(1), omega_mu, omega_mu + 1] {
        if t == 0 {
            continue;
        }
        let element = probe_element(&profile, t - 1);
        let catenary = match element {
            Some(x) => match element_catenary(acm, x) {
                Ok(c) => Some(c),
                Err(Error::CapExceeded { .. }) => None,
                Err(e) => return Err(e),
            },
            None => None,
        };
        hedges.push(HedgeValue {
            t,
            element,
            catenary,
        });
    }

    let mut probe = CatenaryProbe {
        profile,
        omega_mu,
        conjectured_element: element,
        conjectured_element_catenary: c,
        rhs,
        hedges,
        bound: survey.bound,
        surveyed: catenary_from_summary(&survey.summary()),
        within_reach: element <= survey.bound,
        verdict: Verdict::InsufficientData,
    };
    probe.verdict = probe.recompute_verdict();
    Ok(probe)
}
