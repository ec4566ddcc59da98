//! Length density: closed forms by class, range surveys and the two-length
//! witness for regular monoids.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::factorization::{enumerate_factorizations, LengthProfile, DEFAULT_FACTORIZATION_CAP};
use crate::kernel;
use crate::monoid::{Acm, Classification};
use crate::survey::{Survey, SurveySummary, Witnessed};

fn class_mismatch(acm: &Acm, expected: &'static str) -> Error {
    Error::ClassMismatch {
        expected,
        actual: acm.classification().name(),
    }
}

/// `None` when `φ(b) <= 2` (half-factorial), else `1 / (φ(b) - 2)`.
pub fn ld_closed_regular(acm: &Acm) -> Result<Option<Ratio<u64>>> {
    if !acm.classification().is_regular() {
        return Err(class_mismatch(acm, "regular"));
    }
    let phi = kernel::euler_phi(acm.b())?;
    Ok((phi >= 3).then(|| Ratio::new(1, phi - 2)))
}

/// `None` for `α = β = 1`, `1` for `α = β > 1`, `1/δ` for `α < β`.
pub fn ld_closed_local(acm: &Acm) -> Result<Option<Ratio<u64>>> {
    let params = acm
        .local_params()
        .ok_or_else(|| class_mismatch(acm, "local singular"))?;
    Ok(if params.alpha == params.beta {
        (params.alpha > 1).then(|| Ratio::from_integer(1))
    } else {
        Some(Ratio::new(1, u64::from(params.delta)))
    })
}

/// `M_{b,b}` with `b` divisible by at least two primes has density 1.
pub fn ld_closed_power(acm: &Acm) -> Result<Ratio<u64>> {
    if acm.a() != acm.b() {
        return Err(Error::Unavailable(format!("{acm} does not have a = b")));
    }
    match acm.classification() {
        Classification::GlobalSingular { .. } => Ok(Ratio::from_integer(1)),
        _ => Err(Error::Unavailable(format!(
            "{acm}: b = {} has a single prime divisor",
            acm.b()
        ))),
    }
}

/// Whichever closed form covers the class. Global singular monoids other
/// than `M_{b,b}` have none.
pub fn ld_closed(acm: &Acm) -> Result<Option<Ratio<u64>>> {
    match acm.classification() {
        Classification::Regular => ld_closed_regular(acm),
        Classification::LocalSingular(_) => ld_closed_local(acm),
        Classification::GlobalSingular { .. } => ld_closed_power(acm).map(Some),
    }
}

/// Smallest `LD(x)` over `x <= bound` with positive spread, with its least
/// witness. `None` when every scanned element is half-factorial.
pub fn ld_survey(acm: &Acm, bound: u64) -> Result<Option<Witnessed<Ratio<u64>>>> {
    let survey = Survey::run(acm, bound, DEFAULT_FACTORIZATION_CAP)?;
    Ok(ld_from_summary(&survey.summary()))
}

pub fn ld_from_summary(summary: &SurveySummary) -> Option<Witnessed<Ratio<u64>>> {
    summary.min_length_density
}

/// `x = a_1^φ · b_1^φ` for primes `a_1 ≡ g` and `b_1 ≡ g^{-1} (mod b)` with
/// `g` a primitive root. Its lengths are exactly `{2, φ(b)}`.
pub fn ld_witness_regular(acm: &Acm) -> Result<(u64, LengthProfile)> {
    if !acm.classification().is_regular() {
        return Err(class_mismatch(acm, "regular"));
    }
    let b = acm.b();
    let phi = kernel::euler_phi(b)?;
    if phi < 3 {
        return Err(Error::Unavailable(format!("φ({b}) = {phi} < 3")));
    }
    let g = primitive_root(b)?
        .ok_or_else(|| Error::Unavailable(format!("no primitive root mod {b}")))?;
    let none = BTreeSet::new();
    let a1 = kernel::find_prime_in_class(g, b, &none)?;
    let b1 = kernel::find_prime_in_class(kernel::mod_inverse(g, b)?, b, &none)?;
    let e = u32::try_from(phi).map_err(|_| Error::Overflow("witness"))?;
    let x = kernel::checked_pow(a1, e)
        .zip(kernel::checked_pow(b1, e))
        .and_then(|(s, t)| s.checked_mul(t))
        .ok_or(Error::Overflow("length density witness"))?;
    let profile = LengthProfile::from_factorizations(&enumerate_factorizations(
        acm,
        x,
        DEFAULT_FACTORIZATION_CAP,
    )?)?;
    if profile.lengths != [2, phi as usize] {
        return Err(Error::Structural(format!(
            "{x} has lengths {:?}, expected {{2, {phi}}}",
            profile.lengths
        )));
    }
    Ok((x, profile))
}

/// Least residue of multiplicative order `φ(b)` mod `b`, if any.
pub fn primitive_root(b: u64) -> Result<Option<u64>> {
    let phi = kernel::euler_phi(b)?;
    for g in 1..b.max(2) {
        if num_integer::Integer::gcd(&g, &b) == 1 && kernel::multiplicative_order(g, b)? == phi {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acm(a: u64, b: u64) -> Acm {
        Acm::new(a, b).unwrap()
    }

    #[test]
    fn closed_regular() {
        assert_eq!(ld_closed_regular(&acm(1, 4)).unwrap(), None);
        assert_eq!(
            ld_closed_regular(&acm(1, 5)).unwrap(),
            Some(Ratio::new(1, 2))
        );
        assert_eq!(
            ld_closed_regular(&acm(1, 7)).unwrap(),
            Some(Ratio::new(1, 4))
        );
        assert!(ld_closed_regular(&acm(4, 6)).is_err());
    }

    #[test]
    fn closed_local() {
        assert_eq!(ld_closed_local(&acm(3, 6)).unwrap(), None);
        assert_eq!(
            ld_closed_local(&acm(4, 12)).unwrap(),
            Some(Ratio::from_integer(1))
        );
        assert_eq!(
            ld_closed_local(&acm(8, 14)).unwrap(),
            Some(Ratio::new(1, 2))
        );
        assert!(ld_closed_local(&acm(1, 5)).is_err());
    }

    #[test]
    fn closed_power() {
        assert_eq!(ld_closed_power(&acm(6, 6)).unwrap(), Ratio::from_integer(1));
        assert_eq!(
            ld_closed_power(&acm(12, 12)).unwrap(),
            Ratio::from_integer(1)
        );
        assert!(ld_closed_power(&acm(4, 4)).is_err());
        assert!(ld_closed_power(&acm(4, 6)).is_err());
    }

    #[test]
    fn surveys() {
        let w = ld_survey(&acm(1, 5), 2000).unwrap().unwrap();
        assert_eq!((w.value, w.witness), (Ratio::new(1, 2), 1296));
        assert_eq!(ld_survey(&acm(3, 6), 10_000).unwrap(), None);
        let w = ld_survey(&acm(4, 6), 2000).unwrap().unwrap();
        assert_eq!((w.value, w.witness), (Ratio::from_integer(1), 1000));
    }

    #[test]
    fn witnesses() {
        let (x, p) = ld_witness_regular(&acm(1, 5)).unwrap();
        assert_eq!(x, 1296);
        assert_eq!(p.lengths, vec![2, 4]);
        let (x, p) = ld_witness_regular(&acm(1, 7)).unwrap();
        assert_eq!(x, 729 * 15625);
        assert_eq!(p.lengths, vec![2, 6]);
        assert!(matches!(
            ld_witness_regular(&acm(1, 8)),
            Err(Error::Unavailable(_))
        ));
        assert!(matches!(
            ld_witness_regular(&acm(1, 4)),
            Err(Error::Unavailable(_))
        ));
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5).unwrap(), Some(2));
        assert_eq!(primitive_root(7).unwrap(), Some(3));
        assert_eq!(primitive_root(8).unwrap(), None);
        assert_eq!(primitive_root(12).unwrap(), None);
        assert_eq!(primitive_root(15).unwrap(), None);
    }
}
