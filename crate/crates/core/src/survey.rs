//! Range scans over `M ∩ [1, bound]`: one row per nonunit element, computed
//! in parallel chunks and delivered in ascending order.

use std::collections::BTreeMap;

use log::warn;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorization::{catenary_of_factorizations, enumerate_factorizations, LengthProfile};
use crate::invariants::omega::{omega_closed, OmegaVariant};
use crate::monoid::{Acm, AcmDescriptor};
use crate::report::format_delta_set;

const CHUNK: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub element: u64,
    pub factorization_count: usize,
    /// Absent when enumeration hit the cap.
    pub profile: Option<LengthProfile>,
    pub catenary: Option<usize>,
    /// Closed-form omega (ceiling variant for singular monoids).
    pub omega: Option<u64>,
    pub capped: bool,
}

impl SurveyRow {
    pub fn flags(&self) -> String {
        let mut flags = Vec::new();
        if self.capped {
            flags.push("capped");
        }
        if self.profile.as_ref().is_some_and(|p| p.spread > 0) {
            flags.push("multi-length");
        } else if self.factorization_count > 1 {
            flags.push("multi-factorization");
        }
        flags.join(";")
    }

    pub fn delta_set_string(&self) -> String {
        self.profile
            .as_ref()
            .map(|p| format_delta_set(&p.delta_set))
            .unwrap_or_default()
    }
}

/// Computes the row for a single element. A factorization cap produces a
/// capped row instead of an error.
pub fn survey_element(acm: &Acm, x: u64, cap: usize) -> Result<SurveyRow> {
    let omega = omega_closed(acm, x, OmegaVariant::Ceiling).ok();
    match enumerate_factorizations(acm, x, cap) {
        Ok(zs) => Ok(SurveyRow {
            element: x,
            factorization_count: zs.len(),
            profile: Some(LengthProfile::from_factorizations(&zs)?),
            catenary: Some(catenary_of_factorizations(&zs)),
            omega,
            capped: false,
        }),
        Err(Error::CapExceeded { .. }) => {
            warn!("{x}: more than {cap} factorizations, skipped");
            Ok(SurveyRow {
                element: x,
                factorization_count: 0,
                profile: None,
                catenary: None,
                omega,
                capped: true,
            })
        }
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Survey {
    pub monoid: AcmDescriptor,
    pub bound: u64,
    pub rows: Vec<SurveyRow>,
}

impl Survey {
    pub fn run(acm: &Acm, bound: u64, cap: usize) -> Result<Self> {
        Self::stream(acm, bound, cap, |_| Ok(()))
    }

    /// Like [`Survey::run`], handing each row to `sink` in ascending order
    /// as soon as its chunk finishes.
    pub fn stream<F>(acm: &Acm, bound: u64, cap: usize, mut sink: F) -> Result<Self>
    where
        F: FnMut(&SurveyRow) -> Result<()>,
    {
        acm.atom_table(bound);
        let elements: Vec<u64> = acm.descriptor().nonunits_up_to(bound).collect();
        let mut rows = Vec::with_capacity(elements.len());
        for chunk in elements.chunks(CHUNK) {
            let done: Vec<SurveyRow> = chunk
                .par_iter()
                .map(|&x| survey_element(acm, x, cap))
                .collect::<Result<_>>()?;
            for row in done {
                sink(&row)?;
                rows.push(row);
            }
        }
        Ok(Self {
            monoid: *acm.descriptor(),
            bound,
            rows,
        })
    }

    pub fn summary(&self) -> SurveySummary {
        SurveySummary::from_rows(&self.rows)
    }
}

/// Aggregates over a scan. Every extremum carries its smallest witness.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SurveySummary {
    pub elements: usize,
    pub capped: Vec<u64>,
    pub multi_length: usize,
    pub max_catenary: Option<Witnessed<usize>>,
    #[serde(serialize_with = "serialize_ld")]
    pub min_length_density: Option<Witnessed<Ratio<u64>>>,
    /// Each gap seen in a length set, with the first element showing it.
    pub delta_witnesses: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witnessed<T> {
    pub value: T,
    pub witness: u64,
}

fn serialize_ld<S: serde::Serializer>(
    v: &Option<Witnessed<Ratio<u64>>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    match v {
        None => s.serialize_none(),
        Some(w) => {
            let mut st = s.serialize_struct("Witnessed", 2)?;
            st.serialize_field("value", &crate::report::format_ratio(&w.value))?;
            st.serialize_field("witness", &w.witness)?;
            st.end()
        }
    }
}

impl SurveySummary {
    pub fn from_rows(rows: &[SurveyRow]) -> Self {
        let mut s = Self {
            elements: rows.len(),
            ..Self::default()
        };
        for row in rows {
            if row.capped {
                s.capped.push(row.element);
            }
            if let Some(c) = row.catenary {
                if s.max_catenary.is_none_or(|m| c > m.value) {
                    s.max_catenary = Some(Witnessed {
                        value: c,
                        witness: row.element,
                    });
                }
            }
            let Some(profile) = &row.profile else {
                continue;
            };
            if profile.spread > 0 {
                s.multi_length += 1;
            }
            if let Some(ld) = profile.length_density {
                if s.min_length_density.is_none_or(|m| ld < m.value) {
                    s.min_length_density = Some(Witnessed {
                        value: ld,
                        witness: row.element,
                    });
                }
            }
            for &gap in &profile.delta_set {
                s.delta_witnesses.entry(gap).or_insert(row.element);
            }
        }
        s
    }

    pub fn max_delta(&self) -> Option<usize> {
        self.delta_witnesses.keys().next_back().copied()
    }
}

/// Every gap in `Δ(M)` seen up to `bound`, with its first witness.
pub fn delta_set_survey(acm: &Acm, bound: u64) -> Result<BTreeMap<usize, u64>> {
    let survey = Survey::run(acm, bound, crate::factorization::DEFAULT_FACTORIZATION_CAP)?;
    Ok(survey.summary().delta_witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_survey_examples() {
        let m = Acm::new(4, 12).unwrap();
        assert_eq!(
            delta_set_survey(&m, 10_000).unwrap(),
            BTreeMap::from([(1, 1600)])
        );
        let m = Acm::new(3, 6).unwrap();
        assert!(delta_set_survey(&m, 10_000).unwrap().is_empty());
        let m = Acm::new(1, 5).unwrap();
        assert_eq!(
            delta_set_survey(&m, 10_000).unwrap(),
            BTreeMap::from([(1, 2736), (2, 1296)])
        );
    }

    #[test]
    fn rows_match_single_element_calls() {
        let m = Acm::new(1, 4).unwrap();
        let survey = Survey::run(&m, 800, 1000).unwrap();
        let row = survey.rows.iter().find(|r| r.element == 693).unwrap();
        assert_eq!(row.factorization_count, 2);
        assert_eq!(row.catenary, Some(2));
        assert_eq!(row.omega, Some(4));
        assert_eq!(*row, survey_element(&m, 693, 1000).unwrap());
        assert!(survey.rows.windows(2).all(|w| w[0].element < w[1].element));
    }

    #[test]
    fn capped_rows_are_flagged() {
        let m = Acm::new(1, 4).unwrap();
        let row = survey_element(&m, 693, 1).unwrap();
        assert!(row.capped);
        assert_eq!(row.flags(), "capped");
        let summary = SurveySummary::from_rows(&[row]);
        assert_eq!(summary.capped, vec![693]);
    }
}
