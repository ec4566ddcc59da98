//! Rendering helpers shared by reports: rationals as `p/q`, delta sets as
//! `{a;b}`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::Serializer;

pub fn format_ratio(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn format_delta_set(set: &BTreeSet<usize>) -> String {
    let parts: Vec<String> = set.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(";"))
}

pub fn serialize_ratio<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

pub fn serialize_opt_ratio<S: Serializer>(r: &Option<Ratio<u64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_ratio(r)),
        None => s.serialize_none(),
    }
}
