//! Catenary degrees of local singular monoids: closed form, a surveyed
//! maximum, an explicit chain to the canonical factorization, and the
//! family realizing every degree.

use acm::invariants::catenary::{
    acm_with_catenary_degree, build_canonical_chain, catenary_closed_local,
    catenary_lower_bound_check, catenary_survey,
};
use acm::{enumerate_factorizations, Acm};

pub fn run_example() -> acm::Result<()> {
    let m = Acm::new(8, 14)?;
    let params = m.local_params().expect("local singular");
    println!(
        "{m}: p = {}, alpha = {}, beta = {}",
        params.p, params.alpha, params.beta
    );
    println!("closed form c = {}", catenary_closed_local(&m)?);

    let x = 22u64.pow(4);
    for z in enumerate_factorizations(&m, x, 100)? {
        let chain = build_canonical_chain(&m, x, &z)?;
        if chain.link_distances().is_empty() {
            println!("{z}  (canonical)");
            continue;
        }
        let steps: Vec<String> = chain.steps().iter().map(|s| s.to_string()).collect();
        println!(
            "{}  (links {:?})",
            steps.join("  ->  "),
            chain.link_distances()
        );
    }

    for n in 2..=4 {
        let desc = acm_with_catenary_degree(n)?;
        let m = Acm::from_descriptor(desc)?;
        let bound = if n == 4 { 300_000 } else { 10_000 };
        let s = catenary_survey(&m, bound)?;
        println!(
            "n = {n}: {m}, closed {}, surveyed {} at {} (x <= {bound})",
            catenary_closed_local(&m)?,
            s.value,
            s.witness.unwrap_or(0)
        );
    }

    let check = catenary_lower_bound_check(&Acm::new(4, 12)?, 10_000)?;
    println!(
        "M_{{4,12}}: 2 + max delta = {} <= closed {}: {}",
        check.lower_bound.unwrap_or(0),
        check.closed_form.unwrap_or(0),
        !check.violation
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
