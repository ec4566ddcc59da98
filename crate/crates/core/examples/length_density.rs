//! Length density: closed forms per class next to surveyed minima, and the
//! two-length element built from a primitive root.

use acm::invariants::density::{ld_closed, ld_survey, ld_witness_regular};
use acm::report::format_ratio;
use acm::Acm;

fn show(r: Option<num_rational::Ratio<u64>>) -> String {
    r.map_or_else(|| "none".to_string(), |r| format_ratio(&r))
}

pub fn run_example() -> acm::Result<()> {
    for (a, b, bound) in [
        (1, 4, 2000),
        (1, 5, 2000),
        (4, 6, 2000),
        (4, 12, 4000),
        (6, 6, 2000),
    ] {
        let m = Acm::new(a, b)?;
        let survey = ld_survey(&m, bound)?;
        println!(
            "{m:<9} closed {:<5} surveyed min {:<5} at {}",
            show(ld_closed(&m)?),
            show(survey.map(|w| w.value)),
            survey.map_or("-".into(), |w| w.witness.to_string()),
        );
    }

    for b in [5, 7, 8] {
        let m = Acm::new(1, b)?;
        match ld_witness_regular(&m) {
            Ok((x, profile)) => println!("{m}: {x} has lengths {:?}", profile.lengths),
            Err(e) => println!("{m}: {e}"),
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
