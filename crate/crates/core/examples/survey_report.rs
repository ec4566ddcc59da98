//! Streams a range survey as CSV and prints the aggregate footer as JSON,
//! the same layout `acm survey --format csv` uses.

use acm::report::{format_delta_set, format_ratio};
use acm::{Acm, Survey};

pub fn run_example() -> acm::Result<()> {
    let m = Acm::new(4, 6)?;
    println!("element,min_len,max_len,delta_set,ld,catenary,flags");
    let survey = Survey::stream(&m, 3000, 100_000, |row| {
        // only elements with more than one factorization
        if row.factorization_count > 1 {
            let p = row.profile.as_ref().expect("not capped");
            println!(
                "{},{},{},{},{},{},{}",
                row.element,
                p.min_length,
                p.max_length,
                format_delta_set(&p.delta_set),
                p.length_density
                    .map(|r| format_ratio(&r))
                    .unwrap_or_default(),
                row.catenary.unwrap_or(0),
                row.flags()
            );
        }
        Ok(())
    })?;
    let summary = survey.summary();
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    println!("{json}");
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
