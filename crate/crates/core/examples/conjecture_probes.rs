//! Global singular monoids: the parameters zeta, mu, mu' and the catenary
//! order, then both conjecture probes over one shared scan.

use acm::conjecture::{global_profile, probe_catenary_from_survey, probe_ld_from_survey};
use acm::{Acm, Survey};

pub fn run_example() -> acm::Result<()> {
    for (a, b) in [(6, 6), (12, 12)] {
        let m = Acm::new(a, b)?;
        let bound = 10_000;
        let profile = global_profile(&m, bound)?;
        println!(
            "{m}: zeta = {}, mu = {} (k = {:?}), mu' = {}, catenary order of mu = {:?}",
            profile.zeta,
            profile.mu.element,
            profile.mu.k,
            profile.mu_prime.element,
            profile.catenary_order_mu
        );

        let survey = Survey::run(&m, bound, 100_000)?;
        let ld = probe_ld_from_survey(&m, &survey)?;
        println!("  LD probe: {:?}", ld.verdict);
        match probe_catenary_from_survey(&m, &survey, bound) {
            Ok(p) => println!(
                "  catenary probe: rhs {} (c({}) = {}), surveyed {} -> {:?}",
                p.rhs,
                p.conjectured_element,
                p.conjectured_element_catenary,
                p.surveyed.value,
                p.verdict
            ),
            Err(e) => println!("  catenary probe: {e}"),
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
