//! Omega primality in a regular and a singular monoid, with the bounded
//! bullet search deciding between the two roundings of the singular formula.

use acm::invariants::omega::{
    is_bullet, omega_closed, omega_oracle, omega_witness_regular, OmegaVariant,
};
use acm::Acm;

pub fn run_example() -> acm::Result<()> {
    let h = Acm::new(1, 4)?;
    for x in [5, 9, 49, 693] {
        let witness = omega_witness_regular(&h, x)?;
        println!(
            "{h}: omega({x}) = {}, bullet {witness:?}",
            omega_closed(&h, x, OmegaVariant::default())?
        );
    }

    let m = Acm::new(4, 12)?;
    println!(
        "{m}: 4 * 4 * 100 is a bullet of 40: {}",
        is_bullet(&m, 40, &[4, 4, 100])?
    );
    for x in [4, 16, 40, 100] {
        let r = omega_oracle(&m, x, 1000, 6)?;
        println!(
            "{m}: x = {x:>3}  floor {}  ceiling {}  oracle >= {} via {:?}{}",
            r.floor_variant.unwrap_or(0),
            r.ceiling_variant.unwrap_or(0),
            r.oracle_lower_bound,
            r.witness_bullet,
            if r.exhaustive {
                ""
            } else {
                " (search truncated)"
            },
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
