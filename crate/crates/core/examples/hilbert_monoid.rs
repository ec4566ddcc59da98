//! The Hilbert monoid `1 + 4N`: atoms, the two factorizations of 693,
//! their distance and the catenary degree.
//!
//! ```bash
//! cargo run --example hilbert_monoid
//! ```

use acm::{enumerate_factorizations, factorization_distance, length_profile, Acm};

pub fn run_example() -> acm::Result<()> {
    let h = Acm::new(1, 4)?;
    println!("{h} is {}", h.classification().name());
    println!("atoms up to 100: {:?}", h.atoms_up_to(100));

    let zs = enumerate_factorizations(&h, 693, 1000)?;
    for z in &zs {
        println!("693 = {z}");
    }
    println!("distance: {}", factorization_distance(&zs[0], &zs[1])?);
    println!("c(693) = {}", acm::catenary_of_element(&h, 693)?);

    let profile = length_profile(&h, 693)?;
    println!("L(693) = {:?}", profile.lengths);

    // 21 divides 693 in H but 3 * 7 = 21 is not a prime there
    println!("21 |_H 693: {}", h.divides_in_monoid(21, 693)?);
    println!("21 |_H 9 * 77: {}", h.divides_in_monoid(21, 9 * 77)?);
    println!("21 |_H 9: {}", h.divides_in_monoid(21, 9)?);
    println!("21 |_H 77: {}", h.divides_in_monoid(21, 77)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
