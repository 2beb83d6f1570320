// The complex with facets `[n] - S(T, Q)` and its long f-vector.

use omtope::complexes::{beta_vector, lambda_complex, long_f_vector};
use omtope::cycles::distinguished_cycle;
use omtope::decomp::decompose;
use omtope::instances::hypercube_instance;
use omtope::SignVector;

pub fn run_example() -> omtope::Result<()> {
    for (n, tope) in [(5, "+-+-+"), (6, "+-+-+-")] {
        let cube = hypercube_instance(n)?;
        let order: Vec<usize> = (1..=n).collect();
        let cycle = distinguished_cycle(&cube, &SignVector::all_plus(n)?, &order)?;
        let t: SignVector = tope.parse()?;
        let d = decompose(&cube, &cycle, &t)?;
        let k = lambda_complex(&t, &d)?;
        let facets: Vec<String> = k.facets().iter().map(ToString::to_string).collect();
        println!("T = {t}: facets {}", facets.join(" "));
        println!("  f(Lambda; 6) = {}", long_f_vector(&k, 6)?.entries());
        println!("  beta({n}; 6)  = {}", beta_vector(n, 6)?.entries());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> omtope::Result<()> {
    run_example()
}
