// `Q(T, R)` by exact linear algebra, checked against subset enumeration.

use omtope::cycles::distinguished_cycle;
use omtope::decomp::{brute_force_decompose, decompose, decompose_in_window};
use omtope::instances::hypercube_instance;
use omtope::SignVector;

pub fn run_example() -> omtope::Result<()> {
    let cube = hypercube_instance(5)?;
    let cycle = distinguished_cycle(&cube, &SignVector::all_plus(5)?, &[1, 2, 3, 4, 5])?;
    let t: SignVector = "+-+-+".parse()?;

    let d = decompose(&cube, &cycle, &t)?;
    let members: Vec<String> = d.members().iter().map(ToString::to_string).collect();
    println!("T = {t}");
    println!("lambda = {:?}", d.coefficients());
    println!("Q(T, R) = {{{}}}, |Q| = {}", members.join(", "), d.size());

    let oracle = brute_force_decompose(&cycle, &t)?;
    println!(
        "subset enumeration agrees: {}",
        oracle.member_set() == d.member_set()
    );
    let shifted = decompose_in_window(&cycle, &t, 3)?;
    println!(
        "window 3 gives the same set: {}",
        shifted.member_set() == d.member_set()
    );

    let mut sizes = std::collections::BTreeMap::new();
    for tope in cube.topes() {
        *sizes
            .entry(decompose(&cube, &cycle, tope)?.size())
            .or_insert(0) += 1;
    }
    println!("|Q| histogram over all 32 topes: {sizes:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> omtope::Result<()> {
    run_example()
}
