// Distinguished cycles on the cube and backtracking search elsewhere.

use omtope::cycles::{distinguished_cycle, find_symmetric_cycle, validate_cycle, DEFAULT_BUDGET};
use omtope::instances::{
    generic_arrangement, hypercube_instance, DEFAULT_CAP, DEFAULT_COORD_BOUND,
};
use omtope::SignVector;

pub fn run_example() -> omtope::Result<()> {
    let cube = hypercube_instance(3)?;
    let c = distinguished_cycle(&cube, &SignVector::all_plus(3)?, &[1, 2, 3])?;
    let verts: Vec<String> = c.vertices().iter().map(ToString::to_string).collect();
    println!(
        "distinguished cycle on hypercube(3): {}",
        verts.join(" -> ")
    );
    print!("{}", validate_cycle(&cube, &c));

    let (_, arr) = generic_arrangement(3, 5, 2, DEFAULT_COORD_BOUND, DEFAULT_CAP)?;
    let start = arr.topes()[0];
    match find_symmetric_cycle(&arr, &start, DEFAULT_BUDGET)? {
        Some(c) => {
            let flips: Vec<String> = c
                .flips()
                .iter()
                .map(|f| f.map_or("?".into(), |e| e.to_string()))
                .collect();
            println!(
                "found cycle through {start}, flip sequence {}",
                flips.join(",")
            );
            println!("valid: {}", validate_cycle(&arr, &c).is_ok());
        }
        None => println!("budget exhausted without a cycle through {start}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> omtope::Result<()> {
    run_example()
}
