// One pair of topes through the whole pipeline.

use omtope::cycles::distinguished_cycle;
use omtope::instances::hypercube_instance;
use omtope::verify::{evaluate_pair, PlanSide};
use omtope::SignVector;

fn cube_side(n: usize) -> omtope::Result<PlanSide> {
    let cube = hypercube_instance(n)?;
    let order: Vec<usize> = (1..=n).collect();
    let cycle = distinguished_cycle(&cube, &SignVector::all_plus(n)?, &order)?;
    Ok(PlanSide::new(cube, cycle))
}

pub fn run_example() -> omtope::Result<()> {
    let r = evaluate_pair(
        &cube_side(5)?,
        &"+-+-+".parse()?,
        &cube_side(6)?,
        &"+-+-+-".parse()?,
    )?;
    println!("|Q'| = {}, |Q''| = {}", r.q1, r.q2);
    println!("f'  = {}   f'' = {}", r.f1, r.f2);
    println!("omega' = {}   omega'' = {}", r.omega1, r.omega2);
    println!("h'  = {}", r.h1);
    println!("h'' = {}", r.h2);
    println!("<h', h''> = {} (kernel form {})", r.hh_value, r.raw_value);
    println!("orthogonal: {}, anomalies: {:?}", r.orthogonal, r.anomalies);
    Ok(())
}

#[allow(dead_code)]
fn main() -> omtope::Result<()> {
    run_example()
}
