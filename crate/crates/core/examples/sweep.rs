// Exhaustive sweeps, with and without the hypotheses.

use omtope::cycles::distinguished_cycle;
use omtope::instances::hypercube_instance;
use omtope::verify::{negative_controls, run_experiment, ExperimentPlan, PlanSide};
use omtope::SignVector;

fn cube_side(n: usize) -> omtope::Result<PlanSide> {
    let cube = hypercube_instance(n)?;
    let order: Vec<usize> = (1..=n).collect();
    let cycle = distinguished_cycle(&cube, &SignVector::all_plus(n)?, &order)?;
    Ok(PlanSide::new(cube, cycle))
}

pub fn run_example() -> omtope::Result<()> {
    println!("== hypercube(5) x hypercube(6), min_q = 5");
    let r = run_experiment(&ExperimentPlan::new(cube_side(5)?, cube_side(6)?))?;
    print!("{}", r.summary());

    println!("== hypercube(5) x hypercube(7), parity relaxed");
    let plan = ExperimentPlan::new(cube_side(5)?, cube_side(7)?).allow_equal_parity();
    let r = negative_controls(&plan)?;
    print!("{}", r.summary());
    if let Some(p) = r.pairs.iter().find(|p| !p.orthogonal) {
        println!("witness: {} x {} gives {}", p.tope1, p.tope2, p.hh_value);
    }

    println!("== hypercube(3) x hypercube(6), min_q = 3");
    let r = negative_controls(&ExperimentPlan::new(cube_side(3)?, cube_side(6)?).with_min_q(3))?;
    print!("{}", r.summary());
    Ok(())
}

#[allow(dead_code)]
fn main() -> omtope::Result<()> {
    run_example()
}
