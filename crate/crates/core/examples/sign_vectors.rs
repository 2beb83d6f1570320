// Parsing, ordering and combining topes.

use omtope::signvec::tope_sum;
use omtope::SignVector;

pub fn run_example() -> omtope::Result<()> {
    let t: SignVector = "+-+-+".parse()?;
    let q: SignVector = "++--+".parse()?;
    println!("T = {t}, Q = {q}");
    println!("S(T, Q) = {}", t.separation_set(&q)?);
    println!("-T = {}", t.negate());
    println!("T reoriented by Q = {}", t.reorient(&q)?);

    let mut topes: Vec<SignVector> = ["-++", "+-+", "+++", "++-"]
        .iter()
        .map(|s| s.parse())
        .collect::<omtope::Result<_>>()?;
    topes.sort();
    let sorted: Vec<String> = topes.iter().map(ToString::to_string).collect();
    println!("sorted ('+' before '-'): {}", sorted.join(" "));

    let members: Vec<SignVector> = ["+++", "+--", "--+"]
        .iter()
        .map(|s| s.parse())
        .collect::<omtope::Result<_>>()?;
    println!("+++ + +-- + --+ = {}", tope_sum(&members)?);

    if let Err(e) = "+x-".parse::<SignVector>() {
        println!("parse error: {e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> omtope::Result<()> {
    run_example()
}
