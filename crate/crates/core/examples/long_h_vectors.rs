// Transforms, complementary f-vectors, long h-vectors and their relations.

use omtope::arith::{rational_string, IntVector};
use omtope::complexes::LongFVector;
use omtope::spectra::{
    build_transform, check_dehn_sommerville, eigenvector_check, iota_product, long_h_vector,
    omega_long_f, span_membership, Side, Symmetry, TransformKind,
};

pub fn run_example() -> omtope::Result<()> {
    let m = build_transform(TransformKind::MKernel, 3);
    println!("M(3) rows:");
    for i in 0..m.rows() {
        println!("  {}", m.row(i));
    }

    let pentagon = LongFVector::new(6, IntVector::from_i64(&[1, 5, 10, 5, 0, 0, 0]))?;
    let octahedron = LongFVector::new(6, IntVector::from_i64(&[1, 6, 15, 12, 3, 0, 0]))?;
    for (name, f, m) in [("s = 5", &pentagon, 5), ("t = 6", &octahedron, 6)] {
        let omega = omega_long_f(f, m, 6)?;
        let h = long_h_vector(f, m, 6)?;
        println!("{name}: omega = {}, h = {}", omega.entries(), h.entries());
        println!(
            "  symmetric: {}, antisymmetric: {}, <h, iota> = {}, U-eigenvalue {:?}",
            check_dehn_sommerville(&h, Symmetry::Symmetric),
            check_dehn_sommerville(&h, Symmetry::Antisymmetric),
            iota_product(&h),
            eigenvector_check(&h, Side::Left)
        );
    }

    let h1 = long_h_vector(&pentagon, 5, 6)?;
    let span = span_membership(&h1, 5, 6)?;
    let coeffs: Vec<String> = span.coefficients.iter().map(rational_string).collect();
    println!(
        "h' in span of simplex boundaries {:?}: {} with coefficients ({})",
        span.basis,
        span.member,
        coeffs.join(", ")
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> omtope::Result<()> {
    run_example()
}
