macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(sign_vectors, "sign_vectors.rs");
example!(instances, "instances.rs");
example!(symmetric_cycles, "symmetric_cycles.rs");
example!(decomposition, "decomposition.rs");
example!(lambda_complex, "lambda_complex.rs");
example!(long_h_vectors, "long_h_vectors.rs");
example!(worked_pair, "worked_pair.rs");
example!(sweep, "sweep.rs");

#[test]
fn sign_vectors_runs() {
    sign_vectors::run_example().unwrap();
}

#[test]
fn instances_runs() {
    instances::run_example().unwrap();
}

#[test]
fn symmetric_cycles_runs() {
    symmetric_cycles::run_example().unwrap();
}

#[test]
fn decomposition_runs() {
    decomposition::run_example().unwrap();
}

#[test]
fn lambda_complex_runs() {
    lambda_complex::run_example().unwrap();
}

#[test]
fn long_h_vectors_runs() {
    long_h_vectors::run_example().unwrap();
}

#[test]
fn worked_pair_runs() {
    worked_pair::run_example().unwrap();
}

#[test]
fn sweep_runs() {
    sweep::run_example().unwrap();
}
