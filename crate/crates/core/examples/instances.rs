// Hypercube and generic-arrangement instances, their checks and files.

use omtope::instances::{
    generic_arrangement, hypercube_instance, region_count, validate_instance, OMInstance,
    DEFAULT_CAP, DEFAULT_COORD_BOUND,
};

pub fn run_example() -> omtope::Result<()> {
    let cube = hypercube_instance(4)?;
    println!(
        "hypercube(4): {} topes, {} edges",
        cube.topes().len(),
        cube.edge_count()
    );

    let seed = 7;
    let (g, arr) = generic_arrangement(3, 6, seed, DEFAULT_COORD_BOUND, DEFAULT_CAP)?;
    println!("generic arrangement d=3 n=6 seed={seed}");
    println!("  generators: {g}");
    println!(
        "  {} topes, region_count = {}",
        arr.topes().len(),
        region_count(3, 6)?
    );
    print!("{}", validate_instance(&arr));

    let dir = std::env::temp_dir().join(format!("omtope-instances-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|source| omtope::Error::Io {
        path: dir.clone(),
        source,
    })?;
    let path = dir.join("arr.json");
    arr.save(&path)?;
    let back = OMInstance::load(&path)?;
    println!(
        "round trip equal: {}, digest {}",
        back == arr,
        &back.digest()[..16]
    );
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

#[allow(dead_code)]
fn main() -> omtope::Result<()> {
    run_example()
}
