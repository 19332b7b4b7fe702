use curvegraph::curves::*;

#[test]
fn growth() {
    let m = SurfaceModel::new(0, 7).unwrap();
    let seeds = default_seeds(&m);
    let gens = braid_generators(&m).unwrap();
    println!("seeds: {}", seeds.len());
    for (depth, maxlen) in [(2usize, 8usize), (3, 8), (3, 10), (4, 10), (4, 12)] {
        let t0 = std::time::Instant::now();
        match enumerate_curves(&m, &seeds, &gens, depth, maxlen, 100_000) {
            Ok(sample) => {
                println!(
                    "depth {depth} maxlen {maxlen}: {} classes, {:?} total",
                    sample.len(),
                    t0.elapsed()
                );
            }
            Err(e) => println!("depth {depth} maxlen {maxlen}: {e}"),
        }
        if t0.elapsed().as_secs() > 600 { break; }
    }
}
