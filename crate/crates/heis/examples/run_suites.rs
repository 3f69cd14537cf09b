use std::time::Instant;

fn main() {
    let tol = heis::report::Tolerances::default();
    for name in heis::suites::SUITE_NAMES {
        let t0 = Instant::now();
        match heis::suites::run_suite(name, 7, &tol) {
            Ok(rep) => {
                let bad: Vec<_> = rep.entries.iter().filter(|e| !e.pass).collect();
                println!(
                    "{name}: {}/{} pass in {:.2?}{}",
                    rep.passed(),
                    rep.entries.len(),
                    t0.elapsed(),
                    if bad.is_empty() { String::new() } else { format!("  FAILURES: {bad:?}") }
                );
            }
            Err(e) => println!("{name}: ERROR {e}"),
        }
    }
    let t0 = Instant::now();
    let rep = heis::suites::consistency_sweep(100, 100, &tol).unwrap();
    println!("consistency(100x100): {}/{} pass in {:.2?}", rep.passed(), rep.entries.len(), t0.elapsed());
}
