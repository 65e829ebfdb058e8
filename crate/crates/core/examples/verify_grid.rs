//! Runs every verification suite over a small grid of prefixes.

use schemelab::verify::{run_suite, Fixture, GridConfig, SUITES};

fn main() {
    let cfg = GridConfig {
        max_height: 3,
        max_domain: 40,
        random: 10,
        random_max_domain: 128,
        seed: 1,
        ..GridConfig::default()
    };
    let mut ok = true;
    for name in SUITES {
        let r = run_suite(name, &cfg, Fixture::Clean).unwrap();
        ok &= r.passed();
        println!("{r}");
    }
    let r = run_suite("axioms", &cfg, Fixture::Corrupted).unwrap();
    println!("corrupted fixture caught: {}", !r.passed());
    std::process::exit(if ok { 0 } else { 1 });
}
