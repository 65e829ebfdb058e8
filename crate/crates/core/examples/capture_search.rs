//! Captured pairs and triples, exhaustive on a small scheme and sampled
//! on a large one.

use schemelab::capture::{find_captured_tuples, is_captured, SearchOptions};
use schemelab::finset::FinSet;
use schemelab::{build_scheme, make_type_prefix};

fn main() {
    let s = build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap());
    for n in [2, 3] {
        let found = find_captured_tuples(&s, &s.domain(), n, None, SearchOptions::default()).unwrap();
        println!("captured {n}-tuples ({:?}):", found.mode);
        for c in &found.certificates {
            println!("  level {} {:?}", c.level, c.points());
        }
    }

    let fam = [FinSet::from_unsorted([0, 1]), FinSet::from_unsorted([0, 2])];
    for l in 1..=s.height() {
        match is_captured(&s, &fam, l) {
            Ok(Some(cert)) => println!("{{0,1}},{{0,2}} captured at {l} with root {}", cert.root),
            Ok(None) => println!("{{0,1}},{{0,2}} not captured at {l}"),
            Err(e) => println!("{e}"),
        }
    }

    let big: Vec<(usize, usize, usize)> = (0..10).map(|k| (1 << k, 2, 0)).collect();
    let s = build_scheme(&make_type_prefix(&big).unwrap());
    let opts = SearchOptions { cap: 5_000, seed: 42 };
    let found = find_captured_tuples(&s, &s.domain(), 2, None, opts).unwrap();
    println!("domain {}: {:?}, {} captured pairs", s.domain_size(), found.mode, found.certificates.len());
}
