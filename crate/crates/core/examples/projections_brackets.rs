//! Brackets of captured pairs, the H ideals and the projections π_n.

use schemelab::capture::{captured_level, h_ideal_generator, project, sq_bracket, sq_bracket_set};
use schemelab::finset::FinSet;
use schemelab::{build_scheme, make_type_prefix};

fn main() {
    let s = build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0), (6, 3, 2)]).unwrap());
    let d = s.domain_size();
    for a in 0..d {
        for b in a + 1..d {
            if let Some(l) = captured_level(&s, &FinSet::from_unsorted([a, b])) {
                println!("[[{a},{b}]] = {} (captured at {l})", sq_bracket(&s, a, b).unwrap());
            }
        }
    }
    println!("brackets of the whole domain: {:?}", sq_bracket_set(&s, &s.domain()).unwrap());
    for n in 0..=s.height() {
        println!("H_{n}({}) = {}", d - 1, h_ideal_generator(&s, d - 1, n).unwrap());
    }
    for n in [2, 3] {
        let set = FinSet::range(0, d.min(10));
        println!("pi_{n}({set}) = {:?}", project(&s, &set, n).unwrap());
    }
}
