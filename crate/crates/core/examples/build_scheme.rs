//! Builds the scheme of a type prefix and walks its levels.
//!
//! cargo run --example build_scheme -- '[[1,2,0],[2,2,1],[3,2,0]]'

use schemelab::{build_scheme, make_type_prefix};

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "[[1,2,0],[2,2,1],[3,2,0]]".into());
    let raw: Vec<(usize, usize, usize)> = serde_json::from_str::<Vec<[usize; 3]>>(&arg)
        .expect("JSON triples")
        .into_iter()
        .map(|[m, n, r]| (m, n, r))
        .collect();
    let ty = match make_type_prefix(&raw) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("rejected: {e}");
            std::process::exit(2);
        }
    };
    let s = build_scheme(&ty);
    println!("height {} domain {}", s.height(), s.domain_size());
    for k in (0..=s.height()).rev() {
        let members: Vec<String> = s.level(k).iter().map(ToString::to_string).collect();
        println!("F_{k}: {}", members.join(" "));
    }
    if s.height() > 0 {
        let top = &s.level(s.height())[0];
        let d = s.canonical_decomposition(top).unwrap();
        let children: Vec<String> = d.children.iter().map(ToString::to_string).collect();
        println!("{top} has root {} and children {}", d.root, children.join(" "));
    }
    println!("axiom violations: {}", s.verify_axioms().len());
}
