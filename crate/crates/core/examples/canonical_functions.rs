//! Tables of ρ, Δ and Ξ for the K=3 sample scheme.

use schemelab::{build_scheme, make_type_prefix};

fn main() {
    let s = build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap());
    let d = s.domain_size();

    println!("rho");
    for a in 0..d {
        let row: Vec<String> = (0..d).map(|b| s.rho(a, b).unwrap().to_string()).collect();
        println!("  {a}: {}", row.join(" "));
    }
    println!("delta");
    for a in 0..d {
        let row: Vec<String> = (0..d).map(|b| format!("{:>5}", s.delta(a, b).unwrap().to_string())).collect();
        println!("  {a}: {}", row.join(" "));
    }
    println!("xi (rows alpha, columns k = 0..=K)");
    for a in 0..d {
        let row: Vec<String> = (0..=s.height()).map(|k| format!("{:>2}", s.xi(a, k).unwrap())).collect();
        println!("  {a}: {}", row.join(" "));
    }
    for a in 0..d {
        println!("(alpha)_1 for alpha={a}: {}", s.closure(a, 1).unwrap());
    }
}
