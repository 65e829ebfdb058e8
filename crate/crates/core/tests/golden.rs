//! Worked values frozen in tests/golden/worked_examples.json, checked against
//! both the fast paths and the oracle.

use std::collections::BTreeMap;

use schemelab::capture::{h_ideal_generator, sq_bracket};
use schemelab::finset::FinSet;
use schemelab::gaps::hausdorff_gap;
use schemelab::oracle::{delta_naive, rho_naive, xi_naive, Oracle};
use schemelab::{build_scheme, DeltaLevel, TypeSequence};
use serde::Deserialize;

#[derive(Deserialize)]
struct Worked {
    #[serde(rename = "type")]
    ty: TypeSequence,
    level_1: Vec<FinSet>,
    rho: Vec<(usize, usize, usize)>,
    delta: Vec<(usize, usize, usize)>,
    xi: Vec<(usize, usize, i32)>,
    left: Vec<(usize, FinSet)>,
    right: Vec<(usize, FinSet)>,
    bracket: Vec<(usize, usize, usize)>,
    h_ideal: Vec<(usize, usize, FinSet)>,
}

fn golden() -> BTreeMap<String, Worked> {
    serde_json::from_str(include_str!("golden/worked_examples.json")).unwrap()
}

#[test]
fn worked_values_match() {
    let all = golden();
    assert_eq!(all.len(), 2);
    for (name, w) in all {
        let s = build_scheme(&w.ty);
        let o = Oracle::new(&s);
        let g = hausdorff_gap(&s).unwrap();
        let og = o.hausdorff();
        assert_eq!(s.level(1), w.level_1.as_slice(), "{name}");
        for (a, b, v) in w.rho {
            assert_eq!((s.rho(a, b).unwrap(), rho_naive(&s, a, b)), (v, v), "{name} rho({a},{b})");
        }
        for (a, b, v) in w.delta {
            assert_eq!(s.delta(a, b).unwrap(), DeltaLevel::Level(v), "{name} delta({a},{b})");
            assert_eq!(delta_naive(&s, a, b), Some(v));
        }
        for (a, k, v) in w.xi {
            assert_eq!((s.xi(a, k).unwrap(), xi_naive(&s, a, k)), (v, v), "{name} xi_{k}({a})");
        }
        for (a, set) in w.left {
            assert_eq!(g.left(a), Some(&set), "{name} L_{a}");
            assert_eq!(og.left(a), Some(&set));
        }
        for (a, set) in w.right {
            assert_eq!(g.right(a), Some(&set), "{name} R_{a}");
            assert_eq!(og.right(a), Some(&set));
        }
        for (a, b, v) in w.bracket {
            assert_eq!(sq_bracket(&s, a, b).unwrap(), v, "{name} [[{a},{b}]]");
            let closure = (0..=b).filter(|&x| rho_naive(&s, x, b) < rho_naive(&s, a, b)).collect::<FinSet>();
            assert_eq!(closure.at_or_above(a).first(), Some(v), "{name} [[{a},{b}]] by the oracle");
        }
        for (a, n, set) in w.h_ideal {
            assert_eq!(h_ideal_generator(&s, a, n).unwrap(), set, "{name} H_{n}({a})");
        }
    }
}
