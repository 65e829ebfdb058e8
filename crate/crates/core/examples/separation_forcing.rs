//! Finite conditions over a pregap: a filter meeting every dense target,
//! the separating function it induces, and a maximal antichain.

use schemelab::gaps::{hausdorff_gap, levelwise_diff, set_from_separating, validate_separating};
use schemelab::posets::{
    dense_meet_targets, exhaustive_antichain, extract_separating, greedy_filter, AntichainOptions, Condition,
    FilterOutcome, PosetKind, PosetView,
};
use schemelab::{build_scheme, make_type_prefix};

fn main() {
    let s = build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap());
    let g = levelwise_diff(&hausdorff_gap(&s).unwrap(), &s.domain()).unwrap();
    let v = PosetView::sep(&g);
    let targets = dense_meet_targets(&v, g.index());
    match greedy_filter(&v, &targets, &Condition::empty_map()).unwrap() {
        FilterOutcome::Filter { conditions } => {
            println!("filter of {} conditions, top {}", conditions.len(), conditions.last().unwrap());
            let f = extract_separating(&v, &conditions).unwrap();
            println!("separating: {}", validate_separating(&g, &f));
            println!("separating set: {}", set_from_separating(&g, &f).unwrap());
        }
        FilterOutcome::Failed { target, reached } => println!("stuck at {target:?} after {reached:?}"),
    }

    for kind in [PosetKind::Chi0, PosetKind::Chi1, PosetKind::Biorth] {
        let v = PosetView::over_pregap(kind, &g).unwrap();
        let a = exhaustive_antichain(&v, g.index(), AntichainOptions::default()).unwrap();
        println!("{kind}: antichain of {} (exact {}, {} nodes)", a.conditions.len(), a.exact, a.nodes);
    }
}
