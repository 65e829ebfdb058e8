//! Restricting the Hausdorff pregap to the window of a level set P0.

use std::collections::BTreeSet;

use schemelab::gaps::{check_todorcevic_capture_laws, hausdorff_gap, todorcevic_restrict, todorcevic_window};
use schemelab::{build_scheme, make_type_prefix};

fn main() {
    let s = build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0), (6, 2, 2)]).unwrap());
    let g = hausdorff_gap(&s).unwrap();
    let k = s.height();
    let p0: BTreeSet<usize> = (1..=k).filter(|l| l % 2 == 0).collect();
    let p1: BTreeSet<usize> = (1..=k).filter(|l| l % 2 == 1).collect();
    println!("P0 = {p0:?}, window {}", todorcevic_window(&p0));
    let gc = todorcevic_restrict(&g, &p0);
    for (a, l, r) in gc.rows() {
        println!("{a:>3}  {l}  {r}");
    }
    let v = check_todorcevic_capture_laws(&s, &gc, &p0, &p1);
    println!("capture laws: {} violations", v.len());
}
