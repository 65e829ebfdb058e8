//! The Hausdorff pregap of a binary scheme and its gap laws.

use schemelab::gaps::{
    check_capture_gap_law, check_hausdorff_condition, check_interhausdorff, check_levelwise_even_odd, hausdorff_gap,
    levelwise_diff,
};
use schemelab::{build_scheme, make_type_prefix};

fn main() {
    let s = build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0), (6, 2, 2)]).unwrap());
    let g = hausdorff_gap(&s).unwrap();
    println!("alpha  L_alpha  R_alpha");
    for (a, l, r) in g.rows() {
        println!("{a:>5}  {l}  {r}");
    }
    println!("normal: {}", g.is_normal());
    for (name, v) in [
        ("interhausdorff", check_interhausdorff(&s, &g)),
        ("hausdorff condition", check_hausdorff_condition(&s, &g)),
        ("even/odd levels", check_levelwise_even_odd(&s, &g)),
        ("captured pairs", check_capture_gap_law(&s, &g)),
    ] {
        println!("{name}: {} violations", v.len());
    }
    let diff = levelwise_diff(&g, &s.domain()).unwrap();
    println!("levelwise difference on {} indices", diff.len());

    let ternary = build_scheme(&make_type_prefix(&[(1, 3, 0)]).unwrap());
    println!("ternary scheme: {}", hausdorff_gap(&ternary).unwrap_err());
}
