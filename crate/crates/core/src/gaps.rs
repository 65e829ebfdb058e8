//! Pregaps, the Hausdorff and Todorčević constructions, their finite-scale
//! checks, levelwise differences and separating functions.
//!
//! Almost-inclusions are checked against the explicit windows
//! `N_k = {0, …, 2k+1}` that bound the exceptional sets.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::capture::captured_level;
use crate::finset::{FinSet, Ordinal};
use crate::scheme::{DeltaLevel, Level, Scheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapError {
    #[error("left and right families have {left} and {right} entries for an index of size {index}")]
    ShapeMismatch { index: usize, left: usize, right: usize },
    #[error("the Hausdorff construction needs every n_k = 2")]
    NotBinaryType,
    #[error("levelwise difference needs at least two indices, got {0}")]
    TooFewIndices(usize),
    #[error("{0} is not an index of the pregap")]
    NotAnIndex(Ordinal),
    #[error("pregap is not normal: L ∩ R ≠ ∅ at index {0}")]
    NotNormal(Ordinal),
    #[error("separating function is missing or invalid at index {0}")]
    InvalidSeparating(Ordinal),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Raw,
    Hausdorff,
    Todorcevic { p0: BTreeSet<Level> },
    /// Successor differences along `support`, a subset of the parent's index.
    LevelwiseDifference { support: FinSet },
    Restricted,
}

/// `(L_α, R_α)` for `α` ranging over `index`; `left[i]` belongs to `index(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pregap {
    index: FinSet,
    left: Vec<FinSet>,
    right: Vec<FinSet>,
    provenance: Provenance,
}

impl Pregap {
    pub fn new(
        index: FinSet,
        left: Vec<FinSet>,
        right: Vec<FinSet>,
        provenance: Provenance,
    ) -> Result<Self, GapError> {
        if left.len() != index.len() || right.len() != index.len() {
            return Err(GapError::ShapeMismatch {
                index: index.len(),
                left: left.len(),
                right: right.len(),
            });
        }
        Ok(Pregap {
            index,
            left,
            right,
            provenance,
        })
    }

    pub fn index(&self) -> &FinSet {
        &self.index
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `(L, R)` at position `i` of the index.
    pub fn at(&self, i: usize) -> (&FinSet, &FinSet) {
        (&self.left[i], &self.right[i])
    }

    pub fn left(&self, alpha: Ordinal) -> Option<&FinSet> {
        self.index.position(alpha).map(|i| &self.left[i])
    }

    pub fn right(&self, alpha: Ordinal) -> Option<&FinSet> {
        self.index.position(alpha).map(|i| &self.right[i])
    }

    /// `(index label, L, R)` rows.
    pub fn rows(&self) -> impl Iterator<Item = (Ordinal, &FinSet, &FinSet)> {
        self.index.iter().zip(self.left.iter().zip(&self.right)).map(|(a, (l, r))| (a, l, r))
    }

    /// First index where `L_α ∩ R_α ≠ ∅`.
    pub fn normality_defect(&self) -> Option<Ordinal> {
        self.rows().find(|(_, l, r)| !l.is_disjoint(r)).map(|(a, _, _)| a)
    }

    pub fn is_normal(&self) -> bool {
        self.normality_defect().is_none()
    }

    /// The subpregap indexed by `labels ⊆ index`.
    pub fn restrict(&self, labels: &FinSet) -> Result<Pregap, GapError> {
        let pos = labels
            .iter()
            .map(|a| self.index.position(a).ok_or(GapError::NotAnIndex(a)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Pregap {
            index: labels.clone(),
            left: pos.iter().map(|&i| self.left[i].clone()).collect(),
            right: pos.iter().map(|&i| self.right[i].clone()).collect(),
            provenance: Provenance::Restricted,
        })
    }

    /// CSV with header `alpha,L,R`; sets are space-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,L,R\n");
        for (a, l, r) in self.rows() {
            out.push_str(&format!("{a},{},{}\n", l.to_spaced(), r.to_spaced()));
        }
        out
    }
}

/// `L_α = {2k + Ξ_α(k)}` and `R_α = {2k + 1 - Ξ_α(k)}` over `1 ≤ k ≤ K` with
/// `Ξ_α(k) ≥ 0`. Only defined for binary types.
pub fn hausdorff_gap(s: &Scheme) -> Result<Pregap, GapError> {
    if !s.type_seq().is_binary() {
        return Err(GapError::NotBinaryType);
    }
    let mut left = Vec::with_capacity(s.domain_size());
    let mut right = Vec::with_capacity(s.domain_size());
    for a in 0..s.domain_size() {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for k in 1..=s.height() {
            let x = s.xi_raw(a, k);
            if x >= 0 {
                l.push(2 * k + x as usize);
                r.push(2 * k + 1 - x as usize);
            }
        }
        left.push(FinSet::new(l).expect("one point per window"));
        right.push(FinSet::new(r).expect("one point per window"));
    }
    Pregap::new(s.domain(), left, right, Provenance::Hausdorff)
}

/// `N_k = {0, …, 2k+1}`.
pub fn n_window(k: Level) -> FinSet {
    FinSet::range(0, 2 * k + 2)
}

fn within(set: &FinSet, k: Level) -> bool {
    set.last().is_none_or(|x| x <= 2 * k + 1)
}

/// `X ∩ N_k`; `N_{-1}` is empty.
fn cut(set: &FinSet, window: Option<Level>) -> FinSet {
    match window {
        Some(k) => set.below(2 * k + 2),
        None => FinSet::empty(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// One failed finite-scale gap property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GapViolation {
    /// Point (0): `L_α ∩ R_α ≠ ∅`.
    NotNormal { alpha: Ordinal },
    /// Point (1): a window `{2k, 2k+1}` holds two points of one side.
    DoubleWindow { alpha: Ordinal, k: Level, side: Side },
    /// Point (2): a difference or cross intersection leaves `N_ρ`.
    OutsideRhoWindow { alpha: Ordinal, beta: Ordinal, which: String },
    /// Point (3): traces below `N_{Δ-1}` differ.
    DeltaTraceMismatch { alpha: Ordinal, beta: Ordinal, side: Side },
    /// `L_β ∩ R_α ⊆ k` for an `α` outside `(β)_k`.
    HausdorffCondition { alpha: Ordinal, beta: Ordinal, k: Level },
    /// A successor difference above `N_{ρ(α,α+1)}` has the wrong parity.
    Parity { alpha: Ordinal, side: Side, element: usize },
    /// Captured pair without `2l+1 ∈ L_β ∩ R_α` and `2l ∈ L_α ∩ R_β`.
    CaptureGapLaw { alpha: Ordinal, beta: Ordinal, level: Level },
    /// Pair captured at `l ∈ P0` with `L^C_α ∩ R^C_β ≠ {2l}`.
    TodorcevicMeet { alpha: Ordinal, beta: Ordinal, level: Level, found: FinSet },
    /// Pair captured at `l ∈ P1` that is not increasing on both sides.
    TodorcevicIncrease { alpha: Ordinal, beta: Ordinal, level: Level, side: Side },
}

fn labels(g: &Pregap) -> &[Ordinal] {
    g.index.as_slice()
}

/// Points (0)–(3) over all pairs `α < β` of the index.
pub fn check_interhausdorff(s: &Scheme, g: &Pregap) -> Vec<GapViolation> {
    let mut out = Vec::new();
    for (alpha, l, r) in g.rows() {
        if !l.is_disjoint(r) {
            out.push(GapViolation::NotNormal { alpha });
        }
        let top = l.last().into_iter().chain(r.last()).max().unwrap_or(0);
        for k in 0..=top / 2 {
            for (side, set) in [(Side::Left, l), (Side::Right, r)] {
                if set.contains(2 * k) && set.contains(2 * k + 1) {
                    out.push(GapViolation::DoubleWindow { alpha, k, side });
                }
            }
        }
    }
    let idx = labels(g);
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            let (alpha, beta) = (idx[i], idx[j]);
            let (la, ra) = g.at(i);
            let (lb, rb) = g.at(j);
            let rho = s.rho_raw(alpha, beta);
            for (which, set) in [
                ("L_alpha - L_beta", la.difference(lb)),
                ("R_alpha - R_beta", ra.difference(rb)),
                ("L_alpha & R_beta", la.intersection(rb)),
                ("L_beta & R_alpha", lb.intersection(ra)),
            ] {
                if !within(&set, rho) {
                    out.push(GapViolation::OutsideRhoWindow {
                        alpha,
                        beta,
                        which: which.to_string(),
                    });
                }
            }
            let window = match s.delta_raw(alpha, beta) {
                DeltaLevel::Level(d) => d.checked_sub(1),
                DeltaLevel::Top => Some(s.height()),
            };
            if cut(la, window) != cut(lb, window) {
                out.push(GapViolation::DeltaTraceMismatch {
                    alpha,
                    beta,
                    side: Side::Left,
                });
            }
            if cut(ra, window) != cut(rb, window) {
                out.push(GapViolation::DeltaTraceMismatch {
                    alpha,
                    beta,
                    side: Side::Right,
                });
            }
        }
    }
    out
}

/// `{α < β : L_β ∩ R_α ⊆ k} ⊆ (β)_k` for every `β` and `k ≤ K`.
pub fn check_hausdorff_condition(s: &Scheme, g: &Pregap) -> Vec<GapViolation> {
    let mut out = Vec::new();
    let idx = labels(g);
    for j in 0..idx.len() {
        let beta = idx[j];
        let lb = g.at(j).0;
        for k in 0..=s.height() {
            let closure = s.closure_raw(beta, k);
            for (i, &alpha) in idx.iter().enumerate().take(j) {
                let meet = lb.intersection(g.at(i).1);
                if meet.last().is_none_or(|x| x < k) && !closure.contains(alpha) {
                    out.push(GapViolation::HausdorffCondition { alpha, beta, k });
                }
            }
        }
    }
    out
}

/// `(L_{α+1} \ L_α) \ N_{ρ(α,α+1)}` is even and the right side odd, for
/// every consecutive pair of labels.
pub fn check_levelwise_even_odd(s: &Scheme, g: &Pregap) -> Vec<GapViolation> {
    let mut out = Vec::new();
    let idx = labels(g);
    for i in 0..idx.len().saturating_sub(1) {
        let (alpha, next) = (idx[i], idx[i + 1]);
        if next != alpha + 1 {
            continue;
        }
        let rho = s.rho_raw(alpha, next);
        let bound = 2 * rho + 2;
        let d = g.at(i + 1).0.difference(g.at(i).0).at_or_above(bound);
        let e = g.at(i + 1).1.difference(g.at(i).1).at_or_above(bound);
        for element in d.iter().filter(|x| x % 2 == 1) {
            out.push(GapViolation::Parity {
                alpha,
                side: Side::Left,
                element,
            });
        }
        for element in e.iter().filter(|x| x % 2 == 0) {
            out.push(GapViolation::Parity {
                alpha,
                side: Side::Right,
                element,
            });
        }
    }
    out
}

/// Captured `{α, β}` at `l` forces `2l+1 ∈ L_β ∩ R_α` and `2l ∈ L_α ∩ R_β`.
pub fn check_capture_gap_law(s: &Scheme, g: &Pregap) -> Vec<GapViolation> {
    let mut out = Vec::new();
    let idx = labels(g);
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            let (alpha, beta) = (idx[i], idx[j]);
            let Some(l) = captured_level(s, &FinSet::from_unsorted([alpha, beta])) else {
                continue;
            };
            let (la, ra) = g.at(i);
            let (lb, rb) = g.at(j);
            let ok = lb.contains(2 * l + 1) && ra.contains(2 * l + 1) && la.contains(2 * l) && rb.contains(2 * l);
            if !ok {
                out.push(GapViolation::CaptureGapLaw {
                    alpha,
                    beta,
                    level: l,
                });
            }
        }
    }
    out
}

/// `D_p = L_{X(p+1)} \ L_{X(p)}`, `E_p = R_{X(p+1)} \ R_{X(p)}` for
/// `p < |X| - 1`.
pub fn levelwise_diff(g: &Pregap, x: &FinSet) -> Result<Pregap, GapError> {
    if x.len() < 2 {
        return Err(GapError::TooFewIndices(x.len()));
    }
    let pos = x
        .iter()
        .map(|a| g.index.position(a).ok_or(GapError::NotAnIndex(a)))
        .collect::<Result<Vec<_>, _>>()?;
    let left = pos.windows(2).map(|w| g.left[w[1]].difference(&g.left[w[0]])).collect();
    let right = pos.windows(2).map(|w| g.right[w[1]].difference(&g.right[w[0]])).collect();
    Pregap::new(
        FinSet::range(0, x.len() - 1),
        left,
        right,
        Provenance::LevelwiseDifference { support: x.clone() },
    )
}

/// `C = ⋃ {2k, 2k+1 : k ∈ P0, k ≥ 1}`.
pub fn todorcevic_window(p0: &BTreeSet<Level>) -> FinSet {
    p0.iter().filter(|&&k| k >= 1).flat_map(|&k| [2 * k, 2 * k + 1]).collect()
}

/// `(L_α ∩ C, R_α ∩ C)`.
pub fn todorcevic_restrict(g: &Pregap, p0: &BTreeSet<Level>) -> Pregap {
    let c = todorcevic_window(p0);
    Pregap {
        index: g.index.clone(),
        left: g.left.iter().map(|l| l.intersection(&c)).collect(),
        right: g.right.iter().map(|r| r.intersection(&c)).collect(),
        provenance: Provenance::Todorcevic { p0: p0.clone() },
    }
}

/// Pairs captured at `l ∈ P0` meet in exactly `{2l}`; pairs captured at
/// `l ∈ P1` increase on both sides.
pub fn check_todorcevic_capture_laws(
    s: &Scheme,
    gc: &Pregap,
    p0: &BTreeSet<Level>,
    p1: &BTreeSet<Level>,
) -> Vec<GapViolation> {
    let mut out = Vec::new();
    let idx = labels(gc);
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            let (alpha, beta) = (idx[i], idx[j]);
            let Some(level) = captured_level(s, &FinSet::from_unsorted([alpha, beta])) else {
                continue;
            };
            let (la, ra) = gc.at(i);
            let (lb, rb) = gc.at(j);
            if p0.contains(&level) {
                let found = la.intersection(rb);
                if found != FinSet::singleton(2 * level) {
                    out.push(GapViolation::TodorcevicMeet {
                        alpha,
                        beta,
                        level,
                        found,
                    });
                }
            }
            if p1.contains(&level) {
                if !la.is_subset(lb) {
                    out.push(GapViolation::TodorcevicIncrease {
                        alpha,
                        beta,
                        level,
                        side: Side::Left,
                    });
                }
                if !ra.is_subset(rb) {
                    out.push(GapViolation::TodorcevicIncrease {
                        alpha,
                        beta,
                        level,
                        side: Side::Right,
                    });
                }
            }
        }
    }
    out
}

/// Every pair of distinct indices meets across sides.
pub fn is_biorthogonal(g: &Pregap) -> Result<bool, GapError> {
    if let Some(a) = g.normality_defect() {
        return Err(GapError::NotNormal(a));
    }
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if !cross_meet(g, i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `(L_i ∩ R_j) ∪ (L_j ∩ R_i) ≠ ∅` by positions.
pub(crate) fn cross_meet(g: &Pregap, i: usize, j: usize) -> bool {
    !g.left[i].is_disjoint(&g.right[j]) || !g.left[j].is_disjoint(&g.right[i])
}

/// Thresholds `s(L_α)` and `s(R_α)` keyed by index label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SeparatingFunction {
    pub left: BTreeMap<Ordinal, usize>,
    pub right: BTreeMap<Ordinal, usize>,
}

impl SeparatingFunction {
    pub fn constant(g: &Pregap, value: usize) -> Self {
        SeparatingFunction {
            left: g.index.iter().map(|a| (a, value)).collect(),
            right: g.index.iter().map(|a| (a, value)).collect(),
        }
    }

    /// The same value on both sides of each index.
    pub fn symmetric(values: BTreeMap<Ordinal, usize>) -> Self {
        SeparatingFunction {
            left: values.clone(),
            right: values,
        }
    }
}

fn separating_defect(g: &Pregap, s: &SeparatingFunction) -> Option<Ordinal> {
    for (alpha, la, _) in g.rows() {
        let Some(&sl) = s.left.get(&alpha) else {
            return Some(alpha);
        };
        for (beta, _, rb) in g.rows() {
            let Some(&sr) = s.right.get(&beta) else {
                return Some(beta);
            };
            let bound = sl.max(sr);
            if la.intersection(rb).last().is_some_and(|x| x >= bound) {
                return Some(alpha);
            }
        }
    }
    None
}

/// `L_α ∩ R_β ⊆ max(s(L_α), s(R_β))` for all `α, β`; missing values fail.
pub fn validate_separating(g: &Pregap, s: &SeparatingFunction) -> bool {
    separating_defect(g, s).is_none()
}

/// `C = ⋃ L_α \ (s(L_α)+1)`, checked against every `R_β \ (s(R_β)+1)`.
pub fn set_from_separating(g: &Pregap, s: &SeparatingFunction) -> Result<FinSet, GapError> {
    if let Some(a) = separating_defect(g, s) {
        return Err(GapError::InvalidSeparating(a));
    }
    let c: FinSet = g
        .rows()
        .flat_map(|(a, l, _)| l.at_or_above(s.left[&a] + 1).into_vec())
        .collect();
    for (b, _, r) in g.rows() {
        if !r.at_or_above(s.right[&b] + 1).is_disjoint(&c) {
            return Err(GapError::InvalidSeparating(b));
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset;
    use crate::scheme::build_scheme;
    use crate::typeseq::make_type_prefix;

    fn k2() -> Scheme {
        build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1)]).unwrap())
    }

    fn k3() -> Scheme {
        build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap())
    }

    #[test]
    fn hausdorff_tables() {
        let g = hausdorff_gap(&k2()).unwrap();
        assert_eq!(g.left(2), Some(&finset![3, 5]));
        assert_eq!(g.right(2), Some(&finset![2, 4]));
        assert_eq!(g.left(1), Some(&finset![3, 4]));
        assert_eq!(g.right(1), Some(&finset![2, 5]));
        assert_eq!(g.left(0), Some(&finset![2]));
        assert_eq!(g.right(0), Some(&finset![3]));
        assert!(g.is_normal());

        let g = hausdorff_gap(&k3()).unwrap();
        assert_eq!(g.left(5), Some(&finset![3, 5, 7]));
        assert_eq!(g.right(5), Some(&finset![2, 4, 6]));
        assert_eq!(g.left(2).unwrap().intersection(g.right(5).unwrap()), finset![6]);

        let ternary = build_scheme(&make_type_prefix(&[(1, 3, 0)]).unwrap());
        assert_eq!(hausdorff_gap(&ternary), Err(GapError::NotBinaryType));
    }

    #[test]
    fn windows() {
        assert_eq!(n_window(0), finset![0, 1]);
        assert_eq!(n_window(2), FinSet::range(0, 6));
        assert_eq!(n_window(3), FinSet::range(0, 8));
    }

    #[test]
    fn checks_pass_on_samples_and_catch_corruption() {
        for s in [k2(), k3()] {
            let g = hausdorff_gap(&s).unwrap();
            assert!(check_interhausdorff(&s, &g).is_empty());
            assert!(check_hausdorff_condition(&s, &g).is_empty());
            assert!(check_levelwise_even_odd(&s, &g).is_empty());
            assert!(check_capture_gap_law(&s, &g).is_empty());
        }
        let s = k2();
        let g = hausdorff_gap(&s).unwrap();
        let mut left: Vec<FinSet> = g.rows().map(|(_, l, _)| l.clone()).collect();
        let right: Vec<FinSet> = g.rows().map(|(_, _, r)| r.clone()).collect();
        left[2] = finset![2, 3];
        let bad = Pregap::new(s.domain(), left.clone(), right.clone(), Provenance::Raw).unwrap();
        assert!(!check_interhausdorff(&s, &bad).is_empty());
        // L_2 ∩ R_1 = ∅ although 1 ∉ (2)_1
        left[2] = finset![3, 4];
        let bad = Pregap::new(s.domain(), left, right, Provenance::Raw).unwrap();
        assert!(check_hausdorff_condition(&s, &bad).contains(&GapViolation::HausdorffCondition {
            alpha: 1,
            beta: 2,
            k: 1
        }));
    }

    #[test]
    fn even_odd_window_is_tight() {
        let s = k2();
        let g = hausdorff_gap(&s).unwrap();
        let d = g.left(1).unwrap().difference(g.left(0).unwrap());
        assert_eq!(d, finset![3, 4]);
        assert_eq!(s.rho(0, 1).unwrap(), 1);
        assert!(d.below(4).contains(3));
    }

    #[test]
    fn levelwise_differences() {
        let g = hausdorff_gap(&k2()).unwrap();
        let d = levelwise_diff(&g, &finset![0, 1, 2]).unwrap();
        assert_eq!(d.at(0), (&finset![3, 4], &finset![2, 5]));
        assert_eq!(d.at(1), (&finset![5], &finset![4]));
        assert_eq!(d.index(), &finset![0, 1]);
        assert_eq!(levelwise_diff(&g, &finset![1]), Err(GapError::TooFewIndices(1)));
        assert_eq!(levelwise_diff(&g, &finset![1, 7]), Err(GapError::NotAnIndex(7)));
    }

    #[test]
    fn todorcevic() {
        let s = k3();
        let g = hausdorff_gap(&s).unwrap();
        let all: BTreeSet<Level> = (1..=3).collect();
        assert_eq!(todorcevic_restrict(&g, &all).at(4), g.at(4));
        let none = todorcevic_restrict(&g, &BTreeSet::new());
        assert!(none.rows().all(|(_, l, r)| l.is_empty() && r.is_empty()));
        let p0 = BTreeSet::from([3]);
        let gc = todorcevic_restrict(&g, &p0);
        assert_eq!(gc.left(5), Some(&finset![7]));
        assert_eq!(gc.right(5), Some(&finset![6]));
        assert_eq!(gc.left(2).unwrap().intersection(gc.right(5).unwrap()), finset![6]);
        for mask in 0u32..8 {
            let p0: BTreeSet<Level> = (1..=3).filter(|k| mask & (1 << (k - 1)) != 0).collect();
            let p1: BTreeSet<Level> = (1..=3).filter(|k| !p0.contains(k)).collect();
            let gc = todorcevic_restrict(&g, &p0);
            assert!(check_todorcevic_capture_laws(&s, &gc, &p0, &p1).is_empty());
        }
    }

    #[test]
    fn biorthogonality() {
        let s = k3();
        let g = hausdorff_gap(&s).unwrap();
        let pair = g.restrict(&finset![2, 5]).unwrap();
        assert_eq!(is_biorthogonal(&pair), Ok(true));
        let flat = Pregap::new(
            finset![0, 1],
            vec![finset![0], finset![0]],
            vec![finset![1], finset![1]],
            Provenance::Raw,
        )
        .unwrap();
        assert_eq!(is_biorthogonal(&flat), Ok(false));
        assert_eq!(is_biorthogonal(&g.restrict(&finset![3]).unwrap()), Ok(true));
        let abnormal = Pregap::new(finset![0], vec![finset![1]], vec![finset![1]], Provenance::Raw).unwrap();
        assert_eq!(is_biorthogonal(&abnormal), Err(GapError::NotNormal(0)));
    }

    #[test]
    fn separation() {
        let g = hausdorff_gap(&k3()).unwrap();
        assert!(validate_separating(&g, &SeparatingFunction::constant(&g, 100)));
        let pair = g.restrict(&finset![2, 5]).unwrap();
        assert!(!validate_separating(&pair, &SeparatingFunction::constant(&pair, 0)));
        assert!(matches!(
            set_from_separating(&pair, &SeparatingFunction::constant(&pair, 0)),
            Err(GapError::InvalidSeparating(_))
        ));

        assert_eq!(set_from_separating(&g, &SeparatingFunction::constant(&g, 8)), Ok(FinSet::empty()));
        assert!(!validate_separating(&g, &SeparatingFunction::constant(&g, 6)));

        let apart = Pregap::new(
            finset![0, 1],
            vec![finset![0, 4], finset![1, 5]],
            vec![finset![2, 6], finset![3, 7]],
            Provenance::Raw,
        )
        .unwrap();
        let s = SeparatingFunction::constant(&apart, 1);
        assert!(validate_separating(&apart, &s));
        assert_eq!(set_from_separating(&apart, &s), Ok(finset![4, 5]));

        let empty = Pregap::new(FinSet::empty(), vec![], vec![], Provenance::Raw).unwrap();
        assert_eq!(set_from_separating(&empty, &SeparatingFunction::default()), Ok(FinSet::empty()));
    }

    #[test]
    fn csv_header() {
        let g = hausdorff_gap(&k2()).unwrap();
        assert_eq!(g.to_csv(), "alpha,L,R\n0,2,3\n1,3 4,2 5\n2,3 5,2 4\n");
    }
}
