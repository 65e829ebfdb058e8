//! Δ-systems, captured systems, capture search, projections, the square
//! bracket and the `H_n(α)` generators.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::finset::{FinSet, Ordinal};
use crate::scheme::{DeltaLevel, Level, Scheme, SchemeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaptureError {
    #[error("family is not a root-tail-tail Δ-system of equal-size sets")]
    NotDeltaSystem,
    #[error("square bracket needs two distinct ordinals, got {0} twice")]
    EqualArguments(Ordinal),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Root and members of a Δ-system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaSystemWitness {
    pub root: FinSet,
    pub members: Vec<FinSet>,
}

/// The common pairwise intersection, if every pair agrees on it.
pub fn delta_system_root(family: &[FinSet]) -> Option<FinSet> {
    if family.len() < 2 {
        return None;
    }
    let root = family[0].intersection(&family[1]);
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if a.intersection(b) != root {
                return None;
            }
        }
    }
    Some(root)
}

/// Δ-system whose root precedes every tail and whose tails increase in the
/// given order.
pub fn is_root_tail_tail(family: &[FinSet]) -> bool {
    root_tail_tail_witness(family).is_some()
}

pub fn root_tail_tail_witness(family: &[FinSet]) -> Option<DeltaSystemWitness> {
    let root = delta_system_root(family)?;
    let tails: Vec<FinSet> = family.iter().map(|d| d.difference(&root)).collect();
    let ok = tails.iter().all(|t| root.precedes(t)) && tails.windows(2).all(|w| w[0].precedes(&w[1]));
    ok.then(|| DeltaSystemWitness {
        root,
        members: family.to_vec(),
    })
}

/// Witness that a family is captured at `level`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CaptureCertificate {
    pub level: Level,
    pub members: Vec<FinSet>,
    pub root: FinSet,
}

impl CaptureCertificate {
    /// The tuple of ordinals when every member is a singleton.
    pub fn points(&self) -> Vec<Ordinal> {
        self.members.iter().filter_map(|m| m.first()).collect()
    }
}

/// Singleton family `{{α} : α ∈ d}`.
pub fn singletons(d: &FinSet) -> Vec<FinSet> {
    d.iter().map(FinSet::singleton).collect()
}

/// Decides whether `family` is captured at `l`. Root positions `a < r` must
/// have `Ξ = -1` at `l`; tail positions `a ≥ r` of the `i`-th member must have
/// `Ξ = i` and pairwise `ρ = l = Δ`; and the union must lie inside one
/// level-`l` member (`ρ` of the union is `l`). Level 0 never captures.
pub fn is_captured(
    s: &Scheme,
    family: &[FinSet],
    l: Level,
) -> Result<Option<CaptureCertificate>, CaptureError> {
    let size = family.first().map_or(0, FinSet::len);
    if size == 0 || family.iter().any(|d| d.len() != size) {
        return Err(CaptureError::NotDeltaSystem);
    }
    let w = root_tail_tail_witness(family).ok_or(CaptureError::NotDeltaSystem)?;
    for d in family {
        if let Some(top) = d.last() {
            s.rho(top, top)?;
        }
    }
    if l == 0 || l > s.height() {
        return Ok(None);
    }
    let r = w.root.len();
    if w.root.iter().any(|a| s.xi_raw(a, l) != -1) {
        return Ok(None);
    }
    for a in r..size {
        let column: Vec<Ordinal> = family.iter().map(|d| d.at(a).expect("equal sizes")).collect();
        for (i, &x) in column.iter().enumerate() {
            if s.xi_raw(x, l) != i as i32 {
                return Ok(None);
            }
            for &y in &column[i + 1..] {
                if s.rho_raw(x, y) != l || s.delta_raw(x, y) != DeltaLevel::Level(l) {
                    return Ok(None);
                }
            }
        }
    }
    let top = family.iter().filter_map(FinSet::last).max().expect("non-empty members");
    if family.iter().flat_map(FinSet::iter).any(|x| s.rho_raw(top, x) > l) {
        return Ok(None);
    }
    Ok(Some(CaptureCertificate {
        level: l,
        members: w.members,
        root: w.root,
    }))
}

/// [`is_captured`] as a plain predicate; malformed families are not captured.
pub fn captured(s: &Scheme, family: &[FinSet], l: Level) -> bool {
    matches!(is_captured(s, family, l), Ok(Some(_)))
}

/// Captured with exactly `n_l` members.
pub fn is_fully_captured(s: &Scheme, family: &[FinSet], l: Level) -> Result<bool, CaptureError> {
    Ok(is_captured(s, family, l)?.is_some() && family.len() == s.type_seq().n(l))
}

/// The level at which a set of ordinals is captured, if any.
pub fn captured_level(s: &Scheme, d: &FinSet) -> Option<Level> {
    if d.len() < 2 {
        return None;
    }
    let l = s.rho_raw(d.at(0)?, d.at(1)?);
    captured(s, &singletons(d), l).then_some(l)
}

/// Default exhaustive-search bound on `C(|S|, n)`.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Sampled { seed: u64, samples: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub cap: u64,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_CAP,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaptureSearch {
    pub mode: SearchMode,
    pub certificates: Vec<CaptureCertificate>,
}

/// `C(n, k)` saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Captured `n`-subsets of `set`, optionally restricted to `levels`.
///
/// Runs exhaustively when `C(|S|, n) ≤ cap`, otherwise checks `cap` seeded
/// uniform samples. Certificates come back sorted.
pub fn find_captured_tuples(
    s: &Scheme,
    set: &FinSet,
    n: usize,
    levels: Option<&BTreeSet<Level>>,
    opts: SearchOptions,
) -> Result<CaptureSearch, CaptureError> {
    if let Some(top) = set.last() {
        s.rho(top, top)?;
    }
    let elems = set.as_slice();
    let keep = |l: Level| levels.is_none_or(|ls| ls.contains(&l));
    if n < 2 || n > elems.len() {
        return Ok(CaptureSearch {
            mode: SearchMode::Exhaustive,
            certificates: Vec::new(),
        });
    }

    if binomial(elems.len(), n) <= opts.cap {
        let tuples: Vec<Vec<Ordinal>> = (0..elems.len())
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let mut stack = vec![elems[first]];
                extend_captured(s, elems, first + 1, n, &mut stack, &mut out);
                out
            })
            .flatten()
            .collect();
        let certificates = tuples
            .into_iter()
            .map(|t| certificate_for_points(s, &t))
            .filter(|c| keep(c.level))
            .collect();
        return Ok(CaptureSearch {
            mode: SearchMode::Exhaustive,
            certificates,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut seen = BTreeSet::new();
    for _ in 0..opts.cap {
        let mut idx = rand::seq::index::sample(&mut rng, elems.len(), n).into_vec();
        idx.sort_unstable();
        seen.insert(idx.into_iter().map(|i| elems[i]).collect::<Vec<_>>());
    }
    let certificates = seen
        .into_iter()
        .filter_map(|t| {
            let d = FinSet::from_unsorted(t);
            captured_level(s, &d).map(|_| certificate_for_points(s, d.as_slice()))
        })
        .filter(|c| keep(c.level))
        .collect();
    Ok(CaptureSearch {
        mode: SearchMode::Sampled {
            seed: opts.seed,
            samples: opts.cap,
        },
        certificates,
    })
}

fn certificate_for_points(s: &Scheme, points: &[Ordinal]) -> CaptureCertificate {
    CaptureCertificate {
        level: s.rho_raw(points[0], points[1]),
        members: points.iter().map(|&a| FinSet::singleton(a)).collect(),
        root: FinSet::empty(),
    }
}

/// Depth-first extension of a partial captured tuple. Every prefix of a
/// captured tuple of singletons is captured at the same level, so a failing
/// prefix prunes its subtree.
fn extend_captured(
    s: &Scheme,
    elems: &[Ordinal],
    from: usize,
    n: usize,
    stack: &mut Vec<Ordinal>,
    out: &mut Vec<Vec<Ordinal>>,
) {
    if stack.len() == n {
        out.push(stack.clone());
        return;
    }
    let i = stack.len();
    for (pos, &x) in elems.iter().enumerate().skip(from) {
        if elems.len() - pos < n - i {
            break;
        }
        let l = if i == 0 {
            0
        } else {
            s.rho_raw(stack[0], x)
        };
        let ok = i == 0
            || (s.xi_raw(x, l) == i as i32
                && (i > 1 || s.xi_raw(stack[0], l) == 0)
                && stack
                    .iter()
                    .all(|&y| s.rho_raw(y, x) == l && s.delta_raw(y, x) == DeltaLevel::Level(l)));
        if ok {
            stack.push(x);
            extend_captured(s, elems, pos + 1, n, stack, out);
            stack.pop();
        }
    }
}

/// `π_n(S)`: levels carrying a captured `n`-subset of `S` (always exhaustive).
pub fn project(s: &Scheme, set: &FinSet, n: usize) -> Result<BTreeSet<Level>, CaptureError> {
    let found = find_captured_tuples(
        s,
        set,
        n,
        None,
        SearchOptions {
            cap: u64::MAX,
            seed: 0,
        },
    )?;
    Ok(found.certificates.iter().map(|c| c.level).collect())
}

/// `⟦α, β⟧ = min((β)_{ρ(α,β)-1} \ α)` for `α < β`; arguments are reordered.
pub fn sq_bracket(s: &Scheme, a: Ordinal, b: Ordinal) -> Result<Ordinal, CaptureError> {
    if a == b {
        return Err(CaptureError::EqualArguments(a));
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let l = s.rho(lo, hi)?;
    let closure = s.closure_raw(hi, l - 1);
    Ok(closure.at_or_above(lo).first().expect("β itself lies in its closure"))
}

/// The bracket through a level-`ρ` member: `min(F_{Ξ_β(l)} \ R(F))`.
pub fn sq_bracket_via_member(s: &Scheme, a: Ordinal, b: Ordinal) -> Result<Ordinal, CaptureError> {
    if a == b {
        return Err(CaptureError::EqualArguments(a));
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let l = s.rho(lo, hi)?;
    let f = s.home(hi, l)?;
    let d = s.canonical_decomposition(f)?;
    let i = s.xi_raw(hi, l);
    let child = &d.children[usize::try_from(i).expect("β is in a tail at level ρ")];
    Ok(child.difference(&d.root).first().expect("tails are non-empty"))
}

/// `⦅S⦆`: brackets of captured pairs from `S`.
pub fn sq_bracket_set(s: &Scheme, set: &FinSet) -> Result<BTreeSet<Ordinal>, CaptureError> {
    let mut out = BTreeSet::new();
    let els = set.as_slice();
    for (i, &a) in els.iter().enumerate() {
        for &b in &els[i + 1..] {
            s.rho(a, b)?;
            if captured_level(s, &FinSet::from_unsorted([a, b])).is_some() {
                out.insert(sq_bracket(s, a, b)?);
            }
        }
    }
    Ok(out)
}

/// `H_n(α) = {ξ < α : ∀ m, n < m ≤ K, Ξ_α(m) = -1 or Ξ_ξ(m) ≤ Ξ_α(m)}`.
pub fn h_ideal_generator(s: &Scheme, a: Ordinal, n: Level) -> Result<FinSet, CaptureError> {
    s.xi(a, 0)?;
    let top = s.height();
    Ok((0..a)
        .filter(|&x| {
            (n + 1..=top).all(|m| {
                let xa = s.xi_raw(a, m);
                xa == -1 || s.xi_raw(x, m) <= xa
            })
        })
        .collect())
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
    fn delta_roots() {
        assert_eq!(delta_system_root(&[finset![0, 1], finset![0, 2]]), Some(finset![0]));
        assert_eq!(delta_system_root(&[finset![0, 1], finset![0, 2], finset![1, 2]]), None);
        assert_eq!(delta_system_root(&[finset![1], finset![2]]), Some(FinSet::empty()));
        assert_eq!(delta_system_root(&[finset![1]]), None);
    }

    #[test]
    fn root_tail_tail_order() {
        assert!(is_root_tail_tail(&[finset![0, 1], finset![0, 2]]));
        assert!(!is_root_tail_tail(&[finset![0, 2], finset![0, 1]]));
        assert!(!is_root_tail_tail(&[finset![1, 3], finset![2, 4]]));
        assert!(!is_root_tail_tail(&[finset![1, 2], finset![0, 1]]));
    }

    #[test]
    fn captured_examples() {
        let s = k2();
        let c = is_captured(&s, &singletons(&finset![1, 2]), 2).unwrap().unwrap();
        assert_eq!(c.level, 2);
        assert!(is_fully_captured(&s, &singletons(&finset![1, 2]), 2).unwrap());
        assert!(!is_fully_captured(&s, &singletons(&finset![1, 2]), 1).unwrap());

        let s = k3();
        assert!(captured(&s, &singletons(&finset![2, 5]), 3));
        assert!(!captured(&s, &singletons(&finset![1, 2]), 3));
        assert_eq!(
            is_captured(&s, &[finset![1, 2], finset![1]], 2),
            Err(CaptureError::NotDeltaSystem)
        );
        assert_eq!(
            is_captured(&s, &[finset![2]], 2),
            Err(CaptureError::NotDeltaSystem)
        );
        assert!(captured(&s, &[finset![0, 1], finset![3, 4]], 3));
    }

    #[test]
    fn full_capture_fails_on_ternary_levels() {
        let s = build_scheme(&make_type_prefix(&[(1, 3, 0)]).unwrap());
        assert!(captured(&s, &singletons(&finset![0, 1]), 1));
        assert!(!is_fully_captured(&s, &singletons(&finset![0, 1]), 1).unwrap());
        assert!(is_fully_captured(&s, &singletons(&finset![0, 1, 2]), 1).unwrap());
    }

    #[test]
    fn search_small() {
        let s = k3();
        let found = find_captured_tuples(&s, &FinSet::range(0, 6), 2, None, SearchOptions::default()).unwrap();
        assert_eq!(found.mode, SearchMode::Exhaustive);
        let pts: Vec<(Vec<Ordinal>, Level)> = found.certificates.iter().map(|c| (c.points(), c.level)).collect();
        assert!(pts.contains(&(vec![2, 5], 3)));
        assert!(pts.contains(&(vec![1, 2], 2)));
        for c in &found.certificates {
            assert!(captured(&s, &c.members, c.level));
        }
        let none = find_captured_tuples(&s, &finset![1], 2, None, SearchOptions::default()).unwrap();
        assert!(none.certificates.is_empty());
    }

    #[test]
    fn sampling_is_seeded() {
        let ty = make_type_prefix(&[(1, 2, 0), (2, 2, 0), (4, 2, 0), (8, 2, 0), (16, 2, 0), (32, 2, 0), (64, 2, 0), (128, 2, 0), (256, 2, 0)])
            .unwrap();
        let s = build_scheme(&ty);
        let set = FinSet::range(0, 512);
        let run = |seed| {
            find_captured_tuples(&s, &set, 2, None, SearchOptions { cap: 50, seed }).unwrap()
        };
        assert_eq!(run(1), run(1));
        assert_ne!(run(1), run(2));
        assert_eq!(run(1).mode, SearchMode::Sampled { seed: 1, samples: 50 });
    }

    #[test]
    fn projections_and_brackets() {
        let s = k2();
        assert_eq!(project(&s, &finset![1, 2], 2).unwrap(), BTreeSet::from([2]));
        assert!(project(&s, &finset![1], 2).unwrap().is_empty());
        assert_eq!(sq_bracket(&s, 1, 2).unwrap(), 2);
        assert_eq!(sq_bracket(&s, 2, 1).unwrap(), 2);
        assert_eq!(sq_bracket(&s, 1, 1), Err(CaptureError::EqualArguments(1)));
        assert_eq!(sq_bracket_set(&s, &finset![1, 2]).unwrap(), BTreeSet::from([2]));
        assert!(sq_bracket_set(&s, &finset![1]).unwrap().is_empty());

        let s = k3();
        assert_eq!(sq_bracket(&s, 2, 5).unwrap(), 3);
        assert_eq!(sq_bracket_set(&s, &finset![2, 5]).unwrap(), BTreeSet::from([3]));
        for b in 0..6 {
            for a in 0..b {
                let v = sq_bracket(&s, a, b).unwrap();
                assert!(a <= v && v <= b);
                assert_eq!(v, sq_bracket_via_member(&s, a, b).unwrap());
            }
        }
    }

    #[test]
    fn h_generators() {
        let s = k2();
        assert_eq!(h_ideal_generator(&s, 2, 0).unwrap(), finset![0, 1]);
        assert_eq!(h_ideal_generator(&s, 2, 2).unwrap(), finset![0, 1]);
        let s = k3();
        assert_eq!(h_ideal_generator(&s, 5, 3).unwrap(), FinSet::range(0, 5));
        assert!(h_ideal_generator(&s, 6, 0).is_err());
    }
}
