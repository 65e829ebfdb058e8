//! Definition-literal recomputation of the canonical functions, the captured
//! predicate and the Hausdorff gap.
//!
//! Nothing here reads the scheme's home chain or its memo tables; only the
//! stored members and the type are used. The free functions recompute from
//! scratch on every call; [`Oracle`] tabulates the same definitions once for
//! bulk comparisons.

use crate::finset::{FinSet, Ordinal};
use crate::gaps::{Pregap, Provenance};
use crate::scheme::{Level, Scheme};

/// Least level with a stored member containing both ordinals.
///
/// # Panics
/// If either ordinal is outside the domain.
pub fn rho_naive(s: &Scheme, a: Ordinal, b: Ordinal) -> Level {
    for k in 0..=s.height() {
        if s.level(k).iter().any(|f| f.contains(a) && f.contains(b)) {
            return k;
        }
    }
    panic!("no member contains both {a} and {b}");
}

/// `|{ξ < α : ρ(α, ξ) ≤ k}|`.
pub fn norm_naive(s: &Scheme, a: Ordinal, k: Level) -> usize {
    (0..a).filter(|&x| rho_naive(s, a, x) <= k).count()
}

/// First level where the norm sequences differ, `None` standing for `ω`.
pub fn delta_naive(s: &Scheme, a: Ordinal, b: Ordinal) -> Option<Level> {
    (0..=s.height()).find(|&k| norm_naive(s, a, k) != norm_naive(s, b, k))
}

/// `Ξ_α(k)` read off the first stored level-`k` member containing `α`.
pub fn xi_naive(s: &Scheme, a: Ordinal, k: Level) -> i32 {
    if k == 0 {
        return 0;
    }
    let f = s
        .level(k)
        .iter()
        .find(|f| f.contains(a))
        .unwrap_or_else(|| panic!("{a} is outside the domain"));
    xi_in_member(s, f, k, a)
}

/// The children of `f ∈ F_k` are the level-`(k-1)` members inside it,
/// ordered by their tails; the root is their common part.
fn xi_in_member(s: &Scheme, f: &FinSet, k: Level, a: Ordinal) -> i32 {
    let mut children: Vec<&FinSet> = s.level(k - 1).iter().filter(|e| e.is_subset(f)).collect();
    children.sort_by_key(|e| e.last());
    let root = children
        .iter()
        .skip(1)
        .fold(children[0].clone(), |acc, e| acc.intersection(e));
    if root.contains(a) {
        return -1;
    }
    children
        .iter()
        .position(|e| e.contains(a))
        .map(|i| i as i32)
        .expect("children cover the member")
}

/// The canonical functions the captured clauses need.
trait Canonical {
    fn height(&self) -> Level;
    fn rho(&self, a: Ordinal, b: Ordinal) -> Level;
    fn delta(&self, a: Ordinal, b: Ordinal) -> Option<Level>;
    fn xi(&self, a: Ordinal, k: Level) -> i32;
    fn members(&self, k: Level) -> &[FinSet];
}

struct PerCall<'a>(&'a Scheme);

impl Canonical for PerCall<'_> {
    fn height(&self) -> Level {
        self.0.height()
    }
    fn rho(&self, a: Ordinal, b: Ordinal) -> Level {
        rho_naive(self.0, a, b)
    }
    fn delta(&self, a: Ordinal, b: Ordinal) -> Option<Level> {
        delta_naive(self.0, a, b)
    }
    fn xi(&self, a: Ordinal, k: Level) -> i32 {
        xi_naive(self.0, a, k)
    }
    fn members(&self, k: Level) -> &[FinSet] {
        self.0.level(k)
    }
}

/// The captured definition clause by clause. At least two members are
/// required and level 0 never captures.
fn captured_clauses(c: &impl Canonical, family: &[FinSet], l: Level) -> bool {
    let n = family.len();
    if n < 2 || l == 0 || l > c.height() {
        return false;
    }
    let m = family[0].len();
    if m == 0 || family.iter().any(|d| d.len() != m) {
        return false;
    }
    // Δ-system
    let root = family[0].intersection(&family[1]);
    for i in 0..n {
        for j in i + 1..n {
            if family[i].intersection(&family[j]) != root {
                return false;
            }
        }
    }
    // root-tail-tail in the given order
    for i in 0..n {
        let tail = family[i].difference(&root);
        if let (Some(top), Some(low)) = (root.last(), tail.first()) {
            if top >= low {
                return false;
            }
        }
        if i + 1 < n {
            let next = family[i + 1].difference(&root);
            if let (Some(top), Some(low)) = (tail.last(), next.first()) {
                if top >= low {
                    return false;
                }
            }
        }
    }
    let r = root.len();
    // Ξ pattern
    for (i, d) in family.iter().enumerate() {
        for a in 0..m {
            let want = if a < r { -1 } else { i as i32 };
            if c.xi(d.as_slice()[a], l) != want {
                return false;
            }
        }
    }
    // ρ = l = Δ on tail coordinates
    for i in 0..n {
        for j in i + 1..n {
            for a in r..m {
                let (x, y) = (family[i].as_slice()[a], family[j].as_slice()[a]);
                if c.rho(x, y) != l || c.delta(x, y) != Some(l) {
                    return false;
                }
            }
        }
    }
    // the whole family sits inside one level-l member
    let union = family.iter().fold(FinSet::empty(), |acc, d| acc.union(d));
    c.members(l).iter().any(|f| union.is_subset(f))
}

/// Literal expansion of "captured at level `l`"; malformed families are
/// simply not captured.
pub fn captured_naive(s: &Scheme, family: &[FinSet], l: Level) -> bool {
    captured_clauses(&PerCall(s), family, l)
}

fn hausdorff_from(domain: usize, height: Level, xi: impl Fn(Ordinal, Level) -> i32) -> Pregap {
    let mut left = Vec::with_capacity(domain);
    let mut right = Vec::with_capacity(domain);
    for a in 0..domain {
        let mut l = Vec::new();
        let mut r = Vec::new();
        for k in 1..=height {
            let x = xi(a, k) as i64;
            if x >= 0 {
                l.push(2 * k as i64 + x);
                r.push(2 * k as i64 + 1 - x);
            }
        }
        left.push(l.into_iter().filter(|&v| v >= 0).map(|v| v as usize).collect());
        right.push(r.into_iter().filter(|&v| v >= 0).map(|v| v as usize).collect());
    }
    Pregap::new(FinSet::range(0, domain), left, right, Provenance::Hausdorff).expect("shapes agree")
}

/// The Hausdorff formulas over a freshly computed Ξ table. No binarity check:
/// this is the formula, whatever the type.
pub fn hausdorff_naive(s: &Scheme) -> Pregap {
    Oracle::new(s).hausdorff()
}

/// Tables of the literal definitions, for bulk agreement checks.
#[derive(Debug, Clone)]
pub struct Oracle {
    height: Level,
    domain: usize,
    levels: Vec<Vec<FinSet>>,
    rho: Vec<u8>,
    /// `norm[k][α]`
    norm: Vec<Vec<usize>>,
    /// `xi[k][α]`
    xi: Vec<Vec<i32>>,
}

impl Oracle {
    pub fn new(s: &Scheme) -> Oracle {
        let domain = s.domain_size();
        let height = s.height();
        let mut rho = vec![u8::MAX; domain * domain];
        for k in 0..=height {
            for f in s.level(k) {
                let els = f.as_slice();
                for &a in els {
                    for &b in els {
                        let cell = &mut rho[a * domain + b];
                        if *cell == u8::MAX {
                            *cell = k as u8;
                        }
                    }
                }
            }
        }
        let norm = (0..=height)
            .map(|k| {
                (0..domain)
                    .map(|a| (0..a).filter(|&x| rho[a * domain + x] as usize <= k).count())
                    .collect()
            })
            .collect();
        let mut xi = vec![vec![0i32; domain]; height + 1];
        for k in 1..=height {
            let mut done = vec![false; domain];
            for f in s.level(k) {
                for a in f.iter() {
                    if !done[a] {
                        xi[k][a] = xi_in_member(s, f, k, a);
                        done[a] = true;
                    }
                }
            }
        }
        Oracle {
            height,
            domain,
            levels: s.levels().to_vec(),
            rho,
            norm,
            xi,
        }
    }

    pub fn domain_size(&self) -> usize {
        self.domain
    }

    pub fn rho(&self, a: Ordinal, b: Ordinal) -> Level {
        self.rho[a * self.domain + b] as Level
    }

    pub fn norm(&self, a: Ordinal, k: Level) -> usize {
        self.norm[k][a]
    }

    pub fn delta(&self, a: Ordinal, b: Ordinal) -> Option<Level> {
        (0..=self.height).find(|&k| self.norm[k][a] != self.norm[k][b])
    }

    pub fn xi(&self, a: Ordinal, k: Level) -> i32 {
        self.xi[k][a]
    }

    pub fn captured(&self, family: &[FinSet], l: Level) -> bool {
        captured_clauses(self, family, l)
    }

    pub fn hausdorff(&self) -> Pregap {
        hausdorff_from(self.domain, self.height, |a, k| self.xi[k][a])
    }
}

impl Canonical for Oracle {
    fn height(&self) -> Level {
        self.height
    }
    fn rho(&self, a: Ordinal, b: Ordinal) -> Level {
        Oracle::rho(self, a, b)
    }
    fn delta(&self, a: Ordinal, b: Ordinal) -> Option<Level> {
        Oracle::delta(self, a, b)
    }
    fn xi(&self, a: Ordinal, k: Level) -> i32 {
        Oracle::xi(self, a, k)
    }
    fn members(&self, k: Level) -> &[FinSet] {
        &self.levels[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::capture::{captured, singletons};
    use crate::finset;
    use crate::gaps::hausdorff_gap;
    use crate::scheme::{build_scheme, DeltaLevel};
    use crate::typeseq::{make_type_prefix, TypeSequence};

    fn samples() -> Vec<Scheme> {
        vec![
            build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1)]).unwrap()),
            build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap()),
            build_scheme(&make_type_prefix(&[(1, 3, 0), (3, 2, 1), (5, 3, 2)]).unwrap()),
        ]
    }

    #[test]
    fn per_call_agrees_with_scheme() {
        for s in samples() {
            let d = s.domain_size();
            for a in 0..d {
                for b in 0..d {
                    assert_eq!(rho_naive(&s, a, b), s.rho(a, b).unwrap());
                    let want = match s.delta(a, b).unwrap() {
                        DeltaLevel::Level(k) => Some(k),
                        DeltaLevel::Top => None,
                    };
                    assert_eq!(delta_naive(&s, a, b), want);
                }
                for k in 0..=s.height() {
                    assert_eq!(xi_naive(&s, a, k), s.xi(a, k).unwrap());
                    assert_eq!(norm_naive(&s, a, k), s.norm(a, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_per_call() {
        for s in samples() {
            let o = Oracle::new(&s);
            for a in 0..s.domain_size() {
                for b in 0..s.domain_size() {
                    assert_eq!(o.rho(a, b), rho_naive(&s, a, b));
                    assert_eq!(o.delta(a, b), delta_naive(&s, a, b));
                }
            }
        }
    }

    #[test]
    fn captured_agrees_on_small_families() {
        let s = &samples()[1];
        let sets: Vec<FinSet> = (1u32..64)
            .map(|mask| (0..6).filter(|i| mask & (1 << i) != 0).collect())
            .filter(|f: &FinSet| f.len() <= 3)
            .collect();
        let o = Oracle::new(s);
        for a in &sets {
            for b in &sets {
                let fam = [a.clone(), b.clone()];
                for l in 0..=3 {
                    assert_eq!(o.captured(&fam, l), captured(s, &fam, l), "{fam:?} at {l}");
                }
            }
        }
        assert!(captured_naive(s, &singletons(&finset![2, 5]), 3));
        assert!(!captured_naive(s, &[finset![2]], 3));
        assert!(!captured_naive(s, &[finset![0, 2], finset![0, 1]], 3));
    }

    #[test]
    fn hausdorff_matches() {
        for s in samples().into_iter().take(2) {
            assert_eq!(hausdorff_naive(&s), hausdorff_gap(&s).unwrap());
        }
        let g = hausdorff_naive(&samples()[1]);
        assert_eq!(g.left(5), Some(&finset![3, 5, 7]));
        let trivial = build_scheme(&TypeSequence::trivial());
        let g = hausdorff_naive(&trivial);
        assert!(g.rows().all(|(_, l, r)| l.is_empty() && r.is_empty()));
    }
}
