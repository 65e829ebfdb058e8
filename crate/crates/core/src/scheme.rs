//! The canonical finite construction scheme of a type prefix.
//!
//! The whole domain `{0, …, m_K − 1}` is the unique top member. Every member
//! `F` of level `k+1` splits positionally into `n_{k+1}` children
//!
//! ```text
//! F_i = F[0..r) ∪ F[a_i .. a_i + (m_k − r))    with a_i = r + i·(m_k − r)
//! ```
//!
//! and level `k` is the set of all such children (duplicates merged).
//!
//! Canonical functions (`ρ`, `‖·‖_k`, `Ξ`, `Δ`) are tabulated at build time
//! from a nested chain of "home" members obtained by walking up the
//! child→parent links from each singleton. For `α ≤ β` the relation
//! `ρ(α, β) ≤ k ⇔ α ∈ home_k(β)` holds because `F ∩ (β+1) = (β)_k` for every
//! level-`k` member containing `β`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finset::{FinSet, Ordinal};
use crate::typeseq::TypeSequence;

/// Scheme levels are small naturals.
pub type Level = usize;

/// Domains up to this size get a dense ρ matrix at build time.
pub const RHO_TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("ordinal {alpha} is outside the domain 0..{domain}")]
    OutOfDomain { alpha: Ordinal, domain: usize },
    #[error("level {level} exceeds the scheme height {height}")]
    LevelOutOfRange { level: Level, height: usize },
    #[error("{set} is not a member of the scheme")]
    NotAMember { set: FinSet },
    #[error("{set} is a level-0 member and has no decomposition")]
    BottomLevel { set: FinSet },
    #[error("empty set has no ρ value")]
    EmptySet,
}

/// Value of `Δ`: a level, or the top sentinel standing for `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeltaLevel {
    Level(Level),
    Top,
}

impl DeltaLevel {
    pub fn level(self) -> Option<Level> {
        match self {
            DeltaLevel::Level(k) => Some(k),
            DeltaLevel::Top => None,
        }
    }

    pub fn is_top(self) -> bool {
        matches!(self, DeltaLevel::Top)
    }
}

impl fmt::Display for DeltaLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaLevel::Level(k) => write!(f, "{k}"),
            DeltaLevel::Top => write!(f, "omega"),
        }
    }
}

impl Serialize for DeltaLevel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DeltaLevel::Level(k) => s.serialize_u64(*k as u64),
            DeltaLevel::Top => s.serialize_str("omega"),
        }
    }
}

/// Root and children of a member above level 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub level: Level,
    pub root: FinSet,
    pub children: Vec<FinSet>,
}

/// Positional children of `f` when it sits at `level ≥ 1` of `ty`.
pub(crate) fn positional_children(ty: &TypeSequence, level: Level, f: &FinSet) -> (FinSet, Vec<FinSet>) {
    let r = ty.r(level);
    let block = ty.m(level - 1) - r;
    let root = f.slice(0, r);
    let children = (0..ty.n(level))
        .map(|i| {
            let a = r + i * block;
            root.union(&f.slice(a, a + block))
        })
        .collect();
    (root, children)
}

/// A built scheme. Immutable; every query is a table lookup or a short walk.
#[derive(Debug, Clone)]
pub struct Scheme {
    ty: TypeSequence,
    levels: Vec<Vec<FinSet>>,
    /// `children[k][i]`: indices into `levels[k-1]` (empty for `k = 0`).
    children: Vec<Vec<Vec<u32>>>,
    /// `home[k][α]`: index of a level-`k` member containing `α`, nested in `k`.
    home: Vec<Vec<u32>>,
    norm: Vec<Vec<u32>>,
    xi: Vec<Vec<i32>>,
    rho_table: Option<Vec<u8>>,
}

/// Builds the canonical scheme of `ty`.
pub fn build_scheme(ty: &TypeSequence) -> Scheme {
    Scheme::build(ty)
}

impl Scheme {
    pub fn build(ty: &TypeSequence) -> Scheme {
        let height = ty.height();
        let domain = ty.domain_size();

        let mut levels: Vec<Vec<FinSet>> = vec![Vec::new(); height + 1];
        levels[height] = vec![FinSet::range(0, domain)];
        let mut children: Vec<Vec<Vec<u32>>> = vec![Vec::new(); height + 1];
        children[height] = vec![Vec::new()];

        for k in (0..height).rev() {
            let mut raw: Vec<Vec<FinSet>> = Vec::with_capacity(levels[k + 1].len());
            let mut members = BTreeSet::new();
            for f in &levels[k + 1] {
                let (_, ch) = positional_children(ty, k + 1, f);
                members.extend(ch.iter().cloned());
                raw.push(ch);
            }
            let sorted: Vec<FinSet> = members.into_iter().collect();
            children[k + 1] = raw
                .iter()
                .map(|ch| {
                    ch.iter()
                        .map(|c| sorted.binary_search(c).expect("child was collected") as u32)
                        .collect()
                })
                .collect();
            children[k] = vec![Vec::new(); sorted.len()];
            levels[k] = sorted;
        }

        // parent of each member: the first member one level up listing it as a child
        let mut parent: Vec<Vec<u32>> = Vec::with_capacity(height + 1);
        for k in 0..height {
            let mut p = vec![u32::MAX; levels[k].len()];
            for (fi, ch) in children[k + 1].iter().enumerate() {
                for &c in ch {
                    if p[c as usize] == u32::MAX {
                        p[c as usize] = fi as u32;
                    }
                }
            }
            parent.push(p);
        }

        let mut home = vec![vec![0u32; domain]; height + 1];
        for (i, s) in levels[0].iter().enumerate() {
            home[0][s.at(0).expect("level 0 members are singletons")] = i as u32;
        }
        for k in 0..height {
            for a in 0..domain {
                home[k + 1][a] = parent[k][home[k][a] as usize];
            }
        }

        let mut norm = vec![vec![0u32; domain]; height + 1];
        let mut xi = vec![vec![0i32; domain]; height + 1];
        for k in 0..=height {
            for a in 0..domain {
                let f = &levels[k][home[k][a] as usize];
                let pos = f.position(a).expect("home member contains its ordinal");
                norm[k][a] = pos as u32;
                if k >= 1 {
                    let r = ty.r(k);
                    let block = ty.m(k - 1) - r;
                    xi[k][a] = if pos < r { -1 } else { ((pos - r) / block) as i32 };
                }
            }
        }

        let mut scheme = Scheme {
            ty: ty.clone(),
            levels,
            children,
            home,
            norm,
            xi,
            rho_table: None,
        };
        if domain <= RHO_TABLE_LIMIT {
            let mut table = vec![0u8; domain * domain];
            for b in 0..domain {
                for a in 0..b {
                    let v = scheme.rho_walk(a, b) as u8;
                    table[a * domain + b] = v;
                    table[b * domain + a] = v;
                }
            }
            scheme.rho_table = Some(table);
        }
        scheme
    }

    pub fn type_seq(&self) -> &TypeSequence {
        &self.ty
    }

    /// `K`, the index of the top level.
    pub fn height(&self) -> Level {
        self.ty.height()
    }

    pub fn domain_size(&self) -> usize {
        self.ty.domain_size()
    }

    pub fn domain(&self) -> FinSet {
        FinSet::range(0, self.domain_size())
    }

    /// Members of level `k`, sorted.
    pub fn level(&self, k: Level) -> &[FinSet] {
        &self.levels[k]
    }

    pub fn levels(&self) -> &[Vec<FinSet>] {
        &self.levels
    }

    /// Indices into `level(k-1)` of the children of `level(k)[i]`.
    pub fn children_of(&self, k: Level, i: usize) -> &[u32] {
        &self.children[k][i]
    }

    /// The level-`k` member reached from `{α}` by following parent links.
    pub fn home(&self, alpha: Ordinal, k: Level) -> Result<&FinSet, SchemeError> {
        self.check(alpha)?;
        self.check_level(k)?;
        Ok(&self.levels[k][self.home[k][alpha] as usize])
    }

    /// Every level-`k` member containing `α`; a linear scan.
    pub fn members_containing(&self, alpha: Ordinal, k: Level) -> Vec<&FinSet> {
        self.levels[k].iter().filter(|f| f.contains(alpha)).collect()
    }

    /// Level of `f` if it is a member.
    pub fn level_of(&self, f: &FinSet) -> Option<Level> {
        let k = self.ty.sizes().iter().position(|&m| m == f.len())?;
        self.levels[k].binary_search(f).ok().map(|_| k)
    }

    fn check(&self, alpha: Ordinal) -> Result<(), SchemeError> {
        if alpha < self.domain_size() {
            Ok(())
        } else {
            Err(SchemeError::OutOfDomain {
                alpha,
                domain: self.domain_size(),
            })
        }
    }

    fn check_level(&self, k: Level) -> Result<(), SchemeError> {
        if k <= self.height() {
            Ok(())
        } else {
            Err(SchemeError::LevelOutOfRange {
                level: k,
                height: self.height(),
            })
        }
    }

    pub fn canonical_decomposition(&self, f: &FinSet) -> Result<Decomposition, SchemeError> {
        let level = self
            .level_of(f)
            .ok_or_else(|| SchemeError::NotAMember { set: f.clone() })?;
        if level == 0 {
            return Err(SchemeError::BottomLevel { set: f.clone() });
        }
        let (root, children) = positional_children(&self.ty, level, f);
        Ok(Decomposition {
            level,
            root,
            children,
        })
    }

    pub fn verify_axioms(&self) -> Vec<AxiomViolation> {
        verify_levels(&self.ty, &self.levels)
    }

    fn rho_walk(&self, a: Ordinal, b: Ordinal) -> Level {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        (0..=self.height())
            .find(|&k| self.levels[k][self.home[k][hi] as usize].contains(lo))
            .expect("the top member contains the whole domain")
    }

    #[inline]
    pub(crate) fn rho_raw(&self, a: Ordinal, b: Ordinal) -> Level {
        match &self.rho_table {
            Some(t) => t[a * self.domain_size() + b] as Level,
            None => self.rho_walk(a, b),
        }
    }

    #[inline]
    pub(crate) fn norm_raw(&self, a: Ordinal, k: Level) -> usize {
        self.norm[k][a] as usize
    }

    #[inline]
    pub(crate) fn xi_raw(&self, a: Ordinal, k: Level) -> i32 {
        self.xi[k][a]
    }

    pub(crate) fn delta_raw(&self, a: Ordinal, b: Ordinal) -> DeltaLevel {
        (0..=self.height())
            .find(|&k| self.norm[k][a] != self.norm[k][b])
            .map_or(DeltaLevel::Top, DeltaLevel::Level)
    }

    pub(crate) fn closure_raw(&self, a: Ordinal, k: Level) -> FinSet {
        self.levels[k][self.home[k][a] as usize].below(a + 1)
    }

    /// `ρ(α, β)`: least level with a member containing both.
    pub fn rho(&self, a: Ordinal, b: Ordinal) -> Result<Level, SchemeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.rho_raw(a, b))
    }

    /// `ρ^A = max ρ[A²]`.
    pub fn rho_set(&self, set: &FinSet) -> Result<Level, SchemeError> {
        let top = set.last().ok_or(SchemeError::EmptySet)?;
        self.check(top)?;
        // for the maximum β, ρ^A = max_{α∈A} ρ(α, β) by the triangle inequality
        // of an ordinal metric; take the full max anyway
        let els = set.as_slice();
        let mut best = 0;
        for (i, &a) in els.iter().enumerate() {
            for &b in &els[i + 1..] {
                best = best.max(self.rho_raw(a, b));
            }
        }
        Ok(best)
    }

    /// `(α)_k = {ξ ≤ α : ρ(α, ξ) ≤ k}`.
    pub fn closure(&self, a: Ordinal, k: Level) -> Result<FinSet, SchemeError> {
        self.check(a)?;
        self.check_level(k)?;
        Ok(self.closure_raw(a, k))
    }

    /// `‖α‖_k = |(α)_k \ {α}|`.
    pub fn norm(&self, a: Ordinal, k: Level) -> Result<usize, SchemeError> {
        self.check(a)?;
        self.check_level(k)?;
        Ok(self.norm_raw(a, k))
    }

    /// First level at which the norm sequences differ; `Top` iff `α = β`.
    pub fn delta(&self, a: Ordinal, b: Ordinal) -> Result<DeltaLevel, SchemeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.delta_raw(a, b))
    }

    /// `Ξ_α(k)`: `-1` on the root of a level-`k` member containing `α`,
    /// otherwise the index of the child whose tail holds `α`. `Ξ_α(0) = 0`.
    pub fn xi(&self, a: Ordinal, k: Level) -> Result<i32, SchemeError> {
        self.check(a)?;
        self.check_level(k)?;
        Ok(self.xi_raw(a, k))
    }

    /// The full Ξ table as `(α, k, Ξ_α(k))` rows, `α`-major.
    pub fn xi_table(&self) -> Vec<(Ordinal, Level, i32)> {
        let mut rows = Vec::with_capacity(self.domain_size() * (self.height() + 1));
        for a in 0..self.domain_size() {
            for k in 0..=self.height() {
                rows.push((a, k, self.xi[k][a]));
            }
        }
        rows
    }
}

/// One failed scheme axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    LevelCount { expected: usize, found: usize },
    Cardinality { level: Level, member: FinSet, expected: usize },
    OutsideDomain { level: Level, member: FinSet },
    DuplicateMember { level: Level, member: FinSet },
    /// Axiom (i): `E ∩ F` is not an initial segment of both.
    NotInitialSegment { level: Level, left: FinSet, right: FinSet },
    /// Axiom (ii): a canonical child is missing from the level below.
    MissingChild { level: Level, parent: FinSet, child: FinSet },
    /// Axiom (ii): the children do not form the required Δ-system.
    BadDecomposition { level: Level, parent: FinSet, detail: String },
    /// The top level must be exactly the whole domain.
    Top { found: Vec<FinSet> },
}

/// Exhaustive check of cardinalities, axioms (i)/(ii) and finite cofinality
/// over raw levels. Used on built schemes and on hand-made fixtures.
pub fn verify_levels(ty: &TypeSequence, levels: &[Vec<FinSet>]) -> Vec<AxiomViolation> {
    let mut out = Vec::new();
    let height = ty.height();
    if levels.len() != height + 1 {
        out.push(AxiomViolation::LevelCount {
            expected: height + 1,
            found: levels.len(),
        });
        return out;
    }
    let domain = ty.domain_size();
    let top = FinSet::range(0, domain);
    if levels[height].len() != 1 || levels[height][0] != top {
        out.push(AxiomViolation::Top {
            found: levels[height].clone(),
        });
    }

    let mut sorted_levels: Vec<Vec<FinSet>> = Vec::with_capacity(levels.len());
    for (k, level) in levels.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for f in level {
            if f.len() != ty.m(k) {
                out.push(AxiomViolation::Cardinality {
                    level: k,
                    member: f.clone(),
                    expected: ty.m(k),
                });
            }
            if f.last().is_some_and(|x| x >= domain) {
                out.push(AxiomViolation::OutsideDomain {
                    level: k,
                    member: f.clone(),
                });
            }
            if !seen.insert(f.clone()) {
                out.push(AxiomViolation::DuplicateMember {
                    level: k,
                    member: f.clone(),
                });
            }
        }
        sorted_levels.push(seen.into_iter().collect());
    }

    // axiom (i)
    for (k, level) in sorted_levels.iter().enumerate() {
        for (i, e) in level.iter().enumerate() {
            for f in &level[i + 1..] {
                let common = e.intersection(f);
                if !common.is_initial_segment_of(e) || !common.is_initial_segment_of(f) {
                    out.push(AxiomViolation::NotInitialSegment {
                        level: k,
                        left: e.clone(),
                        right: f.clone(),
                    });
                }
            }
        }
    }

    // axiom (ii)
    for k in 1..=height {
        for f in &sorted_levels[k] {
            if f.len() != ty.m(k) {
                continue;
            }
            let (root, children) = positional_children(ty, k, f);
            for c in &children {
                if sorted_levels[k - 1].binary_search(c).is_err() {
                    out.push(AxiomViolation::MissingChild {
                        level: k,
                        parent: f.clone(),
                        child: c.clone(),
                    });
                }
            }
            if let Some(detail) = decomposition_defect(ty, k, f, &root, &children) {
                out.push(AxiomViolation::BadDecomposition {
                    level: k,
                    parent: f.clone(),
                    detail,
                });
            }
        }
    }
    out
}

fn decomposition_defect(
    ty: &TypeSequence,
    k: Level,
    f: &FinSet,
    root: &FinSet,
    children: &[FinSet],
) -> Option<String> {
    if children.len() != ty.n(k) {
        return Some(format!("{} children, expected {}", children.len(), ty.n(k)));
    }
    if root.len() != ty.r(k) {
        return Some(format!("root size {}, expected {}", root.len(), ty.r(k)));
    }
    let union = children.iter().fold(FinSet::empty(), |acc, c| acc.union(c));
    if &union != f {
        return Some("children do not cover the member".into());
    }
    for (i, a) in children.iter().enumerate() {
        if a.len() != ty.m(k - 1) {
            return Some(format!("child {i} has size {}", a.len()));
        }
        for b in &children[i + 1..] {
            if &a.intersection(b) != root {
                return Some("children do not meet exactly in the root".into());
            }
        }
    }
    let tails: Vec<FinSet> = children.iter().map(|c| c.difference(root)).collect();
    if !tails.iter().all(|t| root.precedes(t)) {
        return Some("root is not below every tail".into());
    }
    if !tails.windows(2).all(|w| w[0].precedes(&w[1])) {
        return Some("tails are not increasing".into());
    }
    None
}

/// JSON shape of a scheme dump.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeExport {
    #[serde(rename = "type")]
    pub ty: TypeSequence,
    pub levels: Vec<Vec<FinSet>>,
}

impl From<&Scheme> for SchemeExport {
    fn from(s: &Scheme) -> Self {
        SchemeExport {
            ty: s.ty.clone(),
            levels: s.levels.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset;
    use crate::typeseq::make_type_prefix;

    fn k2() -> Scheme {
        Scheme::build(&make_type_prefix(&[(1, 2, 0), (2, 2, 1)]).unwrap())
    }

    fn k3() -> Scheme {
        Scheme::build(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap())
    }

    #[test]
    fn builds_worked_levels() {
        let s = Scheme::build(&make_type_prefix(&[(1, 2, 0)]).unwrap());
        assert_eq!(s.level(1), &[finset![0, 1]]);
        assert_eq!(s.level(0), &[finset![0], finset![1]]);

        let s = k2();
        assert_eq!(s.level(2), &[finset![0, 1, 2]]);
        assert_eq!(s.level(1), &[finset![0, 1], finset![0, 2]]);
        assert_eq!(s.level(0), &[finset![0], finset![1], finset![2]]);

        let s = k3();
        assert_eq!(s.level(3), &[finset![0, 1, 2, 3, 4, 5]]);
        assert_eq!(s.level(2), &[finset![0, 1, 2], finset![3, 4, 5]]);
        assert_eq!(
            s.level(1),
            &[finset![0, 1], finset![0, 2], finset![3, 4], finset![3, 5]]
        );
    }

    #[test]
    fn decompositions() {
        let d = k2().canonical_decomposition(&finset![0, 1, 2]).unwrap();
        assert_eq!(d.root, finset![0]);
        assert_eq!(d.children, vec![finset![0, 1], finset![0, 2]]);

        let d = k2().canonical_decomposition(&finset![0, 1]).unwrap();
        assert_eq!(d.root, FinSet::empty());
        assert_eq!(d.children, vec![finset![0], finset![1]]);

        let d = k3().canonical_decomposition(&finset![3, 4, 5]).unwrap();
        assert_eq!(d.root, finset![3]);
        assert_eq!(d.children, vec![finset![3, 4], finset![3, 5]]);

        assert!(matches!(
            k3().canonical_decomposition(&finset![1, 2, 3]),
            Err(SchemeError::NotAMember { .. })
        ));
        assert!(matches!(
            k3().canonical_decomposition(&finset![4]),
            Err(SchemeError::BottomLevel { .. })
        ));
    }

    #[test]
    fn axioms_hold_and_corruption_is_caught() {
        assert!(k2().verify_axioms().is_empty());
        assert!(k3().verify_axioms().is_empty());

        let s = k2();
        let mut levels = s.levels().to_vec();
        levels[1] = vec![finset![0, 1], finset![1, 2]];
        let v = verify_levels(s.type_seq(), &levels);
        assert!(v.contains(&AxiomViolation::NotInitialSegment {
            level: 1,
            left: finset![0, 1],
            right: finset![1, 2],
        }));
        assert!(v.iter().any(|x| matches!(x, AxiomViolation::MissingChild { .. })));
    }

    #[test]
    fn canonical_function_values() {
        let s = k2();
        assert_eq!(s.rho(0, 1).unwrap(), 1);
        assert_eq!(s.rho(1, 2).unwrap(), 2);
        assert_eq!(s.rho(2, 2).unwrap(), 0);
        assert_eq!(s.rho_set(&finset![0, 1, 2]).unwrap(), 2);
        assert_eq!(s.rho_set(&finset![0, 1]).unwrap(), 1);
        assert_eq!(s.rho_set(&finset![2]).unwrap(), 0);
        assert_eq!(s.closure(2, 1).unwrap(), finset![0, 2]);
        assert_eq!(s.closure(1, 0).unwrap(), finset![1]);
        assert_eq!(s.norm(2, 1).unwrap(), 1);
        assert_eq!(s.norm(2, 2).unwrap(), 2);
        assert_eq!(s.norm(2, 0).unwrap(), 0);
        assert_eq!(s.delta(1, 2).unwrap(), DeltaLevel::Level(2));
        assert_eq!(s.delta(1, 1).unwrap(), DeltaLevel::Top);
        assert_eq!(s.xi(2, 2).unwrap(), 1);
        assert_eq!(s.xi(1, 2).unwrap(), 0);
        assert_eq!(s.xi(0, 2).unwrap(), -1);
        assert_eq!(s.xi(0, 0).unwrap(), 0);

        let s = k3();
        assert_eq!(s.rho(2, 5).unwrap(), 3);
        assert_eq!(s.closure(5, 2).unwrap(), finset![3, 4, 5]);
        assert_eq!(s.norm(5, 3).unwrap(), 5);
        assert_eq!(s.delta(2, 5).unwrap(), DeltaLevel::Level(3));
        assert_eq!(s.xi(5, 3).unwrap(), 1);
    }

    #[test]
    fn rejects_out_of_domain() {
        let s = k2();
        assert_eq!(
            s.rho(0, 3),
            Err(SchemeError::OutOfDomain { alpha: 3, domain: 3 })
        );
        assert!(s.closure(1, 3).is_err());
        assert!(s.xi(9, 1).is_err());
        assert_eq!(s.rho_set(&FinSet::empty()), Err(SchemeError::EmptySet));
    }

    #[test]
    fn delta_sentinel_is_above_every_level() {
        assert!(DeltaLevel::Top > DeltaLevel::Level(usize::MAX));
        assert_eq!(DeltaLevel::Top.to_string(), "omega");
    }

    #[test]
    fn export_shape() {
        let json = serde_json::to_string(&SchemeExport::from(&k2())).unwrap();
        assert_eq!(
            json,
            r#"{"type":[[1,2,0],[2,2,1]],"levels":[[[0],[1],[2]],[[0,1],[0,2]],[[0,1,2]]]}"#
        );
    }
}
