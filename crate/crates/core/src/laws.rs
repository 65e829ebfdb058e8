//! Exhaustive checkers for the laws of the canonical functions, the capture
//! machinery and the oracle agreement. Every checker returns the violations
//! it found; an empty list means the law holds on the whole scheme.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::capture::{
    captured, find_captured_tuples, is_captured, project, singletons, sq_bracket, sq_bracket_via_member,
    h_ideal_generator, CaptureError, SearchOptions,
};
use crate::finset::{FinSet, Ordinal};
use crate::oracle::{captured_naive, Oracle};
use crate::scheme::{DeltaLevel, Level, Scheme};

/// Domains up to this size get the cubic (triple) checks.
pub const TRIPLE_LIMIT: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: &'static str,
    pub args: Vec<usize>,
    pub detail: String,
}

impl LawViolation {
    fn new(law: &'static str, args: &[usize], detail: impl Into<String>) -> Self {
        LawViolation {
            law,
            args: args.to_vec(),
            detail: detail.into(),
        }
    }
}

impl std::fmt::Display for LawViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {:?}: {}", self.law, self.args, self.detail)
    }
}

fn delta_num(d: DeltaLevel, top: Level) -> Level {
    match d {
        DeltaLevel::Level(k) => k,
        DeltaLevel::Top => top + 1,
    }
}

/// om₁–om₃ on pairs (om₃ on triples when `triples`), `ρ^F = k` for members
/// of level `k`, and `(α)_k = F ∩ (α+1)` with `F(‖α‖_k) = α` for every
/// containing member (which is om₄ at finite scale).
pub fn ordinal_metric(s: &Scheme, triples: bool) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let d = s.domain_size();
    for a in 0..d {
        for b in 0..d {
            let r = s.rho_raw(a, b);
            if (r == 0) != (a == b) {
                out.push(LawViolation::new("om1", &[a, b], format!("rho = {r}")));
            }
            if r != s.rho_raw(b, a) {
                out.push(LawViolation::new("om2", &[a, b], "asymmetric"));
            }
        }
    }
    if triples {
        for a in 0..d {
            for b in a..d {
                for c in a..d {
                    if s.rho_raw(a, b) > s.rho_raw(a, c).max(s.rho_raw(b, c)) {
                        out.push(LawViolation::new("om3", &[a, b, c], "triangle"));
                    }
                }
            }
        }
    }
    for k in 0..=s.height() {
        for f in s.level(k) {
            match s.rho_set(f) {
                Ok(r) if r == k => {}
                other => out.push(LawViolation::new("rho-of-member", &f.as_slice()[..1], format!("level {k}, got {other:?}"))),
            }
            for (pos, a) in f.iter().enumerate() {
                let closure = s.closure_raw(a, k);
                if closure != f.below(a + 1) {
                    out.push(LawViolation::new("closure", &[a, k], format!("{closure} vs member {f}")));
                }
                if s.norm_raw(a, k) != pos {
                    out.push(LawViolation::new("norm-position", &[a, k], format!("norm {}", s.norm_raw(a, k))));
                }
            }
        }
    }
    out
}

/// dp₁ on pairs and dp₂ on triples (when `triples`).
pub fn delta_laws(s: &Scheme, triples: bool) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let d = s.domain_size();
    let top = s.height();
    for a in 0..d {
        for b in a + 1..d {
            let r = s.rho_raw(a, b);
            for k in r..=top {
                if s.norm_raw(a, k) >= s.norm_raw(b, k) {
                    out.push(LawViolation::new("dp1", &[a, b, k], "norms not increasing"));
                }
            }
            if delta_num(s.delta_raw(a, b), top) > r {
                out.push(LawViolation::new("dp1", &[a, b], "delta exceeds rho"));
            }
        }
    }
    if triples {
        for a in 0..d {
            for b in 0..d {
                if a == b {
                    continue;
                }
                let ab = delta_num(s.delta_raw(a, b), top);
                for c in 0..d {
                    if ab < delta_num(s.delta_raw(b, c), top) && ab != delta_num(s.delta_raw(a, c), top) {
                        out.push(LawViolation::new("dp2", &[a, b, c], "delta(a,b) != delta(a,c)"));
                    }
                }
            }
        }
    }
    out
}

/// Lemma (a)–(d) relating `Ξ` to `Δ` and `ρ`, for all `α < β` and
/// `1 ≤ k ≤ K`; also checks `Ξ` is the same through every containing member.
pub fn xi_laws(s: &Scheme) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let d = s.domain_size();
    let top = s.height();
    for a in 0..d {
        for b in a + 1..d {
            let r = s.rho_raw(a, b);
            let dl = delta_num(s.delta_raw(a, b), top);
            for k in 1..=top {
                let (xa, xb) = (s.xi_raw(a, k), s.xi_raw(b, k));
                if k < dl && xa != xb {
                    out.push(LawViolation::new("xi-a", &[a, b, k], format!("{xa} vs {xb}")));
                }
                if k == r && !(0 <= xa && xa < xb) {
                    out.push(LawViolation::new("xi-b", &[a, b, k], format!("{xa} vs {xb}")));
                }
                if k > r && xa != -1 && xa != xb {
                    out.push(LawViolation::new("xi-c", &[a, b, k], format!("{xa} vs {xb}")));
                }
                if k == dl && !(xa >= 0 && xb >= 0 && xa != xb) {
                    out.push(LawViolation::new("xi-d", &[a, b, k], format!("{xa} vs {xb}")));
                }
            }
        }
    }
    for k in 1..=top {
        for f in s.level(k) {
            let Ok(dec) = s.canonical_decomposition(f) else {
                out.push(LawViolation::new("xi-member", &[k], format!("{f} does not decompose")));
                continue;
            };
            for a in f.iter() {
                let via = if dec.root.contains(a) {
                    -1
                } else {
                    dec.children.iter().position(|c| c.contains(a)).map_or(-2, |i| i as i32)
                };
                if via != s.xi_raw(a, k) {
                    out.push(LawViolation::new("xi-member", &[a, k], format!("{via} through {f}")));
                }
            }
        }
    }
    out
}

/// For `α ≠ β` and `k < Δ(α,β)`, with `h : (α)_k → (β)_k` increasing: the
/// moved points form a final segment, and along it `ρ(x, h x)` rises while
/// `Δ(x, h x)` falls, bounded by `ρ(α,β)` and `Δ(α,β)`. Checking consecutive
/// moved points is equivalent to the chain for every `δ ≤ γ`.
pub fn bijection_chain(s: &Scheme) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let d = s.domain_size();
    let top = s.height();
    for a in 0..d {
        for b in a + 1..d {
            let dab = delta_num(s.delta_raw(a, b), top);
            let rab = s.rho_raw(a, b);
            for k in 0..dab.min(top + 1) {
                let (ca, cb) = (s.closure_raw(a, k), s.closure_raw(b, k));
                if ca.len() != cb.len() {
                    out.push(LawViolation::new("h-chain", &[a, b, k], "closures differ in size"));
                    continue;
                }
                let mut prev: Option<(Level, Level)> = None;
                for (x, hx) in ca.iter().zip(cb.iter()) {
                    if x == hx {
                        if prev.is_some() {
                            out.push(LawViolation::new("h-chain", &[a, b, k, x], "fixed point above a moved one"));
                        }
                        continue;
                    }
                    let r = s.rho_raw(x, hx);
                    let dl = delta_num(s.delta_raw(x, hx), top);
                    let ok = r >= dl
                        && r <= rab
                        && dl >= dab
                        && prev.is_none_or(|(pr, pd)| r >= pr && dl <= pd);
                    if !ok {
                        out.push(LawViolation::new("h-chain", &[a, b, k, x], format!("rho {r}, delta {dl}")));
                    }
                    prev = Some((r, dl));
                }
            }
        }
    }
    out
}

/// `(1)` `m < n ⇒ H_m(α) ⊆ H_n(α)`; `(2)` `β < γ`, `n > ρ(β,γ)` ⇒
/// `H_n(γ) ∩ β ⊆ H_n(β)`.
pub fn h_ideal_laws(s: &Scheme) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let d = s.domain_size();
    let top = s.height();
    let table: Vec<Vec<FinSet>> = (0..=top)
        .map(|n| (0..d).map(|a| h_ideal_generator(s, a, n).expect("in domain")).collect())
        .collect();
    for a in 0..d {
        for n in 1..=top {
            if !table[n - 1][a].is_subset(&table[n][a]) {
                out.push(LawViolation::new("h-monotone", &[a, n], "H_{n-1} not inside H_n"));
            }
        }
        if table[top][a] != FinSet::range(0, a) {
            out.push(LawViolation::new("h-top", &[a], "H_K(α) is not all of α"));
        }
    }
    for b in 0..d {
        for g in b + 1..d {
            for n in s.rho_raw(b, g) + 1..=top {
                if !table[n][g].below(b).is_subset(&table[n][b]) {
                    out.push(LawViolation::new("h-coherent", &[b, g, n], "H_n(γ) ∩ β not inside H_n(β)"));
                }
            }
        }
    }
    out
}

/// Captured-pair laws on the whole domain: `ρ` of the flattened family is
/// the level, both bracket readings agree with `α ≤ ⟦α,β⟧ ≤ β`, brackets are
/// constant across coordinates of captured disjoint families with sets of
/// size ≤ `max_size`, and lifting captured pairs of maxima through closures
/// keeps them captured.
///
/// Each coordinate pair of a captured disjoint family `{D_0, D_1}` is itself
/// a captured pair at the same level, so the candidates are assembled from
/// the captured pairs instead of from all families.
pub fn capture_laws(s: &Scheme, max_size: usize) -> Result<Vec<LawViolation>, CaptureError> {
    let mut out = Vec::new();
    let d = s.domain_size();
    let dom = s.domain();
    for a in 0..d {
        for b in a + 1..d {
            let x = sq_bracket(s, a, b)?;
            let y = sq_bracket_via_member(s, a, b)?;
            if x != y || x < a || x > b {
                out.push(LawViolation::new("bracket", &[a, b], format!("{x} vs {y}")));
            }
        }
    }
    let pairs = find_captured_tuples(s, &dom, 2, None, SearchOptions { cap: u64::MAX, seed: 0 })?;
    for c in &pairs.certificates {
        let pts = FinSet::from_unsorted(c.points());
        if s.rho_set(&pts).ok() != Some(c.level) {
            out.push(LawViolation::new("captured-rho", &c.points(), format!("level {}", c.level)));
        }
    }
    let coords: Vec<(Ordinal, Ordinal, Level)> = pairs
        .certificates
        .iter()
        .map(|c| {
            let p = c.points();
            (p[0], p[1], c.level)
        })
        .collect();
    for fam in disjoint_candidates(&coords, max_size) {
        let Some(l) = (1..=s.height()).find(|&l| captured(s, &fam, l)) else {
            continue;
        };
        let brackets: BTreeSet<Ordinal> = fam[0]
            .iter()
            .zip(fam[1].iter())
            .map(|(p, q)| sq_bracket(s, p, q))
            .collect::<Result<_, _>>()?;
        if brackets.len() != 1 {
            out.push(LawViolation::new("bracket-captured", &[l], format!("{} / {}: {brackets:?}", fam[0], fam[1])));
        }
    }
    out.extend(families_to_sets(s, &pairs.certificates.iter().map(|c| (c.points(), c.level)).collect::<Vec<_>>(), max_size)?);
    Ok(out)
}

/// Disjoint block-ordered pairs `[D_0, D_1]` of equal size `2..=max_size`
/// whose coordinates are captured pairs at one common level.
fn disjoint_candidates(coords: &[(Ordinal, Ordinal, Level)], max_size: usize) -> Vec<[FinSet; 2]> {
    let mut out = Vec::new();
    let mut sorted = coords.to_vec();
    sorted.sort();
    fn grow(
        sorted: &[(Ordinal, Ordinal, Level)],
        chosen: &mut Vec<(Ordinal, Ordinal)>,
        level: Level,
        from: usize,
        max_size: usize,
        out: &mut Vec<[FinSet; 2]>,
    ) {
        if chosen.len() >= 2 {
            out.push([
                chosen.iter().map(|c| c.0).collect(),
                chosen.iter().map(|c| c.1).collect(),
            ]);
        }
        if chosen.len() == max_size {
            return;
        }
        for (i, &(x, y, l)) in sorted.iter().enumerate().skip(from) {
            let &(px, py) = chosen.last().expect("seeded");
            let first_right = chosen[0].1;
            if l == level && x > px && y > py && x < first_right {
                chosen.push((x, y));
                grow(sorted, chosen, level, i + 1, max_size, out);
                chosen.pop();
            }
        }
    }
    for (i, &(x, y, l)) in sorted.iter().enumerate() {
        let mut chosen = vec![(x, y)];
        grow(&sorted, &mut chosen, l, i + 1, max_size, &mut out);
    }
    out
}

/// For each `j`, `a < m_j` and `C ⊆ a+1` with `a ∈ C`, `|C| ≤ max_size`: if
/// `{α, α'}` with `‖α‖_j = ‖α'‖_j = a` is captured at `l`, so is
/// `{(α)_j[C], (α')_j[C]}`.
fn families_to_sets(s: &Scheme, pairs: &[(Vec<Ordinal>, Level)], max_size: usize) -> Result<Vec<LawViolation>, CaptureError> {
    let mut out = Vec::new();
    for (pts, l) in pairs {
        let (p, q) = (pts[0], pts[1]);
        for j in 0..=s.height() {
            let a = s.norm_raw(p, j);
            if s.norm_raw(q, j) != a {
                continue;
            }
            let (cp, cq) = (s.closure_raw(p, j), s.closure_raw(q, j));
            for extra in 0..max_size {
                for c in itertools::Itertools::combinations(0..a, extra) {
                    let positions = FinSet::from_unsorted(c.into_iter().chain([a]));
                    let fam = [
                        cp.image(&positions).expect("positions below a"),
                        cq.image(&positions).expect("positions below a"),
                    ];
                    match is_captured(s, &fam, *l) {
                        Ok(Some(_)) => {}
                        other => out.push(LawViolation::new(
                            "families-to-sets",
                            &[p, q, j, a, *l],
                            format!("C = {positions}: {other:?}"),
                        )),
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `π_n` is monotone along the chain of initial segments of the domain and
/// is recovered from level traces: `π_n(S) ∩ (k+1) = ⋃_{F ∈ F_k} π_n(S ∩ F)`.
pub fn projection_laws(s: &Scheme, n: usize) -> Result<Vec<LawViolation>, CaptureError> {
    let mut out = Vec::new();
    let d = s.domain_size();
    let mut prev = BTreeSet::new();
    for end in 0..=d {
        let set = FinSet::range(0, end);
        let pi = project(s, &set, n)?;
        if !prev.is_subset(&pi) {
            out.push(LawViolation::new("pi-monotone", &[end], format!("{prev:?} vs {pi:?}")));
        }
        for k in 0..=s.height() {
            let mut union = BTreeSet::new();
            for f in s.level(k) {
                union.extend(project(s, &set.intersection(f), n)?);
            }
            let expect: BTreeSet<Level> = pi.iter().copied().filter(|&l| l <= k).collect();
            if union != expect {
                out.push(LawViolation::new("pi-recovery", &[end, k], format!("{union:?} vs {expect:?}")));
            }
        }
        prev = pi;
    }
    Ok(out)
}

/// ρ, Δ, Ξ and norms against the oracle tables on every pair and level.
pub fn oracle_agreement(s: &Scheme) -> Vec<LawViolation> {
    let mut out = Vec::new();
    let o = Oracle::new(s);
    let d = s.domain_size();
    for a in 0..d {
        for b in 0..d {
            if s.rho_raw(a, b) != o.rho(a, b) {
                out.push(LawViolation::new("oracle-rho", &[a, b], ""));
            }
            if s.delta_raw(a, b).level() != o.delta(a, b) {
                out.push(LawViolation::new("oracle-delta", &[a, b], ""));
            }
        }
        for k in 0..=s.height() {
            if s.xi_raw(a, k) != o.xi(a, k) {
                out.push(LawViolation::new("oracle-xi", &[a, k], ""));
            }
            if s.norm_raw(a, k) != o.norm(a, k) {
                out.push(LawViolation::new("oracle-norm", &[a, k], ""));
            }
        }
    }
    out
}

/// `captured` against the literal expansion on each family at every level
/// `0..=K+1`. Returns the number of comparisons and the disagreements.
pub fn captured_agreement<'a, I>(s: &Scheme, families: I) -> (u64, Vec<LawViolation>)
where
    I: IntoIterator<Item = &'a [FinSet]>,
{
    let mut out = Vec::new();
    let mut count = 0;
    for fam in families {
        for l in 0..=s.height() + 1 {
            count += 1;
            if captured(s, fam, l) != captured_naive(s, fam, l) {
                let flat: Vec<usize> = fam.iter().flat_map(|f| f.iter().chain([usize::MAX])).collect();
                out.push(LawViolation::new("oracle-captured", &flat, format!("level {l}")));
            }
        }
    }
    (count, out)
}

/// Every law that is cheap enough for the given domain, concatenated.
pub fn all_scheme_laws(s: &Scheme) -> Vec<LawViolation> {
    let triples = s.domain_size() <= TRIPLE_LIMIT;
    let mut out = ordinal_metric(s, triples);
    out.extend(delta_laws(s, triples));
    out.extend(xi_laws(s));
    out.extend(bijection_chain(s));
    out
}

/// The singleton pairs of `set` captured at some level.
pub fn captured_pairs(s: &Scheme, set: &FinSet) -> Vec<(Ordinal, Ordinal, Level)> {
    let els = set.as_slice();
    let mut out = Vec::new();
    for (i, &a) in els.iter().enumerate() {
        for &b in &els[i + 1..] {
            let fam = singletons(&FinSet::from_unsorted([a, b]));
            if let Some(l) = (1..=s.height()).find(|&l| captured(s, &fam, l)) {
                out.push((a, b, l));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::build_scheme;
    use crate::typeseq::{enumerate_prefixes, make_type_prefix};

    fn k3() -> Scheme {
        build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap())
    }

    #[test]
    fn k3_is_clean() {
        let s = k3();
        assert!(all_scheme_laws(&s).is_empty());
        assert!(h_ideal_laws(&s).is_empty());
        assert!(capture_laws(&s, 3).unwrap().is_empty());
        assert!(projection_laws(&s, 2).unwrap().is_empty());
        assert!(oracle_agreement(&s).is_empty());
        assert_eq!(captured_pairs(&s, &s.domain()).iter().find(|p| p.0 == 2 && p.1 == 5), Some(&(2, 5, 3)));
    }

    #[test]
    fn small_grid_is_clean() {
        for ty in enumerate_prefixes(3, 3, 40) {
            let s = build_scheme(&ty);
            let v = all_scheme_laws(&s);
            assert!(v.is_empty(), "{:?}: {}", ty.triples(), v[0]);
            let v = h_ideal_laws(&s);
            assert!(v.is_empty(), "{:?}: {}", ty.triples(), v[0]);
            let v = capture_laws(&s, 2).unwrap();
            assert!(v.is_empty(), "{:?}: {}", ty.triples(), v[0]);
        }
    }
}
