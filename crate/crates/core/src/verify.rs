//! Named verification suites over a grid of type prefixes.
//!
//! Each suite returns a [`SuiteReport`] whose text rendering is a pure
//! function of the configuration, so two runs with the same seed print the
//! same bytes.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::capture::{sq_bracket, h_ideal_generator};
use crate::finset::FinSet;
use crate::gaps::{
    check_capture_gap_law, check_hausdorff_condition, check_interhausdorff, check_levelwise_even_odd,
    check_todorcevic_capture_laws, hausdorff_gap, levelwise_diff, todorcevic_restrict, validate_separating, Pregap,
};
use crate::laws::{self, LawViolation};
use crate::oracle::hausdorff_naive;
use crate::posets::{
    check_capture_compatibility_law, compatible, dense_meet_targets, extract_separating, greedy_filter, is_condition,
    root_tail_tail_families, Condition, FilterOutcome, LawInstance, PosetKind, PosetView,
};
use crate::scheme::{build_scheme, verify_levels, DeltaLevel, Scheme};
use crate::typeseq::{enumerate_prefixes, make_type_prefix, random_prefix, PrefixBounds, Triple, TypeSequence};

pub const SUITES: [&str; 8] = ["types", "axioms", "canonical", "oracle", "capture", "gaps", "posets", "regression"];

/// How many failure lines a report keeps.
const SHOWN: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fixture {
    Clean,
    /// Feed designated suites (`axioms`, `gaps`) a corrupted input.
    Corrupted,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridConfig {
    pub max_height: usize,
    pub max_n: usize,
    pub max_domain: usize,
    /// Extra seeded random prefixes.
    pub random: usize,
    pub random_max_height: usize,
    pub random_max_n: usize,
    pub random_max_domain: usize,
    pub seed: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            max_height: 4,
            max_n: 3,
            max_domain: 200,
            random: 50,
            random_max_height: 9,
            random_max_n: 4,
            random_max_domain: 512,
            seed: 0,
        }
    }
}

/// All prefixes of height `1..=max_height` within the bounds, then the
/// random ones.
pub fn grid(cfg: &GridConfig) -> Vec<TypeSequence> {
    let mut out: Vec<TypeSequence> = (1..=cfg.max_height)
        .flat_map(|h| enumerate_prefixes(h, cfg.max_n, cfg.max_domain))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut made = 0;
    while made < cfg.random {
        let bounds = PrefixBounds {
            height: rng.random_range(1..=cfg.random_max_height),
            max_n: cfg.random_max_n,
            max_r: usize::MAX,
            max_domain: cfg.random_max_domain,
        };
        if let Some(ty) = random_prefix(&mut rng, bounds) {
            out.push(ty);
            made += 1;
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: u64,
    pub failures: usize,
    pub shown: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            checked: 0,
            failures: 0,
            shown: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn fail(&mut self, line: impl Into<String>) {
        self.failures += 1;
        if self.shown.len() < SHOWN {
            self.shown.push(line.into());
        }
    }

    fn absorb(&mut self, context: &str, violations: impl IntoIterator<Item = impl fmt::Display>) {
        for v in violations {
            self.fail(format!("{context}: {v}"));
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{:<10} {verdict} checked={} failures={}", self.name, self.checked, self.failures)?;
        for line in &self.shown {
            write!(f, "\n  {line}")?;
        }
        Ok(())
    }
}

fn label(ty: &TypeSequence) -> String {
    let parts: Vec<String> = ty.triples().iter().map(|t| format!("({},{},{})", t.m, t.n, t.r)).collect();
    parts.join("")
}

/// Runs `name` over the grid. Unknown names are `Err`.
pub fn run_suite(name: &str, cfg: &GridConfig, fixture: Fixture) -> Result<SuiteReport, String> {
    let report = match name {
        "types" => types_suite(cfg.seed, 200),
        "axioms" => axioms_suite(&grid(cfg), fixture),
        "canonical" => canonical_suite(&grid(cfg)),
        "oracle" => oracle_suite(&grid(cfg), cfg.seed),
        "capture" => capture_suite(&grid(cfg)),
        "gaps" => gaps_suite(&grid(cfg), fixture),
        "posets" => posets_suite(),
        "regression" => regression_suite(),
        other => return Err(format!("unknown suite {other:?}; known: {}", SUITES.join(", "))),
    };
    Ok(report)
}

/// Literal conditions (a)–(d) on raw triples.
pub fn conditions_hold(triples: &[Triple]) -> bool {
    if triples.is_empty() || triples[0].m != 1 {
        return false;
    }
    triples.iter().enumerate().all(|(i, t)| {
        let next_m = triples.get(i + 1).map(|u| u.m);
        t.n >= 2 && t.r < t.m && next_m.is_none_or(|m| t.r.checked_add((t.m - t.r).saturating_mul(t.n)) == Some(m))
    })
}

/// Random prefixes of height ≤ 8 and fan-out ≤ 4, each with every ±1
/// mutation of every field: acceptance must match the literal conditions,
/// and mutations breaking (c) or (d) must be rejected.
pub fn types_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("types");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut made = 0;
    while made < count {
        let bounds = PrefixBounds {
            height: rng.random_range(1..=8),
            max_n: 4,
            max_r: usize::MAX,
            max_domain: 1 << 20,
        };
        let Some(ty) = random_prefix(&mut rng, bounds) else { continue };
        made += 1;
        let base = ty.triples().to_vec();
        rep.checked += 1;
        if !conditions_hold(&base) {
            rep.fail(format!("{}: generated prefix breaks a condition", label(&ty)));
        }
        for i in 0..base.len() {
            for field in 0..3 {
                for up in [false, true] {
                    let mut t = base.clone();
                    let slot = match field {
                        0 => &mut t[i].m,
                        1 => &mut t[i].n,
                        _ => &mut t[i].r,
                    };
                    if !up && *slot == 0 {
                        continue;
                    }
                    *slot = if up { *slot + 1 } else { *slot - 1 };
                    rep.checked += 1;
                    let accepted = make_type_prefix(&t).is_ok();
                    if accepted != conditions_hold(&t) {
                        rep.fail(format!("{}: mutation of triple {i} field {field} accepted={accepted}", label(&ty)));
                    }
                }
            }
        }
    }
    rep
}

fn k2() -> Scheme {
    build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1)]).expect("valid"))
}

fn k3() -> Scheme {
    build_scheme(&make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).expect("valid"))
}

pub fn axioms_suite(grid: &[TypeSequence], fixture: Fixture) -> SuiteReport {
    let mut rep = SuiteReport::new("axioms");
    let results: Vec<(String, Vec<String>)> = grid
        .par_iter()
        .map(|ty| {
            let s = build_scheme(ty);
            (label(ty), s.verify_axioms().iter().map(|v| format!("{v:?}")).collect())
        })
        .collect();
    for (name, vs) in results {
        rep.checked += 1;
        rep.absorb(&name, vs);
    }
    if fixture == Fixture::Corrupted {
        let s = k2();
        let mut levels = s.levels().to_vec();
        for f in levels[1].iter_mut() {
            if *f == FinSet::from_unsorted([0, 2]) {
                *f = FinSet::from_unsorted([1, 2]);
            }
        }
        rep.checked += 1;
        rep.absorb("corrupted K2", verify_levels(s.type_seq(), &levels).iter().map(|v| format!("{v:?}")));
    }
    rep
}

fn collect_laws(
    rep: &mut SuiteReport,
    grid: &[TypeSequence],
    keep: impl Fn(&TypeSequence) -> bool + Sync,
    check: impl Fn(&Scheme) -> Vec<LawViolation> + Sync,
) {
    let results: Vec<(String, Vec<LawViolation>)> = grid
        .par_iter()
        .filter(|ty| keep(ty))
        .map(|ty| (label(ty), check(&build_scheme(ty))))
        .collect();
    for (name, vs) in results {
        rep.checked += 1;
        rep.absorb(&name, vs);
    }
}

/// om₁–om₄, dp₁–dp₂, the Ξ lemma, the bijection chain, closures and the
/// `H_n` lemma.
pub fn canonical_suite(grid: &[TypeSequence]) -> SuiteReport {
    let mut rep = SuiteReport::new("canonical");
    collect_laws(&mut rep, grid, |_| true, |s| {
        let mut v = laws::all_scheme_laws(s);
        v.extend(laws::h_ideal_laws(s));
        v
    });
    rep
}

/// Every ordered family (any sizes) is compared on domains up to this size.
pub const CAPTURED_ALL_FAMILIES_DOMAIN: usize = 6;
/// Every root-tail-tail family of 2–3 sets of size ≤ 3 is compared on
/// domains up to this size.
pub const CAPTURED_EXHAUSTIVE_DOMAIN: usize = 12;
/// Largest domain for the captured-predicate comparison.
pub const CAPTURED_MAX_DOMAIN: usize = 24;

/// Families of 1–3 subsets of size 1–3 for the captured comparison.
///
/// Only root-tail-tail families of equal-size sets can be captured, so those
/// are listed exhaustively (for domains above [`CAPTURED_EXHAUSTIVE_DOMAIN`],
/// three-member families of 3-sets are sampled instead). Every other family
/// is rejected by its shape alone; those are listed exhaustively up to
/// [`CAPTURED_ALL_FAMILIES_DOMAIN`] and sampled (`samples` seeded draws)
/// above it.
pub fn captured_families(s: &Scheme, seed: u64, samples: usize) -> Vec<Vec<FinSet>> {
    let d = s.domain_size();
    let dom = s.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if d <= CAPTURED_ALL_FAMILIES_DOMAIN {
        let all: Vec<FinSet> = (1..=3)
            .flat_map(|m| itertools::Itertools::combinations(0..d, m).map(FinSet::from_unsorted))
            .collect();
        for a in &all {
            out.push(vec![a.clone()]);
            for b in &all {
                out.push(vec![a.clone(), b.clone()]);
                for c in &all {
                    out.push(vec![a.clone(), b.clone(), c.clone()]);
                }
            }
        }
        return out;
    }
    for m in 1..=3 {
        out.extend(root_tail_tail_families(&dom, m, 2));
        if m < 3 || d <= CAPTURED_EXHAUSTIVE_DOMAIN {
            out.extend(root_tail_tail_families(&dom, m, 3));
        } else {
            out.extend((0..samples).map(|_| sample_root_tail_tail(&mut rng, d, m, 3)));
        }
    }
    for _ in 0..samples {
        let count = rng.random_range(1..=3);
        let m = rng.random_range(1..=3);
        out.push(
            (0..count)
                .map(|_| FinSet::from_unsorted(rand::seq::index::sample(&mut rng, d, m)))
                .collect(),
        );
    }
    out
}

/// A uniformly placed root-tail-tail family of `count` `m`-sets.
pub fn sample_root_tail_tail(rng: &mut ChaCha8Rng, d: usize, m: usize, count: usize) -> Vec<FinSet> {
    let r = rng.random_range(0..m);
    let pts = FinSet::from_unsorted(rand::seq::index::sample(rng, d, r + count * (m - r)));
    let (root, rest) = pts.as_slice().split_at(r);
    let tail = m - r;
    (0..count)
        .map(|i| FinSet::from_unsorted(root.iter().chain(&rest[i * tail..(i + 1) * tail]).copied()))
        .collect()
}

/// ρ/Δ/Ξ/norm against the oracle on every domain ≤ 128, and the captured
/// predicate against its literal expansion on domains ≤ 24.
pub fn oracle_suite(grid: &[TypeSequence], seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("oracle");
    collect_laws(&mut rep, grid, |ty| ty.domain_size() <= laws::TRIPLE_LIMIT, laws::oracle_agreement);
    let mut seen = BTreeSet::new();
    let picked: Vec<&TypeSequence> = grid
        .iter()
        .filter(|ty| {
            let d = ty.domain_size();
            d <= CAPTURED_EXHAUSTIVE_DOMAIN || (d <= CAPTURED_MAX_DOMAIN && seen.insert(d))
        })
        .collect();
    let results: Vec<(String, u64, Vec<LawViolation>)> = picked
        .par_iter()
        .map(|ty| {
            let s = build_scheme(ty);
            let fams = captured_families(&s, seed, 5_000);
            let (n, v) = laws::captured_agreement(&s, fams.iter().map(Vec::as_slice));
            (label(ty), n, v)
        })
        .collect();
    for (name, n, vs) in results {
        rep.checked += n;
        rep.absorb(&name, vs);
    }
    rep
}

/// Largest domain for the projection laws.
pub const PROJECTION_MAX_DOMAIN: usize = 24;

/// Capture laws on domains ≤ 48 (with families of sets of size ≤ 2) and on
/// the K=3 sample with sets of size ≤ 3; projections for `n = 2, 3` on
/// domains ≤ 24.
pub fn capture_suite(grid: &[TypeSequence]) -> SuiteReport {
    let mut rep = SuiteReport::new("capture");
    collect_laws(&mut rep, grid, |ty| ty.domain_size() <= 48, |s| {
        let mut v = laws::capture_laws(s, 2).unwrap_or_else(|e| vec![error_violation(e)]);
        if s.domain_size() <= PROJECTION_MAX_DOMAIN {
            for n in [2, 3] {
                v.extend(laws::projection_laws(s, n).unwrap_or_else(|e| vec![error_violation(e)]));
            }
        }
        v
    });
    rep.checked += 1;
    rep.absorb("K3", laws::capture_laws(&k3(), 3).unwrap_or_else(|e| vec![error_violation(e)]));
    rep
}

fn error_violation(e: impl fmt::Display) -> LawViolation {
    LawViolation {
        law: "error",
        args: Vec::new(),
        detail: e.to_string(),
    }
}

/// The Hausdorff-gap laws on every binary prefix of the grid, including the
/// Todorčević laws for every split of `1..=K` into `P0` and `P1`.
pub fn gaps_suite(grid: &[TypeSequence], fixture: Fixture) -> SuiteReport {
    let mut rep = SuiteReport::new("gaps");
    let results: Vec<(String, u64, Vec<String>)> = grid
        .par_iter()
        .filter(|ty| ty.is_binary())
        .map(|ty| {
            let s = build_scheme(ty);
            let g = hausdorff_gap(&s).expect("binary");
            let mut v: Vec<String> = Vec::new();
            if g != hausdorff_naive(&s) {
                v.push("hausdorff_gap differs from the oracle".into());
            }
            let mut checked = 1;
            for vs in [
                check_interhausdorff(&s, &g),
                check_hausdorff_condition(&s, &g),
                check_levelwise_even_odd(&s, &g),
                check_capture_gap_law(&s, &g),
            ] {
                v.extend(vs.iter().map(|x| format!("{x:?}")));
            }
            let k = s.height();
            for mask in 0u32..(1 << k) {
                let p0: BTreeSet<usize> = (1..=k).filter(|l| mask & (1 << (l - 1)) != 0).collect();
                let p1: BTreeSet<usize> = (1..=k).filter(|l| !p0.contains(l)).collect();
                let gc = todorcevic_restrict(&g, &p0);
                checked += 1;
                v.extend(check_todorcevic_capture_laws(&s, &gc, &p0, &p1).iter().map(|x| format!("P0={p0:?} {x:?}")));
            }
            (label(ty), checked, v)
        })
        .collect();
    for (name, n, vs) in results {
        rep.checked += n;
        rep.absorb(&name, vs);
    }
    if fixture == Fixture::Corrupted {
        let s = k2();
        let g = hausdorff_gap(&s).expect("binary");
        let mut left: Vec<FinSet> = (0..g.len()).map(|i| g.at(i).0.clone()).collect();
        let right: Vec<FinSet> = (0..g.len()).map(|i| g.at(i).1.clone()).collect();
        left[2] = FinSet::from_unsorted([2, 3]);
        let bad = Pregap::new(g.index().clone(), left, right, g.provenance().clone()).expect("shapes agree");
        rep.checked += 1;
        rep.absorb("corrupted K2 gap", check_interhausdorff(&s, &bad).iter().map(|x| format!("{x:?}")));
    }
    rep
}

/// Every partial map over `index` with values below `values`.
fn all_maps(index: &FinSet, values: usize) -> Vec<Condition> {
    let mut out = vec![std::collections::BTreeMap::new()];
    for a in index.iter() {
        let mut next = Vec::with_capacity(out.len() * (values + 1));
        for m in &out {
            next.push(m.clone());
            for v in 0..values {
                let mut e = m.clone();
                e.insert(a, v);
                next.push(e);
            }
        }
        out = next;
    }
    out.into_iter().map(Condition::Map).collect()
}

fn all_subsets(universe: &FinSet) -> Vec<FinSet> {
    let els = universe.as_slice();
    (0u32..(1 << els.len()))
        .map(|mask| (0..els.len()).filter(|i| mask & (1 << i) != 0).map(|i| els[i]).collect())
        .collect()
}

/// `c` minus one index, for each index.
fn one_smaller(c: &Condition) -> Vec<Condition> {
    match c {
        Condition::Map(m) => m
            .keys()
            .map(|k| {
                let mut e = m.clone();
                e.remove(k);
                Condition::Map(e)
            })
            .collect(),
        Condition::Set(s) => s.iter().map(|a| Condition::Set(s.difference(&FinSet::singleton(a)))).collect(),
    }
}

fn downward_closed(rep: &mut SuiteReport, v: &PosetView, conds: &[Condition], what: &str) {
    for c in conds {
        rep.checked += 1;
        if is_condition(v, c).unwrap_or(false) {
            for smaller in one_smaller(c) {
                if !is_condition(v, &smaller).unwrap_or(false) {
                    rep.fail(format!("{what}: {c} valid but {smaller} is not"));
                }
            }
            if !compatible(v, c, c).unwrap_or(false) {
                rep.fail(format!("{what}: {c} incompatible with itself"));
            }
        }
    }
}

/// Poset laws on the K=3 sample: empty conditions, downward closure,
/// CHI0/CHI1 complementarity, filters and separation, and the capture
/// compatibility laws.
pub fn posets_suite() -> SuiteReport {
    let mut rep = SuiteReport::new("posets");
    let s = k3();
    let h = hausdorff_gap(&s).expect("binary");
    let diff = levelwise_diff(&h, &s.domain()).expect("domain has two points");
    let levels: Vec<BTreeSet<usize>> = all_subsets(&FinSet::range(1, s.height() + 1))
        .into_iter()
        .map(|f| f.iter().collect())
        .collect();

    for g in [&diff, &h] {
        for kind in [PosetKind::Sep, PosetKind::Chi0, PosetKind::Chi1, PosetKind::Biorth] {
            let v = PosetView::over_pregap(kind, g).expect("pregap kind");
            rep.checked += 1;
            if !is_condition(&v, &v.empty_condition()).unwrap_or(false) {
                rep.fail(format!("{kind}: empty condition rejected"));
            }
            let conds: Vec<Condition> = if kind == PosetKind::Sep {
                all_maps(g.index(), 8)
            } else {
                all_subsets(g.index()).into_iter().map(Condition::Set).collect()
            };
            downward_closed(&mut rep, &v, &conds, &kind.to_string());
        }
        let (c0, c1) = (PosetView::chi0(g), PosetView::chi1(g));
        let idx = g.index().as_slice();
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i + 1..] {
                rep.checked += 1;
                let pair = Condition::Set(FinSet::from_unsorted([a, b]));
                let meet = !g.left(a).expect("index").is_disjoint(g.right(b).expect("index"))
                    || !g.left(b).expect("index").is_disjoint(g.right(a).expect("index"));
                let in1 = is_condition(&c1, &pair).unwrap_or(false);
                let in0 = is_condition(&c0, &pair).unwrap_or(false);
                if in1 != meet || in0 == meet {
                    rep.fail(format!("complementarity at {{{a},{b}}}: chi1={in1} chi0={in0} meet={meet}"));
                }
            }
        }
    }

    for n in [2, 3] {
        for a in &levels {
            let v = PosetView::dn(&s, n, a.clone());
            rep.checked += 1;
            if !is_condition(&v, &v.empty_condition()).unwrap_or(false) {
                rep.fail(format!("DN n={n} A={a:?}: empty condition rejected"));
            }
            let conds: Vec<Condition> = all_subsets(&s.domain()).into_iter().map(Condition::Set).collect();
            downward_closed(&mut rep, &v, &conds, &format!("DN n={n} A={a:?}"));
        }
    }

    for base in [k2(), k3()] {
        let g = levelwise_diff(&hausdorff_gap(&base).expect("binary"), &base.domain()).expect("two points");
        let v = PosetView::sep(&g);
        let targets = dense_meet_targets(&v, g.index());
        rep.checked += 1;
        match greedy_filter(&v, &targets, &Condition::empty_map()) {
            Ok(FilterOutcome::Filter { conditions }) => {
                if targets.iter().any(|t| !conditions.iter().any(|c| t.contains(c))) {
                    rep.fail("filter misses a dense target");
                }
                match extract_separating(&v, &conditions) {
                    Ok(sep) if validate_separating(&g, &sep) => {}
                    other => rep.fail(format!("extracted separating function rejected: {other:?}")),
                }
            }
            other => rep.fail(format!("SEP filter failed: {other:?}")),
        }
    }

    let v = PosetView::sep(&diff);
    let maps: Vec<Condition> = all_maps(diff.index(), 3).into_iter().filter(|c| !c.is_empty() && c.len() <= 2).collect();
    let mut instances = Vec::new();
    for p in &maps {
        for q in &maps {
            instances.push(LawInstance::Sep { p: p.clone(), q: q.clone() });
        }
    }
    law_outcome(&mut rep, "SEP law", check_capture_compatibility_law(&v, &s, &instances));

    let mut quads = Vec::new();
    for m in 1..=2 {
        for f in root_tail_tail_families(&s.domain(), m, 4) {
            quads.push(LawInstance::Dn {
                quad: [f[0].clone(), f[1].clone(), f[2].clone(), f[3].clone()],
            });
        }
    }
    for n in [2, 3] {
        for a in &levels {
            let v = PosetView::dn(&s, n, a.clone());
            law_outcome(&mut rep, &format!("DN law n={n} A={a:?}"), check_capture_compatibility_law(&v, &s, &quads));
        }
    }
    rep
}

fn law_outcome(
    rep: &mut SuiteReport,
    what: &str,
    result: Result<crate::posets::LawReport, crate::posets::PosetError>,
) {
    match result {
        Ok(r) => {
            rep.checked += r.checked as u64;
            for c in r.counterexamples {
                rep.fail(format!("{what}: {:?} at level {}", c.instance, c.level));
            }
        }
        Err(e) => rep.fail(format!("{what}: {e}")),
    }
}

/// The worked values of the two sample prefixes.
pub fn regression_suite() -> SuiteReport {
    let mut rep = SuiteReport::new("regression");
    let mut expect = |what: &str, ok: bool| {
        rep.checked += 1;
        if !ok {
            rep.fail(what.to_string());
        }
    };
    let s = k2();
    let g = hausdorff_gap(&s).expect("binary");
    expect("K2 F_1", s.level(1) == [FinSet::from_unsorted([0, 1]), FinSet::from_unsorted([0, 2])]);
    expect("K2 rho(1,2)", s.rho(1, 2) == Ok(2));
    expect("K2 delta(1,2)", s.delta(1, 2) == Ok(DeltaLevel::Level(2)));
    expect("K2 xi_2(2)", s.xi(2, 2) == Ok(1));
    expect("K2 L_2", g.left(2) == Some(&FinSet::from_unsorted([3, 5])));
    expect("K2 R_2", g.right(2) == Some(&FinSet::from_unsorted([2, 4])));
    expect("K2 bracket(1,2)", sq_bracket(&s, 1, 2) == Ok(2));
    expect("K2 H_0(2)", h_ideal_generator(&s, 2, 0) == Ok(FinSet::from_unsorted([0, 1])));
    let s = k3();
    let g = hausdorff_gap(&s).expect("binary");
    expect("K3 rho(2,5)", s.rho(2, 5) == Ok(3));
    expect("K3 bracket(2,5)", sq_bracket(&s, 2, 5) == Ok(3));
    expect("K3 L_5", g.left(5) == Some(&FinSet::from_unsorted([3, 5, 7])));
    expect(
        "K3 L_2 & R_5",
        g.left(2).zip(g.right(5)).map(|(l, r)| l.intersection(r)) == Some(FinSet::singleton(6)),
    );
    rep
}
