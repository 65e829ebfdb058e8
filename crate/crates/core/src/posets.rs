//! The finite-condition posets over pregaps and schemes: validity,
//! compatibility, dense targets, greedy filters, antichain search and
//! Δ-system refinement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::capture::{
    captured, find_captured_tuples, root_tail_tail_witness, CaptureError, DeltaSystemWitness, SearchOptions,
};
use crate::finset::{FinSet, Ordinal};
use crate::gaps::{cross_meet, Pregap, Provenance, SeparatingFunction};
use crate::scheme::{Level, Scheme};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("index {0} is outside the poset's universe")]
    OutOfUniverse(Ordinal),
    #[error("{kind} conditions are {expected}")]
    WrongShape { kind: PosetKind, expected: &'static str },
    #[error("the compatibility law needs a levelwise-difference pregap")]
    NotDifferencePregap,
    #[error("filter has no value at index {0}")]
    IncompleteFilter(Ordinal),
    #[error("filter disagrees with itself at index {0}")]
    InconsistentFilter(Ordinal),
    #[error(transparent)]
    Capture(#[from] CaptureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosetKind {
    /// Partial maps `p` with `D_α ∩ E_β ⊆ max(p(α), p(β))`.
    Sep,
    /// Sets whose left and right unions are disjoint.
    Chi0,
    /// Sets whose distinct pairs meet across sides.
    Chi1,
    /// Sets with no `n`-subset captured at a level of `A`.
    Dn,
    /// The biorthogonal poset; same clause as `Chi1`.
    Biorth,
}

impl fmt::Display for PosetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PosetKind::Sep => "SEP",
            PosetKind::Chi0 => "CHI0",
            PosetKind::Chi1 => "CHI1",
            PosetKind::Dn => "DN",
            PosetKind::Biorth => "BIORTH",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for PosetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "SEP" => Ok(PosetKind::Sep),
            "CHI0" => Ok(PosetKind::Chi0),
            "CHI1" => Ok(PosetKind::Chi1),
            "DN" => Ok(PosetKind::Dn),
            "BIORTH" => Ok(PosetKind::Biorth),
            other => Err(format!("unknown poset kind {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
enum Backing<'a> {
    Gap(&'a Pregap),
    Scheme {
        scheme: &'a Scheme,
        n: usize,
        levels: BTreeSet<Level>,
    },
}

/// A poset of one kind over its backing data.
#[derive(Debug, Clone)]
pub struct PosetView<'a> {
    kind: PosetKind,
    backing: Backing<'a>,
    universe: FinSet,
}

/// A finite partial map (SEP) or a finite set of indices (other kinds).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(untagged)]
pub enum Condition {
    Map(BTreeMap<Ordinal, usize>),
    Set(FinSet),
}

impl Condition {
    pub fn empty_map() -> Self {
        Condition::Map(BTreeMap::new())
    }

    pub fn empty_set() -> Self {
        Condition::Set(FinSet::empty())
    }

    /// Indices mentioned by the condition.
    pub fn support(&self) -> FinSet {
        match self {
            Condition::Map(m) => m.keys().copied().collect(),
            Condition::Set(s) => s.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Condition::Map(m) => m.len(),
            Condition::Set(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Map(m) => {
                write!(f, "{{")?;
                for (i, (k, v)) in m.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}:{v}")?;
                }
                write!(f, "}}")
            }
            Condition::Set(s) => write!(f, "{s}"),
        }
    }
}

impl<'a> PosetView<'a> {
    pub fn over_pregap(kind: PosetKind, g: &'a Pregap) -> Result<Self, PosetError> {
        if kind == PosetKind::Dn {
            return Err(PosetError::WrongShape {
                kind,
                expected: "built over a scheme",
            });
        }
        Ok(PosetView {
            kind,
            backing: Backing::Gap(g),
            universe: g.index().clone(),
        })
    }

    pub fn sep(g: &'a Pregap) -> Self {
        Self::over_pregap(PosetKind::Sep, g).expect("pregap kind")
    }

    pub fn chi0(g: &'a Pregap) -> Self {
        Self::over_pregap(PosetKind::Chi0, g).expect("pregap kind")
    }

    pub fn chi1(g: &'a Pregap) -> Self {
        Self::over_pregap(PosetKind::Chi1, g).expect("pregap kind")
    }

    pub fn biorth(g: &'a Pregap) -> Self {
        Self::over_pregap(PosetKind::Biorth, g).expect("pregap kind")
    }

    /// `𝔻_n(F, A)` over the whole domain of `s`.
    pub fn dn(s: &'a Scheme, n: usize, levels: BTreeSet<Level>) -> Self {
        PosetView {
            kind: PosetKind::Dn,
            backing: Backing::Scheme { scheme: s, n, levels },
            universe: s.domain(),
        }
    }

    pub fn kind(&self) -> PosetKind {
        self.kind
    }

    pub fn universe(&self) -> &FinSet {
        &self.universe
    }

    pub fn empty_condition(&self) -> Condition {
        match self.kind {
            PosetKind::Sep => Condition::empty_map(),
            _ => Condition::empty_set(),
        }
    }

    fn pregap(&self) -> Option<&'a Pregap> {
        match self.backing {
            Backing::Gap(g) => Some(g),
            Backing::Scheme { .. } => None,
        }
    }

    fn shape_ok(&self, c: &Condition) -> Result<(), PosetError> {
        match (self.kind, c) {
            (PosetKind::Sep, Condition::Map(_)) => Ok(()),
            (PosetKind::Sep, Condition::Set(_)) => Err(PosetError::WrongShape {
                kind: self.kind,
                expected: "partial maps",
            }),
            (_, Condition::Set(_)) => Ok(()),
            (_, Condition::Map(_)) => Err(PosetError::WrongShape {
                kind: self.kind,
                expected: "finite sets",
            }),
        }
    }

    fn positions(&self, support: &FinSet) -> Result<Vec<usize>, PosetError> {
        support
            .iter()
            .map(|a| self.universe.position(a).ok_or(PosetError::OutOfUniverse(a)))
            .collect()
    }
}

/// Exact evaluation of the kind's defining clause.
pub fn is_condition(v: &PosetView, c: &Condition) -> Result<bool, PosetError> {
    v.shape_ok(c)?;
    let pos = v.positions(&c.support())?;
    Ok(match (&v.backing, c) {
        (Backing::Gap(g), Condition::Map(m)) => {
            let values: Vec<usize> = m.values().copied().collect();
            pos.iter().enumerate().all(|(i, &pa)| {
                pos.iter().enumerate().all(|(j, &pb)| {
                    let bound = values[i].max(values[j]);
                    g.at(pa).0.intersection(g.at(pb).1).last().is_none_or(|x| x < bound)
                })
            })
        }
        (Backing::Gap(g), Condition::Set(_)) => match v.kind {
            PosetKind::Chi0 => {
                let l: FinSet = pos.iter().flat_map(|&i| g.at(i).0.as_slice().to_vec()).collect();
                let r: FinSet = pos.iter().flat_map(|&i| g.at(i).1.as_slice().to_vec()).collect();
                l.is_disjoint(&r)
            }
            _ => (0..pos.len()).all(|i| (i + 1..pos.len()).all(|j| cross_meet(g, pos[i], pos[j]))),
        },
        (Backing::Scheme { scheme, n, levels }, Condition::Set(p)) => {
            let found = find_captured_tuples(
                scheme,
                p,
                *n,
                Some(levels),
                SearchOptions {
                    cap: u64::MAX,
                    seed: 0,
                },
            )?;
            found.certificates.is_empty()
        }
        (Backing::Scheme { .. }, Condition::Map(_)) => unreachable!("shape checked"),
    })
}

fn union(p: &Condition, q: &Condition) -> Option<Condition> {
    match (p, q) {
        (Condition::Map(a), Condition::Map(b)) => {
            let mut out = a.clone();
            for (k, v) in b {
                if *out.entry(*k).or_insert(*v) != *v {
                    return None;
                }
            }
            Some(Condition::Map(out))
        }
        (Condition::Set(a), Condition::Set(b)) => Some(Condition::Set(a.union(b))),
        _ => None,
    }
}

/// Common extension exists: maps agree where both are defined and the union
/// satisfies the clause.
pub fn compatible(v: &PosetView, p: &Condition, q: &Condition) -> Result<bool, PosetError> {
    v.shape_ok(p)?;
    v.shape_ok(q)?;
    match union(p, q) {
        Some(u) => is_condition(v, &u),
        None => Ok(false),
    }
}

/// `ℳ_β = {p : β ∈ dom(p)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DenseTarget {
    pub beta: Ordinal,
}

impl DenseTarget {
    pub fn contains(&self, c: &Condition) -> bool {
        match c {
            Condition::Map(m) => m.contains_key(&self.beta),
            Condition::Set(s) => s.contains(self.beta),
        }
    }
}

pub fn dense_meet_targets(_v: &PosetView, betas: &FinSet) -> Vec<DenseTarget> {
    betas.iter().map(|beta| DenseTarget { beta }).collect()
}

/// Decreasing chain `seed ≥ q_1 ≥ …` meeting the targets in order, or the
/// first target no extension could meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FilterOutcome {
    Filter { conditions: Vec<Condition> },
    Failed { target: Ordinal, reached: Vec<Condition> },
}

/// Initial value bound for SEP extension search; doubled on failure.
const SEP_VALUE_START: usize = 8;

/// Meets each target by the smallest extension of the current condition. For
/// SEP that is the least value making the extension a condition; any value
/// above every element of the pregap works, so SEP never fails.
pub fn greedy_filter(v: &PosetView, targets: &[DenseTarget], seed: &Condition) -> Result<FilterOutcome, PosetError> {
    if !is_condition(v, seed)? {
        return Ok(FilterOutcome::Failed {
            target: targets.first().map_or(0, |t| t.beta),
            reached: Vec::new(),
        });
    }
    let mut chain = vec![seed.clone()];
    for t in targets {
        let current = chain.last().expect("seeded").clone();
        if t.contains(&current) {
            continue;
        }
        if v.universe.position(t.beta).is_none() {
            return Err(PosetError::OutOfUniverse(t.beta));
        }
        let next = match &current {
            Condition::Map(m) => {
                let ceiling = v
                    .pregap()
                    .map_or(0, |g| g.rows().flat_map(|(_, l, r)| l.last().into_iter().chain(r.last())).max().unwrap_or(0))
                    + 1;
                let mut cap = SEP_VALUE_START;
                let mut found = None;
                let mut from = 0;
                while found.is_none() {
                    for value in from..cap {
                        let mut ext = m.clone();
                        ext.insert(t.beta, value);
                        let ext = Condition::Map(ext);
                        if is_condition(v, &ext)? {
                            found = Some(ext);
                            break;
                        }
                    }
                    if cap > ceiling {
                        break;
                    }
                    from = cap;
                    cap *= 2;
                }
                found
            }
            Condition::Set(s) => {
                let ext = Condition::Set(s.union(&FinSet::singleton(t.beta)));
                is_condition(v, &ext)?.then_some(ext)
            }
        };
        match next {
            Some(c) => chain.push(c),
            None => {
                return Ok(FilterOutcome::Failed {
                    target: t.beta,
                    reached: chain,
                })
            }
        }
    }
    Ok(FilterOutcome::Filter { conditions: chain })
}

/// `s(D_α) = s(E_α) =` the filter's value at `α`, for every index.
pub fn extract_separating(v: &PosetView, filter: &[Condition]) -> Result<SeparatingFunction, PosetError> {
    let mut values: BTreeMap<Ordinal, usize> = BTreeMap::new();
    for c in filter {
        let Condition::Map(m) = c else {
            return Err(PosetError::WrongShape {
                kind: v.kind,
                expected: "partial maps",
            });
        };
        for (&k, &val) in m {
            if *values.entry(k).or_insert(val) != val {
                return Err(PosetError::InconsistentFilter(k));
            }
        }
    }
    if let Some(missing) = v.universe.iter().find(|a| !values.contains_key(a)) {
        return Err(PosetError::IncompleteFilter(missing));
    }
    Ok(SeparatingFunction::symmetric(values))
}

/// One input to the capture compatibility law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "poset", rename_all = "snake_case")]
pub enum LawInstance {
    /// Two SEP conditions over a levelwise-difference pregap.
    Sep { p: Condition, q: Condition },
    /// Four DN conditions `a, b, c, d` with increasing tails; the law is
    /// about `a ∪ d` when `{a ∪ b, c ∪ d}` is captured.
    Dn { quad: [FinSet; 4] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCounterexample {
    pub instance: LawInstance,
    pub level: Level,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    /// Instances meeting every hypothesis.
    pub checked: usize,
    /// Instances skipped because a hypothesis failed.
    pub skipped: usize,
    pub counterexamples: Vec<LawCounterexample>,
}

impl LawReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Asserts the union law on every instance whose hypotheses hold.
///
/// SEP: `p`, `q` conditions of equal size with order-isomorphic values,
/// `dom(p), dom(q)` a root-tail-tail Δ-system with root `R`,
/// `max(R) + 1 < min(dom \ R)` on both sides, `max(dom p) + 1 ∉ dom q` and
/// vice versa, and `{Z_p, Z_q}` captured at some `l > k` where
/// `k = max(im p) + 1` and `Z_p = {X(α), X(α+1) : α ∈ dom(p)}`. Then `p ∪ q`
/// must be a condition. Equal conditions are checked without hypotheses.
///
/// DN: `a, b, c, d` conditions of equal size forming a root-tail-tail
/// Δ-system in that order with `{a ∪ b, c ∪ d}` captured. Then `a ∪ d` must
/// be a condition.
pub fn check_capture_compatibility_law(
    v: &PosetView,
    s: &Scheme,
    instances: &[LawInstance],
) -> Result<LawReport, PosetError> {
    let mut report = LawReport::default();
    for inst in instances {
        let verdict = match inst {
            LawInstance::Sep { p, q } => sep_law(v, s, p, q)?,
            LawInstance::Dn { quad } => dn_law(v, s, quad)?,
        };
        match verdict {
            None => report.skipped += 1,
            Some((level, holds)) => {
                report.checked += 1;
                if !holds {
                    report.counterexamples.push(LawCounterexample {
                        instance: inst.clone(),
                        level,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `Some((l, union is a condition))` when the hypotheses hold.
fn sep_law(v: &PosetView, s: &Scheme, p: &Condition, q: &Condition) -> Result<Option<(Level, bool)>, PosetError> {
    let Some(g) = v.pregap().filter(|_| v.kind == PosetKind::Sep) else {
        return Err(PosetError::WrongShape {
            kind: v.kind,
            expected: "SEP over a pregap",
        });
    };
    let Provenance::LevelwiseDifference { support } = g.provenance() else {
        return Err(PosetError::NotDifferencePregap);
    };
    let (Condition::Map(pm), Condition::Map(qm)) = (p, q) else {
        return Err(PosetError::WrongShape {
            kind: v.kind,
            expected: "partial maps",
        });
    };
    if !is_condition(v, p)? || !is_condition(v, q)? {
        return Ok(None);
    }
    if p == q {
        return Ok(Some((0, true)));
    }
    if pm.len() != qm.len() || pm.values().ne(qm.values()) {
        return Ok(None);
    }
    let (dp, dq) = (p.support(), q.support());
    let Some(w) = root_tail_tail_witness(&[dp.clone(), dq.clone()]).or_else(|| root_tail_tail_witness(&[dq.clone(), dp.clone()]))
    else {
        return Ok(None);
    };
    let root = &w.root;
    for d in [&dp, &dq] {
        if let (Some(top), Some(low)) = (root.last(), d.difference(root).first()) {
            if top + 1 >= low {
                return Ok(None);
            }
        }
    }
    let (mp, mq) = (dp.last().unwrap_or(0), dq.last().unwrap_or(0));
    if dq.contains(mp + 1) || dp.contains(mq + 1) {
        return Ok(None);
    }
    let z = |d: &FinSet| -> FinSet {
        d.iter()
            .flat_map(|a| [support.at(a), support.at(a + 1)])
            .flatten()
            .collect()
    };
    let family = if w.members[0] == dp { [z(&dp), z(&dq)] } else { [z(&dq), z(&dp)] };
    let k = pm.values().max().map_or(0, |m| m + 1);
    let Some(level) = (k + 1..=s.height()).find(|&l| captured(s, &family, l)) else {
        return Ok(None);
    };
    let joined = union(p, q).expect("maps agree on the root");
    Ok(Some((level, is_condition(v, &joined)?)))
}

fn dn_law(v: &PosetView, s: &Scheme, quad: &[FinSet; 4]) -> Result<Option<(Level, bool)>, PosetError> {
    if v.kind != PosetKind::Dn {
        return Err(PosetError::WrongShape {
            kind: v.kind,
            expected: "DN over a scheme",
        });
    }
    for c in quad {
        if !is_condition(v, &Condition::Set(c.clone()))? {
            return Ok(None);
        }
    }
    let size = quad[0].len();
    if size == 0 || quad.iter().any(|c| c.len() != size) || root_tail_tail_witness(quad).is_none() {
        return Ok(None);
    }
    let family = [quad[0].union(&quad[1]), quad[2].union(&quad[3])];
    let Some(level) = (1..=s.height()).find(|&l| captured(s, &family, l)) else {
        return Ok(None);
    };
    let joined = Condition::Set(quad[0].union(&quad[3]));
    Ok(Some((level, is_condition(v, &joined)?)))
}

/// Result of an antichain search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Antichain {
    pub conditions: Vec<Condition>,
    /// False when the node budget ran out; `conditions` is then best-found.
    pub exact: bool,
    pub budget_exceeded: bool,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct AntichainOptions {
    /// Largest condition size considered.
    pub max_size: usize,
    /// Branch-and-bound node budget.
    pub budget: u64,
    /// SEP values range over `0..sep_values`.
    pub sep_values: usize,
}

impl Default for AntichainOptions {
    fn default() -> Self {
        AntichainOptions {
            max_size: 2,
            budget: 1_000_000,
            sep_values: 4,
        }
    }
}

/// Nonempty conditions over `universe` with at most `max_size` indices.
pub fn small_conditions(v: &PosetView, universe: &FinSet, opts: AntichainOptions) -> Result<Vec<Condition>, PosetError> {
    let mut out = Vec::new();
    let els = universe.as_slice();
    for size in 1..=opts.max_size.min(els.len()) {
        for combo in itertools::Itertools::combinations(els.iter().copied(), size) {
            let support = FinSet::from_unsorted(combo);
            if v.kind == PosetKind::Sep {
                let slots = support.len() as u32;
                let total = opts.sep_values.pow(slots);
                for code in 0..total {
                    let mut m = BTreeMap::new();
                    let mut rest = code;
                    for a in support.iter() {
                        m.insert(a, rest % opts.sep_values);
                        rest /= opts.sep_values;
                    }
                    let c = Condition::Map(m);
                    if is_condition(v, &c)? {
                        out.push(c);
                    }
                }
            } else {
                let c = Condition::Set(support);
                if is_condition(v, &c)? {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// Largest family of pairwise incompatible nonempty conditions of bounded
/// size, by branch and bound on the incompatibility graph.
pub fn exhaustive_antichain(v: &PosetView, universe: &FinSet, opts: AntichainOptions) -> Result<Antichain, PosetError> {
    let conds = small_conditions(v, universe, opts)?;
    let n = conds.len();
    let mut incompatible = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = !compatible(v, &conds[i], &conds[j])?;
            incompatible[i][j] = x;
            incompatible[j][i] = x;
        }
    }
    let mut search = CliqueSearch {
        adj: &incompatible,
        best: Vec::new(),
        nodes: 0,
        budget: opts.budget,
        exceeded: false,
    };
    search.grow(&mut Vec::new(), (0..n).collect());
    Ok(Antichain {
        conditions: search.best.iter().map(|&i| conds[i].clone()).collect(),
        exact: !search.exceeded,
        budget_exceeded: search.exceeded,
        nodes: search.nodes,
    })
}

struct CliqueSearch<'a> {
    adj: &'a [Vec<bool>],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
    exceeded: bool,
}

impl CliqueSearch<'_> {
    fn grow(&mut self, current: &mut Vec<usize>, candidates: Vec<usize>) {
        if self.nodes >= self.budget {
            self.exceeded = true;
            return;
        }
        self.nodes += 1;
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        for (i, &c) in candidates.iter().enumerate() {
            if current.len() + candidates.len() - i <= self.best.len() {
                return;
            }
            let next: Vec<usize> = candidates[i + 1..].iter().copied().filter(|&d| self.adj[c][d]).collect();
            current.push(c);
            self.grow(current, next);
            current.pop();
            if self.exceeded {
                return;
            }
        }
    }
}

/// Largest root-tail-tail Δ-subfamily of equal-size sets. For a fixed root
/// `R` the eligible sets have `R` as a proper initial segment, and a
/// subfamily works iff its tails are pairwise block-ordered, so earliest-end
/// interval scheduling is exact. Ties go to the smallest size, then the
/// lexicographically smallest root.
pub fn delta_system_refine(family: &[FinSet]) -> Option<DeltaSystemWitness> {
    let distinct: BTreeSet<&FinSet> = family.iter().collect();
    let mut by_size: BTreeMap<usize, Vec<&FinSet>> = BTreeMap::new();
    for f in distinct {
        by_size.entry(f.len()).or_default().push(f);
    }
    let mut best: Option<DeltaSystemWitness> = None;
    for group in by_size.values() {
        let mut roots: BTreeSet<FinSet> = BTreeSet::from([FinSet::empty()]);
        for (i, a) in group.iter().enumerate() {
            for b in &group[i + 1..] {
                roots.insert(a.intersection(b));
            }
        }
        for root in roots {
            let mut tails: Vec<(&FinSet, FinSet)> = group
                .iter()
                .filter(|f| f.len() > root.len() && root.is_initial_segment_of(f))
                .map(|f| (*f, f.difference(&root)))
                .collect();
            tails.sort_by_key(|(_, t)| (t.last(), t.first()));
            let mut chosen: Vec<FinSet> = Vec::new();
            let mut end: Option<Ordinal> = None;
            for (f, t) in tails {
                if end.is_none_or(|e| e < t.first().expect("proper tail")) {
                    end = t.last();
                    chosen.push(f.clone());
                }
            }
            if chosen.len() >= 2 && best.as_ref().is_none_or(|b| chosen.len() > b.members.len()) {
                best = Some(DeltaSystemWitness {
                    root: root.clone(),
                    members: chosen,
                });
            }
        }
    }
    best
}

/// Every root-tail-tail family of `count` subsets of `universe`, each of the
/// given size, listed with increasing tails.
pub fn root_tail_tail_families(universe: &FinSet, size: usize, count: usize) -> Vec<Vec<FinSet>> {
    let mut out = Vec::new();
    let els = universe.as_slice();
    for r in 0..size {
        for root in itertools::Itertools::combinations(els.iter().copied(), r) {
            let root = FinSet::from_unsorted(root);
            let above: Vec<Ordinal> = els.iter().copied().filter(|&x| root.last().is_none_or(|m| x > m)).collect();
            let mut stack = Vec::new();
            tails_from(&above, 0, size - r, count, &root, &mut stack, &mut out);
        }
    }
    out
}

fn tails_from(
    els: &[Ordinal],
    from: usize,
    tail: usize,
    count: usize,
    root: &FinSet,
    stack: &mut Vec<FinSet>,
    out: &mut Vec<Vec<FinSet>>,
) {
    if stack.len() == count {
        out.push(stack.clone());
        return;
    }
    if from >= els.len() {
        return;
    }
    for t in itertools::Itertools::combinations(els[from..].iter().copied(), tail) {
        let last = *t.last().expect("non-empty tail");
        let next = els.partition_point(|&x| x <= last);
        stack.push(root.union(&FinSet::from_unsorted(t)));
        tails_from(els, next, tail, count, root, stack, out);
        stack.pop();
    }
}
