//! Finite prefixes of type sequences `⟨m_k, n_{k+1}, r_{k+1}⟩`.
//!
//! A prefix of length `K` fixes member sizes `m_0..=m_K`, fan-outs
//! `n_1..=n_K` and root sizes `r_1..=r_K`. Goodness is a property of infinite
//! sequences, so only occurrence counts are reported here.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("empty type prefix")]
    Empty,
    #[error("condition (a) violated: m_0 must be 1, got {m0}")]
    ViolatesA { m0: usize },
    #[error("condition (b) violated at level {level}: n_{level} = {n} < 2")]
    ViolatesB { level: usize, n: usize },
    #[error("condition (c) violated at level {level}: r_{level} = {r} is not below m_{prev} = {m}", prev = .level - 1)]
    ViolatesC { level: usize, r: usize, m: usize },
    #[error("condition (d) violated at level {level}: m_{level} = {given}, expected {expected}")]
    ViolatesD {
        level: usize,
        given: usize,
        expected: usize,
    },
    #[error("member size overflows at level {level}")]
    Overflow { level: usize },
    #[error("partition cells do not cover exactly the levels 0..={max_level}")]
    CellMismatch { max_level: usize },
}

/// One input triple `(m_k, n_{k+1}, r_{k+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub m: usize,
    pub n: usize,
    pub r: usize,
}

impl From<(usize, usize, usize)> for Triple {
    fn from((m, n, r): (usize, usize, usize)) -> Self {
        Triple { m, n, r }
    }
}

/// A validated type prefix. `m` is stored redundantly alongside the triples
/// and rechecked on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<[usize; 3]>", into = "Vec<[usize; 3]>")]
pub struct TypeSequence {
    triples: Vec<Triple>,
    m: Vec<usize>,
}

/// Validates a non-empty list of triples and recomputes every `m_k`.
pub fn make_type_prefix<T: Into<Triple> + Copy>(triples: &[T]) -> Result<TypeSequence, TypeError> {
    let triples: Vec<Triple> = triples.iter().map(|&t| t.into()).collect();
    if triples.is_empty() {
        return Err(TypeError::Empty);
    }
    if triples[0].m != 1 {
        return Err(TypeError::ViolatesA { m0: triples[0].m });
    }
    let mut m = Vec::with_capacity(triples.len() + 1);
    m.push(1);
    for (k, t) in triples.iter().enumerate() {
        let level = k + 1;
        if t.m != m[k] {
            // the stated m_k disagrees with the one forced by the level below
            return Err(TypeError::ViolatesD {
                level: k,
                given: t.m,
                expected: m[k],
            });
        }
        if t.n < 2 {
            return Err(TypeError::ViolatesB { level, n: t.n });
        }
        if t.r >= t.m {
            return Err(TypeError::ViolatesC {
                level,
                r: t.r,
                m: t.m,
            });
        }
        let next = (t.m - t.r)
            .checked_mul(t.n)
            .and_then(|x| x.checked_add(t.r))
            .ok_or(TypeError::Overflow { level })?;
        m.push(next);
    }
    Ok(TypeSequence { triples, m })
}

impl TypeSequence {
    /// The length-zero prefix: a single level with `m_0 = 1`.
    pub fn trivial() -> Self {
        TypeSequence {
            triples: Vec::new(),
            m: vec![1],
        }
    }

    /// Number of splitting levels `K`.
    pub fn height(&self) -> usize {
        self.triples.len()
    }

    /// `m_k` for `k ≤ K`.
    pub fn m(&self, k: usize) -> usize {
        self.m[k]
    }

    /// `n_k` for `1 ≤ k ≤ K`.
    pub fn n(&self, k: usize) -> usize {
        self.triples[k - 1].n
    }

    /// `r_k` for `1 ≤ k ≤ K`.
    pub fn r(&self, k: usize) -> usize {
        self.triples[k - 1].r
    }

    /// Size of the top member, i.e. of the scheme's domain.
    pub fn domain_size(&self) -> usize {
        self.m[self.height()]
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn sizes(&self) -> &[usize] {
        &self.m
    }

    /// True when every fan-out is 2.
    pub fn is_binary(&self) -> bool {
        self.triples.iter().all(|t| t.n == 2)
    }

    /// Adds one more level on top.
    pub fn extend(&self, n: usize, r: usize) -> Result<TypeSequence, TypeError> {
        let mut triples = self.triples.clone();
        triples.push(Triple {
            m: self.domain_size(),
            n,
            r,
        });
        make_type_prefix(&triples)
    }
}

impl TryFrom<Vec<[usize; 3]>> for TypeSequence {
    type Error = TypeError;

    fn try_from(v: Vec<[usize; 3]>) -> Result<Self, Self::Error> {
        let triples: Vec<Triple> = v.iter().map(|t| Triple { m: t[0], n: t[1], r: t[2] }).collect();
        make_type_prefix(&triples)
    }
}

impl From<TypeSequence> for Vec<[usize; 3]> {
    fn from(t: TypeSequence) -> Self {
        t.triples.iter().map(|t| [t.m, t.n, t.r]).collect()
    }
}

/// `r ↦ |{1 ≤ k ≤ K : r_k = r}|`.
pub fn goodness_report(t: &TypeSequence) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for tr in t.triples() {
        *counts.entry(tr.r).or_insert(0) += 1;
    }
    counts
}

/// A finite truncation of a partition of the levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelPartition {
    pub cells: Vec<BTreeSet<usize>>,
}

impl LevelPartition {
    pub fn new(cells: Vec<BTreeSet<usize>>) -> Self {
        LevelPartition { cells }
    }

    pub fn single(max_level: usize) -> Self {
        LevelPartition {
            cells: vec![(0..=max_level).collect()],
        }
    }

    /// Cells `{k odd}` and `{k even}`.
    pub fn parity(max_level: usize) -> Self {
        LevelPartition {
            cells: vec![
                (0..=max_level).filter(|k| k % 2 == 1).collect(),
                (0..=max_level).filter(|k| k % 2 == 0).collect(),
            ],
        }
    }

    fn covers_exactly(&self, max_level: usize) -> bool {
        let mut seen = BTreeSet::new();
        for cell in &self.cells {
            for &k in cell {
                if k > max_level || !seen.insert(k) {
                    return false;
                }
            }
        }
        seen.len() == max_level + 1
    }
}

/// `(cell index, r) ↦ |{k ∈ cell, k ≥ 1 : r_k = r}|`.
pub fn partition_compatible_report(
    p: &LevelPartition,
    t: &TypeSequence,
) -> Result<BTreeMap<(usize, usize), usize>, TypeError> {
    let max_level = t.height();
    if !p.covers_exactly(max_level) {
        return Err(TypeError::CellMismatch { max_level });
    }
    let mut counts = BTreeMap::new();
    for (ci, cell) in p.cells.iter().enumerate() {
        for &k in cell.iter().filter(|&&k| k >= 1) {
            *counts.entry((ci, t.r(k))).or_insert(0) += 1;
        }
    }
    Ok(counts)
}

/// Bounds for [`random_prefix`].
#[derive(Debug, Clone, Copy)]
pub struct PrefixBounds {
    pub height: usize,
    pub max_n: usize,
    pub max_r: usize,
    pub max_domain: usize,
}

/// A random valid prefix of exactly `bounds.height` levels, or `None` when
/// the domain bound cannot be respected at some level.
pub fn random_prefix<R: Rng + ?Sized>(rng: &mut R, bounds: PrefixBounds) -> Option<TypeSequence> {
    let max_n = bounds.max_n.max(2);
    let mut triples = Vec::with_capacity(bounds.height);
    let mut m = 1usize;
    for _ in 0..bounds.height {
        // collect admissible (n, r) pairs, then pick one
        let mut options = Vec::new();
        for n in 2..=max_n {
            for r in 0..m.min(bounds.max_r.saturating_add(1)) {
                if r + (m - r) * n <= bounds.max_domain {
                    options.push((n, r));
                }
            }
        }
        if options.is_empty() {
            return None;
        }
        let (n, r) = options[rng.random_range(0..options.len())];
        triples.push(Triple { m, n, r });
        m = r + (m - r) * n;
    }
    make_type_prefix(&triples).ok()
}

/// Every valid prefix with exactly `height` levels, fan-outs in
/// `2..=max_n` and top size at most `max_domain`, in lexicographic order.
pub fn enumerate_prefixes(height: usize, max_n: usize, max_domain: usize) -> Vec<TypeSequence> {
    fn rec(
        acc: &mut Vec<Triple>,
        m: usize,
        left: usize,
        max_n: usize,
        max_domain: usize,
        out: &mut Vec<TypeSequence>,
    ) {
        if left == 0 {
            out.push(make_type_prefix(acc).expect("enumerated prefixes are valid"));
            return;
        }
        for n in 2..=max_n {
            for r in 0..m {
                let next = r + (m - r) * n;
                if next > max_domain {
                    continue;
                }
                acc.push(Triple { m, n, r });
                rec(acc, next, left - 1, max_n, max_domain, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    if height == 0 {
        out.push(TypeSequence::trivial());
        return out;
    }
    rec(&mut Vec::new(), 1, height, max_n, max_domain, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn worked_prefixes() {
        let t = make_type_prefix(&[(1, 2, 0)]).unwrap();
        assert_eq!(t.m(1), 2);
        let t = make_type_prefix(&[(1, 2, 0), (2, 2, 1)]).unwrap();
        assert_eq!(t.m(2), 3);
        let t = make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap();
        assert_eq!(t.m(3), 6);
        assert_eq!(t.height(), 3);
    }

    #[test]
    fn each_condition_is_reported() {
        assert_eq!(make_type_prefix::<(usize, usize, usize)>(&[]), Err(TypeError::Empty));
        assert_eq!(
            make_type_prefix(&[(2, 2, 0)]),
            Err(TypeError::ViolatesA { m0: 2 })
        );
        assert_eq!(
            make_type_prefix(&[(1, 2, 0), (2, 1, 1)]),
            Err(TypeError::ViolatesB { level: 2, n: 1 })
        );
        assert_eq!(
            make_type_prefix(&[(1, 2, 0), (2, 2, 2)]),
            Err(TypeError::ViolatesC { level: 2, r: 2, m: 2 })
        );
        assert_eq!(
            make_type_prefix(&[(1, 2, 0), (3, 2, 0)]),
            Err(TypeError::ViolatesD {
                level: 1,
                given: 3,
                expected: 2
            })
        );
    }

    #[test]
    fn goodness_counts() {
        let t = make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap();
        assert_eq!(goodness_report(&t), BTreeMap::from([(0, 2), (1, 1)]));
        let t = make_type_prefix(&[(1, 2, 0)]).unwrap();
        let g = goodness_report(&t);
        assert_eq!(g, BTreeMap::from([(0, 1)]));
        assert_eq!(g.get(&5), None);
        assert!(goodness_report(&TypeSequence::trivial()).is_empty());
    }

    #[test]
    fn partition_reports() {
        let t = make_type_prefix(&[(1, 2, 0), (2, 2, 1), (3, 2, 0)]).unwrap();
        // odd levels 1, 3 carry r = 0, 0; the even level 2 carries r = 1
        let rep = partition_compatible_report(&LevelPartition::parity(3), &t).unwrap();
        assert_eq!(rep, BTreeMap::from([((0, 0), 2), ((1, 1), 1)]));

        let single = partition_compatible_report(&LevelPartition::single(3), &t).unwrap();
        let flat: BTreeMap<usize, usize> = single.into_iter().map(|((_, r), c)| (r, c)).collect();
        assert_eq!(flat, goodness_report(&t));

        let gap = LevelPartition::new(vec![BTreeSet::from([0, 1]), BTreeSet::from([3])]);
        assert_eq!(
            partition_compatible_report(&gap, &t),
            Err(TypeError::CellMismatch { max_level: 3 })
        );
        let overlap = LevelPartition::new(vec![BTreeSet::from([0, 1, 2]), BTreeSet::from([2, 3])]);
        assert!(partition_compatible_report(&overlap, &t).is_err());
    }

    #[test]
    fn json_round_trip_and_idempotence() {
        let t = make_type_prefix(&[(1, 3, 0), (3, 2, 2)]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, "[[1,3,0],[3,2,2]]");
        let back: TypeSequence = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert_eq!(make_type_prefix(t.triples()).unwrap(), t);
        assert!(serde_json::from_str::<TypeSequence>("[[1,3,0],[4,2,2]]").is_err());
    }

    #[test]
    fn random_prefixes_are_valid_and_increasing() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let b = PrefixBounds {
                height: 6,
                max_n: 4,
                max_r: 5,
                max_domain: 10_000,
            };
            if let Some(t) = random_prefix(&mut rng, b) {
                assert_eq!(make_type_prefix(t.triples()).unwrap(), t);
                assert!(t.sizes().windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_prefixes(1, 3, 200).len(), 2);
        assert_eq!(enumerate_prefixes(2, 3, 200).len(), 10);
        assert_eq!(enumerate_prefixes(3, 3, 200).len(), 106);
    }
}
