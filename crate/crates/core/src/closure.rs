//! Dimensions of set-operad quotients of `Mag`.
//!
//! At arity `n` every monomial gets an index `shape_index * n! + rank(word)`.
//! Rewrites are local: an internal edge spans a copy of `(ab)c` or `a(bc)`,
//! and replacing it by any related arity-3 monomial moves whole subtrees
//! around. On the position-labeled tree of a shape such a move is a fixed
//! permutation of label positions, so each (shape, edge, pattern) triple is
//! precomputed once and applied to all `n!` label words.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::presentations::{mag3_basis, mag3_index, Congruence};
use crate::trees::{factorial, rank_word, Shape, TreeMonomial, DEFAULT_ARITY_CAP};

/// Arity-indexed dimensions of an operad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    /// Canonical key of the presenting congruence, or a description of the
    /// relation space for linear presentations.
    pub operad_key: String,
    pub symmetrize: bool,
    /// `entries[n - 1]` is the dimension in arity `n`.
    pub entries: Vec<u64>,
    /// `graded[n - 1][w]` is the dimension of bracket weight `w` in arity `n`.
    pub graded: Option<Vec<Vec<u64>>>,
}

impl DimensionTable {
    pub fn max_arity(&self) -> usize {
        self.entries.len()
    }

    pub fn dim(&self, n: usize) -> Option<u64> {
        n.checked_sub(1).and_then(|i| self.entries.get(i).copied())
    }

    pub fn graded_dim(&self, n: usize) -> Option<&[u64]> {
        let g = self.graded.as_ref()?;
        n.checked_sub(1).and_then(|i| g.get(i)).map(Vec::as_slice)
    }

    /// Keeps arities `1..=n`.
    pub fn truncated(&self, n: usize) -> DimensionTable {
        let mut t = self.clone();
        t.entries.truncate(n);
        if let Some(g) = t.graded.as_mut() {
            g.truncate(n);
        }
        t
    }
}

/// Limits for the closure computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureConfig {
    pub arity_cap: usize,
    /// Rough upper bound on working memory, in bytes.
    pub memory_budget: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            arity_cap: DEFAULT_ARITY_CAP,
            memory_budget: 2 << 30,
        }
    }
}

/// The partition of `Mag(n)` induced by a congruence.
#[derive(Clone, Debug)]
pub struct ArityClosure {
    n: usize,
    shapes: Vec<Shape>,
    /// Smallest index in the class of each index.
    reps: Vec<u32>,
}

impl ArityClosure {
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.reps
            .iter()
            .enumerate()
            .filter(|&(i, &r)| r as usize == i)
            .count()
    }

    pub fn index_of(&self, m: &TreeMonomial) -> Option<usize> {
        if m.arity() != self.n {
            return None;
        }
        let s = self.shapes.binary_search(&m.shape()).ok()?;
        Some(s * factorial(self.n) + rank_word(m.labels()))
    }

    pub fn monomial(&self, index: usize) -> TreeMonomial {
        let f = factorial(self.n);
        let word = crate::trees::unrank_word(self.n, index % f);
        TreeMonomial::from_parts(self.shapes[index / f], word).unwrap()
    }

    /// Index of the class representative, which is the smallest index in it.
    pub fn representative(&self, index: usize) -> usize {
        self.reps[index] as usize
    }

    pub fn same_class(&self, a: &TreeMonomial, b: &TreeMonomial) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.reps[i] == self.reps[j],
            _ => false,
        }
    }

    /// Class sizes, ordered by representative.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes: HashMap<u32, usize> = HashMap::new();
        for &r in &self.reps {
            *sizes.entry(r).or_default() += 1;
        }
        let mut v: Vec<_> = sizes.into_iter().collect();
        v.sort_unstable();
        v.into_iter().map(|(_, s)| s).collect()
    }
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut i: u32) -> u32 {
        let p = &mut self.0;
        while p[i as usize] != i {
            let g = p[p[i as usize] as usize];
            p[i as usize] = g;
            i = g;
        }
        i
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.0[rb as usize] = ra;
        } else if rb < ra {
            self.0[ra as usize] = rb;
        }
    }

    fn into_reps(mut self) -> Vec<u32> {
        for i in 0..self.0.len() as u32 {
            let r = self.find(i);
            self.0[i as usize] = r;
        }
        self.0
    }
}

/// A precomputed rewrite: the target shape and, for each target position,
/// the source position whose label lands there (1-based).
struct Move {
    target: u32,
    positions: Vec<u8>,
}

fn moves_for_shape(
    shape: &Shape,
    shapes: &[Shape],
    related: &[Vec<usize>; 12],
    symmetrize: bool,
) -> Vec<Move> {
    let host = TreeMonomial::from_term(&shape.to_term()).unwrap();
    let mut out = Vec::new();
    let mut push = |m: TreeMonomial| {
        let target = shapes.binary_search(&m.shape()).unwrap() as u32;
        out.push(Move {
            target,
            positions: m.labels().to_vec(),
        });
    };
    for occ in host.occurrences() {
        let frame = mag3_index(occ.frame()).unwrap();
        for &other in &related[frame] {
            push(occ.reassemble(&mag3_basis()[other]).unwrap());
        }
    }
    if symmetrize {
        for path in host.internal_paths() {
            push(host.swap_children_at(&path).unwrap());
        }
    }
    out
}

fn check_limits(n: usize, config: &ClosureConfig) -> Result<usize> {
    if n == 0 {
        return Err(Error::arg("arity must be at least 1"));
    }
    if n > config.arity_cap {
        return Err(Error::ResourceLimit {
            what: format!("closure arity {n}"),
            cap: config.arity_cap,
        });
    }
    let total = crate::trees::catalan(n - 1)
        .checked_mul(factorial(n))
        .filter(|&t| t < u32::MAX as usize)
        .ok_or_else(|| Error::ResourceLimit {
            what: format!("closure arity {n}"),
            cap: config.arity_cap,
        })?;
    // parents, plus at least one shape's worth of edges
    let needed = total * 4 + factorial(n) * 8;
    if needed > config.memory_budget {
        return Err(Error::MemoryBudget {
            needed,
            budget: config.memory_budget,
        });
    }
    Ok(total)
}

/// Computes the partition of `Mag(n)` generated by `c`.
pub fn close_arity(
    c: &Congruence,
    n: usize,
    symmetrize: bool,
    config: &ClosureConfig,
) -> Result<ArityClosure> {
    let total = check_limits(n, config)?;
    let shapes = Shape::enumerate(n);
    let mut related: [Vec<usize>; 12] = Default::default();
    for (i, r) in related.iter_mut().enumerate() {
        *r = (0..12)
            .filter(|&j| j != i && c.related_indices(i, j))
            .collect();
    }
    let moves: Vec<Vec<Move>> = shapes
        .par_iter()
        .map(|s| moves_for_shape(s, &shapes, &related, symmetrize))
        .collect();
    let f = factorial(n);
    let words = all_words(n);
    let mut uf = UnionFind::new(total);
    // edges are (u32, u32) pairs; a batch may use what the parents leave
    let edge_budget = (config.memory_budget - total * 4) / 8;
    let mut start = 0;
    while start < shapes.len() {
        let mut end = start;
        let mut edges_in_batch = 0;
        while end < shapes.len() && edges_in_batch + f * moves[end].len() <= edge_budget {
            edges_in_batch += f * moves[end].len();
            end += 1;
        }
        if end == start {
            return Err(Error::MemoryBudget {
                needed: total * 4 + f * moves[start].len() * 8,
                budget: config.memory_budget,
            });
        }
        let edges: Vec<Vec<(u32, u32)>> = (start..end)
            .into_par_iter()
            .map(|s| {
                let mut e = Vec::with_capacity(f * moves[s].len());
                let mut target = vec![0u8; n];
                for (r, word) in words.chunks_exact(n).enumerate() {
                    let src = (s * f + r) as u32;
                    for mv in &moves[s] {
                        for (t, &p) in target.iter_mut().zip(&mv.positions) {
                            *t = word[p as usize - 1];
                        }
                        let dst = mv.target as usize * f + rank_word(&target);
                        e.push((src, dst as u32));
                    }
                }
                e
            })
            .collect();
        for e in edges {
            for (a, b) in e {
                uf.union(a, b);
            }
        }
        start = end;
    }
    Ok(ArityClosure {
        n,
        shapes,
        reps: uf.into_reps(),
    })
}

/// All permutation words of `1..=n`, concatenated in lexicographic order.
fn all_words(n: usize) -> Vec<u8> {
    let mut word: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::with_capacity(factorial(n) * n);
    loop {
        out.extend_from_slice(&word);
        if !crate::trees::next_word(&mut word) {
            break;
        }
    }
    out
}

/// Dimensions in arities `1..=max_arity` with the default limits.
pub fn dims(c: &Congruence, max_arity: usize, symmetrize: bool) -> Result<DimensionTable> {
    dims_with(c, max_arity, symmetrize, &ClosureConfig::default())
}

pub fn dims_with(
    c: &Congruence,
    max_arity: usize,
    symmetrize: bool,
    config: &ClosureConfig,
) -> Result<DimensionTable> {
    if max_arity == 0 {
        return Err(Error::arg("max arity must be at least 1"));
    }
    for n in 1..=max_arity {
        check_limits(n, config)?;
    }
    let mut entries = Vec::with_capacity(max_arity);
    for n in 1..=max_arity {
        entries.push(close_arity(c, n, symmetrize, config)?.class_count() as u64);
    }
    Ok(DimensionTable {
        operad_key: c.key().to_string(),
        symmetrize,
        entries,
        graded: None,
    })
}

/// The full class of `m`.
pub fn class_of(c: &Congruence, m: &TreeMonomial, symmetrize: bool) -> Result<Vec<TreeMonomial>> {
    let closure = close_arity(c, m.arity(), symmetrize, &ClosureConfig::default())?;
    let rep = closure.representative(closure.index_of(m).unwrap());
    Ok((0..closure.len())
        .filter(|&i| closure.representative(i) == rep)
        .map(|i| closure.monomial(i))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{find_entry, standard_catalog, symmetric_entries};

    fn entry_dims(name: &str, n: usize) -> Vec<u64> {
        let mut cat = standard_catalog();
        cat.extend(symmetric_entries());
        let e = find_entry(&cat, name).unwrap();
        dims(&e.congruence, n, e.symmetrize).unwrap().entries
    }

    #[test]
    fn free_counts() {
        assert_eq!(entry_dims("Mag", 5), vec![1, 2, 12, 120, 1680]);
        assert_eq!(entry_dims("ComMag", 5), vec![1, 1, 3, 15, 105]);
    }

    #[test]
    fn known_small_dims() {
        assert_eq!(entry_dims("P6", 6), vec![1, 2, 6, 24, 120, 720]);
        assert_eq!(entry_dims("P1", 5), vec![1, 2, 9, 64, 625]);
        assert_eq!(entry_dims("P2", 5), vec![1, 2, 9, 60, 525]);
        assert_eq!(entry_dims("P3;3", 6), vec![1, 2, 6, 20, 60, 182]);
        assert_eq!(entry_dims("Com", 5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn class_examples() {
        let cat = standard_catalog();
        let p10 = find_entry(&cat, "P10").unwrap();
        let mut class = class_of(&p10.congruence, &"(ab)c".parse().unwrap(), false).unwrap();
        class.sort();
        let mut expected: Vec<TreeMonomial> =
            vec!["(ab)c".parse().unwrap(), "c(ab)".parse().unwrap()];
        expected.sort();
        assert_eq!(class, expected);
        let leaf = TreeMonomial::leaf();
        assert_eq!(class_of(&p10.congruence, &leaf, false).unwrap(), vec![leaf]);
        let p6 = find_entry(&cat, "P6").unwrap();
        let cl = close_arity(&p6.congruence, 4, false, &ClosureConfig::default()).unwrap();
        assert_eq!(cl.class_count(), 24);
        assert_eq!(cl.class_sizes().iter().sum::<usize>(), 120);
    }

    #[test]
    fn limits() {
        let c = Congruence::trivial();
        let cfg = ClosureConfig {
            arity_cap: 4,
            ..Default::default()
        };
        assert!(matches!(
            dims_with(&c, 5, false, &cfg),
            Err(Error::ResourceLimit { .. })
        ));
        let cfg = ClosureConfig {
            arity_cap: 8,
            memory_budget: 1000,
        };
        assert!(matches!(
            dims_with(&c, 6, false, &cfg),
            Err(Error::MemoryBudget { .. })
        ));
        // room for the parents but not for one shape's edges
        let p6 = find_entry(&standard_catalog(), "P6")
            .unwrap()
            .congruence
            .clone();
        let cfg = ClosureConfig {
            arity_cap: 8,
            memory_budget: 1680 * 4 + 1000,
        };
        assert!(matches!(
            close_arity(&p6, 5, false, &cfg),
            Err(Error::MemoryBudget { .. })
        ));
    }
}
