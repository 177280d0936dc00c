//! Monomials of the free operad on one binary generator without symmetries.
//!
//! A monomial of arity `n` is a full planar binary tree with `n` leaves whose
//! leaves carry the labels `1..=n` in some order. It is stored as its
//! canonical encoding: the preorder shape bits (internal node = 1, leaf = 0)
//! followed by the label word read left to right. Two monomials are equal iff
//! their encodings are equal, and the derived ordering is the encoding order.
//!
//! Monomials print in the usual parenthesized notation with letters `a..z`
//! for labels `1..=26`: the generator `x` is `ab`, `y = x.(1 2)` is `ba`, and
//! the left comb of arity three is `(ab)c`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default largest arity for exhaustive enumeration.
pub const DEFAULT_ARITY_CAP: usize = 8;

/// Labels print as letters, so no monomial has more leaves than this.
pub const MAX_LABEL: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A planar binary tree whose leaves carry arbitrary labels.
///
/// Unlike [`TreeMonomial`] the labels need not form a permutation; terms are
/// used for the subtrees hanging off a rewrite locus, which keep the labels
/// they had in their host.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Leaf(u8),
    Node(Box<Term>, Box<Term>),
}

impl Term {
    pub fn node(left: Term, right: Term) -> Term {
        Term::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Term::Leaf(_) => 1,
            Term::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Leaf labels from left to right.
    pub fn labels(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.leaves());
        self.push_labels(&mut out);
        out
    }

    fn push_labels(&self, out: &mut Vec<u8>) {
        match self {
            Term::Leaf(a) => out.push(*a),
            Term::Node(l, r) => {
                l.push_labels(out);
                r.push_labels(out);
            }
        }
    }

    pub fn min_label(&self) -> u8 {
        match self {
            Term::Leaf(a) => *a,
            Term::Node(l, r) => l.min_label().min(r.min_label()),
        }
    }

    pub fn shape(&self) -> Shape {
        let mut bits = 0u64;
        let mut len = 0u32;
        self.push_shape(&mut bits, &mut len);
        Shape {
            leaves: self.leaves() as u8,
            bits,
        }
    }

    fn push_shape(&self, bits: &mut u64, len: &mut u32) {
        match self {
            Term::Leaf(_) => {
                *bits <<= 1;
                *len += 1;
            }
            Term::Node(l, r) => {
                *bits = (*bits << 1) | 1;
                *len += 1;
                l.push_shape(bits, len);
                r.push_shape(bits, len);
            }
        }
    }

    pub fn mirror(&self) -> Term {
        match self {
            Term::Leaf(a) => Term::Leaf(*a),
            Term::Node(l, r) => Term::node(r.mirror(), l.mirror()),
        }
    }

    pub fn relabel(&self, f: &impl Fn(u8) -> u8) -> Term {
        match self {
            Term::Leaf(a) => Term::Leaf(f(*a)),
            Term::Node(l, r) => Term::node(l.relabel(f), r.relabel(f)),
        }
    }

    pub fn subtree(&self, path: &[Side]) -> Option<&Term> {
        match (path.split_first(), self) {
            (None, t) => Some(t),
            (Some((Side::Left, rest)), Term::Node(l, _)) => l.subtree(rest),
            (Some((Side::Right, rest)), Term::Node(_, r)) => r.subtree(rest),
            (Some(_), Term::Leaf(_)) => None,
        }
    }

    /// Replaces the subtree at `path` (which must exist).
    pub fn replace_at(&self, path: &[Side], with: Term) -> Term {
        match (path.split_first(), self) {
            (None, _) => with,
            (Some((Side::Left, rest)), Term::Node(l, r)) => {
                Term::node(l.replace_at(rest, with), (**r).clone())
            }
            (Some((Side::Right, rest)), Term::Node(l, r)) => {
                Term::node((**l).clone(), r.replace_at(rest, with))
            }
            (Some(_), Term::Leaf(_)) => panic!("path leaves the tree"),
        }
    }

    /// Replaces the leaf labeled `j` by `slots[j - 1]`.
    pub fn substitute(&self, slots: &[Term]) -> Term {
        match self {
            Term::Leaf(a) => slots[*a as usize - 1].clone(),
            Term::Node(l, r) => Term::node(l.substitute(slots), r.substitute(slots)),
        }
    }

    /// Paths to the internal nodes, in preorder.
    pub fn internal_paths(&self) -> Vec<Vec<Side>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_internal(&mut path, &mut out);
        out
    }

    fn collect_internal(&self, path: &mut Vec<Side>, out: &mut Vec<Vec<Side>>) {
        if let Term::Node(l, r) = self {
            out.push(path.clone());
            path.push(Side::Left);
            l.collect_internal(path, out);
            path.pop();
            path.push(Side::Right);
            r.collect_internal(path, out);
            path.pop();
        }
    }

    fn fmt_wrapped(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(_) => write!(f, "{self}"),
            Term::Node(..) => write!(f, "({self})"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf(a) if (1..=MAX_LABEL as u8).contains(a) => {
                write!(f, "{}", (b'a' + a - 1) as char)
            }
            Term::Leaf(a) => write!(f, "#{a}"),
            Term::Node(l, r) => {
                l.fmt_wrapped(f)?;
                r.fmt_wrapped(f)
            }
        }
    }
}

impl FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Term> {
        let mut p = TermParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let t = p.sequence()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::parse(p.pos, "unexpected character"));
        }
        Ok(t)
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn sequence(&mut self) -> Result<Term> {
        let start = self.pos;
        let mut items = Vec::new();
        loop {
            self.skip_ws();
            match self.src.get(self.pos) {
                Some(c @ b'a'..=b'z') => {
                    items.push(Term::Leaf(c - b'a' + 1));
                    self.pos += 1;
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    self.skip_ws();
                    if self.src.get(self.pos) != Some(&b')') {
                        return Err(Error::parse(self.pos, "expected ')'"));
                    }
                    self.pos += 1;
                    items.push(inner);
                }
                _ => break,
            }
        }
        match items.len() {
            0 => Err(Error::parse(self.pos, "expected a letter or '('")),
            1 => Ok(items.pop().unwrap()),
            2 => {
                let r = items.pop().unwrap();
                let l = items.pop().unwrap();
                Ok(Term::node(l, r))
            }
            _ => Err(Error::parse(
                start,
                "more than two juxtaposed factors; add parentheses",
            )),
        }
    }
}

/// The shape of a full planar binary tree, as preorder bits.
///
/// Bits are stored most significant first, so for a fixed number of leaves
/// numeric order equals lexicographic order of the descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    leaves: u8,
    bits: u64,
}

impl Shape {
    pub fn leaves(&self) -> usize {
        self.leaves as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Length of the preorder descriptor.
    pub fn len(&self) -> usize {
        2 * self.leaves as usize - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All shapes with `n` leaves, in increasing descriptor order.
    pub fn enumerate(n: usize) -> Vec<Shape> {
        assert!((1..=MAX_LABEL).contains(&n), "leaf count out of range");
        let mut table: Vec<Vec<u64>> = vec![Vec::new(), vec![0]];
        for k in 2..=n {
            let mut v = Vec::new();
            for left in 1..k {
                let right = k - left;
                let right_len = 2 * right - 1;
                for &l in &table[left] {
                    for &r in &table[right] {
                        let lead = 1u64 << (2 * k - 2);
                        v.push(lead | (l << right_len) | r);
                    }
                }
            }
            v.sort_unstable();
            table.push(v);
        }
        table[n]
            .iter()
            .map(|&bits| Shape {
                leaves: n as u8,
                bits,
            })
            .collect()
    }

    /// The tree of this shape with leaves labeled `1..=n` left to right.
    pub fn to_term(&self) -> Term {
        let mut pos = self.len();
        let mut next = 1u8;
        let t = self.read(&mut pos, &mut next);
        debug_assert_eq!(pos, 0);
        t
    }

    fn read(&self, pos: &mut usize, next: &mut u8) -> Term {
        *pos -= 1;
        if (self.bits >> *pos) & 1 == 1 {
            let l = self.read(pos, next);
            let r = self.read(pos, next);
            Term::node(l, r)
        } else {
            *next += 1;
            Term::Leaf(*next - 1)
        }
    }
}

/// A permutation of `{1..n}`, stored by its images: `σ(i) = images[i - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        if !is_permutation_word(&images) {
            return Err(Error::arg(format!(
                "{images:?} is not a permutation of 1..{}",
                images.len()
            )));
        }
        Ok(Permutation(images))
    }

    /// The transposition `(i j)` in `S_n`.
    pub fn transposition(n: usize, i: u8, j: u8) -> Result<Self> {
        Self::cycle(n, &[i, j])
    }

    /// The cycle `(c_0 c_1 ... c_k)` in `S_n`.
    pub fn cycle(n: usize, cycle: &[u8]) -> Result<Self> {
        let mut images: Vec<u8> = (1..=n as u8).collect();
        for (k, &c) in cycle.iter().enumerate() {
            let next = cycle[(k + 1) % cycle.len()];
            if c == 0 || c as usize > n || next == 0 || next as usize > n {
                return Err(Error::arg(format!("cycle entry out of range 1..{n}")));
            }
            images[c as usize - 1] = next;
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.0[i as usize - 1]
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation(other.0.iter().map(|&i| self.apply(i)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = k as u8 + 1;
        }
        Permutation(inv)
    }

    pub fn sign(&self) -> i32 {
        let mut inversions = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All of `S_n` in lexicographic order of the image word.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut word: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Permutation(word.clone())];
        while next_word(&mut word) {
            out.push(Permutation(word.clone()));
        }
        out
    }
}

pub(crate) fn is_permutation_word(word: &[u8]) -> bool {
    let n = word.len();
    let mut seen = vec![false; n];
    word.iter().all(|&v| {
        let ok = v >= 1 && v as usize <= n && !seen[v as usize - 1];
        if ok {
            seen[v as usize - 1] = true;
        }
        ok
    })
}

/// Advances a permutation word to its lexicographic successor.
pub fn next_word(word: &mut [u8]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Lexicographic rank of a permutation word of `1..=n`, `n <= 32`.
pub fn rank_word(word: &[u8]) -> usize {
    let n = word.len();
    let mut used = 0u32;
    let mut rank = 0usize;
    for (k, &v) in word.iter().enumerate() {
        let below = (used & ((1u32 << (v - 1)) - 1)).count_ones() as usize;
        rank = rank * (n - k) + (v as usize - 1 - below);
        used |= 1 << (v - 1);
    }
    rank
}

pub fn unrank_word(n: usize, mut rank: usize) -> Vec<u8> {
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let f = factorial(k);
        out.push(pool.remove(rank / f));
        rank %= f;
    }
    out
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn catalan(n: usize) -> usize {
    let mut c = 1usize;
    for k in 0..n {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// A basis monomial of `Mag(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeMonomial {
    shape: Shape,
    labels: Vec<u8>,
}

impl TreeMonomial {
    pub fn from_term(term: &Term) -> Result<Self> {
        let labels = term.labels();
        if labels.len() > MAX_LABEL {
            return Err(Error::arg(format!("arity above {MAX_LABEL}")));
        }
        if !is_permutation_word(&labels) {
            return Err(Error::arg(format!(
                "leaf labels of {term} are not a permutation of 1..{}",
                labels.len()
            )));
        }
        Ok(TreeMonomial {
            shape: term.shape(),
            labels,
        })
    }

    pub fn from_parts(shape: Shape, labels: Vec<u8>) -> Result<Self> {
        if labels.len() != shape.leaves() || !is_permutation_word(&labels) {
            return Err(Error::arg("label word does not match the shape"));
        }
        Ok(TreeMonomial { shape, labels })
    }

    /// The unit of arity one.
    pub fn leaf() -> Self {
        TreeMonomial {
            shape: Shape { leaves: 1, bits: 0 },
            labels: vec![1],
        }
    }

    /// The generator `x = ab`.
    pub fn generator() -> Self {
        "ab".parse().unwrap()
    }

    /// `y = x.(1 2) = ba`.
    pub fn generator_swapped() -> Self {
        "ba".parse().unwrap()
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn to_term(&self) -> Term {
        let t = self.shape.to_term();
        t.relabel(&|pos| self.labels[pos as usize - 1])
    }

    /// The encoding packed into one word: arity, shape bits, then four bits
    /// per label. Order preserving for arities up to 10.
    pub fn packed(&self) -> u64 {
        let n = self.arity();
        assert!(n <= 10, "packed encodings hold at most 10 leaves");
        let mut v = (n as u64) << 59 | self.shape.bits << 40;
        for (k, &l) in self.labels.iter().enumerate() {
            v |= ((l - 1) as u64) << (36 - 4 * k);
        }
        v
    }

    /// Substitutes label `i` by `σ(i)`; the shape is unchanged.
    pub fn act(&self, sigma: &Permutation) -> Result<Self> {
        if sigma.degree() != self.arity() {
            return Err(Error::arg(format!(
                "permutation of degree {} acting on arity {}",
                sigma.degree(),
                self.arity()
            )));
        }
        Ok(TreeMonomial {
            shape: self.shape,
            labels: self.labels.iter().map(|&l| sigma.apply(l)).collect(),
        })
    }

    /// The reverse automorphism: swaps the children of every internal node.
    pub fn mirror(&self) -> Self {
        TreeMonomial::from_term(&self.to_term().mirror()).unwrap()
    }

    /// Operadic composition `self ∘_i other`.
    pub fn graft(&self, i: usize, other: &TreeMonomial) -> Result<Self> {
        let k = self.arity();
        if i == 0 || i > k {
            return Err(Error::arg(format!("graft position {i} outside 1..={k}")));
        }
        let l = other.arity() as u8;
        let i = i as u8;
        let inner = other.to_term().relabel(&|v| v + i - 1);
        let outer = self.to_term();
        let grafted = graft_term(&outer, i, l, &inner);
        TreeMonomial::from_term(&grafted)
    }

    pub fn internal_paths(&self) -> Vec<Vec<Side>> {
        self.to_term().internal_paths()
    }

    /// Swaps the two children of the internal node at `path`.
    pub fn swap_children_at(&self, path: &[Side]) -> Result<Self> {
        let t = self.to_term();
        match t.subtree(path) {
            Some(Term::Node(l, r)) => {
                let swapped = Term::Node(r.clone(), l.clone());
                TreeMonomial::from_term(&t.replace_at(path, swapped))
            }
            _ => Err(Error::arg("path does not reach an internal node")),
        }
    }

    /// One occurrence of a weight-two pattern per internal edge, in preorder
    /// of the parent node, left child first.
    pub fn occurrences(&self) -> Vec<FrameOccurrence> {
        let term = self.to_term();
        let mut out = Vec::new();
        for path in term.internal_paths() {
            let Some(Term::Node(l, r)) = term.subtree(&path) else {
                unreachable!()
            };
            if let Term::Node(a, b) = &**l {
                out.push(FrameOccurrence {
                    host: self.clone(),
                    parent: path.clone(),
                    child: Side::Left,
                    frame: left_comb(),
                    slots: [(**a).clone(), (**b).clone(), (**r).clone()],
                });
            }
            if let Term::Node(b, c) = &**r {
                out.push(FrameOccurrence {
                    host: self.clone(),
                    parent: path.clone(),
                    child: Side::Right,
                    frame: right_comb(),
                    slots: [(**l).clone(), (**b).clone(), (**c).clone()],
                });
            }
        }
        out
    }
}

fn graft_term(outer: &Term, i: u8, l: u8, inner: &Term) -> Term {
    match outer {
        Term::Leaf(v) if *v == i => inner.clone(),
        Term::Leaf(v) if *v > i => Term::Leaf(v + l - 1),
        Term::Leaf(v) => Term::Leaf(*v),
        Term::Node(a, b) => Term::node(graft_term(a, i, l, inner), graft_term(b, i, l, inner)),
    }
}

fn left_comb() -> TreeMonomial {
    "(ab)c".parse().unwrap()
}

fn right_comb() -> TreeMonomial {
    "a(bc)".parse().unwrap()
}

impl fmt::Display for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

impl FromStr for TreeMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TreeMonomial::from_term(&s.parse::<Term>()?)
    }
}

/// The locus of an internal edge inside a host monomial.
///
/// The frame is the arity-three monomial spanned by the edge, with its slots
/// numbered left to right; `slots` are the three maximal subtrees hanging
/// off the edge, with the labels they carry in the host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameOccurrence {
    host: TreeMonomial,
    parent: Vec<Side>,
    child: Side,
    frame: TreeMonomial,
    slots: [Term; 3],
}

impl FrameOccurrence {
    pub fn host(&self) -> &TreeMonomial {
        &self.host
    }

    /// The edge as (path to the parent node, side of the child node).
    pub fn edge(&self) -> (&[Side], Side) {
        (&self.parent, self.child)
    }

    pub fn frame(&self) -> &TreeMonomial {
        &self.frame
    }

    pub fn slots(&self) -> &[Term; 3] {
        &self.slots
    }

    /// Puts `pattern(slot_1, slot_2, slot_3)` in place of the frame.
    pub fn reassemble(&self, pattern: &TreeMonomial) -> Result<TreeMonomial> {
        if pattern.arity() != 3 {
            return Err(Error::arg("reassembly needs an arity-3 pattern"));
        }
        let local = pattern.to_term().substitute(&self.slots);
        TreeMonomial::from_term(&self.host.to_term().replace_at(&self.parent, local))
    }
}

/// All `n!·Catalan(n-1)` monomials of arity `n`, in encoding order.
pub fn enumerate_monomials(n: usize, cap: usize) -> Result<Vec<TreeMonomial>> {
    if n == 0 {
        return Err(Error::arg("arity must be at least 1"));
    }
    if n > cap {
        return Err(Error::ResourceLimit {
            what: format!("arity {n}"),
            cap,
        });
    }
    let shapes = Shape::enumerate(n);
    let mut out = Vec::with_capacity(shapes.len() * factorial(n));
    for shape in shapes {
        let mut word: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(TreeMonomial {
                shape,
                labels: word.clone(),
            });
            if !next_word(&mut word) {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> TreeMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_factorial_times_catalan() {
        assert_eq!(
            enumerate_monomials(1, 8).unwrap(),
            vec![TreeMonomial::leaf()]
        );
        assert_eq!(enumerate_monomials(3, 8).unwrap().len(), 12);
        assert_eq!(enumerate_monomials(5, 8).unwrap().len(), 1680);
        for n in 1..=6 {
            let all = enumerate_monomials(n, 8).unwrap();
            assert_eq!(all.len(), factorial(n) * catalan(n - 1));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_monomials(9, 8).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { cap: 8, .. }));
    }

    #[test]
    fn display_round_trips() {
        for s in ["a", "ab", "(ab)c", "a(cb)", "((ab)c)d", "(ab)(dc)"] {
            assert_eq!(m(s).to_string(), s);
        }
        assert!("abc".parse::<TreeMonomial>().is_err());
        assert!("(ab)b".parse::<TreeMonomial>().is_err());
    }

    #[test]
    fn hexagon_edges() {
        let t12 = Permutation::transposition(3, 1, 2).unwrap();
        let t23 = Permutation::transposition(3, 2, 3).unwrap();
        let t13 = Permutation::transposition(3, 1, 3).unwrap();
        // black, red and blue edges of the right hexagon
        for (a, b) in [("(ab)c", "(ba)c"), ("(ac)b", "(bc)a"), ("(ca)b", "(cb)a")] {
            assert_eq!(m(a).act(&t12).unwrap(), m(b));
        }
        for (a, b) in [("(ab)c", "(ac)b"), ("(ca)b", "(ba)c"), ("(cb)a", "(bc)a")] {
            assert_eq!(m(a).act(&t23).unwrap(), m(b));
        }
        for (a, b) in [("(ab)c", "(cb)a"), ("(ac)b", "(ca)b"), ("(bc)a", "(ba)c")] {
            assert_eq!(m(a).act(&t13).unwrap(), m(b));
        }
        // left hexagon: black (1 2), red (2 3)
        for (a, b) in [("a(bc)", "b(ac)"), ("b(ca)", "a(cb)"), ("c(ba)", "c(ab)")] {
            assert_eq!(m(a).act(&t12).unwrap(), m(b));
        }
        for (a, b) in [("a(bc)", "a(cb)"), ("b(ac)", "c(ab)"), ("b(ca)", "c(ba)")] {
            assert_eq!(m(a).act(&t23).unwrap(), m(b));
        }
        let cyc = Permutation::cycle(3, &[1, 2, 3]).unwrap();
        let green = [m("(ab)c"), m("(ca)b"), m("(bc)a")];
        assert!(green.contains(&m("(ab)c").act(&cyc).unwrap()));
        let id = Permutation::identity(3);
        assert_eq!(m("(ab)c").act(&id).unwrap(), m("(ab)c"));
        assert!(m("(ab)c").act(&Permutation::identity(2)).is_err());
    }

    #[test]
    fn two_orbits_exchanged_by_mirror() {
        let all = enumerate_monomials(3, 8).unwrap();
        let s3 = Permutation::all(3);
        let orbit = |x: &TreeMonomial| {
            let mut o: Vec<_> = s3.iter().map(|s| x.act(s).unwrap()).collect();
            o.sort();
            o.dedup();
            o
        };
        let left = orbit(&m("a(bc)"));
        let right = orbit(&m("(ab)c"));
        assert_eq!(left.len(), 6);
        assert_eq!(right.len(), 6);
        assert!(left.iter().all(|x| !right.contains(x)));
        assert_eq!(left.len() + right.len(), all.len());
        let mut mirrored: Vec<_> = left.iter().map(|x| x.mirror()).collect();
        mirrored.sort();
        assert_eq!(mirrored, right);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(TreeMonomial::leaf().mirror(), TreeMonomial::leaf());
        assert_eq!(m("(ab)c").mirror(), m("c(ba)"));
        assert_eq!(
            TreeMonomial::generator().mirror(),
            TreeMonomial::generator_swapped()
        );
    }

    #[test]
    fn graft_examples() {
        let x = TreeMonomial::generator();
        assert_eq!(x.graft(1, &x).unwrap(), m("(ab)c"));
        assert_eq!(x.graft(2, &x).unwrap(), m("a(bc)"));
        let y = TreeMonomial::generator_swapped();
        assert_eq!(y.graft(2, &y).unwrap(), m("(cb)a"));
        let q = m("(ac)(bd)");
        assert_eq!(q.graft(3, &TreeMonomial::leaf()).unwrap(), q);
        assert!(x.graft(3, &x).is_err());
        assert!(x.graft(0, &x).is_err());
    }

    #[test]
    fn occurrence_counts() {
        let occ = m("(ab)c").occurrences();
        assert_eq!(occ.len(), 1);
        assert_eq!(occ[0].frame(), &m("(ab)c"));
        assert_eq!(m("((ab)c)d").occurrences().len(), 2);
        assert!(m("ab").occurrences().is_empty());
        for mono in enumerate_monomials(6, 8).unwrap().iter().step_by(97) {
            assert_eq!(mono.occurrences().len(), 4);
        }
    }

    #[test]
    fn reassembly_with_other_pattern() {
        let host = m("(a(bd))c");
        let occ = &host.occurrences()[0];
        assert_eq!(occ.frame(), &m("(ab)c"));
        assert_eq!(occ.reassemble(&m("(ba)c")).unwrap(), m("((bd)a)c"));
        assert_eq!(occ.reassemble(&m("a(bc)")).unwrap(), m("a((bd)c)"));
    }

    #[test]
    fn ranks_round_trip() {
        for n in 1..=6 {
            for (r, p) in Permutation::all(n).iter().enumerate() {
                assert_eq!(rank_word(p.images()), r);
                assert_eq!(unrank_word(n, r), p.images());
            }
        }
    }

    #[test]
    fn shapes_round_trip() {
        for n in 1..=7 {
            let shapes = Shape::enumerate(n);
            assert_eq!(shapes.len(), catalan(n - 1));
            for s in shapes {
                assert_eq!(s.to_term().shape(), s);
            }
        }
    }
}
