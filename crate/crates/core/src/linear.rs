//! Exact linear algebra for quadratic presentations.
//!
//! Relations are handled after polarization: with `a.b = ab + ba` and
//! `[a,b] = ab - ba`, the free operad on one binary generator becomes the
//! free operad on a symmetric generator `.` and an antisymmetric one `[,]`.
//! Its basis in arity `n` is the set of binary trees whose internal nodes
//! carry an operation and whose children are ordered by smallest leaf
//! ([`PolTree`]). The number of bracket nodes is the bracket weight.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::closure::DimensionTable;
use crate::error::{Error, Result};
use crate::presentations::{
    mag3_basis, mag3_index, mirror_table, s3_table, Congruence, Presentation,
};
use crate::trees::{Side, Term};

pub const DEFAULT_LINEAR_CAP: usize = 6;

/// A binary operation of the polarized presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// `a.b = ab + ba`
    Sym,
    /// `[a,b] = ab - ba`
    Skew,
}

/// Which generators a relation space lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSpace {
    /// One generator without symmetry, equivalently `.` and `[,]`.
    Regular,
    /// One commutative generator.
    Symmetric,
    /// One anticommutative generator.
    Antisymmetric,
}

impl GeneratorSpace {
    fn ops(self) -> &'static [Op] {
        match self {
            GeneratorSpace::Regular => &[Op::Sym, Op::Skew],
            GeneratorSpace::Symmetric => &[Op::Sym],
            GeneratorSpace::Antisymmetric => &[Op::Skew],
        }
    }

    fn base_op(self) -> Op {
        match self {
            GeneratorSpace::Antisymmetric => Op::Skew,
            _ => Op::Sym,
        }
    }
}

/// A polarized monomial in normal form: at every node the left subtree holds
/// the smaller leaf label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolTree {
    Leaf(u8),
    Node(Op, Box<PolTree>, Box<PolTree>),
}

impl PolTree {
    pub fn min_label(&self) -> u8 {
        match self {
            PolTree::Leaf(a) => *a,
            PolTree::Node(_, l, _) => l.min_label(),
        }
    }

    pub fn leaves(&self) -> usize {
        match self {
            PolTree::Leaf(_) => 1,
            PolTree::Node(_, l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Number of bracket nodes.
    pub fn weight(&self) -> u32 {
        match self {
            PolTree::Leaf(_) => 0,
            PolTree::Node(op, l, r) => (*op == Op::Skew) as u32 + l.weight() + r.weight(),
        }
    }

    /// Builds `op(l, r)` in normal form, with the sign picked up on the way.
    pub fn node(op: Op, l: PolTree, r: PolTree) -> (i32, PolTree) {
        if l.min_label() < r.min_label() {
            (1, PolTree::Node(op, Box::new(l), Box::new(r)))
        } else {
            let sign = if op == Op::Skew { -1 } else { 1 };
            (sign, PolTree::Node(op, Box::new(r), Box::new(l)))
        }
    }

    /// Renames leaves and renormalizes.
    pub fn relabel(&self, f: &impl Fn(u8) -> u8) -> (i32, PolTree) {
        match self {
            PolTree::Leaf(a) => (1, PolTree::Leaf(f(*a))),
            PolTree::Node(op, l, r) => {
                let (sl, l) = l.relabel(f);
                let (sr, r) = r.relabel(f);
                let (s, t) = PolTree::node(*op, l, r);
                (s * sl * sr, t)
            }
        }
    }

    /// Replaces leaf `i` by `slots[i - 1]`; slots must have disjoint labels.
    pub fn substitute(&self, slots: &[PolTree]) -> (i32, PolTree) {
        match self {
            PolTree::Leaf(a) => (1, slots[*a as usize - 1].clone()),
            PolTree::Node(op, l, r) => {
                let (sl, l) = l.substitute(slots);
                let (sr, r) = r.substitute(slots);
                let (s, t) = PolTree::node(*op, l, r);
                (s * sl * sr, t)
            }
        }
    }

    /// Replaces the subtree at `path` by one with the same leaf labels.
    fn replace_at(&self, path: &[Side], with: PolTree) -> PolTree {
        match (path.split_first(), self) {
            (None, _) => with,
            (Some((Side::Left, rest)), PolTree::Node(op, l, r)) => {
                PolTree::Node(*op, Box::new(l.replace_at(rest, with)), r.clone())
            }
            (Some((Side::Right, rest)), PolTree::Node(op, l, r)) => {
                PolTree::Node(*op, l.clone(), Box::new(r.replace_at(rest, with)))
            }
            _ => panic!("path leaves the tree"),
        }
    }

    /// Expansion into planar monomials.
    pub fn to_planar(&self) -> BTreeMap<Term, BigInt> {
        match self {
            PolTree::Leaf(a) => BTreeMap::from([(Term::Leaf(*a), BigInt::one())]),
            PolTree::Node(op, l, r) => {
                let (pl, pr) = (l.to_planar(), r.to_planar());
                let mut out = BTreeMap::new();
                for (tl, cl) in &pl {
                    for (tr, cr) in &pr {
                        let c = cl * cr;
                        add_to(&mut out, Term::node(tl.clone(), tr.clone()), c.clone());
                        let c2 = if *op == Op::Skew { -c } else { c };
                        add_to(&mut out, Term::node(tr.clone(), tl.clone()), c2);
                    }
                }
                out
            }
        }
    }

    /// All normal-form trees on the leaves `1..=n` using the given
    /// operations, sorted.
    pub fn enumerate(n: usize, generators: GeneratorSpace) -> Vec<PolTree> {
        assert!((1..=16).contains(&n));
        let mut memo: HashMap<u32, Vec<PolTree>> = HashMap::new();
        let mut v = trees_on(((1u32 << n) - 1) << 1, generators.ops(), &mut memo);
        v.sort();
        v
    }

    /// Paths to nodes `op(op(x, y), z)` with `op` the base operation and
    /// `z` holding the largest smallest-label of the three, with `[x, y, z]`.
    fn canonical_frames(&self, base: Op) -> Vec<(Vec<Side>, [PolTree; 3])> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_frames(base, &mut path, &mut out);
        out
    }

    fn collect_frames(
        &self,
        base: Op,
        path: &mut Vec<Side>,
        out: &mut Vec<(Vec<Side>, [PolTree; 3])>,
    ) {
        let PolTree::Node(op, l, r) = self else {
            return;
        };
        if *op == base {
            if let PolTree::Node(op2, x, y) = &**l {
                if *op2 == base && r.min_label() > y.min_label() {
                    out.push((path.clone(), [(**x).clone(), (**y).clone(), (**r).clone()]));
                }
            }
        }
        path.push(Side::Left);
        l.collect_frames(base, path, out);
        path.pop();
        path.push(Side::Right);
        r.collect_frames(base, path, out);
        path.pop();
    }
}

fn trees_on(mask: u32, ops: &[Op], memo: &mut HashMap<u32, Vec<PolTree>>) -> Vec<PolTree> {
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let out = if mask.count_ones() == 1 {
        vec![PolTree::Leaf(mask.trailing_zeros() as u8)]
    } else {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut out = Vec::new();
        // submasks of `rest` joined with the lowest leaf form the left part
        let mut sub = rest;
        loop {
            let left = sub | low;
            let right = mask ^ left;
            if right != 0 {
                let lt = trees_on(left, ops, memo);
                let rt = trees_on(right, ops, memo);
                for &op in ops {
                    for a in &lt {
                        for b in &rt {
                            out.push(PolTree::Node(op, Box::new(a.clone()), Box::new(b.clone())));
                        }
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        out
    };
    memo.insert(mask, out.clone());
    out
}

fn add_to<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    let e = map.entry(key).or_insert_with(BigInt::zero);
    *e += c;
}

impl fmt::Display for PolTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolTree::Leaf(a) => write!(f, "{}", (b'a' + a - 1) as char),
            PolTree::Node(Op::Skew, l, r) => write!(f, "[{l},{r}]"),
            PolTree::Node(Op::Sym, l, r) => {
                let wrap = |t: &PolTree| matches!(t, PolTree::Node(Op::Sym, ..));
                if wrap(l) {
                    write!(f, "({l})")?
                } else {
                    write!(f, "{l}")?
                }
                f.write_str(".")?;
                if wrap(r) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
        }
    }
}

/// The polarized arity-3 monomials for a generator space, sorted.
pub fn polarized_basis3(generators: GeneratorSpace) -> &'static [PolTree] {
    use std::sync::OnceLock;
    static REG: OnceLock<Vec<PolTree>> = OnceLock::new();
    static SYM: OnceLock<Vec<PolTree>> = OnceLock::new();
    static SKEW: OnceLock<Vec<PolTree>> = OnceLock::new();
    let cell = match generators {
        GeneratorSpace::Regular => &REG,
        GeneratorSpace::Symmetric => &SYM,
        GeneratorSpace::Antisymmetric => &SKEW,
    };
    cell.get_or_init(|| PolTree::enumerate(3, generators))
}

/// A term of a relation as typed by a user: letters combined by planar
/// juxtaposition, `.` and `[,]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolarizedTerm {
    Letter(u8),
    Planar(Box<PolarizedTerm>, Box<PolarizedTerm>),
    Sym(Box<PolarizedTerm>, Box<PolarizedTerm>),
    Skew(Box<PolarizedTerm>, Box<PolarizedTerm>),
}

impl PolarizedTerm {
    pub fn planar(l: PolarizedTerm, r: PolarizedTerm) -> Self {
        PolarizedTerm::Planar(Box::new(l), Box::new(r))
    }

    pub fn sym(l: PolarizedTerm, r: PolarizedTerm) -> Self {
        PolarizedTerm::Sym(Box::new(l), Box::new(r))
    }

    pub fn skew(l: PolarizedTerm, r: PolarizedTerm) -> Self {
        PolarizedTerm::Skew(Box::new(l), Box::new(r))
    }

    fn leaves(&self, out: &mut Vec<u8>) {
        match self {
            PolarizedTerm::Letter(a) => out.push(*a),
            PolarizedTerm::Planar(l, r) | PolarizedTerm::Sym(l, r) | PolarizedTerm::Skew(l, r) => {
                l.leaves(out);
                r.leaves(out);
            }
        }
    }

    fn expand(&self) -> BTreeMap<Term, BigInt> {
        let (l, r, sign) = match self {
            PolarizedTerm::Letter(a) => return BTreeMap::from([(Term::Leaf(*a), BigInt::one())]),
            PolarizedTerm::Planar(l, r) => (l, r, 0),
            PolarizedTerm::Sym(l, r) => (l, r, 1),
            PolarizedTerm::Skew(l, r) => (l, r, -1),
        };
        let (pl, pr) = (l.expand(), r.expand());
        let mut out = BTreeMap::new();
        for (tl, cl) in &pl {
            for (tr, cr) in &pr {
                let c = cl * cr;
                add_to(&mut out, Term::node(tl.clone(), tr.clone()), c.clone());
                if sign != 0 {
                    add_to(&mut out, Term::node(tr.clone(), tl.clone()), c * sign);
                }
            }
        }
        out
    }
}

impl From<&PolTree> for PolarizedTerm {
    fn from(t: &PolTree) -> Self {
        match t {
            PolTree::Leaf(a) => PolarizedTerm::Letter(*a),
            PolTree::Node(Op::Sym, l, r) => PolarizedTerm::sym((&**l).into(), (&**r).into()),
            PolTree::Node(Op::Skew, l, r) => PolarizedTerm::skew((&**l).into(), (&**r).into()),
        }
    }
}

/// A rational combination of arity-3 terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedExpression {
    terms: Vec<(BigRational, PolarizedTerm)>,
}

impl PolarizedExpression {
    pub fn new(terms: Vec<(BigRational, PolarizedTerm)>) -> Self {
        PolarizedExpression { terms }
    }

    pub fn single(term: PolarizedTerm) -> Self {
        PolarizedExpression::new(vec![(BigRational::one(), term)])
    }

    pub fn terms(&self) -> &[(BigRational, PolarizedTerm)] {
        &self.terms
    }
}

/// Coordinates over the twelve `Mag(3)` monomials.
pub fn expand_polarized(e: &PolarizedExpression) -> Result<Vec<BigRational>> {
    let mut v = vec![BigRational::zero(); 12];
    for (c, t) in &e.terms {
        let mut leaves = Vec::new();
        t.leaves(&mut leaves);
        leaves.sort_unstable();
        if leaves != [1, 2, 3] {
            return Err(Error::arg(
                "every term must use each of a, b, c exactly once",
            ));
        }
        for (term, k) in t.expand() {
            let i = mag3_index(&crate::trees::TreeMonomial::from_term(&term)?).unwrap();
            v[i] += c * BigRational::from_integer(k);
        }
    }
    Ok(v)
}

/// Polarized coordinates of a planar monomial, from `pq = (p.q + [p,q]) / 2`.
pub fn planar_to_polarized(t: &Term) -> BTreeMap<PolTree, BigRational> {
    match t {
        Term::Leaf(a) => BTreeMap::from([(PolTree::Leaf(*a), BigRational::one())]),
        Term::Node(l, r) => {
            let (pl, pr) = (planar_to_polarized(l), planar_to_polarized(r));
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let mut out: BTreeMap<PolTree, BigRational> = BTreeMap::new();
            for (tl, cl) in &pl {
                for (tr, cr) in &pr {
                    for op in [Op::Sym, Op::Skew] {
                        let (s, t) = PolTree::node(op, tl.clone(), tr.clone());
                        let c = cl * cr * &half * BigInt::from(s);
                        *out.entry(t).or_insert_with(BigRational::zero) += c;
                    }
                }
            }
            out.retain(|_, c| !c.is_zero());
            out
        }
    }
}

/// Planar coordinates to coordinates over [`polarized_basis3`]`(Regular)`.
pub fn to_polarized_coords(v: &[BigRational]) -> Vec<BigRational> {
    let basis = polarized_basis3(GeneratorSpace::Regular);
    let mut out = vec![BigRational::zero(); 12];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (t, k) in planar_to_polarized(&mag3_basis()[i].to_term()) {
            let j = basis.binary_search(&t).unwrap();
            out[j] += c * k;
        }
    }
    out
}

/// Coordinates over [`polarized_basis3`]`(Regular)` to planar coordinates.
pub fn from_polarized_coords(v: &[BigRational]) -> Vec<BigRational> {
    let basis = polarized_basis3(GeneratorSpace::Regular);
    let mut out = vec![BigRational::zero(); 12];
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (t, k) in basis[i].to_planar() {
            let j = mag3_index(&crate::trees::TreeMonomial::from_term(&t).unwrap()).unwrap();
            out[j] += c * BigRational::from_integer(k);
        }
    }
    out
}

/// Reduced row echelon form; zero rows are dropped.
pub(crate) fn rref(mut rows: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// A subspace of the span of the twelve `Mag(3)` monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRelationSpace {
    generators: GeneratorSpace,
    /// Planar coordinates, reduced row echelon form.
    basis: Vec<Vec<BigRational>>,
}

fn act_planar(img: &[usize; 12], v: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); 12];
    for (i, c) in v.iter().enumerate() {
        out[img[i]] = c.clone();
    }
    out
}

impl LinearRelationSpace {
    /// The `S_3`-saturated span of `vectors` (planar coordinates).
    pub fn from_vectors(vectors: &[Vec<BigRational>]) -> Result<Self> {
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != 12 {
                return Err(Error::arg("relation vectors must have 12 coordinates"));
            }
            for (_, img) in s3_table() {
                rows.push(act_planar(img, v));
            }
        }
        Ok(LinearRelationSpace {
            generators: GeneratorSpace::Regular,
            basis: rref(rows),
        })
    }

    pub fn from_congruence(c: &Congruence) -> Self {
        let rows = c
            .related_pairs()
            .into_iter()
            .map(|(i, j)| {
                let mut v = vec![BigRational::zero(); 12];
                v[i] = BigRational::one();
                v[j] = -BigRational::one();
                v
            })
            .collect();
        LinearRelationSpace {
            generators: GeneratorSpace::Regular,
            basis: rref(rows),
        }
    }

    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        Self::from_vectors(&p.vectors())
    }

    pub fn zero() -> Self {
        LinearRelationSpace {
            generators: GeneratorSpace::Regular,
            basis: Vec::new(),
        }
    }

    /// The image of this space in the operad with a single commutative
    /// (or anticommutative) generator, obtained by killing the other one.
    pub fn restrict_generators(&self, generators: GeneratorSpace) -> Self {
        let keep = |t: &PolTree| match generators {
            GeneratorSpace::Regular => true,
            GeneratorSpace::Symmetric => t.weight() == 0,
            GeneratorSpace::Antisymmetric => t.weight() == 2,
        };
        let basis = polarized_basis3(GeneratorSpace::Regular);
        let rows = self
            .basis
            .iter()
            .map(|v| {
                let mut p = to_polarized_coords(v);
                for (c, t) in p.iter_mut().zip(basis) {
                    if !keep(t) {
                        *c = BigRational::zero();
                    }
                }
                from_polarized_coords(&p)
            })
            .collect();
        LinearRelationSpace {
            generators,
            basis: rref(rows),
        }
    }

    pub fn generators(&self) -> GeneratorSpace {
        self.generators
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_matrix(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    /// Basis in coordinates over [`polarized_basis3`]`(Regular)`.
    pub fn polarized_rows(&self) -> Vec<Vec<BigRational>> {
        self.basis.iter().map(|v| to_polarized_coords(v)).collect()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(rows).len() == self.basis.len()
    }

    pub fn contains_space(&self, other: &LinearRelationSpace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn is_s3_stable(&self) -> bool {
        s3_table().iter().all(|(_, img)| {
            self.basis
                .iter()
                .all(|v| self.contains(&act_planar(img, v)))
        })
    }

    /// Image under the reverse automorphism.
    pub fn mirror(&self) -> Self {
        let mt = mirror_table();
        LinearRelationSpace {
            generators: self.generators,
            basis: rref(self.basis.iter().map(|v| act_planar(mt, v)).collect()),
        }
    }

    /// A basis of bracket-weight-homogeneous vectors, if the space splits by
    /// weight; each vector is given in polarized coordinates.
    pub fn homogeneous_basis(&self) -> Option<Vec<(u32, Vec<BigRational>)>> {
        let basis = polarized_basis3(GeneratorSpace::Regular);
        let pol = self.polarized_rows();
        let mut out = Vec::new();
        for w in 0..=2u32 {
            let rows: Vec<_> = pol
                .iter()
                .map(|v| {
                    v.iter()
                        .zip(basis)
                        .map(|(c, t)| {
                            if t.weight() == w {
                                c.clone()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            for r in rref(rows) {
                out.push((w, r));
            }
        }
        (out.len() == self.dim()).then_some(out)
    }

    pub fn weight_homogeneous(&self) -> bool {
        self.homogeneous_basis().is_some()
    }
}

/// The relation space of a catalog congruence; symmetric entries live over
/// one commutative generator.
pub fn relation_space(c: &Congruence, symmetrize: bool) -> LinearRelationSpace {
    let r = LinearRelationSpace::from_congruence(c);
    if symmetrize {
        r.restrict_generators(GeneratorSpace::Symmetric)
    } else {
        r
    }
}

type SparseRow = Vec<(u32, BigInt)>;

fn primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        for (_, c) in row.iter_mut() {
            *c = -&*c;
        }
    }
}

/// `a * row - b * pivot`, where both start at the same column.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let g = row[0].1.gcd(&pivot[0].1);
    let a = &pivot[0].1 / &g;
    let b = &row[0].1 / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(u32::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, &a * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&b * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &a * &row[i - 1].1 - &b * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Exact rank of sparse integer rows (columns sorted within each row).
pub(crate) fn sparse_rank(mut rows: Vec<SparseRow>) -> usize {
    rows.sort_by_key(|r| r.len());
    let mut pivots: HashMap<u32, SparseRow> = HashMap::new();
    for mut row in rows {
        primitive(&mut row);
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => {
                    row = eliminate(&row, p);
                    primitive(&mut row);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn integer_row(v: &[(PolTree, BigRational)]) -> Vec<(PolTree, BigInt)> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    v.iter()
        .map(|(t, c)| (t.clone(), (c * &lcm).to_integer()))
        .collect()
}

struct ArityBlocks {
    /// Trees per weight, sorted.
    columns: Vec<Vec<PolTree>>,
    /// Rank per weight.
    ranks: Vec<usize>,
}

fn arity_blocks(r: &LinearRelationSpace, n: usize, graded: bool) -> Result<ArityBlocks> {
    let generators = r.generators;
    let trees = PolTree::enumerate(n, generators);
    let max_w = n.saturating_sub(1);
    let mut columns: Vec<Vec<PolTree>> = vec![Vec::new(); max_w + 1];
    for t in &trees {
        columns[t.weight() as usize].push(t.clone());
    }
    let index: HashMap<&PolTree, (usize, u32)> = columns
        .iter()
        .enumerate()
        .flat_map(|(w, c)| c.iter().enumerate().map(move |(i, t)| (t, (w, i as u32))))
        .collect();

    let basis3 = polarized_basis3(GeneratorSpace::Regular);
    let relations: Vec<Vec<(PolTree, BigInt)>> = if graded {
        r.homogeneous_basis()
            .ok_or(Error::NotHomogeneous)?
            .into_iter()
            .map(|(_, v)| v)
            .collect::<Vec<_>>()
    } else {
        r.polarized_rows()
    }
    .iter()
    .map(|v| {
        let pairs: Vec<_> = v
            .iter()
            .zip(basis3)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, t)| (t.clone(), c.clone()))
            .collect();
        integer_row(&pairs)
    })
    .collect();

    let base = generators.base_op();
    // every consequence row, tagged with its weight block (or 0 if ungraded)
    let rows: Vec<(usize, SparseRow)> = trees
        .par_iter()
        .flat_map_iter(|t| {
            let mut out = Vec::new();
            for (path, slots) in t.canonical_frames(base) {
                for rel in &relations {
                    let mut acc: BTreeMap<(usize, u32), BigInt> = BTreeMap::new();
                    for (pattern, c) in rel {
                        let (s, local) = pattern.substitute(&slots);
                        let full = t.replace_at(&path, local);
                        let Some(&(w, col)) = index.get(&full) else {
                            continue;
                        };
                        let key = if graded {
                            (w, col)
                        } else {
                            (0, global_col(&columns, w, col))
                        };
                        *acc.entry(key).or_insert_with(BigInt::zero) += c * s;
                    }
                    acc.retain(|_, c| !c.is_zero());
                    if let Some(&(w, _)) = acc.keys().next() {
                        out.push((w, acc.into_iter().map(|((_, col), c)| (col, c)).collect()));
                    }
                }
            }
            out
        })
        .collect();

    let blocks = if graded { max_w + 1 } else { 1 };
    let mut by_block: Vec<Vec<SparseRow>> = vec![Vec::new(); blocks];
    for (w, row) in rows {
        by_block[w].push(row);
    }
    let ranks = by_block.into_par_iter().map(sparse_rank).collect();
    Ok(ArityBlocks { columns, ranks })
}

fn global_col(columns: &[Vec<PolTree>], w: usize, col: u32) -> u32 {
    columns[..w].iter().map(|c| c.len() as u32).sum::<u32>() + col
}

fn check_cap(max_arity: usize, cap: usize) -> Result<()> {
    if max_arity == 0 {
        return Err(Error::arg("max arity must be at least 1"));
    }
    if max_arity > cap {
        return Err(Error::ResourceLimit {
            what: format!("linear arity {max_arity}"),
            cap,
        });
    }
    Ok(())
}

fn key_of(r: &LinearRelationSpace) -> String {
    format!("linear:{:?}:dim{}", r.generators, r.dim())
}

/// Dimensions refined by bracket weight, for arities `1..=max_arity`.
pub fn graded_dims(r: &LinearRelationSpace, max_arity: usize) -> Result<DimensionTable> {
    graded_dims_with_cap(r, max_arity, DEFAULT_LINEAR_CAP)
}

pub fn graded_dims_with_cap(
    r: &LinearRelationSpace,
    max_arity: usize,
    cap: usize,
) -> Result<DimensionTable> {
    check_cap(max_arity, cap)?;
    if !r.weight_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let mut graded = Vec::new();
    for n in 1..=max_arity {
        let b = arity_blocks(r, n, true)?;
        graded.push(
            b.columns
                .iter()
                .zip(&b.ranks)
                .map(|(c, &rk)| (c.len() - rk) as u64)
                .collect::<Vec<_>>(),
        );
    }
    Ok(DimensionTable {
        operad_key: key_of(r),
        symmetrize: r.generators == GeneratorSpace::Symmetric,
        entries: graded.iter().map(|g| g.iter().sum()).collect(),
        graded: Some(graded),
    })
}

/// Dimensions without the weight grading; works for any relation space.
pub fn ungraded_dims(r: &LinearRelationSpace, max_arity: usize) -> Result<DimensionTable> {
    ungraded_dims_with_cap(r, max_arity, DEFAULT_LINEAR_CAP)
}

pub fn ungraded_dims_with_cap(
    r: &LinearRelationSpace,
    max_arity: usize,
    cap: usize,
) -> Result<DimensionTable> {
    check_cap(max_arity, cap)?;
    let mut entries = Vec::new();
    for n in 1..=max_arity {
        let b = arity_blocks(r, n, false)?;
        let total: usize = b.columns.iter().map(Vec::len).sum();
        entries.push((total - b.ranks[0]) as u64);
    }
    Ok(DimensionTable {
        operad_key: key_of(r),
        symmetrize: r.generators == GeneratorSpace::Symmetric,
        entries,
        graded: None,
    })
}

/// Outcome of the quadratic-monomial test in the polarized basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialCertificate {
    /// The relation space is spanned by these polarized monomials.
    Certified { monomials: Vec<PolTree> },
    /// The polarized monomials inside the space span only part of it.
    Refused { monomials: Vec<PolTree>, gap: usize },
}

impl MonomialCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, MonomialCertificate::Certified { .. })
    }

    pub fn monomials(&self) -> &[PolTree] {
        match self {
            MonomialCertificate::Certified { monomials }
            | MonomialCertificate::Refused { monomials, .. } => monomials,
        }
    }
}

/// One representative per `S_3`-orbit, taking the smallest member.
pub fn orbit_representatives(monomials: &[PolTree]) -> Vec<PolTree> {
    let mut reps: Vec<PolTree> = monomials
        .iter()
        .map(|m| {
            s3_table()
                .iter()
                .map(|(s, _)| m.relabel(&|a| s.apply(a)).1)
                .min()
                .unwrap()
        })
        .collect();
    reps.sort();
    reps.dedup();
    reps
}

pub fn monomial_certificate(r: &LinearRelationSpace) -> MonomialCertificate {
    let monomials: Vec<PolTree> = polarized_basis3(r.generators)
        .iter()
        .filter(|t| {
            let v = expand_polarized(&PolarizedExpression::single((*t).into())).unwrap();
            r.contains(&v)
        })
        .cloned()
        .collect();
    // distinct polarized monomials are linearly independent
    if monomials.len() == r.dim() {
        MonomialCertificate::Certified { monomials }
    } else {
        let gap = r.dim() - monomials.len();
        MonomialCertificate::Refused { monomials, gap }
    }
}
