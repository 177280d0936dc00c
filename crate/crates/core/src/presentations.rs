//! Quadratic presentations over `Mag(3)`.
//!
//! A set-theoretic quadratic presentation is an `S_3`-equivariant equivalence
//! relation on the twelve monomials of arity three (a [`Congruence`]). This
//! module builds congruences from generating pairs, lists the standard
//! catalog of 57 presentations (plus the two symmetric-generator operads),
//! enumerates every equivariant relation independently of the catalog, groups
//! catalog entries into isomorphism classes, and parses relation text.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linear::{expand_polarized, PolarizedExpression, PolarizedTerm};
use crate::trees::{enumerate_monomials, Permutation, Term, TreeMonomial};

/// The twelve monomials of `Mag(3)` in encoding order.
///
/// Indices `0..6` form the left orbit (`a(bc)` and its translates), indices
/// `6..12` the right orbit (`(ab)c` and its translates).
pub fn mag3_basis() -> &'static [TreeMonomial] {
    static BASIS: OnceLock<Vec<TreeMonomial>> = OnceLock::new();
    BASIS.get_or_init(|| enumerate_monomials(3, 3).unwrap())
}

pub fn mag3_index(m: &TreeMonomial) -> Option<usize> {
    mag3_basis().binary_search(m).ok()
}

pub fn in_right_orbit(index: usize) -> bool {
    index >= 6
}

/// `S_3` in lexicographic order, together with its action on basis indices.
pub(crate) fn s3_table() -> &'static [(Permutation, [usize; 12])] {
    static TABLE: OnceLock<Vec<(Permutation, [usize; 12])>> = OnceLock::new();
    TABLE.get_or_init(|| {
        Permutation::all(3)
            .into_iter()
            .map(|s| {
                let mut img = [0usize; 12];
                for (i, m) in mag3_basis().iter().enumerate() {
                    img[i] = mag3_index(&m.act(&s).unwrap()).unwrap();
                }
                (s, img)
            })
            .collect()
    })
}

pub(crate) fn mirror_table() -> &'static [usize; 12] {
    static TABLE: OnceLock<[usize; 12]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut img = [0usize; 12];
        for (i, m) in mag3_basis().iter().enumerate() {
            img[i] = mag3_index(&m.mirror()).unwrap();
        }
        img
    })
}

struct SmallUnionFind([u8; 12]);

impl SmallUnionFind {
    fn new() -> Self {
        let mut p = [0u8; 12];
        for (i, v) in p.iter_mut().enumerate() {
            *v = i as u8;
        }
        SmallUnionFind(p)
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] as usize != i {
            self.0[i] = self.0[self.0[i] as usize];
            i = self.0[i] as usize;
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo as u8;
        }
    }

    fn key(mut self) -> CongruenceKey {
        let mut k = [0u8; 12];
        for (i, v) in k.iter_mut().enumerate() {
            *v = self.find(i) as u8;
        }
        CongruenceKey(k)
    }
}

/// The canonical key of a congruence: every monomial mapped to the smallest
/// member of its class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CongruenceKey([u8; 12]);

impl CongruenceKey {
    pub fn representatives(&self) -> &[u8; 12] {
        &self.0
    }
}

impl fmt::Display for CongruenceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.0 {
            write!(f, "{}", char::from_digit(v as u32, 12).unwrap())?;
        }
        Ok(())
    }
}

/// An `S_3`-equivariant equivalence relation on the monomials of `Mag(3)`.
#[derive(Clone, Debug)]
pub struct Congruence {
    key: CongruenceKey,
    generators: Vec<(TreeMonomial, TreeMonomial)>,
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Congruence {}

impl std::hash::Hash for Congruence {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state)
    }
}

impl Congruence {
    /// The smallest equivariant equivalence relation containing `pairs`.
    pub fn close(pairs: &[(TreeMonomial, TreeMonomial)]) -> Result<Congruence> {
        let mut uf = SmallUnionFind::new();
        for (p, q) in pairs {
            let (i, j) = match (mag3_index(p), mag3_index(q)) {
                (Some(i), Some(j)) => (i, j),
                _ => {
                    return Err(Error::arg(format!(
                        "relation {p} = {q} is not between arity-3 monomials"
                    )))
                }
            };
            for (_, img) in s3_table() {
                uf.union(img[i], img[j]);
            }
        }
        Ok(Congruence {
            key: uf.key(),
            generators: pairs.to_vec(),
        })
    }

    pub fn trivial() -> Congruence {
        Congruence::close(&[]).unwrap()
    }

    fn from_key(key: CongruenceKey) -> Congruence {
        let generators = (0..12)
            .filter(|&i| key.0[i] as usize != i)
            .map(|i| {
                (
                    mag3_basis()[key.0[i] as usize].clone(),
                    mag3_basis()[i].clone(),
                )
            })
            .collect();
        Congruence { key, generators }
    }

    pub fn key(&self) -> CongruenceKey {
        self.key
    }

    pub fn generators(&self) -> &[(TreeMonomial, TreeMonomial)] {
        &self.generators
    }

    pub fn related(&self, a: &TreeMonomial, b: &TreeMonomial) -> bool {
        match (mag3_index(a), mag3_index(b)) {
            (Some(i), Some(j)) => self.key.0[i] == self.key.0[j],
            _ => false,
        }
    }

    pub fn related_indices(&self, i: usize, j: usize) -> bool {
        self.key.0[i] == self.key.0[j]
    }

    /// Classes as sorted index lists, ordered by their smallest member.
    pub fn class_indices(&self) -> Vec<Vec<usize>> {
        let mut by_rep: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
        for i in 0..12 {
            by_rep.entry(self.key.0[i]).or_default().push(i);
        }
        by_rep.into_values().collect()
    }

    pub fn classes(&self) -> Vec<Vec<TreeMonomial>> {
        self.class_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|i| mag3_basis()[i].clone()).collect())
            .collect()
    }

    pub fn class_of(&self, m: &TreeMonomial) -> Vec<TreeMonomial> {
        let Some(i) = mag3_index(m) else {
            return Vec::new();
        };
        (0..12)
            .filter(|&j| self.key.0[j] == self.key.0[i])
            .map(|j| mag3_basis()[j].clone())
            .collect()
    }

    pub fn class_count(&self) -> usize {
        (0..12).filter(|&i| self.key.0[i] as usize == i).count()
    }

    /// Every related pair `(i, j)` with `i < j`, as basis indices.
    pub fn related_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..12 {
            for j in i + 1..12 {
                if self.key.0[i] == self.key.0[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Whether every permutation maps classes onto classes.
    pub fn is_equivariant(&self) -> bool {
        s3_table().iter().all(|(_, img)| {
            self.related_pairs()
                .iter()
                .all(|&(i, j)| self.key.0[img[i]] == self.key.0[img[j]])
        })
    }

    /// The image under the reverse automorphism.
    pub fn mirror(&self) -> Congruence {
        let mt = mirror_table();
        let mut uf = SmallUnionFind::new();
        for (i, j) in self.related_pairs() {
            uf.union(mt[i], mt[j]);
        }
        let generators = self
            .generators
            .iter()
            .map(|(p, q)| (p.mirror(), q.mirror()))
            .collect();
        Congruence {
            key: uf.key(),
            generators,
        }
    }

    /// The finest congruence containing both.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = SmallUnionFind::new();
        for i in 0..12 {
            uf.union(i, self.key.0[i] as usize);
            uf.union(i, other.key.0[i] as usize);
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Congruence {
            key: uf.key(),
            generators,
        }
    }

    /// Whether every pair related here is related in `coarser`.
    pub fn refines(&self, coarser: &Congruence) -> bool {
        self.related_pairs()
            .iter()
            .all(|&(i, j)| coarser.related_indices(i, j))
    }

    /// Which property of the orbit case analysis holds: (all classes inside
    /// one orbit, all classes meet both orbits).
    pub fn orbit_cases(&self) -> (bool, bool) {
        let classes = self.class_indices();
        let inside_one = classes
            .iter()
            .all(|c| c.iter().all(|&i| in_right_orbit(i)) || c.iter().all(|&i| !in_right_orbit(i)));
        let meets_both = classes
            .iter()
            .all(|c| c.iter().any(|&i| in_right_orbit(i)) && c.iter().any(|&i| !in_right_orbit(i)));
        (inside_one, meets_both)
    }

    /// The refined subcase, or `None` if the orbit cases are not exclusive.
    pub fn subcase(&self) -> Option<Subcase> {
        let classes = self.class_indices();
        match self.orbit_cases() {
            (true, false) => {
                let nontrivial_right = classes.iter().any(|c| c.len() > 1 && in_right_orbit(c[0]));
                let nontrivial_left = classes.iter().any(|c| c.len() > 1 && !in_right_orbit(c[0]));
                let singleton = classes.iter().any(|c| c.len() == 1);
                Some(match (nontrivial_left, nontrivial_right) {
                    (false, false) => Subcase::Trivial,
                    (false, true) => Subcase::RightOnly,
                    (true, false) => Subcase::LeftOnly,
                    (true, true) if !singleton => Subcase::BothSides,
                    // one side partly collapsed, the other untouched cannot
                    // happen for an equivariant relation
                    (true, true) => return None,
                })
            }
            (false, true) => {
                if classes.iter().all(|c| c.len() == 2) {
                    Some(Subcase::PairsAcross)
                } else if classes.iter().all(|c| c.len() > 2) {
                    Some(Subcase::LargeAcross)
                } else {
                    None
                }
            }
            _ => None,
        }
    }
}

/// The refinement of the orbit case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subcase {
    /// All classes are singletons.
    Trivial,
    /// Only the right orbit has nontrivial classes.
    RightOnly,
    /// Only the left orbit has nontrivial classes.
    LeftOnly,
    /// Classes stay inside an orbit and none is a singleton.
    BothSides,
    /// Every class has one element of each orbit.
    PairsAcross,
    /// Every class meets both orbits and has 4, 6 or 12 elements.
    LargeAcross,
}

const RR: [&str; 5] = [
    "(ab)c = (ac)b",
    "(ab)c = (ba)c",
    "(ab)c = (cb)a",
    "(ab)c = (bc)a = (ca)b",
    "(ab)c = (cb)a = (ca)b = (ba)c = (ac)b = (bc)a",
];

const LL: [&str; 5] = [
    "a(bc) = b(ac)",
    "a(bc) = a(cb)",
    "a(bc) = c(ba)",
    "a(bc) = b(ca) = c(ab)",
    "a(bc) = b(ca) = c(ab) = a(cb) = b(ac) = c(ba)",
];

const RL: [&str; 6] = [
    "(ab)c = a(bc)",
    "(ab)c = a(cb)",
    "(ab)c = b(ac)",
    "(ab)c = b(ca)",
    "(ab)c = c(ab)",
    "(ab)c = c(ba)",
];

/// Relations involving only the right orbit, `RR_1..RR_5`.
pub fn rr_relation(i: u8) -> &'static str {
    RR[i as usize - 1]
}

/// Mirror counterparts on the left orbit, `LL_1..LL_5`.
pub fn ll_relation(i: u8) -> &'static str {
    LL[i as usize - 1]
}

/// Relations pairing one monomial of each orbit, `RL_6..RL_11`.
pub fn rl_relation(j: u8) -> &'static str {
    RL[j as usize - 6]
}

/// Where a catalog entry comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Free,
    Rr(u8),
    Rl(u8),
    RrLl(u8, u8),
    RrRl(u8, u8),
    /// One symmetric generator; `all_equal` distinguishes `Com` from `ComMag`.
    Symmetric {
        all_equal: bool,
    },
}

impl Family {
    pub fn relations(&self) -> Vec<&'static str> {
        match *self {
            Family::Free => vec![],
            Family::Rr(i) => vec![rr_relation(i)],
            Family::Rl(j) => vec![rl_relation(j)],
            Family::RrLl(i, j) => vec![rr_relation(i), ll_relation(j)],
            Family::RrRl(i, j) => vec![rr_relation(i), rl_relation(j)],
            Family::Symmetric { all_equal: false } => vec![],
            Family::Symmetric { all_equal: true } => vec!["(ab)c = (bc)a = (ca)b"],
        }
    }

    pub fn name(&self) -> String {
        match *self {
            Family::Free => "Mag".into(),
            Family::Rr(i) | Family::Rl(i) => format!("P{i}"),
            Family::RrLl(i, j) | Family::RrRl(i, j) => format!("P{i};{j}"),
            Family::Symmetric { all_equal: false } => "ComMag".into(),
            Family::Symmetric { all_equal: true } => "Com".into(),
        }
    }
}

/// Operads the catalog recognizes from the literature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnownOperad {
    Nap,
    Ass,
    Perm,
    LieAdmDual,
    ComMag,
    Com,
}

impl KnownOperad {
    pub fn name(&self) -> &'static str {
        match self {
            KnownOperad::Nap => "NAP",
            KnownOperad::Ass => "Ass",
            KnownOperad::Perm => "Perm",
            KnownOperad::LieAdmDual => "LieAdm^!",
            KnownOperad::ComMag => "ComMag",
            KnownOperad::Com => "Com",
        }
    }
}

impl fmt::Display for KnownOperad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub family: Family,
    pub congruence: Congruence,
    /// Identify every monomial with its child swaps (one symmetric generator).
    pub symmetrize: bool,
    pub known: Option<KnownOperad>,
}

fn known_for(family: Family) -> Option<KnownOperad> {
    match family {
        Family::Rr(1) => Some(KnownOperad::Nap),
        Family::Rl(6) => Some(KnownOperad::Ass),
        Family::RrRl(1, 6) | Family::RrRl(2, 6) => Some(KnownOperad::Perm),
        Family::RrRl(5, _) => Some(KnownOperad::LieAdmDual),
        Family::Symmetric { all_equal: false } => Some(KnownOperad::ComMag),
        Family::Symmetric { all_equal: true } => Some(KnownOperad::Com),
        _ => None,
    }
}

fn entry(family: Family) -> CatalogEntry {
    let mut pairs = Vec::new();
    for rel in family.relations() {
        pairs.extend(parse_chain(rel).expect("catalog relation"));
    }
    CatalogEntry {
        name: family.name(),
        family,
        congruence: Congruence::close(&pairs).expect("catalog relation"),
        symmetrize: matches!(family, Family::Symmetric { .. }),
        known: known_for(family),
    }
}

/// The 57 presentations: `Mag`, `P_1..P_11`, the 15 `P_{i;j}` combining
/// `RR_i` and `LL_j` with `i <= j`, and the 30 combining `RR_i` and `RL_j`.
pub fn standard_catalog() -> Vec<CatalogEntry> {
    let mut families = vec![Family::Free];
    families.extend((1..=5).map(Family::Rr));
    families.extend((6..=11).map(Family::Rl));
    for i in 1..=5 {
        for j in i..=5 {
            families.push(Family::RrLl(i, j));
        }
    }
    for i in 1..=5 {
        for j in 6..=11 {
            families.push(Family::RrRl(i, j));
        }
    }
    families.into_iter().map(entry).collect()
}

/// `ComMag` and `Com`, realized on `Mag` with the symmetrize flag.
pub fn symmetric_entries() -> Vec<CatalogEntry> {
    vec![
        entry(Family::Symmetric { all_equal: false }),
        entry(Family::Symmetric { all_equal: true }),
    ]
}

/// The standard catalog followed by the two symmetric entries.
pub fn extended_catalog() -> Vec<CatalogEntry> {
    let mut v = standard_catalog();
    v.extend(symmetric_entries());
    v
}

pub fn find_entry<'a>(entries: &'a [CatalogEntry], name: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.name == name)
}

/// Every equivariant equivalence relation on `Mag(3)`, by key order.
///
/// Computed without reference to the catalog: the fixpoint of joining the
/// closures of single pairs, starting from the trivial relation.
pub fn enumerate_all_equivariant() -> Vec<Congruence> {
    let basis = mag3_basis();
    let mut atoms: Vec<Congruence> = Vec::new();
    let mut seen_atoms = HashSet::new();
    for i in 0..12 {
        for j in i + 1..12 {
            let c = Congruence::close(&[(basis[i].clone(), basis[j].clone())]).unwrap();
            if seen_atoms.insert(c.key()) {
                atoms.push(c);
            }
        }
    }
    let trivial = Congruence::trivial();
    let mut found: BTreeMap<CongruenceKey, Congruence> = BTreeMap::new();
    found.insert(trivial.key(), trivial.clone());
    let mut queue = VecDeque::from([trivial]);
    while let Some(c) = queue.pop_front() {
        for a in &atoms {
            let j = c.join(a);
            if !found.contains_key(&j.key()) {
                let j = Congruence::from_key(j.key());
                found.insert(j.key(), j.clone());
                queue.push_back(j);
            }
        }
    }
    found.into_values().collect()
}

/// How a member of an isomorphism class relates to the class representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    Representative,
    EqualCongruence,
    Mirror,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    /// Indices into the collapsed entry list; the first is the representative.
    pub members: Vec<(usize, Witness)>,
}

/// Groups entries whose congruences coincide or are mirror images.
///
/// Arbitrary operad isomorphisms are not searched. Classes are ordered by
/// their first member.
pub fn iso_collapse(entries: &[CatalogEntry]) -> Vec<IsoClass> {
    let mut assigned = vec![false; entries.len()];
    let mut classes = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let key = e.congruence.key();
        let mirror_key = e.congruence.mirror().key();
        let mut members = vec![(i, Witness::Representative)];
        assigned[i] = true;
        for (j, f) in entries.iter().enumerate().skip(i + 1) {
            if assigned[j] || f.symmetrize != e.symmetrize {
                continue;
            }
            let k = f.congruence.key();
            let witness = if k == key {
                Witness::EqualCongruence
            } else if k == mirror_key {
                Witness::Mirror
            } else {
                continue;
            };
            assigned[j] = true;
            members.push((j, witness));
        }
        classes.push(IsoClass { members });
    }
    classes
}

/// A parsed presentation.
#[derive(Clone, Debug, PartialEq)]
pub enum Presentation {
    /// Monomial identifications.
    Set(Vec<(TreeMonomial, TreeMonomial)>),
    /// Vectors over the twelve `Mag(3)` monomials, each spanning a relation.
    Linear(Vec<Vec<BigRational>>),
}

/// Parses `rel (';' rel)*`; newlines also separate relations.
///
/// A set relation is a chain `m_1 = m_2 = ...` of monomials written with
/// juxtaposition and parentheses over the letters `a`, `b`, `c`. Anything
/// else (brackets `[p,q]`, symmetric products `p.q`, coefficients, `0`) makes
/// the whole presentation linear.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = RelParser {
        src: text.as_bytes(),
        pos: 0,
    };
    let rels = p.relations()?;
    let all_set = rels.iter().all(|chain| chain.iter().all(Side::is_monomial));
    if all_set {
        let mut pairs = Vec::new();
        for chain in &rels {
            let monos = chain
                .iter()
                .map(|s| s.as_monomial())
                .collect::<Result<Vec<_>>>()?;
            for w in monos.windows(2) {
                if w[0] != w[1] {
                    pairs.push((w[0].clone(), w[1].clone()));
                }
            }
        }
        return Ok(Presentation::Set(pairs));
    }
    let mut vectors = Vec::new();
    for chain in &rels {
        let sides = chain
            .iter()
            .map(|s| s.expand())
            .collect::<Result<Vec<_>>>()?;
        for w in sides.windows(2) {
            let v: Vec<BigRational> = w[0].iter().zip(&w[1]).map(|(a, b)| a - b).collect();
            if v.iter().any(|x| !x.is_zero()) {
                vectors.push(v);
            }
        }
    }
    Ok(Presentation::Linear(vectors))
}

/// Parses one chain of monomial equalities into consecutive pairs.
pub fn parse_chain(text: &str) -> Result<Vec<(TreeMonomial, TreeMonomial)>> {
    match parse_presentation(text)? {
        Presentation::Set(pairs) => Ok(pairs),
        Presentation::Linear(_) => Err(Error::arg(format!("{text:?} is not a set relation"))),
    }
}

impl Presentation {
    /// The relation vectors over the `Mag(3)` basis.
    pub fn vectors(&self) -> Vec<Vec<BigRational>> {
        match self {
            Presentation::Linear(v) => v.clone(),
            Presentation::Set(pairs) => pairs
                .iter()
                .map(|(p, q)| {
                    let mut v = vec![BigRational::zero(); 12];
                    v[mag3_index(p).unwrap()] += BigRational::one();
                    v[mag3_index(q).unwrap()] -= BigRational::one();
                    v
                })
                .collect(),
        }
    }
}

#[derive(Debug)]
enum Side {
    Zero,
    Combination(PolarizedExpression, usize),
}

impl Side {
    fn is_monomial(&self) -> bool {
        match self {
            Side::Zero => false,
            Side::Combination(e, _) => {
                e.terms().len() == 1 && e.terms()[0].0.is_one() && e.terms()[0].1.is_planar()
            }
        }
    }

    fn as_monomial(&self) -> Result<TreeMonomial> {
        let Side::Combination(e, pos) = self else {
            unreachable!()
        };
        let term = e.terms()[0].1.to_planar_term().unwrap();
        if term.leaves() != 3 {
            return Err(Error::parse(*pos, format!("{term} is not of arity 3")));
        }
        TreeMonomial::from_term(&term).map_err(|_| {
            Error::parse(
                *pos,
                format!("{term} must use each of a, b, c exactly once"),
            )
        })
    }

    fn expand(&self) -> Result<Vec<BigRational>> {
        match self {
            Side::Zero => Ok(vec![BigRational::zero(); 12]),
            Side::Combination(e, pos) => expand_polarized(e).map_err(|err| match err {
                Error::Argument(msg) => Error::parse(*pos, msg),
                other => other,
            }),
        }
    }
}

struct RelParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl RelParser<'_> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src.get(self.pos) {
            if *c == b' ' || *c == b'\t' || *c == b'\r' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn relations(&mut self) -> Result<Vec<Vec<Side>>> {
        let mut rels = Vec::new();
        loop {
            while matches!(self.peek(), Some(b';') | Some(b'\n')) {
                self.pos += 1;
            }
            if self.peek().is_none() {
                break;
            }
            rels.push(self.chain()?);
            match self.peek() {
                None | Some(b';') | Some(b'\n') => {}
                Some(_) => return Err(Error::parse(self.pos, "expected ';' or '='")),
            }
        }
        if rels.is_empty() {
            return Err(Error::parse(0, "no relations"));
        }
        Ok(rels)
    }

    fn chain(&mut self) -> Result<Vec<Side>> {
        let mut sides = vec![self.side()?];
        while self.peek() == Some(b'=') {
            self.pos += 1;
            sides.push(self.side()?);
        }
        if sides.len() < 2 {
            return Err(Error::parse(self.pos, "a relation needs '='"));
        }
        Ok(sides)
    }

    fn side(&mut self) -> Result<Side> {
        let start = self.pos;
        if self.peek() == Some(b'0') {
            let save = self.pos;
            self.pos += 1;
            if !matches!(self.peek(), Some(b'0'..=b'9') | Some(b'/') | Some(b'*')) {
                return Ok(Side::Zero);
            }
            self.pos = save;
        }
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let coeff = self.coefficient()? * BigInt::from(sign);
            let term = self.dot_expr()?;
            terms.push((coeff, term));
        }
        Ok(Side::Combination(PolarizedExpression::new(terms), start))
    }

    fn coefficient(&mut self) -> Result<BigRational> {
        let Some(b'0'..=b'9') = self.peek() else {
            return Ok(BigRational::one());
        };
        let num = self.integer()?;
        let mut value = BigRational::from_integer(num);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::parse(self.pos, "zero denominator"));
            }
            value /= BigRational::from_integer(den);
        }
        if self.peek() == Some(b'*') {
            self.pos += 1;
        }
        if value.is_negative() {
            unreachable!()
        }
        Ok(value)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.src.get(self.pos), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn dot_expr(&mut self) -> Result<PolarizedTerm> {
        let left = self.juxtaposition()?;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let right = self.juxtaposition()?;
            if self.peek() == Some(b'.') {
                return Err(Error::parse(
                    self.pos,
                    "chained '.' is ambiguous; add parentheses",
                ));
            }
            return Ok(PolarizedTerm::sym(left, right));
        }
        Ok(left)
    }

    fn juxtaposition(&mut self) -> Result<PolarizedTerm> {
        let left = self.primary()?;
        if matches!(self.peek(), Some(b'a'..=b'z') | Some(b'(') | Some(b'[')) {
            let right = self.primary()?;
            if matches!(self.peek(), Some(b'a'..=b'z') | Some(b'(') | Some(b'[')) {
                return Err(Error::parse(
                    self.pos,
                    "more than two juxtaposed factors; add parentheses",
                ));
            }
            return Ok(PolarizedTerm::planar(left, right));
        }
        Ok(left)
    }

    fn primary(&mut self) -> Result<PolarizedTerm> {
        match self.peek() {
            Some(c @ b'a'..=b'z') => {
                if c > b'c' {
                    return Err(Error::parse(
                        self.pos,
                        format!("unknown variable '{}'", c as char),
                    ));
                }
                self.pos += 1;
                Ok(PolarizedTerm::Letter(c - b'a' + 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.dot_expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(b'[') => {
                self.pos += 1;
                let l = self.dot_expr()?;
                self.expect(b',')?;
                let r = self.dot_expr()?;
                self.expect(b']')?;
                Ok(PolarizedTerm::skew(l, r))
            }
            _ => Err(Error::parse(self.pos, "expected a term")),
        }
    }
}

impl PolarizedTerm {
    fn is_planar(&self) -> bool {
        self.to_planar_term().is_some()
    }

    fn to_planar_term(&self) -> Option<Term> {
        match self {
            PolarizedTerm::Letter(a) => Some(Term::Leaf(*a)),
            PolarizedTerm::Planar(l, r) => {
                Some(Term::node(l.to_planar_term()?, r.to_planar_term()?))
            }
            _ => None,
        }
    }
}

/// Distinct keys among the entries, for reporting.
pub fn distinct_keys(entries: &[CatalogEntry]) -> BTreeSet<(bool, CongruenceKey)> {
    entries
        .iter()
        .map(|e| (e.symmetrize, e.congruence.key()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> TreeMonomial {
        s.parse().unwrap()
    }

    fn sorted(mut v: Vec<TreeMonomial>) -> Vec<TreeMonomial> {
        v.sort();
        v
    }

    #[test]
    fn basis_layout() {
        let b = mag3_basis();
        assert_eq!(b.len(), 12);
        assert_eq!(b[0], m("a(bc)"));
        assert_eq!(b[6], m("(ab)c"));
        assert!((0..6).all(|i| !in_right_orbit(i)));
    }

    #[test]
    fn close_examples() {
        let c = Congruence::close(&[(m("(ab)c"), m("(ca)b"))]).unwrap();
        assert_eq!(
            sorted(c.class_of(&m("(ab)c"))),
            sorted(vec![m("(ab)c"), m("(bc)a"), m("(ca)b")])
        );
        assert_eq!(Congruence::close(&[]).unwrap().class_count(), 12);
        let mut pairs = parse_chain(rr_relation(1)).unwrap();
        pairs.extend(parse_chain(rl_relation(6)).unwrap());
        let c = Congruence::close(&pairs).unwrap();
        assert_eq!(
            sorted(c.class_of(&m("(ab)c"))),
            sorted(vec![m("(ab)c"), m("(ac)b"), m("a(bc)"), m("a(cb)")])
        );
        assert!(Congruence::close(&[(m("ab"), m("ba"))]).is_err());
    }

    #[test]
    fn catalog_shape() {
        let cat = standard_catalog();
        assert_eq!(cat.len(), 57);
        assert_eq!(cat[0].name, "Mag");
        assert_eq!(cat[0].congruence, Congruence::trivial());
        let names: BTreeSet<_> = cat.iter().map(|e| e.name.clone()).collect();
        assert_eq!(names.len(), 57);
        let p6 = find_entry(&cat, "P6").unwrap();
        assert_eq!(p6.congruence.class_count(), 6);
        assert!(p6.congruence.related(&m("(ab)c"), &m("a(bc)")));
        assert!(cat.iter().all(|e| e.congruence.is_equivariant()));
    }

    #[test]
    fn ll_is_mirror_of_rr() {
        for i in 1..=5 {
            for j in 1..=5 {
                let mut p = parse_chain(rr_relation(i)).unwrap();
                p.extend(parse_chain(ll_relation(j)).unwrap());
                let mut q = parse_chain(rr_relation(j)).unwrap();
                q.extend(parse_chain(ll_relation(i)).unwrap());
                let a = Congruence::close(&p).unwrap();
                let b = Congruence::close(&q).unwrap();
                assert_eq!(a.mirror(), b, "RR{i};LL{j}");
            }
        }
    }

    #[test]
    fn enumeration_matches_catalog_up_to_mirror() {
        let all = enumerate_all_equivariant();
        let cat = standard_catalog();
        let keys: HashSet<_> = cat.iter().map(|e| e.congruence.key()).collect();
        assert!(all.iter().any(|c| c.class_count() == 12));
        assert!(all.iter().any(|c| c.class_count() == 1));
        for c in &all {
            assert!(c.is_equivariant());
            assert!(
                keys.contains(&c.key()) || keys.contains(&c.mirror().key()),
                "{} missing",
                c.key()
            );
        }
        let all_keys: HashSet<_> = all.iter().map(|c| c.key()).collect();
        assert!(keys.iter().all(|k| all_keys.contains(k)));
    }

    #[test]
    fn case_analysis_is_exclusive() {
        for c in enumerate_all_equivariant() {
            let (one, both) = c.orbit_cases();
            assert!(one ^ both, "{}", c.key());
            let sub = c.subcase().expect("subcase");
            if sub == Subcase::LargeAcross {
                assert!(c
                    .class_indices()
                    .iter()
                    .all(|k| [4, 6, 12].contains(&k.len())));
            }
        }
    }

    #[test]
    fn iso_groups_include_proposition_pairs() {
        let cat = standard_catalog();
        let classes = iso_collapse(&cat);
        let group_of = |name: &str| {
            let idx = cat.iter().position(|e| e.name == name).unwrap();
            classes
                .iter()
                .position(|c| c.members.iter().any(|&(i, _)| i == idx))
                .unwrap()
        };
        assert_eq!(group_of("P1;6"), group_of("P1;7"));
        assert_eq!(group_of("P4;6"), group_of("P4;9"));
        assert_eq!(group_of("P4;9"), group_of("P4;10"));
        let mag = &classes[group_of("Mag")];
        assert_eq!(mag.members.len(), 1);
        let p16 = cat.iter().position(|e| e.name == "P1;6").unwrap();
        let p17 = cat.iter().position(|e| e.name == "P1;7").unwrap();
        let class = &classes[group_of("P1;6")];
        assert_eq!(class.members[0], (p16, Witness::Representative));
        assert!(class.members.contains(&(p17, Witness::EqualCongruence)));
    }

    #[test]
    fn parse_set_relations() {
        assert_eq!(
            parse_presentation("(ab)c = (ba)c").unwrap(),
            Presentation::Set(vec![(m("(ab)c"), m("(ba)c"))])
        );
        assert_eq!(
            parse_presentation("a(bc) = a(bc)").unwrap(),
            Presentation::Set(vec![])
        );
        assert!(matches!(
            parse_presentation("(ab)c = (ad)c"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_presentation("ab = ba"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_presentation("(ab)c = "),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn parse_linear_relations() {
        let p = parse_presentation("[a,[b,c]] = 0; [a,b].c = 0").unwrap();
        let Presentation::Linear(v) = p else { panic!() };
        assert_eq!(v.len(), 2);
        let p = parse_presentation("[a.b, c] = -[a, b.c]").unwrap();
        assert!(matches!(p, Presentation::Linear(ref v) if v.len() == 1));
        let p = parse_presentation("2*(ab)c - 1/2 [a,b].c = 0").unwrap();
        assert!(matches!(p, Presentation::Linear(_)));
        assert!(parse_presentation("a.b.c = 0").is_err());
        assert!(parse_presentation("[a,b] = 0").is_err());
    }
}
