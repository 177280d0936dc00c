//! Brute-force class counts of set-operads given by relation strings.
//!
//! Parses the relation strings itself, closes them under the
//! three-letter permutations, and rewrites every subtree of every labelled
//! tree, without using the library.

use std::collections::HashMap;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum T {
    Leaf(u8),
    Node(Box<T>, Box<T>),
}

fn node(l: T, r: T) -> T {
    T::Node(Box::new(l), Box::new(r))
}

/// `X(YZ)` or `(XY)Z` over the letters `a`, `b`, `c`.
fn parse3(s: &str) -> T {
    let b = s.trim().as_bytes();
    let leaf = |c: u8| T::Leaf(c - b'a');
    if b[0] == b'(' {
        node(node(leaf(b[1]), leaf(b[2])), leaf(b[4]))
    } else {
        node(leaf(b[0]), node(leaf(b[2]), leaf(b[3])))
    }
}

fn subst(t: &T, env: &[T]) -> T {
    match t {
        T::Leaf(i) => env[*i as usize].clone(),
        T::Node(l, r) => node(subst(l, env), subst(r, env)),
    }
}

const S3: [[u8; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn union(p: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(p, a), find(p, b));
    p[a.max(b)] = a.min(b);
}

/// For each of the two frames, every arity-3 monomial congruent to it.
fn frame_classes(relations: &[&str]) -> (Vec<T>, Vec<T>) {
    let leaves = |p: [u8; 3]| p.map(T::Leaf).to_vec();
    let mut monos = Vec::new();
    for p in S3 {
        monos.push(subst(&parse3("(ab)c"), &leaves(p)));
        monos.push(subst(&parse3("a(bc)"), &leaves(p)));
    }
    let idx = |t: &T, monos: &[T]| monos.iter().position(|m| m == t).unwrap();
    let mut parent: Vec<usize> = (0..12).collect();
    for rel in relations {
        let ts: Vec<T> = rel.split('=').map(parse3).collect();
        for p in S3 {
            let first = idx(&subst(&ts[0], &leaves(p)), &monos);
            for t in &ts[1..] {
                let other = idx(&subst(t, &leaves(p)), &monos);
                union(&mut parent, first, other);
            }
        }
    }
    let class = |t: &str, parent: &mut [usize]| {
        let r = find(parent, idx(&parse3(t), &monos));
        (0..12)
            .filter(|&i| find(parent, i) == r)
            .map(|i| monos[i].clone())
            .collect::<Vec<_>>()
    };
    (class("(ab)c", &mut parent), class("a(bc)", &mut parent))
}

fn shapes(n: usize) -> Vec<T> {
    if n == 1 {
        return vec![T::Leaf(0)];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for l in shapes(k) {
            for r in shapes(n - k) {
                out.push(node(l.clone(), r));
            }
        }
    }
    out
}

fn label(t: &T, word: &[u8], next: &mut usize) -> T {
    match t {
        T::Leaf(_) => {
            *next += 1;
            T::Leaf(word[*next - 1])
        }
        T::Node(l, r) => {
            let l = label(l, word, next);
            node(l, label(r, word, next))
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, (n - 1) as u8);
            out.push(q);
        }
    }
    out
}

fn rewrites(t: &T, left: &[T], right: &[T]) -> Vec<T> {
    let mut out = Vec::new();
    if let T::Node(l, r) = t {
        if let T::Node(x, y) = &**l {
            let env = [(**x).clone(), (**y).clone(), (**r).clone()];
            out.extend(left.iter().map(|m| subst(m, &env)));
        }
        if let T::Node(y, z) = &**r {
            let env = [(**l).clone(), (**y).clone(), (**z).clone()];
            out.extend(right.iter().map(|m| subst(m, &env)));
        }
        out.extend(
            rewrites(l, left, right)
                .into_iter()
                .map(|x| node(x, (**r).clone())),
        );
        out.extend(
            rewrites(r, left, right)
                .into_iter()
                .map(|x| node((**l).clone(), x)),
        );
    }
    out
}

pub fn oracle_dims(relations: &[&str], max_arity: usize) -> Vec<u64> {
    let (left, right) = frame_classes(relations);
    (1..=max_arity)
        .map(|n| {
            let trees: Vec<T> = shapes(n)
                .iter()
                .flat_map(|s| {
                    permutations(n)
                        .into_iter()
                        .map(move |w| label(s, &w, &mut 0))
                })
                .collect();
            let index: HashMap<&T, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
            let mut parent: Vec<usize> = (0..trees.len()).collect();
            for (i, t) in trees.iter().enumerate() {
                for u in rewrites(t, &left, &right) {
                    union(&mut parent, i, index[&u]);
                }
            }
            (0..trees.len())
                .filter(|&i| find(&mut parent, i) == i)
                .count() as u64
        })
        .collect()
}
