//! Trivalent trees on leaves `1..=m`, stored as ordered lists of splits.
//!
//! Edges are indexed from 0: edge `i < m` is the pendant edge at leaf `i + 1`,
//! edge `m + k` is the interior edge given by the `k`-th split. Pair-indexed
//! vectors use the lexicographic order `12, 13, ..., 1m, 23, ...`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::kernel::{Rat, RatMat, RatVec};
use crate::tropcore::{initial_form, plucker_quadrics, TermOrder};

/// A set of leaves as a bitmask; bit `i - 1` stands for leaf `i`.
pub type LeafSet = u64;

pub const MAX_LEAVES: usize = 63;

fn full(m: usize) -> LeafSet {
    (1u64 << m) - 1
}

fn leaves_of(s: LeafSet) -> Vec<usize> {
    (0..64).filter(|i| s >> i & 1 == 1).map(|i| i + 1).collect()
}

fn leaf_set(leaves: &[usize]) -> LeafSet {
    leaves.iter().fold(0, |acc, &l| acc | 1 << (l - 1))
}

/// Representative side of a split: the smaller side, and on a tie the side
/// containing leaf 1.
pub fn canonical_side(s: LeafSet, m: usize) -> LeafSet {
    let c = full(m) & !s;
    match s.count_ones().cmp(&c.count_ones()) {
        std::cmp::Ordering::Less => s,
        std::cmp::Ordering::Greater => c,
        std::cmp::Ordering::Equal => {
            if s & 1 == 1 {
                s
            } else {
                c
            }
        }
    }
}

/// Lexicographic comparison of the sorted leaf lists.
fn lex_key(s: LeafSet) -> Vec<usize> {
    leaves_of(s)
}

fn compatible(a: LeafSet, b: LeafSet, m: usize) -> bool {
    let (ac, bc) = (full(m) & !a, full(m) & !b);
    a & b == 0 || a & bc == 0 || ac & b == 0 || ac & bc == 0
}

/// Number of pairs `{i < j}` on `m` leaves.
pub fn num_pairs(m: usize) -> usize {
    m * (m - 1) / 2
}

/// Index of the pair `{i, j}` (1-based leaves, any order) in lexicographic order.
pub fn pair_index(m: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    debug_assert!(1 <= i && j <= m && i < j);
    (i - 1) * m - (i - 1) * i / 2 + (j - i - 1)
}

/// All pairs in lexicographic order.
pub fn pairs(m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(num_pairs(m));
    for i in 1..=m {
        for j in i + 1..=m {
            out.push((i, j));
        }
    }
    out
}

#[derive(Clone)]
pub struct TrivalentTree {
    m: usize,
    splits: Vec<LeafSet>,
}

impl TrivalentTree {
    /// A tree from its interior splits, in the given order. Each split may be
    /// given by either side.
    pub fn new(m: usize, splits: &[Vec<usize>]) -> Result<TrivalentTree> {
        if !(4..=MAX_LEAVES).contains(&m) {
            return invalid(format!("leaf count {m} outside 4..={MAX_LEAVES}"));
        }
        let mut sets = Vec::with_capacity(splits.len());
        for s in splits {
            if s.iter().any(|&l| l == 0 || l > m) {
                return invalid(format!("split {s:?} has a leaf outside 1..={m}"));
            }
            sets.push(leaf_set(s));
        }
        TrivalentTree::from_sets(m, sets)
    }

    fn from_sets(m: usize, sets: Vec<LeafSet>) -> Result<TrivalentTree> {
        if sets.len() != m - 3 {
            return invalid(format!(
                "a trivalent tree on {m} leaves has {} interior splits, got {}",
                m - 3,
                sets.len()
            ));
        }
        let mut splits = Vec::with_capacity(sets.len());
        for s in sets {
            let c = canonical_side(s, m);
            let n = c.count_ones() as usize;
            if n < 2 || n > m - 2 {
                return invalid(format!("split {:?} is trivial", leaves_of(s)));
            }
            if splits.contains(&c) {
                return invalid(format!("split {:?} repeated", leaves_of(c)));
            }
            splits.push(c);
        }
        for (i, &a) in splits.iter().enumerate() {
            for &b in &splits[i + 1..] {
                if !compatible(a, b, m) {
                    return invalid(format!("splits {:?} and {:?} are incompatible", leaves_of(a), leaves_of(b)));
                }
            }
        }
        Ok(TrivalentTree { m, splits })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_edges(&self) -> usize {
        2 * self.m - 3
    }

    /// Canonical sides of the interior splits, in edge order.
    pub fn splits(&self) -> Vec<Vec<usize>> {
        self.splits.iter().map(|&s| leaves_of(s)).collect()
    }

    pub fn split_sets(&self) -> &[LeafSet] {
        &self.splits
    }

    /// The same tree with splits sorted lexicographically by canonical side.
    pub fn sorted(&self) -> TrivalentTree {
        let mut splits = self.splits.clone();
        splits.sort_by_key(|&s| lex_key(s));
        TrivalentTree { m: self.m, splits }
    }

    /// Leaf set on one side of edge `e` (for interior edges, the canonical side).
    pub fn edge_side(&self, e: usize) -> Result<LeafSet> {
        if e < self.m {
            Ok(1 << e)
        } else if e < self.num_edges() {
            Ok(self.splits[e - self.m])
        } else {
            invalid(format!("edge index {e} out of range 0..{}", self.num_edges()))
        }
    }

    /// Index of the edge whose split has `side` as one of its sides.
    pub fn edge_of_side(&self, side: LeafSet) -> Option<usize> {
        let c = full(self.m) & !side;
        if side.count_ones() == 1 {
            return Some(side.trailing_zeros() as usize);
        }
        if c.count_ones() == 1 {
            return Some(c.trailing_zeros() as usize);
        }
        self.splits.iter().position(|&s| s == side || s == c).map(|k| self.m + k)
    }

    /// Indicator over pairs of the paths through edge `e`.
    pub fn tree_distance(&self, e: usize) -> Result<RatVec> {
        let s = self.edge_side(e)?;
        Ok(pairs(self.m)
            .into_iter()
            .map(|(i, j)| {
                let a = s >> (i - 1) & 1;
                let b = s >> (j - 1) & 1;
                if a != b {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect())
    }

    /// Sides of all edges, both orientations.
    fn clusters(&self) -> Vec<LeafSet> {
        let mut out = Vec::with_capacity(2 * self.num_edges());
        for e in 0..self.num_edges() {
            let s = self.edge_side(e).expect("valid edge");
            out.push(s);
            out.push(full(self.m) & !s);
        }
        out
    }

    /// The two maximal clusters strictly inside `s` (the subtrees hanging
    /// below the vertex where the edge with side `s` ends).
    pub fn children(&self, s: LeafSet) -> Option<(LeafSet, LeafSet)> {
        let inside: Vec<LeafSet> = self.clusters().into_iter().filter(|&c| c & !s == 0 && c != s).collect();
        let maximal: BTreeSet<LeafSet> =
            inside.iter().copied().filter(|&c| !inside.iter().any(|&d| d != c && c & !d == 0)).collect();
        let v: Vec<LeafSet> = maximal.into_iter().collect();
        (v.len() == 2 && v[0] | v[1] == s && v[0] & v[1] == 0).then(|| (v[0], v[1]))
    }

    /// Interior vertices, each given by its three incident edge indices.
    ///
    /// Rooting at leaf 1, every edge whose lower side has at least two leaves
    /// ends in an interior vertex.
    pub fn interior_vertices(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::with_capacity(self.m - 2);
        for e in 0..self.num_edges() {
            let s = self.edge_side(e).expect("valid edge");
            let lower = if s & 1 == 1 { full(self.m) & !s } else { s };
            if lower.count_ones() < 2 {
                continue;
            }
            let (a, b) = self.children(lower).expect("trivalent tree");
            let ea = self.edge_of_side(a).expect("child cluster is an edge");
            let eb = self.edge_of_side(b).expect("child cluster is an edge");
            out.push([e, ea, eb]);
        }
        out
    }

    /// Relabel leaves: leaf `i` becomes `perm[i - 1]`. Split order is kept.
    pub fn relabel(&self, perm: &[usize]) -> Result<TrivalentTree> {
        check_perm(perm, self.m)?;
        let sets =
            self.splits.iter().map(|&s| leaves_of(s).iter().fold(0, |acc, &l| acc | 1 << (perm[l - 1] - 1))).collect();
        TrivalentTree::from_sets(self.m, sets)
    }

    /// Leaf order in which every split is a cyclic interval.
    pub fn planar_order(&self) -> Vec<usize> {
        let mut out = vec![1];
        self.order_cluster(full(self.m) & !1, &mut out);
        out
    }

    fn order_cluster(&self, s: LeafSet, out: &mut Vec<usize>) {
        if s.count_ones() == 1 {
            out.push(s.trailing_zeros() as usize + 1);
            return;
        }
        let (a, b) = self.children(s).expect("trivalent tree");
        self.order_cluster(a, out);
        self.order_cluster(b, out);
    }

    /// Trees reachable by one nearest-neighbour interchange.
    pub fn neighbors(&self) -> Vec<TrivalentTree> {
        let mut out = Vec::new();
        for k in 0..self.splits.len() {
            let a = self.splits[k];
            let b = full(self.m) & !a;
            let (x1, _) = self.children(a).expect("trivalent tree");
            let (y1, y2) = self.children(b).expect("trivalent tree");
            for y in [y1, y2] {
                let mut sets = self.splits.clone();
                sets[k] = x1 | y;
                out.push(TrivalentTree::from_sets(self.m, sets).expect("interchange gives a tree"));
            }
        }
        out
    }
}

impl PartialEq for TrivalentTree {
    fn eq(&self, other: &TrivalentTree) -> bool {
        self.m == other.m && {
            let a: BTreeSet<_> = self.splits.iter().collect();
            let b: BTreeSet<_> = other.splits.iter().collect();
            a == b
        }
    }
}

impl Eq for TrivalentTree {}

impl fmt::Debug for TrivalentTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree(m={}, {:?})", self.m, self.splits())
    }
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    m: usize,
    splits: Vec<Vec<usize>>,
}

impl Serialize for TrivalentTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TreeJson { m: self.m, splits: self.splits() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TrivalentTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<TrivalentTree, D::Error> {
        let j = TreeJson::deserialize(d)?;
        TrivalentTree::new(j.m, &j.splits).map_err(serde::de::Error::custom)
    }
}

fn check_perm(perm: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if perm.len() != m {
        return invalid("permutation has the wrong length");
    }
    for &p in perm {
        if p == 0 || p > m || seen[p - 1] {
            return invalid(format!("{perm:?} is not a permutation of 1..={m}"));
        }
        seen[p - 1] = true;
    }
    Ok(())
}

/// All trivalent trees on `m` leaves, each once, with sorted splits.
pub fn enumerate_trees(m: usize) -> Result<Vec<TrivalentTree>> {
    if !(4..=MAX_LEAVES).contains(&m) {
        return invalid(format!("cannot enumerate trees on {m} leaves"));
    }
    // Edges are stored by their side avoiding leaf 1; start from the star on 1,2,3.
    let mut trees: Vec<Vec<LeafSet>> = vec![vec![0b010, 0b100, 0b110]];
    for k in 3..m {
        let new_leaf: LeafSet = 1 << k;
        let mut next = Vec::with_capacity(trees.len() * (2 * k - 3));
        for edges in &trees {
            for &e in edges {
                let mut grown: Vec<LeafSet> =
                    edges.iter().filter(|&&f| f != e).map(|&f| if e & !f == 0 { f | new_leaf } else { f }).collect();
                grown.push(e);
                grown.push(e | new_leaf);
                grown.push(new_leaf);
                next.push(grown);
            }
        }
        trees = next;
    }
    let mut out: Vec<TrivalentTree> = trees
        .into_iter()
        .map(|edges| {
            let sets: Vec<LeafSet> =
                edges.into_iter().filter(|s| (2..=m - 2).contains(&(s.count_ones() as usize))).collect();
            TrivalentTree::from_sets(m, sets).expect("insertion yields a trivalent tree").sorted()
        })
        .collect();
    out.sort_by_key(|t| t.splits.iter().map(|&s| lex_key(s)).collect::<Vec<_>>());
    Ok(out)
}

/// Every unordered pair of adjacent trees on `m` leaves, in the order of
/// [`enumerate_trees`].
pub fn adjacent_pairs(m: usize) -> Result<Vec<(TrivalentTree, TrivalentTree)>> {
    let trees = enumerate_trees(m)?;
    let index: std::collections::BTreeMap<Vec<LeafSet>, usize> =
        trees.iter().enumerate().map(|(i, t)| (t.splits.clone(), i)).collect();
    let mut out = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        let mut js: Vec<usize> = t.neighbors().iter().map(|n| index[&n.sorted().splits]).filter(|&j| j > i).collect();
        js.sort_unstable();
        js.dedup();
        out.extend(js.into_iter().map(|j| (t.clone(), trees[j].clone())));
    }
    Ok(out)
}

/// Combinatorial data of two trees differing in one interior edge.
#[derive(Clone, Debug)]
pub struct Adjacency {
    /// Both trees re-indexed: shared splits first in the same order, the
    /// changing split last.
    pub t1: TrivalentTree,
    pub t2: TrivalentTree,
    /// Leaf blocks `[I, J, K, L]`; the changing split is `I+J | K+L` in
    /// `t1` and `I+L | J+K` in `t2`.
    pub blocks: [Vec<usize>; 4],
    /// Edges leading to `I, J, K, L` (same index in both trees).
    pub flanks: [usize; 4],
}

impl Adjacency {
    pub fn changing_edge(&self) -> usize {
        self.t1.num_edges() - 1
    }
}

/// Decide whether two trees differ by one interchange, and if so describe how.
pub fn adjacency(t1: &TrivalentTree, t2: &TrivalentTree) -> Result<Adjacency> {
    if t1.m != t2.m {
        return invalid("trees have different leaf counts");
    }
    let m = t1.m;
    let s2: BTreeSet<LeafSet> = t2.splits.iter().copied().collect();
    let mut shared: Vec<LeafSet> = t1.splits.iter().copied().filter(|s| s2.contains(s)).collect();
    if shared.len() != m - 4 {
        return Err(Error::NotAdjacent);
    }
    shared.sort_by_key(|&s| lex_key(s));
    let a1 = *t1.splits.iter().find(|s| !shared.contains(s)).expect("one changing split");
    let a2 = *t2.splits.iter().find(|s| !shared.contains(s)).expect("one changing split");

    let (x1, x2) = t1.children(a1).expect("trivalent tree");
    let (y1, y2) = t1.children(full(m) & !a1).expect("trivalent tree");
    let blocks = [x1, x2, y1, y2];
    // The changing split of t2 must pair one block of each side.
    let side2 = [a2, full(m) & !a2];
    let mut pairing = None;
    for &x in &[x1, x2] {
        for &y in &[y1, y2] {
            if side2.contains(&(x | y)) {
                pairing = Some((x, y));
            }
        }
    }
    let Some((px, py)) = pairing else {
        return Err(Error::NotAdjacent);
    };
    // I: the block holding the smallest leaf; J its sibling in t1; L its
    // partner in t2; K the rest.
    let i_block = *blocks.iter().min_by_key(|b| b.trailing_zeros()).expect("four blocks");
    let sibling = |b: LeafSet| {
        if b == x1 {
            x2
        } else if b == x2 {
            x1
        } else if b == y1 {
            y2
        } else {
            y1
        }
    };
    let partner = |b: LeafSet| {
        if b == px {
            py
        } else if b == py {
            px
        } else {
            let (ox, oy) = (sibling(px), sibling(py));
            if b == ox {
                oy
            } else {
                ox
            }
        }
    };
    let j_block = sibling(i_block);
    let l_block = partner(i_block);
    let k_block = sibling(l_block);

    let mut splits1 = shared.clone();
    splits1.push(a1);
    let mut splits2 = shared;
    splits2.push(a2);
    let t1 = TrivalentTree { m, splits: splits1 };
    let t2 = TrivalentTree { m, splits: splits2 };
    let blocks = [i_block, j_block, k_block, l_block];
    let flanks = blocks.map(|b| t1.edge_of_side(b).expect("block is an edge side"));
    debug_assert!(flanks.iter().all(|&e| t2.edge_of_side(t2.edge_side(e).unwrap()) == Some(e)));
    Ok(Adjacency { t1, t2, blocks: blocks.map(leaves_of), flanks })
}

/// Weight `sum over interior edges of (1 - d_e)`.
pub fn interior_weight(t: &TrivalentTree) -> RatVec {
    let n = num_pairs(t.m);
    let mut w = RatVec::zeros(n);
    for e in t.m..t.num_edges() {
        let d = t.tree_distance(e).expect("valid edge");
        let u: RatVec = d.iter().map(|x| Rat::one() - x).collect();
        w = &w + &u;
    }
    w
}

/// Whether the interior weight of `t` selects `p_ik p_jl` in every Plücker
/// quadric, i.e. whether the tree's cone lies in the Gröbner cone of the
/// order whose leading terms are the crossing monomials.
pub fn check_groebner_cone(t: &TrivalentTree) -> bool {
    let m = t.m;
    let w = RatMat::from_rows(vec![interior_weight(t)]).expect("one row");
    let quads = plucker_quadrics(m).expect("m >= 4");
    let mut q = quads.iter();
    for i in 1..=m {
        for j in i + 1..=m {
            for k in j + 1..=m {
                for l in k + 1..=m {
                    let f = q.next().expect("one quadric per quadruple");
                    let init = initial_form(f, &w, TermOrder::Lex).expect("nonzero quadric");
                    let mut crossing = vec![0u32; num_pairs(m)];
                    crossing[pair_index(m, i, k)] += 1;
                    crossing[pair_index(m, j, l)] += 1;
                    if !init.terms().contains_key(&crossing) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// A relabeling `perm` (leaf `i` becomes `perm[i-1]`) after which both trees
/// pass [`check_groebner_cone`].
///
/// Leaves are numbered along a planar embedding in which the four blocks of
/// the adjacency appear in the order `I, J, K, L`.
pub fn groebner_relabel(t1: &TrivalentTree, t2: &TrivalentTree) -> Result<Vec<usize>> {
    let adj = match adjacency(t1, t2) {
        Ok(a) => a,
        Err(Error::NotAdjacent) => return invalid("groebner_relabel needs adjacent trees"),
        Err(e) => return Err(e),
    };
    let t = &adj.t1;
    let mut order = Vec::with_capacity(t.m);
    for b in &adj.blocks {
        t.order_cluster(leaf_set(b), &mut order);
    }
    let mut perm = vec![0; t.m];
    for (pos, &leaf) in order.iter().enumerate() {
        perm[leaf - 1] = pos + 1;
    }
    let ok = check_groebner_cone(&t1.relabel(&perm)?) && check_groebner_cone(&t2.relabel(&perm)?);
    if !ok {
        return Err(Error::TheoremViolation {
            what: format!("relabeling {perm:?} does not place both trees in the Gröbner cone"),
            witness: None,
        });
    }
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(m: usize, splits: &[&[usize]]) -> TrivalentTree {
        TrivalentTree::new(m, &splits.iter().map(|s| s.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn pair_indices_are_lexicographic() {
        let m = 5;
        for (k, (i, j)) in pairs(m).into_iter().enumerate() {
            assert_eq!(pair_index(m, i, j), k);
            assert_eq!(pair_index(m, j, i), k);
        }
    }

    #[test]
    fn canonical_sides() {
        let t = tree(5, &[&[1, 2, 3], &[3, 4, 5]]);
        assert_eq!(t.splits(), vec![vec![4, 5], vec![1, 2]]);
        let t4 = tree(4, &[&[3, 4]]);
        assert_eq!(t4.splits(), vec![vec![1, 2]]);
    }

    #[test]
    fn rejects_bad_split_systems() {
        assert!(TrivalentTree::new(5, &[vec![1, 2], vec![1, 3]]).is_err());
        assert!(TrivalentTree::new(5, &[vec![1, 2]]).is_err());
        assert!(TrivalentTree::new(5, &[vec![1], vec![1, 2]]).is_err());
        assert!(TrivalentTree::new(3, &[]).is_err());
    }

    #[test]
    fn tree_distance_rows() {
        let t = tree(4, &[&[1, 2]]);
        let ints = |v: RatVec| v.iter().map(|x| x.to_f64() as i64).collect::<Vec<_>>();
        assert_eq!(ints(t.tree_distance(4).unwrap()), vec![0, 1, 1, 1, 1, 0]);
        assert_eq!(ints(t.tree_distance(1).unwrap()), vec![1, 0, 0, 1, 1, 0]);
        assert!(t.tree_distance(5).is_err());
    }

    #[test]
    fn small_enumerations() {
        let t4 = enumerate_trees(4).unwrap();
        let s: Vec<_> = t4.iter().map(|t| t.splits()).collect();
        assert_eq!(s, vec![vec![vec![1, 2]], vec![vec![1, 3]], vec![vec![1, 4]]]);
        assert_eq!(enumerate_trees(5).unwrap().len(), 15);
        assert!(enumerate_trees(3).is_err());
    }

    #[test]
    fn interior_vertex_structure() {
        let t = tree(6, &[&[1, 2], &[5, 6], &[1, 2, 3]]);
        let vs = t.interior_vertices();
        assert_eq!(vs.len(), 4);
        let mut deg = vec![0; t.num_edges()];
        for v in &vs {
            for &e in v {
                deg[e] += 1;
            }
        }
        assert!(deg[..6].iter().all(|&d| d == 1));
        assert!(deg[6..].iter().all(|&d| d == 2));
    }

    #[test]
    fn adjacency_of_four_leaf_trees() {
        let a = adjacency(&tree(4, &[&[1, 2]]), &tree(4, &[&[1, 4]])).unwrap();
        assert_eq!(a.blocks, [vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(a.flanks, [0, 1, 2, 3]);
        assert_eq!(a.changing_edge(), 4);
        let t = tree(4, &[&[1, 2]]);
        assert!(matches!(adjacency(&t, &t), Err(Error::NotAdjacent)));
    }

    #[test]
    fn adjacency_of_five_leaf_trees() {
        let t1 = tree(5, &[&[1, 2], &[4, 5]]);
        let t2 = tree(5, &[&[4, 5], &[2, 3]]);
        let a = adjacency(&t1, &t2).unwrap();
        assert_eq!(a.t1.splits(), vec![vec![4, 5], vec![1, 2]]);
        assert_eq!(a.t2.splits(), vec![vec![4, 5], vec![2, 3]]);
        assert_eq!(a.blocks, [vec![1], vec![2], vec![3], vec![4, 5]]);
        assert_eq!(a.flanks, [0, 1, 2, 5]);
    }

    #[test]
    fn groebner_cone_examples() {
        assert!(check_groebner_cone(&tree(4, &[&[1, 2]])));
        assert!(check_groebner_cone(&tree(4, &[&[1, 4]])));
        assert!(!check_groebner_cone(&tree(4, &[&[1, 3]])));
        assert!(check_groebner_cone(&tree(5, &[&[4, 5], &[1, 2]])));
    }

    #[test]
    fn planar_order_makes_splits_intervals() {
        for t in enumerate_trees(6).unwrap() {
            let order = t.planar_order();
            let mut perm = vec![0; 6];
            for (p, &l) in order.iter().enumerate() {
                perm[l - 1] = p + 1;
            }
            assert!(check_groebner_cone(&t.relabel(&perm).unwrap()), "{t:?}");
        }
    }
}
