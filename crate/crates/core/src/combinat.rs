//! Linear orders, integer compositions, and rooted binary trees, together
//! with the elementary constructions the Hopf formulas consume: block
//! insertions, composition splitting, Catalan enumeration, binary search
//! labeling and Loday coordinates.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formal::{GroundSet, Label};

/// A sequence of distinct atom labels, least first.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearOrder(Vec<Label>);

impl LinearOrder {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Label>,
    {
        let v: Vec<Label> = labels.into_iter().map(Into::into).collect();
        let set: std::collections::BTreeSet<&Label> = v.iter().collect();
        if set.len() != v.len() {
            return Err(Error::InvalidInput(format!(
                "linear order has repeated labels: {v:?}"
            )));
        }
        Ok(LinearOrder(v))
    }

    pub fn empty() -> Self {
        LinearOrder(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.0.iter().cloned())
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l == label)
    }

    /// Restriction to `subset`, keeping this order's relative order.
    pub fn restrict(&self, subset: &GroundSet) -> LinearOrder {
        LinearOrder(
            self.0
                .iter()
                .filter(|l| subset.contains(l))
                .cloned()
                .collect(),
        )
    }

    /// Splits `subset` into maximal runs that are contiguous in this order.
    pub fn maximal_intervals(&self, subset: &GroundSet) -> Vec<LinearOrder> {
        let mut runs = Vec::new();
        let mut current: Vec<Label> = Vec::new();
        for l in &self.0 {
            if subset.contains(l) {
                current.push(l.clone());
            } else if !current.is_empty() {
                runs.push(LinearOrder(std::mem::take(&mut current)));
            }
        }
        if !current.is_empty() {
            runs.push(LinearOrder(current));
        }
        runs
    }

    pub fn reversed(&self) -> LinearOrder {
        LinearOrder(self.0.iter().rev().cloned().collect())
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "<")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// All |S|+1 block insertions of `m` into `ell`: the i-th result inserts all
/// of `m` contiguously after position i of `ell`.
pub fn block_insertions(ell: &LinearOrder, m: &LinearOrder) -> Result<Vec<LinearOrder>> {
    if ell.is_empty() || m.is_empty() {
        return Err(Error::InvalidInput(
            "block insertion requires nonempty orders".into(),
        ));
    }
    if !ell.ground().is_disjoint(&m.ground()) {
        return Err(Error::OverlappingGround(format!("{ell} and {m}")));
    }
    let mut out = Vec::with_capacity(ell.len() + 1);
    for i in 0..=ell.len() {
        let mut v = Vec::with_capacity(ell.len() + m.len());
        v.extend_from_slice(&ell.labels()[..i]);
        v.extend_from_slice(m.labels());
        v.extend_from_slice(&ell.labels()[i..]);
        out.push(LinearOrder(v));
    }
    Ok(out)
}

/// A sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new<I: IntoIterator<Item = usize>>(parts: I) -> Result<Self> {
        let v: Vec<usize> = parts.into_iter().collect();
        if v.iter().any(|&p| p == 0) {
            return Err(Error::InvalidInput(format!("composition has a zero part: {v:?}")));
        }
        Ok(Composition(v))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn num_parts(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The weight |α|: sum of all parts.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// The concatenation α · β.
    pub fn concatenate(&self, beta: &Composition) -> Composition {
        let mut v = self.0.clone();
        v.extend_from_slice(&beta.0);
        Composition(v)
    }

    /// The near-concatenation α ⊙ β: the last part of α absorbs the first
    /// part of β.
    pub fn near_concatenate(&self, beta: &Composition) -> Result<Composition> {
        if self.is_empty() || beta.is_empty() {
            return Err(Error::InvalidInput(
                "near-concatenation requires nonempty compositions".into(),
            ));
        }
        let mut v = self.0.clone();
        *v.last_mut().unwrap() += beta.0[0];
        v.extend_from_slice(&beta.0[1..]);
        Ok(Composition(v))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Which joining operation undoes a [`split_composition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitKind {
    /// The cut fell on a part boundary: concatenation recovers the input.
    Concatenation,
    /// The cut fell inside a part: near-concatenation recovers the input.
    NearConcatenation,
}

/// The unique pair (α|, α/) with |α|| = s such that either concatenation or
/// near-concatenation recovers α. The cut happens at cumulative sum s.
pub fn split_composition(
    alpha: &Composition,
    s: usize,
) -> Result<(Composition, Composition, SplitKind)> {
    let w = alpha.weight();
    if s == 0 || s >= w {
        return Err(Error::InvalidInput(format!(
            "split point {s} out of range for composition of weight {w}"
        )));
    }
    let mut cum = 0usize;
    for (i, &p) in alpha.parts().iter().enumerate() {
        let next = cum + p;
        if s == next {
            // Part boundary: concatenation split.
            let left = Composition(alpha.parts()[..=i].to_vec());
            let right = Composition(alpha.parts()[i + 1..].to_vec());
            return Ok((left, right, SplitKind::Concatenation));
        }
        if s < next {
            // Cut inside part i: the part is divided between the outputs.
            let mut left = alpha.parts()[..i].to_vec();
            left.push(s - cum);
            let mut right = vec![next - s];
            right.extend_from_slice(&alpha.parts()[i + 1..]);
            return Ok((
                Composition(left),
                Composition(right),
                SplitKind::NearConcatenation,
            ));
        }
        cum = next;
    }
    unreachable!("split point within weight bounds")
}

/// All compositions of n, ordered by the binary-counter over cut points.
pub fn enumerate_compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut parts = Vec::new();
        let mut run = 1usize;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(Composition(parts));
    }
    out
}

/// A rooted binary tree: empty, or a root with left and right subtrees.
/// Drawn with the root at the bottom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootedBinaryTree {
    Leaf,
    Node(Box<RootedBinaryTree>, Box<RootedBinaryTree>),
}

use RootedBinaryTree::{Leaf, Node};

impl RootedBinaryTree {
    pub fn node(left: RootedBinaryTree, right: RootedBinaryTree) -> Self {
        Node(Box::new(left), Box::new(right))
    }

    /// Number of internal vertices.
    pub fn internal_count(&self) -> usize {
        match self {
            Leaf => 0,
            Node(l, r) => 1 + l.internal_count() + r.internal_count(),
        }
    }

    /// Number of leaves; a tree with n internal vertices has n+1 leaves.
    pub fn leaf_count(&self) -> usize {
        match self {
            Leaf => 1,
            Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Nested-parentheses encoding. A leaf is the empty string and an
    /// internal node writes its left subtree in parentheses followed by its
    /// right subtree: enc(node(l, r)) = "(" enc(l) ")" enc(r). This is the
    /// standard bijection with balanced parenthesis strings of length 2n.
    pub fn to_parens(&self) -> String {
        fn go(t: &RootedBinaryTree, out: &mut String) {
            if let Node(l, r) = t {
                out.push('(');
                go(l, out);
                out.push(')');
                go(r, out);
            }
        }
        let mut s = String::new();
        go(self, &mut s);
        s
    }

    /// Parses the [`RootedBinaryTree::to_parens`] encoding.
    pub fn from_parens(s: &str) -> Result<RootedBinaryTree> {
        fn parse(bytes: &[u8], pos: &mut usize) -> Result<RootedBinaryTree> {
            if *pos >= bytes.len() || bytes[*pos] != b'(' {
                return Ok(Leaf);
            }
            *pos += 1; // '('
            let left = parse(bytes, pos)?;
            if *pos >= bytes.len() || bytes[*pos] != b')' {
                return Err(Error::Parse {
                    pos: *pos,
                    msg: "expected ')'".into(),
                });
            }
            *pos += 1; // ')'
            let right = parse(bytes, pos)?;
            Ok(RootedBinaryTree::node(left, right))
        }
        let bytes = s.trim().as_bytes();
        let mut pos = 0;
        let t = parse(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Parse {
                pos,
                msg: "trailing input after tree".into(),
            });
        }
        Ok(t)
    }
}

impl fmt::Display for RootedBinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_parens())
    }
}

/// All rooted binary trees with n internal vertices, each exactly once, in
/// deterministic order: the root splits its n−1 remaining internal vertices
/// as (i, n−1−i) for i = 0..n−1, recursively.
pub fn enumerate_trees(n: usize) -> Vec<RootedBinaryTree> {
    if n == 0 {
        return vec![Leaf];
    }
    let mut out = Vec::new();
    for i in 0..n {
        let lefts = enumerate_trees(i);
        let rights = enumerate_trees(n - 1 - i);
        for l in &lefts {
            for r in &rights {
                out.push(RootedBinaryTree::node(l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Catalan numbers by the standard recurrence; independent of the tree
/// enumeration above.
pub fn catalan(n: usize) -> u128 {
    let mut c = vec![0u128; n + 1];
    c[0] = 1;
    for i in 1..=n {
        for j in 0..i {
            c[i] += c[j] * c[i - 1 - j];
        }
    }
    c[n]
}

/// A rooted binary tree whose internal vertices carry labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabeledTree {
    Leaf,
    Node {
        label: Label,
        left: Box<LabeledTree>,
        right: Box<LabeledTree>,
    },
}

impl LabeledTree {
    /// Labels of internal vertices in in-order (left, root, right).
    pub fn in_order(&self) -> Vec<Label> {
        let mut out = Vec::new();
        fn go(t: &LabeledTree, out: &mut Vec<Label>) {
            if let LabeledTree::Node { label, left, right } = t {
                go(left, out);
                out.push(label.clone());
                go(right, out);
            }
        }
        go(self, &mut out);
        out
    }

    pub fn root_label(&self) -> Option<&Label> {
        match self {
            LabeledTree::Leaf => None,
            LabeledTree::Node { label, .. } => Some(label),
        }
    }
}

/// The binary search labeling of `tree` with respect to `ell`: an in-order
/// traversal assigns ell's labels to internal vertices, which places internal
/// vertex ℓ_i between leaves ℓ_{i−1} and ℓ_i.
pub fn binary_search_labeling(tree: &RootedBinaryTree, ell: &LinearOrder) -> Result<LabeledTree> {
    if tree.internal_count() != ell.len() {
        return Err(Error::InvalidInput(format!(
            "tree has {} internal vertices but order has {} labels",
            tree.internal_count(),
            ell.len()
        )));
    }
    fn go(t: &RootedBinaryTree, labels: &[Label], next: &mut usize) -> LabeledTree {
        match t {
            Leaf => LabeledTree::Leaf,
            Node(l, r) => {
                let left = go(l, labels, next);
                let label = labels[*next].clone();
                *next += 1;
                let right = go(r, labels, next);
                LabeledTree::Node {
                    label,
                    left: Box::new(left),
                    right: Box::new(right),
                }
            }
        }
    }
    let mut next = 0;
    Ok(go(tree, ell.labels(), &mut next))
}

/// The Loday point of `tree` with respect to `ell`: the coordinate at label
/// ℓ_i is l_i · r_i, the product of the numbers of leaves descending on the
/// left and right sides of internal vertex ℓ_i.
pub fn loday_vertex(tree: &RootedBinaryTree, ell: &LinearOrder) -> Result<BTreeMap<Label, i64>> {
    let labeled = binary_search_labeling(tree, ell)?;
    let mut coords = BTreeMap::new();
    // Returns the number of leaves of the subtree.
    fn go(t: &LabeledTree, coords: &mut BTreeMap<Label, i64>) -> i64 {
        match t {
            LabeledTree::Leaf => 1,
            LabeledTree::Node { label, left, right } => {
                let l = go(left, coords);
                let r = go(right, coords);
                coords.insert(label.clone(), l * r);
                l + r
            }
        }
    }
    go(&labeled, &mut coords);
    Ok(coords)
}
