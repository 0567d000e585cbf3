//! Labeled finite posets with covering-relation storage, the operations the
//! Hopf monoid of posets requires, the special families produced by the
//! Brion map (chains, layered posets, tree-shaped posets), and canonical
//! forms for unlabeling.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinat::{Composition, LinearOrder, RootedBinaryTree, binary_search_labeling};
use crate::error::{Error, Result};
use crate::formal::{Decomposition, FormalSum, GroundSet, Label};

/// Default bound on |ground| for canonical forms.
pub const CANONICAL_BOUND: usize = 12;

/// A finite labeled partial order. `covers` holds pairs (a, b) meaning
/// b covers a: a < b with nothing in between. The cover set is always the
/// transitive reduction of the order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Poset {
    ground: GroundSet,
    covers: BTreeSet<(Label, Label)>,
}

impl<'de> Deserialize<'de> for Poset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ground: GroundSet,
            covers: Vec<(Label, Label)>,
        }
        let raw = Raw::deserialize(d)?;
        Poset::from_relations(raw.ground, &raw.covers).map_err(serde::de::Error::custom)
    }
}

/// Index-based view used internally: strict-less matrix over sorted labels.
struct Indexed {
    labels: Vec<Label>,
    lt: Vec<Vec<bool>>,
}

impl Indexed {
    fn index(&self, label: &str) -> usize {
        self.labels.iter().position(|l| l == label).expect("label in ground")
    }
}

fn transitive_close(lt: &mut [Vec<bool>]) {
    let n = lt.len();
    for k in 0..n {
        for i in 0..n {
            if lt[i][k] {
                for j in 0..n {
                    if lt[k][j] {
                        lt[i][j] = true;
                    }
                }
            }
        }
    }
}

/// Covers of a strict order given as a closed less-matrix.
fn covers_of(lt: &[Vec<bool>], labels: &[Label]) -> BTreeSet<(Label, Label)> {
    let n = lt.len();
    let mut covers = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if lt[i][j] && !(0..n).any(|k| lt[i][k] && lt[k][j]) {
                covers.insert((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    covers
}

impl Poset {
    /// Builds a poset from arbitrary strict relations a < b; the transitive
    /// closure is computed and reduced to covers. Fails on cycles or labels
    /// outside the ground set.
    pub fn from_relations(ground: GroundSet, relations: &[(Label, Label)]) -> Result<Poset> {
        let labels = ground.labels();
        let n = labels.len();
        let idx: BTreeMap<&Label, usize> =
            labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut lt = vec![vec![false; n]; n];
        for (a, b) in relations {
            let (ia, ib) = match (idx.get(a), idx.get(b)) {
                (Some(&ia), Some(&ib)) => (ia, ib),
                _ => {
                    return Err(Error::InvalidPoset(format!(
                        "relation ({a},{b}) uses a label outside {ground}"
                    )))
                }
            };
            if ia == ib {
                return Err(Error::InvalidPoset(format!("reflexive relation on {a}")));
            }
            lt[ia][ib] = true;
        }
        transitive_close(&mut lt);
        for i in 0..n {
            for j in 0..n {
                if lt[i][j] && lt[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "cycle through {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let covers = covers_of(&lt, &labels);
        Ok(Poset { ground, covers })
    }

    /// The antichain: no relations.
    pub fn antichain(ground: GroundSet) -> Poset {
        Poset {
            ground,
            covers: BTreeSet::new(),
        }
    }

    pub fn empty() -> Poset {
        Poset::antichain(GroundSet::empty())
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn covers(&self) -> &BTreeSet<(Label, Label)> {
        &self.covers
    }

    fn indexed(&self) -> Indexed {
        let labels = self.ground.labels();
        let n = labels.len();
        let idx: BTreeMap<&Label, usize> =
            labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut lt = vec![vec![false; n]; n];
        for (a, b) in &self.covers {
            lt[idx[a]][idx[b]] = true;
        }
        transitive_close(&mut lt);
        Indexed { labels, lt }
    }

    /// True iff a ≤ b.
    pub fn leq(&self, a: &str, b: &str) -> bool {
        if a == b {
            return self.ground.contains(a);
        }
        let ix = self.indexed();
        ix.lt[ix.index(a)][ix.index(b)]
    }

    /// True iff no element outside S lies below an element of S. Equivalent
    /// to closure under lower covers.
    pub fn is_lower_set(&self, s: &GroundSet) -> bool {
        self.covers
            .iter()
            .all(|(a, b)| !s.contains(b) || s.contains(a))
    }

    /// The induced subposet on S: relations of this poset that only relate
    /// elements of S, with covers recomputed.
    pub fn restrict(&self, s: &GroundSet) -> Poset {
        let ix = self.indexed();
        let kept: Vec<usize> = (0..ix.labels.len())
            .filter(|&i| s.contains(&ix.labels[i]))
            .collect();
        let labels: Vec<Label> = kept.iter().map(|&i| ix.labels[i].clone()).collect();
        let m = kept.len();
        let mut lt = vec![vec![false; m]; m];
        for a in 0..m {
            for b in 0..m {
                lt[a][b] = ix.lt[kept[a]][kept[b]];
            }
        }
        let covers = covers_of(&lt, &labels);
        Poset {
            ground: GroundSet::new(labels),
            covers,
        }
    }

    /// Disjoint union: no relations between the two parts.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        let ground = self.ground.disjoint_union(&other.ground)?;
        let covers = self.covers.union(&other.covers).cloned().collect();
        Ok(Poset { ground, covers })
    }

    /// The subposet on {w : w ≥ v}.
    pub fn upset(&self, v: &str) -> Result<Poset> {
        if !self.ground.contains(v) {
            return Err(Error::InvalidPoset(format!("unknown label {v}")));
        }
        let ix = self.indexed();
        let iv = ix.index(v);
        let members = GroundSet::new(
            (0..ix.labels.len())
                .filter(|&i| i == iv || ix.lt[iv][i])
                .map(|i| ix.labels[i].clone()),
        );
        Ok(self.restrict(&members))
    }

    fn upper_covers(&self, v: &str) -> Vec<&Label> {
        self.covers
            .iter()
            .filter(|(a, _)| a == v)
            .map(|(_, b)| b)
            .collect()
    }

    fn lower_covers(&self, v: &str) -> Vec<&Label> {
        self.covers
            .iter()
            .filter(|(_, b)| b == v)
            .map(|(a, _)| a)
            .collect()
    }

    /// Number of elements not covered by any other element.
    pub fn maximal_count(&self) -> usize {
        self.ground
            .iter()
            .filter(|v| self.upper_covers(v).is_empty())
            .count()
    }

    /// Labels of minimal elements.
    pub fn minimal_elements(&self) -> Vec<Label> {
        self.ground
            .iter()
            .filter(|v| self.lower_covers(v).is_empty())
            .cloned()
            .collect()
    }

    /// True iff the Hasse diagram is connected as a graph. The empty poset
    /// counts as connected.
    pub fn is_connected(&self) -> bool {
        let labels = self.ground.labels();
        if labels.len() <= 1 {
            return true;
        }
        let idx: BTreeMap<&Label, usize> =
            labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut adj = vec![Vec::new(); labels.len()];
        for (a, b) in &self.covers {
            adj[idx[a]].push(idx[b]);
            adj[idx[b]].push(idx[a]);
        }
        let mut seen = vec![false; labels.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// True iff any two elements are comparable.
    pub fn is_chain(&self) -> bool {
        let ix = self.indexed();
        let n = ix.labels.len();
        (0..n).all(|i| (0..n).all(|j| i == j || ix.lt[i][j] || ix.lt[j][i]))
    }

    /// Renames every label through `map`, which must be injective on the
    /// ground set.
    pub fn relabel(&self, map: &BTreeMap<Label, Label>) -> Result<Poset> {
        let rename = |l: &Label| -> Result<Label> {
            map.get(l)
                .cloned()
                .ok_or_else(|| Error::InvalidPoset(format!("no image for label {l}")))
        };
        let mut ground = GroundSet::empty();
        for l in self.ground.iter() {
            if !ground.insert(rename(l)?) {
                return Err(Error::InvalidPoset("relabeling is not injective".into()));
            }
        }
        let mut covers = BTreeSet::new();
        for (a, b) in &self.covers {
            covers.insert((rename(a)?, rename(b)?));
        }
        Ok(Poset { ground, covers })
    }

    /// Graphviz DOT rendering of the Hasse diagram, minimum drawn at bottom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n  edge [arrowhead=none];\n");
        for l in self.ground.iter() {
            out.push_str(&format!("  \"{l}\";\n"));
        }
        for (a, b) in &self.covers {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Longest-chain-below depth of every element (minimal elements at 0).
    fn depths(&self) -> BTreeMap<Label, usize> {
        let ix = self.indexed();
        let n = ix.labels.len();
        let mut depth = vec![0usize; n];
        // lt is acyclic; iterate to a fixed point (n is tiny).
        let mut changed = true;
        while changed {
            changed = false;
            for (a, b) in &self.covers {
                let (ia, ib) = (ix.index(a), ix.index(b));
                if depth[ib] < depth[ia] + 1 {
                    depth[ib] = depth[ia] + 1;
                    changed = true;
                }
            }
        }
        ix.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), depth[i]))
            .collect()
    }

    /// True when the Hasse diagram is a tree rooted at a unique minimum with
    /// every element covered by at most two others.
    pub fn is_rbt_shaped(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        if self.minimal_elements().len() != 1 {
            return false;
        }
        self.ground.iter().all(|v| {
            let lower = self.lower_covers(v).len();
            let upper = self.upper_covers(v).len();
            upper <= 2 && (lower == 1 || (lower == 0 && self.minimal_elements()[0] == *v))
        })
    }

    /// Canonical code of the rooted tree hanging (upward) from `v`; two
    /// elements of an RBT-shaped poset have isomorphic upsets exactly when
    /// their codes agree.
    fn upset_tree_code(&self, v: &str) -> String {
        let mut children: Vec<String> = self
            .upper_covers(v)
            .iter()
            .map(|c| self.upset_tree_code(c))
            .collect();
        children.sort();
        format!("({})", children.join(""))
    }

    /// Number of symmetric elements: elements covered by exactly two
    /// elements whose upsets are isomorphic. Only defined on RBT-shaped
    /// posets.
    pub fn symmetric_count(&self) -> Result<usize> {
        if !self.is_rbt_shaped() {
            return Err(Error::InvalidInput(
                "symmetric_count requires an RBT-shaped poset".into(),
            ));
        }
        Ok(self
            .ground
            .iter()
            .filter(|v| {
                let up = self.upper_covers(v);
                up.len() == 2 && self.upset_tree_code(up[0]) == self.upset_tree_code(up[1])
            })
            .count())
    }

    /// True when every element is maximal or symmetric, i.e. when
    /// n − m(p) − s(p) = 0 (RBT-shaped posets only). Such posets are the
    /// complete binary trees on 2^k − 1 nodes.
    pub fn is_totally_symmetric(&self) -> Result<bool> {
        let s = self.symmetric_count()?;
        Ok(self.maximal_count() + s == self.len())
    }

    /// If this poset is layered (complete covers between consecutive depth
    /// levels and nothing else), returns the level sizes bottom-up.
    pub fn layered_composition(&self) -> Option<Composition> {
        if self.is_empty() {
            return None;
        }
        let depths = self.depths();
        let max_depth = *depths.values().max().unwrap();
        let mut levels: Vec<Vec<&Label>> = vec![Vec::new(); max_depth + 1];
        for (l, d) in &depths {
            levels[*d].push(l);
        }
        // Every consecutive pair fully covered, nothing else.
        let mut expected = BTreeSet::new();
        for d in 0..max_depth {
            for a in &levels[d] {
                for b in &levels[d + 1] {
                    expected.insert(((*a).clone(), (*b).clone()));
                }
            }
        }
        if expected != self.covers {
            return None;
        }
        Composition::new(levels.iter().map(|lv| lv.len())).ok()
    }

    /// Canonical form with the default size bound.
    pub fn canonical_form(&self) -> Result<UnlabeledPoset> {
        self.canonical_form_bounded(CANONICAL_BOUND)
    }

    /// Canonical relabeling by 0..n: isomorphic posets yield equal results.
    /// Invariant refinement first, then minimization over the residual
    /// class-respecting permutations.
    pub fn canonical_form_bounded(&self, bound: usize) -> Result<UnlabeledPoset> {
        let n = self.len();
        if n > bound {
            return Err(Error::BoundExceeded(format!(
                "canonical form on {n} elements exceeds bound {bound}"
            )));
        }
        if self.covers.is_empty() {
            return Ok(UnlabeledPoset {
                n,
                covers: BTreeSet::new(),
            });
        }
        let ix = self.indexed();
        let idx: BTreeMap<&Label, usize> =
            ix.labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for (a, b) in &self.covers {
            up[idx[a]].push(idx[b]);
            down[idx[b]].push(idx[a]);
        }

        // Initial isomorphism-invariant colors: cover degrees plus the sizes
        // of the principal down- and up-sets.
        let downset_size: Vec<usize> = (0..n)
            .map(|i| (0..n).filter(|&j| ix.lt[j][i]).count())
            .collect();
        let upset_size: Vec<usize> = (0..n)
            .map(|i| (0..n).filter(|&j| ix.lt[i][j]).count())
            .collect();
        let initial: Vec<(usize, usize, usize, usize)> = (0..n)
            .map(|i| (down[i].len(), up[i].len(), downset_size[i], upset_size[i]))
            .collect();
        let mut colors = rank_by_sorted(&initial);

        // Refine by neighbor color multisets until stable.
        loop {
            let sig: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
                .map(|i| {
                    let mut d: Vec<usize> = down[i].iter().map(|&j| colors[j]).collect();
                    let mut u: Vec<usize> = up[i].iter().map(|&j| colors[j]).collect();
                    d.sort_unstable();
                    u.sort_unstable();
                    (colors[i], d, u)
                })
                .collect();
            let next = rank_by_sorted(&sig);
            if next == colors {
                break;
            }
            colors = next;
        }

        // Vertices grouped by color; canonical positions list the color
        // classes in color order.
        let num_colors = colors.iter().max().unwrap() + 1;
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); num_colors];
        for (v, &c) in colors.iter().enumerate() {
            classes[c].push(v);
        }
        let class_start: Vec<usize> = classes
            .iter()
            .scan(0usize, |acc, c| {
                let s = *acc;
                *acc += c.len();
                Some(s)
            })
            .collect();

        let mut best: Option<BTreeSet<(usize, usize)>> = None;
        let perms_per_class: Vec<Vec<Vec<usize>>> = classes
            .iter()
            .map(|c| c.iter().copied().permutations(c.len()).collect())
            .collect();
        for choice in perms_per_class.iter().multi_cartesian_product() {
            // position of each original vertex
            let mut pos = vec![0usize; n];
            for (ci, perm) in choice.iter().enumerate() {
                for (k, &v) in perm.iter().enumerate() {
                    pos[v] = class_start[ci] + k;
                }
            }
            let relabeled: BTreeSet<(usize, usize)> = self
                .covers
                .iter()
                .map(|(a, b)| (pos[idx[a]], pos[idx[b]]))
                .collect();
            if best.as_ref().is_none_or(|b| relabeled < *b) {
                best = Some(relabeled);
            }
        }
        Ok(UnlabeledPoset {
            n,
            covers: best.unwrap(),
        })
    }
}

/// Assigns ranks 0.. to the values by their sorted order.
fn rank_by_sorted<T: Ord + Clone>(values: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap())
        .collect()
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poset{{")?;
        let mut first = true;
        let mut covered: BTreeSet<&Label> = BTreeSet::new();
        for (a, b) in &self.covers {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{a}<{b}")?;
            covered.insert(a);
            covered.insert(b);
            first = false;
        }
        for l in self.ground.iter() {
            if !covered.contains(l) {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{l}")?;
                first = false;
            }
        }
        write!(f, "}}")
    }
}

/// An isomorphism class of posets: the canonical representative on the
/// ground set 0..n.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct UnlabeledPoset {
    n: usize,
    covers: BTreeSet<(usize, usize)>,
}

impl UnlabeledPoset {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn covers(&self) -> &BTreeSet<(usize, usize)> {
        &self.covers
    }

    /// Materializes the canonical representative with labels "1".."n".
    pub fn to_poset(&self) -> Poset {
        let ground = GroundSet::new((1..=self.n).map(|i| i.to_string()));
        let relations: Vec<(Label, Label)> = self
            .covers
            .iter()
            .map(|(a, b)| ((a + 1).to_string(), (b + 1).to_string()))
            .collect();
        Poset::from_relations(ground, &relations).expect("canonical covers form a poset")
    }

    pub fn is_chain(&self) -> bool {
        self.to_poset().is_chain()
    }

    pub fn is_connected(&self) -> bool {
        self.to_poset().is_connected()
    }

    pub fn maximal_count(&self) -> usize {
        self.to_poset().maximal_count()
    }

    pub fn symmetric_count(&self) -> Result<usize> {
        self.to_poset().symmetric_count()
    }

    pub fn is_rbt_shaped(&self) -> bool {
        self.to_poset().is_rbt_shaped()
    }

    pub fn is_totally_symmetric(&self) -> Result<bool> {
        self.to_poset().is_totally_symmetric()
    }

    pub fn layered_composition(&self) -> Option<Composition> {
        self.to_poset().layered_composition()
    }

    pub fn to_dot(&self) -> String {
        self.to_poset().to_dot()
    }
}

impl fmt::Display for UnlabeledPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class[n={}; ", self.n)?;
        for (i, (a, b)) in self.covers.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}<{}", a + 1, b + 1)?;
        }
        write!(f, "]")
    }
}

/// The coproduct of the Hopf monoid of posets: p|_S ⊗ p|_T when S is a lower
/// set of p, zero otherwise.
pub fn poset_coproduct(p: &Poset, d: &Decomposition) -> Result<FormalSum<(Poset, Poset)>> {
    if d.ground() != *p.ground() {
        return Err(Error::GroundMismatch(format!(
            "decomposition of {} applied to poset on {}",
            d.ground(),
            p.ground()
        )));
    }
    if p.is_lower_set(d.s()) {
        Ok(FormalSum::singleton((p.restrict(d.s()), p.restrict(d.t()))))
    } else {
        Ok(FormalSum::zero())
    }
}

/// The chain ℓ_1 < ℓ_2 < … < ℓ_n.
pub fn chain_from_order(ell: &LinearOrder) -> Poset {
    let labels = ell.labels();
    let relations: Vec<(Label, Label)> = labels
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    Poset::from_relations(ell.ground(), &relations).expect("chains are posets")
}

/// All |I|! chains on the ground set.
pub fn all_chains(ground: &GroundSet) -> Vec<Poset> {
    ground
        .labels()
        .into_iter()
        .permutations(ground.len())
        .map(|p| chain_from_order(&LinearOrder::new(p).expect("permutation has no repeats")))
        .collect()
}

/// The layered poset with level i = labels[i] (bottom first) and all
/// covering relations between consecutive levels.
pub fn layered_poset(lambda: &Composition, level_labels: &[Vec<Label>]) -> Result<Poset> {
    if lambda.num_parts() != level_labels.len() {
        return Err(Error::InvalidInput(format!(
            "composition has {} parts but {} label blocks given",
            lambda.num_parts(),
            level_labels.len()
        )));
    }
    for (i, (&part, block)) in lambda.parts().iter().zip(level_labels).enumerate() {
        if part != block.len() {
            return Err(Error::InvalidInput(format!(
                "level {i} should have {part} labels, got {}",
                block.len()
            )));
        }
    }
    let mut ground = GroundSet::empty();
    for block in level_labels {
        for l in block {
            if !ground.insert(l.clone()) {
                return Err(Error::InvalidInput(format!("repeated label {l}")));
            }
        }
    }
    let mut relations = Vec::new();
    for w in level_labels.windows(2) {
        for a in &w[0] {
            for b in &w[1] {
                relations.push((a.clone(), b.clone()));
            }
        }
    }
    Poset::from_relations(ground, &relations)
}

/// The unlabeled layered poset p(λ).
pub fn layered_class(lambda: &Composition) -> UnlabeledPoset {
    let mut blocks = Vec::new();
    let mut next = 0usize;
    for &part in lambda.parts() {
        blocks.push(
            (0..part)
                .map(|_| {
                    next += 1;
                    format!("v{next:03}")
                })
                .collect::<Vec<_>>(),
        );
    }
    layered_poset(lambda, &blocks)
        .expect("sizes match")
        .canonical_form()
        .expect("weight within bound")
}

/// The poset of a binary-search-labeled tree: the Hasse diagram is the
/// internal-vertex tree with the root as unique minimum.
pub fn rbt_poset(tree: &RootedBinaryTree, ell: &LinearOrder) -> Result<Poset> {
    let labeled = binary_search_labeling(tree, ell)?;
    let mut relations = Vec::new();
    fn go(t: &crate::combinat::LabeledTree, relations: &mut Vec<(Label, Label)>) {
        if let crate::combinat::LabeledTree::Node { label, left, right } = t {
            for child in [left, right] {
                if let crate::combinat::LabeledTree::Node { label: cl, .. } = child.as_ref() {
                    relations.push((label.clone(), cl.clone()));
                }
                go(child, relations);
            }
        }
    }
    go(&labeled, &mut relations);
    Poset::from_relations(ell.ground(), &relations)
}

/// All labeled posets on the ground set, by exhaustive search over
/// orientations of each unordered pair. Bounded to |I| ≤ 6.
pub fn enumerate_posets(ground: &GroundSet) -> Result<Vec<Poset>> {
    let labels = ground.labels();
    let n = labels.len();
    if n > 6 {
        return Err(Error::BoundExceeded(format!(
            "poset enumeration on {n} > 6 elements"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    // Each unordered pair is unrelated, i<j, or j<i.
    let mut state = vec![0u8; pairs.len()];
    loop {
        let mut lt = vec![vec![false; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            match state[k] {
                1 => lt[i][j] = true,
                2 => lt[j][i] = true,
                _ => {}
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| {
                !lt[i][j] || (0..n).all(|k| !lt[j][k] || lt[i][k])
            })
        });
        if transitive {
            let covers = covers_of(&lt, &labels);
            out.push(Poset {
                ground: ground.clone(),
                covers,
            });
        }
        // odometer over {0,1,2}^pairs
        let mut k = 0;
        loop {
            if k == state.len() {
                return Ok(out);
            }
            state[k] += 1;
            if state[k] < 3 {
                break;
            }
            state[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_trees;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied())
    }

    fn chain(labels: &[&str]) -> Poset {
        chain_from_order(&LinearOrder::new(labels.iter().copied()).unwrap())
    }

    fn rel(pairs: &[(&str, &str)]) -> Vec<(Label, Label)> {
        pairs
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    #[test]
    fn lower_sets_of_chain() {
        let p = chain(&["a", "b", "c"]);
        assert!(p.is_lower_set(&g(&["a"])));
        assert!(!p.is_lower_set(&g(&["b"])));
        assert!(p.is_lower_set(&g(&["a", "b"])));
        assert!(p.is_lower_set(&g(&[])));
        assert!(p.is_lower_set(&g(&["a", "b", "c"])));
    }

    #[test]
    fn lower_set_example_with_two_minima() {
        // c and d at the bottom, a above c, b above both c and d.
        let p = Poset::from_relations(
            g(&["a", "b", "c", "d"]),
            &rel(&[("c", "a"), ("c", "b"), ("d", "b")]),
        )
        .unwrap();
        assert!(p.is_lower_set(&g(&["c", "d"])));
        assert!(!p.is_lower_set(&g(&["b", "d"])));
    }

    #[test]
    fn restrict_chain_keeps_inherited_relation() {
        let p = chain(&["a", "b", "c"]);
        let q = p.restrict(&g(&["a", "c"]));
        assert_eq!(q, chain(&["a", "c"]));
        assert_eq!(p.restrict(p.ground()), p);
        let anti = Poset::antichain(g(&["x", "y", "z"]));
        assert_eq!(anti.restrict(&g(&["x", "z"])), Poset::antichain(g(&["x", "z"])));
    }

    #[test]
    fn disjoint_union_basics() {
        let p = chain(&["a", "b"]);
        let q = Poset::antichain(g(&["c"]));
        let u = p.disjoint_union(&q).unwrap();
        assert_eq!(u.len(), 3);
        assert!(!u.leq("c", "a") && !u.leq("a", "c"));
        assert_eq!(u, q.disjoint_union(&p).unwrap());
        assert_eq!(Poset::empty().disjoint_union(&p).unwrap(), p);
        assert!(p.disjoint_union(&p).is_err());
    }

    #[test]
    fn coproduct_lower_set_gate() {
        let p = Poset::from_relations(
            g(&["a", "b", "c", "d"]),
            &rel(&[("c", "a"), ("c", "b"), ("d", "b")]),
        )
        .unwrap();
        let d1 = Decomposition::of_subset(p.ground(), g(&["c", "d"])).unwrap();
        let out = poset_coproduct(&p, &d1).unwrap();
        assert_eq!(out.num_terms(), 1);
        let (l, r) = out.keys().next().unwrap().clone();
        assert_eq!(l, p.restrict(&g(&["c", "d"])));
        assert_eq!(r, p.restrict(&g(&["a", "b"])));

        let d2 = Decomposition::of_subset(p.ground(), g(&["b", "d"])).unwrap();
        assert!(poset_coproduct(&p, &d2).unwrap().is_zero());

        let d3 = Decomposition::of_subset(p.ground(), g(&[])).unwrap();
        let out = poset_coproduct(&p, &d3).unwrap();
        let (l, r) = out.keys().next().unwrap().clone();
        assert!(l.is_empty());
        assert_eq!(r, p);
    }

    #[test]
    fn chains_are_counted_by_factorials() {
        let ground = g(&["a", "b", "c", "d"]);
        let chains = all_chains(&ground);
        assert_eq!(chains.len(), 24);
        let set: BTreeSet<_> = chains.iter().collect();
        assert_eq!(set.len(), 24);
        assert_eq!(all_chains(&g(&["z"])).len(), 1);
    }

    #[test]
    fn layered_poset_shapes() {
        let two = layered_poset(
            &Composition::new([1, 1]).unwrap(),
            &[vec!["a".into()], vec!["b".into()]],
        )
        .unwrap();
        assert_eq!(two, chain(&["a", "b"]));

        let anti = layered_poset(
            &Composition::new([3]).unwrap(),
            &[vec!["x".into(), "y".into(), "z".into()]],
        )
        .unwrap();
        assert_eq!(anti, Poset::antichain(g(&["x", "y", "z"])));

        // The documented five-level shape; 16 elements, so checked on the
        // labeled poset rather than its canonical class.
        let lambda = Composition::new([3, 1, 5, 2, 5]).unwrap();
        let blocks: Vec<Vec<Label>> = lambda
            .parts()
            .iter()
            .enumerate()
            .map(|(i, &p)| (0..p).map(|j| format!("n{i}_{j}")).collect())
            .collect();
        let p = layered_poset(&lambda, &blocks).unwrap();
        assert_eq!(p.len(), 16);
        assert_eq!(p.covers().len(), 3 + 5 + 10 + 10);
        assert_eq!(p.layered_composition(), Some(lambda));

        assert!(layered_poset(&Composition::new([2]).unwrap(), &[vec!["a".into()]]).is_err());
    }

    #[test]
    fn layered_composition_recovery() {
        for parts in [vec![1usize, 1], vec![2, 1], vec![1, 2], vec![2, 2], vec![3], vec![1, 1, 1]]
        {
            let lambda = Composition::new(parts).unwrap();
            assert_eq!(layered_class(&lambda).layered_composition(), Some(lambda));
        }
        // A V-shaped poset is not layered: depth levels {min}, {a,b} need all
        // covers, which holds; so the V IS layered with λ=(1,2).
        let v = Poset::from_relations(g(&["m", "a", "b"]), &rel(&[("m", "a"), ("m", "b")])).unwrap();
        assert_eq!(
            v.layered_composition(),
            Some(Composition::new([1, 2]).unwrap())
        );
        // N-shaped poset is not layered.
        let nshape = Poset::from_relations(
            g(&["a", "b", "c", "d"]),
            &rel(&[("a", "c"), ("b", "c"), ("b", "d")]),
        )
        .unwrap();
        assert_eq!(nshape.layered_composition(), None);
    }

    #[test]
    fn rbt_poset_left_comb_is_chain_with_root_min() {
        use crate::combinat::RootedBinaryTree as T;
        let t = T::node(T::node(T::node(T::Leaf, T::Leaf), T::Leaf), T::Leaf);
        let ell = LinearOrder::new(["1", "2", "3"]).unwrap();
        let p = rbt_poset(&t, &ell).unwrap();
        // root is labeled 3 and sits at the bottom
        assert_eq!(p, chain(&["3", "2", "1"]));
    }

    #[test]
    fn rbt_poset_shape_invariants() {
        for n in 1..=6usize {
            let ell = LinearOrder::new((0..n).map(|i| format!("e{i}"))).unwrap();
            let mut seen = BTreeSet::new();
            for t in enumerate_trees(n) {
                let p = rbt_poset(&t, &ell).unwrap();
                assert!(p.is_rbt_shaped());
                assert!(p.is_connected());
                assert_eq!(p.minimal_elements().len(), 1);
                assert!(seen.insert(p), "tree map must be injective for fixed ell");
            }
        }
    }

    #[test]
    fn maximal_and_symmetric_counts() {
        let c = chain(&["a", "b", "c", "d"]);
        assert_eq!(c.maximal_count(), 1);
        assert_eq!(c.symmetric_count().unwrap(), 0);

        let anti = Poset::antichain(g(&["a", "b", "c"]));
        assert_eq!(anti.maximal_count(), 3);
        assert!(anti.symmetric_count().is_err());

        let v = Poset::from_relations(g(&["m", "x", "y"]), &rel(&[("m", "x"), ("m", "y")])).unwrap();
        assert_eq!(v.maximal_count(), 2);
        assert_eq!(v.symmetric_count().unwrap(), 1);

        // Complete binary tree poset on 7 nodes: all three non-maximal nodes
        // are symmetric.
        let complete = Poset::from_relations(
            g(&["1", "2", "3", "4", "5", "6", "7"]),
            &rel(&[
                ("1", "2"),
                ("1", "3"),
                ("2", "4"),
                ("2", "5"),
                ("3", "6"),
                ("3", "7"),
            ]),
        )
        .unwrap();
        assert_eq!(complete.maximal_count(), 4);
        assert_eq!(complete.symmetric_count().unwrap(), 3);
        assert!(complete.is_totally_symmetric().unwrap());
    }

    #[test]
    fn upset_examples() {
        let c = chain(&["a", "b", "c"]);
        assert_eq!(c.upset("b").unwrap(), chain(&["b", "c"]));
        assert_eq!(c.upset("a").unwrap(), c);
        assert_eq!(c.upset("c").unwrap(), chain(&["c"]));
        assert!(c.upset("zz").is_err());
    }

    #[test]
    fn connectivity() {
        assert!(chain(&["a", "b"]).is_connected());
        assert!(Poset::antichain(g(&["a"])).is_connected());
        let two = chain(&["a", "b"])
            .disjoint_union(&Poset::antichain(g(&["c"])))
            .unwrap();
        assert!(!two.is_connected());
    }

    #[test]
    fn canonical_forms_identify_isomorphic_posets() {
        let c1 = chain(&["a", "b", "c"]);
        let c2 = chain(&["x", "z", "y"]);
        assert_eq!(c1.canonical_form().unwrap(), c2.canonical_form().unwrap());

        let anti = Poset::antichain(g(&["p", "q"]));
        assert_ne!(
            chain(&["p", "q"]).canonical_form().unwrap(),
            anti.canonical_form().unwrap()
        );

        let v1 = Poset::from_relations(g(&["a", "b", "c"]), &rel(&[("a", "b"), ("a", "c")])).unwrap();
        let v2 = Poset::from_relations(g(&["a", "b", "c"]), &rel(&[("b", "a"), ("b", "c")])).unwrap();
        assert_eq!(v1.canonical_form().unwrap(), v2.canonical_form().unwrap());
        // Lambda (inverted V) differs from V.
        let lam =
            Poset::from_relations(g(&["a", "b", "c"]), &rel(&[("a", "c"), ("b", "c")])).unwrap();
        assert_ne!(v1.canonical_form().unwrap(), lam.canonical_form().unwrap());
    }

    #[test]
    fn canonical_form_bound() {
        let big = Poset::antichain(GroundSet::new((0..13).map(|i| format!("x{i}"))));
        assert!(big.canonical_form().is_err());
        assert!(big.canonical_form_bounded(13).is_ok());
    }

    #[test]
    fn poset_counts_on_small_sets() {
        assert_eq!(enumerate_posets(&g(&[])).unwrap().len(), 1);
        assert_eq!(enumerate_posets(&g(&["a"])).unwrap().len(), 1);
        assert_eq!(enumerate_posets(&g(&["a", "b"])).unwrap().len(), 3);
        assert_eq!(enumerate_posets(&g(&["a", "b", "c"])).unwrap().len(), 19);
        assert_eq!(
            enumerate_posets(&g(&["a", "b", "c", "d"])).unwrap().len(),
            219
        );
    }

    #[test]
    fn unlabeled_poset_counts() {
        // 1, 2, 5, 16, 63 isomorphism classes on 1..5 elements.
        for (n, expect) in [(1usize, 1usize), (2, 2), (3, 5), (4, 16), (5, 63)] {
            let ground = GroundSet::new((0..n).map(|i| format!("x{i}")));
            let classes: BTreeSet<_> = enumerate_posets(&ground)
                .unwrap()
                .iter()
                .map(|p| p.canonical_form().unwrap())
                .collect();
            assert_eq!(classes.len(), expect, "n={n}");
        }
    }

    #[test]
    fn invalid_posets_rejected() {
        assert!(Poset::from_relations(g(&["a", "b"]), &rel(&[("a", "b"), ("b", "a")])).is_err());
        assert!(Poset::from_relations(g(&["a"]), &rel(&[("a", "a")])).is_err());
        assert!(Poset::from_relations(g(&["a"]), &rel(&[("a", "b")])).is_err());
    }

    #[test]
    fn poset_json_roundtrip() {
        let p = Poset::from_relations(
            g(&["a", "b", "c", "d"]),
            &rel(&[("c", "a"), ("c", "b"), ("d", "b")]),
        )
        .unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(json.contains("\"ground\""));
        assert!(json.contains("\"covers\""));
        let back: Poset = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn dot_output_mentions_edges() {
        let p = chain(&["a", "b"]);
        let dot = p.to_dot();
        assert!(dot.contains("rankdir=BT"));
        assert!(dot.contains("\"a\" -> \"b\""));
    }
}
