//! The four Hopf monoids — products of permutahedra, associahedra, orbit
//! polytopes, and posets — as bases with product, coproduct, and the
//! combinatorial Brion morphism, plus exhaustive axiom and morphism
//! checkers.
//!
//! Orbit basis elements are kept in a normal-equivalence canonical form: a
//! factor whose composition has a single part is a point, and a point on a
//! block of two or more labels is the same polytope class as the product of
//! singleton points on those labels. Such factors are always stored split
//! into singletons, so structural equality of factor sets coincides with
//! equality of polytope classes.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinat::{Composition, LinearOrder, enumerate_compositions, enumerate_trees, split_composition};
use crate::error::{Error, Result};
use crate::formal::{Decomposition, FormalSum, GroundSet, Label, rat};
use crate::poset::{Poset, all_chains, enumerate_posets, layered_poset, poset_coproduct, rbt_poset};

/// Which Hopf monoid a basis element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonoidTag {
    Perm,
    Assoc,
    Orbit,
    Poset,
}

impl fmt::Display for MonoidTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            MonoidTag::Perm => "perm",
            MonoidTag::Assoc => "assoc",
            MonoidTag::Orbit => "orbit",
            MonoidTag::Poset => "poset",
        };
        write!(f, "{name}")
    }
}

/// One orbit-polytope factor: a block and a composition of its size.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitFactor {
    pub block: GroundSet,
    pub composition: Composition,
}

/// A basis element of one of the four monoids: an unordered product of
/// atomic factors (or a single poset on the full ground set).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "monoid", rename_all = "snake_case")]
pub enum BasisElement {
    Perm { blocks: BTreeSet<GroundSet> },
    Assoc { factors: BTreeSet<LinearOrder> },
    Orbit { factors: BTreeSet<OrbitFactor> },
    Poset { poset: Poset },
}

impl<'de> Deserialize<'de> for BasisElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(tag = "monoid", rename_all = "snake_case")]
        enum Raw {
            Perm { blocks: Vec<GroundSet> },
            Assoc { factors: Vec<LinearOrder> },
            Orbit { factors: Vec<OrbitFactor> },
            Poset { poset: Poset },
        }
        let elem = match Raw::deserialize(d)? {
            Raw::Perm { blocks } => BasisElement::perm(blocks),
            Raw::Assoc { factors } => BasisElement::assoc(factors),
            Raw::Orbit { factors } => {
                BasisElement::orbit(factors.into_iter().map(|f| (f.block, f.composition)))
            }
            Raw::Poset { poset } => Ok(BasisElement::poset(poset)),
        };
        elem.map_err(serde::de::Error::custom)
    }
}

fn check_disjoint<'a>(blocks: impl Iterator<Item = &'a GroundSet>) -> Result<GroundSet> {
    let mut ground = GroundSet::empty();
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidInput("empty factor in basis element".into()));
        }
        ground = ground.disjoint_union(b)?;
    }
    Ok(ground)
}

impl BasisElement {
    /// The unit of the monoid: the empty product on I = ∅.
    pub fn unit(tag: MonoidTag) -> BasisElement {
        match tag {
            MonoidTag::Perm => BasisElement::Perm { blocks: BTreeSet::new() },
            MonoidTag::Assoc => BasisElement::Assoc { factors: BTreeSet::new() },
            MonoidTag::Orbit => BasisElement::Orbit { factors: BTreeSet::new() },
            MonoidTag::Poset => BasisElement::Poset { poset: Poset::empty() },
        }
    }

    /// The atomic permutahedron π_B.
    pub fn perm_atom(block: GroundSet) -> Result<BasisElement> {
        BasisElement::perm([block])
    }

    /// A product of permutahedra, one per block of a partition.
    pub fn perm<I: IntoIterator<Item = GroundSet>>(blocks: I) -> Result<BasisElement> {
        let blocks: BTreeSet<GroundSet> = blocks.into_iter().collect();
        check_disjoint(blocks.iter())?;
        Ok(BasisElement::Perm { blocks })
    }

    /// The atomic associahedron a_ℓ.
    pub fn assoc_atom(order: LinearOrder) -> Result<BasisElement> {
        BasisElement::assoc([order])
    }

    /// A product of associahedra, one per linear order on disjoint blocks.
    pub fn assoc<I: IntoIterator<Item = LinearOrder>>(factors: I) -> Result<BasisElement> {
        let factors: BTreeSet<LinearOrder> = factors.into_iter().collect();
        let grounds: Vec<GroundSet> = factors.iter().map(|f| f.ground()).collect();
        check_disjoint(grounds.iter())?;
        Ok(BasisElement::Assoc { factors })
    }

    /// The atomic orbit polytope class O_{α,B}. A single-part composition on
    /// a block of size ≥ 2 is a point and is stored split into singleton
    /// point factors.
    pub fn orbit_atom(block: GroundSet, composition: Composition) -> Result<BasisElement> {
        BasisElement::orbit([(block, composition)])
    }

    /// A product of orbit polytope classes.
    pub fn orbit<I: IntoIterator<Item = (GroundSet, Composition)>>(
        factors: I,
    ) -> Result<BasisElement> {
        let mut set = BTreeSet::new();
        for (block, composition) in factors {
            if composition.weight() != block.len() {
                return Err(Error::InvalidInput(format!(
                    "composition {composition} does not sum to block size {}",
                    block.len()
                )));
            }
            push_orbit_factor(&mut set, block, composition);
        }
        let blocks: Vec<GroundSet> = set.iter().map(|f| f.block.clone()).collect();
        check_disjoint(blocks.iter())?;
        Ok(BasisElement::Orbit { factors: set })
    }

    /// A poset basis element.
    pub fn poset(poset: Poset) -> BasisElement {
        BasisElement::Poset { poset }
    }

    pub fn tag(&self) -> MonoidTag {
        match self {
            BasisElement::Perm { .. } => MonoidTag::Perm,
            BasisElement::Assoc { .. } => MonoidTag::Assoc,
            BasisElement::Orbit { .. } => MonoidTag::Orbit,
            BasisElement::Poset { .. } => MonoidTag::Poset,
        }
    }

    pub fn ground(&self) -> GroundSet {
        match self {
            BasisElement::Perm { blocks } => blocks
                .iter()
                .fold(GroundSet::empty(), |acc, b| acc.union(b)),
            BasisElement::Assoc { factors } => factors
                .iter()
                .fold(GroundSet::empty(), |acc, f| acc.union(&f.ground())),
            BasisElement::Orbit { factors } => factors
                .iter()
                .fold(GroundSet::empty(), |acc, f| acc.union(&f.block)),
            BasisElement::Poset { poset } => poset.ground().clone(),
        }
    }

    /// Number of factors (for posets: 1 for nonempty, 0 for the unit).
    pub fn factor_count(&self) -> usize {
        match self {
            BasisElement::Perm { blocks } => blocks.len(),
            BasisElement::Assoc { factors } => factors.len(),
            BasisElement::Orbit { factors } => factors.len(),
            BasisElement::Poset { poset } => usize::from(!poset.is_empty()),
        }
    }

    /// True for single-factor elements. Posets count as atomic when
    /// connected (they are not products of smaller posets).
    pub fn is_atomic(&self) -> bool {
        match self {
            BasisElement::Poset { poset } => !poset.is_empty() && poset.is_connected(),
            _ => self.factor_count() == 1,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.ground().is_empty()
    }

    /// Renames every label through an injective map.
    pub fn relabel(&self, map: &std::collections::BTreeMap<Label, Label>) -> Result<BasisElement> {
        let rename_set = |g: &GroundSet| -> Result<GroundSet> {
            let mut out = GroundSet::empty();
            for l in g.iter() {
                let img = map
                    .get(l)
                    .ok_or_else(|| Error::InvalidInput(format!("no image for label {l}")))?;
                if !out.insert(img.clone()) {
                    return Err(Error::InvalidInput("relabeling is not injective".into()));
                }
            }
            Ok(out)
        };
        match self {
            BasisElement::Perm { blocks } => {
                BasisElement::perm(blocks.iter().map(rename_set).collect::<Result<Vec<_>>>()?)
            }
            BasisElement::Assoc { factors } => BasisElement::assoc(
                factors
                    .iter()
                    .map(|f| {
                        LinearOrder::new(
                            f.labels()
                                .iter()
                                .map(|l| {
                                    map.get(l).cloned().ok_or_else(|| {
                                        Error::InvalidInput(format!("no image for label {l}"))
                                    })
                                })
                                .collect::<Result<Vec<_>>>()?,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            BasisElement::Orbit { factors } => BasisElement::orbit(
                factors
                    .iter()
                    .map(|f| Ok((rename_set(&f.block)?, f.composition.clone())))
                    .collect::<Result<Vec<_>>>()?,
            ),
            BasisElement::Poset { poset } => Ok(BasisElement::poset(poset.relabel(map)?)),
        }
    }
}

/// Inserts an orbit factor, splitting point factors (single-part
/// compositions on blocks of size ≥ 2) into singleton points.
fn push_orbit_factor(set: &mut BTreeSet<OrbitFactor>, block: GroundSet, composition: Composition) {
    if composition.num_parts() == 1 && block.len() >= 2 {
        for l in block.iter() {
            set.insert(OrbitFactor {
                block: GroundSet::new([l.clone()]),
                composition: Composition::new([1]).expect("1 is positive"),
            });
        }
    } else if !block.is_empty() {
        set.insert(OrbitFactor { block, composition });
    }
}

/// A sum over tensors x ⊗ y of basis elements.
pub type TensorSum = FormalSum<(BasisElement, BasisElement)>;

/// The product μ_{S,T}: union of factor sets (polytope monoids) or disjoint
/// union (posets). Commutative by construction.
pub fn product(x: &BasisElement, y: &BasisElement) -> Result<BasisElement> {
    if x.tag() != y.tag() {
        return Err(Error::InvalidInput(format!(
            "cannot multiply {} by {}",
            x.tag(),
            y.tag()
        )));
    }
    match (x, y) {
        (BasisElement::Perm { blocks: a }, BasisElement::Perm { blocks: b }) => {
            BasisElement::perm(a.iter().chain(b).cloned())
        }
        (BasisElement::Assoc { factors: a }, BasisElement::Assoc { factors: b }) => {
            BasisElement::assoc(a.iter().chain(b).cloned())
        }
        (BasisElement::Orbit { factors: a }, BasisElement::Orbit { factors: b }) => {
            BasisElement::orbit(
                a.iter()
                    .chain(b)
                    .map(|f| (f.block.clone(), f.composition.clone())),
            )
        }
        (BasisElement::Poset { poset: a }, BasisElement::Poset { poset: b }) => {
            Ok(BasisElement::poset(a.disjoint_union(b)?))
        }
        _ => unreachable!("tags checked above"),
    }
}

/// The coproduct Δ_{S,T}. For the polytope monoids this is a single tensor
/// computed factorwise; for posets it is the lower-set-gated restriction
/// pair (possibly zero).
pub fn coproduct(x: &BasisElement, d: &Decomposition) -> Result<TensorSum> {
    if d.ground() != x.ground() {
        return Err(Error::GroundMismatch(format!(
            "decomposition of {} applied to element on {}",
            d.ground(),
            x.ground()
        )));
    }
    let (s, t) = (d.s(), d.t());
    match x {
        BasisElement::Perm { blocks } => {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for b in blocks {
                let bs = b.intersection(s);
                let bt = b.intersection(t);
                if !bs.is_empty() {
                    left.push(bs);
                }
                if !bt.is_empty() {
                    right.push(bt);
                }
            }
            Ok(FormalSum::singleton((
                BasisElement::perm(left)?,
                BasisElement::perm(right)?,
            )))
        }
        BasisElement::Assoc { factors } => {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for f in factors {
                let fs = f.restrict(s);
                if !fs.is_empty() {
                    left.push(fs);
                }
                // The T side splits into the maximal intervals of the
                // factor's order inside T.
                right.extend(f.maximal_intervals(t));
            }
            Ok(FormalSum::singleton((
                BasisElement::assoc(left)?,
                BasisElement::assoc(right)?,
            )))
        }
        BasisElement::Orbit { factors } => {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for f in factors {
                let bs = f.block.intersection(s);
                let bt = f.block.intersection(t);
                if bt.is_empty() {
                    left.push((f.block.clone(), f.composition.clone()));
                } else if bs.is_empty() {
                    right.push((f.block.clone(), f.composition.clone()));
                } else {
                    let (restriction, contraction, _) =
                        split_composition(&f.composition, bs.len())?;
                    left.push((bs, restriction));
                    right.push((bt, contraction));
                }
            }
            Ok(FormalSum::singleton((
                BasisElement::orbit(left)?,
                BasisElement::orbit(right)?,
            )))
        }
        BasisElement::Poset { poset } => {
            let sum = poset_coproduct(poset, d)?;
            Ok(sum.map_keys(|(l, r)| (BasisElement::poset(l.clone()), BasisElement::poset(r.clone()))))
        }
    }
}

/// All ways to fill the levels of sizes λ_1, λ_2, … with the given labels.
fn level_labelings(labels: &[Label], lambda: &Composition) -> Vec<Vec<Vec<Label>>> {
    fn go(remaining: Vec<Label>, parts: &[usize]) -> Vec<Vec<Vec<Label>>> {
        let Some((&first, rest)) = parts.split_first() else {
            return vec![Vec::new()];
        };
        let mut out = Vec::new();
        for chosen in remaining.iter().cloned().combinations(first) {
            let left: Vec<Label> = remaining
                .iter()
                .filter(|l| !chosen.contains(l))
                .cloned()
                .collect();
            for mut tail in go(left, rest) {
                let mut v = vec![chosen.clone()];
                v.append(&mut tail);
                out.push(v);
            }
        }
        out
    }
    go(labels.to_vec(), lambda.parts())
}

fn brion_atom_perm(block: &GroundSet) -> FormalSum<Poset> {
    all_chains(block)
        .into_iter()
        .map(|c| (c, rat(1)))
        .collect()
}

fn brion_atom_assoc(order: &LinearOrder) -> Result<FormalSum<Poset>> {
    let mut sum = FormalSum::zero();
    for t in enumerate_trees(order.len()) {
        sum.add_term(rbt_poset(&t, order)?, rat(1));
    }
    Ok(sum)
}

fn brion_atom_orbit(factor: &OrbitFactor) -> Result<FormalSum<Poset>> {
    let labels = factor.block.labels();
    let mut sum = FormalSum::zero();
    for blocks in level_labelings(&labels, &factor.composition) {
        sum.add_term(layered_poset(&factor.composition, &blocks)?, rat(1));
    }
    Ok(sum)
}

/// The Brion map on basis elements: atoms map to their vertex-poset sums
/// (all chains for π_B; tree posets for a_ℓ; all labelings of the layered
/// poset for O_{α,B}) and products map multilinearly to disjoint unions.
/// Poset elements are rejected: the map's domain is polytopes.
pub fn brion(x: &BasisElement) -> Result<FormalSum<Poset>> {
    let atom_images: Vec<FormalSum<Poset>> = match x {
        BasisElement::Poset { .. } => {
            return Err(Error::InvalidInput(
                "the Brion map is defined on polytope monoids, not posets".into(),
            ))
        }
        BasisElement::Perm { blocks } => blocks.iter().map(brion_atom_perm).collect(),
        BasisElement::Assoc { factors } => factors
            .iter()
            .map(brion_atom_assoc)
            .collect::<Result<Vec<_>>>()?,
        BasisElement::Orbit { factors } => factors
            .iter()
            .map(brion_atom_orbit)
            .collect::<Result<Vec<_>>>()?,
    };
    let mut acc = FormalSum::singleton(Poset::empty());
    for image in atom_images {
        let mut next = FormalSum::zero();
        for (p, a) in acc.iter() {
            for (q, b) in image.iter() {
                next.add_term(p.disjoint_union(q)?, a.clone() * b.clone());
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Pointwise Brion on a sum of tensors.
fn brion_tensor(sum: &TensorSum) -> Result<FormalSum<(Poset, Poset)>> {
    let mut out = FormalSum::zero();
    for ((x, y), c) in sum.iter() {
        for (p, a) in brion(x)?.iter() {
            for (q, b) in brion(y)?.iter() {
                out.add_term((p.clone(), q.clone()), c.clone() * a.clone() * b.clone());
            }
        }
    }
    Ok(out)
}

/// All set partitions of the ground set into nonempty blocks.
pub fn set_partitions(ground: &GroundSet) -> Vec<Vec<GroundSet>> {
    let labels = ground.labels();
    let mut out: Vec<Vec<GroundSet>> = vec![Vec::new()];
    for l in labels {
        let mut next = Vec::new();
        for partition in &out {
            for i in 0..partition.len() {
                let mut p = partition.clone();
                p[i].insert(l.clone());
                next.push(p);
            }
            let mut p = partition.clone();
            p.push(GroundSet::new([l.clone()]));
            next.push(p);
        }
        out = next;
    }
    out
}

/// Enumerates every basis element of the monoid on the ground set. Orbit
/// elements are enumerated directly in canonical form (no single-part
/// composition on a block of size ≥ 2), so each polytope class appears
/// exactly once.
pub fn enumerate_basis(tag: MonoidTag, ground: &GroundSet) -> Result<Vec<BasisElement>> {
    match tag {
        MonoidTag::Perm => set_partitions(ground)
            .into_iter()
            .map(|blocks| BasisElement::perm(blocks))
            .collect(),
        MonoidTag::Assoc => {
            let mut out = Vec::new();
            for partition in set_partitions(ground) {
                let per_block: Vec<Vec<LinearOrder>> = partition
                    .iter()
                    .map(|b| {
                        b.labels()
                            .into_iter()
                            .permutations(b.len())
                            .map(|p| LinearOrder::new(p).expect("permutation is duplicate-free"))
                            .collect()
                    })
                    .collect();
                if per_block.is_empty() {
                    out.push(BasisElement::unit(MonoidTag::Assoc));
                    continue;
                }
                for choice in per_block.iter().multi_cartesian_product() {
                    out.push(BasisElement::assoc(choice.into_iter().cloned())?);
                }
            }
            Ok(out)
        }
        MonoidTag::Orbit => {
            let mut out = Vec::new();
            for partition in set_partitions(ground) {
                let per_block: Vec<Vec<(GroundSet, Composition)>> = partition
                    .iter()
                    .map(|b| {
                        enumerate_compositions(b.len())
                            .into_iter()
                            .filter(|c| b.len() == 1 || c.num_parts() >= 2)
                            .map(|c| (b.clone(), c))
                            .collect()
                    })
                    .collect();
                if per_block.is_empty() {
                    out.push(BasisElement::unit(MonoidTag::Orbit));
                    continue;
                }
                for choice in per_block.iter().multi_cartesian_product() {
                    out.push(BasisElement::orbit(choice.into_iter().cloned())?);
                }
            }
            Ok(out)
        }
        MonoidTag::Poset => Ok(enumerate_posets(ground)?
            .into_iter()
            .map(BasisElement::poset)
            .collect()),
    }
}

/// Outcome of one exhaustive check.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} cases{})",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            if self.passed() {
                String::new()
            } else {
                format!(", {} failures", self.failures.len())
            }
        )
    }
}

/// All ordered triples (R, S, T) with R ⊔ S ⊔ T = I.
fn double_decompositions(ground: &GroundSet) -> Vec<(GroundSet, GroundSet, GroundSet)> {
    let mut out = Vec::new();
    for d in crate::formal::enumerate_decompositions(ground) {
        let (u, t) = (d.s().clone(), d.t().clone());
        for inner in crate::formal::enumerate_decompositions(&u) {
            out.push((inner.s().clone(), inner.t().clone(), t.clone()));
        }
    }
    out
}

type TripleSum = FormalSum<(BasisElement, BasisElement, BasisElement)>;

/// Checks (Δ ⊗ id) ∘ Δ = (id ⊗ Δ) ∘ Δ for every basis element on I and
/// every double decomposition.
pub fn check_coassociativity(tag: MonoidTag, ground: &GroundSet) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("coassociativity[{tag}, n={}]", ground.len()));
    let basis = enumerate_basis(tag, ground)?;
    let triples = double_decompositions(ground);
    for x in &basis {
        for (r, s, t) in &triples {
            let rs = r.union(s);
            // left route: split off T, then split RS into R | S
            let mut left: TripleSum = FormalSum::zero();
            for ((y, z), c) in coproduct(x, &Decomposition::new(rs.clone(), t.clone())?)?.iter() {
                for ((a, b), c2) in coproduct(y, &Decomposition::new(r.clone(), s.clone())?)?.iter()
                {
                    left.add_term((a.clone(), b.clone(), z.clone()), c.clone() * c2.clone());
                }
            }
            // right route: split off R, then split ST into S | T
            let st = s.union(t);
            let mut right: TripleSum = FormalSum::zero();
            for ((a, w), c) in coproduct(x, &Decomposition::new(r.clone(), st.clone())?)?.iter() {
                for ((b, z), c2) in coproduct(w, &Decomposition::new(s.clone(), t.clone())?)?.iter()
                {
                    right.add_term((a.clone(), b.clone(), z.clone()), c.clone() * c2.clone());
                }
            }
            report.record(left == right, || {
                format!("coassociativity fails for {x:?} at ({r}, {s}, {t})")
            });
        }
    }
    Ok(report)
}

/// Checks the bialgebra compatibility: Δ_{S,T}(x·y) equals the product of
/// the restricted coproducts of x and y, for all basis pairs on all
/// decompositions.
pub fn check_compatibility(tag: MonoidTag, ground: &GroundSet) -> Result<CheckReport> {
    let mut report = CheckReport::new(format!("compatibility[{tag}, n={}]", ground.len()));
    for split in crate::formal::enumerate_decompositions(ground) {
        let (a_set, b_set) = (split.s(), split.t());
        let xs = enumerate_basis(tag, a_set)?;
        let ys = enumerate_basis(tag, b_set)?;
        for d in crate::formal::enumerate_decompositions(ground) {
            let (s, t) = (d.s(), d.t());
            for x in &xs {
                for y in &ys {
                    let xy = product(x, y)?;
                    let lhs = coproduct(&xy, &d)?;
                    let dx = coproduct(
                        x,
                        &Decomposition::new(a_set.intersection(s), a_set.intersection(t))?,
                    )?;
                    let dy = coproduct(
                        y,
                        &Decomposition::new(b_set.intersection(s), b_set.intersection(t))?,
                    )?;
                    let mut rhs: TensorSum = FormalSum::zero();
                    for ((x1, x2), c1) in dx.iter() {
                        for ((y1, y2), c2) in dy.iter() {
                            rhs.add_term(
                                (product(x1, y1)?, product(x2, y2)?),
                                c1.clone() * c2.clone(),
                            );
                        }
                    }
                    report.record(lhs == rhs, || {
                        format!("compatibility fails for {x:?} · {y:?} at ({s}, {t})")
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Checks that the Brion map is a morphism of Hopf monoids on the polytope
/// monoid: B(x·y) = B(x)·B(y) and (B ⊗ B)(Δ x) = Δ(B x).
pub fn check_brion_morphism(tag: MonoidTag, ground: &GroundSet) -> Result<CheckReport> {
    if tag == MonoidTag::Poset {
        return Err(Error::InvalidInput(
            "the Brion map is not defined on the poset monoid".into(),
        ));
    }
    let mut report = CheckReport::new(format!("brion-morphism[{tag}, n={}]", ground.len()));

    // Product square.
    for split in crate::formal::enumerate_decompositions(ground) {
        let xs = enumerate_basis(tag, split.s())?;
        let ys = enumerate_basis(tag, split.t())?;
        for x in &xs {
            for y in &ys {
                let lhs = brion(&product(x, y)?)?;
                let bx = brion(x)?;
                let by = brion(y)?;
                let mut rhs = FormalSum::zero();
                for (p, a) in bx.iter() {
                    for (q, b) in by.iter() {
                        rhs.add_term(p.disjoint_union(q)?, a.clone() * b.clone());
                    }
                }
                report.record(lhs == rhs, || {
                    format!("B(x·y) ≠ B(x)·B(y) for {x:?}, {y:?}")
                });
            }
        }
    }

    // Coproduct square.
    let basis = enumerate_basis(tag, ground)?;
    for x in &basis {
        let bx = brion(x)?;
        for d in crate::formal::enumerate_decompositions(ground) {
            let lhs = brion_tensor(&coproduct(x, &d)?)?;
            let mut rhs = FormalSum::zero();
            for (p, c) in bx.iter() {
                for ((l, r), c2) in poset_coproduct(p, &d)?.iter() {
                    rhs.add_term((l.clone(), r.clone()), c.clone() * c2.clone());
                }
            }
            report.record(lhs == rhs, || {
                format!("(B⊗B)Δ ≠ ΔB for {x:?} at ({}, {})", d.s(), d.t())
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::catalan;
    use crate::formal::enumerate_decompositions;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied())
    }

    fn ord(labels: &[&str]) -> LinearOrder {
        LinearOrder::new(labels.iter().copied()).unwrap()
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.iter().copied()).unwrap()
    }

    #[test]
    fn products_merge_factors() {
        let x = BasisElement::perm_atom(g(&["a", "b"])).unwrap();
        let y = BasisElement::perm_atom(g(&["c"])).unwrap();
        let xy = product(&x, &y).unwrap();
        assert_eq!(xy, BasisElement::perm([g(&["a", "b"]), g(&["c"])]).unwrap());
        assert_eq!(xy, product(&y, &x).unwrap());

        let a = BasisElement::assoc_atom(ord(&["1", "2"])).unwrap();
        let b = BasisElement::assoc_atom(ord(&["3", "4"])).unwrap();
        assert_eq!(product(&a, &b).unwrap(), product(&b, &a).unwrap());

        let unit = BasisElement::unit(MonoidTag::Perm);
        assert_eq!(product(&x, &unit).unwrap(), x);

        assert!(product(&x, &a).is_err());
        let overlap = BasisElement::perm_atom(g(&["b", "z"])).unwrap();
        assert!(product(&x, &overlap).is_err());
    }

    #[test]
    fn orbit_point_factors_split_into_singletons() {
        let point = BasisElement::orbit_atom(g(&["a", "b"]), comp(&[2])).unwrap();
        let split = BasisElement::orbit([
            (g(&["a"]), comp(&[1])),
            (g(&["b"]), comp(&[1])),
        ])
        .unwrap();
        assert_eq!(point, split);
        assert_eq!(point.factor_count(), 2);
        // multi-part compositions stay atomic
        let seg = BasisElement::orbit_atom(g(&["a", "b"]), comp(&[1, 1])).unwrap();
        assert_eq!(seg.factor_count(), 1);
        assert!(seg.is_atomic());
    }

    #[test]
    fn coproduct_perm_splits_blockwise() {
        let ground = g(&["a", "b", "c"]);
        let pi = BasisElement::perm_atom(ground.clone()).unwrap();
        for d in enumerate_decompositions(&ground) {
            let out = coproduct(&pi, &d).unwrap();
            assert_eq!(out.num_terms(), 1);
            let (l, r) = out.keys().next().unwrap();
            if !d.s().is_empty() {
                assert_eq!(*l, BasisElement::perm_atom(d.s().clone()).unwrap());
            } else {
                assert!(l.is_unit());
            }
            if !d.t().is_empty() {
                assert_eq!(*r, BasisElement::perm_atom(d.t().clone()).unwrap());
            } else {
                assert!(r.is_unit());
            }
        }
    }

    #[test]
    fn coproduct_assoc_paper_example() {
        // Δ_{{2},{1,3,4}}(a_{1234}) = a_2 ⊗ (a_1 × a_34)
        let x = BasisElement::assoc_atom(ord(&["1", "2", "3", "4"])).unwrap();
        let d = Decomposition::new(g(&["2"]), g(&["1", "3", "4"])).unwrap();
        let out = coproduct(&x, &d).unwrap();
        assert_eq!(out.num_terms(), 1);
        let (l, r) = out.keys().next().unwrap();
        assert_eq!(*l, BasisElement::assoc_atom(ord(&["2"])).unwrap());
        assert_eq!(
            *r,
            BasisElement::assoc([ord(&["1"]), ord(&["3", "4"])]).unwrap()
        );
    }

    #[test]
    fn coproduct_unit_side() {
        let x = BasisElement::assoc_atom(ord(&["1", "2", "3"])).unwrap();
        let d = Decomposition::new(GroundSet::empty(), g(&["1", "2", "3"])).unwrap();
        let out = coproduct(&x, &d).unwrap();
        let (l, r) = out.keys().next().unwrap();
        assert!(l.is_unit());
        assert_eq!(*r, x);
    }

    #[test]
    fn coproduct_orbit_splits_composition() {
        let ground = g(&["p", "q", "r"]);
        let x = BasisElement::orbit_atom(ground.clone(), comp(&[2, 1])).unwrap();
        // |S| = 1 cuts inside the first part: (1) ⊗ (1,1)
        let d = Decomposition::new(g(&["q"]), g(&["p", "r"])).unwrap();
        let out = coproduct(&x, &d).unwrap();
        let (l, r) = out.keys().next().unwrap();
        assert_eq!(*l, BasisElement::orbit_atom(g(&["q"]), comp(&[1])).unwrap());
        assert_eq!(
            *r,
            BasisElement::orbit_atom(g(&["p", "r"]), comp(&[1, 1])).unwrap()
        );
        // |S| = 2 cuts at the boundary: (2) ⊗ (1); the (2) part is a point
        // and splits into singletons.
        let d = Decomposition::new(g(&["p", "q"]), g(&["r"])).unwrap();
        let out = coproduct(&x, &d).unwrap();
        let (l, r) = out.keys().next().unwrap();
        assert_eq!(
            *l,
            BasisElement::orbit_atom(g(&["p", "q"]), comp(&[2])).unwrap()
        );
        assert_eq!(l.factor_count(), 2);
        assert_eq!(*r, BasisElement::orbit_atom(g(&["r"]), comp(&[1])).unwrap());
    }

    #[test]
    fn coproduct_poset_gate() {
        let p = crate::poset::chain_from_order(&ord(&["a", "b"]));
        let x = BasisElement::poset(p);
        let lower = Decomposition::new(g(&["a"]), g(&["b"])).unwrap();
        assert_eq!(coproduct(&x, &lower).unwrap().num_terms(), 1);
        let upper = Decomposition::new(g(&["b"]), g(&["a"])).unwrap();
        assert!(coproduct(&x, &upper).unwrap().is_zero());
    }

    #[test]
    fn brion_small_atoms() {
        let b = brion(&BasisElement::perm_atom(g(&["a", "b"])).unwrap()).unwrap();
        assert_eq!(b.num_terms(), 2);
        for key in b.keys() {
            assert!(key.is_chain());
        }

        let b = brion(&BasisElement::assoc_atom(ord(&["1", "2", "3"])).unwrap()).unwrap();
        assert_eq!(b.num_terms(), 5);
        assert!(b.all_coeffs_positive_integers());

        let b = brion(&BasisElement::orbit_atom(g(&["x", "y", "z"]), comp(&[1, 2])).unwrap())
            .unwrap();
        assert_eq!(b.num_terms(), 3);

        assert!(brion(&BasisElement::poset(Poset::antichain(g(&["a"])))).is_err());
    }

    #[test]
    fn brion_term_counts_match_vertex_counts() {
        // |I|! chains, C_n tree posets, multinomially many layered posets.
        let b = brion(&BasisElement::perm_atom(g(&["a", "b", "c", "d"])).unwrap()).unwrap();
        assert_eq!(b.num_terms(), 24);
        let b = brion(&BasisElement::assoc_atom(ord(&["1", "2", "3", "4"])).unwrap()).unwrap();
        assert_eq!(b.num_terms() as u128, catalan(4));
        let b = brion(
            &BasisElement::orbit_atom(g(&["a", "b", "c", "d"]), comp(&[2, 2])).unwrap(),
        )
        .unwrap();
        assert_eq!(b.num_terms(), 6);
    }

    #[test]
    fn brion_multiplicative_on_products() {
        let x = BasisElement::perm([g(&["a"]), g(&["b", "c"])]).unwrap();
        let b = brion(&x).unwrap();
        // 1 chain on {a} × 2 chains on {b,c}
        assert_eq!(b.num_terms(), 2);
        for key in b.keys() {
            assert!(!key.is_connected());
        }
    }

    #[test]
    fn axioms_hold_on_three_elements() {
        let ground = g(&["a", "b", "c"]);
        for tag in [MonoidTag::Perm, MonoidTag::Assoc, MonoidTag::Orbit, MonoidTag::Poset] {
            let r = check_coassociativity(tag, &ground).unwrap();
            assert!(r.passed(), "{r}");
            let r = check_compatibility(tag, &ground).unwrap();
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn brion_morphism_on_three_elements() {
        let ground = g(&["a", "b", "c"]);
        for tag in [MonoidTag::Perm, MonoidTag::Assoc, MonoidTag::Orbit] {
            let r = check_brion_morphism(tag, &ground).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(check_brion_morphism(MonoidTag::Poset, &ground).is_err());
    }

    #[test]
    fn basis_enumeration_counts() {
        let ground = g(&["a", "b", "c", "d"]);
        assert_eq!(enumerate_basis(MonoidTag::Perm, &ground).unwrap().len(), 15);
        assert_eq!(enumerate_basis(MonoidTag::Assoc, &ground).unwrap().len(), 73);
        assert_eq!(enumerate_basis(MonoidTag::Poset, &ground).unwrap().len(), 219);
        // canonical orbit elements: sum over partitions of products of
        // (2^{|B|-1} - 1) for |B| ≥ 2 and 1 for singletons
        assert_eq!(enumerate_basis(MonoidTag::Orbit, &ground).unwrap().len(), 29);
        // every enumerated element is distinct
        for tag in [MonoidTag::Perm, MonoidTag::Assoc, MonoidTag::Orbit, MonoidTag::Poset] {
            let basis = enumerate_basis(tag, &ground).unwrap();
            let set: BTreeSet<_> = basis.iter().collect();
            assert_eq!(set.len(), basis.len());
        }
    }

    #[test]
    fn basis_element_json_roundtrip() {
        let elems = vec![
            BasisElement::perm([g(&["a", "b"]), g(&["c"])]).unwrap(),
            BasisElement::assoc([ord(&["b", "a"]), ord(&["c"])]).unwrap(),
            BasisElement::orbit_atom(g(&["x", "y", "z"]), comp(&[1, 2])).unwrap(),
            BasisElement::poset(crate::poset::chain_from_order(&ord(&["a", "b"]))),
            BasisElement::unit(MonoidTag::Orbit),
        ];
        for e in elems {
            let json = serde_json::to_string(&e).unwrap();
            let back: BasisElement = serde_json::from_str(&json).unwrap();
            assert_eq!(back, e);
        }
        // orbit elements normalize on the way in
        let raw = r#"{"monoid":"orbit","factors":[{"block":["a","b"],"composition":[2]}]}"#;
        let parsed: BasisElement = serde_json::from_str(raw).unwrap();
        assert_eq!(parsed.factor_count(), 2);
    }
}
