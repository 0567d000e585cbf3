//! The unlabeling functor (isomorphism classes via canonical forms), the
//! Hopf-algebra-level Brion maps with their closed coefficients, the dual
//! Brion maps, and the Witt/Catalan identity verifiers.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::combinat::{Composition, LinearOrder, catalan, enumerate_trees};
use crate::dual::{Dual, DualSum, dual_product_formula};
use crate::error::{Error, Result};
use crate::formal::{FormalSum, GroundSet, Rational};
use crate::hopf::{BasisElement, MonoidTag};
use crate::poset::{Poset, UnlabeledPoset, layered_class, rbt_poset};

/// Default bound for the Catalan identity verifiers.
pub const CATALAN_BOUND: usize = 10;

/// An isomorphism class of basis elements: a multiset of atomic classes.
/// Permutahedron and associahedron atoms are classified by their size,
/// orbit atoms by their composition, posets by their canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "monoid", rename_all = "snake_case")]
pub enum UnlabeledBasisElement {
    Perm { atoms: Vec<usize> },
    Assoc { atoms: Vec<usize> },
    Orbit { atoms: Vec<Composition> },
    Poset { class: UnlabeledPoset },
}

impl UnlabeledBasisElement {
    pub fn perm_class(n: usize) -> Self {
        UnlabeledBasisElement::Perm { atoms: vec![n] }
    }

    pub fn assoc_class(n: usize) -> Self {
        UnlabeledBasisElement::Assoc { atoms: vec![n] }
    }

    pub fn orbit_class(lambda: Composition) -> Self {
        UnlabeledBasisElement::Orbit { atoms: vec![lambda] }
    }

    pub fn poset_class(class: UnlabeledPoset) -> Self {
        UnlabeledBasisElement::Poset { class }
    }

    pub fn tag(&self) -> MonoidTag {
        match self {
            UnlabeledBasisElement::Perm { .. } => MonoidTag::Perm,
            UnlabeledBasisElement::Assoc { .. } => MonoidTag::Assoc,
            UnlabeledBasisElement::Orbit { .. } => MonoidTag::Orbit,
            UnlabeledBasisElement::Poset { .. } => MonoidTag::Poset,
        }
    }

    /// The grade: total number of underlying atoms' elements.
    pub fn grade(&self) -> usize {
        match self {
            UnlabeledBasisElement::Perm { atoms } | UnlabeledBasisElement::Assoc { atoms } => {
                atoms.iter().sum()
            }
            UnlabeledBasisElement::Orbit { atoms } => atoms.iter().map(|c| c.weight()).sum(),
            UnlabeledBasisElement::Poset { class } => class.len(),
        }
    }

    pub fn is_atom(&self) -> bool {
        match self {
            UnlabeledBasisElement::Perm { atoms } | UnlabeledBasisElement::Assoc { atoms } => {
                atoms.len() == 1
            }
            UnlabeledBasisElement::Orbit { atoms } => atoms.len() == 1,
            UnlabeledBasisElement::Poset { class } => class.is_connected() && !class.is_empty(),
        }
    }
}

impl std::fmt::Display for UnlabeledBasisElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnlabeledBasisElement::Perm { atoms } => {
                write!(f, "pi[{}]", atoms.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x"))
            }
            UnlabeledBasisElement::Assoc { atoms } => {
                write!(f, "a[{}]", atoms.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x"))
            }
            UnlabeledBasisElement::Orbit { atoms } => {
                write!(f, "O[{}]", atoms.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("x"))
            }
            UnlabeledBasisElement::Poset { class } => write!(f, "{class}"),
        }
    }
}

/// Forgets the labels of a single basis element.
pub fn unlabel_element(x: &BasisElement) -> Result<UnlabeledBasisElement> {
    Ok(match x {
        BasisElement::Perm { blocks } => {
            let mut atoms: Vec<usize> = blocks.iter().map(|b| b.len()).collect();
            atoms.sort_unstable();
            UnlabeledBasisElement::Perm { atoms }
        }
        BasisElement::Assoc { factors } => {
            let mut atoms: Vec<usize> = factors.iter().map(|f| f.len()).collect();
            atoms.sort_unstable();
            UnlabeledBasisElement::Assoc { atoms }
        }
        BasisElement::Orbit { factors } => {
            let mut atoms: Vec<Composition> =
                factors.iter().map(|f| f.composition.clone()).collect();
            atoms.sort();
            UnlabeledBasisElement::Orbit { atoms }
        }
        BasisElement::Poset { poset } => UnlabeledBasisElement::Poset {
            class: poset.canonical_form()?,
        },
    })
}

/// Unlabels a sum of basis elements, merging coefficients of isomorphic
/// terms.
pub fn unlabel_basis_sum(
    sum: &FormalSum<BasisElement>,
) -> Result<FormalSum<UnlabeledBasisElement>> {
    sum.try_map_keys(unlabel_element)
}

/// Unlabels a sum of posets via canonical forms.
pub fn unlabel_poset_sum(sum: &FormalSum<Poset>) -> Result<FormalSum<UnlabeledPoset>> {
    sum.try_map_keys(|p| p.canonical_form())
}

/// Unlabels a sum of dual basis elements.
pub fn unlabel_dual_sum(sum: &DualSum) -> Result<FormalSum<Dual<UnlabeledBasisElement>>> {
    sum.try_map_keys(|d| unlabel_element(&d.0).map(Dual))
}

/// n! / (λ_1! ⋯ λ_k!).
pub fn multinomial(lambda: &Composition) -> u128 {
    let fact = |m: usize| -> u128 { (1..=m as u128).product::<u128>().max(1) };
    let mut value = fact(lambda.weight());
    for &p in lambda.parts() {
        value /= fact(p);
    }
    value
}

/// One isomorphism class of tree posets with its Brion coefficient data.
#[derive(Clone, Debug)]
pub struct RbtClass {
    pub poset: UnlabeledPoset,
    pub maximal: usize,
    pub symmetric: usize,
}

impl RbtClass {
    /// The Brion coefficient 2^{n − m(p) − s(p)}.
    pub fn coefficient(&self, n: usize) -> Rational {
        let exp = n - self.maximal - self.symmetric;
        Rational::from_integer(BigInt::from(2u8).pow(exp as u32))
    }
}

static RBT_CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<Vec<RbtClass>>>>> = OnceLock::new();

/// The set RBT_n of unlabeled tree posets on n elements, with maximal and
/// symmetric counts, built once from Y_n and cached.
pub fn rbt_classes(n: usize) -> Result<Arc<Vec<RbtClass>>> {
    if n == 0 || n > crate::poset::CANONICAL_BOUND {
        return Err(Error::BoundExceeded(format!(
            "RBT classes need 1 ≤ n ≤ {}, got {n}",
            crate::poset::CANONICAL_BOUND
        )));
    }
    let cache = RBT_CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(found) = cache.lock().expect("cache lock").get(&n) {
        return Ok(Arc::clone(found));
    }
    let ell = LinearOrder::new((0..n).map(|i| format!("v{i:02}"))).expect("distinct labels");
    let mut classes: BTreeMap<UnlabeledPoset, RbtClass> = BTreeMap::new();
    for t in enumerate_trees(n) {
        let p = rbt_poset(&t, &ell)?;
        let class = p.canonical_form()?;
        classes.entry(class.clone()).or_insert_with(|| RbtClass {
            maximal: class.maximal_count(),
            symmetric: class.symmetric_count().expect("tree posets are RBT-shaped"),
            poset: class,
        });
    }
    let built: Arc<Vec<RbtClass>> = Arc::new(classes.into_values().collect());
    cache
        .lock()
        .expect("cache lock")
        .insert(n, Arc::clone(&built));
    Ok(built)
}

/// The unlabeled chain on n elements.
pub fn chain_class(n: usize) -> UnlabeledPoset {
    layered_class(&Composition::new(vec![1; n.max(1)]).expect("positive parts"))
}

fn factorial(n: usize) -> Rational {
    let mut v = BigInt::from(1);
    for i in 2..=n {
        v *= BigInt::from(i);
    }
    Rational::from_integer(v)
}

/// The Brion map on the Hopf algebra, on atomic classes, by the closed
/// formulas: B(π_n) = n!·c_n, B(a_n) = Σ 2^{n−m(p)−s(p)} p over RBT_n, and
/// B(O_λ) = (n!/λ_1!⋯λ_k!)·p(λ).
pub fn brion_fock(atom: &UnlabeledBasisElement) -> Result<FormalSum<UnlabeledPoset>> {
    if !atom.is_atom() {
        return Err(Error::InvalidInput(
            "brion_fock is defined on atomic classes".into(),
        ));
    }
    match atom {
        UnlabeledBasisElement::Perm { atoms } => {
            let n = atoms[0];
            Ok(FormalSum::with_coeff(chain_class(n), factorial(n)))
        }
        UnlabeledBasisElement::Assoc { atoms } => {
            let n = atoms[0];
            let mut sum = FormalSum::zero();
            for class in rbt_classes(n)?.iter() {
                sum.add_term(class.poset.clone(), class.coefficient(n));
            }
            Ok(sum)
        }
        UnlabeledBasisElement::Orbit { atoms } => {
            let lambda = &atoms[0];
            Ok(FormalSum::with_coeff(
                layered_class(lambda),
                Rational::from_integer(BigInt::from(multinomial(lambda))),
            ))
        }
        UnlabeledBasisElement::Poset { .. } => Err(Error::InvalidInput(
            "the Brion map is defined on polytope classes, not posets".into(),
        )),
    }
}

/// Checks C_n = Σ_{p ∈ RBT_n} 2^{n−m(p)−s(p)} with C_n from the recurrence.
pub fn verify_catalan(n: usize) -> Result<bool> {
    verify_catalan_with_bound(n, CATALAN_BOUND)
}

pub fn verify_catalan_with_bound(n: usize, bound: usize) -> Result<bool> {
    if n > bound {
        return Err(Error::BoundExceeded(format!(
            "catalan identity bound is {bound}, got n = {n}"
        )));
    }
    let total: Rational = rbt_classes(n)?
        .iter()
        .map(|c| c.coefficient(n))
        .fold(Rational::from_integer(BigInt::from(0)), |a, b| a + b);
    Ok(total == Rational::from_integer(BigInt::from(catalan(n))))
}

/// Checks the parity corollary: C_n is odd exactly when n = 2^k − 1, which
/// happens exactly when RBT_n contains an odd number (in fact exactly one)
/// of totally symmetric posets.
pub fn verify_catalan_parity(n: usize) -> Result<bool> {
    verify_catalan_parity_with_bound(n, CATALAN_BOUND)
}

pub fn verify_catalan_parity_with_bound(n: usize, bound: usize) -> Result<bool> {
    if n > bound {
        return Err(Error::BoundExceeded(format!(
            "catalan parity bound is {bound}, got n = {n}"
        )));
    }
    let odd = catalan(n) % 2 == 1;
    let is_mersenne = (n + 1).is_power_of_two();
    let symmetric = rbt_classes(n)?
        .iter()
        .filter(|c| c.poset.is_totally_symmetric().expect("RBT-shaped"))
        .count();
    let expected_count = usize::from(is_mersenne);
    Ok(odd == is_mersenne && symmetric == expected_count && (symmetric % 2 == 1) == odd)
}

/// The Hopf-algebra dual product a*_s · a*_t, computed by unlabeling the
/// species-level dual product on a representative labeled pair. Equals
/// (s+1)·a*_{s+t} + (a_s × a_t)*.
pub fn dual_product_fock(s: usize, t: usize) -> Result<FormalSum<Dual<UnlabeledBasisElement>>> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidInput("grades must be positive".into()));
    }
    let ell = LinearOrder::new((0..s).map(|i| format!("s{i:02}")))?;
    let m = LinearOrder::new((0..t).map(|i| format!("t{i:02}")))?;
    let x = BasisElement::assoc_atom(ell)?;
    let y = BasisElement::assoc_atom(m)?;
    unlabel_dual_sum(&dual_product_formula(&x, &y)?)
}

/// The Witt bracket [a*_s, a*_t] = (s−t)·a*_{s+t}, as the commutator of the
/// Fock-level dual product. The product classes cancel because a_s × a_t
/// and a_t × a_s are isomorphic.
pub fn witt_bracket(s: usize, t: usize) -> Result<FormalSum<Dual<UnlabeledBasisElement>>> {
    let bracket = dual_product_fock(s, t)?.sub(&dual_product_fock(t, s)?);
    assert!(
        bracket.keys().all(|k| k.0.is_atom()),
        "product classes must cancel in the Witt bracket"
    );
    Ok(bracket)
}

/// The dual Brion maps of the three polytope families, on the dual of a
/// connected unlabeled poset. Each target is queried independently; a chain
/// is simultaneously a chain, a tree poset, and the (1,…,1)-layered poset,
/// so it maps nontrivially under all three.
pub fn dual_brion(
    class: &UnlabeledPoset,
    target: MonoidTag,
) -> Result<FormalSum<Dual<UnlabeledBasisElement>>> {
    if class.is_empty() {
        return Err(Error::InvalidInput("empty poset class".into()));
    }
    if !class.is_connected() {
        return Err(Error::InvalidInput(
            "dual Brion maps are defined on primitives: connected posets".into(),
        ));
    }
    let n = class.len();
    match target {
        MonoidTag::Perm => {
            if class.is_chain() {
                Ok(FormalSum::with_coeff(
                    Dual(UnlabeledBasisElement::perm_class(n)),
                    factorial(n),
                ))
            } else {
                Ok(FormalSum::zero())
            }
        }
        MonoidTag::Assoc => {
            for c in rbt_classes(n)?.iter() {
                if c.poset == *class {
                    return Ok(FormalSum::with_coeff(
                        Dual(UnlabeledBasisElement::assoc_class(n)),
                        c.coefficient(n),
                    ));
                }
            }
            Ok(FormalSum::zero())
        }
        MonoidTag::Orbit => {
            if let Some(lambda) = class.layered_composition() {
                let coeff = Rational::from_integer(BigInt::from(multinomial(&lambda)));
                Ok(FormalSum::with_coeff(
                    Dual(UnlabeledBasisElement::orbit_class(lambda)),
                    coeff,
                ))
            } else {
                Ok(FormalSum::zero())
            }
        }
        MonoidTag::Poset => Err(Error::InvalidInput(
            "dual Brion targets are the three polytope monoids".into(),
        )),
    }
}

/// Atomic classes of the target family in the given grade: π_n, a_n, or the
/// O_λ for compositions λ of n that are not points (single-part λ on n ≥ 2
/// is the class of a product of points, not an atom).
pub fn atoms_of_grade(tag: MonoidTag, n: usize) -> Result<Vec<UnlabeledBasisElement>> {
    if n == 0 {
        return Err(Error::InvalidInput("grade must be positive".into()));
    }
    Ok(match tag {
        MonoidTag::Perm => vec![UnlabeledBasisElement::perm_class(n)],
        MonoidTag::Assoc => vec![UnlabeledBasisElement::assoc_class(n)],
        MonoidTag::Orbit => crate::combinat::enumerate_compositions(n)
            .into_iter()
            .filter(|c| n == 1 || c.num_parts() >= 2)
            .map(UnlabeledBasisElement::orbit_class)
            .collect(),
        MonoidTag::Poset => {
            return Err(Error::InvalidInput(
                "poset classes are not polytope atoms".into(),
            ))
        }
    })
}

/// A canonical labeled representative of a polytope atom class, on the
/// ground set {x00, x01, …}.
pub fn representative_atom(atom: &UnlabeledBasisElement) -> Result<BasisElement> {
    if !atom.is_atom() {
        return Err(Error::InvalidInput("expected an atomic class".into()));
    }
    let n = atom.grade();
    let ground = GroundSet::new((0..n).map(|i| format!("x{i:02}")));
    match atom {
        UnlabeledBasisElement::Perm { .. } => BasisElement::perm_atom(ground),
        UnlabeledBasisElement::Assoc { .. } => {
            BasisElement::assoc_atom(LinearOrder::new(ground.labels())?)
        }
        UnlabeledBasisElement::Orbit { atoms } => {
            BasisElement::orbit_atom(ground, atoms[0].clone())
        }
        UnlabeledBasisElement::Poset { .. } => Err(Error::InvalidInput(
            "poset classes have no polytope representative".into(),
        )),
    }
}
