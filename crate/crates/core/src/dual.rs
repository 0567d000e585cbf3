//! The dual side: dual basis elements, dual products computed both by the
//! closed formulas for primitives and by brute-force dualization of the
//! coproduct, dual coproducts, primitive testing, and the Lie brackets of
//! primitives.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::Composition;
use crate::error::{Error, Result};
use crate::formal::{Decomposition, FormalSum, GroundSet};
use crate::hopf::{BasisElement, MonoidTag, coproduct, enumerate_basis, product};

/// Marks a basis key as a dual basis functional.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Dual<K>(pub K);

impl<K: fmt::Display> fmt::Display for Dual<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*", self.0)
    }
}

pub type DualBasisElement = Dual<BasisElement>;
pub type DualSum = FormalSum<DualBasisElement>;

/// Largest ground set the brute-force dualizations will enumerate.
pub const BRUTE_FORCE_BOUND: usize = 5;

fn require_atomic_pair(x: &BasisElement, y: &BasisElement) -> Result<GroundSet> {
    if x.tag() != y.tag() {
        return Err(Error::InvalidInput(format!(
            "dual product needs matching monoids, got {} and {}",
            x.tag(),
            y.tag()
        )));
    }
    if !x.is_atomic() || !y.is_atomic() {
        return Err(Error::InvalidInput(
            "dual product formulas are stated on atomic (primitive) elements".into(),
        ));
    }
    x.ground().disjoint_union(&y.ground())
}

/// The dual product of two atomic orbit classes, symbolically in the
/// composition data: O*_{α·β} + O*_{α⊙β}, plus (O_α × O_β)* when α or β has
/// more than one part. Outputs are canonicalized, so point classes come out
/// as products of singleton points.
pub fn orbit_dual_product(
    s_block: &GroundSet,
    alpha: &Composition,
    t_block: &GroundSet,
    beta: &Composition,
) -> Result<DualSum> {
    if alpha.weight() != s_block.len() || beta.weight() != t_block.len() {
        return Err(Error::InvalidInput(
            "composition weights must match block sizes".into(),
        ));
    }
    let ground = s_block.disjoint_union(t_block)?;
    let mut out = DualSum::zero();
    let concat = BasisElement::orbit_atom(ground.clone(), alpha.concatenate(beta))?;
    out.add_term(Dual(concat), crate::formal::rat(1));
    let near = BasisElement::orbit_atom(ground.clone(), alpha.near_concatenate(beta)?)?;
    out.add_term(Dual(near), crate::formal::rat(1));
    if alpha.num_parts() > 1 || beta.num_parts() > 1 {
        let prod = product(
            &BasisElement::orbit_atom(s_block.clone(), alpha.clone())?,
            &BasisElement::orbit_atom(t_block.clone(), beta.clone())?,
        )?;
        out.add_term(Dual(prod), crate::formal::rat(1));
    }
    Ok(out)
}

/// The closed formulas for the dual product μ*_{S,T}(x* ⊗ y*) on atomic
/// primitives of the three polytope monoids.
pub fn dual_product_formula(x: &BasisElement, y: &BasisElement) -> Result<DualSum> {
    let ground = require_atomic_pair(x, y)?;
    let mut out = DualSum::zero();
    match (x, y) {
        (BasisElement::Perm { .. }, BasisElement::Perm { .. }) => {
            out.add_term(
                Dual(BasisElement::perm_atom(ground)?),
                crate::formal::rat(1),
            );
            out.add_term(Dual(product(x, y)?), crate::formal::rat(1));
            Ok(out)
        }
        (BasisElement::Assoc { factors: fx }, BasisElement::Assoc { factors: fy }) => {
            let ell = fx.iter().next().expect("atomic");
            let m = fy.iter().next().expect("atomic");
            for b in crate::combinat::block_insertions(ell, m)? {
                out.add_term(
                    Dual(BasisElement::assoc_atom(b)?),
                    crate::formal::rat(1),
                );
            }
            out.add_term(Dual(product(x, y)?), crate::formal::rat(1));
            Ok(out)
        }
        (BasisElement::Orbit { factors: fx }, BasisElement::Orbit { factors: fy }) => {
            let a = fx.iter().next().expect("atomic");
            let b = fy.iter().next().expect("atomic");
            orbit_dual_product(&a.block, &a.composition, &b.block, &b.composition)
        }
        (BasisElement::Poset { .. }, _) => Err(Error::InvalidInput(
            "no closed dual-product formula for posets; use the brute-force dualization".into(),
        )),
        _ => unreachable!("tags checked"),
    }
}

/// Brute-force dualization of the coproduct: μ*_{S,T}(x* ⊗ y*) is the sum
/// of z* over every basis element z on I with Δ_{S,T}(z) = x ⊗ y.
pub fn dual_product_bruteforce(x: &BasisElement, y: &BasisElement) -> Result<DualSum> {
    if x.tag() != y.tag() {
        return Err(Error::InvalidInput("mismatched monoids".into()));
    }
    let ground = x.ground().disjoint_union(&y.ground())?;
    if ground.len() > BRUTE_FORCE_BOUND {
        return Err(Error::BoundExceeded(format!(
            "brute-force dual product on {} > {BRUTE_FORCE_BOUND} elements",
            ground.len()
        )));
    }
    let d = Decomposition::new(x.ground(), y.ground())?;
    let target = FormalSum::singleton((x.clone(), y.clone()));
    let mut out = DualSum::zero();
    for z in enumerate_basis(x.tag(), &ground)? {
        if coproduct(&z, &d)? == target {
            out.add_term(Dual(z), crate::formal::rat(1));
        }
    }
    Ok(out)
}

/// The dual coproduct Δ*_{S,T}(z*): the sum of x* ⊗ y* over factorizations
/// μ_{S,T}(x ⊗ y) = z. For these monoids a factorization exists exactly
/// when every factor block lies inside S or inside T (posets: when S and T
/// are order-disconnected), and is then unique.
pub fn dual_coproduct(
    z: &BasisElement,
    d: &Decomposition,
) -> Result<FormalSum<(DualBasisElement, DualBasisElement)>> {
    if d.ground() != z.ground() {
        return Err(Error::GroundMismatch(format!(
            "decomposition of {} applied to element on {}",
            d.ground(),
            z.ground()
        )));
    }
    let (s, t) = (d.s(), d.t());
    let split = |blocks: Vec<(GroundSet, BasisElement)>| -> Option<(Vec<BasisElement>, Vec<BasisElement>)> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (block, piece) in blocks {
            if block.is_subset(s) {
                left.push(piece);
            } else if block.is_subset(t) {
                right.push(piece);
            } else {
                return None;
            }
        }
        Some((left, right))
    };

    let pieces: Option<(BasisElement, BasisElement)> = match z {
        BasisElement::Perm { blocks } => split(
            blocks
                .iter()
                .map(|b| (b.clone(), BasisElement::perm_atom(b.clone()).expect("nonempty block")))
                .collect(),
        )
        .map(|(l, r)| {
            (
                l.into_iter()
                    .fold(BasisElement::unit(MonoidTag::Perm), |acc, f| {
                        product(&acc, &f).expect("disjoint factors")
                    }),
                r.into_iter()
                    .fold(BasisElement::unit(MonoidTag::Perm), |acc, f| {
                        product(&acc, &f).expect("disjoint factors")
                    }),
            )
        }),
        BasisElement::Assoc { factors } => split(
            factors
                .iter()
                .map(|f| {
                    (
                        f.ground(),
                        BasisElement::assoc_atom(f.clone()).expect("nonempty order"),
                    )
                })
                .collect(),
        )
        .map(|(l, r)| {
            (
                l.into_iter()
                    .fold(BasisElement::unit(MonoidTag::Assoc), |acc, f| {
                        product(&acc, &f).expect("disjoint factors")
                    }),
                r.into_iter()
                    .fold(BasisElement::unit(MonoidTag::Assoc), |acc, f| {
                        product(&acc, &f).expect("disjoint factors")
                    }),
            )
        }),
        BasisElement::Orbit { factors } => split(
            factors
                .iter()
                .map(|f| {
                    (
                        f.block.clone(),
                        BasisElement::orbit_atom(f.block.clone(), f.composition.clone())
                            .expect("validated factor"),
                    )
                })
                .collect(),
        )
        .map(|(l, r)| {
            (
                l.into_iter()
                    .fold(BasisElement::unit(MonoidTag::Orbit), |acc, f| {
                        product(&acc, &f).expect("disjoint factors")
                    }),
                r.into_iter()
                    .fold(BasisElement::unit(MonoidTag::Orbit), |acc, f| {
                        product(&acc, &f).expect("disjoint factors")
                    }),
            )
        }),
        BasisElement::Poset { poset } => {
            let crossing = poset
                .covers()
                .iter()
                .any(|(a, b)| s.contains(a) != s.contains(b));
            if crossing {
                None
            } else {
                Some((
                    BasisElement::poset(poset.restrict(s)),
                    BasisElement::poset(poset.restrict(t)),
                ))
            }
        }
    };
    Ok(match pieces {
        Some((l, r)) => FormalSum::singleton((Dual(l), Dual(r))),
        None => FormalSum::zero(),
    })
}

/// True when the dual coproduct of z* vanishes for every nontrivial
/// decomposition of its ground set.
pub fn is_primitive(z: &BasisElement) -> Result<bool> {
    let ground = z.ground();
    for d in crate::formal::enumerate_decompositions(&ground) {
        if !d.is_nontrivial() {
            continue;
        }
        if !dual_coproduct(z, &d)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Lie bracket γ_{S,T}(x* ⊗ y*) on atomic primitives: the commutator of
/// the dual product. The product terms cancel by structural equality of
/// unordered factor sets, which is asserted: every surviving term is
/// atomic.
pub fn lie_bracket(x: &BasisElement, y: &BasisElement) -> Result<DualSum> {
    let forward = dual_product_formula(x, y)?;
    let backward = dual_product_formula(y, x)?;
    let bracket = forward.sub(&backward);
    assert!(
        bracket.keys().all(|k| k.0.is_atomic()),
        "product terms must cancel in the commutator"
    );
    Ok(bracket)
}

/// The commutator computed from the brute-force dual product. Works on any
/// pair within the enumeration bound, including non-primitives, where the
/// closed formulas do not apply.
pub fn lie_bracket_bruteforce(x: &BasisElement, y: &BasisElement) -> Result<DualSum> {
    Ok(dual_product_bruteforce(x, y)?.sub(&dual_product_bruteforce(y, x)?))
}

/// The Lie bracket on orbit composition data by the closed formula:
/// O*_{α·β} − O*_{β·α} + O*_{α⊙β} − O*_{β⊙α}.
pub fn orbit_lie_bracket(
    s_block: &GroundSet,
    alpha: &Composition,
    t_block: &GroundSet,
    beta: &Composition,
) -> Result<DualSum> {
    let forward = orbit_dual_product(s_block, alpha, t_block, beta)?;
    let backward = orbit_dual_product(t_block, beta, s_block, alpha)?;
    Ok(forward.sub(&backward))
}
