//! Independent geometric ground truth: exact integer vertex enumeration for
//! the three polytope families, tangent-cone membership by exact rational
//! feasibility, vertex-poset extraction, the geometric Brion map, and
//! 1_S-maximal-face product splitting.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::combinat::{Composition, LinearOrder, enumerate_trees, loday_vertex};
use crate::error::{Error, Result};
use crate::formal::{FormalSum, GroundSet, Label, Rational, rat};
use crate::lp;
use crate::poset::Poset;

/// A finite set of integer points, all vertices of their convex hull, with
/// coordinates indexed by the sorted labels of the ground set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LatticePolytope {
    ground: GroundSet,
    vertices: BTreeSet<Vec<i64>>,
}

impl<'de> Deserialize<'de> for LatticePolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ground: GroundSet,
            vertices: Vec<Vec<i64>>,
        }
        let raw = Raw::deserialize(d)?;
        LatticePolytope::new(raw.ground, raw.vertices).map_err(serde::de::Error::custom)
    }
}

impl LatticePolytope {
    /// Builds a polytope from a vertex list. Points must be pairwise
    /// distinct and of the right dimension; extremality of every listed
    /// point is re-verified in debug builds.
    pub fn new(ground: GroundSet, points: Vec<Vec<i64>>) -> Result<LatticePolytope> {
        let n = ground.len();
        let mut vertices = BTreeSet::new();
        for p in points {
            if p.len() != n {
                return Err(Error::InvalidInput(format!(
                    "point of dimension {} on ground set of size {n}",
                    p.len()
                )));
            }
            if !vertices.insert(p) {
                return Err(Error::InvalidInput("repeated vertex in point list".into()));
            }
        }
        if vertices.is_empty() {
            return Err(Error::InvalidInput("a polytope needs at least one vertex".into()));
        }
        let poly = LatticePolytope { ground, vertices };
        debug_assert!(poly.all_points_extreme(), "listed point is not a vertex");
        Ok(poly)
    }

    fn all_points_extreme(&self) -> bool {
        self.vertices.iter().all(|v| {
            let others: Vec<Vec<Rational>> = self
                .vertices
                .iter()
                .filter(|u| *u != v)
                .map(|u| u.iter().map(|&x| rat(x)).collect())
                .collect();
            let target: Vec<Rational> = v.iter().map(|&x| rat(x)).collect();
            !lp::in_convex_hull(&others, &target)
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn vertices(&self) -> &BTreeSet<Vec<i64>> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: &[i64]) -> bool {
        self.vertices.contains(v)
    }

    /// Coordinate of `v` at `label`.
    fn coord(&self, v: &[i64], label: &str) -> i64 {
        let idx = self
            .ground
            .iter()
            .position(|l| l == label)
            .expect("label in ground");
        v[idx]
    }
}

/// The standard permutahedron π_I: all |I|! points whose coordinates are a
/// permutation of (1,…,n).
pub fn permutahedron_vertices(ground: &GroundSet) -> Result<LatticePolytope> {
    if ground.is_empty() {
        return Err(Error::InvalidInput("permutahedron needs a nonempty ground set".into()));
    }
    let n = ground.len();
    let points: Vec<Vec<i64>> = (1..=n as i64).permutations(n).collect();
    LatticePolytope::new(ground.clone(), points)
}

/// The Loday associahedron a_ℓ: the C_n points v_ℓ(T) over T ∈ Y_n.
pub fn associahedron_vertices(ell: &LinearOrder) -> Result<LatticePolytope> {
    if ell.is_empty() {
        return Err(Error::InvalidInput("associahedron needs a nonempty order".into()));
    }
    let ground = ell.ground();
    let labels = ground.labels();
    let mut points = Vec::new();
    for t in enumerate_trees(ell.len()) {
        let coords: BTreeMap<Label, i64> = loday_vertex(&t, ell)?;
        points.push(labels.iter().map(|l| coords[l]).collect());
    }
    LatticePolytope::new(ground, points)
}

/// An orbit polytope representative for the class O_λ: all distinct
/// permutations of the canonical point with λ_1 entries of k, …, λ_k entries
/// of 1.
pub fn orbit_vertices(lambda: &Composition, ground: &GroundSet) -> Result<LatticePolytope> {
    if lambda.weight() != ground.len() {
        return Err(Error::InvalidInput(format!(
            "composition {lambda} has weight {} but ground set has {} labels",
            lambda.weight(),
            ground.len()
        )));
    }
    if ground.is_empty() {
        return Err(Error::InvalidInput("orbit polytope needs a nonempty ground set".into()));
    }
    let k = lambda.num_parts() as i64;
    let mut canonical = Vec::with_capacity(ground.len());
    for (i, &part) in lambda.parts().iter().enumerate() {
        for _ in 0..part {
            canonical.push(k - i as i64);
        }
    }
    let points: BTreeSet<Vec<i64>> = canonical
        .iter()
        .copied()
        .permutations(canonical.len())
        .collect();
    LatticePolytope::new(ground.clone(), points.into_iter().collect())
}

/// Tangent-cone membership: d lies in cone_v(P) = cone{u − v : u vertex}.
/// Decided by exact rational feasibility.
pub fn cone_member(poly: &LatticePolytope, v: &[i64], d: &[i64]) -> Result<bool> {
    if !poly.contains_vertex(v) {
        return Err(Error::InvalidInput("apex is not a vertex of the polytope".into()));
    }
    if d.iter().all(|&x| x == 0) {
        return Err(Error::InvalidInput("direction must be nonzero".into()));
    }
    if d.len() != poly.ground.len() {
        return Err(Error::InvalidInput("direction has wrong dimension".into()));
    }
    let columns: Vec<Vec<Rational>> = poly
        .vertices
        .iter()
        .filter(|u| u.as_slice() != v)
        .map(|u| u.iter().zip(v).map(|(&a, &b)| rat(a - b)).collect())
        .collect();
    let target: Vec<Rational> = d.iter().map(|&x| rat(x)).collect();
    Ok(lp::nonneg_combination_exists(&columns, &target))
}

/// The vertex poset of a generalized permutahedron at `v`: i ≥ j exactly
/// when e_i − e_j lies in the tangent cone. Errors when the relation is not
/// antisymmetric (the input is not a GP or `v` is not a vertex); asserts
/// that cone membership is transitively closed.
pub fn vertex_poset(poly: &LatticePolytope, v: &[i64]) -> Result<Poset> {
    let labels = poly.ground.labels();
    let n = labels.len();
    let mut above = vec![vec![false; n]; n]; // above[j][i]: i ≥ j
    for j in 0..n {
        for i in 0..n {
            if i == j {
                continue;
            }
            let mut d = vec![0i64; n];
            d[i] = 1;
            d[j] = -1;
            above[j][i] = cone_member(poly, v, &d)?;
        }
    }
    for i in 0..n {
        for j in 0..i {
            if above[i][j] && above[j][i] {
                return Err(Error::InvalidInput(format!(
                    "tangent cone at {v:?} contains both root directions for {} and {}; \
                     not a generalized permutahedron vertex",
                    labels[i], labels[j]
                )));
            }
        }
    }
    // Cones are closed under addition, so the relation must already be
    // transitive.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if above[a][b] && above[b][c] {
                    assert!(above[a][c], "cone relation failed transitivity");
                }
            }
        }
    }
    let mut relations = Vec::new();
    for j in 0..n {
        for i in 0..n {
            if above[j][i] {
                relations.push((labels[j].clone(), labels[i].clone()));
            }
        }
    }
    Poset::from_relations(poly.ground.clone(), &relations)
}

/// The geometric Brion map: the sum of the vertex posets over all vertices,
/// each with coefficient 1.
pub fn brion_geometric(poly: &LatticePolytope) -> Result<FormalSum<Poset>> {
    let mut sum = FormalSum::zero();
    for v in &poly.vertices {
        sum.add_term(vertex_poset(poly, v)?, rat(1));
    }
    Ok(sum)
}

/// Splits the 1_S-maximal face of a generalized permutahedron as a product:
/// selects the vertices maximizing ⟨1_S, ·⟩, projects them to S- and
/// T-coordinates, and checks the selected set is exactly the product of the
/// two projections.
pub fn max_face_split(
    poly: &LatticePolytope,
    s: &GroundSet,
) -> Result<(LatticePolytope, LatticePolytope)> {
    if !s.is_subset(&poly.ground) {
        return Err(Error::GroundMismatch(format!(
            "{s} is not a subset of {}",
            poly.ground
        )));
    }
    let t = poly.ground.difference(s);
    let labels = poly.ground.labels();
    let s_idx: Vec<usize> = (0..labels.len()).filter(|&i| s.contains(&labels[i])).collect();
    let t_idx: Vec<usize> = (0..labels.len()).filter(|&i| t.contains(&labels[i])).collect();

    let value = |v: &Vec<i64>| -> i64 { s_idx.iter().map(|&i| v[i]).sum() };
    let best = poly.vertices.iter().map(value).max().expect("nonempty");
    let face: Vec<&Vec<i64>> = poly.vertices.iter().filter(|v| value(v) == best).collect();

    let proj = |v: &Vec<i64>, idx: &[usize]| -> Vec<i64> { idx.iter().map(|&i| v[i]).collect() };
    let s_proj: BTreeSet<Vec<i64>> = face.iter().map(|v| proj(v, &s_idx)).collect();
    let t_proj: BTreeSet<Vec<i64>> = face.iter().map(|v| proj(v, &t_idx)).collect();

    if face.len() != s_proj.len() * t_proj.len() {
        return Err(Error::InvalidInput(
            "1_S-maximal face is not a product; input is not a generalized permutahedron".into(),
        ));
    }
    let face_set: BTreeSet<&Vec<i64>> = face.iter().copied().collect();
    for sp in &s_proj {
        for tp in &t_proj {
            let mut joined = vec![0i64; labels.len()];
            for (pos, &i) in s_idx.iter().enumerate() {
                joined[i] = sp[pos];
            }
            for (pos, &i) in t_idx.iter().enumerate() {
                joined[i] = tp[pos];
            }
            if !face_set.contains(&joined) {
                return Err(Error::InvalidInput(
                    "1_S-maximal face is not a product; input is not a generalized permutahedron"
                        .into(),
                ));
            }
        }
    }
    Ok((
        LatticePolytope::new(s.clone(), s_proj.into_iter().collect())?,
        LatticePolytope::new(t, t_proj.into_iter().collect())?,
    ))
}

/// The product polytope P × Q on the disjoint union of the ground sets.
pub fn product_polytope(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    let ground = p.ground.disjoint_union(&q.ground)?;
    let labels = ground.labels();
    let mut points = Vec::new();
    for u in &p.vertices {
        for w in &q.vertices {
            let coords: Vec<i64> = labels
                .iter()
                .map(|l| {
                    if p.ground.contains(l) {
                        p.coord(u, l)
                    } else {
                        q.coord(w, l)
                    }
                })
                .collect();
            points.push(coords);
        }
    }
    LatticePolytope::new(ground, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{all_chains, chain_from_order, rbt_poset};

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied())
    }

    fn ord(labels: &[&str]) -> LinearOrder {
        LinearOrder::new(labels.iter().copied()).unwrap()
    }

    #[test]
    fn permutahedron_basics() {
        let p1 = permutahedron_vertices(&g(&["a"])).unwrap();
        assert_eq!(p1.vertices(), &BTreeSet::from([vec![1]]));

        let p3 = permutahedron_vertices(&g(&["1", "2", "3"])).unwrap();
        assert_eq!(p3.vertex_count(), 6);
        for v in p3.vertices() {
            assert_eq!(v.iter().sum::<i64>(), 6);
            let mut s = v.clone();
            s.sort_unstable();
            assert_eq!(s, vec![1, 2, 3]);
        }
    }

    #[test]
    fn associahedron_basics() {
        let a1 = associahedron_vertices(&ord(&["x"])).unwrap();
        assert_eq!(a1.vertices(), &BTreeSet::from([vec![1]]));

        let a3 = associahedron_vertices(&ord(&["1", "2", "3"])).unwrap();
        assert_eq!(a3.vertex_count(), 5);

        let a4 = associahedron_vertices(&ord(&["1", "2", "3", "4"])).unwrap();
        assert_eq!(a4.vertex_count(), 14);
        assert!(a4.contains_vertex(&[2, 1, 6, 1]));
    }

    #[test]
    fn orbit_basics() {
        let o = orbit_vertices(&Composition::new([1, 2]).unwrap(), &g(&["1", "2", "3"])).unwrap();
        assert_eq!(o.vertex_count(), 3);
        assert!(o.contains_vertex(&[2, 1, 1]));

        let point = orbit_vertices(&Composition::new([4]).unwrap(), &g(&["a", "b", "c", "d"]))
            .unwrap();
        assert_eq!(point.vertex_count(), 1);

        let fine = orbit_vertices(
            &Composition::new([1, 1, 1]).unwrap(),
            &g(&["1", "2", "3"]),
        )
        .unwrap();
        let perm = permutahedron_vertices(&g(&["1", "2", "3"])).unwrap();
        assert_eq!(fine.vertices(), perm.vertices());

        assert!(orbit_vertices(&Composition::new([2]).unwrap(), &g(&["a"])).is_err());
    }

    #[test]
    fn cone_membership_on_segment() {
        let seg = LatticePolytope::new(g(&["x", "y"]), vec![vec![1, 2], vec![2, 1]]).unwrap();
        // At v=(1,2) the generator is (1,-1).
        assert!(cone_member(&seg, &[1, 2], &[1, -1]).unwrap());
        assert!(cone_member(&seg, &[1, 2], &[3, -3]).unwrap());
        assert!(!cone_member(&seg, &[1, 2], &[-1, 1]).unwrap());
        assert!(!cone_member(&seg, &[1, 2], &[0, 1]).unwrap());
        assert!(cone_member(&seg, &[1, 2], &[0, 0]).is_err());
        assert!(cone_member(&seg, &[0, 0], &[1, -1]).is_err());
    }

    #[test]
    fn cone_membership_neighbor_swaps() {
        let p3 = permutahedron_vertices(&g(&["1", "2", "3"])).unwrap();
        // At v=(2,1,3): e_2 − e_1 is an edge direction, e_1 − e_2 is not.
        assert!(cone_member(&p3, &[2, 1, 3], &[-1, 1, 0]).unwrap());
        assert!(!cone_member(&p3, &[2, 1, 3], &[1, -1, 0]).unwrap());
        assert!(cone_member(&p3, &[2, 1, 3], &[1, 0, -1]).unwrap());
    }

    #[test]
    fn vertex_poset_of_permutahedron_is_chain() {
        let p3 = permutahedron_vertices(&g(&["1", "2", "3"])).unwrap();
        let p = vertex_poset(&p3, &[2, 1, 3]).unwrap();
        // chain 2 ≥ 1 ≥ 3, i.e. 3 < 1 < 2
        assert_eq!(p, chain_from_order(&ord(&["3", "1", "2"])));
    }

    #[test]
    fn vertex_poset_of_point_is_antichain() {
        let point = LatticePolytope::new(g(&["a", "b"]), vec![vec![3, 5]]).unwrap();
        let p = vertex_poset(&point, &[3, 5]).unwrap();
        assert_eq!(p, Poset::antichain(g(&["a", "b"])));
    }

    #[test]
    fn brion_geometric_permutahedron_gives_all_chains() {
        let ground = g(&["a", "b", "c"]);
        let p3 = permutahedron_vertices(&ground).unwrap();
        let b = brion_geometric(&p3).unwrap();
        assert_eq!(b.num_terms(), 6);
        for c in all_chains(&ground) {
            assert_eq!(b.coeff(&c), rat(1));
        }
    }

    #[test]
    fn brion_geometric_associahedron_matches_tree_posets() {
        let ell = ord(&["1", "2", "3"]);
        let a3 = associahedron_vertices(&ell).unwrap();
        let b = brion_geometric(&a3).unwrap();
        assert_eq!(b.num_terms(), 5);
        for t in enumerate_trees(3) {
            assert_eq!(b.coeff(&rbt_poset(&t, &ell).unwrap()), rat(1));
        }
    }

    #[test]
    fn loday_vertex_cone_is_tree_poset() {
        for n in 1..=5usize {
            let ell = LinearOrder::new((1..=n).map(|i| i.to_string())).unwrap();
            let poly = associahedron_vertices(&ell).unwrap();
            let labels = poly.ground().labels();
            for t in enumerate_trees(n) {
                let coords = loday_vertex(&t, &ell).unwrap();
                let v: Vec<i64> = labels.iter().map(|l| coords[l]).collect();
                assert_eq!(
                    vertex_poset(&poly, &v).unwrap(),
                    rbt_poset(&t, &ell).unwrap(),
                    "n={n} tree={t}"
                );
            }
        }
    }

    #[test]
    fn max_face_split_whole_set() {
        let p3 = permutahedron_vertices(&g(&["a", "b", "c"])).unwrap();
        let (ps, pt) = max_face_split(&p3, &g(&["a", "b", "c"])).unwrap();
        assert_eq!(ps.vertices(), p3.vertices());
        assert_eq!(pt.vertex_count(), 1);
        assert!(pt.ground().is_empty());
    }

    #[test]
    fn max_face_split_permutahedron_sides_are_permutahedra() {
        let ground = g(&["a", "b", "c", "d"]);
        let p = permutahedron_vertices(&ground).unwrap();
        for s in crate::formal::enumerate_subsets(&ground) {
            let (ps, pt) = max_face_split(&p, &s).unwrap();
            // compare via vertex posets (normal equivalence at vertices)
            if !s.is_empty() {
                let expect = brion_geometric(&permutahedron_vertices(&s).unwrap()).unwrap();
                assert_eq!(brion_geometric(&ps).unwrap(), expect);
            }
            let t = ground.difference(&s);
            if !t.is_empty() {
                let expect = brion_geometric(&permutahedron_vertices(&t).unwrap()).unwrap();
                assert_eq!(brion_geometric(&pt).unwrap(), expect);
            }
        }
    }

    #[test]
    fn max_face_split_associahedron_example() {
        // Splitting a_{1234} at S={2} leaves a_1 × a_{34} on the T side, up
        // to normal equivalence.
        let a4 = associahedron_vertices(&ord(&["1", "2", "3", "4"])).unwrap();
        let (ps, pt) = max_face_split(&a4, &g(&["2"])).unwrap();
        assert_eq!(ps.vertex_count(), 1);
        let a1 = associahedron_vertices(&ord(&["1"])).unwrap();
        let a34 = associahedron_vertices(&ord(&["3", "4"])).unwrap();
        let prod = product_polytope(&a1, &a34).unwrap();
        assert_eq!(
            brion_geometric(&pt).unwrap(),
            brion_geometric(&prod).unwrap()
        );
    }

    #[test]
    fn non_gp_split_rejected() {
        // A segment in direction (-1,1,1): not a root direction, and its
        // 1_{a,b}-maximal face is not a product.
        let seg = LatticePolytope::new(
            g(&["a", "b", "c"]),
            vec![vec![1, 0, 0], vec![0, 1, 1]],
        )
        .unwrap();
        assert!(max_face_split(&seg, &g(&["a", "b"])).is_err());
        // Splitting at S = I or S = ∅ is always trivially a product.
        assert!(max_face_split(&seg, &g(&["a", "b", "c"])).is_ok());
        assert!(max_face_split(&seg, &g(&[])).is_ok());
    }

    #[test]
    fn polytope_json_roundtrip() {
        let p = permutahedron_vertices(&g(&["a", "b", "c"])).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        let back: LatticePolytope = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<LatticePolytope>(
            "{\"ground\":[\"a\"],\"vertices\":[[1,2]]}"
        )
        .is_err());
    }
}
