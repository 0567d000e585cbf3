//! Exact rational coefficients, ground sets, decompositions, and finitely
//! supported formal linear combinations over ordered basis keys.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar. Arbitrary precision, always in lowest terms with a
/// positive denominator (maintained by `num`).
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the textual form emitted by [`format_rational`]: `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    BigRational::from_str(s.trim()).map_err(|e| Error::Parse {
        pos: 0,
        msg: format!("bad rational {s:?}: {e}"),
    })
}

/// Renders `p` when the denominator is 1, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// A label naming one atom of a ground set.
pub type Label = String;

/// A finite set of atom labels with deterministic (sorted) iteration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroundSet(BTreeSet<Label>);

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Label>,
    {
        GroundSet(labels.into_iter().map(Into::into).collect())
    }

    pub fn empty() -> Self {
        GroundSet(BTreeSet::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.contains(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Label> + '_ {
        self.0.iter()
    }

    pub fn labels(&self) -> Vec<Label> {
        self.0.iter().cloned().collect()
    }

    pub fn insert(&mut self, label: Label) -> bool {
        self.0.insert(label)
    }

    pub fn is_subset(&self, other: &GroundSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &GroundSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &GroundSet) -> GroundSet {
        GroundSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &GroundSet) -> GroundSet {
        GroundSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &GroundSet) -> GroundSet {
        GroundSet(self.0.difference(&other.0).cloned().collect())
    }

    /// Disjoint union; errors when the operands overlap.
    pub fn disjoint_union(&self, other: &GroundSet) -> Result<GroundSet> {
        if !self.is_disjoint(other) {
            return Err(Error::OverlappingGround(format!(
                "{} and {}",
                self, other
            )));
        }
        Ok(self.union(other))
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Label> for GroundSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        GroundSet(iter.into_iter().collect())
    }
}

/// An ordered pair (S, T) with S ⊔ T = I.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition {
    s: GroundSet,
    t: GroundSet,
}

impl Decomposition {
    pub fn new(s: GroundSet, t: GroundSet) -> Result<Self> {
        if !s.is_disjoint(&t) {
            return Err(Error::OverlappingGround(format!("{s} and {t}")));
        }
        Ok(Decomposition { s, t })
    }

    /// Builds (S, I∖S), checking S ⊆ I.
    pub fn of_subset(ground: &GroundSet, s: GroundSet) -> Result<Self> {
        if !s.is_subset(ground) {
            return Err(Error::GroundMismatch(format!("{s} not a subset of {ground}")));
        }
        let t = ground.difference(&s);
        Ok(Decomposition { s, t })
    }

    pub fn s(&self) -> &GroundSet {
        &self.s
    }

    pub fn t(&self) -> &GroundSet {
        &self.t
    }

    pub fn ground(&self) -> GroundSet {
        self.s.union(&self.t)
    }

    pub fn swapped(&self) -> Decomposition {
        Decomposition {
            s: self.t.clone(),
            t: self.s.clone(),
        }
    }

    /// Both sides nonempty.
    pub fn is_nontrivial(&self) -> bool {
        !self.s.is_empty() && !self.t.is_empty()
    }
}

/// All 2^|I| ordered decompositions I = S ⊔ T, in deterministic order:
/// subsets S are enumerated by binary counter over the sorted labels, so the
/// first entry is (∅, I) and the last is (I, ∅).
pub fn enumerate_decompositions(ground: &GroundSet) -> Vec<Decomposition> {
    let labels = ground.labels();
    let n = labels.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u64..(1u64 << n) {
        let mut s = GroundSet::empty();
        let mut t = GroundSet::empty();
        for (i, l) in labels.iter().enumerate() {
            if mask >> i & 1 == 1 {
                s.insert(l.clone());
            } else {
                t.insert(l.clone());
            }
        }
        out.push(Decomposition { s, t });
    }
    out
}

/// All subsets of `ground`, smallest mask first.
pub fn enumerate_subsets(ground: &GroundSet) -> Vec<GroundSet> {
    enumerate_decompositions(ground)
        .into_iter()
        .map(|d| d.s)
        .collect()
}

/// A finitely supported map from basis keys to exact rationals. Terms with a
/// zero coefficient are never stored; iteration is sorted by key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum<K: Ord> {
    terms: std::collections::BTreeMap<K, Rational>,
}

impl<K: Ord> Default for FormalSum<K> {
    fn default() -> Self {
        FormalSum {
            terms: std::collections::BTreeMap::new(),
        }
    }
}

impl<K: Ord> FormalSum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(key: K) -> Self {
        let mut s = Self::zero();
        s.add_term(key, Rational::one());
        s
    }

    pub fn with_coeff(key: K, coeff: Rational) -> Self {
        let mut s = Self::zero();
        s.add_term(key, coeff);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains_key(&self, key: &K) -> bool {
        self.terms.contains_key(key)
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let new = o.get().clone() + coeff;
                if new.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = new;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self
    where
        K: Clone,
    {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self
    where
        K: Clone,
    {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, scalar: &Rational) -> Self
    where
        K: Clone,
    {
        let mut out = Self::zero();
        if scalar.is_zero() {
            return out;
        }
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone() * scalar.clone());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> + '_ {
        self.terms.keys()
    }

    /// Sum of all coefficients.
    pub fn coeff_sum(&self) -> Rational {
        self.terms
            .values()
            .fold(Rational::zero(), |a, b| a + b.clone())
    }

    /// Applies `f` to every key, accumulating coefficients of collided images.
    pub fn map_keys<J: Ord>(&self, mut f: impl FnMut(&K) -> J) -> FormalSum<J> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Fallible version of [`FormalSum::map_keys`].
    pub fn try_map_keys<J: Ord, E>(
        &self,
        mut f: impl FnMut(&K) -> std::result::Result<J, E>,
    ) -> std::result::Result<FormalSum<J>, E> {
        let mut out = FormalSum::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k)?, c.clone());
        }
        Ok(out)
    }

    /// True when every coefficient is a positive integer.
    pub fn all_coeffs_positive_integers(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.is_integer() && c.is_positive())
    }
}

impl<K: Ord> FromIterator<(K, Rational)> for FormalSum<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl<K: Ord + fmt::Display> fmt::Display for FormalSum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{}·{k}", format_rational(c))?;
            }
        }
        Ok(())
    }
}

// JSON form: array of {"coeff": "p/q", "key": <key>} sorted by key.
impl<K: Ord + Serialize> Serialize for FormalSum<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a, K> {
            coeff: String,
            key: &'a K,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&Term {
                coeff: format_rational(c),
                key: k,
            })?;
        }
        seq.end()
    }
}

impl<'de, K: Ord + Deserialize<'de>> Deserialize<'de> for FormalSum<K> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term<K> {
            coeff: String,
            key: K,
        }
        struct V<K>(std::marker::PhantomData<K>);
        impl<'de, K: Ord + Deserialize<'de>> Visitor<'de> for V<K> {
            type Value = FormalSum<K>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a sequence of {{coeff, key}} terms")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = FormalSum::zero();
                while let Some(term) = seq.next_element::<Term<K>>()? {
                    let coeff = parse_rational(&term.coeff).map_err(de::Error::custom)?;
                    out.add_term(term.key, coeff);
                }
                Ok(out)
            }
        }
        deserializer.deserialize_seq(V(std::marker::PhantomData))
    }
}
