//! Finite abelian groups `Z_{N1} x ... x Z_{Nk}`, their subgroups, annihilators,
//! coset transversals and characters.
//!
//! The dual group is identified with the group itself through the pairing
//! `(x, y) = exp(2 pi i sum_i x_i y_i / N_i)`. Elements are addressed by their
//! lexicographic index (first coordinate most significant), so index order and
//! lexicographic order coincide.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A group element (or a character, via self-duality), stored as reduced coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<usize>);

impl Element {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    moduli: Vec<i64>,
}

/// `Z_{N1} x ... x Z_{Nk}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct Group {
    moduli: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
    exponent: usize,
}

impl TryFrom<GroupRepr> for Group {
    type Error = Error;

    fn try_from(repr: GroupRepr) -> Result<Self> {
        Group::new(&repr.moduli)
    }
}

impl From<Group> for GroupRepr {
    fn from(g: Group) -> Self {
        GroupRepr {
            moduli: g.moduli.iter().map(|&n| n as i64).collect(),
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Group {
    /// Builds the product of cyclic groups with the given moduli.
    pub fn new(moduli: &[i64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::EmptyGroup);
        }
        if let Some(&bad) = moduli.iter().find(|&&n| n <= 0) {
            return Err(Error::InvalidModulus(bad));
        }
        let moduli: Vec<usize> = moduli.iter().map(|&n| n as usize).collect();
        let mut strides = vec![1; moduli.len()];
        for i in (0..moduli.len() - 1).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        let order = moduli.iter().product();
        let exponent = moduli.iter().fold(1, |l, &n| l / gcd(l, n) * n);
        Ok(Group {
            moduli,
            strides,
            order,
            exponent,
        })
    }

    /// Cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Self {
        Group::new(&[n as i64]).expect("cyclic group of positive order")
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Least common multiple of the moduli; every character value is an
    /// `exponent`-th root of unity.
    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Validates raw coordinates; they must already be reduced.
    pub fn element(&self, coords: &[i64]) -> Result<Element> {
        let ok = coords.len() == self.moduli.len()
            && coords
                .iter()
                .zip(&self.moduli)
                .all(|(&c, &n)| c >= 0 && (c as usize) < n);
        if !ok {
            return Err(Error::InvalidElement {
                element: coords.to_vec(),
                moduli: self.moduli.clone(),
            });
        }
        Ok(Element(coords.iter().map(|&c| c as usize).collect()))
    }

    /// Reduces arbitrary integer coordinates modulo the moduli.
    pub fn reduce(&self, coords: &[i64]) -> Result<Element> {
        if coords.len() != self.moduli.len() {
            return Err(Error::InvalidElement {
                element: coords.to_vec(),
                moduli: self.moduli.clone(),
            });
        }
        Ok(Element(
            coords
                .iter()
                .zip(&self.moduli)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as usize)
                .collect(),
        ))
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        if e.0.len() == self.moduli.len() && e.0.iter().zip(&self.moduli).all(|(&c, &n)| c < n) {
            Ok(())
        } else {
            Err(Error::InvalidElement {
                element: e.0.iter().map(|&c| c as i64).collect(),
                moduli: self.moduli.clone(),
            })
        }
    }

    pub fn zero(&self) -> Element {
        Element(vec![0; self.moduli.len()])
    }

    /// Lexicographic index of a (valid) element.
    pub fn index_of(&self, e: &Element) -> usize {
        e.0.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn element_at(&self, index: usize) -> Element {
        Element(
            self.moduli
                .iter()
                .zip(&self.strides)
                .map(|(&n, &s)| (index / s) % n)
                .collect(),
        )
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.moduli)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.neg(b))
    }

    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            out += (((a / s) % n + (b / s) % n) % n) * s;
        }
        out
    }

    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            out += (((a / s) % n + n - (b / s) % n) % n) * s;
        }
        out
    }

    pub fn neg_index(&self, a: usize) -> usize {
        self.sub_index(0, a)
    }

    /// The pairing `(x, y)` as an integer `p` with `(x, y) = exp(2 pi i p / exponent)`.
    pub fn pairing_index(&self, x: usize, y: usize) -> usize {
        let mut p = 0;
        for (&n, &s) in self.moduli.iter().zip(&self.strides) {
            let prod = ((x / s) % n) * ((y / s) % n) % n;
            p = (p + prod * (self.exponent / n)) % self.exponent;
        }
        p
    }

    /// Table of the `exponent`-th roots of unity, `roots[p] = exp(2 pi i p / exponent)`.
    pub fn roots_of_unity(&self) -> Vec<Complex64> {
        (0..self.exponent)
            .map(|p| Complex64::from_polar(1.0, TAU * p as f64 / self.exponent as f64))
            .collect()
    }

    /// The character value `(x, gamma) = exp(2 pi i sum_i x_i gamma_i / N_i)`.
    pub fn character(&self, x: &Element, gamma: &Element) -> Complex64 {
        let p = self.pairing_index(self.index_of(x), self.index_of(gamma));
        Complex64::from_polar(1.0, TAU * p as f64 / self.exponent as f64)
    }
}

/// A fully enumerated subgroup.
#[derive(Debug, Clone)]
pub struct Subgroup {
    group: Group,
    generators: Vec<Element>,
    members: Vec<bool>,
    indices: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Subgroup", 3)?;
        s.serialize_field("generators", &self.generators)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("elements", &self.elements())?;
        s.end()
    }
}

impl Subgroup {
    /// The smallest subgroup containing `gens`.
    pub fn closure(group: &Group, gens: &[Element]) -> Result<Self> {
        for g in gens {
            group.check(g)?;
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| group.index_of(g)).collect();
        let mut members = vec![false; group.order()];
        members[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in &gen_idx {
                let y = group.add_index(x, g);
                if !members[y] {
                    members[y] = true;
                    frontier.push(y);
                }
            }
        }
        Ok(Self::from_members(group, gens.to_vec(), members))
    }

    fn from_members(group: &Group, generators: Vec<Element>, members: Vec<bool>) -> Self {
        let indices = members
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(i))
            .collect();
        Subgroup {
            group: group.clone(),
            generators,
            members,
            indices,
        }
    }

    /// Wraps an element set that is already known to be closed, picking a
    /// greedy generating set (lexicographically earliest elements that enlarge
    /// the running closure).
    pub(crate) fn from_closed_set(group: &Group, members: Vec<bool>) -> Self {
        let mut span = vec![false; group.order()];
        span[0] = true;
        let mut gens = Vec::new();
        for i in 0..group.order() {
            if members[i] && !span[i] {
                gens.push(group.element_at(i));
                // Enlarge span by the cyclic group generated by i.
                let current: Vec<usize> = (0..group.order()).filter(|&j| span[j]).collect();
                let mut step = i;
                while step != 0 {
                    for &j in &current {
                        span[group.add_index(j, step)] = true;
                    }
                    step = group.add_index(step, i);
                }
            }
        }
        Self::from_members(group, gens, members)
    }

    /// Builds a subgroup from an arbitrary element set, or `None` when the set
    /// is not closed under addition and negation.
    pub fn try_from_indices(group: &Group, set: &[usize]) -> Option<Self> {
        let mut members = vec![false; group.order()];
        for &i in set {
            members[i] = true;
        }
        if !members[0] {
            return None;
        }
        for &a in set {
            if !members[group.neg_index(a)] {
                return None;
            }
            for &b in set {
                if !members[group.add_index(a, b)] {
                    return None;
                }
            }
        }
        Some(Self::from_closed_set(group, members))
    }

    pub fn trivial(group: &Group) -> Self {
        Self::closure(group, &[]).expect("no generators to validate")
    }

    pub fn whole(group: &Group) -> Self {
        Self::from_closed_set(group, vec![true; group.order()])
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.indices.len()
    }

    /// Sorted element indices.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn elements(&self) -> Vec<Element> {
        self.indices
            .iter()
            .map(|&i| self.group.element_at(i))
            .collect()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.group.check(e).is_ok() && self.members[self.group.index_of(e)]
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.group == other.group && self.indices.iter().all(|&i| other.members[i])
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group.order()
    }
}

/// The annihilator `K* = { gamma : (k, gamma) = 1 for all k in K }`, realized
/// inside the same group via self-duality.
pub fn annihilator(group: &Group, k: &Subgroup) -> Subgroup {
    let members = (0..group.order())
        .map(|gamma| k.indices().iter().all(|&x| group.pairing_index(x, gamma) == 0))
        .collect();
    Subgroup::from_closed_set(group, members)
}

/// Canonical coset representatives of `ambient / subgroup`: the lexicographically
/// smallest member of every coset, listed in lexicographic order.
#[derive(Debug, Clone)]
pub struct Transversal {
    ambient: Subgroup,
    subgroup: Subgroup,
    reps: Vec<usize>,
    // ambient element index -> position of its coset representative
    coset: Vec<Option<usize>>,
}

impl Transversal {
    pub fn new(ambient: &Subgroup, subgroup: &Subgroup) -> Result<Self> {
        if !subgroup.is_subgroup_of(ambient) {
            return Err(Error::NotContained {
                inner: "subgroup",
                outer: "ambient group",
            });
        }
        let group = ambient.group();
        let mut coset = vec![None; group.order()];
        let mut reps = Vec::with_capacity(ambient.order() / subgroup.order());
        for &x in ambient.indices() {
            if coset[x].is_some() {
                continue;
            }
            let pos = reps.len();
            reps.push(x);
            for &k in subgroup.indices() {
                coset[group.add_index(x, k)] = Some(pos);
            }
        }
        Ok(Transversal {
            ambient: ambient.clone(),
            subgroup: subgroup.clone(),
            reps,
            coset,
        })
    }

    pub fn ambient(&self) -> &Subgroup {
        &self.ambient
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep_indices(&self) -> &[usize] {
        &self.reps
    }

    pub fn reps(&self) -> Vec<Element> {
        let g = self.ambient.group();
        self.reps.iter().map(|&i| g.element_at(i)).collect()
    }

    /// Position (in `reps`) of the coset containing the ambient element `index`.
    pub fn coset_of(&self, index: usize) -> Option<usize> {
        self.coset[index]
    }

    /// Position of `e` among the representatives, if it is one.
    pub fn position(&self, e: &Element) -> Option<usize> {
        let g = self.ambient.group();
        g.check(e).ok()?;
        let i = g.index_of(e);
        self.reps.binary_search(&i).ok()
    }
}

/// Transversal of `G / K`.
pub fn transversal(group: &Group, k: &Subgroup) -> Result<Transversal> {
    Transversal::new(&Subgroup::whole(group), k)
}

/// Every subgroup `M` with `H <= M <= G`, ordered by order then elements.
///
/// Explores the lattice upwards from `H`, closing `K + r` for each coset
/// representative `r` of every subgroup `K` already found.
pub fn subgroups_between(group: &Group, h: &Subgroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut found = Vec::new();
    let mut queue = vec![h.clone()];
    seen.insert(h.indices().to_vec());
    while let Some(k) = queue.pop() {
        let t = transversal(group, &k).expect("subgroup of its own group");
        for &r in t.rep_indices().iter().skip(1) {
            let mut gens = k.generators().to_vec();
            gens.push(group.element_at(r));
            let bigger = Subgroup::closure(group, &gens).expect("valid elements");
            if seen.insert(bigger.indices().to_vec()) {
                queue.push(bigger);
            }
        }
        found.push(k);
    }
    found.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.indices().cmp(b.indices()))
    });
    found
}

/// All subgroups of `G`.
pub fn all_subgroups(group: &Group) -> Vec<Subgroup> {
    subgroups_between(group, &Subgroup::trivial(group))
}
