//! Permutations and groups generated by them.
//!
//! Permutations act on the left: `p.compose(&q)` applies `q` first. Groups
//! are enumerated completely by breadth-first closure from the identity, so
//! every element has a stable index and a word in the generators (read off
//! the breadth-first spanning tree). Element sets of a group are handled as
//! sets of these indices.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;
use std::ops::Mul;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::twisted::Automorphism;

/// Indices into [`PermGroup::elements`].
pub type ElementSet = BTreeSet<usize>;

/// A bijection of `{0, .., n-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (i, &v) in images.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} of point {i} is out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("image {v} repeated")));
            }
        }
        Ok(Permutation { images: images.into_iter().map(|v| v as u32).collect() })
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= degree || b >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle point out of range for degree {degree}"
                    )));
                }
                images[a] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&v| v as usize)
    }

    /// `self ∘ other`: the permutation `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut result = Permutation::identity(self.degree());
        for _ in 0..exponent.unsigned_abs() {
            result = &base * &result;
        }
        result
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        &(g * self) * &g.inverse()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.apply(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.apply(next);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| crate::arith::lcm(acc, c.len()))
    }

    /// Places the given permutations side by side on disjoint blocks of
    /// points.
    pub fn direct_sum(parts: &[&Permutation]) -> Permutation {
        let mut images = Vec::new();
        let mut offset = 0u32;
        for part in parts {
            images.extend(part.images.iter().map(|&v| v + offset));
            offset += part.degree() as u32;
        }
        Permutation { images }
    }

    /// Restriction to the points `start..start + len`, relabelled to start at
    /// zero. `None` if the block is not invariant.
    pub fn restrict_block(&self, start: usize, len: usize) -> Option<Permutation> {
        let mut images = Vec::with_capacity(len);
        for i in start..start + len {
            let v = self.apply(i);
            if v < start || v >= start + len {
                return None;
            }
            images.push((v - start) as u32);
        }
        Some(Permutation { images })
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on a degree mismatch; use [`Permutation::compose`] for the
    /// checked form.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("composing permutations of different degree")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

/// The operations the closure engine needs.
pub trait GroupElement: Clone + Eq + Hash {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn one_like(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl GroupElement for Permutation {
    fn op(&self, other: &Self) -> Self {
        self * other
    }

    fn inv(&self) -> Self {
        self.inverse()
    }

    fn one_like(&self) -> Self {
        Permutation::identity(self.degree())
    }

    fn is_one(&self) -> bool {
        self.is_identity()
    }
}

/// An element of `G × G` with componentwise operations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupPair {
    pub left: Permutation,
    pub right: Permutation,
}

impl GroupPair {
    pub fn new(left: Permutation, right: Permutation) -> Result<Self> {
        if left.degree() != right.degree() {
            return Err(Error::DegreeMismatch { left: left.degree(), right: right.degree() });
        }
        Ok(GroupPair { left, right })
    }
}

impl GroupElement for GroupPair {
    fn op(&self, other: &Self) -> Self {
        GroupPair { left: &self.left * &other.left, right: &self.right * &other.right }
    }

    fn inv(&self) -> Self {
        GroupPair { left: self.left.inverse(), right: self.right.inverse() }
    }

    fn one_like(&self) -> Self {
        GroupPair { left: self.left.one_like(), right: self.right.one_like() }
    }
}

/// Result of a breadth-first closure: all elements, a lookup table, and for
/// every non-identity element the pair `(generator, parent)` with
/// `element = generator ∘ parent`.
#[derive(Clone, Debug)]
pub struct Enumeration<E> {
    pub elements: Vec<E>,
    pub index: HashMap<E, usize>,
    pub tree: Vec<Option<(usize, usize)>>,
}

/// Enumerates `⟨generators⟩` breadth-first from the identity, multiplying on
/// the left by the generators in the order given.
pub fn enumerate<E: GroupElement>(generators: &[E], cap: usize) -> Result<Enumeration<E>> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let one = first.one_like();
    let mut elements = vec![one.clone()];
    let mut index = HashMap::new();
    index.insert(one, 0);
    let mut tree = vec![None];
    let mut cursor = 0;
    while cursor < elements.len() {
        for (s, g) in generators.iter().enumerate() {
            let next = g.op(&elements[cursor]);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::CapExceeded { reached: elements.len() + 1, cap });
            }
            index.insert(next.clone(), elements.len());
            elements.push(next);
            tree.push(Some((s, cursor)));
        }
        cursor += 1;
    }
    Ok(Enumeration { elements, index, tree })
}

/// Two words in the generators that evaluate to the same group element but
/// are sent to different images by a proposed generator assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionConflict {
    pub element: usize,
    /// Generator indices, leftmost applied last.
    pub first_word: Vec<usize>,
    pub second_word: Vec<usize>,
}

/// A finite permutation group, fully enumerated.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    enumeration: Enumeration<Permutation>,
    center: OnceLock<ElementSet>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            enumeration: self.enumeration.clone(),
            center: OnceLock::new(),
        }
    }
}

/// `⟨generators⟩`, or `CapExceeded` if it has more than `cap` elements.
pub fn closure(generators: &[Permutation], cap: usize) -> Result<PermGroup> {
    PermGroup::generated(generators.to_vec(), cap)
}

impl PermGroup {
    pub fn generated(generators: Vec<Permutation>, cap: usize) -> Result<PermGroup> {
        let degree = generators.first().ok_or(Error::EmptyGenerators)?.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { left: degree, right: bad.degree() });
        }
        let enumeration = enumerate(&generators, cap)?;
        Ok(PermGroup { degree, generators, enumeration, center: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.enumeration.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.enumeration.elements[index]
    }

    pub fn order(&self) -> usize {
        self.enumeration.elements.len()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.enumeration.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.enumeration.index.contains_key(p)
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let p = self.element(a) * self.element(b);
        self.enumeration.index[&p]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.enumeration.index[&self.element(a).inverse()]
    }

    /// Index of `elements[a]^k`.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        self.enumeration.index[&self.element(a).pow(k)]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element(a).order()
    }

    /// The word (generator indices, leftmost applied last) reaching `index`
    /// along the breadth-first tree.
    pub fn word(&self, mut index: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while let Some((s, parent)) = self.enumeration.tree[index] {
            word.push(s);
            index = parent;
        }
        word
    }

    pub fn all(&self) -> ElementSet {
        (0..self.order()).collect()
    }

    pub fn trivial(&self) -> ElementSet {
        std::iter::once(0).collect()
    }

    /// Looks up a set of permutations; errors if one is not in the group.
    pub fn indices_of<'a>(&self, perms: impl IntoIterator<Item = &'a Permutation>) -> Result<ElementSet> {
        perms.into_iter().map(|p| self.index_of(p).ok_or_else(|| Error::NotAMember(p.to_string()))).collect()
    }

    /// Indices, in this group, of all elements of `other`.
    pub fn embed(&self, other: &PermGroup) -> Result<ElementSet> {
        self.indices_of(other.elements())
    }

    /// Extends an assignment of images to the generators along the
    /// breadth-first tree and checks that the result is a homomorphism on
    /// every (generator, element) pair. On success returns the image of
    /// every element in index order.
    pub fn extend_homomorphism<E: GroupElement>(
        &self,
        generator_images: &[E],
    ) -> std::result::Result<Vec<E>, ExtensionConflict> {
        assert_eq!(generator_images.len(), self.generators.len(), "one image per generator");
        let one = generator_images[0].one_like();
        let mut images: Vec<E> = Vec::with_capacity(self.order());
        for tree_entry in &self.enumeration.tree {
            let img = match tree_entry {
                None => one.clone(),
                Some((s, parent)) => generator_images[*s].op(&images[*parent]),
            };
            images.push(img);
        }
        for e in 0..self.order() {
            for (s, g) in self.generators.iter().enumerate() {
                let product = self.enumeration.index[&(g * self.element(e))];
                if images[product] != generator_images[s].op(&images[e]) {
                    let mut second = vec![s];
                    second.extend(self.word(e));
                    return Err(ExtensionConflict {
                        element: product,
                        first_word: self.word(product),
                        second_word: second,
                    });
                }
            }
        }
        Ok(images)
    }

    /// `Z(G)`: elements commuting with every generator.
    pub fn center(&self) -> &ElementSet {
        self.center.get_or_init(|| {
            (0..self.order())
                .filter(|&i| {
                    let g = self.element(i);
                    self.generators.iter().all(|s| (g * s) == (s * g))
                })
                .collect()
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| self.generators.iter().all(|b| (a * b) == (b * a)))
    }

    /// True if `set` is closed under products and contains the identity
    /// (which for finite sets makes it a subgroup).
    pub fn is_subgroup(&self, set: &ElementSet) -> bool {
        set.contains(&0) && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// The subgroup generated by a set of elements, as an element set.
    pub fn subgroup_generated(&self, seeds: &ElementSet) -> ElementSet {
        let mut set: ElementSet = std::iter::once(0).collect();
        let mut frontier: Vec<usize> = vec![0];
        let seeds: Vec<usize> = seeds.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for &s in &seeds {
                let y = self.mul(s, x);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// The smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &ElementSet) -> ElementSet {
        let mut gens: ElementSet = seeds.clone();
        loop {
            let current = self.subgroup_generated(&gens);
            let mut added = false;
            for s in &self.generators {
                for &c in &gens.clone() {
                    let conj = self.index_of(&self.element(c).conjugate_by(s)).unwrap();
                    if !current.contains(&conj) {
                        gens.insert(conj);
                        added = true;
                    }
                }
            }
            if !added {
                return current;
            }
        }
    }

    /// Commutator subgroup as an element set.
    pub fn derived_subgroup_of(&self, subgroup: &ElementSet) -> ElementSet {
        // [H, H] is the normal closure in H of the commutators of any
        // generating set of H; we use all of H's elements as generators of
        // the conjugation action.
        let members: Vec<usize> = subgroup.iter().copied().collect();
        let gens = minimal_generators(self, subgroup);
        let mut comms = ElementSet::new();
        for &a in &gens {
            for &b in &gens {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.insert(c);
            }
        }
        let mut n = self.subgroup_generated(&comms);
        loop {
            let mut grew = false;
            for &h in &gens {
                let hi = self.inv(h);
                for &x in &n.clone() {
                    let y = self.mul(self.mul(h, x), hi);
                    if !n.contains(&y) {
                        comms.insert(y);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
            n = self.subgroup_generated(&comms);
        }
        debug_assert!(n.iter().all(|x| members.binary_search(x).is_ok()));
        n
    }

    /// Largest normal subgroup of the group contained in `subgroup`.
    pub fn core_of(&self, subgroup: &ElementSet) -> ElementSet {
        let gens: Vec<(Permutation, Permutation)> =
            self.generators.iter().map(|s| (s.clone(), s.inverse())).collect();
        let mut core = subgroup.clone();
        loop {
            let next: ElementSet = core
                .iter()
                .copied()
                .filter(|&h| {
                    let x = self.element(h);
                    gens.iter().all(|(s, si)| {
                        let a = self.index_of(&(&(s * x) * si));
                        let b = self.index_of(&(&(si * x) * s));
                        a.is_some_and(|a| core.contains(&a)) && b.is_some_and(|b| core.contains(&b))
                    })
                })
                .collect();
            if next.len() == core.len() {
                return core;
            }
            core = next;
        }
    }

    /// Union of all conjugates `gHg⁻¹`.
    pub fn conjugates_union(&self, subgroup: &ElementSet) -> ElementSet {
        let mut set = subgroup.clone();
        let mut frontier: Vec<usize> = subgroup.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            for s in &self.generators {
                let y = self.index_of(&self.element(x).conjugate_by(s)).unwrap();
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// `{ g : g h g⁻¹ = h }` for the given element set `h`.
    pub fn centralizer_of_set(&self, set: &ElementSet) -> ElementSet {
        (0..self.order()).filter(|&g| set.iter().all(|&h| self.mul(g, h) == self.mul(h, g))).collect()
    }
}

/// A short generating set for a subgroup: greedily add elements not yet
/// generated, in index order.
pub fn minimal_generators(group: &PermGroup, subgroup: &ElementSet) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut generated: ElementSet = std::iter::once(0).collect();
    for &x in subgroup {
        if !generated.contains(&x) {
            gens.push(x);
            generated = group.subgroup_generated(&gens.iter().copied().collect());
        }
    }
    gens
}

/// `Z(G)`.
pub fn center(group: &PermGroup) -> ElementSet {
    group.center().clone()
}

/// `C_G(τ) = { g : τ(g) = g }`.
pub fn centralizer_of_automorphism(group: &PermGroup, tau: &Automorphism) -> ElementSet {
    (0..group.order()).filter(|&g| tau.apply(g) == g).collect()
}

/// Normality of `subset` in `group`; errors if `subset` is not a subgroup.
pub fn is_normal_subgroup(group: &PermGroup, subset: &ElementSet) -> Result<bool> {
    if !group.is_subgroup(subset) {
        return Err(Error::NotASubgroup);
    }
    Ok(group.generators().iter().all(|s| {
        subset
            .iter()
            .all(|&n| group.index_of(&group.element(n).conjugate_by(s)).is_some_and(|c| subset.contains(&c)))
    }))
}

/// Runs the derived series down to its fixed point and reports whether it
/// reaches the trivial group.
pub fn is_solvable_group(group: &PermGroup) -> bool {
    let mut current = group.all();
    loop {
        if current.len() == 1 {
            return true;
        }
        let next = group.derived_subgroup_of(&current);
        if next.len() == current.len() {
            return false;
        }
        current = next;
    }
}

/// Element sets compared as permutation sets (for sets living in different
/// groups).
pub fn permutation_set(group: &PermGroup, set: &ElementSet) -> HashSet<Permutation> {
    set.iter().map(|&i| group.element(i).clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn s3() -> PermGroup {
        closure(&[perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])], 100).unwrap()
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // Both conventions enumerated on S3: only `p(q(i))` matches the
        // result of applying q then p pointwise.
        let all: Vec<Permutation> = s3().elements().to_vec();
        for p in &all {
            for q in &all {
                let r = p * q;
                for i in 0..3 {
                    assert_eq!(r.apply(i), p.apply(q.apply(i)));
                }
            }
        }
        let p = perm(3, &[&[0, 1]]);
        let q = perm(3, &[&[1, 2]]);
        let r = p.compose(&q).unwrap();
        assert_eq!(r, perm(3, &[&[0, 1, 2]]));
        assert_eq!(q.compose(&p).unwrap(), perm(3, &[&[0, 2, 1]]));
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(2).compose(&Permutation::identity(3)).unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn from_images_validates() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
        assert!(Permutation::from_images(vec![1, 0]).is_ok());
    }

    #[test]
    fn closure_orders() {
        assert_eq!(closure(&[perm(3, &[&[0, 1]])], 10).unwrap().order(), 2);
        assert_eq!(s3().order(), 6);
        assert_eq!(closure(&[Permutation::identity(4)], 10).unwrap().order(), 1);
        assert!(matches!(closure(&[], 10), Err(Error::EmptyGenerators)));
    }

    #[test]
    fn closure_respects_cap() {
        let err = closure(&[perm(5, &[&[0, 1]]), perm(5, &[&[0, 1, 2, 3, 4]])], 50).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 50, .. }));
    }

    #[test]
    fn closure_order_is_breadth_first() {
        let g = s3();
        assert!(g.element(0).is_identity());
        assert_eq!(g.element(1), &perm(3, &[&[0, 1]]));
        assert_eq!(g.element(2), &perm(3, &[&[0, 1, 2]]));
        for i in 0..g.order() {
            let word = g.word(i);
            let mut p = Permutation::identity(3);
            for &s in word.iter().rev() {
                p = &g.generators()[s] * &p;
            }
            assert_eq!(&p, g.element(i));
        }
    }

    #[test]
    fn centers() {
        assert_eq!(center(&s3()).len(), 1);
        let z5 = closure(&[perm(5, &[&[0, 1, 2, 3, 4]])], 10).unwrap();
        assert_eq!(center(&z5).len(), 5);
        // Quaternion group acting regularly on itself by left multiplication, 0 = 1, 1 = -1, 2 = i, 3 = -i, 4 = j,
        // 5 = -j, 6 = k, 7 = -k.
        let i = perm(8, &[&[0, 2, 1, 3], &[4, 6, 5, 7]]);
        let j = perm(8, &[&[0, 4, 1, 5], &[2, 7, 3, 6]]);
        let q8 = closure(&[i, j], 100).unwrap();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        let z = center(&q8);
        // Brute force over all pairs.
        let brute: ElementSet = (0..8).filter(|&a| (0..8).all(|b| q8.mul(a, b) == q8.mul(b, a))).collect();
        assert_eq!(z, brute);
        assert_eq!(z.len(), 2);
    }

    #[test]
    fn normal_subgroups_of_s3() {
        let g = s3();
        assert!(is_normal_subgroup(&g, &g.trivial()).unwrap());
        let a3 = g.indices_of(&[perm(3, &[]), perm(3, &[&[0, 1, 2]]), perm(3, &[&[0, 2, 1]])]).unwrap();
        assert!(is_normal_subgroup(&g, &a3).unwrap());
        let t = g.indices_of(&[perm(3, &[]), perm(3, &[&[0, 1]])]).unwrap();
        assert!(!is_normal_subgroup(&g, &t).unwrap());
        let bad = g.indices_of(&[perm(3, &[]), perm(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(is_normal_subgroup(&g, &bad), Err(Error::NotASubgroup));
    }

    #[test]
    fn solvability() {
        assert!(is_solvable_group(&s3()));
        let z4 = closure(&[perm(4, &[&[0, 1, 2, 3]])], 10).unwrap();
        assert!(is_solvable_group(&z4));
        let a5 = closure(&[perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])], 200).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(!is_solvable_group(&a5));
        assert_eq!(a5.derived_subgroup_of(&a5.all()).len(), 60);
        let s4 = closure(&[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])], 100).unwrap();
        assert!(is_solvable_group(&s4));
        assert_eq!(s4.derived_subgroup_of(&s4.all()).len(), 12);
    }

    #[test]
    fn cores_and_conjugates() {
        let g = s3();
        let t = g.indices_of(&[perm(3, &[]), perm(3, &[&[0, 1]])]).unwrap();
        assert_eq!(g.core_of(&t), g.trivial());
        assert_eq!(g.conjugates_union(&t).len(), 4);
        let a3 = g.normal_closure(&g.indices_of(&[perm(3, &[&[0, 1, 2]])]).unwrap());
        assert_eq!(g.core_of(&a3), a3);
    }

    #[test]
    fn homomorphism_extension_detects_conflicts() {
        let g = s3();
        // Sign character into Z2 realised as permutations of two points.
        let flip = perm(2, &[&[0, 1]]);
        let id = Permutation::identity(2);
        let images = g.extend_homomorphism(&[flip.clone(), id.clone()]).unwrap();
        assert_eq!(images.iter().filter(|p| p.is_identity()).count(), 3);
        // Sending the 3-cycle to the flip is inconsistent (order 3 -> order 2).
        let conflict = g.extend_homomorphism(&[id, flip]).unwrap_err();
        assert_ne!(conflict.first_word, conflict.second_word);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        fn factorial(n: usize) -> usize {
            (1..=n).product()
        }

        proptest! {
            #[test]
            fn compose_is_associative(p in arb_perm(7), q in arb_perm(7), r in arb_perm(7)) {
                prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
                prop_assert_eq!(p.inverse().inverse(), p.clone());
                prop_assert!((&p * &p.inverse()).is_identity());
            }

            #[test]
            fn closure_invariants(gens in proptest::collection::vec(arb_perm(5), 1..3)) {
                let g = closure(&gens, 1000).unwrap();
                prop_assert_eq!(factorial(5) % g.order(), 0);
                for s in &gens {
                    prop_assert!(g.contains(s));
                }
                let again = closure(g.elements(), 1000).unwrap();
                prop_assert_eq!(again.order(), g.order());
                let z = g.center().clone();
                prop_assert!(is_normal_subgroup(&g, &z).unwrap());
                prop_assert!(z.iter().all(|&a| z.iter().all(|&b| g.mul(a, b) == g.mul(b, a))));
                prop_assert_eq!(g.order() % z.len(), 0);
            }
        }
    }
}
