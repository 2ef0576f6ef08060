//! Twisted subgroups: subsets `T` of a group with `1 ∈ T`, `T⁻¹ = T` and
//! `xTx ⊆ T` for `x ∈ T`.
//!
//! Members are stored as sorted indices into the ambient group's element
//! list, so `members()[0]` is always the identity.

mod bloop;
mod theorems;

pub use bloop::{
    bloop_of, is_two_divisible, odot_prime_table, quandle_star, square_root_in, squaring_permutation,
    BLoopResult, QuandleTable, TwoDivisibility,
};
pub use theorems::{
    cauchy_witness, hall_search, verify_extension_theorem, verify_lagrange_suite, verify_odd_theorem,
    verify_pi_theorem, HallSearch,
};

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::permgroup::{enumerate, ElementSet, GroupPair, PermGroup, Permutation};
use crate::Limits;

/// The first axiom a candidate set violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwistedViolation {
    MissingIdentity,
    NotInverseClosed { element: usize },
    NotTwistedClosed { x: usize, y: usize },
}

impl fmt::Display for TwistedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistedViolation::MissingIdentity => write!(f, "identity is missing"),
            TwistedViolation::NotInverseClosed { element } => {
                write!(f, "inverse of element {element} is missing")
            }
            TwistedViolation::NotTwistedClosed { x, y } => {
                write!(f, "x·y·x is missing for x = {x}, y = {y}")
            }
        }
    }
}

/// Checks identity, inverse closure and `xyx` closure in that order.
pub fn twisted_violation(group: &PermGroup, set: &ElementSet) -> Option<TwistedViolation> {
    if !set.contains(&0) {
        return Some(TwistedViolation::MissingIdentity);
    }
    if let Some(&element) = set.iter().find(|&&x| !set.contains(&group.inv(x))) {
        return Some(TwistedViolation::NotInverseClosed { element });
    }
    for &x in set {
        for &y in set {
            if !set.contains(&group.mul(group.mul(x, y), x)) {
                return Some(TwistedViolation::NotTwistedClosed { x, y });
            }
        }
    }
    None
}

pub fn verify_twisted(group: &PermGroup, set: &ElementSet) -> bool {
    twisted_violation(group, set).is_none()
}

/// `1 ∈ S` and `x·y⁻¹·x ∈ S` for all `x, y ∈ S`.
pub fn satisfies_reflection_criterion(group: &PermGroup, set: &ElementSet) -> bool {
    set.contains(&0)
        && set.iter().all(|&x| set.iter().all(|&y| set.contains(&group.mul(group.mul(x, group.inv(y)), x))))
}

/// True if `reps` meets every left coset `gH` exactly once.
pub fn is_left_transversal(group: &PermGroup, reps: &[usize], subgroup: &ElementSet) -> bool {
    if reps.len() * subgroup.len() != group.order() {
        return false;
    }
    reps.iter().enumerate().all(|(i, &a)| {
        let ai = group.inv(a);
        reps[i + 1..].iter().all(|&b| !subgroup.contains(&group.mul(ai, b)))
    })
}

#[derive(Clone, Debug)]
pub struct TwistedSubgroup {
    ambient: Arc<PermGroup>,
    members: Vec<usize>,
}

impl PartialEq for TwistedSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
            && (Arc::ptr_eq(&self.ambient, &other.ambient)
                || self.ambient.elements() == other.ambient.elements())
    }
}

impl Eq for TwistedSubgroup {}

impl TwistedSubgroup {
    pub fn new(ambient: Arc<PermGroup>, members: ElementSet) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&m| m >= ambient.order()) {
            return Err(Error::NotAMember(format!("index {bad}")));
        }
        if let Some(v) = twisted_violation(&ambient, &members) {
            return Err(Error::NotTwisted(v.to_string()));
        }
        Ok(TwistedSubgroup { ambient, members: members.into_iter().collect() })
    }

    pub fn from_permutations(ambient: Arc<PermGroup>, perms: &[Permutation]) -> Result<Self> {
        let members = ambient.indices_of(perms)?;
        Self::new(ambient, members)
    }

    pub fn whole(ambient: Arc<PermGroup>) -> Self {
        let members = (0..ambient.order()).collect();
        TwistedSubgroup { ambient, members }
    }

    pub fn trivial(ambient: Arc<PermGroup>) -> Self {
        TwistedSubgroup { ambient, members: vec![0] }
    }

    pub fn ambient(&self) -> &Arc<PermGroup> {
        &self.ambient
    }

    /// Sorted ambient indices; the identity comes first.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn member_set(&self) -> ElementSet {
        self.members.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// Position of the ambient element `g` among the members.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.members.binary_search(&g).ok()
    }

    pub fn member_permutations(&self) -> Vec<Permutation> {
        self.members.iter().map(|&m| self.ambient.element(m).clone()).collect()
    }

    /// `⟨T⟩` as ambient indices.
    pub fn generated_set(&self) -> ElementSet {
        self.ambient.subgroup_generated(&self.member_set())
    }

    pub fn is_generating(&self) -> bool {
        self.generated_set().len() == self.ambient.order()
    }

    fn require_generating(&self) -> Result<()> {
        let generated = self.generated_set().len();
        if generated != self.ambient.order() {
            return Err(Error::NotGenerating { generated, ambient: self.ambient.order() });
        }
        Ok(())
    }

    /// The same set viewed inside `⟨T⟩`, whose generators are the
    /// non-identity members in ambient order.
    pub fn rebase(&self, limits: &Limits) -> Result<TwistedSubgroup> {
        let mut gens: Vec<Permutation> =
            self.members[1..].iter().map(|&m| self.ambient.element(m).clone()).collect();
        if gens.is_empty() {
            gens.push(Permutation::identity(self.ambient.degree()));
        }
        let group = Arc::new(PermGroup::generated(gens, limits.cap)?);
        let members = group.indices_of(self.member_permutations().iter())?;
        Ok(TwistedSubgroup { ambient: group, members: members.into_iter().collect() })
    }
}

/// Smallest twisted subgroup containing `seed`.
pub fn twisted_closure(group: &Arc<PermGroup>, seed: &ElementSet) -> TwistedSubgroup {
    let mut set: ElementSet = seed.clone();
    set.insert(0);
    loop {
        let mut next = set.clone();
        for &x in &set {
            next.insert(group.inv(x));
            for &y in &set {
                next.insert(group.mul(group.mul(x, y), x));
            }
        }
        if next.len() == set.len() {
            break;
        }
        set = next;
    }
    TwistedSubgroup { ambient: group.clone(), members: set.into_iter().collect() }
}

/// The distinct translates `aT`, `a ∈ T`, each checked to be twisted.
pub fn associates(t: &TwistedSubgroup) -> Result<Vec<TwistedSubgroup>> {
    let g = &t.ambient;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for &a in &t.members {
        let set: ElementSet = t.members.iter().map(|&x| g.mul(a, x)).collect();
        let key: Vec<usize> = set.iter().copied().collect();
        if !seen.insert(key) {
            continue;
        }
        let assoc = TwistedSubgroup::new(g.clone(), set)
            .map_err(|e| Error::violation("associates", format!("translate by {a} is not twisted: {e}")))?;
        out.push(assoc);
    }
    Ok(out)
}

/// `T♯ = ⋂_{x∈T} xT`.
pub fn sharp(t: &TwistedSubgroup) -> ElementSet {
    intersect_translates(t, true)
}

/// `⋂_{x∈T} Tx`.
pub fn sharp_right(t: &TwistedSubgroup) -> ElementSet {
    intersect_translates(t, false)
}

fn intersect_translates(t: &TwistedSubgroup, left: bool) -> ElementSet {
    let g = &t.ambient;
    let mut acc = t.member_set();
    for &x in &t.members {
        let translate: ElementSet =
            t.members.iter().map(|&y| if left { g.mul(x, y) } else { g.mul(y, x) }).collect();
        acc.retain(|a| translate.contains(a));
    }
    acc
}

/// The graph `⟨(x, x⁻¹) : x ∈ T⟩ ≤ G × G` as pairs of ambient indices.
pub fn inversion_graph(t: &TwistedSubgroup, limits: &Limits) -> Result<Vec<(usize, usize)>> {
    let g = &t.ambient;
    let gens: Vec<GroupPair> = t.members[1..]
        .iter()
        .map(|&x| GroupPair::new(g.element(x).clone(), g.element(x).inverse()))
        .collect::<Result<_>>()?;
    if gens.is_empty() {
        return Ok(vec![(0, 0)]);
    }
    let graph = enumerate(&gens, limits.pair_cap())?;
    Ok(graph
        .elements
        .iter()
        .map(|p| {
            (
                g.index_of(&p.left).expect("left factor lies in G"),
                g.index_of(&p.right).expect("right factor lies in G"),
            )
        })
        .collect())
}

/// `T′ = { x₁⋯x_n : x₁⁻¹⋯x_n⁻¹ = 1, xᵢ ∈ T }`, read off as the kernel of the
/// second projection of the inversion graph.
pub fn radical(t: &TwistedSubgroup, limits: &Limits) -> Result<ElementSet> {
    Ok(inversion_graph(t, limits)?.into_iter().filter(|&(_, r)| r == 0).map(|(l, _)| l).collect())
}

/// An automorphism stored as a full element table.
#[derive(Clone, Debug)]
pub struct Automorphism {
    domain: Arc<PermGroup>,
    table: Vec<usize>,
}

impl PartialEq for Automorphism {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.domain.elements() == other.domain.elements()
    }
}

impl Eq for Automorphism {}

impl Automorphism {
    /// Extends generator images along the enumeration tree; fails with both
    /// conflicting words when the assignment is not a homomorphism.
    pub fn from_generator_images(domain: Arc<PermGroup>, images: &[Permutation]) -> Result<Self> {
        if images.len() != domain.generators().len() {
            return Err(Error::PreconditionFailed(format!(
                "{} images for {} generators",
                images.len(),
                domain.generators().len()
            )));
        }
        if let Some((i, _)) = images.iter().enumerate().find(|(_, p)| !domain.contains(p)) {
            return Err(Error::NotAutomorphism(format!("image of generator {i} lies outside the group")));
        }
        let extended = domain.extend_homomorphism(images).map_err(|c| {
            Error::NotAutomorphism(format!(
                "words {:?} and {:?} both give element {} but their images differ",
                c.first_word, c.second_word, c.element
            ))
        })?;
        let table: Vec<usize> =
            extended.iter().map(|p| domain.index_of(p).expect("image lies in the group")).collect();
        let distinct: BTreeSet<usize> = table.iter().copied().collect();
        if distinct.len() != table.len() {
            return Err(Error::NotAutomorphism("map is not injective".into()));
        }
        Ok(Automorphism { domain, table })
    }

    /// `g ↦ σgσ⁻¹`, where `σ` normalizes the group.
    pub fn conjugation_by(domain: Arc<PermGroup>, sigma: &Permutation) -> Result<Self> {
        if sigma.degree() != domain.degree() {
            return Err(Error::DegreeMismatch { left: domain.degree(), right: sigma.degree() });
        }
        let images: Vec<Permutation> = domain.generators().iter().map(|g| g.conjugate_by(sigma)).collect();
        Self::from_generator_images(domain, &images)
    }

    /// `g ↦ g⁻¹`; an automorphism exactly when the group is abelian.
    pub fn inversion(domain: Arc<PermGroup>) -> Result<Self> {
        if !domain.is_abelian() {
            return Err(Error::NotAutomorphism("inversion is an automorphism only of abelian groups".into()));
        }
        let table = (0..domain.order()).map(|g| domain.inv(g)).collect();
        Ok(Automorphism { domain, table })
    }

    pub fn identity(domain: Arc<PermGroup>) -> Self {
        let table = (0..domain.order()).collect();
        Automorphism { domain, table }
    }

    pub fn domain(&self) -> &Arc<PermGroup> {
        &self.domain
    }

    pub fn apply(&self, g: usize) -> usize {
        self.table[g]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            domain: self.domain.clone(),
            table: other.table.iter().map(|&g| self.table[g]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_involution(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| self.table[v] == i)
    }

    pub fn fixed_points(&self) -> ElementSet {
        (0..self.table.len()).filter(|&g| self.table[g] == g).collect()
    }

    /// Multiplicativity on every pair of elements.
    pub fn is_homomorphism_exhaustive(&self) -> bool {
        let g = &self.domain;
        (0..g.order())
            .all(|a| (0..g.order()).all(|b| self.table[g.mul(a, b)] == g.mul(self.table[a], self.table[b])))
    }
}

/// The involutory automorphism inverting `T` pointwise, if `T′ = 1`.
/// Read off the inversion graph, which is the graph of that automorphism
/// exactly when the radical is trivial.
pub fn aschbacher_automorphism(t: &TwistedSubgroup, limits: &Limits) -> Result<Option<Automorphism>> {
    t.require_generating()?;
    let graph = inversion_graph(t, limits)?;
    if graph.iter().any(|&(l, r)| r == 0 && l != 0) {
        return Ok(None);
    }
    let mut table = vec![usize::MAX; t.ambient.order()];
    for (l, r) in graph {
        table[l] = r;
    }
    Ok(Some(Automorphism { domain: t.ambient.clone(), table }))
}

/// `K(τ) = { g : τ(g) = g⁻¹ }`.
pub fn k_of(tau: &Automorphism) -> Result<TwistedSubgroup> {
    let g = tau.domain();
    let set: ElementSet = (0..g.order()).filter(|&x| tau.apply(x) == g.inv(x)).collect();
    TwistedSubgroup::new(g.clone(), set).map_err(|e| Error::violation("K(tau) is twisted", e.to_string()))
}

/// `B(τ) = { g·τ(g)⁻¹ }` for an involutory `τ`; checked to lie in `K(τ)`.
pub fn b_of(tau: &Automorphism) -> Result<TwistedSubgroup> {
    if !tau.is_involution() {
        return Err(Error::PreconditionFailed("B(tau) needs an automorphism of order at most 2".into()));
    }
    let g = tau.domain();
    let set: ElementSet = (0..g.order()).map(|x| g.mul(x, g.inv(tau.apply(x)))).collect();
    let b = TwistedSubgroup::new(g.clone(), set)
        .map_err(|e| Error::violation("B(tau) is twisted", e.to_string()))?;
    if let Some(&x) = b.members.iter().find(|&&x| tau.apply(x) != g.inv(x)) {
        return Err(Error::violation(
            "B(tau) within K(tau)",
            format!("element {x} of B(tau) is not inverted"),
        ));
    }
    Ok(b)
}

/// `θ_x: y ↦ xyx` on member positions.
pub fn theta(t: &TwistedSubgroup, x: usize) -> Permutation {
    let g = &t.ambient;
    let images = t
        .members
        .iter()
        .map(|&y| t.position(g.mul(g.mul(x, y), x)).expect("twisted subgroups are closed under xyx"))
        .collect();
    Permutation::from_images(images).expect("θ_x is a bijection")
}

/// `θ_x` for every member, in member order.
pub fn thetas(t: &TwistedSubgroup) -> Vec<Permutation> {
    t.members.iter().map(|&x| theta(t, x)).collect()
}

/// `θ₁ = 1`, `θ_{x⁻¹} = θ_x⁻¹` and `θ_x θ_y θ_x = θ_{xyx}` for all members.
pub fn theta_identities_hold(t: &TwistedSubgroup) -> bool {
    let g = &t.ambient;
    let th = thetas(t);
    let at = |x: usize| &th[t.position(x).expect("member")];
    th[0].is_identity()
        && t.members.iter().all(|&x| at(g.inv(x)) == &at(x).inverse())
        && t.members
            .iter()
            .all(|&x| t.members.iter().all(|&y| &(&(at(x) * at(y)) * at(x)) == at(g.mul(g.mul(x, y), x))))
}

/// `T̂ = { θ_x }` inside `Ĝ = ⟨T̂⟩ ≤ T!`.
#[derive(Clone, Debug)]
pub struct Hat {
    pub group: Arc<PermGroup>,
    pub twisted: TwistedSubgroup,
    /// `θ_x` for the member at each position.
    pub thetas: Vec<Permutation>,
}

/// Builds `T̂` and checks it is a radical-free twisted subgroup of `Ĝ`.
pub fn hat(t: &TwistedSubgroup, limits: &Limits) -> Result<Hat> {
    let th = thetas(t);
    let group = Arc::new(PermGroup::generated(th.clone(), limits.cap)?);
    let set = group.indices_of(th.iter())?;
    let twisted = TwistedSubgroup::new(group.clone(), set)
        .map_err(|e| Error::violation("hat is twisted", e.to_string()))?;
    let rad = radical(&twisted, limits)?;
    if rad.len() != 1 {
        return Err(Error::violation(
            "hat is radical-free",
            format!("radical of the hat has order {}", rad.len()),
        ));
    }
    Ok(Hat { group, twisted, thetas: th })
}

/// Outcome of trying to extend a map given on generators along its graph.
#[derive(Clone, Debug)]
pub struct GraphExtension {
    /// Second components paired with the identity; trivial iff the map
    /// extends.
    pub obstruction: Vec<Permutation>,
    /// Image of every domain element in index order, when the map extends.
    pub images: Option<Vec<Permutation>>,
    /// Domain indices sent to the identity, when the map extends.
    pub kernel: Option<ElementSet>,
}

impl GraphExtension {
    pub fn extends(&self) -> bool {
        self.images.is_some()
    }

    /// The subgroup generated by the images, when the map extends.
    pub fn image_set(&self) -> Option<BTreeSet<Permutation>> {
        self.images.as_ref().map(|v| v.iter().cloned().collect())
    }
}

/// Closes `⟨(aᵢ, bᵢ)⟩` with the factors stacked as a direct sum. The `aᵢ`
/// must generate `domain`.
pub(crate) fn graph_extension(
    domain: &PermGroup,
    pairs: &[(Permutation, Permutation)],
    cap: usize,
) -> Result<GraphExtension> {
    let (first, target) =
        pairs.first().map(|(a, b)| (a.degree(), b.degree())).ok_or(Error::EmptyGenerators)?;
    let gens: Vec<Permutation> = pairs.iter().map(|(a, b)| Permutation::direct_sum(&[a, b])).collect();
    let graph = enumerate(&gens, cap)?;
    let mut obstruction = Vec::new();
    let mut images: Vec<Option<Permutation>> = vec![None; domain.order()];
    for p in &graph.elements {
        let a = p.restrict_block(0, first).expect("first block is invariant");
        let b = p.restrict_block(first, target).expect("second block is invariant");
        if a.is_identity() {
            obstruction.push(b.clone());
        }
        let idx = domain.index_of(&a).ok_or_else(|| Error::NotAMember(a.to_string()))?;
        images[idx] = Some(b);
    }
    obstruction.sort();
    if obstruction.len() > 1 {
        return Ok(GraphExtension { obstruction, images: None, kernel: None });
    }
    let images: Vec<Permutation> = images
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::PreconditionFailed("pairs do not generate the domain".into()))?;
    let kernel = (0..images.len()).filter(|&i| images[i].is_identity()).collect();
    Ok(GraphExtension { obstruction, images: Some(images), kernel: Some(kernel) })
}

/// Attempts to extend `x ↦ θ_x` from `T` to `⟨T⟩ → Ĝ`.
pub fn theta_extension(t: &TwistedSubgroup, limits: &Limits) -> Result<GraphExtension> {
    t.require_generating()?;
    let pairs: Vec<(Permutation, Permutation)> =
        t.members.iter().map(|&x| (t.ambient.element(x).clone(), theta(t, x))).collect();
    graph_extension(&t.ambient, &pairs, limits.pair_cap())
}

/// Attempts to extend `x ↦ b_x` (left multiplication in `T(1/2)`).
pub fn b_extension(t: &TwistedSubgroup, bl: &BLoopResult, limits: &Limits) -> Result<GraphExtension> {
    t.require_generating()?;
    let pairs: Vec<(Permutation, Permutation)> = t
        .members
        .iter()
        .enumerate()
        .map(|(i, &x)| (t.ambient.element(x).clone(), crate::loopcore::left_translation(&bl.bloop, i)))
        .collect();
    graph_extension(&t.ambient, &pairs, limits.pair_cap())
}

/// The chain `K(τ)² ⊆ B(τ) ⊆ T ⊆ K(τ)` and, for 2-divisible `T`, the
/// equalities and the transversal property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub k_squared_in_b: bool,
    pub b_in_t: bool,
    pub t_in_k: bool,
    pub two_divisible: bool,
    pub equalities: Option<bool>,
    pub left_transversal: Option<bool>,
    pub k_order: usize,
    pub b_order: usize,
    pub t_order: usize,
    pub centralizer_order: usize,
}

impl RigidityReport {
    pub fn chain_holds(&self) -> bool {
        self.k_squared_in_b && self.b_in_t && self.t_in_k
    }

    pub fn holds(&self) -> bool {
        self.chain_holds() && self.equalities != Some(false) && self.left_transversal != Some(false)
    }
}

pub fn verify_rigidity(t: &TwistedSubgroup, limits: &Limits) -> Result<RigidityReport> {
    if !t.is_generating() {
        return Err(Error::PreconditionFailed("twisted subgroup does not generate its group".into()));
    }
    let tau = aschbacher_automorphism(t, limits)?
        .ok_or_else(|| Error::PreconditionFailed("radical is nontrivial".into()))?;
    let g = &t.ambient;
    let k = k_of(&tau)?;
    let b = b_of(&tau)?;
    let centralizer = tau.fixed_points();
    let two_divisible = is_two_divisible(t)?.divisible;
    let k_squared_in_b = k.members.iter().all(|&x| b.contains(g.mul(x, x)));
    let b_in_t = b.members.iter().all(|&x| t.contains(x));
    let t_in_k = t.members.iter().all(|&x| k.contains(x));
    let (equalities, left_transversal) = if two_divisible {
        (
            Some(b.members == t.members && t.members == k.members),
            Some(is_left_transversal(g, &t.members, &centralizer)),
        )
    } else {
        (None, None)
    };
    Ok(RigidityReport {
        k_squared_in_b,
        b_in_t,
        t_in_k,
        two_divisible,
        equalities,
        left_transversal,
        k_order: k.len(),
        b_order: b.len(),
        t_order: t.len(),
        centralizer_order: centralizer.len(),
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    pub fn s3() -> Arc<PermGroup> {
        Arc::new(PermGroup::generated(vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])], 100).unwrap())
    }

    pub fn cyclic(n: usize) -> Arc<PermGroup> {
        let images = (0..n).map(|i| (i + 1) % n).collect();
        Arc::new(PermGroup::generated(vec![Permutation::from_images(images).unwrap()], 1000).unwrap())
    }

    /// Affine maps `x ↦ r·x + a` on `Z_p` with `r` in the subgroup generated
    /// by `unit`; first generator is the translation.
    pub fn affine(p: usize, unit: usize) -> Arc<PermGroup> {
        let shift = Permutation::from_images((0..p).map(|x| (x + 1) % p).collect()).unwrap();
        let scale = Permutation::from_images((0..p).map(|x| x * unit % p).collect()).unwrap();
        Arc::new(PermGroup::generated(vec![shift, scale], 100_000).unwrap())
    }

    /// `x ↦ -x` on `Z_p`.
    pub fn negation(p: usize) -> Permutation {
        Permutation::from_images((0..p).map(|x| (p - x) % p).collect()).unwrap()
    }

    /// The affine group `F_p² ⋊ ⟨c⟩` with `c` of order 3 and the coordinate
    /// swap, which inverts `c` under conjugation.
    pub fn plane_affine(p: usize) -> (Arc<PermGroup>, Permutation) {
        let pt = |x: usize, y: usize| (x % p) * p + (y % p);
        let n = p * p;
        let shift_x = Permutation::from_images((0..n).map(|i| pt(i / p + 1, i % p)).collect()).unwrap();
        let shift_y = Permutation::from_images((0..n).map(|i| pt(i / p, i % p + 1)).collect()).unwrap();
        // c(x, y) = (-y, x - y)
        let c = Permutation::from_images((0..n).map(|i| pt(p - i % p, i / p + p - i % p)).collect()).unwrap();
        let swap = Permutation::from_images((0..n).map(|i| pt(i % p, i / p)).collect()).unwrap();
        let g = Arc::new(PermGroup::generated(vec![shift_x, shift_y, c], 1_000_000).unwrap());
        (g, swap)
    }

    pub fn plane_b(p: usize) -> TwistedSubgroup {
        let (g, swap) = plane_affine(p);
        let tau = Automorphism::conjugation_by(g, &swap).unwrap();
        b_of(&tau).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    fn set(items: &[usize]) -> ElementSet {
        items.iter().copied().collect()
    }

    fn transpositions(g: &PermGroup) -> ElementSet {
        (0..g.order()).filter(|&i| g.element(i).order() <= 2).collect()
    }

    #[test]
    fn twisted_axioms_on_s3() {
        let g = s3();
        assert!(verify_twisted(&g, &g.all()));
        let t = transpositions(&g);
        assert_eq!(t.len(), 4);
        assert!(verify_twisted(&g, &t));
        let bad = set(&[
            0,
            g.index_of(&perm(3, &[&[0, 1]])).unwrap(),
            g.index_of(&perm(3, &[&[0, 1, 2]])).unwrap(),
        ]);
        assert!(!verify_twisted(&g, &bad));
        assert_eq!(twisted_violation(&g, &set(&[1])), Some(TwistedViolation::MissingIdentity));
    }

    #[test]
    fn closure_of_singletons_is_cyclic() {
        let g = s3();
        for x in 0..g.order() {
            let closed = twisted_closure(&g, &set(&[x]));
            assert_eq!(closed.member_set(), g.subgroup_generated(&set(&[x])));
        }
        assert_eq!(twisted_closure(&g, &ElementSet::new()).members(), &[0]);
        let a = g.index_of(&perm(3, &[&[0, 1]])).unwrap();
        let b = g.index_of(&perm(3, &[&[1, 2]])).unwrap();
        assert_eq!(twisted_closure(&g, &set(&[a, b])).member_set(), transpositions(&g));
    }

    #[test]
    fn sharp_and_radical_of_transpositions() {
        let g = s3();
        let t = TwistedSubgroup::new(g.clone(), transpositions(&g)).unwrap();
        assert_eq!(sharp(&t), set(&[0]));
        assert_eq!(sharp(&t), sharp_right(&t));
        let rad = radical(&t, &Limits::default()).unwrap();
        for a in associates(&t).unwrap() {
            assert!(rad.iter().all(|&r| a.contains(r)));
        }
    }

    #[test]
    fn radical_of_whole_s3_is_a3() {
        let g = s3();
        let t = TwistedSubgroup::whole(g.clone());
        let rad = radical(&t, &Limits::default()).unwrap();
        assert_eq!(rad, g.derived_subgroup_of(&g.all()));
        assert_eq!(rad.len(), 3);
        assert!(aschbacher_automorphism(&t, &Limits::default()).unwrap().is_none());
    }

    #[test]
    fn inversion_on_abelian_groups() {
        let g = cyclic(5);
        let t = TwistedSubgroup::whole(g.clone());
        let tau = aschbacher_automorphism(&t, &Limits::default()).unwrap().unwrap();
        assert_eq!(tau, Automorphism::inversion(g.clone()).unwrap());
        assert_eq!(k_of(&tau).unwrap().len(), 5);
        assert_eq!(b_of(&tau).unwrap().len(), 5);
        assert!(Automorphism::inversion(s3()).is_err());
    }

    #[test]
    fn k_of_identity_is_involutions() {
        let g = s3();
        let k = k_of(&Automorphism::identity(g.clone())).unwrap();
        assert_eq!(k.member_set(), transpositions(&g));
    }

    #[test]
    fn centralizer_of_conjugation_in_s3() {
        let g = s3();
        let tau = Automorphism::conjugation_by(g.clone(), &perm(3, &[&[0, 1]])).unwrap();
        assert!(tau.is_homomorphism_exhaustive());
        let c = crate::permgroup::centralizer_of_automorphism(&g, &tau);
        assert_eq!(c.len(), 2);
        let z3 = cyclic(3);
        let inv = Automorphism::inversion(z3.clone()).unwrap();
        assert_eq!(crate::permgroup::centralizer_of_automorphism(&z3, &inv).len(), 1);
    }

    #[test]
    fn rigidity_strict_in_s3() {
        // K(τ) = {1, (01), (012), (021)}, B(τ) = A₃.
        let g = s3();
        let tau = Automorphism::conjugation_by(g.clone(), &perm(3, &[&[0, 1]])).unwrap();
        let k = k_of(&tau).unwrap();
        let b = b_of(&tau).unwrap();
        assert_eq!(k.len(), 4);
        assert_eq!(b.len(), 3);
        let report = verify_rigidity(&k, &Limits::default()).unwrap();
        assert!(report.chain_holds());
        assert!(!report.two_divisible);
        assert_eq!(report.equalities, None);
        assert_ne!(report.b_order, report.t_order);
    }

    #[test]
    fn rigidity_on_affine_fixture() {
        let g = affine(7, 2);
        assert_eq!(g.order(), 21);
        let tau = Automorphism::conjugation_by(g.clone(), &negation(7)).unwrap();
        let b = b_of(&tau).unwrap();
        assert_eq!(b.len() * tau.fixed_points().len(), 21);
        assert!(!b.is_generating());
    }

    #[test]
    fn plane_fixture_b_is_generating() {
        let t = plane_b(5);
        assert_eq!(t.ambient().order(), 75);
        assert_eq!(t.len(), 15);
        assert!(t.is_generating());
        let report = verify_rigidity(&t, &Limits::default()).unwrap();
        assert!(report.holds());
        assert_eq!(report.equalities, Some(true));
        assert_eq!(report.centralizer_order, 5);
    }

    #[test]
    fn hat_is_radical_free() {
        let g = s3();
        let whole = TwistedSubgroup::whole(g.clone());
        assert!(theta_identities_hold(&whole));
        let h = hat(&whole, &Limits::default()).unwrap();
        assert_eq!(radical(&h.twisted, &Limits::default()).unwrap().len(), 1);
        let t = plane_b(5);
        assert!(theta_identities_hold(&t));
        hat(&t, &Limits::default()).unwrap();
    }

    #[test]
    fn theta_extension_matches_radical() {
        let limits = Limits::default();
        let whole = TwistedSubgroup::whole(s3());
        assert!(!theta_extension(&whole, &limits).unwrap().extends());
        let t = plane_b(5);
        let ext = theta_extension(&t, &limits).unwrap();
        assert!(ext.extends());
        let tau = aschbacher_automorphism(&t, &limits).unwrap().unwrap();
        let g = t.ambient();
        let expected: ElementSet = g.center().iter().copied().filter(|&z| tau.apply(z) == z).collect();
        assert_eq!(ext.kernel.unwrap(), expected);
    }

    #[test]
    fn reflection_criterion_agrees_on_all_subsets_of_s3() {
        let g = s3();
        for mask in 0u32..64 {
            let s: ElementSet = (0..6).filter(|&i| mask >> i & 1 == 1).collect();
            assert_eq!(verify_twisted(&g, &s), satisfies_reflection_criterion(&g, &s));
        }
    }

    #[test]
    fn generator_image_conflict_is_reported() {
        let g = cyclic(4);
        let bad = Automorphism::from_generator_images(g.clone(), &[g.element(0).clone()]);
        assert!(matches!(bad, Err(Error::NotAutomorphism(_))));
    }

    proptest! {
        #[test]
        fn closures_are_twisted(mask in 0u32..64) {
            let g = s3();
            let seed: ElementSet = (0..6).filter(|&i| mask >> i & 1 == 1).collect();
            let t = twisted_closure(&g, &seed);
            prop_assert!(verify_twisted(&g, &t.member_set()));
            prop_assert!(seed.iter().all(|&s| t.contains(s)));
            for a in associates(&t).unwrap() {
                prop_assert!(verify_twisted(&g, &a.member_set()));
            }
        }
    }
}
