//! Bol-loop constructions: `P(x) = L(x)R(x)`, Bol autotopisms, the loop
//! radical, the associated B-loop `𝓛(1/2)`, normality criteria, and the
//! centre obstruction for simple loops of odd order.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::arith::{is_pi_number, prime_divisors};
use crate::error::{Error, Result};
use crate::loopcore::{
    all_subloops, check_left_bol, check_properties, generated_subloop, is_normal_subloop, is_simple,
    is_solvable_loop, left_inner_generators, left_translation, lmlt, nuclei, right_translation, FiniteLoop,
    Subloop,
};
use crate::permgroup::{is_solvable_group, ElementSet, ExtensionConflict, PermGroup, Permutation};
use crate::twisted::{
    aschbacher_automorphism, inversion_graph, radical, sharp, thetas, verify_twisted, Automorphism,
    TwistedSubgroup,
};
use crate::verdict::Verdict;
use crate::Limits;

fn require_bol(l: &FiniteLoop) -> Result<()> {
    if check_left_bol(l) {
        Ok(())
    } else {
        Err(Error::NotBol)
    }
}

fn require_two_divisible(l: &FiniteLoop) -> Result<Vec<usize>> {
    l.square_roots().ok_or_else(|| {
        let even = (0..l.order()).find(|&x| l.element_order(x).is_multiple_of(2)).unwrap_or(0);
        Error::NotTwoDivisible(even)
    })
}

/// Loop elements whose translations generate `LMlt` in generator order.
fn generator_points(n: usize) -> Vec<usize> {
    if n == 1 {
        vec![0]
    } else {
        (1..n).collect()
    }
}

/// `P(x) = L(x)R(x): u ↦ x·(u·x)`.
pub fn p_translation(l: &FiniteLoop, x: usize) -> Permutation {
    &left_translation(l, x) * &right_translation(l, x)
}

/// `PMlt(𝓛) = ⟨P(x)⟩`, generated by `P(1), .., P(n-1)`.
pub fn pmlt(l: &FiniteLoop, limits: &Limits) -> Result<PermGroup> {
    require_bol(l)?;
    let gens = generator_points(l.order()).into_iter().map(|x| p_translation(l, x)).collect();
    PermGroup::generated(gens, limits.cap)
}

/// `L(𝓛)` as a twisted subgroup of `LMlt(𝓛)`; loop element `x` sits at
/// the returned position `x`.
pub fn left_translation_subgroup(l: &FiniteLoop, limits: &Limits) -> Result<(TwistedSubgroup, Vec<usize>)> {
    require_bol(l)?;
    let group = Arc::new(lmlt(l, limits.cap)?);
    let indices: Vec<usize> =
        (0..l.order()).map(|x| group.index_of(&left_translation(l, x)).expect("generator")).collect();
    let t = TwistedSubgroup::new(group, indices.iter().copied().collect())
        .map_err(|e| Error::violation("L(𝓛) is twisted in LMlt", e.to_string()))?;
    Ok((t, indices))
}

/// `P(𝓛)` inside `PMlt(𝓛)`; checked to be a radical-free twisted subgroup
/// and to satisfy `θ_{L(x)} L(y) = L(P(x)y)`.
pub fn p_subgroup(l: &FiniteLoop, limits: &Limits) -> Result<TwistedSubgroup> {
    let group = Arc::new(pmlt(l, limits)?);
    let ps: Vec<Permutation> = (0..l.order()).map(|x| p_translation(l, x)).collect();
    let t = TwistedSubgroup::from_permutations(group, &ps)
        .map_err(|e| Error::violation("P(𝓛) is twisted in PMlt", e.to_string()))?;
    let rad = radical(&t, limits)?;
    if rad.len() != 1 {
        return Err(Error::violation("P(𝓛) is radical-free", format!("radical has order {}", rad.len())));
    }
    let lt: Vec<Permutation> = (0..l.order()).map(|x| left_translation(l, x)).collect();
    for x in 0..l.order() {
        let px = &ps[x];
        for y in 0..l.order() {
            if &(&lt[x] * &lt[y]) * &lt[x] != lt[px.apply(y)] {
                return Err(Error::violation(
                    "θ_{L(x)} L(y) = L(P(x)y)",
                    format!("fails at x = {x}, y = {y}"),
                ));
            }
        }
    }
    Ok(t)
}

/// A triple with `f1(u)·f2(v) = f3(u·v)` for all `u, v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Autotopism {
    pub f1: Permutation,
    pub f2: Permutation,
    pub f3: Permutation,
}

pub fn is_autotopism(l: &FiniteLoop, f1: &Permutation, f2: &Permutation, f3: &Permutation) -> bool {
    let n = l.order();
    [f1, f2, f3].iter().all(|f| f.degree() == n)
        && (0..n).all(|u| (0..n).all(|v| l.mul(f1.apply(u), f2.apply(v)) == f3.apply(l.mul(u, v))))
}

impl Autotopism {
    pub fn new(l: &FiniteLoop, f1: Permutation, f2: Permutation, f3: Permutation) -> Result<Self> {
        if !is_autotopism(l, &f1, &f2, &f3) {
            return Err(Error::NotAutotopism("f1(u)·f2(v) = f3(u·v) fails".into()));
        }
        Ok(Autotopism { f1, f2, f3 })
    }

    /// The three components stacked into one permutation of degree `3n`.
    pub fn stacked(&self) -> Permutation {
        Permutation::direct_sum(&[&self.f1, &self.f2, &self.f3])
    }
}

/// `B(x) = (P(x), L(x⁻¹), L(x))`; fails exactly when the loop is not Bol
/// at `x`.
pub fn bol_autotopism(l: &FiniteLoop, x: usize) -> Result<Autotopism> {
    Autotopism::new(l, p_translation(l, x), left_translation(l, l.inverse(x)), left_translation(l, x))
}

/// `Btp(𝓛) = ⟨B(x)⟩` acting on three blocks of `n` points.
pub fn btp(l: &FiniteLoop, limits: &Limits) -> Result<PermGroup> {
    let gens = generator_points(l.order())
        .into_iter()
        .map(|x| bol_autotopism(l, x).map(|b| b.stacked()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::generated(gens, limits.cap)
}

/// Component `i ∈ {1, 2, 3}` of a stacked triple.
pub fn btp_projection(element: &Permutation, i: usize, n: usize) -> Permutation {
    element.restrict_block((i - 1) * n, n).expect("blocks are invariant")
}

/// `𝓛′ = { x : L(x) ∈ L(𝓛)′ }`, checked to be an associative normal
/// subloop inside `Nuc_l`.
pub fn loop_radical(l: &FiniteLoop, limits: &Limits) -> Result<Subloop> {
    let (t, _) = left_translation_subgroup(l, limits)?;
    let rad = radical(&t, limits)?;
    let g = t.ambient();
    let mut members: Vec<usize> =
        t.members().iter().filter(|m| rad.contains(m)).map(|&m| g.element(m).apply(0)).collect();
    members.sort_unstable();
    let sub =
        Subloop::of(l, members).map_err(|e| Error::violation("loop radical is a subloop", e.to_string()))?;
    let nu = nuclei(l);
    if !l.is_associative_on(sub.members()) || !is_normal_subloop(l, &sub) || !sub.is_subset_of(&nu.left) {
        return Err(Error::violation(
            "loop radical is an associative normal subloop in Nuc_l",
            format!("radical {:?}", sub.members()),
        ));
    }
    Ok(sub)
}

/// Pulls `L(𝓛)♯` back to the loop and checks it equals `Nuc_l = Nuc_m` and
/// is normal.
pub fn left_nucleus_via_sharp(l: &FiniteLoop, limits: &Limits) -> Result<Subloop> {
    let (t, _) = left_translation_subgroup(l, limits)?;
    let g = t.ambient();
    let members: Vec<usize> = sharp(&t).iter().map(|&m| g.element(m).apply(0)).collect();
    let sub = Subloop::of(l, members)
        .map_err(|e| Error::violation("sharp pulls back to a subloop", e.to_string()))?;
    let nu = nuclei(l);
    if sub != nu.left || sub != nu.middle {
        return Err(Error::violation(
            "L(𝓛)♯ = L(Nuc_l) = L(Nuc_m)",
            format!(
                "sharp {:?}, Nuc_l {:?}, Nuc_m {:?}",
                sub.members(),
                nu.left.members(),
                nu.middle.members()
            ),
        ));
    }
    if !is_normal_subloop(l, &sub) {
        return Err(Error::violation("Nuc_l is normal", format!("{:?}", sub.members())));
    }
    Ok(sub)
}

/// `𝓛(1/2)` with `x ⊙ y = (x·((y·y)·x))^{1/2}`; checked to be a B-loop
/// with the same element orders, and equal to `𝓛` when `𝓛` is Bruck.
pub fn half_loop(l: &FiniteLoop) -> Result<FiniteLoop> {
    require_bol(l)?;
    let roots = require_two_divisible(l)?;
    let n = l.order();
    let table = (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            roots[l.mul(x, l.mul(l.square(y), x))]
        })
        .collect();
    let half =
        FiniteLoop::from_table(n, table).map_err(|e| Error::violation("𝓛(1/2) is a loop", e.to_string()))?;
    let props = check_properties(&half);
    if !(props.bruck && props.two_divisible) {
        return Err(Error::violation("𝓛(1/2) is a B-loop", "Bruck or 2-divisibility fails"));
    }
    if let Some(x) = (0..n).find(|&x| half.element_order(x) != l.element_order(x)) {
        return Err(Error::violation("orders agree in 𝓛 and 𝓛(1/2)", format!("element {x}")));
    }
    if check_properties(l).bruck && half != *l {
        return Err(Error::violation("𝓛(1/2) = 𝓛 for Bruck loops", "tables differ"));
    }
    Ok(half)
}

/// `x·(K·y) = K·(x·y)` for all `x, y`, the single equation that decides
/// normality in 2-divisible Bol loops.
pub fn normality_single_equation(l: &FiniteLoop, k: &Subloop) -> bool {
    let n = l.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let xy = l.mul(x, y);
            let a: BTreeSet<usize> = k.members().iter().map(|&m| l.mul(x, l.mul(m, y))).collect();
            let b: BTreeSet<usize> = k.members().iter().map(|&m| l.mul(m, xy)).collect();
            a == b
        })
    })
}

/// `L(x)L(y)L(x⁻¹) ∈ L(K)·gHg⁻¹` for all `x ∈ 𝓛`, `y ∈ K`, `g ∈ LMlt`,
/// where `H = LMlt₁`. `gHg⁻¹` is the stabilizer of `w = g(1)`, so the unique
/// `z` with `L(z)⁻¹L(x)L(y)L(x⁻¹) ∈ gHg⁻¹` is `(x·(y·(x⁻¹·w)))/w`, and `w`
/// ranges over all of `𝓛` as `g` ranges over `LMlt`.
pub fn normality_lmlt_criterion(l: &FiniteLoop, k: &Subloop) -> bool {
    let n = l.order();
    (0..n).all(|x| {
        let xi = l.inverse(x);
        k.members().iter().all(|&y| {
            (0..n).all(|w| {
                let image = l.mul(x, l.mul(y, l.mul(xi, w)));
                k.contains(l.rdiv(image, w))
            })
        })
    })
}

/// Whether a subloop of `𝓛(1/2)` is a subloop of `𝓛`, together with the
/// conjugation condition `x⁻¹·(K·x) = K` for `x ∈ K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubloopBridge {
    pub is_subloop: bool,
    pub conjugation_condition: bool,
}

pub fn subloop_conjugation_bridge(l: &FiniteLoop, k: &Subloop) -> SubloopBridge {
    let is_subloop = generated_subloop(l, k.members()).members() == k.members();
    let set: BTreeSet<usize> = k.members().iter().copied().collect();
    let conjugation_condition = k.members().iter().all(|&x| {
        let xi = l.inverse(x);
        let conj: BTreeSet<usize> = k.members().iter().map(|&m| l.mul(xi, l.mul(m, x))).collect();
        conj == set
    });
    SubloopBridge { is_subloop, conjugation_condition }
}

/// `𝓜 = { x ∈ Nuc_r : R(x) ∈ LMlt }` and the identification of `Z(LMlt)`
/// with those `R(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightNuclearCenter {
    pub members: Vec<usize>,
    pub abelian_group: bool,
    pub matches_center: bool,
}

pub fn right_nuclear_center(l: &FiniteLoop, group: &PermGroup) -> RightNuclearCenter {
    let nu = nuclei(l);
    let members: Vec<usize> =
        nu.right.members().iter().copied().filter(|&x| group.contains(&right_translation(l, x))).collect();
    let closed =
        members.iter().all(|&a| members.iter().all(|&b| members.binary_search(&l.mul(a, b)).is_ok()));
    let abelian_group = closed
        && l.is_associative_on(&members)
        && members.iter().all(|&a| members.iter().all(|&b| l.mul(a, b) == l.mul(b, a)));
    let from_loop: BTreeSet<Permutation> = members.iter().map(|&x| right_translation(l, x)).collect();
    let center: BTreeSet<Permutation> = group.center().iter().map(|&z| group.element(z).clone()).collect();
    RightNuclearCenter { members, abelian_group, matches_center: from_loop == center }
}

/// Outcome of extending `L(x) ↦ f(x)` from the generators of `LMlt`.
#[derive(Clone, Debug)]
pub struct RepExtension {
    pub conflict: Option<ExtensionConflict>,
    pub kernel: Option<ElementSet>,
    pub image_order: Option<usize>,
}

impl RepExtension {
    pub fn extends(&self) -> bool {
        self.conflict.is_none()
    }
}

fn extend_from_lmlt(
    l: &FiniteLoop,
    group: &PermGroup,
    image_of: impl Fn(usize) -> Permutation,
) -> RepExtension {
    let images: Vec<Permutation> = generator_points(l.order()).into_iter().map(image_of).collect();
    match group.extend_homomorphism(&images) {
        Ok(all) => {
            let kernel = (0..all.len()).filter(|&i| all[i].is_identity()).collect();
            let image: BTreeSet<&Permutation> = all.iter().collect();
            RepExtension { conflict: None, kernel: Some(kernel), image_order: Some(image.len()) }
        }
        Err(c) => RepExtension { conflict: Some(c), kernel: None, image_order: None },
    }
}

/// `L(x) ↦ P(x)` extended to `LMlt → PMlt`.
pub fn rep_to_pmlt(l: &FiniteLoop, group: &PermGroup) -> RepExtension {
    extend_from_lmlt(l, group, |x| p_translation(l, x))
}

/// `L(x) ↦ M(x)` (left translation of `𝓛(1/2)`) extended to
/// `LMlt → LMlt(𝓛(1/2))`.
pub fn rep_to_half_loop(l: &FiniteLoop, half: &FiniteLoop, group: &PermGroup) -> RepExtension {
    extend_from_lmlt(l, group, |x| left_translation(half, x))
}

/// `M(x) = s⁻¹ P(x) s` for every `x`, where `s` squares.
pub fn half_loop_conjugation_holds(l: &FiniteLoop, half: &FiniteLoop) -> bool {
    let s = Permutation::from_images((0..l.order()).map(|x| l.square(x)).collect())
        .expect("squaring is bijective");
    let si = s.inverse();
    (0..l.order()).all(|x| left_translation(half, x) == &(&si * &p_translation(l, x)) * &s)
}

/// `P(x) ↦ θ_{L(x)}` extends to an isomorphism `PMlt → LMlt^`.
pub fn pmlt_hat_isomorphism_holds(l: &FiniteLoop, limits: &Limits) -> Result<bool> {
    let (t, indices) = left_translation_subgroup(l, limits)?;
    let th = thetas(&t);
    let hat_of = |x: usize| th[t.position(indices[x]).expect("member")].clone();
    let p_group = pmlt(l, limits)?;
    let images: Vec<Permutation> = generator_points(l.order()).into_iter().map(hat_of).collect();
    let Ok(all) = p_group.extend_homomorphism(&images) else {
        return Ok(false);
    };
    let hat_group = PermGroup::generated(th.clone(), limits.cap)?;
    let image: BTreeSet<&Permutation> = all.iter().collect();
    Ok(image.len() == p_group.order() && image.len() == hat_group.order())
}

/// Everything the obstruction argument for simple loops of odd order
/// touches, evaluated on one loop.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub order: usize,
    pub simple: bool,
    pub associative: bool,
    pub radical_order: usize,
    pub aschbacher_present: bool,
    pub obstruction_order: Option<usize>,
    pub right_nuclear_center: RightNuclearCenter,
    /// Normal subloops of `𝓛(1/2)` checked for normality in `𝓛`, when the
    /// hypotheses (radical-free, trivial obstruction) hold.
    pub lifted_normal_subloops: Option<usize>,
    pub lift_failures: Vec<Vec<usize>>,
    pub moufang: bool,
    pub nucleus_order: usize,
    pub nucleus_normal: bool,
}

impl ObstructionReport {
    fn obstruction_nontrivial(&self) -> bool {
        self.obstruction_order.is_some_and(|o| o > 1)
    }

    /// `simple ⇒ Z(G) ∩ C_G(τ) ≠ 1`, read literally.
    pub fn literal_implication(&self) -> bool {
        !self.simple || self.obstruction_nontrivial()
    }

    /// `simple ∧ nonassociative ⇒ Z(G) ∩ C_G(τ) ≠ 1`.
    pub fn guarded_implication(&self) -> bool {
        !(self.simple && !self.associative) || self.obstruction_nontrivial()
    }

    pub fn verdicts(&self) -> Vec<Verdict> {
        let mut out = Vec::new();
        out.push(Verdict::new(
            "simple-is-radical-free",
            "simple Bol ⇒ 𝓛′ = 1",
            !self.simple || self.radical_order == 1,
            format!("simple: {}, |𝓛′| = {}", self.simple, self.radical_order),
        ));
        out.push(Verdict::new(
            "right-nuclear-center",
            "Z(LMlt) = LMlt ∩ R(Nuc_r); 𝓜 is an abelian group",
            self.right_nuclear_center.abelian_group && self.right_nuclear_center.matches_center,
            format!("|𝓜| = {}", self.right_nuclear_center.members.len()),
        ));
        out.push(match self.lifted_normal_subloops {
            Some(count) => Verdict::new(
                "normal-subloops-lift",
                "K(1/2) ⊴ 𝓛(1/2) ⇒ K ⊴ 𝓛 when 𝓛′ = 1 and Z(G) ∩ C_G(τ) = 1",
                self.lift_failures.is_empty(),
                format!("{count} normal subloops of 𝓛(1/2) checked"),
            )
            .with_witnesses(self.lift_failures.iter().map(|f| format!("{f:?}")).collect()),
            None => Verdict::skipped(
                "normal-subloops-lift",
                "K(1/2) ⊴ 𝓛(1/2) ⇒ K ⊴ 𝓛 when 𝓛′ = 1 and Z(G) ∩ C_G(τ) = 1",
                "hypotheses do not hold",
            ),
        });
        out.push(Verdict::new(
            "simple-obstruction",
            "simple nonassociative odd Bol ⇒ Z(G) ∩ C_G(τ) ≠ 1",
            self.guarded_implication(),
            format!(
                "simple: {}, associative: {}, obstruction order: {:?}, literal form holds: {}",
                self.simple,
                self.associative,
                self.obstruction_order,
                self.literal_implication()
            ),
        ));
        out.push(Verdict::new(
            "simple-center",
            "simple nonassociative odd Bol ⇒ 𝓜 ≠ 1",
            !(self.simple && !self.associative) || self.right_nuclear_center.members.len() > 1,
            format!("|𝓜| = {}", self.right_nuclear_center.members.len()),
        ));
        if self.moufang {
            out.push(Verdict::new(
                "moufang-nucleus",
                "Moufang: nucleus normal, so simple ⇒ nucleus trivial",
                self.nucleus_normal && (!self.simple || self.nucleus_order == 1 || self.associative),
                format!("|Nuc| = {}, normal: {}", self.nucleus_order, self.nucleus_normal),
            ));
        }
        out
    }
}

fn require_odd_bol(l: &FiniteLoop) -> Result<()> {
    require_bol(l)?;
    if l.order().is_multiple_of(2) {
        return Err(Error::NotOdd(l.order()));
    }
    Ok(())
}

/// The Aschbacher automorphism of `LMlt` for `T = L(𝓛)`, and `Z(G) ∩ C_G(τ)`.
fn aschbacher_data(
    t: &TwistedSubgroup,
    limits: &Limits,
) -> Result<(Option<Automorphism>, Option<ElementSet>)> {
    let tau = aschbacher_automorphism(t, limits)?;
    let obstruction =
        tau.as_ref().map(|tau| t.ambient().center().iter().copied().filter(|&z| tau.apply(z) == z).collect());
    Ok((tau, obstruction))
}

pub fn simple_odd_obstruction(l: &FiniteLoop, limits: &Limits) -> Result<ObstructionReport> {
    require_odd_bol(l)?;
    let (t, _) = left_translation_subgroup(l, limits)?;
    let group = t.ambient().clone();
    let radical_order = radical(&t, limits)?.len();
    let (tau, obstruction) = aschbacher_data(&t, limits)?;
    let simple = is_simple(l, limits.subloop_bound)?;
    let hypotheses = radical_order == 1 && obstruction.as_ref().is_some_and(|o| o.len() == 1);
    let (lifted_normal_subloops, lift_failures) = if hypotheses {
        let half = half_loop(l)?;
        let mut count = 0;
        let mut failures = Vec::new();
        for k in all_subloops(&half, limits.subloop_bound)? {
            if is_normal_subloop(&half, &k) {
                count += 1;
                let as_subloop = Subloop::of(l, k.members().to_vec());
                if !as_subloop.is_ok_and(|s| is_normal_subloop(l, &s)) {
                    failures.push(k.members().to_vec());
                }
            }
        }
        (Some(count), failures)
    } else {
        (None, Vec::new())
    };
    let props = check_properties(l);
    let nu = nuclei(l);
    Ok(ObstructionReport {
        order: l.order(),
        simple,
        associative: props.is_group,
        radical_order,
        aschbacher_present: tau.is_some(),
        obstruction_order: obstruction.map(|o| o.len()),
        right_nuclear_center: right_nuclear_center(l, &group),
        lifted_normal_subloops,
        lift_failures,
        moufang: props.moufang,
        nucleus_order: nu.nucleus.len(),
        nucleus_normal: is_normal_subloop(l, &nu.nucleus),
    })
}

/// Element orders divide `n`, Cauchy witnesses, strong Lagrange over
/// subloop pairs, `LMlt` a π-group and solvable, and the `A_l` property.
pub fn verify_odd_bol_suite(l: &FiniteLoop, limits: &Limits) -> Result<Vec<Verdict>> {
    require_odd_bol(l)?;
    let n = l.order();
    let mut out = Vec::new();
    let bad: Vec<String> =
        (0..n).filter(|&x| !n.is_multiple_of(l.element_order(x))).map(|x| x.to_string()).collect();
    out.push(
        Verdict::new(
            "bol-element-orders",
            "finite Bol: ord(x) divides |𝓛|",
            bad.is_empty(),
            format!("|𝓛| = {n}"),
        )
        .with_witnesses(bad),
    );
    let primes = prime_divisors(n);
    let missing: Vec<String> =
        primes.iter().filter(|&&p| !(0..n).any(|x| l.element_order(x) == p)).map(|p| p.to_string()).collect();
    let witnesses: Vec<String> = primes
        .iter()
        .filter_map(|&p| (0..n).find(|&x| l.element_order(x) == p).map(|x| format!("{p}: {x}")))
        .collect();
    out.push(
        Verdict::new(
            "bol-cauchy",
            "odd Bol: p divides |𝓛| ⇒ an element of order p exists",
            missing.is_empty(),
            format!("primes {primes:?}, missing {missing:?}"),
        )
        .with_witnesses(witnesses),
    );
    let subs = all_subloops(l, limits.subloop_bound)?;
    let mut pairs = 0usize;
    let mut strong_bad = Vec::new();
    for a in &subs {
        for b in &subs {
            if a.len() < b.len() && a.is_subset_of(b) {
                pairs += 1;
                if b.len() % a.len() != 0 {
                    strong_bad.push(format!("{:?} in {:?}", a.members(), b.members()));
                }
            }
        }
    }
    out.push(
        Verdict::new(
            "bol-strong-lagrange",
            "odd Bol: K₁ ⊆ K₂ subloops ⇒ |K₁| divides |K₂|",
            strong_bad.is_empty(),
            format!("{} subloops, {pairs} nested pairs", subs.len()),
        )
        .with_witnesses(strong_bad),
    );
    let group = lmlt(l, limits.cap)?;
    out.push(Verdict::new(
        "bol-pi-lmlt",
        "Bol π-loop ⇒ LMlt is a π-group",
        !is_pi_number(n, &primes) || is_pi_number(group.order(), &primes),
        format!("π = {primes:?}, |LMlt| = {}", group.order()),
    ));
    out.push(Verdict::new(
        "bol-lmlt-solvable",
        "odd Bol ⇒ LMlt solvable",
        is_solvable_group(&group),
        format!("|LMlt| = {}", group.order()),
    ));
    let a_l = left_inner_generators(l).iter().all(|phi| l.is_automorphism(phi));
    let solvable = is_solvable_loop(l, limits.subloop_bound)?;
    out.push(Verdict::new(
        "bol-a-l-solvable",
        "A_l odd Bol ⇒ solvable",
        !a_l || solvable,
        format!("A_l: {a_l}, solvable: {solvable}"),
    ));
    Ok(out)
}

/// Groups and subloops attached to a Bol loop.
#[derive(Clone, Debug)]
pub struct BolAnalysis {
    pub lmlt: Arc<PermGroup>,
    pub pmlt: PermGroup,
    pub btp: PermGroup,
    pub radical: Subloop,
    pub left_nucleus: Subloop,
    pub aschbacher: Option<Automorphism>,
    pub obstruction: Option<ElementSet>,
    pub right_nuclear_center: RightNuclearCenter,
    /// `|ker Φ₁|, |ker Φ₂|, |ker Φ₃|` for the projections of `Btp`.
    pub projection_kernels: [usize; 3],
}

impl BolAnalysis {
    pub fn new(l: &FiniteLoop, limits: &Limits) -> Result<Self> {
        let (t, _) = left_translation_subgroup(l, limits)?;
        let group = t.ambient().clone();
        let p_group = pmlt(l, limits)?;
        let btp_group = btp(l, limits)?;
        let n = l.order();
        let mut kernels = [0usize; 3];
        for e in btp_group.elements() {
            for (i, k) in kernels.iter_mut().enumerate() {
                if btp_projection(e, i + 1, n).is_identity() {
                    *k += 1;
                }
            }
        }
        let radical = loop_radical(l, limits)?;
        let left_nucleus = left_nucleus_via_sharp(l, limits)?;
        let (aschbacher, obstruction) = aschbacher_data(&t, limits)?;
        let right_nuclear_center = right_nuclear_center(l, &group);
        Ok(BolAnalysis {
            lmlt: group,
            pmlt: p_group,
            btp: btp_group,
            radical,
            left_nucleus,
            aschbacher,
            obstruction,
            right_nuclear_center,
            projection_kernels: kernels,
        })
    }

    /// Structure statements relating `LMlt`, `PMlt`, `Btp` and the
    /// radical on this loop.
    pub fn verdicts(&self, l: &FiniteLoop, limits: &Limits) -> Result<Vec<Verdict>> {
        let mut out = Vec::new();
        let radical_free = self.radical.len() == 1;
        out.push(Verdict::new(
            "btp-kernel-3",
            "ker Φ₃ ≅ 𝓛′",
            self.projection_kernels[2] == self.radical.len(),
            format!("|ker Φ₃| = {}, |𝓛′| = {}", self.projection_kernels[2], self.radical.len()),
        ));
        let (t, _) = left_translation_subgroup(l, limits)?;
        let diagonal_center: usize = {
            let g = t.ambient();
            let center = g.center();
            let graph = inversion_graph(&t, limits)?;
            graph.iter().filter(|&&(a, b)| a == b && center.contains(&a)).count()
        };
        out.push(Verdict::new(
            "btp-kernel-1",
            "ker Φ₁ ≅ Z(G) ∩ { L(x₁)⋯L(x_k) = L(x₁⁻¹)⋯L(x_k⁻¹) }",
            self.projection_kernels[0] == diagonal_center,
            format!("|ker Φ₁| = {}, set order {diagonal_center}", self.projection_kernels[0]),
        ));
        if let Some(obstruction) = &self.obstruction {
            out.push(Verdict::new(
                "btp-kernel-1-radical-free",
                "𝓛′ = 1 ⇒ ker Φ₁ ≅ Z(G) ∩ C_G(τ)",
                self.projection_kernels[0] == obstruction.len(),
                format!("|ker Φ₁| = {}, |Z(G) ∩ C_G(τ)| = {}", self.projection_kernels[0], obstruction.len()),
            ));
            if obstruction.len() == 1 {
                let orders = (self.btp.order(), self.lmlt.order(), self.pmlt.order());
                out.push(Verdict::new(
                    "btp-lmlt-pmlt",
                    "𝓛′ = 1 and Z(G) ∩ C_G(τ) = 1 ⇒ Btp ≅ LMlt ≅ PMlt",
                    orders.0 == orders.1 && orders.1 == orders.2 && self.projection_kernels[2] == 1,
                    format!("|Btp| = {}, |LMlt| = {}, |PMlt| = {}", orders.0, orders.1, orders.2),
                ));
            }
        }
        let rep1 = rep_to_pmlt(l, &self.lmlt);
        let mut rep1_holds = rep1.extends() == radical_free;
        if let (Some(kernel), Some(obstruction)) = (&rep1.kernel, &self.obstruction) {
            rep1_holds &= kernel == obstruction && rep1.image_order == Some(self.pmlt.order());
        }
        out.push(Verdict::new(
            "rep-pmlt",
            "L(x) ↦ P(x) extends to LMlt → PMlt iff 𝓛′ = 1, kernel Z(G) ∩ C_G(τ)",
            rep1_holds,
            match &rep1.conflict {
                Some(c) => format!("conflict between words {:?} and {:?}", c.first_word, c.second_word),
                None => format!("kernel order {:?}", rep1.kernel.as_ref().map(|k| k.len())),
            },
        ));
        out.push(Verdict::new(
            "pmlt-hat",
            "PMlt ≅ LMlt^ via P(x) ↦ θ_{L(x)}",
            pmlt_hat_isomorphism_holds(l, limits)?,
            format!("|PMlt| = {}", self.pmlt.order()),
        ));
        if l.square_roots().is_some() {
            let half = half_loop(l)?;
            out.push(Verdict::new(
                "half-loop-conjugate",
                "M(x) = s⁻¹ P(x) s",
                half_loop_conjugation_holds(l, &half),
                String::new(),
            ));
            let rep2 = rep_to_half_loop(l, &half, &self.lmlt);
            let half_group_order = lmlt(&half, limits.cap)?.order();
            let mut rep2_holds = rep2.extends() == radical_free;
            if let (Some(kernel), Some(obstruction)) = (&rep2.kernel, &self.obstruction) {
                rep2_holds &= kernel == obstruction && rep2.image_order == Some(half_group_order);
            }
            out.push(Verdict::new(
                "rep-half-loop",
                "L(x) ↦ M(x) extends to LMlt → LMlt(𝓛(1/2)) iff 𝓛′ = 1, kernel Z(G) ∩ C_G(τ)",
                rep2_holds,
                format!("|LMlt(𝓛(1/2))| = {half_group_order}"),
            ));
        }
        if check_properties(l).bruck {
            let inversion = Permutation::from_images((0..l.order()).map(|x| l.inverse(x)).collect())
                .expect("inversion is a bijection");
            let g = &self.lmlt;
            let holds = self.aschbacher.as_ref().is_some_and(|tau| {
                (0..g.order())
                    .all(|i| g.index_of(&g.element(i).conjugate_by(&inversion)) == Some(tau.apply(i)))
            });
            out.push(Verdict::new(
                "bruck-aschbacher",
                "Bruck: conjugation by x ↦ x⁻¹ is the Aschbacher automorphism of LMlt",
                holds,
                String::new(),
            ));
        }
        Ok(out)
    }
}

/// `L(𝓛)` twisted iff Bol, and `L(K)` twisted for every subloop `K`.
pub fn translation_sets_twisted(l: &FiniteLoop, limits: &Limits) -> Result<bool> {
    let group = Arc::new(lmlt(l, limits.cap)?);
    let set_of = |members: &[usize]| -> ElementSet {
        members.iter().map(|&x| group.index_of(&left_translation(l, x)).expect("generator")).collect()
    };
    let whole: Vec<usize> = (0..l.order()).collect();
    let bol = check_left_bol(l);
    if verify_twisted(&group, &set_of(&whole)) != bol {
        return Ok(false);
    }
    if !bol {
        return Ok(true);
    }
    Ok(all_subloops(l, limits.subloop_bound)?.iter().all(|k| verify_twisted(&group, &set_of(k.members()))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twisted::bloop_of;
    use crate::twisted::fixtures::plane_b;
    use crate::verdict::all_hold;

    fn plane_bloop(p: usize) -> FiniteLoop {
        bloop_of(&plane_b(p)).unwrap().bloop
    }

    #[test]
    fn group_p_translations() {
        let z5 = FiniteLoop::cyclic(5);
        for x in 0..5 {
            assert_eq!(p_translation(&z5, x), left_translation(&z5, z5.square(x)));
        }
        assert_eq!(pmlt(&z5, &Limits::default()).unwrap().order(), 5);
    }

    #[test]
    fn autotopisms_characterize_bol() {
        let l = FiniteLoop::from_rows(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap();
        assert!((0..5).any(|x| bol_autotopism(&l, x).is_err()));
        assert!(matches!(btp(&l, &Limits::default()), Err(Error::NotAutotopism(_))));
        let b = bol_autotopism(&FiniteLoop::cyclic(3), 0).unwrap();
        assert!(b.f1.is_identity() && b.f2.is_identity() && b.f3.is_identity());
    }

    #[test]
    fn bruck_fixture_analysis() {
        let limits = Limits::default();
        let l = plane_bloop(5);
        assert_eq!(loop_radical(&l, &limits).unwrap().len(), 1);
        assert_eq!(half_loop(&l).unwrap(), l);
        let analysis = BolAnalysis::new(&l, &limits).unwrap();
        assert_eq!(analysis.lmlt.order(), 75);
        assert!(all_hold(&analysis.verdicts(&l, &limits).unwrap()));
        let report = simple_odd_obstruction(&l, &limits).unwrap();
        assert!(!report.simple);
        assert_eq!(report.obstruction_order, Some(1));
        assert!(report.lifted_normal_subloops.unwrap() >= 2);
        assert!(all_hold(&report.verdicts()));
        assert!(all_hold(&verify_odd_bol_suite(&l, &limits).unwrap()));
    }

    #[test]
    fn cyclic_prime_is_simple_with_trivial_obstruction() {
        let report = simple_odd_obstruction(&FiniteLoop::cyclic(7), &Limits::default()).unwrap();
        assert!(report.simple && report.associative);
        assert!(!report.literal_implication());
        assert!(report.guarded_implication());
    }

    #[test]
    fn nonabelian_group_radical_is_derived_subgroup() {
        let g = Arc::new(
            PermGroup::generated(
                vec![
                    Permutation::from_images((0..7).map(|x| (x + 1) % 7).collect()).unwrap(),
                    Permutation::from_images((0..7).map(|x| x * 2 % 7).collect()).unwrap(),
                ],
                100,
            )
            .unwrap(),
        );
        let l = FiniteLoop::from_group(&g);
        let limits = Limits::default();
        let rad = loop_radical(&l, &limits).unwrap();
        assert_eq!(rad.members().iter().copied().collect::<ElementSet>(), g.derived_subgroup_of(&g.all()));
        assert_eq!(rad.len(), 7);
        let analysis = BolAnalysis::new(&l, &limits).unwrap();
        assert!(analysis.aschbacher.is_none());
        assert!(all_hold(&analysis.verdicts(&l, &limits).unwrap()));
    }

    #[test]
    fn normality_criteria_agree() {
        let l = plane_bloop(5);
        for k in all_subloops(&l, 64).unwrap() {
            let normal = is_normal_subloop(&l, &k);
            assert_eq!(normal, normality_single_equation(&l, &k));
            assert_eq!(normal, normality_lmlt_criterion(&l, &k));
        }
    }

    #[test]
    fn translation_sets() {
        assert!(translation_sets_twisted(&plane_bloop(5), &Limits::default()).unwrap());
    }

    /// Induced by `B(τ)` in `F_5² ⋊ Z_3` from an order-5 subgroup other
    /// than `C_G(τ)`.
    fn non_bruck15() -> FiniteLoop {
        let rows: [[usize; 15]; 15] = [
            [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14],
            [1, 2, 0, 14, 13, 7, 3, 10, 12, 4, 5, 8, 11, 9, 6],
            [2, 0, 1, 6, 9, 10, 14, 5, 11, 13, 7, 12, 8, 4, 3],
            [3, 12, 11, 10, 14, 4, 8, 2, 13, 1, 0, 7, 9, 6, 5],
            [4, 10, 5, 13, 12, 8, 1, 14, 2, 7, 6, 3, 0, 11, 9],
            [5, 7, 13, 4, 8, 6, 9, 3, 1, 11, 12, 0, 14, 10, 2],
            [6, 3, 10, 8, 1, 9, 11, 4, 7, 0, 14, 5, 2, 12, 13],
            [7, 14, 6, 12, 2, 3, 4, 13, 10, 8, 9, 1, 5, 0, 11],
            [8, 13, 9, 2, 10, 1, 7, 12, 14, 3, 11, 4, 6, 5, 0],
            [9, 4, 12, 1, 7, 11, 0, 8, 3, 5, 2, 6, 13, 14, 10],
            [10, 9, 7, 0, 5, 14, 13, 11, 6, 12, 3, 2, 1, 8, 4],
            [11, 8, 14, 7, 3, 0, 5, 1, 4, 6, 13, 9, 10, 2, 12],
            [12, 6, 8, 11, 0, 2, 10, 9, 5, 14, 1, 13, 4, 3, 7],
            [13, 11, 4, 5, 6, 12, 2, 0, 9, 10, 8, 14, 3, 7, 1],
            [14, 5, 3, 9, 11, 13, 12, 6, 0, 2, 4, 10, 7, 1, 8],
        ];
        FiniteLoop::from_rows(&rows.map(|r| r.to_vec())).unwrap()
    }

    #[test]
    fn non_bruck_fixture_analysis() {
        let limits = Limits::default();
        let l = non_bruck15();
        let props = check_properties(&l);
        assert!(props.left_bol && !props.bruck && !props.is_group);
        let half = half_loop(&l).unwrap();
        assert_ne!(half, l);
        assert!(half_loop_conjugation_holds(&l, &half));
        let analysis = BolAnalysis::new(&l, &limits).unwrap();
        assert_eq!(analysis.projection_kernels, [1, 1, 1]);
        assert!(all_hold(&analysis.verdicts(&l, &limits).unwrap()));
        let report = simple_odd_obstruction(&l, &limits).unwrap();
        assert_eq!(report.lifted_normal_subloops, Some(3));
        assert!(all_hold(&report.verdicts()));
        assert!(all_hold(&verify_odd_bol_suite(&l, &limits).unwrap()));
        for k in all_subloops(&half, 64).unwrap() {
            let bridge = subloop_conjugation_bridge(&l, &k);
            assert_eq!(bridge.is_subloop, bridge.conjugation_condition);
        }
    }
}
