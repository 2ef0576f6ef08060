//! Checks of the structure theorems for 2-divisible twisted subgroups on a
//! concrete instance. Each returns verdicts; a failed verdict is a finding.

use super::{
    aschbacher_automorphism, b_extension, bloop_of, is_two_divisible, radical, sharp, theta_extension,
    verify_twisted, BLoopResult, TwistedSubgroup,
};
use crate::arith::{is_pi_number, pi_part};
use crate::error::{Error, Result};
use crate::loopcore::{all_subloops, lmlt, Subloop};
use crate::permgroup::{is_normal_subgroup, ElementSet};
use crate::verdict::Verdict;
use crate::Limits;

fn require_two_divisible(t: &TwistedSubgroup) -> Result<BLoopResult> {
    match bloop_of(t) {
        Err(Error::NotTwoDivisible(x)) => Err(Error::PreconditionFailed(format!(
            "twisted subgroup is not 2-divisible (element {x} has even order)"
        ))),
        other => other,
    }
}

/// Ambient member sets of all subloops of `T(1/2)`; by the subloop
/// correspondence these are the twisted subgroups contained in `T`.
fn nested_twisted(t: &TwistedSubgroup, bl: &BLoopResult, limits: &Limits) -> Result<Vec<ElementSet>> {
    Ok(all_subloops(&bl.bloop, limits.subloop_bound)?
        .iter()
        .map(|s: &Subloop| s.members().iter().map(|&i| bl.index_map[i]).collect::<ElementSet>())
        .inspect(|set| debug_assert!(set.iter().all(|&x| t.contains(x))))
        .collect())
}

/// Element orders, normal and abelian subgroups inside `T`, `T♯` and `T′`
/// all have orders dividing `|T|`; nested twisted subgroups divide each
/// other; and every subloop of `T(1/2)` is a twisted subgroup.
pub fn verify_lagrange_suite(t: &TwistedSubgroup, limits: &Limits) -> Result<Vec<Verdict>> {
    let bl = require_two_divisible(t)?;
    let g = t.ambient();
    let n = t.len();
    let mut out = Vec::new();

    let bad: Vec<String> = t
        .members()
        .iter()
        .filter(|&&x| !n.is_multiple_of(g.element_order(x)))
        .map(|x| x.to_string())
        .collect();
    out.push(
        Verdict::new(
            "lagrange-element-orders",
            "Lagrange: ord(x) divides |T|",
            bad.is_empty(),
            format!("|T| = {n}"),
        )
        .with_witnesses(bad),
    );

    let nested = nested_twisted(t, &bl, limits)?;
    let not_twisted: Vec<String> =
        nested.iter().filter(|s| !verify_twisted(g, s)).map(|s| format!("{s:?}")).collect();
    out.push(
        Verdict::new(
            "subloops-are-twisted",
            "subloops of T(1/2) are twisted subgroups",
            not_twisted.is_empty(),
            format!("{} subloops", nested.len()),
        )
        .with_witnesses(not_twisted),
    );

    let subgroups: Vec<&ElementSet> = nested.iter().filter(|s| g.is_subgroup(s)).collect();
    let mut normal_bad = Vec::new();
    let mut abelian_bad = Vec::new();
    let mut normal_count = 0;
    let mut abelian_count = 0;
    for a in &subgroups {
        if is_normal_subgroup(g, a)? {
            normal_count += 1;
            if !n.is_multiple_of(a.len()) {
                normal_bad.push(format!("{a:?}"));
            }
        }
        let abelian = a.iter().all(|&x| a.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
        if abelian {
            abelian_count += 1;
            if !n.is_multiple_of(a.len()) {
                abelian_bad.push(format!("{a:?}"));
            }
        }
    }
    out.push(
        Verdict::new(
            "lagrange-normal-subgroups",
            "normal subgroup A ⊆ T: |A| divides |T|",
            normal_bad.is_empty(),
            format!("{normal_count} normal subgroups inside T"),
        )
        .with_witnesses(normal_bad),
    );
    out.push(
        Verdict::new(
            "lagrange-abelian-subgroups",
            "abelian subgroup A ⊆ T: |A| divides |T|",
            abelian_bad.is_empty(),
            format!("{abelian_count} abelian subgroups inside T"),
        )
        .with_witnesses(abelian_bad),
    );

    let sharp_order = sharp(t).len();
    let radical_order = radical(t, limits)?.len();
    out.push(Verdict::new(
        "sharp-and-radical-divide",
        "|T♯| and |T′| divide |T|",
        n.is_multiple_of(sharp_order) && n.is_multiple_of(radical_order),
        format!("|T♯| = {sharp_order}, |T′| = {radical_order}, |T| = {n}"),
    ));

    let mut strong_bad = Vec::new();
    let mut pairs = 0usize;
    for a in &nested {
        for b in &nested {
            if a.len() < b.len() && a.is_subset(b) {
                pairs += 1;
                if b.len() % a.len() != 0 {
                    strong_bad.push(format!("{} in {}", a.len(), b.len()));
                }
            }
        }
    }
    out.push(
        Verdict::new(
            "strong-lagrange",
            "twisted A ⊆ B ⊆ T: |A| divides |B|",
            strong_bad.is_empty(),
            format!("{pairs} nested pairs"),
        )
        .with_witnesses(strong_bad),
    );
    Ok(out)
}

/// `⟨T⟩` has odd order.
pub fn verify_odd_theorem(t: &TwistedSubgroup, limits: &Limits) -> Result<Verdict> {
    let _ = limits;
    if !is_two_divisible(t)?.divisible {
        return Err(Error::PreconditionFailed("twisted subgroup is not 2-divisible".into()));
    }
    let order = t.generated_set().len();
    Ok(Verdict::new(
        "odd-order",
        "2-divisible generating T: |G| odd",
        order % 2 == 1,
        format!("|⟨T⟩| = {order}"),
    ))
}

/// `|T|` is a π-number iff `|⟨T⟩|` is, for a set of odd primes.
pub fn verify_pi_theorem(t: &TwistedSubgroup, pi: &[usize]) -> Result<Verdict> {
    if pi.contains(&2) {
        return Err(Error::PreconditionFailed("π must consist of odd primes".into()));
    }
    if !is_two_divisible(t)?.divisible {
        return Err(Error::PreconditionFailed("twisted subgroup is not 2-divisible".into()));
    }
    let group_order = t.generated_set().len();
    let twisted_pi = is_pi_number(t.len(), pi);
    let group_pi = is_pi_number(group_order, pi);
    Ok(Verdict::new(
        "pi-theorem",
        "T is a twisted π-subgroup iff G is a π-group",
        twisted_pi == group_pi,
        format!("π = {pi:?}: |T| = {} ({twisted_pi}), |⟨T⟩| = {group_order} ({group_pi})", t.len()),
    ))
}

/// Hall π-subloops of `T(1/2)`: subloops of order `|T|_π` whose member set
/// is a twisted π-subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallSearch {
    pub target_order: usize,
    /// Every witness as ambient indices, sorted.
    pub found: Vec<ElementSet>,
}

impl HallSearch {
    pub fn witness(&self) -> Option<&ElementSet> {
        self.found.first()
    }

    pub fn sizes_agree(&self) -> bool {
        self.found.iter().all(|s| s.len() == self.target_order)
    }
}

pub fn hall_search(t: &TwistedSubgroup, pi: &[usize], limits: &Limits) -> Result<HallSearch> {
    let bl = require_two_divisible(t)?;
    let g = t.ambient();
    let target_order = pi_part(t.len(), pi);
    let found = nested_twisted(t, &bl, limits)?
        .into_iter()
        .filter(|s| s.len() == target_order && verify_twisted(g, s))
        .collect();
    Ok(HallSearch { target_order, found })
}

/// A member of order `p`, if one exists.
pub fn cauchy_witness(t: &TwistedSubgroup, p: usize) -> Option<usize> {
    let g = t.ambient();
    t.members().iter().copied().find(|&x| g.element_order(x) == p)
}

/// The extension statements for `θ` and `b` on a generating `T`:
/// `θ` extends iff `T′ = 1`, with kernel `Z(G) ∩ C_G(τ)`; likewise `b`,
/// whose image is `LMlt(T(1/2))` and whose kernel is the core of `C_G(τ)`.
pub fn verify_extension_theorem(t: &TwistedSubgroup, limits: &Limits) -> Result<Vec<Verdict>> {
    let g = t.ambient();
    let rad = radical(t, limits)?;
    let radical_free = rad.len() == 1;
    let theta = theta_extension(t, limits)?;
    let mut out = vec![Verdict::new(
        "theta-extends-iff-radical-free",
        "θ extends to G → Ĝ iff T′ = 1",
        theta.extends() == radical_free,
        format!("|T′| = {}, obstruction order {}", rad.len(), theta.obstruction.len()),
    )];
    if theta.obstruction.len() != rad.len() {
        out.push(Verdict::new(
            "theta-obstruction-order",
            "obstruction to θ ≅ T′",
            false,
            format!("{} vs {}", theta.obstruction.len(), rad.len()),
        ));
    }
    let tau = aschbacher_automorphism(t, limits)?;
    if let (Some(tau), Some(kernel)) = (&tau, &theta.kernel) {
        let expected: ElementSet = g.center().iter().copied().filter(|&z| tau.apply(z) == z).collect();
        out.push(Verdict::new(
            "theta-kernel",
            "ker θ = Z(G) ∩ C_G(τ)",
            *kernel == expected,
            format!("|ker θ| = {}, |Z(G) ∩ C_G(τ)| = {}", kernel.len(), expected.len()),
        ));
    }
    if let Ok(div) = is_two_divisible(t) {
        if div.divisible {
            let bl = bloop_of(t)?;
            let b = b_extension(t, &bl, limits)?;
            out.push(Verdict::new(
                "b-extends-iff-radical-free",
                "b extends to G → T! iff T′ = 1",
                b.extends() == radical_free,
                format!("obstruction order {}", b.obstruction.len()),
            ));
            if let (Some(tau), Some(kernel)) = (&tau, &b.kernel) {
                let centralizer = tau.fixed_points();
                let core = g.core_of(&centralizer);
                let expected: ElementSet =
                    g.center().iter().copied().filter(|z| centralizer.contains(z)).collect();
                let image = b.image_set().expect("extends");
                let loop_group = lmlt(&bl.bloop, limits.cap)?;
                let image_is_lmlt = image.len() == loop_group.order()
                    && loop_group.elements().iter().all(|p| image.contains(p));
                out.push(Verdict::new(
                    "b-exact-sequence",
                    "1 → Z(G) ∩ C_G(τ) → G → LMlt(T(1/2)) → 1",
                    *kernel == expected
                        && core == expected
                        && image_is_lmlt
                        && g.order() == kernel.len() * loop_group.order(),
                    format!(
                        "|G| = {}, |kernel| = {}, |LMlt(T(1/2))| = {}, core of C_G(τ) has order {}",
                        g.order(),
                        kernel.len(),
                        loop_group.order(),
                        core.len()
                    ),
                ));
            }
        }
    }
    Ok(out)
}
