//! Loops induced on left transversals: for `T` meeting every coset `gH`
//! once, `x·y` is the representative of `xyH`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::loopcore::{left_translation, lmlt, lmlt1, FiniteLoop};
use crate::permgroup::{ElementSet, PermGroup, Permutation};
use crate::twisted::{is_left_transversal, twisted_violation, verify_twisted};
use crate::verdict::Verdict;
use crate::Limits;

/// A group, a subgroup, and a left transversal containing the identity.
/// Loop element `i` is the group element `transversal()[i]`; position 0 is
/// the identity.
#[derive(Clone, Debug)]
pub struct TransversalSystem {
    group: Arc<PermGroup>,
    subgroup: ElementSet,
    transversal: Vec<usize>,
    /// Position of the representative of `gH` for every element `g`.
    coset_of: Vec<usize>,
}

impl TransversalSystem {
    /// Validates the subgroup and transversal. The identity is moved to the
    /// front; the other representatives keep their given order.
    pub fn new(group: Arc<PermGroup>, subgroup: ElementSet, transversal: Vec<usize>) -> Result<Self> {
        if subgroup.iter().any(|&h| h >= group.order()) || !group.is_subgroup(&subgroup) {
            return Err(Error::NotASubgroup);
        }
        if let Some(&bad) = transversal.iter().find(|&&t| t >= group.order()) {
            return Err(Error::NotAMember(format!("index {bad}")));
        }
        let Some(one) = transversal.iter().position(|&t| t == 0) else {
            return Err(Error::NotATransversal("identity is missing".into()));
        };
        let mut ordered = vec![0];
        ordered.extend(transversal.iter().enumerate().filter(|&(i, _)| i != one).map(|(_, &t)| t));
        if !is_left_transversal(&group, &ordered, &subgroup) {
            return Err(Error::NotATransversal(format!(
                "{} representatives for {} cosets, or two in one coset",
                ordered.len(),
                group.order() / subgroup.len()
            )));
        }
        let mut coset_of = vec![usize::MAX; group.order()];
        for (i, &t) in ordered.iter().enumerate() {
            for &h in &subgroup {
                coset_of[group.mul(t, h)] = i;
            }
        }
        Ok(TransversalSystem { group, subgroup, transversal: ordered, coset_of })
    }

    /// The least element (in closure order) of every coset.
    pub fn canonical(group: Arc<PermGroup>, subgroup: ElementSet) -> Result<Self> {
        if !group.is_subgroup(&subgroup) {
            return Err(Error::NotASubgroup);
        }
        let mut seen = vec![false; group.order()];
        let mut reps = Vec::new();
        for g in 0..group.order() {
            if seen[g] {
                continue;
            }
            reps.push(g);
            for &h in &subgroup {
                seen[group.mul(g, h)] = true;
            }
        }
        Self::new(group, subgroup, reps)
    }

    /// `(LMlt(𝓛), LMlt₁(𝓛), L(𝓛))` with `L(x)` at position `x`.
    pub fn from_loop(l: &FiniteLoop, limits: &Limits) -> Result<Self> {
        let group = Arc::new(lmlt(l, limits.cap)?);
        let subgroup = lmlt1(&group);
        let reps = (0..l.order())
            .map(|x| group.index_of(&left_translation(l, x)).expect("translations generate LMlt"))
            .collect();
        Self::new(group, subgroup, reps)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn subgroup(&self) -> &ElementSet {
        &self.subgroup
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn transversal_set(&self) -> ElementSet {
        self.transversal.iter().copied().collect()
    }

    /// Position of the representative of `gH`.
    pub fn representative(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// The distinct conjugates `gHg⁻¹`.
    pub fn conjugates(&self) -> Vec<ElementSet> {
        let g = &self.group;
        let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
        let mut frontier = vec![self.subgroup.clone()];
        seen.insert(self.subgroup.clone());
        while let Some(h) = frontier.pop() {
            for s in g.generators() {
                let conj: ElementSet =
                    h.iter().map(|&x| g.index_of(&g.element(x).conjugate_by(s)).expect("closed")).collect();
                if seen.insert(conj.clone()) {
                    frontier.push(conj);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Transversal to every conjugate of `H`, which makes the induced left
    /// loop a loop.
    pub fn transversal_to_all_conjugates(&self) -> bool {
        self.conjugates().iter().all(|c| is_left_transversal(&self.group, &self.transversal, c))
    }
}

/// The induced operation on positions. `as_loop` is present when the
/// structure is a loop.
#[derive(Clone, Debug)]
pub struct InducedLoop {
    pub order: usize,
    pub table: Vec<usize>,
    pub full_loop: bool,
    pub as_loop: Option<FiniteLoop>,
}

impl InducedLoop {
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    pub fn left_translation(&self, x: usize) -> Permutation {
        Permutation::from_images(self.table[x * self.order..(x + 1) * self.order].to_vec())
            .expect("rows of a left loop are permutations")
    }

    /// `(x·(y·x))·z = x·(y·(x·z))` for all triples.
    pub fn is_left_bol(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let w = self.mul(x, self.mul(y, x));
                (0..n).all(|z| self.mul(w, z) == self.mul(x, self.mul(y, self.mul(x, z))))
            })
        })
    }
}

pub fn induced_loop(sys: &TransversalSystem) -> Result<InducedLoop> {
    let g = &sys.group;
    let t = &sys.transversal;
    let n = t.len();
    let table: Vec<usize> = (0..n * n).map(|k| sys.representative(g.mul(t[k / n], t[k % n]))).collect();
    let full_loop = sys.transversal_to_all_conjugates();
    let as_loop = if full_loop {
        Some(
            FiniteLoop::from_table(n, table.clone())
                .map_err(|e| Error::violation("transversal to all conjugates gives a loop", e.to_string()))?,
        )
    } else {
        None
    };
    Ok(InducedLoop { order: n, table, full_loop, as_loop })
}

/// `g ↦ (x ↦ representative of g·x·H)`, the action of `G` on `T`.
pub fn action_permutation(sys: &TransversalSystem, g: usize) -> Permutation {
    let images = sys.transversal.iter().map(|&t| sys.representative(sys.group.mul(g, t))).collect();
    Permutation::from_images(images).expect("G permutes the cosets")
}

/// Both ends of `1 → core(H) → G → LMlt(T, ·) → 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSequence {
    pub kernel: ElementSet,
    pub core: ElementSet,
    pub image_order: usize,
    pub lmlt_order: usize,
    pub homomorphism: bool,
    pub image_is_lmlt: bool,
}

impl CoreSequence {
    pub fn exact(&self, group_order: usize) -> bool {
        self.homomorphism
            && self.image_is_lmlt
            && self.kernel == self.core
            && group_order == self.kernel.len() * self.image_order
    }
}

/// Exact when the transversal generates the group.
pub fn core_sequence(sys: &TransversalSystem, limits: &Limits) -> Result<CoreSequence> {
    let g = &sys.group;
    let action: Vec<Permutation> = (0..g.order()).map(|x| action_permutation(sys, x)).collect();
    let homomorphism = g.generators().iter().all(|s| {
        let si = g.index_of(s).expect("generator");
        (0..g.order()).all(|x| action[g.mul(si, x)] == &action[si] * &action[x])
    });
    let image: BTreeSet<Permutation> = action.iter().cloned().collect();
    let kernel: ElementSet = (0..g.order()).filter(|&x| action[x].is_identity()).collect();
    let core = g.core_of(&sys.subgroup);
    let induced = induced_loop(sys)?;
    let translations: Vec<Permutation> = (0..induced.order).map(|x| induced.left_translation(x)).collect();
    let lmlt_group = PermGroup::generated(translations, limits.cap)?;
    let image_is_lmlt =
        image.len() == lmlt_group.order() && lmlt_group.elements().iter().all(|p| image.contains(p));
    Ok(CoreSequence {
        kernel,
        core,
        image_order: image.len(),
        lmlt_order: lmlt_group.order(),
        homomorphism,
        image_is_lmlt,
    })
}

/// Twisted `T` gives a Bol loop; core-free `H` with a Bol loop gives a
/// twisted `T`; a transversal closed under `xyx` is closed under inverses.
pub fn verify_ts_bol(sys: &TransversalSystem) -> Result<Vec<Verdict>> {
    let g = &sys.group;
    let tset = sys.transversal_set();
    let twisted = verify_twisted(g, &tset);
    let induced = induced_loop(sys)?;
    let bol = induced.full_loop && induced.is_left_bol();
    let core_free = g.core_of(&sys.subgroup).len() == 1;
    let xyx_closed = tset.iter().all(|&x| tset.iter().all(|&y| tset.contains(&g.mul(g.mul(x, y), x))));
    let inverse_closed = tset.iter().all(|&x| tset.contains(&g.inv(x)));
    let violation = twisted_violation(g, &tset).map(|v| v.to_string());
    Ok(vec![
        Verdict::new(
            "twisted-transversal-is-bol",
            "T twisted ⇒ (T,·) is a Bol loop",
            !twisted || bol,
            format!("twisted: {twisted}, Bol loop: {bol}"),
        ),
        Verdict::new(
            "core-free-bol-is-twisted",
            "H core-free and (T,·) Bol ⇒ T twisted",
            !(core_free && bol) || twisted,
            format!(
                "core-free: {core_free}, Bol loop: {bol}, twisted: {twisted}{}",
                violation.map(|v| format!(" ({v})")).unwrap_or_default()
            ),
        ),
        Verdict::new(
            "transversal-xyx-closed-is-inverse-closed",
            "transversal with xTx ⊆ T ⇒ T⁻¹ = T",
            !xyx_closed || inverse_closed,
            format!("xyx-closed: {xyx_closed}, inverse-closed: {inverse_closed}"),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loopcore::check_left_bol;
    use crate::verdict::all_hold;

    fn cyclic(n: usize) -> Arc<PermGroup> {
        let images = (0..n).map(|i| (i + 1) % n).collect();
        Arc::new(PermGroup::generated(vec![Permutation::from_images(images).unwrap()], 100).unwrap())
    }

    fn s3() -> Arc<PermGroup> {
        Arc::new(
            PermGroup::generated(
                vec![
                    Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
                    Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
                ],
                10,
            )
            .unwrap(),
        )
    }

    #[test]
    fn trivial_subgroup_gives_the_group() {
        let g = cyclic(5);
        let sys = TransversalSystem::canonical(g.clone(), g.trivial()).unwrap();
        let induced = induced_loop(&sys).unwrap();
        assert_eq!(induced.as_loop.unwrap(), FiniteLoop::from_group(&g));
    }

    #[test]
    fn complement_in_z6() {
        let g = cyclic(6);
        let h: ElementSet = (0..6).filter(|&i| g.element(i).order() <= 2).collect();
        let t: Vec<usize> =
            (0..6).filter(|&i| g.element(i).order() != 2 && g.element(i).order() != 6).collect();
        let sys = TransversalSystem::new(g, h, t).unwrap();
        let induced = induced_loop(&sys).unwrap();
        assert!(induced.full_loop && induced.as_loop.unwrap().is_associative());
        assert!(all_hold(&verify_ts_bol(&sys).unwrap()));
    }

    #[test]
    fn bad_transversals_are_rejected() {
        let g = s3();
        let h: ElementSet =
            [0, g.index_of(&Permutation::from_cycles(3, &[&[0, 1]]).unwrap()).unwrap()].into_iter().collect();
        assert!(matches!(
            TransversalSystem::new(g.clone(), h.clone(), vec![0, 1]),
            Err(Error::NotATransversal(_))
        ));
        let three_cycle = g.index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()).unwrap();
        let not_sub: ElementSet = [0, three_cycle].into_iter().collect();
        assert!(matches!(TransversalSystem::canonical(g, not_sub), Err(Error::NotASubgroup)));
    }

    #[test]
    fn loop_roundtrip_and_core_sequence() {
        let g = s3();
        let l = FiniteLoop::from_group(&g);
        let limits = Limits::default();
        let sys = TransversalSystem::from_loop(&l, &limits).unwrap();
        let induced = induced_loop(&sys).unwrap();
        assert_eq!(induced.as_loop.unwrap(), l);
        let seq = core_sequence(&sys, &limits).unwrap();
        assert!(seq.exact(sys.group().order()));
    }

    #[test]
    fn core_sequence_with_nontrivial_core() {
        // H = A₃ is normal in S₃, so it is its own core and the image is Z₂.
        let g = s3();
        let h: ElementSet = (0..6).filter(|&i| g.element(i).order() != 2).collect();
        let sys = TransversalSystem::canonical(g.clone(), h.clone()).unwrap();
        let seq = core_sequence(&sys, &Limits::default()).unwrap();
        assert_eq!(seq.core, h);
        assert_eq!(seq.image_order, 2);
        assert!(seq.exact(6));
    }

    #[test]
    fn non_bol_loop_gives_non_twisted_transversal() {
        let l = FiniteLoop::from_rows(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap();
        assert!(!check_left_bol(&l));
        let sys = TransversalSystem::from_loop(&l, &Limits::default()).unwrap();
        let induced = induced_loop(&sys).unwrap();
        assert!(induced.full_loop && !induced.is_left_bol());
        assert!(!verify_twisted(sys.group(), &sys.transversal_set()));
        assert!(all_hold(&verify_ts_bol(&sys).unwrap()));
    }
}
