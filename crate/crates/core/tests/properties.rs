//! Type invariants as properties over randomized instances: random
//! permutations, random transversals of a point stabilizer in S5, random
//! twisted closures, and random relabelings of two Bol loops of order 15
//! built from the affine plane group over F5.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use bolkit_core::bolanalysis::{bol_autotopism, half_loop, is_autotopism, BolAnalysis};
use bolkit_core::loopcore::{
    check_properties, left_translation, lmlt, nuclei, nuclei_via_translations, validate_table,
};
use bolkit_core::permgroup::{centralizer_of_automorphism, enumerate, is_normal_subgroup, GroupElement};
use bolkit_core::transversal::{core_sequence, induced_loop, TransversalSystem};
use bolkit_core::twisted::{
    aschbacher_automorphism, associates, b_of, bloop_of, hat, k_of, radical, sharp, theta_identities_hold,
    twisted_closure, verify_twisted,
};
use bolkit_core::{Automorphism, ElementSet, FiniteLoop, GroupPair, Limits, PermGroup, Permutation};

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).unwrap()
}

fn symmetric(n: usize) -> Arc<PermGroup> {
    let cycle = perm((1..n).chain([0]).collect());
    let swap = perm([1, 0].into_iter().chain(2..n).collect());
    Arc::new(PermGroup::generated(vec![cycle, swap], 1000).unwrap())
}

fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(perm)
}

/// A relabeling of `0..n` fixing `0`.
fn arb_relabel(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|rest| perm(std::iter::once(0).chain(rest).collect()))
}

/// `F5² ⋊ Z3` on the 25 points `5x + y`, with the coordinate swap.
fn plane_group() -> (Arc<PermGroup>, Permutation) {
    let p = 5;
    let point = |x: usize, y: usize| (x % p) * p + y % p;
    let map = |f: &dyn Fn(usize, usize) -> (usize, usize)| {
        perm(
            (0..p * p)
                .map(|i| {
                    let (x, y) = f(i / p, i % p);
                    point(x, y)
                })
                .collect(),
        )
    };
    let shift_x = map(&|x, y| (x + 1, y));
    let shift_y = map(&|x, y| (x, y + 1));
    // (x, y) ↦ (−y, x − y); with this rotation B(swap) is also a transversal
    // of the x-shift subgroup.
    let rotate = map(&|x, y| (p - y, x + p - y));
    let swap = map(&|x, y| (y, x));
    let g = PermGroup::generated(vec![shift_x, shift_y, rotate], 1000).unwrap();
    assert_eq!(g.order(), 75);
    (Arc::new(g), swap)
}

/// The loops induced on `B(swap)` from `C_G(swap)` (a Bruck loop) and from
/// the group generated by the x-shift (a Bol loop that is not Bruck).
fn bol_loops() -> [FiniteLoop; 2] {
    let (g, swap) = plane_group();
    let tau = Automorphism::conjugation_by(g.clone(), &swap).unwrap();
    let b = b_of(&tau).unwrap();
    let c = centralizer_of_automorphism(&g, &tau);
    let shift = g.subgroup_generated(&ElementSet::from([1]));
    [c, shift].map(|h| {
        let sys = TransversalSystem::new(g.clone(), h, b.members().to_vec()).unwrap();
        induced_loop(&sys).unwrap().as_loop.expect("a loop")
    })
}

fn limits() -> Limits {
    Limits::default()
}

#[test]
fn fixture_loops_are_as_described() {
    let [bruck, bol] = bol_loops();
    let (pb, pl) = (check_properties(&bruck), check_properties(&bol));
    assert_eq!(bruck.order(), 15);
    assert!(pb.bruck && !pb.is_group);
    assert!(pl.left_bol && !pl.automorphic_inverse);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pairs_form_a_direct_product(a in arb_perm(5), b in arb_perm(5), c in arb_perm(5), d in arb_perm(5)) {
        let x = GroupPair::new(a.clone(), b.clone()).unwrap();
        let y = GroupPair::new(c.clone(), d.clone()).unwrap();
        prop_assert_eq!(x.op(&y), GroupPair::new(&a * &c, &b * &d).unwrap());
        prop_assert!(x.op(&x.inv()).is_one());
        let closure = enumerate(&[x, y], 100_000).unwrap().elements;
        let left: BTreeSet<Permutation> = closure.iter().map(|e| e.left.clone()).collect();
        let right: BTreeSet<Permutation> = closure.iter().map(|e| e.right.clone()).collect();
        prop_assert_eq!(left.len(), PermGroup::generated(vec![a, c], 1000).unwrap().order());
        prop_assert_eq!(right.len(), PermGroup::generated(vec![b, d], 1000).unwrap().order());
        prop_assert!(closure.len() <= left.len() * right.len());
        prop_assert!(GroupPair::new(Permutation::identity(2), Permutation::identity(3)).is_err());
    }

    /// Transversals of the stabilizer of 0 in S5: the induced operation is a
    /// loop iff the transversal meets every conjugate once, and a twisted
    /// transversal induces a Bol operation; the stabilizer is core-free, so
    /// conversely a Bol loop comes from a twisted transversal.
    #[test]
    fn induced_operations(choice in proptest::collection::vec(0usize..24, 4)) {
        let g = symmetric(5);
        let h: ElementSet = (0..g.order()).filter(|&i| g.element(i).apply(0) == 0).collect();
        let reps: Vec<usize> = std::iter::once(0)
            .chain((1..5).map(|target| {
                let coset: Vec<usize> = (0..g.order()).filter(|&i| g.element(i).apply(0) == target).collect();
                coset[choice[target - 1]]
            }))
            .collect();
        let sys = TransversalSystem::new(g.clone(), h.clone(), reps.clone()).unwrap();
        let ind = induced_loop(&sys).unwrap();
        prop_assert_eq!(ind.as_loop.is_some(), sys.transversal_to_all_conjugates());
        for x in 0..5 {
            prop_assert_eq!(ind.mul(0, x), x);
            prop_assert_eq!(ind.mul(x, 0), x);
        }
        let twisted = verify_twisted(&g, &reps.iter().copied().collect());
        prop_assert!(!twisted || ind.is_left_bol());
        let seq = core_sequence(&sys, &limits()).unwrap();
        prop_assert!(seq.homomorphism);
        prop_assert_eq!(seq.core.len(), 1);
        let span = PermGroup::generated(reps.iter().map(|&r| g.element(r).clone()).collect(), 1000).unwrap();
        if span.order() == g.order() {
            prop_assert!(seq.exact(g.order()));
        }
        if let Some(l) = &ind.as_loop {
            prop_assert!(validate_table(5, l.table()).is_ok());
            let p = check_properties(l);
            prop_assert_eq!(p.left_bol, twisted);
            prop_assert_eq!(p.bruck, p.left_bol && p.automorphic_inverse);
            prop_assert!(!p.moufang || (p.left_bol && p.right_bol));
            // Bol iff the left translations form a twisted subset of LMlt.
            let lm = lmlt(l, 1000).unwrap();
            let set: ElementSet = (0..5).map(|x| lm.index_of(&left_translation(l, x)).unwrap()).collect();
            prop_assert_eq!(verify_twisted(&lm, &set), p.left_bol);
            let nu = nuclei(l);
            let (left, middle) = nuclei_via_translations(l);
            prop_assert_eq!(&left, &nu.left);
            prop_assert_eq!(&middle, &nu.middle);
        }
    }

    /// Random twisted closures in S4: the radical is a normal subgroup inside
    /// every associate, and the hat is radical-free.
    #[test]
    fn radical_and_associates(mask in 0u32..(1 << 23)) {
        let g = symmetric(4);
        let seed: ElementSet = (1..24).filter(|&i| mask >> (i - 1) & 1 == 1).take(3).collect();
        let t = twisted_closure(&g, &seed);
        prop_assert!(verify_twisted(&g, &t.member_set()));
        let rad = radical(&t, &limits()).unwrap();
        prop_assert!(g.is_subgroup(&rad));
        prop_assert!(rad.iter().all(|r| sharp(&t).contains(r)));
        for a in associates(&t).unwrap() {
            prop_assert!(rad.iter().all(|&r| a.contains(r)));
        }
        prop_assert!(theta_identities_hold(&t));
        prop_assert!(hat(&t, &limits()).is_ok());
        let rebased = t.rebase(&limits()).unwrap();
        let rad_in_span = radical(&rebased, &limits()).unwrap();
        prop_assert!(is_normal_subgroup(rebased.ambient(), &rad_in_span).unwrap());
        if rad_in_span.len() == 1 {
            let tau = aschbacher_automorphism(&rebased, &limits()).unwrap().expect("radical-free");
            prop_assert!(tau.is_involution() && tau.is_homomorphism_exhaustive());
            let span = rebased.ambient();
            prop_assert!(rebased.members().iter().all(|&x| tau.apply(x) == span.inv(x)));
        }
    }

    /// Inner automorphisms of S4: multiplicative bijections; for involutions
    /// `B(τ) ⊆ K(τ)` and `|B(τ)| = [G : C_G(τ)]`.
    #[test]
    fn inner_automorphisms(sigma in arb_perm(4)) {
        let g = symmetric(4);
        let tau = Automorphism::conjugation_by(g.clone(), &sigma).unwrap();
        prop_assert!(tau.is_homomorphism_exhaustive());
        let image: BTreeSet<usize> = tau.table().iter().copied().collect();
        prop_assert_eq!(image.len(), g.order());
        if tau.is_involution() {
            let k = k_of(&tau).unwrap();
            let b = b_of(&tau).unwrap();
            prop_assert!(b.members().iter().all(|&x| k.contains(x)));
            prop_assert_eq!(b.len() * centralizer_of_automorphism(&g, &tau).len(), g.order());
        }
    }

    /// In a group of odd order every twisted subgroup is 2-divisible, and its
    /// B-loop is Bruck and 2-divisible.
    #[test]
    fn odd_twisted_closures_give_b_loops(seed in proptest::collection::btree_set(1usize..75, 1..3)) {
        let (g, _) = plane_group();
        let t = twisted_closure(&g, &seed);
        let res = bloop_of(&t).unwrap();
        let p = check_properties(&res.bloop);
        prop_assert!(p.bruck && p.two_divisible);
        prop_assert_eq!(res.bloop.order(), t.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Relabeling a Bol loop transports every structure; the radical lies in
    /// the left nucleus, the right nuclear center is an abelian group, and
    /// `(P(x), L(x⁻¹), L(x))` is an autotopism.
    #[test]
    fn bol_structure_under_relabeling(which in 0usize..2, relabel in arb_relabel(15), x in 0usize..15) {
        let base = bol_loops()[which].clone();
        let l = base.relabel(&relabel).unwrap();
        for a in 0..15 {
            for b in 0..15 {
                prop_assert_eq!(l.mul(relabel.apply(a), relabel.apply(b)), relabel.apply(base.mul(a, b)));
            }
        }
        prop_assert_eq!(check_properties(&l), check_properties(&base));
        let moved: Vec<usize> = {
            let mut v: Vec<usize> = nuclei(&base).left.members().iter().map(|&a| relabel.apply(a)).collect();
            v.sort_unstable();
            v
        };
        let left = nuclei(&l).left;
        prop_assert_eq!(left.members(), &moved[..]);

        let analysis = BolAnalysis::new(&l, &limits()).unwrap();
        prop_assert!(analysis.radical.is_subset_of(&nuclei(&l).left));
        prop_assert!(analysis.right_nuclear_center.abelian_group);
        let a = bol_autotopism(&l, x).unwrap();
        prop_assert!(is_autotopism(&l, &a.f1, &a.f2, &a.f3));

        let half = half_loop(&l).unwrap();
        prop_assert_eq!(half, half_loop(&base).unwrap().relabel(&relabel).unwrap());
    }
}
