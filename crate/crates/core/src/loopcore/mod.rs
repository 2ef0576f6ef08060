//! Finite loops given by Cayley tables.
//!
//! Elements are `0..n` and `0` is always the identity. Left and right
//! division tables are precomputed on construction.

mod subloops;

pub use subloops::{
    all_subloops, generated_subloop, is_normal_subloop, is_simple, is_solvable_loop, quotient_loop, Subloop,
};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permgroup::{ElementSet, PermGroup, Permutation};

/// A loop of order `n` with identity `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteLoop {
    n: usize,
    table: Vec<usize>,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
}

impl fmt::Debug for FiniteLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FiniteLoop(order {})", self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Checks the loop axioms on a flat `n × n` table. Latin-square failures are
/// reported before identity failures.
pub fn validate_table(n: usize, table: &[usize]) -> Result<()> {
    if n == 0 {
        return Err(Error::NotALoop("empty table".into()));
    }
    if table.len() != n * n {
        return Err(Error::NotALoop(format!("expected {} entries, found {}", n * n, table.len())));
    }
    for r in 0..n {
        for c in 0..n {
            let v = table[r * n + c];
            if v >= n {
                return Err(Error::NotALoop(format!("entry {v} at row {r}, column {c} is out of range")));
            }
        }
    }
    for r in 0..n {
        let mut seen = vec![false; n];
        for c in 0..n {
            let v = table[r * n + c];
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotALoop(format!(
                    "left translation by {r} is not bijective: value {v} repeats in row {r}"
                )));
            }
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for r in 0..n {
            let v = table[r * n + c];
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotALoop(format!(
                    "right translation by {c} is not bijective: value {v} repeats in column {c}"
                )));
            }
        }
    }
    let two_sided = |e: usize| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x);
    if !two_sided(0) {
        let found = (0..n).find(|&e| two_sided(e));
        return Err(Error::IdentityNotZero(match found {
            Some(e) => format!("the identity is element {e}"),
            None => "the table has no two-sided identity".into(),
        }));
    }
    Ok(())
}

impl FiniteLoop {
    pub fn from_table(n: usize, table: Vec<usize>) -> Result<Self> {
        validate_table(n, &table)?;
        let mut ldiv = vec![0; n * n];
        let mut rdiv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = table[x * n + y];
                ldiv[x * n + z] = y;
                rdiv[z * n + y] = x;
            }
        }
        Ok(FiniteLoop { n, table, ldiv, rdiv })
    }

    /// Like [`FiniteLoop::from_table`], but a table whose two-sided
    /// identity is some `e ≠ 0` is accepted with labels `0` and `e` swapped.
    /// Returns the loop and the original label of the identity.
    pub fn from_table_normalized(n: usize, table: Vec<usize>) -> Result<(Self, usize)> {
        match validate_table(n, &table) {
            Err(Error::IdentityNotZero(_)) => {}
            _ => return Self::from_table(n, table).map(|l| (l, 0)),
        }
        let two_sided = |e: usize| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x);
        let Some(e) = (0..n).find(|&e| two_sided(e)) else {
            return Self::from_table(n, table).map(|l| (l, 0));
        };
        let swap = |x: usize| {
            if x == 0 {
                e
            } else if x == e {
                0
            } else {
                x
            }
        };
        let relabeled = (0..n * n).map(|k| swap(table[swap(k / n) * n + swap(k % n)])).collect();
        Self::from_table(n, relabeled).map(|l| (l, e))
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotALoop("table is not square".into()));
        }
        Self::from_table(n, rows.concat())
    }

    /// Cayley table of the group, elements labelled by closure order.
    pub fn from_group(group: &PermGroup) -> Self {
        let n = group.order();
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| group.mul(a, b)).collect();
        Self::from_table(n, table).expect("group tables are loops")
    }

    /// The cyclic group `Z_n` under addition.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_table(n, table).expect("cyclic table")
    }

    /// Direct product with pairs `(a, b)` labelled `a * other.order() + b`.
    pub fn direct_product(&self, other: &FiniteLoop) -> FiniteLoop {
        let m = other.n;
        let n = self.n * m;
        let table = (0..n * n)
            .map(|k| {
                let (x, y) = (k / n, k % n);
                self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
            })
            .collect();
        Self::from_table(n, table).expect("products of loops are loops")
    }

    /// Relabels by `perm` (old element `x` becomes `perm(x)`); `perm` must fix 0.
    pub fn relabel(&self, perm: &Permutation) -> Result<FiniteLoop> {
        if perm.degree() != self.n || perm.apply(0) != 0 {
            return Err(Error::PreconditionFailed(
                "relabelling must be a permutation of the elements fixing 0".into(),
            ));
        }
        let inv = perm.inverse();
        let n = self.n;
        let table = (0..n * n).map(|k| perm.apply(self.mul(inv.apply(k / n), inv.apply(k % n)))).collect();
        Self::from_table(n, table)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// `x \ z`: the unique `y` with `x·y = z`.
    #[inline]
    pub fn ldiv(&self, x: usize, z: usize) -> usize {
        self.ldiv[x * self.n + z]
    }

    /// `z / y`: the unique `x` with `x·y = z`.
    #[inline]
    pub fn rdiv(&self, z: usize, y: usize) -> usize {
        self.rdiv[z * self.n + y]
    }

    /// Right inverse `x \ 1`, used as `x⁻¹` throughout.
    pub fn inverse(&self, x: usize) -> usize {
        self.ldiv(x, 0)
    }

    pub fn left_inverse(&self, x: usize) -> usize {
        self.rdiv(0, x)
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.n)
    }

    /// `x^k` with `x^{k+1} = x·x^k` and `x^{-k-1} = x⁻¹·x^{-k}`.
    pub fn power(&self, x: usize, k: i64) -> usize {
        let base = if k < 0 { self.inverse(x) } else { x };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(base, acc))
    }

    /// Smallest `k ≥ 1` with `x^k = 1` (left powers). Always defined since
    /// the powers are the orbit of `1` under `L(x)`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != 0 {
            p = self.mul(x, p);
            k += 1;
        }
        k
    }

    pub fn square(&self, x: usize) -> usize {
        self.mul(x, x)
    }

    /// The inverse of the squaring map, if squaring is a bijection.
    pub fn square_roots(&self) -> Option<Vec<usize>> {
        let mut roots = vec![usize::MAX; self.n];
        for x in 0..self.n {
            let s = self.square(x);
            if roots[s] != usize::MAX {
                return None;
            }
            roots[s] = x;
        }
        Some(roots)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.n;
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.mul(x, y);
                (0..n).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// True if the multiplication restricted to `set` is associative.
    pub fn is_associative_on(&self, set: &[usize]) -> bool {
        set.iter().all(|&x| {
            set.iter().all(|&y| {
                let xy = self.mul(x, y);
                set.iter().all(|&z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_automorphism(&self, phi: &Permutation) -> bool {
        phi.degree() == self.n
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| phi.apply(self.mul(a, b)) == self.mul(phi.apply(a), phi.apply(b)))
            })
    }
}

/// `L(x): y ↦ x·y`.
pub fn left_translation(l: &FiniteLoop, x: usize) -> Permutation {
    Permutation::from_images((0..l.order()).map(|y| l.mul(x, y)).collect())
        .expect("rows of a loop are permutations")
}

/// `R(x): y ↦ y·x`.
pub fn right_translation(l: &FiniteLoop, x: usize) -> Permutation {
    Permutation::from_images((0..l.order()).map(|y| l.mul(y, x)).collect())
        .expect("columns of a loop are permutations")
}

/// Left Bol check in translation form: `L(x·(y·x)) = L(x)L(y)L(x)`.
pub fn check_left_bol(l: &FiniteLoop) -> bool {
    let n = l.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let w = l.mul(x, l.mul(y, x));
            (0..n).all(|z| l.mul(w, z) == l.mul(x, l.mul(y, l.mul(x, z))))
        })
    })
}

/// The left Bol identity `(x·(y·x))·z = x·(y·(x·z))` scanned over all
/// triples with an explicit counterexample on failure.
pub fn left_bol_counterexample(l: &FiniteLoop) -> Option<(usize, usize, usize)> {
    let n = l.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = l.mul(l.mul(x, l.mul(y, x)), z);
                let rhs = l.mul(x, l.mul(y, l.mul(x, z)));
                if lhs != rhs {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Right Bol identity `((x·y)·z)·y = x·((y·z)·y)`.
pub fn check_right_bol(l: &FiniteLoop) -> bool {
    let n = l.order();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| l.mul(l.mul(l.mul(x, y), z), y) == l.mul(x, l.mul(l.mul(y, z), y))))
    })
}

fn has_automorphic_inverse(l: &FiniteLoop) -> bool {
    let n = l.order();
    (0..n).all(|x| l.inverse(x) == l.left_inverse(x))
        && (0..n).all(|x| (0..n).all(|y| l.mul(l.inverse(x), l.inverse(y)) == l.inverse(l.mul(x, y))))
}

fn has_lip(l: &FiniteLoop) -> bool {
    (0..l.order()).all(|x| left_translation(l, l.inverse(x)) == left_translation(l, x).inverse())
}

fn has_lap(l: &FiniteLoop) -> bool {
    (0..l.order()).all(|x| {
        let lx = left_translation(l, x);
        left_translation(l, l.square(x)) == &lx * &lx
    })
}

fn is_power_associative(l: &FiniteLoop) -> bool {
    (0..l.order()).all(|x| {
        let cyclic = generated_subloop(l, &[x]);
        l.is_associative_on(cyclic.members())
    })
}

fn is_left_power_alternative(l: &FiniteLoop) -> bool {
    (0..l.order()).all(|x| {
        let lx = left_translation(l, x);
        let mut power_perm = Permutation::identity(l.order());
        let mut power = 0;
        for _ in 0..l.element_order(x) {
            if left_translation(l, power) != power_perm {
                return false;
            }
            power = l.mul(x, power);
            power_perm = &lx * &power_perm;
        }
        left_translation(l, l.inverse(x)) == lx.inverse()
    })
}

/// The left inner mappings `L(x·y)⁻¹ L(x) L(y)`, which generate `LMlt₁`.
pub fn left_inner_generators(l: &FiniteLoop) -> Vec<Permutation> {
    let n = l.order();
    let lt: Vec<Permutation> = (0..n).map(|x| left_translation(l, x)).collect();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            out.push(&(&lt[l.mul(x, y)].inverse() * &lt[x]) * &lt[y]);
        }
    }
    out.sort();
    out.dedup();
    out
}

fn has_a_l_property(l: &FiniteLoop) -> bool {
    left_inner_generators(l).iter().all(|phi| l.is_automorphism(phi))
}

/// Flags computed by direct scans of the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub is_loop: bool,
    pub left_bol: bool,
    pub right_bol: bool,
    pub moufang: bool,
    pub automorphic_inverse: bool,
    pub bruck: bool,
    pub lip: bool,
    pub lap: bool,
    pub power_associative: bool,
    pub left_power_alternative: bool,
    pub two_divisible: bool,
    pub is_group: bool,
    pub is_abelian_group: bool,
    pub a_l_property: bool,
}

impl PropertyReport {
    /// Bruck loop that is also 2-divisible.
    pub fn b_loop(&self) -> bool {
        self.bruck && self.two_divisible
    }
}

pub fn check_properties(l: &FiniteLoop) -> PropertyReport {
    let is_loop = validate_table(l.order(), l.table()).is_ok();
    let left_bol = check_left_bol(l);
    let right_bol = check_right_bol(l);
    let automorphic_inverse = has_automorphic_inverse(l);
    let is_group = l.is_associative();
    PropertyReport {
        is_loop,
        left_bol,
        right_bol,
        moufang: left_bol && right_bol,
        automorphic_inverse,
        bruck: left_bol && automorphic_inverse,
        lip: has_lip(l),
        lap: has_lap(l),
        power_associative: is_power_associative(l),
        left_power_alternative: is_left_power_alternative(l),
        two_divisible: l.square_roots().is_some(),
        is_group,
        is_abelian_group: is_group && l.is_commutative(),
        a_l_property: has_a_l_property(l),
    }
}

/// `LMlt(𝓛) = ⟨L(x)⟩`, generated by `L(1), .., L(n-1)` in that order.
pub fn lmlt(l: &FiniteLoop, cap: usize) -> Result<PermGroup> {
    let gens: Vec<Permutation> = if l.order() == 1 {
        vec![Permutation::identity(1)]
    } else {
        (1..l.order()).map(|x| left_translation(l, x)).collect()
    };
    PermGroup::generated(gens, cap)
}

/// `Mlt(𝓛) = ⟨L(x), R(x)⟩`.
pub fn mlt(l: &FiniteLoop, cap: usize) -> Result<PermGroup> {
    let mut gens: Vec<Permutation> = vec![Permutation::identity(l.order())];
    for x in 1..l.order() {
        gens.push(left_translation(l, x));
        gens.push(right_translation(l, x));
    }
    if gens.len() > 1 {
        gens.remove(0);
    }
    PermGroup::generated(gens, cap)
}

/// `LMlt₁(𝓛)`: the stabilizer of the identity in `group = LMlt(𝓛)`.
pub fn lmlt1(group: &PermGroup) -> ElementSet {
    (0..group.order()).filter(|&i| group.element(i).apply(0) == 0).collect()
}

/// Left, middle and right nucleus together with their intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nuclei {
    pub left: Subloop,
    pub middle: Subloop,
    pub right: Subloop,
    pub nucleus: Subloop,
}

/// Nuclei by the defining associativity scans.
pub fn nuclei(l: &FiniteLoop) -> Nuclei {
    let n = l.order();
    let assoc = |x: usize, y: usize, z: usize| l.mul(x, l.mul(y, z)) == l.mul(l.mul(x, y), z);
    let collect = |pred: &dyn Fn(usize) -> bool| -> Subloop {
        Subloop::new_unchecked((0..n).filter(|&a| pred(a)).collect())
    };
    let left = collect(&|a| (0..n).all(|y| (0..n).all(|z| assoc(a, y, z))));
    let middle = collect(&|a| (0..n).all(|x| (0..n).all(|z| assoc(x, a, z))));
    let right = collect(&|a| (0..n).all(|x| (0..n).all(|y| assoc(x, y, a))));
    let nucleus = Subloop::new_unchecked(
        left.members().iter().copied().filter(|&a| middle.contains(a) && right.contains(a)).collect(),
    );
    Nuclei { left, middle, right, nucleus }
}

/// Left and middle nucleus from the translation sets:
/// `L(Nuc_l) = ⋂ₓ L(𝓛)L(x)⁻¹` and `L(Nuc_m) = ⋂ₓ L(x)⁻¹L(𝓛)`.
pub fn nuclei_via_translations(l: &FiniteLoop) -> (Subloop, Subloop) {
    use std::collections::BTreeSet;
    let n = l.order();
    let lt: Vec<Permutation> = (0..n).map(|x| left_translation(l, x)).collect();
    let inv: Vec<Permutation> = lt.iter().map(|p| p.inverse()).collect();
    let mut left: BTreeSet<Permutation> = lt.iter().cloned().collect();
    let mut middle = left.clone();
    for ix in &inv {
        let right_coset: BTreeSet<Permutation> = lt.iter().map(|a| a * ix).collect();
        let left_coset: BTreeSet<Permutation> = lt.iter().map(|a| ix * a).collect();
        left.retain(|p| right_coset.contains(p));
        middle.retain(|p| left_coset.contains(p));
    }
    // Every surviving permutation is some L(a) with a = L(a)(1).
    let pull = |set: BTreeSet<Permutation>| {
        let mut members: Vec<usize> = set.iter().map(|p| p.apply(0)).collect();
        members.sort_unstable();
        Subloop::new_unchecked(members)
    };
    (pull(left), pull(middle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::closure;

    /// A loop of order 5 with an element of order 2, hence not a group.
    pub(crate) fn order5_nonbol() -> FiniteLoop {
        FiniteLoop::from_rows(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap()
    }

    fn s3_loop() -> FiniteLoop {
        let s3 = closure(
            &[
                Permutation::from_cycles(3, &[&[0, 1]]).unwrap(),
                Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap(),
            ],
            10,
        )
        .unwrap();
        FiniteLoop::from_group(&s3)
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(FiniteLoop::from_rows(&[vec![0, 1], vec![1, 1]]), Err(Error::NotALoop(_))));
        assert!(matches!(FiniteLoop::from_rows(&[vec![1, 0], vec![0, 1]]), Err(Error::IdentityNotZero(_))));
        assert!(FiniteLoop::from_rows(&[vec![0]]).is_ok());
    }

    #[test]
    fn translations() {
        let z4 = FiniteLoop::cyclic(4);
        assert!(left_translation(&z4, 0).is_identity());
        assert_eq!(left_translation(&z4, 1), Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap());
    }

    #[test]
    fn bol_checks() {
        assert!(check_left_bol(&s3_loop()));
        assert!(left_bol_counterexample(&s3_loop()).is_none());
        let l = order5_nonbol();
        assert!(!check_left_bol(&l));
        assert!(left_bol_counterexample(&l).is_some());
    }

    #[test]
    fn abelian_group_properties() {
        let r = check_properties(&FiniteLoop::cyclic(5));
        assert!(r.is_loop && r.left_bol && r.right_bol && r.moufang && r.bruck);
        assert!(r.lip && r.lap && r.power_associative && r.left_power_alternative);
        assert!(r.two_divisible && r.is_group && r.is_abelian_group && r.a_l_property);
        let r = check_properties(&s3_loop());
        assert!(r.is_group && !r.is_abelian_group && !r.two_divisible && r.moufang);
        assert!(!r.automorphic_inverse && !r.bruck);
        // Inner mappings of a group are conjugations, so A_l holds.
        assert!(r.a_l_property);
    }

    #[test]
    fn trivial_loop_is_everything() {
        let r = check_properties(&FiniteLoop::cyclic(1));
        assert!(r.is_loop && r.left_bol && r.bruck && r.two_divisible && r.is_abelian_group);
    }

    #[test]
    fn multiplication_groups_of_groups_are_regular() {
        let l = s3_loop();
        let g = lmlt(&l, 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(lmlt1(&g).len(), 1);
        let m = mlt(&l, 100).unwrap();
        assert_eq!(m.order(), 36);
    }

    #[test]
    fn group_nuclei_are_everything() {
        let l = s3_loop();
        let nu = nuclei(&l);
        assert_eq!(nu.nucleus.len(), 6);
        let (left, middle) = nuclei_via_translations(&l);
        assert_eq!(left, nu.left);
        assert_eq!(middle, nu.middle);
        let nu = nuclei(&order5_nonbol());
        let (left, middle) = nuclei_via_translations(&order5_nonbol());
        assert_eq!(left, nu.left);
        assert_eq!(middle, nu.middle);
    }

    #[test]
    fn powers_follow_left_recursion() {
        let z6 = FiniteLoop::cyclic(6);
        assert_eq!(z6.power(2, 2), 4);
        assert_eq!(z6.power(2, -1), 4);
        assert_eq!(z6.element_order(2), 3);
        assert_eq!(z6.element_order(0), 1);
    }
}
