use std::collections::{BTreeSet, HashMap, VecDeque};

use super::FiniteLoop;
use crate::error::{Error, Result};

/// A subloop as the sorted list of its members. Always contains `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subloop {
    members: Vec<usize>,
}

impl Subloop {
    /// Wraps a sorted member list without checking closure.
    pub(crate) fn new_unchecked(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Subloop { members }
    }

    /// Checks that `members` contains the identity and is closed under
    /// multiplication and both divisions.
    pub fn of(l: &FiniteLoop, members: Vec<usize>) -> Result<Self> {
        let s = Self::new_unchecked(members);
        if s.members.first() != Some(&0) {
            return Err(Error::PreconditionFailed("subloop must contain 0".into()));
        }
        if let Some(&bad) = s.members.iter().find(|&&x| x >= l.order()) {
            return Err(Error::NotAMember(bad.to_string()));
        }
        for &x in &s.members {
            for &y in &s.members {
                if !s.contains(l.mul(x, y)) || !s.contains(l.ldiv(x, y)) || !s.contains(l.rdiv(x, y)) {
                    return Err(Error::PreconditionFailed(format!("set is not closed at ({x}, {y})")));
                }
            }
        }
        Ok(s)
    }

    pub fn whole(l: &FiniteLoop) -> Self {
        Subloop { members: (0..l.order()).collect() }
    }

    pub fn trivial() -> Self {
        Subloop { members: vec![0] }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subloop) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` in the member list, which is its label in
    /// [`Subloop::to_loop`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// The subloop as a loop in its own right, members relabelled by
    /// position.
    pub fn to_loop(&self, parent: &FiniteLoop) -> FiniteLoop {
        let k = self.len();
        let table = (0..k * k)
            .map(|i| {
                let z = parent.mul(self.members[i / k], self.members[i % k]);
                self.position(z).expect("subloops are closed")
            })
            .collect();
        FiniteLoop::from_table(k, table).expect("subloops are loops")
    }
}

/// The smallest subloop containing `seeds`.
pub fn generated_subloop(l: &FiniteLoop, seeds: &[usize]) -> Subloop {
    let mut inside = vec![false; l.order()];
    let mut members = vec![0];
    inside[0] = true;
    for &s in seeds {
        if !std::mem::replace(&mut inside[s], true) {
            members.push(s);
        }
    }
    let mut done = 0;
    // Pairs (i, j) with both indices below `done` have been processed.
    while done < members.len() {
        let top = members.len();
        for i in 0..top {
            for j in 0..top {
                if i < done && j < done {
                    continue;
                }
                let (x, y) = (members[i], members[j]);
                for z in [l.mul(x, y), l.ldiv(x, y), l.rdiv(x, y)] {
                    if !std::mem::replace(&mut inside[z], true) {
                        members.push(z);
                    }
                }
            }
        }
        done = top;
    }
    Subloop::new_unchecked(members)
}

/// Every subloop, sorted by order and then by members. Refuses loops of
/// order above `bound`.
pub fn all_subloops(l: &FiniteLoop, bound: usize) -> Result<Vec<Subloop>> {
    if l.order() > bound {
        return Err(Error::BoundExceeded { order: l.order(), bound });
    }
    let mut found: BTreeSet<Subloop> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for x in 0..l.order() {
        let s = generated_subloop(l, &[x]);
        if found.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        let snapshot: Vec<Subloop> = found.iter().cloned().collect();
        for t in snapshot {
            if s.is_subset_of(&t) || t.is_subset_of(&s) {
                continue;
            }
            let mut seeds = s.members.clone();
            seeds.extend_from_slice(&t.members);
            let join = generated_subloop(l, &seeds);
            if found.insert(join.clone()) {
                queue.push_back(join);
            }
        }
    }
    let mut out: Vec<Subloop> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(out)
}

/// `x(Ky) = K(xy) = (xK)y` for all `x, y` of the loop.
pub fn is_normal_subloop(l: &FiniteLoop, k: &Subloop) -> bool {
    let n = l.order();
    let mut a = Vec::with_capacity(k.len());
    let mut b = Vec::with_capacity(k.len());
    let mut c = Vec::with_capacity(k.len());
    for x in 0..n {
        for y in 0..n {
            let xy = l.mul(x, y);
            a.clear();
            b.clear();
            c.clear();
            for &m in k.members() {
                a.push(l.mul(x, l.mul(m, y)));
                b.push(l.mul(m, xy));
                c.push(l.mul(l.mul(x, m), y));
            }
            a.sort_unstable();
            b.sort_unstable();
            c.sort_unstable();
            if a != b || a != c {
                return false;
            }
        }
    }
    true
}

/// Coset labels for `x·K`, numbered by least representative, and the
/// quotient loop. Fails with `NotNormal` when `K` is not normal.
pub fn quotient_loop(l: &FiniteLoop, k: &Subloop) -> Result<FiniteLoop> {
    quotient_with_classes(l, k).map(|(q, _)| q)
}

pub(crate) fn quotient_with_classes(l: &FiniteLoop, k: &Subloop) -> Result<(FiniteLoop, Vec<usize>)> {
    if !is_normal_subloop(l, k) {
        return Err(Error::NotNormal);
    }
    let n = l.order();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        for &m in k.members() {
            class[l.mul(x, m)] = reps.len();
        }
        reps.push(x);
    }
    let q = reps.len();
    let table = (0..q * q).map(|i| class[l.mul(reps[i / q], reps[i % q])]).collect();
    let quotient = FiniteLoop::from_table(q, table).map_err(|_| Error::NotNormal)?;
    Ok((quotient, class))
}

/// No normal subloops besides `1` and the loop itself; order 1 is not simple.
pub fn is_simple(l: &FiniteLoop, bound: usize) -> Result<bool> {
    if l.order() == 1 {
        return Ok(false);
    }
    let subs = all_subloops(l, bound)?;
    Ok(subs.iter().filter(|s| s.len() > 1 && s.len() < l.order()).all(|s| !is_normal_subloop(l, s)))
}

/// Solvable means a chain `1 = K₀ ⊴ K₁ ⊴ … ⊴ K_m = 𝓛` with every `K_{i+1}/K_i`
/// an abelian group.
pub fn is_solvable_loop(l: &FiniteLoop, bound: usize) -> Result<bool> {
    let subs = all_subloops(l, bound)?;
    let mut memo: HashMap<Subloop, bool> = HashMap::new();
    Ok(solvable_from(l, &Subloop::whole(l), &subs, &mut memo))
}

fn solvable_from(l: &FiniteLoop, top: &Subloop, subs: &[Subloop], memo: &mut HashMap<Subloop, bool>) -> bool {
    if top.len() == 1 {
        return true;
    }
    if let Some(&v) = memo.get(top) {
        return v;
    }
    let top_loop = top.to_loop(l);
    let mut result = false;
    for s in subs {
        if s.len() >= top.len() || !s.is_subset_of(top) {
            continue;
        }
        let inner =
            Subloop::new_unchecked(s.members().iter().map(|&x| top.position(x).expect("subset")).collect());
        let Ok(quotient) = quotient_loop(&top_loop, &inner) else {
            continue;
        };
        if !(quotient.is_associative() && quotient.is_commutative()) {
            continue;
        }
        if solvable_from(l, s, subs, memo) {
            result = true;
            break;
        }
    }
    memo.insert(top.clone(), result);
    result
}
