//! Named groups, loops and twisted-subgroup fixtures.
//!
//! Group ids are parsed: `Z<n>`, `D<n>` (symmetries of the `n`-gon), `S3`,
//! `Q8`, `Heis27`, `Z<p>:Z<q>`, `F<p>^2:Z3` and direct products `AxB`.
//! Loop ids are the fixed entries of [`LOOP_IDS`] plus any group id.

use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use bolkit_core::loopcore::left_translation;
use bolkit_core::transversal::{induced_loop, TransversalSystem};
use bolkit_core::twisted::{b_of, bloop_of, k_of};
use bolkit_core::{Automorphism, ElementSet, FiniteLoop, Limits, PermGroup, Permutation, TwistedSubgroup};

use crate::error::CliError;
use crate::search::{exhaustive_bol, SearchOutcome};

/// How `τ` is given for `B(τ)` and `K(τ)` constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TauSpec {
    /// `g ↦ g⁻¹`; abelian groups only.
    Inversion,
    /// `g ↦ σgσ⁻¹` for a permutation `σ` of the points, given by images.
    Conjugation { images: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Cyclic {
        n: usize,
    },
    Dihedral {
        n: usize,
    },
    Quaternion,
    Heisenberg {
        p: usize,
    },
    /// `Z_p ⋊ Z_q`, the generator of `Z_q` acting by `x ↦ action·x`.
    Semidirect {
        p: usize,
        q: usize,
        action: usize,
    },
    /// `F_p² ⋊ Z_3` with `c(x, y) = (-y, x - y)`.
    PlaneSemidirect {
        p: usize,
    },
    DirectProduct {
        left: String,
        right: String,
    },
    /// The loop of a catalog group.
    Group {
        group: String,
    },
    /// `B(τ)(1/2)`.
    BTau {
        group: String,
        tau: TauSpec,
    },
    /// `K(τ)(1/2)`.
    KTau {
        group: String,
        tau: TauSpec,
    },
    /// The loop induced on `B(τ)` as a transversal of `⟨h⟩`.
    Induced {
        group: String,
        tau: TauSpec,
        subgroup_generator: Vec<usize>,
    },
    /// The `index`-th (from 1) nonassociative class of the exhaustive search.
    ExhaustiveBol {
        order: usize,
        index: usize,
    },
    Table {
        rows: Vec<Vec<usize>>,
    },
    File {
        path: String,
    },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub construction: Construction,
    pub loop_: FiniteLoop,
}

/// Fixed loop entries, in listing order.
pub const LOOP_IDS: &[&str] = &[
    "Z1", "Z3", "Z4", "Z5", "Z7", "Z9", "Z15", "Z2xZ2", "Z3xZ3", "Z3xZ9", "S3", "D4", "Q8", "Z7:Z3",
    "Heis27", "nonbol5", "b5", "b15", "b21", "bol15", "bol8-1", "bol8-2", "bol8-3", "bol8-4", "bol8-5",
    "bol8-6",
];

/// Twisted-subgroup fixture ids, in listing order.
pub const TWISTED_IDS: &[&str] = &[
    "Z5/whole",
    "Z9/whole",
    "Heis27/whole",
    "Z7:Z3/whole",
    "S3/involutions",
    "S3/K(01)",
    "Z7:Z3/B(neg)",
    "F5^2:Z3/B(swap)",
    "F5^2:Z3/K(swap)",
    "F7^2:Z3/B(swap)",
];

fn spec(msg: impl Into<String>) -> CliError {
    CliError::Spec(msg.into())
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images).expect("catalog permutations are bijections")
}

fn parse_num(s: &str, id: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| CliError::UnknownId(id.to_string()))
}

/// Parses a group id into its construction.
pub fn group_construction(id: &str) -> Result<Construction, CliError> {
    if let Some((left, right)) = id.split_once('x') {
        return Ok(Construction::DirectProduct { left: left.to_string(), right: right.to_string() });
    }
    match id {
        "S3" => return Ok(Construction::Dihedral { n: 3 }),
        "Q8" => return Ok(Construction::Quaternion),
        "Heis27" => return Ok(Construction::Heisenberg { p: 3 }),
        _ => {}
    }
    if let Some(rest) = id.strip_prefix('F') {
        let (p, tail) = rest.split_once("^2:").ok_or_else(|| CliError::UnknownId(id.into()))?;
        if tail != "Z3" {
            return Err(CliError::UnknownId(id.into()));
        }
        return Ok(Construction::PlaneSemidirect { p: parse_num(p, id)? });
    }
    if let Some((left, right)) = id.split_once(':') {
        let p = parse_num(left.strip_prefix('Z').ok_or_else(|| CliError::UnknownId(id.into()))?, id)?;
        let q = parse_num(right.strip_prefix('Z').ok_or_else(|| CliError::UnknownId(id.into()))?, id)?;
        let action = (2..p.max(2))
            .find(|&r| multiplicative_order(r, p) == Some(q))
            .ok_or_else(|| spec(format!("no element of order {q} in the units mod {p}")))?;
        return Ok(Construction::Semidirect { p, q, action });
    }
    if let Some(n) = id.strip_prefix('Z') {
        return Ok(Construction::Cyclic { n: parse_num(n, id)? });
    }
    if let Some(n) = id.strip_prefix('D') {
        return Ok(Construction::Dihedral { n: parse_num(n, id)? });
    }
    Err(CliError::UnknownId(id.to_string()))
}

fn multiplicative_order(r: usize, p: usize) -> Option<usize> {
    if p < 2 || bolkit_core::arith::gcd(r, p) != 1 {
        return None;
    }
    let mut x = r % p;
    for k in 1..=p {
        if x == 1 {
            return Some(k);
        }
        x = x * r % p;
    }
    None
}

fn cyclic_generator(n: usize) -> Permutation {
    perm((0..n).map(|i| (i + 1) % n).collect())
}

/// Generators of a group construction, as permutations of a common degree.
pub fn group_generators(c: &Construction) -> Result<Vec<Permutation>, CliError> {
    Ok(match c {
        Construction::Cyclic { n } => {
            if *n == 0 {
                return Err(spec("Z0 is not a group"));
            }
            vec![cyclic_generator(*n)]
        }
        Construction::Dihedral { n } => {
            if *n < 3 {
                return Err(spec("dihedral groups need n ≥ 3"));
            }
            vec![cyclic_generator(*n), perm((0..*n).map(|i| (n - i) % n).collect())]
        }
        Construction::Quaternion => vec![
            Permutation::from_cycles(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]])?,
            Permutation::from_cycles(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]])?,
        ],
        Construction::Heisenberg { p } => {
            let p = *p;
            let pt = |x: usize, y: usize| (x % p) * p + (y % p);
            let n = p * p;
            vec![
                perm((0..n).map(|i| pt(i / p + 1, i % p)).collect()),
                perm((0..n).map(|i| pt(i / p, i % p + 1)).collect()),
                perm((0..n).map(|i| pt(i / p + i % p, i % p)).collect()),
            ]
        }
        Construction::Semidirect { p, q, action } => {
            if multiplicative_order(*action, *p) != Some(*q) {
                return Err(spec(format!("{action} does not have order {q} modulo {p}")));
            }
            vec![cyclic_generator(*p), perm((0..*p).map(|x| x * action % p).collect())]
        }
        Construction::PlaneSemidirect { p } => {
            let p = *p;
            if p < 2 {
                return Err(spec("plane semidirect products need p ≥ 2"));
            }
            let pt = |x: usize, y: usize| (x % p) * p + (y % p);
            let n = p * p;
            vec![
                perm((0..n).map(|i| pt(i / p + 1, i % p)).collect()),
                perm((0..n).map(|i| pt(i / p, i % p + 1)).collect()),
                perm((0..n).map(|i| pt(p - i % p, i / p + p - i % p)).collect()),
            ]
        }
        Construction::DirectProduct { left, right } => {
            let a = group_generators(&group_construction(left)?)?;
            let b = group_generators(&group_construction(right)?)?;
            let (da, db) = (a[0].degree(), b[0].degree());
            let (ia, ib) = (Permutation::identity(da), Permutation::identity(db));
            a.iter()
                .map(|g| Permutation::direct_sum(&[g, &ib]))
                .chain(b.iter().map(|h| Permutation::direct_sum(&[&ia, h])))
                .collect()
        }
        other => return Err(spec(format!("{other:?} does not describe a group"))),
    })
}

pub fn group(id: &str, limits: &Limits) -> Result<Arc<PermGroup>, CliError> {
    let gens = group_generators(&group_construction(id)?)?;
    Ok(Arc::new(PermGroup::generated(gens, limits.cap)?))
}

fn tau_of(group: &Arc<PermGroup>, tau: &TauSpec) -> Result<Automorphism, CliError> {
    Ok(match tau {
        TauSpec::Inversion => Automorphism::inversion(group.clone())?,
        TauSpec::Conjugation { images } => {
            Automorphism::conjugation_by(group.clone(), &Permutation::from_images(images.clone())?)?
        }
    })
}

/// The coordinate swap on `F_p²`.
fn plane_swap(p: usize) -> TauSpec {
    TauSpec::Conjugation { images: (0..p * p).map(|i| (i % p) * p + i / p).collect() }
}

fn nonbol5_rows() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ]
}

/// Construction of a fixed loop id, or of a group id.
pub fn loop_construction(id: &str) -> Result<Construction, CliError> {
    Ok(match id {
        "nonbol5" => Construction::Table { rows: nonbol5_rows() },
        "b5" => Construction::BTau { group: "Z5".into(), tau: TauSpec::Inversion },
        "b15" => Construction::BTau { group: "F5^2:Z3".into(), tau: plane_swap(5) },
        "b21" => Construction::BTau { group: "F7^2:Z3".into(), tau: plane_swap(7) },
        "bol15" => Construction::Induced {
            group: "F5^2:Z3".into(),
            tau: plane_swap(5),
            subgroup_generator: (0..25).map(|i| ((i / 5 + 1) % 5) * 5 + i % 5).collect(),
        },
        _ => {
            if let Some(k) = id.strip_prefix("bol8-") {
                Construction::ExhaustiveBol { order: 8, index: parse_num(k, id)? }
            } else {
                group_construction(id)?;
                Construction::Group { group: id.to_string() }
            }
        }
    })
}

static SEARCH_CACHE: Mutex<Vec<SearchOutcome>> = Mutex::new(Vec::new());

/// Exhaustive search results, memoized per order for the process.
pub fn search_outcome(order: usize, timeout_secs: Option<u64>) -> Result<SearchOutcome, CliError> {
    let mut cache = SEARCH_CACHE.lock().expect("search cache");
    if let Some(hit) = cache.iter().find(|o| o.order == order) {
        return Ok(hit.clone());
    }
    let outcome = exhaustive_bol(order, timeout_secs)?;
    cache.push(outcome.clone());
    Ok(outcome)
}

/// Runtime settings that constructions need.
#[derive(Clone, Copy, Debug)]
pub struct BuildContext {
    pub limits: Limits,
    pub timeout_secs: Option<u64>,
}

impl Default for BuildContext {
    fn default() -> Self {
        BuildContext { limits: Limits::default(), timeout_secs: Some(600) }
    }
}

pub fn build_loop(c: &Construction, ctx: &BuildContext) -> Result<FiniteLoop, CliError> {
    let limits = &ctx.limits;
    Ok(match c {
        Construction::Group { group: id } => FiniteLoop::from_group(&*group(id, limits)?),
        Construction::BTau { group: id, tau } => {
            let g = group(id, limits)?;
            bloop_of(&b_of(&tau_of(&g, tau)?)?)?.bloop
        }
        Construction::KTau { group: id, tau } => {
            let g = group(id, limits)?;
            bloop_of(&k_of(&tau_of(&g, tau)?)?)?.bloop
        }
        Construction::Induced { group: id, tau, subgroup_generator } => {
            let g = group(id, limits)?;
            let b = b_of(&tau_of(&g, tau)?)?;
            let h = g
                .index_of(&Permutation::from_images(subgroup_generator.clone())?)
                .ok_or_else(|| spec("subgroup generator is not in the group"))?;
            let h = g.subgroup_generated(&[h].into_iter().collect());
            let sys = TransversalSystem::new(g, h, b.members().to_vec())?;
            induced_loop(&sys)?
                .as_loop
                .ok_or_else(|| spec("B(τ) is not a transversal to every conjugate of the subgroup"))?
        }
        Construction::ExhaustiveBol { order, index } => {
            let outcome = search_outcome(*order, ctx.timeout_secs)?;
            let nonassoc: Vec<&FiniteLoop> = outcome.nonassociative().collect();
            (*index).checked_sub(1).and_then(|i| nonassoc.get(i)).map(|l| (*l).clone()).ok_or_else(|| {
                spec(format!(
                    "order {order} has {} nonassociative classes, index {index} is out of range",
                    nonassoc.len()
                ))
            })?
        }
        Construction::Table { rows } => FiniteLoop::from_rows(rows)?,
        Construction::File { path } => crate::io::load_cayley(path)?,
        group_kind => {
            let gens = group_generators(group_kind)?;
            FiniteLoop::from_group(&PermGroup::generated(gens, limits.cap)?)
        }
    })
}

pub fn entry(id: &str, ctx: &BuildContext) -> Result<CatalogEntry, CliError> {
    let construction = loop_construction(id)?;
    let loop_ = build_loop(&construction, ctx)?;
    Ok(CatalogEntry { id: id.to_string(), construction, loop_ })
}

/// Every fixed loop entry.
pub fn loops(ctx: &BuildContext) -> Result<Vec<CatalogEntry>, CliError> {
    LOOP_IDS.iter().map(|id| entry(id, ctx)).collect()
}

/// A loop given either as a catalog id or as a path to a Cayley file.
pub fn resolve_loop(target: &str, ctx: &BuildContext) -> Result<CatalogEntry, CliError> {
    if std::path::Path::new(target).is_file() {
        let construction = Construction::File { path: target.to_string() };
        let loop_ = build_loop(&construction, ctx)?;
        return Ok(CatalogEntry { id: target.to_string(), construction, loop_ });
    }
    entry(target, ctx)
}

#[derive(Clone, Debug)]
pub struct TwistedFixture {
    pub id: String,
    pub twisted: TwistedSubgroup,
}

fn involution_set(g: &PermGroup) -> ElementSet {
    (0..g.order()).filter(|&i| g.element_order(i) <= 2).collect()
}

pub fn twisted_fixture(id: &str, limits: &Limits) -> Result<TwistedFixture, CliError> {
    let (group_id, kind) = id.split_once('/').ok_or_else(|| CliError::UnknownId(id.into()))?;
    let g = group(group_id, limits)?;
    let twisted = match kind {
        "whole" => TwistedSubgroup::whole(g),
        "involutions" => TwistedSubgroup::new(g.clone(), involution_set(&g))?,
        "K(01)" => k_of(&tau_of(&g, &TauSpec::Conjugation { images: vec![1, 0, 2] })?)?,
        "B(neg)" => {
            let p = g.degree();
            b_of(&tau_of(&g, &TauSpec::Conjugation { images: (0..p).map(|x| (p - x) % p).collect() })?)?
        }
        "B(swap)" | "K(swap)" => {
            let p = (1..=g.degree()).find(|p| p * p == g.degree()).ok_or_else(|| spec("swap needs F_p²"))?;
            let tau = tau_of(&g, &plane_swap(p))?;
            if kind == "B(swap)" {
                b_of(&tau)?
            } else {
                k_of(&tau)?
            }
        }
        _ => return Err(CliError::UnknownId(id.into())),
    };
    Ok(TwistedFixture { id: id.to_string(), twisted })
}

pub fn twisted_fixtures(limits: &Limits) -> Result<Vec<TwistedFixture>, CliError> {
    TWISTED_IDS.iter().map(|id| twisted_fixture(id, limits)).collect()
}

/// `L(𝓛)` inside `LMlt(𝓛)`; the loop must be Bol.
pub fn translation_fixture(entry: &CatalogEntry, limits: &Limits) -> Result<TwistedFixture, CliError> {
    let l = &entry.loop_;
    let g = Arc::new(bolkit_core::loopcore::lmlt(l, limits.cap)?);
    let perms: Vec<Permutation> = (0..l.order()).map(|x| left_translation(l, x)).collect();
    Ok(TwistedFixture {
        id: format!("L({})", entry.id),
        twisted: TwistedSubgroup::from_permutations(g, &perms)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use bolkit_core::loopcore::check_properties;

    #[test]
    fn group_ids() {
        let limits = Limits::default();
        for (id, order) in [
            ("Z5", 5),
            ("S3", 6),
            ("D4", 8),
            ("Q8", 8),
            ("Heis27", 27),
            ("Z7:Z3", 21),
            ("Z13:Z3", 39),
            ("F5^2:Z3", 75),
            ("Z3xZ9", 27),
            ("Z2xZ2xZ2", 8),
        ] {
            assert_eq!(group(id, &limits).unwrap().order(), order, "{id}");
        }
        assert!(matches!(group("Y4", &limits), Err(CliError::UnknownId(_))));
        assert!(group("Z7:Z4", &limits).is_err());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q8 = group("Q8", &Limits::default()).unwrap();
        assert!(!q8.is_abelian());
        assert_eq!((0..8).filter(|&i| q8.element_order(i) == 2).count(), 1);
    }

    #[test]
    fn b_tau_of_odd_abelian_group_is_the_group() {
        let ctx = BuildContext::default();
        assert_eq!(entry("b5", &ctx).unwrap().loop_, entry("Z5", &ctx).unwrap().loop_);
    }

    #[test]
    fn fixed_entries_have_expected_shape() {
        let ctx = BuildContext::default();
        let b15 = check_properties(&entry("b15", &ctx).unwrap().loop_);
        assert!(b15.bruck && !b15.is_group);
        let bol15 = check_properties(&entry("bol15", &ctx).unwrap().loop_);
        assert!(bol15.left_bol && !bol15.bruck);
        assert!(!check_properties(&entry("nonbol5", &ctx).unwrap().loop_).left_bol);
        assert!(entry("bol8-7", &ctx).is_err());
    }

    #[test]
    fn construction_serializes_tagged() {
        let json = serde_json::to_string(&loop_construction("b5").unwrap()).unwrap();
        assert_eq!(json, r#"{"kind":"b_tau","group":"Z5","tau":{"kind":"inversion"}}"#);
    }
}
