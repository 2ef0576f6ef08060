//! Theorem-verification suites over catalog targets.
//!
//! A target is a loop (catalog id or Cayley file) or a twisted-subgroup
//! fixture (`<group>/<kind>`). Twisted-level suites run on a loop target
//! through `L(𝓛) ⊆ LMlt(𝓛)`, which is twisted exactly when the loop is Bol.

use rayon::prelude::*;
use serde::Serialize;

use bolkit_core::arith::prime_divisors;
use bolkit_core::bolanalysis::{simple_odd_obstruction, verify_odd_bol_suite, BolAnalysis};
use bolkit_core::loopcore::check_left_bol;
use bolkit_core::transversal::{core_sequence, induced_loop, verify_ts_bol, TransversalSystem};
use bolkit_core::twisted::{
    cauchy_witness, hall_search, is_two_divisible, verify_extension_theorem, verify_lagrange_suite,
    verify_odd_theorem, verify_pi_theorem, verify_rigidity,
};
use bolkit_core::{Error, TwistedSubgroup, Verdict};

use crate::catalog::{self, CatalogEntry, TwistedFixture};
use crate::config::Config;
use crate::error::CliError;
use crate::report::nuclei_verdict;

pub const SUITES: &[&str] = &[
    "lagrange",
    "cauchy",
    "hall",
    "odd",
    "rigidity",
    "extension",
    "transversal",
    "bol",
    "simple-obstruction",
];

pub const SCHEMA: &str = "bolkit.verify/1";

pub enum Target {
    Loop(CatalogEntry),
    Twisted(TwistedFixture),
}

pub fn resolve_target(id: &str, config: &Config) -> Result<Target, CliError> {
    if id.contains('/') && !std::path::Path::new(id).is_file() {
        Ok(Target::Twisted(catalog::twisted_fixture(id, &config.limits)?))
    } else {
        Ok(Target::Loop(catalog::resolve_loop(id, &config.context())?))
    }
}

/// Every catalog loop and twisted fixture.
pub fn default_targets() -> Vec<String> {
    catalog::LOOP_IDS.iter().chain(catalog::TWISTED_IDS).map(|s| s.to_string()).collect()
}

pub fn expand_suite(name: &str) -> Result<Vec<&'static str>, CliError> {
    if name == "all" {
        return Ok(SUITES.to_vec());
    }
    SUITES
        .iter()
        .find(|&&s| s == name)
        .map(|&s| vec![s])
        .ok_or_else(|| CliError::UnknownSuite(name.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetResult {
    pub target: String,
    pub suite: String,
    pub verdicts: Vec<Verdict>,
    /// Operational failure; the verdicts are then incomplete.
    pub error: Option<String>,
}

impl TargetResult {
    pub fn findings(&self) -> usize {
        self.verdicts.iter().filter(|v| v.failed()).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub suite: String,
    pub results: Vec<TargetResult>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub errors: usize,
}

impl VerifyReport {
    pub fn outcome(&self) -> crate::Outcome {
        if self.failed > 0 {
            crate::Outcome::Finding
        } else if self.errors > 0 {
            crate::Outcome::Error
        } else {
            crate::Outcome::Pass
        }
    }
}

fn skip(check: &str, reason: impl Into<String>) -> Vec<Verdict> {
    vec![Verdict::skipped(check, "precondition", reason)]
}

/// Preconditions become skipped verdicts, violations failed ones; anything
/// else is operational.
fn settle(check: &str, r: Result<Vec<Verdict>, Error>) -> Result<Vec<Verdict>, Error> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::Violation { check: c, detail }) => Ok(vec![Verdict::new(check, &c, false, detail)]),
        Err(
            e @ (Error::PreconditionFailed(_)
            | Error::NotTwoDivisible(_)
            | Error::NotGenerating { .. }
            | Error::NotBol
            | Error::NotOdd(_)),
        ) => Ok(skip(check, e.to_string())),
        Err(e) => Err(e),
    }
}

/// Nonempty subsets of the odd primes in `primes`, in lexicographic order.
pub fn odd_prime_sets(primes: &[usize]) -> Vec<Vec<usize>> {
    let odd: Vec<usize> = primes.iter().copied().filter(|&p| p != 2).collect();
    (1..1usize << odd.len())
        .map(|mask| (0..odd.len()).filter(|i| mask & (1 << i) != 0).map(|i| odd[i]).collect())
        .collect()
}

fn cauchy_suite(t: &TwistedSubgroup) -> Result<Vec<Verdict>, Error> {
    if !is_two_divisible(t)?.divisible {
        return Err(Error::PreconditionFailed("twisted subgroup is not 2-divisible".into()));
    }
    Ok(prime_divisors(t.len())
        .into_iter()
        .map(|p| {
            let w = cauchy_witness(t, p);
            Verdict::new(
                "ts-cauchy",
                "2-divisible twisted T: p divides |T| ⇒ T has an element of order p",
                w.is_some(),
                format!("p = {p}, |T| = {}", t.len()),
            )
            .with_witnesses(w.map(|x| vec![x.to_string()]).unwrap_or_default())
        })
        .collect())
}

fn hall_suite(t: &TwistedSubgroup, config: &Config) -> Result<Vec<Verdict>, Error> {
    let mut out = Vec::new();
    for pi in odd_prime_sets(&prime_divisors(t.len())) {
        let h = hall_search(t, &pi, &config.limits)?;
        out.push(
            Verdict::new(
                "ts-hall",
                "2-divisible twisted T: a twisted π-subgroup of order |T|_π exists",
                h.witness().is_some() && h.sizes_agree(),
                format!("π = {pi:?}, |T|_π = {}, {} found", h.target_order, h.found.len()),
            )
            .with_witnesses(h.witness().map(|w| vec![format!("{w:?}")]).unwrap_or_default()),
        );
    }
    Ok(out)
}

fn odd_suite(t: &TwistedSubgroup, config: &Config) -> Result<Vec<Verdict>, Error> {
    let mut out = vec![verify_odd_theorem(t, &config.limits)?];
    let group_order = t.generated_set().len();
    let mut primes = prime_divisors(group_order);
    primes.extend(prime_divisors(t.len()));
    primes.sort_unstable();
    primes.dedup();
    for pi in odd_prime_sets(&primes) {
        out.push(verify_pi_theorem(t, &pi)?);
    }
    Ok(out)
}

fn rigidity_suite(t: &TwistedSubgroup, config: &Config) -> Result<Vec<Verdict>, Error> {
    let r = verify_rigidity(t, &config.limits)?;
    Ok(vec![Verdict::new(
        "rigidity",
        "radical-free generating T with τ: K(τ)² ⊆ B(τ) ⊆ T ⊆ K(τ); 2-divisible ⇒ equal, left transversal to C_G(τ)",
        r.holds(),
        format!(
            "|K| = {}, |B| = {}, |T| = {}, |C_G(τ)| = {}, equalities {:?}, transversal {:?}",
            r.k_order, r.b_order, r.t_order, r.centralizer_order, r.equalities, r.left_transversal
        ),
    )])
}

fn twisted_suite(suite: &str, t: &TwistedSubgroup, config: &Config) -> Result<Vec<Verdict>, Error> {
    let limits = &config.limits;
    settle(
        suite,
        match suite {
            "lagrange" => verify_lagrange_suite(t, limits),
            "cauchy" => cauchy_suite(t),
            "hall" => hall_suite(t, config),
            "odd" => odd_suite(t, config),
            "rigidity" => rigidity_suite(t, config),
            "extension" => verify_extension_theorem(t, limits),
            _ => Ok(skip(suite, "applies to loop targets only")),
        },
    )
}

/// The induced loop on `(LMlt, LMlt₁, L(𝓛))` reproduces the loop, and the
/// core sequence is exact.
fn transversal_suite(entry: &CatalogEntry, config: &Config) -> Result<Vec<Verdict>, Error> {
    let l = &entry.loop_;
    if !check_left_bol(l) {
        return Err(Error::NotBol);
    }
    let sys = TransversalSystem::from_loop(l, &config.limits)?;
    let induced = induced_loop(&sys)?;
    let seq = core_sequence(&sys, &config.limits)?;
    let mut out = vec![
        Verdict::new(
            "transversal-roundtrip",
            "induced loop on (LMlt, LMlt₁, L(𝓛)) ≅ 𝓛 via x ↦ L(x)",
            induced.as_loop.as_ref() == Some(l),
            format!("order {}", induced.order),
        ),
        Verdict::new(
            "core-sequence",
            "1 → core(H) → G → LMlt(T,·) → 1 exact",
            seq.exact(sys.group().order()),
            format!(
                "|kernel| = {}, |core| = {}, |image| = {}, |LMlt| = {}",
                seq.kernel.len(),
                seq.core.len(),
                seq.image_order,
                seq.lmlt_order
            ),
        ),
    ];
    out.extend(verify_ts_bol(&sys)?);
    Ok(out)
}

fn loop_suite(suite: &str, entry: &CatalogEntry, config: &Config) -> Result<Vec<Verdict>, Error> {
    let l = &entry.loop_;
    let limits = &config.limits;
    match suite {
        "transversal" => settle(suite, transversal_suite(entry, config)),
        "bol" => {
            let mut out = vec![nuclei_verdict(entry)];
            out.extend(settle(suite, BolAnalysis::new(l, limits).and_then(|a| a.verdicts(l, limits)))?);
            Ok(out)
        }
        "simple-obstruction" => settle(suite, simple_odd_obstruction(l, limits).map(|r| r.verdicts())),
        _ => {
            if !check_left_bol(l) {
                return Ok(skip(suite, "not a left Bol loop"));
            }
            let fixture = catalog::translation_fixture(entry, limits).map_err(|e| match e {
                CliError::Core(e) => e,
                other => Error::PreconditionFailed(other.to_string()),
            })?;
            let mut out = twisted_suite(suite, &fixture.twisted, config)?;
            if suite == "odd" {
                out.extend(settle(suite, verify_odd_bol_suite(l, limits))?);
            }
            Ok(out)
        }
    }
}

pub fn run_suite(suite: &str, target: &str, config: &Config) -> TargetResult {
    let verdicts = resolve_target(target, config).and_then(|t| {
        Ok(match t {
            Target::Loop(entry) => loop_suite(suite, &entry, config)?,
            Target::Twisted(f) => twisted_suite(suite, &f.twisted, config)?,
        })
    });
    match verdicts {
        Ok(verdicts) => {
            TargetResult { target: target.to_string(), suite: suite.to_string(), verdicts, error: None }
        }
        Err(e) => TargetResult {
            target: target.to_string(),
            suite: suite.to_string(),
            verdicts: Vec::new(),
            error: Some(e.to_string()),
        },
    }
}

/// Runs every (suite, target) pair on a pool of `jobs` workers. Results are
/// ordered by target, then suite, regardless of completion order.
pub fn verify(
    suite: &str,
    targets: &[String],
    config: &Config,
    jobs: usize,
) -> Result<VerifyReport, CliError> {
    let suites = expand_suite(suite)?;
    let pairs: Vec<(&str, &String)> =
        targets.iter().flat_map(|t| suites.iter().map(move |&s| (s, t))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mut results: Vec<TargetResult> =
        pool.install(|| pairs.par_iter().map(|(s, t)| run_suite(s, t, config)).collect());
    results.sort_by(|a, b| {
        (a.target.as_str(), SUITES.iter().position(|&s| s == a.suite))
            .cmp(&(b.target.as_str(), SUITES.iter().position(|&s| s == b.suite)))
    });
    let count = |f: fn(&Verdict) -> bool| results.iter().flat_map(|r| &r.verdicts).filter(|v| f(v)).count();
    Ok(VerifyReport {
        schema: SCHEMA,
        suite: suite.to_string(),
        passed: count(Verdict::passed),
        failed: count(Verdict::failed),
        skipped: count(|v| v.status == bolkit_core::Status::Skipped),
        errors: results.iter().filter(|r| r.error.is_some()).count(),
        results,
    })
}
