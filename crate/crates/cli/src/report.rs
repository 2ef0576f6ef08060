//! The JSON analysis report for a single loop.

use serde::Serialize;

use bolkit_core::bolanalysis::{simple_odd_obstruction, verify_odd_bol_suite, BolAnalysis};
use bolkit_core::loopcore::{
    check_properties, is_normal_subloop, is_simple, is_solvable_loop, lmlt, lmlt1, nuclei,
    nuclei_via_translations,
};
use bolkit_core::{Error, PropertyReport, Verdict};

use crate::catalog::CatalogEntry;
use crate::config::Config;
use crate::error::CliError;

pub const SCHEMA: &str = "bolkit.analysis/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NucleiSizes {
    pub left: usize,
    pub middle: usize,
    pub right: usize,
    pub nucleus: usize,
    pub right_nucleus_normal: bool,
}

/// Present for left Bol loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BolSection {
    pub pmlt_order: usize,
    pub btp_order: usize,
    pub radical_order: usize,
    pub left_nucleus_order: usize,
    pub aschbacher_present: bool,
    /// `|Z(G) ∩ C_G(τ)|`, absent when the radical is nontrivial.
    pub obstruction_order: Option<usize>,
    pub m_order: usize,
    /// `|ker Φ₁|, |ker Φ₂|, |ker Φ₃|`.
    pub projection_kernels: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub id: String,
    pub order: usize,
    pub properties: PropertyReport,
    pub nuclei: NucleiSizes,
    pub lmlt_order: usize,
    pub lmlt1_order: usize,
    pub bol: Option<BolSection>,
    /// Absent when the order exceeds the subloop bound.
    pub simple: Option<bool>,
    pub solvable: Option<bool>,
    pub verdicts: Vec<Verdict>,
}

impl AnalysisReport {
    pub fn findings(&self) -> usize {
        self.verdicts.iter().filter(|v| v.failed()).count()
    }
}

fn bounded(r: Result<bool, Error>) -> Result<Option<bool>, CliError> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(Error::BoundExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Nuclei by definition against the translation-set formulas.
pub fn nuclei_verdict(entry: &CatalogEntry) -> Verdict {
    let l = &entry.loop_;
    let nu = nuclei(l);
    let (left, middle) = nuclei_via_translations(l);
    Verdict::new(
        "nuclei-translation-formulas",
        "L(Nuc_l) = ⋂ L(𝓛)L(x)⁻¹, L(Nuc_m) = ⋂ L(x)⁻¹L(𝓛)",
        left == nu.left && middle == nu.middle,
        format!(
            "|Nuc_l| = {}, |Nuc_m| = {}, via translations {} and {}",
            nu.left.len(),
            nu.middle.len(),
            left.len(),
            middle.len()
        ),
    )
}

/// A theorem violation becomes a failed verdict; other errors propagate.
pub fn verdicts_or_finding(check: &str, r: Result<Vec<Verdict>, Error>) -> Result<Vec<Verdict>, CliError> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::Violation { check: c, detail }) => Ok(vec![Verdict::new(check, &c, false, detail)]),
        Err(e) => Err(e.into()),
    }
}

pub fn analyze(entry: &CatalogEntry, config: &Config) -> Result<AnalysisReport, CliError> {
    let limits = &config.limits;
    let l = &entry.loop_;
    let properties = check_properties(l);
    let nu = nuclei(l);
    let group = lmlt(l, limits.cap)?;
    let mut verdicts = vec![nuclei_verdict(entry)];
    let bol = if properties.left_bol {
        match BolAnalysis::new(l, limits) {
            Ok(a) => {
                verdicts.extend(verdicts_or_finding("bol-analysis", a.verdicts(l, limits))?);
                Some(BolSection {
                    pmlt_order: a.pmlt.order(),
                    btp_order: a.btp.order(),
                    radical_order: a.radical.len(),
                    left_nucleus_order: a.left_nucleus.len(),
                    aschbacher_present: a.aschbacher.is_some(),
                    obstruction_order: a.obstruction.as_ref().map(|o| o.len()),
                    m_order: a.right_nuclear_center.members.len(),
                    projection_kernels: a.projection_kernels,
                })
            }
            Err(e) => {
                verdicts.extend(verdicts_or_finding("bol-analysis", Err(e))?);
                None
            }
        }
    } else {
        None
    };
    if properties.left_bol && l.order() % 2 == 1 {
        verdicts.extend(verdicts_or_finding(
            "simple-obstruction",
            simple_odd_obstruction(l, limits).map(|r| r.verdicts()),
        )?);
        match verify_odd_bol_suite(l, limits) {
            Err(Error::BoundExceeded { .. }) => {}
            r => verdicts.extend(verdicts_or_finding("odd-bol", r)?),
        }
    }
    Ok(AnalysisReport {
        schema: SCHEMA,
        id: entry.id.clone(),
        order: l.order(),
        properties,
        nuclei: NucleiSizes {
            left: nu.left.len(),
            middle: nu.middle.len(),
            right: nu.right.len(),
            nucleus: nu.nucleus.len(),
            right_nucleus_normal: is_normal_subloop(l, &nu.right),
        },
        lmlt_order: group.order(),
        lmlt1_order: lmlt1(&group).len(),
        bol,
        simple: bounded(is_simple(l, limits.subloop_bound))?,
        solvable: bounded(is_solvable_loop(l, limits.subloop_bound))?,
        verdicts,
    })
}
