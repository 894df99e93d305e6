//! Cross-representation consistency checks for one realization.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::dsf::{check_relation, dsf, dsf_transfer};
use crate::error::{Error, Result};
use crate::polyrat::RationalMatrix;
use crate::realization::{
    descriptor_transfer_function, minimize_intricacy, output_normal_form, transfer_function, GeneralizedRealization,
};
use crate::sparsity::sparsity;
use crate::structure::{comp_structure, lft_transfer, subsystem_structure, to_lft, ComponentKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub verdict: Verdict,
    /// Nonzero residual entries, an error message, or why the check was skipped.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub p: usize,
    pub blocks: usize,
    pub p1: Option<usize>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<&'static str, f64>>,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict != Verdict::Fail)
    }
}

fn residual(diff: &RationalMatrix) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..diff.rows() {
        for j in 0..diff.cols() {
            if !diff[(i, j)].is_zero() {
                out.push(format!("({}, {}): {}", i + 1, j + 1, diff[(i, j)]));
            }
        }
    }
    out
}

fn compare(name: &'static str, got: Result<RationalMatrix>, want: &RationalMatrix) -> Check {
    match got.and_then(|g| g.sub(want)) {
        Ok(diff) if diff.is_zero() => Check { name, verdict: Verdict::Pass, detail: vec![] },
        Ok(diff) => Check { name, verdict: Verdict::Fail, detail: residual(&diff) },
        Err(e) => Check { name, verdict: Verdict::Fail, detail: vec![e.to_string()] },
    }
}

fn flag(name: &'static str, ok: bool, why: impl FnOnce() -> Vec<String>) -> Check {
    if ok {
        Check { name, verdict: Verdict::Pass, detail: vec![] }
    } else {
        Check { name, verdict: Verdict::Fail, detail: why() }
    }
}

fn skipped(name: &'static str, why: String) -> Check {
    Check { name, verdict: Verdict::Skipped, detail: vec![why] }
}

struct Clock {
    last: Instant,
    laps: BTreeMap<&'static str, f64>,
}

impl Clock {
    fn lap(&mut self, what: &'static str) {
        let now = Instant::now();
        self.laps.insert(what, (now - self.last).as_secs_f64() * 1e3);
        self.last = now;
    }
}

/// Runs every route to the transfer function and the structural relations
/// between them. Errors only when the realization itself is unusable.
pub fn analyze(g: &GeneralizedRealization, timing: bool) -> Result<AnalysisReport> {
    let mut clock = Clock { last: Instant::now(), laps: BTreeMap::new() };
    let mut checks = Vec::new();

    let minimal = minimize_intricacy(g)?;
    let tf = transfer_function(&minimal);
    clock.lap("state_space");
    checks.push(compare("descriptor route equals minimal realization", descriptor_transfer_function(g), &tf));
    clock.lap("descriptor");

    let c = comp_structure(g)?;
    let ss = subsystem_structure(&c);
    let admissible =
        c.edges().iter().filter(|e| ss.component_of(e.from) != ss.component_of(e.to)).all(|e| c.is_manifest(e.var));
    checks.push(flag("partition is admissible", admissible, Vec::new));
    let blocks = ss.components().iter().filter(|k| k.kind == ComponentKind::Block).count();
    let ss = ss.with_transfer_functions(&c, g);
    let lft = ss.as_ref().map_err(Clone::clone).and_then(to_lft);
    checks.push(compare("subsystem route equals state space", lft.clone().and_then(|f| lft_transfer(&f)), &tf));
    clock.lap("subsystem");

    let d = output_normal_form(&minimal).and_then(|nf| dsf(&nf));
    let p1 = d.as_ref().ok().map(|d| d.p1());
    match &d {
        Ok(d) => {
            checks.push(compare("signal route equals state space", dsf_transfer(d), &tf));
            let bad: Vec<String> = (0..d.p1())
                .flat_map(|i| (0..d.p1()).map(move |j| (i, j)))
                .filter(|&(i, j)| if i == j { !d.q[(i, j)].is_zero() } else { !d.q[(i, j)].is_strictly_proper() })
                .map(|(i, j)| format!("Q({}, {}) = {}", i + 1, j + 1, d.q[(i, j)]))
                .collect();
            checks.push(flag("Q has zero diagonal and strictly proper entries", bad.is_empty(), || bad));
        }
        Err(Error::NoManifestOutputs) => {
            checks.push(skipped("signal route equals state space", Error::NoManifestOutputs.to_string()));
        }
        Err(e) => checks.push(Check {
            name: "signal route equals state space",
            verdict: Verdict::Fail,
            detail: vec![e.to_string()],
        }),
    }
    clock.lap("signal");

    let pattern = sparsity(&tf).pattern();
    let same_pattern = [lft.clone().and_then(|f| lft_transfer(&f)), d.clone().and_then(|d| dsf_transfer(&d))]
        .into_iter()
        .filter_map(|r| r.ok())
        .all(|g| sparsity(&g).pattern() == pattern);
    checks.push(flag("sparsity agrees across routes", same_pattern, Vec::new));

    let relation = "subsystem and signal structures are related";
    match (&ss, &lft, &d) {
        (Ok(ss), Ok(lft), Ok(d)) => match check_relation(lft, d, &ss.output_assignment(&c)) {
            Ok(r) if r.holds => checks.push(Check { name: relation, verdict: Verdict::Pass, detail: vec![] }),
            Ok(r) => checks.push(Check { name: relation, verdict: Verdict::Fail, detail: residual(&r.residual) }),
            Err(Error::Invalid(why)) => checks.push(skipped(relation, why)),
            Err(e) => checks.push(Check { name: relation, verdict: Verdict::Fail, detail: vec![e.to_string()] }),
        },
        _ => checks.push(skipped(relation, "an upstream route failed".into())),
    }
    clock.lap("relation");

    Ok(AnalysisReport {
        n: g.n(),
        l: g.l(),
        m: g.m(),
        p: g.p(),
        blocks,
        p1,
        checks,
        timing_ms: timing.then_some(clock.laps),
    })
}
