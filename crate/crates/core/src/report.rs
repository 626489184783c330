//! The full pipeline over one design, producing a JSON run report.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{
    classify, verify_theorem_a, verify_theorem_c, ClassLabel, Invariants, TheoremAInput, TheoremAReport, TheoremCReport,
};
use crate::design::{CollinearityIndex, Design, DesignError, DesignStats};
use crate::group::{
    is_2_primitive, is_primitive, is_transitive, three_transposition_report, transitivity_degree,
    ThreeTranspositionReport, DEFAULT_CAP,
};
use crate::groupoid::{
    all_bases, direct_walk, hole_stabilizer, is_automorphism_group, is_group, AutomorphismCheck, BaseSweep, CosetCheck,
    GroupEvidence, GroupoidSet,
};
use crate::moves::{
    check_braid_orders, check_conjugation, check_line_move_identity, check_sympeq, move_summary, LemmaCheck,
    MoveSummary, MoveTable,
};
use crate::perm::{Perm, Point};
use crate::two_graph::{
    triangle_report, two_graph_report, verify_f_lines, DerivedGraph, FLinesReport, TriangleReport, TripleSet,
    TwoGraphReport,
};

pub const SCHEMA: u32 = 1;

/// Largest `n` for which the groupoid is also built by a direct walk.
pub const DIRECT_WALK_MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// Statistics, two-graph and triangle property.
    Check,
    /// Move identities only.
    Lemmas,
    /// Everything.
    Full,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub base: Point,
    pub cap: usize,
    pub all_bases: bool,
    pub timings: bool,
    pub stage: Stage,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            base: 0,
            cap: DEFAULT_CAP,
            all_bases: false,
            timings: false,
            stage: Stage::Full,
        }
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("base point {base} is not a point of a design with n = {n}")]
    BaseOutOfRange { base: Point, n: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct DesignSummary {
    pub name: String,
    pub n: usize,
    pub blocks: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoGraphSection {
    #[serde(flatten)]
    pub report: TwoGraphReport,
    pub triangle: TriangleReport,
    pub f_lines: Option<FLinesReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MovesSection {
    #[serde(flatten)]
    pub summary: MoveSummary,
    pub lemmas: Vec<LemmaCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupoidSection {
    pub base: Point,
    #[serde(serialize_with = "crate::big::ser")]
    pub pi_order: BigUint,
    pub pi_generators: usize,
    pub pi_enumerated: bool,
    #[serde(rename = "L_size", serialize_with = "crate::big::ser")]
    pub l_size: BigUint,
    #[serde(rename = "L_enumerated")]
    pub l_enumerated: bool,
    pub is_group: bool,
    pub group_evidence: GroupEvidence,
    pub is_automorphism_group: AutomorphismCheck,
    pub coset_check: CosetCheck,
    /// Direct walk and coset union agree (small designs only).
    pub direct_walk: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_bases: Option<BaseSweep>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupAnalysisSection {
    /// `|⟨E⟩|`.
    #[serde(serialize_with = "crate::big::ser")]
    pub group_order: BigUint,
    pub transitivity_degree: usize,
    pub primitive: bool,
    pub block: Option<Vec<Point>>,
    pub two_primitive: bool,
    pub pi_transitive: bool,
    pub pi_primitive: bool,
    pub pi_block: Option<Vec<Point>>,
    pub three_transposition: ThreeTranspositionReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationSection {
    #[serde(flatten)]
    pub label: ClassLabel,
    pub theorem_a: TheoremAReport,
    pub theorem_c: TheoremCReport,
}

/// Outcome of one named check. `applicable: false` checks never fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub applicable: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub design: DesignSummary,
    pub stats: DesignStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_graph: Option<TwoGraphSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moves: Option<MovesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub groupoid: Option<GroupoidSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_analysis: Option<GroupAnalysisSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    pub checks: Vec<CheckResult>,
    /// Milliseconds per phase; only with `timings`, since it breaks
    /// byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u128>>,
}

impl RunReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Every applicable check passes.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

struct Clock {
    on: bool,
    start: Instant,
    phases: BTreeMap<String, u128>,
}

impl Clock {
    fn lap(&mut self, name: &str) {
        if self.on {
            self.phases.insert(name.to_string(), self.start.elapsed().as_millis());
            self.start = Instant::now();
        }
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn add(&mut self, name: &str, applicable: bool, pass: bool) {
        self.0.push(CheckResult {
            name: name.to_string(),
            applicable,
            pass,
        });
    }
}

pub fn run(d: &Design, opts: &RunOptions) -> Result<RunReport, RunError> {
    let n = d.n();
    let base = opts.base;
    if base >= n {
        return Err(RunError::BaseOutOfRange { base, n });
    }
    let mut clock = Clock {
        on: opts.timings,
        start: Instant::now(),
        phases: BTreeMap::new(),
    };
    let mut checks = Checks(Vec::new());
    let stats = DesignStats::compute(d);
    clock.lap("stats");
    checks.add("two_design", true, stats.is_2_design);
    checks.add("supersimple", true, stats.is_supersimple);
    let mut report = RunReport {
        schema: SCHEMA,
        design: DesignSummary {
            name: d.name().to_string(),
            n,
            blocks: d.blocks().len(),
        },
        stats: stats.clone(),
        two_graph: None,
        moves: None,
        groupoid: None,
        group_analysis: None,
        classification: None,
        checks: Vec::new(),
        timings: None,
    };
    let idx = match CollinearityIndex::new(d) {
        Ok(idx) => idx,
        Err(DesignError::NotA2Design { .. } | DesignError::NotSupersimple(..)) => {
            report.checks = checks.0;
            report.timings = opts.timings.then_some(clock.phases);
            return Ok(report);
        }
        Err(e) => unreachable!("stats accepted the design: {e}"),
    };
    let lambda = idx.lambda();
    let delta = stats.satisfies_triangle_delta;
    let large = n > 2 * lambda + 2;
    checks.add("triangle_delta", true, delta);

    let tg = two_graph_report(&TripleSet::collinear(&idx));
    let regular = tg.is_regular_two_graph;
    let hypotheses = stats.is_supersimple && delta && regular;
    checks.add("regular_two_graph", true, regular);
    checks.add("n_even", regular, tg.n_even);
    checks.add("n_eq_3mu_minus_2s", regular, tg.identity_n_eq);
    let triangle = triangle_report(&DerivedGraph::derived(&idx, base));
    let f_lines = verify_f_lines(d, base, &triangle).ok();
    checks.add(
        "strong_triangle_property",
        hypotheses && large,
        triangle.has_strong_triangle_property,
    );
    checks.add("f_lines", hypotheses, f_lines.as_ref().is_some_and(|f| f.matches));
    clock.lap("two_graph");

    let t = MoveTable::new(&idx);
    let summary = move_summary(&t);
    checks.add(
        "moves_are_involutions",
        true,
        summary.all_involutions && summary.supports_ok,
    );
    checks.add("distinct_move_count", delta, summary.count_identity);
    let lemmas = if opts.stage == Stage::Check {
        Vec::new()
    } else {
        let lemmas = vec![
            check_line_move_identity(&t, d),
            check_sympeq(&t, &idx),
            check_braid_orders(&t, &idx),
            check_conjugation(&t),
        ];
        for l in &lemmas {
            let applicable = if l.name == "line_move_identity" {
                delta
            } else {
                hypotheses
            };
            checks.add(l.name, applicable, l.holds);
        }
        lemmas
    };
    clock.lap("moves");
    report.two_graph = Some(TwoGraphSection {
        report: tg,
        triangle: triangle.clone(),
        f_lines,
    });
    report.moves = Some(MovesSection { summary, lemmas });

    if opts.stage != Stage::Full {
        report.checks = checks.0;
        report.timings = opts.timings.then_some(clock.phases);
        return Ok(report);
    }

    let pi = hole_stabilizer(&t, base, opts.cap);
    let pi_order = pi.order();
    let pi_enumerated = pi.is_enumerated();
    let pi_generators = pi.generators().to_vec();
    clock.lap("hole_stabilizer");
    let l = GroupoidSet::new(&t, base, pi, opts.cap);
    clock.lap("groupoid");
    let evidence = is_group(&t, &l);
    let automorphisms = is_automorphism_group(d, &t);
    let direct = (n <= DIRECT_WALK_MAX_N).then(|| match (direct_walk(&t, base, opts.cap), l.elements()) {
        (Some(walk), Some(set)) => walk.len() == set.len() && walk.iter().all(|g| set.contains(g)),
        (None, None) => true,
        _ => false,
    });
    let sweep = opts.all_bases.then(|| all_bases(&t));
    clock.lap("is_group");
    checks.add(
        "coset_check",
        true,
        l.coset_check().endpoint_law && l.coset_check().disjoint,
    );
    if let Some(ok) = direct {
        checks.add("direct_walk", true, ok);
    }
    checks.add("is_automorphism_group", hypotheses, automorphisms.is_automorphism_group);
    checks.add("is_group", hypotheses, evidence.is_group);
    checks.add(
        "stabilizer_is_pi",
        evidence.is_group,
        evidence.stabilizer_is_pi == Some(true),
    );
    checks.add(
        "closure_spot_check",
        evidence.is_group,
        evidence.spot_check.as_ref().is_some_and(|s| s.closed),
    );
    if let Some(s) = &sweep {
        checks.add("all_bases_agree", true, s.agree);
    }

    let e = t.distinct();
    let degree = transitivity_degree(e, n);
    let (primitive, block) = match is_primitive(e, n) {
        Ok(p) => (p.primitive, p.block),
        Err(_) => (false, None),
    };
    let two_primitive = is_2_primitive(e, n);
    let rest: Vec<Point> = (0..n).filter(|&x| x != base).collect();
    let pi_action: Vec<Perm> = pi_generators.iter().map(|g| g.restrict(&rest)).collect();
    let pi_transitive = is_transitive(&pi_action, n - 1);
    let (pi_primitive, pi_block) = match is_primitive(&pi_action, n - 1) {
        Ok(p) => (p.primitive, p.block.map(|b| b.into_iter().map(|i| rest[i]).collect())),
        Err(_) => (false, None),
    };
    let three = three_transposition_report(e, Some(&l.size()));
    clock.lap("group_analysis");
    checks.add("three_transposition", hypotheses, three.is_3_transposition());
    checks.add("single_class", hypotheses && large, three.single_class);
    checks.add("two_primitive", hypotheses && large, two_primitive);

    let label = classify(&Invariants {
        n,
        lambda: Some(lambda),
        supersimple: Some(stats.is_supersimple),
        triangle_delta: Some(delta),
        regular_two_graph: Some(regular),
        l_size: Some(l.size()),
        pi_order: Some(pi_order.clone()),
        is_group: Some(evidence.is_group),
        pi_primitive: Some(pi_primitive),
    })
    .expect("all invariants supplied");
    let theorem_a = verify_theorem_a(&TheoremAInput {
        n,
        lambda,
        supersimple: stats.is_supersimple,
        is_group: evidence.is_group,
        group_primitive: primitive,
        regular_two_graph: regular,
        pi_transitive,
        pi_primitive,
    });
    let theorem_c = verify_theorem_c(
        d,
        lambda,
        hypotheses,
        large.then_some(triangle.has_strong_triangle_property),
    );
    clock.lap("classification");
    checks.add("classification_consistent", true, label.is_consistent());
    checks.add("theorem_a", theorem_a.applicable, theorem_a.holds);
    checks.add("theorem_c", theorem_c.applicable, theorem_c.holds);

    report.groupoid = Some(GroupoidSection {
        base,
        pi_order,
        pi_generators: pi_generators.len(),
        pi_enumerated,
        l_size: l.size(),
        l_enumerated: l.elements().is_some(),
        is_group: evidence.is_group,
        group_evidence: evidence.clone(),
        is_automorphism_group: automorphisms,
        coset_check: l.coset_check().clone(),
        direct_walk: direct,
        all_bases: sweep,
    });
    report.group_analysis = Some(GroupAnalysisSection {
        group_order: evidence.group_order,
        transitivity_degree: degree,
        primitive,
        block,
        two_primitive,
        pi_transitive,
        pi_primitive,
        pi_block,
        three_transposition: three,
    });
    report.classification = Some(ClassificationSection {
        label,
        theorem_a,
        theorem_c,
    });
    report.checks = checks.0;
    report.timings = opts.timings.then_some(clock.phases);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Family;
    use crate::design::{boolean_design, orthogonal_design, projective_plane_3, Sign};

    #[test]
    fn orthogonal_plus_2_full_run() {
        let r = run(&orthogonal_design(2, Sign::Plus).unwrap(), &RunOptions::default()).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        let g = r.groupoid.as_ref().unwrap();
        assert_eq!(g.pi_order, BigUint::from(72u32));
        assert_eq!(g.l_size, BigUint::from(720u32));
        assert_eq!(r.classification.as_ref().unwrap().label.family, Family::Sp(2));
        let json = r.to_json();
        assert!(json.contains("\"schema\": 1"));
        assert!(json.contains("\"L_size\": 720"));
        assert!(!json.contains("timings"));
    }

    #[test]
    fn boolean_run_skips_theorem_a() {
        let r = run(&boolean_design(3).unwrap(), &RunOptions::default()).unwrap();
        assert!(r.all_pass(), "{:?}", r.checks);
        let c = r.classification.unwrap();
        assert_eq!(c.label.family, Family::Boolean(3));
        assert!(!c.theorem_a.applicable);
    }

    #[test]
    fn check_stage_flags_projective_plane() {
        let opts = RunOptions {
            stage: Stage::Check,
            ..RunOptions::default()
        };
        let r = run(&projective_plane_3(), &opts).unwrap();
        assert!(r.groupoid.is_none());
        assert!(!r.check("regular_two_graph").unwrap().pass);
        assert!(r.check("supersimple").unwrap().pass);
        assert!(!r.all_pass());
    }

    #[test]
    fn bad_base() {
        assert!(run(
            &boolean_design(2).unwrap(),
            &RunOptions {
                base: 4,
                ..RunOptions::default()
            }
        )
        .is_err());
    }

    #[test]
    fn non_supersimple_design_stops_after_stats() {
        let d = Design::new("x", 5, vec![[0, 1, 2, 3], [0, 1, 2, 4]]).unwrap();
        let r = run(&d, &RunOptions::default()).unwrap();
        assert!(r.two_graph.is_none());
        assert!(!r.all_pass());
    }
}
