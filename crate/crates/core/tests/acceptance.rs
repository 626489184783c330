//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use conway_groupoids::design::{
    boolean_design, orthogonal_design, projective_plane_3, reconstruct_boolean, symplectic_design, validate,
    CollinearityIndex, Sign,
};
use conway_groupoids::group::{GroupSet, StabChain, DEFAULT_CAP};
use conway_groupoids::groupoid::{all_bases, hole_stabilizer, hole_stabilizer_generators, GroupoidSet};
use conway_groupoids::moves::MoveTable;
use conway_groupoids::report::{run, RunOptions, RunReport, Stage};
use conway_groupoids::two_graph::{triangle_report, verify_f_lines, DerivedGraph};
use conway_groupoids::Design;

/// Collects failures for one criterion.
struct Criterion {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new() -> Criterion {
        Criterion {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let took = start.elapsed();
        self.note(format!("{:.2}s", took.as_secs_f64()));
        self.expect(took < limit, format!("took {took:?}, limit {limit:?}"));
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn full(d: &Design) -> RunReport {
    run(d, &RunOptions::default()).expect("base 0 exists")
}

fn family(r: &RunReport) -> String {
    r.classification
        .as_ref()
        .map(|c| c.label.family.to_string())
        .unwrap_or_default()
}

fn table(d: &Design) -> MoveTable {
    MoveTable::new(&CollinearityIndex::new(d).unwrap())
}

fn orth(m: u32, sign: Sign) -> Design {
    orthogonal_design(m, sign).unwrap()
}

fn boolean() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for m in 2..=6u32 {
        let d = boolean_design(m).unwrap();
        let n = 1usize << m;
        let want_lambda = (1usize << (m - 1)) - 1;
        c.eq(&format!("m={m} oracle λ"), common::lambda(&d), Some(want_lambda));
        c.eq(
            &format!("m={m} validate λ"),
            validate(&d).ok().and_then(|s| s.lambda),
            Some(want_lambda),
        );
        let r = full(&d);
        let g = r.groupoid.as_ref().unwrap();
        c.eq(&format!("m={m} |π|"), g.pi_order.clone(), big(1));
        c.eq(&format!("m={m} |L|"), g.l_size.clone(), big(n as u64));
        if m <= 4 {
            c.eq(
                &format!("m={m} oracle (|L|, |π|)"),
                common::groupoid_sizes(&d, 0),
                (n, 1),
            );
        }
        c.eq(&format!("m={m} family"), family(&r), format!("BOOLEAN({m})"));
        let mut relabel: Vec<usize> = (0..n).collect();
        relabel.shuffle(&mut rng);
        let shuffled = d.relabeled(&relabel).unwrap();
        match reconstruct_boolean(&shuffled, relabel[0]) {
            Ok(rec) => c.eq(&format!("m={m} reconstructed m"), rec.m, m),
            Err(e) => c.expect(false, format!("m={m} reconstruction failed: {e}")),
        }
    }
    c.within(start, Duration::from_secs(10));
    c
}

fn orthogonal() -> Criterion {
    let mut c = Criterion::new();
    let cases: [(u32, Sign, usize, usize, u64, u64); 3] = [
        (2, Sign::Plus, 10, 2, 720, 72),
        (3, Sign::Minus, 28, 5, 1451520, 51840),
        (3, Sign::Plus, 36, 9, 1451520, 40320),
    ];
    for (m, sign, n, lambda, l, pi) in cases {
        let tag = format!("({m},{sign})");
        let d = orth(m, sign);
        c.eq(&format!("{tag} n"), d.n(), n);
        c.eq(&format!("{tag} λ"), common::lambda(&d), Some(lambda));

        let start = Instant::now();
        let t = table(&d);
        let gens = hole_stabilizer_generators(&t, 0);
        let pi_chain = StabChain::new(&gens, d.n()).order();
        let group = StabChain::with_base_prefix(t.distinct(), d.n(), &[0]).order();
        c.eq(&format!("{tag} chain |π|"), pi_chain, big(pi));
        c.eq(&format!("{tag} chain |⟨E⟩|"), group, big(l));
        let chain_time = start.elapsed();
        c.expect(
            chain_time < Duration::from_secs(10),
            format!("{tag} chain-only took {chain_time:?}"),
        );

        let start = Instant::now();
        let pi_set = hole_stabilizer(&t, 0, DEFAULT_CAP);
        let lset = GroupoidSet::new(&t, 0, pi_set, DEFAULT_CAP);
        c.expect(lset.pi().is_enumerated(), format!("{tag} π not enumerated"));
        c.expect(lset.elements().is_some(), format!("{tag} L not enumerated"));
        c.eq(
            &format!("{tag} enumerated |π|"),
            lset.pi().elements().map(|s| s.len()),
            Some(pi as usize),
        );
        c.eq(
            &format!("{tag} enumerated |L|"),
            lset.elements().map(|s| s.len()),
            Some(l as usize),
        );
        let full_time = start.elapsed();
        c.expect(
            full_time < Duration::from_secs(180),
            format!("{tag} enumeration took {full_time:?}"),
        );
        if n <= 16 {
            c.eq(
                &format!("{tag} oracle (|L|, |π|)"),
                common::groupoid_sizes(&d, 0),
                (l as usize, pi as usize),
            );
        }
        c.note(format!(
            "{tag} chain {:.2}s, enum {:.2}s",
            chain_time.as_secs_f64(),
            full_time.as_secs_f64()
        ));
    }
    c
}

fn symplectic() -> Criterion {
    let mut c = Criterion::new();
    let d = symplectic_design(2).unwrap();
    c.eq("m=2 n", d.n(), 16);
    c.eq("m=2 λ", common::lambda(&d), Some(3));
    let r = full(&d);
    let g = r.groupoid.as_ref().unwrap();
    c.eq("m=2 |L|", g.l_size.clone(), big(11520));
    c.eq("m=2 |π|", g.pi_order.clone(), big(720));
    c.eq("m=2 oracle (|L|, |π|)", common::groupoid_sizes(&d, 0), (11520, 720));
    c.eq("m=2 family", family(&r), "AFFINE_SP(2)".to_string());

    let start = Instant::now();
    let d = symplectic_design(3).unwrap();
    let t = table(&d);
    let group = StabChain::with_base_prefix(t.distinct(), d.n(), &[0]).order();
    let pi = StabChain::new(&hole_stabilizer_generators(&t, 0), d.n()).order();
    c.eq("m=3 |⟨E⟩|", group.clone(), big(92897280));
    c.eq("m=3 |⟨E⟩| = 2^6·|π|", group, big(64) * &pi);
    c.eq("m=3 chain |π|", pi, big(1451520));
    c.within(start, Duration::from_secs(120));
    c
}

fn m13() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    let d = projective_plane_3();
    c.eq("λ", common::lambda(&d), Some(1));
    let r = full(&d);
    c.expect(r.stats.is_supersimple, "not supersimple");
    let tg = &r.two_graph.as_ref().unwrap().report;
    c.expect(!tg.is_regular_two_graph, "two-graph reported regular");
    match tg.odd_four_set {
        Some(q) => c.expect(
            common::collinear_in(&d, q) % 2 == 1,
            format!("witness {q:?} is not odd"),
        ),
        None => c.expect(false, "no witness 4-set"),
    }
    let g = r.groupoid.as_ref().unwrap();
    c.eq("|π|", g.pi_order.clone(), big(95040));
    c.eq("|L|", g.l_size.clone(), big(1235520));
    c.expect(!g.is_group, "L reported as a group");
    c.expect(g.group_evidence.group_order > g.l_size, "|⟨E⟩| not larger than |L|");
    let sweep = all_bases(&table(&d));
    c.eq("bases swept", sweep.orders.len(), 13);
    c.expect(
        sweep.agree && sweep.orders.iter().all(|o| *o == big(95040)),
        "base orders disagree",
    );
    c.expect(r.group_analysis.as_ref().unwrap().pi_primitive, "π not primitive");
    c.eq("family", family(&r), "EXOTIC_M13_CANDIDATE".to_string());
    if let Some(q) = tg.odd_four_set {
        c.note(format!("witness {q:?}"));
    }
    c.within(start, Duration::from_secs(120));
    c
}

/// The (△) designs of the suite, smallest first.
fn delta_designs() -> Vec<Design> {
    let mut v: Vec<Design> = (2..=6).map(|m| boolean_design(m).unwrap()).collect();
    v.push(symplectic_design(2).unwrap());
    v.push(orth(2, Sign::Plus));
    v.push(orth(3, Sign::Minus));
    v.push(orth(3, Sign::Plus));
    v.push(symplectic_design(3).unwrap());
    v
}

fn identities() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    let mut designs: Vec<Design> = (2..=4).map(|m| boolean_design(m).unwrap()).collect();
    designs.push(symplectic_design(2).unwrap());
    designs.push(orth(2, Sign::Plus));
    designs.push(orth(3, Sign::Minus));
    designs.push(orth(3, Sign::Plus));
    let opts = RunOptions {
        stage: Stage::Lemmas,
        ..RunOptions::default()
    };
    for d in &designs {
        let r = run(d, &opts).unwrap();
        let lemmas = &r.moves.as_ref().unwrap().lemmas;
        for name in [
            "line_move_identity",
            "conjugation_trichotomy",
            "braid_orders",
            "class_closure",
        ] {
            match lemmas.iter().find(|l| l.name == name) {
                Some(l) => {
                    c.expect(l.holds, format!("{} {name}: counterexample {:?}", d.name(), l.witness));
                    c.expect(l.cases > 0, format!("{} {name}: no cases", d.name()));
                }
                None => c.expect(false, format!("{} {name}: missing", d.name())),
            }
        }
        // Both halves of the order dichotomy must be exercised. With
        // n = 2λ+2 every triple is collinear, so only one half exists.
        let braid = lemmas.iter().find(|l| l.name == "braid_orders").unwrap();
        if d.n() > 2 * r.stats.lambda.unwrap() + 2 {
            let (inside, outside) = braid.branches.unwrap_or((0, 0));
            c.expect(
                inside > 0 && outside > 0,
                format!("{} braid branches {inside}/{outside}", d.name()),
            );
        }
    }
    c.within(start, Duration::from_secs(300));
    c
}

fn counting() -> Criterion {
    let mut c = Criterion::new();
    let expected: Vec<usize> = vec![3, 7, 15, 31, 63, 30, 15, 63, 63];
    let mut designs = delta_designs();
    designs.pop();
    let mut counts = Vec::new();
    for d in designs.iter().chain(std::iter::once(&projective_plane_3())) {
        let n = d.n();
        let lambda = common::lambda(d).unwrap();
        let moves = common::distinct_moves(d);
        c.eq(
            &format!("{} |E| formula", d.name()),
            moves * 2 * (lambda + 1),
            n * (n - 1),
        );
        let r = run(
            d,
            &RunOptions {
                stage: Stage::Check,
                ..RunOptions::default()
            },
        )
        .unwrap();
        c.eq(
            &format!("{} library |E|", d.name()),
            r.moves.as_ref().map(|m| m.summary.distinct_moves),
            Some(moves),
        );
        counts.push(moves);
        let tg = &r.two_graph.as_ref().unwrap().report;
        if tg.is_regular_two_graph {
            match common::coherent_s(d) {
                Some(s) => c.eq(
                    &format!("{} n = 6λ − 2s", d.name()),
                    n as i64,
                    6 * lambda as i64 - 2 * s as i64,
                ),
                None => c.expect(false, format!("{} s not constant", d.name())),
            }
            c.expect(n % 2 == 0, format!("{} n odd", d.name()));
            c.expect(
                tg.identity_n_eq && tg.n_even,
                format!("{} library identities", d.name()),
            );
        }
    }
    let mut want = expected;
    want.push(39);
    c.eq("|E| values", counts, want);
    c
}

fn theorem_a() -> Criterion {
    let mut c = Criterion::new();
    let mut designs = delta_designs();
    designs.push(projective_plane_3());
    for d in &designs {
        let r = full(d);
        let lambda = r.stats.lambda.unwrap();
        let ta = &r.classification.as_ref().unwrap().theorem_a;
        if d.n() <= 2 * lambda + 2 {
            c.expect(!ta.applicable, format!("{} applicable at n ≤ 2λ+2", d.name()));
            continue;
        }
        c.expect(ta.applicable && ta.holds, format!("{} fails", d.name()));
        c.eq(&format!("{} implication count", d.name()), ta.implications.len(), 3);
        let g = r.groupoid.as_ref().unwrap();
        let ga = r.group_analysis.as_ref().unwrap();
        let regular = r.two_graph.as_ref().unwrap().report.is_regular_two_graph;
        let is_p3 = d.n() == 13;
        for imp in &ta.implications {
            let (ante, cons) = match imp.part {
                "a" => (g.is_group, ga.primitive),
                "b" => (regular, ga.pi_transitive),
                _ => (regular && g.is_group, ga.pi_primitive),
            };
            c.eq(&format!("{} ({}) antecedent", d.name(), imp.part), imp.antecedent, ante);
            c.eq(&format!("{} ({}) consequent", d.name(), imp.part), imp.consequent, cons);
            if !is_p3 {
                c.expect(!imp.vacuous(), format!("{} ({}) vacuous", d.name(), imp.part));
            }
        }
        c.note(format!("{} ok", d.name()));
    }
    c
}

fn triangle() -> Criterion {
    let mut c = Criterion::new();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0usize;
    for d in delta_designs() {
        let idx = CollinearityIndex::new(&d).unwrap();
        if d.n() <= 2 * idx.lambda() + 2 {
            continue;
        }
        let bases: Vec<usize> = if d.n() <= 36 {
            (0..d.n()).collect()
        } else {
            let mut all: Vec<usize> = (0..d.n()).collect();
            all.shuffle(&mut rng);
            all.truncate(5);
            all
        };
        for base in bases {
            let t = triangle_report(&DerivedGraph::derived(&idx, base));
            c.expect(
                t.has_strong_triangle_property,
                format!("{} base {base}: not strong", d.name()),
            );
            match verify_f_lines(&d, base, &t) {
                Ok(f) => c.expect(
                    f.strong && f.matches,
                    format!("{} base {base}: f-lines {:?}", d.name(), f.witness),
                ),
                Err(e) => c.expect(false, format!("{} base {base}: {e}", d.name())),
            }
            c.expect(
                common::strong_triangle_and_f_lines(&d, base),
                format!("{} base {base}: oracle disagrees", d.name()),
            );
            checked += 1;
        }
    }
    c.note(format!("{checked} base points"));
    c.within(start, Duration::from_secs(300));
    c
}

fn properties() -> Criterion {
    let mut c = Criterion::new();
    let small: Vec<Design> = vec![
        boolean_design(2).unwrap(),
        boolean_design(3).unwrap(),
        boolean_design(4).unwrap(),
        orth(2, Sign::Plus),
        symplectic_design(2).unwrap(),
        projective_plane_3(),
    ];
    for d in &small {
        let reports: Vec<String> = [1, 2, 8]
            .into_iter()
            .map(|threads| {
                let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
                pool.install(|| full(d).to_json())
            })
            .collect();
        c.expect(
            reports.windows(2).all(|w| w[0] == w[1]),
            format!("{}: reports differ across thread counts", d.name()),
        );
        let r = full(d);
        let g = r.groupoid.as_ref().unwrap();
        c.eq(
            &format!("{} direct walk = coset union", d.name()),
            g.direct_walk,
            Some(true),
        );
        // The test-side walk is too large to hold for the 13-point design.
        if d.n() != 13 {
            let (l, pi) = common::groupoid_sizes(d, 0);
            c.eq(&format!("{} oracle |L|", d.name()), g.l_size.clone(), big(l as u64));
            c.eq(&format!("{} oracle |π|", d.name()), g.pi_order.clone(), big(pi as u64));
            if g.is_group {
                c.eq(
                    &format!("{} oracle |⟨E⟩|", d.name()),
                    g.group_evidence.group_order.clone(),
                    big(common::move_group_order(d) as u64),
                );
            }
        }
    }
    for d in small.iter().chain(&[orth(3, Sign::Minus), orth(3, Sign::Plus)]) {
        let t = table(d);
        let pi = hole_stabilizer(&t, 0, DEFAULT_CAP);
        if let Some(e) = pi.elements() {
            c.eq(
                &format!("{} π chain = enumeration", d.name()),
                pi.chain().order(),
                big(e.len() as u64),
            );
        }
        let group = GroupSet::generate(t.distinct().to_vec(), d.n(), DEFAULT_CAP);
        if let Some(e) = group.elements() {
            c.eq(
                &format!("{} ⟨E⟩ chain = enumeration", d.name()),
                group.chain().order(),
                big(e.len() as u64),
            );
        }
        let l = GroupoidSet::new(&t, 0, pi, DEFAULT_CAP);
        if let Some(e) = l.elements() {
            c.eq(
                &format!("{} L size = enumeration", d.name()),
                l.size(),
                big(e.len() as u64),
            );
        }
    }
    c
}

type Check = fn() -> Criterion;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("1 boolean family m=2..6", boolean),
        ("2 orthogonal family orders", orthogonal),
        ("3 symplectic family orders", symplectic),
        ("4 projective plane of order 3", m13),
        ("5 move identities, exhaustive", identities),
        ("6 counting identities", counting),
        ("7 primitivity implications", theorem_a),
        ("8 strong triangle property and f-lines", triangle),
        ("9 determinism, direct walk, chain vs enumeration", properties),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let c = check();
        let notes = if c.notes.is_empty() {
            String::new()
        } else {
            format!(" [{}]", c.notes.join("; "))
        };
        if c.failures.is_empty() {
            println!("PASS criterion {name}{notes}");
        } else {
            failed += 1;
            println!("FAIL criterion {name}{notes}");
            for f in &c.failures {
                println!("    {f}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
