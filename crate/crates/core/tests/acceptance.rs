//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line even when all of them pass.
//!
//! Exit status is non-zero when a criterion outside `KNOWN_FAILURES` fails,
//! or when a known failure unexpectedly starts passing.

use matchfactory::constructions::{
    build_h, build_p, build_q, build_s, canonical, h_step_identity, is_vertex_cover, meredith_simple, min_vertex_cover,
    n_block_types, petersen, pm_family_n, variant_identity, HVariant,
};
use matchfactory::graph::{edge_connectivity, is_r_graph, is_regular, relabel, Multigraph, VertexId};
use matchfactory::matching::{
    apex_host, classify_q_block, cnf_export, enumerate_perfect_matchings, has_disjoint_pms, phi_diagnostic,
    type_multisets, validate_family, verify_forced_type, verify_subcollection, SearchBudget, Verdict,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Criteria expected to fail, with the reason printed next to them.
const KNOWN_FAILURES: &[(u32, &str)] =
    &[(8, "N_0..N_3 cannot be pairwise disjoint inside H_1: H_1 has no two disjoint perfect matchings (criterion 10)")];

/// Wall-clock limits per criterion.
const LIMITS: [(u32, u64); 14] = [
    (1, 1),
    (2, 1),
    (3, 30),
    (4, 5),
    (5, 5),
    (6, 120),
    (7, 10),
    (8, 30),
    (9, 60),
    (10, 1800),
    (11, 1),
    (12, 60),
    (13, 600),
    (14, 300),
];

/// Seed for the relabelings of criterion 14.
const RELABEL_SEED: u64 = 0x5eed_0014;
const RELABEL_SAMPLES: usize = 5;

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { ok: true, detail: summary }
    } else {
        Outcome { ok: false, detail: format!("{summary}; {}", failures.join("; ")) }
    }
}

macro_rules! expect {
    ($fails:ident, $cond:expr, $($msg:tt)+) => {
        if !$cond {
            $fails.push(format!($($msg)+));
        }
    };
}

fn c1_petersen_structure() -> Outcome {
    let mut f = Vec::new();
    let (g, _) = petersen();
    let all = enumerate_perfect_matchings(&g, 100);
    expect!(f, all.matchings.len() == 6, "{} perfect matchings", all.matchings.len());
    let ms = canonical().all();
    let mut meets: BTreeSet<_> = BTreeSet::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let common: Vec<_> = ms[i].edges().iter().filter(|e| ms[j].contains(**e)).collect();
            expect!(f, common.len() == 1, "M{i} and M{j} share {} edges", common.len());
            meets.extend(common.into_iter().copied());
        }
    }
    expect!(f, meets.len() == 15, "pair intersections hit {} distinct edges", meets.len());
    let listed: BTreeSet<_> = all.matchings.iter().cloned().collect();
    let canon: BTreeSet<_> = ms.iter().cloned().collect();
    expect!(f, listed == canon, "enumerated matchings differ from M_0..M_5");
    outcome(f, format!("6 matchings, 15 pairs onto {} edges", meets.len()))
}

fn c2_forced_type() -> Outcome {
    let mut f = Vec::new();
    let mut pairs = Vec::new();
    for j in 0..6u8 {
        match verify_forced_type(j) {
            Ok(c) => {
                expect!(f, c.holds(), "j={j}: {} violations, e.g. {:?}", c.violations, c.counterexample);
                pairs.push(c.families);
            }
            Err(e) => f.push(format!("j={j}: {e}")),
        }
    }
    outcome(f, format!("disjoint pairs per j: {pairs:?}"))
}

fn c3_subcollection() -> Outcome {
    let mut f = Vec::new();
    let all = type_multisets(3);
    let mut families = 0;
    for ms in &all {
        match verify_subcollection(ms) {
            Ok(c) => {
                families += c.families;
                expect!(f, c.holds(), "{ms:?}: {} violations", c.violations);
            }
            Err(e) => f.push(format!("{ms:?}: {e}")),
        }
    }
    expect!(f, all.len() == 83, "{} multisets", all.len());
    outcome(f, format!("{} multisets, {families} families", all.len()))
}

fn c4_p_k() -> Outcome {
    let mut f = Vec::new();
    for k in 1..=3 {
        let g = build_p(k).unwrap().graph;
        expect!(f, is_regular(&g) == Some(4 * k), "P_{k} regularity {:?}", is_regular(&g));
        let lambda = edge_connectivity(&g);
        expect!(f, lambda == 4 * k, "P_{k} edge connectivity {lambda}");
    }
    outcome(f, "P_1..P_3 are 4k-regular and 4k-edge-connected".into())
}

fn c5_q_k() -> Outcome {
    let mut f = Vec::new();
    for k in 1..=3 {
        let q = build_q(k).unwrap();
        let g = &q.graph;
        let block = &q.q_blocks()[0];
        let u = block.u_q.expect("Q block has u_Q");
        expect!(f, g.vertex_count() == 19, "Q_{k} order {}", g.vertex_count());
        expect!(f, g.degree(u) == 4 * k, "Q_{k} deg(u_Q) = {}", g.degree(u));
        for (i, &z) in block.z.iter().enumerate() {
            expect!(f, g.degree(z) == 2 * k, "Q_{k} deg(z_{}) = {}", i + 1, g.degree(z));
        }
        expect!(f, block.z.len() == 2, "Q_{k} has {} z vertices", block.z.len());
        expect!(f, g.edge_count() == 36 * k, "Q_{k} size {}", g.edge_count());
    }
    outcome(f, "Q_1..Q_3: 19 vertices, deg(u_Q)=4k, deg(z)=2k, 36k edges".into())
}

fn cubic_bases() -> Vec<(&'static str, Multigraph)> {
    let k4 = Multigraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let k33 =
        Multigraph::from_edges(6, [(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
    let prism =
        Multigraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]).unwrap();
    vec![("K4", k4), ("K33", k33), ("prism", prism), ("Petersen", petersen().0)]
}

fn c6_s_k() -> Outcome {
    let mut f = Vec::new();
    let mut orders = Vec::new();
    for (name, base) in cubic_bases() {
        for k in 1..=2 {
            let g = build_s(&base, k).unwrap().graph;
            let want = 19 * base.edge_count() + 3 * base.vertex_count();
            expect!(f, g.vertex_count() == want, "S_{k}({name}) order {} != {want}", g.vertex_count());
            expect!(f, is_regular(&g) == Some(4 * k), "S_{k}({name}) regularity {:?}", is_regular(&g));
            let lambda = edge_connectivity(&g);
            expect!(f, lambda == 4 * k, "S_{k}({name}) edge connectivity {lambda}");
            if base.edge_count() % 2 == 0 {
                let r = is_r_graph(&g);
                expect!(f, r == Some(4 * k), "S_{k}({name}) r-graph {r:?}");
            }
            orders.push(format!("{name}/{k}:{}", g.vertex_count()));
        }
    }
    outcome(f, format!("orders {}", orders.join(" ")))
}

fn h1_properties(g: &Multigraph, k: usize) -> Vec<String> {
    let mut f = Vec::new();
    expect!(f, g.vertex_count() == 60, "H_{k} order {}", g.vertex_count());
    expect!(f, g.edge_count() == 120 * k, "H_{k} size {}", g.edge_count());
    expect!(f, is_r_graph(g) == Some(4 * k), "H_{k} r-graph {:?}", is_r_graph(g));
    let lambda = edge_connectivity(g);
    expect!(f, lambda == 4 * k, "H_{k} edge connectivity {lambda}");
    f
}

fn c7_h_k() -> Outcome {
    let mut f = Vec::new();
    for k in 1..=2 {
        f.extend(h1_properties(&build_h(k, HVariant::Base).unwrap().graph, k));
    }
    outcome(f, "H_1, H_2: order 60, size 120k, 4k-graphs, 4k-edge-connected".into())
}

fn c8_h_step() -> Outcome {
    let mut f = Vec::new();
    let mut notes = Vec::new();
    for k in 1..=2 {
        match h_step_identity(k) {
            Ok(true) => {}
            Ok(false) => f.push(format!("H_{} != H_{k} + N_0..N_3", k + 1)),
            Err(e) => f.push(format!("k={k}: {e}")),
        }
        let h = build_h(k, HVariant::Base).unwrap();
        let fam = match pm_family_n(k) {
            Ok(fam) => fam,
            Err(e) => {
                f.push(format!("k={k}: {e}"));
                continue;
            }
        };
        for (i, pm) in fam.matchings.iter().enumerate() {
            expect!(f, pm.is_perfect_in(&h.graph), "k={k}: N_{i} is not a perfect matching");
            let want = n_block_types(i);
            for (b, block) in h.q_blocks().into_iter().enumerate() {
                match classify_q_block(&h, block, pm) {
                    Ok(t) => expect!(f, t == want[b], "k={k}: N_{i} block {b} has type {t}, want {}", want[b]),
                    Err(e) => f.push(format!("k={k}: N_{i} block {b}: {e}")),
                }
            }
        }
        let disjoint = validate_family(&h.graph, &fam.matchings).is_ok();
        expect!(f, disjoint == fam.disjoint, "k={k}: disjointness flag disagrees with validation");
        expect!(f, disjoint, "k={k}: N_0..N_3 share edges");
        notes.push(format!("k={k} disjoint={disjoint}"));
    }
    outcome(f, format!("identity and block types checked; {}", notes.join(", ")))
}

fn c9_variants() -> Outcome {
    let mut f = Vec::new();
    for k in 1..=2 {
        for (variant, r, lambda) in [
            (HVariant::Prime, 4 * k + 3, 4 * k + 2),
            (HVariant::DoublePrime, 4 * k + 1, 4 * k),
            (HVariant::TriplePrime, 4 * k + 2, 4 * k),
        ] {
            let g = build_h(k, variant).unwrap().graph;
            let tag = format!("H{}_{k}", variant.suffix());
            expect!(f, is_regular(&g) == Some(r), "{tag} regularity {:?}", is_regular(&g));
            let got = edge_connectivity(&g);
            expect!(f, got == lambda, "{tag} edge connectivity {got} != {lambda}");
            expect!(f, is_r_graph(&g) == Some(r), "{tag} r-graph {:?}", is_r_graph(&g));
            match variant_identity(k, variant) {
                Ok(true) => {}
                Ok(false) => f.push(format!("{tag} != H_{} minus the unused N_i", k + 1)),
                Err(e) => f.push(format!("{tag}: {e}")),
            }
        }
    }
    outcome(f, "three variants for k=1,2: degree, connectivity, r-graph, identity".into())
}

fn sat(cnf: &str) -> bool {
    let formula = varisat::dimacs::DimacsParser::parse(cnf.as_bytes()).expect("valid DIMACS");
    let mut solver = varisat::Solver::new();
    solver.add_formula(&formula);
    solver.solve().expect("solver finishes")
}

fn c10_headline() -> Outcome {
    let mut f = Vec::new();
    let h = build_h(1, HVariant::Base).unwrap().graph;
    let budget = SearchBudget::default();
    let d = has_disjoint_pms(&h, 2, &budget);
    expect!(f, d.verdict == Verdict::No, "search verdict {}", d.verdict.label());
    let unsat = !sat(&cnf_export(&h, 2));
    expect!(f, unsat, "CNF is satisfiable");
    outcome(
        f,
        format!("search No after {} nodes over {} matchings; CNF unsat={unsat}", d.stats.nodes, d.stats.pms_enumerated),
    )
}

fn c11_positive_control() -> Outcome {
    let mut f = Vec::new();
    let p1 = build_p(1).unwrap().graph;
    let d = has_disjoint_pms(&p1, 2, &SearchBudget::default());
    match &d.verdict {
        Verdict::Yes(family) => {
            expect!(f, family.len() == 2, "certificate has {} matchings", family.len());
            if let Err(e) = validate_family(&p1, family) {
                f.push(format!("certificate invalid: {e}"));
            }
        }
        v => f.push(format!("verdict {}", v.label())),
    }
    outcome(f, "P_1 has two disjoint perfect matchings, certificate validated".into())
}

fn c12_phi() -> Outcome {
    let mut f = Vec::new();
    let host = apex_host(1).unwrap();
    let d = phi_diagnostic(&host, 1).unwrap();
    expect!(f, d.families > 0, "no disjoint pairs found");
    expect!(f, d.violations == 0, "{} violations", d.violations);
    expect!(f, d.omega_counts.keys().all(|&w| w == 1), "omega values {:?}", d.omega_counts);
    outcome(f, format!("{} pairs, omega counts {:?}", d.families, d.omega_counts))
}

fn c13_meredith() -> Outcome {
    let mut f = Vec::new();
    let h = build_h(1, HVariant::Base).unwrap().graph;
    let cover = min_vertex_cover(&h);
    expect!(f, is_vertex_cover(&h, &cover), "not a cover");
    expect!(f, cover.len() == 35, "cover size {}", cover.len());
    let ext = match meredith_simple(&h, &cover) {
        Ok(g) => g,
        Err(e) => return outcome(vec![e.to_string()], String::new()),
    };
    expect!(f, ext.is_simple(), "extension is not simple");
    expect!(f, is_regular(&ext) == Some(4), "regularity {:?}", is_regular(&ext));
    let lambda = edge_connectivity(&ext);
    expect!(f, lambda == 4, "edge connectivity {lambda}");
    expect!(f, ext.vertex_count() == 60 + 35 * 6, "order {}", ext.vertex_count());
    // the command-level report must flag the closed-form order as a discrepancy without failing
    match matchfactory::cli::extend(&h, "auto", None) {
        Ok(report) => {
            expect!(f, report.exit_code() == 0, "extend report verdict {:?}", report.verdict());
            let flagged = report.notes.iter().any(|n| n.starts_with("discrepancy"));
            expect!(f, flagged, "extend report does not flag the closed-form order");
        }
        Err(e) => f.push(format!("extend: {e}")),
    }
    outcome(f, format!("cover {}, order {}, discrepancy with 70(r-1) = 210 noted", cover.len(), ext.vertex_count()))
}

fn c14_metamorphic() -> Outcome {
    let mut f = Vec::new();
    let h = build_h(1, HVariant::Base).unwrap().graph;
    let mut rng = rand::rngs::StdRng::seed_from_u64(RELABEL_SEED);
    let budget = SearchBudget::default();
    for s in 0..RELABEL_SAMPLES {
        let mut perm: Vec<VertexId> = h.vertices().collect();
        perm.shuffle(&mut rng);
        let g = relabel(&h, &perm).unwrap();
        f.extend(h1_properties(&g, 1).into_iter().map(|m| format!("sample {s}: {m}")));
        let v = has_disjoint_pms(&g, 2, &budget).verdict;
        expect!(f, v == Verdict::No, "sample {s}: disjoint verdict {}", v.label());
    }
    outcome(f, format!("{RELABEL_SAMPLES} relabelings of H_1 (seed {RELABEL_SEED:#x}) keep every verdict"))
}

fn main() {
    let criteria: [Criterion; 14] = [
        (1, "petersen structure", c1_petersen_structure),
        (2, "forced type", c2_forced_type),
        (3, "subcollection", c3_subcollection),
        (4, "P_k regularity and connectivity", c4_p_k),
        (5, "Q_k structure", c5_q_k),
        (6, "S_k shape", c6_s_k),
        (7, "H_k shape", c7_h_k),
        (8, "H_k step identity", c8_h_step),
        (9, "H_k variants", c9_variants),
        (10, "no two disjoint matchings in H_1", c10_headline),
        (11, "positive control on P_1", c11_positive_control),
        (12, "phi diagnostic", c12_phi),
        (13, "cover and extension", c13_meredith),
        (14, "relabeling invariance", c14_metamorphic),
    ];
    let mut unexpected = Vec::new();
    for (id, name, check) in criteria {
        let limit = Duration::from_secs(LIMITS.iter().find(|(c, _)| *c == id).expect("limit pinned").1);
        let start = Instant::now();
        let mut result = check();
        let took = start.elapsed();
        if took > limit {
            result.ok = false;
            result.detail = format!("{}; took {:.1} s, limit {} s", result.detail, took.as_secs_f64(), limit.as_secs());
        }
        let known = KNOWN_FAILURES.iter().find(|(c, _)| *c == id);
        let label = if result.ok { "PASS" } else { "FAIL" };
        println!("{label} {id:>2} {name} ({:.2} s): {}", took.as_secs_f64(), result.detail);
        match (result.ok, known) {
            (false, Some((_, why))) => println!("        known failure: {why}"),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
            (true, Some(_)) => unexpected.push(format!("criterion {id} passed but is listed as a known failure")),
            (true, None) => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
