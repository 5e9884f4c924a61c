//! End-to-end acceptance checks, one line per criterion.
//!
//! All criteria run inside a single test so their lines print in order. Each
//! criterion is isolated: a failure or panic in one does not stop the rest.

use std::io::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::Rng;
use xsect::catalog::FIXTURES;
use xsect::config::{Command, FileConfig, RunConfig};
use xsect::runner::{chain_graph_for, run, run_on, Graphs};
use xsect_core::alpha::{direction_support, fried_positive, negative_walk_through};
use xsect_core::chains::{chain_graph, ChainInfo, Shift};
use xsect_core::labeling::{
    check_feasible, classify_cardinality, enumerate_labelings, labelings_equal, InfiniteReason,
};
use xsect_core::recurrence::is_chain_recurrent;
use xsect_core::section::{default_level, extract_section, section_to_labeling, synthesize_potential};
use xsect_core::{AlphaAnalysis, AlphaChainGraph, Cardinality, CohomologyClass, Digraph, Labeling, WindingVector};
use xsect_testkit as oracle;

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn config(text: &str) -> RunConfig {
    FileConfig::parse(text).expect("config parses").resolve().expect("config resolves")
}

fn fixture_config(name: &str, extra: &str) -> RunConfig {
    config(&format!("[flow]\nbuiltin = \"{name}\"\n{extra}"))
}

fn class(v: &[i64]) -> CohomologyClass {
    CohomologyClass::new(v).unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn reeb_section() -> Outcome {
    let start = Instant::now();
    let cfg = fixture_config("reeb2d", "[grid]\nresolution = [64, 64]\n[analysis]\nalphas = [[0, 1]]\ncommands = [\"analyze\", \"extract\"]\n");
    ensure(cfg.params.epsilon == cfg.grid.cell_diameter(), || "epsilon is not the cell diameter".into())?;
    let r = run(&cfg).map_err(|e| e.to_string())?;
    let a = &r.alphas[0];
    ensure(a.error.is_none(), || format!("error: {:?}", a.error))?;
    ensure(a.existence.as_ref().is_some_and(|e| e.nonempty), || "existence empty".into())?;
    ensure(a.fried_positive == Some(true), || "not Fried positive".into())?;
    ensure(a.alpha_recurrent_cells == Some(0), || format!("alpha-recurrent cells {:?}", a.alpha_recurrent_cells))?;
    ensure(a.cardinality.as_ref().is_some_and(|c| c.kind == "singleton"), || "not singleton".into())?;
    let s = &a.sections[0];
    ensure(s.polylines.len() == 1, || format!("{} polylines", s.polylines.len()))?;
    let p = &s.polylines[0];
    ensure(p.closed && p.class == vec![0, 1], || format!("polyline closed {} class {:?}", p.closed, p.class))?;
    ensure(s.recurrent_contacts == 0 && s.negative_crossings == 0, || "section meets the recurrent set".into())?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("one closed (0,1) polyline, {} cut edges, {:.2?}", s.cut_edges, start.elapsed()))
}

fn slowed_vertical() -> Outcome {
    let start = Instant::now();
    let cfg = fixture_config("slowed-vertical", "[grid]\nresolution = [64, 64]\n[analysis]\nalphas = [[0, 1]]\nrefine = 3\n");
    let graphs = Graphs::new(&cfg).map_err(|e| e.to_string())?;
    let g = &graphs.base.graph;
    ensure(is_chain_recurrent(g), || "not chain recurrent".into())?;
    let a = AlphaAnalysis::compute(g, &class(&[0, 1]));
    ensure(a.chains.len() == 2, || format!("{} alpha-chains", a.chains.len()))?;
    let grid = &graphs.base.grid;
    let p = grid.cell_of(&[0.0, 0.0]) as u32;
    let q = grid.cell_of(&[0.5, 0.0]) as u32;
    ensure(a.chains[0].contains(&p) && a.chains[1].contains(&q), || "chains miss the stopped points".into())?;
    let (cg, levels, _, dropped) = chain_graph_for(&graphs, &a).map_err(|e| e.to_string())?;
    ensure(dropped.is_none() && levels.len() == 3, || format!("levels {levels:?}, dropped {dropped:?}"))?;
    let apq: Vec<Option<i64>> = cg.level_shifts.iter().map(|m| m[0][1].finite()).collect();
    let increasing = apq.windows(2).all(|w| matches!((w[0], w[1]), (Some(x), Some(y)) if y > x));
    ensure(increasing, || format!("a_pq over levels {apq:?}"))?;
    let card = classify_cardinality(&cg, true).map_err(|e| e.to_string())?;
    ensure(matches!(card, Cardinality::CountablyInfinite(_)), || format!("cardinality {card}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("a_pq over 64/128/256 = {apq:?}, {card}, {:.2?}", start.elapsed()))
}

fn psi1_trend() -> Outcome {
    let start = Instant::now();
    let cfg = fixture_config("psi1", "[grid]\nresolution = [64, 64]\n[analysis]\nalphas = [[1, 0], [-1, 0]]\nrefine = 3\n");
    let spec = match &cfg.source {
        xsect::config::Source::Flow(s) => s.clone(),
        _ => unreachable!(),
    };
    let param = |k: &str| spec.params().iter().find(|(n, _)| *n == k).map(|(_, v)| *v);
    ensure(param("a") == Some(-1.0), || format!("a = {:?}", param("a")))?;
    ensure(param("exponent").is_some_and(|e| e >= 4.0), || format!("exponent = {:?}", param("exponent")))?;
    let graphs = Graphs::new(&cfg).map_err(|e| e.to_string())?;
    let g = &graphs.base.graph;
    let dx = class(&[1, 0]);
    let a = AlphaAnalysis::compute(g, &dx);
    ensure(!a.quasi_lyapunov_minus_alpha, || "(1,0) is nonempty".into())?;
    let p0 = graphs.base.grid.cell_of(&[0.0, 0.0]) as u32;
    let walk = negative_walk_through(g, &dx, p0, 4 * g.vertex_count()).ok_or("no negative walk through p0")?;
    ensure(g.is_closed_walk(&walk) && g.sources()[walk[0]] == p0, || "witness is not a closed walk at p0".into())?;
    let weight = dx.pair(&g.path_weight(&walk));
    ensure(weight < 0, || format!("witness weight {weight}"))?;
    ensure(AlphaAnalysis::compute(g, &class(&[-1, 0])).quasi_lyapunov_minus_alpha, || "(-1,0) is empty".into())?;
    let mut trend = Vec::new();
    for k in 0..3 {
        let tg = graphs.level(k).map_err(|e| e.to_string())?;
        trend.push(direction_support(&tg.graph, &dx).map_err(|e| e.to_string())?);
    }
    let monotone = trend.windows(2).all(|w| w[1] >= w[0]) && trend.iter().all(|v| v.to_f64() <= 0.0);
    let shown: Vec<String> = trend.iter().map(|v| format!("{}/{}", v.numer(), v.denom())).collect();
    ensure(monotone, || format!("support trend {shown:?}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("witness of {} edges, weight {weight}; support {shown:?}, {:.2?}", walk.len(), start.elapsed()))
}

fn constant_table() -> Outcome {
    let start = Instant::now();
    let units: Vec<[i64; 2]> = (-1..=1).flat_map(|a| (-1..=1).map(move |b| [a, b])).filter(|v| *v != [0, 0]).collect();
    let mut zero_cases = 0;
    for drift in &units {
        let cfg = config(&format!(
            "[flow]\nbuiltin = \"constant\"\nparams = {{ a = {}, b = {} }}\n[grid]\nresolution = [8, 8]\ntime = 1.0\n",
            drift[0], drift[1]
        ));
        let graphs = Graphs::new(&cfg).map_err(|e| e.to_string())?;
        let g = &graphs.base.graph;
        for alpha in &units {
            let c = class(alpha);
            let a = AlphaAnalysis::compute(g, &c);
            let dot = alpha[0] * drift[0] + alpha[1] * drift[1];
            if dot != 0 {
                ensure(a.quasi_lyapunov_minus_alpha == (dot > 0), || format!("drift {drift:?} alpha {alpha:?}"))?;
                continue;
            }
            // Zero pairing: the verdict must agree with the cycle it rests on.
            zero_cases += 1;
            match &a.negative_cycle {
                Some(cycle) => ensure(g.is_closed_walk(cycle) && c.pair(&g.path_weight(cycle)) < 0, || {
                    format!("drift {drift:?} alpha {alpha:?}: bad witness")
                })?,
                None => ensure(a.quasi_lyapunov_minus_alpha, || format!("drift {drift:?} alpha {alpha:?}: no verdict"))?,
            }
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("64 pairs, {zero_cases} zero pairings settled by their cycles, {:.2?}", start.elapsed()))
}

fn to_digraph(g: &oracle::RawGraph) -> Digraph {
    Digraph::from_edges(g.n, g.edges.iter().map(|&(u, v, w)| (u as u32, v as u32, WindingVector::new(&w))))
}

fn oracle_suite() -> Outcome {
    let start = Instant::now();
    let mut rng = oracle::rng(2024);
    let mut compared_chains = 0;
    for case in 0..100 {
        let alpha = oracle::random_alpha(&mut rng);
        let raw = if case % 2 == 0 { oracle::random_graph(&mut rng, 12) } else { oracle::planted_graph(&mut rng, alpha, 12) };
        let g = to_digraph(&raw);
        let c = class(&alpha);
        let a = AlphaAnalysis::compute(&g, &c);
        let tag = |what: &str| format!("case {case}: {what}");
        ensure(a.quasi_lyapunov_minus_alpha == oracle::brute_quasi_lyapunov(&raw, alpha), || tag("quasi-Lyapunov verdict"))?;
        let mcm = direction_support(&g, &c).ok().map(|r| (r.numer(), r.denom()));
        ensure(mcm == oracle::brute_min_cycle_mean(&raw, alpha), || tag("minimum cycle mean"))?;
        if !a.quasi_lyapunov_minus_alpha {
            continue;
        }
        let rec: Vec<usize> = a.alpha_recurrent.iter().map(|&v| v as usize).collect();
        ensure(rec == oracle::brute_alpha_recurrent(&raw, alpha), || tag("alpha-recurrent set"))?;
        let mut ours: Vec<Vec<usize>> = a.chains.iter().map(|ch| ch.iter().map(|&v| v as usize).collect()).collect();
        let mut theirs = oracle::brute_alpha_chains(&raw, alpha);
        ours.sort();
        theirs.iter_mut().for_each(|c| c.sort());
        theirs.sort();
        ensure(ours == theirs, || tag("alpha-chains"))?;
        let cg = chain_graph(&g, &a).map_err(|e| tag(&e.to_string()))?;
        let n = c.n_alpha() as i64;
        for (i, ci) in cg.chains.iter().enumerate() {
            for (j, cj) in cg.chains.iter().enumerate() {
                let brute = oracle::brute_shortest(&raw, alpha, ci.representative as usize, cj.representative as usize);
                ensure(cg.shifts[i][j].finite().map(|s| s * n) == brute, || tag(&format!("shift {i}->{j}")))?;
            }
        }
        compared_chains += cg.chain_count();
        let window = if cg.is_transitive() {
            (0..cg.chain_count())
                .flat_map(|m| [cg.constraint(0, m), cg.constraint(m, 0)])
                .map(|c| c.map_or(0, |v| v.abs()))
                .max()
                .unwrap_or(0)
        } else {
            3
        };
        let listed = enumerate_labelings(&cg, Some(window), 1_000_000).map_err(|e| tag(&e.to_string()))?;
        let brute = oracle::brute_labeling_count(cg.chain_count(), window, |i, j| cg.constraint(i, j));
        ensure(listed.labelings.len() as u64 == brute, || tag(&format!("labelings {} vs {brute}", listed.labelings.len())))?;
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("100 graphs, {compared_chains} chains compared, {:.2?}", start.elapsed()))
}

/// Every builtin fixture with its catalog classes, analyzed once and shared by
/// the round-trip and transversality criteria.
struct FixtureCase {
    name: &'static str,
    graphs: Graphs,
    analyses: Vec<(AlphaAnalysis, Option<AlphaChainGraph>, Vec<Labeling>)>,
}

fn fixture_cases() -> &'static Result<Vec<FixtureCase>, String> {
    static CASES: OnceLock<Result<Vec<FixtureCase>, String>> = OnceLock::new();
    CASES.get_or_init(|| {
        FIXTURES
            .iter()
            .map(|fx| {
                let cfg = fixture_config(fx.name, "");
                let graphs = Graphs::new(&cfg).map_err(|e| format!("{}: {e}", fx.name))?;
                let mut analyses = Vec::new();
                for alpha in &cfg.alphas {
                    let a = AlphaAnalysis::compute(&graphs.base.graph, alpha);
                    if !a.quasi_lyapunov_minus_alpha {
                        analyses.push((a, None, Vec::new()));
                        continue;
                    }
                    let (cg, ..) = chain_graph_for(&graphs, &a).map_err(|e| format!("{} {alpha:?}: {e}", fx.name))?;
                    let listed = enumerate_labelings(&cg, Some(3), 100_000)
                        .map_err(|e| format!("{} {:?}: {e}", fx.name, alpha.covector()))?;
                    analyses.push((a, Some(cg), listed.labelings));
                }
                Ok(FixtureCase { name: fx.name, graphs, analyses })
            })
            .collect()
    })
}

fn round_trip() -> Outcome {
    let cases = fixture_cases().as_ref().map_err(|e| e.clone())?;
    let mut total = 0;
    for case in cases {
        let g = &case.graphs.base.graph;
        for (a, _, labelings) in &case.analyses {
            for l in labelings {
                let tag = format!("{} {:?} {:?}", case.name, a.alpha.covector(), l.labels);
                let pot = synthesize_potential(g, a, l).map_err(|e| format!("{tag}: {e}"))?;
                let s = extract_section(g, a, &pot, default_level(l), None).map_err(|e| format!("{tag}: {e}"))?;
                let back = section_to_labeling(g, a, &s).map_err(|e| format!("{tag}: {e}"))?;
                ensure(labelings_equal(&back, l).unwrap_or(false), || format!("{tag}: read back {:?}", back.labels))?;
                total += 1;
            }
        }
    }
    Ok(format!("{total} labelings over {} fixtures", cases.len()))
}

fn cardinality_laws() -> Outcome {
    let mut checked = 0;
    for fx in FIXTURES {
        let mut alphas: Vec<Vec<i64>> = fx.alphas.iter().map(|a| a.to_vec()).collect();
        alphas.push(vec![0; fx.dim]);
        let list = alphas.iter().map(|a| format!("{a:?}")).collect::<Vec<_>>().join(", ");
        let cfg = fixture_config(fx.name, &format!("[analysis]\nalphas = [{list}]\nwindow = 1\n"));
        let graphs = Graphs::new(&cfg).map_err(|e| e.to_string())?;
        let report = run_on(&cfg, &graphs).map_err(|e| e.to_string())?;
        let cr = report.graph.chain_recurrent;
        for a in &report.alphas {
            let tag = format!("{} {:?}", fx.name, a.alpha);
            let Some(card) = &a.cardinality else { return Err(format!("{tag}: no cardinality")) };
            let nonempty = a.existence.as_ref().is_some_and(|e| e.nonempty);
            if !nonempty {
                ensure(card.kind == "empty", || format!("{tag}: empty class reported {}", card.kind))?;
                continue;
            }
            let cgr = a.chain_graph.as_ref().ok_or(format!("{tag}: no chain graph"))?;
            let chains = cgr.representatives.len();
            if a.alpha.iter().all(|&x| x == 0) {
                ensure(!cr && card.kind == "countably_infinite", || format!("{tag}: zero class {}", card.kind))?;
            } else {
                ensure((card.kind == "singleton") == (chains <= 1), || format!("{tag}: {} with {chains} chains", card.kind))?;
                let finite = card.kind == "finite" || card.kind == "singleton";
                ensure(finite == (chains <= 1 || cgr.transitive), || format!("{tag}: {} transitive {}", card.kind, cgr.transitive))?;
                if card.kind == "finite" {
                    let listed = a.labelings.as_ref().map(|l| l.count as u64);
                    ensure(listed == card.count, || format!("{tag}: count {:?} listed {listed:?}", card.count))?;
                }
            }
            checked += 1;
        }
    }
    let mut rng = oracle::rng(77);
    let mut kinds = [0usize; 3];
    for case in 0..50 {
        let cg = random_chain_graph(&mut rng);
        let k = cg.chain_count();
        let tag = |what: &str| format!("toy {case}: {what}");
        let card = classify_cardinality(&cg, false).map_err(|e| tag(&e.to_string()))?;
        match card {
            Cardinality::Singleton => {
                ensure(k <= 1, || tag("singleton with several chains"))?;
                kinds[0] += 1;
            }
            Cardinality::Finite(n) => {
                ensure(k > 1 && cg.is_transitive(), || tag("finite but not transitive"))?;
                let window = (0..k).flat_map(|m| [cg.constraint(0, m), cg.constraint(m, 0)]).flatten().map(i64::abs).max().unwrap_or(0);
                let brute = oracle::brute_labeling_count(k, window, |i, j| cg.constraint(i, j));
                let listed = enumerate_labelings(&cg, None, 1_000_000).map_err(|e| tag(&e.to_string()))?.labelings.len() as u64;
                ensure(n == brute && n == listed, || tag(&format!("count {n}, brute {brute}, listed {listed}")))?;
                kinds[1] += 1;
            }
            Cardinality::CountablyInfinite(reason) => {
                ensure(k > 1 && !cg.is_transitive(), || tag("infinite but transitive"))?;
                if let InfiniteReason::Divergent { from, to } = reason {
                    ensure(cg.divergent[from][to], || tag("reason names a bounded pair"))?;
                }
                kinds[2] += 1;
            }
            Cardinality::Empty => return Err(tag("empty")),
        }
        let zero = AlphaChainGraph { alpha: CohomologyClass::zero(2).unwrap(), n_alpha: 0, ..cg.clone() };
        ensure(
            matches!(classify_cardinality(&zero, false), Ok(Cardinality::CountablyInfinite(InfiniteReason::ZeroClass))),
            || tag("zero class on a non-recurrent graph"),
        )?;
    }
    ensure(kinds.iter().all(|&n| n > 0), || format!("toy kinds singleton/finite/infinite {kinds:?}"))?;
    Ok(format!("{checked} fixture classes; toys singleton/finite/infinite = {kinds:?}"))
}

/// Chains with hidden heights; shifts are shortest paths over slack edges, so
/// the family is always nonempty. Some pairs are marked divergent.
fn random_chain_graph<R: Rng>(rng: &mut R) -> AlphaChainGraph {
    let k = rng.gen_range(1..=4usize);
    let h: Vec<i64> = (0..k).map(|_| rng.gen_range(-2..=2)).collect();
    let dense = rng.gen_bool(0.5);
    let mut edges = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j && (dense || rng.gen_bool(0.5)) {
                edges.push((i, j, h[i] - h[j] + rng.gen_range(0..=2)));
            }
        }
    }
    let dist = oracle::floyd_warshall(k, &edges);
    let shifts: Vec<Vec<Shift>> =
        dist.iter().map(|row| row.iter().map(|d| d.map_or(Shift::Unreachable, Shift::Finite)).collect()).collect();
    let reachable: Vec<Vec<bool>> = dist.iter().map(|row| row.iter().map(Option::is_some).collect()).collect();
    let mut divergent = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            divergent[i][j] = i != j && reachable[i][j] && rng.gen_bool(0.1);
        }
    }
    let alpha = class(&[0, 1]);
    AlphaChainGraph {
        alpha,
        n_alpha: 1,
        chains: (0..k as u32).map(|v| ChainInfo { representative: v, vertices: vec![v] }).collect(),
        level_shifts: vec![shifts.clone()],
        shifts,
        divergent,
        reachable,
    }
}

fn transversality() -> Outcome {
    let cases = fixture_cases().as_ref().map_err(|e| e.clone())?;
    let mut rng = oracle::rng(5);
    let mut sections = 0;
    for case in cases {
        let g = &case.graphs.base.graph;
        let grid = &case.graphs.base.grid;
        for (a, _, labelings) in &case.analyses {
            for l in labelings {
                let pot = synthesize_potential(g, a, l).map_err(|e| e.to_string())?;
                for _ in 0..3 {
                    let t = rng.gen_range(-4.0..4.0f64);
                    if t == t.floor() {
                        continue;
                    }
                    let tag = format!("{} {:?} {:?} t={t:.3}", case.name, a.alpha.covector(), l.labels);
                    let s = extract_section(g, a, &pot, t, Some(grid)).map_err(|e| format!("{tag}: {e}"))?;
                    let negative = s.crossings(g.edge_count()).iter().filter(|&&c| c < 0).count();
                    ensure(negative == 0, || format!("{tag}: {negative} negative crossings"))?;
                    ensure(s.recurrent_contacts == 0, || format!("{tag}: {} recurrent contacts", s.recurrent_contacts))?;
                    if grid.dim() == 2 && !a.alpha.is_zero() {
                        ensure(!s.polylines.is_empty() && s.polylines.iter().all(|p| p.closed), || format!("{tag}: open or missing polylines"))?;
                    }
                    sections += 1;
                }
            }
        }
    }
    Ok(format!("{sections} sections at random levels"))
}

fn fried() -> Outcome {
    let cfg = fixture_config("slowed-vertical", "[analysis]\nalphas = [[0, 1], [0, 1]]\ncommands = [\"fried-sum\"]\n");
    let r = run(&cfg).map_err(|e| e.to_string())?;
    let f = r.fried_sum.as_ref().ok_or("no fried sum")?;
    ensure(f.error.is_none(), || format!("error {:?}", f.error))?;
    ensure(f.sum_alpha == vec![0, 2], || format!("sum class {:?}", f.sum_alpha))?;
    ensure(!f.pairs.is_empty() && f.feasible_pairs == f.pairs.len(), || {
        format!("{} of {} sums feasible", f.feasible_pairs, f.pairs.len())
    })?;
    let pairs = f.pairs.len();

    // The zero class of a flow that is not chain recurrent plus a Fried-positive class.
    let cfg = fixture_config("reeb2d", "[analysis]\nalphas = [[0, 0], [0, 1]]\ncommands = [\"fried-sum\"]\n");
    let r = run(&cfg).map_err(|e| e.to_string())?;
    let f = r.fried_sum.as_ref().ok_or("no fried sum")?;
    ensure(f.error.is_none(), || format!("reeb2d: error {:?}", f.error))?;
    let w = f.non_injective.as_ref().ok_or("reeb2d: no non-injectivity witness")?;

    // The same construction on a hand-built graph: two invariant loops joined one way.
    let g = Digraph::from_edges(
        2,
        [(0, 0, WindingVector::new(&[0, 1])), (1, 1, WindingVector::new(&[0, 1])), (0, 1, WindingVector::new(&[0, 0]))],
    );
    ensure(fried_positive(&g, &class(&[0, 1])), || "toy: (0,1) not Fried positive".into())?;
    let zero = AlphaAnalysis::compute(&g, &CohomologyClass::zero(2).unwrap());
    let up = AlphaAnalysis::compute(&g, &class(&[0, 1]));
    let cz = chain_graph(&g, &zero).map_err(|e| e.to_string())?;
    let cu = chain_graph(&g, &up).map_err(|e| e.to_string())?;
    let family = enumerate_labelings(&cz, Some(2), 100).map_err(|e| e.to_string())?.labelings;
    let empty = Labeling::new(Vec::new(), 1);
    check_feasible(&cu, &empty).map_err(|e| e.to_string())?;
    let found = xsect_core::fried::non_injectivity_witness(&zero, &family, &up, &empty, &up, &cu)
        .map_err(|e| e.to_string())?
        .ok_or("toy: no witness")?;
    ensure(!labelings_equal(&found.0, &found.1).unwrap_or(true), || "toy: witness labelings agree".into())?;
    Ok(format!(
        "{pairs} slowed-vertical sums feasible; reeb2d {:?} and {:?} both sum to {:?}; toy witness {:?} / {:?}",
        w.first, w.other_first, w.sum, found.0.labels, found.1.labels
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("reeb2d section", reeb_section),
        ("slowed-vertical divergence", slowed_vertical),
        ("psi1 witness and trend", psi1_trend),
        ("constant-flow table", constant_table),
        ("oracle suite", oracle_suite),
        ("round trip", round_trip),
        ("cardinality laws", cardinality_laws),
        ("transversality", transversality),
        ("fried sum", fried),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let line = match outcome {
            Ok(detail) => format!("criterion {}: PASS {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("criterion {}: FAIL {name}: {why} [{took:.2?}]", i + 1)
            }
        };
        // The raw handle bypasses the harness capture, so the lines show in every run.
        let _ = writeln!(std::io::stdout().lock(), "{line}");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn commands_are_reported_in_order() {
    let cfg = fixture_config("constant", "[analysis]\ncommands = [\"analyze\", \"directions\"]\nfan = 4\n");
    let r = run(&cfg).unwrap();
    assert_eq!(r.commands, vec![Command::Analyze.name(), Command::Directions.name()]);
    assert_eq!(r.fan.len(), 4);
}
