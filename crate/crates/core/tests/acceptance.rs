//! Acceptance suite: one pass/fail line per criterion.
//!
//! Run with `cargo test -p ndip --test acceptance`. Exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ndip::algorithms::cds::{capacity_disorder, capacity_reorder_steps};
use ndip::algorithms::{
    cds_brute, cds_proximity_solve, cds_rounding_approx, check_cds, check_coloring, cut_value,
    maxqcut_brute, sumcol_brute, ProximityBox,
};
use ndip::backends::augment::solve_augment;
use ndip::backends::boxed::solve_boxed;
use ndip::backends::nfold::solve_nfold;
use ndip::generate::random_instance;
use ndip::graph::{Graph, TypeGraph};
use ndip::graver::{augment_to_optimum, graver_basis, stacking_check, GraverLimits};
use ndip::ip::{IpModel, Objective, Relation, Sense, Univariate};
use ndip::matrix::{
    dual_graph, stacked_blocks, type_path_decomposition, verify_decomposition, IntMatrix,
};
use ndip::models::cds::decode_cds;
use ndip::models::sumcol::{
    canonical_recolor, is_essential, multiplicities, s_convex, ColorClassCatalog, Coloring,
};
use ndip::models::{
    build_cds_convex, build_cds_ilp, build_maxqcut, build_sumcol_convex, build_sumcol_graver,
    build_sumcol_nfold, decode_coloring, decode_partition,
};
use ndip::ModelTag;

const CDS_INSTANCES: u64 = 200;
const SUMCOL_INSTANCES: u64 = 200;
const CUT_INSTANCES: u64 = 60;
const TW_INSTANCES: usize = 60;
const AUGMENT_INSTANCES: u64 = 120;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    match failures.first() {
        None => Outcome { pass: true, detail },
        Some(first) => Outcome {
            pass: false,
            detail: format!("{detail}; {} failures, first: {first}", failures.len()),
        },
    }
}

fn cds_suite() -> Vec<Graph> {
    (0..CDS_INSTANCES)
        .map(|s| random_instance(s, 4, 8, Some(4)).expect("valid template"))
        .collect()
}

fn sumcol_suite() -> Vec<Graph> {
    (0..SUMCOL_INSTANCES)
        .map(|s| random_instance(10_000 + s, 4, 8, None).expect("valid template"))
        .collect()
}

fn value(m: &IpModel) -> Result<i64, String> {
    match solve_boxed(m) {
        Ok(out) => out.value().ok_or_else(|| "infeasible".to_string()),
        Err(e) => Err(e.to_string()),
    }
}

fn criterion_1(suite: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    for (s, g) in suite.iter().enumerate() {
        let t = TypeGraph::of(g);
        let brute = cds_brute(g)
            .map(|x| x.size() as i64)
            .map_err(|e| e.to_string());
        let m1 = build_cds_convex(&t)
            .map_err(|e| e.to_string())
            .and_then(|m| value(&m));
        let m2 = build_cds_ilp(&t)
            .map_err(|e| e.to_string())
            .and_then(|m| value(&m));
        let prox = cds_proximity_solve(&t, g)
            .map(|r| r.solution.size() as i64)
            .map_err(|e| e.to_string());
        let agree = matches!((&brute, &m1, &m2, &prox), (Ok(a), Ok(b), Ok(c), Ok(d)) if a == b && b == c && c == d);
        if !agree {
            failures.push(format!(
                "seed {s}: brute {brute:?}, convex {m1:?}, ilp {m2:?}, proximity {prox:?}"
            ));
        }
    }
    outcome(&failures, format!("{} instances", suite.len()))
}

fn criterion_2(suite: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    for (s, g) in suite.iter().enumerate() {
        let t = TypeGraph::of(g);
        let brute = sumcol_brute(g).expect("small graph").cost();
        let mut got: Vec<(&str, Result<i64, String>)> = Vec::new();
        let nf = build_sumcol_nfold(&t, None).expect("n-fold model");
        got.push(("nfold/boxed", value(&nf)));
        got.push((
            "nfold/nfold",
            solve_nfold(&nf)
                .map_err(|e| e.to_string())
                .and_then(|o| o.value().ok_or("infeasible".into())),
        ));
        got.push((
            "convexfd/boxed",
            value(&build_sumcol_convex(&t).expect("convex model")),
        ));
        let m5 = build_sumcol_graver(&t).expect("multiplicity model");
        got.push(("graver/boxed", value(&m5)));
        got.push((
            "graver/augment",
            solve_augment(&m5)
                .map_err(|e| e.to_string())
                .and_then(|o| o.value().ok_or("infeasible".into())),
        ));
        for (name, v) in got {
            if v.as_ref() != Ok(&brute) {
                failures.push(format!(
                    "seed {}: {name} gave {v:?}, oracle {brute}",
                    10_000 + s
                ));
            }
        }
    }
    outcome(
        &failures,
        format!(
            "{} instances, n-fold, convex and multiplicity models on boxed, n-fold and augmentation backends",
            suite.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for q in [2usize, 3] {
        for s in 0..CUT_INSTANCES {
            let seed = 20_000 + 100 * q as u64 + s;
            let g = random_instance(seed, 4, 8, None).expect("valid template");
            let t = TypeGraph::of(&g);
            let brute = cut_value(&g, &maxqcut_brute(&g, q).expect("small graph"));
            let m = build_maxqcut(&t, q).expect("q >= 2");
            let out = solve_boxed(&m);
            let ok = match &out {
                Ok(o) => {
                    let p = o.point().and_then(|x| decode_partition(&t, &g, x, q).ok());
                    o.value() == Some(brute) && p.is_some_and(|p| cut_value(&g, &p) == brute)
                }
                Err(_) => false,
            };
            if !ok {
                failures.push(format!(
                    "seed {seed}, q {q}: got {:?}, oracle {brute}",
                    out.map(|o| o.value())
                ));
            }
            count += 1;
        }
    }
    outcome(&failures, format!("{count} instances, q in {{2,3}}"))
}

fn criterion_4(suite: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    let (mut positive, mut worst) = (0, 0);
    for (s, g) in suite.iter().enumerate() {
        let t = TypeGraph::of(g);
        let opt = cds_brute(g).expect("small graph").size() as i64;
        match cds_rounding_approx(&t, g) {
            Ok(run) if check_cds(g, &run.solution) => {
                let gap = run.solution.size() as i64 - opt;
                let k2 = (t.k() * t.k()) as i64;
                if !(0..=k2).contains(&gap) {
                    failures.push(format!("seed {s}: gap {gap}, k^2 = {k2}"));
                }
                if gap > 0 {
                    positive += 1;
                }
                worst = worst.max(gap);
            }
            Ok(_) => failures.push(format!("seed {s}: rounded solution is invalid")),
            Err(e) => failures.push(format!("seed {s}: {e}")),
        }
    }
    let note = if positive > 0 {
        format!("{positive} instances with positive gap, largest {worst}")
    } else {
        "no instance with a positive gap was found".to_string()
    };
    outcome(&failures, format!("{} instances, {note}", suite.len()))
}

/// All class-count vectors of size `opt` whose capacity-ordered prefixes dominate.
fn ordered_optima(t: &TypeGraph, g: &Graph, opt: i64) -> Vec<Vec<i64>> {
    let bx = ProximityBox {
        center: Vec::new(),
        radius: 0,
        ranges: (0..t.k()).map(|i| (0, t.weight(i) as i64)).collect(),
    };
    bx.points()
        .into_iter()
        .filter(|x| x.iter().sum::<i64>() == opt)
        .filter(|x| {
            let mut point = vec![0; ndip::models::cds::CdsLayout::new(t).num_vars()];
            point[..x.len()].copy_from_slice(x);
            matches!(decode_cds(t, g, &point), Ok(Some(_)))
        })
        .collect()
}

fn criterion_5(suite: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    for (s, g) in suite.iter().enumerate() {
        let t = TypeGraph::of(g);
        let brute = cds_brute(g).expect("small graph");
        let bx = match ProximityBox::for_instance(&t) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("seed {s}: {e}"));
                continue;
            }
        };
        let reordered = capacity_reorder_steps(g, &brute)
            .expect("brute optimum is valid")
            .pop()
            .expect("non-empty");
        let direct = reordered.class_counts(&t);
        if bx.contains(&direct) {
            continue;
        }
        let optima = ordered_optima(&t, g, brute.size() as i64);
        if !optima.iter().any(|x| bx.contains(x)) {
            failures.push(format!("seed {s}: none of {optima:?} in {:?}", bx.ranges));
        }
    }
    outcome(&failures, format!("{} instances", suite.len()))
}

fn criterion_6(suite: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    let (mut at_k1, mut at_k2) = (0, 0);
    let mut count = 0;
    for (s, g) in suite.iter().enumerate().take(TW_INSTANCES) {
        let t = TypeGraph::of(g);
        let m = build_sumcol_graver(&t).expect("multiplicity model");
        let d = dual_graph(&m.constraint_matrix().expect("linear rows"));
        let check = match type_path_decomposition(&m) {
            Ok(pd) => verify_decomposition(&d, &pd),
            Err(e) => {
                failures.push(format!("seed {}: {e}", 10_000 + s));
                continue;
            }
        };
        count += 1;
        let k = t.k();
        if !check.valid || check.width > k + 2 {
            failures.push(format!(
                "seed {}: valid {}, width {} with k = {k}",
                10_000 + s,
                check.valid,
                check.width
            ));
        } else if check.width == k + 2 {
            at_k2 += 1;
        } else if check.width == k + 1 {
            at_k1 += 1;
        }
    }
    outcome(
        &failures,
        format!("{count} instances, width k+1 on {at_k1}, width k+2 on {at_k2}, the rest narrower"),
    )
}

fn tiny_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntMatrix {
    let dense: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(-1..=1)).collect())
        .collect();
    IntMatrix::from_dense(cols, &dense).expect("rectangular")
}

fn criterion_7(suite: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    let limits = GraverLimits::default();
    let mut blocks = 0;
    let mut seen = std::collections::BTreeSet::new();
    let mut pairs: Vec<(IntMatrix, IntMatrix)> = Vec::new();
    for (s, g) in suite.iter().enumerate() {
        let t = TypeGraph::of(g);
        if t.k() > 3 {
            continue;
        }
        let m = build_sumcol_graver(&t).expect("multiplicity model");
        let (f, l) = stacked_blocks(&m).expect("stacked layout");
        if !seen.insert(l.to_dense()) {
            continue;
        }
        blocks += 1;
        let kx = ColorClassCatalog::new(&t).expect("catalog").len();
        let gamma = l.rows() as i64;
        match graver_basis(&l, None) {
            Ok(b) => {
                let g1 = b.g1().expect("completion is certified");
                if g1 > gamma + 1 {
                    failures.push(format!(
                        "seed {}: g1(L) = {g1} > |Gamma|+1 = {}",
                        10_000 + s,
                        gamma + 1
                    ));
                }
                if let Some(e) = b
                    .elements()
                    .iter()
                    .find(|e| e[..kx].iter().map(|v| v.abs()).sum::<i64>() > 2)
                {
                    failures.push(format!(
                        "seed {}: element {e:?} has x-part norm above 2",
                        10_000 + s
                    ));
                }
            }
            Err(e) => failures.push(format!("seed {}: {e}", 10_000 + s)),
        }
        if t.k() <= 2 && pairs.len() < 6 {
            pairs.push((f, l));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    while pairs.len() < 14 {
        let cols = rng.random_range(2..=4);
        let (fr, lr) = (rng.random_range(1..=2), rng.random_range(0..=2));
        let f = tiny_matrix(&mut rng, fr, cols);
        let l = tiny_matrix(&mut rng, lr, cols);
        pairs.push((f, l));
    }
    for (f, l) in &pairs {
        match stacking_check(f, l, limits) {
            Ok(r) if r.holds => {}
            Ok(r) => failures.push(format!(
                "stacking {:?} / {:?}: {r:?}",
                f.to_dense(),
                l.to_dense()
            )),
            Err(e) => failures.push(format!(
                "stacking {:?} / {:?}: {e}",
                f.to_dense(),
                l.to_dense()
            )),
        }
    }
    outcome(
        &failures,
        format!(
            "{blocks} distinct L blocks with k <= 3, {} stacking pairs",
            pairs.len()
        ),
    )
}

fn random_standard_form(rng: &mut ChaCha8Rng) -> (IpModel, Vec<i64>) {
    let rows = rng.random_range(1..=3);
    let cols = rng.random_range(1..=6);
    let mut lower = Vec::with_capacity(cols);
    let mut upper = Vec::with_capacity(cols);
    for _ in 0..cols {
        let a = rng.random_range(-5..=5);
        let b = rng.random_range(-5..=5);
        lower.push(a.min(b));
        upper.push(a.max(b));
    }
    let x0: Vec<i64> = (0..cols)
        .map(|j| rng.random_range(lower[j]..=upper[j]))
        .collect();
    let objective = if rng.random_bool(0.5) {
        Objective::Linear((0..cols).map(|_| rng.random_range(-3..=3)).collect())
    } else {
        Objective::Separable(
            (0..cols)
                .map(|_| Univariate::Quadratic {
                    a: rng.random_range(0..=2),
                    b: rng.random_range(-4..=4),
                })
                .collect(),
        )
    };
    let mut m = IpModel::new(lower, upper, objective, Sense::Minimize);
    for _ in 0..rows {
        let terms: Vec<(usize, i64)> = (0..cols)
            .map(|j| (j, rng.random_range(-2..=2)))
            .filter(|&(_, a)| a != 0)
            .collect();
        let rhs = terms.iter().map(|&(j, a)| a * x0[j]).sum();
        m.add_row(terms, Relation::Eq, rhs);
    }
    (m, x0)
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(30_000);
    for s in 0..AUGMENT_INSTANCES {
        let (m, x0) = random_standard_form(&mut rng);
        let sf = m.standard_form().expect("equality rows");
        let aug = augment_to_optimum(&sf, &x0, GraverLimits::default()).map(|a| a.value);
        let boxed = solve_boxed(&m).map(|o| o.value());
        match (&aug, &boxed) {
            (Ok(a), Ok(Some(b))) if a == b => {}
            _ => failures.push(format!(
                "instance {s}: augmentation {aug:?}, boxed {boxed:?}"
            )),
        }
    }
    outcome(&failures, format!("{AUGMENT_INSTANCES} instances"))
}

fn monotone(c: &Coloring) -> bool {
    c.class_sizes().windows(2).all(|w| w[0] >= w[1])
}

fn criterion_9(cds: &[Graph], sumcol: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    for (s, g) in sumcol.iter().enumerate() {
        let t = TypeGraph::of(g);
        let c = sumcol_brute(g).expect("small graph");
        let r = canonical_recolor(&t, &c);
        if !monotone(&c) {
            failures.push(format!(
                "seed {}: oracle optimum sizes {:?} not sorted",
                10_000 + s,
                c.class_sizes()
            ));
        }
        if !(check_coloring(g, &r) && r.cost() == c.cost() && is_essential(&t, &r) && monotone(&r))
        {
            failures.push(format!(
                "seed {}: recoloring {:?} of {:?}",
                10_000 + s,
                r.colors,
                c.colors
            ));
        }
    }
    for (s, g) in cds.iter().enumerate() {
        let t = TypeGraph::of(g);
        let brute = cds_brute(g).expect("small graph");
        let steps = capacity_reorder_steps(g, &brute).expect("valid input");
        let last = steps.last().expect("non-empty");
        let progress = steps
            .windows(2)
            .all(|w| capacity_disorder(&t, &w[1]) < capacity_disorder(&t, &w[0]));
        let sizes = steps
            .iter()
            .all(|x| x.size() == brute.size() && check_cds(g, x));
        if !(progress && sizes && capacity_disorder(&t, last) == 0) {
            failures.push(format!(
                "cds seed {s}: reorder of {:?} misbehaved",
                brute.dominators
            ));
        }
    }
    outcome(
        &failures,
        format!("{} colorings, {} dominating sets", sumcol.len(), cds.len()),
    )
}

fn criterion_10(suite: &[Graph]) -> Outcome {
    let mut failures = Vec::new();
    for (s, g) in suite.iter().enumerate() {
        let t = TypeGraph::of(g);
        let catalog = ColorClassCatalog::new(&t).expect("catalog");
        let m = build_sumcol_convex(&t).expect("convex model");
        let Ok(out) = solve_boxed(&m) else {
            failures.push(format!("seed {}: convex model failed", 10_000 + s));
            continue;
        };
        let x = out.point().expect("always feasible");
        let decoded = decode_coloring(&t, g, x, ModelTag::SumColConvex);
        match decoded {
            Ok(c) if check_coloring(g, &c) && s_convex(&catalog, x) == c.cost() => {}
            other => failures.push(format!(
                "seed {}: S_convex {} vs {other:?}",
                10_000 + s,
                s_convex(&catalog, x)
            )),
        }
        // the oracle's optimum, recolored and counted, must cost the same
        let brute = canonical_recolor(&t, &sumcol_brute(g).expect("small graph"));
        let mu = multiplicities(&t, &catalog, &brute).expect("essential");
        if s_convex(&catalog, &mu) != brute.cost() {
            failures.push(format!(
                "seed {}: oracle cost {} vs S_convex {}",
                10_000 + s,
                brute.cost(),
                s_convex(&catalog, &mu)
            ));
        }
    }
    outcome(&failures, format!("{} instances", suite.len()))
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let cds = cds_suite();
    let sumcol = sumcol_suite();
    let criteria: Vec<(&str, Check<'_>)> = vec![
        ("CDS oracle agreement", Box::new(|| criterion_1(&cds))),
        (
            "Sum Coloring oracle agreement",
            Box::new(|| criterion_2(&sumcol)),
        ),
        ("Max-q-Cut oracle agreement", Box::new(criterion_3)),
        ("rounding within k^2", Box::new(|| criterion_4(&cds))),
        (
            "proximity box contains an optimum",
            Box::new(|| criterion_5(&cds)),
        ),
        (
            "path decomposition width",
            Box::new(|| criterion_6(&sumcol)),
        ),
        (
            "Graver norm bounds and stacking",
            Box::new(|| criterion_7(&sumcol)),
        ),
        ("Graver augmentation optimality", Box::new(criterion_8)),
        (
            "structural invariants",
            Box::new(|| criterion_9(&cds, &sumcol)),
        ),
        ("column cost formula", Box::new(|| criterion_10(&sumcol))),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        all &= o.pass;
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {name}: {} ({:.1}s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
