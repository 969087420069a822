use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use ndip::backends::Backend;
use ndip::generate::random_instance;
use ndip::graph::twin_partition;
use ndip::graver::{graver_basis_with, stacking_check, Certification, GraverLimits};
use ndip::io::{read_instance, write_instance, Instance, Problem};
use ndip::matrix::{dual_graph, stacked_blocks, type_path_decomposition, verify_decomposition};
use ndip::models::build_sumcol_graver;
use ndip::models::sumcol::ColorClassCatalog;
use ndip::{Graph, TypeGraph};

use crate::csv_out;
use crate::dispatch::{self, Job, ModelKind, Report, Route};
use crate::{AlgoArg, Failure, SolveArgs, Status};

fn load(file: &Path) -> Result<Instance, Failure> {
    read_instance(file).map_err(|e| Failure::input(format!("{}: {e}", file.display())))
}

fn types_summary(t: &TypeGraph) -> String {
    let kinds: Vec<String> = (0..t.k())
        .map(|i| format!("{} x{}", t.kind(i), t.weight(i)))
        .collect();
    format!("nd {} ({})", t.k(), kinds.join(", "))
}

pub fn nd(file: &Path) -> Result<Status, Failure> {
    let inst = load(file)?;
    let g = &inst.graph;
    let p = twin_partition(g);
    let t = TypeGraph::of(g);
    let mut out = format!("n {}\nm {}\nnd {}\n", g.n(), g.edge_count(), p.len());
    for (i, (class, kind)) in p.classes.iter().zip(&p.kinds).enumerate() {
        let vs: Vec<String> = class.iter().map(|v| (v + 1).to_string()).collect();
        let _ = writeln!(
            out,
            "class {}: {kind}, weight {}, vertices {}",
            i + 1,
            class.len(),
            vs.join(" ")
        );
    }
    let edges: Vec<String> = t
        .edges()
        .iter()
        .map(|(i, j)| format!("{}-{}", i + 1, j + 1))
        .collect();
    let _ = writeln!(
        out,
        "type edges: {}",
        if edges.is_empty() {
            "none".to_string()
        } else {
            edges.join(" ")
        }
    );
    print!("{out}");
    Ok(Status::Ok)
}

fn job<'a>(inst: &'a Instance, args: &SolveArgs) -> Job<'a> {
    Job {
        graph: &inst.graph,
        problem: args.problem.map(Problem::from).unwrap_or(inst.problem),
        q: args.q.or(inst.q),
        colors: args.colors,
        budget: args.budget,
    }
}

pub fn solve(
    file: &Path,
    args: &SolveArgs,
    csv: Option<&Path>,
    no_timing: bool,
) -> Result<Status, Failure> {
    let inst = load(file)?;
    let job = job(&inst, args);
    let route = dispatch::route(job.problem, args)?;
    let r = dispatch::run(&job, route)?;
    let g = &inst.graph;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "instance {}: n {}, m {}, {}",
        file.display(),
        g.n(),
        g.edge_count(),
        types_summary(&TypeGraph::of(g))
    );
    let _ = writeln!(
        out,
        "problem {}, model {}, backend {}",
        r.problem,
        route.model_name(),
        route.backend_name()
    );
    match (&r.value, &r.witness) {
        (Some(v), Some(w)) => {
            let _ = writeln!(out, "value {v}\nwitness {}", w.render());
        }
        _ => out.push_str("value infeasible\n"),
    }
    let _ = writeln!(out, "nodes {}", r.nodes);
    if !no_timing {
        let _ = writeln!(out, "time {} ms", r.millis);
    }
    print!("{out}");
    if let Some(path) = csv {
        let row = csv_out::record(&file.display().to_string(), &r, !no_timing);
        csv_out::append(path, &row)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(if r.value.is_some() {
        Status::Ok
    } else {
        Status::Infeasible
    })
}

/// Every exact route for `problem`, plus the rounding scheme for CDS.
fn verify_routes(problem: Problem) -> Vec<Route> {
    use ModelKind as M;
    match problem {
        Problem::Cds => vec![
            Route::Model(M::CdsConvex, Backend::Boxed),
            Route::Model(M::CdsIlp, Backend::Boxed),
            Route::Algo(AlgoArg::Proximity),
            Route::Algo(AlgoArg::Rounding),
        ],
        Problem::SumCol => vec![
            Route::Model(M::SumColNFold, Backend::Boxed),
            Route::Model(M::SumColNFold, Backend::NFold),
            Route::Model(M::SumColConvex, Backend::Boxed),
            Route::Model(M::SumColGraver, Backend::Boxed),
            Route::Model(M::SumColGraver, Backend::Augment),
        ],
        Problem::MaxQCut => vec![Route::Model(M::MaxQCut, Backend::Boxed)],
    }
}

pub fn verify(file: &Path, problem: Option<Problem>, q: Option<usize>) -> Result<Status, Failure> {
    let inst = load(file)?;
    let problem = problem.unwrap_or(inst.problem);
    let job = Job {
        graph: &inst.graph,
        problem,
        q: q.or(inst.q),
        colors: None,
        budget: None,
    };
    let k = TypeGraph::of(&inst.graph).k() as i64;
    let reference = match dispatch::run(&job, Route::Algo(AlgoArg::Brute)) {
        Ok(r) => {
            println!(
                "{problem} oracle: {}",
                r.value.expect("oracles always find a solution")
            );
            r.value
        }
        Err(f) if f.status == Status::Budget => {
            println!("{problem} oracle: skipped ({})", f.message);
            None
        }
        Err(f) => return Err(f),
    };
    let mut reference = reference;
    let (mut mismatches, mut errors) = (0, 0);
    for route in verify_routes(problem) {
        let label = format!("{problem} {} {}", route.model_name(), route.backend_name());
        match dispatch::run(&job, route) {
            Ok(Report { value: Some(v), .. }) => {
                let want = *reference.get_or_insert(v);
                let ok = if route == Route::Algo(AlgoArg::Rounding) {
                    (0..=k * k).contains(&(v - want))
                } else {
                    v == want
                };
                if !ok {
                    mismatches += 1;
                }
                println!("{label}: {v} {}", if ok { "ok" } else { "MISMATCH" });
            }
            Ok(_) => {
                mismatches += 1;
                println!("{label}: infeasible MISMATCH");
            }
            Err(f) => {
                errors += 1;
                println!("{label}: error ({})", f.message);
            }
        }
    }
    Ok(if mismatches > 0 {
        Status::Mismatch
    } else if errors > 0 {
        Status::Budget
    } else {
        Status::Ok
    })
}

pub fn graver(
    file: &Path,
    cap: Option<i64>,
    stacking: bool,
    budget: Option<u64>,
) -> Result<Status, Failure> {
    let inst = load(file)?;
    let t = TypeGraph::of(&inst.graph);
    let mut limits = GraverLimits::default();
    if let Some(b) = budget {
        limits.max_elements = usize::try_from(b).unwrap_or(usize::MAX);
    }
    let m = build_sumcol_graver(&t)?;
    let catalog = ColorClassCatalog::new(&t)?;
    let (f, l) = stacked_blocks(&m)?;
    let kx = catalog.len();
    let gamma = l.rows();
    println!(
        "types {}, independent sets {kx}, critical sizes {gamma}",
        t.k()
    );
    println!("F {}x{}, L {}x{}", f.rows(), f.cols(), l.rows(), l.cols());
    let basis = graver_basis_with(&l, cap, limits)?;
    let how = match basis.certification() {
        Certification::Completion => "completion".to_string(),
        Certification::NormCap {
            cap,
            certified: true,
        } => format!("enumeration to norm {cap}, certified"),
        Certification::NormCap {
            cap,
            certified: false,
        } => format!("enumeration to norm {cap}, NOT certified"),
    };
    println!("Graver basis of L: {} elements ({how})", basis.len());
    if basis.is_complete() {
        println!(
            "g1(L) {} (bound {}), g_inf(L) {}",
            basis.g1()?,
            gamma + 1,
            basis.g_inf()?
        );
    }
    let x_norm = basis
        .elements()
        .iter()
        .map(|e| e[..kx].iter().map(|v| v.abs()).sum::<i64>())
        .max()
        .unwrap_or(0);
    println!("largest x-part l1 norm {x_norm} (bound 2)");
    let d = dual_graph(&m.constraint_matrix()?);
    let check = verify_decomposition(&d, &type_path_decomposition(&m)?);
    println!(
        "dual path decomposition: {}, width {} (k+1 = {})",
        if check.valid { "valid" } else { "INVALID" },
        check.width,
        t.k() + 1
    );
    if stacking {
        let r = stacking_check(&f, &l, limits)?;
        println!(
            "stacking: g1(F;L) {} <= g1(F G(L)) {} * g1(L) {} = {}: {}",
            r.g1_stacked,
            r.g1_product,
            r.g1_lower,
            r.bound,
            if r.holds { "holds" } else { "VIOLATED" }
        );
    }
    Ok(Status::Ok)
}

pub struct Batch {
    pub seed: u64,
    pub count: u64,
    pub max_k: usize,
    pub max_n: usize,
    pub max_cap: u32,
    pub jobs: usize,
    pub emit: Option<PathBuf>,
}

type RowResult = Result<[String; 7], Failure>;

fn bench_instance(
    args: &SolveArgs,
    batch: &Batch,
    seed: u64,
) -> Result<(Instance, Report), Failure> {
    let problem = args.problem.map(Problem::from).unwrap_or(Problem::SumCol);
    let caps = (problem == Problem::Cds).then_some(batch.max_cap);
    let graph: Graph = random_instance(seed, batch.max_k, batch.max_n, caps)?;
    let q = (problem == Problem::MaxQCut).then(|| args.q.unwrap_or(2));
    let inst = Instance::new(problem, graph, q)?;
    let j = Job {
        graph: &inst.graph,
        problem,
        q,
        colors: args.colors,
        budget: args.budget,
    };
    let report = dispatch::run(&j, dispatch::route(problem, args)?)?;
    Ok((inst, report))
}

pub fn bench(
    args: &SolveArgs,
    batch: &Batch,
    csv: Option<&Path>,
    no_timing: bool,
) -> Result<Status, Failure> {
    if batch.max_k == 0 || batch.max_n < batch.max_k {
        return Err(Failure::input("need 1 <= --max-k <= --max-n"));
    }
    let problem = args.problem.map(Problem::from).unwrap_or(Problem::SumCol);
    dispatch::route(problem, args)?;
    if let Some(dir) = &batch.emit {
        std::fs::create_dir_all(dir)?;
    }
    let count = batch.count as usize;
    let results: Mutex<Vec<Option<RowResult>>> = Mutex::new((0..count).map(|_| None).collect());
    let jobs = batch.jobs.clamp(1, count.max(1));
    std::thread::scope(|scope| {
        for w in 0..jobs {
            let results = &results;
            scope.spawn(move || {
                for i in (w..count).step_by(jobs) {
                    let seed = batch.seed.wrapping_add(i as u64);
                    let name = format!("seed{seed}");
                    let row = bench_instance(args, batch, seed).and_then(|(inst, r)| {
                        if let Some(dir) = &batch.emit {
                            write_instance(&inst, dir.join(format!("{name}.txt")))?;
                        }
                        Ok(csv_out::record(&name, &r, !no_timing))
                    });
                    results.lock().expect("no worker panics")[i] = Some(row);
                }
            });
        }
    });
    let mut rows = Vec::with_capacity(count);
    let mut status = Status::Ok;
    for (i, r) in results
        .into_inner()
        .expect("no worker panics")
        .into_iter()
        .enumerate()
    {
        match r.expect("every index is visited") {
            Ok(row) => rows.push(row),
            Err(f) => {
                eprintln!(
                    "ndip: instance seed{}: {}",
                    batch.seed.wrapping_add(i as u64),
                    f.message
                );
                status = status.max_with(f.status);
            }
        }
    }
    match csv {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            csv_out::write_all(file, &rows).map_err(|e| Failure::input(e.to_string()))?;
        }
        None => csv_out::write_all(std::io::stdout().lock(), &rows)
            .map_err(|e| Failure::input(e.to_string()))?,
    }
    Ok(status)
}

impl Status {
    /// Keeps the first non-zero status.
    fn max_with(self, other: Status) -> Status {
        if self == Status::Ok {
            other
        } else {
            self
        }
    }
}
