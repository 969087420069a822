//! Problem/model/backend selection, solving and witness decoding.

use std::time::Instant;

use ndip::algorithms::{
    cds_brute, cds_proximity_solve, cds_rounding_approx, check_cds, check_coloring, cut_value,
    maxqcut_brute, sumcol_brute,
};
use ndip::backends::augment::{solve_augment_with, AugmentConfig};
use ndip::backends::boxed::{solve_boxed_with, BoxedConfig};
use ndip::backends::nfold::{solve_nfold_with, NFoldConfig};
use ndip::backends::{Backend, SolveOutcome};
use ndip::io::Problem;
use ndip::models::cds::{decode_cds, CdsSolution};
use ndip::models::maxcut::Partition;
use ndip::models::sumcol::Coloring;
use ndip::models::{
    build_cds_convex, build_cds_ilp, build_maxqcut, build_sumcol_convex, build_sumcol_graver,
    build_sumcol_nfold, decode_coloring, decode_partition,
};
use ndip::{Graph, IpModel, TypeGraph};

use crate::{AlgoArg, BackendArg, Failure, ModelArg, SolveArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    CdsConvex,
    CdsIlp,
    SumColNFold,
    SumColConvex,
    SumColGraver,
    MaxQCut,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::CdsConvex => "convex",
            ModelKind::CdsIlp => "ilp",
            ModelKind::SumColNFold => "nfold",
            ModelKind::SumColConvex => "convexfd",
            ModelKind::SumColGraver => "graver",
            ModelKind::MaxQCut => "quadratic",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Model(ModelKind, Backend),
    Algo(AlgoArg),
}

impl Route {
    pub fn model_name(self) -> &'static str {
        match self {
            Route::Model(m, _) => m.name(),
            Route::Algo(_) => "-",
        }
    }

    pub fn backend_name(self) -> &'static str {
        match self {
            Route::Model(_, b) => b.name(),
            Route::Algo(AlgoArg::Proximity) => "proximity",
            Route::Algo(AlgoArg::Rounding) => "rounding",
            Route::Algo(AlgoArg::Brute) => "brute",
        }
    }
}

fn backend(b: BackendArg) -> Backend {
    match b {
        BackendArg::Boxed => Backend::Boxed,
        BackendArg::Nfold => Backend::NFold,
        BackendArg::Augment => Backend::Augment,
    }
}

/// Checks that the flags name a model or algorithm of `problem`.
pub fn route(problem: Problem, args: &SolveArgs) -> Result<Route, Failure> {
    if let Some(algo) = args.algo {
        if algo != AlgoArg::Brute && problem != Problem::Cds {
            return Err(Failure::input(
                format!("--algo {algo:?} is only defined for cds").to_lowercase(),
            ));
        }
        return Ok(Route::Algo(algo));
    }
    use ModelArg as M;
    let kind = match (problem, args.model) {
        (Problem::Cds, Some(M::Convex)) => ModelKind::CdsConvex,
        (Problem::Cds, None | Some(M::Ilp)) => ModelKind::CdsIlp,
        (Problem::SumCol, Some(M::Nfold)) => ModelKind::SumColNFold,
        (Problem::SumCol, None | Some(M::Convex | M::Convexfd)) => ModelKind::SumColConvex,
        (Problem::SumCol, Some(M::Graver)) => ModelKind::SumColGraver,
        (Problem::MaxQCut, None | Some(M::Quadratic)) => ModelKind::MaxQCut,
        (p, Some(m)) => {
            return Err(Failure::input(
                format!("no model {m:?} for {p}").to_lowercase(),
            ))
        }
    };
    Ok(Route::Model(kind, backend(args.backend)))
}

/// Outcome of one solve, with a witness already checked on the graph.
#[derive(Clone, Debug)]
pub struct Report {
    pub problem: Problem,
    pub route: Route,
    pub value: Option<i64>,
    pub nodes: u64,
    pub millis: u128,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub enum Witness {
    Cds(CdsSolution),
    Coloring(Coloring),
    Partition(Partition),
}

impl Witness {
    /// 1-indexed rendering.
    pub fn render(&self) -> String {
        match self {
            Witness::Cds(s) => {
                let dom: Vec<String> = s.dominators.iter().map(|v| (v + 1).to_string()).collect();
                let assigned: Vec<String> = s
                    .assignment
                    .iter()
                    .enumerate()
                    .filter_map(|(v, d)| d.map(|d| format!("{}->{}", v + 1, d + 1)))
                    .collect();
                format!(
                    "dominators {}; assignment {}",
                    dom.join(" "),
                    assigned.join(" ")
                )
            }
            Witness::Coloring(c) => {
                let colors: Vec<String> = c.colors.iter().map(u32::to_string).collect();
                format!("colors {}", colors.join(" "))
            }
            Witness::Partition(p) => {
                let parts: Vec<String> = p.parts.iter().map(|a| (a + 1).to_string()).collect();
                format!("parts {}", parts.join(" "))
            }
        }
    }
}

pub struct Job<'a> {
    pub graph: &'a Graph,
    pub problem: Problem,
    pub q: Option<usize>,
    pub colors: Option<usize>,
    pub budget: Option<u64>,
}

fn build(kind: ModelKind, t: &TypeGraph, job: &Job) -> Result<IpModel, Failure> {
    Ok(match kind {
        ModelKind::CdsConvex => build_cds_convex(t)?,
        ModelKind::CdsIlp => build_cds_ilp(t)?,
        ModelKind::SumColNFold => build_sumcol_nfold(t, job.colors)?,
        ModelKind::SumColConvex => build_sumcol_convex(t)?,
        ModelKind::SumColGraver => build_sumcol_graver(t)?,
        ModelKind::MaxQCut => build_maxqcut(t, parts(job)?)?,
    })
}

fn parts(job: &Job) -> Result<usize, Failure> {
    job.q
        .ok_or_else(|| Failure::input("max-q-cut needs --q or a 'q' line"))
}

fn solve_model(m: &IpModel, b: Backend, budget: Option<u64>) -> Result<SolveOutcome, Failure> {
    Ok(match b {
        Backend::Boxed => {
            let mut c = BoxedConfig::default();
            if let Some(n) = budget {
                c.node_budget = n;
            }
            solve_boxed_with(m, c)?
        }
        Backend::NFold => {
            let mut c = NFoldConfig::default();
            if let Some(n) = budget {
                c.state_budget = usize::try_from(n).unwrap_or(usize::MAX);
            }
            solve_nfold_with(m, c)?
        }
        Backend::Augment => {
            let mut c = AugmentConfig::default();
            if let Some(n) = budget {
                c.graver.max_elements = usize::try_from(n).unwrap_or(usize::MAX);
            }
            solve_augment_with(m, c)?
        }
    })
}

fn checked(g: &Graph, w: Witness, value: i64) -> Result<Witness, Failure> {
    let ok = match &w {
        Witness::Cds(s) => check_cds(g, s) && s.size() as i64 == value,
        Witness::Coloring(c) => check_coloring(g, c) && c.cost() == value,
        Witness::Partition(p) => p.parts.len() == g.n() && cut_value(g, p) == value,
    };
    if ok {
        Ok(w)
    } else {
        Err(Failure::input(format!(
            "internal error: decoded witness does not certify value {value}"
        )))
    }
}

/// Solves `job` along `route` and checks the witness against the graph.
pub fn run(job: &Job, route: Route) -> Result<Report, Failure> {
    let g = job.graph;
    if job.problem == Problem::Cds && g.capacities().is_none() {
        return Err(Failure::input("cds needs capacities ('c' lines)"));
    }
    let start = Instant::now();
    let t = TypeGraph::of(g);
    let (value, nodes, witness) = match route {
        Route::Algo(AlgoArg::Brute) => {
            let w = match job.problem {
                Problem::Cds => Witness::Cds(cds_brute(g)?),
                Problem::SumCol => Witness::Coloring(sumcol_brute(g)?),
                Problem::MaxQCut => Witness::Partition(maxqcut_brute(g, parts(job)?)?),
            };
            let v = match &w {
                Witness::Cds(s) => s.size() as i64,
                Witness::Coloring(c) => c.cost(),
                Witness::Partition(p) => cut_value(g, p),
            };
            (Some(v), 0, Some(w))
        }
        Route::Algo(a) => {
            let r = if a == AlgoArg::Proximity {
                cds_proximity_solve(&t, g)?
            } else {
                cds_rounding_approx(&t, g)?
            };
            (
                Some(r.solution.size() as i64),
                0,
                Some(Witness::Cds(r.solution)),
            )
        }
        Route::Model(kind, b) => {
            let m = build(kind, &t, job)?;
            match solve_model(&m, b, job.budget)? {
                SolveOutcome::Infeasible { nodes } => (None, nodes, None),
                SolveOutcome::Optimal {
                    point,
                    value,
                    nodes,
                } => {
                    let w = match job.problem {
                        Problem::Cds => {
                            Witness::Cds(decode_cds(&t, g, &point)?.ok_or_else(|| {
                                Failure::input("internal error: optimum does not decode")
                            })?)
                        }
                        Problem::SumCol => {
                            let tag = m.tag.expect("builders tag their models");
                            Witness::Coloring(decode_coloring(&t, g, &point, tag)?)
                        }
                        Problem::MaxQCut => {
                            Witness::Partition(decode_partition(&t, g, &point, parts(job)?)?)
                        }
                    };
                    (Some(value), nodes, Some(w))
                }
            }
        }
    };
    let witness = match (witness, value) {
        (Some(w), Some(v)) => Some(checked(g, w, v)?),
        _ => None,
    };
    Ok(Report {
        problem: job.problem,
        route,
        value,
        nodes,
        millis: start.elapsed().as_millis(),
        witness,
    })
}
