//! Augmentation for n-fold programs.
//!
//! Each step picks one move per brick from the bounded kernel of `A2`
//! (`|h|_inf <= g_inf(A2)`) such that the `A1` contributions cancel. The best
//! combination for a step length `lambda` is found by dynamic programming
//! over bricks with the running `A1` sum as state; the best `lambda` wins.

use std::collections::BTreeMap;

use super::boxed::{solve_boxed_with, BoxedConfig};
use super::SolveOutcome;
use crate::error::{Error, Result};
use crate::graver::{enumerate_kernel, graver_basis_with, GraverLimits};
use crate::ip::{IpModel, Layout, NFoldBlocks, Objective, Relation, Sense, Univariate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NFoldConfig {
    /// Total DP states allowed in a single step.
    pub state_budget: usize,
    pub max_steps: usize,
    /// Node budget of the boxed feasibility search used when the model has no
    /// feasible hint.
    pub feasibility_nodes: u64,
    pub graver: GraverLimits,
}

impl Default for NFoldConfig {
    fn default() -> Self {
        NFoldConfig {
            state_budget: 5_000_000,
            max_steps: 100_000,
            feasibility_nodes: 20_000_000,
            graver: GraverLimits::default(),
        }
    }
}

pub fn solve_nfold(model: &IpModel) -> Result<SolveOutcome> {
    solve_nfold_with(model, NFoldConfig::default())
}

/// A feasible point from the model's hint, or from a boxed search with the
/// objective dropped.
pub(crate) fn initial_point(model: &IpModel, nodes: u64) -> Result<Option<Vec<i64>>> {
    if let Some(x0) = &model.initial_point {
        if model.is_feasible(x0) {
            return Ok(Some(x0.clone()));
        }
    }
    let mut probe = model.clone();
    probe.objective = Objective::Linear(vec![0; model.num_vars()]);
    probe.sense = Sense::Minimize;
    let config = BoxedConfig {
        node_budget: nodes,
        lp_bound: false,
        ..BoxedConfig::default()
    };
    Ok(solve_boxed_with(&probe, config)?
        .point()
        .map(<[i64]>::to_vec))
}

pub fn solve_nfold_with(model: &IpModel, config: NFoldConfig) -> Result<SolveOutcome> {
    model.validate()?;
    let Some(Layout::NFold(blocks)) = model.layout() else {
        return Err(Error::InvalidModel("model has no n-fold annotation".into()));
    };
    if model.sense != Sense::Minimize {
        return Err(Error::InvalidModel("n-fold backend minimises".into()));
    }
    let parts = model.objective.separable_parts().ok_or_else(|| {
        Error::InvalidModel(format!(
            "{} objective is not separable",
            model.objective.name()
        ))
    })?;
    if model.rows.iter().any(|r| r.relation != Relation::Eq) {
        return Err(Error::InvalidModel(
            "n-fold backend needs equality rows".into(),
        ));
    }
    let Some(mut x) = initial_point(model, config.feasibility_nodes)? else {
        return Ok(SolveOutcome::Infeasible { nodes: 0 });
    };
    let moves = brick_moves(blocks, config.graver)?;
    let max_lambda = model
        .lower
        .iter()
        .zip(&model.upper)
        .map(|(l, u)| u - l)
        .max()
        .unwrap_or(0);
    let mut steps = 0u64;
    loop {
        let mut best: Option<(i64, i64, Vec<usize>)> = None;
        for lambda in 1..=max_lambda {
            if let Some((delta, choice)) = best_combination(
                model,
                blocks,
                &parts,
                &moves,
                &x,
                lambda,
                config.state_budget,
            )? {
                if delta < 0 && best.as_ref().is_none_or(|b| delta < b.0) {
                    best = Some((delta, lambda, choice));
                }
            }
        }
        let Some((_, lambda, choice)) = best else {
            break;
        };
        for (brick, &m) in choice.iter().enumerate() {
            for (j, h) in moves[m].h.iter().enumerate() {
                x[brick * blocks.t + j] += lambda * h;
            }
        }
        debug_assert!(model.is_feasible(&x));
        steps += 1;
        if steps as usize > config.max_steps {
            return Err(Error::BudgetExceeded(format!(
                "more than {} augmentation steps",
                config.max_steps
            )));
        }
    }
    let value = model.eval(&x);
    Ok(SolveOutcome::Optimal {
        point: x,
        value,
        nodes: steps,
    })
}

struct BrickMove {
    h: Vec<i64>,
    top: Vec<i64>,
}

/// Zero first, then every non-zero kernel vector of `A2` with
/// `|h|_inf <= g_inf(A2)` in lexicographic order.
fn brick_moves(blocks: &NFoldBlocks, limits: GraverLimits) -> Result<Vec<BrickMove>> {
    let cap = graver_basis_with(&blocks.a2, None, limits)?.g_inf()?.max(1);
    let mut kernel = Vec::new();
    let mut budget = limits.max_nodes;
    enumerate_kernel(&blocks.a2, cap, &mut budget, &mut |v| {
        kernel.push(v.to_vec())
    })?;
    kernel.sort();
    let mut out = vec![BrickMove {
        h: vec![0; blocks.t],
        top: vec![0; blocks.r],
    }];
    out.extend(kernel.into_iter().map(|h| BrickMove {
        top: blocks.a1.mul_vec(&h),
        h,
    }));
    Ok(out)
}

type Choice = (i64, Vec<usize>);

/// Minimum objective change over move combinations with zero `A1` total.
/// DP entry: objective delta so far, predecessor state, brick move index.
type Entry = (i64, Vec<i64>, usize);

fn best_combination(
    model: &IpModel,
    blocks: &NFoldBlocks,
    parts: &[Univariate],
    moves: &[BrickMove],
    x: &[i64],
    lambda: i64,
    budget: usize,
) -> Result<Option<Choice>> {
    let t = blocks.t;
    // layers[b]: state after bricks 0..b -> (delta, previous state, move)
    let mut layers: Vec<BTreeMap<Vec<i64>, Entry>> = Vec::with_capacity(blocks.n + 1);
    let mut start = BTreeMap::new();
    start.insert(vec![0i64; blocks.r], (0i64, Vec::new(), 0usize));
    layers.push(start);
    let mut states = 1usize;
    for brick in 0..blocks.n {
        let base = brick * t;
        // objective change of every move that stays in the box
        let options: Vec<(usize, i64)> = moves
            .iter()
            .enumerate()
            .filter_map(|(m, mv)| {
                let mut delta = 0;
                for (j, &h) in mv.h.iter().enumerate() {
                    let v = x[base + j] + lambda * h;
                    if v < model.lower[base + j] || v > model.upper[base + j] {
                        return None;
                    }
                    if h != 0 {
                        delta += parts[base + j].eval(v) - parts[base + j].eval(x[base + j]);
                    }
                }
                Some((m, delta))
            })
            .collect();
        let mut next: BTreeMap<Vec<i64>, (i64, Vec<i64>, usize)> = BTreeMap::new();
        for (state, (delta, _, _)) in &layers[brick] {
            for &(m, d) in &options {
                let key: Vec<i64> = state
                    .iter()
                    .zip(&moves[m].top)
                    .map(|(s, a)| s + lambda * a)
                    .collect();
                let total = delta + d;
                match next.get(&key) {
                    Some((old, _, _)) if *old <= total => {}
                    _ => {
                        next.insert(key, (total, state.clone(), m));
                    }
                }
            }
        }
        states += next.len();
        if states > budget {
            return Err(Error::BudgetExceeded(format!(
                "n-fold DP exceeded {budget} states"
            )));
        }
        layers.push(next);
    }
    let zero = vec![0i64; blocks.r];
    let Some((delta, _, _)) = layers[blocks.n].get(&zero) else {
        return Ok(None);
    };
    let delta = *delta;
    let mut choice = vec![0; blocks.n];
    let mut state = zero;
    for brick in (0..blocks.n).rev() {
        let (_, prev, m) = layers[brick + 1][&state].clone();
        choice[brick] = m;
        state = prev;
    }
    Ok(Some((delta, choice)))
}
