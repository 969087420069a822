//! Exhaustive oracles and witness checks on the original graph.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::models::cds::{solution_for_set, CdsSolution};
use crate::models::maxcut::Partition;
use crate::models::sumcol::Coloring;

pub const CDS_BRUTE_LIMIT: usize = 10;
pub const SUMCOL_BRUTE_LIMIT: usize = 9;
pub const MAXCUT_BRUTE_LIMIT: usize = 10;

fn guard(g: &Graph, limit: usize, what: &str) -> Result<()> {
    if g.n() > limit {
        return Err(Error::SizeGuard(format!(
            "{what} oracle limited to {limit} vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// Smallest capacitated dominating set over all vertex subsets, by size then
/// lexicographically. Feasibility of each subset is decided by matching on
/// the explicit set, with no ordering assumption.
pub fn cds_brute(g: &Graph) -> Result<CdsSolution> {
    guard(g, CDS_BRUTE_LIMIT, "CDS")?;
    g.capacities().ok_or(Error::MissingCapacities)?;
    let n = g.n();
    for size in 0..=n {
        let mut set: Vec<usize> = (0..size).collect();
        loop {
            if let Some(s) = solution_for_set(g, &set)? {
                return Ok(s);
            }
            // next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| set[i] < n - size + i) else {
                break;
            };
            set[i] += 1;
            for j in i + 1..size {
                set[j] = set[j - 1] + 1;
            }
        }
    }
    Err(Error::Internal(
        "the full vertex set always dominates".into(),
    ))
}

/// Minimum-sum proper coloring by depth-first search over vertices. Some
/// optimum gives every vertex a color of at most its degree plus one, since
/// recoloring a vertex to its smallest free color never raises the sum.
pub fn sumcol_brute(g: &Graph) -> Result<Coloring> {
    guard(g, SUMCOL_BRUTE_LIMIT, "Sum Coloring")?;
    let n = g.n();
    let mut colors = vec![0u32; n];
    let mut best = (i64::MAX, vec![0u32; n]);
    fn go(v: usize, sum: i64, g: &Graph, colors: &mut Vec<u32>, best: &mut (i64, Vec<u32>)) {
        let n = g.n();
        // every remaining vertex costs at least 1
        if sum + (n - v) as i64 >= best.0 {
            return;
        }
        if v == n {
            *best = (sum, colors.clone());
            return;
        }
        for c in 1..=g.degree(v) as u32 + 1 {
            if g.neighbors(v).iter().any(|&u| u < v && colors[u] == c) {
                continue;
            }
            colors[v] = c;
            go(v + 1, sum + i64::from(c), g, colors, best);
        }
        colors[v] = 0;
    }
    go(0, 0, g, &mut colors, &mut best);
    Ok(Coloring { colors: best.1 })
}

/// Maximum q-cut over all assignments in restricted-growth order.
pub fn maxqcut_brute(g: &Graph, q: usize) -> Result<Partition> {
    guard(g, MAXCUT_BRUTE_LIMIT, "Max-q-Cut")?;
    if q < 2 {
        return Err(Error::InvalidModel(format!(
            "need at least 2 parts, got {q}"
        )));
    }
    let n = g.n();
    let mut parts = vec![0usize; n];
    let mut best = (-1i64, vec![0usize; n]);
    fn go(
        v: usize,
        used: usize,
        q: usize,
        g: &Graph,
        parts: &mut Vec<usize>,
        best: &mut (i64, Vec<usize>),
    ) {
        if v == g.n() {
            let value = g.edges().filter(|&(a, b)| parts[a] != parts[b]).count() as i64;
            if value > best.0 {
                *best = (value, parts.clone());
            }
            return;
        }
        for p in 0..q.min(used + 1) {
            parts[v] = p;
            go(v + 1, used.max(p + 1), q, g, parts, best);
        }
    }
    go(0, 0, q, g, &mut parts, &mut best);
    Ok(Partition { parts: best.1, q })
}

/// Every non-dominator is assigned to an adjacent dominator, dominators are
/// unassigned and no dominator exceeds its capacity.
pub fn check_cds(g: &Graph, s: &CdsSolution) -> bool {
    let Some(caps) = g.capacities() else {
        return false;
    };
    if s.assignment.len() != g.n() || s.dominators.iter().any(|&d| d >= g.n()) {
        return false;
    }
    let mut is_dom = vec![false; g.n()];
    for &d in &s.dominators {
        is_dom[d] = true;
    }
    let mut load = vec![0u32; g.n()];
    for v in 0..g.n() {
        match (is_dom[v], s.assignment[v]) {
            (true, None) => {}
            (false, Some(d)) if d < g.n() && is_dom[d] && g.has_edge(v, d) => load[d] += 1,
            _ => return false,
        }
    }
    (0..g.n()).all(|v| load[v] <= caps[v])
}

/// Colors are positive and no edge is monochromatic.
pub fn check_coloring(g: &Graph, c: &Coloring) -> bool {
    c.colors.len() == g.n()
        && c.colors.iter().all(|&x| x > 0)
        && g.edges().all(|(u, v)| c.colors[u] != c.colors[v])
}

/// Edges of `g` between different parts.
pub fn cut_value(g: &Graph, p: &Partition) -> i64 {
    g.edges().filter(|&(u, v)| p.parts[u] != p.parts[v]).count() as i64
}
