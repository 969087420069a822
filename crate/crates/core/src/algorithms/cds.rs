//! Capacitated Dominating Set: proximity search around the relaxation,
//! additive rounding, and the exchange that makes a solution capacity-ordered.

use num_traits::ToPrimitive;

use super::oracle::check_cds;
use crate::error::{Error, Result};
use crate::graph::{Graph, TypeGraph};
use crate::lp::{rat, solve_lp, LpOutcome, LpProblem, Rational};
use crate::models::cds::{build_cds_ilp, decode_cds, CdsLayout, CdsSolution};

/// Result of a type-level CDS algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdsRun {
    /// Dominators per class.
    pub x: Vec<i64>,
    pub solution: CdsSolution,
    /// Optimum of the (last) continuous relaxation.
    pub relaxation: Rational,
}

fn to_i64(r: &Rational) -> i64 {
    r.to_integer().to_i64().expect("value fits i64")
}

fn relaxation(t: &TypeGraph) -> Result<LpProblem> {
    Ok(build_cds_ilp(t)?.linear_relaxation())
}

fn solve_relaxation(lp: &LpProblem) -> Result<(Vec<Rational>, Rational)> {
    match solve_lp(lp) {
        LpOutcome::Optimal { point, value } => Ok((point, value)),
        other => Err(Error::Internal(format!(
            "CDS relaxation not optimal: {other:?}"
        ))),
    }
}

/// Per-class integer ranges `[max(0, floor(x_i - k^2)), min(|V_i|, x_i + k^2)]`
/// around a relaxed optimum `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityBox {
    pub center: Vec<Rational>,
    pub radius: i64,
    pub ranges: Vec<(i64, i64)>,
}

impl ProximityBox {
    pub fn around(t: &TypeGraph, center: Vec<Rational>) -> Self {
        let k = t.k() as i64;
        let radius = k * k;
        let ranges = center
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let lo = (to_i64(&c.floor()) - radius).max(0);
                let hi = (to_i64(&(c + rat(radius)).floor())).min(t.weight(i) as i64);
                (lo, hi)
            })
            .collect();
        ProximityBox {
            center,
            radius,
            ranges,
        }
    }

    /// Box around the optimum of the relaxation.
    pub fn for_instance(t: &TypeGraph) -> Result<Self> {
        let (point, _) = solve_relaxation(&relaxation(t)?)?;
        Ok(ProximityBox::around(t, point[..t.k()].to_vec()))
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.ranges.len()
            && x.iter()
                .zip(&self.ranges)
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    pub fn len(&self) -> u128 {
        self.ranges
            .iter()
            .map(|(lo, hi)| (hi - lo + 1).max(0) as u128)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All points, in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if self.is_empty() {
            return out;
        }
        let mut x: Vec<i64> = self.ranges.iter().map(|r| r.0).collect();
        loop {
            out.push(x.clone());
            let Some(i) = (0..x.len()).rev().find(|&i| x[i] < self.ranges[i].1) else {
                return out;
            };
            x[i] += 1;
            for j in i + 1..x.len() {
                x[j] = self.ranges[j].0;
            }
        }
    }
}

const PROXIMITY_LIMIT: u128 = 5_000_000;

/// Smallest valid class-count vector inside the proximity box (ties
/// lexicographic), validated by matching.
pub fn cds_proximity_solve(t: &TypeGraph, g: &Graph) -> Result<CdsRun> {
    let lp = relaxation(t)?;
    let (point, value) = solve_relaxation(&lp)?;
    let bx = ProximityBox::around(t, point[..t.k()].to_vec());
    if bx.len() > PROXIMITY_LIMIT {
        return Err(Error::SizeGuard(format!(
            "proximity box holds {} points",
            bx.len()
        )));
    }
    let mut candidates = bx.points();
    candidates.sort_by_key(|x| x.iter().sum::<i64>());
    for x in candidates {
        if let Some(solution) = decode_cds(t, g, &x)? {
            return Ok(CdsRun {
                x,
                solution,
                relaxation: value,
            });
        }
    }
    Err(Error::Internal(
        "no valid point in the proximity box".into(),
    ))
}

/// Rounds the relaxation up: `y' = ceil(y)`, then `x'_i` is the least count
/// whose domination capacity covers the outgoing `y'` (and that keeps the
/// class dominated). Classes that would need more than `|V_i|` are pinned to
/// `|V_i|` and the relaxation re-solved.
pub fn cds_rounding_approx(t: &TypeGraph, g: &Graph) -> Result<CdsRun> {
    let k = t.k();
    let layout = CdsLayout::new(t);
    let tables: Vec<Vec<u64>> = (0..k)
        .map(|i| t.domination_table(i))
        .collect::<Result<_>>()?;
    let mut lp = relaxation(t)?;
    let mut pinned = vec![false; k];
    loop {
        let (point, value) = solve_relaxation(&lp)?;
        let mut y: Vec<i64> = point[k..].iter().map(|v| to_i64(&v.ceil())).collect();
        let out = |y: &[i64], i: usize| -> i64 {
            layout
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, _))| a == i)
                .map(|(p, _)| y[p])
                .sum()
        };
        let full = |i: usize| *tables[i].last().expect("table starts at 0") as i64;
        let violators: Vec<usize> = (0..k).filter(|&i| out(&y, i) > full(i)).collect();
        let fresh: Vec<usize> = violators.iter().copied().filter(|&i| !pinned[i]).collect();
        if !fresh.is_empty() {
            for i in fresh {
                pinned[i] = true;
                let w = rat(t.weight(i) as i64);
                lp.set_bounds(layout.x(i), Some(w.clone()), Some(w));
            }
            continue;
        }
        // pinned classes still over capacity after ceiling: give back the excess
        for i in violators {
            let mut excess = out(&y, i) - full(i);
            for (p, _) in layout
                .pairs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, &(a, _))| a == i)
            {
                let cut = excess.min(y[p]);
                y[p] -= cut;
                excess -= cut;
            }
        }
        let mut x = vec![0; k];
        for i in 0..k {
            let need = out(&y, i);
            let by_capacity = tables[i]
                .iter()
                .position(|&f| f as i64 >= need)
                .expect("need fits") as i64;
            let incoming: i64 = layout
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, &(_, b))| b == i)
                .map(|(p, _)| y[p])
                .sum();
            let by_domination = (t.weight(i) as i64 - incoming).max(0);
            x[i] = by_capacity.max(by_domination);
            if pinned[i] {
                x[i] = t.weight(i) as i64;
            }
        }
        let solution = decode_cds(t, g, &x)?
            .ok_or_else(|| Error::Internal(format!("rounded point {x:?} is not a solution")))?;
        return Ok(CdsRun {
            x,
            solution,
            relaxation: value,
        });
    }
}

/// `sum_i |D_i △ V_i[1:|D_i|]|` with `V_i` in capacity order.
pub fn capacity_disorder(t: &TypeGraph, s: &CdsSolution) -> usize {
    let mut is_dom = vec![false; t.n()];
    for &d in &s.dominators {
        is_dom[d] = true;
    }
    (0..t.k())
        .map(|i| {
            let members = t.members(i);
            let count = members.iter().filter(|&&v| is_dom[v]).count();
            // elements of the prefix that are not dominators, counted twice
            2 * members[..count].iter().filter(|&&v| !is_dom[v]).count()
        })
        .sum()
}

/// Exchanges performed by [`capacity_reorder`], starting with `s` itself.
pub fn capacity_reorder_steps(g: &Graph, s: &CdsSolution) -> Result<Vec<CdsSolution>> {
    if !check_cds(g, s) {
        return Err(Error::InvalidSolution(
            "not a capacitated dominating set".into(),
        ));
    }
    let t = TypeGraph::of(g);
    let mut steps = vec![s.clone()];
    let mut is_dom = vec![false; g.n()];
    for &d in &s.dominators {
        is_dom[d] = true;
    }
    let mut assignment = s.assignment.clone();
    loop {
        // a dominator u outside its class prefix, and a prefix vertex w that is not a dominator
        let swap = (0..t.k()).find_map(|i| {
            let members = t.members(i);
            let count = members.iter().filter(|&&v| is_dom[v]).count();
            let w = members[..count].iter().copied().find(|&v| !is_dom[v])?;
            let u = members[count..].iter().copied().find(|&v| is_dom[v])?;
            Some((u, w))
        });
        let Some((u, w)) = swap else { break };
        // w takes over everything u dominated; u is dominated by w or by w's old dominator
        let old = assignment[w].expect("non-dominator has a dominator");
        for a in assignment.iter_mut() {
            if *a == Some(u) {
                *a = Some(w);
            }
        }
        assignment[w] = None;
        assignment[u] = Some(if old == u { w } else { old });
        is_dom[u] = false;
        is_dom[w] = true;
        let dominators = (0..g.n()).filter(|&v| is_dom[v]).collect();
        let next = CdsSolution {
            dominators,
            assignment: assignment.clone(),
        };
        debug_assert!(check_cds(g, &next));
        steps.push(next);
    }
    Ok(steps)
}

/// Capacity-ordered solution of the same size.
pub fn capacity_reorder(g: &Graph, s: &CdsSolution) -> Result<CdsSolution> {
    Ok(capacity_reorder_steps(g, s)?
        .pop()
        .expect("at least the input"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::oracle::cds_brute;

    fn star() -> Graph {
        Graph::star(3).with_capacities(vec![3, 0, 0, 0]).unwrap()
    }

    #[test]
    fn proximity_on_small_instances() {
        let g = star();
        let t = TypeGraph::of(&g);
        let run = cds_proximity_solve(&t, &g).unwrap();
        assert_eq!(run.solution.size(), 1);
        assert!(run.relaxation <= rat(1));
        let g = Graph::complete(5).with_capacities(vec![0; 5]).unwrap();
        let t = TypeGraph::of(&g);
        assert_eq!(cds_proximity_solve(&t, &g).unwrap().solution.size(), 5);
    }

    #[test]
    fn rounding_stays_within_additive_bound() {
        let g = star();
        let t = TypeGraph::of(&g);
        let run = cds_rounding_approx(&t, &g).unwrap();
        let k = t.k();
        assert!((1..=1 + k * k).contains(&run.solution.size()));
        assert!(check_cds(&g, &run.solution));
    }

    #[test]
    fn box_points_are_lexicographic() {
        let t = TypeGraph::of(&Graph::path(2).with_capacities(vec![1, 1]).unwrap());
        let bx = ProximityBox {
            center: vec![rat(0)],
            radius: 1,
            ranges: vec![(0, 2)],
        };
        assert_eq!(bx.points(), vec![vec![0], vec![1], vec![2]]);
        // one class of weight 2, radius 1: floor(1/2 + 1) caps the range
        let around = ProximityBox::around(&t, vec![Rational::new(1.into(), 2.into())]);
        assert_eq!(around.ranges, vec![(0, 1)]);
    }

    #[test]
    fn reorder_swaps_to_high_capacity_twin() {
        // vertices 0 and 1 are twins (both adjacent to 2); capacity of 1 is higher
        let g = Graph::new(3, [(0, 2), (1, 2)])
            .unwrap()
            .with_capacities(vec![1, 2, 1])
            .unwrap();
        let s = CdsSolution {
            dominators: vec![0, 2],
            assignment: vec![None, Some(2), None],
        };
        assert!(check_cds(&g, &s));
        let r = capacity_reorder(&g, &s).unwrap();
        assert_eq!(r.dominators, vec![1, 2]);
        assert!(check_cds(&g, &r));
        let t = TypeGraph::of(&g);
        assert_eq!(capacity_disorder(&t, &s), 2);
        assert_eq!(capacity_disorder(&t, &r), 0);
        assert_eq!(capacity_reorder(&g, &r).unwrap(), r);
    }

    #[test]
    fn reorder_rejects_invalid_input() {
        let g = star();
        let bad = CdsSolution {
            dominators: vec![1],
            assignment: vec![Some(1), None, Some(1), Some(1)],
        };
        assert!(matches!(
            capacity_reorder(&g, &bad),
            Err(Error::InvalidSolution(_))
        ));
        let ok = cds_brute(&g).unwrap();
        assert_eq!(capacity_reorder(&g, &ok).unwrap(), ok);
    }
}
