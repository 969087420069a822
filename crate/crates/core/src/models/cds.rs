//! Capacitated Dominating Set over the type graph.
//!
//! Variables: `x_i` = number of dominators taken from class `i` (always the
//! `x_i` highest-capacity members), then `y_ij` for every ordered pair with
//! `j` adjacent to `i` (loops included) = number of non-dominators of class
//! `j` assigned to dominators of class `i`.

use crate::algorithms::matching::max_bipartite_matching;
use crate::error::{Error, Result};
use crate::graph::{Graph, TypeGraph};
use crate::ip::{ConcaveBound, IpModel, ModelTag, Objective, Relation, Sense};

/// Variable indices of the CDS models.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdsLayout {
    pub k: usize,
    /// `(i, j)` for every `y_ij`, in variable order.
    pub pairs: Vec<(usize, usize)>,
}

impl CdsLayout {
    pub fn new(t: &TypeGraph) -> Self {
        let k = t.k();
        let pairs = (0..k)
            .flat_map(|i| t.neighbors(i).map(move |j| (i, j)))
            .collect();
        CdsLayout { k, pairs }
    }

    pub fn num_vars(&self) -> usize {
        self.k + self.pairs.len()
    }

    pub fn x(&self, i: usize) -> usize {
        i
    }

    pub fn y(&self, i: usize, j: usize) -> Option<usize> {
        self.pairs
            .iter()
            .position(|&p| p == (i, j))
            .map(|p| self.k + p)
    }
}

fn tables(t: &TypeGraph) -> Result<Vec<Vec<i64>>> {
    (0..t.k())
        .map(|i| {
            Ok(t.domination_table(i)?
                .into_iter()
                .map(|v| v as i64)
                .collect())
        })
        .collect()
}

/// Objective, boxes and the domination rows shared by both models.
fn skeleton(t: &TypeGraph, layout: &CdsLayout) -> IpModel {
    let k = t.k();
    let n = layout.num_vars();
    let mut lower = vec![0; n];
    let mut upper = vec![0; n];
    for i in 0..k {
        upper[i] = t.weight(i) as i64;
    }
    for (p, &(_, j)) in layout.pairs.iter().enumerate() {
        upper[k + p] = t.weight(j) as i64;
        lower[k + p] = 0;
    }
    let mut cost = vec![0; n];
    cost[..k].fill(1);
    let mut m = IpModel::new(lower, upper, Objective::Linear(cost), Sense::Minimize);
    for j in 0..k {
        // sum_i y_ij + x_j >= |V_j|
        let mut terms: Vec<(usize, i64)> = layout
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, &(_, b))| b == j)
            .map(|(p, _)| (k + p, 1))
            .collect();
        terms.push((j, 1));
        m.add_row(terms, Relation::Ge, t.weight(j) as i64);
    }
    m
}

fn outgoing(layout: &CdsLayout, i: usize) -> Vec<(usize, i64)> {
    layout
        .pairs
        .iter()
        .enumerate()
        .filter(|(_, &(a, _))| a == i)
        .map(|(p, _)| (layout.k + p, 1))
        .collect()
}

/// Capacity rows kept as concave bounds `sum_j y_ij <= f_i(x_i)`.
pub fn build_cds_convex(t: &TypeGraph) -> Result<IpModel> {
    let layout = CdsLayout::new(t);
    let tables = tables(t)?;
    let mut m = skeleton(t, &layout);
    for (i, values) in tables.into_iter().enumerate() {
        m.concave.push(ConcaveBound {
            terms: outgoing(&layout, i),
            arg: i,
            values,
        });
    }
    m.tag = Some(ModelTag::CdsConvex);
    m.initial_point = Some(full_point(t, &layout));
    Ok(m)
}

/// Capacity rows replaced by one tangent row per vertex:
/// `sum_j y_ij <= f_i(l - 1) + c(v_l) (x_i - l + 1)` for `l = 1..=|V_i|`.
pub fn build_cds_ilp(t: &TypeGraph) -> Result<IpModel> {
    let layout = CdsLayout::new(t);
    let tables = tables(t)?;
    let mut m = skeleton(t, &layout);
    for (i, f) in tables.iter().enumerate() {
        let caps = t.sorted_capacities(i)?;
        for l in 1..=t.weight(i) {
            let c = i64::from(caps[l - 1]);
            let mut terms = outgoing(&layout, i);
            if c != 0 {
                terms.push((i, -c));
            }
            m.add_row(terms, Relation::Le, f[l - 1] - c * (l as i64 - 1));
        }
    }
    m.tag = Some(ModelTag::CdsIlp);
    m.initial_point = Some(full_point(t, &layout));
    Ok(m)
}

/// Every vertex a dominator.
fn full_point(t: &TypeGraph, layout: &CdsLayout) -> Vec<i64> {
    let mut x = vec![0; layout.num_vars()];
    for i in 0..t.k() {
        x[i] = t.weight(i) as i64;
    }
    x
}

/// A dominating set with an assignment of every other vertex to a dominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdsSolution {
    /// Sorted dominators.
    pub dominators: Vec<usize>,
    /// `assignment[v]` is the dominator of `v`, `None` for dominators.
    pub assignment: Vec<Option<usize>>,
}

impl CdsSolution {
    pub fn size(&self) -> usize {
        self.dominators.len()
    }

    /// Dominators per class.
    pub fn class_counts(&self, t: &TypeGraph) -> Vec<i64> {
        let class = t.class_of();
        let mut counts = vec![0; t.k()];
        for &v in &self.dominators {
            counts[class[v]] += 1;
        }
        counts
    }
}

/// Assigns every vertex outside `dominators` through a capacitated matching.
/// `None` when some vertex stays undominated.
pub fn solution_for_set(g: &Graph, dominators: &[usize]) -> Result<Option<CdsSolution>> {
    let caps = g.capacities().ok_or(Error::MissingCapacities)?;
    let mut is_dom = vec![false; g.n()];
    for &d in dominators {
        is_dom[d] = true;
    }
    let mut dominators: Vec<usize> = dominators.to_vec();
    dominators.sort_unstable();
    dominators.dedup();
    let slot: Vec<Option<usize>> = {
        let mut s = vec![None; g.n()];
        for (idx, &d) in dominators.iter().enumerate() {
            s[d] = Some(idx);
        }
        s
    };
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !is_dom[v]).collect();
    let adj: Vec<Vec<usize>> = rest
        .iter()
        .map(|&v| g.neighbors(v).iter().filter_map(|&u| slot[u]).collect())
        .collect();
    let left: Vec<u32> = dominators.iter().map(|&d| caps[d]).collect();
    let matching = max_bipartite_matching(&left, &adj);
    if matching.size < rest.len() {
        return Ok(None);
    }
    let mut assignment = vec![None; g.n()];
    for (r, &v) in rest.iter().enumerate() {
        assignment[v] = matching.assignment[r].map(|l| dominators[l]);
    }
    Ok(Some(CdsSolution {
        dominators,
        assignment,
    }))
}

/// Takes `D_i` = the first `x_i` members of class `i` in capacity order and
/// checks it by matching. Only the first `k` entries of `point` are read.
pub fn decode_cds(t: &TypeGraph, g: &Graph, point: &[i64]) -> Result<Option<CdsSolution>> {
    if point.len() < t.k() {
        return Err(Error::LengthMismatch {
            expected: t.k(),
            found: point.len(),
        });
    }
    let mut dominators = Vec::new();
    for i in 0..t.k() {
        let x = point[i];
        if x < 0 || x as usize > t.weight(i) {
            return Err(Error::NotDecodable(format!(
                "x_{i} = {x} outside 0..={}",
                t.weight(i)
            )));
        }
        dominators.extend_from_slice(&t.members(i)[..x as usize]);
    }
    solution_for_set(g, &dominators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::boxed::solve_boxed;

    fn star_instance() -> Graph {
        Graph::star(3).with_capacities(vec![3, 0, 0, 0]).unwrap()
    }

    #[test]
    fn star_optimum_is_one() {
        let g = star_instance();
        let t = TypeGraph::of(&g);
        for m in [build_cds_convex(&t).unwrap(), build_cds_ilp(&t).unwrap()] {
            assert_eq!(solve_boxed(&m).unwrap().value(), Some(1));
        }
    }

    #[test]
    fn zero_capacity_clique_needs_everyone() {
        let g = Graph::complete(3).with_capacities(vec![0; 3]).unwrap();
        let t = TypeGraph::of(&g);
        let out = solve_boxed(&build_cds_convex(&t).unwrap()).unwrap();
        assert_eq!(out.value(), Some(3));
    }

    #[test]
    fn uniform_capacity_k5() {
        let g = Graph::complete(5).with_capacities(vec![4; 5]).unwrap();
        let t = TypeGraph::of(&g);
        assert_eq!(
            solve_boxed(&build_cds_ilp(&t).unwrap()).unwrap().value(),
            Some(1)
        );
    }

    #[test]
    fn tangent_rows() {
        // one independent class of capacities (3, 1, 0) next to a singleton
        let g = Graph::new(4, [(0, 3), (1, 3), (2, 3)])
            .unwrap()
            .with_capacities(vec![3, 1, 0, 0])
            .unwrap();
        let t = TypeGraph::of(&g);
        let m = build_cds_ilp(&t).unwrap();
        let class = (0..t.k()).find(|&i| t.weight(i) == 3).unwrap();
        let layout = CdsLayout::new(&t);
        let tangent: Vec<_> = m
            .rows
            .iter()
            .filter(|r| r.terms.contains(&(class, -3)))
            .collect();
        assert_eq!(tangent.len(), 1);
        assert_eq!(tangent[0].rhs, 0);
        assert!(tangent[0]
            .terms
            .contains(&(layout.y(class, 1 - class).unwrap(), 1)));
        // uniform capacities give identical rows
        let g = Graph::complete(3).with_capacities(vec![2; 3]).unwrap();
        let m = build_cds_ilp(&TypeGraph::of(&g)).unwrap();
        let caps: Vec<_> = m
            .rows
            .iter()
            .filter(|r| r.relation == Relation::Le)
            .collect();
        assert_eq!(caps.len(), 3);
        assert!(caps.iter().all(|r| r.terms == caps[0].terms && r.rhs == 0));
    }

    #[test]
    fn decoding() {
        let g = star_instance();
        let t = TypeGraph::of(&g);
        let center = t.class_of()[0];
        let mut x = vec![0; t.k()];
        x[center] = 1;
        let s = decode_cds(&t, &g, &x).unwrap().unwrap();
        assert_eq!(s.dominators, vec![0]);
        assert_eq!(s.assignment, vec![None, Some(0), Some(0), Some(0)]);
        let all: Vec<i64> = (0..t.k()).map(|i| t.weight(i) as i64).collect();
        assert!(decode_cds(&t, &g, &all)
            .unwrap()
            .unwrap()
            .assignment
            .iter()
            .all(Option::is_none));
        let mut leaf = vec![0; t.k()];
        leaf[1 - center] = 1;
        assert_eq!(decode_cds(&t, &g, &leaf).unwrap(), None);
    }

    #[test]
    fn missing_capacities() {
        let t = TypeGraph::of(&Graph::path(3));
        assert!(matches!(build_cds_ilp(&t), Err(Error::MissingCapacities)));
    }
}
