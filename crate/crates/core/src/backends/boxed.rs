//! Depth-first branch-and-bound over the integer box.
//!
//! Variables are fixed in index order, values ascending. Each row keeps the
//! activity of its fixed part and the attainable range of its free part,
//! which narrows the domain of the next variable. The first optimum found is
//! the lexicographically smallest, so a node is cut as soon as its bound
//! reaches the incumbent.

use num_traits::ToPrimitive;

use super::SolveOutcome;
use crate::error::{Error, Result};
use crate::ip::{IpModel, Objective, Relation, Sense};
use crate::lp::{rat, solve_lp, LpOutcome, LpProblem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxedConfig {
    pub node_budget: u64,
    /// Bound linear objectives by the LP relaxation of each node.
    pub lp_bound: bool,
    /// Skip the LP bound above this many variables.
    pub lp_max_vars: usize,
}

impl Default for BoxedConfig {
    fn default() -> Self {
        BoxedConfig {
            node_budget: 20_000_000,
            lp_bound: true,
            lp_max_vars: 32,
        }
    }
}

pub fn solve_boxed(model: &IpModel) -> Result<SolveOutcome> {
    solve_boxed_with(model, BoxedConfig::default())
}

pub fn solve_boxed_with(model: &IpModel, config: BoxedConfig) -> Result<SolveOutcome> {
    model.validate()?;
    let mut search = Search::new(model, config);
    if !search.root_consistent() {
        return Ok(SolveOutcome::Infeasible { nodes: 0 });
    }
    search.descend(0)?;
    let nodes = search.nodes;
    Ok(match search.best {
        Some((point, _)) => {
            let value = model.eval(&point);
            SolveOutcome::Optimal {
                point,
                value,
                nodes,
            }
        }
        None => SolveOutcome::Infeasible { nodes },
    })
}

fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -floor_div(-a, b)
}

/// Row over the model's variables with suffix ranges of its free part.
struct Row {
    relation: Relation,
    rhs: i64,
    /// `suffix[p]` = (min, max) of the contribution of variables `>= p`.
    suffix: Vec<(i64, i64)>,
}

fn suffix_ranges(
    n: usize,
    terms: &[(usize, i64)],
    lower: &[i64],
    upper: &[i64],
) -> Vec<(i64, i64)> {
    let mut per_var = vec![(0i64, 0i64); n];
    for &(j, a) in terms {
        let (p, q) = (a * lower[j], a * upper[j]);
        per_var[j].0 += p.min(q);
        per_var[j].1 += p.max(q);
    }
    let mut suffix = vec![(0, 0); n + 1];
    for j in (0..n).rev() {
        suffix[j] = (
            suffix[j + 1].0 + per_var[j].0,
            suffix[j + 1].1 + per_var[j].1,
        );
    }
    suffix
}

enum Bound {
    None,
    /// Minimisation key of each variable's best value, as suffix sums.
    Suffix(Vec<i64>),
}

struct Search<'a> {
    model: &'a IpModel,
    config: BoxedConfig,
    n: usize,
    sign: i64,
    rows: Vec<Row>,
    activity: Vec<i64>,
    /// (row, coefficient) per variable; concave rows follow the linear ones.
    occurs: Vec<Vec<(usize, i64)>>,
    caps: Vec<(usize, Vec<i64>, i64)>,
    bound: Bound,
    lp: Option<LpProblem>,
    x: Vec<i64>,
    best: Option<(Vec<i64>, i64)>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(model: &'a IpModel, config: BoxedConfig) -> Self {
        let n = model.num_vars();
        let (lower, upper) = (&model.lower, &model.upper);
        let sign = if model.sense == Sense::Minimize {
            1
        } else {
            -1
        };
        let mut rows = Vec::new();
        let mut occurs = vec![Vec::new(); n];
        for row in &model.rows {
            for &(j, a) in &row.terms {
                occurs[j].push((rows.len(), a));
            }
            rows.push(Row {
                relation: row.relation,
                rhs: row.rhs,
                suffix: suffix_ranges(n, &row.terms, lower, upper),
            });
        }
        let mut caps = Vec::new();
        for c in &model.concave {
            for &(j, a) in &c.terms {
                occurs[j].push((rows.len(), a));
            }
            let best = c.values.iter().copied().max().unwrap_or(0);
            caps.push((c.arg, c.values.clone(), best));
            rows.push(Row {
                relation: Relation::Le,
                rhs: best,
                suffix: suffix_ranges(n, &c.terms, lower, upper),
            });
        }
        let per_var: Option<Vec<i64>> = match (&model.objective, model.sense) {
            (Objective::Linear(c), _) => Some(
                (0..n)
                    .map(|j| (sign * c[j] * lower[j]).min(sign * c[j] * upper[j]))
                    .collect(),
            ),
            (Objective::Separable(fs), Sense::Minimize) => {
                Some((0..n).map(|j| fs[j].min_on(lower[j], upper[j])).collect())
            }
            _ => None,
        };
        let bound = match per_var {
            Some(v) => {
                let mut suffix = vec![0; n + 1];
                for j in (0..n).rev() {
                    suffix[j] = suffix[j + 1] + v[j];
                }
                Bound::Suffix(suffix)
            }
            None => Bound::None,
        };
        let lp = (config.lp_bound
            && n <= config.lp_max_vars
            && matches!(model.objective, Objective::Linear(_)))
        .then(|| model.linear_relaxation());
        Search {
            model,
            config,
            n,
            sign,
            activity: vec![0; rows.len()],
            rows,
            occurs,
            caps,
            bound,
            lp,
            // only the fixed prefix is meaningful
            x: vec![0; n],
            best: None,
            nodes: 0,
        }
    }

    fn row_ok(&self, r: usize, p: usize) -> bool {
        let row = &self.rows[r];
        let (lo, hi) = (
            self.activity[r] + row.suffix[p].0,
            self.activity[r] + row.suffix[p].1,
        );
        match row.relation {
            Relation::Le => lo <= row.rhs,
            Relation::Ge => hi >= row.rhs,
            Relation::Eq => lo <= row.rhs && row.rhs <= hi,
        }
    }

    fn root_consistent(&self) -> bool {
        (0..self.rows.len()).all(|r| self.row_ok(r, 0))
    }

    /// Domain of variable `p` after narrowing by every row containing it.
    fn domain(&self, p: usize) -> (i64, i64) {
        let (mut lo, mut hi) = (self.model.lower[p], self.model.upper[p]);
        for &(r, a) in &self.occurs[p] {
            if a == 0 {
                continue;
            }
            let row = &self.rows[r];
            let (rest_lo, rest_hi) = row.suffix[p + 1];
            let base = self.activity[r];
            // a x <= top and a x >= bottom
            let top = matches!(row.relation, Relation::Le | Relation::Eq)
                .then(|| row.rhs - base - rest_lo);
            let bottom = matches!(row.relation, Relation::Ge | Relation::Eq)
                .then(|| row.rhs - base - rest_hi);
            if let Some(t) = top {
                if a > 0 {
                    hi = hi.min(floor_div(t, a));
                } else {
                    lo = lo.max(ceil_div(t, a));
                }
            }
            if let Some(b) = bottom {
                if a > 0 {
                    lo = lo.max(ceil_div(b, a));
                } else {
                    hi = hi.min(floor_div(b, a));
                }
            }
        }
        (lo, hi)
    }

    fn set(&mut self, p: usize, v: i64) {
        let delta = v - self.x[p];
        if delta != 0 {
            for &(r, a) in &self.occurs[p] {
                self.activity[r] += a * delta;
            }
        }
        self.x[p] = v;
    }

    /// Concave rows whose argument is fixed (`arg <= p`) must respect `f(x_arg)`.
    fn concave_ok(&self, p: usize) -> bool {
        let first = self.model.rows.len();
        self.caps.iter().enumerate().all(|(c, (arg, values, _))| {
            if *arg > p {
                return true;
            }
            let r = first + c;
            let cap = values[(self.x[*arg] - self.model.lower[*arg]) as usize];
            self.activity[r] + self.rows[r].suffix[p + 1].0 <= cap
        })
    }

    /// Lower bound on the minimisation key below a node where `0..=p` are fixed.
    fn bound(&self, p: usize) -> Option<i64> {
        let Bound::Suffix(suffix) = &self.bound else {
            return None;
        };
        let fixed: i64 = match &self.model.objective {
            Objective::Linear(c) => (0..=p).map(|j| self.sign * c[j] * self.x[j]).sum(),
            Objective::Separable(fs) => (0..=p).map(|j| fs[j].eval(self.x[j])).sum(),
            _ => return None,
        };
        Some(fixed + suffix[p + 1])
    }

    /// LP bound, or `None` when the relaxation is infeasible.
    fn lp_bound(&self, p: usize) -> Option<Option<i64>> {
        let lp = self.lp.as_ref()?;
        let mut node = lp.clone();
        for j in 0..=p {
            node.set_bounds(j, Some(rat(self.x[j])), Some(rat(self.x[j])));
        }
        Some(match solve_lp(&node) {
            LpOutcome::Optimal { value, .. } => {
                let key = if self.sign > 0 {
                    value.ceil()
                } else {
                    (-value).ceil()
                };
                Some(key.to_integer().to_i64().expect("LP bound fits i64"))
            }
            LpOutcome::Infeasible => None,
            // boxes are finite
            LpOutcome::Unbounded => Some(i64::MIN),
        })
    }

    fn key(&self) -> i64 {
        self.sign * self.model.eval(&self.x)
    }

    fn descend(&mut self, p: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.config.node_budget {
            return Err(Error::BudgetExceeded(format!(
                "boxed search exceeded {} nodes",
                self.config.node_budget
            )));
        }
        if p == self.n {
            let key = self.key();
            if self.best.as_ref().is_none_or(|(_, best)| key < *best) {
                self.best = Some((self.x.clone(), key));
            }
            return Ok(());
        }
        let (lo, hi) = self.domain(p);
        for v in lo..=hi {
            self.set(p, v);
            if !self.concave_ok(p) {
                continue;
            }
            if let (Some((_, best)), Some(b)) = (&self.best, self.bound(p)) {
                if b >= *best {
                    continue;
                }
            }
            if p + 1 < self.n {
                match self.lp_bound(p) {
                    Some(None) => continue,
                    Some(Some(b)) if self.best.as_ref().is_some_and(|(_, best)| b >= *best) => {
                        continue
                    }
                    _ => {}
                }
            }
            self.descend(p + 1)?;
        }
        self.set(p, 0);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ip::{ConcaveBound, Univariate};

    #[test]
    fn division_helpers() {
        assert_eq!(
            (
                floor_div(7, 2),
                floor_div(-7, 2),
                floor_div(7, -2),
                floor_div(-7, -2)
            ),
            (3, -4, -4, 3)
        );
        assert_eq!(
            (
                ceil_div(7, 2),
                ceil_div(-7, 2),
                ceil_div(7, -2),
                ceil_div(-7, -2)
            ),
            (4, -3, -3, 4)
        );
    }

    #[test]
    fn single_variable() {
        let m = IpModel::new(
            vec![0],
            vec![9],
            Objective::Linear(vec![1]),
            Sense::Minimize,
        );
        assert_eq!(
            solve_boxed(&m).unwrap(),
            SolveOutcome::Optimal {
                point: vec![0],
                value: 0,
                nodes: 2
            }
        );
    }

    #[test]
    fn lexicographically_smallest_optimum() {
        // x + y = 3, minimise 0: first point in lex order is (0, 3)
        let mut m = IpModel::new(
            vec![0, 0],
            vec![3, 3],
            Objective::Linear(vec![0, 0]),
            Sense::Minimize,
        );
        m.add_row(vec![(0, 1), (1, 1)], Relation::Eq, 3);
        assert_eq!(solve_boxed(&m).unwrap().point(), Some(&[0, 3][..]));
        m.sense = Sense::Maximize;
        m.objective = Objective::Linear(vec![1, 1]);
        assert_eq!(solve_boxed(&m).unwrap().point(), Some(&[0, 3][..]));
    }

    #[test]
    fn infeasible_and_budget() {
        let mut m = IpModel::new(
            vec![0, 0],
            vec![1, 1],
            Objective::Linear(vec![1, 1]),
            Sense::Minimize,
        );
        m.add_row(vec![(0, 2), (1, 2)], Relation::Eq, 3);
        assert!(matches!(
            solve_boxed(&m).unwrap(),
            SolveOutcome::Infeasible { .. }
        ));
        let big = IpModel::new(
            vec![0; 30],
            vec![1; 30],
            Objective::Quadratic {
                linear: vec![0; 30],
                terms: vec![],
            },
            Sense::Minimize,
        );
        let tight = BoxedConfig {
            node_budget: 1000,
            ..BoxedConfig::default()
        };
        assert!(matches!(
            solve_boxed_with(&big, tight),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn concave_rows_are_enforced() {
        // y <= f(x) with f = (0, 3, 4); need y >= 4, minimise x
        let mut m = IpModel::new(
            vec![0, 0],
            vec![2, 5],
            Objective::Linear(vec![1, 0]),
            Sense::Minimize,
        );
        m.concave.push(ConcaveBound {
            terms: vec![(1, 1)],
            arg: 0,
            values: vec![0, 3, 4],
        });
        m.add_row(vec![(1, 1)], Relation::Ge, 4);
        assert_eq!(solve_boxed(&m).unwrap().point(), Some(&[2, 4][..]));
    }

    #[test]
    fn separable_and_quadratic_objectives() {
        let m = IpModel::new(
            vec![-5, -5],
            vec![5, 5],
            Objective::Separable(vec![
                Univariate::Quadratic { a: 1, b: -3 },
                Univariate::Linear(2),
            ]),
            Sense::Minimize,
        );
        assert_eq!(solve_boxed(&m).unwrap().point(), Some(&[1, -5][..]));
        // maximise x0 * x1 over [-2, 3]^2
        let q = IpModel::new(
            vec![-2, -2],
            vec![3, 3],
            Objective::Quadratic {
                linear: vec![0, 0],
                terms: vec![(0, 1, 1)],
            },
            Sense::Maximize,
        );
        assert_eq!(solve_boxed(&q).unwrap().value(), Some(9));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn brute(m: &IpModel) -> Option<i64> {
            let n = m.num_vars();
            let mut x = m.lower.clone();
            let mut best: Option<i64> = None;
            loop {
                if m.is_feasible(&x) {
                    let v = m.eval(&x);
                    let better = match (best, m.sense) {
                        (None, _) => true,
                        (Some(b), Sense::Minimize) => v < b,
                        (Some(b), Sense::Maximize) => v > b,
                    };
                    if better {
                        best = Some(v);
                    }
                }
                let mut j = 0;
                while j < n && x[j] == m.upper[j] {
                    x[j] = m.lower[j];
                    j += 1;
                }
                if j == n {
                    return best;
                }
                x[j] += 1;
            }
        }

        fn arb_model() -> impl Strategy<Value = IpModel> {
            (1usize..5, 0usize..4).prop_flat_map(|(n, m)| {
                (
                    proptest::collection::vec((-3i64..1, 0i64..3), n),
                    proptest::collection::vec(-4i64..5, n),
                    proptest::collection::vec(
                        (proptest::collection::vec(-2i64..3, n), 0usize..3, -4i64..5),
                        m,
                    ),
                    any::<bool>(),
                )
                    .prop_map(move |(boxes, cost, rows, max)| {
                        let lower: Vec<i64> = boxes.iter().map(|b| b.0).collect();
                        let upper: Vec<i64> = boxes.iter().map(|b| b.0 + b.1).collect();
                        let sense = if max {
                            Sense::Maximize
                        } else {
                            Sense::Minimize
                        };
                        let mut model = IpModel::new(lower, upper, Objective::Linear(cost), sense);
                        for (coef, rel, rhs) in rows {
                            let rel = [Relation::Le, Relation::Eq, Relation::Ge][rel];
                            model.add_row(coef.into_iter().enumerate().collect(), rel, rhs);
                        }
                        model
                    })
            })
        }

        proptest! {
            #[test]
            fn matches_enumeration(m in arb_model()) {
                let out = solve_boxed(&m).unwrap();
                prop_assert_eq!(out.value(), brute(&m));
                if let Some(p) = out.point() {
                    prop_assert!(m.is_feasible(p));
                }
                let plain = solve_boxed_with(&m, BoxedConfig { lp_bound: false, ..BoxedConfig::default() }).unwrap();
                prop_assert_eq!(plain.point(), out.point());
            }

            #[test]
            fn value_is_invariant_under_variable_permutation(m in arb_model(), seed in any::<u64>()) {
                use rand::seq::SliceRandom;
                use rand::SeedableRng;
                let n = m.num_vars();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
                // variable j of the original becomes perm[j]
                let mut lower = vec![0; n];
                let mut upper = vec![0; n];
                let mut cost = vec![0; n];
                let Objective::Linear(c) = &m.objective else { unreachable!() };
                for j in 0..n {
                    lower[perm[j]] = m.lower[j];
                    upper[perm[j]] = m.upper[j];
                    cost[perm[j]] = c[j];
                }
                let mut p = IpModel::new(lower, upper, Objective::Linear(cost), m.sense);
                for row in &m.rows {
                    p.add_row(row.terms.iter().map(|&(j, a)| (perm[j], a)).collect(), row.relation, row.rhs);
                }
                prop_assert_eq!(solve_boxed(&p).unwrap().value(), solve_boxed(&m).unwrap().value());
            }
        }
    }
}
