//! Bounded-box integer programs.
//!
//! An [`IpModel`] has finite integer boxes `l <= x <= u`, linear rows, optional
//! concave upper-bound rows (`sum a_j x_j <= f(x_arg)` with `f` tabulated) and
//! one objective form. Models may carry an n-fold or stacked block layout and
//! a hint for an initial feasible point.

use std::fmt::Write as _;

use crate::error::{check_len, Error, Result};
use crate::lp::{rat, LpProblem};
use crate::matrix::IntMatrix;
use crate::models::sumcol::column_cost;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    pub fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRow {
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl LinearRow {
    pub fn new(terms: Vec<(usize, i64)>, relation: Relation, rhs: i64) -> Self {
        LinearRow {
            terms,
            relation,
            rhs,
        }
    }

    pub fn activity(&self, x: &[i64]) -> i64 {
        self.terms.iter().map(|&(j, a)| a * x[j]).sum()
    }
}

/// `sum a_j x_j <= values[x_arg - lower(arg)]`, with `values` concave.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcaveBound {
    pub terms: Vec<(usize, i64)>,
    pub arg: usize,
    pub values: Vec<i64>,
}

impl ConcaveBound {
    /// Tangent (segment) lines `f(l-1) + (f(l) - f(l-1)) (x - l + 1 - lower)` for
    /// every segment, as `(slope, intercept)` in the shifted argument.
    pub fn segments(&self) -> Vec<(i64, i64)> {
        self.values
            .windows(2)
            .enumerate()
            .map(|(l, w)| {
                let slope = w[1] - w[0];
                (slope, w[0] - slope * l as i64)
            })
            .collect()
    }

    pub fn is_concave(&self) -> bool {
        self.values.windows(3).all(|w| w[2] - w[1] <= w[1] - w[0])
    }
}

/// Convex integer function of one variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Univariate {
    Linear(i64),
    /// `a x^2 + b x` with `a >= 0`.
    Quadratic {
        a: i64,
        b: i64,
    },
    /// `weight * x (x + 1) / 2`, the cost of a column holding `x` color classes.
    ColumnCost {
        weight: i64,
    },
}

impl Univariate {
    pub fn eval(&self, x: i64) -> i64 {
        match *self {
            Univariate::Linear(c) => c * x,
            Univariate::Quadratic { a, b } => a * x * x + b * x,
            Univariate::ColumnCost { weight } => weight * column_cost(x),
        }
    }

    /// Smallest value on `[lo, hi]`.
    pub fn min_on(&self, lo: i64, hi: i64) -> i64 {
        // convex: the minimum is at an endpoint or where the forward difference turns non-negative
        let (mut a, mut b) = (lo, hi);
        while a < b {
            let mid = a + (b - a) / 2;
            if self.eval(mid + 1) - self.eval(mid) >= 0 {
                b = mid;
            } else {
                a = mid + 1;
            }
        }
        self.eval(a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    Linear(Vec<i64>),
    Separable(Vec<Univariate>),
    /// `linear . x + sum coef * x_u * x_v`.
    Quadratic {
        linear: Vec<i64>,
        terms: Vec<(usize, usize, i64)>,
    },
    /// `sum_{j >= 1} column_cost(sum_{v: sizes[v] >= j} x_v)`; convex for `x >= 0`.
    NestedColumns {
        sizes: Vec<u64>,
    },
}

impl Objective {
    pub fn eval(&self, x: &[i64]) -> i64 {
        match self {
            Objective::Linear(c) => c.iter().zip(x).map(|(c, v)| c * v).sum(),
            Objective::Separable(fs) => fs.iter().zip(x).map(|(f, &v)| f.eval(v)).sum(),
            Objective::Quadratic { linear, terms } => {
                let lin: i64 = linear.iter().zip(x).map(|(c, v)| c * v).sum();
                lin + terms.iter().map(|&(u, v, c)| c * x[u] * x[v]).sum::<i64>()
            }
            Objective::NestedColumns { sizes } => nested_columns(sizes, x),
        }
    }

    /// Number of variables the objective is defined on.
    pub fn arity(&self) -> usize {
        match self {
            Objective::Linear(c) => c.len(),
            Objective::Separable(fs) => fs.len(),
            Objective::Quadratic { linear, .. } => linear.len(),
            Objective::NestedColumns { sizes } => sizes.len(),
        }
    }

    /// Per-variable functions when the objective is separable.
    pub fn separable_parts(&self) -> Option<Vec<Univariate>> {
        match self {
            Objective::Linear(c) => Some(c.iter().map(|&c| Univariate::Linear(c)).collect()),
            Objective::Separable(fs) => Some(fs.clone()),
            _ => None,
        }
    }

    /// Convex along every line through the integer box (given `x >= 0` for nested columns).
    pub fn is_convex(&self) -> bool {
        !matches!(self, Objective::Quadratic { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Objective::Linear(_) => "linear",
            Objective::Separable(_) => "separable-convex",
            Objective::Quadratic { .. } => "quadratic",
            Objective::NestedColumns { .. } => "nested-columns",
        }
    }

    fn padded(&self, extra: usize) -> Objective {
        match self {
            Objective::Linear(c) => {
                let mut c = c.clone();
                c.resize(c.len() + extra, 0);
                Objective::Linear(c)
            }
            Objective::Separable(fs) => {
                let mut fs = fs.clone();
                fs.resize(fs.len() + extra, Univariate::Linear(0));
                Objective::Separable(fs)
            }
            Objective::Quadratic { linear, terms } => {
                let mut linear = linear.clone();
                linear.resize(linear.len() + extra, 0);
                Objective::Quadratic {
                    linear,
                    terms: terms.clone(),
                }
            }
            Objective::NestedColumns { sizes } => {
                let mut sizes = sizes.clone();
                sizes.resize(sizes.len() + extra, 0);
                Objective::NestedColumns { sizes }
            }
        }
    }
}

fn nested_columns(sizes: &[u64], x: &[i64]) -> i64 {
    let mut by_size: Vec<(u64, i64)> = sizes
        .iter()
        .zip(x)
        .filter(|(&s, _)| s > 0)
        .map(|(&s, &v)| (s, v))
        .collect();
    by_size.sort_unstable_by_key(|&(s, _)| std::cmp::Reverse(s));
    let mut total = 0i64;
    let mut prefix = 0i64;
    let mut idx = 0;
    while idx < by_size.len() {
        let size = by_size[idx].0;
        while idx < by_size.len() && by_size[idx].0 == size {
            prefix += by_size[idx].1;
            idx += 1;
        }
        let next = by_size.get(idx).map_or(0, |e| e.0);
        total += (size - next) as i64 * column_cost(prefix);
    }
    total
}

/// n-fold block structure: `r` top rows repeating `A1` across `n` bricks of
/// `t` variables, then one `s`-row `A2` block per brick.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NFoldBlocks {
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub n: usize,
    pub a1: IntMatrix,
    pub a2: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Layout {
    NFold(NFoldBlocks),
    /// First `f_rows` rows form `F`, the next `l_rows` rows form `L`.
    Stacked {
        f_rows: usize,
        l_rows: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelTag {
    CdsConvex,
    CdsIlp,
    SumColNFold { colors: usize },
    SumColConvex,
    SumColGraver,
    MaxQCut { parts: usize },
}

impl ModelTag {
    pub fn name(&self) -> &'static str {
        match self {
            ModelTag::CdsConvex => "cds-convex",
            ModelTag::CdsIlp => "cds-ilp",
            ModelTag::SumColNFold { .. } => "sumcol-nfold",
            ModelTag::SumColConvex => "sumcol-convex",
            ModelTag::SumColGraver => "sumcol-graver",
            ModelTag::MaxQCut { .. } => "maxqcut",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpModel {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub rows: Vec<LinearRow>,
    pub concave: Vec<ConcaveBound>,
    pub objective: Objective,
    pub sense: Sense,
    pub layout: Option<Layout>,
    pub tag: Option<ModelTag>,
    pub initial_point: Option<Vec<i64>>,
}

impl IpModel {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>, objective: Objective, sense: Sense) -> Self {
        IpModel {
            lower,
            upper,
            rows: Vec::new(),
            concave: Vec::new(),
            objective,
            sense,
            layout: None,
            tag: None,
            initial_point: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.lower.len()
    }

    pub fn layout(&self) -> Option<&Layout> {
        self.layout.as_ref()
    }

    pub fn add_row(&mut self, terms: Vec<(usize, i64)>, relation: Relation, rhs: i64) {
        self.rows.push(LinearRow::new(terms, relation, rhs));
    }

    pub fn eval(&self, x: &[i64]) -> i64 {
        self.objective.eval(x)
    }

    /// Checks dimensions, boxes, concavity of concave rows and the block layout.
    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        check_len(n, self.upper.len())?;
        check_len(n, self.objective.arity())?;
        if let Some((j, _)) = self
            .lower
            .iter()
            .zip(&self.upper)
            .enumerate()
            .find(|(_, (l, u))| l > u)
        {
            return Err(Error::InvalidModel(format!("empty box for variable {j}")));
        }
        let in_range = |j: usize| {
            if j < n {
                Ok(())
            } else {
                Err(Error::InvalidModel(format!("variable {j} outside 0..{n}")))
            }
        };
        for row in &self.rows {
            for &(j, _) in &row.terms {
                in_range(j)?;
            }
        }
        for c in &self.concave {
            in_range(c.arg)?;
            for &(j, _) in &c.terms {
                in_range(j)?;
            }
            let width = (self.upper[c.arg] - self.lower[c.arg] + 1) as usize;
            check_len(width, c.values.len())?;
            if !c.is_concave() {
                return Err(Error::InvalidModel("concave bound is not concave".into()));
            }
        }
        if let Objective::Quadratic { terms, .. } = &self.objective {
            for &(u, v, _) in terms {
                in_range(u)?;
                in_range(v)?;
            }
        }
        if let Some(x0) = &self.initial_point {
            check_len(n, x0.len())?;
        }
        match &self.layout {
            Some(Layout::NFold(blocks)) => self.check_nfold(blocks)?,
            Some(Layout::Stacked { f_rows, l_rows }) if f_rows + l_rows != self.rows.len() => {
                return Err(Error::InvalidModel(
                    "stacked layout does not cover all rows".into(),
                ));
            }
            Some(Layout::Stacked { .. }) | None => {}
        }
        Ok(())
    }

    fn check_nfold(&self, b: &NFoldBlocks) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidModel(format!("n-fold layout: {msg}")));
        if b.a1.rows() != b.r || b.a1.cols() != b.t || b.a2.rows() != b.s || b.a2.cols() != b.t {
            return bad("block shapes disagree with r, s, t");
        }
        if self.num_vars() != b.n * b.t || self.rows.len() != b.r + b.n * b.s {
            return bad("model size disagrees with the block annotation");
        }
        if !self.concave.is_empty() {
            return bad("concave rows are not allowed");
        }
        let normalise = |terms: &[(usize, i64)]| {
            let mut t: Vec<(usize, i64)> = terms.iter().copied().filter(|&(_, v)| v != 0).collect();
            t.sort_unstable();
            t
        };
        for i in 0..b.r {
            let expected: Vec<(usize, i64)> = (0..b.n)
                .flat_map(|brick| b.a1.row(i).iter().map(move |&(j, v)| (brick * b.t + j, v)))
                .collect();
            if normalise(&self.rows[i].terms) != expected {
                return bad("top rows do not repeat A1");
            }
        }
        for brick in 0..b.n {
            for i in 0..b.s {
                let expected: Vec<(usize, i64)> =
                    b.a2.row(i)
                        .iter()
                        .map(|&(j, v)| (brick * b.t + j, v))
                        .collect();
                if normalise(&self.rows[b.r + brick * b.s + i].terms) != expected {
                    return bad("brick rows do not match A2");
                }
            }
        }
        Ok(())
    }

    /// Boxes, linear rows and concave rows all hold.
    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.num_vars()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
            && self
                .rows
                .iter()
                .all(|r| r.relation.holds(r.activity(x), r.rhs))
            && self.concave.iter().all(|c| {
                let lhs: i64 = c.terms.iter().map(|&(j, a)| a * x[j]).sum();
                lhs <= c.values[(x[c.arg] - self.lower[c.arg]) as usize]
            })
    }

    /// Continuous relaxation with concave rows replaced by their segment lines.
    /// Non-linear objectives are replaced by zero.
    pub fn linear_relaxation(&self) -> LpProblem {
        let costs = match &self.objective {
            Objective::Linear(c) => c.iter().map(|&v| rat(v)).collect(),
            _ => vec![rat(0); self.num_vars()],
        };
        let mut lp = LpProblem::new(self.sense, costs);
        for j in 0..self.num_vars() {
            lp.set_bounds(j, Some(rat(self.lower[j])), Some(rat(self.upper[j])));
        }
        for row in &self.rows {
            lp.add_constraint(
                row.terms.iter().map(|&(j, a)| (j, rat(a))).collect(),
                row.relation,
                rat(row.rhs),
            );
        }
        for c in &self.concave {
            let lower = self.lower[c.arg];
            for (slope, intercept) in c.segments() {
                // sum a x - slope (x_arg - lower) <= intercept
                let mut coeffs: Vec<_> = c.terms.iter().map(|&(j, a)| (j, rat(a))).collect();
                coeffs.push((c.arg, rat(-slope)));
                lp.add_constraint(
                    coeffs,
                    crate::ip::Relation::Le,
                    rat(intercept - slope * lower),
                );
            }
        }
        lp
    }

    /// Coefficients of the linear rows (concave rows excluded).
    pub fn constraint_matrix(&self) -> Result<IntMatrix> {
        IntMatrix::from_sparse_rows(
            self.num_vars(),
            self.rows.iter().map(|r| r.terms.clone()).collect(),
        )
    }

    /// Equality form with one bounded slack per inequality row. Slack bounds
    /// are the largest attainable slack over the box.
    pub fn standard_form(&self) -> Result<StandardForm> {
        self.validate()?;
        if !self.concave.is_empty() {
            return Err(Error::InvalidModel(
                "concave rows have no standard form".into(),
            ));
        }
        let n = self.num_vars();
        let mut lower = self.lower.clone();
        let mut upper = self.upper.clone();
        let mut rows = Vec::with_capacity(self.rows.len());
        let mut rhs = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let (min_act, max_act) = row.terms.iter().fold((0i64, 0i64), |(lo, hi), &(j, a)| {
                let (p, q) = (a * self.lower[j], a * self.upper[j]);
                (lo + p.min(q), hi + p.max(q))
            });
            let mut terms = row.terms.clone();
            match row.relation {
                Relation::Eq => {}
                Relation::Le => {
                    terms.push((lower.len(), 1));
                    lower.push(0);
                    upper.push((row.rhs - min_act).max(0));
                }
                Relation::Ge => {
                    terms.push((lower.len(), -1));
                    lower.push(0);
                    upper.push((max_act - row.rhs).max(0));
                }
            }
            rows.push(terms);
            rhs.push(row.rhs);
        }
        let cols = lower.len();
        let a = IntMatrix::from_sparse_rows(cols, rows)?;
        Ok(StandardForm {
            a,
            b: rhs,
            lower,
            upper,
            objective: self.objective.padded(cols - n),
            sense: self.sense,
            original_vars: n,
        })
    }

    /// Canonical line-oriented text: header, bounds, objective, rows as
    /// `a <row> <col> <value>` triples, concave rows and block annotation.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let tag = self.tag.map_or("untagged", |t| t.name());
        let sense = match self.sense {
            Sense::Minimize => "min",
            Sense::Maximize => "max",
        };
        let _ = writeln!(out, "model {tag}");
        let _ = writeln!(out, "sense {sense}");
        let _ = writeln!(out, "objective {}", self.objective.name());
        let _ = writeln!(out, "vars {}", self.num_vars());
        let _ = writeln!(out, "rows {}", self.rows.len());
        for j in 0..self.num_vars() {
            let _ = writeln!(out, "bound {j} {} {}", self.lower[j], self.upper[j]);
        }
        match &self.objective {
            Objective::Linear(c) => {
                for (j, &v) in c.iter().enumerate().filter(|(_, &v)| v != 0) {
                    let _ = writeln!(out, "obj {j} {v}");
                }
            }
            Objective::Separable(fs) => {
                for (j, f) in fs.iter().enumerate() {
                    let _ = match f {
                        Univariate::Linear(0) => Ok(()),
                        Univariate::Linear(c) => writeln!(out, "sep {j} linear {c}"),
                        Univariate::Quadratic { a, b } => {
                            writeln!(out, "sep {j} quadratic {a} {b}")
                        }
                        Univariate::ColumnCost { weight } => {
                            writeln!(out, "sep {j} column {weight}")
                        }
                    };
                }
            }
            Objective::Quadratic { linear, terms } => {
                for (j, &v) in linear.iter().enumerate().filter(|(_, &v)| v != 0) {
                    let _ = writeln!(out, "obj {j} {v}");
                }
                let mut terms = terms.clone();
                terms.sort_unstable();
                for (u, v, c) in terms {
                    let _ = writeln!(out, "quad {u} {v} {c}");
                }
            }
            Objective::NestedColumns { sizes } => {
                for (j, s) in sizes.iter().enumerate().filter(|(_, &s)| s > 0) {
                    let _ = writeln!(out, "nested {j} {s}");
                }
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            let _ = writeln!(out, "rel {i} {} {}", row.relation.symbol(), row.rhs);
        }
        let mut triples: Vec<(usize, usize, i64)> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.terms.iter().map(move |&(j, v)| (i, j, v)))
            .collect();
        triples.sort_unstable();
        for (i, j, v) in triples {
            let _ = writeln!(out, "a {i} {j} {v}");
        }
        for (i, c) in self.concave.iter().enumerate() {
            let values: Vec<String> = c.values.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "cap {i} {} {}", c.arg, values.join(" "));
            let mut terms = c.terms.clone();
            terms.sort_unstable();
            for (j, v) in terms {
                let _ = writeln!(out, "caplhs {i} {j} {v}");
            }
        }
        match &self.layout {
            Some(Layout::NFold(b)) => {
                let _ = writeln!(out, "nfold {} {} {} {}", b.r, b.s, b.t, b.n);
            }
            Some(Layout::Stacked { f_rows, l_rows }) => {
                let _ = writeln!(out, "stacked {f_rows} {l_rows}");
            }
            None => {}
        }
        out
    }
}

/// `min/max f(x), A x = b, l <= x <= u`. The first `original_vars` columns are
/// the source model's variables; the rest are slacks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub a: IntMatrix,
    pub b: Vec<i64>,
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub objective: Objective,
    pub sense: Sense,
    pub original_vars: usize,
}

impl StandardForm {
    pub fn num_vars(&self) -> usize {
        self.lower.len()
    }

    pub fn is_feasible(&self, x: &[i64]) -> bool {
        x.len() == self.num_vars()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| l <= v && v <= u)
            && self.a.mul_vec(x) == self.b
    }

    pub fn eval(&self, x: &[i64]) -> i64 {
        self.objective.eval(x)
    }

    /// Extends a point of the source model with the implied slack values.
    pub fn lift(&self, model: &IpModel, x: &[i64]) -> Vec<i64> {
        let mut out = x.to_vec();
        for row in &model.rows {
            match row.relation {
                Relation::Eq => {}
                Relation::Le => out.push(row.rhs - row.activity(x)),
                Relation::Ge => out.push(row.activity(x) - row.rhs),
            }
        }
        out
    }

    /// The same problem as an [`IpModel`] with equality rows.
    pub fn to_model(&self) -> IpModel {
        let mut m = IpModel::new(
            self.lower.clone(),
            self.upper.clone(),
            self.objective.clone(),
            self.sense,
        );
        for i in 0..self.a.rows() {
            m.add_row(self.a.row(i).to_vec(), Relation::Eq, self.b[i]);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn univariate_minimum() {
        let f = Univariate::Quadratic { a: 1, b: -5 };
        assert_eq!(f.min_on(-10, 10), -6);
        assert_eq!(f.min_on(4, 10), -4);
        assert_eq!(Univariate::Linear(-2).min_on(0, 3), -6);
        assert_eq!(Univariate::ColumnCost { weight: 2 }.min_on(1, 4), 2);
    }

    #[test]
    fn nested_columns_matches_direct_sum() {
        // classes of size 3 (x=1), 1 (x=2): columns j=1: 3 classes, j=2,3: 1 class
        let sizes = [3, 1];
        let x = [1, 2];
        let direct = column_cost(3) + 2 * column_cost(1);
        assert_eq!(nested_columns(&sizes, &x), direct);
        assert_eq!(nested_columns(&[2, 2], &[1, 1]), 2 * column_cost(2));
    }

    #[test]
    fn standard_form_slacks() {
        let mut m = IpModel::new(
            vec![0, 0],
            vec![3, 3],
            Objective::Linear(vec![1, 1]),
            Sense::Minimize,
        );
        m.add_row(vec![(0, 1), (1, 1)], Relation::Le, 4);
        m.add_row(vec![(0, 1)], Relation::Ge, 1);
        let sf = m.standard_form().unwrap();
        assert_eq!(sf.num_vars(), 4);
        assert_eq!(sf.upper[2..], [4, 2]);
        let x = sf.lift(&m, &[1, 2]);
        assert_eq!(x, vec![1, 2, 1, 0]);
        assert!(sf.is_feasible(&x));
    }

    #[test]
    fn concave_segments_reproduce_values() {
        let c = ConcaveBound {
            terms: vec![(0, 1)],
            arg: 1,
            values: vec![0, 3, 4, 4],
        };
        assert!(c.is_concave());
        for x in 0..4i64 {
            let min = c.segments().iter().map(|(s, b)| s * x + b).min().unwrap();
            assert_eq!(min, c.values[x as usize]);
        }
        assert!(!ConcaveBound {
            terms: vec![],
            arg: 0,
            values: vec![0, 1, 3]
        }
        .is_concave());
    }

    #[test]
    fn validate_rejects_bad_boxes() {
        let m = IpModel::new(
            vec![1],
            vec![0],
            Objective::Linear(vec![0]),
            Sense::Minimize,
        );
        assert!(m.validate().is_err());
    }
}
