//! Exact rational linear programming (two-phase simplex, Bland's rule).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ip::{Relation, Sense};

pub type Rational = BigRational;

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpConstraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpProblem {
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<LpConstraint>,
    pub lower: Vec<Option<Rational>>,
    pub upper: Vec<Option<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal {
        point: Vec<Rational>,
        value: Rational,
    },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LpProblem {
    /// Problem over `n` variables with non-negative lower bounds and no upper bounds.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpProblem {
            sense,
            objective,
            constraints: Vec::new(),
            lower: vec![Some(Rational::zero()); n],
            upper: vec![None; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<(usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) {
        self.constraints.push(LpConstraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Bounds and constraints all hold at `x`.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = x.iter().enumerate().all(|(j, v)| {
            self.lower[j].as_ref().is_none_or(|l| v >= l)
                && self.upper[j].as_ref().is_none_or(|u| v <= u)
        });
        bounds_ok
            && self.constraints.iter().all(|c| {
                let act: Rational = c.coeffs.iter().map(|(j, a)| a * &x[*j]).sum();
                match c.relation {
                    Relation::Le => act <= c.rhs,
                    Relation::Ge => act >= c.rhs,
                    Relation::Eq => act == c.rhs,
                }
            })
    }
}

/// How an original variable is expressed through non-negative columns.
enum VarMap {
    /// x = offset + col
    Shifted { col: usize, offset: Rational },
    /// x = offset - col
    Mirrored { col: usize, offset: Rational },
    /// x = pos - neg
    Split { pos: usize, neg: usize },
}

/// A row over the non-negative columns: coefficients, relation, right-hand side.
type Row = (Vec<(usize, Rational)>, Relation, Rational);

/// Solves `p` exactly.
pub fn solve_lp(p: &LpProblem) -> LpOutcome {
    let n = p.num_vars();
    let mut maps = Vec::with_capacity(n);
    let mut cols = 0usize;
    let mut rows: Vec<Row> = Vec::new();
    for j in 0..n {
        match (&p.lower[j], &p.upper[j]) {
            (Some(l), Some(u)) => {
                if l > u {
                    return LpOutcome::Infeasible;
                }
                maps.push(VarMap::Shifted {
                    col: cols,
                    offset: l.clone(),
                });
                rows.push((vec![(cols, Rational::one())], Relation::Le, u - l));
                cols += 1;
            }
            (Some(l), None) => {
                maps.push(VarMap::Shifted {
                    col: cols,
                    offset: l.clone(),
                });
                cols += 1;
            }
            (None, Some(u)) => {
                maps.push(VarMap::Mirrored {
                    col: cols,
                    offset: u.clone(),
                });
                cols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split {
                    pos: cols,
                    neg: cols + 1,
                });
                cols += 2;
            }
        }
    }
    let substitute = |coeffs: &[(usize, Rational)], rhs: &Rational| {
        let mut out: Vec<(usize, Rational)> = Vec::new();
        let mut rhs = rhs.clone();
        for (j, a) in coeffs {
            match &maps[*j] {
                VarMap::Shifted { col, offset } => {
                    rhs -= a * offset;
                    out.push((*col, a.clone()));
                }
                VarMap::Mirrored { col, offset } => {
                    rhs -= a * offset;
                    out.push((*col, -a));
                }
                VarMap::Split { pos, neg } => {
                    out.push((*pos, a.clone()));
                    out.push((*neg, -a));
                }
            }
        }
        (out, rhs)
    };
    for c in &p.constraints {
        let (coeffs, rhs) = substitute(&c.coeffs, &c.rhs);
        rows.push((coeffs, c.relation, rhs));
    }
    let sign = match p.sense {
        Sense::Minimize => Rational::one(),
        Sense::Maximize => -Rational::one(),
    };
    let mut cost = vec![Rational::zero(); cols];
    let mut cost_offset = Rational::zero();
    for (j, c) in p.objective.iter().enumerate() {
        let c = c * &sign;
        match &maps[j] {
            VarMap::Shifted { col, offset } => {
                cost_offset += &c * offset;
                cost[*col] += c;
            }
            VarMap::Mirrored { col, offset } => {
                cost_offset += &c * offset;
                cost[*col] -= c;
            }
            VarMap::Split { pos, neg } => {
                cost[*neg] -= &c;
                cost[*pos] += c;
            }
        }
    }

    let tableau = match Tableau::build(cols, &rows) {
        Some(t) => t,
        None => return LpOutcome::Infeasible,
    };
    let mut tableau = tableau;
    match tableau.optimize(&cost) {
        None => LpOutcome::Unbounded,
        Some(()) => {
            let y = tableau.primal(cols);
            let point: Vec<Rational> = maps
                .iter()
                .map(|m| match m {
                    VarMap::Shifted { col, offset } => offset + &y[*col],
                    VarMap::Mirrored { col, offset } => offset - &y[*col],
                    VarMap::Split { pos, neg } => &y[*pos] - &y[*neg],
                })
                .collect();
            let value = p.evaluate(&point);
            debug_assert_eq!(
                &value * &sign,
                cost.iter().zip(&y).map(|(c, v)| c * v).sum::<Rational>() + cost_offset
            );
            LpOutcome::Optimal { point, value }
        }
    }
}

/// Dense simplex tableau for `min c y, M y = b, y >= 0`.
struct Tableau {
    /// rows × (width + 1); the last entry of each row is the right-hand side
    a: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    /// Adds slacks and runs phase one; `None` when infeasible.
    fn build(cols: usize, rows: &[Row]) -> Option<Tableau> {
        let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let m = rows.len();
        // columns: structural | slacks | artificials (one per row, unused ones stay zero)
        let width = cols + slacks + m;
        let mut a = vec![vec![Rational::zero(); width + 1]; m];
        let mut basis = vec![usize::MAX; m];
        let mut next_slack = cols;
        for (i, (coeffs, rel, rhs)) in rows.iter().enumerate() {
            for (j, v) in coeffs {
                a[i][*j] += v;
            }
            match rel {
                Relation::Le => {
                    a[i][next_slack] = Rational::one();
                    next_slack += 1;
                }
                Relation::Ge => {
                    a[i][next_slack] = -Rational::one();
                    next_slack += 1;
                }
                Relation::Eq => {}
            }
            a[i][width] = rhs.clone();
            if rhs.is_negative() {
                for v in a[i].iter_mut() {
                    *v = -&*v;
                }
            }
            // a slack with +1 after normalisation is a ready basic column
            if *rel != Relation::Eq && a[i][next_slack - 1].is_one() {
                basis[i] = next_slack - 1;
            }
        }
        let artificial_start = cols + slacks;
        let mut artificial = Vec::new();
        for i in 0..m {
            if basis[i] == usize::MAX {
                let col = artificial_start + i;
                a[i][col] = Rational::one();
                basis[i] = col;
                artificial.push(col);
            }
        }
        let mut t = Tableau { a, basis, width };
        if !artificial.is_empty() {
            let mut phase1 = vec![Rational::zero(); width];
            for &c in &artificial {
                phase1[c] = Rational::one();
            }
            t.optimize(&phase1).expect("phase one is bounded");
            let infeasibility: Rational = t
                .basis
                .iter()
                .zip(&t.a)
                .filter(|(b, _)| **b >= artificial_start)
                .map(|(_, r)| r[width].clone())
                .sum();
            if infeasibility.is_positive() {
                return None;
            }
            t.drive_out(artificial_start);
        }
        // artificial columns are never allowed back in
        for row in t.a.iter_mut() {
            for v in &mut row[artificial_start..width] {
                *v = Rational::zero();
            }
        }
        t.width = artificial_start;
        for row in t.a.iter_mut() {
            let rhs = row[row.len() - 1].clone();
            row.truncate(artificial_start);
            row.push(rhs);
        }
        Some(t)
    }

    /// Pivots zero-level artificials out of the basis, dropping redundant rows.
    fn drive_out(&mut self, artificial_start: usize) {
        let mut i = 0;
        while i < self.a.len() {
            if self.basis[i] >= artificial_start {
                match (0..artificial_start).find(|&j| !self.a[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        self.a.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for v in self.a[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimises `cost` from the current basic feasible solution; `None` if
    /// unbounded. Columns beyond `cost.len()` cost nothing.
    fn optimize(&mut self, cost: &[Rational]) -> Option<()> {
        let w = self.width;
        let mut cost = cost.to_vec();
        cost.resize(w, Rational::zero());
        loop {
            // reduced costs c_j - c_B B^-1 A_j, with Bland's smallest-index entering rule
            let entering = (0..w).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.a[i][j].is_zero() {
                        reduced -= &cost[b] * &self.a[i][j];
                    }
                }
                reduced.is_negative()
            });
            let Some(c) = entering else { return Some(()) };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.a.len() {
                if self.a[i][c].is_positive() {
                    let ratio = &self.a[i][w] / &self.a[i][c];
                    let better = match &leave {
                        None => true,
                        Some((r, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let (r, _) = leave?;
            self.pivot(r, c);
        }
    }

    fn primal(&self, cols: usize) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); cols];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < cols {
                y[b] = self.a[i][self.width].clone();
            }
        }
        y
    }
}
