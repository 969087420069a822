//! Conformal order, Graver bases and Graver-best augmentation.
//!
//! Two independent routes compute a Graver basis:
//!
//! * **norm-capped enumeration**: every kernel vector with `|v|_inf <= cap` is
//!   enumerated and the conformally minimal ones kept. The result is
//!   certified by a second pass over all kernel vectors of norm `<= cap + 1`,
//!   each of which must dominate some basis element.
//! * **completion**: starting from a lattice basis of the kernel (and its
//!   negation), sums of pairs are reduced against the current set until every
//!   sum reduces to zero. The surviving minimal elements are the Graver basis.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use crate::error::{Error, Result};
use crate::ip::{Sense, StandardForm};
use crate::matrix::IntMatrix;

/// `x ⊑ y`: same orthant and `|x_i| <= |y_i|` everywhere.
pub fn conformal(x: &[i64], y: &[i64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: y.len(),
            found: x.len(),
        });
    }
    Ok(is_conformal(x, y))
}

#[inline]
fn is_conformal(x: &[i64], y: &[i64]) -> bool {
    x.iter()
        .zip(y)
        .all(|(&a, &b)| a * b >= 0 && a.abs() <= b.abs())
}

fn sign_compatible(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(&a, &b)| a * b >= 0)
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

fn linf(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraverLimits {
    /// Largest intermediate set the completion procedure may hold.
    pub max_elements: usize,
    /// Search-tree nodes allowed for norm-capped enumeration (both passes).
    pub max_nodes: u64,
}

impl Default for GraverLimits {
    fn default() -> Self {
        GraverLimits {
            max_elements: 100_000,
            max_nodes: 200_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Produced by the completion procedure; complete by construction.
    Completion,
    /// Enumerated up to this `l_inf` norm.
    NormCap { cap: i64, certified: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraverBasis {
    matrix: IntMatrix,
    elements: Vec<Vec<i64>>,
    certification: Certification,
}

impl GraverBasis {
    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Elements in lexicographic order; closed under negation.
    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn is_complete(&self) -> bool {
        match self.certification {
            Certification::Completion => true,
            Certification::NormCap { certified, .. } => certified,
        }
    }

    fn require_complete(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(Error::GraverIncomplete(
                "norm-capped basis failed certification".into(),
            ))
        }
    }

    /// Largest `l_1` norm over the elements.
    pub fn g1(&self) -> Result<i64> {
        self.require_complete()?;
        Ok(self.elements.iter().map(|g| l1(g)).max().unwrap_or(0))
    }

    /// Largest `l_inf` norm over the elements.
    pub fn g_inf(&self) -> Result<i64> {
        self.require_complete()?;
        Ok(self.elements.iter().map(|g| linf(g)).max().unwrap_or(0))
    }

    /// One representative per `±g` pair: the one whose first non-zero entry is positive.
    pub fn positive_representatives(&self) -> Vec<Vec<i64>> {
        self.elements
            .iter()
            .filter(|g| g.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0))
            .cloned()
            .collect()
    }

    /// Some element is conformal to `v` (vacuously true for `v = 0`).
    pub fn reduces(&self, v: &[i64]) -> bool {
        v.iter().all(|&x| x == 0) || self.elements.iter().any(|g| is_conformal(g, v))
    }
}

/// Largest `l_1` norm of a complete basis.
pub fn g1_norm(b: &GraverBasis) -> Result<i64> {
    b.g1()
}

/// Largest `l_inf` norm of a complete basis.
pub fn g_inf_norm(b: &GraverBasis) -> Result<i64> {
    b.g_inf()
}

/// Graver basis of `a`. With a cap, exhaustive enumeration plus certification;
/// without, the completion procedure.
pub fn graver_basis(a: &IntMatrix, norm_cap: Option<i64>) -> Result<GraverBasis> {
    graver_basis_with(a, norm_cap, GraverLimits::default())
}

pub fn graver_basis_with(
    a: &IntMatrix,
    norm_cap: Option<i64>,
    limits: GraverLimits,
) -> Result<GraverBasis> {
    match norm_cap {
        Some(cap) => capped_basis(a, cap, limits),
        None => completion_basis(a, limits),
    }
}

fn capped_basis(a: &IntMatrix, cap: i64, limits: GraverLimits) -> Result<GraverBasis> {
    if cap < 1 {
        return Err(Error::InvalidModel("norm cap must be at least 1".into()));
    }
    let mut budget = limits.max_nodes;
    let mut kernel = Vec::new();
    enumerate_kernel(a, cap, &mut budget, &mut |v| kernel.push(v.to_vec()))?;
    let elements = minimal_elements(kernel);
    let mut certified = true;
    enumerate_kernel(a, cap + 1, &mut budget, &mut |v| {
        if certified && !elements.iter().any(|g| is_conformal(g, v)) {
            certified = false;
        }
    })?;
    Ok(GraverBasis {
        matrix: a.clone(),
        elements: sorted(elements),
        certification: Certification::NormCap { cap, certified },
    })
}

/// Calls `visit` on every non-zero `v` with `a v = 0` and `|v|_inf <= cap`.
pub fn enumerate_kernel(
    a: &IntMatrix,
    cap: i64,
    budget: &mut u64,
    visit: &mut dyn FnMut(&[i64]),
) -> Result<()> {
    let n = a.cols();
    let m = a.rows();
    let cols: Vec<Vec<(usize, i64)>> = (0..n).map(|j| a.transpose().row(j).to_vec()).collect();
    // reach[j][i]: largest |contribution| of columns j.. to row i
    let mut reach = vec![vec![0i64; m]; n + 1];
    for j in (0..n).rev() {
        reach[j] = reach[j + 1].clone();
        for &(i, v) in &cols[j] {
            reach[j][i] += cap * v.abs();
        }
    }
    struct Walk<'a> {
        cols: &'a [Vec<(usize, i64)>],
        reach: &'a [Vec<i64>],
        cap: i64,
        v: Vec<i64>,
        residual: Vec<i64>,
        budget: &'a mut u64,
        visit: &'a mut dyn FnMut(&[i64]),
    }
    fn walk(w: &mut Walk<'_>, j: usize) -> Result<()> {
        if *w.budget == 0 {
            return Err(Error::GraverIncomplete(
                "enumeration node budget exhausted".into(),
            ));
        }
        *w.budget -= 1;
        if j == w.v.len() {
            if w.v.iter().any(|&x| x != 0) {
                (w.visit)(&w.v);
            }
            return Ok(());
        }
        for value in -w.cap..=w.cap {
            for &(i, a) in &w.cols[j] {
                w.residual[i] += a * value;
            }
            let alive = w
                .residual
                .iter()
                .zip(&w.reach[j + 1])
                .all(|(r, reach)| r.abs() <= *reach);
            w.v[j] = value;
            let out = if alive { walk(w, j + 1) } else { Ok(()) };
            for &(i, a) in &w.cols[j] {
                w.residual[i] -= a * value;
            }
            out?;
        }
        w.v[j] = 0;
        Ok(())
    }
    let mut w = Walk {
        cols: &cols,
        reach: &reach,
        cap,
        v: vec![0; n],
        residual: vec![0; m],
        budget,
        visit,
    };
    walk(&mut w, 0)
}

/// Conformally minimal members of a set of non-zero vectors.
fn minimal_elements(mut vs: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    vs.sort_by_key(|v| l1(v));
    vs.dedup();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for v in vs {
        // any strictly smaller conformal vector in the set has smaller l1 and was seen first
        if !out.iter().any(|g| is_conformal(g, &v)) {
            out.push(v);
        }
    }
    out
}

fn sorted(mut vs: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    vs.sort();
    vs
}

/// Integer basis of `{x : a x = 0}` by unimodular row reduction of `[a^T | I]`.
pub fn kernel_lattice_basis(a: &IntMatrix) -> Vec<Vec<i64>> {
    let n = a.cols();
    let m = a.rows();
    let at = a.transpose();
    let mut rows: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut r = vec![0i128; m + n];
            for &(i, v) in at.row(j) {
                r[i] = v as i128;
            }
            r[m + j] = 1;
            r
        })
        .collect();
    let mut rank = 0;
    for c in 0..m {
        loop {
            let pivot = (rank..n)
                .filter(|&r| rows[r][c] != 0)
                .min_by_key(|&r| rows[r][c].abs());
            let Some(p) = pivot else { break };
            rows.swap(rank, p);
            let mut done = true;
            for r in rank + 1..n {
                if rows[r][c] != 0 {
                    let q = rows[r][c].div_euclid(rows[rank][c]);
                    let (head, tail) = rows.split_at_mut(r);
                    for (x, y) in tail[0].iter_mut().zip(&head[rank]) {
                        *x -= q * y;
                    }
                    if tail[0][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                rank += 1;
                break;
            }
        }
    }
    rows[rank..]
        .iter()
        .map(|r| {
            r[m..]
                .iter()
                .map(|&v| i64::try_from(v).expect("kernel basis entry fits i64"))
                .collect()
        })
        .collect()
}

/// Reduces `s` by conformal elements of `set` until none applies.
fn normal_form(mut s: Vec<i64>, set: &[Vec<i64>]) -> Vec<i64> {
    'outer: loop {
        if s.iter().all(|&v| v == 0) {
            return s;
        }
        for g in set {
            if is_conformal(g, &s) {
                let q = g
                    .iter()
                    .zip(&s)
                    .filter(|(&gv, _)| gv != 0)
                    .map(|(&gv, &sv)| sv / gv)
                    .min()
                    .expect("g is non-zero");
                for (x, &gv) in s.iter_mut().zip(g) {
                    *x -= q * gv;
                }
                continue 'outer;
            }
        }
        return s;
    }
}

fn completion_basis(a: &IntMatrix, limits: GraverLimits) -> Result<GraverBasis> {
    let lattice = kernel_lattice_basis(a);
    let mut set: Vec<Vec<i64>> = Vec::new();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut heap: BinaryHeap<Reverse<(i64, u32, u32)>> = BinaryHeap::new();
    let mut push = |v: Vec<i64>,
                    set: &mut Vec<Vec<i64>>,
                    heap: &mut BinaryHeap<Reverse<(i64, u32, u32)>>|
     -> Result<()> {
        if !seen.insert(v.clone()) {
            return Ok(());
        }
        let idx = set.len() as u32;
        for (i, g) in set.iter().enumerate() {
            if !sign_compatible(g, &v) {
                let sum: i64 = g.iter().zip(&v).map(|(x, y)| (x + y).abs()).sum();
                if sum > 0 {
                    heap.push(Reverse((sum, i as u32, idx)));
                }
            }
        }
        set.push(v);
        if set.len() > limits.max_elements {
            return Err(Error::GraverIncomplete(format!(
                "completion exceeded {} elements",
                limits.max_elements
            )));
        }
        Ok(())
    };
    for v in lattice {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        push(v, &mut set, &mut heap)?;
        push(neg, &mut set, &mut heap)?;
    }
    while let Some(Reverse((_, i, j))) = heap.pop() {
        let s: Vec<i64> = set[i as usize]
            .iter()
            .zip(&set[j as usize])
            .map(|(x, y)| x + y)
            .collect();
        let r = normal_form(s, &set);
        if r.iter().any(|&x| x != 0) {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            push(r, &mut set, &mut heap)?;
            push(neg, &mut set, &mut heap)?;
        }
    }
    let elements = sorted(minimal_elements(set));
    debug_assert!(elements
        .iter()
        .all(|g| a.mul_vec(g).iter().all(|&v| v == 0)));
    Ok(GraverBasis {
        matrix: a.clone(),
        elements,
        certification: Certification::Completion,
    })
}

/// An augmenting step `x + lambda * direction`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraverStep {
    pub direction: Vec<i64>,
    pub lambda: i64,
    pub improvement: i64,
}

fn check_augmentable(sf: &StandardForm, x: &[i64]) -> Result<()> {
    if sf.sense != Sense::Minimize {
        return Err(Error::InvalidModel(
            "augmentation minimises; negate the objective".into(),
        ));
    }
    if !sf.objective.is_convex() {
        return Err(Error::InvalidModel(format!(
            "{} objective is not convex",
            sf.objective.name()
        )));
    }
    if !sf.is_feasible(x) {
        return Err(Error::InfeasiblePoint(
            "x violates A x = b or its bounds".into(),
        ));
    }
    Ok(())
}

/// Largest `lambda` keeping `x + lambda g` inside the box.
fn max_step(sf: &StandardForm, x: &[i64], g: &[i64]) -> i64 {
    let mut best = i64::MAX;
    for j in 0..g.len() {
        if g[j] > 0 {
            best = best.min((sf.upper[j] - x[j]) / g[j]);
        } else if g[j] < 0 {
            best = best.min((x[j] - sf.lower[j]) / -g[j]);
        }
    }
    best
}

/// Best `lambda` in `[1, max]` for the convex `phi(lambda) = f(x + lambda g)`:
/// doubling to bracket the minimiser, then bisection on forward differences.
fn best_lambda(sf: &StandardForm, x: &[i64], g: &[i64], max: i64) -> (i64, i64) {
    let mut point = x.to_vec();
    let mut phi = |lambda: i64| {
        for j in 0..g.len() {
            point[j] = x[j] + lambda * g[j];
        }
        sf.eval(&point)
    };
    let rising = |phi: &mut dyn FnMut(i64) -> i64, l: i64| l >= max || phi(l + 1) - phi(l) >= 0;
    let mut hi = 1;
    while !rising(&mut phi, hi) {
        hi = (hi * 2).min(max);
    }
    let mut lo = (hi / 2).max(1);
    // minimiser is the first lambda in [lo, hi] where the forward difference is >= 0
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if rising(&mut phi, mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (lo, phi(lo))
}

/// Graver-best step from `x`, or `None` when no basis element improves.
/// Ties go to the lexicographically smallest direction, then the smallest `lambda`.
pub fn graver_best_step(
    sf: &StandardForm,
    basis: &GraverBasis,
    x: &[i64],
) -> Result<Option<GraverStep>> {
    basis.require_complete()?;
    if basis.matrix().cols() != sf.num_vars() {
        return Err(Error::LengthMismatch {
            expected: sf.num_vars(),
            found: basis.matrix().cols(),
        });
    }
    check_augmentable(sf, x)?;
    let current = sf.eval(x);
    let mut best: Option<GraverStep> = None;
    for g in basis.elements() {
        let max = max_step(sf, x, g);
        if max < 1 {
            continue;
        }
        let (lambda, value) = best_lambda(sf, x, g, max);
        let improvement = current - value;
        if improvement > 0 && best.as_ref().is_none_or(|b| improvement > b.improvement) {
            best = Some(GraverStep {
                direction: g.clone(),
                lambda,
                improvement,
            });
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    pub point: Vec<i64>,
    pub value: i64,
    pub steps: usize,
}

/// Applies Graver-best steps from `x0` until none improves.
pub fn augment_with_basis(
    sf: &StandardForm,
    basis: &GraverBasis,
    x0: &[i64],
    max_steps: usize,
) -> Result<Augmentation> {
    check_augmentable(sf, x0)?;
    let mut x = x0.to_vec();
    let mut steps = 0;
    while let Some(step) = graver_best_step(sf, basis, &x)? {
        for (v, g) in x.iter_mut().zip(&step.direction) {
            *v += step.lambda * g;
        }
        steps += 1;
        if steps > max_steps {
            return Err(Error::BudgetExceeded(format!(
                "more than {max_steps} augmentation steps"
            )));
        }
    }
    let value = sf.eval(&x);
    Ok(Augmentation {
        point: x,
        value,
        steps,
    })
}

/// Computes the Graver basis of `sf.a` by completion and augments `x0` to a
/// global optimum.
pub fn augment_to_optimum(
    sf: &StandardForm,
    x0: &[i64],
    limits: GraverLimits,
) -> Result<Augmentation> {
    check_augmentable(sf, x0)?;
    let basis = graver_basis_with(&sf.a, None, limits)?;
    augment_with_basis(sf, &basis, x0, 1_000_000)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StackingReport {
    /// `g_1` of the stacked matrix `(F; L)`.
    pub g1_stacked: i64,
    /// `g_1(L)`.
    pub g1_lower: i64,
    /// `g_1(F · G(L))`, one column per `±g` pair of `G(L)`.
    pub g1_product: i64,
    pub bound: i64,
    pub holds: bool,
}

/// Computes both sides of `g1((F; L)) <= g1(F · G(L)) · g1(L)`.
pub fn stacking_check(
    f: &IntMatrix,
    l: &IntMatrix,
    limits: GraverLimits,
) -> Result<StackingReport> {
    if f.cols() != l.cols() {
        return Err(Error::LengthMismatch {
            expected: l.cols(),
            found: f.cols(),
        });
    }
    let lower = graver_basis_with(l, None, limits)?;
    let g1_lower = lower.g1()?;
    let columns: Vec<Vec<i64>> = lower
        .positive_representatives()
        .iter()
        .map(|g| f.mul_vec(g))
        .collect();
    let product = IntMatrix::from_columns(f.rows(), &columns)?;
    let g1_product = graver_basis_with(&product, None, limits)?.g1()?;
    let g1_stacked = graver_basis_with(&IntMatrix::stack(f, l)?, None, limits)?.g1()?;
    let bound = g1_product * g1_lower;
    Ok(StackingReport {
        g1_stacked,
        g1_lower,
        g1_product,
        bound,
        holds: g1_stacked <= bound,
    })
}
