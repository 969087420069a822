//! Sum Coloring models.
//!
//! An essential coloring meets every clique class in at most one vertex and
//! every independent class in none or all of its vertices, so each color
//! class is described by the set of classes it meets: an independent set of
//! the type graph (loops ignored).

use crate::algorithms::oracle::check_coloring;
use crate::error::{Error, Result};
use crate::graph::{Graph, TypeGraph, TypeKind};
use crate::ip::{IpModel, Layout, ModelTag, NFoldBlocks, Objective, Relation, Sense, Univariate};
use crate::matrix::IntMatrix;

/// Cost of a column holding `y` color classes stacked in order: `1 + ... + y`.
pub fn column_cost(y: i64) -> i64 {
    y * (y + 1) / 2
}

/// Non-empty independent sets of the type graph as bitmasks, in increasing
/// mask order, with their class sizes and the critical sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorClassCatalog {
    k: usize,
    sets: Vec<u32>,
    sigma: Vec<i64>,
    upper: Vec<i64>,
    gamma: Vec<i64>,
}

impl ColorClassCatalog {
    pub fn new(t: &TypeGraph) -> Result<Self> {
        let k = t.k();
        if k > 20 {
            return Err(Error::SizeGuard(format!(
                "{k} classes give too many independent sets"
            )));
        }
        let mut sets = Vec::new();
        let mut sigma = Vec::new();
        let mut upper = Vec::new();
        for mask in 1u32..(1u32 << k) {
            let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            let independent = members
                .iter()
                .enumerate()
                .all(|(a, &i)| members[a + 1..].iter().all(|&j| !t.has_edge(i, j)));
            if !independent {
                continue;
            }
            let size = members
                .iter()
                .map(|&i| match t.kind(i) {
                    TypeKind::Clique => 1,
                    TypeKind::Independent => t.weight(i) as i64,
                })
                .sum();
            let bound = members
                .iter()
                .map(|&i| match t.kind(i) {
                    TypeKind::Clique => t.weight(i) as i64,
                    TypeKind::Independent => 1,
                })
                .min()
                .expect("non-empty set");
            sets.push(mask);
            sigma.push(size);
            upper.push(bound);
        }
        let mut gamma = sigma.clone();
        gamma.sort_unstable();
        gamma.dedup();
        Ok(ColorClassCatalog {
            k,
            sets,
            sigma,
            upper,
            gamma,
        })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn mask(&self, idx: usize) -> u32 {
        self.sets[idx]
    }

    pub fn contains(&self, idx: usize, class: usize) -> bool {
        self.sets[idx] >> class & 1 == 1
    }

    pub fn members(&self, idx: usize) -> Vec<usize> {
        (0..self.k).filter(|&i| self.contains(idx, i)).collect()
    }

    pub fn index_of(&self, mask: u32) -> Option<usize> {
        self.sets.binary_search(&mask).ok()
    }

    /// Vertices in a color class of this set.
    pub fn sigma(&self, idx: usize) -> i64 {
        self.sigma[idx]
    }

    pub fn sigmas(&self) -> &[i64] {
        &self.sigma
    }

    /// Largest multiplicity of the set in any coloring.
    pub fn upper(&self, idx: usize) -> i64 {
        self.upper[idx]
    }

    /// Critical sizes, ascending.
    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    fn position(&self, size: i64) -> Result<usize> {
        self.gamma
            .binary_search(&size)
            .map_err(|_| Error::InvalidModel(format!("{size} is not a critical size")))
    }

    /// Next larger critical size; the largest maps to itself.
    pub fn succ(&self, size: i64) -> Result<i64> {
        let p = self.position(size)?;
        Ok(*self.gamma.get(p + 1).unwrap_or(&size))
    }

    /// `succ(size) - size`.
    pub fn zeta(&self, size: i64) -> Result<i64> {
        Ok(self.succ(size)? - size)
    }

    /// Number of column positions `j` with `y_j = z_size`: `size` minus the
    /// previous critical size (or zero).
    pub fn column_weight(&self, size: i64) -> Result<i64> {
        let p = self.position(size)?;
        Ok(size - if p == 0 { 0 } else { self.gamma[p - 1] })
    }
}

/// Colors used by the canonical coloring (one per clique vertex, one per
/// independent class). No optimal coloring uses more.
pub fn canonical_color_count(t: &TypeGraph) -> usize {
    (0..t.k())
        .map(|i| match t.kind(i) {
            TypeKind::Clique => t.weight(i),
            TypeKind::Independent => 1,
        })
        .sum()
}

fn demand(t: &TypeGraph, i: usize) -> i64 {
    match t.kind(i) {
        TypeKind::Clique => t.weight(i) as i64,
        TypeKind::Independent => 1,
    }
}

/// One brick per color with `x_i` (class `i` uses this color) and one slack
/// per type-graph edge: `x_i + x_j + s_ij = 1`. Top rows ask every clique
/// class for `|V_i|` colors and every independent class for one.
/// `colors` defaults to `|G|`.
pub fn build_sumcol_nfold(t: &TypeGraph, colors: Option<usize>) -> Result<IpModel> {
    let k = t.k();
    let colors = colors.unwrap_or(t.n());
    let edges = t.edges();
    let (r, s) = (k, edges.len());
    let width = k + s;
    let n = colors * width;
    let mut a1 = IntMatrix::zeros(r, width);
    for i in 0..k {
        a1.set(i, i, 1);
    }
    let mut a2 = IntMatrix::zeros(s, width);
    for (e, &(i, j)) in edges.iter().enumerate() {
        a2.set(e, i, 1);
        a2.set(e, j, 1);
        a2.set(e, k + e, 1);
    }
    let mut cost = vec![0; n];
    for alpha in 0..colors {
        for i in 0..k {
            let per_vertex = match t.kind(i) {
                TypeKind::Clique => 1,
                TypeKind::Independent => t.weight(i) as i64,
            };
            cost[alpha * width + i] = (alpha as i64 + 1) * per_vertex;
        }
    }
    let mut m = IpModel::new(
        vec![0; n],
        vec![1; n],
        Objective::Linear(cost),
        Sense::Minimize,
    );
    for i in 0..k {
        m.add_row(
            (0..colors).map(|alpha| (alpha * width + i, 1)).collect(),
            Relation::Eq,
            demand(t, i),
        );
    }
    for alpha in 0..colors {
        for (e, &(i, j)) in edges.iter().enumerate() {
            let base = alpha * width;
            m.add_row(
                vec![(base + i, 1), (base + j, 1), (base + k + e, 1)],
                Relation::Eq,
                1,
            );
        }
    }
    m.layout = Some(Layout::NFold(NFoldBlocks {
        r,
        s,
        t: width,
        n: colors,
        a1,
        a2,
    }));
    m.tag = Some(ModelTag::SumColNFold { colors });
    if canonical_color_count(t) <= colors {
        let mut x = vec![0; n];
        let mut alpha = 0;
        for i in 0..k {
            for _ in 0..demand(t, i) {
                x[alpha * width + i] = 1;
                alpha += 1;
            }
        }
        for alpha in 0..colors {
            for (e, &(i, j)) in edges.iter().enumerate() {
                let base = alpha * width;
                x[base + k + e] = 1 - x[base + i] - x[base + j];
            }
        }
        m.initial_point = Some(x);
    }
    Ok(m)
}

/// `x_I` per catalog entry, multiplicity one per singleton set.
fn canonical_multiplicities(t: &TypeGraph, catalog: &ColorClassCatalog) -> Vec<i64> {
    let mut x = vec![0; catalog.len()];
    for i in 0..t.k() {
        let idx = catalog
            .index_of(1 << i)
            .expect("singletons are independent");
        x[idx] = demand(t, i);
    }
    x
}

fn covering_rows(m: &mut IpModel, t: &TypeGraph, catalog: &ColorClassCatalog) {
    for i in 0..t.k() {
        let terms = (0..catalog.len())
            .filter(|&idx| catalog.contains(idx, i))
            .map(|idx| (idx, 1))
            .collect();
        m.add_row(terms, Relation::Eq, demand(t, i));
    }
}

/// One multiplicity `x_I` per independent set; objective
/// `S(x) = sum_j column_cost(#{classes of size >= j})`.
pub fn build_sumcol_convex(t: &TypeGraph) -> Result<IpModel> {
    let catalog = ColorClassCatalog::new(t)?;
    let upper: Vec<i64> = (0..catalog.len()).map(|idx| catalog.upper(idx)).collect();
    let sizes = catalog.sigmas().iter().map(|&s| s as u64).collect();
    let mut m = IpModel::new(
        vec![0; catalog.len()],
        upper,
        Objective::NestedColumns { sizes },
        Sense::Minimize,
    );
    covering_rows(&mut m, t, &catalog);
    m.tag = Some(ModelTag::SumColConvex);
    m.initial_point = Some(canonical_multiplicities(t, &catalog));
    Ok(m)
}

/// Multiplicities `x_I` followed by `z_g` for every critical size `g`
/// (ascending). Rows: the covering rows `F`, then `L`:
/// `z_g - z_succ(g) - sum_{sigma(I) = g} x_I = 0`, with `z_succ` dropped for
/// the largest size. Objective `sum_g (g - pred(g)) column_cost(z_g)`.
pub fn build_sumcol_graver(t: &TypeGraph) -> Result<IpModel> {
    let catalog = ColorClassCatalog::new(t)?;
    let kx = catalog.len();
    let gamma = catalog.gamma().to_vec();
    let n = kx + gamma.len();
    let total = canonical_color_count(t) as i64;
    let mut upper: Vec<i64> = (0..kx).map(|idx| catalog.upper(idx)).collect();
    for &g in &gamma {
        let reach: i64 = (0..kx)
            .filter(|&idx| catalog.sigma(idx) >= g)
            .map(|idx| catalog.upper(idx))
            .sum();
        upper.push(reach.min(total));
    }
    let mut parts = vec![Univariate::Linear(0); kx];
    for &g in &gamma {
        parts.push(Univariate::ColumnCost {
            weight: catalog.column_weight(g)?,
        });
    }
    let mut m = IpModel::new(
        vec![0; n],
        upper,
        Objective::Separable(parts),
        Sense::Minimize,
    );
    covering_rows(&mut m, t, &catalog);
    for (p, &g) in gamma.iter().enumerate() {
        let mut terms = vec![(kx + p, 1)];
        if p + 1 < gamma.len() {
            terms.push((kx + p + 1, -1));
        }
        terms.extend(
            (0..kx)
                .filter(|&idx| catalog.sigma(idx) == g)
                .map(|idx| (idx, -1)),
        );
        m.add_row(terms, Relation::Eq, 0);
    }
    m.layout = Some(Layout::Stacked {
        f_rows: t.k(),
        l_rows: gamma.len(),
    });
    m.tag = Some(ModelTag::SumColGraver);
    let mut x = canonical_multiplicities(t, &catalog);
    x.extend(z_values(&catalog, &x));
    m.initial_point = Some(x);
    Ok(m)
}

/// `z_g = #{classes of size >= g}` for the multiplicities `x`.
pub fn z_values(catalog: &ColorClassCatalog, x: &[i64]) -> Vec<i64> {
    catalog
        .gamma()
        .iter()
        .map(|&g| {
            (0..catalog.len())
                .filter(|&idx| catalog.sigma(idx) >= g)
                .map(|idx| x[idx])
                .sum()
        })
        .collect()
}

/// `S_convex` of a multiplicity vector.
pub fn s_convex(catalog: &ColorClassCatalog, x: &[i64]) -> i64 {
    let sizes: Vec<u64> = catalog.sigmas().iter().map(|&s| s as u64).collect();
    Objective::NestedColumns { sizes }.eval(&x[..catalog.len()])
}

/// A proper coloring with colors `1, 2, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<u32>,
}

impl Coloring {
    pub fn cost(&self) -> i64 {
        self.colors.iter().map(|&c| i64::from(c)).sum()
    }

    pub fn max_color(&self) -> u32 {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// `mu[p - 1]` = vertices of color `p`, for `p = 1..=max_color`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut mu = vec![0; self.max_color() as usize];
        for &c in &self.colors {
            mu[c as usize - 1] += 1;
        }
        mu
    }
}

/// Assigns colors to the classes of `t`: `classes[c]` lists the type-graph
/// classes met by color `c + 1`. Clique members take colors in index order.
fn materialize(t: &TypeGraph, g: &Graph, classes: &[Vec<usize>]) -> Result<Coloring> {
    let mut colors = vec![0u32; t.n()];
    let mut next = vec![0usize; t.k()];
    for (c, members) in classes.iter().enumerate() {
        let color = c as u32 + 1;
        for &i in members {
            match t.kind(i) {
                TypeKind::Clique => {
                    let v = *t.members(i).get(next[i]).ok_or_else(|| {
                        Error::NotDecodable(format!(
                            "clique class {i} receives more than {} colors",
                            t.weight(i)
                        ))
                    })?;
                    colors[v] = color;
                    next[i] += 1;
                }
                TypeKind::Independent => {
                    if next[i] > 0 {
                        return Err(Error::NotDecodable(format!(
                            "independent class {i} receives two colors"
                        )));
                    }
                    for &v in t.members(i) {
                        colors[v] = color;
                    }
                    next[i] = 1;
                }
            }
        }
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(Error::NotDecodable(format!("vertex {v} is uncolored")));
    }
    let coloring = Coloring { colors };
    if !check_coloring(g, &coloring) {
        return Err(Error::NotDecodable("decoded coloring is not proper".into()));
    }
    Ok(coloring)
}

/// Materializes a model point as a coloring of `g`. Multiplicity models list
/// their color classes by decreasing size; the n-fold model keeps its colors.
pub fn decode_coloring(t: &TypeGraph, g: &Graph, point: &[i64], tag: ModelTag) -> Result<Coloring> {
    match tag {
        ModelTag::SumColNFold { colors } => {
            let width = t.k() + t.edges().len();
            if point.len() != colors * width {
                return Err(Error::LengthMismatch {
                    expected: colors * width,
                    found: point.len(),
                });
            }
            let mut classes: Vec<Vec<usize>> = (0..colors)
                .map(|alpha| {
                    (0..t.k())
                        .filter(|&i| point[alpha * width + i] == 1)
                        .collect()
                })
                .collect();
            while classes.last().is_some_and(Vec::is_empty) {
                classes.pop();
            }
            materialize(t, g, &classes)
        }
        ModelTag::SumColConvex | ModelTag::SumColGraver => {
            let catalog = ColorClassCatalog::new(t)?;
            if point.len() < catalog.len() {
                return Err(Error::LengthMismatch {
                    expected: catalog.len(),
                    found: point.len(),
                });
            }
            let mut order: Vec<usize> = Vec::new();
            for idx in 0..catalog.len() {
                if point[idx] < 0 {
                    return Err(Error::NotDecodable(format!(
                        "negative multiplicity at {idx}"
                    )));
                }
                order.extend(std::iter::repeat_n(idx, point[idx] as usize));
            }
            order.sort_by_key(|&idx| (std::cmp::Reverse(catalog.sigma(idx)), idx));
            let classes: Vec<Vec<usize>> = order.iter().map(|&idx| catalog.members(idx)).collect();
            materialize(t, g, &classes)
        }
        other => Err(Error::InvalidModel(format!(
            "{} is not a coloring model",
            other.name()
        ))),
    }
}

/// Multiplicity vector of an essential coloring: how many colors meet exactly
/// each independent set of classes.
pub fn multiplicities(
    t: &TypeGraph,
    catalog: &ColorClassCatalog,
    c: &Coloring,
) -> Result<Vec<i64>> {
    let class = t.class_of();
    let mut masks = vec![0u32; c.max_color() as usize];
    for (v, &color) in c.colors.iter().enumerate() {
        masks[color as usize - 1] |= 1 << class[v];
    }
    let mut x = vec![0; catalog.len()];
    for mask in masks.into_iter().filter(|&m| m != 0) {
        let idx = catalog.index_of(mask).ok_or_else(|| {
            Error::NotDecodable(format!("color meets non-independent classes {mask:#b}"))
        })?;
        x[idx] += 1;
    }
    Ok(x)
}

/// Meets every clique class in at most one vertex and every independent
/// class in none or all of its vertices.
pub fn is_essential(t: &TypeGraph, c: &Coloring) -> bool {
    let class = t.class_of();
    let mut meet = std::collections::BTreeMap::<(u32, usize), usize>::new();
    for (v, &color) in c.colors.iter().enumerate() {
        *meet.entry((color, class[v])).or_default() += 1;
    }
    meet.iter().all(|(&(_, i), &count)| match t.kind(i) {
        TypeKind::Clique => count <= 1,
        TypeKind::Independent => count == t.weight(i),
    })
}

/// Recolors every independent class with its smallest color, then renumbers
/// colors by decreasing class size (ties by old color). Never increases cost.
pub fn canonical_recolor(t: &TypeGraph, c: &Coloring) -> Coloring {
    let mut colors = c.colors.clone();
    for i in 0..t.k() {
        if t.kind(i) == TypeKind::Independent {
            let min = t.members(i).iter().map(|&v| colors[v]).min().unwrap_or(0);
            for &v in t.members(i) {
                colors[v] = min;
            }
        }
    }
    let recolored = Coloring { colors };
    let mu = recolored.class_sizes();
    let mut order: Vec<usize> = (0..mu.len()).filter(|&p| mu[p] > 0).collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(mu[p]), p));
    let mut relabel = vec![0u32; mu.len()];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new as u32 + 1;
    }
    Coloring {
        colors: recolored
            .colors
            .iter()
            .map(|&c| relabel[c as usize - 1])
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::boxed::solve_boxed;

    fn optimum(m: &IpModel) -> i64 {
        solve_boxed(m).unwrap().value().unwrap()
    }

    #[test]
    fn column_costs() {
        assert_eq!((column_cost(0), column_cost(1), column_cost(3)), (0, 1, 6));
    }

    #[test]
    fn catalog_of_path() {
        // P_3: classes {0, 2} (independent, size 2) and {1}
        let t = TypeGraph::of(&Graph::path(3));
        let c = ColorClassCatalog::new(&t).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.gamma(), &[1, 2]);
        assert_eq!((c.succ(1).unwrap(), c.succ(2).unwrap()), (2, 2));
        assert_eq!((c.zeta(1).unwrap(), c.zeta(2).unwrap()), (1, 0));
        assert_eq!(
            (c.column_weight(1).unwrap(), c.column_weight(2).unwrap()),
            (1, 1)
        );
    }

    #[test]
    fn small_optima() {
        let cases = [
            (Graph::complete(3), 6),
            (Graph::path(3), 4),
            (Graph::star(3), 5),
            (Graph::new(4, [(0, 1), (2, 3)]).unwrap(), 6),
            (Graph::complete(1), 1),
            (Graph::edgeless(4), 4),
        ];
        for (g, want) in cases {
            let t = TypeGraph::of(&g);
            assert_eq!(optimum(&build_sumcol_nfold(&t, None).unwrap()), want);
            assert_eq!(optimum(&build_sumcol_convex(&t).unwrap()), want);
            assert_eq!(optimum(&build_sumcol_graver(&t).unwrap()), want);
        }
    }

    #[test]
    fn single_class_graver_model() {
        let t = TypeGraph::of(&Graph::edgeless(5));
        let m = build_sumcol_graver(&t).unwrap();
        assert_eq!(m.num_vars(), 2);
        assert_eq!(optimum(&m), 5);
        let t = TypeGraph::of(&Graph::complete(4));
        assert_eq!(optimum(&build_sumcol_graver(&t).unwrap()), 10);
    }

    #[test]
    fn nfold_layout_validates() {
        let t = TypeGraph::of(&Graph::path(4));
        let m = build_sumcol_nfold(&t, Some(3)).unwrap();
        m.validate().unwrap();
        // four singleton classes: the canonical coloring needs four colors
        assert!(m.initial_point.is_none());
        let Some(Layout::NFold(b)) = m.layout() else {
            panic!()
        };
        assert_eq!((b.r, b.s, b.t, b.n), (4, 3, 7, 3));
        let m = build_sumcol_nfold(&t, None).unwrap();
        assert!(m.is_feasible(m.initial_point.as_ref().unwrap()));
    }

    #[test]
    fn decoding_round_trip() {
        for g in [Graph::complete(3), Graph::path(3), Graph::star(3)] {
            let t = TypeGraph::of(&g);
            for m in [
                build_sumcol_nfold(&t, None).unwrap(),
                build_sumcol_convex(&t).unwrap(),
                build_sumcol_graver(&t).unwrap(),
            ] {
                let out = solve_boxed(&m).unwrap();
                let c = decode_coloring(&t, &g, out.point().unwrap(), m.tag.unwrap()).unwrap();
                assert_eq!(c.cost(), out.value().unwrap());
            }
        }
    }

    #[test]
    fn undecodable_points() {
        let g = Graph::complete(3);
        let t = TypeGraph::of(&g);
        assert!(matches!(
            decode_coloring(&t, &g, &[4], ModelTag::SumColConvex),
            Err(Error::NotDecodable(_))
        ));
        assert!(matches!(
            decode_coloring(&t, &g, &[2], ModelTag::SumColConvex),
            Err(Error::NotDecodable(_))
        ));
    }

    #[test]
    fn recoloring_merges_split_independent_class() {
        let g = Graph::edgeless(3);
        let t = TypeGraph::of(&g);
        let c = Coloring {
            colors: vec![2, 1, 3],
        };
        let r = canonical_recolor(&t, &c);
        assert_eq!(r.colors, vec![1, 1, 1]);
        assert!(is_essential(&t, &r));
        assert!(!is_essential(&t, &c));
    }
}
