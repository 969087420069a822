//! Graphs, twin partitions and type graphs.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`, optionally carrying a
/// capacity per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
    capacity: Option<Vec<u32>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("repeated edge {{{u}, {v}}}")));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &set {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            adj,
            edges: set,
            capacity: None,
        })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            adj: vec![Vec::new(); n],
            edges: BTreeSet::new(),
            capacity: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::new(n, edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::new(n, edges).expect("cycle is simple")
    }

    /// Star with center `0` and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    /// Attaches capacities; one value per vertex.
    pub fn with_capacities(mut self, capacity: Vec<u32>) -> Result<Self> {
        if capacity.len() != self.n {
            return Err(Error::InvalidGraph(format!(
                "{} capacities for {} vertices",
                capacity.len(),
                self.n
            )));
        }
        self.capacity = Some(capacity);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn capacities(&self) -> Option<&[u32]> {
        self.capacity.as_deref()
    }

    pub fn capacity(&self, v: usize) -> Option<u32> {
        self.capacity.as_ref().map(|c| c[v])
    }

    /// `N(u) \ {v} = N(v) \ {u}`.
    pub fn are_twins(&self, u: usize, v: usize) -> bool {
        if u == v {
            return true;
        }
        let a = self.adj[u].iter().filter(|&&w| w != v);
        let b = self.adj[v].iter().filter(|&&w| w != u);
        a.eq(b)
    }
}

/// Kind of a twin class. Singletons are always [`TypeKind::Independent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeKind {
    Clique,
    Independent,
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeKind::Clique => "clique",
            TypeKind::Independent => "independent",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypePartition {
    pub classes: Vec<Vec<usize>>,
    pub kinds: Vec<TypeKind>,
}

impl TypePartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Coarsest partition of the vertices into twin classes.
///
/// Classes are listed by smallest member; members in increasing order. The
/// class count is the neighborhood diversity of `g`.
pub fn twin_partition(g: &Graph) -> TypePartition {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        // twin equivalence is transitive, so comparing with one representative suffices
        match classes.iter_mut().find(|c| g.are_twins(c[0], v)) {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let kinds = classes.iter().map(|c| class_kind(g, c)).collect();
    TypePartition { classes, kinds }
}

fn class_kind(g: &Graph, class: &[usize]) -> TypeKind {
    if class.len() >= 2 && g.has_edge(class[0], class[1]) {
        TypeKind::Clique
    } else {
        TypeKind::Independent
    }
}

/// Compressed representation of a graph by its twin classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeGraph {
    /// Members of each class. With capacities, ordered by non-increasing
    /// capacity (ties by vertex index); otherwise by vertex index.
    members: Vec<Vec<usize>>,
    kinds: Vec<TypeKind>,
    adj: Vec<Vec<bool>>,
    sorted_capacities: Option<Vec<Vec<u32>>>,
    n: usize,
}

/// Validates `p` against `g` and builds the type graph.
pub fn build_type_graph(g: &Graph, p: &TypePartition) -> Result<TypeGraph> {
    if p.classes.len() != p.kinds.len() {
        return Err(Error::InvalidPartition(
            "one kind per class required".into(),
        ));
    }
    let mut seen = vec![false; g.n()];
    for class in &p.classes {
        if class.is_empty() {
            return Err(Error::InvalidPartition("empty class".into()));
        }
        for &v in class {
            if v >= g.n() {
                return Err(Error::InvalidPartition(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} in two classes"
                )));
            }
        }
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
    }
    let mut kinds = Vec::with_capacity(p.classes.len());
    for (class, &kind) in p.classes.iter().zip(&p.kinds) {
        for (a, &u) in class.iter().enumerate() {
            for &v in &class[a + 1..] {
                if !g.are_twins(u, v) {
                    return Err(Error::InvalidPartition(format!(
                        "vertices {u} and {v} are not twins"
                    )));
                }
            }
        }
        let actual = class_kind(g, class);
        if class.len() >= 2 && actual != kind {
            return Err(Error::InvalidPartition(format!(
                "class containing {} is {actual}, declared {kind}",
                class[0]
            )));
        }
        kinds.push(actual);
    }

    let k = p.classes.len();
    let mut adj = vec![vec![false; k]; k];
    for i in 0..k {
        adj[i][i] = kinds[i] == TypeKind::Clique;
        for j in i + 1..k {
            let e = g.has_edge(p.classes[i][0], p.classes[j][0]);
            adj[i][j] = e;
            adj[j][i] = e;
        }
    }

    let mut members: Vec<Vec<usize>> = p
        .classes
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    let sorted_capacities = g.capacities().map(|caps| {
        members
            .iter_mut()
            .map(|class| {
                class.sort_by_key(|&v| (std::cmp::Reverse(caps[v]), v));
                class.iter().map(|&v| caps[v]).collect()
            })
            .collect()
    });
    Ok(TypeGraph {
        members,
        kinds,
        adj,
        sorted_capacities,
        n: g.n(),
    })
}

impl TypeGraph {
    /// Type graph of `g` under its coarsest twin partition.
    pub fn of(g: &Graph) -> Self {
        build_type_graph(g, &twin_partition(g)).expect("twin partition is valid")
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    /// Vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, i: usize) -> usize {
        self.members[i].len()
    }

    pub fn weights(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    pub fn kind(&self, i: usize) -> TypeKind {
        self.kinds[i]
    }

    pub fn kinds(&self) -> &[TypeKind] {
        &self.kinds
    }

    pub fn members(&self, i: usize) -> &[usize] {
        &self.members[i]
    }

    /// Edge or loop `{i, j}`.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Neighbors of `i`, including `i` itself when it carries a loop.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.k()).filter(move |&j| self.adj[i][j])
    }

    /// Unordered edges `i < j` (loops excluded).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let k = self.k();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adj[i][j])
            .collect()
    }

    pub fn has_capacities(&self) -> bool {
        self.sorted_capacities.is_some()
    }

    pub fn sorted_capacities(&self, i: usize) -> Result<&[u32]> {
        let caps = self
            .sorted_capacities
            .as_ref()
            .ok_or(Error::MissingCapacities)?;
        caps.get(i).map(Vec::as_slice).ok_or(Error::UnknownClass(i))
    }

    /// Class index of every vertex.
    pub fn class_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (i, class) in self.members.iter().enumerate() {
            for &v in class {
                out[v] = i;
            }
        }
        out
    }

    /// Sum of the `count` largest capacities of class `i`; saturates at the
    /// class size.
    pub fn domination_capacity(&self, i: usize, count: usize) -> Result<u64> {
        let caps = self.sorted_capacities(i)?;
        Ok(caps.iter().take(count).map(|&c| u64::from(c)).sum())
    }

    /// `domination_capacity(i, l)` for `l = 0..=|V_i|`.
    pub fn domination_table(&self, i: usize) -> Result<Vec<u64>> {
        let caps = self.sorted_capacities(i)?;
        let mut table = Vec::with_capacity(caps.len() + 1);
        let mut acc = 0u64;
        table.push(0);
        for &c in caps {
            acc += u64::from(c);
            table.push(acc);
        }
        Ok(table)
    }
}
