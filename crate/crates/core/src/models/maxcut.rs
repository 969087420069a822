//! Max-q-Cut: `x_{i,a}` vertices of class `i` in part `a`, maximising the
//! number of edges between different parts.

use crate::algorithms::oracle::cut_value;
use crate::error::{Error, Result};
use crate::graph::{Graph, TypeGraph};
use crate::ip::{IpModel, ModelTag, Objective, Relation, Sense};

/// Variable `x_{i,a}` sits at `i * q + a`. A cross edge `{i, j}` contributes
/// `x_{i,a} x_{j,b}` for every ordered `a != b`; a loop `{i, i}` contributes
/// `x_{i,a} x_{i,b}` once per unordered `a < b`.
pub fn build_maxqcut(t: &TypeGraph, q: usize) -> Result<IpModel> {
    if q < 2 {
        return Err(Error::InvalidModel(format!(
            "need at least 2 parts, got {q}"
        )));
    }
    let k = t.k();
    let n = k * q;
    let mut terms = Vec::new();
    for (i, j) in t.edges() {
        for a in 0..q {
            for b in (0..q).filter(|&b| b != a) {
                terms.push((i * q + a, j * q + b, 1));
            }
        }
    }
    for i in (0..k).filter(|&i| t.has_edge(i, i)) {
        for a in 0..q {
            for b in a + 1..q {
                terms.push((i * q + a, i * q + b, 1));
            }
        }
    }
    let upper = (0..n).map(|v| t.weight(v / q) as i64).collect();
    let objective = Objective::Quadratic {
        linear: vec![0; n],
        terms,
    };
    let mut m = IpModel::new(vec![0; n], upper, objective, Sense::Maximize);
    for i in 0..k {
        m.add_row(
            (0..q).map(|a| (i * q + a, 1)).collect(),
            Relation::Eq,
            t.weight(i) as i64,
        );
    }
    m.tag = Some(ModelTag::MaxQCut { parts: q });
    let mut x0 = vec![0; n];
    for i in 0..k {
        x0[i * q] = t.weight(i) as i64;
    }
    m.initial_point = Some(x0);
    Ok(m)
}

/// `parts[v]` in `0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<usize>,
    pub q: usize,
}

/// Puts the first `x_{i,0}` members of class `i` (by index) in part 0, the
/// next `x_{i,1}` in part 1 and so on.
pub fn decode_partition(t: &TypeGraph, g: &Graph, point: &[i64], q: usize) -> Result<Partition> {
    if point.len() != t.k() * q {
        return Err(Error::LengthMismatch {
            expected: t.k() * q,
            found: point.len(),
        });
    }
    let mut parts = vec![usize::MAX; t.n()];
    for i in 0..t.k() {
        let mut members = t.members(i).to_vec();
        members.sort_unstable();
        let mut it = members.into_iter();
        for a in 0..q {
            let count = point[i * q + a];
            if count < 0 {
                return Err(Error::NotDecodable(format!("negative count for class {i}")));
            }
            for _ in 0..count {
                let v = it
                    .next()
                    .ok_or_else(|| Error::NotDecodable(format!("class {i} over-assigned")))?;
                parts[v] = a;
            }
        }
        if it.next().is_some() {
            return Err(Error::NotDecodable(format!("class {i} under-assigned")));
        }
    }
    let p = Partition { parts, q };
    debug_assert!(cut_value(g, &p) >= 0);
    Ok(p)
}
