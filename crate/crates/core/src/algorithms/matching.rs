//! Maximum bipartite matching with capacitated left vertices.

/// `assignment[r]` is the left vertex matched to right vertex `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    pub assignment: Vec<Option<usize>>,
}

/// Left vertex `l` may take up to `capacity[l]` right vertices; `adj[r]`
/// lists the left neighbours of right vertex `r`. Augmenting paths from each
/// right vertex in order, neighbours in listed order.
pub fn max_bipartite_matching(capacity: &[u32], adj: &[Vec<usize>]) -> Matching {
    let mut assignment: Vec<Option<usize>> = vec![None; adj.len()];
    let mut held: Vec<Vec<usize>> = vec![Vec::new(); capacity.len()];
    let mut size = 0;
    for r in 0..adj.len() {
        let mut seen = vec![false; capacity.len()];
        if augment(r, capacity, adj, &mut assignment, &mut held, &mut seen) {
            size += 1;
        }
    }
    Matching { size, assignment }
}

fn augment(
    r: usize,
    capacity: &[u32],
    adj: &[Vec<usize>],
    assignment: &mut [Option<usize>],
    held: &mut [Vec<usize>],
    seen: &mut [bool],
) -> bool {
    for &l in &adj[r] {
        if seen[l] {
            continue;
        }
        seen[l] = true;
        if held[l].len() < capacity[l] as usize {
            held[l].push(r);
            assignment[r] = Some(l);
            return true;
        }
        for slot in 0..held[l].len() {
            let other = held[l][slot];
            if augment(other, capacity, adj, assignment, held, seen) {
                held[l][slot] = r;
                assignment[r] = Some(l);
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_right_side() {
        assert_eq!(max_bipartite_matching(&[3], &[]).size, 0);
    }

    #[test]
    fn star_center_takes_three() {
        let m = max_bipartite_matching(&[3], &[vec![0], vec![0], vec![0]]);
        assert_eq!(m.size, 3);
        assert_eq!(m.assignment, vec![Some(0); 3]);
    }

    #[test]
    fn disconnected_right_vertex_stays_unmatched() {
        let m = max_bipartite_matching(&[5], &[vec![0], vec![]]);
        assert_eq!(m.size, 1);
        assert_eq!(m.assignment[1], None);
    }

    #[test]
    fn reroutes_through_augmenting_path() {
        // r0 can use l0 or l1, r1 only l0; capacities 1
        let m = max_bipartite_matching(&[1, 1], &[vec![0, 1], vec![0]]);
        assert_eq!(m.size, 2);
        assert_eq!(m.assignment, vec![Some(1), Some(0)]);
    }

    /// Size of a maximum matching by trying every assignment.
    fn brute(capacity: &[u32], adj: &[Vec<usize>]) -> usize {
        fn go(r: usize, load: &mut Vec<u32>, capacity: &[u32], adj: &[Vec<usize>]) -> usize {
            if r == adj.len() {
                return 0;
            }
            let mut best = go(r + 1, load, capacity, adj);
            for &l in &adj[r] {
                if load[l] < capacity[l] {
                    load[l] += 1;
                    best = best.max(1 + go(r + 1, load, capacity, adj));
                    load[l] -= 1;
                }
            }
            best
        }
        go(0, &mut vec![0; capacity.len()], capacity, adj)
    }

    proptest! {
        #[test]
        fn maximum_and_consistent(
            capacity in proptest::collection::vec(0u32..3, 1..4),
            raw in proptest::collection::vec(proptest::collection::vec(0usize..4, 0..3), 0..6),
        ) {
            let left = capacity.len();
            let adj: Vec<Vec<usize>> = raw.into_iter().map(|mut a| {
                a.retain(|&l| l < left);
                a.sort_unstable();
                a.dedup();
                a
            }).collect();
            let m = max_bipartite_matching(&capacity, &adj);
            prop_assert_eq!(m.size, brute(&capacity, &adj));
            let mut load = vec![0u32; left];
            for (r, a) in m.assignment.iter().enumerate() {
                if let Some(l) = a {
                    prop_assert!(adj[r].contains(l));
                    load[*l] += 1;
                }
            }
            prop_assert!(load.iter().zip(&capacity).all(|(a, c)| a <= c));
            prop_assert_eq!(m.assignment.iter().flatten().count(), m.size);
        }
    }
}
