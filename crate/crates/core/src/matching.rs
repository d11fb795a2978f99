//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).

/// `adj[l]` lists the right vertices adjacent to left vertex `l`. Returns, for
/// each left vertex, its matched right vertex. Deterministic: left vertices
/// are processed in order and neighbors in list order.
pub fn maximum_matching(adj: &[Vec<usize>], n_right: usize) -> Vec<Option<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; n_right];
    for l in 0..adj.len() {
        let mut visited = vec![false; n_right];
        augment(adj, l, &mut visited, &mut owner);
    }
    let mut matched = vec![None; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = *o {
            matched[l] = Some(r);
        }
    }
    matched
}

fn augment(adj: &[Vec<usize>], l: usize, visited: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for &r in &adj[l] {
        if visited[r] {
            continue;
        }
        visited[r] = true;
        if owner[r].is_none() || augment(adj, owner[r].unwrap(), visited, owner) {
            owner[r] = Some(l);
            return true;
        }
    }
    false
}
