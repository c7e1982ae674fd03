//! Derangement completion by augmenting-path bipartite matching.

/// Returns whether `perm` (1-based images) is a permutation of `1..=len` with no fixed point.
pub fn is_derangement(perm: &[usize]) -> bool {
    let q = perm.len();
    let mut seen = vec![false; q];
    for (j, &t) in perm.iter().enumerate() {
        if t == 0 || t > q || t == j + 1 || seen[t - 1] {
            return false;
        }
        seen[t - 1] = true;
    }
    true
}

/// Extends a partial injective map `j ↦ t` (1-based, `j ≠ t`) to a
/// derangement of `1..=q`, or returns `None` if no extension exists.
///
/// The free sources are matched to the unused targets over the allowed
/// pairs `{(j, t) : j ≠ t}` with Kuhn's augmenting-path algorithm.
pub fn complete_derangement(q: usize, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut image: Vec<Option<usize>> = vec![None; q];
    let mut used = vec![false; q];
    for &(j, t) in fixed {
        if j == 0 || t == 0 || j > q || t > q || j == t {
            return None;
        }
        if image[j - 1].is_some() || used[t - 1] {
            return None;
        }
        image[j - 1] = Some(t - 1);
        used[t - 1] = true;
    }
    let free: Vec<usize> = (0..q).filter(|&j| image[j].is_none()).collect();
    let open: Vec<usize> = (0..q).filter(|&t| !used[t]).collect();

    // owner[k] = index into `free` currently matched to open[k]
    let mut owner: Vec<Option<usize>> = vec![None; open.len()];
    fn augment(
        a: usize,
        free: &[usize],
        open: &[usize],
        owner: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for k in 0..open.len() {
            if open[k] == free[a] || visited[k] {
                continue;
            }
            visited[k] = true;
            if owner[k].is_none_or(|b| augment(b, free, open, owner, visited)) {
                owner[k] = Some(a);
                return true;
            }
        }
        false
    }
    for a in 0..free.len() {
        let mut visited = vec![false; open.len()];
        if !augment(a, &free, &open, &mut owner, &mut visited) {
            return None;
        }
    }
    for (k, a) in owner.iter().enumerate() {
        image[free[a.expect("perfect matching")]] = Some(open[k]);
    }
    Some(image.into_iter().map(|t| t.expect("total map") + 1).collect())
}
