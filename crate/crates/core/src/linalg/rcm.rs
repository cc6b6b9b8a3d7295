//! Reverse Cuthill-McKee ordering, used to shrink the envelope of the
//! Cholesky factor before a direct solve.

use super::csr::SymCsr;

/// Compute an RCM ordering of the matrix graph. Returns `order` with
/// `order[new] = old`; ties are broken by vertex index, so the result is
/// deterministic.
pub fn reverse_cuthill_mckee(a: &SymCsr) -> Vec<u32> {
    let n = a.dim();
    let degree: Vec<u32> = (0..n)
        .map(|i| a.row(i).filter(|&(j, _)| j as usize != i).count() as u32)
        .collect();
    let mut visited = vec![false; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    while let Some(seed) = (0..n)
        .filter(|&i| !visited[i])
        .min_by_key(|&i| (degree[i], i))
    {
        let start = pseudo_peripheral(a, seed as u32, &degree);
        // Cuthill-McKee BFS with (degree, index)-sorted neighbor visits.
        let begin = order.len();
        visited[start as usize] = true;
        order.push(start);
        let mut head = begin;
        while head < order.len() {
            let u = order[head] as usize;
            head += 1;
            let mut nbrs: Vec<u32> = a
                .row(u)
                .map(|(j, _)| j)
                .filter(|&j| !visited[j as usize])
                .collect();
            nbrs.sort_by_key(|&j| (degree[j as usize], j));
            for j in nbrs {
                if !visited[j as usize] {
                    visited[j as usize] = true;
                    order.push(j);
                }
            }
        }
        order[begin..].reverse();
    }
    order
}

/// George-Liu pseudo-peripheral vertex: repeat BFS until the eccentricity
/// stops growing, stepping to a minimum-degree vertex of the last level.
fn pseudo_peripheral(a: &SymCsr, seed: u32, degree: &[u32]) -> u32 {
    let mut u = seed;
    let mut ecc = 0usize;
    for _ in 0..a.dim() {
        let (levels, last_level) = bfs_levels(a, u);
        if last_level <= ecc && ecc > 0 {
            break;
        }
        ecc = last_level;
        let v = (0..a.dim())
            .filter(|&i| levels[i] == last_level as i64)
            .min_by_key(|&i| (degree[i], i))
            .map(|i| i as u32)
            .unwrap_or(u);
        if v == u {
            break;
        }
        u = v;
    }
    u
}

fn bfs_levels(a: &SymCsr, start: u32) -> (Vec<i64>, usize) {
    let n = a.dim();
    let mut level = vec![-1i64; n];
    let mut queue = std::collections::VecDeque::new();
    level[start as usize] = 0;
    queue.push_back(start);
    let mut max_level = 0usize;
    while let Some(u) = queue.pop_front() {
        let lu = level[u as usize];
        for (j, _) in a.row(u as usize) {
            if level[j as usize] < 0 {
                level[j as usize] = lu + 1;
                max_level = max_level.max((lu + 1) as usize);
                queue.push_back(j);
            }
        }
    }
    (level, max_level)
}

/// Envelope size (stored entries of the lower profile) for a given order.
pub fn envelope_size(a: &SymCsr, order: &[u32]) -> usize {
    let n = a.dim();
    let mut inverse = vec![0u32; n];
    for (new, &old) in order.iter().enumerate() {
        inverse[old as usize] = new as u32;
    }
    let mut total = 0usize;
    for (new_i, &old_i) in order.iter().enumerate() {
        let first = a
            .row(old_i as usize)
            .map(|(j, _)| inverse[j as usize])
            .filter(|&j| (j as usize) <= new_i)
            .min()
            .unwrap_or(new_i as u32);
        total += new_i - first as usize + 1;
    }
    total
}
