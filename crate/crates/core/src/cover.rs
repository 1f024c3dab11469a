//! Exact minimum set cover and maximum independent set by branch and bound.
//!
//! Instances are small (one gadget neighbourhood at a time), so plain
//! bitmask search with simple bounds is enough; branching order is fixed,
//! which keeps the results deterministic.

/// Smallest number of `sets` (bitmasks over `n` elements) covering every
/// element, with one optimal choice of set indices. `None` if some element
/// is in no set.
pub fn min_set_cover(n: usize, sets: &[u128]) -> Option<(usize, Vec<usize>)> {
    assert!(n <= 128, "at most 128 elements");
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let union = sets.iter().fold(0u128, |a, s| a | s);
    if union & full != full {
        return None;
    }
    let max_set = sets.iter().map(|s| (s & full).count_ones()).max().unwrap_or(1).max(1) as usize;
    let mut best: Vec<usize> = greedy_cover(full, sets);
    let mut chosen = Vec::new();
    search_cover(0, full, sets, max_set, &mut chosen, &mut best);
    Some((best.len(), best))
}

fn greedy_cover(full: u128, sets: &[u128]) -> Vec<usize> {
    let mut covered = 0u128;
    let mut out = Vec::new();
    while covered & full != full {
        let (i, _) = sets
            .iter()
            .enumerate()
            .max_by_key(|(i, s)| ((*s & !covered & full).count_ones(), std::cmp::Reverse(*i)))
            .expect("cover exists");
        covered |= sets[i];
        out.push(i);
    }
    out
}

fn search_cover(
    covered: u128,
    full: u128,
    sets: &[u128],
    max_set: usize,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    let missing = full & !covered;
    if missing == 0 {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    let lower = (missing.count_ones() as usize).div_ceil(max_set);
    if chosen.len() + lower >= best.len() {
        return;
    }
    // branch on the uncovered element with the fewest covering sets
    let mut pick = 0;
    let mut fewest = usize::MAX;
    let mut m = missing;
    while m != 0 {
        let e = m.trailing_zeros();
        m &= m - 1;
        let cnt = sets.iter().filter(|s| *s >> e & 1 == 1).count();
        if cnt < fewest {
            fewest = cnt;
            pick = e;
        }
    }
    let mut opts: Vec<usize> = (0..sets.len()).filter(|&i| sets[i] >> pick & 1 == 1).collect();
    opts.sort_by_key(|&i| std::cmp::Reverse((sets[i] & missing).count_ones()));
    for i in opts {
        chosen.push(i);
        search_cover(covered | sets[i], full, sets, max_set, chosen, best);
        chosen.pop();
    }
}

/// Maximum independent set of a graph on `n ≤ 128` vertices given as
/// adjacency bitmasks.
pub fn max_independent_set(n: usize, adj: &[u128]) -> Vec<usize> {
    assert!(n <= 128 && adj.len() == n);
    let all: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut best = 0u128;
    search_mis(all, 0, adj, &mut best);
    (0..n).filter(|&i| best >> i & 1 == 1).collect()
}

fn search_mis(cand: u128, cur: u128, adj: &[u128], best: &mut u128) {
    if cand == 0 {
        if cur.count_ones() > best.count_ones() {
            *best = cur;
        }
        return;
    }
    if cur.count_ones() + cand.count_ones() <= best.count_ones() {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    let bit = 1u128 << v;
    // isolated within the candidates: always take it
    if adj[v] & cand == 0 {
        search_mis(cand & !bit, cur | bit, adj, best);
        return;
    }
    search_mis(cand & !bit & !adj[v], cur | bit, adj, best);
    search_mis(cand & !bit, cur, adj, best);
}

/// Connected components of an undirected graph given by adjacency masks.
pub fn components(n: usize, adj: &[u128]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            k += 1;
            for w in 0..n {
                if !seen[w] && adj[v] >> w & 1 == 1 {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}
