//! Hopcroft–Karp maximum matching on a bipartite graph in CSR form.

const NONE: u32 = u32::MAX;
const INF: u32 = u32::MAX;

/// Left vertices `0..offsets.len()-1`, with neighbors
/// `targets[offsets[u]..offsets[u+1]]` among right vertices `0..n_right`.
pub struct Bipartite {
    pub offsets: Vec<usize>,
    pub targets: Vec<u32>,
    pub n_right: usize,
}

impl Bipartite {
    fn n_left(&self) -> usize {
        self.offsets.len() - 1
    }

    fn adj(&self, u: usize) -> &[u32] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }
}

/// Returns the partner of every left vertex (`None` if unmatched).
pub fn hopcroft_karp(g: &Bipartite) -> Vec<Option<usize>> {
    let nl = g.n_left();
    let mut match_l = vec![NONE; nl];
    let mut match_r = vec![NONE; g.n_right];
    let mut dist = vec![INF; nl];
    let mut queue = Vec::with_capacity(nl);
    let mut next = vec![0usize; nl];
    let mut stack: Vec<u32> = Vec::new();
    loop {
        // layer the graph from all free left vertices
        queue.clear();
        for u in 0..nl {
            if match_l[u] == NONE {
                dist[u] = 0;
                queue.push(u as u32);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            for &v in g.adj(u) {
                let w = match_r[v as usize];
                if w == NONE {
                    found = true;
                } else if dist[w as usize] == INF {
                    dist[w as usize] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
        if !found {
            break;
        }
        for u in 0..nl {
            next[u] = g.offsets[u];
        }
        // iterative depth-first augmentation along the layers
        for root in 0..nl {
            if match_l[root] != NONE {
                continue;
            }
            stack.clear();
            stack.push(root as u32);
            while let Some(&x) = stack.last() {
                let x = x as usize;
                if next[x] == g.offsets[x + 1] {
                    dist[x] = INF;
                    stack.pop();
                    continue;
                }
                let v = g.targets[next[x]];
                let w = match_r[v as usize];
                if w == NONE {
                    for &y in stack.iter() {
                        let y = y as usize;
                        let vy = g.targets[next[y]];
                        match_l[y] = vy;
                        match_r[vy as usize] = y as u32;
                    }
                    break;
                } else if dist[w as usize] != INF && dist[w as usize] == dist[x] + 1 {
                    stack.push(w);
                } else {
                    next[x] += 1;
                }
            }
        }
    }
    match_l
        .into_iter()
        .map(|m| if m == NONE { None } else { Some(m as usize) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(n_right: usize, adj: &[&[u32]]) -> Bipartite {
        let mut offsets = vec![0];
        let mut targets = Vec::new();
        for a in adj {
            targets.extend_from_slice(a);
            offsets.push(targets.len());
        }
        Bipartite {
            offsets,
            targets,
            n_right,
        }
    }

    fn size(m: &[Option<usize>]) -> usize {
        m.iter().flatten().count()
    }

    #[test]
    fn perfect_matching_needs_augmenting() {
        let g = build(3, &[&[0, 1], &[0], &[1, 2]]);
        let m = hopcroft_karp(&g);
        assert_eq!(size(&m), 3);
        assert_eq!(m[1], Some(0));
    }

    #[test]
    fn deficient_side() {
        let g = build(2, &[&[0], &[0], &[0, 1]]);
        assert_eq!(size(&hopcroft_karp(&g)), 2);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let nl = rng.gen_range(1..7);
            let nr = rng.gen_range(1..7);
            let adj: Vec<Vec<u32>> = (0..nl)
                .map(|_| (0..nr as u32).filter(|_| rng.gen_bool(0.4)).collect())
                .collect();
            let refs: Vec<&[u32]> = adj.iter().map(|a| a.as_slice()).collect();
            let m = hopcroft_karp(&build(nr, &refs));
            let mut used = vec![false; nr];
            for (u, p) in m.iter().enumerate() {
                if let Some(v) = p {
                    assert!(adj[u].contains(&(*v as u32)));
                    assert!(!used[*v]);
                    used[*v] = true;
                }
            }
            assert_eq!(size(&m), brute(&adj, 0, &mut vec![false; nr]));
        }
    }

    fn brute(adj: &[Vec<u32>], u: usize, used: &mut Vec<bool>) -> usize {
        if u == adj.len() {
            return 0;
        }
        let mut best = brute(adj, u + 1, used);
        for &v in &adj[u] {
            if !used[v as usize] {
                used[v as usize] = true;
                best = best.max(1 + brute(adj, u + 1, used));
                used[v as usize] = false;
            }
        }
        best
    }
}
