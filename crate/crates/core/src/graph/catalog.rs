//! Small-graph catalogues: one representative per isomorphism class.

use super::Graph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(k + 1, p, out);
            p.swap(k, i);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// Enumerates edge masks over `pairs`, keeping those minimal under every
/// vertex permutation.
fn classes(n: usize, pairs: &[(usize, usize)], directed: bool) -> Vec<Graph> {
    let index = |u: usize, v: usize| {
        let key = if directed || u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == key).unwrap()
    };
    let maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|perm| pairs.iter().map(|&(u, v)| index(perm[u], perm[v])).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let canonical = maps.iter().all(|map| {
            let mut image = 0u64;
            for (e, &to) in map.iter().enumerate() {
                image |= (mask >> e & 1) << to;
            }
            image >= mask
        });
        if canonical {
            let mut g = Graph::empty(n);
            for (e, &(u, v)) in pairs.iter().enumerate() {
                if mask >> e & 1 == 1 {
                    if directed {
                        g.add_edge(u, v);
                    } else {
                        g.add_undirected(u, v);
                    }
                }
            }
            out.push(g);
        }
    }
    out
}

/// Non-isomorphic undirected graphs on exactly `n <= 7` vertices.
pub fn undirected_classes(n: usize) -> Vec<Graph> {
    assert!(n <= 7, "catalogue limited to 7 vertices");
    let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    classes(n, &pairs, false)
}

/// Non-isomorphic directed graphs (no loops) on exactly `n <= 5` vertices.
pub fn directed_classes(n: usize) -> Vec<Graph> {
    assert!(n <= 5, "catalogue limited to 5 vertices");
    let pairs: Vec<_> = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect();
    classes(n, &pairs, true)
}

/// All undirected classes on `1..=max_n` vertices.
pub fn undirected_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(undirected_classes).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| undirected_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        let directed: Vec<usize> = (1..=5).map(|n| directed_classes(n).len()).collect();
        assert_eq!(directed, vec![1, 3, 16, 218, 9608]);
    }
}
