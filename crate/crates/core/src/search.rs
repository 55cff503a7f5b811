//! Exact proper k-coloring search for small hypergraphs.

use crate::geom::Color;

/// Smallest-last order of the graph `adj`, reversed.
pub(crate) fn degeneracy_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut removed = vec![false; n];
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .unwrap();
        removed[v] = true;
        for &w in &adj[v] {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
        order.push(v);
    }
    order.reverse();
    order
}

/// Graph of the size-2 edges.
pub(crate) fn pair_graph(n: usize, edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for e in edges.iter().filter(|e| e.len() == 2) {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    adj
}

pub(crate) fn is_proper(edges: &[Vec<usize>], colors: &[Color]) -> bool {
    edges
        .iter()
        .all(|e| e.iter().any(|&i| colors[i] != colors[e[0]]))
}

struct Search<'a> {
    order: &'a [usize],
    adj: &'a [Vec<usize>],
    /// Edges indexed by the position in `order` of their last member.
    closing: Vec<Vec<&'a Vec<usize>>>,
    colors: Vec<Color>,
    k: Color,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, used: Color) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        // colors above used + 1 are interchangeable with used + 1
        for c in 1..=(used + 1).min(self.k) {
            if self.adj[v].iter().any(|&w| self.colors[w] == c) {
                continue;
            }
            self.colors[v] = c;
            let ok = self.closing[pos]
                .iter()
                .all(|e| e.iter().any(|&i| self.colors[i] != c));
            if ok && self.run(pos + 1, used.max(c)) {
                return true;
            }
            self.colors[v] = 0;
        }
        false
    }
}

/// Backtracking over colorings with at most `k` colors; size-2 edges prune
/// as soon as one end is colored, larger edges once their last member is.
pub(crate) fn find_proper_coloring(n: usize, edges: &[Vec<usize>], k: Color) -> Option<Vec<Color>> {
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    let adj = pair_graph(n, edges);
    let order = degeneracy_order(&adj);
    let mut position = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut closing = vec![Vec::new(); n];
    for e in edges {
        let last = e.iter().map(|&i| position[i]).max().unwrap();
        closing[last].push(e);
    }
    let mut search = Search {
        order: &order,
        adj: &adj,
        closing,
        colors: vec![0; n],
        k,
    };
    search.run(0, 0).then_some(search.colors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_needs_three() {
        let edges = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
        assert!(find_proper_coloring(3, &edges, 2).is_none());
        let c = find_proper_coloring(3, &edges, 3).unwrap();
        assert!(is_proper(&edges, &c));
    }

    #[test]
    fn triple_edge_needs_only_two() {
        let edges = vec![vec![0, 1, 2]];
        assert!(find_proper_coloring(3, &edges, 1).is_none());
        assert!(is_proper(&edges, &find_proper_coloring(3, &edges, 2).unwrap()));
    }

    #[test]
    fn order_is_a_permutation() {
        let adj = pair_graph(5, &[vec![0, 1], vec![1, 2], vec![3, 4]]);
        let mut o = degeneracy_order(&adj);
        o.sort();
        assert_eq!(o, vec![0, 1, 2, 3, 4]);
    }
}
