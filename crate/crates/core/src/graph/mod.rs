//! Simple undirected graphs with dense integer vertex ids.

mod canon;
mod io;
pub mod named;
mod reduce;
mod structure;

pub use canon::{canonical_edges, canonical_form, random_cubic};
pub use io::{encode_graph6, parse_edge_list, parse_graph, parse_graph6, to_edge_list};
pub use reduce::{reduce_subcubic, LeafKind, ReductionNode};
pub use structure::{analyze, boundary, four_cycles_through, StructureReport};

use serde::{Deserialize, Serialize};

use crate::bits::{self, VertexSet, MAX_MASK_VERTICES};
use crate::error::{Error, Result};

/// Immutable simple graph. Adjacency lists are strictly increasing and the
/// edge list holds each edge once as `(u, v)` with `u < v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, r.edges)
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n, edges: g.edges }
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, repeated edges and out-of-range ids.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!("edge {u}-{v} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at {u}")));
            }
            list.push((u.min(v), u.max(v)));
            adj[u].push(v);
            adj[v].push(u);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("duplicate edge {}-{}", w[0].0, w[0].1)));
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, adj, edges: list })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of the edge `uv` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn is_cubic(&self) -> bool {
        self.adj.iter().all(|a| a.len() == 3)
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    /// Fails unless vertex sets of this graph fit in a bitmask.
    pub fn require_mask_scale(&self) -> Result<()> {
        if self.n > MAX_MASK_VERTICES {
            Err(Error::TooLarge { n: self.n, max: MAX_MASK_VERTICES })
        } else {
            Ok(())
        }
    }

    pub fn neighbour_mask(&self, v: usize) -> VertexSet {
        bits::from_vertices(self.adj[v].iter().copied())
    }

    /// N[v] as a mask.
    pub fn closed_neighbour_mask(&self, v: usize) -> VertexSet {
        self.neighbour_mask(v) | bits::bit(v)
    }

    /// Union of the neighbourhoods of the members of `set`.
    pub fn neighbourhood_of(&self, set: VertexSet) -> VertexSet {
        bits::members(set).fold(0, |acc, v| acc | self.neighbour_mask(v))
    }

    pub fn is_independent(&self, set: VertexSet) -> bool {
        bits::members(set).all(|v| self.neighbour_mask(v) & set == 0)
    }

    /// First edge of `g` with both ends in `set`, if any.
    pub fn edge_inside(&self, set: VertexSet) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .find(|&(u, v)| bits::contains(set, u) && bits::contains(set, v))
    }

    /// Induced subgraph on `vertices` (in the given order). Returns the
    /// subgraph and the map from its vertices to ours.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        let g = Graph::from_edges(vertices.len(), edges).expect("induced subgraph of a simple graph");
        (g, vertices.to_vec())
    }

    /// Graph with the given edges removed.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let removed: Vec<(usize, usize)> = removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let edges = self.edges.iter().copied().filter(|e| !removed.contains(e));
        Graph::from_edges(self.n, edges).expect("subgraph of a simple graph")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(4, [(3, 0), (2, 0), (1, 0)]).unwrap();
        assert_eq!(g.neighbours(0), &[1, 2, 3]);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(g.edge_index(3, 0), Some(2));
        assert!(g.has_edge(2, 0) && !g.has_edge(1, 2));
    }

    #[test]
    fn json_round_trip() {
        let g = named::petersen();
        let s = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, back);
    }
}
