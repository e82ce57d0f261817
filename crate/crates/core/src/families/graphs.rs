use std::fmt;

use crate::sfd::{Relabeling, StructureFamily, Support};

use super::{component_labels, Featured, GRAPH_CAP};

/// Vertices and edges of one component.
type Piece = (Vec<u32>, Vec<(u32, u32)>);

/// Simple undirected graph on a finite label set. Edges are stored as
/// sorted `(u, v)` pairs with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledGraph {
    vertices: Support,
    edges: Vec<(u32, u32)>,
}

impl LabelledGraph {
    /// Fails if an edge is a loop or leaves the vertex set.
    pub fn new(vertices: Support, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, String> {
        let mut es = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(format!("loop at {u}"));
            }
            if !vertices.contains(u) || !vertices.contains(v) {
                return Err(format!("edge {u}-{v} leaves {vertices}"));
            }
            es.push((u.min(v), u.max(v)));
        }
        es.sort_unstable();
        es.dedup();
        Ok(LabelledGraph { vertices, edges: es })
    }

    pub fn empty() -> Self {
        LabelledGraph { vertices: Support::empty(), edges: Vec::new() }
    }

    pub fn vertices(&self) -> &Support {
        &self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    fn index_of(&self, x: u32) -> usize {
        self.vertices.labels().binary_search(&x).expect("edge endpoint is a vertex")
    }

    fn component_labels(&self) -> Vec<usize> {
        component_labels(self.vertices.len(), self.edges.iter().map(|&(u, v)| (self.index_of(u), self.index_of(v))))
    }

    /// Vertex-induced connected components, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<LabelledGraph> {
        let labels = self.component_labels();
        let count = labels.iter().max().map_or(0, |m| m + 1);
        let mut parts: Vec<Piece> = vec![(Vec::new(), Vec::new()); count];
        for (i, &x) in self.vertices.labels().iter().enumerate() {
            parts[labels[i]].0.push(x);
        }
        for &(u, v) in &self.edges {
            parts[labels[self.index_of(u)]].1.push((u, v));
        }
        parts
            .into_iter()
            .map(|(vs, es)| LabelledGraph { vertices: Support::new(vs).expect("positive"), edges: es })
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().iter().max().map_or(0, |m| m + 1)
    }
}

impl fmt::Display for LabelledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.vertices)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "]")
    }
}

/// All labelled simple graphs; direct sum is disjoint union.
#[derive(Debug, Clone, Copy)]
pub struct GraphFamily {
    pub cap: usize,
}

impl Default for GraphFamily {
    fn default() -> Self {
        GraphFamily { cap: GRAPH_CAP }
    }
}

impl StructureFamily for GraphFamily {
    type Structure = LabelledGraph;

    fn tag(&self) -> String {
        "graphs".into()
    }

    fn cap(&self) -> usize {
        self.cap
    }

    fn unit(&self) -> LabelledGraph {
        LabelledGraph::empty()
    }

    fn support(&self, g: &LabelledGraph) -> Support {
        g.vertices.clone()
    }

    fn enumerate_unchecked(&self, f: &Support) -> Vec<LabelledGraph> {
        let labels = f.labels();
        let pairs: Vec<(u32, u32)> =
            labels.iter().enumerate().flat_map(|(i, &u)| labels[i + 1..].iter().map(move |&v| (u, v))).collect();
        assert!(pairs.len() < 64, "too many vertex pairs");
        (0u64..(1u64 << pairs.len()))
            .map(|mask| LabelledGraph {
                vertices: f.clone(),
                edges: pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect(),
            })
            .collect()
    }

    fn direct_sum(&self, a: &LabelledGraph, b: &LabelledGraph) -> Option<LabelledGraph> {
        if !a.vertices.is_disjoint(&b.vertices) {
            return None;
        }
        let mut edges = a.edges.clone();
        edges.extend_from_slice(&b.edges);
        edges.sort_unstable();
        Some(LabelledGraph { vertices: a.vertices.union(&b.vertices), edges })
    }

    fn decompose(&self, g: &LabelledGraph) -> Vec<LabelledGraph> {
        g.connected_components()
    }

    fn is_atom(&self, g: &LabelledGraph) -> bool {
        !g.vertices.is_empty() && g.component_count() == 1
    }

    fn relabel(&self, g: &LabelledGraph, map: &Relabeling) -> LabelledGraph {
        LabelledGraph::new(map.apply_support(&g.vertices), g.edges.iter().map(|&(u, v)| (map.apply(u), map.apply(v))))
            .expect("injective relabeling keeps a simple graph")
    }

    fn encode(&self, g: &LabelledGraph) -> String {
        g.to_string()
    }
}

impl Featured for GraphFamily {
    fn feature_names(&self) -> &'static [&'static str] {
        &["points", "nodes", "edges", "components"]
    }

    fn raw_feature(&self, g: &LabelledGraph, name: &str) -> Option<u64> {
        Some(match name {
            "points" | "nodes" => g.vertices.len() as u64,
            "edges" => g.edges.len() as u64,
            "components" => g.component_count() as u64,
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sfd::{atoms_on, check_direct_sum_axioms, check_levi, check_relabeling, check_unique_factorization};

    fn s(v: &[u32]) -> Support {
        Support::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let fam = GraphFamily::default();
        assert_eq!(fam.enumerate(&Support::range(3)).unwrap().len(), 8);
        assert_eq!(fam.enumerate(&Support::empty()).unwrap(), vec![LabelledGraph::empty()]);
        assert_eq!(fam.enumerate(&Support::range(5)).unwrap().len(), 1024);
        assert!(fam.enumerate(&Support::range(7)).is_err());
    }

    #[test]
    fn components() {
        let tri = LabelledGraph::new(s(&[1, 2, 3]), [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(tri.connected_components(), vec![tri.clone()]);
        let g = LabelledGraph::new(s(&[1, 2, 3]), [(1, 2)]).unwrap();
        assert_eq!(
            g.connected_components(),
            vec![LabelledGraph::new(s(&[1, 2]), [(1, 2)]).unwrap(), LabelledGraph::new(s(&[3]), []).unwrap()]
        );
        assert!(LabelledGraph::new(s(&[1]), [(1, 1)]).is_err());
        assert!(LabelledGraph::new(s(&[1]), [(1, 2)]).is_err());
    }

    #[test]
    fn components_sum_back() {
        let fam = GraphFamily::default();
        for n in 0..=5 {
            for g in fam.enumerate(&Support::range(n)).unwrap() {
                let parts = g.connected_components();
                assert!(parts.iter().all(|p| fam.is_atom(p)));
                assert_eq!(fam.sum_all(parts.iter()), Some(g));
            }
        }
    }

    #[test]
    fn connected_graphs_on_three_points() {
        let fam = GraphFamily::default();
        assert_eq!(atoms_on(&fam, &Support::range(3)).unwrap().len(), 4);
    }

    #[test]
    fn features() {
        let fam = GraphFamily::default();
        let tri = LabelledGraph::new(s(&[1, 2, 3]), [(1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(fam.feature(&tri, "components").unwrap(), 1);
        assert_eq!(fam.feature(&tri, "edges").unwrap(), 3);
        assert!(fam.feature(&tri, "cycles").is_err());
    }

    #[test]
    fn axioms() {
        let fam = GraphFamily::default();
        assert!(check_direct_sum_axioms(&fam, 4).unwrap().passed());
        assert!(check_levi(&fam, 4).unwrap().passed());
        assert!(check_unique_factorization(&fam, 4).unwrap().passed());
        assert!(check_relabeling(&fam, 4).unwrap().passed());
    }
}
