//! Directed simple graph with stable string labels.
//!
//! Node indexes are assigned in insertion order and never change; anything
//! printed for human or file consumption is sorted by label so repeated runs
//! emit identical bytes. Parallel edges are merged on insert and self-loops
//! are rejected; callers that need to know about either get that from the
//! insert result or their own bookkeeping.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use thiserror::Error;

pub type NodeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on node {0} rejected")]
    SelfLoop(NodeId),
    #[error("unknown node index {0}")]
    UnknownNode(NodeId),
}

#[derive(Debug, Clone, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    out: Vec<Vec<NodeId>>,
    inn: Vec<Vec<NodeId>>,
    edge_set: HashSet<(NodeId, NodeId)>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    /// Returns the node with this label, inserting it if new.
    pub fn add_node(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        self.out.push(Vec::new());
        self.inn.push(Vec::new());
        id
    }

    pub fn node(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id]
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_set.len()
    }

    /// Inserts a directed edge. Returns false when it was already present.
    pub fn add_edge(&mut self, src: NodeId, dst: NodeId) -> Result<bool, GraphError> {
        let n = self.labels.len();
        if src >= n {
            return Err(GraphError::UnknownNode(src));
        }
        if dst >= n {
            return Err(GraphError::UnknownNode(dst));
        }
        if src == dst {
            return Err(GraphError::SelfLoop(src));
        }
        if !self.edge_set.insert((src, dst)) {
            return Ok(false);
        }
        self.out[src].push(dst);
        self.inn[dst].push(src);
        Ok(true)
    }

    pub fn has_edge(&self, src: NodeId, dst: NodeId) -> bool {
        self.edge_set.contains(&(src, dst))
    }

    pub fn out_neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.out[id]
    }

    pub fn in_neighbors(&self, id: NodeId) -> &[NodeId] {
        &self.inn[id]
    }

    /// Edges in (source index, insertion) order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    /// In, out, and total degree per node, aligned with node indexes.
    pub fn degrees(&self) -> DegreeTable {
        let indeg: Vec<usize> = self.inn.iter().map(Vec::len).collect();
        let outdeg: Vec<usize> = self.out.iter().map(Vec::len).collect();
        let total = indeg.iter().zip(&outdeg).map(|(i, o)| i + o).collect();
        DegreeTable { indeg, outdeg, total }
    }

    /// Edge count over the n(n-1) possible directed non-loop pairs.
    pub fn density(&self) -> f64 {
        let n = self.node_count();
        if n < 2 {
            return 0.0;
        }
        self.edge_count() as f64 / (n as f64 * (n - 1) as f64)
    }

    /// Hop distances from `source`; `None` marks unreachable nodes.
    /// Undirected traversal follows edges both ways.
    pub fn bfs_distances(&self, source: NodeId, directed: bool) -> Result<Vec<Option<u32>>, GraphError> {
        if source >= self.node_count() {
            return Err(GraphError::UnknownNode(source));
        }
        let mut dist: Vec<Option<u32>> = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            let visit = |v: NodeId, dist: &mut Vec<Option<u32>>, queue: &mut VecDeque<NodeId>| {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            };
            for &v in &self.out[u] {
                visit(v, &mut dist, &mut queue);
            }
            if !directed {
                for &v in &self.inn[u] {
                    visit(v, &mut dist, &mut queue);
                }
            }
        }
        Ok(dist)
    }

    /// Connected components ignoring edge direction. A component's id is the
    /// smallest node index it contains.
    pub fn weak_components(&self) -> ComponentDecomposition {
        let n = self.node_count();
        let mut comp: Vec<Option<NodeId>> = vec![None; n];
        for start in 0..n {
            if comp[start].is_some() {
                continue;
            }
            // start is the smallest unassigned index, hence the component id.
            comp[start] = Some(start);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in self.out[u].iter().chain(self.inn[u].iter()) {
                    if comp[v].is_none() {
                        comp[v] = Some(start);
                        queue.push_back(v);
                    }
                }
            }
        }
        let component: Vec<NodeId> = comp.into_iter().map(Option::unwrap).collect();
        let mut sizes: BTreeMap<NodeId, usize> = BTreeMap::new();
        for &c in &component {
            *sizes.entry(c).or_default() += 1;
        }
        let isolated = (0..n)
            .filter(|&v| self.out[v].is_empty() && self.inn[v].is_empty())
            .collect();
        ComponentDecomposition { component, sizes, isolated }
    }

    /// Subgraph on `nodes` (labels preserved, indexes reassigned in ascending
    /// order of the original index). Keeps edges with both ends retained.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Result<Graph, GraphError> {
        let mut picked: Vec<NodeId> = nodes.to_vec();
        picked.sort_unstable();
        picked.dedup();
        if let Some(&bad) = picked.iter().find(|&&v| v >= self.node_count()) {
            return Err(GraphError::UnknownNode(bad));
        }
        let mut sub = Graph::new();
        let mut map: HashMap<NodeId, NodeId> = HashMap::new();
        for &v in &picked {
            map.insert(v, sub.add_node(&self.labels[v]));
        }
        for (u, v) in self.edges() {
            if let (Some(&su), Some(&sv)) = (map.get(&u), map.get(&v)) {
                sub.add_edge(su, sv).unwrap();
            }
        }
        Ok(sub)
    }

    /// Undirected view: same nodes and indexes, antiparallel pairs merged,
    /// each undirected edge stored once as (low index -> high index). Total
    /// degree in the projection is the undirected degree.
    pub fn undirected_projection(&self) -> Graph {
        let mut proj = Graph::new();
        for label in &self.labels {
            proj.add_node(label);
        }
        for (u, v) in self.edges() {
            let (lo, hi) = if u < v { (u, v) } else { (v, u) };
            let _ = proj.add_edge(lo, hi).unwrap();
        }
        proj
    }

    /// Triangle and connected-triple counts of the undirected projection.
    pub fn triangle_census(&self) -> TriangleCensus {
        let proj = self.undirected_projection();
        let n = proj.node_count();
        let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (u, v) in proj.edges() {
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        let mut triples = 0u64;
        for l in &adj {
            let d = l.len() as u64;
            if d >= 2 {
                triples += d * (d - 1) / 2;
            }
        }
        // Each triangle is seen once per edge with both ends below the apex.
        let mut triangles = 0u64;
        for (u, v) in proj.edges() {
            triangles += count_common_above(&adj[u], &adj[v], v.max(u));
        }
        TriangleCensus { triangles, connected_triples: triples }
    }

    /// Lines of `src<TAB>dst` labels, sorted.
    pub fn edge_list_tsv(&self) -> String {
        let mut rows: Vec<(&str, &str)> = self
            .edges()
            .map(|(u, v)| (self.label(u), self.label(v)))
            .collect();
        rows.sort_unstable();
        let mut out = String::new();
        for (s, d) in rows {
            out.push_str(s);
            out.push('\t');
            out.push_str(d);
            out.push('\n');
        }
        out
    }

    /// Lines of `index<TAB>label` in index order.
    pub fn node_table_tsv(&self) -> String {
        let mut out = String::new();
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(&i.to_string());
            out.push('\t');
            out.push_str(label);
            out.push('\n');
        }
        out
    }

    /// GraphViz rendering. With `trim`, nodes without any edge are left out.
    pub fn dot(&self, trim: bool) -> String {
        let mut out = String::from("digraph g {\n");
        let mut labels: Vec<&String> = self
            .labels
            .iter()
            .enumerate()
            .filter(|(v, _)| !trim || !(self.out[*v].is_empty() && self.inn[*v].is_empty()))
            .map(|(_, l)| l)
            .collect();
        labels.sort_unstable();
        for l in labels {
            out.push_str(&format!("  {};\n", dot_quote(l)));
        }
        let mut rows: Vec<(&str, &str)> = self
            .edges()
            .map(|(u, v)| (self.label(u), self.label(v)))
            .collect();
        rows.sort_unstable();
        for (s, d) in rows {
            out.push_str(&format!("  {} -> {};\n", dot_quote(s), dot_quote(d)));
        }
        out.push_str("}\n");
        out
    }
}

fn dot_quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Common neighbors of two adjacency lists with index above `cap`; counting
/// only above the edge's larger endpoint tallies each triangle exactly once.
fn count_common_above(a: &[NodeId], b: &[NodeId], cap: NodeId) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] > cap {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}

#[derive(Debug, Clone)]
pub struct DegreeTable {
    pub indeg: Vec<usize>,
    pub outdeg: Vec<usize>,
    pub total: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleCensus {
    pub triangles: u64,
    pub connected_triples: u64,
}

#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    /// Node index -> component id.
    pub component: Vec<NodeId>,
    /// Component id -> node count.
    pub sizes: BTreeMap<NodeId, usize>,
    /// Degree-0 nodes, ascending.
    pub isolated: Vec<NodeId>,
}

impl ComponentDecomposition {
    /// Largest component as (id, size); ties go to the smaller id. None only
    /// for the empty graph.
    pub fn largest(&self) -> Option<(NodeId, usize)> {
        self.sizes
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&id, &size)| (id, size))
    }

    pub fn members(&self, id: NodeId) -> Vec<NodeId> {
        self.component
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == id)
            .map(|(v, _)| v)
            .collect()
    }
}
