//! Connected directed labelled multigraphs: parsing, spanning trees,
//! incidence/cycle/path matrices and the surgeries (contract, delete,
//! subdivide).
//!
//! Edge labels are `1..=m` in declaration order, vertex labels `1..=n`.
//! A distinguished vertex `v_star` (default: the highest label) is removed
//! from all reduced matrices.

use num_bigint::BigInt;
use thiserror::Error;

use crate::matrix::Matrix;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex index {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("edge label {0} out of range 1..={1}")]
    EdgeOutOfRange(usize, usize),
    #[error("edge labels must be 1..={0} without repetition")]
    BadEdgeLabels(usize),
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge set is not a spanning tree")]
    NotASpanningTree,
    #[error("cannot contract the self-loop {0}")]
    SelfLoopContraction(usize),
    #[error("deleting edge {0} disconnects the graph")]
    DisconnectingDeletion(usize),
    #[error("invalid cycle basis: {0}")]
    InvalidBasis(String),
    #[error("duplicate edge label in set")]
    DuplicateEdge,
}

/// Sorted set of 1-based edge labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSet(Vec<usize>);

impl EdgeSet {
    pub fn new(mut labels: Vec<usize>) -> Result<Self, GraphError> {
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge);
        }
        Ok(EdgeSet(labels))
    }

    pub fn empty() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: usize) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Complement inside `1..=num_edges`.
    pub fn complement(&self, num_edges: usize) -> EdgeSet {
        EdgeSet((1..=num_edges).filter(|e| !self.contains(*e)).collect())
    }
}

impl std::fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Connected directed multigraph with a fixed edge order and special vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
    v_star: usize,
}

impl Graph {
    pub fn new(
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        v_star: Option<usize>,
    ) -> Result<Self, GraphError> {
        if num_vertices == 0 {
            return Err(GraphError::NoVertices);
        }
        for &(t, h) in &edges {
            if t == 0 || t > num_vertices {
                return Err(GraphError::VertexOutOfRange(t, num_vertices));
            }
            if h == 0 || h > num_vertices {
                return Err(GraphError::VertexOutOfRange(h, num_vertices));
            }
        }
        let v_star = v_star.unwrap_or(num_vertices);
        if v_star == 0 || v_star > num_vertices {
            return Err(GraphError::VertexOutOfRange(v_star, num_vertices));
        }
        let g = Graph {
            num_vertices,
            edges,
            v_star,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.num_vertices);
        for &(t, h) in &self.edges {
            uf.union(t - 1, h - 1);
        }
        uf.component_count() == 1
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// `|E| - |V| + 1` for a connected graph.
    pub fn loop_number(&self) -> usize {
        self.edges.len() + 1 - self.num_vertices
    }

    pub fn v_star(&self) -> usize {
        self.v_star
    }

    pub fn with_v_star(&self, v_star: usize) -> Result<Self, GraphError> {
        Graph::new(self.num_vertices, self.edges.clone(), Some(v_star))
    }

    /// Tail and head of a 1-based edge label.
    pub fn edge(&self, label: usize) -> (usize, usize) {
        self.edges[label - 1]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges.iter().any(|&(t, h)| t == h)
    }

    pub fn check_edge(&self, label: usize) -> Result<(), GraphError> {
        if label == 0 || label > self.edges.len() {
            Err(GraphError::EdgeOutOfRange(label, self.edges.len()))
        } else {
            Ok(())
        }
    }

    /// Vertex labels other than `v_star`, in increasing order; these index
    /// the columns of the incidence and path matrices.
    pub fn vertex_columns(&self) -> Vec<usize> {
        (1..=self.num_vertices)
            .filter(|&v| v != self.v_star)
            .collect()
    }

    /// Reduced vertex incidence matrix: rows by edges, columns by vertices
    /// other than `v_star`; -1 where the edge starts, +1 where it ends.
    /// A self-loop gives a zero row.
    pub fn incidence_matrix(&self) -> Matrix<BigInt> {
        let cols = self.vertex_columns();
        Matrix::from_fn(self.edges.len(), cols.len(), |i, j| {
            let (t, h) = self.edges[i];
            let v = cols[j];
            let mut val = 0i64;
            if t == v {
                val -= 1;
            }
            if h == v {
                val += 1;
            }
            BigInt::from(val)
        })
    }

    /// All spanning trees as sorted edge sets, in lexicographic order.
    /// Self-loops never occur in a tree.
    pub fn spanning_trees(&self) -> Vec<EdgeSet> {
        let need = self.num_vertices - 1;
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(need);
        let mut uf = UnionFind::new(self.num_vertices);
        self.trees_rec(1, need, &mut chosen, &mut uf, &mut out);
        out
    }

    fn trees_rec(
        &self,
        next: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        uf: &mut UnionFind,
        out: &mut Vec<EdgeSet>,
    ) {
        if chosen.len() == need {
            out.push(EdgeSet(chosen.clone()));
            return;
        }
        let m = self.edges.len();
        for e in next..=m {
            if m - e + 1 < need - chosen.len() {
                break;
            }
            let (t, h) = self.edges[e - 1];
            if t == h {
                continue;
            }
            if uf.union(t - 1, h - 1) {
                chosen.push(e);
                self.trees_rec(e + 1, need, chosen, uf, out);
                chosen.pop();
                uf.rollback(1);
            }
        }
    }

    pub fn is_spanning_tree(&self, set: &EdgeSet) -> bool {
        if set.len() != self.num_vertices - 1 {
            return false;
        }
        let mut uf = UnionFind::new(self.num_vertices);
        for e in set.iter() {
            if e == 0 || e > self.edges.len() {
                return false;
            }
            let (t, h) = self.edges[e - 1];
            if t == h || !uf.union(t - 1, h - 1) {
                return false;
            }
        }
        true
    }

    /// Greedy spanning tree using the smallest edge labels; the default tree
    /// behind every implicitly chosen basis or path system.
    pub fn min_label_tree(&self) -> EdgeSet {
        self.greedy_tree(false)
    }

    /// Greedy spanning tree using the largest edge labels; handy as an
    /// independent second choice.
    pub fn max_label_tree(&self) -> EdgeSet {
        self.greedy_tree(true)
    }

    fn greedy_tree(&self, reverse: bool) -> EdgeSet {
        let mut uf = UnionFind::new(self.num_vertices);
        let mut labels = Vec::new();
        let order: Vec<usize> = if reverse {
            (1..=self.edges.len()).rev().collect()
        } else {
            (1..=self.edges.len()).collect()
        };
        for e in order {
            let (t, h) = self.edges[e - 1];
            if t != h && uf.union(t - 1, h - 1) {
                labels.push(e);
            }
        }
        labels.sort_unstable();
        EdgeSet(labels)
    }

    /// Signed edge vector of the tree path `from -> to` (entries in
    /// `-1,0,+1`, indexed by edge label).
    fn tree_path_vector(&self, tree: &EdgeSet, from: usize, to: usize) -> Vec<i64> {
        let mut vec = vec![0i64; self.edges.len()];
        if from == to {
            return vec;
        }
        // adjacency restricted to the tree
        let mut adj: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); self.num_vertices + 1];
        for e in tree.iter() {
            let (t, h) = self.edges[e - 1];
            adj[t].push((h, e, 1));
            adj[h].push((t, e, -1));
        }
        // DFS from `from`; the path in a tree is unique
        let mut stack = vec![from];
        let mut prev: Vec<Option<(usize, usize, i64)>> = vec![None; self.num_vertices + 1];
        let mut seen = vec![false; self.num_vertices + 1];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                break;
            }
            for &(w, e, dir) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, e, dir));
                    stack.push(w);
                }
            }
        }
        let mut v = to;
        while v != from {
            let (u, e, dir) = prev[v].expect("tree spans all vertices");
            vec[e - 1] = dir;
            v = u;
        }
        vec
    }

    /// Fundamental cycle basis induced by a spanning tree: one column per
    /// non-tree edge in increasing label order, each cycle traversed in the
    /// direction of its defining edge.
    pub fn fundamental_cycle_basis(&self, tree: &EdgeSet) -> Result<CycleBasis, GraphError> {
        if !self.is_spanning_tree(tree) {
            return Err(GraphError::NotASpanningTree);
        }
        let mut columns = Vec::new();
        let mut defining = Vec::new();
        for f in 1..=self.edges.len() {
            if tree.contains(f) {
                continue;
            }
            let (t, h) = self.edges[f - 1];
            // defining edge forward, then close the cycle through the tree
            let mut col = self.tree_path_vector(tree, h, t);
            col[f - 1] = 1;
            columns.push(col);
            defining.push(f);
        }
        Ok(CycleBasis {
            num_edges: self.edges.len(),
            columns,
            defining_edges: Some(defining),
            tree: Some(tree.clone()),
        })
    }

    /// Fundamental basis for the minimum-label spanning tree.
    pub fn default_basis(&self) -> CycleBasis {
        self.fundamental_cycle_basis(&self.min_label_tree())
            .expect("greedy tree is spanning")
    }

    /// Path matrix: column `j` is the signed edge vector of the tree path
    /// `v_star -> v_j`. Defaults to the minimum-label spanning tree.
    pub fn path_matrix(&self, tree: Option<&EdgeSet>) -> Result<Matrix<BigInt>, GraphError> {
        let owned;
        let tree = match tree {
            Some(t) => {
                if !self.is_spanning_tree(t) {
                    return Err(GraphError::NotASpanningTree);
                }
                t
            }
            None => {
                owned = self.min_label_tree();
                &owned
            }
        };
        let cols = self.vertex_columns();
        let mut m = Matrix::zero(self.edges.len(), cols.len());
        for (j, &v) in cols.iter().enumerate() {
            let vec = self.tree_path_vector(tree, self.v_star, v);
            for (i, &val) in vec.iter().enumerate() {
                *m.at_mut(i, j) = BigInt::from(val);
            }
        }
        Ok(m)
    }

    /// Contract a non-self-loop edge: endpoints merge into the lower vertex
    /// label, vertices and edges above the removed labels shift down.
    pub fn contract_edge(&self, label: usize) -> Result<Graph, GraphError> {
        self.check_edge(label)?;
        let (t, h) = self.edges[label - 1];
        if t == h {
            return Err(GraphError::SelfLoopContraction(label));
        }
        let keep = t.min(h);
        let gone = t.max(h);
        let map_v = |v: usize| {
            if v == gone {
                keep
            } else if v > gone {
                v - 1
            } else {
                v
            }
        };
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != label - 1)
            .map(|(_, &(a, b))| (map_v(a), map_v(b)))
            .collect();
        Graph::new(self.num_vertices - 1, edges, Some(map_v(self.v_star)))
    }

    /// Delete an edge; fails when the rest is disconnected.
    pub fn delete_edge(&self, label: usize) -> Result<Graph, GraphError> {
        self.check_edge(label)?;
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != label - 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(self.num_vertices, edges, Some(self.v_star))
            .map_err(|_| GraphError::DisconnectingDeletion(label))
    }

    /// Subdivide edge `e = u -> w`: a new vertex labelled 1 is inserted (all
    /// existing vertex labels shift up by one); the first half keeps label
    /// `e`, the second half gets label `e+1`, later edges shift up; both
    /// halves keep the direction of `e`.
    pub fn subdivide_edge(&self, label: usize) -> Result<Graph, GraphError> {
        self.check_edge(label)?;
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i + 1 == label {
                edges.push((a + 1, 1));
                edges.push((1, b + 1));
            } else {
                edges.push((a + 1, b + 1));
            }
        }
        Graph::new(self.num_vertices + 1, edges, Some(self.v_star + 1))
    }

    /// One-line canonical description, used in reports.
    pub fn fingerprint(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(t, h)| format!("{t}->{h}"))
            .collect();
        format!(
            "V={} E=[{}] vstar={}",
            self.num_vertices,
            edges.join(","),
            self.v_star
        )
    }
}

/// Ordered list of signed cycle vectors spanning the cycle lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleBasis {
    num_edges: usize,
    columns: Vec<Vec<i64>>,
    defining_edges: Option<Vec<usize>>,
    tree: Option<EdgeSet>,
}

impl CycleBasis {
    /// Validate an explicit basis against a graph: every column must lie in
    /// the cycle space and the columns must span the full cycle lattice
    /// (unimodular coordinates over a fundamental basis).
    pub fn from_columns(g: &Graph, columns: Vec<Vec<i64>>) -> Result<Self, GraphError> {
        let l = g.loop_number();
        if columns.len() != l {
            return Err(GraphError::InvalidBasis(format!(
                "expected {l} columns, got {}",
                columns.len()
            )));
        }
        for col in &columns {
            if col.len() != g.num_edges() {
                return Err(GraphError::InvalidBasis(
                    "column length must equal the edge count".into(),
                ));
            }
        }
        let basis = CycleBasis {
            num_edges: g.num_edges(),
            columns,
            defining_edges: None,
            tree: None,
        };
        // orthogonality to the incidence matrix
        let prod = g.incidence_matrix().transpose().mul(&basis.matrix());
        if (0..prod.rows()).any(|i| (0..prod.cols()).any(|j| !num_traits::Zero::is_zero(prod.at(i, j)))) {
            return Err(GraphError::InvalidBasis(
                "columns are not cycle vectors".into(),
            ));
        }
        // unimodular coordinates over the fundamental basis of the default
        // tree: rows at the defining edges give the coordinate matrix
        let fundamental = g.default_basis();
        let defs = fundamental
            .defining_edges
            .as_ref()
            .expect("fundamental basis has defining edges");
        let coords = Matrix::from_fn(l, l, |i, j| {
            BigInt::from(basis.columns[j][defs[i] - 1])
        });
        let rebuilt = fundamental.matrix().mul(&coords);
        if rebuilt != basis.matrix() {
            return Err(GraphError::InvalidBasis(
                "columns do not lie in the cycle lattice".into(),
            ));
        }
        let det = coords.determinant().expect("square integer matrix");
        if det != BigInt::from(1) && det != BigInt::from(-1) {
            return Err(GraphError::InvalidBasis(format!(
                "coordinate determinant {det} is not a unit"
            )));
        }
        Ok(basis)
    }

    /// Basis change `C' = C * P` for an integer matrix with determinant ±1.
    pub fn apply_change(&self, p: &Matrix<BigInt>) -> Result<Self, GraphError> {
        let l = self.len();
        if p.rows() != l || p.cols() != l {
            return Err(GraphError::InvalidBasis("change matrix shape".into()));
        }
        let det = p.determinant().expect("square integer matrix");
        if det != BigInt::from(1) && det != BigInt::from(-1) {
            return Err(GraphError::InvalidBasis(format!(
                "change determinant {det} is not a unit"
            )));
        }
        let new = self.matrix().mul(p);
        let columns = (0..l)
            .map(|j| {
                (0..self.num_edges)
                    .map(|i| {
                        use num_traits::ToPrimitive;
                        new.at(i, j).to_i64().expect("small basis entries")
                    })
                    .collect()
            })
            .collect();
        Ok(CycleBasis {
            num_edges: self.num_edges,
            columns,
            defining_edges: None,
            tree: None,
        })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn columns(&self) -> &[Vec<i64>] {
        &self.columns
    }

    pub fn defining_edges(&self) -> Option<&[usize]> {
        self.defining_edges.as_deref()
    }

    pub fn tree(&self) -> Option<&EdgeSet> {
        self.tree.as_ref()
    }

    /// The cycle incidence matrix (|E| x loop-number).
    pub fn matrix(&self) -> Matrix<BigInt> {
        Matrix::from_fn(self.num_edges, self.columns.len(), |i, j| {
            BigInt::from(self.columns[j][i])
        })
    }

    /// Induced basis on the graph with edge `e` subdivided: the new edge
    /// `e+1` copies the sign of `e`, higher labels shift up.
    pub fn subdivide(&self, e: usize) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|col| {
                let mut new_col = Vec::with_capacity(self.num_edges + 1);
                for (i, &v) in col.iter().enumerate() {
                    new_col.push(v);
                    if i + 1 == e {
                        new_col.push(v);
                    }
                }
                new_col
            })
            .collect();
        CycleBasis {
            num_edges: self.num_edges + 1,
            columns,
            defining_edges: None,
            tree: None,
        }
    }
}

/// Union-find with union by size and an undo stack; no path compression so
/// that rollback stays trivial.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
            components: n,
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Join two components; false when already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        self.history.push(small);
        self.components -= 1;
        true
    }

    fn rollback(&mut self, count: usize) {
        for _ in 0..count {
            let small = self.history.pop().expect("rollback past history");
            let big = self.parent[small];
            self.parent[small] = small;
            self.size[big] -= self.size[small];
            self.components += 1;
        }
    }

    fn component_count(&self) -> usize {
        self.components
    }
}

/// Parse the line-based text format:
/// `e <label> <tail> <head>` lines plus an optional `vstar <index>` line;
/// `#` starts a comment.
pub fn parse_graph_text(input: &str) -> Result<Graph, GraphError> {
    let mut labelled: Vec<(usize, usize, usize)> = Vec::new();
    let mut v_star = None;
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let head = parts.next().unwrap();
        let err = |msg: &str| GraphError::Parse {
            line: lineno + 1,
            msg: msg.to_string(),
        };
        match head {
            "e" => {
                let nums: Vec<usize> = parts
                    .map(|p| p.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| err("expected `e <label> <tail> <head>`"))?;
                if nums.len() != 3 {
                    return Err(err("expected `e <label> <tail> <head>`"));
                }
                labelled.push((nums[0], nums[1], nums[2]));
            }
            "vstar" => {
                let nums: Vec<usize> = parts
                    .map(|p| p.parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| err("expected `vstar <index>`"))?;
                if nums.len() != 1 {
                    return Err(err("expected `vstar <index>`"));
                }
                v_star = Some(nums[0]);
            }
            _ => return Err(err("unknown directive")),
        }
    }
    let m = labelled.len();
    let mut edges = vec![None; m];
    for (label, t, h) in labelled {
        if label == 0 || label > m || edges[label - 1].is_some() {
            return Err(GraphError::BadEdgeLabels(m));
        }
        edges[label - 1] = Some((t, h));
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().map(|e| e.unwrap()).collect();
    let num_vertices = edges
        .iter()
        .flat_map(|&(t, h)| [t, h])
        .chain(v_star)
        .max()
        .unwrap_or(1);
    Graph::new(num_vertices, edges, v_star)
}

/// Canonical text serialization; `parse_graph_text` round-trips it exactly.
pub fn graph_to_text(g: &Graph) -> String {
    let mut out = String::new();
    for (i, &(t, h)) in g.edges().iter().enumerate() {
        out.push_str(&format!("e {} {} {}\n", i + 1, t, h));
    }
    out.push_str(&format!("vstar {}\n", g.v_star()));
    out
}

/// Parse the structured document `{"edges": [[tail,head],...], "v_star": k}`;
/// edge labels are implied by array order (1-based).
pub fn parse_graph_json(input: &str) -> Result<Graph, GraphError> {
    let err = |msg: &str| GraphError::Parse {
        line: 0,
        msg: msg.to_string(),
    };
    let value: serde_json::Value =
        serde_json::from_str(input).map_err(|e| err(&format!("invalid json: {e}")))?;
    let obj = value.as_object().ok_or_else(|| err("expected an object"))?;
    let edges_val = obj
        .get("edges")
        .and_then(|v| v.as_array())
        .ok_or_else(|| err("missing `edges` array"))?;
    let mut edges = Vec::with_capacity(edges_val.len());
    for item in edges_val {
        let pair = item.as_array().ok_or_else(|| err("edge must be [tail, head]"))?;
        if pair.len() != 2 {
            return Err(err("edge must be [tail, head]"));
        }
        let t = pair[0].as_u64().ok_or_else(|| err("tail must be a positive integer"))?;
        let h = pair[1].as_u64().ok_or_else(|| err("head must be a positive integer"))?;
        edges.push((t as usize, h as usize));
    }
    let v_star = match obj.get("v_star") {
        None | Some(serde_json::Value::Null) => None,
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| err("v_star must be a positive integer"))? as usize,
        ),
    };
    let num_vertices = edges
        .iter()
        .flat_map(|&(t, h)| [t, h])
        .chain(v_star)
        .max()
        .unwrap_or(1);
    Graph::new(num_vertices, edges, v_star)
}

/// Canonical structured serialization mirroring `parse_graph_json`.
pub fn graph_to_json(g: &Graph) -> String {
    let edges: Vec<Vec<usize>> = g.edges().iter().map(|&(t, h)| vec![t, h]).collect();
    serde_json::json!({ "edges": edges, "v_star": g.v_star() }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;

    pub fn theta() -> Graph {
        Graph::new(2, vec![(1, 2), (1, 2), (1, 2)], None).unwrap()
    }

    pub fn dunces_cap() -> Graph {
        Graph::new(3, vec![(2, 1), (1, 3), (2, 3), (2, 3)], None).unwrap()
    }

    #[test]
    fn parse_dunces_cap_text() {
        let g = parse_graph_text(
            "# dunce's cap\ne 1 2 1\ne 2 1 3\ne 3 2 3\ne 4 2 3\n",
        )
        .unwrap();
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 4);
        assert_eq!(g.loop_number(), 2);
        assert_eq!(g.v_star(), 3);
        assert_eq!(g, dunces_cap());
    }

    #[test]
    fn parse_single_edge_is_tree() {
        let g = parse_graph_text("e 1 1 2\n").unwrap();
        assert_eq!(g.loop_number(), 0);
    }

    #[test]
    fn disconnected_rejected() {
        let err = Graph::new(4, vec![(1, 2), (3, 4)], None).unwrap_err();
        assert_eq!(err, GraphError::Disconnected);
        let err = parse_graph_text("e 1 1 2\ne 2 3 4\n").unwrap_err();
        assert_eq!(err, GraphError::Disconnected);
    }

    #[test]
    fn labels_must_be_contiguous() {
        let err = parse_graph_text("e 1 1 2\ne 3 2 1\n").unwrap_err();
        assert!(matches!(err, GraphError::BadEdgeLabels(_)));
        let err = parse_graph_text("e 1 1 2\ne 1 2 1\n").unwrap_err();
        assert!(matches!(err, GraphError::BadEdgeLabels(_)));
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let text = "e 1 2 1\ne 2 1 3\ne 3 2 3\ne 4 2 3\nvstar 3\n";
        let g = parse_graph_text(text).unwrap();
        assert_eq!(graph_to_text(&g), text);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let doc = r#"{"edges":[[2,1],[1,3],[2,3],[2,3]],"v_star":3}"#;
        let g = parse_graph_json(doc).unwrap();
        assert_eq!(graph_to_json(&g), doc);
        assert_eq!(g, dunces_cap());
    }

    #[test]
    fn spanning_trees_of_theta() {
        let trees = theta().spanning_trees();
        let expect: Vec<EdgeSet> = [vec![1], vec![2], vec![3]]
            .into_iter()
            .map(|v| EdgeSet::new(v).unwrap())
            .collect();
        assert_eq!(trees, expect);
    }

    #[test]
    fn spanning_trees_of_dunces_cap_match_brute_force() {
        let g = dunces_cap();
        let trees = g.spanning_trees();
        assert_eq!(trees.len(), 5);
        let brute = oracle::spanning_trees_brute_force(&g);
        let got: Vec<Vec<usize>> = trees.iter().map(|t| t.labels().to_vec()).collect();
        assert_eq!(got, brute);
    }

    #[test]
    fn spanning_tree_of_single_edge() {
        let g = parse_graph_text("e 1 1 2\n").unwrap();
        assert_eq!(g.spanning_trees(), vec![EdgeSet::new(vec![1]).unwrap()]);
    }

    #[test]
    fn self_loop_gets_zero_incidence_row() {
        let g = Graph::new(2, vec![(1, 2), (1, 1)], None).unwrap();
        let inc = g.incidence_matrix();
        assert_eq!(*inc.at(1, 0), BigInt::from(0));
    }

    #[test]
    fn theta_incidence_is_minus_ones() {
        let inc = theta().incidence_matrix();
        assert_eq!(inc.rows(), 3);
        assert_eq!(inc.cols(), 1);
        for i in 0..3 {
            assert_eq!(*inc.at(i, 0), BigInt::from(-1));
        }
    }

    #[test]
    fn fundamental_basis_of_theta_matches_display() {
        let g = theta();
        let basis = g
            .fundamental_cycle_basis(&EdgeSet::new(vec![3]).unwrap())
            .unwrap();
        assert_eq!(basis.columns(), &[vec![1, 0, -1], vec![0, 1, -1]]);
        assert_eq!(basis.defining_edges(), Some(&[1, 2][..]));
    }

    #[test]
    fn incidence_annihilates_cycles() {
        let g = dunces_cap();
        for tree in g.spanning_trees() {
            let basis = g.fundamental_cycle_basis(&tree).unwrap();
            let prod = g.incidence_matrix().transpose().mul(&basis.matrix());
            for i in 0..prod.rows() {
                for j in 0..prod.cols() {
                    assert_eq!(*prod.at(i, j), BigInt::from(0));
                }
            }
        }
    }

    #[test]
    fn path_matrix_times_incidence_is_identity() {
        for g in [theta(), dunces_cap()] {
            let p = g.path_matrix(None).unwrap();
            let prod = p.transpose().mul(&g.incidence_matrix());
            assert_eq!(prod, Matrix::identity(g.num_vertices() - 1));
        }
    }

    #[test]
    fn path_matrix_of_theta_tree_one() {
        let g = theta();
        let p = g.path_matrix(Some(&EdgeSet::new(vec![1]).unwrap())).unwrap();
        assert_eq!(*p.at(0, 0), BigInt::from(-1));
        assert_eq!(*p.at(1, 0), BigInt::from(0));
        assert_eq!(*p.at(2, 0), BigInt::from(0));
    }

    #[test]
    fn path_matrix_single_edge_reversed() {
        let g = parse_graph_text("e 1 1 2\n").unwrap();
        let p = g.path_matrix(None).unwrap();
        assert_eq!(*p.at(0, 0), BigInt::from(-1));
    }

    #[test]
    fn contract_dunces_cap_e1_gives_theta() {
        // merging the endpoints of edge 1 leaves three parallel edges
        let g = dunces_cap().contract_edge(1).unwrap();
        assert_eq!(g, theta());
    }

    #[test]
    fn contract_parallel_edge_leaves_self_loop() {
        // edges 3 and 4 are parallel; contracting one turns the other into
        // a self-loop
        let g = dunces_cap().contract_edge(4).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.loop_number(), 2);
        assert_eq!(g.edges().iter().filter(|&&(t, h)| t == h).count(), 1);
    }

    #[test]
    fn contract_self_loop_fails() {
        let g = Graph::new(2, vec![(1, 2), (2, 2)], None).unwrap();
        assert_eq!(
            g.contract_edge(2).unwrap_err(),
            GraphError::SelfLoopContraction(2)
        );
    }

    #[test]
    fn delete_bridge_fails() {
        let g = parse_graph_text("e 1 1 2\ne 2 2 3\ne 3 2 3\n").unwrap();
        assert_eq!(
            g.delete_edge(1).unwrap_err(),
            GraphError::DisconnectingDeletion(1)
        );
        let smaller = g.delete_edge(2).unwrap();
        assert_eq!(smaller.num_edges(), 2);
        assert_eq!(smaller.loop_number(), 0);
    }

    #[test]
    fn delete_theta_edge_gives_banana() {
        let g = theta().delete_edge(3).unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(g.loop_number(), 1);
    }

    #[test]
    fn subdivide_theta_gives_dunces_cap() {
        let g = theta().subdivide_edge(1).unwrap();
        assert_eq!(g, dunces_cap());
    }

    #[test]
    fn subdivide_preserves_loop_number() {
        let g = dunces_cap();
        for e in 1..=4 {
            assert_eq!(g.subdivide_edge(e).unwrap().loop_number(), g.loop_number());
        }
    }

    /// Same edge labels and directions up to a single vertex relabelling
    /// (including the special vertex).
    fn edge_label_isomorphic(a: &Graph, b: &Graph) -> bool {
        if a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges() {
            return false;
        }
        let mut map = vec![0usize; a.num_vertices() + 1];
        let mut assign = |from: usize, to: usize| -> bool {
            if map[from] == 0 {
                map[from] = to;
                true
            } else {
                map[from] == to
            }
        };
        for e in 1..=a.num_edges() {
            let (t1, h1) = a.edge(e);
            let (t2, h2) = b.edge(e);
            if !assign(t1, t2) || !assign(h1, h2) {
                return false;
            }
        }
        let mut used: Vec<usize> = map[1..].iter().copied().filter(|&v| v != 0).collect();
        used.sort_unstable();
        used.dedup();
        if used.len() != map[1..].iter().filter(|&&v| v != 0).count() {
            return false;
        }
        map[a.v_star()] == 0 || map[a.v_star()] == b.v_star()
    }

    #[test]
    fn subdivide_then_contract_second_half_restores() {
        let g = dunces_cap();
        for e in 1..=g.num_edges() {
            let sub = g.subdivide_edge(e).unwrap();
            let back = sub.contract_edge(e + 1).unwrap();
            assert!(edge_label_isomorphic(&g, &back), "edge {e}");
        }
    }

    #[test]
    fn double_subdivision_gives_double_triangle() {
        let g = theta()
            .subdivide_edge(3)
            .unwrap()
            .subdivide_edge(1)
            .unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.num_edges(), 5);
        assert_eq!(g.loop_number(), 2);
        assert_eq!(g.spanning_trees().len(), 8);
    }

    #[test]
    fn explicit_basis_validation() {
        let g = theta();
        let ok = CycleBasis::from_columns(&g, vec![vec![1, 0, -1], vec![0, 1, -1]]);
        assert!(ok.is_ok());
        // scaled column: spans only a sublattice
        let bad = CycleBasis::from_columns(&g, vec![vec![2, 0, -2], vec![0, 1, -1]]);
        assert!(bad.is_err());
        // not a cycle vector
        let bad = CycleBasis::from_columns(&g, vec![vec![1, 0, 0], vec![0, 1, -1]]);
        assert!(bad.is_err());
    }

    #[test]
    fn basis_change_by_unimodular_matrix() {
        let g = dunces_cap();
        let basis = g.default_basis();
        let p = Matrix::from_rows(vec![
            vec![BigInt::from(1), BigInt::from(3)],
            vec![BigInt::from(0), BigInt::from(-1)],
        ]);
        let changed = basis.apply_change(&p).unwrap();
        assert!(CycleBasis::from_columns(&g, changed.columns().to_vec()).is_ok());
        let bad = Matrix::from_rows(vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1)],
        ]);
        assert!(basis.apply_change(&bad).is_err());
    }

    #[test]
    fn single_vertex_self_loops() {
        let g = Graph::new(1, vec![(1, 1), (1, 1)], None).unwrap();
        assert_eq!(g.loop_number(), 2);
        assert_eq!(g.spanning_trees(), vec![EdgeSet::empty()]);
        assert_eq!(g.incidence_matrix().cols(), 0);
        let basis = g.default_basis();
        assert_eq!(basis.columns(), &[vec![1, 0], vec![0, 1]]);
    }
}
