//! Chimera graph construction and adjacency queries.
//!
//! The chimera graph chi(a,b,c) is an a x b grid in which every node is a
//! complete bipartite cell K_{c,c}. Half of each cell (side A) couples to the
//! cells above and below, the other half (side B) to the cells left and
//! right, one edge per slot.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Grid dimensions and shore size defining chi(rows, cols, shore).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChimeraParams {
    rows: usize,
    cols: usize,
    shore: usize,
}

impl ChimeraParams {
    /// Rejects zero parameters; all three must be at least 1.
    pub fn new(rows: usize, cols: usize, shore: usize) -> Result<Self> {
        if rows == 0 || cols == 0 || shore == 0 {
            return Err(Error::InvalidChimeraParams { rows, cols, shore });
        }
        Ok(ChimeraParams { rows, cols, shore })
    }

    /// Square chi(k,k,l).
    pub fn square(k: usize, l: usize) -> Result<Self> {
        Self::new(k, k, l)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shore(&self) -> usize {
        self.shore
    }

    /// Vertex count n = 2 * rows * cols * shore.
    pub fn vertex_count(&self) -> usize {
        2 * self.rows * self.cols * self.shore
    }

    /// Edge count rows*cols*shore^2 + shore*(cols*(rows-1) + rows*(cols-1)).
    pub fn edge_count(&self) -> usize {
        self.rows * self.cols * self.shore * self.shore
            + self.shore * (self.cols * (self.rows - 1) + self.rows * (self.cols - 1))
    }
}

/// Which half of a bipartite cell a vertex belongs to. Side A carries the
/// vertical inter-cell couplings, side B the horizontal ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    fn index(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
        }
    }
}

/// Vertex id in [0, n), row-major over cells, side A before side B, slots in
/// order: id = ((row*cols + col)*2 + side)*shore + slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Decoded position of a vertex inside the chimera layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexCoords {
    pub row: usize,
    pub col: usize,
    pub side: Side,
    pub slot: usize,
}

impl VertexCoords {
    pub fn encode(&self, params: &ChimeraParams) -> VertexId {
        let cell = self.row * params.cols + self.col;
        VertexId((cell * 2 + self.side.index()) * params.shore + self.slot)
    }
}

impl VertexId {
    pub fn decompose(&self, params: &ChimeraParams) -> Result<VertexCoords> {
        let n = params.vertex_count();
        if self.0 >= n {
            return Err(Error::VertexOutOfRange { id: self.0, n });
        }
        let slot = self.0 % params.shore;
        let rest = self.0 / params.shore;
        let side = if rest % 2 == 0 { Side::A } else { Side::B };
        let cell = rest / 2;
        Ok(VertexCoords {
            row: cell / params.cols,
            col: cell % params.cols,
            side,
            slot,
        })
    }
}

/// Undirected simple graph over a fixed chimera layout. Immutable after
/// construction.
#[derive(Debug, Clone)]
pub struct Graph {
    params: ChimeraParams,
    n: usize,
    edges: Vec<(u32, u32)>,
    neighbors: Vec<Vec<u32>>,
}

/// Builds chi(params): every side-A vertex is joined to every side-B vertex
/// of its own cell; slot j of side A couples to slot j of the vertical
/// neighbor cells, slot j of side B to the horizontal ones.
pub fn build_chimera(params: &ChimeraParams) -> Graph {
    let shore = params.shore;
    let n = params.vertex_count();
    let mut edges = Vec::with_capacity(params.edge_count());
    let at = |row, col, side: Side, slot| {
        VertexCoords {
            row,
            col,
            side,
            slot,
        }
        .encode(params)
        .0
    };

    for row in 0..params.rows {
        for col in 0..params.cols {
            for i in 0..shore {
                let a = at(row, col, Side::A, i);
                for j in 0..shore {
                    edges.push((a as u32, at(row, col, Side::B, j) as u32));
                }
                if row + 1 < params.rows {
                    edges.push((a as u32, at(row + 1, col, Side::A, i) as u32));
                }
                let b = at(row, col, Side::B, i);
                if col + 1 < params.cols {
                    edges.push((b as u32, at(row, col + 1, Side::B, i) as u32));
                }
            }
        }
    }

    for e in &mut edges {
        if e.0 > e.1 {
            *e = (e.1, e.0);
        }
    }
    edges.sort_unstable();
    debug_assert!(
        edges.windows(2).all(|w| w[0] < w[1]),
        "duplicate edge generated"
    );

    let mut neighbors = vec![Vec::new(); n];
    for &(u, v) in &edges {
        neighbors[u as usize].push(v);
        neighbors[v as usize].push(u);
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }

    Graph {
        params: *params,
        n,
        edges,
        neighbors,
    }
}

/// The marked vertex: cell (rows/2, cols/2), side A, slot 0. Deterministic.
pub fn marked_vertex(params: &ChimeraParams) -> VertexId {
    VertexCoords {
        row: params.rows / 2,
        col: params.cols / 2,
        side: Side::A,
        slot: 0,
    }
    .encode(params)
}

/// Largest absolute eigenvalue of the adjacency matrix. For a nonnegative
/// symmetric matrix this equals the top eigenvalue.
pub fn spectral_norm<T: Scalar>(g: &Graph) -> T {
    let es = crate::spectral::eigendecompose(&g.adjacency_matrix::<T>())
        .expect("adjacency matrix is symmetric by construction");
    let values = es.values();
    values[0].abs().max(values[values.len() - 1].abs())
}

impl Graph {
    pub fn params(&self) -> &ChimeraParams {
        &self.params
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Edges as unordered pairs with u < v, sorted lexicographically.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors[v.0].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[u32] {
        &self.neighbors[v.0]
    }

    /// Maximum over vertices of incident edge count.
    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Dense symmetric 0/1 adjacency matrix.
    pub fn adjacency_matrix<T: Scalar>(&self) -> Matrix<T> {
        let mut a = Matrix::zeros(self.n);
        for &(u, v) in &self.edges {
            a.set(u as usize, v as usize, T::one());
            a.set(v as usize, u as usize, T::one());
        }
        a
    }

    /// True when every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.neighbors[u as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n
    }

    /// One edge per line so graph files diff cleanly.
    pub fn to_json_string(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"rows\": {},\n", self.params.rows));
        out.push_str(&format!("  \"cols\": {},\n", self.params.cols));
        out.push_str(&format!("  \"shore\": {},\n", self.params.shore));
        out.push_str(&format!("  \"n\": {},\n", self.n));
        out.push_str("  \"edges\": [\n");
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            let sep = if idx + 1 == self.edges.len() { "" } else { "," };
            out.push_str(&format!("    [{u}, {v}]{sep}\n"));
        }
        out.push_str("  ]\n}\n");
        out
    }

    pub fn from_json_str(text: &str) -> Result<Graph> {
        let file: GraphFile = serde_json::from_str(text)?;
        let params = ChimeraParams::new(file.rows, file.cols, file.shore)?;
        let n = params.vertex_count();
        if file.n != n {
            return Err(Error::MalformedGraph(format!(
                "vertex count {} does not match 2*rows*cols*shore = {}",
                file.n, n
            )));
        }
        let mut edges = file.edges;
        for &(u, v) in &edges {
            if u >= v {
                return Err(Error::MalformedGraph(format!(
                    "edge ({u},{v}) not ordered u < v"
                )));
            }
            if v as usize >= n {
                return Err(Error::MalformedGraph(format!(
                    "edge ({u},{v}) out of range"
                )));
            }
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedGraph("duplicate edge".into()));
        }
        let mut neighbors = vec![Vec::new(); n];
        for &(u, v) in &edges {
            neighbors[u as usize].push(v);
            neighbors[v as usize].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Graph {
            params,
            n,
            edges,
            neighbors,
        })
    }
}

/// On-disk JSON schema: { "rows", "cols", "shore", "n", "edges": [[u,v], ...] }
/// with edges sorted lexicographically, u < v.
#[derive(Deserialize)]
struct GraphFile {
    rows: usize,
    cols: usize,
    shore: usize,
    n: usize,
    edges: Vec<(u32, u32)>,
}
