//! Multigraphs over Z_d and the graph rewrites that act on them.
//!
//! Adjacency is a dense symmetric matrix of edge multiplicities reduced
//! mod d, with an empty diagonal. Local complementation and vertex
//! multiplication are the two rewrites that correspond to local unitaries
//! on the associated graph states; `classify_caterpillar` recovers the
//! spine/leg labeling used by the caterpillar inequality.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Undirected multigraph with edge multiplicities in {0, …, d−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    d: usize,
    adj: Vec<u32>, // row-major n×n, symmetric, zero diagonal
}

impl Multigraph {
    /// Build a graph from weighted edges; weights accumulate mod d.
    pub fn new(n: usize, d: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadDimension(d));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let mut g = Multigraph { n, d, adj: vec![0; n * n] };
        for &(i, j, w) in edges {
            g.check_vertex(i)?;
            g.check_vertex(j)?;
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            let w = ((g.weight(i, j) as u64 + w) % d as u64) as u32;
            g.set_weight(i, j, w);
        }
        Ok(g)
    }

    /// Graph with no edges.
    pub fn edgeless(n: usize, d: usize) -> Result<Self> {
        Self::new(n, d, &[])
    }

    /// Path 0–1–…–(n−1) with unit weights.
    pub fn line(n: usize, d: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1, 1)).collect();
        Self::new(n, d, &edges)
    }

    /// Caterpillar with spine vertices 0…L−1 followed by leg vertices in
    /// spine order. `legs[i]` is the number of legs on spine position i+1;
    /// the first and last entries must be zero.
    pub fn caterpillar(d: usize, legs: &[usize]) -> Result<Self> {
        let spine = legs.len();
        if spine == 0 {
            return Err(Error::InvalidParameter("empty spine".into()));
        }
        if legs[0] != 0 || legs[spine - 1] != 0 {
            return Err(Error::InvalidParameter(
                "extremal spine vertices cannot carry legs".into(),
            ));
        }
        let n = spine + legs.iter().sum::<usize>();
        let mut edges: Vec<_> = (0..spine - 1).map(|i| (i, i + 1, 1)).collect();
        let mut next = spine;
        for (pos, &cnt) in legs.iter().enumerate() {
            for _ in 0..cnt {
                edges.push((pos, next, 1));
                next += 1;
            }
        }
        Self::new(n, d, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.adj[i * self.n + j]
    }

    fn set_weight(&mut self, i: usize, j: usize, w: u32) {
        self.adj[i * self.n + j] = w;
        self.adj[j * self.n + i] = w;
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v, self.n))
        }
    }

    /// Add `w` edges between two distinct vertices, mod d.
    pub fn add_edge(&mut self, i: usize, j: usize, w: u64) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        let w = ((self.weight(i, j) as u64 + w) % self.d as u64) as u32;
        self.set_weight(i, j, w);
        Ok(())
    }

    /// All edges (i < j, weight ≠ 0).
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let w = self.weight(i, j);
                if w != 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    /// Vertices connected to `v` by at least one edge.
    pub fn neighbourhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        Ok((0..self.n).filter(|&u| self.weight(v, u) != 0).collect())
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        Ok(self.neighbourhood(v)?.len())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for u in 0..self.n {
                if self.weight(v, u) != 0 && !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Local complementation at `v`: `adj'[i][j] = adj[i][j] + adj[i][v]·adj[j][v]` mod d.
    pub fn local_complementation(&self, v: usize) -> Result<Multigraph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if i == v || j == v {
                    continue;
                }
                let w = (self.weight(i, j) as u64
                    + self.weight(i, v) as u64 * self.weight(j, v) as u64)
                    % self.d as u64;
                g.set_weight(i, j, w as u32);
            }
        }
        Ok(g)
    }

    /// Scale row/column `v` by `b` mod d. Returns the rewritten graph and
    /// whether `b` is invertible mod d; only invertible multipliers preserve
    /// graph-state equivalence.
    pub fn vertex_multiplication(&self, v: usize, b: u64) -> Result<(Multigraph, bool)> {
        self.check_vertex(v)?;
        if b == 0 || b >= self.d as u64 {
            return Err(Error::BadMultiplier { b, d: self.d });
        }
        let mut g = self.clone();
        for i in 0..self.n {
            if i != v {
                g.set_weight(i, v, ((self.weight(i, v) as u64 * b) % self.d as u64) as u32);
            }
        }
        Ok((g, gcd(b, self.d as u64) == 1))
    }

    /// Vertex order of a linear graph, or an error if the graph is not a path.
    pub fn linear_order(&self) -> Result<Vec<usize>> {
        if self.n == 1 {
            return Ok(vec![0]);
        }
        if !self.is_connected() {
            return Err(Error::NotLinear);
        }
        let mut ends = Vec::new();
        for v in 0..self.n {
            match self.degree(v)? {
                1 => ends.push(v),
                2 => {}
                _ => return Err(Error::NotLinear),
            }
        }
        if ends.len() != 2 {
            return Err(Error::NotLinear);
        }
        let start = *ends.iter().min().unwrap();
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < self.n {
            let next = self
                .neighbourhood(cur)?
                .into_iter()
                .find(|&u| u != prev)
                .ok_or(Error::NotLinear)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        Ok(order)
    }

    /// Rescale a linear graph so every consecutive weight is 1, multiplying
    /// at vertices 2, 3, …, N in path order. Requires prime d. Returns the
    /// rewritten graph with the list of (vertex, multiplier) steps applied.
    pub fn normalize_linear_graph(&self) -> Result<(Multigraph, Vec<(usize, u64)>)> {
        if !is_prime(self.d) {
            return Err(Error::NonPrimeDimension(self.d));
        }
        let order = self.linear_order()?;
        for win in order.windows(2) {
            if self.weight(win[0], win[1]) == 0 {
                return Err(Error::NotLinear);
            }
        }
        let mut g = self.clone();
        let mut log = Vec::new();
        for step in 1..order.len() {
            let (prev, v) = (order[step - 1], order[step]);
            let w = g.weight(prev, v) as u64;
            if w == 1 {
                continue;
            }
            let b = mod_inverse(w, self.d as u64)
                .ok_or(Error::BadMultiplier { b: w, d: self.d })?;
            let (next, invertible) = g.vertex_multiplication(v, b)?;
            debug_assert!(invertible);
            g = next;
            log.push((v, b));
        }
        Ok((g, log))
    }

    /// Spine/leg labeling of a caterpillar graph, with the longest induced
    /// line subgraph as the spine. Ties between maximal spines are broken by
    /// the lexicographically smallest vertex sequence.
    pub fn classify_caterpillar(&self) -> Result<CaterpillarLabeling> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.n == 1 {
            return CaterpillarLabeling::build(self, vec![0]);
        }
        let interior: Vec<usize> = (0..self.n)
            .filter(|&v| self.degree(v).unwrap() >= 2)
            .collect();
        if interior.is_empty() {
            // Connected with every degree ≤ 1: a single edge.
            return CaterpillarLabeling::build(self, vec![0, 1]);
        }
        let core = self.induced_path_order(&interior)?;
        let first_legs = self.degree_one_neighbours(core[0], &interior)?;
        let last_legs = self.degree_one_neighbours(core[core.len() - 1], &interior)?;
        if first_legs.is_empty() || last_legs.is_empty() {
            return Err(Error::NotACaterpillar(
                "spine end has no degree-1 extension".into(),
            ));
        }
        let mut best: Option<Vec<usize>> = None;
        for &e0 in &first_legs {
            for &e1 in &last_legs {
                if e0 == e1 {
                    continue;
                }
                for seq in [
                    [&[e0][..], &core[..], &[e1][..]].concat(),
                    [&[e1][..], &core.iter().rev().copied().collect::<Vec<_>>()[..], &[e0][..]]
                        .concat(),
                ] {
                    if best.as_ref().is_none_or(|b| seq < *b) {
                        best = Some(seq);
                    }
                }
            }
        }
        let spine = best.ok_or_else(|| {
            Error::NotACaterpillar("no valid spine extension found".into())
        })?;
        CaterpillarLabeling::build(self, spine)
    }

    /// Order the induced subgraph on `verts` as a path, or fail.
    fn induced_path_order(&self, verts: &[usize]) -> Result<Vec<usize>> {
        let inside = |u: usize| verts.contains(&u);
        if verts.len() == 1 {
            return Ok(verts.to_vec());
        }
        let mut ends = Vec::new();
        for &v in verts {
            let deg = self
                .neighbourhood(v)?
                .into_iter()
                .filter(|&u| inside(u))
                .count();
            match deg {
                0 | 1 => ends.push(v),
                2 => {}
                _ => {
                    return Err(Error::NotACaterpillar(format!(
                        "vertex {v} has {deg} interior neighbours"
                    )))
                }
            }
        }
        if ends.len() != 2 {
            return Err(Error::NotACaterpillar(
                "interior vertices do not form a path".into(),
            ));
        }
        let mut order = vec![ends[0]];
        let mut prev = usize::MAX;
        let mut cur = ends[0];
        while order.len() < verts.len() {
            let next = self
                .neighbourhood(cur)?
                .into_iter()
                .find(|&u| inside(u) && u != prev)
                .ok_or_else(|| Error::NotACaterpillar("interior path breaks".into()))?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        Ok(order)
    }

    fn degree_one_neighbours(&self, v: usize, interior: &[usize]) -> Result<Vec<usize>> {
        Ok(self
            .neighbourhood(v)?
            .into_iter()
            .filter(|u| !interior.contains(u))
            .collect())
    }
}

/// Spine/leg labeling of a caterpillar graph. Spine positions are 1-based,
/// matching the pair labels [i, j]: [i, 0] is the i-th spine vertex and
/// [i, j] with j ≥ 1 its j-th leg.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaterpillarLabeling {
    spine: Vec<usize>,
    legs: Vec<Vec<usize>>,
    labels: Vec<(usize, usize)>, // vertex -> [i, j]
}

impl CaterpillarLabeling {
    fn build(g: &Multigraph, spine: Vec<usize>) -> Result<Self> {
        let l = spine.len();
        let mut legs = vec![Vec::new(); l];
        let mut labels = vec![(0usize, 0usize); g.vertex_count()];
        for (pos, &v) in spine.iter().enumerate() {
            labels[v] = (pos + 1, 0);
        }
        for v in 0..g.vertex_count() {
            if spine.contains(&v) {
                continue;
            }
            if g.degree(v)? != 1 {
                return Err(Error::NotACaterpillar(format!(
                    "vertex {v} outside the spine has degree {}",
                    g.degree(v)?
                )));
            }
            let owner = g.neighbourhood(v)?[0];
            let pos = spine
                .iter()
                .position(|&s| s == owner)
                .ok_or_else(|| Error::NotACaterpillar(format!("leg {v} hangs off a leg")))?;
            if pos == 0 || pos == l - 1 {
                return Err(Error::NotACaterpillar(
                    "leg attached to an extremal spine vertex".into(),
                ));
            }
            legs[pos].push(v);
        }
        for (pos, list) in legs.iter().enumerate() {
            for (j, &v) in list.iter().enumerate() {
                labels[v] = (pos + 1, j + 1);
            }
        }
        debug_assert_eq!(
            l + legs.iter().map(Vec::len).sum::<usize>(),
            g.vertex_count()
        );
        Ok(CaterpillarLabeling { spine, legs, labels })
    }

    pub fn spine_len(&self) -> usize {
        self.spine.len()
    }

    pub fn spine(&self) -> &[usize] {
        &self.spine
    }

    /// Leg count n_i per spine position (1-based position i ↦ entry i−1).
    pub fn leg_counts(&self) -> Vec<usize> {
        self.legs.iter().map(Vec::len).collect()
    }

    /// Vertex carrying the label [i, j]; `None` when the label does not exist.
    pub fn vertex(&self, i: usize, j: usize) -> Option<usize> {
        if i == 0 || i > self.spine.len() {
            return None;
        }
        if j == 0 {
            Some(self.spine[i - 1])
        } else {
            self.legs[i - 1].get(j - 1).copied()
        }
    }

    /// Label [i, j] of a vertex.
    pub fn label(&self, v: usize) -> Option<(usize, usize)> {
        self.labels.get(v).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }
}

/// JSON file format for graphs: {"d": d, "n": n, "edges": [[i, j, w], …]},
/// weights defaulting to 1 when a pair [i, j] is given.
#[derive(Serialize, Deserialize)]
pub struct GraphFile {
    pub d: usize,
    pub n: usize,
    pub edges: Vec<EdgeSpec>,
}

/// Edge entry: [i, j] or [i, j, weight].
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeSpec {
    Pair(usize, usize),
    Weighted(usize, usize, u64),
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<Multigraph> {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| match *e {
                EdgeSpec::Pair(i, j) => (i, j, 1),
                EdgeSpec::Weighted(i, j, w) => (i, j, w),
            })
            .collect();
        Multigraph::new(self.n, self.d, &edges)
    }

    pub fn from_graph(g: &Multigraph) -> Self {
        GraphFile {
            d: g.dimension(),
            n: g.vertex_count(),
            edges: g
                .edges()
                .into_iter()
                .map(|(i, j, w)| EdgeSpec::Weighted(i, j, w as u64))
                .collect(),
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn is_prime(d: usize) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= d {
        if d.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    (1..m).find(|b| (a * b) % m == 1)
}
