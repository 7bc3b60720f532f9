//! Colourings `q` of black vertices and the marriage-type condition they must
//! satisfy, decided two independent ways: an exhaustive subset check and a
//! search for an orientation with a closed walk through every black vertex.

use std::collections::BTreeMap;

use crate::error::{usage, Result};
use crate::partition::Partition;
use crate::polygon::{GluedMap, VertexColor};

/// Largest number of black vertices the exhaustive subset check accepts.
pub const MAX_BLACKS: usize = 24;

/// A bipartite multigraph with black vertices `0..blacks` and white vertices
/// `0..whites`. Parallel edges are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    blacks: usize,
    whites: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<u64>,
}

impl BipartiteGraph {
    pub fn new(blacks: usize, whites: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if whites > 64 {
            return Err(usage(format!(
                "{whites} white vertices exceed the supported 64"
            )));
        }
        let mut neighbors = vec![0u64; blacks];
        for &(b, w) in &edges {
            if b >= blacks || w >= whites {
                return Err(usage(format!(
                    "edge ({b}, {w}) references a missing vertex"
                )));
            }
            neighbors[b] |= 1 << w;
        }
        Ok(Self {
            blacks,
            whites,
            edges,
            neighbors,
        })
    }

    /// Black and white vertices are numbered in the map's vertex order.
    pub fn from_map(map: &GluedMap) -> Result<Self> {
        if !map.is_bipartite() {
            return Err(usage("map is not properly two-coloured"));
        }
        let mut position = vec![0; map.vertex_count()];
        let (mut nb, mut nw) = (0, 0);
        for (v, slot) in position.iter_mut().enumerate() {
            match map.color(v) {
                VertexColor::Black => {
                    *slot = nb;
                    nb += 1;
                }
                VertexColor::White => {
                    *slot = nw;
                    nw += 1;
                }
                VertexColor::Mixed => unreachable!(),
            }
        }
        let edges = map
            .edges()
            .iter()
            .map(|e| {
                let [a, b] = e.ends;
                if map.color(a) == VertexColor::Black {
                    (position[a], position[b])
                } else {
                    (position[b], position[a])
                }
            })
            .collect();
        Self::new(nb, nw, edges)
    }

    pub fn black_count(&self) -> usize {
        self.blacks
    }

    pub fn white_count(&self) -> usize {
        self.whites
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Bit mask of the distinct white neighbours of a black vertex.
    pub fn neighbor_mask(&self, black: usize) -> u64 {
        self.neighbors[black]
    }

    fn check_q(&self, q: &[u32]) -> Result<()> {
        if q.len() != self.blacks {
            return Err(usage(format!(
                "colouring has {} values for {} black vertices",
                q.len(),
                self.blacks
            )));
        }
        if let Some(bad) = q.iter().find(|&&c| c < 2) {
            return Err(usage(format!("colour {bad} is below 2")));
        }
        if self.blacks > MAX_BLACKS {
            return Err(usage(format!(
                "{} black vertices exceed the exhaustive limit {MAX_BLACKS}",
                self.blacks
            )));
        }
        Ok(())
    }

    /// Every nontrivial subset `A` of black vertices has more
    /// than `sum_{v in A} (q(v) - 1)` distinct white neighbours.
    pub fn hall_condition(&self, q: &[u32]) -> Result<bool> {
        self.check_q(q)?;
        Ok(hall_unchecked(&self.neighbors, q))
    }

    /// Existence of an orientation where each white vertex has exactly one
    /// outgoing edge, each black `v` exactly `q(v) - 1` incoming edges, and all
    /// black vertices share one strongly connected component.
    pub fn orientation_walk_condition(&self, q: &[u32]) -> Result<bool> {
        self.check_q(q)?;
        let demand: u64 = q.iter().map(|&c| u64::from(c - 1)).sum();
        if demand != self.whites as u64 {
            return Ok(false);
        }
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); self.whites];
        for (k, &(_, w)) in self.edges.iter().enumerate() {
            incident[w].push(k);
        }
        let mut search = OrientationSearch {
            graph: self,
            incident: &incident,
            capacity: q.iter().map(|&c| c as usize - 1).collect(),
            out_edge: vec![usize::MAX; self.whites],
        };
        Ok(search.run(0))
    }
}

/// Subset check over bit masks; `neighbors[b]` is black `b`'s white mask.
/// Unions and weights are built incrementally from the lowest set bit.
pub(crate) fn hall_unchecked(neighbors: &[u64], q: &[u32]) -> bool {
    let b = neighbors.len();
    if b < 2 {
        return true;
    }
    let full = (1usize << b) - 1;
    let mut union = vec![0u64; full + 1];
    let mut weight = vec![0u32; full + 1];
    for mask in 1..full {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        union[mask] = union[rest] | neighbors[low];
        weight[mask] = weight[rest] + (q[low] - 1);
        if union[mask].count_ones() <= weight[mask] {
            return false;
        }
    }
    true
}

struct OrientationSearch<'a> {
    graph: &'a BipartiteGraph,
    incident: &'a [Vec<usize>],
    capacity: Vec<usize>,
    out_edge: Vec<usize>,
}

impl OrientationSearch<'_> {
    fn run(&mut self, white: usize) -> bool {
        if white == self.graph.whites {
            return self.capacity.iter().all(|&c| c == 0) && self.blacks_strongly_connected();
        }
        for &k in &self.incident[white] {
            let (b, _) = self.graph.edges[k];
            if self.capacity[b] == 0 {
                continue;
            }
            self.capacity[b] -= 1;
            self.out_edge[white] = k;
            if self.run(white + 1) {
                return true;
            }
            self.capacity[b] += 1;
        }
        false
    }

    fn blacks_strongly_connected(&self) -> bool {
        let g = self.graph;
        if g.blacks <= 1 {
            return true;
        }
        // nodes: blacks 0..B, whites B..B+W
        let total = g.blacks + g.whites;
        let mut fwd = vec![Vec::new(); total];
        let mut back = vec![Vec::new(); total];
        for (k, &(b, w)) in g.edges.iter().enumerate() {
            let wn = g.blacks + w;
            let (from, to) = if self.out_edge[w] == k {
                (wn, b)
            } else {
                (b, wn)
            };
            fwd[from].push(to);
            back[to].push(from);
        }
        let reach = |adj: &[Vec<usize>]| {
            let mut seen = vec![false; total];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen
        };
        let (f, r) = (reach(&fwd), reach(&back));
        (0..g.blacks).all(|b| f[b] && r[b])
    }
}

/// Assignment of colours `>= 2` to black vertices, keyed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QColoring {
    assignment: BTreeMap<usize, u32>,
}

impl QColoring {
    pub fn new(assignment: BTreeMap<usize, u32>) -> Result<Self> {
        if let Some((v, c)) = assignment.iter().find(|(_, &c)| c < 2) {
            return Err(usage(format!("vertex {v} has colour {c} below 2")));
        }
        Ok(Self { assignment })
    }

    pub fn assignment(&self) -> &BTreeMap<usize, u32> {
        &self.assignment
    }

    pub fn get(&self, vertex_id: usize) -> Option<u32> {
        self.assignment.get(&vertex_id).copied()
    }

    /// The monomial given by the multiset of colours.
    pub fn monomial(&self) -> Partition {
        Partition::new(self.assignment.values().copied().collect())
            .expect("colours are validated on construction")
    }

    /// Colours listed in the map's black-vertex order.
    fn values_for(&self, map: &GluedMap) -> Result<Vec<u32>> {
        let blacks = map.black_vertices();
        let ids: Vec<usize> = blacks.iter().map(|&v| map.vertex_id(v)).collect();
        if ids.len() != self.assignment.len()
            || ids.iter().any(|id| !self.assignment.contains_key(id))
        {
            return Err(usage(
                "colouring is not defined on exactly the black vertices of the map",
            ));
        }
        Ok(ids.iter().map(|id| self.assignment[id]).collect())
    }

    fn from_values(map: &GluedMap, values: &[u32]) -> Self {
        let assignment = map
            .black_vertices()
            .iter()
            .zip(values)
            .map(|(&v, &c)| (map.vertex_id(v), c))
            .collect();
        Self { assignment }
    }
}

pub fn hall_condition(map: &GluedMap, q: &QColoring) -> Result<bool> {
    let graph = BipartiteGraph::from_map(map)?;
    graph.hall_condition(&q.values_for(map)?)
}

pub fn orientation_walk_condition(map: &GluedMap, q: &QColoring) -> Result<bool> {
    let graph = BipartiteGraph::from_map(map)?;
    graph.orientation_walk_condition(&q.values_for(map)?)
}

/// Number of admissible colourings of `map` with colour multiset `mono`;
/// zero when the vertex counts do not fit.
pub fn admissible_colorings(map: &GluedMap, mono: &Partition) -> u64 {
    if !map.is_bipartite()
        || map.black_count() != mono.black_count()
        || map.vertex_count() != mono.vertex_count()
        || mono.is_empty()
    {
        return 0;
    }
    let graph = BipartiteGraph::from_map(map).expect("bipartite map");
    if graph.black_count() > MAX_BLACKS {
        return 0;
    }
    let mut values: Vec<u32> = mono.parts().to_vec();
    values.sort_unstable();
    let mut count = 0;
    loop {
        if hall_unchecked(&graph.neighbors, &values) {
            count += 1;
        }
        if !next_permutation(&mut values) {
            break;
        }
    }
    count
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Calls `visit` with every colour vector (in black-vertex order) that has
/// `sum (q - 1) = whites` and passes the subset check. Colour vectors come out
/// in lexicographic order.
pub(crate) fn for_each_admissible_q(graph: &BipartiteGraph, mut visit: impl FnMut(&[u32])) {
    let (b, w) = (graph.black_count(), graph.white_count());
    if b == 0 || w < b || b > MAX_BLACKS {
        return;
    }
    let mut q = vec![0u32; b];
    fn rec(
        pos: usize,
        rest: usize,
        q: &mut [u32],
        graph: &BipartiteGraph,
        visit: &mut dyn FnMut(&[u32]),
    ) {
        let left = q.len() - pos;
        if left == 1 {
            q[pos] = rest as u32 + 1;
            if hall_unchecked(&graph.neighbors, q) {
                visit(q);
            }
            return;
        }
        for part in 1..=rest - (left - 1) {
            q[pos] = part as u32 + 1;
            rec(pos + 1, rest - part, q, graph, visit);
        }
    }
    rec(0, w, &mut q, graph, &mut visit);
}

/// Every admissible colouring of `map` together with its monomial.
pub fn enumerate_q(map: &GluedMap) -> Vec<(QColoring, Partition)> {
    let Ok(graph) = BipartiteGraph::from_map(map) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for_each_admissible_q(&graph, |values| {
        let q = QColoring::from_values(map, values);
        let mono = q.monomial();
        out.push((q, mono));
    });
    out
}

/// Every colour vector with `sum (q - 1) = whites`, admissible or not.
/// Used to compare the two oracles on the full candidate space.
pub fn candidate_colorings(graph: &BipartiteGraph) -> Vec<Vec<u32>> {
    let (b, w) = (graph.black_count(), graph.white_count());
    let mut out = Vec::new();
    if b == 0 || w < b {
        return out;
    }
    fn rec(pos: usize, rest: usize, q: &mut Vec<u32>, b: usize, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == b {
            q.push(rest as u32 + 1);
            out.push(q.clone());
            q.pop();
            return;
        }
        for part in 1..=rest - (b - pos - 1) {
            q.push(part as u32 + 1);
            rec(pos + 1, rest - part, q, b, out);
            q.pop();
        }
    }
    rec(0, w, &mut Vec::new(), b, &mut out);
    out
}
