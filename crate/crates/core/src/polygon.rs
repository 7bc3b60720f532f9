//! The labelled 2n-gon, its edge gluings, and the one-face maps they produce.
//!
//! Corners are numbered `0..2n`; boundary edge `i` runs from corner `i` to
//! corner `i + 1 (mod 2n)`. Gluing two boundary edges identifies their
//! endpoints in one of two ways, and the vertex set of the resulting map is
//! the set of corner classes.

use std::fmt;

use crate::error::{usage, Result};

/// Colour of a polygon corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CornerColor {
    Black,
    White,
}

/// Which corner parity is painted black. Even corners are black by default;
/// the swapped convention exists to check that the construction is symmetric.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColorConvention {
    #[default]
    EvenBlack,
    OddBlack,
}

impl ColorConvention {
    pub fn corner_color(self, corner: usize) -> CornerColor {
        let even = corner.is_multiple_of(2);
        match (self, even) {
            (ColorConvention::EvenBlack, true) | (ColorConvention::OddBlack, false) => {
                CornerColor::Black
            }
            _ => CornerColor::White,
        }
    }
}

/// A polygon with `2n` corners and `2n` boundary edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonSpec {
    n: usize,
}

impl PolygonSpec {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(usage("n must be at least 1"));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn corner_count(&self) -> usize {
        2 * self.n
    }

    pub fn boundary_edge_count(&self) -> usize {
        2 * self.n
    }

    pub fn corner_color(&self, corner: usize) -> CornerColor {
        ColorConvention::EvenBlack.corner_color(corner)
    }

    /// Corners joined by boundary edge `i`.
    pub fn boundary_edge(&self, i: usize) -> (usize, usize) {
        (i, (i + 1) % self.corner_count())
    }

    /// The map-side label carried by boundary edge `i`.
    pub fn side_label(&self, i: usize) -> usize {
        i + 1
    }
}

/// How a glued pair identifies its endpoints.
///
/// For a pair `(i, j)`, `Straight` identifies corner `i` with `j` and `i + 1`
/// with `j + 1`; `Twisted` identifies `i` with `j + 1` and `i + 1` with `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Twist {
    Straight,
    Twisted,
}

impl Twist {
    /// The unique identification that keeps corner colours apart.
    pub fn color_preserving(i: usize, j: usize) -> Twist {
        if (i + j).is_multiple_of(2) {
            Twist::Straight
        } else {
            Twist::Twisted
        }
    }
}

/// A fixed-point-free involution on boundary edges, optionally with an
/// explicit twist flag per edge. Without flags every pair uses the
/// colour-preserving identification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gluing {
    partner: Vec<usize>,
    twists: Option<Vec<Twist>>,
}

impl Gluing {
    pub fn from_partners(partner: Vec<usize>) -> Result<Self> {
        let len = partner.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(usage(format!(
                "a gluing needs a positive even number of edges, got {len}"
            )));
        }
        for (i, &p) in partner.iter().enumerate() {
            if p >= len || p == i || partner[p] != i {
                return Err(usage(format!("edge {i} is not part of a valid pair")));
            }
        }
        Ok(Self {
            partner,
            twists: None,
        })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if pairs.len() != n {
            return Err(usage(format!("expected {n} pairs, got {}", pairs.len())));
        }
        let mut partner = vec![usize::MAX; 2 * n];
        for &(i, j) in pairs {
            if i >= 2 * n || j >= 2 * n || i == j {
                return Err(usage(format!("invalid pair ({i}, {j}) for n = {n}")));
            }
            if partner[i] != usize::MAX || partner[j] != usize::MAX {
                return Err(usage(format!("edge used twice in pair ({i}, {j})")));
            }
            partner[i] = j;
            partner[j] = i;
        }
        Self::from_partners(partner)
    }

    pub fn from_twisted_pairs(n: usize, pairs: &[(usize, usize, Twist)]) -> Result<Self> {
        let plain: Vec<_> = pairs.iter().map(|&(i, j, _)| (i, j)).collect();
        let mut g = Self::from_pairs(n, &plain)?;
        let mut twists = vec![Twist::Straight; 2 * n];
        for &(i, j, t) in pairs {
            twists[i] = t;
            twists[j] = t;
        }
        g.twists = Some(twists);
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn edge_count(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    pub fn has_explicit_twists(&self) -> bool {
        self.twists.is_some()
    }

    pub fn twist(&self, i: usize) -> Twist {
        match &self.twists {
            Some(t) => t[i],
            None => Twist::color_preserving(i, self.partner[i]),
        }
    }

    /// Pairs `(i, j)` with `i < j`, ordered by `i`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i < j)
            .map(|(i, &j)| (i, j))
            .collect()
    }

    pub fn twisted_pairs(&self) -> Vec<(usize, usize, Twist)> {
        self.pairs()
            .into_iter()
            .map(|(i, j)| (i, j, self.twist(i)))
            .collect()
    }

    /// True when every pair uses the colour-preserving identification.
    pub fn is_color_preserving(&self) -> bool {
        (0..self.edge_count()).all(|i| self.twist(i) == Twist::color_preserving(i, self.partner[i]))
    }

    /// Drops explicit twist flags when they agree with the colour-preserving rule.
    pub fn normalized(mut self) -> Self {
        if self.twists.is_some() && self.is_color_preserving() {
            self.twists = None;
        }
        self
    }

    /// Shifts every corner (and boundary edge) index by `shift`.
    pub fn shifted(&self, shift: usize) -> Self {
        let len = self.edge_count();
        let mut partner = vec![0; len];
        for (i, &p) in self.partner.iter().enumerate() {
            partner[(i + shift) % len] = (p + shift) % len;
        }
        let twists = self.twists.as_ref().map(|t| {
            let mut out = vec![Twist::Straight; len];
            for (i, &flag) in t.iter().enumerate() {
                out[(i + shift) % len] = flag;
            }
            out
        });
        Self { partner, twists }
    }

    /// Mirror image under the corner reflection `c -> -c`; boundary edge `i`
    /// becomes edge `-i - 1`. Twist flags are unchanged by the reflection.
    pub fn reflected(&self) -> Self {
        let len = self.edge_count();
        let mirror = |i: usize| len - 1 - i;
        let mut partner = vec![0; len];
        for (i, &p) in self.partner.iter().enumerate() {
            partner[mirror(i)] = mirror(p);
        }
        let twists = self.twists.as_ref().map(|t| {
            let mut out = vec![Twist::Straight; len];
            for (i, &flag) in t.iter().enumerate() {
                out[mirror(i)] = flag;
            }
            out
        });
        Self { partner, twists }
    }

    /// Colour-preserving rotation by `r` steps of two corners, `0 <= r < n`.
    pub fn rotate(&self, r: usize) -> Result<Self> {
        if r >= self.n() {
            return Err(usage(format!(
                "rotation {r} out of range for n = {}",
                self.n()
            )));
        }
        Ok(self.shifted(2 * r))
    }
}

impl fmt::Display for Gluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (i, j, t)) in self.twisted_pairs().into_iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({i},{j})")?;
            if self.twists.is_some() && t == Twist::Twisted {
                write!(f, "~")?;
            }
        }
        write!(f, "}}")
    }
}

/// Enumerates fixed-point-free involutions on `0..2n` in a fixed order: the
/// lowest unmatched index is always paired first, partners in increasing order.
///
/// `advance_in_place` mutates an internal partner array so hot loops can avoid
/// one allocation per matching.
#[derive(Clone, Debug)]
pub struct Matchings {
    partner: Vec<usize>,
    stack: Vec<usize>,
    fixed: usize,
    started: bool,
    done: bool,
}

const UNMATCHED: usize = usize::MAX;

impl Matchings {
    fn new(n: usize) -> Self {
        Self {
            partner: vec![UNMATCHED; 2 * n],
            stack: Vec::with_capacity(n),
            fixed: 0,
            started: false,
            done: false,
        }
    }

    /// Only the matchings in which edge 0 is paired with `first_partner`.
    pub fn branch(n: usize, first_partner: usize) -> Result<Self> {
        if n == 0 {
            return Err(usage("n must be at least 1"));
        }
        if first_partner == 0 || first_partner >= 2 * n {
            return Err(usage(format!(
                "edge 0 cannot be paired with {first_partner} when n = {n}"
            )));
        }
        let mut m = Self::new(n);
        m.partner[0] = first_partner;
        m.partner[first_partner] = 0;
        m.stack.push(0);
        m.fixed = 1;
        Ok(m)
    }

    fn lowest_unmatched_after(&self, after: Option<usize>) -> Option<usize> {
        let start = after.map_or(0, |a| a + 1);
        (start..self.partner.len()).find(|&i| self.partner[i] == UNMATCHED)
    }

    fn complete(&mut self) {
        while let Some(a) = self.lowest_unmatched_after(None) {
            let b = self
                .lowest_unmatched_after(Some(a))
                .expect("an even number of edges is always matchable");
            self.partner[a] = b;
            self.partner[b] = a;
            self.stack.push(a);
        }
    }

    fn step(&mut self) -> bool {
        while self.stack.len() > self.fixed {
            let a = self.stack.pop().unwrap();
            let b = self.partner[a];
            self.partner[a] = UNMATCHED;
            self.partner[b] = UNMATCHED;
            if let Some(c) = self.lowest_unmatched_after(Some(b)) {
                self.partner[a] = c;
                self.partner[c] = a;
                self.stack.push(a);
                self.complete();
                return true;
            }
        }
        false
    }

    /// Moves to the next matching and exposes its partner array.
    pub fn advance_in_place(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.complete();
        } else if !self.step() {
            self.done = true;
            return None;
        }
        Some(&self.partner)
    }
}

impl Iterator for Matchings {
    type Item = Gluing;

    fn next(&mut self) -> Option<Gluing> {
        self.advance_in_place().map(|p| Gluing {
            partner: p.to_vec(),
            twists: None,
        })
    }
}

/// All `(2n - 1)!!` colour-preserving gluings of the 2n-gon.
pub fn enumerate_gluings(n: usize) -> Result<Matchings> {
    if n == 0 {
        return Err(usage("n must be at least 1"));
    }
    Ok(Matchings::new(n))
}

/// All `(2n - 1)!! * 2^n` gluings with explicit twist flags. Flags follow the
/// pair order of [`Gluing::pairs`]; bit `k` set means pair `k` is twisted.
pub fn enumerate_twisted_gluings(n: usize) -> Result<impl Iterator<Item = Gluing>> {
    if n >= usize::BITS as usize {
        return Err(usage(format!(
            "n = {n} is too large for twisted enumeration"
        )));
    }
    let matchings = enumerate_gluings(n)?;
    Ok(matchings.flat_map(move |g| {
        let pairs = g.pairs();
        (0..1usize << n).map(move |mask| {
            let flagged: Vec<_> = pairs
                .iter()
                .enumerate()
                .map(|(k, &(i, j))| {
                    let t = if mask >> k & 1 == 1 {
                        Twist::Twisted
                    } else {
                        Twist::Straight
                    };
                    (i, j, t)
                })
                .collect();
            Gluing::from_twisted_pairs(n, &flagged).expect("pairs come from a valid matching")
        })
    }))
}

/// `(2n - 1)!!`, the number of perfect matchings on `2n` points.
pub fn double_factorial_odd(n: usize) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

/// Colour of a vertex of a glued map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexColor {
    Black,
    White,
    /// Corners of both colours were identified; only reachable with twist flags.
    Mixed,
}

/// One map edge: the glued pair of boundary edges and its two endpoints
/// (indices into the map's vertex list).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub ends: [usize; 2],
    pub sides: (usize, usize),
}

/// The one-face map obtained from a gluing.
///
/// Vertices are stored in increasing order of their minimal corner, which is
/// also their public id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedMap {
    n: usize,
    corner_vertex: Vec<usize>,
    vertex_ids: Vec<usize>,
    colors: Vec<VertexColor>,
    degrees: Vec<usize>,
    edges: Vec<GraphEdge>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        // keep the smaller corner as root so roots are canonical
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

impl GluedMap {
    pub fn new(g: &Gluing) -> Self {
        Self::with_convention(g, ColorConvention::EvenBlack)
    }

    pub fn with_convention(g: &Gluing, convention: ColorConvention) -> Self {
        let corners = g.edge_count();
        let mut parent: Vec<usize> = (0..corners).collect();
        for (i, j) in g.pairs() {
            let (i1, j1) = ((i + 1) % corners, (j + 1) % corners);
            match g.twist(i) {
                Twist::Straight => {
                    union(&mut parent, i, j);
                    union(&mut parent, i1, j1);
                }
                Twist::Twisted => {
                    union(&mut parent, i, j1);
                    union(&mut parent, i1, j);
                }
            }
        }

        let mut corner_vertex = vec![0; corners];
        let mut vertex_ids = Vec::new();
        let mut index_of_root = vec![usize::MAX; corners];
        for (c, slot) in corner_vertex.iter_mut().enumerate() {
            let root = find(&mut parent, c);
            if index_of_root[root] == usize::MAX {
                index_of_root[root] = vertex_ids.len();
                vertex_ids.push(root);
            }
            *slot = index_of_root[root];
        }

        let v = vertex_ids.len();
        let mut colors: Vec<Option<VertexColor>> = vec![None; v];
        let mut degrees = vec![0; v];
        for (c, &idx) in corner_vertex.iter().enumerate() {
            degrees[idx] += 1;
            let here = match convention.corner_color(c) {
                CornerColor::Black => VertexColor::Black,
                CornerColor::White => VertexColor::White,
            };
            colors[idx] = Some(match colors[idx] {
                None => here,
                Some(prev) if prev == here => here,
                Some(_) => VertexColor::Mixed,
            });
        }

        let edges = g
            .pairs()
            .into_iter()
            .map(|(i, j)| GraphEdge {
                ends: [corner_vertex[i], corner_vertex[(i + 1) % corners]],
                sides: (i, j),
            })
            .collect();

        Self {
            n: g.n(),
            corner_vertex,
            vertex_ids,
            colors: colors.into_iter().map(Option::unwrap).collect(),
            degrees,
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    /// Vertex index (not id) of a corner.
    pub fn vertex_of(&self, corner: usize) -> usize {
        self.corner_vertex[corner]
    }

    /// Minimal corner of the vertex with the given index.
    pub fn vertex_id(&self, index: usize) -> usize {
        self.vertex_ids[index]
    }

    pub fn vertex_ids(&self) -> &[usize] {
        &self.vertex_ids
    }

    pub fn color(&self, index: usize) -> VertexColor {
        self.colors[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.degrees[index]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn euler_char(&self) -> i64 {
        self.vertex_count() as i64 - self.n as i64 + 1
    }

    pub fn doubled_genus(&self) -> u32 {
        (2 - self.euler_char()) as u32
    }

    pub fn is_bipartite(&self) -> bool {
        self.colors.iter().all(|&c| c != VertexColor::Mixed)
    }

    pub fn black_vertices(&self) -> Vec<usize> {
        self.vertices_colored(VertexColor::Black)
    }

    pub fn white_vertices(&self) -> Vec<usize> {
        self.vertices_colored(VertexColor::White)
    }

    pub fn black_count(&self) -> usize {
        self.colors
            .iter()
            .filter(|&&c| c == VertexColor::Black)
            .count()
    }

    pub fn white_count(&self) -> usize {
        self.colors
            .iter()
            .filter(|&&c| c == VertexColor::White)
            .count()
    }

    fn vertices_colored(&self, color: VertexColor) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.colors[v] == color)
            .collect()
    }

    /// Sorted (descending) degree sequence.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Convenience wrapper matching the polygon-level operation.
pub fn glue(spec: &PolygonSpec, g: &Gluing) -> Result<GluedMap> {
    if g.n() != spec.n() {
        return Err(usage(format!(
            "gluing has n = {} but the polygon has n = {}",
            g.n(),
            spec.n()
        )));
    }
    Ok(GluedMap::new(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gl(n: usize, pairs: &[(usize, usize)]) -> Gluing {
        Gluing::from_pairs(n, pairs).unwrap()
    }

    #[test]
    fn gluing_counts_are_double_factorials() {
        for n in 1..=6 {
            let count = enumerate_gluings(n).unwrap().count() as u128;
            assert_eq!(count, double_factorial_odd(n), "n = {n}");
        }
        assert_eq!(enumerate_gluings(6).unwrap().count(), 10395);
    }

    #[test]
    fn zero_is_a_usage_error() {
        assert!(enumerate_gluings(0).is_err());
        assert!(PolygonSpec::new(0).is_err());
    }

    #[test]
    fn enumeration_order_is_lowest_first() {
        let all: Vec<_> = enumerate_gluings(2).unwrap().map(|g| g.pairs()).collect();
        assert_eq!(
            all,
            vec![
                vec![(0, 1), (2, 3)],
                vec![(0, 2), (1, 3)],
                vec![(0, 3), (1, 2)],
            ]
        );
    }

    #[test]
    fn branches_partition_the_enumeration() {
        let n = 5;
        let whole: Vec<_> = enumerate_gluings(n).unwrap().collect();
        let mut joined = Vec::new();
        for p in 1..2 * n {
            joined.extend(Matchings::branch(n, p).unwrap());
        }
        assert_eq!(whole, joined);
    }

    #[test]
    fn twisted_counts() {
        assert_eq!(enumerate_twisted_gluings(1).unwrap().count(), 2);
        assert_eq!(enumerate_twisted_gluings(2).unwrap().count(), 12);
        assert_eq!(enumerate_twisted_gluings(3).unwrap().count(), 120);
    }

    #[test]
    fn digon() {
        let m = GluedMap::new(&gl(1, &[(0, 1)]));
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.black_count(), 1);
        assert_eq!(m.white_count(), 1);
        assert_eq!(m.euler_char(), 2);
        assert_eq!(m.doubled_genus(), 0);
    }

    #[test]
    fn projective_plane_square() {
        let m = GluedMap::new(&gl(2, &[(0, 2), (1, 3)]));
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.euler_char(), 1);
        assert_eq!(m.doubled_genus(), 1);
    }

    #[test]
    fn hexagon_genus_one() {
        let m = GluedMap::new(&gl(3, &[(0, 2), (1, 4), (3, 5)]));
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.euler_char(), 0);
        assert_eq!(m.doubled_genus(), 2);
        assert_eq!(m.vertex_ids(), &[0, 1]);
        for c in 0..6 {
            assert_eq!(m.vertex_of(c), c % 2);
        }
    }

    #[test]
    fn rotation_examples() {
        let g = gl(3, &[(0, 3), (1, 4), (2, 5)]);
        assert_eq!(g.rotate(1).unwrap(), g);
        let h = gl(3, &[(0, 2), (1, 4), (3, 5)]);
        assert_eq!(h.rotate(1).unwrap(), gl(3, &[(2, 4), (3, 0), (5, 1)]));
        assert_eq!(h.rotate(0).unwrap(), h);
        assert!(h.rotate(3).is_err());
    }

    #[test]
    fn rotations_compose() {
        for g in enumerate_gluings(4).unwrap() {
            for r in 0..4 {
                for s in 0..4 {
                    let twice = g.rotate(r).unwrap().rotate(s).unwrap();
                    assert_eq!(twice, g.rotate((r + s) % 4).unwrap());
                }
            }
        }
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert!(Gluing::from_pairs(2, &[(0, 1), (1, 2)]).is_err());
        assert!(Gluing::from_pairs(2, &[(0, 0), (1, 2)]).is_err());
        assert!(Gluing::from_pairs(2, &[(0, 1)]).is_err());
        assert!(Gluing::from_partners(vec![1, 0, 2]).is_err());
    }

    #[test]
    fn twisted_mixed_vertex() {
        // a single straight pair on the digon glues the black and white corner
        let g = Gluing::from_twisted_pairs(1, &[(0, 1, Twist::Straight)]).unwrap();
        let m = GluedMap::new(&g);
        assert!(!m.is_bipartite());
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.color(0), VertexColor::Mixed);
    }

    #[test]
    fn reflection_is_an_involution_and_keeps_colors() {
        for g in enumerate_gluings(4).unwrap() {
            let r = g.reflected();
            assert_eq!(r.reflected(), g);
            assert!(r.is_color_preserving());
        }
    }
}
