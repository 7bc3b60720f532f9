//! Reduced maps and their symmetry classes.
//!
//! A map is reduced when it has no vertex of degree 1 or 2 and no bridge.
//! General genus-one maps are produced from reduced bipartite ones by
//! subdividing edges with black/white pairs and hanging white leaves on black
//! vertices; this module undoes that construction, classifies gluings up to
//! rotation (and optionally reflection) of the polygon, and regenerates
//! decorated maps to check the orbit counting.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::binomial;

use crate::admissibility::enumerate_q;
use crate::error::{usage, Error, Result};
use crate::polygon::{enumerate_gluings, enumerate_twisted_gluings, GluedMap, Gluing, VertexColor};

/// Undirected multigraph with coloured vertices; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    colors: Vec<VertexColor>,
    edges: Vec<(usize, usize)>,
}

/// Isomorphism-invariant encoding of a small coloured multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalGraph {
    pub colors: Vec<VertexColor>,
    /// Upper-triangular edge multiplicities, loops on the diagonal.
    pub multiplicities: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleOrder {
    LeavesFirst,
    SmoothingFirst,
}

impl Multigraph {
    pub fn new(colors: Vec<VertexColor>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let v = colors.len();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= v || b >= v) {
            return Err(usage(format!(
                "edge ({a}, {b}) references a missing vertex"
            )));
        }
        Ok(Self { colors, edges })
    }

    pub fn from_map(map: &GluedMap) -> Self {
        Self {
            colors: (0..map.vertex_count()).map(|v| map.color(v)).collect(),
            edges: map.edges().iter().map(|e| (e.ends[0], e.ends[1])).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn colors(&self) -> &[VertexColor] {
        &self.colors
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.colors.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    fn connected_without(&self, skip: Option<usize>, a: usize, b: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.colors.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (k, &(x, y)) in self.edges.iter().enumerate() {
            if Some(k) != skip {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx] = ry;
            }
        }
        find(&mut parent, a) == find(&mut parent, b)
    }

    /// Indices of edges whose removal disconnects their endpoints. Loops are
    /// never bridges.
    pub fn bridges(&self) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|&(k, &(a, b))| a != b && !self.connected_without(Some(k), a, b))
            .map(|(k, _)| k)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        (1..self.colors.len()).all(|v| self.connected_without(None, 0, v))
    }

    /// Edge count once every degree-2 vertex is smoothed away, i.e. the number
    /// of maximal chains through degree-2 vertices.
    pub fn suppressed_edge_count(&self) -> usize {
        let twos = self.degrees().iter().filter(|&&d| d == 2).count();
        self.edges.len() - twos
    }

    fn compact(&self, alive: &[bool], edges: Vec<(usize, usize)>) -> Self {
        let mut index = vec![usize::MAX; alive.len()];
        let mut colors = Vec::new();
        for (v, &keep) in alive.iter().enumerate() {
            if keep {
                index[v] = colors.len();
                colors.push(self.colors[v]);
            }
        }
        Self {
            colors,
            edges: edges
                .into_iter()
                .map(|(a, b)| (index[a], index[b]))
                .collect(),
        }
    }

    /// Applies the two reduction rules until neither fires:
    /// delete a white leaf with its edge, and replace a path
    /// `x - b - w - y` through a degree-2 black `b` and degree-2 white `w`
    /// by a single edge `x - y`. Rules are scanned in the given order; the
    /// reverse order also scans vertices from the highest index down.
    pub fn reduce_with(&self, order: RuleOrder) -> Multigraph {
        let mut alive = vec![true; self.colors.len()];
        let mut edges: Vec<Option<(usize, usize)>> = self.edges.iter().copied().map(Some).collect();
        let vertex_order: Vec<usize> = match order {
            RuleOrder::LeavesFirst => (0..self.colors.len()).collect(),
            RuleOrder::SmoothingFirst => (0..self.colors.len()).rev().collect(),
        };

        let incident = |edges: &[Option<(usize, usize)>], v: usize| -> Vec<usize> {
            let mut out = Vec::new();
            for (k, e) in edges.iter().enumerate() {
                if let Some((a, b)) = *e {
                    if a == v {
                        out.push(k);
                    }
                    if b == v {
                        out.push(k);
                    }
                }
            }
            out
        };
        let other = |e: (usize, usize), v: usize| if e.0 == v { e.1 } else { e.0 };

        let try_leaf = |alive: &mut Vec<bool>, edges: &mut Vec<Option<(usize, usize)>>| -> bool {
            for &v in &vertex_order {
                if !alive[v] || self.colors[v] != VertexColor::White {
                    continue;
                }
                let inc = incident(edges, v);
                if inc.len() == 1 {
                    let e = edges[inc[0]].unwrap();
                    if e.0 == e.1 {
                        continue;
                    }
                    edges[inc[0]] = None;
                    alive[v] = false;
                    return true;
                }
            }
            false
        };

        let try_smooth = |alive: &mut Vec<bool>, edges: &mut Vec<Option<(usize, usize)>>| -> bool {
            for &b in &vertex_order {
                if !alive[b] || self.colors[b] != VertexColor::Black {
                    continue;
                }
                let inc_b = incident(edges, b);
                if inc_b.len() != 2 || inc_b[0] == inc_b[1] {
                    continue;
                }
                for (pos, &e) in inc_b.iter().enumerate() {
                    let w = other(edges[e].unwrap(), b);
                    if self.colors[w] != VertexColor::White {
                        continue;
                    }
                    let inc_w = incident(edges, w);
                    if inc_w.len() != 2 || inc_w[0] == inc_w[1] {
                        continue;
                    }
                    let to_x = inc_b[1 - pos];
                    let x = other(edges[to_x].unwrap(), b);
                    let to_y = if inc_w[0] == e { inc_w[1] } else { inc_w[0] };
                    let y = other(edges[to_y].unwrap(), w);
                    if x == w || y == b {
                        continue;
                    }
                    edges[e] = None;
                    edges[to_x] = None;
                    edges[to_y] = Some((x, y));
                    alive[b] = false;
                    alive[w] = false;
                    return true;
                }
            }
            false
        };

        loop {
            let fired = match order {
                RuleOrder::LeavesFirst => {
                    try_leaf(&mut alive, &mut edges) || try_smooth(&mut alive, &mut edges)
                }
                RuleOrder::SmoothingFirst => {
                    try_smooth(&mut alive, &mut edges) || try_leaf(&mut alive, &mut edges)
                }
            };
            if !fired {
                break;
            }
        }
        self.compact(&alive, edges.into_iter().flatten().collect())
    }

    /// Reduction in both rule orders; the canonical forms must agree.
    pub fn reduce(&self) -> Result<Multigraph> {
        let a = self.reduce_with(RuleOrder::LeavesFirst);
        let b = self.reduce_with(RuleOrder::SmoothingFirst);
        if a.canonical_form() != b.canonical_form() {
            return Err(Error::Consistency(
                "reduction rules are not confluent on this graph".into(),
            ));
        }
        Ok(a)
    }

    /// Canonical form by exhausting vertex orders that keep vertices sorted
    /// by (colour, degree). Intended for the handful of vertices left after
    /// reduction.
    pub fn canonical_form(&self) -> CanonicalGraph {
        let v = self.colors.len();
        let degrees = self.degrees();
        let mut mult = vec![vec![0usize; v]; v];
        for &(a, b) in &self.edges {
            mult[a][b] += 1;
            if a != b {
                mult[b][a] += 1;
            }
        }
        let mut order: Vec<usize> = (0..v).collect();
        order.sort_by_key(|&x| (self.colors[x], degrees[x]));
        // split into blocks of equal (colour, degree); permute inside blocks
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &x in &order {
            match blocks.last_mut() {
                Some(block)
                    if (self.colors[block[0]], degrees[block[0]])
                        == (self.colors[x], degrees[x]) =>
                {
                    block.push(x)
                }
                _ => blocks.push(vec![x]),
            }
        }
        let encode = |perm: &[usize]| -> Vec<usize> {
            let mut out = Vec::with_capacity(v * (v + 1) / 2);
            for i in 0..v {
                for j in i..v {
                    out.push(mult[perm[i]][perm[j]]);
                }
            }
            out
        };
        let mut best: Option<Vec<usize>> = None;
        let mut current = Vec::with_capacity(v);
        fn rec(
            blocks: &mut [Vec<usize>],
            idx: usize,
            current: &mut Vec<usize>,
            encode: &dyn Fn(&[usize]) -> Vec<usize>,
            best: &mut Option<Vec<usize>>,
        ) {
            if idx == blocks.len() {
                let code = encode(current);
                if best.as_ref().is_none_or(|b| code < *b) {
                    *best = Some(code);
                }
                return;
            }
            permute(blocks, idx, 0, current, encode, best);
        }
        fn permute(
            blocks: &mut [Vec<usize>],
            idx: usize,
            start: usize,
            current: &mut Vec<usize>,
            encode: &dyn Fn(&[usize]) -> Vec<usize>,
            best: &mut Option<Vec<usize>>,
        ) {
            let len = blocks[idx].len();
            if start == len {
                let saved = current.len();
                current.extend(blocks[idx].iter().copied());
                rec(blocks, idx + 1, current, encode, best);
                current.truncate(saved);
                return;
            }
            for i in start..len {
                blocks[idx].swap(start, i);
                permute(blocks, idx, start + 1, current, encode, best);
                blocks[idx].swap(start, i);
            }
        }
        rec(&mut blocks, 0, &mut current, &encode, &mut best);
        CanonicalGraph {
            colors: order.iter().map(|&x| self.colors[x]).collect(),
            multiplicities: best.unwrap_or_default(),
        }
    }
}

/// No vertex of degree 1 or 2 and no bridge.
pub fn is_reduced(map: &GluedMap) -> bool {
    let g = Multigraph::from_map(map);
    g.degrees().iter().all(|&d| d >= 3) && g.bridges().is_empty()
}

/// A reduced map made bipartite by the fewest degree-2 insertions: properly
/// coloured, no leaves, bridgeless, some vertex of degree >= 3, and no edge
/// between two degree-2 vertices.
pub fn is_reduced_bipartite(map: &GluedMap) -> bool {
    if !map.is_bipartite() {
        return false;
    }
    let g = Multigraph::from_map(map);
    let d = g.degrees();
    d.iter().all(|&x| x >= 2)
        && d.iter().any(|&x| x >= 3)
        && g.edges.iter().all(|&(a, b)| d[a] != 2 || d[b] != 2)
        && g.bridges().is_empty()
}

/// The reduced multigraph underlying a map.
pub fn reduce(map: &GluedMap) -> Result<Multigraph> {
    Multigraph::from_map(map).reduce()
}

/// Number of rotations `r in 0..n` (two corners per step) fixing `g`.
pub fn stabilizer_order(g: &Gluing) -> usize {
    (0..g.n()).filter(|&r| g.shifted(2 * r) == *g).count()
}

/// Symmetries of the polygon used to identify gluings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    /// Corners per rotation step: 2 keeps colours, 1 ignores them.
    pub step: usize,
    pub reflections: bool,
}

impl SymmetryGroup {
    /// Colour-preserving rotations, order `n`.
    pub const ROTATIONS: SymmetryGroup = SymmetryGroup {
        step: 2,
        reflections: false,
    };
    /// Full dihedral group of the uncoloured 2n-gon, order `4n`.
    pub const DIHEDRAL: SymmetryGroup = SymmetryGroup {
        step: 1,
        reflections: true,
    };

    pub fn order(&self, n: usize) -> usize {
        (2 * n / self.step) * if self.reflections { 2 } else { 1 }
    }

    pub fn images(&self, g: &Gluing) -> Vec<Gluing> {
        let len = g.edge_count();
        let mut out = Vec::with_capacity(self.order(g.n()));
        for shift in (0..len).step_by(self.step) {
            out.push(g.shifted(shift));
        }
        if self.reflections {
            let mirror = g.reflected();
            for shift in (0..len).step_by(self.step) {
                out.push(mirror.shifted(shift));
            }
        }
        out
    }
}

/// Which gluings a census keeps and how it identifies them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusFilter {
    pub doubled_genus: Option<u32>,
    /// Reduced maps (twisted universe) or reduced bipartite maps (coloured).
    pub reduced_only: bool,
    pub bipartite_only: bool,
    /// Keep only maps admitting at least one admissible colouring.
    pub contributing_only: bool,
    /// Enumerate all `(2n-1)!! 2^n` twisted gluings instead of matchings.
    pub twisted: bool,
    pub group: SymmetryGroup,
}

impl Default for CensusFilter {
    fn default() -> Self {
        Self {
            doubled_genus: None,
            reduced_only: false,
            bipartite_only: false,
            contributing_only: false,
            twisted: false,
            group: SymmetryGroup::ROTATIONS,
        }
    }
}

impl CensusFilter {
    /// Reduced genus-one maps with one face, colours ignored.
    pub fn reduced_genus_one() -> Self {
        Self {
            doubled_genus: Some(2),
            reduced_only: true,
            twisted: true,
            group: SymmetryGroup::DIHEDRAL,
            ..Self::default()
        }
    }

    /// Reduced bipartite genus-one maps.
    pub fn reduced_bipartite_genus_one(contributing_only: bool) -> Self {
        Self {
            doubled_genus: Some(2),
            reduced_only: true,
            bipartite_only: true,
            contributing_only,
            ..Self::default()
        }
    }
}

/// One orbit of gluings under the census symmetry group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMapClass {
    pub n: usize,
    pub representative: Gluing,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub group_order: usize,
    pub doubled_genus: u32,
    pub vertex_count: usize,
    pub degree_sequence: Vec<usize>,
    pub bipartite: bool,
    pub black_degrees: Vec<usize>,
    pub white_degrees: Vec<usize>,
    pub bridgeless: bool,
    /// Number of admissible colourings `q` (zero when not bipartite).
    pub admissible_q: usize,
}

impl ReducedMapClass {
    fn describe(n: usize, representative: Gluing, orbit_size: usize, group_order: usize) -> Self {
        let map = GluedMap::new(&representative);
        let graph = Multigraph::from_map(&map);
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        let bipartite = map.is_bipartite();
        let admissible_q = if bipartite {
            enumerate_q(&map).len()
        } else {
            0
        };
        Self {
            n,
            orbit_size,
            stabilizer_order: group_order / orbit_size,
            group_order,
            doubled_genus: map.doubled_genus(),
            vertex_count: map.vertex_count(),
            degree_sequence: map.degree_sequence(),
            bipartite,
            black_degrees: sorted(
                map.black_vertices()
                    .iter()
                    .map(|&v| map.degree(v))
                    .collect(),
            ),
            white_degrees: sorted(
                map.white_vertices()
                    .iter()
                    .map(|&v| map.degree(v))
                    .collect(),
            ),
            bridgeless: graph.bridges().is_empty(),
            admissible_q,
            representative,
        }
    }

    pub fn map(&self) -> GluedMap {
        GluedMap::new(&self.representative)
    }

    pub fn graph(&self) -> Multigraph {
        Multigraph::from_map(&self.map())
    }
}

fn keep(g: &Gluing, filter: &CensusFilter) -> bool {
    let map = GluedMap::new(g);
    if filter
        .doubled_genus
        .is_some_and(|dg| map.doubled_genus() != dg)
    {
        return false;
    }
    if filter.bipartite_only && !map.is_bipartite() {
        return false;
    }
    if filter.reduced_only {
        let ok = if filter.twisted {
            is_reduced(&map)
        } else {
            is_reduced_bipartite(&map)
        };
        if !ok {
            return false;
        }
    }
    if filter.contributing_only && (!map.is_bipartite() || enumerate_q(&map).is_empty()) {
        return false;
    }
    true
}

/// Qualifying gluings for one `n` (before orbit grouping).
pub fn qualifying_gluings(n: usize, filter: &CensusFilter) -> Result<BTreeSet<Gluing>> {
    let universe: Box<dyn Iterator<Item = Gluing>> = if filter.twisted {
        if n > 6 {
            return Err(usage("the twisted census is limited to n <= 6"));
        }
        Box::new(enumerate_twisted_gluings(n)?)
    } else {
        Box::new(enumerate_gluings(n)?)
    };
    Ok(universe.filter(|g| keep(g, filter)).collect())
}

/// Classes of qualifying gluings for one `n`, ordered by representative.
pub fn census_classes(n: usize, filter: &CensusFilter) -> Result<Vec<ReducedMapClass>> {
    if !filter.twisted && filter.group.step != 2 {
        return Err(usage(
            "matchings are only closed under colour-preserving rotations",
        ));
    }
    let items = qualifying_gluings(n, filter)?;
    let group_order = filter.group.order(n);
    let mut seen: BTreeSet<Gluing> = BTreeSet::new();
    let mut classes = Vec::new();
    for g in &items {
        if seen.contains(g) {
            continue;
        }
        let orbit: BTreeSet<Gluing> = filter.group.images(g).into_iter().collect();
        if !orbit.is_subset(&items) {
            return Err(Error::Consistency(format!(
                "census filter is not invariant under the symmetry group at {g}"
            )));
        }
        let representative = orbit.iter().next().unwrap().clone();
        classes.push(ReducedMapClass::describe(
            n,
            representative,
            orbit.len(),
            group_order,
        ));
        seen.extend(orbit);
    }
    Ok(classes)
}

/// Census over several values of `n`.
pub fn census_sweep(
    ns: impl IntoIterator<Item = usize>,
    filter: &CensusFilter,
) -> Result<Vec<ReducedMapClass>> {
    let mut out = Vec::new();
    for n in ns {
        out.extend(census_classes(n, filter)?);
    }
    Ok(out)
}

/// Ways to place `k` identical subdivision pairs on `m` edges:
/// `binomial(k + m - 1, m - 1)`.
pub fn decoration_count(k: usize, m: usize) -> u64 {
    if m == 0 {
        return u64::from(k == 0);
    }
    binomial((k + m - 1) as u64, (m - 1) as u64)
}

/// Every placement of `k` identical items on `m` edges, as the non-decreasing
/// list of chosen edge indices.
pub fn enumerate_placements(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, from: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for e in from..m {
            cur.push(e);
            rec(left - 1, e, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, 0, m, &mut Vec::new(), &mut out);
    out
}

fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    enumerate_placements(total, parts)
        .into_iter()
        .map(|placement| {
            let mut counts = vec![0; parts];
            for e in placement {
                counts[e] += 1;
            }
            counts
        })
        .collect()
}

/// Subdivides the map edge of pair `k` (in [`Gluing::pairs`] order) with
/// `per_pair[k]` black/white pairs. Only colour-preserving gluings.
pub fn subdivide_edges(g: &Gluing, per_pair: &[usize]) -> Result<Gluing> {
    if g.has_explicit_twists() {
        return Err(usage("decorations need a colour-preserving gluing"));
    }
    let pairs = g.pairs();
    if per_pair.len() != pairs.len() {
        return Err(usage("one subdivision count per map edge is required"));
    }
    let len = g.edge_count();
    let mut count_of_side = vec![0; len];
    for (&(i, j), &k) in pairs.iter().zip(per_pair) {
        count_of_side[i] = k;
        count_of_side[j] = k;
    }
    let mut offset = vec![0; len + 1];
    for s in 0..len {
        offset[s + 1] = offset[s] + 2 * count_of_side[s] + 1;
    }
    let mut partner = vec![0; offset[len]];
    for s in 0..len {
        let t = g.partner(s);
        let pieces = 2 * count_of_side[s] + 1;
        for l in 0..pieces {
            // same-parity pairs run in the same direction, others reversed
            partner[offset[s] + l] = if (s + t).is_multiple_of(2) {
                offset[t] + l
            } else {
                offset[t] + (pieces - 1 - l)
            };
        }
    }
    Gluing::from_partners(partner)
}

/// Hangs `per_black_corner[c]` white leaves in the corner `2c` (a black
/// corner under the default colouring).
pub fn attach_white_leaves(g: &Gluing, per_black_corner: &[usize]) -> Result<Gluing> {
    if g.has_explicit_twists() {
        return Err(usage("decorations need a colour-preserving gluing"));
    }
    let len = g.edge_count();
    if per_black_corner.len() != len / 2 {
        return Err(usage("one leaf count per black corner is required"));
    }
    let total: usize = len + 2 * per_black_corner.iter().sum::<usize>();
    let mut partner = vec![0; total];
    let mut position = vec![0; len];
    let mut pos = 0;
    for c in 0..len {
        if c % 2 == 0 {
            for _ in 0..per_black_corner[c / 2] {
                partner[pos] = pos + 1;
                partner[pos + 1] = pos;
                pos += 2;
            }
        }
        position[c] = pos;
        pos += 1;
    }
    for c in 0..len {
        partner[position[c]] = position[g.partner(c)];
    }
    Gluing::from_partners(partner)
}

/// Outcome of regenerating decorated maps from one base class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecorationReport {
    pub base_n: usize,
    pub base_stabilizer: usize,
    pub target_black: usize,
    pub target_white: usize,
    pub added_pairs: Option<usize>,
    pub added_leaves: Option<usize>,
    pub decorated_n: usize,
    /// Distinct decorated gluings with the base labelling fixed.
    pub decorations: u64,
    /// The same number predicted by the placement formulas.
    pub predicted_decorations: u64,
    /// Distinct labelled maps after all rotations.
    pub labeled_maps: u64,
    pub passed: bool,
}

impl DecorationReport {
    pub fn formula_matches(&self) -> bool {
        self.decorations == self.predicted_decorations
    }
}

/// Builds every decorated map with `target_black` black and `target_white`
/// white vertices from `base`, closes under rotation, and checks that the
/// number of labelled maps is `decorations * n / Stab(base)`.
pub fn verify_decorations(
    base: &ReducedMapClass,
    target_black: usize,
    target_white: usize,
) -> Result<DecorationReport> {
    let g = &base.representative;
    if g.has_explicit_twists() || !base.bipartite {
        return Err(usage(
            "the base of a decoration must be a bipartite matching",
        ));
    }
    let map = GluedMap::new(g);
    let (b0, w0) = (map.black_count(), map.white_count());
    let base_stabilizer = stabilizer_order(g);
    let unsatisfiable = DecorationReport {
        base_n: base.n,
        base_stabilizer,
        target_black,
        target_white,
        added_pairs: None,
        added_leaves: None,
        decorated_n: 0,
        decorations: 0,
        predicted_decorations: 0,
        labeled_maps: 0,
        passed: true,
    };
    if target_black < b0 {
        return Ok(unsatisfiable);
    }
    let k = target_black - b0;
    if target_white < w0 + k {
        return Ok(unsatisfiable);
    }
    let leaves = target_white - w0 - k;

    let mut decorated: BTreeSet<Gluing> = BTreeSet::new();
    for per_pair in weak_compositions(k, base.n) {
        let subdivided = subdivide_edges(g, &per_pair)?;
        for per_corner in weak_compositions(leaves, subdivided.n()) {
            decorated.insert(attach_white_leaves(&subdivided, &per_corner)?);
        }
    }
    let decorated_n = base.n + 2 * k + leaves;
    let mut labeled: BTreeSet<Gluing> = BTreeSet::new();
    for d in &decorated {
        for r in 0..decorated_n {
            labeled.insert(d.shifted(2 * r));
        }
    }

    let chains = Multigraph::from_map(&map).suppressed_edge_count();
    let predicted =
        decoration_count(k, chains) * binomial((leaves + base.n + 2 * k - 1) as u64, leaves as u64);
    let decorations = decorated.len() as u64;
    let labeled_maps = labeled.len() as u64;
    Ok(DecorationReport {
        added_pairs: Some(k),
        added_leaves: Some(leaves),
        decorated_n,
        decorations,
        predicted_decorations: predicted,
        labeled_maps,
        passed: labeled_maps * base_stabilizer as u64 == decorations * decorated_n as u64,
        ..unsatisfiable
    })
}

/// Classes of reduced bipartite genus-one maps (all `n`, which is at most 6).
pub fn reduced_bipartite_genus_one(contributing_only: bool) -> Result<Vec<ReducedMapClass>> {
    census_sweep(
        1..=6,
        &CensusFilter::reduced_bipartite_genus_one(contributing_only),
    )
}

/// Classes of reduced genus-one maps ignoring colours (`n <= 3`).
pub fn reduced_genus_one() -> Result<Vec<ReducedMapClass>> {
    census_sweep(1..=3, &CensusFilter::reduced_genus_one())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionReport {
    pub checked: u64,
    /// Contributing gluings grouped by the class they reduce to.
    pub per_class: BTreeMap<usize, u64>,
    pub unmatched: Vec<Gluing>,
}

/// Every genus-one gluing with an admissible colouring reduces to the graph of
/// a contributing reduced bipartite class.
pub fn check_reductions(max_n: usize) -> Result<ReductionReport> {
    let classes = reduced_bipartite_genus_one(true)?;
    let targets: Vec<CanonicalGraph> = classes.iter().map(|c| c.graph().canonical_form()).collect();
    let mut report = ReductionReport::default();
    for n in 1..=max_n {
        for g in enumerate_gluings(n)? {
            let map = GluedMap::new(&g);
            if map.doubled_genus() != 2 || enumerate_q(&map).is_empty() {
                continue;
            }
            report.checked += 1;
            let reduced = reduce(&map)?;
            let reduced_again = reduced.reduce()?;
            if reduced_again.canonical_form() != reduced.canonical_form() {
                return Err(Error::Consistency(format!(
                    "reduction is not idempotent at {g}"
                )));
            }
            let code = reduced.canonical_form();
            match targets.iter().position(|t| *t == code) {
                Some(i) => *report.per_class.entry(i).or_default() += 1,
                None => report.unmatched.push(g),
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::Twist;

    fn gl(n: usize, pairs: &[(usize, usize)]) -> Gluing {
        Gluing::from_pairs(n, pairs).unwrap()
    }

    fn triple_edge() -> Gluing {
        gl(3, &[(0, 3), (1, 4), (2, 5)])
    }

    #[test]
    fn reduced_examples() {
        let one_vertex =
            Gluing::from_twisted_pairs(2, &[(0, 2, Twist::Twisted), (1, 3, Twist::Twisted)])
                .unwrap();
        let m = GluedMap::new(&one_vertex);
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.degree(0), 4);
        assert!(is_reduced(&m));

        assert!(!is_reduced(&GluedMap::new(&gl(1, &[(0, 1)]))));

        let theta = GluedMap::new(&triple_edge());
        assert_eq!(theta.degrees(), &[3, 3]);
        assert!(is_reduced(&theta));
        assert!(is_reduced_bipartite(&theta));
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(stabilizer_order(&gl(2, &[(0, 2), (1, 3)])), 2);
        assert_eq!(stabilizer_order(&triple_edge()), 3);
        assert_eq!(stabilizer_order(&gl(3, &[(0, 2), (1, 4), (3, 5)])), 1);
    }

    #[test]
    fn reduce_examples() {
        let theta = GluedMap::new(&triple_edge());
        let code = Multigraph::from_map(&theta).canonical_form();
        assert_eq!(reduce(&theta).unwrap().canonical_form(), code);

        let with_leaf = attach_white_leaves(&triple_edge(), &[1, 0, 0]).unwrap();
        let m = GluedMap::new(&with_leaf);
        assert_eq!(m.n(), 4);
        assert_eq!(m.white_count(), 2);
        assert_eq!(reduce(&m).unwrap().canonical_form(), code);

        let subdivided = subdivide_edges(&triple_edge(), &[1, 0, 0]).unwrap();
        let m = GluedMap::new(&subdivided);
        assert_eq!(m.n(), 5);
        assert_eq!(m.doubled_genus(), 2);
        assert_eq!(reduce(&m).unwrap().canonical_form(), code);
    }

    #[test]
    fn decorations_keep_colours_and_genus() {
        let base = gl(3, &[(0, 2), (1, 4), (3, 5)]);
        for per_pair in weak_compositions(2, 3) {
            let s = subdivide_edges(&base, &per_pair).unwrap();
            let m = GluedMap::new(&s);
            assert!(m.is_bipartite());
            assert_eq!(m.doubled_genus(), 2);
            assert_eq!(m.black_count(), 3);
        }
    }

    #[test]
    fn placements() {
        assert_eq!(decoration_count(0, 4), 1);
        assert_eq!(decoration_count(2, 3), 6);
        assert_eq!(decoration_count(1, 2), 2);
        assert_eq!(enumerate_placements(1, 2), vec![vec![0], vec![1]]);
        for k in 0..=5 {
            for m in 1..=4 {
                assert_eq!(
                    enumerate_placements(k, m).len() as u64,
                    decoration_count(k, m)
                );
            }
        }
    }

    #[test]
    fn hexagon_genus_one_census() {
        let filter = CensusFilter {
            doubled_genus: Some(2),
            bipartite_only: true,
            ..CensusFilter::default()
        };
        let classes = census_classes(3, &filter).unwrap();
        let shape: Vec<(usize, usize)> = classes
            .iter()
            .map(|c| (c.orbit_size, c.stabilizer_order))
            .collect();
        assert_eq!(shape, vec![(3, 1), (1, 3)]);
        assert!(census_classes(1, &filter).unwrap().len() <= 1);
    }

    #[test]
    fn reduced_class_counts() {
        assert_eq!(reduced_genus_one().unwrap().len(), 5);
        assert_eq!(reduced_bipartite_genus_one(true).unwrap().len(), 7);
        assert_eq!(reduced_bipartite_genus_one(false).unwrap().len(), 12);
    }

    #[test]
    fn decorations_of_triple_edge() {
        let filter = CensusFilter::reduced_bipartite_genus_one(true);
        let classes = census_classes(3, &filter).unwrap();
        let symmetric = classes.iter().find(|c| c.stabilizer_order == 3).unwrap();
        let r = verify_decorations(symmetric, 1, 1).unwrap();
        assert_eq!(r.decorations, 1);
        assert_eq!(r.labeled_maps, 1);
        assert!(r.passed);

        let free = classes.iter().find(|c| c.stabilizer_order == 1).unwrap();
        let r = verify_decorations(free, 1, 1).unwrap();
        assert_eq!(r.labeled_maps, 3);
        assert!(r.passed);

        let r = verify_decorations(free, 0, 5).unwrap();
        assert_eq!(r.added_pairs, None);
        assert_eq!((r.decorations, r.labeled_maps), (0, 0));
        assert!(r.passed);
    }

    #[test]
    fn canonical_form_ignores_labels() {
        let a = Multigraph::new(
            vec![VertexColor::Black, VertexColor::White, VertexColor::White],
            vec![(0, 1), (0, 1), (0, 2)],
        )
        .unwrap();
        let b = Multigraph::new(
            vec![VertexColor::White, VertexColor::White, VertexColor::Black],
            vec![(2, 0), (1, 2), (2, 1)],
        )
        .unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        assert_eq!(a.bridges(), vec![2]);
    }
}
