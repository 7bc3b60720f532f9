use proptest::prelude::*;
use zkerov::census::{attach_white_leaves, reduce, subdivide_edges};
use zkerov::{
    enumerate_q, stabilizer_order, BipartiteGraph, ColorConvention, GluedMap, Gluing, Partition,
    Twist, VertexColor,
};

fn matching(max_n: usize) -> impl Strategy<Value = Gluing> {
    (1..=max_n).prop_flat_map(|n| {
        Just((0..2 * n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|sides| {
                let mut partner = vec![0; sides.len()];
                for pair in sides.chunks(2) {
                    partner[pair[0]] = pair[1];
                    partner[pair[1]] = pair[0];
                }
                Gluing::from_partners(partner).unwrap()
            })
    })
}

fn monomials(map: &GluedMap) -> Vec<Partition> {
    let mut out: Vec<Partition> = enumerate_q(map).into_iter().map(|(_, m)| m).collect();
    out.sort();
    out
}

fn black_degrees(map: &GluedMap) -> Vec<usize> {
    let mut d: Vec<usize> = map
        .black_vertices()
        .iter()
        .map(|&v| map.degree(v))
        .collect();
    d.sort_unstable();
    d
}

/// Adds edges from black 0 until every vertex is reached, since graphs of
/// one-face maps are connected. Whites are numbered after the blacks here.
fn connect(b: usize, w: usize, mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    let mut parent: Vec<usize> = (0..b + w).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(x, y) in &edges {
        let (rx, ry) = (root(&mut parent, x), root(&mut parent, b + y));
        parent[rx] = ry;
    }
    for v in 1..b + w {
        if root(&mut parent, v) != root(&mut parent, 0) {
            let link = if v < b { (v, 0) } else { (0, v - b) };
            let (rx, ry) = (root(&mut parent, link.0), root(&mut parent, b + link.1));
            parent[rx] = ry;
            edges.push(link);
        }
    }
    edges
}

fn bipartite_graph() -> impl Strategy<Value = (BipartiteGraph, Vec<u32>, (usize, usize))> {
    (1usize..=4, 1usize..=7).prop_flat_map(|(b, w)| {
        (
            proptest::collection::vec((0..b, 0..w), 1..12),
            proptest::collection::vec(2u32..=4, b),
            (0..b, 0..w),
        )
            .prop_map(move |(edges, q, extra)| {
                (
                    BipartiteGraph::new(b, w, connect(b, w, edges)).unwrap(),
                    q,
                    extra,
                )
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rotation_preserves_the_map(g in matching(6), r in 0usize..6) {
        let rotated = g.rotate(r % g.n()).unwrap();
        let (a, b) = (GluedMap::new(&g), GluedMap::new(&rotated));
        prop_assert_eq!(a.doubled_genus(), b.doubled_genus());
        prop_assert_eq!(a.degree_sequence(), b.degree_sequence());
        prop_assert_eq!(black_degrees(&a), black_degrees(&b));
        prop_assert_eq!(monomials(&a), monomials(&b));
        prop_assert_eq!(stabilizer_order(&g), stabilizer_order(&rotated));
        prop_assert_eq!(g.n() % stabilizer_order(&g), 0);
    }

    #[test]
    fn colour_swap_is_a_one_corner_shift(g in matching(6)) {
        let swapped = GluedMap::with_convention(&g, ColorConvention::OddBlack);
        let shifted = GluedMap::new(&g.shifted(1));
        prop_assert_eq!(swapped.black_count(), shifted.black_count());
        prop_assert_eq!(swapped.white_count(), shifted.white_count());
        prop_assert_eq!(black_degrees(&swapped), black_degrees(&shifted));
        prop_assert_eq!(monomials(&swapped), monomials(&shifted));
    }

    #[test]
    fn matchings_are_bipartite_with_euler_relation(g in matching(7)) {
        let m = GluedMap::new(&g);
        prop_assert!(m.is_bipartite());
        prop_assert!((0..m.vertex_count()).all(|v| m.color(v) != VertexColor::Mixed));
        prop_assert_eq!(m.euler_char(), m.vertex_count() as i64 - g.n() as i64 + 1);
        prop_assert_eq!(m.degrees().iter().sum::<usize>(), 2 * g.n());
    }

    #[test]
    fn explicit_colour_preserving_twists_change_nothing(g in matching(6)) {
        let pairs: Vec<(usize, usize, Twist)> = g
            .pairs()
            .into_iter()
            .map(|(i, j)| (i, j, Twist::color_preserving(i, j)))
            .collect();
        let explicit = Gluing::from_twisted_pairs(g.n(), &pairs).unwrap();
        prop_assert!(explicit.is_color_preserving());
        let (a, b) = (GluedMap::new(&g), GluedMap::new(&explicit));
        prop_assert_eq!(a.vertex_ids(), b.vertex_ids());
        prop_assert_eq!(a.degrees(), b.degrees());
    }

    #[test]
    fn hall_condition_survives_added_edges((graph, q, extra) in bipartite_graph()) {
        let mut edges = graph.edges().to_vec();
        edges.push(extra);
        let bigger = BipartiteGraph::new(graph.black_count(), graph.white_count(), edges).unwrap();
        if graph.hall_condition(&q).unwrap() {
            prop_assert!(bigger.hall_condition(&q).unwrap());
        }
    }

    #[test]
    fn oracles_agree_on_random_graphs((graph, q, _) in bipartite_graph()) {
        let demand: u32 = q.iter().map(|c| c - 1).sum();
        if demand as usize == graph.white_count() {
            prop_assert_eq!(
                graph.hall_condition(&q).unwrap(),
                graph.orientation_walk_condition(&q).unwrap()
            );
        }
    }

    #[test]
    fn decorations_reduce_back(
        pick in 0usize..2,
        per_pair in proptest::collection::vec(0usize..2, 3),
        leaves in proptest::collection::vec(0usize..2, 3),
    ) {
        let base = [
            Gluing::from_pairs(3, &[(0, 3), (1, 4), (2, 5)]).unwrap(),
            Gluing::from_pairs(3, &[(0, 2), (1, 4), (3, 5)]).unwrap(),
        ][pick].clone();
        let target = reduce(&GluedMap::new(&base)).unwrap().canonical_form();
        let sub = subdivide_edges(&base, &per_pair).unwrap();
        let mut per_corner = vec![0; sub.n()];
        for (slot, &l) in per_corner.iter_mut().zip(&leaves) {
            *slot = l;
        }
        let decorated = attach_white_leaves(&sub, &per_corner).unwrap();
        let map = GluedMap::new(&decorated);
        prop_assert_eq!(map.doubled_genus(), 2);
        prop_assert!(!enumerate_q(&map).is_empty());
        prop_assert_eq!(reduce(&map).unwrap().canonical_form(), target);
    }

    #[test]
    fn partition_text_round_trip(parts in proptest::collection::vec(2u32..9, 0..6)) {
        let mu = Partition::new(parts).unwrap();
        let text = mu.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        if !mu.is_empty() {
            prop_assert_eq!(text.parse::<Partition>().unwrap(), mu.clone());
        }
        prop_assert!(mu.parts().windows(2).all(|w| w[0] >= w[1]));
    }
}
