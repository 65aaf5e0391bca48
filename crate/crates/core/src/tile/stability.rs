//! Binding graphs and τ-stability via global minimum cut.

use super::{Assembly, Side, TileError, TileSystem};
use crate::lattice::Point;
use std::collections::BTreeMap;

/// One adjacency between occupied cells, weighted by the strength of the
/// abutting glue pair. Zero-weight edges are kept: they carry no strength
/// but record that the cells touch.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BindingEdge {
    pub a: Point,
    pub b: Point,
    pub weight: u32,
}

/// The weighted grid graph induced by an assembly: vertices are occupied
/// cells (sorted), one edge per unordered adjacent pair (sorted, `a < b`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BindingGraph {
    pub vertices: Vec<Point>,
    pub edges: Vec<BindingEdge>,
}

/// Builds the binding graph of `a` under `sys`'s glues. Every placed name
/// must name a tile type of `sys`.
pub fn binding_graph(a: &Assembly, sys: &TileSystem) -> Result<BindingGraph, TileError> {
    let mut vertices = Vec::with_capacity(a.len());
    let mut edges = Vec::new();
    for (p, name) in a.tiles() {
        let tile = sys
            .tile(name)
            .ok_or_else(|| TileError::UnknownTile(name.to_string()))?;
        vertices.push(p);
        // East and north neighbours cover each adjacent pair exactly once.
        for side in [Side::East, Side::North] {
            let q = p + side.offset();
            if let Some(other_name) = a.get(&q) {
                let other = sys
                    .tile(other_name)
                    .ok_or_else(|| TileError::UnknownTile(other_name.to_string()))?;
                let weight = sys.strength(tile.glue(side), other.glue(side.opposite()));
                edges.push(BindingEdge { a: p, b: q, weight });
            }
        }
    }
    Ok(BindingGraph { vertices, edges })
}

/// The weight of a global minimum cut (Stoer–Wagner), or `None` for graphs
/// with fewer than two vertices, which admit no cut at all.
pub fn min_cut_weight(g: &BindingGraph) -> Option<u64> {
    let n = g.vertices.len();
    if n < 2 {
        return None;
    }
    let index: BTreeMap<Point, usize> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i))
        .collect();
    let mut w = vec![vec![0u64; n]; n];
    for e in &g.edges {
        let (i, j) = (index[&e.a], index[&e.b]);
        w[i][j] += u64::from(e.weight);
        w[j][i] += u64::from(e.weight);
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    while active.len() > 1 {
        let m = active.len();
        // Maximum-adjacency order; the last vertex's connectivity to the
        // rest is a cut-of-phase, and the overall minimum over phases is
        // the global minimum cut.
        let mut in_a = vec![false; m];
        let mut wsum = vec![0u64; m];
        let mut prev = 0usize;
        let mut last = 0usize;
        for step in 0..m {
            let mut pick = usize::MAX;
            for i in 0..m {
                if !in_a[i] && (pick == usize::MAX || wsum[i] > wsum[pick]) {
                    pick = i;
                }
            }
            in_a[pick] = true;
            prev = last;
            last = pick;
            if step == m - 1 {
                best = best.min(wsum[pick]);
            }
            for i in 0..m {
                if !in_a[i] {
                    wsum[i] += w[active[pick]][active[i]];
                }
            }
        }
        // Contract the last two vertices of the phase.
        let (vl, vp) = (active[last], active[prev]);
        for i in 0..n {
            if i != vp {
                let delta = w[vl][i];
                if delta != 0 {
                    w[vp][i] += delta;
                    w[i][vp] += delta;
                }
            }
        }
        active.remove(last);
    }
    Some(best)
}

/// Reference minimum cut by enumerating every 2-partition of the vertices;
/// exponential, intended as an oracle for small graphs only.
pub fn exhaustive_min_cut(g: &BindingGraph) -> Option<u64> {
    let n = g.vertices.len();
    if n < 2 {
        return None;
    }
    assert!(n <= 24, "exhaustive cut enumeration is 2^(n-1); got n={n}");
    let index: BTreeMap<Point, usize> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, p)| (*p, i))
        .collect();
    let mut best = u64::MAX;
    // Fix vertex 0 on one side; every proper 2-partition appears once.
    for mask in 0..(1u64 << (n - 1)) {
        let side_of = |i: usize| -> bool {
            if i == 0 {
                true
            } else {
                mask & (1 << (i - 1)) != 0
            }
        };
        if (1..n).all(side_of) {
            continue; // not a proper partition
        }
        let mut cut = 0u64;
        for e in &g.edges {
            if side_of(index[&e.a]) != side_of(index[&e.b]) {
                cut += u64::from(e.weight);
            }
        }
        best = best.min(cut);
    }
    Some(best)
}

/// Whether every cut of the binding graph carries strength at least τ.
/// Single-tile assemblies have no cut and are stable by definition.
pub fn is_stable(a: &Assembly, sys: &TileSystem) -> Result<bool, TileError> {
    let g = binding_graph(a, sys)?;
    Ok(match min_cut_weight(&g) {
        None => true,
        Some(cut) => cut >= u64::from(sys.temperature()),
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures;
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn single_tile_has_no_edges_and_is_stable() {
        let sys = fixtures::row_system();
        let a = fixtures::row_assembly(1);
        let g = binding_graph(&a, &sys).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());
        assert_eq!(min_cut_weight(&g), None);
        assert!(is_stable(&a, &sys).unwrap());
    }

    #[test]
    fn row_bond_weight_and_stability_track_temperature() {
        let a = fixtures::row_assembly(2);
        let warm = fixtures::row_system(); // τ=1, strength-1 bond
        let g = binding_graph(&a, &warm).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].weight, 1);
        assert!(is_stable(&a, &warm).unwrap());
        let cold = fixtures::cold_system(); // same tile geometry, τ=2
        let mut map = BTreeMap::new();
        map.insert(crate::lattice::Point::new(0, 0), "t".to_string());
        map.insert(crate::lattice::Point::new(1, 0), "t".to_string());
        let b = Assembly::new(map).unwrap();
        assert!(!is_stable(&b, &cold).unwrap());
    }

    #[test]
    fn mismatched_glues_give_a_zero_weight_edge() {
        let sys = fixtures::staircase_system();
        let mut map = BTreeMap::new();
        map.insert(crate::lattice::Point::new(0, 0), "A".to_string());
        map.insert(crate::lattice::Point::new(1, 0), "C".to_string());
        let a = Assembly::new(map).unwrap();
        let g = binding_graph(&a, &sys).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.edges[0].weight, 0);
        assert_eq!(min_cut_weight(&g), Some(0));
        assert!(!is_stable(&a, &sys).unwrap());
    }

    #[test]
    fn unknown_tile_names_are_rejected() {
        let sys = fixtures::row_system();
        let a = Assembly::singleton(crate::lattice::Point::new(0, 0), "ghost");
        assert_eq!(
            binding_graph(&a, &sys),
            Err(TileError::UnknownTile("ghost".into()))
        );
    }

    #[test]
    fn quad_square_min_cut_is_the_double_vertical_bond() {
        let sys = fixtures::quad_system();
        let mut map = BTreeMap::new();
        map.insert(crate::lattice::Point::new(0, 1), "NW".to_string());
        map.insert(crate::lattice::Point::new(1, 1), "NE".to_string());
        map.insert(crate::lattice::Point::new(0, 0), "SW".to_string());
        map.insert(crate::lattice::Point::new(1, 0), "SE".to_string());
        let square = Assembly::new(map).unwrap();
        let g = binding_graph(&square, &sys).unwrap();
        assert_eq!(g.edges.len(), 4);
        assert_eq!(min_cut_weight(&g), Some(2));
        assert!(is_stable(&square, &sys).unwrap());
    }

    #[test]
    fn staircase_seed_is_stable_at_two() {
        let sys = fixtures::staircase_system();
        let seed = fixtures::staircase_seed();
        let g = binding_graph(&seed, &sys).unwrap();
        assert_eq!(g.edges.len(), 4);
        assert!(g.edges.iter().all(|e| e.weight == 2));
        assert_eq!(min_cut_weight(&g), Some(2));
        assert!(is_stable(&seed, &sys).unwrap());
    }

    #[test]
    fn stoer_wagner_matches_exhaustive_cuts_on_fixture_graphs() {
        let sys = fixtures::quad_system();
        let stair = fixtures::staircase_system();
        let cases: Vec<BindingGraph> = vec![
            binding_graph(&fixtures::row_assembly(5), &fixtures::row_system()).unwrap(),
            binding_graph(&fixtures::staircase_seed(), &stair).unwrap(),
            {
                let mut map = BTreeMap::new();
                map.insert(crate::lattice::Point::new(0, 1), "NW".to_string());
                map.insert(crate::lattice::Point::new(1, 1), "NE".to_string());
                map.insert(crate::lattice::Point::new(0, 0), "SW".to_string());
                map.insert(crate::lattice::Point::new(1, 0), "SE".to_string());
                binding_graph(&Assembly::new(map).unwrap(), &sys).unwrap()
            },
        ];
        for g in cases {
            assert_eq!(min_cut_weight(&g), exhaustive_min_cut(&g));
        }
    }
}
