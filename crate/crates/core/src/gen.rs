//! Seeded random instance generators for stress tests: self-avoiding
//! lattice walks (free or anchored at both ends), curve systems with the
//! cyclic endpoint condition built in, and random tile systems with random
//! connected assemblies. All functions are deterministic given the RNG.

use crate::curves::{rat_i, CurveSystem, PolyChain, RPoint, RVector};
use crate::lattice::{Point, Vector};
use crate::tile::{Assembly, Glue, TileSystem, TileType};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

const DIRS: [Vector; 4] = [
    Vector::new(0, 1),
    Vector::new(1, 0),
    Vector::new(0, -1),
    Vector::new(-1, 0),
];

fn extend_saw<R: Rng + ?Sized>(
    rng: &mut R,
    path: &mut Vec<Point>,
    seen: &mut BTreeSet<Point>,
    steps: usize,
) -> bool {
    if path.len() == steps + 1 {
        return true;
    }
    let mut dirs = DIRS;
    dirs.shuffle(rng);
    for d in dirs {
        let q = *path.last().unwrap() + d;
        if seen.insert(q) {
            path.push(q);
            if extend_saw(rng, path, seen, steps) {
                return true;
            }
            path.pop();
            seen.remove(&q);
        }
    }
    false
}

/// A uniform-ish self-avoiding walk of exactly `steps` unit steps from the
/// origin, found by randomized depth-first search with backtracking (so it
/// always succeeds, unlike naive rejection).
pub fn random_saw<R: Rng + ?Sized>(rng: &mut R, steps: usize) -> Vec<Point> {
    let start = Point::new(0, 0);
    let mut path = vec![start];
    let mut seen = BTreeSet::from([start]);
    let ok = extend_saw(rng, &mut path, &mut seen, steps);
    debug_assert!(ok, "an unbounded walk can always continue");
    path
}

struct BetweenSearch<'a, R: ?Sized> {
    rng: &'a mut R,
    end: Point,
    min: Point,
    max: Point,
    max_len: usize,
    budget: usize,
}

impl<R: Rng + ?Sized> BetweenSearch<'_, R> {
    fn dfs(&mut self, path: &mut Vec<Point>, seen: &mut BTreeSet<Point>) -> bool {
        let last = *path.last().unwrap();
        let remaining = ((last.x - self.end.x).abs() + (last.y - self.end.y).abs()) as usize;
        // Any completion needs at least `remaining` further vertices, so
        // branches that can no longer fit under the length cap are dead;
        // cutting them here keeps the walk from wandering off and
        // backtracking combinatorially.
        if self.budget == 0 || path.len() + remaining > self.max_len + 1 {
            return false;
        }
        self.budget -= 1;
        let mut dirs = DIRS;
        dirs.shuffle(self.rng);
        // Half of the expansions prefer steps that close in on the end (the
        // stable sort keeps the shuffled order as a random tie-break), which
        // drifts the walk toward its target; the other half keep it
        // meandering freely.
        if self.rng.gen_bool(0.5) {
            dirs.sort_by_key(|d| {
                let q = last + *d;
                (q.x - self.end.x).abs() + (q.y - self.end.y).abs()
            });
        }
        for d in dirs {
            let q = last + d;
            if q == self.end {
                path.push(q);
                return true;
            }
            let inside = q.x >= self.min.x
                && q.x <= self.max.x
                && q.y >= self.min.y
                && q.y <= self.max.y;
            if inside && seen.insert(q) {
                path.push(q);
                if self.dfs(path, seen) {
                    return true;
                }
                path.pop();
                seen.remove(&q);
            }
        }
        false
    }
}

/// A self-avoiding walk from `start` to `end` (distinct), staying within
/// the bounding box of the two endpoints inflated by `margin` and using at
/// most `max_len` steps. `None` when the randomized search gives up; the
/// caller retries with fresh randomness.
pub fn random_saw_between<R: Rng + ?Sized>(
    rng: &mut R,
    start: Point,
    end: Point,
    margin: i64,
    max_len: usize,
) -> Option<Vec<Point>> {
    if start == end {
        return None;
    }
    let min = Point::new(start.x.min(end.x) - margin, start.y.min(end.y) - margin);
    let max = Point::new(start.x.max(end.x) + margin, start.y.max(end.y) + margin);
    for _ in 0..8 {
        let mut search = BetweenSearch {
            rng,
            end,
            min,
            max,
            max_len,
            budget: 20_000,
        };
        let mut path = vec![start];
        let mut seen = BTreeSet::from([start]);
        if search.dfs(&mut path, &mut seen) {
            return Some(path);
        }
    }
    None
}

/// A random simple chain: a self-avoiding walk of `steps` unit steps with
/// collinear runs merged.
pub fn random_chain<R: Rng + ?Sized>(rng: &mut R, steps: usize) -> PolyChain {
    PolyChain::from_lattice_points(&random_saw(rng, steps))
        .expect("self-avoiding walks are simple chains")
}

/// A uniformly random nonzero lattice vector with both coordinates in
/// `[-max_abs, max_abs]`.
pub fn random_lattice_vector<R: Rng + ?Sized>(rng: &mut R, max_abs: i64) -> Vector {
    loop {
        let v = Vector::new(
            rng.gen_range(-max_abs..=max_abs),
            rng.gen_range(-max_abs..=max_abs),
        );
        if !v.is_zero() {
            return v;
        }
    }
}

/// A random curve system over lattice geometry whose cyclic endpoint
/// condition holds by construction: k ∈ [1, max_chains] chains, integer
/// multipliers in [1,3], |v| ≤ 3, base points in [-5,5]². The two
/// disjointness conditions are left to chance — which is the interesting
/// case, since for integer multipliers at least one of them must fail.
pub fn random_endpoint_system<R: Rng + ?Sized>(rng: &mut R, max_chains: usize) -> CurveSystem {
    'attempt: for _ in 0..1_000 {
        let k = rng.gen_range(1..=max_chains.max(1));
        let v = random_lattice_vector(rng, 3);
        let mults: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let bases: Vec<Point> = (0..k)
            .map(|_| Point::new(rng.gen_range(-5..=5), rng.gen_range(-5..=5)))
            .collect();
        let mut chains = Vec::with_capacity(k);
        for i in 0..k {
            let succ = (i + 1) % k;
            let end = bases[succ] + v.scale(mults[succ]);
            if end == bases[i] {
                continue 'attempt;
            }
            match random_saw_between(rng, bases[i], end, 4, 60) {
                Some(path) => chains.push(
                    PolyChain::from_lattice_points(&path)
                        .expect("self-avoiding walks are simple chains"),
                ),
                None => continue 'attempt,
            }
        }
        return CurveSystem::new(
            chains,
            bases.iter().map(|p| RPoint::from_ints(p.x, p.y)).collect(),
            mults.iter().map(|&m| rat_i(m)).collect(),
            RVector::from_ints(v.dx, v.dy),
        )
        .expect("generated systems are well-formed");
    }
    panic!("failed to generate an endpoint system in 1000 attempts");
}

/// A random tile system: temperature 1 or 2, four glue labels with random
/// strengths in [0,2], and 3–5 tile types with random (possibly null)
/// glues on each side.
pub fn random_tile_system<R: Rng + ?Sized>(rng: &mut R) -> TileSystem {
    let mut sys = TileSystem::new(rng.gen_range(1..=2)).unwrap();
    let labels = ["g0", "g1", "g2", "g3"];
    for (i, a) in labels.iter().enumerate() {
        for b in &labels[i..] {
            if rng.gen_bool(0.5) {
                sys.set_strength(a, b, rng.gen_range(0..=2)).unwrap();
            }
        }
    }
    let tile_count = rng.gen_range(3..=5);
    for t in 0..tile_count {
        let side = |rng: &mut R| {
            if rng.gen_bool(1.0 / 3.0) {
                Glue::Null
            } else {
                Glue::label(labels[rng.gen_range(0..labels.len())])
            }
        };
        let tile = TileType {
            name: format!("t{t}"),
            north: side(rng),
            east: side(rng),
            south: side(rng),
            west: side(rng),
        };
        sys.add_tile(tile).unwrap();
    }
    sys
}

/// A random connected assembly of 1..=max_tiles cells over `sys`'s tile
/// names, grown cell by cell from the origin. No attempt is made to be
/// producible or stable — callers exercising the binding graph and cut
/// machinery want arbitrary assemblies.
pub fn random_assembly<R: Rng + ?Sized>(
    rng: &mut R,
    sys: &TileSystem,
    max_tiles: usize,
) -> Assembly {
    let names: Vec<&str> = sys.tile_types().map(|t| t.name.as_str()).collect();
    assert!(!names.is_empty(), "tile system has no tile types");
    let target = rng.gen_range(1..=max_tiles.max(1));
    let mut cells = vec![Point::new(0, 0)];
    let mut occupied = BTreeSet::from([Point::new(0, 0)]);
    while cells.len() < target {
        let anchor = cells[rng.gen_range(0..cells.len())];
        let q = anchor + DIRS[rng.gen_range(0..4)];
        if occupied.insert(q) {
            cells.push(q);
        }
    }
    let map: BTreeMap<Point, String> = cells
        .into_iter()
        .map(|p| (p, names[rng.gen_range(0..names.len())].to_string()))
        .collect();
    Assembly::new(map).expect("grown cell sets are connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{
        check_stripe_lemma, find_violation, self_translation_intersection, stripe_bound,
        translate_chain, validate_curve_system, ViolationMode,
    };
    use crate::tile::{binding_graph, exhaustive_min_cut, min_cut_weight};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn saws_have_exact_length_and_no_repeats() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for steps in [1, 5, 20, 40] {
            let path = random_saw(&mut rng, steps);
            assert_eq!(path.len(), steps + 1);
            let unique: BTreeSet<Point> = path.iter().copied().collect();
            assert_eq!(unique.len(), path.len());
            for pair in path.windows(2) {
                let d = pair[1] - pair[0];
                assert_eq!(d.dx.abs() + d.dy.abs(), 1);
            }
        }
    }

    #[test]
    fn same_seed_reproduces_the_same_walk() {
        let a = random_saw(&mut ChaCha8Rng::seed_from_u64(5), 15);
        let b = random_saw(&mut ChaCha8Rng::seed_from_u64(5), 15);
        assert_eq!(a, b);
    }

    #[test]
    fn anchored_saws_run_between_their_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let end = Point::new(rng.gen_range(-6..=6), rng.gen_range(-6..=6));
            if end == Point::new(0, 0) {
                continue;
            }
            let path = random_saw_between(&mut rng, Point::new(0, 0), end, 3, 60)
                .expect("small boxes admit paths");
            assert_eq!(path[0], Point::new(0, 0));
            assert_eq!(*path.last().unwrap(), end);
            let unique: BTreeSet<Point> = path.iter().copied().collect();
            assert_eq!(unique.len(), path.len());
        }
    }

    #[test]
    fn anchored_walks_force_translation_intersections() {
        // Chains from p to p + n·v with integer n must meet their own
        // v-translate; the witness point must lie exactly on both copies.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let n = rng.gen_range(1..=4u32);
            let v = random_lattice_vector(&mut rng, 4);
            let end = Point::new(0, 0) + v.scale(n as i64);
            let Some(path) = random_saw_between(&mut rng, Point::new(0, 0), end, 3, 60) else {
                continue;
            };
            let chain = PolyChain::from_lattice_points(&path).unwrap();
            let rv = RVector::from_ints(v.dx, v.dy);
            let q = self_translation_intersection(&chain, &rv, n).unwrap();
            assert!(chain.contains_point(&q));
            let shifted = translate_chain(&chain, &rv, 1);
            assert!(shifted.contains_point(&q));
        }
    }

    #[test]
    fn disjoint_translates_stay_disjoint_across_the_whole_stripe() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let mut checked = 0;
        while checked < 30 {
            let segments = rng.gen_range(3..=10);
            let chain = random_chain(&mut rng, segments);
            let v = random_lattice_vector(&mut rng, 3);
            let rv = RVector::from_ints(v.dx, v.dy);
            let shifted = translate_chain(&chain, &rv, 1);
            if chain.first_intersection(&shifted).is_some() {
                continue; // hypothesis fails; resample
            }
            let k = stripe_bound(&chain, &rv).unwrap();
            assert_eq!(check_stripe_lemma(&chain, &rv, k).unwrap(), None);
            checked += 1;
        }
    }

    #[test]
    fn endpoint_systems_satisfy_condition_one_and_yield_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..20 {
            let sys = random_endpoint_system(&mut rng, 3);
            assert!(validate_curve_system(&sys).condition1_holds());
            for mode in [ViolationMode::Direct, ViolationMode::Reduce] {
                let w = find_violation(&sys, mode).unwrap();
                assert!(w.verify(&sys), "mode {mode:?} witness {w} failed");
            }
        }
    }

    #[test]
    fn min_cut_agrees_with_exhaustive_enumeration_on_random_assemblies() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        for _ in 0..50 {
            let sys = random_tile_system(&mut rng);
            let a = random_assembly(&mut rng, &sys, 8);
            let g = binding_graph(&a, &sys).unwrap();
            assert_eq!(min_cut_weight(&g), exhaustive_min_cut(&g));
        }
    }
}
