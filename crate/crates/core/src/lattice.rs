//! Integer lattice points, finite 4-connected shapes, and the shifted-shape
//! component walk.
//!
//! The central fact driving the pumping machinery: for any finite connected
//! shape `S` and nonzero vector `v`, writing `S1 = S + v` and `S2 = S + 2v`,
//! some connected component of `S2 \ S1` is disjoint from `S`.
//! [`find_nonconflicting_component`] locates one; [`shape_walk`] records the
//! constructive walk that proves it exists.

use std::collections::BTreeSet;
use thiserror::Error;

/// A cell of the integer lattice. Ordering is by `(y, x)`, which is the
/// scan order used for every deterministic tie-break in this crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// The four edge-adjacent neighbours, in N, E, S, W order.
    pub fn neighbors(self) -> [Point; 4] {
        [
            Point::new(self.x, self.y + 1),
            Point::new(self.x + 1, self.y),
            Point::new(self.x, self.y - 1),
            Point::new(self.x - 1, self.y),
        ]
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add<Vector> for Point {
    type Output = Point;
    fn add(self, v: Vector) -> Point {
        Point::new(self.x + v.dx, self.y + v.dy)
    }
}

impl std::ops::Sub<Vector> for Point {
    type Output = Point;
    fn sub(self, v: Vector) -> Point {
        Point::new(self.x - v.dx, self.y - v.dy)
    }
}

impl std::ops::Sub for Point {
    type Output = Vector;
    fn sub(self, other: Point) -> Vector {
        Vector::new(self.x - other.x, self.y - other.y)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// An integer displacement. Ordered by `(dy, dx)` to match [`Point`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Vector {
    pub dx: i64,
    pub dy: i64,
}

impl Vector {
    pub const fn new(dx: i64, dy: i64) -> Self {
        Vector { dx, dy }
    }

    pub fn is_zero(self) -> bool {
        self.dx == 0 && self.dy == 0
    }

    pub fn scale(self, k: i64) -> Vector {
        Vector::new(self.dx * k, self.dy * k)
    }

    /// Sign-canonical representative of `{v, -v}`: first nonzero coordinate
    /// positive, preferring `dx`.
    pub fn canonical_sign(self) -> Vector {
        if self.dx > 0 || (self.dx == 0 && self.dy > 0) {
            self
        } else {
            Vector::new(-self.dx, -self.dy)
        }
    }
}

impl Ord for Vector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dy, self.dx).cmp(&(other.dy, other.dx))
    }
}

impl PartialOrd for Vector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-self.dx, -self.dy)
    }
}

impl std::fmt::Display for Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.dx, self.dy)
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum LatticeError {
    #[error("shape must be nonempty")]
    EmptyShape,
    #[error("shape must be 4-connected ({0} components)")]
    DisconnectedShape(usize),
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("component walk violated a proven invariant: {0}")]
    TheoremViolation(String),
}

/// A nonempty, 4-connected finite set of lattice cells.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Shape {
    cells: BTreeSet<Point>,
}

impl Shape {
    /// Validates nonemptiness and 4-connectivity.
    pub fn new(cells: BTreeSet<Point>) -> Result<Self, LatticeError> {
        if cells.is_empty() {
            return Err(LatticeError::EmptyShape);
        }
        let comps = connected_components(&cells);
        if comps.len() != 1 {
            return Err(LatticeError::DisconnectedShape(comps.len()));
        }
        Ok(Shape { cells })
    }

    pub fn from_points(pts: impl IntoIterator<Item = Point>) -> Result<Self, LatticeError> {
        Self::new(pts.into_iter().collect())
    }

    pub fn cells(&self) -> &BTreeSet<Point> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: nonempty
    }

    pub fn contains(&self, p: Point) -> bool {
        self.cells.contains(&p)
    }

    /// Least cell in `(y, x)` order; exists by nonemptiness.
    pub fn min_cell(&self) -> Point {
        *self.cells.iter().next().unwrap()
    }

    pub fn iter(&self) -> impl Iterator<Item = Point> + '_ {
        self.cells.iter().copied()
    }

    /// Max squared Euclidean distance between any two cells (0 for a single
    /// cell).
    pub fn diameter_squared(&self) -> i64 {
        let pts: Vec<Point> = self.cells.iter().copied().collect();
        let mut best = 0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                let d = (a.x - b.x).pow(2) + (a.y - b.y).pow(2);
                best = best.max(d);
            }
        }
        best
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Connected components of an arbitrary finite cell set under 4-adjacency,
/// ordered by their least cell in `(y, x)` order. Diagonal contact does not
/// connect.
pub fn connected_components(cells: &BTreeSet<Point>) -> Vec<Shape> {
    let mut seen: BTreeSet<Point> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in cells {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(p) = stack.pop() {
            comp.insert(p);
            for q in p.neighbors() {
                if cells.contains(&q) && seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        out.push(Shape { cells: comp });
    }
    out
}

/// Translate every cell by `v`.
pub fn translate_shape(s: &Shape, v: Vector) -> Shape {
    Shape {
        cells: s.cells.iter().map(|&p| p + v).collect(),
    }
}

fn translated_cells(s: &Shape, v: Vector) -> BTreeSet<Point> {
    s.cells.iter().map(|&p| p + v).collect()
}

/// Components of `(S + 2v) \ (S + v)` that are disjoint from `S`.
/// Nonempty for every connected `S` and nonzero `v`; used both as the
/// oracle filter and by [`find_nonconflicting_component`].
pub fn nonconflicting_components(s0: &Shape, v: Vector) -> Result<Vec<Shape>, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let s1 = translated_cells(s0, v);
    let s2 = translated_cells(s0, v.scale(2));
    let diff: BTreeSet<Point> = s2.difference(&s1).copied().collect();
    let comps = connected_components(&diff);
    let ok: Vec<Shape> = comps
        .into_iter()
        .filter(|c| c.iter().all(|p| !s0.contains(p)))
        .collect();
    if ok.is_empty() {
        return Err(LatticeError::TheoremViolation(
            "no component of (S+2v)\\(S+v) avoids S".into(),
        ));
    }
    Ok(ok)
}

/// A component of `(S + 2v) \ (S + v)` disjoint from `S`. When several
/// qualify, the one with the least cell in `(y, x)` order.
pub fn find_nonconflicting_component(s0: &Shape, v: Vector) -> Result<Shape, LatticeError> {
    let mut comps = nonconflicting_components(s0, v)?;
    comps.sort_by_key(Shape::min_cell);
    Ok(comps.remove(0))
}

/// One step of the component walk: the visited component, the anchor cell
/// shared with `S`, and the least `n ≥ 1` with `anchor + n·v ∉ S + v`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WalkStep {
    pub component: Shape,
    pub anchor: Point,
    pub exit_multiplier: u32,
}

/// Trace of [`shape_walk`]: the components of `(S+2v) \ (S+v)` visited while
/// they still touched `S`, and the final component that does not.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WalkTrace {
    pub steps: Vec<WalkStep>,
    pub final_component: Shape,
}

/// Walks components of `diff = (S+2v) \ (S+v)`: starting from the least
/// component that intersects `S`, repeatedly jump from an anchor
/// `p ∈ C ∩ S` to `p + n·v` (least `n ≥ 1` escaping `S+v`), which lands in
/// `diff` again, in a component never seen before. Stops at the first
/// component disjoint from `S`.
///
/// If no component intersects `S`, the trace has no steps and the final
/// component is [`find_nonconflicting_component`]'s answer.
pub fn shape_walk(s0: &Shape, v: Vector) -> Result<WalkTrace, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let s1 = translated_cells(s0, v);
    let s2 = translated_cells(s0, v.scale(2));
    let diff: BTreeSet<Point> = s2.difference(&s1).copied().collect();
    let mut comps = connected_components(&diff);
    comps.sort_by_key(Shape::min_cell);

    let component_of = |p: Point, comps: &[Shape]| -> Option<usize> {
        comps.iter().position(|c| c.contains(p))
    };

    let start = comps
        .iter()
        .position(|c| c.iter().any(|p| s0.contains(p)));
    let Some(mut current) = start else {
        let final_component = find_nonconflicting_component(s0, v)?;
        return Ok(WalkTrace {
            steps: Vec::new(),
            final_component,
        });
    };

    let mut visited = vec![false; comps.len()];
    let mut steps = Vec::new();
    loop {
        visited[current] = true;
        let comp = comps[current].clone();
        let overlap: Vec<Point> = comp.iter().filter(|&p| s0.contains(p)).collect();
        if overlap.is_empty() {
            // Current component no longer touches S: the walk is done.
            return Ok(WalkTrace {
                steps,
                final_component: comp,
            });
        }
        let anchor = overlap[0]; // least in (y,x) order: comp iterates sorted
        let mut n = 1u32;
        while s1.contains(&(anchor + v.scale(n as i64))) {
            n += 1;
        }
        let exit = anchor + v.scale(n as i64);
        if !diff.contains(&exit) {
            return Err(LatticeError::TheoremViolation(format!(
                "exit cell {exit} from anchor {anchor} is not in (S+2v)\\(S+v)"
            )));
        }
        steps.push(WalkStep {
            component: comp,
            anchor,
            exit_multiplier: n,
        });
        let next = component_of(exit, &comps).expect("exit is in diff, so in some component");
        if visited[next] {
            return Err(LatticeError::TheoremViolation(format!(
                "walk revisited a component (at cell {exit})"
            )));
        }
        if comps[next].iter().all(|p| !s0.contains(p)) {
            return Ok(WalkTrace {
                steps,
                final_component: comps[next].clone(),
            });
        }
        current = next;
    }
}

/// All fixed polyominoes (shapes up to translation only — no rotation or
/// reflection) with `1..=max_cells` cells, each in canonical position with
/// its least cell's row at y=0 and the leftmost cell of that row at x=0.
/// Sizes 1..7 yield 1, 2, 6, 19, 63, 216, 760 shapes.
pub fn fixed_polyominoes(max_cells: usize) -> Vec<Shape> {
    let canonical = |cells: &BTreeSet<Point>| -> BTreeSet<Point> {
        let min = *cells.iter().next().unwrap(); // least (y,x)
        cells
            .iter()
            .map(|&p| Point::new(p.x - min.x, p.y - min.y))
            .collect()
    };
    let mut by_size: Vec<BTreeSet<BTreeSet<Point>>> = vec![BTreeSet::new(); max_cells + 1];
    if max_cells == 0 {
        return Vec::new();
    }
    by_size[1].insert([Point::new(0, 0)].into_iter().collect());
    for size in 1..max_cells {
        let grown: Vec<BTreeSet<Point>> = by_size[size]
            .iter()
            .flat_map(|cells| {
                let mut out = Vec::new();
                for p in cells {
                    for q in p.neighbors() {
                        if !cells.contains(&q) {
                            let mut bigger = cells.clone();
                            bigger.insert(q);
                            out.push(canonical(&bigger));
                        }
                    }
                }
                out
            })
            .collect();
        by_size[size + 1].extend(grown);
    }
    by_size
        .into_iter()
        .flatten()
        .map(|cells| Shape { cells })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(v: &[(i64, i64)]) -> BTreeSet<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn shape(v: &[(i64, i64)]) -> Shape {
        Shape::new(pts(v)).unwrap()
    }

    #[test]
    fn point_order_is_row_major() {
        let mut v = vec![Point::new(1, 0), Point::new(0, 1), Point::new(0, 0)];
        v.sort();
        assert_eq!(v, vec![Point::new(0, 0), Point::new(1, 0), Point::new(0, 1)]);
    }

    #[test]
    fn shape_rejects_empty_and_disconnected() {
        assert_eq!(Shape::new(BTreeSet::new()), Err(LatticeError::EmptyShape));
        assert_eq!(
            Shape::new(pts(&[(0, 0), (2, 0)])),
            Err(LatticeError::DisconnectedShape(2))
        );
        // Diagonal contact does not connect.
        assert_eq!(
            Shape::new(pts(&[(0, 0), (1, 1)])),
            Err(LatticeError::DisconnectedShape(2))
        );
    }

    #[test]
    fn components_split_l_plus_far_cell() {
        let comps = connected_components(&pts(&[(0, 0), (0, 1), (1, 0), (5, 5)]));
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], shape(&[(0, 0), (0, 1), (1, 0)]));
        assert_eq!(comps[1], shape(&[(5, 5)]));
    }

    #[test]
    fn components_of_single_cell() {
        let comps = connected_components(&pts(&[(3, -2)]));
        assert_eq!(comps, vec![shape(&[(3, -2)])]);
    }

    #[test]
    fn translate_round_trips() {
        let s = shape(&[(0, 0), (1, 0), (1, 1)]);
        let v = Vector::new(3, -4);
        assert_eq!(translate_shape(&translate_shape(&s, v), -v), s);
        assert_eq!(
            translate_shape(&s, Vector::new(1, 1)),
            shape(&[(1, 1), (2, 1), (2, 2)])
        );
    }

    fn u_shape() -> Shape {
        shape(&[(0, 0), (1, 0), (2, 0), (0, 1), (2, 1)])
    }

    #[test]
    fn u_shape_nonconflicting_component() {
        // S+v and S+2v with v=(1,0): the difference has components
        // {(4,0),(4,1)} and {(2,1)}; the latter touches S and is filtered out.
        let got = find_nonconflicting_component(&u_shape(), Vector::new(1, 0)).unwrap();
        assert_eq!(got, shape(&[(4, 0), (4, 1)]));
    }

    #[test]
    fn u_shape_walk_trace() {
        let trace = shape_walk(&u_shape(), Vector::new(1, 0)).unwrap();
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.steps[0].component, shape(&[(2, 1)]));
        assert_eq!(trace.steps[0].anchor, Point::new(2, 1));
        assert_eq!(trace.steps[0].exit_multiplier, 2);
        assert_eq!(trace.final_component, shape(&[(4, 0), (4, 1)]));
    }

    #[test]
    fn single_cell_walk_has_no_steps() {
        let s = shape(&[(0, 0)]);
        let trace = shape_walk(&s, Vector::new(2, 1)).unwrap();
        assert!(trace.steps.is_empty());
        assert_eq!(trace.final_component, shape(&[(4, 2)]));
    }

    #[test]
    fn zero_vector_is_rejected() {
        let s = shape(&[(0, 0)]);
        assert!(matches!(
            find_nonconflicting_component(&s, Vector::new(0, 0)),
            Err(LatticeError::ZeroVector)
        ));
        assert!(matches!(
            shape_walk(&s, Vector::new(0, 0)),
            Err(LatticeError::ZeroVector)
        ));
    }

    #[test]
    fn polyomino_counts_match_known_values() {
        let all = fixed_polyominoes(5);
        let count_of = |n: usize| all.iter().filter(|s| s.len() == n).count();
        assert_eq!(count_of(1), 1);
        assert_eq!(count_of(2), 2);
        assert_eq!(count_of(3), 6);
        assert_eq!(count_of(4), 19);
        assert_eq!(count_of(5), 63);
    }

    #[test]
    fn walk_and_filter_agree_on_all_small_shapes() {
        // Exhaustive over all fixed polyominoes with up to 5 cells and a
        // grid of vectors; the full-size sweep lives in the acceptance suite.
        for s in fixed_polyominoes(5) {
            for dx in -3i64..=3 {
                for dy in -3i64..=3 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let v = Vector::new(dx, dy);
                    let filter = nonconflicting_components(&s, v).unwrap();
                    let chosen = find_nonconflicting_component(&s, v).unwrap();
                    assert!(filter.contains(&chosen));
                    let trace = shape_walk(&s, v).unwrap();
                    assert!(
                        filter.contains(&trace.final_component),
                        "walk final not in filter set for {s} v={v}"
                    );
                    // Steps visit pairwise distinct components that all touch S.
                    for (i, st) in trace.steps.iter().enumerate() {
                        assert!(st.component.iter().any(|p| s.contains(p)));
                        for later in &trace.steps[i + 1..] {
                            assert_ne!(st.component, later.component);
                        }
                        assert_ne!(st.component, trace.final_component);
                    }
                    assert!(trace.final_component.iter().all(|p| !s.contains(p)));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn components_partition_input(raw in proptest::collection::btree_set((-6i64..6, -6i64..6), 0..20)) {
            let cells: BTreeSet<Point> = raw.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            let comps = connected_components(&cells);
            let mut union = BTreeSet::new();
            let mut total = 0;
            for c in &comps {
                total += c.len();
                union.extend(c.iter());
            }
            prop_assert_eq!(total, cells.len()); // pairwise disjoint
            prop_assert_eq!(union, cells);
            // Ordered by least cell.
            for w in comps.windows(2) {
                prop_assert!(w[0].min_cell() < w[1].min_cell());
            }
        }

        #[test]
        fn translate_preserves_size_and_shape(
            raw in proptest::collection::btree_set((-5i64..5, -5i64..5), 1..12),
            dx in -7i64..7, dy in -7i64..7,
        ) {
            let cells: BTreeSet<Point> = raw.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            for c in connected_components(&cells) {
                let v = Vector::new(dx, dy);
                let t = translate_shape(&c, v);
                prop_assert_eq!(t.len(), c.len());
                prop_assert_eq!(translate_shape(&t, -v), c);
            }
        }
    }
}
