//! Simple polygonal chains and exact segment intersection.

use super::{CurveError, RPoint, RVector, Rational};
use crate::lattice::Point;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn cross(ux: &Rational, uy: &Rational, wx: &Rational, wy: &Rational) -> Rational {
    ux * wy - uy * wx
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct BBox {
    min_x: Rational,
    min_y: Rational,
    max_x: Rational,
    max_y: Rational,
}

impl BBox {
    fn of(vertices: &[RPoint]) -> BBox {
        let mut min_x = vertices[0].x.clone();
        let mut max_x = vertices[0].x.clone();
        let mut min_y = vertices[0].y.clone();
        let mut max_y = vertices[0].y.clone();
        for p in &vertices[1..] {
            if p.x < min_x {
                min_x = p.x.clone();
            }
            if p.x > max_x {
                max_x = p.x.clone();
            }
            if p.y < min_y {
                min_y = p.y.clone();
            }
            if p.y > max_y {
                max_y = p.y.clone();
            }
        }
        BBox {
            min_x,
            min_y,
            max_x,
            max_y,
        }
    }

    fn overlaps(&self, other: &BBox) -> bool {
        self.min_x <= other.max_x
            && other.min_x <= self.max_x
            && self.min_y <= other.max_y
            && other.min_y <= self.max_y
    }
}

/// Coarse integer bounding box of a segment: an outer approximation with
/// `i64` bounds (saturating on overflow), so a "no touch" verdict is always
/// safe to act on. Comparing two of these is a handful of machine-word
/// compares, versus the allocating big-integer arithmetic behind every
/// `Rational` comparison — which is what makes it worth consulting before
/// the exact per-pair tests in the quadratic scans.
#[derive(Clone, Copy, Debug)]
struct CoarseBox {
    min_x: i64,
    min_y: i64,
    max_x: i64,
    max_y: i64,
}

fn floor_to_i64(r: &Rational) -> i64 {
    match r.floor().to_integer().to_i64() {
        Some(v) => v,
        None if r.is_negative() => i64::MIN,
        None => i64::MAX,
    }
}

fn ceil_to_i64(r: &Rational) -> i64 {
    match r.ceil().to_integer().to_i64() {
        Some(v) => v,
        None if r.is_negative() => i64::MIN,
        None => i64::MAX,
    }
}

impl CoarseBox {
    fn of_segment(a: &RPoint, b: &RPoint) -> CoarseBox {
        CoarseBox {
            min_x: floor_to_i64(&a.x).min(floor_to_i64(&b.x)),
            min_y: floor_to_i64(&a.y).min(floor_to_i64(&b.y)),
            max_x: ceil_to_i64(&a.x).max(ceil_to_i64(&b.x)),
            max_y: ceil_to_i64(&a.y).max(ceil_to_i64(&b.y)),
        }
    }

    fn touches(&self, other: &CoarseBox) -> bool {
        self.min_x <= other.max_x
            && other.min_x <= self.max_x
            && self.min_y <= other.max_y
            && other.min_y <= self.max_y
    }
}

fn seg_boxes_touch(a1: &RPoint, b1: &RPoint, a2: &RPoint, b2: &RPoint) -> bool {
    let (lo1x, hi1x) = if a1.x <= b1.x { (&a1.x, &b1.x) } else { (&b1.x, &a1.x) };
    let (lo2x, hi2x) = if a2.x <= b2.x { (&a2.x, &b2.x) } else { (&b2.x, &a2.x) };
    if lo1x > hi2x || lo2x > hi1x {
        return false;
    }
    let (lo1y, hi1y) = if a1.y <= b1.y { (&a1.y, &b1.y) } else { (&b1.y, &a1.y) };
    let (lo2y, hi2y) = if a2.y <= b2.y { (&a2.y, &b2.y) } else { (&b2.y, &a2.y) };
    lo1y <= hi2y && lo2y <= hi1y
}

/// Common point of segments `a1→b1` and `a2→b2`, reported as the parameter
/// along the first segment (0 at `a1`, 1 at `b1`). Collinear overlaps report
/// the end of the overlap interval with the least first-segment parameter.
pub(crate) fn segment_common_point(
    a1: &RPoint,
    b1: &RPoint,
    a2: &RPoint,
    b2: &RPoint,
) -> Option<(Rational, RPoint)> {
    if !seg_boxes_touch(a1, b1, a2, b2) {
        return None;
    }
    let d1x = &b1.x - &a1.x;
    let d1y = &b1.y - &a1.y;
    let d2x = &b2.x - &a2.x;
    let d2y = &b2.y - &a2.y;
    let wx = &a2.x - &a1.x;
    let wy = &a2.y - &a1.y;
    let den = cross(&d1x, &d1y, &d2x, &d2y);
    let zero = Rational::zero();
    let one = Rational::one();
    if !den.is_zero() {
        let s = cross(&wx, &wy, &d2x, &d2y) / &den;
        let t = cross(&wx, &wy, &d1x, &d1y) / &den;
        if s >= zero && s <= one && t >= zero && t <= one {
            let p = RPoint::new(&a1.x + &d1x * &s, &a1.y + &d1y * &s);
            return Some((s, p));
        }
        return None;
    }
    if !cross(&wx, &wy, &d1x, &d1y).is_zero() {
        return None; // parallel, different lines
    }
    // Collinear: parametrize the second segment's endpoints along the first.
    let len2 = &d1x * &d1x + &d1y * &d1y;
    let ta = (&wx * &d1x + &wy * &d1y) / &len2;
    let tb = ((&b2.x - &a1.x) * &d1x + (&b2.y - &a1.y) * &d1y) / &len2;
    let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
    let lo = if lo < zero { zero } else { lo };
    let hi = if hi > one { one } else { hi };
    if lo > hi {
        return None;
    }
    let p = RPoint::new(&a1.x + &d1x * &lo, &a1.y + &d1y * &lo);
    Some((lo, p))
}

/// Parameter of `q` on segment `a→b`, if it lies on it.
fn point_on_segment(a: &RPoint, b: &RPoint, q: &RPoint) -> Option<Rational> {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let wx = &q.x - &a.x;
    let wy = &q.y - &a.y;
    if !cross(&dx, &dy, &wx, &wy).is_zero() {
        return None;
    }
    let len2 = &dx * &dx + &dy * &dy;
    let t = (&wx * &dx + &wy * &dy) / &len2;
    if t >= Rational::zero() && t <= Rational::one() {
        Some(t)
    } else {
        None
    }
}

/// The least-parameter intersection found by [`PolyChain::first_intersection`]:
/// position along the first chain plus the common point itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainHit {
    pub segment: usize,
    pub param: Rational,
    pub point: RPoint,
}

/// A simple polygonal chain: at least one segment, no zero-length segments,
/// and no two segments sharing more than the vertex between consecutive
/// ones. A chain whose first and last vertices coincide is *closed* (the
/// wrap-around pair then counts as consecutive).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyChain {
    vertices: Vec<RPoint>,
    bbox: BBox,
}

impl PolyChain {
    pub fn new(vertices: Vec<RPoint>) -> Result<Self, CurveError> {
        if vertices.len() < 2 {
            return Err(CurveError::TooFewVertices);
        }
        for i in 0..vertices.len() - 1 {
            if vertices[i] == vertices[i + 1] {
                return Err(CurveError::DegenerateSegment(i, i + 1));
            }
        }
        let chain = PolyChain {
            bbox: BBox::of(&vertices),
            vertices,
        };
        chain.check_simple()?;
        Ok(chain)
    }

    /// Builds a chain from a lattice path, merging runs of collinear steps
    /// into single segments. The path must be simple (e.g. self-avoiding).
    pub fn from_lattice_points(path: &[Point]) -> Result<Self, CurveError> {
        let mut verts: Vec<RPoint> = Vec::new();
        for (i, p) in path.iter().enumerate() {
            let rp = RPoint::from_ints(p.x, p.y);
            if i >= 2 {
                let a = &verts[verts.len() - 2];
                let b = &verts[verts.len() - 1];
                let turn = cross(&(&b.x - &a.x), &(&b.y - &a.y), &(&rp.x - &b.x), &(&rp.y - &b.y));
                if turn.is_zero() {
                    // Same or opposite direction; only drop the middle vertex
                    // when continuing forward.
                    let forward = (&rp.x - &b.x) * (&b.x - &a.x) + (&rp.y - &b.y) * (&b.y - &a.y);
                    if forward.is_positive() {
                        verts.pop();
                    }
                }
            }
            verts.push(rp);
        }
        PolyChain::new(verts)
    }

    /// One coarse box per segment, for cheap pair rejection in the
    /// quadratic scans below.
    fn coarse_boxes(&self) -> Vec<CoarseBox> {
        (0..self.segment_count())
            .map(|i| {
                let (a, b) = self.segment(i);
                CoarseBox::of_segment(a, b)
            })
            .collect()
    }

    fn check_simple(&self) -> Result<(), CurveError> {
        let n = self.segment_count();
        let closed = self.is_closed();
        let boxes = self.coarse_boxes();
        for i in 0..n {
            let (a1, b1) = self.segment(i);
            for j in i + 1..n {
                let (a2, b2) = self.segment(j);
                let consecutive = j == i + 1 || (closed && i == 0 && j == n - 1);
                if consecutive {
                    // Shared vertex only; collinear neighbours must continue
                    // forward, not fold back onto each other.
                    let (din_x, din_y, dout_x, dout_y) = if j == i + 1 {
                        (&b1.x - &a1.x, &b1.y - &a1.y, &b2.x - &a2.x, &b2.y - &a2.y)
                    } else {
                        // closed wrap: j's end is i's start
                        (&b2.x - &a2.x, &b2.y - &a2.y, &b1.x - &a1.x, &b1.y - &a1.y)
                    };
                    if cross(&din_x, &din_y, &dout_x, &dout_y).is_zero()
                        && !(din_x * dout_x + din_y * dout_y).is_positive()
                    {
                        return Err(CurveError::NotSimple(i, j));
                    }
                    continue;
                }
                if !boxes[i].touches(&boxes[j]) {
                    continue;
                }
                if segment_common_point(a1, b1, a2, b2).is_some() {
                    return Err(CurveError::NotSimple(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[RPoint] {
        &self.vertices
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub(crate) fn segment(&self, i: usize) -> (&RPoint, &RPoint) {
        (&self.vertices[i], &self.vertices[i + 1])
    }

    /// `(min_x, min_y, max_x, max_y)` of the vertex set.
    pub(crate) fn bounds(&self) -> (&Rational, &Rational, &Rational, &Rational) {
        (
            &self.bbox.min_x,
            &self.bbox.min_y,
            &self.bbox.max_x,
            &self.bbox.max_y,
        )
    }

    pub fn start(&self) -> &RPoint {
        &self.vertices[0]
    }

    pub fn end(&self) -> &RPoint {
        self.vertices.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.vertices.first() == self.vertices.last()
    }

    /// Translation preserves simplicity, so no revalidation happens.
    pub fn translated(&self, by: &RVector) -> PolyChain {
        let vertices: Vec<RPoint> = self
            .vertices
            .iter()
            .map(|p| RPoint::new(&p.x + &by.x, &p.y + &by.y))
            .collect();
        PolyChain {
            bbox: BBox::of(&vertices),
            vertices,
        }
    }

    /// Internal constructor for chains proven simple by construction
    /// (used by the reduction splice, which still validates in debug).
    pub(crate) fn from_validated(vertices: Vec<RPoint>) -> Result<Self, CurveError> {
        PolyChain::new(vertices)
    }

    pub fn contains_point(&self, q: &RPoint) -> bool {
        !self.positions_of(q).is_empty()
    }

    /// Every `(segment, parameter)` position where `q` lies on the chain.
    /// A vertex hit appears once per incident segment.
    pub fn positions_of(&self, q: &RPoint) -> Vec<(usize, Rational)> {
        if q.x < self.bbox.min_x
            || q.x > self.bbox.max_x
            || q.y < self.bbox.min_y
            || q.y > self.bbox.max_y
        {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i in 0..self.segment_count() {
            let (a, b) = self.segment(i);
            if let Some(t) = point_on_segment(a, b, q) {
                out.push((i, t));
            }
        }
        out
    }

    pub fn point_at(&self, segment: usize, param: &Rational) -> RPoint {
        let (a, b) = self.segment(segment);
        RPoint::new(
            &a.x + (&b.x - &a.x) * param,
            &a.y + (&b.y - &a.y) * param,
        )
    }

    /// The common point least along `self`'s parametrization, scanning
    /// segments in order and taking the minimal parameter within the first
    /// segment that touches `other` at all.
    pub fn first_intersection(&self, other: &PolyChain) -> Option<ChainHit> {
        if !self.bbox.overlaps(&other.bbox) {
            return None;
        }
        let mine = self.coarse_boxes();
        let theirs = other.coarse_boxes();
        for i in 0..self.segment_count() {
            let (a1, b1) = self.segment(i);
            let mut best: Option<(Rational, RPoint)> = None;
            for j in 0..other.segment_count() {
                if !mine[i].touches(&theirs[j]) {
                    continue;
                }
                let (a2, b2) = other.segment(j);
                if let Some((t, p)) = segment_common_point(a1, b1, a2, b2) {
                    let better = match &best {
                        Some((bt, _)) => t < *bt,
                        None => true,
                    };
                    if better {
                        best = Some((t, p));
                    }
                }
            }
            if let Some((param, point)) = best {
                return Some(ChainHit {
                    segment: i,
                    param,
                    point,
                });
            }
        }
        None
    }

    /// Max squared distance between any two vertices (the chain's squared
    /// diameter, since a polygonal chain's extremes are at vertices).
    pub fn diameter_squared(&self) -> Rational {
        let mut best = Rational::zero();
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                let dx = &a.x - &b.x;
                let dy = &a.y - &b.y;
                let d = &dx * &dx + &dy * &dy;
                if d > best {
                    best = d;
                }
            }
        }
        best
    }

}

impl std::fmt::Display for PolyChain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
