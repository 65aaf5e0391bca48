//! Repetition detection and the pumping construction: growing an assembly
//! that consistently overlaps its own translate, one period per step.
//!
//! An assembly `α` is *repetitious* with nonzero `v` when `dom α` meets
//! `dom α + v` and the two agree on the overlap. One pump step locates a
//! connected component `C₂` of `(S+2v)\(S+v)` that misses `S = dom α`,
//! pulls it back to `C₁ = C₂ - v`, and extends `α` by `(α+v)↾C₁`. The
//! result is strictly larger and repetitious with the same `v`, so the
//! step iterates forever — the concrete engine behind "pattern overlap
//! implies runaway growth". Each step re-verifies every property the
//! construction promises (connectivity, τ-stability, repetition, growth)
//! and treats any failure as an internal error rather than a caveat.

use crate::lattice::{
    connected_components, find_nonconflicting_component, translate_shape, LatticeError, Point,
    Shape, Vector,
};
use crate::tile::{
    canonicalize, consistent, enumerate_producible, is_stable, restriction, union_assemblies,
    Assembly, TileError, TileSystem,
};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum PumpError {
    #[error(transparent)]
    Tile(#[from] TileError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("vector {0} is not a repetition of the assembly")]
    NotRepetition(Vector),
    #[error("assemblies do not overlap")]
    NoOverlap,
    #[error("assembly has {size} tiles, above the certification bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("provably-impossible configuration reached: {0}")]
    TheoremViolation(String),
}

/// A witness that an assembly consistently overlaps its own `v`-translate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Repetition {
    pub assembly: Assembly,
    pub v: Vector,
    /// `dom α ∩ (dom α + v)`; nonempty, and `α` and `α+v` agree on it.
    pub overlap: BTreeSet<Point>,
}

/// Whether `a` and `a + v` overlap and agree on the overlap. Either sign
/// of `v` works — the property is symmetric under negation.
pub fn is_repetition(a: &Assembly, v: Vector) -> bool {
    if v.is_zero() {
        return false;
    }
    let mut overlapping = false;
    for (p, name) in a.tiles() {
        if let Some(prior) = a.get(&(p - v)) {
            overlapping = true;
            if prior != name {
                return false;
            }
        }
    }
    overlapping
}

/// All repetition vectors of `a`, each reported once in canonical sign
/// (first nonzero coordinate positive), sorted. Only differences of
/// occupied cells can overlap, so the candidate space is finite.
pub fn find_repetitions(a: &Assembly) -> Vec<Repetition> {
    let cells: Vec<Point> = a.tiles().map(|(p, _)| p).collect();
    let mut candidates = BTreeSet::new();
    for &p in &cells {
        for &q in &cells {
            if p != q {
                candidates.insert((p - q).canonical_sign());
            }
        }
    }
    let mut out = Vec::new();
    for v in candidates {
        if is_repetition(a, v) {
            let overlap = cells
                .iter()
                .copied()
                .filter(|p| a.get(&(*p - v)).is_some())
                .collect();
            out.push(Repetition {
                assembly: a.clone(),
                v,
                overlap,
            });
        }
    }
    out
}

/// The missing pieces of `b` relative to `a`: `b` restricted to each
/// connected component of `dom b \ dom a`, ordered by least cell. Requires
/// `a` and `b` consistent and overlapping. Every prefix union
/// `a ∪ piece₁ ∪ … ∪ pieceⱼ` is verified connected and τ-stable — for
/// producible inputs the union theorem guarantees exactly that, so a
/// failure is reported as an impossible configuration.
pub fn staged_union_plan(
    a: &Assembly,
    b: &Assembly,
    sys: &TileSystem,
) -> Result<Vec<Assembly>, PumpError> {
    if !consistent(a, b) {
        let clash = b
            .tiles()
            .map(|(p, _)| p)
            .find(|p| a.get(p).is_some_and(|n| Some(n) != b.get(p)))
            .unwrap();
        return Err(PumpError::Tile(TileError::Conflict(clash)));
    }
    if !b.tiles().any(|(p, _)| a.get(&p).is_some()) {
        return Err(PumpError::NoOverlap);
    }
    let missing: BTreeSet<Point> = b
        .tiles()
        .map(|(p, _)| p)
        .filter(|p| a.get(p).is_none())
        .collect();
    let mut plan = Vec::new();
    let mut acc = a.clone();
    for component in connected_components(&missing) {
        let piece = restriction(b, component.cells())?;
        acc = union_assemblies(&acc, &piece).map_err(|e| {
            PumpError::TheoremViolation(format!("staged union prefix failed: {e}"))
        })?;
        if !is_stable(&acc, sys)? {
            return Err(PumpError::TheoremViolation(format!(
                "staged union prefix of {} tiles is not stable",
                acc.len()
            )));
        }
        plan.push(piece);
    }
    Ok(plan)
}

fn pump_once_inner(
    a: &Assembly,
    v: Vector,
    sys: &TileSystem,
) -> Result<(Assembly, Shape), PumpError> {
    if !is_repetition(a, v) {
        return Err(PumpError::NotRepetition(v));
    }
    let s0 = a.domain();
    let c2 = find_nonconflicting_component(&s0, v)?;
    let c1 = translate_shape(&c2, -v);

    // C₁ must be a full connected component of (S+v)\S; this follows from
    // C₂'s choice one translate further out, and is re-checked here.
    let s1 = translate_shape(&s0, v);
    let band: BTreeSet<Point> = s1.iter().filter(|p| !s0.contains(*p)).collect();
    if !connected_components(&band).iter().any(|c| c == &c1) {
        return Err(PumpError::TheoremViolation(
            "pulled-back component is not a full component of (S+v)\\S".into(),
        ));
    }

    let extension = restriction(&a.translated(v), c1.cells())?;
    let grown = union_assemblies(a, &extension).map_err(|e| {
        PumpError::TheoremViolation(format!("pumped assembly failed to union: {e}"))
    })?;
    if !is_stable(&grown, sys)? {
        return Err(PumpError::TheoremViolation(
            "pumped assembly is not stable".into(),
        ));
    }
    if !is_repetition(&grown, v) {
        return Err(PumpError::TheoremViolation(
            "pumped assembly lost the repetition".into(),
        ));
    }
    if grown.len() <= a.len() {
        return Err(PumpError::TheoremViolation(
            "pumped assembly did not grow".into(),
        ));
    }
    Ok((grown, c1))
}

/// One pump step: extends `a` by the translate-copy over the pulled-back
/// fresh component. Requires `v` to be a repetition of `a`; the result is
/// strictly larger and repetitious with the same `v`.
pub fn pump_once(a: &Assembly, v: Vector, sys: &TileSystem) -> Result<Assembly, PumpError> {
    pump_once_inner(a, v, sys).map(|(grown, _)| grown)
}

/// One entry of a [`PumpTrace`]: the assembly after a step and the cells
/// (`C₁`) that the step added.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PumpStep {
    pub assembly: Assembly,
    pub added: Shape,
}

/// The result of iterating [`pump_once`]: strictly growing assemblies, all
/// repetitious with the same starting vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PumpTrace {
    pub start: Assembly,
    pub v: Vector,
    pub steps: Vec<PumpStep>,
}

/// Runs `iterations` pump steps from `a`, all with the same `v`.
pub fn pump(
    a: &Assembly,
    v: Vector,
    iterations: usize,
    sys: &TileSystem,
) -> Result<PumpTrace, PumpError> {
    let mut trace = PumpTrace {
        start: a.clone(),
        v,
        steps: Vec::with_capacity(iterations),
    };
    let mut current = a.clone();
    for _ in 0..iterations {
        let (next, added) = pump_once_inner(&current, v, sys)?;
        trace.steps.push(PumpStep {
            assembly: next.clone(),
            added,
        });
        current = next;
    }
    Ok(trace)
}

/// Whether `a` appears (up to translation) among the producible assemblies
/// of at most `bound` tiles. Exact but exhaustive: only usable for small
/// bounds, which is the point — it is the independent check that the
/// pumping construction emits genuinely producible assemblies.
pub fn certify_producible_small(
    a: &Assembly,
    sys: &TileSystem,
    bound: usize,
) -> Result<bool, PumpError> {
    if a.len() > bound {
        return Err(PumpError::BoundExceeded {
            size: a.len(),
            bound,
        });
    }
    Ok(enumerate_producible(sys, bound)?.contains(&canonicalize(a)))
}
