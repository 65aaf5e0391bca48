//! Two-handed attachment and bounded enumeration of producible assemblies.

use super::{canonicalize, union_assemblies, Assembly, Side, TileError, TileSystem};
use crate::lattice::Vector;
use std::collections::BTreeSet;

fn check_names(a: &Assembly, sys: &TileSystem) -> Result<(), TileError> {
    for (_, name) in a.tiles() {
        if sys.tile(name).is_none() {
            return Err(TileError::UnknownTile(name.to_string()));
        }
    }
    Ok(())
}

/// Every translation `w` such that `a` and `b + w` occupy disjoint cells
/// and the bonds across their interface sum to at least τ. The sum matters:
/// several sub-τ bonds may jointly reach the threshold, which is how
/// cooperation between multi-tile assemblies works at τ=2. Candidates are
/// limited to placements putting some cell of `b` next to some cell of `a`;
/// all others have an empty interface.
pub fn attachments(
    a: &Assembly,
    b: &Assembly,
    sys: &TileSystem,
) -> Result<BTreeSet<Vector>, TileError> {
    check_names(a, sys)?;
    check_names(b, sys)?;
    let tau = u64::from(sys.temperature());
    let mut candidates = BTreeSet::new();
    for (pa, _) in a.tiles() {
        for side in Side::ALL {
            let target = pa + side.offset();
            for (pb, _) in b.tiles() {
                candidates.insert(target - pb);
            }
        }
    }
    let mut out = BTreeSet::new();
    for w in candidates {
        if a.tiles().any(|(p, _)| b.get(&(p - w)).is_some()) {
            continue; // overlap
        }
        let mut total = 0u64;
        for (p, name) in a.tiles() {
            let tile = sys.tile(name).unwrap();
            for side in Side::ALL {
                let q = p + side.offset();
                if let Some(other_name) = b.get(&(q - w)) {
                    let other = sys.tile(other_name).unwrap();
                    total += u64::from(sys.strength(tile.glue(side), other.glue(side.opposite())));
                }
            }
        }
        if total >= tau {
            out.insert(w);
        }
    }
    Ok(out)
}

/// All producible assemblies with at most `max_size` tiles, as canonical
/// forms: the closure of the single-tile assemblies under two-handed
/// attachment. Sound and complete within the bound because every
/// producible assembly is either a singleton or the τ-stable union of two
/// strictly smaller producible assemblies. Runtime grows steeply with
/// `max_size`; intended for small bounds.
pub fn enumerate_producible(
    sys: &TileSystem,
    max_size: usize,
) -> Result<BTreeSet<Assembly>, TileError> {
    if max_size == 0 {
        return Err(TileError::EmptyAssembly);
    }
    let mut known: BTreeSet<Assembly> = sys
        .tile_types()
        .map(|t| Assembly::singleton(crate::lattice::Point::new(0, 0), &t.name))
        .collect();
    let mut queue: Vec<Assembly> = known.iter().cloned().collect();
    while let Some(x) = queue.pop() {
        let snapshot: Vec<Assembly> = known.iter().cloned().collect();
        for y in snapshot {
            if x.len() + y.len() > max_size {
                continue;
            }
            for w in attachments(&x, &y, sys)? {
                let union = union_assemblies(&x, &y.translated(w))
                    .expect("attachment placements always union cleanly");
                let c = canonicalize(&union);
                if known.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
    }
    Ok(known)
}

/// Whether no producible assembly of at most `probe_size` tiles can attach
/// to `a`. This bounds true terminality from one side only: a `true`
/// verdict says nothing about larger attachers, so report the probe bound
/// alongside it.
pub fn is_terminal_bounded(
    a: &Assembly,
    sys: &TileSystem,
    probe_size: usize,
) -> Result<bool, TileError> {
    check_names(a, sys)?;
    for b in enumerate_producible(sys, probe_size)? {
        if !attachments(a, &b, sys)?.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}
