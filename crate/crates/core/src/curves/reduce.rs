//! The splice reduction for curve systems with integer multipliers, and
//! exact witness search built on top of it.
//!
//! One [`reduce_step`] finds the first point `q` along chain 0 that lies on
//! some translate `φ_m + ℓ·v` (`m ≥ 1` as an index, `ℓ ≥ 0`), splices chain 0
//! up to `q` onto that translate from `q` onward, and drops the chains
//! between them. The spliced chain is always simple: before `q`, chain 0
//! touches no scanned translate at all, so the two pieces share exactly the
//! splice point. In the one degenerate case — `q` is chain 0's start and
//! simultaneously the translate's end, so the splice would be a single
//! point — the merged curve is dropped altogether and the next surviving
//! chain absorbs its multiplier instead. Iterating shrinks the system to a
//! single chain whose endpoints differ by an integer multiple of `v` —
//! which forces an intersection with its own `v`-translate. Mapping that
//! point back through per-segment provenance produces a violation of the
//! original system's disjointness conditions.

use super::chain::PolyChain;
use super::{
    self_translation_intersection, translate_chain, validate_curve_system, CurveError,
    CurveSystem, RPoint, RVector, Rational, ViolationKind, ViolationWitness,
};
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// Where a segment of a reduced chain came from: it is a (sub)segment of
/// `original chain [curve], segment [segment], translated by shift·v`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SegmentProvenance {
    pub curve: usize,
    pub shift: i64,
    pub segment: usize,
}

/// Per-chain, per-segment provenance for a (possibly reduced) system,
/// always relative to one fixed original system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Provenance {
    pub chains: Vec<Vec<SegmentProvenance>>,
}

impl Provenance {
    /// Every segment of `sys` maps to itself with shift 0.
    pub fn identity(sys: &CurveSystem) -> Provenance {
        Provenance {
            chains: sys
                .chains
                .iter()
                .enumerate()
                .map(|(c, chain)| {
                    (0..chain.segment_count())
                        .map(|s| SegmentProvenance {
                            curve: c,
                            shift: 0,
                            segment: s,
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Result of one reduction: the smaller system, composed provenance, and
/// the splice bookkeeping (which chain's translate absorbed chain 0, by
/// what multiple of `v`, and where).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reduction {
    pub system: CurveSystem,
    pub provenance: Provenance,
    /// Index (into the input system) of the chain whose translate was
    /// spliced onto the end of chain 0.
    pub merged_index: usize,
    /// The translate multiple `ℓ` of that chain.
    pub shift: i64,
    pub cut_point: RPoint,
}

/// Integer `ℓ ≥ 0` range where `moving + ℓ·v` can still touch `target`,
/// from bounding boxes. `None` when no such `ℓ` exists.
fn shift_window(target: &PolyChain, moving: &PolyChain, v: &RVector) -> Option<(i64, i64)> {
    let (t_min_x, t_min_y, t_max_x, t_max_y) = target.bounds();
    let (m_min_x, m_min_y, m_max_x, m_max_y) = moving.bounds();
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    // Conditions: ℓ·w ≤ c (upper = true) or ℓ·w ≥ c (upper = false).
    let conditions = [
        (&v.x, t_max_x - m_min_x, true),
        (&v.x, t_min_x - m_max_x, false),
        (&v.y, t_max_y - m_min_y, true),
        (&v.y, t_min_y - m_max_y, false),
    ];
    for (w, c, upper) in conditions {
        if w.is_zero() {
            let sat = if upper { !c.is_negative() } else { !c.is_positive() };
            if !sat {
                return None;
            }
            continue;
        }
        let bound = &c / w;
        let acts_as_upper = upper == w.is_positive();
        if acts_as_upper {
            hi = Some(match hi {
                Some(h) if h <= bound => h,
                _ => bound,
            });
        } else {
            lo = Some(match lo {
                Some(l) if l >= bound => l,
                _ => bound,
            });
        }
    }
    let lo_int = lo
        .map(|l| l.ceil().to_integer().to_i64().unwrap_or(i64::MAX))
        .unwrap_or(0)
        .max(0);
    let hi_int = hi?.floor().to_integer().to_i64()?;
    if hi_int < lo_int {
        None
    } else {
        Some((lo_int, hi_int))
    }
}

fn check_reduce_preconditions(sys: &CurveSystem) -> Result<(), CurveError> {
    if !sys.all_multipliers_integer() {
        return Err(CurveError::Precondition(
            "all multipliers must be integers".into(),
        ));
    }
    let report = validate_curve_system(sys);
    if !report.condition1_holds() {
        return Err(CurveError::Precondition(format!(
            "endpoint condition fails: {}",
            report.endpoint_failures[0]
        )));
    }
    Ok(())
}

/// One splice reduction. Requires `k ≥ 2`, integer multipliers, and the
/// endpoint condition; produces a strictly smaller system whose endpoint
/// condition again holds exactly — `k' = k - merged_index` chains normally,
/// one fewer when the splice degenerates to a point and the merged curve is
/// dropped outright.
pub fn reduce_step(sys: &CurveSystem, prov: &Provenance) -> Result<Reduction, CurveError> {
    if sys.k() < 2 {
        return Err(CurveError::Precondition(
            "reduction needs at least two chains".into(),
        ));
    }
    check_reduce_preconditions(sys)?;

    let chain0 = &sys.chains[0];
    // Candidate translates (chain index, shift, translated chain), ordered.
    let mut candidates: Vec<(usize, i64, PolyChain)> = Vec::new();
    for c in 1..sys.k() {
        if let Some((lo, hi)) = shift_window(chain0, &sys.chains[c], &sys.v) {
            for l in lo..=hi {
                candidates.push((c, l, translate_chain(&sys.chains[c], &sys.v, l)));
            }
        }
    }
    if candidates.is_empty() {
        return Err(CurveError::TheoremViolation(
            "no translate in bounding-box range despite endpoint condition".into(),
        ));
    }

    // First point along chain 0 lying on any candidate; ties at the same
    // parameter go to the smallest chain index, then the smallest shift —
    // candidate order plus strict improvement gives exactly that.
    let mut found: Option<(usize, Rational, usize, i64, RPoint)> = None;
    for seg in 0..chain0.segment_count() {
        let (a1, b1) = chain0.segment(seg);
        for (c, l, translated) in &candidates {
            for j in 0..translated.segment_count() {
                let (a2, b2) = translated.segment(j);
                if let Some((t, p)) = super::chain::segment_common_point(a1, b1, a2, b2) {
                    let better = match &found {
                        Some((_, bt, _, _, _)) => t < *bt,
                        None => true,
                    };
                    if better {
                        found = Some((seg, t, *c, *l, p));
                    }
                }
            }
        }
        if found.is_some() {
            break;
        }
    }
    let (seg_a, _, merged, shift, q) = found.ok_or_else(|| {
        CurveError::TheoremViolation(
            "chain 0 meets no candidate translate, yet its endpoint lies on one".into(),
        )
    })?;

    let target = translate_chain(&sys.chains[merged], &sys.v, shift);
    let positions = target.positions_of(&q);
    let (seg_b, param_b) = positions
        .first()
        .cloned()
        .ok_or_else(|| CurveError::TheoremViolation("cut point left the target translate".into()))?;

    // Splice: chain 0 up to q, then the target translate from q on.
    let mut verts: Vec<RPoint> = chain0.vertices()[..=seg_a].to_vec();
    if *verts.last().unwrap() != q {
        verts.push(q.clone());
    }
    let prefix_segs = verts.len() - 1;
    let suffix_first = if param_b < Rational::from_integer(1.into()) {
        seg_b
    } else {
        seg_b + 1
    };
    verts.extend(target.vertices()[suffix_first + 1..].iter().cloned());

    let shift_rat = super::rat_i(shift);
    if verts.len() < 2 {
        // Degenerate splice: q is chain 0's start and also the target
        // translate's end, so the merged curve would be a single point.
        // Drop chains 0..=merged instead. The last surviving chain still
        // ends at p_0 + (n_0 + ℓ)·v, and p_0 equals the new first base
        // point shifted by (n_{merged+1} + ℓ)·v, so folding both arrival
        // multipliers and the translate into the new first multiplier
        // keeps the endpoint condition exact. `merged` cannot be the last
        // chain: that would force n_0 + ℓ = 0, impossible for a positive
        // multiplier and ℓ ≥ 0.
        if merged + 1 >= sys.k() {
            return Err(CurveError::TheoremViolation(
                "degenerate splice at the final chain".into(),
            ));
        }
        let mut chains = Vec::new();
        let mut base_points = Vec::new();
        let mut multipliers = Vec::new();
        let mut prov_chains = Vec::new();
        for idx in merged + 1..sys.k() {
            chains.push(translate_chain(&sys.chains[idx], &sys.v, shift));
            base_points.push(sys.base_points[idx].shift(&sys.v, &shift_rat));
            multipliers.push(if idx == merged + 1 {
                &(&sys.multipliers[0] + &sys.multipliers[idx]) + &shift_rat
            } else {
                sys.multipliers[idx].clone()
            });
            prov_chains.push(
                prov.chains[idx]
                    .iter()
                    .map(|e| SegmentProvenance {
                        curve: e.curve,
                        shift: e.shift + shift,
                        segment: e.segment,
                    })
                    .collect(),
            );
        }
        let system = CurveSystem::new(chains, base_points, multipliers, sys.v.clone())?;
        let report = validate_curve_system(&system);
        if !report.condition1_holds() {
            return Err(CurveError::TheoremViolation(format!(
                "reduced system broke the endpoint condition: {}",
                report.endpoint_failures[0]
            )));
        }
        return Ok(Reduction {
            system,
            provenance: Provenance {
                chains: prov_chains,
            },
            merged_index: merged,
            shift,
            cut_point: q,
        });
    }

    let spliced = PolyChain::from_validated(verts)
        .map_err(|e| CurveError::TheoremViolation(format!("spliced chain is not simple: {e}")))?;

    let mut spliced_prov: Vec<SegmentProvenance> = prov.chains[0][..prefix_segs].to_vec();
    for entry in &prov.chains[merged][suffix_first..] {
        spliced_prov.push(SegmentProvenance {
            curve: entry.curve,
            shift: entry.shift + shift,
            segment: entry.segment,
        });
    }
    debug_assert_eq!(spliced_prov.len(), spliced.segment_count());

    let mut chains = vec![spliced];
    let mut base_points = vec![sys.base_points[0].clone()];
    let mut multipliers = vec![&sys.multipliers[0] + &shift_rat];
    let mut prov_chains = vec![spliced_prov];
    for idx in merged + 1..sys.k() {
        chains.push(translate_chain(&sys.chains[idx], &sys.v, shift));
        base_points.push(sys.base_points[idx].shift(&sys.v, &shift_rat));
        multipliers.push(sys.multipliers[idx].clone());
        prov_chains.push(
            prov.chains[idx]
                .iter()
                .map(|e| SegmentProvenance {
                    curve: e.curve,
                    shift: e.shift + shift,
                    segment: e.segment,
                })
                .collect(),
        );
    }
    let system = CurveSystem::new(chains, base_points, multipliers, sys.v.clone())?;
    let report = validate_curve_system(&system);
    if !report.condition1_holds() {
        return Err(CurveError::TheoremViolation(format!(
            "reduced system broke the endpoint condition: {}",
            report.endpoint_failures[0]
        )));
    }
    Ok(Reduction {
        system,
        provenance: Provenance {
            chains: prov_chains,
        },
        merged_index: merged,
        shift,
        cut_point: q,
    })
}

/// How [`find_violation`] hunts for its witness.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ViolationMode {
    /// Scan every chain against its own `v`-translate and every chain pair.
    Direct,
    /// Iterate [`reduce_step`] to a single chain, take the forced
    /// self-translation intersection, and map it back through provenance.
    Reduce,
}

/// Diagnostics from a reduce-mode search.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct SearchStats {
    pub reductions: usize,
    /// True when provenance mapping alone did not classify a violation and
    /// the search fell back to a direct scan of the original system.
    pub used_fallback: bool,
}

fn direct_witness(sys: &CurveSystem) -> Result<ViolationWitness, CurveError> {
    let report = validate_curve_system(sys);
    if let Some(w) = report.self_overlap_failures.first() {
        return Ok(w.clone());
    }
    if let Some(w) = report.pairwise_failures.first() {
        return Ok(w.clone());
    }
    Err(CurveError::TheoremViolation(
        "integer-multiplier system satisfies all disjointness conditions".into(),
    ))
}

/// All `(curve, shift)` pairs such that `q` provably lies on
/// `original chain [curve] + shift·v`, read off the reduced chain's
/// provenance at every position of `q` (junction points contribute both
/// incident segments) and re-checked exactly against the original system.
fn provenance_facts(
    q: &RPoint,
    reduced: &PolyChain,
    entries: &[SegmentProvenance],
    original: &CurveSystem,
) -> BTreeSet<(usize, i64)> {
    let mut facts = BTreeSet::new();
    for (seg, _) in reduced.positions_of(q) {
        let e = entries[seg];
        let back = q.shift(&original.v, &-super::rat_i(e.shift));
        if original.chains[e.curve].contains_point(&back) {
            facts.insert((e.curve, e.shift));
        }
    }
    facts
}

fn witness_from_facts(
    sys: &CurveSystem,
    q: &RPoint,
    facts: &BTreeSet<(usize, i64)>,
) -> Option<ViolationWitness> {
    let list: Vec<(usize, i64)> = facts.iter().copied().collect();
    for (a, &(c1, s1)) in list.iter().enumerate() {
        for &(c2, s2) in &list[a + 1..] {
            if c1 == c2 && s1 != s2 {
                // Two translates of one curve meet, so the curve cannot
                // avoid its own adjacent translate; find that point.
                let shifted = translate_chain(&sys.chains[c1], &sys.v, 1);
                if let Some(hit) = sys.chains[c1].first_intersection(&shifted) {
                    return Some(ViolationWitness {
                        kind: ViolationKind::SelfTranslation,
                        chain_i: c1,
                        chain_j: c1,
                        shift: 1,
                        point: hit.point,
                    });
                }
            } else if c1 != c2 && s1 == s2 {
                return Some(ViolationWitness {
                    kind: ViolationKind::Pairwise,
                    chain_i: c1,
                    chain_j: c2,
                    shift: 0,
                    point: q.shift(&sys.v, &-super::rat_i(s1)),
                });
            }
        }
    }
    None
}

/// Finds an exact witness that an integer-multiplier system satisfying the
/// endpoint condition breaks one of the two disjointness conditions — which
/// it always must.
pub fn find_violation(
    sys: &CurveSystem,
    mode: ViolationMode,
) -> Result<ViolationWitness, CurveError> {
    find_violation_detailed(sys, mode).map(|(w, _)| w)
}

/// [`find_violation`] plus search diagnostics.
pub fn find_violation_detailed(
    sys: &CurveSystem,
    mode: ViolationMode,
) -> Result<(ViolationWitness, SearchStats), CurveError> {
    check_reduce_preconditions(sys)?;
    let mut stats = SearchStats::default();
    let witness = match mode {
        ViolationMode::Direct => direct_witness(sys)?,
        ViolationMode::Reduce => {
            let mut current = sys.clone();
            let mut prov = Provenance::identity(sys);
            while current.k() > 1 {
                let r = reduce_step(&current, &prov)?;
                current = r.system;
                prov = r.provenance;
                stats.reductions += 1;
            }
            let final_chain = &current.chains[0];
            let n = current.multipliers[0]
                .to_integer()
                .to_u32()
                .ok_or_else(|| {
                    CurveError::Precondition("accumulated multiplier exceeds u32".into())
                })?;
            let q = self_translation_intersection(final_chain, &current.v, n)?;
            let q_prev = q.shift(&current.v, &-super::rat_i(1));
            let mut facts = provenance_facts(&q, final_chain, &prov.chains[0], sys);
            for (c, s) in provenance_facts(&q_prev, final_chain, &prov.chains[0], sys) {
                facts.insert((c, s + 1));
            }
            match witness_from_facts(sys, &q, &facts) {
                Some(w) => w,
                None => {
                    stats.used_fallback = true;
                    direct_witness(sys)?
                }
            }
        }
    };
    if !witness.verify(sys) {
        return Err(CurveError::TheoremViolation(format!(
            "produced witness failed exact verification: {witness}"
        )));
    }
    Ok((witness, stats))
}
