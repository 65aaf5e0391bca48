//! Polygonal chains over arbitrary-precision rationals and the translation
//! machinery for curve systems.
//!
//! A *curve system* is a cyclic family of simple chains `φ_1..φ_k` with base
//! points `p_i`, positive multipliers `n_i`, and a nonzero vector `v`, tied
//! together by three conditions:
//!
//! 1. `φ_i` runs from `p_i` to `p_{i+1} + n_{i+1}·v` (indices cyclic);
//! 2. `φ_i` is disjoint from its own translate `φ_i + v`;
//! 3. distinct curves are pairwise disjoint.
//!
//! With all multipliers integers, the three conditions are jointly
//! unsatisfiable; [`find_violation`] produces an exact witness, either by
//! directly scanning all pairs or by iterating [`reduce_step`] — which
//! splices `φ_1` into a translate of another curve at their first meeting
//! point — down to a single curve and mapping the forced self-translation
//! intersection back through segment provenance. Non-integer multipliers
//! escape the theorem: [`gen_noninteger_example`] builds the classic
//! sawtooth curve from `(0,0)` to `(x,0)` avoiding its `(1,0)`-translate.
//!
//! All arithmetic is exact (`num`'s `BigRational`); every reported point
//! lies exactly on the chains it names.

mod chain;
mod noninteger;
mod reduce;

pub use chain::{ChainHit, PolyChain};
pub use noninteger::gen_noninteger_example;
pub use reduce::{
    find_violation, find_violation_detailed, reduce_step, Provenance, Reduction,
    SearchStats, SegmentProvenance, ViolationMode,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A point of the rational plane.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RPoint {
    pub x: Rational,
    pub y: Rational,
}

impl RPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RPoint::new(rat_i(x), rat_i(y))
    }

    pub fn shift(&self, v: &RVector, k: &Rational) -> RPoint {
        RPoint::new(&self.x + &v.x * k, &self.y + &v.y * k)
    }
}

impl std::fmt::Display for RPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A displacement of the rational plane.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RVector {
    pub x: Rational,
    pub y: Rational,
}

impl RVector {
    pub fn new(x: Rational, y: Rational) -> Self {
        RVector { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RVector::new(rat_i(x), rat_i(y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scaled(&self, k: &Rational) -> RVector {
        RVector::new(&self.x * k, &self.y * k)
    }

    pub fn norm_squared(&self) -> Rational {
        &self.x * &self.x + &self.y * &self.y
    }
}

impl std::fmt::Display for RVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum CurveError {
    #[error("chain needs at least two vertices")]
    TooFewVertices,
    #[error("consecutive chain vertices {0} and {1} coincide")]
    DegenerateSegment(usize, usize),
    #[error("chain is not simple: segments {0} and {1} overlap beyond shared endpoints")]
    NotSimple(usize, usize),
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("malformed curve system: {0}")]
    MalformedSystem(String),
    #[error("multiplier {0} must be positive")]
    NonpositiveMultiplier(usize),
    #[error("curve endpoint mismatch: expected {expected}, found {found}")]
    EndpointMismatch { expected: String, found: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("provably-impossible configuration reached: {0}")]
    TheoremViolation(String),
}

/// What a [`ViolationWitness`] claims about a curve system.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ViolationKind {
    /// `point` lies on both `φ_i` and `φ_j + shift·v` with `i = j`,
    /// `shift ≥ 1`: the curve meets a translate of itself.
    SelfTranslation,
    /// `point` lies on both `φ_i` and `φ_j` with `i ≠ j`, `shift = 0`.
    Pairwise,
    /// `point` is an actual endpoint of `φ_i` that differs from the
    /// endpoint condition 1 requires.
    Endpoint,
}

impl std::fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ViolationKind::SelfTranslation => "self-translation",
            ViolationKind::Pairwise => "pairwise",
            ViolationKind::Endpoint => "endpoint",
        };
        f.write_str(s)
    }
}

/// An exact certificate that a curve system breaks one of its conditions:
/// `point` lies on `φ_i` and on `φ_j + shift·v` (for [`ViolationKind::Endpoint`],
/// `point` is the offending actual endpoint instead).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ViolationWitness {
    pub kind: ViolationKind,
    pub chain_i: usize,
    pub chain_j: usize,
    pub shift: i64,
    pub point: RPoint,
}

impl ViolationWitness {
    /// Exact re-check of the claim against `sys`.
    pub fn verify(&self, sys: &CurveSystem) -> bool {
        let k = sys.k();
        if self.chain_i >= k || self.chain_j >= k {
            return false;
        }
        match self.kind {
            ViolationKind::SelfTranslation | ViolationKind::Pairwise => {
                if self.kind == ViolationKind::SelfTranslation
                    && (self.chain_i != self.chain_j || self.shift < 1)
                {
                    return false;
                }
                if self.kind == ViolationKind::Pairwise
                    && (self.chain_i == self.chain_j || self.shift != 0)
                {
                    return false;
                }
                let back = self.point.shift(&sys.v, &-rat_i(self.shift));
                sys.chains[self.chain_i].contains_point(&self.point)
                    && sys.chains[self.chain_j].contains_point(&back)
            }
            ViolationKind::Endpoint => {
                let chain = &sys.chains[self.chain_i];
                let start_bad = *chain.start() == self.point
                    && self.point != sys.base_points[self.chain_i];
                let succ = (self.chain_i + 1) % k;
                let required = sys.base_points[succ].shift(&sys.v, &sys.multipliers[succ]);
                let end_bad = *chain.end() == self.point && self.point != required;
                start_bad || end_bad
            }
        }
    }
}

impl std::fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} i={} j={} shift={} point={}",
            self.kind, self.chain_i, self.chain_j, self.shift, self.point
        )
    }
}

/// A family of chains with base points, multipliers, and a shift vector.
/// Construction checks only well-formedness (matching lengths, positive
/// multipliers, nonzero `v`); the three conditions are examined by
/// [`validate_curve_system`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveSystem {
    pub chains: Vec<PolyChain>,
    pub base_points: Vec<RPoint>,
    pub multipliers: Vec<Rational>,
    pub v: RVector,
}

impl CurveSystem {
    pub fn new(
        chains: Vec<PolyChain>,
        base_points: Vec<RPoint>,
        multipliers: Vec<Rational>,
        v: RVector,
    ) -> Result<Self, CurveError> {
        if chains.is_empty() {
            return Err(CurveError::MalformedSystem("no chains".into()));
        }
        if chains.len() != base_points.len() || chains.len() != multipliers.len() {
            return Err(CurveError::MalformedSystem(format!(
                "{} chains, {} base points, {} multipliers",
                chains.len(),
                base_points.len(),
                multipliers.len()
            )));
        }
        if v.is_zero() {
            return Err(CurveError::ZeroVector);
        }
        for (i, m) in multipliers.iter().enumerate() {
            if !m.is_positive() {
                return Err(CurveError::NonpositiveMultiplier(i));
            }
        }
        Ok(CurveSystem {
            chains,
            base_points,
            multipliers,
            v,
        })
    }

    pub fn k(&self) -> usize {
        self.chains.len()
    }

    pub fn all_multipliers_integer(&self) -> bool {
        self.multipliers.iter().all(Rational::is_integer)
    }

    /// The endpoint condition 1 requires of `φ_i`'s last vertex:
    /// `p_{i+1} + n_{i+1}·v` (cyclic).
    pub fn required_end(&self, i: usize) -> RPoint {
        let succ = (i + 1) % self.k();
        self.base_points[succ].shift(&self.v, &self.multipliers[succ])
    }
}

/// Per-condition outcome of [`validate_curve_system`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SystemReport {
    pub endpoint_failures: Vec<ViolationWitness>,
    pub self_overlap_failures: Vec<ViolationWitness>,
    pub pairwise_failures: Vec<ViolationWitness>,
}

impl SystemReport {
    pub fn condition1_holds(&self) -> bool {
        self.endpoint_failures.is_empty()
    }

    pub fn condition2_holds(&self) -> bool {
        self.self_overlap_failures.is_empty()
    }

    pub fn condition3_holds(&self) -> bool {
        self.pairwise_failures.is_empty()
    }

    pub fn all_hold(&self) -> bool {
        self.condition1_holds() && self.condition2_holds() && self.condition3_holds()
    }
}

/// Checks the three conditions and reports every failure with an exact
/// witness: wrong endpoints (condition 1), a curve meeting its own
/// `v`-translate (condition 2), and distinct curves meeting (condition 3).
pub fn validate_curve_system(sys: &CurveSystem) -> SystemReport {
    let mut report = SystemReport::default();
    let k = sys.k();
    for i in 0..k {
        let chain = &sys.chains[i];
        if *chain.start() != sys.base_points[i] {
            report.endpoint_failures.push(ViolationWitness {
                kind: ViolationKind::Endpoint,
                chain_i: i,
                chain_j: i,
                shift: 0,
                point: chain.start().clone(),
            });
        }
        let required = sys.required_end(i);
        if *chain.end() != required {
            report.endpoint_failures.push(ViolationWitness {
                kind: ViolationKind::Endpoint,
                chain_i: i,
                chain_j: (i + 1) % k,
                shift: 0,
                point: chain.end().clone(),
            });
        }
    }
    for i in 0..k {
        let shifted = translate_chain(&sys.chains[i], &sys.v, 1);
        if let Some(hit) = sys.chains[i].first_intersection(&shifted) {
            report.self_overlap_failures.push(ViolationWitness {
                kind: ViolationKind::SelfTranslation,
                chain_i: i,
                chain_j: i,
                shift: 1,
                point: hit.point,
            });
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if let Some(hit) = sys.chains[i].first_intersection(&sys.chains[j]) {
                report.pairwise_failures.push(ViolationWitness {
                    kind: ViolationKind::Pairwise,
                    chain_i: i,
                    chain_j: j,
                    shift: 0,
                    point: hit.point,
                });
            }
        }
    }
    report
}

/// A common point of two chains, or `None` if disjoint. Deterministic: the
/// common point least along `a`'s parametrization (segment index, then
/// parameter within the segment; collinear overlaps report their earliest
/// point). Endpoint contact counts.
pub fn chain_intersection(a: &PolyChain, b: &PolyChain) -> Option<RPoint> {
    a.first_intersection(b).map(|h| h.point)
}

/// The chain translated by `k·v`.
pub fn translate_chain(a: &PolyChain, v: &RVector, k: i64) -> PolyChain {
    a.translated(&v.scaled(&rat_i(k)))
}

/// Verifies the stripe property: if `φ` misses `φ + v`, then all translates
/// `φ + k·v` for `k ∈ [-k_range, k_range]` are pairwise disjoint. Since
/// `(φ + a·v) ∩ (φ + b·v)` is a translate of `φ ∩ (φ + (b-a)·v)`, it
/// suffices to scan differences `d ∈ [1, 2·k_range]`; a hit is returned as a
/// witness (a hit at `d = 1` means the hypothesis itself fails). `None`
/// means the whole family is pairwise disjoint.
pub fn check_stripe_lemma(
    phi: &PolyChain,
    v: &RVector,
    k_range: u32,
) -> Result<Option<ViolationWitness>, CurveError> {
    if v.is_zero() {
        return Err(CurveError::ZeroVector);
    }
    for d in 1..=2 * k_range as i64 {
        let shifted = translate_chain(phi, v, d);
        if let Some(hit) = phi.first_intersection(&shifted) {
            return Ok(Some(ViolationWitness {
                kind: ViolationKind::SelfTranslation,
                chain_i: 0,
                chain_j: 0,
                shift: d,
                point: hit.point,
            }));
        }
    }
    Ok(None)
}

/// Smallest `K` that makes a `[-K, K]` stripe scan exhaustive for `phi`:
/// translates further than the curve's diameter apart cannot meet, so
/// `K = ⌈diameter/|v|⌉ + 1`.
pub fn stripe_bound(phi: &PolyChain, v: &RVector) -> Result<u32, CurveError> {
    if v.is_zero() {
        return Err(CurveError::ZeroVector);
    }
    let d2 = phi.diameter_squared();
    let v2 = v.norm_squared();
    let mut k = 0u32;
    while rat_i(k as i64) * rat_i(k as i64) * &v2 < d2 {
        k += 1;
    }
    Ok(k + 1)
}

/// For a simple chain running from `p` to `p + n·v` with integer `n ≥ 1`,
/// the curve must meet its own `v`-translate; returns the meeting point
/// least along `phi`'s parametrization.
pub fn self_translation_intersection(
    phi: &PolyChain,
    v: &RVector,
    n: u32,
) -> Result<RPoint, CurveError> {
    if v.is_zero() {
        return Err(CurveError::ZeroVector);
    }
    if n == 0 {
        return Err(CurveError::Precondition("multiplier n must be ≥ 1".into()));
    }
    let expected = phi.start().shift(v, &rat_i(n as i64));
    if *phi.end() != expected {
        return Err(CurveError::EndpointMismatch {
            expected: expected.to_string(),
            found: phi.end().to_string(),
        });
    }
    let shifted = translate_chain(phi, v, 1);
    match phi.first_intersection(&shifted) {
        Some(hit) => Ok(hit.point),
        None => Err(CurveError::TheoremViolation(
            "chain from p to p+n·v avoids its v-translate".into(),
        )),
    }
}
