//! The sawtooth curve showing that non-integer multipliers defeat the
//! forced-intersection theorem.

use super::chain::PolyChain;
use super::{rat_i, CurveError, RPoint, Rational};
use num_traits::{Signed, ToPrimitive};

/// Builds a simple chain from `(0,0)` to `(x,0)` that is exactly disjoint
/// from its own translate by `(1,0)`. Requires non-integer rational `x`
/// with `|x| > 1` and `eps > 0` (for `|x| < 1` the straight segment
/// already avoids its translate, so the generator rejects such `x`).
///
/// For `x > 1`, with `n = ⌊x⌋` and `y = x - n`, the chain is a zigzag of
/// `2n+1` segments: a rise `μ` from `(0,0)` to `(y, n·eps)`, a fall `ν`
/// on to `(1, -eps)`, and then alternating copies of both shifted by
/// `k·(1,-eps)`, ending with the final rise into `(x, 0)`. Shifting the
/// whole chain by `(1,0)` lands each piece exactly `eps` below the piece
/// it overlaps in `x`-extent, so the two never meet; the chain is
/// `x`-monotone, hence simple, for every positive `eps`. Negative `x`
/// reuses the construction for `|x|` reflected through the origin, which
/// preserves both properties.
pub fn gen_noninteger_example(x: &Rational, eps: &Rational) -> Result<PolyChain, CurveError> {
    if x.is_integer() {
        return Err(CurveError::Precondition(
            "x must not be an integer".into(),
        ));
    }
    if x.abs() < rat_i(1) {
        return Err(CurveError::Precondition(
            "|x| must exceed 1; below that the straight segment (0,0)-(x,0) already avoids its translate".into(),
        ));
    }
    if !eps.is_positive() {
        return Err(CurveError::Precondition("eps must be positive".into()));
    }
    let reflect = x.is_negative();
    let xa = x.abs();
    let n = xa
        .floor()
        .to_integer()
        .to_i64()
        .ok_or_else(|| CurveError::Precondition("|x| is out of range".into()))?;
    let y = &xa - rat_i(n);

    let mut verts = vec![RPoint::from_ints(0, 0)];
    for k in 0..=n {
        verts.push(RPoint::new(rat_i(k) + &y, rat_i(n - k) * eps));
        if k < n {
            verts.push(RPoint::new(rat_i(k + 1), rat_i(-(k + 1)) * eps));
        }
    }
    if reflect {
        for p in &mut verts {
            *p = RPoint::new(-&p.x, -&p.y);
        }
    }
    PolyChain::new(verts)
}
