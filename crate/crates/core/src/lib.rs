//! Two-handed (hierarchical) tile self-assembly at temperature τ, plus the
//! lattice and exact-rational curve machinery used to certify runaway growth
//! of repetitious assemblies.
//!
//! The crate is organized into four concern areas:
//!
//! * [`lattice`] — integer points, vectors, connected shapes, and the
//!   shifted-shape component walk that locates a fresh component of
//!   `(S+2v) \ (S+v)` disjoint from `S`.
//! * [`curves`] — polygonal chains over arbitrary-precision rationals:
//!   exact intersection, translation-disjointness (stripe) checks, curve
//!   systems with cyclic endpoint constraints, the reduction step that
//!   splices two curves into one, and witness search for systems with
//!   integer multipliers.
//! * [`tile`] — glues, tile types, assemblies, binding graphs, τ-stability
//!   via global min cut, two-handed attachment, and bounded enumeration of
//!   producible assemblies.
//! * [`pump`] — repetition detection (`α` overlapping a consistent translate
//!   of itself) and the pumping iteration that grows a repetitious assembly
//!   by one period per step, with small-size certification against the
//!   enumerator.
//!
//! Everything operates on immutable values and is safe to call from multiple
//! threads. Randomized-instance generators for stress testing live in
//! [`gen`].

pub mod curves;
pub mod gen;
pub mod lattice;
pub mod pump;
pub mod tile;

pub use curves::{PolyChain, RPoint, RVector, Rational};
pub use lattice::{Point, Shape, Vector};
pub use tile::{Assembly, TileSystem};
