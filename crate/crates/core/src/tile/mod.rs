//! Two-handed tile assembly: tile systems, assemblies, binding graphs with
//! τ-stability, and bounded producibility enumeration.
//!
//! A tile type is a named unit square with a glue on each side; a symmetric
//! strength table maps glue pairs to nonnegative integers (undeclared pairs
//! and the reserved `null` glue bind with strength 0). Assemblies place tile
//! types on a connected set of lattice cells. An assembly is *τ-stable* when
//! every cut of its binding graph carries total strength at least the
//! system's temperature τ; two stable assemblies attach when they can be
//! translated to abut without overlap such that the interface bonds sum to
//! at least τ — note the sum: several weak bonds may cooperate. Producible
//! assemblies are the closure of singletons under such attachments.

mod growth;
mod stability;

pub use growth::{attachments, enumerate_producible, is_terminal_bounded};
pub use stability::{
    binding_graph, exhaustive_min_cut, is_stable, min_cut_weight, BindingEdge, BindingGraph,
};

use crate::lattice::{Point, Shape, Vector};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum TileError {
    #[error("temperature must be at least 1")]
    BadTemperature,
    #[error("bad label {0:?}: labels are nonempty runs of [A-Za-z0-9_.-] other than \"null\"")]
    BadLabel(String),
    #[error("glue pair ({0}, {1}) declared twice")]
    DuplicateStrength(String, String),
    #[error("tile type {0} declared twice")]
    DuplicateTile(String),
    #[error("tile name {0} does not exist in the system")]
    UnknownTile(String),
    #[error("assembly must place at least one tile")]
    EmptyAssembly,
    #[error("assembly domain is not 4-connected")]
    DisconnectedAssembly,
    #[error("assemblies disagree at {0}")]
    Conflict(Point),
    #[error("{0} is outside the assembly's domain")]
    NotSubdomain(Point),
}

/// One side of a tile; the lattice convention is y-up, so north is `(0,1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Side {
    North,
    East,
    South,
    West,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::North, Side::East, Side::South, Side::West];

    pub fn offset(self) -> Vector {
        match self {
            Side::North => Vector::new(0, 1),
            Side::East => Vector::new(1, 0),
            Side::South => Vector::new(0, -1),
            Side::West => Vector::new(-1, 0),
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::North => Side::South,
            Side::East => Side::West,
            Side::South => Side::North,
            Side::West => Side::East,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Side::North => 'N',
            Side::East => 'E',
            Side::South => 'S',
            Side::West => 'W',
        }
    }
}

/// A glue: either the inert `null` or a declared label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Glue {
    Null,
    Label(String),
}

impl Glue {
    pub fn label(s: &str) -> Glue {
        Glue::Label(s.to_string())
    }

    pub fn is_null(&self) -> bool {
        matches!(self, Glue::Null)
    }
}

impl std::fmt::Display for Glue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Glue::Null => f.write_str("null"),
            Glue::Label(s) => f.write_str(s),
        }
    }
}

fn valid_label(s: &str) -> bool {
    !s.is_empty()
        && s != "null"
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-'))
}

/// A named tile type with one glue per side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TileType {
    pub name: String,
    pub north: Glue,
    pub east: Glue,
    pub south: Glue,
    pub west: Glue,
}

impl TileType {
    pub fn glue(&self, side: Side) -> &Glue {
        match side {
            Side::North => &self.north,
            Side::East => &self.east,
            Side::South => &self.south,
            Side::West => &self.west,
        }
    }
}

/// A tile system: tile types, a temperature τ ≥ 1, and a symmetric strength
/// table over glue labels. Strengths are stored per unordered label pair;
/// looking up any pair involving `null` or an undeclared pair yields 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TileSystem {
    temperature: u32,
    tiles: BTreeMap<String, TileType>,
    strengths: BTreeMap<(String, String), u32>,
}

impl TileSystem {
    pub fn new(temperature: u32) -> Result<TileSystem, TileError> {
        if temperature == 0 {
            return Err(TileError::BadTemperature);
        }
        Ok(TileSystem {
            temperature,
            tiles: BTreeMap::new(),
            strengths: BTreeMap::new(),
        })
    }

    pub fn temperature(&self) -> u32 {
        self.temperature
    }

    /// Declares `str(a,b) = str(b,a) = s`. Each unordered pair may be
    /// declared once; redeclaration is rejected rather than overwritten.
    pub fn set_strength(&mut self, a: &str, b: &str, s: u32) -> Result<(), TileError> {
        for label in [a, b] {
            if !valid_label(label) {
                return Err(TileError::BadLabel(label.to_string()));
            }
        }
        let key = if a <= b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        if self.strengths.contains_key(&key) {
            return Err(TileError::DuplicateStrength(key.0, key.1));
        }
        self.strengths.insert(key, s);
        Ok(())
    }

    pub fn add_tile(&mut self, tile: TileType) -> Result<(), TileError> {
        if !valid_label(&tile.name) {
            return Err(TileError::BadLabel(tile.name));
        }
        for side in Side::ALL {
            if let Glue::Label(l) = tile.glue(side) {
                if !valid_label(l) {
                    return Err(TileError::BadLabel(l.clone()));
                }
            }
        }
        if self.tiles.contains_key(&tile.name) {
            return Err(TileError::DuplicateTile(tile.name));
        }
        self.tiles.insert(tile.name.clone(), tile);
        Ok(())
    }

    pub fn strength(&self, a: &Glue, b: &Glue) -> u32 {
        match (a, b) {
            (Glue::Label(a), Glue::Label(b)) => {
                let key = if a <= b {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                self.strengths.get(&key).copied().unwrap_or(0)
            }
            _ => 0,
        }
    }

    pub fn tile(&self, name: &str) -> Option<&TileType> {
        self.tiles.get(name)
    }

    pub fn tile_types(&self) -> impl Iterator<Item = &TileType> {
        self.tiles.values()
    }

    /// Declared strength entries in canonical (sorted-pair) order.
    pub fn declared_strengths(&self) -> impl Iterator<Item = (&str, &str, u32)> {
        self.strengths
            .iter()
            .map(|((a, b), s)| (a.as_str(), b.as_str(), *s))
    }
}

/// A placement of tile-type names on a nonempty, 4-connected set of cells.
/// Tile names are not resolved against any particular system until an
/// operation that needs glues receives one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Assembly {
    placement: BTreeMap<Point, String>,
}

impl Assembly {
    pub fn new(placement: BTreeMap<Point, String>) -> Result<Assembly, TileError> {
        if placement.is_empty() {
            return Err(TileError::EmptyAssembly);
        }
        let cells: BTreeSet<Point> = placement.keys().copied().collect();
        let start = *cells.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut frontier = vec![start];
        while let Some(p) = frontier.pop() {
            for q in p.neighbors() {
                if cells.contains(&q) && seen.insert(q) {
                    frontier.push(q);
                }
            }
        }
        if seen.len() != cells.len() {
            return Err(TileError::DisconnectedAssembly);
        }
        Ok(Assembly { placement })
    }

    pub fn singleton(p: Point, name: &str) -> Assembly {
        Assembly {
            placement: BTreeMap::from([(p, name.to_string())]),
        }
    }

    pub fn len(&self) -> usize {
        self.placement.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty placements
    }

    pub fn get(&self, p: &Point) -> Option<&str> {
        self.placement.get(p).map(String::as_str)
    }

    pub fn tiles(&self) -> impl Iterator<Item = (Point, &str)> {
        self.placement.iter().map(|(p, n)| (*p, n.as_str()))
    }

    /// The occupied cells as a validated shape.
    pub fn domain(&self) -> Shape {
        Shape::new(self.placement.keys().copied().collect())
            .expect("assembly domains are nonempty and connected by construction")
    }

    pub fn translated(&self, w: Vector) -> Assembly {
        Assembly {
            placement: self
                .placement
                .iter()
                .map(|(p, n)| (*p + w, n.clone()))
                .collect(),
        }
    }
}

/// The translate of `a` whose bounding box has its minimum corner at the
/// origin. Two assemblies are translates of each other exactly when their
/// canonical forms are equal, and canonicalization is idempotent.
pub fn canonicalize(a: &Assembly) -> Assembly {
    let min_x = a.tiles().map(|(p, _)| p.x).min().unwrap();
    let min_y = a.tiles().map(|(p, _)| p.y).min().unwrap();
    a.translated(Vector::new(-min_x, -min_y))
}

/// Whether `a` and `b` carry equal tile names on every shared cell
/// (vacuously true for disjoint domains).
pub fn consistent(a: &Assembly, b: &Assembly) -> bool {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .tiles()
        .all(|(p, name)| large.get(&p).map_or(true, |other| other == name))
}

/// The union of two consistent assemblies. Errors name the first
/// conflicting cell (in row-major order) or report a disconnected result.
pub fn union_assemblies(a: &Assembly, b: &Assembly) -> Result<Assembly, TileError> {
    let mut merged = a.placement.clone();
    for (p, name) in b.tiles() {
        match merged.get(&p) {
            Some(existing) if existing != name => return Err(TileError::Conflict(p)),
            _ => {
                merged.insert(p, name.to_string());
            }
        }
    }
    Assembly::new(merged)
}

/// The assembly restricted to `cells`, which must be a nonempty connected
/// subset of its domain.
pub fn restriction(a: &Assembly, cells: &BTreeSet<Point>) -> Result<Assembly, TileError> {
    let mut map = BTreeMap::new();
    for p in cells {
        match a.get(p) {
            Some(name) => {
                map.insert(*p, name.to_string());
            }
            None => return Err(TileError::NotSubdomain(*p)),
        }
    }
    Assembly::new(map)
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_builder_rejects_bad_input() {
        assert_eq!(TileSystem::new(0), Err(TileError::BadTemperature));
        let mut sys = TileSystem::new(2).unwrap();
        assert_eq!(
            sys.set_strength("null", "a", 1),
            Err(TileError::BadLabel("null".into()))
        );
        assert_eq!(
            sys.set_strength("a b", "c", 1),
            Err(TileError::BadLabel("a b".into()))
        );
        sys.set_strength("a", "b", 2).unwrap();
        assert_eq!(
            sys.set_strength("b", "a", 1),
            Err(TileError::DuplicateStrength("a".into(), "b".into()))
        );
        let t = TileType {
            name: "t".into(),
            north: Glue::Null,
            east: Glue::label("a"),
            south: Glue::Null,
            west: Glue::Null,
        };
        sys.add_tile(t.clone()).unwrap();
        assert_eq!(sys.add_tile(t), Err(TileError::DuplicateTile("t".into())));
    }

    #[test]
    fn strength_is_symmetric_and_defaults_to_zero() {
        let mut sys = TileSystem::new(1).unwrap();
        sys.set_strength("a", "b", 3).unwrap();
        let (a, b) = (Glue::label("a"), Glue::label("b"));
        assert_eq!(sys.strength(&a, &b), 3);
        assert_eq!(sys.strength(&b, &a), 3);
        assert_eq!(sys.strength(&a, &a), 0);
        assert_eq!(sys.strength(&a, &Glue::Null), 0);
        assert_eq!(sys.strength(&Glue::Null, &Glue::Null), 0);
    }

    #[test]
    fn assembly_demands_connected_nonempty_domain() {
        assert_eq!(Assembly::new(BTreeMap::new()), Err(TileError::EmptyAssembly));
        let gap: BTreeMap<Point, String> = [(0, 0), (2, 0)]
            .into_iter()
            .map(|(x, y)| (Point::new(x, y), "t".to_string()))
            .collect();
        assert_eq!(Assembly::new(gap), Err(TileError::DisconnectedAssembly));
        let diag: BTreeMap<Point, String> = [(0, 0), (1, 1)]
            .into_iter()
            .map(|(x, y)| (Point::new(x, y), "t".to_string()))
            .collect();
        assert_eq!(Assembly::new(diag), Err(TileError::DisconnectedAssembly));
    }

    #[test]
    fn canonical_form_is_translation_invariant_and_idempotent() {
        let a = fixtures::staircase_seed();
        let c = canonicalize(&a);
        assert_eq!(canonicalize(&c), c);
        assert_eq!(canonicalize(&a.translated(Vector::new(5, -3))), c);
        // Bounding-box corner at the origin even if no tile sits there.
        assert_eq!(c.tiles().map(|(p, _)| p.x).min(), Some(0));
        assert_eq!(c.tiles().map(|(p, _)| p.y).min(), Some(0));
    }

    #[test]
    fn consistency_checks_shared_cells_only() {
        let a = Assembly::singleton(Point::new(0, 0), "x");
        let b = Assembly::singleton(Point::new(0, 0), "y");
        let far = Assembly::singleton(Point::new(7, 7), "y");
        assert!(consistent(&a, &a));
        assert!(consistent(&a, &far));
        assert!(!consistent(&a, &b));
    }

    #[test]
    fn union_merges_or_reports_first_conflict() {
        let row = fixtures::row_assembly(3);
        let shifted = row.translated(Vector::new(2, 0));
        let merged = union_assemblies(&row, &shifted).unwrap();
        assert_eq!(merged.len(), 5);
        let mut bad = BTreeMap::new();
        bad.insert(Point::new(1, 0), "s".to_string());
        bad.insert(Point::new(2, 0), "r".to_string());
        let bad = Assembly::new(bad).unwrap();
        assert_eq!(
            union_assemblies(&row, &bad),
            Err(TileError::Conflict(Point::new(1, 0)))
        );
        // Disjoint but non-adjacent pieces cannot union into an assembly.
        let far = row.translated(Vector::new(10, 0));
        assert_eq!(
            union_assemblies(&row, &far),
            Err(TileError::DisconnectedAssembly)
        );
    }

    #[test]
    fn restriction_carves_connected_subdomains() {
        let seed = fixtures::staircase_seed();
        let full: BTreeSet<Point> = seed.tiles().map(|(p, _)| p).collect();
        assert_eq!(restriction(&seed, &full).unwrap(), seed);
        let single = BTreeSet::from([Point::new(2, -1)]);
        let r = restriction(&seed, &single).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.get(&Point::new(2, -1)), Some("D"));
        let outside = BTreeSet::from([Point::new(9, 9)]);
        assert_eq!(
            restriction(&seed, &outside),
            Err(TileError::NotSubdomain(Point::new(9, 9)))
        );
        let split = BTreeSet::from([Point::new(0, 0), Point::new(2, 0)]);
        assert_eq!(
            restriction(&seed, &split),
            Err(TileError::DisconnectedAssembly)
        );
    }
}
