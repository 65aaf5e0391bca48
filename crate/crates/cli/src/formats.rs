//! Line-based text formats for shapes, tile systems, assemblies, and curve
//! files. All four share the same surface syntax: one record per line,
//! whitespace-separated tokens, `#` starting a comment, blank lines ignored.
//!
//! Each format has a canonical serializer; parsing a serializer's output and
//! serializing again reproduces the bytes exactly. Every diagnostic names the
//! offending line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use tilepump_core::curves::CurveSystem;
use tilepump_core::tile::{Glue, TileType};
use tilepump_core::{Assembly, Point, PolyChain, RPoint, RVector, Rational, Shape, TileSystem};

/// A diagnostic tied to a line of an input file. `line` is 1-based; 0 means
/// the problem concerns the file as a whole (for example, a missing section).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}: {}", self.file, self.message)
        } else {
            write!(f, "{}:{}: {}", self.file, self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err(file: &str, line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

/// Yields `(line_number, content)` for every line that still has content
/// after stripping `#` comments and surrounding whitespace.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            None
        } else {
            Some((i + 1, stripped))
        }
    })
}

fn parse_i64(file: &str, line: usize, what: &str, tok: &str) -> Result<i64, ParseError> {
    tok.parse::<i64>()
        .map_err(|_| err(file, line, format!("invalid {what} `{tok}`: expected an integer")))
}

fn parse_u32(file: &str, line: usize, what: &str, tok: &str) -> Result<u32, ParseError> {
    tok.parse::<u32>().map_err(|_| {
        err(
            file,
            line,
            format!("invalid {what} `{tok}`: expected a nonnegative integer"),
        )
    })
}

/// Parses an exact rational written as `num/den` or a bare integer.
/// Arbitrary precision; the result is reduced with a positive denominator.
pub fn parse_rational(tok: &str) -> Option<Rational> {
    match tok.split_once('/') {
        None => BigInt::from_str(tok).ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = BigInt::from_str(n).ok()?;
            let d = BigInt::from_str(d).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

fn parse_rat(file: &str, line: usize, what: &str, tok: &str) -> Result<Rational, ParseError> {
    parse_rational(tok).ok_or_else(|| {
        err(
            file,
            line,
            format!("invalid {what} `{tok}`: expected `num/den` or an integer"),
        )
    })
}

/// Formats a rational as a bare integer when possible, else `num/den`.
/// `parse_rational ∘ format_rational` is the identity.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// ---------------------------------------------------------------------------
// Shapes: `cell x y`
// ---------------------------------------------------------------------------

/// Parses a shape file: one `cell x y` line per lattice cell. The cell set
/// must be nonempty, duplicate-free, and 4-connected.
pub fn parse_shape(file: &str, text: &str) -> Result<Shape, ParseError> {
    let mut cells = BTreeSet::new();
    for (line, content) in content_lines(text) {
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            ["cell", x, y] => {
                let x = parse_i64(file, line, "x coordinate", x)?;
                let y = parse_i64(file, line, "y coordinate", y)?;
                if !cells.insert(Point::new(x, y)) {
                    return Err(err(file, line, format!("cell {x} {y} listed twice")));
                }
            }
            _ => return Err(err(file, line, "expected `cell <x> <y>`")),
        }
    }
    Shape::new(cells).map_err(|e| err(file, 0, e.to_string()))
}

/// Canonical shape serialization: `cell x y` lines in ascending `(y, x)`
/// order, one per cell.
pub fn serialize_shape(s: &Shape) -> String {
    let mut out = String::new();
    for p in s.iter() {
        out.push_str(&format!("cell {} {}\n", p.x, p.y));
    }
    out
}

// ---------------------------------------------------------------------------
// Tile systems: `temperature τ`, `glue a s`, `strength a b s`, `tile n N=…`
// ---------------------------------------------------------------------------

/// Parses a tile-system file. Exactly one `temperature` line is required
/// (position free). `glue a s` declares the self-strength of `a` — shorthand
/// for `strength a a s`. `tile` lines give all four side glues as `N=…`,
/// `E=…`, `S=…`, `W=…` in any order, `null` for the inert glue.
pub fn parse_tile_system(file: &str, text: &str) -> Result<TileSystem, ParseError> {
    let mut temperature: Option<(usize, u32)> = None;
    for (line, content) in content_lines(text) {
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.first() == Some(&"temperature") {
            if toks.len() != 2 {
                return Err(err(file, line, "expected `temperature <τ>`"));
            }
            let t = parse_u32(file, line, "temperature", toks[1])?;
            if temperature.is_some() {
                return Err(err(file, line, "duplicate `temperature` line"));
            }
            temperature = Some((line, t));
        }
    }
    let Some((tline, tau)) = temperature else {
        return Err(err(file, 0, "missing `temperature` line"));
    };
    let mut sys = TileSystem::new(tau).map_err(|e| err(file, tline, e.to_string()))?;

    for (line, content) in content_lines(text) {
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            ["temperature", _] => {}
            ["glue", a, s] => {
                let s = parse_u32(file, line, "strength", s)?;
                sys.set_strength(a, a, s)
                    .map_err(|e| err(file, line, e.to_string()))?;
            }
            ["strength", a, b, s] => {
                let s = parse_u32(file, line, "strength", s)?;
                sys.set_strength(a, b, s)
                    .map_err(|e| err(file, line, e.to_string()))?;
            }
            ["tile", name, sides @ ..] if sides.len() == 4 => {
                let tile = parse_tile_line(file, line, name, sides)?;
                sys.add_tile(tile).map_err(|e| err(file, line, e.to_string()))?;
            }
            ["tile", ..] => {
                return Err(err(
                    file,
                    line,
                    "expected `tile <name> N=<glue> E=<glue> S=<glue> W=<glue>`",
                ));
            }
            _ => {
                return Err(err(
                    file,
                    line,
                    "expected a `temperature`, `glue`, `strength`, or `tile` line",
                ));
            }
        }
    }
    Ok(sys)
}

fn parse_tile_line(
    file: &str,
    line: usize,
    name: &str,
    sides: &[&str],
) -> Result<TileType, ParseError> {
    let mut glues: BTreeMap<char, Glue> = BTreeMap::new();
    for tok in sides {
        let Some((key, value)) = tok.split_once('=') else {
            return Err(err(file, line, format!("expected `<side>=<glue>`, found `{tok}`")));
        };
        let side = match key {
            "N" | "E" | "S" | "W" => key.chars().next().unwrap(),
            _ => {
                return Err(err(
                    file,
                    line,
                    format!("unknown side `{key}`: expected N, E, S, or W"),
                ))
            }
        };
        let glue = if value == "null" {
            Glue::Null
        } else {
            Glue::label(value)
        };
        if glues.insert(side, glue).is_some() {
            return Err(err(file, line, format!("side {side} given twice")));
        }
    }
    let mut take = |side: char| {
        glues
            .remove(&side)
            .ok_or_else(|| err(file, line, format!("missing side {side}")))
    };
    Ok(TileType {
        name: name.to_string(),
        north: take('N')?,
        east: take('E')?,
        south: take('S')?,
        west: take('W')?,
    })
}

/// Canonical tile-system serialization: the `temperature` line, declared
/// strengths in sorted label order (`glue` shorthand for self-pairs), then
/// tiles in name order with sides always written as N, E, S, W.
pub fn serialize_tile_system(sys: &TileSystem) -> String {
    let mut out = format!("temperature {}\n", sys.temperature());
    for (a, b, s) in sys.declared_strengths() {
        if a == b {
            out.push_str(&format!("glue {a} {s}\n"));
        } else {
            out.push_str(&format!("strength {a} {b} {s}\n"));
        }
    }
    for t in sys.tile_types() {
        out.push_str(&format!(
            "tile {} N={} E={} S={} W={}\n",
            t.name, t.north, t.east, t.south, t.west
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// Assemblies: `place x y tileName`
// ---------------------------------------------------------------------------

/// Parses an assembly file: one `place x y tileName` line per tile. Cells
/// must be distinct and the occupied set edge-connected. Tile names are not
/// resolved here; commands that need glues check them against their system.
pub fn parse_assembly(file: &str, text: &str) -> Result<Assembly, ParseError> {
    let mut placement: BTreeMap<Point, String> = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            ["place", x, y, name] => {
                let x = parse_i64(file, line, "x coordinate", x)?;
                let y = parse_i64(file, line, "y coordinate", y)?;
                if placement.insert(Point::new(x, y), name.to_string()).is_some() {
                    return Err(err(file, line, format!("cell {x} {y} placed twice")));
                }
            }
            _ => return Err(err(file, line, "expected `place <x> <y> <tileName>`")),
        }
    }
    Assembly::new(placement).map_err(|e| err(file, 0, e.to_string()))
}

/// Canonical assembly serialization: `place x y name` lines in ascending
/// `(y, x)` order.
pub fn serialize_assembly(a: &Assembly) -> String {
    let mut out = String::new();
    for (p, name) in a.tiles() {
        out.push_str(&format!("place {} {} {}\n", p.x, p.y, name));
    }
    out
}

// ---------------------------------------------------------------------------
// Curve files: `curve <name>` + `v x y` vertices, then a `system` block
// ---------------------------------------------------------------------------

/// One `use` line of a system block: which curve, where its first vertex is
/// placed, and its (positive rational) multiplier.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveUse {
    pub name: String,
    pub base: RPoint,
    pub mult: Rational,
}

/// The `system` block of a curve file: placed curves plus the translation
/// vector the conditions are stated against.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SystemSpec {
    pub uses: Vec<CurveUse>,
    pub v: RVector,
}

/// A parsed curve file: named chains in file order, and at most one system
/// block referencing them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveFile {
    pub curves: Vec<(String, PolyChain)>,
    pub system: Option<SystemSpec>,
}

impl CurveFile {
    pub fn chain(&self, name: &str) -> Option<&PolyChain> {
        self.curves
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }
}

enum CurveSection {
    Top,
    Curve,
    System,
}

/// Parses a curve file. `curve <name>` starts a chain; the following
/// `v <x> <y>` lines are its vertices (exact rationals). A single `system`
/// block may follow all curves, holding `use <name> base <x> <y> mult <q>`
/// lines and exactly one `vec <x> <y>` line.
pub fn parse_curves(file: &str, text: &str) -> Result<CurveFile, ParseError> {
    let mut raw: Vec<(String, usize, Vec<RPoint>)> = Vec::new();
    let mut uses: Vec<CurveUse> = Vec::new();
    let mut vec_v: Option<RVector> = None;
    let mut system_line: Option<usize> = None;
    let mut section = CurveSection::Top;

    for (line, content) in content_lines(text) {
        let toks: Vec<&str> = content.split_whitespace().collect();
        match toks.as_slice() {
            ["curve", name] => {
                if system_line.is_some() {
                    return Err(err(file, line, "`curve` may not follow the `system` block"));
                }
                if raw.iter().any(|(n, _, _)| n == name) {
                    return Err(err(file, line, format!("duplicate curve name `{name}`")));
                }
                raw.push((name.to_string(), line, Vec::new()));
                section = CurveSection::Curve;
            }
            ["v", x, y] => match section {
                CurveSection::Curve => {
                    let x = parse_rat(file, line, "x coordinate", x)?;
                    let y = parse_rat(file, line, "y coordinate", y)?;
                    raw.last_mut().unwrap().2.push(RPoint::new(x, y));
                }
                _ => return Err(err(file, line, "`v` line outside a `curve` block")),
            },
            ["system"] => {
                if system_line.is_some() {
                    return Err(err(file, line, "a curve file may hold only one `system` block"));
                }
                system_line = Some(line);
                section = CurveSection::System;
            }
            ["use", name, "base", bx, by, "mult", m] => match section {
                CurveSection::System => {
                    if !raw.iter().any(|(n, _, _)| n == name) {
                        return Err(err(file, line, format!("`use` of undeclared curve `{name}`")));
                    }
                    let bx = parse_rat(file, line, "base x coordinate", bx)?;
                    let by = parse_rat(file, line, "base y coordinate", by)?;
                    let m = parse_rat(file, line, "multiplier", m)?;
                    if !m.is_positive() {
                        return Err(err(
                            file,
                            line,
                            format!("multiplier `{}` must be positive", format_rational(&m)),
                        ));
                    }
                    uses.push(CurveUse {
                        name: name.to_string(),
                        base: RPoint::new(bx, by),
                        mult: m,
                    });
                }
                _ => return Err(err(file, line, "`use` line outside the `system` block")),
            },
            ["vec", x, y] => match section {
                CurveSection::System => {
                    if vec_v.is_some() {
                        return Err(err(file, line, "duplicate `vec` line"));
                    }
                    let x = parse_rat(file, line, "vector x component", x)?;
                    let y = parse_rat(file, line, "vector y component", y)?;
                    let v = RVector::new(x, y);
                    if v.is_zero() {
                        return Err(err(file, line, "vector must be nonzero"));
                    }
                    vec_v = Some(v);
                }
                _ => return Err(err(file, line, "`vec` line outside the `system` block")),
            },
            _ => {
                return Err(err(
                    file,
                    line,
                    "expected a `curve`, `v`, `system`, `use`, or `vec` line",
                ))
            }
        }
    }

    if raw.is_empty() {
        return Err(err(file, 0, "file declares no curves"));
    }
    let mut curves = Vec::with_capacity(raw.len());
    for (name, header_line, points) in raw {
        let chain = PolyChain::new(points)
            .map_err(|e| err(file, header_line, format!("curve `{name}`: {e}")))?;
        curves.push((name, chain));
    }

    let system = match system_line {
        None => None,
        Some(line) => {
            if uses.is_empty() {
                return Err(err(file, line, "`system` block needs at least one `use` line"));
            }
            let Some(v) = vec_v else {
                return Err(err(file, line, "`system` block is missing its `vec` line"));
            };
            Some(SystemSpec { uses, v })
        }
    };

    Ok(CurveFile { curves, system })
}

/// Canonical curve-file serialization: each curve block, then the system
/// block, with a blank line between blocks. Rationals via
/// [`format_rational`].
pub fn serialize_curves(f: &CurveFile) -> String {
    let mut out = String::new();
    for (i, (name, chain)) in f.curves.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("curve {name}\n"));
        for p in chain.vertices() {
            out.push_str(&format!(
                "v {} {}\n",
                format_rational(&p.x),
                format_rational(&p.y)
            ));
        }
    }
    if let Some(spec) = &f.system {
        out.push('\n');
        out.push_str("system\n");
        for u in &spec.uses {
            out.push_str(&format!(
                "use {} base {} {} mult {}\n",
                u.name,
                format_rational(&u.base.x),
                format_rational(&u.base.y),
                format_rational(&u.mult)
            ));
        }
        out.push_str(&format!(
            "vec {} {}\n",
            format_rational(&spec.v.x),
            format_rational(&spec.v.y)
        ));
    }
    out
}

/// Realizes the system block: each used curve is translated so its first
/// vertex lands on its base point, and the placed chains, bases,
/// multipliers, and vector form a [`CurveSystem`].
pub fn build_curve_system(f: &CurveFile) -> Result<CurveSystem, String> {
    let spec = f
        .system
        .as_ref()
        .ok_or_else(|| "curve file has no `system` block".to_string())?;
    let mut chains = Vec::with_capacity(spec.uses.len());
    let mut bases = Vec::with_capacity(spec.uses.len());
    let mut mults = Vec::with_capacity(spec.uses.len());
    for u in &spec.uses {
        let chain = f
            .chain(&u.name)
            .expect("parser resolved every use line against a declared curve");
        let start = chain.start();
        let shift = RVector::new(&u.base.x - &start.x, &u.base.y - &start.y);
        chains.push(chain.translated(&shift));
        bases.push(u.base.clone());
        mults.push(u.mult.clone());
    }
    CurveSystem::new(chains, bases, mults, spec.v.clone()).map_err(|e| e.to_string())
}
