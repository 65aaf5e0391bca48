//! Deterministic SVG 1.1 renderings of shapes, assemblies, tile sets, and
//! curve files. All iteration is over ordered collections and all numbers are
//! emitted with a fixed precision, so identical inputs produce identical
//! bytes. Colors come from a fixed palette keyed by an FNV-1a hash of the
//! name, keeping a tile or curve's color stable across files and runs.

use num_traits::ToPrimitive;
use tilepump_core::tile::Glue;
use tilepump_core::{Assembly, Point, Rational, Shape, TileSystem};

use crate::formats::CurveFile;

/// Side length of one lattice cell, in SVG user units.
const CELL: f64 = 40.0;
/// Blank border around the drawing.
const MARGIN: f64 = 20.0;
/// Length of a glue-strength tick mark, drawn inward from the tile edge.
const TICK: f64 = 7.0;

const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc949",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
];

fn fnv1a(s: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in s.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The palette color assigned to `name`; a pure function of the name.
pub fn color_for(name: &str) -> &'static str {
    PALETTE[(fnv1a(name) % PALETTE.len() as u64) as usize]
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.4}\" height=\"{height:.4}\" viewBox=\"0 0 {width:.4} {height:.4}\">\n{body}</svg>\n"
    )
}

/// Maps lattice cells to screen rectangles, flipping the y axis (lattice y
/// grows north, SVG y grows down).
struct CellFrame {
    min_x: i64,
    max_y: i64,
}

impl CellFrame {
    fn over(cells: &[Point]) -> (CellFrame, f64, f64) {
        let min_x = cells.iter().map(|p| p.x).min().unwrap();
        let max_x = cells.iter().map(|p| p.x).max().unwrap();
        let min_y = cells.iter().map(|p| p.y).min().unwrap();
        let max_y = cells.iter().map(|p| p.y).max().unwrap();
        let width = 2.0 * MARGIN + (max_x - min_x + 1) as f64 * CELL;
        let height = 2.0 * MARGIN + (max_y - min_y + 1) as f64 * CELL;
        (CellFrame { min_x, max_y }, width, height)
    }

    /// Top-left screen corner of the cell at `p`.
    fn corner(&self, p: Point) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min_x) as f64 * CELL,
            MARGIN + (self.max_y - p.y) as f64 * CELL,
        )
    }
}

fn rect(x: f64, y: f64, fill: &str) -> String {
    format!(
        "  <rect x=\"{x:.4}\" y=\"{y:.4}\" width=\"{CELL:.4}\" height=\"{CELL:.4}\" fill=\"{fill}\" stroke=\"#333333\" stroke-width=\"1\"/>\n"
    )
}

fn label(cx: f64, cy: f64, text: &str) -> String {
    format!(
        "  <text x=\"{cx:.4}\" y=\"{cy:.4}\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">{}</text>\n",
        xml_escape(text)
    )
}

/// Tick marks on one edge of the square at `(x, y)`: `count` short inward
/// strokes centered on the edge midpoint. `side` is the edge's compass
/// letter.
fn ticks(out: &mut String, x: f64, y: f64, side: char, count: u32) {
    for k in 0..count {
        let off = (f64::from(k) - f64::from(count - 1) / 2.0) * 6.0;
        let (x1, y1, x2, y2) = match side {
            'N' => (x + CELL / 2.0 + off, y, x + CELL / 2.0 + off, y + TICK),
            'S' => (x + CELL / 2.0 + off, y + CELL, x + CELL / 2.0 + off, y + CELL - TICK),
            'E' => (x + CELL, y + CELL / 2.0 + off, x + CELL - TICK, y + CELL / 2.0 + off),
            'W' => (x, y + CELL / 2.0 + off, x + TICK, y + CELL / 2.0 + off),
            _ => unreachable!("side letter"),
        };
        out.push_str(&format!(
            "  <line x1=\"{x1:.4}\" y1=\"{y1:.4}\" x2=\"{x2:.4}\" y2=\"{y2:.4}\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n"
        ));
    }
}

/// A shape as uniformly filled unit squares.
pub fn render_shape(s: &Shape) -> String {
    let cells: Vec<Point> = s.iter().collect();
    let (frame, width, height) = CellFrame::over(&cells);
    let mut body = String::new();
    for p in s.iter() {
        let (x, y) = frame.corner(p);
        body.push_str(&rect(x, y, "#76b7b2"));
    }
    document(width, height, &body)
}

/// Strength-tick counts for one tile type: the declared self-strength of
/// each side's glue (`null` sides get none).
fn side_strengths(sys: &TileSystem, t: &tilepump_core::tile::TileType) -> [(char, u32); 4] {
    let s = |g: &Glue| sys.strength(g, g);
    [
        ('N', s(&t.north)),
        ('E', s(&t.east)),
        ('S', s(&t.south)),
        ('W', s(&t.west)),
    ]
}

/// An assembly as name-labeled unit squares, colored per tile name. With a
/// system, each side also shows its glue's self-strength as tick marks.
pub fn render_assembly(a: &Assembly, sys: Option<&TileSystem>) -> String {
    let cells: Vec<Point> = a.tiles().map(|(p, _)| p).collect();
    let (frame, width, height) = CellFrame::over(&cells);
    let mut body = String::new();
    for (p, name) in a.tiles() {
        let (x, y) = frame.corner(p);
        body.push_str(&rect(x, y, color_for(name)));
        if let Some(sys) = sys {
            if let Some(t) = sys.tile(name) {
                for (side, count) in side_strengths(sys, t) {
                    ticks(&mut body, x, y, side, count);
                }
            }
        }
    }
    for (p, name) in a.tiles() {
        let (x, y) = frame.corner(p);
        body.push_str(&label(x + CELL / 2.0, y + CELL / 2.0, name));
    }
    document(width, height, &body)
}

/// A tile system as a gallery row: one labeled square per tile type, in name
/// order, with self-strength tick marks on each side.
pub fn render_tile_gallery(sys: &TileSystem) -> String {
    let n = sys.tile_types().count().max(1);
    let width = 2.0 * MARGIN + n as f64 * CELL + (n - 1) as f64 * MARGIN;
    let height = 2.0 * MARGIN + CELL;
    let mut body = String::new();
    for (i, t) in sys.tile_types().enumerate() {
        let x = MARGIN + i as f64 * (CELL + MARGIN);
        let y = MARGIN;
        body.push_str(&rect(x, y, color_for(&t.name)));
        for (side, count) in side_strengths(sys, t) {
            ticks(&mut body, x, y, side, count);
        }
        body.push_str(&label(x + CELL / 2.0, y + CELL / 2.0, &t.name));
    }
    document(width, height, &body)
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("desk-scale rationals fit in an f64")
}

/// A curve file as colored polylines. When a system block is present the
/// placed chains are drawn (each use translated to its base point);
/// otherwise the curves are drawn where they were authored.
pub fn render_curves(f: &CurveFile) -> String {
    let placed: Vec<(String, tilepump_core::PolyChain)> = match &f.system {
        Some(_) => {
            let sys = crate::formats::build_curve_system(f)
                .expect("parsed system blocks always realize");
            f.system
                .as_ref()
                .unwrap()
                .uses
                .iter()
                .zip(sys.chains)
                .map(|(u, c)| (u.name.clone(), c))
                .collect()
        }
        None => f.curves.clone(),
    };
    let xs: Vec<f64> = placed
        .iter()
        .flat_map(|(_, c)| c.vertices().iter().map(|p| to_f64(&p.x)))
        .collect();
    let ys: Vec<f64> = placed
        .iter()
        .flat_map(|(_, c)| c.vertices().iter().map(|p| to_f64(&p.y)))
        .collect();
    let min_x = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let max_x = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_y = ys.iter().copied().fold(f64::INFINITY, f64::min);
    let max_y = ys.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = 2.0 * MARGIN + ((max_x - min_x) * CELL).max(CELL);
    let height = 2.0 * MARGIN + ((max_y - min_y) * CELL).max(CELL);
    let mut body = String::new();
    for (name, chain) in &placed {
        let points: Vec<String> = chain
            .vertices()
            .iter()
            .map(|p| {
                format!(
                    "{:.4},{:.4}",
                    MARGIN + (to_f64(&p.x) - min_x) * CELL,
                    MARGIN + (max_y - to_f64(&p.y)) * CELL
                )
            })
            .collect();
        body.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n",
            points.join(" "),
            color_for(name)
        ));
    }
    document(width, height, &body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{parse_assembly, parse_curves, parse_shape, parse_tile_system};

    #[test]
    fn name_hash_is_frozen() {
        // FNV-1a 64-bit reference value for "abc".
        assert_eq!(fnv1a("abc"), 0xe71f_a219_0541_574b);
        assert_eq!(color_for("abc"), PALETTE[(0xe71f_a219_0541_574b_u64 % 12) as usize]);
        assert_eq!(color_for("t0"), color_for("t0"));
    }

    #[test]
    fn shape_render_has_one_rect_per_cell() {
        let s = parse_shape("t", "cell 0 0\ncell 1 0\ncell 1 1\n").unwrap();
        let svg = render_shape(&s);
        assert_eq!(svg.matches("<rect").count(), 3);
        assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn y_axis_is_flipped() {
        // Cell (0,1) sits above cell (0,0), so it gets the smaller SVG y.
        let s = parse_shape("t", "cell 0 0\ncell 0 1\n").unwrap();
        let svg = render_shape(&s);
        let first = svg.find("y=\"20.0000\"").unwrap();
        let second = svg.find("y=\"60.0000\"").unwrap();
        // Shape iteration is (y,x)-ascending: (0,0) first, drawn at y=60.
        assert!(second < first);
    }

    #[test]
    fn assembly_render_labels_and_ticks() {
        let sys = parse_tile_system(
            "t",
            "temperature 2\nglue a 2\ntile t0 N=null E=a S=null W=null\ntile t1 N=null E=null S=null W=a\n",
        )
        .unwrap();
        let a = parse_assembly("a", "place 0 0 t0\nplace 1 0 t1\n").unwrap();
        let bare = render_assembly(&a, None);
        assert_eq!(bare.matches("<line").count(), 0);
        assert_eq!(bare.matches("<text").count(), 2);
        let with_sys = render_assembly(&a, Some(&sys));
        // Strength-2 glue on t0's east side and t1's west side: 2 ticks each.
        assert_eq!(with_sys.matches("<line").count(), 4);
        assert!(with_sys.contains(">t0</text>"));
    }

    #[test]
    fn renders_are_deterministic() {
        let text = "curve a\nv 0 0\nv 1/2 3\nv 2 3\n\ncurve b\nv 0 5\nv 2 5\n\nsystem\nuse a base 0 0 mult 1\nuse b base 0 5 mult 2\nvec 1 0\n";
        let f1 = parse_curves("c", text).unwrap();
        let f2 = parse_curves("c", text).unwrap();
        assert_eq!(render_curves(&f1), render_curves(&f2));
        assert_eq!(render_curves(&f1).matches("<polyline").count(), 2);
    }

    #[test]
    fn gallery_draws_every_tile_once() {
        let sys = parse_tile_system(
            "t",
            "temperature 1\nglue g 1\ntile a N=g E=null S=null W=null\ntile b N=null E=null S=g W=null\n",
        )
        .unwrap();
        let svg = render_tile_gallery(&sys);
        assert_eq!(svg.matches("<rect").count(), 2);
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.contains(">a</text>") && svg.contains(">b</text>"));
    }
}
