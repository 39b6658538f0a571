//! Synthetic three-zone map: a world-spanning road grid plus two denser
//! street meshes standing in for the populated and built-up districts.

use rand::Rng;
use thiserror::Error;

use super::{write_wkt, Point};
use crate::rng::{self, Stream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    pub fn contains(&self, p: &Point<f64>) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    fn center(&self) -> Point<f64> {
        Point::new((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneParams {
    pub rect: Rect,
    /// Street spacing in meters.
    pub spacing: f64,
    /// Maximum displacement of interior intersections, meters.
    pub jitter: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthParams {
    pub world_width: f64,
    pub world_height: f64,
    pub road_spacing: f64,
    pub road_jitter: f64,
    pub pedestrian: ZoneParams,
    pub shops: ZoneParams,
    pub seed: u64,
}

impl SynthParams {
    /// Defaults for a world of the given size; zones are placed relative
    /// to the world extent.
    pub fn for_world(width: f64, height: f64, seed: u64) -> Self {
        let zone = |fx0: f64, fy0: f64, fx1: f64, fy1: f64, spacing: f64| ZoneParams {
            rect: Rect::new(fx0 * width, fy0 * height, fx1 * width, fy1 * height),
            spacing,
            jitter: spacing * 0.25,
        };
        SynthParams {
            world_width: width,
            world_height: height,
            road_spacing: 250.0,
            road_jitter: 40.0,
            pedestrian: zone(0.20, 0.38, 0.52, 0.74, 60.0),
            shops: zone(0.50, 0.44, 0.70, 0.68, 45.0),
            seed,
        }
    }
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams::for_world(4500.0, 3400.0, 1)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum MapGenError {
    #[error("world dimensions must be positive, got {0}x{1}")]
    World(f64, f64),
    #[error("{0} zone has zero or negative area")]
    EmptyZone(&'static str),
    #[error("{0} zone lies outside the world")]
    OutsideWorld(&'static str),
    #[error("{0} spacing must be positive")]
    Spacing(&'static str),
}

/// WKT contents of the three generated map files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticMap {
    pub roads: String,
    pub pedestrian_paths: String,
    pub shops: String,
}

impl SyntheticMap {
    pub const FILES: [&'static str; 3] = ["roads.wkt", "pedestrian_paths.wkt", "shops.wkt"];

    pub fn files(&self) -> [(&'static str, &str); 3] {
        [
            (Self::FILES[0], &self.roads),
            (Self::FILES[1], &self.pedestrian_paths),
            (Self::FILES[2], &self.shops),
        ]
    }
}

struct Mesh {
    cols: usize,
    rows: usize,
    points: Vec<Point<f64>>,
}

impl Mesh {
    fn at(&self, i: usize, j: usize) -> Point<f64> {
        self.points[j * (self.cols + 1) + i]
    }

    /// One linestring per row and per column.
    fn lines(&self) -> Vec<Vec<Point<f64>>> {
        let mut lines = Vec::with_capacity(self.rows + self.cols + 2);
        for j in 0..=self.rows {
            lines.push((0..=self.cols).map(|i| self.at(i, j)).collect());
        }
        for i in 0..=self.cols {
            lines.push((0..=self.rows).map(|j| self.at(i, j)).collect());
        }
        lines
    }

    fn nearest(&self, p: &Point<f64>) -> Point<f64> {
        *self
            .points
            .iter()
            .min_by(|a, b| a.distance_sq(p).total_cmp(&b.distance_sq(p)))
            .expect("mesh has points")
    }
}

fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

fn jittered_mesh<R: Rng>(rect: Rect, spacing: f64, jitter: f64, rng: &mut R) -> Mesh {
    let cols = ((rect.x1 - rect.x0) / spacing).round().max(1.0) as usize;
    let rows = ((rect.y1 - rect.y0) / spacing).round().max(1.0) as usize;
    let dx = (rect.x1 - rect.x0) / cols as f64;
    let dy = (rect.y1 - rect.y0) / rows as f64;
    // keep jitter below half a cell so streets never cross
    let jx = jitter.min(dx * 0.45);
    let jy = jitter.min(dy * 0.45);
    let mut points = Vec::with_capacity((cols + 1) * (rows + 1));
    for j in 0..=rows {
        for i in 0..=cols {
            let mut x = rect.x0 + i as f64 * dx;
            let mut y = rect.y0 + j as f64 * dy;
            if i > 0 && i < cols && jx > 0.0 {
                x += rng.gen_range(-jx..=jx);
            }
            if j > 0 && j < rows && jy > 0.0 {
                y += rng.gen_range(-jy..=jy);
            }
            points.push(Point::new(round6(x), round6(y)));
        }
    }
    Mesh { cols, rows, points }
}

fn check_zone(name: &'static str, z: &ZoneParams, w: f64, h: f64) -> Result<(), MapGenError> {
    let r = z.rect;
    if !(r.x1 > r.x0 && r.y1 > r.y0) {
        return Err(MapGenError::EmptyZone(name));
    }
    if r.x0 < 0.0 || r.y0 < 0.0 || r.x1 > w || r.y1 > h {
        return Err(MapGenError::OutsideWorld(name));
    }
    if !(z.spacing > 0.0) || z.jitter < 0.0 {
        return Err(MapGenError::Spacing(name));
    }
    Ok(())
}

/// Builds a district mesh plus connectors that tie it to the road grid.
/// Every road intersection inside the zone is linked to its nearest mesh
/// vertex; if none falls inside, the intersection nearest the zone centre
/// is linked instead.
fn zone_lines<R: Rng>(z: &ZoneParams, roads: &Mesh, rng: &mut R) -> (Mesh, Vec<Vec<Point<f64>>>) {
    let mesh = jittered_mesh(z.rect, z.spacing, z.jitter, rng);
    let mut lines = mesh.lines();
    let inside: Vec<Point<f64>> = roads.points.iter().copied().filter(|p| z.rect.contains(p)).collect();
    let anchors = if inside.is_empty() {
        vec![roads.nearest(&z.rect.center())]
    } else {
        inside
    };
    for a in anchors {
        let m = mesh.nearest(&a);
        if m != a {
            lines.push(vec![a, m]);
        }
    }
    (mesh, lines)
}

/// Generates `roads.wkt`, `pedestrian_paths.wkt` and `shops.wkt`.
///
/// Each file parses to a single connected component. Both district files
/// share at least one point with the road grid, and the shops file carries
/// a connector ending on a pedestrian-mesh vertex so the union of the two
/// district maps is connected as well.
pub fn generate_synthetic_map(p: &SynthParams) -> Result<SyntheticMap, MapGenError> {
    let (w, h) = (p.world_width, p.world_height);
    if !(w > 0.0 && h > 0.0) {
        return Err(MapGenError::World(w, h));
    }
    if !(p.road_spacing > 0.0) || p.road_jitter < 0.0 {
        return Err(MapGenError::Spacing("road"));
    }
    check_zone("pedestrian", &p.pedestrian, w, h)?;
    check_zone("shops", &p.shops, w, h)?;

    let mut rng = rng::stream(p.seed, Stream::MapGen);
    let roads = jittered_mesh(Rect::new(0.0, 0.0, w, h), p.road_spacing, p.road_jitter, &mut rng);
    let (ped_mesh, ped_lines) = zone_lines(&p.pedestrian, &roads, &mut rng);
    let (shop_mesh, mut shop_lines) = zone_lines(&p.shops, &roads, &mut rng);

    let (a, b) = shop_mesh
        .points
        .iter()
        .map(|s| (*s, ped_mesh.nearest(s)))
        .min_by(|x, y| x.0.distance_sq(&x.1).total_cmp(&y.0.distance_sq(&y.1)))
        .expect("shops mesh has points");
    if a != b {
        shop_lines.push(vec![a, b]);
    }

    Ok(SyntheticMap {
        roads: write_wkt(&roads.lines()),
        pedestrian_paths: write_wkt(&ped_lines),
        shops: write_wkt(&shop_lines),
    })
}
