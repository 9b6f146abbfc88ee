//! Seeded generators for the five instance families.
//!
//! Every generator draws from a single ChaCha stream seeded by the config, so
//! the output is a pure function of [`GenConfig`].

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

use crate::geom::{orient_sign, point_strictly_inside_segment, segments_intersect, segments_properly_cross, Point};
use crate::model::{Instance, ModelError, MAX_POINTS};

/// The size grid used for batches unless told otherwise.
pub const DEFAULT_SIZES: [usize; 8] = [10, 20, 40, 60, 80, 100, 150, 250];
pub const DEFAULT_COORDINATE_RANGE: i64 = 10_000;
const MAX_ATTEMPTS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Ortho,
    PointSet,
    SimplePolygon,
    SimplePolygonExterior,
    SimplePolygonExterior20,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Ortho,
        Family::PointSet,
        Family::SimplePolygon,
        Family::SimplePolygonExterior,
        Family::SimplePolygonExterior20,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ortho => "ortho",
            Family::PointSet => "point-set",
            Family::SimplePolygon => "simple-polygon",
            Family::SimplePolygonExterior => "simple-polygon-exterior",
            Family::SimplePolygonExterior20 => "simple-polygon-exterior-20",
        }
    }

    /// Smallest point count the family can produce.
    pub fn min_points(self) -> usize {
        match self {
            Family::Ortho => 4,
            Family::SimplePolygonExterior20 => 5,
            _ => 3,
        }
    }

    fn index(self) -> u64 {
        Family::ALL.iter().position(|&f| f == self).unwrap() as u64
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown instance family {0:?}")]
    UnknownFamily(String),
    #[error("{family} cannot produce {n} points: {reason}")]
    InvalidSize { family: Family, n: usize, reason: &'static str },
    #[error("coordinate range must be positive and at most 2^30")]
    InvalidRange,
    #[error("{family} gave up after {MAX_ATTEMPTS} attempts")]
    Exhausted { family: Family },
    #[error("generated instance failed validation: {0}")]
    Invalid(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GenConfig {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    pub coordinate_range: i64,
}

impl GenConfig {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenConfig {
            family,
            n,
            seed,
            coordinate_range: DEFAULT_COORDINATE_RANGE,
        }
    }

    /// `family_n_hash` with an 8-hex-digit hash of the seed.
    pub fn uid(&self) -> String {
        format!("{}_{}_{:08x}", self.family, self.n, (splitmix64(self.seed) >> 32) as u32)
    }

    fn check(&self) -> Result<(), GenError> {
        if self.coordinate_range <= 0 || self.coordinate_range > 1 << 30 {
            return Err(GenError::InvalidRange);
        }
        let too_small = self.n < self.family.min_points();
        if too_small || self.n > MAX_POINTS {
            return Err(GenError::InvalidSize {
                family: self.family,
                n: self.n,
                reason: if too_small { "too few points" } else { "above the 250-point cap" },
            });
        }
        if self.family == Family::Ortho && self.n % 2 == 1 {
            return Err(GenError::InvalidSize {
                family: self.family,
                n: self.n,
                reason: "orthogonal polygons have an even vertex count",
            });
        }
        Ok(())
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn generate(cfg: &GenConfig) -> Result<Instance, GenError> {
    match cfg.family {
        Family::Ortho => gen_ortho(cfg),
        Family::PointSet => gen_point_set(cfg),
        Family::SimplePolygon => gen_simple_polygon(cfg),
        Family::SimplePolygonExterior => gen_simple_polygon_exterior(cfg),
        Family::SimplePolygonExterior20 => gen_simple_polygon_exterior_20(cfg),
    }
}

// ---------------------------------------------------------------------------
// ortho

type IPoint = (i64, i64);

fn to_point(p: IPoint) -> Point {
    Point::from_ints(p.0, p.1)
}

/// Checks that the edges starting at `changed` indices neither touch
/// non-adjacent edges nor fold back onto their neighbours.
fn edges_stay_simple(poly: &[Point], changed: &[usize]) -> bool {
    let m = poly.len();
    let seg = |k: usize| (&poly[k % m], &poly[(k + 1) % m]);
    for &i in changed {
        let (a0, a1) = seg(i);
        for j in 0..m {
            if j == i {
                continue;
            }
            let (c0, c1) = seg(j);
            let ok = if (i + 1) % m == j {
                !point_strictly_inside_segment(c1, a0, a1) && !point_strictly_inside_segment(a0, c0, c1)
            } else if (j + 1) % m == i {
                !point_strictly_inside_segment(a1, c0, c1) && !point_strictly_inside_segment(c0, a0, a1)
            } else {
                !segments_intersect(a0, a1, c0, c1)
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

fn unit(p: IPoint, q: IPoint) -> (IPoint, i64) {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let len = dx.abs() + dy.abs();
    ((dx.signum(), dy.signum()), len)
}

/// Orthogonal polygon with exactly `n` vertices: a random rectangle grown by
/// rectangular bumps and notches on edges (+4 vertices) and corner steps
/// (+2 vertices), each rejected if it breaks simplicity.
pub fn gen_ortho(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    let r = cfg.coordinate_range;
    let lo = r / 8;
    let hi = r - r / 8;
    let x0 = rng.random_range(lo..=r / 3);
    let x1 = rng.random_range(2 * r / 3..=hi);
    let y0 = rng.random_range(lo..=r / 3);
    let y1 = rng.random_range(2 * r / 3..=hi);
    let mut poly: Vec<IPoint> = vec![(x0, y0), (x1, y0), (x1, y1), (x0, y1)];
    let max_depth = (r / 6).max(1);

    let mut failures = 0;
    while poly.len() < cfg.n {
        if failures > MAX_ATTEMPTS * cfg.n {
            return Err(GenError::Exhausted { family: cfg.family });
        }
        let m = poly.len();
        let need = cfg.n - m;
        let candidate = if need >= 4 && rng.random_bool(0.6) {
            let i = rng.random_range(0..m);
            let (p, q) = (poly[i], poly[(i + 1) % m]);
            let ((dx, dy), len) = unit(p, q);
            if len < 3 {
                failures += 1;
                continue;
            }
            let mut s = [rng.random_range(1..len), rng.random_range(1..len)];
            s.sort_unstable();
            if s[0] == s[1] {
                failures += 1;
                continue;
            }
            let depth = rng.random_range(1..=max_depth) * if rng.random_bool(0.5) { 1 } else { -1 };
            // outward normal of a counter-clockwise polygon is to the right
            let (nx, ny) = (dy, -dx);
            let a = (p.0 + s[0] * dx, p.1 + s[0] * dy);
            let d = (p.0 + s[1] * dx, p.1 + s[1] * dy);
            let b = (a.0 + depth * nx, a.1 + depth * ny);
            let c = (d.0 + depth * nx, d.1 + depth * ny);
            let mut next = poly.clone();
            next.splice(i + 1..i + 1, [a, b, c, d]);
            (next, (i..i + 5).collect::<Vec<_>>())
        } else {
            let i = rng.random_range(0..m);
            let (prev, v, nxt) = (poly[(i + m - 1) % m], poly[i], poly[(i + 1) % m]);
            let ((ix, iy), len_in) = unit(prev, v);
            let ((ox, oy), len_out) = unit(v, nxt);
            if len_in < 2 || len_out < 2 {
                failures += 1;
                continue;
            }
            let s = rng.random_range(1..len_in);
            let t = rng.random_range(1..len_out);
            let v1 = (v.0 - s * ix, v.1 - s * iy);
            let v2 = (v1.0 + t * ox, v1.1 + t * oy);
            let v3 = (v.0 + t * ox, v.1 + t * oy);
            let mut next = poly.clone();
            next.splice(i..i + 1, [v1, v2, v3]);
            let start = (i + m - 1) % m;
            (next, (0..4).map(|k| (start + k) % (m + 2)).collect())
        };
        let (next, changed) = candidate;
        let in_range = next.iter().all(|&(x, y)| (0..=r).contains(&x) && (0..=r).contains(&y));
        let pts: Vec<Point> = next.iter().copied().map(to_point).collect();
        if in_range && edges_stay_simple(&pts, &changed) {
            poly = next;
        } else {
            failures += 1;
        }
    }

    let points: Vec<Point> = poly.into_iter().map(to_point).collect();
    let boundary = (0..points.len()).collect();
    Ok(Instance::new(cfg.uid(), points, boundary, vec![])?)
}

// ---------------------------------------------------------------------------
// point sets and hulls

/// Strict convex hull (no collinear vertices), counter-clockwise, as indices.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a].cmp(&points[b]));
    idx.dedup_by(|a, b| points[*a] == points[*b]);
    if idx.len() < 3 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && orient_sign(&points[hull[hull.len() - 2]], &points[hull[hull.len() - 1]], &points[i])
                    != std::cmp::Ordering::Greater
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

fn sample_distinct(
    rng: &mut ChaCha8Rng,
    n: usize,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> IPoint,
) -> Option<Vec<IPoint>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    let mut tries = 0;
    while out.len() < n {
        tries += 1;
        if tries > 100 * n + 1000 {
            return None;
        }
        let p = draw(rng);
        if seen.insert(p) {
            out.push(p);
        }
    }
    Some(out)
}

fn structured_sample(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Option<Vec<IPoint>> {
    match rng.random_range(0..3) {
        0 => sample_distinct(rng, n, |g| (g.random_range(0..=r), g.random_range(0..=r))),
        1 => {
            let side = ((n as f64).sqrt().ceil() as i64 + 1).max(2);
            let spacing = (r / side).max(4);
            let jitter = (spacing / 4).max(1);
            sample_distinct(rng, n, |g| {
                let cx = g.random_range(0..side);
                let cy = g.random_range(0..side);
                let x = (cx * spacing + spacing / 2 + g.random_range(-jitter..=jitter)).clamp(0, r);
                let y = (cy * spacing + spacing / 2 + g.random_range(-jitter..=jitter)).clamp(0, r);
                (x, y)
            })
        }
        _ => {
            let k = rng.random_range(1..=5);
            let centres: Vec<(f64, f64)> = (0..k)
                .map(|_| {
                    (
                        rng.random_range(r / 5..=4 * r / 5) as f64,
                        rng.random_range(r / 5..=4 * r / 5) as f64,
                    )
                })
                .collect();
            let normal = Normal::new(0.0, r as f64 / 12.0).expect("positive spread");
            sample_distinct(rng, n, |g| {
                let (cx, cy) = centres[g.random_range(0..k)];
                let x = (cx + normal.sample(g)).round() as i64;
                let y = (cy + normal.sample(g)).round() as i64;
                (x.clamp(0, r), y.clamp(0, r))
            })
        }
    }
}

/// Points from a seed-chosen mixture (uniform, jittered grid, Gaussian
/// clusters); the region is their convex hull.
pub fn gen_point_set(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    for _ in 0..MAX_ATTEMPTS {
        let Some(raw) = structured_sample(&mut rng, cfg.n, cfg.coordinate_range) else {
            continue;
        };
        let points: Vec<Point> = raw.into_iter().map(to_point).collect();
        let hull = convex_hull(&points);
        if hull.len() < 3 || !no_point_on_hull_edges(&points, &hull) {
            continue;
        }
        return Ok(Instance::new(cfg.uid(), points, hull, vec![])?);
    }
    Err(GenError::Exhausted { family: cfg.family })
}

fn no_point_on_hull_edges(points: &[Point], hull: &[usize]) -> bool {
    let m = hull.len();
    (0..m).all(|k| {
        let (a, b) = (&points[hull[k]], &points[hull[(k + 1) % m]]);
        points.iter().all(|p| !point_strictly_inside_segment(p, a, b))
    })
}

// ---------------------------------------------------------------------------
// simple polygons

/// `n` distinct integer points, no three collinear.
fn general_position_points(rng: &mut ChaCha8Rng, n: usize, r: i64) -> Option<Vec<Point>> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut tries = 0;
    while pts.len() < n {
        tries += 1;
        if tries > 50 * n + 500 {
            return None;
        }
        let p = Point::from_ints(rng.random_range(0..=r), rng.random_range(0..=r));
        if pts.contains(&p) {
            continue;
        }
        let collinear = (0..pts.len()).any(|i| {
            (i + 1..pts.len()).any(|j| orient_sign(&pts[i], &pts[j], &p) == std::cmp::Ordering::Equal)
        });
        if !collinear {
            pts.push(p);
        }
    }
    Some(pts)
}

/// Random tour untangled by 2-opt: repeatedly reverse the section between
/// the lexicographically first pair of crossing edges. `None` if the swap
/// cap is hit.
fn untangle(points: &[Point], mut tour: Vec<usize>) -> Option<Vec<usize>> {
    let n = tour.len();
    let cap = 50 * n * n;
    let mut swaps = 0;
    'pass: loop {
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (&points[tour[i]], &points[tour[i + 1]]);
                let (c, d) = (&points[tour[j]], &points[tour[(j + 1) % n]]);
                if segments_properly_cross(a, b, c, d) {
                    tour[i + 1..=j].reverse();
                    swaps += 1;
                    if swaps > cap {
                        return None;
                    }
                    continue 'pass;
                }
            }
        }
        return Some(tour);
    }
}

fn simple_polygon_core(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Result<(Vec<Point>, Vec<usize>), GenError> {
    for _ in 0..MAX_ATTEMPTS {
        let Some(points) = general_position_points(rng, cfg.n, cfg.coordinate_range) else {
            continue;
        };
        let mut tour: Vec<usize> = (0..cfg.n).collect();
        tour.shuffle(rng);
        let Some(mut tour) = untangle(&points, tour) else {
            continue;
        };
        let ring: Vec<&Point> = tour.iter().map(|&i| &points[i]).collect();
        if crate::geom::twice_signed_area(&ring) < crate::geom::Coord::from_integer(0.into()) {
            tour.reverse();
        }
        return Ok((points, tour));
    }
    Err(GenError::Exhausted { family: cfg.family })
}

pub fn gen_simple_polygon(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    let (points, tour) = simple_polygon_core(cfg, &mut rng)?;
    Ok(Instance::new(cfg.uid(), points, tour, vec![])?)
}

fn exterior_parts(cfg: &GenConfig, rng: &mut ChaCha8Rng) -> Result<(Vec<Point>, Vec<usize>, Vec<(usize, usize)>), GenError> {
    let (points, tour) = simple_polygon_core(cfg, rng)?;
    let hull = convex_hull(&points);
    let n = tour.len();
    let constraints = (0..n).map(|k| (tour[k], tour[(k + 1) % n])).collect();
    Ok((points, hull, constraints))
}

/// Simple polygon whose edges become constraints inside its convex hull.
pub fn gen_simple_polygon_exterior(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    let (points, hull, constraints) = exterior_parts(cfg, &mut rng)?;
    Ok(Instance::new(cfg.uid(), points, hull, constraints)?)
}

/// As [`gen_simple_polygon_exterior`] with `floor(0.2 m)` of the `m`
/// constraints removed at random.
pub fn gen_simple_polygon_exterior_20(cfg: &GenConfig) -> Result<Instance, GenError> {
    cfg.check()?;
    let mut rng = cfg.rng();
    let (points, hull, constraints) = exterior_parts(cfg, &mut rng)?;
    let m = constraints.len();
    let remove = m / 5;
    let dropped: HashSet<usize> = index::sample(&mut rng, m, remove).into_iter().collect();
    let kept = constraints
        .into_iter()
        .enumerate()
        .filter(|(k, _)| !dropped.contains(k))
        .map(|(_, c)| c)
        .collect();
    Ok(Instance::new(cfg.uid(), points, hull, kept)?)
}

// ---------------------------------------------------------------------------

/// Seed for one cell of a batch, derived from the batch seed.
pub fn cell_seed(seed: u64, family: Family, n: usize, k: usize) -> u64 {
    let mut s = splitmix64(seed);
    s = splitmix64(s ^ family.index());
    s = splitmix64(s ^ n as u64);
    splitmix64(s ^ k as u64)
}

/// `count_per_cell` instances for every (family, size) pair, in
/// family-major order.
pub fn gen_batch(families: &[Family], sizes: &[usize], count_per_cell: usize, seed: u64) -> Result<Vec<Instance>, GenError> {
    let mut out = Vec::with_capacity(families.len() * sizes.len() * count_per_cell);
    for &family in families {
        for &n in sizes {
            for k in 0..count_per_cell {
                let cfg = GenConfig::new(family, n, cell_seed(seed, family, n, k));
                out.push(generate(&cfg)?);
            }
        }
    }
    Ok(out)
}
