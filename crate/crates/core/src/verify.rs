//! Exact validity check of a solution against its instance.
//!
//! The verifier rebuilds the planar subdivision from the raw edge list:
//! outgoing edges are sorted around each vertex by exact angular order and
//! faces are traced by always turning to the clockwise-next edge. Every
//! check uses the exact kernel; nothing here rounds.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::geom::{
    classify_triangle, locate_in_polygon, midpoint, orient_sign, point_on_segment,
    point_strictly_inside_segment, segments_properly_cross, twice_signed_area, Coord, Point,
    PolygonLocation, TriangleClass,
};
use crate::model::{normalize, Instance, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ErrorCode {
    UidMismatch,
    /// An edge refers to a vertex index that does not exist.
    InvalidEdge,
    /// A Steiner point coincides with another vertex.
    DuplicateVertex,
    SteinerOutside,
    EdgeCrossing,
    NonTriangleFace,
    RegionNotCovered,
    ConstraintMissing,
    IsolatedVertex,
    DegenerateFace,
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("code serializes");
        write!(f, "{}", s.as_str().unwrap_or("?"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: ErrorCode,
    pub indices: Vec<usize>,
    pub detail: String,
}

impl Diagnostic {
    fn new(code: ErrorCode, indices: Vec<usize>, detail: impl Into<String>) -> Self {
        Diagnostic {
            code,
            indices,
            detail: detail.into(),
        }
    }
}

/// Lexicographic objective: obtuse triangles first, then Steiner points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Objective {
    pub obtuse: usize,
    pub steiner: usize,
}

impl Objective {
    pub const fn new(obtuse: usize, steiner: usize) -> Self {
        Objective { obtuse, steiner }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.obtuse, self.steiner)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub errors: Vec<Diagnostic>,
    pub obtuse_count: usize,
    pub steiner_count: usize,
    pub triangle_count: usize,
}

impl VerifyReport {
    pub fn objective(&self) -> Objective {
        objective(self)
    }

    pub fn has_error(&self, code: ErrorCode) -> bool {
        self.errors.iter().any(|d| d.code == code)
    }

    fn finish(errors: Vec<Diagnostic>, obtuse_count: usize, steiner_count: usize, triangle_count: usize) -> Self {
        VerifyReport {
            valid: errors.is_empty(),
            errors,
            obtuse_count,
            steiner_count,
            triangle_count,
        }
    }
}

pub fn objective(report: &VerifyReport) -> Objective {
    Objective::new(report.obtuse_count, report.steiner_count)
}

/// Conservative bounding box in floating point, used to prune pair tests.
#[derive(Clone, Copy)]
struct Bbox {
    xlo: f64,
    xhi: f64,
    ylo: f64,
    yhi: f64,
}

impl Bbox {
    fn of(a: &Point, b: &Point) -> Self {
        let (ax, ay, bx, by) = (a.x_interval(), a.y_interval(), b.x_interval(), b.y_interval());
        Bbox {
            xlo: ax.lo.min(bx.lo),
            xhi: ax.hi.max(bx.hi),
            ylo: ay.lo.min(by.lo),
            yhi: ay.hi.max(by.hi),
        }
    }

    fn point(p: &Point) -> Self {
        Bbox::of(p, p)
    }

    fn overlaps(&self, o: &Bbox) -> bool {
        !(self.xhi < o.xlo || o.xhi < self.xlo || self.yhi < o.ylo || o.yhi < self.ylo)
    }
}

pub fn verify(inst: &Instance, sol: &Solution) -> VerifyReport {
    let steiner_count = sol.steiner_count();
    if inst.uid() != sol.instance_uid() {
        return VerifyReport::finish(
            vec![Diagnostic::new(
                ErrorCode::UidMismatch,
                vec![],
                format!("solution is for {:?}, instance is {:?}", sol.instance_uid(), inst.uid()),
            )],
            0,
            steiner_count,
            0,
        );
    }
    let n0 = inst.num_points();
    let verts: Vec<&Point> = inst.points().iter().chain(sol.steiner_points()).collect();
    let n = verts.len();
    let edges = sol.edges();

    let bad: Vec<Diagnostic> = edges
        .iter()
        .filter(|&&(a, b)| a >= n || b >= n)
        .map(|&(a, b)| Diagnostic::new(ErrorCode::InvalidEdge, vec![a, b], format!("only {n} vertices exist")))
        .collect();
    if !bad.is_empty() {
        return VerifyReport::finish(bad, 0, steiner_count, 0);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| verts[a].cmp(verts[b]).then(a.cmp(&b)));
    let dups: Vec<Diagnostic> = order
        .windows(2)
        .filter(|w| verts[w[0]] == verts[w[1]])
        .map(|w| Diagnostic::new(ErrorCode::DuplicateVertex, vec![w[0], w[1]], "coincident vertices"))
        .collect();
    if !dups.is_empty() {
        return VerifyReport::finish(dups, 0, steiner_count, 0);
    }

    let mut errors = Vec::new();
    let boundary = inst.boundary_points();

    for (k, s) in sol.steiner_points().iter().enumerate() {
        if locate_in_polygon(s, &boundary) == PolygonLocation::Outside {
            errors.push(Diagnostic::new(
                ErrorCode::SteinerOutside,
                vec![n0 + k],
                format!("Steiner point {s} lies outside the region"),
            ));
        }
    }

    let mut degree = vec![0usize; n];
    for &(a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    for (v, &d) in degree.iter().enumerate() {
        if d == 0 {
            errors.push(Diagnostic::new(ErrorCode::IsolatedVertex, vec![v], "vertex is not used by any edge"));
        }
    }

    let crossings = find_crossings(&verts, edges);
    let crossing_free = crossings.is_empty();
    errors.extend(crossings);

    let edge_set: HashSet<(usize, usize)> = edges.iter().map(|&(a, b)| normalize(a, b)).collect();
    let region_edges: Vec<(usize, usize)> = inst.boundary_edges().collect();

    for &(a, b) in edges {
        let (p, q) = (verts[a], verts[b]);
        let on_boundary_edge = region_edges.iter().any(|&(i, j)| {
            let (bi, bj) = (&inst.points()[i], &inst.points()[j]);
            point_on_segment(p, bi, bj) && point_on_segment(q, bi, bj)
        });
        if on_boundary_edge {
            continue;
        }
        let crosses = region_edges
            .iter()
            .any(|&(i, j)| cross_transversally(p, q, &inst.points()[i], &inst.points()[j]));
        if crosses || locate_in_polygon(&midpoint(p, q), &boundary) == PolygonLocation::Outside {
            errors.push(Diagnostic::new(
                ErrorCode::RegionNotCovered,
                vec![a, b],
                "edge leaves the region",
            ));
        }
    }
    for &(i, j) in &region_edges {
        if !chain_covers(&verts, &edge_set, i, j) {
            errors.push(Diagnostic::new(
                ErrorCode::RegionNotCovered,
                vec![i, j],
                "boundary edge is not covered by solution edges",
            ));
        }
    }
    for &(i, j) in inst.constraints() {
        if !chain_covers(&verts, &edge_set, i, j) {
            errors.push(Diagnostic::new(
                ErrorCode::ConstraintMissing,
                vec![i, j],
                "constraint segment is not covered by solution edges",
            ));
        }
    }

    let mut obtuse_count = 0;
    let mut triangle_count = 0;
    if crossing_free && !edges.is_empty() {
        let faces = trace_faces(&verts, edges);
        let mut outer: Vec<(Vec<usize>, Coord)> = Vec::new();
        for cycle in faces {
            if cycle.len() == 3 {
                let [a, b, c] = [verts[cycle[0]], verts[cycle[1]], verts[cycle[2]]];
                match orient_sign(a, b, c) {
                    Ordering::Greater => {
                        triangle_count += 1;
                        if classify_triangle(a, b, c) == TriangleClass::Obtuse {
                            obtuse_count += 1;
                        }
                        continue;
                    }
                    Ordering::Equal => {
                        errors.push(Diagnostic::new(ErrorCode::DegenerateFace, cycle, "face has zero area"));
                        continue;
                    }
                    Ordering::Less => {}
                }
            }
            let pts: Vec<&Point> = cycle.iter().map(|&v| verts[v]).collect();
            let area = twice_signed_area(&pts);
            if area > Coord::zero() {
                errors.push(Diagnostic::new(
                    ErrorCode::NonTriangleFace,
                    cycle.clone(),
                    format!("bounded face has {} sides", cycle.len()),
                ));
            } else {
                outer.push((cycle, area));
            }
        }
        // the most negative cycle is the unbounded face; any other
        // non-positive cycle is a face with a hole or a dangling piece
        outer.sort_by(|a, b| a.1.cmp(&b.1));
        for (cycle, _) in outer.into_iter().skip(1) {
            errors.push(Diagnostic::new(
                ErrorCode::NonTriangleFace,
                cycle,
                "face is not simply connected",
            ));
        }
        if errors.is_empty() {
            let b = verts
                .iter()
                .filter(|p| locate_in_polygon(p, &boundary) == PolygonLocation::OnBoundary)
                .count();
            if triangle_count + 2 != 2 * (n - b) + b {
                errors.push(Diagnostic::new(
                    ErrorCode::RegionNotCovered,
                    vec![],
                    "face count violates the Euler relation",
                ));
            }
        }
    }

    VerifyReport::finish(errors, obtuse_count, steiner_count, triangle_count)
}

/// Interiors meet at a single point with all four endpoints off the other line.
/// Touching configurations show up separately as vertex-in-edge crossings.
fn cross_transversally(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    let o1 = orient_sign(p, q, r);
    let o2 = orient_sign(p, q, s);
    let o3 = orient_sign(r, s, p);
    let o4 = orient_sign(r, s, q);
    [o1, o2, o3, o4].iter().all(|&o| o != Ordering::Equal) && o1 != o2 && o3 != o4
}

/// Pairs of edges that share a point interior to one of them, and vertices
/// lying in the relative interior of an edge.
fn find_crossings(verts: &[&Point], edges: &[(usize, usize)]) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let boxes: Vec<Bbox> = edges.iter().map(|&(a, b)| Bbox::of(verts[a], verts[b])).collect();
    let mut by_x: Vec<usize> = (0..edges.len()).collect();
    by_x.sort_by(|&i, &j| boxes[i].xlo.total_cmp(&boxes[j].xlo));
    for (k, &i) in by_x.iter().enumerate() {
        for &j in &by_x[k + 1..] {
            if boxes[j].xlo > boxes[i].xhi {
                break;
            }
            if !boxes[i].overlaps(&boxes[j]) {
                continue;
            }
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            if segments_properly_cross(verts[a], verts[b], verts[c], verts[d]) {
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                let (e1, e2) = (edges[lo], edges[hi]);
                out.push(Diagnostic::new(
                    ErrorCode::EdgeCrossing,
                    vec![e1.0, e1.1, e2.0, e2.1],
                    "edges cross",
                ));
            }
        }
    }

    let vboxes: Vec<Bbox> = verts.iter().map(|p| Bbox::point(p)).collect();
    let mut vby_x: Vec<usize> = (0..verts.len()).collect();
    vby_x.sort_by(|&i, &j| vboxes[i].xlo.total_cmp(&vboxes[j].xlo));
    for (i, &(a, b)) in edges.iter().enumerate() {
        let bx = boxes[i];
        let start = vby_x.partition_point(|&v| vboxes[v].xhi < bx.xlo);
        for &v in &vby_x[start..] {
            if vboxes[v].xlo > bx.xhi {
                break;
            }
            if v == a || v == b || !vboxes[v].overlaps(&bx) {
                continue;
            }
            if point_strictly_inside_segment(verts[v], verts[a], verts[b]) {
                out.push(Diagnostic::new(
                    ErrorCode::EdgeCrossing,
                    vec![a, b, v],
                    "vertex lies inside an edge",
                ));
            }
        }
    }
    out.sort_by(|x, y| x.indices.cmp(&y.indices));
    out.dedup();
    out
}

/// Whether the segment between vertices `i` and `j` is the union of solution
/// edges, i.e. consecutive vertices along it are joined by edges.
fn chain_covers(verts: &[&Point], edge_set: &HashSet<(usize, usize)>, i: usize, j: usize) -> bool {
    if edge_set.contains(&normalize(i, j)) {
        return true;
    }
    let (a, b) = (verts[i], verts[j]);
    let dx = b.x() - a.x();
    let dy = b.y() - a.y();
    let mut on: Vec<(Coord, usize)> = verts
        .iter()
        .enumerate()
        .filter(|&(_, p)| point_on_segment(p, a, b))
        .map(|(v, p)| ((p.x() - a.x()) * &dx + (p.y() - a.y()) * &dy, v))
        .collect();
    on.sort();
    on.windows(2).all(|w| edge_set.contains(&normalize(w[0].1, w[1].1)))
}

/// Upper half-plane (including the positive x axis) sorts first.
fn angular_cmp(center: &Point, p: &Point, q: &Point) -> Ordering {
    let half = |r: &Point| {
        let dy = r.y().cmp(center.y());
        match dy {
            Ordering::Greater => 0,
            Ordering::Less => 1,
            Ordering::Equal => {
                if r.x() > center.x() {
                    0
                } else {
                    1
                }
            }
        }
    };
    half(p)
        .cmp(&half(q))
        .then_with(|| orient_sign(center, q, p))
}

/// Face cycles of the planar graph; bounded faces come out counter-clockwise.
/// Counter-clockwise triangular faces of the graph formed by the instance
/// points, the solution's Steiner points and its edges. Out-of-range edges
/// are ignored; on a crossing graph the result is meaningless but finite.
pub fn triangular_faces(inst: &Instance, sol: &Solution) -> Vec<[usize; 3]> {
    let verts: Vec<&Point> = inst.points().iter().chain(sol.steiner_points()).collect();
    let edges: Vec<(usize, usize)> = sol
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| a < verts.len() && b < verts.len() && a != b)
        .collect();
    trace_faces(&verts, &edges)
        .into_iter()
        .filter(|c| c.len() == 3 && orient_sign(verts[c[0]], verts[c[1]], verts[c[2]]) == Ordering::Greater)
        .map(|c| [c[0], c[1], c[2]])
        .collect()
}

fn trace_faces(verts: &[&Point], edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let n = verts.len();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges {
        out_edges[a].push(b);
        out_edges[b].push(a);
    }
    let mut slot: HashMap<(usize, usize), usize> = HashMap::with_capacity(2 * edges.len());
    for (v, list) in out_edges.iter_mut().enumerate() {
        list.sort_by(|&p, &q| angular_cmp(verts[v], verts[p], verts[q]));
        for (k, &w) in list.iter().enumerate() {
            slot.insert((v, w), k);
        }
    }
    let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(2 * edges.len());
    let mut faces = Vec::new();
    let mut starts: Vec<(usize, usize)> = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
    starts.sort_unstable();
    for start in starts {
        if seen.contains(&start) {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        while seen.insert(h) {
            cycle.push(h.0);
            let (u, v) = h;
            let list = &out_edges[v];
            let k = slot[&(v, u)];
            let w = list[(k + list.len() - 1) % list.len()];
            h = (v, w);
        }
        faces.push(cycle);
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn square() -> Instance {
        Instance::new("sq", vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)], vec![0, 1, 2, 3], vec![]).unwrap()
    }

    fn thin() -> Instance {
        Instance::new("thin", vec![p(0, 0), p(5, 0), p(4, 1)], vec![0, 1, 2], vec![]).unwrap()
    }

    #[test]
    fn split_square_is_valid() {
        let sol = Solution::new("sq", vec![], vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let r = verify(&square(), &sol);
        assert!(r.valid, "{:?}", r.errors);
        assert_eq!((r.obtuse_count, r.steiner_count, r.triangle_count), (0, 0, 2));
    }

    #[test]
    fn lone_obtuse_triangle() {
        let sol = Solution::new("thin", vec![], vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let r = verify(&thin(), &sol);
        assert!(r.valid, "{:?}", r.errors);
        assert_eq!(r.obtuse_count, 1);
        assert_eq!(r.triangle_count, 1);
    }

    #[test]
    fn altitude_split_is_non_obtuse() {
        let sol = Solution::new("thin", vec![p(4, 0)], vec![(0, 3), (3, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let r = verify(&thin(), &sol);
        assert!(r.valid, "{:?}", r.errors);
        assert_eq!((r.obtuse_count, r.steiner_count, r.triangle_count), (0, 1, 2));
    }

    #[test]
    fn missing_diagonal_leaves_quad() {
        let sol = Solution::new("sq", vec![], vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let r = verify(&square(), &sol);
        assert!(!r.valid);
        assert!(r.has_error(ErrorCode::NonTriangleFace));
    }

    #[test]
    fn uid_mismatch() {
        let sol = Solution::new("other", vec![], vec![(0, 1)]).unwrap();
        let r = verify(&square(), &sol);
        assert!(!r.valid);
        assert_eq!(r.errors[0].code, ErrorCode::UidMismatch);
    }

    #[test]
    fn crossing_diagonals() {
        let sol = Solution::new("sq", vec![], vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        let r = verify(&square(), &sol);
        assert!(r.has_error(ErrorCode::EdgeCrossing));
    }

    #[test]
    fn outside_and_isolated_steiner() {
        let sol = Solution::new("sq", vec![p(3, 3)], vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let r = verify(&square(), &sol);
        assert!(r.has_error(ErrorCode::SteinerOutside));
        assert!(r.has_error(ErrorCode::IsolatedVertex));
    }

    #[test]
    fn missing_boundary_edge() {
        let sol = Solution::new("sq", vec![], vec![(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let r = verify(&square(), &sol);
        assert!(r.has_error(ErrorCode::RegionNotCovered));
    }

    #[test]
    fn missing_constraint() {
        let inst = Instance::new("sq", square().points().to_vec(), vec![0, 1, 2, 3], vec![(1, 3)]).unwrap();
        let sol = Solution::new("sq", vec![], vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let r = verify(&inst, &sol);
        assert!(r.has_error(ErrorCode::ConstraintMissing));
        // and the crossing is reported too
        assert!(!r.valid);
    }

    #[test]
    fn constraint_covered_by_chain_through_steiner() {
        let inst = Instance::new(
            "c",
            vec![p(0, 0), p(4, 0), p(4, 4), p(0, 4)],
            vec![0, 1, 2, 3],
            vec![(0, 2)],
        )
        .unwrap();
        let sol = Solution::new(
            "c",
            vec![p(2, 2)],
            vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2), (1, 4), (3, 4)],
        )
        .unwrap();
        let r = verify(&inst, &sol);
        assert!(r.valid, "{:?}", r.errors);
        assert_eq!(r.triangle_count, 4);
    }

    #[test]
    fn edge_outside_nonconvex_region() {
        // U shape; edge 3-6 bridges the notch from outside
        let pts = vec![p(0, 0), p(3, 0), p(3, 3), p(2, 3), p(2, 1), p(1, 1), p(1, 3), p(0, 3)];
        let inst = Instance::new("u", pts, (0..8).collect(), vec![]).unwrap();
        let mut edges: Vec<(usize, usize)> = (0..8).map(|k| (k, (k + 1) % 8)).collect();
        edges.push((3, 6));
        let sol = Solution::new("u", vec![], edges).unwrap();
        let r = verify(&inst, &sol);
        assert!(r.has_error(ErrorCode::RegionNotCovered));
    }

    #[test]
    fn diagnostics_serialize() {
        let d = Diagnostic::new(ErrorCode::NonTriangleFace, vec![0, 1, 2, 3], "x");
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"code":"NON_TRIANGLE_FACE","indices":[0,1,2,3],"detail":"x"}"#
        );
    }

    #[test]
    fn objective_order() {
        assert!(Objective::new(0, 3) < Objective::new(1, 0));
        assert!(Objective::new(0, 2) < Objective::new(0, 5));
        assert_eq!(Objective::new(2, 0), Objective::new(2, 0));
    }
}
