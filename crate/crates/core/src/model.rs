//! Instance and solution data model with its JSON interchange format.
//!
//! Instances are validated exactly on construction, so any [`Instance`] value
//! in hand is a well-formed planar straight-line graph inside a simple,
//! counter-clockwise region polygon. Solutions only get structural checks
//! here; geometric validity is the verifier's business.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    locate_in_polygon, midpoint, point_strictly_inside_segment, segments_intersect,
    segments_properly_cross, twice_signed_area, Coord, Point, PolygonLocation,
};

pub const INSTANCE_CONTENT_TYPE: &str = "CG_SHOP_2025_Instance";
pub const SOLUTION_CONTENT_TYPE: &str = "CG_SHOP_2025_Solution";
pub const MAX_POINTS: usize = 250;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("geometry error: {message} (indices {indices:?})")]
    Geometry { message: String, indices: Vec<usize> },
    #[error("uid mismatch: solution is for {solution:?}, instance is {instance:?}")]
    UidMismatch { instance: String, solution: String },
}

impl ModelError {
    fn geometry(message: impl Into<String>, indices: Vec<usize>) -> Self {
        ModelError::Geometry {
            message: message.into(),
            indices,
        }
    }

    fn from_json(err: serde_json::Error) -> Self {
        use serde_json::error::Category;
        match err.classify() {
            Category::Data => ModelError::Schema(err.to_string()),
            _ => ModelError::Parse(err.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexOrigin {
    Original,
    Steiner,
}

/// Index into the combined vertex list together with where it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub index: usize,
    pub origin: VertexOrigin,
}

impl VertexId {
    pub fn new(index: usize, num_original: usize) -> Self {
        let origin = if index < num_original {
            VertexOrigin::Original
        } else {
            VertexOrigin::Steiner
        };
        VertexId { index, origin }
    }
}

/// Undirected edge, lower index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRecord(pub VertexId, pub VertexId);

impl EdgeRecord {
    pub fn new(a: usize, b: usize, num_original: usize) -> Self {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        EdgeRecord(VertexId::new(lo, num_original), VertexId::new(hi, num_original))
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.0.index, self.1.index)
    }
}

pub(crate) fn normalize(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    uid: String,
    points: Vec<Point>,
    region_boundary: Vec<usize>,
    constraints: Vec<(usize, usize)>,
}

impl Instance {
    /// Builds and fully validates an instance.
    pub fn new(
        uid: impl Into<String>,
        points: Vec<Point>,
        region_boundary: Vec<usize>,
        constraints: Vec<(usize, usize)>,
    ) -> Result<Self, ModelError> {
        let inst = Instance {
            uid: uid.into(),
            points,
            region_boundary,
            constraints,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn uid(&self) -> &str {
        &self.uid
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn region_boundary(&self) -> &[usize] {
        &self.region_boundary
    }

    pub fn constraints(&self) -> &[(usize, usize)] {
        &self.constraints
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn boundary_points(&self) -> Vec<&Point> {
        self.region_boundary.iter().map(|&i| &self.points[i]).collect()
    }

    /// Boundary edges as index pairs, in boundary order.
    pub fn boundary_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.region_boundary.len();
        (0..m).map(move |k| (self.region_boundary[k], self.region_boundary[(k + 1) % m]))
    }

    pub fn with_uid(mut self, uid: impl Into<String>) -> Self {
        self.uid = uid.into();
        self
    }

    fn validate(&self) -> Result<(), ModelError> {
        let n = self.points.len();
        if n < 3 {
            return Err(ModelError::Schema(format!("need at least 3 points, got {n}")));
        }
        if n > MAX_POINTS {
            return Err(ModelError::Schema(format!(
                "too many points: {n} exceeds the limit of {MAX_POINTS}"
            )));
        }
        for (i, p) in self.points.iter().enumerate() {
            if !p.is_integral() {
                return Err(ModelError::Schema(format!("point {i} has non-integer coordinates")));
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.points[a].cmp(&self.points[b]).then(a.cmp(&b)));
        for w in order.windows(2) {
            if self.points[w[0]] == self.points[w[1]] {
                return Err(ModelError::geometry("duplicate point", vec![w[0], w[1]]));
            }
        }

        self.validate_boundary()?;
        let boundary = self.boundary_points();

        let on_boundary: HashSet<usize> = self.region_boundary.iter().copied().collect();
        for (i, p) in self.points.iter().enumerate() {
            if !on_boundary.contains(&i) && locate_in_polygon(p, &boundary) == PolygonLocation::Outside {
                return Err(ModelError::geometry("point outside region", vec![i]));
            }
        }

        self.validate_constraints()
    }

    fn validate_boundary(&self) -> Result<(), ModelError> {
        let n = self.points.len();
        let b = &self.region_boundary;
        let m = b.len();
        if m < 3 {
            return Err(ModelError::geometry("boundary needs at least 3 vertices", b.clone()));
        }
        let mut seen = HashSet::new();
        for &i in b {
            if i >= n {
                return Err(ModelError::Schema(format!("boundary index {i} out of range")));
            }
            if !seen.insert(i) {
                return Err(ModelError::geometry("boundary repeats a vertex", vec![i]));
            }
        }
        let area = twice_signed_area(&self.boundary_points());
        if area.is_zero() {
            return Err(ModelError::geometry("boundary is degenerate (zero area)", b.clone()));
        }
        if area < Coord::zero() {
            return Err(ModelError::geometry("boundary not counter-clockwise", b.clone()));
        }
        let pt = |k: usize| &self.points[b[k % m]];
        for i in 0..m {
            for j in i + 1..m {
                let (a0, a1, c0, c1) = (pt(i), pt(i + 1), pt(j), pt(j + 1));
                let bad = if j == i + 1 {
                    // consecutive edges meet at pt(j); must not fold back
                    point_strictly_inside_segment(c1, a0, a1) || point_strictly_inside_segment(a0, c0, c1)
                } else if i == 0 && j == m - 1 {
                    point_strictly_inside_segment(a1, c0, c1) || point_strictly_inside_segment(c0, a0, a1)
                } else {
                    segments_intersect(a0, a1, c0, c1)
                };
                if bad {
                    return Err(ModelError::geometry(
                        "boundary not simple",
                        vec![b[i], b[(i + 1) % m], b[j], b[(j + 1) % m]],
                    ));
                }
            }
        }
        Ok(())
    }

    fn validate_constraints(&self) -> Result<(), ModelError> {
        let n = self.points.len();
        let boundary = self.boundary_points();
        let boundary_edges: Vec<(usize, usize)> = self.boundary_edges().collect();
        let boundary_set: HashSet<(usize, usize)> =
            boundary_edges.iter().map(|&(a, b)| normalize(a, b)).collect();
        let mut seen = HashSet::new();
        for (k, &(i, j)) in self.constraints.iter().enumerate() {
            if i >= n || j >= n {
                return Err(ModelError::Schema(format!("constraint {k} index out of range")));
            }
            if i == j {
                return Err(ModelError::Schema(format!("constraint {k} is a loop ({i},{i})")));
            }
            if !seen.insert(normalize(i, j)) {
                return Err(ModelError::Schema(format!("constraint {k} duplicates ({i},{j})")));
            }
            if boundary_set.contains(&normalize(i, j)) {
                continue;
            }
            let (p, q) = (&self.points[i], &self.points[j]);
            for &(a, b) in &boundary_edges {
                if segments_properly_cross(p, q, &self.points[a], &self.points[b]) {
                    return Err(ModelError::geometry(
                        format!("constraint {k} crosses the boundary"),
                        vec![i, j, a, b],
                    ));
                }
            }
            if locate_in_polygon(&midpoint(p, q), &boundary) == PolygonLocation::Outside {
                return Err(ModelError::geometry(
                    format!("constraint {k} lies outside the region"),
                    vec![i, j],
                ));
            }
        }
        for k in 0..self.constraints.len() {
            for l in k + 1..self.constraints.len() {
                let (i, j) = self.constraints[k];
                let (a, b) = self.constraints[l];
                if segments_properly_cross(&self.points[i], &self.points[j], &self.points[a], &self.points[b]) {
                    return Err(ModelError::geometry(
                        format!("constraints {k} and {l} cross"),
                        vec![i, j, a, b],
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    instance_uid: String,
    steiner_points: Vec<Point>,
    edges: Vec<(usize, usize)>,
}

impl Solution {
    /// Builds a solution after structural checks (loops, duplicate edges,
    /// coincident Steiner points).
    pub fn new(
        instance_uid: impl Into<String>,
        steiner_points: Vec<Point>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self, ModelError> {
        let sol = Solution {
            instance_uid: instance_uid.into(),
            steiner_points,
            edges,
        };
        sol.validate()?;
        Ok(sol)
    }

    pub fn instance_uid(&self) -> &str {
        &self.instance_uid
    }

    pub fn steiner_points(&self) -> &[Point] {
        &self.steiner_points
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn steiner_count(&self) -> usize {
        self.steiner_points.len()
    }

    /// Same solution with one edge removed (mutation testing helper).
    pub fn without_edge(&self, k: usize) -> Solution {
        let mut s = self.clone();
        s.edges.remove(k);
        s
    }

    /// Same solution with a Steiner point replaced, bypassing structural checks.
    pub fn with_steiner_point(&self, k: usize, p: Point) -> Solution {
        let mut s = self.clone();
        s.steiner_points[k] = p;
        s
    }

    fn validate(&self) -> Result<(), ModelError> {
        let mut seen = HashSet::new();
        for &(i, j) in &self.edges {
            if i == j {
                return Err(ModelError::Schema(format!("zero-length edge ({i},{j})")));
            }
            if !seen.insert(normalize(i, j)) {
                return Err(ModelError::Schema(format!("duplicate edge ({i},{j})")));
            }
        }
        let mut sorted: Vec<usize> = (0..self.steiner_points.len()).collect();
        sorted.sort_by(|&a, &b| self.steiner_points[a].cmp(&self.steiner_points[b]));
        for w in sorted.windows(2) {
            if self.steiner_points[w[0]] == self.steiner_points[w[1]] {
                return Err(ModelError::Schema(format!(
                    "duplicate Steiner points {} and {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(())
    }
}

/// Instance points followed by the solution's Steiner points.
pub fn combined_vertices(inst: &Instance, sol: &Solution) -> Result<Vec<Point>, ModelError> {
    if inst.uid != sol.instance_uid {
        return Err(ModelError::UidMismatch {
            instance: inst.uid.clone(),
            solution: sol.instance_uid.clone(),
        });
    }
    Ok(inst
        .points
        .iter()
        .chain(sol.steiner_points.iter())
        .cloned()
        .collect())
}

// ---------------------------------------------------------------------------
// JSON interchange.

#[derive(Serialize, Deserialize)]
struct RawInstance {
    content_type: String,
    instance_uid: String,
    num_points: usize,
    points_x: Vec<i64>,
    points_y: Vec<i64>,
    region_boundary: Vec<usize>,
    num_constraints: usize,
    additional_constraints: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawCoord {
    Int(i64),
    Text(String),
}

#[derive(Serialize, Deserialize)]
struct RawSolution {
    content_type: String,
    instance_uid: String,
    steiner_points_x: Vec<RawCoord>,
    steiner_points_y: Vec<RawCoord>,
    edges: Vec<(usize, usize)>,
}

/// Parses `"p/q"` or `"p"` into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Coord, ModelError> {
    let bad = || ModelError::Schema(format!("invalid rational {s:?}"));
    let parse_int = |t: &str, allow_sign: bool| -> Option<BigInt> {
        let digits = if allow_sign {
            t.strip_prefix('-').unwrap_or(t)
        } else {
            t
        };
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        t.parse::<BigInt>().ok()
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n, true).ok_or_else(bad)?;
            let d = parse_int(d, false).ok_or_else(bad)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Coord::new(n, d))
        }
        None => Ok(Coord::from_integer(parse_int(s, true).ok_or_else(bad)?)),
    }
}

/// Lowest-terms `"p/q"`, or plain `"p"` for integers.
pub fn format_rational(c: &Coord) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn raw_coord(c: &Coord) -> RawCoord {
    if c.is_integer() {
        if let Some(v) = c.numer().to_i64() {
            return RawCoord::Int(v);
        }
    }
    RawCoord::Text(format_rational(c))
}

fn coord_from_raw(r: &RawCoord) -> Result<Coord, ModelError> {
    match r {
        RawCoord::Int(v) => Ok(Coord::from_integer(BigInt::from(*v))),
        RawCoord::Text(s) => parse_rational(s),
    }
}

pub fn load_instance(bytes: &[u8]) -> Result<Instance, ModelError> {
    let raw: RawInstance = serde_json::from_slice(bytes).map_err(ModelError::from_json)?;
    if raw.content_type != INSTANCE_CONTENT_TYPE {
        return Err(ModelError::Schema(format!(
            "content_type must be {INSTANCE_CONTENT_TYPE:?}, got {:?}",
            raw.content_type
        )));
    }
    if raw.points_x.len() != raw.points_y.len() {
        return Err(ModelError::Schema("points_x and points_y differ in length".into()));
    }
    if raw.num_points != raw.points_x.len() {
        return Err(ModelError::Schema(format!(
            "num_points is {} but {} points are listed",
            raw.num_points,
            raw.points_x.len()
        )));
    }
    if raw.num_constraints != raw.additional_constraints.len() {
        return Err(ModelError::Schema(format!(
            "num_constraints is {} but {} constraints are listed",
            raw.num_constraints,
            raw.additional_constraints.len()
        )));
    }
    if raw.num_points > MAX_POINTS {
        return Err(ModelError::Schema(format!(
            "too many points: {} exceeds the limit of {MAX_POINTS}",
            raw.num_points
        )));
    }
    let points = raw
        .points_x
        .iter()
        .zip(&raw.points_y)
        .map(|(&x, &y)| Point::from_ints(x, y))
        .collect();
    Instance::new(raw.instance_uid, points, raw.region_boundary, raw.additional_constraints)
}

pub fn save_instance(inst: &Instance) -> Vec<u8> {
    let coord = |c: &Coord| c.numer().to_i64().expect("instance coordinates fit in i64");
    let raw = RawInstance {
        content_type: INSTANCE_CONTENT_TYPE.to_string(),
        instance_uid: inst.uid.clone(),
        num_points: inst.points.len(),
        points_x: inst.points.iter().map(|p| coord(p.x())).collect(),
        points_y: inst.points.iter().map(|p| coord(p.y())).collect(),
        region_boundary: inst.region_boundary.clone(),
        num_constraints: inst.constraints.len(),
        additional_constraints: inst.constraints.clone(),
    };
    let mut out = serde_json::to_vec(&raw).expect("instance serializes");
    out.push(b'\n');
    out
}

pub fn load_solution(bytes: &[u8]) -> Result<Solution, ModelError> {
    let raw: RawSolution = serde_json::from_slice(bytes).map_err(ModelError::from_json)?;
    if raw.content_type != SOLUTION_CONTENT_TYPE {
        return Err(ModelError::Schema(format!(
            "content_type must be {SOLUTION_CONTENT_TYPE:?}, got {:?}",
            raw.content_type
        )));
    }
    if raw.steiner_points_x.len() != raw.steiner_points_y.len() {
        return Err(ModelError::Schema(
            "steiner_points_x and steiner_points_y differ in length".into(),
        ));
    }
    let steiner = raw
        .steiner_points_x
        .iter()
        .zip(&raw.steiner_points_y)
        .map(|(x, y)| Ok(Point::new(coord_from_raw(x)?, coord_from_raw(y)?)))
        .collect::<Result<Vec<_>, ModelError>>()?;
    Solution::new(raw.instance_uid, steiner, raw.edges)
}

pub fn save_solution(sol: &Solution) -> Vec<u8> {
    let raw = RawSolution {
        content_type: SOLUTION_CONTENT_TYPE.to_string(),
        instance_uid: sol.instance_uid.clone(),
        steiner_points_x: sol.steiner_points.iter().map(|p| raw_coord(p.x())).collect(),
        steiner_points_y: sol.steiner_points.iter().map(|p| raw_coord(p.y())).collect(),
        edges: sol.edges.clone(),
    };
    let mut out = serde_json::to_vec(&raw).expect("solution serializes");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn q(n: i64, d: i64) -> Coord {
        Coord::new(n.into(), d.into())
    }

    fn square_json(boundary: &str, constraints: &str, n_constraints: usize) -> String {
        format!(
            r#"{{"content_type":"CG_SHOP_2025_Instance","instance_uid":"sq","num_points":4,
            "points_x":[0,2,2,0],"points_y":[0,0,2,2],"region_boundary":{boundary},
            "num_constraints":{n_constraints},"additional_constraints":{constraints}}}"#
        )
    }

    #[test]
    fn loads_square() {
        let inst = load_instance(square_json("[0,1,2,3]", "[]", 0).as_bytes()).unwrap();
        assert_eq!(inst.num_points(), 4);
        assert_eq!(inst.region_boundary(), &[0, 1, 2, 3]);
        let again = load_instance(&save_instance(&inst)).unwrap();
        assert_eq!(again, inst);
    }

    #[test]
    fn rejects_clockwise_boundary() {
        let err = load_instance(square_json("[0,3,2,1]", "[]", 0).as_bytes()).unwrap_err();
        match err {
            ModelError::Geometry { message, .. } => assert_eq!(message, "boundary not counter-clockwise"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn rejects_crossing_constraints() {
        // a 4x4 square with a centre-crossing X of constraints between interior points
        let json = r#"{"content_type":"CG_SHOP_2025_Instance","instance_uid":"x","num_points":8,
            "points_x":[-1,3,3,-1,0,2,0,2],"points_y":[-1,-1,3,3,0,2,2,0],
            "region_boundary":[0,1,2,3],"num_constraints":2,
            "additional_constraints":[[4,5],[6,7]]}"#;
        match load_instance(json.as_bytes()).unwrap_err() {
            ModelError::Geometry { message, indices } => {
                assert!(message.contains("constraints 0 and 1 cross"), "{message}");
                assert_eq!(indices, vec![4, 5, 6, 7]);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn diagonal_constraint_is_fine() {
        let inst = load_instance(square_json("[0,1,2,3]", "[[0,2]]", 1).as_bytes()).unwrap();
        assert_eq!(inst.constraints(), &[(0, 2)]);
    }

    #[test]
    fn schema_and_parse_errors() {
        assert!(matches!(load_instance(b"{not json"), Err(ModelError::Parse(_))));
        assert!(matches!(
            load_instance(br#"{"content_type":"CG_SHOP_2025_Instance"}"#),
            Err(ModelError::Schema(_))
        ));
        assert!(matches!(
            load_instance(square_json("[0,1,2,3]", "[]", 3).as_bytes()),
            Err(ModelError::Schema(_))
        ));
        assert!(matches!(
            load_instance(square_json("[0,1,2,7]", "[]", 0).as_bytes()),
            Err(ModelError::Schema(_))
        ));
    }

    #[test]
    fn bow_tie_boundary_is_not_simple() {
        let pts = vec![p(0, 0), p(4, 0), p(1, 3), p(3, 3)];
        let err = Instance::new("bt", pts, vec![0, 1, 2, 3], vec![]).unwrap_err();
        assert!(matches!(err, ModelError::Geometry { .. }), "{err:?}");
    }

    #[test]
    fn point_outside_region_rejected() {
        let pts = vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2), p(5, 5)];
        let err = Instance::new("o", pts, vec![0, 1, 2, 3], vec![]).unwrap_err();
        assert_eq!(err, ModelError::geometry("point outside region", vec![4]));
    }

    #[test]
    fn solution_round_trips_rationals() {
        let sol = Solution::new("sq", vec![Point::new(q(7, 2), q(1, 3)), p(4, 0)], vec![(0, 4), (4, 5)])
            .unwrap();
        let bytes = save_solution(&sol);
        let text = String::from_utf8(bytes.clone()).unwrap();
        assert!(text.contains(r#""steiner_points_x":["7/2",4]"#), "{text}");
        assert!(text.contains(r#""steiner_points_y":["1/3",0]"#), "{text}");
        assert_eq!(load_solution(&bytes).unwrap(), sol);
    }

    #[test]
    fn duplicate_edge_rejected() {
        let json = r#"{"content_type":"CG_SHOP_2025_Solution","instance_uid":"sq",
            "steiner_points_x":[],"steiner_points_y":[],"edges":[[0,1],[1,0]]}"#;
        match load_solution(json.as_bytes()).unwrap_err() {
            ModelError::Schema(msg) => assert!(msg.contains("duplicate edge"), "{msg}"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn combined_vertices_appends_steiner() {
        let inst = load_instance(square_json("[0,1,2,3]", "[]", 0).as_bytes()).unwrap();
        let sol = Solution::new("sq", vec![p(1, 1)], vec![]).unwrap();
        let all = combined_vertices(&inst, &sol).unwrap();
        assert_eq!(all.len(), 5);
        assert_eq!(all[4], p(1, 1));
        let none = Solution::new("sq", vec![], vec![]).unwrap();
        assert_eq!(combined_vertices(&inst, &none).unwrap(), inst.points().to_vec());
        let other = Solution::new("nope", vec![], vec![]).unwrap();
        assert!(matches!(combined_vertices(&inst, &other), Err(ModelError::UidMismatch { .. })));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), q(12, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("+3").is_err());
        assert_eq!(format_rational(&q(-3, 2)), "-3/2");
        assert_eq!(format_rational(&q(8, 4)), "2");
    }
}
