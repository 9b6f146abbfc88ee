//! Constrained Delaunay triangulation of an instance region.
//!
//! Construction runs in three phases:
//!
//! 1. every vertex is inserted into a Delaunay triangulation of a large
//!    enclosing triangle, restoring the empty-circle property with flips;
//! 2. every boundary edge and constraint segment is recovered by deleting the
//!    triangles it crosses and re-triangulating the two cavities on either
//!    side. Vertices lying exactly on a segment split it;
//! 3. triangles outside the region are dropped and a final flip pass makes
//!    every unconstrained interior edge locally Delaunay, breaking cocircular
//!    ties in favour of the lexicographically smaller diagonal.
//!
//! The result is stored as a flat half-edge structure: half-edge `3 * t + k`
//! runs from corner `k` to corner `k + 1` of triangle `t`.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::hash::{BuildHasherDefault, Hasher};

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::geom::{
    self, dot_sign, incircle_sign, locate_in_polygon, obtuse_apex, orient_sign, point_on_segment, Coord,
    Point, PolygonLocation,
};
use crate::model::{normalize, Instance, VertexOrigin};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CdtError {
    #[error("vertex {index} duplicates vertex {other}")]
    DuplicateVertex { index: usize, other: usize },
    #[error("Steiner point {index} lies outside the region")]
    SteinerOutside { index: usize },
    #[error("degenerate input: the region has zero area")]
    Degenerate,
    #[error("segment ({0}, {1}) crosses another constrained segment")]
    ConstraintConflict(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    InTriangle(usize),
    /// Half-edge whose relative interior contains the point.
    OnEdge(usize),
    OnVertex(usize),
    Outside,
}

#[derive(Clone, Debug)]
pub struct Triangulation {
    vertices: Vec<Point>,
    num_original: usize,
    triangles: Vec<[usize; 3]>,
    twins: Vec<Option<usize>>,
    constrained: Vec<bool>,
    boundary: Vec<bool>,
}

impl Triangulation {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn num_original(&self) -> usize {
        self.num_original
    }

    pub fn origin_of(&self, v: usize) -> VertexOrigin {
        if v < self.num_original {
            VertexOrigin::Original
        } else {
            VertexOrigin::Steiner
        }
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle_points(&self, t: usize) -> [&Point; 3] {
        let [a, b, c] = self.triangles[t];
        [&self.vertices[a], &self.vertices[b], &self.vertices[c]]
    }

    pub fn num_half_edges(&self) -> usize {
        self.twins.len()
    }

    pub fn twin(&self, h: usize) -> Option<usize> {
        self.twins[h]
    }

    pub fn next(&self, h: usize) -> usize {
        3 * (h / 3) + (h % 3 + 1) % 3
    }

    pub fn face(&self, h: usize) -> usize {
        h / 3
    }

    pub fn origin(&self, h: usize) -> usize {
        self.triangles[h / 3][h % 3]
    }

    pub fn dest(&self, h: usize) -> usize {
        self.triangles[h / 3][(h % 3 + 1) % 3]
    }

    pub fn is_constrained(&self, h: usize) -> bool {
        self.constrained[h]
    }

    pub fn is_boundary(&self, h: usize) -> bool {
        self.boundary[h]
    }

    /// Unique undirected edges, lower index first, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.num_half_edges())
            .filter(|&h| self.twins[h].is_none_or(|t| h < t))
            .map(|h| normalize(self.origin(h), self.dest(h)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Sorted neighbour lists for every vertex.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (a, b) in self.edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Number of vertices incident to a boundary edge.
    pub fn boundary_vertex_count(&self) -> usize {
        let mut on = vec![false; self.vertices.len()];
        for h in 0..self.num_half_edges() {
            if self.boundary[h] {
                on[self.origin(h)] = true;
                on[self.dest(h)] = true;
            }
        }
        on.iter().filter(|&&b| b).count()
    }

    pub fn interior_vertex_count(&self) -> usize {
        self.vertices.len() - self.boundary_vertex_count()
    }

    /// `triangles = 2 i + b - 2` with `i` interior and `b` boundary vertices.
    pub fn satisfies_euler(&self) -> bool {
        let b = self.boundary_vertex_count();
        let i = self.vertices.len() - b;
        self.triangles.len() + 2 == 2 * i + b
    }

    /// Triangles with an obtuse angle, with the vertex at that angle.
    pub fn enumerate_obtuse(&self) -> Vec<(usize, usize)> {
        (0..self.triangles.len())
            .filter_map(|t| obtuse_apex(self.triangle_points(t)).map(|k| (t, self.triangles[t][k])))
            .collect()
    }

    pub fn obtuse_count(&self) -> usize {
        (0..self.triangles.len())
            .filter(|&t| obtuse_apex(self.triangle_points(t)).is_some())
            .count()
    }

    /// Exact point location by scanning every triangle.
    pub fn locate(&self, p: &Point) -> Location {
        for (t, tri) in self.triangles.iter().enumerate() {
            let s: Vec<Ordering> = (0..3)
                .map(|k| orient_sign(&self.vertices[tri[k]], &self.vertices[tri[(k + 1) % 3]], p))
                .collect();
            if s.contains(&Ordering::Less) {
                continue;
            }
            if let Some(&v) = tri.iter().find(|&&v| self.vertices[v] == *p) {
                return Location::OnVertex(v);
            }
            return match s.iter().position(|&o| o == Ordering::Equal) {
                Some(k) => Location::OnEdge(3 * t + k),
                None => Location::InTriangle(t),
            };
        }
        Location::Outside
    }

    /// Whether every unconstrained interior edge passes the in-circle test.
    pub fn is_locally_delaunay(&self) -> bool {
        (0..self.num_half_edges()).all(|h| {
            if self.constrained[h] {
                return true;
            }
            let Some(t) = self.twins[h] else { return true };
            let a = &self.vertices[self.origin(h)];
            let b = &self.vertices[self.dest(h)];
            let c = &self.vertices[self.origin(self.next(self.next(h)))];
            let d = &self.vertices[self.origin(self.next(self.next(t)))];
            incircle_sign(a, b, c, d) != Ordering::Greater
        })
    }

    /// Checks the structural invariants against the instance region:
    /// positive orientation, twin consistency, that the twin-less half-edges
    /// are exactly the boundary ones and lie on region edges, and that the
    /// triangle areas add up to the region area.
    pub fn check_invariants(&self, inst: &Instance) -> Result<(), String> {
        for (t, tri) in self.triangles.iter().enumerate() {
            let [a, b, c] = self.triangle_points(t);
            if orient_sign(a, b, c) != Ordering::Greater {
                return Err(format!("triangle {t} {tri:?} is not counter-clockwise"));
            }
        }
        let region: Vec<(&Point, &Point)> = inst
            .boundary_edges()
            .map(|(a, b)| (&inst.points()[a], &inst.points()[b]))
            .collect();
        for h in 0..self.num_half_edges() {
            if self.next(self.next(self.next(h))) != h {
                return Err(format!("next cycle broken at {h}"));
            }
            match self.twins[h] {
                Some(t) => {
                    if self.twins[t] != Some(h)
                        || self.origin(t) != self.dest(h)
                        || self.dest(t) != self.origin(h)
                    {
                        return Err(format!("twin mismatch at half-edge {h}"));
                    }
                    if self.boundary[h] {
                        return Err(format!("interior half-edge {h} flagged as boundary"));
                    }
                }
                None => {
                    if !self.boundary[h] {
                        return Err(format!("hull half-edge {h} not flagged as boundary"));
                    }
                    let p = &self.vertices[self.origin(h)];
                    let q = &self.vertices[self.dest(h)];
                    let on_region = region
                        .iter()
                        .any(|(a, b)| point_on_segment(p, a, b) && point_on_segment(q, a, b));
                    if !on_region {
                        return Err(format!("hull half-edge {h} does not lie on the region boundary"));
                    }
                }
            }
        }
        let mut total = Coord::zero();
        for t in 0..self.triangles.len() {
            let [a, b, c] = self.triangle_points(t);
            total += geom::twice_signed_area(&[a, b, c]);
        }
        if total != geom::twice_signed_area(&inst.boundary_points()) {
            return Err("triangle areas do not add up to the region area".into());
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------

#[derive(Default, Clone, Copy)]
struct FxHasher(u64);

impl Hasher for FxHasher {
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.write_u64(b as u64);
        }
    }

    fn write_u64(&mut self, n: u64) {
        self.0 = (self.0.rotate_left(5) ^ n).wrapping_mul(0x517c_c1b7_2722_0a95);
    }

    fn write_usize(&mut self, n: usize) {
        self.write_u64(n as u64);
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

type FastMap<K, V> = HashMap<K, V, BuildHasherDefault<FxHasher>>;
type FastSet<K> = HashSet<K, BuildHasherDefault<FxHasher>>;

enum Walk {
    In(usize),
    OnEdge(usize, usize, usize),
    OnVertex(usize),
}

struct Builder {
    pts: Vec<Point>,
    tris: Vec<[usize; 3]>,
    alive: Vec<bool>,
    edge_tri: FastMap<(usize, usize), usize>,
    vertex_tri: Vec<usize>,
    fixed: FastSet<(usize, usize)>,
    bnd: FastSet<(usize, usize)>,
    hint: usize,
}

impl Builder {
    fn new(mut pts: Vec<Point>) -> Self {
        let n = pts.len();
        pts.extend(super_triangle(&pts));
        let mut b = Builder {
            pts,
            tris: Vec::new(),
            alive: Vec::new(),
            edge_tri: FastMap::default(),
            vertex_tri: vec![usize::MAX; n + 3],
            fixed: FastSet::default(),
            bnd: FastSet::default(),
            hint: 0,
        };
        b.add_tri(n, n + 1, n + 2);
        b
    }

    fn add_tri(&mut self, a: usize, b: usize, c: usize) -> usize {
        debug_assert_eq!(
            orient_sign(&self.pts[a], &self.pts[b], &self.pts[c]),
            Ordering::Greater,
            "triangle ({a},{b},{c}) not counter-clockwise"
        );
        let t = self.tris.len();
        self.tris.push([a, b, c]);
        self.alive.push(true);
        self.edge_tri.insert((a, b), t);
        self.edge_tri.insert((b, c), t);
        self.edge_tri.insert((c, a), t);
        self.vertex_tri[a] = t;
        self.vertex_tri[b] = t;
        self.vertex_tri[c] = t;
        self.hint = t;
        t
    }

    fn kill(&mut self, t: usize) {
        self.alive[t] = false;
        let [a, b, c] = self.tris[t];
        for e in [(a, b), (b, c), (c, a)] {
            if self.edge_tri.get(&e) == Some(&t) {
                self.edge_tri.remove(&e);
            }
        }
    }

    fn third(&self, t: usize, a: usize, b: usize) -> usize {
        *self.tris[t].iter().find(|&&v| v != a && v != b).expect("triangle has a third vertex")
    }

    fn is_fixed(&self, a: usize, b: usize) -> bool {
        self.fixed.contains(&normalize(a, b))
    }

    fn fix(&mut self, a: usize, b: usize, boundary: bool) {
        self.fixed.insert(normalize(a, b));
        if boundary {
            self.bnd.insert(normalize(a, b));
        }
    }

    fn locate(&self, v: usize) -> Walk {
        let p = &self.pts[v];
        let mut t = if self.alive.get(self.hint).copied().unwrap_or(false) {
            self.hint
        } else {
            self.alive.iter().position(|&a| a).expect("at least one live triangle")
        };
        let cap = 4 * self.tris.len() + 16;
        'walk: for _ in 0..cap {
            let [a, b, c] = self.tris[t];
            for (u, w) in [(a, b), (b, c), (c, a)] {
                if orient_sign(&self.pts[u], &self.pts[w], p) == Ordering::Less {
                    if let Some(&n) = self.edge_tri.get(&(w, u)) {
                        t = n;
                        continue 'walk;
                    }
                }
            }
            return self.classify_in(t, v);
        }
        // visibility walk failed to settle; fall back to a scan
        for t in 0..self.tris.len() {
            if !self.alive[t] {
                continue;
            }
            let [a, b, c] = self.tris[t];
            if [(a, b), (b, c), (c, a)]
                .iter()
                .all(|&(u, w)| orient_sign(&self.pts[u], &self.pts[w], p) != Ordering::Less)
            {
                return self.classify_in(t, v);
            }
        }
        unreachable!("point outside the enclosing triangle")
    }

    fn classify_in(&self, t: usize, v: usize) -> Walk {
        let p = &self.pts[v];
        let [a, b, c] = self.tris[t];
        for &u in &[a, b, c] {
            if self.pts[u] == *p {
                return Walk::OnVertex(u);
            }
        }
        for (u, w) in [(a, b), (b, c), (c, a)] {
            if orient_sign(&self.pts[u], &self.pts[w], p) == Ordering::Equal {
                return Walk::OnEdge(t, u, w);
            }
        }
        Walk::In(t)
    }

    fn insert_vertex(&mut self, v: usize) -> Result<(), CdtError> {
        match self.locate(v) {
            Walk::OnVertex(w) => {
                let (index, other) = if v > w { (v, w) } else { (w, v) };
                Err(CdtError::DuplicateVertex { index, other })
            }
            Walk::In(t) => {
                let [a, b, c] = self.tris[t];
                self.kill(t);
                self.add_tri(a, b, v);
                self.add_tri(b, c, v);
                self.add_tri(c, a, v);
                self.legalize(vec![(a, b), (b, c), (c, a)]);
                Ok(())
            }
            Walk::OnEdge(t, u, w) => {
                let x = self.third(t, u, w);
                let t2 = self.edge_tri.get(&(w, u)).copied();
                self.kill(t);
                self.add_tri(u, v, x);
                self.add_tri(v, w, x);
                let mut stack = vec![(x, u), (w, x)];
                if let Some(t2) = t2 {
                    let y = self.third(t2, u, w);
                    self.kill(t2);
                    self.add_tri(w, v, y);
                    self.add_tri(v, u, y);
                    stack.push((y, w));
                    stack.push((u, y));
                }
                if self.fixed.remove(&normalize(u, w)) {
                    let boundary = self.bnd.remove(&normalize(u, w));
                    self.fix(u, v, boundary);
                    self.fix(v, w, boundary);
                }
                self.legalize(stack);
                Ok(())
            }
        }
    }

    /// Lawson flips on the given edges; each edge `(a, b)` is seen from the
    /// triangle that contains it in counter-clockwise order.
    fn legalize(&mut self, mut stack: Vec<(usize, usize)>) {
        while let Some((a, b)) = stack.pop() {
            if self.is_fixed(a, b) {
                continue;
            }
            let (Some(&t1), Some(&t2)) = (self.edge_tri.get(&(a, b)), self.edge_tri.get(&(b, a))) else {
                continue;
            };
            let c = self.third(t1, a, b);
            let d = self.third(t2, a, b);
            if incircle_sign(&self.pts[a], &self.pts[b], &self.pts[c], &self.pts[d]) == Ordering::Greater {
                self.flip(t1, t2, a, b, c, d);
                stack.push((a, d));
                stack.push((d, b));
            }
        }
    }

    fn flip(&mut self, t1: usize, t2: usize, a: usize, b: usize, c: usize, d: usize) {
        self.kill(t1);
        self.kill(t2);
        self.add_tri(a, d, c);
        self.add_tri(d, b, c);
    }

    /// Live triangles around `s`, each rotated so `s` comes first.
    fn fan(&self, s: usize) -> Vec<[usize; 3]> {
        let mut start = self.vertex_tri[s];
        if start == usize::MAX || !self.alive[start] || !self.tris[start].contains(&s) {
            start = (0..self.tris.len())
                .find(|&t| self.alive[t] && self.tris[t].contains(&s))
                .expect("vertex has an incident triangle");
        }
        let rot = |t: usize| {
            let tri = self.tris[t];
            let k = tri.iter().position(|&v| v == s).unwrap();
            [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]]
        };
        let mut out = Vec::new();
        let mut t = start;
        loop {
            let tri = rot(t);
            out.push(tri);
            match self.edge_tri.get(&(s, tri[2])) {
                Some(&n) if n != start => t = n,
                _ => break,
            }
        }
        out
    }

    fn insert_segment(&mut self, u: usize, v: usize, boundary: bool) -> Result<(), CdtError> {
        let mut s = u;
        let target = self.pts[v].clone();
        while s != v {
            if self.edge_tri.contains_key(&(s, v)) || self.edge_tri.contains_key(&(v, s)) {
                self.fix(s, v, boundary);
                return Ok(());
            }
            let sp = self.pts[s].clone();
            let mut next_start = None;
            let mut pierced = None;
            for [_, a, b] in self.fan(s) {
                let oa = orient_sign(&sp, &self.pts[a], &target);
                if oa == Ordering::Equal && dot_sign(&sp, &self.pts[a], &target) == Ordering::Greater {
                    next_start = Some(a);
                    break;
                }
                let ob = orient_sign(&sp, &self.pts[b], &target);
                if oa == Ordering::Greater && ob == Ordering::Less {
                    pierced = Some((a, b));
                    break;
                }
            }
            if let Some(a) = next_start {
                self.fix(s, a, boundary);
                s = a;
                continue;
            }
            let (a, b) = pierced.expect("segment leaves its start vertex through some triangle");
            let first = self.edge_tri[&(a, b)];
            let mut crossed = vec![first];
            let mut right = vec![a];
            let mut left = vec![b];
            let (mut r, mut l) = (a, b);
            let end = loop {
                if self.is_fixed(r, l) {
                    return Err(CdtError::ConstraintConflict(u, v));
                }
                let n = self.edge_tri[&(l, r)];
                let w = self.third(n, l, r);
                crossed.push(n);
                if w == v {
                    break v;
                }
                match orient_sign(&sp, &target, &self.pts[w]) {
                    Ordering::Equal => break w,
                    Ordering::Less => {
                        right.push(w);
                        r = w;
                    }
                    Ordering::Greater => {
                        left.push(w);
                        l = w;
                    }
                }
            };
            for t in crossed {
                self.kill(t);
            }
            self.fill(s, end, &left);
            right.reverse();
            self.fill(end, s, &right);
            self.fix(s, end, boundary);
            s = end;
        }
        Ok(())
    }

    /// Triangulates the pseudo-polygon bounded by `a -> b` and `chain`, which
    /// lies to the left of `a -> b` and is ordered from `a` towards `b`.
    fn fill(&mut self, a: usize, b: usize, chain: &[usize]) {
        if chain.is_empty() {
            return;
        }
        let mut ci = 0;
        for i in 1..chain.len() {
            if incircle_sign(&self.pts[a], &self.pts[b], &self.pts[chain[ci]], &self.pts[chain[i]])
                == Ordering::Greater
            {
                ci = i;
            }
        }
        let c = chain[ci];
        self.add_tri(a, b, c);
        self.fill(a, c, &chain[..ci]);
        self.fill(c, b, &chain[ci + 1..]);
    }

    fn remove_exterior(&mut self, n: usize) {
        let mut outside = vec![false; self.tris.len()];
        let mut queue = VecDeque::new();
        for t in 0..self.tris.len() {
            if self.alive[t] && self.tris[t].iter().any(|&v| v >= n) {
                outside[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(t) = queue.pop_front() {
            let [a, b, c] = self.tris[t];
            for (u, w) in [(a, b), (b, c), (c, a)] {
                if self.bnd.contains(&normalize(u, w)) {
                    continue;
                }
                if let Some(&nb) = self.edge_tri.get(&(w, u)) {
                    if !outside[nb] {
                        outside[nb] = true;
                        queue.push_back(nb);
                    }
                }
            }
        }
        for t in 0..self.tris.len() {
            if self.alive[t] && outside[t] {
                self.kill(t);
            }
        }
    }

    /// Final Lawson pass with deterministic handling of cocircular quads.
    fn make_delaunay(&mut self) {
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for t in 0..self.tris.len() {
            if self.alive[t] {
                let [a, b, c] = self.tris[t];
                stack.extend([(a, b), (b, c), (c, a)].into_iter().filter(|&(u, w)| u < w));
            }
        }
        while let Some((a, b)) = stack.pop() {
            if self.is_fixed(a, b) {
                continue;
            }
            let (Some(&t1), Some(&t2)) = (self.edge_tri.get(&(a, b)), self.edge_tri.get(&(b, a))) else {
                continue;
            };
            let c = self.third(t1, a, b);
            let d = self.third(t2, a, b);
            let s = incircle_sign(&self.pts[a], &self.pts[b], &self.pts[c], &self.pts[d]);
            let flip = match s {
                Ordering::Greater => true,
                Ordering::Equal => normalize(c, d) < normalize(a, b),
                Ordering::Less => false,
            };
            if flip {
                self.flip(t1, t2, a, b, c, d);
                stack.extend([(a, d), (d, b), (b, c), (c, a)]);
            }
        }
    }

    fn finish(self, num_points: usize, num_original: usize) -> Triangulation {
        let mut triangles: Vec<[usize; 3]> = (0..self.tris.len())
            .filter(|&t| self.alive[t])
            .map(|t| {
                let tri = self.tris[t];
                let k = (0..3).min_by_key(|&k| tri[k]).unwrap();
                [tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]]
            })
            .collect();
        triangles.sort_unstable();
        debug_assert!(triangles.iter().all(|t| t.iter().all(|&v| v < num_points)));

        let mut half: FastMap<(usize, usize), usize> = FastMap::default();
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                half.insert((tri[k], tri[(k + 1) % 3]), 3 * t + k);
            }
        }
        let mut twins = vec![None; 3 * triangles.len()];
        let mut constrained = vec![false; 3 * triangles.len()];
        let mut boundary = vec![false; 3 * triangles.len()];
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let h = 3 * t + k;
                twins[h] = half.get(&(b, a)).copied();
                constrained[h] = self.fixed.contains(&normalize(a, b));
                boundary[h] = self.bnd.contains(&normalize(a, b));
            }
        }
        let mut vertices = self.pts;
        vertices.truncate(num_points);
        Triangulation {
            vertices,
            num_original,
            triangles,
            twins,
            constrained,
            boundary,
        }
    }
}

fn super_triangle(pts: &[Point]) -> [Point; 3] {
    let mut xs = pts.iter().map(|p| p.x());
    let mut ys = pts.iter().map(|p| p.y());
    let first_x = xs.next().expect("non-empty point set").clone();
    let first_y = ys.next().expect("non-empty point set").clone();
    let (min_x, max_x) = xs.fold((first_x.clone(), first_x), |(lo, hi), x| {
        (if *x < lo { x.clone() } else { lo }, if *x > hi { x.clone() } else { hi })
    });
    let (min_y, max_y) = ys.fold((first_y.clone(), first_y), |(lo, hi), y| {
        (if *y < lo { y.clone() } else { lo }, if *y > hi { y.clone() } else { hi })
    });
    let int = |v: i64| Coord::from_integer(BigInt::from(v));
    let two = int(2);
    let cx = (&min_x + &max_x) / &two;
    let cy = (&min_y + &max_y) / &two;
    let w = &max_x - &min_x;
    let h = &max_y - &min_y;
    let mut m = if w > h { w } else { h };
    if m < int(1) {
        m = int(1);
    }
    let m = m.ceil() + int(1);
    [
        Point::new(&cx - &m * int(20), &cy - &m * int(10)),
        Point::new(&cx + &m * int(20), &cy - &m * int(10)),
        Point::new(cx.clone(), &cy + &m * int(20)),
    ]
}

/// Constrained Delaunay triangulation of the instance region using every
/// instance point and every given Steiner point.
pub fn build_cdt(inst: &Instance, steiner: &[Point]) -> Result<Triangulation, CdtError> {
    let boundary = inst.boundary_points();
    if geom::twice_signed_area(&boundary).is_zero() {
        return Err(CdtError::Degenerate);
    }
    let n0 = inst.num_points();
    for (k, p) in steiner.iter().enumerate() {
        if locate_in_polygon(p, &boundary) == PolygonLocation::Outside {
            return Err(CdtError::SteinerOutside { index: n0 + k });
        }
    }
    let pts: Vec<Point> = inst.points().iter().chain(steiner).cloned().collect();
    let n = pts.len();
    let mut b = Builder::new(pts);
    for v in 0..n {
        b.insert_vertex(v)?;
    }
    for (a, c) in inst.boundary_edges() {
        b.insert_segment(a, c, true)?;
    }
    for &(a, c) in inst.constraints() {
        b.insert_segment(a, c, false)?;
    }
    b.remove_exterior(n);
    b.make_delaunay();
    Ok(b.finish(n, n0))
}
