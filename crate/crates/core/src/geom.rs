//! Exact geometric kernel over arbitrary-precision rational coordinates.
//!
//! Every predicate first evaluates a conservative interval enclosure of its
//! determinant and only falls back to exact rational arithmetic when the
//! enclosure straddles zero. Both paths return identical answers.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::filter::Interval;

/// Exact rational coordinate, always kept in lowest terms with a positive
/// denominator.
pub type Coord = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("circumcircle undefined: the three points are collinear")]
    Collinear,
}

/// A point in the plane with exact coordinates.
///
/// A floating-point enclosure of each coordinate is cached alongside; it is
/// never used for anything but sign filtering.
#[derive(Clone)]
pub struct Point {
    x: Coord,
    y: Coord,
    ax: Interval,
    ay: Interval,
}

fn enclose(c: &Coord) -> Interval {
    if c.denom().is_one() {
        if let Some(v) = c.numer().to_i64() {
            if v.unsigned_abs() <= (1u64 << 53) {
                return Interval::point(v as f64);
            }
        }
    }
    match c.to_f64() {
        Some(v) if v.is_finite() => Interval::around(v, 2),
        _ => Interval {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        },
    }
}

impl Point {
    pub fn new(x: Coord, y: Coord) -> Self {
        let ax = enclose(&x);
        let ay = enclose(&y);
        Point { x, y, ax, ay }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Coord::from_integer(x.into()), Coord::from_integer(y.into()))
    }

    pub fn x(&self) -> &Coord {
        &self.x
    }

    pub fn y(&self) -> &Coord {
        &self.y
    }

    /// Display-only approximation.
    pub fn to_f64(&self) -> (f64, f64) {
        (
            self.x.to_f64().unwrap_or(f64::NAN),
            self.y.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub(crate) fn x_interval(&self) -> Interval {
        self.ax
    }

    pub(crate) fn y_interval(&self) -> Interval {
        self.ay
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Applies `x -> f(x), y -> g(y)` style maps; used by tests and generators.
    pub fn map(&self, f: impl Fn(&Coord, &Coord) -> (Coord, Coord)) -> Point {
        let (x, y) = f(&self.x, &self.y);
        Point::new(x, y)
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_coord(&self.x, self.ax, &other.x, other.ax)
            .then_with(|| cmp_coord(&self.y, self.ay, &other.y, other.ay))
    }
}

fn cmp_coord(a: &Coord, ai: Interval, b: &Coord, bi: Interval) -> Ordering {
    if ai.hi < bi.lo {
        Ordering::Less
    } else if ai.lo > bi.hi {
        Ordering::Greater
    } else {
        a.cmp(b)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    fn from_sign(s: Ordering) -> Self {
        match s {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Less => Orientation::Clockwise,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangleClass {
    Acute,
    Right,
    Obtuse,
    Degenerate,
}

fn sign_of(c: &Coord) -> Ordering {
    if c.is_positive() {
        Ordering::Greater
    } else if c.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

// ---------------------------------------------------------------------------
// Determinants. Each comes in an interval version and an exact version; the
// public predicates combine them.

fn orient_interval(a: &Point, b: &Point, c: &Point) -> Interval {
    (b.ax - a.ax) * (c.ay - a.ay) - (b.ay - a.ay) * (c.ax - a.ax)
}

fn orient_exact(a: &Point, b: &Point, c: &Point) -> Coord {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

fn incircle_interval(a: &Point, b: &Point, c: &Point, d: &Point) -> Interval {
    let adx = a.ax - d.ax;
    let ady = a.ay - d.ay;
    let bdx = b.ax - d.ax;
    let bdy = b.ay - d.ay;
    let cdx = c.ax - d.ax;
    let cdy = c.ay - d.ay;
    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;
    alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) + clift * (adx * bdy - bdx * ady)
}

fn incircle_exact(a: &Point, b: &Point, c: &Point, d: &Point) -> Coord {
    let adx = &a.x - &d.x;
    let ady = &a.y - &d.y;
    let bdx = &b.x - &d.x;
    let bdy = &b.y - &d.y;
    let cdx = &c.x - &d.x;
    let cdy = &c.y - &d.y;
    let alift = &adx * &adx + &ady * &ady;
    let blift = &bdx * &bdx + &bdy * &bdy;
    let clift = &cdx * &cdx + &cdy * &cdy;
    alift * (&bdx * &cdy - &cdx * &bdy)
        + blift * (&cdx * &ady - &adx * &cdy)
        + clift * (&adx * &bdy - &bdx * &ady)
}

fn dot_interval(apex: &Point, b: &Point, c: &Point) -> Interval {
    (b.ax - apex.ax) * (c.ax - apex.ax) + (b.ay - apex.ay) * (c.ay - apex.ay)
}

fn dot_exact(apex: &Point, b: &Point, c: &Point) -> Coord {
    (&b.x - &apex.x) * (&c.x - &apex.x) + (&b.y - &apex.y) * (&c.y - &apex.y)
}

/// Unreduced fraction with a positive denominator. The exact fallbacks only
/// need signs, so they skip the gcd work that `BigRational` does on every
/// operation.
struct Frac {
    n: BigInt,
    d: BigInt,
}

impl Frac {
    fn of(c: &Coord) -> Self {
        Frac {
            n: c.numer().clone(),
            d: c.denom().clone(),
        }
    }

    fn sub(&self, o: &Frac) -> Frac {
        if self.d == o.d {
            Frac {
                n: &self.n - &o.n,
                d: self.d.clone(),
            }
        } else {
            Frac {
                n: &self.n * &o.d - &o.n * &self.d,
                d: &self.d * &o.d,
            }
        }
    }

    fn add(&self, o: &Frac) -> Frac {
        if self.d == o.d {
            Frac {
                n: &self.n + &o.n,
                d: self.d.clone(),
            }
        } else {
            Frac {
                n: &self.n * &o.d + &o.n * &self.d,
                d: &self.d * &o.d,
            }
        }
    }

    fn mul(&self, o: &Frac) -> Frac {
        let d = if self.d.is_one() {
            o.d.clone()
        } else if o.d.is_one() {
            self.d.clone()
        } else {
            &self.d * &o.d
        };
        Frac { n: &self.n * &o.n, d }
    }

    fn sign(&self) -> Ordering {
        self.n.sign().cmp(&num_bigint::Sign::NoSign)
    }
}

fn diffs(p: &Point, origin: &Point) -> (Frac, Frac) {
    (
        Frac::of(&p.x).sub(&Frac::of(&origin.x)),
        Frac::of(&p.y).sub(&Frac::of(&origin.y)),
    )
}

fn orient_lazy(a: &Point, b: &Point, c: &Point) -> Ordering {
    let (bx, by) = diffs(b, a);
    let (cx, cy) = diffs(c, a);
    let l = bx.mul(&cy);
    let r = by.mul(&cx);
    // sign of l.n/l.d - r.n/r.d with positive denominators
    (&l.n * &r.d).cmp(&(&r.n * &l.d))
}

fn incircle_lazy(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    let (adx, ady) = diffs(a, d);
    let (bdx, bdy) = diffs(b, d);
    let (cdx, cdy) = diffs(c, d);
    let alift = adx.mul(&adx).add(&ady.mul(&ady));
    let blift = bdx.mul(&bdx).add(&bdy.mul(&bdy));
    let clift = cdx.mul(&cdx).add(&cdy.mul(&cdy));
    let t1 = alift.mul(&bdx.mul(&cdy).sub(&cdx.mul(&bdy)));
    let t2 = blift.mul(&cdx.mul(&ady).sub(&adx.mul(&cdy)));
    let t3 = clift.mul(&adx.mul(&bdy).sub(&bdx.mul(&ady)));
    t1.add(&t2).add(&t3).sign()
}

fn dot_lazy(apex: &Point, b: &Point, c: &Point) -> Ordering {
    let (bx, by) = diffs(b, apex);
    let (cx, cy) = diffs(c, apex);
    bx.mul(&cx).add(&by.mul(&cy)).sign()
}

/// Sign of `(b - a) x (c - a)`.
pub(crate) fn orient_sign(a: &Point, b: &Point, c: &Point) -> Ordering {
    orient_interval(a, b, c)
        .sign()
        .unwrap_or_else(|| orient_lazy(a, b, c))
}

/// Sign of the lifted in-circle determinant; assumes `a, b, c` counter-clockwise.
pub(crate) fn incircle_sign(a: &Point, b: &Point, c: &Point, d: &Point) -> Ordering {
    incircle_interval(a, b, c, d)
        .sign()
        .unwrap_or_else(|| incircle_lazy(a, b, c, d))
}

/// Sign of `(b - apex) . (c - apex)`.
pub(crate) fn dot_sign(apex: &Point, b: &Point, c: &Point) -> Ordering {
    dot_interval(apex, b, c)
        .sign()
        .unwrap_or_else(|| dot_lazy(apex, b, c))
}

/// Exact-only evaluations in reduced rational arithmetic, exposed so tests
/// can check the filtered path against them.
pub mod exact {
    use super::*;

    pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
        Orientation::from_sign(sign_of(&orient_exact(a, b, c)))
    }

    pub fn in_circle(a: &Point, b: &Point, c: &Point, d: &Point) -> i8 {
        match sign_of(&incircle_exact(a, b, c, d)) {
            Ordering::Greater => 1,
            Ordering::Equal => 0,
            Ordering::Less => -1,
        }
    }

    pub fn dot_sign(apex: &Point, b: &Point, c: &Point) -> Ordering {
        sign_of(&dot_exact(apex, b, c))
    }
}

// ---------------------------------------------------------------------------
// Public predicates.

pub fn orientation(a: &Point, b: &Point, c: &Point) -> Orientation {
    Orientation::from_sign(orient_sign(a, b, c))
}

/// `+1` when `d` is strictly inside the circumcircle of the counter-clockwise
/// triangle `a, b, c`, `0` when cocircular and `-1` when strictly outside.
pub fn in_circle(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<i8, GeomError> {
    if orient_sign(a, b, c) == Ordering::Equal {
        return Err(GeomError::Collinear);
    }
    Ok(match incircle_sign(a, b, c, d) {
        Ordering::Greater => 1,
        Ordering::Equal => 0,
        Ordering::Less => -1,
    })
}

/// Right angles are not obtuse.
pub fn angle_is_obtuse_at(apex: &Point, b: &Point, c: &Point) -> bool {
    dot_sign(apex, b, c) == Ordering::Less
}

pub fn classify_triangle(a: &Point, b: &Point, c: &Point) -> TriangleClass {
    if orient_sign(a, b, c) == Ordering::Equal {
        return TriangleClass::Degenerate;
    }
    let dots = [dot_sign(a, b, c), dot_sign(b, c, a), dot_sign(c, a, b)];
    if dots.contains(&Ordering::Less) {
        TriangleClass::Obtuse
    } else if dots.contains(&Ordering::Equal) {
        TriangleClass::Right
    } else {
        TriangleClass::Acute
    }
}

/// Index (0, 1 or 2) of the obtuse corner, if any.
pub fn obtuse_apex(tri: [&Point; 3]) -> Option<usize> {
    (0..3).find(|&k| angle_is_obtuse_at(tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]))
}

/// Closed-segment membership: collinear and inside the bounding box.
pub fn point_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orient_sign(a, b, p) != Ordering::Equal {
        return false;
    }
    in_closed_box(p, a, b)
}

fn in_closed_box(p: &Point, a: &Point, b: &Point) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (a, b) } else { (b, a) };
    let (ylo, yhi) = if a.y <= b.y { (a, b) } else { (b, a) };
    p.x >= xlo.x && p.x <= xhi.x && p.y >= ylo.y && p.y <= yhi.y
}

/// `p` lies on the open segment `(a, b)`.
pub fn point_strictly_inside_segment(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && point_on_segment(p, a, b)
}

/// True iff the segments share a point that is interior to at least one of
/// them. Shared endpoints alone do not count; collinear overlap of positive
/// length does.
pub fn segments_properly_cross(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    if !boxes_may_touch(p, q, r, s) {
        return false;
    }
    let o1 = orient_sign(p, q, r);
    let o2 = orient_sign(p, q, s);
    let o3 = orient_sign(r, s, p);
    let o4 = orient_sign(r, s, q);

    if o1 == Ordering::Equal && o2 == Ordering::Equal {
        return collinear_overlap_positive(p, q, r, s);
    }
    if o1 != Ordering::Equal && o2 != Ordering::Equal && o3 != Ordering::Equal && o4 != Ordering::Equal {
        return o1 != o2 && o3 != o4;
    }
    (o1 == Ordering::Equal && point_strictly_inside_segment(r, p, q))
        || (o2 == Ordering::Equal && point_strictly_inside_segment(s, p, q))
        || (o3 == Ordering::Equal && point_strictly_inside_segment(p, r, s))
        || (o4 == Ordering::Equal && point_strictly_inside_segment(q, r, s))
}

/// True iff the closed segments have any point in common.
pub fn segments_intersect(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    if !boxes_may_touch(p, q, r, s) {
        return false;
    }
    let o1 = orient_sign(p, q, r);
    let o2 = orient_sign(p, q, s);
    let o3 = orient_sign(r, s, p);
    let o4 = orient_sign(r, s, q);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal
        && o3 != Ordering::Equal && o4 != Ordering::Equal
    {
        return true;
    }
    (o1 == Ordering::Equal && in_closed_box(r, p, q))
        || (o2 == Ordering::Equal && in_closed_box(s, p, q))
        || (o3 == Ordering::Equal && in_closed_box(p, r, s))
        || (o4 == Ordering::Equal && in_closed_box(q, r, s))
}

fn boxes_may_touch(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    let (pq_xlo, pq_xhi) = (p.ax.lo.min(q.ax.lo), p.ax.hi.max(q.ax.hi));
    let (rs_xlo, rs_xhi) = (r.ax.lo.min(s.ax.lo), r.ax.hi.max(s.ax.hi));
    let (pq_ylo, pq_yhi) = (p.ay.lo.min(q.ay.lo), p.ay.hi.max(q.ay.hi));
    let (rs_ylo, rs_yhi) = (r.ay.lo.min(s.ay.lo), r.ay.hi.max(s.ay.hi));
    !(pq_xhi < rs_xlo || rs_xhi < pq_xlo || pq_yhi < rs_ylo || rs_yhi < pq_ylo)
}

fn collinear_overlap_positive(p: &Point, q: &Point, r: &Point, s: &Point) -> bool {
    // project onto the axis along which p, q differ
    let key = |a: &Point| if p.x != q.x { a.x.clone() } else { a.y.clone() };
    let (a0, a1) = order(key(p), key(q));
    let (b0, b1) = order(key(r), key(s));
    let lo = if a0 > b0 { a0 } else { b0 };
    let hi = if a1 < b1 { a1 } else { b1 };
    lo < hi
}

fn order(a: Coord, b: Coord) -> (Coord, Coord) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

// ---------------------------------------------------------------------------
// Polygons.

/// Twice the signed area of a closed polygon, exact.
pub fn twice_signed_area(poly: &[&Point]) -> Coord {
    let n = poly.len();
    let mut acc = Coord::zero();
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        acc += &a.x * &b.y - &b.x * &a.y;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolygonLocation {
    Inside,
    OnBoundary,
    Outside,
}

/// Exact winding-number point-in-polygon test.
pub fn locate_in_polygon(p: &Point, poly: &[&Point]) -> PolygonLocation {
    let n = poly.len();
    let mut winding = 0i64;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if point_on_segment(p, a, b) {
            return PolygonLocation::OnBoundary;
        }
        let a_le = cmp_coord(&a.y, a.ay, &p.y, p.ay) != Ordering::Greater;
        let b_le = cmp_coord(&b.y, b.ay, &p.y, p.ay) != Ordering::Greater;
        if a_le && !b_le {
            if orient_sign(a, b, p) == Ordering::Greater {
                winding += 1;
            }
        } else if !a_le && b_le && orient_sign(a, b, p) == Ordering::Less {
            winding -= 1;
        }
    }
    if winding != 0 {
        PolygonLocation::Inside
    } else {
        PolygonLocation::Outside
    }
}

// ---------------------------------------------------------------------------
// Constructions. All results are exact.

pub fn midpoint(a: &Point, b: &Point) -> Point {
    let two = Coord::from_integer(BigInt::from(2));
    Point::new((&a.x + &b.x) / &two, (&a.y + &b.y) / &two)
}

pub fn centroid(a: &Point, b: &Point, c: &Point) -> Point {
    let three = Coord::from_integer(BigInt::from(3));
    Point::new((&a.x + &b.x + &c.x) / &three, (&a.y + &b.y + &c.y) / &three)
}

pub fn average(points: &[&Point]) -> Option<Point> {
    if points.is_empty() {
        return None;
    }
    let n = Coord::from_integer(BigInt::from(points.len()));
    let sx = points.iter().fold(Coord::zero(), |acc, p| acc + &p.x);
    let sy = points.iter().fold(Coord::zero(), |acc, p| acc + &p.y);
    Some(Point::new(sx / &n, sy / n))
}

/// Circumcenter of a non-degenerate triangle.
pub fn circumcenter(a: &Point, b: &Point, c: &Point) -> Result<Point, GeomError> {
    let bx = &b.x - &a.x;
    let by = &b.y - &a.y;
    let cx = &c.x - &a.x;
    let cy = &c.y - &a.y;
    let d = (&bx * &cy - &by * &cx) * Coord::from_integer(BigInt::from(2));
    if d.is_zero() {
        return Err(GeomError::Collinear);
    }
    let b2 = &bx * &bx + &by * &by;
    let c2 = &cx * &cx + &cy * &cy;
    let ux = (&cy * &b2 - &by * &c2) / &d;
    let uy = (&bx * &c2 - &cx * &b2) / &d;
    Ok(Point::new(&a.x + ux, &a.y + uy))
}

/// Orthogonal projection of `p` onto the line through `a` and `b` (`a != b`).
pub fn project_onto_line(p: &Point, a: &Point, b: &Point) -> Point {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let len2 = &dx * &dx + &dy * &dy;
    let t = ((&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy) / len2;
    Point::new(&a.x + &t * &dx, &a.y + &t * &dy)
}

/// Parameter `t` along `p -> q` of the intersection with segment `r s`, when
/// the two are not parallel and do intersect.
pub fn segment_intersection_param(p: &Point, q: &Point, r: &Point, s: &Point) -> Option<Coord> {
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    let ex = &s.x - &r.x;
    let ey = &s.y - &r.y;
    let denom = &dx * &ey - &dy * &ex;
    if denom.is_zero() {
        return None;
    }
    let fx = &r.x - &p.x;
    let fy = &r.y - &p.y;
    let t = (&fx * &ey - &fy * &ex) / &denom;
    let u = (&fx * &dy - &fy * &dx) / &denom;
    let zero = Coord::zero();
    let one = Coord::one();
    if t < zero || t > one || u < zero || u > one {
        return None;
    }
    Some(t)
}

/// First point, strictly after `a`, where the ray from `a` through `through`
/// meets one of `segments`. With `bounded` the search stops at `through`.
/// `None` when nothing is hit or `a == through`.
pub fn first_hit<'a>(
    a: &Point,
    through: &Point,
    segments: impl IntoIterator<Item = (&'a Point, &'a Point)>,
    bounded: bool,
) -> Option<Point> {
    if a == through {
        return None;
    }
    let (dx, dy) = diffs(through, a);
    // best t as an unreduced fraction num/den with den > 0
    let mut best: Option<(BigInt, BigInt)> = None;
    for (r, s) in segments {
        let side = orient_sign(a, through, r);
        if side != Ordering::Equal && side == orient_sign(a, through, s) {
            continue;
        }
        let (ex, ey) = diffs(s, r);
        let (fx, fy) = diffs(r, a);
        let den = dx.mul(&ey).sub(&dy.mul(&ex));
        if den.n.is_zero() {
            continue;
        }
        let tn = fx.mul(&ey).sub(&fy.mul(&ex));
        let un = fx.mul(&dy).sub(&fy.mul(&dx));
        // t = tn / den and u = un / den as plain fractions
        let flip = den.n.is_negative();
        let fix = |f: &Frac| {
            let (mut n, mut d) = (&f.n * &den.d, &f.d * &den.n);
            if flip {
                n = -n;
                d = -d;
            }
            (n, d)
        };
        let (t_n, t_d) = fix(&tn);
        let (u_n, u_d) = fix(&un);
        if !t_n.is_positive() || u_n.is_negative() || u_n > u_d || (bounded && t_n > t_d) {
            continue;
        }
        let closer = match &best {
            None => true,
            Some((bn, bd)) => &t_n * bd < bn * &t_d,
        };
        if closer {
            best = Some((t_n, t_d));
        }
    }
    best.map(|(n, d)| lerp(a, through, &Coord::new(n, d)))
}

pub fn lerp(p: &Point, q: &Point, t: &Coord) -> Point {
    Point::new(&p.x + t * (&q.x - &p.x), &p.y + t * (&q.y - &p.y))
}

/// Twice the squared length, exact.
pub fn squared_distance(a: &Point, b: &Point) -> Coord {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx * &dx + &dy * &dy
}
