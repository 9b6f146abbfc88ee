//! Delaunay baseline and a lexicographic local search over Steiner sets.
//!
//! Every candidate is evaluated by rebuilding the constrained Delaunay
//! triangulation from scratch. The search is greedy best-improvement with
//! random perturbations from the best state when it gets stuck.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cdt::{build_cdt, CdtError, Triangulation};
use crate::geom::{self, Point};
use crate::model::{Instance, Solution};
use crate::verify::Objective;

/// Candidates with coordinates wider than this many bits are dropped; long
/// chains of circumcentres otherwise make every predicate slow.
pub const MAX_COORD_BITS: u64 = 384;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CandidateRule {
    CircumcenterInsert,
    AltitudeFootInsert,
    EdgeMidpointInsert,
    MoveSteiner,
    DeleteSteiner,
}

impl CandidateRule {
    pub const ALL: [CandidateRule; 5] = [
        CandidateRule::CircumcenterInsert,
        CandidateRule::AltitudeFootInsert,
        CandidateRule::EdgeMidpointInsert,
        CandidateRule::MoveSteiner,
        CandidateRule::DeleteSteiner,
    ];

    pub fn is_insert(self) -> bool {
        matches!(
            self,
            CandidateRule::CircumcenterInsert | CandidateRule::AltitudeFootInsert | CandidateRule::EdgeMidpointInsert
        )
    }
}

impl fmt::Display for CandidateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CandidateRule {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CandidateRule::ALL
            .into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| SolverError::UnknownRule(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("time budget must be positive, got {0}")]
    NonPositiveBudget(f64),
    #[error("at least one insert rule must be enabled")]
    NoInsertRule,
    #[error("unknown candidate rule {0:?}")]
    UnknownRule(String),
    #[error("warm start rejected: {0}")]
    WarmStart(CdtError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Seconds of wall-clock time.
    pub time_budget: f64,
    pub max_iterations: usize,
    pub seed: u64,
    /// Perturbation rounds in a row without a new best before giving up.
    pub restarts: usize,
    pub candidate_rules: BTreeSet<CandidateRule>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_budget: 60.0,
            max_iterations: 100_000,
            seed: 0,
            restarts: 40,
            candidate_rules: CandidateRule::ALL.into_iter().collect(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.time_budget > 0.0) {
            return Err(SolverError::NonPositiveBudget(self.time_budget));
        }
        if !self.candidate_rules.iter().any(|r| r.is_insert()) {
            return Err(SolverError::NoInsertRule);
        }
        Ok(())
    }

    fn enabled(&self, rule: CandidateRule) -> bool {
        self.candidate_rules.contains(&rule)
    }
}

#[derive(Clone, Debug)]
pub struct SearchState {
    steiner: Vec<Point>,
    triangulation: Triangulation,
    objective: Objective,
}

impl SearchState {
    pub fn new(inst: &Instance, steiner: Vec<Point>) -> Result<Self, CdtError> {
        let triangulation = build_cdt(inst, &steiner)?;
        let objective = Objective {
            obtuse: triangulation.obtuse_count(),
            steiner: steiner.len(),
        };
        Ok(SearchState {
            steiner,
            triangulation,
            objective,
        })
    }

    pub fn steiner(&self) -> &[Point] {
        &self.steiner
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn objective(&self) -> Objective {
        self.objective
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
    Insert { rule: CandidateRule, point: Point },
    Relocate { index: usize, point: Point },
    Delete { index: usize },
}

impl Move {
    pub fn rule(&self) -> CandidateRule {
        match self {
            Move::Insert { rule, .. } => *rule,
            Move::Relocate { .. } => CandidateRule::MoveSteiner,
            Move::Delete { .. } => CandidateRule::DeleteSteiner,
        }
    }

    fn apply(&self, steiner: &[Point]) -> Vec<Point> {
        let mut out = steiner.to_vec();
        match self {
            Move::Insert { point, .. } => out.push(point.clone()),
            Move::Relocate { index, point } => out[*index] = point.clone(),
            Move::Delete { index } => {
                out.remove(*index);
            }
        }
        out
    }
}

fn coord_bits(p: &Point) -> u64 {
    [p.x(), p.y()]
        .iter()
        .map(|c| c.numer().bits().max(c.denom().bits()))
        .max()
        .unwrap_or(0)
}

/// Circumcentre of the triangle, or where the segment from its centroid to
/// the circumcentre first meets a boundary edge or constraint.
fn clamped_circumcenter(inst: &Instance, tri: [&Point; 3]) -> Option<Point> {
    let c = geom::circumcenter(tri[0], tri[1], tri[2]).ok()?;
    let g = geom::centroid(tri[0], tri[1], tri[2]);
    Some(geom::first_hit(&g, &c, region_segments(inst), true).unwrap_or(c))
}

fn region_segments(inst: &Instance) -> impl Iterator<Item = (&Point, &Point)> {
    let pts = inst.points();
    inst.boundary_edges()
        .chain(inst.constraints().iter().copied())
        .map(move |(i, j)| (&pts[i], &pts[j]))
}

/// First point where the ray from `a` through `through` meets a boundary
/// edge or constraint beyond `a`.
fn ray_hit(inst: &Instance, a: &Point, through: &Point) -> Option<Point> {
    geom::first_hit(a, through, region_segments(inst), false)
}

/// Points where rays from an obtuse apex first meet the region's segments:
/// continuations of segments ending at the apex, and perpendiculars to the
/// two sides at the apex.
fn apex_rays(inst: &Instance, apex_index: usize, apex: &Point, b: &Point, c: &Point) -> Vec<Point> {
    let mut out = Vec::new();
    let pts = inst.points();
    if apex_index < pts.len() {
        let boundary = inst.boundary_points();
        for (i, j) in inst.boundary_edges().chain(inst.constraints().iter().copied()) {
            let other = if i == apex_index {
                j
            } else if j == apex_index {
                i
            } else {
                continue;
            };
            let through = Point::new(apex.x() + apex.x() - pts[other].x(), apex.y() + apex.y() - pts[other].y());
            if let Some(hit) = ray_hit(inst, apex, &through) {
                let mid = geom::midpoint(apex, &hit);
                if geom::locate_in_polygon(&mid, &boundary) == geom::PolygonLocation::Inside {
                    out.push(hit);
                }
            }
        }
    }
    for (side, other) in [(b, c), (c, b)] {
        let (ux, uy) = (side.x() - apex.x(), side.y() - apex.y());
        let (mut dx, mut dy) = (-uy, ux);
        if (&dx * (other.x() - apex.x()) + &dy * (other.y() - apex.y())) < geom::Coord::zero() {
            dx = -dx;
            dy = -dy;
        }
        let through = Point::new(apex.x() + dx, apex.y() + dy);
        out.extend(ray_hit(inst, apex, &through));
    }
    out
}

/// For regions whose boundary and constraints are all axis-parallel: every
/// grid point spanned by the vertex coordinates that lies in the region.
/// The region then splits into grid rectangles whose circumcircles hold no
/// other vertex, so the triangulation is all right triangles.
pub fn rectilinear_grid(inst: &Instance) -> Option<Vec<Point>> {
    let pts = inst.points();
    let axis = |(i, j): (usize, usize)| pts[i].x() == pts[j].x() || pts[i].y() == pts[j].y();
    if !inst.boundary_edges().all(axis) || !inst.constraints().iter().copied().all(axis) {
        return None;
    }
    let xs: BTreeSet<&geom::Coord> = pts.iter().map(|p| p.x()).collect();
    let ys: BTreeSet<&geom::Coord> = pts.iter().map(|p| p.y()).collect();
    let boundary = inst.boundary_points();
    let existing: HashSet<&Point> = pts.iter().collect();
    let mut out = Vec::new();
    for x in &xs {
        for y in &ys {
            let p = Point::new((*x).clone(), (*y).clone());
            if !existing.contains(&p) && geom::locate_in_polygon(&p, &boundary) != geom::PolygonLocation::Outside {
                out.push(p);
            }
        }
    }
    Some(out)
}

/// Drops Steiner points one at a time, last first, whenever that keeps the
/// obtuse count from rising.
fn deletion_sweep(inst: &Instance, mut state: SearchState, deadline: Instant) -> SearchState {
    let mut k = state.steiner.len();
    while k > 0 && Instant::now() < deadline {
        k -= 1;
        if let Ok(next) = SearchState::new(inst, Move::Delete { index: k }.apply(&state.steiner)) {
            if next.objective < state.objective {
                state = next;
            }
        }
    }
    state
}

fn propose_with(state: &SearchState, inst: &Instance, cfg: &SolverConfig) -> Vec<Move> {
    let tri = &state.triangulation;
    let mut moves = Vec::new();
    let mut seen: HashSet<Point> = tri.vertices().iter().cloned().collect();
    let mut push_insert = |moves: &mut Vec<Move>, rule, point: Point| {
        if coord_bits(&point) <= MAX_COORD_BITS && seen.insert(point.clone()) {
            moves.push(Move::Insert { rule, point });
        }
    };
    for (t, apex_vertex) in tri.enumerate_obtuse() {
        let corners = tri.triangles()[t];
        let k = corners.iter().position(|&v| v == apex_vertex).expect("apex is a corner");
        let pts = tri.triangle_points(t);
        let (apex, b, c) = (pts[k], pts[(k + 1) % 3], pts[(k + 2) % 3]);
        if cfg.enabled(CandidateRule::CircumcenterInsert) {
            if let Some(p) = clamped_circumcenter(inst, pts) {
                push_insert(&mut moves, CandidateRule::CircumcenterInsert, p);
            }
        }
        if cfg.enabled(CandidateRule::AltitudeFootInsert) {
            let foot = geom::project_onto_line(apex, b, c);
            let hit = ray_hit(inst, apex, &foot);
            push_insert(&mut moves, CandidateRule::AltitudeFootInsert, foot);
            if let Some(hit) = hit {
                push_insert(&mut moves, CandidateRule::AltitudeFootInsert, hit);
            }
            for p in apex_rays(inst, apex_vertex, apex, b, c) {
                push_insert(&mut moves, CandidateRule::AltitudeFootInsert, p);
            }
        }
        if cfg.enabled(CandidateRule::EdgeMidpointInsert) {
            for j in 0..3 {
                let h = 3 * t + j;
                if tri.is_constrained(h) || tri.is_boundary(h) {
                    let m = geom::midpoint(&tri.vertices()[tri.origin(h)], &tri.vertices()[tri.dest(h)]);
                    push_insert(&mut moves, CandidateRule::EdgeMidpointInsert, m);
                }
            }
        }
    }
    let n0 = tri.num_original();
    if cfg.enabled(CandidateRule::MoveSteiner) && !state.steiner.is_empty() {
        let adj = tri.adjacency();
        for index in 0..state.steiner.len() {
            let nbrs: Vec<&Point> = adj[n0 + index].iter().map(|&v| &tri.vertices()[v]).collect();
            if let Some(point) = geom::average(&nbrs) {
                if point != state.steiner[index] && coord_bits(&point) <= MAX_COORD_BITS {
                    moves.push(Move::Relocate { index, point });
                }
            }
        }
    }
    if cfg.enabled(CandidateRule::DeleteSteiner) {
        moves.extend((0..state.steiner.len()).map(|index| Move::Delete { index }));
    }
    moves
}

/// All candidate moves from `state` with every rule enabled.
pub fn propose_moves(state: &SearchState, inst: &Instance) -> Vec<Move> {
    propose_with(state, inst, &SolverConfig::default())
}

/// The constrained Delaunay triangulation of the instance, no Steiner points.
pub fn solve_delaunay_baseline(inst: &Instance) -> Solution {
    let state = SearchState::new(inst, Vec::new()).expect("a valid instance always triangulates");
    to_solution(inst, &state)
}

pub fn to_solution(inst: &Instance, state: &SearchState) -> Solution {
    Solution::new(inst.uid(), state.steiner.clone(), state.triangulation.edges())
        .expect("triangulation edges are distinct and Steiner points unique")
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub solution: Solution,
    pub objective: Objective,
    pub baseline: Objective,
    pub iterations: usize,
    /// Best objective after each iteration.
    pub trace: Vec<Objective>,
}

/// Evaluates moves in parallel; returns the lexicographically best result,
/// ties broken by candidate order.
fn best_of(inst: &Instance, steiner: &[Point], moves: &[Move], deadline: Instant) -> Option<SearchState> {
    moves
        .par_iter()
        .enumerate()
        .filter_map(|(k, mv)| {
            if Instant::now() >= deadline {
                return None;
            }
            SearchState::new(inst, mv.apply(steiner)).ok().map(|s| (k, s))
        })
        .min_by(|(ka, a), (kb, b)| a.objective.cmp(&b.objective).then(ka.cmp(kb)))
        .map(|(_, s)| s)
}

fn perturb(inst: &Instance, best: &SearchState, cfg: &SolverConfig, rng: &mut ChaCha8Rng) -> Option<SearchState> {
    let r = rng.random_range(1..=3usize);
    let mut inserts: Vec<Move> = propose_with(best, inst, cfg)
        .into_iter()
        .filter(|m| matches!(m, Move::Insert { .. }))
        .collect();
    let mut steiner = best.steiner.clone();
    if inserts.is_empty() {
        // nothing obtuse to attack: shake the Steiner set instead
        if steiner.is_empty() {
            return None;
        }
        for _ in 0..r.min(steiner.len()) {
            let k = rng.random_range(0..steiner.len());
            steiner.remove(k);
        }
    } else {
        inserts.shuffle(rng);
        for mv in inserts.into_iter().take(r) {
            steiner = mv.apply(&steiner);
        }
    }
    SearchState::new(inst, steiner).ok()
}

pub fn solve_local_search(inst: &Instance, cfg: &SolverConfig) -> Solution {
    search(inst, cfg, None).solution
}

/// Local search with an optional warm-start Steiner set (for example from
/// another solver run). An unusable warm start is an error.
pub fn search(inst: &Instance, cfg: &SolverConfig, warm_start: Option<&[Point]>) -> SearchOutcome {
    search_checked(inst, cfg, warm_start).unwrap_or_else(|_| {
        let baseline = SearchState::new(inst, Vec::new()).expect("a valid instance always triangulates");
        SearchOutcome {
            solution: to_solution(inst, &baseline),
            objective: baseline.objective,
            baseline: baseline.objective,
            iterations: 0,
            trace: vec![],
        }
    })
}

pub fn search_checked(
    inst: &Instance,
    cfg: &SolverConfig,
    warm_start: Option<&[Point]>,
) -> Result<SearchOutcome, SolverError> {
    cfg.validate()?;
    let start = Instant::now();
    let deadline = start + Duration::from_secs_f64(cfg.time_budget.min(1e9));
    let baseline = SearchState::new(inst, Vec::new()).expect("a valid instance always triangulates");
    let baseline_objective = baseline.objective;
    let mut current = match warm_start {
        Some(pts) => {
            let warm = SearchState::new(inst, pts.to_vec()).map_err(SolverError::WarmStart)?;
            if warm.objective < baseline.objective {
                warm
            } else {
                baseline
            }
        }
        None => baseline,
    };
    let mut best = current.clone();
    if best.objective.obtuse > 0 {
        if let Some(grid) = rectilinear_grid(inst) {
            if let Ok(seeded) = SearchState::new(inst, grid) {
                let swept = deletion_sweep(inst, seeded, deadline);
                if swept.objective < best.objective {
                    best = swept;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut stale_rounds = 0;
    let mut iterations = 0;
    let mut trace = Vec::new();
    let done = Objective { obtuse: 0, steiner: 0 };

    while iterations < cfg.max_iterations && Instant::now() < deadline && best.objective != done {
        iterations += 1;
        let moves = propose_with(&current, inst, cfg);
        let improved = best_of(inst, &current.steiner, &moves, deadline)
            .filter(|cand| cand.objective < current.objective);
        match improved {
            Some(next) => {
                current = next;
                if current.objective < best.objective {
                    best = current.clone();
                    stale_rounds = 0;
                }
            }
            None => {
                if stale_rounds >= cfg.restarts {
                    break;
                }
                stale_rounds += 1;
                // walk on from the current local optimum unless it has drifted
                // well away from the best one
                let base = if current.objective.obtuse > best.objective.obtuse + 2 || rng.random_bool(0.25) {
                    &best
                } else {
                    &current
                };
                match perturb(inst, base, cfg, &mut rng) {
                    Some(s) => current = s,
                    None => break,
                }
            }
        }
        trace.push(best.objective);
    }

    Ok(SearchOutcome {
        solution: to_solution(inst, &best),
        objective: best.objective,
        baseline: baseline_objective,
        iterations,
        trace,
    })
}
