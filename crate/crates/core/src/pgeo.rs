//! Maximal arcs, the partial geometries `T2*(K)` and their (partial) ovoids.
//!
//! A partial ovoid of `T2*(K)` is exactly an affine point set of AG(3,q) that
//! determines no direction of `K`, so extension questions reduce to the
//! direction machinery of [`crate::classify`].

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::BitSet;
use crate::classify::{extend_search, Extension};
use crate::directions::{
    affine_from_index, affine_index, determined_mask, infinity_rank, AffineSet,
};
use crate::gf::{Elem, Gf};
use crate::projgeom::{Hyperplane, Point};
use crate::Error;

/// A point set of PG(2,q) meeting every line in at most `d` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    gf: Gf,
    d: usize,
    points: Vec<Point>,
}

impl Arc {
    pub fn new(gf: &Gf, d: usize, mut points: Vec<Point>) -> Result<Arc, Error> {
        if points.iter().any(|p| p.dim() != 2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: points.iter().map(Point::dim).find(|&k| k != 2).unwrap_or(2),
            });
        }
        points.sort();
        points.dedup();
        let arc = Arc {
            gf: gf.clone(),
            d,
            points,
        };
        if arc.line_counts().iter().any(|&c| c > d) {
            return Err(Error::OutOfRange { what: "arc degree" });
        }
        Ok(arc)
    }

    pub fn field(&self) -> &Gf {
        &self.gf
    }

    /// Order `s = q` of the plane.
    pub fn order(&self) -> usize {
        self.gf.q() as usize
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `|K ∩ ℓ|` for every line `ℓ` of PG(2,q), indexed by line rank.
    pub fn line_counts(&self) -> Vec<usize> {
        Hyperplane::all(&self.gf, 2)
            .map(|l| {
                self.points
                    .iter()
                    .filter(|p| self.gf.dot(p.coords(), l.coords()).is_zero())
                    .count()
            })
            .collect()
    }

    pub fn is_maximal(&self) -> bool {
        let s = self.order();
        self.points.len() == self.d * s - s + self.d
            && self.line_counts().iter().all(|&c| c == 0 || c == self.d)
    }

    /// A `{1,1}`-arc or the `{s²,s}`-arc of points off a line.
    pub fn is_trivial(&self) -> bool {
        (self.d == 1 && self.points.len() == 1) || (self.d == self.order() && self.is_maximal())
    }

    /// Lines missing the arc, in rank order.
    pub fn external_lines(&self) -> Vec<Hyperplane> {
        Hyperplane::all(&self.gf, 2)
            .zip(self.line_counts())
            .filter(|(_, c)| *c == 0)
            .map(|(l, _)| l)
            .collect()
    }
}

fn plane_point(gf: &Gf, x: Elem, y: Elem, z: Elem) -> Point {
    Point::new(gf, &[x, y, z]).expect("nonzero")
}

/// The conic `{(1,t,t²)} ∪ {(0,0,1)}` together with its nucleus `(0,1,0)`.
pub fn conic_plus_nucleus(gf: &Gf) -> Result<Arc, Error> {
    if gf.p() != 2 {
        return Err(Error::OddOrder);
    }
    let mut pts: Vec<Point> = gf
        .elements()
        .map(|t| plane_point(gf, Elem::ONE, t, gf.mul(t, t)))
        .collect();
    pts.push(plane_point(gf, Elem::ZERO, Elem::ZERO, Elem::ONE));
    pts.push(plane_point(gf, Elem::ZERO, Elem::ONE, Elem::ZERO));
    let arc = Arc::new(gf, 2, pts)?;
    if !arc.is_maximal() {
        return Err(Error::NotMaximal);
    }
    Ok(arc)
}

/// Denniston's maximal arc of degree `d`: the affine points `(x,y,1)` with
/// `x² + βxy + y²` in the additive subgroup of codes below `d`.
pub fn denniston_arc(gf: &Gf, d: u32) -> Result<Arc, Error> {
    if gf.p() != 2 {
        return Err(Error::OddOrder);
    }
    let q = gf.q();
    if d < 2 || !d.is_power_of_two() || q % d != 0 {
        return Err(Error::DegreeDoesNotDivide { d, q });
    }
    let beta = gf
        .elements()
        .find(|&b| {
            gf.elements().all(|t| {
                !gf.add(gf.add(gf.mul(t, t), gf.mul(b, t)), Elem::ONE)
                    .is_zero()
            })
        })
        .ok_or(Error::InvariantViolated("no irreducible x² + βx + 1"))?;
    let mut pts = Vec::new();
    for x in gf.elements() {
        for y in gf.elements() {
            let v = gf.add(
                gf.add(gf.mul(x, x), gf.mul(beta, gf.mul(x, y))),
                gf.mul(y, y),
            );
            if v.code() < d {
                pts.push(plane_point(gf, x, y, Elem::ONE));
            }
        }
    }
    let arc = Arc::new(gf, d as usize, pts)?;
    if !arc.is_maximal() {
        return Err(Error::InvariantViolated(
            "Denniston set is not a maximal arc",
        ));
    }
    Ok(arc)
}

/// The lines external to a maximal arc, as an arc of degree `s/d` of the dual plane.
pub fn dual_external_arc(k: &Arc) -> Result<Arc, Error> {
    if !k.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let s = k.order();
    let d = k.degree();
    let pts: Vec<Point> = k.external_lines().iter().map(|l| l.dual()).collect();
    let dual = Arc::new(k.field(), s / d, pts)?;
    if dual.len() != s * (s - d + 1) / d {
        return Err(Error::InvariantViolated(
            "external lines have the wrong count",
        ));
    }
    Ok(dual)
}

/// A finite point-line incidence structure with lines stored as point lists and bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Geometry {
    num_points: usize,
    lines: Vec<Vec<usize>>,
    line_sets: Vec<BitSet>,
    point_lines: Vec<Vec<usize>>,
}

impl Geometry {
    pub fn new(num_points: usize, lines: Vec<Vec<usize>>) -> Result<Geometry, Error> {
        let mut line_sets = Vec::with_capacity(lines.len());
        let mut point_lines = vec![Vec::new(); num_points];
        let mut sorted = Vec::with_capacity(lines.len());
        for (i, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            line.dedup();
            let mut b = BitSet::new(num_points);
            for &p in &line {
                if p >= num_points {
                    return Err(Error::OutOfRange {
                        what: "point index",
                    });
                }
                b.insert(p);
                point_lines[p].push(i);
            }
            line_sets.push(b);
            sorted.push(line);
        }
        Ok(Geometry {
            num_points,
            lines: sorted,
            line_sets,
            point_lines,
        })
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn line(&self, i: usize) -> &[usize] {
        &self.lines[i]
    }

    pub fn lines_through(&self, p: usize) -> &[usize] {
        &self.point_lines[p]
    }

    pub fn incident(&self, p: usize, line: usize) -> bool {
        self.line_sets[line].contains(p)
    }

    /// Points sharing a line with `p`, excluding `p`.
    pub fn collinear_with(&self, p: usize) -> BitSet {
        let mut b = BitSet::new(self.num_points);
        for &l in &self.point_lines[p] {
            b.union_with(&self.line_sets[l]);
        }
        b.remove(p);
        b
    }

    /// Lines become points and points become lines.
    pub fn dual(&self) -> Geometry {
        Geometry::new(self.lines.len(), self.point_lines.clone()).expect("valid indices")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PgParams {
    pub s: usize,
    pub t: usize,
    pub alpha: usize,
}

impl PgParams {
    /// `(s+1)(st+α)/α`.
    pub fn num_points(&self) -> usize {
        (self.s + 1) * (self.s * self.t + self.alpha) / self.alpha
    }

    /// `(t+1)(st+α)/α`.
    pub fn num_lines(&self) -> usize {
        (self.t + 1) * (self.s * self.t + self.alpha) / self.alpha
    }

    /// `st/α + 1`.
    pub fn ovoid_size(&self) -> usize {
        self.s * self.t / self.alpha + 1
    }
}

/// The first axiom failure found by [`verify_pg_axioms`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgViolation {
    Empty,
    PointDegree {
        point: usize,
        expected: usize,
        found: usize,
    },
    LineSize {
        line: usize,
        expected: usize,
        found: usize,
    },
    /// Two lines sharing more than one point.
    LinesMeetTwice {
        a: usize,
        b: usize,
    },
    AntiFlag {
        point: usize,
        line: usize,
        expected: usize,
        found: usize,
    },
}

/// Checks the three partial-geometry axioms exhaustively.
pub fn verify_pg_axioms(g: &Geometry) -> Result<PgParams, PgViolation> {
    if g.num_points == 0 || g.lines.is_empty() {
        return Err(PgViolation::Empty);
    }
    let deg = g.point_lines[0].len();
    for (p, ls) in g.point_lines.iter().enumerate() {
        if ls.len() != deg || deg < 2 {
            return Err(PgViolation::PointDegree {
                point: p,
                expected: deg,
                found: ls.len(),
            });
        }
    }
    let size = g.lines[0].len();
    for (i, l) in g.lines.iter().enumerate() {
        if l.len() != size || size < 2 {
            return Err(PgViolation::LineSize {
                line: i,
                expected: size,
                found: l.len(),
            });
        }
    }
    for ls in &g.point_lines {
        for (k, &a) in ls.iter().enumerate() {
            for &b in &ls[k + 1..] {
                if g.line_sets[a].intersection_count(&g.line_sets[b]) > 1 {
                    return Err(PgViolation::LinesMeetTwice { a, b });
                }
            }
        }
    }
    let mut alpha = None;
    for x in 0..g.num_points {
        let coll = g.collinear_with(x);
        for (i, set) in g.line_sets.iter().enumerate() {
            if set.contains(x) {
                continue;
            }
            let found = coll.intersection_count(set);
            let expected = *alpha.get_or_insert(found);
            if found != expected || found == 0 {
                return Err(PgViolation::AntiFlag {
                    point: x,
                    line: i,
                    expected,
                    found,
                });
            }
        }
    }
    Ok(PgParams {
        s: size - 1,
        t: deg - 1,
        alpha: alpha.unwrap_or(0),
    })
}

/// `T2*(K)`: the affine points of PG(3,q) and the affine lines whose point at
/// infinity lies on `K ⊂ H_∞`.
#[derive(Clone, Debug)]
pub struct T2Star {
    arc: Arc,
    geometry: Geometry,
    /// For every line, the index of its point at infinity in `arc.points()`.
    line_arc_point: Vec<usize>,
}

impl T2Star {
    pub fn arc(&self) -> &Arc {
        &self.arc
    }

    pub fn field(&self) -> &Gf {
        self.arc.field()
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    /// `(q-1, (d-1)(q+1), d-1)`.
    pub fn params(&self) -> PgParams {
        let q = self.arc.order();
        let d = self.arc.degree();
        PgParams {
            s: q - 1,
            t: (d - 1) * (q + 1),
            alpha: d - 1,
        }
    }

    /// The affine point `(1,x,y,z)` with index `i`.
    pub fn point(&self, i: usize) -> Point {
        affine_from_index(self.field(), 3, i)
    }

    pub fn point_index(&self, p: &Point) -> Result<usize, Error> {
        if p.dim() != 3 || p.is_at_infinity() {
            return Err(Error::NotAffine);
        }
        Ok(affine_index(self.field().q(), &p.coords()[1..]))
    }

    /// The point of `K` at infinity on `line`, as a point `(0,κ)` of PG(3,q).
    pub fn line_direction(&self, line: usize) -> Point {
        embed(self.field(), &self.arc.points[self.line_arc_point[line]])
    }

    /// The points of `K` embedded in `H_∞`.
    pub fn directions(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self
            .arc
            .points
            .iter()
            .map(|k| embed(self.field(), k))
            .collect();
        v.sort();
        v
    }

    pub fn affine_set(&self, points: &[usize]) -> Result<AffineSet, Error> {
        AffineSet::new(
            self.field(),
            3,
            points.iter().map(|&i| self.point(i)).collect(),
        )
    }
}

fn embed(gf: &Gf, k: &Point) -> Point {
    let mut c = vec![Elem::ZERO];
    c.extend_from_slice(k.coords());
    Point::new(gf, &c).expect("nonzero")
}

pub fn build_t2star(k: &Arc) -> Result<T2Star, Error> {
    let gf = k.field();
    if gf.p() != 2 {
        return Err(Error::OddOrder);
    }
    if !k.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let q = gf.q() as usize;
    let total = q * q * q;
    let mut lines = Vec::new();
    let mut line_arc_point = Vec::new();
    for (ki, kappa) in k.points().iter().enumerate() {
        let dir = kappa.coords();
        let mut seen = BitSet::new(total);
        for start in 0..total {
            if seen.contains(start) {
                continue;
            }
            let base = affine_from_index(gf, 3, start);
            let line: Vec<usize> = gf
                .elements()
                .map(|lam| {
                    let tail: Vec<Elem> = base.coords()[1..]
                        .iter()
                        .zip(dir)
                        .map(|(&a, &c)| gf.add(a, gf.mul(lam, c)))
                        .collect();
                    affine_index(gf.q(), &tail)
                })
                .collect();
            for &p in &line {
                seen.insert(p);
            }
            lines.push(line);
            line_arc_point.push(ki);
        }
    }
    Ok(T2Star {
        arc: k.clone(),
        geometry: Geometry::new(total, lines)?,
        line_arc_point,
    })
}

/// A point set meeting every line of a geometry at most once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOvoid {
    points: Vec<usize>,
}

impl PartialOvoid {
    pub fn new(g: &Geometry, mut points: Vec<usize>) -> Result<PartialOvoid, Error> {
        points.sort_unstable();
        points.dedup();
        if points.iter().any(|&p| p >= g.num_points()) {
            return Err(Error::OutOfRange {
                what: "point index",
            });
        }
        let mut hit = BitSet::new(g.num_lines());
        for &p in &points {
            for &l in g.lines_through(p) {
                if !hit.insert(l) {
                    return Err(Error::NotPartialOvoid);
                }
            }
        }
        Ok(PartialOvoid { points })
    }

    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `st/α + 1 - |B|`.
    pub fn deficiency(&self, params: &PgParams) -> i64 {
        params.ovoid_size() as i64 - self.points.len() as i64
    }

    pub fn is_ovoid(&self, g: &Geometry) -> bool {
        (0..g.num_lines()).all(|l| {
            g.line(l)
                .iter()
                .filter(|p| self.points.binary_search(p).is_ok())
                .count()
                == 1
        })
    }
}

/// The `q²` affine points of a plane whose line at infinity misses `K`.
pub fn plane_ovoid(t: &T2Star, pi: &Hyperplane) -> Result<PartialOvoid, Error> {
    let gf = t.field();
    if pi.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: pi.dim(),
        });
    }
    if *pi == Hyperplane::at_infinity(3) {
        return Err(Error::OutOfRange { what: "plane" });
    }
    let g = t.geometry();
    let on: Vec<bool> = (0..g.num_points())
        .map(|i| gf.dot(t.point(i).coords(), pi.coords()).is_zero())
        .collect();
    for l in 0..g.num_lines() {
        let count = g.line(l).iter().filter(|&&p| on[p]).count();
        if count != 1 {
            return Err(Error::NotOvoid { line: l, count });
        }
    }
    let pts = (0..g.num_points()).filter(|&i| on[i]).collect();
    PartialOvoid::new(g, pts)
}

/// Planes through the lifts of the external lines, one ovoid each.
pub fn plane_ovoids(t: &T2Star) -> Vec<Hyperplane> {
    let gf = t.field();
    let mut out = Vec::new();
    for l in t.arc().external_lines() {
        for c0 in gf.elements() {
            let mut c = vec![c0];
            c.extend_from_slice(l.coords());
            out.push(Hyperplane::new(gf, &c).expect("nonzero"));
        }
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvoidExtension {
    pub deficiency: i64,
    /// Points collinear with no point of `B`.
    pub candidates: Vec<usize>,
    /// Ovoid completions counted, stopping at the caller's limit.
    pub completions: usize,
    pub limit_reached: bool,
    /// The first completion found.
    pub chain: Option<Vec<usize>>,
    /// For a GQ with `|B| = st - ρ` and `0 ≤ ρ < t/s`, whether exactly one completion exists.
    pub unique_in_regime: Option<bool>,
    /// For deficiency at most 2: completions of the direction problem
    /// (no new direction of `N` determined).
    pub direction_completions: Option<usize>,
    /// Every direction completion is an ovoid completion, and if the direction
    /// problem extends then so does the ovoid problem.
    pub cross_check_ok: Option<bool>,
}

impl OvoidExtension {
    pub fn is_extendable(&self) -> bool {
        self.completions > 0
    }
}

/// Complete search for ovoids containing `b`.
pub fn extend_partial_ovoid(
    t: &T2Star,
    b: &PartialOvoid,
    limit: usize,
) -> Result<OvoidExtension, Error> {
    let g = t.geometry();
    let b = PartialOvoid::new(g, b.points().to_vec())?;
    let params = t.params();
    let deficiency = b.deficiency(&params);
    if deficiency < 0 {
        return Err(Error::NotPartialOvoid);
    }
    let mut blocked = BitSet::new(g.num_points());
    for &p in b.points() {
        blocked.union_with(&g.collinear_with(p));
        blocked.insert(p);
    }
    let candidates: Vec<usize> = (0..g.num_points())
        .filter(|&p| !blocked.contains(p))
        .collect();
    let k = candidates.len();
    let coll: Vec<BitSet> = candidates.iter().map(|&p| g.collinear_with(p)).collect();
    // most constrained first: candidates collinear with many other candidates
    let mut order: Vec<usize> = (0..k).collect();
    let cand_set = {
        let mut s = BitSet::new(g.num_points());
        for &c in &candidates {
            s.insert(c);
        }
        s
    };
    let degree: Vec<usize> = coll
        .iter()
        .map(|c| c.intersection_count(&cand_set))
        .collect();
    order.sort_by_key(|&i| (core::cmp::Reverse(degree[i]), candidates[i]));
    let mut search = OvoidDfs {
        candidates: &candidates,
        coll: &coll,
        order: &order,
        limit: limit.max(1),
        count: 0,
        first: None,
    };
    let mut chosen = Vec::new();
    search.run(0, deficiency as usize, &mut chosen);
    let completions = search.count;
    let chain = search.first.take();
    let regime = params.alpha == 1 && {
        let st = (params.s * params.t) as i64;
        let rho = st - b.len() as i64;
        rho >= 0 && (rho as usize) * params.s < params.t
    };
    let unique_in_regime = regime.then_some(completions == 1);
    let (direction_completions, cross_check_ok) = if (1..=2).contains(&deficiency) {
        let u = t.affine_set(b.points())?;
        let mask = determined_mask(&u);
        if t.directions()
            .iter()
            .any(|k| mask.contains(infinity_rank(t.field(), k)))
        {
            return Err(Error::InvariantViolated(
                "partial ovoid determines a direction of the arc",
            ));
        }
        let ext = extend_search(&u)?;
        let sets: Vec<Vec<usize>> = match &ext.outcome {
            Extension::Searched { completions, .. } => completions
                .iter()
                .map(|c| c.iter().map(|p| t.point_index(p)).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?,
            _ => Vec::new(),
        };
        let all_ovoids = sets.iter().all(|w| {
            let mut pts = b.points().to_vec();
            pts.extend_from_slice(w);
            PartialOvoid::new(g, pts).is_ok_and(|o| o.len() == params.ovoid_size())
        });
        let ok = all_ovoids && (sets.is_empty() || completions > 0);
        (Some(sets.len()), Some(ok))
    } else {
        (None, None)
    };
    Ok(OvoidExtension {
        deficiency,
        candidates,
        completions,
        limit_reached: completions >= limit.max(1),
        chain,
        unique_in_regime,
        direction_completions,
        cross_check_ok,
    })
}

struct OvoidDfs<'a> {
    candidates: &'a [usize],
    coll: &'a [BitSet],
    order: &'a [usize],
    limit: usize,
    count: usize,
    first: Option<Vec<usize>>,
}

impl OvoidDfs<'_> {
    fn run(&mut self, start: usize, need: usize, chosen: &mut Vec<usize>) {
        if self.count >= self.limit {
            return;
        }
        if need == 0 {
            self.count += 1;
            if self.first.is_none() {
                let mut c: Vec<usize> = chosen.iter().map(|&i| self.candidates[i]).collect();
                c.sort_unstable();
                self.first = Some(c);
            }
            return;
        }
        for pos in start..self.order.len() {
            if self.order.len() - pos < need {
                break;
            }
            let i = self.order[pos];
            let p = self.candidates[i];
            if chosen.iter().all(|&c| !self.coll[c].contains(p)) {
                chosen.push(i);
                self.run(pos + 1, need - 1, chosen);
                chosen.pop();
            }
        }
    }
}

/// Grows a partial ovoid of `size` points greedily from a random point order,
/// restarting up to `restarts` times when it gets stuck.
pub fn random_partial_ovoid<R: Rng + ?Sized>(
    g: &Geometry,
    size: usize,
    rng: &mut R,
    restarts: usize,
) -> Option<PartialOvoid> {
    let mut order: Vec<usize> = (0..g.num_points()).collect();
    for _ in 0..=restarts {
        order.shuffle(rng);
        let mut blocked = BitSet::new(g.num_points());
        let mut pts = Vec::with_capacity(size);
        for &p in &order {
            if pts.len() == size {
                break;
            }
            if blocked.contains(p) {
                continue;
            }
            pts.push(p);
            blocked.union_with(&g.collinear_with(p));
            blocked.insert(p);
        }
        if pts.len() == size {
            return PartialOvoid::new(g, pts).ok();
        }
    }
    None
}
