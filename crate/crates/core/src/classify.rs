//! Structure of the non-determined directions for small deficiency.
//!
//! For ε = 2 the surface `f` is a quadric, and its type pins `N` down to a
//! line or a conic unless `U` extends. For ε < p every non-determined
//! direction is a tangent plane at a point of `f = ∂_{X0} f = 0`.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::BitSet;
use crate::directions::{
    affine_from_index, affine_index, determined_directions, determined_mask, direction_rank,
    empty_lines_through, infinity_rank, AffineSet,
};
use crate::gf::{Elem, Gf};
use crate::projgeom::{nullspace, theta, Hyperplane, Point, Subspace};
use crate::redei::{build_f_surface, is_tri, FSurface};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricKind {
    /// `f` is a product of two linear forms.
    TwoHyperplanes {
        repeated: bool,
    },
    /// Cone with an (n-3)-dimensional vertex over a conic.
    ConicCone,
    /// Cone with an (n-4)-dimensional vertex over a hyperbolic quadric of a 3-space.
    HyperbolicCone,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricClass {
    pub kind: QuadricKind,
    /// Points `P` of the quadric such that every line from `P` to the quadric lies in it.
    pub vertex: Subspace,
    /// The linear factors, as hyperplanes, when `kind` is `TwoHyperplanes`.
    pub factors: Vec<Hyperplane>,
    pub num_points: usize,
    /// `(|Q| - |V|) / q^{dim V + 1}`, when integral.
    pub base_size: Option<usize>,
    /// A few points of the quadric off the vertex.
    pub base_sample: Vec<Point>,
}

impl QuadricClass {
    /// Affine points `(1, c_1, …, c_n)` dual to factors `X0 + Σ c_i X_i`.
    pub fn extension_points(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .factors
            .iter()
            .filter(|h| h.coords()[0] == Elem::ONE)
            .map(|h| h.dual())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn line_points(gf: &Gf, a: &Point, b: &Point) -> Vec<Point> {
    crate::projgeom::line_through(gf, a, b)
        .map(|(_, pts)| pts)
        .unwrap_or_default()
}

/// Classifies the quadric `f = 0` by exhaustive point geometry.
pub fn classify_eps2(f: &FSurface) -> Result<QuadricClass, Error> {
    let gf = f.field();
    let n = f.dim();
    if f.degree() != 2 {
        return Err(Error::EpsOutOfRange {
            eps: f.degree() as i64,
        });
    }
    if n < 3 {
        return Err(Error::OutOfRange { what: "dimension" });
    }
    let zeros = f.zero_set();
    let mut factors = Vec::new();
    for h in Hyperplane::all(gf, n) {
        if let Some(rest) = f.poly().div_linear(gf, h.coords())? {
            let other = rest
                .terms()
                .fold(vec![Elem::ZERO; n + 1], |mut acc, (m, c)| {
                    let i = m
                        .exps()
                        .iter()
                        .position(|&e| e == 1)
                        .expect("linear quotient");
                    acc[i] = c;
                    acc
                });
            let other = Hyperplane::new(gf, &other)?;
            let repeated = other == h;
            factors.push(h);
            if !repeated {
                factors.push(other);
            }
            factors.sort();
            return Ok(QuadricClass {
                kind: QuadricKind::TwoHyperplanes { repeated },
                vertex: Subspace::empty(n),
                factors,
                num_points: zeros.len(),
                base_size: None,
                base_sample: Vec::new(),
            });
        }
    }
    let on = |p: &Point| f.contains(p);
    let vertex_pts: Vec<Point> = zeros
        .iter()
        .filter(|p| {
            zeros
                .iter()
                .all(|r| r == *p || line_points(gf, p, r).iter().all(on))
        })
        .cloned()
        .collect();
    let vertex = Subspace::span(gf, n, &vertex_pts)?;
    let q = gf.q() as usize;
    let rest = zeros.len() - vertex_pts.len();
    let scale = q.pow((vertex.dim() + 1) as u32);
    let base_size = (rest % scale == 0).then_some(rest / scale);
    let v = vertex.dim();
    let kind = if v == n as isize - 3 && base_size == Some(q + 1) {
        QuadricKind::ConicCone
    } else if v == n as isize - 4 && base_size == Some((q + 1) * (q + 1)) {
        QuadricKind::HyperbolicCone
    } else {
        QuadricKind::Other
    };
    let base_sample = zeros
        .iter()
        .filter(|p| !vertex.contains(gf, p))
        .take(4)
        .cloned()
        .collect();
    Ok(QuadricClass {
        kind,
        vertex,
        factors: Vec::new(),
        num_points: zeros.len(),
        base_size,
        base_sample,
    })
}

/// Where the non-determined directions can lie, given the quadric type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NStructure {
    /// `U` extends by the dual points of the two factors.
    Extendable { points: Vec<Point> },
    /// `N` lies among `members`, the points α of `line` whose `[α]` is TRI.
    CollinearLine {
        line: Subspace,
        members: Vec<Point>,
        /// Members whose `[α]` meets `f` in two distinct subspaces.
        secants: usize,
        /// Members whose `[α]` meets `f` in one doubled subspace.
        tangents: usize,
        bound: usize,
    },
    /// `N` lies among `members`, all on the conic `Σ c_k m_k(y) = 0` of `plane`,
    /// where `y` are coordinates in the plane's basis and the monomials are
    /// `y0², y0y1, y0y2, y1², y1y2, y2²`.
    PlanarConic {
        plane: Subspace,
        coefficients: [Elem; 6],
        members: Vec<Point>,
    },
    /// No prediction for this quadric type.
    Unpredicted,
}

impl NStructure {
    /// Whether a non-determined direction `alpha` is consistent with the prediction.
    pub fn admits(&self, alpha: &Point) -> bool {
        match self {
            NStructure::Extendable { .. } | NStructure::Unpredicted => true,
            NStructure::CollinearLine { members, .. } | NStructure::PlanarConic { members, .. } => {
                members.contains(alpha)
            }
        }
    }
}

fn e0(gf: &Gf, n: usize) -> Point {
    let mut c = vec![Elem::ZERO; n + 1];
    c[0] = Elem::ONE;
    Point::new(gf, &c).expect("nonzero")
}

/// Coordinates of `p` in the RREF basis of `s`.
fn plane_coords(s: &Subspace, p: &Point) -> Vec<Elem> {
    s.basis()
        .iter()
        .map(|b| {
            let pivot = b
                .coords()
                .iter()
                .position(|c| !c.is_zero())
                .expect("basis row");
            p.coords()[pivot]
        })
        .collect()
}

fn conic_row(gf: &Gf, y: &[Elem]) -> Vec<Elem> {
    let mut row = Vec::with_capacity(6);
    for i in 0..3 {
        for j in i..3 {
            row.push(gf.mul(y[i], y[j]));
        }
    }
    row
}

/// A conic of the plane `s` through all of `pts`, if one exists.
pub fn conic_through(gf: &Gf, s: &Subspace, pts: &[Point]) -> Option<[Elem; 6]> {
    if s.rank() != 3 || pts.iter().any(|p| !s.contains(gf, p)) {
        return None;
    }
    let rows: Vec<Vec<Elem>> = pts
        .iter()
        .map(|p| conic_row(gf, &plane_coords(s, p)))
        .collect();
    let ns = nullspace(gf, &rows, 6);
    ns.first().map(|v| core::array::from_fn(|k| v[k]))
}

/// Predicts the location of `N` from the quadric type.
pub fn predict_n(qc: &QuadricClass, f: &FSurface) -> Result<NStructure, Error> {
    let gf = f.field();
    let n = f.dim();
    let q = gf.q() as usize;
    let base = e0(gf, n);
    match qc.kind {
        QuadricKind::TwoHyperplanes { .. } => Ok(NStructure::Extendable {
            points: qc.extension_points(),
        }),
        QuadricKind::Other => Ok(NStructure::Unpredicted),
        QuadricKind::ConicCone | QuadricKind::HyperbolicCone => {
            let span = Subspace::span(gf, n, core::slice::from_ref(&base))?.join(gf, &qc.vertex);
            let dual = span.annihilator(gf);
            let mut members = Vec::new();
            let (mut secants, mut tangents) = (0, 0);
            let double = theta(n as isize - 2, gf.q());
            for alpha in dual.points(gf) {
                let h = alpha.dual();
                if is_tri(gf, f.poly(), &h)? {
                    let on = h
                        .subspace(gf)
                        .points(gf)
                        .iter()
                        .filter(|p| f.contains(p))
                        .count();
                    if on == double {
                        tangents += 1;
                    } else {
                        secants += 1;
                    }
                    members.push(alpha);
                }
            }
            if qc.kind == QuadricKind::ConicCone {
                return Ok(NStructure::CollinearLine {
                    line: dual,
                    members,
                    secants,
                    tangents,
                    bound: (q + 3) / 2,
                });
            }
            let coefficients = conic_through(gf, &dual, &members).ok_or(
                Error::InvariantViolated("TRI hyperplanes of a hyperbolic cone are not on a conic"),
            )?;
            Ok(NStructure::PlanarConic {
                plane: dual,
                coefficients,
                members,
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    /// ε = 0: nothing to add.
    Complete,
    /// `N` is empty, so no added point is constrained.
    Unconstrained,
    Searched {
        /// Affine points `w ∉ U` such that `U ∪ {w}` still determines no direction of `N`.
        candidates: Vec<Point>,
        /// Every ε-subset of the candidates that completes `U` to `q^{n-1}` points.
        completions: Vec<Vec<Point>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub eps: i64,
    pub outcome: Extension,
}

impl ExtensionReport {
    pub fn is_extendable(&self) -> bool {
        match &self.outcome {
            Extension::Complete | Extension::Unconstrained => true,
            Extension::Searched { completions, .. } => !completions.is_empty(),
        }
    }

    /// The first completion in lexicographic order.
    pub fn chain(&self) -> Option<&[Point]> {
        match &self.outcome {
            Extension::Searched { completions, .. } => completions.first().map(|c| c.as_slice()),
            _ => None,
        }
    }

    /// No single point can be added without determining a direction of `N`.
    pub fn is_maximal(&self) -> bool {
        matches!(&self.outcome, Extension::Searched { candidates, .. } if candidates.is_empty())
    }
}

/// Searches all ways to complete `U` without determining a direction of `N`.
pub fn extend_search(u: &AffineSet) -> Result<ExtensionReport, Error> {
    let eps = u.eps();
    if eps == 0 {
        return Ok(ExtensionReport {
            eps,
            outcome: Extension::Complete,
        });
    }
    let report = determined_directions(u);
    let Some(alpha) = report.non_determined.first() else {
        return Ok(ExtensionReport {
            eps,
            outcome: Extension::Unconstrained,
        });
    };
    let gf = u.field();
    let mask = determined_mask(u);
    let mut buf = Vec::new();
    let clear =
        |a: &[Elem], b: &[Elem], buf: &mut Vec<Elem>| mask.contains(direction_rank(gf, a, b, buf));
    let mut candidates = Vec::new();
    for line in empty_lines_through(u, alpha)? {
        for w in line.points(gf) {
            if w.is_at_infinity() {
                continue;
            }
            let wt = &w.coords()[1..];
            if u.tails().all(|t| clear(wt, t, &mut buf)) {
                candidates.push(w);
            }
        }
    }
    candidates.sort();
    let k = candidates.len();
    let mut compatible = vec![BitSet::new(k); k];
    for i in 0..k {
        for j in i + 1..k {
            if clear(
                &candidates[i].coords()[1..],
                &candidates[j].coords()[1..],
                &mut buf,
            ) {
                compatible[i].insert(j);
                compatible[j].insert(i);
            }
        }
    }
    let mut completions = Vec::new();
    let mut chosen = Vec::new();
    complete(
        &compatible,
        0,
        eps as usize,
        &mut chosen,
        &mut |c: &[usize]| completions.push(c.iter().map(|&i| candidates[i].clone()).collect()),
    );
    Ok(ExtensionReport {
        eps,
        outcome: Extension::Searched {
            candidates,
            completions,
        },
    })
}

fn complete(
    compatible: &[BitSet],
    start: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if need == 0 {
        emit(chosen);
        return;
    }
    for i in start..compatible.len() {
        if compatible.len() - i < need {
            break;
        }
        if chosen.iter().all(|&c| compatible[c].contains(i)) {
            chosen.push(i);
            complete(compatible, i + 1, need - 1, chosen, emit);
            chosen.pop();
        }
    }
}

/// The conic `{(0,1,t,t²)} ∪ {(0,0,0,1)}` of the plane at infinity of PG(3,q).
pub fn standard_conic(gf: &Gf) -> Vec<Point> {
    let mut out: Vec<Point> = gf
        .elements()
        .map(|t| Point::new(gf, &[Elem::ZERO, Elem::ONE, t, gf.mul(t, t)]).expect("nonzero"))
        .collect();
    out.push(Point::new(gf, &[Elem::ZERO, Elem::ZERO, Elem::ZERO, Elem::ONE]).expect("nonzero"));
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalSearch {
    /// A set of the requested size whose non-determined directions are exactly
    /// the target and which admits no completion.
    pub found: Option<AffineSet>,
    /// Search nodes visited.
    pub nodes: u64,
    /// Whether the whole search tree was explored.
    pub exhausted: bool,
}

/// Depth-first search for a non-extendable set of `size` points through the
/// origin of AG(n,q) whose non-determined directions are exactly `target`.
///
/// Branch order is shuffled by `rng`; `budget` is polled at every node and the
/// search stops once it returns `false`.
pub fn search_maximal<R: Rng + ?Sized>(
    gf: &Gf,
    n: usize,
    target: &[Point],
    size: usize,
    rng: &mut R,
    mut budget: impl FnMut() -> bool,
) -> Result<MaximalSearch, Error> {
    if target.iter().any(|p| p.dim() != n || !p.is_at_infinity()) {
        return Err(Error::NotAtInfinity);
    }
    if size == 0 {
        return Err(Error::OutOfRange { what: "size" });
    }
    let total = (gf.q() as usize).pow(n as u32);
    let mut target_mask = BitSet::new(theta(n as isize - 1, gf.q()));
    for p in target {
        target_mask.insert(infinity_rank(gf, p));
    }
    let pts: Vec<Point> = (0..total).map(|i| affine_from_index(gf, n, i)).collect();
    let mut buf = Vec::new();
    let mut compatible = vec![BitSet::new(total); total];
    for i in 0..total {
        for j in i + 1..total {
            let r = direction_rank(gf, &pts[i].coords()[1..], &pts[j].coords()[1..], &mut buf);
            if !target_mask.contains(r) {
                compatible[i].insert(j);
                compatible[j].insert(i);
            }
        }
    }
    let origin = affine_index(gf.q(), &vec![Elem::ZERO; n]);
    let mut order: Vec<usize> = compatible[origin].iter().collect();
    order.shuffle(rng);
    let mut state = Dfs {
        gf,
        n,
        pts: &pts,
        compatible: &compatible,
        target,
        size,
        nodes: 0,
        stopped: false,
        found: None,
    };
    let mut chosen = vec![origin];
    state.run(&order, &mut chosen, &mut budget)?;
    Ok(MaximalSearch {
        exhausted: !state.stopped && state.found.is_none(),
        found: state.found,
        nodes: state.nodes,
    })
}

struct Dfs<'a> {
    gf: &'a Gf,
    n: usize,
    pts: &'a [Point],
    compatible: &'a [BitSet],
    target: &'a [Point],
    size: usize,
    nodes: u64,
    stopped: bool,
    found: Option<AffineSet>,
}

impl Dfs<'_> {
    fn run(
        &mut self,
        pool: &[usize],
        chosen: &mut Vec<usize>,
        budget: &mut impl FnMut() -> bool,
    ) -> Result<(), Error> {
        self.nodes += 1;
        if !budget() {
            self.stopped = true;
            return Ok(());
        }
        if chosen.len() == self.size {
            let u = AffineSet::new(
                self.gf,
                self.n,
                chosen.iter().map(|&i| self.pts[i].clone()).collect(),
            )?;
            if determined_directions(&u).non_determined == self.target
                && !extend_search(&u)?.is_extendable()
            {
                self.found = Some(u);
            }
            return Ok(());
        }
        if chosen.len() + pool.len() < self.size {
            return Ok(());
        }
        for (k, &i) in pool.iter().enumerate() {
            let rest: Vec<usize> = pool[k + 1..]
                .iter()
                .copied()
                .filter(|&j| self.compatible[i].contains(j))
                .collect();
            chosen.push(i);
            self.run(&rest, chosen, budget)?;
            chosen.pop();
            if self.stopped || self.found.is_some() {
                break;
            }
        }
        Ok(())
    }
}

/// Degree `ε⁴ - 2ε³ + ε` of the plane curve containing `N` when `U` does not extend.
pub fn curve_degree(eps: i64) -> i64 {
    eps.pow(4) - 2 * eps.pow(3) + eps
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveReport {
    pub eps: i64,
    pub curve_degree: i64,
    /// Each non-determined direction with a point of `f = ∂_{X0} f = 0` at which
    /// `[α]` is tangent, if one exists.
    pub verdicts: Vec<(Point, Option<Point>)>,
}

impl CurveReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|(_, w)| w.is_some())
    }
}

/// For each α ∈ N, looks for a tangency point of `[α]` on the curve `f = ∂_{X0} f = 0`.
pub fn curve_containment(u: &AffineSet) -> Result<CurveReport, Error> {
    let gf = u.field();
    if u.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: u.dim(),
        });
    }
    let eps = u.eps();
    if eps < 1 || eps >= gf.p() as i64 {
        return Err(Error::EpsOutOfRange { eps });
    }
    let f = build_f_surface(u)?;
    let d0 = f.poly().partial(gf, 0);
    let curve: Vec<Point> = f
        .zero_set()
        .into_iter()
        .filter(|t| d0.eval(gf, t.coords()).is_zero())
        .collect();
    let verdicts = determined_directions(u)
        .non_determined
        .into_iter()
        .map(|alpha| {
            let witness = curve
                .iter()
                .find(|t| {
                    if !gf.dot(t.coords(), alpha.coords()).is_zero() {
                        return false;
                    }
                    let g = f.poly().gradient_at(gf, t.coords());
                    g.iter().all(|c| c.is_zero())
                        || crate::projgeom::normalize(gf, &g).ok().as_deref()
                            == Some(alpha.coords())
                })
                .cloned();
            (alpha, witness)
        })
        .collect();
    Ok(CurveReport {
        eps,
        curve_degree: curve_degree(eps),
        verdicts,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrichotomyCase {
    Extendable,
    /// `N` is collinear with at most ⌊(q+3)/2⌋ points.
    Collinear,
    /// `N` lies on a conic of a plane.
    Conic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrichotomyReport {
    /// `None` means none of the three cases holds.
    pub case: Option<TrichotomyCase>,
    pub n_size: usize,
    pub quadric: Option<QuadricKind>,
    /// The quadric-based prediction admits every direction of `N`, and a
    /// two-hyperplane quadric extends by exactly its factor points.
    pub prediction_holds: bool,
}

/// Checks the three-way alternative for a set with ε = 2.
pub fn trichotomy(u: &AffineSet) -> Result<TrichotomyReport, Error> {
    let gf = u.field();
    let n = u.dim();
    if u.eps() != 2 {
        return Err(Error::EpsOutOfRange { eps: u.eps() });
    }
    if n < 3 {
        return Err(Error::OutOfRange { what: "dimension" });
    }
    let nd = determined_directions(u).non_determined;
    if nd.is_empty() {
        return Ok(TrichotomyReport {
            case: Some(TrichotomyCase::Collinear),
            n_size: 0,
            quadric: None,
            prediction_holds: true,
        });
    }
    let ext = extend_search(u)?;
    let f = build_f_surface(u)?;
    let qc = classify_eps2(&f)?;
    let prediction = predict_n(&qc, &f)?;
    let mut prediction_holds = nd.iter().all(|a| prediction.admits(a));
    if let QuadricKind::TwoHyperplanes { .. } = qc.kind {
        let pts = qc.extension_points();
        prediction_holds &= match &ext.outcome {
            Extension::Searched { completions, .. } => completions.contains(&pts),
            _ => false,
        };
    }
    let q = gf.q() as usize;
    let span = Subspace::span(gf, n, &nd)?;
    let case = if ext.is_extendable() {
        Some(TrichotomyCase::Extendable)
    } else if span.rank() <= 2 && nd.len() <= (q + 3) / 2 {
        Some(TrichotomyCase::Collinear)
    } else if span.rank() <= 3 && plane_conic_through(gf, &span, &nd) {
        Some(TrichotomyCase::Conic)
    } else {
        None
    };
    Ok(TrichotomyReport {
        case,
        n_size: nd.len(),
        quadric: Some(qc.kind),
        prediction_holds,
    })
}

fn plane_conic_through(gf: &Gf, span: &Subspace, pts: &[Point]) -> bool {
    if span.rank() == 3 {
        return conic_through(gf, span, pts).is_some();
    }
    // fewer than three independent points: any plane through them carries a conic
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::redei::MPoly;
    use rand::SeedableRng;

    fn codes(gf: &Gf, c: &[u32]) -> Vec<Elem> {
        c.iter().map(|&x| gf.elem(x).unwrap()).collect()
    }

    fn plane_minus(gf: &Gf, holes: &[Vec<Elem>]) -> AffineSet {
        let q = gf.q();
        let mut tails = Vec::new();
        for a in 0..q {
            for b in 0..q {
                let t = codes(gf, &[a, b, 0]);
                if !holes.contains(&t) {
                    tails.push(t);
                }
            }
        }
        AffineSet::from_tails(gf, 3, &tails).unwrap()
    }

    fn surface(gf: &Gf, f: MPoly) -> FSurface {
        FSurface::from_poly(gf, 3, f).unwrap()
    }

    #[test]
    fn two_hyperplanes_from_plane_minus_two() {
        let gf = Gf::new(3, 1).unwrap();
        let holes = [codes(&gf, &[0, 0, 0]), codes(&gf, &[1, 1, 0])];
        let u = plane_minus(&gf, &holes);
        let f = build_f_surface(&u).unwrap();
        let qc = classify_eps2(&f).unwrap();
        assert_eq!(qc.kind, QuadricKind::TwoHyperplanes { repeated: false });
        let expect: Vec<Point> = holes.iter().map(|t| Point::affine(t)).collect();
        assert_eq!(qc.extension_points(), expect);
        let ext = extend_search(&u).unwrap();
        assert_eq!(ext.chain(), Some(expect.as_slice()));
        match ext.outcome {
            Extension::Searched { completions, .. } => assert_eq!(completions, vec![expect]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            predict_n(&qc, &f).unwrap(),
            NStructure::Extendable {
                points: qc.extension_points()
            }
        );
    }

    #[test]
    fn conic_cone() {
        let gf = Gf::new(5, 1).unwrap();
        let v = |i| MPoly::var(4, i);
        let f = surface(&gf, v(0).mul(&gf, &v(0)).sub(&gf, &v(1).mul(&gf, &v(2))));
        let qc = classify_eps2(&f).unwrap();
        assert_eq!(qc.kind, QuadricKind::ConicCone);
        assert_eq!(
            qc.vertex.points(&gf),
            vec![Point::from_codes(&gf, &[0, 0, 0, 1]).unwrap()]
        );
        let NStructure::CollinearLine {
            line,
            secants,
            tangents,
            ..
        } = predict_n(&qc, &f).unwrap()
        else {
            panic!()
        };
        // line X0 = X3 = 0
        assert!(line
            .points(&gf)
            .iter()
            .all(|p| p.coords()[0].is_zero() && p.coords()[3].is_zero()));
        assert_eq!(line.rank(), 2);
        // e0 projects onto (1,0,0) of the base plane, off the conic X0² = X1X2
        assert!(secants + tangents == 3 || secants + tangents == 4);
    }

    #[test]
    fn hyperbolic_quadric() {
        let gf = Gf::new(3, 1).unwrap();
        let v = |i| MPoly::var(4, i);
        let f = surface(&gf, v(0).mul(&gf, &v(3)).sub(&gf, &v(1).mul(&gf, &v(2))));
        let qc = classify_eps2(&f).unwrap();
        assert_eq!(qc.kind, QuadricKind::HyperbolicCone);
        assert_eq!(qc.vertex.rank(), 0);
        // X0(X0 + X3) - X1X2 is hyperbolic and misses (1,0,0,0)
        let f = surface(
            &gf,
            v(0).mul(&gf, &v(0).add(&gf, &v(3)))
                .sub(&gf, &v(1).mul(&gf, &v(2))),
        );
        let qc = classify_eps2(&f).unwrap();
        assert_eq!(qc.kind, QuadricKind::HyperbolicCone);
        let NStructure::PlanarConic {
            plane,
            coefficients,
            members,
        } = predict_n(&qc, &f).unwrap()
        else {
            panic!()
        };
        assert_eq!(members.len(), 4);
        assert!(plane.at_infinity());
        assert!(coefficients.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn errors_and_degenerate_gates() {
        let gf = Gf::new(3, 1).unwrap();
        let f = surface(&gf, MPoly::var(4, 0));
        assert!(classify_eps2(&f).is_err());
        let full = plane_minus(&gf, &[]);
        assert_eq!(extend_search(&full).unwrap().outcome, Extension::Complete);
        let mut tails = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                tails.push(codes(&gf, &[a, b, (a * b) % 3]));
            }
        }
        tails.truncate(8);
        let u = AffineSet::from_tails(&gf, 3, &tails).unwrap();
        if determined_directions(&u).non_determined.is_empty() {
            assert_eq!(extend_search(&u).unwrap().outcome, Extension::Unconstrained);
        }
        assert_eq!(curve_degree(2), 2);
        assert_eq!(curve_degree(1), 0);
        assert_eq!(curve_degree(3), 30);
    }

    #[test]
    fn curve_containment_on_plane_minus_two() {
        let gf = Gf::new(5, 1).unwrap();
        let u = plane_minus(&gf, &[codes(&gf, &[1, 2, 0]), codes(&gf, &[3, 3, 0])]);
        let r = curve_containment(&u).unwrap();
        assert!(!r.verdicts.is_empty());
        assert!(r.all_pass());
        let gf3 = Gf::new(3, 1).unwrap();
        let u3 = plane_minus(
            &gf3,
            &[
                codes(&gf3, &[0, 0, 0]),
                codes(&gf3, &[1, 1, 0]),
                codes(&gf3, &[2, 2, 0]),
            ],
        );
        assert!(matches!(
            curve_containment(&u3),
            Err(Error::EpsOutOfRange { eps: 3 })
        ));
    }

    #[test]
    fn search_finds_conic_example() {
        let gf = Gf::new(3, 1).unwrap();
        let target = standard_conic(&gf);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let r = search_maximal(&gf, 3, &target, 7, &mut rng, || true).unwrap();
        let u = r.found.expect("example exists");
        assert_eq!(determined_directions(&u).non_determined, target);
        assert!(!extend_search(&u).unwrap().is_extendable());
        let t = trichotomy(&u).unwrap();
        assert_eq!(t.case, Some(TrichotomyCase::Conic));
        assert!(t.prediction_holds);
    }

    #[test]
    fn trichotomy_on_plane_minus_two() {
        let gf = Gf::new(3, 1).unwrap();
        let u = plane_minus(&gf, &[codes(&gf, &[0, 1, 0]), codes(&gf, &[2, 0, 0])]);
        let t = trichotomy(&u).unwrap();
        assert_eq!(t.case, Some(TrichotomyCase::Extendable));
        assert!(t.prediction_holds);
    }
}
