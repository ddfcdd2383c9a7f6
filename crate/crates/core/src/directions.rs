//! Determined and non-determined directions of an affine point set.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::gf::{Elem, Gf};
use crate::projgeom::{normalize_in_place, rank_of, theta, Point, Subspace};
use crate::Error;

/// A duplicate-free set of affine points of AG(n,q) ⊂ PG(n,q), kept in rank order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSet {
    gf: Gf,
    n: usize,
    points: Vec<Point>,
}

impl AffineSet {
    pub fn new(gf: &Gf, n: usize, mut points: Vec<Point>) -> Result<AffineSet, Error> {
        if n < 1 {
            return Err(Error::OutOfRange { what: "dimension" });
        }
        for p in &points {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.dim(),
                });
            }
            if p.coords()[0] != Elem::ONE {
                return Err(Error::NotAffine);
            }
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        Ok(AffineSet {
            gf: gf.clone(),
            n,
            points,
        })
    }

    /// Builds the set from affine coordinate tuples `(a_1,…,a_n)`.
    pub fn from_tails(gf: &Gf, n: usize, tails: &[Vec<Elem>]) -> Result<AffineSet, Error> {
        AffineSet::new(gf, n, tails.iter().map(|t| Point::affine(t)).collect())
    }

    pub fn field(&self) -> &Gf {
        &self.gf
    }

    pub fn dim(&self) -> usize {
        self.n
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

    /// `q^{n-1} - |U|`; negative when the set is larger than a hyperplane.
    pub fn eps(&self) -> i64 {
        (self.gf.q() as i64).pow(self.n as u32 - 1) - self.points.len() as i64
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// A copy with `extra` added.
    pub fn with_points(&self, extra: &[Point]) -> Result<AffineSet, Error> {
        let mut pts = self.points.clone();
        pts.extend_from_slice(extra);
        AffineSet::new(&self.gf, self.n, pts)
    }

    /// Affine coordinates of every point (first coordinate dropped).
    pub fn tails(&self) -> impl Iterator<Item = &[Elem]> {
        self.points.iter().map(|p| &p.coords()[1..])
    }
}

/// Index of an affine point `(1, tail)` among the q^n affine points, tail read base q.
pub fn affine_index(q: u32, tail: &[Elem]) -> usize {
    tail.iter()
        .fold(0usize, |acc, c| acc * q as usize + c.code() as usize)
}

pub fn affine_from_index(gf: &Gf, n: usize, mut idx: usize) -> Point {
    let q = gf.q() as usize;
    let mut tail = vec![Elem::ZERO; n];
    for i in (0..n).rev() {
        tail[i] = gf.elem((idx % q) as u32).expect("digit below q");
        idx /= q;
    }
    Point::affine(&tail)
}

/// Rank (within H_∞ ≅ PG(n-1,q)) of the direction of `a - b`.
pub(crate) fn direction_rank(gf: &Gf, a: &[Elem], b: &[Elem], buf: &mut Vec<Elem>) -> usize {
    buf.clear();
    buf.extend(a.iter().zip(b).map(|(&x, &y)| gf.sub(x, y)));
    let ok = normalize_in_place(gf, buf);
    debug_assert!(ok, "distinct points");
    rank_of(buf, gf.q())
}

/// The direction at infinity of `a - b` as a point `(0, …)` of PG(n,q).
pub fn direction_of(gf: &Gf, a: &Point, b: &Point) -> Result<Point, Error> {
    let mut v: Vec<Elem> = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(&x, &y)| gf.sub(x, y))
        .collect();
    v[0] = Elem::ZERO;
    if !normalize_in_place(gf, &mut v) {
        return Err(Error::EqualPoints);
    }
    Ok(Point::from_normalized(v))
}

/// Point of H_∞ with the given rank in PG(n-1,q).
pub fn infinity_point(gf: &Gf, n: usize, rank: usize) -> Point {
    let tail = Point::from_rank(gf, n - 1, rank).expect("rank below theta(n-1)");
    let mut v = Vec::with_capacity(n + 1);
    v.push(Elem::ZERO);
    v.extend_from_slice(tail.coords());
    Point::from_normalized(v)
}

/// Rank within PG(n-1,q) of a point of H_∞.
pub fn infinity_rank(gf: &Gf, p: &Point) -> usize {
    rank_of(&p.coords()[1..], gf.q())
}

/// The partition `H_∞ = D ∪ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionReport {
    pub determined: Vec<Point>,
    pub non_determined: Vec<Point>,
}

impl DirectionReport {
    pub fn is_determined(&self, p: &Point) -> bool {
        self.determined.binary_search(p).is_ok()
    }

    pub fn is_non_determined(&self, p: &Point) -> bool {
        self.non_determined.binary_search(p).is_ok()
    }
}

/// Bitmask over the ranks of H_∞ of the directions determined by `u`.
pub fn determined_mask(u: &AffineSet) -> BitSet {
    let gf = &u.gf;
    let mut mask = BitSet::new(theta(u.n as isize - 1, gf.q()));
    let tails: Vec<&[Elem]> = u.tails().collect();
    let mut buf = Vec::with_capacity(u.n);
    for (i, a) in tails.iter().enumerate() {
        for b in &tails[..i] {
            mask.insert(direction_rank(gf, a, b, &mut buf));
        }
    }
    mask
}

/// Splits H_∞ into determined and non-determined directions by scanning all pairs.
pub fn determined_directions(u: &AffineSet) -> DirectionReport {
    let mask = determined_mask(u);
    let mut report = DirectionReport {
        determined: Vec::new(),
        non_determined: Vec::new(),
    };
    for r in 0..mask.len() {
        let p = infinity_point(&u.gf, u.n, r);
        if mask.contains(r) {
            report.determined.push(p);
        } else {
            report.non_determined.push(p);
        }
    }
    report
}

/// Partition of AG(n,q) into the cosets of the affine subspaces through `t`
/// (a subspace of H_∞), with the number of points of `u` in each coset.
///
/// Coset representatives are tails with zeros at the pivot columns of `t`.
struct Cosets {
    counts: BTreeMap<Vec<Elem>, usize>,
    pivots: Vec<usize>,
    total: usize,
}

fn cosets(u: &AffineSet, t: &Subspace) -> Cosets {
    let gf = &u.gf;
    let rows: Vec<&[Elem]> = t.rows().iter().map(|r| &r[1..]).collect();
    let pivots: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero row"))
        .collect();
    let mut counts = BTreeMap::new();
    for tail in u.tails() {
        let rep = reduce(gf, tail, &rows, &pivots);
        *counts.entry(rep).or_insert(0) += 1;
    }
    let total = (gf.q() as usize).pow((u.n - rows.len()) as u32);
    Cosets {
        counts,
        pivots,
        total,
    }
}

fn reduce(gf: &Gf, tail: &[Elem], rows: &[&[Elem]], pivots: &[usize]) -> Vec<Elem> {
    let mut v = tail.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        let c = v[p];
        if !c.is_zero() {
            for (x, &y) in v.iter_mut().zip(row.iter()) {
                *x = gf.sub(*x, gf.mul(c, y));
            }
        }
    }
    v
}

/// All coset representatives (tails vanishing on `pivots`) in increasing order.
fn coset_reps(gf: &Gf, n: usize, pivots: &[usize]) -> Vec<Vec<Elem>> {
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let q = gf.q() as usize;
    (0..q.pow(free.len() as u32))
        .map(|mut k| {
            let mut v = vec![Elem::ZERO; n];
            for &c in free.iter().rev() {
                v[c] = gf.elem((k % q) as u32).expect("digit below q");
                k /= q;
            }
            v
        })
        .collect()
}

fn check_nd_subspace(u: &AffineSet, t: &Subspace) -> Result<(), Error> {
    if t.ambient_dim() != u.n {
        return Err(Error::DimensionMismatch {
            expected: u.n,
            found: t.ambient_dim(),
        });
    }
    if t.rank() == 0 || !t.at_infinity() {
        return Err(Error::NotAtInfinity);
    }
    let mask = determined_mask(u);
    if t.points(&u.gf)
        .iter()
        .all(|p| mask.contains(infinity_rank(&u.gf, p)))
    {
        return Err(Error::NoNonDeterminedDirection);
    }
    Ok(())
}

/// The affine lines through a non-determined direction `alpha` that miss `u`.
///
/// Every other line through `alpha` carries exactly one point of `u`, so there
/// are exactly `eps` of these.
pub fn empty_lines_through(u: &AffineSet, alpha: &Point) -> Result<Vec<Subspace>, Error> {
    let gf = &u.gf;
    if alpha.dim() != u.n {
        return Err(Error::DimensionMismatch {
            expected: u.n,
            found: alpha.dim(),
        });
    }
    if !alpha.is_at_infinity() {
        return Err(Error::NotAtInfinity);
    }
    let t = Subspace::span(gf, u.n, core::slice::from_ref(alpha))?;
    let c = cosets(u, &t);
    if c.counts.values().any(|&k| k > 1) {
        return Err(Error::DirectionDetermined);
    }
    let mut lines = Vec::new();
    for rep in coset_reps(gf, u.n, &c.pivots) {
        if !c.counts.contains_key(&rep) {
            let base = Point::affine(&rep);
            lines.push(Subspace::span(gf, u.n, &[base, alpha.clone()])?);
        }
    }
    Ok(lines)
}

/// Deficiencies `q^r - |S ∩ U|` of the `q^{n-1-r}` affine (r+1)-spaces `S`
/// through the r-dimensional subspace `t` of H_∞, sorted ascending.
pub fn deficiency_profile(u: &AffineSet, t: &Subspace) -> Result<Vec<u64>, Error> {
    check_nd_subspace(u, t)?;
    let r = t.dim() as u32;
    if r as usize > u.n - 2 {
        return Err(Error::OutOfRange {
            what: "subspace dimension",
        });
    }
    let cap = (u.gf.q() as usize).pow(r);
    let c = cosets(u, t);
    if c.counts.values().any(|&k| k > cap) {
        return Err(Error::InvariantViolated(
            "affine subspace through a non-determined direction exceeds q^r points",
        ));
    }
    let mut out: Vec<u64> = c.counts.values().map(|&k| (cap - k) as u64).collect();
    out.extend(core::iter::repeat(cap as u64).take(c.total - c.counts.len()));
    out.sort_unstable();
    Ok(out)
}
