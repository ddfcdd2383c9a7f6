//! Points, hyperplanes and subspaces of PG(n,q).
//!
//! Homogeneous vectors are normalized so that their leftmost nonzero
//! coordinate is 1. With that convention the lexicographic order of the code
//! vectors is a total order on points, and [`Point::rank`] is the position of a
//! point in it. The hyperplane at infinity is `[1,0,…,0]`; affine points have
//! first coordinate 1 and sort after every point at infinity.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::{Elem, Gf};
use crate::Error;

/// Number of points of PG(k,q), `(q^{k+1}-1)/(q-1)`. `theta(-1) = 0`.
pub fn theta(k: isize, q: u32) -> usize {
    if k < 0 {
        return 0;
    }
    let q = q as usize;
    (0..=k as u32).map(|i| q.pow(i)).sum()
}

/// Scales `v` so its leftmost nonzero entry is 1. Returns false for the zero vector.
pub(crate) fn normalize_in_place(gf: &Gf, v: &mut [Elem]) -> bool {
    let Some(lead) = v.iter().copied().find(|c| !c.is_zero()) else {
        return false;
    };
    if lead != Elem::ONE {
        let inv = gf.inv(lead);
        for c in v.iter_mut() {
            *c = gf.mul(*c, inv);
        }
    }
    true
}

/// Returns the normalized representative of a nonzero vector.
pub fn normalize(gf: &Gf, coords: &[Elem]) -> Result<Vec<Elem>, Error> {
    let mut v = coords.to_vec();
    if normalize_in_place(gf, &mut v) {
        Ok(v)
    } else {
        Err(Error::ZeroVector)
    }
}

pub(crate) fn rank_of(coords: &[Elem], q: u32) -> usize {
    let n = coords.len() - 1;
    let lead = coords
        .iter()
        .position(|c| !c.is_zero())
        .expect("normalized vector");
    let offset = theta(n as isize - lead as isize - 1, q);
    let tail = coords[lead + 1..]
        .iter()
        .fold(0usize, |acc, c| acc * q as usize + c.code() as usize);
    offset + tail
}

fn unrank(gf: &Gf, n: usize, rank: usize) -> Vec<Elem> {
    let q = gf.q();
    let mut lead = n;
    while rank >= theta(n as isize - lead as isize, q) {
        lead -= 1;
    }
    let mut tail = rank - theta(n as isize - lead as isize - 1, q);
    let mut v = vec![Elem::ZERO; n + 1];
    v[lead] = Elem::ONE;
    for i in (lead + 1..=n).rev() {
        v[i] = gf.elem((tail % q as usize) as u32).expect("digit below q");
        tail /= q as usize;
    }
    v
}

fn codes_to_elems(gf: &Gf, codes: &[u32]) -> Result<Vec<Elem>, Error> {
    codes.iter().map(|&c| gf.elem(c)).collect()
}

macro_rules! homogeneous_type {
    ($name:ident, $open:literal, $close:literal) => {
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Vec<Elem>);

        impl $name {
            /// Normalizes a nonzero coordinate vector.
            pub fn new(gf: &Gf, coords: &[Elem]) -> Result<Self, Error> {
                normalize(gf, coords).map($name)
            }

            pub fn from_codes(gf: &Gf, codes: &[u32]) -> Result<Self, Error> {
                Self::new(gf, &codes_to_elems(gf, codes)?)
            }

            pub fn coords(&self) -> &[Elem] {
                &self.0
            }

            pub fn codes(&self) -> Vec<u32> {
                self.0.iter().map(|c| c.code()).collect()
            }

            /// Dimension n of the ambient PG(n,q).
            pub fn dim(&self) -> usize {
                self.0.len() - 1
            }

            /// Position in the lexicographic enumeration of PG(n,q).
            pub fn rank(&self, q: u32) -> usize {
                rank_of(&self.0, q)
            }

            pub fn from_rank(gf: &Gf, n: usize, rank: usize) -> Result<Self, Error> {
                if rank >= theta(n as isize, gf.q()) {
                    return Err(Error::OutOfRange { what: "rank" });
                }
                Ok($name(unrank(gf, n, rank)))
            }

            /// All objects of PG(n,q) in rank order.
            pub fn all(gf: &Gf, n: usize) -> impl Iterator<Item = Self> + '_ {
                (0..theta(n as isize, gf.q())).map(move |r| $name(unrank(gf, n, r)))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str($open)?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", c.code())?;
                }
                f.write_str($close)
            }
        }
    };
}

homogeneous_type!(Point, "(", ")");
homogeneous_type!(Hyperplane, "[", "]");

impl Point {
    pub(crate) fn from_normalized(coords: Vec<Elem>) -> Self {
        debug_assert!(coords.iter().find(|c| !c.is_zero()) == Some(&Elem::ONE));
        Point(coords)
    }

    /// The affine point `(1, tail…)`.
    pub fn affine(tail: &[Elem]) -> Point {
        let mut v = Vec::with_capacity(tail.len() + 1);
        v.push(Elem::ONE);
        v.extend_from_slice(tail);
        Point(v)
    }

    pub fn is_at_infinity(&self) -> bool {
        self.0[0].is_zero()
    }

    /// Image under the standard duality `(a_0,…,a_n) ↦ [a_0,…,a_n]`.
    pub fn dual(&self) -> Hyperplane {
        Hyperplane(self.0.clone())
    }
}

impl Hyperplane {
    /// `[1,0,…,0]`.
    pub fn at_infinity(n: usize) -> Hyperplane {
        let mut v = vec![Elem::ZERO; n + 1];
        v[0] = Elem::ONE;
        Hyperplane(v)
    }

    /// Image under the standard duality, back to a point.
    pub fn dual(&self) -> Point {
        Point(self.0.clone())
    }

    /// The hyperplane as a subspace of dimension n-1.
    pub fn subspace(&self, gf: &Gf) -> Subspace {
        Subspace::from_rows(gf, self.dim(), vec![self.0.clone()]).annihilator(gf)
    }
}

/// Whether `p` lies on `h`.
pub fn incident(gf: &Gf, p: &Point, h: &Hyperplane) -> Result<bool, Error> {
    if p.0.len() != h.0.len() {
        return Err(Error::DimensionMismatch {
            expected: h.0.len(),
            found: p.0.len(),
        });
    }
    Ok(gf.dot(&p.0, &h.0).is_zero())
}

/// Row-reduces `rows` in place, dropping zero rows. Returns the pivot columns.
pub(crate) fn rref(gf: &Gf, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = gf.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = gf.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in 0..ncols {
                    let t = gf.mul(f, rows[r][j]);
                    rows[i][j] = gf.sub(rows[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{y : M·y = 0}` for the given rows of length `ncols`.
pub(crate) fn nullspace(gf: &Gf, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(gf, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; ncols];
            v[fc] = Elem::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = gf.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// A projective subspace, stored as the reduced row echelon form of a basis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Elem>>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {}, ", self.dim())?;
        f.debug_list()
            .entries(self.rows.iter().map(|r| Point(r.clone())))
            .finish()?;
        f.write_str(")")
    }
}

impl Subspace {
    fn from_rows(gf: &Gf, n: usize, mut rows: Vec<Vec<Elem>>) -> Subspace {
        rref(gf, &mut rows);
        Subspace { n, rows }
    }

    pub fn empty(n: usize) -> Subspace {
        Subspace {
            n,
            rows: Vec::new(),
        }
    }

    pub fn whole(gf: &Gf, n: usize) -> Subspace {
        let rows = (0..=n)
            .map(|i| {
                let mut v = vec![Elem::ZERO; n + 1];
                v[i] = Elem::ONE;
                v
            })
            .collect();
        Subspace::from_rows(gf, n, rows)
    }

    /// Span of the given points; all must live in PG(n,q).
    pub fn span(gf: &Gf, n: usize, points: &[Point]) -> Result<Subspace, Error> {
        for p in points {
            if p.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.dim(),
                });
            }
        }
        Ok(Subspace::from_rows(
            gf,
            n,
            points.iter().map(|p| p.0.clone()).collect(),
        ))
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Vector-space rank, `dim + 1`.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Projective dimension; -1 for the empty subspace.
    pub fn dim(&self) -> isize {
        self.rows.len() as isize - 1
    }

    /// Basis in reduced row echelon form; every row is a normalized point.
    pub fn basis(&self) -> Vec<Point> {
        self.rows.iter().map(|r| Point(r.clone())).collect()
    }

    pub(crate) fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn contains_vec(&self, gf: &Gf, v: &[Elem]) -> bool {
        let mut m = self.rows.clone();
        m.push(v.to_vec());
        rref(gf, &mut m);
        m.len() == self.rows.len()
    }

    pub fn contains(&self, gf: &Gf, p: &Point) -> bool {
        p.dim() == self.n && self.contains_vec(gf, &p.0)
    }

    pub fn contains_subspace(&self, gf: &Gf, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vec(gf, r))
    }

    pub fn num_points(&self, q: u32) -> usize {
        theta(self.dim(), q)
    }

    /// All points of the subspace in rank order.
    pub fn points(&self, gf: &Gf) -> Vec<Point> {
        let r = self.rows.len();
        if r == 0 {
            return Vec::new();
        }
        let mut pts: Vec<Point> = (0..theta(r as isize - 1, gf.q()))
            .map(|k| {
                let coef = unrank(gf, r - 1, k);
                let mut v = vec![Elem::ZERO; self.n + 1];
                for (c, row) in coef.iter().zip(&self.rows) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = gf.add(*x, gf.mul(*c, y));
                    }
                }
                Point(v)
            })
            .collect();
        pts.sort();
        pts
    }

    /// The dual subspace: all hyperplanes containing `self`, as points.
    pub fn annihilator(&self, gf: &Gf) -> Subspace {
        Subspace::from_rows(gf, self.n, nullspace(gf, &self.rows, self.n + 1))
    }

    pub fn join(&self, gf: &Gf, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::from_rows(gf, self.n, rows)
    }

    pub fn meet(&self, gf: &Gf, other: &Subspace) -> Subspace {
        self.annihilator(gf)
            .join(gf, &other.annihilator(gf))
            .annihilator(gf)
    }

    /// Whether every point lies in the hyperplane at infinity.
    pub fn at_infinity(&self) -> bool {
        self.rows.iter().all(|r| r[0].is_zero())
    }
}

/// The line through two distinct points, with its q+1 points.
pub fn line_through(gf: &Gf, a: &Point, b: &Point) -> Result<(Subspace, Vec<Point>), Error> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    if a == b {
        return Err(Error::EqualPoints);
    }
    let line = Subspace::span(gf, a.dim(), &[a.clone(), b.clone()])?;
    let pts = line.points(gf);
    Ok((line, pts))
}

/// Every r×m matrix in reduced row echelon form with r nonzero rows.
fn rref_matrices(gf: &Gf, r: usize, m: usize) -> Vec<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(r);
    pivot_sets(r, m, 0, &mut pivots, &mut |piv| {
        // free cells: (row, col) with col > piv[row] and col not a pivot
        let cells: Vec<(usize, usize)> = (0..r)
            .flat_map(|i| {
                (piv[i] + 1..m)
                    .filter(|c| !piv.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let q = gf.q() as usize;
        let total = q.pow(cells.len() as u32);
        for mut k in 0..total {
            let mut mat = vec![vec![Elem::ZERO; m]; r];
            for (i, &p) in piv.iter().enumerate() {
                mat[i][p] = Elem::ONE;
            }
            for &(i, c) in cells.iter().rev() {
                mat[i][c] = gf.elem((k % q) as u32).expect("digit below q");
                k /= q;
            }
            out.push(mat);
        }
    });
    out
}

fn pivot_sets(r: usize, m: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == r {
        f(cur);
        return;
    }
    let remaining = r - cur.len();
    for c in start..=m - remaining {
        cur.push(c);
        pivot_sets(r, m, c + 1, cur, f);
        cur.pop();
    }
}

/// All subspaces of projective dimension `k` that contain `base`, in a fixed order.
pub fn subspaces_through(gf: &Gf, base: &Subspace, k: usize) -> Result<Vec<Subspace>, Error> {
    let n = base.n;
    if k > n || (k as isize) < base.dim() {
        return Err(Error::OutOfRange {
            what: "subspace dimension",
        });
    }
    let w = base.rank();
    let pivots: Vec<usize> = base
        .rows
        .iter()
        .map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero row"))
        .collect();
    let complement: Vec<usize> = (0..=n).filter(|c| !pivots.contains(c)).collect();
    let extra = k + 1 - w;
    if extra == 0 {
        return Ok(vec![base.clone()]);
    }
    let mats = rref_matrices(gf, extra, complement.len());
    Ok(mats
        .into_iter()
        .map(|mat| {
            let mut rows = base.rows.clone();
            for row in mat {
                let mut v = vec![Elem::ZERO; n + 1];
                for (x, &c) in row.iter().zip(&complement) {
                    v[c] = *x;
                }
                rows.push(v);
            }
            Subspace::from_rows(gf, n, rows)
        })
        .collect())
}

/// All subspaces of projective dimension `k` of PG(n,q).
pub fn subspaces(gf: &Gf, n: usize, k: usize) -> Result<Vec<Subspace>, Error> {
    subspaces_through(gf, &Subspace::empty(n), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn gf(p: u32, h: u32) -> Gf {
        Gf::new(p, h).unwrap()
    }

    fn pt(f: &Gf, c: &[u32]) -> Point {
        Point::from_codes(f, c).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let f4 = gf(2, 2);
        assert_eq!(pt(&f4, &[0, 2, 2]).codes(), vec![0, 1, 1]);
        let f3 = gf(3, 1);
        assert_eq!(pt(&f3, &[1, 2, 0, 1]).codes(), vec![1, 2, 0, 1]);
        assert_eq!(pt(&f3, &[0, 0, 2, 1]).codes(), vec![0, 0, 1, 2]);
        assert_eq!(Point::from_codes(&f3, &[0, 0, 0]), Err(Error::ZeroVector));
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let f = gf(5, 1);
        for p in Point::all(&f, 2) {
            for l in f.elements().skip(1) {
                let scaled: Vec<Elem> = p.coords().iter().map(|&c| f.mul(l, c)).collect();
                assert_eq!(Point::new(&f, &scaled).unwrap(), p);
            }
        }
    }

    #[test]
    fn incidence_examples() {
        let f = gf(3, 1);
        let h = |c: &[u32]| Hyperplane::from_codes(&f, c).unwrap();
        assert!(incident(&f, &pt(&f, &[1, 0, 0, 0]), &h(&[0, 1, 0, 0])).unwrap());
        assert!(incident(&f, &pt(&f, &[1, 1, 0, 0]), &h(&[1, 2, 0, 0])).unwrap());
        assert!(!incident(&f, &pt(&f, &[1, 0, 0, 0]), &h(&[1, 0, 0, 0])).unwrap());
        assert!(matches!(
            incident(&f, &pt(&f, &[1, 0, 0]), &h(&[1, 0, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn duality_examples() {
        let f = gf(3, 1);
        assert_eq!(pt(&f, &[0, 0, 0, 1]).dual().codes(), vec![0, 0, 0, 1]);
        assert_eq!(pt(&f, &[1, 2, 0, 1]).dual().codes(), vec![1, 2, 0, 1]);
        for p in Point::all(&f, 3) {
            assert_eq!(p.dual().dual(), p);
        }
    }

    #[test]
    fn pairing_is_symmetric() {
        let f = gf(2, 2);
        let pts: Vec<Point> = Point::all(&f, 2).collect();
        for a in &pts {
            for b in &pts {
                assert_eq!(
                    incident(&f, a, &b.dual()).unwrap(),
                    incident(&f, b, &a.dual()).unwrap()
                );
            }
        }
    }

    #[test]
    fn line_examples() {
        let f = gf(3, 1);
        let (_, pts) = line_through(&f, &pt(&f, &[1, 0, 0, 0]), &pt(&f, &[1, 1, 0, 0])).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.contains(&pt(&f, &[0, 1, 0, 0])));
        assert_eq!(pts.iter().filter(|p| p.is_at_infinity()).count(), 1);
        let a = pt(&f, &[1, 2, 1, 0]);
        assert_eq!(line_through(&f, &a, &a).unwrap_err(), Error::EqualPoints);
    }

    #[test]
    fn point_counts() {
        for q in [2u32, 3, 4, 5] {
            let f = if q == 4 { gf(2, 2) } else { gf(q, 1) };
            for k in 0..=3usize {
                let pts: Vec<Point> = Point::all(&f, k).collect();
                assert_eq!(
                    pts.len(),
                    (q.pow(k as u32 + 1) as usize - 1) / (q as usize - 1)
                );
                let set: BTreeSet<_> = pts.iter().cloned().collect();
                assert_eq!(set.len(), pts.len());
                for (r, p) in pts.iter().enumerate() {
                    assert_eq!(p.rank(q), r);
                    assert_eq!(Point::new(&f, p.coords()).unwrap(), *p);
                }
                assert!(pts.windows(2).all(|w| w[0] < w[1]));
            }
        }
        assert_eq!(Point::all(&gf(3, 1), 2).count(), 13);
        assert_eq!(Hyperplane::all(&gf(2, 2), 3).count(), 85);
    }

    #[test]
    fn pencil_through_codim_two_subspace_at_infinity() {
        let f = gf(3, 1);
        let n = 3;
        // s = {(0,a,b,c) : a + b = 0}
        let s = Subspace::span(&f, n, &[pt(&f, &[0, 1, 2, 0]), pt(&f, &[0, 0, 0, 1])]).unwrap();
        let through = subspaces_through(&f, &s, n - 1).unwrap();
        assert_eq!(through.len(), 4);
        let hinf = Hyperplane::at_infinity(n).subspace(&f);
        let affine: Vec<_> = through.iter().filter(|h| **h != hinf).collect();
        assert_eq!(affine.len(), 3);
    }

    #[test]
    fn subspace_enumeration_counts() {
        let f = gf(2, 1);
        // lines of PG(3,2): 35, planes: 15
        assert_eq!(subspaces(&f, 3, 1).unwrap().len(), 35);
        assert_eq!(subspaces(&f, 3, 2).unwrap().len(), 15);
        let f3 = gf(3, 1);
        assert_eq!(subspaces(&f3, 3, 1).unwrap().len(), 130);
        let p = pt(&f3, &[1, 0, 0, 0]);
        let base = Subspace::span(&f3, 3, &[p]).unwrap();
        let lines = subspaces_through(&f3, &base, 1).unwrap();
        assert_eq!(lines.len(), 13);
        let uniq: BTreeSet<_> = lines.iter().cloned().collect();
        assert_eq!(uniq.len(), 13);
        assert!(subspaces_through(&f3, &base, 4).is_err());
        // deterministic
        assert_eq!(lines, subspaces_through(&f3, &base, 1).unwrap());
    }

    #[test]
    fn annihilator_and_meet() {
        let f = gf(5, 1);
        let n = 3;
        let l = Subspace::span(&f, n, &[pt(&f, &[1, 0, 0, 0]), pt(&f, &[0, 1, 0, 0])]).unwrap();
        let a = l.annihilator(&f);
        assert_eq!(a.dim(), 1);
        for h in a.points(&f) {
            for p in l.points(&f) {
                assert!(incident(&f, &p, &h.dual()).unwrap());
            }
        }
        assert_eq!(a.annihilator(&f), l);
        let h1 = Hyperplane::from_codes(&f, &[0, 0, 1, 0])
            .unwrap()
            .subspace(&f);
        let h2 = Hyperplane::from_codes(&f, &[0, 0, 0, 1])
            .unwrap()
            .subspace(&f);
        assert_eq!(h1.meet(&f, &h2), l);
        assert_eq!(l.points(&f).len(), 6);
    }
}
