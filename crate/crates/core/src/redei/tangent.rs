use alloc::vec::Vec;

use crate::gf::{Elem, Gf};
use crate::projgeom::{incident, normalize, Hyperplane, Point};
use crate::Error;

use super::MPoly;

fn check_degree(gf: &Gf, f: &MPoly) -> Result<usize, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(Error::OutOfRange {
            what: "non-homogeneous polynomial",
        });
    }
    let d = f.total_degree().unwrap_or(0);
    if d >= gf.q() as usize {
        return Err(Error::DegreeTooLarge {
            degree: d,
            q: gf.q(),
        });
    }
    Ok(d)
}

/// Whether `h` is the tangent hyperplane of `f = 0` at `p`.
///
/// A singular point (vanishing gradient) counts as tangent for every
/// hyperplane through it.
pub fn tangency_check(gf: &Gf, f: &MPoly, h: &Hyperplane, p: &Point) -> Result<bool, Error> {
    check_degree(gf, f)?;
    if p.dim() + 1 != f.nvars() || h.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars() - 1,
            found: p.dim(),
        });
    }
    if !f.eval(gf, p.coords()).is_zero() {
        return Err(Error::NotOnSurface);
    }
    if !incident(gf, p, h)? {
        return Ok(false);
    }
    let grad = f.gradient_at(gf, p.coords());
    if grad.iter().all(|c| c.is_zero()) {
        return Ok(true);
    }
    Ok(normalize(gf, &grad)? == h.coords())
}

/// First point of `h` (rank order) on `f = 0` at which `h` is tangent.
pub fn tangent_point(gf: &Gf, f: &MPoly, h: &Hyperplane) -> Result<Option<Point>, Error> {
    check_degree(gf, f)?;
    for p in h.subspace(gf).points(gf) {
        if f.eval(gf, p.coords()).is_zero() && tangency_check(gf, f, h, &p)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// Whether `f = 0` meets `h` in a union of `deg f` (n-2)-subspaces, with multiplicity.
///
/// `f` restricted to `h` is peeled by exact division by every linear form whose
/// zero set lies in the current zero set; `h` is TRI when a constant remains.
/// A hyperplane contained in `f = 0` counts as TRI.
pub fn is_tri(gf: &Gf, f: &MPoly, h: &Hyperplane) -> Result<bool, Error> {
    let basis: Vec<Vec<Elem>> = h
        .subspace(gf)
        .basis()
        .iter()
        .map(|b| b.coords().to_vec())
        .collect();
    let mut g = f.restrict(gf, &basis)?;
    if g.is_zero() {
        return Ok(true);
    }
    let m = basis.len();
    if m < 2 {
        return Ok(g.total_degree() == Some(0));
    }
    let local_points: Vec<Point> = Point::all(gf, m - 1).collect();
    for l in Hyperplane::all(gf, m - 1) {
        loop {
            if g.total_degree() == Some(0) {
                return Ok(true);
            }
            let vanishes = local_points
                .iter()
                .filter(|p| incident(gf, p, &l).unwrap_or(false))
                .all(|p| g.eval(gf, p.coords()).is_zero());
            if !vanishes {
                break;
            }
            match g.div_linear(gf, l.coords())? {
                Some(next) => g = next,
                None => break,
            }
        }
    }
    Ok(g.total_degree() == Some(0))
}

/// Every hyperplane of PG(n,q) that is TRI for `f`, in rank order.
pub fn count_tri_hyperplanes(gf: &Gf, f: &MPoly) -> Result<Vec<Hyperplane>, Error> {
    let d = check_degree(gf, f)?;
    if d < 2 {
        return Err(Error::OutOfRange {
            what: "surface degree",
        });
    }
    let n = f.nvars() - 1;
    if gf.q() > 7 || n > 3 {
        return Err(Error::GuardExceeded);
    }
    let mut out = Vec::new();
    for h in Hyperplane::all(gf, n) {
        if is_tri(gf, f, &h)? {
            out.push(h);
        }
    }
    Ok(out)
}
