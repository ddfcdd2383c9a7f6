//! Rédei polynomials of affine point sets and the surface `f` that completes them.
//!
//! For `U ⊂ AG(n,q)` of size `q^{n-1} - ε` the Rédei polynomial is
//! `R(X0, x) = Π_{u ∈ U} (X0 + u·x)`. Whenever the subspace `s_x` at infinity
//! contains a non-determined direction,
//! `R(X0,x) · f(X0,x) = X0^{q^{n-1}} - X0^{q^{n-2}}`, where `f` is obtained from
//! the elementary symmetric functions `σ_k` of `{u·x}` by a triangular solve.

mod mpoly;
mod tangent;
mod unipoly;

pub use mpoly::{MPoly, Monomial};
pub use tangent::{count_tri_hyperplanes, is_tri, tangency_check, tangent_point};
pub use unipoly::{split_check, Split, UniPoly};

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::BitSet;
use crate::directions::{determined_mask, empty_lines_through, infinity_point, AffineSet};
use crate::gf::{Elem, Gf};
use crate::projgeom::{incident, theta, Hyperplane, Point, Subspace};
use crate::Error;

/// Largest ε for which `f` is expanded symbolically.
pub const MAX_EXPAND_EPS: i64 = 4;
/// Largest dimension for which `f` is expanded symbolically.
pub const MAX_EXPAND_DIM: usize = 4;

/// Commutative ring operations needed by the symmetric-function recurrences.
pub trait Ring {
    type Value: Clone;
    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
}

impl Ring for Gf {
    type Value = Elem;
    fn zero(&self) -> Elem {
        Elem::ZERO
    }
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Gf::add(self, *a, *b)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Gf::sub(self, *a, *b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Gf::mul(self, *a, *b)
    }
}

/// Polynomials in a fixed number of variables over a field.
#[derive(Clone, Debug)]
pub struct PolyRing<'a> {
    pub gf: &'a Gf,
    pub nvars: usize,
}

impl Ring for PolyRing<'_> {
    type Value = MPoly;
    fn zero(&self) -> MPoly {
        MPoly::zero(self.nvars)
    }
    fn one(&self) -> MPoly {
        MPoly::constant(self.nvars, Elem::ONE)
    }
    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.add(self.gf, b)
    }
    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.sub(self.gf, b)
    }
    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a.mul(self.gf, b)
    }
}

/// `σ_0, …, σ_k` of the given values; entries beyond the number of values are zero.
pub fn elementary_symmetric<R: Ring>(
    ring: &R,
    values: impl IntoIterator<Item = R::Value>,
    k: usize,
) -> Vec<R::Value> {
    let mut e = vec![ring.zero(); k + 1];
    e[0] = ring.one();
    for v in values {
        for j in (1..=k).rev() {
            e[j] = ring.add(&e[j], &ring.mul(&e[j - 1], &v));
        }
    }
    e
}

/// Solves `Σ_{i=0..k} σ_i f_{k-i} = 0` for `f_1, …, f_eps` given `σ_1, …, σ_eps`.
pub fn f_from_sigma<R: Ring>(ring: &R, sigmas: &[R::Value]) -> Vec<R::Value> {
    let mut f = vec![ring.one()];
    for k in 1..=sigmas.len() {
        let mut acc = ring.zero();
        for i in 1..=k {
            acc = ring.add(&acc, &ring.mul(&sigmas[i - 1], &f[k - i]));
        }
        f.push(ring.sub(&ring.zero(), &acc));
    }
    f.remove(0);
    f
}

fn check_x(u: &AffineSet, x: &[Elem]) -> Result<(), Error> {
    if x.len() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: x.len(),
        });
    }
    Ok(())
}

/// `Π_{u ∈ U} (X0 + u·x)`.
pub fn redei_eval(u: &AffineSet, x: &[Elem]) -> Result<UniPoly, Error> {
    check_x(u, x)?;
    let gf = u.field();
    let mut r = UniPoly::one();
    for t in u.tails() {
        r.mul_linear(gf, gf.dot(t, x));
    }
    Ok(r)
}

/// `σ_1(x), …, σ_k(x)` for the multiset `{u·x : u ∈ U}`.
pub fn sigma_eval(u: &AffineSet, x: &[Elem], k: usize) -> Result<Vec<Elem>, Error> {
    check_x(u, x)?;
    if k > u.len() {
        return Err(Error::OutOfRange {
            what: "sigma index",
        });
    }
    let gf = u.field();
    let mut s = elementary_symmetric(gf, u.tails().map(|t| gf.dot(t, x)), k);
    s.remove(0);
    Ok(s)
}

/// `q^{n-1} - q^{n-2}`, the bound below which the recurrence determines `f`.
fn recurrence_bound(q: u32, n: usize) -> i64 {
    let q = q as i64;
    if n < 2 {
        return 0;
    }
    q.pow(n as u32 - 1) - q.pow(n as u32 - 2)
}

fn check_recurrence_range(u: &AffineSet) -> Result<usize, Error> {
    let eps = u.eps();
    if eps < 0 || eps >= recurrence_bound(u.field().q(), u.dim()) {
        return Err(Error::EpsOutOfRange { eps });
    }
    Ok(eps as usize)
}

/// `f(X0, x)` computed pointwise from the numeric `σ_k(x)`; valid for any ε in range.
pub fn f_specialization(u: &AffineSet, x: &[Elem]) -> Result<UniPoly, Error> {
    let eps = check_recurrence_range(u)?;
    let fk = f_from_sigma(u.field(), &sigma_eval(u, x, eps)?);
    // X0^eps + Σ f_k X0^{eps-k}
    let mut coeffs = vec![Elem::ZERO; eps + 1];
    coeffs[eps] = Elem::ONE;
    for (k, c) in fk.into_iter().enumerate() {
        coeffs[eps - 1 - k] = c;
    }
    Ok(UniPoly::from_coeffs(coeffs))
}

/// The homogeneous degree-ε surface `f(X0, …, Xn)` in the dual space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FSurface {
    gf: Gf,
    n: usize,
    f: MPoly,
}

impl FSurface {
    /// Wraps a homogeneous polynomial in `n + 1` variables.
    pub fn from_poly(gf: &Gf, n: usize, f: MPoly) -> Result<FSurface, Error> {
        if f.nvars() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: f.nvars(),
            });
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::OutOfRange {
                what: "non-homogeneous polynomial",
            });
        }
        Ok(FSurface {
            gf: gf.clone(),
            n,
            f,
        })
    }

    pub fn field(&self) -> &Gf {
        &self.gf
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &MPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.total_degree().unwrap_or(0)
    }

    pub fn eval(&self, t: &Point) -> Elem {
        self.f.eval(&self.gf, t.coords())
    }

    pub fn contains(&self, t: &Point) -> bool {
        self.eval(t).is_zero()
    }

    /// Points of PG(n,q) on `f = 0`, in rank order.
    pub fn zero_set(&self) -> Vec<Point> {
        Point::all(&self.gf, self.n)
            .filter(|t| self.contains(t))
            .collect()
    }
}

/// Expands `f = X0^ε + Σ f_k(σ_1(X), …, σ_k(X)) X0^{ε-k}` symbolically.
pub fn build_f_surface(u: &AffineSet) -> Result<FSurface, Error> {
    let gf = u.field();
    let n = u.dim();
    let eps = u.eps();
    if eps < 1 || eps >= gf.q() as i64 || eps >= recurrence_bound(gf.q(), n) {
        return Err(Error::EpsOutOfRange { eps });
    }
    if eps > MAX_EXPAND_EPS || n > MAX_EXPAND_DIM {
        return Err(Error::ExpansionGuard);
    }
    let eps = eps as usize;
    let ring = PolyRing { gf, nvars: n + 1 };
    let forms = u.tails().map(|t| {
        let mut c = vec![Elem::ZERO];
        c.extend_from_slice(t);
        MPoly::linear_form(&c)
    });
    let mut sigma = elementary_symmetric(&ring, forms, eps);
    sigma.remove(0);
    let fk = f_from_sigma(&ring, &sigma);
    let x0 = MPoly::var(n + 1, 0);
    let mut f = x0.pow(gf, eps as u32);
    for (k, c) in fk.iter().enumerate() {
        f = f.add(gf, &c.mul(gf, &x0.pow(gf, (eps - 1 - k) as u32)));
    }
    FSurface::from_poly(gf, n, f)
}

/// Outcome of checking the product identity at one tuple `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarCheck {
    Holds,
    Fails,
    /// `x = 0` or `s_x` holds no non-determined direction.
    NotApplicable,
}

/// Whether `s_x = {(0,a) : a·x = 0}` contains a direction outside `mask`.
pub fn is_qualifying(u: &AffineSet, mask: &BitSet, x: &[Elem]) -> bool {
    let gf = u.field();
    if x.iter().all(|c| c.is_zero()) {
        return false;
    }
    let total = theta(u.dim() as isize - 1, gf.q());
    (0..total).any(|r| {
        !mask.contains(r)
            && gf
                .dot(&infinity_point(gf, u.dim(), r).coords()[1..], x)
                .is_zero()
    })
}

fn star_at(u: &AffineSet, x: &[Elem]) -> Result<bool, Error> {
    let gf = u.field();
    let n = u.dim();
    let lhs = redei_eval(u, x)?.mul(gf, &f_specialization(u, x)?);
    let hi = (gf.q() as usize).pow(n as u32 - 1);
    let lo = (gf.q() as usize).pow(n as u32 - 2);
    let mut c = vec![Elem::ZERO; hi + 1];
    c[hi] = Elem::ONE;
    c[lo] = gf.neg(Elem::ONE);
    Ok(lhs == UniPoly::from_coeffs(c))
}

/// Checks `R(X0,x)·f(X0,x) = X0^{q^{n-1}} - X0^{q^{n-2}}` at one tuple.
pub fn verify_star(u: &AffineSet, x: &[Elem]) -> Result<StarCheck, Error> {
    check_x(u, x)?;
    check_recurrence_range(u)?;
    if !is_qualifying(u, &determined_mask(u), x) {
        return Ok(StarCheck::NotApplicable);
    }
    Ok(if star_at(u, x)? {
        StarCheck::Holds
    } else {
        StarCheck::Fails
    })
}

/// Tally of [`verify_star_all`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StarSummary {
    pub checked: usize,
    pub holds: usize,
    /// Qualifying tuples at which `f(X0,x)` splits into ε linear factors over GF(q).
    pub splits: usize,
    pub failures: Vec<Vec<Elem>>,
}

/// Runs the product identity and the splitting test at every qualifying tuple.
pub fn verify_star_all(u: &AffineSet) -> Result<StarSummary, Error> {
    check_recurrence_range(u)?;
    let gf = u.field();
    let n = u.dim();
    let mask = determined_mask(u);
    let mut out = StarSummary::default();
    let q = gf.q() as usize;
    for idx in 0..q.pow(n as u32) {
        let x: Vec<Elem> = crate::directions::affine_from_index(gf, n, idx).coords()[1..].to_vec();
        if !is_qualifying(u, &mask, &x) {
            continue;
        }
        out.checked += 1;
        if star_at(u, &x)? {
            out.holds += 1;
        } else {
            out.failures.push(x.clone());
        }
        if matches!(
            split_check(gf, &f_specialization(u, &x)?)?,
            Split::Splits(_)
        ) {
            out.splits += 1;
        }
    }
    Ok(out)
}

fn check_alpha(u: &AffineSet, alpha: &Point) -> Result<(), Error> {
    if alpha.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: alpha.dim(),
        });
    }
    if !alpha.is_at_infinity() {
        return Err(Error::NotAtInfinity);
    }
    let mask = determined_mask(u);
    if mask.contains(crate::directions::infinity_rank(u.field(), alpha)) {
        return Err(Error::DirectionDetermined);
    }
    Ok(())
}

/// The dual point of a deficient hyperplane `T ∋ α`, which must lie on `f`.
pub fn deficient_dual_point(
    u: &AffineSet,
    f: &FSurface,
    t: &Hyperplane,
    alpha: &Point,
) -> Result<Point, Error> {
    let gf = u.field();
    let n = u.dim();
    check_alpha(u, alpha)?;
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.dim(),
        });
    }
    if *t == Hyperplane::at_infinity(n) || !incident(gf, alpha, t)? {
        return Err(Error::NotDeficient);
    }
    let mut on = 0usize;
    for p in u.points() {
        if incident(gf, p, t)? {
            on += 1;
        }
    }
    if on >= (gf.q() as usize).pow(n as u32 - 2) {
        return Err(Error::NotDeficient);
    }
    let dual = t.dual();
    if !f.contains(&dual) {
        return Err(Error::InvariantViolated(
            "dual point of a deficient hyperplane is not on f",
        ));
    }
    Ok(dual)
}

/// `{t ∈ [α] : f(t) = 0}` as the union of ε distinct (n-2)-subspaces.
///
/// The subspaces are found by testing which (n-2)-subspaces of `[α]` lie on
/// `f`, then compared with the duals of the empty lines through `α`.
pub fn nd_hyperplane_decomposition(
    u: &AffineSet,
    f: &FSurface,
    alpha: &Point,
) -> Result<Vec<Subspace>, Error> {
    let gf = u.field();
    let n = u.dim();
    check_alpha(u, alpha)?;
    let eps = u.eps();
    let a = Subspace::span(gf, n, core::slice::from_ref(alpha))?;
    let dual_alpha = a.annihilator(gf);
    let mut found = Vec::new();
    let mut covered = Vec::new();
    for line in crate::projgeom::subspaces_through(gf, &a, 1)? {
        let s = line.annihilator(gf);
        let pts = s.points(gf);
        if pts.iter().all(|p| f.contains(p)) {
            covered.extend(pts);
            found.push(s);
        }
    }
    covered.sort();
    covered.dedup();
    let zeros: Vec<Point> = dual_alpha
        .points(gf)
        .into_iter()
        .filter(|p| f.contains(p))
        .collect();
    if covered != zeros || found.len() as i64 != eps {
        return Err(Error::InvariantViolated(
            "f on the dual hyperplane of a non-determined direction is not a union of eps subspaces",
        ));
    }
    let mut expected: Vec<Subspace> = empty_lines_through(u, alpha)?
        .iter()
        .map(|l| l.annihilator(gf))
        .collect();
    expected.sort();
    found.sort();
    if expected != found {
        return Err(Error::InvariantViolated(
            "subspaces on f do not match the empty lines through the direction",
        ));
    }
    Ok(found)
}

#[cfg(test)]
mod tests;
