use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{Elem, Gf};
use crate::Error;

/// Dense univariate polynomial in `X0`, coefficients from the constant term up.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Elem::ONE],
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `c·X^k`.
    pub fn monomial(c: Elem, k: usize) -> Self {
        let mut v = vec![Elem::ZERO; k + 1];
        v[k] = c;
        UniPoly::from_coeffs(v)
    }

    /// `X + c`.
    pub fn linear(c: Elem) -> Self {
        UniPoly {
            coeffs: vec![c, Elem::ONE],
        }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, gf: &Gf, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs(
            (0..len)
                .map(|i| gf.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, gf: &Gf, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs(
            (0..len)
                .map(|i| gf.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, gf: &Gf, c: Elem) -> Self {
        UniPoly::from_coeffs(self.coeffs.iter().map(|&a| gf.mul(a, c)).collect())
    }

    pub fn mul(&self, gf: &Gf, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = gf.add(out[i + j], gf.mul(a, b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Multiplies in place by `X + c`.
    pub fn mul_linear(&mut self, gf: &Gf, c: Elem) {
        if self.is_zero() {
            return;
        }
        self.coeffs.push(Elem::ZERO);
        for i in (0..self.coeffs.len()).rev() {
            let lower = if i > 0 {
                self.coeffs[i - 1]
            } else {
                Elem::ZERO
            };
            self.coeffs[i] = gf.add(lower, gf.mul(c, self.coeffs[i]));
        }
    }

    pub fn eval(&self, gf: &Gf, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| gf.add(gf.mul(acc, x), c))
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn divrem(&self, gf: &Gf, divisor: &Self) -> Result<(Self, Self), Error> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(sd) = self.degree() else {
            return Ok((UniPoly::zero(), UniPoly::zero()));
        };
        if sd < dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let inv = gf.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Elem::ZERO; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = gf.mul(rem[k + dd], inv);
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = gf.sub(rem[k + j], gf.mul(c, d));
            }
        }
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Divides by `X - root`, returning the quotient when the division is exact.
    pub fn deflate(&self, gf: &Gf, root: Elem) -> Option<Self> {
        let n = self.coeffs.len();
        if n == 0 {
            return None;
        }
        let mut quot = vec![Elem::ZERO; n - 1];
        let mut carry = Elem::ZERO;
        for i in (0..n).rev() {
            let v = gf.add(self.coeffs[i], gf.mul(carry, root));
            if i == 0 {
                return v.is_zero().then(|| UniPoly::from_coeffs(quot));
            }
            quot[i - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    pub fn monic(&self, gf: &Gf) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(gf, gf.inv(self.leading()))
    }

    pub fn gcd(&self, gf: &Gf, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(gf, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(gf)
    }

    /// `X^e mod m`.
    pub fn x_pow_mod(gf: &Gf, e: u64, m: &Self) -> Result<Self, Error> {
        let mut result = UniPoly::one().divrem(gf, m)?.1;
        let mut base = UniPoly::monomial(Elem::ONE, 1).divrem(gf, m)?.1;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(gf, &base).divrem(gf, m)?.1;
            }
            base = base.mul(gf, &base).divrem(gf, m)?.1;
            e >>= 1;
        }
        Ok(result)
    }
}

/// Outcome of [`split_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Split {
    /// Roots with multiplicities, increasing by code; multiplicities sum to the degree.
    Splits(Vec<(Elem, usize)>),
    NotSplit,
}

/// Decides whether `g` is a product of linear factors over GF(q).
///
/// The distinct roots come from `gcd(g, X^q - X)`; multiplicities from
/// repeated synthetic division.
pub fn split_check(gf: &Gf, g: &UniPoly) -> Result<Split, Error> {
    let deg = g.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(Split::Splits(Vec::new()));
    }
    let xq = UniPoly::x_pow_mod(gf, gf.q() as u64, g)?;
    let x = UniPoly::monomial(Elem::ONE, 1);
    let h = g.gcd(gf, &xq.sub(gf, &x));
    let mut roots = Vec::new();
    let mut total = 0;
    if h.degree().unwrap_or(0) > 0 {
        for c in gf.elements() {
            if !h.eval(gf, c).is_zero() {
                continue;
            }
            let mut m = 0;
            let mut cur = g.clone();
            while let Some(next) = cur.deflate(gf, c) {
                cur = next;
                m += 1;
            }
            roots.push((c, m));
            total += m;
        }
    }
    Ok(if total == deg {
        Split::Splits(roots)
    } else {
        Split::NotSplit
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(gf: &Gf, c: &[u32]) -> UniPoly {
        UniPoly::from_coeffs(c.iter().map(|&x| gf.elem(x).unwrap()).collect())
    }

    #[test]
    fn split_examples() {
        let f = Gf::new(3, 1).unwrap();
        let e = |c| f.elem(c).unwrap();
        // X^2 + X
        assert_eq!(
            split_check(&f, &p(&f, &[0, 1, 1])).unwrap(),
            Split::Splits(vec![(e(0), 1), (e(2), 1)])
        );
        // X^2 + 1
        assert_eq!(
            split_check(&f, &p(&f, &[1, 0, 1])).unwrap(),
            Split::NotSplit
        );
        // (X - 2)^3
        let mut g = UniPoly::one();
        for _ in 0..3 {
            g.mul_linear(&f, e(1));
        }
        assert_eq!(split_check(&f, &g).unwrap(), Split::Splits(vec![(e(2), 3)]));
        assert_eq!(
            split_check(&f, &UniPoly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn split_with_irreducible_cofactor() {
        let f = Gf::new(2, 2).unwrap();
        // (X + 1)^2 · (X^2 + X + ω) has roots of multiplicity 2 only at 1
        let w = f.elem(2).unwrap();
        let mut g = UniPoly::from_coeffs(vec![w, Elem::ONE, Elem::ONE]);
        g.mul_linear(&f, Elem::ONE);
        g.mul_linear(&f, Elem::ONE);
        assert_eq!(split_check(&f, &g).unwrap(), Split::NotSplit);
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Gf::new(5, 1).unwrap();
        let a = p(&f, &[1, 2, 3, 4, 1, 3]);
        let b = p(&f, &[2, 0, 1]);
        let (q, r) = a.divrem(&f, &b).unwrap();
        assert!(r.degree().map_or(true, |d| d < 2));
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        assert_eq!(a.divrem(&f, &UniPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mul_linear_matches_mul() {
        let f = Gf::new(7, 1).unwrap();
        let a = p(&f, &[3, 1, 4, 1]);
        let mut b = a.clone();
        b.mul_linear(&f, f.elem(5).unwrap());
        assert_eq!(b, a.mul(&f, &UniPoly::linear(f.elem(5).unwrap())));
    }
}
