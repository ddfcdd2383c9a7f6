use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::gf::{Elem, Gf};
use crate::Error;

/// Exponent vector, ordered graded-lexicographically with `X0 > X1 > …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `nvars` variables over a fixed field.
///
/// Zero coefficients are never stored, so equality is structural.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Elem>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Elem) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::from_terms_unchecked(nvars, [(Monomial(e), Elem::ONE)])
    }

    /// `Σ c_i X_i`.
    pub fn linear_form(coeffs: &[Elem]) -> Self {
        let nvars = coeffs.len();
        let mut p = MPoly::zero(nvars);
        for (i, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; nvars];
                e[i] = 1;
                p.terms.insert(Monomial(e), c);
            }
        }
        p
    }

    /// Sums the given terms; exponent vectors must have length `nvars`.
    pub fn from_terms(
        gf: &Gf,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u16>, Elem)>,
    ) -> Result<Self, Error> {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    found: e.len(),
                });
            }
            p.add_term(gf, Monomial(e), c);
        }
        Ok(p)
    }

    fn from_terms_unchecked(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Elem)>,
    ) -> Self {
        MPoly {
            nvars,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn add_term(&mut self, gf: &Gf, m: Monomial, c: Elem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = gf.add(*v, c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing graded-lex order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Elem)> {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, exps: &[u16]) -> Elem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .copied()
            .unwrap_or(Elem::ZERO)
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn add(&self, gf: &Gf, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(gf, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, gf: &Gf, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(gf, m.clone(), gf.neg(c));
        }
        out
    }

    pub fn neg(&self, gf: &Gf) -> Self {
        self.scale(gf, gf.neg(Elem::ONE))
    }

    pub fn scale(&self, gf: &Gf, c: Elem) -> Self {
        MPoly::from_terms_unchecked(
            self.nvars,
            self.terms.iter().map(|(m, &a)| (m.clone(), gf.mul(a, c))),
        )
    }

    pub fn mul(&self, gf: &Gf, other: &Self) -> Self {
        let mut out = MPoly::zero(self.nvars);
        for (ma, &a) in &self.terms {
            for (mb, &b) in &other.terms {
                out.add_term(gf, ma.mul(mb), gf.mul(a, b));
            }
        }
        out
    }

    pub fn pow(&self, gf: &Gf, e: u32) -> Self {
        let mut out = MPoly::constant(self.nvars, Elem::ONE);
        for _ in 0..e {
            out = out.mul(gf, self);
        }
        out
    }

    pub fn eval(&self, gf: &Gf, point: &[Elem]) -> Elem {
        debug_assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(Elem::ZERO, |acc, (m, &c)| {
            let v =
                m.0.iter()
                    .zip(point)
                    .fold(c, |v, (&e, &x)| gf.mul(v, gf.pow(x, e as u64)));
            gf.add(acc, v)
        })
    }

    /// Formal partial derivative with respect to `X_i`.
    pub fn partial(&self, gf: &Gf, i: usize) -> Self {
        MPoly::from_terms_unchecked(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.0[i] > 0)
                .map(|(m, &c)| {
                    let mut e = m.0.clone();
                    let k = e[i];
                    e[i] -= 1;
                    (Monomial(e), gf.mul(c, gf.char_mod(k as u64)))
                }),
        )
    }

    pub fn gradient_at(&self, gf: &Gf, point: &[Elem]) -> Vec<Elem> {
        (0..self.nvars)
            .map(|i| self.partial(gf, i).eval(gf, point))
            .collect()
    }

    /// Exact quotient by the linear form `Σ l_i X_i`, or `None` if it does not divide.
    pub fn div_linear(&self, gf: &Gf, l: &[Elem]) -> Result<Option<MPoly>, Error> {
        if l.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: l.len(),
            });
        }
        let k = l
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::DivisionByZero)?;
        let lead_inv = gf.inv(l[k]);
        // l / l_k = X_k - r
        let r: Vec<Elem> = l.iter().map(|&c| gf.neg(gf.mul(c, lead_inv))).collect();
        let mut r_poly = MPoly::zero(self.nvars);
        for (i, &c) in r.iter().enumerate() {
            if i != k && !c.is_zero() {
                r_poly = r_poly.add(gf, &MPoly::linear_form(&unit_scaled(self.nvars, i, c)));
            }
        }
        let mut slices: BTreeMap<u16, MPoly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut e = m.0.clone();
            let d = e[k];
            e[k] = 0;
            slices
                .entry(d)
                .or_insert_with(|| MPoly::zero(self.nvars))
                .add_term(gf, Monomial(e), c);
        }
        let Some(&top) = slices.keys().next_back() else {
            return Ok(Some(MPoly::zero(self.nvars)));
        };
        // synthetic division by (X_k - r) with X_k as the main variable
        let mut quot = vec![MPoly::zero(self.nvars); top as usize];
        let mut carry = MPoly::zero(self.nvars);
        for d in (0..=top).rev() {
            let coef = slices.remove(&d).unwrap_or_else(|| MPoly::zero(self.nvars));
            let v = coef.add(gf, &carry.mul(gf, &r_poly));
            if d == 0 {
                if !v.is_zero() {
                    return Ok(None);
                }
                break;
            }
            carry = v.clone();
            quot[d as usize - 1] = v;
        }
        let mut out = MPoly::zero(self.nvars);
        for (d, slice) in quot.into_iter().enumerate() {
            for (m, c) in slice.terms {
                let mut e = m.0;
                e[k] = d as u16;
                out.add_term(gf, Monomial(e), c);
            }
        }
        Ok(Some(out.scale(gf, lead_inv)))
    }

    /// `F(Σ_j y_j b_j)` as a polynomial in `basis.len()` variables `y_j`.
    pub fn restrict(&self, gf: &Gf, basis: &[Vec<Elem>]) -> Result<MPoly, Error> {
        let m = basis.len();
        for b in basis {
            if b.len() != self.nvars {
                return Err(Error::DimensionMismatch {
                    expected: self.nvars,
                    found: b.len(),
                });
            }
        }
        let max_deg = self.total_degree().unwrap_or(0);
        // powers[i][e] = (Σ_j b_j[i] y_j)^e
        let powers: Vec<Vec<MPoly>> = (0..self.nvars)
            .map(|i| {
                let form: Vec<Elem> = basis.iter().map(|b| b[i]).collect();
                let l = MPoly::linear_form(&form);
                let mut v = vec![MPoly::constant(m, Elem::ONE)];
                for e in 1..=max_deg {
                    let next = v[e - 1].mul(gf, &l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(m);
        for (mono, &c) in &self.terms {
            let mut t = MPoly::constant(m, c);
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(gf, &powers[i][e as usize]);
                }
            }
            out = out.add(gf, &t);
        }
        Ok(out)
    }

    /// Renders with `Display`, using field codes as coefficients.
    pub fn display(&self) -> impl fmt::Display + '_ {
        DisplayPoly(self)
    }
}

fn unit_scaled(n: usize, i: usize, c: Elem) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; n];
    v[i] = c;
    v
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display(), f)
    }
}

struct DisplayPoly<'a>(&'a MPoly);

impl fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.0.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let is_one = m.degree() == 0;
            if c != Elem::ONE || is_one {
                write!(f, "{}", c.code())?;
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "X{i}")?,
                    _ => write!(f, "X{i}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn lin(gf: &Gf, c: &[u32]) -> MPoly {
        MPoly::linear_form(&c.iter().map(|&x| gf.elem(x).unwrap()).collect::<Vec<_>>())
    }

    #[test]
    fn grlex_display_order() {
        let f = Gf::new(3, 1).unwrap();
        let x0 = MPoly::var(3, 0);
        let p = x0.mul(&f, &lin(&f, &[1, 1, 1]));
        assert_eq!(p.display().to_string(), "X0^2 + X0X1 + X0X2");
        assert_eq!(p.total_degree(), Some(2));
        assert!(p.is_homogeneous());
    }

    #[test]
    fn partial_in_char_p() {
        let f = Gf::new(3, 1).unwrap();
        let x0 = MPoly::var(2, 0);
        let p = x0.pow(&f, 3).add(&f, &x0.mul(&f, &MPoly::var(2, 1)));
        assert_eq!(p.partial(&f, 0), MPoly::var(2, 1));
    }

    #[test]
    fn div_linear_exact_and_inexact() {
        let f = Gf::new(5, 1).unwrap();
        let a = lin(&f, &[0, 2, 3]);
        let b = lin(&f, &[1, 4, 0]);
        let c = lin(&f, &[3, 0, 1]);
        let p = a.mul(&f, &b).mul(&f, &c);
        assert_eq!(
            p.div_linear(&f, &[Elem::ZERO, f.elem(2).unwrap(), f.elem(3).unwrap()])
                .unwrap(),
            Some(b.mul(&f, &c))
        );
        assert_eq!(
            p.div_linear(&f, &[Elem::ONE, Elem::ONE, Elem::ONE])
                .unwrap(),
            None
        );
    }

    #[test]
    fn restrict_then_eval_commutes() {
        let f = Gf::new(5, 1).unwrap();
        let e = |c| f.elem(c).unwrap();
        let p = lin(&f, &[1, 2, 0, 3])
            .mul(&f, &lin(&f, &[0, 1, 4, 1]))
            .add(&f, &MPoly::var(4, 3).pow(&f, 2));
        let basis = vec![
            vec![e(1), e(0), e(2), e(0)],
            vec![e(0), e(1), e(1), e(3)],
            vec![e(0), e(0), e(0), e(1)],
        ];
        let g = p.restrict(&f, &basis).unwrap();
        for y in [[1u32, 2, 3], [4, 0, 1], [0, 0, 1]] {
            let y: Vec<Elem> = y.iter().map(|&c| e(c)).collect();
            let x: Vec<Elem> = (0..4)
                .map(|i| (0..3).fold(Elem::ZERO, |s, j| f.add(s, f.mul(y[j], basis[j][i]))))
                .collect();
            assert_eq!(g.eval(&f, &y), p.eval(&f, &x));
        }
    }
}
