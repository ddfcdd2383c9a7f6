//! Arithmetic in GF(p^h).
//!
//! Elements are stored by their integer code `Σ rep[i]·p^i`, where `rep` is the
//! coefficient vector in the polynomial basis `1, x, …, x^{h-1}`. The modulus
//! is the Conway polynomial for `(p, h)` (computed on demand, so every build of
//! the same field is bit-identical). Prime fields use the modulus `x`.
//!
//! Multiplication goes through exp/log tables; addition is digit-wise (XOR in
//! characteristic 2), with a full table for small fields.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// Largest field order accepted by [`Gf::new`].
pub const MAX_ORDER: u64 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

/// An element of a finite field, identified by its canonical code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn code(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which binary operation [`Gf::arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

struct Tables {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1)
    exp: Vec<u32>,
    /// log[a] for a != 0
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// A finite field GF(p^h). Cheap to clone; clones share their tables.
#[derive(Clone)]
pub struct Gf(Arc<Tables>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.h)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.h == other.0.h)
    }
}

impl Eq for Gf {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Gf {
    /// Builds GF(p^h).
    pub fn new(p: u32, h: u32) -> Result<Gf, Error> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if h < 1 {
            return Err(Error::BadExtensionDegree(h));
        }
        let q = (p as u64).checked_pow(h).filter(|&q| q <= MAX_ORDER);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, h });
        };
        let q = q as u32;

        let (modulus, generator) = if h == 1 {
            (vec![0, 1], primitive_root(p as u64) as u32)
        } else {
            let mut cache = BTreeMap::new();
            (conway(p as u64, h, &mut cache), p)
        };

        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..(q - 1) as usize {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = slow_mul(p, h, &modulus, cur, generator);
        }
        for i in (q - 1) as usize..exp.len() {
            exp[i] = exp[i - (q - 1) as usize];
        }

        let mut neg = vec![0u32; q as usize];
        for (a, slot) in neg.iter_mut().enumerate() {
            *slot = digit_neg(p, a as u32);
        }
        let add = (q <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = digit_add(p, a, b);
                }
            }
            t
        });

        Ok(Gf(Arc::new(Tables {
            p,
            h,
            q,
            modulus,
            exp,
            log,
            neg,
            add,
        })))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn h(&self) -> u32 {
        self.0.h
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, coefficients from the constant term upward.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Looks up the element with the given code.
    pub fn elem(&self, code: u32) -> Result<Elem, Error> {
        if code < self.0.q {
            Ok(Elem(code))
        } else {
            Err(Error::NotInField { code, q: self.0.q })
        }
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in increasing code order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.0.q).map(Elem)
    }

    /// Coefficient vector of `a` in the polynomial basis.
    pub fn rep(&self, a: Elem) -> Vec<u32> {
        let mut c = a.0;
        (0..self.0.h)
            .map(|_| {
                let d = c % self.0.p;
                c /= self.0.p;
                d
            })
            .collect()
    }

    pub fn from_rep(&self, rep: &[u32]) -> Result<Elem, Error> {
        if rep.len() != self.0.h as usize || rep.iter().any(|&d| d >= self.0.p) {
            return Err(Error::BadRepresentation);
        }
        Ok(Elem(rep.iter().rev().fold(0, |acc, &d| acc * self.0.p + d)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.add {
            Some(t) => Elem(t[(a.0 * self.0.q + b.0) as usize]),
            None if self.0.p == 2 => Elem(a.0 ^ b.0),
            None => Elem(digit_add(self.0.p, a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let t = &self.0;
        Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        let t = &self.0;
        let l = t.log[a.0 as usize];
        Some(Elem(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    /// Inverse of a nonzero element.
    ///
    /// Panics on zero; use [`Gf::try_inv`] when that can happen.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let t = &self.0;
        let l = (t.log[a.0 as usize] as u64 * (e % (t.q as u64 - 1))) % (t.q as u64 - 1);
        Elem(t.exp[l as usize])
    }

    /// Checked binary operation on elements given by code.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem, Error> {
        self.elem(a.0)?;
        self.elem(b.0)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.mul(a, self.try_inv(b).ok_or(Error::DivisionByZero)?),
        })
    }

    /// Sum of a slice of products, `Σ a_i b_i`.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Reduces an integer modulo the characteristic.
    pub fn char_mod(&self, n: u64) -> Elem {
        Elem((n % self.0.p as u64) as u32)
    }
}

fn digit_add(p: u32, mut a: u32, mut b: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let (mut out, mut w) = (0, 1);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * w;
        a /= p;
        b /= p;
        w *= p;
    }
    out
}

fn digit_neg(p: u32, mut a: u32) -> u32 {
    let (mut out, mut w) = (0, 1);
    while a > 0 {
        out += ((p - a % p) % p) * w;
        a /= p;
        w *= p;
    }
    out
}

fn slow_mul(p: u32, h: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let p64 = p as u64;
    let to_digits = |mut c: u32| -> Vec<u64> {
        (0..h)
            .map(|_| {
                let d = c % p;
                c /= p;
                d as u64
            })
            .collect()
    };
    let m: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
    let prod = poly_mulmod(&to_digits(a), &to_digits(b), &m, p64);
    prod.iter().rev().fold(0u32, |acc, &d| acc * p + d as u32)
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

// Polynomials over GF(p) as little-endian u64 digit vectors, reduced modulo a
// monic `m` of degree h (results always have length h).

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let h = m.len() - 1;
    let mut prod = vec![0u64; 2 * h];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for k in (h..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for j in 0..h {
            prod[k - h + j] = (prod[k - h + j] + (p - c) * m[j]) % p;
        }
    }
    prod.truncate(h);
    prod
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let h = m.len() - 1;
    let mut r = vec![0u64; h];
    r[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mulmod(&r, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    r
}

fn is_one(a: &[u64]) -> bool {
    a[0] == 1 && a[1..].iter().all(|&d| d == 0)
}

/// Conway polynomial for (p, h), little-endian coefficients, monic.
///
/// Candidates `x^h - c1 x^{h-1} + c2 x^{h-2} - … + (-1)^h c_h` are scanned in
/// lexicographic order of `(c1, …, c_h)`; the first primitive one whose roots
/// are norm-compatible with every proper subfield's Conway polynomial wins.
fn conway(p: u64, h: u32, cache: &mut BTreeMap<u32, Vec<u64>>) -> Vec<u32> {
    conway_u64(p, h, cache).iter().map(|&c| c as u32).collect()
}

fn conway_u64(p: u64, h: u32, cache: &mut BTreeMap<u32, Vec<u64>>) -> Vec<u64> {
    if let Some(c) = cache.get(&h) {
        return c.clone();
    }
    let result = if h == 1 {
        vec![(p - primitive_root(p)) % p, 1]
    } else {
        let q = p.pow(h);
        let factors = prime_factors(q - 1);
        let divisors: Vec<u32> = (1..h).filter(|d| h % d == 0).collect();
        let subs: Vec<(u32, Vec<u64>)> = divisors
            .iter()
            .map(|&d| (d, conway_u64(p, d, cache)))
            .collect();
        let hu = h as usize;
        let mut cs = vec![0u64; hu];
        let mut x = vec![0u64; hu];
        x[1] = 1;
        loop {
            // advance the odometer, c_h is the fastest digit
            let mut i = hu;
            loop {
                if i == 0 {
                    panic!("no Conway polynomial found for {p}^{h}");
                }
                i -= 1;
                cs[i] += 1;
                if cs[i] < p {
                    break;
                }
                cs[i] = 0;
            }
            if cs[hu - 1] == 0 {
                continue;
            }
            let mut m = vec![0u64; hu + 1];
            m[hu] = 1;
            for (i, &c) in cs.iter().enumerate() {
                let k = i + 1;
                let v = if k % 2 == 1 { (p - c) % p } else { c };
                m[hu - k] = v;
            }
            if !is_one(&poly_powmod(&x, q - 1, &m, p)) {
                continue;
            }
            if factors
                .iter()
                .any(|&r| is_one(&poly_powmod(&x, (q - 1) / r, &m, p)))
            {
                continue;
            }
            let compatible = subs.iter().all(|(d, sub)| {
                let beta = poly_powmod(&x, (q - 1) / (p.pow(*d) - 1), &m, p);
                let mut acc = vec![0u64; hu];
                let mut pw = vec![0u64; hu];
                pw[0] = 1;
                for &c in sub.iter() {
                    for k in 0..hu {
                        acc[k] = (acc[k] + c * pw[k]) % p;
                    }
                    pw = poly_mulmod(&pw, &beta, &m, p);
                }
                acc.iter().all(|&d| d == 0)
            });
            if compatible {
                break m;
            }
        }
    };
    cache.insert(h, result.clone());
    result
}
