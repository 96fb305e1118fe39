//! Table-driven arithmetic in GF(p^h).
//!
//! Elements are encoded as integers in `[0, q)`: the base-`p` digits of the
//! encoding are the coefficients of the representing polynomial, constant
//! term least significant. `0` is zero and `1` is one. This encoding gives
//! every field a total order, which the rest of the crate uses to break ties
//! deterministically.

use crate::error::{Error, Result};

/// A field element, encoded as described in the module docs.
pub type Elem = u8;

/// Default upper bound on the field order.
pub const DEFAULT_MAX_ORDER: u64 = 16;

/// Hard ceiling imposed by the `u8` element encoding.
pub const MAX_ORDER: u64 = 256;

#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    p: u32,
    h: u32,
    q: usize,
    /// Monic modulus, high-degree coefficient first.
    modulus: Vec<Elem>,
    omega: Elem,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("modulus", &self.modulus)
            .field("omega", &self.omega)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^h` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut h = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p as u32, h))
}

// Polynomials over GF(p), constant term first.

fn poly_trim(a: &mut Vec<u32>) {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm && r.len() > 1 {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    poly_trim(&mut r);
    r
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u64 {
    d.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Monic polynomials of degree `deg`, constant term first.
fn monic_polys(p: u32, deg: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(deg as u32);
    (0..count).map(move |n| {
        let mut c = digits(n, p, deg);
        c.push(1);
        c
    })
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    (1..=deg / 2).all(|d| {
        monic_polys(p, d).all(|f| {
            let r = poly_rem(m, &f, p);
            !(r.len() == 1 && r[0] == 0)
        })
    })
}

impl Field {
    /// Builds GF(p^h) under the default order bound.
    pub fn new(p: u32, h: u32) -> Result<Self> {
        Self::with_bound(p, h, DEFAULT_MAX_ORDER)
    }

    /// Builds GF(p^h) with the lexicographically least monic irreducible
    /// modulus (coefficients compared high-degree first) and the smallest
    /// primitive element.
    pub fn with_bound(p: u32, h: u32, bound: u64) -> Result<Self> {
        let q = Self::check_order(p, h, bound)?;
        // Lex order high-degree-first on (1, c_{h-1}, ..., c_0) is numeric
        // order on the digits c_{h-1}..c_0, i.e. on the low-first encoding.
        let modulus = if h == 1 {
            vec![0, 1]
        } else {
            monic_polys(p, h as usize)
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial exists in every degree")
        };
        Ok(Self::from_parts(p, h, q, modulus))
    }

    /// Rebuilds a field from an explicit modulus (high-degree first), as
    /// stored in code files.
    pub fn from_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        if modulus.len() < 2 || modulus[0] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus(modulus.to_vec()));
        }
        let h = (modulus.len() - 1) as u32;
        let q = Self::check_order(p, h, MAX_ORDER)?;
        let low_first: Vec<u32> = modulus.iter().rev().copied().collect();
        let ok = if h == 1 {
            low_first == [0, 1]
        } else {
            is_irreducible(&low_first, p)
        };
        if !ok {
            return Err(Error::BadModulus(modulus.to_vec()));
        }
        Ok(Self::from_parts(p, h, q, low_first))
    }

    fn check_order(p: u32, h: u32, bound: u64) -> Result<usize> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::ZeroDegree);
        }
        let bound = bound.min(MAX_ORDER);
        let q = (p as u64).checked_pow(h).unwrap_or(u64::MAX);
        if q > bound {
            return Err(Error::OrderTooLarge { q, bound });
        }
        Ok(q as usize)
    }

    fn from_parts(p: u32, h: u32, q: usize, modulus_low: Vec<u32>) -> Self {
        let hl = h as usize;
        let polys: Vec<Vec<u32>> = (0..q as u64).map(|n| digits(n, p, hl)).collect();
        let encode = |v: &[u32]| -> Elem {
            let mut d = v.to_vec();
            d.resize(hl, 0);
            undigits(&d, p) as Elem
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for x in 0..q {
            for y in 0..q {
                let s: Vec<u32> = polys[x]
                    .iter()
                    .zip(&polys[y])
                    .map(|(a, b)| (a + b) % p)
                    .collect();
                add[x * q + y] = encode(&s);
                let prod = if h == 1 {
                    vec![(polys[x][0] * polys[y][0]) % p]
                } else {
                    poly_rem(&poly_mul(&polys[x], &polys[y], p), &modulus_low, p)
                };
                mul[x * q + y] = encode(&prod);
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for x in 0..q {
            neg[x] = (0..q).find(|&y| add[x * q + y] == 0).unwrap() as Elem;
            if x != 0 {
                inv[x] = (0..q).find(|&y| mul[x * q + y] == 1).unwrap() as Elem;
            }
        }
        let mut field = Field {
            p,
            h,
            q,
            modulus: modulus_low.iter().rev().map(|&c| c as Elem).collect(),
            omega: 0,
            add,
            mul,
            neg,
            inv,
        };
        field.omega = (1..q)
            .map(|x| x as Elem)
            .find(|&x| field.multiplicative_order(x) == q - 1)
            .expect("the multiplicative group of a finite field is cyclic");
        field
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.h
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    /// Modulus coefficients, high-degree first (`[1, 0]` for prime fields).
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    /// The smallest primitive element.
    pub fn omega(&self) -> Elem {
        self.omega
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(|x| x as Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(|x| x as Elem)
    }

    pub fn element(&self, value: u32) -> Result<Elem> {
        if (value as usize) < self.q {
            Ok(value as Elem)
        } else {
            Err(Error::BadElement { value, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn scalar(&self, n: i64) -> Elem {
        n.rem_euclid(self.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg[y as usize])
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x as usize * self.q + y as usize]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x as usize]
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x == 0 {
            Err(Error::ZeroInverse)
        } else {
            Ok(self.inv[x as usize])
        }
    }

    /// Inverse without the zero check; the caller guarantees `x != 0`.
    #[inline]
    pub(crate) fn inv_nonzero(&self, x: Elem) -> Elem {
        debug_assert!(x != 0);
        self.inv[x as usize]
    }

    pub fn pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn multiplicative_order(&self, x: Elem) -> usize {
        if x == 0 {
            return 0;
        }
        let mut y = x;
        let mut n = 1;
        while y != 1 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    /// Evaluates a polynomial given high-degree coefficient first.
    pub fn eval(&self, coeffs_high_first: &[Elem], x: Elem) -> Elem {
        coeffs_high_first
            .iter()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Whether the monic polynomial (leading 1 implied) has a root.
    pub fn has_root(&self, lower_coeffs: &[Elem]) -> bool {
        let mut coeffs = vec![1];
        coeffs.extend_from_slice(lower_coeffs);
        self.elements().any(|x| self.eval(&coeffs, x) == 0)
    }
}

/// Lexicographically least `(a, b, c)` with `X^3 + aX^2 + bX + c` free of
/// roots in the field.
///
/// For degree 3 the absence of roots is equivalent to irreducibility; the
/// test is not valid for higher degrees.
pub fn find_irreducible_cubic(f: &Field) -> (Elem, Elem, Elem) {
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                if !f.has_root(&[a, b, c]) {
                    return (a, b, c);
                }
            }
        }
    }
    unreachable!("irreducible cubics exist over every finite field")
}

/// Smallest `alpha` with `X^2 + X + alpha` irreducible.
pub fn find_quadratic_alpha(f: &Field) -> Elem {
    f.elements()
        .find(|&alpha| !f.has_root(&[1, alpha]))
        .expect("an irreducible quadratic X^2+X+alpha exists over every finite field")
}
