//! Exact arithmetic over GF(p^m) for q = p^m ≤ 2^16.
//!
//! Elements are encoded as integers in `[0, q)` whose base-p digits are the
//! coefficients of a polynomial in `x` modulo the field's irreducible
//! modulus (least significant digit = constant term). Prime fields use
//! direct modular arithmetic; extension fields multiply through exp/log
//! tables built from a primitive element.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 16;

/// A finite field GF(p^m). Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus coefficients, constant term first, length m + 1.
    /// Empty for prime fields.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into (p, m). Returns `None` for anything else.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut m) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

// Polynomials over GF(p) as coefficient vectors, constant term first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let lead_inv = mod_inv(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let t = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - t) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // Fermat; p is prime.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Exhaustive irreducibility test: no monic factor of degree 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut f = digits(code as u32, p, d);
            f.push(1);
            if poly_rem(poly, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut v: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldSpec {
    /// Builds GF(p^m). `modulus` lists the coefficients of a monic
    /// irreducible polynomial of degree m, constant term first; it is
    /// ignored (and may be omitted) for prime fields.
    pub fn new(p: u64, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if m == 0 {
            return Err(Error::InvalidParams("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = if m == 1 {
            Vec::new()
        } else {
            let poly = modulus.ok_or_else(|| Error::ReducibleModulus {
                p,
                reason: "a modulus is required for extension fields".into(),
            })?;
            if poly.len() != m as usize + 1 || poly.iter().any(|&c| c >= p) {
                return Err(Error::ReducibleModulus {
                    p,
                    reason: format!("expected {} coefficients in [0, {p})", m + 1),
                });
            }
            if poly[m as usize] != 1 {
                return Err(Error::ReducibleModulus {
                    p,
                    reason: "modulus must be monic".into(),
                });
            }
            if !is_irreducible(poly, p) {
                return Err(Error::ReducibleModulus {
                    p,
                    reason: "modulus has a proper factor".into(),
                });
            }
            poly.to_vec()
        };
        let mut inner = Inner {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        inner.build_tables();
        Ok(FieldSpec { inner: Arc::new(inner) })
    }

    /// GF(q) with the lexicographically first monic irreducible modulus.
    pub fn gf(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidParams(format!("{q} is not a prime power")))?;
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        if m == 1 {
            return Self::new(p as u64, 1, None);
        }
        let count = (p as u64).pow(m);
        for code in 0..count {
            let mut poly = digits(code as u32, p, m as usize);
            poly.push(1);
            if is_irreducible(&poly, p) {
                return Self::new(p as u64, m, Some(&poly));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    /// Field order q = p^m.
    pub fn q(&self) -> u32 {
        self.inner.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.m == 1
    }

    /// Modulus coefficients (constant term first); empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The primitive element used to build the exp/log tables.
    pub fn primitive_element(&self) -> u32 {
        self.inner.exp[if self.inner.q == 2 { 0 } else { 1 }]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        if f.m == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if f.p == 2 {
            a ^ b
        } else {
            let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
            while a > 0 || b > 0 {
                out += ((a % f.p + b % f.p) % f.p) * place;
                a /= f.p;
                b /= f.p;
                place *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.inner;
        if a == 0 || f.p == 2 {
            a
        } else if f.m == 1 {
            f.p - a
        } else {
            let (mut a, mut out, mut place) = (a, 0, 1);
            while a > 0 {
                out += ((f.p - a % f.p) % f.p) * place;
                a /= f.p;
                place *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.inner;
        if f.m == 1 {
            (a as u64 * b as u64 % f.p as u64) as u32
        } else {
            let order = f.q - 1;
            let s = f.log[a as usize] + f.log[b as usize];
            f.exp[(if s >= order { s - order } else { s }) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let f = &*self.inner;
        let order = f.q - 1;
        let l = f.log[a as usize];
        Some(f.exp[((order - l) % order) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.inner;
        let order = (f.q - 1) as u64;
        f.exp[((f.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// Embeds an integer through the prime subfield.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.inner.p as i64) as u32
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.inner.q
    }

    pub fn check(&self, v: u32) -> Result<u32> {
        if self.contains(v) {
            Ok(v)
        } else {
            Err(Error::ElementOutOfRange {
                value: v,
                q: self.inner.q,
            })
        }
    }

    pub fn elem(&self, v: u32) -> Result<Felt> {
        Ok(Felt {
            value: self.check(v)?,
            field: self.clone(),
        })
    }

    pub fn zero(&self) -> Felt {
        Felt {
            value: 0,
            field: self.clone(),
        }
    }

    pub fn one(&self) -> Felt {
        Felt {
            value: 1,
            field: self.clone(),
        }
    }
}

impl Inner {
    fn poly_mul_mod(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p, self.m as usize);
        let (da, db) = (digits(a, p, m), digits(b, p, m));
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, p);
        r.resize(m, 0);
        undigits(&r, p)
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            (a as u64 * b as u64 % self.p as u64) as u32
        } else {
            self.poly_mul_mod(a, b)
        }
    }

    fn build_tables(&mut self) {
        let order = self.q - 1;
        for g in 1..self.q {
            let mut exp = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = self.mul_raw(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == order as usize {
                let mut log = vec![0u32; self.q as usize];
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a field is cyclic")
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.m == other.inner.m
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.inner.p, self.inner.m, self.inner.modulus)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.inner.q)
    }
}

/// A field element bundled with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct Felt {
    value: u32,
    field: FieldSpec,
}

impl Felt {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<Felt> {
        self.field.inv(self.value).map(|value| Felt {
            value,
            field: self.field.clone(),
        })
    }
}

impl fmt::Debug for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for Felt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! felt_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Felt {
            type Output = Felt;
            fn $method(self, rhs: &Felt) -> Felt {
                assert_eq!(self.field, rhs.field, "field mismatch");
                Felt {
                    value: self.field.$method(self.value, rhs.value),
                    field: self.field.clone(),
                }
            }
        }
        impl $trait for Felt {
            type Output = Felt;
            fn $method(self, rhs: Felt) -> Felt {
                (&self).$method(&rhs)
            }
        }
    };
}

felt_binop!(Add, add);
felt_binop!(Sub, sub);
felt_binop!(Mul, mul);

impl Neg for Felt {
    type Output = Felt;
    fn neg(self) -> Felt {
        Felt {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}
