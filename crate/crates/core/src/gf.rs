//! Exact arithmetic in GF(p) and GF(p^k), plus binomial congruences.
//!
//! Elements of GF(p^k) are stored as a single integer in `[0, p^k)` whose
//! base-p digits (least significant first) are the coefficients of a
//! polynomial of degree `< k`. The reduction polynomial is the canonical
//! one: the monic irreducible of degree `k` whose low coefficients, read as
//! a base-p integer, are smallest.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// k + 1 coefficients, low degree first, leading coefficient 1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for a primitive g, doubled so that log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field GF(p^k) with its canonical reduction polynomial.
///
/// Cloning is cheap; the log/exp tables are shared.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Tables>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.k == other.inner.k
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "{}", self.inner.p)
        } else {
            write!(f, "{}^{}", self.inner.p, self.inner.k)
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_field_spec(s)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_field_spec(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses `"P"` or `"P^K"` into the canonical field.
pub fn parse_field_spec(text: &str) -> Result<FieldSpec> {
    let text = text.trim();
    let malformed = || Error::MalformedField(text.to_string());
    let (p, k) = match text.split_once('^') {
        Some((p, k)) => (p.trim(), k.trim()),
        None => (text, "1"),
    };
    if p.is_empty() || k.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) || !k.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(malformed());
    }
    let p: u64 = p.parse().map_err(|_| malformed())?;
    let k: u32 = k.parse().map_err(|_| malformed())?;
    FieldSpec::new(p, k)
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

// Polynomials over GF(p) as coefficient vectors, low degree first.

fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    // den is monic.
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn digits(mut v: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    for _ in 0..k {
        out.push(v % p);
        v /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for c in 0..count {
            let mut cand = digits(c as u32, p, d as u32);
            cand.push(1);
            if poly_rem(poly, &cand, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = p.pow(k);
    for c in 0..count {
        let mut poly = digits(c, p, k);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible of every degree exists over GF(p)")
}

fn slow_mul(a: u32, b: u32, p: u32, k: u32, modulus: &[u32]) -> u32 {
    if k == 1 {
        return (a as u64 * b as u64 % p as u64) as u32;
    }
    let da = digits(a, p, k);
    let db = digits(b, p, k);
    let mut prod = vec![0u32; (2 * k - 1) as usize];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    from_digits(&poly_rem(&prod, modulus, p), p)
}

impl FieldSpec {
    pub fn new(p: u64, k: u32) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge(q.min(u64::MAX as u128) as u64));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus = canonical_modulus(p, k);

        // Smallest primitive element, then the exp/log tables from it.
        let mut exp = vec![1];
        for g in 2..q {
            let mut powers = Vec::with_capacity((q - 1) as usize);
            let mut x = 1u32;
            loop {
                powers.push(x);
                x = slow_mul(x, g, p, k, &modulus);
                if x == 1 {
                    break;
                }
            }
            if powers.len() == (q - 1) as usize {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        Ok(FieldSpec {
            inner: Arc::new(Tables {
                p,
                k,
                q,
                modulus,
                exp: doubled,
                log,
            }),
        })
    }

    pub fn prime(p: u64) -> Result<FieldSpec> {
        FieldSpec::new(p, 1)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.inner.k
    }

    /// Number of elements, `p^k`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.k == 1
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value >= self.inner.q as u64 {
            return Err(Error::ElementOutOfRange {
                value,
                order: self.inner.q,
            });
        }
        Ok(FieldElement(value as u32))
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.inner.q
    }

    /// Coefficient of `x^i` in the polynomial encoded by `a`.
    pub fn coefficient(&self, a: FieldElement, i: u32) -> u32 {
        a.0 / self.inner.p.pow(i) % self.inner.p
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &*self.inner;
        if t.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if t.k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= t.p { s - t.p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        for _ in 0..t.k {
            out += (x % t.p + y % t.p) % t.p * place;
            x /= t.p;
            y /= t.p;
            place *= t.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let t = &*self.inner;
        if t.p == 2 {
            return a;
        }
        if t.k == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { t.p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        for _ in 0..t.k {
            out += (t.p - x % t.p) % t.p * place;
            x /= t.p;
            place *= t.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.inner;
        if t.k == 1 {
            return FieldElement((a.0 as u64 * b.0 as u64 % t.p as u64) as u32);
        }
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_nonzero(a))
    }

    #[inline]
    pub(crate) fn inv_nonzero(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a.0 != 0);
        let t = &*self.inner;
        let l = t.log[a.0 as usize];
        let order = t.q - 1;
        FieldElement(t.exp[((order - l) % order) as usize])
    }

    /// `dst[i] += factor * src[i]` elementwise.
    pub fn axpy(&self, dst: &mut [FieldElement], factor: FieldElement, src: &[FieldElement]) {
        debug_assert_eq!(dst.len(), src.len());
        if factor.is_zero() {
            return;
        }
        let t = &*self.inner;
        if t.p == 2 && t.k == 1 {
            for (d, s) in dst.iter_mut().zip(src) {
                d.0 ^= s.0;
            }
        } else if t.k == 1 {
            let (p, f) = (t.p as u64, factor.0 as u64);
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    d.0 = ((d.0 as u64 + f * s.0 as u64) % p) as u32;
                }
            }
        } else {
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    *d = self.add(*d, self.mul(factor, *s));
                }
            }
        }
    }

    pub fn scale(&self, v: &mut [FieldElement], factor: FieldElement) {
        for x in v.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }

    pub fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        a.iter()
            .zip(b)
            .fold(FieldElement::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Embeds an integer through the prime subfield: `n mod p`.
    pub fn from_int(&self, n: u64) -> FieldElement {
        FieldElement((n % self.inner.p as u64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked entry point for single field operations.
pub fn field_ops(spec: &FieldSpec, kind: FieldOp, a: FieldElement, b: Option<FieldElement>) -> Result<FieldElement> {
    let check = |x: FieldElement| spec.element(x.0 as u64);
    check(a)?;
    if let Some(b) = b {
        check(b)?;
    }
    match kind {
        FieldOp::Add => Ok(spec.add(a, b.ok_or(Error::MissingOperand("add"))?)),
        FieldOp::Mul => Ok(spec.mul(a, b.ok_or(Error::MissingOperand("mul"))?)),
        FieldOp::Neg => Ok(spec.neg(a)),
        FieldOp::Inv => spec.inv(a),
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// C(n, r) mod p for `n, r < p`.
fn small_binomial(n: u64, r: u64, p: u64) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let (mut num, mut den) = (1u64, 1u64);
    for i in 0..r {
        num = ((num as u128 * ((n - i) % p) as u128) % p as u128) as u64;
        den = ((den as u128 * ((i + 1) % p) as u128) % p as u128) as u64;
    }
    (num as u128 * pow_mod(den, p - 2, p) as u128 % p as u128) as u64
}

/// `C(n, r) mod p` by Lucas' digit product.
pub fn binomial_mod_p(n: u64, r: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r > n {
        return Ok(0);
    }
    let (mut n, mut r, mut acc) = (n, r, 1u64);
    while r > 0 {
        let (nd, rd) = (n % p, r % p);
        if rd > nd {
            return Ok(0);
        }
        acc = (acc as u128 * small_binomial(nd, rd, p) as u128 % p as u128) as u64;
        n /= p;
        r /= p;
    }
    Ok(acc)
}
