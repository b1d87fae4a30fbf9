//! Exact arithmetic in cyclotomic fields Q(zeta_M).
//!
//! An element is stored as a rational coefficient vector of length
//! phi(M), reduced modulo the M-th cyclotomic polynomial. Mixed-order
//! arithmetic promotes both operands to the lcm order.

use crate::num::CBall;
use once_cell::sync::Lazy;
use rug::{Integer, Rational};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

pub fn lcm_i64(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_i64(a, b) * b
    }
}

pub fn euler_phi(n: i64) -> i64 {
    assert!(n > 0);
    let mut result = n;
    let mut m = n;
    let mut p = 2i64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Dense rational polynomial helpers (coefficients low-to-high, no
/// trailing zeros) used for cyclotomic reduction.
fn poly_trim(v: &mut Vec<Rational>) {
    while v.last().map(|c| *c == 0).unwrap_or(false) {
        v.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if *ca == 0 {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if *cb == 0 {
                continue;
            }
            out[i + j] += Rational::from(ca * cb);
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a modulo b (b monic-leading after normalization).
fn poly_rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let c = Rational::from(&r[dr] / &lead);
        for k in 0..=db {
            let t = Rational::from(&b[k] * &c);
            r[dr - db + k] -= t;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Exact division a / b, panicking if the division is not exact.
fn poly_div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r: Vec<Rational> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rational::new(); if r.len() > db { r.len() - db } else { 1 }];
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let c = Rational::from(&r[dr] / &lead);
        q[dr - db] = c.clone();
        for k in 0..=db {
            let t = Rational::from(&b[k] * &c);
            r[dr - db + k] -= t;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    assert!(r.is_empty(), "inexact polynomial division");
    poly_trim(&mut q);
    q
}

static CYCLOTOMIC_POLYS: Lazy<Mutex<HashMap<i64, Vec<Rational>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The M-th cyclotomic polynomial Phi_M as a dense coefficient vector.
pub fn cyclotomic_polynomial(m: i64) -> Vec<Rational> {
    assert!(m >= 1);
    if let Some(p) = CYCLOTOMIC_POLYS.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by the product of Phi_d over proper divisors d
    let mut xm1 = vec![Rational::new(); (m + 1) as usize];
    xm1[0] = Rational::from(-1);
    xm1[m as usize] = Rational::from(1);
    let mut result = xm1;
    for d in 1..m {
        if m % d == 0 {
            let pd = cyclotomic_polynomial(d);
            result = poly_div_exact(&result, &pd);
        }
    }
    CYCLOTOMIC_POLYS.lock().unwrap().insert(m, result.clone());
    result
}

/// An exact element of Q(zeta_M).
#[derive(Clone, Eq)]
pub struct CycNum {
    /// Cyclotomic order M >= 1.
    pub order: i64,
    /// Coefficients of 1, zeta, ..., zeta^(phi(M)-1); length exactly phi(M).
    pub coeffs: Vec<Rational>,
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let m = lcm_i64(self.order, other.order);
        self.promote(m).coeffs == other.promote(m).coeffs
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]{:?}", self.order, self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", q);
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}*zeta({})^{}", c, self.order, k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { order: 1, coeffs: vec![Rational::new()] }
    }

    pub fn one() -> Self {
        CycNum { order: 1, coeffs: vec![Rational::from(1)] }
    }

    pub fn from_rational(q: Rational) -> Self {
        CycNum { order: 1, coeffs: vec![q] }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_rational(Rational::from(v))
    }

    /// zeta_M^k.
    pub fn zeta(m: i64, k: i64) -> Self {
        assert!(m >= 1);
        let kk = k.rem_euclid(m) as usize;
        let mut poly = vec![Rational::new(); kk + 1];
        poly[kk] = Rational::from(1);
        Self::reduce(m, poly)
    }

    fn reduce(m: i64, poly: Vec<Rational>) -> Self {
        let phi = euler_phi(m) as usize;
        let mut v = poly;
        poly_trim(&mut v);
        if v.len() > phi {
            v = poly_rem(&v, &cyclotomic_polynomial(m));
        }
        v.resize(phi, Rational::new());
        CycNum { order: m, coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// Returns Some(q) if the element is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| *c == 0) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Promotes the element to the cyclotomic field of order `m` (which
    /// must be a multiple of the current order).
    pub fn promote(&self, m: i64) -> CycNum {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0, "promotion target must be a multiple of the order");
        let step = (m / self.order) as usize;
        let mut poly = vec![Rational::new(); (self.coeffs.len() - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                poly[k * step] = c.clone();
            }
        }
        Self::reduce(m, poly)
    }

    fn promote_pair(a: &CycNum, b: &CycNum) -> (CycNum, CycNum, i64) {
        let m = lcm_i64(a.order, b.order);
        (a.promote(m), b.promote(m), m)
    }

    pub fn add(&self, o: &CycNum) -> CycNum {
        let (a, b, m) = Self::promote_pair(self, o);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| Rational::from(x + y))
            .collect();
        CycNum { order: m, coeffs }
    }

    pub fn sub(&self, o: &CycNum) -> CycNum {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
        }
    }

    pub fn mul(&self, o: &CycNum) -> CycNum {
        let (a, b, m) = Self::promote_pair(self, o);
        let prod = poly_mul(&a.coeffs, &b.coeffs);
        Self::reduce(m, prod)
    }

    pub fn scale(&self, q: &Rational) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| Rational::from(c * q)).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm
    /// modulo Phi_M. Panics on zero.
    pub fn inv(&self) -> CycNum {
        assert!(!self.is_zero(), "inverse of zero cyclotomic number");
        if let Some(q) = self.as_rational() {
            return Self::from_rational(Rational::from(q.recip_ref()));
        }
        let m = self.order;
        let phi = cyclotomic_polynomial(m);
        // extended euclid on (self.coeffs, phi)
        let mut r0: Vec<Rational> = phi.clone();
        let mut r1: Vec<Rational> = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::from(1)];
        while !r1.is_empty() && r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs1 = poly_mul(&q, &s1);
            let mut s2 = poly_sub(&s0, &qs1);
            poly_trim(&mut s2);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        assert!(!r1.is_empty(), "element not invertible (zero divisor?)");
        // r1 is a nonzero constant c: inverse = s1 / c
        let c = r1[0].clone();
        let coeffs: Vec<Rational> = s1.iter().map(|x| Rational::from(x / &c)).collect();
        Self::reduce(m, coeffs)
    }

    pub fn div(&self, o: &CycNum) -> CycNum {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: u64) -> CycNum {
        let mut acc = CycNum::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Complex conjugate: zeta -> zeta^{-1}.
    pub fn conj(&self) -> CycNum {
        self.galois(self.order - 1)
    }

    /// Galois action zeta -> zeta^a for gcd(a, M) = 1.
    pub fn galois(&self, a: i64) -> CycNum {
        let m = self.order;
        if m == 1 {
            return self.clone();
        }
        assert!(gcd_i64(a, m) == 1, "galois exponent must be coprime to the order");
        let mut poly = vec![Rational::new(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if *c != 0 {
                let idx = ((k as i64 * a).rem_euclid(m)) as usize;
                poly[idx] += c;
            }
        }
        Self::reduce(m, poly)
    }

    /// All Galois conjugates (including the element itself).
    pub fn galois_conjugates(&self) -> Vec<CycNum> {
        let m = self.order;
        (1..=m)
            .filter(|a| gcd_i64(*a, m) == 1)
            .map(|a| self.galois(a))
            .collect()
    }

    /// True iff the element is a root of unity (equivalently z^(2M) = 1).
    pub fn is_root_of_unity(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        let p = self.pow(2 * self.order as u64);
        p.as_rational().map(|q| q == 1).unwrap_or(false)
    }

    /// Certified complex embedding zeta_M -> e^{2 pi i / M}.
    pub fn embed(&self, prec: u32) -> CBall {
        let mut acc = CBall::zero(prec);
        if self.is_zero() {
            return acc;
        }
        if let Some(q) = self.as_rational() {
            return CBall::from_rational(prec, &q);
        }
        let z = CBall::root_of_unity(prec, 1, self.order);
        // Horner
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&z);
            if *c != 0 {
                acc = acc.add(&CBall::from_rational(prec, c));
            }
        }
        acc
    }

    /// Denominator lcm of the coefficients.
    pub fn denominator(&self) -> Integer {
        let mut d = Integer::from(1);
        for c in &self.coeffs {
            d.lcm_mut(&c.denom().clone());
        }
        d
    }
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::new(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![Rational::new(); if r.len() > db { r.len() - db } else { 1 }];
    while r.len() >= b.len() && !r.is_empty() {
        let dr = r.len() - 1;
        let c = Rational::from(&r[dr] / &lead);
        q[dr - db] = c.clone();
        for k in 0..=db {
            let t = Rational::from(&b[k] * &c);
            r[dr - db + k] -= t;
        }
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}
