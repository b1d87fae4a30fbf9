//! Truncated formal power series and log-series over exact or ball
//! coefficient fields.
//!
//! Binary operations truncate to the smaller order. Exactness is
//! preserved whenever the inputs are exact; the ball instantiation
//! widens radii through the same formulas.

use crate::cyclotomic::CycNum;
use crate::error::Error;
use crate::num::CBall;
use crate::Result;
use rug::Rational;
use std::fmt;

/// Coefficient field abstraction for series arithmetic.
pub trait Coeff: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Multiplicative inverse; panics or asserts on zero.
    fn inv(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn of_i64(v: i64) -> Self;
    fn of_rational(q: &Rational) -> Self;
    fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0);
        self.mul(&Self::of_rational(&Rational::from((1, k))))
    }
}

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::new()
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn add(&self, o: &Self) -> Self {
        Rational::from(self + o)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational::from(self - o)
    }
    fn neg(&self) -> Self {
        Rational::from(-self)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational::from(self * o)
    }
    fn inv(&self) -> Self {
        assert!(*self != 0, "inverse of zero");
        Rational::from(self.recip_ref())
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn of_i64(v: i64) -> Self {
        Rational::from(v)
    }
    fn of_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Coeff for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn add(&self, o: &Self) -> Self {
        CycNum::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycNum::sub(self, o)
    }
    fn neg(&self) -> Self {
        CycNum::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        CycNum::mul(self, o)
    }
    fn inv(&self) -> Self {
        CycNum::inv(self)
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn of_i64(v: i64) -> Self {
        CycNum::from_i64(v)
    }
    fn of_rational(q: &Rational) -> Self {
        CycNum::from_rational(q.clone())
    }
}

/// Ball coefficients at the default precision carried by the values.
impl Coeff for CBall {
    fn zero() -> Self {
        CBall::zero(crate::DEFAULT_PREC)
    }
    fn one() -> Self {
        CBall::one(crate::DEFAULT_PREC)
    }
    fn add(&self, o: &Self) -> Self {
        CBall::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CBall::sub(self, o)
    }
    fn neg(&self) -> Self {
        CBall::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        CBall::mul(self, o)
    }
    fn inv(&self) -> Self {
        CBall::inv(self)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero() && self.rad.is_zero()
    }
    fn of_i64(v: i64) -> Self {
        CBall::from_i64(crate::DEFAULT_PREC, v)
    }
    fn of_rational(q: &Rational) -> Self {
        CBall::from_rational(crate::DEFAULT_PREC, q)
    }
}

/// A truncated power series: coefficients c_0..c_T.
#[derive(Clone, PartialEq)]
pub struct Series<T: Coeff> {
    pub coeffs: Vec<T>,
}

pub type QSeries = Series<Rational>;

impl<T: Coeff + fmt::Display> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", strs.join(", "))
    }
}

impl<T: Coeff> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series(order {})", self.order())
    }
}

impl<T: Coeff> Series<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![T::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// The identity series t, truncated at `order`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Truncation order T (largest retained exponent).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        c.resize(order + 1, T::zero());
        Series { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k].add(&o.coeffs[k])).collect();
        Series { coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k].sub(&o.coeffs[k])).collect();
        Series { coeffs }
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut coeffs = vec![T::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if o.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
            }
        }
        Series { coeffs }
    }

    /// 1/self; requires invertible constant term.
    pub fn recip(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::BadValuation("reciprocal of series with zero constant term".into()));
        }
        let n = self.order();
        let inv0 = self.coeffs[0].inv();
        let mut out = vec![T::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = T::zero();
            for j in 1..=k {
                s = s.add(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = s.neg().mul(&inv0);
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    /// self(o(t)); requires o(0) = 0.
    pub fn compose(&self, o: &Self) -> Result<Self> {
        if !o.coeffs[0].is_zero() {
            return Err(Error::BadValuation("compose requires inner series with zero constant term".into()));
        }
        let n = self.order().min(o.order());
        // Horner
        let mut acc = Series::constant(self.coeff(n), n);
        for k in (0..n).rev() {
            acc = acc.mul(&o.truncate(n));
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeff(k));
        }
        Ok(acc)
    }

    /// Compositional inverse: g with self(g(t)) = t. Requires
    /// self(0) = 0 and invertible linear coefficient.
    pub fn reverse(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadValuation("reversion requires zero constant term".into()));
        }
        let n = self.order();
        if n < 1 || self.coeffs[1].is_zero() {
            return Err(Error::BadValuation("reversion requires invertible linear term".into()));
        }
        let c1inv = self.coeffs[1].inv();
        let mut g = Series::zero(n);
        g.coeffs[1] = c1inv.clone();
        // Newton: g <- g - (f(g) - t) / f'(g)
        let fp = self.derivative();
        let steps = (usize::BITS - n.leading_zeros()) as usize + 2;
        for _ in 0..steps {
            let fg = self.compose(&g)?;
            let err = fg.sub(&Series::identity(n));
            if err.is_zero() {
                break;
            }
            let fpg = fp.truncate(n).compose(&g)?;
            let corr = err.div(&fpg)?;
            g = g.sub(&corr);
        }
        Ok(g)
    }

    /// d/dt, keeping the truncation order (top coefficient unknown -> drop to n-1, pad).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for k in 1..=n {
            out[k - 1] = self.coeffs[k].mul(&T::of_i64(k as i64));
        }
        Series { coeffs: out }
    }

    /// t d/dt.
    pub fn delta(&self) -> Self {
        let n = self.order();
        let coeffs = (0..=n).map(|k| self.coeffs[k].mul(&T::of_i64(k as i64))).collect();
        Series { coeffs }
    }

    /// Antiderivative with zero constant term.
    pub fn integrate(&self) -> Self {
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for k in 0..n {
            out[k + 1] = self.coeffs[k].div_i64((k + 1) as i64);
        }
        Series { coeffs: out }
    }

    /// Logarithmic derivative self'/self.
    pub fn dlog(&self) -> Result<Self> {
        self.derivative().div(self)
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::BadValuation("exp requires zero constant term in exact mode".into()));
        }
        let n = self.order();
        let mut e = vec![T::zero(); n + 1];
        e[0] = T::one();
        for k in 1..=n {
            // k e_k = sum_{j=1..k} j a_j e_{k-j}
            let mut s = T::zero();
            for j in 1..=k {
                s = s.add(&self.coeffs[j].mul(&T::of_i64(j as i64)).mul(&e[k - j]));
            }
            e[k] = s.div_i64(k as i64);
        }
        Ok(Series { coeffs: e })
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].sub(&T::one()).is_zero() {
            return Err(Error::BadValuation("log requires constant term 1 in exact mode".into()));
        }
        let n = self.order();
        let mut l = vec![T::zero(); n + 1];
        for k in 1..=n {
            let mut s = self.coeffs[k].clone();
            for j in 1..k {
                let t = l[j].mul(&self.coeffs[k - j]).mul(&T::of_i64(j as i64)).div_i64(k as i64);
                s = s.sub(&t);
            }
            l[k] = s;
        }
        Ok(Series { coeffs: l })
    }

    /// Multiplies by t^k (dropping overflowing coefficients).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for j in 0..=n.saturating_sub(k) {
            out[j + k] = self.coeffs[j].clone();
        }
        Series { coeffs: out }
    }

    /// Divides by t^k; the dropped low-order coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        for j in 0..k.min(self.coeffs.len()) {
            if !self.coeffs[j].is_zero() {
                return Err(Error::BadValuation(format!(
                    "shift_down({}) with nonzero coefficient at {}",
                    k, j
                )));
            }
        }
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for j in k..=n {
            out[j - k] = self.coeffs[j].clone();
        }
        Ok(Series { coeffs: out })
    }

    /// Substitutes t -> c t.
    pub fn rescale(&self, c: &T) -> Self {
        let mut p = T::one();
        let mut out = self.coeffs.clone();
        for (k, item) in out.iter_mut().enumerate() {
            if k > 0 {
                p = p.mul(c);
            }
            *item = item.mul(&p);
        }
        Series { coeffs: out }
    }

    /// Substitutes t -> t^k, enlarging exponents (same truncation).
    pub fn stretch(&self, k: usize) -> Self {
        assert!(k >= 1);
        let n = self.order();
        let mut out = vec![T::zero(); n + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            if j * k <= n {
                out[j * k] = c.clone();
            } else {
                break;
            }
        }
        Series { coeffs: out }
    }

    pub fn map<U: Coeff, F: Fn(&T) -> U>(&self, f: F) -> Series<U> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl Series<Rational> {
    /// Compresses a series supported on multiples of k: returns the
    /// series in u = t^k. Errors if support is not a multiple of k.
    pub fn compress(&self, k: usize) -> Result<Series<Rational>> {
        assert!(k >= 1);
        let n = self.order();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j % k != 0 && !Coeff::is_zero(c) {
                return Err(Error::BadValuation(format!(
                    "series not supported on multiples of {} (coefficient at {})",
                    k, j
                )));
            }
        }
        let m = n / k;
        let coeffs = (0..=m).map(|j| self.coeffs[j * k].clone()).collect();
        Ok(Series { coeffs })
    }

    pub fn to_json(&self, var: &str) -> serde_json::Value {
        serde_json::json!({
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "var": var,
        })
    }
}

/// c_log * log(v) + tail(v).
#[derive(Clone, PartialEq)]
pub struct LogSeries<T: Coeff> {
    pub log_coeff: T,
    pub tail: Series<T>,
}

pub type QLogSeries = LogSeries<Rational>;

impl<T: Coeff> LogSeries<T> {
    pub fn new(log_coeff: T, tail: Series<T>) -> Self {
        LogSeries { log_coeff, tail }
    }

    /// delta = v d/dv applied to the log series: a plain series.
    pub fn delta(&self) -> Series<T> {
        let mut d = self.tail.delta();
        d.coeffs[0] = d.coeffs[0].add(&self.log_coeff);
        d
    }
}

impl LogSeries<Rational> {
    pub fn to_json(&self, var: &str) -> serde_json::Value {
        serde_json::json!({
            "log_coeff": self.log_coeff.to_string(),
            "coeffs": self.tail.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "var": var,
        })
    }
}

impl<T: Coeff + fmt::Display> fmt::Display for LogSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*log + {}", self.log_coeff, self.tail)
    }
}

pub fn qs(v: &[i64]) -> QSeries {
    Series::new(v.iter().map(|&x| Rational::from(x)).collect())
}
